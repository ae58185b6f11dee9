//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use markov_dyck::dyck::{BracketSymbol, DyckWord};
use markov_dyck::markov::TransitionMatrix;

pub fn ones(n: usize) -> TransitionMatrix {
    TransitionMatrix::full(n).unwrap()
}

pub fn golden_mean_flipped() -> TransitionMatrix {
    TransitionMatrix::new(&[vec![0, 1], vec![1, 1]]).unwrap()
}

pub fn swap() -> TransitionMatrix {
    TransitionMatrix::new(&[vec![0, 1], vec![1, 0]]).unwrap()
}

/// The four matrices every structural check runs on.
pub fn test_matrices() -> Vec<(&'static str, TransitionMatrix)> {
    vec![
        ("F", TransitionMatrix::fibonacci()),
        ("ones2", ones(2)),
        ("ones3", ones(3)),
        ("[[0,1],[1,1]]", golden_mean_flipped()),
    ]
}

/// Every word of length `len` over the `2n` bracket symbols.
pub fn all_words(n: usize, len: usize) -> Vec<DyckWord> {
    let alphabet = BracketSymbol::alphabet(n);
    let mut out = vec![DyckWord::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&s| {
                    let mut v = w.0.clone();
                    v.push(s);
                    DyckWord(v)
                })
            })
            .collect();
    }
    out
}

/// Every word over `{0..n}` of length `len` admissible for `a`, by filtering
/// all `n^len` sequences.
pub fn markov_words_brute(a: &TransitionMatrix, len: usize) -> Vec<Vec<u8>> {
    let n = a.size();
    let mut out = Vec::new();
    let total = n.pow(len as u32);
    for mut code in 0..total {
        let mut w = vec![0u8; len];
        for slot in w.iter_mut().rev() {
            *slot = (code % n) as u8;
            code /= n;
        }
        if w.windows(2).all(|p| a.get(p[0] as usize, p[1] as usize)) {
            out.push(w);
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion; fine for the tiny minors used here.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`. Returns only the
/// nonzero factors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        factors.push(g / prev);
        prev = g;
    }
    factors
}

/// `(free rank, torsion > 1)` of the cokernel of a `rows x cols` matrix.
pub fn cokernel_by_minors(m: &[Vec<i64>], rows: usize, cols: usize) -> (usize, Vec<u64>) {
    let f = invariant_factors_by_minors(m, rows, cols);
    let torsion = f.iter().filter(|&&d| d != 1).map(|&d| d as u64).collect();
    (rows - f.len(), torsion)
}
