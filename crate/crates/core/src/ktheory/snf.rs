//! Smith normal form over the integers.
//!
//! Pivots are chosen by least nonzero absolute value. Transforms are tracked
//! only when requested: cokernel invariants need none, kernels need `V`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::exact::ExactMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: ExactMatrix,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
    /// Diagonal of `D`: nonnegative, each dividing the next, zeros last.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Checks `U M V = D`, unimodularity, and the divisibility chain.
    pub fn verify(&self, m: &ExactMatrix) -> bool {
        let unit = |x: BigInt| x.abs().is_one();
        let chain = self.invariant_factors.windows(2).all(|p| {
            if p[0].is_zero() {
                p[1].is_zero()
            } else {
                (&p[1] % &p[0]).is_zero()
            }
        });
        self.u.mul(m).mul(&self.v) == self.d
            && unit(self.u.determinant())
            && unit(self.v.determinant())
            && chain
            && self.invariant_factors.iter().all(|d| !d.is_negative())
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    /// Stored transposed so that column operations are row operations.
    vt: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

/// `dst -= q * src` on full rows.
fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn row_axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    axpy(d, s, q);
}

impl Work {
    fn new(m: &ExactMatrix, track_u: bool, track_v: bool) -> Self {
        let (rows, cols) = m.shape();
        Work {
            a: (0..rows)
                .map(|i| (0..cols).map(|j| m[(i, j)].clone()).collect())
                .collect(),
            rows,
            cols,
            u: track_u.then(|| identity_rows(rows)),
            vt: track_v.then(|| identity_rows(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(u) = &mut self.u {
                u.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in &mut self.a {
                row.swap(j, k);
            }
            if let Some(vt) = &mut self.vt {
                vt.swap(j, k);
            }
        }
    }

    /// `row_dst -= q row_src`.
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        row_axpy(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.u {
            row_axpy(u, dst, src, q);
        }
    }

    /// `col_dst -= q col_src`.
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(vt) = &mut self.vt {
            row_axpy(vt, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if x.abs().is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, _, b)| x.abs() < *b) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_op(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_op(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    self.repivot_cross(t);
                    continue;
                }
                if self.a[t][t].abs().is_one() {
                    break;
                }
                // Divisibility: pull a non-multiple into row t and reduce again.
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &p).is_zero()));
                match offender {
                    Some(i) => self.row_op(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    /// Moves the least nonzero entry of row `t` / column `t` to the pivot.
    fn repivot_cross(&mut self, t: usize) {
        let mut best = (t, t, self.a[t][t].abs());
        for i in t + 1..self.rows {
            let x = self.a[i][t].abs();
            if !x.is_zero() && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.cols {
            let x = self.a[t][j].abs();
            if !x.is_zero() && x < best.2 {
                best = (t, j, x);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).collect()
    }
}

fn to_matrix(rows: &[Vec<BigInt>], n_rows: usize, n_cols: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n_rows, n_cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

pub fn smith_normal_form(m: &ExactMatrix) -> SmithForm {
    let mut w = Work::new(m, true, true);
    w.run();
    let (r, c) = m.shape();
    let d = to_matrix(&w.a, r, c);
    let u = to_matrix(w.u.as_ref().expect("tracked"), r, r);
    let v = to_matrix(w.vt.as_ref().expect("tracked"), c, c).transpose();
    SmithForm {
        invariant_factors: w.diagonal(),
        d,
        u,
        v,
    }
}

/// Nonzero invariant factors only, without computing transforms.
pub fn invariant_factors(m: &ExactMatrix) -> Vec<BigInt> {
    let mut w = Work::new(m, false, false);
    w.run();
    w.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
}

/// A Z-basis of `{x : M x = 0}`, as the columns of the returned matrix.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let mut w = Work::new(m, false, true);
    w.run();
    let rank = w.diagonal().iter().filter(|d| !d.is_zero()).count();
    let vt = w.vt.expect("tracked");
    let cols: Vec<Vec<BigInt>> = vt[rank..].to_vec();
    ExactMatrix::from_columns(m.cols(), &cols)
}
