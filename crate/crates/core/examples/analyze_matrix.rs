// Irreducibility, condition (I) and entropy for a handful of matrices,
// read from the same JSON format the command line takes.
//
// cargo run --example analyze_matrix

use std::error::Error;

use markov_dyck::cli::analyze;
use markov_dyck::markov::{condition_i, entropy, is_irreducible, TransitionMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let files = [
        r#"{"n": 2, "rows": [[1, 1], [1, 0]]}"#,
        r#"{"n": 2, "rows": [[0, 1], [1, 0]]}"#,
        r#"{"n": 3, "rows": [[1, 1, 0], [0, 0, 1], [1, 0, 1]]}"#,
        r#"{"n": 2, "rows": [[1, 1], [0, 1]]}"#,
    ];
    for text in files {
        let a = TransitionMatrix::from_json(text)?;
        let ci = condition_i(&a);
        println!(
            "{:?}: irreducible {}, condition (I) {}, entropy {}",
            a.rows(),
            is_irreducible(&a).is_irreducible(),
            ci.holds(),
            entropy(&a).map_or_else(|e| format!("unavailable ({e})"), |h| format!("{h:.6}"))
        );
        for w in ci.witnesses.iter().flatten() {
            println!("  from {}: {} and {}", w.symbol, w.first, w.second);
        }
    }
    let report = analyze(&TransitionMatrix::fibonacci());
    println!("{}", serde_json::to_string(&report)?);

    let bad = TransitionMatrix::from_json(r#"{"n": 2, "rows": [[1, 1], [0, 0]]}"#);
    println!("zero row: {}", bad.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
