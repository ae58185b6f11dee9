// The Fibonacci case, computed both from the graph and from cylinder-set
// operators, and emitted as the JSON report.
//
// cargo run --example fibonacci_k_theory

use std::error::Error;

use markov_dyck::horizon::LambdaGraphSystem;
use markov_dyck::ktheory::{CylinderOperators, KTheoryReport, ReportMode};
use markov_dyck::markov::TransitionMatrix;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 6)?;

    let ops = CylinderOperators::compute(&g, 1)?;
    println!("level 1 Sigma:  {:?}", ops.sigma.to_rows());
    println!("level 1 Lambda: {:?}", ops.lambda.to_rows());
    println!("level 1 Emb:    {:?}", ops.emb.to_rows());

    let report = KTheoryReport::compute(&g, 5, ReportMode::Both)?;
    let groups: Vec<String> = report.k0.per_level.iter().map(|g| g.to_string()).collect();
    println!("K0 approximants: {}", groups.join(", "));
    println!("formulations agree: {}", report.equivalence.as_ref().is_some_and(|e| e.profiles_agree));
    print!("{}", report.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
