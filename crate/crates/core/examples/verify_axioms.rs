// Runs the structural identities on a few systems, then deletes one β-edge
// and shows which identity notices.
//
// cargo run --example verify_axioms

use std::error::Error;

use markov_dyck::horizon::{Identity, LambdaGraphSystem};
use markov_dyck::markov::TransitionMatrix;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let matrices = [
        ("F", TransitionMatrix::fibonacci()),
        ("ones2", TransitionMatrix::full(2)?),
        ("ones3", TransitionMatrix::full(3)?),
    ];
    for (name, a) in &matrices {
        let g = LambdaGraphSystem::build(a, 5)?;
        let r = g.verify_axioms();
        println!("{name}: {} checks, all passed: {}", r.checks.len(), r.all_passed());
    }

    let g = LambdaGraphSystem::build(&TransitionMatrix::fibonacci(), 4)?;
    let victim = *g.edges(3).iter().find(|e| !e.label.is_alpha()).ok_or("no beta edge")?;
    let broken = g.without_edge(3, &victim);
    let r = broken.verify_axioms();
    assert!(!r.passed(Identity::Intertwining));
    println!("after deleting {} at level 3:", victim.label);
    for c in r.failures() {
        println!("  ({}) level {}: {}", c.identity.tag(), c.level, c.detail);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
