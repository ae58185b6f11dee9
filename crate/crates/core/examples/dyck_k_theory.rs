// K-group approximants for the full shifts on 2 and 3 symbols: the level
// cokernels carry Z/N torsion that survives into every later level, and
// the kernels vanish.
//
// cargo run --example dyck_k_theory

use std::error::Error;

use markov_dyck::horizon::LambdaGraphSystem;
use markov_dyck::ktheory::{k0_profile, k1_profile};
use markov_dyck::markov::TransitionMatrix;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (n, top) in [(2, 5), (3, 4)] {
        let g = LambdaGraphSystem::build(&TransitionMatrix::full(n)?, top + 1)?;
        let k0 = k0_profile(&g, top)?;
        let k1 = k1_profile(&g, top)?;
        println!("N = {n}");
        for (l, (c, k)) in k0.per_level.iter().zip(&k1.per_level).enumerate() {
            println!("  level {l}: coker = {c}, ker = {k}");
        }
        for w in k0.windows.iter().filter(|w| w.target == top) {
            println!("  image of level {} in level {top}: {}", w.source, w.image);
        }
        println!(
            "  stabilized: {}, torsion {:?}, K1 image {}",
            k0.stabilized,
            k0.stabilized_torsion,
            k1.stabilized_image.map_or("-".to_string(), |g| g.to_string())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
