// Admissibility of bracket words for the Fibonacci matrix, with the
// reduction state the recognizer ends in.
//
// cargo run --example recognize_words

use std::error::Error;

use markov_dyck::dyck::{oracle_admissible, reduce, DyckWord};
use markov_dyck::markov::TransitionMatrix;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TransitionMatrix::fibonacci();
    for text in ["", "a1 b1", "a1 b2", "a2 b1", "b2 b2", "b1 b2", "a2 a1", "a1 b1 b2", "b1 a1"] {
        let w = DyckWord::parse(text, f.size())?;
        let state = reduce(&w, &f)?;
        assert_eq!(state.is_alive(), oracle_admissible(&w, &f)?);
        let shown = if text.is_empty() { "(empty)" } else { text };
        println!("{shown:>10}  {state}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
