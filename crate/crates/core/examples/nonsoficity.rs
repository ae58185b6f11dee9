// Predecessor sets of β-words for the Fibonacci matrix keep multiplying with
// the level, and reversed α-words tell any two of them apart.
//
// cargo run --example nonsoficity

use std::error::Error;

use markov_dyck::dyck::{admissible, distinct_predecessor_sets, nonsofic_witnesses, predecessor_set, DyckWord};
use markov_dyck::markov::{MarkovWord, TransitionMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TransitionMatrix::fibonacci();
    let gamma = predecessor_set(2, &MarkovWord::parse("12", 2)?, &f)?;
    println!("Γ²(b1 b2) = {:?}", gamma.to_strings());

    for l in 1..=6 {
        println!("level {l}: {} distinct predecessor sets", distinct_predecessor_sets(&f, l));
    }

    let ev = nonsofic_witnesses(&f, 10, 5)?;
    for (i, j, sep) in ev.separators.iter().take(4) {
        let (wi, wj) = (&ev.words[*i], &ev.words[*j]);
        let yes = admissible(&sep.concat(&DyckWord::betas(wi)), &f)?;
        let no = admissible(&sep.concat(&DyckWord::betas(wj)), &f)?;
        println!("{sep} precedes β({wi}): {yes}, precedes β({wj}): {no}");
    }
    println!("{} separating pairs in total", ev.separators.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
