// Builds the Cantor horizon λ-graph system of the Fibonacci matrix, prints
// the vertex counts and writes the first two levels as Graphviz DOT.
//
// cargo run --example horizon_graph > fib.dot

use std::error::Error;

use markov_dyck::horizon::{ExportFormat, LambdaGraphSystem};
use markov_dyck::markov::{MarkovWord, TransitionMatrix};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = TransitionMatrix::fibonacci();
    let g = LambdaGraphSystem::build(&f, 6)?;
    eprintln!("vertices per level: {:?}", g.vertex_counts());
    eprintln!("edges per level:    {:?}", g.edge_counts());
    for (l, table) in (0..=2).map(|l| (l, g.table(l))) {
        let words: Vec<String> = table.words().iter().map(|w| w.to_string()).collect();
        eprintln!("B_{l} = {words:?}");
    }
    // ι drops the rightmost symbol: 121 -> 12.
    let rank = g.table(3).index_of(&MarkovWord::parse("121", 2)?)?;
    let below = g.iota(3, rank)?;
    eprintln!("iota(121) = {}", g.table(2).word_at(below)?);

    let small = LambdaGraphSystem::build(&f, 2)?;
    print!("{}", small.export(ExportFormat::Dot));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
