// Smith normal form with transforms, and the groups read off from it.
//
// cargo run --example smith_normal_form

use std::error::Error;

use markov_dyck::ktheory::snf::kernel_basis;
use markov_dyck::ktheory::{image_in_cokernel, smith_normal_form, ExactMatrix, FgGroup};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let m = ExactMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m);
    assert!(s.verify(&m));
    let d: Vec<String> = s.invariant_factors.iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", d.join(", "));
    println!("cokernel: {}", FgGroup::cokernel(&m));

    let r = ExactMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let k = kernel_basis(&r);
    println!("kernel of [[1,2,3],[2,4,6]] has rank {}", k.cols());

    // Inside Z/4, the class of 2 generates Z/2.
    let sub = image_in_cokernel(&ExactMatrix::from_rows(&[vec![2]]), &ExactMatrix::from_rows(&[vec![4]]));
    println!("<2> in Z/4 = {sub}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
