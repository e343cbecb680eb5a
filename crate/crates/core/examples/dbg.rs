use trxy_core::corr::{all_live, Tables};
use trxy_core::curve::sample_two_branch;
use trxy_core::swap;
use std::sync::Arc;

fn main() {
    let t = Tables::new(Arc::new(sample_two_branch()));
    let body = swap::entry(&t, 0, 2, 1, &all_live(3)).unwrap();
    println!("den factors of omega_(0,2,1):");
    for (f, e) in body.den_factors() {
        println!("  ({})^{}", f, e);
    }
    println!("num terms: {}", body.num().num_terms());
}
