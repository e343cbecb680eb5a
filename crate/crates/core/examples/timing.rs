use std::sync::Arc;
use std::time::Instant;
use trxy_core::corr::{all_live, Tables};
use trxy_core::curve::sample_two_branch;
use trxy_core::swap;

fn main() {
    let t = Tables::new(Arc::new(sample_two_branch()));
    for (g, m, n) in [(0u32, 2u32, 1u32), (0, 1, 2), (0, 0, 3), (0, 2, 2), (0, 1, 3), (0, 0, 4), (1, 1, 1), (1, 0, 2)] {
        let start = Instant::now();
        let e = swap::entry(&t, g, m, n, &all_live((m + n) as usize)).unwrap();
        println!("entry({g},{m},{n}): {:?}  num_terms={}", start.elapsed(), e.num().num_terms());
    }
    let start = Instant::now();
    let ok = swap::pole_classification_ok(&t, 0, 1, 3).unwrap();
    println!("pole_classification(0,1,3): {:?} -> {ok}", start.elapsed());
    let start = Instant::now();
    let ok = swap::diagonal_regularity_ok(&t, 0, 1, 3).unwrap();
    println!("diag_regularity(0,1,3): {:?} -> {ok}", start.elapsed());
    let start = Instant::now();
    let g = swap::graph_sum_mixed(&t, 0, 1, 3).unwrap();
    println!("graph_mixed(0,1,3): {:?} zero_diff={}", start.elapsed(), g.sub(&swap::entry(&t, 0, 1, 3, &all_live(4)).unwrap()).is_zero());
}
