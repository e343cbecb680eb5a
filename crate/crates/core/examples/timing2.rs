use std::sync::Arc;
use std::time::Instant;
use trxy_core::corr::{all_live, Tables};
use trxy_core::curve::sample_two_branch;
use trxy_core::swap;

fn main() {
    let t = Tables::new(Arc::new(sample_two_branch()));
    for (g, m, n) in [(0u32, 3u32, 0u32), (0, 4, 0), (0, 3, 1), (0, 2, 2)] {
        let start = Instant::now();
        let e = swap::entry(&t, g, m, n, &all_live((m + n) as usize)).unwrap();
        println!("entry({g},{m},{n}): {:?}  num_terms={}", start.elapsed(), e.num().num_terms());
    }
}
