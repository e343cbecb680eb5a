use std::sync::Arc;
use std::time::Instant;
use trxy_core::classical::Arg;
use trxy_core::corr::{all_live, Tables};
use trxy_core::curve::{sample_two_branch, Side};
use trxy_core::swap::{self, Form, WCtx};
use trxy_core::symbol;

fn main() {
    let t = Tables::new(Arc::new(sample_two_branch()));
    // warm the cache with the dependency
    let s = Instant::now();
    swap::entry(&t, 0, 3, 1, &all_live(4)).unwrap();
    println!("dep (0,3,1): {:?}", s.elapsed());
    // now time w_cal_poly for the (0,2,2) step
    let dist = symbol::slot(2);
    let m_args = vec![Arg::Live(symbol::slot(0)), Arg::Live(symbol::slot(1))];
    let n_args = vec![Arg::Live(symbol::slot(3))];
    let ctx = WCtx::new(&t, 0, Side::X, Form::Simple, dist, m_args, n_args);
    let s = Instant::now();
    let p = swap::w_cal_poly(&ctx).unwrap();
    println!("w_cal_poly: {:?}, terms: {}", s.elapsed(), p.terms.len());
    for ((h, w), c) in &p.terms {
        println!("  slot (h={h}, w={:?}): num_terms={}", w, c.num().num_terms());
    }
    let s = Instant::now();
    let e = swap::step_simple(&t, 0, 2, 2, &all_live(4)).unwrap();
    println!("full step: {:?} num={}", s.elapsed(), e.num().num_terms());
}
