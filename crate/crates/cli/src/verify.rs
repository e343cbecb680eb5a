//! The `verify` subcommand: a bounded battery of the engine's invariant
//! checks against a user curve, reported check by check with counterexample
//! payloads where applicable.

use serde::Serialize;
use std::sync::Arc;
use trxy_core::classical::{
    check_linear_loop, check_projection, check_quadratic_loop, probe_values, tr_entry,
};
use trxy_core::corr::{all_live, is_block_symmetric, Tables};
use trxy_core::curve::{CurveSpec, Side};
use trxy_core::swap::{
    check_loop_equations, diagonal_regularity_ok, entry, exactness_of_level, graph_sum_swap,
    pole_classification_ok, step_standard,
};
use trxy_core::{Error, MRat};

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub curve: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

fn push(checks: &mut Vec<Check>, name: &str, r: Result<bool, Error>, detail_on_fail: &str) {
    match r {
        Ok(true) => checks.push(Check {
            name: name.into(),
            pass: true,
            detail: None,
        }),
        Ok(false) => checks.push(Check {
            name: name.into(),
            pass: false,
            detail: Some(detail_on_fail.into()),
        }),
        Err(e) => checks.push(Check {
            name: name.into(),
            pass: false,
            detail: Some(format!("error: {e}")),
        }),
    }
}

pub fn run_suite(curve: Arc<CurveSpec>, seed: u64, corrupt: bool) -> Result<Report, Error> {
    let name = curve.name.clone();
    let tables = Tables::new(curve.clone());
    let mut checks = Vec::new();

    if corrupt {
        // Deliberate corruption: perturb the one-point function by an even
        // polar part at the first ramification point of x.
        let rp = &curve.ramification_points(Side::X)?[0];
        let good = tr_entry(&tables, 1, 1, &all_live(1))?;
        let z = MRat::var(trxy_core::symbol::slot(0));
        let shift = z.sub(&MRat::constant(rp.location.clone()));
        tables.inject(1, 1, 0, good.add(&MRat::one().div(&shift)?));
    }

    // 1. Symmetry of the recursion outputs through chi <= 2.
    let sym_ok = (|| -> Result<bool, Error> {
        for (g, m) in [(0u32, 3u32), (0, 4), (1, 1), (1, 2)] {
            let body = tr_entry(&tables, g, m, &all_live(m as usize))?;
            if !is_block_symmetric(&body, m as usize, 0) {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "tr-symmetry",
        sym_ok,
        "a recursion output is not symmetric in its arguments",
    );

    // 2. Pole locations and diagonal regularity.
    let pole_ok = (|| -> Result<bool, Error> {
        for (g, m, n) in [(0u32, 3u32, 0u32), (1, 1, 0), (0, 2, 1), (1, 0, 1)] {
            if !pole_classification_ok(&tables, g, m, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "pole-classification",
        pole_ok,
        "an entry has a pole away from the matching ramification locus",
    );
    let diag_ok = (|| -> Result<bool, Error> {
        for (g, m, n) in [(0u32, 3u32, 0u32), (0, 2, 1), (1, 2, 0)] {
            if !diagonal_regularity_ok(&tables, g, m, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "diagonal-regularity",
        diag_ok,
        "a stable entry is singular on a within-block diagonal",
    );

    // 3. Linear and quadratic loop equations at every ramification point.
    let lle_ok = (|| -> Result<bool, Error> {
        for rp in curve.ramification_points(Side::X)? {
            for (g, m) in [(0u32, 2u32), (1, 0), (0, 1), (1, 1)] {
                let probes = probe_values(&tables, m as usize, seed);
                if !check_linear_loop(&tables, g, m, &rp, &probes)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "linear-loop-equations",
        lle_ok,
        "a linear loop equation fails",
    );
    let qle_ok = (|| -> Result<bool, Error> {
        for rp in curve.ramification_points(Side::X)? {
            for (g, m) in [(0u32, 1u32), (1, 0), (1, 1)] {
                let probes = probe_values(&tables, m as usize, seed);
                if !check_quadratic_loop(&tables, g, m, &rp, &probes)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "quadratic-loop-equations",
        qle_ok,
        "a quadratic loop equation fails",
    );

    // 4. r-loop equations for the mixed family on both sides.
    let rloop_ok = (|| -> Result<bool, Error> {
        for (g, m, n) in [(0u32, 2u32, 0u32), (0, 1, 1), (1, 1, 0)] {
            if !check_loop_equations(&tables, g, m, n, 3, seed)? {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "r-loop-equations",
        rloop_ok,
        "an r-loop equation fails for the mixed family",
    );

    // 5. Projection property.
    push(
        &mut checks,
        "projection-property",
        check_projection(&tables, 1, 1, seed),
        "the projection property fails for omega_{1,1}",
    );

    // 6. Equivalence of the two recursion forms on one target.
    let equiv_ok = (|| -> Result<bool, Error> {
        let bind = all_live(2);
        let simple = entry(&tables, 1, 1, 1, &bind)?;
        let standard = step_standard(&tables, Side::X, 1, 1, 1, &bind)?;
        Ok(simple == standard)
    })();
    push(
        &mut checks,
        "recursion-equivalence",
        equiv_ok,
        "the two recursion forms disagree at (1,1,1)",
    );

    // 7. Exactness of the level sums.
    let exact_ok = (|| -> Result<bool, Error> {
        for (g, m, n) in [(1u32, 0u32, 0u32), (0, 2, 0)] {
            if !exactness_of_level(&tables, g, m, n, seed)? {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    push(
        &mut checks,
        "level-sum-exactness",
        exact_ok,
        "a level sum has a nonvanishing residue",
    );

    // 8. The unstable swap identity.
    let swap_ok = (|| -> Result<bool, Error> {
        let w01 = graph_sum_swap(&tables, 0, 1)?;
        Ok(w01 == tables.unstable_body(0, 0, 1).unwrap())
    })();
    push(
        &mut checks,
        "swap-unstable-identity",
        swap_ok,
        "the graph-sum swap does not reproduce -x dy",
    );

    Ok(Report {
        curve: name,
        seed,
        checks,
    })
}
