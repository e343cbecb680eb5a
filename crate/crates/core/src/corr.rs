//! Correlation differentials and their table.
//!
//! A body stores `omega^{(g)}_{m,n} / prod dz_i` as a rational function of the
//! slot symbols `z1..z{m+n}`; the first `m` slots are x-type, the last `n`
//! y-type. Entries may be computed with some slots bound to rational probe
//! values (the binding is part of the cache key); bound slots simply do not
//! occur in the body.

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::mrat::MRat;
use crate::rat::{rat_to_string, Rat};
use crate::symbol::{self};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

/// Slot binding pattern: `None` marks a live (symbolic) slot.
pub type Bindings = Vec<Option<Rat>>;

pub fn all_live(len: usize) -> Bindings {
    vec![None; len]
}

/// A correlation differential `omega^{(g)}_{m,n}` divided by `prod dz_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrDiff {
    pub g: u32,
    pub m: u32,
    pub n: u32,
    pub body: MRat,
}

impl CorrDiff {
    pub fn euler(&self) -> i64 {
        2 * self.g as i64 - 2 + self.m as i64 + self.n as i64
    }

    pub fn is_stable(&self) -> bool {
        self.euler() > 0
    }
}

pub fn euler(g: u32, m: u32, n: u32) -> i64 {
    2 * g as i64 - 2 + (m + n) as i64
}

/// Applies a permutation to a block of slots: `perm[i] = j` renames slot
/// `offset+i` to slot `offset+j` (0-based), simultaneously.
pub fn permute_slots(body: &MRat, offset: usize, perm: &[usize]) -> MRat {
    let mut map = BTreeMap::new();
    for (i, &j) in perm.iter().enumerate() {
        if i != j {
            map.insert(symbol::slot(offset + i), symbol::slot(offset + j));
        }
    }
    if map.is_empty() {
        body.clone()
    } else {
        body.rename(&map)
    }
}

/// Exact symmetry of a body under all permutations within the x block and,
/// separately, within the y block (adjacent transpositions generate).
pub fn is_block_symmetric(body: &MRat, m: usize, n: usize) -> bool {
    for i in 0..m.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..m).collect();
        perm.swap(i, i + 1);
        if &permute_slots(body, 0, &perm) != body {
            return false;
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        if &permute_slots(body, m, &perm) != body {
            return false;
        }
    }
    true
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TableKey {
    pub g: u32,
    pub m: u32,
    pub n: u32,
    pub bind: Bindings,
}

/// Shared store of computed bodies for one curve. The classical recursion and
/// the swap engine both read and populate it through
/// [`crate::swap::entry`] / [`crate::classical::tr_entry`].
pub struct Tables {
    pub curve: Arc<CurveSpec>,
    entries: RwLock<BTreeMap<TableKey, MRat>>,
}

impl Tables {
    pub fn new(curve: Arc<CurveSpec>) -> Self {
        Tables {
            curve,
            entries: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn cached(&self, key: &TableKey) -> Option<MRat> {
        self.entries.read().unwrap().get(key).cloned()
    }

    pub fn store(&self, key: TableKey, body: MRat) {
        self.entries.write().unwrap().insert(key, body);
    }

    /// Injects a body, overriding the engine (corruption tests only).
    pub fn inject(&self, g: u32, m: u32, n: u32, body: MRat) {
        self.store(
            TableKey {
                g,
                m,
                n,
                bind: all_live((m + n) as usize),
            },
            body,
        );
    }

    pub fn keys(&self) -> Vec<TableKey> {
        self.entries.read().unwrap().keys().cloned().collect()
    }

    /// The unstable bodies fixed by convention:
    /// `omega_{0,1,0} = -y dx`, `omega_{0,0,1} = -x dy`,
    /// `omega_{0,2,0} = -omega_{0,1,1} = omega_{0,0,2} = B`.
    pub fn unstable_body(&self, g: u32, m: u32, n: u32) -> Option<MRat> {
        if g != 0 {
            return None;
        }
        let c = &self.curve;
        let s0 = symbol::slot(0);
        let s1 = symbol::slot(1);
        let bergman = || {
            MRat::one()
                .div(&MRat::var(s0).sub(&MRat::var(s1)).pow_int(2))
                .unwrap()
        };
        match (m, n) {
            (1, 0) => Some(c.y_of(s0).neg().mul(&c.xp_of(s0))),
            (0, 1) => Some(c.x_of(s0).neg().mul(&c.yp_of(s0))),
            (2, 0) => Some(bergman()),
            (1, 1) => Some(bergman().neg()),
            (0, 2) => Some(bergman()),
            _ => None,
        }
    }

    /// Applies a binding pattern to a fully symbolic body.
    pub fn bind_body(&self, body: &MRat, bind: &Bindings) -> Result<MRat> {
        let mut map = BTreeMap::new();
        for (i, b) in bind.iter().enumerate() {
            if let Some(p) = b {
                map.insert(symbol::slot(i), MRat::constant(p.clone()));
            }
        }
        if map.is_empty() {
            return Ok(body.clone());
        }
        body.substitute(&map).map_err(|_| {
            Error::invalid(format!(
                "binding {} hits a pole of the entry",
                bind.iter()
                    .map(|b| match b {
                        None => "_".to_string(),
                        Some(p) => rat_to_string(p),
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            ))
        })
    }
}

/// Serializable table entry used by the CLI outputs.
#[derive(Serialize, Deserialize)]
pub struct EntryRecord {
    pub g: u32,
    pub m: u32,
    pub n: u32,
    pub body: MRat,
}
