//! Closed-formula applications for curves with `y = z`: the explicit
//! graph-sum expression for the recursion output, the vertex-weight library
//! for the standard curve families, psi-class intersection numbers, and the
//! one- and two-point identities they satisfy.

use crate::error::{Error, Result};
use crate::grading::{gen_binomial, WPoly};
use crate::graphs::enumerate_simple_graphs;
use crate::mrat::MRat;
use crate::poly::MPoly;
use crate::rat::{factorial, odd_double_factorial, pow_i, rat, rat_to_string, Rat};
use crate::series::s_series;
use crate::symbol::{self, Sym};
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Plain-derivative S operator: `sum_j s_{2j} (w hbar)^{2j} d_z^{2j}` applied
/// to each coefficient, shifting the given w slot (plus `w_shift`).
fn apply_s_plain(p: &WPoly, z: Sym, w_slot: usize, w_shift: i32) -> WPoly {
    let svals = s_series(p.cutoff as usize + 1);
    let mut out = WPoly::zero(p.cutoff, p.nw);
    for ((h, w), c) in &p.terms {
        let mut deriv = c.clone();
        let mut j = 0u32;
        loop {
            let hh = h + 2 * j;
            if hh > p.cutoff {
                break;
            }
            let sc = &svals.coeffs[(2 * j) as usize];
            if !sc.is_zero() && !deriv.is_zero() {
                let mut wexp = w.clone();
                wexp[w_slot] += 2 * j as i32 + w_shift;
                out.insert(hh, wexp, deriv.scale(sc));
            }
            j += 1;
            if h + 2 * j > p.cutoff || deriv.is_zero() {
                break;
            }
            deriv = deriv.diff(z).diff(z);
        }
    }
    out
}

/// Generic vertex weight `W = -(1/w) exp(-w (S(w hbar d_z) - 1) x(z))` as a
/// (hbar, w)-graded series; index 0 of the w grading.
pub fn vertex_weight_generic(x: &MRat, z: Sym, cutoff: u32) -> WPoly {
    let svals = s_series(cutoff as usize + 1);
    let mut exponent = WPoly::zero(cutoff, 1);
    let mut deriv = x.clone();
    let mut j = 1u32;
    loop {
        if 2 * j > cutoff {
            break;
        }
        deriv = deriv.diff(z).diff(z);
        if deriv.is_zero() {
            break;
        }
        let sc = &svals.coeffs[(2 * j) as usize];
        if !sc.is_zero() {
            exponent.insert(2 * j, vec![2 * j as i32 + 1], deriv.scale(sc).neg());
        }
        j += 1;
    }
    exponent
        .exp()
        .mul_monomial(0, &[-1], &MRat::constant(-Rat::one()))
}

/// The curve families with closed-form vertex weights.
#[derive(Clone, Debug)]
pub enum VertexFamily {
    /// `x = z^r - r eps z`
    WittenR { r: u32, eps: Rat },
    /// `x = z^{r-1} + 1/z`
    Hypermap { r: u32 },
    /// `x = z^{-r} - r lambda^{r-1} / z`
    Theta { r: u32, lambda: Rat },
}

impl VertexFamily {
    pub fn x_of(&self, z: Sym) -> MRat {
        let zv = MRat::var(z);
        match self {
            VertexFamily::WittenR { r, eps } => zv
                .pow_int(*r)
                .sub(&zv.scale(&(Rat::from_integer((*r).into()) * eps))),
            VertexFamily::Hypermap { r } => zv
                .pow_int(r - 1)
                .add(&MRat::one().div(&zv).unwrap()),
            VertexFamily::Theta { r, lambda } => {
                let lead = MRat::one().div(&zv.pow_int(*r)).unwrap();
                let sub = MRat::one()
                    .div(&zv)
                    .unwrap()
                    .scale(&(Rat::from_integer((*r).into()) * pow_i(lambda, r - 1)));
                lead.sub(&sub)
            }
        }
    }
}

/// The closed-form expansion (log and binomial series assembled directly,
/// defined through the hbar expansion only).
pub fn vertex_weight_closed(family: &VertexFamily, z: Sym, cutoff: u32) -> WPoly {
    let zv = MRat::var(z);
    let mut exponent = WPoly::zero(cutoff, 1);
    // Odd-j tail of log((1-t)/(1+t)) + 2t with t = w hbar/(2 z), scaled by
    // `scale`: contributes scale * (-2/j) t^j / hbar.
    let add_log_tail = |exponent: &mut WPoly, scale: &MRat| {
        let mut j = 3u32;
        while j - 1 <= cutoff {
            let coeff = rat(-2, j as i64) * pow_i(&rat(1, 2), j);
            let term = scale
                .mul(&MRat::one().div(&zv.pow_int(j)).unwrap())
                .scale(&coeff);
            exponent.insert(j - 1, vec![j as i32], term);
            j += 2;
        }
    };
    match family {
        VertexFamily::WittenR { r, .. } => {
            // [(z - a)^{r+1} - (z + a)^{r+1} + (r+1) w hbar z^r] / (hbar (r+1)),
            // a = w hbar / 2: odd j >= 3 binomial tail.
            let rr = *r as u64 + 1;
            let mut j = 3u64;
            while j <= rr && (j - 1) as u32 <= cutoff {
                let c = gen_binomial(&Rat::from_integer(rr.into()), j)
                    * rat(-2, rr as i64)
                    * pow_i(&rat(1, 2), j as u32);
                let zpow = zv.pow_int((rr - j) as u32);
                exponent.insert((j - 1) as u32, vec![j as i32], zpow.scale(&c));
                j += 2;
            }
        }
        VertexFamily::Hypermap { r } => {
            add_log_tail(&mut exponent, &MRat::one());
            let rr = *r as u64;
            let mut j = 3u64;
            while j <= rr && (j - 1) as u32 <= cutoff {
                let c = gen_binomial(&Rat::from_integer(rr.into()), j)
                    * rat(-2, rr as i64)
                    * pow_i(&rat(1, 2), j as u32);
                let zpow = zv.pow_int((rr - j) as u32);
                exponent.insert((j - 1) as u32, vec![j as i32], zpow.scale(&c));
                j += 2;
            }
        }
        VertexFamily::Theta { r, lambda } => {
            let scale = MRat::constant(-Rat::from_integer((*r).into()) * pow_i(lambda, r - 1));
            add_log_tail(&mut exponent, &scale);
            // 2 sum_{j odd >= 3} C(1-r, j) t^j / ((r-1) hbar z^{r-1})
            let a = Rat::from_integer(1.into()) - Rat::from_integer((*r).into());
            let mut j = 3u32;
            while j - 1 <= cutoff {
                let c = gen_binomial(&a, j as u64)
                    * rat(2, (*r as i64) - 1)
                    * pow_i(&rat(1, 2), j);
                let term = MRat::one()
                    .div(&zv.pow_int(j + r - 1))
                    .unwrap()
                    .scale(&c);
                exponent.insert(j - 1, vec![j as i32], term);
                j += 2;
            }
        }
    }
    exponent
        .exp()
        .mul_monomial(0, &[-1], &MRat::constant(-Rat::one()))
}

/// Edge weight in closed rational form, expanded at the cutoff:
/// `w_i w_j / ((z_i - z_j)^2 - (hbar^2/4)(w_i + w_j)^2)` as a geometric
/// series around `(z_i - z_j)^{-2}`.
pub fn edge_weight_closed(zi: Sym, zj: Sym, slot_i: usize, slot_j: usize, nw: usize, cutoff: u32) -> WPoly {
    let diff = MRat::var(zi).sub(&MRat::var(zj));
    let mut out = WPoly::zero(cutoff, nw);
    let mut t = 0u32;
    while 2 * t <= cutoff {
        // (hbar^2/4)^t (w_i + w_j)^{2t} / (z_i - z_j)^{2t+2} * w_i w_j
        let base = MRat::one()
            .div(&diff.pow_int(2 * t + 2))
            .unwrap()
            .scale(&pow_i(&rat(1, 4), t));
        for a in 0..=(2 * t) {
            let b = 2 * t - a;
            let binom = gen_binomial(&Rat::from_integer((2 * t as i64).into()), a as u64);
            let mut wexp = vec![0i32; nw];
            wexp[slot_i] += a as i32 + 1;
            wexp[slot_j] += b as i32 + 1;
            out.insert(2 * t, wexp, base.scale(&binom));
        }
        t += 1;
    }
    out
}

/// Edge weight through its exponential definition
/// `(exp(hbar^2 w_i w_j S S (z_i-z_j)^{-2}) - 1)/hbar^2`; must coincide with
/// the closed rational form order by order.
pub fn edge_weight_exponential(zi: Sym, zj: Sym, slot_i: usize, slot_j: usize, nw: usize, cutoff: u32) -> WPoly {
    let diff_sq_inv = MRat::one()
        .div(&MRat::var(zi).sub(&MRat::var(zj)).pow_int(2))
        .unwrap();
    // S(w_i hbar d_i) S(w_j hbar d_j) (z_i - z_j)^{-2}, then * hbar^2 w_i w_j.
    let base = WPoly::monomial(cutoff + 2, nw, 0, vec![0; nw], diff_sq_inv);
    let si = apply_s_plain(&base, zi, slot_i, 0);
    let sij = apply_s_plain(&si, zj, slot_j, 0);
    let mut wexp = vec![0i32; nw];
    wexp[slot_i] += 1;
    wexp[slot_j] += 1;
    let x = sij.mul_monomial(2, &wexp, &MRat::one());
    // (e^X - 1)/hbar^2
    let mut acc = WPoly::zero(cutoff + 2, nw);
    let mut power = WPoly::one(cutoff + 2, nw);
    for k in 1..=(cutoff / 2 + 1) as u64 {
        power = power.mul(&x);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale_rat(&factorial(k).recip()));
    }
    let mut shifted = acc.shift_hbar_down(2);
    shifted.cutoff = cutoff;
    shifted.terms.retain(|(h, _), _| *h <= cutoff);
    shifted
}

/// The explicit closed formula for the recursion output on `(x(z), y = z)`:
/// `omega_{m,0} = [hbar^{2g}] sum_{r_i} prod D_{x_i}^{r_i} [w_i^{r_i}]
///  sum_Gamma hbar^{2 b(Gamma)} prod W_{i,j} prod W_i`, summed over connected
/// simple graphs on `m` labeled vertices. Input is the rational function `x`
/// in the internal symbol of `x_sym`; the output body lives in the usual slot
/// symbols. No residues are involved, so critical points of `x` may be
/// irrational.
pub fn yz_closed_formula(x: &MRat, x_sym: Sym, g: u32, m: u32) -> Result<MRat> {
    assert!(m >= 1);
    let cutoff = 2 * g;
    let mi = m as usize;
    let mut total = WPoly::zero(cutoff, mi);
    for graph in enumerate_simple_graphs(mi, g) {
        let betti = graph.len() as i64 - mi as i64 + 1;
        let mut term = WPoly::one(cutoff, mi);
        for &(i, j) in &graph {
            term = term.mul(&edge_weight_closed(
                symbol::slot(i),
                symbol::slot(j),
                i,
                j,
                mi,
                cutoff,
            ));
        }
        for i in 0..mi {
            let zi = symbol::slot(i);
            let mut bind = BTreeMap::new();
            bind.insert(x_sym, zi);
            let xi = x.rename(&bind);
            term = term.mul(&vertex_weight_generic(&xi, zi, cutoff).widen(mi, i));
        }
        total = total.add(&term.mul_monomial(2 * betti as u32, &vec![0; mi], &MRat::one()));
    }
    // Per-vertex reduction sum_r D_{x_i}^r [w_i^r].
    let mut reduced = total;
    for i in 0..mi {
        let zi = symbol::slot(i);
        let mut bind = BTreeMap::new();
        bind.insert(x_sym, zi);
        let xp = x.rename(&bind).diff(zi);
        let mut acc = WPoly::zero(cutoff, mi);
        for r in reduced.w_exponents(i) {
            if r < 0 {
                continue;
            }
            let piece = reduced.coeff_w(i, r);
            for ((h, w), c) in &piece.terms {
                let mut val = c.clone();
                for _ in 0..r {
                    val = val.div(&xp)?.diff(zi);
                }
                acc.insert(*h, w.clone(), val);
            }
        }
        reduced = acc;
    }
    Ok(reduced.coeff_hbar(2 * g).constant_term())
}

// ---------------------------------------------------------------------------
// Psi-class intersection numbers.
// ---------------------------------------------------------------------------

/// Intersection numbers `<tau_{k_1} ... tau_{k_m}>_g` with
/// `sum k_i = 3g - 3 + m`, keyed by sorted index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiTable {
    pub g: u32,
    pub m: u32,
    pub entries: BTreeMap<Vec<u32>, Rat>,
}

impl PsiTable {
    pub fn value(&self, k: &[u32]) -> Rat {
        let mut key = k.to_vec();
        key.sort_unstable();
        // dimension constraint: anything off-shell is zero
        self.entries.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Item {
            k: Vec<u32>,
            value: String,
        }
        #[derive(Serialize)]
        struct Repr {
            g: u32,
            entries: Vec<Item>,
        }
        serde_json::to_string_pretty(&Repr {
            g: self.g,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| Item {
                    k: k.clone(),
                    value: rat_to_string(v),
                })
                .collect(),
        })
        .expect("psi table serialization")
    }
}

#[derive(Deserialize)]
struct PsiItemIn {
    k: Vec<u32>,
    value: String,
}

#[derive(Deserialize)]
struct PsiReprIn {
    g: u32,
    entries: Vec<PsiItemIn>,
}

pub fn psi_table_from_json(text: &str) -> Result<PsiTable> {
    let repr: PsiReprIn =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("psi table: {e}")))?;
    let mut entries = BTreeMap::new();
    let mut m = 0;
    for item in repr.entries {
        m = item.k.len() as u32;
        entries.insert(item.k, crate::rat::rat_from_string(&item.value)?);
    }
    Ok(PsiTable {
        g: repr.g,
        m,
        entries,
    })
}

/// Reads intersection numbers off an `omega_{m,0}` body for the curve
/// `(x = z^2/2, y = z)` by expanding at infinity:
/// `body = sum <tau_k> prod (2k_i+1)!! z_i^{-2k_i-2}`. Any residual term
/// (wrong parity, off-dimension powers) is an error.
pub fn psi_extract(body: &MRat, g: u32, m: u32) -> Result<PsiTable> {
    let dim = 3 * (g as i64) - 3 + m as i64;
    if dim < 0 {
        return Err(Error::invalid("unstable psi range"));
    }
    // Substitute z_i -> 1/t_i; the result must be a polynomial in the t_i
    // with monomials t_i^{2k_i+2} on the dimension shell.
    let mut bind = BTreeMap::new();
    let tsyms: Vec<Sym> = (0..m as usize)
        .map(|i| symbol::intern(&format!("t_inf{}", i + 1)))
        .collect();
    for i in 0..m as usize {
        bind.insert(
            symbol::slot(i),
            MRat::one().div(&MRat::var(tsyms[i])).unwrap(),
        );
    }
    let sub = body.substitute(&bind)?;
    let poly = sub
        .as_poly()
        .ok_or_else(|| Error::invalid("nonzero residual: expansion at infinity is not polynomial (wrong input curve?)"))?
        .clone();
    let mut entries: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for (e, c) in poly.terms() {
        // exponents over poly.vars(), which are a subset of tsyms
        let mut ks = vec![0i64; m as usize];
        for (vi, &v) in poly.vars().iter().enumerate() {
            let slot = tsyms
                .iter()
                .position(|&t| t == v)
                .ok_or_else(|| Error::internal("foreign symbol in psi extraction"))?;
            ks[slot] = e[vi] as i64 - 2;
        }
        let mut key = Vec::with_capacity(m as usize);
        let mut dd = 0i64;
        for k2 in &ks {
            if k2 < &0 || k2 % 2 != 0 {
                return Err(Error::invalid(format!(
                    "nonzero residual of parity/order {:?} in psi extraction",
                    ks
                )));
            }
            key.push((k2 / 2) as u32);
            dd += k2 / 2;
        }
        if dd != dim {
            return Err(Error::invalid(format!(
                "nonzero residual off the dimension shell: {:?}",
                key
            )));
        }
        let mut norm = Rat::one();
        for &k in &key {
            norm *= odd_double_factorial(k as u64);
        }
        key.sort_unstable();
        let val = c.clone() / norm;
        match entries.get(&key) {
            None => {
                entries.insert(key, val);
            }
            Some(prev) => {
                if *prev != val {
                    return Err(Error::invalid(
                        "asymmetric psi coefficients (wrong input curve?)",
                    ));
                }
            }
        }
    }
    Ok(PsiTable { g, m, entries })
}

// ---------------------------------------------------------------------------
// One- and two-point identities.
// ---------------------------------------------------------------------------

/// `<tau_{3g-2}>_g = 1/(24^g g!)`.
pub fn one_point_expected(g: u32) -> Rat {
    (pow_i(&rat(24, 1), g) * factorial(g as u64)).recip()
}

/// The generating polynomial for the two-point numbers:
/// `sum u1^i u2^j <tau_i tau_j>_g =
///  sum_{i+k=g} (u1^3+u2^3)^i (u1+u2)^{k-1} (u1 u2)^k / (24^i i! 4^k (2k+1)!!)`.
pub fn two_point_generating_rhs(g: u32, u1: Sym, u2: Sym) -> MPoly {
    let a = MPoly::var(u1);
    let b = MPoly::var(u2);
    let cubes = a.pow(3).add(&b.pow(3));
    let sum = a.add(&b);
    let prod = a.mul(&b);
    let mut acc = MPoly::zero();
    for i in 0..=g {
        let k = g - i;
        let denom = pow_i(&rat(24, 1), i)
            * factorial(i as u64)
            * pow_i(&rat(4, 1), k)
            * odd_double_factorial(k as u64);
        let mut term = cubes.pow(i).mul(&prod.pow(k));
        if k == 0 {
            // (u1+u2)^{-1} against (u1^3+u2^3)^g: exact division
            term = term.div_exact(&sum).expect("u1+u2 divides u1^3+u2^3 powers");
        } else {
            term = term.mul(&sum.pow(k - 1));
        }
        acc = acc.add(&term.scale(&denom.recip()));
    }
    acc
}

/// LHS of the same identity built from an extracted two-point psi table.
pub fn two_point_generating_lhs(table: &PsiTable, u1: Sym, u2: Sym) -> MPoly {
    let a = MPoly::var(u1);
    let b = MPoly::var(u2);
    let mut acc = MPoly::zero();
    let top = 3 * table.g - 1;
    for i in 0..=top {
        let j = top - i;
        let v = table.value(&[i, j]);
        if v.is_zero() {
            continue;
        }
        acc = acc.add(&a.pow(i).mul(&b.pow(j)).scale(&v));
    }
    acc
}

/// The operator `D_{-x}` for `x = z^2/2` on bodies: `b -> -d/dz (b / z)`.
fn d_minus_x(b: &MRat, z: Sym) -> MRat {
    b.div(&MRat::var(z)).unwrap().diff(z).neg()
}

/// The two-point cancellation identity, as three computable routes:
/// `(D_1 + D_2)^{k+1} (z_1 - z_2)^{-2(k+1)}
///   = (2k+1)!! (z_1 z_2)^{-(2k+2)}
///   = (2k+1)!!^{-1} (D_1 D_2)^{k+1} 1`,
/// with `D_i = D_{-x_i}` in the Witten--Kontsevich normalization.
pub fn identity_2k_holds(k: u32) -> bool {
    let z1 = symbol::slot(0);
    let z2 = symbol::slot(1);
    let base = MRat::one()
        .div(&MRat::var(z1).sub(&MRat::var(z2)).pow_int(2 * k + 2))
        .unwrap();
    let mut lhs = base;
    for _ in 0..=k {
        lhs = d_minus_x(&lhs, z1).add(&d_minus_x(&lhs, z2));
    }
    let middle = MRat::one()
        .div(&MRat::var(z1).mul(&MRat::var(z2)).pow_int(2 * k + 2))
        .unwrap()
        .scale(&odd_double_factorial(k as u64));
    let mut rhs = MRat::one();
    for _ in 0..=k {
        rhs = d_minus_x(&rhs, z1);
        rhs = d_minus_x(&rhs, z2);
    }
    let rhs = rhs.scale(&odd_double_factorial(k as u64).recip());
    lhs == middle && middle == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::tr_entry;
    use crate::corr::{all_live, Tables};
    use crate::curve::airy;
    use crate::rat::rat_i;
    use std::sync::Arc;

    fn airy_x() -> (MRat, Sym) {
        let s = symbol::intern("z_curve");
        (MRat::var(s).pow_int(2).scale(&rat(1, 2)), s)
    }

    #[test]
    fn yz_formula_one_point_airy() {
        // (g,m) = (1,1): dz/(8 z^4), cross-checked against the recursion.
        let (x, s) = airy_x();
        let w = yz_closed_formula(&x, s, 1, 1).unwrap();
        let z = MRat::var(symbol::slot(0));
        assert_eq!(w, MRat::constant(rat(1, 8)).div(&z.pow_int(4)).unwrap());
        let t = Tables::new(Arc::new(airy()));
        assert_eq!(w, tr_entry(&t, 1, 1, &all_live(1)).unwrap());
    }

    #[test]
    fn yz_formula_unstable_two_point() {
        // (g,m) = (0,2) keeps the Bergman double pole.
        let (x, s) = airy_x();
        let w = yz_closed_formula(&x, s, 0, 2).unwrap();
        let z1 = MRat::var(symbol::slot(0));
        let z2 = MRat::var(symbol::slot(1));
        assert_eq!(w, MRat::one().div(&z1.sub(&z2).pow_int(2)).unwrap());
    }

    #[test]
    fn yz_formula_spin_curve_matches_recursion() {
        // x = z^3 - 3z, (g,m) = (1,1) equals the residue recursion.
        let s = symbol::intern("z_curve");
        let x = MRat::var(s)
            .pow_int(3)
            .sub(&MRat::var(s).scale(&rat_i(3)));
        let w = yz_closed_formula(&x, s, 1, 1).unwrap();
        let c = crate::curve::CurveSpec::from_coeff_lists(
            "spin3",
            &[0, -3, 0, 1],
            &[1],
            &[0, 1],
            &[1],
        )
        .unwrap();
        let t = Tables::new(Arc::new(c));
        assert_eq!(w, tr_entry(&t, 1, 1, &all_live(1)).unwrap());
    }

    #[test]
    fn vertex_weight_generic_vs_closed() {
        let z = symbol::intern("z_vw");
        for cutoff in [2u32, 4] {
            for fam in [
                VertexFamily::WittenR { r: 2, eps: rat_i(1) },
                VertexFamily::WittenR { r: 3, eps: rat_i(1) },
                VertexFamily::Hypermap { r: 2 },
                VertexFamily::Hypermap { r: 3 },
                VertexFamily::Theta { r: 2, lambda: rat_i(1) },
                VertexFamily::Theta { r: 3, lambda: rat_i(1) },
            ] {
                let x = fam.x_of(z);
                let generic = vertex_weight_generic(&x, z, cutoff);
                let closed = vertex_weight_closed(&fam, z, cutoff);
                assert_eq!(generic, closed, "family {:?} cutoff {}", fam, cutoff);
            }
        }
    }

    #[test]
    fn vertex_weight_hbar0_slot() {
        let z = symbol::intern("z_vw");
        let fam = VertexFamily::WittenR { r: 5, eps: rat(2, 3) };
        let w = vertex_weight_closed(&fam, z, 4);
        // hbar^0 slot is -1/w.
        let h0 = w.coeff_hbar(0);
        assert_eq!(h0.coeff_w(0, -1).constant_term(), MRat::constant(rat_i(-1)));
        assert_eq!(h0.w_exponents(0), vec![-1]);
        // The deformation parameter does not enter.
        let w2 = vertex_weight_closed(&VertexFamily::WittenR { r: 5, eps: rat_i(7) }, z, 4);
        assert_eq!(w, w2);
    }

    #[test]
    fn edge_weight_two_routes_agree() {
        let zi = symbol::slot(0);
        let zj = symbol::slot(1);
        for cutoff in [0u32, 2, 4] {
            let closed = edge_weight_closed(zi, zj, 0, 1, 2, cutoff);
            let expo = edge_weight_exponential(zi, zj, 0, 1, 2, cutoff);
            assert_eq!(closed, expo, "cutoff {}", cutoff);
        }
    }

    #[test]
    fn psi_extract_airy_values() {
        let t = Tables::new(Arc::new(airy()));
        // g=0, m=3: <tau_0^3> = 1
        let w03 = tr_entry(&t, 0, 3, &all_live(3)).unwrap();
        let p = psi_extract(&w03, 0, 3).unwrap();
        assert_eq!(p.value(&[0, 0, 0]), rat_i(1));
        // g=1, m=1: <tau_1> = 1/24
        let w11 = tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        let p1 = psi_extract(&w11, 1, 1).unwrap();
        assert_eq!(p1.value(&[1]), rat(1, 24));
        assert_eq!(p1.value(&[1]), one_point_expected(1));
        // off-shell keys are zero
        assert!(p1.value(&[2]).is_zero());
        // wrong input curve is rejected
        let c2 = crate::curve::sample_two_branch();
        let t2 = Tables::new(Arc::new(c2));
        let bad = tr_entry(&t2, 1, 1, &all_live(1)).unwrap();
        assert!(psi_extract(&bad, 1, 1).is_err());
    }

    #[test]
    fn two_point_identity_genus_one() {
        // RHS expansion at g=1 gives <tau_0 tau_2> = 1/24 and <tau_1^2> = 1/24.
        let u1 = symbol::intern("u1");
        let u2 = symbol::intern("u2");
        let rhs = two_point_generating_rhs(1, u1, u2);
        let t = Tables::new(Arc::new(airy()));
        let w = tr_entry(&t, 1, 2, &all_live(2)).unwrap();
        let table = psi_extract(&w, 1, 2).unwrap();
        assert_eq!(table.value(&[0, 2]), rat(1, 24));
        assert_eq!(table.value(&[1, 1]), rat(1, 24));
        let lhs = two_point_generating_lhs(&table, u1, u2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_2k_small() {
        assert!(identity_2k_holds(0));
        assert!(identity_2k_holds(1));
    }

    #[test]
    fn psi_json_round_trip() {
        let t = Tables::new(Arc::new(airy()));
        let w = tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        let p = psi_extract(&w, 1, 1).unwrap();
        let text = p.to_json();
        let q = psi_table_from_json(&text).unwrap();
        assert_eq!(p, q);
    }
}
