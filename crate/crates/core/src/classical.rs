//! The classical residue recursion (the ground-truth oracle for everything
//! else) and the verifier battery: Xi-space membership, linear/quadratic
//! loop equations, the projection property and residue exactness.

use crate::corr::{Bindings, TableKey, Tables};
use crate::curve::{RamificationPoint, Side};
use crate::error::{Error, Result};
use crate::mrat::{linear_diff_factor, linear_root_factor, MRat};
use crate::pfrac::partial_fractions;
use crate::probe::ProbeGen;
use crate::rat::{rat, Rat};
use crate::series::{laurent_at, LaurentMR};
use crate::symbol::{self, Sym};
use num::traits::Zero;
use std::collections::BTreeMap;

/// Local analytic frame at a ramification point: the deck series and helpers
/// to expand functions directly or pulled back along the deck transformation.
pub struct LocalFrame {
    pub point: Rat,
    /// Coefficients of `sigma(p+t) - p` on `t^1, t^2, ...`.
    pub sigma: Vec<Rat>,
}

impl LocalFrame {
    pub fn new(tables: &Tables, rp: &RamificationPoint, order: usize) -> Result<LocalFrame> {
        let sigma = tables.curve.deck_series(rp, order)?;
        Ok(LocalFrame {
            point: rp.location.clone(),
            sigma,
        })
    }

    pub fn inner(&self) -> Vec<MRat> {
        self.sigma
            .iter()
            .map(|c| MRat::constant(c.clone()))
            .collect()
    }

    /// `sigma'(p+t)` as a series from order 0.
    pub fn sigma_prime(&self) -> LaurentMR {
        let coeffs: Vec<MRat> = self
            .sigma
            .iter()
            .enumerate()
            .map(|(i, c)| MRat::constant(c.clone() * Rat::from_integer(((i + 1) as i64).into())))
            .collect();
        LaurentMR {
            min_order: 0,
            coeffs,
        }
    }

    pub fn expand_at(&self, f: &MRat, sym: Sym, max_order: i64) -> Result<LaurentMR> {
        laurent_at(f, sym, &MRat::constant(self.point.clone()), max_order)
    }

    /// Expands `f(sym)` at `sym = sigma(p+t)`.
    pub fn expand_at_sigma(&self, f: &MRat, sym: Sym, max_order: i64) -> Result<LaurentMR> {
        let plain = self.expand_at(f, sym, max_order)?;
        plain.compose(&self.inner())
    }

    /// Series of `t - (sigma(p+t) - p)` (used for diagonal kernels).
    fn t_minus_sigma(&self, len: usize) -> LaurentMR {
        let mut coeffs = vec![MRat::zero(); len];
        for (i, c) in self.sigma.iter().enumerate() {
            if i < len {
                coeffs[i] = MRat::constant(-c.clone());
            }
        }
        if !coeffs.is_empty() {
            coeffs[0] = coeffs[0].add(&MRat::one());
        }
        LaurentMR {
            min_order: 1,
            coeffs,
        }
    }
}

/// Pole-order bound of `body` at `sym = p` read off the factored denominator.
pub fn pole_order_bound(body: &MRat, sym: Sym, p: &Rat) -> i64 {
    body.den_multiplicity(&linear_root_factor(sym, p)) as i64
}

/// Conclusive check that a series has no terms below `k` (window must reach
/// `k-1`).
pub fn vanishes_below(series: &LaurentMR, k: i64) -> Result<bool> {
    if series.min_order >= k {
        return Ok(true);
    }
    if series.max_order() < k - 1 {
        return Err(Error::internal(format!(
            "window [{}, {}] too short to decide vanishing below {k}",
            series.min_order,
            series.max_order()
        )));
    }
    for o in series.min_order..k {
        if !series.coefficient(o)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-slot argument for fetching a table entry.
#[derive(Clone, Debug)]
pub enum Arg {
    Live(Sym),
    Bound(Rat),
}

impl Arg {
    pub fn to_bind(args: &[Arg]) -> Bindings {
        args.iter()
            .map(|a| match a {
                Arg::Live(_) => None,
                Arg::Bound(p) => Some(p.clone()),
            })
            .collect()
    }

    /// Renames canonical live slots of `body` to the requested symbols.
    pub fn rename_from_slots(args: &[Arg], body: MRat) -> MRat {
        let mut rename = BTreeMap::new();
        for (i, a) in args.iter().enumerate() {
            if let Arg::Live(s) = a {
                if *s != symbol::slot(i) {
                    rename.insert(symbol::slot(i), *s);
                }
            }
        }
        if rename.is_empty() {
            body
        } else {
            body.rename(&rename)
        }
    }
}

/// Fetches an `n = 0` entry with per-slot arguments (symbols or values).
pub fn fetch_tr_entry(tables: &Tables, g: u32, m: u32, args: &[Arg]) -> Result<MRat> {
    assert_eq!(args.len(), m as usize);
    let bind = Arg::to_bind(args);
    let body = tr_entry(tables, g, m, &bind)?;
    Ok(Arg::rename_from_slots(args, body))
}

/// `omega^{(g)}_{m,0} / prod dz` with the given slot bindings, by the residue
/// recursion at the zeros of dx.
pub fn tr_entry(tables: &Tables, g: u32, m: u32, bind: &Bindings) -> Result<MRat> {
    assert_eq!(bind.len(), m as usize);
    let key = TableKey {
        g,
        m,
        n: 0,
        bind: bind.to_vec(),
    };
    if let Some(b) = tables.cached(&key) {
        return Ok(b);
    }
    if let Some(body) = tables.unstable_body(g, m, 0) {
        let bound = tables.bind_body(&body, bind)?;
        tables.store(key, bound.clone());
        return Ok(bound);
    }
    if 2 * g as i64 - 2 + m as i64 <= 0 {
        return Err(Error::MissingEntry { g, m, n: 0 });
    }
    // The recursion distinguishes the first slot; entries are symmetric, so a
    // live slot is moved to the front (or slot 0 is computed live and bound).
    if bind[0].is_some() {
        let body = match bind.iter().position(|b| b.is_none()) {
            Some(j) => {
                let mut swapped = bind.to_vec();
                swapped.swap(0, j);
                let b = tr_entry(tables, g, m, &swapped)?;
                let mut perm: Vec<usize> = (0..m as usize).collect();
                perm.swap(0, j);
                crate::corr::permute_slots(&b, 0, &perm)
            }
            None => {
                let mut opened = bind.to_vec();
                opened[0] = None;
                let b = tr_entry(tables, g, m, &opened)?;
                let mut sub = BTreeMap::new();
                sub.insert(symbol::slot(0), MRat::constant(bind[0].clone().unwrap()));
                b.substitute(&sub)?
            }
        };
        tables.store(key, body.clone());
        return Ok(body);
    }

    let pivot = symbol::slot(0);
    let spect: Vec<Arg> = bind
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, b)| match b {
            None => Arg::Live(symbol::slot(i)),
            Some(p) => Arg::Bound(p.clone()),
        })
        .collect();
    let mut total = MRat::zero();
    for rp in tables.curve.ramification_points(Side::X)? {
        let contrib = residue_contribution(tables, g, m, pivot, &spect, &rp)?;
        total = total.add(&contrib);
    }
    let body = total.scale(&rat(1, 2));
    tables.store(key, body.clone());
    Ok(body)
}

/// One branch point's residue in the recursion for `omega^{(g)}_{m,0}`:
/// `res_t [ Knum(t) sigma'(t) Bracket(t) / Dker(t) ]` in the local frame.
fn residue_contribution(
    tables: &Tables,
    g: u32,
    m: u32,
    pivot: Sym,
    spect: &[Arg],
    rp: &RamificationPoint,
) -> Result<MRat> {
    let la = symbol::leg(0);
    let lb = symbol::leg(1);

    // Bracket ingredients with pole-order bounds at the branch point.
    let mut a_entry: Option<(MRat, i64)> = None;
    if g >= 1 {
        let mut args = vec![Arg::Live(la), Arg::Live(lb)];
        args.extend(spect.iter().cloned());
        let e = fetch_tr_entry(tables, g - 1, m + 1, &args)?;
        let dd = e.den_multiplicity(&linear_diff_factor(la, lb)) as i64;
        let val = -(pole_order_bound(&e, la, &rp.location)
            + pole_order_bound(&e, lb, &rp.location)
            + dd);
        a_entry = Some((e, val));
    }
    let mut pair_entries: Vec<(MRat, MRat, i64)> = Vec::new();
    for mask in 0..(1u32 << spect.len()) {
        let i1: Vec<usize> = (0..spect.len()).filter(|i| mask & (1 << i) != 0).collect();
        let i2: Vec<usize> = (0..spect.len()).filter(|i| mask & (1 << i) == 0).collect();
        for g1 in 0..=g {
            let g2 = g - g1;
            if (g1, i1.len()) == (0, 0) || (g2, i2.len()) == (0, 0) {
                continue;
            }
            let mut args1 = vec![Arg::Live(la)];
            args1.extend(i1.iter().map(|&i| spect[i].clone()));
            let w1 = fetch_tr_entry(tables, g1, i1.len() as u32 + 1, &args1)?;
            let mut args2 = vec![Arg::Live(lb)];
            args2.extend(i2.iter().map(|&i| spect[i].clone()));
            let w2 = fetch_tr_entry(tables, g2, i2.len() as u32 + 1, &args2)?;
            let val = -(pole_order_bound(&w1, la, &rp.location)
                + pole_order_bound(&w2, lb, &rp.location));
            pair_entries.push((w1, w2, val));
        }
    }
    let v_bracket = a_entry
        .iter()
        .map(|(_, v)| *v)
        .chain(pair_entries.iter().map(|(_, _, v)| *v))
        .min()
        .unwrap_or(0);

    let mut extra: i64 = 2;
    loop {
        let r = try_residue(
            tables,
            pivot,
            rp,
            &a_entry,
            &pair_entries,
            v_bracket,
            la,
            lb,
            extra,
        );
        match r {
            Err(Error::WindowExhausted { .. }) | Err(Error::Internal(_)) if extra <= 18 => {
                extra += 8;
            }
            other => return other,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn try_residue(
    tables: &Tables,
    pivot: Sym,
    rp: &RamificationPoint,
    a_entry: &Option<(MRat, i64)>,
    pair_entries: &[(MRat, MRat, i64)],
    v_bracket: i64,
    la: Sym,
    lb: Sym,
    extra: i64,
) -> Result<MRat> {
    let curve = &tables.curve;
    let p = &rp.location;
    // KK = Knum * sigma' / Dker has valuation bound -2; the bracket v_bracket.
    let max_kk = -1 - v_bracket + extra;
    let max_term = 1 + extra;
    // Deck series long enough for every composition window below.
    let deck_order = ((max_kk + 6).max(max_term + (-v_bracket).max(0) + 8) + 4) as usize;
    let frame = LocalFrame::new(tables, rp, deck_order)?;
    let sp = frame.sigma_prime();

    // Kernel numerator 1/(z1 - sigma(z)) - 1/(z1 - z).
    let scratch = symbol::intern("z_ker");
    let invdiff = MRat::one()
        .div(&MRat::var(pivot).sub(&MRat::var(scratch)))
        .unwrap();
    let tdir = laurent_at(&invdiff, scratch, &MRat::constant(p.clone()), max_kk + 2)?;
    let tsig = tdir.compose(&frame.inner())?;
    let knum = tsig.add(&tdir.neg());

    // Kernel denominator y(z) x'(z) - y(sigma) x'(sigma) sigma'.
    let q = curve.y_of(scratch).mul(&curve.xp_of(scratch));
    let qser = laurent_at(&q, scratch, &MRat::constant(p.clone()), max_kk + 4)?;
    let dker = qser.add(&qser.compose(&frame.inner())?.mul(&sp).neg());
    if dker.valuation() != Some(2) {
        return Err(Error::internal(format!(
            "recursion kernel denominator does not vanish to order exactly 2 at {}",
            crate::rat::rat_to_string(p)
        )));
    }
    let dker_inv = dker.recip()?;
    let kk = knum.mul(&sp).mul(&dker_inv);

    // Bracket sum.
    let mut bracket: Option<LaurentMR> = None;
    let push = |series: LaurentMR, bracket: &mut Option<LaurentMR>| {
        *bracket = Some(match bracket.take() {
            None => series,
            Some(b) => b.add(&series),
        });
    };
    if let Some((e, _)) = a_entry {
        let series = expand_pair(&frame, e, la, lb, max_term)?;
        push(series, &mut bracket);
    }
    for (w1, w2, val) in pair_entries {
        // Budget each factor so the pair product is exact through max_term.
        let d1 = pole_order_bound(w1, la, p);
        let d2 = pole_order_bound(w2, lb, p);
        let _ = val;
        let s1 = frame.expand_at(w1, la, max_term + d2)?;
        let s2 = frame.expand_at_sigma(w2, lb, max_term + d1)?;
        push(s1.mul(&s2), &mut bracket);
    }
    let Some(bracket) = bracket else {
        return Ok(MRat::zero());
    };
    let integrand = kk.mul(&bracket);
    if integrand.min_order > -1 {
        return Ok(MRat::zero());
    }
    if integrand.max_order() < -1 {
        return Err(Error::WindowExhausted {
            point: crate::rat::rat_to_string(p),
            cap: integrand.max_order(),
        });
    }
    integrand.coefficient(-1)
}

/// Expands `E(la, lb, ...)` at `la = p + t`, `lb = sigma(p + t)`.
///
/// Entries regular on the diagonal are expanded sequentially (first in `la`,
/// then each coefficient in `lb` composed with the deck series). A diagonal
/// `(la - lb)` pole is only ever carried by the Bergman kernel itself, whose
/// pullback has the closed form `1/(t - s(t))^2`; mixed cases split.
pub fn expand_pair(
    frame: &LocalFrame,
    e: &MRat,
    la: Sym,
    lb: Sym,
    max_order: i64,
) -> Result<LaurentMR> {
    let dd = e.den_multiplicity(&linear_diff_factor(la, lb));
    if dd > 0 {
        let bergman = MRat::one()
            .div(&MRat::var(la).sub(&MRat::var(lb)).pow_int(2))
            .unwrap();
        let rest = e.sub(&bergman);
        if rest.den_multiplicity(&linear_diff_factor(la, lb)) > 0 {
            return Err(Error::internal(
                "diagonal pole beyond a Bergman kernel summand in a pair expansion",
            ));
        }
        let len = (max_order + 2 + 1).max(1) as usize;
        let tms = frame.t_minus_sigma(len + 2);
        let b_series = tms.recip()?.mul(&tms.recip()?);
        let rest_series = if rest.is_zero() {
            LaurentMR::zero_window(-2, max_order)
        } else {
            expand_pair(frame, &rest, la, lb, max_order)?
        };
        let b_trunc = if b_series.max_order() < max_order {
            return Err(Error::WindowExhausted {
                point: crate::rat::rat_to_string(&frame.point),
                cap: b_series.max_order(),
            });
        } else {
            b_series
        };
        return Ok(b_trunc.add(&rest_series));
    }
    let p = MRat::constant(frame.point.clone());
    let d_b = pole_order_bound(e, lb, &frame.point);
    let m1 = max_order + d_b;
    let a1 = laurent_at(e, la, &p, m1)?;
    let acc_min = (a1.min_order - d_b).min(max_order);
    let mut acc = LaurentMR::zero_window(acc_min, max_order);
    for (idx, ck) in a1.coeffs.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let k = a1.min_order + idx as i64;
        if k > max_order + d_b {
            break;
        }
        let ck_l = laurent_at(ck, lb, &p, max_order - k)?;
        let composed = ck_l.compose(&frame.inner())?;
        let shifted = LaurentMR {
            min_order: composed.min_order + k,
            coeffs: composed.coeffs,
        };
        acc = acc.add(&shifted);
    }
    Ok(acc)
}

/// Fills the `n = 0` column through Euler characteristic `chi_max`; returns
/// the computed `(g, m)` pairs in dependency order.
pub fn tr_run(tables: &Tables, chi_max: u32) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for chi in 1..=chi_max as i64 {
        let mut g = 0u32;
        loop {
            let m = chi + 2 - 2 * g as i64;
            if m < 1 {
                break;
            }
            tr_entry(tables, g, m as u32, &crate::corr::all_live(m as usize))?;
            out.push((g, m as u32));
            g += 1;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Verifiers.
// ---------------------------------------------------------------------------

/// Xi-space membership: `f(z) + f(sigma(z))` is holomorphic at the point.
pub fn xi_membership(tables: &Tables, f: &MRat, sym: Sym, rp: &RamificationPoint) -> Result<bool> {
    let d = pole_order_bound(f, sym, &rp.location).max(1);
    let frame = LocalFrame::new(tables, rp, (2 * d + 6) as usize)?;
    let plain = frame.expand_at(f, sym, 0)?;
    let pulled = frame.expand_at_sigma(f, sym, 0)?;
    vanishes_below(&plain.add(&pulled), 0)
}

/// Probe values for spectator slots, generic for the curve.
pub fn probe_values(tables: &Tables, count: usize, seed: u64) -> Vec<Rat> {
    let mut gen = ProbeGen::new(seed);
    let forbidden = tables.curve.special_points();
    gen.distinct(count, &forbidden)
}

/// Linear loop equation at a ramification point of x: the form
/// `omega_{m+1}(.., z) + omega_{m+1}(.., sigma(z))` is holomorphic with at
/// least a simple zero. Spectators are bound to the given probes.
pub fn check_linear_loop(
    tables: &Tables,
    g: u32,
    m: u32,
    rp: &RamificationPoint,
    probes: &[Rat],
) -> Result<bool> {
    assert_eq!(probes.len(), m as usize);
    let mut bind: Bindings = probes.iter().cloned().map(Some).collect();
    bind.push(None);
    let body = tr_entry_any_column(tables, g, m + 1, &bind)?;
    let sym = symbol::slot(m as usize);
    let d = pole_order_bound(&body, sym, &rp.location).max(1);
    let frame = LocalFrame::new(tables, rp, (2 * d + 6) as usize)?;
    let plain = frame.expand_at(&body, sym, 1)?;
    let pulled = frame
        .expand_at_sigma(&body, sym, 1)?
        .mul(&frame.sigma_prime());
    vanishes_below(&plain.add(&pulled), 1)
}

/// The quadratic loop equation: the quadratic differential
/// `omega_{m+2}(.., z, sigma z) + sum omega(.., z) omega(.., sigma z)` is
/// holomorphic with at least a double zero. The sum includes the unstable
/// one-point terms.
pub fn check_quadratic_loop(
    tables: &Tables,
    g: u32,
    m: u32,
    rp: &RamificationPoint,
    probes: &[Rat],
) -> Result<bool> {
    assert_eq!(probes.len(), m as usize);
    let la = symbol::leg(0);
    let lb = symbol::leg(1);
    let spect: Vec<Arg> = probes.iter().cloned().map(Arg::Bound).collect();
    let d_bound;
    let mut a_entry = None;
    if g >= 1 {
        let mut args = vec![Arg::Live(la), Arg::Live(lb)];
        args.extend(spect.iter().cloned());
        let e = fetch_entry_any(tables, g - 1, m + 2, &args)?;
        d_bound = pole_order_bound(&e, la, &rp.location)
            + pole_order_bound(&e, lb, &rp.location)
            + e.den_multiplicity(&linear_diff_factor(la, lb)) as i64;
        a_entry = Some(e);
    } else {
        d_bound = 0;
    }
    let mut pairs: Vec<(MRat, MRat)> = Vec::new();
    let mut dmax = d_bound;
    for mask in 0..(1u32 << spect.len()) {
        let i1: Vec<usize> = (0..spect.len()).filter(|i| mask & (1 << i) != 0).collect();
        let i2: Vec<usize> = (0..spect.len()).filter(|i| mask & (1 << i) == 0).collect();
        for g1 in 0..=g {
            let g2 = g - g1;
            let mut args1 = vec![Arg::Live(la)];
            args1.extend(i1.iter().map(|&i| spect[i].clone()));
            let w1 = fetch_entry_any(tables, g1, i1.len() as u32 + 1, &args1)?;
            let mut args2 = vec![Arg::Live(lb)];
            args2.extend(i2.iter().map(|&i| spect[i].clone()));
            let w2 = fetch_entry_any(tables, g2, i2.len() as u32 + 1, &args2)?;
            dmax = dmax.max(
                pole_order_bound(&w1, la, &rp.location) + pole_order_bound(&w2, lb, &rp.location),
            );
            pairs.push((w1, w2));
        }
    }
    let max_t = 1i64;
    let frame = LocalFrame::new(tables, rp, (dmax + max_t + 8) as usize)?;
    let mut total = LaurentMR::zero_window(-dmax - 1, max_t);
    if let Some(e) = &a_entry {
        total = total.add(&expand_pair(&frame, e, la, lb, max_t)?);
    }
    for (w1, w2) in &pairs {
        let d1 = pole_order_bound(w1, la, &rp.location);
        let d2 = pole_order_bound(w2, lb, &rp.location);
        let s1 = frame.expand_at(w1, la, max_t + d2)?;
        let s2 = frame.expand_at_sigma(w2, lb, max_t + d1)?;
        total = total.add(&s1.mul(&s2));
    }
    let q = total.mul(&frame.sigma_prime());
    vanishes_below(&q, 2)
}

/// Xi membership of an externally supplied loop-equation coefficient (the
/// `[w^{r-1}]` coefficient of a W-function) in the distinguished variable.
pub fn check_r_loop(
    tables: &Tables,
    coeff: &MRat,
    sym: Sym,
    rp: &RamificationPoint,
) -> Result<bool> {
    xi_membership(tables, coeff, sym, rp)
}

/// Projection property of a stable `omega^{(g)}_{m,0}`, checked per variable
/// against the literal residue formula, with the pole-location shortcut
/// asserted to agree.
pub fn check_projection(tables: &Tables, g: u32, m: u32, seed: u64) -> Result<bool> {
    if 2 * g as i64 - 2 + m as i64 <= 0 {
        return Err(Error::invalid(
            "projection property applies to stable entries only".to_string(),
        ));
    }
    let rams = tables.curve.ramification_points(Side::X)?;
    let locs: Vec<Rat> = rams.iter().map(|r| r.location.clone()).collect();
    let mut gen = ProbeGen::new(seed);
    let forbidden = tables.curve.special_points();
    let probes = gen.distinct(m as usize, &forbidden);
    for j in 0..m as usize {
        let mut bind: Bindings = (0..m as usize).map(|i| Some(probes[i].clone())).collect();
        bind[j] = None;
        let f = tr_entry(tables, g, m, &bind)?;
        let sym = symbol::slot(j);
        // Literal residue formula: sum over branch points of the principal
        // part minus its residue term.
        let zv = MRat::var(sym);
        let mut projected = MRat::zero();
        for p in &locs {
            let k = pole_order_bound(&f, sym, p);
            if k == 0 {
                continue;
            }
            let coeffs = crate::pfrac::principal_part_at(&f, sym, p, k as u32)?;
            let shift = zv.sub(&MRat::constant(p.clone()));
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() || i == 0 {
                    // i == 0 is the 1/(z-p) residue term the kernel kills.
                    continue;
                }
                projected = projected.add(
                    &MRat::constant(c.clone())
                        .div(&shift.pow_int(i as u32 + 1))
                        .unwrap(),
                );
            }
        }
        let literal_ok = projected == f;
        // Shortcut: poles only at ramification points, no residues there, and
        // no polynomial part.
        let pf = partial_fractions(&f, sym)?;
        let mut shortcut_ok = pf.poly_part.is_zero();
        for (pole, coeffs) in &pf.parts {
            if !locs.contains(pole) || !coeffs[0].is_zero() {
                shortcut_ok = false;
            }
        }
        if literal_ok != shortcut_ok {
            return Err(Error::internal(
                "projection literal formula and pole-location shortcut disagree",
            ));
        }
        if !literal_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A one-form `f dz` is the differential of a meromorphic function on the
/// sphere iff every residue vanishes (finite poles and infinity).
pub fn exactness_check(f: &MRat, sym: Sym) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let pf = partial_fractions(f, sym)?;
    for coeffs in pf.parts.values() {
        if !coeffs[0].is_zero() {
            return Ok(false);
        }
    }
    // Residue at infinity: z = 1/u, f dz = -f(1/u)/u^2 du.
    let u = symbol::intern("u_inf");
    let mut b = BTreeMap::new();
    b.insert(sym, MRat::one().div(&MRat::var(u)).unwrap());
    let g = f
        .substitute(&b)?
        .div(&MRat::var(u).pow_int(2))
        .unwrap()
        .neg();
    let l = laurent_at(&g, u, &MRat::zero(), 0)?;
    let res_inf = if l.min_order <= -1 && l.max_order() >= -1 {
        l.coefficient(-1)?
    } else {
        MRat::zero()
    };
    Ok(res_inf.is_zero())
}

// Hooks that let the loop checks read mixed-column entries when n > 0; the
// classical module itself only ever produces the n = 0 column.
fn tr_entry_any_column(tables: &Tables, g: u32, m: u32, bind: &Bindings) -> Result<MRat> {
    tr_entry(tables, g, m, bind)
}

fn fetch_entry_any(tables: &Tables, g: u32, m: u32, args: &[Arg]) -> Result<MRat> {
    fetch_tr_entry(tables, g, m, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::all_live;
    use crate::curve::{airy, sample_two_branch};
    use crate::rat::{rat, rat_i};
    use std::sync::Arc;

    fn airy_tables() -> Tables {
        Tables::new(Arc::new(airy()))
    }

    #[test]
    fn airy_frozen_values() {
        // Oracle-derived frozen values:
        // omega_{0,3}/dz^3 = 1/(z1^2 z2^2 z3^2), omega_{1,1}/dz = 1/(8 z^4).
        let t = airy_tables();
        let w03 = tr_entry(&t, 0, 3, &all_live(3)).unwrap();
        let z = |i: usize| MRat::var(symbol::slot(i));
        let expect03 = MRat::one()
            .div(&z(0).mul(&z(1)).mul(&z(2)).pow_int(2))
            .unwrap();
        assert_eq!(w03, expect03);

        let w11 = tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        let expect11 = MRat::constant(rat(1, 8)).div(&z(0).pow_int(4)).unwrap();
        assert_eq!(w11, expect11);
    }

    #[test]
    fn airy_four_point_value() {
        // omega_{0,4}/prod dz: known closed form sum 3 z_j^{-2} over slots,
        // divided by prod z_i^2... assert instead against symmetry + pole
        // structure and the known [z^-2] pattern via psi interpretation:
        // <tau_0^3 tau_1> = 1 means omega_{0,4} = (sum_j 3/z_j^2) / prod z_i^2.
        let t = airy_tables();
        let w04 = tr_entry(&t, 0, 4, &all_live(4)).unwrap();
        let z = |i: usize| MRat::var(symbol::slot(i));
        let mut expect = MRat::zero();
        for j in 0..4 {
            expect = expect.add(&MRat::constant(rat_i(3)).div(&z(j).pow_int(2)).unwrap());
        }
        let prod = z(0).mul(&z(1)).mul(&z(2)).mul(&z(3)).pow_int(2);
        expect = expect.div(&prod).unwrap();
        assert_eq!(w04, expect);
    }

    #[test]
    fn unstable_passthrough() {
        let t = airy_tables();
        let w10 = tr_entry(&t, 0, 1, &all_live(1)).unwrap();
        let z = MRat::var(symbol::slot(0));
        assert_eq!(w10, z.pow_int(2).neg());
    }

    #[test]
    fn symmetric_and_pole_located() {
        let t = Tables::new(Arc::new(sample_two_branch()));
        let w = tr_entry(&t, 0, 3, &all_live(3)).unwrap();
        assert!(crate::corr::is_block_symmetric(&w, 3, 0));
        // Poles only at the ramification points +-1 in each variable.
        for (f, _) in w.den_factors() {
            let vars = f.vars();
            assert_eq!(vars.len(), 1, "den factor {} not univariate", f);
            let s = vars[0];
            let ok = *f == linear_root_factor(s, &rat_i(1))
                || *f == linear_root_factor(s, &rat_i(-1));
            assert!(ok, "unexpected pole factor {}", f);
        }
    }

    #[test]
    fn bound_entries_match_substitution() {
        let t = airy_tables();
        let full = tr_entry(&t, 1, 2, &all_live(2)).unwrap();
        let p = rat(3, 5);
        let bound = tr_entry(&t, 1, 2, &vec![Some(p.clone()), None]).unwrap();
        let mut sub = BTreeMap::new();
        sub.insert(symbol::slot(0), MRat::constant(p));
        assert_eq!(bound, full.substitute(&sub).unwrap());
    }

    #[test]
    fn loop_equations_on_airy() {
        let t = airy_tables();
        let rp = &t.curve.ramification_points(Side::X).unwrap()[0];
        // (g,m) = (0,2): omega_{0,3} linear loop at 0.
        let probes = probe_values(&t, 2, 11);
        assert!(check_linear_loop(&t, 0, 2, rp, &probes).unwrap());
        // (g,m) = (1,0): omega_{1,1}.
        assert!(check_linear_loop(&t, 1, 0, rp, &[]).unwrap());
        // Quadratic loop equations.
        assert!(check_quadratic_loop(&t, 0, 1, rp, &probes[..1]).unwrap());
        assert!(check_quadratic_loop(&t, 1, 0, rp, &[]).unwrap());
    }

    #[test]
    fn corrupted_tables_are_caught() {
        // An even-polar perturbation of the W-function violates the linear
        // loop equation: body += 1/(z-p) makes W = body/x' even.
        let t = airy_tables();
        let rp = &t.curve.ramification_points(Side::X).unwrap()[0];
        let z = MRat::var(symbol::slot(0));
        let good = tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        let bad_linear = good.add(&MRat::one().div(&z).unwrap());
        let t2 = airy_tables();
        t2.inject(1, 1, 0, bad_linear);
        assert!(!check_linear_loop(&t2, 1, 0, rp, &[]).unwrap());

        // The spec's perturbation 1/(z-p)^2 of the body slips past the linear
        // loop equation (it is odd as a form) but breaks the quadratic one.
        let bad_quad = good.add(&MRat::one().div(&z.pow_int(2)).unwrap());
        let t3 = airy_tables();
        t3.inject(1, 1, 0, bad_quad.clone());
        assert!(check_linear_loop(&t3, 1, 0, rp, &[]).unwrap());
        assert!(!check_quadratic_loop(&t3, 1, 0, rp, &[]).unwrap());
        // ... and the projection property (pole at a non-ramification point).
        let off_point = good
            .add(&MRat::one().div(&z.sub(&MRat::constant(rat_i(2)))).unwrap());
        let t4 = airy_tables();
        t4.inject(1, 1, 0, off_point);
        assert!(!check_projection(&t4, 1, 1, 5).unwrap());
    }

    #[test]
    fn xi_membership_spec_examples() {
        let t = airy_tables();
        let rp = &t.curve.ramification_points(Side::X).unwrap()[0];
        let z = MRat::var(symbol::slot(0));
        // simple pole: member
        let f1 = MRat::one().div(&z).unwrap();
        assert!(xi_membership(&t, &f1, symbol::slot(0), rp).unwrap());
        // 1/t^2 with sigma = -t: not a member
        let f2 = MRat::one().div(&z.pow_int(2)).unwrap();
        assert!(!xi_membership(&t, &f2, symbol::slot(0), rp).unwrap());
        // 1/t^3: member (odd polar part)
        let f3 = MRat::one().div(&z.pow_int(3)).unwrap();
        assert!(xi_membership(&t, &f3, symbol::slot(0), rp).unwrap());
    }

    #[test]
    fn projection_on_airy() {
        let t = airy_tables();
        assert!(check_projection(&t, 1, 1, 23).unwrap());
        assert!(check_projection(&t, 0, 3, 23).unwrap());
        assert!(check_projection(&t, 0, 3, 24).unwrap());
        // Unstable input rejected.
        assert!(check_projection(&t, 0, 2, 23).is_err());
    }

    #[test]
    fn exactness_spec_examples() {
        let z1 = symbol::slot(0);
        let z = MRat::var(z1);
        let f = MRat::one().div(&z.pow_int(2)).unwrap();
        assert!(exactness_check(&f, z1).unwrap());
        let g = MRat::one().div(&z).unwrap();
        assert!(!exactness_check(&g, z1).unwrap());
        // A polynomial is exact.
        assert!(exactness_check(&z.pow_int(3), z1).unwrap());
    }

    #[test]
    fn two_branch_point_first_entries() {
        // chi = 1 level on x = z + 1/z, y = (z-3)^2; cross-check symmetry and
        // the linear + quadratic loop equations at both branch points.
        let t = Tables::new(Arc::new(sample_two_branch()));
        let w11 = tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        assert!(!w11.is_zero());
        for rp in t.curve.ramification_points(Side::X).unwrap() {
            assert!(check_linear_loop(&t, 1, 0, &rp, &[]).unwrap());
            assert!(check_quadratic_loop(&t, 1, 0, &rp, &[]).unwrap());
            let probes = probe_values(&t, 2, 31);
            assert!(check_linear_loop(&t, 0, 2, &rp, &probes).unwrap());
        }
    }
}
