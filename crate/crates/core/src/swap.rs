//! The swap engine: mixed correlation differentials through both equivalent
//! recursion forms, the graph-sum closed formulas, pole splitting, and the
//! parametric duality identities.
//!
//! Conventions: a table body stores `omega/prod dz`; the W-normalized value
//! divides additionally by `x'` on x-slots and `y'` on y-slots (simple form)
//! or by `-x'/x` and `-y'/y` (standard form). Generating functions live in
//! [`WPoly`] with the hbar grading truncated at the context cutoff; the
//! polynomialized object is `P(w) = w e^{w y} W(w)` (simple) or
//! `R(u) = u e^{-u Theta} W(u)` (standard, including the `1/S(u hbar)`
//! prefactor), which removes the global essential factor and keeps every
//! hbar slot polynomial in the parameter.

use crate::classical::{self, Arg};
use crate::corr::{Bindings, TableKey, Tables};
use crate::curve::Side;
use crate::error::{Error, Result};
use crate::grading::WPoly;
use crate::mrat::{linear_diff_factor, linear_root_factor, MRat};
use crate::rat::{factorial, Rat};
use crate::series::{laurent_at, s_series};
use crate::symbol::{self, Sym};
use num::traits::Zero;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Entry dispatcher for the mixed table.
// ---------------------------------------------------------------------------

/// `omega^{(g)}_{m,n} / prod dz` with slot bindings. The `n = 0` column comes
/// from the classical recursion; `n >= 1` entries from the simple-form swap
/// step in the first y-slot.
pub fn entry(tables: &Tables, g: u32, m: u32, n: u32, bind: &Bindings) -> Result<MRat> {
    assert_eq!(bind.len(), (m + n) as usize);
    if n == 0 {
        return classical::tr_entry(tables, g, m, bind);
    }
    let key = TableKey {
        g,
        m,
        n,
        bind: bind.to_vec(),
    };
    if let Some(b) = tables.cached(&key) {
        return Ok(b);
    }
    if let Some(body) = tables.unstable_body(g, m, n) {
        let bound = tables.bind_body(&body, bind)?;
        tables.store(key, bound.clone());
        return Ok(bound);
    }
    // The step produces the first y-slot (position m); keep it live, using
    // block symmetry or post-binding when the caller bound it.
    let dist_pos = m as usize;
    if bind[dist_pos].is_some() {
        let live_y = (dist_pos..bind.len()).find(|&i| bind[i].is_none());
        let body = match live_y {
            Some(j) => {
                let mut swapped = bind.to_vec();
                swapped.swap(dist_pos, j);
                let b = entry(tables, g, m, n, &swapped)?;
                let mut perm: Vec<usize> = (0..n as usize).collect();
                perm.swap(0, j - dist_pos);
                crate::corr::permute_slots(&b, dist_pos, &perm)
            }
            None => {
                let mut opened = bind.to_vec();
                opened[dist_pos] = None;
                let b = entry(tables, g, m, n, &opened)?;
                let mut sub = BTreeMap::new();
                sub.insert(
                    symbol::slot(dist_pos),
                    MRat::constant(bind[dist_pos].clone().unwrap()),
                );
                b.substitute(&sub)?
            }
        };
        tables.store(key, body.clone());
        return Ok(body);
    }
    let body = step_simple(tables, g, m, n, bind)?;
    tables.store(key, body.clone());
    Ok(body)
}

/// Fetches an entry with per-slot arguments; live slots renamed to the given
/// symbols.
pub fn fetch_entry(
    tables: &Tables,
    g: u32,
    m: u32,
    n: u32,
    x_args: &[Arg],
    y_args: &[Arg],
) -> Result<MRat> {
    assert_eq!(x_args.len(), m as usize);
    assert_eq!(y_args.len(), n as usize);
    let mut args: Vec<Arg> = x_args.to_vec();
    args.extend(y_args.iter().cloned());
    let bind = Arg::to_bind(&args);
    let body = entry(tables, g, m, n, &bind)?;
    Ok(Arg::rename_from_slots(&args, body))
}

// ---------------------------------------------------------------------------
// Generating-function context.
// ---------------------------------------------------------------------------

/// Which of the two equivalent recursion forms is being assembled.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Form {
    /// Plain `dx`/`dy` normalizations and `d/dx` operators.
    Simple,
    /// Log-type `dX = -dx/x` normalizations and `-x d/dx` operators.
    Standard,
}

/// Assembly context for the T/W generating functions of one distinguished
/// variable. `side == X` builds `T^x / W^x` (legs in the x block); `side == Y`
/// the mirrored functions.
pub struct WCtx<'a> {
    pub tables: &'a Tables,
    pub cutoff: u32,
    pub side: Side,
    pub form: Form,
    pub dist: Sym,
    /// x-block spectators (the set M).
    pub m_args: Vec<Arg>,
    /// y-block spectators (the set N).
    pub n_args: Vec<Arg>,
    /// Entry `(g, m, n)` skipped during assembly (pole splitting).
    pub exclude: Option<(u32, u32, u32)>,
}

impl<'a> WCtx<'a> {
    pub fn new(
        tables: &'a Tables,
        cutoff: u32,
        side: Side,
        form: Form,
        dist: Sym,
        m_args: Vec<Arg>,
        n_args: Vec<Arg>,
    ) -> Self {
        WCtx {
            tables,
            cutoff,
            side,
            form,
            dist,
            m_args,
            n_args,
            exclude: None,
        }
    }

    fn curve(&self) -> &crate::curve::CurveSpec {
        &self.tables.curve
    }

    /// Normalization of one slot: `x'` / `y'` (simple) or `-x'/x` / `-y'/y`
    /// (standard); constants for bound slots.
    fn slot_norm(&self, slot_side: Side, arg: &Arg) -> Result<MRat> {
        let curve = self.curve();
        let sym = match arg {
            Arg::Live(s) => *s,
            Arg::Bound(_) => symbol::intern("z_normtmp"),
        };
        let base = match self.form {
            Form::Simple => curve.deriv_of(slot_side, sym),
            Form::Standard => curve
                .deriv_of(slot_side, sym)
                .div(&curve.fn_of(slot_side, sym))?
                .neg(),
        };
        match arg {
            Arg::Live(_) => Ok(base),
            Arg::Bound(p) => {
                let mut b = BTreeMap::new();
                b.insert(sym, p.clone());
                Ok(MRat::constant(base.eval(&b)?))
            }
        }
    }

    /// The derivative operator dressing legs on the context side.
    fn leg_partial(&self, f: &MRat, leg: Sym) -> Result<MRat> {
        let curve = self.curve();
        let d = f.diff(leg).div(&curve.deriv_of(self.side, leg))?;
        Ok(match self.form {
            Form::Simple => d,
            Form::Standard => d.mul(&curve.fn_of(self.side, leg)).neg(),
        })
    }

    /// Derivative operator in the distinguished variable on the output side
    /// (`d/dy` for side X): simple `1/y' d/dz`, standard `-y/y' d/dz`.
    pub fn out_partial(&self, f: &MRat) -> Result<MRat> {
        let curve = self.curve();
        let out_side = self.side.flip();
        let d = f
            .diff(self.dist)
            .div(&curve.deriv_of(out_side, self.dist))?;
        Ok(match self.form {
            Form::Simple => d,
            Form::Standard => d.mul(&curve.fn_of(out_side, self.dist)).neg(),
        })
    }

    /// `dx/dy` at the distinguished variable (side X; mirrored for Y), or the
    /// standard analog `dX/dY = (x' y)/(x y')`.
    fn cross_ratio(&self) -> Result<MRat> {
        let curve = self.curve();
        let plain = curve
            .deriv_of(self.side, self.dist)
            .div(&curve.deriv_of(self.side.flip(), self.dist))?;
        Ok(match self.form {
            Form::Simple => plain,
            Form::Standard => plain
                .mul(&curve.fn_of(self.side.flip(), self.dist))
                .div(&curve.fn_of(self.side, self.dist))?,
        })
    }

    /// The exponent-cancelling function: simple `y` (side X) resp. `x`
    /// (side Y); standard `Theta = x y`.
    fn lead_fn(&self) -> MRat {
        let curve = self.curve();
        match self.form {
            Form::Simple => curve.fn_of(self.side.flip(), self.dist),
            Form::Standard => curve.x_of(self.dist).mul(&curve.y_of(self.dist)),
        }
    }
}

/// Applies `sum_j s_{2j} (w hbar)^{2j} partial^{2j}` (the S operator) to every
/// coefficient, with the partials on `leg` per the context's side and form.
/// `w_shift` adds the extra `w^1` carried by dressed graph legs.
fn apply_s_op(ctx: &WCtx, p: &WPoly, leg: Sym, w_slot: usize, w_shift: i32) -> Result<WPoly> {
    let svals = s_series(ctx.cutoff as usize + 1);
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
            deriv = ctx.leg_partial(&deriv, leg)?;
            deriv = ctx.leg_partial(&deriv, leg)?;
        }
    }
    Ok(out)
}

/// Restriction of a leg variable to the target one, falling back to a Laurent
/// limit when a denominator vanishes on the diagonal (legitimate only for
/// regularized combinations).
fn restrict_leg(f: &MRat, leg: Sym, target: Sym) -> Result<MRat> {
    if !f.depends_on(leg) {
        return Ok(f.clone());
    }
    if !f.depends_on(target) {
        // Plain renaming; no diagonal is being taken.
        let mut ren = BTreeMap::new();
        ren.insert(leg, target);
        return Ok(f.rename(&ren));
    }
    let mut sub = BTreeMap::new();
    sub.insert(leg, MRat::var(target));
    match f.substitute(&sub) {
        Ok(v) => Ok(v),
        Err(_) => {
            let l = laurent_at(f, leg, &MRat::var(target), 0)?;
            for k in l.min_order..0 {
                if !l.coefficient(k)?.is_zero() {
                    return Err(Error::internal(
                        "diagonal restriction of a genuinely singular expression",
                    ));
                }
            }
            if l.min_order > 0 {
                return Ok(MRat::zero());
            }
            l.coefficient(0)
        }
    }
}

/// Set partitions of `{0..q-1}` into unordered nonempty blocks.
pub fn set_partitions(q: usize) -> Vec<Vec<Vec<usize>>> {
    if q == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in set_partitions(q - 1) {
        for i in 0..p.len() {
            let mut np = p.clone();
            np[i].push(q - 1);
            out.push(np);
        }
        let mut np = p.clone();
        np.push(vec![q - 1]);
        out.push(np);
    }
    out
}

/// The leg generating function `T_{|I|+1,|J|}` (side X) resp. `T_{|I|,|J|+1}`
/// (side Y) as a polynomial in (hbar, w), coefficients in the distinguished
/// variable and live spectators.
pub fn t_cal(ctx: &WCtx, isel: &[usize], jsel: &[usize]) -> Result<WPoly> {
    let mut total = WPoly::zero(ctx.cutoff, 1);
    let kmax = (ctx.cutoff / 2 + 1) as usize;
    for k in 1..=kmax {
        let legs: Vec<Sym> = (0..k).map(symbol::leg).collect();
        let gh_budget = ctx.cutoff - 2 * (k as u32 - 1);
        let mut inner = WPoly::zero(ctx.cutoff, 1);
        for gt in 0..=(gh_budget / 2) {
            let (mm, nn) = match ctx.side {
                Side::X => (isel.len() + k, jsel.len()),
                Side::Y => (isel.len(), jsel.len() + k),
            };
            if ctx.exclude == Some((gt, mm as u32, nn as u32)) {
                continue;
            }
            let mut x_args: Vec<Arg> = isel.iter().map(|&i| ctx.m_args[i].clone()).collect();
            let mut y_args: Vec<Arg> = Vec::new();
            match ctx.side {
                Side::X => {
                    x_args.extend(legs.iter().map(|&l| Arg::Live(l)));
                    y_args.extend(jsel.iter().map(|&j| ctx.n_args[j].clone()));
                }
                Side::Y => {
                    y_args.extend(legs.iter().map(|&l| Arg::Live(l)));
                    y_args.extend(jsel.iter().map(|&j| ctx.n_args[j].clone()));
                }
            }
            let e = fetch_entry(ctx.tables, gt, mm as u32, nn as u32, &x_args, &y_args)?;
            let mut norm = MRat::one();
            for a in &x_args {
                norm = norm.mul(&ctx.slot_norm(Side::X, a)?);
            }
            for a in &y_args {
                norm = norm.mul(&ctx.slot_norm(Side::Y, a)?);
            }
            let mut w = e.div(&norm)?;
            if gt == 0 && isel.is_empty() && jsel.is_empty() && k == 2 {
                w = w.sub(&regularizer(ctx, legs[0], legs[1])?);
            }
            inner.insert(2 * gt, vec![0], w);
        }
        // S operators on every leg while the legs are distinct, then the
        // diagonal restriction.
        let mut dressed = inner;
        for &l in &legs {
            dressed = apply_s_op(ctx, &dressed, l, 0, 0)?;
        }
        let mut restricted = WPoly::zero(ctx.cutoff, 1);
        for ((h, w), c) in &dressed.terms {
            let mut v = c.clone();
            for &l in legs.iter().rev() {
                v = restrict_leg(&v, l, ctx.dist)?;
                if v.is_zero() {
                    break;
                }
            }
            restricted.insert(*h, w.clone(), v);
        }
        let pref = MRat::constant(factorial(k as u64).recip());
        total = total.add(&restricted.mul_monomial(2 * (k as u32 - 1), &[k as i32], &pref));
    }
    Ok(total)
}

/// The normalized diagonal regularizer subtracted in the (0,0,2,0) slot.
fn regularizer(ctx: &WCtx, l0: Sym, l1: Sym) -> Result<MRat> {
    let curve = ctx.curve();
    let f0 = curve.fn_of(ctx.side, l0);
    let f1 = curve.fn_of(ctx.side, l1);
    let diff_sq = f0.sub(&f1).pow_int(2);
    match ctx.form {
        Form::Simple => MRat::one().div(&diff_sq),
        Form::Standard => f0.mul(&f1).div(&diff_sq),
    }
}

/// `1/S(u hbar)` as a bigraded polynomial at the cutoff.
fn inv_s_wpoly(cutoff: u32) -> WPoly {
    let s = s_series(cutoff as usize + 1);
    let n = (cutoff / 2 + 1) as usize;
    let mut inv = vec![Rat::zero(); n];
    inv[0] = Rat::from_integer(1.into());
    for i in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=i {
            let c = s.coeffs.get(2 * j).cloned().unwrap_or_else(Rat::zero);
            acc += c * inv[i - j].clone();
        }
        inv[i] = -acc;
    }
    let mut out = WPoly::zero(cutoff, 1);
    for (i, c) in inv.iter().enumerate() {
        out.insert(2 * i as u32, vec![2 * i as i32], MRat::constant(c.clone()));
    }
    out
}

/// The polynomialized W-function: simple `P(w) = w e^{w y} W^x(w)`; standard
/// `R(u) = u e^{-u Theta} W^X(u)` (including the `1/S(u hbar)` factor).
pub fn w_cal_poly(ctx: &WCtx) -> Result<WPoly> {
    let q = ctx.m_args.len() + ctx.n_args.len();
    let mut partition_sum = WPoly::zero(ctx.cutoff, 1);
    if q == 0 {
        partition_sum = WPoly::one(ctx.cutoff, 1);
    } else {
        let m = ctx.m_args.len();
        // The same block selections recur across set partitions; memoize.
        let mut block_cache: BTreeMap<(Vec<usize>, Vec<usize>), WPoly> = BTreeMap::new();
        for partition in set_partitions(q) {
            let mut prod = WPoly::one(ctx.cutoff, 1);
            for block in &partition {
                let isel: Vec<usize> = block.iter().copied().filter(|&i| i < m).collect();
                let jsel: Vec<usize> = block
                    .iter()
                    .copied()
                    .filter(|&i| i >= m)
                    .map(|i| i - m)
                    .collect();
                let key = (isel.clone(), jsel.clone());
                let block_val = match block_cache.get(&key) {
                    Some(v) => v.clone(),
                    None => {
                        let v = t_cal(ctx, &isel, &jsel)?;
                        block_cache.insert(key, v.clone());
                        v
                    }
                };
                prod = prod.mul(&block_val);
                if prod.is_zero() {
                    break;
                }
            }
            partition_sum = partition_sum.add(&prod);
        }
    }
    let t10 = t_cal(ctx, &[], &[])?;
    let corr = match ctx.form {
        Form::Simple => ctx.lead_fn(),
        Form::Standard => ctx.lead_fn().neg(),
    };
    let ttil = t10.add(&WPoly::monomial(ctx.cutoff, 1, 0, vec![1], corr));
    let mut p = ttil.exp().mul(&partition_sum);
    if ctx.form == Form::Standard {
        p = p.mul(&inv_s_wpoly(ctx.cutoff));
    }
    Ok(p)
}

/// `[w^r]` of the genuine `W^{(g)}`: `W = (1/w) e^{-w f} P(w)` with `f` the
/// context's exponent-cancelling function.
pub fn w_coefficient(ctx: &WCtx, p: &WPoly, r: i64, g: u32) -> Result<MRat> {
    let f = match ctx.form {
        Form::Simple => ctx.lead_fn(),
        Form::Standard => ctx.lead_fn().neg(),
    };
    let slice = p.coeff_hbar(2 * g);
    let mut acc = MRat::zero();
    for a in slice.w_exponents(0) {
        let d = r + 1 - a as i64;
        if d < 0 {
            continue;
        }
        let coeff = slice.coeff_w(0, a).constant_term();
        if coeff.is_zero() {
            continue;
        }
        let fac = f
            .neg()
            .pow_int(d as u32)
            .scale(&factorial(d as u64).recip());
        acc = acc.add(&coeff.mul(&fac));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// The two recursion steps.
// ---------------------------------------------------------------------------

fn arg_from_bind(bind: &Bindings, i: usize) -> Arg {
    match &bind[i] {
        None => Arg::Live(symbol::slot(i)),
        Some(p) => Arg::Bound(p.clone()),
    }
}

/// One simple-form step for target `omega^{(g)}_{m,n}` (`n >= 1`), the
/// distinguished first y-slot live.
pub fn step_simple(tables: &Tables, g: u32, m: u32, n: u32, bind: &Bindings) -> Result<MRat> {
    assert!(n >= 1);
    assert!(bind[m as usize].is_none(), "distinguished slot must be live");
    let dist = symbol::slot(m as usize);
    let m_args: Vec<Arg> = (0..m as usize).map(|i| arg_from_bind(bind, i)).collect();
    let n_args: Vec<Arg> = (m as usize + 1..(m + n) as usize)
        .map(|i| arg_from_bind(bind, i))
        .collect();
    let ctx = WCtx::new(tables, 2 * g, Side::X, Form::Simple, dist, m_args, n_args);
    let p = w_cal_poly(&ctx)?;
    step_from_poly(&ctx, &p, g, bind, m as usize, (m + n) as usize)
}

/// The dual simple-form step for target `omega^{(g)}_{m,n}` (`m >= 1`), the
/// distinguished LAST x-slot live, built from the y-side W-function.
pub fn step_simple_dual(tables: &Tables, g: u32, m: u32, n: u32, bind: &Bindings) -> Result<MRat> {
    assert!(m >= 1);
    let dist_pos = m as usize - 1;
    assert!(bind[dist_pos].is_none(), "distinguished slot must be live");
    let dist = symbol::slot(dist_pos);
    let m_args: Vec<Arg> = (0..dist_pos).map(|i| arg_from_bind(bind, i)).collect();
    let n_args: Vec<Arg> = (m as usize..(m + n) as usize)
        .map(|i| arg_from_bind(bind, i))
        .collect();
    let ctx = WCtx::new(tables, 2 * g, Side::Y, Form::Simple, dist, m_args, n_args);
    let p = w_cal_poly(&ctx)?;
    step_from_poly(&ctx, &p, g, bind, dist_pos, (m + n) as usize)
}

/// Shared tail of the simple steps: `-sum_r (d/dy)^r ((dx/dy) c_r)` plus the
/// measure conversion back to a plain body.
fn step_from_poly(
    ctx: &WCtx,
    p: &WPoly,
    g: u32,
    bind: &Bindings,
    dist_pos: usize,
    total: usize,
) -> Result<MRat> {
    let cross = ctx.cross_ratio()?;
    let slice = p.coeff_hbar(2 * g);
    let mut psi = MRat::zero();
    for a in slice.w_exponents(0) {
        if a < 1 {
            continue;
        }
        let r = (a - 1) as usize;
        let c_r = slice.coeff_w(0, a).constant_term();
        if c_r.is_zero() {
            continue;
        }
        let mut term = cross.mul(&c_r);
        for _ in 0..r {
            term = ctx.out_partial(&term)?;
        }
        psi = psi.add(&term);
    }
    psi = psi.neg();
    let curve = ctx.curve();
    let x_count = match ctx.side {
        Side::X => dist_pos,
        Side::Y => dist_pos + 1,
    };
    let mut body = psi;
    for i in 0..total {
        let slot_side = if i < x_count { Side::X } else { Side::Y };
        let effective = if i == dist_pos {
            ctx.side.flip()
        } else {
            slot_side
        };
        let factor = match &bind[i] {
            None => curve.deriv_of(effective, symbol::slot(i)),
            Some(pv) => {
                let s = symbol::intern("z_normtmp");
                let f = curve.deriv_of(effective, s);
                let mut b = BTreeMap::new();
                b.insert(s, pv.clone());
                MRat::constant(f.eval(&b)?)
            }
        };
        body = body.mul(&factor);
    }
    Ok(body)
}

// ---------------------------------------------------------------------------
// Standard-form step (Theta and the L operators).
// ---------------------------------------------------------------------------

/// Polynomials `q_k(v)` with `S(v t)/S(t) = sum_k q_k(v) t^{2k}`; `q_0 = 1`.
fn s_ratio_coeffs(kmax: usize) -> Vec<Vec<Rat>> {
    let s = s_series(2 * kmax + 1);
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut q = vec![Rat::zero(); 2 * k + 1];
        q[2 * k] = s.coeffs[2 * k].clone();
        for j in 1..=k {
            let c = s.coeffs[2 * j].clone();
            let prev = out[k - j].clone();
            for (i, pc) in prev.iter().enumerate() {
                q[i] -= c.clone() * pc;
            }
        }
        out.push(q);
    }
    out
}

/// `L_0(v, theta) = exp( v (S(v hbar d)/S(hbar d) - 1) log theta )` and the
/// derived `L_r = (d_theta + v/theta)^r L_0`, graded by (hbar, v) with
/// coefficients rational in the formal symbol theta.
pub fn l_series(cutoff: u32, rmax: usize) -> Vec<WPoly> {
    let th = symbol::theta();
    let tv = MRat::var(th);
    let kmax = (cutoff / 2) as usize;
    let q = s_ratio_coeffs(kmax);
    let mut exponent = WPoly::zero(cutoff, 1);
    for (k, qk) in q.iter().enumerate().skip(1) {
        // d^{2k} log theta = -(2k-1)! / theta^{2k}
        let dlog = MRat::constant(-factorial(2 * k as u64 - 1))
            .div(&tv.pow_int(2 * k as u32))
            .unwrap();
        for (j, c) in qk.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            exponent.insert(2 * k as u32, vec![j as i32 + 1], dlog.scale(c));
        }
    }
    let l0 = exponent.exp();
    let mut out = vec![l0];
    for _ in 0..rmax {
        let prev = out.last().unwrap();
        let d = prev.map_coeffs(|c| c.diff(th));
        let vt = prev.mul_monomial(0, &[1], &MRat::one().div(&tv).unwrap());
        out.push(d.add(&vt));
    }
    out
}

/// One standard-form step for target `omega^{(g)}_{m,n}`: side X produces the
/// first y-slot (`n >= 1`), side Y the last x-slot (`m >= 1`). Must agree
/// exactly with the simple step.
pub fn step_standard(
    tables: &Tables,
    side: Side,
    g: u32,
    m: u32,
    n: u32,
    bind: &Bindings,
) -> Result<MRat> {
    let cutoff = 2 * g;
    let (dist_pos, m_args, n_args) = match side {
        Side::X => {
            assert!(n >= 1);
            let dist_pos = m as usize;
            let m_args: Vec<Arg> = (0..m as usize).map(|i| arg_from_bind(bind, i)).collect();
            let n_args: Vec<Arg> = (m as usize + 1..(m + n) as usize)
                .map(|i| arg_from_bind(bind, i))
                .collect();
            (dist_pos, m_args, n_args)
        }
        Side::Y => {
            assert!(m >= 1);
            let dist_pos = m as usize - 1;
            let m_args: Vec<Arg> = (0..dist_pos).map(|i| arg_from_bind(bind, i)).collect();
            let n_args: Vec<Arg> = (m as usize..(m + n) as usize)
                .map(|i| arg_from_bind(bind, i))
                .collect();
            (dist_pos, m_args, n_args)
        }
    };
    assert!(bind[dist_pos].is_none());
    let dist = symbol::slot(dist_pos);
    let ctx = WCtx::new(tables, cutoff, side, Form::Standard, dist, m_args, n_args);
    let r_poly = w_cal_poly(&ctx)?;
    let curve = ctx.curve();
    let theta_val = curve.x_of(dist).mul(&curve.y_of(dist));
    let th = symbol::theta();

    let rmax = r_poly
        .terms
        .keys()
        .map(|(_, w)| w[0])
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let ls = l_series(cutoff, rmax);
    let cross = ctx.cross_ratio()?;
    let mut u_series = WPoly::zero(cutoff, 1); // graded by (hbar, v)
    for (r, lr) in ls.iter().enumerate().take(rmax + 1) {
        // [u^r] of (dX/dY) e^{-u Theta} W^X(u) is (dX/dY) R_{r+1}.
        let cr = r_poly.coeff_w(0, r as i32 + 1);
        if cr.is_zero() {
            continue;
        }
        let mut sub = BTreeMap::new();
        sub.insert(th, theta_val.clone());
        let mut lr_sub = WPoly::zero(cutoff, 1);
        for ((h, v), c) in &lr.terms {
            lr_sub.insert(*h, v.clone(), c.substitute(&sub)?);
        }
        let term = lr_sub.mul(&cr.scale(&cross)).neg();
        u_series = u_series.add(&term);
    }
    if ctx.m_args.is_empty() && ctx.n_args.is_empty() {
        // + (L_0(v,Theta)/v) dTheta/dY + Theta.
        let out_side = side.flip();
        let theta_prime = theta_val.diff(dist);
        let dout = curve
            .deriv_of(out_side, dist)
            .div(&curve.fn_of(out_side, dist))?
            .neg();
        let dtheta_dout = theta_prime.div(&dout)?;
        let mut sub = BTreeMap::new();
        sub.insert(th, theta_val.clone());
        for ((h, v), c) in &ls[0].terms {
            if v[0] >= 1 {
                u_series.insert(*h, vec![v[0] - 1], c.substitute(&sub)?.mul(&dtheta_dout));
            }
        }
        u_series.insert(0, vec![0], theta_val.clone());
    }
    let slice = u_series.coeff_hbar(2 * g);
    let mut psi = MRat::zero();
    for j in slice.w_exponents(0) {
        assert!(j >= 0);
        let mut term = slice.coeff_w(0, j).constant_term();
        if term.is_zero() {
            continue;
        }
        for _ in 0..j {
            term = ctx.out_partial(&term)?;
        }
        psi = psi.add(&term);
    }
    // Measure conversion for the standard form: -x'/x resp. -y'/y per slot.
    let total = (m + n) as usize;
    let x_count = match side {
        Side::X => dist_pos,
        Side::Y => dist_pos + 1,
    };
    let mut body = psi;
    for i in 0..total {
        let slot_side = if i < x_count { Side::X } else { Side::Y };
        let effective = if i == dist_pos { side.flip() } else { slot_side };
        let factor = match &bind[i] {
            None => {
                let s = symbol::slot(i);
                curve
                    .deriv_of(effective, s)
                    .div(&curve.fn_of(effective, s))?
                    .neg()
            }
            Some(pv) => {
                let s = symbol::intern("z_normtmp");
                let f = curve
                    .deriv_of(effective, s)
                    .div(&curve.fn_of(effective, s))?
                    .neg();
                let mut b = BTreeMap::new();
                b.insert(s, pv.clone());
                MRat::constant(f.eval(&b)?)
            }
        };
        body = body.mul(&factor);
    }
    Ok(body)
}

// ---------------------------------------------------------------------------
// Graph-sum closed formulas.
// ---------------------------------------------------------------------------

/// Closed graph-sum formula for `omega^{(g)}_{m,n}` built from the `n = 0`
/// column alone. `m = 0` is the pure swap; `m >= 1` the mixed variant with
/// undressed leaves.
pub fn graph_sum_mixed(tables: &Tables, g: u32, m: u32, n: u32) -> Result<MRat> {
    assert!(n >= 1, "graph formula produces y-type arguments");
    let cutoff = 2 * g;
    let curve = &tables.curve;
    let mi = m as usize;
    let ni = n as usize;
    let graphs = crate::graphs::enumerate_graphs(ni, mi, g);
    let ops_ctx = WCtx::new(
        tables,
        cutoff,
        Side::X,
        Form::Simple,
        symbol::slot(mi),
        vec![],
        vec![],
    );
    let mut total = WPoly::zero(cutoff, ni);
    for graph in &graphs {
        let mut term = WPoly::one(cutoff, ni);
        for edge in &graph.edges {
            let esize = edge.len();
            let legs: Vec<Sym> = (0..esize).map(symbol::leg).collect();
            let mut efac = WPoly::zero(cutoff, ni);
            for gt in 0..=(cutoff / 2) {
                let x_args: Vec<Arg> = legs.iter().map(|&l| Arg::Live(l)).collect();
                let e = fetch_entry(tables, gt, esize as u32, 0, &x_args, &[])?;
                let mut norm = MRat::one();
                for &l in &legs {
                    norm = norm.mul(&curve.xp_of(l));
                }
                let mut w = e.div(&norm)?;
                if gt == 0 && esize == 2 && edge[0] == edge[1] {
                    let f0 = curve.x_of(legs[0]);
                    let f1 = curve.x_of(legs[1]);
                    w = w.sub(&MRat::one().div(&f0.sub(&f1).pow_int(2))?);
                }
                efac.insert(2 * gt, vec![0; ni], w);
            }
            for (j, &l) in legs.iter().enumerate() {
                let v = edge[j];
                if v >= mi {
                    efac = apply_s_op(&ops_ctx, &efac, l, v - mi, 1)?;
                }
            }
            let mut substituted = WPoly::zero(cutoff, ni);
            for ((h, w), c) in &efac.terms {
                let mut val = c.clone();
                for (j, &l) in legs.iter().enumerate() {
                    val = restrict_leg(&val, l, symbol::slot(edge[j]))?;
                    if val.is_zero() {
                        break;
                    }
                }
                substituted.insert(*h, w.clone(), val);
            }
            term = term.mul(&substituted);
        }
        for v in 0..ni {
            let zi = symbol::slot(mi + v);
            let mut wsum = WPoly::zero(cutoff, ni);
            for gt in 0..=(cutoff / 2) {
                let e = fetch_entry(tables, gt, 1, 0, &[Arg::Live(zi)], &[])?;
                wsum.insert(2 * gt, vec![0; ni], e.div(&curve.xp_of(zi))?);
            }
            let mut dressed = apply_s_op(&ops_ctx, &wsum, zi, v, 1)?;
            let w10 = {
                let raw = tables.unstable_body(0, 1, 0).unwrap();
                let mut ren = BTreeMap::new();
                ren.insert(symbol::slot(0), zi);
                raw.rename(&ren).div(&curve.xp_of(zi))?
            };
            let mut wexp = vec![0i32; ni];
            wexp[v] = 1;
            dressed = dressed.add(&WPoly::monomial(cutoff, ni, 0, wexp, w10.neg()));
            let vfac = dressed.exp();
            let mut inv_w = vec![0i32; ni];
            inv_w[v] = -1;
            term = term.mul(&vfac.mul_monomial(0, &inv_w, &MRat::one()));
        }
        let aut_inv = Rat::from_integer(1.into()) / Rat::from_integer(graph.aut_order.into());
        term = term.mul_monomial(2 * graph.betti, &vec![0; ni], &MRat::constant(aut_inv));
        total = total.add(&term);
    }
    // Per-vertex reduction sum_k (d/dy_i)^k [w_i^k] ((dx_i/dy_i) * ...).
    let mut reduced = total;
    for v in 0..ni {
        let zi = symbol::slot(mi + v);
        let cross = curve.xp_of(zi).div(&curve.yp_of(zi))?;
        let scaled = reduced.scale(&cross);
        let mut acc = WPoly::zero(cutoff, ni);
        for k in scaled.w_exponents(v) {
            if k < 0 {
                continue;
            }
            let piece = scaled.coeff_w(v, k);
            for ((h, w), c) in &piece.terms {
                let mut val = c.clone();
                for _ in 0..k {
                    val = val.diff(zi).div(&curve.yp_of(zi))?;
                }
                acc.insert(*h, w.clone(), val);
            }
        }
        reduced = acc;
    }
    let mut result = reduced.coeff_hbar(2 * g).constant_term();
    if n % 2 == 1 {
        result = result.neg();
    }
    if (g, m, n) == (0, 0, 1) {
        result = result.add(&curve.x_of(symbol::slot(0)).neg());
    }
    let mut body = result;
    for i in 0..mi {
        body = body.mul(&curve.xp_of(symbol::slot(i)));
    }
    for i in mi..mi + ni {
        body = body.mul(&curve.yp_of(symbol::slot(i)));
    }
    Ok(body)
}

/// Pure swap: `omega^{(g)}_{0,n}` from the `n = 0` column.
pub fn graph_sum_swap(tables: &Tables, g: u32, n: u32) -> Result<MRat> {
    graph_sum_mixed(tables, g, 0, n)
}

// ---------------------------------------------------------------------------
// Pole splitting.
// ---------------------------------------------------------------------------

/// The transfer form `body_{m+1,n} + body_{m,n+1}` at level `(g, m, n)`,
/// computed from strictly lower entries only (the `r >= 1` tail of the step).
/// Slot layout: x spectators `0..m`, shared variable in slot `m`,
/// y spectators `m+1..m+n+1`.
pub fn transfer_form(tables: &Tables, g: u32, m: u32, n: u32) -> Result<MRat> {
    let dist = symbol::slot(m as usize);
    let m_args: Vec<Arg> = (0..m as usize)
        .map(|i| Arg::Live(symbol::slot(i)))
        .collect();
    let n_args: Vec<Arg> = (0..n as usize)
        .map(|i| Arg::Live(symbol::slot(m as usize + 1 + i)))
        .collect();
    let mut ctx = WCtx::new(tables, 2 * g, Side::X, Form::Simple, dist, m_args, n_args);
    ctx.exclude = Some((g, m + 1, n));
    let p = w_cal_poly(&ctx)?;
    let cross = ctx.cross_ratio()?;
    let slice = p.coeff_hbar(2 * g);
    let mut sum = MRat::zero();
    for a in slice.w_exponents(0) {
        if a < 2 {
            // a = r+1; the r = 0 term carries the unknown top entries.
            continue;
        }
        let r = (a - 1) as usize;
        let c_r = slice.coeff_w(0, a).constant_term();
        if c_r.is_zero() {
            continue;
        }
        let mut term = cross.mul(&c_r);
        for _ in 0..r {
            term = ctx.out_partial(&term)?;
        }
        sum = sum.add(&term);
    }
    sum = sum.neg();
    let curve = &tables.curve;
    let mut body = sum;
    for i in 0..m as usize {
        body = body.mul(&curve.xp_of(symbol::slot(i)));
    }
    body = body.mul(&curve.yp_of(dist));
    for i in 0..n as usize {
        body = body.mul(&curve.yp_of(symbol::slot(m as usize + 1 + i)));
    }
    Ok(body)
}

/// Splits the transfer form by pole location in the shared slot `m`:
/// x-ramification points and y-spectator diagonals reconstitute
/// `omega_{m+1,n}`; y-ramification points and x-spectator diagonals
/// `omega_{m,n+1}`. The polynomial part must vanish and every pole must be
/// classified.
pub fn split_poles(tables: &Tables, f: &MRat, m: u32, n: u32) -> Result<(MRat, MRat)> {
    let dist = symbol::slot(m as usize);
    let curve = &tables.curve;
    enum Loc {
        Point(Rat),
        Spect(Sym),
    }
    let mut x_class: Vec<Loc> = Vec::new();
    let mut y_class: Vec<Loc> = Vec::new();
    for rp in curve.ramification_points(Side::X)? {
        x_class.push(Loc::Point(rp.location));
    }
    for rp in curve.ramification_points(Side::Y)? {
        y_class.push(Loc::Point(rp.location));
    }
    for i in 0..n as usize {
        x_class.push(Loc::Spect(symbol::slot(m as usize + 1 + i)));
    }
    for i in 0..m as usize {
        y_class.push(Loc::Spect(symbol::slot(i)));
    }
    let principal_sum = |locs: &[Loc]| -> Result<MRat> {
        let mut acc = MRat::zero();
        for loc in locs {
            let (center, shift) = match loc {
                Loc::Point(p) => (
                    MRat::constant(p.clone()),
                    MRat::var(dist).sub(&MRat::constant(p.clone())),
                ),
                Loc::Spect(s) => (MRat::var(*s), MRat::var(dist).sub(&MRat::var(*s))),
            };
            let l = laurent_at(f, dist, &center, -1)?;
            if l.min_order > -1 {
                continue;
            }
            for k in l.min_order..0 {
                let c = l.coefficient(k)?;
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&c.div(&shift.pow_int((-k) as u32))?);
            }
        }
        Ok(acc)
    };
    let x_part = principal_sum(&x_class)?;
    let y_part = principal_sum(&y_class)?;
    let remainder = f.sub(&x_part).sub(&y_part);
    if !remainder.is_zero() {
        if remainder.den_expanded().depends_on(dist) {
            return Err(Error::UnclassifiedPole {
                location: format!("{}", remainder.den_expanded()),
            });
        }
        return Err(Error::NonzeroPolynomialPart);
    }
    Ok((x_part, y_part))
}

// ---------------------------------------------------------------------------
// Parametric duality.
// ---------------------------------------------------------------------------

/// Verifies both parametric identities relating the two W-functions through
/// `e^{t x} W^y(t) = - sum_r (d_y - t dx/dy)^r ([w^r](dx/dy) e^{w y} W^x(w))`
/// and its mirror, coefficient-wise in the parameter. The slot layout is that
/// of [`transfer_form`]; the distinguished slot must be live.
pub fn check_parametric_duality(
    tables: &Tables,
    g: u32,
    m: u32,
    n: u32,
    bind: &Bindings,
    w_max: i64,
    wt_max: i64,
) -> Result<bool> {
    assert_eq!(bind.len(), (m + n) as usize + 1);
    let dist = symbol::slot(m as usize);
    assert!(bind[m as usize].is_none());
    let cutoff = 2 * g;
    let m_args: Vec<Arg> = (0..m as usize).map(|i| arg_from_bind(bind, i)).collect();
    let n_args: Vec<Arg> = (m as usize + 1..bind.len())
        .map(|i| arg_from_bind(bind, i))
        .collect();
    let ctx_x = WCtx::new(
        tables,
        cutoff,
        Side::X,
        Form::Simple,
        dist,
        m_args.clone(),
        n_args.clone(),
    );
    let ctx_y = WCtx::new(tables, cutoff, Side::Y, Form::Simple, dist, m_args, n_args);
    let px = w_cal_poly(&ctx_x)?;
    let py = w_cal_poly(&ctx_y)?;
    let curve = &tables.curve;
    let dxdy = curve.xp_of(dist).div(&curve.yp_of(dist))?;
    let dydx = curve.yp_of(dist).div(&curve.xp_of(dist))?;
    let dy = |f: &MRat| -> Result<MRat> { f.diff(dist).div(&curve.yp_of(dist)) };
    let dx = |f: &MRat| -> Result<MRat> { f.diff(dist).div(&curve.xp_of(dist)) };

    let check_one = |p_src: &WPoly,
                     p_tgt: &WPoly,
                     cross: &MRat,
                     out_deriv: &dyn Fn(&MRat) -> Result<MRat>,
                     param_max: i64|
     -> Result<bool> {
        let src_slice = p_src.coeff_hbar(2 * g);
        let mut rhs: Vec<MRat> = vec![MRat::zero()];
        for a in src_slice.w_exponents(0) {
            if a < 1 {
                continue;
            }
            let r = (a - 1) as usize;
            let c_r = src_slice.coeff_w(0, a).constant_term();
            if c_r.is_zero() {
                continue;
            }
            let mut h: Vec<MRat> = vec![cross.mul(&c_r)];
            for _ in 0..r {
                let mut next: Vec<MRat> = vec![MRat::zero(); h.len() + 1];
                for (d, hv) in h.iter().enumerate() {
                    if hv.is_zero() {
                        continue;
                    }
                    next[d] = next[d].add(&out_deriv(hv)?);
                    next[d + 1] = next[d + 1].add(&hv.mul(cross).neg());
                }
                h = next;
            }
            if h.len() > rhs.len() {
                rhs.resize(h.len(), MRat::zero());
            }
            for (d, hv) in h.into_iter().enumerate() {
                rhs[d] = rhs[d].add(&hv);
            }
        }
        for c in rhs.iter_mut() {
            *c = c.neg();
        }
        let tgt_slice = p_tgt.coeff_hbar(2 * g);
        let tgt_deg = tgt_slice.w_exponents(0).into_iter().max().unwrap_or(0) as i64 - 1;
        let upper = (rhs.len() as i64 - 1).max(tgt_deg).max(param_max);
        for j in 0..=upper {
            let lhs = tgt_slice.coeff_w(0, j as i32 + 1).constant_term();
            let r = rhs.get(j as usize).cloned().unwrap_or_else(MRat::zero);
            if lhs != r {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let ok1 = check_one(&px, &py, &dxdy, &dy, wt_max)?;
    let ok2 = check_one(&py, &px, &dydx, &dx, w_max)?;
    Ok(ok1 && ok2)
}

// ---------------------------------------------------------------------------
// Loop equations for mixed differentials and structural scans.
// ---------------------------------------------------------------------------

/// Checks the r-loop equations for the mixed family at indices `(g, m, n)`:
/// `[w^{r-1}] W^{x,(g)}_{m+1,n}` lies in `Xi^x` at every zero of dx and
/// `[w^{r-1}] W^{y,(g)}_{m,n+1}` in `Xi^y` at every zero of dy, for
/// `1 <= r <= r_max`, spectators bound to probes from `seed`.
pub fn check_loop_equations(
    tables: &Tables,
    g: u32,
    m: u32,
    n: u32,
    r_max: i64,
    seed: u64,
) -> Result<bool> {
    let cutoff = 2 * g;
    let total = (m + n) as usize;
    let probes = classical::probe_values(tables, total, seed);
    let dist = symbol::intern("z_loopdist");
    let m_args: Vec<Arg> = (0..m as usize)
        .map(|i| Arg::Bound(probes[i].clone()))
        .collect();
    let n_args: Vec<Arg> = (m as usize..total)
        .map(|i| Arg::Bound(probes[i].clone()))
        .collect();
    let ctx_x = WCtx::new(
        tables,
        cutoff,
        Side::X,
        Form::Simple,
        dist,
        m_args.clone(),
        n_args.clone(),
    );
    let px = w_cal_poly(&ctx_x)?;
    for rp in tables.curve.ramification_points(Side::X)? {
        for r in 1..=r_max {
            let coeff = w_coefficient(&ctx_x, &px, r - 1, g)?;
            if !classical::check_r_loop(tables, &coeff, dist, &rp)? {
                return Ok(false);
            }
        }
    }
    let ctx_y = WCtx::new(tables, cutoff, Side::Y, Form::Simple, dist, m_args, n_args);
    let py = w_cal_poly(&ctx_y)?;
    for rp in tables.curve.ramification_points(Side::Y)? {
        for r in 1..=r_max {
            let coeff = w_coefficient(&ctx_y, &py, r - 1, g)?;
            if !classical::check_r_loop(tables, &coeff, dist, &rp)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Structural scan: every denominator factor of a stable entry is either a
/// ramification-point factor on the matching block side or a cross-block
/// diagonal.
pub fn pole_classification_ok(tables: &Tables, g: u32, m: u32, n: u32) -> Result<bool> {
    let body = entry(tables, g, m, n, &crate::corr::all_live((m + n) as usize))?;
    let x_locs: Vec<Rat> = tables
        .curve
        .ramification_points(Side::X)?
        .into_iter()
        .map(|r| r.location)
        .collect();
    let y_locs: Vec<Rat> = tables
        .curve
        .ramification_points(Side::Y)?
        .into_iter()
        .map(|r| r.location)
        .collect();
    for (fac, _) in body.den_factors() {
        let vars = fac.vars().to_vec();
        match vars.len() {
            1 => {
                let s = vars[0];
                let Some(i) = (0..(m + n) as usize).find(|&i| symbol::slot(i) == s) else {
                    return Err(Error::internal("foreign symbol in an entry denominator"));
                };
                let locs = if i < m as usize { &x_locs } else { &y_locs };
                if !locs.iter().any(|p| *fac == linear_root_factor(s, p)) {
                    return Ok(false);
                }
            }
            2 => {
                let (a, b) = (vars[0], vars[1]);
                if *fac != linear_diff_factor(a, b) {
                    return Ok(false);
                }
                let ia = (0..(m + n) as usize).find(|&i| symbol::slot(i) == a);
                let ib = (0..(m + n) as usize).find(|&i| symbol::slot(i) == b);
                match (ia, ib) {
                    (Some(ia), Some(ib)) => {
                        if (ia < m as usize) == (ib < m as usize) {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Diagonal regularity: within-block diagonal restrictions of a stable entry
/// are finite (Laurent window in the difference variable).
pub fn diagonal_regularity_ok(tables: &Tables, g: u32, m: u32, n: u32) -> Result<bool> {
    let body = entry(tables, g, m, n, &crate::corr::all_live((m + n) as usize))?;
    let check_block = |lo: usize, hi: usize| -> Result<bool> {
        for i in lo..hi {
            for j in (i + 1)..hi {
                let l = laurent_at(&body, symbol::slot(j), &MRat::var(symbol::slot(i)), 0)?;
                for k in l.min_order..0 {
                    if !l.coefficient(k)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    };
    Ok(check_block(0, m as usize)? && check_block(m as usize, (m + n) as usize)?)
}

/// Exactness of `omega_{m+1,n} + omega_{m,n+1}` in the shared variable, with
/// spectators probed.
pub fn exactness_of_level(tables: &Tables, g: u32, m: u32, n: u32, seed: u64) -> Result<bool> {
    let total = (m + n) as usize + 1;
    let probes = classical::probe_values(tables, total, seed);
    let dist_pos = m as usize;
    let mut bind: Bindings = Vec::new();
    for (i, p) in probes.iter().enumerate().take(total) {
        if i == dist_pos {
            bind.push(None);
        } else {
            bind.push(Some(p.clone()));
        }
    }
    let a = entry(tables, g, m + 1, n, &bind)?;
    let b = entry(tables, g, m, n + 1, &bind)?;
    classical::exactness_check(&a.add(&b), symbol::slot(dist_pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::all_live;
    use crate::curve::{airy, sample_two_branch};
    use crate::rat::{rat, rat_i};
    use std::sync::Arc;

    #[test]
    fn bell_number_partitions() {
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(0).len(), 1);
        assert_eq!(set_partitions(4).len(), 15);
    }

    #[test]
    fn w_exception_and_leading_coefficient() {
        // e^{w y} W^{x,(0)}_{1,0} = 1/w: the polynomialized P(w) = 1 at h = 0.
        let t = Tables::new(Arc::new(airy()));
        let ctx = WCtx::new(
            &t,
            0,
            Side::X,
            Form::Simple,
            symbol::slot(0),
            vec![],
            vec![],
        );
        let p = w_cal_poly(&ctx).unwrap();
        assert_eq!(p.constant_term(), MRat::one());

        // [w^0] W^{x,(g)}_{m+1,n} reproduces the table entry: (g,m,n)=(1,0,0).
        let ctx2 = WCtx::new(
            &t,
            2,
            Side::X,
            Form::Simple,
            symbol::slot(0),
            vec![],
            vec![],
        );
        let p2 = w_cal_poly(&ctx2).unwrap();
        let w0 = w_coefficient(&ctx2, &p2, 0, 1).unwrap();
        let body = classical::tr_entry(&t, 1, 1, &all_live(1)).unwrap();
        let wbar = body.div(&t.curve.xp_of(symbol::slot(0))).unwrap();
        assert_eq!(w0, wbar);
    }

    #[test]
    fn step_simple_unstable_targets() {
        // omega_{0,2} = B and omega_{1,1} = -B via the dispatcher.
        let t = Tables::new(Arc::new(sample_two_branch()));
        let b = t.unstable_body(0, 0, 2).unwrap();
        assert_eq!(entry(&t, 0, 0, 2, &all_live(2)).unwrap(), b);
        assert_eq!(entry(&t, 0, 1, 1, &all_live(2)).unwrap(), b.neg());
    }

    #[test]
    fn genus0_three_point_relation() {
        // omega_{(1,2,*bar)} + omega_{(1,2,*)} + D_y(omega_{(1,*)}omega_{(2,*)}/dx) = 0
        let t = Tables::new(Arc::new(sample_two_branch()));
        let curve = &t.curve;
        let z0 = symbol::slot(0);
        let z1 = symbol::slot(1);
        let zs = symbol::slot(2);
        let w21 = entry(&t, 0, 2, 1, &all_live(3)).unwrap();
        let w30 = entry(&t, 0, 3, 0, &all_live(3)).unwrap();
        let b = |a: Sym, c: Sym| {
            MRat::one()
                .div(&MRat::var(a).sub(&MRat::var(c)).pow_int(2))
                .unwrap()
        };
        let prod = b(z0, zs).mul(&b(z1, zs));
        let dy_term = prod
            .div(&curve.xp_of(zs))
            .unwrap()
            .div(&curve.yp_of(zs))
            .unwrap()
            .diff(zs);
        let total = w21.add(&w30).add(&dy_term);
        assert!(total.is_zero(), "three-point relation violated: {}", total);
    }

    #[test]
    fn transfer_and_split_reproduce_airy_level_one() {
        // Level (g,m,n) = (1,0,0): F = body_{1,0} + body_{0,1} = 1/(8 z^4);
        // the split returns omega^{(1)}_{1,0} and omega^{(1)}_{0,1} = 0.
        let t = Tables::new(Arc::new(airy()));
        let f = transfer_form(&t, 1, 0, 0).unwrap();
        let z = MRat::var(symbol::slot(0));
        let expected = MRat::constant(rat(1, 8)).div(&z.pow_int(4)).unwrap();
        assert_eq!(f, expected);
        let (x_part, y_part) = split_poles(&t, &f, 0, 0).unwrap();
        assert_eq!(x_part, expected);
        assert!(y_part.is_zero());
    }

    #[test]
    fn zero_transfer_splits_to_zero() {
        let t = Tables::new(Arc::new(airy()));
        let (a, b) = split_poles(&t, &MRat::zero(), 1, 0).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn airy_dual_column_trivial_small() {
        let t = Tables::new(Arc::new(airy()));
        let w03 = graph_sum_swap(&t, 0, 3).unwrap();
        assert!(w03.is_zero(), "omega_(0,3) dual = {}", w03);
        let w11 = graph_sum_swap(&t, 1, 1).unwrap();
        assert!(w11.is_zero(), "omega_(1,1) dual = {}", w11);
    }

    #[test]
    fn swap_zero_one_is_minus_x_dy() {
        let t = Tables::new(Arc::new(sample_two_branch()));
        let w01 = graph_sum_swap(&t, 0, 1).unwrap();
        assert_eq!(w01, t.unstable_body(0, 0, 1).unwrap());
    }

    #[test]
    fn mixed_graph_formula_unstable() {
        let t = Tables::new(Arc::new(sample_two_branch()));
        let w = graph_sum_mixed(&t, 0, 1, 1).unwrap();
        assert_eq!(w, t.unstable_body(0, 1, 1).unwrap());
    }

    #[test]
    fn standard_step_matches_simple_small() {
        // omega_{0,2} via the standard form equals B (one spectator bound).
        let t = Tables::new(Arc::new(sample_two_branch()));
        let mut bind = all_live(2);
        bind[1] = Some(rat_i(5));
        let simple = entry(&t, 0, 0, 2, &bind).unwrap();
        let standard = step_standard(&t, Side::X, 0, 0, 2, &bind).unwrap();
        assert_eq!(simple, standard);
    }

    #[test]
    fn l_series_structure() {
        // L_0 at hbar^0 is 1; its hbar^2 exponent matches v(v^2-1)/24 d^2 log.
        let ls = l_series(2, 2);
        let l0 = &ls[0];
        assert_eq!(l0.constant_term(), MRat::one());
        let th = MRat::var(symbol::theta());
        let minus_inv_sq = MRat::one().div(&th.pow_int(2)).unwrap().neg();
        assert_eq!(
            l0.coeff_hbar(2).coeff_w(0, 3).constant_term(),
            minus_inv_sq.scale(&rat(1, 24))
        );
        assert_eq!(
            l0.coeff_hbar(2).coeff_w(0, 1).constant_term(),
            minus_inv_sq.scale(&rat(-1, 24))
        );
        // The hbar^{2g} slice of L_r is a polynomial in v over theta^{2g+r}.
        let ls2 = l_series(4, 3);
        for (r, lr) in ls2.iter().enumerate() {
            for ((h, _), c) in &lr.terms {
                let denom = c.den_expanded();
                let deg = denom.degree_in(symbol::theta());
                assert!(
                    deg <= *h + r as u32,
                    "L_{r} hbar^{h} coefficient has theta-pole order {deg}"
                );
            }
        }
    }

    #[test]
    fn loop_equations_for_low_entries() {
        let t = Tables::new(Arc::new(airy()));
        assert!(check_loop_equations(&t, 0, 2, 0, 3, 41).unwrap());
        assert!(check_loop_equations(&t, 1, 1, 0, 3, 41).unwrap());
    }

    #[test]
    fn pole_scan_and_diagonals() {
        let t = Tables::new(Arc::new(sample_two_branch()));
        assert!(pole_classification_ok(&t, 0, 3, 0).unwrap());
        assert!(pole_classification_ok(&t, 0, 2, 1).unwrap());
        assert!(diagonal_regularity_ok(&t, 0, 2, 1).unwrap());
        assert!(diagonal_regularity_ok(&t, 1, 1, 0).unwrap());
    }
}
