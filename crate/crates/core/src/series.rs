//! Truncated power/Laurent series whose coefficients are multivariate rational
//! functions, plus the univariate `LaurentData` view with plain rational
//! coefficients. Truncation windows are explicit everywhere: every operation
//! computes the window on which its output is guaranteed valid.

use crate::error::{Error, Result};
use crate::mrat::MRat;
use crate::poly::MPoly;
use crate::rat::{factorial, pow_i, rat, Rat};
use crate::symbol::{self, Sym};
use num::traits::Zero;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Dense truncated power series with MRat coefficients.
// ---------------------------------------------------------------------------

/// `coeffs[k]` is the coefficient of `t^k`; all operations are truncations to
/// the shorter of the operands' lengths.
pub fn ps_add(a: &[MRat], b: &[MRat]) -> Vec<MRat> {
    let n = a.len().min(b.len());
    (0..n).map(|i| a[i].add(&b[i])).collect()
}

pub fn ps_scale(a: &[MRat], c: &MRat) -> Vec<MRat> {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn ps_mul(a: &[MRat], b: &[MRat], n: usize) -> Vec<MRat> {
    let n = n.min(a.len() + b.len());
    let mut out = vec![MRat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if i >= n || x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= n {
                break;
            }
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Multiplicative inverse of a series with invertible constant term.
pub fn ps_inv(a: &[MRat], n: usize) -> Result<Vec<MRat>> {
    if a.is_empty() || a[0].is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv0 = a[0].recip()?;
    let mut out = vec![MRat::zero(); n];
    if n == 0 {
        return Ok(out);
    }
    out[0] = inv0.clone();
    for i in 1..n {
        let mut acc = MRat::zero();
        for j in 1..=i {
            let aj = if j < a.len() { &a[j] } else { continue };
            if aj.is_zero() {
                continue;
            }
            acc = acc.add(&aj.mul(&out[i - j]));
        }
        out[i] = acc.neg().mul(&inv0);
    }
    Ok(out)
}

pub fn ps_pow(a: &[MRat], e: u32, n: usize) -> Vec<MRat> {
    let mut acc = vec![MRat::zero(); n];
    if n > 0 {
        acc[0] = MRat::one();
    }
    let mut base = a.to_vec();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = ps_mul(&acc, &base, n);
        }
        k >>= 1;
        if k > 0 {
            base = ps_mul(&base, &base, n);
        }
    }
    acc
}

pub fn ps_derivative(a: &[MRat]) -> Vec<MRat> {
    if a.len() <= 1 {
        return vec![];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&Rat::from_integer((i as i64).into())))
        .collect()
}

// ---------------------------------------------------------------------------
// Laurent series with MRat coefficients.
// ---------------------------------------------------------------------------

/// Truncated Laurent series `sum_{k} coeffs[k] t^{min_order+k}` with an
/// explicit guaranteed-valid window `[min_order, max_order()]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMR {
    pub min_order: i64,
    pub coeffs: Vec<MRat>,
}

impl LaurentMR {
    pub fn zero_window(min_order: i64, max_order: i64) -> Self {
        assert!(max_order >= min_order);
        LaurentMR {
            min_order,
            coeffs: vec![MRat::zero(); (max_order - min_order + 1) as usize],
        }
    }

    pub fn max_order(&self) -> i64 {
        self.min_order + self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, order: i64) -> Result<MRat> {
        if order < self.min_order || order > self.max_order() {
            return Err(Error::internal(format!(
                "Laurent coefficient at order {order} outside window [{}, {}]",
                self.min_order,
                self.max_order()
            )));
        }
        Ok(self.coeffs[(order - self.min_order) as usize].clone())
    }

    /// Lowest order with a nonzero coefficient, if any in the window.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_order + i as i64)
    }

    pub fn truncate(&self, min_order: i64, max_order: i64) -> Result<LaurentMR> {
        if min_order < self.min_order || max_order > self.max_order() {
            return Err(Error::internal(format!(
                "truncate [{min_order},{max_order}] exceeds window [{},{}]",
                self.min_order,
                self.max_order()
            )));
        }
        let lo = (min_order - self.min_order) as usize;
        let hi = (max_order - self.min_order) as usize;
        Ok(LaurentMR {
            min_order,
            coeffs: self.coeffs[lo..=hi].to_vec(),
        })
    }

    pub fn add(&self, other: &LaurentMR) -> LaurentMR {
        let min = self.min_order.min(other.min_order);
        let max = self.max_order().min(other.max_order());
        let mut out = LaurentMR::zero_window(min, max.max(min));
        for k in min..=max {
            let mut c = MRat::zero();
            if k >= self.min_order && k <= self.max_order() {
                c = c.add(&self.coeffs[(k - self.min_order) as usize]);
            }
            if k >= other.min_order && k <= other.max_order() {
                c = c.add(&other.coeffs[(k - other.min_order) as usize]);
            }
            out.coeffs[(k - min) as usize] = c;
        }
        out
    }

    pub fn neg(&self) -> LaurentMR {
        LaurentMR {
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &MRat) -> LaurentMR {
        LaurentMR {
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentMR) -> LaurentMR {
        // Valid window of the product: the output order k is exact when every
        // contributing pair is inside both windows, i.e. up to
        // min(self.max + other.min, other.max + self.min).
        let min = self.min_order + other.min_order;
        let max = (self.max_order() + other.min_order).min(other.max_order() + self.min_order);
        let n = (max - min + 1).max(0) as usize;
        let prod = ps_mul(&self.coeffs, &other.coeffs, n);
        LaurentMR {
            min_order: min,
            coeffs: prod,
        }
    }

    pub fn recip(&self) -> Result<LaurentMR> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::internal("inverting a series that is zero on its window"))?;
        let shift = (v - self.min_order) as usize;
        let unit: Vec<MRat> = self.coeffs[shift..].to_vec();
        let n = unit.len();
        let inv = ps_inv(&unit, n)?;
        Ok(LaurentMR {
            min_order: -v,
            coeffs: inv,
        })
    }

    /// Substitutes `t -> s(t)` where `s` is a power series with `s(0)=0` and
    /// invertible linear term, given by `inner` (index = power, inner[0]
    /// corresponds to t^1).
    pub fn compose(&self, inner: &[MRat]) -> Result<LaurentMR> {
        if inner.is_empty() || inner[0].is_zero() {
            return Err(Error::internal(
                "composition requires an inner series with nonzero linear term",
            ));
        }
        let n = self.coeffs.len();
        if n == 0 {
            return Ok(self.clone());
        }
        if inner.len() < n {
            return Err(Error::internal(format!(
                "inner series has {} coefficients, composition window needs {}",
                inner.len(),
                n
            )));
        }
        // u = s/t as a unit power series of length n.
        let u: Vec<MRat> = inner.iter().take(n).cloned().collect();
        let m = self.min_order;
        // w = u^m (integer power, possibly negative).
        let mut w = if m >= 0 {
            ps_pow(&u, m as u32, n)
        } else {
            let ui = ps_inv(&u, n)?;
            ps_pow(&ui, (-m) as u32, n)
        };
        let mut out = vec![MRat::zero(); n];
        for (j, fj) in self.coeffs.iter().enumerate() {
            if !fj.is_zero() {
                // contribution f_j t^{m+j} w(t), aligned at min_order m.
                for (k, wk) in w.iter().enumerate() {
                    if j + k >= n {
                        break;
                    }
                    if !wk.is_zero() {
                        out[j + k] = out[j + k].add(&fj.mul(wk));
                    }
                }
            }
            if j + 1 < n {
                w = ps_mul(&w, &u, n);
            }
        }
        Ok(LaurentMR {
            min_order: m,
            coeffs: out,
        })
    }

    /// Derivative with respect to the local parameter.
    pub fn derivative(&self) -> LaurentMR {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.min_order + i as i64;
            coeffs.push(c.scale(&Rat::from_integer(k.into())));
        }
        // d/dt t^k = k t^{k-1}; window shifts down by one and the top
        // coefficient is still exact.
        LaurentMR {
            min_order: self.min_order - 1,
            coeffs,
        }
    }

    /// All coefficients in the window are zero.
    pub fn is_zero_window(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Expands a rational function in `var` at `var = center + t`, exact on the
/// window `[val, max_order]` where `val` is the true valuation. `center` must
/// not involve `var`.
pub fn laurent_at(f: &MRat, var: Sym, center: &MRat, max_order: i64) -> Result<LaurentMR> {
    assert!(!center.depends_on(var), "expansion center depends on the variable");
    if f.is_zero() {
        return Ok(LaurentMR::zero_window(0, max_order.max(0)));
    }
    let t = symbol::aux_t();
    assert!(!f.depends_on(t) && !center.depends_on(t), "aux symbol collision");
    let mut bind = BTreeMap::new();
    bind.insert(var, center.add(&MRat::var(t)));
    let g = f.substitute(&bind)?;
    // g = N(t) / (t^K * prod U_i(t)^{e_i}) with U_i units at t=0.
    let mut k_t: i64 = 0;
    let mut units: Vec<(Vec<MRat>, u32)> = Vec::new();
    for (fac, e) in g.den_factors() {
        if fac == &MPoly::var(t) {
            k_t += e as i64;
            continue;
        }
        let dense = mrat_coeffs_in(&MRat::from_poly(fac.clone()), t);
        debug_assert!(!dense[0].is_zero(), "denominator factor not a unit at t=0");
        units.push((dense, e));
    }
    let num_dense = mrat_coeffs_in(&MRat::from_poly(g.num().clone()), t);
    let v_num = num_dense
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero numerator") as i64;
    let min_order = v_num - k_t;
    if max_order < min_order {
        // Exact zero on the requested window.
        return Ok(LaurentMR::zero_window(max_order.min(min_order), max_order));
    }
    let n = (max_order - min_order + 1) as usize;
    let mut series: Vec<MRat> = num_dense[v_num as usize..]
        .iter()
        .take(n)
        .cloned()
        .collect();
    series.resize(n, MRat::zero());
    for (u, e) in units {
        let inv = ps_inv(&u, n)?;
        let inv_pow = ps_pow(&inv, e, n);
        series = ps_mul(&series, &inv_pow, n);
    }
    Ok(LaurentMR {
        min_order,
        coeffs: series,
    })
}

/// Dense coefficients of an MRat viewed as polynomial in `s` (must be
/// polynomial in `s`, i.e. `s` does not occur in the denominator).
pub fn mrat_coeffs_in(f: &MRat, s: Sym) -> Vec<MRat> {
    let den = f.den_expanded();
    assert!(!den.depends_on(s), "mrat_coeffs_in: denominator depends on the variable");
    let num_coeffs = f.num().coeffs_in(s);
    let den_r = MRat::from_poly(den);
    num_coeffs
        .iter()
        .map(|c| MRat::from_poly(c.clone()).div(&den_r).expect("den nonzero"))
        .collect()
}

// ---------------------------------------------------------------------------
// Univariate Laurent data with rational coefficients (public view).
// ---------------------------------------------------------------------------

/// Laurent coefficients of a univariate function at a rational point, over an
/// explicitly requested window.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentData {
    pub point: Rat,
    pub min_order: i64,
    pub max_order: i64,
    pub coeffs: Vec<Rat>,
}

impl LaurentData {
    pub fn coefficient(&self, order: i64) -> Option<&Rat> {
        if order < self.min_order || order > self.max_order {
            return None;
        }
        Some(&self.coeffs[(order - self.min_order) as usize])
    }
}

/// Exact Laurent coefficients of a univariate rational function at `z = p`
/// over the window `[min_order, max_order]`.
pub fn taylor_at(f: &MRat, var: Sym, p: &Rat, min_order: i64, max_order: i64) -> Result<LaurentData> {
    if max_order < min_order {
        return Err(Error::WindowInverted {
            min: min_order,
            max: max_order,
        });
    }
    for v in f.vars() {
        if v != var {
            return Err(Error::invalid(format!(
                "taylor_at expects a univariate function; found variable {}",
                symbol::name(v)
            )));
        }
    }
    let series = laurent_at(f, var, &MRat::constant(p.clone()), max_order)?;
    let mut coeffs = Vec::with_capacity((max_order - min_order + 1) as usize);
    for k in min_order..=max_order {
        let c = if k < series.min_order || k > series.max_order() {
            Rat::zero()
        } else {
            series
                .coefficient(k)?
                .as_constant()
                .ok_or_else(|| Error::internal("univariate expansion with nonconstant coefficient"))?
        };
        coeffs.push(c);
    }
    Ok(LaurentData {
        point: p.clone(),
        min_order,
        max_order,
        coeffs,
    })
}

// ---------------------------------------------------------------------------
// The S function: S(z) = (e^{z/2} - e^{-z/2})/z.
// ---------------------------------------------------------------------------

/// Truncated Taylor coefficients of `S(z)`; `coeffs[j]` multiplies `z^j`, with
/// `coeffs[2k] = 1/(4^k (2k+1)!)` and all odd coefficients zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SFunctionSeries {
    pub order: usize,
    pub coeffs: Vec<Rat>,
}

pub fn s_series(order: usize) -> SFunctionSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut k = 0usize;
    while 2 * k <= order {
        let four_k = pow_i(&rat(4, 1), k as u32);
        coeffs[2 * k] = (four_k * factorial(2 * k as u64 + 1)).recip();
        k += 1;
    }
    SFunctionSeries { order, coeffs }
}
