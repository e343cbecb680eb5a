//! Truncated series in the genus-counting parameter (even powers of hbar)
//! together with one or more polynomial parameters `w_i`, with rational-
//! function coefficients. All arithmetic truncates hard at the hbar cutoff;
//! `w` exponents may be as low as -1 (a single global `1/w` is the only
//! negative power the formulas produce).

use crate::mrat::MRat;
use crate::rat::{factorial, Rat};
use num::traits::One;
use std::collections::BTreeMap;

/// Series in hbar only, even slots carrying the content.
#[derive(Clone, Debug, PartialEq)]
pub struct HbarSeries {
    pub cutoff: u32,
    pub coeffs: BTreeMap<u32, MRat>,
}

impl HbarSeries {
    pub fn zero(cutoff: u32) -> Self {
        HbarSeries {
            cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_mrat(cutoff: u32, v: MRat) -> Self {
        let mut s = Self::zero(cutoff);
        s.insert(0, v);
        s
    }

    pub fn insert(&mut self, h: u32, v: MRat) {
        if h > self.cutoff || v.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(h).or_insert_with(MRat::zero);
        *slot = slot.add(&v);
        if slot.is_zero() {
            self.coeffs.remove(&h);
        }
    }

    pub fn coefficient(&self, h: u32) -> MRat {
        self.coeffs.get(&h).cloned().unwrap_or_else(MRat::zero)
    }

    pub fn add(&self, other: &HbarSeries) -> HbarSeries {
        let mut out = self.clone();
        for (&h, v) in &other.coeffs {
            out.insert(h, v.clone());
        }
        out
    }

    pub fn mul(&self, other: &HbarSeries) -> HbarSeries {
        let mut out = HbarSeries::zero(self.cutoff.min(other.cutoff));
        for (&ha, va) in &self.coeffs {
            for (&hb, vb) in &other.coeffs {
                if ha + hb > out.cutoff {
                    continue;
                }
                out.insert(ha + hb, va.mul(vb));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Series in hbar and `nw` polynomial parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct WPoly {
    pub cutoff: u32,
    pub nw: usize,
    /// (hbar exponent, w exponents) -> coefficient.
    pub terms: BTreeMap<(u32, Vec<i32>), MRat>,
}

impl WPoly {
    pub fn zero(cutoff: u32, nw: usize) -> Self {
        WPoly {
            cutoff,
            nw,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cutoff: u32, nw: usize) -> Self {
        let mut p = Self::zero(cutoff, nw);
        p.insert(0, vec![0; nw], MRat::one());
        p
    }

    pub fn monomial(cutoff: u32, nw: usize, h: u32, wexp: Vec<i32>, c: MRat) -> Self {
        let mut p = Self::zero(cutoff, nw);
        p.insert(h, wexp, c);
        p
    }

    pub fn insert(&mut self, h: u32, wexp: Vec<i32>, v: MRat) {
        assert_eq!(wexp.len(), self.nw);
        if h > self.cutoff || v.is_zero() {
            return;
        }
        let key = (h, wexp);
        let slot = self.terms.entry(key.clone()).or_insert_with(MRat::zero);
        *slot = slot.add(&v);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        assert_eq!(self.nw, other.nw);
        let mut out = WPoly::zero(self.cutoff.min(other.cutoff), self.nw);
        for (k, v) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(k.0, k.1.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &WPoly) -> WPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WPoly {
        WPoly {
            cutoff: self.cutoff,
            nw: self.nw,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &MRat) -> WPoly {
        if c.is_zero() {
            return WPoly::zero(self.cutoff, self.nw);
        }
        WPoly {
            cutoff: self.cutoff,
            nw: self.nw,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> WPoly {
        self.scale(&MRat::constant(c.clone()))
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        assert_eq!(self.nw, other.nw);
        let mut out = WPoly::zero(self.cutoff.min(other.cutoff), self.nw);
        for ((ha, wa), va) in &self.terms {
            for ((hb, wb), vb) in &other.terms {
                let h = ha + hb;
                if h > out.cutoff {
                    continue;
                }
                let w: Vec<i32> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
                out.insert(h, w, va.mul(vb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, dh: u32, dw: &[i32], c: &MRat) -> WPoly {
        assert_eq!(dw.len(), self.nw);
        let mut out = WPoly::zero(self.cutoff, self.nw);
        for ((h, w), v) in &self.terms {
            let nh = h + dh;
            if nh > out.cutoff {
                continue;
            }
            let nw: Vec<i32> = w.iter().zip(dw).map(|(x, y)| x + y).collect();
            out.insert(nh, nw, v.mul(c));
        }
        out
    }

    /// Truncated exponential. Every term of the argument must carry a strictly
    /// positive hbar power, which makes the sum finite at the cutoff.
    pub fn exp(&self) -> WPoly {
        for ((h, _), v) in &self.terms {
            assert!(
                *h >= 2 || v.is_zero(),
                "exp argument has an hbar^{} term; not nilpotent at the cutoff",
                h
            );
        }
        let mut out = WPoly::one(self.cutoff, self.nw);
        let mut power = WPoly::one(self.cutoff, self.nw);
        let jmax = self.cutoff / 2;
        for j in 1..=jmax {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale_rat(&factorial(j as u64).recip()));
        }
        out
    }

    /// Coefficient of `w_i^k`: same arity, with slot `i` zeroed in the result.
    pub fn coeff_w(&self, i: usize, k: i32) -> WPoly {
        let mut out = WPoly::zero(self.cutoff, self.nw);
        for ((h, w), v) in &self.terms {
            if w[i] != k {
                continue;
            }
            let mut nw = w.clone();
            nw[i] = 0;
            out.insert(*h, nw, v.clone());
        }
        out
    }

    /// Coefficient of `hbar^h`, still graded by the w's.
    pub fn coeff_hbar(&self, h: u32) -> WPoly {
        let mut out = WPoly::zero(self.cutoff, self.nw);
        for ((hh, w), v) in &self.terms {
            if *hh == h {
                out.insert(0, w.clone(), v.clone());
            }
        }
        out
    }

    /// The (0, [0,...]) slot.
    pub fn constant_term(&self) -> MRat {
        self.terms
            .get(&(0, vec![0; self.nw]))
            .cloned()
            .unwrap_or_else(MRat::zero)
    }

    /// As a plain MRat; requires that no hbar or w powers remain.
    pub fn into_scalar(&self) -> MRat {
        for ((h, w), v) in &self.terms {
            assert!(
                (*h == 0 && w.iter().all(|&x| x == 0)) || v.is_zero(),
                "into_scalar on a series with residual grading"
            );
        }
        self.constant_term()
    }

    /// Occurring exponents of `w_i` (sorted, deduplicated).
    pub fn w_exponents(&self, i: usize) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|(_, w)| w[i]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn map_coeffs<F: Fn(&MRat) -> MRat>(&self, f: F) -> WPoly {
        let mut out = WPoly::zero(self.cutoff, self.nw);
        for ((h, w), v) in &self.terms {
            out.insert(*h, w.clone(), f(v));
        }
        out
    }

    /// Divides by `hbar^k`; every term must carry at least `hbar^k`.
    pub fn shift_hbar_down(&self, k: u32) -> WPoly {
        let mut out = WPoly::zero(self.cutoff, self.nw);
        for ((h, w), v) in &self.terms {
            assert!(*h >= k, "shift_hbar_down on a term with hbar^{h}");
            out.insert(h - k, w.clone(), v.clone());
        }
        out
    }

    /// Widens the parameter arity, placing existing exponents at `offset`.
    pub fn widen(&self, nw: usize, offset: usize) -> WPoly {
        assert!(offset + self.nw <= nw);
        let mut out = WPoly::zero(self.cutoff, nw);
        for ((h, w), v) in &self.terms {
            let mut nwv = vec![0i32; nw];
            nwv[offset..offset + self.nw].copy_from_slice(w);
            out.insert(*h, nwv, v.clone());
        }
        out
    }
}

/// Generalized binomial coefficient `a (a-1) ... (a-j+1) / j!`.
pub fn gen_binomial(a: &Rat, j: u64) -> Rat {
    let mut num = Rat::one();
    for i in 0..j {
        num *= a - Rat::from_integer(i.into());
    }
    num / factorial(j)
}
