//! Multivariate rational functions over the rationals.
//!
//! Internally the denominator is kept as a multiset of primitive factors with
//! positive leading coefficient (lex order). New factors are split eagerly
//! into monomials, linear differences of variables, and rational linear
//! factors, which makes cancellation against the numerator a sequence of
//! exact-division probes rather than a general gcd. For values in at most two
//! variables a full gcd reduction runs on every operation; above that the
//! factor cancellation is the (opportunistic) reduction, and equality testing
//! goes through cross-multiplication, which needs no canonical gcd form.

use crate::error::{Error, Result};
use crate::pfrac::{gcd_poly, rational_roots};
use crate::poly::MPoly;
use crate::rat::{pow_i, Rat};
use crate::symbol::{self, Sym};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub struct MRat {
    num: MPoly,
    den: BTreeMap<MPoly, u32>,
}

impl MRat {
    pub fn zero() -> Self {
        MRat {
            num: MPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MRat {
            num: MPoly::one(),
            den: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        MRat {
            num: MPoly::constant(c),
            den: BTreeMap::new(),
        }
    }

    pub fn var(s: Sym) -> Self {
        MRat {
            num: MPoly::var(s),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        MRat {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn from_num_den(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = MRat {
            num,
            den: BTreeMap::new(),
        };
        r.insert_den_factor(den, 1);
        r.normalize();
        Ok(r)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&MPoly, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn den_expanded(&self) -> MPoly {
        let mut d = MPoly::one();
        for (f, &e) in &self.den {
            d = d.mul(&f.pow(e));
        }
        d
    }

    pub fn vars(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.num.vars().to_vec();
        for f in self.den.keys() {
            v.extend_from_slice(f.vars());
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn depends_on(&self, s: Sym) -> bool {
        self.num.depends_on(s) || self.den.keys().any(|f| f.depends_on(s))
    }

    /// Splits and registers a denominator factor. Monomial parts, differences
    /// of two variables, and rational linear factors of univariate pieces are
    /// peeled off so later cancellation can act on them independently.
    fn insert_den_factor(&mut self, f: MPoly, mult: u32) {
        if mult == 0 {
            return;
        }
        assert!(!f.is_zero(), "zero denominator factor");
        if let Some(c) = f.as_constant() {
            self.num = self.num.scale(&pow_i(&c.recip(), mult));
            return;
        }
        let content = f.unit_content();
        if !content.is_one() {
            self.num = self.num.scale(&pow_i(&content.recip(), mult));
        }
        let mut f = f.primitive();
        // Per-variable monomial content.
        let vars: Vec<Sym> = f.vars().to_vec();
        for &v in &vars {
            if !f.depends_on(v) {
                continue;
            }
            let idx = f.vars().binary_search(&v).unwrap();
            let k = f.terms().map(|(e, _)| e[idx]).min().unwrap_or(0);
            if k > 0 {
                let divisor = MPoly::var(v).pow(k);
                f = f.div_exact(&divisor).expect("monomial content divides");
                *self.den.entry(MPoly::var(v)).or_insert(0) += k * mult;
            }
        }
        if f.is_constant() {
            let c = f.as_constant().unwrap();
            if !c.is_one() {
                self.num = self.num.scale(&pow_i(&c.recip(), mult));
            }
            return;
        }
        // Linear differences of variables.
        let vars: Vec<Sym> = f.vars().to_vec();
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                let d = MPoly::var(vars[i]).sub(&MPoly::var(vars[j]));
                while let Some(q) = f.div_exact(&d) {
                    f = q;
                    *self.den.entry(d.clone()).or_insert(0) += mult;
                    if f.is_constant() {
                        break;
                    }
                }
            }
        }
        if f.is_constant() {
            let c = f.as_constant().unwrap();
            if !c.is_one() {
                self.num = self.num.scale(&pow_i(&c.recip(), mult));
            }
            return;
        }
        // Products of factors in disjoint variables split off as per-variable
        // contents (gcd of the coefficient polynomials).
        if f.vars().len() >= 2 {
            let vars: Vec<Sym> = f.vars().to_vec();
            for v in vars {
                let content = crate::pfrac::content_wrt(&f, v);
                if !content.is_constant() {
                    let rest = f.div_exact(&content).expect("content divides");
                    self.insert_den_factor(content, mult);
                    self.insert_den_factor(rest, mult);
                    return;
                }
            }
        }
        // Rational linear factors of univariate pieces (guarded by coefficient size).
        if f.vars().len() == 1 && f.degree_in(f.vars()[0]) > 1 {
            let s = f.vars()[0];
            let dense = f.univariate_coeffs(s).expect("univariate");
            let bound = BigInt::from(u64::MAX);
            let small = dense.first().map(|c| c.numer().abs() < bound).unwrap_or(true)
                && dense.last().map(|c| c.numer().abs() < bound).unwrap_or(true);
            if small {
                let (roots, _) = rational_roots(&dense);
                for (r, k) in &roots {
                    let lin = linear_root_factor(s, r);
                    for _ in 0..*k {
                        f = f.div_exact(&lin).expect("root factor divides");
                    }
                    *self.den.entry(lin).or_insert(0) += k * mult;
                }
                if !roots.is_empty() {
                    // Exact division of integer-primitive polynomials leaves a
                    // primitive quotient up to a rational unit; renormalize.
                    if f.is_constant() {
                        let c = f.as_constant().unwrap();
                        if !c.is_one() {
                            self.num = self.num.scale(&pow_i(&c.recip(), mult));
                        }
                        return;
                    }
                    let c = f.unit_content();
                    if !c.is_one() {
                        self.num = self.num.scale(&pow_i(&c.recip(), mult));
                        f = f.primitive();
                    }
                }
            }
        }
        *self.den.entry(f).or_insert(0) += mult;
    }

    /// Cancels denominator factors dividing the numerator, then (for at most
    /// two variables) runs the full gcd reduction.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<MPoly> = self.den.keys().cloned().collect();
        for f in factors {
            while let Some(&e) = self.den.get(&f) {
                if e == 0 {
                    self.den.remove(&f);
                    break;
                }
                // Cheap modular proof of indivisibility before the real try.
                if !self.num.divisible_precheck(&f) {
                    break;
                }
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        if e == 1 {
                            self.den.remove(&f);
                            break;
                        } else {
                            self.den.insert(f.clone(), e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        if self.vars().len() <= 2 {
            self.reduce_gcd();
        }
    }

    /// Full gcd reduction against each denominator factor, run to a fixpoint.
    /// Each pass strictly lowers the numerator degree, so it terminates.
    fn reduce_gcd(&mut self) {
        loop {
            let mut action: Option<(MPoly, u32, MPoly)> = None;
            for (f, &e) in &self.den {
                let g = gcd_poly(&self.num, f);
                if !g.is_constant() {
                    action = Some((f.clone(), e, g));
                    break;
                }
            }
            let Some((f, e, g)) = action else { break };
            // f^e = g^e (f/g)^e; one copy of g cancels into the numerator.
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            let reduced = f.div_exact(&g).expect("gcd divides factor");
            self.den.remove(&f);
            if e > 1 {
                self.insert_den_factor(g, e - 1);
            }
            if !reduced.is_constant() {
                self.insert_den_factor(reduced, e);
            } else {
                let c = reduced.as_constant().unwrap();
                if !c.is_one() {
                    self.num = self.num.scale(&pow_i(&c.recip(), e));
                }
            }
            if self.num.is_zero() {
                self.den.clear();
                return;
            }
        }
    }

    pub fn neg(&self) -> MRat {
        MRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &MRat) -> MRat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: union with max exponents.
        let mut den: BTreeMap<MPoly, u32> = self.den.clone();
        for (f, &e) in &other.den {
            let cur = den.entry(f.clone()).or_insert(0);
            *cur = (*cur).max(e);
        }
        let mut na = self.num.clone();
        let mut nb = other.num.clone();
        for (f, &e) in &den {
            let ea = self.den.get(f).copied().unwrap_or(0);
            let eb = other.den.get(f).copied().unwrap_or(0);
            if e > ea {
                na = na.mul(&f.pow(e - ea));
            }
            if e > eb {
                nb = nb.mul(&f.pow(e - eb));
            }
        }
        let mut r = MRat {
            num: na.add(&nb),
            den,
        };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &MRat) -> MRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MRat) -> MRat {
        if self.is_zero() || other.is_zero() {
            return MRat::zero();
        }
        let mut den = self.den.clone();
        for (f, &e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut r = MRat {
            num: self.num.mul(&other.num),
            den,
        };
        r.normalize();
        r
    }

    pub fn scale(&self, c: &Rat) -> MRat {
        MRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<MRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = MRat {
            num: self.den_expanded(),
            den: BTreeMap::new(),
        };
        r.insert_den_factor(self.num.clone(), 1);
        r.normalize();
        Ok(r)
    }

    pub fn div(&self, other: &MRat) -> Result<MRat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MRat::zero());
        }
        let mut den = self.den.clone();
        let mut num = self.num.clone();
        for (f, &e) in &other.den {
            num = num.mul(&f.pow(e));
        }
        let mut r = MRat {
            num,
            den: BTreeMap::new(),
        };
        r.den = std::mem::take(&mut den);
        r.insert_den_factor(other.num.clone(), 1);
        r.normalize();
        Ok(r)
    }

    pub fn pow_int(&self, n: u32) -> MRat {
        let mut acc = MRat::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact partial derivative with respect to `s`.
    pub fn diff(&self, s: Sym) -> MRat {
        if !self.depends_on(s) {
            return MRat::zero();
        }
        // f = N / prod f_i^{e_i};
        // f' = [N' prod f_i - N sum e_i f_i' prod_{j != i} f_j] / prod f_i^{e_i+1}
        let dn = self.num.derivative(s);
        let factors: Vec<(&MPoly, u32)> = self.den.iter().map(|(f, &e)| (f, e)).collect();
        let prod_all = {
            let mut p = MPoly::one();
            for (f, _) in &factors {
                p = p.mul(f);
            }
            p
        };
        let mut numerator = dn.mul(&prod_all);
        for i in 0..factors.len() {
            let (fi, ei) = factors[i];
            let dfi = fi.derivative(s);
            if dfi.is_zero() {
                continue;
            }
            let mut rest = MPoly::one();
            for (j, (fj, _)) in factors.iter().enumerate() {
                if j != i {
                    rest = rest.mul(fj);
                }
            }
            numerator = numerator.sub(
                &self
                    .num
                    .mul(&dfi)
                    .mul(&rest)
                    .scale(&Rat::from_integer(ei.into())),
            );
        }
        let mut r = MRat {
            num: numerator,
            den: BTreeMap::new(),
        };
        for (f, e) in factors {
            r.insert_den_factor(f.clone(), e + 1);
        }
        r.normalize();
        r
    }

    /// Simultaneous substitution of symbols by rational functions. Errors when
    /// a denominator factor vanishes identically under the binding.
    pub fn substitute(&self, bindings: &BTreeMap<Sym, MRat>) -> Result<MRat> {
        if !self.vars().iter().any(|v| bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let num_sub = substitute_poly_mrat(&self.num, bindings);
        let mut acc = num_sub;
        for (f, &e) in &self.den {
            let fs = substitute_poly_mrat(f, bindings);
            if fs.is_zero() {
                let names: Vec<String> = bindings
                    .keys()
                    .filter(|s| f.depends_on(**s))
                    .map(|s| symbol::name(*s))
                    .collect();
                return Err(Error::DenominatorVanishes {
                    binding: names.join(", "),
                });
            }
            acc = acc.div(&fs.pow_int(e))?;
        }
        Ok(acc)
    }

    /// Substitution where every binding is polynomial (cheaper, same checks).
    pub fn substitute_poly(&self, bindings: &BTreeMap<Sym, MPoly>) -> Result<MRat> {
        if !self.vars().iter().any(|v| bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let num = self.num.substitute(bindings);
        let mut r = MRat {
            num,
            den: BTreeMap::new(),
        };
        for (f, &e) in &self.den {
            let fs = f.substitute(bindings);
            if fs.is_zero() {
                let names: Vec<String> = bindings
                    .keys()
                    .filter(|s| f.depends_on(**s))
                    .map(|s| symbol::name(*s))
                    .collect();
                return Err(Error::DenominatorVanishes {
                    binding: names.join(", "),
                });
            }
            r.insert_den_factor(fs, e);
        }
        r.normalize();
        Ok(r)
    }

    /// Simultaneous injective renaming; cheap column remap throughout.
    pub fn rename(&self, map: &BTreeMap<Sym, Sym>) -> MRat {
        if !self.vars().iter().any(|v| map.contains_key(v)) {
            return self.clone();
        }
        let mut r = MRat {
            num: self.num.rename(map),
            den: BTreeMap::new(),
        };
        for (f, &e) in &self.den {
            let rf = f.rename(map);
            assert!(!rf.is_zero(), "rename collapsed a denominator factor");
            // Renaming may flip the lex-leading sign; restore primitivity.
            let c = rf.unit_content();
            let rf = if c.is_one() {
                rf
            } else {
                r.num = r.num.scale(&pow_i(&c.recip(), e));
                rf.primitive()
            };
            *r.den.entry(rf).or_insert(0) += e;
        }
        r
    }

    pub fn eval(&self, bindings: &BTreeMap<Sym, Rat>) -> Result<Rat> {
        let n = self.num.eval(bindings)?;
        let mut d = Rat::one();
        for (f, &e) in &self.den {
            let fv = f.eval(bindings)?;
            if fv.is_zero() {
                return Err(Error::DenominatorVanishes {
                    binding: "numeric evaluation".into(),
                });
            }
            d *= pow_i(&fv, e);
        }
        Ok(n / d)
    }

    /// Dense numerator/denominator coefficients for a function of one variable.
    pub fn univariate_dense(&self, s: Sym) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let num = self.num.univariate_coeffs(s)?;
        let den = self.den_expanded().univariate_coeffs(s)?;
        Ok((num, den))
    }

    /// Multiplicity of the denominator factor vanishing at `z = p`
    /// (`factor` in integer-primitive form) minus cancellation by numerator
    /// handled in `normalize`, so this is the true pole order bound.
    pub fn den_multiplicity(&self, factor: &MPoly) -> u32 {
        self.den.get(factor).copied().unwrap_or(0)
    }
}

/// Substitutes MRat values into a polynomial.
fn substitute_poly_mrat(p: &MPoly, bindings: &BTreeMap<Sym, MRat>) -> MRat {
    if !p.vars().iter().any(|v| bindings.contains_key(v)) {
        return MRat::from_poly(p.clone());
    }
    // Cache powers per variable to keep cost linear in the degree.
    let mut pow_cache: BTreeMap<(Sym, u32), MRat> = BTreeMap::new();
    let mut acc = MRat::zero();
    let vars = p.vars().to_vec();
    for (e, c) in p.terms() {
        let mut term = MRat::constant(c.clone());
        for (i, &v) in vars.iter().enumerate() {
            if e[i] == 0 {
                continue;
            }
            let base = match bindings.get(&v) {
                Some(r) => r.clone(),
                None => MRat::var(v),
            };
            let key = (v, e[i]);
            let powed = pow_cache
                .entry(key)
                .or_insert_with(|| base.pow_int(e[i]))
                .clone();
            term = term.mul(&powed);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Integer-primitive representative of `(a - b)` with positive leading term.
pub fn linear_diff_factor(a: Sym, b: Sym) -> MPoly {
    MPoly::var(a).sub(&MPoly::var(b)).primitive()
}

/// Integer-primitive representative of `(z - p)` for rational `p`.
pub fn linear_root_factor(z: Sym, p: &Rat) -> MPoly {
    MPoly::var(z)
        .scale(&Rat::from_integer(p.denom().clone()))
        .sub(&MPoly::constant(Rat::from_integer(p.numer().clone())))
        .primitive()
}

impl PartialEq for MRat {
    fn eq(&self, other: &Self) -> bool {
        // num_a * den_b - num_b * den_a expands to zero.
        self.num
            .mul(&other.den_expanded())
            .sub(&other.num.mul(&self.den_expanded()))
            .is_zero()
    }
}

impl Eq for MRat {}

impl fmt::Display for MRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let mut den_str = String::new();
        for (fac, &e) in &self.den {
            if !den_str.is_empty() {
                den_str.push_str(" * ");
            }
            if e == 1 {
                den_str.push_str(&format!("({})", fac));
            } else {
                den_str.push_str(&format!("({})^{}", fac, e));
            }
        }
        write!(f, "({}) / ({})", self.num, den_str)
    }
}

#[derive(Serialize, Deserialize)]
struct MRatRepr {
    num: MPoly,
    den: MPoly,
}

impl Serialize for MRat {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MRatRepr {
            num: self.num.clone(),
            den: self.den_expanded(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MRat {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = MRatRepr::deserialize(de)?;
        MRat::from_num_den(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn z(i: usize) -> MRat {
        MRat::var(symbol::slot(i))
    }

    #[test]
    fn mrat_arith_spec_examples() {
        // 1/(z-1) + 1/(z+1) = 2z/(z^2-1)
        let a = MRat::one().div(&z(0).sub(&MRat::one())).unwrap();
        let b = MRat::one().div(&z(0).add(&MRat::one())).unwrap();
        let sum = a.add(&b);
        let expect = z(0)
            .scale(&rat_i(2))
            .div(&z(0).mul(&z(0)).sub(&MRat::one()))
            .unwrap();
        assert_eq!(sum, expect);

        // f * 1 = f
        let f = z(0).add(&z(1)).div(&z(0).sub(&z(1))).unwrap();
        assert_eq!(f.mul(&MRat::one()), f);

        // (z1 z2)/(z1 - z2) / z1 = z2/(z1-z2)
        let g = z(0).mul(&z(1)).div(&z(0).sub(&z(1))).unwrap();
        let h = g.div(&z(0)).unwrap();
        assert_eq!(h, z(1).div(&z(0).sub(&z(1))).unwrap());

        // division by zero errors
        assert!(matches!(f.div(&MRat::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_form_invariants() {
        // den expanded is primitive with positive leading coefficient
        let f = MRat::from_num_den(
            MPoly::constant(rat_i(3)),
            MPoly::var(symbol::slot(0))
                .scale(&rat_i(-2))
                .add(&MPoly::constant(rat_i(4))),
        )
        .unwrap();
        let d = f.den_expanded();
        assert_eq!(d.unit_content(), rat_i(1));
        // -3 / (2z - 4): leading positive
        assert_eq!(
            f,
            MRat::constant(rat(-3, 2))
                .div(&z(0).sub(&MRat::constant(rat_i(2))))
                .unwrap()
        );
    }

    #[test]
    fn mrat_diff_spec_examples() {
        // d/dz (1/z) = -1/z^2
        let f = MRat::one().div(&z(0)).unwrap();
        let df = f.diff(symbol::slot(0));
        let expect = MRat::constant(rat_i(-1)).div(&z(0).pow_int(2)).unwrap();
        assert_eq!(df, expect);

        // d/dz1 of a function of z2 only = 0
        let g = MRat::one().div(&z(1)).unwrap();
        assert!(g.diff(symbol::slot(0)).is_zero());

        // second derivative of 1/theta is 2/theta^3
        let th = MRat::var(symbol::theta());
        let f = MRat::one().div(&th).unwrap();
        let d2 = f.diff(symbol::theta()).diff(symbol::theta());
        assert_eq!(d2, MRat::constant(rat_i(2)).div(&th.pow_int(3)).unwrap());
    }

    #[test]
    fn substitute_spec_examples() {
        // f(z1,z2)=1/(z1-z2), z2 -> w gives 1/(z1-w)
        let f = MRat::one().div(&z(0).sub(&z(1))).unwrap();
        let w = symbol::intern("w");
        let mut b = BTreeMap::new();
        b.insert(symbol::slot(1), MRat::var(w));
        let g = f.substitute(&b).unwrap();
        assert_eq!(g, MRat::one().div(&z(0).sub(&MRat::var(w))).unwrap());

        // z2 -> z1 on 1/(z1-z2) must error (pole on diagonal)
        let mut bd = BTreeMap::new();
        bd.insert(symbol::slot(1), z(0));
        assert!(matches!(
            f.substitute(&bd),
            Err(Error::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn diagonal_cancellation_through_factored_den() {
        // (x(a)-x(b)) with x = z + 1/z factors as (a-b)(ab-1)/(ab);
        // the regularized combination must cancel its diagonal pole exactly.
        let a = symbol::slot(0);
        let b = symbol::slot(1);
        let x = |s: Sym| {
            MRat::var(s)
                .add(&MRat::one().div(&MRat::var(s)).unwrap())
        };
        let xa = x(a);
        let xb = x(b);
        let diff = xa.sub(&xb);
        let one_over_sq = MRat::one().div(&diff.pow_int(2)).unwrap();
        // denominator factors include (a-b)^2 split out
        assert!(one_over_sq.den_multiplicity(&linear_diff_factor(a, b)) == 2);
        // B-like combination: 1/(a-b)^2 - x'(a)x'(b)/(x(a)-x(b))^2 is regular
        // on the diagonal.
        let bker = MRat::one()
            .div(&MRat::var(a).sub(&MRat::var(b)).pow_int(2))
            .unwrap();
        let xp = |s: Sym| MRat::one().sub(&MRat::one().div(&MRat::var(s).pow_int(2)).unwrap());
        let reg = bker.sub(&xp(a).mul(&xp(b)).mul(&one_over_sq));
        assert_eq!(reg.den_multiplicity(&linear_diff_factor(a, b)), 0);
    }

    #[test]
    fn serde_round_trip_exact() {
        let f = z(0)
            .add(&z(1).scale(&rat(3, 7)))
            .div(&z(0).sub(&z(1)).pow_int(2))
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: MRat = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(s, serde_json::to_string(&g).unwrap());
    }
}
