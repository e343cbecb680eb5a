//! Sparse multivariate polynomials over the rationals.
//!
//! Each polynomial carries its own ordered list of symbols; arithmetic unifies
//! the variable sets on the fly. Terms map exponent vectors (aligned with the
//! variable list) to nonzero rational coefficients. The monomial order is lex
//! on the exponent vector, which is the natural order of the underlying map.

use crate::error::{Error, Result};
use crate::rat::{rat_from_string, rat_to_string, Rat};
use crate::symbol::{self, Sym};
use num::traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MPoly {
    /// Strictly increasing symbol ids.
    vars: Vec<Sym>,
    /// Exponent vector (len == vars.len()) -> nonzero coefficient.
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var(s: Sym) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rat::one());
        MPoly {
            vars: vec![s],
            terms,
        }
    }

    /// Builds from raw parts, dropping zero coefficients and unused variables.
    pub fn from_terms(vars: Vec<Sym>, terms: BTreeMap<Vec<u32>, Rat>) -> Self {
        let mut p = MPoly { vars, terms };
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn vars(&self) -> &[Sym] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn depends_on(&self, s: Sym) -> bool {
        match self.vars.binary_search(&s) {
            Err(_) => false,
            Ok(i) => self.terms.keys().any(|e| e[i] > 0),
        }
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        match self.vars.binary_search(&s) {
            Err(_) => 0,
            Ok(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        // Prune variables that no term uses.
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let new_vars: Vec<Sym> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(&v, _)| v)
            .collect();
        let terms = std::mem::take(&mut self.terms);
        self.terms = terms
            .into_iter()
            .map(|(e, c)| {
                let ne: Vec<u32> = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&x, _)| x)
                    .collect();
                (ne, c)
            })
            .collect();
        self.vars = new_vars;
    }

    /// Re-expresses the terms over a superset of the variables.
    fn embed(&self, all: &[Sym]) -> BTreeMap<Vec<u32>, Rat> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| all.binary_search(v).expect("embed: missing var"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; all.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[pos[i]] = x;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn united_vars(a: &MPoly, b: &MPoly) -> Vec<Sym> {
        let mut all: Vec<Sym> = a.vars.iter().chain(b.vars.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let all = Self::united_vars(self, other);
        let mut terms = self.embed(&all);
        for (e, c) in other.embed(&all) {
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        MPoly::from_terms(all, terms)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let all = Self::united_vars(self, other);
        let ta = self.embed(&all);
        let tb = other.embed(&all);
        // Sort-merge accumulation beats per-term map insertion on the large
        // numerators the graph sums produce.
        let mut raw: Vec<(Vec<u32>, Rat)> = Vec::with_capacity(ta.len() * tb.len());
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                raw.push((e, ca * cb));
            }
        }
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        let mut cur: Option<(Vec<u32>, Rat)> = None;
        for (e, c) in raw {
            match &mut cur {
                Some((ce, cc)) if *ce == e => {
                    *cc += c;
                }
                _ => {
                    if let Some((ce, cc)) = cur.take() {
                        if !cc.is_zero() {
                            terms.insert(ce, cc);
                        }
                    }
                    cur = Some((e, c));
                }
            }
        }
        if let Some((ce, cc)) = cur.take() {
            if !cc.is_zero() {
                terms.insert(ce, cc);
            }
        }
        MPoly::from_terms(all, terms)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
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

    /// Leading term under lex order: (exponents over `self.vars`, coefficient).
    pub fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Rational content combined with the sign of the lex-leading coefficient,
    /// so that `self = unit_content() * primitive()` with a primitive part
    /// whose integer coefficients are coprime and whose leading one is positive.
    pub fn unit_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = num::BigInt::zero();
        let mut den_lcm = num::BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let c = self.unit_content();
        self.scale(&c.recip())
    }

    /// Sound fast filter for divisibility: evaluates `self` at a zero of `d`
    /// modulo a Mersenne prime. `false` proves `d` does not divide; `true` is
    /// inconclusive. Works when `d` is linear in some variable.
    pub fn divisible_precheck(&self, d: &MPoly) -> bool {
        match modp::zero_point(d) {
            None => true,
            Some(point) => match modp::eval(self, &point) {
                None => true,
                Some(v) => v == 0,
            },
        }
    }

    /// Exact multivariate division. Returns `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let all = Self::united_vars(self, d);
        let mut rem = self.embed(&all);
        let dt = d.embed(&all);
        let (dlead_e, dlead_c) = dt.iter().next_back().unwrap();
        let mut quo: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        while let Some((rlead_e, rlead_c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let mut qe = Vec::with_capacity(all.len());
            for (a, b) in rlead_e.iter().zip(dlead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rlead_c / dlead_c;
            for (e, c) in &dt {
                let ne: Vec<u32> = e.iter().zip(&qe).map(|(x, y)| x + y).collect();
                let entry = rem.entry(ne).or_insert_with(Rat::zero);
                *entry -= &qc * c;
                if entry.is_zero() {
                    let key: Vec<u32> = e.iter().zip(&qe).map(|(x, y)| x + y).collect();
                    rem.remove(&key);
                }
            }
            quo.insert(qe, qc);
        }
        Some(MPoly::from_terms(all, quo))
    }

    pub fn derivative(&self, s: Sym) -> MPoly {
        let i = match self.vars.binary_search(&s) {
            Err(_) => return MPoly::zero(),
            Ok(i) => i,
        };
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            terms.insert(ne, c * Rat::from_integer(e[i].into()));
        }
        MPoly::from_terms(self.vars.clone(), terms)
    }

    /// Simultaneous polynomial substitution of symbols.
    pub fn substitute(&self, bindings: &BTreeMap<Sym, MPoly>) -> MPoly {
        if self.vars.iter().all(|v| !bindings.contains_key(v)) {
            return self.clone();
        }
        let mut pow_cache: BTreeMap<(Sym, u32), MPoly> = BTreeMap::new();
        let mut acc = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (i, &v) in self.vars.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let powed = pow_cache
                    .entry((v, e[i]))
                    .or_insert_with(|| match bindings.get(&v) {
                        Some(p) => p.pow(e[i]),
                        None => MPoly::var(v).pow(e[i]),
                    })
                    .clone();
                term = term.mul(&powed);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Renames symbols (simultaneously) by remapping exponent columns. Falls
    /// back to substitution if the renaming merges variables.
    pub fn rename(&self, map: &BTreeMap<Sym, Sym>) -> MPoly {
        if self.vars.iter().all(|v| !map.contains_key(v)) {
            return self.clone();
        }
        let new_syms: Vec<Sym> = self
            .vars
            .iter()
            .map(|v| map.get(v).copied().unwrap_or(*v))
            .collect();
        let mut sorted = new_syms.clone();
        sorted.sort_unstable();
        let collides = sorted.windows(2).any(|w| w[0] == w[1]);
        if collides {
            let bindings: BTreeMap<Sym, MPoly> =
                map.iter().map(|(&a, &b)| (a, MPoly::var(b))).collect();
            return self.substitute(&bindings);
        }
        // column permutation: position j of the new var list takes the old
        // column whose renamed symbol equals sorted[j]
        let perm: Vec<usize> = sorted
            .iter()
            .map(|s| new_syms.iter().position(|t| t == s).unwrap())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne: Vec<u32> = perm.iter().map(|&j| e[j]).collect();
                (ne, c.clone())
            })
            .collect();
        MPoly {
            vars: sorted,
            terms,
        }
    }

    /// Full evaluation; every variable must be bound.
    pub fn eval(&self, bindings: &BTreeMap<Sym, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &v) in self.vars.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let val = bindings
                    .get(&v)
                    .ok_or_else(|| Error::UnknownSymbol(symbol::name(v)))?;
                t *= crate::rat::pow_i(val, e[i]);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Views a polynomial as univariate in `s`: dense coefficient list
    /// (index = power of `s`) of polynomials in the remaining variables.
    pub fn coeffs_in(&self, s: Sym) -> Vec<MPoly> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        let i = match self.vars.binary_search(&s) {
            Err(_) => {
                if !self.is_zero() {
                    out[0] = self.clone();
                }
                return out;
            }
            Ok(i) => i,
        };
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut ne = e.clone();
            ne[i] = 0;
            let mut term = BTreeMap::new();
            term.insert(ne, c.clone());
            out[k] = out[k].add(&MPoly::from_terms(self.vars.clone(), term));
        }
        out
    }

    /// Assembles `sum_k coeffs[k] * s^k`.
    pub fn from_coeffs_in(s: Sym, coeffs: &[MPoly]) -> MPoly {
        let sv = MPoly::var(s);
        let mut acc = MPoly::zero();
        let mut p = MPoly::one();
        for c in coeffs {
            acc = acc.add(&c.mul(&p));
            p = p.mul(&sv);
        }
        acc
    }

    /// Dense univariate coefficients when the polynomial involves at most `s`.
    pub fn univariate_coeffs(&self, s: Sym) -> Result<Vec<Rat>> {
        for &v in &self.vars {
            if v != s && self.depends_on(v) {
                return Err(Error::invalid(format!(
                    "polynomial is not univariate in {}: also depends on {}",
                    symbol::name(s),
                    symbol::name(v)
                )));
            }
        }
        let cs = self.coeffs_in(s);
        cs.iter()
            .map(|c| {
                c.as_constant()
                    .ok_or_else(|| Error::internal("univariate coefficient not constant"))
            })
            .collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest lex terms first.
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&symbol::name(self.vars[i]));
                if x > 1 {
                    mono.push_str(&format!("^{}", x));
                }
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", rat_to_string(&mag), mono)?;
            }
        }
        Ok(())
    }
}

/// Modular evaluation helpers backing the divisibility precheck.
mod modp {
    use super::MPoly;
    use crate::symbol::Sym;
    use num::bigint::BigInt;
    use num::Integer;
    use std::collections::BTreeMap;

    /// 2^61 - 1.
    pub const P: u64 = 0x1FFF_FFFF_FFFF_FFFF;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn powm(mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= P;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(a: u64) -> Option<u64> {
        if a % P == 0 {
            return None;
        }
        Some(powm(a, P - 2))
    }

    fn bigint_mod(b: &BigInt) -> u64 {
        let m = b.mod_floor(&BigInt::from(P));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    /// Evaluates at the point; `None` when a coefficient denominator is
    /// divisible by the prime (inconclusive).
    pub fn eval(p: &MPoly, point: &BTreeMap<Sym, u64>) -> Option<u64> {
        let vars = p.vars().to_vec();
        let vals: Vec<u64> = vars.iter().map(|v| *point.get(v).unwrap_or(&1)).collect();
        // power tables
        let mut maxdeg = vec![0u32; vars.len()];
        for (e, _) in p.terms() {
            for (i, &x) in e.iter().enumerate() {
                maxdeg[i] = maxdeg[i].max(x);
            }
        }
        let pows: Vec<Vec<u64>> = vals
            .iter()
            .zip(&maxdeg)
            .map(|(&v, &d)| {
                let mut t = Vec::with_capacity(d as usize + 1);
                let mut acc = 1u64;
                for _ in 0..=d {
                    t.push(acc);
                    acc = mul(acc, v);
                }
                t
            })
            .collect();
        let mut total = 0u64;
        for (e, c) in p.terms() {
            let num = bigint_mod(c.numer());
            let den = inv(bigint_mod(c.denom()))?;
            let mut t = mul(num, den);
            for (i, &x) in e.iter().enumerate() {
                t = mul(t, pows[i][x as usize]);
            }
            total = (total + t) % P;
        }
        Some(total)
    }

    /// A zero of `f` modulo P, when `f` is linear in some variable.
    pub fn zero_point(f: &MPoly) -> Option<BTreeMap<Sym, u64>> {
        let vars = f.vars().to_vec();
        for &v in &vars {
            if f.degree_in(v) != 1 {
                continue;
            }
            let coeffs = f.coeffs_in(v);
            // f = coeffs[1] * v + coeffs[0]
            for salt in 0..4u64 {
                let mut point: BTreeMap<Sym, u64> = BTreeMap::new();
                for &w in &vars {
                    if w != v {
                        let val = (w.0 as u64)
                            .wrapping_mul(0x9E3779B97F4A7C15)
                            .wrapping_add(salt.wrapping_mul(0xD1B54A32D192ED03))
                            % (P - 7)
                            + 3;
                        point.insert(w, val);
                    }
                }
                let a = eval(&coeffs[1], &point)?;
                if a == 0 {
                    continue;
                }
                let b = eval(&coeffs[0], &point)?;
                let vv = mul(P - b % P, inv(a)?) % P;
                point.insert(v, vv);
                return Some(point);
            }
        }
        None
    }
}

/// Serialization uses symbol names and exact rational strings so files are
/// portable across processes.
#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = MPolyRepr {
            vars: self.vars.iter().map(|&v| symbol::name(v)).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), rat_to_string(c)))
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = MPolyRepr::deserialize(de)?;
        let vars: Vec<Sym> = repr.vars.iter().map(|n| symbol::intern(n)).collect();
        for w in vars.windows(2) {
            if w[0] >= w[1] {
                return Err(D::Error::custom("MPoly variables not strictly increasing"));
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in repr.terms {
            if e.len() != vars.len() {
                return Err(D::Error::custom("MPoly exponent arity mismatch"));
            }
            let coeff = rat_from_string(&c).map_err(D::Error::custom)?;
            terms.insert(e, coeff);
        }
        Ok(MPoly::from_terms(vars, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn z(i: usize) -> MPoly {
        MPoly::var(symbol::slot(i))
    }

    #[test]
    fn arithmetic_basics() {
        let a = z(0).add(&MPoly::one()); // z1 + 1
        let b = z(0).sub(&MPoly::one()); // z1 - 1
        let prod = a.mul(&b);
        let direct = z(0).pow(2).sub(&MPoly::one());
        assert_eq!(prod, direct);
        assert!(prod.sub(&direct).is_zero());
    }

    #[test]
    fn cross_variable_alignment() {
        let p = z(0).mul(&z(2)).add(&z(1)); // z1*z3 + z2
        assert_eq!(p.vars().len(), 3);
        assert_eq!(p.degree_in(symbol::slot(2)), 1);
        let q = p.sub(&z(1)); // z1*z3, variable z2 pruned
        assert_eq!(q.vars().len(), 2);
    }

    #[test]
    fn exact_division() {
        let a = z(0).pow(2).sub(&z(1).pow(2));
        let d = z(0).sub(&z(1));
        let q = a.div_exact(&d).unwrap();
        assert_eq!(q, z(0).add(&z(1)));
        assert!(a.div_exact(&z(0).add(&MPoly::one())).is_none());
    }

    #[test]
    fn derivative_and_substitution() {
        // d/dz1 (z1^3 z2) = 3 z1^2 z2
        let p = z(0).pow(3).mul(&z(1));
        let d = p.derivative(symbol::slot(0));
        assert_eq!(d, z(0).pow(2).mul(&z(1)).scale(&rat_i(3)));
        // substitute z2 -> z1 + 1
        let mut b = BTreeMap::new();
        b.insert(symbol::slot(1), z(0).add(&MPoly::one()));
        let s = p.substitute(&b);
        assert_eq!(s, z(0).pow(3).mul(&z(0).add(&MPoly::one())));
    }

    #[test]
    fn content_and_primitive() {
        let p = z(0).scale(&rat_i(-4)).add(&MPoly::constant(rat_i(-6)));
        let c = p.unit_content();
        assert_eq!(c, rat_i(-2));
        let pp = p.primitive();
        assert_eq!(pp, z(0).scale(&rat_i(2)).add(&MPoly::constant(rat_i(3))));
    }

    #[test]
    fn serde_round_trip() {
        let p = z(0).pow(2).mul(&z(3)).scale(&crate::rat::rat(3, 7)).sub(&MPoly::one());
        let s = serde_json::to_string(&p).unwrap();
        let q: MPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
