//! Univariate helpers: dense polynomial arithmetic over the rationals,
//! gcd computation (full for one and two variables), rational-root
//! extraction by divisor enumeration, and exact partial fractions.

use crate::error::{Error, Result};
use crate::mrat::MRat;
use crate::poly::MPoly;
use crate::rat::{bigint_sqrt, Rat};
use crate::symbol::Sym;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Dense univariate polynomials (index = power), trailing zeros trimmed.
// ---------------------------------------------------------------------------

pub fn dense_trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

pub fn dense_is_zero(v: &[Rat]) -> bool {
    v.is_empty()
}

pub fn dense_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    dense_trim(out)
}

pub fn dense_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub fn dense_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    dense_trim(out)
}

/// Quotient and remainder of dense division.
pub fn dense_div_rem(a: &[Rat], d: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!d.is_empty(), "dense division by zero");
    let mut rem = a.to_vec();
    let dd = d.len() - 1;
    let lead = d.last().unwrap().clone();
    if rem.len() <= dd {
        return (Vec::new(), dense_trim(rem));
    }
    let mut quo = vec![Rat::zero(); rem.len() - dd];
    while rem.len() > dd && !dense_is_zero(&dense_trim(rem.clone())) {
        rem = dense_trim(rem);
        if rem.len() <= dd {
            break;
        }
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &lead;
        quo[k] = c.clone();
        for (j, dc) in d.iter().enumerate() {
            let idx = k + j;
            let delta = &c * dc;
            rem[idx] -= delta;
        }
    }
    (dense_trim(quo), dense_trim(rem))
}

/// Monic gcd of two dense univariate polynomials.
pub fn dense_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = dense_trim(a.to_vec());
    let mut b = dense_trim(b.to_vec());
    while !dense_is_zero(&b) {
        let (_, r) = dense_div_rem(&a, &b);
        a = b;
        b = r;
    }
    if dense_is_zero(&a) {
        return a;
    }
    let lead = a.last().unwrap().clone();
    dense_scale(&a, &lead.recip())
}

pub fn dense_derivative(a: &[Rat]) -> Vec<Rat> {
    if a.len() <= 1 {
        return Vec::new();
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect()
}

pub fn dense_eval(a: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn dense_to_mpoly(s: Sym, a: &[Rat]) -> MPoly {
    let coeffs: Vec<MPoly> = a.iter().map(|c| MPoly::constant(c.clone())).collect();
    MPoly::from_coeffs_in(s, &coeffs)
}

// ---------------------------------------------------------------------------
// Polynomial gcd: full answer for at most two variables, trivial otherwise.
// ---------------------------------------------------------------------------

fn all_vars(a: &MPoly, b: &MPoly) -> Vec<Sym> {
    let mut v: Vec<Sym> = a.vars().iter().chain(b.vars().iter()).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// gcd of two polynomials, primitive with positive leading coefficient.
/// Complete for at most two variables; for more variables it falls back to
/// divisibility probes (returning the smaller input when it divides the other,
/// else 1), which is all the engine needs there.
pub fn gcd_poly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let vars = all_vars(a, b);
    match vars.len() {
        1 => {
            let s = vars[0];
            let da = a.univariate_coeffs(s).unwrap();
            let db = b.univariate_coeffs(s).unwrap();
            let g = dense_gcd(&da, &db);
            dense_to_mpoly(s, &g).primitive()
        }
        2 => bivariate_gcd(a, b, vars[0], vars[1]),
        _ => {
            if b.div_exact(a).is_some() {
                a.primitive()
            } else if a.div_exact(b).is_some() {
                b.primitive()
            } else {
                MPoly::one()
            }
        }
    }
}

/// Content of `p`, viewed in `main`, as a polynomial in the other variables.
pub fn content_wrt(p: &MPoly, main: Sym) -> MPoly {
    let coeffs = p.coeffs_in(main);
    let mut g = MPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd_poly(&g, &c);
        if g.is_one() {
            return g;
        }
    }
    g
}

/// Pseudo-remainder of dense coefficient vectors over MPoly coefficients.
fn pseudo_rem(a: &[MPoly], d: &[MPoly]) -> Vec<MPoly> {
    let mut rem: Vec<MPoly> = a.to_vec();
    let dd = d.len() - 1;
    let lead = d.last().unwrap().clone();
    let trim = |v: &mut Vec<MPoly>| {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    trim(&mut rem);
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c = c.mul(&lead);
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&top.mul(dc));
        }
        trim(&mut rem);
    }
    rem
}

fn bivariate_gcd(a: &MPoly, b: &MPoly, v0: Sym, v1: Sym) -> MPoly {
    // Choose the main variable as the one of lower combined degree.
    let main = if a.degree_in(v0).max(b.degree_in(v0)) <= a.degree_in(v1).max(b.degree_in(v1)) {
        v0
    } else {
        v1
    };
    let cont_a = content_wrt(a, main);
    let cont_b = content_wrt(b, main);
    let cont_g = gcd_poly(&cont_a, &cont_b);
    let pa: Vec<MPoly> = a
        .coeffs_in(main)
        .iter()
        .map(|c| c.div_exact(&cont_a).expect("content divides"))
        .collect();
    let pb: Vec<MPoly> = b
        .coeffs_in(main)
        .iter()
        .map(|c| c.div_exact(&cont_b).expect("content divides"))
        .collect();
    let primitive_part = |v: &[MPoly]| -> Vec<MPoly> {
        let p = MPoly::from_coeffs_in(main, v);
        let c = content_wrt(&p, main);
        p.coeffs_in(main)
            .iter()
            .map(|q| q.div_exact(&c).expect("content divides"))
            .collect()
    };
    let (mut p, mut q) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        if q.iter().all(|c| c.is_zero()) {
            break;
        }
        if q.len() == 1 {
            // Nontrivial constant-in-main remainder: primitive gcd is 1.
            p = vec![MPoly::one()];
            break;
        }
        let r = pseudo_rem(&p, &q);
        p = q;
        q = if r.is_empty() { r } else { primitive_part(&r) };
    }
    let g = MPoly::from_coeffs_in(main, &p).primitive();
    cont_g.mul(&g).primitive()
}

// ---------------------------------------------------------------------------
// Rational roots by divisor enumeration on the primitive part.
// ---------------------------------------------------------------------------

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            let mut e = 0u32;
            while (&m % &d).is_zero() {
                m /= &d;
                e += 1;
            }
            primes.push((d.clone(), e));
        }
        d += 1;
        if d > bigint_sqrt(&m) + 1 {
            break;
        }
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

/// All rational roots of a dense univariate polynomial, with multiplicities,
/// plus the root-free cofactor.
pub fn rational_roots(poly: &[Rat]) -> (Vec<(Rat, u32)>, Vec<Rat>) {
    let mut p = dense_trim(poly.to_vec());
    assert!(!dense_is_zero(&p), "rational_roots of zero polynomial");
    let mut roots: Vec<(Rat, u32)> = Vec::new();
    // Strip powers of the variable itself (root at 0).
    let mut zero_mult = 0u32;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }
    if p.len() <= 1 {
        return (roots, p);
    }
    // Integer-primitive version: common denominator times out, content divided out.
    let mut den_lcm = BigInt::one();
    for c in &p {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    for c in ints.iter_mut() {
        *c /= &content;
    }
    let trailing = ints[0].clone();
    let leading = ints.last().unwrap().clone();
    let mut candidates: Vec<Rat> = Vec::new();
    for pdiv in positive_divisors(&trailing) {
        for qdiv in positive_divisors(&leading) {
            let r = Rat::new(pdiv.clone(), qdiv.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for cand in candidates {
        let mut mult = 0u32;
        while p.len() > 1 && dense_eval(&p, &cand).is_zero() {
            let lin = vec![-cand.clone(), Rat::one()];
            let (q, r) = dense_div_rem(&p, &lin);
            debug_assert!(dense_is_zero(&r));
            p = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
            if p.len() <= 1 {
                break;
            }
            // Root-free candidates shrink with p; recompute is unnecessary
            // since divisors of the new trailing coefficient divide the old.
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, p)
}

// ---------------------------------------------------------------------------
// Partial fractions of a univariate rational function with rational poles.
// ---------------------------------------------------------------------------

/// Exact decomposition `f = poly_part + sum_p sum_k parts[p][k-1] / (z-p)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub var: Sym,
    pub poly_part: MPoly,
    /// pole location -> principal-part coefficients, index k-1 for 1/(z-p)^k.
    pub parts: BTreeMap<Rat, Vec<Rat>>,
}

impl PartialFractions {
    /// Reassembles the rational function; inverse of `partial_fractions`.
    pub fn reassemble(&self) -> MRat {
        let z = MRat::var(self.var);
        let mut acc = MRat::from_poly(self.poly_part.clone());
        for (p, coeffs) in &self.parts {
            let shift = z.sub(&MRat::constant(p.clone()));
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = MRat::constant(c.clone()).div(&shift.pow_int((i + 1) as u32)).unwrap();
                acc = acc.add(&term);
            }
        }
        acc
    }
}

/// Splits a univariate rational function into polynomial part plus principal
/// parts at its (necessarily rational) poles. Rejects denominators with a
/// nonlinear root-free factor.
pub fn partial_fractions(f: &MRat, var: Sym) -> Result<PartialFractions> {
    let (num_d, den_d) = f.univariate_dense(var)?;
    if dense_is_zero(&num_d) {
        return Ok(PartialFractions {
            var,
            poly_part: MPoly::zero(),
            parts: BTreeMap::new(),
        });
    }
    let (roots, cofactor) = rational_roots(&den_d);
    if cofactor.len() > 1 {
        let t = dense_to_mpoly(var, &cofactor);
        return Err(Error::IrrationalPole {
            factor: t.to_string(),
        });
    }
    // Long division for the polynomial part.
    let (quo, _rem) = dense_div_rem(&num_d, &den_d);
    let mut parts: BTreeMap<Rat, Vec<Rat>> = BTreeMap::new();
    for (p, mult) in &roots {
        let coeffs = principal_part_at(f, var, p, *mult)?;
        let trimmed: Vec<Rat> = coeffs;
        if trimmed.iter().any(|c| !c.is_zero()) {
            parts.insert(p.clone(), trimmed);
        }
    }
    Ok(PartialFractions {
        var,
        poly_part: dense_to_mpoly(var, &quo),
        parts,
    })
}

/// Principal-part coefficients `[c_1, ..., c_k]` of `f` at `z = p`, where the
/// pole order is at most `k`: `f = sum_j c_j/(z-p)^j + regular`.
pub fn principal_part_at(f: &MRat, var: Sym, p: &Rat, k: u32) -> Result<Vec<Rat>> {
    let (num_d, den_d) = f.univariate_dense(var)?;
    // den = (z-p)^k * dtil with dtil(p) != 0 (k may overestimate; handled below).
    let lin = vec![-p.clone(), Rat::one()];
    let mut dtil = den_d;
    let mut actual = 0u32;
    loop {
        let (q, r) = dense_div_rem(&dtil, &lin);
        if dense_is_zero(&r) {
            dtil = q;
            actual += 1;
        } else {
            break;
        }
    }
    if actual > k {
        return Err(Error::internal(format!(
            "principal_part_at: pole order {actual} exceeds requested {k}"
        )));
    }
    // g := num/dtil is regular at p; c_j = g^{(k-j)}(p)/(k-j)! for j=1..=actual.
    let mut out = vec![Rat::zero(); k as usize];
    if actual == 0 {
        return Ok(out);
    }
    // Taylor coefficients of num/dtil at p up to order actual-1.
    let shift_bind = |poly: &[Rat]| -> Vec<Rat> {
        // coefficients of poly(p + t) in t
        let mut out = vec![Rat::zero(); poly.len().max(1)];
        let mut binom_row = vec![Rat::one()];
        // poly(p+t) = sum_i a_i (p+t)^i; expand incrementally
        let mut pt_pow = vec![Rat::one()]; // (p+t)^0
        for (i, a) in poly.iter().enumerate() {
            if i > 0 {
                // multiply pt_pow by (p + t)
                let mut next = vec![Rat::zero(); pt_pow.len() + 1];
                for (j, c) in pt_pow.iter().enumerate() {
                    next[j] += c * p;
                    next[j + 1] += c;
                }
                pt_pow = next;
            }
            for (j, c) in pt_pow.iter().enumerate() {
                if j >= out.len() {
                    out.resize(j + 1, Rat::zero());
                }
                out[j] += a * c;
            }
        }
        let _ = &mut binom_row;
        dense_trim(out)
    };
    let num_t = shift_bind(&num_d);
    let den_t = shift_bind(&dtil);
    // series division num_t / den_t to order actual-1
    let d0 = den_t.first().cloned().unwrap_or_else(Rat::zero);
    if d0.is_zero() {
        return Err(Error::internal("principal_part_at: cofactor vanishes at pole"));
    }
    let ord = actual as usize;
    let mut series = vec![Rat::zero(); ord];
    for i in 0..ord {
        let mut acc = num_t.get(i).cloned().unwrap_or_else(Rat::zero);
        for j in 1..=i {
            let dj = den_t.get(j).cloned().unwrap_or_else(Rat::zero);
            acc -= dj * series[i - j].clone();
        }
        series[i] = acc / d0.clone();
    }
    // f = (1/t^actual) * series(t) + O(t^0) => c_j = series[actual - j]
    for j in 1..=actual {
        out[(j - 1) as usize] = series[(actual - j) as usize].clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use crate::symbol;

    fn z() -> Sym {
        symbol::slot(0)
    }

    #[test]
    fn dense_div_rem_basic() {
        // z^3 / (z - 2) = z^2 + 2z + 4 rem 8
        let a = vec![rat_i(0), rat_i(0), rat_i(0), rat_i(1)];
        let d = vec![rat_i(-2), rat_i(1)];
        let (q, r) = dense_div_rem(&a, &d);
        assert_eq!(q, vec![rat_i(4), rat_i(2), rat_i(1)]);
        assert_eq!(r, vec![rat_i(8)]);
    }

    #[test]
    fn gcd_univariate() {
        // gcd(z^2-1, z^2-2z+1) = z-1
        let a = MPoly::var(z()).pow(2).sub(&MPoly::one());
        let b = MPoly::var(z())
            .pow(2)
            .sub(&MPoly::var(z()).scale(&rat_i(2)))
            .add(&MPoly::one());
        let g = gcd_poly(&a, &b);
        assert_eq!(g, MPoly::var(z()).sub(&MPoly::one()));
    }

    #[test]
    fn gcd_bivariate() {
        let a = MPoly::var(symbol::slot(0));
        let b = MPoly::var(symbol::slot(1));
        // gcd((a-b)^2 (a+b), (a-b)(a b - 1)) = a - b
        let p = a.sub(&b).pow(2).mul(&a.add(&b));
        let q = a.sub(&b).mul(&a.mul(&b).sub(&MPoly::one()));
        let g = gcd_poly(&p, &q);
        assert_eq!(g, a.sub(&b));
        // coprime case
        let g2 = gcd_poly(&a.add(&b), &a.mul(&b).sub(&MPoly::one()));
        assert!(g2.is_one());
    }

    #[test]
    fn rational_roots_enumeration() {
        // 6 z^3 - z^2 - 7z + 2? Use (2z-1)(3z+2)(z-1) = 6z^3 + ... compute:
        let f = dense_mul(
            &dense_mul(&[rat_i(-1), rat_i(2)], &[rat_i(2), rat_i(3)]),
            &[rat_i(-1), rat_i(1)],
        );
        let (roots, cof) = rational_roots(&f);
        assert_eq!(cof.len(), 1);
        let got: Vec<Rat> = roots.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(got, vec![rat(-2, 3), rat(1, 2), rat_i(1)]);
        // z^2 + 1 has no rational roots
        let (r2, cof2) = rational_roots(&[rat_i(1), rat_i(0), rat_i(1)]);
        assert!(r2.is_empty());
        assert_eq!(cof2.len(), 3);
    }

    #[test]
    fn partial_fractions_spec_cases() {
        let zz = MRat::var(z());
        // 1/(z^2-1) -> {1: [1/2], -1: [-1/2]}, poly 0
        let f = MRat::one()
            .div(&zz.mul(&zz).sub(&MRat::one()))
            .unwrap();
        let pf = partial_fractions(&f, z()).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.parts[&rat_i(1)], vec![rat(1, 2)]);
        assert_eq!(pf.parts[&rat_i(-1)], vec![rat(-1, 2)]);
        assert_eq!(pf.reassemble(), f);

        // z^3/(z-2) -> poly z^2+2z+4, {2: [8]}
        let g = zz.pow_int(3).div(&zz.sub(&MRat::constant(rat_i(2)))).unwrap();
        let pg = partial_fractions(&g, z()).unwrap();
        assert_eq!(
            pg.poly_part,
            MPoly::var(z())
                .pow(2)
                .add(&MPoly::var(z()).scale(&rat_i(2)))
                .add(&MPoly::constant(rat_i(4)))
        );
        assert_eq!(pg.parts[&rat_i(2)], vec![rat_i(8)]);
        assert_eq!(pg.reassemble(), g);

        // 1/(z^2+1) -> irrational pole error
        let h = MRat::one().div(&zz.mul(&zz).add(&MRat::one())).unwrap();
        assert!(matches!(
            partial_fractions(&h, z()),
            Err(Error::IrrationalPole { .. })
        ));
    }

    #[test]
    fn higher_order_principal_parts() {
        let zz = MRat::var(z());
        // (z+3)/(z-1)^3 at 1: z+3 = (z-1) + 4 -> 4/(z-1)^3 + 1/(z-1)^2
        let f = zz
            .add(&MRat::constant(rat_i(3)))
            .div(&zz.sub(&MRat::one()).pow_int(3))
            .unwrap();
        let pf = partial_fractions(&f, z()).unwrap();
        assert_eq!(pf.parts[&rat_i(1)], vec![rat_i(0), rat_i(1), rat_i(4)]);
        assert_eq!(pf.reassemble(), f);
    }
}
