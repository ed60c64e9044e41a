//! Polynomial factorization over finite fields.
//!
//! Pipeline: squarefree decomposition (with p-th-root descent in
//! characteristic p), distinct-degree splitting, then Cantor-Zassenhaus
//! equal-degree splitting. The only randomness is the CZ splitting element;
//! it is drawn from a caller-seeded ChaCha stream and the factor list is
//! sorted canonically afterwards, so results do not depend on the seed.

use super::poly::FfPoly;
use super::{FfElt, FfError, FiniteField};
use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Seed used by the convenience entry points; the factorization result is
/// seed-independent, only the internal work differs.
pub const DEFAULT_FACTOR_SEED: u64 = 1;

/// Factors into monic irreducibles with multiplicities, sorted by degree and
/// then lexicographically by coefficients (most significant first). The unit
/// is dropped; it is the leading coefficient of the input.
pub fn factor_ff(f: &FfPoly) -> Result<Vec<(FfPoly, u32)>, FfError> {
    factor_ff_seeded(f, DEFAULT_FACTOR_SEED)
}

pub fn factor_ff_seeded(f: &FfPoly, seed: u64) -> Result<Vec<(FfPoly, u32)>, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let (_, monic) = f.monic();
    if monic.deg() == Some(0) {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FfPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(&monic) {
        for (g, d) in distinct_degree(&part)? {
            for h in equal_degree(&g, d, &mut rng)? {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Squarefree decomposition in characteristic p: returns pairwise coprime
/// squarefree monic parts with their multiplicities in f.
fn squarefree_parts(f: &FfPoly) -> Vec<(FfPoly, u32)> {
    let deriv = f.derivative();
    if deriv.is_zero() {
        return pth_power_descent(f);
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    let mut i: u32 = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg().map_or(false, |d| d > 0) {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y);
        w = y;
    }
    if !c.is_one() {
        out.extend(pth_power_descent(&c));
    }
    out
}

/// Handles f with zero derivative, i.e. f = v(x)^p: take p-th roots of the
/// coefficients at indices divisible by p and recurse, multiplying
/// multiplicities by p.
fn pth_power_descent(f: &FfPoly) -> Vec<(FfPoly, u32)> {
    let field = f.field().clone();
    let p = field
        .characteristic()
        .to_usize()
        .expect("zero-derivative descent implies deg f >= char, so char is word-sized");
    let deg = f.deg().expect("nonzero");
    debug_assert_eq!(deg % p, 0);
    let mut coords = Vec::with_capacity(deg / p + 1);
    for j in 0..=deg / p {
        coords.push(field.c_pth_root(&f.coeffs()[j * p]));
    }
    let v = FfPoly::from_coords(field, coords);
    let p = u32::try_from(p).expect("word-sized p");
    squarefree_parts(&v)
        .into_iter()
        .map(|(g, m)| (g, m * p))
        .collect()
}

/// Distinct-degree splitting of a squarefree monic polynomial: returns
/// (product of all irreducible factors of degree d, d) pairs.
fn distinct_degree(f: &FfPoly) -> Result<Vec<(FfPoly, usize)>, FfError> {
    let field = f.field().clone();
    let q = field.order().clone();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = FfPoly::x(&field).rem(&rest)?;
    let mut d = 0usize;
    while rest.deg().map_or(false, |n| n >= 2 * (d + 1)) {
        d += 1;
        h = h.powmod(&q, &rest)?;
        let diff = h.sub(&FfPoly::x(&field));
        let g = diff.gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(n) = rest.deg() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting: f is squarefree monic, all of
/// whose irreducible factors have degree d.
fn equal_degree(f: &FfPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FfPoly>, FfError> {
    let n = f.deg().expect("nonzero");
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field.order().clone();
    let two = BigUint::from(2u32);
    loop {
        let a = random_poly_below(&field, n, rng);
        if a.deg().map_or(true, |da| da == 0) {
            continue;
        }
        let candidate = if field.characteristic() == &two {
            // Trace map over F_2: sum of a^(2^i) for i < k*d.
            let rounds = field.degree() * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..rounds {
                t = t.mul(&t).rem(f)?;
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / &two;
            let b = a.powmod(&e, f)?;
            b.sub(&FfPoly::one(&field)).gcd(f)
        };
        let dc = candidate.deg().unwrap_or(0);
        if dc > 0 && dc < n {
            let rest = f.div_exact(&candidate);
            let mut out = equal_degree(&candidate, d, rng)?;
            out.extend(equal_degree(&rest, d, rng)?);
            return Ok(out);
        }
    }
}

fn random_poly_below(field: &Arc<FiniteField>, deg_bound: usize, rng: &mut ChaCha8Rng) -> FfPoly {
    let p = field.characteristic();
    let mut coords = Vec::with_capacity(deg_bound);
    for _ in 0..deg_bound {
        let c: Vec<BigUint> = (0..field.degree())
            .map(|_| rng.gen_biguint_below(p))
            .collect();
        coords.push(c);
    }
    FfPoly::from_coords(field.clone(), coords)
}

/// Rabin's irreducibility test over the coefficient field.
pub fn is_irreducible_ff(f: &FfPoly) -> Result<bool, FfError> {
    let n = match f.deg() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let field = f.field().clone();
    let (_, f) = f.monic();
    let q = field.order().clone();
    let x = FfPoly::x(&field);
    for t in distinct_prime_divisors(n) {
        let e = q.pow((n / t) as u32);
        let h = x.powmod(&e, &f)?.sub(&x);
        if !h.gcd(&f).is_one() {
            return Ok(false);
        }
    }
    let e = q.pow(n as u32);
    let h = x.powmod(&e, &f)?.sub(&x);
    Ok(h.rem(&f)?.is_zero())
}

fn distinct_prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lexicographically least monic irreducible of degree k over the given
/// field. Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the
/// tuple (c_{k-1}, ..., c_0) with prime-field entries compared as integers.
pub(crate) fn least_irreducible_over(field: &Arc<FiniteField>, k: usize) -> FfPoly {
    assert!(k >= 1);
    assert_eq!(field.degree(), 1, "modulus scan runs over a prime field");
    let p = field.characteristic().clone();
    let mut counter = BigUint::zero();
    loop {
        // Base-p digits of the counter, most significant digit = leading
        // lower coefficient, so counter order equals lexicographic order.
        let mut digits = vec![BigUint::zero(); k];
        let mut rest = counter.clone();
        let mut idx = k;
        while !rest.is_zero() {
            idx = idx.checked_sub(1).expect("counter below p^k");
            let (q, r) = rest.div_rem(&p);
            digits[idx] = r;
            rest = q;
        }
        // digits[0] is c_{k-1}; flip to little-endian and append the unit.
        let mut coords: Vec<Vec<BigUint>> = digits.into_iter().rev().map(|d| vec![d]).collect();
        coords.push(vec![BigUint::one()]);
        let cand = FfPoly::from_coords(field.clone(), coords);
        if is_irreducible_ff(&cand).expect("nonzero candidate") {
            return cand;
        }
        counter += 1u32;
    }
}

/// Least monic irreducible of degree k over F_p, as a standalone entry point.
pub fn least_irreducible(p: &BigUint, k: usize) -> Result<FfPoly, FfError> {
    if k == 0 {
        return Err(FfError::DegreeZero);
    }
    let field = FiniteField::prime_field(p.clone())?;
    Ok(least_irreducible_over(&field, k))
}

/// Canonical square root: the root of x^2 - a with the smaller coordinate
/// tuple. Errors in characteristic 2 and on non-squares.
pub fn sqrt_ff(a: &FfElt) -> Result<FfElt, FfError> {
    let field = a.field().clone();
    if field.characteristic() == &BigUint::from(2u32) {
        return Err(FfError::CharacteristicTwo);
    }
    if a.is_zero() {
        return Ok(field.zero());
    }
    let x2 = FfPoly::new(
        &field,
        &[a.neg(), field.zero(), field.one()],
    )?;
    let factors = factor_ff(&x2)?;
    let mut roots: Vec<FfElt> = factors
        .iter()
        .filter(|(g, _)| g.deg() == Some(1))
        .map(|(g, _)| g.coeff(0).neg())
        .collect();
    if roots.is_empty() {
        return Err(FfError::NotASquare);
    }
    roots.sort_by(|r, s| r.canonical_cmp(s));
    Ok(roots.swap_remove(0))
}
