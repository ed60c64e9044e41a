//! The two-level tower defining L over K and the splitting of primes of K
//! in it.
//!
//! Level 1 is a monic polynomial over O_K (coefficients u + v sqrt(m));
//! level 2, if present, is a monic polynomial with rational integer
//! coefficients. A prime of K outside the bad set is unramified in L and its
//! residue degrees are read off by factoring level 1 over the residue field
//! of the prime and then, for each factor of degree k, factoring level 2
//! over the corresponding extension; because level 2 has rational
//! coefficients its factor degrees are independent of how that extension is
//! modeled, so the canonical F_{p^j} construction applies directly.

use super::primes::{PrimeOfK, SplitKind};
use super::{QuadError, QuadField};
use crate::building::SplittingType;
use crate::ffarith::{
    factor_ff_seeded, is_prime, sqrt_ff, FfPoly, FiniteField, DEFAULT_FACTOR_SEED,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Defining data of L: level-1 coefficients (u, v) meaning u + v sqrt(m),
/// little-endian, monic; optional level-2 rational coefficients,
/// little-endian, monic. The degree of L over K is the product of the level
/// degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    level1: Vec<(BigInt, BigInt)>,
    level2: Option<Vec<BigInt>>,
}

impl TowerSpec {
    pub fn new(
        level1: Vec<(BigInt, BigInt)>,
        level2: Option<Vec<BigInt>>,
    ) -> Result<TowerSpec, QuadError> {
        let ok1 = level1.len() >= 2
            && level1.last() == Some(&(BigInt::one(), BigInt::zero()));
        if !ok1 {
            return Err(QuadError::BadTowerPolynomial(1));
        }
        if let Some(l2) = &level2 {
            let ok2 = l2.len() >= 2 && l2.last() == Some(&BigInt::one());
            if !ok2 {
                return Err(QuadError::BadTowerPolynomial(2));
            }
        }
        Ok(TowerSpec { level1, level2 })
    }

    pub fn level1(&self) -> &[(BigInt, BigInt)] {
        &self.level1
    }

    pub fn level2(&self) -> Option<&[BigInt]> {
        self.level2.as_deref()
    }

    /// Degree n = [L : K].
    pub fn degree(&self) -> u32 {
        let d1 = (self.level1.len() - 1) as u32;
        let d2 = self
            .level2
            .as_ref()
            .map_or(1, |l2| (l2.len() - 1) as u32);
        d1 * d2
    }

    /// Rational primes that must be excluded from Frobenius scans: divisors
    /// of 2d, of the norm of the level-1 discriminant, and of the level-2
    /// discriminant. A finite superset of the primes ramified in K or L.
    pub fn bad_primes(&self, k: &QuadField) -> Result<BTreeSet<BigInt>, QuadError> {
        let mut bad = BTreeSet::new();
        let two_d = BigInt::from(2) * k.discriminant();
        collect_prime_divisors(&two_d, &mut bad)?;

        let disc1 = quad_discriminant(&self.level1, k.m());
        let norm1 = &disc1.u * &disc1.u - k.m() * &disc1.v * &disc1.v;
        if norm1.is_zero() {
            return Err(QuadError::Inseparable);
        }
        collect_prime_divisors(&norm1, &mut bad)?;

        if let Some(l2) = &self.level2 {
            let coeffs: Vec<QuadInt> = l2.iter().map(|c| QuadInt::rational(c.clone())).collect();
            let disc2 = discriminant_quadint(&coeffs, k.m());
            if disc2.u.is_zero() && disc2.v.is_zero() {
                return Err(QuadError::Inseparable);
            }
            debug_assert!(disc2.v.is_zero());
            collect_prime_divisors(&disc2.u, &mut bad)?;
        }
        Ok(bad)
    }
}

/// Splitting of P in L with the default factorization seed.
pub fn splitting_in_l(
    k: &QuadField,
    tower: &TowerSpec,
    p: &PrimeOfK,
) -> Result<SplittingType, QuadError> {
    splitting_in_l_seeded(k, tower, p, DEFAULT_FACTOR_SEED)
}

/// Splitting of P in L: the ordered list of (e_i, f_i) with all e_i = 1,
/// sorted by inertia degree. Errors if P lies in the tower's bad set or if
/// any factorization shows a repeated factor (P ramified in L).
pub fn splitting_in_l_seeded(
    k: &QuadField,
    tower: &TowerSpec,
    p: &PrimeOfK,
    seed: u64,
) -> Result<SplittingType, QuadError> {
    let bad = tower.bad_primes(k)?;
    if bad.contains(p.rational()) {
        return Err(QuadError::BadPrime {
            p: p.rational().clone(),
            reason: "divides 2d or a tower discriminant".into(),
        });
    }
    let pu: BigUint = p
        .rational()
        .to_biguint()
        .expect("primes are positive");
    let qdeg = p.residue_degree() as usize;
    let field = FiniteField::new(pu, qdeg).expect("p prime");
    // Residue image of sqrt(m).
    let s = match p.kind() {
        SplitKind::Split => field.from_int(p.sqrt_image().expect("split primes carry one")),
        SplitKind::Inert => {
            sqrt_ff(&field.from_int(k.m())).expect("m is a square in the quadratic extension")
        }
        SplitKind::Ramified => unreachable!("ramified primes divide d and are in the bad set"),
    };
    // Level 1 reduced at P.
    let coeffs: Vec<_> = tower
        .level1()
        .iter()
        .map(|(u, v)| {
            field
                .from_int(u)
                .add(&field.from_int(v).mul(&s).expect("same field"))
                .expect("same field")
        })
        .collect();
    let h1 = FfPoly::new(&field, &coeffs).expect("same field");
    debug_assert_eq!(h1.deg(), Some(tower.level1().len() - 1));
    let ram = || QuadError::RamifiedInL {
        p: p.rational().clone(),
        label: p.label(),
    };
    let factors1 = factor_ff_seeded(&h1, seed).expect("nonzero");
    if factors1.iter().any(|(_, m)| *m > 1) {
        return Err(ram());
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (g1, _) in &factors1 {
        let k1 = g1.deg().expect("irreducible factor");
        match tower.level2() {
            None => pairs.push((1, k1 as u32)),
            Some(l2) => {
                // Residue field of the level-1 prime: F_{p^(qdeg * k1)}.
                let ext = FiniteField::new(
                    p.rational().to_biguint().expect("positive"),
                    qdeg * k1,
                )
                .expect("p prime");
                let coeffs2: Vec<_> = l2.iter().map(|c| ext.from_int(c)).collect();
                let h2 = FfPoly::new(&ext, &coeffs2).expect("same field");
                let factors2 = factor_ff_seeded(&h2, seed).expect("nonzero");
                if factors2.iter().any(|(_, m)| *m > 1) {
                    return Err(ram());
                }
                for (g2, _) in &factors2 {
                    let k2 = g2.deg().expect("irreducible factor");
                    pairs.push((1, (k1 * k2) as u32));
                }
            }
        }
    }
    pairs.sort_unstable_by_key(|&(e, f)| (f, e));
    let st = SplittingType::new(&pairs).expect("nonempty with positive entries");
    assert_eq!(
        st.degree(),
        tower.degree() as usize,
        "residue degrees must sum to the tower degree"
    );
    Ok(st)
}

// ---- integers of K and resultants -------------------------------------

/// An element u + v sqrt(m) of Z[sqrt(m)] (v = 0 models plain integers).
#[derive(Debug, Clone, PartialEq, Eq)]
struct QuadInt {
    u: BigInt,
    v: BigInt,
}

impl QuadInt {
    fn zero() -> QuadInt {
        QuadInt {
            u: BigInt::zero(),
            v: BigInt::zero(),
        }
    }

    fn rational(u: BigInt) -> QuadInt {
        QuadInt {
            u,
            v: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn mul(&self, o: &QuadInt, m: &BigInt) -> QuadInt {
        QuadInt {
            u: &self.u * &o.u + m * &self.v * &o.v,
            v: &self.u * &o.v + &self.v * &o.u,
        }
    }

    fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt {
            u: &self.u - &o.u,
            v: &self.v - &o.v,
        }
    }

    fn scale(&self, t: &BigInt) -> QuadInt {
        QuadInt {
            u: &self.u * t,
            v: &self.v * t,
        }
    }

    /// Exact division in the integral domain Z[sqrt(m)]; panics if inexact
    /// (Bareiss elimination guarantees exactness).
    fn div_exact(&self, o: &QuadInt, m: &BigInt) -> QuadInt {
        let norm = &o.u * &o.u - m * &o.v * &o.v;
        assert!(!norm.is_zero(), "division by zero in Z[sqrt(m)]");
        let conj = QuadInt {
            u: o.u.clone(),
            v: -&o.v,
        };
        let num = self.mul(&conj, m);
        let (qu, ru) = num.u.div_mod_floor(&norm);
        let (qv, rv) = num.v.div_mod_floor(&norm);
        assert!(ru.is_zero() && rv.is_zero(), "inexact division in Z[sqrt(m)]");
        QuadInt { u: qu, v: qv }
    }
}

/// Discriminant of the monic level-1 polynomial as an element of Z[sqrt(m)]:
/// +/- Res(f, f'); the sign is irrelevant to prime support.
fn quad_discriminant(level1: &[(BigInt, BigInt)], m: &BigInt) -> QuadInt {
    let f: Vec<QuadInt> = level1
        .iter()
        .map(|(u, v)| QuadInt {
            u: u.clone(),
            v: v.clone(),
        })
        .collect();
    discriminant_quadint(&f, m)
}

fn discriminant_quadint(f: &[QuadInt], m: &BigInt) -> QuadInt {
    // f' with integer scalar multiplication.
    let deriv: Vec<QuadInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigInt::from(i)))
        .collect();
    resultant(f, &deriv, m)
}

/// Resultant of two polynomials over Z[sqrt(m)] (little-endian, leading
/// coefficients nonzero) via Bareiss fraction-free elimination of the
/// Sylvester matrix.
fn resultant(f: &[QuadInt], g: &[QuadInt], m: &BigInt) -> QuadInt {
    let n = f.len() - 1;
    let k = g.len() - 1;
    if n == 0 || k == 0 {
        // Res(f, const c) = c^n (monic leading cases only arise here).
        let (cst, deg) = if n == 0 { (&f[0], k) } else { (&g[0], n) };
        let mut acc = QuadInt::rational(BigInt::one());
        for _ in 0..deg {
            acc = acc.mul(cst, m);
        }
        return acc;
    }
    let size = n + k;
    // Sylvester matrix with descending-degree coefficient rows.
    let mut mat = vec![vec![QuadInt::zero(); size]; size];
    for row in 0..k {
        for (j, c) in f.iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in g.iter().rev().enumerate() {
            mat[k + row][row + j] = c.clone();
        }
    }
    // Bareiss: divisions are exact in any integral domain.
    let mut sign = 1i32;
    let mut prev = QuadInt::rational(BigInt::one());
    for i in 0..size - 1 {
        if mat[i][i].is_zero() {
            let swap = (i + 1..size).find(|&r| !mat[r][i].is_zero());
            match swap {
                Some(r) => {
                    mat.swap(i, r);
                    sign = -sign;
                }
                None => return QuadInt::zero(),
            }
        }
        for r in i + 1..size {
            for c in i + 1..size {
                let t = mat[i][i]
                    .mul(&mat[r][c], m)
                    .sub(&mat[r][i].mul(&mat[i][c], m));
                mat[r][c] = t.div_exact(&prev, m);
            }
            mat[r][i] = QuadInt::zero();
        }
        prev = mat[i][i].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign < 0 {
        det.scale(&BigInt::from(-1))
    } else {
        det
    }
}

/// Adds the distinct prime divisors of n (nonzero) to the set. Trial
/// division to 10^6, then a primality check on the remainder; a composite
/// remainder beyond the bound is an error rather than a wrong answer.
fn collect_prime_divisors(n: &BigInt, out: &mut BTreeSet<BigInt>) -> Result<(), QuadError> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(QuadError::Inseparable);
    }
    for p in 2u64..=1_000_000 {
        if n.is_one() {
            return Ok(());
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > n {
            break;
        }
        if n.mod_floor(&pb).is_zero() {
            out.insert(pb.clone());
            while n.mod_floor(&pb).is_zero() {
                n /= &pb;
            }
        }
    }
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n.to_biguint().expect("positive")) {
        out.insert(n);
        Ok(())
    } else {
        Err(QuadError::DiscriminantTooLarge)
    }
}
