//! Vertices of the affine building for SL_n over a local field, and the
//! combinatorics of which vertices carry an embedding of the ring of
//! integers of an unramified etale algebra.
//!
//! A vertex is a homothety class of diagonal lattices, written as an integer
//! exponent vector up to a common shift; the canonical representative
//! subtracts the minimum, keeping coordinate order (which encodes the
//! identification with a fixed chamber). For a residue algebra with
//! unramified splitting data (e_i = 1 throughout, inertia degrees f_i), a
//! vertex contains the integer ring exactly when its exponent vector is
//! constant on each inertia block; the vertex types that occur form the
//! subgroup of Z/n generated by gcd(f_1, ..., f_r).

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildingError {
    #[error("exponent vector must be nonempty")]
    Empty,
    #[error("splitting type must have at least one (e, f) pair with e, f >= 1")]
    BadSplitting,
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("containment theory requires an unramified splitting (all e_i = 1)")]
    Ramified,
    #[error("enumeration bound must be at least 1")]
    BadBound,
}

/// A homothety class of lattices: an exponent vector modulo common shifts.
/// The stored representative is normalized so its minimum entry is 0;
/// coordinate order is significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomothetyClass {
    coords: Vec<i64>,
}

impl HomothetyClass {
    pub fn new(coords: &[i64]) -> Result<HomothetyClass, BuildingError> {
        if coords.is_empty() {
            return Err(BuildingError::Empty);
        }
        let min = *coords.iter().min().unwrap();
        Ok(HomothetyClass {
            coords: coords.iter().map(|c| c - min).collect(),
        })
    }

    /// The standard (origin) vertex [0, ..., 0].
    pub fn origin(n: usize) -> HomothetyClass {
        assert!(n >= 1);
        HomothetyClass {
            coords: vec![0; n],
        }
    }

    /// Normalized exponents (minimum entry is 0).
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Vertex type: sum of exponents mod n.
    pub fn vertex_type(&self) -> usize {
        let n = self.coords.len() as i64;
        let s: i64 = self.coords.iter().sum();
        s.rem_euclid(n) as usize
    }
}

impl fmt::Display for HomothetyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Splitting data of a prime in an etale algebra: ordered (e_i, f_i) pairs,
/// ramification index then inertia degree, each at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplittingType {
    pairs: Vec<(u32, u32)>,
}

impl SplittingType {
    pub fn new(pairs: &[(u32, u32)]) -> Result<SplittingType, BuildingError> {
        if pairs.is_empty() || pairs.iter().any(|&(e, f)| e == 0 || f == 0) {
            return Err(BuildingError::BadSplitting);
        }
        Ok(SplittingType {
            pairs: pairs.to_vec(),
        })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Total degree n = sum of e_i * f_i.
    pub fn degree(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(e, f)| (e as usize) * (f as usize))
            .sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.pairs.iter().all(|&(e, _)| e == 1)
    }

    /// Some factor has e = f = 1.
    pub fn has_degree_one_factor(&self) -> bool {
        self.pairs.contains(&(1, 1))
    }

    /// All factors have e = f = 1.
    pub fn is_completely_split(&self) -> bool {
        self.pairs.iter().all(|&p| p == (1, 1))
    }

    fn unramified_fs(&self) -> Result<Vec<usize>, BuildingError> {
        if !self.is_unramified() {
            return Err(BuildingError::Ramified);
        }
        Ok(self.pairs.iter().map(|&(_, f)| f as usize).collect())
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, fi)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({e},{fi})")?;
        }
        Ok(())
    }
}

/// Does the vertex contain (an embedded copy of) the integer ring with the
/// given unramified splitting? True exactly when the exponent vector is
/// constant on each inertia block, blocks taken consecutively in order.
pub fn contains_ring_of_integers(
    v: &HomothetyClass,
    s: &SplittingType,
) -> Result<bool, BuildingError> {
    let fs = s.unramified_fs()?;
    if v.dim() != s.degree() {
        return Err(BuildingError::Dimension(v.dim(), s.degree()));
    }
    let mut start = 0usize;
    for f in fs {
        let block = &v.coords[start..start + f];
        if block.iter().any(|&c| c != block[0]) {
            return Ok(false);
        }
        start += f;
    }
    Ok(true)
}

/// The set of vertex types carrying the integer ring: the subgroup of Z/n
/// generated by gcd(f_1, ..., f_r), listed ascending.
pub fn admissible_types(s: &SplittingType) -> Result<Vec<usize>, BuildingError> {
    let fs = s.unramified_fs()?;
    let n = s.degree();
    let g = fs.iter().fold(0usize, |acc, &f| num_integer::gcd(acc, f));
    Ok((0..n / g).map(|k| k * g).collect())
}

/// The g distinguished vertices of the fundamental chamber adapted to the
/// splitting: v_0 = [0,...,0] and v_j = [1 repeated f_1 + ... + f_j times,
/// then 0] for j = 1..g-1. Their types are distinct multiples of
/// gcd(f_1,...,f_g), and each contains the integer ring.
pub fn chamber_vertices(s: &SplittingType) -> Result<Vec<HomothetyClass>, BuildingError> {
    let fs = s.unramified_fs()?;
    let n = s.degree();
    let mut out = Vec::with_capacity(fs.len());
    out.push(HomothetyClass::origin(n));
    let mut ones = 0usize;
    for f in &fs[..fs.len() - 1] {
        ones += f;
        let coords: Vec<i64> = (0..n).map(|i| i64::from(i < ones)).collect();
        out.push(HomothetyClass::new(&coords).expect("n >= 1"));
    }
    Ok(out)
}

/// All canonical block-constant classes with block levels in [0, bound),
/// sorted; exactly bound^g - (bound-1)^g classes (those whose minimum level
/// is 0, i.e. one per homothety class).
pub fn enumerate_containing_vertices(
    s: &SplittingType,
    bound: i64,
) -> Result<Vec<HomothetyClass>, BuildingError> {
    if bound < 1 {
        return Err(BuildingError::BadBound);
    }
    let fs = s.unramified_fs()?;
    let r = fs.len();
    let bound = bound as u64;
    let mut out = BTreeSet::new();
    let total = bound.pow(r as u32);
    for mut idx in 0..total {
        let mut levels = Vec::with_capacity(r);
        for _ in 0..r {
            levels.push((idx % bound) as i64);
            idx /= bound;
        }
        let mut coords = Vec::with_capacity(s.degree());
        for (lvl, f) in levels.iter().zip(&fs) {
            coords.extend(std::iter::repeat(*lvl).take(*f));
        }
        out.insert(HomothetyClass::new(&coords).expect("nonempty"));
    }
    Ok(out.into_iter().collect())
}

/// Distance between vertex types along the type circle: type difference
/// mod n. This is the translation length that separates the two vertices'
/// positions in the special fiber, not a metric on the building itself.
pub fn type_distance(v: &HomothetyClass, w: &HomothetyClass) -> Result<usize, BuildingError> {
    if v.dim() != w.dim() {
        return Err(BuildingError::Dimension(v.dim(), w.dim()));
    }
    let n = v.dim() as i64;
    let d = (w.vertex_type() as i64 - v.vertex_type() as i64).rem_euclid(n);
    Ok(d as usize)
}
