//! Genus parametrization: one representative order per element of G_R,
//! indexed by exponent tuples along the filtration G_R > H > H-hat.
//!
//! Each cyclic generator found by the scan carries a witness prime; a
//! representative is built from the base order by moving, at each witness
//! prime, to a vertex whose type sits at the chosen exponent. The distance
//! idele of two representatives records the per-prime type distances, and
//! its Frobenius image in G_R is exactly the quotient of their elements, so
//! embedding behavior is decided by the lambda exponents alone.

use super::genus::GenusGroup;
use super::scan::{GeneratorData, SubgroupData};
use super::SelError;
use crate::building::{type_distance, HomothetyClass};
use crate::quadfield::PrimeOfK;

/// One representative of the genus: exponent tuples for the lambda, mu, nu
/// layers, the resulting element of G_R, and the vertex chosen at each
/// witness prime (in layer order: lambda, then mu, then nu).
#[derive(Debug, Clone)]
pub struct GenusRep {
    a: Vec<u64>,
    b: Vec<u64>,
    c: Vec<u64>,
    element: usize,
    vertices: Vec<(PrimeOfK, HomothetyClass)>,
}

impl GenusRep {
    /// Exponents on the G_R/H generators; all zero iff the order admits.
    pub fn a(&self) -> &[u64] {
        &self.a
    }

    /// Exponents on the H/H-hat generators.
    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// Exponents on the H-hat generators.
    pub fn c(&self) -> &[u64] {
        &self.c
    }

    /// The element of G_R this representative realizes.
    pub fn element(&self) -> usize {
        self.element
    }

    /// Chosen vertex at each witness prime, lambda then mu then nu.
    pub fn vertices(&self) -> &[(PrimeOfK, HomothetyClass)] {
        &self.vertices
    }
}

/// The distance idele between two representatives: the type distance at
/// each shared witness prime and the product of Frobenius images raised to
/// those distances.
#[derive(Debug, Clone)]
pub struct DistanceIdele {
    support: Vec<(PrimeOfK, usize)>,
    image: usize,
}

impl DistanceIdele {
    pub fn support(&self) -> &[(PrimeOfK, usize)] {
        &self.support
    }

    /// Image in G_R: determines the two representatives' relative position.
    pub fn image(&self) -> usize {
        self.image
    }

    pub fn is_trivial(&self, g: &GenusGroup) -> bool {
        self.image == g.identity() && self.support.iter().all(|(_, d)| *d == 0)
    }
}

/// A vertex at the given type: `t` ones followed by zeros sums to `t`.
fn vertex_at_type(n: usize, t: u64) -> HomothetyClass {
    let mut coords = vec![0i64; n];
    for c in coords.iter_mut().take(t as usize) {
        *c = 1;
    }
    HomothetyClass::new(&coords).expect("n >= 1")
}

/// Enumerates the full genus: every exponent tuple over the scan's
/// generators, in lexicographic order with the lambda exponents most
/// significant (so the admitting representatives come first). The map from
/// tuples to G_R is checked to be a bijection.
pub fn parametrize_genus(g: &GenusGroup, s: &SubgroupData) -> Vec<GenusRep> {
    let n = g.algebra_degree() as usize;
    let group = g.group();
    let layers: Vec<&GeneratorData> = s
        .lambda()
        .iter()
        .chain(s.mu())
        .chain(s.nu())
        .collect();
    let widths = (s.lambda().len(), s.mu().len());

    let mut reps = Vec::new();
    let mut exps = vec![0u64; layers.len()];
    loop {
        let mut element = group.identity();
        let mut vertices = Vec::with_capacity(layers.len());
        for (gen, &e) in layers.iter().zip(&exps) {
            element = group.mul(element, group.pow(gen.element, e));
            vertices.push((gen.witness.clone(), vertex_at_type(n, e)));
        }
        reps.push(GenusRep {
            a: exps[..widths.0].to_vec(),
            b: exps[widths.0..widths.0 + widths.1].to_vec(),
            c: exps[widths.0 + widths.1..].to_vec(),
            element,
            vertices,
        });
        // Advance the mixed-radix counter, least significant digit last.
        let mut i = layers.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < layers[i].order {
                break;
            }
            exps[i] = 0;
        }
        if exps.iter().all(|&e| e == 0) {
            break;
        }
    }

    let distinct: std::collections::BTreeSet<usize> =
        reps.iter().map(|r| r.element).collect();
    assert_eq!(
        distinct.len(),
        g.order(),
        "scan generators must parametrize G_R bijectively"
    );
    assert_eq!(reps.len(), g.order());
    reps
}

/// Whether the representative's maximal order admits an embedding of the
/// ring of integers of L: exactly when its element lies in H.
pub fn admits_embedding(s: &SubgroupData, rep: &GenusRep) -> bool {
    s.h().contains(&rep.element())
}

/// Distance idele between two representatives of the same parametrization.
/// Errors if they were built over different witness primes.
pub fn distance_idele(
    g: &GenusGroup,
    x: &GenusRep,
    y: &GenusRep,
) -> Result<DistanceIdele, SelError> {
    if x.vertices.len() != y.vertices.len() {
        return Err(SelError::MixedParametrization);
    }
    let group = g.group();
    let mut support = Vec::with_capacity(x.vertices.len());
    let mut image = group.identity();
    for ((px, vx), (py, vy)) in x.vertices.iter().zip(&y.vertices) {
        if px.rational() != py.rational() || px.label() != py.label() {
            return Err(SelError::MixedParametrization);
        }
        let d = type_distance(vx, vy).expect("same parametrization, same degree");
        image = group.mul(image, group.pow(g.frobenius(px)?, d as u64));
        support.push((px.clone(), d));
    }
    Ok(DistanceIdele { support, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{class_group, prime_of_k, QuadField, TowerSpec};
    use crate::selectivity::{genus_group, scan_subgroups, AlgebraData, ScanParams, SplittingSource};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use std::collections::BTreeMap;
    use std::collections::BTreeSet;

    fn quartic_analysis() -> (GenusGroup, SubgroupData) {
        let k = QuadField::new(BigInt::from(-14)).unwrap();
        let tower = TowerSpec::new(
            vec![
                (BigInt::from(33), BigInt::from(44)),
                (BigInt::from(22), BigInt::from(4)),
                (BigInt::one(), BigInt::zero()),
            ],
            Some(vec![BigInt::from(5), BigInt::zero(), BigInt::one()]),
        )
        .unwrap();
        let source = SplittingSource::new(Some(tower), BTreeMap::new());
        let c = class_group(&k);
        let ram: Vec<_> = prime_of_k(&k, &BigInt::from(137))
            .unwrap()
            .into_iter()
            .map(|p| (p, 2))
            .collect();
        let b = AlgebraData::new(4, ram).unwrap();
        let g = genus_group(&b, &c);
        let data = scan_subgroups(&k, &source, &b, &g, &ScanParams::default()).unwrap();
        (g, data)
    }

    fn hilbert_analysis() -> (GenusGroup, SubgroupData) {
        let k = QuadField::new(BigInt::from(-23)).unwrap();
        let tower = TowerSpec::new(
            vec![
                (BigInt::from(-1), BigInt::zero()),
                (BigInt::from(-1), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
                (BigInt::one(), BigInt::zero()),
            ],
            None,
        )
        .unwrap();
        let source = SplittingSource::new(Some(tower), BTreeMap::new());
        let c = class_group(&k);
        let b = AlgebraData::new(3, vec![]).unwrap();
        let g = genus_group(&b, &c);
        let data = scan_subgroups(&k, &source, &b, &g, &ScanParams::default()).unwrap();
        (g, data)
    }

    #[test]
    fn quartic_parametrization_is_a_bijection() {
        let (g, data) = quartic_analysis();
        let reps = parametrize_genus(&g, &data);
        assert_eq!(reps.len(), 4);
        let elements: BTreeSet<usize> = reps.iter().map(|r| r.element()).collect();
        assert_eq!(elements.len(), 4);

        // Exactly |G_R| / [L_0 : K] representatives admit, and admitting is
        // the same as having zero lambda exponents.
        let admitting: Vec<&GenusRep> =
            reps.iter().filter(|r| admits_embedding(&data, r)).collect();
        assert_eq!(admitting.len() * data.l0_index(), g.order());
        assert_eq!(admitting.len(), 2);
        for rep in &reps {
            let zero_a = rep.a().iter().all(|&x| x == 0);
            assert_eq!(zero_a, admits_embedding(&data, rep));
        }
        // Lexicographic order, lambda most significant: admitting first.
        assert!(reps[..2].iter().all(|r| admits_embedding(&data, r)));
        assert!(!reps[2..].iter().any(|r| admits_embedding(&data, r)));
    }

    #[test]
    fn distance_idele_is_a_homomorphism_in_the_exponents() {
        let (g, data) = quartic_analysis();
        let reps = parametrize_genus(&g, &data);
        let group = g.group();
        for x in &reps {
            for y in &reps {
                let d = distance_idele(&g, x, y).unwrap();
                // The image transports x's element to y's.
                assert_eq!(group.mul(d.image(), x.element()), y.element());
                for z in &reps {
                    let dyz = distance_idele(&g, y, z).unwrap();
                    let dxz = distance_idele(&g, x, z).unwrap();
                    assert_eq!(group.mul(d.image(), dyz.image()), dxz.image());
                }
            }
            let refl = distance_idele(&g, x, x).unwrap();
            assert!(refl.is_trivial(&g));
        }
    }

    #[test]
    fn hilbert_parametrization_has_one_admitting_class() {
        let (g, data) = hilbert_analysis();
        let reps = parametrize_genus(&g, &data);
        assert_eq!(reps.len(), 3);
        assert_eq!(data.l0_index(), 3);
        let admitting: Vec<&GenusRep> =
            reps.iter().filter(|r| admits_embedding(&data, r)).collect();
        assert_eq!(admitting.len(), 1);
        assert!(admitting[0].a().iter().all(|&x| x == 0));
    }

    #[test]
    fn ideles_across_parametrizations_are_rejected() {
        // Hilbert class field of -23 (one lambda witness at p = 3) against
        // the cubic radical tower over the same field (one nu witness at a
        // completely split prime): equal width, different witness primes.
        let (g1, d1) = hilbert_analysis();
        let k = QuadField::new(BigInt::from(-23)).unwrap();
        let tower = TowerSpec::new(
            vec![
                (BigInt::from(-2), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
                (BigInt::one(), BigInt::zero()),
            ],
            None,
        )
        .unwrap();
        let source = SplittingSource::new(Some(tower), BTreeMap::new());
        let c = class_group(&k);
        let b = AlgebraData::new(3, vec![]).unwrap();
        let g2 = genus_group(&b, &c);
        let d2 = scan_subgroups(&k, &source, &b, &g2, &ScanParams::default()).unwrap();
        let r1 = parametrize_genus(&g1, &d1);
        let r2 = parametrize_genus(&g2, &d2);
        assert_eq!(r1[0].vertices().len(), r2[0].vertices().len());
        assert!(matches!(
            distance_idele(&g1, &r1[1], &r2[1]),
            Err(SelError::MixedParametrization)
        ));

        // Mismatched widths are rejected outright: the quartic reps carry
        // two witness primes.
        let (g3, d3) = quartic_analysis();
        let r3 = parametrize_genus(&g3, &d3);
        assert_eq!(r3[0].vertices().len(), 2);
        assert!(matches!(
            distance_idele(&g3, &r3[0], &r1[0]),
            Err(SelError::MixedParametrization)
        ));
    }
}
