//! Small finite abelian groups presented by Cayley tables.
//!
//! Everything downstream (class groups, genus groups, their quotients)
//! manipulates groups of very small order, so an explicit multiplication
//! table with element indices 0..n is the simplest faithful representation.
//! Elements keep their index identity through subgroup and quotient
//! constructions via explicit projection/representative maps, which is what
//! makes witness bookkeeping deterministic.

use std::collections::BTreeSet;

/// A finite abelian group on elements 0..n given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    n: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// A quotient G/H with the bookkeeping to move between the two index spaces.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: AbGroup,
    /// Index in G -> index of its coset in G/H.
    pub project: Vec<usize>,
    /// Index of a coset -> its least representative in G.
    pub representative: Vec<usize>,
}

/// One factor of a cyclic decomposition: a generator and its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFactor {
    pub generator: usize,
    pub order: u64,
}

impl AbGroup {
    /// Validates closure, identity, commutativity and inverses.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> AbGroup {
        let n = table.len();
        assert!(n > 0 && identity < n);
        for (i, row) in table.iter().enumerate() {
            assert_eq!(row.len(), n, "table must be square");
            for (j, &v) in row.iter().enumerate() {
                assert!(v < n, "table entry out of range");
                assert_eq!(table[j][i], v, "group must be abelian");
            }
            assert_eq!(table[identity][i], i, "identity row must be trivial");
        }
        let inverse = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| table[i][j] == identity)
                    .expect("every element has an inverse")
            })
            .collect();
        AbGroup {
            n,
            identity,
            table,
            inverse,
        }
    }

    /// The trivial group.
    pub fn trivial() -> AbGroup {
        AbGroup::new(vec![vec![0]], 0)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Multiplicative order of a.
    pub fn elt_order(&self, a: usize) -> u64 {
        self.order_mod(a, &BTreeSet::from([self.identity]))
    }

    /// Least t >= 1 with a^t in the subgroup h.
    pub fn order_mod(&self, a: usize, h: &BTreeSet<usize>) -> u64 {
        let mut x = a;
        let mut t = 1u64;
        while !h.contains(&x) {
            x = self.mul(x, a);
            t += 1;
            assert!(t <= self.n as u64, "order search escaped the group");
        }
        t
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.n)
            .map(|a| self.elt_order(a))
            .fold(1u64, num_integer::lcm)
    }

    /// Subgroup generated by `gens`, as a sorted element set.
    pub fn subgroup(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut h = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if h.insert(y) {
                    frontier.push(y);
                }
            }
        }
        h
    }

    /// The quotient G/H for a subgroup H (assumed closed; asserted).
    pub fn quotient(&self, h: &BTreeSet<usize>) -> Quotient {
        assert!(h.contains(&self.identity));
        // Coset of x = { x*s : s in H }, canonically named by its least element.
        let mut coset_rep = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let rep = h
                .iter()
                .map(|&s| self.mul(x, s))
                .min()
                .expect("H nonempty");
            coset_rep[x] = rep;
        }
        let mut reps: Vec<usize> = coset_rep.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        reps.sort_unstable();
        let coset_index = |rep: usize| reps.binary_search(&rep).expect("rep listed");
        let project: Vec<usize> = (0..self.n).map(|x| coset_index(coset_rep[x])).collect();
        let m = reps.len();
        assert_eq!(self.n % m, 0, "coset count divides group order");
        let mut table = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = project[self.mul(reps[a], reps[b])];
            }
        }
        let identity = project[self.identity];
        Quotient {
            group: AbGroup::new(table, identity),
            project,
            representative: reps,
        }
    }

    /// Re-presents a subgroup as a standalone group; returns it together with
    /// the list mapping new indices to elements of self.
    pub fn subgroup_as_group(&self, h: &BTreeSet<usize>) -> (AbGroup, Vec<usize>) {
        let elems: Vec<usize> = h.iter().copied().collect();
        let index_of = |x: usize| elems.binary_search(&x).expect("closed subgroup");
        let m = elems.len();
        let mut table = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                table[a][b] = index_of(self.mul(elems[a], elems[b]));
            }
        }
        let identity = index_of(self.identity);
        (AbGroup::new(table, identity), elems)
    }

    /// Greedy cyclic decomposition: G = <g_1> x ... x <g_r> with
    /// ord(g_1) >= ord(g_2) >= ... At each step the candidate must have
    /// maximal order modulo the span of earlier generators AND full order
    /// equal to that (so the product stays direct); ties break to the least
    /// element index. The trivial group decomposes to an empty list.
    pub fn decompose(&self) -> Vec<CyclicFactor> {
        let mut factors: Vec<CyclicFactor> = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        let mut span_gens: Vec<usize> = Vec::new();
        while span.len() < self.n {
            let mut best: Option<(u64, usize)> = None;
            for g in 0..self.n {
                if span.contains(&g) {
                    continue;
                }
                let t = self.order_mod(g, &span);
                if self.elt_order(g) != t {
                    continue; // would break directness
                }
                match best {
                    Some((bt, _)) if bt >= t => {}
                    _ => best = Some((t, g)),
                }
            }
            let (t, g) = best.expect(
                "finite abelian groups always admit a pure generator at each step",
            );
            if let Some(last) = factors.last() {
                assert_eq!(
                    last.order % t,
                    0,
                    "greedy orders must form a divisibility chain"
                );
            }
            factors.push(CyclicFactor {
                generator: g,
                order: t,
            });
            span_gens.push(g);
            span = self.subgroup(&span_gens);
        }
        let product: u64 = factors.iter().map(|f| f.order).product();
        assert_eq!(product, self.n as u64, "decomposition covers the group");
        factors
    }

    /// Orders of the canonical decomposition, largest first.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.decompose().iter().map(|f| f.order).collect()
    }
}

/// Builds the Cayley table of Z/n1 x ... x Z/nk for tests and cross-checks;
/// element index is the mixed-radix encoding of the tuple.
pub fn direct_product_table(moduli: &[u64]) -> AbGroup {
    let n: u64 = moduli.iter().product::<u64>().max(1);
    let n = usize::try_from(n).expect("small group");
    let decode = |mut x: usize| -> Vec<u64> {
        let mut t = Vec::with_capacity(moduli.len());
        for &m in moduli.iter().rev() {
            t.push(x as u64 % m);
            x /= m as usize;
        }
        t.reverse();
        t
    };
    let encode = |t: &[u64]| -> usize {
        let mut x = 0usize;
        for (i, &m) in moduli.iter().enumerate() {
            x = x * m as usize + t[i] as usize;
        }
        x
    };
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ta = decode(a);
            let tb = decode(b);
            let tc: Vec<u64> = ta
                .iter()
                .zip(&tb)
                .zip(moduli)
                .map(|((x, y), m)| (x + y) % m)
                .collect();
            table[a][b] = encode(&tc);
        }
    }
    AbGroup::new(table, 0)
}
