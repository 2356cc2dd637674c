//! Permutations of `{1..n}`, the group algebra `Q S_n`, and the
//! classification of marked `d`-tuples relative to a fixed permutation.
//!
//! Points are 1-indexed everywhere in the public API. Products follow the
//! convention `(σ∘g)(x) = σ(g(x))`: the right factor acts first.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::Rational;

/// A bijection of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..{n}"
                )));
            }
            seen[im - 1] = true;
            out.push(im - 1);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles in 1-based
    /// points. Singleton cycles are allowed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > n || used[p - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {:?} are not disjoint within 1..{n}",
                        cycles
                            .iter()
                            .map(|c| c.as_ref().to_vec())
                            .collect::<Vec<_>>()
                    )));
                }
                used[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`, `(1,2,3)` or a bare
    /// comma list `1,2,3` (read as a single cycle). `()` or `e` is the
    /// identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let groups: Vec<&str> = if text.contains('(') {
            text.split(['(', ')'])
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect()
        } else {
            vec![text]
        };
        for g in groups {
            let cycle = g
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad point {s:?} in {text:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(point)` for a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// `self ∘ g`, with `g` acting first.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &Permutation) -> Permutation {
        Permutation {
            images: g.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Disjoint cycles in 1-based points, fixed points included, each cycle
    /// starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths, fixed points counted as parts of size 1.
    ///
    /// Panics on the degree-0 permutation, which has no cycle type.
    pub fn cycle_type(&self) -> Partition {
        let lengths = self.cycles().iter().map(|c| c.len() as u32).collect();
        Partition::new(lengths).expect("cycle type of a permutation of positive degree")
    }

    /// The permutation whose cycles are consecutive blocks
    /// `(1..λ1)(λ1+1..λ1+λ2)...`.
    pub fn canonical_of_type(lambda: &Partition) -> Permutation {
        let n = lambda.weight() as usize;
        let mut images = Vec::with_capacity(n);
        let mut start = 0usize;
        for &p in lambda.parts() {
            let p = p as usize;
            for i in 0..p {
                images.push(start + (i + 1) % p);
            }
            start += p;
        }
        Permutation { images }
    }

    /// The `d`-cycle `(d ... 2 1)` in `S_d`.
    pub fn descending_cycle(d: usize) -> Permutation {
        let cycle: Vec<usize> = (1..=d).rev().collect();
        Permutation::from_cycles(d, &[cycle]).expect("valid cycle")
    }

    /// True when the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        self.degree() > 0 && self.cycles().len() == 1
    }

    /// `σ^l(point)`.
    pub fn apply_power(&self, point: usize, l: usize) -> usize {
        let mut x = point - 1;
        for _ in 0..l {
            x = self.images[x];
        }
        x + 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (0..n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect()
}

/// All `d`-cycles of `S_n`, each listed once.
pub fn d_cycles(n: usize, d: usize) -> Vec<Permutation> {
    if d == 0 || d > n {
        return Vec::new();
    }
    if d == 1 {
        return vec![Permutation::identity(n)];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        let rest: Vec<usize> = (first + 1..=n).collect();
        for tail in rest.into_iter().permutations(d - 1) {
            let mut cycle = Vec::with_capacity(d);
            cycle.push(first);
            cycle.extend(tail);
            out.push(Permutation::from_cycles(n, &[cycle]).expect("distinct points"));
        }
    }
    out
}

/// All permutations of cycle type `lambda`.
pub fn class_elements(lambda: &Partition) -> Vec<Permutation> {
    let n = lambda.weight() as usize;
    let d = lambda.parts()[0] as usize;
    if lambda.parts()[1..].iter().all(|&p| p == 1) {
        return d_cycles(n, d);
    }
    all_permutations(n)
        .into_iter()
        .filter(|p| &p.cycle_type() == lambda)
        .collect()
}

/// Element of the group algebra `Q S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_permutation(g: Permutation) -> Self {
        let mut x = GroupAlgebraElement::zero(g.degree());
        x.add_term(g, Rational::one());
        x
    }

    /// The class sum `K_λ`.
    pub fn class_sum(lambda: &Partition) -> Self {
        let mut x = GroupAlgebraElement::zero(lambda.weight() as usize);
        for s in class_elements(lambda) {
            x.add_term(s, Rational::one());
        }
        x
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, g: Permutation, c: Rational) {
        assert_eq!(
            g.degree(),
            self.n,
            "permutation degree must match the algebra"
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Permutation) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    /// Convolution product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = GroupAlgebraElement::zero(self.n);
        for (s, a) in &self.terms {
            for (g, b) in &other.terms {
                out.add_term(s.compose_unchecked(g), a * b);
            }
        }
        Ok(out)
    }
}

/// `K_λ · g = Σ_{σ of type λ} σ∘g`.
pub fn multiply_class_left(lambda: &Partition, g: &Permutation) -> Result<GroupAlgebraElement> {
    if lambda.weight() as usize != g.degree() {
        return Err(Error::WeightMismatch {
            partition: lambda.to_string(),
            weight: lambda.weight(),
            expected: g.degree() as u32,
        });
    }
    let mut out = GroupAlgebraElement::zero(g.degree());
    for s in class_elements(lambda) {
        out.add_term(s.compose_unchecked(g), Rational::one());
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Whether `⟨gens⟩` acts transitively on `{1..n}`.
pub fn is_transitive(gens: &[Permutation], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    let mut components = n;
    for g in gens {
        debug_assert_eq!(g.degree(), n);
        for (i, &im) in g.images.iter().enumerate() {
            if uf.union(i, im) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components == 1
}

/// An ordered tuple `[j_d, ..., j_1]` of distinct points of `{1..n}`.
///
/// As a cycle it is read left to right: `[a_1, ..., a_d] ↦ (a_1 ... a_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleTuple {
    n: usize,
    points: Vec<usize>,
}

impl CycleTuple {
    pub fn new(n: usize, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidTuple("empty tuple".into()));
        }
        let mut seen = vec![false; n + 1];
        for &p in &points {
            if p == 0 || p > n || seen[p] {
                return Err(Error::InvalidTuple(format!(
                    "{points:?} is not a tuple of distinct points in 1..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(CycleTuple { n, points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `j_k` for `1 <= k <= d`; the tuple stores `[j_d, ..., j_1]`.
    pub fn marked(&self, k: usize) -> usize {
        self.points[self.points.len() - k]
    }

    /// The cycle `π([a_1..a_d]) = (a_1 ... a_d)` in `S_n`.
    pub fn to_cycle(&self) -> Permutation {
        Permutation::from_cycles(self.n, std::slice::from_ref(&self.points))
            .expect("distinct points")
    }

    /// Every ordered `d`-tuple of distinct points of `{1..n}`.
    pub fn all(n: usize, d: usize) -> Vec<CycleTuple> {
        if d == 0 || d > n {
            return Vec::new();
        }
        (1..=n)
            .permutations(d)
            .map(|points| CycleTuple { n, points })
            .collect()
    }
}

impl fmt::Display for CycleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.points.iter().join(","))
    }
}

/// Least `l >= 1` with `α^l(j)` in `marked`.
pub fn dist(j: usize, alpha: &Permutation, marked: &[usize]) -> Result<usize> {
    if !marked.contains(&j) {
        return Err(Error::NotMarked(j));
    }
    let mut x = alpha.apply(j);
    let mut l = 1;
    while !marked.contains(&x) {
        x = alpha.apply(x);
        l += 1;
    }
    Ok(l)
}

/// The type `τ ∈ S_d` and distance vector `(i_1, ..., i_d)` of a marked
/// tuple relative to `α`.
///
/// `τ` acts on positions: `τ(k) = k'` when the first marked point reached
/// from `j_k` under `α` is `j_{k'}`. `distances[k-1] = i_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleClassification {
    pub type_tau: Permutation,
    pub distances: Vec<usize>,
}

impl TupleClassification {
    /// Merged lengths `ĩ_v = Σ_{k ∈ τ_v} i_k`, one per cycle of `τ` in the
    /// order of [`Permutation::cycles`].
    pub fn merged_lengths(&self) -> Vec<usize> {
        self.type_tau
            .cycles()
            .iter()
            .map(|c| c.iter().map(|&k| self.distances[k - 1]).sum())
            .collect()
    }
}

pub fn classify_tuple(alpha: &Permutation, tuple: &CycleTuple) -> Result<TupleClassification> {
    if alpha.degree() != tuple.degree() {
        return Err(Error::DegreeMismatch {
            left: alpha.degree(),
            right: tuple.degree(),
        });
    }
    let d = tuple.len();
    let marked: Vec<usize> = (1..=d).map(|k| tuple.marked(k)).collect();
    let mut images = Vec::with_capacity(d);
    let mut distances = Vec::with_capacity(d);
    for &j in &marked {
        let l = dist(j, alpha, &marked)?;
        let hit = alpha.apply_power(j, l);
        let pos = marked
            .iter()
            .position(|&m| m == hit)
            .expect("hit is marked");
        images.push(pos + 1);
        distances.push(l);
    }
    Ok(TupleClassification {
        type_tau: Permutation::from_images(&images)?,
        distances,
    })
}

/// `C̄^τ_{n,d}(α, i_1..i_d)` by brute force over all tuples.
pub fn cbar_subset(alpha: &Permutation, tau: &Permutation, distances: &[usize]) -> Vec<CycleTuple> {
    let d = tau.degree();
    if distances.len() != d {
        return Vec::new();
    }
    CycleTuple::all(alpha.degree(), d)
        .into_iter()
        .filter(|t| {
            let c = classify_tuple(alpha, t).expect("same degree");
            &c.type_tau == tau && c.distances == distances
        })
        .collect()
}

/// All nonempty `C̄^τ(α, ī)` for fixed `α` and `d`, keyed by classification.
pub fn cbar_decomposition(
    alpha: &Permutation,
    d: usize,
) -> BTreeMap<TupleClassification, Vec<CycleTuple>> {
    let mut out: BTreeMap<TupleClassification, Vec<CycleTuple>> = BTreeMap::new();
    for t in CycleTuple::all(alpha.degree(), d) {
        let c = classify_tuple(alpha, &t).expect("same degree");
        out.entry(c).or_default().push(t);
    }
    out
}
