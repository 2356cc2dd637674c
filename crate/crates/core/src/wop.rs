//! The W-operators on `Q[p1, p2, ...]`.
//!
//! `Δ_d = (1/d) Σ_{δ ∈ S_d} Σ_{a_1..a_d >= 1} p̂_{βδ}(a) ∂/∂p̂_δ(a)` with
//! `β = (d ... 2 1)` by default. For a fixed monomial only finitely many
//! `a` act nontrivially: each cycle of `δ` must differentiate an index that
//! occurs in the monomial, and the `a_j` along that cycle are then a
//! composition of that index.
//!
//! The group route computes the same operator as `Φ(K_{(d,1^{n-d})} g)` and
//! never touches derivatives, so the two serve as each other's oracle.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::permgroup::{all_permutations, multiply_class_left, Permutation};
use crate::psymring::{phi_linear, PMonomial, PPolynomial};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    /// `(1/2) Σ_{i,j} (ij p_{i+j} ∂²/∂p_i∂p_j + (i+j) p_i p_j ∂/∂p_{i+j})`.
    CutAndJoinClosedForm,
    /// `Δ_d` built with the cycle `(d ... 2 1)`.
    DeltaD(u32),
    /// `Δ_β` for a `d`-cycle `β ∈ S_d`.
    DeltaBeta(Permutation),
    /// `p_λ ↦ Φ(K_{(d,1^{n-d})} g_λ)` through the group algebra.
    GroupRoute(u32),
}

impl OperatorSpec {
    pub fn delta(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidOperator("Δ_d needs d >= 1".into()));
        }
        Ok(OperatorSpec::DeltaD(d))
    }

    pub fn delta_beta(beta: Permutation) -> Result<Self> {
        if !beta.is_full_cycle() {
            return Err(Error::NotFullCycle(beta.to_string()));
        }
        Ok(OperatorSpec::DeltaBeta(beta))
    }

    pub fn group(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidOperator(
                "the group route needs d >= 2".into(),
            ));
        }
        Ok(OperatorSpec::GroupRoute(d))
    }

    fn validate(&self) -> Result<()> {
        match self {
            OperatorSpec::CutAndJoinClosedForm => Ok(()),
            OperatorSpec::DeltaD(d) => OperatorSpec::delta(*d).map(drop),
            OperatorSpec::DeltaBeta(b) => OperatorSpec::delta_beta(b.clone()).map(drop),
            OperatorSpec::GroupRoute(d) => OperatorSpec::group(*d).map(drop),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::CutAndJoinClosedForm => write!(f, "cut-and-join"),
            OperatorSpec::DeltaD(d) => write!(f, "Δ_{d}"),
            OperatorSpec::DeltaBeta(b) => write!(f, "Δ_β, β = {b}"),
            OperatorSpec::GroupRoute(d) => write!(f, "K_(1^(n-{d}) {d}) via Φ"),
        }
    }
}

fn int(x: u128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn check_len(delta: &Permutation, a: &[u32]) -> Result<()> {
    if a.len() != delta.degree() {
        return Err(Error::LengthMismatch {
            expected: delta.degree(),
            got: a.len(),
        });
    }
    if a.contains(&0) {
        return Err(Error::InvalidOperator(format!(
            "a = {a:?} must be positive"
        )));
    }
    Ok(())
}

fn cycle_sums(delta: &Permutation, a: &[u32]) -> Vec<u32> {
    delta
        .cycles()
        .iter()
        .map(|c| c.iter().map(|&j| a[j - 1]).sum())
        .collect()
}

/// `p̂_δ(a) = Π_v p_{Σ_{j ∈ δ_v} a_j}`, fixed points contributing `p_{a_j}`.
pub fn phat(delta: &Permutation, a: &[u32]) -> Result<PMonomial> {
    check_len(delta, a)?;
    Ok(PMonomial::from_indices(cycle_sums(delta, a)))
}

/// Honest multi-derivative `Π_v s_v ∂/∂p_{s_v}` over a multiset of targets.
fn derive_targets(m: &PMonomial, targets: &[u32]) -> Option<(u128, PMonomial)> {
    let mut factor: u128 = targets.iter().map(|&t| t as u128).product();
    let mut rest = m.clone();
    for (t, group) in &targets.iter().sorted().chunk_by(|&&t| t) {
        let (f, r) = rest.derivative(t, group.count() as u32)?;
        factor *= f;
        rest = r;
    }
    Some((factor, rest))
}

/// `∂/∂p̂_δ(a)` applied to `m`: `Π_v (s_v ∂/∂p_{s_v}) m` with
/// `s_v = Σ_{j ∈ δ_v} a_j`.
pub fn dhat_apply(delta: &Permutation, a: &[u32], m: &PMonomial) -> Result<PPolynomial> {
    check_len(delta, a)?;
    Ok(match derive_targets(m, &cycle_sums(delta, a)) {
        Some((f, rest)) => PPolynomial::term(rest, int(f)),
        None => PPolynomial::zero(),
    })
}

/// `φ_β(δ) = β∘δ`; `β` must be a single `d`-cycle.
pub fn phi_beta_map(beta: &Permutation, delta: &Permutation) -> Result<Permutation> {
    if !beta.is_full_cycle() {
        return Err(Error::NotFullCycle(beta.to_string()));
    }
    beta.compose(delta)
}

/// The default `φ(δ) = (d ... 2 1)∘δ`.
pub fn phi_map(delta: &Permutation) -> Permutation {
    Permutation::descending_cycle(delta.degree())
        .compose(delta)
        .expect("same degree")
}

// Compositions of `total` into `parts` positive summands.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=total.saturating_sub(parts as u32 - 1) {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts as u32 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

struct DeltaTerm {
    // 0-based positions in each cycle of δ
    source_cycles: Vec<Vec<usize>>,
    // 0-based positions in each cycle of φ_β(δ)
    image_cycles: Vec<Vec<usize>>,
}

/// Precomputed cycle structure of `δ` and `φ_β(δ)` for every `δ ∈ S_d`.
struct DeltaTable {
    d: usize,
    terms: Vec<DeltaTerm>,
}

impl DeltaTable {
    fn new(beta: &Permutation) -> Self {
        let d = beta.degree();
        let zero_based = |cycles: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            cycles
                .into_iter()
                .map(|c| c.into_iter().map(|j| j - 1).collect())
                .collect()
        };
        let terms = all_permutations(d)
            .into_iter()
            .map(|delta| {
                let image = beta.compose(&delta).expect("same degree");
                DeltaTerm {
                    source_cycles: zero_based(delta.cycles()),
                    image_cycles: zero_based(image.cycles()),
                }
            })
            .collect();
        DeltaTable { d, terms }
    }

    fn apply_monomial(&self, m: &PMonomial, c: &Rational) -> PPolynomial {
        let mut out = PPolynomial::zero();
        if m.weight() < self.d as u32 {
            return out;
        }
        let support: Vec<u32> = m.support().collect();
        let scale = c / int(self.d as u128);
        for term in &self.terms {
            let r = term.source_cycles.len();
            for targets in (0..r)
                .map(|_| support.iter().copied())
                .multi_cartesian_product()
            {
                let Some((factor, rest)) = derive_targets(m, &targets) else {
                    continue;
                };
                let coeff = &scale * int(factor);
                // a_j along each cycle of δ form a composition of its target
                let per_cycle: Vec<Vec<Vec<u32>>> = term
                    .source_cycles
                    .iter()
                    .zip(&targets)
                    .map(|(cyc, &t)| compositions(t, cyc.len()))
                    .collect();
                if per_cycle.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut a = vec![0u32; self.d];
                for choice in per_cycle.iter().map(|v| v.iter()).multi_cartesian_product() {
                    for (cyc, comp) in term.source_cycles.iter().zip(choice) {
                        for (&pos, &x) in cyc.iter().zip(comp) {
                            a[pos] = x;
                        }
                    }
                    let hat = PMonomial::from_indices(
                        term.image_cycles
                            .iter()
                            .map(|cyc| cyc.iter().map(|&j| a[j]).sum()),
                    );
                    out.add_term(rest.mul(&hat), coeff.clone());
                }
            }
        }
        out
    }
}

fn cut_and_join_monomial(m: &PMonomial, c: &Rational) -> PPolynomial {
    let mut out = PPolynomial::zero();
    let half = c / int(2);
    let support: Vec<u32> = m.support().collect();
    // join: i j p_{i+j} ∂²/∂p_i∂p_j over ordered pairs
    for &i in &support {
        for &j in &support {
            if let Some((f, rest)) = derive_targets(m, &[i, j]) {
                // derive_targets already includes the factor i*j
                out.add_term(rest.mul(&PMonomial::p(i + j)), &half * int(f));
            }
        }
    }
    // cut: (i+j) p_i p_j ∂/∂p_{i+j}
    for &s in &support {
        let (f, rest) = m.derivative(s, 1).expect("index in support");
        for i in 1..s {
            let pair = PMonomial::from_indices([i, s - i]);
            out.add_term(rest.mul(&pair), &half * int(f * s as u128));
        }
    }
    out
}

fn group_route_monomial(d: u32, m: &PMonomial, c: &Rational) -> PPolynomial {
    let n = m.weight();
    if n < d {
        return PPolynomial::zero();
    }
    let lambda = m.to_partition().expect("positive weight");
    let g = Permutation::canonical_of_type(&lambda);
    let hook = Partition::hook_cycle(d, n).expect("d <= n");
    let product = multiply_class_left(&hook, &g).expect("weights agree");
    phi_linear(&product).scale(c)
}

/// Applies the operator term by term. Every kind maps weight-`n` monomials
/// to weight-`n` polynomials; this is checked on each application.
pub fn apply_operator(op: &OperatorSpec, f: &PPolynomial) -> Result<PPolynomial> {
    op.validate()?;
    let table = match op {
        OperatorSpec::DeltaD(d) => {
            Some(DeltaTable::new(&Permutation::descending_cycle(*d as usize)))
        }
        OperatorSpec::DeltaBeta(beta) => Some(DeltaTable::new(beta)),
        _ => None,
    };
    let terms: Vec<(&PMonomial, &Rational)> = f.terms().collect();
    let images: Vec<PPolynomial> = terms
        .par_iter()
        .map(|&(m, c)| {
            let image = match op {
                OperatorSpec::CutAndJoinClosedForm => cut_and_join_monomial(m, c),
                OperatorSpec::DeltaD(_) | OperatorSpec::DeltaBeta(_) => {
                    table.as_ref().expect("built above").apply_monomial(m, c)
                }
                OperatorSpec::GroupRoute(d) => group_route_monomial(*d, m, c),
            };
            assert!(
                image.is_homogeneous(m.weight()),
                "{op} broke the weight grading on {m}"
            );
            image
        })
        .collect();
    Ok(images.iter().fold(PPolynomial::zero(), |acc, p| &acc + p))
}

/// `Δ_{d1}(Δ_{d2} f) − Δ_{d2}(Δ_{d1} f)`.
pub fn commutator(d1: u32, d2: u32, f: &PPolynomial) -> Result<PPolynomial> {
    let a = OperatorSpec::delta(d1)?;
    let b = OperatorSpec::delta(d2)?;
    let ab = apply_operator(&a, &apply_operator(&b, f)?)?;
    let ba = apply_operator(&b, &apply_operator(&a, f)?)?;
    Ok(&ab - &ba)
}

/// All `d`-cycles of `S_d`, the admissible `β` for [`OperatorSpec::DeltaBeta`].
pub fn full_cycles(d: usize) -> Vec<Permutation> {
    crate::permgroup::d_cycles(d, d)
}

/// Every monomial of exact weight `w`, one per partition of `w`; weight 0
/// gives the unit monomial.
pub fn monomials_of_weight(w: u32) -> Vec<PMonomial> {
    if w == 0 {
        return vec![PMonomial::one()];
    }
    crate::combinat::partitions(w)
        .iter()
        .map(PMonomial::from_partition)
        .collect()
}

impl PPolynomial {
    /// Shorthand for [`apply_operator`].
    pub fn apply(&self, op: &OperatorSpec) -> Result<PPolynomial> {
        apply_operator(op, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> PPolynomial {
        s.parse().unwrap()
    }

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    fn delta(d: u32, s: &str) -> PPolynomial {
        apply_operator(&OperatorSpec::DeltaD(d), &poly(s)).unwrap()
    }

    #[test]
    fn phat_examples() {
        assert_eq!(
            phat(&perm(4, "(1 2 3)"), &[1, 1, 1, 2]).unwrap(),
            PMonomial::from_indices([3, 2])
        );
        assert_eq!(
            phat(&Permutation::identity(2), &[4, 7]).unwrap(),
            PMonomial::from_indices([4, 7])
        );
        assert_eq!(phat(&perm(2, "(1 2)"), &[1, 2]).unwrap(), PMonomial::p(3));
        assert!(phat(&perm(2, "(1 2)"), &[1]).is_err());
    }

    #[test]
    fn dhat_examples() {
        let m = PMonomial::from_indices([3, 2]);
        assert_eq!(
            dhat_apply(&perm(4, "(1 2 3)"), &[1, 1, 1, 2], &m).unwrap(),
            poly("6")
        );
        let m = PMonomial::from_pairs([(1, 4)]);
        assert!(dhat_apply(&perm(2, "(1 2)"), &[1, 1], &m)
            .unwrap()
            .is_zero());
        let m = PMonomial::from_pairs([(2, 2)]);
        assert_eq!(
            dhat_apply(&Permutation::identity(2), &[2, 2], &m).unwrap(),
            poly("8")
        );
    }

    #[test]
    fn phi_beta_examples() {
        let b2 = Permutation::descending_cycle(2);
        assert_eq!(
            phi_beta_map(&b2, &Permutation::identity(2)).unwrap(),
            perm(2, "(1 2)")
        );
        assert!(phi_beta_map(&b2, &perm(2, "(1 2)")).unwrap().is_identity());
        assert!(phi_map(&perm(3, "(1 2 3)")).is_identity());
        assert!(phi_beta_map(&perm(3, "(1 2)"), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(2, "p1^2"), poly("p2"));
        assert_eq!(delta(3, "p1^3"), poly("2*p3"));
        assert_eq!(delta(3, "p3"), poly("p3 + p1^3"));
        assert!(delta(2, "p1").is_zero());
        let cj = apply_operator(&OperatorSpec::CutAndJoinClosedForm, &poly("p2^2")).unwrap();
        assert_eq!(cj, poly("4*p4 + 2*p1^2*p2"));
    }

    #[test]
    fn delta_one_is_weight_operator() {
        assert_eq!(delta(1, "p3*p1 + p2"), poly("4*p3*p1 + 2*p2"));
    }

    #[test]
    fn group_route_examples() {
        let g = |d, s| apply_operator(&OperatorSpec::GroupRoute(d), &poly(s)).unwrap();
        assert_eq!(g(2, "p2^2"), poly("4*p4 + 2*p1^2*p2"));
        assert_eq!(g(3, "p3"), poly("p3 + p1^3"));
        assert!(g(2, "1").is_zero());
        assert!(OperatorSpec::group(1).is_err());
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator(2, 3, &poly("p1^4")).unwrap().is_zero());
        assert!(commutator(2, 2, &poly("p3*p1 + 1/2*p2")).unwrap().is_zero());
        assert!(commutator(3, 4, &poly("p2^2")).unwrap().is_zero());
    }

    #[test]
    fn operator_validation() {
        assert!(OperatorSpec::delta(0).is_err());
        assert!(OperatorSpec::delta_beta(perm(4, "(1 2)(3 4)")).is_err());
        assert!(OperatorSpec::delta_beta(perm(3, "(1 3 2)")).is_ok());
        let bad = OperatorSpec::DeltaBeta(perm(3, "(1 2)"));
        assert!(apply_operator(&bad, &poly("p1^3")).is_err());
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
        assert_eq!(compositions(8, 4).len(), 35);
    }
}
