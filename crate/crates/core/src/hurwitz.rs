//! Generalized Hurwitz numbers `h^{[d]}_k(α)` (connected) and
//! `ĥ^{[d]}_k(α)` (disconnected), their generating series, and checks of
//! the recursion and the evolution equation `∂Ĥ/∂z = W([d]) Ĥ`.
//!
//! `ĥ_k(α)` counts tuples `(σ_1..σ_k, σ)` with every `σ_i` a `d`-cycle, `σ`
//! of type `α`, and `σ_1∘...∘σ_k∘σ = e`; `h_k(α)` additionally requires the
//! tuple to generate a transitive subgroup. For `k = 0` the only tuple is
//! `(e)`, so `ĥ_0(1^n) = 1` and `h_0` is nonzero only for `α = (1)`.
//!
//! Series normalization: `[z^k p_α] Ĥ = ĥ_k(α) / (n! k!)` with
//! `n = |α|`, and the constant term of `Ĥ` is 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::{factorial, partitions, Partition};
use crate::error::{Error, Result};
use crate::permgroup::{class_elements, d_cycles, is_transitive, Permutation};
use crate::psymring::{PMonomial, PPolynomial, ZSeries};
use crate::wop::{apply_operator, OperatorSpec};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub alpha: Partition,
    pub connected: bool,
}

impl HurwitzQuery {
    pub fn new(d: u32, k: u32, alpha: Partition, connected: bool) -> Result<Self> {
        let n = alpha.weight();
        if d < 2 || d > n {
            return Err(Error::InvalidQuery(format!(
                "need 2 <= d <= n, got d={d}, n={n}"
            )));
        }
        Ok(HurwitzQuery {
            n,
            d,
            k,
            alpha,
            connected,
        })
    }
}

fn check_weights(n: u32, types: &[Partition]) -> Result<()> {
    for t in types {
        if t.weight() != n {
            return Err(Error::WeightMismatch {
                partition: t.to_string(),
                weight: t.weight(),
                expected: n,
            });
        }
    }
    Ok(())
}

// Depth-first over the free factors; `prefix` is σ_1∘...∘σ_i.
fn count_rec(
    classes: &[Vec<Permutation>],
    last_type: &Partition,
    prefix: &Permutation,
    chosen: &mut Vec<Permutation>,
    transitive: bool,
) -> u128 {
    let depth = chosen.len();
    if depth == classes.len() {
        let last = prefix.inverse();
        if &last.cycle_type() != last_type {
            return 0;
        }
        debug_assert!(prefix.compose_unchecked(&last).is_identity());
        if transitive {
            chosen.push(last);
            let ok = is_transitive(chosen, prefix.degree());
            chosen.pop();
            return ok as u128;
        }
        return 1;
    }
    let mut total = 0;
    for s in &classes[depth] {
        chosen.push(s.clone());
        total += count_rec(
            classes,
            last_type,
            &prefix.compose_unchecked(s),
            chosen,
            transitive,
        );
        chosen.pop();
    }
    total
}

fn count_tuples(n: u32, types: &[Partition], transitive: bool) -> Result<u128> {
    check_weights(n, types)?;
    let n_pts = n as usize;
    let Some((last_type, free)) = types.split_last() else {
        // the empty tuple: product is e, generated group trivial
        return Ok((!transitive || n == 1) as u128);
    };
    let classes: Vec<Vec<Permutation>> = free.iter().map(class_elements).collect();
    let id = Permutation::identity(n_pts);
    if classes.is_empty() {
        return Ok(count_rec(
            &classes,
            last_type,
            &id,
            &mut Vec::new(),
            transitive,
        ));
    }
    Ok(classes[0]
        .par_iter()
        .map(|s| {
            let mut chosen = vec![s.clone()];
            count_rec(&classes, last_type, s, &mut chosen, transitive)
        })
        .sum())
}

/// `Cov_n(λ_1..λ_k)`: tuples with `σ_i` of type `λ_i`, `σ_1∘...∘σ_k = e`,
/// generating a transitive subgroup. The last factor is solved from the
/// product of the others.
pub fn cov_bruteforce(n: u32, types: &[Partition]) -> Result<u128> {
    count_tuples(n, types, true)
}

/// Same count without the transitivity requirement.
pub fn cov_disconnected(n: u32, types: &[Partition]) -> Result<u128> {
    count_tuples(n, types, false)
}

pub fn hurwitz_number(q: &HurwitzQuery) -> Result<u128> {
    let hook = Partition::hook_cycle(q.d, q.n)?;
    let mut types = vec![hook; q.k as usize];
    types.push(q.alpha.clone());
    count_tuples(q.n, &types, q.connected)
}

/// `(h_k(α), ĥ_k(α))` for every `α ⊢ n`, from one enumeration of all
/// `k`-tuples of `d`-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTable {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    counts: BTreeMap<Partition, (u128, u128)>,
}

impl HurwitzTable {
    pub fn compute(n: u32, d: u32, k: u32) -> Self {
        let mut counts: BTreeMap<Partition, (u128, u128)> = BTreeMap::new();
        let n_pts = n as usize;
        if n == 0 {
            return HurwitzTable { n, d, k, counts };
        }
        if k == 0 {
            let id = Partition::new(vec![1; n_pts]).expect("n >= 1");
            counts.insert(id, ((n == 1) as u128, 1));
            return HurwitzTable { n, d, k, counts };
        }
        let cycles = d_cycles(n_pts, d as usize);
        let partial: Vec<BTreeMap<Partition, (u128, u128)>> = cycles
            .par_iter()
            .map(|first| {
                let mut local = BTreeMap::new();
                let mut chosen = vec![first.clone()];
                table_rec(&cycles, k as usize, first, &mut chosen, &mut local);
                local
            })
            .collect();
        for local in partial {
            for (alpha, (c, h)) in local {
                let e = counts.entry(alpha).or_insert((0, 0));
                e.0 += c;
                e.1 += h;
            }
        }
        HurwitzTable { n, d, k, counts }
    }

    /// `(connected, disconnected)` counts for `α`.
    pub fn get(&self, alpha: &Partition) -> (u128, u128) {
        self.counts.get(alpha).copied().unwrap_or((0, 0))
    }

    pub fn connected(&self, alpha: &Partition) -> u128 {
        self.get(alpha).0
    }

    pub fn disconnected(&self, alpha: &Partition) -> u128 {
        self.get(alpha).1
    }

    /// One row per partition of `n` (including zero rows), `(n)` first.
    pub fn rows(&self) -> Vec<(Partition, u128, u128)> {
        partitions(self.n)
            .into_iter()
            .map(|a| {
                let (c, h) = self.get(&a);
                (a, c, h)
            })
            .collect()
    }

    /// `Σ_α count(α) p_α`.
    pub fn generating_polynomial(&self, connected: bool) -> PPolynomial {
        let mut out = PPolynomial::zero();
        for (a, (c, h)) in &self.counts {
            let x = if connected { *c } else { *h };
            out.add_term(
                PMonomial::from_partition(a),
                Rational::from_integer(BigInt::from(x)),
            );
        }
        out
    }
}

fn table_rec(
    cycles: &[Permutation],
    k: usize,
    prefix: &Permutation,
    chosen: &mut Vec<Permutation>,
    out: &mut BTreeMap<Partition, (u128, u128)>,
) {
    if chosen.len() == k {
        let sigma = prefix.inverse();
        // monodromy closure
        assert!(prefix.compose_unchecked(&sigma).is_identity());
        let transitive = is_transitive(chosen, prefix.degree());
        let e = out.entry(sigma.cycle_type()).or_insert((0, 0));
        e.0 += transitive as u128;
        e.1 += 1;
        return;
    }
    for s in cycles {
        chosen.push(s.clone());
        table_rec(cycles, k, &prefix.compose_unchecked(s), chosen, out);
        chosen.pop();
    }
}

fn check_d(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidQuery(format!("need d >= 2, got {d}")));
    }
    Ok(())
}

fn inv_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(factorial(n)))
}

/// `Σ_{k <= k_max} (z^k/k!) Δ_d^k(e^{p_1})`, truncated at weight `w_max`.
pub fn build_hhat_series(d: u32, w_max: u32, k_max: u32) -> Result<ZSeries> {
    check_d(d)?;
    let op = OperatorSpec::delta(d)?;
    let mut out = ZSeries::zero(k_max, w_max);
    let mut current = PPolynomial::exp_p1(w_max);
    for k in 0..=k_max {
        let slice = current.scale(&inv_factorial(k));
        for (m, c) in slice.terms() {
            out.add_term(k, m.clone(), c.clone());
        }
        if k < k_max {
            current = apply_operator(&op, &current)?;
        }
    }
    Ok(out)
}

fn bruteforce_series(d: u32, w_max: u32, k_max: u32, connected: bool) -> Result<ZSeries> {
    check_d(d)?;
    let mut out = if connected {
        ZSeries::zero(k_max, w_max)
    } else {
        ZSeries::one(k_max, w_max)
    };
    for n in 1..=w_max {
        for k in 0..=k_max {
            let table = HurwitzTable::compute(n, d, k);
            let norm = inv_factorial(n) * inv_factorial(k);
            for (alpha, c, h) in table.rows() {
                let x = if connected { c } else { h };
                if x > 0 {
                    out.add_term(
                        k,
                        PMonomial::from_partition(&alpha),
                        &norm * Rational::from_integer(BigInt::from(x)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// `Ĥ^{[d]}` with coefficients taken from brute-force disconnected counts.
pub fn hhat_series_bruteforce(d: u32, w_max: u32, k_max: u32) -> Result<ZSeries> {
    bruteforce_series(d, w_max, k_max, false)
}

/// `H^{[d]}` with coefficients taken from brute-force connected counts.
pub fn h_series_bruteforce(d: u32, w_max: u32, k_max: u32) -> Result<ZSeries> {
    bruteforce_series(d, w_max, k_max, true)
}

/// `log Ĥ`, the connected generating series.
pub fn connected_from_log(s: &ZSeries) -> Result<ZSeries> {
    s.log()
}

/// `n! k! [z^k p_α] s`, the integer count a series coefficient encodes.
pub fn series_count(s: &ZSeries, k: u32, alpha: &Partition) -> Rational {
    let m = PMonomial::from_partition(alpha);
    s.coeff(k, &m) * Rational::from_integer(BigInt::from(factorial(alpha.weight()) * factorial(k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub connected: bool,
    pub lhs: PPolynomial,
    pub rhs: PPolynomial,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn recursion(n: u32, d: u32, k: u32, connected: bool) -> Result<RecursionReport> {
    if k == 0 {
        return Err(Error::InvalidQuery("the recursion needs k >= 1".into()));
    }
    let lhs = HurwitzTable::compute(n, d, k).generating_polynomial(connected);
    let mut rhs = PPolynomial::zero();
    if n >= d {
        let prev = HurwitzTable::compute(n, d, k - 1);
        let hook = Partition::hook_cycle(d, n)?;
        for (alpha, c, h) in prev.rows() {
            let x = if connected { c } else { h };
            if x == 0 {
                continue;
            }
            let g = Permutation::canonical_of_type(&alpha);
            let image =
                crate::psymring::phi_linear(&crate::permgroup::multiply_class_left(&hook, &g)?);
            rhs = &rhs + &image.scale(&Rational::from_integer(BigInt::from(x)));
        }
    }
    Ok(RecursionReport {
        n,
        d,
        k,
        connected,
        lhs,
        rhs,
    })
}

/// `Σ_α ĥ_k(α) p_α = Σ_α' ĥ_{k-1}(α') Φ(K_{(d,1^{n-d})} g_α')`, both sides
/// by brute force.
pub fn verify_recursion(n: u32, d: u32, k: u32) -> Result<RecursionReport> {
    recursion(n, d, k, false)
}

/// The same identity with connected counts, which does not hold in general.
pub fn recursion_connected_diagnostic(n: u32, d: u32, k: u32) -> Result<RecursionReport> {
    recursion(n, d, k, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeReport {
    pub d: u32,
    pub w_max: u32,
    pub k_max: u32,
    /// W-flow series equals the brute-force series.
    pub flow_matches_bruteforce: bool,
    /// `∂_z Ĥ = Δ_d Ĥ` up to `z^{k_max-1}` on the brute-force series.
    pub pde_holds: bool,
    /// `Ĥ(0, p) = e^{p_1}`.
    pub initial_condition_holds: bool,
    pub mismatches: Vec<String>,
}

impl PdeReport {
    pub fn passed(&self) -> bool {
        self.flow_matches_bruteforce && self.pde_holds && self.initial_condition_holds
    }
}

fn describe_diff(label: &str, a: &ZSeries, b: &ZSeries, out: &mut Vec<String>) {
    let diff = a.sub(b);
    let first = diff
        .terms()
        .next()
        .map(|(k, m, c)| format!("{label}: first difference at z^{k} {m}: {c}"));
    out.extend(first);
}

pub fn verify_pde(d: u32, w_max: u32, k_max: u32) -> Result<PdeReport> {
    let flow = build_hhat_series(d, w_max, k_max)?;
    let brute = hhat_series_bruteforce(d, w_max, k_max)?;
    let mut mismatches = Vec::new();

    let flow_matches_bruteforce = flow == brute;
    if !flow_matches_bruteforce {
        describe_diff("flow vs brute force", &flow, &brute, &mut mismatches);
    }

    let pde_holds = if k_max == 0 {
        true
    } else {
        let op = OperatorSpec::delta(d)?;
        let lhs = brute.dz();
        let rhs = brute
            .map_slices(|p| apply_operator(&op, p).expect("valid operator"))
            .truncate(k_max - 1, w_max);
        let ok = lhs == rhs;
        if !ok {
            describe_diff("∂_z Ĥ vs Δ_d Ĥ", &lhs, &rhs, &mut mismatches);
        }
        ok
    };

    let initial = brute.z_slice(0);
    let initial_condition_holds = initial == PPolynomial::exp_p1(w_max);
    if !initial_condition_holds {
        mismatches.push(format!("Ĥ(0,p) = {initial}"));
    }

    Ok(PdeReport {
        d,
        w_max,
        k_max,
        flow_matches_bruteforce,
        pde_holds,
        initial_condition_holds,
        mismatches,
    })
}

impl ZSeries {
    /// True when every stored coefficient is an integer multiple of
    /// `1/(n! k!)`, as for a Hurwitz generating series.
    pub fn has_count_denominators(&self) -> bool {
        self.terms().all(|(k, m, c)| {
            let scaled =
                c * Rational::from_integer(BigInt::from(factorial(m.weight()) * factorial(k)));
            scaled.is_integer() && !scaled.is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cov_examples() {
        assert_eq!(cov_bruteforce(1, &[part(&[1])]).unwrap(), 1);
        assert_eq!(cov_bruteforce(2, &[part(&[2]), part(&[2])]).unwrap(), 1);
        assert_eq!(
            cov_bruteforce(3, &[part(&[2, 1]), part(&[2, 1]), part(&[3])]).unwrap(),
            6
        );
        assert!(cov_bruteforce(3, &[part(&[2])]).is_err());
    }

    #[test]
    fn hurwitz_examples() {
        let h = |alpha: &[u32], connected| {
            hurwitz_number(&HurwitzQuery::new(2, 2, part(alpha), connected).unwrap()).unwrap()
        };
        assert_eq!(h(&[3], true), 6);
        assert_eq!(h(&[1, 1, 1], true), 0);
        assert_eq!(h(&[1, 1, 1], false), 3);
        assert!(HurwitzQuery::new(4, 1, part(&[3]), true).is_err());
        assert!(HurwitzQuery::new(1, 1, part(&[3]), true).is_err());
    }

    #[test]
    fn table_agrees_with_queries() {
        let t = HurwitzTable::compute(3, 2, 2);
        assert_eq!(t.get(&part(&[3])), (6, 6));
        assert_eq!(t.get(&part(&[1, 1, 1])), (0, 3));
        assert_eq!(t.get(&part(&[2, 1])), (0, 0));
        let t0 = HurwitzTable::compute(1, 2, 0);
        assert_eq!(t0.get(&part(&[1])), (1, 1));
    }

    #[test]
    fn hhat_series_examples() {
        let s = build_hhat_series(2, 3, 2).unwrap();
        assert_eq!(s.coeff(0, &PMonomial::from_pairs([(1, 2)])), q(1, 2));
        assert_eq!(s.coeff(1, &PMonomial::p(2)), q(1, 2));
        assert!(s.coeff(1, &PMonomial::p(1)).is_zero());
        let s3 = build_hhat_series(3, 3, 1).unwrap();
        assert_eq!(s3.coeff(0, &PMonomial::from_pairs([(1, 2)])), q(1, 2));
    }

    #[test]
    fn connected_log_examples() {
        let h = connected_from_log(&build_hhat_series(2, 3, 2).unwrap()).unwrap();
        // (1/3!)(1/2!) h_2((3)) with h_2((3)) = 6
        assert_eq!(h.coeff(2, &PMonomial::p(3)), q(6, 12));
        assert_eq!(h.coeff(0, &PMonomial::p(1)), q(1, 1));
        assert!(h.coeff(2, &PMonomial::from_pairs([(1, 3)])).is_zero());
        assert!(connected_from_log(&ZSeries::zero(1, 1)).is_err());
    }

    #[test]
    fn recursion_examples() {
        let r = verify_recursion(3, 2, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, "3*p1^3 + 6*p3".parse().unwrap());
        let r = verify_recursion(2, 2, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, "p2".parse().unwrap());
        let r = verify_recursion(1, 2, 1).unwrap();
        assert!(r.holds() && r.lhs.is_zero());
        assert!(!recursion_connected_diagnostic(3, 2, 2).unwrap().holds());
    }

    #[test]
    fn pde_examples() {
        assert!(verify_pde(2, 4, 3).unwrap().passed());
        assert!(verify_pde(3, 4, 2).unwrap().passed());
        for d in 2..=4 {
            assert!(verify_pde(d, 3, 0).unwrap().passed());
        }
    }
}
