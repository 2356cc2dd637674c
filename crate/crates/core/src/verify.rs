//! Named invariant suites that cross-check the three realizations of
//! `W([d])` and the Hurwitz pipeline. Every comparison is exact.
//!
//! Each suite walks its cases in increasing size and stops at the first
//! failure, so the reported counterexample is the smallest one found.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinat::{count_d_cycles, partitions, Partition};
use crate::error::{Error, Result};
use crate::hurwitz::{
    build_hhat_series, connected_from_log, hurwitz_number, recursion_connected_diagnostic,
    series_count, verify_pde, verify_recursion, HurwitzQuery, HurwitzTable,
};
use crate::permgroup::{all_permutations, d_cycles, multiply_class_left, Permutation};
use crate::psymring::{phi_linear, PMonomial, PPolynomial};
use crate::wop::{apply_operator, commutator, full_cycles, monomials_of_weight, OperatorSpec};
use crate::xmatrix::{
    apply_d_tuple, apply_w_truncated, p_to_x_subst, x_monomial_of_permutation, XPolynomial,
};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    TheoremW,
    CutJoin,
    Beta,
    Commute,
    XMatrix,
    Hurwitz,
    Pde,
    Recursion,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::TheoremW,
        Suite::CutJoin,
        Suite::Beta,
        Suite::Commute,
        Suite::XMatrix,
        Suite::Hurwitz,
        Suite::Pde,
        Suite::Recursion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremW => "theorem-w",
            Suite::CutJoin => "cutjoin",
            Suite::Beta => "beta",
            Suite::Commute => "commute",
            Suite::XMatrix => "xmatrix",
            Suite::Hurwitz => "hurwitz",
            Suite::Pde => "pde",
            Suite::Recursion => "recursion",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown suite `{s}`")))
    }
}

/// Overrides for the default bounds of each suite. `None` keeps the
/// default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: Option<u32>,
    pub d_max: Option<u32>,
    pub w_max: Option<u32>,
    pub k_max: Option<u32>,
    pub big_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} checks)", self.suite, self.checks),
            Some(msg) => write!(
                f,
                "{}: FAIL after {} checks: {msg}",
                self.suite, self.checks
            ),
        }
    }
}

/// Runs `check` on every case in parallel and reports the first failure in
/// case order.
fn run_cases<T, F>(suite: Suite, cases: Vec<T>, check: F) -> SuiteReport
where
    T: Send + Sync,
    F: Fn(&T) -> Option<String> + Send + Sync,
{
    let results: Vec<Option<String>> = cases.par_iter().map(&check).collect();
    let pos = results.iter().position(Option::is_some);
    let checks = pos.map_or(results.len(), |p| p + 1);
    let failure = pos.and_then(|p| results.into_iter().nth(p).flatten());
    SuiteReport {
        suite,
        checks,
        failure,
    }
}

fn err_msg(e: Error) -> Option<String> {
    Some(format!("error: {e}"))
}

fn int(x: u128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn run(suite: Suite, bounds: &Bounds) -> Vec<SuiteReport> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, bounds)).collect(),
        s => vec![run_one(s, bounds)],
    }
}

pub fn run_one(suite: Suite, b: &Bounds) -> SuiteReport {
    match suite {
        Suite::TheoremW => theorem_w(b.n_max.unwrap_or(8), b.d_max.unwrap_or(4)),
        Suite::CutJoin => cut_join(b.w_max.unwrap_or(10)),
        Suite::Beta => beta(b.d_max.unwrap_or(4), b.w_max.unwrap_or(8)),
        Suite::Commute => commute(b.d_max.unwrap_or(4), b.w_max.unwrap_or(8)),
        Suite::XMatrix => xmatrix(XMatrixBounds {
            w_max: b.w_max.unwrap_or(4),
            big_n: b.big_n.unwrap_or(4),
            d_max: b.d_max.unwrap_or(3),
            n_max: b.n_max.unwrap_or(4),
            labels: b.big_n.unwrap_or(3),
            cycle_n_max: b.n_max.unwrap_or(5),
        }),
        Suite::Hurwitz => hurwitz(
            b.n_max.unwrap_or(6),
            b.n_max.unwrap_or(5),
            b.d_max.unwrap_or(3),
            b.k_max.unwrap_or(3),
        ),
        Suite::Pde => pde(
            b.d_max.unwrap_or(3),
            b.w_max.unwrap_or(5),
            b.k_max.unwrap_or(3),
        ),
        Suite::Recursion => recursion(
            b.n_max.unwrap_or(6),
            b.d_max.unwrap_or(3),
            b.k_max.unwrap_or(3),
        ),
        Suite::All => unreachable!("expanded by run"),
    }
}

fn all_partitions_up_to(n_max: u32) -> Vec<Partition> {
    (1..=n_max).flat_map(partitions).collect()
}

fn monomials_up_to(w_max: u32) -> Vec<PMonomial> {
    (0..=w_max).flat_map(monomials_of_weight).collect()
}

/// `Δ_d p_λ = Φ(K_{(d,1^{n-d})} g_λ)` for every `λ ⊢ n ≤ n_max`,
/// `2 <= d <= d_max`.
pub fn theorem_w(n_max: u32, d_max: u32) -> SuiteReport {
    let cases: Vec<(u32, Partition)> = all_partitions_up_to(n_max)
        .into_iter()
        .flat_map(|l| (2..=d_max).map(move |d| (d, l.clone())))
        .collect();
    run_cases(Suite::TheoremW, cases, |(d, lambda)| {
        let n = lambda.weight();
        let op = match OperatorSpec::delta(*d) {
            Ok(op) => op,
            Err(e) => return err_msg(e),
        };
        let lhs = match apply_operator(
            &op,
            &PPolynomial::from_monomial(PMonomial::from_partition(lambda)),
        ) {
            Ok(p) => p,
            Err(e) => return err_msg(e),
        };
        let rhs = if n < *d {
            PPolynomial::zero()
        } else {
            let hook = Partition::hook_cycle(*d, n).expect("d <= n");
            match multiply_class_left(&hook, &Permutation::canonical_of_type(lambda)) {
                Ok(x) => phi_linear(&x),
                Err(e) => return err_msg(e),
            }
        };
        (lhs != rhs).then(|| format!("d={d}, λ={lambda}: Δ_d p_λ = {lhs}, Φ(K g_λ) = {rhs}"))
    })
}

/// `Δ_2` equals the closed-form cut-and-join operator on monomials of
/// weight `<= w_max`.
pub fn cut_join(w_max: u32) -> SuiteReport {
    let d2 = OperatorSpec::delta(2).expect("d = 2");
    let cj = OperatorSpec::CutAndJoinClosedForm;
    run_cases(Suite::CutJoin, monomials_up_to(w_max), |m| {
        let f = PPolynomial::from_monomial(m.clone());
        match (apply_operator(&d2, &f), apply_operator(&cj, &f)) {
            (Ok(a), Ok(b)) => (a != b).then(|| format!("{m}: Δ_2 = {a}, cut-and-join = {b}")),
            (Err(e), _) | (_, Err(e)) => err_msg(e),
        }
    })
}

/// `Δ_β = Δ_d` for every full cycle `β` of `S_d`, `d <= d_max`.
pub fn beta(d_max: u32, w_max: u32) -> SuiteReport {
    let monos = monomials_up_to(w_max);
    let cases: Vec<(u32, Permutation, PMonomial)> = (1..=d_max)
        .flat_map(|d| full_cycles(d as usize).into_iter().map(move |b| (d, b)))
        .flat_map(|(d, b)| monos.iter().map(move |m| (d, b.clone(), m.clone())))
        .collect();
    run_cases(Suite::Beta, cases, |(d, b, m)| {
        let f = PPolynomial::from_monomial(m.clone());
        let ops =
            OperatorSpec::delta(*d).and_then(|x| Ok((x, OperatorSpec::delta_beta(b.clone())?)));
        let (delta, delta_b) = match ops {
            Ok(x) => x,
            Err(e) => return err_msg(e),
        };
        match (apply_operator(&delta, &f), apply_operator(&delta_b, &f)) {
            (Ok(x), Ok(y)) => (x != y).then(|| format!("β={b}, {m}: Δ_β = {y}, Δ_{d} = {x}")),
            (Err(e), _) | (_, Err(e)) => err_msg(e),
        }
    })
}

/// `[Δ_{d1}, Δ_{d2}] = 0` for `d1 < d2 <= d_max`.
pub fn commute(d_max: u32, w_max: u32) -> SuiteReport {
    let monos = monomials_up_to(w_max);
    let cases: Vec<(u32, u32, PMonomial)> = (1..=d_max)
        .tuple_combinations()
        .flat_map(|(d1, d2)| monos.iter().map(move |m| (d1, d2, m.clone())))
        .collect();
    run_cases(Suite::Commute, cases, |(d1, d2, m)| {
        match commutator(*d1, *d2, &PPolynomial::from_monomial(m.clone())) {
            Ok(c) => (!c.is_zero()).then(|| format!("[Δ_{d1}, Δ_{d2}] {m} = {c}")),
            Err(e) => err_msg(e),
        }
    })
}

struct XMatrixBounds {
    w_max: u32,
    big_n: usize,
    d_max: u32,
    n_max: u32,
    labels: usize,
    cycle_n_max: u32,
}

enum XCase {
    Intertwine {
        d: u32,
        big_n: usize,
        m: PMonomial,
    },
    PerMonomial {
        d: u32,
        g: Permutation,
        labels: Vec<usize>,
    },
    CycleAction {
        alpha: Permutation,
        points: Vec<usize>,
    },
}

fn xmatrix(b: XMatrixBounds) -> SuiteReport {
    let mut cases = Vec::new();
    for d in 1..=b.d_max {
        for big_n in 1..=b.big_n {
            for m in monomials_up_to(b.w_max) {
                cases.push(XCase::Intertwine { d, big_n, m });
            }
        }
    }
    for n in 1..=b.n_max as usize {
        for d in 1..=b.d_max {
            for g in all_permutations(n) {
                for labels in (0..n).map(|_| 1..=b.labels).multi_cartesian_product() {
                    cases.push(XCase::PerMonomial {
                        d,
                        g: g.clone(),
                        labels,
                    });
                }
            }
        }
    }
    for n in 1..=b.cycle_n_max as usize {
        for d in 1..=(b.d_max as usize).min(n) {
            for alpha in all_permutations(n) {
                for points in (1..=n).permutations(d) {
                    cases.push(XCase::CycleAction {
                        alpha: alpha.clone(),
                        points,
                    });
                }
            }
        }
    }
    run_cases(Suite::XMatrix, cases, |case| match case {
        XCase::Intertwine { d, big_n, m } => {
            let f = PPolynomial::from_monomial(m.clone());
            let image = match OperatorSpec::delta(*d).and_then(|op| apply_operator(&op, &f)) {
                Ok(p) => p,
                Err(e) => return err_msg(e),
            };
            let lhs = apply_w_truncated(*d as usize, &p_to_x_subst(&f, *big_n));
            let rhs = p_to_x_subst(&image, *big_n);
            (lhs != rhs).then(|| {
                format!("d={d}, N={big_n}, m={m}: W(subst m) = {lhs}, subst(Δ_d m) = {rhs}")
            })
        }
        XCase::PerMonomial { d, g, labels } => per_monomial(*d as usize, g, labels),
        XCase::CycleAction { alpha, points } => cycle_action(alpha, points),
    })
}

/// `W([d]) M_g(a) = Σ_{σ d-cycle} M_{σ∘g}(a)`, one label tuple.
pub fn per_monomial(d: usize, g: &Permutation, labels: &[usize]) -> Option<String> {
    let bound = labels.iter().copied().max().unwrap_or(1);
    let n = g.degree();
    let m = match x_monomial_of_permutation(g, labels, bound) {
        Ok(m) => m,
        Err(e) => return err_msg(e),
    };
    let lhs = apply_w_truncated(
        d,
        &XPolynomial::from_monomial(m.clone(), bound).expect("labels within bound"),
    );
    let mut rhs = XPolynomial::zero(bound);
    if d == 1 {
        // n one-cycles, each acting as the identity
        rhs = XPolynomial::from_monomial(m, bound)
            .expect("labels within bound")
            .scale(&int(count_d_cycles(n as u32, 1)));
    } else {
        for s in d_cycles(n, d) {
            let term =
                x_monomial_of_permutation(&s.compose(g).expect("same degree"), labels, bound)
                    .expect("labels within bound");
            rhs = rhs.add(&XPolynomial::from_monomial(term, bound).expect("labels within bound"));
        }
    }
    (lhs != rhs).then(|| format!("d={d}, g={g}, labels={labels:?}: W M = {lhs}, Σ M = {rhs}"))
}

/// `D_(i_1..i_d) M_α = M_{α∘(i_1 … i_d)}` with the identity labelling.
pub fn cycle_action(alpha: &Permutation, points: &[usize]) -> Option<String> {
    let n = alpha.degree();
    let labels: Vec<usize> = (1..=n).collect();
    let m = x_monomial_of_permutation(alpha, &labels, n).expect("labels within bound");
    let f = XPolynomial::from_monomial(m, n).expect("labels within bound");
    let lhs = match apply_d_tuple(points, &f) {
        Ok(p) => p,
        Err(e) => return err_msg(e),
    };
    let c = Permutation::from_cycles(n, &[points]).expect("distinct points");
    let target = x_monomial_of_permutation(&alpha.compose(&c).expect("same degree"), &labels, n)
        .expect("labels within bound");
    let rhs = XPolynomial::from_monomial(target, n).expect("labels within bound");
    (lhs != rhs).then(|| format!("α={alpha}, tuple={points:?}: D M_α = {lhs}, expected {rhs}"))
}

/// Brute-force counts against the W-flow series (disconnected) and its
/// logarithm (connected), plus fixed spot values.
pub fn hurwitz(n_max: u32, connected_n_max: u32, d_max: u32, k_max: u32) -> SuiteReport {
    let mut checks = 0;
    let spots: [(&[u32], bool, u128); 3] = [
        (&[3], true, 6),
        (&[1, 1, 1], false, 3),
        (&[1, 1, 1], true, 0),
    ];
    for (alpha, connected, expected) in spots {
        checks += 1;
        let alpha = Partition::new(alpha.to_vec()).expect("valid partition");
        let got =
            HurwitzQuery::new(2, 2, alpha.clone(), connected).and_then(|q| hurwitz_number(&q));
        if got.as_ref().ok() != Some(&expected) {
            let kind = if connected { "h" } else { "ĥ" };
            return SuiteReport {
                suite: Suite::Hurwitz,
                checks,
                failure: Some(format!(
                    "{kind}_2^[2]({alpha}) = {got:?}, expected {expected}"
                )),
            };
        }
    }
    let cases: Vec<(u32, u32, u32)> = (2..=d_max)
        .flat_map(|d| (1..=n_max).flat_map(move |n| (0..=k_max).map(move |k| (d, n, k))))
        .collect();
    let series: Vec<_> = (2..=d_max)
        .map(|d| {
            let flow = build_hhat_series(d, n_max, k_max)?;
            let conn = connected_from_log(&flow.truncate(k_max, connected_n_max.min(n_max)))?;
            Ok((flow, conn))
        })
        .collect::<Result<_>>()
        .expect("d >= 2");
    let mut report = run_cases(Suite::Hurwitz, cases, |&(d, n, k)| {
        let (flow, conn) = &series[(d - 2) as usize];
        let table = HurwitzTable::compute(n, d, k);
        for (alpha, h, hhat) in table.rows() {
            let from_flow = series_count(flow, k, &alpha);
            if from_flow != int(hhat) {
                return Some(format!(
                    "d={d}, k={k}, α={alpha}: ĥ = {hhat}, flow gives {from_flow}"
                ));
            }
            if n <= connected_n_max {
                let from_log = series_count(conn, k, &alpha);
                if from_log != int(h) {
                    return Some(format!(
                        "d={d}, k={k}, α={alpha}: h = {h}, log gives {from_log}"
                    ));
                }
            }
        }
        None
    });
    report.checks += checks;
    report
}

/// PDE and initial condition for `2 <= d <= d_max`.
pub fn pde(d_max: u32, w_max: u32, k_max: u32) -> SuiteReport {
    run_cases(Suite::Pde, (2..=d_max).collect(), |&d| {
        match verify_pde(d, w_max, k_max) {
            Ok(r) if r.passed() => None,
            Ok(r) => Some(format!("d={d}: {}", r.mismatches.join("; "))),
            Err(e) => err_msg(e),
        }
    })
}

/// Disconnected recursion for all small cases, and the connected form
/// failing at `(n, d, k) = (3, 2, 2)`.
pub fn recursion(n_max: u32, d_max: u32, k_max: u32) -> SuiteReport {
    let cases: Vec<(u32, u32, u32)> = (2..=d_max)
        .flat_map(|d| (1..=n_max).flat_map(move |n| (1..=k_max).map(move |k| (d, n, k))))
        .collect();
    let mut report = run_cases(
        Suite::Recursion,
        cases,
        |&(d, n, k)| match verify_recursion(n, d, k) {
            Ok(r) if r.holds() => None,
            Ok(r) => Some(format!(
                "n={n}, d={d}, k={k}: LHS = {}, RHS = {}",
                r.lhs, r.rhs
            )),
            Err(e) => err_msg(e),
        },
    );
    if report.passed() {
        report.checks += 1;
        match recursion_connected_diagnostic(3, 2, 2) {
            Ok(r) if !r.holds() => {}
            Ok(r) => {
                report.failure = Some(format!(
                    "connected form unexpectedly holds at (3,2,2): {}",
                    r.lhs
                ))
            }
            Err(e) => report.failure = err_msg(e),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds {
            n_max: Some(3),
            d_max: Some(3),
            w_max: Some(3),
            k_max: Some(2),
            big_n: Some(2),
        };
        for r in run(Suite::All, &b) {
            assert!(r.passed(), "{r}");
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn cycle_action_detects_wrong_side() {
        // (12)(3) with tuple (1,3): the other composition order disagrees
        let alpha = Permutation::parse(3, "(1 2)").unwrap();
        assert!(cycle_action(&alpha, &[1, 3]).is_none());
        let n = 3;
        let labels: Vec<usize> = (1..=n).collect();
        let c = Permutation::from_cycles(n, &[[1usize, 3]]).unwrap();
        let f =
            XPolynomial::from_monomial(x_monomial_of_permutation(&alpha, &labels, n).unwrap(), n)
                .unwrap();
        let other = x_monomial_of_permutation(&c.compose(&alpha).unwrap(), &labels, n).unwrap();
        let lhs = apply_d_tuple(&[1, 3], &f).unwrap();
        assert_ne!(lhs, XPolynomial::from_monomial(other, n).unwrap());
    }
}
