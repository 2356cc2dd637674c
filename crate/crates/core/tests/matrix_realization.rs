use itertools::Itertools;
use wop_core::permgroup::{all_permutations, d_cycles};
use wop_core::verify::per_monomial;
use wop_core::wop::{apply_operator, monomials_of_weight};
use wop_core::xmatrix::{
    apply_d_sequential, apply_d_tuple, apply_w_truncated, p_to_x_subst, trace_power,
    x_monomial_of_permutation,
};
use wop_core::{OperatorSpec, PPolynomial, Permutation, XMonomial, XPolynomial};

fn xpoly(m: XMonomial, bound: usize) -> XPolynomial {
    XPolynomial::from_monomial(m, bound).unwrap()
}

fn check_cycle_action(alpha: &Permutation, labels: &[usize], points: &[usize]) {
    let n = alpha.degree();
    let bound = *labels.iter().max().unwrap();
    let f = xpoly(
        x_monomial_of_permutation(alpha, labels, bound).unwrap(),
        bound,
    );
    let rows: Vec<usize> = points.iter().map(|&i| labels[i - 1]).collect();
    let c = Permutation::from_cycles(n, &[points]).unwrap();
    let expected = x_monomial_of_permutation(&alpha.compose(&c).unwrap(), labels, bound).unwrap();
    assert_eq!(
        apply_d_tuple(&rows, &f).unwrap(),
        xpoly(expected, bound),
        "α={alpha}, labels={labels:?}, i={points:?}"
    );
}

#[test]
fn d_tuple_rotates_the_quiver() {
    for n in 1..=5 {
        let labelings: Vec<Vec<usize>> = if n <= 4 {
            (1..=n).permutations(n).collect()
        } else {
            vec![
                (1..=n).collect(),
                (1..=n).rev().collect(),
                (3..n + 3).collect(),
            ]
        };
        for d in 1..=n.min(3) {
            for alpha in all_permutations(n) {
                for labels in &labelings {
                    for points in (1..=n).permutations(d) {
                        check_cycle_action(&alpha, labels, &points);
                    }
                }
            }
        }
    }
}

#[test]
fn per_monomial_identity_with_repeated_labels() {
    for n in 1..=4 {
        for d in 1..=3 {
            for g in all_permutations(n) {
                for labels in (0..n).map(|_| 1..=3usize).multi_cartesian_product() {
                    assert_eq!(per_monomial(d, &g, &labels), None);
                }
            }
        }
    }
}

#[test]
fn per_monomial_case_with_a_repeated_factor() {
    // g = (12)(34) with labels (1,2,1,2): M = X12^2 X21^2
    let g = Permutation::parse(4, "(1 2)(3 4)").unwrap();
    let labels = [1, 2, 1, 2];
    let m = x_monomial_of_permutation(&g, &labels, 2).unwrap();
    assert_eq!(m, XMonomial::from_pairs([((1, 2), 2), ((2, 1), 2)]));
    let mut rhs = XPolynomial::zero(2);
    for s in d_cycles(4, 2) {
        let t = x_monomial_of_permutation(&s.compose(&g).unwrap(), &labels, 2).unwrap();
        rhs = rhs.add(&xpoly(t, 2));
    }
    assert_eq!(apply_w_truncated(2, &xpoly(m, 2)), rhs);
}

#[test]
fn substitution_intertwines_operators() {
    for d in 1..=3u32 {
        let op = OperatorSpec::delta(d).unwrap();
        for big_n in 1..=4 {
            for w in 0..=4 {
                for m in monomials_of_weight(w) {
                    let f = PPolynomial::from_monomial(m.clone());
                    let lhs = apply_w_truncated(d as usize, &p_to_x_subst(&f, big_n));
                    let rhs = p_to_x_subst(&apply_operator(&op, &f).unwrap(), big_n);
                    assert_eq!(lhs, rhs, "d={d}, N={big_n}, m={m}");
                }
            }
        }
    }
}

#[test]
fn power_sums_become_traces() {
    let f: PPolynomial = "p2".parse().unwrap();
    assert_eq!(p_to_x_subst(&f, 3), trace_power(3, 2));
}

#[test]
fn normal_ordering_changes_the_result() {
    let f = xpoly(XMonomial::from_entries([(1, 1)]), 1);
    assert!(apply_d_tuple(&[1, 1], &f).unwrap().is_zero());
    assert_eq!(apply_d_sequential(&[1, 1], &f).unwrap(), f);
}

#[test]
fn labels_beyond_bound_are_rejected() {
    let g = Permutation::identity(1);
    assert!(x_monomial_of_permutation(&g, &[5], 4).is_err());
    assert!(x_monomial_of_permutation(&g, &[1, 2], 4).is_err());
    assert_eq!(
        x_monomial_of_permutation(&g, &[5], 5).unwrap(),
        XMonomial::from_entries([(5, 5)])
    );
}
