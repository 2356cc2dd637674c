use num_bigint::BigInt;
use proptest::prelude::*;
use wop_core::permgroup::{all_permutations, multiply_class_left};
use wop_core::psymring::{p_to_x_subst, phi, phi_linear, series_exp, series_log};
use wop_core::{class_size, partitions, PMonomial, PPolynomial, Permutation, Rational, ZSeries};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn monomial(max_weight: u32) -> impl Strategy<Value = PMonomial> {
    prop::collection::vec(1u32..=max_weight, 0..=max_weight as usize).prop_map(move |idx| {
        let mut total = 0;
        PMonomial::from_indices(idx.into_iter().take_while(|&i| {
            total += i;
            total <= max_weight
        }))
    })
}

fn polynomial(max_weight: u32) -> impl Strategy<Value = PPolynomial> {
    prop::collection::vec((monomial(max_weight), coeff()), 0..5).prop_map(|terms| {
        let mut f = PPolynomial::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    })
}

fn series(k_max: u32, w_max: u32) -> impl Strategy<Value = ZSeries> {
    prop::collection::vec((0..=k_max, monomial(w_max), coeff()), 0..6).prop_map(move |terms| {
        let mut s = ZSeries::zero(k_max, w_max);
        for (k, m, c) in terms {
            if k > 0 || !m.is_one() {
                s.add_term(k, m, c);
            }
        }
        s
    })
}

#[test]
fn phi_depends_only_on_cycle_type() {
    for n in 1..=6 {
        for g in all_permutations(n) {
            assert_eq!(phi(&g), PMonomial::from_partition(&g.cycle_type()));
        }
    }
}

#[test]
fn class_multiplication_has_class_size_mass() {
    for n in 1..=7u32 {
        let gs: Vec<Permutation> = partitions(n)
            .iter()
            .map(Permutation::canonical_of_type)
            .collect();
        for lambda in partitions(n) {
            let size = class_size(&lambda, n).unwrap();
            for g in &gs {
                let image = phi_linear(&multiply_class_left(&lambda, g).unwrap());
                assert_eq!(image.mass(), Rational::from_integer(BigInt::from(size)));
            }
        }
    }
}

#[test]
fn exp_p1_coefficients() {
    let e = PPolynomial::exp_p1(4);
    assert_eq!(e.coeff(&PMonomial::from_pairs([(1, 4)])), q(1, 24));
    assert_eq!(e.len(), 5);
}

proptest! {
    #[test]
    fn display_parse_round_trip(f in polynomial(6)) {
        let back: PPolynomial = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn ring_axioms(f in polynomial(4), g in polynomial(4), h in polynomial(4)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn log_inverts_exp(s in series(3, 4)) {
        let e = series_exp(&s).unwrap();
        prop_assert_eq!(series_log(&e).unwrap(), s);
    }

    #[test]
    fn exp_inverts_log(s in series(2, 4)) {
        let u = s.add(&ZSeries::one(2, 4));
        prop_assert_eq!(series_exp(&series_log(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn exp_turns_sums_into_products(a in series(2, 3), b in series(2, 3)) {
        let lhs = series_exp(&a.add(&b)).unwrap();
        let rhs = series_exp(&a).unwrap().mul(&series_exp(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(f in polynomial(2), g in polynomial(2), n in 1usize..=3) {
        let lhs = p_to_x_subst(&(&f * &g), n);
        let rhs = p_to_x_subst(&f, n).mul(&p_to_x_subst(&g, n));
        prop_assert_eq!(lhs, rhs);
        let sum = p_to_x_subst(&(&f + &g), n);
        prop_assert_eq!(sum, p_to_x_subst(&f, n).add(&p_to_x_subst(&g, n)));
    }
}
