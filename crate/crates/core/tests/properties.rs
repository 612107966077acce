use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use semicomplete::checker::{brown_complete, check_at_j, unreachable_top_quotient};
use semicomplete::exact_arith::{GaussianRational, HalfQPolynomial, Monomial, Rational};
use semicomplete::partition::{
    count_distinct_partitions, partition_counts, reachable, reachable_set, witness, NumeratorSet,
};
use semicomplete::qseries::{
    gaussian_binomial, odd_product, q_binomial_theorem_check, square_identity_check, F_polynomial,
};
use semicomplete::sequences::{self, ArithmeticSpec, HypercubeCutSpec, SequenceSource};

/// All subset sums of `values` with multiplicity, by walking every mask.
fn brute_counts(values: &[u64]) -> Vec<u64> {
    let total: u64 = values.iter().sum();
    let mut counts = vec![0u64; total as usize + 1];
    for mask in 0u64..(1 << values.len()) {
        let s: u64 = values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).sum();
        counts[s as usize] += 1;
    }
    counts
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        GaussianRational::new(Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap())
    })
}

fn poly() -> impl Strategy<Value = HalfQPolynomial> {
    prop::collection::vec((-6i64..=6, gaussian()), 0..5).prop_map(|terms| {
        let mut p = HalfQPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    })
}

fn plain_poly() -> impl Strategy<Value = HalfQPolynomial> {
    prop::collection::vec(-5i64..=5, 0..6).prop_map(|c| HalfQPolynomial::from_q_coefficients(&c))
}

fn sorted_values(max_len: usize, max_value: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..=max_value, 1..=max_len).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(), r in poly(), t in poly()) {
        prop_assert_eq!(&(&p + &r) * &t, &(&p * &t) + &(&r * &t));
        prop_assert_eq!(&p * &(&r * &t), &(&p * &r) * &t);
        prop_assert_eq!(&p * &r, &r * &p);
        if !p.is_zero() && !r.is_zero() {
            prop_assert_eq!((&p * &r).half_degree(), Some(p.half_degree().unwrap() + r.half_degree().unwrap()));
        }
    }

    #[test]
    fn exact_division_recovers_factor(p in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let product = &p * &d;
        prop_assert_eq!(product.divide_exact(&d).unwrap(), p);
    }

    #[test]
    fn evaluation_is_multiplicative(p in plain_poly(), r in plain_poly(), n in -5i64..=5, den in 1i64..=5) {
        let v = GaussianRational::real(Rational::new(n, den).unwrap());
        let lhs = (&p * &r).eval(&v).unwrap();
        let rhs = &p.eval(&v).unwrap() * &r.eval(&v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_is_idempotent(n in -1000i64..1000, d in 1i64..1000) {
        let x = Rational::new(n, d).unwrap();
        prop_assert_eq!(x.normalized(), x.clone());
        prop_assert_eq!(x.normalized().normalized(), x.normalized());
    }

    #[test]
    fn subset_sums_match_enumeration(values in sorted_values(12, 40)) {
        let set = NumeratorSet::new(values.clone()).unwrap();
        let brute = brute_counts(&values);
        let counts = partition_counts(&set);
        let sums = reachable_set(&set);
        prop_assert_eq!(counts.iter().fold(BigUint::zero(), |a, c| a + c), BigUint::one() << values.len());
        for (t, &c) in brute.iter().enumerate() {
            let t = t as u64;
            prop_assert_eq!(&counts[t as usize], &BigUint::from(c));
            prop_assert_eq!(sums.contains(t), c > 0);
            prop_assert_eq!(reachable(&set, t), c > 0);
            prop_assert_eq!(count_distinct_partitions(&set, t), count_distinct_partitions(&set, set.total() - t));
            match witness(&set, t) {
                Some(w) => prop_assert!(w.is_valid_for(&set) && w.target == t),
                None => prop_assert_eq!(c, 0),
            }
        }
    }

    #[test]
    fn counts_are_product_coefficients(values in sorted_values(8, 12)) {
        let set = NumeratorSet::new(values.clone()).unwrap();
        let product = values.iter().fold(HalfQPolynomial::one(), |acc, &v| {
            &acc * &(&HalfQPolynomial::one() + &HalfQPolynomial::q_term(1, v as i64))
        });
        for (s, c) in partition_counts(&set).iter().enumerate() {
            let coeff = product.coefficient_at(s as i64);
            prop_assert_eq!(coeff.re.numerator().to_biguint().unwrap(), c.clone());
        }
    }

    #[test]
    fn refutations_revalidate(a in 1u64..=6, b in 0u64..=6, j in 3usize..=12) {
        let set = ArithmeticSpec::new(a, b).unwrap().prefix(j).unwrap();
        let verdict = check_at_j(&set, j).unwrap();
        let brute = brute_counts(set.values());
        for &k in &verdict.failures {
            prop_assert_eq!(brute[(k * j as u64) as usize], 0);
        }
        prop_assert!(verdict.failures.iter().all(|&k| 1 <= k && k <= verdict.k_max));
    }
}

#[test]
fn cut_numbers_monotone() {
    for m in 1..=6u32 {
        let row = sequences::cut_sequence(m, 60);
        assert!(row.windows(2).all(|w| w[0] < w[1]), "M = {m}");
        if m > 1 {
            let lower = sequences::cut_sequence(m - 1, 60);
            assert!(row.iter().zip(&lower).all(|(hi, lo)| hi >= lo));
        }
    }
}

#[test]
fn tail_thresholds_are_sharp() {
    for m in 1..=4u32 {
        let threshold = sequences::tail_threshold(m).unwrap();
        for t in 1..=threshold {
            assert!(!sequences::tail_dominates(m, t).unwrap(), "M={m} t={t}");
        }
        for t in threshold + 1..=2000 {
            assert!(sequences::tail_dominates(m, t).unwrap(), "M={m} t={t}");
        }
    }
}

#[test]
fn odd_and_shifted_consecutive_sequences_pass() {
    for j in 3..=50usize {
        let odd = ArithmeticSpec::new(1, 2).unwrap().prefix(j).unwrap();
        assert!(check_at_j(&odd, j).unwrap().passes(), "odd j={j}");
        let shifted = ArithmeticSpec::new(2, 1).unwrap().prefix(j).unwrap();
        assert!(check_at_j(&shifted, j).unwrap().passes(), "shifted j={j}");
        assert!(!unreachable_top_quotient(j as u64).is_integer());
    }
}

#[test]
fn brown_holds_on_cut_prefixes() {
    for m in 1..=4u32 {
        let prefix = HypercubeCutSpec::new(m).unwrap().prefix(200).unwrap();
        assert!(brown_complete(&prefix), "M = {m}");
    }
    let consecutive = ArithmeticSpec::new(1, 1).unwrap().prefix(200).unwrap();
    assert!(brown_complete(&consecutive));
}

#[test]
fn gaussian_binomials_specialise_and_reflect() {
    for m in 0..=12u64 {
        for n in 0..=m {
            let g = gaussian_binomial(m, n);
            assert_eq!(g, gaussian_binomial(m, m - n));
            let at_one = g.eval(&GaussianRational::one()).unwrap();
            let binom = (0..n).fold(BigUint::one(), |acc, i| acc * (m - i) / (i + 1));
            assert_eq!(at_one.re.numerator().to_biguint().unwrap(), binom, "[{m} {n}] at q=1");
            let coeffs = g.dense_q_coefficients().unwrap();
            assert_eq!(coeffs.len() as u64, n * (m - n) + 1);
            let reversed: Vec<_> = coeffs.iter().rev().cloned().collect();
            assert_eq!(coeffs, reversed);
            assert!(coeffs.iter().all(|c| c.is_integer() && !c.is_negative()));
        }
    }
}

#[test]
fn q_identities_over_monomial_grid() {
    for e in -4i64..=4 {
        for sign in [1i64, -1] {
            let a = Monomial::new(GaussianRational::from_integer(sign), e).unwrap();
            for n in 0..=10u64 {
                assert!(q_binomial_theorem_check(&a, n), "binomial theorem a={a} n={n}");
                assert!(square_identity_check(&a, n), "square identity a={a} n={n}");
            }
        }
    }
}

#[test]
fn f_matches_odd_product_and_counts() {
    for j in 1..=6u64 {
        let f = F_polynomial(j).unwrap();
        assert_eq!(f, odd_product(j));
        let odds: Vec<u64> = (1..=j).map(|n| 2 * n - 1).collect();
        let brute = brute_counts(&odds);
        for (s, &c) in brute.iter().enumerate() {
            assert_eq!(f.coefficient_at(s as i64), GaussianRational::from_integer(c as i64));
        }
    }
}

#[test]
fn restricted_coefficients_are_symmetric() {
    for j in 3..=20u64 {
        let p = odd_product(j);
        for k in 0..=j {
            assert_eq!(p.coefficient_at((k * j) as i64), p.coefficient_at((j * j - k * j) as i64));
        }
    }
}
