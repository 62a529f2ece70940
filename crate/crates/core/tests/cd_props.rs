use cdhilbert::cd::{
    associator, basis_product, cd_multiply, find_zero_divisor, octonion_multiply_table, parse_element, CDElement,
};
use cdhilbert::rational::rat;
use cdhilbert::Rational;
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook doubling on plain coefficient vectors:
/// `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
fn oracle_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = oracle_mul(a, c);
    let db = oracle_mul(&oracle_conj(d), b);
    let da = oracle_mul(d, a);
    let bc = oracle_mul(b, &oracle_conj(c));
    ac.iter().zip(&db).map(|(p, q)| p - q).chain(da.iter().zip(&bc).map(|(p, q)| p + q)).collect()
}

fn oracle_conj(x: &[Rational]) -> Vec<Rational> {
    x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() }).collect()
}

fn element(level: u32) -> impl Strategy<Value = CDElement> {
    prop::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d)), 1usize << level)
        .prop_map(move |c| CDElement::from_coeffs(level, c).unwrap())
}

fn pair(level: u32) -> impl Strategy<Value = (CDElement, CDElement)> {
    (element(level), element(level))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn table_and_doubling_agree_on_octonions((x, y) in pair(3)) {
        prop_assert_eq!(octonion_multiply_table(&x, &y).unwrap(), cd_multiply(&x, &y).unwrap());
    }

    #[test]
    fn norm_is_multiplicative_up_to_octonions(level in 0u32..=3, seed in any::<u64>()) {
        let mut s = cdhilbert::sample::Sampler::new(seed);
        let (x, y) = (s.element(level), s.element(level));
        prop_assert_eq!(cd_multiply(&x, &y).unwrap().norm_sq(), x.norm_sq() * y.norm_sq());
    }

    #[test]
    fn sedenions_are_flexible((x, y) in pair(4)) {
        let lhs = cd_multiply(&x, &cd_multiply(&y, &x).unwrap()).unwrap();
        let rhs = cd_multiply(&cd_multiply(&x, &y).unwrap(), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn octonions_are_left_alternative((x, y) in pair(3)) {
        let lhs = cd_multiply(&x, &cd_multiply(&x, &y).unwrap()).unwrap();
        let rhs = cd_multiply(&cd_multiply(&x, &x).unwrap(), &y).unwrap();
        prop_assert_eq!(lhs, rhs);
        // skew-symmetry of the associator in its first two slots
        let z = CDElement::basis(3, 5);
        prop_assert_eq!(associator(&x, &y, &z).unwrap(), -&associator(&y, &x, &z).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn doubling_matches_oracle(level in 0u32..=5, seed in any::<u64>()) {
        let mut s = cdhilbert::sample::Sampler::new(seed);
        let (x, y) = (s.element(level), s.element(level));
        let product = cd_multiply(&x, &y).unwrap();
        prop_assert_eq!(product.coeffs(), &oracle_mul(x.coeffs(), y.coeffs())[..]);
    }

    #[test]
    fn conjugation_is_an_involutive_antihomomorphism(level in 0u32..=6, seed in any::<u64>()) {
        let mut s = cdhilbert::sample::Sampler::new(seed);
        let (x, y) = (s.element(level), s.element(level));
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        let lhs = cd_multiply(&x, &y).unwrap().conjugate();
        let rhs = cd_multiply(&y.conjugate(), &x.conjugate()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn literals_round_trip(level in 0u32..=5, seed in any::<u64>()) {
        let mut s = cdhilbert::sample::Sampler::new(seed);
        let x = s.element(level);
        prop_assert_eq!(parse_element(&x.to_string(), Some(level)).unwrap(), x);
    }
}

#[test]
fn basis_products_match_oracle() {
    for level in 0..=5u32 {
        let n = 1usize << level;
        for i in 0..n {
            for j in 0..n {
                let (sign, k) = basis_product(level, i, j);
                let mut expected = vec![Rational::zero(); n];
                expected[k] = Rational::from_integer(sign.into());
                let ei = CDElement::basis(level, i);
                let ej = CDElement::basis(level, j);
                assert_eq!(oracle_mul(ei.coeffs(), ej.coeffs()), expected, "e{i} e{j} at level {level}");
            }
        }
    }
}

#[test]
fn associator_matches_oracle() {
    let e = |i| CDElement::basis(3, i);
    for (a, b, c) in [(1, 2, 3), (1, 2, 4), (3, 5, 6), (7, 4, 1)] {
        let (x, y, z) = (e(a), e(b), e(c));
        let left = oracle_mul(&oracle_mul(x.coeffs(), y.coeffs()), z.coeffs());
        let right = oracle_mul(x.coeffs(), &oracle_mul(y.coeffs(), z.coeffs()));
        let expected: Vec<Rational> = left.iter().zip(&right).map(|(p, q)| p - q).collect();
        assert_eq!(associator(&x, &y, &z).unwrap().coeffs(), &expected[..]);
    }
    // e1, e2, e3 span a quaternion subalgebra
    assert!(associator(&e(1), &e(2), &e(3)).unwrap().is_zero());
    assert!(!associator(&e(1), &e(2), &e(4)).unwrap().is_zero());
}

#[test]
fn zero_divisors_appear_at_sedenions() {
    for level in 0..=3 {
        assert!(find_zero_divisor(level).is_none());
    }
    let (x, y) = find_zero_divisor(4).expect("sedenions have zero divisors");
    assert!(!x.is_zero() && !y.is_zero());
    assert!(cd_multiply(&x, &y).unwrap().is_zero());
    assert_ne!(cd_multiply(&x, &y).unwrap().norm_sq(), x.norm_sq() * y.norm_sq());
}
