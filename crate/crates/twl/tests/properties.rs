//! Property tests for algebraic invariants; structured inputs come from seeded generators.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twl::bruhat::audit::{random_u_word, random_word};
use twl::bruhat::{factorize, factorize_rev, rho};
use twl::linear::GroupWord;
use twl::sample::{random_poly, random_unit};
use twl::symbols::{symbol_image, Presentation, SymbolWord};
use twl::{Poly, Ring};

fn ring(idx: usize) -> Ring {
    match idx {
        0 => Ring::finite_field(2, 2, 1).unwrap(),
        1 => Ring::finite_field(3, 2, 1).unwrap(),
        2 => Ring::finite_field(5, 1, 0).unwrap(),
        _ => Ring::hamilton(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_mul_is_associative_and_tau_multiplicative(r in 0usize..4, seed in any::<u64>(), j in -3i64..=3) {
        let ring = ring(r);
        let mut g = rng(seed);
        let (a, b, c) = (random_poly(&ring, &mut g, 2), random_poly(&ring, &mut g, 2), random_poly(&ring, &mut g, 2));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).tau_apply(j), &a.tau_apply(j) * &b.tau_apply(j));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn t_twists_coefficients(r in 0usize..4, seed in any::<u64>(), m in -3i64..=3) {
        let ring = ring(r);
        let x = ring.random_elem(&mut rng(seed));
        let lhs = &Poly::t_pow(&ring, m) * &Poly::constant(&ring, x.clone());
        let rhs = &Poly::constant(&ring, ring.tau_pow(&x, m)) * &Poly::t_pow(&ring, m);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_times_inverse_is_identity(r in 0usize..3, n in 2usize..=4, seed in any::<u64>()) {
        let ring = ring(r);
        let w = random_word(&ring, n, 10, 2, &mut rng(seed));
        prop_assert!(w.concat(&w.inverse()).matrix().is_identity());
    }

    #[test]
    fn words_round_trip_through_text(r in 0usize..4, n in 2usize..=3, seed in any::<u64>()) {
        let ring = ring(r);
        let w = random_word(&ring, n, 8, 3, &mut rng(seed));
        let back = GroupWord::parse(&ring, n, &w.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), w.to_string());
        prop_assert_eq!(back.matrix(), w.matrix());
    }

    #[test]
    fn factorization_reproduces_the_matrix(r in 0usize..4, n in 2usize..=3, seed in any::<u64>()) {
        let ring = ring(r);
        let w = random_word(&ring, n, 12, 3, &mut rng(seed));
        let f = factorize(&w).unwrap();
        prop_assert!(f.represents(&w.matrix()));
        prop_assert!(f.u().in_u() && f.v().in_u());
        let rev = factorize_rev(&w).unwrap();
        prop_assert_eq!(f.w(), rev.w());
    }

    #[test]
    fn rho_is_constant_on_u_double_cosets(r in 0usize..4, n in 2usize..=3, seed in any::<u64>()) {
        let ring = ring(r);
        let mut g = rng(seed);
        let e = random_word(&ring, n, 8, 3, &mut g);
        let u = random_u_word(&ring, n, 4, 3, &mut g);
        let v = random_u_word(&ring, n, 4, 3, &mut g);
        prop_assert_eq!(rho(&u.concat(&e).concat(&v)).unwrap(), rho(&e).unwrap());
    }

    #[test]
    fn symbol_image_is_multiplicative(r in 0usize..4, seed in any::<u64>()) {
        let ring = ring(r);
        let mut g = rng(seed);
        let mut pick = || SymbolWord::c(Presentation::P, &random_unit(&ring, &mut g, 2), &random_unit(&ring, &mut g, 2));
        let (a, b) = (pick(), pick());
        prop_assert_eq!(symbol_image(&a.concat(&b)), symbol_image(&a).mul(&symbol_image(&b)));
        prop_assert!(symbol_image(&a.concat(&a.inverse())).is_one());
    }
}
