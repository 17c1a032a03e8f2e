//! Randomized structural invariants.
//!
//! These complement the unit tests with properties that should hold for
//! *every* input, not just the worked examples: involutivity of flips and
//! dualization, dimension invariance, the group laws of signed
//! relabelings, and the lift-independence and bilinearity of the pairings.

use proptest::prelude::*;

use mvb_core::duality::{self, SignedRelabeling};
use mvb_core::lattice::{trivial_double, trivial_triple, AxisIndex};
use mvb_core::paircalc::{self, DualAElem, DualBElem, ElemD};

fn word(n: u8, max_len: usize) -> impl Strategy<Value = Vec<AxisIndex>> {
    prop::collection::vec(1..=n, 0..=max_len)
}

fn fvec(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0..4.0f64, len)
}

proptest! {
    #[test]
    fn flip_is_involutive(da in 1usize..5, db in 1usize..5, dc in 1usize..5) {
        let b = trivial_double(da, db, dc);
        let back = b.flip(1, 2).unwrap().flip(1, 2).unwrap();
        prop_assert_eq!(b, back);
    }

    #[test]
    fn double_dual_is_identity(word in word(3, 1), dim in 1usize..4) {
        let b = trivial_triple(dim);
        let b = word
            .iter()
            .try_fold(b, |b, &i| duality::dual_axis(&b, i))
            .unwrap();
        for i in 1..=3 {
            let twice = duality::dual_axis(&duality::dual_axis(&b, i).unwrap(), i).unwrap();
            prop_assert_eq!(&b, &twice);
        }
    }

    #[test]
    fn total_dim_is_invariant(word in word(3, 6), dim in 1usize..4) {
        let b = trivial_triple(dim);
        let expected = b.total_dim();
        let b = word
            .iter()
            .try_fold(b, |b, &i| duality::dual_axis(&b, i))
            .unwrap();
        prop_assert_eq!(b.total_dim(), expected);
        prop_assert_eq!(b.flip(1, 3).unwrap().total_dim(), expected);
    }

    #[test]
    fn compose_matches_word_concatenation(w1 in word(3, 5), w2 in word(3, 5)) {
        let g = SignedRelabeling::from_word(3, &w1).unwrap();
        let h = SignedRelabeling::from_word(3, &w2).unwrap();
        // `h` acts first, so the combined word has `h`'s letters rightmost.
        let combined: Vec<AxisIndex> =
            w1.iter().chain(w2.iter()).copied().collect();
        prop_assert_eq!(
            duality::compose(&g, &h).unwrap(),
            SignedRelabeling::from_word(3, &combined).unwrap()
        );
    }

    #[test]
    fn compose_is_associative(w1 in word(3, 4), w2 in word(3, 4), w3 in word(3, 4)) {
        let g = SignedRelabeling::from_word(3, &w1).unwrap();
        let h = SignedRelabeling::from_word(3, &w2).unwrap();
        let k = SignedRelabeling::from_word(3, &w3).unwrap();
        let left = duality::compose(&duality::compose(&g, &h).unwrap(), &k).unwrap();
        let right = duality::compose(&g, &duality::compose(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(w in word(3, 6)) {
        let g = SignedRelabeling::from_word(3, &w).unwrap();
        prop_assert!(duality::compose(&g, &g.inverse()).unwrap().is_identity());
        prop_assert!(duality::compose(&g.inverse(), &g).unwrap().is_identity());
    }

    #[test]
    fn squares_cancel_in_words(w in word(3, 5), i in 1u8..=3) {
        let mut padded = w.clone();
        padded.push(i);
        padded.push(i);
        prop_assert_eq!(
            SignedRelabeling::from_word(3, &padded).unwrap(),
            SignedRelabeling::from_word(3, &w).unwrap()
        );
    }

    #[test]
    fn pair_duals_is_lift_independent(
        a in fvec(2), beta in fvec(3), gamma in fvec(2),
        b in fvec(3), alpha in fvec(2),
        c1 in fvec(2), c2 in fvec(2),
    ) {
        let phi = DualAElem { a: a.clone(), beta, gamma: gamma.clone() };
        let psi = DualBElem { alpha, b: b.clone(), gamma };
        let d1 = ElemD { a: a.clone(), b: b.clone(), c: c1 };
        let d2 = ElemD { a, b, c: c2 };
        let v1 = paircalc::pair_duals(&phi, &psi, &d1).unwrap();
        let v2 = paircalc::pair_duals(&phi, &psi, &d2).unwrap();
        prop_assert!((v1 - v2).abs() < 1e-9);
        prop_assert!((v1 - paircalc::pair_duals_closed(&phi, &psi)).abs() < 1e-9);
    }

    #[test]
    fn q_map_is_an_involution_up_to_core_sign(
        a in fvec(2), b in fvec(2), c in fvec(3),
    ) {
        // Q swaps the two sides and negates the core, so Q² negates the
        // core twice: the identity.
        let d = ElemD { a, b, c };
        prop_assert_eq!(paircalc::q_map(&paircalc::q_map(&d)), d);
    }

    #[test]
    fn reversal_is_involutive_up_to_sign_bookkeeping(
        x in fvec(2), phi in fvec(3),
        v in fvec(3), omega in fvec(2), w in fvec(3),
    ) {
        // ⟨R𝔉, ξ⟩_E expands to −⟨ω̂, x⟩ + ⟨φ̂, w⟩ on the nose.
        let f = paircalc::CotEStarElem {
            phi_hat: phi.clone(),
            omega_hat: omega.clone(),
            v_hat: v.clone(),
        };
        let r = paircalc::reversal_r(&f);
        let xi = paircalc::TangentVecElem { x: x.clone(), v, w: w.clone() };
        let direct = paircalc::cot_e_pairing(&r, &xi).unwrap();
        let dot = |u: &[f64], v: &[f64]| -> f64 {
            u.iter().zip(v).map(|(a, b)| a * b).sum()
        };
        let expected = -dot(&omega, &x) + dot(&phi, &w);
        prop_assert!((direct - expected).abs() < 1e-9);
    }
}
