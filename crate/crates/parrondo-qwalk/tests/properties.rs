//! Randomized invariants of the coin algebra and the walk engine.

use parrondo_qwalk::{
    apply_origin_phase, build_coin, dense_oracle_evolve, evolve, expected_position, init_state,
    step, unitarity_defect, CoinParams, GameSpec, InitialCoin, Sequence,
};
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn angle() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn initial_coin() -> impl Strategy<Value = InitialCoin> {
    ((0.0..=PI), (0.0..TAU)).prop_map(|(t, v)| InitialCoin::new(t, v).unwrap())
}

fn sequence() -> impl Strategy<Value = Sequence> {
    proptest::collection::vec(prop_oneof![Just('A'), Just('B')], 1..=4)
        .prop_map(|chars| Sequence::parse(&chars.into_iter().collect::<String>()).unwrap())
}

fn game_spec() -> impl Strategy<Value = GameSpec> {
    (
        (angle(), angle(), angle()),
        (angle(), angle(), angle()),
        sequence(),
        angle(),
    )
        .prop_map(|((a1, b1, g1), (a2, b2, g2), seq, phi)| {
            GameSpec::new(
                CoinParams::new(a1, b1, g1).unwrap(),
                CoinParams::new(a2, b2, g2).unwrap(),
                seq,
                phi,
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn coins_are_always_unitary(a in angle(), b in angle(), g in angle()) {
        let coin = build_coin(CoinParams::new(a, b, g).unwrap());
        prop_assert!(unitarity_defect(&coin) < 1e-12);
        let det = coin.determinant();
        prop_assert!((det - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn origin_phase_preserves_unitarity_and_magnitudes(
        a in angle(), b in angle(), g in angle(), phi in angle()
    ) {
        let coin = build_coin(CoinParams::new(a, b, g).unwrap());
        let phased = apply_origin_phase(&coin, phi).unwrap();
        prop_assert!(unitarity_defect(&phased) < 1e-12);
        prop_assert!((phased.m00.norm() - coin.m00.norm()).abs() < 1e-14);
        prop_assert!((phased.m01.norm() - coin.m01.norm()).abs() < 1e-14);
        prop_assert!((phased.m10.norm() - coin.m10.norm()).abs() < 1e-14);
        prop_assert!((phased.m11.norm() - coin.m11.norm()).abs() < 1e-14);
    }

    #[test]
    fn origin_phase_composes_additively(
        a in angle(), b in angle(), g in angle(), p1 in angle(), p2 in angle()
    ) {
        let coin = build_coin(CoinParams::new(a, b, g).unwrap());
        let twice = apply_origin_phase(&apply_origin_phase(&coin, p1).unwrap(), p2).unwrap();
        let once = apply_origin_phase(&coin, p1 + p2).unwrap();
        prop_assert!((twice.m00 - once.m00).norm() < 1e-12);
        prop_assert!((twice.m01 - once.m01).norm() < 1e-12);
        prop_assert!((twice.m10 - once.m10).norm() < 1e-12);
        prop_assert!((twice.m11 - once.m11).norm() < 1e-12);
    }

    #[test]
    fn beta_zero_diagonal_beta_half_pi_antidiagonal(a in angle(), g in angle()) {
        let diag = build_coin(CoinParams::new(a, 0.0, g).unwrap());
        prop_assert!(diag.m01.norm() < 1e-15 && diag.m10.norm() < 1e-15);
        let anti = build_coin(CoinParams::new(a, PI / 2.0, g).unwrap());
        prop_assert!(anti.m00.norm() < 1e-15 && anti.m11.norm() < 1e-15);
    }

    #[test]
    fn evolve_matches_dense_oracle(
        spec in game_spec(),
        initial in initial_coin(),
        steps in 1usize..=6,
    ) {
        let fast = evolve(&spec, initial, steps, |_| {}).unwrap();
        let oracle = dense_oracle_evolve(&spec, initial, steps).unwrap();
        prop_assert!(fast.max_amplitude_deviation(&oracle) < 1e-12);
    }

    #[test]
    fn norm_is_conserved(
        spec in game_spec(),
        initial in initial_coin(),
        steps in 1usize..=60,
    ) {
        let mut worst: f64 = 0.0;
        evolve(&spec, initial, steps, |s| {
            worst = worst.max((1.0 - s.total_norm()).abs());
        })
        .unwrap();
        prop_assert!(worst < 1e-10);
    }

    #[test]
    fn light_cone_support_is_exact(
        spec in game_spec(),
        initial in initial_coin(),
        steps in 1usize..=40,
    ) {
        let mut ok = true;
        evolve(&spec, initial, steps, |s| {
            let t = s.step_count() as i64;
            for x in s.positions() {
                if x.abs() > t && s.probability(x) != 0.0 {
                    ok = false;
                }
            }
        })
        .unwrap();
        prop_assert!(ok);
    }

    /// A common phase on BOTH coins at ALL sites is a global phase: no
    /// P(x) changes. The origin-only phase deliberately breaks this.
    #[test]
    fn global_coin_phase_leaves_probabilities_invariant(
        spec in game_spec(),
        initial in initial_coin(),
        delta in angle(),
        steps in 1usize..=25,
    ) {
        let plain = evolve(&spec, initial, steps, |_| {}).unwrap();

        // same evolution with e^{i delta} folded into both coins globally
        let ca = build_coin(spec.coin_a).scaled_by_phase(delta);
        let cb = build_coin(spec.coin_b).scaled_by_phase(delta);
        let mut shifted = init_state(initial, steps);
        for t in 0..steps {
            let coin = match spec.sequence.coin_for_step(t) {
                parrondo_qwalk::CoinLabel::A => &ca,
                parrondo_qwalk::CoinLabel::B => &cb,
            };
            step(&mut shifted, coin, spec.origin_phase).unwrap();
        }
        for x in plain.positions() {
            prop_assert!((plain.probability(x) - shifted.probability(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn expected_position_bounded_by_step_count(
        spec in game_spec(),
        initial in initial_coin(),
        steps in 1usize..=40,
    ) {
        let s = evolve(&spec, initial, steps, |_| {}).unwrap();
        prop_assert!(expected_position(&s).abs() <= steps as f64 + 1e-9);
    }
}

/// Coin matrices built with phi and phi + 2*pi are bit-identical.
///
/// The phi values here are chosen so that adding 2*pi is exact in f64
/// (few mantissa bits); for such inputs the mod-2*pi reduction recovers
/// phi without rounding and the constructed matrices match bitwise.
#[test]
fn phase_periodicity_bit_exact_at_matrix_level() {
    let bits = |c: num_complex::Complex64| (c.re.to_bits(), c.im.to_bits());
    for phi in [0.0, 0.25, 0.5, 1.5, 3.0] {
        let coin = build_coin(CoinParams::new(2.395, 0.513, 0.909).unwrap());
        let p1 = apply_origin_phase(&coin, phi).unwrap();
        let p2 = apply_origin_phase(&coin, phi + TAU).unwrap();
        assert_eq!(bits(p1.m00), bits(p2.m00));
        assert_eq!(bits(p1.m01), bits(p2.m01));
        assert_eq!(bits(p1.m10), bits(p2.m10));
        assert_eq!(bits(p1.m11), bits(p2.m11));
    }
}
