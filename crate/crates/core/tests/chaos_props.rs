use lumesh::chaos::{
    generate_stream, lu_step, to_bit, to_byte, to_multiplier, to_unit, LuKey, LuParams, LuState,
};
use proptest::prelude::*;

const DEFAULT_KEY: LuKey = LuKey::new(-6.045, 2.668, 16.363);

/// Separately written RK4 over plain arrays, used only as a reference.
fn reference_rk4(s: [f64; 3], h: f64, steps: usize) -> [f64; 3] {
    let f = |v: [f64; 3]| {
        [
            36.0 * (v[1] - v[0]),
            20.0 * v[1] - v[0] * v[2],
            v[0] * v[1] - 3.0 * v[2],
        ]
    };
    let add =
        |v: [f64; 3], k: [f64; 3], c: f64| [v[0] + c * k[0], v[1] + c * k[1], v[2] + c * k[2]];
    let mut s = s;
    for _ in 0..steps {
        let k1 = f(s);
        let k2 = f(add(s, k1, h / 2.0));
        let k3 = f(add(s, k2, h / 2.0));
        let k4 = f(add(s, k3, h));
        for i in 0..3 {
            s[i] += h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        }
    }
    s
}

fn max_abs_diff(a: LuState, b: [f64; 3]) -> f64 {
    (a.x - b[0])
        .abs()
        .max((a.y - b[1]).abs())
        .max((a.z - b[2]).abs())
}

#[test]
fn step_matches_fine_reference() {
    let p = LuParams::default();
    let s = DEFAULT_KEY.state();
    let one = lu_step(&s, &p, 0.001).unwrap();

    // frozen from a 40-digit RK4 of the same single step
    let pinned = [-5.734217162287702, 2.8190481530477918, 16.297854505493447];
    assert!(max_abs_diff(one, pinned) < 1e-13, "{one:?}");

    let fine = reference_rk4([s.x, s.y, s.z], 0.0001, 10);
    assert!(max_abs_diff(one, fine) < 1e-9, "{one:?} vs {fine:?}");
}

#[test]
fn step_error_is_fifth_order() {
    let p = LuParams::default();
    let s = DEFAULT_KEY.state();
    let split_error = |h: f64| {
        let one = lu_step(&s, &p, h).unwrap();
        let half = lu_step(&s, &p, h / 2.0).unwrap();
        let two = lu_step(&half, &p, h / 2.0).unwrap();
        max_abs_diff(one, [two.x, two.y, two.z])
    };
    let e1 = split_error(0.004);
    let e2 = split_error(0.002);
    let e3 = split_error(0.001);
    assert!(e3 < 1e-9, "{e3}");
    for ratio in [e1 / e2, e2 / e3] {
        assert!((24.0..40.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn perturbed_keys_diverge() {
    let p = LuParams::default();
    let base = generate_stream(&DEFAULT_KEY, &p, 1000).unwrap();
    for comp in 0..3 {
        let k = DEFAULT_KEY.with_component(comp, DEFAULT_KEY.component(comp) + 1e-10);
        let other = generate_stream(&k, &p, 1000).unwrap();
        let differing = base
            .values()
            .iter()
            .zip(other.values())
            .filter(|(a, b)| (to_unit(**a) - to_unit(**b)).abs() > 1e-3)
            .count();
        assert!(differing >= 900, "component {comp}: {differing}");
    }
}

#[test]
fn trajectory_stays_on_attractor() {
    let s = generate_stream(&DEFAULT_KEY, &LuParams::default(), 30_000).unwrap();
    assert!(s.values().iter().all(|v| v.is_finite() && v.abs() < 100.0));
}

proptest! {
    #[test]
    fn prefix_and_determinism(n in 1usize..200, extra in 0usize..50) {
        let p = LuParams::default();
        let short = generate_stream(&DEFAULT_KEY, &p, n).unwrap();
        let long = generate_stream(&DEFAULT_KEY, &p, n + extra).unwrap();
        prop_assert_eq!(short.len(), n);
        let bits = |s: &[f64]| s.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(short.values()), bits(&long.values()[..n]));
        let again = generate_stream(&DEFAULT_KEY, &p, n).unwrap();
        prop_assert_eq!(bits(short.values()), bits(again.values()));
    }

    #[test]
    fn quantizer_ranges(v in -1e6f64..1e6) {
        let u = to_unit(v);
        prop_assert!((0.0..1.0).contains(&u));
        let m = to_multiplier(v);
        prop_assert!((1.0..2.0).contains(&m));
        prop_assert_eq!(u32::from(to_byte(v)), ((u * 256.0).floor() as u32).min(255));
        prop_assert!(to_bit(v) <= 1);
    }

    #[test]
    fn nearby_attractor_keys_are_stable(dx in -1.0f64..1.0, dy in -1.0f64..1.0, dz in -1.0f64..1.0) {
        let k = LuKey::new(-6.045 + dx, 2.668 + dy, 16.363 + dz);
        prop_assert!(generate_stream(&k, &LuParams::default(), 300).is_ok());
    }
}
