mod common;

use common::*;

use hqcm::runner::random_state;
use hqcm::star::{
    build_star_state, check_stabilizer, multi_z_rotation, rz_teleport_gadget, AncillaPrep, StarGraph,
};
use hqcm::state::{RandomSource, StateVector};

fn random_leaves(n: usize, max: usize, rng: &mut RandomSource) -> Vec<usize> {
    let size = 1 + rng.below(max.min(n));
    let mut pool: Vec<usize> = (0..n).collect();
    (0..size).map(|_| pool.swap_remove(rng.below(pool.len()))).collect()
}

#[test]
fn rotation_matches_dense_oracle() {
    let mut rng = RandomSource::new(2024, 0);
    for trial in 0..200 {
        let n = 1 + rng.below(4);
        let leaves = random_leaves(n, 4, &mut rng);
        let theta = std::f64::consts::TAU * rng.uniform() - std::f64::consts::PI;
        let kappa = rng.bit();
        let input = random_state(n, &mut rng);

        let mut state = input.tensor(&StateVector::zero(1));
        let rec = multi_z_rotation(&mut state, &leaves, theta, AncillaPrep::new(kappa), n, &mut rng, None).unwrap();
        let out = state.project_out(n, [c(1., 0.), c(0., 0.)]).unwrap();

        let byproduct = if rec.outcome {
            pauli(n, 0, leaves.iter().fold(0, |m, &q| m | (1 << q)))
        } else {
            CMat::identity(1 << n, 1 << n)
        };
        let expected = byproduct * multi_z(n, &leaves, theta) * to_vec(&input);
        let f = vec_fidelity(&to_vec(&out), &expected);
        assert!(f >= 1.0 - 1e-10, "trial {trial}: n={n} leaves={leaves:?} κ={kappa} m={}: {f}", rec.outcome);
    }
}

#[test]
fn both_outcomes_work_when_forced() {
    let input = random_state(3, &mut RandomSource::new(5, 0));
    for kappa in [false, true] {
        for m in [false, true] {
            let mut rng = RandomSource::new(1, 0);
            let mut state = input.tensor(&StateVector::zero(1));
            let rec = multi_z_rotation(&mut state, &[0, 2], 0.9, AncillaPrep::new(kappa), 3, &mut rng, Some(m)).unwrap();
            assert_eq!(rec.outcome, m);
            let out = state.project_out(3, [c(1., 0.), c(0., 0.)]).unwrap();
            let z = if m { pauli(3, 0, 0b101) } else { CMat::identity(8, 8) };
            let expected = z * multi_z(3, &[0, 2], 0.9) * to_vec(&input);
            assert!(vec_fidelity(&to_vec(&out), &expected) >= 1.0 - 1e-12);
        }
    }
}

#[test]
fn teleport_gadget_matches_oracle() {
    let mut rng = RandomSource::new(77, 0);
    for _ in 0..100 {
        let input = random_state(1, &mut rng);
        let phi = 6.0 * rng.uniform() - 3.0;
        let kappa = rng.bit();
        let (m, out) = rz_teleport_gadget(&input, phi, AncillaPrep::new(kappa), &mut rng, None).unwrap();
        // X^m Z^κ H Rz(φ) |ψ>
        let expected = pauli(1, usize::from(m), usize::from(kappa)) * hadamard() * rz(phi) * to_vec(&input);
        assert!(vec_fidelity(&to_vec(&out), &expected) >= 1.0 - 1e-12);
    }
}

#[test]
fn star_states_are_stabilized() {
    let mut rng = RandomSource::new(8, 0);
    for _ in 0..100 {
        let leaves_n = 1 + rng.below(5);
        let kappa = rng.bit();
        // leaves in |+>: the star graph state itself
        let mut s = StateVector::zero(1);
        for _ in 0..leaves_n {
            s = s.tensor(&StateVector::plus(false));
        }
        let g = StarGraph::new(0, (1..=leaves_n).collect()).unwrap();
        build_star_state(&mut s, &g, AncillaPrep::new(kappa)).unwrap();
        let expected = if kappa { -1.0 } else { 1.0 };
        assert!((check_stabilizer(&s, &g) - expected).abs() < 1e-10);
    }
}

#[test]
fn outcomes_are_unbiased() {
    let mut rng = RandomSource::new(31, 0);
    let input = random_state(3, &mut rng);
    let theta = 1.234;
    let shots = 4000;
    let mut ones = 0;
    for shot in 0..shots {
        let mut r = RandomSource::new(99, shot);
        let mut state = input.tensor(&StateVector::zero(1));
        let rec = multi_z_rotation(&mut state, &[0, 1, 2], theta, AncillaPrep::default(), 3, &mut r, None).unwrap();
        ones += usize::from(rec.outcome);
    }
    let p = ones as f64 / shots as f64;
    let sigma = (0.25 / shots as f64).sqrt();
    assert!((p - 0.5).abs() < 4.0 * sigma, "{p}");
}

#[test]
fn ancilla_must_start_in_zero() {
    let mut s = StateVector::plus(false).tensor(&StateVector::basis(1, &[true]).unwrap());
    let mut rng = RandomSource::new(0, 0);
    assert!(multi_z_rotation(&mut s, &[0], 0.3, AncillaPrep::default(), 1, &mut rng, None).is_err());
    let mut s = StateVector::zero(2);
    assert!(multi_z_rotation(&mut s, &[1], 0.3, AncillaPrep::default(), 1, &mut rng, None).is_err());
}
