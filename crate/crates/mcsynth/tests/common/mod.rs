//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use mcsynth::lnn::{LnnPlacement, Role};
use mcsynth::sim::{DenseUnitary, StateBatch};
use mcsynth::su2::{AxisAngle, Mat2, U2Spec, UnitVec3};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Uniformly random unit vector.
pub fn random_axis(rng: &mut ChaCha8Rng) -> UnitVec3 {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(v) = UnitVec3::normalized(x, y, z) {
            return v;
        }
    }
}

/// Random unit vector perpendicular to `v`.
pub fn random_perpendicular(rng: &mut ChaCha8Rng, v: &UnitVec3) -> UnitVec3 {
    loop {
        let [x, y, z] = v.cross(&random_axis(rng));
        if let Ok(u) = UnitVec3::normalized(x, y, z) {
            return u;
        }
    }
}

/// Random rotation with angle in (−2π, 2π].
pub fn random_su2(rng: &mut ChaCha8Rng) -> AxisAngle {
    let angle = rng.random_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
    AxisAngle::new(random_axis(rng), angle)
}

/// Random U(2) operator.
pub fn random_u2(rng: &mut ChaCha8Rng) -> U2Spec {
    let phase = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    U2Spec::new(random_su2(rng), phase)
}

/// Random line of `k` positions with `n` controls, one target and `helpers`.
pub fn random_placement(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    helpers: &[Role],
) -> LnnPlacement {
    let mut roles = vec![Role::Control; n];
    roles.push(Role::Target);
    roles.extend_from_slice(helpers);
    assert!(roles.len() <= k, "line too short");
    roles.resize(k, Role::Idle);
    roles.shuffle(rng);
    LnnPlacement::new(roles)
}

/// Dense matrix of a batch started from the identity.
pub fn dense(batch: &StateBatch) -> DenseUnitary {
    let d = batch.dim();
    let entries = (0..d)
        .flat_map(|r| (0..d).map(move |c| batch.get(r, c)))
        .collect();
    DenseUnitary::from_entries(batch.num_qubits(), entries).expect("square batch")
}

/// Product of controlled single-qubit operators, first element applied first.
pub fn controlled_product(num_qubits: usize, ops: &[(Vec<usize>, usize, Mat2)]) -> DenseUnitary {
    let mut b = StateBatch::identity(num_qubits);
    for (controls, target, m) in ops {
        b.apply_controlled_1q(controls, *target, m);
    }
    dense(&b)
}
