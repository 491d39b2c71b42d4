//! Axis-angle algebra for SU(2).
//!
//! Conventions: `R_v(λ) = exp(−i λ/2 v̂·σ)` and the Hermitian π-rotation
//! `Π_v = i·R_v(π) = v̂·σ`. Two-by-two matrices are [`Mat2`] values in
//! row-major order.

use num_complex::Complex64;

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

/// Three-dimensional unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3 {
    /// x component.
    pub x: f64,
    /// y component.
    pub y: f64,
    /// z component.
    pub z: f64,
}

impl UnitVec3 {
    /// x̂.
    pub const X: UnitVec3 = UnitVec3 {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    /// ŷ.
    pub const Y: UnitVec3 = UnitVec3 {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    /// ẑ.
    pub const Z: UnitVec3 = UnitVec3 {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Checked constructor: the components must have unit norm within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = UnitVec3 { x, y, z };
        if (v.norm() - 1.0).abs() > UNIT_TOL || !v.norm().is_finite() {
            return Err(Error::NotUnit { x, y, z });
        }
        Ok(v)
    }

    /// Normalizing constructor; fails on a zero or non-finite vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 || !n.is_finite() {
            return Err(Error::NotUnit { x, y, z });
        }
        Ok(UnitVec3 {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Dot product.
    pub fn dot(&self, o: &UnitVec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Cross product, not normalized.
    pub fn cross(&self, o: &UnitVec3) -> [f64; 3] {
        [
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        ]
    }

    /// Negated vector.
    pub fn neg(&self) -> UnitVec3 {
        UnitVec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Largest absolute component difference.
    pub fn max_diff(&self, o: &UnitVec3) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    fn check(&self) -> Result<()> {
        if (self.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit {
                x: self.x,
                y: self.y,
                z: self.z,
            });
        }
        Ok(())
    }
}

/// The rotation `R_v(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    /// Rotation axis.
    pub axis: UnitVec3,
    /// Rotation angle λ in radians.
    pub angle: f64,
}

impl AxisAngle {
    /// Creates `R_v(λ)`.
    pub fn new(axis: UnitVec3, angle: f64) -> Self {
        Self { axis, angle }
    }

    /// Matrix of the rotation.
    pub fn matrix(&self) -> Mat2 {
        rv(&self.axis, self.angle)
    }
}

/// The unitary `e^{iψ} R_v(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U2Spec {
    /// SU(2) part.
    pub su2: AxisAngle,
    /// Global phase ψ in radians.
    pub phase: f64,
}

impl U2Spec {
    /// Creates `e^{iψ} R_v(λ)`.
    pub fn new(su2: AxisAngle, phase: f64) -> Self {
        Self { su2, phase }
    }

    /// Matrix of the unitary.
    pub fn matrix(&self) -> Mat2 {
        scale(&self.su2.matrix(), Complex64::from_polar(1.0, self.phase))
    }
}

/// Rotation axis of a single emitted rotation gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotAxis {
    /// Rx gate.
    X,
    /// Rz gate.
    Z,
}

/// One emitted rotation gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rot {
    /// Axis of the gate.
    pub axis: RotAxis,
    /// Angle in radians.
    pub angle: f64,
}

impl Rot {
    /// Rx(angle).
    pub fn x(angle: f64) -> Self {
        Rot {
            axis: RotAxis::X,
            angle,
        }
    }

    /// Rz(angle).
    pub fn z(angle: f64) -> Self {
        Rot {
            axis: RotAxis::Z,
            angle,
        }
    }

    /// Matrix of the gate.
    pub fn matrix(&self) -> Mat2 {
        match self.axis {
            RotAxis::X => rx(self.angle),
            RotAxis::Z => rz(self.angle),
        }
    }
}

/// Single-qubit gates placed on the target around the four controlled blocks.
///
/// Every list is stored in time order, so the matrix of a list is the product
/// of its elements from last to first.
#[derive(Debug, Clone, PartialEq)]
pub struct AGates {
    /// Final gates: Rx(λ/4), Rz(−θ2), Rx(−θ1).
    pub a1: Vec<Rot>,
    /// Rx(−λ/4), placed twice.
    pub a2: Vec<Rot>,
    /// Rx(λ/4).
    pub a3: Vec<Rot>,
    /// Initial gates: Rx(θ1), Rz(θ2).
    pub a4: Vec<Rot>,
    /// First Euler angle of the basis change.
    pub theta1: f64,
    /// Second Euler angle of the basis change.
    pub theta2: f64,
    /// Third Euler angle of the basis change (absorbed, never emitted).
    pub theta3: f64,
}

/// Matrix product `a·b`.
pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// Conjugate transpose.
pub fn dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Scalar multiple.
pub fn scale(a: &Mat2, s: Complex64) -> Mat2 {
    [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
}

/// Product of a time-ordered gate list.
pub fn product(gates: &[Rot]) -> Mat2 {
    gates
        .iter()
        .fold(identity(), |acc, g| mul(&g.matrix(), &acc))
}

/// 2×2 identity.
pub fn identity() -> Mat2 {
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    [[o, z], [z, o]]
}

/// Largest entry-wise distance.
pub fn max_dist(a: &Mat2, b: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

/// Largest entry-wise distance after removing the best global phase.
pub fn max_dist_up_to_phase(a: &Mat2, b: &Mat2) -> f64 {
    let tr = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| b[i][j].conj() * a[i][j])
        .sum::<Complex64>();
    if tr.norm() < 1e-300 {
        return max_dist(a, b);
    }
    let ph = tr / tr.norm();
    max_dist(&scale(a, ph.conj()), b)
}

/// `R_v(λ)`.
pub fn rv(axis: &UnitVec3, angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    let i = Complex64::new(0.0, 1.0);
    [
        [
            Complex64::new(c, 0.0) - i * s * axis.z,
            -i * s * Complex64::new(axis.x, -axis.y),
        ],
        [
            -i * s * Complex64::new(axis.x, axis.y),
            Complex64::new(c, 0.0) + i * s * axis.z,
        ],
    ]
}

/// Rx(θ).
pub fn rx(theta: f64) -> Mat2 {
    rv(&UnitVec3::X, theta)
}

/// Rz(θ).
pub fn rz(theta: f64) -> Mat2 {
    rv(&UnitVec3::Z, theta)
}

/// `Π_v = v̂·σ`.
pub fn pi_gate(axis: &UnitVec3) -> Mat2 {
    scale(&rv(axis, std::f64::consts::PI), Complex64::new(0.0, 1.0))
}

/// Rodrigues rotation of `v` about `axis` by `angle`.
pub fn rot3(axis: &UnitVec3, angle: f64, v: &UnitVec3) -> Result<UnitVec3> {
    axis.check()?;
    v.check()?;
    let (s, c) = angle.sin_cos();
    let k = axis;
    let kxv = k.cross(v);
    let kv = k.dot(v);
    let r = [
        v.x * c + kxv[0] * s + k.x * kv * (1.0 - c),
        v.y * c + kxv[1] * s + k.y * kv * (1.0 - c),
        v.z * c + kxv[2] * s + k.z * kv * (1.0 - c),
    ];
    UnitVec3::normalized(r[0], r[1], r[2])
}

/// Deterministic unit vector perpendicular to `v`.
///
/// Uses `v × ẑ` when it is not tiny and `x̂` otherwise.
pub fn perpendicular(v: &UnitVec3) -> UnitVec3 {
    let c = v.cross(&UnitVec3::Z);
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    if n > 1e-6 {
        UnitVec3 {
            x: c[0] / n,
            y: c[1] / n,
            z: c[2] / n,
        }
    } else {
        UnitVec3::X
    }
}

/// Axes with `Π_{v2} Π_{v1} = R_v(λ)`.
///
/// `v1` is [`perpendicular`] to the axis and `v2 = rot3(v, λ/2, v1)`.
pub fn pi_pair(target: &AxisAngle) -> Result<(UnitVec3, UnitVec3)> {
    let v1 = perpendicular(&target.axis);
    pi_pair_with(target, &v1)
}

/// [`pi_pair`] with a caller-chosen `v1` (must be perpendicular to the axis).
pub fn pi_pair_with(target: &AxisAngle, v1: &UnitVec3) -> Result<(UnitVec3, UnitVec3)> {
    let v2 = rot3(&target.axis, target.angle / 2.0, v1)?;
    Ok((*v1, v2))
}

/// Axes with `(Π_{v2} Π_{v1})² = R_v(λ)`, using `v2 = rot3(v, λ/4, v1)`.
pub fn pi_quad_axes(target: &AxisAngle) -> Result<(UnitVec3, UnitVec3)> {
    let v1 = perpendicular(&target.axis);
    pi_quad_axes_with(target, &v1)
}

/// [`pi_quad_axes`] with a caller-chosen `v1`.
pub fn pi_quad_axes_with(target: &AxisAngle, v1: &UnitVec3) -> Result<(UnitVec3, UnitVec3)> {
    let v2 = rot3(&target.axis, target.angle / 4.0, v1)?;
    Ok((*v1, v2))
}

/// Axis `m` with `rot3(m, π, v1) = v2`: the normalized bisector.
pub fn midpoint_axis(v1: &UnitVec3, v2: &UnitVec3) -> Result<UnitVec3> {
    v1.check()?;
    v2.check()?;
    let s = [v1.x + v2.x, v1.y + v2.y, v1.z + v2.z];
    let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    if n < 1e-9 {
        return Err(Error::DegeneratePair);
    }
    Ok(UnitVec3 {
        x: s[0] / n,
        y: s[1] / n,
        z: s[2] / n,
    })
}

/// Angles `(a, b, c)` with `u ≅ Rx(a)·Rz(b)·Rx(c)` up to a global phase.
pub fn euler_xzx(u: &Mat2) -> (f64, f64, f64) {
    // Conjugating by H turns the XZX form into a ZXZ form.
    let h = {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        [[s, s], [s, -s]]
    };
    let w = mul(&h, &mul(u, &h));
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let w = scale(&w, det.sqrt().inv());
    // w = Rz(a) Rx(b) Rz(c) has w00 = cos(b/2) e^{-i(a+c)/2} and
    // w10 = -i sin(b/2) e^{i(a-c)/2}.
    let b = 2.0 * w[1][0].norm().atan2(w[0][0].norm());
    let sum = if w[0][0].norm() > 1e-12 {
        -2.0 * w[0][0].arg()
    } else {
        0.0
    };
    let diff = if w[1][0].norm() > 1e-12 {
        2.0 * (w[1][0].arg() + std::f64::consts::FRAC_PI_2)
    } else {
        0.0
    };
    let a = (sum + diff) / 2.0;
    let c = (sum - diff) / 2.0;
    (a, b, c)
}

/// Basis-change axis used by [`a_gates`]: an axis exchanging x̂ and `v`.
pub fn exchange_axis(v: &UnitVec3) -> UnitVec3 {
    match midpoint_axis(v, &UnitVec3::X) {
        Ok(m) => m,
        Err(_) => UnitVec3::Z,
    }
}

/// Single-qubit gates of the four-block macro for the target `R_v(λ)`.
///
/// With `Π_M` exchanging x̂ and `v` and `Π_M ≅ Rx(θ3)·Rz(θ2)·Rx(θ1)`, the
/// gate `A4 = Rz(θ2)·Rx(θ1)` satisfies `A4†·Rx(λ)·A4 = R_v(λ)`.
pub fn a_gates(target: &AxisAngle) -> AGates {
    let m = exchange_axis(&target.axis);
    let (theta3, theta2, theta1) = euler_xzx(&pi_gate(&m));
    let lam = target.angle;
    AGates {
        a1: vec![Rot::x(lam / 4.0), Rot::z(-theta2), Rot::x(-theta1)],
        a2: vec![Rot::x(-lam / 4.0)],
        a3: vec![Rot::x(lam / 4.0)],
        a4: vec![Rot::x(theta1), Rot::z(theta2)],
        theta1,
        theta2,
        theta3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn close(a: &UnitVec3, b: &UnitVec3) -> bool {
        a.max_diff(b) < 1e-12
    }

    /// Rotation matrix about a coordinate axis, written out by hand.
    fn coord_rotation(axis: usize, angle: f64, v: [f64; 3]) -> [f64; 3] {
        let (s, c) = angle.sin_cos();
        let m = match axis {
            0 => [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
            1 => [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]],
            _ => [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        };
        let mut r = [0.0; 3];
        for i in 0..3 {
            r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
        }
        r
    }

    #[test]
    fn rot3_quarter_turn_about_z_maps_x_to_y() {
        let r = rot3(&UnitVec3::Z, PI / 2.0, &UnitVec3::X).unwrap();
        assert!(close(&r, &UnitVec3::Y));
    }

    #[test]
    fn rot3_zero_angle_is_identity() {
        let v = UnitVec3::normalized(0.3, -0.4, 0.5).unwrap();
        assert!(close(&rot3(&UnitVec3::Y, 0.0, &v).unwrap(), &v));
    }

    #[test]
    fn rot3_half_turn_about_x_negates_y() {
        let r = rot3(&UnitVec3::X, PI, &UnitVec3::Y).unwrap();
        let m = coord_rotation(0, PI, [0.0, 1.0, 0.0]);
        assert!(close(&r, &UnitVec3::new(m[0], m[1], m[2]).unwrap()));
        assert!(close(&r, &UnitVec3::Y.neg()));
    }

    #[test]
    fn rot3_rejects_non_unit_input() {
        let bad = UnitVec3 {
            x: 2.0,
            y: 0.0,
            z: 0.0,
        };
        assert!(rot3(&bad, 1.0, &UnitVec3::X).is_err());
    }

    #[test]
    fn pi_pair_for_z_half_turn_with_x_gives_y() {
        let t = AxisAngle::new(UnitVec3::Z, PI);
        let (v1, v2) = pi_pair_with(&t, &UnitVec3::X).unwrap();
        assert!(close(&v2, &UnitVec3::Y));
        // YX = -iZ = R_z(π)
        let prod = mul(&pi_gate(&v2), &pi_gate(&v1));
        assert!(max_dist(&prod, &rz(PI)) < 1e-12);
    }

    #[test]
    fn pi_pair_zero_angle_repeats_axis() {
        let t = AxisAngle::new(UnitVec3::normalized(1.0, 2.0, 3.0).unwrap(), 0.0);
        let (v1, v2) = pi_pair(&t).unwrap();
        assert!(close(&v1, &v2));
        let prod = mul(&pi_gate(&v2), &pi_gate(&v1));
        assert!(max_dist(&prod, &identity()) < 1e-12);
    }

    #[test]
    fn pi_pair_rx_quarter_turn_with_z() {
        let t = AxisAngle::new(UnitVec3::X, PI / 2.0);
        let (v1, v2) = pi_pair_with(&t, &UnitVec3::Z).unwrap();
        let expected = rot3(&UnitVec3::X, PI / 4.0, &UnitVec3::Z).unwrap();
        assert!(close(&v2, &expected));
        let prod = mul(&pi_gate(&v2), &pi_gate(&v1));
        assert!(max_dist(&prod, &rx(PI / 2.0)) < 1e-12);
    }

    #[test]
    fn pi_quad_full_turn_about_y_from_z_gives_x() {
        let t = AxisAngle::new(UnitVec3::Y, 2.0 * PI);
        let (_, v2) = pi_quad_axes_with(&t, &UnitVec3::Z).unwrap();
        assert!(close(&v2, &UnitVec3::X));
    }

    #[test]
    fn pi_quad_zero_angle_repeats_axis() {
        let t = AxisAngle::new(UnitVec3::Y, 0.0);
        let (v1, v2) = pi_quad_axes(&t).unwrap();
        assert!(close(&v1, &v2));
    }

    #[test]
    fn pi_quad_half_turn_about_x() {
        let t = AxisAngle::new(UnitVec3::X, PI);
        let (v1, v2) = pi_quad_axes_with(&t, &UnitVec3::Z).unwrap();
        let p = mul(&pi_gate(&v2), &pi_gate(&v1));
        assert!(max_dist(&mul(&p, &p), &rx(PI)) < 1e-12);
    }

    #[test]
    fn midpoint_of_x_and_z_is_hadamard_axis() {
        let h = midpoint_axis(&UnitVec3::X, &UnitVec3::Z).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&h, &UnitVec3::new(s, 0.0, s).unwrap()));
        let hm = pi_gate(&h);
        let c = Complex64::new(s, 0.0);
        let had = [[c, c], [c, -c]];
        assert!(max_dist(&hm, &had) < 1e-12);
    }

    #[test]
    fn midpoint_of_equal_vectors_is_the_vector() {
        let v = UnitVec3::normalized(1.0, -1.0, 2.0).unwrap();
        assert!(close(&midpoint_axis(&v, &v).unwrap(), &v));
    }

    #[test]
    fn midpoint_of_x_and_y_bisects() {
        let m = midpoint_axis(&UnitVec3::X, &UnitVec3::Y).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&m, &UnitVec3::new(s, s, 0.0).unwrap()));
        assert!(close(&rot3(&m, PI, &UnitVec3::X).unwrap(), &UnitVec3::Y));
    }

    #[test]
    fn midpoint_of_antipodes_is_degenerate() {
        assert_eq!(
            midpoint_axis(&UnitVec3::X, &UnitVec3::X.neg()),
            Err(Error::DegeneratePair)
        );
    }

    #[test]
    fn a_gates_for_x_axis_have_no_basis_change() {
        let g = a_gates(&AxisAngle::new(UnitVec3::X, 0.7));
        assert!(g.theta2.abs() < 1e-12);
        let a4 = product(&g.a4);
        let sandwich = mul(&dagger(&a4), &mul(&rx(0.7), &a4));
        assert!(max_dist(&sandwich, &rx(0.7)) < 1e-12);
    }

    #[test]
    fn a_gates_for_z_axis_realize_rz() {
        let g = a_gates(&AxisAngle::new(UnitVec3::Z, 1.1));
        let a4 = product(&g.a4);
        let sandwich = mul(&dagger(&a4), &mul(&rx(1.1), &a4));
        assert!(max_dist(&sandwich, &rz(1.1)) < 1e-12);
    }

    #[test]
    fn a_gates_for_minus_x_use_z_exchange() {
        let t = AxisAngle::new(UnitVec3::X.neg(), 0.4);
        let g = a_gates(&t);
        let a4 = product(&g.a4);
        let sandwich = mul(&dagger(&a4), &mul(&rx(0.4), &a4));
        assert!(max_dist(&sandwich, &t.matrix()) < 1e-12);
    }

    fn arb_axis() -> impl Strategy<Value = UnitVec3> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter("non-zero", |(x, y, z)| x * x + y * y + z * z > 1e-3)
            .prop_map(|(x, y, z)| UnitVec3::normalized(x, y, z).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn pi_pair_product_is_the_rotation(v in arb_axis(), lam in -2.0 * PI..2.0 * PI) {
            let t = AxisAngle::new(v, lam);
            let (v1, v2) = pi_pair(&t).unwrap();
            let prod = mul(&pi_gate(&v2), &pi_gate(&v1));
            prop_assert!(max_dist(&prod, &t.matrix()) < 1e-10);
        }

        #[test]
        fn pi_quad_square_is_the_rotation(v in arb_axis(), lam in -2.0 * PI..2.0 * PI) {
            let t = AxisAngle::new(v, lam);
            let (v1, v2) = pi_quad_axes(&t).unwrap();
            let p = mul(&pi_gate(&v2), &pi_gate(&v1));
            prop_assert!(max_dist(&mul(&p, &p), &t.matrix()) < 1e-10);
        }

        #[test]
        fn midpoint_maps_first_to_second(a in arb_axis(), b in arb_axis()) {
            prop_assume!(a.dot(&b) > -0.999);
            let m = midpoint_axis(&a, &b).unwrap();
            prop_assert!(rot3(&m, PI, &a).unwrap().max_diff(&b) < 1e-10);
        }

        #[test]
        fn conjugated_pi_rotates_its_axis(
            sigma in arb_axis(), phi in -PI..PI, seed in arb_axis()
        ) {
            // τ ⟂ σ built from a random seed vector.
            let c = sigma.cross(&seed);
            let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            prop_assume!(n > 1e-3);
            let tau = UnitVec3::normalized(c[0], c[1], c[2]).unwrap();
            let lhs = mul(&rv(&sigma, phi), &mul(&pi_gate(&tau), &rv(&sigma, -phi)));
            let rhs = pi_gate(&rot3(&sigma, phi, &tau).unwrap());
            prop_assert!(max_dist(&lhs, &rhs) < 1e-10);
        }

        #[test]
        fn a_gates_satisfy_their_identities(v in arb_axis(), lam in -2.0 * PI..2.0 * PI) {
            let t = AxisAngle::new(v, lam);
            let g = a_gates(&t);
            let a4 = product(&g.a4);
            let sandwich = mul(&dagger(&a4), &mul(&rx(lam), &a4));
            prop_assert!(max_dist(&sandwich, &t.matrix()) < 1e-10);
            let a1 = mul(&dagger(&a4), &product(&g.a3));
            prop_assert!(max_dist(&product(&g.a1), &a1) < 1e-12);
            prop_assert!(max_dist(&product(&g.a2), &rx(-lam / 4.0)) < 1e-12);
            prop_assert!(max_dist(&product(&g.a3), &rx(lam / 4.0)) < 1e-12);
        }

        #[test]
        fn euler_factorization_reconstructs(v in arb_axis(), lam in -2.0 * PI..2.0 * PI) {
            let u = rv(&v, lam);
            let (a, b, c) = euler_xzx(&u);
            let r = mul(&rx(a), &mul(&rz(b), &rx(c)));
            prop_assert!(max_dist_up_to_phase(&r, &u) < 1e-10);
        }
    }
}
