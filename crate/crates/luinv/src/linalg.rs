//! Complex 3-vectors and 3×3 matrices under the bilinear dot product.
//!
//! All geometry in this crate lives on ℂ³ equipped with the symmetric
//! bilinear form a·b = a₁b₁ + a₂b₂ + a₃b₃ (no complex conjugation). The
//! form is preserved by complex special orthogonal matrices, and unlike the
//! Hermitian inner product it admits nonzero isotropic vectors such as
//! (1, i, 0), so every division by a norm must be guarded by checking the
//! squared length first.
//!
//! Square roots throughout use the principal branch: cut along the negative
//! real axis, nonnegative real part of the result.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

fn check_finite(c: Complex64) {
    assert!(
        c.re.is_finite() && c.im.is_finite(),
        "non-finite component {c}"
    );
}

/// Complex 3-vector. Components are finite by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CVec3 {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        check_finite(x);
        check_finite(y);
        check_finite(z);
        Self { x, y, z }
    }

    pub fn from_real(x: f64, y: f64, z: f64) -> Self {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [Complex64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Bilinear dot product a·b = a₁b₁ + a₂b₂ + a₃b₃ (no conjugation).
    pub fn dot(&self, other: &CVec3) -> Complex64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product; bilinear and antisymmetric, orthogonal to both
    /// factors under [`CVec3::dot`].
    pub fn cross(&self, other: &CVec3) -> CVec3 {
        CVec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Principal square root of the squared length v·v. Zero for isotropic
    /// vectors even when the vector itself is nonzero.
    pub fn norm(&self) -> Complex64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> CVec3 {
        CVec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }

    pub fn max_abs_diff(&self, other: &CVec3) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest imaginary part in magnitude.
    pub fn max_imag(&self) -> f64 {
        self.x.im.abs().max(self.y.im.abs()).max(self.z.im.abs())
    }

    /// Copy with imaginary parts dropped.
    pub fn re(&self) -> CVec3 {
        Self::from_real(self.x.re, self.y.re, self.z.re)
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, rhs: CVec3) -> CVec3 {
        CVec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, rhs: CVec3) -> CVec3 {
        CVec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        self.scale((-1.0).into())
    }
}

/// Complex 3×3 matrix, row major. Entries are finite by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat3 {
    pub m: [[Complex64; 3]; 3],
}

impl CMat3 {
    pub fn new(m: [[Complex64; 3]; 3]) -> Self {
        for row in &m {
            for &e in row {
                check_finite(e);
            }
        }
        Self { m }
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        Self::new(m.map(|row| row.map(Complex64::from)))
    }

    pub fn from_rows(r0: CVec3, r1: CVec3, r2: CVec3) -> Self {
        Self::new([r0.as_array(), r1.as_array(), r2.as_array()])
    }

    pub fn from_diag(d: [Complex64; 3]) -> Self {
        let z = Complex64::from(0.0);
        Self::new([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn row(&self, i: usize) -> CVec3 {
        CVec3::from_array(self.m[i])
    }

    pub fn col(&self, j: usize) -> CVec3 {
        CVec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn transpose(&self) -> CMat3 {
        let mut t = [[Complex64::from(0.0); 3]; 3];
        for (i, row) in self.m.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                t[j][i] = e;
            }
        }
        CMat3::new(t)
    }

    pub fn matvec(&self, v: &CVec3) -> CVec3 {
        CVec3::new(
            self.row(0).dot(v),
            self.row(1).dot(v),
            self.row(2).dot(v),
        )
    }

    pub fn matmul(&self, other: &CMat3) -> CMat3 {
        let mut p = [[Complex64::from(0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                p[i][j] = self.row(i).dot(&other.col(j));
            }
        }
        CMat3::new(p)
    }

    pub fn det(&self) -> Complex64 {
        self.row(0).dot(&self.row(1).cross(&self.row(2)))
    }

    pub fn scale(&self, s: Complex64) -> CMat3 {
        CMat3::new(self.m.map(|row| row.map(|e| e * s)))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat3) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest imaginary part in magnitude.
    pub fn max_imag(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|e| e.im.abs())
            .fold(0.0, f64::max)
    }

    /// Copy with imaginary parts dropped.
    pub fn re(&self) -> CMat3 {
        Self::new(self.m.map(|row| row.map(|e| Complex64::from(e.re))))
    }

    /// Largest deviation from M == Mᵀ.
    pub fn symmetry_deviation(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - self.m[j][i]).norm());
            }
        }
        d
    }

    /// Deviation from the special orthogonal group under the bilinear form:
    /// max of ‖MᵀM − I‖_max and |det M − 1|. Transposition only, no
    /// conjugation, so complex rotations qualify.
    pub fn orthogonality_deviation(&self) -> f64 {
        let gram = self.transpose().matmul(self);
        gram.max_abs_diff(&CMat3::identity())
            .max((self.det() - 1.0).norm())
    }

    pub fn is_special_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_deviation() <= tol
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(self, rhs: CMat3) -> CMat3 {
        let mut s = [[Complex64::from(0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        CMat3::new(s)
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(self, rhs: CMat3) -> CMat3 {
        let mut s = [[Complex64::from(0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = self.m[i][j] - rhs.m[i][j];
            }
        }
        CMat3::new(s)
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, rhs: CMat3) -> CMat3 {
        self.matmul(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
    }

    fn vec_close(a: &CVec3, b: &CVec3, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol * a.max_abs().max(b.max_abs()).max(1.0)
    }

    #[test]
    fn dot_of_real_vectors() {
        let a = CVec3::from_real(1.0, 2.0, 3.0);
        let b = CVec3::from_real(4.0, 5.0, 6.0);
        assert_eq!(a.dot(&b), c(32.0, 0.0));
    }

    #[test]
    fn isotropic_vector_has_zero_dot_and_norm() {
        let v = CVec3::new(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        assert_eq!(v.dot(&v), c(0.0, 0.0));
        assert_eq!(v.norm().norm(), 0.0);
        assert!(v.max_abs() > 0.0);
    }

    #[test]
    fn cross_of_basis_vectors() {
        let e1 = CVec3::from_real(1.0, 0.0, 0.0);
        let e2 = CVec3::from_real(0.0, 1.0, 0.0);
        let e3 = CVec3::from_real(0.0, 0.0, 1.0);
        assert_eq!(e1.cross(&e2), e3);
        assert_eq!(e2.cross(&e3), e1);
        assert_eq!(e1.cross(&e1), CVec3::zero());
    }

    #[test]
    fn norm_is_principal_square_root() {
        assert_eq!(CVec3::from_real(0.0, 3.0, 0.0).norm(), c(3.0, 0.0));
        let d = CVec3::from_real(2.0, 0.0, 2.0).norm();
        assert!(close(d, c(8.0_f64.sqrt(), 0.0), 1e-15));
        // v·v = -1 lands on the branch cut; the principal root is ±i with
        // nonnegative real part.
        let v = CVec3::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0));
        let n = v.norm();
        assert!(n.re.abs() <= 1e-15 && (n.im.abs() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn matvec_applies_rows() {
        let m = CMat3::from_real([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 3.0]]);
        let v = CVec3::from_real(2.0, 0.0, 0.0);
        assert_eq!(m.matvec(&v), CVec3::from_real(2.0, 0.0, 2.0));
    }

    #[test]
    fn transpose_swaps_matvec_side() {
        let m = CMat3::from_real([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 10.0]]);
        let u = CVec3::from_real(1.0, -2.0, 0.5);
        let v = CVec3::from_real(-3.0, 0.0, 2.0);
        // u·(Mv) == (Mᵀu)·v
        assert!(close(
            u.dot(&m.matvec(&v)),
            m.transpose().matvec(&u).dot(&v),
            1e-14
        ));
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn matmul_with_identity() {
        let m = CMat3::from_real([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 10.0]]);
        assert_eq!(m.matmul(&CMat3::identity()), m);
        assert_eq!(CMat3::identity().matmul(&m), m);
    }

    #[test]
    fn det_of_diagonal() {
        let d = CMat3::from_diag([c(2.0, 0.0), c(3.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(d.det(), c(-6.0, 0.0));
    }

    #[test]
    fn special_orthogonal_detects_determinant_sign() {
        assert!(CMat3::identity().is_special_orthogonal(1e-12));
        let flip_two = CMat3::from_real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(flip_two.is_special_orthogonal(1e-12));
        // Orthogonal but determinant -1.
        let reflect = CMat3::from_real([[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(!reflect.is_special_orthogonal(1e-12));
        // A complex rotation: gram matrix is the identity without conjugation.
        let (ch, sh) = (2.0_f64.cosh(), 2.0_f64.sinh());
        let boost = CMat3::new([
            [c(ch, 0.0), c(0.0, sh), c(0.0, 0.0)],
            [c(0.0, -sh), c(ch, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        assert!(boost.is_special_orthogonal(1e-12));
    }

    #[test]
    #[should_panic(expected = "non-finite")]
    fn non_finite_component_is_rejected() {
        CVec3::from_real(f64::NAN, 0.0, 0.0);
    }

    fn arb_c() -> impl Strategy<Value = Complex64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
    }

    fn arb_vec() -> impl Strategy<Value = CVec3> {
        (arb_c(), arb_c(), arb_c()).prop_map(|(x, y, z)| CVec3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn grassmann_identity(a in arb_vec(), b in arb_vec(), cc in arb_vec()) {
            // a × (b × c) == (a·c) b − (a·b) c
            let lhs = a.cross(&b.cross(&cc));
            let rhs = b.scale(a.dot(&cc)) - cc.scale(a.dot(&b));
            prop_assert!(vec_close(&lhs, &rhs, 1e-12));
        }

        #[test]
        fn binet_cauchy_identity(a in arb_vec(), b in arb_vec(), cc in arb_vec(), d in arb_vec()) {
            // (a × b)·(c × d) == (a·c)(b·d) − (b·c)(a·d)
            let lhs = a.cross(&b).dot(&cc.cross(&d));
            let rhs = a.dot(&cc) * b.dot(&d) - b.dot(&cc) * a.dot(&d);
            prop_assert!(close(lhs, rhs, 1e-12));
        }

        #[test]
        fn norm_squares_to_dot(v in arb_vec()) {
            let n = v.norm();
            prop_assert!(close(n * n, v.dot(&v), 1e-12));
            prop_assert!(n.re >= -1e-15);
        }

        #[test]
        fn dot_symmetric_cross_antisymmetric(a in arb_vec(), b in arb_vec()) {
            prop_assert!(close(a.dot(&b), b.dot(&a), 1e-14));
            prop_assert!(vec_close(&a.cross(&b), &-(b.cross(&a)), 1e-14));
            prop_assert!(close(a.cross(&b).dot(&a), 0.0.into(), 1e-13));
            prop_assert!(close(a.cross(&b).dot(&b), 0.0.into(), 1e-13));
        }
    }
}
