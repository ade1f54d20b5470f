//! Two-qubit states, their correlation (Bloch) form, and the local
//! rotation action.
//!
//! A two-qubit state ρ is a complex 4×4 matrix with unit trace; hermiticity
//! is optional and positivity is never enforced, so the full complex state
//! space is available. The Bloch form of ρ collects its one- and two-point
//! correlation functions against the Pauli basis:
//!
//!   u₁ᵢ = tr(ρ σᵢ⊗σ₀),  u₂ⱼ = tr(ρ σ₀⊗σⱼ),  Cᵢⱼ = tr(ρ σᵢ⊗σⱼ),
//!
//! with the constant tr(ρ σ₀⊗σ₀) = 1 left implicit. Conjugating ρ by a
//! product of special unitaries U₁⊗U₂ acts on the Bloch form through the
//! adjoint rotations gᵢ = R(Uᵢ):
//!
//!   (g₁, g₂)·(u₁, u₂, C) = (g₁u₁, g₂u₂, g₁Cg₂ᵀ).
//!
//! The covering map R is 2-to-1 (kernel ±I), so rotation pairs, not
//! unitary pairs, are the faithful symmetry data. [`act`] applies the
//! action for any complex special orthogonal pair.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::invariants;
use crate::linalg::{CMat3, CVec3};
use crate::tol;

/// 2×2 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [1.0.into(), 0.0.into()],
            [0.0.into(), 1.0.into()],
        ])
    }

    pub fn matmul(&self, other: &Mat2) -> Mat2 {
        let mut p = [[Complex64::from(0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    p[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        Mat2(p)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat2 {
        let mut d = [[Complex64::from(0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                d[j][i] = self.0[i][j].conj();
            }
        }
        Mat2(d)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|e| e * s)))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Deviation from SU(2): max of ‖U†U − I‖_max and |det U − 1|.
    pub fn special_unitarity_deviation(&self) -> f64 {
        self.dagger()
            .matmul(self)
            .max_abs_diff(&Mat2::identity())
            .max((self.det() - 1.0).norm())
    }
}

/// 4×4 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[Complex64; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[Complex64::from(0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = 1.0.into();
        }
        m
    }

    pub fn matmul(&self, other: &Mat4) -> Mat4 {
        let mut p = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    p.0[i][j] += self.0[i][k] * other.0[k][j];
                }
            }
        }
        p
    }

    pub fn dagger(&self) -> Mat4 {
        let mut d = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                d.0[j][i] = self.0[i][j].conj();
            }
        }
        d
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// tr(AB) without forming the product.
    pub fn trace_product(a: &Mat4, b: &Mat4) -> Complex64 {
        let mut t = Complex64::from(0.0);
        for i in 0..4 {
            for k in 0..4 {
                t += a.0[i][k] * b.0[k][i];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat4) -> Mat4 {
        let mut s = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                s.0[i][j] = self.0[i][j] + other.0[i][j];
            }
        }
        s
    }

    pub fn scale(&self, s: Complex64) -> Mat4 {
        Mat4(self.0.map(|row| row.map(|e| e * s)))
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Largest deviation from M == M†.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        d
    }
}

/// Kronecker product with the convention `(A ⊗ B)[2i+k][2j+l] = A[i][j]·B[k][l]`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// The Pauli basis `[σ₀, σ₁, σ₂, σ₃]`:
/// σ₀ = I, σ₁ = `[[0,1],[1,0]]`, σ₂ = `[[0,−i],[i,0]]`, σ₃ = `[[1,0],[0,−1]]`.
pub fn pauli_basis() -> [Mat2; 4] {
    let z = Complex64::from(0.0);
    let one = Complex64::from(1.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Mat2([[one, z], [z, one]]),
        Mat2([[z, one], [one, z]]),
        Mat2([[z, -i], [i, z]]),
        Mat2([[one, z], [z, -one]]),
    ]
}

/// A two-qubit state: complex 4×4 matrix with unit trace. Hermiticity is
/// enforced only when requested; positivity never is.
#[derive(Clone, Copy, Debug)]
pub struct DensityMatrix {
    rho: Mat4,
    hermitian_required: bool,
}

impl DensityMatrix {
    /// Validates the unit trace within [`tol::STRUCTURAL`].
    pub fn new(rho: Mat4) -> Result<Self> {
        Self::with_trace_tol(rho, false, tol::STRUCTURAL)
    }

    /// Like [`DensityMatrix::new`] but additionally requires ρ == ρ†.
    pub fn hermitian(rho: Mat4) -> Result<Self> {
        Self::with_trace_tol(rho, true, tol::STRUCTURAL)
    }

    pub fn with_trace_tol(rho: Mat4, hermitian_required: bool, trace_tol: f64) -> Result<Self> {
        let dev = (rho.trace() - 1.0).norm();
        if dev > trace_tol {
            return Err(Error::NotAState {
                reason: "trace is not 1",
                deviation: dev,
                tol: trace_tol,
            });
        }
        if hermitian_required {
            let h = rho.hermiticity_deviation();
            if h > tol::STRUCTURAL {
                return Err(Error::NotAState {
                    reason: "matrix is not Hermitian",
                    deviation: h,
                    tol: tol::STRUCTURAL,
                });
            }
        }
        Ok(Self {
            rho,
            hermitian_required,
        })
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.rho
    }

    pub fn hermitian_required(&self) -> bool {
        self.hermitian_required
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.rho.hermiticity_deviation()
    }

    /// (U₁⊗U₂) ρ (U₁⊗U₂)†. Preserves the trace and hermiticity.
    pub fn conjugated(&self, g: &LocalUnitary) -> DensityMatrix {
        let u = g.kron();
        DensityMatrix {
            rho: u.matmul(&self.rho).matmul(&u.dagger()),
            hermitian_required: self.hermitian_required,
        }
    }
}

/// Bloch form of a state: one-point vectors u₁, u₂ and the two-point
/// correlation matrix C. The implicit constant correlation is 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochMatrix {
    pub u1: CVec3,
    pub u2: CVec3,
    pub c: CMat3,
}

impl BlochMatrix {
    pub fn new(u1: CVec3, u2: CVec3, c: CMat3) -> Self {
        Self { u1, u2, c }
    }

    pub fn zero() -> Self {
        Self::new(CVec3::zero(), CVec3::zero(), CMat3::zero())
    }

    /// Largest magnitude over all 15 entries.
    pub fn max_abs(&self) -> f64 {
        self.u1.max_abs().max(self.u2.max_abs()).max(self.c.max_abs())
    }

    pub fn max_abs_diff(&self, other: &BlochMatrix) -> f64 {
        self.u1
            .max_abs_diff(&other.u1)
            .max(self.u2.max_abs_diff(&other.u2))
            .max(self.c.max_abs_diff(&other.c))
    }

    pub fn max_imag(&self) -> f64 {
        self.u1.max_imag().max(self.u2.max_imag()).max(self.c.max_imag())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    /// Copy with all imaginary parts dropped.
    pub fn re(&self) -> BlochMatrix {
        Self::new(self.u1.re(), self.u2.re(), self.c.re())
    }

    /// Largest deviation from u₁ == u₂ and C == Cᵀ.
    pub fn symmetry_deviation(&self) -> f64 {
        self.u1
            .max_abs_diff(&self.u2)
            .max(self.c.symmetry_deviation())
    }
}

/// u₁ == u₂ and C == Cᵀ entrywise within `tol`.
pub fn is_symmetric_state(b: &BlochMatrix, tol: f64) -> bool {
    b.symmetry_deviation() <= tol
}

/// Correlation functions of ρ against the Pauli basis.
///
/// For Hermitian ρ every correlation is real up to roundoff; in that case
/// (hermiticity deviation within [`tol::STRUCTURAL`]) the imaginary dust is
/// dropped and the result is exactly real, so downstream arithmetic stays
/// real end to end.
pub fn density_to_bloch(rho: &DensityMatrix) -> BlochMatrix {
    let p = pauli_basis();
    let mut corr = [[Complex64::from(0.0); 4]; 4];
    for (i, pi) in p.iter().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            if i == 0 && j == 0 {
                continue;
            }
            corr[i][j] = Mat4::trace_product(rho.matrix(), &kron(pi, pj));
        }
    }
    let b = BlochMatrix::new(
        CVec3::new(corr[1][0], corr[2][0], corr[3][0]),
        CVec3::new(corr[0][1], corr[0][2], corr[0][3]),
        CMat3::new([
            [corr[1][1], corr[1][2], corr[1][3]],
            [corr[2][1], corr[2][2], corr[2][3]],
            [corr[3][1], corr[3][2], corr[3][3]],
        ]),
    );
    if rho.hermiticity_deviation() <= tol::STRUCTURAL {
        b.re()
    } else {
        b
    }
}

/// Inverse of [`density_to_bloch`]: ρ = ¼ Σᵢⱼ cᵢⱼ σᵢ⊗σⱼ with c₀₀ = 1,
/// cᵢ₀ = u₁ᵢ, c₀ⱼ = u₂ⱼ. The trace is 1 by construction.
pub fn bloch_to_density(b: &BlochMatrix) -> DensityMatrix {
    let p = pauli_basis();
    let u1 = b.u1.as_array();
    let u2 = b.u2.as_array();
    let mut coeff = [[Complex64::from(0.0); 4]; 4];
    coeff[0][0] = 1.0.into();
    for i in 0..3 {
        coeff[i + 1][0] = u1[i];
        coeff[0][i + 1] = u2[i];
        for j in 0..3 {
            coeff[i + 1][j + 1] = b.c.m[i][j];
        }
    }
    let mut rho = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            rho = rho.add(&kron(&p[i], &p[j]).scale(coeff[i][j] * 0.25));
        }
    }
    debug_assert!((rho.trace() - 1.0).norm() <= 1e-12);
    DensityMatrix {
        rho,
        hermitian_required: false,
    }
}

/// Image of a special unitary under the covering map onto SO(3):
/// Rᵢⱼ = ½ tr(σᵢ U σⱼ U†), i,j ∈ {1,2,3}. R(U) == R(−U).
///
/// The entries are exactly real for unitary input; the roundoff-size
/// imaginary parts are discarded.
pub fn adjoint_rotation(u: &Mat2) -> Result<CMat3> {
    let dev = u.special_unitarity_deviation();
    if dev > tol::STRUCTURAL {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let p = pauli_basis();
    let ud = u.dagger();
    let mut out = [[Complex64::from(0.0); 3]; 3];
    for j in 0..3 {
        let conj = u.matmul(&p[j + 1]).matmul(&ud);
        for i in 0..3 {
            out[i][j] = (p[i + 1].matmul(&conj)).trace() * 0.5;
        }
    }
    Ok(CMat3::new(out).re())
}

/// A pair of special unitaries acting on the two tensor factors.
#[derive(Clone, Copy, Debug)]
pub struct LocalUnitary {
    u1: Mat2,
    u2: Mat2,
}

impl LocalUnitary {
    /// Validates both factors against SU(2) within [`tol::STRUCTURAL`].
    pub fn new(u1: Mat2, u2: Mat2) -> Result<Self> {
        for u in [&u1, &u2] {
            let dev = u.special_unitarity_deviation();
            if dev > tol::STRUCTURAL {
                return Err(Error::NotUnitary { deviation: dev });
            }
        }
        Ok(Self { u1, u2 })
    }

    /// Two independent Haar-distributed factors.
    pub fn haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            u1: haar_su2(rng),
            u2: haar_su2(rng),
        }
    }

    pub fn factors(&self) -> (&Mat2, &Mat2) {
        (&self.u1, &self.u2)
    }

    pub fn kron(&self) -> Mat4 {
        kron(&self.u1, &self.u2)
    }

    /// The adjoint rotations of both factors.
    pub fn rotation_pair(&self) -> RotationPair {
        RotationPair {
            g1: adjoint_rotation(&self.u1).expect("factor validated on construction"),
            g2: adjoint_rotation(&self.u2).expect("factor validated on construction"),
        }
    }
}

/// A pair of 3×3 special orthogonal matrices (complex allowed), one per
/// tensor factor.
#[derive(Clone, Copy, Debug)]
pub struct RotationPair {
    g1: CMat3,
    g2: CMat3,
}

impl RotationPair {
    /// Validates both factors within [`tol::ROTATION`].
    pub fn new(g1: CMat3, g2: CMat3) -> Result<Self> {
        for g in [&g1, &g2] {
            let dev = g.orthogonality_deviation();
            if dev > tol::ROTATION {
                return Err(Error::NotRotation { deviation: dev });
            }
        }
        Ok(Self { g1, g2 })
    }

    /// For factors that are special orthogonal by construction.
    pub(crate) fn new_unchecked(g1: CMat3, g2: CMat3) -> Self {
        debug_assert!(g1.is_special_orthogonal(tol::ROTATION));
        debug_assert!(g2.is_special_orthogonal(tol::ROTATION));
        Self { g1, g2 }
    }

    pub fn g1(&self) -> &CMat3 {
        &self.g1
    }

    pub fn g2(&self) -> &CMat3 {
        &self.g2
    }

    /// Factorwise inverse; for orthogonal matrices this is the transpose.
    pub fn inverse(&self) -> RotationPair {
        Self {
            g1: self.g1.transpose(),
            g2: self.g2.transpose(),
        }
    }

    /// Composition applying `other` first: act(a.compose(b), B) ==
    /// act(a, act(b, B)).
    pub fn compose(&self, other: &RotationPair) -> RotationPair {
        Self {
            g1: self.g1.matmul(&other.g1),
            g2: self.g2.matmul(&other.g2),
        }
    }
}

/// The local rotation action (g₁, g₂)·(u₁, u₂, C) = (g₁u₁, g₂u₂, g₁Cg₂ᵀ).
pub fn act(g: &RotationPair, b: &BlochMatrix) -> BlochMatrix {
    BlochMatrix::new(
        g.g1.matvec(&b.u1),
        g.g2.matvec(&b.u2),
        g.g1.matmul(&b.c).matmul(&g.g2.transpose()),
    )
}

/// Haar-distributed SU(2) element via the unit quaternion method: four
/// independent standard normals normalized to the 3-sphere, mapped to
/// U = [[q₀+iq₃, q₂+iq₁], [−q₂+iq₁, q₀−iq₃]].
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let q: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-6 {
            continue;
        }
        let [q0, q1, q2, q3] = q.map(|x| x / n);
        return Mat2([
            [Complex64::new(q0, q3), Complex64::new(q2, q1)],
            [Complex64::new(-q2, q1), Complex64::new(q0, -q3)],
        ]);
    }
}

/// Adjoint rotations of two independent Haar SU(2) draws: Haar-distributed
/// on SO(3) × SO(3).
pub fn haar_rotation_pair<R: Rng + ?Sized>(rng: &mut R) -> RotationPair {
    LocalUnitary::haar(rng).rotation_pair()
}

/// Families available to [`random_state`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    /// All 15 Bloch entries uniform in [−1, 1].
    GenericBloch,
    /// Bloch form of AA†/tr(AA†) for a complex Gaussian A: a Hermitian,
    /// positive, physical state.
    HermitianDensity,
    /// u₁ == u₂ and C == Cᵀ with entries uniform in [−1, 1].
    Symmetric,
}

/// Hermitian positive unit-trace state AA†/tr(AA†) with A a 4×4 matrix of
/// independent standard complex Gaussians.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let mut a = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            a.0[i][j] = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let aa = a.matmul(&a.dagger());
    let rho = aa.scale(Complex64::from(1.0) / aa.trace());
    DensityMatrix {
        rho,
        hermitian_required: true,
    }
}

/// Random real-valued Bloch state of the given family.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, kind: StateKind) -> BlochMatrix {
    let draw = |rng: &mut R| rng.random_range(-1.0..=1.0);
    match kind {
        StateKind::GenericBloch => {
            let next3 = |rng: &mut R| CVec3::from_real(draw(rng), draw(rng), draw(rng));
            let u1 = next3(rng);
            let u2 = next3(rng);
            let mut c = [[0.0; 3]; 3];
            for row in &mut c {
                for e in row.iter_mut() {
                    *e = draw(rng);
                }
            }
            BlochMatrix::new(u1, u2, CMat3::from_real(c))
        }
        StateKind::HermitianDensity => density_to_bloch(&random_density(rng)),
        StateKind::Symmetric => {
            let u = CVec3::from_real(draw(rng), draw(rng), draw(rng));
            let mut c = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    let e = draw(rng);
                    c[i][j] = e;
                    c[j][i] = e;
                }
            }
            BlochMatrix::new(u, u, CMat3::from_real(c))
        }
    }
}

/// Rejection-samples [`random_state`] until the genericity guard passes at
/// threshold `tol`. Non-generic draws are a measure-zero event, so more
/// than a few retries indicates a bug.
pub fn random_generic_state<R: Rng + ?Sized>(rng: &mut R, kind: StateKind, tol: f64) -> BlochMatrix {
    for _ in 0..1000 {
        let b = random_state(rng, kind);
        if invariants::genericity(&b, tol).is_generic() {
            return b;
        }
    }
    panic!("no generic state in 1000 draws; genericity guard is broken");
}
