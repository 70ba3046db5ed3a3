//! Complex matrices for U(n), with the invariant inner product
//! `(ξ, η) = −tr(ξη) / 4π²`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{NumError, Result};

pub type C = Complex64;
pub type CMat = DMatrix<C>;
pub type CVec = DVector<C>;

pub const I: C = C::new(0.0, 1.0);

/// Unitarity tolerance for [`GroupPoint`].
pub const UNITARY_TOL: f64 = 1e-10;
/// Anti-Hermitian tolerance for [`LieVector`].
pub const LIE_TOL: f64 = 1e-12;

pub fn ip(a: &CMat, b: &CMat) -> f64 {
    // tr(ab) without forming the product
    let mut t = C::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    -t.re / (4.0 * PI * PI)
}

pub fn bracket(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// `Ad(g)ξ = gξg⁻¹` for unitary `g`.
pub fn conj(g: &CMat, x: &CMat) -> CMat {
    g * x * g.adjoint()
}

pub fn frob(a: &CMat) -> f64 {
    a.norm()
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn anti_hermitian_defect(x: &CMat) -> f64 {
    (x + x.adjoint()).norm()
}

pub fn unitary_defect(u: &CMat) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).norm()
}

/// Project onto the anti-Hermitian part.
pub fn skew(x: &CMat) -> CMat {
    (x - x.adjoint()) * C::new(0.5, 0.0)
}

/// An element of U(n), checked unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint(CMat);

impl GroupPoint {
    pub fn new(m: CMat) -> Result<Self> {
        if !m.is_square() {
            return Err(NumError::Size { expected: m.nrows(), got: m.ncols() });
        }
        let residual = unitary_defect(&m);
        if residual > UNITARY_TOL {
            return Err(NumError::NotUnitary { residual });
        }
        Ok(GroupPoint(m))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }
}

/// An element of u(n), checked anti-Hermitian at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LieVector(CMat);

impl LieVector {
    pub fn new(m: CMat) -> Result<Self> {
        if !m.is_square() {
            return Err(NumError::Size { expected: m.nrows(), got: m.ncols() });
        }
        let residual = anti_hermitian_defect(&m);
        if residual > LIE_TOL {
            return Err(NumError::NotAntiHermitian { residual });
        }
        Ok(LieVector(m))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }
}

/// Eigendecomposition `λ = V diag(iμ) V*` of an anti-Hermitian matrix.
pub struct SkewEigen {
    pub mu: Vec<f64>,
    pub v: CMat,
}

pub fn skew_eigen(lambda: &CMat) -> SkewEigen {
    // iλ is Hermitian with eigenvalues −μ
    let h = skew(lambda) * I;
    let eig = SymmetricEigen::new(h);
    SkewEigen {
        mu: eig.eigenvalues.iter().map(|w| -w).collect(),
        v: eig.eigenvectors,
    }
}

/// Exponential of an anti-Hermitian matrix.
pub fn exp_lie(x: &CMat) -> CMat {
    let SkewEigen { mu, v } = skew_eigen(x);
    let d = CMat::from_diagonal(&CVec::from_iterator(
        mu.len(),
        mu.iter().map(|m| C::from_polar(1.0, *m)),
    ));
    &v * d * v.adjoint()
}

/// Eigenvalues of a unitary matrix as angles in `(−π, π]`.
pub fn unitary_angles(u: &CMat) -> Vec<f64> {
    // A unitary matrix is normal, so its complex Schur form is diagonal.
    let t = u.clone().schur().unpack().1;
    (0..t.nrows()).map(|i| t[(i, i)].arg()).collect()
}

/// Principal logarithm of a unitary matrix; fails when an eigenvalue is
/// within `1e−6` of `−1`.
pub fn log_unitary(u: &CMat) -> Result<CMat> {
    let (q, t) = u.clone().schur().unpack();
    let n = t.nrows();
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        let z = t[(i, i)];
        let gap = (z + C::new(1.0, 0.0)).norm();
        if gap < 1e-6 {
            return Err(NumError::BranchCut { gap });
        }
        d[(i, i)] = C::new(0.0, z.arg());
    }
    Ok(skew(&(&q * d * q.adjoint())))
}

/// Which Lie algebra a model's group has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    U,
    SU,
}

impl Algebra {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Algebra::U => n * n,
            Algebra::SU => n * n - 1,
        }
    }

    /// A real basis of u(n) or su(n).
    pub fn basis(self, n: usize) -> Vec<CMat> {
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in j + 1..n {
                let mut a = CMat::zeros(n, n);
                a[(j, k)] = C::new(1.0, 0.0);
                a[(k, j)] = C::new(-1.0, 0.0);
                out.push(a);
                let mut b = CMat::zeros(n, n);
                b[(j, k)] = I;
                b[(k, j)] = I;
                out.push(b);
            }
        }
        match self {
            Algebra::U => {
                for j in 0..n {
                    let mut h = CMat::zeros(n, n);
                    h[(j, j)] = I;
                    out.push(h);
                }
            }
            Algebra::SU => {
                for j in 0..n.saturating_sub(1) {
                    let mut h = CMat::zeros(n, n);
                    h[(j, j)] = I;
                    h[(j + 1, j + 1)] = -I;
                    out.push(h);
                }
            }
        }
        out
    }

    /// Gaussian random element.
    pub fn random<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> CMat {
        let g = gaussian(n, rng);
        let mut x = skew(&g);
        if self == Algebra::SU {
            let tr = x.trace() / C::new(n as f64, 0.0);
            for i in 0..n {
                x[(i, i)] -= tr;
            }
        }
        x
    }

    /// Haar random group element.
    pub fn random_group<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> CMat {
        match self {
            Algebra::U => haar_unitary(n, rng),
            Algebra::SU => haar_special_unitary(n, rng),
        }
    }
}

fn gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn gaussian_vec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVec {
    CVec::from_fn(n, |_, _| {
        C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar measure on U(n): QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let (mut q, r) = gaussian(n, rng).qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar measure on SU(n), normalizing the determinant by an n-th root.
pub fn haar_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let q = haar_unitary(n, rng);
    let det = q.determinant();
    let root = C::from_polar(1.0, -det.arg() / n as f64);
    q * root
}

/// Real coordinates `(re, im)` of all entries, column-major.
pub fn real_coords(m: &CMat) -> Vec<f64> {
    m.iter().flat_map(|z| [z.re, z.im]).collect()
}

pub fn vec_real_coords(v: &CVec) -> Vec<f64> {
    v.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Real rank by singular values relative to the largest.
pub fn real_rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..5 {
            let u = haar_special_unitary(n, &mut rng);
            assert!(unitary_defect(&u) < 1e-12);
            assert!((u.determinant() - C::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..5 {
            let x = Algebra::U.random(n, &mut rng) * C::new(0.3, 0.0);
            let u = exp_lie(&x);
            assert!(unitary_defect(&u) < 1e-12);
            assert!((log_unitary(&u).unwrap() - &x).norm() < 1e-10);
        }
        let minus = CMat::from_diagonal_element(2, 2, C::new(-1.0, 0.0));
        assert!(log_unitary(&minus).is_err());
    }

    #[test]
    fn inner_product_normalization() {
        // diag(2πi, −2πi) has norm² = 2
        let mut h = CMat::zeros(2, 2);
        h[(0, 0)] = I * 2.0 * PI;
        h[(1, 1)] = -I * 2.0 * PI;
        assert!((ip(&h, &h) - 2.0).abs() < 1e-14);
        assert_eq!(Algebra::SU.basis(3).len(), 8);
        assert_eq!(Algebra::U.basis(3).len(), 9);
    }

    #[test]
    fn validated_wrappers() {
        assert!(GroupPoint::new(identity(3)).is_ok());
        assert!(GroupPoint::new(identity(3) * C::new(2.0, 0.0)).is_err());
        assert!(LieVector::new(identity(2) * I).is_ok());
        assert!(LieVector::new(identity(2)).is_err());
    }
}
