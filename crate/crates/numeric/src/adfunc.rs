//! Analytic functions of `ad λ` for anti-Hermitian `λ`.

use std::str::FromStr;

use crate::error::{NumError, Result};
use crate::linalg::{ip, skew, skew_eigen, CMat, LieVector, C, I};

/// Below this modulus the power series is used.
pub const SERIES_CUTOFF: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdFunction {
    /// `(1 − e^{−x}) / x`, the left trivialized derivative of `exp`.
    DexpLeft,
    /// `(e^x − 1) / x`
    DexpRight,
    /// `(x − sinh x) / x²`
    VarpiKernel,
    /// `sinh x / x`
    SinhOverX,
    Sinh,
}

impl AdFunction {
    pub fn eval(self, x: C) -> C {
        let one = C::new(1.0, 0.0);
        let small = x.norm() < SERIES_CUTOFF;
        match self {
            AdFunction::DexpLeft if small => one - x / 2.0 + x * x / 6.0 - x * x * x / 24.0,
            AdFunction::DexpLeft => (one - (-x).exp()) / x,
            AdFunction::DexpRight if small => one + x / 2.0 + x * x / 6.0 + x * x * x / 24.0,
            AdFunction::DexpRight => (x.exp() - one) / x,
            AdFunction::VarpiKernel if small => -x / 6.0 - x * x * x / 120.0,
            AdFunction::VarpiKernel => (x - x.sinh()) / (x * x),
            AdFunction::SinhOverX if small => one + x * x / 6.0 + x * x * x * x / 120.0,
            AdFunction::SinhOverX => x.sinh() / x,
            AdFunction::Sinh => x.sinh(),
        }
    }
}

impl FromStr for AdFunction {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dexp_left" => AdFunction::DexpLeft,
            "dexp_right" => AdFunction::DexpRight,
            "varpi_kernel" => AdFunction::VarpiKernel,
            "sinh_over_x" => AdFunction::SinhOverX,
            "sinh" => AdFunction::Sinh,
            _ => return Err(NumError::Invalid(format!("unknown function `{s}`"))),
        })
    }
}

/// `f(ad λ) ξ`, unchecked.
///
/// In an eigenbasis `λ = V diag(iμ) V*` the operator `ad λ` acts on the
/// matrix unit `E_jk` by `i(μ_j − μ_k)`.
pub fn ad_apply(f: AdFunction, lambda: &CMat, xi: &CMat) -> CMat {
    let eig = skew_eigen(lambda);
    let v = &eig.v;
    let mut x = v.adjoint() * xi * v;
    let n = x.nrows();
    for j in 0..n {
        for k in 0..n {
            x[(j, k)] *= f.eval(I * (eig.mu[j] - eig.mu[k]));
        }
    }
    skew(&(v * x * v.adjoint()))
}

/// `f(ad λ) ξ` with both arguments validated.
pub fn ad_analytic(f: AdFunction, lambda: &LieVector, xi: &LieVector) -> Result<LieVector> {
    if lambda.n() != xi.n() {
        return Err(NumError::Size { expected: lambda.n(), got: xi.n() });
    }
    LieVector::new(ad_apply(f, lambda.matrix(), xi.matrix()))
}

/// `ϖ_λ(ξ₁, ξ₂) = (((ad λ − sinh ad λ) / (ad λ)²) ξ₁, ξ₂)`, unchecked.
pub fn varpi(lambda: &CMat, xi1: &CMat, xi2: &CMat) -> f64 {
    ip(&ad_apply(AdFunction::VarpiKernel, lambda, xi1), xi2)
}

pub fn varpi_eval(lambda: &LieVector, xi1: &LieVector, xi2: &LieVector) -> Result<f64> {
    let n = lambda.n();
    for m in [xi1, xi2] {
        if m.n() != n {
            return Err(NumError::Size { expected: n, got: m.n() });
        }
    }
    Ok(varpi(lambda.matrix(), xi1.matrix(), xi2.matrix()))
}

/// Root-space form of `ϖ_λ` for diagonal `λ`:
/// `−(4π²)⁻¹ Σ_{j≠k} f(λ_jj − λ_kk) (ξ₁)_jk (ξ₂)_kj` with `f(x) = (x − sinh x)/x²`.
pub fn varpi_root_space(lambda: &CMat, xi1: &CMat, xi2: &CMat) -> f64 {
    let n = lambda.nrows();
    let mut s = C::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let a = lambda[(j, j)] - lambda[(k, k)];
                s += AdFunction::VarpiKernel.eval(a) * xi1[(j, k)] * xi2[(k, j)];
            }
        }
    }
    -s.re / (4.0 * std::f64::consts::PI.powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exp_lie, Algebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn series_branch_is_continuous() {
        for f in [
            AdFunction::DexpLeft,
            AdFunction::DexpRight,
            AdFunction::VarpiKernel,
            AdFunction::SinhOverX,
        ] {
            let a = f.eval(I * (SERIES_CUTOFF * 0.999));
            let b = f.eval(I * (SERIES_CUTOFF * 1.001));
            assert!((a - b).norm() < 1e-7, "{f:?}");
        }
        assert_eq!(AdFunction::DexpLeft.eval(C::new(0.0, 0.0)), C::new(1.0, 0.0));
        assert_eq!(AdFunction::VarpiKernel.eval(C::new(0.0, 0.0)), C::new(0.0, 0.0));
    }

    #[test]
    fn dexp_matches_difference_quotient() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let l = Algebra::U.random(3, &mut rng);
        let e = Algebra::U.random(3, &mut rng);
        let h = 1e-5;
        let g = exp_lie(&l);
        let fd = (exp_lie(&(&l + &e * C::new(h, 0.0))) - exp_lie(&(&l - &e * C::new(h, 0.0))))
            / C::new(2.0 * h, 0.0);
        let left = g.adjoint() * &fd;
        let right = &fd * g.adjoint();
        assert!((left - ad_apply(AdFunction::DexpLeft, &l, &e)).norm() < 1e-8);
        assert!((right - ad_apply(AdFunction::DexpRight, &l, &e)).norm() < 1e-8);
    }
}
