//! Quasi-Hamiltonian models on U(n) and SU(n).
//!
//! Tangent vectors to group factors are left trivialized: a pair `(ξ, η)`
//! at `(u, v)` means `(uξ, vη)`. For the exponentiated cotangent bundle the
//! second slot is a plain direction in `k`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::adfunc::{ad_apply, varpi, AdFunction};
use crate::error::{NumError, Result};
use crate::linalg::{
    bracket, conj, exp_lie, identity, ip, skew_eigen, vec_real_coords, real_coords, Algebra,
    CMat, CVec, C, I,
};

pub type Rng64 = ChaCha8Rng;

/// Vector operations the generic checks need on tangent vectors.
pub trait TangentVector: Clone + Send + Sync {
    /// `a·self + b·other`
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self;
    /// Real coordinates, for rank computations.
    fn coords(&self) -> Vec<f64>;
}

impl TangentVector for CVec {
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self {
        self * C::new(a, 0.0) + other * C::new(b, 0.0)
    }
    fn coords(&self) -> Vec<f64> {
        vec_real_coords(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pair {
    pub a: CMat,
    pub b: CMat,
}

impl TangentVector for Pair {
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self {
        let (ca, cb) = (C::new(a, 0.0), C::new(b, 0.0));
        Pair {
            a: &self.a * ca + &other.a * cb,
            b: &self.b * ca + &other.b * cb,
        }
    }
    fn coords(&self) -> Vec<f64> {
        let mut v = real_coords(&self.a);
        v.extend(real_coords(&self.b));
        v
    }
}

/// A quasi-Hamiltonian manifold with explicit two-form and moment map.
///
/// The acting group is `factors()` copies of U(n) or SU(n); moment maps
/// and infinitesimal actions take one entry per factor.
pub trait QHamModel: Sync {
    type Point: Clone + Send + Sync + fmt::Debug;
    type Tangent: TangentVector;

    fn id(&self) -> &'static str;
    fn n(&self) -> usize;
    fn algebra(&self) -> Algebra;
    fn factors(&self) -> usize;
    fn validate(&self, p: &Self::Point) -> Result<()>;
    fn sample_point(&self, rng: &mut Rng64) -> Self::Point;

    fn omega(&self, p: &Self::Point, x: &Self::Tangent, y: &Self::Tangent) -> f64;
    fn moment(&self, p: &Self::Point) -> Vec<CMat>;
    /// `(Φ_i*θ_L(x), Φ_i*θ_R(x))` for each factor.
    fn moment_mc(&self, p: &Self::Point, x: &Self::Tangent) -> Vec<(CMat, CMat)>;
    /// The fundamental vector field `ξ_M` at `p`.
    fn generator(&self, p: &Self::Point, xi: &[CMat]) -> Self::Tangent;
    fn act(&self, k: &[CMat], p: &Self::Point) -> Self::Point;

    /// Local chart centred at `base`.
    fn chart_dim(&self) -> usize;
    fn chart_point(&self, base: &Self::Point, x: &[f64]) -> Self::Point;
    /// Coordinate vector field `∂_i` at chart coordinates `x`.
    fn chart_field(&self, base: &Self::Point, x: &[f64], i: usize) -> Self::Tangent;
    fn point_coords(&self, p: &Self::Point) -> Vec<f64>;

    /// A point where `Ad Φ + 1` is singular, if the model has a natural one.
    fn degenerate_point(&self) -> Option<Self::Point> {
        None
    }

    fn tangent_basis(&self, p: &Self::Point) -> Vec<Self::Tangent> {
        let zero = vec![0.0; self.chart_dim()];
        (0..self.chart_dim())
            .map(|i| self.chart_field(p, &zero, i))
            .collect()
    }

    fn random_tangent(&self, p: &Self::Point, rng: &mut Rng64) -> Self::Tangent {
        let basis = self.tangent_basis(p);
        let mut t = basis[0].lin(rng.random_range(-1.0..1.0), &basis[0], 0.0);
        for b in &basis[1..] {
            t = t.lin(1.0, b, rng.random_range(-1.0..1.0));
        }
        t
    }

    fn random_lie(&self, rng: &mut Rng64) -> Vec<CMat> {
        (0..self.factors())
            .map(|_| self.algebra().random(self.n(), rng))
            .collect()
    }

    fn random_group(&self, rng: &mut Rng64) -> Vec<CMat> {
        (0..self.factors())
            .map(|_| self.algebra().random_group(self.n(), rng))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Disc,
    Sphere,
    Double,
    FusedDouble,
    ExpCotangent,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Disc,
        ModelKind::Sphere,
        ModelKind::Double,
        ModelKind::FusedDouble,
        ModelKind::ExpCotangent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Disc => "disc",
            ModelKind::Sphere => "sphere",
            ModelKind::Double => "double",
            ModelKind::FusedDouble => "fused_double",
            ModelKind::ExpCotangent => "exp_cotangent",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "disc" => ModelKind::Disc,
            "sphere" => ModelKind::Sphere,
            "double" => ModelKind::Double,
            "fused" | "fused_double" => ModelKind::FusedDouble,
            "exp_cotangent" | "cotangent" => ModelKind::ExpCotangent,
            _ => return Err(NumError::UnknownModel(s.to_owned())),
        })
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > 8 {
        return Err(NumError::Invalid(format!("matrix size n = {n} outside {min}..=8")));
    }
    Ok(())
}

// ---------------------------------------------------------------- disc

/// `sin x / x`
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn herm_dot(a: &CVec, b: &CVec) -> C {
    a.dotc(b)
}

/// Standard symplectic form `Im ⟨X, Y⟩` on `Cⁿ`.
pub fn omega0(x: &CVec, y: &CVec) -> f64 {
    herm_dot(x, y).im
}

/// The U(n)-invariant form `λ = d log|z|² ∧ ½ Im⟨z, ·⟩`, undefined at 0.
pub fn lambda_form(z: &CVec, x: &CVec, y: &CVec) -> Result<f64> {
    let r2 = z.norm_squared();
    if r2 == 0.0 {
        return Err(NumError::AtOrigin);
    }
    Ok(lambda_unchecked(z, r2, x, y))
}

fn lambda_unchecked(z: &CVec, r2: f64, x: &CVec, y: &CVec) -> f64 {
    let a = |v: &CVec| 2.0 * herm_dot(z, v).re / r2;
    let b = |v: &CVec| 0.5 * herm_dot(z, v).im;
    a(x) * b(y) - a(y) * b(x)
}

/// `Φ₀(z) = −2π² i zz*`
pub fn phi0(z: &CVec) -> CMat {
    z * z.adjoint() * (-2.0 * PI * PI * I)
}

/// `TΦ₀(X) = −2π² i (Xz* + zX*)`
pub fn dphi0(z: &CVec, x: &CVec) -> CMat {
    (x * z.adjoint() + z * x.adjoint()) * (-2.0 * PI * PI * I)
}

/// `Φ = exp Φ₀`, in closed form.
pub fn disc_moment(z: &CVec) -> CMat {
    let n = z.len();
    let r2 = z.norm_squared();
    if r2 == 0.0 {
        return identity(n);
    }
    let p = z * z.adjoint() / C::new(r2, 0.0);
    identity(n) + p * (C::from_polar(1.0, -2.0 * PI * PI * r2) - C::new(1.0, 0.0))
}

/// Disc form in closed coordinates: `λ + sinc(2π²|z|²)(ω₀ − λ)`.
pub fn disc_omega(z: &CVec, x: &CVec, y: &CVec) -> f64 {
    let r2 = z.norm_squared();
    let w0 = omega0(x, y);
    if r2 == 0.0 {
        return w0;
    }
    let s = sinc(2.0 * PI * PI * r2);
    let l = lambda_unchecked(z, r2, x, y);
    l + s * (w0 - l)
}

/// Disc form from its definition `ω₀ + Φ₀*ϖ`.
pub fn disc_omega_exponentiated(z: &CVec, x: &CVec, y: &CVec) -> f64 {
    omega0(x, y) + varpi(&phi0(z), &dphi0(z, x), &dphi0(z, y))
}

fn disc_mc(z: &CVec, x: &CVec) -> (CMat, CMat) {
    let p0 = phi0(z);
    let d = dphi0(z, x);
    (
        ad_apply(AdFunction::DexpLeft, &p0, &d),
        ad_apply(AdFunction::DexpRight, &p0, &d),
    )
}

fn check_disc_point(z: &CVec, n: usize) -> Result<()> {
    if z.len() != n {
        return Err(NumError::Size { expected: n, got: z.len() });
    }
    let value = PI * z.norm_squared();
    if !(value < 1.0) {
        return Err(NumError::OutsideDisc { value });
    }
    Ok(())
}

/// Random point with `π|z|²` uniform in `[lo, hi]`.
pub fn sample_disc_point(n: usize, lo: f64, hi: f64, rng: &mut Rng64) -> CVec {
    let g = crate::linalg::gaussian_vec(n, rng);
    let r2 = rng.random_range(lo..hi) / PI;
    &g * C::new(r2.sqrt() / g.norm(), 0.0)
}

fn coordinate_vector(n: usize, i: usize) -> CVec {
    let mut e = CVec::zeros(n);
    e[i / 2] = if i.is_multiple_of(2) { C::new(1.0, 0.0) } else { I };
    e
}

fn shift_vector(z: &CVec, x: &[f64]) -> CVec {
    let mut w = z.clone();
    for (i, c) in x.iter().enumerate() {
        if *c != 0.0 {
            w[i / 2] += if i % 2 == 0 { C::new(*c, 0.0) } else { I * *c };
        }
    }
    w
}

/// The open disc `π|z|² < 1` in `Cⁿ` with U(n) acting linearly.
#[derive(Debug, Clone)]
pub struct Disc {
    n: usize,
}

impl Disc {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n, 1)?;
        Ok(Disc { n })
    }

    /// The equator `2π²|z|² = π`, where `Φ` has eigenvalue −1.
    pub fn equator_point(&self) -> CVec {
        let mut z = CVec::zeros(self.n);
        z[0] = C::new((1.0 / (2.0 * PI)).sqrt(), 0.0);
        z
    }
}

impl QHamModel for Disc {
    type Point = CVec;
    type Tangent = CVec;

    fn id(&self) -> &'static str {
        "disc"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn algebra(&self) -> Algebra {
        Algebra::U
    }
    fn factors(&self) -> usize {
        1
    }
    fn validate(&self, p: &CVec) -> Result<()> {
        check_disc_point(p, self.n)
    }
    fn sample_point(&self, rng: &mut Rng64) -> CVec {
        sample_disc_point(self.n, 0.1, 0.9, rng)
    }
    fn omega(&self, p: &CVec, x: &CVec, y: &CVec) -> f64 {
        disc_omega(p, x, y)
    }
    fn moment(&self, p: &CVec) -> Vec<CMat> {
        vec![disc_moment(p)]
    }
    fn moment_mc(&self, p: &CVec, x: &CVec) -> Vec<(CMat, CMat)> {
        vec![disc_mc(p, x)]
    }
    fn generator(&self, p: &CVec, xi: &[CMat]) -> CVec {
        &xi[0] * p
    }
    fn act(&self, k: &[CMat], p: &CVec) -> CVec {
        &k[0] * p
    }
    fn chart_dim(&self) -> usize {
        2 * self.n
    }
    fn chart_point(&self, base: &CVec, x: &[f64]) -> CVec {
        shift_vector(base, x)
    }
    fn chart_field(&self, _: &CVec, _: &[f64], i: usize) -> CVec {
        coordinate_vector(self.n, i)
    }
    fn point_coords(&self, p: &CVec) -> Vec<f64> {
        vec_real_coords(p)
    }
    fn degenerate_point(&self) -> Option<CVec> {
        Some(self.equator_point())
    }
}

// ---------------------------------------------------------------- sphere

/// `s(z) = √(π⁻¹ − |z|²) / |z|`
pub fn transition_scale(z: &CVec) -> f64 {
    let r2 = z.norm_squared();
    (1.0 / PI - r2).sqrt() / r2.sqrt()
}

/// The gluing map `φ(z) = −s(z) z` of the punctured disc.
pub fn transition(z: &CVec) -> CVec {
    z * C::new(-transition_scale(z), 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    /// 0 or 1
    pub chart: u8,
    pub z: CVec,
}

/// Two discs glued along `φ`; the second chart carries `(−ω, Φ⁻¹)`.
#[derive(Debug, Clone)]
pub struct Sphere {
    n: usize,
}

impl Sphere {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n, 1)?;
        Ok(Sphere { n })
    }

    /// Change chart, defined away from the two poles.
    pub fn other_chart(&self, p: &SpherePoint) -> Result<SpherePoint> {
        if p.z.norm_squared() == 0.0 {
            return Err(NumError::AtOrigin);
        }
        Ok(SpherePoint { chart: 1 - p.chart, z: transition(&p.z) })
    }
}

impl QHamModel for Sphere {
    type Point = SpherePoint;
    type Tangent = CVec;

    fn id(&self) -> &'static str {
        "sphere"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn algebra(&self) -> Algebra {
        Algebra::U
    }
    fn factors(&self) -> usize {
        1
    }
    fn validate(&self, p: &SpherePoint) -> Result<()> {
        if p.chart > 1 {
            return Err(NumError::Invalid(format!("chart index {}", p.chart)));
        }
        check_disc_point(&p.z, self.n)
    }
    fn sample_point(&self, rng: &mut Rng64) -> SpherePoint {
        let chart = rng.random_range(0..2u8);
        SpherePoint { chart, z: sample_disc_point(self.n, 0.1, 0.9, rng) }
    }
    fn omega(&self, p: &SpherePoint, x: &CVec, y: &CVec) -> f64 {
        let w = disc_omega(&p.z, x, y);
        if p.chart == 0 {
            w
        } else {
            -w
        }
    }
    fn moment(&self, p: &SpherePoint) -> Vec<CMat> {
        let m = disc_moment(&p.z);
        vec![if p.chart == 0 { m } else { m.adjoint() }]
    }
    fn moment_mc(&self, p: &SpherePoint, x: &CVec) -> Vec<(CMat, CMat)> {
        let (l, r) = disc_mc(&p.z, x);
        // (Φ⁻¹)*θ_L = −Φ*θ_R and (Φ⁻¹)*θ_R = −Φ*θ_L
        vec![if p.chart == 0 { (l, r) } else { (-r, -l) }]
    }
    fn generator(&self, p: &SpherePoint, xi: &[CMat]) -> CVec {
        &xi[0] * &p.z
    }
    fn act(&self, k: &[CMat], p: &SpherePoint) -> SpherePoint {
        SpherePoint { chart: p.chart, z: &k[0] * &p.z }
    }
    fn chart_dim(&self) -> usize {
        2 * self.n
    }
    fn chart_point(&self, base: &SpherePoint, x: &[f64]) -> SpherePoint {
        SpherePoint { chart: base.chart, z: shift_vector(&base.z, x) }
    }
    fn chart_field(&self, _: &SpherePoint, _: &[f64], i: usize) -> CVec {
        coordinate_vector(self.n, i)
    }
    fn point_coords(&self, p: &SpherePoint) -> Vec<f64> {
        let mut v = vec![p.chart as f64];
        v.extend(vec_real_coords(&p.z));
        v
    }
    fn degenerate_point(&self) -> Option<SpherePoint> {
        let z = Disc { n: self.n }.equator_point();
        Some(SpherePoint { chart: 0, z })
    }
}

// ---------------------------------------------------------------- double

#[derive(Debug, Clone, PartialEq)]
pub struct GroupPair {
    pub u: CMat,
    pub v: CMat,
}

/// `Ψ₁(u, v) = Ad(u)v⁻¹`
pub fn psi1(p: &GroupPair) -> CMat {
    &p.u * p.v.adjoint() * p.u.adjoint()
}

/// `TΨ₁` on a left trivialized tangent.
pub fn dpsi1(p: &GroupPair, x: &Pair) -> CMat {
    let (u, ui, vi) = (&p.u, p.u.adjoint(), p.v.adjoint());
    u * &x.a * &vi * &ui - u * &x.b * &vi * &ui - u * &vi * &x.a * &ui
}

/// Two-form of the double.
pub fn double_omega(p: &GroupPair, x: &Pair, y: &Pair) -> f64 {
    let v = &p.v;
    let t1 = ip(&conj(v, &x.a), &y.a) - ip(&conj(v, &y.a), &x.a);
    let t2 = ip(&x.a, &(&y.b + conj(v, &y.b))) - ip(&y.a, &(&x.b + conj(v, &x.b)));
    -0.5 * t1 - 0.5 * t2
}

fn double_mc(p: &GroupPair, x: &Pair) -> Vec<(CMat, CMat)> {
    let m1 = psi1(p);
    let d1 = dpsi1(p, x);
    vec![
        (m1.adjoint() * &d1, &d1 * m1.adjoint()),
        (x.b.clone(), conj(&p.v, &x.b)),
    ]
}

/// Chart `(X, Y) ↦ (u exp X, v exp Y)` on a product of group factors.
struct GroupChart {
    basis: Vec<CMat>,
}

impl GroupChart {
    fn element(&self, x: &[f64]) -> CMat {
        let n = self.basis[0].nrows();
        let mut m = CMat::zeros(n, n);
        for (c, b) in x.iter().zip(&self.basis) {
            if *c != 0.0 {
                m += b * C::new(*c, 0.0);
            }
        }
        m
    }

    /// Left trivialized `∂_i` of `g exp(X(x))`.
    fn field(&self, x: &[f64], i: usize) -> CMat {
        let xm = self.element(x);
        ad_apply(AdFunction::DexpLeft, &xm, &self.basis[i])
    }

    fn moved(&self, g: &CMat, x: &[f64]) -> CMat {
        if x.iter().all(|c| *c == 0.0) {
            return g.clone();
        }
        g * exp_lie(&self.element(x))
    }
}

fn check_group(g: &CMat, n: usize) -> Result<()> {
    if g.nrows() != n || g.ncols() != n {
        return Err(NumError::Size { expected: n, got: g.nrows() });
    }
    let residual = crate::linalg::unitary_defect(g);
    if residual > crate::linalg::UNITARY_TOL {
        return Err(NumError::NotUnitary { residual });
    }
    Ok(())
}

/// `diag(i, −i, 1, …)`: Ad has eigenvalue −1 on the first root space.
fn half_turn(n: usize) -> CMat {
    let mut v = identity(n);
    v[(0, 0)] = I;
    v[(1, 1)] = -I;
    v
}

/// The double `DK = K × K` for `K = SU(n)`.
pub struct Double {
    n: usize,
    chart: GroupChart,
}

impl Double {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n, 2)?;
        Ok(Double { n, chart: GroupChart { basis: Algebra::SU.basis(n) } })
    }

    fn split<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        x.split_at(self.chart.basis.len())
    }

    fn pair_chart_point(&self, base: &GroupPair, x: &[f64]) -> GroupPair {
        let (a, b) = self.split(x);
        GroupPair { u: self.chart.moved(&base.u, a), v: self.chart.moved(&base.v, b) }
    }

    fn pair_chart_field(&self, x: &[f64], i: usize) -> Pair {
        let d = self.chart.basis.len();
        let (a, b) = self.split(x);
        let z = CMat::zeros(self.n, self.n);
        if i < d {
            Pair { a: self.chart.field(a, i), b: z }
        } else {
            Pair { a: z, b: self.chart.field(b, i - d) }
        }
    }

    fn sample_pair(&self, rng: &mut Rng64) -> GroupPair {
        GroupPair {
            u: Algebra::SU.random_group(self.n, rng),
            v: Algebra::SU.random_group(self.n, rng),
        }
    }
}

impl QHamModel for Double {
    type Point = GroupPair;
    type Tangent = Pair;

    fn id(&self) -> &'static str {
        "double"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn algebra(&self) -> Algebra {
        Algebra::SU
    }
    fn factors(&self) -> usize {
        2
    }
    fn validate(&self, p: &GroupPair) -> Result<()> {
        check_group(&p.u, self.n)?;
        check_group(&p.v, self.n)
    }
    fn sample_point(&self, rng: &mut Rng64) -> GroupPair {
        self.sample_pair(rng)
    }
    fn omega(&self, p: &GroupPair, x: &Pair, y: &Pair) -> f64 {
        double_omega(p, x, y)
    }
    fn moment(&self, p: &GroupPair) -> Vec<CMat> {
        vec![psi1(p), p.v.clone()]
    }
    fn moment_mc(&self, p: &GroupPair, x: &Pair) -> Vec<(CMat, CMat)> {
        double_mc(p, x)
    }
    /// `(g₁, g₂)·(u, v) = (g₁ u g₂⁻¹, Ad(g₂) v)`
    fn generator(&self, p: &GroupPair, xi: &[CMat]) -> Pair {
        Pair {
            a: conj(&p.u.adjoint(), &xi[0]) - &xi[1],
            b: conj(&p.v.adjoint(), &xi[1]) - &xi[1],
        }
    }
    fn act(&self, k: &[CMat], p: &GroupPair) -> GroupPair {
        GroupPair { u: &k[0] * &p.u * k[1].adjoint(), v: conj(&k[1], &p.v) }
    }
    fn chart_dim(&self) -> usize {
        2 * self.chart.basis.len()
    }
    fn chart_point(&self, base: &GroupPair, x: &[f64]) -> GroupPair {
        self.pair_chart_point(base, x)
    }
    fn chart_field(&self, _: &GroupPair, x: &[f64], i: usize) -> Pair {
        self.pair_chart_field(x, i)
    }
    fn point_coords(&self, p: &GroupPair) -> Vec<f64> {
        let mut v = real_coords(&p.u);
        v.extend(real_coords(&p.v));
        v
    }
    fn degenerate_point(&self) -> Option<GroupPair> {
        Some(GroupPair { u: identity(self.n), v: half_turn(self.n) })
    }
}

// ---------------------------------------------------------------- fused double

/// The double with its two K-actions fused into the diagonal action.
pub struct FusedDouble {
    inner: Double,
}

impl FusedDouble {
    pub fn new(n: usize) -> Result<Self> {
        Ok(FusedDouble { inner: Double::new(n)? })
    }
}

/// `ω + ½(Ψ₁*θ_L, Ψ₂*θ_R)`
pub fn fused_omega(p: &GroupPair, x: &Pair, y: &Pair) -> f64 {
    let m1 = psi1(p);
    let a = |t: &Pair| m1.adjoint() * dpsi1(p, t);
    let b = |t: &Pair| conj(&p.v, &t.b);
    double_omega(p, x, y) + 0.5 * (ip(&a(x), &b(y)) - ip(&a(y), &b(x)))
}

impl QHamModel for FusedDouble {
    type Point = GroupPair;
    type Tangent = Pair;

    fn id(&self) -> &'static str {
        "fused_double"
    }
    fn n(&self) -> usize {
        self.inner.n
    }
    fn algebra(&self) -> Algebra {
        Algebra::SU
    }
    fn factors(&self) -> usize {
        1
    }
    fn validate(&self, p: &GroupPair) -> Result<()> {
        self.inner.validate(p)
    }
    fn sample_point(&self, rng: &mut Rng64) -> GroupPair {
        self.inner.sample_pair(rng)
    }
    fn omega(&self, p: &GroupPair, x: &Pair, y: &Pair) -> f64 {
        fused_omega(p, x, y)
    }
    fn moment(&self, p: &GroupPair) -> Vec<CMat> {
        vec![psi1(p) * &p.v]
    }
    fn moment_mc(&self, p: &GroupPair, x: &Pair) -> Vec<(CMat, CMat)> {
        let m1 = psi1(p);
        let m = &m1 * &p.v;
        let dm = dpsi1(p, x) * &p.v + &m1 * &p.v * &x.b;
        vec![(m.adjoint() * &dm, &dm * m.adjoint())]
    }
    fn generator(&self, p: &GroupPair, xi: &[CMat]) -> Pair {
        self.inner.generator(p, &[xi[0].clone(), xi[0].clone()])
    }
    fn act(&self, k: &[CMat], p: &GroupPair) -> GroupPair {
        self.inner.act(&[k[0].clone(), k[0].clone()], p)
    }
    fn chart_dim(&self) -> usize {
        self.inner.chart_dim()
    }
    fn chart_point(&self, base: &GroupPair, x: &[f64]) -> GroupPair {
        self.inner.pair_chart_point(base, x)
    }
    fn chart_field(&self, _: &GroupPair, x: &[f64], i: usize) -> Pair {
        self.inner.pair_chart_field(x, i)
    }
    fn point_coords(&self, p: &GroupPair) -> Vec<f64> {
        self.inner.point_coords(p)
    }
}

// ---------------------------------------------------------------- exp cotangent

#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPoint {
    pub g: CMat,
    pub lambda: CMat,
}

/// Largest `|(2πi)⁻¹ α(λ)|` over the roots of SU(n).
pub fn max_root_value(lambda: &CMat) -> f64 {
    let mu = skew_eigen(lambda).mu;
    let hi = mu.iter().cloned().fold(f64::MIN, f64::max);
    let lo = mu.iter().cloned().fold(f64::MAX, f64::min);
    (hi - lo) / (2.0 * PI)
}

/// Closed form of `H*ω` on `T*K = K × k`.
pub fn cotangent_omega(p: &CotangentPoint, x: &Pair, y: &Pair) -> f64 {
    let l = &p.lambda;
    -ip(&ad_apply(AdFunction::Sinh, l, &x.a), &y.a)
        - ip(&ad_apply(AdFunction::SinhOverX, l, &x.a), &y.b)
        + ip(&ad_apply(AdFunction::SinhOverX, l, &y.a), &x.b)
}

/// The double's form pulled back through `H = id × exp`.
pub fn cotangent_omega_pullback(p: &CotangentPoint, x: &Pair, y: &Pair) -> f64 {
    let q = GroupPair { u: p.g.clone(), v: exp_lie(&p.lambda) };
    let push = |t: &Pair| Pair {
        a: t.a.clone(),
        b: ad_apply(AdFunction::DexpLeft, &p.lambda, &t.b),
    };
    double_omega(&q, &push(x), &push(y))
}

/// Canonical form of `T*K` in left trivialization:
/// `(ξ₂, η₁) − (ξ₁, η₂) − (λ, [ξ₁, ξ₂])`.
pub fn cotangent_omega0(p: &CotangentPoint, x: &Pair, y: &Pair) -> f64 {
    ip(&y.a, &x.b) - ip(&x.a, &y.b) - ip(&p.lambda, &bracket(&x.a, &y.a))
}

/// `Ψ₀(g, λ) = (−Ad(g)λ, λ)`
pub fn cotangent_psi0(p: &CotangentPoint) -> (CMat, CMat) {
    (-conj(&p.g, &p.lambda), p.lambda.clone())
}

/// `ω₀ + Ψ₀*ϖ'` with `ϖ' = π₁*ϖ + π₂*ϖ`.
pub fn cotangent_omega_exponentiated(p: &CotangentPoint, x: &Pair, y: &Pair) -> f64 {
    let (m1, _) = cotangent_psi0(p);
    let d1 = |t: &Pair| -conj(&p.g, &(bracket(&t.a, &p.lambda) + &t.b));
    cotangent_omega0(p, x, y) + varpi(&m1, &d1(x), &d1(y)) + varpi(&p.lambda, &x.b, &y.b)
}

/// `T*K` exponentiated through `H`, on the region where `exp` is regular.
pub struct ExpCotangent {
    n: usize,
    chart: GroupChart,
    /// Sampling bound on `|(2πi)⁻¹ α(λ)|`.
    pub root_bound: f64,
}

impl ExpCotangent {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n, 2)?;
        Ok(ExpCotangent {
            n,
            chart: GroupChart { basis: Algebra::SU.basis(n) },
            root_bound: 0.8,
        })
    }

    pub fn sample_lambda(&self, rng: &mut Rng64) -> CMat {
        let n = self.n;
        let half = self.root_bound / 2.0;
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-half..half)).collect();
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|t| *t -= mean);
        let d = CMat::from_diagonal(&CVec::from_iterator(n, x.iter().map(|t| I * (2.0 * PI * t))));
        let w = Algebra::SU.random_group(n, rng);
        crate::linalg::skew(&conj(&w, &d))
    }
}

impl QHamModel for ExpCotangent {
    type Point = CotangentPoint;
    type Tangent = Pair;

    fn id(&self) -> &'static str {
        "exp_cotangent"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn algebra(&self) -> Algebra {
        Algebra::SU
    }
    fn factors(&self) -> usize {
        2
    }
    fn validate(&self, p: &CotangentPoint) -> Result<()> {
        check_group(&p.g, self.n)?;
        let residual = crate::linalg::anti_hermitian_defect(&p.lambda);
        if residual > crate::linalg::LIE_TOL {
            return Err(NumError::NotAntiHermitian { residual });
        }
        let m = max_root_value(&p.lambda);
        if m >= 1.0 {
            return Err(NumError::Invalid(format!(
                "lambda outside the regular region (max root value {m:.4})"
            )));
        }
        Ok(())
    }
    fn sample_point(&self, rng: &mut Rng64) -> CotangentPoint {
        let g = Algebra::SU.random_group(self.n, rng);
        CotangentPoint { g, lambda: self.sample_lambda(rng) }
    }
    fn omega(&self, p: &CotangentPoint, x: &Pair, y: &Pair) -> f64 {
        cotangent_omega(p, x, y)
    }
    fn moment(&self, p: &CotangentPoint) -> Vec<CMat> {
        vec![conj(&p.g, &exp_lie(&-&p.lambda)), exp_lie(&p.lambda)]
    }
    fn moment_mc(&self, p: &CotangentPoint, x: &Pair) -> Vec<(CMat, CMat)> {
        let l = &p.lambda;
        let e = exp_lie(l);
        // Ψ₁ = Ad(g) exp(−λ): Ψ₁⁻¹dΨ₁ = Ad(g)(Ad(e^λ)ξ − ξ − dexp_left(−λ)η)
        let inner = conj(&e, &x.a) - &x.a - ad_apply(AdFunction::DexpLeft, &-l, &x.b);
        let l1 = conj(&p.g, &inner);
        let m1 = conj(&p.g, &e.adjoint());
        let r1 = conj(&m1, &l1);
        vec![
            (l1, r1),
            (
                ad_apply(AdFunction::DexpLeft, l, &x.b),
                ad_apply(AdFunction::DexpRight, l, &x.b),
            ),
        ]
    }
    fn generator(&self, p: &CotangentPoint, xi: &[CMat]) -> Pair {
        Pair {
            a: conj(&p.g.adjoint(), &xi[0]) - &xi[1],
            b: bracket(&xi[1], &p.lambda),
        }
    }
    fn act(&self, k: &[CMat], p: &CotangentPoint) -> CotangentPoint {
        CotangentPoint { g: &k[0] * &p.g * k[1].adjoint(), lambda: conj(&k[1], &p.lambda) }
    }
    fn chart_dim(&self) -> usize {
        2 * self.chart.basis.len()
    }
    fn chart_point(&self, base: &CotangentPoint, x: &[f64]) -> CotangentPoint {
        let (a, b) = x.split_at(self.chart.basis.len());
        CotangentPoint {
            g: self.chart.moved(&base.g, a),
            lambda: &base.lambda + self.chart.element(b),
        }
    }
    fn chart_field(&self, _: &CotangentPoint, x: &[f64], i: usize) -> Pair {
        let d = self.chart.basis.len();
        let z = CMat::zeros(self.n, self.n);
        if i < d {
            Pair { a: self.chart.field(&x[..d], i), b: z }
        } else {
            Pair { a: z, b: self.chart.basis[i - d].clone() }
        }
    }
    fn point_coords(&self, p: &CotangentPoint) -> Vec<f64> {
        let mut v = real_coords(&p.g);
        v.extend(real_coords(&p.lambda));
        v
    }
}
