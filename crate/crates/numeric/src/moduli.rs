//! Flat SU(m) connections on a surface of genus `g` with `n` boundary
//! circles, in holonomy coordinates `(a, b, u, v) ∈ K^g × K^g × K^n × K^n`.

use qhimpl_core::Implosion;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{NumError, Result};
use crate::linalg::{conj, identity, Algebra, CMat};
use crate::models::Rng64;
use crate::verify::{stream_rng, IdentityCheck, RunConfig, VerificationReport, TOL_ALGEBRAIC};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceData {
    pub fn new(genus: usize, punctures: usize) -> Result<Self> {
        if punctures == 0 {
            return Err(NumError::Invalid("at least one puncture is required".into()));
        }
        if genus + punctures < 2 {
            return Err(NumError::Invalid(
                "the moduli space of a disc is a point; need 2(g + n - 1) >= 1".into(),
            ));
        }
        if genus > 16 || punctures > 16 {
            return Err(NumError::Invalid("genus and punctures are capped at 16".into()));
        }
        Ok(SurfaceData { genus, punctures })
    }

    /// Number of K factors of `M(Σ)` as a manifold.
    pub fn factors(&self) -> usize {
        2 * (self.genus + self.punctures - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatConnectionPoint {
    pub a: Vec<CMat>,
    pub b: Vec<CMat>,
    pub u: Vec<CMat>,
    pub v: Vec<CMat>,
    /// `|Φ_{n+1} − I|_F`
    pub residual: f64,
}

/// `[x, y] = x y x⁻¹ y⁻¹` for unitary arguments.
fn group_commutator(x: &CMat, y: &CMat) -> CMat {
    x * y * x.adjoint() * y.adjoint()
}

/// `Π_h [a_h, b_h] · Π_{m ≤ upto} Ad(u_m) v_m⁻¹`
fn holonomy(a: &[CMat], b: &[CMat], u: &[CMat], v: &[CMat], upto: usize, k: usize) -> CMat {
    let mut p = identity(k);
    for (x, y) in a.iter().zip(b) {
        p *= group_commutator(x, y);
    }
    for (um, vm) in u.iter().zip(v).take(upto) {
        p *= conj(um, &vm.adjoint());
    }
    p
}

/// The moment maps `Φ_1..Φ_n = v` and `Φ_{n+1}`.
pub fn moment_maps(x: &FlatConnectionPoint) -> Vec<CMat> {
    let k = x.u[0].nrows();
    let mut out = x.v.clone();
    out.push(holonomy(&x.a, &x.b, &x.u, &x.v, x.v.len(), k));
    out
}

/// Choose `v_n` so that `Φ_{n+1} = I`: with `P` the product over the other
/// factors, `P · u_n v_n⁻¹ u_n⁻¹ = I` gives `v_n = u_n⁻¹ P u_n`.
pub fn complete(a: Vec<CMat>, b: Vec<CMat>, u: Vec<CMat>, mut v: Vec<CMat>) -> Result<FlatConnectionPoint> {
    let n = u.len();
    if n == 0 || v.len() + 1 != n || a.len() != b.len() {
        return Err(NumError::Invalid("need g pairs (a, b), n loops u and n - 1 loops v".into()));
    }
    let k = u[0].nrows();
    let p = holonomy(&a, &b, &u, &v, n - 1, k);
    let un = &u[n - 1];
    v.push(un.adjoint() * p * un);
    let mut x = FlatConnectionPoint { a, b, u, v, residual: 0.0 };
    x.residual = (&moment_maps(&x)[n] - identity(k)).norm();
    Ok(x)
}

fn sample_with(surface: &SurfaceData, k: usize, rng: &mut Rng64) -> Result<FlatConnectionPoint> {
    let mut draw = |count: usize| -> Vec<CMat> {
        (0..count).map(|_| Algebra::SU.random_group(k, rng)).collect()
    };
    let (g, n) = (surface.genus, surface.punctures);
    let a = draw(g);
    let b = draw(g);
    let u = draw(n);
    let v = draw(n - 1);
    complete(a, b, u, v)
}

/// Haar random `a, b, u, v_1..v_{n−1}` in SU(k), then `v_n` solved.
pub fn sample_flat_connection(surface: &SurfaceData, k: usize, seed: u64) -> Result<FlatConnectionPoint> {
    if !(2..=8).contains(&k) {
        return Err(NumError::Invalid(format!("matrix size {k} outside 2..=8")));
    }
    sample_with(surface, k, &mut Rng64::seed_from_u64(seed))
}

/// The `K^{n+1}` action:
/// `a, b ↦ Ad(k_{n+1})·`, `u_m ↦ k_{n+1} u_m k_m⁻¹`, `v_m ↦ Ad(k_m) v_m`.
pub fn act(k: &[CMat], x: &FlatConnectionPoint) -> FlatConnectionPoint {
    let n = x.u.len();
    let last = &k[n];
    FlatConnectionPoint {
        a: x.a.iter().map(|a| conj(last, a)).collect(),
        b: x.b.iter().map(|b| conj(last, b)).collect(),
        u: x.u.iter().zip(k).map(|(u, km)| last * u * km.adjoint()).collect(),
        v: x.v.iter().zip(k).map(|(v, km)| conj(km, v)).collect(),
        residual: x.residual,
    }
}

fn flatten(x: &FlatConnectionPoint) -> Vec<f64> {
    x.a.iter()
        .chain(&x.b)
        .chain(&x.u)
        .chain(&x.v)
        .flat_map(crate::linalg::real_coords)
        .collect()
}

/// Residuals of `Φ_i(k·x) = k_i Φ_i(x) k_i⁻¹` and of the invariance of
/// `|Φ_{n+1} − I|` under random `k ∈ K^{n+1}`.
pub fn moment_equivariance_check(
    surface: &SurfaceData,
    point: &FlatConnectionPoint,
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let n = surface.punctures;
    if point.u.len() != n || point.a.len() != surface.genus {
        return Err(NumError::Invalid("point does not match the surface".into()));
    }
    let k = point.u[0].nrows();
    let base = moment_maps(point);
    let results: Vec<((f64, f64), Vec<f64>)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, 61, i);
            let ks: Vec<CMat> = (0..=n).map(|_| Algebra::SU.random_group(k, &mut rng)).collect();
            let moved = act(&ks, point);
            let phis = moment_maps(&moved);
            let eq = phis
                .iter()
                .zip(&base)
                .zip(&ks)
                .map(|((p, q), km)| (p - conj(km, q)).norm())
                .fold(0.0, f64::max);
            let rel = (&phis[n] - identity(k)).norm();
            (
                (eq, (rel - point.residual).abs()),
                flatten(&moved),
            )
        })
        .collect();
    let mut rep = VerificationReport {
        model: format!("moduli_g{}_n{}", surface.genus, surface.punctures),
        n: k,
        seed: cfg.seed,
        samples: cfg.samples,
        checks: Vec::new(),
        constants: Default::default(),
        notes: Vec::new(),
        pass: true,
    };
    let tol = cfg.tol.unwrap_or(TOL_ALGEBRAIC);
    let (eq, inv): (Vec<_>, Vec<_>) = results
        .into_iter()
        .map(|((e, r), p)| ((e, p.clone()), (r, p)))
        .unzip();
    rep.checks.push(check("equivariance", tol, eq));
    rep.checks.push(check("relation_invariance", tol, inv));
    rep.pass = rep.checks.iter().all(|c| c.pass);
    Ok(rep)
}

fn check(name: &str, tol: f64, results: Vec<(f64, Vec<f64>)>) -> IdentityCheck {
    let mut worst: Option<(usize, f64, Vec<f64>)> = None;
    for (i, (r, p)) in results.iter().enumerate() {
        let r = if r.is_nan() { f64::INFINITY } else { *r };
        if worst.as_ref().is_none_or(|w| r > w.1) {
            worst = Some((i, r, p.clone()));
        }
    }
    let max = worst.as_ref().map_or(0.0, |w| w.1);
    IdentityCheck {
        identity: name.to_owned(),
        max_residual: max,
        tolerance: tol,
        samples: results.len(),
        pass: max <= tol,
        observed: None,
        worst: worst.map(|(sample, residual, point)| crate::verify::WorstSample {
            sample,
            residual,
            point,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerSummary {
    pub genus: usize,
    pub punctures: usize,
    pub matrix_size: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Draw `samples` flat connections and report the worst relation residual.
pub fn sampler_summary(surface: &SurfaceData, k: usize, cfg: &RunConfig) -> Result<SamplerSummary> {
    if !(2..=8).contains(&k) {
        return Err(NumError::Invalid(format!("matrix size {k} outside 2..=8")));
    }
    let residuals: Vec<f64> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            sample_with(surface, k, &mut stream_rng(cfg.seed, 62, i))
                .map_or(f64::INFINITY, |x| x.residual)
        })
        .collect();
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    let tolerance = cfg.tol.unwrap_or(TOL_ALGEBRAIC);
    Ok(SamplerSummary {
        genus: surface.genus,
        punctures: surface.punctures,
        matrix_size: k,
        seed: cfg.seed,
        samples: cfg.samples,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDimensions {
    pub genus: usize,
    pub punctures: usize,
    pub group: String,
    pub faces: Vec<String>,
    pub dim_m_sigma: usize,
    pub dim_master_open: i64,
    pub dim_piece: i64,
    pub dim_reduction_generic: i64,
    /// Always true: these are transversality counts, not proven dimensions.
    pub generic: bool,
    pub caveat: String,
}

const CAVEAT: &str = "expected dimensions under generic transversality; not established at singular points";

/// `dim M(Σ) − Σ_i (dim K − dim σ_i + dim [K_σi, K_σi])` for a total
/// dimension `total`.
fn piece(imp: &Implosion, total: i64, faces: &[usize]) -> i64 {
    let dim_k = imp.datum().dim_group() as i64;
    total
        - faces
            .iter()
            .map(|&i| dim_k - imp.faces[i].dim as i64 + imp.data[i].dim_commutator as i64)
            .sum::<i64>()
}

/// Dimension bookkeeping for the master moduli space and its pieces.
pub fn expected_dimensions(
    surface: &SurfaceData,
    imp: &Implosion,
    faces: &[usize],
) -> Result<ExpectedDimensions> {
    if faces.len() != surface.punctures {
        return Err(NumError::Invalid(format!(
            "{} faces given for {} punctures",
            faces.len(),
            surface.punctures
        )));
    }
    if let Some(&bad) = faces.iter().find(|&&i| i >= imp.faces.len()) {
        return Err(NumError::Invalid(format!("face index {bad} out of range")));
    }
    let dim_k = imp.datum().dim_group();
    let dim_m = surface.factors() * dim_k;
    let open = imp.face_index(&[]).expect("open face exists");
    let opens = vec![open; surface.punctures];
    let dim_piece = piece(imp, dim_m as i64, faces);
    let sigma: i64 = faces.iter().map(|&i| imp.faces[i].dim as i64).sum();
    Ok(ExpectedDimensions {
        genus: surface.genus,
        punctures: surface.punctures,
        group: imp.datum().name(),
        faces: faces.iter().map(|&i| imp.faces[i].id.clone()).collect(),
        dim_m_sigma: dim_m,
        dim_master_open: piece(imp, dim_m as i64, &opens),
        dim_piece,
        dim_reduction_generic: dim_piece - 2 * sigma,
        generic: true,
        caveat: CAVEAT.to_owned(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DkRow {
    pub face_id: String,
    pub from_formula: i64,
    pub from_strata: i64,
    pub pass: bool,
}

/// The piece formula applied to `DK` (dimension `2 dim K`, one face) must
/// reproduce `dim K − dim [K_σ, K_σ] + dim σ` for every face.
pub fn dk_cross_validation(imp: &Implosion) -> Vec<DkRow> {
    let total = 2 * imp.datum().dim_group() as i64;
    (0..imp.faces.len())
        .map(|i| {
            let from_formula = piece(imp, total, &[i]);
            let from_strata = imp.stratum_dim(i) as i64;
            DkRow {
                face_id: imp.faces[i].id.clone(),
                from_formula,
                from_strata,
                pass: from_formula == from_strata,
            }
        })
        .collect()
}
