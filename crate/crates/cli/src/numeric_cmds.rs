//! Commands that run the floating point checks.

use std::f64::consts::PI;

use qhimpl_core::alcove::parse_face_id;
use qhimpl_core::Implosion;
use qhimpl_numeric::moduli::{
    dk_cross_validation, expected_dimensions, moment_equivariance_check, sample_flat_connection,
    sampler_summary, SurfaceData,
};
use qhimpl_numeric::verify::{
    cotangent_double_verify, gluing_verify, sphere_reduction_check, universal_embedding_verify,
    varpi_dual_check, verify_model,
};
use qhimpl_numeric::{ModelKind, RunConfig, VerificationReport};
use serde_json::json;

use crate::args::{Group, Numeric};
use crate::error::CliError;
use crate::exact_cmds::resolve;
use crate::report::{sci, yes_no, Report, Table};

/// Radii squared at which the reduced sphere form is compared; the middle
/// one is the equator, where the ratio vanishes.
pub const REDUCTION_LEVELS: [f64; 3] = [1.0 / (4.0 * PI), 1.0 / (2.0 * PI), 3.0 / (4.0 * PI)];

fn config(num: &Numeric, seed: u64) -> RunConfig {
    RunConfig { samples: num.samples, seed, tol: num.tol }
}

fn check_table(rep: &VerificationReport) -> Table {
    let mut t = Table::new(&["identity", "max_residual", "tolerance", "samples", "observed", "pass"]);
    for c in &rep.checks {
        t.push(vec![
            c.identity.clone(),
            sci(c.max_residual),
            sci(c.tolerance),
            c.samples.to_string(),
            c.observed.map(sci).unwrap_or_default(),
            yes_no(c.pass),
        ]);
    }
    t
}

fn verification(command: &'static str, rep: VerificationReport) -> Result<Report, CliError> {
    let table = check_table(&rep);
    let mut text = format!("{} n={} samples={}\n{}", rep.model, rep.n, rep.samples, table.render());
    for (k, v) in &rep.constants {
        text.push_str(&format!("constant {k} = {v}\n"));
    }
    for note in &rep.notes {
        text.push_str(&format!("note: {note}\n"));
    }
    if let Some(w) = rep.worst_failure() {
        text.push_str(&format!("worst failure: {} residual {}", w.identity, sci(w.max_residual)));
        if let Some(s) = &w.worst {
            let pt: Vec<String> = s.point.iter().map(|x| format!("{x:.6}")).collect();
            text.push_str(&format!(" at sample {} point [{}]", s.sample, pt.join(", ")));
        }
        text.push('\n');
    }
    let mut out = Report::new(command, rep.seed, &rep)?;
    out.pass = rep.pass;
    out.text = text;
    out.table = table;
    Ok(out)
}

pub fn verify_numeric(target: &str, num: &Numeric, seed: u64) -> Result<Report, CliError> {
    let cfg = config(num, seed);
    let rep = match target.to_ascii_lowercase().replace('_', "-").as_str() {
        "varpi" => varpi_dual_check(num.n, &cfg)?,
        "sphere-reduction" => sphere_reduction_check(num.n, &REDUCTION_LEVELS, &cfg)?,
        "universal-embedding" => universal_embedding_verify(num.n, &cfg)?,
        other => {
            let kind: ModelKind = other.parse().map_err(|_| {
                CliError::Usage(format!(
                    "unknown target {target:?}; expected one of disc, sphere, double, fused_double, \
                     exp_cotangent, varpi, sphere-reduction, universal-embedding"
                ))
            })?;
            verify_model(kind, num.n, &cfg)?
        }
    };
    verification("verify-numeric", rep)
}

pub fn verify_glue(num: &Numeric, seed: u64) -> Result<Report, CliError> {
    verification("verify-glue", gluing_verify(num.n, &config(num, seed))?)
}

pub fn verify_cotangent(num: &Numeric, seed: u64) -> Result<Report, CliError> {
    verification("verify-cotangent", cotangent_double_verify(num.n, &config(num, seed))?)
}

pub fn sample_rep(genus: usize, punctures: usize, num: &Numeric, seed: u64) -> Result<Report, CliError> {
    let surface = SurfaceData::new(genus, punctures)?;
    let cfg = config(num, seed);
    let sampler = sampler_summary(&surface, num.n, &cfg)?;
    let point = sample_flat_connection(&surface, num.n, seed)?;
    let equiv = moment_equivariance_check(&surface, &point, &cfg)?;
    let mut table = check_table(&equiv);
    table.rows.insert(
        0,
        vec![
            "relation".to_owned(),
            sci(sampler.max_residual),
            sci(sampler.tolerance),
            sampler.samples.to_string(),
            String::new(),
            yes_no(sampler.pass),
        ],
    );
    let pass = sampler.pass && equiv.pass;
    let mut rep = Report::new(
        "sample-rep",
        seed,
        json!({
            "g": genus,
            "n": punctures,
            "matrix_size": num.n,
            "faces": [],
            "dims": { "dim_m_sigma": surface.factors() * (num.n * num.n - 1) },
            "residuals": { "sampler": sampler, "equivariance": equiv },
        }),
    )?;
    rep.pass = pass;
    rep.text = format!(
        "genus {genus}, {punctures} boundary circles, SU({}): M has {} factors\n{}",
        num.n,
        surface.factors(),
        table.render()
    );
    rep.table = table;
    Ok(rep)
}

pub fn moduli_dim(
    genus: usize,
    punctures: usize,
    g: &Group,
    faces: &[String],
    seed: u64,
) -> Result<Report, CliError> {
    let surface = SurfaceData::new(genus, punctures)?;
    let t = resolve(&g.label, g.rank)?;
    let imp = Implosion::build(t)?;
    let idx: Vec<usize> = if faces.is_empty() {
        vec![imp.face_index(&[]).expect("open face"); punctures]
    } else {
        if faces.len() != punctures {
            return Err(CliError::Usage(format!(
                "--faces lists {} faces but --punctures is {punctures}",
                faces.len()
            )));
        }
        faces
            .iter()
            .map(|id| {
                let walls = parse_face_id(id)?;
                imp.face_index(&walls).ok_or_else(|| {
                    CliError::Usage(format!("{id} is not a face of the {t} alcove (walls 1..={})", t.rank + 1))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let dims = expected_dimensions(&surface, &imp, &idx)?;
    let dk = dk_cross_validation(&imp);
    let mut table = Table::new(&["face", "from_formula", "from_strata", "pass"]);
    for r in &dk {
        table.push(vec![r.face_id.clone(), r.from_formula.to_string(), r.from_strata.to_string(), yes_no(r.pass)]);
    }
    let pass = dk.iter().all(|r| r.pass);
    let mut rep = Report::new(
        "moduli-dim",
        seed,
        json!({
            "g": genus,
            "n": punctures,
            "group": t.to_string(),
            "faces": dims.faces,
            "dims": dims,
            "residuals": {},
            "dk_cross_validation": dk,
        }),
    )?;
    rep.pass = pass;
    rep.text = format!(
        "{t}, genus {genus}, faces [{}]\n\
         dim M(Sigma)            {}\n\
         dim master (all open)   {}\n\
         dim piece               {}\n\
         dim reduction (generic) {}\n\
         ({})\n\
         DK cross-validation:\n{}",
        dims.faces.join(", "),
        dims.dim_m_sigma,
        dims.dim_master_open,
        dims.dim_piece,
        dims.dim_reduction_generic,
        dims.caveat,
        table.render()
    );
    rep.table = table;
    Ok(rep)
}
