//! Commands over the exact root-system and alcove data.

use qhimpl_core::alcove::{face_id, parse_face_id, type_string};
use qhimpl_core::exact::{self, render_vec};
use qhimpl_core::implosion::{integrality_triple_check, su_stabilizer_pattern_check};
use qhimpl_core::{CartanType, Implosion, RootDatum, TypeLabel};
use serde::Serialize;
use serde_json::json;

use crate::args::{Group, OptionalGroup};
use crate::error::CliError;
use crate::report::{yes_no, Report, Table};

/// Types swept by `check-centralizer` without `--type`.
pub const CENTRALIZER_SWEEP: [&str; 15] = [
    "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "F4", "G2", "A5", "D5",
];

/// Types swept by `check-integrality` without `--type`.
pub const INTEGRALITY_SWEEP: [&str; 4] = ["F4", "E6", "E7", "E8"];

pub fn resolve(label: &str, rank: Option<usize>) -> Result<CartanType, CliError> {
    let label = label.trim();
    if label.len() > 1 {
        let t: CartanType = label.parse()?;
        if rank.is_some_and(|r| r != t.rank) {
            return Err(CliError::Usage(format!(
                "--type {label} already fixes rank {}; drop --rank or make them agree",
                t.rank
            )));
        }
        return Ok(t);
    }
    let l: TypeLabel = label.parse()?;
    let rank = rank.ok_or_else(|| {
        CliError::Usage(format!("--type {label} needs --rank (or pass e.g. --type {label}2)"))
    })?;
    Ok(CartanType::new(l, rank)?)
}

fn group(g: &Group) -> Result<CartanType, CliError> {
    resolve(&g.label, g.rank)
}

fn optional(g: &OptionalGroup) -> Result<Option<CartanType>, CliError> {
    g.label.as_deref().map(|l| resolve(l, g.rank)).transpose()
}

/// Faces are named in the text tables by their closure vertices, with the
/// open face written `A`.
fn sigma_label(vertex_ids: &[usize], dim: usize, rank: usize) -> String {
    if dim == rank {
        return "A".to_owned();
    }
    let ids: Vec<String> = vertex_ids.iter().map(|v| v.to_string()).collect();
    ids.join(if vertex_ids.iter().any(|&v| v > 9) { "," } else { "" })
}

fn k_sigma(torus: usize, types: &[CartanType]) -> String {
    match (torus, types.is_empty()) {
        (0, _) => type_string(types),
        (t, true) => format!("T{t}"),
        (t, false) => format!("T{t} x {}", type_string(types)),
    }
}

#[derive(Serialize)]
struct FaceRow {
    face: String,
    walls: Vec<usize>,
    vertices: Vec<usize>,
    dim: usize,
    point: Vec<String>,
    r_sigma_size: usize,
    b_sigma: Vec<Vec<String>>,
    k_sigma: String,
    commutator_type: String,
    dim_k_sigma: usize,
    dim_commutator: usize,
    gamma_order: u64,
    g_sigma_trivial: bool,
    covers: Vec<String>,
}

pub fn faces(g: &Group, seed: u64) -> Result<Report, CliError> {
    let t = group(g)?;
    let imp = Implosion::build(t)?;
    let rank = t.rank;
    let mut rows = Vec::new();
    let mut table = Table::new(&[
        "face", "sigma", "dim", "point", "K_sigma", "[K_sigma,K_sigma]", "|R_sigma|", "gamma",
    ]);
    for (i, (f, d)) in imp.faces.iter().zip(&imp.data).enumerate() {
        let gs = imp.gamma_and_shift(i)?;
        let covers = imp
            .faces
            .iter()
            .filter(|t| t.dim == f.dim + 1 && f.leq(t))
            .map(|t| t.id.clone())
            .collect();
        table.push(vec![
            f.id.clone(),
            sigma_label(&f.vertex_ids, f.dim, rank),
            f.dim.to_string(),
            render_vec(&f.interior_point),
            k_sigma(f.dim, &d.component_types),
            d.type_string(),
            d.r_sigma_size.to_string(),
            gs.gamma_order.to_string(),
        ]);
        rows.push(FaceRow {
            face: f.id.clone(),
            walls: f.wall_set.clone(),
            vertices: f.vertex_ids.clone(),
            dim: f.dim,
            point: f.interior_point.iter().map(exact::render).collect(),
            r_sigma_size: d.r_sigma_size,
            b_sigma: d.b_sigma.iter().map(|v| v.iter().map(exact::render).collect()).collect(),
            k_sigma: k_sigma(f.dim, &d.component_types),
            commutator_type: d.type_string(),
            dim_k_sigma: d.dim_k_sigma,
            dim_commutator: d.dim_commutator,
            gamma_order: gs.gamma_order,
            g_sigma_trivial: gs.g_sigma_trivial,
            covers,
        });
    }
    let vertices: Vec<_> = imp
        .alcove
        .vertices_and_centrality()
        .iter()
        .map(|v| {
            json!({
                "vertex": v.vertex_id,
                "coordinates": v.coordinates.iter().map(exact::render).collect::<Vec<_>>(),
                "central": v.is_central,
            })
        })
        .collect();
    let mut rep = Report::new(
        "faces",
        seed,
        json!({ "group": t.to_string(), "faces": rows, "vertices": vertices }),
    )?;
    rep.text = format!("{t}: {} faces\n{}", imp.faces.len(), table.render());
    rep.table = table;
    Ok(rep)
}

pub fn strata(g: &Group, seed: u64) -> Result<Report, CliError> {
    let t = group(g)?;
    let imp = Implosion::build(t)?;
    let center = imp.datum().center_structure()?;
    let table_rows = imp.strata_table()?;
    let mut table = Table::new(&[
        "sigma", "K_sigma", "[K_sigma,K_sigma]", "dim", "point", "removable", "face", "dual",
    ]);
    let mut records = Vec::new();
    for s in &table_rows {
        table.push(vec![
            sigma_label(&s.vertex_ids, s.face_dim, t.rank),
            k_sigma(s.face_dim, &s.commutator_type),
            s.type_string.clone(),
            s.stratum_dim.to_string(),
            yes_no(s.is_point),
            yes_no(s.is_removable),
            s.face_id.clone(),
            s.dual_face_id.clone(),
        ]);
        records.push(json!({
            "face": s.face_id,
            "vertices": s.vertex_ids,
            "face_dim": s.face_dim,
            "dim": s.stratum_dim,
            "type": s.type_string,
            "dim_commutator": s.dim_commutator,
            "point": s.is_point,
            "removable": s.is_removable,
            "all_components_a1": s.smoothness.all_components_a1,
            "has_central_vertex": s.smoothness.has_central_vertex,
            "reasons": s.smoothness.reasons,
            "center_orbit": s.orbit_under_center,
            "dual": s.dual_face_id,
            "gamma_order": s.gamma_order,
        }));
    }
    let points = table_rows.iter().filter(|s| s.is_point).count();
    let mut rep = Report::new(
        "strata",
        seed,
        json!({
            "group": t.to_string(),
            "dim_group": imp.datum().dim_group(),
            "center_order": center.order,
            "point_strata": points,
            "strata": records,
        }),
    )?;
    rep.pass = points as u64 == center.order;
    rep.text = format!(
        "{t}: dim K = {}, {} strata, {} one-point strata, centre of order {}\n{}",
        imp.datum().dim_group(),
        table_rows.len(),
        points,
        center.order,
        table.render()
    );
    rep.table = table;
    Ok(rep)
}

/// Compress the longest run (length ≥ 3) of a repeated value as
/// `a,a,…,a`, the way the series rows of the marks table are written.
pub fn pattern(m: &[i64]) -> String {
    let (mut best, mut start) = ((0, 0), 0);
    for i in 1..=m.len() {
        if i == m.len() || m[i] != m[start] {
            if i - start > best.1 - best.0 {
                best = (start, i);
            }
            start = i;
        }
    }
    let show = |xs: &[i64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let parts = if best.1 - best.0 >= 3 {
        let (a, b) = best;
        let mut p = show(&m[..a + 2]);
        p.push("…".to_owned());
        p.extend(show(&m[b - 1..]));
        p
    } else {
        show(m)
    };
    format!("({})", parts.join(","))
}

#[derive(Serialize)]
struct MarksRow {
    group: String,
    pattern: String,
    marks: Vec<i64>,
    lcm: i64,
    l_coefficients: Vec<i64>,
    labels: Vec<i64>,
    standard_projective: bool,
}

fn marks_row(name: String, t: CartanType) -> Result<MarksRow, CliError> {
    let toric = qhimpl_core::Alcove::build(t)?.toric_cut_data()?;
    Ok(MarksRow {
        group: name,
        pattern: pattern(&toric.weights_m),
        marks: toric.weights_m,
        lcm: toric.lcm_m,
        l_coefficients: toric.l_coefficients,
        labels: toric.labels,
        standard_projective: toric.is_standard_projective,
    })
}

/// One row per series, computed at ranks 6..=8 and required to give the
/// same compressed pattern at each.
fn series_row(label: TypeLabel) -> Result<MarksRow, CliError> {
    let mut rows = (6..=8)
        .map(|r| marks_row(format!("{label}_r"), CartanType::new(label, r)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    if rows.iter().any(|r| r.pattern != rows[0].pattern) {
        return Err(qhimpl_core::Error::Internal(format!("marks of {label} series do not stabilize")).into());
    }
    let mut row = rows.swap_remove(0);
    // rank-dependent fields make no sense for the symbolic row
    row.marks.clear();
    row.l_coefficients.clear();
    row.labels.clear();
    row.lcm = 0;
    Ok(row)
}

pub fn weights(g: &OptionalGroup, seed: u64) -> Result<Report, CliError> {
    let mut table = Table::new(&["group", "marks", "lcm", "l"]);
    if let Some(t) = optional(g)? {
        let row = marks_row(t.to_string(), t)?;
        let line = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        table.push(vec![row.group.clone(), line(&row.marks), row.lcm.to_string(), line(&row.l_coefficients)]);
        let mut rep = Report::new("weights", seed, json!({ "rows": [row] }))?;
        rep.text = format!("{}\n", line(&row.marks));
        rep.table = table;
        return Ok(rep);
    }
    let mut rows = Vec::new();
    for l in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
        rows.push(series_row(l)?);
    }
    for (l, r) in [(TypeLabel::E, 6), (TypeLabel::E, 7), (TypeLabel::E, 8), (TypeLabel::F, 4), (TypeLabel::G, 2)] {
        let t = CartanType::new(l, r)?;
        rows.push(marks_row(format!("{l}_{r}"), t)?);
    }
    let mut text = Table::new(&["K", "m"]);
    for r in &rows {
        text.push(vec![r.group.clone(), r.pattern.clone()]);
        let l = r.l_coefficients.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let lcm = if r.lcm == 0 { String::new() } else { r.lcm.to_string() };
        table.push(vec![r.group.clone(), r.pattern.clone(), lcm, l]);
    }
    let mut rep = Report::new("weights", seed, json!({ "rows": rows }))?;
    rep.text = text.render();
    rep.table = table;
    Ok(rep)
}

pub fn smooth(g: &Group, face: Option<&str>, seed: u64) -> Result<Report, CliError> {
    let t = group(g)?;
    let imp = Implosion::build(t)?;
    let indices: Vec<usize> = match face {
        Some(id) => {
            let walls = parse_face_id(id)?;
            let i = imp.face_index(&walls).ok_or_else(|| {
                CliError::Usage(format!(
                    "{} is not a face of the {t} alcove (walls are 1..={})",
                    face_id(&walls),
                    t.rank + 1
                ))
            })?;
            vec![i]
        }
        None => (0..imp.faces.len()).collect(),
    };
    let mut table = Table::new(&["face", "sigma", "type", "removable", "all_A1", "central_vertex"]);
    let mut rows = Vec::new();
    for i in indices {
        let f = &imp.faces[i];
        let v = imp.smoothness_check(i);
        table.push(vec![
            f.id.clone(),
            sigma_label(&f.vertex_ids, f.dim, t.rank),
            imp.data[i].type_string(),
            yes_no(v.removable),
            yes_no(v.all_components_a1),
            yes_no(v.has_central_vertex),
        ]);
        rows.push(json!({
            "face": f.id,
            "type": imp.data[i].type_string(),
            "removable": v.removable,
            "all_components_a1": v.all_components_a1,
            "has_central_vertex": v.has_central_vertex,
            "reasons": v.reasons,
        }));
    }
    let mut rep = Report::new("smooth", seed, json!({ "group": t.to_string(), "faces": rows }))?;
    rep.text = table.render();
    rep.table = table;
    Ok(rep)
}

pub fn zeta(g: &Group, seed: u64) -> Result<Report, CliError> {
    let t = group(g)?;
    let imp = Implosion::build(t)?;
    let z = imp.zeta_homomorphism()?;
    let mut table = Table::new(&["order", "coweight", "vertex", "zeta_word", "coordinate_image"]);
    let d = imp.datum();
    for g in &z.generators {
        table.push(vec![
            g.order.to_string(),
            format!("{:?}", g.coweight_coords),
            g.vertex_id.to_string(),
            format!("{:?}", g.zeta_word),
            coordinate_image(d, &g.zeta_word)?,
        ]);
    }
    let mut rep = Report::new("zeta", seed, json!({ "group": t.to_string(), "report": z }))?;
    rep.pass = z.homomorphism && z.injective;
    rep.text = format!(
        "{t}: centre of order {}, homomorphism {}, injective {}\n{}",
        z.elements.len(),
        yes_no(z.homomorphism),
        yes_no(z.injective),
        table.render()
    );
    rep.table = table;
    Ok(rep)
}

/// Where a Weyl word sends the ambient basis vectors, as `e1->e3 ...`; only
/// meaningful when the word permutes coordinates up to sign.
fn coordinate_image(d: &RootDatum, word: &[usize]) -> Result<String, CliError> {
    let mut parts = Vec::new();
    for i in 0..d.ambient_dim {
        let img = d.apply_weyl_word(word, &exact::unit(d.ambient_dim, i))?;
        let nz: Vec<usize> = (0..img.len()).filter(|&j| img[j] != exact::int(0)).collect();
        match nz.as_slice() {
            [j] if img[*j] == exact::int(1) => parts.push(format!("e{}->e{}", i + 1, j + 1)),
            [j] if img[*j] == exact::int(-1) => parts.push(format!("e{}->-e{}", i + 1, j + 1)),
            _ => return Ok("-".to_owned()),
        }
    }
    Ok(parts.join(" "))
}

pub fn symmetries(g: &Group, seed: u64) -> Result<Report, CliError> {
    let t = group(g)?;
    let imp = Implosion::build(t)?;
    let s = imp.alcove_symmetries()?;
    let mut header = vec!["face".to_owned(), "dual".to_owned()];
    header.extend(s.center_face_permutations.iter().map(|p| format!("c@v{}", p.vertex_id)));
    let mut table = Table { header, rows: Vec::new() };
    for (i, id) in s.face_ids.iter().enumerate() {
        let mut row = vec![id.clone(), s.face_ids[s.duality_face_permutation[i]].clone()];
        row.extend(s.center_face_permutations.iter().map(|p| s.face_ids[p.images[i]].clone()));
        table.push(row);
    }
    let mut rep = Report::new("symmetries", seed, json!({ "group": t.to_string(), "report": s }))?;
    rep.pass = s.poset_automorphisms
        && s.group_closed
        && s.duality_involution
        && s.duality_inverts_center
        && s.dims_invariant;
    rep.text = format!(
        "{t}: poset automorphisms {}, closed {}, duality involution {}, duality inverts centre {}, dims invariant {}\n{}",
        yes_no(s.poset_automorphisms),
        yes_no(s.group_closed),
        yes_no(s.duality_involution),
        yes_no(s.duality_inverts_center),
        yes_no(s.dims_invariant),
        table.render()
    );
    rep.table = table;
    Ok(rep)
}

fn sweep(g: &OptionalGroup, default: &[&str]) -> Result<Vec<CartanType>, CliError> {
    Ok(match optional(g)? {
        Some(t) => vec![t],
        None => default
            .iter()
            .map(|s| s.parse::<CartanType>())
            .collect::<Result<_, _>>()?,
    })
}

pub fn check_centralizer(g: &OptionalGroup, seed: u64) -> Result<Report, CliError> {
    let types = sweep(g, &CENTRALIZER_SWEEP)?;
    let mut table = Table::new(&["group", "faces_checked", "failed", "pass"]);
    let mut groups = Vec::new();
    for t in types {
        if t.rank < 2 {
            return Err(CliError::Usage(format!("{t}: the intersection check needs rank >= 2")));
        }
        let rep = Implosion::build(t)?.centralizer_intersection_check();
        let failed: Vec<&str> = rep.faces.iter().filter(|f| !f.pass).map(|f| f.face_id.as_str()).collect();
        table.push(vec![t.to_string(), rep.faces.len().to_string(), failed.join(" "), yes_no(rep.pass)]);
        groups.push(json!({ "group": t.to_string(), "faces": rep.faces, "pass": rep.pass }));
    }
    let pass = groups.iter().all(|g| g["pass"] == true);
    let mut rep = Report::new("check-centralizer", seed, json!({ "groups": groups }))?;
    rep.pass = pass;
    rep.text = table.render();
    rep.table = table;
    Ok(rep)
}

pub fn check_integrality(g: &OptionalGroup, seed: u64) -> Result<Report, CliError> {
    let types = sweep(g, &INTEGRALITY_SWEEP)?;
    let mut table = Table::new(&["group", "roots", "marks", "orders", "pass"]);
    let mut groups = Vec::new();
    let mut reading = String::new();
    for t in types {
        if t.rank < 3 {
            return Err(CliError::Usage(format!("{t}: triples of simple roots need rank >= 3")));
        }
        let rep = integrality_triple_check(&RootDatum::from_type(t)?)?;
        for tr in &rep.triples {
            table.push(vec![
                t.to_string(),
                format!("{:?}", tr.roots),
                format!("{:?}", tr.marks),
                format!("{:?}", tr.orders),
                yes_no(tr.pass),
            ]);
        }
        reading = rep.reading.clone();
        groups.push(json!({ "group": t.to_string(), "triples": rep.triples, "pass": rep.pass }));
    }
    let pass = groups.iter().all(|g| g["pass"] == true);
    let mut rep = Report::new("check-integrality", seed, json!({ "reading": reading, "groups": groups }))?;
    rep.pass = pass;
    rep.text = format!("reading: {reading}\n{}", table.render());
    rep.table = table;
    Ok(rep)
}

pub fn su_embedding(n: Option<usize>, seed: u64) -> Result<Report, CliError> {
    let sizes: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (2..=6).collect(),
    };
    let mut table = Table::new(&["n", "support", "blocks", "face", "expected", "found", "pass"]);
    let mut reports = Vec::new();
    for n in sizes {
        if !(2..=8).contains(&n) {
            return Err(CliError::Usage(format!("--n {n} outside 2..=8")));
        }
        let rep = su_stabilizer_pattern_check(n)?;
        for p in &rep.patterns {
            table.push(vec![
                n.to_string(),
                format!("{:?}", p.support),
                format!("{:?}", p.blocks),
                p.face_id.clone(),
                type_string(&p.expected),
                type_string(&p.found),
                yes_no(p.pass),
            ]);
        }
        reports.push(rep);
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut rep = Report::new("su-embedding-check", seed, json!({ "reports": reports }))?;
    rep.pass = pass;
    rep.text = table.render();
    rep.table = table;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_of_the_series() {
        assert_eq!(pattern(&[1; 9]), "(1,1,…,1)");
        assert_eq!(pattern(&[1, 2, 2, 2, 2, 2, 2, 1, 1]), "(1,2,2,…,2,1,1)");
        assert_eq!(pattern(&[1, 2, 2, 2, 2, 2, 1, 1, 1]), "(1,2,2,…,2,1,1,1)");
        assert_eq!(pattern(&[2, 3, 2, 1, 1]), "(2,3,2,1,1)");
        assert_eq!(pattern(&[1, 2, 2, 3, 2, 1, 1]), "(1,2,2,3,2,1,1)");
    }

    #[test]
    fn group_resolution() {
        assert_eq!(resolve("A", Some(2)).unwrap().to_string(), "A2");
        assert_eq!(resolve("e8", None).unwrap().to_string(), "E8");
        assert!(matches!(resolve("A", None), Err(CliError::Usage(_))));
        assert!(matches!(resolve("E8", Some(7)), Err(CliError::Usage(_))));
        assert!(resolve("G", Some(3)).is_err());
        assert!(resolve("Q", Some(3)).is_err());
    }

    #[test]
    fn sigma_labels() {
        assert_eq!(sigma_label(&[0, 1, 2], 2, 2), "A");
        assert_eq!(sigma_label(&[0, 1], 1, 2), "01");
        assert_eq!(k_sigma(1, &[CartanType::new(TypeLabel::A, 1).unwrap()]), "T1 x A1");
        assert_eq!(k_sigma(2, &[]), "T2");
    }
}
