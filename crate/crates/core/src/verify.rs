//! Every identity and inequality of the small-degree bound, evaluated on a
//! concrete graph.
//!
//! Each check produces a [`CheckRecord`]. A check whose precondition fails is
//! reported as `SKIPPED` with its reason; nothing is dropped, so every report
//! carries the same list of names in the same order.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discharge::{check_element_bounds, discharge, ChargeLedger, ElementBoundsReport};
use crate::faces::{faces_of, FaceSet};
use crate::geom::ToleranceConfig;
use crate::graph::{DegreeHistogram, PlaneGraph};

/// Margin under which a strict inequality is flagged `WARN`.
pub const STRICT_MARGIN_WARN: f64 = 1e-9;
/// Allowed drift between initial and final charge totals.
pub const CONSERVATION_TOL: f64 = 1e-6;
/// Allowed error in the construction ratio.
pub const REMARK_RATIO_TOL: f64 = 1e-9;

/// `π√3`.
pub fn pi_sqrt3() -> f64 {
    PI * 3f64.sqrt()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("degree histogram is not that of H({k}): {detail}")]
    NotHexFamily { k: usize, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "==",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    /// Signed slack: positive when satisfied with room, zero when tight.
    fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Eq => 0.0 - (lhs - rhs).abs(),
            Relation::Le => rhs - lhs,
            Relation::Ge | Relation::Gt => lhs - rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub relation: Relation,
    pub status: Status,
    pub margin: Option<f64>,
    pub reason: Option<String>,
    pub witnesses: Vec<String>,
}

impl CheckRecord {
    fn skipped(name: &str, relation: Relation, reason: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            lhs: None,
            rhs: None,
            relation,
            status: Status::Skipped,
            margin: None,
            reason: Some(reason.into()),
            witnesses: Vec::new(),
        }
    }

    /// Evaluates `lhs relation rhs`. Equalities pass when `|lhs - rhs| <= tol`.
    fn evaluate(name: &str, lhs: f64, relation: Relation, rhs: f64, tol: f64) -> Self {
        let margin = relation.margin(lhs, rhs);
        let status = match relation {
            Relation::Gt if margin > STRICT_MARGIN_WARN => Status::Pass,
            Relation::Gt if margin > 0.0 => Status::Warn,
            Relation::Gt => Status::Fail,
            _ if margin >= -tol => Status::Pass,
            _ => Status::Fail,
        };
        CheckRecord {
            name: name.to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            relation,
            status,
            margin: Some(margin),
            reason: None,
            witnesses: Vec::new(),
        }
    }

    fn exact(name: &str, lhs: i64, relation: Relation, rhs: i64) -> Self {
        CheckRecord::evaluate(name, lhs as f64, relation, rhs as f64, 0.0)
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    fn fail_unless(mut self, ok: bool, why: impl Into<String>) -> Self {
        if !ok {
            self.status = Status::Fail;
            self.witnesses.push(why.into());
        }
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Warn)
    }
}

pub const CHECK_NAMES: [&str; 17] = [
    "matchstick_validation",
    "degree_sum_identity",
    "face_assembly",
    "incidence_identity",
    "euler_formula",
    "small_face_shapes",
    "angle_closure",
    "total_charge",
    "charge_conservation",
    "element_bounds",
    "vertex_charge_bound",
    "discharge_bound",
    "edge_face_bound",
    "isoperimetric",
    "theorem",
    "corollary",
    "remark_ratio",
];

fn relation_of(name: &str) -> Relation {
    match name {
        "discharge_bound" | "vertex_charge_bound" => Relation::Ge,
        "edge_face_bound" | "angle_closure" => Relation::Le,
        "isoperimetric" | "theorem" | "corollary" => Relation::Gt,
        _ => Relation::Eq,
    }
}

pub fn check_degree_sums(g: &PlaneGraph) -> CheckRecord {
    let h = g.degree_histogram();
    CheckRecord::exact(
        "degree_sum_identity",
        h.degree_sum() as i64,
        Relation::Eq,
        2 * h.e as i64,
    )
    .witness(format!("sum_i n_i = {} = n = {}", h.vertex_sum(), h.n))
    .fail_unless(h.vertex_sum() == h.n, "sum of n_i differs from n")
}

/// `b + Σ k f_k = Σ i n_i = 2e`.
pub fn check_incidence_identity(g: &PlaneGraph, fs: &FaceSet) -> CheckRecord {
    let census = fs.census();
    let h = g.degree_histogram();
    CheckRecord::exact(
        "incidence_identity",
        census.side_total() as i64,
        Relation::Eq,
        2 * g.edge_count() as i64,
    )
    .witness(format!("sum_i i*n_i = {}", h.degree_sum()))
    .fail_unless(h.degree_sum() == 2 * g.edge_count(), "degree sum differs from 2e")
}

/// `n - e + (f + 1) = 1 + c`, with `f` counting bounded faces only.
pub fn check_euler(g: &PlaneGraph, fs: &FaceSet) -> CheckRecord {
    let c = g.connected_components() as i64;
    let f = fs.census().f as i64;
    let lhs = g.vertex_count() as i64 - g.edge_count() as i64 + f + 1;
    CheckRecord::exact("euler_formula", lhs, Relation::Eq, 1 + c).witness(format!(
        "n = {}, e = {}, f = {f}, c = {c}",
        g.vertex_count(),
        g.edge_count()
    ))
}

/// Bounded faces with few sides have the only shapes a unit drawing allows:
/// no bounded face below three sides, every 3-gon an equilateral triangle,
/// every 4-gon and 5-gon a single cycle through distinct vertices.
pub fn check_small_faces(fs: &FaceSet, tol: &ToleranceConfig) -> CheckRecord {
    let mut witnesses = Vec::new();
    for (fi, face) in fs.faces().iter().enumerate().filter(|(_, f)| f.bounded) {
        let k = face.sides;
        if k < 3 {
            witnesses.push(format!("face {fi}: bounded {k}-gon"));
            continue;
        }
        if k > 5 {
            continue;
        }
        if face.walks.len() != 1 {
            witnesses.push(format!("face {fi}: {k}-gon with {} boundary walks", face.walks.len()));
            continue;
        }
        let walk = &fs.walks()[face.walks[0]];
        let mut vs = walk.vertices();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != k {
            witnesses.push(format!("face {fi}: {k}-gon through {} distinct vertices", vs.len()));
        }
        if k == 3 {
            for c in &walk.corners {
                if (c.raw_angle - PI / 3.0).abs() > tol.eps_ang {
                    witnesses.push(format!(
                        "face {fi}: triangle corner at vertex {} is {}",
                        c.vertex, c.raw_angle
                    ));
                }
            }
        }
    }
    let bad = witnesses.len() as i64;
    let mut rec = CheckRecord::exact("small_face_shapes", bad, Relation::Eq, 0);
    rec.witnesses = witnesses;
    rec
}

/// Corner angles around each non-isolated vertex add up to a full turn.
pub fn check_angle_closure(g: &PlaneGraph, fs: &FaceSet, tol: &ToleranceConfig) -> CheckRecord {
    let deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let allowed = max_deg as f64 * tol.eps_ang + 1e-12;
    let mut worst = 0.0_f64;
    let mut witnesses = Vec::new();
    for (v, corners) in fs.corner_angles_by_vertex().iter().enumerate() {
        if deg[v] == 0 {
            continue;
        }
        if corners.len() != deg[v] {
            witnesses.push(format!("vertex {v}: {} corners for degree {}", corners.len(), deg[v]));
        }
        let dev = (corners.iter().map(|c| c.1).sum::<f64>() - TAU).abs();
        if dev > worst {
            worst = dev;
        }
    }
    let mut rec = CheckRecord::evaluate("angle_closure", worst, Relation::Le, allowed, 0.0);
    if !witnesses.is_empty() {
        rec.status = Status::Fail;
        rec.witnesses = witnesses;
    }
    rec
}

/// Initial total is `-6(c + 1)`, hence at most `-12` for a non-empty graph.
pub fn check_total_charge(ledger: &ChargeLedger) -> CheckRecord {
    let total = ledger.total_initial;
    let rec = CheckRecord::evaluate("total_charge", total, Relation::Eq, ledger.expected_total() as f64, 0.0)
        .witness(format!("c = {}", ledger.components));
    if ledger.components >= 1 {
        rec.fail_unless(total <= -12.0, format!("total {total} exceeds -12"))
    } else {
        rec
    }
}

/// Redistribution keeps the total and moves between 0 and 1 per corner.
pub fn check_charge_conservation(ledger: &ChargeLedger) -> CheckRecord {
    let out_of_range = ledger.transfers().filter(|t| !(0.0..=1.0).contains(&t.amount)).count();
    CheckRecord::evaluate(
        "charge_conservation",
        ledger.total_final,
        Relation::Eq,
        ledger.total_initial,
        CONSERVATION_TOL,
    )
    .fail_unless(out_of_range == 0, format!("{out_of_range} transfers outside [0, 1]"))
}

fn element_bounds_record(report: &ElementBoundsReport) -> CheckRecord {
    if let Some(reason) = &report.precondition_unmet {
        return CheckRecord::skipped("element_bounds", Relation::Eq, reason.clone());
    }
    let mut rec = CheckRecord::exact("element_bounds", report.failures().count() as i64, Relation::Eq, 0);
    rec.witnesses = report
        .failures()
        .map(|e| {
            format!(
                "{:?} ({}): final {} vs bound {}",
                e.element, e.class, e.final_charge, e.bound
            )
        })
        .collect();
    if !report.isolated.is_empty() {
        rec.witnesses
            .push(format!("{} isolated vertices not checked", report.isolated.len()));
    }
    rec
}

fn effective_vertices(h: &DegreeHistogram) -> usize {
    h.n - h.count(0)
}

/// Σ final vertex charge `>= -4n_1 - 3n_2 - 2n_3 - n_4`, over non-isolated vertices.
pub fn check_vertex_charge_bound(g: &PlaneGraph, ledger: &ChargeLedger, tol: &ToleranceConfig) -> CheckRecord {
    let h = g.degree_histogram();
    if effective_vertices(&h) < 5 {
        return CheckRecord::skipped(
            "vertex_charge_bound",
            Relation::Ge,
            "requires n >= 5 after removing isolated vertices",
        );
    }
    let sum: f64 = ledger
        .vertices
        .iter()
        .filter(|v| v.degree > 0)
        .map(|v| v.final_charge)
        .sum();
    let slack = h.n as f64 * 6.0 * tol.eps_ang * (3.0 / PI);
    CheckRecord::evaluate(
        "vertex_charge_bound",
        sum,
        Relation::Ge,
        -(h.low_degree_deficit() as f64),
        slack,
    )
}

/// `4n_1 + 3n_2 + 2n_3 + n_4 >= b + 6`.
pub fn check_discharge_bound(g: &PlaneGraph, fs: &FaceSet) -> CheckRecord {
    let h = g.degree_histogram();
    if effective_vertices(&h) < 5 {
        return CheckRecord::skipped(
            "discharge_bound",
            Relation::Ge,
            "requires n >= 5 after removing isolated vertices",
        );
    }
    let b = fs.census().b as i64;
    let lhs = h.low_degree_deficit() as i64;
    let rec = CheckRecord::exact("discharge_bound", lhs, Relation::Ge, b + 6);
    if lhs == b + 6 {
        rec.witness("tight")
    } else {
        rec
    }
}

/// `2e <= 4n - 4 - b + f_3 - (f_5 + 2f_6 + ...) <= 4n - 8 + f_3`, with `n`
/// counting non-isolated vertices.
pub fn check_edge_face_bound(g: &PlaneGraph, fs: &FaceSet) -> CheckRecord {
    let h = g.degree_histogram();
    let n = effective_vertices(&h) as i64;
    let census = fs.census();
    let b = census.b as i64;
    if n < 5 {
        return CheckRecord::skipped(
            "edge_face_bound",
            Relation::Le,
            "requires n >= 5 after removing isolated vertices",
        );
    }
    if b < 4 {
        return CheckRecord::skipped(
            "edge_face_bound",
            Relation::Le,
            format!("requires b >= 4, found b = {b}"),
        );
    }
    let f3 = census.count(3) as i64;
    let excess: i64 = census
        .f_k
        .iter()
        .filter(|(k, _)| **k >= 5)
        .map(|(k, c)| (*k as i64 - 4) * *c as i64)
        .sum();
    let middle = 4 * n - 4 - b + f3 - excess;
    let two_e = 2 * g.edge_count() as i64;
    CheckRecord::exact("edge_face_bound", two_e, Relation::Le, 4 * n - 8 + f3)
        .witness(format!("4n - 4 - b + f3 - (f5 + 2f6 + ...) = {middle}"))
        .fail_unless(two_e <= middle, "2e exceeds the intermediate bound")
        .fail_unless(middle <= 4 * n - 8 + f3, "intermediate bound exceeds 4n - 8 + f3")
}

/// `b² > π√3 f_3`.
pub fn check_isoperimetric(g: &PlaneGraph, fs: &FaceSet) -> CheckRecord {
    if g.edge_count() == 0 {
        return CheckRecord::skipped("isoperimetric", Relation::Gt, "graph has no edges");
    }
    let census = fs.census();
    let b = census.b as f64;
    CheckRecord::evaluate(
        "isoperimetric",
        b * b,
        Relation::Gt,
        pi_sqrt3() * census.count(3) as f64,
        0.0,
    )
    .witness(format!("b = {}, f3 = {}", census.b, census.count(3)))
}

/// `4n_1 + 3n_2 + 2n_3 + n_4 > √(π√3 n)`, for graphs without isolated vertices.
pub fn check_theorem(g: &PlaneGraph) -> CheckRecord {
    let h = g.degree_histogram();
    if h.n == 0 {
        return CheckRecord::skipped("theorem", Relation::Gt, "empty graph");
    }
    if h.count(0) > 0 {
        return CheckRecord::skipped(
            "theorem",
            Relation::Gt,
            format!("{} isolated vertices; see corollary", h.count(0)),
        );
    }
    CheckRecord::evaluate(
        "theorem",
        h.low_degree_deficit() as f64,
        Relation::Gt,
        (pi_sqrt3() * h.n as f64).sqrt(),
        0.0,
    )
}

/// `n_0 + ... + n_4 > ¼√(π√3 n)`, obtained by dropping isolated vertices,
/// applying the theorem bound and adding them back.
pub fn check_corollary(g: &PlaneGraph) -> CheckRecord {
    let h = g.degree_histogram();
    if h.n == 0 {
        return CheckRecord::skipped("corollary", Relation::Gt, "empty graph");
    }
    let (reduced, n0) = g.remove_isolated();
    let mut rec = CheckRecord::evaluate(
        "corollary",
        h.at_most_four() as f64,
        Relation::Gt,
        0.25 * (pi_sqrt3() * h.n as f64).sqrt(),
        0.0,
    )
    .witness(format!("n0 = {n0}"));
    if reduced.vertex_count() > 0 {
        let inner = check_theorem(&reduced);
        rec = rec
            .witness(format!(
                "on the graph without isolated vertices: {} > {}",
                inner.lhs.unwrap_or(f64::NAN),
                inner.rhs.unwrap_or(f64::NAN)
            ))
            .fail_unless(inner.passed(), "theorem bound fails after removing isolated vertices");
    }
    rec
}

/// `(2n_3 + n_4)/√n = 2√3 √(1 + 1/k)` on the generated `H(k)`.
pub fn check_remark_ratio(g: &PlaneGraph, k: usize) -> Result<CheckRecord, VerifyError> {
    let h = g.degree_histogram();
    let expect = |deg: usize| -> usize {
        match deg {
            3 => 6,
            4 => 6 * (k.saturating_sub(1)),
            5 => 3 * k * k - 3 * k,
            _ => 0,
        }
    };
    let n_ok = h.n == 3 * k * k + 3 * k;
    let degrees_ok = h.counts.iter().all(|(&d, &c)| c == expect(d)) && (3..=5).all(|d| h.count(d) == expect(d));
    if k < 2 || !n_ok || !degrees_ok {
        return Err(VerifyError::NotHexFamily {
            k,
            detail: format!("n = {}, histogram {:?}", h.n, h.counts),
        });
    }
    let ratio = (2 * h.count(3) + h.count(4)) as f64 / (h.n as f64).sqrt();
    let closed = 2.0 * 3f64.sqrt() * (1.0 + 1.0 / k as f64).sqrt();
    Ok(
        CheckRecord::evaluate("remark_ratio", ratio, Relation::Eq, closed, REMARK_RATIO_TOL).witness(format!(
            "limit 2*sqrt(3) = {} vs sqrt(pi*sqrt(3)) = {}",
            2.0 * 3f64.sqrt(),
            pi_sqrt3().sqrt()
        )),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Set when the input is the generated `H(k)`; enables `remark_ratio`.
    pub hex_k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    VacuousPass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub e: usize,
    pub c: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub b: Option<usize>,
    pub f: Option<usize>,
    pub f_k: Option<BTreeMap<usize, usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    pub census: Census,
    pub tolerances: ToleranceConfig,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub const SIDE_CONVENTION_NOTE: &str =
    "b sums the sides of every boundary walk of the unbounded face; an edge with the same face on both sides counts twice";

/// Validation, faces, charges and every check, in one report.
pub fn verify_all(g: &PlaneGraph, tol: &ToleranceConfig) -> VerificationReport {
    verify_with(g, tol, &VerifyOptions::default())
}

pub fn verify_with(g: &PlaneGraph, tol: &ToleranceConfig, opts: &VerifyOptions) -> VerificationReport {
    let h = g.degree_histogram();
    let mut census = Census {
        n: h.n,
        e: h.e,
        c: g.connected_components(),
        degree_histogram: h.counts.clone(),
        b: None,
        f: None,
        f_k: None,
    };
    let mut notes = vec![SIDE_CONVENTION_NOTE.to_string()];
    let mut done: Vec<CheckRecord> = Vec::new();

    let finish = |mut done: Vec<CheckRecord>, census: Census, notes: Vec<String>, skip_reason: &str| {
        for name in CHECK_NAMES {
            if !done.iter().any(|c| c.name == name) {
                done.push(CheckRecord::skipped(name, relation_of(name), skip_reason));
            }
        }
        done.sort_by_key(|c| CHECK_NAMES.iter().position(|n| *n == c.name));
        let verdict = if done.iter().any(|c| c.status == Status::Fail) {
            Verdict::Fail
        } else if done.iter().all(|c| c.status == Status::Skipped) {
            Verdict::VacuousPass
        } else {
            Verdict::Pass
        };
        VerificationReport {
            checks: done,
            verdict,
            census,
            tolerances: *tol,
            notes,
        }
    };

    if h.n == 0 {
        notes.push("empty graph: every check is vacuous".to_string());
        return finish(done, census, notes, "empty graph");
    }

    let cert = g.validate_matchstick(tol);
    let mut rec = CheckRecord::exact("matchstick_validation", cert.violations.len() as i64, Relation::Eq, 0);
    rec.witnesses = cert
        .violations
        .iter()
        .map(|v| format!("{:?} {:?} measured {:?}", v.kind, v.witnesses, v.measured))
        .collect();
    done.push(rec);
    if !cert.pass {
        return finish(done, census, notes, "matchstick validation failed");
    }

    done.push(check_degree_sums(g));

    let fs = match faces_of(g, tol) {
        Ok(fs) => fs,
        Err(err) => {
            done.push(CheckRecord {
                status: Status::Fail,
                reason: Some(err.to_string()),
                ..CheckRecord::skipped("face_assembly", Relation::Eq, "")
            });
            return finish(done, census, notes, "face assembly failed");
        }
    };
    let fc = fs.census();
    census.b = Some(fc.b);
    census.f = Some(fc.f);
    census.f_k = Some(fc.f_k.clone());
    done.push(
        CheckRecord::exact(
            "face_assembly",
            fs.faces().iter().filter(|f| !f.bounded).count() as i64,
            Relation::Eq,
            1,
        )
        .witness(format!("{} walks, {} faces", fs.walks().len(), fs.faces().len())),
    );

    done.push(check_incidence_identity(g, &fs));
    done.push(check_euler(g, &fs));
    done.push(check_small_faces(&fs, tol));
    done.push(check_angle_closure(g, &fs, tol));

    match discharge(g, &fs) {
        Ok(ledger) => {
            done.push(check_total_charge(&ledger));
            done.push(check_charge_conservation(&ledger));
            done.push(element_bounds_record(&check_element_bounds(&ledger, g, &fs, tol)));
            done.push(check_vertex_charge_bound(g, &ledger, tol));
        }
        Err(err) => {
            done.push(CheckRecord {
                status: Status::Fail,
                reason: Some(err.to_string()),
                ..CheckRecord::skipped("charge_conservation", Relation::Eq, "")
            });
        }
    }

    done.push(check_discharge_bound(g, &fs));
    done.push(check_edge_face_bound(g, &fs));
    done.push(check_isoperimetric(g, &fs));
    done.push(check_theorem(g));
    done.push(check_corollary(g));

    match opts.hex_k {
        Some(k) => done.push(match check_remark_ratio(g, k) {
            Ok(r) => r,
            Err(err) => CheckRecord {
                status: Status::Fail,
                reason: Some(err.to_string()),
                ..CheckRecord::skipped("remark_ratio", Relation::Eq, "")
            },
        }),
        None => done.push(CheckRecord::skipped(
            "remark_ratio",
            Relation::Eq,
            "input is not tagged as a generated hexagonal construction",
        )),
    }

    finish(done, census, notes, "an earlier stage failed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{hex_construction, primitive, HexFamilySpec, Primitive};
    use crate::geom::Point2;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn fs(g: &PlaneGraph) -> FaceSet {
        faces_of(g, &tol()).unwrap()
    }

    fn hex(k: usize) -> PlaneGraph {
        hex_construction(&HexFamilySpec::new(k)).unwrap()
    }

    fn triangle_plus_isolated(count: usize) -> PlaneGraph {
        let mut pts = primitive(Primitive::Triangle).vertices().to_vec();
        for i in 0..count {
            pts.push(Point2::new(5.0 + 2.0 * i as f64, 5.0));
        }
        PlaneGraph::build(pts, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let t = primitive(Primitive::Triangle);
        let r = check_incidence_identity(&t, &fs(&t));
        assert_eq!((r.lhs, r.rhs, r.status), (Some(6.0), Some(6.0), Status::Pass));
        let g = primitive(Primitive::RhombusPendant);
        let r = check_incidence_identity(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs), (Some(10.0), Some(10.0)));
        let g = hex(2);
        let r = check_incidence_identity(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs), (Some(72.0), Some(72.0)));
    }

    #[test]
    fn euler_examples() {
        let t = primitive(Primitive::Triangle);
        let r = check_euler(&t, &fs(&t));
        assert_eq!((r.lhs, r.rhs), (Some(2.0), Some(2.0)));
        let g = primitive(Primitive::TwoTrianglesDisjoint);
        let r = check_euler(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs), (Some(3.0), Some(3.0)));
        let g = hex(4);
        assert_eq!(g.edge_count(), 135);
        let r = check_euler(&g, &fs(&g));
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.rhs, Some(2.0));
        let g = triangle_plus_isolated(3);
        assert_eq!(check_euler(&g, &fs(&g)).status, Status::Pass);
    }

    #[test]
    fn total_charge_examples() {
        let g = primitive(Primitive::RhombusPendant);
        let l = discharge(&g, &fs(&g)).unwrap();
        let r = check_total_charge(&l);
        assert_eq!((r.lhs, r.status), (Some(-12.0), Status::Pass));
        let g = primitive(Primitive::TwoTrianglesDisjoint);
        let l = discharge(&g, &fs(&g)).unwrap();
        assert_eq!(check_total_charge(&l).lhs, Some(-18.0));
    }

    #[test]
    fn discharge_bound_examples() {
        let g = primitive(Primitive::RhombusPendant);
        let r = check_discharge_bound(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs, r.status), (Some(15.0), Some(10.0), Status::Pass));
        let g = hex(4);
        let r = check_discharge_bound(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs, r.margin), (Some(30.0), Some(30.0), Some(0.0)));
        assert_eq!(r.witnesses, vec!["tight".to_string()]);
        let g = primitive(Primitive::Rhombus);
        assert_eq!(check_discharge_bound(&g, &fs(&g)).status, Status::Skipped);
    }

    #[test]
    fn edge_face_examples() {
        let g = hex(2);
        let r = check_edge_face_bound(&g, &fs(&g));
        assert_eq!(
            (r.lhs, r.rhs, r.status),
            (Some(72.0), Some(4.0 * 18.0 - 8.0 + 18.0), Status::Pass)
        );
        let g = primitive(Primitive::RhombusPendant);
        let r = check_edge_face_bound(&g, &fs(&g));
        assert_eq!((r.lhs, r.rhs, r.status), (Some(10.0), Some(12.0), Status::Pass));
        let t = primitive(Primitive::Triangle);
        assert_eq!(check_edge_face_bound(&t, &fs(&t)).status, Status::Skipped);
    }

    #[test]
    fn isoperimetric_examples() {
        let t = primitive(Primitive::Triangle);
        let r = check_isoperimetric(&t, &fs(&t));
        assert_eq!(r.lhs, Some(9.0));
        assert!((r.rhs.unwrap() - 5.441_398_092_702_653).abs() < 1e-12);
        assert_eq!(r.status, Status::Pass);
        let g = hex(4);
        let r = check_isoperimetric(&g, &fs(&g));
        assert_eq!(r.lhs, Some(576.0));
        assert_eq!(r.status, Status::Pass);
        let e = primitive(Primitive::SingleEdge);
        let r = check_isoperimetric(&e, &fs(&e));
        assert_eq!((r.lhs, r.rhs, r.status), (Some(4.0), Some(0.0), Status::Pass));
    }

    #[test]
    fn theorem_examples() {
        let r = check_theorem(&primitive(Primitive::SingleEdge));
        assert_eq!(r.lhs, Some(8.0));
        assert!((r.rhs.unwrap() - 3.298_908_332_373_803).abs() < 1e-9);
        let r = check_theorem(&hex(4));
        assert_eq!(r.lhs, Some(30.0));
        assert!((r.rhs.unwrap() - 18.068_865_087_828_82).abs() < 1e-6);
        let r = check_theorem(&primitive(Primitive::Triangle));
        assert_eq!(r.lhs, Some(9.0));
        assert!((r.rhs.unwrap() - 4.040_321_061_265_795).abs() < 1e-6);
        assert_eq!(check_theorem(&triangle_plus_isolated(1)).status, Status::Skipped);
        assert_eq!(check_theorem(&PlaneGraph::empty()).status, Status::Skipped);
    }

    #[test]
    fn corollary_examples() {
        let r = check_corollary(&hex(4));
        assert_eq!(r.lhs, Some(24.0));
        assert!((r.rhs.unwrap() - 4.517_216_271_957_205).abs() < 1e-6);
        let r = check_corollary(&triangle_plus_isolated(5));
        assert_eq!(r.lhs, Some(8.0));
        assert!((r.rhs.unwrap() - 1.649_454_166_186_901_5).abs() < 1e-6);
        assert_eq!(r.status, Status::Pass);
        let r = check_corollary(&primitive(Primitive::SingleEdge));
        assert_eq!(r.lhs, Some(2.0));
        assert!((r.rhs.unwrap() - 0.824_727_083_093_450_8).abs() < 1e-6);
        assert_eq!(check_corollary(&PlaneGraph::empty()).status, Status::Skipped);
    }

    #[test]
    fn remark_ratio_examples() {
        let r = check_remark_ratio(&hex(4), 4).unwrap();
        assert!((r.lhs.unwrap() - 30.0 / 60f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.status, Status::Pass);
        let r = check_remark_ratio(&hex(2), 2).unwrap();
        assert!((r.lhs.unwrap() - 18.0 / 18f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.status, Status::Pass);
        assert!(matches!(
            check_remark_ratio(&hex(3), 4),
            Err(VerifyError::NotHexFamily { k: 4, .. })
        ));
        assert!(check_remark_ratio(&primitive(Primitive::Triangle), 2).is_err());
    }

    #[test]
    fn verify_all_shapes() {
        for k in 2..=10 {
            let r = verify_with(&hex(k), &tol(), &VerifyOptions { hex_k: Some(k) });
            assert_eq!(r.verdict, Verdict::Pass, "k={k}: {}", r.to_json());
            assert!(r.checks.iter().all(|c| c.status == Status::Pass), "k={k}");
        }

        let p = Point2::new;
        let square = PlaneGraph::build(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)],
            &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)],
        )
        .unwrap();
        let r = verify_all(&square, &tol());
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.checks[0].status, Status::Fail);
        assert!(r.checks[1..].iter().all(|c| c.status == Status::Skipped));

        let r = verify_all(&PlaneGraph::empty(), &tol());
        assert_eq!(r.verdict, Verdict::VacuousPass);
        assert!(r.checks.iter().all(|c| c.status == Status::Skipped));

        for r in [verify_all(&square, &tol()), verify_all(&hex(3), &tol())] {
            let names: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
            assert_eq!(names, CHECK_NAMES);
        }
    }

    #[test]
    fn strict_margin_warns() {
        let r = CheckRecord::evaluate("theorem", 1.0 + 1e-12, Relation::Gt, 1.0, 0.0);
        assert_eq!(r.status, Status::Warn);
        assert!(r.passed());
        let r = CheckRecord::evaluate("theorem", 1.0, Relation::Gt, 1.0, 0.0);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn report_is_deterministic() {
        let g = primitive(Primitive::RhombusPendant);
        assert_eq!(verify_all(&g, &tol()).to_json(), verify_all(&g, &tol()).to_json());
    }
}
