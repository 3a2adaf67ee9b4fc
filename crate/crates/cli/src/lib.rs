//! Orbit tables, golden-table comparison and the JSON/CSV/DOT renderings used
//! by the `fricke` binary.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use fricke_core::fricke_action::{canonical_key, CanonicalKey, Omega, Point3, POINT_CAP};
use fricke_core::orbit_graphs::{build_graph, export_dot, stats, GraphStats};
use fricke_core::orbit_search::{
    close_exact, ExactOrbit, GoldenRow, OrbitRecord, SearchReport, GOLDEN,
};
use fricke_core::trig_field::{CosSum, RationalAngle};
use serde::{Deserialize, Serialize};

/// Exit status when a verification finds differences.
pub const EXIT_MISMATCH: i32 = 2;
/// Exit status when the search itself fails (cap exceeded, exact check failed).
pub const EXIT_SEARCH_FAILED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representative {
    #[serde(rename = "rX")]
    pub rx: String,
    #[serde(rename = "rY")]
    pub ry: String,
    #[serde(rename = "rZ")]
    pub rz: String,
}

/// One orbit in the output table; also the format of golden files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    pub size: usize,
    pub omega: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_float: Option<[f64; 3]>,
    pub omega4_minus: String,
    pub representative: Representative,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphStats>,
}

fn angle_str(a: RationalAngle) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

fn parse_angle(s: &str) -> Result<RationalAngle> {
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>()?, d.trim().parse::<i64>()?),
        None => (s.trim().parse::<i64>()?, 1),
    };
    Ok(RationalAngle::new(n, d)?)
}

impl OrbitRow {
    pub fn from_golden(row: &GoldenRow) -> Result<Self> {
        let a = row.rep_angles()?;
        let w = row.omega_exact()?;
        Ok(OrbitRow {
            id: Some(row.id),
            size: row.size,
            omega: row.omega.map(String::from),
            omega_float: Some(w.each_ref().map(CosSum::float)),
            omega4_minus: row.omega4_minus.to_string(),
            representative: Representative { rx: angle_str(a[0]), ry: angle_str(a[1]), rz: angle_str(a[2]) },
            class: None,
            graph: None,
        })
    }

    /// The listed point and parameters.
    pub fn params(&self) -> Result<(Point3, Omega)> {
        let w: [CosSum; 3] = [self.omega[0].parse()?, self.omega[1].parse()?, self.omega[2].parse()?];
        let d: CosSum = self.omega4_minus.parse()?;
        let w4 = &CosSum::from_int(4) - &d;
        let r = &self.representative;
        let p = Point3::new(
            CosSum::two_cos(parse_angle(&r.rx)?),
            CosSum::two_cos(parse_angle(&r.ry)?),
            CosSum::two_cos(parse_angle(&r.rz)?),
        );
        Ok((p, Omega::new(w, w4)))
    }

    /// Closes the orbit of the listed point exactly.
    pub fn close(&self) -> Result<ExactOrbit> {
        let (p, om) = self.params()?;
        if !fricke_core::fricke_action::fricke_residual(&p, &om).is_zero() {
            bail!("row {:?}: the listed point is not on the cubic", self.id);
        }
        Ok(close_exact(&p, &om, POINT_CAP)?)
    }
}

/// Canonical keys of the embedded golden rows, keyed by row id.
pub fn golden_keys() -> Result<Vec<(usize, CanonicalKey)>> {
    GOLDEN
        .iter()
        .map(|row| {
            let orb = OrbitRow::from_golden(row)?.close()?;
            Ok((row.id, canonical_key(&orb.points, &orb.omega)))
        })
        .collect()
}

/// First point of the key whose coordinates are all `2cos(pi r)`.
fn representative(key: &CanonicalKey) -> Result<Representative> {
    key.points
        .iter()
        .find_map(|p| {
            let a = [p.0[0].as_angle()?, p.0[1].as_angle()?, p.0[2].as_angle()?];
            Some(Representative { rx: angle_str(a[0]), ry: angle_str(a[1]), rz: angle_str(a[2]) })
        })
        .ok_or_else(|| anyhow!("orbit without a point on the angle lattice"))
}

pub fn orbit_of_record(rec: &OrbitRecord) -> Result<ExactOrbit> {
    Ok(close_exact(&rec.points()[0], rec.omega(), POINT_CAP)?)
}

pub fn graph_stats(orb: &ExactOrbit) -> Result<GraphStats> {
    Ok(stats(&build_graph(orb)?))
}

/// Table rows of a search report, numbered by the matching golden row.
pub fn search_rows(report: &SearchReport) -> Result<Vec<OrbitRow>> {
    let golden = golden_keys()?;
    report
        .orbits
        .iter()
        .map(|rec| {
            let key = &rec.key;
            let id = golden.iter().find(|(_, k)| k == key).map(|(id, _)| *id);
            let d = (&CosSum::from_int(4) - &key.omega.w4).canonical();
            let orb = orbit_of_record(rec)?;
            Ok(OrbitRow {
                id,
                size: rec.size(),
                omega: key.omega.w.each_ref().map(|v| v.to_string()),
                omega_float: Some(key.omega.w.each_ref().map(CosSum::float)),
                omega4_minus: d.to_string(),
                representative: representative(key)?,
                class: Some(rec.class),
                graph: Some(graph_stats(&orb)?),
            })
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchMeta {
    pub verified: bool,
    pub orbit_count: usize,
    pub counters: Vec<fricke_core::orbit_search::ClassCounter>,
    pub expected_counts: [u64; 4],
    pub family_hits: BTreeMap<String, usize>,
    pub discrepancies: Vec<String>,
}

#[derive(Serialize)]
pub struct SearchTable {
    pub meta: SearchMeta,
    pub orbits: Vec<OrbitRow>,
}

pub fn search_table(report: &SearchReport, verified: bool) -> Result<SearchTable> {
    Ok(SearchTable {
        meta: SearchMeta {
            verified,
            orbit_count: report.orbits.len(),
            counters: report.counters.clone(),
            expected_counts: fricke_core::orbit_search::expected_class_counts(),
            family_hits: report.family_hits.iter().map(|(k, v)| (k.name().to_string(), *v)).collect(),
            discrepancies: report.discrepancies.clone(),
        },
        orbits: search_rows(report)?,
    })
}

pub fn rows_csv(rows: &[OrbitRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "id", "size", "class", "omega_x", "omega_y", "omega_z", "omega4_minus", "rX", "rY", "rZ", "loops_x",
        "loops_y", "loops_z", "bad_points", "lambda_orbits", "cycles",
    ])?;
    for r in rows {
        let g = r.graph.as_ref();
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([
            opt(r.id),
            r.size.to_string(),
            r.class.map(|c| c.to_string()).unwrap_or_default(),
            r.omega[0].clone(),
            r.omega[1].clone(),
            r.omega[2].clone(),
            r.omega4_minus.clone(),
            r.representative.rx.clone(),
            r.representative.ry.clone(),
            r.representative.rz.clone(),
            opt(g.map(|g| g.self_loops.x)),
            opt(g.map(|g| g.self_loops.y)),
            opt(g.map(|g| g.self_loops.z)),
            opt(g.map(|g| g.bad_points)),
            opt(g.map(|g| g.lambda_orbits)),
            opt(g.map(|g| g.cycles)),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub matched: usize,
    pub expected: usize,
    pub found: usize,
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.matched == self.expected && self.found == self.expected
    }
}

/// Compares golden rows with found orbit keys, up to the 24 coordinate symmetries.
pub fn verify_rows(golden: &[OrbitRow], found: &[CanonicalKey]) -> Result<VerifyReport> {
    let mut used = vec![false; found.len()];
    let mut mismatches = Vec::new();
    let mut matched = 0;
    for (n, row) in golden.iter().enumerate() {
        let label = row.id.map_or_else(|| format!("#{}", n + 1), |id| format!("row {id}"));
        let orb = match row.close() {
            Ok(o) => o,
            Err(e) => {
                mismatches.push(format!("{label}: {e}"));
                continue;
            }
        };
        if orb.len() != row.size {
            mismatches.push(format!("{label}: listed size {} but the orbit has {} points", row.size, orb.len()));
            continue;
        }
        let key = canonical_key(&orb.points, &orb.omega);
        match found.iter().enumerate().position(|(i, k)| !used[i] && *k == key) {
            Some(i) => {
                used[i] = true;
                matched += 1;
            }
            None => mismatches.push(format!("{label}: no matching orbit in the search results")),
        }
    }
    for (i, k) in found.iter().enumerate() {
        if !used[i] {
            mismatches.push(format!("found orbit of size {} has no golden row", k.size()));
        }
    }
    Ok(VerifyReport { matched, expected: golden.len(), found: found.len(), mismatches })
}

pub fn embedded_golden_rows() -> Result<Vec<OrbitRow>> {
    GOLDEN.iter().map(OrbitRow::from_golden).collect()
}

/// Reads rows from a golden file: a JSON array of rows or a search table.
pub fn read_rows(text: &str) -> Result<Vec<OrbitRow>> {
    #[derive(Deserialize)]
    struct Table {
        orbits: Vec<OrbitRow>,
    }
    if let Ok(rows) = serde_json::from_str::<Vec<OrbitRow>>(text) {
        return Ok(rows);
    }
    let t: Table = serde_json::from_str(text).context("expected a JSON array of rows or an object with `orbits`")?;
    Ok(t.orbits)
}

/// Node label: the angle triple where coordinates are `2cos(pi r)`, values otherwise.
pub fn point_label(p: &Point3) -> String {
    let c: Vec<String> = p
        .0
        .iter()
        .map(|v| v.as_angle().map_or_else(|| v.simplified().to_string(), angle_str))
        .collect();
    format!("({})", c.join(", "))
}

pub fn orbit_dot(orb: &ExactOrbit, name: &str) -> Result<String> {
    let g = build_graph(orb)?;
    let labels: Vec<String> = orb.points.iter().map(point_label).collect();
    Ok(export_dot(&g, name, &labels))
}
