//! Driver: enumerate the four configuration classes, close each seed in
//! floats, then rebuild and verify the distinct finite orbits exactly.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::fricke_action::{
    apply, canonical_key, fricke_residual, omega4_of, CanonicalKey, EquivTransform, Generator, Omega, Point3,
    GOOD_POINT_CAP,
};
use crate::trig_field::CosSum;

use super::closure::{FloatClosure, FloatOutcome, OFF_DICT};
use super::config::GenConfig;
use super::dictionary::{build_dictionaries, DictKind, Dictionary};
use super::special::{classify_special, classify_special_floats, SpecialType};
use super::SearchError;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    pub eps: f64,
    pub exact_verify: bool,
    pub classes: Vec<u8>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: None, eps: 1e-8, exact_verify: true, classes: vec![1, 2, 3, 4] }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCounter {
    pub class: u8,
    /// Configurations produced by the class enumerator.
    pub enumerated: u64,
    /// Dropped by the class filter before closing.
    pub filtered: u64,
    /// All four parameters vanish; skipped.
    pub cayley: u64,
    pub closures: u64,
    pub finite: u64,
    pub cap_exceeded: u64,
}

impl ClassCounter {
    fn merge(&mut self, o: &ClassCounter) {
        self.enumerated += o.enumerated;
        self.filtered += o.filtered;
        self.cayley += o.cayley;
        self.closures += o.closures;
        self.finite += o.finite;
        self.cap_exceeded += o.cap_exceeded;
    }
}

/// A finite orbit found by the search, in canonical form.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub key: CanonicalKey,
    /// Class of the first configuration that produced it.
    pub class: u8,
    pub config: GenConfig,
    pub verified: bool,
}

impl OrbitRecord {
    pub fn size(&self) -> usize {
        self.key.size()
    }

    pub fn omega(&self) -> &Omega {
        &self.key.omega
    }

    pub fn points(&self) -> &[Point3] {
        &self.key.points
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    /// Exceptional orbits sorted by `(size, key)`.
    pub orbits: Vec<OrbitRecord>,
    /// Distinct orbits of the four small families met on the way.
    pub family_hits: BTreeMap<SpecialType, usize>,
    pub counters: Vec<ClassCounter>,
    pub discrepancies: Vec<String>,
}

impl SearchReport {
    pub fn cap_exceeded(&self) -> u64 {
        self.counters.iter().map(|c| c.cap_exceeded).sum()
    }
}

/// Dictionaries plus index maps used by the enumerators.
pub struct SearchTables {
    pub dicts: [Dictionary; 4],
    /// `S1` entries as `S4` indices, increasing.
    s1: Vec<u8>,
    in_s1: Vec<bool>,
}

impl Default for SearchTables {
    fn default() -> Self {
        Self::new()
    }
}

impl SearchTables {
    pub fn new() -> Self {
        let dicts = build_dictionaries();
        let s4 = &dicts[3];
        let s1: Vec<u8> = dicts[0]
            .angles
            .iter()
            .map(|&a| s4.position(a).expect("S1 is inside S4") as u8)
            .collect();
        let mut in_s1 = vec![false; s4.len()];
        for &i in &s1 {
            in_s1[i as usize] = true;
        }
        SearchTables { dicts, s1, in_s1 }
    }

    pub fn s4(&self) -> &Dictionary {
        &self.dicts[3]
    }

    pub fn dict(&self, kind: DictKind) -> &Dictionary {
        &self.dicts[kind as usize]
    }

    /// Outer loop items of a class; the inner loops run in [`Self::for_each_config`].
    fn outer_items(&self, class: u8) -> Vec<[u8; 4]> {
        let n4 = self.s4().len();
        let z4 = self.s4().zero_index();
        let n1 = self.s1.len();
        let z1 = n1 / 2;
        let mut out = Vec::new();
        match class {
            1 => {
                let up: Vec<u8> = self.s1[z1..].to_vec();
                let down: Vec<u8> = self.s1[..=z1].iter().rev().copied().collect();
                for (branch, list) in [(0u8, &up), (1u8, &down)] {
                    for a in 0..list.len() {
                        for b in a..list.len() {
                            for c in b..list.len() {
                                out.push([branch, list[a], list[b], list[c]]);
                            }
                        }
                    }
                }
            }
            2 => {
                for z in z4 + 1..n4 {
                    for y in z4..=z {
                        out.push([0, 0, y as u8, z as u8]);
                    }
                }
            }
            3 => {
                for z in z1..n1 {
                    for y in 0..n1 {
                        if y.max(n1 - 1 - y) <= z {
                            out.push([0, 0, self.s1[y], self.s1[z]]);
                        }
                    }
                }
            }
            4 => {
                for x in 0..n4 {
                    for y in x..n4 {
                        for z in y..n4 {
                            out.push([0, x as u8, y as u8, z as u8]);
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    fn for_each_config(&self, class: u8, item: [u8; 4], mut f: impl FnMut(GenConfig)) {
        let n4 = self.s4().len() as u8;
        let [branch, x, y, z] = item;
        match class {
            1 => {
                let zero = self.s4().zero_index() as u8;
                for &xp in &self.s1 {
                    for &yp in &self.s1 {
                        for &zp in &self.s1 {
                            // the all-zero configuration already came up in the first branch
                            if branch == 1 && [x, y, z, xp, yp, zp].iter().all(|&v| v == zero) {
                                continue;
                            }
                            f(GenConfig::Class1 { x, y, z, xp, yp, zp });
                        }
                    }
                }
            }
            2 => {
                for x in 0..n4 {
                    for yp in 0..n4 {
                        f(GenConfig::Class2 { x, y, z, yp });
                    }
                }
            }
            3 => {
                for x in 0..n4 {
                    for xp in 0..n4 {
                        for &yp in &self.s1 {
                            f(GenConfig::Class3 { x, xp, y, yp, z });
                        }
                    }
                }
            }
            4 => {
                for xp in 0..n4 {
                    f(GenConfig::Class4 { x, xp, y, z });
                }
            }
            _ => {}
        }
    }

    /// Class-specific filter applied before closing.
    fn admits(&self, cfg: &GenConfig, w: &[f64; 3], eps: f64) -> bool {
        match *cfg {
            GenConfig::Class3 { x, y, z, .. } => {
                let f = &self.s4().floats;
                let zp = w[2] - f[z as usize] - f[x as usize] * f[y as usize];
                self.s4().lookup(zp, eps).is_some_and(|i| self.in_s1[i])
            }
            _ => true,
        }
    }
}

/// Float closure result kept for exact reconstruction.
#[derive(Clone, Debug)]
struct Hit {
    config: GenConfig,
    w: [f64; 3],
    pts: Vec<[f64; 3]>,
    idx: Vec<[u16; 3]>,
    origin: Vec<(u32, u8)>,
    nb: Vec<[u32; 3]>,
}

const ROUND: f64 = 1e6;

fn round(v: f64) -> i64 {
    (v * ROUND).round() as i64
}

fn form_key(w: &[f64; 3], pts: &[[f64; 3]]) -> Vec<i64> {
    let mut rp: Vec<[i64; 3]> = pts.iter().map(|p| p.map(round)).collect();
    rp.sort_unstable();
    let mut k: Vec<i64> = w.iter().map(|&v| round(v)).collect();
    k.extend(rp.into_iter().flatten());
    k
}

fn float_canonical(w: &[f64; 3], pts: &[[f64; 3]]) -> Vec<i64> {
    EquivTransform::all()
        .iter()
        .map(|t| {
            let tw = t.apply_floats(w);
            let tp: Vec<[f64; 3]> = pts.iter().map(|p| t.apply_floats(p)).collect();
            form_key(&tw, &tp)
        })
        .min()
        .expect("24 transforms")
}

fn cubic_float(p: &[f64; 3], w: &[f64; 3]) -> f64 {
    p[0] * p[1] * p[2] + (0..3).map(|i| p[i] * p[i] - w[i] * p[i]).sum::<f64>()
}

struct OuterResult {
    counter: ClassCounter,
    hits: Vec<Hit>,
}

fn run_outer(
    tables: &SearchTables,
    class: u8,
    item: [u8; 4],
    eps: f64,
    ws: &mut FloatClosure,
) -> OuterResult {
    let mut counter = ClassCounter { class, ..Default::default() };
    let mut hits = Vec::new();
    let mut seen = HashSet::new();
    let floats = &tables.s4().floats;
    tables.for_each_config(class, item, |cfg| {
        counter.enumerated += 1;
        let w = cfg.omega_float(floats);
        if !tables.admits(&cfg, &w, eps) {
            counter.filtered += 1;
            return;
        }
        let seed = cfg.seed();
        let sp = seed.map(|i| floats[i as usize]);
        let w4 = 4.0 - cubic_float(&sp, &w);
        if w.iter().all(|v| v.abs() < 1e-9) && w4.abs() < 1e-9 {
            counter.cayley += 1;
            return;
        }
        counter.closures += 1;
        match ws.close(tables.s4(), eps, seed, w) {
            FloatOutcome::Finite => {
                counter.finite += 1;
                if seen.insert(form_key(&w, &ws.pts)) {
                    hits.push(Hit {
                        config: cfg,
                        w,
                        pts: ws.pts.clone(),
                        idx: ws.idx.clone(),
                        origin: ws.origin.clone(),
                        nb: ws.nb.clone(),
                    });
                }
            }
            FloatOutcome::CapExceeded => counter.cap_exceeded += 1,
            FloatOutcome::NoFiniteOrbit => {}
        }
    });
    OuterResult { counter, hits }
}

/// Exact points of a float closure, rebuilt along the parent links.
fn rebuild_exact(hit: &Hit, s4: &Dictionary, w: &[CosSum; 3]) -> Vec<Point3> {
    let mut pts = vec![hit.config.seed_exact(s4)];
    for (n, &(parent, g)) in hit.origin.iter().enumerate() {
        let i = n + 1;
        let g = g as usize;
        let mut p = pts[parent as usize].clone();
        let d = hit.idx[i][g];
        p.0[g] = if d == OFF_DICT {
            apply(Generator::from_index(g), &p, w).0[g].simplified()
        } else {
            s4.value(d as usize)
        };
        pts.push(p);
    }
    pts
}

fn verify_exact(hit: &Hit, pts: &[Point3], om: &Omega) -> Result<(), String> {
    for (i, p) in pts.iter().enumerate() {
        if !fricke_residual(p, om).is_zero() {
            return Err(format!("point {i} of {:?} is off the cubic", hit.config));
        }
        for g in Generator::ALL {
            let j = hit.nb[i][g.index()] as usize;
            if !apply(g, p, &om.w).exact_eq(&pts[j]) {
                return Err(format!("{}-edge {i}->{j} of {:?} fails exactly", g.name(), hit.config));
            }
        }
    }
    Ok(())
}

enum Resolved {
    Exceptional(OrbitRecord),
    Family(SpecialType),
}

fn resolve(hit: &Hit, tables: &SearchTables, exact_verify: bool) -> Result<Resolved, SearchError> {
    let s4 = tables.s4();
    let w = hit.config.omega_exact(s4)?;
    let pts = rebuild_exact(hit, s4, &w);
    let w4 = omega4_of(&pts[0], &w).simplified();
    let om = Omega::new(w, w4);
    let mut verified = false;
    if exact_verify {
        verify_exact(hit, &pts, &om).map_err(SearchError::Inconsistent)?;
        verified = true;
    }
    if let Some(t) = classify_special(&pts, &om) {
        return Ok(Resolved::Family(t));
    }
    Ok(Resolved::Exceptional(OrbitRecord {
        key: canonical_key(&pts, &om),
        class: hit.config.class(),
        config: hit.config,
        verified,
    }))
}

/// Runs every class in `opts.classes` and returns the distinct finite orbits.
pub fn full_search(opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let tables = SearchTables::new();
    full_search_with(&tables, opts)
}

pub fn full_search_with(tables: &SearchTables, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| SearchError::Inconsistent(format!("thread pool: {e}")))?;
    let n4 = tables.s4().len();

    let mut counters = Vec::new();
    let mut forms: Vec<Hit> = Vec::new();
    let mut seen_forms = HashSet::new();
    for &class in &opts.classes {
        let items = tables.outer_items(class);
        let results: Vec<OuterResult> = pool.install(|| {
            items
                .par_iter()
                .map_init(
                    || FloatClosure::new(n4, GOOD_POINT_CAP),
                    |ws, &item| run_outer(tables, class, item, opts.eps, ws),
                )
                .collect()
        });
        let mut counter = ClassCounter { class, ..Default::default() };
        for r in results {
            counter.merge(&r.counter);
            for h in r.hits {
                if seen_forms.insert(form_key(&h.w, &h.pts)) {
                    forms.push(h);
                }
            }
        }
        counters.push(counter);
    }

    // one representative per float canonical class, first in enumeration order
    let mut groups: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut reps = Vec::new();
    for (n, h) in forms.iter().enumerate() {
        if let std::collections::hash_map::Entry::Vacant(e) = groups.entry(float_canonical(&h.w, &h.pts)) {
            e.insert(n);
            reps.push(n);
        }
    }

    // the small families are recognised in floats; the exact path is slow on
    // high-level parameters and the families need no canonical key
    let mut family_hits = BTreeMap::new();
    let mut exceptional = Vec::new();
    for &n in &reps {
        let h = &forms[n];
        let w4 = cubic_float(&h.pts[0], &h.w);
        match classify_special_floats(&h.pts, &h.w, w4) {
            Some(t) => *family_hits.entry(t).or_insert(0) += 1,
            None => exceptional.push(n),
        }
    }

    let resolved: Vec<Result<Resolved, SearchError>> = pool.install(|| {
        exceptional
            .par_iter()
            .map(|&n| resolve(&forms[n], tables, opts.exact_verify))
            .collect()
    });

    let mut discrepancies = Vec::new();
    let mut orbits: BTreeMap<CanonicalKey, OrbitRecord> = BTreeMap::new();
    for r in resolved {
        match r {
            Ok(Resolved::Family(t)) => *family_hits.entry(t).or_insert(0) += 1,
            Ok(Resolved::Exceptional(rec)) => {
                orbits.entry(rec.key.clone()).or_insert(rec);
            }
            Err(SearchError::Inconsistent(msg)) => discrepancies.push(msg),
            Err(e) => return Err(e),
        }
    }
    let mut orbits: Vec<OrbitRecord> = orbits.into_values().collect();
    orbits.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.key.cmp(&b.key)));
    Ok(SearchReport { orbits, family_hits, counters, discrepancies })
}

/// Closes a single configuration: float closure, then exact rebuild and check.
pub fn close_orbit(tables: &SearchTables, cfg: &GenConfig, eps: f64) -> Result<OrbitRecord, SearchError> {
    let floats = &tables.s4().floats;
    let w = cfg.omega_float(floats);
    let mut ws = FloatClosure::new(tables.s4().len(), GOOD_POINT_CAP);
    match ws.close(tables.s4(), eps, cfg.seed(), w) {
        FloatOutcome::NoFiniteOrbit => return Err(SearchError::NoFiniteOrbit),
        FloatOutcome::CapExceeded => return Err(SearchError::CapExceeded(GOOD_POINT_CAP)),
        FloatOutcome::Finite => {}
    }
    let hit = Hit {
        config: *cfg,
        w,
        pts: ws.pts.clone(),
        idx: ws.idx.clone(),
        origin: ws.origin.clone(),
        nb: ws.nb.clone(),
    };
    let s4 = tables.s4();
    let wx = cfg.omega_exact(s4)?;
    let pts = rebuild_exact(&hit, s4, &wx);
    let w4 = omega4_of(&pts[0], &wx).simplified();
    let om = Omega::new(wx, w4);
    verify_exact(&hit, &pts, &om).map_err(SearchError::Inconsistent)?;
    Ok(OrbitRecord { key: canonical_key(&pts, &om), class: cfg.class(), config: *cfg, verified: true })
}

/// Expected enumeration sizes of the four classes.
pub fn expected_class_counts() -> [u64; 4] {
    [
        16 * 17 * 18 * 31u64.pow(3) / 3 - 1,
        41 * 22 * 83 * 83,
        16 * 16 * 31 * 83 * 83,
        83 * 83 * 84 * 85 / 6,
    ]
}
