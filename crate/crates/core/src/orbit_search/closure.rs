//! Float closure of a seed point, accepting new good coordinates only from
//! the dictionary and new bad points only when they are fixed by the other
//! two generators.

use super::dictionary::Dictionary;

pub(crate) const UNKNOWN: u32 = u32::MAX;
/// Coordinate marker for a bad coordinate outside the dictionary.
pub(crate) const OFF_DICT: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloatOutcome {
    Finite,
    NoFiniteOrbit,
    CapExceeded,
}

/// Reusable workspace; one per worker.
pub(crate) struct FloatClosure {
    n: usize,
    slot: Vec<u32>,
    touched: Vec<usize>,
    pub pts: Vec<[f64; 3]>,
    pub idx: Vec<[u16; 3]>,
    pub nb: Vec<[u32; 3]>,
    /// `(parent, generator)` for every point after the seed.
    pub origin: Vec<(u32, u8)>,
    good_cap: usize,
}

impl FloatClosure {
    pub fn new(n: usize, good_cap: usize) -> Self {
        FloatClosure {
            n,
            slot: vec![0; n * n * n],
            touched: Vec::new(),
            pts: Vec::new(),
            idx: Vec::new(),
            nb: Vec::new(),
            origin: Vec::new(),
            good_cap,
        }
    }

    fn key(&self, i: [u16; 3]) -> usize {
        (i[0] as usize * self.n + i[1] as usize) * self.n + i[2] as usize
    }

    fn reset(&mut self) {
        for &k in &self.touched {
            self.slot[k] = 0;
        }
        self.touched.clear();
        self.pts.clear();
        self.idx.clear();
        self.nb.clear();
        self.origin.clear();
    }

    fn push(&mut self, p: [f64; 3], i: [u16; 3], origin: (u32, u8)) -> u32 {
        let id = self.pts.len() as u32;
        if !i.contains(&OFF_DICT) {
            let k = self.key(i);
            self.slot[k] = id + 1;
            self.touched.push(k);
        }
        self.pts.push(p);
        self.idx.push(i);
        self.nb.push([UNKNOWN; 3]);
        if id > 0 {
            self.origin.push(origin);
        }
        id
    }

    pub fn close(&mut self, dict: &Dictionary, eps: f64, seed: [u8; 3], w: [f64; 3]) -> FloatOutcome {
        self.reset();
        let seed_idx = seed.map(u16::from);
        let seed_pt = seed.map(|i| dict.floats[i as usize]);
        self.push(seed_pt, seed_idx, (0, 0));
        let mut good = 1usize;
        let mut bad = 0usize;
        let mut i = 0usize;
        while i < self.pts.len() {
            for g in 0..3 {
                if self.nb[i][g] != UNKNOWN {
                    continue;
                }
                let (j, k) = ((g + 1) % 3, (g + 2) % 3);
                let p = self.pts[i];
                let v = w[g] - p[g] - p[j] * p[k];
                if let Some(d) = dict.lookup(v, eps) {
                    let mut ni = self.idx[i];
                    ni[g] = d as u16;
                    let s = self.slot[self.key(ni)];
                    if s != 0 {
                        let q = (s - 1) as usize;
                        let back = self.nb[q][g];
                        if back != UNKNOWN && back as usize != i {
                            return FloatOutcome::NoFiniteOrbit;
                        }
                        self.nb[i][g] = q as u32;
                        self.nb[q][g] = i as u32;
                    } else {
                        good += 1;
                        if good > self.good_cap {
                            return FloatOutcome::CapExceeded;
                        }
                        let mut np = p;
                        np[g] = dict.floats[d];
                        let q = self.push(np, ni, (i as u32, g as u8));
                        self.nb[i][g] = q;
                        self.nb[q as usize][g] = i as u32;
                    }
                } else {
                    // the new point must be fixed by the two other generators
                    let fixed_j = (2.0 * p[j] + v * p[k] - w[j]).abs() <= eps;
                    let fixed_k = (2.0 * p[k] + v * p[j] - w[k]).abs() <= eps;
                    if !(fixed_j && fixed_k) {
                        return FloatOutcome::NoFiniteOrbit;
                    }
                    bad += 1;
                    if bad > self.good_cap + 2 {
                        return FloatOutcome::CapExceeded;
                    }
                    let mut np = p;
                    np[g] = v;
                    let mut ni = self.idx[i];
                    ni[g] = OFF_DICT;
                    let q = self.push(np, ni, (i as u32, g as u8));
                    self.nb[i][g] = q;
                    let mut links = [q; 3];
                    links[g] = i as u32;
                    self.nb[q as usize] = links;
                }
            }
            i += 1;
        }
        FloatOutcome::Finite
    }
}
