//! Rational solutions of `sum_j cos(2 pi phi_j) = 0` and of
//! `sum_j exp(2 pi i phi_j) = 0` for at most six terms.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::trig_field::{CosSum, RationalAngle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosineError {
    #[error("{candidates} candidate tuples exceed the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("tuple length {0} is outside 2..=6")]
    BadLength(usize),
}

/// Which denominators are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenSpec {
    AtMost(i64),
    DivisorsOf(i64),
}

impl DenSpec {
    pub fn admits(self, d: i64) -> bool {
        match self {
            DenSpec::AtMost(b) => d <= b,
            DenSpec::DivisorsOf(m) => m % d == 0,
        }
    }

    fn max(self) -> i64 {
        match self {
            DenSpec::AtMost(b) | DenSpec::DivisorsOf(b) => b,
        }
    }

    /// Reduced fractions in `[lo, hi]` with admitted denominators, sorted.
    fn fractions(self, lo: Rational64, hi: Rational64) -> Vec<Rational64> {
        let mut v = BTreeSet::new();
        for d in (1..=self.max()).filter(|&d| self.admits(d)) {
            for a in 0..=2 * d {
                let r = Rational64::new(a, d);
                if r >= lo && r <= hi && *r.denom() == d {
                    v.insert(r);
                }
            }
        }
        v.into_iter().collect()
    }
}

/// Default cap on the number of candidate tuples scanned.
pub const DEFAULT_BUDGET: u128 = 200_000_000;

fn cos2pi(phi: Rational64) -> f64 {
    (2.0 * std::f64::consts::PI * (*phi.numer() as f64) / (*phi.denom() as f64)).cos()
}

/// `2cos(2 pi phi)` in the cosine ring.
fn two_cos2pi(phi: Rational64) -> CosSum {
    CosSum::two_cos(RationalAngle::from_ratio(phi * 2))
}

fn exact_cos_sum(phis: &[Rational64]) -> CosSum {
    phis.iter().fold(CosSum::zero(), |acc, &p| &acc + &two_cos2pi(p))
}

/// `sum cos(2 pi phi_j) == 0`, decided exactly.
pub fn is_vanishing(phis: &[Rational64]) -> bool {
    let f: f64 = phis.iter().map(|&p| cos2pi(p)).sum();
    f.abs() < 1e-9 && exact_cos_sum(phis).is_zero()
}

fn subsets_vanish(phis: &[Rational64], vanish: impl Fn(&[Rational64]) -> bool) -> bool {
    let n = phis.len();
    (1..(1u32 << n) - 1).any(|mask| {
        let sub: Vec<Rational64> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| phis[i]).collect();
        vanish(&sub)
    })
}

/// Vanishing with no vanishing proper nonempty subset.
pub fn is_irreducible(phis: &[Rational64]) -> bool {
    is_vanishing(phis) && !subsets_vanish(phis, is_vanishing)
}

fn fold_unit(phi: Rational64) -> Rational64 {
    phi - phi.floor()
}

fn fold_half(phi: Rational64) -> Rational64 {
    let f = fold_unit(phi);
    f.min(Rational64::one() - f)
}

fn sorted_folded(phis: impl Iterator<Item = Rational64>) -> Vec<Rational64> {
    let mut v: Vec<Rational64> = phis.map(fold_half).collect();
    v.sort();
    v
}

/// Representative under permutations, `phi -> 1 - phi`, integer shifts and
/// the simultaneous change `phi -> 1/2 - phi`.
pub fn canonicalize(phis: &[Rational64]) -> Vec<Rational64> {
    let half = Rational64::new(1, 2);
    let a = sorted_folded(phis.iter().copied());
    let b = sorted_folded(phis.iter().map(|&p| half - p));
    a.min(b)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `(phi, 1/2 - phi)`.
    IIPhi(Rational64),
    /// `(phi, phi + 1/3, phi - 1/3)`.
    IIIPhi(Rational64),
    III1,
    IV,
    V1,
    V2(i64),
    V3,
    /// `(phi, phi + k/5)`, `k = 1..4`.
    VPhi(Rational64),
    VI1,
    VI2(i64),
    VI3(i64),
    VI4(i64),
    VI5,
    /// `(phi +- 1/6, phi + k/5)`, `k = 1..4`.
    VIPhi(Rational64),
    Other,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::IIPhi(_) => "II_phi",
            Family::IIIPhi(_) => "III_phi",
            Family::III1 => "III_1",
            Family::IV => "IV",
            Family::V1 => "V_1",
            Family::V2(_) => "V_2",
            Family::V3 => "V_3",
            Family::VPhi(_) => "V_phi",
            Family::VI1 => "VI_1",
            Family::VI2(_) => "VI_2",
            Family::VI3(_) => "VI_3",
            Family::VI4(_) => "VI_4",
            Family::VI5 => "VI_5",
            Family::VIPhi(_) => "VI_phi",
            Family::Other => "other",
        }
    }

    /// Free parameter: `phi` for the infinite families, `L` for the `L`-indexed ones.
    pub fn parameter(&self) -> Option<String> {
        match self {
            Family::IIPhi(p) | Family::IIIPhi(p) | Family::VPhi(p) | Family::VIPhi(p) => Some(p.to_string()),
            Family::V2(l) | Family::VI2(l) | Family::VI3(l) | Family::VI4(l) => Some(l.to_string()),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({})", self.tag(), p),
            None => f.write_str(self.tag()),
        }
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn offsets_family(offsets: &[Rational64], phi: Rational64) -> Vec<Rational64> {
    offsets.iter().map(|&c| phi + c).collect()
}

fn sporadic() -> Vec<(Family, Vec<Rational64>)> {
    let mut out = vec![
        (Family::III1, vec![r(1, 10), r(3, 10), r(1, 3)]),
        (Family::IV, vec![r(0, 1), r(1, 5), r(1, 3), r(2, 5)]),
        (Family::IV, vec![r(1, 30), r(1, 6), r(11, 30), r(2, 5)]),
        (Family::IV, vec![r(1, 15), r(4, 15), r(3, 10), r(1, 3)]),
        (Family::IV, vec![r(1, 7), r(2, 7), r(3, 7), r(1, 6)]),
        (Family::V1, vec![r(0, 1), r(1, 30), r(1, 3), r(11, 30), r(2, 5)]),
        (Family::V1, vec![r(0, 1), r(1, 5), r(7, 30), r(1, 3), r(13, 30)]),
        (Family::V3, vec![r(1, 7), r(2, 7), r(3, 7), r(0, 1), r(1, 3)]),
        (Family::V3, vec![r(1, 7), r(2, 7), r(3, 7), r(1, 10), r(3, 10)]),
        (Family::VI1, vec![r(1, 11), r(2, 11), r(3, 11), r(4, 11), r(5, 11), r(1, 6)]),
        (Family::VI5, vec![r(1, 7), r(2, 7), r(3, 7), r(0, 1), r(1, 5), r(2, 5)]),
        (Family::VI5, vec![r(1, 7), r(2, 7), r(3, 7), r(1, 15), r(4, 15), r(3, 10)]),
        (Family::VI5, vec![r(1, 7), r(2, 7), r(3, 7), r(1, 10), r(2, 15), r(7, 15)]),
    ];
    for l in 1..=3 {
        let s = r(l, 7);
        let core = [s + r(1, 6), s - r(1, 6), s * 2, s * 3];
        let mut v2 = core.to_vec();
        v2.push(r(1, 6));
        out.push((Family::V2(l), v2));
        let mut vi2 = core.to_vec();
        vi2.extend([r(0, 1), r(1, 3)]);
        out.push((Family::VI2(l), vi2));
        let mut vi3 = core.to_vec();
        vi3.extend([r(1, 10), r(3, 10)]);
        out.push((Family::VI3(l), vi3));
        out.push((
            Family::VI4(l),
            vec![s + r(1, 6), s - r(1, 6), s * 2 + r(1, 6), s * 2 - r(1, 6), s * 3, r(1, 6)],
        ));
    }
    out
}

type FamilyCtor = fn(Rational64) -> Family;

fn parametric() -> Vec<(FamilyCtor, Vec<Rational64>)> {
    vec![
        (Family::IIPhi as FamilyCtor, vec![r(0, 1), r(1, 2)]),
        (Family::IIIPhi, vec![r(0, 1), r(1, 3), r(-1, 3)]),
        (Family::VPhi, vec![r(0, 1), r(1, 5), r(2, 5), r(3, 5), r(4, 5)]),
        (Family::VIPhi, vec![r(1, 6), r(-1, 6), r(1, 5), r(2, 5), r(3, 5), r(4, 5)]),
    ]
}

/// Family of a canonical irreducible tuple. In `II_phi` the second entry is
/// `phi + 1/2`, the `1/2 - phi` form after `phi -> -phi`.
pub fn family_tag(t: &[Rational64]) -> Family {
    let t = canonicalize(t);
    for (fam, tuple) in sporadic() {
        if tuple.len() == t.len() && canonicalize(&tuple) == t {
            return fam;
        }
    }
    let half = r(1, 2);
    for (ctor, offsets) in parametric() {
        if offsets.len() != t.len() {
            continue;
        }
        let mut phis = BTreeSet::new();
        for &e in &t {
            for base in [e, -e, half - e, e - half] {
                for &c in &offsets {
                    phis.insert(fold_unit(base - c));
                }
            }
        }
        if let Some(&phi) = phis.iter().find(|&&phi| canonicalize(&offsets_family(&offsets, phi)) == t) {
            return ctor(phi);
        }
    }
    Family::Other
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PhiTuple {
    pub phis: Vec<Rational64>,
    pub family: Family,
}

#[derive(Serialize)]
struct PhiTupleJson {
    n: usize,
    phis: Vec<String>,
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    parameter: Option<String>,
}

impl Serialize for PhiTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PhiTupleJson {
            n: self.phis.len(),
            phis: self.phis.iter().map(|p| format!("{}/{}", p.numer(), p.denom())).collect(),
            family: self.family.tag(),
            parameter: self.family.parameter(),
        }
        .serialize(s)
    }
}

fn multiset_count(k: usize, n: usize) -> u128 {
    // C(k + n - 1, n)
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (k as u128 + i) / (i + 1);
    }
    c
}

/// Calls `f` on every nondecreasing index sequence of length `len` into
/// `0..k`, skipping subtrees where `prune` returns true.
fn for_each_multiset(k: usize, len: usize, prune: &dyn Fn(&[usize]) -> bool, f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, len: usize, cur: &mut Vec<usize>, prune: &dyn Fn(&[usize]) -> bool, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for i in start..k {
            cur.push(i);
            if !prune(cur) {
                go(k, len, cur, prune, f);
            }
            cur.pop();
        }
    }
    go(k, len, &mut Vec::with_capacity(len), prune, f);
}

/// All canonical irreducible vanishing `n`-tuples of cosines with admitted
/// denominators, sorted.
pub fn enumerate(n: usize, dens: DenSpec, budget: u128) -> Result<Vec<PhiTuple>, CosineError> {
    if !(2..=6).contains(&n) {
        return Err(CosineError::BadLength(n));
    }
    let vals = dens.fractions(Rational64::zero(), r(1, 2));
    let cosv: Vec<f64> = vals.iter().map(|&p| cos2pi(p)).collect();
    let candidates = multiset_count(vals.len(), n - 1);
    if candidates > budget {
        return Err(CosineError::BudgetExceeded { candidates, budget });
    }
    // `cosv` is decreasing; later entries never exceed the current one.
    let prune = |idx: &[usize]| {
        let s: f64 = idx.iter().map(|&i| cosv[i]).sum();
        let rest = (n - idx.len()) as f64;
        s + rest * cosv[*idx.last().unwrap()] < -1e-9 || s - rest > 1e-9
    };
    let mut found = BTreeSet::new();
    for_each_multiset(vals.len(), n - 1, &prune, &mut |idx| {
        let s: f64 = idx.iter().map(|&i| cosv[i]).sum();
        let last = *idx.last().unwrap();
        // Entries `j >= last` with `cosv[j] = -s`.
        let lo = last + cosv[last..].partition_point(|&c| c > -s + 1e-9);
        for j in lo..vals.len() {
            if cosv[j] < -s - 1e-9 {
                break;
            }
            let mut t: Vec<Rational64> = idx.iter().map(|&i| vals[i]).collect();
            t.push(vals[j]);
            if is_irreducible(&t) {
                found.insert(canonicalize(&t));
            }
        }
    });
    Ok(found.into_iter().map(|t| PhiTuple { family: family_tag(&t), phis: t }).collect())
}

fn exp_vanishing(phis: &[Rational64]) -> bool {
    let (mut re, mut im) = (0.0, 0.0);
    for &p in phis {
        let a = 2.0 * std::f64::consts::PI * (*p.numer() as f64) / (*p.denom() as f64);
        re += a.cos();
        im += a.sin();
    }
    if re.abs() > 1e-9 || im.abs() > 1e-9 {
        return false;
    }
    let quarter = r(1, 4);
    exact_cos_sum(phis).is_zero() && exact_cos_sum(&phis.iter().map(|&p| p - quarter).collect::<Vec<_>>()).is_zero()
}

/// Sorted representative in `[0, 1)` up to rotation, with one entry `0`.
pub fn canonicalize_unity(phis: &[Rational64]) -> Vec<Rational64> {
    phis.iter()
        .map(|&s| {
            let mut v: Vec<Rational64> = phis.iter().map(|&p| fold_unit(p - s)).collect();
            v.sort();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Irreducible vanishing sums of `n` roots of unity up to rotation and
/// permutation, with the differences' denominators admitted; sorted.
pub fn enumerate_unity_sums(n: usize, dens: DenSpec, budget: u128) -> Result<Vec<Vec<Rational64>>, CosineError> {
    if !(2..=6).contains(&n) {
        return Err(CosineError::BadLength(n));
    }
    let vals: Vec<Rational64> = dens.fractions(Rational64::zero(), Rational64::one()).into_iter().filter(|v| *v < Rational64::one()).collect();
    let candidates = multiset_count(vals.len(), n - 1);
    if candidates > budget {
        return Err(CosineError::BudgetExceeded { candidates, budget });
    }
    let (cs, sn): (Vec<f64>, Vec<f64>) = vals
        .iter()
        .map(|&p| {
            let a = 2.0 * std::f64::consts::PI * (*p.numer() as f64) / (*p.denom() as f64);
            (a.cos(), a.sin())
        })
        .unzip();
    let mut found = BTreeSet::new();
    let never = |_: &[usize]| false;
    // The first entry is rotated to 0; the rest form a multiset.
    for_each_multiset(vals.len(), n - 1, &never, &mut |idx| {
        let re: f64 = 1.0 + idx.iter().map(|&i| cs[i]).sum::<f64>();
        let im: f64 = idx.iter().map(|&i| sn[i]).sum();
        if re.abs() > 1e-9 || im.abs() > 1e-9 {
            return;
        }
        let mut t = vec![Rational64::zero()];
        t.extend(idx.iter().map(|&i| vals[i]));
        if exp_vanishing(&t) && !subsets_vanish(&t, exp_vanishing) {
            found.insert(canonicalize_unity(&t));
        }
    });
    Ok(found.into_iter().collect())
}

/// Least common multiple of the denominators.
pub fn common_denominator(phis: &[Rational64]) -> i64 {
    phis.iter().fold(1, |acc, p| acc.lcm(p.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[(i64, i64)]) -> Vec<Rational64> {
        v.iter().map(|&(a, b)| r(a, b)).collect()
    }

    #[test]
    fn vanishing_examples() {
        assert!(is_vanishing(&t(&[(0, 1), (1, 5), (1, 3), (2, 5)])));
        assert!(is_vanishing(&t(&[(1, 10), (3, 10), (1, 3)])));
        assert!(!is_vanishing(&t(&[(1, 7), (1, 7), (1, 7)])));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&t(&[(0, 1), (1, 5), (1, 3), (2, 5)])));
        assert!(!is_irreducible(&t(&[(1, 8), (3, 8), (1, 12), (5, 12)])));
        assert!(is_irreducible(&t(&[(0, 1), (1, 3), (1, 3)])));
    }

    #[test]
    fn canonical_forms() {
        // the half-turn image (1/10, 1/10, 3/10) is smaller than (1/5, 2/5, 2/5)
        assert_eq!(canonicalize(&t(&[(4, 5), (3, 5), (3, 5)])), t(&[(1, 10), (1, 10), (3, 10)]));
        let a = canonicalize(&t(&[(1, 10), (3, 10), (1, 3)]));
        assert_eq!(a, canonicalize(&t(&[(2, 5), (1, 5), (1, 6)])));
        assert_eq!(a, t(&[(1, 10), (3, 10), (1, 3)]));
    }

    #[test]
    fn tags() {
        assert_eq!(family_tag(&t(&[(1, 8), (3, 8)])), Family::IIPhi(r(1, 8)));
        assert_eq!(family_tag(&t(&[(1, 10), (3, 10), (1, 3)])), Family::III1);
        assert_eq!(family_tag(&t(&[(0, 1), (1, 30), (1, 3), (11, 30), (2, 5)])), Family::V1);
        assert_eq!(family_tag(&t(&[(0, 1), (1, 3), (1, 3)])).tag(), "III_phi");
    }

    #[test]
    fn small_enumerations() {
        let pairs = enumerate(2, DenSpec::DivisorsOf(12), DEFAULT_BUDGET).unwrap();
        assert!(pairs.iter().all(|p| p.family.tag() == "II_phi"));
        let units = enumerate_unity_sums(3, DenSpec::DivisorsOf(12), DEFAULT_BUDGET).unwrap();
        assert_eq!(units, vec![t(&[(0, 1), (1, 3), (2, 3)])]);
    }

    #[test]
    fn budget_is_enforced() {
        let e = enumerate(6, DenSpec::AtMost(60), 1000).unwrap_err();
        assert!(matches!(e, CosineError::BudgetExceeded { budget: 1000, .. }));
    }
}
