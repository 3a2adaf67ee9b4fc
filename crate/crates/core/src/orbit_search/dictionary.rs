//! Sets of admissible good coordinates `2cos(pi*n/N)`, `gcd(n, N) = 1`, `0 < n < N`.

use num_integer::Integer;

use crate::trig_field::{CosSum, RationalAngle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DictKind {
    /// `1 < N <= 10`.
    S1,
    /// `S1` plus odd `n` for `N = 11, 15, 21`.
    S2,
    /// `1 < N <= 15`.
    S3,
    /// `S3` plus `N = 21`.
    S4,
}

impl DictKind {
    pub const ALL: [DictKind; 4] = [DictKind::S1, DictKind::S2, DictKind::S3, DictKind::S4];

    pub fn name(self) -> &'static str {
        ["S1", "S2", "S3", "S4"][self as usize]
    }

    fn admits(self, n: i64, den: i64) -> bool {
        match self {
            DictKind::S1 => den <= 10,
            DictKind::S2 => den <= 10 || ([11, 15, 21].contains(&den) && n % 2 == 1),
            DictKind::S3 => den <= 15,
            DictKind::S4 => den <= 15 || den == 21,
        }
    }
}

/// Dictionary entries sorted by increasing value.
#[derive(Clone, Debug)]
pub struct Dictionary {
    pub kind: DictKind,
    pub angles: Vec<RationalAngle>,
    pub floats: Vec<f64>,
}

impl Dictionary {
    pub fn new(kind: DictKind) -> Self {
        let mut angles = Vec::new();
        for den in 2..=21i64 {
            for n in 1..den {
                if n.gcd(&den) == 1 && kind.admits(n, den) {
                    angles.push(RationalAngle::new(n, den).expect("nonzero denominator"));
                }
            }
        }
        // larger angle, smaller cosine
        angles.sort_by(|a, b| b.cmp(a));
        let floats = angles.iter().map(|a| a.two_cos()).collect();
        Dictionary { kind, angles, floats }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn value(&self, i: usize) -> CosSum {
        CosSum::two_cos(self.angles[i])
    }

    pub fn values(&self) -> Vec<CosSum> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Index of the entry within `eps` of `v`.
    pub fn lookup(&self, v: f64, eps: f64) -> Option<usize> {
        let i = self.floats.partition_point(|&x| x < v - eps);
        (i < self.floats.len() && (self.floats[i] - v).abs() <= eps).then_some(i)
    }

    pub fn position(&self, a: RationalAngle) -> Option<usize> {
        self.angles.iter().position(|&b| b == a)
    }

    /// Index of `-value(i)`. Only `S2` is not closed under negation.
    pub fn mirror(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    /// Index of the entry `0`.
    pub fn zero_index(&self) -> usize {
        self.len() / 2
    }

    pub fn min_gap(&self) -> f64 {
        self.floats
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn build_dictionaries() -> [Dictionary; 4] {
    DictKind::ALL.map(Dictionary::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_gaps() {
        let d = build_dictionaries();
        let sizes: Vec<usize> = d.iter().map(Dictionary::len).collect();
        assert_eq!(sizes, vec![31, 46, 71, 83]);
        for dict in &d {
            assert!(dict.min_gap() > 1e-3);
            assert_eq!(dict.floats[dict.zero_index()], 2.0 * (std::f64::consts::PI / 2.0).cos());
            if dict.kind == DictKind::S2 {
                continue;
            }
            for i in 0..dict.len() {
                assert_eq!(dict.angles[dict.mirror(i)].ratio(), num_rational::Rational64::from_integer(1) - dict.angles[i].ratio());
            }
        }
    }

    #[test]
    fn lookup_hits_and_misses() {
        let s4 = Dictionary::new(DictKind::S4);
        let i = s4.lookup(0.618_033_988_749_895, 1e-8).unwrap();
        assert_eq!(s4.angles[i], RationalAngle::new(2, 5).unwrap());
        assert_eq!(s4.lookup(2.0, 1e-8), None);
        assert_eq!(s4.lookup(0.5, 1e-8), None);
    }
}
