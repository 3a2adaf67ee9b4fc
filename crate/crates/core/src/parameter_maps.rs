//! Local exponents `theta` and the parameters `omega` they induce, the cubic
//! satisfied by `sum p^2`, and the Backlund transformations acting on both.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::fricke_action::Omega;
use crate::trig_field::{CosSum, RationalAngle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("cannot parse theta tuple {0:?}")]
    Parse(String),
    #[error("unknown transformation {0:?}")]
    UnknownName(String),
}

/// `(theta_x, theta_y, theta_z, theta_inf)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta(pub [Rational64; 4]);

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl Theta {
    pub fn new(tx: Rational64, ty: Rational64, tz: Rational64, tinf: Rational64) -> Self {
        Theta([tx, ty, tz, tinf])
    }

    pub fn from_pairs(v: [(i64, i64); 4]) -> Self {
        Theta(v.map(|(n, d)| q(n, d)))
    }

    pub fn delta(&self) -> Rational64 {
        self.0.iter().copied().sum::<Rational64>() / 2
    }

    /// `p_nu = 2cos(pi theta_nu)`.
    pub fn p(&self) -> [CosSum; 4] {
        self.0.map(|t| CosSum::two_cos(RationalAngle::from_ratio(t)))
    }

    /// Every entry reduced into `[0, 2)`; `p` is unchanged.
    pub fn normalized(&self) -> Theta {
        let two = Rational64::from_integer(2);
        Theta(self.0.map(|t| t - (t / two).floor() * two))
    }

    pub fn max_denom(&self) -> i64 {
        self.0.iter().map(|t| *t.denom()).max().unwrap()
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Theta {
    type Err = ParamError;

    /// `a,b,c,d` with optional parentheses; entries are integers or `n/d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParamError::Parse(s.to_string());
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<Rational64> = inner
            .split(',')
            .map(|x| x.trim().parse::<Rational64>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let arr: [Rational64; 4] = parts.try_into().map_err(|_| err())?;
        Ok(Theta(arr))
    }
}

fn p_omega(p: &[CosSum; 4]) -> Omega {
    let [px, py, pz, pi] = p;
    let w = [&(px * pi) + &(py * pz), &(py * pi) + &(pz * px), &(pz * pi) + &(px * py)];
    let mut w4 = &(&(&(px * px) + &(py * py)) + &(pz * pz)) + &(pi * pi);
    w4 = &w4 + &(&(&(px * py) * pz) * pi);
    Omega::new(w, w4)
}

pub fn omega_from_theta(t: &Theta) -> Omega {
    p_omega(&t.p())
}

/// `(a, b, c)` of `xi^3 - a xi^2 + b xi - c`.
pub fn xi_cubic(om: &Omega) -> [CosSum; 3] {
    let [wx, wy, wz] = &om.w;
    let w4 = &om.w4;
    let (x2, y2, z2) = (wx * wx, wy * wy, wz * wz);
    let sq = &(&x2 + &y2) + &z2;
    let four = CosSum::from_int(4);
    let a = w4 + &CosSum::from_int(16);
    let b = &(&(&(wx * wy) * wz) - &(&four * &sq)) + &(&CosSum::from_int(32) * w4);
    let c = &(&(&(&x2 * &y2) + &(&x2 * &z2)) + &(&y2 * &z2)) - &(&(&four * w4) * &sq);
    let c = &c + &(&(&CosSum::from_int(16) * w4) * w4);
    [a, b, c]
}

/// Value of the cubic at `xi`.
pub fn xi_eval(om: &Omega, xi: &CosSum) -> CosSum {
    let [a, b, c] = xi_cubic(om);
    let xi2 = xi * xi;
    &(&(&(&xi2 * xi) - &(&a * &xi2)) + &(&b * xi)) - &c
}

/// `[xi_0, xi_+, xi_-]`: `sum p^2` and `8(1 + prod cos pi theta +- prod sin pi theta)`.
pub fn xi_roots(t: &Theta) -> [CosSum; 3] {
    let p = t.p();
    let xi0 = p.iter().fold(CosSum::zero(), |acc, v| &acc + &(v * v));
    let half = Rational64::new(1, 2);
    let two_sin = t.0.map(|th| CosSum::two_cos(RationalAngle::from_ratio(half - th)));
    let prod = |v: &[CosSum; 4]| v.iter().fold(CosSum::from_int(1), |acc, x| &acc * x);
    // 8 prod cos = prod(2cos)/2.
    let half_q = num_rational::BigRational::new(1.into(), 2.into());
    let c = prod(&p).scale(&half_q);
    let s = prod(&two_sin).scale(&half_q);
    let base = &CosSum::from_int(8) + &c;
    [xi0, &base + &s, &base - &s]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BtName {
    Sx,
    Sy,
    Sz,
    Sinf,
    Sdelta,
    Rx,
    Ry,
    Rz,
    Pxy,
    Pyz,
}

impl BtName {
    pub const ALL: [BtName; 10] = [
        BtName::Sx,
        BtName::Sy,
        BtName::Sz,
        BtName::Sinf,
        BtName::Sdelta,
        BtName::Rx,
        BtName::Ry,
        BtName::Rz,
        BtName::Pxy,
        BtName::Pyz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BtName::Sx => "s_x",
            BtName::Sy => "s_y",
            BtName::Sz => "s_z",
            BtName::Sinf => "s_inf",
            BtName::Sdelta => "s_delta",
            BtName::Rx => "r_x",
            BtName::Ry => "r_y",
            BtName::Rz => "r_z",
            BtName::Pxy => "P_xy",
            BtName::Pyz => "P_yz",
        }
    }
}

impl FromStr for BtName {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace(['_', '-'], "");
        BtName::ALL
            .into_iter()
            .find(|b| b.name().to_ascii_lowercase().replace('_', "") == key)
            .ok_or_else(|| ParamError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for BtName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn apply_bt(b: BtName, t: &Theta) -> Theta {
    let [x, y, z, i] = t.0;
    let one = Rational64::one();
    match b {
        BtName::Sx => Theta([-x, y, z, i]),
        BtName::Sy => Theta([x, -y, z, i]),
        BtName::Sz => Theta([x, y, -z, i]),
        BtName::Sinf => Theta([x, y, z, Rational64::from_integer(2) - i]),
        BtName::Sdelta => {
            let d = t.delta();
            Theta([x - d, y - d, z - d, i - d])
        }
        BtName::Rx => Theta([i - one, z, y, x + one]),
        BtName::Ry => Theta([z, i - one, x, y + one]),
        BtName::Rz => Theta([y, x, i - one, z + one]),
        BtName::Pxy => Theta([y, x, z, i]),
        BtName::Pyz => Theta([x, z, y, i]),
    }
}

/// Action on `(omega_X, omega_Y, omega_Z)`; `omega_4` never changes.
pub fn apply_bt_omega(b: BtName, om: &Omega) -> Omega {
    let [x, y, z] = om.w.clone();
    let w = match b {
        BtName::Sx | BtName::Sy | BtName::Sz | BtName::Sinf | BtName::Sdelta => [x, y, z],
        BtName::Rx => [x, -y, -z],
        BtName::Ry => [-x, y, -z],
        BtName::Rz => [-x, -y, z],
        BtName::Pxy => [y, x, z],
        BtName::Pyz => [x, z, y],
    };
    Omega::new(w, om.w4.clone())
}

/// Applies `word` as a composition: the last entry acts first.
pub fn apply_word(word: &[BtName], t: &Theta) -> Theta {
    word.iter().rev().fold(*t, |acc, &b| apply_bt(b, &acc))
}

/// Which of the four exponents a shift moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nu {
    X,
    Y,
    Z,
    Inf,
}

/// `t_nu = s_nu s_delta (s_a s_b s_c s_delta)^2` with `{a, b, c}` the other three.
pub fn shift_word(nu: Nu) -> Vec<BtName> {
    use BtName::*;
    let (head, rest) = match nu {
        Nu::X => (Sx, [Sy, Sz, Sinf]),
        Nu::Y => (Sy, [Sx, Sz, Sinf]),
        Nu::Z => (Sz, [Sx, Sy, Sinf]),
        Nu::Inf => (Sinf, [Sx, Sy, Sz]),
    };
    let mut w = vec![head, Sdelta];
    for _ in 0..2 {
        w.extend_from_slice(&rest);
        w.push(Sdelta);
    }
    w
}

pub fn shift_operator(nu: Nu, t: &Theta) -> Theta {
    apply_word(&shift_word(nu), t)
}

/// Exponents `a/b` in `[0, 1]` with `b <= den_bound`, sorted by `2cos(pi a/b)`.
fn p_table(den_bound: i64) -> Vec<(f64, Rational64)> {
    let mut v = Vec::new();
    for b in 1..=den_bound {
        for a in 0..=b {
            if a.gcd(&b) == 1 {
                let r = q(a, b);
                v.push((RationalAngle::from_ratio(r).two_cos(), r));
            }
        }
    }
    v.sort_by(|x, y| x.0.total_cmp(&y.0));
    v
}

fn lookup(table: &[(f64, Rational64)], v: f64, eps: f64) -> impl Iterator<Item = Rational64> + '_ {
    let start = table.partition_point(|e| e.0 < v - eps);
    table[start..].iter().take_while(move |e| e.0 <= v + eps).map(|e| e.1)
}

/// `theta` and `2 - theta`, the exponents in `[0, 2)` with the same `p`.
fn lifts(r: Rational64) -> Vec<Rational64> {
    let two = Rational64::from_integer(2);
    if r.is_zero() || r == Rational64::one() {
        vec![r]
    } else {
        vec![r, two - r]
    }
}

/// All `theta` in `[0, 2)^4` with denominators at most `den_bound` inducing
/// exactly the parameters `om`; sorted.
pub fn theta_candidates_for_omega(om: &Omega, den_bound: i64) -> Vec<Theta> {
    const EPS: f64 = 1e-7;
    let table = p_table(den_bound);
    let [wx, wy, wz] = [om.w[0].float(), om.w[1].float(), om.w[2].float()];
    let w4 = om.w4.float();
    let mut base: Vec<[Rational64; 4]> = Vec::new();
    let mut check = |px: f64, py: f64, pz: f64, pi: f64, rs: [Rational64; 4]| {
        let fx = px * pi + py * pz;
        let f4 = px * px + py * py + pz * pz + pi * pi + px * py * pz * pi;
        if (fx - wx).abs() < 1e-6 && (f4 - w4).abs() < 1e-6 {
            base.push(rs);
        }
    };
    for &(px, rx) in &table {
        for &(pi, ri) in &table {
            let det = pi * pi - px * px;
            if det.abs() > 1e-9 {
                // [[pi, px], [px, pi]] (py, pz) = (wY, wZ)
                let py = (wy * pi - wz * px) / det;
                let pz = (wz * pi - wy * px) / det;
                for ry in lookup(&table, py, EPS) {
                    for rz in lookup(&table, pz, EPS) {
                        check(px, py, pz, pi, [rx, ry, rz, ri]);
                    }
                }
                continue;
            }
            for &(py, ry) in &table {
                let solved = if px.abs() > 1e-9 {
                    Some((wy - py * pi) / px)
                } else if pi.abs() > 1e-9 {
                    Some((wz - px * py) / pi)
                } else {
                    None
                };
                match solved {
                    Some(pz) => {
                        for rz in lookup(&table, pz, EPS) {
                            let pzv = RationalAngle::from_ratio(rz).two_cos();
                            if (pzv * pi + px * py - wz).abs() < 1e-6 && (py * pi + pzv * px - wy).abs() < 1e-6 {
                                check(px, py, pzv, pi, [rx, ry, rz, ri]);
                            }
                        }
                    }
                    None => {
                        for &(pz, rz) in &table {
                            if (wy.abs() < 1e-9) && (wz.abs() < 1e-9) {
                                check(px, py, pz, pi, [rx, ry, rz, ri]);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for rs in base {
        let t = Theta(rs);
        if !omega_from_theta(&t).exact_eq(om) {
            continue;
        }
        for a in lifts(rs[0]) {
            for b in lifts(rs[1]) {
                for c in lifts(rs[2]) {
                    for d in lifts(rs[3]) {
                        out.push(Theta([a, b, c, d]));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The eight `p`-level images that keep `omega` fixed: a global sign times
/// one of the four double transpositions of `(x, y, z, inf)`.
fn p_patterns(p: &[CosSum; 4]) -> Vec<[CosSum; 4]> {
    const PERMS: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let mut out = Vec::new();
    for perm in PERMS {
        let img: [CosSum; 4] = perm.map(|i| p[i].clone());
        out.push(img.clone().map(|v| -v));
        out.push(img);
    }
    out
}

fn p_eq(a: &[CosSum; 4], b: &[CosSum; 4]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x.float() - y.float()).abs() < 1e-9)
        && a.iter().zip(b).all(|(x, y)| x.exact_eq(y))
}

/// `b` is reached from `a` by the affine `D4` group, decided at the level of `p`:
/// `p(b)` is one of the eight patterns of `p(a)`, `p(s_delta a)` or `p(s_delta s_x a)`.
pub fn d4_equivalent(a: &Theta, b: &Theta) -> bool {
    let target = b.p();
    let bases = [*a, apply_bt(BtName::Sdelta, a), apply_word(&[BtName::Sdelta, BtName::Sx], a)];
    bases.iter().any(|t| p_patterns(&t.p()).iter().any(|img| p_eq(img, &target)))
}

/// Shortest word in `r_x, r_y, r_z, P_xy, P_yz` carrying `from` to `to` on the
/// `omega` level.
pub fn omega_word(from: &Omega, to: &Omega) -> Option<Vec<BtName>> {
    const GENS: [BtName; 5] = [BtName::Rx, BtName::Ry, BtName::Rz, BtName::Pxy, BtName::Pyz];
    let key = |om: &Omega| om.w.iter().map(|v| format!("{:.9}", v.float())).collect::<Vec<_>>().join(",");
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(from));
    queue.push_back((from.clone(), Vec::new()));
    while let Some((om, word)) = queue.pop_front() {
        if om.exact_eq(to) {
            return Some(word);
        }
        for g in GENS {
            let next = apply_bt_omega(g, &om);
            if seen.insert(key(&next)) {
                // `g` acts after `word`, so it goes in front.
                let mut w = vec![g];
                w.extend_from_slice(&word);
                queue.push_back((next, w));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(v: [(i64, i64); 4]) -> Theta {
        Theta::from_pairs(v)
    }

    #[test]
    fn klein_exponents() {
        let om = omega_from_theta(&th([(2, 7), (2, 7), (2, 7), (4, 7)]));
        for w in &om.w {
            assert!(w.exact_eq(&CosSum::from_int(1)));
        }
        assert!(om.w4.exact_eq(&CosSum::from_int(4)));
    }

    #[test]
    fn cayley_exponents() {
        let om = omega_from_theta(&th([(0, 1), (0, 1), (0, 1), (1, 1)]));
        assert!(om.is_cayley());
        let [a, b, c] = xi_cubic(&om);
        assert!(a.exact_eq(&CosSum::from_int(16)) && b.is_zero() && c.is_zero());
        assert!(xi_roots(&th([(0, 1), (0, 1), (0, 1), (1, 1)]))[0].exact_eq(&CosSum::from_int(16)));
    }

    #[test]
    fn xi_roots_solve_cubic() {
        let t = th([(2, 7), (2, 7), (2, 7), (4, 7)]);
        let om = omega_from_theta(&t);
        for r in xi_roots(&t) {
            assert!(xi_eval(&om, &r).is_zero());
        }
    }

    #[test]
    fn s_delta_is_involution() {
        let t = th([(1, 2), (1, 3), (1, 5), (1, 7)]);
        assert_eq!(apply_bt(BtName::Sdelta, &apply_bt(BtName::Sdelta, &t)), t);
        assert_eq!(apply_bt(BtName::Sdelta, &t).delta(), -t.delta());
    }

    #[test]
    fn shifts_translate() {
        let t = th([(1, 2), (1, 3), (1, 5), (1, 7)]);
        assert_eq!(shift_operator(Nu::Inf, &t), th([(1, 2), (1, 3), (1, 5), (15, 7)]));
        assert_eq!(shift_operator(Nu::X, &th([(0, 1); 4])), th([(2, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(shift_operator(Nu::Y, &t), th([(1, 2), (7, 3), (1, 5), (1, 7)]));
        assert_eq!(shift_operator(Nu::Z, &t), th([(1, 2), (1, 3), (11, 5), (1, 7)]));
    }

    #[test]
    fn bt_names_parse() {
        for b in BtName::ALL {
            assert_eq!(b.name().parse::<BtName>().unwrap(), b);
        }
        assert_eq!("sdelta".parse::<BtName>().unwrap(), BtName::Sdelta);
        assert!("s_w".parse::<BtName>().is_err());
    }

    #[test]
    fn theta_parse() {
        let t: Theta = "(1/2, 1/3,0,-4/5)".parse().unwrap();
        assert_eq!(t, th([(1, 2), (1, 3), (0, 1), (-4, 5)]));
        assert_eq!(t.normalized().0[3], q(6, 5));
        assert!("1,2,3".parse::<Theta>().is_err());
    }

    #[test]
    fn candidates_contain_klein() {
        let t = th([(2, 7), (2, 7), (2, 7), (4, 7)]);
        let cands = theta_candidates_for_omega(&omega_from_theta(&t), 30);
        assert!(cands.contains(&t));
        for c in &cands {
            assert!(d4_equivalent(&t, c), "{c}");
        }
    }

    #[test]
    fn r_x_on_omega_matches_theta() {
        let t = th([(1, 5), (2, 5), (1, 3), (3, 7)]);
        for b in BtName::ALL {
            let lhs = omega_from_theta(&apply_bt(b, &t));
            let rhs = apply_bt_omega(b, &omega_from_theta(&t));
            assert!(lhs.exact_eq(&rhs), "{b}");
        }
    }
}
