//! The three involutions `x, y, z` on points of `C^3` for fixed parameters,
//! the cubic they preserve, and the 24 coordinate symmetries.

use std::cmp::Ordering;
use std::fmt;

use crate::trig_field::CosSum;

/// Good-point cap used by the orbit search; suborbit walks stop at twice this.
pub const GOOD_POINT_CAP: usize = 71 * 71 * 2;
pub const POINT_CAP: usize = 2 * GOOD_POINT_CAP + 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("suborbit walk exceeded {0} steps")]
    Diverges(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::X, Generator::Y, Generator::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Generator {
        Self::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self as usize]
    }
}

#[derive(Clone, Debug)]
pub struct Point3(pub [CosSum; 3]);

impl Point3 {
    pub fn new(x: CosSum, y: CosSum, z: CosSum) -> Self {
        Point3([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3([CosSum::from_int(x), CosSum::from_int(y), CosSum::from_int(z)])
    }

    pub fn floats(&self) -> [f64; 3] {
        [self.0[0].float(), self.0[1].float(), self.0[2].float()]
    }

    pub fn exact_eq(&self, other: &Point3) -> bool {
        (0..3).all(|i| self.0[i].exact_eq(&other.0[i]))
    }

    pub fn cmp_exact(&self, other: &Point3) -> Ordering {
        for i in 0..3 {
            match self.0[i].cmp_exact(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn canonical(&self) -> Point3 {
        Point3([self.0[0].canonical(), self.0[1].canonical(), self.0[2].canonical()])
    }

    pub fn compact(&self) -> Point3 {
        Point3([compact(&self.0[0]), compact(&self.0[1]), compact(&self.0[2])])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Parameters `(omega_X, omega_Y, omega_Z)` and `omega_4`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub w: [CosSum; 3],
    pub w4: CosSum,
}

impl Omega {
    pub fn new(w: [CosSum; 3], w4: CosSum) -> Self {
        Omega { w, w4 }
    }

    pub fn exact_eq(&self, other: &Omega) -> bool {
        (0..3).all(|i| self.w[i].exact_eq(&other.w[i])) && self.w4.exact_eq(&other.w4)
    }

    pub fn canonical(&self) -> Omega {
        Omega {
            w: [self.w[0].canonical(), self.w[1].canonical(), self.w[2].canonical()],
            w4: self.w4.canonical(),
        }
    }

    /// All four parameters vanish: the surface is the Cayley cubic.
    pub fn is_cayley(&self) -> bool {
        self.w.iter().all(CosSum::is_zero) && self.w4.is_zero()
    }
}

fn compact(v: &CosSum) -> CosSum {
    if v.num_terms() <= 6 {
        return v.clone();
    }
    let r = v.to_cyclotomic(v.level()).real_to_cos_sum();
    if r.num_terms() < v.num_terms() {
        r
    } else {
        v.clone()
    }
}

/// `g(p)`: replaces coordinate `i` by `w_i - p_i - p_j * p_k`.
pub fn apply(g: Generator, p: &Point3, w: &[CosSum; 3]) -> Point3 {
    let i = g.index();
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let mut out = p.clone();
    out.0[i] = &(&w[i] - &p.0[i]) - &(&p.0[j] * &p.0[k]);
    out
}

fn cubic_part(p: &Point3, w: &[CosSum; 3]) -> CosSum {
    let [x, y, z] = &p.0;
    let mut s = &(x * y) * z;
    for (c, wc) in p.0.iter().zip(w.iter()) {
        s = &s + &(c * c);
        s = &s - &(wc * c);
    }
    s
}

/// `XYZ + X^2 + Y^2 + Z^2 - wX X - wY Y - wZ Z + w4 - 4`.
pub fn fricke_residual(p: &Point3, om: &Omega) -> CosSum {
    &(&cubic_part(p, &om.w) + &om.w4) - &CosSum::from_int(4)
}

/// The `omega_4` that puts `p` on the cubic.
pub fn omega4_of(p: &Point3, w: &[CosSum; 3]) -> CosSum {
    &CosSum::from_int(4) - &cubic_part(p, w)
}

/// Coordinate permutation composed with an even sign change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EquivTransform {
    /// Output coordinate `i` is input coordinate `perm[i]` ...
    pub perm: [usize; 3],
    /// ... multiplied by `signs[i]`.
    pub signs: [i8; 3],
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
const SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]];

impl EquivTransform {
    pub const IDENTITY: EquivTransform = EquivTransform { perm: [0, 1, 2], signs: [1, 1, 1] };

    /// The 24 transforms in a fixed order, identity first.
    pub fn all() -> Vec<EquivTransform> {
        PERMS
            .iter()
            .flat_map(|&perm| SIGNS.iter().map(move |&signs| EquivTransform { perm, signs }))
            .collect()
    }

    fn map<T: Clone>(&self, v: &[T; 3], neg: impl Fn(&T) -> T) -> [T; 3] {
        std::array::from_fn(|i| {
            let x = &v[self.perm[i]];
            if self.signs[i] < 0 {
                neg(x)
            } else {
                x.clone()
            }
        })
    }

    pub fn apply_point(&self, p: &Point3) -> Point3 {
        Point3(self.map(&p.0, |c| -c))
    }

    pub fn apply_omega(&self, om: &Omega) -> Omega {
        Omega { w: self.map(&om.w, |c| -c), w4: om.w4.clone() }
    }

    pub fn apply_floats(&self, v: &[f64; 3]) -> [f64; 3] {
        self.map(v, |c| -c)
    }

    /// Where generator `g` goes: the transform conjugates `g` to this one.
    pub fn apply_generator(&self, g: Generator) -> Generator {
        let i = self.perm.iter().position(|&p| p == g.index()).unwrap();
        Generator::from_index(i)
    }
}

/// Lexicographically smallest image of an orbit under the 24 transforms.
#[derive(Clone, Debug)]
pub struct CanonicalKey {
    pub omega: Omega,
    pub points: Vec<Point3>,
    pub transform: EquivTransform,
}

impl CanonicalKey {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn cmp_exact(&self, other: &CanonicalKey) -> Ordering {
        self.omega
            .w4
            .cmp_exact(&other.omega.w4)
            .then_with(|| cmp_triple(&self.omega.w, &other.omega.w))
            .then_with(|| self.points.len().cmp(&other.points.len()))
            .then_with(|| cmp_points(&self.points, &other.points))
    }
}

impl PartialEq for CanonicalKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for CanonicalKey {}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

fn cmp_triple(a: &[CosSum; 3], b: &[CosSum; 3]) -> Ordering {
    for i in 0..3 {
        match a[i].cmp_exact(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn cmp_points(a: &[Point3], b: &[Point3]) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        match p.cmp_exact(q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Canonical key of a point set with its parameters.
pub fn canonical_key(points: &[Point3], om: &Omega) -> CanonicalKey {
    let om = om.canonical();
    let pts: Vec<Point3> = points.iter().map(Point3::canonical).collect();
    let mut best: Option<CanonicalKey> = None;
    for t in EquivTransform::all() {
        let mut image: Vec<Point3> = pts.iter().map(|p| t.apply_point(p)).collect();
        image.sort_by(Point3::cmp_exact);
        let cand = CanonicalKey { omega: t.apply_omega(&om), points: image, transform: t };
        if best.as_ref().is_none_or(|b| cand.cmp_exact(b) == Ordering::Less) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuborbitShape {
    Cycle,
    Line,
}

/// Points reached from a start point by alternating two generators.
#[derive(Clone, Debug)]
pub struct Suborbit {
    pub colors: (Generator, Generator),
    pub shape: SuborbitShape,
    /// `w_0 = p`, `w_1 = first(w_0)`, `w_2 = second(w_1)`, ... up to the return
    /// to `p`; always `2N` entries, repeated points on lines.
    pub walk: Vec<Point3>,
    /// Period of `second o first`.
    pub n: usize,
}

impl Suborbit {
    /// `(second o first)^k (p)` for `k = 0..N`.
    pub fn iterates(&self) -> impl Iterator<Item = &Point3> {
        self.walk.iter().step_by(2)
    }

    pub fn distinct_len(&self) -> usize {
        match self.shape {
            SuborbitShape::Cycle => 2 * self.n,
            SuborbitShape::Line => self.n,
        }
    }
}

/// Walks the suborbit of `p` generated by `first` and `second`.
pub fn suborbit(p: &Point3, om: &Omega, first: Generator, second: Generator) -> Result<Suborbit, ActionError> {
    suborbit_capped(p, om, first, second, 2 * POINT_CAP)
}

/// [`suborbit`] with an explicit bound on the walk length.
pub fn suborbit_capped(
    p: &Point3,
    om: &Omega,
    first: Generator,
    second: Generator,
    limit: usize,
) -> Result<Suborbit, ActionError> {
    assert_ne!(first, second);
    let mut walk = vec![p.clone()];
    let mut loops = false;
    let mut cur = p.clone();
    loop {
        if walk.len() > limit {
            return Err(ActionError::Diverges(limit));
        }
        let g = if walk.len() % 2 == 1 { first } else { second };
        let next = apply(g, &cur, &om.w).compact();
        if next.exact_eq(&cur) {
            loops = true;
        }
        if walk.len() % 2 == 0 && next.exact_eq(p) {
            // `next` would be w_{2N}; the last step ended on `p`.
            break;
        }
        walk.push(next.clone());
        cur = next;
    }
    let n = walk.len() / 2;
    let shape = if loops { SuborbitShape::Line } else { SuborbitShape::Cycle };
    Ok(Suborbit { colors: (first, second), shape, walk, n })
}

/// Suborbit for the pair `y`, `z` (`k -> k+1` is `z o y`).
pub fn yz_suborbit(p: &Point3, om: &Omega) -> Result<Suborbit, ActionError> {
    suborbit(p, om, Generator::Y, Generator::Z)
}

/// Generator fixing every point of a suborbit with the given colors.
pub fn third_generator(a: Generator, b: Generator) -> Generator {
    Generator::from_index(3 - a.index() - b.index())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("fixed coordinate is not 2cos of a rational multiple of pi")]
    NotAnAngle,
    #[error("angle denominator {den} differs from the period {n}")]
    WrongPeriod { den: i64, n: usize },
    #[error("half-period identity fails at k = {0}")]
    Parity(usize),
    #[error("closed form fails at k = {0}")]
    ClosedForm(usize),
}

/// Checks a suborbit of period `N > 1` against the explicit solution of the
/// linear recursion `(Y_k, Z_k) -> (Y_{k+1}, Z_{k+1})`: the fixed coordinate is
/// `2cos(pi n/N)` with `gcd(n, N) = 1`, the float closed form holds, and the
/// half-period sum identities hold exactly (`p+- = (wY +- wZ)/(2 +- X)`):
/// `N` even: `Y_k + Y_{k+N/2} = p+ + p-`, `Z_k + Z_{k+N/2} = p+ - p-`;
/// `N, n` odd: `Y_k - Z_{k+(N-1)/2} = p-`; `N` odd, `n` even: `Y_k + Z_{k+(N-1)/2} = p+`.
/// Here `Y` is the coordinate moved by the first color. A point fixed by both
/// colors (`N = 1`) carries no condition.
pub fn check_suborbit_identities(s: &Suborbit, om: &Omega) -> Result<(), IdentityError> {
    if s.n == 1 {
        return Ok(());
    }
    let (gy, gz) = s.colors;
    let (ix, iy, iz) = (third_generator(gy, gz).index(), gy.index(), gz.index());
    let n = s.n;
    let pts: Vec<&Point3> = s.iterates().collect();
    let x = &pts[0].0[ix];
    let angle = x.as_angle().ok_or(IdentityError::NotAnAngle)?;
    if angle.denom() as usize != n {
        return Err(IdentityError::WrongPeriod { den: angle.denom(), n });
    }
    let nx = angle.numer();
    let (wy, wz) = (&om.w[iy], &om.w[iz]);

    let lam = 2.0 * std::f64::consts::PI * nx as f64 / n as f64;
    let xf = x.float();
    let (wyf, wzf) = (wy.float(), wz.float());
    let cy = (2.0 * wyf - xf * wzf) / (4.0 - xf * xf);
    let cz = (2.0 * wzf - xf * wyf) / (4.0 - xf * xf);
    let (alpha, beta) = (pts[0].0[iy].float() - cy, pts[0].0[iz].float() - cz);
    let sh = (lam / 2.0).sin();
    for (k, p) in pts.iter().enumerate() {
        let kf = k as f64;
        let yk = ((1.0 - 2.0 * kf) * lam / 2.0).sin() * alpha - (kf * lam).sin() * beta;
        let zk = (kf * lam).sin() * alpha + ((1.0 + 2.0 * kf) * lam / 2.0).sin() * beta;
        let tol = 1e-7 * (1.0 + alpha.abs() + beta.abs());
        if (yk / sh + cy - p.0[iy].float()).abs() > tol || (zk / sh + cz - p.0[iz].float()).abs() > tol {
            return Err(IdentityError::ClosedForm(k));
        }
    }

    let two = CosSum::from_int(2);
    let div = |a: CosSum, b: CosSum| a.checked_div(&b).map_err(|_| IdentityError::NotAnAngle);
    let pp = div(wy + wz, &two + x)?;
    let pm = div(wy - wz, &two - x)?;
    let yk = |k: usize| &pts[k % n].0[iy];
    let zk = |k: usize| &pts[k % n].0[iz];
    for k in 0..n {
        let ok = if n.is_multiple_of(2) {
            (yk(k) + yk(k + n / 2)).exact_eq(&(&pp + &pm)) && (zk(k) + zk(k + n / 2)).exact_eq(&(&pp - &pm))
        } else if nx % 2 == 0 {
            (yk(k) + zk(k + (n - 1) / 2)).exact_eq(&pp)
        } else {
            (yk(k) - zk(k + (n - 1) / 2)).exact_eq(&pm)
        };
        if !ok {
            return Err(IdentityError::Parity(k));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> (Vec<Point3>, Omega) {
        let pts = vec![
            Point3::from_ints(-1, 1, 1),
            Point3::from_ints(0, 1, 1),
            Point3::from_ints(0, 1, 0),
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(0, 0, 1),
        ];
        let w = [CosSum::from_int(0), CosSum::from_int(1), CosSum::from_int(1)];
        let w4 = omega4_of(&pts[0], &w);
        (pts, Omega::new(w, w4))
    }

    #[test]
    fn example_suborbit_identities() {
        let (pts, om) = example1();
        let s = yz_suborbit(&pts[1], &om).unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(s.shape, SuborbitShape::Cycle);
        check_suborbit_identities(&s, &om).unwrap();
        let fixed = yz_suborbit(&pts[0], &om).unwrap();
        assert_eq!(fixed.n, 1);
        check_suborbit_identities(&fixed, &om).unwrap();
        // a wrong parameter breaks the exact identity
        let bad = Omega::new([CosSum::from_int(0), CosSum::from_int(1), CosSum::from_int(3)], om.w4.clone());
        assert!(check_suborbit_identities(&s, &bad).is_err());
    }

    #[test]
    fn example_point_moves() {
        let (pts, om) = example1();
        let img = apply(Generator::X, &pts[0], &om.w);
        assert!(img.exact_eq(&pts[1]));
        for p in &pts {
            assert!(fricke_residual(p, &om).is_zero());
        }
        assert!(om.w4.exact_eq(&CosSum::from_int(4)));
    }

    #[test]
    fn omega4_examples() {
        let w = [CosSum::from_int(1), CosSum::from_int(1), CosSum::from_int(1)];
        assert!(omega4_of(&Point3::from_ints(1, 1, 1), &w).exact_eq(&CosSum::from_int(3)));
        let g = CosSum::two_cos_of(1, 5).unwrap();
        let p = Point3::new(g, CosSum::zero(), CosSum::zero());
        assert!(omega4_of(&p, &w).exact_eq(&CosSum::from_int(3)));
    }

    #[test]
    fn yz_cycle_and_lines() {
        let (pts, om) = example1();
        let s = yz_suborbit(&pts[1], &om).unwrap();
        assert_eq!(s.shape, SuborbitShape::Cycle);
        assert_eq!(s.n, 2);
        assert_eq!(s.distinct_len(), 4);
        let s = yz_suborbit(&pts[0], &om).unwrap();
        assert_eq!((s.shape, s.n), (SuborbitShape::Line, 1));
        let s = suborbit(&pts[0], &om, Generator::X, Generator::Z).unwrap();
        assert_eq!((s.shape, s.n), (SuborbitShape::Line, 3));
        let s = suborbit(&pts[2], &om, Generator::X, Generator::Y).unwrap();
        assert_eq!((s.shape, s.n), (SuborbitShape::Line, 2));
    }

    #[test]
    fn diverging_walk_is_reported() {
        let om = Omega::new([CosSum::zero(), CosSum::zero(), CosSum::zero()], CosSum::zero());
        // X = 3 is hyperbolic: the yz-walk never returns.
        let p = Point3::from_ints(3, 0, 3);
        let r = suborbit_capped(&p, &om, Generator::Y, Generator::Z, 200);
        assert_eq!(r.unwrap_err(), ActionError::Diverges(200));
    }

    #[test]
    fn transforms_commute_with_action() {
        let (pts, om) = example1();
        for t in EquivTransform::all() {
            let tom = t.apply_omega(&om);
            for p in &pts {
                for g in Generator::ALL {
                    let lhs = t.apply_point(&apply(g, p, &om.w));
                    let rhs = apply(t.apply_generator(g), &t.apply_point(p), &tom.w);
                    assert!(lhs.exact_eq(&rhs));
                }
            }
        }
        assert_eq!(EquivTransform::all().len(), 24);
    }

    #[test]
    fn canonical_key_is_transform_invariant() {
        let (pts, om) = example1();
        let k0 = canonical_key(&pts, &om);
        for t in EquivTransform::all() {
            let img: Vec<Point3> = pts.iter().map(|p| t.apply_point(p)).collect();
            assert_eq!(canonical_key(&img, &t.apply_omega(&om)), k0);
        }
    }
}
