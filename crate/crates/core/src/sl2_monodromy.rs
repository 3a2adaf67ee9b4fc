//! Triples of SL(2) matrices, the braid-type moves on them, their seven
//! trace invariants, and reconstruction of a triple from the invariants.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("parameters lie on the reducible locus (triangular triples)")]
    ReducibleLocus,
    #[error("invariants violate the cubic relation: residual {0}")]
    NotRepresentable(BigRational),
    #[error("every anchor trace is +-2")]
    NoAnchor,
    #[error("trace is not rational")]
    IrrationalTrace,
    #[error("mixed quadratic extensions")]
    MixedExtensions,
}

/// `a + b*sqrt(d)` with rational `a, b, d`; `b = 0` when `d` is a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    d: BigRational,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl QuadScalar {
    pub fn rational(a: BigRational) -> Self {
        QuadScalar { a, b: BigRational::zero(), d: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        if let Some(s) = rational_sqrt(&d) {
            return Self::rational(a + b * s);
        }
        QuadScalar { a, b, d }
    }

    /// `sqrt(d)`.
    pub fn sqrt_of(d: BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_d(&self, o: &Self) -> Result<BigRational, MonodromyError> {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, _) => Ok(o.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == o.d => Ok(self.d.clone()),
            _ => Err(MonodromyError::MixedExtensions),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.common_d(o).expect("same quadratic field");
        Self::new(&self.a + &o.a, &self.b + &o.b, d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QuadScalar { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.common_d(o).expect("same quadratic field");
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::new(a, b, d)
    }

    pub fn inv(&self) -> Self {
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!n.is_zero(), "inverse of zero");
        Self::new(&self.a / &n, -&self.b / &n, self.d.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// 2x2 matrix of determinant one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[QuadScalar; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Self::from_ints([[1, 0], [0, 1]])
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2(m.map(|r| r.map(QuadScalar::from_int)))
    }

    pub fn from_rationals(m: [[BigRational; 2]; 2]) -> Self {
        Mat2(m.map(|r| r.map(QuadScalar::rational)))
    }

    /// `[[1, s], [0, 1]]`.
    pub fn upper_shear(s: BigRational) -> Self {
        Self::from_rationals([
            [BigRational::one(), s],
            [BigRational::zero(), BigRational::one()],
        ])
    }

    /// `[[1, 0], [s, 1]]`.
    pub fn lower_shear(s: BigRational) -> Self {
        Self::from_rationals([
            [BigRational::one(), BigRational::zero()],
            [s, BigRational::one()],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| self.0[i][0].mul(&o.0[0][j]).add(&self.0[i][1].mul(&o.0[1][j]));
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        Mat2([[d.clone(), b.neg()], [c.neg(), a.clone()]])
    }

    pub fn trace(&self) -> QuadScalar {
        self.0[0][0].add(&self.0[1][1])
    }

    pub fn det(&self) -> QuadScalar {
        self.0[0][0].mul(&self.0[1][1]).sub(&self.0[0][1].mul(&self.0[1][0]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub mx: Mat2,
    pub my: Mat2,
    pub mz: Mat2,
}

impl Triple {
    pub fn new(mx: Mat2, my: Mat2, mz: Mat2) -> Self {
        Triple { mx, my, mz }
    }

    /// Each matrix is the product of alternating upper and lower shears with
    /// the given parameters.
    pub fn from_shears(params: [&[BigRational]; 3]) -> Self {
        let build = |ps: &[BigRational]| {
            ps.iter().enumerate().fold(Mat2::identity(), |m, (i, s)| {
                let f = if i % 2 == 0 { Mat2::upper_shear(s.clone()) } else { Mat2::lower_shear(s.clone()) };
                m.mul(&f)
            })
        };
        Triple::new(build(params[0]), build(params[1]), build(params[2]))
    }
}

/// `(p_x, p_y, p_z, p_inf, X, Y, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SevenTuple {
    pub px: BigRational,
    pub py: BigRational,
    pub pz: BigRational,
    pub pinf: BigRational,
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl SevenTuple {
    pub fn from_ints(v: [i64; 7]) -> Self {
        let r = |i: usize| BigRational::from_integer(BigInt::from(v[i]));
        SevenTuple { px: r(0), py: r(1), pz: r(2), pinf: r(3), x: r(4), y: r(5), z: r(6) }
    }

    /// `(omega_X, omega_Y, omega_Z, omega_4)` of the four local traces.
    pub fn omega(&self) -> [BigRational; 4] {
        let (px, py, pz, pi) = (&self.px, &self.py, &self.pz, &self.pinf);
        [
            px * pi + py * pz,
            py * pi + pz * px,
            pz * pi + px * py,
            px * px + py * py + pz * pz + pi * pi + px * py * pz * pi,
        ]
    }

    /// Value of the cubic relation; zero for invariants of an actual triple.
    pub fn residual(&self) -> BigRational {
        let [wx, wy, wz, w4] = self.omega();
        let (x, y, z) = (&self.x, &self.y, &self.z);
        x * y * z + x * x + y * y + z * z - wx * x - wy * y - wz * z + w4
            - BigRational::from_integer(BigInt::from(4))
    }

    /// The point is fixed by all three involutions.
    fn on_reducible_locus(&self) -> bool {
        let [wx, wy, wz, _] = self.omega();
        let two = BigRational::from_integer(BigInt::from(2));
        let (x, y, z) = (&self.x, &self.y, &self.z);
        wx == &two * x + y * z && wy == &two * y + x * z && wz == &two * z + x * y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidMove {
    X,
    Y,
    Z,
    S,
    T,
    R,
}

impl BraidMove {
    pub const ALL: [BraidMove; 6] = [BraidMove::X, BraidMove::Y, BraidMove::Z, BraidMove::S, BraidMove::T, BraidMove::R];
}

pub fn act(g: BraidMove, t: &Triple) -> Triple {
    let (x, y, z) = (&t.mx, &t.my, &t.mz);
    match g {
        BraidMove::X => Triple::new(x.inv(), y.inv(), x.mul(&z.inv()).mul(&x.inv())),
        BraidMove::Y => Triple::new(y.mul(&x.inv()).mul(&y.inv()), y.inv(), z.inv()),
        BraidMove::Z => Triple::new(x.inv(), z.mul(&y.inv()).mul(&z.inv()), z.inv()),
        BraidMove::S => Triple::new(z.clone(), x.clone(), y.clone()),
        BraidMove::T => Triple::new(z.clone(), y.clone(), y.mul(x).mul(&y.inv())),
        BraidMove::R => Triple::new(z.inv(), y.inv(), x.inv()),
    }
}

fn rational_trace(m: &Mat2) -> Result<BigRational, MonodromyError> {
    m.trace().as_rational().cloned().ok_or(MonodromyError::IrrationalTrace)
}

pub fn invariants(t: &Triple) -> Result<SevenTuple, MonodromyError> {
    let (x, y, z) = (&t.mx, &t.my, &t.mz);
    Ok(SevenTuple {
        px: rational_trace(x)?,
        py: rational_trace(y)?,
        pz: rational_trace(z)?,
        pinf: rational_trace(&z.mul(y).mul(x))?,
        x: rational_trace(&y.mul(z))?,
        y: rational_trace(&z.mul(x))?,
        z: rational_trace(&x.mul(y))?,
    })
}

/// `t_ab t_c + t_ac t_b + t_bc t_a - t_a t_b t_c - p_inf` with `(a, b, c) = (x, y, z)`:
/// the trace of the product in the order opposite to `p_inf`, `Tr(Mx My Mz)`.
pub fn derived_trace_tbac(s: &SevenTuple) -> BigRational {
    &s.z * &s.pz + &s.y * &s.py + &s.x * &s.px - &s.px * &s.py * &s.pz - &s.pinf
}

/// `(A, B, C)` from `Tr A, Tr B, Tr C, Tr AB, Tr AC, Tr BC, Tr ABC`, with `A`
/// diagonal; needs `Tr A != +-2`.
#[allow(clippy::too_many_arguments)]
fn from_traces(
    ta: &BigRational,
    tb: &BigRational,
    tc: &BigRational,
    tab: &BigRational,
    tac: &BigRational,
    tbc: &BigRational,
    tabc: &BigRational,
) -> Result<(Mat2, Mat2, Mat2), MonodromyError> {
    let q = |r: &BigRational| QuadScalar::rational(r.clone());
    let half = QuadScalar::rational(BigRational::new(1.into(), 2.into()));
    let four = BigRational::from_integer(BigInt::from(4));
    let sd = QuadScalar::sqrt_of(ta * ta - four);
    let lam = q(ta).add(&sd).mul(&half);
    let lam_inv = q(ta).sub(&sd).mul(&half);
    let b11 = q(tab).sub(&lam_inv.mul(&q(tb))).div(&sd);
    let b22 = q(tb).sub(&b11);
    let c11 = q(tac).sub(&lam_inv.mul(&q(tc))).div(&sd);
    let c22 = q(tc).sub(&c11);
    let one = QuadScalar::from_int(1);
    let pb = b11.mul(&b22).sub(&one);
    let pc = c11.mul(&c22).sub(&one);
    let s = q(tbc).sub(&b11.mul(&c11)).sub(&b22.mul(&c22));
    let t = q(tabc).sub(&lam.mul(&b11).mul(&c11)).sub(&lam_inv.mul(&b22).mul(&c22));
    let u = t.sub(&lam_inv.mul(&s)).div(&sd);
    let v = s.sub(&u);
    let zero = QuadScalar::from_int(0);
    let (b12, b21, c12, c21) = if !pb.is_zero() {
        (one.clone(), pb.clone(), v.div(&pb), u.clone())
    } else if !pc.is_zero() {
        (u.div(&pc), v.clone(), one.clone(), pc.clone())
    } else if !u.is_zero() {
        (one.clone(), zero.clone(), zero.clone(), u.clone())
    } else if !v.is_zero() {
        (zero.clone(), one.clone(), v.clone(), zero.clone())
    } else {
        return Err(MonodromyError::ReducibleLocus);
    };
    let a = Mat2([[lam, zero.clone()], [zero, lam_inv]]);
    let b = Mat2([[b11, b12], [b21, b22]]);
    let c = Mat2([[c11, c12], [c21, c22]]);
    Ok((a, b, c))
}

/// A triple with the given invariants, up to simultaneous conjugation.
///
/// The diagonalised anchor is `Mx`, then `My`, then `Mz`, then `Mx My`.
pub fn reconstruct(s: &SevenTuple) -> Result<Triple, MonodromyError> {
    let r = s.residual();
    if !r.is_zero() {
        return Err(MonodromyError::NotRepresentable(r));
    }
    if s.on_reducible_locus() {
        return Err(MonodromyError::ReducibleLocus);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let usable = |t: &BigRational| t.abs() != two;
    let txyz = derived_trace_tbac(s);
    let (px, py, pz) = (&s.px, &s.py, &s.pz);
    let (x, y, z) = (&s.x, &s.y, &s.z);
    let triple = if usable(px) {
        let (a, b, c) = from_traces(px, py, pz, z, y, x, &txyz)?;
        Triple::new(a, b, c)
    } else if usable(py) {
        let (a, b, c) = from_traces(py, pz, px, x, z, y, &txyz)?;
        Triple::new(c, a, b)
    } else if usable(pz) {
        let (a, b, c) = from_traces(pz, px, py, y, x, z, &txyz)?;
        Triple::new(b, c, a)
    } else if usable(z) {
        let tbc = py * pz - x;
        let (a, b, c) = from_traces(z, py, pz, px, &txyz, &tbc, y)?;
        Triple::new(a.mul(&b), b.inv(), c)
    } else {
        return Err(MonodromyError::NoAnchor);
    };
    if invariants(&triple).as_ref() != Ok(s) {
        return Err(MonodromyError::NotRepresentable(BigRational::zero()));
    }
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sample() -> Triple {
        Triple::from_shears([
            &[r(1, 1), r(2, 1), r(-1, 2)],
            &[r(3, 1), r(-1, 1)],
            &[r(-2, 3), r(1, 1), r(1, 1), r(2, 1)],
        ])
    }

    #[test]
    fn determinants_are_one() {
        let t = sample();
        for m in [&t.mx, &t.my, &t.mz] {
            assert_eq!(m.det(), QuadScalar::from_int(1));
        }
    }

    #[test]
    fn derived_trace_is_other_order() {
        let t = sample();
        let s = invariants(&t).unwrap();
        let direct = t.mx.mul(&t.my).mul(&t.mz).trace();
        assert_eq!(QuadScalar::rational(derived_trace_tbac(&s)), direct);
        assert_eq!(QuadScalar::rational(s.pinf.clone()), t.my.mul(&t.mx).mul(&t.mz).trace());
    }

    #[test]
    fn commuting_diagonal_triple() {
        let d = |a: i64| Mat2::from_rationals([[r(a, 1), r(0, 1)], [r(0, 1), r(1, a)]]);
        let t = Triple::new(d(2), d(3), d(5));
        let s = invariants(&t).unwrap();
        assert_eq!(derived_trace_tbac(&s), s.pinf);
        assert_eq!(reconstruct(&s), Err(MonodromyError::ReducibleLocus));
    }

    #[test]
    fn reconstruct_sample() {
        let s = invariants(&sample()).unwrap();
        assert!(s.residual().is_zero());
        let t = reconstruct(&s).unwrap();
        assert_eq!(invariants(&t).unwrap(), s);
    }

    #[test]
    fn zero_tuple_is_not_representable() {
        let s = SevenTuple::from_ints([0; 7]);
        assert_eq!(s.residual(), r(-4, 1));
        assert_eq!(reconstruct(&s), Err(MonodromyError::NotRepresentable(r(-4, 1))));
    }

    #[test]
    fn identity_triple_is_reducible() {
        let s = SevenTuple::from_ints([2; 7]);
        assert!(s.residual().is_zero());
        assert_eq!(reconstruct(&s), Err(MonodromyError::ReducibleLocus));
    }

    #[test]
    fn moves_satisfy_relations_on_invariants() {
        use BraidMove::*;
        let t = sample();
        let s0 = invariants(&t).unwrap();
        let run = |w: &[BraidMove]| w.iter().fold(t.clone(), |acc, &g| act(g, &acc));
        for word in [&[R, R][..], &[S, S, S], &[T, T], &[T, R, T, R], &[S, R, S, R]] {
            assert_eq!(invariants(&run(word)).unwrap(), s0, "{word:?}");
        }
    }
}
