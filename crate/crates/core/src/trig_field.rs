//! Exact arithmetic on rational combinations of `2cos(pi*r)` with `r` rational.
//!
//! Zero tests go through the cyclotomic field `Q(zeta_2L)` where `L` is the
//! lcm of the angle denominators. Cyclotomic polynomials are cached globally.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrigError {
    #[error("angle with zero denominator")]
    ZeroDenominator,
    #[error("cannot parse cosine sum {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A rational `r` folded into `[0, 1]` so that `2cos(pi*r)` is unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalAngle(Rational64);

impl RationalAngle {
    pub fn new(num: i64, den: i64) -> Result<Self, TrigError> {
        if den == 0 {
            return Err(TrigError::ZeroDenominator);
        }
        Ok(Self::from_ratio(Rational64::new(num, den)))
    }

    pub fn from_ratio(r: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut m = r - two * (r / two).floor();
        if m > Rational64::one() {
            m = two - m;
        }
        RationalAngle(m)
    }

    pub fn ratio(self) -> Rational64 {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// Float value of `2cos(pi*r)`.
    pub fn two_cos(self) -> f64 {
        2.0 * (PI * self.numer() as f64 / self.denom() as f64).cos()
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Finite sum `sum c_a * 2cos(pi*a)`. Constants live on angle 0.
///
/// The representation is not unique; use [`CosSum::is_zero`] or
/// [`CosSum::exact_eq`] for equality and [`CosSum::canonical`] for a normal form.
#[derive(Clone, Debug, Default)]
pub struct CosSum {
    terms: BTreeMap<RationalAngle, BigRational>,
}

impl CosSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_term(RationalAngle(Rational64::zero()), q / BigInt::from(2));
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    /// `2cos(pi*a)`.
    pub fn two_cos(a: RationalAngle) -> Self {
        let mut s = Self::zero();
        s.add_term(a, BigRational::one());
        s
    }

    /// `2cos(pi*num/den)`.
    pub fn two_cos_of(num: i64, den: i64) -> Result<Self, TrigError> {
        Ok(Self::two_cos(RationalAngle::new(num, den)?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (RationalAngle, &BigRational)> {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c * 2cos(pi*a)`, folding the angles whose cosine is rational.
    pub fn add_term(&mut self, a: RationalAngle, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let r = a.ratio();
        let (angle, coef) = match (*r.numer(), *r.denom()) {
            (1, 2) => return,
            (1, 1) => (Rational64::zero(), -c),
            (1, 3) => (Rational64::zero(), c / BigInt::from(2)),
            (2, 3) => (Rational64::zero(), -c / BigInt::from(2)),
            _ => (r, c),
        };
        let key = RationalAngle(angle);
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// True when the stored representation has no terms. Cheaper than `is_zero`.
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if the representation is a pure constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (a, c) = self.terms.iter().next().unwrap();
                a.ratio().is_zero().then(|| c * BigInt::from(2))
            }
            _ => None,
        }
    }

    /// The angle if the representation is exactly one `2cos(pi*a)` term.
    pub fn as_single_cos(&self) -> Option<RationalAngle> {
        if self.terms.len() != 1 {
            return None;
        }
        let (a, c) = self.terms.iter().next().unwrap();
        (c.is_one() && !a.ratio().is_zero()).then_some(*a)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CosSum {
            terms: self.terms.iter().map(|(a, c)| (*a, c * q)).collect(),
        }
    }

    pub fn float(&self) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| c.to_f64().unwrap_or(f64::NAN) * a.two_cos())
            .sum()
    }

    fn abs_coef_sum(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// lcm of the angle denominators, at least 1.
    pub fn level(&self) -> u64 {
        self.terms
            .keys()
            .fold(1u64, |l, a| l.lcm(&(a.denom() as u64)))
    }

    /// Image in `Q(zeta_{2L})` with `zeta = exp(i*pi/L)`. `level` must be a
    /// multiple of [`CosSum::level`].
    pub fn to_cyclotomic(&self, level: u64) -> CyclotomicElement {
        let m = 2 * level;
        let mut raw = vec![BigRational::zero(); m as usize];
        for (a, c) in &self.terms {
            let e = (a.numer() as u64 * level / a.denom() as u64) % m;
            raw[e as usize] += c;
            raw[((m - e) % m) as usize] += c;
        }
        CyclotomicElement::reduce_raw(m, raw)
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let f = self.float();
        if f.abs() > 1e-9 * (1.0 + self.abs_coef_sum()) {
            return false;
        }
        let level = self.level();
        let m = 2 * level;
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut raw = vec![BigInt::zero(); m as usize];
        for (a, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            let e = (a.numer() as u64 * level / a.denom() as u64) % m;
            raw[e as usize] += &n;
            raw[((m - e) % m) as usize] += &n;
        }
        reduce_int_in_place(&mut raw, &cyclotomic_poly(m));
        raw.iter().all(Zero::is_zero)
    }

    pub fn exact_eq(&self, other: &CosSum) -> bool {
        if self.terms == other.terms {
            return true;
        }
        (self - other).is_zero()
    }

    /// Total order: float comparison, exact zero test when the floats are
    /// within `1e-10`.
    pub fn cmp_exact(&self, other: &CosSum) -> Ordering {
        if self.terms == other.terms {
            return Ordering::Equal;
        }
        let d = self - other;
        let f = d.float();
        if f.abs() > 1e-10 {
            return if f > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
        if d.is_zero() {
            Ordering::Equal
        } else if f >= 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_exact(&CosSum::zero())
    }

    pub fn inverse(&self) -> Result<CosSum, TrigError> {
        let level = self.level();
        let e = self.to_cyclotomic(level);
        let inv = e.inverse().ok_or(TrigError::DivisionByZero)?;
        Ok(inv.real_to_cos_sum())
    }

    pub fn checked_div(&self, other: &CosSum) -> Result<CosSum, TrigError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: u32) -> CosSum {
        let mut acc = CosSum::from_int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The angle `a` in `[0, 1]` with `self == 2cos(pi*a)`, if there is one
    /// whose denominator divides six times the level.
    pub fn as_angle(&self) -> Option<RationalAngle> {
        if let Some(a) = self.as_single_cos() {
            return Some(a);
        }
        let f = self.float();
        if f.abs() > 2.0 + 1e-9 {
            return None;
        }
        let a = (f / 2.0).clamp(-1.0, 1.0).acos() / PI;
        for d in divisors(6 * self.level()) {
            let k = (a * d as f64).round();
            if (a - k / d as f64).abs() > 1e-6 {
                continue;
            }
            let cand = RationalAngle::from_ratio(Rational64::new(k as i64, d as i64));
            if (self - &CosSum::two_cos(cand)).is_zero() {
                return Some(cand);
            }
        }
        None
    }

    /// Shorter equivalent representation: a single cosine when possible,
    /// otherwise the cyclotomic reduction at the current level if it has fewer terms.
    pub fn simplified(&self) -> CosSum {
        if self.terms.len() <= 1 {
            return self.clone();
        }
        if let Some(a) = self.as_angle() {
            return CosSum::two_cos(a);
        }
        let r = self.to_cyclotomic(self.level()).real_to_cos_sum();
        if r.terms.len() < self.terms.len() {
            r
        } else {
            self.clone()
        }
    }

    /// Unique representation: coordinates in the basis `2cos(pi*j/L)`,
    /// `0 <= j < phi(2L)/2`, for the smallest level `L` that contains the value.
    pub fn canonical(&self) -> CosSum {
        let level = self.level();
        let e = self.to_cyclotomic(level);
        let m = 2 * level;
        let n = e.coeffs.len();
        for sub in divisors(level) {
            let dim = real_subfield_dim(2 * sub);
            let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
            for j in 0..dim as u64 {
                let mut raw = vec![BigRational::zero(); m as usize];
                let ex = (j * level / sub) % m;
                raw[ex as usize] += BigRational::one();
                raw[((m - ex) % m) as usize] += BigRational::one();
                cols.push(CyclotomicElement::reduce_raw(m, raw).coeffs);
            }
            if let Some(x) = solve_exact(&cols, &e.coeffs, n) {
                let mut out = CosSum::zero();
                for (j, c) in x.into_iter().enumerate() {
                    let a = RationalAngle::from_ratio(Rational64::new(j as i64, sub as i64));
                    out.add_term(a, c);
                }
                return out;
            }
        }
        unreachable!("value lies in its own level")
    }
}

fn real_subfield_dim(m: u64) -> usize {
    if m <= 2 {
        1
    } else {
        (euler_phi(m) / 2) as usize
    }
}

/// Solves `sum_j x_j cols[j] = rhs` over Q, or `None` when inconsistent.
fn solve_exact(cols: &[Vec<BigRational>], rhs: &[BigRational], rows: usize) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k].clone();
    }
    Some(x)
}

impl fmt::Display for CosSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut constant = None;
        for (a, c) in &self.terms {
            if a.ratio().is_zero() {
                constant = Some(c * BigInt::from(2));
                continue;
            }
            write_coef(f, c, first, true)?;
            write!(f, "2cos(pi*{a})")?;
            first = false;
        }
        if let Some(c) = constant {
            write_coef(f, &c, first, false)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: &BigRational, first: bool, times: bool) -> fmt::Result {
    let neg = c.is_negative();
    if neg {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let a = c.abs();
    if times {
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
    } else {
        write!(f, "{a}")?;
    }
    Ok(())
}

impl FromStr for CosSum {
    type Err = TrigError;

    /// Accepts sums like `2cos(pi*1/5)-1`, `-1/2*2cos(pi*2/7)+3/4`.
    fn from_str(s: &str) -> Result<Self, TrigError> {
        let err = || TrigError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut chunks = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    chunks.push(&t[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        chunks.push(&t[start..]);
        let mut out = CosSum::zero();
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes()[0] {
                b'-' => (-1, &chunk[1..]),
                b'+' => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            let sign = BigRational::from_integer(BigInt::from(sign));
            if let Some(pos) = body.find("2cos(") {
                let coef = match body[..pos].trim_end_matches('*') {
                    "" => BigRational::one(),
                    c => parse_rational(c).ok_or_else(err)?,
                };
                let inner = body[pos + 5..].strip_suffix(')').ok_or_else(err)?;
                let angle = match inner {
                    "pi" => Rational64::one(),
                    "0" => Rational64::zero(),
                    _ => {
                        let r = inner.strip_prefix("pi*").ok_or_else(err)?;
                        let q = parse_rational(r).ok_or_else(err)?;
                        Rational64::new(q.numer().to_i64().ok_or_else(err)?, q.denom().to_i64().ok_or_else(err)?)
                    }
                };
                out.add_term(RationalAngle::from_ratio(angle), sign * coef);
            } else {
                let q = parse_rational(body).ok_or_else(err)?;
                out = &out + &CosSum::rational(sign * q);
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl<'a> std::ops::Add<&'a CosSum> for &'a CosSum {
    type Output = CosSum;
    fn add(self, rhs: &CosSum) -> CosSum {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(*a, c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a CosSum> for &'a CosSum {
    type Output = CosSum;
    fn sub(self, rhs: &CosSum) -> CosSum {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(*a, -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a CosSum> for &'a CosSum {
    type Output = CosSum;
    fn mul(self, rhs: &CosSum) -> CosSum {
        let mut out = CosSum::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                let cd = c * d;
                out.add_term(RationalAngle::from_ratio(a.ratio() + b.ratio()), cd.clone());
                out.add_term(RationalAngle::from_ratio(a.ratio() - b.ratio()), cd);
            }
        }
        out
    }
}

impl std::ops::Neg for &CosSum {
    type Output = CosSum;
    fn neg(self) -> CosSum {
        CosSum {
            terms: self.terms.iter().map(|(a, c)| (*a, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr<CosSum> for CosSum {
            type Output = CosSum;
            fn $f(self, rhs: CosSum) -> CosSum {
                (&self).$f(&rhs)
            }
        }
        impl std::ops::$tr<&CosSum> for CosSum {
            type Output = CosSum;
            fn $f(self, rhs: &CosSum) -> CosSum {
                (&self).$f(rhs)
            }
        }
        impl std::ops::$tr<CosSum> for &CosSum {
            type Output = CosSum;
            fn $f(self, rhs: CosSum) -> CosSum {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for CosSum {
    type Output = CosSum;
    fn neg(self) -> CosSum {
        -&self
    }
}

/// Element of `Q(zeta_m)` in the power basis `1, zeta, .., zeta^(phi(m)-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    /// `sum c * zeta_m^e` for the given `(e, c)` pairs; exponents are taken mod `m`.
    pub fn from_exponents<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut raw = vec![BigRational::zero(); order as usize];
        for (e, c) in terms {
            raw[e.rem_euclid(order as i64) as usize] += c;
        }
        Self::reduce_raw(order, raw)
    }

    fn reduce_raw(order: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(order);
        let d = phi.len() - 1;
        for j in (d..raw.len()).rev() {
            if raw[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[j]);
            for (i, p) in phi.iter().enumerate().take(d) {
                if *p != 0 {
                    raw[j - d + i] -= &c * BigInt::from(*p);
                }
            }
        }
        raw.truncate(d);
        raw.resize(d, BigRational::zero());
        CyclotomicElement { order, coeffs: raw }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let mut raw = vec![BigRational::zero(); self.order as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % self.order as usize] += a * b;
                }
            }
        }
        Self::reduce_raw(self.order, raw)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].recip();
        let raw: Vec<BigRational> = s0.iter().map(|c| c * &g).collect();
        let mut full = vec![BigRational::zero(); self.order as usize];
        for (i, c) in raw.into_iter().enumerate() {
            full[i] += c;
        }
        Some(Self::reduce_raw(self.order, full))
    }

    /// Reads a real element back as a cosine sum using `x = (x + conj x) / 2`.
    pub fn real_to_cos_sum(&self) -> CosSum {
        let half = rat(1, 2);
        let mut out = CosSum::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let a = RationalAngle::from_ratio(Rational64::new(2 * j as i64, self.order as i64));
                out.add_term(a, c * &half);
            }
        }
        out
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn reduce_int_in_place(raw: &mut Vec<BigInt>, phi: &[i64]) {
    let d = phi.len() - 1;
    for j in (d..raw.len()).rev() {
        if raw[j].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut raw[j]);
        for (i, p) in phi.iter().enumerate().take(d) {
            if *p != 0 {
                raw[j - d + i] -= &c * *p;
            }
        }
    }
    raw.truncate(d);
}

static CYCLOTOMIC_CACHE: Lazy<RwLock<HashMap<u64, Arc<Vec<i64>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = CYCLOTOMIC_CACHE.read().get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(n));
    CYCLOTOMIC_CACHE.write().entry(n).or_insert(p).clone()
}

// Phi_n = prod_{d|n} (1 - x^d)^mu(n/d) for n > 1, as a power series truncated
// past degree phi(n).
fn compute_cyclotomic(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-1, 1];
    }
    let deg = euler_phi(n) as usize;
    let mut s = vec![0i128; deg + 1];
    s[0] = 1;
    let divs = divisors(n);
    for &d in &divs {
        if mobius(n / d) == 1 {
            let d = d as usize;
            for k in (d..=deg).rev() {
                s[k] -= s[k - d];
            }
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            let d = d as usize;
            for k in d..=deg {
                s[k] += s[k - d];
            }
        }
    }
    s.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Index of the entry of `dict` equal to `v`: float prefilter within `eps`,
/// then an exact check.
pub fn match_dictionary(v: &CosSum, dict: &[CosSum], eps: f64) -> Option<usize> {
    let f = v.float();
    dict.iter()
        .position(|d| (d.float() - f).abs() < eps && v.exact_eq(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> CosSum {
        CosSum::two_cos_of(n, d).unwrap()
    }

    #[test]
    fn angle_folding() {
        assert_eq!(RationalAngle::new(7, 5).unwrap(), RationalAngle::new(3, 5).unwrap());
        assert_eq!(RationalAngle::new(-1, 5).unwrap(), RationalAngle::new(1, 5).unwrap());
        assert_eq!(RationalAngle::new(-4, 5).unwrap(), RationalAngle::new(4, 5).unwrap());
        assert_eq!(RationalAngle::new(1, 0), Err(TrigError::ZeroDenominator));
    }

    #[test]
    fn heptagon_identity() {
        let s = &(&c(1, 7) + &c(3, 7)) + &c(5, 7);
        assert!((&s - &CosSum::from_int(1)).is_zero());
        assert!(!(&s - &CosSum::from_int(2)).is_zero());
    }

    #[test]
    fn pentagon_product() {
        // 2cos(pi/5) * 2cos(2pi/5) = 1
        let p = &c(1, 5) * &c(2, 5);
        assert!(p.exact_eq(&CosSum::from_int(1)));
        // golden ratio: g^2 = g + 1
        let g = c(1, 5);
        assert!((&g * &g).exact_eq(&(&g + &CosSum::from_int(1))));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_poly(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = &c(1, 7) + &CosSum::from_ratio(3, 2);
        let y = x.inverse().unwrap();
        assert!((&x * &y).exact_eq(&CosSum::from_int(1)));
        assert_eq!(CosSum::zero().inverse().unwrap_err(), TrigError::DivisionByZero);
        assert!(c(1, 2).inverse().is_err());
    }

    #[test]
    fn canonical_is_unique() {
        let sqrt5a = &c(1, 5).scale(&rat(2, 1)) - &CosSum::from_int(1);
        let sqrt5b = &c(1, 5) + &c(3, 5).scale(&rat(-1, 1));
        let (a, b) = (sqrt5a.canonical(), sqrt5b.canonical());
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_string(), "2*2cos(pi*1/5)-1");
        let one = (&c(1, 7) + &c(3, 7) + c(5, 7)).canonical();
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn parse_and_print() {
        let s: CosSum = "2cos(pi*1/5)-1".parse().unwrap();
        assert!((s.float() - 0.618_033_988_749_895).abs() < 1e-14);
        let t: CosSum = "-1/2*2cos(pi*2/7)+3/4".parse().unwrap();
        assert_eq!(t.to_string(), "-1/2*2cos(pi*2/7)+3/4");
        assert!("2cos(pi*1/0)".parse::<CosSum>().is_err());
    }

    #[test]
    fn ordering_uses_exact_ties() {
        let a = &c(1, 5) - &c(2, 5);
        assert_eq!(a.cmp_exact(&CosSum::from_int(1)), Ordering::Equal);
        assert_eq!(c(1, 5).cmp_exact(&c(1, 4)), Ordering::Greater);
    }

    #[test]
    fn angle_recovery() {
        let v = &c(1, 5) - &CosSum::from_int(1);
        assert_eq!(v.as_angle(), Some(RationalAngle::new(2, 5).unwrap()));
        assert_eq!(CosSum::from_int(2).as_angle(), Some(RationalAngle::new(0, 1).unwrap()));
        assert_eq!(CosSum::from_int(-1).as_angle(), Some(RationalAngle::new(2, 3).unwrap()));
        assert_eq!(CosSum::from_int(3).as_angle(), None);
        assert_eq!(CosSum::from_ratio(1, 2).as_angle(), None);
        let s = (&c(1, 7) + &c(3, 7)).simplified();
        assert!(s.exact_eq(&(&CosSum::from_int(1) - &c(5, 7))));
    }

    #[test]
    fn dictionary_match() {
        let dict = vec![c(1, 3), c(1, 5), c(2, 5)];
        let v = &c(1, 5) - &CosSum::from_int(1);
        assert_eq!(match_dictionary(&v, &dict, 1e-8), Some(2));
        assert_eq!(match_dictionary(&c(1, 7), &dict, 1e-8), None);
    }
}
