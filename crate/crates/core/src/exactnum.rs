//! Exact rational scalars, vectors and matrices.
//!
//! Every quantity in this crate (intersection numbers, cone data, invariant
//! values) is held as an arbitrary-precision rational; nothing here rounds.
//! `Rational` is a thin wrapper over [`num_rational::BigRational`], which
//! already maintains the lowest-terms / positive-denominator canonical form.
//! Values serialize as strings `"p/q"` (or `"p"` when the denominator is 1).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(num_rational::BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational(num_rational::BigRational::new(numer, denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(num_rational::BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(num_rational::BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Rational(num_rational::BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(num_rational::BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Integer power with `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Nearby rational with denominator at most `max_denom`, via the
    /// Stern-Brocot walk. Used to turn floating-point search results into
    /// exact witnesses; correctness never depends on the approximation.
    pub fn approximate_f64(x: f64, max_denom: u64) -> Self {
        if !x.is_finite() {
            return Rational::zero();
        }
        let neg = x < 0.0;
        let x = x.abs();
        let whole = x.floor();
        let frac = x - whole;
        // Stern-Brocot bounds for the fractional part.
        let (mut lo_n, mut lo_d, mut hi_n, mut hi_d) = (0u64, 1u64, 1u64, 1u64);
        let (mut best_n, mut best_d) = (0u64, 1u64);
        let mut best_err = frac;
        for _ in 0..64 {
            let mid_n = lo_n + hi_n;
            let mid_d = lo_d + hi_d;
            if mid_d > max_denom {
                break;
            }
            let mid = mid_n as f64 / mid_d as f64;
            let err = (frac - mid).abs();
            if err < best_err {
                best_err = err;
                best_n = mid_n;
                best_d = mid_d;
            }
            if mid < frac {
                lo_n = mid_n;
                lo_d = mid_d;
            } else {
                hi_n = mid_n;
                hi_d = mid_d;
            }
        }
        if (frac - 1.0).abs() < best_err {
            best_n = 1;
            best_d = 1;
        }
        let mut r = Rational::from_int(whole as i64)
            + Rational::new(BigInt::from(best_n), BigInt::from(best_d)).unwrap();
        if neg {
            r = -&r;
        }
        r
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(p)
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
        let denom = BigInt::from_str(q)
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("bad rational {s:?}: zero denominator")));
        }
        Rational::new(numer, denom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

/// Exact n-th root of a nonnegative rational, when the result is rational.
pub fn perfect_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    assert!(n >= 1);
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let np = q.numer().to_biguint().expect("nonnegative numerator");
    let dp = q.denom().to_biguint().expect("positive denominator");
    let rn = np.nth_root(n);
    let rd = dp.nth_root(n);
    if num_traits::pow::pow(rn.clone(), n as usize) == np
        && num_traits::pow::pow(rd.clone(), n as usize) == dp
    {
        Some(
            Rational::new(BigInt::from(rn), BigInt::from(rd))
                .expect("positive denominator"),
        )
    } else {
        None
    }
}

/// Certified enclosure `[lo, hi]` of `q^{1/n}` with `hi - lo <= tol`, for
/// `q >= 0`. Returns a degenerate enclosure (`lo == hi`) when the root is
/// exact.
pub fn nth_root_enclosure(q: &Rational, n: u32, tol: &Rational) -> (Rational, Rational) {
    assert!(!q.is_negative(), "root of negative rational");
    if let Some(r) = perfect_nth_root(q, n) {
        return (r.clone(), r);
    }
    // Integer floor root of numer*denom^{n-1} over denom gives a first
    // bracket of width 1/denom.
    let scaled = q.numer() * q.denom().pow(n - 1);
    let floor = scaled.to_biguint().expect("positive").nth_root(n);
    let denom = q.denom().clone();
    let mut lo = Rational::new(BigInt::from(floor.clone()), denom.clone()).unwrap();
    let mut hi = Rational::new(BigInt::from(floor + BigUint::one()), denom).unwrap();
    // Bisection: q is strictly between lo^n and hi^n from here on.
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) * Rational::ratio(1, 2);
        match mid.pow(n).cmp(q) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return (mid.clone(), mid),
        }
    }
    (lo, hi)
}

/// Exact comparison of `x^{1/n}` against the rational `r`, for `x >= 0`.
pub fn cmp_nth_root(x: &Rational, n: u32, r: &Rational) -> Ordering {
    if r.is_negative() {
        return Ordering::Greater;
    }
    x.cmp(&r.pow(n))
}

/// Exact comparison of `x^{1/n}` against `y^{1/n} + z^{1/n}` for nonnegative
/// rationals.
///
/// When `y/z` is a perfect n-th power the sum collapses to a single root and
/// the comparison reduces to rationals; otherwise the two sides are provably
/// distinct and interval refinement terminates.
pub fn cmp_nth_root_sum(x: &Rational, y: &Rational, z: &Rational, n: u32) -> Ordering {
    assert!(!x.is_negative() && !y.is_negative() && !z.is_negative());
    if z.is_zero() {
        return x.cmp(y);
    }
    if y.is_zero() {
        return x.cmp(z);
    }
    let ratio = y / z;
    if let Some(c) = perfect_nth_root(&ratio, n) {
        // y^{1/n} + z^{1/n} = (c + 1) z^{1/n}; compare n-th powers.
        let rhs_pow = (&c + &Rational::one()).pow(n) * z.clone();
        return x.cmp(&rhs_pow);
    }
    // The sum y^{1/n} + z^{1/n} is irrational while any equality with x^{1/n}
    // would force y/z to be a perfect n-th power, so strict separation holds.
    let mut tol = Rational::ratio(1, 1_000_000);
    loop {
        let (xl, xh) = nth_root_enclosure(x, n, &tol);
        let (yl, yh) = nth_root_enclosure(y, n, &tol);
        let (zl, zh) = nth_root_enclosure(z, n, &tol);
        let sum_lo = &yl + &zl;
        let sum_hi = &yh + &zh;
        if xh < sum_lo {
            return Ordering::Less;
        }
        if xl > sum_hi {
            return Ordering::Greater;
        }
        tol = tol * Rational::ratio(1, 1_000_000);
    }
}

/// Vector of exact rationals in a fixed-dimension coordinate space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector {
    pub coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector {
            coords: coords.iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RationalVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Coordinate dot product (no pairing applied).
    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc += &(a * b);
        }
        acc
    }

    /// Canonical primitive representative of the ray through this vector:
    /// integer coordinates with content 1, direction preserved.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        RationalVector {
            coords: ints
                .into_iter()
                .map(|v| Rational::new(v / &gcd, BigInt::one()).unwrap())
                .collect(),
        }
    }

    pub fn parse_list(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| part.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty vector literal".into()));
        }
        Ok(RationalVector { coords })
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| Rational::from_int(c)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        RationalMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.at(i, j).clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Matrix–vector product `A v`.
    pub fn mul_vec(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Rational::zero();
            for j in 0..self.cols {
                acc += &(self.at(i, j) * &v.coords[j]);
            }
            out.push(acc);
        }
        Ok(RationalVector::new(out))
    }

    /// Determinant by fraction-free Gaussian elimination (square only).
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                context: "determinant",
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(p) => p,
                None => return Ok(Rational::zero()),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pv;
                for c in col..n {
                    let sub = &m[col][c] * &factor;
                    m[r][c] -= &sub;
                }
            }
        }
        Ok(det)
    }
}

impl TryFrom<Vec<Vec<Rational>>> for RationalMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self> {
        RationalMatrix::from_rows(rows)
    }
}

impl From<RationalMatrix> for Vec<Vec<Rational>> {
    fn from(m: RationalMatrix) -> Self {
        (0..m.rows).map(|i| m.row(i).coords).collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Bilinear pairing `a^T P b`; `a` indexes rows of `P`, `b` indexes columns.
pub fn pair(p: &RationalMatrix, a: &RationalVector, b: &RationalVector) -> Result<Rational> {
    if a.dim() != p.rows {
        return Err(Error::DimensionMismatch {
            context: "pairing left argument",
            expected: p.rows,
            found: a.dim(),
        });
    }
    if b.dim() != p.cols {
        return Err(Error::DimensionMismatch {
            context: "pairing right argument",
            expected: p.cols,
            found: b.dim(),
        });
    }
    let pb = p.mul_vec(b)?;
    Ok(a.dot(&pb))
}

/// Exact solution of `A x = b`.
///
/// Gaussian elimination with a fixed pivot order: columns are scanned left to
/// right and the first row with a nonzero entry is promoted. Free columns are
/// set to zero, so underdetermined systems have a deterministic solution.
/// Returns `None` when the system is inconsistent.
pub fn solve_linear(a: &RationalMatrix, b: &RationalVector) -> Result<Option<RationalVector>> {
    if b.dim() != a.rows {
        return Err(Error::DimensionMismatch {
            context: "solve_linear rhs",
            expected: a.rows,
            found: b.dim(),
        });
    }
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rational> = (0..cols).map(|j| a.at(i, j).clone()).collect();
            r.push(b.coords[i].clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let pivot = match (next_row..rows).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(next_row, pivot);
        let pv = m[next_row][col].clone();
        for c in col..=cols {
            m[next_row][c] = &m[next_row][c] / &pv;
        }
        for r in 0..rows {
            if r != next_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = &m[next_row][c] * &factor;
                    m[r][c] -= &sub;
                }
            }
        }
        pivot_cols.push(col);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }

    // Inconsistent iff a zero row has nonzero rhs.
    for r in next_row..rows {
        if m[r][..cols].iter().all(Rational::is_zero) && !m[r][cols].is_zero() {
            return Ok(None);
        }
    }

    let mut x = vec![Rational::zero(); cols];
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[row][cols].clone();
    }
    Ok(Some(RationalVector::new(x)))
}
