//! Exact truncated series in `Z((p))[[q]]` with rational coefficients.
//!
//! A [`PLaurent`] is a Laurent series in `p` known exactly on a window: every
//! degree below `low` is zero, every degree in `[low, high]` is exact, and
//! degrees above `high` are unknown. `high = None` means the series is an
//! exact Laurent polynomial.
//!
//! A [`QSeries`] is a power series in `q` whose coefficients are `PLaurent`s,
//! multiplied by a global `q^q_offset`. Internal degrees `0..=q_max` are known;
//! positions past the stored terms but within `q_max` are exact zeros.
//! `q_max = None` means the series is an exact polynomial in `q`.
//!
//! Windows are propagated conservatively: every reported coefficient is
//! exact, and comparisons are only ever made where both sides are known.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn min_bound(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

/// Truncated Laurent series in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLaurent {
    coeffs: BTreeMap<i64, Rational>,
    low: i64,
    high: Option<i64>,
}

impl PLaurent {
    /// The exact zero series.
    pub fn zero() -> Self {
        PLaurent {
            coeffs: BTreeMap::new(),
            low: 0,
            high: None,
        }
    }

    pub fn one() -> Self {
        Self::monomial(rat(1), 0)
    }

    /// `c · p^deg`, exact.
    pub fn monomial(c: Rational, deg: i64) -> Self {
        Self::from_terms([(deg, c)], None)
    }

    /// Builds a series from `(degree, coefficient)` pairs known up to `high`.
    /// Terms above `high` are dropped; repeated degrees are summed.
    pub fn from_terms<I>(terms: I, high: Option<i64>) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (d, c) in terms {
            if high.is_some_and(|h| d > h) {
                continue;
            }
            *coeffs.entry(d).or_insert_with(Rational::zero) += c;
        }
        let mut s = PLaurent {
            coeffs,
            low: i64::MIN,
            high,
        };
        s.normalize();
        s
    }

    /// Integer coefficients starting at degree `start`, known up to `high`.
    pub fn from_ints(start: i64, values: &[i64], high: Option<i64>) -> Self {
        Self::from_terms(
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (start + i as i64, rat(v))),
            high,
        )
    }

    /// The zero series known exactly up to degree `high`.
    pub fn zero_to(high: i64) -> Self {
        Self::from_terms([], Some(high))
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
        self.low = match (self.coeffs.keys().next(), self.high) {
            (Some(&d), _) => d,
            (None, Some(h)) => h.saturating_add(1),
            (None, None) => 0,
        };
    }

    /// Lowest possibly-nonzero degree (coefficients below are exactly zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Validity bound; `None` for an exact Laurent polynomial.
    pub fn high(&self) -> Option<i64> {
        self.high
    }

    pub fn is_exact(&self) -> bool {
        self.high.is_none()
    }

    /// True if no nonzero coefficient is stored (zero within the window).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.high.is_none()
    }

    /// Coefficient at `deg`, or `None` when `deg` lies above the window.
    pub fn coeff(&self, deg: i64) -> Option<Rational> {
        if self.high.is_some_and(|h| deg > h) {
            return None;
        }
        Some(
            self.coeffs
                .get(&deg)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Stored nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Highest stored nonzero degree.
    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Drops everything above `high`, tightening the window.
    pub fn truncate(&self, high: i64) -> Self {
        let high = min_bound(self.high, Some(high));
        Self::from_terms(self.coeffs.iter().map(|(&d, c)| (d, c.clone())), high)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return match self.high {
                None => Self::zero(),
                Some(h) => Self::zero_to(h),
            };
        }
        PLaurent {
            coeffs: self.coeffs.iter().map(|(&d, v)| (d, v * c)).collect(),
            low: self.low,
            high: self.high,
        }
    }

    pub fn neg(&self) -> Self {
        PLaurent {
            coeffs: self.coeffs.iter().map(|(&d, v)| (d, -v)).collect(),
            low: self.low,
            high: self.high,
        }
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        PLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, v)| (d + k, v.clone()))
                .collect(),
            low: self.low + k,
            high: self.high.map(|h| h + k),
        }
    }

    /// Substitutes `p -> -p`.
    pub fn negate_variable(&self) -> Self {
        PLaurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, v)| (d, if d.rem_euclid(2) == 1 { -v } else { v.clone() }))
                .collect(),
            low: self.low,
            high: self.high,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        pl_add(self, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        pl_add(self, &other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        pl_mul(self, other)
    }
}

impl fmt::Display for PLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&d, c) in &self.coeffs {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match d {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "p")?,
                1 => write!(f, "{mag}*p")?,
                _ if unit => write!(f, "p^{d}")?,
                _ => write!(f, "{mag}*p^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(h) = self.high {
            write!(f, " + O(p^{})", h + 1)?;
        }
        Ok(())
    }
}

/// Sum; the window is the intersection of the two windows.
pub fn pl_add(a: &PLaurent, b: &PLaurent) -> PLaurent {
    let high = min_bound(a.high, b.high);
    PLaurent::from_terms(
        a.coeffs
            .iter()
            .chain(b.coeffs.iter())
            .map(|(&d, c)| (d, c.clone())),
        high,
    )
}

/// Convolution product.
///
/// The result is valid up to `min(a.low + b.high, b.low + a.high)`.
pub fn pl_mul(a: &PLaurent, b: &PLaurent) -> PLaurent {
    if a.is_exact_zero() || b.is_exact_zero() {
        return PLaurent::zero();
    }
    let high = min_bound(b.high.map(|h| h + a.low), a.high.map(|h| h + b.low));
    let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
    for (&da, ca) in &a.coeffs {
        for (&db, cb) in &b.coeffs {
            let d = da + db;
            if high.is_some_and(|h| d > h) {
                // b is sorted, later terms only go higher.
                break;
            }
            *coeffs.entry(d).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    let mut out = PLaurent {
        coeffs,
        low: a.low + b.low,
        high,
    };
    out.normalize();
    out
}

/// Multiplicative inverse in `Z((p))`.
///
/// For `a = p^L · u` with `u` known to relative precision `N = high - L`, the
/// inverse is known on `[-L, -L + N]`. An exact input must be a monomial;
/// any other exact polynomial has to be truncated first.
pub fn pl_recip(a: &PLaurent) -> Result<PLaurent, SeriesError> {
    let (&lead_deg, lead) = a.coeffs.iter().next().ok_or(SeriesError::NotInvertible)?;
    let Some(high) = a.high else {
        if a.coeffs.len() == 1 {
            return Ok(PLaurent::monomial(lead.recip(), -lead_deg));
        }
        return Err(SeriesError::NeedsTruncation);
    };
    let n = high - lead_deg;
    let inv_lead = lead.recip();
    let unit: Vec<Rational> = (0..=n)
        .map(|k| a.coeffs.get(&(lead_deg + k)).cloned().unwrap_or_default())
        .collect();
    let mut out: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    out.push(inv_lead.clone());
    for m in 1..=n as usize {
        let mut acc = Rational::zero();
        for k in 1..=m {
            if !unit[k].is_zero() && !out[m - k].is_zero() {
                acc += &unit[k] * &out[m - k];
            }
        }
        out.push(-(acc * &inv_lead));
    }
    Ok(PLaurent::from_terms(
        out.into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64 - lead_deg, c)),
        Some(high - 2 * lead_deg),
    ))
}

/// Power series in `q` with [`PLaurent`] coefficients and a global `q^q_offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    q_offset: i64,
    terms: Vec<PLaurent>,
    q_max: Option<i64>,
}

impl QSeries {
    /// Builds a series; `terms[d]` is the coefficient of `q^(d + q_offset)`.
    /// Terms past `q_max` are dropped.
    pub fn new(q_offset: i64, mut terms: Vec<PLaurent>, q_max: Option<i64>) -> Self {
        if let Some(m) = q_max {
            terms.truncate((m + 1).max(0) as usize);
        }
        while terms.last().is_some_and(PLaurent::is_exact_zero) {
            terms.pop();
        }
        QSeries {
            q_offset,
            terms,
            q_max,
        }
    }

    /// The exact zero series: empty terms, unbounded in `q`.
    pub fn zero() -> Self {
        QSeries::new(0, Vec::new(), None)
    }

    pub fn one() -> Self {
        Self::constant(PLaurent::one())
    }

    /// An exact series with a single `q^0` coefficient.
    pub fn constant(c: PLaurent) -> Self {
        QSeries::new(0, vec![c], None)
    }

    /// `c · q^deg`, exact in `q`.
    pub fn monomial(c: PLaurent, deg: i64) -> Self {
        QSeries::new(deg, vec![c], None)
    }

    /// An exact polynomial in `q` with constant coefficients.
    pub fn from_q_ints(q_offset: i64, values: &[i64]) -> Self {
        QSeries::new(
            q_offset,
            values
                .iter()
                .map(|&v| PLaurent::monomial(rat(v), 0))
                .collect(),
            None,
        )
    }

    pub fn q_offset(&self) -> i64 {
        self.q_offset
    }

    /// Internal truncation order (`None` for a polynomial in `q`).
    pub fn q_max(&self) -> Option<i64> {
        self.q_max
    }

    /// Highest known external `q`-degree.
    pub fn external_max(&self) -> Option<i64> {
        self.q_max.map(|m| m + self.q_offset)
    }

    /// Stored terms, indexed by internal degree.
    pub fn terms(&self) -> &[PLaurent] {
        &self.terms
    }

    /// Highest external `q`-degree holding a stored term.
    pub fn last_stored_degree(&self) -> i64 {
        self.q_offset + self.terms.len() as i64 - 1
    }

    /// Coefficient of `q^deg` (external degree), `None` if beyond `q_max`.
    pub fn coeff(&self, deg: i64) -> Option<PLaurent> {
        if self.external_max().is_some_and(|m| deg > m) {
            return None;
        }
        let idx = deg - self.q_offset;
        if idx < 0 || idx as usize >= self.terms.len() {
            return Some(PLaurent::zero());
        }
        Some(self.terms[idx as usize].clone())
    }

    fn term(&self, idx: usize) -> Option<&PLaurent> {
        self.terms.get(idx)
    }

    pub fn map_terms(&self, f: impl Fn(&PLaurent) -> PLaurent) -> Self {
        QSeries::new(
            self.q_offset,
            self.terms.iter().map(f).collect(),
            self.q_max,
        )
    }

    pub fn neg(&self) -> Self {
        self.map_terms(PLaurent::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_terms(|t| t.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Multiplication by `q^k`.
    pub fn shift_q(&self, k: i64) -> Self {
        QSeries {
            q_offset: self.q_offset + k,
            terms: self.terms.clone(),
            q_max: self.q_max,
        }
    }

    /// Keeps external degrees `<= max_deg`.
    pub fn truncate_q(&self, max_deg: i64) -> Self {
        let internal = max_deg - self.q_offset;
        QSeries::new(
            self.q_offset,
            self.terms.clone(),
            min_bound(self.q_max, Some(internal)),
        )
    }

    /// Truncates every coefficient at `p^high`.
    pub fn truncate_p(&self, high: i64) -> Self {
        self.map_terms(|t| t.truncate(high))
    }

    /// Substitutes `p -> -p` in every coefficient.
    pub fn negate_p(&self) -> Self {
        self.map_terms(PLaurent::negate_variable)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(PLaurent::has_integer_coefficients)
    }

    /// Lowest `p`-validity bound over the known `q`-range.
    pub fn min_p_high(&self) -> Option<i64> {
        self.terms
            .iter()
            .fold(None, |acc, t| min_bound(acc, t.high()))
    }

    pub fn add(&self, other: &Self) -> Self {
        qs_add(self, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        qs_add(self, &other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        qs_mul(self, other)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if t.is_exact_zero() {
                continue;
            }
            writeln!(f, "q^{}: {}", self.q_offset + i as i64, t)?;
        }
        if let Some(m) = self.external_max() {
            writeln!(f, "+ O(q^{})", m + 1)?;
        }
        Ok(())
    }
}

/// Termwise sum, aligned on `min(a.q_offset, b.q_offset)`.
pub fn qs_add(a: &QSeries, b: &QSeries) -> QSeries {
    let offset = a.q_offset.min(b.q_offset);
    let ext_max = min_bound(a.external_max(), b.external_max());
    let stored_end = a.last_stored_degree().max(b.last_stored_degree());
    let end = match ext_max {
        Some(m) => m.min(stored_end),
        None => stored_end,
    };
    let terms = (offset..=end)
        .map(|deg| {
            let x = a.coeff(deg).unwrap_or_else(PLaurent::zero);
            let y = b.coeff(deg).unwrap_or_else(PLaurent::zero);
            pl_add(&x, &y)
        })
        .collect();
    QSeries::new(offset, terms, ext_max.map(|m| m - offset))
}

/// Cauchy product in `q` with [`pl_mul`] on the coefficients.
pub fn qs_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let q_max = min_bound(a.q_max, b.q_max);
    let stored = (a.terms.len() + b.terms.len()).saturating_sub(1) as i64;
    let len = match q_max {
        Some(m) => (m + 1).min(stored),
        None => stored,
    }
    .max(0) as usize;
    let mut terms = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = PLaurent::zero();
        for i in 0..=n {
            let (Some(x), Some(y)) = (a.term(i), b.term(n - i)) else {
                continue;
            };
            if x.is_exact_zero() || y.is_exact_zero() {
                continue;
            }
            acc = pl_add(&acc, &pl_mul(x, y));
        }
        terms.push(acc);
    }
    QSeries::new(a.q_offset + b.q_offset, terms, q_max)
}

/// Multiplicative inverse; the leading coefficient must be invertible in `Z((p))`.
pub fn qs_recip(a: &QSeries) -> Result<QSeries, SeriesError> {
    let lead = a.term(0).ok_or(SeriesError::NotInvertible)?;
    let inv_lead = pl_recip(lead)?;
    let q_max = match a.q_max {
        Some(m) => m,
        None if a.terms.len() == 1 => {
            return Ok(QSeries::new(-a.q_offset, vec![inv_lead], None));
        }
        None => return Err(SeriesError::NeedsTruncation),
    };
    let mut out: Vec<PLaurent> = Vec::with_capacity(q_max as usize + 1);
    out.push(inv_lead.clone());
    for n in 1..=q_max as usize {
        let mut acc = PLaurent::zero();
        for k in 1..=n {
            let Some(x) = a.term(k) else { continue };
            if x.is_exact_zero() || out[n - k].is_exact_zero() {
                continue;
            }
            acc = pl_add(&acc, &pl_mul(x, &out[n - k]));
        }
        out.push(pl_mul(&acc, &inv_lead).neg());
    }
    Ok(QSeries::new(-a.q_offset, out, Some(q_max)))
}

/// Integer power; negative exponents go through [`qs_recip`].
pub fn qs_pow(a: &QSeries, k: i64) -> Result<QSeries, SeriesError> {
    if k == 0 {
        return Ok(QSeries::one());
    }
    let base = if k < 0 { qs_recip(a)? } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut result: Option<QSeries> = None;
    let mut power = base;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                Some(r) => qs_mul(&r, &power),
                None => power.clone(),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        power = qs_mul(&power, &power);
    }
    Ok(result.expect("nonzero exponent"))
}

/// The first coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q: i64,
    pub p: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// The `p`-range compared at one `q`-degree. Below `p_low` both sides are
/// exactly zero; `p_high = None` means both sides are exact polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub q: i64,
    pub p_low: i64,
    pub p_high: Option<i64>,
}

/// Outcome of [`qs_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub windows: Vec<DegreeWindow>,
    pub first_mismatch: Option<Mismatch>,
}

impl Comparison {
    /// Smallest `p`-validity bound over all compared `q`-degrees.
    pub fn min_p_high(&self) -> Option<i64> {
        self.windows
            .iter()
            .fold(None, |acc, w| min_bound(acc, w.p_high))
    }

    pub fn q_range(&self) -> Option<(i64, i64)> {
        Some((self.windows.first()?.q, self.windows.last()?.q))
    }

    /// Restricts to external `q`-degrees `<= max_q`, keeping the first
    /// mismatch only if it falls inside.
    pub fn up_to_q(mut self, max_q: i64) -> Self {
        self.windows.retain(|w| w.q <= max_q);
        if self.first_mismatch.as_ref().is_some_and(|m| m.q > max_q) {
            self.first_mismatch = None;
            self.equal = true;
        }
        self
    }
}

/// Exact equality on the intersection of the known windows.
///
/// Compares every external `q`-degree from the lower offset up to the
/// smaller `q` bound (or the last stored term when both are exact).
pub fn qs_equal(a: &QSeries, b: &QSeries) -> Comparison {
    let start = a.q_offset.min(b.q_offset);
    let end = match min_bound(a.external_max(), b.external_max()) {
        Some(m) => m,
        None => a.last_stored_degree().max(b.last_stored_degree()),
    };
    let mut windows = Vec::new();
    let mut first_mismatch = None;
    for q in start..=end {
        let x = a.coeff(q).unwrap_or_else(PLaurent::zero);
        let y = b.coeff(q).unwrap_or_else(PLaurent::zero);
        let p_high = min_bound(x.high, y.high);
        let p_low = match p_high {
            Some(h) => x.low.min(y.low).min(h + 1),
            None => x.low.min(y.low),
        };
        if first_mismatch.is_none() {
            let degrees: std::collections::BTreeSet<i64> = x
                .coeffs
                .keys()
                .chain(y.coeffs.keys())
                .copied()
                .filter(|&d| p_high.is_none_or(|h| d <= h))
                .collect();
            for d in degrees {
                let (cx, cy) = (x.coeff(d).unwrap(), y.coeff(d).unwrap());
                if cx != cy {
                    first_mismatch = Some(Mismatch {
                        q,
                        p: d,
                        lhs: cx,
                        rhs: cy,
                    });
                    break;
                }
            }
        }
        windows.push(DegreeWindow { q, p_low, p_high });
    }
    Comparison {
        equal: first_mismatch.is_none(),
        windows,
        first_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(start: i64, v: &[i64], high: Option<i64>) -> PLaurent {
        PLaurent::from_ints(start, v, high)
    }

    #[test]
    fn square_of_laurent_polynomial() {
        let a = pl(-1, &[1, -1], None);
        assert_eq!(pl_mul(&a, &a), pl(-2, &[1, -2, 1], None));
    }

    #[test]
    fn multiplying_by_one_keeps_window() {
        let a = pl(0, &[1, 2, 3], Some(5));
        let b = pl_mul(&a, &PLaurent::one());
        assert_eq!(b, a);
        assert_eq!(b.high(), Some(5));
    }

    #[test]
    fn geometric_series_telescopes() {
        let geo = pl(0, &[1; 6], Some(5));
        let r = pl_mul(&geo, &pl(0, &[1, -1], None));
        assert_eq!(r, PLaurent::from_ints(0, &[1], Some(5)));
        assert_eq!(r.high(), Some(5));
    }

    #[test]
    fn recip_of_one_minus_p() {
        let r = pl_recip(&pl(0, &[1, -1], Some(5))).unwrap();
        assert_eq!(r, pl(0, &[1; 6], Some(5)));
    }

    #[test]
    fn recip_of_monomial() {
        let r = pl_recip(&PLaurent::monomial(rat(1), -1)).unwrap();
        assert_eq!(r, PLaurent::monomial(rat(1), 1));
        assert!(r.is_exact());
    }

    #[test]
    fn recip_of_square_matches_long_division() {
        // long division of 1 by 1 - 2p + p^2, done by hand on integer arrays
        let n = 8usize;
        let divisor = [1i64, -2, 1];
        let mut rem = vec![0i64; n + 1];
        rem[0] = 1;
        let mut quot = vec![0i64; n + 1];
        for i in 0..=n {
            quot[i] = rem[i];
            for (j, &d) in divisor.iter().enumerate() {
                if i + j <= n {
                    rem[i + j] -= quot[i] * d;
                }
            }
        }
        let r = pl_recip(&pl(0, &[1, -2, 1], Some(n as i64))).unwrap();
        assert_eq!(r, pl(0, &quot, Some(n as i64)));
        assert_eq!(quot[..5], [1, 2, 3, 4, 5]);
    }

    #[test]
    fn recip_errors() {
        assert_eq!(pl_recip(&PLaurent::zero()), Err(SeriesError::NotInvertible));
        assert_eq!(
            pl_recip(&PLaurent::zero_to(4)),
            Err(SeriesError::NotInvertible)
        );
        assert_eq!(
            pl_recip(&pl(0, &[1, -1], None)),
            Err(SeriesError::NeedsTruncation)
        );
    }

    #[test]
    fn recip_window_with_negative_lead() {
        let a = pl(-2, &[1, 1, 0, 0, 0], Some(2));
        let r = pl_recip(&a).unwrap();
        assert_eq!(r.low(), 2);
        assert_eq!(r.high(), Some(6));
        let one = pl_mul(&a, &r);
        assert_eq!(one, PLaurent::from_ints(0, &[1], Some(4)));
    }

    #[test]
    fn add_aligns_offsets() {
        let a = QSeries::monomial(PLaurent::one(), -1);
        let b = QSeries::one();
        let s = qs_add(&a, &b);
        assert_eq!(s.q_offset(), -1);
        assert_eq!(s.terms(), &[PLaurent::one(), PLaurent::one()]);
    }

    #[test]
    fn add_zero_and_inverse() {
        let a = QSeries::new(
            0,
            vec![pl(0, &[1, 2], Some(3)), pl(-1, &[5], Some(3))],
            Some(3),
        );
        assert!(qs_equal(&qs_add(&a, &QSeries::zero()), &a).equal);
        let z = qs_add(&a, &a.neg());
        assert!(qs_equal(&z, &QSeries::zero()).equal);
        assert!(z.terms().iter().all(PLaurent::is_zero));
    }

    #[test]
    fn mul_offsets_cancel() {
        let u = pl(0, &[1, 3], None);
        let v = pl(1, &[2], None);
        let prod = qs_mul(
            &QSeries::monomial(u.clone(), 1),
            &QSeries::monomial(v.clone(), -1),
        );
        assert_eq!(prod.q_offset(), 0);
        assert_eq!(prod.coeff(0).unwrap(), pl_mul(&u, &v));
    }

    #[test]
    fn recip_of_one_minus_q() {
        let r = qs_recip(&QSeries::from_q_ints(0, &[1, -1]).truncate_q(6)).unwrap();
        assert_eq!(r, QSeries::from_q_ints(0, &[1; 7]).truncate_q(6));
        assert_eq!(
            qs_recip(&QSeries::from_q_ints(0, &[1, -1])),
            Err(SeriesError::NeedsTruncation)
        );
    }

    #[test]
    fn recip_of_monomial_negates_offset() {
        let u = pl(0, &[2, 1], Some(4));
        let r = qs_recip(&QSeries::monomial(u.clone(), 1)).unwrap();
        assert_eq!(r.q_offset(), -1);
        assert_eq!(r.coeff(-1).unwrap(), pl_recip(&u).unwrap());
    }

    #[test]
    fn pow_small_cases() {
        let a = QSeries::from_q_ints(0, &[1, -1]);
        assert_eq!(qs_pow(&a, 0).unwrap(), QSeries::one());
        assert_eq!(qs_pow(&a, 2).unwrap(), QSeries::from_q_ints(0, &[1, -2, 1]));
        let inv2 = qs_pow(&a.truncate_q(4), -2).unwrap();
        assert_eq!(
            inv2,
            QSeries::from_q_ints(0, &[1, 2, 3, 4, 5]).truncate_q(4)
        );
    }

    #[test]
    fn equality_reports_first_mismatch() {
        let a = QSeries::one().truncate_q(3);
        let b = QSeries::from_q_ints(0, &[1, 1]).truncate_q(3);
        let cmp = qs_equal(&a, &b);
        assert!(!cmp.equal);
        let m = cmp.first_mismatch.unwrap();
        assert_eq!((m.q, m.p), (1, 0));
        assert_eq!((m.lhs, m.rhs), (rat(0), rat(1)));
        assert_eq!(cmp.windows.len(), 4);
        assert!(qs_equal(&a, &a).equal);
    }

    #[test]
    fn equality_ignores_unknown_region() {
        let a = QSeries::constant(pl(0, &[1, 1, 7], Some(1)));
        let b = QSeries::constant(pl(0, &[1, 1, 9], Some(2)));
        let cmp = qs_equal(&a, &b);
        assert!(cmp.equal);
        assert_eq!(cmp.windows[0].p_high, Some(1));
    }

    #[test]
    fn display_is_readable() {
        let a = pl(-1, &[1, -1, 1], Some(3));
        assert_eq!(a.to_string(), "p^-1 - 1 + p + O(p^4)");
    }
}
