//! Modular and Jacobi-form building blocks as truncated [`QSeries`].
//!
//! Unless stated otherwise `q_max` is the internal `q` truncation order and
//! `p_max` the `p`-degree up to which every returned coefficient is exact.
//! Units such as `p/(1-p)^2` are expanded in `Z((p))`: finite negative tail,
//! truncated positive tail.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{qs_mul, qs_recip, rat, PLaurent, QSeries, Rational};

/// Generalized binomial coefficient `e choose j` for any integer `e`.
pub fn binomial(e: i64, j: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..j as i64 {
        num *= BigInt::from(e - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// `(1 - c p^n q^m)^e` expanded up to `q^q_max`; every coefficient is exact.
pub fn binomial_factor(c: &Rational, n: i64, m: i64, e: i64, q_max: i64) -> QSeries {
    assert!(m > 0, "factor must carry a positive power of q");
    let mut terms = vec![PLaurent::zero(); (q_max.max(0) + 1) as usize];
    let base = -c.clone();
    let mut j = 0u32;
    while m * j as i64 <= q_max {
        let coeff =
            Rational::from_integer(binomial(e, j)) * num_traits::pow(base.clone(), j as usize);
        terms[(m * j as i64) as usize] = PLaurent::monomial(coeff, n * j as i64);
        j += 1;
    }
    QSeries::new(0, terms, Some(q_max))
}

/// Rebuilds a series at increasing internal `p` precision until every
/// coefficient is exact up to `p_max`, then truncates there.
pub fn to_p_precision<F>(p_max: i64, mut build: F) -> Result<QSeries>
where
    F: FnMut(i64) -> Result<QSeries>,
{
    let mut internal = p_max;
    for _ in 0..16 {
        let s = build(internal)?;
        match s.min_p_high() {
            Some(h) if h < p_max => internal += p_max - h,
            _ => return Ok(s.truncate_p(p_max)),
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not reach p-precision {p_max}"
    )))
}

/// `∏_{m=1..q_max} (1 - q^m)^k`.
pub fn eta_pow(k: i64, q_max: i64) -> QSeries {
    let mut acc = QSeries::one().truncate_q(q_max);
    if k == 0 {
        return acc;
    }
    for m in 1..=q_max {
        acc = qs_mul(&acc, &binomial_factor(&rat(1), 0, m, k, q_max));
    }
    acc
}

/// The discriminant `Δ = q ∏ (1 - q^m)^24`, known up to `q^(q_max + 1)`.
pub fn delta(q_max: i64) -> QSeries {
    eta_pow(24, q_max).shift_q(1)
}

/// `p/(1-p)^2 = Σ n p^n`, exact up to `p^high`.
pub fn p_over_one_minus_p_sq(high: i64) -> PLaurent {
    PLaurent::from_terms((1..=high).map(|n| (n, rat(n))), Some(high))
}

/// Sum of divisors by trial division.
pub fn sigma1(d: u64) -> u64 {
    assert!(d >= 1);
    (1..=d).filter(|k| d.is_multiple_of(*k)).sum()
}

/// `Σ_{k | d} k (p^k + p^{-k} + shift)`, exact.
fn divisor_brace(d: i64, shift: i64) -> PLaurent {
    let mut terms = Vec::new();
    for k in (1..=d).filter(|k| d % k == 0) {
        terms.push((k, rat(k)));
        terms.push((-k, rat(k)));
        terms.push((0, rat(k * shift)));
    }
    PLaurent::from_terms(terms, None)
}

/// `1/12·lead + p/(1-p)^2 + Σ_{d ≥ 1} Σ_{k | d} k (p^k + p^{-k} + shift) q^d`.
///
/// With `shift = -2` this is `℘`; with `shift = 0` or `+2` it is the brace
/// content of the vertical and total `h = 1` contributions.
pub fn divisor_series(constant: &Rational, shift: i64, q_max: i64, p_high: i64) -> QSeries {
    let lead = p_over_one_minus_p_sq(p_high).add(&PLaurent::monomial(constant.clone(), 0));
    let mut terms = vec![lead];
    terms.extend((1..=q_max).map(|d| divisor_brace(d, shift)));
    QSeries::new(0, terms, Some(q_max))
}

/// Weierstrass `℘ = 1/12 + p/(1-p)^2 + Σ_d Σ_{k|d} k (p^k + p^{-k} - 2) q^d`.
pub fn wp(q_max: i64, p_max: i64) -> QSeries {
    divisor_series(&Rational::new(1.into(), 12.into()), -2, q_max, p_max)
}

/// `-F^{-2} = p/(1-p)^2 ∏ (1-q^m)^4 (1-p q^m)^{-2} (1-p^{-1} q^m)^{-2}`.
pub fn f_squared_neg_inv(q_max: i64, p_max: i64) -> QSeries {
    let mut acc = QSeries::constant(p_over_one_minus_p_sq(p_max)).truncate_q(q_max);
    let one = rat(1);
    for m in 1..=q_max {
        acc = qs_mul(&acc, &binomial_factor(&one, 0, m, 4, q_max));
        acc = qs_mul(&acc, &binomial_factor(&one, 1, m, -2, q_max));
        acc = qs_mul(&acc, &binomial_factor(&one, -1, m, -2, q_max));
    }
    acc
}

/// `F^2`, obtained by inverting `-F^{-2}`; exact up to `p^p_max`.
pub fn f_squared(q_max: i64, p_max: i64) -> Result<QSeries> {
    to_p_precision(p_max, |p| Ok(qs_recip(&f_squared_neg_inv(q_max, p))?.neg()))
}

/// `∏ (1 - q^m) / ((1 - p q^m)(1 - p^{-1} q^m))`; exact in `p`.
pub fn f_product(q_max: i64) -> QSeries {
    let one = rat(1);
    let mut acc = QSeries::one().truncate_q(q_max);
    for m in 1..=q_max {
        acc = qs_mul(&acc, &binomial_factor(&one, 0, m, 1, q_max));
        acc = qs_mul(&acc, &binomial_factor(&one, 1, m, -1, q_max));
        acc = qs_mul(&acc, &binomial_factor(&one, -1, m, -1, q_max));
    }
    acc
}

/// Right-hand side of the nodal identity:
/// `1 + p/(1-p)^2 + Σ_d Σ_{k|d} k (p^k + p^{-k}) q^d`.
pub fn nodal_closed(q_max: i64, p_max: i64) -> QSeries {
    divisor_series(&rat(1), 0, q_max, p_max)
}

/// The K3 elliptic genus `Z = -24 ℘ F^2 = Σ c(4d - n^2) p^n q^d`.
#[derive(Clone, Debug)]
pub struct EllipticGenus {
    z: QSeries,
}

impl EllipticGenus {
    /// Computes `Z` to `q^q_max`. The `p` precision is chosen so that every
    /// monomial `p^n q^d` with `n^2 <= 4d + 1` is visible, plus `p_extra`.
    pub fn new(q_max: i64, p_extra: i64) -> Result<Self> {
        let p_max = isqrt(4 * q_max + 1) + 1 + p_extra.max(0);
        let z = to_p_precision(p_max, |p| {
            let f2 = qs_recip(&f_squared_neg_inv(q_max, p))?.neg();
            Ok(qs_mul(&wp(q_max, p), &f2).scale_int(-24))
        })?;
        Ok(EllipticGenus { z })
    }

    pub fn series(&self) -> &QSeries {
        &self.z
    }

    pub fn q_max(&self) -> i64 {
        self.z.q_max().unwrap_or(0)
    }

    fn read(&self, d: i64, n: i64) -> Option<Rational> {
        self.z.coeff(d)?.coeff(n)
    }

    /// Coefficient `c(k)`.
    ///
    /// Read at the smallest `d` representing `k = 4d - n^2`. Discriminants
    /// `k ≡ 1, 2 (mod 4)` never occur and give 0. For `k < -1` the value is
    /// checked to vanish at every representation inside the truncation.
    pub fn c(&self, k: i64) -> Result<BigInt> {
        if k < -1 {
            for (d, n) in self.representations(k) {
                if self.read(d, n).is_some_and(|v| !v.is_zero()) {
                    return Err(Error::InvalidParameter(format!(
                        "c({k}) is nonzero at p^{n} q^{d}"
                    )));
                }
            }
            return Ok(BigInt::zero());
        }
        let n = match k.rem_euclid(4) {
            0 => 0,
            3 => 1,
            _ => return Ok(BigInt::zero()),
        };
        let d = (k + n * n) / 4;
        let v = self.read(d, n).ok_or(Error::CoefficientOutOfRange(k))?;
        Ok(v.to_integer())
    }

    /// All `(d, n)` with `4d - n^2 = k` inside the computed window.
    fn representations(&self, k: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for d in 0..=self.q_max() {
            let Some(t) = self.z.coeff(d) else { continue };
            let bound = t.high().unwrap_or(isqrt(4 * d + 1) + 1);
            for n in -bound..=bound {
                if 4 * d - n * n == k && t.coeff(n).is_some() {
                    out.push((d, n));
                }
            }
        }
        out
    }

    /// Reads `c(k)` at every representation with `k <= max_k` and returns the
    /// common values, or the first `(k, d, n)` that disagrees.
    pub fn discriminant_table(
        &self,
        max_k: i64,
    ) -> std::result::Result<BTreeMap<i64, Rational>, (i64, i64, i64)> {
        let mut table: BTreeMap<i64, Rational> = BTreeMap::new();
        for d in 0..=self.q_max() {
            let Some(t) = self.z.coeff(d) else { continue };
            let Some(high) = t.high() else { continue };
            for n in -high..=high {
                let k = 4 * d - n * n;
                if k > max_k {
                    continue;
                }
                let v = t.coeff(n).expect("inside window");
                match table.get(&k) {
                    Some(prev) if *prev != v => return Err((k, d, n)),
                    Some(_) => {}
                    None => {
                        table.insert(k, v);
                    }
                }
            }
        }
        Ok(table)
    }
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Series in `q̃` with [`QSeries`] coefficients; `layers[h]` multiplies
/// `q̃^(h + tq_offset)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriSeries {
    tq_offset: i64,
    layers: Vec<QSeries>,
}

impl TriSeries {
    /// `1 + O(q̃^(h_max + 1))`, each layer truncated at `q^q_max`.
    pub fn one(h_max: usize, q_max: i64) -> Self {
        let mut layers = vec![QSeries::zero().truncate_q(q_max); h_max + 1];
        layers[0] = QSeries::one().truncate_q(q_max);
        TriSeries {
            tq_offset: 0,
            layers,
        }
    }

    pub fn tq_offset(&self) -> i64 {
        self.tq_offset
    }

    pub fn h_max(&self) -> usize {
        self.layers.len() - 1
    }

    /// Layer at internal `q̃`-degree `h`.
    pub fn layer(&self, h: usize) -> &QSeries {
        &self.layers[h]
    }

    pub fn layers(&self) -> &[QSeries] {
        &self.layers
    }

    /// Multiplies every layer by `c p^n q^d` and shifts `q̃` by `h`.
    pub fn mul_monomial(&self, c: &Rational, n: i64, d: i64, h: i64) -> Self {
        let m = QSeries::monomial(PLaurent::monomial(c.clone(), n), d);
        TriSeries {
            tq_offset: self.tq_offset + h,
            layers: self.layers.iter().map(|l| qs_mul(l, &m)).collect(),
        }
    }

    /// Multiplies by `(1 - p^n q^d q̃^h)^e`, expanded binomially and
    /// truncated in both `q` and `q̃`.
    pub fn mul_factor(&self, e: i64, n: i64, d: i64, h: usize) -> Self {
        assert!(d > 0 || h > 0);
        let h_max = self.h_max();
        let mut out: Vec<QSeries> = self
            .layers
            .iter()
            .map(|l| match l.external_max() {
                Some(m) => QSeries::zero().truncate_q(m),
                None => QSeries::zero(),
            })
            .collect();
        let mut j = 0u32;
        loop {
            let (dq, dh) = (d * j as i64, h * j as usize);
            if dh > h_max {
                break;
            }
            let sign = if j % 2 == 1 { -1 } else { 1 };
            let coeff = Rational::from_integer(binomial(e, j) * sign);
            if coeff.is_zero() {
                break;
            }
            let m = QSeries::monomial(PLaurent::monomial(coeff, n * j as i64), dq);
            let mut any = false;
            for src in 0..=h_max - dh {
                let layer = &self.layers[src];
                if layer
                    .external_max()
                    .is_some_and(|mx| dq + layer.q_offset() > mx)
                {
                    continue;
                }
                any = true;
                let dst = src + dh;
                out[dst] = out[dst].add(&qs_mul(layer, &m));
            }
            if !any {
                break;
            }
            j += 1;
        }
        TriSeries {
            tq_offset: self.tq_offset,
            layers: out,
        }
    }

    /// Coefficients `R_h` of `(Σ_h layers[h] q̃^h)^{-1}` for `h <= h_max`,
    /// by the geometric-series recursion. The leading layer is truncated
    /// at `p^p_cap` before inversion.
    pub fn recip_layers(&self, p_cap: i64) -> Result<Vec<QSeries>> {
        let lead = self.layers[0].truncate_p(p_cap);
        let r0 = qs_recip(&lead)?;
        let mut out = vec![r0.clone()];
        for h in 1..=self.h_max() {
            let mut acc = QSeries::zero();
            for k in 1..=h {
                acc = acc.add(&qs_mul(&self.layers[k], &out[h - k]));
            }
            out.push(qs_mul(&acc, &r0).neg());
        }
        Ok(out)
    }
}

/// The Igusa cusp form as a truncated Borcherds product:
/// `χ₁₀ = p q q̃ (1 - p^{-1})^2 ∏_{n} ∏_{(d,h) > (0,0)} (1 - p^n q^d q̃^h)^{c(4dh - n^2)}`,
/// with `(d, h) > (0, 0)` read as `d, h >= 0`, `(d, h) != (0, 0)`.
///
/// Factors are kept for `d <= q_max`, `h <= h_max` and `n^2 <= 4dh + 1`;
/// all other exponents vanish. Every layer is exact in `p`.
pub fn chi10_tri(q_max: i64, h_max: usize) -> Result<TriSeries> {
    let z = EllipticGenus::new(q_max * h_max as i64, 0)?;
    let mut acc = TriSeries::one(h_max, q_max);
    for h in 0..=h_max {
        for d in 0..=q_max {
            if d == 0 && h == 0 {
                continue;
            }
            let disc = 4 * d * h as i64;
            let bound = isqrt(disc + 1);
            for n in -bound..=bound {
                let e = z.c(disc - n * n)?;
                if e.is_zero() {
                    continue;
                }
                let e = e
                    .to_i64()
                    .ok_or(Error::CoefficientOutOfRange(disc - n * n))?;
                acc = acc.mul_factor(e, n, d, h);
            }
        }
    }
    // p (1 - p^{-1})^2 = p - 2 + p^{-1}
    let pre = PLaurent::from_ints(-1, &[1, -2, 1], None);
    let pre = QSeries::monomial(pre, 1);
    Ok(TriSeries {
        tq_offset: acc.tq_offset + 1,
        layers: acc.layers.iter().map(|l| qs_mul(l, &pre)).collect(),
    })
}

/// Coefficient of `q̃^(h-1)` in `-1/χ₁₀`, exact on `q^-1 ..= q^q_max` and up
/// to `p^p_max`.
pub fn dt_prediction(h: usize, q_max: i64, p_max: i64) -> Result<QSeries> {
    let chi = chi10_tri(q_max + 1, h)?;
    debug_assert_eq!(chi.tq_offset(), 1);
    to_p_precision(p_max, |p| {
        let r = chi.recip_layers(p)?;
        Ok(r[h].neg())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, q: i64) -> Vec<(i64, i64)> {
        s.coeff(q)
            .unwrap()
            .terms()
            .map(|(d, c)| (d, c.to_integer().to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(-2, 3), (-4).into());
        assert_eq!(binomial(3, 5), 0.into());
        assert_eq!(binomial(-1, 4), 1.into());
    }

    #[test]
    fn eta_small_cases() {
        assert_eq!(eta_pow(0, 5), QSeries::one().truncate_q(5));
        assert_eq!(
            eta_pow(1, 5),
            QSeries::from_q_ints(0, &[1, -1, -1, 0, 0, 1]).truncate_q(5)
        );
        let inv = eta_pow(-1, 6);
        // partition numbers
        assert_eq!(
            inv,
            QSeries::from_q_ints(0, &[1, 1, 2, 3, 5, 7, 11]).truncate_q(6)
        );
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(6);
        assert_eq!(d.q_offset(), 1);
        let tau: Vec<i64> = (1..=7).map(|q| ints(&d, q)[0].1).collect();
        assert_eq!(tau, [1, -24, 252, -1472, 4830, -6048, -16744]);
    }

    #[test]
    fn sigma() {
        let v: Vec<u64> = (1..=6).map(sigma1).collect();
        assert_eq!(v, [1, 3, 4, 7, 6, 12]);
    }

    #[test]
    fn wp_display_terms() {
        let w = wp(4, 6);
        let q0 = w.coeff(0).unwrap();
        assert_eq!(q0.coeff(0).unwrap(), Rational::new(1.into(), 12.into()));
        assert_eq!(q0.coeff(3).unwrap(), rat(3));
        assert_eq!(ints(&w, 1), [(-1, 1), (0, -2), (1, 1)]);
        assert_eq!(
            ints(&w, 4),
            [(-4, 4), (-2, 2), (-1, 1), (0, -14), (1, 1), (2, 2), (4, 4)]
        );
    }

    #[test]
    fn f_squared_neg_inv_low_terms() {
        let g = f_squared_neg_inv(3, 8);
        assert_eq!(g.coeff(0).unwrap(), p_over_one_minus_p_sq(8));
        assert_eq!(g.coeff(1).unwrap().coeff(-1), Some(rat(0)));
        // (1 - p^{-1} q)^{-2} contributes 2 p^{-1} q; times p + 2p^2 + ... gives 2 at p^0
        assert_eq!(g.coeff(1).unwrap().coeff(0), Some(rat(2)));
        let f2 = f_squared(3, 6).unwrap();
        let one = qs_mul(&f2, &g).neg();
        let cmp = crate::series::qs_equal(&one, &QSeries::one().truncate_q(3));
        assert!(cmp.equal, "{:?}", cmp.first_mismatch);
    }

    #[test]
    fn elliptic_genus_low_layers() {
        let z = EllipticGenus::new(3, 0).unwrap();
        assert!(z.series().has_integer_coefficients());
        assert_eq!(ints(z.series(), 0), [(-1, 2), (0, 20), (1, 2)]);
        assert_eq!(
            ints(z.series(), 1),
            [(-2, 20), (-1, -128), (0, 216), (1, -128), (2, 20)]
        );
        assert_eq!(z.c(-1).unwrap(), 2.into());
        assert_eq!(z.c(0).unwrap(), 20.into());
        assert_eq!(z.c(3).unwrap(), (-128).into());
        assert_eq!(z.c(4).unwrap(), 216.into());
        assert_eq!(z.c(-4).unwrap(), 0.into());
        assert_eq!(z.c(1).unwrap(), 0.into());
        assert!(matches!(z.c(100), Err(Error::CoefficientOutOfRange(100))));
    }

    #[test]
    fn chi10_leading_layer() {
        let chi = chi10_tri(3, 1).unwrap();
        assert_eq!(chi.tq_offset(), 1);
        let l0 = chi.layer(0);
        assert_eq!(l0.q_offset(), 1);
        assert_eq!(ints(l0, 1), [(-1, 1), (0, -2), (1, 1)]);
        // layer 0 = q (p - 2 + p^-1) ∏ (1-q^d)^20 (1-p q^d)^2 (1-p^-1 q^d)^2
        let mut expect = QSeries::monomial(PLaurent::from_ints(-1, &[1, -2, 1], None), 1);
        for d in 1..=3 {
            expect = qs_mul(&expect, &binomial_factor(&rat(1), 0, d, 20, 3));
            expect = qs_mul(&expect, &binomial_factor(&rat(1), 1, d, 2, 3));
            expect = qs_mul(&expect, &binomial_factor(&rat(1), -1, d, 2, 3));
        }
        assert!(crate::series::qs_equal(l0, &expect).equal);
    }
}
