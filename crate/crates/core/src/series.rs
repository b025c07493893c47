//! Formal power series over the integers, truncated at a fixed degree, and
//! the rational generating functions for every count in the crate.
//!
//! Every denominator has constant term 1, so division is exact forward
//! substitution and coefficients stay integral.

use std::fmt;

use crate::error::{Error, Result};

/// Degree used when the caller has no reason to pick another. Coefficients
/// of the sequences here grow like `2^n`, so 64 is the `i64` horizon.
pub const DEFAULT_DEGREE: usize = 64;

/// Coefficients of `x^0 ..= x^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coefficients: Vec<i64>,
}

fn overflow(index: usize) -> Error {
    Error::Overflow {
        what: "series coefficient",
        index: index as u64,
    }
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coefficients: vec![0; degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(1, 0, degree)
    }

    /// `coefficient · x^power`, zero if `power > degree`.
    pub fn monomial(coefficient: i64, power: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if power <= degree {
            s.coefficients[power] = coefficient;
        }
        s
    }

    /// Pads with zeros or drops terms so exactly `degree + 1` remain.
    pub fn from_coefficients(mut coefficients: Vec<i64>, degree: usize) -> Self {
        coefficients.resize(degree + 1, 0);
        Self { coefficients }
    }

    /// Polynomial `Σ coefficient · x^power`; repeated powers accumulate.
    pub fn from_terms<I>(terms: I, degree: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut s = Self::zero(degree);
        for (power, c) in terms {
            if power <= degree {
                let slot = &mut s.coefficients[power];
                *slot = slot.checked_add(c).ok_or_else(|| overflow(power))?;
            }
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Coefficient of `x^power`; `None` beyond the truncation degree.
    pub fn coefficient(&self, power: usize) -> Option<i64> {
        self.coefficients.get(power).copied()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .enumerate()
            .map(|(k, (a, b))| a.checked_add(*b).ok_or_else(|| overflow(k)))
            .collect::<Result<_>>()?;
        Ok(Self { coefficients })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .enumerate()
            .map(|(k, (a, b))| a.checked_sub(*b).ok_or_else(|| overflow(k)))
            .collect::<Result<_>>()?;
        Ok(Self { coefficients })
    }

    /// Cauchy product truncated at the common degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let n = self.degree();
        let mut out = vec![0i64; n + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coefficients[..=n - i].iter().enumerate() {
                let term = a.checked_mul(b).ok_or_else(|| overflow(i + j))?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or_else(|| overflow(i + j))?;
            }
        }
        Ok(Self { coefficients: out })
    }

    /// The `q` with `q · denominator = self` through the truncation degree.
    /// The denominator's constant term must be `±1`.
    pub fn div(&self, denominator: &Self) -> Result<Self> {
        self.check_degree(denominator)?;
        let d0 = denominator.coefficients[0];
        if d0 != 1 && d0 != -1 {
            return Err(Error::NonUnitConstant(d0));
        }
        let n = self.degree();
        let mut q = vec![0i64; n + 1];
        for k in 0..=n {
            let mut acc = self.coefficients[k];
            for j in 1..=k {
                let dj = denominator.coefficients[j];
                if dj == 0 {
                    continue;
                }
                let term = dj.checked_mul(q[k - j]).ok_or_else(|| overflow(k))?;
                acc = acc.checked_sub(term).ok_or_else(|| overflow(k))?;
            }
            // d0 is ±1, so dividing is multiplying.
            q[k] = acc * d0;
        }
        Ok(Self { coefficients: q })
    }

    /// Multiplies by `x^k`, dropping what falls past the degree.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.degree();
        let mut out = vec![0; n + 1];
        if k <= n {
            out[k..].copy_from_slice(&self.coefficients[..=n - k]);
        }
        Self { coefficients: out }
    }

    pub fn neg(&self) -> Result<Self> {
        Self::zero(self.degree()).sub(self)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(x^{})", self.coefficients, self.degree() + 1)
    }
}

/// `D_m(x) = 1 - x - x^2 - … - x^m`.
pub fn denominator(m: u32, degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(degree);
    for i in 1..=(m as usize).min(degree) {
        s.coefficients[i] = -1;
    }
    s
}

fn require_order(m: u32, min: u32) -> Result<()> {
    if m < min {
        return Err(Error::RecurrenceOrder { order: m, min });
    }
    Ok(())
}

/// `(1 - Σ_{i=2}^{m-1} (i-1) x^i) / D_m`, generating `G^(m)`.
pub fn generalized_fibonacci_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 1)?;
    let numerator = TruncatedSeries::from_terms(
        std::iter::once((0, 1)).chain((2..m as usize).map(|i| (i, -(i as i64 - 1)))),
        degree,
    )?;
    numerator.div(&denominator(m, degree))
}

/// `(m - Σ_{i=1}^{m-1} (m-i) x^i) / D_m`, generating `H^(m)`.
pub fn generalized_lucas_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 1)?;
    let m64 = i64::from(m);
    let numerator = TruncatedSeries::from_terms(
        std::iter::once((0, m64)).chain((1..m as usize).map(|i| (i, -(m64 - i as i64)))),
        degree,
    )?;
    numerator.div(&denominator(m, degree))
}

/// `x^(m-2) (1 - x) / D_m`, generating `P^(m)`.
pub fn colored_composition_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 2)?;
    let base = m as usize - 2;
    let numerator = TruncatedSeries::from_terms([(base, 1), (base + 1, -1)], degree)?;
    numerator.div(&denominator(m, degree))
}

/// `x^k (1 - x) / D_{m+1}`: coefficient `n` is how many color-0 parts `k`
/// occur among the primitives of `L_m` in `F_n`.
pub fn primitive_count_gf(m: u32, k: usize, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 1)?;
    let numerator = TruncatedSeries::from_terms([(k, 1), (k + 1, -1)], degree)?;
    numerator.div(&denominator(m + 1, degree))
}

/// `x^2 Σ_{i=0}^{m-1} (i+1) x^i / D_{m+1}`: zeros in `L_m`.
pub fn segment_zeros_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 1)?;
    let numerator =
        TruncatedSeries::from_terms((0..m as usize).map(|i| (i + 2, i as i64 + 1)), degree)?;
    numerator.div(&denominator(m + 1, degree))
}

/// `x^2 Σ_{i=0}^{m-1} x^i / ((1 - x) D_{m+1})`: ones in `L_m`.
pub fn segment_ones_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    require_order(m, 1)?;
    let numerator = TruncatedSeries::from_terms((0..m as usize).map(|i| (i + 2, 1)), degree)?;
    let one_minus_x = TruncatedSeries::from_terms([(0, 1), (1, -1)], degree)?;
    numerator.div(&one_minus_x.mul(&denominator(m + 1, degree))?)
}

/// `(-x + Σ_{i=3}^{m+1} (i-2) x^i) / D_{m+1}`: skew of `K_m` for `n >= 1`.
pub fn suffix_skew_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    let numerator = TruncatedSeries::from_terms(
        std::iter::once((1, -1)).chain((3..=m as usize + 1).map(|i| (i, i as i64 - 2))),
        degree,
    )?;
    numerator.div(&denominator(m + 1, degree))
}

/// `Σ_{i=1}^{m+1} i x^i / D_{m+1}`: length of `K_m` for `n >= 1`.
pub fn suffix_length_gf(m: u32, degree: usize) -> Result<TruncatedSeries> {
    let numerator =
        TruncatedSeries::from_terms((1..=m as usize + 1).map(|i| (i, i as i64)), degree)?;
    numerator.div(&denominator(m + 1, degree))
}
