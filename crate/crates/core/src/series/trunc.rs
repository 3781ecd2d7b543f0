use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Coefficient, Monomial, SparsePoly};
use crate::{Error, Result};

/// A truncated Laurent series `sum_{e=valuation}^{order} c_e q^e + O(q^{order+1})`.
///
/// Coefficients are stored densely as integer numerators over one shared
/// positive denominator, kept in lowest terms. A series built only from
/// integer inputs and divisions by series with leading coefficient `±1`
/// keeps denominator 1, which [`TruncSeries::is_integral`] reports.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    valuation: i64,
    order: i64,
    numers: Vec<BigInt>,
    denom: BigInt,
}

fn window_len(valuation: i64, order: i64) -> usize {
    if order < valuation {
        0
    } else {
        (order - valuation + 1) as usize
    }
}

/// Integer multiplier with the `±1` cases split out; they dominate the hot
/// loops and avoid a multiplication plus allocation.
enum Multiplier<'a> {
    One,
    MinusOne,
    Other(&'a BigInt),
}

impl<'a> Multiplier<'a> {
    fn of(c: &'a BigInt) -> Self {
        if c.is_one() {
            Multiplier::One
        } else if c == &BigInt::from(-1) {
            Multiplier::MinusOne
        } else {
            Multiplier::Other(c)
        }
    }

    fn add_into(&self, target: &mut BigInt, src: &BigInt) {
        match self {
            Multiplier::One => *target += src,
            Multiplier::MinusOne => *target -= src,
            Multiplier::Other(c) => *target += src * *c,
        }
    }

    fn sub_from(&self, target: &mut BigInt, src: &BigInt) {
        match self {
            Multiplier::One => *target -= src,
            Multiplier::MinusOne => *target += src,
            Multiplier::Other(c) => *target -= src * *c,
        }
    }
}

impl TruncSeries {
    /// The zero series, exact through `order`. Its window starts at exponent
    /// 0, or is empty when `order < 0`.
    pub fn zero(order: i64) -> Self {
        let valuation = 0.min(order + 1);
        TruncSeries {
            valuation,
            order,
            numers: vec![BigInt::zero(); window_len(valuation, order)],
            denom: BigInt::one(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial_series(Monomial::ONE, order)
    }

    /// `sign * q^exponent`, or the zero series when the exponent lies beyond
    /// `order`.
    pub fn monomial_series(m: Monomial, order: i64) -> Self {
        if m.exponent > order {
            return Self::zero(order);
        }
        let mut numers = vec![BigInt::zero(); window_len(m.exponent, order)];
        numers[0] = BigInt::from(m.sign.value());
        TruncSeries {
            valuation: m.exponent,
            order,
            numers,
            denom: BigInt::one(),
        }
    }

    /// Integer coefficients starting at `valuation`. Missing coefficients up to
    /// `order` are zero; any beyond `order` are dropped.
    pub fn from_integers(
        valuation: i64,
        order: i64,
        coeffs: impl IntoIterator<Item = BigInt>,
    ) -> Self {
        let len = window_len(valuation, order);
        let mut numers: Vec<BigInt> = coeffs.into_iter().take(len).collect();
        numers.resize(len, BigInt::zero());
        let valuation = valuation.min(order + 1);
        TruncSeries {
            valuation,
            order,
            numers,
            denom: BigInt::one(),
        }
    }

    pub fn from_i64s(valuation: i64, order: i64, coeffs: &[i64]) -> Self {
        Self::from_integers(valuation, order, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn from_rationals(
        valuation: i64,
        order: i64,
        coeffs: impl IntoIterator<Item = BigRational>,
    ) -> Self {
        let len = window_len(valuation, order);
        let mut rats: Vec<BigRational> = coeffs.into_iter().take(len).collect();
        rats.resize(len, BigRational::zero());
        let denom = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let numers = rats
            .iter()
            .map(|r| r.numer() * (&denom / r.denom()))
            .collect();
        let mut s = TruncSeries {
            valuation: valuation.min(order + 1),
            order,
            numers,
            denom,
        };
        s.normalize();
        s
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// True when every coefficient through `order` is zero.
    pub fn is_zero(&self) -> bool {
        self.numers.iter().all(Zero::is_zero)
    }

    fn numer_at(&self, e: i64) -> Option<&BigInt> {
        if e < self.valuation || e > self.order {
            None
        } else {
            Some(&self.numers[(e - self.valuation) as usize])
        }
    }

    /// Exact coefficient of `q^e`; zero below the valuation.
    pub fn coefficient(&self, e: i64) -> Result<Coefficient> {
        if e > self.order {
            return Err(Error::BeyondTruncation {
                exponent: e,
                order: self.order,
            });
        }
        Ok(match self.numer_at(e) {
            None => Coefficient::zero(),
            Some(n) => Coefficient::new(n.clone(), self.denom.clone()),
        })
    }

    pub fn coefficients(&self, from: i64, to: i64) -> Result<Vec<Coefficient>> {
        (from..=to).map(|e| self.coefficient(e)).collect()
    }

    fn normalize(&mut self) {
        if self.denom.is_one() {
            return;
        }
        let mut g = self.denom.clone();
        for n in &self.numers {
            if g.is_one() {
                return;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if self.numers.iter().all(Zero::is_zero) {
            self.denom = BigInt::one();
            return;
        }
        for n in &mut self.numers {
            *n /= &g;
        }
        self.denom /= &g;
    }

    /// Drops leading zero coefficients. A series that is zero through its
    /// order ends up with an empty window at `order + 1`.
    pub fn trim(&self) -> TruncSeries {
        let mut s = self.clone();
        s.trim_assign();
        s
    }

    pub fn trim_assign(&mut self) {
        let lead = self.numers.iter().take_while(|n| n.is_zero()).count();
        self.numers.drain(..lead);
        self.valuation += lead as i64;
        if self.numers.is_empty() {
            self.valuation = self.order + 1;
            self.denom = BigInt::one();
        }
    }

    /// Forgets every coefficient above `order`. No-op when `order` is not
    /// below the current order.
    pub fn truncate(&self, order: i64) -> TruncSeries {
        let mut s = self.clone();
        s.truncate_assign(order);
        s
    }

    pub fn truncate_assign(&mut self, order: i64) {
        if order >= self.order {
            return;
        }
        if order < self.valuation {
            self.numers.clear();
            self.valuation = order + 1;
        } else {
            self.numers.truncate(window_len(self.valuation, order));
        }
        self.order = order;
        self.normalize();
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> TruncSeries {
        let mut s = self.clone();
        s.shift_assign(e);
        s
    }

    pub fn shift_assign(&mut self, e: i64) {
        self.valuation += e;
        self.order += e;
    }

    pub fn mul_monomial(&self, m: Monomial) -> TruncSeries {
        let mut s = self.shift(m.exponent);
        if m.sign.value() < 0 {
            s.numers.iter_mut().for_each(|n| *n = -std::mem::take(n));
        }
        s
    }

    pub fn scale(&self, c: &Coefficient) -> TruncSeries {
        let mut s = self.clone();
        for n in &mut s.numers {
            *n *= c.numer();
        }
        s.denom *= c.denom();
        s.normalize();
        s
    }

    fn combine(&self, other: &TruncSeries, subtract: bool) -> TruncSeries {
        let order = self.order.min(other.order);
        let valuation = self.valuation.min(other.valuation).min(order + 1);
        let (denom, fa, fb) = if self.denom.is_one() && other.denom.is_one() {
            (BigInt::one(), None, None)
        } else {
            let l = self.denom.lcm(&other.denom);
            let fa = &l / &self.denom;
            let fb = &l / &other.denom;
            (l, Some(fa), Some(fb))
        };
        let numers = (valuation..=order)
            .map(|e| {
                let a = match (self.numer_at(e), &fa) {
                    (None, _) => BigInt::zero(),
                    (Some(n), None) => n.clone(),
                    (Some(n), Some(f)) => n * f,
                };
                let b = match (other.numer_at(e), &fb) {
                    (None, _) => BigInt::zero(),
                    (Some(n), None) => n.clone(),
                    (Some(n), Some(f)) => n * f,
                };
                if subtract {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        let mut s = TruncSeries {
            valuation,
            order,
            numers,
            denom,
        };
        s.normalize();
        s
    }

    /// Cauchy product. The result order is the tight bound
    /// `min(a.order + b.valuation, b.order + a.valuation)`.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let valuation = self.valuation + other.valuation;
        let order = (self.order + other.valuation).min(other.order + self.valuation);
        let len = window_len(valuation, order);
        let mut out = vec![BigInt::zero(); len];
        let other_nz: Vec<(usize, &BigInt)> = other
            .numers
            .iter()
            .enumerate()
            .take(len)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.numers.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &other_nz {
                if i + j >= len {
                    break;
                }
                Multiplier::of(b).add_into(&mut out[i + j], a);
            }
        }
        let mut s = TruncSeries {
            valuation: valuation.min(order + 1),
            order,
            numers: out,
            denom: &self.denom * &other.denom,
        };
        s.normalize();
        s
    }

    /// The unique series `c` with `c * divisor = self` to the representable
    /// order. Leading zeros of the divisor are skipped.
    pub fn div(&self, divisor: &TruncSeries) -> Result<TruncSeries> {
        let b = divisor.trim();
        if b.numers.is_empty() {
            return Err(Error::DegenerateDivisor);
        }
        let valuation = self.valuation - b.valuation;
        let order =
            (self.order - b.valuation).min(b.order - b.valuation + self.valuation - b.valuation);
        let len = window_len(valuation, order);
        let lead = &b.numers[0];
        let tail: Vec<(usize, &BigInt)> = b
            .numers
            .iter()
            .enumerate()
            .skip(1)
            .take(len.saturating_sub(1))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let a_at = |i: usize| self.numers.get(i).cloned().unwrap_or_default();
        let numers = if lead.abs().is_one() {
            let negate = lead.is_negative();
            let mut c: Vec<BigInt> = Vec::with_capacity(len);
            for i in 0..len {
                let mut v = a_at(i);
                for &(t, bt) in &tail {
                    if t > i {
                        break;
                    }
                    Multiplier::of(bt).sub_from(&mut v, &c[i - t]);
                }
                if negate {
                    v = -v;
                }
                c.push(v);
            }
            c
        } else {
            let lead = BigRational::from_integer(lead.clone());
            let mut c: Vec<BigRational> = Vec::with_capacity(len);
            for i in 0..len {
                let mut v = BigRational::from_integer(a_at(i));
                for &(t, bt) in &tail {
                    if t > i {
                        break;
                    }
                    v -= &c[i - t] * bt;
                }
                c.push(v / &lead);
            }
            let factor = BigRational::new(b.denom.clone(), self.denom.clone());
            return Ok(TruncSeries::from_rationals(
                valuation,
                order,
                c.into_iter().map(|r| r * &factor),
            ));
        };
        let mut s = TruncSeries {
            valuation: valuation.min(order + 1),
            order,
            numers: numers.into_iter().map(|n| n * &b.denom).collect(),
            denom: self.denom.clone(),
        };
        s.normalize();
        Ok(s)
    }

    /// Multiplies by an exact Laurent polynomial. The order shifts by the
    /// polynomial's lowest exponent; the window length is preserved.
    pub fn mul_sparse(&self, p: &SparsePoly) -> TruncSeries {
        let mut s = self.clone();
        s.mul_sparse_assign(p);
        s
    }

    pub fn mul_sparse_assign(&mut self, p: &SparsePoly) {
        let Some(e0) = p.min_exponent() else {
            self.numers.iter_mut().for_each(|n| *n = BigInt::zero());
            self.denom = BigInt::one();
            return;
        };
        let terms = p.terms();
        let lead = Multiplier::of(&terms[0].1);
        let rest: Vec<(usize, Multiplier)> = terms[1..]
            .iter()
            .map(|(e, c)| ((e - e0) as usize, Multiplier::of(c)))
            .collect();
        for i in (0..self.numers.len()).rev() {
            let (lo, hi) = self.numers.split_at_mut(i);
            let cur = &mut hi[0];
            match lead {
                Multiplier::One => {}
                Multiplier::MinusOne => *cur = -std::mem::take(cur),
                Multiplier::Other(c) => *cur *= c,
            }
            for (d, m) in &rest {
                if *d > i {
                    break;
                }
                m.add_into(cur, &lo[i - d]);
            }
        }
        self.valuation += e0;
        self.order += e0;
        self.normalize();
    }

    /// Divides by an exact Laurent polynomial. The order shifts by minus the
    /// polynomial's lowest exponent.
    pub fn div_sparse(&self, p: &SparsePoly) -> Result<TruncSeries> {
        let mut s = self.clone();
        s.div_sparse_assign(p)?;
        Ok(s)
    }

    pub fn div_sparse_assign(&mut self, p: &SparsePoly) -> Result<()> {
        let Some(e0) = p.min_exponent() else {
            return Err(Error::DegenerateDivisor);
        };
        let terms = p.terms();
        if !terms[0].1.abs().is_one() {
            let span = self.order - self.valuation;
            let divisor = TruncSeries::from_integers(
                e0,
                e0 + span,
                (e0..=e0 + span).map(|e| match terms.binary_search_by_key(&e, |(te, _)| *te) {
                    Ok(k) => terms[k].1.clone(),
                    Err(_) => BigInt::zero(),
                }),
            );
            *self = self.div(&divisor)?;
            return Ok(());
        }
        let negate = terms[0].1.is_negative();
        let rest: Vec<(usize, Multiplier)> = terms[1..]
            .iter()
            .map(|(e, c)| ((e - e0) as usize, Multiplier::of(c)))
            .collect();
        for i in 0..self.numers.len() {
            let (lo, hi) = self.numers.split_at_mut(i);
            let cur = &mut hi[0];
            for (d, m) in &rest {
                if *d > i {
                    break;
                }
                m.sub_from(cur, &lo[i - d]);
            }
            if negate {
                *cur = -std::mem::take(cur);
            }
        }
        self.valuation -= e0;
        self.order -= e0;
        self.normalize();
        Ok(())
    }

    /// `q -> q^m`. The order becomes `m * order`.
    pub fn substitute_power(&self, m: u32) -> TruncSeries {
        assert!(m >= 1, "substitute_power needs m >= 1");
        let m = m as i64;
        let order = self.order * m;
        if self.numers.is_empty() {
            return TruncSeries {
                valuation: order + 1,
                order,
                numers: Vec::new(),
                denom: BigInt::one(),
            };
        }
        let valuation = self.valuation * m;
        let mut numers = vec![BigInt::zero(); window_len(valuation, order)];
        for (i, n) in self.numers.iter().enumerate() {
            numers[i * m as usize] = n.clone();
        }
        TruncSeries {
            valuation,
            order,
            numers,
            denom: self.denom.clone(),
        }
    }

    /// `q -> -q`.
    pub fn negate_variable(&self) -> TruncSeries {
        let mut s = self.clone();
        let v = s.valuation;
        for (i, n) in s.numers.iter_mut().enumerate() {
            if (v + i as i64).rem_euclid(2) == 1 {
                *n = -std::mem::take(n);
            }
        }
        s
    }

    /// The unitizing operator: `sum a_n q^n -> sum a_{mn} q^n`, exact through
    /// `floor(order / m)`.
    pub fn unitize(&self, m: u32) -> Result<TruncSeries> {
        assert!(m >= 1, "unitize needs m >= 1");
        let s = self.trim();
        if s.valuation < 0 {
            return Err(Error::NotAPowerSeries {
                valuation: s.valuation,
            });
        }
        let m = m as i64;
        let order = s.order.div_euclid(m);
        let numers = (0..=order)
            .map(|n| s.numer_at(n * m).cloned().unwrap_or_default())
            .collect();
        let mut out = TruncSeries {
            valuation: 0.min(order + 1),
            order,
            numers,
            denom: s.denom,
        };
        out.normalize();
        Ok(out)
    }

    /// Smallest exponent `<= upto` at which the two series differ, treating
    /// unstored low exponents as zero. Both orders must be at least `upto`.
    pub fn first_difference(&self, other: &TruncSeries, upto: i64) -> Option<i64> {
        debug_assert!(upto <= self.order && upto <= other.order);
        let lo = self.valuation.min(other.valuation);
        let zero = BigInt::zero();
        let same_denom = self.denom == other.denom;
        (lo..=upto).find(|&e| {
            let a = self.numer_at(e).unwrap_or(&zero);
            let b = other.numer_at(e).unwrap_or(&zero);
            if same_denom {
                a != b
            } else {
                a * &other.denom != b * &self.denom
            }
        })
    }

    /// Equality of all coefficients through `n`. False when either series is
    /// not known that far.
    pub fn eq_to_order(&self, other: &TruncSeries, n: i64) -> bool {
        n <= self.order && n <= other.order && self.first_difference(other, n).is_none()
    }
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.first_difference(other, self.order).is_none()
    }
}

impl Eq for TruncSeries {}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, false)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, true)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::mul(self, rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.mul_monomial(Monomial::neg_q(0))
    }
}

impl AddAssign<&TruncSeries> for TruncSeries {
    fn add_assign(&mut self, rhs: &TruncSeries) {
        if !(self.denom.is_one() && rhs.denom.is_one() && rhs.valuation >= self.valuation) {
            *self = &*self + rhs;
            return;
        }
        self.truncate_assign(rhs.order);
        let offset = (rhs.valuation - self.valuation) as usize;
        for (dst, src) in self.numers.iter_mut().skip(offset).zip(&rhs.numers) {
            *dst += src;
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, n) in self.numers.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let c = Coefficient::new(n.clone(), self.denom.clone());
            let e = self.valuation + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.order + 1)
    }
}
