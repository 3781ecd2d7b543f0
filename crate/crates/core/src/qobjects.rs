//! q-Pochhammer symbols, Gaussian binomials and basic hypergeometric series
//! with monomial parameters.
//!
//! Every product is applied factor by factor as an exact [`SparsePoly`], so a
//! truncated series multiplied or divided by a Pochhammer symbol keeps every
//! coefficient it can know.

use crate::series::{Monomial, Sign, SparsePoly, TruncSeries};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// `(arg; q^base)_length`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub arg: Monomial,
    pub base: u32,
    pub length: Length,
}

impl PochSpec {
    pub fn finite(arg: Monomial, base: u32, n: u64) -> Self {
        PochSpec {
            arg,
            base,
            length: Length::Finite(n),
        }
    }

    pub fn infinite(arg: Monomial, base: u32) -> Self {
        PochSpec {
            arg,
            base,
            length: Length::Infinite,
        }
    }

    fn factor_exponent(&self, k: u64) -> i64 {
        self.arg.exponent + self.base as i64 * k as i64
    }

    /// `1 - arg * q^{base * k}`
    pub fn factor(&self, k: u64) -> SparsePoly {
        SparsePoly::one_minus(self.arg.shifted(self.base as i64 * k as i64))
    }

    fn validate(&self) -> Result<()> {
        if self.base == 0 {
            return Err(Error::InvalidArgument(
                "Pochhammer base must be >= 1".into(),
            ));
        }
        if self.length == Length::Infinite && self.arg.exponent <= 0 {
            return Err(Error::DivergentProduct {
                exponent: self.arg.exponent,
            });
        }
        Ok(())
    }

    /// Number of leading factors that can change a series whose window spans
    /// `span = order - valuation`. Factor exponents increase with `k`, so once
    /// one exceeds the span every later factor is `1 + O(q^{span+1})`.
    fn active_factors(&self, span: i64) -> u64 {
        let b = self.base as i64;
        let reach = if span < self.arg.exponent {
            0
        } else {
            ((span - self.arg.exponent) / b + 1) as u64
        };
        match self.length {
            Length::Finite(n) => n.min(reach),
            Length::Infinite => reach,
        }
    }

    /// Sum of the negative factor valuations; the precision a product of the
    /// whole symbol costs a truncated series.
    fn negative_valuation(&self) -> i64 {
        let n = match self.length {
            Length::Finite(n) => n,
            Length::Infinite => return 0,
        };
        (0..n)
            .map(|k| self.factor_exponent(k))
            .take_while(|&e| e < 0)
            .sum()
    }
}

pub fn mul_by_pochhammer(s: &TruncSeries, spec: &PochSpec) -> Result<TruncSeries> {
    spec.validate()?;
    let mut out = s.clone();
    for k in 0..spec.active_factors(s.order() - s.valuation()) {
        out.mul_sparse_assign(&spec.factor(k));
    }
    Ok(out)
}

/// Divides factor by factor; a vanishing factor is a
/// [`Error::DegenerateDivisor`].
pub fn div_by_pochhammer(s: &TruncSeries, spec: &PochSpec) -> Result<TruncSeries> {
    spec.validate()?;
    let mut out = s.clone();
    for k in 0..spec.active_factors(s.order() - s.valuation()) {
        out.div_sparse_assign(&spec.factor(k))?;
    }
    Ok(out)
}

/// The expansion of `(A; q^b)_n` through `order`. For `n = ∞` the argument
/// must be a positive power of `q`.
pub fn pochhammer(spec: &PochSpec, order: i64) -> Result<TruncSeries> {
    multi_pochhammer(std::slice::from_ref(spec), order)
}

/// `(A_1, ..., A_m; q^b)_n` as a product of the individual symbols.
pub fn multi_pochhammer(specs: &[PochSpec], order: i64) -> Result<TruncSeries> {
    for spec in specs {
        spec.validate()?;
    }
    let working = order - specs.iter().map(PochSpec::negative_valuation).sum::<i64>();
    let mut out = TruncSeries::one(working);
    for spec in specs {
        out = mul_by_pochhammer(&out, spec)?;
    }
    Ok(out.truncate(order))
}

/// The Gaussian binomial `[m choose n]` in `q^base`, zero outside `0 <= n <= m`.
pub fn q_binomial(m: u64, n: u64, base: u32, order: i64) -> TruncSeries {
    if n > m {
        return TruncSeries::zero(order);
    }
    let b = base as i64;
    let sym = |len| PochSpec::finite(Monomial::q(b), base, len);
    let num = pochhammer(&sym(m), order).expect("positive-exponent Pochhammer");
    let out = div_by_pochhammer(&num, &sym(n))
        .and_then(|s| div_by_pochhammer(&s, &sym(m - n)))
        .expect("(q^b;q^b)_n never vanishes");
    assert!(
        out.is_integral(),
        "Gaussian binomial [{m} {n}] came out non-integral"
    );
    out
}

/// Runs `compute` at increasing working orders until its result is exact
/// through `order`, then truncates. Laurent factors make the precision loss of
/// a pipeline hard to predict up front but it is an additive constant, so the
/// second attempt normally succeeds.
pub(crate) fn at_order(
    order: i64,
    mut compute: impl FnMut(i64) -> Result<TruncSeries>,
) -> Result<TruncSeries> {
    let mut working = order;
    for _ in 0..16 {
        let s = compute(working)?;
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
        working += order - s.order();
    }
    Err(Error::InsufficientPrecision {
        requested: order,
        available: working,
    })
}

/// `_rφ_s(A_1..A_r; B_1..B_s; q^base, z)`, with every parameter a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    pub upper: Vec<Monomial>,
    pub lower: Vec<Monomial>,
    pub base: u32,
    pub argument: Monomial,
    /// Number of terms to sum, overriding the automatic cutoff.
    pub term_bound: Option<u64>,
}

impl PhiSpec {
    pub fn new(upper: Vec<Monomial>, lower: Vec<Monomial>, base: u32, argument: Monomial) -> Self {
        PhiSpec {
            upper,
            lower,
            base,
            argument,
            term_bound: None,
        }
    }

    pub fn with_term_bound(mut self, terms: u64) -> Self {
        self.term_bound = Some(terms);
        self
    }

    /// `s - r + 1`, the power of `(-1)^n q^{base * C(n,2)}` in each term.
    fn excess(&self) -> i64 {
        self.lower.len() as i64 - self.upper.len() as i64 + 1
    }

    /// Largest index `m` with a nonzero term, when an upper parameter is
    /// `q^{-base*m}`.
    pub fn terminates_after(&self) -> Option<u64> {
        let b = self.base as i64;
        self.upper
            .iter()
            .filter(|a| a.sign == Sign::Plus && a.exponent <= 0 && a.exponent % b == 0)
            .map(|a| (-a.exponent / b) as u64)
            .min()
    }

    /// How many leading terms can contribute to exponents `<= order`.
    pub fn term_count(&self, order: i64) -> Result<u64> {
        if self.base == 0 {
            return Err(Error::InvalidArgument("phi base must be >= 1".into()));
        }
        let limit = match (self.terminates_after().map(|m| m + 1), self.term_bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(limit) = limit {
            return Ok(limit);
        }
        let b = self.base as i64;
        let c = self.excess();
        let ez = self.argument.exponent;
        if c < 0 || (c == 0 && ez <= 0) {
            return Err(Error::NonConvergentTruncation);
        }
        // Past `threshold` no factor 1 - A q^{bj} has negative valuation, and the
        // valuation step c*b*j + ez is nondecreasing in j.
        let threshold = self
            .upper
            .iter()
            .chain(&self.lower)
            .map(|m| {
                if m.exponent < 0 {
                    (-m.exponent + b - 1) / b
                } else {
                    0
                }
            })
            .max()
            .unwrap_or(0);
        let fv = |m: &Monomial, j: i64| (m.exponent + b * j).min(0);
        let mut valuation = 0i64;
        let mut n = 0i64;
        loop {
            let step = self.upper.iter().map(|a| fv(a, n)).sum::<i64>()
                - self.lower.iter().map(|l| fv(l, n)).sum::<i64>()
                + c * b * n
                + ez;
            if n >= threshold && step > 0 && valuation > order {
                return Ok(n as u64);
            }
            valuation += step;
            n += 1;
        }
    }
}

/// Exact partial sum of every term of the series that reaches exponents
/// `<= order`. Terms are built as running ratios of Laurent series.
pub fn phi(spec: &PhiSpec, order: i64) -> Result<TruncSeries> {
    let terms = spec.term_count(order)?;
    at_order(order, |working| phi_partial_sum(spec, terms, working))
}

fn phi_partial_sum(spec: &PhiSpec, terms: u64, working: i64) -> Result<TruncSeries> {
    let b = spec.base as i64;
    let c = spec.excess();
    let mut term = TruncSeries::one(working);
    let mut sum = term.clone();
    for n in 1..terms {
        let j = n as i64 - 1;
        for a in &spec.upper {
            let factor = SparsePoly::one_minus(a.shifted(b * j));
            if factor.is_zero() {
                return Ok(sum);
            }
            term.mul_sparse_assign(&factor);
        }
        term = term.mul_monomial(Monomial::neg_q(b * j).pow(c).times(spec.argument));
        term.div_sparse_assign(&SparsePoly::one_minus(Monomial::q(b * n as i64)))?;
        for l in &spec.lower {
            let factor = SparsePoly::one_minus(l.shifted(b * j));
            if factor.is_zero() {
                return Err(Error::SingularParameter { term: n });
            }
            term.div_sparse_assign(&factor)?;
        }
        term.truncate_assign(working);
        sum += &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries, from: i64, to: i64) -> Vec<i64> {
        s.coefficients(from, to)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c.to_integer().unwrap()).unwrap())
            .collect()
    }

    /// Dense i64 power series helpers, independent of the series engine.
    fn naive_mul_binomial(v: &mut [i64], sign: i64, e: usize) {
        for i in (e..v.len()).rev() {
            v[i] -= sign * v[i - e];
        }
    }

    fn naive_div_binomial(v: &mut [i64], e: usize) {
        for i in e..v.len() {
            v[i] += v[i - e];
        }
    }

    #[test]
    fn pochhammer_examples() {
        let p = pochhammer(&PochSpec::finite(Monomial::q(1), 2, 2), 10).unwrap();
        assert_eq!(ints(&p, 0, 6), vec![1, -1, 0, -1, 1, 0, 0]);
        let empty = pochhammer(&PochSpec::finite(Monomial::neg_q(-3), 1, 0), 4).unwrap();
        assert_eq!(empty, TruncSeries::one(4));
        let l = pochhammer(&PochSpec::finite(Monomial::q(-4), 2, 1), 3).unwrap();
        assert_eq!(l.valuation(), -4);
        assert_eq!(ints(&l, -4, 3), vec![-1, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn divergent_infinite_product() {
        let err = pochhammer(&PochSpec::infinite(Monomial::q(0), 1), 5).unwrap_err();
        assert_eq!(err, Error::DivergentProduct { exponent: 0 });
    }

    #[test]
    fn vanishing_pochhammer() {
        let z = pochhammer(&PochSpec::finite(Monomial::ONE, 1, 3), 5).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn multi_pochhammer_examples() {
        let specs = [
            PochSpec::infinite(Monomial::q(2), 2),
            PochSpec::infinite(Monomial::q(4), 2),
        ];
        let p = multi_pochhammer(&specs, 3).unwrap();
        assert_eq!(ints(&p, 0, 3), vec![1, 0, -1, 0]);
        assert_eq!(multi_pochhammer(&[], 5).unwrap(), TruncSeries::one(5));
        let one = PochSpec::finite(Monomial::q(1), 2, 1);
        assert_eq!(
            ints(&multi_pochhammer(&[one, one], 4).unwrap(), 0, 4),
            vec![1, -2, 1, 0, 0]
        );
    }

    #[test]
    fn laurent_pochhammer_exact() {
        // (q^-5; q^2)_4 = (1-q^-5)(1-q^-3)(1-q^-1)(1-q), valuation -9.
        let p = pochhammer(&PochSpec::finite(Monomial::q(-5), 2, 4), 2).unwrap();
        let mut v = vec![0i64; 12];
        v[0] = 1;
        // -q^-9 (1-q^5)(1-q^3)(1-q)(1-q)
        for e in [5usize, 3, 1, 1] {
            naive_mul_binomial(&mut v, 1, e);
        }
        let oracle: Vec<i64> = v.iter().map(|c| -c).collect();
        assert_eq!(p.valuation(), -9);
        assert_eq!(ints(&p, -9, 2), oracle);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(ints(&q_binomial(2, 1, 1, 5), 0, 5), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(q_binomial(7, 0, 2, 9), TruncSeries::one(9));
        assert!(q_binomial(1, 2, 1, 9).is_zero());
        assert_eq!(
            ints(&q_binomial(4, 2, 1, 6), 0, 6),
            vec![1, 1, 2, 1, 1, 0, 0]
        );
    }

    #[test]
    fn phi_chu_vandermonde_m1() {
        let spec = PhiSpec::new(
            vec![Monomial::q(1), Monomial::q(-2)],
            vec![Monomial::q(-1)],
            2,
            Monomial::q(2),
        );
        assert_eq!(spec.term_count(10).unwrap(), 2);
        let s = phi(&spec, 10).unwrap();
        assert_eq!(ints(&s, 0, 10), vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn phi_with_unit_upper_parameter() {
        let spec = PhiSpec::new(
            vec![Monomial::ONE, Monomial::q(3)],
            vec![Monomial::q(5)],
            1,
            Monomial::q(1),
        );
        assert_eq!(phi(&spec, 8).unwrap(), TruncSeries::one(8));
    }

    #[test]
    fn phi_matches_term_summation() {
        // 2phi1(q, q; q^2; q^2, q^2) = sum (q;q^2)_n^2 q^{2n} / (q^2;q^2)_n^2
        let order = 6;
        let spec = PhiSpec::new(
            vec![Monomial::q(1), Monomial::q(1)],
            vec![Monomial::q(2)],
            2,
            Monomial::q(2),
        );
        let len = order as usize + 1;
        let mut oracle = vec![0i64; len];
        for n in 0..=order as usize / 2 {
            let mut t = vec![0i64; len];
            t[2 * n] = 1;
            for j in 0..n {
                naive_mul_binomial(&mut t, 1, 2 * j + 1);
                naive_mul_binomial(&mut t, 1, 2 * j + 1);
                naive_div_binomial(&mut t, 2 * j + 2);
                naive_div_binomial(&mut t, 2 * j + 2);
            }
            oracle.iter_mut().zip(&t).for_each(|(o, x)| *o += x);
        }
        assert_eq!(ints(&phi(&spec, order).unwrap(), 0, order), oracle);
    }

    #[test]
    fn phi_errors() {
        let singular = PhiSpec::new(
            vec![Monomial::q(1), Monomial::q(-4)],
            vec![Monomial::q(-2)],
            2,
            Monomial::q(2),
        );
        assert_eq!(
            phi(&singular, 5).unwrap_err(),
            Error::SingularParameter { term: 2 }
        );
        let stuck = PhiSpec::new(
            vec![Monomial::q(1), Monomial::q(1)],
            vec![Monomial::q(3)],
            1,
            Monomial::q(0),
        );
        assert_eq!(phi(&stuck, 5).unwrap_err(), Error::NonConvergentTruncation);
        let bounded = stuck.clone().with_term_bound(3);
        assert!(phi(&bounded, 5).is_ok());
    }

    #[test]
    fn terminating_detection_ignores_term_bound() {
        for m in 0..6u64 {
            let spec = PhiSpec::new(
                vec![Monomial::q(1), Monomial::q(-2 * m as i64)],
                vec![Monomial::q(1 - 2 * m as i64)],
                2,
                Monomial::q(2),
            );
            let bounded = spec.clone().with_term_bound(m + 1);
            assert_eq!(phi(&spec, 30).unwrap(), phi(&bounded, 30).unwrap());
        }
    }

    #[test]
    fn pochhammer_recursion() {
        for (arg, base) in [
            (Monomial::q(-3), 2u32),
            (Monomial::neg_q(1), 1),
            (Monomial::q(2), 3),
        ] {
            for n in 1..8u64 {
                let full = pochhammer(&PochSpec::finite(arg, base, n), 25).unwrap();
                let prev = pochhammer(&PochSpec::finite(arg, base, n - 1), 60).unwrap();
                let step = prev.mul_sparse(&SparsePoly::one_minus(
                    arg.shifted(base as i64 * (n as i64 - 1)),
                ));
                assert!(full.eq_to_order(&step, 25), "arg {arg} base {base} n {n}");
            }
        }
    }

    #[test]
    fn infinite_truncation_stability() {
        let spec = PochSpec::infinite(Monomial::neg_q(1), 1);
        let long = pochhammer(&spec, 80).unwrap();
        for n0 in [0, 1, 7, 33, 79] {
            assert_eq!(long.truncate(n0), pochhammer(&spec, n0).unwrap());
        }
    }

    #[test]
    fn q_binomial_pascal_symmetry_and_count() {
        let order = 200;
        for base in [1u32, 2] {
            for m in 1..12u64 {
                for n in 0..=m {
                    let qb = q_binomial(m, n, base, order);
                    assert_eq!(qb, q_binomial(m, m - n, base, order));
                    let coeffs = qb.coefficients(0, order).unwrap();
                    assert!(coeffs.iter().all(|c| c.is_integer() && !c.is_negative()));
                    let total: i64 = ints(&qb, 0, order).iter().sum();
                    let binom = (0..n).fold(1i64, |acc, i| acc * (m - i) as i64 / (i as i64 + 1));
                    assert_eq!(total, binom);
                    let degree = (n * (m - n)) as i64 * base as i64;
                    assert!(!qb.coefficient(degree).unwrap().is_zero());
                    assert!(ints(&qb, degree + 1, order).iter().all(|&c| c == 0));
                    if (1..m).contains(&n) {
                        let pascal = &q_binomial(m - 1, n - 1, base, order)
                            + &q_binomial(m - 1, n, base, order).shift(base as i64 * n as i64);
                        assert!(qb.eq_to_order(&pascal, order));
                    }
                }
            }
        }
    }
}
