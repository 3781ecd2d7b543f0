//! The Andrews–El Bachraoui series `F_{k,1}(q)`, the transformation instances
//! that connect its forms, and the nonnegative decompositions behind its
//! positivity.
//!
//! `F_{k,1}` is normalised by the prefactor `q^{-1}`, so its constant term is 1
//! (the original series in the bicolored-partition setting starts at `q^1`).
//!
//! Every series returned here is checked to have integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::qobjects::{
    self, at_order, div_by_pochhammer, mul_by_pochhammer, pochhammer, q_binomial, PhiSpec, PochSpec,
};
use crate::series::{Monomial, SparsePoly, TruncSeries};
use crate::{Error, Result};

/// Which expression of `F_{k,1}` to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FkForm {
    /// `sum_n (q^{2n+2}, q^{2n+2k}; q^2)_inf / (q^{2n+1}; q^2)_inf^2 q^{2n}`
    Product,
    /// `sum_n (q^{2k-1}; q^2)_n q^n / (q; q^2)_{n+1}`
    Bbk,
    /// `sum_{n=0}^{k-2} [k-2 n]_{q^2} (q^2;q^2)_n q^{2n^2+2n} / (q;q^2)_{n+1}^2`, `k >= 2`
    Cw,
    /// `sum_n q^n / (1 - q^{2n+1})`, `k = 1`
    Lambert,
    /// `(q^2;q^2)_inf^2 / ((q;q^2)_inf^2 (q^2;q^2)_{k-1}) 2phi1(q, q; q^{2k}; q^2, q^2)`
    Phi,
}

impl FkForm {
    pub const ALL: [FkForm; 5] = [
        FkForm::Product,
        FkForm::Bbk,
        FkForm::Cw,
        FkForm::Lambert,
        FkForm::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FkForm::Product => "product",
            FkForm::Bbk => "bbk",
            FkForm::Cw => "cw",
            FkForm::Lambert => "lambert",
            FkForm::Phi => "phi",
        }
    }

    pub fn valid_for(self, k: u32) -> bool {
        match self {
            FkForm::Cw => k >= 2,
            FkForm::Lambert => k == 1,
            _ => k >= 1,
        }
    }
}

impl fmt::Display for FkForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FkForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FkForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown form '{s}'")))
    }
}

/// A target series written as an ordered sum of summands.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub target: TruncSeries,
    pub summands: Vec<TruncSeries>,
    pub labels: Vec<String>,
}

impl Decomposition {
    /// Sum of the summands, exact through the smallest summand order.
    pub fn sum(&self) -> TruncSeries {
        self.summands
            .iter()
            .fold(TruncSeries::zero(self.target.order()), |acc, s| &acc + s)
    }
}

fn q(e: i64) -> Monomial {
    Monomial::q(e)
}

fn one_minus_q(e: i64) -> SparsePoly {
    SparsePoly::one_minus(q(e))
}

fn integral(s: TruncSeries, what: impl FnOnce() -> String) -> Result<TruncSeries> {
    if s.is_integral() {
        Ok(s)
    } else {
        Err(Error::NonIntegral { what: what() })
    }
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

/// `(q^b; q^b)_n`-style finite symbol.
fn poch(arg: i64, base: u32, n: u64) -> PochSpec {
    PochSpec::finite(q(arg), base, n)
}

fn poch_inf(arg: i64, base: u32) -> PochSpec {
    PochSpec::infinite(q(arg), base)
}

fn div_twice(s: &TruncSeries, spec: &PochSpec) -> Result<TruncSeries> {
    div_by_pochhammer(&div_by_pochhammer(s, spec)?, spec)
}

/// Expansion of `F_{k,1}(q)` through `order` using the chosen form.
pub fn f_k1(k: u32, form: FkForm, order: i64) -> Result<TruncSeries> {
    need(k >= 1, || "k must be >= 1".into())?;
    if !form.valid_for(k) {
        return Err(Error::InvalidForm {
            form: form.name(),
            k,
        });
    }
    let s = match form {
        FkForm::Product => product_form(k, order)?,
        FkForm::Bbk => bbk_form(k, order)?,
        FkForm::Cw => cw_summands(k, order)?
            .iter()
            .fold(TruncSeries::zero(order), |acc, s| &acc + s),
        FkForm::Lambert => lambert_form(order)?,
        FkForm::Phi => phi_form(k, order)?,
    };
    integral(s, || format!("F_{{{k},1}} ({form} form)"))
}

fn product_form(k: u32, order: i64) -> Result<TruncSeries> {
    let k = k as i64;
    let mut acc = TruncSeries::zero(order);
    for n in 0..=order.div_euclid(2) {
        let mut t = TruncSeries::one(order - 2 * n);
        t = mul_by_pochhammer(&t, &poch_inf(2 * n + 2, 2))?;
        t = mul_by_pochhammer(&t, &poch_inf(2 * n + 2 * k, 2))?;
        t = div_twice(&t, &poch_inf(2 * n + 1, 2))?;
        t.shift_assign(2 * n);
        acc += &t;
    }
    Ok(acc)
}

/// Terms are updated in place: term_n = term_{n-1} q (1 - q^{2k+2n-3}) / (1 - q^{2n+1}).
fn bbk_form(k: u32, order: i64) -> Result<TruncSeries> {
    let k = k as i64;
    let mut term = TruncSeries::one(order).div_sparse(&one_minus_q(1))?;
    let mut acc = term.clone();
    for n in 1..=order {
        term.mul_sparse_assign(&one_minus_q(2 * k + 2 * n - 3));
        term.shift_assign(1);
        term.truncate_assign(order);
        term.div_sparse_assign(&one_minus_q(2 * n + 1))?;
        acc += &term;
    }
    Ok(acc)
}

fn lambert_form(order: i64) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(order);
    for n in 0..=order {
        let mut t = TruncSeries::one(order - n).div_sparse(&one_minus_q(2 * n + 1))?;
        t.shift_assign(n);
        acc += &t;
    }
    Ok(acc)
}

fn phi_form(k: u32, order: i64) -> Result<TruncSeries> {
    let prefactor = qobjects::multi_pochhammer(&[poch_inf(2, 2), poch_inf(2, 2)], order)?;
    let prefactor = div_twice(&prefactor, &poch_inf(1, 2))?;
    let prefactor = div_by_pochhammer(&prefactor, &poch(2, 2, k as u64 - 1))?;
    let series = qobjects::phi(
        &PhiSpec::new(vec![q(1), q(1)], vec![q(2 * k as i64)], 2, q(2)),
        order,
    )?;
    Ok(&prefactor * &series)
}

/// Summand `n` of the finite form:
/// `[k-2 n]_{q^2} (q^2;q^2)_n q^{2n^2+2n} / (q;q^2)_{n+1}^2`.
fn cw_summand(k: u32, n: u64, order: i64) -> Result<TruncSeries> {
    let shift = 2 * (n * n + n) as i64;
    if shift > order {
        return Ok(TruncSeries::zero(order));
    }
    let t = q_binomial(k as u64 - 2, n, 2, order - shift);
    let t = mul_by_pochhammer(&t, &poch(2, 2, n))?;
    let mut t = div_twice(&t, &poch(1, 2, n + 1))?;
    t.shift_assign(shift);
    Ok(t)
}

fn cw_summands(k: u32, order: i64) -> Result<Vec<TruncSeries>> {
    (0..=k as u64 - 2)
        .map(|n| cw_summand(k, n, order))
        .collect()
}

/// `(q^2;q^2)_n / (q;q^2)_n^2`, `n >= 1`.
pub fn ratio(n: u64, order: i64) -> Result<TruncSeries> {
    need(n >= 1, || "ratio needs n >= 1".into())?;
    let s = div_twice(&pochhammer(&poch(2, 2, n), order)?, &poch(1, 2, n))?;
    integral(s, || format!("ratio(n={n})"))
}

/// `(q^2;q^2)_n / (q;q^2)_{n+1}^2`, `n >= 0`.
pub fn ratio_corollary(n: u64, order: i64) -> Result<TruncSeries> {
    let s = div_twice(&pochhammer(&poch(2, 2, n), order)?, &poch(1, 2, n + 1))?;
    integral(s, || format!("ratio_corollary(n={n})"))
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `ratio(n) = sum_{i=0}^n [n i]_{q^2} q^i / ((q^{2i+1};q^2)_{n-i} (q^{2(n-i)+1};q^2)_i)`.
/// Every summand is a product of nonnegative series; summand 0 is `1/(q;q^2)_n`.
pub fn decompose_ratio(n: u64, order: i64) -> Result<Decomposition> {
    let target = ratio(n, order)?;
    let mut summands = Vec::new();
    let mut labels = Vec::new();
    for i in 0..=n {
        let ii = i as i64;
        let nn = n as i64;
        let s = if ii > order {
            TruncSeries::zero(order)
        } else {
            let t = q_binomial(n, i, 2, order - ii);
            let t = div_by_pochhammer(&t, &poch(2 * ii + 1, 2, n - i))?;
            let mut t = div_by_pochhammer(&t, &poch(2 * (nn - ii) + 1, 2, i))?;
            t.shift_assign(ii);
            t
        };
        summands.push(integral(s, || format!("decompose_ratio summand i={i}"))?);
        labels.push(format!(
            "i={i}: [{n} {i}]_{{q^2}} q^{i} / ((q^{};q^2)_{} (q^{};q^2)_{i})",
            2 * i + 1,
            n - i,
            2 * (n - i) + 1
        ));
    }
    Ok(Decomposition {
        name: "ratio".into(),
        params: params(&[("n", n as i64)]),
        target,
        summands,
        labels,
    })
}

/// The finite form of `F_{k,1}` as a decomposition of the `Bbk` expansion.
pub fn decompose_cw(k: u32, order: i64) -> Result<Decomposition> {
    need(k >= 2, || "decompose_cw needs k >= 2".into())?;
    let target = f_k1(k, FkForm::Bbk, order)?;
    let summands = cw_summands(k, order)?
        .into_iter()
        .enumerate()
        .map(|(n, s)| integral(s, || format!("decompose_cw summand n={n}")))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..=k - 2)
        .map(|n| {
            format!(
                "n={n}: [{} {n}]_{{q^2}} (q^2;q^2)_{n} q^{} / (q;q^2)_{}^2",
                k - 2,
                2 * n * n + 2 * n,
                n + 1
            )
        })
        .collect();
    Ok(Decomposition {
        name: "cw".into(),
        params: params(&[("k", k as i64)]),
        target,
        summands,
        labels,
    })
}

/// `sum_{i=0}^m (q;q^2)_i (q;q^2)_{m-i} / ((q^2;q^2)_i (q^2;q^2)_{m-i}) q^i = 1`,
/// with target the constant series 1.
pub fn one_substitution(m: u64, order: i64) -> Result<Decomposition> {
    let mut summands = Vec::new();
    let mut labels = Vec::new();
    for i in 0..=m {
        let ii = i as i64;
        let s = if ii > order {
            TruncSeries::zero(order)
        } else {
            let t = qobjects::multi_pochhammer(&[poch(1, 2, i), poch(1, 2, m - i)], order - ii)?;
            let t = div_by_pochhammer(&t, &poch(2, 2, i))?;
            let mut t = div_by_pochhammer(&t, &poch(2, 2, m - i))?;
            t.shift_assign(ii);
            t
        };
        summands.push(integral(s, || format!("one_substitution summand i={i}"))?);
        labels.push(format!(
            "i={i}: (q;q^2)_{i} (q;q^2)_{} q^{i} / ((q^2;q^2)_{i} (q^2;q^2)_{})",
            m - i,
            m - i
        ));
    }
    Ok(Decomposition {
        name: "one-sub".into(),
        params: params(&[("m", m as i64)]),
        target: TruncSeries::one(order),
        summands,
        labels,
    })
}

/// Left: the terminating `2phi1(q, q^{-2m}; q^{1-2m}; q^2, q^2)`.
/// Right: `(q^2;q^2)_m / (q;q^2)_m`.
pub fn chu_vandermonde_instance(m: u64, order: i64) -> Result<(TruncSeries, TruncSeries)> {
    let mm = m as i64;
    let spec = PhiSpec::new(vec![q(1), q(-2 * mm)], vec![q(1 - 2 * mm)], 2, q(2));
    let left = match qobjects::phi(&spec, order) {
        Err(Error::SingularParameter { term }) => {
            unreachable!("q^(1-2m) denominator vanished at term {term}")
        }
        other => other?,
    };
    let right = div_by_pochhammer(&pochhammer(&poch(2, 2, m), order)?, &poch(1, 2, m))?;
    Ok((left, right))
}

/// Heine's first transformation at `(a, b, c, z, q) = (q, q, q^{2k}, q^2, q^2)`.
/// Left: `2phi1(q, q; q^{2k}; q^2, q^2)`.
/// Right: `(q, q^3; q^2)_inf / (q^{2k}, q^2; q^2)_inf * 2phi1(q^{2k-1}, q^2; q^3; q^2, q)`.
pub fn heine_instance(k: u32, order: i64) -> Result<(TruncSeries, TruncSeries)> {
    need(k >= 1, || "k must be >= 1".into())?;
    let k = k as i64;
    let left = qobjects::phi(
        &PhiSpec::new(vec![q(1), q(1)], vec![q(2 * k)], 2, q(2)),
        order,
    )?;
    let pre = qobjects::multi_pochhammer(&[poch_inf(1, 2), poch_inf(3, 2)], order)?;
    let pre = div_by_pochhammer(&pre, &poch_inf(2 * k, 2))?;
    let pre = div_by_pochhammer(&pre, &poch_inf(2, 2))?;
    let series = qobjects::phi(
        &PhiSpec::new(vec![q(2 * k - 1), q(2)], vec![q(3)], 2, q(1)),
        order,
    )?;
    Ok((left, &pre * &series))
}

/// Fine's second transformation at `(a, b, z, q) = (q^{2k-3}, q, q, q^2)`.
/// Left: `2phi1(q^2, q^{2k-1}; q^3; q^2, q)`.
/// Right: `1/(1-q) sum_{n=0}^{k-2} (q^{4-2k};q^2)_n (-q^{2k-2})^n q^{n^2+n} / (q^3;q^2)_n^2`.
pub fn fine_instance(k: u32, order: i64) -> Result<(TruncSeries, TruncSeries)> {
    need(k >= 2, || "fine_instance needs k >= 2".into())?;
    let kk = k as i64;
    let left = qobjects::phi(
        &PhiSpec::new(vec![q(2), q(2 * kk - 1)], vec![q(3)], 2, q(1)),
        order,
    )?;
    let mut sum = TruncSeries::zero(order);
    for n in 0..=(kk - 2) {
        let t = pochhammer(&poch(4 - 2 * kk, 2, n as u64), order)?;
        let t = t.mul_monomial(Monomial::neg_q(2 * kk - 2).pow(n).shifted(n * n + n));
        let t = div_twice(&t, &poch(3, 2, n as u64))?;
        sum = &sum + &t;
    }
    let right = sum.div_sparse(&one_minus_q(1))?;
    Ok((left, right.truncate(order)))
}

/// Both sides of
/// `(q;q^2)_{m-i}/(q^2;q^2)_{m-i} = (q;q^2)_m/(q^2;q^2)_m (q^{-2m};q^2)_i/(q^{1-2m};q^2)_i q^i`.
pub fn pochhammer_reversal(m: u64, i: u64, order: i64) -> Result<(TruncSeries, TruncSeries)> {
    need(i <= m, || {
        format!("pochhammer_reversal needs i <= m, got i={i}, m={m}")
    })?;
    let mm = m as i64;
    let left = div_by_pochhammer(&pochhammer(&poch(1, 2, m - i), order)?, &poch(2, 2, m - i))?;
    let right = at_order(order, |w| {
        let t = div_by_pochhammer(&pochhammer(&poch(1, 2, m), w)?, &poch(2, 2, m))?;
        let t = mul_by_pochhammer(&t, &poch(-2 * mm, 2, i))?;
        let t = div_by_pochhammer(&t, &poch(1 - 2 * mm, 2, i))?;
        Ok(t.shift(i as i64))
    })?;
    Ok((left, right))
}

/// Both sides of
/// `(q^{4-2k};q^2)_n = (-1)^n q^{(4-2k)n+n^2-n} (q^2;q^2)_n [k-2 n]_{q^2}`.
pub fn binomial_rewrite(k: u32, n: u64, order: i64) -> Result<(TruncSeries, TruncSeries)> {
    need(k >= 2 && n <= k as u64 - 2, || {
        format!("binomial_rewrite needs 0 <= n <= k-2, got k={k}, n={n}")
    })?;
    let kk = k as i64;
    let nn = n as i64;
    let left = pochhammer(&poch(4 - 2 * kk, 2, n), order)?;
    let right = at_order(order, |w| {
        let t = &pochhammer(&poch(2, 2, n), w)? * &q_binomial(k as u64 - 2, n, 2, w);
        Ok(t.mul_monomial(
            Monomial::neg_q(0)
                .pow(nn)
                .shifted((4 - 2 * kk) * nn + nn * nn - nn),
        ))
    })?;
    Ok((left, right))
}

/// The third-order mock theta function `nu(q) = sum_n q^{n(n+1)} / (q;q^2)_{n+1}`.
pub fn nu(order: i64) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(order);
    let mut n = 0i64;
    while n * (n + 1) <= order {
        let shift = n * (n + 1);
        let mut t = div_by_pochhammer(&TruncSeries::one(order - shift), &poch(1, 2, n as u64 + 1))?;
        t.shift_assign(shift);
        acc += &t;
        n += 1;
    }
    integral(acc, || "nu".into())
}

/// `(U_2(nu(-q)), (q;q)_inf (-q;q)_inf^3, (q^2;q^2)_inf / (q;q^2)_inf^2)`.
pub fn mock_theta_triple(order: i64) -> Result<(TruncSeries, TruncSeries, TruncSeries)> {
    let unitized = nu(2 * order)?.negate_variable().unitize(2)?;
    let minus_q = PochSpec::infinite(Monomial::neg_q(1), 1);
    let product = qobjects::multi_pochhammer(&[poch_inf(1, 1), minus_q, minus_q, minus_q], order)?;
    let quotient = div_twice(&pochhammer(&poch_inf(2, 2), order)?, &poch_inf(1, 2))?;
    Ok((
        integral(unitized, || "U_2(nu(-q))".into())?,
        integral(product, || "(q;q)_inf (-q;q)_inf^3".into())?,
        integral(quotient, || "(q^2;q^2)_inf / (q;q^2)_inf^2".into())?,
    ))
}
