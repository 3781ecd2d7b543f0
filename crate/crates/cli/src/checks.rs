use std::fs;
use std::path::Path;

use qseries::aeb::{self, Decomposition, FkForm};
use qseries::verify::{
    assert_equal, assert_positive, check_decomposition, emit_certificate, VerifyReport,
};
use qseries::{Coefficient, Error, TruncSeries};
use rayon::prelude::*;

use crate::args::{Identity, Params, SeriesName, Span, Target};

/// Why a command could not produce a clean pass.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameter values; exit 2.
    Usage(String),
    /// The mathematics failed or could not be carried out; exit 1.
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::InvalidForm { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Reports = Result<Vec<VerifyReport>, Failure>;

/// Parameter labels paired with the series they select.
type Labeled = (Vec<(String, String)>, TruncSeries);

fn required(span: Option<Span>, flag: &str, what: &str) -> Result<Span, Failure> {
    span.ok_or_else(|| Failure::Usage(format!("{what} needs --{flag}")))
}

fn at_least(span: Span, min: u64, flag: &str, what: &str) -> Result<Span, Failure> {
    if span.lo < min {
        return Err(Failure::Usage(format!(
            "{what} needs --{flag} >= {min}, got {}",
            span.lo
        )));
    }
    Ok(span)
}

/// Runs one job per parameter in parallel and concatenates the reports in
/// parameter order.
fn fan_out<T: Sync>(params: &[T], job: impl Fn(&T) -> Reports + Sync + Send) -> Reports {
    let parts: Vec<Reports> = params.par_iter().map(job).collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

fn u32_values(span: Span) -> Result<Vec<u32>, Failure> {
    span.values()
        .map(|v| {
            u32::try_from(v).map_err(|_| Failure::Usage(format!("parameter {v} is too large")))
        })
        .collect()
}

fn equal(
    check: &str,
    l: &TruncSeries,
    r: &TruncSeries,
    order: i64,
    params: &[(&str, i64)],
) -> Reports {
    Ok(vec![assert_equal(l, r, order)?.labeled(check, params)])
}

/// Rejects a form that is undefined for some `k` in the range.
pub fn check_form(form: FkForm, k: Option<Span>) -> Result<(), Failure> {
    if let Some(k) = k {
        if let Some(bad) = k
            .values()
            .find(|&k| u32::try_from(k).map_or(true, |k| !form.valid_for(k)))
        {
            return Err(Failure::Usage(format!(
                "form {form} is not defined for k = {bad}"
            )));
        }
    }
    Ok(())
}

pub fn verify(identity: Identity, p: &Params) -> Reports {
    match identity {
        Identity::OneSub => {
            let ms: Vec<u64> = required(p.m, "m", "one-sub")?.values().collect();
            fan_out(&ms, |&m| {
                let order = p.order.or(4 * m as i64 + 10);
                let d = aeb::one_substitution(m, order)?;
                equal("one-sub", &d.sum(), &d.target, order, &[("m", m as i64)])
            })
        }
        Identity::Chu => {
            let ms: Vec<u64> = required(p.m, "m", "chu")?.values().collect();
            fan_out(&ms, |&m| {
                let order = p.order.or(4 * m as i64 + 10);
                let (l, r) = aeb::chu_vandermonde_instance(m, order)?;
                equal("chu", &l, &r, order, &[("m", m as i64)])
            })
        }
        Identity::Heine => {
            let ks = u32_values(at_least(required(p.k, "k", "heine")?, 1, "k", "heine")?)?;
            let order = p.order.or(200);
            fan_out(&ks, |&k| {
                let (l, r) = aeb::heine_instance(k, order)?;
                equal("heine", &l, &r, order, &[("k", k as i64)])
            })
        }
        Identity::Fine => {
            let ks = u32_values(at_least(required(p.k, "k", "fine")?, 2, "k", "fine")?)?;
            let order = p.order.or(200);
            fan_out(&ks, |&k| {
                let (l, r) = aeb::fine_instance(k, order)?;
                equal("fine", &l, &r, order, &[("k", k as i64)])
            })
        }
        Identity::PochReversal => {
            let order = p.order.or(100);
            let pairs: Vec<(u64, u64)> = required(p.m, "m", "poch-reversal")?
                .values()
                .flat_map(|m| (0..=m).map(move |i| (m, i)))
                .collect();
            fan_out(&pairs, |&(m, i)| {
                let (l, r) = aeb::pochhammer_reversal(m, i, order)?;
                equal(
                    "poch-reversal",
                    &l,
                    &r,
                    order,
                    &[("m", m as i64), ("i", i as i64)],
                )
            })
        }
        Identity::BinomRewrite => {
            let order = p.order.or(20);
            let ks = u32_values(at_least(
                required(p.k, "k", "binom-rewrite")?,
                2,
                "k",
                "binom-rewrite",
            )?)?;
            let pairs: Vec<(u32, u64)> = ks
                .into_iter()
                .flat_map(|k| (0..=k as u64 - 2).map(move |n| (k, n)))
                .filter(|(_, n)| p.n.is_none_or(|span| span.values().contains(n)))
                .collect();
            fan_out(&pairs, |&(k, n)| {
                let (l, r) = aeb::binomial_rewrite(k, n, order)?;
                equal(
                    "binom-rewrite",
                    &l,
                    &r,
                    order,
                    &[("k", k as i64), ("n", n as i64)],
                )
            })
        }
        Identity::FormAgreement => {
            let ks = u32_values(at_least(
                required(p.k, "k", "form-agreement")?,
                1,
                "k",
                "form-agreement",
            )?)?;
            let order = p.order.or(200);
            fan_out(&ks, |&k| {
                let product = aeb::f_k1(k, FkForm::Product, order)?;
                let mut out = Vec::new();
                for form in FkForm::ALL
                    .into_iter()
                    .filter(|&f| f != FkForm::Product && f.valid_for(k))
                {
                    let other = aeb::f_k1(k, form, order)?;
                    out.extend(equal(
                        &format!("form-agreement:{form}"),
                        &product,
                        &other,
                        order,
                        &[("k", k as i64)],
                    )?);
                }
                Ok(out)
            })
        }
        Identity::MockTheta => {
            let order = p.order.or(200);
            let (a, b, c) = aeb::mock_theta_triple(order)?;
            let mut out = equal("mock-theta:nu-vs-product", &a, &b, order, &[])?;
            out.extend(equal("mock-theta:product-vs-quotient", &b, &c, order, &[])?);
            Ok(out)
        }
    }
}

/// One expanded series: its name, integer parameters and coefficients of
/// `q^0..=q^order`.
pub struct Expansion {
    pub series: &'static str,
    pub params: Vec<(String, String)>,
    pub order: i64,
    pub coefficients: Vec<Coefficient>,
}

/// The series for each parameter value, in parameter order.
fn family(
    series: SeriesName,
    form: FkForm,
    p: &Params,
    order: i64,
) -> Result<Vec<Labeled>, Failure> {
    let kv = |k: &str, v: u64| vec![(k.to_string(), v.to_string())];
    let outs: Vec<Result<_, Failure>> = match series {
        SeriesName::F => {
            check_form(form, p.k)?;
            let ks = u32_values(at_least(
                required(p.k, "k", "series f")?,
                1,
                "k",
                "series f",
            )?)?;
            ks.par_iter()
                .map(|&k| {
                    let mut params = kv("k", k as u64);
                    params.push(("form".into(), form.name().into()));
                    Ok((params, aeb::f_k1(k, form, order)?))
                })
                .collect()
        }
        SeriesName::Ratio => {
            let ns: Vec<u64> =
                at_least(required(p.n, "n", "series ratio")?, 1, "n", "series ratio")?
                    .values()
                    .collect();
            ns.par_iter()
                .map(|&n| Ok((kv("n", n), aeb::ratio(n, order)?)))
                .collect()
        }
        SeriesName::RatioCor => {
            let ns: Vec<u64> = required(p.n, "n", "series ratio-cor")?.values().collect();
            ns.par_iter()
                .map(|&n| Ok((kv("n", n), aeb::ratio_corollary(n, order)?)))
                .collect()
        }
        SeriesName::Nu => vec![Ok((Vec::new(), aeb::nu(order)?))],
        SeriesName::Mock => vec![Ok((Vec::new(), aeb::mock_theta_triple(order)?.2))],
    };
    outs.into_iter().collect()
}

pub fn series_name(series: SeriesName) -> &'static str {
    match series {
        SeriesName::F => "f",
        SeriesName::Ratio => "ratio",
        SeriesName::RatioCor => "ratio-cor",
        SeriesName::Nu => "nu",
        SeriesName::Mock => "mock",
    }
}

pub fn expand(series: SeriesName, form: FkForm, p: &Params) -> Result<Vec<Expansion>, Failure> {
    let order = p.order.or(100);
    family(series, form, p, order)?
        .into_iter()
        .map(|(params, s)| {
            Ok(Expansion {
                series: series_name(series),
                params,
                order,
                coefficients: s.coefficients(0, order)?,
            })
        })
        .collect()
}

pub fn positivity(series: SeriesName, form: FkForm, p: &Params) -> Reports {
    let order = p.order.or(200);
    let check = format!("positivity:{}", series_name(series));
    family(series, form, p, order)?
        .into_iter()
        .map(|(params, s)| {
            let ints: Vec<(&str, i64)> = params
                .iter()
                .filter_map(|(k, v)| v.parse().ok().map(|v| (k.as_str(), v)))
                .collect();
            Ok(assert_positive(&s, 0, order, true)?.labeled(&check, &ints))
        })
        .collect()
}

fn decomposition(
    target: Target,
    value: u64,
    order: crate::args::Order,
) -> Result<(Decomposition, i64, bool), Failure> {
    Ok(match target {
        Target::Ratio => {
            let order = order.or(150);
            (aeb::decompose_ratio(value, order)?, order, true)
        }
        Target::Cw => {
            let order = order.or(150);
            let k = u32::try_from(value)
                .map_err(|_| Failure::Usage(format!("k = {value} is too large")))?;
            (aeb::decompose_cw(k, order)?, order, true)
        }
        // The summands here are not individually nonnegative; only the sum is checked.
        Target::OneSub => {
            let order = order.or(4 * value as i64 + 10);
            (aeb::one_substitution(value, order)?, order, false)
        }
    })
}

pub fn decompose(target: Target, p: &Params, certify: Option<&Path>) -> Reports {
    let span = match target {
        Target::Ratio => at_least(required(p.n, "n", "target ratio")?, 1, "n", "target ratio")?,
        Target::Cw => at_least(required(p.k, "k", "target cw")?, 2, "k", "target cw")?,
        Target::OneSub => required(p.m, "m", "target one-sub")?,
    };
    if certify.is_some() && span.single().is_none() {
        return Err(Failure::Usage(
            "--certify needs a single parameter value, not a range".into(),
        ));
    }
    let values: Vec<u64> = span.values().collect();
    let reports = fan_out(&values, |&v| {
        let (d, order, nonneg) = decomposition(target, v, p.order)?;
        Ok(vec![check_decomposition(&d, order, nonneg)?])
    })?;
    if let (Some(path), Some(v)) = (certify, span.single()) {
        if reports.iter().all(VerifyReport::passed) {
            let (d, order, _) = decomposition(target, v, p.order)?;
            let cert = emit_certificate(&d, order)?;
            fs::write(path, cert.to_json() + "\n")
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    Ok(reports)
}
