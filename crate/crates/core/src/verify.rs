//! Pass/fail reports for identities and positivity, and certificates that an
//! arithmetic-only checker can validate without any series code.
//!
//! Every failing report carries the smallest exponent that exhibits the
//! failure.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::aeb::Decomposition;
use crate::series::{Coefficient, TruncSeries};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    FirstMismatch,
    NegativeCoefficient,
    ZeroCoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check_id: String,
    pub params: BTreeMap<String, i64>,
    pub order: i64,
    pub status: Status,
    pub witness_exponent: Option<i64>,
    pub lhs_value: Option<String>,
    pub rhs_value: Option<String>,
}

impl VerifyReport {
    fn pass(order: i64) -> Self {
        VerifyReport {
            check_id: String::new(),
            params: BTreeMap::new(),
            order,
            status: Status::Pass,
            witness_exponent: None,
            lhs_value: None,
            rhs_value: None,
        }
    }

    fn failure(
        order: i64,
        status: Status,
        witness: i64,
        lhs: &Coefficient,
        rhs: Option<&Coefficient>,
    ) -> Self {
        VerifyReport {
            status,
            witness_exponent: Some(witness),
            lhs_value: Some(lhs.to_string()),
            rhs_value: rhs.map(ToString::to_string),
            ..Self::pass(order)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Attaches the check name and its parameters.
    pub fn labeled(mut self, check_id: &str, params: &[(&str, i64)]) -> Self {
        self.check_id = check_id.to_string();
        self.params
            .extend(params.iter().map(|(k, v)| (k.to_string(), *v)));
        self
    }
}

fn require_order(s: &TruncSeries, order: i64) -> Result<()> {
    if s.order() < order {
        Err(Error::InsufficientPrecision {
            requested: order,
            available: s.order(),
        })
    } else {
        Ok(())
    }
}

/// Pass iff every coefficient through `order` agrees exactly.
pub fn assert_equal(lhs: &TruncSeries, rhs: &TruncSeries, order: i64) -> Result<VerifyReport> {
    require_order(lhs, order)?;
    require_order(rhs, order)?;
    Ok(match lhs.first_difference(rhs, order) {
        None => VerifyReport::pass(order),
        Some(e) => {
            let (l, r) = (lhs.coefficient(e)?, rhs.coefficient(e)?);
            VerifyReport::failure(order, Status::FirstMismatch, e, &l, Some(&r))
        }
    })
}

fn require_power_series(s: &TruncSeries) -> Result<()> {
    let v = s.trim().valuation();
    if v < 0 {
        Err(Error::NotAPowerSeries { valuation: v })
    } else {
        Ok(())
    }
}

/// Pass iff every coefficient with exponent in `from..=to` is `> 0`
/// (`strict`) or `>= 0`.
pub fn assert_positive(s: &TruncSeries, from: i64, to: i64, strict: bool) -> Result<VerifyReport> {
    require_order(s, to)?;
    require_power_series(s)?;
    for e in from..=to {
        let c = s.coefficient(e)?;
        if c.is_negative() {
            return Ok(VerifyReport::failure(
                to,
                Status::NegativeCoefficient,
                e,
                &c,
                None,
            ));
        }
        if strict && c.is_zero() {
            return Ok(VerifyReport::failure(
                to,
                Status::ZeroCoefficient,
                e,
                &c,
                None,
            ));
        }
    }
    Ok(VerifyReport::pass(to))
}

/// Three-way positivity classification of a coefficient range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    StrictlyPositive,
    NonnegativeWithZeros(Vec<i64>),
    Negative { exponent: i64, value: Coefficient },
}

pub fn classify_positivity(s: &TruncSeries, from: i64, to: i64) -> Result<Positivity> {
    require_order(s, to)?;
    require_power_series(s)?;
    let mut zeros = Vec::new();
    for e in from..=to {
        let c = s.coefficient(e)?;
        if c.is_negative() {
            return Ok(Positivity::Negative {
                exponent: e,
                value: c,
            });
        }
        if c.is_zero() {
            zeros.push(e);
        }
    }
    Ok(if zeros.is_empty() {
        Positivity::StrictlyPositive
    } else {
        Positivity::NonnegativeWithZeros(zeros)
    })
}

fn decomposition_params(d: &Decomposition) -> Vec<(&str, i64)> {
    d.params.iter().map(|(k, v)| (k.as_str(), *v)).collect()
}

/// Pass iff the summands add up to the target through `order` and, when
/// `require_nonneg`, every summand is coefficient-nonnegative. A failing
/// summand is identified by the `summand` parameter.
pub fn check_decomposition(
    d: &Decomposition,
    order: i64,
    require_nonneg: bool,
) -> Result<VerifyReport> {
    require_order(&d.target, order)?;
    for s in &d.summands {
        require_order(s, order)?;
    }
    let id = format!("decomposition:{}", d.name);
    let params = decomposition_params(d);
    let report = assert_equal(&d.sum(), &d.target, order)?;
    if !report.passed() || !require_nonneg {
        return Ok(report.labeled(&id, &params));
    }
    for (i, s) in d.summands.iter().enumerate() {
        let r = assert_positive(s, 0, order, false)?;
        if !r.passed() {
            return Ok(r
                .labeled(&id, &params)
                .labeled(&id, &[("summand", i as i64)]));
        }
    }
    Ok(report.labeled(&id, &params))
}

/// The positivity transfer behind the ratio and F_{k,1} results: a nonnegative decomposition
/// whose leading summand is strictly positive has a strictly positive target.
/// Checks all three facts concretely and reports on the target.
pub fn check_positivity_transfer(d: &Decomposition, order: i64) -> Result<VerifyReport> {
    let id = format!("positivity-transfer:{}", d.name);
    let params = decomposition_params(d);
    let decomposition = check_decomposition(d, order, true)?;
    if !decomposition.passed() {
        return Ok(decomposition);
    }
    let lead = match d.summands.first() {
        Some(s) => assert_positive(s, 0, order, true)?,
        None => {
            return Err(Error::InvalidArgument(
                "decomposition has no summands".into(),
            ))
        }
    };
    if !lead.passed() {
        return Ok(lead.labeled(&id, &params).labeled(&id, &[("summand", 0)]));
    }
    Ok(assert_positive(&d.target, 0, order, true)?.labeled(&id, &params))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    /// Human-readable claim, e.g. which decomposition and what it implies.
    pub claim: String,
    pub decomposition: String,
    pub params: BTreeMap<String, i64>,
    pub summand_labels: Vec<String>,
    pub summands_nonnegative: bool,
    pub leading_summand_strictly_positive: bool,
}

/// Coefficient tables for exponents `0..=order` of a target and its summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub statement: Statement,
    pub order: i64,
    pub target: Vec<String>,
    pub summands: Vec<Vec<String>>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn table(s: &TruncSeries, order: i64) -> Result<Vec<String>> {
    Ok(s.coefficients(0, order)?
        .iter()
        .map(ToString::to_string)
        .collect())
}

/// Serializes a decomposition whose summands add up to its target. The
/// statement records whether every summand is nonnegative and whether the
/// leading one is strictly positive; the checker re-validates both flags.
pub fn emit_certificate(d: &Decomposition, order: i64) -> Result<Certificate> {
    let uncertifiable =
        |why: String| Error::UncertifiableDecomposition(format!("{}: {why}", d.name));
    let report = check_decomposition(d, order, false).map_err(|e| uncertifiable(e.to_string()))?;
    if !report.passed() {
        return Err(uncertifiable(format!(
            "{:?} at exponent {:?} (params {:?})",
            report.status, report.witness_exponent, report.params
        )));
    }
    let nonnegative = check_decomposition(d, order, true)
        .map_err(|e| uncertifiable(e.to_string()))?
        .passed();
    let lead_positive = nonnegative
        && match d.summands.first() {
            Some(s) => assert_positive(s, 0, order, true)?.passed(),
            None => false,
        };
    let claim = match (nonnegative, lead_positive) {
        (true, true) => format!(
            "{} is a sum of nonnegative series whose first is strictly positive, so it is strictly positive",
            d.name
        ),
        (true, false) => format!("{} is a sum of nonnegative series", d.name),
        _ => format!("{} equals the sum of the listed series", d.name),
    };
    Ok(Certificate {
        statement: Statement {
            claim,
            decomposition: d.name.clone(),
            params: d.params.clone(),
            summand_labels: d.labels.clone(),
            summands_nonnegative: nonnegative,
            leading_summand_strictly_positive: lead_positive,
        },
        order,
        target: table(&d.target, order)?,
        summands: d
            .summands
            .iter()
            .map(|s| table(s, order))
            .collect::<Result<_>>()?,
    })
}

/// Re-validates a certificate with big-integer parsing, addition and
/// comparison only.
pub fn recheck_certificate(cert: &Certificate) -> std::result::Result<(), String> {
    let len = usize::try_from(cert.order + 1).map_err(|_| "negative order".to_string())?;
    let parse = |row: &[String], what: &str| -> std::result::Result<Vec<BigInt>, String> {
        if row.len() != len {
            return Err(format!("{what} has {} entries, expected {len}", row.len()));
        }
        row.iter()
            .map(|c| BigInt::from_str(c).map_err(|_| format!("{what}: '{c}' is not an integer")))
            .collect()
    };
    let target = parse(&cert.target, "target")?;
    let summands: Vec<Vec<BigInt>> = cert
        .summands
        .iter()
        .enumerate()
        .map(|(i, row)| parse(row, &format!("summand {i}")))
        .collect::<std::result::Result<_, _>>()?;
    for (e, t) in target.iter().enumerate() {
        let total: BigInt = summands.iter().map(|s| &s[e]).sum();
        if &total != t {
            return Err(format!(
                "summands add to {total} at exponent {e}, target is {t}"
            ));
        }
    }
    if cert.statement.summands_nonnegative {
        for (i, s) in summands.iter().enumerate() {
            if let Some(e) = s.iter().position(Signed::is_negative) {
                return Err(format!("summand {i} is negative at exponent {e}"));
            }
        }
    }
    if cert.statement.leading_summand_strictly_positive {
        let lead = summands.first().ok_or("no summands")?;
        if let Some(e) = lead.iter().position(|c| !c.is_positive()) {
            return Err(format!("leading summand is not positive at exponent {e}"));
        }
        if let Some(e) = target.iter().position(|c| c.is_zero() || c.is_negative()) {
            return Err(format!("target is not positive at exponent {e}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aeb;

    fn s(v: i64, order: i64, c: &[i64]) -> TruncSeries {
        TruncSeries::from_i64s(v, order, c)
    }

    #[test]
    fn equality_reports() {
        let a = s(0, 10, &[1, 2, 3]);
        assert!(assert_equal(&a, &a, 10).unwrap().passed());
        // 1 versus 1 + q^11: identical through order 10.
        assert!(assert_equal(
            &TruncSeries::one(10),
            &s(0, 11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
            10
        )
        .unwrap()
        .passed());
        let r = assert_equal(&a, &s(0, 10, &[1, 2, 4, 5]), 10).unwrap();
        assert_eq!(r.status, Status::FirstMismatch);
        assert_eq!(r.witness_exponent, Some(2));
        assert_eq!(
            (r.lhs_value.as_deref(), r.rhs_value.as_deref()),
            (Some("3"), Some("4"))
        );
        assert_eq!(
            assert_equal(&a, &s(0, 5, &[1]), 10).unwrap_err(),
            Error::InsufficientPrecision {
                requested: 10,
                available: 5
            }
        );
        let sum = aeb::one_substitution(3, 20).unwrap().sum();
        assert!(assert_equal(&sum, &TruncSeries::one(20), 20)
            .unwrap()
            .passed());
    }

    #[test]
    fn positivity_reports() {
        let f = aeb::f_k1(7, aeb::FkForm::Bbk, 100).unwrap();
        assert!(assert_positive(&f, 0, 100, true).unwrap().passed());
        let r = assert_positive(&s(0, 1, &[1, -1]), 0, 1, true).unwrap();
        assert_eq!(r.status, Status::NegativeCoefficient);
        assert_eq!(
            (r.witness_exponent, r.lhs_value.as_deref()),
            (Some(1), Some("-1"))
        );
        let z = assert_positive(&TruncSeries::zero(4), 0, 4, true).unwrap();
        assert_eq!(
            (z.status, z.witness_exponent),
            (Status::ZeroCoefficient, Some(0))
        );
        assert!(assert_positive(&TruncSeries::zero(4), 0, 4, false)
            .unwrap()
            .passed());
        assert!(assert_positive(&f, 0, 101, true).is_err());
    }

    #[test]
    fn witness_is_minimal_across_kinds() {
        let x = s(0, 5, &[1, 0, -2, 0]);
        let r = assert_positive(&x, 0, 5, true).unwrap();
        assert_eq!(
            (r.status, r.witness_exponent),
            (Status::ZeroCoefficient, Some(1))
        );
        assert_eq!(
            classify_positivity(&x, 0, 5).unwrap(),
            Positivity::Negative {
                exponent: 2,
                value: Coefficient::from(-2)
            }
        );
        assert_eq!(
            classify_positivity(&s(0, 3, &[1, 0, 2, 0]), 0, 3).unwrap(),
            Positivity::NonnegativeWithZeros(vec![1, 3])
        );
        assert_eq!(
            classify_positivity(&s(0, 2, &[1, 1, 1]), 0, 2).unwrap(),
            Positivity::StrictlyPositive
        );
    }

    #[test]
    fn decomposition_checks() {
        let d = aeb::decompose_ratio(5, 100).unwrap();
        assert!(check_decomposition(&d, 100, true).unwrap().passed());
        assert!(check_positivity_transfer(&d, 100).unwrap().passed());
        let one = aeb::one_substitution(4, 30).unwrap();
        assert!(check_decomposition(&one, 30, false).unwrap().passed());

        let mut tampered = aeb::decompose_ratio(3, 40).unwrap();
        let bump = TruncSeries::monomial_series(crate::Monomial::q(17), 40);
        tampered.summands[2] = &tampered.summands[2] + &bump;
        let r = check_decomposition(&tampered, 40, true).unwrap();
        assert_eq!(
            (r.status, r.witness_exponent),
            (Status::FirstMismatch, Some(17))
        );
        assert_eq!(r.check_id, "decomposition:ratio");
        assert_eq!(r.params.get("n"), Some(&3));

        // Move the constant 1 between summands: the sum is intact, summand 1 goes negative.
        let mut negative = aeb::decompose_ratio(2, 10).unwrap();
        negative.summands[1] = &negative.summands[1] - &TruncSeries::one(10);
        negative.summands[0] = &negative.summands[0] + &TruncSeries::one(10);
        let r = check_decomposition(&negative, 10, true).unwrap();
        assert_eq!(
            (r.status, r.witness_exponent),
            (Status::NegativeCoefficient, Some(0))
        );
        assert_eq!(r.params.get("summand"), Some(&1));
        assert!(check_decomposition(&negative, 10, false).unwrap().passed());

        // The summands of the substitution-of-one sum are not nonnegative on their
        // own: summand 0 is (q;q^2)_m/(q^2;q^2)_m = 1 - q + ...
        let r = check_decomposition(&aeb::one_substitution(2, 10).unwrap(), 10, true).unwrap();
        assert_eq!(
            (r.status, r.witness_exponent),
            (Status::NegativeCoefficient, Some(1))
        );
        assert_eq!(r.params.get("summand"), Some(&0));
    }

    #[test]
    fn certificates() {
        let d = aeb::decompose_ratio(1, 12).unwrap();
        let cert = emit_certificate(&d, 12).unwrap();
        assert_eq!(cert.summands.len(), 2);
        assert!(cert.statement.leading_summand_strictly_positive);
        recheck_certificate(&cert).unwrap();
        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), json);

        let mut forged = cert.clone();
        forged.target[5] = "100".into();
        assert!(recheck_certificate(&forged)
            .unwrap_err()
            .contains("exponent 5"));

        let one = emit_certificate(&aeb::one_substitution(3, 15).unwrap(), 15).unwrap();
        assert!(!one.statement.summands_nonnegative);
        recheck_certificate(&one).unwrap();

        let mut bad = aeb::decompose_cw(4, 20).unwrap();
        bad.summands[1] = &bad.summands[1] + &TruncSeries::one(20);
        assert!(matches!(
            emit_certificate(&bad, 20),
            Err(Error::UncertifiableDecomposition(_))
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = assert_positive(&s(0, 1, &[1, -1]), 0, 1, true)
            .unwrap()
            .labeled("demo", &[("k", 3)]);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "check_id",
                "lhs_value",
                "order",
                "params",
                "rhs_value",
                "status",
                "witness_exponent"
            ]
        );
        assert_eq!(v["status"], "NegativeCoefficient");
        assert_eq!(v["params"]["k"], 3);
    }
}
