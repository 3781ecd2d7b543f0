use std::time::Instant;

use qseries::aeb::{self, FkForm};
use qseries::verify::{assert_equal, VerifyReport};
use qseries::{naive, TruncSeries};

use crate::args::{Identity, Order, Params, Profile, SeriesName, Span, Target};
use crate::checks::{self, Failure};
use crate::emit::CheckSummary;

type Job = Box<dyn Fn() -> Result<Vec<VerifyReport>, Failure>>;

fn span(lo: u64, hi: u64) -> Option<Span> {
    Some(Span { lo, hi })
}

fn params(k: Option<Span>, m: Option<Span>, n: Option<Span>, order: Order) -> Params {
    Params { k, m, n, order }
}

fn naive_oracle(ks: Span, order: i64) -> Result<Vec<VerifyReport>, Failure> {
    let mut out = Vec::new();
    for k in ks.values() {
        let k = k as u32;
        let oracle =
            TruncSeries::from_integers(0, order, naive::f_k1_product(k as usize, order as usize));
        for form in FkForm::ALL.into_iter().filter(|f| f.valid_for(k)) {
            let s = aeb::f_k1(k, form, order)?;
            out.push(
                assert_equal(&oracle, &s, order)?
                    .labeled(&format!("naive-oracle:{form}"), &[("k", k as i64)]),
            );
        }
    }
    Ok(out)
}

/// Sizes for each profile. `desk` mirrors the acceptance battery.
struct Sizes {
    forms: (u64, i64),
    f_positive: (u64, i64),
    one_sub: u64,
    ratio: (u64, i64),
    corollary: u64,
    mock: i64,
    transform: i64,
    chu: u64,
    heine: u64,
    fine: u64,
    reversal: u64,
    rewrite: u64,
    cw: u64,
    naive: i64,
    performance: i64,
}

const DESK: Sizes = Sizes {
    forms: (12, 300),
    f_positive: (50, 500),
    one_sub: 60,
    ratio: (40, 200),
    corollary: 40,
    mock: 300,
    transform: 200,
    chu: 40,
    heine: 12,
    fine: 12,
    reversal: 25,
    rewrite: 25,
    cw: 12,
    naive: 80,
    performance: 10_000,
};

const QUICK: Sizes = Sizes {
    forms: (6, 100),
    f_positive: (12, 150),
    one_sub: 15,
    ratio: (10, 80),
    corollary: 10,
    mock: 100,
    transform: 60,
    chu: 10,
    heine: 5,
    fine: 6,
    reversal: 8,
    rewrite: 10,
    cw: 6,
    naive: 40,
    performance: 1_000,
};

fn battery(sizes: &'static Sizes) -> Vec<(&'static str, Job)> {
    let s = sizes;
    let fixed = Order::Fixed;
    let verify = |id: Identity, p: Params| -> Job { Box::new(move || checks::verify(id, &p)) };
    let positive = |series: SeriesName, p: Params| -> Job {
        Box::new(move || checks::positivity(series, FkForm::Bbk, &p))
    };
    let decompose =
        |t: Target, p: Params| -> Job { Box::new(move || checks::decompose(t, &p, None)) };
    vec![
        (
            "form-agreement",
            verify(
                Identity::FormAgreement,
                params(span(1, s.forms.0), None, None, fixed(s.forms.1)),
            ),
        ),
        (
            "positivity:f",
            positive(
                SeriesName::F,
                params(span(1, s.f_positive.0), None, None, fixed(s.f_positive.1)),
            ),
        ),
        (
            "one-sub",
            verify(
                Identity::OneSub,
                params(None, span(0, s.one_sub), None, Order::Auto),
            ),
        ),
        (
            "decomposition:ratio",
            decompose(
                Target::Ratio,
                params(None, None, span(1, s.ratio.0), fixed(s.ratio.1)),
            ),
        ),
        (
            "positivity:ratio",
            positive(
                SeriesName::Ratio,
                params(None, None, span(1, s.ratio.0), fixed(s.ratio.1)),
            ),
        ),
        (
            "positivity:ratio-cor",
            positive(
                SeriesName::RatioCor,
                params(None, None, span(0, s.corollary), fixed(s.ratio.1)),
            ),
        ),
        (
            "mock-theta",
            verify(Identity::MockTheta, params(None, None, None, fixed(s.mock))),
        ),
        (
            "positivity:mock",
            positive(SeriesName::Mock, params(None, None, None, fixed(s.mock))),
        ),
        (
            "chu",
            verify(
                Identity::Chu,
                params(None, span(0, s.chu), None, fixed(s.transform)),
            ),
        ),
        (
            "heine",
            verify(
                Identity::Heine,
                params(span(1, s.heine), None, None, fixed(s.transform)),
            ),
        ),
        (
            "fine",
            verify(
                Identity::Fine,
                params(span(2, s.fine), None, None, fixed(s.transform)),
            ),
        ),
        (
            "poch-reversal",
            verify(
                Identity::PochReversal,
                params(None, span(0, s.reversal), None, fixed(s.transform)),
            ),
        ),
        (
            "binom-rewrite",
            verify(
                Identity::BinomRewrite,
                params(span(2, s.rewrite), None, None, fixed(s.transform)),
            ),
        ),
        (
            "decomposition:cw",
            decompose(
                Target::Cw,
                params(span(2, s.cw), None, None, fixed(s.transform)),
            ),
        ),
        (
            "naive-oracle",
            Box::new(|| naive_oracle(Span { lo: 1, hi: 4 }, s.naive)),
        ),
        (
            "performance",
            positive(
                SeriesName::F,
                params(span(10, 10), None, None, fixed(s.performance)),
            ),
        ),
    ]
}

pub fn run(profile: Profile) -> Vec<CheckSummary> {
    let (name, sizes) = match profile {
        Profile::Desk => ("desk", &DESK),
        Profile::Quick => ("quick", &QUICK),
    };
    battery(sizes)
        .into_iter()
        .map(|(check, job)| {
            let start = Instant::now();
            let outcome = job();
            let wall_time_secs = start.elapsed().as_secs_f64();
            let (reports, error) = match outcome {
                Ok(r) => (r, None),
                Err(Failure::Usage(e) | Failure::Math(e)) => (Vec::new(), Some(e)),
            };
            let failures: Vec<VerifyReport> =
                reports.iter().filter(|r| !r.passed()).cloned().collect();
            CheckSummary {
                check: check.to_string(),
                profile: name.to_string(),
                reports: reports.len(),
                failed: failures.len(),
                error,
                failures,
                wall_time_secs,
            }
        })
        .collect()
}
