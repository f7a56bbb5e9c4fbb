//! Welch and Pearson tests, curve aggregation and fusion summaries.

use crate::error::StatsError;
use crate::evolution::{FusionClass, FusionEvent};

pub const ALPHA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub df: f64,
    pub p_value: f64,
    pub significant: bool,
    /// Set when both samples have zero variance; the p-value is then 1 for
    /// equal means and 0 otherwise.
    pub degenerate: bool,
}

impl TestResult {
    fn new(statistic: f64, df: f64, p_value: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestResult {
            statistic,
            df,
            p_value,
            significant: p_value < ALPHA,
            degenerate: false,
        }
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased (n - 1) variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn sample_std(xs: &[f64]) -> f64 {
    sample_variance(xs).sqrt()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let series = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0));
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

/// Continued fraction for the incomplete beta, by the modified Lentz method.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta I_x(a, b).
pub fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Two-tailed tail probability P(|T| > |t|) of Student's t with `df`
/// degrees of freedom.
pub fn student_t_two_tailed(t: f64, df: f64) -> f64 {
    if t.is_nan() || df.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return 0.0;
    }
    inc_beta(df / 2.0, 0.5, df / (df + t * t)).clamp(0.0, 1.0)
}

/// Two-tailed Welch test for samples with unequal variances.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TestResult, StatsError> {
    for s in [a, b] {
        if s.len() < 2 {
            return Err(StatsError::TooFewValues { needed: 2, got: s.len() });
        }
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a) / na, sample_variance(b) / nb);
    let se2 = va + vb;
    if se2 == 0.0 {
        let equal = ma == mb;
        let statistic = if equal { 0.0 } else { (ma - mb).signum() * f64::INFINITY };
        let mut r = TestResult::new(statistic, na + nb - 2.0, if equal { 1.0 } else { 0.0 });
        r.degenerate = true;
        return Ok(r);
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    Ok(TestResult::new(t, df, student_t_two_tailed(t, df)))
}

/// Pearson r with its two-tailed Student-t significance on n - 2 degrees of
/// freedom.
pub fn pearson_significance(x: &[f64], y: &[f64]) -> Result<(f64, TestResult), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewValues { needed: 3, got: x.len() });
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ConstantSample);
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    let df = (x.len() - 2) as f64;
    let t = if r.abs() == 1.0 {
        r * f64::INFINITY
    } else {
        r * (df / (1.0 - r * r)).sqrt()
    };
    Ok((r, TestResult::new(t, df, student_t_two_tailed(t, df))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSummary {
    pub mean: Vec<f64>,
    /// Sample standard deviation; zero when there is a single run.
    pub std: Vec<f64>,
}

/// Pointwise mean and standard deviation across runs.
pub fn aggregate_curves(runs: &[Vec<f64>]) -> Result<CurveSummary, StatsError> {
    let first = runs.first().ok_or(StatsError::TooFewValues { needed: 1, got: 0 })?;
    if let Some(bad) = runs.iter().find(|r| r.len() != first.len()) {
        return Err(StatsError::LengthMismatch(first.len(), bad.len()));
    }
    let mut out = CurveSummary {
        mean: Vec::with_capacity(first.len()),
        std: Vec::with_capacity(first.len()),
    };
    for g in 0..first.len() {
        let column: Vec<f64> = runs.iter().map(|r| r[g]).collect();
        out.mean.push(mean(&column));
        out.std.push(if column.len() < 2 { 0.0 } else { sample_std(&column) });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FusionSummary {
    /// Indexed like [`FusionClass::ALL`].
    pub counts: [usize; 3],
    pub accepted: usize,
    pub total: usize,
}

impl FusionSummary {
    pub fn count(&self, class: FusionClass) -> usize {
        self.counts[class_index(class)]
    }

    /// Percentages per class, or `None` with no events.
    pub fn percentages(&self) -> Option<[f64; 3]> {
        if self.total == 0 {
            return None;
        }
        Some(self.counts.map(|c| 100.0 * c as f64 / self.total as f64))
    }
}

fn class_index(class: FusionClass) -> usize {
    FusionClass::ALL.iter().position(|&c| c == class).expect("class is listed")
}

pub fn fusion_event_summary(events: &[FusionEvent]) -> FusionSummary {
    let mut s = FusionSummary::default();
    for e in events {
        s.counts[class_index(e.classification)] += 1;
        s.accepted += usize::from(e.accepted);
        s.total += 1;
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionAcrossRuns {
    pub per_run: Vec<FusionSummary>,
    /// Mean per-run percentage of each class over runs that had events.
    pub mean_percentages: Option<[f64; 3]>,
    pub mean_events_per_run: f64,
    /// Runs left out of the percentage means for having no events.
    pub runs_without_events: usize,
}

pub fn fusion_summary_across_runs(runs: &[Vec<FusionEvent>]) -> FusionAcrossRuns {
    let per_run: Vec<FusionSummary> = runs.iter().map(|r| fusion_event_summary(r)).collect();
    let with_events: Vec<[f64; 3]> = per_run.iter().filter_map(FusionSummary::percentages).collect();
    let mean_percentages = if with_events.is_empty() {
        None
    } else {
        let n = with_events.len() as f64;
        Some([0, 1, 2].map(|k| with_events.iter().map(|p| p[k]).sum::<f64>() / n))
    };
    let mean_events_per_run = if per_run.is_empty() {
        0.0
    } else {
        per_run.iter().map(|s| s.total as f64).sum::<f64>() / per_run.len() as f64
    };
    FusionAcrossRuns {
        runs_without_events: per_run.len() - with_events.len(),
        per_run,
        mean_percentages,
        mean_events_per_run,
    }
}
