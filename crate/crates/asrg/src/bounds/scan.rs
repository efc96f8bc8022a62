//! Asymptotic family scanner.
//!
//! A family is given by monomial parameter laws in one growth variable.
//! At each sample the scanner derives the would-be restricted
//! eigenvalues `r, s` (roots of `u² - (λ-μ)u - (k-μ)` with the error
//! term set to zero) and multiplicities `f, g`, then evaluates the
//! requested feasibility checks. Everything runs in log-space so that
//! exponent-20 laws at x = 10⁶ do not overflow.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lognum::{signed_sum, LogNum};
use super::BoundsError;
use crate::Real;

/// Relative tolerance for "satisfied at this sample", applied to the
/// largest term magnitude entering the final sum.
const LN_TOL: Real = -20.723265836946411; // ln(1e-9)

/// One monomial law `c · x^e`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MonomialLaw {
    pub c: Real,
    pub e: Real,
}

impl MonomialLaw {
    fn eval(&self, x: Real) -> LogNum {
        LogNum::from_f64(self.c).mul(LogNum::from_f64(x).powf(self.e))
    }
}

/// A parameter family: laws for v, k, lambda, mu (and optionally
/// sigma), the growth-variable name, and the checks to run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub var: String,
    pub laws: BTreeMap<String, MonomialLaw>,
    pub checks: Vec<CheckName>,
}

impl FamilySpec {
    fn law(&self, name: &str) -> Result<MonomialLaw, BoundsError> {
        self.laws
            .get(name)
            .copied()
            .ok_or_else(|| BoundsError::InconsistentLaws(format!("missing law for {name}")))
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        for name in ["v", "k", "lambda", "mu"] {
            let law = self.law(name)?;
            if !law.c.is_finite() || !law.e.is_finite() {
                return Err(BoundsError::InconsistentLaws(format!("non-finite law for {name}")));
            }
            if (name == "v" || name == "k") && law.c <= 0.0 {
                return Err(BoundsError::InconsistentLaws(format!(
                    "coefficient for {name} must be positive, got {}",
                    law.c
                )));
            }
        }
        for check in &self.checks {
            if matches!(check, CheckName::SigmaFloorKrein | CheckName::SigmaFloorAbsolute)
                && !self.laws.contains_key("sigma")
            {
                return Err(BoundsError::InconsistentLaws(format!(
                    "check {check} requires a sigma law"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    KreinClassical,
    AbsoluteClassical,
    KreinVariantExact,
    SigmaFloorKrein,
    SigmaFloorAbsolute,
}

impl std::fmt::Display for CheckName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CheckName::KreinClassical => "krein_classical",
            CheckName::AbsoluteClassical => "absolute_classical",
            CheckName::KreinVariantExact => "krein_variant_exact",
            CheckName::SigmaFloorKrein => "sigma_floor_krein",
            CheckName::SigmaFloorAbsolute => "sigma_floor_absolute",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Negative at the two largest samples and decreasing between
    /// them. The double condition guards against pre-asymptotic sign
    /// flips.
    Infeasible,
    FeasibleAtAllSamples,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Infeasible => "infeasible",
            Verdict::FeasibleAtAllSamples => "feasible_at_all_samples",
            Verdict::Undecided => "undecided",
        };
        f.write_str(s)
    }
}

/// A signed log-magnitude value for reporting: `sign · 10^log10`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LogVal {
    pub sign: i8,
    pub log10: Real,
}

impl From<LogNum> for LogVal {
    fn from(x: LogNum) -> LogVal {
        LogVal { sign: x.sign, log10: if x.sign == 0 { f64::NEG_INFINITY } else { x.log10() } }
    }
}

impl LogVal {
    pub fn approx(&self) -> Real {
        self.sign as Real * 10f64.powf(self.log10)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: CheckName,
    /// Labeled expression values; `None` when a hypothesis of the
    /// check does not hold at this sample.
    pub expressions: Vec<(String, Option<LogVal>)>,
    pub satisfied: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub x: Real,
    pub v: LogVal,
    pub k: LogVal,
    pub lambda: LogVal,
    pub mu: LogVal,
    pub sigma: Option<LogVal>,
    pub r: LogVal,
    pub s: LogVal,
    pub f: LogVal,
    pub g: LogVal,
    pub checks: Vec<CheckRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub samples: Vec<Real>,
    pub rows: Vec<SampleRow>,
    pub verdicts: Vec<(CheckName, Verdict)>,
}

impl ScanReport {
    pub fn verdict(&self, check: CheckName) -> Option<Verdict> {
        self.verdicts.iter().find(|(c, _)| *c == check).map(|(_, v)| *v)
    }

    pub fn any_infeasible(&self) -> bool {
        self.verdicts.iter().any(|(_, v)| *v == Verdict::Infeasible)
    }
}

/// Derived per-sample quantities, all in log-space.
struct SamplePoint {
    v: LogNum,
    k: LogNum,
    lambda: LogNum,
    mu: LogNum,
    sigma: Option<LogNum>,
    r: LogNum,
    s: LogNum,
    f: LogNum,
    g: LogNum,
}

/// Worst expression of a check at one sample, with the largest-term
/// ln that sets its tolerance scale. `None` = hypothesis failed.
type Worst = Option<(LogNum, Real)>;

fn derive_point(spec: &FamilySpec, x: Real) -> Result<SamplePoint, BoundsError> {
    let v = spec.law("v")?.eval(x);
    let k = spec.law("k")?.eval(x);
    let lambda = spec.law("lambda")?.eval(x);
    let mu = spec.law("mu")?.eval(x);
    let sigma = spec.laws.get("sigma").map(|law| law.eval(x));
    if !val_lt(k, v) {
        return Err(BoundsError::InconsistentLaws(format!("k >= v at sample x = {x}")));
    }
    // k - mu must be positive for real restricted eigenvalues of
    // opposite signs.
    let (k_minus_mu, _) = signed_sum(&[k, mu.neg()]);
    if k_minus_mu.sign <= 0 {
        return Err(BoundsError::InconsistentLaws(format!("k <= mu at sample x = {x}")));
    }
    // Roots of u² - (λ-μ)u - (k-μ): computed subtraction-free by
    // taking the larger-magnitude root first.
    let (diff, _) = signed_sum(&[lambda, mu.neg()]);
    let (disc, _) = signed_sum(&[diff.powi(2), k_minus_mu.mul(LogNum::from_f64(4.0))]);
    let root = disc.sqrt();
    let (r, s) = if diff.sign <= 0 {
        let (s2, _) = signed_sum(&[diff, root.neg()]);
        let s = s2.div(LogNum::from_f64(2.0));
        (k_minus_mu.div(s).neg(), s)
    } else {
        let (r2, _) = signed_sum(&[diff, root]);
        let r = r2.div(LogNum::from_f64(2.0));
        (r, k_minus_mu.div(r).neg())
    };
    // Multiplicities from k + f·r + g·s = 0, f + g = v - 1.
    let (v1, _) = signed_sum(&[v, LogNum::ONE.neg()]);
    let (rs, _) = signed_sum(&[r, s.neg()]);
    if rs.sign <= 0 {
        return Err(BoundsError::InconsistentLaws(format!("r = s at sample x = {x}")));
    }
    let (f_num, _) = signed_sum(&[k.neg(), v1.mul(s).neg()]);
    let (g_num, _) = signed_sum(&[k, v1.mul(r)]);
    let f = f_num.div(rs);
    let g = g_num.div(rs);
    Ok(SamplePoint { v, k, lambda, mu, sigma, r, s, f, g })
}

fn val_lt(a: LogNum, b: LogNum) -> bool {
    val_cmp(a, b) == std::cmp::Ordering::Less
}

/// Numeric ordering of log-space values.
fn val_cmp(a: LogNum, b: LogNum) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a.sign, b.sign) {
        (x, y) if x < y => Less,
        (x, y) if x > y => Greater,
        (0, 0) => Equal,
        (1, 1) => a.ln.partial_cmp(&b.ln).unwrap(),
        _ => b.ln.partial_cmp(&a.ln).unwrap(),
    }
}

fn satisfied(worst: LogNum, scale_ln: Real) -> bool {
    worst.sign >= 0 || worst.ln <= scale_ln + LN_TOL
}

/// Evaluate one check at one sample, returning the labeled
/// expressions and the worst (most negative) one with its scale.
fn eval_check(check: CheckName, p: &SamplePoint) -> (Vec<(String, Option<LogVal>)>, Worst) {
    let two = LogNum::from_f64(2.0);
    let half = LogNum::from_f64(0.5);
    match check {
        CheckName::KreinClassical => {
            let (rem, _) = signed_sum(&[p.v, p.k.neg(), LogNum::ONE.neg()]);
            if rem.sign <= 0 {
                return (
                    vec![("s_branch".into(), None), ("r_branch".into(), None)],
                    None,
                );
            }
            let branch = |u: LogNum| {
                let (up1, _) = signed_sum(&[u, LogNum::ONE]);
                signed_sum(&[
                    LogNum::ONE,
                    u.powi(3).div(p.k.powi(2)),
                    up1.powi(3).div(rem.powi(2)).neg(),
                ])
            };
            pack(vec![("s_branch", branch(p.s)), ("r_branch", branch(p.r))])
        }
        CheckName::AbsoluteClassical => {
            let branch = |m: LogNum| {
                signed_sum(&[
                    m.powi(2).mul(half),
                    m.mul(LogNum::from_f64(1.5)),
                    p.v.neg(),
                ])
            };
            pack(vec![("f_branch", branch(p.f)), ("g_branch", branch(p.g))])
        }
        CheckName::KreinVariantExact => {
            let s_branch = signed_sum(&[
                p.s.mul(p.v),
                p.r.powi(2).mul(p.v),
                two.mul(p.k).mul(p.r),
                two.mul(p.k).mul(p.s).neg(),
                two.mul(p.r.powi(2)).neg(),
                two.mul(p.r).mul(p.s),
            ]);
            let r_branch = signed_sum(&[
                p.r.mul(p.v),
                p.s.powi(2).mul(p.v),
                two.mul(p.k).mul(p.s),
                two.mul(p.k).mul(p.r).neg(),
                two.mul(p.s.powi(2)).neg(),
                two.mul(p.s).mul(p.r),
            ]);
            pack(vec![("s_branch", s_branch), ("r_branch", r_branch)])
        }
        CheckName::SigmaFloorKrein => {
            let sigma = p.sigma.expect("validated: sigma law present");
            let (gap, _) = signed_sum(&[p.mu, p.lambda.neg()]);
            if gap.sign <= 0 {
                return (vec![("sigma_minus_floor".into(), None)], None);
            }
            let floor = gap.powf(1.5).div(p.v);
            pack(vec![("sigma_minus_floor", signed_sum(&[sigma, floor.neg()]))])
        }
        CheckName::SigmaFloorAbsolute => {
            let sigma = p.sigma.expect("validated: sigma law present");
            let (gap, _) = signed_sum(&[p.lambda, p.mu.neg()]);
            if gap.sign <= 0 {
                return (vec![("sigma_minus_floor".into(), None)], None);
            }
            let floor = p.k.div(p.v.mul(LogNum::from_f64(3.0)));
            pack(vec![("sigma_minus_floor", signed_sum(&[sigma, floor.neg()]))])
        }
    }
}

fn pack(branches: Vec<(&str, (LogNum, Real))>) -> (Vec<(String, Option<LogVal>)>, Worst) {
    let worst = branches
        .iter()
        .map(|(_, be)| *be)
        .min_by(|a, b| val_cmp(a.0, b.0))
        .expect("at least one branch");
    let rows = branches
        .into_iter()
        .map(|(name, (e, _))| (name.to_string(), Some(LogVal::from(e))))
        .collect();
    (rows, Some(worst))
}

/// Scan a monomial parameter family at increasing samples of the
/// growth variable and deliver a verdict per requested check.
pub fn family_scan(spec: &FamilySpec, samples: &[Real]) -> Result<ScanReport, BoundsError> {
    spec.validate()?;
    if samples.len() < 3 {
        return Err(BoundsError::BadSamples(format!("need >= 3 samples, got {}", samples.len())));
    }
    if samples.windows(2).any(|w| !(w[1] > w[0])) || samples[0] <= 0.0 {
        return Err(BoundsError::BadSamples("samples must be positive and strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(samples.len());
    // worst[check][sample]
    let mut worst: Vec<Vec<Worst>> = vec![Vec::new(); spec.checks.len()];
    for &x in samples {
        let p = derive_point(spec, x)?;
        let mut checks = Vec::with_capacity(spec.checks.len());
        for (ci, &check) in spec.checks.iter().enumerate() {
            let (expressions, w) = eval_check(check, &p);
            let sat = w.map(|(e, scale)| satisfied(e, scale));
            worst[ci].push(w);
            checks.push(CheckRow { name: check, expressions, satisfied: sat });
        }
        rows.push(SampleRow {
            x,
            v: p.v.into(),
            k: p.k.into(),
            lambda: p.lambda.into(),
            mu: p.mu.into(),
            sigma: p.sigma.map(Into::into),
            r: p.r.into(),
            s: p.s.into(),
            f: p.f.into(),
            g: p.g.into(),
            checks,
        });
    }
    let n = samples.len();
    let verdicts = spec
        .checks
        .iter()
        .enumerate()
        .map(|(ci, &check)| (check, verdict_for(&worst[ci], n)))
        .collect();
    Ok(ScanReport { samples: samples.to_vec(), rows, verdicts })
}

fn verdict_for(worst: &[Worst], n: usize) -> Verdict {
    let last = worst[n - 1];
    let prev = worst[n - 2];
    if let (Some((wp, sp)), Some((wl, sl))) = (prev, last) {
        let neg_prev = !satisfied(wp, sp) && wp.sign < 0;
        let neg_last = !satisfied(wl, sl) && wl.sign < 0;
        if neg_prev && neg_last && val_lt(wl, wp) {
            return Verdict::Infeasible;
        }
    }
    if worst.iter().all(|w| matches!(w, Some((e, scale)) if satisfied(*e, *scale))) {
        return Verdict::FeasibleAtAllSamples;
    }
    Verdict::Undecided
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_spec(checks: &str) -> FamilySpec {
        let json = format!(
            r#"{{"var":"lambda","laws":{{"v":{{"c":1,"e":11}},"k":{{"c":1,"e":10}},"mu":{{"c":1,"e":9}},"lambda":{{"c":1,"e":1}}}},"checks":[{checks}]}}"#
        );
        serde_json::from_str(&json).unwrap()
    }

    #[test]
    fn toy_family_is_infeasible_both_ways() {
        let spec = toy_spec(r#""krein_classical","absolute_classical""#);
        let report = family_scan(&spec, &[1e2, 1e3, 1e4]).unwrap();
        assert_eq!(report.verdict(CheckName::KreinClassical), Some(Verdict::Infeasible));
        assert_eq!(report.verdict(CheckName::AbsoluteClassical), Some(Verdict::Infeasible));
        assert!(report.any_infeasible());
        // Sanity of the derived quantities at x = 10: s ~ -10⁹,
        // g ~ 10³ (up to lower-order factors).
        let small = family_scan(&spec, &[10.0, 1e2, 1e3]).unwrap();
        let row = &small.rows[0];
        assert_eq!(row.s.sign, -1);
        assert!((row.s.log10 - 9.0).abs() < 0.05);
        assert!((row.g.log10 - 3.0).abs() < 0.05);
        // First krein expression ~ -10⁷ at x = 10.
        let expr = row.checks[0].expressions[0].1.unwrap();
        assert_eq!(expr.sign, -1);
        assert!((expr.log10 - 7.0).abs() < 0.05);
    }

    #[test]
    fn larger_samples_never_rescue_an_infeasible_family() {
        let spec = toy_spec(r#""krein_classical""#);
        let base = family_scan(&spec, &[1e2, 1e3, 1e4]).unwrap();
        assert_eq!(base.verdict(CheckName::KreinClassical), Some(Verdict::Infeasible));
        for extra in [1e5, 1e6] {
            let mut samples = vec![1e2, 1e3, 1e4];
            samples.push(extra);
            let more = family_scan(&spec, &samples).unwrap();
            assert_eq!(more.verdict(CheckName::KreinClassical), Some(Verdict::Infeasible));
        }
    }

    #[test]
    fn conference_ratio_family_is_feasible() {
        // v = x, k = x/2, lambda = mu = x/4: the conference-graph
        // parameter ratios, which satisfy everything.
        let json = r#"{"var":"x","laws":{
            "v":{"c":1,"e":1},"k":{"c":0.5,"e":1},
            "lambda":{"c":0.25,"e":1},"mu":{"c":0.25,"e":1}},
            "checks":["krein_classical","absolute_classical","krein_variant_exact"]}"#;
        let spec: FamilySpec = serde_json::from_str(json).unwrap();
        let report = family_scan(&spec, &[1e2, 1e4, 1e6]).unwrap();
        for check in [
            CheckName::KreinClassical,
            CheckName::AbsoluteClassical,
            CheckName::KreinVariantExact,
        ] {
            assert_eq!(report.verdict(check), Some(Verdict::FeasibleAtAllSamples), "{check}");
        }
        // lambda = mu makes r = -s = sqrt(k - mu).
        let row = &report.rows[0];
        assert!((row.r.approx() - 5.0).abs() < 1e-6);
        assert!((row.s.approx() + 5.0).abs() < 1e-6);
    }

    #[test]
    fn sigma_floor_checks_drive_verdicts() {
        // Toy family with sigma = x²: the krein floor grows like
        // x^{2.5}, so sigma sits below it — infeasible.
        let json = r#"{"var":"lambda","laws":{
            "v":{"c":1,"e":11},"k":{"c":1,"e":10},
            "mu":{"c":1,"e":9},"lambda":{"c":1,"e":1},
            "sigma":{"c":1,"e":2}},
            "checks":["sigma_floor_krein","sigma_floor_absolute"]}"#;
        let spec: FamilySpec = serde_json::from_str(json).unwrap();
        let report = family_scan(&spec, &[1e2, 1e3, 1e4]).unwrap();
        assert_eq!(report.verdict(CheckName::SigmaFloorKrein), Some(Verdict::Infeasible));
        // mu > lambda, so the absolute-floor hypothesis fails at every
        // sample: undecided, not a false verdict.
        assert_eq!(report.verdict(CheckName::SigmaFloorAbsolute), Some(Verdict::Undecided));
        // With sigma = x³ the same family clears the krein floor.
        let mut rich = spec.clone();
        rich.laws.insert("sigma".into(), MonomialLaw { c: 1.0, e: 3.0 });
        let report = family_scan(&rich, &[1e2, 1e3, 1e4]).unwrap();
        assert_eq!(report.verdict(CheckName::SigmaFloorKrein), Some(Verdict::FeasibleAtAllSamples));
    }

    #[test]
    fn input_validation() {
        let spec = toy_spec(r#""krein_classical""#);
        assert!(matches!(family_scan(&spec, &[1e2, 1e3]), Err(BoundsError::BadSamples(_))));
        assert!(matches!(family_scan(&spec, &[1e2, 1e2, 1e3]), Err(BoundsError::BadSamples(_))));
        let mut swapped = spec.clone();
        let k = swapped.laws["v"];
        swapped.laws.insert("k".into(), k);
        assert!(matches!(
            family_scan(&swapped, &[1e2, 1e3, 1e4]),
            Err(BoundsError::InconsistentLaws(_))
        ));
        let mut no_sigma = spec;
        no_sigma.checks = vec![CheckName::SigmaFloorKrein];
        assert!(matches!(no_sigma.validate(), Err(BoundsError::InconsistentLaws(_))));
    }
}
