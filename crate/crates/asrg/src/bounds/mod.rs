//! Existence bounds as checkable evaluations: the classical Krein and
//! absolute bounds, their regular-graph variants (both the printed form
//! and the exactly re-derived form of the Hadamard-square expansion),
//! σ-floors for approximately strongly regular families, exponent
//! corollaries, and an asymptotic family scanner.

pub mod lognum;
pub mod scan;

pub use scan::{family_scan, CheckName, FamilySpec, MonomialLaw, ScanReport, Verdict};

use num_rational::Ratio;
use thiserror::Error;

use crate::Real;

pub type Rational64 = Ratio<i64>;

/// Relative slack below which an expression still counts as satisfied.
pub const BOUND_TOL: Real = 1e-9;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent parameter laws: {0}")]
    InconsistentLaws(String),
    #[error("bad sample list: {0}")]
    BadSamples(String),
    #[error("magnitude overflow despite log-space evaluation")]
    Overflow,
}

/// Coefficient convention for the regular-graph Krein variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KreinVariantMode {
    /// The printed statement: `(s + r²)v + (k - r)(r - s)`.
    Paper,
    /// Re-derived from the entrywise-square expansion, which carries a
    /// factor 2 on the cross term: `(s + r²)v + 2(k - r)(r - s)`. This
    /// is the coefficient of the projector in the Hadamard square at an
    /// actual eigenvector, so it is the certified nonnegative quantity.
    Exact,
}

/// One evaluated bound: inputs, labeled expression values, and the
/// satisfied flag with its margin.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub mode: Option<KreinVariantMode>,
    pub inputs: Vec<(String, Real)>,
    pub expressions: Vec<(String, Real)>,
    pub satisfied: bool,
    /// Smallest slack among the asserted expressions.
    pub margin: Real,
    pub notes: Vec<String>,
}

fn tolerance_scale(inputs: &[(String, Real)]) -> Real {
    inputs.iter().fold(1.0f64, |acc, (_, x)| acc.max(x.abs()))
}

fn finish(
    name: &str,
    mode: Option<KreinVariantMode>,
    inputs: Vec<(String, Real)>,
    expressions: Vec<(String, Real)>,
    notes: Vec<String>,
) -> BoundReport {
    let scale = tolerance_scale(&inputs);
    let margin = expressions
        .iter()
        .map(|(_, v)| *v)
        .fold(f64::INFINITY, f64::min);
    BoundReport {
        name: name.to_string(),
        mode,
        satisfied: margin >= -BOUND_TOL * scale,
        margin,
        inputs,
        expressions,
        notes,
    }
}

/// Classical Krein conditions for an SRG spectrum:
/// `1 + s³/k² - (s+1)³/(v-k-1)² >= 0` and the r-counterpart.
pub fn krein_classical(v: Real, k: Real, r: Real, s: Real) -> Result<BoundReport, BoundsError> {
    if !(v > k + 1.0 && k > 1.0) {
        return Err(BoundsError::Domain(format!("need v > k+1 > 1, got v = {v}, k = {k}")));
    }
    if !(r >= 0.0 && s < 0.0) {
        return Err(BoundsError::Domain(format!("need r >= 0 > s, got r = {r}, s = {s}")));
    }
    let rem = v - k - 1.0;
    let e1 = 1.0 + s.powi(3) / (k * k) - (s + 1.0).powi(3) / (rem * rem);
    let e2 = 1.0 + r.powi(3) / (k * k) - (r + 1.0).powi(3) / (rem * rem);
    Ok(finish(
        "krein_classical",
        None,
        vec![("v".into(), v), ("k".into(), k), ("r".into(), r), ("s".into(), s)],
        vec![("s_branch".into(), e1), ("r_branch".into(), e2)],
        vec![],
    ))
}

/// Classical absolute bound: `v <= f(f+3)/2` and `v <= g(g+3)/2`.
pub fn absolute_classical(v: Real, f: Real, g: Real) -> Result<BoundReport, BoundsError> {
    if f <= 0.0 || g <= 0.0 {
        return Err(BoundsError::Domain(format!("need f, g > 0, got f = {f}, g = {g}")));
    }
    let e1 = f * (f + 3.0) / 2.0 - v;
    let e2 = g * (g + 3.0) / 2.0 - v;
    Ok(finish(
        "absolute_classical",
        None,
        vec![("v".into(), v), ("f".into(), f), ("g".into(), g)],
        vec![("f_branch".into(), e1), ("g_branch".into(), e2)],
        vec![],
    ))
}

/// The regular-graph Krein variant, in either coefficient mode.
///
/// The caller is responsible for `r` and `s` being the second largest
/// and smallest adjacency eigenvalues of a k-regular graph; only the
/// exact mode is a certified inequality under that hypothesis.
pub fn krein_variant(
    v: Real,
    k: Real,
    r: Real,
    s: Real,
    mode: KreinVariantMode,
) -> Result<BoundReport, BoundsError> {
    if !(k > r && r > s) || v < 2.0 {
        return Err(BoundsError::Domain(format!(
            "need k > r > s and v >= 2, got v = {v}, k = {k}, r = {r}, s = {s}"
        )));
    }
    let cross = match mode {
        KreinVariantMode::Paper => 1.0,
        KreinVariantMode::Exact => 2.0,
    };
    let e1 = (s + r * r) * v + cross * (k - r) * (r - s);
    let e2 = (r + s * s) * v + cross * (k - s) * (s - r);
    let notes = match mode {
        KreinVariantMode::Paper => {
            vec!["printed coefficients; not certified nonnegative".to_string()]
        }
        KreinVariantMode::Exact => vec![],
    };
    Ok(finish(
        "krein_variant",
        Some(mode),
        vec![("v".into(), v), ("k".into(), k), ("r".into(), r), ("s".into(), s)],
        vec![("s_branch".into(), e1), ("r_branch".into(), e2)],
        notes,
    ))
}

/// The absolute-bound variant for regular graphs: under the eigenvalue
/// localization hypotheses and the gate `s² + s > ε`, concludes
/// `v <= f₂(f₂+1) - f₁`.
///
/// Both the printed gate (`s² + s > ε`) and the gate used inside the
/// proof (`ε² < s² + s`) are evaluated and reported; the conclusion is
/// asserted only under the printed gate.
pub fn absolute_variant(
    v: Real,
    k: Real,
    r: Real,
    s: Real,
    epsilon: Real,
    f1: Real,
    f2: Real,
) -> Result<BoundReport, BoundsError> {
    if !(k > r && r >= 0.0 && s < 0.0) {
        return Err(BoundsError::Domain(format!(
            "need k > r >= 0 > s, got k = {k}, r = {r}, s = {s}"
        )));
    }
    if epsilon <= 0.0 {
        return Err(BoundsError::Domain(format!("need epsilon > 0, got {epsilon}")));
    }
    if f1 > f2 {
        return Err(BoundsError::Domain(format!("need f1 <= f2, got f1 = {f1}, f2 = {f2}")));
    }
    let gate_printed = s * s + s - epsilon;
    let gate_proof = s * s + s - epsilon * epsilon;
    let conclusion = f2 * (f2 + 1.0) - f1 - v;
    let inputs = vec![
        ("v".into(), v),
        ("k".into(), k),
        ("r".into(), r),
        ("s".into(), s),
        ("epsilon".into(), epsilon),
        ("f1".into(), f1),
        ("f2".into(), f2),
    ];
    let expressions = vec![
        ("gate_printed".into(), gate_printed),
        ("gate_proof".into(), gate_proof),
        ("conclusion".into(), conclusion),
    ];
    let scale = tolerance_scale(&inputs);
    let gate_holds = gate_printed > 0.0;
    let concl_holds = conclusion >= -BOUND_TOL * scale;
    let mut notes = Vec::new();
    if !gate_holds {
        notes.push("printed gate s² + s > ε fails; conclusion not asserted".to_string());
    }
    Ok(BoundReport {
        name: "absolute_variant".to_string(),
        mode: None,
        satisfied: !gate_holds || concl_holds,
        margin: if gate_holds { conclusion } else { f64::INFINITY },
        inputs,
        expressions,
        notes,
    })
}

/// A σ-floor with the hypothesis ratios a caller needs to judge the
/// asymptotic applicability at a finite scale.
#[derive(Debug, Clone)]
pub struct SigmaFloor {
    pub floor: Real,
    /// Named ratios that must tend to 0 for the floor to bind.
    pub hypothesis_ratios: Vec<(String, Real)>,
}

/// `σ >= |μ-λ|^{3/2} / v` under `μ > λ`, `k = o(v)`,
/// `k = o(|μ-λ|^{3/2})`.
pub fn sigma_floor_krein(v: Real, k: Real, lambda: Real, mu: Real) -> Result<SigmaFloor, BoundsError> {
    if mu <= lambda {
        return Err(BoundsError::Domain(format!("requires mu > lambda, got mu = {mu}, lambda = {lambda}")));
    }
    let gap = (mu - lambda).powf(1.5);
    Ok(SigmaFloor {
        floor: gap / v,
        hypothesis_ratios: vec![
            ("k/v".into(), k / v),
            ("k/|mu-lambda|^1.5".into(), k / gap),
        ],
    })
}

/// `σ >= k / (3v)` under `λ > μ`, `sqrt(v)·k = o((λ-μ)²)`.
pub fn sigma_floor_absolute(v: Real, k: Real, lambda: Real, mu: Real) -> Result<SigmaFloor, BoundsError> {
    if lambda <= mu {
        return Err(BoundsError::Domain(format!("requires lambda > mu, got mu = {mu}, lambda = {lambda}")));
    }
    Ok(SigmaFloor {
        floor: k / (3.0 * v),
        hypothesis_ratios: vec![(
            "sqrt(v)*k/(lambda-mu)^2".into(),
            v.sqrt() * k / (lambda - mu).powi(2),
        )],
    })
}

/// Exponent in `t = O(q^e)` for caps with near-constant secant counts:
/// `e = (5n - 1)/6`.
pub fn cap_exponent(n: u64) -> Result<Rational64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("requires n >= 2, got {n}")));
    }
    Ok(Rational64::new(5 * n as i64 - 1, 6))
}

/// Exponent in `k = O(v^e)` for pseudorandom K_m-free graphs:
/// `e = 1 - 1/(2m - 3)`.
pub fn ak_exponent(m: u64) -> Result<Rational64, BoundsError> {
    if m < 3 {
        return Err(BoundsError::Domain(format!("requires m >= 3, got {m}")));
    }
    Ok(Rational64::one_minus(1, 2 * m as i64 - 3))
}

/// `e = 1 - 2/(3m - 4)` (clique level `i = 3m/4 - 3/2`).
pub fn opt_i_exponent(m: u64) -> Result<Rational64, BoundsError> {
    if m < 5 {
        return Err(BoundsError::Domain(format!("requires m >= 5, got {m}")));
    }
    Ok(Rational64::one_minus(2, 3 * m as i64 - 4))
}

/// `e = 1 - 1/(m + 1)` (clique level `i = m - 3`).
pub fn opt_ii_exponent(m: u64) -> Result<Rational64, BoundsError> {
    if m < 5 {
        return Err(BoundsError::Domain(format!("requires m >= 5, got {m}")));
    }
    Ok(Rational64::one_minus(1, m as i64 + 1))
}

/// `e = 1 - 1/(3m - 2i - 5)` for clique level `0 <= i <= m - 3`.
pub fn general_exponent(m: u64, i: u64) -> Result<Rational64, BoundsError> {
    if m < 3 || i + 3 > m {
        return Err(BoundsError::Domain(format!("requires m >= 3 and 0 <= i <= m - 3, got m = {m}, i = {i}")));
    }
    Ok(Rational64::one_minus(1, 3 * m as i64 - 2 * i as i64 - 5))
}

trait OneMinus {
    fn one_minus(num: i64, den: i64) -> Rational64;
}

impl OneMinus for Rational64 {
    fn one_minus(num: i64, den: i64) -> Rational64 {
        Rational64::new(den - num, den)
    }
}

/// The (t, q, n)-evaluated σ-floor for cap-associated graphs:
/// `t³ q^{-5n/2 + 1/2}`.
pub fn cap_sigma_floor(t: Real, q: Real, n: u64) -> Result<Real, BoundsError> {
    if n < 4 {
        return Err(BoundsError::Domain(format!("requires n >= 4, got {n}")));
    }
    use lognum::LogNum;
    let tt = LogNum::from_f64(t);
    let qq = LogNum::from_f64(q);
    Ok(tt.powi(3).mul(qq.powf(-2.5 * n as Real + 0.5)).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn krein_classical_petersen() {
        let rep = krein_classical(10.0, 3.0, 1.0, -2.0).unwrap();
        assert!((rep.expressions[0].1 - 5.0 / 36.0).abs() < 1e-9);
        assert!((rep.expressions[1].1 - 8.0 / 9.0).abs() < 1e-9);
        assert!(rep.satisfied);
    }

    #[test]
    fn krein_classical_no_45() {
        let rep = krein_classical(45.0, 12.0, 3.0, -3.0).unwrap();
        assert!(rep.satisfied);
        assert!(rep.expressions.iter().all(|(_, v)| *v >= 0.0));
    }

    #[test]
    fn krein_classical_toy_fails() {
        // Toy family at lambda = 10: v = 1e11, k = 1e10, s ~ -1e9.
        let rep = krein_classical(1e11, 1e10, 100.0, -1e9).unwrap();
        assert!(!rep.satisfied);
        assert!(rep.expressions[0].1 < -1e6);
    }

    #[test]
    fn absolute_classical_cases() {
        let p = absolute_classical(10.0, 5.0, 4.0).unwrap();
        assert!(p.satisfied);
        assert!((p.expressions[0].1 - 10.0).abs() < 1e-9);
        assert!((p.expressions[1].1 - 4.0).abs() < 1e-9);
        assert!(absolute_classical(45.0, 20.0, 24.0).unwrap().satisfied);
        let toy = absolute_classical(1e11, 1e11, 1e3).unwrap();
        assert!(!toy.satisfied);
    }

    #[test]
    fn krein_variant_modes_discriminate_on_petersen() {
        let paper = krein_variant(10.0, 3.0, 1.0, -2.0, KreinVariantMode::Paper).unwrap();
        assert!((paper.expressions[0].1 + 4.0).abs() < 1e-9);
        assert!((paper.expressions[1].1 - 35.0).abs() < 1e-9);
        assert!(!paper.satisfied);
        let exact = krein_variant(10.0, 3.0, 1.0, -2.0, KreinVariantMode::Exact).unwrap();
        assert!((exact.expressions[0].1 - 2.0).abs() < 1e-9);
        assert!((exact.expressions[1].1 - 20.0).abs() < 1e-9);
        assert!(exact.satisfied);
    }

    #[test]
    fn krein_variant_exact_tight_on_c5() {
        let phi = 5.0f64.sqrt();
        let r = (phi - 1.0) / 2.0;
        let s = -(phi + 1.0) / 2.0;
        let rep = krein_variant(5.0, 2.0, r, s, KreinVariantMode::Exact).unwrap();
        assert!(rep.expressions[0].1.abs() < 1e-9, "tight case");
        assert!(rep.satisfied);
    }

    #[test]
    fn absolute_variant_cases() {
        let p = absolute_variant(10.0, 3.0, 1.0, -2.0, 0.5, 5.0, 6.0).unwrap();
        assert!(p.expressions[0].1 > 0.0); // 2 - 0.5
        assert!(p.expressions[1].1 > 0.0); // 2 - 0.25
        assert!((p.expressions[2].1 - 27.0).abs() < 1e-9); // 42 - 5 - 10
        assert!(p.satisfied);
        let big = absolute_variant(45.0, 12.0, 3.0, -3.0, 0.1, 20.0, 21.0).unwrap();
        assert!(big.satisfied); // 45 <= 442
        let fail = absolute_variant(50.0, 12.0, 3.0, -3.0, 0.1, 6.0, 6.0).unwrap();
        assert!(!fail.satisfied); // 50 > 36
    }

    #[test]
    fn sigma_floor_values() {
        let f = sigma_floor_krein(1e11, 1e10, 10.0, 1e9 + 10.0).unwrap();
        assert!(((f.floor - 10.0f64.powf(2.5)) / 10.0f64.powf(2.5)).abs() < 0.01);
        let g = sigma_floor_krein(100.0, 10.0, 3.0, 4.0).unwrap();
        assert!((g.floor - 0.01).abs() < 1e-12);
        assert!(sigma_floor_krein(10.0, 3.0, 2.0, 1.0).is_err());
        let a = sigma_floor_absolute(1e11, 1e9, 1e8, 1e7).unwrap();
        assert!(((a.floor - 1e-2 / 3.0) / (1e-2 / 3.0)).abs() < 1e-9);
        let b = sigma_floor_absolute(10.0, 1.0, 2.0, 1.0).unwrap();
        assert!((b.floor - 1.0 / 30.0).abs() < 1e-12);
        // Inapplicable hypothesis shows in the ratio, not as an error.
        let c = sigma_floor_absolute(1e6, 1e5, 2.0, 1.0).unwrap();
        assert!(c.hypothesis_ratios[0].1 > 1.0);
    }

    #[test]
    fn exponents() {
        assert_eq!(cap_exponent(10).unwrap(), Rational64::new(49, 6));
        assert_eq!(ak_exponent(3).unwrap(), Rational64::new(2, 3));
        assert_eq!(opt_ii_exponent(5).unwrap(), Rational64::new(5, 6));
        assert_eq!(opt_i_exponent(5).unwrap(), Rational64::new(9, 11));
        assert_eq!(general_exponent(5, 0).unwrap(), Rational64::new(9, 10));
        assert!(general_exponent(5, 3).is_err());
        // Sharper than the trivial cap exponent n - 1 once n > 5.
        for n in 6..40u64 {
            let e = cap_exponent(n).unwrap();
            assert!(e < Rational64::new(n as i64 - 1, 1), "n = {n}");
        }
    }
}
