//! Concrete graph families and their audits: orthogonality graphs on
//! nonsingular points of quadratic forms with parameter/clique/tower
//! checks, cap-associated graphs with the secant-count identities, and
//! neighborhood-tower diagnostics for pseudorandom clique-free graphs.
//!
//! Printed parameter formulas are treated as claims to audit, not
//! truths to assert: every report carries measured-vs-formula flags,
//! and mismatches are surfaced, never corrected silently.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Elem, Field, FieldError};
use crate::geometry::{Cap, FormKind, GeometryError, ProjPoint, QuadraticForm};
use crate::graph::{
    asrg_stats, common_neighborhood, regularity_classify, AsrgStats, Graph, GraphError, Regularity,
};
use crate::spectral::{adjacency_matrix, eigh, spectrum_report, SpectralError, MAX_EIGH_ORDER};
use crate::{rat_to_real, Rat, Real};

/// Largest orthogonality graph constructed (spectral work downstream).
pub const NO_MAX_ORDER: u64 = 3000;
/// Largest cap-associated graph constructed.
pub const CAP_GRAPH_MAX_ORDER: u64 = 100_000;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("orthogonality graphs require odd characteristic")]
    EvenCharacteristic,
    #[error("construction too large: {what} = {value} exceeds {limit}")]
    TooLarge { what: &'static str, value: u64, limit: u64 },
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i8),
    #[error("dimension {0} out of supported range {1}..={2}")]
    BadDimension(u32, u32, u32),
    #[error("clique level i = {i} exceeds m - 3 = {max}")]
    BadLevel { i: usize, max: isize },
    #[error("no clique of the requested size found by greedy descent")]
    NoCliqueFound,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Printed parameter values for the orthogonality graph on the
/// `epsilon` part of nonsingular points in vector dimension
/// `vector_dim` over GF(q). `lambda`/`mu` are `None` where the printed
/// expression has a negative power of q (vector_dim = 2).
#[derive(Debug, Clone)]
pub struct NoFormulaParams {
    pub vector_dim: u32,
    pub q: u64,
    pub epsilon: i8,
    /// +1 iff -1 is a square in GF(q).
    pub gamma: i8,
    /// `floor(vector_dim / 2)`.
    pub m: u32,
    pub v: u64,
    pub k: u64,
    pub lambda: Option<u64>,
    pub mu: Option<u64>,
    /// Printed interval for the common-neighbor count of nonadjacent
    /// pairs.
    pub mu_range: Option<(u64, u64)>,
    /// Whether the printed mu value is asserted to be exact (the
    /// strongly regular regime: q in {3,5} for odd dimension, q = 3
    /// for even).
    pub mu_srg_regime: bool,
}

fn ipow(q: u64, e: u32) -> u64 {
    q.pow(e)
}

fn half(x: i128) -> u64 {
    debug_assert!(x >= 0 && x % 2 == 0, "printed parameter {x} is not an even nonneg integer");
    (x / 2) as u64
}

/// Pure evaluation of the printed parameter displays; no construction.
pub fn no_formula_params(n: u32, q: u64, epsilon: i8) -> Result<NoFormulaParams, ConstructionError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(ConstructionError::BadEpsilon(epsilon));
    }
    if !(2..=32).contains(&n) {
        return Err(ConstructionError::BadDimension(n, 2, 32));
    }
    let field = Field::new(q)?;
    if field.characteristic() == 2 {
        return Err(ConstructionError::EvenCharacteristic);
    }
    let gamma = field.gamma();
    let m = n / 2;
    let e = epsilon as i128;
    let ge = (gamma * epsilon) as i128;
    let (v, k, lambda, mu, mu_range, mu_srg_regime);
    if n % 2 == 1 {
        let qm = ipow(q, m) as i128;
        let qm1 = ipow(q, m - 1) as i128;
        v = half(qm * (qm + e));
        k = half(qm1 * (qm - e));
        lambda = Some(half(qm1 * (qm1 + ge)));
        mu = Some(half(qm1 * (qm1 - e)));
        mu_range = Some((half(qm1 * (qm1 - 1)), half(qm1 * (qm1 + 1))));
        mu_srg_regime = q == 3 || q == 5;
    } else {
        let qm = ipow(q, m) as i128;
        let qm1 = ipow(q, m - 1) as i128;
        v = half(qm1 * (qm - e));
        k = half(qm1 * (qm1 - ge));
        if m >= 2 {
            let qm2 = ipow(q, m - 2) as i128;
            lambda = Some(half(qm2 * (qm1 + ge)));
            mu = Some(half(qm1 * (qm2 + e)));
            mu_range = Some((half(qm1 * (qm2 - 1)), half(qm1 * (qm2 + 1))));
        } else {
            lambda = None;
            mu = None;
            mu_range = None;
        }
        mu_srg_regime = q == 3;
    }
    Ok(NoFormulaParams {
        vector_dim: n,
        q,
        epsilon,
        gamma,
        m,
        v,
        k,
        lambda,
        mu,
        mu_range,
        mu_srg_regime,
    })
}

/// Printed clique number: `n - 1` if `γε = (-1)^m`, else `n`.
pub fn no_clique_formula(n: u32, q: u64, epsilon: i8) -> Result<u32, ConstructionError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(ConstructionError::BadEpsilon(epsilon));
    }
    let field = Field::new(q)?;
    if field.characteristic() == 2 {
        return Err(ConstructionError::EvenCharacteristic);
    }
    let m = n / 2;
    let sign_m = if m % 2 == 0 { 1 } else { -1 };
    Ok(if (field.gamma() * epsilon) as i32 == sign_m { n - 1 } else { n })
}

/// Measured-vs-printed audit of one constructed orthogonality graph.
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub formula: NoFormulaParams,
    pub measured_v: usize,
    pub measured_k: usize,
    /// min/max common-neighbor count over adjacent pairs (None if
    /// edgeless).
    pub lambda_observed: Option<(usize, usize)>,
    /// min/max common-neighbor count over distinct nonadjacent pairs.
    pub mu_observed: Option<(usize, usize)>,
    pub classification: Regularity,
    pub stats: Option<AsrgStats>,
    pub v_match: bool,
    pub k_match: bool,
    /// Printed lambda vs measured, when both sides are defined and
    /// the measured value is constant.
    pub lambda_match: Option<bool>,
    /// Printed mu vs measured, asserted only in the strongly regular
    /// regime.
    pub mu_match: Option<bool>,
    pub mu_in_range: Option<bool>,
}

impl OrthogonalityReport {
    pub fn all_match(&self) -> bool {
        self.v_match
            && self.k_match
            && self.lambda_match.unwrap_or(true)
            && self.mu_match.unwrap_or(true)
            && self.mu_in_range.unwrap_or(true)
    }
}

/// Builds the orthogonality graph: vertices are the chosen class of
/// nonsingular points of the standard form in vector dimension n over
/// GF(q), adjacency `B(x, y) = 0`.
///
/// For odd n the epsilon part is selected by its size; for even n
/// epsilon selects the form type (hyperbolic +1 / elliptic -1), both
/// classes are equal-sized, and the square class is used. Swapping
/// classes yields an isomorphic graph.
pub fn no_graph(n: u32, q: u64, epsilon: i8) -> Result<(Graph, OrthogonalityReport), ConstructionError> {
    if !(2..=8).contains(&n) {
        return Err(ConstructionError::BadDimension(n, 2, 8));
    }
    let formula = no_formula_params(n, q, epsilon)?;
    if formula.v > NO_MAX_ORDER {
        return Err(ConstructionError::TooLarge {
            what: "graph order",
            value: formula.v,
            limit: NO_MAX_ORDER,
        });
    }
    let field = Arc::new(Field::new(q)?);
    let kind = if n % 2 == 1 {
        FormKind::Parabolic
    } else if epsilon == 1 {
        FormKind::Hyperbolic
    } else {
        FormKind::Elliptic
    };
    let form = QuadraticForm::standard(field.clone(), n, kind)?;
    let (sq, nsq) = form.nonsingular_split()?;
    let points = if n % 2 == 1 {
        if sq.len() as u64 == formula.v {
            sq
        } else if nsq.len() as u64 == formula.v {
            nsq
        } else {
            // Both parts exist with the two printed sizes; if neither
            // matches the measured split, report against the square
            // class rather than failing.
            sq
        }
    } else {
        sq
    };
    let v = points.len();
    let coords: Vec<Vec<Elem>> = points.iter().map(|p| p.elems()).collect();
    let mut edges = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            if form.bilinear(&coords[i], &coords[j])? == Elem::ZERO {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::new(v, &edges)?;
    let report = audit_no_graph(&g, formula);
    Ok((g, report))
}

fn audit_no_graph(g: &Graph, formula: NoFormulaParams) -> OrthogonalityReport {
    let v = g.order();
    let degrees = g.degrees();
    let measured_k = degrees.iter().copied().max().unwrap_or(0);
    let mut lambda_observed: Option<(usize, usize)> = None;
    let mut mu_observed: Option<(usize, usize)> = None;
    for a in 0..v {
        for b in a + 1..v {
            let c = g.common_count(a, b);
            let slot = if g.is_adjacent(a, b) {
                &mut lambda_observed
            } else {
                &mut mu_observed
            };
            *slot = Some(match slot {
                None => (c, c),
                Some((lo, hi)) => ((*lo).min(c), (*hi).max(c)),
            });
        }
    }
    let classification = regularity_classify(g);
    let stats = asrg_stats(g).ok();
    let v_match = v as u64 == formula.v;
    let k_match = degrees.iter().all(|&d| d as u64 == formula.k);
    let lambda_match = match (formula.lambda, lambda_observed) {
        (Some(f), Some((lo, hi))) if lo == hi => Some(lo as u64 == f),
        _ => None,
    };
    let mu_match = if formula.mu_srg_regime {
        match (formula.mu, mu_observed) {
            (Some(f), Some((lo, hi))) => Some(lo == hi && lo as u64 == f),
            _ => None,
        }
    } else {
        None
    };
    let mu_in_range = match (formula.mu_range, mu_observed) {
        (Some((flo, fhi)), Some((lo, hi))) => Some(lo as u64 >= flo && hi as u64 <= fhi),
        _ => None,
    };
    OrthogonalityReport {
        formula,
        measured_v: v,
        measured_k,
        lambda_observed,
        mu_observed,
        classification,
        stats,
        v_match,
        k_match,
        lambda_match,
        mu_match,
        mu_in_range,
    }
}

/// One step of the neighborhood tower: the neighborhood of a vertex in
/// the dimension-n graph against the claimed dimension-(n-1) graph.
#[derive(Debug, Clone)]
pub struct TowerStepReport {
    pub n: u32,
    pub q: u64,
    pub epsilon: i8,
    pub target_n: u32,
    pub target_epsilon: i8,
    pub subgraph_order: usize,
    pub target_order: usize,
    pub order_match: bool,
    /// Sorted degree sequences.
    pub subgraph_degrees: Vec<usize>,
    pub target_degrees: Vec<usize>,
    pub degree_match: bool,
    /// Max gap between sorted spectra; None when orders differ.
    pub spectrum_gap: Option<Real>,
    pub cospectral: Option<bool>,
    /// Printed degree of the target graph vs the measured subgraph
    /// degree (when the subgraph is regular).
    pub target_formula_k: u64,
    pub formula_k_match: Option<bool>,
    pub mismatch: bool,
}

const COSPECTRAL_TOL: Real = 1e-6;

/// Checks the claimed tower isomorphism type at one step by comparing
/// order, degree sequence, and spectrum. Mismatches are reported,
/// never asserted away.
pub fn tower_step_check(n: u32, q: u64, epsilon: i8) -> Result<TowerStepReport, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::BadDimension(n, 3, 8));
    }
    let (big, big_report) = no_graph(n, q, epsilon)?;
    let target_epsilon = if n % 2 == 1 {
        epsilon
    } else {
        big_report.formula.gamma * epsilon
    };
    let (sub, _) = common_neighborhood(&big, &[0])?;
    let (target, target_report) = no_graph(n - 1, q, target_epsilon)?;
    let mut subgraph_degrees = sub.degrees();
    subgraph_degrees.sort_unstable();
    let mut target_degrees = target.degrees();
    target_degrees.sort_unstable();
    let order_match = sub.order() == target.order();
    let degree_match = order_match && subgraph_degrees == target_degrees;
    let (spectrum_gap, cospectral) = if order_match && sub.order() > 0 {
        let spec = |g: &Graph| eigh(g.order(), &adjacency_matrix(g)).map(|(vals, _)| vals);
        let a = spec(&sub)?;
        let b = spec(&target)?;
        let gap = a
            .iter()
            .zip(&b)
            .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
        (Some(gap), Some(gap <= COSPECTRAL_TOL))
    } else {
        (None, None)
    };
    let formula_k_match = if subgraph_degrees.first() == subgraph_degrees.last() {
        subgraph_degrees
            .first()
            .map(|&d| d as u64 == target_report.formula.k)
    } else {
        None
    };
    let mismatch = !order_match
        || !degree_match
        || cospectral == Some(false)
        || formula_k_match == Some(false);
    Ok(TowerStepReport {
        n,
        q,
        epsilon,
        target_n: n - 1,
        target_epsilon,
        subgraph_order: sub.order(),
        target_order: target.order(),
        order_match,
        subgraph_degrees,
        target_degrees,
        degree_match,
        spectrum_gap,
        cospectral,
        target_formula_k: target_report.formula.k,
        formula_k_match,
        mismatch,
    })
}

fn vector_index(q: u64, digits: &[u32]) -> usize {
    digits
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

fn vector_digits(q: u64, dim: usize, mut idx: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(dim);
    for _ in 0..dim {
        out.push((idx % q as usize) as u32);
        idx /= q as usize;
    }
    out
}

/// Graph on the vectors of GF(q)^{n+1}, two distinct vectors adjacent
/// when the direction of their difference lies in the cap.
pub fn cap_graph(cap: &Cap) -> Result<Graph, ConstructionError> {
    let field = cap.field();
    let q = field.order() as u64;
    let dim = cap.proj_dim() as usize + 1;
    let v = q.checked_pow(dim as u32).filter(|&v| v <= CAP_GRAPH_MAX_ORDER).ok_or(
        ConstructionError::TooLarge {
            what: "vector count",
            value: q.saturating_pow(dim as u32),
            limit: CAP_GRAPH_MAX_ORDER,
        },
    )?;
    let v = v as usize;
    // All nonzero multiples of each cap direction, as digit vectors.
    let mut offsets: Vec<Vec<Elem>> = Vec::new();
    for p in cap.points() {
        let base = p.elems();
        for a in field.elems() {
            if a == Elem::ZERO {
                continue;
            }
            offsets.push(base.iter().map(|&x| field.mul(a, x)).collect());
        }
    }
    let mut edges = Vec::new();
    for a in 0..v {
        let da = vector_digits(q, dim, a);
        for off in &offsets {
            let db: Vec<u32> = da
                .iter()
                .zip(off)
                .map(|(&x, &o)| field.add(Elem(x), o).0)
                .collect();
            let b = vector_index(q, &db);
            if b > a {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::new(v, &edges)?)
}

/// Exhaustive audit of the cap-graph secant identities.
#[derive(Debug, Clone)]
pub struct CapGraphAudit {
    pub t: usize,
    pub q: u64,
    pub proj_dim: u32,
    pub measured_v: usize,
    pub measured_k: usize,
    pub formula_v: u64,
    pub formula_k: u64,
    /// Printed lambda, `q - 2`.
    pub formula_lambda: u64,
    pub lambda_observed: Option<(usize, usize)>,
    /// Distinct nonadjacent ordered pairs checked against
    /// `mu_ab = 2 h_p`.
    pub pairs_checked: u64,
    pub identity_holds: bool,
    /// Exact `Var(mu_ab)` over ordered nonadjacent pairs.
    pub mu_var: Rat,
    /// Exact `4 Var(h_p)` over exterior points.
    pub four_var_h: Rat,
    pub var_match: bool,
    pub stats: AsrgStats,
    pub all_match: bool,
}

/// Verifies, pair by pair, that the common-neighbor count of a
/// nonadjacent pair is twice the secant count of the direction between
/// them, and that `Var(mu_ab) = 4 Var(h_p)` exactly (ordered
/// nonadjacent pairs distribute uniformly over exterior directions).
pub fn cap_graph_audit(cap: &Cap) -> Result<CapGraphAudit, ConstructionError> {
    let field = cap.field().clone();
    let q = field.order() as u64;
    let t = cap.len();
    if t < 2 {
        return Err(GeometryError::TooSmall.into());
    }
    let g = cap_graph(cap)?;
    let stats = asrg_stats(&g)?;
    let profile = cap.secant_profile()?;
    let h_of: HashMap<&ProjPoint, u64> = profile
        .exterior
        .iter()
        .zip(profile.counts.iter().copied())
        .collect();
    let v = g.order();
    let dim = cap.proj_dim() as usize + 1;
    let mut lambda_observed: Option<(usize, usize)> = None;
    let mut pairs_checked = 0u64;
    let mut identity_holds = true;
    for a in 0..v {
        let da = vector_digits(q, dim, a);
        for b in a + 1..v {
            let c = g.common_count(a, b);
            if g.is_adjacent(a, b) {
                lambda_observed = Some(match lambda_observed {
                    None => (c, c),
                    Some((lo, hi)) => (lo.min(c), hi.max(c)),
                });
                continue;
            }
            let db = vector_digits(q, dim, b);
            let diff: Vec<Elem> = da
                .iter()
                .zip(&db)
                .map(|(&x, &y)| field.sub(Elem(x), Elem(y)))
                .collect();
            let p = ProjPoint::new(&field, &diff).expect("a != b gives a nonzero difference");
            pairs_checked += 2;
            match h_of.get(&p) {
                Some(&h) if 2 * h == c as u64 => {}
                _ => identity_holds = false,
            }
        }
    }
    let four_var_h = profile.variance.clone() * Rat::from(num_bigint::BigInt::from(4));
    let var_match = stats.mu_var == four_var_h;
    let formula_v = q.pow(dim as u32);
    let formula_k = t as u64 * (q - 1);
    let formula_lambda = q - 2;
    let lambda_ok = lambda_observed
        .map(|(lo, hi)| lo == hi && lo as u64 == formula_lambda)
        .unwrap_or(false);
    let all_match = identity_holds
        && var_match
        && v as u64 == formula_v
        && stats.k as u64 == formula_k
        && lambda_ok;
    Ok(CapGraphAudit {
        t,
        q,
        proj_dim: cap.proj_dim(),
        measured_v: v,
        measured_k: stats.k,
        formula_v,
        formula_k,
        formula_lambda,
        lambda_observed,
        pairs_checked,
        identity_holds,
        mu_var: stats.mu_var.clone(),
        four_var_h,
        var_match,
        stats,
        all_match,
    })
}

/// How the clique for a neighborhood-tower level is chosen.
#[derive(Debug, Clone)]
pub enum CliquePolicy {
    /// Max-degree vertex descent, ties broken by lowest original
    /// vertex index.
    Greedy,
    /// Caller-supplied clique (validated).
    Given(Vec<usize>),
}

/// Diagnostics of one level of the common-neighborhood tower of a
/// clique-free pseudorandom candidate graph.
#[derive(Debug, Clone)]
pub struct TowerLevelReport {
    pub m: usize,
    pub i: usize,
    pub clique: Vec<usize>,
    pub v_i: usize,
    pub degree_mean: Real,
    pub degree_min: usize,
    pub degree_max: usize,
    pub regular: bool,
    pub stats: Option<AsrgStats>,
    pub r_i: Option<Real>,
    pub s_i: Option<Real>,
    /// Mean degree against the expected decay `k (k/v)^i`.
    pub degree_decay_ratio: Real,
    /// Density `k_i / v_i`.
    pub density: Real,
    /// `-s_i / (mu_i - lambda_i)`, when defined.
    pub eigenvalue_gap_ratio: Option<Real>,
    /// `-s_i / (k_i (k_i/v_i)^{m-i-2})`.
    pub clique_free_ratio: Option<Real>,
    /// `sqrt(k) (k/v)^{3m/2 - 2 - i}`.
    pub sigma_floor: Real,
    /// `sigma_i / sigma_floor`.
    pub sigma_ratio: Option<Real>,
    /// Max common-neighbor count over edges of the level graph,
    /// reported at i = m - 3 (zero iff triangle-free).
    pub lambda_max: Option<usize>,
    pub triangle_free: Option<bool>,
}

/// Builds the level-i common-neighborhood graph of a regular graph and
/// computes its decay, eigenvalue, and sigma diagnostics.
pub fn neighborhood_tower(
    g: &Graph,
    m: usize,
    i: usize,
    policy: CliquePolicy,
) -> Result<TowerLevelReport, ConstructionError> {
    let k = g.regular_degree()?;
    let v = g.order();
    if m < 3 || i + 3 > m {
        return Err(ConstructionError::BadLevel { i, max: m as isize - 3 });
    }
    let clique = match policy {
        CliquePolicy::Given(c) => {
            common_neighborhood(g, &c)?;
            if c.len() != i {
                return Err(ConstructionError::NoCliqueFound);
            }
            c
        }
        CliquePolicy::Greedy => {
            let mut clique: Vec<usize> = Vec::with_capacity(i);
            let mut level = g.clone();
            let mut map: Vec<usize> = (0..v).collect();
            for _ in 0..i {
                if level.order() == 0 {
                    return Err(ConstructionError::NoCliqueFound);
                }
                let mut best = 0;
                for idx in 1..level.order() {
                    if level.degree(idx) > level.degree(best) {
                        best = idx;
                    }
                }
                clique.push(map[best]);
                let (next, next_map) = common_neighborhood(g, &clique)?;
                level = next;
                map = next_map;
            }
            clique
        }
    };
    let (level, _) = common_neighborhood(g, &clique)?;
    let v_i = level.order();
    let degrees = level.degrees();
    let degree_min = degrees.iter().copied().min().unwrap_or(0);
    let degree_max = degrees.iter().copied().max().unwrap_or(0);
    let degree_mean = if v_i == 0 {
        0.0
    } else {
        degrees.iter().sum::<usize>() as Real / v_i as Real
    };
    let regular = v_i > 0 && degree_min == degree_max;
    let stats = if regular { asrg_stats(&level).ok() } else { None };
    let (r_i, s_i) = if regular && v_i >= 2 && v_i <= MAX_EIGH_ORDER {
        match spectrum_report(&level) {
            Ok(sp) => (Some(sp.r), Some(sp.s)),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    let kf = k as Real;
    let vf = v as Real;
    let expected_k = kf * (kf / vf).powi(i as i32);
    let degree_decay_ratio = degree_mean / expected_k;
    let density = if v_i == 0 { 0.0 } else { degree_mean / v_i as Real };
    let eigenvalue_gap_ratio = match (&stats, s_i) {
        (Some(st), Some(s)) => {
            let gap = rat_to_real(&st.mu_mean) - rat_to_real(&st.lambda_mean);
            (gap.abs() > 1e-12).then(|| -s / gap)
        }
        _ => None,
    };
    let clique_free_ratio = s_i.and_then(|s| {
        if v_i == 0 || degree_mean == 0.0 {
            return None;
        }
        let denom = degree_mean * density.powi((m - i - 2) as i32);
        (denom > 0.0).then(|| -s / denom)
    });
    let sigma_floor = kf.sqrt() * (kf / vf).powf(1.5 * m as Real - 2.0 - i as Real);
    let sigma_ratio = stats.as_ref().map(|st| st.sigma / sigma_floor);
    let (lambda_max, triangle_free) = if i + 3 == m {
        let mut lam = 0usize;
        for (a, b) in level.edges() {
            lam = lam.max(level.common_count(a, b));
        }
        (Some(lam), Some(lam == 0))
    } else {
        (None, None)
    };
    Ok(TowerLevelReport {
        m,
        i,
        clique,
        v_i,
        degree_mean,
        degree_min,
        degree_max,
        regular,
        stats,
        r_i,
        s_i,
        degree_decay_ratio,
        density,
        eigenvalue_gap_ratio,
        clique_free_ratio,
        sigma_floor,
        sigma_ratio,
        lambda_max,
        triangle_free,
    })
}
