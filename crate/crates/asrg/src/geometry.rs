//! Points and lines of PG(n, q), quadratic forms, caps, and secant
//! profiles.
//!
//! Projective points are kept in a canonical representative with the
//! first nonzero coordinate scaled to 1, so equality, hashing, and file
//! serialization are all unambiguous. Cap statistics (the per-exterior
//! secant counts `h_p`, their mean and variance) are exact rationals.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Elem, Field, FieldError, SquareClass};
use crate::Rat;

/// Hard cap on enumerated point counts.
pub const MAX_POINTS: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("PG({n}, {q}) has {count} points, above the {MAX_POINTS} limit")]
    SizeLimit { n: u32, q: u32, count: u64 },
    #[error("line through identical points is undefined")]
    IdenticalPoints,
    #[error("form kind does not match dimension {dim}")]
    KindDimMismatch { dim: u32 },
    #[error("quadratic-form geometry requires odd characteristic")]
    CharTwo,
    #[error("vector has length {got}, expected {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("collinear triple {0:?}, {1:?}, {2:?}")]
    CollinearTriple(ProjPoint, ProjPoint, ProjPoint),
    #[error("cap has fewer than two points")]
    TooSmall,
    #[error("degenerate quadratic form")]
    Degenerate,
    #[error("invalid cap file: {0}")]
    Parse(String),
}

/// A projective point, stored as the canonical representative whose
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    /// Canonicalizes an arbitrary nonzero coordinate vector.
    pub fn new(field: &Field, coords: &[Elem]) -> Option<ProjPoint> {
        let first = coords.iter().position(|c| c.0 != 0)?;
        let inv = field.inv(coords[first]).expect("nonzero");
        let canon = coords
            .iter()
            .map(|&c| field.mul(c, inv).0)
            .collect::<Vec<_>>();
        Some(ProjPoint { coords: canon })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn elems(&self) -> Vec<Elem> {
        self.coords.iter().map(|&c| Elem(c)).collect()
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Number of points of PG(n, q): `(q^(n+1) - 1) / (q - 1)`.
pub fn pg_point_count(n: u32, q: u64) -> u64 {
    let mut acc = 0u64;
    for i in 0..=n {
        acc = acc.saturating_add(q.saturating_pow(i));
    }
    acc
}

/// Enumerates the canonical points of PG(n, q) in lexicographic order
/// of their coordinate vectors.
pub fn pg_points(field: &Field, n: u32) -> Result<Vec<ProjPoint>, GeometryError> {
    let q = field.order() as u64;
    let count = pg_point_count(n, q);
    if count > MAX_POINTS {
        return Err(GeometryError::SizeLimit {
            n,
            q: field.order(),
            count,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    // Canonical points sorted lexicographically: more leading zeros
    // sort first because 0 is the least element index.
    for lead in (0..=n).rev() {
        let free = (n - lead) as usize;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut coords = vec![0u32; lead as usize];
            coords.push(1);
            let mut rest = vec![0u32; free];
            let mut m = idx;
            for slot in rest.iter_mut().rev() {
                *slot = (m % q) as u32;
                m /= q;
            }
            coords.extend(rest);
            out.push(ProjPoint { coords });
        }
    }
    Ok(out)
}

/// The q + 1 canonical points of the line through two distinct points,
/// sorted lexicographically.
pub fn line_points(
    field: &Field,
    a: &ProjPoint,
    b: &ProjPoint,
) -> Result<Vec<ProjPoint>, GeometryError> {
    if a == b {
        return Err(GeometryError::IdenticalPoints);
    }
    if a.coords.len() != b.coords.len() {
        return Err(GeometryError::DimMismatch {
            expected: a.coords.len(),
            got: b.coords.len(),
        });
    }
    let mut pts = Vec::with_capacity(field.order() as usize + 1);
    pts.push(a.clone());
    for alpha in field.elems() {
        let combo: Vec<Elem> = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| field.add(field.mul(alpha, Elem(x)), Elem(y)))
            .collect();
        pts.push(ProjPoint::new(field, &combo).expect("a, b independent"));
    }
    pts.sort();
    pts.dedup();
    debug_assert_eq!(pts.len(), field.order() as usize + 1);
    Ok(pts)
}

/// Isomorphism type of a nondegenerate quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// Odd dimension; the single type.
    Parabolic,
    /// Even dimension, ε = +1.
    Hyperbolic,
    /// Even dimension, ε = -1.
    Elliptic,
}

impl FormKind {
    /// ε of the even-dimensional types.
    pub fn epsilon(self) -> Option<i8> {
        match self {
            FormKind::Hyperbolic => Some(1),
            FormKind::Elliptic => Some(-1),
            FormKind::Parabolic => None,
        }
    }
}

/// A quadratic form `Q(x) = x^T M x` with `M` upper triangular.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    field: Arc<Field>,
    dim: u32,
    /// Upper-triangular coefficient matrix, row major, `dim x dim`.
    gram: Vec<Elem>,
    kind: FormKind,
}

impl QuadraticForm {
    /// Builds the canonical form of the given kind.
    ///
    /// Parabolic (odd n): `x0 x1 + x2 x3 + ... + x_{n-1}^2`.
    /// Hyperbolic (even n): sum of hyperbolic pairs.
    /// Elliptic (even n): hyperbolic pairs plus a fixed anisotropic
    /// binary form on the last two coordinates: `x^2 + δ y^2` with δ the
    /// least-index nonsquare when -1 is a square, `x^2 + y^2` otherwise.
    pub fn standard(field: Arc<Field>, dim: u32, kind: FormKind) -> Result<Self, GeometryError> {
        if field.characteristic() == 2 {
            return Err(GeometryError::CharTwo);
        }
        let odd = dim % 2 == 1;
        match kind {
            FormKind::Parabolic if !odd => return Err(GeometryError::KindDimMismatch { dim }),
            FormKind::Hyperbolic | FormKind::Elliptic if odd => {
                return Err(GeometryError::KindDimMismatch { dim })
            }
            _ => {}
        }
        let n = dim as usize;
        let mut gram = vec![Elem::ZERO; n * n];
        let pairs = match kind {
            FormKind::Parabolic => (n - 1) / 2,
            FormKind::Hyperbolic => n / 2,
            FormKind::Elliptic => n / 2 - 1,
        };
        for i in 0..pairs {
            gram[(2 * i) * n + 2 * i + 1] = Elem::ONE;
        }
        match kind {
            FormKind::Parabolic => {
                gram[(n - 1) * n + (n - 1)] = Elem::ONE;
            }
            FormKind::Hyperbolic => {}
            FormKind::Elliptic => {
                let delta = if field.gamma() == 1 {
                    field.least_nonsquare()?
                } else {
                    Elem::ONE
                };
                gram[(n - 2) * n + (n - 2)] = Elem::ONE;
                gram[(n - 1) * n + (n - 1)] = delta;
            }
        }
        let form = QuadraticForm {
            field,
            dim,
            gram,
            kind,
        };
        if !form.is_nondegenerate() {
            return Err(GeometryError::Degenerate);
        }
        Ok(form)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn eval(&self, x: &[Elem]) -> Result<Elem, GeometryError> {
        let n = self.dim as usize;
        if x.len() != n {
            return Err(GeometryError::DimMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for i in 0..n {
            for j in i..n {
                let c = self.gram[i * n + j];
                if c != Elem::ZERO {
                    acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
                }
            }
        }
        Ok(acc)
    }

    /// The polarization `B(x, y) = Q(x+y) - Q(x) - Q(y)`, computed from
    /// the symmetrized matrix `M + M^T`.
    pub fn bilinear(&self, x: &[Elem], y: &[Elem]) -> Result<Elem, GeometryError> {
        let n = self.dim as usize;
        if x.len() != n || y.len() != n {
            return Err(GeometryError::DimMismatch {
                expected: n,
                got: x.len().max(y.len()),
            });
        }
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for i in 0..n {
            for j in 0..n {
                // (M + M^T)_{ij}
                let m_ij = if i <= j { self.gram[i * n + j] } else { Elem::ZERO };
                let m_ji = if j <= i { self.gram[j * n + i] } else { Elem::ZERO };
                let s = f.add(m_ij, m_ji);
                if s != Elem::ZERO {
                    acc = f.add(acc, f.mul(s, f.mul(x[i], y[j])));
                }
            }
        }
        Ok(acc)
    }

    /// Determinant of the symmetrized matrix is nonzero (odd char).
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.dim as usize;
        let f = &self.field;
        let mut m = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let a = if i <= j { self.gram[i * n + j] } else { Elem::ZERO };
                let b = if j <= i { self.gram[j * n + i] } else { Elem::ZERO };
                m[i * n + j] = f.add(a, b);
            }
        }
        // Gaussian elimination; determinant nonzero iff full rank.
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != Elem::ZERO);
            let Some(pr) = pivot else { return false };
            if pr != col {
                for j in 0..n {
                    m.swap(col * n + j, pr * n + j);
                }
            }
            let inv = f.inv(m[col * n + col]).expect("pivot nonzero");
            for r in col + 1..n {
                let factor = f.mul(m[r * n + col], inv);
                if factor != Elem::ZERO {
                    for j in col..n {
                        let sub = f.mul(factor, m[col * n + j]);
                        m[r * n + j] = f.sub(m[r * n + j], sub);
                    }
                }
            }
        }
        true
    }

    /// Number of projective points with `Q(x) = 0`, by enumeration.
    pub fn singular_count(&self) -> Result<u64, GeometryError> {
        let pts = pg_points(&self.field, self.dim - 1)?;
        let mut count = 0;
        for p in &pts {
            if self.eval(&p.elems())? == Elem::ZERO {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Nonsingular projective points, split by the square class of Q.
    /// Returns `(square_class, nonsquare_class)` in enumeration order.
    pub fn nonsingular_split(&self) -> Result<(Vec<ProjPoint>, Vec<ProjPoint>), GeometryError> {
        let pts = pg_points(&self.field, self.dim - 1)?;
        let mut sq = Vec::new();
        let mut nsq = Vec::new();
        for p in pts {
            match self.field.square_classify(self.eval(&p.elems())?)? {
                SquareClass::Zero => {}
                SquareClass::Square => sq.push(p),
                SquareClass::Nonsquare => nsq.push(p),
            }
        }
        Ok((sq, nsq))
    }
}

/// A cap: a point set of PG(n, q) with no three points collinear.
#[derive(Debug, Clone)]
pub struct Cap {
    field: Arc<Field>,
    proj_dim: u32,
    points: Vec<ProjPoint>,
    set: HashSet<ProjPoint>,
}

impl Cap {
    /// Verifies cap-ness of a point set; every point triple is checked
    /// through the line walk of each pair.
    pub fn verify(
        field: Arc<Field>,
        proj_dim: u32,
        points: Vec<ProjPoint>,
    ) -> Result<Cap, GeometryError> {
        let mut sorted = points;
        sorted.sort();
        sorted.dedup();
        let set: HashSet<ProjPoint> = sorted.iter().cloned().collect();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let line = line_points(&field, &sorted[i], &sorted[j])?;
                for p in &line {
                    if *p != sorted[i] && *p != sorted[j] && set.contains(p) {
                        return Err(GeometryError::CollinearTriple(
                            sorted[i].clone(),
                            sorted[j].clone(),
                            p.clone(),
                        ));
                    }
                }
            }
        }
        Ok(Cap {
            field,
            proj_dim,
            points: sorted,
            set,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn proj_dim(&self) -> u32 {
        self.proj_dim
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.set.contains(p)
    }

    /// Secant counts over every exterior point, with exact mean and
    /// variance. Each unordered cap pair spans one secant; the walk
    /// touches each secant once, so the total cost is O(t^2 q).
    pub fn secant_profile(&self) -> Result<CapProfile, GeometryError> {
        let t = self.points.len();
        if t < 2 {
            return Err(GeometryError::TooSmall);
        }
        let all = pg_points(&self.field, self.proj_dim)?;
        let index: HashMap<&ProjPoint, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut counts = vec![0u64; all.len()];
        let mut secants = 0u64;
        for i in 0..t {
            for j in i + 1..t {
                secants += 1;
                for p in line_points(&self.field, &self.points[i], &self.points[j])? {
                    if !self.set.contains(&p) {
                        counts[index[&p]] += 1;
                    }
                }
            }
        }
        let mut exterior = Vec::new();
        let mut h_counts = Vec::new();
        for (i, p) in all.into_iter().enumerate() {
            if !self.set.contains(&p) {
                exterior.push(p);
                h_counts.push(counts[i]);
            }
        }
        let d = exterior.len() as i64;
        let total: u64 = h_counts.iter().sum();
        let mean = Rat::new(BigInt::from(total), BigInt::from(d));
        let mut var_num = Rat::from(BigInt::from(0));
        for &c in &h_counts {
            let diff = Rat::from(BigInt::from(c)) - mean.clone();
            var_num += diff.clone() * diff;
        }
        let variance = var_num / Rat::from(BigInt::from(d));
        Ok(CapProfile {
            exterior,
            counts: h_counts,
            mean,
            variance,
            secants,
        })
    }
}

/// Per-exterior-point secant counts of a cap.
#[derive(Debug, Clone)]
pub struct CapProfile {
    /// Exterior points, in PG enumeration order.
    pub exterior: Vec<ProjPoint>,
    /// `h_p` aligned with `exterior`.
    pub counts: Vec<u64>,
    /// Exact mean `h`.
    pub mean: Rat,
    /// Exact variance of `h_p` over the exterior points.
    pub variance: Rat,
    /// Number of secants, `t (t-1) / 2`.
    pub secants: u64,
}

impl CapProfile {
    /// Looks up `h_p` for an exterior point.
    pub fn count_of(&self, p: &ProjPoint) -> Option<u64> {
        self.exterior
            .iter()
            .position(|q| q == p)
            .map(|i| self.counts[i])
    }
}

/// Recipes for test-fixture caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    /// `{(1 : t : t^2)} ∪ {(0 : 0 : 1)}` in PG(2, q); size q + 1.
    Conic,
    /// Singular points of the standard elliptic form in PG(3, q);
    /// size q^2 + 1.
    EllipticQuadric,
    /// Seeded random greedy extension in PG(n, q).
    GreedyRandom,
}

/// Builds a verified cap of the requested kind.
pub fn cap_construct(
    field: Arc<Field>,
    kind: CapKind,
    proj_dim: u32,
    seed: u64,
) -> Result<Cap, GeometryError> {
    match kind {
        CapKind::Conic => {
            if proj_dim != 2 {
                return Err(GeometryError::KindDimMismatch { dim: proj_dim });
            }
            let mut pts = Vec::new();
            for t in field.elems() {
                let coords = [Elem::ONE, t, field.mul(t, t)];
                pts.push(ProjPoint::new(&field, &coords).unwrap());
            }
            pts.push(ProjPoint::new(&field, &[Elem::ZERO, Elem::ZERO, Elem::ONE]).unwrap());
            Cap::verify(field, proj_dim, pts)
        }
        CapKind::EllipticQuadric => {
            if proj_dim != 3 {
                return Err(GeometryError::KindDimMismatch { dim: proj_dim });
            }
            let form = QuadraticForm::standard(field.clone(), 4, FormKind::Elliptic)?;
            let mut pts = Vec::new();
            for p in pg_points(&field, 3)? {
                if form.eval(&p.elems())? == Elem::ZERO {
                    pts.push(p);
                }
            }
            Cap::verify(field, proj_dim, pts)
        }
        CapKind::GreedyRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order = pg_points(&field, proj_dim)?;
            order.shuffle(&mut rng);
            let mut chosen: Vec<ProjPoint> = Vec::new();
            // Union of all lines through chosen pairs; a candidate is
            // admissible iff it lies on none of them.
            let mut covered: HashSet<ProjPoint> = HashSet::new();
            for cand in order {
                if covered.contains(&cand) || chosen.contains(&cand) {
                    continue;
                }
                for old in &chosen {
                    for p in line_points(&field, old, &cand)? {
                        covered.insert(p);
                    }
                }
                chosen.push(cand);
            }
            Cap::verify(field, proj_dim, chosen)
        }
    }
}

/// Writes a cap in the text format: line 1 `n q`, then one canonical
/// coordinate vector per line as decimal element indices.
pub fn cap_to_string(cap: &Cap) -> String {
    let mut out = format!("{} {}\n", cap.proj_dim(), cap.field().order());
    for p in cap.points() {
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// Parses and verifies a cap from the text format.
pub fn cap_from_str(text: &str) -> Result<Cap, GeometryError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GeometryError::Parse("empty file".into()))?;
    let mut it = header.split_whitespace();
    let n: u32 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GeometryError::Parse("bad header".into()))?;
    let q: u64 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GeometryError::Parse("bad header".into()))?;
    let field = Arc::new(Field::new(q)?);
    let mut pts = Vec::new();
    for line in lines {
        let coords: Result<Vec<u32>, _> = line.split_whitespace().map(|s| s.parse()).collect();
        let coords = coords.map_err(|_| GeometryError::Parse(format!("bad point line: {line}")))?;
        if coords.len() != n as usize + 1 {
            return Err(GeometryError::Parse(format!(
                "point has {} coordinates, expected {}",
                coords.len(),
                n + 1
            )));
        }
        let elems: Result<Vec<Elem>, _> = coords.iter().map(|&c| field.elem(c)).collect();
        let p = ProjPoint::new(&field, &elems?)
            .ok_or_else(|| GeometryError::Parse("zero vector is not a point".into()))?;
        pts.push(p);
    }
    Cap::verify(field, n, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Arc<Field> {
        Arc::new(Field::new(q).unwrap())
    }

    #[test]
    fn pg_point_counts() {
        let f3 = f(3);
        assert_eq!(pg_points(&f3, 2).unwrap().len(), 13);
        assert_eq!(pg_points(&f3, 3).unwrap().len(), 40);
        let f5 = f(5);
        assert_eq!(pg_points(&f5, 1).unwrap().len(), 6);
        for (n, q) in [(2u32, 3u64), (3, 3), (2, 5), (4, 3), (2, 9)] {
            let field = f(q);
            let pts = pg_points(&field, n).unwrap();
            assert_eq!(pts.len() as u64, pg_point_count(n, q));
            let set: HashSet<_> = pts.iter().cloned().collect();
            assert_eq!(set.len(), pts.len());
            let mut sorted = pts.clone();
            sorted.sort();
            assert_eq!(sorted, pts, "lexicographic enumeration order");
        }
    }

    #[test]
    fn line_through_axes_in_pg23() {
        let f3 = f(3);
        let a = ProjPoint::new(&f3, &[Elem(1), Elem(0), Elem(0)]).unwrap();
        let b = ProjPoint::new(&f3, &[Elem(0), Elem(1), Elem(0)]).unwrap();
        let line = line_points(&f3, &a, &b).unwrap();
        let expect: Vec<ProjPoint> = [
            [0u32, 1, 0],
            [1, 0, 0],
            [1, 1, 0],
            [1, 2, 0],
        ]
        .iter()
        .map(|c| ProjPoint::new(&f3, &[Elem(c[0]), Elem(c[1]), Elem(c[2])]).unwrap())
        .collect();
        assert_eq!(line, expect);
        assert!(matches!(
            line_points(&f3, &a, &a),
            Err(GeometryError::IdenticalPoints)
        ));
    }

    #[test]
    fn pg1_line_is_whole_space() {
        let f3 = f(3);
        let pts = pg_points(&f3, 1).unwrap();
        let line = line_points(&f3, &pts[0], &pts[1]).unwrap();
        assert_eq!(line.len(), 4);
        let set: HashSet<_> = line.into_iter().collect();
        assert_eq!(set, pts.into_iter().collect());
    }

    #[test]
    fn standard_forms() {
        let f3 = f(3);
        // Elliptic over GF(3): -1 is a nonsquare, so x^2 + y^2 on the tail.
        let q4 = QuadraticForm::standard(f3.clone(), 4, FormKind::Elliptic).unwrap();
        assert_eq!(q4.singular_count().unwrap(), 10);
        let h4 = QuadraticForm::standard(f3.clone(), 4, FormKind::Hyperbolic).unwrap();
        assert_eq!(h4.singular_count().unwrap(), 16);
        assert!(matches!(
            QuadraticForm::standard(f3.clone(), 3, FormKind::Hyperbolic),
            Err(GeometryError::KindDimMismatch { dim: 3 })
        ));
        let f5 = f(5);
        let h2 = QuadraticForm::standard(f5, 2, FormKind::Hyperbolic).unwrap();
        assert_eq!(h2.singular_count().unwrap(), 2);
    }

    #[test]
    fn singular_counts_match_formula() {
        // (q^{m-1} + eps)(q^m - eps) / (q - 1) for dim 2m.
        for q in [3u64, 5, 7] {
            for dim in [2u32, 4, 6] {
                let m = dim / 2;
                let field = f(q);
                for (kind, eps) in [(FormKind::Hyperbolic, 1i64), (FormKind::Elliptic, -1)] {
                    let form = QuadraticForm::standard(field.clone(), dim, kind).unwrap();
                    let qm1 = q.pow(m - 1) as i64;
                    let qm = q.pow(m) as i64;
                    let expect = (qm1 + eps) * (qm - eps) / (q as i64 - 1);
                    assert_eq!(
                        form.singular_count().unwrap() as i64,
                        expect,
                        "q={q} dim={dim} {kind:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bilinear_matches_polarization() {
        let f7 = f(7);
        let form = QuadraticForm::standard(f7.clone(), 4, FormKind::Hyperbolic).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        use rand::Rng;
        for _ in 0..20 {
            let x: Vec<Elem> = (0..4).map(|_| Elem(rng.gen_range(0..7))).collect();
            let y: Vec<Elem> = (0..4).map(|_| Elem(rng.gen_range(0..7))).collect();
            let sum: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f7.add(a, b)).collect();
            let lhs = form.bilinear(&x, &y).unwrap();
            let rhs = f7.sub(
                f7.sub(form.eval(&sum).unwrap(), form.eval(&x).unwrap()),
                form.eval(&y).unwrap(),
            );
            assert_eq!(lhs, rhs);
            // B(x, x) = 2 Q(x) in odd characteristic.
            assert_eq!(
                form.bilinear(&x, &x).unwrap(),
                f7.double(form.eval(&x).unwrap())
            );
        }
    }

    #[test]
    fn bilinear_example_hyperbolic_plane() {
        let f3 = f(3);
        let q = QuadraticForm::standard(f3, 2, FormKind::Hyperbolic).unwrap();
        assert_eq!(q.eval(&[Elem(1), Elem(2)]).unwrap(), Elem(2));
        assert_eq!(
            q.bilinear(&[Elem(1), Elem(0)], &[Elem(0), Elem(1)]).unwrap(),
            Elem(1)
        );
    }

    #[test]
    fn conic_is_a_cap_with_expected_profile() {
        let f3 = f(3);
        let cap = cap_construct(f3, CapKind::Conic, 2, 0).unwrap();
        assert_eq!(cap.len(), 4);
        let prof = cap.secant_profile().unwrap();
        assert_eq!(prof.secants, 6);
        assert_eq!(prof.mean, crate::rat(4, 3));
        assert_eq!(prof.variance, crate::rat(2, 9));
        let mut hist = prof.counts.clone();
        hist.sort();
        assert_eq!(hist, vec![1, 1, 1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn collinear_triple_rejected() {
        let f3 = f(3);
        let pts = pg_points(&f3, 2).unwrap();
        let line = line_points(&f3, &pts[0], &pts[5]).unwrap();
        let triple = line[..3].to_vec();
        assert!(matches!(
            Cap::verify(f3.clone(), 2, triple),
            Err(GeometryError::CollinearTriple(_, _, _))
        ));
        // Empty set is vacuously a cap.
        assert_eq!(Cap::verify(f3, 2, Vec::new()).unwrap().len(), 0);
    }

    #[test]
    fn two_point_cap_in_pg13() {
        let f3 = f(3);
        let pts = pg_points(&f3, 1).unwrap();
        let cap = Cap::verify(f3, 1, pts[..2].to_vec()).unwrap();
        let prof = cap.secant_profile().unwrap();
        assert_eq!(prof.exterior.len(), 2);
        assert!(prof.counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn elliptic_quadric_cap_and_sum_identity() {
        let f3 = f(3);
        let cap = cap_construct(f3, CapKind::EllipticQuadric, 3, 0).unwrap();
        assert_eq!(cap.len(), 10);
        let prof = cap.secant_profile().unwrap();
        let total: u64 = prof.counts.iter().sum();
        // Sum over exterior points of h_p = #secants * (q - 1).
        assert_eq!(total, 45 * 2);
    }

    #[test]
    fn secant_sum_identity_generic() {
        for (kind, n, q, seed) in [
            (CapKind::Conic, 2u32, 5u64, 0u64),
            (CapKind::GreedyRandom, 3, 3, 5),
            (CapKind::GreedyRandom, 2, 7, 9),
        ] {
            let field = f(q);
            let cap = cap_construct(field, kind, n, seed).unwrap();
            let t = cap.len() as u64;
            let prof = cap.secant_profile().unwrap();
            let total: u64 = prof.counts.iter().sum();
            assert_eq!(total, t * (t - 1) / 2 * (q - 1));
        }
    }

    #[test]
    fn greedy_random_is_deterministic() {
        let a = cap_construct(f(3), CapKind::GreedyRandom, 4, 7).unwrap();
        let b = cap_construct(f(3), CapKind::GreedyRandom, 4, 7).unwrap();
        assert_eq!(a.points(), b.points());
        assert!(a.len() >= 5);
    }

    #[test]
    fn cap_roundtrip_through_text() {
        let cap = cap_construct(f(3), CapKind::Conic, 2, 0).unwrap();
        let text = cap_to_string(&cap);
        let back = cap_from_str(&text).unwrap();
        assert_eq!(back.points(), cap.points());
    }
}
