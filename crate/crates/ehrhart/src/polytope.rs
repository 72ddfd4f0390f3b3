//! Integral convex polytopes: simplices, axis-aligned boxes, products, and
//! half-space descriptions, with exact membership tests and a JSON spec
//! format.
//!
//! All polytopes are full-dimensional (ambient dimension equals polytope
//! dimension) and immutable after construction. Simplex membership is
//! decided through the barycentric system, whose adjugate matrix is
//! computed once at construction so that every later test is pure integer
//! arithmetic.

use crate::error::{Error, Result};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Number;

pub type LatticePoint = Vec<BigInt>;

/// One linear inequality `normal · x <= rhs` with integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticePolytope {
    Simplex(Simplex),
    Box(IntervalBox),
    Product(Vec<LatticePolytope>),
    HRep(HRep),
}

/// A full-dimensional lattice simplex: `d + 1` affinely independent
/// vertices in ambient dimension `d`.
#[derive(Debug, Clone)]
pub struct Simplex {
    vertices: Vec<LatticePoint>,
    bary: Barycentric,
}

/// Adjugate of the barycentric matrix `M` (first row all ones, then the
/// vertex coordinates column by column), with `M * adjugate = det * I`.
/// Barycentric coordinates of `x` are `adjugate * (1, x) / det`.
#[derive(Debug, Clone)]
struct Barycentric {
    adjugate: Vec<Vec<BigInt>>,
    det: BigInt,
}

/// Axis-aligned box, the product of integer intervals `[lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBox {
    intervals: Vec<(BigInt, BigInt)>,
    allow_degenerate: bool,
}

/// Half-space description with an explicit integer bounding box. The box is
/// a search region for enumeration: it must contain the polytope, and the
/// counting pipeline's interpolation guard catches descriptions whose
/// lattice counts are not polynomial (e.g. non-integral vertex data).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    dim: usize,
    inequalities: Vec<Halfspace>,
    bbox: Vec<(BigInt, BigInt)>,
}

impl PartialEq for Simplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}
impl Eq for Simplex {}

impl Simplex {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Simplex> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidParameter("simplex needs vertices".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "simplex vertices must have at least one coordinate".into(),
            ));
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        if vertices.len() != dim + 1 {
            return Err(Error::InvalidParameter(format!(
                "a full-dimensional simplex in dimension {dim} needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        let bary = Barycentric::build(&vertices)?;
        Ok(Simplex { vertices, bary })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `point / denom` lies in the simplex iff every barycentric coordinate
    /// is nonnegative, i.e. every row of `adjugate * (denom, point)` has
    /// the sign of `det` (or vanishes). `denom` must be positive.
    fn contains_scaled(&self, point: &[BigInt], denom: &BigInt) -> bool {
        let det_negative = self.bary.det.is_negative();
        self.bary.adjugate.iter().all(|row| {
            let mut acc = &row[0] * denom;
            for (c, x) in row[1..].iter().zip(point) {
                acc += c * x;
            }
            acc.is_zero() || (acc.is_negative() == det_negative)
        })
    }
}

impl Barycentric {
    fn build(vertices: &[LatticePoint]) -> Result<Barycentric> {
        let k = vertices.len();
        // Rows of M: the all-ones row, then one row per coordinate.
        let mut m: Vec<Vec<Rat>> = Vec::with_capacity(k);
        m.push(vec![Rat::one(); k]);
        for i in 0..k - 1 {
            m.push(
                vertices
                    .iter()
                    .map(|v| Rat::from_integer(v[i].clone()))
                    .collect(),
            );
        }

        // Gauss-Jordan on [M | I], tracking the determinant.
        let mut inv: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        let mut det = Rat::one();
        for col in 0..k {
            let pivot_row = (col..k).find(|&r| !m[r][col].is_zero());
            let Some(pivot_row) = pivot_row else {
                return Err(Error::AffinelyDependent);
            };
            if pivot_row != col {
                m.swap(pivot_row, col);
                inv.swap(pivot_row, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            let pivot_inv = pivot.recip();
            for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
                *x *= &pivot_inv;
            }
            for row in 0..k {
                if row == col || m[row][col].is_zero() {
                    continue;
                }
                let factor = m[row][col].clone();
                for j in 0..k {
                    let delta = &m[col][j] * &factor;
                    m[row][j] = &m[row][j] - &delta;
                    let delta = &inv[col][j] * &factor;
                    inv[row][j] = &inv[row][j] - &delta;
                }
            }
        }

        // M is an integer matrix, so det is an integer and det * inv is the
        // integer adjugate.
        debug_assert!(det.is_integer());
        let det = det.to_integer();
        let adjugate = inv
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        let scaled = x * Rat::from_integer(det.clone());
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(Barycentric { adjugate, det })
    }
}

impl IntervalBox {
    pub fn new(intervals: Vec<(BigInt, BigInt)>, allow_degenerate: bool) -> Result<IntervalBox> {
        if intervals.is_empty() {
            return Err(Error::InvalidParameter("box needs intervals".into()));
        }
        for (lo, hi) in &intervals {
            if lo > hi {
                return Err(Error::EmptyInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
            if lo == hi && !allow_degenerate {
                return Err(Error::DegenerateInterval { at: lo.to_string() });
            }
        }
        Ok(IntervalBox {
            intervals,
            allow_degenerate,
        })
    }

    pub fn intervals(&self) -> &[(BigInt, BigInt)] {
        &self.intervals
    }

    fn contains_scaled(&self, point: &[BigInt], denom: &BigInt) -> bool {
        self.intervals
            .iter()
            .zip(point)
            .all(|((lo, hi), x)| &(lo * denom) <= x && x <= &(hi * denom))
    }
}

impl HRep {
    pub fn new(
        dim: usize,
        inequalities: Vec<Halfspace>,
        bbox: Vec<(BigInt, BigInt)>,
    ) -> Result<HRep> {
        if dim == 0 {
            return Err(Error::InvalidParameter("hrep dimension must be >= 1".into()));
        }
        for ineq in &inequalities {
            if ineq.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: ineq.normal.len(),
                });
            }
            if ineq.normal.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidParameter(
                    "hrep inequality has an all-zero normal".into(),
                ));
            }
        }
        if bbox.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bbox.len(),
            });
        }
        for (lo, hi) in &bbox {
            if lo > hi {
                return Err(Error::EmptyInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
        }
        Ok(HRep {
            dim,
            inequalities,
            bbox,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn bbox(&self) -> &[(BigInt, BigInt)] {
        &self.bbox
    }

    fn contains_scaled(&self, point: &[BigInt], denom: &BigInt) -> bool {
        self.inequalities.iter().all(|ineq| {
            let mut dot = BigInt::zero();
            for (c, x) in ineq.normal.iter().zip(point) {
                dot += c * x;
            }
            dot <= &ineq.rhs * denom
        })
    }
}

impl LatticePolytope {
    pub fn simplex(vertices: Vec<LatticePoint>) -> Result<Self> {
        Ok(LatticePolytope::Simplex(Simplex::new(vertices)?))
    }

    pub fn simplex_i64(vertices: &[&[i64]]) -> Result<Self> {
        Self::simplex(
            vertices
                .iter()
                .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn interval_box(intervals: Vec<(BigInt, BigInt)>) -> Result<Self> {
        Ok(LatticePolytope::Box(IntervalBox::new(intervals, false)?))
    }

    pub fn interval_box_i64(intervals: &[(i64, i64)]) -> Result<Self> {
        Self::interval_box(
            intervals
                .iter()
                .map(|&(lo, hi)| (BigInt::from(lo), BigInt::from(hi)))
                .collect(),
        )
    }

    pub fn hrep(dim: usize, inequalities: Vec<Halfspace>, bbox: Vec<(BigInt, BigInt)>) -> Result<Self> {
        Ok(LatticePolytope::HRep(HRep::new(dim, inequalities, bbox)?))
    }

    /// Product with concatenated ambient coordinates; nested products are
    /// flattened into a single factor list.
    pub fn product(self, other: LatticePolytope) -> LatticePolytope {
        let mut factors = match self {
            LatticePolytope::Product(f) => f,
            p => vec![p],
        };
        match other {
            LatticePolytope::Product(g) => factors.extend(g),
            q => factors.push(q),
        }
        LatticePolytope::Product(factors)
    }

    pub fn product_of(factors: Vec<LatticePolytope>) -> Result<LatticePolytope> {
        let mut it = factors.into_iter();
        let Some(first) = it.next() else {
            return Err(Error::InvalidParameter("product needs factors".into()));
        };
        Ok(it.fold(first, |acc, f| acc.product(f)))
    }

    /// `self × [0, k]`, raising the dimension by one. The dilates of the
    /// result count `(k·n + 1)` copies of each slice, which multiplies the
    /// Ehrhart polynomial by exactly that factor.
    pub fn prism(self, k: u64) -> Result<LatticePolytope> {
        if k == 0 {
            return Err(Error::InvalidParameter("prism height k must be >= 1".into()));
        }
        let segment = LatticePolytope::interval_box(vec![(BigInt::zero(), BigInt::from(k))])?;
        Ok(self.product(segment))
    }

    /// Polytope dimension; equals the ambient dimension (everything here is
    /// full-dimensional).
    pub fn dimension(&self) -> usize {
        match self {
            LatticePolytope::Simplex(s) => s.dim(),
            LatticePolytope::Box(b) => b.intervals.len(),
            LatticePolytope::Product(fs) => fs.iter().map(|f| f.dimension()).sum(),
            LatticePolytope::HRep(h) => h.dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dimension()
    }

    /// Exact membership of a rational point in the closed polytope.
    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: point.len(),
            });
        }
        // Clear denominators once; every variant then tests integers.
        let denom = point
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums: Vec<BigInt> = point
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        Ok(self.contains_scaled_unchecked(&nums, &denom))
    }

    /// Membership of `point / denom` (`denom` > 0) — the dilate test
    /// `q ∈ nP ⟺ q/n ∈ P` with denominators cleared. This is the single
    /// membership path: [`contains`](Self::contains) routes through it.
    pub fn contains_scaled(&self, point: &[BigInt], denom: &BigInt) -> Result<bool> {
        if point.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: point.len(),
            });
        }
        if !denom.is_positive() {
            return Err(Error::InvalidParameter(
                "membership denominator must be positive".into(),
            ));
        }
        Ok(self.contains_scaled_unchecked(point, denom))
    }

    fn contains_scaled_unchecked(&self, point: &[BigInt], denom: &BigInt) -> bool {
        match self {
            LatticePolytope::Simplex(s) => s.contains_scaled(point, denom),
            LatticePolytope::Box(b) => b.contains_scaled(point, denom),
            LatticePolytope::HRep(h) => h.contains_scaled(point, denom),
            LatticePolytope::Product(fs) => {
                let mut offset = 0;
                fs.iter().all(|f| {
                    let d = f.ambient_dim();
                    let ok = f.contains_scaled_unchecked(&point[offset..offset + d], denom);
                    offset += d;
                    ok
                })
            }
        }
    }

    /// Componentwise integer bounding box of the (undilated) polytope.
    pub fn bounding_box(&self) -> Vec<(BigInt, BigInt)> {
        match self {
            LatticePolytope::Simplex(s) => {
                let d = s.dim();
                (0..d)
                    .map(|i| {
                        let lo = s.vertices.iter().map(|v| &v[i]).min().unwrap().clone();
                        let hi = s.vertices.iter().map(|v| &v[i]).max().unwrap().clone();
                        (lo, hi)
                    })
                    .collect()
            }
            LatticePolytope::Box(b) => b.intervals.clone(),
            LatticePolytope::HRep(h) => h.bbox.clone(),
            LatticePolytope::Product(fs) => fs.iter().flat_map(|f| f.bounding_box()).collect(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            LatticePolytope::Simplex(_) => "simplex",
            LatticePolytope::Box(_) => "box",
            LatticePolytope::Product(_) => "product",
            LatticePolytope::HRep(_) => "hrep",
        }
    }
}

// ---------------------------------------------------------------------------
// Spec documents
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    Simplex {
        vertices: Vec<Vec<Number>>,
    },
    Box {
        intervals: Vec<[Number; 2]>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        allow_degenerate: bool,
    },
    Product {
        factors: Vec<RawSpec>,
    },
    Hrep {
        dim: usize,
        inequalities: Vec<RawIneq>,
        bbox: Vec<[Number; 2]>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIneq {
    normal: Vec<Number>,
    rhs: Number,
}

fn number_to_bigint(n: &Number, what: &str) -> Result<BigInt> {
    let s = n.to_string();
    s.parse::<BigInt>()
        .map_err(|_| Error::ParseSpec(format!("{what}: expected an integer, got {s}")))
}

fn bigint_to_number(x: &BigInt) -> Number {
    x.to_string()
        .parse::<Number>()
        .expect("integer string is a valid JSON number")
}

fn interval_from_raw(raw: &[Number; 2], what: &str) -> Result<(BigInt, BigInt)> {
    Ok((
        number_to_bigint(&raw[0], what)?,
        number_to_bigint(&raw[1], what)?,
    ))
}

impl RawSpec {
    fn into_polytope(self) -> Result<LatticePolytope> {
        match self {
            RawSpec::Simplex { vertices } => {
                let verts = vertices
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|c| number_to_bigint(c, "simplex vertex coordinate"))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                LatticePolytope::simplex(verts)
            }
            RawSpec::Box {
                intervals,
                allow_degenerate,
            } => {
                let ivs = intervals
                    .iter()
                    .map(|iv| interval_from_raw(iv, "box interval"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(LatticePolytope::Box(IntervalBox::new(ivs, allow_degenerate)?))
            }
            RawSpec::Product { factors } => {
                let fs = factors
                    .into_iter()
                    .map(RawSpec::into_polytope)
                    .collect::<Result<Vec<_>>>()?;
                LatticePolytope::product_of(fs)
            }
            RawSpec::Hrep {
                dim,
                inequalities,
                bbox,
            } => {
                let ineqs = inequalities
                    .iter()
                    .map(|i| {
                        Ok(Halfspace {
                            normal: i
                                .normal
                                .iter()
                                .map(|c| number_to_bigint(c, "hrep normal coordinate"))
                                .collect::<Result<Vec<_>>>()?,
                            rhs: number_to_bigint(&i.rhs, "hrep rhs")?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let bb = bbox
                    .iter()
                    .map(|iv| interval_from_raw(iv, "hrep bbox interval"))
                    .collect::<Result<Vec<_>>>()?;
                LatticePolytope::hrep(dim, ineqs, bb)
            }
        }
    }

    fn from_polytope(p: &LatticePolytope) -> RawSpec {
        match p {
            LatticePolytope::Simplex(s) => RawSpec::Simplex {
                vertices: s
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(bigint_to_number).collect())
                    .collect(),
            },
            LatticePolytope::Box(b) => RawSpec::Box {
                intervals: b
                    .intervals
                    .iter()
                    .map(|(lo, hi)| [bigint_to_number(lo), bigint_to_number(hi)])
                    .collect(),
                allow_degenerate: b.allow_degenerate,
            },
            LatticePolytope::Product(fs) => RawSpec::Product {
                factors: fs.iter().map(RawSpec::from_polytope).collect(),
            },
            LatticePolytope::HRep(h) => RawSpec::Hrep {
                dim: h.dim,
                inequalities: h
                    .inequalities
                    .iter()
                    .map(|i| RawIneq {
                        normal: i.normal.iter().map(bigint_to_number).collect(),
                        rhs: bigint_to_number(&i.rhs),
                    })
                    .collect(),
                bbox: h
                    .bbox
                    .iter()
                    .map(|(lo, hi)| [bigint_to_number(lo), bigint_to_number(hi)])
                    .collect(),
            },
        }
    }
}

/// Parse a polytope spec document. Structural problems (wrong vertex
/// counts, affinely dependent vertices, empty intervals, missing bbox)
/// are reported with the serde position where applicable.
pub fn parse_spec(text: &str) -> Result<LatticePolytope> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| Error::ParseSpec(e.to_string()))?;
    raw.into_polytope()
}

/// Serialize a polytope to its spec document; `parse_spec` returns a
/// structurally equal polytope.
pub fn serialize_spec(p: &LatticePolytope) -> String {
    let mut s = serde_json::to_string(&RawSpec::from_polytope(p))
        .expect("spec serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn reeve13() -> LatticePolytope {
        LatticePolytope::simplex_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 13]]).unwrap()
    }

    fn unit_tetrahedron() -> LatticePolytope {
        LatticePolytope::simplex_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(reeve13().dimension(), 3);
        let box2 = LatticePolytope::interval_box_i64(&[(0, 1), (0, 2)]).unwrap();
        assert_eq!(box2.dimension(), 2);
        let seg = LatticePolytope::interval_box_i64(&[(0, 1)]).unwrap();
        assert_eq!(reeve13().product(seg).dimension(), 4);
    }

    #[test]
    fn simplex_membership() {
        let tetra = unit_tetrahedron();
        assert!(tetra
            .contains(&[rat(1, 4), rat(1, 4), rat(1, 4)])
            .unwrap());
        let q13 = reeve13();
        assert!(q13.contains(&[rat_int(1), rat_int(1), rat_int(13)]).unwrap());
        // The z-coordinate forces weight 1/13 on the apex, and the
        // x-equation then needs a negative weight.
        assert!(!q13.contains(&[rat_int(0), rat_int(0), rat_int(1)]).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let err = reeve13().contains(&[rat_int(0), rat_int(0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn simplex_vertices_are_members() {
        for p in [reeve13(), unit_tetrahedron()] {
            let LatticePolytope::Simplex(s) = &p else { unreachable!() };
            for v in s.vertices() {
                let point: Vec<Rat> = v.iter().map(|c| Rat::from_integer(c.clone())).collect();
                assert!(p.contains(&point).unwrap());
            }
        }
    }

    #[test]
    fn box_corners_are_members() {
        let b = LatticePolytope::interval_box_i64(&[(0, 2), (-1, 1)]).unwrap();
        for x in [0, 2] {
            for y in [-1, 1] {
                assert!(b.contains(&[rat_int(x), rat_int(y)]).unwrap());
            }
        }
        assert!(!b.contains(&[rat_int(3), rat_int(0)]).unwrap());
        assert!(b.contains(&[rat(1, 2), rat(1, 3)]).unwrap());
    }

    #[test]
    fn affinely_dependent_rejected() {
        let err =
            LatticePolytope::simplex_i64(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap_err();
        assert!(matches!(err, Error::AffinelyDependent));
    }

    #[test]
    fn simplex_vertex_count_enforced() {
        let err = LatticePolytope::simplex_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn box_interval_validation() {
        let err = LatticePolytope::interval_box_i64(&[(0, 1), (2, 1)]).unwrap_err();
        assert!(matches!(err, Error::EmptyInterval { .. }));
        let err = LatticePolytope::interval_box_i64(&[(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::DegenerateInterval { .. }));
        assert!(IntervalBox::new(vec![(BigInt::one(), BigInt::one())], true).is_ok());
    }

    #[test]
    fn product_flattens() {
        let seg = || LatticePolytope::interval_box_i64(&[(0, 1)]).unwrap();
        let p = seg().product(seg()).product(seg());
        let LatticePolytope::Product(fs) = &p else { panic!("expected product") };
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|f| matches!(f, LatticePolytope::Box(_))));
        assert_eq!(p.dimension(), 3);
    }

    #[test]
    fn prism_shape() {
        let seg = LatticePolytope::interval_box_i64(&[(0, 1)]).unwrap();
        let square = seg.clone().prism(1).unwrap();
        assert_eq!(square.dimension(), 2);
        assert!(square.contains(&[rat(1, 2), rat(1, 2)]).unwrap());
        assert_eq!(reeve13().prism(2).unwrap().dimension(), 4);
        assert!(matches!(
            seg.prism(0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn product_membership_splits_coordinates() {
        let p = reeve13().product(LatticePolytope::interval_box_i64(&[(0, 2)]).unwrap());
        assert!(p
            .contains(&[rat(1, 2), rat(1, 2), rat(13, 2), rat_int(2)])
            .unwrap());
        assert!(!p
            .contains(&[rat(1, 2), rat(1, 2), rat(13, 2), rat_int(3)])
            .unwrap());
    }

    #[test]
    fn scaled_membership_matches_rational_membership() {
        let q13 = reeve13();
        let denom = BigInt::from(3);
        for x in 0..=3i64 {
            for y in 0..=3i64 {
                for z in 0..=40i64 {
                    let q = vec![BigInt::from(x), BigInt::from(y), BigInt::from(z)];
                    let rational: Vec<Rat> =
                        q.iter().map(|c| Rat::new(c.clone(), denom.clone())).collect();
                    assert_eq!(
                        q13.contains_scaled(&q, &denom).unwrap(),
                        q13.contains(&rational).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn constructor_edge_cases() {
        assert!(matches!(
            LatticePolytope::product_of(vec![]),
            Err(Error::InvalidParameter(_))
        ));
        let err = LatticePolytope::hrep(
            2,
            vec![Halfspace { normal: vec![BigInt::zero(), BigInt::zero()], rhs: BigInt::one() }],
            vec![(BigInt::zero(), BigInt::one()), (BigInt::zero(), BigInt::one())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err = LatticePolytope::hrep(
            2,
            vec![Halfspace { normal: vec![BigInt::one()], rhs: BigInt::one() }],
            vec![(BigInt::zero(), BigInt::one()); 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        // The membership denominator must be positive.
        let seg = LatticePolytope::interval_box_i64(&[(0, 1)]).unwrap();
        let err = seg.contains_scaled(&[BigInt::one()], &BigInt::zero()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn hrep_membership() {
        // Unit square as half-spaces.
        let one = BigInt::one();
        let sq = LatticePolytope::hrep(
            2,
            vec![
                Halfspace { normal: vec![one.clone(), BigInt::zero()], rhs: one.clone() },
                Halfspace { normal: vec![-one.clone(), BigInt::zero()], rhs: BigInt::zero() },
                Halfspace { normal: vec![BigInt::zero(), one.clone()], rhs: one.clone() },
                Halfspace { normal: vec![BigInt::zero(), -one.clone()], rhs: BigInt::zero() },
            ],
            vec![(BigInt::zero(), one.clone()), (BigInt::zero(), one.clone())],
        )
        .unwrap();
        assert!(sq.contains(&[rat(1, 2), rat_int(1)]).unwrap());
        assert!(!sq.contains(&[rat(3, 2), rat_int(0)]).unwrap());
    }

    #[test]
    fn spec_round_trips() {
        let seg = LatticePolytope::interval_box_i64(&[(0, 2)]).unwrap();
        let hrep = LatticePolytope::hrep(
            1,
            vec![Halfspace { normal: vec![BigInt::one()], rhs: BigInt::from(4) }],
            vec![(BigInt::zero(), BigInt::from(4))],
        )
        .unwrap();
        for p in [reeve13(), seg.clone(), reeve13().product(seg), hrep] {
            let text = serialize_spec(&p);
            let back = parse_spec(&text).unwrap();
            assert_eq!(back, p);
            // Generated documents are canonical: serialize is stable.
            assert_eq!(serialize_spec(&back), text);
        }
    }

    #[test]
    fn spec_parses_the_documented_forms() {
        let p = parse_spec(
            r#"{ "kind": "simplex", "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,13]] }"#,
        )
        .unwrap();
        assert_eq!(p, reeve13());
        let b = parse_spec(r#"{ "kind": "box", "intervals": [[0,2],[0,2]] }"#).unwrap();
        assert_eq!(b.dimension(), 2);
        let pr = parse_spec(
            r#"{ "kind": "product", "factors": [ { "kind": "box", "intervals": [[0,1]] }, { "kind": "box", "intervals": [[0,1]] } ] }"#,
        )
        .unwrap();
        assert_eq!(pr.dimension(), 2);
        let h = parse_spec(
            r#"{ "kind": "hrep", "dim": 2,
                 "inequalities": [{"normal":[1,0],"rhs":1}, {"normal":[0,1],"rhs":1},
                                  {"normal":[-1,0],"rhs":0}, {"normal":[0,-1],"rhs":0}],
                 "bbox": [[0,1],[0,1]] }"#,
        )
        .unwrap();
        assert_eq!(h.dimension(), 2);
    }

    #[test]
    fn spec_parse_errors() {
        // Wrong vertex count for the claimed dimension.
        let err = parse_spec(r#"{ "kind": "simplex", "vertices": [[0,0,0],[1,0,0],[0,1,0]] }"#)
            .unwrap_err();
        assert!(err.to_string().contains("vertices"), "{err}");

        let err = parse_spec(r#"{ "kind": "box", "intervals": [[0,1],[2,1]] }"#).unwrap_err();
        assert!(matches!(err, Error::EmptyInterval { .. }));

        // HRep without a bbox is rejected up front.
        let err = parse_spec(
            r#"{ "kind": "hrep", "dim": 1, "inequalities": [{"normal":[1],"rhs":1}] }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("bbox"), "{err}");

        // Malformed JSON carries a position.
        let err = parse_spec("{ \"kind\": \"box\",\n  intervals: [[0,1]] }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        // Non-integer coordinates are rejected exactly, not rounded.
        let err = parse_spec(r#"{ "kind": "box", "intervals": [[0, 1.5]] }"#).unwrap_err();
        assert!(err.to_string().contains("integer"), "{err}");
    }

    #[test]
    fn big_coordinates_survive_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LatticePolytope::interval_box(vec![(BigInt::zero(), big.clone())]).unwrap();
        let back = parse_spec(&serialize_spec(&p)).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.bounding_box()[0].1, big);
    }

    #[test]
    fn bounding_boxes() {
        assert_eq!(
            reeve13().bounding_box(),
            vec![
                (BigInt::zero(), BigInt::one()),
                (BigInt::zero(), BigInt::one()),
                (BigInt::zero(), BigInt::from(13)),
            ]
        );
        let p = LatticePolytope::interval_box_i64(&[(-2, 5)])
            .unwrap()
            .product(LatticePolytope::interval_box_i64(&[(0, 1)]).unwrap());
        assert_eq!(
            p.bounding_box(),
            vec![
                (BigInt::from(-2), BigInt::from(5)),
                (BigInt::zero(), BigInt::one()),
            ]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Membership in a product is the conjunction of factor
            // memberships on the coordinate blocks.
            #[test]
            fn product_membership_is_conjunction(
                xn in -3i64..5, xd in 1i64..4,
                yn in -3i64..5, yd in 1i64..4,
                zn in -20i64..40, zd in 1i64..4,
                wn in -2i64..4, wd in 1i64..4,
            ) {
                let q13 = LatticePolytope::simplex_i64(
                    &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 13]],
                ).unwrap();
                let seg = LatticePolytope::interval_box_i64(&[(0, 2)]).unwrap();
                let prod = q13.clone().product(seg.clone());
                let (x, y, z, w) = (rat(xn, xd), rat(yn, yd), rat(zn, zd), rat(wn, wd));
                let joint = prod.contains(&[x.clone(), y.clone(), z.clone(), w.clone()]).unwrap();
                let split = q13.contains(&[x, y, z]).unwrap() && seg.contains(&[w]).unwrap();
                prop_assert_eq!(joint, split);
            }

            // q ∈ nP iff q/n ∈ P, through both entry points.
            #[test]
            fn dilate_membership_is_scale_compatible(
                qx in -5i64..10, qy in -5i64..10, qz in -5i64..45, n in 1u64..5,
            ) {
                let q13 = LatticePolytope::simplex_i64(
                    &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 13]],
                ).unwrap();
                let q = vec![BigInt::from(qx), BigInt::from(qy), BigInt::from(qz)];
                let denom = BigInt::from(n);
                let rational: Vec<Rat> =
                    q.iter().map(|c| Rat::new(c.clone(), denom.clone())).collect();
                prop_assert_eq!(
                    q13.contains_scaled(&q, &denom).unwrap(),
                    q13.contains(&rational).unwrap()
                );
            }
        }
    }
}
