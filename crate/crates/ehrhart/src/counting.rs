//! Exact lattice-point counting of dilates, Ehrhart polynomial recovery by
//! interpolation, and δ-vector extraction.
//!
//! Counting a dilate `nP` enumerates the integer points of the bounding box
//! of `nP` and tests `q/n ∈ P` exactly; products are counted factor by
//! factor since lattice points of a product factorize. The scan may be
//! partitioned into slabs along the first coordinate and run in parallel —
//! per-point tests are pure and the accumulation is plain integer addition,
//! so the total is independent of the partitioning.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::LatticePolytope;
use crate::rat::{binomial, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

pub const DEFAULT_MAX_POINTS: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Refuse any single enumeration whose candidate bounding box holds
    /// more points than this.
    pub max_points: u64,
    /// Worker cap for the slab-parallel scan; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            max_points: DEFAULT_MAX_POINTS,
            threads: None,
        }
    }
}

impl CountOptions {
    pub fn unlimited() -> Self {
        CountOptions {
            max_points: u64::MAX,
            threads: None,
        }
    }
}

/// `#(nP ∩ Z^N)` with no practical budget limit. Panics only if a single
/// enumeration would exceed `u64::MAX` candidate points.
pub fn count_lattice_points(p: &LatticePolytope, n: u64) -> BigInt {
    count_lattice_points_with(p, n, &CountOptions::unlimited())
        .expect("enumeration larger than u64::MAX points")
}

/// `#(nP ∩ Z^N)`, counting products factor by factor. `n = 0` is 1 — the
/// zero dilate is the single point at the origin.
pub fn count_lattice_points_with(
    p: &LatticePolytope,
    n: u64,
    opts: &CountOptions,
) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    match p {
        LatticePolytope::Product(factors) => {
            let mut acc = BigInt::one();
            for f in factors {
                acc *= count_lattice_points_with(f, n, opts)?;
            }
            Ok(acc)
        }
        _ => enumerate_region(p, n, opts),
    }
}

/// `#(nP ∩ Z^N)` by a single flat scan of the joint bounding box, without
/// the product factorization. Used to cross-check the factorized path.
pub fn count_lattice_points_flat(
    p: &LatticePolytope,
    n: u64,
    opts: &CountOptions,
) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    enumerate_region(p, n, opts)
}

/// Candidate points the factorized strategy enumerates for the dilate `nP`.
pub fn enumeration_cost(p: &LatticePolytope, n: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    match p {
        LatticePolytope::Product(factors) => factors
            .iter()
            .map(|f| enumeration_cost(f, n))
            .fold(0u128, u128::saturating_add),
        _ => flat_enumeration_cost(p, n),
    }
}

/// Volume of the joint bounding box of `nP`, saturating at `u128::MAX`.
pub fn flat_enumeration_cost(p: &LatticePolytope, n: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    p.bounding_box()
        .iter()
        .map(|(lo, hi)| {
            let span = (hi - lo) * n + 1u32;
            span.to_u128().unwrap_or(u128::MAX)
        })
        .fold(1u128, u128::saturating_mul)
}

fn enumerate_region(p: &LatticePolytope, n: u64, opts: &CountOptions) -> Result<BigInt> {
    let cost = flat_enumeration_cost(p, n);
    if cost > opts.max_points as u128 {
        return Err(Error::BudgetExceeded {
            needed: cost,
            limit: opts.max_points,
        });
    }
    let bbox: Vec<(BigInt, BigInt)> = p
        .bounding_box()
        .iter()
        .map(|(lo, hi)| (lo * n, hi * n))
        .collect();
    let denom = BigInt::from(n);

    let count_slab = |offset: u64| -> u64 {
        let dim = bbox.len();
        let mut point: Vec<BigInt> = bbox.iter().map(|(lo, _)| lo.clone()).collect();
        point[0] += BigInt::from(offset);
        let mut cnt = 0u64;
        'scan: loop {
            if p
                .contains_scaled(&point, &denom)
                .expect("bounding-box point has the polytope's dimension")
            {
                cnt += 1;
            }
            let mut i = 1;
            while i < dim {
                point[i] += 1u32;
                if point[i] <= bbox[i].1 {
                    continue 'scan;
                }
                point[i] = bbox[i].0.clone();
                i += 1;
            }
            break;
        }
        cnt
    };

    // The budget check bounds every span, so to_u64 cannot fail.
    let slabs = ((&bbox[0].1 - &bbox[0].0) + 1u32)
        .to_u64()
        .expect("slab count within budget");
    let total: u64 = with_pool(opts.threads, || {
        (0..slabs).into_par_iter().map(count_slab).sum()
    });
    Ok(BigInt::from(total))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Recovers the Ehrhart polynomial of `p` from exact counts at
/// `n = 0..=d`, then re-counts at `d+1` and `d+2` and demands agreement.
/// The guard turns silently wrong inputs — an HRep whose actual vertices
/// are not lattice points counts along a quasi-polynomial, not a
/// polynomial — into a loud error.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<Polynomial> {
    ehrhart_polynomial_with(p, &CountOptions::default())
}

pub fn ehrhart_polynomial_with(p: &LatticePolytope, opts: &CountOptions) -> Result<Polynomial> {
    let d = p.dimension();
    let counts: Vec<BigInt> = (0..=d + 2)
        .map(|n| count_lattice_points_with(p, n as u64, opts))
        .collect::<Result<_>>()?;
    let samples: Vec<(i64, BigInt)> = (0..=d)
        .map(|n| (n as i64, counts[n].clone()))
        .collect();
    let poly = Polynomial::interpolate(&samples)?;

    for guard in [d + 1, d + 2] {
        let predicted = poly.eval_int(guard as i64);
        if predicted != Rat::from_integer(counts[guard].clone()) {
            return Err(Error::NotEhrhartConsistent(format!(
                "count at n = {guard} is {} but the interpolation through n = 0..={d} gives {predicted}",
                counts[guard]
            )));
        }
    }
    if poly.degree() != Some(d) {
        return Err(Error::NotEhrhartConsistent(format!(
            "interpolated degree {} does not match the dimension {d}",
            poly.degree().map_or_else(|| "-inf".into(), |k| k.to_string())
        )));
    }
    if !poly.coeff(d).is_positive() {
        return Err(Error::NotEhrhartConsistent(format!(
            "leading coefficient {} is not positive",
            poly.coeff(d)
        )));
    }
    if d >= 1 && !poly.coeff(d - 1).is_positive() {
        return Err(Error::NotEhrhartConsistent(format!(
            "coefficient of n^{} is {}, expected positive",
            d - 1,
            poly.coeff(d - 1)
        )));
    }
    Ok(poly)
}

/// The δ-vector (h*-vector) attached to a degree-`d` Ehrhart polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaVector {
    entries: Vec<BigInt>,
}

impl DeltaVector {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Stanley nonnegativity holds for every integral polytope; a negative
    /// entry downstream signals a pipeline bug, not mathematics.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// Sum of the entries, i.e. the normalized volume `d! · lc(p)`.
    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

impl std::fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// δ_i = Σ_{j=0..i} (−1)^j · C(d+1, j) · p(i−j) — the numerator
/// coefficients of Σ p(n) tⁿ = (Σ δ_i t^i) / (1−t)^{d+1}.
pub fn delta_vector(p: &Polynomial, d: usize) -> Result<DeltaVector> {
    if p.degree() != Some(d) {
        return Err(Error::InvalidParameter(format!(
            "delta vector needs a polynomial of degree exactly {d}"
        )));
    }
    if p.eval_int(0) != Rat::one() {
        return Err(Error::InvalidParameter(
            "delta vector needs constant term 1".into(),
        ));
    }
    let values: Vec<Rat> = (0..=d as i64).map(|i| p.eval_int(i)).collect();
    let mut entries = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc = Rat::zero();
        for j in 0..=i {
            let mut c = binomial((d + 1) as u64, j as i64);
            if j % 2 == 1 {
                c = -c;
            }
            acc += Rat::from_integer(c) * &values[i - j];
        }
        if !acc.is_integer() {
            return Err(Error::NonIntegerDelta { index: i });
        }
        entries.push(acc.to_integer());
    }
    Ok(DeltaVector { entries })
}
