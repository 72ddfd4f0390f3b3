//! The Reeve tetrahedra `Q_m` and the prism families built on them.
//!
//! `Q_m` has vertices (0,0,0), (1,0,0), (0,1,0), (1,1,m) and lattice-count
//! polynomial `m/6 n³ + n² + (12−m)/6 n + 1`. Taking the product with
//! `[0, k]` multiplies the count polynomial by `(kn + 1)`, so stacking
//! `d−3` prisms of height `d−3` on `Q_m` yields a d-dimensional polytope
//! with the closed form `((d−3)n+1)^{d−3} · i(Q_m, n)`. For `m` large
//! enough every coefficient of `n, n², …, n^{d−2}` of that expansion is
//! negative; this module computes the exact threshold.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::polytope::LatticePolytope;
use crate::rat::{binomial, rat, Rat, Sign};
use crate::roots;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The Reeve tetrahedron `Q_m`.
pub fn reeve(m: u64) -> Result<LatticePolytope> {
    if m == 0 {
        return Err(Error::InvalidParameter("reeve parameter m must be >= 1".into()));
    }
    LatticePolytope::simplex(vec![
        vec![BigInt::zero(), BigInt::zero(), BigInt::zero()],
        vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), BigInt::one(), BigInt::zero()],
        vec![BigInt::one(), BigInt::one(), BigInt::from(m)],
    ])
}

/// `i(Q_m, n) = m/6 n³ + n² + (12−m)/6 n + 1` for `m >= 1`.
pub fn reeve_polynomial(m: u64) -> Polynomial {
    cubic_with_m(&Rat::from_integer(BigInt::from(m)))
}

fn cubic_with_m(m: &Rat) -> Polynomial {
    let six = rat(1, 6);
    Polynomial::from_coeffs(vec![
        Rat::one(),
        (Rat::from_integer(12.into()) - m) * &six,
        Rat::one(),
        m * &six,
    ])
}

/// `Q_m × [0, d−3]^{d−3}`: the d-dimensional member of the family,
/// built by stacking `d−3` prisms of height `d−3` on the tetrahedron.
pub fn reeve_family(d: u32, m: u64) -> Result<LatticePolytope> {
    check_dim(d)?;
    let k = (d - 3) as u64;
    let mut p = reeve(m)?;
    for _ in 0..d - 3 {
        p = p.prism(k)?;
    }
    Ok(p)
}

/// Exact expansion of `((d−3)n + 1)^{d−3} · i(Q_m, n)`.
pub fn closed_form_ehrhart(d: u32, m: u64) -> Result<Polynomial> {
    check_dim(d)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    Ok(closed_form_with_m(d, &Rat::from_integer(BigInt::from(m))))
}

/// The same expansion with `m` as a free rational parameter; every
/// coefficient is affine in `m`, which the threshold search exploits.
fn closed_form_with_m(d: u32, m: &Rat) -> Polynomial {
    let e = d - 3;
    &Polynomial::pow_linear(e as i64, 1, e) * &cubic_with_m(m)
}

fn check_dim(d: u32) -> Result<()> {
    if d < 4 {
        return Err(Error::InvalidParameter(format!(
            "family dimension d must be >= 4, got {d}"
        )));
    }
    Ok(())
}

/// Coefficient of `n^i` in `((d−3)n + 1)^{d−3}`, namely
/// `(d−3)^i · C(d−3, i)`. The contract range is `0 <= i <= d−2`; the top
/// index `d−2` vanishes through the binomial convention, which is exactly
/// what keeps the coefficient formulas below in range at `j = d−2`.
pub fn prism_coeff(d: u32, i: u32) -> Result<BigInt> {
    check_dim(d)?;
    if i > d - 2 {
        return Err(Error::InvalidParameter(format!(
            "prism coefficient index {i} outside 0..={}",
            d - 2
        )));
    }
    Ok(BigInt::from(d - 3).pow(i) * binomial((d - 3) as u64, i as i64))
}

/// `(d−3)² · C(d−3, j−1) − C(d−3, j−3)` for `d >= 5`, `3 <= j <= d−2`.
/// This factor is strictly positive on its whole range, which makes the
/// slope of every middle coefficient in `m` strictly negative.
pub fn slope_factor(d: u32, j: u32) -> Result<BigInt> {
    if d < 5 {
        return Err(Error::InvalidParameter(format!(
            "slope factor needs d >= 5, got {d}"
        )));
    }
    if j < 3 || j > d - 2 {
        return Err(Error::InvalidParameter(format!(
            "slope factor index {j} outside 3..={}",
            d - 2
        )));
    }
    let base = BigInt::from(d - 3) * BigInt::from(d - 3);
    Ok(base * binomial((d - 3) as u64, j as i64 - 1) - binomial((d - 3) as u64, j as i64 - 3))
}

/// Exact per-degree coefficients of the family member `(d, m)`, computed
/// along two independent routes that must agree.
#[derive(Debug, Clone)]
pub struct CoefficientReport {
    pub dim: u32,
    pub m: u64,
    /// c_0 .. c_d of the count polynomial.
    pub coefficients: Vec<Rat>,
    /// Prism-expansion coefficients, indices 0 ..= d−2.
    pub prism_coeffs: Vec<BigInt>,
    /// (j, slope factor) for 3 <= j <= d−2; empty when d = 4.
    pub slope_factors: Vec<(u32, BigInt)>,
    pub signs: Vec<Sign>,
    /// True iff c_j < 0 for every 1 <= j <= d−2.
    pub all_middle_negative: bool,
}

/// Builds the coefficients two ways — the per-degree formulas in the prism
/// coefficients, and the expanded closed-form product — and insists on
/// exact agreement. A mismatch is an internal invariant violation.
pub fn coefficient_report(d: u32, m: u64) -> Result<CoefficientReport> {
    let expansion = closed_form_ehrhart(d, m)?;
    let coefficients: Vec<Rat> = (0..=d as usize).map(|i| expansion.coeff(i)).collect();

    let a: Vec<Rat> = (0..=d - 2)
        .map(|i| prism_coeff(d, i).map(Rat::from_integer))
        .collect::<Result<_>>()?;
    // A_i for negative index reads as zero in the formulas below.
    let a_at = |i: i64| -> Rat {
        if i < 0 {
            Rat::zero()
        } else {
            a[i as usize].clone()
        }
    };
    let m_rat = Rat::from_integer(BigInt::from(m));
    let lead_term = rat(1, 6) * (Rat::from_integer(12.into()) - &m_rat);

    let mismatch = |j: u32, formula: &Rat| -> Result<()> {
        if formula != &coefficients[j as usize] {
            return Err(Error::Internal(format!(
                "coefficient routes disagree at n^{j} for d={d}, m={m}: \
                 formula {formula}, expansion {}",
                coefficients[j as usize]
            )));
        }
        Ok(())
    };

    // c_1 = (12−m)/6 + A_1 and c_2 = 1 + (12−m)/6·A_1 + A_2.
    mismatch(1, &(&lead_term + &a_at(1)))?;
    mismatch(2, &(Rat::one() + &lead_term * &a_at(1) + a_at(2)))?;

    let mut slope_factors = Vec::new();
    for j in 3..=d.saturating_sub(2) {
        // c_j = m/6·A_{j−3} + A_{j−2} + (12−m)/6·A_{j−1} + A_j ...
        let ji = j as i64;
        let direct = rat(1, 6) * &m_rat * a_at(ji - 3)
            + a_at(ji - 2)
            + &lead_term * &a_at(ji - 1)
            + a_at(ji);
        mismatch(j, &direct)?;
        // ... rearranged as −(d−3)^{j−3}·g/6·m + (A_{j−2} + 2A_{j−1} + A_j),
        // which exposes the strictly negative slope in m.
        let g = slope_factor(d, j)?;
        let slope = rat(-1, 6) * Rat::from_integer(BigInt::from(d - 3).pow(j - 3) * &g);
        let offset = a_at(ji - 2) + Rat::from_integer(2.into()) * a_at(ji - 1) + a_at(ji);
        mismatch(j, &(&slope * &m_rat + &offset))?;
        slope_factors.push((j, g));
    }

    // The ends are pinned: c_0 = 1, c_d = m(d−3)^{d−3}/6 > 0, c_{d−1} > 0.
    if !coefficients[0].is_one() {
        return Err(Error::Internal(format!("c_0 = {} != 1", coefficients[0])));
    }
    let lead = rat(1, 6) * &m_rat * Rat::from_integer(BigInt::from(d - 3).pow(d - 3));
    if coefficients[d as usize] != lead {
        return Err(Error::Internal(format!(
            "leading coefficient {} != m(d-3)^(d-3)/6 = {lead}",
            coefficients[d as usize]
        )));
    }
    if !coefficients[d as usize - 1].is_positive() {
        return Err(Error::Internal(format!(
            "c_(d-1) = {} is not positive",
            coefficients[d as usize - 1]
        )));
    }

    let signs: Vec<Sign> = coefficients.iter().map(Sign::of).collect();
    let all_middle_negative = (1..=(d - 2) as usize).all(|j| signs[j] == Sign::Neg);
    let prism_coeffs = a.into_iter().map(|x| x.to_integer()).collect();

    Ok(CoefficientReport {
        dim: d,
        m,
        coefficients,
        prism_coeffs,
        slope_factors,
        signs,
        all_middle_negative,
    })
}

/// Least `m >= 1` for which every middle coefficient `c_1 .. c_{d−2}` of
/// the family member is negative. Each coefficient is affine in `m` with a
/// strictly negative slope, so the per-coefficient thresholds are solved
/// exactly and the maximum is returned; the result is re-verified against
/// [`coefficient_report`] at `m` and `m − 1`.
pub fn min_negative_m(d: u32) -> Result<u64> {
    check_dim(d)?;
    let base = closed_form_with_m(d, &Rat::zero());
    let at_one = closed_form_with_m(d, &Rat::one());

    let mut best = BigInt::one();
    for j in 1..=(d - 2) as usize {
        let b = base.coeff(j);
        let slope = at_one.coeff(j) - &b;
        if !slope.is_negative() {
            return Err(Error::Internal(format!(
                "coefficient slope at n^{j} is {slope}, expected negative"
            )));
        }
        // base + slope·m < 0 ⟺ m > base / (−slope).
        let threshold = (b / -slope).floor().to_integer() + 1;
        if threshold > best {
            best = threshold;
        }
    }
    let m: u64 = u64::try_from(best)
        .map_err(|_| Error::Internal("threshold out of range".into()))?;

    if !coefficient_report(d, m)?.all_middle_negative {
        return Err(Error::Internal(format!(
            "threshold m = {m} for d = {d} fails its own sign check"
        )));
    }
    if m > 1 && coefficient_report(d, m - 1)?.all_middle_negative {
        return Err(Error::Internal(format!(
            "threshold m = {m} for d = {d} is not minimal"
        )));
    }
    Ok(m)
}

/// Least `m >= 1` whose cubic `i(Q_m, n)` has a positive real root, found
/// by an upward scan with the exact Sturm count.
pub fn min_m_with_positive_root() -> u64 {
    let mut m = 1;
    loop {
        let count = roots::count_positive_real_roots(&reeve_polynomial(m))
            .expect("family cubic is nonzero");
        if count >= 1 {
            return m;
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::ehrhart_polynomial;
    use crate::rat::rat_int;

    #[test]
    fn reeve_shape_and_validation() {
        let q13 = reeve(13).unwrap();
        assert_eq!(q13.dimension(), 3);
        let LatticePolytope::Simplex(s) = &q13 else { panic!() };
        assert_eq!(s.vertices()[3], vec![BigInt::one(), BigInt::one(), BigInt::from(13)]);
        assert!(matches!(reeve(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn reeve_polynomial_examples() {
        assert_eq!(
            reeve_polynomial(13),
            Polynomial::from_coeffs(vec![rat_int(1), rat(-1, 6), rat_int(1), rat(13, 6)])
        );
        // m = 1 is the unimodular case binomial(n+3, 3).
        assert_eq!(
            reeve_polynomial(1),
            Polynomial::from_coeffs(vec![rat_int(1), rat(11, 6), rat_int(1), rat(1, 6)])
        );
    }

    #[test]
    fn counting_matches_formula_for_small_m() {
        for m in [1, 5, 13] {
            let p = ehrhart_polynomial(&reeve(m).unwrap()).unwrap();
            assert_eq!(p, reeve_polynomial(m), "mismatch at m = {m}");
        }
    }

    #[test]
    fn family_structure() {
        let f = reeve_family(4, 19).unwrap();
        assert_eq!(f.dimension(), 4);
        let LatticePolytope::Product(fs) = &f else { panic!() };
        assert_eq!(fs.len(), 2);

        let f = reeve_family(5, 37).unwrap();
        assert_eq!(f.dimension(), 5);
        let LatticePolytope::Product(fs) = &f else { panic!() };
        assert_eq!(fs.len(), 3);
        // Prism heights equal d−3 = 2.
        let LatticePolytope::Box(b) = &fs[1] else { panic!() };
        assert_eq!(b.intervals(), &[(BigInt::zero(), BigInt::from(2))]);

        for d in 4..=8 {
            assert_eq!(reeve_family(d, 7).unwrap().dimension(), d as usize);
        }
        assert!(matches!(reeve_family(3, 5), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn closed_form_examples() {
        let p = closed_form_ehrhart(4, 19).unwrap();
        assert_eq!(
            p,
            Polynomial::from_coeffs(vec![
                rat_int(1),
                rat(-1, 6),
                rat(-1, 6),
                rat(25, 6),
                rat(19, 6),
            ])
        );
        for (d, m) in [(4, 1), (5, 3), (6, 13), (8, 100)] {
            assert_eq!(closed_form_ehrhart(d, m).unwrap().eval_int(0), rat_int(1));
        }
    }

    #[test]
    fn closed_form_matches_brute_force() {
        // Counting versus symbolic product, the two fully independent routes.
        for (d, m) in [(4, 1), (4, 13), (4, 19), (5, 1), (5, 13), (5, 37)] {
            let brute = ehrhart_polynomial(&reeve_family(d, m).unwrap()).unwrap();
            let closed = closed_form_ehrhart(d, m).unwrap();
            assert_eq!(brute, closed, "mismatch at d = {d}, m = {m}");
        }
    }

    #[test]
    fn prism_coeff_examples() {
        for d in 4..=9 {
            assert_eq!(prism_coeff(d, 0).unwrap(), BigInt::one());
        }
        assert_eq!(prism_coeff(5, 1).unwrap(), BigInt::from(4));
        assert_eq!(prism_coeff(4, 2).unwrap(), BigInt::zero());
        assert!(prism_coeff(4, 3).is_err());
        assert!(prism_coeff(3, 0).is_err());
    }

    #[test]
    fn slope_factor_examples() {
        assert_eq!(slope_factor(5, 3).unwrap(), BigInt::from(3));
        assert_eq!(slope_factor(6, 4).unwrap(), BigInt::from(6));
        // Top of the range: (d−3)² − C(d−3, 2).
        for d in 5..=10u32 {
            let expect = BigInt::from((d - 3) * (d - 3)) - binomial((d - 3) as u64, 2);
            assert_eq!(slope_factor(d, d - 2).unwrap(), expect);
        }
        assert!(slope_factor(4, 3).is_err());
        assert!(slope_factor(6, 2).is_err());
        assert!(slope_factor(6, 5).is_err());
    }

    #[test]
    fn slope_factor_positive_on_supported_range() {
        for d in 5..=60 {
            for j in 3..=d - 2 {
                assert!(
                    slope_factor(d, j).unwrap().is_positive(),
                    "non-positive at d = {d}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn slope_factor_recurrence() {
        // g(d,j) = g(d−1,j) + g(d−1,j−1) + (2d−7)·C(d−3, j−1).
        for d in 7..=30u32 {
            for j in 4..=d - 3 {
                let lhs = slope_factor(d, j).unwrap();
                let rhs = slope_factor(d - 1, j).unwrap()
                    + slope_factor(d - 1, j - 1).unwrap()
                    + BigInt::from(2 * d - 7) * binomial((d - 3) as u64, j as i64 - 1);
                assert_eq!(lhs, rhs, "recurrence fails at d = {d}, j = {j}");
            }
        }
    }

    #[test]
    fn coefficient_report_examples() {
        let r = coefficient_report(4, 19).unwrap();
        assert_eq!(r.coefficients[1], rat(-1, 6));
        assert_eq!(r.coefficients[2], rat(-1, 6));
        assert_eq!(r.coefficients[4], rat(19, 6));
        assert!(r.all_middle_negative);
        assert_eq!(r.signs[1], Sign::Neg);
        assert_eq!(r.signs[4], Sign::Pos);
        assert_eq!(r.prism_coeffs, vec![BigInt::one(), BigInt::one(), BigInt::zero()]);
        assert!(r.slope_factors.is_empty());

        // (12−m)/6 vanishes at m = 12, so c_1 = A_1 = 4 > 0.
        let r = coefficient_report(5, 12).unwrap();
        assert_eq!(r.coefficients[1], rat_int(4));
        assert!(!r.all_middle_negative);

        let r = coefficient_report(5, 37).unwrap();
        assert_eq!(r.coefficients[1], rat(-1, 6));
        assert_eq!(r.coefficients[2], rat(-70, 6));
        assert_eq!(r.coefficients[3], rat(-39, 6));
        assert!(r.all_middle_negative);
        assert_eq!(r.slope_factors, vec![(3, BigInt::from(3))]);
    }

    #[test]
    fn coefficient_report_consistency_sweep() {
        for d in 4..=8 {
            for m in [1, 13, 100] {
                let r = coefficient_report(d, m).unwrap();
                assert_eq!(r.coefficients[0], rat_int(1));
                assert!(r.coefficients[d as usize].is_positive());
                assert!(r.coefficients[d as usize - 1].is_positive());
            }
        }
    }

    #[test]
    fn min_negative_m_examples() {
        assert_eq!(min_negative_m(4).unwrap(), 19);
        assert_eq!(min_negative_m(5).unwrap(), 37);
        assert_eq!(min_negative_m(6).unwrap(), 67);
    }

    #[test]
    fn min_negative_m_agrees_with_scan() {
        for d in 4..=6 {
            let m = min_negative_m(d).unwrap();
            for below in 1..m {
                assert!(
                    !coefficient_report(d, below).unwrap().all_middle_negative,
                    "d = {d}: sign flip before the threshold at m = {below}"
                );
            }
            assert!(coefficient_report(d, m).unwrap().all_middle_negative);
        }
    }

    #[test]
    fn threshold_witness_sweep() {
        for d in 4..=8u32 {
            let m = min_negative_m(d).unwrap();
            let r = coefficient_report(d, m).unwrap();
            assert!(r.all_middle_negative, "d = {d}");
            for j in 1..=(d - 2) as usize {
                assert!(r.coefficients[j].is_negative(), "c_{j} at d = {d}");
            }
            assert_eq!(r.coefficients[0], rat_int(1));
            assert!(r.coefficients[d as usize - 1].is_positive());
            assert!(r.coefficients[d as usize].is_positive());
        }
    }

    #[test]
    fn min_negative_m_observed_pattern() {
        // Observed closed pattern, kept as a regression tripwire only; the
        // implementation computes thresholds from the affine coefficients.
        for d in 4..=10u32 {
            assert_eq!(min_negative_m(d).unwrap(), (6 * (d - 3) * (d - 3) + 13) as u64);
        }
    }

    #[test]
    fn positive_root_threshold() {
        assert_eq!(min_m_with_positive_root(), 35);
        assert_eq!(
            roots::count_positive_real_roots(&reeve_polynomial(35)).unwrap(),
            2
        );
        assert_eq!(
            roots::count_positive_real_roots(&reeve_polynomial(34)).unwrap(),
            0
        );
    }

    #[test]
    fn product_with_segment_keeps_a_negative_coefficient() {
        // (n+1) · closed_form(4,19) = 19/6 n^5 + 22/3 n^4 + 4 n^3 - 1/3 n^2 + 5/6 n + 1.
        let segment = Polynomial::from_int_coeffs(&[1, 1]);
        let p = &segment * &closed_form_ehrhart(4, 19).unwrap();
        assert_eq!(
            p,
            Polynomial::from_coeffs(vec![
                rat_int(1),
                rat(5, 6),
                rat(-1, 3),
                rat_int(4),
                rat(22, 3),
                rat(19, 6),
            ])
        );
        assert!(p.coeffs().iter().any(|c| c.is_negative()));
    }
}
