//! Exact real-root counting on the positive axis via Sturm sequences.
//!
//! The input is reduced to its square-free part, so counts are of distinct
//! roots. The search interval is `(0, B]` for a Cauchy bound `B` computed
//! exactly; every positive root lies strictly inside it.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rat::Rat;
use num_traits::{One, Signed, Zero};

/// A positive real root localized to `(lo, hi]`; when `lo == hi` the root
/// is that rational value exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    /// Closed containment check, the form the verification reports use.
    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// Number of distinct real roots of `p` in the open interval `(0, +inf)`.
pub fn count_positive_real_roots(p: &Polynomial) -> Result<usize> {
    let (q, chain, bound) = prepare(p)?;
    if q.degree() == Some(0) {
        return Ok(0);
    }
    Ok(count_in(&chain, &Rat::zero(), &bound))
}

/// Pairwise-disjoint intervals isolating each distinct positive real root
/// of `p`. If `max_width` is given, each interval is narrowed below it by
/// exact bisection.
pub fn isolate_positive_roots(p: &Polynomial, max_width: Option<&Rat>) -> Result<Vec<RootInterval>> {
    let (q, chain, bound) = prepare(p)?;
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    isolate(&chain, &Rat::zero(), &bound, &mut out);
    if let Some(limit) = max_width {
        for iv in &mut out {
            refine(&q, iv, limit);
        }
    }
    Ok(out)
}

/// Strips roots at 0, takes the square-free part, and returns it with its
/// Sturm chain and an exclusive upper bound on positive roots.
fn prepare(p: &Polynomial) -> Result<(Polynomial, Vec<Polynomial>, Rat)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Dividing out n^k removes the root at 0 and nothing else.
    let shift = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let stripped = Polynomial::from_coeffs(p.coeffs()[shift..].to_vec());
    let q = square_free(&stripped);
    let bound = cauchy_bound(&q);
    let chain = sturm_chain(&q);
    Ok((q, chain, bound))
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
fn square_free(p: &Polynomial) -> Polynomial {
    let g = poly_gcd(p, &p.derivative());
    if g.degree() == Some(0) {
        return p.clone();
    }
    let (quot, rem) = p.div_rem(&g);
    debug_assert!(rem.is_zero(), "gcd must divide exactly");
    quot
}

fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut a = normalize(a.clone());
    let mut b = normalize(b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = normalize(r);
    }
    a
}

/// Divides by the absolute value of the leading coefficient. Multiplying by
/// a positive constant keeps every sign intact, which is all the Sturm
/// machinery needs; it just keeps the rationals small.
fn normalize(p: Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(lead) => {
            let inv = lead.abs().recip();
            p.scale(&inv)
        }
        None => p,
    }
}

fn sturm_chain(q: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![normalize(q.clone()), normalize(q.derivative())];
    loop {
        let len = chain.len();
        if chain[len - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(normalize(r.scale(&-Rat::one())));
    }
    chain
}

fn sign_variations(chain: &[Polynomial], x: &Rat) -> usize {
    let mut last: Option<bool> = None;
    let mut variations = 0;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                variations += 1;
            }
        }
        last = Some(positive);
    }
    variations
}

/// Distinct roots in `(lo, hi]` by Sturm's theorem.
fn count_in(chain: &[Polynomial], lo: &Rat, hi: &Rat) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// `1 + max |c_i / c_deg|`; every root has absolute value strictly below it.
fn cauchy_bound(p: &Polynomial) -> Rat {
    let lead = p.leading_coeff().expect("nonzero polynomial").abs();
    let mut max = Rat::zero();
    for c in p.coeffs() {
        let ratio = c.abs() / &lead;
        if ratio > max {
            max = ratio;
        }
    }
    max + Rat::one()
}

fn isolate(chain: &[Polynomial], lo: &Rat, hi: &Rat, out: &mut Vec<RootInterval>) {
    match count_in(chain, lo, hi) {
        0 => {}
        1 => out.push(RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        }),
        _ => {
            let mid = (lo + hi) / Rat::from_integer(2.into());
            isolate(chain, lo, &mid, out);
            isolate(chain, &mid, hi, out);
        }
    }
}

/// Shrinks an isolating interval by sign bisection. `q` is square-free with
/// exactly one simple root in `(lo, hi]`, so `q` keeps the sign of `q(hi)`
/// on `(root, hi]` and the opposite sign on `(lo, root)`. The left endpoint
/// is never evaluated; it may be a root belonging to the interval below.
fn refine(q: &Polynomial, iv: &mut RootInterval, limit: &Rat) {
    let two = Rat::from_integer(2.into());
    let hi_value = q.eval(&iv.hi);
    if hi_value.is_zero() {
        iv.lo = iv.hi.clone();
        return;
    }
    let hi_positive = hi_value.is_positive();
    while iv.width() > *limit {
        let mid = (&iv.lo + &iv.hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            iv.lo = mid.clone();
            iv.hi = mid;
            return;
        }
        if v.is_positive() == hi_positive {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
}
