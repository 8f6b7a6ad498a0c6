//! Brute-force numeric cross-checks.
//!
//! Nothing here feeds the symbolic engine. The oracle evaluates sequences at
//! concrete indices and reads off signs and limit trends empirically, so the
//! symbolic decisions in [`crate::seqrep`] and [`crate::fermat`] can be
//! compared against an independent path.
//!
//! Integer exponents are evaluated exactly. A fractional power `n^(p/q)` is
//! approximated through an integer `q`-th root of `n^p · 2^(96q)`, which has
//! relative error below `2^-96`; each [`Sample`] carries an absolute error
//! bound.
//!
//! Sampling only means something past the point where the leading term of
//! every class dominates the rest. [`tail_threshold`] and [`limit_threshold`]
//! compute such points from the raw term data (coefficient magnitudes and
//! exponent gaps), without consulting the spectrum.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::seqrep::{SeqRep, Sign, SignSpectrum};

/// Bits of precision for fractional powers.
pub const ROOT_PRECISION_BITS: u32 = 96;
/// Number of class members sampled at the tail in [`empirical_spectrum`].
pub const TAIL_SAMPLES: usize = 8;
/// Number of rungs in the geometric ladder of [`empirical_limit_nx`].
pub const LADDER_RUNGS: u32 = 8;
/// Ratio between consecutive ladder rungs.
pub const LADDER_RATIO: u32 = 16;
/// `|n·x(n)|` must fall below `1 / LIMIT_CUTOFF_INV` to count as tending to 0.
pub const LIMIT_CUTOFF_INV: u32 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("sampled signs disagree on class {class}")]
    InconclusiveSample { class: usize },
}

/// Value of a sequence at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub n: BigUint,
    pub value: Rational,
    /// `|true value - value| ≤ error_bound`; zero for exact samples.
    pub error_bound: Rational,
}

impl Sample {
    pub fn is_exact(&self) -> bool {
        self.error_bound.is_zero()
    }

    /// The sign, when the error bound is small enough to certify it.
    pub fn sign(&self) -> Option<Sign> {
        if self.value.abs() > self.error_bound {
            Some(if self.value.is_positive() {
                Sign::Pos
            } else {
                Sign::Neg
            })
        } else if self.is_exact() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

/// `n^(p/q)` with `q > 0`, as (approximation, absolute error bound).
fn power(n: &BigUint, exponent: &Rational) -> (Rational, Rational) {
    let p = exponent.numer().abs().to_biguint().expect("nonnegative");
    let q = exponent
        .denom()
        .to_u32()
        .expect("exponent denominator fits in u32");
    let p = p.to_u32().expect("exponent numerator fits in u32");
    if q == 1 {
        let exact = Rational::from_integer(BigInt::from(num_traits::pow(n.clone(), p as usize)));
        let value = if exponent.is_negative() {
            exact.recip()
        } else {
            exact
        };
        return (value, Rational::zero());
    }
    let scale_bits = ROOT_PRECISION_BITS as usize;
    let scaled = num_traits::pow(n.clone(), p as usize) << (scale_bits * q as usize);
    let root = BigInt::from(scaled.nth_root(q));
    let two_k = BigInt::one() << scale_bits;
    let value = if exponent.is_negative() {
        Rational::new(two_k.clone(), root.clone())
    } else {
        Rational::new(root.clone(), two_k.clone())
    };
    // decaying: |approx - t| ≤ approx/root; growing: |approx - t| < 2^-K
    let bound = &value / Rational::from_integer(root) + Rational::new(BigInt::one(), two_k);
    (value, bound)
}

pub fn eval_at(x: &SeqRep, n: &BigUint) -> Sample {
    assert!(!n.is_zero(), "sequences are indexed from n = 1");
    let mut value = Rational::zero();
    let mut error_bound = Rational::zero();
    for t in x.terms() {
        let class = ((n - 1u32) % t.coeff.period()).to_usize().expect("small");
        let c = t.coeff.at_class(class);
        if c.is_zero() {
            continue;
        }
        // the term is c · n^(-a)
        let (p, err) = power(n, &(-&t.exponent));
        value += c * &p;
        error_bound += c.abs() * err;
    }
    Sample {
        n: n.clone(),
        value,
        error_bound,
    }
}

pub fn eval_at_u64(x: &SeqRep, n: u64) -> Sample {
    eval_at(x, &BigUint::from(n))
}

/// Largest `n ≤ bound` with `(n - 1) mod modulus = class`, if any.
fn last_member(bound: &BigUint, modulus: usize, class: usize) -> Option<BigUint> {
    let first = BigUint::from(class + 1);
    if bound < &first {
        return None;
    }
    let offset = (bound - &first) % modulus;
    Some(bound - offset)
}

fn ceil_root(value: &BigUint, k: u32) -> BigUint {
    let r = value.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *value {
        r
    } else {
        r + 1u32
    }
}

fn gap_threshold(x: &SeqRep, ratio_scale: &Rational, extra_exponent: Option<Rational>) -> BigUint {
    let mut exponents: Vec<Rational> = x.terms().iter().map(|t| t.exponent.clone()).collect();
    if let Some(e) = extra_exponent {
        exponents.push(e);
    }
    exponents.sort();
    exponents.dedup();
    let gap = exponents.windows(2).map(|w| &w[1] - &w[0]).min();
    let values = || {
        x.terms()
            .iter()
            .flat_map(|t| t.coeff.values())
            .filter(|v| !v.is_zero())
    };
    let (Some(gap), Some(max)) = (gap, values().map(|v| v.abs()).max()) else {
        return BigUint::one();
    };
    let min = values().map(|v| v.abs()).min().expect("nonempty");
    let k = Rational::from_integer(BigInt::from(x.terms().len().max(1)));
    let ratio = (k * max / min) * ratio_scale;
    let c = ratio
        .ceil()
        .to_integer()
        .to_biguint()
        .expect("positive")
        .max(BigUint::from(2u32));
    // n > c^(1/gap) = c^(q/p)
    let p = gap.numer().to_u32().expect("small gap numerator");
    let q = gap.denom().to_u32().expect("small gap denominator");
    ceil_root(&num_traits::pow(c, q as usize), p) + 1u32
}

/// An index past which, on every class, the leading term outweighs the sum
/// of all others.
pub fn tail_threshold(x: &SeqRep) -> BigUint {
    gap_threshold(x, &Rational::one(), None)
}

/// An index past which the ladder of [`empirical_limit_nx`] sees the
/// asymptotic regime of `n·x(n)`, with `o`-terms already below the cutoff.
pub fn limit_threshold(x: &SeqRep) -> BigUint {
    // the ratio kM/m is scaled so that kM·n^(-gap) also drops below the cutoff
    let cutoff_inv = Rational::from_integer(BigInt::from(LIMIT_CUTOFF_INV));
    let m = x
        .terms()
        .iter()
        .flat_map(|t| t.coeff.values())
        .filter(|v| !v.is_zero())
        .map(|v| v.abs())
        .min()
        .unwrap_or_else(Rational::one);
    let scale = (cutoff_inv * m).max(Rational::one());
    gap_threshold(x, &scale, Some(Rational::one()))
}

/// Sample bound `N` whose [`TAIL_SAMPLES`] class members all lie past
/// [`tail_threshold`].
pub fn spectrum_sample_bound(x: &SeqRep) -> BigUint {
    tail_threshold(x) + BigUint::from(TAIL_SAMPLES * x.modulus())
}

/// Sample bound `N` large enough for [`empirical_limit_nx`].
pub fn limit_sample_bound(x: &SeqRep) -> BigUint {
    limit_threshold(x) * num_traits::pow(BigUint::from(LADDER_RATIO), LADDER_RUNGS as usize)
}

/// Per-class signs read from the [`TAIL_SAMPLES`] largest class members `≤ bound`.
pub fn empirical_spectrum(x: &SeqRep, bound: &BigUint) -> Result<SignSpectrum, OracleError> {
    let modulus = x.modulus();
    let mut signs = Vec::with_capacity(modulus);
    for class in 0..modulus {
        let mut n = last_member(bound, modulus, class);
        let mut agreed: Option<Sign> = None;
        for _ in 0..TAIL_SAMPLES {
            let Some(current) = n else { break };
            let sign = eval_at(x, &current)
                .sign()
                .ok_or(OracleError::InconclusiveSample { class })?;
            match agreed {
                None => agreed = Some(sign),
                Some(s) if s != sign => return Err(OracleError::InconclusiveSample { class }),
                _ => {}
            }
            n = (current > BigUint::from(modulus)).then(|| current - modulus);
        }
        signs.push(agreed.ok_or(OracleError::InconclusiveSample { class })?);
    }
    Ok(SignSpectrum { modulus, signs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitTrend {
    TendsToZero,
    BoundedAway,
    Diverges,
    Inconclusive,
}

fn class_trend(x: &SeqRep, bound: &BigUint, modulus: usize, class: usize) -> LimitTrend {
    let cutoff = Rational::new(BigInt::one(), BigInt::from(LIMIT_CUTOFF_INV));
    let mut points = Vec::new();
    let mut rung = bound.clone();
    for _ in 0..LADDER_RUNGS {
        match last_member(&rung, modulus, class) {
            Some(n) => points.push(n),
            None => return LimitTrend::Inconclusive,
        }
        rung /= LADDER_RATIO;
    }
    points.reverse();
    let magnitudes: Vec<Rational> = points
        .iter()
        .map(|n| {
            let s = eval_at(x, n);
            (s.value * Rational::from_integer(BigInt::from(n.clone()))).abs()
        })
        .collect();
    if magnitudes.iter().all(Zero::is_zero) {
        return LimitTrend::TendsToZero;
    }
    let non_increasing = magnitudes.windows(2).all(|w| w[1] <= w[0]);
    let increasing = magnitudes.windows(2).all(|w| w[1] > w[0]);
    let first = &magnitudes[0];
    let last = &magnitudes[magnitudes.len() - 1];
    let max = magnitudes.iter().max().expect("nonempty");
    let min = magnitudes.iter().min().expect("nonempty");
    let two = Rational::from_integer(BigInt::from(2));
    let three_halves = Rational::new(BigInt::from(3), BigInt::from(2));
    if non_increasing && *last < cutoff {
        LimitTrend::TendsToZero
    } else if increasing && *last >= first * &two {
        LimitTrend::Diverges
    } else if *min >= cutoff && *max <= min * &three_halves {
        LimitTrend::BoundedAway
    } else {
        LimitTrend::Inconclusive
    }
}

/// Trend of `n·x(n)` on a geometric ladder of indices up to `bound`.
pub fn empirical_limit_nx(x: &SeqRep, bound: &BigUint) -> LimitTrend {
    let modulus = x.modulus();
    let trends: Vec<LimitTrend> = (0..modulus)
        .map(|class| class_trend(x, bound, modulus, class))
        .collect();
    if trends.contains(&LimitTrend::Diverges) {
        LimitTrend::Diverges
    } else if trends.contains(&LimitTrend::Inconclusive) {
        LimitTrend::Inconclusive
    } else if trends.contains(&LimitTrend::BoundedAway) {
        LimitTrend::BoundedAway
    } else {
        LimitTrend::TendsToZero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn exact_samples() {
        let s = eval_at_u64(&SeqRep::inv_n_pow(int(2)), 10);
        assert_eq!(s.value, ratio(1, 100));
        assert!(s.is_exact());
        let s = eval_at_u64(&(SeqRep::one() - SeqRep::alternating()), 7);
        assert_eq!(s.value, int(2));
        assert!(s.is_exact());
    }

    #[test]
    fn fractional_sample_within_bound() {
        let s = eval_at_u64(&SeqRep::inv_n_pow(ratio(1, 2)), 4);
        assert!(!s.is_exact());
        assert!((&s.value - ratio(1, 2)).abs() <= s.error_bound);
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 64);
        assert!(s.error_bound / ratio(1, 2) <= tiny);
        // growth: n^(3/2) at 9 is 27
        let g = eval_at_u64(&SeqRep::n_pow(ratio(3, 2)), 9);
        assert!((&g.value - int(27)).abs() <= g.error_bound);
    }

    #[test]
    fn spectrum_examples() {
        let bound = BigUint::from(10_000u32);
        let x = SeqRep::one() - SeqRep::alternating();
        let s = empirical_spectrum(&x, &bound).unwrap();
        assert_eq!(s, x.sign_spectrum());
        assert_eq!(s.signs, vec![Sign::Pos, Sign::Zero]);
        let y = SeqRep::inv_n_pow(int(1)) - SeqRep::inv_n_pow(int(2));
        assert_eq!(
            empirical_spectrum(&y, &bound).unwrap().signs,
            vec![Sign::Pos]
        );
        assert_eq!(
            empirical_spectrum(&SeqRep::zero(), &bound).unwrap().signs,
            vec![Sign::Zero]
        );
    }

    #[test]
    fn pre_asymptotic_samples_are_flagged() {
        // 1/n - 100/n² changes sign at n = 100
        let x = SeqRep::inv_n_pow(int(1)) - SeqRep::inv_n_pow(int(2)).scalar_mul(&int(100));
        assert!(matches!(
            empirical_spectrum(&x, &BigUint::from(103u32)),
            Err(OracleError::InconclusiveSample { class: 0 })
        ));
        assert_eq!(
            empirical_spectrum(&x, &spectrum_sample_bound(&x))
                .unwrap()
                .signs,
            vec![Sign::Pos]
        );
    }

    #[test]
    fn limit_trends() {
        let bound = BigUint::from(10u32).pow(12);
        assert_eq!(
            empirical_limit_nx(&SeqRep::inv_n_pow(int(2)), &bound),
            LimitTrend::TendsToZero
        );
        assert_eq!(
            empirical_limit_nx(&SeqRep::inv_n_pow(int(1)), &bound),
            LimitTrend::BoundedAway
        );
        assert_eq!(
            empirical_limit_nx(&SeqRep::one(), &bound),
            LimitTrend::Diverges
        );
        assert_eq!(
            empirical_limit_nx(&SeqRep::zero(), &bound),
            LimitTrend::TendsToZero
        );
    }

    #[test]
    fn slow_decay_needs_the_threshold() {
        let x = SeqRep::inv_n_pow(ratio(13, 12));
        let bound = limit_sample_bound(&x);
        assert_eq!(empirical_limit_nx(&x, &bound), LimitTrend::TendsToZero);
        assert_eq!(
            empirical_limit_nx(&x, &BigUint::from(10u32).pow(12)),
            LimitTrend::Inconclusive
        );
    }
}
