//! Fermat reals.
//!
//! The ideal `o` consists of the bounded sequences with `n·x(n) → 0`.
//! Quotienting the bounded sequences by `o` gives the ring `fR`
//! ([`FermatElem`]); its little-oh polynomials, sequences of the form
//! `r + Σ αᵢ n^(-aᵢ)` modulo `o`, form the linearly ordered subring `•ℝ`
//! ([`GiordanoElem`]) in which every infinitesimal is nilpotent.
//!
//! On the carrier a class-restricted sequence lies in `o` exactly when its
//! leading exponent exceeds 1, so the `o`-part of a representation is the
//! sum of its terms with exponent `> 1`. Every order decision strips that
//! part first: an element of `o` is `o(1/n)` and cannot overturn a surviving
//! term `c·n^(-a)` with `a ≤ 1`, so `x ≤ y + z` for some `z ∈ o` holds
//! exactly when the stripped difference is eventually nonnegative.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::henle::{decide_partial, PartialOrderResult};
use crate::rational::Rational;
use crate::seqrep::{normalize, SeqRep, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FermatError {
    #[error("operand is unbounded (has a term with negative exponent)")]
    UnboundedOperand,
    #[error("not a little-oh polynomial: the n^(-{exponent}) coefficient is not constant")]
    NotLittleOh { exponent: Rational },
}

/// An element of `fR`: a bounded sequence modulo `o`.
#[derive(Clone, Debug)]
pub struct FermatElem {
    rep: SeqRep,
}

/// `r + Σ α·n^(-a) + discarded`, with `0 < a ≤ 1` and `discarded ∈ o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LittleOhDecomposition {
    pub standard_part: Rational,
    /// `(α, a)` pairs, strictly increasing in `a`.
    pub infinitesimal_terms: Vec<(Rational, Rational)>,
    pub discarded: SeqRep,
}

impl LittleOhDecomposition {
    pub fn reconstruct(&self) -> SeqRep {
        let mut raw = vec![Term::monomial(self.standard_part.clone(), Rational::zero())];
        raw.extend(
            self.infinitesimal_terms
                .iter()
                .map(|(alpha, a)| Term::monomial(alpha.clone(), a.clone())),
        );
        raw.extend(self.discarded.terms().iter().cloned());
        normalize(raw)
    }
}

fn is_bounded(rep: &SeqRep) -> bool {
    rep.terms().iter().all(|t| !t.exponent.is_negative())
}

/// Splits a representation into the part with exponents `≤ 1` and the part
/// lying in `o`.
pub fn split_o(rep: &SeqRep) -> (SeqRep, SeqRep) {
    let one = Rational::one();
    let (kept, discarded): (Vec<Term>, Vec<Term>) =
        rep.terms().iter().cloned().partition(|t| t.exponent <= one);
    (normalize(kept), normalize(discarded))
}

/// `lim n·x(n) = 0`: every class vanishes or leads with exponent `> 1`.
pub fn in_ideal_o(x: &SeqRep) -> bool {
    let one = Rational::one();
    x.class_leaders().iter().flatten().all(|l| l.exponent > one)
}

impl FermatElem {
    pub fn new(rep: SeqRep) -> Result<Self, FermatError> {
        if is_bounded(&rep) {
            Ok(FermatElem { rep })
        } else {
            Err(FermatError::UnboundedOperand)
        }
    }

    pub fn rep(&self) -> &SeqRep {
        &self.rep
    }

    pub fn into_rep(self) -> SeqRep {
        self.rep
    }

    pub fn zero() -> Self {
        FermatElem {
            rep: SeqRep::zero(),
        }
    }

    pub fn one() -> Self {
        FermatElem { rep: SeqRep::one() }
    }

    pub fn pow(&self, k: u32) -> Self {
        FermatElem {
            rep: self.rep.pow(k),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        FermatElem {
            rep: self.rep.scalar_mul(c),
        }
    }
}

impl TryFrom<SeqRep> for FermatElem {
    type Error = FermatError;
    fn try_from(rep: SeqRep) -> Result<Self, FermatError> {
        FermatElem::new(rep)
    }
}

pub fn eq_o(x: &FermatElem, y: &FermatElem) -> bool {
    in_ideal_o(&(&x.rep - &y.rep))
}

pub fn cmp_o(x: &FermatElem, y: &FermatElem) -> PartialOrderResult {
    let (kept, _) = split_o(&(&y.rep - &x.rep));
    decide_partial(&kept.sign_spectrum())
}

/// Every term with exponent `≤ 1` has a constant coefficient.
pub fn is_little_oh(x: &FermatElem) -> bool {
    first_periodic_low_term(x).is_none()
}

fn first_periodic_low_term(x: &FermatElem) -> Option<&Term> {
    let one = Rational::one();
    x.rep
        .terms()
        .iter()
        .take_while(|t| t.exponent <= one)
        .find(|t| t.coeff.as_constant().is_none())
}

pub fn decompose(x: &FermatElem) -> Result<LittleOhDecomposition, FermatError> {
    if let Some(t) = first_periodic_low_term(x) {
        return Err(FermatError::NotLittleOh {
            exponent: t.exponent.clone(),
        });
    }
    let (kept, discarded) = split_o(&x.rep);
    let mut standard_part = Rational::zero();
    let mut infinitesimal_terms = Vec::new();
    for t in kept.terms() {
        let alpha = t.coeff.as_constant().expect("checked above").clone();
        if t.exponent.is_zero() {
            standard_part = alpha;
        } else {
            infinitesimal_terms.push((alpha, t.exponent.clone()));
        }
    }
    Ok(LittleOhDecomposition {
        standard_part,
        infinitesimal_terms,
        discarded,
    })
}

/// Least `k` with `x^k = 0` in `fR`, or `None` when some class carries a
/// nonzero standard part. The zero element has index 1.
pub fn nilpotency_index(x: &FermatElem) -> Option<u32> {
    if in_ideal_o(&x.rep) {
        return Some(1);
    }
    let leaders = x.rep.class_leaders();
    let min_exponent = leaders
        .iter()
        .flatten()
        .map(|l| &l.exponent)
        .min()
        .expect("nonzero element has a leading term");
    if min_exponent.is_zero() {
        return None;
    }
    // least k with k·a_min > 1
    let k: num_bigint::BigInt = min_exponent.recip().floor().to_integer() + 1;
    Some(k.to_u32().expect("nilpotency index fits in u32"))
}

/// The standard part `r`, defined when the `n^0` coefficient is the same on
/// every class.
pub fn st_o(x: &FermatElem) -> Option<Rational> {
    match x.rep.constant_part() {
        None => Some(Rational::zero()),
        Some(c) => c.as_constant().cloned(),
    }
}

/// An element of `•ℝ`, the little-oh polynomials modulo `o`.
#[derive(Clone, Debug)]
pub struct GiordanoElem {
    inner: FermatElem,
}

impl GiordanoElem {
    pub fn new(x: FermatElem) -> Result<Self, FermatError> {
        decompose(&x)?;
        Ok(GiordanoElem { inner: x })
    }

    pub fn as_fermat(&self) -> &FermatElem {
        &self.inner
    }

    pub fn decomposition(&self) -> LittleOhDecomposition {
        decompose(&self.inner).expect("invariant: little-oh")
    }

    pub fn standard_part(&self) -> Rational {
        st_o(&self.inner).expect("little-oh polynomials have a standard part")
    }

    /// The linear order of `•ℝ`.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match cmp_o(&self.inner, &other.inner) {
            PartialOrderResult::Less => Ordering::Less,
            PartialOrderResult::Equal => Ordering::Equal,
            PartialOrderResult::Greater => Ordering::Greater,
            PartialOrderResult::Incomparable => {
                unreachable!("differences of little-oh polynomials have a uniform leading sign")
            }
        }
    }
}

impl PartialEq for FermatElem {
    fn eq(&self, other: &Self) -> bool {
        eq_o(self, other)
    }
}

impl Eq for FermatElem {}

impl Add for &FermatElem {
    type Output = FermatElem;
    fn add(self, rhs: &FermatElem) -> FermatElem {
        FermatElem {
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for &FermatElem {
    type Output = FermatElem;
    fn sub(self, rhs: &FermatElem) -> FermatElem {
        FermatElem {
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for &FermatElem {
    type Output = FermatElem;
    fn mul(self, rhs: &FermatElem) -> FermatElem {
        FermatElem {
            rep: &self.rep * &rhs.rep,
        }
    }
}

impl Neg for &FermatElem {
    type Output = FermatElem;
    fn neg(self) -> FermatElem {
        FermatElem { rep: -&self.rep }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn f(rep: SeqRep) -> FermatElem {
        FermatElem::new(rep).unwrap()
    }

    fn inv_n(a: Rational) -> SeqRep {
        SeqRep::inv_n_pow(a)
    }

    #[test]
    fn ideal_membership() {
        assert!(in_ideal_o(&inv_n(int(2))));
        assert!(!in_ideal_o(&inv_n(int(1))));
        assert!(in_ideal_o(&SeqRep::zero()));
        assert!(in_ideal_o(&inv_n(ratio(5, 4))));
        // periodic coefficient on 1/n², oscillation below the ideal threshold
        assert!(in_ideal_o(&SeqRep::alternating().mul_n_pow(&int(-2))));
    }

    #[test]
    fn unbounded_is_rejected() {
        assert_eq!(
            FermatElem::new(SeqRep::n_pow(int(1))).unwrap_err(),
            FermatError::UnboundedOperand
        );
    }

    #[test]
    fn equality_examples() {
        let a = f(inv_n(int(1)));
        let b = f(inv_n(int(1)) + inv_n(int(2)));
        assert!(eq_o(&a, &b));
        assert!(!eq_o(&a, &FermatElem::zero()));
        assert!(eq_o(&a, &a));
    }

    #[test]
    fn order_examples() {
        let recip = f(inv_n(int(1)));
        assert_eq!(cmp_o(&FermatElem::zero(), &recip), PartialOrderResult::Less);
        let osc = f(SeqRep::one() - SeqRep::alternating());
        assert_eq!(
            cmp_o(&osc, &FermatElem::one()),
            PartialOrderResult::Incomparable
        );
        let perturbed = f(inv_n(int(1)) + inv_n(int(2)));
        assert_eq!(cmp_o(&recip, &perturbed), PartialOrderResult::Equal);
    }

    #[test]
    fn o_part_cannot_overturn_surviving_terms() {
        // 1/n - 1000/n^(5/4): negative for small n, but 1/n dominates
        let x = f(inv_n(int(1)) - inv_n(ratio(5, 4)).scalar_mul(&int(1000)));
        assert_eq!(cmp_o(&FermatElem::zero(), &x), PartialOrderResult::Less);
    }

    #[test]
    fn decomposition_of_decomposed_shape() {
        let x = f(SeqRep::from_int(3) + inv_n(int(1)) - inv_n(ratio(1, 2)).scalar_mul(&int(2)));
        let d = decompose(&x).unwrap();
        assert_eq!(d.standard_part, int(3));
        assert_eq!(
            d.infinitesimal_terms,
            vec![(int(-2), ratio(1, 2)), (int(1), int(1))]
        );
        assert!(d.discarded.is_zero());
        assert_eq!(d.reconstruct(), *x.rep());
    }

    #[test]
    fn oscillating_reciprocal_is_not_little_oh() {
        let x = f((SeqRep::one() - SeqRep::alternating()).mul_n_pow(&int(-1)));
        assert!(!is_little_oh(&x));
        assert_eq!(
            decompose(&x).unwrap_err(),
            FermatError::NotLittleOh { exponent: int(1) }
        );
    }

    #[test]
    fn reciprocal_square_decomposes_to_discarded() {
        let x = f(inv_n(int(2)));
        assert!(is_little_oh(&x));
        let d = decompose(&x).unwrap();
        assert_eq!(d.standard_part, int(0));
        assert!(d.infinitesimal_terms.is_empty());
        assert_eq!(d.discarded, inv_n(int(2)));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(&f(inv_n(int(1)))), Some(2));
        let x = f(inv_n(ratio(2, 5)));
        assert_eq!(nilpotency_index(&x), Some(3));
        assert!(!eq_o(&x.pow(2), &FermatElem::zero()));
        assert!(eq_o(&x.pow(3), &FermatElem::zero()));
        assert_eq!(nilpotency_index(&f(SeqRep::from_int(5))), None);
        assert_eq!(nilpotency_index(&FermatElem::zero()), Some(1));
        assert_eq!(nilpotency_index(&f(inv_n(int(3)))), Some(1));
        // exponent exactly 1/2: k·(1/2) > 1 first at k = 3
        assert_eq!(nilpotency_index(&f(inv_n(ratio(1, 2)))), Some(3));
    }

    #[test]
    fn nilpotency_of_oscillating_infinitesimal() {
        // vanishes on even n, 2/n on odd n
        let x = f((SeqRep::one() - SeqRep::alternating()).mul_n_pow(&int(-1)));
        assert_eq!(nilpotency_index(&x), Some(2));
        // nonzero constant on one class only still blocks nilpotency
        let y = f(SeqRep::one() - SeqRep::alternating());
        assert_eq!(nilpotency_index(&y), None);
    }

    #[test]
    fn standard_parts() {
        assert_eq!(st_o(&f(SeqRep::from_int(3) + inv_n(int(1)))), Some(int(3)));
        assert_eq!(st_o(&f(SeqRep::one() - SeqRep::alternating())), None);
        assert_eq!(st_o(&f(inv_n(int(2)))), Some(int(0)));
    }

    #[test]
    fn giordano_order_is_total() {
        let a = GiordanoElem::new(f(inv_n(int(1)))).unwrap();
        let b = GiordanoElem::new(f(inv_n(ratio(1, 2)))).unwrap();
        assert_eq!(a.total_cmp(&b), Ordering::Less);
        assert_eq!(b.total_cmp(&a), Ordering::Greater);
        assert!(GiordanoElem::new(f(SeqRep::alternating())).is_err());
    }
}
