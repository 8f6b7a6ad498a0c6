//! Henle's ring: real sequences modulo the Fréchet filter of cofinite sets.
//!
//! Two sequences are identified when they agree on a cofinite set, and
//! `x ≤ y` holds when `x(n) ≤ y(n)` for all but finitely many `n`. On the
//! carrier every decision reduces to the [`SignSpectrum`] of a difference:
//! the set `{ n : x(n) ≤ y(n) }` is cofinite exactly when no residue class of
//! `y - x` is eventually negative.
//!
//! The order is partial. [`zero_divisor_witness`] exhibits two nonzero
//! elements whose product vanishes, while powers of a nonzero element never
//! vanish (a nonzero class stays nonzero under powers).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::seqrep::{SeqRep, Sign, SignSpectrum};

/// An element of Henle's ring, represented by any sequence of its coset.
#[derive(Clone, Debug)]
pub struct HenleElem {
    rep: SeqRep,
}

/// Verdict of a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartialOrderResult {
    Equal,
    Less,
    Greater,
    Incomparable,
}

impl PartialOrderResult {
    /// `true` for `Less` or `Equal`.
    pub fn is_le(self) -> bool {
        matches!(self, PartialOrderResult::Less | PartialOrderResult::Equal)
    }

    pub fn reverse(self) -> Self {
        match self {
            PartialOrderResult::Less => PartialOrderResult::Greater,
            PartialOrderResult::Greater => PartialOrderResult::Less,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PartialOrderResult::Equal => "Equal",
            PartialOrderResult::Less => "Less",
            PartialOrderResult::Greater => "Greater",
            PartialOrderResult::Incomparable => "Incomparable",
        }
    }
}

/// Finite/infinitesimal status of an element in an ordered ring extending ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub zero: bool,
    /// `-m ≤ x ≤ m` for some integer `m`.
    pub finite: bool,
    /// `-1/m ≤ x ≤ 1/m` for every positive integer `m`.
    pub infinitesimal: bool,
    pub infinite: bool,
}

/// Decides `x` versus `y` from the spectrum of `y - x`.
pub(crate) fn decide_partial(spectrum: &SignSpectrum) -> PartialOrderResult {
    let has_pos = spectrum.contains(Sign::Pos);
    let has_neg = spectrum.contains(Sign::Neg);
    match (has_pos, has_neg) {
        (false, false) => PartialOrderResult::Equal,
        (true, false) => PartialOrderResult::Less,
        (false, true) => PartialOrderResult::Greater,
        (true, true) => PartialOrderResult::Incomparable,
    }
}

pub(crate) fn classify_rep(rep: &SeqRep) -> Classification {
    let leaders = rep.class_leaders();
    let finite = leaders.iter().flatten().all(|l| !l.exponent.is_negative());
    let infinitesimal = leaders.iter().flatten().all(|l| l.exponent.is_positive());
    Classification {
        zero: rep.is_eventually_zero(),
        finite,
        infinitesimal,
        infinite: !finite,
    }
}

impl HenleElem {
    pub fn new(rep: SeqRep) -> Self {
        HenleElem { rep }
    }

    pub fn rep(&self) -> &SeqRep {
        &self.rep
    }

    pub fn into_rep(self) -> SeqRep {
        self.rep
    }

    pub fn zero() -> Self {
        HenleElem::new(SeqRep::zero())
    }

    pub fn one() -> Self {
        HenleElem::new(SeqRep::one())
    }

    pub fn pow(&self, k: u32) -> Self {
        HenleElem::new(self.rep.pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_eventually_zero()
    }
}

impl From<SeqRep> for HenleElem {
    fn from(rep: SeqRep) -> Self {
        HenleElem::new(rep)
    }
}

/// Equality modulo the Fréchet filter: the difference vanishes eventually.
pub fn eq_f(x: &HenleElem, y: &HenleElem) -> bool {
    (&x.rep - &y.rep).is_eventually_zero()
}

/// `x ≤ y` iff `{ n : x(n) ≤ y(n) }` is cofinite.
pub fn cmp_f(x: &HenleElem, y: &HenleElem) -> PartialOrderResult {
    decide_partial(&(&y.rep - &x.rep).sign_spectrum())
}

pub fn classify(x: &HenleElem) -> Classification {
    classify_rep(&x.rep)
}

/// The standard part: the rational `r` with `x - r` infinitesimal, if any.
pub fn st_f(x: &HenleElem) -> Option<Rational> {
    if !classify(x).finite {
        return None;
    }
    let r = match x.rep.constant_part() {
        None => Rational::zero(),
        Some(coeff) => coeff.as_constant()?.clone(),
    };
    let rest = &x.rep - &SeqRep::constant(r.clone());
    classify_rep(&rest).infinitesimal.then_some(r)
}

/// `1 - (-1)^n` and `1 + (-1)^n`: both nonzero, product zero.
pub fn zero_divisor_witness() -> (HenleElem, HenleElem) {
    let alt = SeqRep::alternating();
    (
        HenleElem::new(&SeqRep::one() - &alt),
        HenleElem::new(&SeqRep::one() + &alt),
    )
}

impl PartialEq for HenleElem {
    fn eq(&self, other: &Self) -> bool {
        eq_f(self, other)
    }
}

impl Eq for HenleElem {}

impl Add for &HenleElem {
    type Output = HenleElem;
    fn add(self, rhs: &HenleElem) -> HenleElem {
        HenleElem::new(&self.rep + &rhs.rep)
    }
}

impl Sub for &HenleElem {
    type Output = HenleElem;
    fn sub(self, rhs: &HenleElem) -> HenleElem {
        HenleElem::new(&self.rep - &rhs.rep)
    }
}

impl Mul for &HenleElem {
    type Output = HenleElem;
    fn mul(self, rhs: &HenleElem) -> HenleElem {
        HenleElem::new(&self.rep * &rhs.rep)
    }
}

impl Neg for &HenleElem {
    type Output = HenleElem;
    fn neg(self) -> HenleElem {
        HenleElem::new(-&self.rep)
    }
}
