//! The computable carrier shared by every quotient in the crate.
//!
//! A [`SeqRep`] denotes the real sequence
//!
//! ```text
//! x(n) = p_1(n) n^(-a_1) + p_2(n) n^(-a_2) + ... + p_k(n) n^(-a_k),   n = 1, 2, 3, ...
//! ```
//!
//! where each `a_i` is a rational exponent (negative exponents are growth
//! terms) and each `p_i` is a periodic rational coefficient. Terms are kept
//! sorted by strictly increasing exponent, so the first term is the dominant
//! one. Coefficients are stored at their minimal period.
//!
//! Restricted to one residue class `n ≡ c (mod P)`, where `P` is the lcm of
//! all periods, every coefficient becomes a constant and the sequence is a
//! finite sum of distinct powers of `n`. Such a sum is eventually of the sign
//! of its leading nonzero coefficient, and this is what [`SignSpectrum`]
//! records. Two distinct canonical representations therefore differ at
//! infinitely many indices, so eventual vanishing coincides with being the
//! zero representation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// Eventual sign of a sequence on one residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
        }
    }
}

/// A periodic rational coefficient.
///
/// `values[(n - 1) mod P]` is the value at index `n`, so `values[0]` belongs
/// to `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCoeff {
    values: Vec<Rational>,
}

impl PeriodicCoeff {
    /// Builds a coefficient from one full period of values and reduces it to
    /// its minimal period. Panics on an empty slice.
    pub fn new(values: Vec<Rational>) -> Self {
        assert!(
            !values.is_empty(),
            "a periodic coefficient needs at least one value"
        );
        let mut coeff = PeriodicCoeff { values };
        coeff.reduce();
        coeff
    }

    pub fn constant(value: Rational) -> Self {
        PeriodicCoeff {
            values: vec![value],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    /// `(-1)^n`, i.e. `-1` at odd `n` and `1` at even `n`.
    pub fn alternating() -> Self {
        PeriodicCoeff {
            values: vec![rational::int(-1), rational::int(1)],
        }
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at index `n ≥ 1`.
    pub fn at(&self, n: u64) -> &Rational {
        assert!(n >= 1, "sequences are indexed from n = 1");
        &self.values[((n - 1) % self.period() as u64) as usize]
    }

    /// Value on the class with zero-based index `class`, i.e. at every
    /// `n` with `(n - 1) mod P = class` for any multiple `P` of the period.
    pub fn at_class(&self, class: usize) -> &Rational {
        &self.values[class % self.period()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// The constant value, when the coefficient has period 1.
    pub fn as_constant(&self) -> Option<&Rational> {
        match self.values.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let period = rational::lcm(self.period(), other.period());
        let values = (0..period)
            .map(|i| f(self.at_class(i), other.at_class(i)))
            .collect();
        PeriodicCoeff::new(values)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PeriodicCoeff::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn neg(&self) -> Self {
        PeriodicCoeff {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    fn reduce(&mut self) {
        let p = self.values.len();
        for d in (1..p).filter(|d| p.is_multiple_of(*d)) {
            if (d..p).all(|i| self.values[i] == self.values[i % d]) {
                self.values.truncate(d);
                return;
            }
        }
    }
}

/// One summand `coeff(n) · n^(-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: PeriodicCoeff,
    pub exponent: Rational,
}

impl Term {
    pub fn new(coeff: PeriodicCoeff, exponent: Rational) -> Self {
        Term { coeff, exponent }
    }

    /// `c · n^(-exponent)` with a constant coefficient.
    pub fn monomial(c: Rational, exponent: Rational) -> Self {
        Term::new(PeriodicCoeff::constant(c), exponent)
    }
}

/// Leading (dominant) nonzero term of a sequence restricted to one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLeader {
    pub exponent: Rational,
    pub coeff: Rational,
}

/// Eventual sign of a sequence on each residue class.
///
/// `signs[k]` is the eventual sign on `{ n ≥ 1 : n ≡ k + 1 (mod modulus) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSpectrum {
    pub modulus: usize,
    pub signs: Vec<Sign>,
}

impl SignSpectrum {
    /// Sign on the class containing index `n`.
    pub fn sign_at(&self, n: u64) -> Sign {
        self.signs[((n - 1) % self.modulus as u64) as usize]
    }

    /// Sign on the class `{ n : n ≡ residue (mod modulus) }`.
    pub fn sign_for_residue(&self, residue: u64) -> Sign {
        let m = self.modulus as u64;
        self.signs[((residue % m + m - 1) % m) as usize]
    }

    pub fn all(&self, sign: Sign) -> bool {
        self.signs.iter().all(|&s| s == sign)
    }

    pub fn contains(&self, sign: Sign) -> bool {
        self.signs.contains(&sign)
    }

    /// True when every class carries the same sign.
    pub fn is_uniform(&self) -> bool {
        self.signs.windows(2).all(|w| w[0] == w[1])
    }
}

/// A canonical periodic power sum. See the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SeqRep {
    terms: Vec<Term>,
}

/// Merges equal exponents, drops zero terms and reduces every period.
pub fn normalize(raw: Vec<Term>) -> SeqRep {
    let mut merged: BTreeMap<Rational, PeriodicCoeff> = BTreeMap::new();
    for term in raw {
        let coeff = PeriodicCoeff::new(term.coeff.values);
        merged
            .entry(term.exponent)
            .and_modify(|c| *c = c.add(&coeff))
            .or_insert(coeff);
    }
    let terms = merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(exponent, coeff)| Term { coeff, exponent })
        .collect();
    SeqRep { terms }
}

impl SeqRep {
    pub fn zero() -> Self {
        SeqRep::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        normalize(vec![Term::monomial(c, Rational::zero())])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rational::int(c))
    }

    /// `c · n^(-exponent)`.
    pub fn monomial(c: Rational, exponent: Rational) -> Self {
        normalize(vec![Term::monomial(c, exponent)])
    }

    /// `n^power`. `n_pow(-2)` is `1/n²`, `n_pow(1)` is `n`.
    pub fn n_pow(power: Rational) -> Self {
        Self::monomial(Rational::one(), -power)
    }

    /// `1 / n^exponent`.
    pub fn inv_n_pow(exponent: Rational) -> Self {
        Self::monomial(Rational::one(), exponent)
    }

    /// `(-1)^n`.
    pub fn alternating() -> Self {
        normalize(vec![Term::new(
            PeriodicCoeff::alternating(),
            Rational::zero(),
        )])
    }

    /// The periodic sequence `values[0], values[1], ...` starting at `n = 1`.
    pub fn periodic(values: Vec<Rational>) -> Self {
        normalize(vec![Term::new(
            PeriodicCoeff::new(values),
            Rational::zero(),
        )])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the `n^0` term, if present.
    pub fn constant_part(&self) -> Option<&PeriodicCoeff> {
        self.term_with_exponent(&Rational::zero()).map(|t| &t.coeff)
    }

    pub fn term_with_exponent(&self, exponent: &Rational) -> Option<&Term> {
        self.terms
            .binary_search_by(|t| t.exponent.cmp(exponent))
            .ok()
            .map(|i| &self.terms[i])
    }

    /// lcm of the coefficient periods, 1 for the zero sequence.
    pub fn modulus(&self) -> usize {
        self.terms
            .iter()
            .fold(1, |acc, t| rational::lcm(acc, t.coeff.period()))
    }

    pub fn neg(&self) -> SeqRep {
        SeqRep {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.neg(), t.exponent.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SeqRep) -> SeqRep {
        normalize(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn sub(&self, other: &SeqRep) -> SeqRep {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SeqRep) -> SeqRep {
        if self.is_zero() || other.is_zero() {
            return SeqRep::zero();
        }
        // accumulate every product on the common period, reduce once at the end
        let period = rational::lcm(self.modulus(), other.modulus());
        let mut acc: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let slot = acc
                    .entry(&a.exponent + &b.exponent)
                    .or_insert_with(|| vec![Rational::zero(); period]);
                for (i, v) in slot.iter_mut().enumerate() {
                    let (x, y) = (a.coeff.at_class(i), b.coeff.at_class(i));
                    if !x.is_zero() && !y.is_zero() {
                        *v += x * y;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .map(|(exponent, values)| Term {
                coeff: PeriodicCoeff::new(values),
                exponent,
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        SeqRep { terms }
    }

    pub fn scalar_mul(&self, c: &Rational) -> SeqRep {
        normalize(
            self.terms
                .iter()
                .map(|t| Term::new(t.coeff.scale(c), t.exponent.clone()))
                .collect(),
        )
    }

    /// Multiplies by `n^power`; exact since it only shifts exponents.
    pub fn mul_n_pow(&self, power: &Rational) -> SeqRep {
        SeqRep {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), &t.exponent - power))
                .collect(),
        }
    }

    /// `k`-fold product; `pow(0)` is one.
    pub fn pow(&self, k: u32) -> SeqRep {
        let mut result = SeqRep::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = SeqRep::mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = SeqRep::mul(&base, &base);
            }
        }
        result
    }

    /// Dominant nonzero term on each residue class modulo [`Self::modulus`],
    /// `None` where the class is identically zero.
    pub fn class_leaders(&self) -> Vec<Option<ClassLeader>> {
        (0..self.modulus())
            .map(|class| {
                self.terms.iter().find_map(|t| {
                    let c = t.coeff.at_class(class);
                    (!c.is_zero()).then(|| ClassLeader {
                        exponent: t.exponent.clone(),
                        coeff: c.clone(),
                    })
                })
            })
            .collect()
    }

    pub fn sign_spectrum(&self) -> SignSpectrum {
        let signs = self
            .class_leaders()
            .iter()
            .map(|leader| match leader {
                Some(l) => rational::sign_of(&l.coeff),
                None => Sign::Zero,
            })
            .collect();
        SignSpectrum {
            modulus: self.modulus(),
            signs,
        }
    }

    /// Membership in the ideal of eventually vanishing sequences.
    pub fn is_eventually_zero(&self) -> bool {
        self.sign_spectrum().all(Sign::Zero)
    }

    /// Exact value at `n` when every exponent is an integer.
    pub fn eval_integer_exponents(&self, n: u64) -> Option<Rational> {
        assert!(n >= 1, "sequences are indexed from n = 1");
        let base = rational::int(n as i64);
        let mut total = Rational::zero();
        for t in &self.terms {
            if !t.exponent.is_integer() {
                return None;
            }
            let e: i32 = t.exponent.to_integer().try_into().ok()?;
            total += t.coeff.at(n) * num_traits::pow::Pow::pow(&base, -e);
        }
        Some(total)
    }
}

impl fmt::Display for SeqRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&SeqRep> for &SeqRep {
            type Output = SeqRep;
            fn $method(self, rhs: &SeqRep) -> SeqRep {
                SeqRep::$method(self, rhs)
            }
        }
        impl $trait<SeqRep> for SeqRep {
            type Output = SeqRep;
            fn $method(self, rhs: SeqRep) -> SeqRep {
                SeqRep::$method(&self, &rhs)
            }
        }
        impl $trait<&SeqRep> for SeqRep {
            type Output = SeqRep;
            fn $method(self, rhs: &SeqRep) -> SeqRep {
                SeqRep::$method(&self, rhs)
            }
        }
        impl $trait<SeqRep> for &SeqRep {
            type Output = SeqRep;
            fn $method(self, rhs: SeqRep) -> SeqRep {
                SeqRep::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &SeqRep {
    type Output = SeqRep;
    fn neg(self) -> SeqRep {
        SeqRep::neg(self)
    }
}

impl Neg for SeqRep {
    type Output = SeqRep;
    fn neg(self) -> SeqRep {
        SeqRep::neg(&self)
    }
}
