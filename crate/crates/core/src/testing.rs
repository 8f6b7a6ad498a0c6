//! Random carrier elements for property and acceptance suites.
//!
//! Enabled by the `testing` feature. [`Gen`] draws from a seeded ChaCha
//! stream so fixed-count suites are reproducible; the `arb_*` functions are
//! proptest strategies over the same shapes.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hyperreal::Selector;
use crate::rational::{int, ratio, Rational};
use crate::seqrep::{normalize, PeriodicCoeff, SeqRep, Term};

/// Periods drawn for coefficients.
pub const PERIODS: [usize; 5] = [1, 2, 3, 4, 6];
/// Exponent denominators drawn for exponents.
pub const DENOMINATORS: [i64; 3] = [1, 2, 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Any exponent in `[-2, 3]`.
    Any,
    /// Exponents in `[0, 3]`.
    Bounded,
    /// Exponents in `[0, 3]`, constant coefficients up to exponent 1.
    LittleOh,
    /// Like [`Shape::LittleOh`] without an `n^0` term.
    LittleOhInfinitesimal,
    /// Integer exponents in `[-2, 3]`.
    IntegerExponents,
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coefficient_value(&mut self) -> Rational {
        let num = self.rng.gen_range(-5..=5);
        if self.rng.gen_bool(0.2) {
            ratio(num, 2)
        } else {
            int(num)
        }
    }

    fn nonzero_value(&mut self) -> Rational {
        loop {
            let v = self.coefficient_value();
            if v != int(0) {
                return v;
            }
        }
    }

    pub fn periodic(&mut self, period: usize) -> PeriodicCoeff {
        PeriodicCoeff::new((0..period).map(|_| self.coefficient_value()).collect())
    }

    fn exponent(&mut self, shape: Shape) -> Rational {
        let den = match shape {
            Shape::IntegerExponents => 1,
            _ => DENOMINATORS[self.rng.gen_range(0..DENOMINATORS.len())],
        };
        let (lo, hi) = match shape {
            Shape::Any | Shape::IntegerExponents => (-2 * den, 3 * den),
            _ => (0, 3 * den),
        };
        ratio(self.rng.gen_range(lo..=hi), den)
    }

    pub fn term(&mut self, shape: Shape) -> Term {
        let mut exponent = self.exponent(shape);
        if shape == Shape::LittleOhInfinitesimal && exponent == int(0) {
            exponent = int(1);
        }
        let low = exponent <= int(1);
        let constant_only = matches!(shape, Shape::LittleOh | Shape::LittleOhInfinitesimal) && low;
        let coeff = if constant_only || self.rng.gen_bool(0.5) {
            PeriodicCoeff::constant(self.nonzero_value())
        } else {
            let period = PERIODS[self.rng.gen_range(1..PERIODS.len())];
            self.periodic(period)
        };
        Term::new(coeff, exponent)
    }

    pub fn seqrep(&mut self, shape: Shape) -> SeqRep {
        let count = self.rng.gen_range(0..=4);
        normalize((0..count).map(|_| self.term(shape)).collect())
    }

    pub fn nonzero(&mut self, shape: Shape) -> SeqRep {
        loop {
            let x = self.seqrep(shape);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// An eventually vanishing sequence, built as a random raw term list
    /// plus its pointwise negation. Distinct canonical representations
    /// differ infinitely often, so normalization always lands on zero.
    pub fn eventually_zero(&mut self) -> SeqRep {
        let count = self.rng.gen_range(1..=4);
        let terms: Vec<Term> = (0..count).map(|_| self.term(Shape::Any)).collect();
        let negated = terms
            .iter()
            .map(|t| Term::new(t.coeff.neg(), t.exponent.clone()));
        normalize(terms.iter().cloned().chain(negated).collect())
    }

    /// A random element of `o`: every exponent above 1.
    pub fn in_o(&mut self) -> SeqRep {
        let count = self.rng.gen_range(0..=3);
        let raw = (0..count)
            .map(|_| {
                let den = DENOMINATORS[self.rng.gen_range(0..DENOMINATORS.len())];
                let exponent = ratio(self.rng.gen_range(den + 1..=3 * den), den);
                let period = PERIODS[self.rng.gen_range(0..PERIODS.len())];
                Term::new(self.periodic(period), exponent)
            })
            .collect();
        normalize(raw)
    }

    pub fn selector(&mut self) -> Selector {
        let base = self.rng.gen_range(0..10_000);
        if self.rng.gen_bool(0.3) {
            let p = PERIODS[self.rng.gen_range(1..PERIODS.len())] as u64;
            let r = self.rng.gen_range(0..p);
            Selector::with_overrides(base, [(p, r)]).expect("single entry is coherent")
        } else {
            Selector::new(base)
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, prop_oneof![Just(1i64), Just(2i64)]).prop_map(|(n, d)| ratio(n, d))
}

fn arb_exponent(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    prop::sample::select(DENOMINATORS.to_vec())
        .prop_flat_map(move |den| (lo * den..=hi * den).prop_map(move |num| ratio(num, den)))
}

fn arb_periodic() -> impl Strategy<Value = PeriodicCoeff> {
    prop::sample::select(PERIODS.to_vec())
        .prop_flat_map(|p| prop::collection::vec(arb_rational(), p))
        .prop_map(PeriodicCoeff::new)
}

pub fn arb_term(lo: i64, hi: i64) -> impl Strategy<Value = Term> {
    (arb_periodic(), arb_exponent(lo, hi)).prop_map(|(c, a)| Term::new(c, a))
}

/// Canonical elements with exponents in `[-2, 3]`.
pub fn arb_seqrep() -> impl Strategy<Value = SeqRep> {
    prop::collection::vec(arb_term(-2, 3), 0..=4).prop_map(normalize)
}

/// Canonical elements with exponents in `[0, 3]`.
pub fn arb_bounded() -> impl Strategy<Value = SeqRep> {
    prop::collection::vec(arb_term(0, 3), 0..=4).prop_map(normalize)
}

/// Canonical elements with integer exponents in `[-2, 3]`.
pub fn arb_integer_exponents() -> impl Strategy<Value = SeqRep> {
    let term = (arb_periodic(), -2i64..=3).prop_map(|(c, a)| Term::new(c, int(a)));
    prop::collection::vec(term, 0..=4).prop_map(normalize)
}

/// Little-oh polynomials: constant coefficients up to exponent 1.
pub fn arb_little_oh() -> impl Strategy<Value = SeqRep> {
    let low = (arb_rational(), arb_exponent(0, 1)).prop_map(|(c, a)| Term::monomial(c, a));
    let high = (arb_periodic(), 5i64..=12).prop_map(|(c, a)| Term::new(c, ratio(a, 4)));
    (
        prop::collection::vec(low, 0..=3),
        prop::collection::vec(high, 0..=2),
    )
        .prop_map(|(mut a, b)| {
            a.extend(b);
            normalize(a)
        })
}

pub fn arb_selector() -> impl Strategy<Value = Selector> {
    (0u64..10_000).prop_map(Selector::new)
}
