//! Exact arithmetic on three ring extensions of the rationals built from
//! real sequences: Henle's ring `ℝ^ℕ/Fréchet`, ultrapower hyperreals
//! `ℝ^ℕ/𝒰`, and the Fermat reals `ℝ^ℕ_B/o` with their little-oh subring.
//!
//! All three are quotient views over one computable carrier, [`SeqRep`]:
//! finite sums of terms `p(n)·n^(-a)` with periodic rational coefficients
//! and rational exponents. On that carrier equality, order,
//! infinitesimality and nilpotency are decidable.
//!
//! ```
//! use infinitesimals::{fermat, hom, hyperreal, parse};
//! use infinitesimals::hyperreal::{HyperElem, Selector};
//! use infinitesimals::henle::HenleElem;
//!
//! let r = HenleElem::new(parse("1/n^2").unwrap());
//! let i_r = hom::map_i(&r).unwrap();
//! assert!(fermat::eq_o(&i_r, &fermat::FermatElem::zero()));
//!
//! let j_r = hom::map_j(&r);
//! assert!(!hyperreal::eq_u(&j_r, &HyperElem::zero(), &Selector::new(0)));
//! assert!(hyperreal::selector_independent(&HyperElem::zero(), &j_r));
//! ```

pub mod fermat;
pub mod henle;
pub mod hom;
pub mod hyperreal;
pub mod oracle;
pub mod parser;
pub mod rational;
pub mod seqrep;

#[cfg(feature = "testing")]
pub mod testing;

pub use parser::{format, parse, parse_with, ParseError};
pub use rational::Rational;
pub use seqrep::{normalize, PeriodicCoeff, SeqRep, Sign, SignSpectrum, Term};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/carrier.md")]
    mod carrier {}
    #[doc = include_str!("../../../book/src/henle.md")]
    mod henle {}
    #[doc = include_str!("../../../book/src/hyperreal.md")]
    mod hyperreal {}
    #[doc = include_str!("../../../book/src/fermat.md")]
    mod fermat {}
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    mod homomorphisms {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
