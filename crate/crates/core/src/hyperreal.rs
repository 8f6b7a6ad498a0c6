//! Ultrapower hyperreals `ℝ^ℕ / 𝒰` seen through a computable selector.
//!
//! A nonprincipal ultrafilter cannot be written down, but the carrier only
//! ever asks it about sets built from residue classes and finite sets. Such a
//! question is settled once we know which class `n ≡ r_P (mod P)` the
//! ultrafilter contains for each modulus `P`. A [`Selector`] fixes those
//! residues coherently (`r_Q ≡ r_P mod P` whenever `P | Q`); every
//! nonprincipal ultrafilter containing all the progressions it names makes
//! the same decisions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::seqrep::{SeqRep, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelectorError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("residues {r1} mod {p1} and {r2} mod {p2} are not coherent")]
    Incoherent { p1: u64, r1: u64, p2: u64, r2: u64 },
    #[error("combined modulus of the override table overflows")]
    Overflow,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("element is infinite on the selected residue class")]
    InfiniteElement,
}

/// A coherent choice of one residue class per modulus.
///
/// Internally the choice is the integer `z = r_L + L·base`, where `L` is the
/// lcm of the override moduli and `r_L` their CRT combination; the residue
/// for modulus `P` is `z mod P`. Without overrides this is `base mod P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    base: u64,
    overrides: BTreeMap<u64, u64>,
    combined_modulus: u128,
    combined_residue: u128,
}

impl Selector {
    pub fn new(base: u64) -> Self {
        Selector {
            base,
            overrides: BTreeMap::new(),
            combined_modulus: 1,
            combined_residue: 0,
        }
    }

    /// A selector pinned to the given residues.
    pub fn with_overrides(
        base: u64,
        table: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, SelectorError> {
        let mut overrides = BTreeMap::new();
        let mut modulus: u128 = 1;
        let mut residue: u128 = 0;
        for (p, r) in table {
            if p == 0 {
                return Err(SelectorError::ZeroModulus);
            }
            let r = r % p;
            for (&q, &s) in &overrides {
                let g = num_integer::gcd(p, q);
                if r % g != s % g {
                    return Err(SelectorError::Incoherent {
                        p1: q,
                        r1: s,
                        p2: p,
                        r2: r,
                    });
                }
            }
            overrides.insert(p, r);
            (modulus, residue) = crt(modulus, residue, p as u128, r as u128)?;
        }
        Ok(Selector {
            base,
            overrides,
            combined_modulus: modulus,
            combined_residue: residue,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn overrides(&self) -> &BTreeMap<u64, u64> {
        &self.overrides
    }

    /// The selected residue `r_P` in `0..P`.
    pub fn residue(&self, modulus: u64) -> u64 {
        assert!(modulus > 0, "modulus must be positive");
        let p = modulus as u128;
        let z =
            (self.combined_residue % p + (self.combined_modulus % p) * (self.base as u128 % p)) % p;
        z as u64
    }

    /// Zero-based class index `(n - 1) mod P` of the selected class.
    pub fn class_index(&self, modulus: usize) -> usize {
        let m = modulus as u64;
        ((self.residue(m) + m - 1) % m) as usize
    }
}

impl Default for Selector {
    fn default() -> Self {
        Selector::new(0)
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base {}", self.base)?;
        for (p, r) in &self.overrides {
            write!(f, ", n≡{r} mod {p}")?;
        }
        Ok(())
    }
}

fn crt(m1: u128, r1: u128, m2: u128, r2: u128) -> Result<(u128, u128), SelectorError> {
    use num_integer::Integer;
    let (m1i, m2i) = (m1 as i128, m2 as i128);
    let egcd = m1i.extended_gcd(&m2i);
    let g = egcd.gcd;
    let lcm = m1i.checked_mul(m2i / g).ok_or(SelectorError::Overflow)?;
    let diff = (r2 as i128 - r1 as i128) / g;
    let step = (diff % (m2i / g)) * (egcd.x % (m2i / g)) % (m2i / g);
    let r = (r1 as i128 + m1i.checked_mul(step).ok_or(SelectorError::Overflow)?).rem_euclid(lcm);
    Ok((lcm as u128, r as u128))
}

/// A hyperreal represented by one sequence of its class.
#[derive(Clone, Debug)]
pub struct HyperElem {
    rep: SeqRep,
}

/// Verdict of the total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TotalOrderResult {
    Lt,
    Eq,
    Gt,
}

impl TotalOrderResult {
    pub fn as_str(self) -> &'static str {
        match self {
            TotalOrderResult::Lt => "Lt",
            TotalOrderResult::Eq => "Eq",
            TotalOrderResult::Gt => "Gt",
        }
    }

    fn from_sign(sign: Sign) -> Self {
        match sign {
            Sign::Pos => TotalOrderResult::Lt,
            Sign::Zero => TotalOrderResult::Eq,
            Sign::Neg => TotalOrderResult::Gt,
        }
    }
}

impl HyperElem {
    pub fn new(rep: SeqRep) -> Self {
        HyperElem { rep }
    }

    pub fn rep(&self) -> &SeqRep {
        &self.rep
    }

    pub fn zero() -> Self {
        HyperElem::new(SeqRep::zero())
    }

    pub fn one() -> Self {
        HyperElem::new(SeqRep::one())
    }

    pub fn pow(&self, k: u32) -> Self {
        HyperElem::new(self.rep.pow(k))
    }
}

impl From<SeqRep> for HyperElem {
    fn from(rep: SeqRep) -> Self {
        HyperElem::new(rep)
    }
}

pub fn cmp_u(x: &HyperElem, y: &HyperElem, sel: &Selector) -> TotalOrderResult {
    let spectrum = (&y.rep - &x.rep).sign_spectrum();
    let class = sel.class_index(spectrum.modulus);
    TotalOrderResult::from_sign(spectrum.signs[class])
}

pub fn eq_u(x: &HyperElem, y: &HyperElem, sel: &Selector) -> bool {
    cmp_u(x, y, sel) == TotalOrderResult::Eq
}

/// True when every selector, hence every ultrafilter, gives the same verdict.
pub fn selector_independent(x: &HyperElem, y: &HyperElem) -> bool {
    (&y.rep - &x.rep).sign_spectrum().is_uniform()
}

/// Standard part along the selected class.
pub fn st_u(x: &HyperElem, sel: &Selector) -> Result<Rational, HyperError> {
    let leaders = x.rep.class_leaders();
    let class = sel.class_index(leaders.len());
    match &leaders[class] {
        Some(l) if l.exponent.is_negative() => Err(HyperError::InfiniteElement),
        None => Ok(Rational::zero()),
        Some(_) => Ok(x
            .rep
            .constant_part()
            .map(|c| c.at_class(class).clone())
            .unwrap_or_else(Rational::zero)),
    }
}

impl Add for &HyperElem {
    type Output = HyperElem;
    fn add(self, rhs: &HyperElem) -> HyperElem {
        HyperElem::new(&self.rep + &rhs.rep)
    }
}

impl Sub for &HyperElem {
    type Output = HyperElem;
    fn sub(self, rhs: &HyperElem) -> HyperElem {
        HyperElem::new(&self.rep - &rhs.rep)
    }
}

impl Mul for &HyperElem {
    type Output = HyperElem;
    fn mul(self, rhs: &HyperElem) -> HyperElem {
        HyperElem::new(&self.rep * &rhs.rep)
    }
}

impl Neg for &HyperElem {
    type Output = HyperElem;
    fn neg(self) -> HyperElem {
        HyperElem::new(-&self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn hy(rep: SeqRep) -> HyperElem {
        HyperElem::new(rep)
    }

    fn alt_over_n() -> SeqRep {
        SeqRep::alternating().mul_n_pow(&int(-1))
    }

    #[test]
    fn reciprocal_square_is_positive_for_any_selector() {
        for base in 0..12 {
            let sel = Selector::new(base);
            assert_eq!(
                cmp_u(&HyperElem::zero(), &hy(SeqRep::inv_n_pow(int(2))), &sel),
                TotalOrderResult::Lt
            );
        }
    }

    #[test]
    fn alternating_sign_depends_on_selector() {
        let x = hy(alt_over_n());
        assert_eq!(
            cmp_u(&HyperElem::zero(), &x, &Selector::new(1)),
            TotalOrderResult::Gt
        );
        assert_eq!(
            cmp_u(&HyperElem::zero(), &x, &Selector::new(2)),
            TotalOrderResult::Lt
        );
        assert!(!selector_independent(&HyperElem::zero(), &x));
        assert!(selector_independent(
            &HyperElem::zero(),
            &hy(SeqRep::inv_n_pow(int(2)))
        ));
        assert!(selector_independent(&x, &x));
    }

    #[test]
    fn reflexive_equality() {
        let x = hy(alt_over_n() + SeqRep::from_int(4));
        for base in 0..6 {
            assert!(eq_u(&x, &x, &Selector::new(base)));
        }
    }

    #[test]
    fn zero_divisor_factor_vanishes_on_even_selector() {
        let x = hy(SeqRep::one() - SeqRep::alternating());
        assert!(eq_u(&x, &HyperElem::zero(), &Selector::new(2)));
        assert!(!eq_u(&x, &HyperElem::zero(), &Selector::new(1)));
        assert!(!eq_u(
            &hy(SeqRep::inv_n_pow(int(2))),
            &HyperElem::zero(),
            &Selector::new(0)
        ));
    }

    #[test]
    fn standard_parts() {
        let sel = Selector::new(0);
        let x = hy(SeqRep::from_int(3) + SeqRep::inv_n_pow(int(1)));
        assert_eq!(st_u(&x, &sel), Ok(int(3)));
        let y = hy(SeqRep::one() - SeqRep::alternating());
        assert_eq!(st_u(&y, &Selector::new(1)), Ok(int(2)));
        assert_eq!(st_u(&y, &Selector::new(2)), Ok(int(0)));
        assert_eq!(
            st_u(&hy(SeqRep::n_pow(int(1))), &sel),
            Err(HyperError::InfiniteElement)
        );
    }

    #[test]
    fn growth_hidden_on_unselected_class_is_finite() {
        // (1 - (-1)^n)·n vanishes on even n
        let x = hy((SeqRep::one() - SeqRep::alternating()).mul_n_pow(&int(1)));
        assert_eq!(st_u(&x, &Selector::new(2)), Ok(int(0)));
        assert_eq!(
            st_u(&x, &Selector::new(1)),
            Err(HyperError::InfiniteElement)
        );
    }

    #[test]
    fn override_table_is_coherent() {
        let sel = Selector::with_overrides(5, [(4, 3), (6, 1)]).unwrap();
        assert_eq!(sel.residue(4), 3);
        assert_eq!(sel.residue(6), 1);
        assert_eq!(sel.residue(2), 1);
        assert_eq!(sel.residue(12), 7);
        // multiples stay coherent with the pinned residues
        let r24 = sel.residue(24);
        assert_eq!(r24 % 4, 3);
        assert_eq!(r24 % 6, 1);
        let r10 = sel.residue(10);
        assert_eq!(r10 % 2, 1);
    }

    #[test]
    fn incoherent_table_is_rejected() {
        assert!(matches!(
            Selector::with_overrides(0, [(4, 1), (6, 2)]),
            Err(SelectorError::Incoherent { .. })
        ));
        assert_eq!(
            Selector::with_overrides(0, [(0, 1)]),
            Err(SelectorError::ZeroModulus)
        );
    }

    #[test]
    fn default_is_base_zero() {
        let sel = Selector::default();
        assert_eq!(sel.residue(7), 0);
        assert_eq!(sel.class_index(7), 6);
        assert_eq!(sel.to_string(), "base 0");
    }
}
