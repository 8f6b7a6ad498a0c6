//! The canonical maps out of Henle's ring and the harness that checks them.
//!
//! `i` sends the class of a bounded sequence modulo the Fréchet filter to
//! its class modulo `o`; `j` sends it to its class modulo an ultrafilter.
//! Both are well defined because the ideal of eventually vanishing sequences
//! is contained in `o`, and because every ultrafilter here extends the
//! Fréchet filter. Neither argument runs backwards: [`reverse_map_witness`]
//! is a pair that is equal modulo `o` but different modulo Fréchet.
//!
//! The sequence `1/n²` ([`main_witness`]) is the point of the module: it is
//! killed by `i` and survives `j` under every selector.

use std::fmt;

use thiserror::Error;

use crate::fermat::{self, FermatElem};
use crate::henle::{self, HenleElem, PartialOrderResult};
use crate::hyperreal::{self, HyperElem, Selector, TotalOrderResult};
use crate::rational::{self, Rational};
use crate::seqrep::SeqRep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("element is not finite; the map is only defined on finite elements")]
    InfiniteElement,
    #[error("sample {index} violates the domain of {map}: {reason}")]
    DomainViolation {
        index: usize,
        map: CanonicalMap,
        reason: String,
    },
}

/// `i : ℕℝ_F → fR`, the identity on representatives.
pub fn map_i(x: &HenleElem) -> Result<FermatElem, HomError> {
    FermatElem::new(x.rep().clone()).map_err(|_| HomError::InfiniteElement)
}

/// `j : ℕℝ → *ℝ`, the identity on representatives.
pub fn map_j(x: &HenleElem) -> HyperElem {
    HyperElem::new(x.rep().clone())
}

/// The maps [`check_hom`] can exercise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalMap {
    /// `i : ℕℝ_F → fR`.
    I,
    /// `j : ℕℝ → *ℝ`.
    J,
    /// Standard part on the near-standard elements of Henle's ring.
    StF,
    /// Standard part on the elements of `fR` that have one.
    StO,
    /// `[x]_o ↦ [x]_Fréchet`, which is not well defined.
    ReverseIdentity,
}

impl fmt::Display for CanonicalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalMap::I => "i",
            CanonicalMap::J => "j",
            CanonicalMap::StF => "st_F",
            CanonicalMap::StO => "st_o",
            CanonicalMap::ReverseIdentity => "reverse identity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    WellDefined,
    Additivity,
    Multiplicativity,
    Unit,
    OrderPreservation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub inputs: (SeqRep, SeqRep),
    /// Rendered images that violate the law, left side first.
    pub outputs: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub well_defined_ok: bool,
    pub additivity_ok: bool,
    pub multiplicativity_ok: bool,
    pub unit_ok: bool,
    pub order_preserved_ok: bool,
    /// First failure, present iff some flag is false.
    pub counterexample: Option<Counterexample>,
}

impl HomReport {
    pub fn all_ok(&self) -> bool {
        self.well_defined_ok
            && self.additivity_ok
            && self.multiplicativity_ok
            && self.unit_ok
            && self.order_preserved_ok
    }

    fn fail(&mut self, law: Law, inputs: (&SeqRep, &SeqRep), outputs: (&Image, &Image)) {
        let flag = match law {
            Law::WellDefined => &mut self.well_defined_ok,
            Law::Additivity => &mut self.additivity_ok,
            Law::Multiplicativity => &mut self.multiplicativity_ok,
            Law::Unit => &mut self.unit_ok,
            Law::OrderPreservation => &mut self.order_preserved_ok,
        };
        *flag = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                law,
                inputs: (inputs.0.clone(), inputs.1.clone()),
                outputs: (outputs.0.to_string(), outputs.1.to_string()),
            });
        }
    }
}

/// A value in one of the codomains.
#[derive(Clone, Debug)]
enum Image {
    Fermat(FermatElem),
    Hyper(HyperElem),
    Henle(HenleElem),
    Real(Rational),
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Fermat(x) => write!(f, "[{}]_o", x.rep()),
            Image::Hyper(x) => write!(f, "[{}]_U", x.rep()),
            Image::Henle(x) => write!(f, "[{}]_F", x.rep()),
            Image::Real(r) => f.write_str(&rational::render(r)),
        }
    }
}

impl Image {
    fn add(&self, other: &Image) -> Image {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    fn mul(&self, other: &Image) -> Image {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }

    fn combine(
        &self,
        other: &Image,
        seq: impl Fn(&SeqRep, &SeqRep) -> SeqRep,
        real: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Image {
        match (self, other) {
            (Image::Fermat(a), Image::Fermat(b)) => Image::Fermat(
                FermatElem::new(seq(a.rep(), b.rep())).expect("bounded sequences form a ring"),
            ),
            (Image::Hyper(a), Image::Hyper(b)) => {
                Image::Hyper(HyperElem::new(seq(a.rep(), b.rep())))
            }
            (Image::Henle(a), Image::Henle(b)) => {
                Image::Henle(HenleElem::new(seq(a.rep(), b.rep())))
            }
            (Image::Real(a), Image::Real(b)) => Image::Real(real(a, b)),
            _ => unreachable!("images of one map share a codomain"),
        }
    }

    fn equals(&self, other: &Image, sel: &Selector) -> bool {
        match (self, other) {
            (Image::Fermat(a), Image::Fermat(b)) => fermat::eq_o(a, b),
            (Image::Hyper(a), Image::Hyper(b)) => hyperreal::eq_u(a, b, sel),
            (Image::Henle(a), Image::Henle(b)) => henle::eq_f(a, b),
            (Image::Real(a), Image::Real(b)) => a == b,
            _ => unreachable!("images of one map share a codomain"),
        }
    }

    fn le(&self, other: &Image, sel: &Selector) -> bool {
        match (self, other) {
            (Image::Fermat(a), Image::Fermat(b)) => fermat::cmp_o(a, b).is_le(),
            (Image::Hyper(a), Image::Hyper(b)) => {
                hyperreal::cmp_u(a, b, sel) != TotalOrderResult::Gt
            }
            (Image::Henle(a), Image::Henle(b)) => henle::cmp_f(a, b).is_le(),
            (Image::Real(a), Image::Real(b)) => a <= b,
            _ => unreachable!("images of one map share a codomain"),
        }
    }
}

impl CanonicalMap {
    /// Applies the map, or explains why `x` is outside its domain.
    fn apply(self, x: &SeqRep) -> Result<Image, String> {
        match self {
            CanonicalMap::I => map_i(&HenleElem::new(x.clone()))
                .map(Image::Fermat)
                .map_err(|e| e.to_string()),
            CanonicalMap::J => Ok(Image::Hyper(map_j(&HenleElem::new(x.clone())))),
            CanonicalMap::StF => henle::st_f(&HenleElem::new(x.clone()))
                .map(Image::Real)
                .ok_or_else(|| "element has no standard part in Henle's ring".to_owned()),
            CanonicalMap::StO => {
                let f = FermatElem::new(x.clone()).map_err(|e| e.to_string())?;
                fermat::st_o(&f)
                    .map(Image::Real)
                    .ok_or_else(|| "element has no standard part in fR".to_owned())
            }
            CanonicalMap::ReverseIdentity => FermatElem::new(x.clone())
                .map(|_| Image::Henle(HenleElem::new(x.clone())))
                .map_err(|e| e.to_string()),
        }
    }

    fn domain_eq(self, x: &SeqRep, y: &SeqRep) -> bool {
        match self {
            CanonicalMap::I | CanonicalMap::J | CanonicalMap::StF => (x - y).is_eventually_zero(),
            CanonicalMap::StO | CanonicalMap::ReverseIdentity => fermat::in_ideal_o(&(x - y)),
        }
    }

    fn domain_cmp(self, x: &SeqRep, y: &SeqRep) -> PartialOrderResult {
        match self {
            CanonicalMap::I | CanonicalMap::J | CanonicalMap::StF => {
                henle::cmp_f(&HenleElem::new(x.clone()), &HenleElem::new(y.clone()))
            }
            CanonicalMap::StO | CanonicalMap::ReverseIdentity => fermat::cmp_o(
                &FermatElem::new(x.clone()).expect("domain checked"),
                &FermatElem::new(y.clone()).expect("domain checked"),
            ),
        }
    }
}

/// Checks the ring-homomorphism laws and order preservation of `map` on
/// every sample pair, under the codomain's notion of equality.
pub fn check_hom(
    map: CanonicalMap,
    samples: &[(SeqRep, SeqRep)],
    sel: &Selector,
) -> Result<HomReport, HomError> {
    let violation = |index: usize, reason: String| HomError::DomainViolation { index, map, reason };
    let mut report = HomReport {
        well_defined_ok: true,
        additivity_ok: true,
        multiplicativity_ok: true,
        unit_ok: true,
        order_preserved_ok: true,
        counterexample: None,
    };

    let one = SeqRep::one();
    let image_one = map.apply(&one).map_err(|r| violation(0, r))?;
    let expected_one = match &image_one {
        Image::Real(_) => Image::Real(rational::int(1)),
        Image::Fermat(_) => Image::Fermat(FermatElem::one()),
        Image::Hyper(_) => Image::Hyper(HyperElem::one()),
        Image::Henle(_) => Image::Henle(HenleElem::one()),
    };
    if !image_one.equals(&expected_one, sel) {
        report.fail(Law::Unit, (&one, &one), (&image_one, &expected_one));
    }

    for (index, (x, y)) in samples.iter().enumerate() {
        let fx = map.apply(x).map_err(|r| violation(index, r))?;
        let fy = map.apply(y).map_err(|r| violation(index, r))?;
        let sum = x + y;
        let product = x * y;
        let f_sum = map.apply(&sum).map_err(|r| violation(index, r))?;
        let f_product = map.apply(&product).map_err(|r| violation(index, r))?;

        if map.domain_eq(x, y) && !fx.equals(&fy, sel) {
            report.fail(Law::WellDefined, (x, y), (&fx, &fy));
        }
        let image_sum = fx.add(&fy);
        if !f_sum.equals(&image_sum, sel) {
            report.fail(Law::Additivity, (x, y), (&f_sum, &image_sum));
        }
        let image_product = fx.mul(&fy);
        if !f_product.equals(&image_product, sel) {
            report.fail(Law::Multiplicativity, (x, y), (&f_product, &image_product));
        }
        let order = map.domain_cmp(x, y);
        if order.is_le() && !fx.le(&fy, sel) {
            report.fail(Law::OrderPreservation, (x, y), (&fx, &fy));
        }
        if order.reverse().is_le() && !fy.le(&fx, sel) {
            report.fail(Law::OrderPreservation, (y, x), (&fy, &fx));
        }
    }
    Ok(report)
}

/// `1/n` and `1/n + 1/n²`: equal in `fR`, different in Henle's ring, so
/// `[x]_o ↦ [x]_Fréchet` does not define a map.
pub fn reverse_map_witness() -> (FermatElem, FermatElem) {
    let recip = SeqRep::inv_n_pow(rational::int(1));
    let perturbed = &recip + &SeqRep::inv_n_pow(rational::int(2));
    (
        FermatElem::new(recip).expect("bounded"),
        FermatElem::new(perturbed).expect("bounded"),
    )
}

/// `1/n²`, a nonzero finite element of Henle's ring with `i(r) = 0`.
pub fn main_witness() -> HenleElem {
    HenleElem::new(SeqRep::inv_n_pow(rational::int(2)))
}

/// Machine-checked claims about an element `r` of Henle's ring and its two
/// canonical images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainPropositionCheck {
    pub r: SeqRep,
    pub r_nonzero: bool,
    pub r_finite: bool,
    pub i_is_zero: bool,
    /// `j(r) ≠ 0` under each selector tried.
    pub j_nonzero_for_all: bool,
    pub selectors_tried: usize,
    pub j_selector_independent: bool,
}

impl MainPropositionCheck {
    pub fn holds(&self) -> bool {
        self.r_nonzero
            && self.r_finite
            && self.i_is_zero
            && self.j_nonzero_for_all
            && self.j_selector_independent
    }
}

/// Evaluates the main-proposition claims for `r` against `selectors`.
pub fn check_main_proposition(r: &HenleElem, selectors: &[Selector]) -> MainPropositionCheck {
    let r_finite = henle::classify(r).finite;
    let i_is_zero = map_i(r)
        .map(|image| fermat::eq_o(&image, &FermatElem::zero()))
        .unwrap_or(false);
    let image = map_j(r);
    let zero = HyperElem::zero();
    MainPropositionCheck {
        r: r.rep().clone(),
        r_nonzero: !r.is_zero(),
        r_finite,
        i_is_zero,
        j_nonzero_for_all: selectors
            .iter()
            .all(|sel| !hyperreal::eq_u(&image, &zero, sel)),
        selectors_tried: selectors.len(),
        j_selector_independent: hyperreal::selector_independent(&zero, &image),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn recip(a: i64) -> SeqRep {
        SeqRep::inv_n_pow(int(a))
    }

    #[test]
    fn i_kills_reciprocal_square() {
        let image = map_i(&main_witness()).unwrap();
        assert!(fermat::eq_o(&image, &FermatElem::zero()));
    }

    #[test]
    fn i_fixes_rationals() {
        let image = map_i(&HenleElem::new(SeqRep::from_int(3))).unwrap();
        assert!(fermat::eq_o(
            &image,
            &FermatElem::new(SeqRep::from_int(3)).unwrap()
        ));
    }

    #[test]
    fn i_rejects_infinite() {
        assert_eq!(
            map_i(&HenleElem::new(SeqRep::n_pow(int(1)))).unwrap_err(),
            HomError::InfiniteElement
        );
    }

    #[test]
    fn j_examples() {
        let zero = HyperElem::zero();
        let image = map_j(&main_witness());
        for base in 0..10 {
            assert!(!hyperreal::eq_u(&image, &zero, &Selector::new(base)));
        }
        assert!(hyperreal::eq_u(
            &map_j(&HenleElem::zero()),
            &zero,
            &Selector::new(3)
        ));
        let osc = map_j(&HenleElem::new(SeqRep::one() - SeqRep::alternating()));
        assert!(hyperreal::eq_u(&osc, &zero, &Selector::new(2)));
        let two = HyperElem::new(SeqRep::from_int(2));
        assert!(hyperreal::eq_u(&osc, &two, &Selector::new(1)));
    }

    #[test]
    fn reverse_witness() {
        let (a, b) = reverse_map_witness();
        assert!(fermat::eq_o(&a, &b));
        assert!(!henle::eq_f(
            &HenleElem::new(a.rep().clone()),
            &HenleElem::new(b.rep().clone())
        ));
        assert_eq!(fermat::st_o(&a), Some(int(0)));
        assert_eq!(fermat::st_o(&b), Some(int(0)));
    }

    #[test]
    fn reverse_identity_fails_the_harness() {
        let (a, b) = reverse_map_witness();
        let samples = vec![(a.rep().clone(), b.rep().clone())];
        let report = check_hom(
            CanonicalMap::ReverseIdentity,
            &samples,
            &Selector::default(),
        )
        .unwrap();
        assert!(!report.well_defined_ok);
        assert!(!report.all_ok());
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.law, Law::WellDefined);
        assert_eq!(cx.inputs.0, recip(1));
    }

    #[test]
    fn harness_passes_for_i_and_j_on_named_elements() {
        let alt = SeqRep::alternating();
        let samples = vec![
            (recip(1), recip(2)),
            (SeqRep::one() - &alt, SeqRep::one() + &alt),
            (SeqRep::from_int(3), recip(1) + SeqRep::from_int(2)),
        ];
        for map in [CanonicalMap::I, CanonicalMap::J] {
            let report = check_hom(map, &samples, &Selector::new(1)).unwrap();
            assert!(report.all_ok(), "{map}: {report:?}");
            assert!(report.counterexample.is_none());
        }
    }

    #[test]
    fn standard_part_maps_are_homomorphisms() {
        let samples = vec![
            (
                SeqRep::from_int(3) + recip(1),
                SeqRep::from_int(-2) + recip(2),
            ),
            (recip(1), SeqRep::alternating().mul_n_pow(&int(-1))),
        ];
        for map in [CanonicalMap::StF, CanonicalMap::StO] {
            let report = check_hom(map, &samples, &Selector::default()).unwrap();
            assert!(report.all_ok(), "{map}: {report:?}");
        }
    }

    #[test]
    fn domain_violation_names_the_sample() {
        let samples = vec![(recip(1), recip(2)), (SeqRep::n_pow(int(1)), recip(1))];
        match check_hom(CanonicalMap::I, &samples, &Selector::default()) {
            Err(HomError::DomainViolation { index, map, .. }) => {
                assert_eq!(index, 1);
                assert_eq!(map, CanonicalMap::I);
            }
            other => panic!("expected a domain violation, got {other:?}"),
        }
        let osc = vec![(SeqRep::alternating(), recip(1))];
        assert!(check_hom(CanonicalMap::StF, &osc, &Selector::default()).is_err());
    }

    #[test]
    fn main_proposition_holds() {
        let selectors: Vec<_> = (0..20).map(Selector::new).collect();
        let check = check_main_proposition(&main_witness(), &selectors);
        assert!(check.holds(), "{check:?}");
        // 1/n is not killed by i
        let weaker = check_main_proposition(&HenleElem::new(recip(1)), &selectors);
        assert!(!weaker.i_is_zero);
        assert!(!weaker.holds());
    }
}
