use infinitesimals::fermat::{self, FermatElem};
use infinitesimals::henle::{self, HenleElem, PartialOrderResult};
use infinitesimals::hom::{self, CanonicalMap, HomError, Law};
use infinitesimals::hyperreal::{self, HyperElem, Selector, TotalOrderResult};
use infinitesimals::rational::int;
use infinitesimals::testing::{arb_bounded, arb_little_oh, arb_selector, arb_seqrep, Gen, Shape};
use infinitesimals::{parse, SeqRep};
use proptest::prelude::*;

fn h(x: &SeqRep) -> HenleElem {
    HenleElem::new(x.clone())
}

/// Selectors that between them visit every residue class mod 12.
fn covering_selectors() -> Vec<Selector> {
    (0..12).map(Selector::new).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn maps_are_constant_on_cosets(x in arb_bounded(), seed in any::<u64>(), sel in arb_selector()) {
        let d = Gen::new(seed).eventually_zero();
        prop_assert!(d.is_eventually_zero());
        let (x, shifted) = (h(&x), h(&(&x + &d)));
        prop_assert!(fermat::eq_o(&hom::map_i(&x).unwrap(), &hom::map_i(&shifted).unwrap()));
        prop_assert!(hyperreal::eq_u(&hom::map_j(&x), &hom::map_j(&shifted), &sel));
    }

    /// `o` is strictly larger than the eventually-zero sequences, and `j`
    /// sees the difference under some selector.
    #[test]
    fn j_separates_o_cosets(x in arb_seqrep(), seed in any::<u64>()) {
        let d = Gen::new(seed).in_o();
        prop_assume!(!d.is_eventually_zero());
        let shifted = h(&(&x + &d));
        let x = h(&x);
        let differs = covering_selectors()
            .iter()
            .any(|sel| !hyperreal::eq_u(&hom::map_j(&x), &hom::map_j(&shifted), sel));
        prop_assert!(differs);
        if henle::classify(&x).finite {
            prop_assert!(fermat::eq_o(&hom::map_i(&x).unwrap(), &hom::map_i(&shifted).unwrap()));
        }
    }

    /// Every nilpotent of fR is infinitesimal, and the constructed maps back
    /// into the reduced rings cannot send it anywhere but zero.
    #[test]
    fn nilpotents_have_zero_images(x in arb_bounded(), sel in arb_selector()) {
        let x = FermatElem::new(x).unwrap();
        let Some(k) = fermat::nilpotency_index(&x) else {
            return Ok(());
        };
        prop_assert!(fermat::eq_o(&x.pow(k), &FermatElem::zero()));
        if let Some(st) = fermat::st_o(&x) {
            prop_assert_eq!(st, int(0));
        }
        // A homomorphism φ out of fR has φ(x)^k = φ(x^k) = 0. Both targets
        // are reduced, so a vanishing k-th power forces the base to vanish.
        let image_h = h(x.rep()).pow(k);
        let image_u = HyperElem::new(x.rep().clone()).pow(k);
        if henle::eq_f(&image_h, &HenleElem::zero()) {
            prop_assert!(henle::eq_f(&h(x.rep()), &HenleElem::zero()));
        }
        if hyperreal::eq_u(&image_u, &HyperElem::zero(), &sel) {
            prop_assert!(hyperreal::eq_u(&HyperElem::new(x.rep().clone()), &HyperElem::zero(), &sel));
        }
    }

    #[test]
    fn maps_preserve_order(x in arb_bounded(), y in arb_bounded(), sel in arb_selector()) {
        let (hx, hy) = (h(&x), h(&y));
        let verdict = henle::cmp_f(&hx, &hy);
        if verdict.is_le() {
            let ix = hom::map_i(&hx).unwrap();
            let iy = hom::map_i(&hy).unwrap();
            prop_assert!(fermat::cmp_o(&ix, &iy).is_le());
            prop_assert_ne!(
                hyperreal::cmp_u(&hom::map_j(&hx), &hom::map_j(&hy), &sel),
                TotalOrderResult::Gt
            );
        }
    }

    #[test]
    fn standard_part_on_little_oh_is_a_homomorphism(
        pairs in prop::collection::vec((arb_little_oh(), arb_little_oh()), 1..16)
    ) {
        let report = hom::check_hom(CanonicalMap::StO, &pairs, &Selector::default()).unwrap();
        prop_assert!(report.all_ok(), "{:?}", report);
        prop_assert!(report.counterexample.is_none());
    }

    #[test]
    fn standard_part_on_near_standard_henle_elements(
        pairs in prop::collection::vec((arb_near_standard(), arb_near_standard()), 1..16)
    ) {
        let report = hom::check_hom(CanonicalMap::StF, &pairs, &Selector::default()).unwrap();
        prop_assert!(report.all_ok(), "{:?}", report);
    }
}

/// A constant plus terms with positive exponent.
fn arb_near_standard() -> impl Strategy<Value = SeqRep> {
    (-5i64..=5, arb_bounded()).prop_map(|(c, x)| {
        let rest = &x
            - &x.constant_part().map_or_else(SeqRep::zero, |p| {
                infinitesimals::seqrep::normalize(vec![infinitesimals::seqrep::Term::new(
                    p.clone(),
                    int(0),
                )])
            });
        &rest + &SeqRep::from_int(c)
    })
}

#[test]
fn main_proposition_regression() {
    let r = hom::main_witness();
    assert_eq!(r.rep(), &parse("1/n^2").unwrap());
    let mut g = Gen::new(2024);
    let selectors: Vec<_> = (0..100).map(|_| g.selector()).collect();
    let check = hom::check_main_proposition(&r, &selectors);
    assert!(check.holds(), "{check:?}");
    assert_eq!(check.selectors_tried, 100);
}

#[test]
fn zero_is_killed_by_both_maps() {
    let r = HenleElem::zero();
    let check = hom::check_main_proposition(&r, &covering_selectors());
    assert!(!check.r_nonzero);
    assert!(check.i_is_zero);
    assert!(!check.j_nonzero_for_all);
    assert!(!check.holds());
}

#[test]
fn reverse_identity_is_not_well_defined() {
    let (a, b) = hom::reverse_map_witness();
    let pairs = vec![(a.rep().clone(), b.rep().clone())];
    let report =
        hom::check_hom(CanonicalMap::ReverseIdentity, &pairs, &Selector::default()).unwrap();
    assert!(!report.well_defined_ok);
    assert!(!report.all_ok());
    let cex = report
        .counterexample
        .expect("counterexample accompanies a failed flag");
    assert_eq!(cex.law, Law::WellDefined);
}

#[test]
fn i_rejects_infinite_elements() {
    let n = h(&parse("n").unwrap());
    assert_eq!(hom::map_i(&n).unwrap_err(), HomError::InfiniteElement);
    let pairs = vec![(parse("n").unwrap(), SeqRep::one())];
    assert!(matches!(
        hom::check_hom(CanonicalMap::I, &pairs, &Selector::default()),
        Err(HomError::DomainViolation { index: 0, .. })
    ));
}

#[test]
fn order_preservation_is_only_non_strict_under_i() {
    let zero = HenleElem::zero();
    let r = hom::main_witness();
    assert_eq!(henle::cmp_f(&zero, &r), PartialOrderResult::Less);
    let verdict = fermat::cmp_o(&hom::map_i(&zero).unwrap(), &hom::map_i(&r).unwrap());
    assert_eq!(verdict, PartialOrderResult::Equal);
}

#[test]
fn j_laws_hold_on_unbounded_samples() {
    let mut g = Gen::new(77);
    let pairs: Vec<_> = (0..200)
        .map(|_| (g.seqrep(Shape::Any), g.seqrep(Shape::Any)))
        .collect();
    for _ in 0..5 {
        let sel = g.selector();
        let report = hom::check_hom(CanonicalMap::J, &pairs, &sel).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }
}

proptest! {
    /// On the carrier, every element of fR and of the hyperreals is the
    /// image of its own representative.
    #[test]
    fn maps_are_onto_carrier_images(x in arb_bounded(), y in arb_seqrep(), sel in arb_selector()) {
        let fx = FermatElem::new(x.clone()).unwrap();
        prop_assert!(fermat::eq_o(&hom::map_i(&h(&x)).unwrap(), &fx));
        prop_assert!(hyperreal::eq_u(&hom::map_j(&h(&y)), &HyperElem::new(y.clone()), &sel));
    }
}
