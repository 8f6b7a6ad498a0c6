use infinitesimals::fermat::{self, FermatElem, GiordanoElem};
use infinitesimals::henle::{self, HenleElem, PartialOrderResult};
use infinitesimals::hom::{self, CanonicalMap};
use infinitesimals::hyperreal::{self, HyperElem, Selector, TotalOrderResult};
use infinitesimals::parser::Bindings;
use infinitesimals::rational::render;
use infinitesimals::{format, parse_with, SeqRep};

use crate::report::{
    Claim, Classification, Decomposition, InfinitesimalTerm, MapImage, Named, Report, System,
    Verdict, Witness,
};
use crate::{CliError, Command, MapKind, WitnessKind};

/// Selectors tried by `witness main-proposition`: bases 0..100 cover every
/// residue class of every modulus up to 100.
const WITNESS_SELECTORS: u64 = 100;

pub fn parse_expr(text: &str, bindings: &Bindings) -> Result<SeqRep, CliError> {
    parse_with(text, bindings).map_err(|error| CliError::Parse {
        input: text.to_owned(),
        error,
    })
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

fn fermat_elem(x: SeqRep) -> Result<FermatElem, CliError> {
    FermatElem::new(x).map_err(domain)
}

fn giordano_elem(x: SeqRep) -> Result<GiordanoElem, CliError> {
    GiordanoElem::new(fermat_elem(x)?).map_err(domain)
}

fn verdict(system: System, result: impl Into<String>, notes: Vec<String>) -> Verdict {
    Verdict {
        system,
        result: result.into(),
        selector_used: None,
        notes,
    }
}

fn hyper_verdict(result: impl Into<String>, sel: &Selector, notes: Vec<String>) -> Verdict {
    Verdict {
        system: System::Hyperreal,
        result: result.into(),
        selector_used: Some(sel.to_string()),
        notes,
    }
}

fn independence_note(x: &HyperElem, y: &HyperElem) -> String {
    if hyperreal::selector_independent(x, y) {
        "selector-independent".into()
    } else {
        "selector-dependent".into()
    }
}

pub fn execute(command: &Command, bindings: &Bindings) -> Result<Report, CliError> {
    match command {
        Command::Classify { expr } => {
            classify(&parse_expr(expr, bindings)?).map(Report::Classification)
        }
        Command::Cmp {
            system,
            left,
            right,
            selector,
        } => {
            let x = parse_expr(left, bindings)?;
            let y = parse_expr(right, bindings)?;
            compare(*system, x, y, &selector.build()?).map(Report::Verdict)
        }
        Command::St {
            system,
            expr,
            selector,
        } => standard_part(*system, parse_expr(expr, bindings)?, &selector.build()?)
            .map(Report::Verdict),
        Command::Decompose { expr } => {
            decompose(parse_expr(expr, bindings)?).map(Report::Decomposition)
        }
        Command::Map {
            map,
            expr,
            selector,
        } => apply_map(*map, parse_expr(expr, bindings)?, &selector.build()?).map(Report::Map),
        Command::Witness { name } => Ok(Report::Witness(witness(*name))),
        Command::Repl { .. } => Err(CliError::Usage("repl cannot be nested\n".into())),
    }
}

pub fn classify(x: &SeqRep) -> Result<Classification, CliError> {
    let h = HenleElem::new(x.clone());
    let c = henle::classify(&h);
    let f = FermatElem::new(x.clone()).ok();
    Ok(Classification {
        expr: format(x),
        zero: c.zero,
        bounded: f.is_some(),
        finite: c.finite,
        infinite: c.infinite,
        infinitesimal: c.infinitesimal,
        in_o: fermat::in_ideal_o(x),
        little_oh: f.as_ref().is_some_and(fermat::is_little_oh),
        nilpotency_index: f.as_ref().and_then(fermat::nilpotency_index),
        standard_part: henle::st_f(&h).map(|r| render(&r)),
    })
}

pub fn compare(system: System, x: SeqRep, y: SeqRep, sel: &Selector) -> Result<Verdict, CliError> {
    Ok(match system {
        System::Henle => {
            let r = henle::cmp_f(&HenleElem::new(x), &HenleElem::new(y));
            verdict(system, r.as_str(), vec![])
        }
        System::Hyperreal => {
            let (x, y) = (HyperElem::new(x), HyperElem::new(y));
            let r = hyperreal::cmp_u(&x, &y, sel);
            hyper_verdict(r.as_str(), sel, vec![independence_note(&x, &y)])
        }
        System::Fermat => {
            let r = fermat::cmp_o(&fermat_elem(x)?, &fermat_elem(y)?);
            verdict(system, r.as_str(), vec![])
        }
        System::Giordano => {
            let r = giordano_elem(x)?.total_cmp(&giordano_elem(y)?);
            let name = match r {
                std::cmp::Ordering::Less => PartialOrderResult::Less,
                std::cmp::Ordering::Equal => PartialOrderResult::Equal,
                std::cmp::Ordering::Greater => PartialOrderResult::Greater,
            };
            verdict(system, name.as_str(), vec![])
        }
    })
}

pub fn standard_part(system: System, x: SeqRep, sel: &Selector) -> Result<Verdict, CliError> {
    Ok(match system {
        System::Henle => {
            let h = HenleElem::new(x);
            if henle::classify(&h).infinite {
                return Err(domain(
                    "InfiniteElement: element is not finite in Henle's ring",
                ));
            }
            let r = henle::st_f(&h).ok_or_else(|| {
                domain("no standard part: the element is finite but not infinitely close to a rational")
            })?;
            verdict(system, render(&r), vec![])
        }
        System::Hyperreal => {
            let u = HyperElem::new(x);
            let r =
                hyperreal::st_u(&u, sel).map_err(|e| domain(format!("InfiniteElement: {e}")))?;
            // every ultrafilter agrees exactly when u - r is infinitesimal on every class
            let rest = HenleElem::new(u.rep() - &SeqRep::constant(r.clone()));
            let note = if henle::classify(&rest).infinitesimal {
                "selector-independent"
            } else {
                "selector-dependent"
            };
            let notes = vec![note.to_owned()];
            hyper_verdict(render(&r), sel, notes)
        }
        System::Fermat => {
            let f = fermat_elem(x)?;
            let r = fermat::st_o(&f).ok_or_else(|| {
                domain("no standard part in fR: the n^0 coefficient is not constant")
            })?;
            verdict(system, render(&r), vec![])
        }
        System::Giordano => verdict(system, render(&giordano_elem(x)?.standard_part()), vec![]),
    })
}

pub fn decompose(x: SeqRep) -> Result<Decomposition, CliError> {
    let expr = format(&x);
    let d = fermat::decompose(&fermat_elem(x)?).map_err(domain)?;
    Ok(Decomposition {
        expr,
        standard_part: render(&d.standard_part),
        infinitesimal_terms: d
            .infinitesimal_terms
            .iter()
            .map(|(c, a)| InfinitesimalTerm {
                coeff: render(c),
                exponent: render(a),
            })
            .collect(),
        discarded: format(&d.discarded),
    })
}

fn sign_note(order_vs_zero: &str) -> String {
    match order_vs_zero {
        "Less" | "Lt" => "image is positive".into(),
        "Greater" | "Gt" => "image is negative".into(),
        "Equal" | "Eq" => "image is zero".into(),
        _ => "image is incomparable with 0".into(),
    }
}

pub fn apply_map(map: MapKind, x: SeqRep, sel: &Selector) -> Result<MapImage, CliError> {
    let input = format(&x);
    let h = HenleElem::new(x);
    match map {
        MapKind::I => {
            let image = hom::map_i(&h).map_err(|e| domain(format!("InfiniteElement: {e}")))?;
            let zero = FermatElem::zero();
            let order = fermat::cmp_o(&zero, &image);
            let result = if fermat::eq_o(&image, &zero) {
                "zero"
            } else {
                "nonzero"
            };
            Ok(MapImage {
                map: "i",
                input,
                image: format(image.rep()),
                verdict: verdict(System::Fermat, result, vec![sign_note(order.as_str())]),
            })
        }
        MapKind::J => {
            let image = hom::map_j(&h);
            let zero = HyperElem::zero();
            let order = hyperreal::cmp_u(&zero, &image, sel);
            let result = if order == TotalOrderResult::Eq {
                "zero"
            } else {
                "nonzero"
            };
            let notes = vec![sign_note(order.as_str()), independence_note(&zero, &image)];
            Ok(MapImage {
                map: "j",
                input,
                image: format(image.rep()),
                verdict: hyper_verdict(result, sel, notes),
            })
        }
    }
}

fn claim(claim: impl Into<String>, holds: bool) -> Claim {
    Claim {
        claim: claim.into(),
        holds,
    }
}

fn named(name: &str, x: &SeqRep) -> Named {
    Named {
        name: name.into(),
        value: format(x),
    }
}

/// Builds a witness report; every claim is decided by the library at call time.
pub fn witness(kind: WitnessKind) -> Witness {
    let (name, elements, claims) = match kind {
        WitnessKind::ZeroDivisors => {
            let (a, b) = henle::zero_divisor_witness();
            let zero = HenleElem::zero();
            let product = &a * &b;
            let claims = vec![
                claim("a ≠ 0 in Henle's ring", !henle::eq_f(&a, &zero)),
                claim("b ≠ 0 in Henle's ring", !henle::eq_f(&b, &zero)),
                claim("a·b = 0 in Henle's ring", henle::eq_f(&product, &zero)),
            ];
            let elements = vec![
                named("a", a.rep()),
                named("b", b.rep()),
                named("a·b", product.rep()),
            ];
            ("zero-divisors", elements, claims)
        }
        WitnessKind::ReverseMap => {
            let (a, b) = hom::reverse_map_witness();
            let pairs = [(a.rep().clone(), b.rep().clone())];
            let report =
                hom::check_hom(CanonicalMap::ReverseIdentity, &pairs, &Selector::default())
                    .expect("both witnesses are bounded");
            let claims = vec![
                claim("a = b in fR", fermat::eq_o(&a, &b)),
                claim(
                    "a ≠ b in Henle's ring",
                    !henle::eq_f(
                        &HenleElem::new(a.rep().clone()),
                        &HenleElem::new(b.rep().clone()),
                    ),
                ),
                claim("[x]_o ↦ [x]_F is not well defined", !report.well_defined_ok),
            ];
            (
                "reverse-map",
                vec![named("a", a.rep()), named("b", b.rep())],
                claims,
            )
        }
        WitnessKind::MainProposition => {
            let r = hom::main_witness();
            let selectors: Vec<_> = (0..WITNESS_SELECTORS).map(Selector::new).collect();
            let check = hom::check_main_proposition(&r, &selectors);
            let claims = vec![
                claim("r ≠ 0 in Henle's ring", check.r_nonzero),
                claim("r is finite", check.r_finite),
                claim("i(r) = 0 in fR", check.i_is_zero),
                claim(
                    format!(
                        "j(r) ≠ 0 in *R under each of {} selectors",
                        check.selectors_tried
                    ),
                    check.j_nonzero_for_all,
                ),
                claim(
                    "j(r) ≠ 0 is selector-independent",
                    check.j_selector_independent,
                ),
            ];
            ("main-proposition", vec![named("r", &check.r)], claims)
        }
    };
    let holds = claims.iter().all(|c| c.holds);
    Witness {
        witness: name,
        elements,
        claims,
        holds,
    }
}
