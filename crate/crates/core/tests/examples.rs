mod common;

use pspan::cardinality::{matrix_of_span, vector_of_state};
use pspan::document::Document;
use pspan::rational;
use pspan::Sign;

use common::fixture;

fn load(name: &str) -> Document {
    Document::load(fixture(name)).unwrap()
}

#[test]
fn basic_scalars() {
    let doc = load("basic_scalars.json");
    let card = |name: &str| doc.span(name).unwrap().to_scalar().unwrap().cardinality();
    assert_eq!(card("one"), rational::one());
    assert_eq!(card("minus_one"), -rational::one());
    assert_eq!(card("zero"), rational::zero());
    let negated = doc.span("one").unwrap().negative().to_scalar().unwrap();
    assert_eq!(negated.fingerprint(), doc.span("minus_one").unwrap().to_scalar().unwrap().fingerprint());
    let product = doc.span("minus_one").unwrap().compose(doc.span("minus_one").unwrap()).unwrap();
    assert_eq!(product.to_scalar().unwrap().cardinality(), rational::one());
}

#[test]
fn right_multiplication_swaps_signs() {
    let doc = load("not_a_scalar_action.json");
    let sp = doc.span("scalar").unwrap();
    let action = &doc.action("right_multiplication").unwrap();
    assert!(action.validate().is_valid());
    let g = sp.apex();
    let t = action.group.names().iter().position(|n| n == "t").unwrap();
    let moved: Vec<bool> = (0..g.object_count()).map(|x| sp.rho(action.act_object(x, t)) != sp.rho(x)).collect();
    assert_eq!(moved, vec![true, true]);
    assert!((0..g.object_count()).all(|x| action.theta(t, x) == Sign::Minus));
    let quotient = action.weak_quotient().unwrap();
    assert_eq!(quotient.pi0().len(), 1);
    assert_eq!(quotient.enumerate_orientations().unwrap().count.to_string(), "2");
    assert_eq!(quotient.homotopy_cardinality(), rational::one());
    assert_eq!(sp.to_scalar().unwrap().cardinality(), rational::zero());
}

#[test]
fn odd_element_cannot_act_on_the_point_state() {
    let doc = load("non_action2.json");
    let sp = doc.span("state").unwrap();
    assert!(sp.validate().is_valid());
    let bg = sp.right();
    let star = sp.right_map().objects[0];
    let odd: Vec<usize> = bg.automorphisms(star).filter(|&f| bg.parity(f) == Sign::Minus).collect();
    assert_eq!(odd.len(), 1);
    assert_ne!(sp.rho(0) * bg.parity(odd[0]), sp.rho(0));
    assert!(bg.enumerate_orientations().is_none());
    assert!(vector_of_state(sp).unwrap().basis.is_empty());
}

#[test]
fn false_actions_compose_to_a_true_one() {
    let doc = load("false_plus_false.json");
    let scalar = doc.span("scalar").unwrap();
    let state = doc.span("state").unwrap();
    let composite = doc.span("composite").unwrap();
    let composed = scalar.compose(state).unwrap();
    assert_eq!(matrix_of_span(&composed), matrix_of_span(composite));
    assert_eq!(
        composed.two_sided_fiber(0, 0).scalar.fingerprint(),
        composite.two_sided_fiber(0, 0).scalar.fingerprint()
    );

    let g = composite.apex();
    let bg = composite.right();
    let star = composite.right_map().objects[0];
    let elements: Vec<usize> = bg.automorphisms(star).collect();
    assert_eq!(elements.len(), 2);
    for &h in &elements {
        let moved_by = |x: usize| {
            let name = g.object_id(x);
            let swapped = if bg.parity(h) == Sign::Minus { if name == "e" { "t" } else { "e" } } else { name };
            g.object(swapped).unwrap()
        };
        for x in 0..g.object_count() {
            assert_eq!(composite.rho(moved_by(x)), composite.rho(x) * bg.parity(h));
        }
    }
}
