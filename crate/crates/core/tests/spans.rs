mod common;

use std::sync::Arc;

use proptest::prelude::*;

use pspan::cardinality::{
    check_functoriality, is_identity, matrix_by_components, matrix_of_span, odd_involution_pairing, vector_of_state,
};
use pspan::groupoid::ParityGroupoid;
use pspan::random::Generator;
use pspan::rational::{self, Rational};
use pspan::span::{inner_product, PSpan};
use pspan::Sign;

use common::composable_pair;

fn random_span(seed: u64) -> PSpan {
    let mut gen = Generator::new(seed);
    let s = Arc::new(gen.parity_groupoid("s", 3, 2, 6));
    let t = Arc::new(gen.parity_groupoid("t", 3, 2, 6));
    gen.span(s, t, 4, 2, 6)
}

/// Unsigned entry `Σ_m |Aut i| / |arrows out of m|` over apex objects `m`
/// lying over the components of `i` and `j`; each component `[m]` then
/// contributes `|Aut i| / |Aut m|`.
fn unsigned_by_objects(sp: &PSpan, i: usize, j: usize) -> Rational {
    let (s, t) = (sp.left(), sp.right());
    let aut_i = s.automorphisms(i).count() as i64;
    (0..sp.apex().object_count())
        .filter(|&m| s.is_isomorphic(sp.left_map().objects[m], i) && t.is_isomorphic(sp.right_map().objects[m], j))
        .fold(rational::zero(), |acc, m| acc + rational::frac(aut_i, sp.apex().outgoing(m).len() as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_spans_are_valid(seed in any::<u64>()) {
        let sp = random_span(seed);
        prop_assert!(sp.validate().is_valid(), "{}", sp.validate());
        prop_assert!(sp.transpose().validate().is_valid());
        prop_assert!(sp.negative().validate().is_valid());
    }

    #[test]
    fn fiber_and_component_matrices_agree(seed in any::<u64>()) {
        let sp = random_span(seed);
        prop_assert_eq!(matrix_of_span(&sp), matrix_by_components(&sp));
    }

    #[test]
    fn composite_matrix_is_the_product(seed in any::<u64>()) {
        let (a, b) = composable_pair(seed);
        prop_assert_eq!(check_functoriality(&a, &b).unwrap(), None);
    }

    #[test]
    fn composition_is_associative_on_matrices(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let feet: Vec<Arc<ParityGroupoid>> = (0..4).map(|i| Arc::new(gen.parity_groupoid(&format!("f{i}"), 2, 2, 3))).collect();
        let a = gen.span(feet[0].clone(), feet[1].clone(), 2, 2, 2);
        let b = gen.span(feet[1].clone(), feet[2].clone(), 2, 2, 2);
        let c = gen.span(feet[2].clone(), feet[3].clone(), 2, 2, 2);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.apex().homotopy_cardinality(), right.apex().homotopy_cardinality());
        prop_assert_eq!(matrix_of_span(&left), matrix_of_span(&right));
    }

    #[test]
    fn identity_is_a_unit(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let s = Arc::new(gen.parity_groupoid("s", 2, 2, 3));
        let t = Arc::new(gen.parity_groupoid("t", 2, 2, 3));
        let sp = gen.span(s, t, 3, 2, 3);
        let id = PSpan::identity(sp.left().clone());
        let m = matrix_of_span(&id);
        prop_assert!(is_identity(&m), "{}", m);
        let c = id.compose(&sp).unwrap();
        prop_assert!(c.validate().is_valid());
        for i in 0..sp.left().object_count() {
            for j in 0..sp.right().object_count() {
                prop_assert_eq!(c.two_sided_fiber(i, j).scalar.fingerprint(), sp.two_sided_fiber(i, j).scalar.fingerprint());
            }
        }
    }

    #[test]
    fn negative_and_transpose(seed in any::<u64>()) {
        let sp = random_span(seed);
        prop_assert_eq!(sp.negative().negative(), sp.clone());
        prop_assert_eq!(matrix_of_span(&sp.negative()), -&matrix_of_span(&sp));
        let (m, mt) = (matrix_of_span(&sp), matrix_of_span(&sp.transpose()));
        let (rows, cols) = (sp.left().basepoints(), sp.right().basepoints());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                let aut_i = rational::int(sp.left().automorphisms(i).count() as i64);
                let aut_j = rational::int(sp.right().automorphisms(j).count() as i64);
                prop_assert_eq!(&mt.entries[c][r] * aut_i, &m.entries[r][c] * aut_j);
            }
        }
    }

    #[test]
    fn odd_fibers_cancel(seed in any::<u64>()) {
        let sp = random_span(seed);
        let t = sp.right();
        for j in 0..t.object_count() {
            let odd = t.automorphisms(j).any(|g| t.parity(g) == Sign::Minus);
            for i in 0..sp.left().object_count() {
                match odd_involution_pairing(&sp, i, j) {
                    None => prop_assert!(!odd),
                    Some(pairing) => {
                        prop_assert!(pairing.is_ok(), "{:?}", pairing);
                        prop_assert_eq!(sp.two_sided_fiber(i, j).scalar.cardinality(), rational::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn even_spans_embed(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let s = Arc::new(ParityGroupoid::even(gen.parity_groupoid("s", 3, 2, 6).groupoid().clone()));
        let t = Arc::new(ParityGroupoid::even(gen.parity_groupoid("t", 3, 2, 6).groupoid().clone()));
        let raw = gen.span(s, t, 4, 2, 6);
        let plus = vec![Sign::Plus; raw.apex().object_count()];
        let sp = PSpan::new(raw.left().clone(), raw.right().clone(), raw.apex().clone(), raw.left_map().clone(), raw.right_map().clone(), plus).unwrap();
        prop_assert!(sp.validate().is_valid());
        let m = matrix_of_span(&sp);
        for (r, &i) in sp.left().basepoints().iter().enumerate() {
            for (c, &j) in sp.right().basepoints().iter().enumerate() {
                prop_assert!(m.entries[r][c] >= rational::zero());
                prop_assert_eq!(&m.entries[r][c], &unsigned_by_objects(&sp, i, j));
            }
        }
    }

    #[test]
    fn scalar_composition_is_multiplication(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let (s, t) = (gen.scalar(3, 2, 6), gen.scalar(3, 2, 6));
        let composite = PSpan::from_scalar(&s).compose(&PSpan::from_scalar(&t)).unwrap().to_scalar().unwrap();
        prop_assert_eq!(composite.fingerprint(), s.multiply(&t).fingerprint());
        prop_assert_eq!(composite.cardinality(), s.cardinality() * t.cardinality());
    }

    #[test]
    fn states_act_on_vectors(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let foot = Arc::new(gen.parity_groupoid("x", 3, 2, 6));
        let target = Arc::new(gen.parity_groupoid("y", 2, 2, 6));
        let x = gen.rng_range_object(&foot);
        let sign = gen.sign();
        let st = PSpan::elementary_state(foot.clone(), x, sign);
        let sp = gen.span(foot.clone(), target, 3, 2, 6);
        let v = vector_of_state(&st).unwrap();
        let m = matrix_of_span(&sp);
        let w = vector_of_state(&st.compose(&sp).unwrap()).unwrap();
        for c in 0..m.col_count() {
            let expected = (0..m.row_count()).fold(rational::zero(), |acc, r| acc + &v.entries[r] * &m.entries[r][c]);
            prop_assert_eq!(&w.entries[c], &expected);
        }
        let aut = foot.automorphisms(x).count() as i64;
        let expected = if foot.is_orientable_object(x) { rational::int(aut) } else { rational::zero() };
        prop_assert_eq!(inner_product(&st, &st).unwrap().cardinality(), expected);
    }
}

trait PickObject {
    fn rng_range_object(&mut self, g: &ParityGroupoid) -> usize;
}

impl PickObject for Generator {
    fn rng_range_object(&mut self, g: &ParityGroupoid) -> usize {
        use rand::Rng;
        self.rng().gen_range(0..g.object_count())
    }
}
