use num_bigint::BigUint;
use proptest::prelude::*;

use pspan::exterior::{exterior_power_components, permutation_action, ExteriorPower, DEFAULT_BUDGET};
use pspan::group::FiniteGroup;
use pspan::groupoid::{Groupoid, ParityGroupoid};
use pspan::random::Generator;
use pspan::rational::{self, Rational};
use pspan::{Permutation, Sign};

/// `Σ_x 1/|arrows out of x|`, which sums `1/|Aut|` over each component.
fn cardinality_by_objects(g: &Groupoid) -> Rational {
    (0..g.object_count()).fold(rational::zero(), |acc, x| acc + rational::frac(1, g.outgoing(x).len() as i64))
}

fn tuple_id(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_groupoids_are_valid(seed in any::<u64>()) {
        let g = Generator::new(seed).parity_groupoid("x", 3, 3, 6);
        prop_assert!(g.validate().is_valid(), "{}", g.validate());
        prop_assert_eq!(g.homotopy_cardinality(), cardinality_by_objects(&g));
    }

    #[test]
    fn orientations_exist_iff_no_odd_automorphism(seed in any::<u64>()) {
        let g = Generator::new(seed).parity_groupoid("x", 3, 3, 6);
        let odd = (0..g.morphism_count()).any(|f| g.src(f) == g.tgt(f) && g.parity(f) == Sign::Minus);
        match g.enumerate_orientations() {
            None => prop_assert!(odd),
            Some(o) => {
                prop_assert!(!odd);
                prop_assert_eq!(o.count, BigUint::from(1u32) << g.components().len());
                for f in 0..g.morphism_count() {
                    prop_assert_eq!(o.witness[g.src(f)] * g.parity(f), o.witness[g.tgt(f)]);
                }
            }
        }
    }

    #[test]
    fn sums_and_products_of_groupoids(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let (x, y) = (gen.parity_groupoid("x", 2, 2, 6), gen.parity_groupoid("y", 2, 2, 3));
        let sum = x.disjoint_sum(&y);
        let star = x.star_product(&y);
        prop_assert!(sum.validate().is_valid());
        prop_assert!(star.validate().is_valid());
        prop_assert_eq!(sum.homotopy_cardinality(), x.homotopy_cardinality() + y.homotopy_cardinality());
        prop_assert_eq!(star.homotopy_cardinality(), x.homotopy_cardinality() * y.homotopy_cardinality());
        prop_assert_eq!(star.is_orientable(), x.is_orientable() && y.is_orientable());
    }

    #[test]
    fn weak_quotients_divide_cardinality(seed in any::<u64>()) {
        let action = Generator::new(seed).action(3);
        let q = action.weak_quotient().unwrap();
        prop_assert!(q.validate().is_valid(), "{}", q.validate());
        let order = rational::int(action.group.order() as i64);
        prop_assert_eq!(q.homotopy_cardinality(), action.target.homotopy_cardinality() / order);
    }

    #[test]
    fn exterior_power_matches_weak_quotient(seed in any::<u64>(), k in 0usize..=2) {
        let x = Generator::new(seed).parity_groupoid("x", 2, 2, 3);
        let ext = ExteriorPower::build(&x, k, DEFAULT_BUDGET).unwrap();
        let q = permutation_action(&x, k, DEFAULT_BUDGET).unwrap().weak_quotient().unwrap();
        let lam = &ext.groupoid;
        prop_assert_eq!(lam.object_ids(), q.object_ids());
        prop_assert_eq!(lam.morphism_count(), q.morphism_count());
        // (σ, γ⃗) corresponds to (γ⃗, σ⁻¹)
        let image: Vec<usize> = (0..lam.morphism_count())
            .map(|f| {
                let parts: Vec<&str> = ext.power.parts(f).iter().map(|&g| x.morphism_id(g)).collect();
                let id = format!("({},{})", tuple_id(&parts), ext.power.permutation(f).inverse().cycle_word());
                q.morphism(&id).unwrap_or_else(|| panic!("no quotient arrow {id}"))
            })
            .collect();
        for f in 0..lam.morphism_count() {
            prop_assert_eq!(q.src(image[f]), lam.src(f));
            prop_assert_eq!(q.tgt(image[f]), lam.tgt(f));
            prop_assert_eq!(q.parity(image[f]), lam.parity(f));
        }
        for ((g, f), h) in lam.composition_entries() {
            prop_assert_eq!(q.comp(image[g], image[f]), image[h]);
        }
    }

    #[test]
    fn walked_components_match_explicit_power(seed in any::<u64>(), k in 0usize..=3) {
        let x = Generator::new(seed).parity_groupoid("x", 2, 2, 2);
        let walked = exterior_power_components(&x, k, DEFAULT_BUDGET).unwrap();
        let explicit = ExteriorPower::build(&x, k, DEFAULT_BUDGET).unwrap();
        let pi0 = explicit.groupoid.pi0();
        prop_assert_eq!(walked.len(), pi0.len());
        for (w, c) in walked.iter().zip(&pi0) {
            prop_assert_eq!(explicit.power.tuple_index(&w.representative), c.representative);
            prop_assert_eq!((w.size, w.aut_order, w.orientable), (c.members.len(), c.aut_order, c.orientable));
        }
    }

    #[test]
    fn alternating_arrows_have_sign_parity(seed in any::<u64>(), k in 0usize..=3) {
        let x = Generator::new(seed).parity_groupoid("x", 2, 1, 3);
        let ext = ExteriorPower::build(&x, k, DEFAULT_BUDGET).unwrap();
        for y in 0..ext.groupoid.object_count() {
            for sigma in Permutation::all(k) {
                let f = ext.alternating_arrow(&x, y, &sigma).unwrap();
                prop_assert_eq!(ext.groupoid.parity(f), sigma.sign());
            }
        }
    }
}

#[test]
fn classifying_groupoids() {
    for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        for parity in g.parity_homomorphisms() {
            let bg = ParityGroupoid::classifying(&g, &parity, "*");
            assert!(bg.validate().is_valid());
            assert_eq!(bg.homotopy_cardinality(), rational::frac(1, g.order() as i64));
            assert_eq!(bg.is_orientable(), !parity.contains(&Sign::Minus));
        }
    }
    assert_eq!(FiniteGroup::symmetric(3).parity_homomorphisms().len(), 2);
    assert_eq!(FiniteGroup::cyclic(3).parity_homomorphisms().len(), 1);
}

#[test]
fn symmetric_power_has_no_odd_permutation_arrows() {
    let x = ParityGroupoid::discrete(["a", "b", "c"]).unwrap();
    let sym = pspan::exterior::symmetric_power_groupoid(&x, 2, DEFAULT_BUDGET).unwrap();
    assert!(sym.is_orientable());
    assert_eq!(sym.pi0().len(), 6);
    let lam = pspan::exterior::exterior_power_groupoid(&x, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(lam.basepoints().len(), 3);
}

#[test]
fn budget_is_enforced() {
    let x = ParityGroupoid::discrete((0..10).map(|i| format!("x{i}"))).unwrap();
    assert!(ExteriorPower::build(&x, 6, DEFAULT_BUDGET).is_err());
    assert!(exterior_power_components(&x, 6, DEFAULT_BUDGET).is_err());
    assert!(ExteriorPower::build(&x, 2, 10).is_err());
}
