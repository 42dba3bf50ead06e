//! Seeded random generation of parity groupoids, spans, scalars and actions.
//!
//! Output depends only on the seed. Groups come from a small catalog:
//! the trivial group, `C2`, `C3` and `Σ3`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::GroupAction;
use crate::group::FiniteGroup;
use crate::groupoid::{Groupoid, GroupoidBuilder, ParityGroupoid};
use crate::scalar::SignedGroupoid;
use crate::sign::Sign;
use crate::span::{Functor, PSpan};

/// Shape of one connected component: `r` objects, each with vertex group `group`.
#[derive(Clone, Debug)]
pub struct ComponentSpec {
    pub group: FiniteGroup,
    pub parity: Vec<Sign>,
    pub objects: usize,
}

/// Builds a groupoid whose components are the given `K(H, r)`, with arrows
/// `y.h.x : x → y`. The parity of `y.h.x` is `τ_y · φ(h) · τ_x`.
///
/// Returns the groupoid, per component its object indices, and per arrow its
/// vertex-group element.
pub fn connected_sum(
    prefix: &str,
    components: &[ComponentSpec],
    taus: &[Sign],
) -> (ParityGroupoid, Vec<Vec<usize>>, Vec<usize>) {
    let mut b = GroupoidBuilder::new();
    let mut members = Vec::new();
    let mut next = 0;
    for c in components {
        let objs: Vec<usize> = (0..c.objects)
            .map(|_| {
                let x = b.add_object(format!("{prefix}{next}")).expect("fresh object id");
                next += 1;
                x
            })
            .collect();
        members.push(objs);
    }
    let mut parity = Vec::new();
    let mut element = Vec::new();
    for (c, spec) in components.iter().enumerate() {
        let objs = &members[c];
        let h = &spec.group;
        let mut index = vec![vec![vec![0usize; h.order()]; objs.len()]; objs.len()];
        for (i, &x) in objs.iter().enumerate() {
            for (j, &y) in objs.iter().enumerate() {
                for (g, slot) in index[i][j].iter_mut().enumerate() {
                    let id = format!("{prefix}{y}.{}.{prefix}{x}", h.name(g));
                    let f = b.add_morphism(id, x, y).expect("fresh morphism id");
                    *slot = f;
                    parity.push(taus[y] * spec.parity[g] * taus[x]);
                    element.push(g);
                }
            }
        }
        for (i, &x) in objs.iter().enumerate() {
            b.set_identity(x, index[i][i][h.identity()]).unwrap();
        }
        for i in 0..objs.len() {
            for j in 0..objs.len() {
                for g in 0..h.order() {
                    b.set_inverse(index[i][j][g], index[j][i][h.inv(g)]).unwrap();
                    for k in 0..objs.len() {
                        for g2 in 0..h.order() {
                            // (j → k, g2) ∘ (i → j, g) = (i → k, g2·g)
                            b.set_composite(index[j][k][g2], index[i][j][g], index[i][k][h.mul(g2, g)]).unwrap();
                        }
                    }
                }
            }
        }
    }
    let g = b.build().expect("K(H, r) components are groupoids");
    (ParityGroupoid::new(g, parity).expect("one parity per arrow"), members, element)
}

/// The automorphism group of `y` as a [`FiniteGroup`], with the arrow behind each element.
fn automorphism_group(g: &Groupoid, y: usize) -> (FiniteGroup, Vec<usize>) {
    let arrows: Vec<usize> = g.automorphisms(y).collect();
    let names = arrows.iter().map(|&a| g.morphism_id(a).to_string()).collect();
    let table = arrows
        .iter()
        .map(|&a| arrows.iter().map(|&b| arrows.iter().position(|&c| c == g.comp(a, b)).unwrap()).collect())
        .collect();
    (FiniteGroup::from_table(names, table).expect("automorphisms form a group"), arrows)
}

#[derive(Clone, Debug)]
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// A catalog group of order at most `max_order`, with a random parity homomorphism.
    pub fn group(&mut self, max_order: usize) -> (FiniteGroup, Vec<Sign>) {
        let catalog: Vec<FiniteGroup> = [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)]
            .into_iter()
            .filter(|g| g.order() <= max_order.max(1))
            .collect();
        let group = catalog.choose(&mut self.rng).unwrap().clone();
        let parity = group.parity_homomorphisms().choose(&mut self.rng).unwrap().clone();
        (group, parity)
    }

    /// A parity groupoid with `components` components of up to `max_objects`
    /// objects each and vertex groups of order at most `max_order`.
    pub fn parity_groupoid(&mut self, prefix: &str, components: usize, max_objects: usize, max_order: usize) -> ParityGroupoid {
        let specs: Vec<ComponentSpec> = (0..components)
            .map(|_| {
                let (group, parity) = self.group(max_order);
                ComponentSpec { group, parity, objects: self.rng.gen_range(1..=max_objects.max(1)) }
            })
            .collect();
        let total = specs.iter().map(|s| s.objects).sum();
        let taus: Vec<Sign> = (0..total).map(|_| self.sign()).collect();
        connected_sum(prefix, &specs, &taus).0
    }

    /// An orientable parity groupoid: every vertex group has even parity.
    pub fn orientable_groupoid(&mut self, prefix: &str, components: usize, max_objects: usize, max_order: usize) -> ParityGroupoid {
        let specs: Vec<ComponentSpec> = (0..components)
            .map(|_| {
                let (group, _) = self.group(max_order);
                let parity = vec![Sign::Plus; group.order()];
                ComponentSpec { group, parity, objects: self.rng.gen_range(1..=max_objects.max(1)) }
            })
            .collect();
        let total = specs.iter().map(|s| s.objects).sum();
        let taus: Vec<Sign> = (0..total).map(|_| self.sign()).collect();
        connected_sum(prefix, &specs, &taus).0
    }

    /// A random functor from the component `objs` of `source` into `target`,
    /// landing in the component of a random object `y0`. Each object gets an
    /// arrow `u_i : y0 → t_i`, and `(x_i → x_j, h) ↦ u_j ∘ ψ(h) ∘ u_i⁻¹` for a
    /// random homomorphism `ψ` into `Aut(y0)`, or the trivial one if `trivial`.
    #[allow(clippy::too_many_arguments)]
    fn component_functor(
        &mut self,
        source: &Groupoid,
        objs: &[usize],
        element: &[usize],
        h: &FiniteGroup,
        target: &Groupoid,
        trivial: bool,
        f: &mut Functor,
    ) {
        let y0 = self.rng.gen_range(0..target.object_count());
        let psi: Vec<usize> = if trivial {
            vec![target.identity(y0); h.order()]
        } else {
            let (aut, arrows) = automorphism_group(target, y0);
            let homs = h.homomorphisms_to(&aut);
            homs.choose(&mut self.rng).unwrap().iter().map(|&a| arrows[a]).collect()
        };
        let comp = target.components()[target.component_of(y0)].clone();
        let u: Vec<usize> = objs
            .iter()
            .map(|_| {
                let t = *comp.members.choose(&mut self.rng).unwrap();
                let choices: Vec<usize> = target.hom(y0, t).collect();
                *choices.choose(&mut self.rng).unwrap()
            })
            .collect();
        for (i, &x) in objs.iter().enumerate() {
            f.objects[x] = target.tgt(u[i]);
            for (j, &y) in objs.iter().enumerate() {
                for a in source.hom(x, y) {
                    f.morphisms[a] = target.comp(u[j], target.comp(psi[element[a]], target.inverse(u[i])));
                }
            }
        }
    }

    /// A span `left ← M → right` whose apex has up to `components` components
    /// of up to `max_objects` objects with vertex groups of order at most
    /// `max_order`. `ρ` is propagated along each component; components where
    /// that is impossible are remapped until it works.
    pub fn span(
        &mut self,
        left: Arc<ParityGroupoid>,
        right: Arc<ParityGroupoid>,
        components: usize,
        max_objects: usize,
        max_order: usize,
    ) -> PSpan {
        if left.object_count() == 0 || right.object_count() == 0 {
            let apex = Groupoid::empty();
            return PSpan::new(left, right, apex, Functor { objects: vec![], morphisms: vec![] }, Functor { objects: vec![], morphisms: vec![] }, vec![])
                .unwrap();
        }
        let specs: Vec<ComponentSpec> = (0..self.rng.gen_range(0..=components))
            .map(|_| {
                let (group, _) = self.group(max_order);
                let parity = vec![Sign::Plus; group.order()];
                ComponentSpec { group, parity, objects: self.rng.gen_range(1..=max_objects.max(1)) }
            })
            .collect();
        let total: usize = specs.iter().map(|s| s.objects).sum();
        let (apex_pg, members, element) = connected_sum("m", &specs, &vec![Sign::Plus; total]);
        let apex = apex_pg.groupoid().clone();
        let mut lf = Functor { objects: vec![0; total], morphisms: vec![0; apex.morphism_count()] };
        let mut rf = lf.clone();
        let mut rho = vec![Sign::Plus; total];
        for (c, objs) in members.iter().enumerate() {
            let h = &specs[c].group;
            let mut attempt = 0;
            loop {
                let trivial = attempt >= 8;
                self.component_functor(&apex, objs, &element, h, left.groupoid(), trivial, &mut lf);
                self.component_functor(&apex, objs, &element, h, right.groupoid(), trivial, &mut rf);
                if propagate_rho(&apex, objs, &left, &right, &lf, &rf, self.sign(), &mut rho) {
                    break;
                }
                attempt += 1;
            }
        }
        PSpan::new(left, right, apex, lf, rf, rho).expect("generated shapes match")
    }

    /// Endo-span on `foot`.
    pub fn endo_span(&mut self, foot: Arc<ParityGroupoid>, components: usize, max_objects: usize, max_order: usize) -> PSpan {
        self.span(foot.clone(), foot, components, max_objects, max_order)
    }

    /// An endo-span on the discrete groupoid `x0 .. x{n-1}` whose apex is a
    /// discrete set of signed edges: a signed multigraph.
    pub fn digraph_span(&mut self, n: usize, max_edges: usize) -> PSpan {
        let foot = Arc::new(ParityGroupoid::discrete((0..n).map(|i| format!("x{i}"))).unwrap());
        let edges = self.rng.gen_range(0..=max_edges);
        let apex = Groupoid::discrete((0..edges).map(|e| format!("e{e}"))).unwrap();
        let (mut src, mut tgt, mut rho) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..edges {
            src.push(self.rng.gen_range(0..n));
            tgt.push(self.rng.gen_range(0..n));
            rho.push(self.sign());
        }
        let lf = Functor { morphisms: src.clone(), objects: src };
        let rf = Functor { morphisms: tgt.clone(), objects: tgt };
        PSpan::new(foot.clone(), foot, apex, lf, rf, rho).unwrap()
    }

    /// A scalar with up to `components` components.
    pub fn scalar(&mut self, components: usize, max_objects: usize, max_order: usize) -> SignedGroupoid {
        let count = self.rng.gen_range(0..=components);
        let g = self.orientable_groupoid("s", count, max_objects, max_order);
        let signs_by_component: Vec<Sign> = (0..g.components().len()).map(|_| self.sign()).collect();
        let signs = (0..g.object_count()).map(|x| signs_by_component[g.component_of(x)]).collect();
        SignedGroupoid::new(g.groupoid().clone(), signs).unwrap()
    }

    /// A catalog group acting on a discrete set made of coset orbits `K\G`,
    /// with `θ_{g,x} = φ(g) · τ_x · τ_{x.g}`.
    pub fn action(&mut self, orbits: usize) -> GroupAction {
        let (group, phi) = self.group(6);
        let subgroups = subgroups(&group);
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut orbit = Vec::new();
        for _ in 0..self.rng.gen_range(1..=orbits.max(1)) {
            let k = subgroups.choose(&mut self.rng).unwrap();
            let start = cosets.len();
            for g in 0..group.order() {
                let mut coset: Vec<usize> = k.iter().map(|&a| group.mul(a, g)).collect();
                coset.sort();
                if !cosets[start..].contains(&coset) {
                    cosets.push(coset);
                }
            }
            orbit.extend(std::iter::repeat(start..cosets.len()).take(cosets.len() - start));
        }
        let n = cosets.len();
        let target = ParityGroupoid::discrete((0..n).map(|i| format!("p{i}"))).unwrap();
        let on_objects: Vec<Vec<usize>> = (0..group.order())
            .map(|g| {
                (0..n)
                    .map(|x| {
                        let mut moved: Vec<usize> = cosets[x].iter().map(|&a| group.mul(a, g)).collect();
                        moved.sort();
                        orbit[x].clone().find(|&y| cosets[y] == moved).expect("cosets are permuted")
                    })
                    .collect()
            })
            .collect();
        let on_morphisms = on_objects.clone();
        let tau: Vec<Sign> = (0..n).map(|_| self.sign()).collect();
        let theta = (0..group.order()).map(|g| (0..n).map(|x| phi[g] * tau[x] * tau[on_objects[g][x]]).collect()).collect();
        GroupAction { group, target, on_objects, on_morphisms, theta }
    }
}

/// Every subgroup, by brute force over subsets.
pub fn subgroups(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    (0u32..(1 << n))
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = set.contains(&group.identity())
                && set.iter().all(|&a| set.iter().all(|&b| set.contains(&group.mul(a, b))));
            closed.then_some(set)
        })
        .collect()
}

/// Sets `ρ` on the component `objs` from `ρ(objs[0]) = start`, returning
/// false if some loop forces a contradiction.
fn propagate_rho(
    apex: &Groupoid,
    objs: &[usize],
    left: &ParityGroupoid,
    right: &ParityGroupoid,
    lf: &Functor,
    rf: &Functor,
    start: Sign,
    rho: &mut [Sign],
) -> bool {
    let x0 = objs[0];
    for &x in objs {
        let a = apex.hom(x0, x).next().expect("component is connected");
        rho[x] = start * left.parity(lf.morphisms[a]) * right.parity(rf.morphisms[a]);
    }
    objs.iter().all(|&x| {
        apex.outgoing(x).iter().all(|&a| {
            left.parity(lf.morphisms[a]) * rho[apex.tgt(a)] == rho[x] * right.parity(rf.morphisms[a])
        })
    })
}
