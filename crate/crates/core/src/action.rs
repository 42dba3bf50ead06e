//! Finite group actions on parity groupoids and their weak quotients.

use crate::group::FiniteGroup;
use crate::groupoid::{Axiom, GroupoidBuilder, ParityGroupoid, ValidationReport};
use crate::sign::Sign;

/// A right action of a finite group on a parity groupoid.
///
/// `on_objects[g][x]` is `x.g`, `on_morphisms[g][f]` is `f.g`, and
/// `theta[g][x]` is the parity of the new arrow `x → x.g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub target: ParityGroupoid,
    pub on_objects: Vec<Vec<usize>>,
    pub on_morphisms: Vec<Vec<usize>>,
    pub theta: Vec<Vec<Sign>>,
}

impl GroupAction {
    /// Every element acts as the identity, with `θ_g = parity(g)` everywhere.
    pub fn trivial(group: FiniteGroup, target: ParityGroupoid, parity: &[Sign]) -> GroupAction {
        let n = group.order();
        let objects: Vec<usize> = (0..target.object_count()).collect();
        let morphisms: Vec<usize> = (0..target.morphism_count()).collect();
        let theta = (0..n).map(|g| vec![parity[g]; target.object_count()]).collect();
        GroupAction {
            on_objects: vec![objects; n],
            on_morphisms: vec![morphisms; n],
            theta,
            group,
            target,
        }
    }

    pub fn act_object(&self, x: usize, g: usize) -> usize {
        self.on_objects[g][x]
    }

    pub fn act_morphism(&self, f: usize, g: usize) -> usize {
        self.on_morphisms[g][f]
    }

    pub fn theta(&self, g: usize, x: usize) -> Sign {
        self.theta[g][x]
    }

    /// Functoriality of each element, the action law, and compatibility of
    /// `θ` with composition and with the parities of moved arrows.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let x = &self.target;
        let grp = &self.group;
        let (n_obj, n_mor, n) = (x.object_count(), x.morphism_count(), grp.order());
        let shapes_ok = self.on_objects.len() == n
            && self.on_morphisms.len() == n
            && self.theta.len() == n
            && self.on_objects.iter().all(|r| r.len() == n_obj && r.iter().all(|&y| y < n_obj))
            && self.on_morphisms.iter().all(|r| r.len() == n_mor && r.iter().all(|&f| f < n_mor))
            && self.theta.iter().all(|r| r.len() == n_obj);
        if !shapes_ok {
            report.push(Axiom::Action, "action tables do not match the group and target sizes");
            return report;
        }
        for g in 0..n {
            let gname = grp.name(g);
            for f in 0..n_mor {
                let fg = self.on_morphisms[g][f];
                if x.src(fg) != self.on_objects[g][x.src(f)] || x.tgt(fg) != self.on_objects[g][x.tgt(f)] {
                    report.push(Axiom::Functor, format!("`{gname}` moves `{}` to an arrow with wrong ends", x.morphism_id(f)));
                }
                let expected = self.theta[g][x.src(f)] * x.parity(f) * self.theta[g][x.tgt(f)];
                if x.parity(fg) != expected {
                    report.push(
                        Axiom::Action,
                        format!("parity of `{}` moved by `{gname}` is incompatible with theta", x.morphism_id(f)),
                    );
                }
            }
            for o in 0..n_obj {
                if self.on_morphisms[g][x.identity(o)] != x.identity(self.on_objects[g][o]) {
                    report.push(Axiom::Functor, format!("`{gname}` does not preserve the identity of `{}`", x.object_id(o)));
                }
            }
            for ((b, a), ba) in x.composition_entries() {
                let moved = x.compose(self.on_morphisms[g][b], self.on_morphisms[g][a]);
                if moved != Some(self.on_morphisms[g][ba]) {
                    report.push(
                        Axiom::Functor,
                        format!("`{gname}` does not preserve `{}` after `{}`", x.morphism_id(b), x.morphism_id(a)),
                    );
                }
            }
        }
        let e = grp.identity();
        for o in 0..n_obj {
            if self.on_objects[e][o] != o || self.theta[e][o] != Sign::Plus {
                report.push(Axiom::Action, format!("identity element does not fix `{}`", x.object_id(o)));
            }
        }
        for f in 0..n_mor {
            if self.on_morphisms[e][f] != f {
                report.push(Axiom::Action, format!("identity element does not fix `{}`", x.morphism_id(f)));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = grp.mul(g, h);
                for o in 0..n_obj {
                    let og = self.on_objects[g][o];
                    if self.on_objects[h][og] != self.on_objects[gh][o] {
                        report.push(
                            Axiom::Action,
                            format!("action law fails at `{}` for (`{}`, `{}`)", x.object_id(o), grp.name(g), grp.name(h)),
                        );
                    }
                    if self.theta[gh][o] != self.theta[g][o] * self.theta[h][og] {
                        report.push(
                            Axiom::Action,
                            format!("theta is not compatible with composition at `{}` for (`{}`, `{}`)", x.object_id(o), grp.name(g), grp.name(h)),
                        );
                    }
                }
                for f in 0..n_mor {
                    if self.on_morphisms[h][self.on_morphisms[g][f]] != self.on_morphisms[gh][f] {
                        report.push(
                            Axiom::Action,
                            format!("action law fails at `{}` for (`{}`, `{}`)", x.morphism_id(f), grp.name(g), grp.name(h)),
                        );
                    }
                }
            }
        }
        report
    }

    /// The weak quotient `X/G`.
    ///
    /// Objects are those of `X`; an arrow `x → y.g` is a pair `(a: x → y, g)`
    /// with id `(a,g)` and parity `parity(a)·θ_{g at y}`. Composition:
    /// `(a, g)` then `(b, h)` is `((b.g⁻¹)∘a, g·h)`.
    pub fn weak_quotient(&self) -> Result<ParityGroupoid, ValidationReport> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(report);
        }
        let x = &self.target;
        let grp = &self.group;
        let n = grp.order();
        let idx = |a: usize, g: usize| a * n + g;
        let mut b = GroupoidBuilder::new();
        for o in 0..x.object_count() {
            b.add_object(x.object_id(o)).unwrap();
        }
        let mut parity = Vec::with_capacity(x.morphism_count() * n);
        for a in 0..x.morphism_count() {
            for g in 0..n {
                let y = x.tgt(a);
                b.add_morphism(format!("({},{})", x.morphism_id(a), grp.name(g)), x.src(a), self.on_objects[g][y])
                    .unwrap();
                parity.push(x.parity(a) * self.theta[g][y]);
            }
        }
        let e = grp.identity();
        for o in 0..x.object_count() {
            b.set_identity(o, idx(x.identity(o), e)).unwrap();
        }
        for a in 0..x.morphism_count() {
            for g in 0..n {
                let ginv = grp.inv(g);
                let a_inv_moved = self.on_morphisms[g][x.inverse(a)];
                b.set_inverse(idx(a, g), idx(a_inv_moved, ginv)).unwrap();
                let mid = self.on_objects[g][x.tgt(a)];
                for &bb in x.outgoing(mid) {
                    let back = self.on_morphisms[ginv][bb];
                    let first = x.comp(back, a);
                    for h in 0..n {
                        b.set_composite(idx(bb, h), idx(a, g), idx(first, grp.mul(g, h))).unwrap();
                    }
                }
            }
        }
        let g = b.build().expect("weak quotient tables are complete");
        Ok(ParityGroupoid::new(g, parity).unwrap())
    }
}
