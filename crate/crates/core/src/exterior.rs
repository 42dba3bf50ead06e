//! Exterior and symmetric powers `Xᵏ/Σ_k` of groupoids and of spans.
//!
//! A morphism `(y₁..y_k) → (x₁..x_k)` is a permutation `σ` together with
//! arrows `γ_j: y_j → x_{σ(j)}`. Composition is
//! `(σ'', γ'') ∘ (σ, γ) = (σ'' ∘ σ, j ↦ γ''_{σ(j)} ∘ γ_j)`.
//! In `Λᵏ` the parity is `sign(σ) · Π par(γ_j)`; in `Symᵏ` the sign is dropped.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::action::GroupAction;
use crate::group::FiniteGroup;
use crate::groupoid::{Groupoid, GroupoidBuilder, ParityGroupoid};
use crate::permutation::{factorial, Permutation};
use crate::sign::Sign;
use crate::span::{Functor, PSpan};

/// Default cap on `|Ob|^k · k!`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("power {k} of a groupoid with {objects} objects needs {needed} candidates, over the budget of {budget}")]
    Budget { k: usize, objects: usize, needed: String, budget: u64 },
}

fn check_budget(objects: usize, k: usize, budget: u64) -> Result<(), ExteriorError> {
    let needed = (objects as u128)
        .checked_pow(k as u32)
        .and_then(|p| p.checked_mul(factorial(k.min(30)) as u128));
    match needed {
        Some(n) if n <= budget as u128 => Ok(()),
        other => Err(ExteriorError::Budget {
            k,
            objects,
            needed: other.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
            budget,
        }),
    }
}

fn tuple_id<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    format!("({})", parts.collect::<Vec<_>>().join(","))
}

/// `Xᵏ/Σ_k` as a plain groupoid, with the tuple and permutation data kept.
#[derive(Clone, Debug)]
pub struct PowerGroupoid {
    pub groupoid: Groupoid,
    pub k: usize,
    base_objects: usize,
    tuples: Vec<Vec<usize>>,
    perms: Vec<Permutation>,
    perm_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
    morphism_index: HashMap<(usize, Vec<usize>), usize>,
}

impl PowerGroupoid {
    pub fn build(base: &Groupoid, k: usize, budget: u64) -> Result<PowerGroupoid, ExteriorError> {
        check_budget(base.object_count(), k, budget)?;
        let n = base.object_count();
        let perms = Permutation::all(k);
        let perm_pos: HashMap<Permutation, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let count = n.pow(k as u32);
        let mut tuples = Vec::with_capacity(count);
        let mut b = GroupoidBuilder::new();
        for idx in 0..count {
            let mut t = vec![0; k];
            let mut r = idx;
            for slot in t.iter_mut().rev() {
                *slot = r % n.max(1);
                r /= n.max(1);
            }
            b.add_object(tuple_id(t.iter().map(|&x| base.object_id(x)))).expect("tuple ids are unique");
            tuples.push(t);
        }
        let tuple_index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * n + x);
        let mut perm_of = Vec::new();
        let mut parts = Vec::new();
        let mut morphism_index = HashMap::new();
        for y in 0..count {
            let outs: Vec<&[usize]> = tuples[y].iter().map(|&yj| base.outgoing(yj)).collect();
            for (pi, sigma) in perms.iter().enumerate() {
                let mut choice = vec![0usize; k];
                'choices: loop {
                    let gammas: Vec<usize> = (0..k).map(|j| outs[j][choice[j]]).collect();
                    let mut x = vec![0; k];
                    for j in 0..k {
                        x[sigma.apply(j)] = base.tgt(gammas[j]);
                    }
                    let id = format!(
                        "[{};{}]",
                        sigma.cycle_word(),
                        gammas.iter().map(|&g| base.morphism_id(g)).collect::<Vec<_>>().join(",")
                    );
                    let f = b.add_morphism(id, y, tuple_index(&x)).expect("power morphism ids are unique");
                    morphism_index.insert((pi, gammas.clone()), f);
                    perm_of.push(pi);
                    parts.push(gammas);
                    for j in (0..k).rev() {
                        choice[j] += 1;
                        if choice[j] < outs[j].len() {
                            continue 'choices;
                        }
                        choice[j] = 0;
                    }
                    break;
                }
            }
        }
        let id_perm = perm_pos[&Permutation::identity(k)];
        for (y, t) in tuples.iter().enumerate() {
            let ids: Vec<usize> = t.iter().map(|&yj| base.identity(yj)).collect();
            b.set_identity(y, morphism_index[&(id_perm, ids)]).unwrap();
        }
        for f in 0..parts.len() {
            let sigma = &perms[perm_of[f]];
            let inv = sigma.inverse();
            let inv_parts: Vec<usize> = (0..k).map(|i| base.inverse(parts[f][inv.apply(i)])).collect();
            b.set_inverse(f, morphism_index[&(perm_pos[&inv], inv_parts)]).unwrap();
        }
        let mut out_lists: Vec<Vec<usize>> = vec![Vec::new(); count];
        for f in 0..parts.len() {
            let src = tuple_index(&parts[f].iter().map(|&g| base.src(g)).collect::<Vec<_>>());
            out_lists[src].push(f);
        }
        for f in 0..parts.len() {
            let sigma = &perms[perm_of[f]];
            let mut x = vec![0; k];
            for j in 0..k {
                x[sigma.apply(j)] = base.tgt(parts[f][j]);
            }
            for &g in &out_lists[tuple_index(&x)] {
                let sigma2 = &perms[perm_of[g]];
                let composed: Vec<usize> =
                    (0..k).map(|j| base.comp(parts[g][sigma.apply(j)], parts[f][j])).collect();
                let h = morphism_index[&(perm_pos[&sigma2.compose(sigma)], composed)];
                b.set_composite(g, f, h).unwrap();
            }
        }
        let groupoid = b.build().expect("power tables are complete");
        Ok(PowerGroupoid { groupoid, k, base_objects: n, tuples, perms, perm_of, parts, morphism_index })
    }

    pub fn tuple(&self, x: usize) -> &[usize] {
        &self.tuples[x]
    }

    pub fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.base_objects + x)
    }

    pub fn permutation(&self, f: usize) -> &Permutation {
        &self.perms[self.perm_of[f]]
    }

    pub fn parts(&self, f: usize) -> &[usize] {
        &self.parts[f]
    }

    /// The morphism `(σ, γ⃗)`, if the parts are composable with `σ`.
    pub fn morphism(&self, sigma: &Permutation, parts: &[usize]) -> Option<usize> {
        let pi = self.perms.iter().position(|p| p == sigma)?;
        self.morphism_index.get(&(pi, parts.to_vec())).copied()
    }

    fn parity(&self, base: &ParityGroupoid, twisted: bool) -> Vec<Sign> {
        (0..self.parts.len())
            .map(|f| {
                let s = Sign::product(self.parts[f].iter().map(|&g| base.parity(g)));
                if twisted {
                    s * self.permutation(f).sign()
                } else {
                    s
                }
            })
            .collect()
    }
}

/// `Λᵏ X` together with its tuple data.
#[derive(Clone, Debug)]
pub struct ExteriorPower {
    pub power: PowerGroupoid,
    pub groupoid: ParityGroupoid,
}

impl ExteriorPower {
    pub fn build(x: &ParityGroupoid, k: usize, budget: u64) -> Result<ExteriorPower, ExteriorError> {
        let power = PowerGroupoid::build(x, k, budget)?;
        let parity = power.parity(x, true);
        let groupoid = ParityGroupoid::new(power.groupoid.clone(), parity).unwrap();
        Ok(ExteriorPower { power, groupoid })
    }

    /// The arrow `(σ, id⃗)` out of tuple `y`, which the alternating map
    /// must provide with parity `sign(σ)`.
    pub fn alternating_arrow(&self, x: &ParityGroupoid, y: usize, sigma: &Permutation) -> Option<usize> {
        let ids: Vec<usize> = self.power.tuple(y).iter().map(|&o| x.identity(o)).collect();
        self.power.morphism(sigma, &ids)
    }
}

pub fn exterior_power_groupoid(x: &ParityGroupoid, k: usize, budget: u64) -> Result<ParityGroupoid, ExteriorError> {
    Ok(ExteriorPower::build(x, k, budget)?.groupoid)
}

pub fn symmetric_power_groupoid(x: &ParityGroupoid, k: usize, budget: u64) -> Result<ParityGroupoid, ExteriorError> {
    let power = PowerGroupoid::build(x, k, budget)?;
    let parity = power.parity(x, false);
    Ok(ParityGroupoid::new(power.groupoid, parity).unwrap())
}

/// A connected component of `Λᵏ X`, found without building the groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerComponent {
    /// Least member tuple in mixed-radix order.
    pub representative: Vec<usize>,
    pub size: usize,
    pub aut_order: usize,
    pub orientable: bool,
}

/// Components of `Λᵏ X` by walking arrows `(σ, γ⃗)` on demand. Same budget
/// as [`ExteriorPower::build`], but memory is linear in the number of tuples,
/// so it reaches powers whose composition tables would not fit.
pub fn exterior_power_components(x: &ParityGroupoid, k: usize, budget: u64) -> Result<Vec<PowerComponent>, ExteriorError> {
    check_budget(x.object_count(), k, budget)?;
    let n = x.object_count();
    let perms = Permutation::all(k);
    let count = n.pow(k as u32);
    let unrank = |mut r: usize| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = r % n.max(1);
            r /= n.max(1);
        }
        t
    };
    let rank = |t: &[usize]| t.iter().fold(0, |acc, &v| acc * n + v);
    // calls `visit(target, parity)` for every arrow out of `t`
    let arrows_from = |t: &[usize], visit: &mut dyn FnMut(usize, Sign)| {
        let outs: Vec<&[usize]> = t.iter().map(|&v| x.outgoing(v)).collect();
        for sigma in &perms {
            let mut choice = vec![0usize; k];
            'choices: loop {
                let mut target = vec![0; k];
                let mut sign = sigma.sign();
                for j in 0..k {
                    let g = outs[j][choice[j]];
                    target[sigma.apply(j)] = x.tgt(g);
                    sign = sign * x.parity(g);
                }
                visit(rank(&target), sign);
                for j in (0..k).rev() {
                    choice[j] += 1;
                    if choice[j] < outs[j].len() {
                        continue 'choices;
                    }
                    choice[j] = 0;
                }
                break;
            }
        }
    };
    let mut seen = vec![false; count];
    let mut out = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let rep = unrank(start);
        let (mut aut_order, mut orientable) = (0, true);
        arrows_from(&rep, &mut |y, sign| {
            if y == start {
                aut_order += 1;
                orientable &= sign == Sign::Plus;
            }
        });
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(t) = stack.pop() {
            size += 1;
            arrows_from(&unrank(t), &mut |y, _| {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            });
        }
        out.push(PowerComponent { representative: rep, size, aut_order, orientable });
    }
    Ok(out)
}

/// `Λᵏ` of a span, with the power data of the feet and the apex.
#[derive(Clone, Debug)]
pub struct ExteriorSpan {
    pub span: PSpan,
    pub left: Arc<ExteriorPower>,
    pub right: Arc<ExteriorPower>,
    pub apex: PowerGroupoid,
}

/// Feet `Λᵏ S`, `Λᵏ T`; apex `Mᵏ/Σ_k`; functors act tuple-wise; `ρ(m⃗) = Π ρ(m_i)`.
pub fn exterior_power_span(sp: &PSpan, k: usize, budget: u64) -> Result<ExteriorSpan, ExteriorError> {
    let left = Arc::new(ExteriorPower::build(sp.left(), k, budget)?);
    let right = if sp.is_endo() {
        left.clone()
    } else {
        Arc::new(ExteriorPower::build(sp.right(), k, budget)?)
    };
    let apex = PowerGroupoid::build(sp.apex(), k, budget)?;
    let map = |foot: &ExteriorPower, f: &Functor| Functor {
        objects: (0..apex.groupoid.object_count())
            .map(|t| foot.power.tuple_index(&apex.tuple(t).iter().map(|&m| f.objects[m]).collect::<Vec<_>>()))
            .collect(),
        morphisms: (0..apex.groupoid.morphism_count())
            .map(|a| {
                let parts: Vec<usize> = apex.parts(a).iter().map(|&g| f.morphisms[g]).collect();
                foot.power.morphism(apex.permutation(a), &parts).expect("image of a power morphism")
            })
            .collect(),
    };
    let left_map = map(&left, sp.left_map());
    let right_map = map(&right, sp.right_map());
    let rho = (0..apex.groupoid.object_count())
        .map(|t| Sign::product(apex.tuple(t).iter().map(|&m| sp.rho(m))))
        .collect();
    let left_foot = Arc::new(left.groupoid.clone());
    let right_foot = if Arc::ptr_eq(&left, &right) { left_foot.clone() } else { Arc::new(right.groupoid.clone()) };
    let span = PSpan::new(left_foot, right_foot, apex.groupoid.clone(), left_map, right_map, rho)
        .expect("power span shapes agree");
    Ok(ExteriorSpan { span, left, right, apex })
}

/// `Xᵏ` with tuple ids, and the action of `Σ_k` by `(x.g)_i = x_{g(i)}`
/// with `θ_g = sign(g)`. Its weak quotient is a second construction of `Λᵏ X`.
pub fn permutation_action(x: &ParityGroupoid, k: usize, budget: u64) -> Result<GroupAction, ExteriorError> {
    check_budget(x.object_count(), k, budget)?;
    let n = x.object_count();
    let m = x.morphism_count();
    let radix = |digits: &[usize], base: usize| digits.iter().fold(0, |acc, &d| acc * base + d);
    let unrank = |mut r: usize, base: usize| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = r % base.max(1);
            r /= base.max(1);
        }
        t
    };
    let mut b = GroupoidBuilder::new();
    let obj_tuples: Vec<Vec<usize>> = (0..n.pow(k as u32)).map(|r| unrank(r, n)).collect();
    for t in &obj_tuples {
        b.add_object(tuple_id(t.iter().map(|&o| x.object_id(o)))).unwrap();
    }
    let mor_tuples: Vec<Vec<usize>> = (0..m.pow(k as u32)).map(|r| unrank(r, m)).collect();
    let mut parity = Vec::new();
    for t in &mor_tuples {
        let s: Vec<usize> = t.iter().map(|&f| x.src(f)).collect();
        let d: Vec<usize> = t.iter().map(|&f| x.tgt(f)).collect();
        b.add_morphism(tuple_id(t.iter().map(|&f| x.morphism_id(f))), radix(&s, n), radix(&d, n)).unwrap();
        parity.push(Sign::product(t.iter().map(|&f| x.parity(f))));
    }
    for (i, t) in obj_tuples.iter().enumerate() {
        let ids: Vec<usize> = t.iter().map(|&o| x.identity(o)).collect();
        b.set_identity(i, radix(&ids, m)).unwrap();
    }
    for (i, t) in mor_tuples.iter().enumerate() {
        let inv: Vec<usize> = t.iter().map(|&f| x.inverse(f)).collect();
        b.set_inverse(i, radix(&inv, m)).unwrap();
        let d: Vec<usize> = t.iter().map(|&f| x.tgt(f)).collect();
        let mut choice = vec![0usize; k];
        let outs: Vec<&[usize]> = d.iter().map(|&o| x.outgoing(o)).collect();
        'choices: loop {
            let next: Vec<usize> = (0..k).map(|j| outs[j][choice[j]]).collect();
            let comp: Vec<usize> = (0..k).map(|j| x.comp(next[j], t[j])).collect();
            b.set_composite(radix(&next, m), i, radix(&comp, m)).unwrap();
            for j in (0..k).rev() {
                choice[j] += 1;
                if choice[j] < outs[j].len() {
                    continue 'choices;
                }
                choice[j] = 0;
            }
            break;
        }
    }
    let target = ParityGroupoid::new(b.build().unwrap(), parity).unwrap();
    let group = FiniteGroup::symmetric(k);
    let perms = Permutation::all(k);
    let permute = |t: &[usize], g: &Permutation| (0..k).map(|i| t[g.apply(i)]).collect::<Vec<_>>();
    let on_objects = perms.iter().map(|g| obj_tuples.iter().map(|t| radix(&permute(t, g), n)).collect()).collect();
    let on_morphisms = perms.iter().map(|g| mor_tuples.iter().map(|t| radix(&permute(t, g), m)).collect()).collect();
    let theta = perms.iter().map(|g| vec![g.sign(); obj_tuples.len()]).collect();
    Ok(GroupAction { group, target, on_objects, on_morphisms, theta })
}
