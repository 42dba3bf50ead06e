//! Simplified P-spans `S ← M → T` with a sign `ρ` on the apex.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::groupoid::{Axiom, Groupoid, GroupoidBuilder, ParityGroupoid, ValidationReport};
use crate::scalar::SignedGroupoid;
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("feet do not match: the right foot of the first span is not the left foot of the second")]
    FootMismatch,
    #[error("{what} has {got} entries, expected {expected}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("{what} maps to index {index}, which is out of range")]
    OutOfRange { what: &'static str, index: usize },
    #[error("object `{0}` is not orientable")]
    NotOrientable(String),
    #[error("expected a state (a span out of the point)")]
    NotAState,
    #[error("expected a scalar (a span from the point to the point)")]
    NotAScalar,
}

/// A functor between explicit groupoids, given by its object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(g: &Groupoid) -> Functor {
        Functor { objects: (0..g.object_count()).collect(), morphisms: (0..g.morphism_count()).collect() }
    }

    /// Constant functor onto object `x` of `target`.
    pub fn constant(source: &Groupoid, target: &Groupoid, x: usize) -> Functor {
        Functor { objects: vec![x; source.object_count()], morphisms: vec![target.identity(x); source.morphism_count()] }
    }

    pub fn check_shape(&self, source: &Groupoid, target: &Groupoid, what: &'static str) -> Result<(), SpanError> {
        if self.objects.len() != source.object_count() {
            return Err(SpanError::Shape { what, expected: source.object_count(), got: self.objects.len() });
        }
        if self.morphisms.len() != source.morphism_count() {
            return Err(SpanError::Shape { what, expected: source.morphism_count(), got: self.morphisms.len() });
        }
        if let Some(&index) = self.objects.iter().find(|&&x| x >= target.object_count()) {
            return Err(SpanError::OutOfRange { what, index });
        }
        if let Some(&index) = self.morphisms.iter().find(|&&f| f >= target.morphism_count()) {
            return Err(SpanError::OutOfRange { what, index });
        }
        Ok(())
    }

    /// Ends, identities and composites are preserved.
    pub fn validate(&self, source: &Groupoid, target: &Groupoid, name: &str) -> ValidationReport {
        let mut report = ValidationReport::new();
        for f in 0..source.morphism_count() {
            let g = self.morphisms[f];
            if target.src(g) != self.objects[source.src(f)] || target.tgt(g) != self.objects[source.tgt(f)] {
                report.push(Axiom::Functor, format!("{name} sends `{}` to an arrow with wrong ends", source.morphism_id(f)));
            }
        }
        for x in 0..source.object_count() {
            if self.morphisms[source.identity(x)] != target.identity(self.objects[x]) {
                report.push(Axiom::Functor, format!("{name} does not preserve the identity of `{}`", source.object_id(x)));
            }
        }
        for ((g, f), gf) in source.composition_entries() {
            if target.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                report.push(
                    Axiom::Functor,
                    format!("{name} does not preserve `{}` after `{}`", source.morphism_id(g), source.morphism_id(f)),
                );
            }
        }
        report
    }
}

/// A simplified P-span. For every apex arrow `a: m → m'` the sign satisfies
/// `par_S(left(a)) · ρ(m') = ρ(m) · par_T(right(a))`.
#[derive(Clone, Debug)]
pub struct PSpan {
    left: Arc<ParityGroupoid>,
    right: Arc<ParityGroupoid>,
    apex: Groupoid,
    left_map: Functor,
    right_map: Functor,
    rho: Vec<Sign>,
}

impl PartialEq for PSpan {
    fn eq(&self, other: &PSpan) -> bool {
        *self.left == *other.left
            && *self.right == *other.right
            && self.apex == other.apex
            && self.left_map == other.left_map
            && self.right_map == other.right_map
            && self.rho == other.rho
    }
}

fn same_foot(a: &Arc<ParityGroupoid>, b: &Arc<ParityGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PSpan {
    /// Checks sizes and index ranges only; see [`PSpan::validate`] for the laws.
    pub fn new(
        left: Arc<ParityGroupoid>,
        right: Arc<ParityGroupoid>,
        apex: Groupoid,
        left_map: Functor,
        right_map: Functor,
        rho: Vec<Sign>,
    ) -> Result<PSpan, SpanError> {
        left_map.check_shape(&apex, &left, "left map")?;
        right_map.check_shape(&apex, &right, "right map")?;
        if rho.len() != apex.object_count() {
            return Err(SpanError::Shape { what: "rho", expected: apex.object_count(), got: rho.len() });
        }
        Ok(PSpan { left, right, apex, left_map, right_map, rho })
    }

    /// `S ← S → S` with identity functors and `ρ ≡ +1`.
    pub fn identity(s: Arc<ParityGroupoid>) -> PSpan {
        let apex = s.groupoid().clone();
        let id = Functor::identity(&apex);
        let rho = vec![Sign::Plus; apex.object_count()];
        PSpan { left: s.clone(), right: s, apex, left_map: id.clone(), right_map: id, rho }
    }

    pub fn left(&self) -> &Arc<ParityGroupoid> {
        &self.left
    }

    pub fn right(&self) -> &Arc<ParityGroupoid> {
        &self.right
    }

    pub fn apex(&self) -> &Groupoid {
        &self.apex
    }

    pub fn left_map(&self) -> &Functor {
        &self.left_map
    }

    pub fn right_map(&self) -> &Functor {
        &self.right_map
    }

    pub fn rho(&self, m: usize) -> Sign {
        self.rho[m]
    }

    pub fn rhos(&self) -> &[Sign] {
        &self.rho
    }

    pub fn is_endo(&self) -> bool {
        same_foot(&self.left, &self.right)
    }

    /// Feet, apex, both functors and the naturality of `ρ`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        report.absorb("left foot", self.left.validate());
        report.absorb("right foot", self.right.validate());
        report.absorb("apex", self.apex.validate());
        if !report.is_valid() {
            return report;
        }
        report.absorb("left map", self.left_map.validate(&self.apex, &self.left, "left map"));
        report.absorb("right map", self.right_map.validate(&self.apex, &self.right, "right map"));
        for a in 0..self.apex.morphism_count() {
            let lhs = self.left.parity(self.left_map.morphisms[a]) * self.rho[self.apex.tgt(a)];
            let rhs = self.rho[self.apex.src(a)] * self.right.parity(self.right_map.morphisms[a]);
            if lhs != rhs {
                report.push(Axiom::Naturality, format!("rho is not natural along `{}`", self.apex.morphism_id(a)));
            }
        }
        report
    }

    /// Same span with `ρ` negated.
    pub fn negative(&self) -> PSpan {
        PSpan { rho: self.rho.iter().map(|&r| -r).collect(), ..self.clone() }
    }

    /// The span read backwards, `T ← M → S`.
    pub fn transpose(&self) -> PSpan {
        PSpan {
            left: self.right.clone(),
            right: self.left.clone(),
            apex: self.apex.clone(),
            left_map: self.right_map.clone(),
            right_map: self.left_map.clone(),
            rho: self.rho.clone(),
        }
    }

    /// Homotopy pullback composite `S ← M ×_J N → T` via the iso-comma
    /// groupoid: objects `(m, γ: right(m) → left(n), n)`, arrows pairs
    /// `(α, β)` with `left(β) ∘ γ = γ' ∘ right(α)`, and
    /// `ρ(m, γ, n) = ρ(m) · par(γ) · ρ(n)`.
    pub fn compose(&self, other: &PSpan) -> Result<PSpan, SpanError> {
        if !same_foot(&self.right, &other.left) {
            return Err(SpanError::FootMismatch);
        }
        let j = &self.right;
        let (a, b) = (&self.apex, &other.apex);
        let mut builder = GroupoidBuilder::new();
        let mut objects = Vec::new();
        let mut object_index = HashMap::new();
        for m in 0..a.object_count() {
            let rm = self.right_map.objects[m];
            for n in 0..b.object_count() {
                for gamma in j.hom(rm, other.left_map.objects[n]) {
                    let id = format!("<{}|{}|{}>", a.object_id(m), j.morphism_id(gamma), b.object_id(n));
                    let o = builder.add_object(id).expect("iso-comma object ids are unique");
                    object_index.insert((m, gamma, n), o);
                    objects.push((m, gamma, n));
                }
            }
        }
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        for (o, &(m, gamma, n)) in objects.iter().enumerate() {
            for &alpha in a.outgoing(m) {
                let partial = j.comp(gamma, j.inverse(self.right_map.morphisms[alpha]));
                for &beta in b.outgoing(n) {
                    let gamma2 = j.comp(other.left_map.morphisms[beta], partial);
                    let t = object_index[&(a.tgt(alpha), gamma2, b.tgt(beta))];
                    let id = format!("<{}|{}|{}>", a.morphism_id(alpha), j.morphism_id(gamma), b.morphism_id(beta));
                    let f = builder.add_morphism(id, o, t).expect("iso-comma arrow ids are unique");
                    arrow_index.insert((o, alpha, beta), f);
                    arrows.push((o, alpha, beta, t));
                }
            }
        }
        for (o, &(m, _, n)) in objects.iter().enumerate() {
            builder.set_identity(o, arrow_index[&(o, a.identity(m), b.identity(n))]).unwrap();
        }
        for (f, &(_, alpha, beta, t)) in arrows.iter().enumerate() {
            builder.set_inverse(f, arrow_index[&(t, a.inverse(alpha), b.inverse(beta))]).unwrap();
            for &alpha2 in a.outgoing(a.tgt(alpha)) {
                for &beta2 in b.outgoing(b.tgt(beta)) {
                    let g = arrow_index[&(t, alpha2, beta2)];
                    let h = arrow_index[&(arrows[f].0, a.comp(alpha2, alpha), b.comp(beta2, beta))];
                    builder.set_composite(g, f, h).unwrap();
                }
            }
        }
        let apex = builder.build().expect("iso-comma tables are complete");
        let left_map = Functor {
            objects: objects.iter().map(|&(m, _, _)| self.left_map.objects[m]).collect(),
            morphisms: arrows.iter().map(|&(_, alpha, _, _)| self.left_map.morphisms[alpha]).collect(),
        };
        let right_map = Functor {
            objects: objects.iter().map(|&(_, _, n)| other.right_map.objects[n]).collect(),
            morphisms: arrows.iter().map(|&(_, _, beta, _)| other.right_map.morphisms[beta]).collect(),
        };
        let rho = objects.iter().map(|&(m, gamma, n)| self.rho[m] * j.parity(gamma) * other.rho[n]).collect();
        Ok(PSpan { left: self.left.clone(), right: other.right.clone(), apex, left_map, right_map, rho })
    }

    /// The two-sided fiber `ᵢMⱼ`: objects `(α: left(m) → i, m, β: right(m) → j)`,
    /// arrows `θ: m → m'` with `α' ∘ left(θ) = α` and `β' ∘ right(θ) = β`, and
    /// sign `par(α) · ρ(m) · par(β)`.
    ///
    /// # Panics
    ///
    /// If the sign is not constant on a component, which cannot happen for a
    /// span passing [`PSpan::validate`].
    pub fn two_sided_fiber(&self, i: usize, j: usize) -> Fiber {
        let (s, t, m_apex) = (&self.left, &self.right, &self.apex);
        let mut builder = GroupoidBuilder::new();
        let mut points = Vec::new();
        let mut index = HashMap::new();
        let mut signs = Vec::new();
        for m in 0..m_apex.object_count() {
            let (lm, rm) = (self.left_map.objects[m], self.right_map.objects[m]);
            if !s.is_isomorphic(lm, i) || !t.is_isomorphic(rm, j) {
                continue;
            }
            for alpha in s.hom(lm, i) {
                for beta in t.hom(rm, j) {
                    let id = format!("<{}|{}|{}>", s.morphism_id(alpha), m_apex.object_id(m), t.morphism_id(beta));
                    let p = builder.add_object(id).expect("fiber object ids are unique");
                    index.insert((alpha, m, beta), p);
                    points.push((alpha, m, beta));
                    signs.push(s.parity(alpha) * self.rho[m] * t.parity(beta));
                }
            }
        }
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        for (p, &(alpha, m, beta)) in points.iter().enumerate() {
            for &theta in m_apex.outgoing(m) {
                let alpha2 = s.comp(alpha, s.inverse(self.left_map.morphisms[theta]));
                let beta2 = t.comp(beta, t.inverse(self.right_map.morphisms[theta]));
                let q = index[&(alpha2, m_apex.tgt(theta), beta2)];
                let id = format!("<{}|{}|{}>", s.morphism_id(alpha), m_apex.morphism_id(theta), t.morphism_id(beta));
                let f = builder.add_morphism(id, p, q).expect("fiber arrow ids are unique");
                arrow_index.insert((p, theta), f);
                arrows.push((p, theta, q));
            }
        }
        for (p, &(_, m, _)) in points.iter().enumerate() {
            builder.set_identity(p, arrow_index[&(p, m_apex.identity(m))]).unwrap();
        }
        for (f, &(p, theta, q)) in arrows.iter().enumerate() {
            builder.set_inverse(f, arrow_index[&(q, m_apex.inverse(theta))]).unwrap();
            for &theta2 in m_apex.outgoing(m_apex.tgt(theta)) {
                let g = arrow_index[&(q, theta2)];
                let h = arrow_index[&(p, m_apex.comp(theta2, theta))];
                builder.set_composite(g, f, h).unwrap();
            }
        }
        let groupoid = builder.build().expect("fiber tables are complete");
        let scalar = SignedGroupoid::new(groupoid, signs).unwrap_or_else(|e| panic!("two-sided fiber of an invalid span: {e}"));
        Fiber { scalar, points, index, arrows: arrows.into_iter().map(|(_, theta, _)| theta).collect(), i, j }
    }

    /// The scalar `1 ← S → 1` with `ρ` given by the signs of `sc`.
    pub fn from_scalar(sc: &SignedGroupoid) -> PSpan {
        let point = Arc::new(ParityGroupoid::point());
        let apex = sc.groupoid().clone();
        let map = Functor::constant(&apex, &point, 0);
        let rho = (0..apex.object_count()).map(|x| sc.sign(x)).collect();
        PSpan { left: point.clone(), right: point, apex, left_map: map.clone(), right_map: map, rho }
    }

    /// The apex of a point-to-point span, signed by `ρ`.
    pub fn to_scalar(&self) -> Result<SignedGroupoid, SpanError> {
        let is_point = |g: &ParityGroupoid| g.object_count() == 1 && g.morphism_count() == 1;
        if !is_point(&self.left) || !is_point(&self.right) {
            return Err(SpanError::NotAScalar);
        }
        Ok(SignedGroupoid::new(self.apex.clone(), self.rho.clone()).expect("valid scalar spans have constant signs"))
    }

    /// The elementary state `1 ← 1 → S` naming `x`, with sign `sign`.
    pub fn elementary_state(s: Arc<ParityGroupoid>, x: usize, sign: Sign) -> PSpan {
        let apex = Groupoid::point();
        let point = Arc::new(ParityGroupoid::point());
        let left_map = Functor::identity(&apex);
        let right_map = Functor::constant(&apex, &s, x);
        PSpan { left: point, right: s, apex, left_map, right_map, rho: vec![sign] }
    }

    pub fn is_state(&self) -> bool {
        self.left.object_count() == 1 && self.left.morphism_count() == 1
    }
}

/// Inner product of two states over the same foot: `x` composed with the
/// transpose of `y`, read as a scalar.
pub fn inner_product(x: &PSpan, y: &PSpan) -> Result<SignedGroupoid, SpanError> {
    if !x.is_state() || !y.is_state() {
        return Err(SpanError::NotAState);
    }
    x.compose(&y.transpose())?.to_scalar()
}

/// A two-sided fiber together with the data of its points.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub scalar: SignedGroupoid,
    /// `(α, m, β)` for each object of `scalar`.
    pub points: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
    /// The apex arrow `θ` underlying each arrow of `scalar`.
    pub arrows: Vec<usize>,
    pub i: usize,
    pub j: usize,
}

impl Fiber {
    pub fn point_index(&self, alpha: usize, m: usize, beta: usize) -> Option<usize> {
        self.index.get(&(alpha, m, beta)).copied()
    }
}
