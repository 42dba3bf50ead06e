//! Explicit finite groupoids and parity structures on them.
//!
//! A [`Groupoid`] stores every object, every morphism and the full
//! composition table. Ids are strings; internally everything is indexed by
//! `usize` positions. A [`ParityGroupoid`] adds a `±1` label on each arrow
//! (a functor to `P = BO(1)`).

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::rational::{self, Rational};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism id `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("morphism `{0}` has no inverse")]
    MissingInverse(String),
    #[error("conflicting composite for `{0}` after `{1}`")]
    ConflictingComposite(String, String),
    #[error("conflicting data for `{0}`")]
    Conflict(String),
    #[error("parity table has {got} entries for {expected} morphisms")]
    ParityLength { expected: usize, got: usize },
}

/// Which law a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    Composition,
    Identity,
    Inverse,
    Associativity,
    Parity,
    Functor,
    Naturality,
    SignConstancy,
    Action,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Composition => "composition",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
            Axiom::Parity => "parity",
            Axiom::Functor => "functor",
            Axiom::Naturality => "naturality",
            Axiom::SignConstancy => "sign-constancy",
            Axiom::Action => "action",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

const MAX_REPORTED: usize = 200;

/// Outcome of a validator: every violated axiom, or nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    suppressed: usize,
}

impl ValidationReport {
    pub fn new() -> ValidationReport {
        ValidationReport::default()
    }

    pub fn push(&mut self, axiom: Axiom, detail: impl Into<String>) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(Violation { axiom, detail: detail.into() });
        } else {
            self.suppressed += 1;
        }
    }

    /// Appends another report, prefixing each detail with `context`.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        for v in other.violations {
            self.push(v.axiom, format!("{context}: {}", v.detail));
        }
        self.suppressed += other.suppressed;
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.suppressed == 0
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.axiom, v.detail)?;
        }
        if self.suppressed > 0 {
            writeln!(f, "... and {} more", self.suppressed)?;
        }
        Ok(())
    }
}

/// Incremental constructor for [`Groupoid`]. Axioms are not checked here;
/// only references are resolved.
#[derive(Debug, Default)]
pub struct GroupoidBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    mor_ids: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    morphism_index: HashMap<String, usize>,
    identity: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    compose: HashMap<(usize, usize), usize>,
}

impl GroupoidBuilder {
    pub fn new() -> GroupoidBuilder {
        GroupoidBuilder::default()
    }

    pub fn add_object(&mut self, id: impl Into<String>) -> Result<usize, BuildError> {
        let id = id.into();
        if self.object_index.contains_key(&id) {
            return Err(BuildError::DuplicateObject(id));
        }
        let i = self.objects.len();
        self.object_index.insert(id.clone(), i);
        self.objects.push(id);
        self.identity.push(None);
        Ok(i)
    }

    pub fn add_morphism(&mut self, id: impl Into<String>, src: usize, tgt: usize) -> Result<usize, BuildError> {
        let id = id.into();
        if self.morphism_index.contains_key(&id) {
            return Err(BuildError::DuplicateMorphism(id));
        }
        let f = self.mor_ids.len();
        self.morphism_index.insert(id.clone(), f);
        self.mor_ids.push(id);
        self.src.push(src);
        self.tgt.push(tgt);
        self.inverse.push(None);
        Ok(f)
    }

    pub fn object(&self, id: &str) -> Result<usize, BuildError> {
        self.object_index.get(id).copied().ok_or_else(|| BuildError::UnknownObject(id.to_string()))
    }

    pub fn morphism(&self, id: &str) -> Result<usize, BuildError> {
        self.morphism_index.get(id).copied().ok_or_else(|| BuildError::UnknownMorphism(id.to_string()))
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.mor_ids.len()
    }

    pub fn set_identity(&mut self, x: usize, f: usize) -> Result<(), BuildError> {
        match self.identity[x] {
            Some(g) if g != f => Err(BuildError::Conflict(self.objects[x].clone())),
            _ => {
                self.identity[x] = Some(f);
                Ok(())
            }
        }
    }

    /// Records `g = f⁻¹`; the reverse direction is filled in when unset.
    pub fn set_inverse(&mut self, f: usize, g: usize) -> Result<(), BuildError> {
        match self.inverse[f] {
            Some(h) if h != g => return Err(BuildError::Conflict(self.mor_ids[f].clone())),
            _ => self.inverse[f] = Some(g),
        }
        if self.inverse[g].is_none() {
            self.inverse[g] = Some(f);
        }
        Ok(())
    }

    /// Records `g ∘ f = h`.
    pub fn set_composite(&mut self, g: usize, f: usize, h: usize) -> Result<(), BuildError> {
        match self.compose.insert((g, f), h) {
            Some(old) if old != h => Err(BuildError::ConflictingComposite(
                self.mor_ids[g].clone(),
                self.mor_ids[f].clone(),
            )),
            _ => Ok(()),
        }
    }

    /// Adds `f ∘ id = f` and `id ∘ f = f` wherever the table is silent.
    pub fn fill_unit_laws(&mut self) {
        for f in 0..self.mor_ids.len() {
            if let Some(i) = self.identity.get(self.src[f]).copied().flatten() {
                self.compose.entry((f, i)).or_insert(f);
            }
            if let Some(i) = self.identity.get(self.tgt[f]).copied().flatten() {
                self.compose.entry((i, f)).or_insert(f);
            }
        }
    }

    pub fn build(self) -> Result<Groupoid, BuildError> {
        let identity = self
            .identity
            .iter()
            .enumerate()
            .map(|(x, i)| i.ok_or_else(|| BuildError::MissingIdentity(self.objects[x].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse = self
            .inverse
            .iter()
            .enumerate()
            .map(|(f, g)| g.ok_or_else(|| BuildError::MissingInverse(self.mor_ids[f].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut outgoing = vec![Vec::new(); self.objects.len()];
        for (f, &s) in self.src.iter().enumerate() {
            if s >= self.objects.len() || self.tgt[f] >= self.objects.len() {
                return Err(BuildError::UnknownObject(format!("index {s} of `{}`", self.mor_ids[f])));
            }
            outgoing[s].push(f);
        }
        Ok(Groupoid {
            objects: self.objects,
            object_index: self.object_index,
            mor_ids: self.mor_ids,
            src: self.src,
            tgt: self.tgt,
            morphism_index: self.morphism_index,
            identity,
            inverse,
            compose: self.compose,
            outgoing,
            components: OnceLock::new(),
        })
    }
}

/// A connected component of a groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Lexicographically least object id in the component.
    pub representative: usize,
    /// Members, sorted by object id.
    pub members: Vec<usize>,
    pub aut_order: usize,
    /// Only meaningful for parity groupoids; `true` for plain groupoids.
    pub orientable: bool,
}

#[derive(Debug, Clone)]
struct ComponentCache {
    list: Vec<Component>,
    of_object: Vec<usize>,
}

/// An explicit finite groupoid.
#[derive(Clone, Debug)]
pub struct Groupoid {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    mor_ids: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    morphism_index: HashMap<String, usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    components: OnceLock<ComponentCache>,
}

impl PartialEq for Groupoid {
    fn eq(&self, other: &Groupoid) -> bool {
        self.objects == other.objects
            && self.mor_ids == other.mor_ids
            && self.src == other.src
            && self.tgt == other.tgt
            && self.identity == other.identity
            && self.inverse == other.inverse
            && self.compose == other.compose
    }
}

impl Groupoid {
    pub fn empty() -> Groupoid {
        GroupoidBuilder::new().build().expect("empty groupoid")
    }

    /// The terminal groupoid with one object `*`.
    pub fn point() -> Groupoid {
        Groupoid::discrete(["*"]).expect("point")
    }

    /// A discrete groupoid; identity of `x` is named `id_x`.
    pub fn discrete<I, S>(ids: I) -> Result<Groupoid, BuildError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut b = GroupoidBuilder::new();
        for id in ids {
            let id = id.into();
            let x = b.add_object(id.clone())?;
            let f = b.add_morphism(format!("id_{id}"), x, x)?;
            b.set_identity(x, f)?;
            b.set_inverse(f, f)?;
            b.set_composite(f, f, f)?;
        }
        b.build()
    }

    /// One arrow `x~y` between every ordered pair of objects.
    pub fn indiscrete<I, S>(ids: I) -> Result<Groupoid, BuildError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut b = GroupoidBuilder::new();
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        for id in &ids {
            b.add_object(id.clone())?;
        }
        let n = ids.len();
        for x in 0..n {
            for y in 0..n {
                b.add_morphism(format!("{}~{}", ids[x], ids[y]), x, y)?;
            }
        }
        for x in 0..n {
            b.set_identity(x, x * n + x)?;
            for y in 0..n {
                b.set_inverse(x * n + y, y * n + x)?;
                for z in 0..n {
                    b.set_composite(y * n + z, x * n + y, x * n + z)?;
                }
            }
        }
        b.build()
    }

    /// `BG` on one object; arrows are the group elements and "`f` then `g`"
    /// is the product `f·g`, so `g ∘ f = f·g`.
    pub fn classifying(group: &FiniteGroup, object: &str) -> Groupoid {
        let mut b = GroupoidBuilder::new();
        let x = b.add_object(object).unwrap();
        for g in 0..group.order() {
            b.add_morphism(group.name(g), x, x).unwrap();
        }
        b.set_identity(x, group.identity()).unwrap();
        for f in 0..group.order() {
            b.set_inverse(f, group.inv(f)).unwrap();
            for g in 0..group.order() {
                b.set_composite(g, f, group.mul(f, g)).unwrap();
            }
        }
        b.build().unwrap()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.mor_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_id(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_id(&self, f: usize) -> &str {
        &self.mor_ids[f]
    }

    pub fn morphism_ids(&self) -> &[String] {
        &self.mor_ids
    }

    pub fn object(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g ∘ f`, if present in the table.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// `g ∘ f` for a composable pair of a valid groupoid.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        match self.compose.get(&(g, f)) {
            Some(&h) => h,
            None => panic!(
                "composite `{}` after `{}` missing from table",
                self.mor_ids[g], self.mor_ids[f]
            ),
        }
    }

    /// Entries `((g, f), g∘f)` of the composition table.
    pub fn composition_entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.compose.iter().map(|(&k, &v)| (k, v))
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[x].iter().copied().filter(move |&f| self.tgt[f] == y)
    }

    pub fn automorphisms(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom(x, x)
    }

    /// Every axiom of a groupoid: total and well-typed composition,
    /// identities, inverses and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let name = |f: usize| self.mor_ids[f].as_str();
        for (x, &i) in self.identity.iter().enumerate() {
            if self.src[i] != x || self.tgt[i] != x {
                report.push(Axiom::Identity, format!("identity `{}` of `{}` is not a loop there", name(i), self.objects[x]));
            }
        }
        for (&(g, f), &h) in &self.compose {
            if self.tgt[f] != self.src[g] {
                report.push(Axiom::Composition, format!("composite defined for non-composable `{}` after `{}`", name(g), name(f)));
            } else if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                report.push(
                    Axiom::Composition,
                    format!("`{}` after `{}` = `{}` has wrong source or target", name(g), name(f), name(h)),
                );
            }
        }
        for f in 0..self.mor_ids.len() {
            for &g in &self.outgoing[self.tgt[f]] {
                if !self.compose.contains_key(&(g, f)) {
                    report.push(Axiom::Composition, format!("composite `{}` after `{}` is missing", name(g), name(f)));
                }
            }
        }
        for f in 0..self.mor_ids.len() {
            let (s, t) = (self.src[f], self.tgt[f]);
            if self.compose(f, self.identity[s]) != Some(f) || self.compose(self.identity[t], f) != Some(f) {
                report.push(Axiom::Identity, format!("identities are not neutral for `{}`", name(f)));
            }
            let g = self.inverse[f];
            let ok = self.src[g] == t
                && self.tgt[g] == s
                && self.compose(g, f) == Some(self.identity[s])
                && self.compose(f, g) == Some(self.identity[t]);
            if !ok {
                report.push(Axiom::Inverse, format!("`{}` is not a two-sided inverse of `{}`", name(g), name(f)));
            }
        }
        for f in 0..self.mor_ids.len() {
            for &g in &self.outgoing[self.tgt[f]] {
                let Some(gf) = self.compose(g, f) else { continue };
                for &h in &self.outgoing[self.tgt[g]] {
                    let (Some(hg), Some(left)) = (self.compose(h, g), self.compose(h, gf)) else { continue };
                    if self.compose(hg, f) != Some(left) {
                        report.push(
                            Axiom::Associativity,
                            format!("(`{}` after `{}`) after `{}` differs from `{}` after (`{}` after `{}`)", name(h), name(g), name(f), name(h), name(g), name(f)),
                        );
                    }
                }
            }
        }
        report
    }

    fn component_cache(&self) -> &ComponentCache {
        self.components.get_or_init(|| {
            let n = self.objects.len();
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for f in 0..self.mor_ids.len() {
                let a = find(&mut parent, self.src[f]);
                let b = find(&mut parent, self.tgt[f]);
                if a != b {
                    parent[a] = b;
                }
            }
            let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
            for x in 0..n {
                let r = find(&mut parent, x);
                groups.entry(r).or_default().push(x);
            }
            let mut list: Vec<Component> = groups
                .into_values()
                .map(|mut members| {
                    members.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
                    let representative = members[0];
                    Component {
                        representative,
                        aut_order: self.automorphisms(representative).count(),
                        members,
                        orientable: true,
                    }
                })
                .collect();
            list.sort_by(|a, b| self.objects[a.representative].cmp(&self.objects[b.representative]));
            let mut of_object = vec![0; n];
            for (c, comp) in list.iter().enumerate() {
                for &x in &comp.members {
                    of_object[x] = c;
                }
            }
            ComponentCache { list, of_object }
        })
    }

    /// Connected components in canonical order (by representative id).
    pub fn components(&self) -> &[Component] {
        &self.component_cache().list
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.component_cache().of_object[x]
    }

    pub fn is_isomorphic(&self, x: usize, y: usize) -> bool {
        self.component_of(x) == self.component_of(y)
    }

    /// `Σ 1/|Aut(x)|` over components.
    pub fn homotopy_cardinality(&self) -> Rational {
        self.components().iter().fold(rational::zero(), |acc, c| acc + rational::frac(1, c.aut_order as i64))
    }

    /// Full subgroupoid on `objects`, returning the object and morphism maps
    /// from the new groupoid back into `self`.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> (Groupoid, Vec<usize>, Vec<usize>) {
        let mut keep = vec![None; self.objects.len()];
        let mut b = GroupoidBuilder::new();
        for &x in objects {
            keep[x] = Some(b.add_object(self.objects[x].clone()).unwrap());
        }
        let mut mor_map = Vec::new();
        let mut new_of = HashMap::new();
        for f in 0..self.mor_ids.len() {
            if let (Some(s), Some(t)) = (keep[self.src[f]], keep[self.tgt[f]]) {
                let nf = b.add_morphism(self.mor_ids[f].clone(), s, t).unwrap();
                new_of.insert(f, nf);
                mor_map.push(f);
            }
        }
        for &x in objects {
            b.set_identity(keep[x].unwrap(), new_of[&self.identity[x]]).unwrap();
        }
        for (&f, &nf) in &new_of {
            b.set_inverse(nf, new_of[&self.inverse[f]]).unwrap();
        }
        for (&(g, f), &h) in &self.compose {
            if let (Some(&ng), Some(&nf), Some(&nh)) = (new_of.get(&g), new_of.get(&f), new_of.get(&h)) {
                b.set_composite(ng, nf, nh).unwrap();
            }
        }
        (b.build().unwrap(), objects.to_vec(), mor_map)
    }

    /// Cartesian product; ids are `(a,b)`.
    pub fn product(&self, other: &Groupoid) -> Groupoid {
        let mut b = GroupoidBuilder::new();
        let m = other.object_count();
        for x in &self.objects {
            for y in &other.objects {
                b.add_object(format!("({x},{y})")).unwrap();
            }
        }
        let k = other.morphism_count();
        for f in 0..self.morphism_count() {
            for g in 0..k {
                let s = self.src[f] * m + other.src[g];
                let t = self.tgt[f] * m + other.tgt[g];
                b.add_morphism(format!("({},{})", self.mor_ids[f], other.mor_ids[g]), s, t).unwrap();
            }
        }
        for x in 0..self.object_count() {
            for y in 0..m {
                b.set_identity(x * m + y, self.identity[x] * k + other.identity[y]).unwrap();
            }
        }
        for f in 0..self.morphism_count() {
            for g in 0..k {
                b.set_inverse(f * k + g, self.inverse[f] * k + other.inverse[g]).unwrap();
                for &f2 in &self.outgoing[self.tgt[f]] {
                    for &g2 in &other.outgoing[other.tgt[g]] {
                        let h = self.comp(f2, f) * k + other.comp(g2, g);
                        b.set_composite(f2 * k + g2, f * k + g, h).unwrap();
                    }
                }
            }
        }
        b.build().unwrap()
    }

    /// Coproduct; ids of the summands are prefixed `0:` and `1:`.
    pub fn sum(&self, other: &Groupoid) -> Groupoid {
        let mut b = GroupoidBuilder::new();
        for (tag, g) in [(0, self), (1, other)] {
            let obj_off = b.object_count();
            let mor_off = b.morphism_count();
            for x in &g.objects {
                b.add_object(format!("{tag}:{x}")).unwrap();
            }
            for f in 0..g.morphism_count() {
                b.add_morphism(format!("{tag}:{}", g.mor_ids[f]), g.src[f] + obj_off, g.tgt[f] + obj_off).unwrap();
            }
            for x in 0..g.object_count() {
                b.set_identity(x + obj_off, g.identity[x] + mor_off).unwrap();
            }
            for f in 0..g.morphism_count() {
                b.set_inverse(f + mor_off, g.inverse[f] + mor_off).unwrap();
            }
            for (&(p, q), &r) in &g.compose {
                b.set_composite(p + mor_off, q + mor_off, r + mor_off).unwrap();
            }
        }
        b.build().unwrap()
    }
}

/// A finite groupoid with a parity structure.
#[derive(Clone, Debug)]
pub struct ParityGroupoid {
    groupoid: Groupoid,
    parity: Vec<Sign>,
    orientable: OnceLock<Vec<bool>>,
}

impl PartialEq for ParityGroupoid {
    fn eq(&self, other: &ParityGroupoid) -> bool {
        self.groupoid == other.groupoid && self.parity == other.parity
    }
}

impl Deref for ParityGroupoid {
    type Target = Groupoid;

    fn deref(&self) -> &Groupoid {
        &self.groupoid
    }
}

/// Result of [`ParityGroupoid::enumerate_orientations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientations {
    /// `2^k` for `k` components.
    pub count: BigUint,
    /// One orientation: a sign per object with `ω_x · par(a) = ω_y` for `a: x → y`.
    pub witness: Vec<Sign>,
}

impl ParityGroupoid {
    pub fn new(groupoid: Groupoid, parity: Vec<Sign>) -> Result<ParityGroupoid, BuildError> {
        if parity.len() != groupoid.morphism_count() {
            return Err(BuildError::ParityLength { expected: groupoid.morphism_count(), got: parity.len() });
        }
        Ok(ParityGroupoid { groupoid, parity, orientable: OnceLock::new() })
    }

    /// All arrows even.
    pub fn even(groupoid: Groupoid) -> ParityGroupoid {
        let parity = vec![Sign::Plus; groupoid.morphism_count()];
        ParityGroupoid::new(groupoid, parity).unwrap()
    }

    pub fn empty() -> ParityGroupoid {
        ParityGroupoid::even(Groupoid::empty())
    }

    /// The trivial parity structure `e` on the point.
    pub fn point() -> ParityGroupoid {
        ParityGroupoid::even(Groupoid::point())
    }

    pub fn discrete<I, S>(ids: I) -> Result<ParityGroupoid, BuildError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(ParityGroupoid::even(Groupoid::discrete(ids)?))
    }

    /// `BG` with parity given by a homomorphism `G → {±1}`.
    pub fn classifying(group: &FiniteGroup, parity: &[Sign], object: &str) -> ParityGroupoid {
        ParityGroupoid::new(Groupoid::classifying(group, object), parity.to_vec()).unwrap()
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn parity(&self, f: usize) -> Sign {
        self.parity[f]
    }

    pub fn parities(&self) -> &[Sign] {
        &self.parity
    }

    /// Groupoid axioms plus multiplicativity of the parity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.groupoid.validate();
        let g = &self.groupoid;
        for x in 0..g.object_count() {
            if self.parity[g.identity(x)] != Sign::Plus {
                report.push(Axiom::Parity, format!("identity of `{}` is odd", g.object_id(x)));
            }
        }
        for f in 0..g.morphism_count() {
            if self.parity[g.inverse(f)] != self.parity[f] {
                report.push(Axiom::Parity, format!("`{}` and its inverse have different parity", g.morphism_id(f)));
            }
        }
        for ((h, f), hf) in g.composition_entries() {
            if self.parity[hf] != self.parity[h] * self.parity[f] {
                report.push(
                    Axiom::Parity,
                    format!("parity of `{}` after `{}` is not the product", g.morphism_id(h), g.morphism_id(f)),
                );
            }
        }
        report
    }

    fn orientable_flags(&self) -> &[bool] {
        self.orientable.get_or_init(|| {
            self.groupoid
                .components()
                .iter()
                .map(|c| {
                    c.members
                        .iter()
                        .all(|&x| self.groupoid.automorphisms(x).all(|a| self.parity[a] == Sign::Plus))
                })
                .collect()
        })
    }

    /// Components with `orientable` set: no member has an odd automorphism.
    pub fn pi0(&self) -> Vec<Component> {
        let flags = self.orientable_flags();
        self.groupoid
            .components()
            .iter()
            .zip(flags)
            .map(|(c, &o)| Component { orientable: o, ..c.clone() })
            .collect()
    }

    pub fn is_orientable_object(&self, x: usize) -> bool {
        self.orientable_flags()[self.groupoid.component_of(x)]
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable_flags().iter().all(|&o| o)
    }

    /// Representatives of orientable components, in canonical order. These
    /// index the basis of the associated vector space.
    pub fn basepoints(&self) -> Vec<usize> {
        self.pi0().into_iter().filter(|c| c.orientable).map(|c| c.representative).collect()
    }

    /// Full subgroupoid on the orientable components, with object and
    /// morphism maps back into `self`.
    pub fn orientable_locus(&self) -> (ParityGroupoid, Vec<usize>, Vec<usize>) {
        let mut objects: Vec<usize> = (0..self.object_count()).filter(|&x| self.is_orientable_object(x)).collect();
        objects.sort();
        let (g, obj_map, mor_map) = self.groupoid.full_subgroupoid(&objects);
        let parity = mor_map.iter().map(|&f| self.parity[f]).collect();
        (ParityGroupoid::new(g, parity).unwrap(), obj_map, mor_map)
    }

    /// `None` if some component has an odd automorphism; otherwise the
    /// number of orientations and the one that is `+1` on every representative.
    pub fn enumerate_orientations(&self) -> Option<Orientations> {
        let g = &self.groupoid;
        let mut omega: Vec<Option<Sign>> = vec![None; g.object_count()];
        for comp in g.components() {
            omega[comp.representative] = Some(Sign::Plus);
            let mut stack = vec![comp.representative];
            while let Some(x) = stack.pop() {
                let wx = omega[x].unwrap();
                for &a in g.outgoing(x) {
                    let y = g.tgt(a);
                    let wy = wx * self.parity[a];
                    match omega[y] {
                        None => {
                            omega[y] = Some(wy);
                            stack.push(y);
                        }
                        Some(w) if w != wy => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Orientations {
            count: BigUint::from(1u32) << g.components().len(),
            witness: omega.into_iter().map(|w| w.unwrap()).collect(),
        })
    }

    pub fn disjoint_sum(&self, other: &ParityGroupoid) -> ParityGroupoid {
        let g = self.groupoid.sum(&other.groupoid);
        let parity = self.parity.iter().chain(other.parity.iter()).copied().collect();
        ParityGroupoid::new(g, parity).unwrap()
    }

    /// Convolution product: the product groupoid with parity `par(a)·par(b)`.
    pub fn star_product(&self, other: &ParityGroupoid) -> ParityGroupoid {
        let g = self.groupoid.product(&other.groupoid);
        let k = other.morphism_count();
        let parity = (0..self.morphism_count())
            .flat_map(|f| (0..k).map(move |h| (f, h)))
            .map(|(f, h)| self.parity[f] * other.parity[h])
            .collect();
        ParityGroupoid::new(g, parity).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sign_parity_bs2() -> ParityGroupoid {
        let c2 = FiniteGroup::cyclic(2);
        ParityGroupoid::classifying(&c2, &[Sign::Plus, Sign::Minus], "*")
    }

    #[test]
    fn discrete_is_valid() {
        let g = ParityGroupoid::discrete(["x", "y"]).unwrap();
        assert!(g.validate().is_valid());
    }

    #[test]
    fn sign_parity_bs2_is_valid_but_odd_identity_is_not() {
        assert!(sign_parity_bs2().validate().is_valid());
        let c2 = FiniteGroup::cyclic(2);
        let bad = ParityGroupoid::new(Groupoid::classifying(&c2, "*"), vec![Sign::Minus, Sign::Minus]).unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violations().iter().any(|v| v.axiom == Axiom::Parity && v.detail.contains("identity")));
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut b = GroupoidBuilder::new();
        let x = b.add_object("x").unwrap();
        let i = b.add_morphism("i", x, x).unwrap();
        let t = b.add_morphism("t", x, x).unwrap();
        b.set_identity(x, i).unwrap();
        b.set_inverse(t, t).unwrap();
        b.set_inverse(i, i).unwrap();
        b.fill_unit_laws();
        let g = b.build().unwrap();
        let report = g.validate();
        assert!(report.violates(Axiom::Composition));
        assert!(report.violates(Axiom::Inverse));
    }

    #[test]
    fn pi0_examples() {
        let d = ParityGroupoid::discrete(["y", "x"]).unwrap();
        let comps = d.pi0();
        assert_eq!(comps.len(), 2);
        assert_eq!(d.object_id(comps[0].representative), "x");
        assert!(comps.iter().all(|c| c.aut_order == 1 && c.orientable));

        let c4 = ParityGroupoid::classifying(&FiniteGroup::cyclic(4), &[Sign::Plus; 4], "*");
        let comps = c4.pi0();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].aut_order, 4);
        assert!(comps[0].orientable);

        let comps = sign_parity_bs2().pi0();
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].orientable);
    }

    #[test]
    fn homotopy_cardinality_examples() {
        assert_eq!(ParityGroupoid::empty().homotopy_cardinality(), frac(0, 1));
        assert_eq!(sign_parity_bs2().homotopy_cardinality(), frac(1, 2));
        let s3 = FiniteGroup::symmetric(3);
        let bs3 = ParityGroupoid::classifying(&s3, &vec![Sign::Plus; 6], "*");
        let three = ParityGroupoid::discrete(["a", "b", "c"]).unwrap();
        // 3 + 1/6, summed by hand from the definition
        assert_eq!(three.disjoint_sum(&bs3).homotopy_cardinality(), frac(19, 6));
    }

    #[test]
    fn orientations() {
        let d = ParityGroupoid::discrete(["x", "y"]).unwrap();
        assert_eq!(d.enumerate_orientations().unwrap().count, BigUint::from(4u32));
        assert!(sign_parity_bs2().enumerate_orientations().is_none());

        // one component x ≅ y through an odd arrow
        let mut b = GroupoidBuilder::new();
        let x = b.add_object("x").unwrap();
        let y = b.add_object("y").unwrap();
        let ix = b.add_morphism("ix", x, x).unwrap();
        let iy = b.add_morphism("iy", y, y).unwrap();
        let a = b.add_morphism("a", x, y).unwrap();
        let a_inv = b.add_morphism("a'", y, x).unwrap();
        b.set_identity(x, ix).unwrap();
        b.set_identity(y, iy).unwrap();
        b.set_inverse(ix, ix).unwrap();
        b.set_inverse(iy, iy).unwrap();
        b.set_inverse(a, a_inv).unwrap();
        b.set_composite(a_inv, a, ix).unwrap();
        b.set_composite(a, a_inv, iy).unwrap();
        b.fill_unit_laws();
        let g = ParityGroupoid::new(b.build().unwrap(), vec![Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus]).unwrap();
        assert!(g.validate().is_valid());
        let o = g.enumerate_orientations().unwrap();
        assert_eq!(o.count, BigUint::from(2u32));
        assert_eq!(o.witness[x], -o.witness[y]);
        for f in 0..g.morphism_count() {
            assert_eq!(o.witness[g.src(f)] * g.parity(f), o.witness[g.tgt(f)]);
        }
    }

    #[test]
    fn orientable_locus_examples() {
        let (locus, _, _) = sign_parity_bs2().orientable_locus();
        assert!(locus.is_empty());
        let d = ParityGroupoid::discrete(["x", "y"]).unwrap();
        let (locus, _, _) = d.orientable_locus();
        assert_eq!(locus, d);
    }

    #[test]
    fn sum_and_product_basics() {
        let one = ParityGroupoid::discrete(["p"]).unwrap();
        let two = one.disjoint_sum(&one);
        assert_eq!(two.object_count(), 2);
        assert!(two.validate().is_valid());
        assert_eq!(two.pi0().len(), 2);
        let g = sign_parity_bs2();
        let with_empty = g.disjoint_sum(&ParityGroupoid::empty());
        assert_eq!(with_empty.object_count(), g.object_count());
        assert_eq!(with_empty.homotopy_cardinality(), g.homotopy_cardinality());

        let unit = g.star_product(&ParityGroupoid::point());
        assert!(unit.validate().is_valid());
        assert_eq!(unit.morphism_count(), g.morphism_count());
        assert_eq!(unit.parities(), g.parities());

        // BΣ₂(sign) ∗ BΣ₂(sign): one component with four automorphisms
        let sq = g.star_product(&g);
        assert!(sq.validate().is_valid());
        let comps = sq.pi0();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].aut_order, 4);
        let odd = sq.morphism("(r1,r0)").unwrap();
        assert_eq!(sq.parity(odd), Sign::Minus);
        assert_eq!(sq.parity(sq.morphism("(r1,r1)").unwrap()), Sign::Plus);
    }
}
