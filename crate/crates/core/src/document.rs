//! JSON documents holding named groupoids, spans and group actions.
//!
//! ```json
//! {
//!   "groupoids": {
//!     "X":  { "discrete": ["x", "y"] },
//!     "BG": { "group": { "elements": ["e", "t"], "table": [["e", "t"], ["t", "e"]], "parity": [1, -1] } },
//!     "A":  { "objects": ["a"], "morphisms": [{ "id": "id_a", "src": "a", "tgt": "a" }] }
//!   },
//!   "spans": {
//!     "S": { "left": "X", "right": "X", "apex": "A",
//!            "left_map": { "objects": { "a": "x" } }, "right_map": { "objects": { "a": "y" } },
//!            "rho": { "a": -1 } }
//!   }
//! }
//! ```
//!
//! Compositions are triples `[f, g, h]` meaning `g ∘ f = h`. Identities may be
//! omitted from functor morphism maps, and an object `x` whose identity is not
//! listed uses the loop `id_x`. A fully specified span may give `epsilon` and
//! `epsilon_prime` instead of `rho`; then `ρ = ε' · ε`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::GroupAction;
use crate::group::FiniteGroup;
use crate::groupoid::{BuildError, Groupoid, GroupoidBuilder, ParityGroupoid, ValidationReport};
use crate::sign::Sign;
use crate::span::{Functor, PSpan};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{context}: {message}")]
    Semantic { context: String, message: String },
    #[error("{context} is invalid:\n{report}")]
    Invalid { context: String, report: ValidationReport },
    #[error("no {kind} named `{name}`")]
    Missing { kind: &'static str, name: String },
}

fn semantic(context: impl Into<String>, message: impl ToString) -> DocumentError {
    DocumentError::Semantic { context: context.into(), message: message.to_string() }
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    groupoids: BTreeMap<String, RawGroupoid>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    spans: BTreeMap<String, RawSpan>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    actions: BTreeMap<String, RawAction>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum RawGroupoid {
    Discrete(RawDiscrete),
    Group(RawGroupGroupoid),
    Explicit(RawExplicit),
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawDiscrete {
    discrete: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawGroupGroupoid {
    group: RawGroup,
    #[serde(default = "default_object")]
    object: String,
}

fn default_object() -> String {
    "*".to_string()
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parity: Option<Vec<Sign>>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawExplicit {
    objects: Vec<String>,
    morphisms: Vec<RawMorphism>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    inverses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    compositions: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    id: String,
    src: String,
    tgt: String,
    #[serde(default)]
    parity: Sign,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum RawApex {
    Named(String),
    Inline(RawGroupoid),
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawFunctor {
    objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    morphisms: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawSpan {
    left: String,
    right: String,
    apex: RawApex,
    left_map: RawFunctor,
    right_map: RawFunctor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<BTreeMap<String, Sign>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<BTreeMap<String, Sign>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon_prime: Option<BTreeMap<String, Sign>>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawAction {
    group: RawGroup,
    target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    objects: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    morphisms: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    theta: BTreeMap<String, BTreeMap<String, Sign>>,
}

/// A span together with the names it was declared with.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanEntry {
    pub left: String,
    pub right: String,
    pub apex: Option<String>,
    pub span: PSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionEntry {
    pub target: String,
    pub action: GroupAction,
}

/// A parsed and validated document.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub groupoids: BTreeMap<String, Arc<ParityGroupoid>>,
    pub spans: BTreeMap<String, SpanEntry>,
    pub actions: BTreeMap<String, ActionEntry>,
}

/// Rejects ids that could make derived ids ambiguous: empty ids, unbalanced
/// brackets, and `,`, `|` or `;` outside brackets.
pub fn check_id(id: &str) -> Result<(), String> {
    if id.trim().is_empty() {
        return Err("ids must be non-empty".into());
    }
    let mut stack = Vec::new();
    for c in id.chars() {
        match c {
            '(' | '[' | '<' | '{' => stack.push(c),
            ')' | ']' | '>' | '}' => {
                let open = match c {
                    ')' => '(',
                    ']' => '[',
                    '>' => '<',
                    _ => '{',
                };
                if stack.pop() != Some(open) {
                    return Err(format!("id `{id}` has unbalanced brackets"));
                }
            }
            ',' | '|' | ';' if stack.is_empty() => {
                return Err(format!("id `{id}` contains `{c}` outside brackets"));
            }
            _ => {}
        }
    }
    if stack.is_empty() {
        Ok(())
    } else {
        Err(format!("id `{id}` has unbalanced brackets"))
    }
}

fn parse_group(raw: &RawGroup, context: &str) -> Result<(FiniteGroup, Vec<Sign>), DocumentError> {
    for e in &raw.elements {
        check_id(e).map_err(|m| semantic(context, m))?;
    }
    let index: BTreeMap<&str, usize> = raw.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let table = raw
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| index.get(e.as_str()).copied().ok_or_else(|| semantic(context, format!("unknown element `{e}`"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group = FiniteGroup::from_table(raw.elements.clone(), table).map_err(|e| semantic(context, e))?;
    let parity = raw.parity.clone().unwrap_or_else(|| vec![Sign::Plus; group.order()]);
    group.check_parity(&parity).map_err(|e| semantic(context, e))?;
    Ok((group, parity))
}

fn build_err(context: &str, e: BuildError) -> DocumentError {
    semantic(context, e)
}

fn parse_groupoid(raw: &RawGroupoid, context: &str) -> Result<ParityGroupoid, DocumentError> {
    match raw {
        RawGroupoid::Discrete(d) => {
            for x in &d.discrete {
                check_id(x).map_err(|m| semantic(context, m))?;
            }
            ParityGroupoid::discrete(d.discrete.iter().cloned()).map_err(|e| build_err(context, e))
        }
        RawGroupoid::Group(g) => {
            check_id(&g.object).map_err(|m| semantic(context, m))?;
            let (group, parity) = parse_group(&g.group, context)?;
            Ok(ParityGroupoid::classifying(&group, &parity, &g.object))
        }
        RawGroupoid::Explicit(e) => {
            let mut b = GroupoidBuilder::new();
            for x in &e.objects {
                check_id(x).map_err(|m| semantic(context, m))?;
                b.add_object(x.clone()).map_err(|e| build_err(context, e))?;
            }
            let mut parity = Vec::new();
            for m in &e.morphisms {
                check_id(&m.id).map_err(|msg| semantic(context, msg))?;
                let s = b.object(&m.src).map_err(|e| build_err(context, e))?;
                let t = b.object(&m.tgt).map_err(|e| build_err(context, e))?;
                b.add_morphism(m.id.clone(), s, t).map_err(|e| build_err(context, e))?;
                parity.push(m.parity);
            }
            for (i, x) in e.objects.iter().enumerate() {
                let f = match e.identities.get(x) {
                    Some(f) => b.morphism(f).map_err(|e| build_err(context, e))?,
                    None => match b.morphism(&format!("id_{x}")) {
                        Ok(f) => f,
                        Err(_) => {
                            parity.push(Sign::Plus);
                            b.add_morphism(format!("id_{x}"), i, i).map_err(|e| build_err(context, e))?
                        }
                    },
                };
                b.set_identity(i, f).map_err(|e| build_err(context, e))?;
            }
            for obj in e.identities.keys() {
                b.object(obj).map_err(|e| build_err(context, e))?;
            }
            let mut table = Vec::new();
            for [f, g, h] in &e.compositions {
                let ids = [f, g, h].map(|m| b.morphism(m));
                let [f, g, h] = ids;
                let (f, g, h) = (
                    f.map_err(|e| build_err(context, e))?,
                    g.map_err(|e| build_err(context, e))?,
                    h.map_err(|e| build_err(context, e))?,
                );
                b.set_composite(g, f, h).map_err(|e| build_err(context, e))?;
                table.push((f, g, h));
            }
            b.fill_unit_laws();
            for (f, g) in &e.inverses {
                let f = b.morphism(f).map_err(|e| build_err(context, e))?;
                let g = b.morphism(g).map_err(|e| build_err(context, e))?;
                b.set_inverse(f, g).map_err(|e| build_err(context, e))?;
            }
            // inverses not listed are read off the composition table
            let mut identity_of = vec![None; e.objects.len()];
            for (i, x) in e.objects.iter().enumerate() {
                identity_of[i] = Some(match e.identities.get(x) {
                    Some(f) => b.morphism(f).unwrap(),
                    None => b.morphism(&format!("id_{x}")).unwrap(),
                });
            }
            let is_identity: Vec<bool> =
                (0..b.morphism_count()).map(|f| identity_of.contains(&Some(f))).collect();
            for f in (e.morphisms.len()..b.morphism_count()).filter(|&f| is_identity[f]) {
                let _ = b.set_inverse(f, f);
            }
            for (i, m) in e.morphisms.iter().enumerate() {
                if e.inverses.contains_key(&m.id) || e.inverses.values().any(|v| v == &m.id) {
                    continue;
                }
                if is_identity[i] {
                    let _ = b.set_inverse(i, i);
                    continue;
                }
                let found = table.iter().find(|&&(f, _, h)| f == i && is_identity[h]).map(|&(_, g, _)| g);
                if let Some(g) = found {
                    let _ = b.set_inverse(i, g);
                }
            }
            let g = b.build().map_err(|e| build_err(context, e))?;
            ParityGroupoid::new(g, parity).map_err(|e| build_err(context, e))
        }
    }
}

fn parse_functor(
    raw: &RawFunctor,
    apex: &Groupoid,
    foot: &ParityGroupoid,
    context: &str,
) -> Result<Functor, DocumentError> {
    let mut objects = Vec::with_capacity(apex.object_count());
    for x in apex.object_ids() {
        let image = raw.objects.get(x).ok_or_else(|| semantic(context, format!("object `{x}` is not mapped")))?;
        objects.push(foot.object(image).ok_or_else(|| semantic(context, format!("unknown foot object `{image}`")))?);
    }
    for x in raw.objects.keys() {
        if apex.object(x).is_none() {
            return Err(semantic(context, format!("unknown apex object `{x}`")));
        }
    }
    for f in raw.morphisms.keys() {
        if apex.morphism(f).is_none() {
            return Err(semantic(context, format!("unknown apex morphism `{f}`")));
        }
    }
    let mut morphisms = Vec::with_capacity(apex.morphism_count());
    for (f, id) in apex.morphism_ids().iter().enumerate() {
        let image = match raw.morphisms.get(id) {
            Some(image) => {
                foot.morphism(image).ok_or_else(|| semantic(context, format!("unknown foot morphism `{image}`")))?
            }
            None if apex.is_identity(f) => foot.identity(objects[apex.src(f)]),
            None => return Err(semantic(context, format!("morphism `{id}` is not mapped"))),
        };
        morphisms.push(image);
    }
    Ok(Functor { objects, morphisms })
}

fn sign_map(map: &BTreeMap<String, Sign>, apex: &Groupoid, context: &str) -> Result<Vec<Sign>, DocumentError> {
    for x in map.keys() {
        if apex.object(x).is_none() {
            return Err(semantic(context, format!("sign given for unknown apex object `{x}`")));
        }
    }
    Ok(apex.object_ids().iter().map(|x| map.get(x).copied().unwrap_or(Sign::Plus)).collect())
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut doc = Document::default();
        for (name, g) in &raw.groupoids {
            let context = format!("groupoid `{name}`");
            let pg = parse_groupoid(g, &context)?;
            let report = pg.validate();
            if !report.is_valid() {
                return Err(DocumentError::Invalid { context, report });
            }
            doc.groupoids.insert(name.clone(), Arc::new(pg));
        }
        for (name, s) in &raw.spans {
            let context = format!("span `{name}`");
            let foot = |n: &str| {
                doc.groupoids.get(n).cloned().ok_or_else(|| semantic(&context, format!("unknown groupoid `{n}`")))
            };
            let (left, right) = (foot(&s.left)?, foot(&s.right)?);
            let (apex, apex_name) = match &s.apex {
                RawApex::Named(n) => (foot(n)?.groupoid().clone(), Some(n.clone())),
                RawApex::Inline(g) => {
                    let pg = parse_groupoid(g, &format!("apex of {context}"))?;
                    let report = pg.validate();
                    if !report.is_valid() {
                        return Err(DocumentError::Invalid { context: format!("apex of {context}"), report });
                    }
                    (pg.groupoid().clone(), None)
                }
            };
            let left_map = parse_functor(&s.left_map, &apex, &left, &format!("left map of {context}"))?;
            let right_map = parse_functor(&s.right_map, &apex, &right, &format!("right map of {context}"))?;
            let rho = match (&s.rho, &s.epsilon, &s.epsilon_prime) {
                (Some(rho), None, None) => sign_map(rho, &apex, &context)?,
                (None, None, None) => vec![Sign::Plus; apex.object_count()],
                (None, Some(eps), Some(eps_prime)) => {
                    let e = sign_map(eps, &apex, &context)?;
                    let ep = sign_map(eps_prime, &apex, &context)?;
                    e.iter().zip(&ep).map(|(&a, &b)| a * b).collect()
                }
                _ => return Err(semantic(&context, "give either `rho` or both `epsilon` and `epsilon_prime`")),
            };
            let span = PSpan::new(left, right, apex, left_map, right_map, rho).map_err(|e| semantic(&context, e))?;
            let report = span.validate();
            if !report.is_valid() {
                return Err(DocumentError::Invalid { context, report });
            }
            doc.spans.insert(
                name.clone(),
                SpanEntry { left: s.left.clone(), right: s.right.clone(), apex: apex_name, span },
            );
        }
        for (name, a) in &raw.actions {
            let context = format!("action `{name}`");
            let target = doc
                .groupoids
                .get(&a.target)
                .cloned()
                .ok_or_else(|| semantic(&context, format!("unknown groupoid `{}`", a.target)))?;
            let (group, _) = parse_group(&a.group, &context)?;
            let action = parse_action(a, group, &target, &context)?;
            let report = action.validate();
            if !report.is_valid() {
                return Err(DocumentError::Invalid { context, report });
            }
            doc.actions.insert(name.clone(), ActionEntry { target: a.target.clone(), action });
        }
        Ok(doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Document, DocumentError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| DocumentError::Io { path: path.display().to_string(), source })?;
        Document::parse(&text)
    }

    pub fn groupoid(&self, name: &str) -> Result<&Arc<ParityGroupoid>, DocumentError> {
        self.groupoids.get(name).ok_or_else(|| DocumentError::Missing { kind: "groupoid", name: name.into() })
    }

    pub fn span(&self, name: &str) -> Result<&PSpan, DocumentError> {
        self.spans
            .get(name)
            .map(|e| &e.span)
            .ok_or_else(|| DocumentError::Missing { kind: "span", name: name.into() })
    }

    pub fn action(&self, name: &str) -> Result<&GroupAction, DocumentError> {
        self.actions
            .get(name)
            .map(|e| &e.action)
            .ok_or_else(|| DocumentError::Missing { kind: "action", name: name.into() })
    }

    /// Adds a span, registering its feet under the given names if absent.
    pub fn insert_span(&mut self, name: &str, left: &str, right: &str, span: PSpan) {
        let left_foot = self.groupoids.entry(left.to_string()).or_insert_with(|| span.left().clone()).clone();
        let right_foot = self.groupoids.entry(right.to_string()).or_insert_with(|| span.right().clone()).clone();
        let span = PSpan::new(
            left_foot,
            right_foot,
            span.apex().clone(),
            span.left_map().clone(),
            span.right_map().clone(),
            span.rhos().to_vec(),
        )
        .expect("span shapes are unchanged");
        self.spans.insert(name.to_string(), SpanEntry { left: left.into(), right: right.into(), apex: None, span });
    }

    /// Explicit-form JSON; parsing it back yields an equal document.
    pub fn to_json(&self) -> String {
        let mut raw = RawDocument::default();
        for (name, g) in &self.groupoids {
            raw.groupoids.insert(name.clone(), RawGroupoid::Explicit(explicit(g)));
        }
        for (name, entry) in &self.spans {
            let sp = &entry.span;
            let apex = sp.apex();
            let apex_raw = match &entry.apex {
                Some(n) => RawApex::Named(n.clone()),
                None => RawApex::Inline(RawGroupoid::Explicit(explicit(&ParityGroupoid::even(apex.clone())))),
            };
            let functor = |f: &Functor, foot: &ParityGroupoid| RawFunctor {
                objects: (0..apex.object_count())
                    .map(|x| (apex.object_id(x).to_string(), foot.object_id(f.objects[x]).to_string()))
                    .collect(),
                morphisms: (0..apex.morphism_count())
                    .map(|a| (apex.morphism_id(a).to_string(), foot.morphism_id(f.morphisms[a]).to_string()))
                    .collect(),
            };
            raw.spans.insert(
                name.clone(),
                RawSpan {
                    left: entry.left.clone(),
                    right: entry.right.clone(),
                    apex: apex_raw,
                    left_map: functor(sp.left_map(), sp.left()),
                    right_map: functor(sp.right_map(), sp.right()),
                    rho: Some((0..apex.object_count()).map(|x| (apex.object_id(x).to_string(), sp.rho(x))).collect()),
                    epsilon: None,
                    epsilon_prime: None,
                },
            );
        }
        for (name, entry) in &self.actions {
            let a = &entry.action;
            let x = &a.target;
            let grp = &a.group;
            let per_element = |f: &dyn Fn(usize) -> BTreeMap<String, String>| {
                (0..grp.order()).map(|g| (grp.name(g).to_string(), f(g))).collect()
            };
            raw.actions.insert(
                name.clone(),
                RawAction {
                    group: RawGroup {
                        elements: grp.names().to_vec(),
                        table: grp.table().iter().map(|r| r.iter().map(|&c| grp.name(c).to_string()).collect()).collect(),
                        parity: None,
                    },
                    target: entry.target.clone(),
                    objects: per_element(&|g| {
                        (0..x.object_count())
                            .map(|o| (x.object_id(o).to_string(), x.object_id(a.on_objects[g][o]).to_string()))
                            .collect()
                    }),
                    morphisms: per_element(&|g| {
                        (0..x.morphism_count())
                            .map(|f| (x.morphism_id(f).to_string(), x.morphism_id(a.on_morphisms[g][f]).to_string()))
                            .collect()
                    }),
                    theta: (0..grp.order())
                        .map(|g| {
                            let row = (0..x.object_count()).map(|o| (x.object_id(o).to_string(), a.theta[g][o])).collect();
                            (grp.name(g).to_string(), row)
                        })
                        .collect(),
                },
            );
        }
        let mut text = serde_json::to_string_pretty(&raw).expect("documents serialize");
        text.push('\n');
        text
    }
}

fn parse_action(
    raw: &RawAction,
    group: FiniteGroup,
    target: &Arc<ParityGroupoid>,
    context: &str,
) -> Result<GroupAction, DocumentError> {
    let x = target.as_ref();
    let n = group.order();
    let element = |name: &String| group.index_of(name).ok_or_else(|| semantic(context, format!("unknown element `{name}`")));
    let mut on_objects: Vec<Vec<usize>> = vec![(0..x.object_count()).collect(); n];
    let mut on_morphisms: Vec<Vec<usize>> = vec![(0..x.morphism_count()).collect(); n];
    let parity = raw.group.parity.clone().unwrap_or_else(|| vec![Sign::Plus; n]);
    if parity.len() != n {
        return Err(semantic(context, format!("parity lists {} signs for {n} elements", parity.len())));
    }
    let mut theta: Vec<Vec<Sign>> = parity.iter().map(|&p| vec![p; x.object_count()]).collect();
    for (g, map) in &raw.objects {
        let g = element(g)?;
        for (o, image) in map {
            let o = x.object(o).ok_or_else(|| semantic(context, format!("unknown object `{o}`")))?;
            on_objects[g][o] = x.object(image).ok_or_else(|| semantic(context, format!("unknown object `{image}`")))?;
        }
    }
    for (g, map) in &raw.morphisms {
        let g = element(g)?;
        for (f, image) in map {
            let f = x.morphism(f).ok_or_else(|| semantic(context, format!("unknown morphism `{f}`")))?;
            on_morphisms[g][f] =
                x.morphism(image).ok_or_else(|| semantic(context, format!("unknown morphism `{image}`")))?;
        }
    }
    // identities follow the object map unless given
    for (g, moved) in on_morphisms.iter_mut().enumerate() {
        let given = raw.morphisms.get(group.name(g));
        for o in 0..x.object_count() {
            let id = x.identity(o);
            if given.map_or(true, |m| !m.contains_key(x.morphism_id(id))) {
                moved[id] = x.identity(on_objects[g][o]);
            }
        }
    }
    for (g, map) in &raw.theta {
        let g = element(g)?;
        for (o, s) in map {
            let o = x.object(o).ok_or_else(|| semantic(context, format!("unknown object `{o}`")))?;
            theta[g][o] = *s;
        }
    }
    Ok(GroupAction { group, target: x.clone(), on_objects, on_morphisms, theta })
}

fn explicit(g: &ParityGroupoid) -> RawExplicit {
    let mut compositions: Vec<((usize, usize), usize)> = g.composition_entries().collect();
    compositions.sort();
    RawExplicit {
        objects: g.object_ids().to_vec(),
        morphisms: (0..g.morphism_count())
            .map(|f| RawMorphism {
                id: g.morphism_id(f).to_string(),
                src: g.object_id(g.src(f)).to_string(),
                tgt: g.object_id(g.tgt(f)).to_string(),
                parity: g.parity(f),
            })
            .collect(),
        identities: (0..g.object_count())
            .map(|x| (g.object_id(x).to_string(), g.morphism_id(g.identity(x)).to_string()))
            .collect(),
        inverses: (0..g.morphism_count())
            .map(|f| (g.morphism_id(f).to_string(), g.morphism_id(g.inverse(f)).to_string()))
            .collect(),
        compositions: compositions
            .into_iter()
            .map(|((a, b), c)| [g.morphism_id(b).to_string(), g.morphism_id(a).to_string(), g.morphism_id(c).to_string()])
            .collect(),
    }
}
