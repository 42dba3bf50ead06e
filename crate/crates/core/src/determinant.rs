//! Determinants of endo-spans as top exterior powers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cardinality::RationalMatrix;
use crate::exterior::{exterior_power_span, ExteriorError, ExteriorSpan};
use crate::groupoid::ParityGroupoid;
use crate::permutation::Permutation;
use crate::rational::{self, Rational};
use crate::scalar::{Fingerprint, SignedGroupoid};
use crate::sign::Sign;
use crate::span::PSpan;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error(transparent)]
    Budget(#[from] ExteriorError),
    #[error("determinant needs an endo-span")]
    NotEndo,
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("basepoints are not one per orientable component")]
    BadBasepoints,
    #[error("determinant oracles disagree: Leibniz {leibniz}, elimination {elimination}")]
    OracleDisagreement { leibniz: String, elimination: String },
}

/// One basepoint per orientable component, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basepoints {
    pub points: Vec<usize>,
    pub aut_product: u64,
}

impl Basepoints {
    pub fn of(x: &ParityGroupoid) -> Basepoints {
        let points = x.basepoints();
        let aut_product = points.iter().map(|&p| x.automorphisms(p).count() as u64).product();
        Basepoints { points, aut_product }
    }
}

/// Number of orientable components.
pub fn top_degree(x: &ParityGroupoid) -> usize {
    x.basepoints().len()
}

/// `Λⁿ` of the span, `n` the top degree of its foot.
pub fn det_span(sp: &PSpan, budget: u64) -> Result<ExteriorSpan, DetError> {
    if !sp.is_endo() {
        return Err(DetError::NotEndo);
    }
    Ok(exterior_power_span(sp, top_degree(sp.left()), budget)?)
}

/// The fiber of the determinant span at `(x̄, x̄)` for the given ordering of basepoints.
pub fn det_fiber_at(sp: &PSpan, points: &[usize], budget: u64) -> Result<(ExteriorSpan, crate::span::Fiber), DetError> {
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut canonical = sp.left().basepoints();
    canonical.sort();
    if sorted != canonical {
        return Err(DetError::BadBasepoints);
    }
    let det = det_span(sp, budget)?;
    let xbar = det.left.power.tuple_index(points);
    let fiber = det.span.two_sided_fiber(xbar, xbar);
    Ok((det, fiber))
}

/// `‖x̄ Det x̄‖ / |x̄!|`.
pub fn det_cardinality(sp: &PSpan, budget: u64) -> Result<Rational, DetError> {
    det_cardinality_at(sp, &sp.left().basepoints(), budget)
}

/// As [`det_cardinality`], with the basepoints taken in the given order.
pub fn det_cardinality_at(sp: &PSpan, points: &[usize], budget: u64) -> Result<Rational, DetError> {
    let (_, fiber) = det_fiber_at(sp, points, budget)?;
    let aut = Basepoints::of(sp.left()).aut_product;
    Ok(fiber.scalar.cardinality() / Rational::from_integer(BigInt::from(aut)))
}

/// `Σ_σ sign(σ) Π_i ᵢA_{σ(i)}`, built from fibers of the span itself.
pub fn leibniz_scalar(sp: &PSpan) -> Result<SignedGroupoid, DetError> {
    Ok(leibniz_terms(sp)?.into_values().fold(SignedGroupoid::empty(), |acc, term| acc.sum(&term)))
}

/// The summands of [`leibniz_scalar`], keyed by permutation.
pub fn leibniz_terms(sp: &PSpan) -> Result<BTreeMap<Permutation, SignedGroupoid>, DetError> {
    if !sp.is_endo() {
        return Err(DetError::NotEndo);
    }
    let points = sp.left().basepoints();
    let n = points.len();
    let fibers: Vec<Vec<SignedGroupoid>> =
        points.iter().map(|&i| points.iter().map(|&j| sp.two_sided_fiber(i, j).scalar).collect()).collect();
    let mut terms = BTreeMap::new();
    for sigma in Permutation::all(n) {
        let product = (0..n).fold(SignedGroupoid::one(), |acc, i| acc.multiply(&fibers[i][sigma.apply(i)]));
        let term = if sigma.sign() == Sign::Minus { product.negative() } else { product };
        terms.insert(sigma, term);
    }
    Ok(terms)
}

/// Per permutation block, the fingerprint of the determinant fiber at `x̄`.
///
/// Each point `(α, m⃗, β)` carries `perm(β) ∘ perm(α)⁻¹`; this is checked to
/// be constant on components.
pub fn det_fiber_blocks(sp: &PSpan, budget: u64) -> Result<BTreeMap<Permutation, Fingerprint>, String> {
    let (det, fiber) = det_fiber_at(sp, &sp.left().basepoints(), budget).map_err(|e| e.to_string())?;
    let g = fiber.scalar.groupoid();
    let mut block_of = vec![None; g.components().len()];
    for (p, &(alpha, _, beta)) in fiber.points.iter().enumerate() {
        let rel = det.right.power.permutation(beta).compose(&det.left.power.permutation(alpha).inverse());
        let c = g.component_of(p);
        match &block_of[c] {
            None => block_of[c] = Some(rel),
            Some(existing) if *existing != rel => {
                return Err(format!("component {c} mixes permutations {existing} and {rel}"));
            }
            Some(_) => {}
        }
    }
    let mut blocks: BTreeMap<Permutation, Vec<(Sign, usize)>> = BTreeMap::new();
    for (c, comp) in g.components().iter().enumerate() {
        let sigma = block_of[c].clone().expect("components are nonempty");
        blocks.entry(sigma).or_default().push((fiber.scalar.component_sign(c), comp.aut_order));
    }
    Ok(blocks
        .into_iter()
        .map(|(s, mut v)| {
            v.sort();
            (s, Fingerprint(v))
        })
        .collect())
}

/// Exact determinant by both naive Leibniz summation (up to 6x6) and
/// fraction-free elimination; the two must agree.
pub fn classical_det(m: &RationalMatrix) -> Result<Rational, DetError> {
    if !m.is_square() {
        return Err(DetError::NotSquare(m.row_count(), m.col_count()));
    }
    let elimination = bareiss_det(&m.entries);
    if m.row_count() <= 6 {
        let leibniz = leibniz_det(&m.entries);
        if leibniz != elimination {
            return Err(DetError::OracleDisagreement {
                leibniz: rational::format(&leibniz),
                elimination: rational::format(&elimination),
            });
        }
    }
    Ok(elimination)
}

/// `Σ_σ sign(σ) Π a_{i,σ(i)}`.
pub fn leibniz_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    Permutation::all(n).iter().fold(rational::zero(), |acc, sigma| {
        let term = (0..n).fold(rational::one(), |p, i| p * &a[i][sigma.apply(i)]);
        match sigma.sign() {
            Sign::Plus => acc + term,
            Sign::Minus => acc - term,
        }
    })
}

/// Bareiss elimination after scaling each row to integers.
pub fn bareiss_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            scale *= &l;
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Rational::new(sign * &m[n - 1][n - 1], scale)
}

/// One listed element of a fiber-table cell: a representative point of a
/// component of the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellElement {
    /// Apex tuple, entries joined by `·`.
    pub element: String,
    pub permutation: Permutation,
    pub sign: Sign,
    pub aut_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCell {
    pub row: String,
    pub col: String,
    pub elements: Vec<CellElement>,
    /// Signed cardinality of the fiber, not divided by `|Aut|`.
    pub net: Rational,
    pub material: bool,
}

/// All two-sided fibers of `Λᵏ` of an endo-span, one cell per pair of
/// components of the feet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTable {
    pub k: usize,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub cells: Vec<FiberCell>,
}

impl FiberTable {
    pub fn cell(&self, row: &str, col: &str) -> Option<&FiberCell> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    /// One line per listed element: row, column, element, permutation, sign.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells {
            for e in &cell.elements {
                out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", cell.row, cell.col, e.element, e.permutation, e.sign));
            }
        }
        out
    }
}

impl fmt::Display for FiberTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                self.cols
                    .iter()
                    .map(|c| {
                        let cell = self.cell(r, c).expect("every cell is present");
                        let items: Vec<String> =
                            cell.elements.iter().map(|e| format!("({},{}){}", e.element, e.permutation, e.sign)).collect();
                        let mark = if cell.material { "" } else { "~" };
                        format!("{mark}{{{}}}={}", items.join(" "), rational::format(&cell.net))
                    })
                    .collect()
            })
            .collect();
        let row_width = self.rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols.len())
            .map(|c| {
                rendered
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain(std::iter::once(self.cols[c].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let header: Vec<String> = self.cols.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
        writeln!(f, "{} | {}", pad("", row_width), header.join(" | ").trim_end())?;
        for (r, row) in self.rows.iter().zip(&rendered) {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
            writeln!(f, "{} | {}", pad(r, row_width), cells.join(" | ").trim_end())?;
        }
        writeln!(f, "(~ marks immaterial cells)")
    }
}

pub fn fiber_table(sp: &PSpan, k: usize, budget: u64) -> Result<FiberTable, DetError> {
    if !sp.is_endo() {
        return Err(DetError::NotEndo);
    }
    let ext = exterior_power_span(sp, k, budget)?;
    let (s, t) = (ext.span.left(), ext.span.right());
    let row_points: Vec<usize> = s.pi0().iter().map(|c| c.representative).collect();
    let col_points: Vec<usize> = t.pi0().iter().map(|c| c.representative).collect();
    let apex = &ext.apex;
    let base_apex = sp.apex();
    let mut cells = Vec::new();
    for &i in &row_points {
        for &j in &col_points {
            let fiber = ext.span.two_sided_fiber(i, j);
            let g = fiber.scalar.groupoid();
            let mut elements = Vec::new();
            for (c, comp) in g.components().iter().enumerate() {
                let rep = comp
                    .members
                    .iter()
                    .copied()
                    .min_by_key(|&p| {
                        let (alpha, m, beta) = fiber.points[p];
                        (!s.is_identity(alpha), apex.groupoid.object_id(m).to_string(), t.morphism_id(beta).to_string())
                    })
                    .expect("components are nonempty");
                let (alpha, m, beta) = fiber.points[rep];
                let element: Vec<&str> = apex.tuple(m).iter().map(|&x| base_apex.object_id(x)).collect();
                let permutation =
                    ext.right.power.permutation(beta).compose(&ext.left.power.permutation(alpha).inverse());
                elements.push(CellElement {
                    element: element.join("·"),
                    permutation,
                    sign: fiber.scalar.component_sign(c),
                    aut_order: comp.aut_order,
                });
            }
            elements.sort_by(|a, b| (&a.element, &a.permutation).cmp(&(&b.element, &b.permutation)));
            cells.push(FiberCell {
                row: s.object_id(i).to_string(),
                col: t.object_id(j).to_string(),
                elements,
                net: fiber.scalar.cardinality(),
                material: s.is_orientable_object(i) && t.is_orientable_object(j),
            });
        }
    }
    Ok(FiberTable {
        k,
        rows: row_points.iter().map(|&i| s.object_id(i).to_string()).collect(),
        cols: col_points.iter().map(|&j| t.object_id(j).to_string()).collect(),
        cells,
    })
}
