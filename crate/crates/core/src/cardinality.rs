//! The signed cardinality functor: spans to exact rational matrices.

use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::groupoid::ParityGroupoid;
use crate::rational::{self, Rational};
use crate::sign::Sign;
use crate::span::{PSpan, SpanError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix text: {0}")]
    Parse(String),
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    Dimensions(usize, usize, usize, usize),
    #[error("matrix is not square")]
    NotSquare,
}

/// Exact rational matrix with labeled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

/// Exact rational row vector over a labeled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    pub basis: Vec<String>,
    pub entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: Vec<String>, cols: Vec<String>) -> RationalMatrix {
        let entries = vec![vec![rational::zero(); cols.len()]; rows.len()];
        RationalMatrix { rows, cols, entries }
    }

    pub fn identity(labels: Vec<String>) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(labels.clone(), labels);
        for i in 0..m.rows.len() {
            m.entries[i][i] = rational::one();
        }
        m
    }

    /// Unlabeled matrix from small integers; labels are `0, 1, ...`.
    pub fn from_integers(rows: &[Vec<i64>]) -> RationalMatrix {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        RationalMatrix {
            rows: (0..n).map(|i| i.to_string()).collect(),
            cols: (0..m).map(|i| i.to_string()).collect(),
            entries: rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect(),
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn checked_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, MatrixError> {
        if self.col_count() != other.row_count() {
            return Err(MatrixError::Dimensions(self.row_count(), self.col_count(), other.row_count(), other.col_count()));
        }
        let mut out = RationalMatrix::zeros(self.rows.clone(), other.cols.clone());
        for i in 0..self.row_count() {
            for k in 0..self.col_count() {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.col_count() {
                    let term = &self.entries[i][k] * &other.entries[k][j];
                    out.entries[i][j] += term;
                }
            }
        }
        Ok(out)
    }

    /// Entries only, as `[[a,b],[c,d]]`.
    pub fn entries_text(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(rational::format).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Parses the text produced by `Display`.
    pub fn parse(text: &str) -> Result<RationalMatrix, MatrixError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<Vec<String>, MatrixError> {
            let line = lines.next().ok_or_else(|| MatrixError::Parse(format!("missing `{key}` line")))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| MatrixError::Parse(format!("expected `{key}` line, got `{line}`")))?;
            parse_labels(rest)
        };
        let rows = header("rows:")?;
        let cols = header("cols:")?;
        let body: String = lines.collect::<Vec<_>>().join("");
        let entries = parse_entries(&body)?;
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(MatrixError::Parse("entry shape does not match labels".into()));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }
}

fn render_label(s: &str) -> String {
    if s.is_empty() || s.chars().any(char::is_whitespace) || s.starts_with('"') {
        serde_json::to_string(s).expect("strings serialize")
    } else {
        s.to_string()
    }
}

fn parse_labels(s: &str) -> Result<Vec<String>, MatrixError> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        if rest.starts_with('"') {
            let mut de = serde_json::Deserializer::from_str(rest).into_iter::<String>();
            let label = de
                .next()
                .ok_or_else(|| MatrixError::Parse("unterminated label".into()))?
                .map_err(|e| MatrixError::Parse(e.to_string()))?;
            let used = de.byte_offset();
            out.push(label);
            rest = rest[used..].trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(rest[..end].to_string());
            rest = rest[end..].trim_start();
        }
    }
    Ok(out)
}

fn parse_entries(body: &str) -> Result<Vec<Vec<Rational>>, MatrixError> {
    let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| MatrixError::Parse("entries must be enclosed in brackets".into()))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let inner = inner
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| MatrixError::Parse("rows must be enclosed in brackets".into()))?;
    inner
        .split("],[")
        .map(|row| {
            if row.is_empty() {
                return Ok(Vec::new());
            }
            row.split(',')
                .map(|e| rational::parse(e).ok_or_else(|| MatrixError::Parse(format!("bad entry `{e}`"))))
                .collect()
        })
        .collect()
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = |v: &[String]| v.iter().map(|s| render_label(s)).collect::<Vec<_>>().join(" ");
        writeln!(f, "rows: {}", labels(&self.rows))?;
        writeln!(f, "cols: {}", labels(&self.cols))?;
        writeln!(f, "{}", self.entries_text())
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|q| -q).collect()).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.basis.iter().map(|s| render_label(s)).collect();
        writeln!(f, "basis: {}", labels.join(" "))?;
        let entries: Vec<String> = self.entries.iter().map(rational::format).collect();
        writeln!(f, "[{}]", entries.join(","))
    }
}

fn basis_labels(g: &ParityGroupoid) -> (Vec<usize>, Vec<String>) {
    let points = g.basepoints();
    let labels = points.iter().map(|&x| g.object_id(x).to_string()).collect();
    (points, labels)
}

/// Entry `(i, j)` is `‖ᵢMⱼ‖ / |Aut(j)|`, over orientable basepoints only.
pub fn matrix_of_span(sp: &PSpan) -> RationalMatrix {
    let (rows, row_labels) = basis_labels(sp.left());
    let (cols, col_labels) = basis_labels(sp.right());
    let mut m = RationalMatrix::zeros(row_labels, col_labels);
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            let aut_j = sp.right().automorphisms(j).count() as i64;
            m.entries[r][c] = sp.two_sided_fiber(i, j).scalar.cardinality() / rational::int(aut_j);
        }
    }
    m
}

/// The same matrix computed without building fibers: each apex component
/// `[m]` over orientable `i`, `j` contributes `ρ(m)·par(α)·par(β)·|Aut i|/|Aut m|`
/// to entry `(i, j)`.
pub fn matrix_by_components(sp: &PSpan) -> RationalMatrix {
    let (s, t) = (sp.left(), sp.right());
    let (rows, row_labels) = basis_labels(s);
    let (cols, col_labels) = basis_labels(t);
    let mut m = RationalMatrix::zeros(row_labels, col_labels);
    for comp in sp.apex().components() {
        let x = comp.representative;
        let (lx, rx) = (sp.left_map().objects[x], sp.right_map().objects[x]);
        let Some(r) = rows.iter().position(|&i| s.is_isomorphic(i, lx)) else { continue };
        let Some(c) = cols.iter().position(|&j| t.is_isomorphic(j, rx)) else { continue };
        let alpha = s.hom(lx, rows[r]).next().expect("isomorphic objects");
        let beta = t.hom(rx, cols[c]).next().expect("isomorphic objects");
        let sign = sp.rho(x) * s.parity(alpha) * t.parity(beta);
        let aut_i = s.automorphisms(rows[r]).count() as i64;
        let term = rational::frac(aut_i, comp.aut_order as i64);
        match sign {
            Sign::Plus => m.entries[r][c] += term,
            Sign::Minus => m.entries[r][c] -= term,
        }
    }
    m
}

/// `‖X_j‖ / |Aut(j)|` for a state `1 ← X → J`.
pub fn projection_coefficient(st: &PSpan, j: usize) -> Result<Rational, SpanError> {
    if !st.is_state() {
        return Err(SpanError::NotAState);
    }
    let t = st.right();
    if !t.is_orientable_object(j) {
        return Err(SpanError::NotOrientable(t.object_id(j).to_string()));
    }
    let aut_j = t.automorphisms(j).count() as i64;
    Ok(st.two_sided_fiber(0, j).scalar.cardinality() / rational::int(aut_j))
}

pub fn vector_of_state(st: &PSpan) -> Result<RationalVector, SpanError> {
    let (points, basis) = basis_labels(st.right());
    let entries = points.iter().map(|&j| projection_coefficient(st, j)).collect::<Result<_, _>>()?;
    Ok(RationalVector { basis, entries })
}

/// A place where the matrix of a composite differs from the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityFailure {
    pub row: String,
    pub col: String,
    pub composite: Rational,
    pub product: Rational,
}

/// `Ok(None)` when the matrix of `a ∘ b` equals the product of the matrices.
pub fn check_functoriality(a: &PSpan, b: &PSpan) -> Result<Option<FunctorialityFailure>, SpanError> {
    let composite = matrix_of_span(&a.compose(b)?);
    let product = &matrix_of_span(a) * &matrix_of_span(b);
    for i in 0..composite.row_count() {
        for j in 0..composite.col_count() {
            if composite.entries[i][j] != product.entries[i][j] {
                return Ok(Some(FunctorialityFailure {
                    row: composite.rows[i].clone(),
                    col: composite.cols[j].clone(),
                    composite: composite.entries[i][j].clone(),
                    product: product.entries[i][j].clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CancellationError {
    #[error("the involution is not sign-reversing at point {0}")]
    NotSignReversing(usize),
    #[error("the involution does not respect components at point {0}")]
    NotOnComponents(usize),
    #[error("paired components {0} and {1} have different automorphism groups")]
    AutMismatch(usize, usize),
    #[error("the pairing is not a bijection")]
    NotBijective,
}

/// Pairing of positive with negative components of the fiber at `(i, j)`
/// induced by `(α, m, β) ↦ (α, m, g ∘ β)` for the first odd automorphism `g`
/// of `j`. `None` when `j` has no odd automorphism.
pub fn odd_involution_pairing(
    sp: &PSpan,
    i: usize,
    j: usize,
) -> Option<Result<Vec<(usize, usize)>, CancellationError>> {
    let t = sp.right();
    let g = t.automorphisms(j).find(|&a| t.parity(a) == Sign::Minus)?;
    let fiber = sp.two_sided_fiber(i, j);
    let groupoid = fiber.scalar.groupoid();
    let comps = groupoid.components();
    let mut image = vec![None; comps.len()];
    for (p, &(alpha, m, beta)) in fiber.points.iter().enumerate() {
        let q = fiber.point_index(alpha, m, t.comp(g, beta)).expect("fiber is closed under the involution");
        if fiber.scalar.sign(q) != -fiber.scalar.sign(p) {
            return Some(Err(CancellationError::NotSignReversing(p)));
        }
        let (cp, cq) = (groupoid.component_of(p), groupoid.component_of(q));
        match image[cp] {
            None => image[cp] = Some(cq),
            Some(c) if c != cq => return Some(Err(CancellationError::NotOnComponents(p))),
            Some(_) => {}
        }
    }
    let mut pairs = Vec::new();
    let mut hit = vec![false; comps.len()];
    for (c, target) in image.iter().enumerate() {
        let target = target.expect("every component has a point");
        if comps[c].aut_order != comps[target].aut_order {
            return Some(Err(CancellationError::AutMismatch(c, target)));
        }
        if fiber.scalar.component_sign(c) == Sign::Plus {
            if hit[target] {
                return Some(Err(CancellationError::NotBijective));
            }
            hit[target] = true;
            pairs.push((c, target));
        }
    }
    let negatives = (0..comps.len()).filter(|&c| fiber.scalar.component_sign(c) == Sign::Minus).count();
    if pairs.len() != negatives || (0..comps.len()).any(|c| image[image[c].unwrap()] != Some(c)) {
        return Some(Err(CancellationError::NotBijective));
    }
    Some(Ok(pairs))
}

/// Every entry is an integer.
pub fn is_integral(m: &RationalMatrix) -> bool {
    m.entries.iter().flatten().all(|q| q.is_integer())
}

pub fn is_identity(m: &RationalMatrix) -> bool {
    m.is_square()
        && m.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, q)| if i == j { q.is_one() } else { q.is_zero() }))
}
