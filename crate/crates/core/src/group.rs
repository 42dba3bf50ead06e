//! Finite groups given by multiplication tables.

use thiserror::Error;

use crate::permutation::Permutation;
use crate::sign::Sign;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("multiplication table is not {0}x{0}")]
    TableShape(usize),
    #[error("table entry out of range at ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("associativity fails for ({0}, {1}, {2})")]
    Associativity(String, String, String),
    #[error("duplicate element name {0}")]
    DuplicateElement(String),
    #[error("parity is not a homomorphism at ({0}, {1})")]
    ParityNotHomomorphism(String, String),
}

/// A finite group; `mul(a, b)` is the product `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(GroupError::DuplicateElement(a.clone()));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::TableShape(n));
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::OutOfRange(a, b));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GroupError::NoInverse(names[a].clone()))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::Associativity(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// `C_n` with elements `r0 .. r{n-1}` (`r0` the identity).
    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n).map(|i| format!("r{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(names, table).expect("cyclic group table")
    }

    /// `Σ_k` with elements named by cycle words; the product is composition `a ∘ b`.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let perms = Permutation::all(k);
        let names = perms.iter().map(|p| p.cycle_word()).collect();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = a.compose(b);
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(names, table).expect("symmetric group table")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Checks that `parity` is a homomorphism to `{±1}`.
    pub fn check_parity(&self, parity: &[Sign]) -> Result<(), GroupError> {
        if parity.len() != self.order() {
            return Err(GroupError::TableShape(self.order()));
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if parity[self.mul(a, b)] != parity[a] * parity[b] {
                    return Err(GroupError::ParityNotHomomorphism(self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        Ok(())
    }

    /// Every homomorphism to `{±1}`, trivial one first.
    pub fn parity_homomorphisms(&self) -> Vec<Vec<Sign>> {
        // brute force over sign vectors is fine for the small catalog groups
        let n = self.order();
        if n > 16 {
            return vec![vec![Sign::Plus; n]];
        }
        (0u32..(1 << n))
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                    .collect::<Vec<_>>()
            })
            .filter(|p| self.check_parity(p).is_ok())
            .collect()
    }

    /// All group homomorphisms `self → target`, as element maps.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = self.order();
        let m = target.order();
        let mut out = Vec::new();
        let mut current = vec![0usize; n];
        // exhaustive search; catalog groups have order <= 6
        fn rec(
            src: &FiniteGroup,
            tgt: &FiniteGroup,
            i: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            m: usize,
        ) {
            if i == current.len() {
                let ok = (0..current.len()).all(|a| {
                    (0..current.len()).all(|b| current[src.mul(a, b)] == tgt.mul(current[a], current[b]))
                });
                if ok {
                    out.push(current.clone());
                }
                return;
            }
            for v in 0..m {
                current[i] = v;
                rec(src, tgt, i + 1, current, out, m);
            }
        }
        if m.checked_pow(n as u32).map_or(true, |c| c > 1_000_000) {
            // trivial homomorphism only for oversized searches
            return vec![vec![target.identity(); n]];
        }
        rec(self, target, 0, &mut current, &mut out, m);
        out
    }
}
