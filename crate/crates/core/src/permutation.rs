use std::fmt;

use crate::sign::Sign;

/// A bijection of `{0, .., k-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Returns `None` unless `images` is a bijection onto `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Option<Permutation> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn identity(k: usize) -> Permutation {
        Permutation((0..k).collect())
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut cycles = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The image under the sign homomorphism `Σ_k → {±1}`.
    pub fn sign(&self) -> Sign {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// All permutations of degree `k` in lexicographic order of image arrays.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    /// Cycle notation with 1-based letters, fixed points omitted; `id` for the identity.
    pub fn cycle_word(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let letters: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", letters.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_word())
    }
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}
