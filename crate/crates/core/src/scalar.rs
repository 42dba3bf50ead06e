//! Scalars: finite groupoids with a sign on each connected component.

use std::fmt;

use thiserror::Error;

use crate::groupoid::Groupoid;
use crate::rational::{self, Rational};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{got} signs for {expected} objects")]
    Length { expected: usize, got: usize },
    #[error("sign is not constant on the component of `{0}`")]
    NotConstant(String),
}

/// A scalar `Ŝ = S⊕ ⊔ S⊖`, stored as a groupoid with one sign per object.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedGroupoid {
    groupoid: Groupoid,
    signs: Vec<Sign>,
}

/// Multiset of `(sign, |Aut|)` over components, sorted.
///
/// Two equivalent scalars have equal fingerprints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub Vec<(Sign, usize)>);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(s, a)| format!("({s},{a})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl SignedGroupoid {
    pub fn new(groupoid: Groupoid, signs: Vec<Sign>) -> Result<SignedGroupoid, ScalarError> {
        if signs.len() != groupoid.object_count() {
            return Err(ScalarError::Length { expected: groupoid.object_count(), got: signs.len() });
        }
        for f in 0..groupoid.morphism_count() {
            if signs[groupoid.src(f)] != signs[groupoid.tgt(f)] {
                return Err(ScalarError::NotConstant(groupoid.object_id(groupoid.src(f)).to_string()));
            }
        }
        Ok(SignedGroupoid { groupoid, signs })
    }

    /// Every component gets `sign`.
    pub fn uniform(groupoid: Groupoid, sign: Sign) -> SignedGroupoid {
        let signs = vec![sign; groupoid.object_count()];
        SignedGroupoid { groupoid, signs }
    }

    pub fn empty() -> SignedGroupoid {
        SignedGroupoid::uniform(Groupoid::empty(), Sign::Plus)
    }

    /// The unit scalar `1`.
    pub fn one() -> SignedGroupoid {
        SignedGroupoid::uniform(Groupoid::point(), Sign::Plus)
    }

    /// The scalar `-1`: the point with negative sign.
    pub fn minus_one() -> SignedGroupoid {
        SignedGroupoid::uniform(Groupoid::point(), Sign::Minus)
    }

    /// The terminal scalar `{⊕, ⊖}`.
    pub fn terminal() -> SignedGroupoid {
        SignedGroupoid::new(Groupoid::discrete(["+", "-"]).unwrap(), vec![Sign::Plus, Sign::Minus]).unwrap()
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn sign(&self, x: usize) -> Sign {
        self.signs[x]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn component_sign(&self, c: usize) -> Sign {
        self.signs[self.groupoid.components()[c].representative]
    }

    /// `‖S⊕‖ − ‖S⊖‖`.
    pub fn cardinality(&self) -> Rational {
        self.groupoid.components().iter().fold(rational::zero(), |acc, c| {
            let term = rational::frac(1, c.aut_order as i64);
            match self.signs[c.representative] {
                Sign::Plus => acc + term,
                Sign::Minus => acc - term,
            }
        })
    }

    fn part(&self, sign: Sign) -> Groupoid {
        let objects: Vec<usize> = (0..self.groupoid.object_count()).filter(|&x| self.signs[x] == sign).collect();
        self.groupoid.full_subgroupoid(&objects).0
    }

    /// `(S⊕, S⊖)` as full subgroupoids.
    pub fn sign_split(&self) -> (Groupoid, Groupoid) {
        (self.part(Sign::Plus), self.part(Sign::Minus))
    }

    pub fn negative(&self) -> SignedGroupoid {
        SignedGroupoid { groupoid: self.groupoid.clone(), signs: self.signs.iter().map(|&s| -s).collect() }
    }

    /// Product groupoid with signs multiplied.
    pub fn multiply(&self, other: &SignedGroupoid) -> SignedGroupoid {
        let groupoid = self.groupoid.product(&other.groupoid);
        let signs = self.signs.iter().flat_map(|&a| other.signs.iter().map(move |&b| a * b)).collect();
        SignedGroupoid { groupoid, signs }
    }

    /// Disjoint union; ids prefixed `0:` and `1:`.
    pub fn sum(&self, other: &SignedGroupoid) -> SignedGroupoid {
        let groupoid = self.groupoid.sum(&other.groupoid);
        let signs = self.signs.iter().chain(&other.signs).copied().collect();
        SignedGroupoid { groupoid, signs }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut v: Vec<(Sign, usize)> =
            self.groupoid.components().iter().map(|c| (self.signs[c.representative], c.aut_order)).collect();
        v.sort();
        Fingerprint(v)
    }

    /// Like [`SignedGroupoid::fingerprint`] but also recording the number of
    /// objects in each component. Not invariant under equivalence.
    pub fn detailed_fingerprint(&self) -> Vec<(Sign, usize, usize)> {
        let mut v: Vec<(Sign, usize, usize)> = self
            .groupoid
            .components()
            .iter()
            .map(|c| (self.signs[c.representative], c.aut_order, c.members.len()))
            .collect();
        v.sort();
        v
    }
}
