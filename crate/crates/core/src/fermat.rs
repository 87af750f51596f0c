//! Characters of the Fermat hypersurface `Σ x_i^d`: eigen-monomials, Hodge
//! types, Galois orbits and formal rational Hodge classes.
//!
//! Everything is exponent arithmetic modulo `d`; roots of unity never appear.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian::{HomogeneousPolynomial, Monomial};
use crate::scalar::Scalar;

/// Element `(a_0, …, a_n)` of `(Z/d)^{n+1}`; those with `Σ a_i ≡ 0` form `Ĝ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character {
    pub d: u32,
    pub entries: Vec<u32>,
}

impl Character {
    pub fn new(d: u32, entries: Vec<u32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidCharacter(format!("modulus {d} < 2")));
        }
        Ok(Character {
            d,
            entries: entries.into_iter().map(|a| a % d).collect(),
        })
    }

    /// `Σ a_i ≡ 0 (mod d)`.
    pub fn in_g_hat(&self) -> bool {
        self.entries.iter().map(|&a| a as u64).sum::<u64>() % self.d as u64 == 0
    }

    pub fn nvars(&self) -> usize {
        self.entries.len()
    }

    /// `t·α`, the Galois action of `σ_t`.
    pub fn scale(&self, t: u32) -> Character {
        Character {
            d: self.d,
            entries: self.entries.iter().map(|&a| (a as u64 * t as u64 % self.d as u64) as u32).collect(),
        }
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.entries.iter().all(|&a| a != 0)
    }

    /// Galois orbit `{t·α : gcd(t, d) = 1}`.
    pub fn orbit(&self) -> GaloisOrbit {
        let members: BTreeSet<Character> = units(self.d).map(|t| self.scale(t)).collect();
        GaloisOrbit {
            members: members.into_iter().collect(),
        }
    }

    /// Concatenated digits, e.g. `22221111`; entries are separated by `.` when `d > 10`.
    pub fn digits(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        parts.join(if self.d > 10 { "." } else { "" })
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn units(d: u32) -> impl Iterator<Item = u32> {
    (1..d).filter(move |t| t.gcd(&d) == 1)
}

/// Character of the eigen-monomial `m`: entries `b_i + 1 mod d`.
pub fn monomial_character(m: &Monomial, d: u32) -> Result<Character> {
    if d < 2 || m.exps().iter().any(|&e| e + 2 > d) {
        return Err(Error::NotReducedMonomial(format!("{m} for d = {d}")));
    }
    Ok(Character {
        d,
        entries: m.exps().iter().map(|&b| (b + 1) % d).collect(),
    })
}

/// Inverse of [`monomial_character`]: exponents `a_i - 1`.
pub fn character_monomial(alpha: &Character) -> Result<Monomial> {
    if !alpha.is_nonvanishing() {
        return Err(Error::InvalidCharacter(format!("{alpha} has a zero entry")));
    }
    Ok(Monomial::new(alpha.entries.iter().map(|&a| a - 1).collect()))
}

/// `(p, q)` with `Σ a_i = d(q+1)`, `a_i ∈ [1, d-1]`, `p = nvars - 2 - q`.
pub fn hodge_type(alpha: &Character) -> Result<(usize, usize)> {
    if !alpha.is_nonvanishing() {
        return Err(Error::InvalidCharacter(format!("{alpha} has a zero entry")));
    }
    let s: u64 = alpha.entries.iter().map(|&a| a as u64).sum();
    let d = alpha.d as u64;
    if !s.is_multiple_of(d) || alpha.nvars() < 2 {
        return Err(Error::InvalidCharacter(format!("{alpha}: sum {s} not divisible by {d}")));
    }
    let q = (s / d - 1) as usize;
    let m = alpha.nvars() - 2;
    if q > m {
        return Err(Error::InvalidCharacter(format!("{alpha}: q = {q} exceeds dimension {m}")));
    }
    Ok((m - q, q))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisOrbit {
    /// Sorted lexicographically; the first member is the least one.
    pub members: Vec<Character>,
}

impl GaloisOrbit {
    pub fn least(&self) -> &Character {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: &Character) -> bool {
        self.members.binary_search(c).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEnumeration {
    pub characters: Vec<Character>,
    pub orbits: Vec<GaloisOrbit>,
}

/// All non-vanishing characters of type `(p, q)` and the Galois orbits through them.
pub fn enumerate_type(d: u32, nvars: usize, (p, q): (usize, usize)) -> Result<TypeEnumeration> {
    if nvars < 2 || p + q != nvars - 2 {
        return Err(Error::OutOfRange(format!("type ({p},{q}) with {nvars} variables")));
    }
    if d < 2 {
        return Err(Error::InvalidCharacter(format!("modulus {d} < 2")));
    }
    let k = (q as i64 + 1) * d as i64 - nvars as i64;
    let mut characters: Vec<Character> = if k < 0 {
        Vec::new()
    } else {
        Monomial::bounded_of_degree(nvars, k as u32, d.saturating_sub(2))
            .iter()
            .map(|m| monomial_character(m, d))
            .collect::<Result<_>>()?
    };
    characters.sort();
    let orbits: BTreeSet<GaloisOrbit> = characters.iter().map(Character::orbit).collect();
    Ok(TypeEnumeration {
        characters,
        orbits: orbits.into_iter().collect(),
    })
}

/// One `symbol · eigen-monomial` summand of a rational class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummand {
    pub symbol: String,
    pub monomial: Monomial,
    pub character: Character,
    pub hodge_type: (usize, usize),
}

/// Galois-invariant sum of formal eigenvectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicClass {
    pub summands: Vec<ClassSummand>,
    /// Type of the orbit's least member.
    pub hodge_type: (usize, usize),
    /// Set for d > 3, where orbits have more than two members and the
    /// induced Hodge structure on the eigenspaces is untested.
    pub experimental: bool,
}

impl SymbolicClass {
    /// `Σ symbol · monomial` as a polynomial with symbolic coefficients.
    pub fn to_polynomial(&self) -> HomogeneousPolynomial {
        let first = &self.summands[0].monomial;
        HomogeneousPolynomial::from_terms(
            first.nvars(),
            first.degree(),
            self.summands.iter().map(|s| (s.monomial.clone(), Scalar::sym(&s.symbol))),
        )
        .expect("orbit monomials share one degree")
    }
}

/// The pinned period symbols for the two distinguished sixfold orbits.
fn pinned_symbol(c: &Character) -> Option<&'static str> {
    const TABLE: [(&[u32], &str); 4] = [
        (&[2, 2, 2, 2, 1, 1, 1, 1], "A"),
        (&[1, 1, 1, 1, 2, 2, 2, 2], "C"),
        (&[2, 2, 2, 1, 2, 1, 1, 1], "B"),
        (&[1, 1, 1, 2, 1, 2, 2, 2], "D"),
    ];
    if c.d != 3 {
        return None;
    }
    TABLE.iter().find(|(e, _)| *e == c.entries.as_slice()).map(|(_, s)| *s)
}

/// The rational class `Σ_{α' ∈ orbit} P_{α'}` with one fresh symbol per member.
pub fn rational_class(orbit: &GaloisOrbit) -> Result<SymbolicClass> {
    let least = orbit.least();
    if least.d < 3 {
        return Err(Error::InvalidCharacter(format!(
            "d = {} gives self-conjugate orbits; d ≥ 3 required",
            least.d
        )));
    }
    let mut summands = Vec::new();
    for t in units(least.d) {
        let c = least.scale(t);
        if summands.iter().any(|s: &ClassSummand| s.character == c) {
            continue;
        }
        if !orbit.contains(&c) {
            return Err(Error::InvalidCharacter(format!("{c} missing from the orbit of {least}")));
        }
        let symbol = pinned_symbol(&c)
            .map(str::to_string)
            .unwrap_or_else(|| format!("P_{}_{}", least.digits().replace('.', "_"), t));
        summands.push(ClassSummand {
            symbol,
            monomial: character_monomial(&c)?,
            hodge_type: hodge_type(&c)?,
            character: c,
        });
    }
    summands.sort_by(|a, b| a.monomial.cmp(&b.monomial));
    Ok(SymbolicClass {
        hodge_type: hodge_type(least)?,
        summands,
        experimental: least.d > 3,
    })
}

pub fn alpha() -> Character {
    Character::new(3, vec![2, 2, 2, 2, 1, 1, 1, 1]).expect("valid")
}

pub fn beta() -> Character {
    Character::new(3, vec![2, 2, 2, 1, 2, 1, 1, 1]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_monomials() {
        let m = Monomial::from_indices(8, &[0, 1, 2, 3]);
        assert_eq!(monomial_character(&m, 3).unwrap(), alpha());
        assert_eq!(character_monomial(&alpha()).unwrap(), m);
        let two = Monomial::from_indices(8, &[4, 5, 6, 7]);
        assert_eq!(monomial_character(&two, 3).unwrap(), alpha().scale(2));
        assert!(matches!(
            monomial_character(&Monomial::new(vec![2, 0, 0]), 3),
            Err(Error::NotReducedMonomial(_))
        ));
        let one = monomial_character(&Monomial::one(8), 3).unwrap();
        assert_eq!(one.entries, vec![1; 8]);
        assert!(!one.in_g_hat());
        assert!(alpha().in_g_hat());
    }

    #[test]
    fn types() {
        assert_eq!(hodge_type(&alpha()).unwrap(), (3, 3));
        let c = Character::new(3, vec![2, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(hodge_type(&c).unwrap(), (4, 2));
        let c = Character::new(3, vec![1, 1, 1, 1, 1, 1, 1, 2]).unwrap();
        assert_eq!(hodge_type(&c).unwrap(), (4, 2));
        assert!(hodge_type(&Character::new(3, vec![0, 1, 2]).unwrap()).is_err());
        assert!(hodge_type(&Character::new(3, vec![1; 8]).unwrap()).is_err());
    }

    #[test]
    fn census() {
        let t = enumerate_type(3, 8, (3, 3)).unwrap();
        assert_eq!((t.characters.len(), t.orbits.len()), (70, 35));
        assert!(t.orbits.iter().all(|o| o.len() == 2));
        let t = enumerate_type(3, 8, (4, 2)).unwrap();
        assert_eq!((t.characters.len(), t.orbits.len()), (8, 8));
        assert!(enumerate_type(3, 8, (6, 0)).unwrap().characters.is_empty());
    }

    #[test]
    fn distinguished_classes() {
        let c = rational_class(&alpha().orbit()).unwrap();
        assert_eq!(c.to_polynomial().to_string(), "A*x0*x1*x2*x3 + C*x4*x5*x6*x7");
        let c = rational_class(&beta().orbit()).unwrap();
        assert_eq!(c.to_polynomial().to_string(), "B*x0*x1*x2*x4 + D*x3*x5*x6*x7");
        assert_eq!(c.hodge_type, (3, 3));
        assert!(!c.experimental);
        let quintic = rational_class(&Character::new(5, vec![1, 2, 3, 4]).unwrap().orbit()).unwrap();
        assert_eq!(quintic.summands.len(), 4);
        assert!(quintic.experimental);
        let self_conj = Character::new(2, vec![1, 1]).unwrap().orbit();
        assert!(rational_class(&self_conj).is_err());
    }
}
