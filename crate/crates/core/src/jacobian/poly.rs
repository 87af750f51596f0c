use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Assignment, Scalar};

/// Homogeneous polynomial in `x0, …, x_{nvars-1}` with [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogeneousPolynomial {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPolynomial {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.nvars(), m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Build from terms; every monomial must have the stated degree.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(nvars, degree);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<()> {
        if m.nvars() != self.nvars || m.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "term {m} in a degree-{} polynomial in {} variables",
                self.degree, self.nvars
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(Scalar::is_parameter_free)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "degree {} in {} vars vs degree {} in {} vars",
                self.degree, self.nvars, other.degree, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DegreeMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let v = c1 * c2;
                let e = acc.entry(m).or_default();
                *e = &*e + &v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms: acc,
        })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HomogeneousPolynomial {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.terms
                .insert(Monomial::new(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Substitute values for parameters in every coefficient.
    pub fn substitute(&self, asg: &Assignment) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute(asg)?)?;
        }
        Ok(out)
    }

    /// Parse an expression such as `x0^3 + A*x1*x2^2 - 1/2*x3^3`; symbols of
    /// the form `x<digits>` are the variables, everything else is a parameter.
    pub fn parse(src: &str, nvars: usize) -> Result<Self> {
        parse_homogeneous(src, nvars)
    }
}

fn parse_homogeneous(src: &str, nvars: usize) -> Result<HomogeneousPolynomial> {
    // Parse as a rational function in all symbols, then split off the x-variables.
    let s = parse_scalar(src)?;
    let var_index = |name: &str| -> Option<usize> {
        name.strip_prefix('x')
            .filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|r| r.parse().ok())
    };
    if s.den().symbols().iter().any(|sym| var_index(sym.name()).is_some()) {
        return Err(Error::Parse("variables may not appear in a denominator".into()));
    }
    let den = Scalar::from_poly(s.den().clone());
    let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    let mut degree = None;
    for (pm, c) in s.num().terms() {
        let mut exps = vec![0u32; nvars];
        let mut rest = Vec::new();
        for (sym, e) in pm.pairs() {
            match var_index(sym.name()) {
                Some(i) if i < nvars => exps[i] = *e,
                Some(i) => {
                    return Err(Error::OutOfRange(format!("x{i} with only {nvars} variables")))
                }
                None => rest.push((sym.clone(), *e)),
            }
        }
        let m = Monomial::new(exps);
        match degree {
            None => degree = Some(m.degree()),
            Some(d) if d != m.degree() => {
                return Err(Error::DegreeMismatch(format!("`{src}` is not homogeneous")))
            }
            _ => {}
        }
        let coeff = Scalar::from_poly(crate::scalar::ParamPolynomial::term(
            c.clone(),
            crate::scalar::ParamMonomial::from_pairs(rest),
        ));
        let e = terms.entry(m).or_default();
        *e = &*e + &coeff;
    }
    let mut p = HomogeneousPolynomial::zero(nvars, degree.unwrap_or(0));
    for (m, c) in terms {
        p.add_term(m, c.checked_div(&den)?)?;
    }
    Ok(p)
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let mono = m.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let body = if body.contains(['+', '-']) {
                format!("({body})")
            } else {
                body
            };
            if m.degree() == 0 {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    degree: u32,
    terms: Vec<TermJson>,
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exps: m.exps().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogeneousPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        HomogeneousPolynomial::from_terms(
            j.nvars,
            j.degree,
            j.terms.into_iter().map(|t| (Monomial::new(t.exps), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_json() {
        let p = HomogeneousPolynomial::parse("A*x0*x1*x2*x3 + C*x4*x5*x6*x7", 8).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.num_terms(), 2);
        let j = serde_json::to_string(&p).unwrap();
        assert!(j.starts_with(r#"{"nvars":8,"degree":4,"terms":[{"exps":[1,1,1,1,0,0,0,0],"coeff":"A"}"#));
        let back: HomogeneousPolynomial = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        let e = HomogeneousPolynomial::parse("x0*x1 + 1/C*x2*x3 + h/B*x3*x5", 8).unwrap();
        assert_eq!(e.coeff(&Monomial::from_indices(8, &[3, 5])), "h/B".parse().unwrap());
        assert!(HomogeneousPolynomial::parse("x0^2 + x1", 2).is_err());
    }

    #[test]
    fn derivative_and_product() {
        let f = HomogeneousPolynomial::parse("x0^3 + x0*x1*x2", 3).unwrap();
        let d0 = f.derivative(0);
        assert_eq!(d0, HomogeneousPolynomial::parse("3*x0^2 + x1*x2", 3).unwrap());
        let sq = d0.mul(&d0).unwrap();
        assert_eq!(sq.degree(), 4);
        assert_eq!(sq.coeff(&Monomial::new(vec![2, 1, 1])), Scalar::from_int(6));
    }
}
