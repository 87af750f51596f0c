use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::symbol::Symbol;
use super::Rational;
use crate::error::{Error, Result};

/// Monomial in the parameters, stored sparsely as `(symbol, exponent)` pairs
/// sorted by symbol with strictly positive exponents.
///
/// `Ord` is graded-lexicographic on the global symbol order, so the largest
/// element of a term map is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial(Vec<(Symbol, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        ParamMonomial(vec![(s, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        ParamMonomial(out)
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .binary_search_by(|(t, _)| t.cmp(s))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ParamMonomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s.clone(), e - f)),
                }
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(ParamMonomial(out))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (s, e) in &self.0 {
            let f = other.exponent(s);
            if f > 0 {
                out.push((s.clone(), (*e).min(f)));
            }
        }
        ParamMonomial(out)
    }

    /// Remove the variable `s`, returning its exponent and the remainder.
    fn split_off(&self, s: &Symbol) -> (u32, ParamMonomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for (t, f) in &self.0 {
            if t == s {
                e = *f;
            } else {
                rest.push((t.clone(), *f));
            }
        }
        (e, ParamMonomial(rest))
    }

    /// Pure lexicographic comparison on the global symbol order.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate polynomial over ℚ in named parameters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPolynomial {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ParamMonomial::one(), c);
        }
        ParamPolynomial { terms }
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Rational::one(), ParamMonomial::var(s))
    }

    pub fn term(c: Rational, m: ParamMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (ParamMonomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap()
    }

    /// Constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&ParamMonomial::one()).cloned();
        }
        None
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&ParamMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<ParamMonomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        ParamPolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> Self {
        ParamPolynomial {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = rem.sub(&divisor.mul_monomial(&qm).scale(&qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn derivative(&self, s: &Symbol) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            let pairs = m
                .pairs()
                .iter()
                .map(|(t, f)| (t.clone(), if t == s { f - 1 } else { *f }))
                .collect();
            out.add_term(ParamMonomial::from_pairs(pairs), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluate at rational values; `Err(UnboundParameter)` if some symbol is missing.
    pub fn evaluate(&self, assignment: &BTreeMap<Symbol, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.pairs() {
                let x = assignment
                    .get(s)
                    .ok_or_else(|| Error::UnboundParameter(s.name().to_string()))?;
                v *= num_traits::pow(x.clone(), *e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitute rational values for a subset of the symbols.
    pub fn substitute(&self, assignment: &BTreeMap<Symbol, Rational>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::new();
            for (s, e) in m.pairs() {
                match assignment.get(s) {
                    Some(x) => v *= num_traits::pow(x.clone(), *e as usize),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out.add_term(ParamMonomial::from_pairs(rest), v);
        }
        out
    }

    /// Coefficients as a polynomial in `s`: entry `k` is the coefficient of `s^k`.
    pub fn to_univariate(&self, s: &Symbol) -> Vec<ParamPolynomial> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[ParamPolynomial], s: &Symbol) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let xm = ParamMonomial::from_pairs(vec![(s.clone(), k as u32)]);
            for (m, v) in &c.terms {
                out.add_term(m.mul(&xm), v.clone());
            }
        }
        out
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators (assumes integral coefficients); zero for the zero polynomial.
    pub fn numerator_gcd(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let l = self.denominator_lcm();
        let scaled = self.scale(&Rational::from_integer(l.clone()));
        let g = scaled.numerator_gcd();
        Rational::new(g, l)
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.rational_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Terms sorted in pure lexicographic order, largest first.
    pub fn terms_lex_desc(&self) -> Vec<(&ParamMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.lex_cmp(a.0));
        v
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> ParamMonomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return ParamMonomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_poly(self))
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
