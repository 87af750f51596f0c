//! Exact arithmetic in ℚ and in rational-function fields ℚ(p₁,…,p_k) over
//! named parameters.

mod gcd;
mod parse;
mod poly;
mod render;
mod symbol;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use gcd::{coprime_factors, gcd};
pub use parse::parse_scalar;
pub use poly::{ParamMonomial, ParamPolynomial};
pub use render::{render_factored_poly, render_poly, render_rational};
pub use symbol::Symbol;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Assignment of rational values to parameters.
pub type Assignment = BTreeMap<Symbol, Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Build an [`Assignment`] from `(name, value)` pairs.
pub fn assignment<'a, I: IntoIterator<Item = (&'a str, Rational)>>(it: I) -> Assignment {
    it.into_iter().map(|(s, v)| (Symbol::new(s), v)).collect()
}

/// Element of ℚ(p₁,…,p_k) in canonical form.
///
/// `num/den` with `gcd(num, den) = 1`, all coefficients integers with no
/// common factor, and the graded-lex leading coefficient of `den` positive.
/// Two scalars are equal exactly when their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamPolynomial,
    den: ParamPolynomial,
}

impl Scalar {
    pub fn normalize(num: ParamPolynomial, den: ParamPolynomial) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Ok(Scalar::from_coprime(num, den))
    }

    /// Canonical form of `num/den` when `gcd(num, den)` is already constant:
    /// clears rational content and fixes the sign of `den`.
    fn from_coprime(num: ParamPolynomial, den: ParamPolynomial) -> Scalar {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let l = num_integer::Integer::lcm(&num.denominator_lcm(), &den.denominator_lcm());
        let lr = Rational::from_integer(l);
        let (num, den) = (num.scale(&lr), den.scale(&lr));
        let g = num_integer::Integer::gcd(&num.numerator_gcd(), &den.numerator_gcd());
        let mut factor = Rational::from_integer(g).recip();
        if den.leading_coeff().is_negative() {
            factor = -factor;
        }
        Scalar {
            num: num.scale(&factor),
            den: den.scale(&factor),
        }
    }

    pub fn zero() -> Self {
        Scalar {
            num: ParamPolynomial::zero(),
            den: ParamPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_bigint(n.into())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: ParamPolynomial::constant(Rational::from_integer(n)),
            den: ParamPolynomial::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Scalar {
            num: ParamPolynomial::constant(Rational::from_integer(r.numer().clone())),
            den: ParamPolynomial::constant(Rational::from_integer(r.denom().clone())),
        }
    }

    pub fn symbol(s: Symbol) -> Self {
        Scalar {
            num: ParamPolynomial::var(s),
            den: ParamPolynomial::one(),
        }
    }

    /// Shorthand for [`Scalar::symbol`].
    pub fn sym(name: &str) -> Self {
        Scalar::symbol(Symbol::new(name))
    }

    pub fn from_poly(p: ParamPolynomial) -> Self {
        Scalar::normalize(p, ParamPolynomial::one()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &ParamPolynomial {
        &self.num
    }

    pub fn den(&self) -> &ParamPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_parameter_free() {
            return None;
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn parameters(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Evaluate at a full rational assignment of the parameters.
    pub fn specialize(&self, assignment: &Assignment) -> Result<Rational> {
        let n = self.num.evaluate(assignment)?;
        let d = self.den.evaluate(assignment)?;
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Ok(n / d)
    }

    /// Substitute values for some of the parameters, keeping the rest symbolic.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Scalar> {
        let n = self.num.substitute(assignment);
        let d = self.den.substitute(assignment);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Scalar::normalize(n, d)
    }

    /// Numerator and denominator each written as a product of coprime
    /// square-free powers.
    pub fn render_factored(&self) -> String {
        let n = render_factored_poly(&self.num);
        if self.den.is_one() {
            return n;
        }
        let d = render_factored_poly(&self.den);
        let d = if !has_top_level_operator(&d) {
            d
        } else {
            format!("({d})")
        };
        format!("{n}/{d}")
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::normalize(self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        // Henrici: with g = gcd(d1, d2), only g can share factors with the new numerator.
        let g = gcd(&self.den, &other.den);
        if g.is_constant() {
            return Scalar::from_coprime(
                self.num.mul(&other.den).add(&other.num.mul(&self.den)),
                self.den.mul(&other.den),
            );
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d2).add(&other.num.mul(&d1));
        if t.is_zero() {
            return Scalar::zero();
        }
        let g2 = gcd(&t, &g);
        Scalar::from_coprime(
            t.div_exact(&g2).expect("gcd divides"),
            d1.mul(&other.den.div_exact(&g2).expect("gcd divides")),
        )
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: ParamPolynomial::one(),
            };
        }
        // Both inputs are reduced, so cancelling across is enough.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let div = |p: &ParamPolynomial, g: &ParamPolynomial| p.div_exact(g).expect("gcd divides");
        Scalar::from_coprime(
            div(&self.num, &g1).mul(&div(&other.num, &g2)),
            div(&self.den, &g2).mul(&div(&other.den, &g1)),
        )
    }

    fn neg_impl(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

fn has_top_level_operator(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' | '+' | '-' | '/' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(&r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$imp(rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_impl(&self, other: &Scalar) -> Scalar {
        self.add_impl(&other.neg_impl())
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_fraction(&self.num, &self.den))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}
