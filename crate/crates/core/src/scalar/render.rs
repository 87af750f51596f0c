//! Text rendering in the grammar `integers, symbols, + - * / ^ ( )`.
//!
//! Terms are printed in pure lexicographic order on the global symbol order,
//! largest first, so `a+b*h`, `h+1` and `a^2*A*C-b^2*B*D` come out as written
//! by hand.

use num_traits::{One, Signed};

use super::gcd::coprime_factors;
use super::poly::{ParamMonomial, ParamPolynomial};
use super::Rational;

pub fn render_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_term(c: &Rational, m: &ParamMonomial, first: bool) -> String {
    let mut out = String::new();
    let neg = c.is_negative();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    if m.is_one() {
        out.push_str(&render_rational(&a));
    } else {
        if !a.is_one() {
            out.push_str(&render_rational(&a));
            out.push('*');
        }
        out.push_str(&m.to_string());
    }
    out
}

pub fn render_poly(p: &ParamPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_lex_desc().into_iter().enumerate() {
        out.push_str(&render_term(c, m, k == 0));
    }
    out
}

/// Whether `p` can stand as the right operand of `/` without parentheses.
fn is_atomic_divisor(p: &ParamPolynomial) -> bool {
    if let Some(c) = p.as_constant() {
        return c.is_integer() && c.is_positive();
    }
    p.num_terms() == 1 && {
        let (m, c) = p.terms().next().unwrap();
        c.is_one() && m.pairs().len() == 1
    }
}

pub fn render_fraction(num: &ParamPolynomial, den: &ParamPolynomial) -> String {
    if den.is_one() {
        return render_poly(num);
    }
    let n = render_poly(num);
    let n = if num.num_terms() > 1 {
        format!("({n})")
    } else {
        n
    };
    let d = render_poly(den);
    if is_atomic_divisor(den) {
        format!("{n}/{d}")
    } else {
        format!("{n}/({d})")
    }
}

/// Render `p` as a product of coprime square-free powers, e.g.
/// `a^2*(a+b*h)^2*(a^2*A*C-b^2*B*D)^2`.
pub fn render_factored_poly(p: &ParamPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let (unit, factors) = coprime_factors(p);
    let mut parts: Vec<String> = Vec::new();
    for (f, e) in &factors {
        let body = render_poly(f);
        let body = if f.num_terms() > 1 {
            format!("({body})")
        } else {
            body
        };
        if *e > 1 {
            parts.push(format!("{body}^{e}"));
        } else {
            parts.push(body);
        }
    }
    let mut out = String::new();
    if parts.is_empty() {
        return render_rational(&unit);
    }
    if unit == -Rational::one() {
        out.push('-');
    } else if !unit.is_one() {
        if unit.is_integer() {
            out.push_str(&render_rational(&unit));
        } else {
            out.push('(');
            out.push_str(&render_rational(&unit));
            out.push(')');
        }
        out.push('*');
    }
    out.push_str(&parts.join("*"));
    out
}
