//! Multivariate polynomial gcd over ℚ by content / primitive-part recursion
//! on the smallest symbol, with primitive pseudo-remainder sequences.

use super::poly::ParamPolynomial;
use super::symbol::Symbol;

/// Gcd of `f` and `g`, normalized to integer-primitive form with a positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &ParamPolynomial, g: &ParamPolynomial) -> ParamPolynomial {
    if f.is_zero() {
        return g.primitive_normalized();
    }
    if g.is_zero() {
        return f.primitive_normalized();
    }
    if f.is_constant() || g.is_constant() {
        return ParamPolynomial::one();
    }
    if f == g || g.div_exact(f).is_some() {
        return f.primitive_normalized();
    }
    if f.div_exact(g).is_some() {
        return g.primitive_normalized();
    }
    if provably_coprime(f, g) {
        return ParamPolynomial::one();
    }
    // Pull out the common monomial factor first; it keeps the recursion short.
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let common = mf.gcd(&mg);
    if !mf.is_one() || !mg.is_one() {
        let f1 = f.div_exact(&ParamPolynomial::term(num_traits::One::one(), mf)).unwrap();
        let g1 = g.div_exact(&ParamPolynomial::term(num_traits::One::one(), mg)).unwrap();
        let inner = gcd(&f1, &g1);
        return inner.mul_monomial(&common).primitive_normalized();
    }

    let x = f
        .symbols()
        .into_iter()
        .chain(g.symbols())
        .min()
        .expect("non-constant polynomials have symbols");
    let fx = f.to_univariate(&x);
    let gx = g.to_univariate(&x);
    if fx.len() == 1 {
        return gcd(f, &content(&gx));
    }
    if gx.len() == 1 {
        return gcd(&content(&fx), g);
    }
    let cf = content(&fx);
    let cg = content(&gx);
    let c = gcd(&cf, &cg);
    let pf = divide_coeffs(&fx, &cf);
    let pg = divide_coeffs(&gx, &cg);
    let h = primitive_prs(pf, pg);
    let h = ParamPolynomial::from_univariate(&h, &x);
    c.mul(&h).primitive_normalized()
}

const PRIME: u64 = crate::jacobian::modp::DEFAULT_PRIME;

/// Sound but incomplete coprimality test. For each shared symbol `x`, pick
/// values `r` for the other symbols with `lc_x(f)(r) ≠ 0 mod p`; then
/// `deg_x gcd(f, g) ≤ deg gcd(f(x, r), g(x, r))` over GF(p). If every bound
/// is zero the gcd is constant.
fn provably_coprime(f: &ParamPolynomial, g: &ParamPolynomial) -> bool {
    let fs = f.symbols();
    let shared: Vec<Symbol> = g.symbols().into_iter().filter(|s| fs.contains(s)).collect();
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed % (PRIME - 2) + 2
    };
    'symbols: for x in &shared {
        for _ in 0..3 {
            let point: std::collections::BTreeMap<Symbol, u64> =
                fs.iter().chain(g.symbols().iter()).filter(|s| *s != x).map(|s| (s.clone(), next())).collect();
            let (Some(fi), Some(gi)) = (image(f, x, &point), image(g, x, &point)) else {
                continue;
            };
            if fi.len() != f.degree_in(x) as usize + 1 {
                continue;
            }
            if univariate_gcd_degree(fi, gi) == 0 {
                continue 'symbols;
            }
            return false;
        }
        return false;
    }
    true
}

/// `f(x, r)` mod p as a dense coefficient vector, trailing zeros trimmed.
fn image(f: &ParamPolynomial, x: &Symbol, point: &std::collections::BTreeMap<Symbol, u64>) -> Option<Vec<u64>> {
    use crate::jacobian::modp;
    let mut out = vec![0u64; f.degree_in(x) as usize + 1];
    for (m, c) in f.terms() {
        let mut v = modp::reduce_rational(c, PRIME).ok()?;
        let mut k = 0;
        for (s, e) in m.pairs() {
            if s == x {
                k = *e as usize;
            } else {
                v = modp::mul(v, modp::pow(point[s], *e as u64, PRIME), PRIME);
            }
        }
        out[k] = (out[k] + v) % PRIME;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    use crate::jacobian::modp;
    if a.is_empty() {
        return b.len().saturating_sub(1);
    }
    while !b.is_empty() {
        // a <- a mod b
        let lb_inv = modp::inv(*b.last().unwrap(), PRIME);
        while a.len() >= b.len() {
            let q = modp::mul(*a.last().unwrap(), lb_inv, PRIME);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - modp::mul(q, *c, PRIME)) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Gcd of a list of coefficients.
fn content(coeffs: &[ParamPolynomial]) -> ParamPolynomial {
    let mut acc = ParamPolynomial::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_constant() {
            return ParamPolynomial::one();
        }
    }
    if acc.is_zero() {
        ParamPolynomial::one()
    } else {
        acc
    }
}

fn divide_coeffs(coeffs: &[ParamPolynomial], d: &ParamPolynomial) -> Vec<ParamPolynomial> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<ParamPolynomial>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive_part(v: &[ParamPolynomial]) -> Vec<ParamPolynomial> {
    let c = content(v);
    divide_coeffs(v, &c)
}

/// Pseudo-remainder of `a` by `b` as polynomials in the main variable.
fn prem(a: &[ParamPolynomial], b: &[ParamPolynomial]) -> Vec<ParamPolynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<ParamPolynomial> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        trim(&mut r);
    }
    r
}

fn primitive_prs(a: Vec<ParamPolynomial>, b: Vec<ParamPolynomial>) -> Vec<ParamPolynomial> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive_part(&b);
        }
        if r.len() == 1 {
            return vec![ParamPolynomial::one()];
        }
        a = b;
        b = primitive_part(&r);
    }
}

/// Split `p` into pairwise coprime square-free pieces using only gcds with
/// partial derivatives and monomial contents. Returns `(unit, [(factor, multiplicity)])`
/// with each factor integer-primitive and its lex-leading coefficient positive.
pub fn coprime_factors(
    p: &ParamPolynomial,
) -> (super::Rational, Vec<(ParamPolynomial, u32)>) {
    use num_traits::One;
    if p.is_zero() {
        return (super::Rational::from_integer(0.into()), Vec::new());
    }
    let mut pending: Vec<ParamPolynomial> = Vec::new();
    let mc = p.monomial_content();
    for (s, e) in mc.pairs() {
        for _ in 0..*e {
            pending.push(ParamPolynomial::var(s.clone()));
        }
    }
    let rest = p
        .div_exact(&ParamPolynomial::term(super::Rational::one(), mc))
        .unwrap();
    pending.push(rest);

    let mut atoms: Vec<ParamPolynomial> = Vec::new();
    while let Some(f) = pending.pop() {
        if f.is_constant() {
            continue;
        }
        match split_once(&f) {
            Some((g, h)) => {
                pending.push(g);
                pending.push(h);
            }
            None => atoms.push(f),
        }
    }
    // Refine to a coprime base.
    loop {
        let mut changed = false;
        'outer: for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if same_up_to_unit(&atoms[i], &atoms[j]) {
                    continue;
                }
                let g = gcd(&atoms[i], &atoms[j]);
                if !g.is_constant() {
                    let a = atoms[i].div_exact(&g).unwrap();
                    let b = atoms[j].div_exact(&g).unwrap();
                    let (hi, lo) = (j, i);
                    atoms.remove(hi);
                    atoms.remove(lo);
                    for x in [a, b, g.clone(), g] {
                        if !x.is_constant() {
                            atoms.push(x);
                        }
                    }
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // Group equal factors, normalize signs, recover the unit.
    let mut grouped: Vec<(ParamPolynomial, u32)> = Vec::new();
    for a in atoms {
        let a = lex_positive(&a.primitive_normalized());
        match grouped.iter_mut().find(|(f, _)| *f == a) {
            Some((_, e)) => *e += 1,
            None => grouped.push((a, 1)),
        }
    }
    grouped.sort_by(|(f, _), (g, _)| {
        f.total_degree()
            .cmp(&g.total_degree())
            .then(f.num_terms().cmp(&g.num_terms()))
            .then_with(|| f.to_string().cmp(&g.to_string()))
    });
    let mut product = ParamPolynomial::one();
    for (f, e) in &grouped {
        product = product.mul(&f.pow(*e));
    }
    let (pm, pc) = p.leading().unwrap();
    let qc = product
        .terms()
        .find(|(m, _)| *m == pm)
        .map(|(_, c)| c.clone())
        .expect("product has the same support");
    let unit = pc / qc;
    (unit, grouped)
}

fn lex_positive(f: &ParamPolynomial) -> ParamPolynomial {
    use num_traits::Signed;
    match f.terms_lex_desc().first() {
        Some((_, c)) if c.is_negative() => f.neg(),
        _ => f.clone(),
    }
}

fn same_up_to_unit(f: &ParamPolynomial, g: &ParamPolynomial) -> bool {
    f.primitive_normalized() == g.primitive_normalized()
}

fn split_once(f: &ParamPolynomial) -> Option<(ParamPolynomial, ParamPolynomial)> {
    let syms: Vec<Symbol> = f.symbols().into_iter().collect();
    for s in syms {
        let d = f.derivative(&s);
        if d.is_zero() {
            continue;
        }
        let g = gcd(f, &d);
        if !g.is_constant() {
            let h = f.div_exact(&g).expect("gcd divides");
            return Some((g, h));
        }
    }
    // A factor that does not involve some symbol of f splits off via content.
    for s in f.symbols() {
        let u = f.to_univariate(&s);
        let c = content(&u);
        if !c.is_constant() {
            let h = f.div_exact(&c).expect("content divides");
            if !h.is_constant() {
                return Some((c, h));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Symbol};

    fn v(s: &str) -> ParamPolynomial {
        ParamPolynomial::var(Symbol::new(s))
    }

    fn int(n: i64) -> ParamPolynomial {
        ParamPolynomial::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (v("a"), v("b"));
        let f = a.mul(&a).sub(&b.mul(&b));
        let g = a.add(&b).mul(&v("h"));
        assert_eq!(gcd(&f, &g), a.add(&b));
    }

    #[test]
    fn common_factor_with_content() {
        let (a, b, h) = (v("a"), v("b"), v("h"));
        let k = a.add(&b.mul(&h));
        let f = k.mul(&int(6)).mul(&a.sub(&int(1)));
        let g = k.mul(&k).mul(&int(4)).mul(&b.add(&int(2)));
        assert_eq!(gcd(&f, &g), k);
    }

    #[test]
    fn coprime_inputs() {
        let (a, b) = (v("a"), v("b"));
        assert!(gcd(&a.add(&b), &a.sub(&b)).is_one());
        assert!(gcd(&a.mul(&a).add(&int(1)), &a.add(&int(1))).is_one());
    }

    #[test]
    fn factors_of_prop_determinant() {
        let (a, b, h) = (v("a"), v("b"), v("h"));
        let (aa, bb, cc, dd) = (v("A"), v("B"), v("C"), v("D"));
        let q = a.mul(&a).mul(&aa).mul(&cc).sub(&b.mul(&b).mul(&bb).mul(&dd));
        let det = a.pow(2).mul(&a.add(&b.mul(&h)).pow(2)).mul(&q.pow(2));
        let (unit, fs) = coprime_factors(&det);
        assert!(num_traits::One::is_one(&unit));
        let rendered: Vec<String> = fs.iter().map(|(f, e)| format!("{f}^{e}")).collect();
        assert_eq!(rendered, ["a^2", "a+b*h^2", "a^2*A*C-b^2*B*D^2"]);
    }
}
