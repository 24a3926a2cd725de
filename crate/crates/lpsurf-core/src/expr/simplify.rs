//! Canonical simplification.
//!
//! Scope: constant folding, like-term collection over canonically ordered
//! flat sums, power collection over flat products, `exp(a)*exp(b)` fusion and
//! `exp`/`log` cancellation. There is no polynomial expansion and no
//! factorization; equivalences beyond this normal form are decided by the
//! sampling fallback in [`super::exprs_equivalent`].
//!
//! Simplification preserves the value of the expression at every point of its
//! domain and is idempotent: the result of [`Expr::simplify`] is a fixed
//! point.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Expr, Func};

const MAX_PASSES: usize = 16;

impl Expr {
    /// Rewrites the expression into the canonical simplified form.
    pub fn simplify(&self) -> Expr {
        let mut current = simplify_pass(self);
        for _ in 0..MAX_PASSES {
            let next = simplify_pass(&current);
            if next == current {
                return current;
            }
            current = next;
        }
        current
    }
}

fn rational_pow(r: &BigRational, k: i32) -> Option<BigRational> {
    if r.is_zero() && k < 0 {
        return None;
    }
    if k >= 0 {
        let mut acc = BigRational::one();
        for _ in 0..k {
            acc *= r;
        }
        Some(acc)
    } else {
        let inv = BigRational::new(r.denom().clone(), r.numer().clone());
        rational_pow(&inv, -k)
    }
}

fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num_root = r.numer().sqrt();
    let den_root = r.denom().sqrt();
    if &(&num_root * &num_root) == r.numer() && &(&den_root * &den_root) == r.denom() {
        Some(BigRational::new(num_root, den_root))
    } else {
        None
    }
}

fn simplify_pass(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Coord(_) => e.clone(),
        Expr::Add(items) => simplify_sum(items),
        Expr::Mul(items) => simplify_product(items),
        Expr::Pow(base, k) => simplify_power(simplify_pass(base), *k),
        Expr::Apply(f, arg) => simplify_apply(*f, simplify_pass(arg)),
    }
}

/// Splits a term into (rational coefficient, remaining factor key),
/// flattening nested products along the way.
fn split_coefficient(term: Expr) -> (BigRational, Expr) {
    match term {
        Expr::Num(r) => (r, Expr::one()),
        Expr::Mul(factors) => {
            let mut coeff = BigRational::one();
            let mut rest: Vec<Expr> = Vec::with_capacity(factors.len());
            let mut queue: Vec<Expr> = factors;
            queue.reverse();
            while let Some(f) = queue.pop() {
                match f {
                    Expr::Num(r) => coeff *= r,
                    Expr::Mul(inner) => queue.extend(inner.into_iter().rev()),
                    other => rest.push(other),
                }
            }
            let key = match rest.len() {
                0 => Expr::one(),
                1 => rest.pop().expect("nonempty"),
                _ => Expr::Mul(rest),
            };
            (coeff, key)
        }
        other => (BigRational::one(), other),
    }
}

fn simplify_sum(items: &[Expr]) -> Expr {
    // Collect like terms: map canonical factor-part -> rational coefficient.
    let mut terms: BTreeMap<Expr, BigRational> = BTreeMap::new();
    let mut constant = BigRational::zero();
    let mut stack: Vec<Expr> = items.iter().map(simplify_pass).collect();
    stack.reverse();
    while let Some(item) = stack.pop() {
        match item {
            Expr::Add(inner) => stack.extend(inner.into_iter().rev()),
            other => {
                let (coeff, key) = split_coefficient(other);
                match key {
                    // Distribute the rational coefficient over a sum so that
                    // c*(a + b) and -c*a - c*b collect against each other.
                    Expr::Add(subterms) => {
                        for term in subterms.into_iter().rev() {
                            if coeff.is_one() {
                                stack.push(term);
                            } else {
                                stack.push(Expr::Mul(alloc::vec![
                                    Expr::Num(coeff.clone()),
                                    term
                                ]));
                            }
                        }
                    }
                    key if key.is_one() => constant += coeff,
                    key => {
                        let entry = terms.entry(key).or_insert_with(BigRational::zero);
                        *entry += coeff;
                    }
                }
            }
        }
    }

    let mut out: Vec<Expr> = Vec::with_capacity(terms.len() + 1);
    for (key, coeff) in terms {
        if coeff.is_zero() {
            continue;
        }
        if coeff.is_one() {
            out.push(key);
        } else {
            let factor = Expr::Num(coeff);
            out.push(match key {
                Expr::Mul(mut fs) => {
                    fs.insert(0, factor);
                    Expr::Mul(fs)
                }
                other => Expr::Mul(alloc::vec![factor, other]),
            });
        }
    }
    if !constant.is_zero() || out.is_empty() {
        out.push(Expr::Num(constant));
    }
    match out.len() {
        1 => out.pop().expect("nonempty"),
        _ => Expr::Add(out),
    }
}

fn simplify_product(items: &[Expr]) -> Expr {
    // Collect powers per base; fold rational factors; fuse exp factors.
    let mut coeff = BigRational::one();
    let mut powers: BTreeMap<Expr, i32> = BTreeMap::new();
    let mut exp_args: Vec<Expr> = Vec::new();
    let mut opaque: Vec<Expr> = Vec::new(); // 0^(-k) style undefined leftovers
    let mut stack: Vec<Expr> = items.iter().map(simplify_pass).collect();
    stack.reverse();
    while let Some(item) = stack.pop() {
        match item {
            Expr::Mul(inner) => stack.extend(inner.into_iter().rev()),
            Expr::Num(r) => coeff *= r,
            Expr::Apply(Func::Exp, arg) => exp_args.push(*arg),
            Expr::Pow(base, k) => match *base {
                Expr::Num(r) => match rational_pow(&r, k) {
                    Some(v) => coeff *= v,
                    None => opaque.push(Expr::Pow(Box::new(Expr::Num(r)), k)),
                },
                other => *powers.entry(other).or_insert(0) += k,
            },
            other => *powers.entry(other).or_insert(0) += 1,
        }
    }

    if coeff.is_zero() && opaque.is_empty() {
        return Expr::zero();
    }

    let mut factors: Vec<Expr> = Vec::new();
    if !exp_args.is_empty() {
        let total = simplify_sum(&exp_args);
        if !total.is_zero() {
            factors.push(Expr::Apply(Func::Exp, Box::new(total)));
        }
    }
    for (base, k) in powers {
        match k {
            0 => {}
            1 => factors.push(base),
            _ => factors.push(Expr::Pow(Box::new(base), k)),
        }
    }
    factors.extend(opaque);
    factors.sort();
    // A lone sum factor absorbs the rational coefficient, so -(a + b)
    // canonicalizes to -a - b even outside of sum collection.
    if factors.len() == 1 && !coeff.is_one() {
        if let Expr::Add(terms) = &factors[0] {
            let scaled: Vec<Expr> = terms
                .iter()
                .map(|t| Expr::Mul(alloc::vec![Expr::Num(coeff.clone()), t.clone()]))
                .collect();
            return simplify_sum(&scaled);
        }
    }
    if !coeff.is_one() || factors.is_empty() {
        factors.insert(0, Expr::Num(coeff));
    }
    match factors.len() {
        1 => factors.pop().expect("nonempty"),
        _ => Expr::Mul(factors),
    }
}

fn simplify_power(base: Expr, k: i32) -> Expr {
    if k == 0 {
        // x^0 = 1, with the usual 0^0 = 1 convention.
        return Expr::one();
    }
    if k == 1 {
        return base;
    }
    match base {
        Expr::Num(r) => match rational_pow(&r, k) {
            Some(v) => Expr::Num(v),
            None => Expr::Pow(Box::new(Expr::Num(r)), k),
        },
        Expr::Pow(inner, j) => match j.checked_mul(k) {
            Some(jk) => simplify_power(*inner, jk),
            None => Expr::Pow(Box::new(Expr::Pow(inner, j)), k),
        },
        Expr::Mul(factors) => {
            let raised: Vec<Expr> = factors
                .into_iter()
                .map(|f| Expr::Pow(Box::new(f), k))
                .collect();
            simplify_product(&raised)
        }
        Expr::Apply(Func::Exp, arg) => {
            let scaled = simplify_product(&[Expr::int(k as i64), *arg]);
            Expr::Apply(Func::Exp, Box::new(scaled))
        }
        // sqrt(a)^(2m) = a^m; sound because sqrt requires a >= 0.
        Expr::Apply(Func::Sqrt, arg) if k % 2 == 0 => simplify_power(*arg, k / 2),
        other => Expr::Pow(Box::new(other), k),
    }
}

fn simplify_apply(f: Func, arg: Expr) -> Expr {
    match (f, &arg) {
        (Func::Exp, a) if a.is_zero() => return Expr::one(),
        (Func::Exp, Expr::Apply(Func::Log, inner)) => return (**inner).clone(),
        (Func::Log, a) if a.is_one() => return Expr::zero(),
        (Func::Log, Expr::Apply(Func::Exp, inner)) => return (**inner).clone(),
        (Func::Sin | Func::Tan | Func::ArcSin | Func::ArcTan, a) if a.is_zero() => {
            return Expr::zero()
        }
        (Func::Cos, a) if a.is_zero() => return Expr::one(),
        (Func::Sqrt, Expr::Num(r)) => {
            if let Some(root) = exact_sqrt(r) {
                return Expr::Num(root);
            }
        }
        _ => {}
    }
    Expr::Apply(f, Box::new(arg))
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    fn simp(text: &str) -> Expr {
        parse_expr(text).unwrap().simplify()
    }

    #[test]
    fn constant_folding() {
        assert_eq!(simp("2 + 3*4"), Expr::int(14));
        assert_eq!(simp("1/2 + 1/3"), Expr::rational(5, 6));
        assert_eq!(simp("2^-2"), Expr::rational(1, 4));
        assert_eq!(simp("sqrt(9/16)"), Expr::rational(3, 4));
        assert_eq!(simp("sqrt(2)"), Expr::int(2).sqrt());
    }

    #[test]
    fn like_terms_collect() {
        assert_eq!(simp("x + x + x"), Expr::Mul(alloc::vec![Expr::int(3), Expr::coord("x")]));
        assert_eq!(simp("x - x"), Expr::zero());
        assert_eq!(simp("2*x*y - y*x*2"), Expr::zero());
        assert_eq!(simp("x*x*x"), Expr::coord("x").pow(3));
        assert_eq!(simp("x/x"), Expr::one());
    }

    #[test]
    fn quotient_terms_cancel() {
        // The 6.3 consistency pattern: q - q with q = 1/sqrt(1-y^2).
        assert_eq!(simp("1/sqrt(1-y^2) - 1/sqrt(1-y^2)"), Expr::zero());
        assert_eq!(simp("sqrt(1-y^2)^2 + y^2"), Expr::one());
    }

    #[test]
    fn exp_log_fusion() {
        assert_eq!(simp("exp(2*z)*exp(-2*z)"), Expr::one());
        assert_eq!(simp("exp(0)"), Expr::one());
        assert_eq!(simp("log(exp(x))"), Expr::coord("x"));
        assert_eq!(simp("exp(log(x))"), Expr::coord("x"));
        assert_eq!(simp("exp(x)^3"), (Expr::int(3) * Expr::coord("x")).simplify().exp());
    }

    #[test]
    fn zero_and_one_elements() {
        assert_eq!(simp("0*log(x)"), Expr::zero());
        assert_eq!(simp("1*x + 0"), Expr::coord("x"));
        assert_eq!(simp("x^0"), Expr::one());
        assert_eq!(simp("-(-x)"), Expr::coord("x"));
    }

    #[test]
    fn power_of_product_distributes() {
        assert_eq!(simp("(2*x)^3"), simp("8*x^3"));
        assert_eq!(simp("(x^2)^3"), Expr::coord("x").pow(6));
    }

    #[test]
    fn division_by_zero_is_not_folded() {
        let kept = simp("0^-1");
        assert_eq!(kept, Expr::Pow(Box::new(Expr::zero()), -1));
    }

    #[test]
    fn simplify_is_idempotent_on_samples() {
        for text in [
            "(x+y)*(x-y)",
            "exp(-2*z)*x^2 - exp(-2*z)*x^2 + 1",
            "sin(x)^2 + cos(x)^2",
            "2*x/(4*y)",
            "sqrt(1-y^2)*sqrt(1-y^2)",
            "x - 2*x + x",
        ] {
            let once = simp(text);
            assert_eq!(once.simplify(), once, "not idempotent on {text}");
        }
    }
}
