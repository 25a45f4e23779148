//! Fibonacci numbers and polynomials, binomials, Fibonomials, and the term
//! functions of every matrix family.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{IntPoly, Integer};

/// `F_0, F_1, ..., F_n`.
pub fn fibonacci_table(n: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Integer::zero());
    if n >= 1 {
        out.push(Integer::one());
    }
    for k in 2..=n {
        let next = &out[k - 1] + &out[k - 2];
        out.push(next);
    }
    out
}

/// Values `f_0(x), ..., f_n(x)` of the Fibonacci polynomials at an integer.
pub fn fibonacci_poly_table_at(n: usize, x: &Integer) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Integer::zero());
    if n >= 1 {
        out.push(Integer::one());
    }
    for k in 2..=n {
        let next = x * &out[k - 1] + &out[k - 2];
        out.push(next);
    }
    out
}

/// `f_0(x), ..., f_n(x)`.
pub fn fibonacci_poly_table(n: usize) -> Vec<IntPoly> {
    let x = IntPoly::x();
    let mut out = Vec::with_capacity(n + 1);
    out.push(IntPoly::zero());
    if n >= 1 {
        out.push(IntPoly::one());
    }
    for k in 2..=n {
        let next = &(&x * &out[k - 1]) + &out[k - 2];
        out.push(next);
    }
    out
}

fn index(n: i64, what: &str) -> Result<usize> {
    usize::try_from(n).map_err(|_| domain(format!("negative {what} index {n}")))
}

pub fn fibonacci(n: i64) -> Result<Integer> {
    let n = index(n, "Fibonacci")?;
    let (mut a, mut b) = (Integer::zero(), Integer::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(a)
}

pub fn fibonacci_poly(n: i64) -> Result<IntPoly> {
    let n = index(n, "Fibonacci polynomial")?;
    Ok(fibonacci_poly_table(n).pop().unwrap())
}

/// `f_n(x)` evaluated at an integer point.
pub fn fibonacci_poly_at(n: i64, x: &Integer) -> Result<Integer> {
    let n = index(n, "Fibonacci polynomial")?;
    Ok(fibonacci_poly_table_at(n, x).pop().unwrap())
}

/// Binomial coefficient, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(domain(format!("binomial with negative top {n}")));
    }
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    Ok(acc)
}

fn product_quotient(num: Integer, den: &Integer, what: impl FnOnce() -> String) -> Result<Integer> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{} is not an integer", what())));
    }
    Ok(q)
}

/// Fibonomial coefficient `prod_{i=1..k} F_{n-i+1} / F_i`, computed as one
/// product over another with a remainder-zero check.
pub fn fibonomial(n: i64, k: i64) -> Result<Integer> {
    let nn = index(n, "Fibonomial")?;
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    let f = fibonacci_table(nn);
    fibonomial_from_table(&f, nn, k as usize)
}

pub(crate) fn fibonomial_from_table(f: &[Integer], n: usize, k: usize) -> Result<Integer> {
    let mut num = Integer::one();
    let mut den = Integer::one();
    for i in 1..=k {
        num *= &f[n - i + 1];
        den *= &f[i];
    }
    if den.is_zero() {
        return Err(domain(format!("Fibonomial ({n} over {k}) hits a zero factor")));
    }
    product_quotient(num, &den, || format!("Fibonomial ({n} over {k})"))
}

/// x-Fibonomial `prod_{i=1..k} f_{n-i+1}(x) / f_i(x)` as an exact integer
/// polynomial.
pub fn x_fibonomial(n: i64, k: i64) -> Result<IntPoly> {
    let nn = index(n, "x-Fibonomial")?;
    if k < 0 || k > n {
        return Ok(IntPoly::zero());
    }
    let f = fibonacci_poly_table(nn);
    x_fibonomial_from_table(&f, nn, k as usize)
}

pub(crate) fn x_fibonomial_from_table(f: &[IntPoly], n: usize, k: usize) -> Result<IntPoly> {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for i in 1..=k {
        num = &num * &f[n - i + 1];
        den = &den * &f[i];
    }
    num.exact_div(&den).map_err(|e| {
        Error::Internal(format!("x-Fibonomial ({n} over {k}) is not a polynomial: {e}"))
    })
}

/// The x-Fibonomial evaluated at an integer `x`. Requires `f_i(x) != 0` for
/// the denominator factors, which holds for every `x >= 1`.
pub fn x_fibonomial_at(n: i64, k: i64, x: &Integer) -> Result<Integer> {
    let nn = index(n, "x-Fibonomial")?;
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    let f = fibonacci_poly_table_at(nn, x);
    fibonomial_from_table(&f, nn, k as usize)
}

/// One of the sequences a reciprocal Hankel matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `F_k`
    Fibonacci,
    /// `f_k(x)`
    FibPoly,
    /// `k`
    Hilbert,
    /// `C(k+1, 2)`
    A,
    /// `C(k+r-1, r)`
    B { r: u32 },
    /// `C(k+3, 3)`
    C,
    /// Fibonomial `((k+r-1, r))`
    D { r: u32 },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 7] = ["fibonacci", "fibpoly", "hilbert", "a", "b", "c", "d"];

    /// Builds a spec from its short name. `r` is required for `b` and `d` and
    /// rejected for the others.
    pub fn from_name(name: &str, r: Option<u32>) -> Result<Self> {
        let spec = match (name, r) {
            ("b", Some(r)) => FamilySpec::B { r },
            ("d", Some(r)) => FamilySpec::D { r },
            ("b" | "d", None) => return Err(domain(format!("family {name} needs r"))),
            (_, Some(_)) if Self::NAMES.contains(&name) => {
                return Err(domain(format!("family {name} takes no r")))
            }
            ("fibonacci", None) => FamilySpec::Fibonacci,
            ("fibpoly", None) => FamilySpec::FibPoly,
            ("hilbert", None) => FamilySpec::Hilbert,
            ("a", None) => FamilySpec::A,
            ("c", None) => FamilySpec::C,
            _ => return Err(domain(format!("unknown family {name:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.r() {
            Some(0) => Err(domain("r must be at least 1")),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Fibonacci => "fibonacci",
            FamilySpec::FibPoly => "fibpoly",
            FamilySpec::Hilbert => "hilbert",
            FamilySpec::A => "a",
            FamilySpec::B { .. } => "b",
            FamilySpec::C => "c",
            FamilySpec::D { .. } => "d",
        }
    }

    pub fn r(&self) -> Option<u32> {
        match self {
            FamilySpec::B { r } | FamilySpec::D { r } => Some(*r),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, FamilySpec::FibPoly)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r() {
            Some(r) => write!(f, "{}(r={r})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// A sequence term: an integer, or a polynomial for `fibpoly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Int(Integer),
    Poly(IntPoly),
}

/// The `k`-th term `a_k` of a family, `k >= 1`.
pub fn family_term(spec: &FamilySpec, k: i64) -> Result<Term> {
    if k < 1 {
        return Err(domain(format!("family terms start at k = 1, got {k}")));
    }
    let value = match *spec {
        FamilySpec::Fibonacci => fibonacci(k)?,
        FamilySpec::FibPoly => return Ok(Term::Poly(fibonacci_poly(k)?)),
        FamilySpec::Hilbert => Integer::from(k),
        FamilySpec::A => binomial(k + 1, 2)?,
        FamilySpec::B { r } => binomial(k + r as i64 - 1, r as i64)?,
        FamilySpec::C => binomial(k + 3, 3)?,
        FamilySpec::D { r } => fibonomial(k + r as i64 - 1, r as i64)?,
    };
    if value.is_zero() {
        return Err(domain(format!("{spec} has a zero term at k = {k}")));
    }
    Ok(Term::Int(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(0).unwrap(), int(0));
        assert_eq!(fibonacci(10).unwrap(), int(55));
        assert_eq!(
            fibonacci(100).unwrap().to_string(),
            "354224848179261915075"
        );
        assert!(matches!(fibonacci(-1), Err(Error::Domain(_))));
        assert_eq!(fibonacci_table(10)[10], int(55));
    }

    #[test]
    fn fibonacci_poly_examples() {
        assert_eq!(fibonacci_poly(0).unwrap(), IntPoly::zero());
        assert_eq!(fibonacci_poly(3).unwrap(), p(&[1, 0, 1]));
        assert_eq!(fibonacci_poly(5).unwrap(), p(&[1, 0, 3, 0, 1]));
        assert_eq!(fibonacci_poly(9).unwrap().eval(&int(1)), int(34));
        assert_eq!(fibonacci_poly_at(9, &int(1)).unwrap(), int(34));
        assert!(matches!(fibonacci_poly(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2).unwrap(), int(10));
        assert_eq!(binomial(3, 5).unwrap(), int(0));
        assert_eq!(binomial(3, -1).unwrap(), int(0));
        assert_eq!(binomial(40, 20).unwrap(), int(137846528820));
        assert_eq!(binomial(0, 0).unwrap(), int(1));
    }

    #[test]
    fn fibonomial_examples() {
        assert_eq!(fibonomial(6, 2).unwrap(), int(40));
        assert_eq!(fibonomial(5, 2).unwrap(), int(15));
        assert_eq!(fibonomial(7, 0).unwrap(), int(1));
        assert_eq!(fibonomial(6, 3).unwrap(), int(60));
        assert_eq!(fibonomial(4, 5).unwrap(), int(0));
        assert_eq!(fibonomial(4, -1).unwrap(), int(0));
        assert_eq!(fibonomial(0, 0).unwrap(), int(1));
    }

    #[test]
    fn x_fibonomial_examples() {
        assert_eq!(x_fibonomial(4, 2).unwrap(), p(&[2, 0, 3, 0, 1]));
        assert_eq!(x_fibonomial(3, 1).unwrap(), p(&[1, 0, 1]));
        assert_eq!(x_fibonomial(6, 3).unwrap().eval(&int(1)), int(60));
        assert_eq!(x_fibonomial(6, 3).unwrap().eval(&int(2)), x_fibonomial_at(6, 3, &int(2)).unwrap());
        assert_eq!(x_fibonomial(3, 4).unwrap(), IntPoly::zero());
    }

    #[test]
    fn family_term_examples() {
        assert_eq!(family_term(&FamilySpec::A, 3).unwrap(), Term::Int(int(6)));
        assert_eq!(family_term(&FamilySpec::B { r: 3 }, 2).unwrap(), Term::Int(int(4)));
        assert_eq!(family_term(&FamilySpec::D { r: 2 }, 3).unwrap(), Term::Int(int(6)));
        assert_eq!(family_term(&FamilySpec::C, 1).unwrap(), Term::Int(int(4)));
        assert_eq!(family_term(&FamilySpec::Hilbert, 7).unwrap(), Term::Int(int(7)));
        assert_eq!(family_term(&FamilySpec::FibPoly, 2).unwrap(), Term::Poly(p(&[0, 1])));
        assert!(family_term(&FamilySpec::Fibonacci, 0).is_err());
    }

    #[test]
    fn family_names() {
        assert_eq!(FamilySpec::from_name("b", Some(3)).unwrap(), FamilySpec::B { r: 3 });
        assert!(FamilySpec::from_name("b", None).is_err());
        assert!(FamilySpec::from_name("b", Some(0)).is_err());
        assert!(FamilySpec::from_name("hilbert", Some(2)).is_err());
        assert!(FamilySpec::from_name("e", None).is_err());
        for name in FamilySpec::NAMES {
            let r = matches!(name, "b" | "d").then_some(2);
            assert_eq!(FamilySpec::from_name(name, r).unwrap().name(), name);
        }
    }
}
