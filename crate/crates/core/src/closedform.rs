//! Closed-form entries of the inverses of every reciprocal Hankel family,
//! and their assembly into full matrices.
//!
//! | family      | `a_k`              | inverse entry                  |
//! |-------------|--------------------|--------------------------------|
//! | `hilbert`   | `k`                | [`hilbert_inverse_entry`]      |
//! | `fibonacci` | `F_k`              | [`filbert_inverse_entry`]      |
//! | `fibpoly`   | `f_k(x)`           | [`filbert_poly_inverse_entry`] |
//! | `a`         | `C(k+1, 2)`        | [`a_inverse_entry`]            |
//! | `b`         | `C(k+r-1, r)`      | [`b_inverse_entry`]            |
//! | `c`         | `C(k+3, 3)`        | [`c_inverse_entry`]            |
//! | `d`         | `((k+r-1, r))`     | [`d_inverse_entry`]            |

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::exact::{fib_rising_ext, rising_factorial_ext, IntPoly, Integer, Rational};
use crate::hankel::ExactMatrix;
use crate::sequences::{
    binomial, fibonacci, fibonacci_poly_table, fibonacci_table, fibonomial_from_table,
    x_fibonomial_from_table, FamilySpec,
};

/// How the sign of each summand of the Fibonomial-based entry `D_ij` is
/// chosen.
///
/// `PrintedK` uses `(-1)^e(n,i,k)` with `k` the summation index.
/// `VariantJ` uses `(-1)^e(n,i,j)`, constant across the sum.
/// `Corrected` uses `(-1)^(e(n,i,k)+n+j+1)`, which is the sign that
/// reproduces the true inverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignVariant {
    PrintedK,
    VariantJ,
    #[default]
    Corrected,
}

impl SignVariant {
    pub const ALL: [SignVariant; 3] = [SignVariant::PrintedK, SignVariant::VariantJ, SignVariant::Corrected];

    pub fn name(&self) -> &'static str {
        match self {
            SignVariant::PrintedK => "printed_k",
            SignVariant::VariantJ => "variant_j",
            SignVariant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown sign variant {s:?}")))
    }
}

/// One reciprocal Hankel matrix together with the formula for its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSpec {
    pub family: FamilySpec,
    pub n: usize,
    /// Only meaningful for family `d`; the default for every other family.
    pub sign_variant: SignVariant,
}

impl MatrixSpec {
    pub fn new(family: FamilySpec, n: usize, sign_variant: SignVariant) -> Result<Self> {
        family.validate()?;
        if n == 0 {
            return Err(domain("matrix size must be at least 1"));
        }
        if let FamilySpec::D { r } = family {
            if r < 2 {
                return Err(domain("the Fibonomial family is only defined here for r >= 2"));
            }
        } else if sign_variant != SignVariant::default() {
            return Err(domain(format!(
                "sign variants only apply to family d, not {family}"
            )));
        }
        Ok(MatrixSpec {
            family,
            n,
            sign_variant,
        })
    }

    /// Spec with the default sign variant.
    pub fn of(family: FamilySpec, n: usize) -> Result<Self> {
        Self::new(family, n, SignVariant::default())
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)?;
        if matches!(self.family, FamilySpec::D { .. }) {
            write!(f, " sign={}", self.sign_variant)?;
        }
        Ok(())
    }
}

/// Sign exponent `e(n,i,j) = n(i+j+1) + C(i,2) + C(j,2) + 1`. Only its
/// parity matters.
pub fn sign_exponent_e(n: i64, i: i64, j: i64) -> i64 {
    n * (i + j + 1) + i * (i - 1) / 2 + j * (j - 1) / 2 + 1
}

fn parity_sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_indices(n: i64, i: i64, j: i64) -> Result<()> {
    if n < 1 || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(domain(format!("entry ({i}, {j}) outside a {n}x{n} matrix")));
    }
    Ok(())
}

/// Entry `(i, j)` of the inverse of the `n x n` Hilbert matrix.
pub fn hilbert_inverse_entry(n: i64, i: i64, j: i64) -> Result<Integer> {
    check_indices(n, i, j)?;
    let c = binomial(i + j - 2, i - 1)?;
    let v = binomial(n + i - 1, n - j)? * binomial(n + j - 1, n - i)? * &c * &c * (i + j - 1);
    Ok(v * parity_sign(i + j))
}

/// Entry `W_ij(n)` of the inverse of the Filbert matrix `R_n(F_k)`.
pub fn filbert_inverse_entry(n: i64, i: i64, j: i64) -> Result<Integer> {
    check_indices(n, i, j)?;
    let f = fibonacci_table((2 * n) as usize);
    let fibo = |a: i64, b: i64| fibonomial_from_table(&f, a as usize, b as usize);
    let c = fibo(i + j - 2, i - 1)?;
    let v = &f[(i + j - 1) as usize] * fibo(n + i - 1, n - j)? * fibo(n + j - 1, n - i)? * &c * &c;
    Ok(v * parity_sign(sign_exponent_e(n, i, j)))
}

/// Entry `V_ij(n)` of the inverse of `R_n(f_k(x))`, an integer polynomial.
pub fn filbert_poly_inverse_entry(n: i64, i: i64, j: i64) -> Result<IntPoly> {
    check_indices(n, i, j)?;
    let f = fibonacci_poly_table((2 * n) as usize);
    let fibo = |a: i64, b: i64| x_fibonomial_from_table(&f, a as usize, b as usize);
    let c = fibo(i + j - 2, i - 1)?;
    let v = &(&(&(&f[(i + j - 1) as usize] * &fibo(n + i - 1, n - j)?) * &fibo(n + j - 1, n - i)?)
        * &c)
        * &c;
    Ok(if parity_sign(sign_exponent_e(n, i, j)) < 0 { -v } else { v })
}

fn integral(q: Rational, what: impl FnOnce() -> String) -> Result<Integer> {
    q.to_integer()
        .ok_or_else(|| Error::IntegralityViolation(format!("{} = {q}", what())))
}

/// Entry `A_ij(n)` of the inverse of `R_n(C(k+1, 2))`. The half-integer
/// summands must add up to an integer.
pub fn a_inverse_entry(n: i64, i: i64, j: i64) -> Result<Integer> {
    check_indices(n, i, j)?;
    let half_i = Rational::new(Integer::from(i), Integer::from(2))?;
    let mut total = Rational::zero();
    for k in 0..j {
        let b = binomial(n + i, n - k)?
            * binomial(n + k, n - i)?
            * binomial(i + k - 1, k)?
            * binomial(i + k, k)?
            * parity_sign(i + k + 1);
        total += Rational::from_integer(b) * &half_i;
    }
    integral(total, || format!("A_{i}{j}({n})"))
}

/// Summand `S(n,i,j,k)` of `B_ij(n, r)`.
pub fn b_summand(n: i64, i: i64, j: i64, k: i64, r: i64) -> Result<Rational> {
    let coeff = binomial(n + i + r - 2, i)?
        * binomial(n, i)?
        * binomial(n + k + r - 2, k)?
        * binomial(n, k)?
        * (i * i)
        * parity_sign(i + k + 1);
    let top = rising_factorial_ext(i + j, r - 2)?;
    let bottom = rising_factorial_ext(i + k, r - 1)? * Rational::from(r);
    (Rational::from_integer(coeff) * top).checked_div(&bottom)
}

/// Entry `B_ij(n, r)` of the inverse of `R_n(C(k+r-1, r))`. Entries need
/// not be integers.
pub fn b_inverse_entry(n: i64, i: i64, j: i64, r: i64) -> Result<Rational> {
    check_indices(n, i, j)?;
    if r < 1 {
        return Err(domain(format!("r = {r} < 1")));
    }
    (0..j).map(|k| b_summand(n, i, j, k, r)).sum()
}

/// Summand of `C_ij(n)`, required to be an integer on its own.
pub fn c_summand(n: i64, i: i64, j: i64, k: i64) -> Result<Integer> {
    let coeff = binomial(n + i + 2, i + k + 1)?
        * binomial(n + k + 1, i + k + 1)?
        * binomial(i + k + 1, i)?
        * binomial(i + k, i)?
        * (i * (j - k))
        * parity_sign(i + k + 1);
    let value = Rational::new(coeff, Integer::from(3))?;
    integral(value, || format!("summand k={k} of C_{i}{j}({n})"))
}

/// Entry `C_ij(n)` of the inverse of `R_n(C(k+3, 3))`.
pub fn c_inverse_entry(n: i64, i: i64, j: i64) -> Result<Integer> {
    check_indices(n, i, j)?;
    (0..j).map(|k| c_summand(n, i, j, k)).sum()
}

fn d_sign(variant: SignVariant, n: i64, i: i64, j: i64, k: i64) -> i64 {
    let e = match variant {
        SignVariant::PrintedK => sign_exponent_e(n, i, k),
        SignVariant::VariantJ => sign_exponent_e(n, i, j),
        SignVariant::Corrected => sign_exponent_e(n, i, k) + n + j + 1,
    };
    parity_sign(e)
}

/// Entry `D_ij(n, r)`: the Fibonomial analogue of `B_ij(n, r)`, a candidate
/// inverse of `R_n(((k+r-1, r)))`.
pub fn d_inverse_entry(n: i64, i: i64, j: i64, r: i64, variant: SignVariant) -> Result<Rational> {
    check_indices(n, i, j)?;
    if r < 2 {
        return Err(domain(format!("the Fibonomial family needs r >= 2, got {r}")));
    }
    let f = fibonacci_table((2 * n + 2 * r) as usize);
    let fibo = |a: i64, b: i64| -> Result<Integer> {
        if b < 0 || b > a {
            return Ok(Integer::from(0));
        }
        fibonomial_from_table(&f, a as usize, b as usize)
    };
    let fi = &f[i as usize];
    let outer = fibo(n + i + r - 2, i)? * fibo(n, i)? * fi * fi;
    let top = fib_rising_ext(i + j, r - 2)?;
    let fr = Rational::from_integer(fibonacci(r)?);
    let mut total = Rational::zero();
    for k in 0..j {
        let coeff = &outer * fibo(n + k + r - 2, k)? * fibo(n, k)? * d_sign(variant, n, i, j, k);
        let bottom = fib_rising_ext(i + k, r - 1)? * &fr;
        total += (Rational::from_integer(coeff) * &top).checked_div(&bottom)?;
    }
    Ok(total)
}

/// An assembled inverse: rational entries for numeric families, polynomial
/// entries for `fibpoly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(ExactMatrix<Rational>),
    Poly(ExactMatrix<IntPoly>),
}

impl AnyMatrix {
    pub fn n_rows(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.n_rows(),
            AnyMatrix::Poly(m) => m.n_rows(),
        }
    }

    pub fn n_cols(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.n_cols(),
            AnyMatrix::Poly(m) => m.n_cols(),
        }
    }

    pub fn as_rational(&self) -> Option<&ExactMatrix<Rational>> {
        match self {
            AnyMatrix::Rational(m) => Some(m),
            AnyMatrix::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&ExactMatrix<IntPoly>> {
        match self {
            AnyMatrix::Poly(m) => Some(m),
            AnyMatrix::Rational(_) => None,
        }
    }

    /// Specialises polynomial entries at an integer `x`; rational matrices
    /// are returned unchanged.
    pub fn eval_at(&self, x: &Integer) -> ExactMatrix<Rational> {
        match self {
            AnyMatrix::Rational(m) => m.clone(),
            AnyMatrix::Poly(m) => m.map(|p| Rational::from_integer(p.eval(x))),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            AnyMatrix::Rational(m) => m.is_symmetric(),
            AnyMatrix::Poly(m) => m.is_symmetric(),
        }
    }
}

/// The full closed-form inverse for a spec. Entries are computed
/// concurrently.
pub fn assemble_inverse(spec: &MatrixSpec) -> Result<AnyMatrix> {
    let n = spec.n;
    let nn = n as i64;
    let int = |v: Result<Integer>| v.map(Rational::from_integer);
    let m = match spec.family {
        FamilySpec::FibPoly => {
            return ExactMatrix::par_try_from_fn(n, n, |i, j| {
                filbert_poly_inverse_entry(nn, i as i64, j as i64)
            })
            .map(AnyMatrix::Poly)
        }
        FamilySpec::Hilbert => {
            ExactMatrix::par_try_from_fn(n, n, |i, j| int(hilbert_inverse_entry(nn, i as i64, j as i64)))
        }
        FamilySpec::Fibonacci => {
            ExactMatrix::par_try_from_fn(n, n, |i, j| int(filbert_inverse_entry(nn, i as i64, j as i64)))
        }
        FamilySpec::A => {
            ExactMatrix::par_try_from_fn(n, n, |i, j| int(a_inverse_entry(nn, i as i64, j as i64)))
        }
        FamilySpec::B { r } => ExactMatrix::par_try_from_fn(n, n, |i, j| {
            b_inverse_entry(nn, i as i64, j as i64, r as i64)
        }),
        FamilySpec::C => {
            ExactMatrix::par_try_from_fn(n, n, |i, j| int(c_inverse_entry(nn, i as i64, j as i64)))
        }
        FamilySpec::D { r } => ExactMatrix::par_try_from_fn(n, n, |i, j| {
            d_inverse_entry(nn, i as i64, j as i64, r as i64, spec.sign_variant)
        }),
    }?;
    Ok(AnyMatrix::Rational(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn sign_exponent_examples() {
        assert_eq!(sign_exponent_e(1, 1, 1), 4);
        assert_eq!(sign_exponent_e(2, 1, 2), 10);
        assert_eq!(sign_exponent_e(2, 2, 2), 13);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_inverse_entry(1, 1, 1).unwrap(), int(1));
        assert_eq!(hilbert_inverse_entry(2, 1, 2).unwrap(), int(-6));
        assert_eq!(hilbert_inverse_entry(2, 2, 2).unwrap(), int(12));
        assert!(hilbert_inverse_entry(2, 3, 1).is_err());
    }

    #[test]
    fn filbert_examples() {
        assert_eq!(filbert_inverse_entry(1, 1, 1).unwrap(), int(1));
        assert_eq!(filbert_inverse_entry(2, 1, 2).unwrap(), int(2));
        assert_eq!(filbert_inverse_entry(2, 2, 2).unwrap(), int(-2));
        assert_eq!(filbert_inverse_entry(2, 1, 1).unwrap(), int(-1));
    }

    #[test]
    fn filbert_poly_examples() {
        assert_eq!(filbert_poly_inverse_entry(2, 1, 1).unwrap(), p(&[0, 0, -1]));
        assert_eq!(filbert_poly_inverse_entry(2, 1, 2).unwrap(), p(&[0, 1, 0, 1]));
        assert_eq!(filbert_poly_inverse_entry(2, 2, 2).unwrap(), p(&[0, 0, -1, 0, -1]));
        assert_eq!(
            filbert_poly_inverse_entry(3, 2, 2).unwrap().eval(&int(1)),
            filbert_inverse_entry(3, 2, 2).unwrap()
        );
    }

    #[test]
    fn a_examples() {
        assert_eq!(a_inverse_entry(1, 1, 1).unwrap(), int(1));
        assert_eq!(a_inverse_entry(2, 1, 1).unwrap(), int(3));
        assert_eq!(a_inverse_entry(2, 1, 2).unwrap(), int(-6));
        assert_eq!(a_inverse_entry(2, 2, 2).unwrap(), int(18));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_inverse_entry(2, 1, 2, 1).unwrap(), q("-6"));
        assert_eq!(b_inverse_entry(2, 1, 1, 2).unwrap(), q("3"));
        assert_eq!(b_inverse_entry(2, 2, 2, 3).unwrap(), q("80/3"));
        assert_eq!(b_inverse_entry(2, 1, 1, 3).unwrap(), q("8/3"));
        assert!(b_inverse_entry(2, 1, 1, 0).is_err());
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_inverse_entry(1, 1, 1).unwrap(), int(4));
        assert_eq!(c_inverse_entry(2, 1, 1).unwrap(), int(20));
        assert_eq!(c_inverse_entry(2, 1, 2).unwrap(), int(-40));
        assert_eq!(c_inverse_entry(2, 2, 2).unwrap(), int(100));
    }

    #[test]
    fn d_examples() {
        use SignVariant::*;
        assert_eq!(d_inverse_entry(2, 1, 1, 2, VariantJ).unwrap(), q("-2"));
        assert_eq!(d_inverse_entry(2, 1, 2, 2, VariantJ).unwrap(), q("6"));
        assert_eq!(d_inverse_entry(2, 1, 2, 2, PrintedK).unwrap(), q("-6"));
        assert_eq!(d_inverse_entry(2, 2, 2, 2, VariantJ).unwrap(), q("-12"));
        for (i, j, v) in [(1, 1, "-2"), (1, 2, "6"), (2, 1, "6"), (2, 2, "-12")] {
            assert_eq!(d_inverse_entry(2, i, j, 2, Corrected).unwrap(), q(v));
        }
        // printed sign already fails on the 1x1 case: inverse of [1/1] is 1
        assert_eq!(d_inverse_entry(1, 1, 1, 2, PrintedK).unwrap(), q("-1"));
        assert_eq!(d_inverse_entry(1, 1, 1, 2, Corrected).unwrap(), q("1"));
        assert!(d_inverse_entry(2, 1, 1, 1, Corrected).is_err());
    }

    #[test]
    fn assemble_examples() {
        let w = assemble_inverse(&MatrixSpec::of(FamilySpec::Fibonacci, 2).unwrap()).unwrap();
        assert_eq!(
            w.as_rational().unwrap().entries(),
            &[q("-1"), q("2"), q("2"), q("-2")]
        );
        let h = assemble_inverse(&MatrixSpec::of(FamilySpec::Hilbert, 3).unwrap()).unwrap();
        let expect: Vec<Rational> = [9, -36, 30, -36, 192, -180, 30, -180, 180]
            .iter()
            .map(|&v| Rational::from(v))
            .collect();
        assert_eq!(h.as_rational().unwrap().entries(), expect.as_slice());
        let v = assemble_inverse(&MatrixSpec::of(FamilySpec::FibPoly, 2).unwrap()).unwrap();
        assert_eq!(
            v.as_poly().unwrap().entries(),
            &[p(&[0, 0, -1]), p(&[0, 1, 0, 1]), p(&[0, 1, 0, 1]), p(&[0, 0, -1, 0, -1])]
        );
    }

    #[test]
    fn spec_validation() {
        assert!(MatrixSpec::new(FamilySpec::D { r: 1 }, 2, SignVariant::Corrected).is_err());
        assert!(MatrixSpec::new(FamilySpec::A, 2, SignVariant::PrintedK).is_err());
        assert!(MatrixSpec::new(FamilySpec::A, 0, SignVariant::default()).is_err());
        assert!(MatrixSpec::new(FamilySpec::D { r: 2 }, 2, SignVariant::PrintedK).is_ok());
        assert_eq!("variant_j".parse::<SignVariant>().unwrap(), SignVariant::VariantJ);
        assert!("j".parse::<SignVariant>().is_err());
    }
}
