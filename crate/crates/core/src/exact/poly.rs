use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Integer;
use crate::error::{Error, Result};

/// Dense polynomial in `x` with integer coefficients, ascending degree.
///
/// The coefficient list never ends in a zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(Integer::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::monomial(Integer::one(), 1)
    }

    pub fn constant(c: Integer) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: Integer, degree: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); degree];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Integer) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact quotient `self / divisor` over the integers.
    ///
    /// Fails with [`Error::InexactDivision`] if the division leaves a
    /// remainder, or if some quotient coefficient would not be an integer.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(da) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if da < db {
            return Err(Error::InexactDivision {
                remainder: self.clone(),
            });
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); da - db + 1];
        for d in (0..=da - db).rev() {
            let top = &rem[d + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    remainder: IntPoly::new(rem),
                });
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[d + j] -= &q * b;
            }
            quot[d] = q;
        }
        let remainder = IntPoly::new(rem);
        if !remainder.is_zero() {
            return Err(Error::InexactDivision { remainder });
        }
        Ok(IntPoly::new(quot))
    }

    pub fn pow(&self, exp: u32) -> IntPoly {
        (0..exp).fold(IntPoly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{mag}")?,
                _ if !unit => write!(f, "{mag}")?,
                _ => {}
            }
            match deg {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[0, 1]) * &p(&[1, 0, 1]), p(&[0, 1, 0, 1]));
        let s = &p(&[1, 0, 1]) + &(-&p(&[1, 0, 1]));
        assert!(s.is_zero());
        assert!(s.coeffs().is_empty());
        assert_eq!(&p(&[2, 0, 1]) * &p(&[1, 0, 1]), p(&[2, 0, 3, 0, 1]));
        assert_eq!(p(&[1, 2]).scale(&Integer::from(-3)), p(&[-3, -6]));
        assert!(p(&[1, 2]).scale(&Integer::zero()).is_zero());
    }

    #[test]
    fn canonical_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(p(&[1, 0, 1]).degree(), Some(2));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn exact_division_examples() {
        // x^4+3x^2+2 = (x^2+1)(x^2+2)
        let q = p(&[2, 0, 3, 0, 1]).exact_div(&p(&[1, 0, 1])).unwrap();
        assert_eq!(q, p(&[2, 0, 1]));
        assert_eq!(&q * &p(&[1, 0, 1]), p(&[2, 0, 3, 0, 1]));
        // f_6 / f_3
        let q = p(&[0, 3, 0, 4, 0, 1]).exact_div(&p(&[1, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 3, 0, 1]));
    }

    #[test]
    fn inexact_division_reports_remainder() {
        match p(&[1, 0, 1]).exact_div(&p(&[0, 1])) {
            Err(Error::InexactDivision { remainder }) => assert_eq!(remainder, p(&[1])),
            other => panic!("expected InexactDivision, got {other:?}"),
        }
        // non-monic divisor whose leading coefficient does not divide
        assert!(matches!(
            p(&[0, 1]).exact_div(&p(&[1, 2])),
            Err(Error::InexactDivision { .. })
        ));
        assert_eq!(p(&[1]).exact_div(&IntPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(IntPoly::zero().exact_div(&p(&[3, 1])).unwrap(), IntPoly::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 0, 3, 0, 1]).to_string(), "x^4+3x^2+2");
        assert_eq!(p(&[0, -1, 0, -1]).to_string(), "-x^3-x");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_horner() {
        let f = p(&[1, 0, 3, 0, 1]);
        assert_eq!(f.eval(&Integer::from(1)), Integer::from(5));
        assert_eq!(f.eval(&Integer::from(-2)), Integer::from(29));
    }
}
