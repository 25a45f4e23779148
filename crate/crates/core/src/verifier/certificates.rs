//! Pointwise exact checks of the recurrences and telescoping certificates
//! that prove the inverse formulas.
//!
//! Every relation is written as a list of terms whose sum must vanish. A
//! mutation run negates the first term, which any working checker has to
//! notice somewhere on its grid.
//!
//! Certificates over Fibonacci polynomials are evaluated at integer points
//! `x >= 1`, where every `f_k(x)` with `k >= 1` is positive.

use std::fmt;
use std::str::FromStr;

use crate::closedform::{b_inverse_entry, b_summand, sign_exponent_e};
use crate::error::{domain, Error, Result};
use crate::exact::{rising_factorial_ext, Integer, Rational};
use crate::sequences::{binomial, fibonacci_poly_table_at, fibonomial_from_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertificateId {
    /// The four-term Fibonacci identity `M(n,i,j) = 0`.
    MZero,
    /// Two-step recurrence of the Filbert product summand `P(n,i,m,j)`.
    FilRec,
    /// The same recurrence for the row sums `p(n,i,m)`.
    FilSum,
    /// Recurrence of `P(n,1,m,j)` in `m`.
    Pn1m,
    /// Telescoping certificate giving `p(m,1,m) = 0`.
    G1,
    /// Telescoping certificate giving `p(n,1,1) = 1`.
    G2,
    /// Telescoping certificate giving `p(n+1,n+1,n+1) = p(n,n,n)`.
    G3,
    /// Eight-term recurrence of the binomial product summand `H`.
    HRec,
    /// Recurrence of the summand `Z` of `C(n) R_n(c_k)`.
    ZRec,
    /// Creative-telescoping certificate `T` and the symmetry it implies.
    TSymm,
    /// Certificate `Y` for the first column of `B(n,r) R_n(b_k)`.
    YTel,
}

impl CertificateId {
    pub const ALL: [CertificateId; 11] = [
        CertificateId::MZero,
        CertificateId::FilRec,
        CertificateId::FilSum,
        CertificateId::Pn1m,
        CertificateId::G1,
        CertificateId::G2,
        CertificateId::G3,
        CertificateId::HRec,
        CertificateId::ZRec,
        CertificateId::TSymm,
        CertificateId::YTel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CertificateId::MZero => "M_zero",
            CertificateId::FilRec => "filrec",
            CertificateId::FilSum => "filsum",
            CertificateId::Pn1m => "pn1m",
            CertificateId::G1 => "G1",
            CertificateId::G2 => "G2",
            CertificateId::G3 => "G3",
            CertificateId::HRec => "H_rec",
            CertificateId::ZRec => "Z_rec",
            CertificateId::TSymm => "T_symm",
            CertificateId::YTel => "Y_tel",
        }
    }

    /// Evaluated at Fibonacci-polynomial points `x`.
    pub fn uses_x(&self) -> bool {
        !self.uses_r() && *self != CertificateId::ZRec
    }

    /// Evaluated over the binomial parameter `r`.
    pub fn uses_r(&self) -> bool {
        matches!(self, CertificateId::HRec | CertificateId::TSymm | CertificateId::YTel)
    }

    /// Readings that make sense for this certificate. The first one is the
    /// literal printed form; the last one is the reading checked by default.
    pub fn readings(&self) -> &'static [Reading] {
        match self {
            CertificateId::FilRec | CertificateId::FilSum | CertificateId::YTel => {
                &[Reading::Printed, Reading::Amended]
            }
            CertificateId::Pn1m => &[Reading::Printed, Reading::PrintedFreeIndex, Reading::Amended],
            _ => &[Reading::Printed],
        }
    }

    pub fn default_reading(&self) -> Reading {
        *self.readings().last().unwrap()
    }
}

impl fmt::Display for CertificateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CertificateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CertificateId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown certificate {s:?}")))
    }
}

/// How a certificate's formula is read.
///
/// * `Printed`: literally as typeset.
/// * `PrintedFreeIndex`: `pn1m` only; the last term keeps its printed free
///   row index `i` (ranging over the grid) instead of `1`.
/// * `Amended`: the corrected form. For `filrec`/`filsum` the sign factor is
///   `(-1)^(n+i+1)`; for `pn1m` the second term enters with `+`; for `Y_tel`
///   the sum over `j` runs to `n+1` (boundary term taken in its cancelled
///   form) and the initial double sum starts at `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reading {
    Printed,
    PrintedFreeIndex,
    Amended,
}

impl Reading {
    pub fn name(&self) -> &'static str {
        match self {
            Reading::Printed => "printed",
            Reading::PrintedFreeIndex => "printed_free_i",
            Reading::Amended => "amended",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Reading::Printed, Reading::PrintedFreeIndex, Reading::Amended]
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown reading {s:?}")))
    }
}

/// Upper bounds of the parameter grid. Inner indices (`i`, `m`, `j`, `k`)
/// range over the values each relation is stated for, given `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertGrid {
    pub n_max: i64,
    /// Ignored by certificates without an `r` parameter.
    pub r_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub reading: Reading,
    pub flip_first_term: bool,
}

pub type Point = Vec<(&'static str, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub point: Point,
    pub residual: Rational,
}

/// A boundary value the certificate is used to establish, computed directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCheck {
    pub label: &'static str,
    pub point: Point,
    pub value: Rational,
    pub expected: Rational,
}

impl BoundaryCheck {
    pub fn holds(&self) -> bool {
        self.value == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub id: CertificateId,
    pub reading: Reading,
    pub grid: CertGrid,
    pub x_values: Vec<i64>,
    pub mutated: bool,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
    pub boundary: Vec<BoundaryCheck>,
}

impl CertReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.boundary.iter().all(BoundaryCheck::holds)
    }
}

/// Checks a certificate in its default reading.
pub fn check_certificate(id: CertificateId, grid: CertGrid, x_values: &[i64]) -> Result<CertReport> {
    check_certificate_with(
        id,
        grid,
        x_values,
        CheckOptions {
            reading: id.default_reading(),
            flip_first_term: false,
        },
    )
}

pub fn check_certificate_with(
    id: CertificateId,
    grid: CertGrid,
    x_values: &[i64],
    options: CheckOptions,
) -> Result<CertReport> {
    if !id.readings().contains(&options.reading) {
        return Err(domain(format!("{id} has no {} reading", options.reading)));
    }
    if grid.n_max < 1 {
        return Err(domain("certificate grids need n_max >= 1"));
    }
    if id.uses_r() && grid.r_max < 1 {
        return Err(domain(format!("{id} needs r_max >= 1")));
    }
    let xs: Vec<i64> = if id.uses_x() {
        if x_values.is_empty() {
            return Err(domain(format!("{id} needs at least one x value")));
        }
        if let Some(bad) = x_values.iter().find(|&&x| x < 1) {
            return Err(domain(format!("x = {bad} is outside x >= 1")));
        }
        x_values.to_vec()
    } else {
        Vec::new()
    };

    let mut acc = Acc {
        flip: options.flip_first_term,
        evaluations: 0,
        violations: Vec::new(),
        boundary: Vec::new(),
    };
    let reading = options.reading;
    for &x in &xs {
        let ctx = FibAt::new(x, grid.n_max);
        match id {
            CertificateId::MZero => m_zero(&ctx, grid, &mut acc)?,
            CertificateId::FilRec => filrec(&ctx, grid, reading, &mut acc)?,
            CertificateId::FilSum => filsum(&ctx, grid, reading, &mut acc)?,
            CertificateId::Pn1m => pn1m(&ctx, grid, reading, &mut acc)?,
            CertificateId::G1 => g1(&ctx, grid, &mut acc)?,
            CertificateId::G2 => g2(&ctx, grid, &mut acc)?,
            CertificateId::G3 => g3(&ctx, grid, &mut acc)?,
            _ => unreachable!(),
        }
    }
    match id {
        CertificateId::HRec => h_rec(grid, &mut acc)?,
        CertificateId::ZRec => z_rec(grid, &mut acc)?,
        CertificateId::TSymm => t_symm(grid, &mut acc)?,
        CertificateId::YTel => y_tel(grid, reading, &mut acc)?,
        _ => {}
    }

    Ok(CertReport {
        id,
        reading,
        grid,
        x_values: xs,
        mutated: options.flip_first_term,
        evaluations: acc.evaluations,
        violations: acc.violations,
        boundary: acc.boundary,
    })
}

struct Acc {
    flip: bool,
    evaluations: usize,
    violations: Vec<Violation>,
    boundary: Vec<BoundaryCheck>,
}

impl Acc {
    fn relation(&mut self, relation: &'static str, point: &[(&'static str, i64)], terms: Vec<Rational>) {
        self.evaluations += 1;
        let mut residual = Rational::zero();
        for (idx, t) in terms.into_iter().enumerate() {
            if idx == 0 && self.flip {
                residual = residual - t;
            } else {
                residual += t;
            }
        }
        if !residual.is_zero() {
            self.violations.push(Violation {
                relation,
                point: point.to_vec(),
                residual,
            });
        }
    }

    fn boundary(&mut self, label: &'static str, point: &[(&'static str, i64)], value: Rational, expected: Rational) {
        self.boundary.push(BoundaryCheck {
            label,
            point: point.to_vec(),
            value,
            expected,
        });
    }
}

fn sign(e: i64) -> Rational {
    Rational::from(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

/// Fibonacci polynomial values at one integer point.
struct FibAt {
    x: i64,
    f: Vec<Integer>,
}

impl FibAt {
    fn new(x: i64, n_max: i64) -> Self {
        let len = (4 * n_max + 8) as usize;
        FibAt {
            x,
            f: fibonacci_poly_table_at(len, &Integer::from(x)),
        }
    }

    fn f(&self, k: i64) -> Rational {
        let k = usize::try_from(k).expect("Fibonacci index on a validated grid");
        Rational::from_integer(self.f[k].clone())
    }

    /// x-Fibonomial value, zero outside `0 <= b <= a`.
    fn xf(&self, a: i64, b: i64) -> Result<Rational> {
        if b < 0 || b > a {
            return Ok(Rational::zero());
        }
        fibonomial_from_table(&self.f, a as usize, b as usize).map(Rational::from_integer)
    }

    /// Summand `P(n,i,m,j)` of entry `(i, m)` of `V(n) R_n(f_k(x))`.
    fn p(&self, n: i64, i: i64, m: i64, j: i64) -> Result<Rational> {
        let c = self.xf(i + j - 2, i - 1)?;
        let num = sign(sign_exponent_e(n, i, j))
            * self.f(i + j - 1)
            * self.xf(n + i - 1, n - j)?
            * self.xf(n + j - 1, n - i)?
            * &c
            * &c;
        num.checked_div(&self.f(j + m - 1))
    }

    fn p_sum(&self, n: i64, i: i64, m: i64) -> Result<Rational> {
        (1..=n).map(|j| self.p(n, i, m, j)).sum()
    }
}

fn m_zero(c: &FibAt, grid: CertGrid, acc: &mut Acc) -> Result<()> {
    for n in 1..=grid.n_max {
        for i in 1..=n {
            for j in 1..=n {
                let terms = vec![
                    sign(i + j) * c.f(n + i - 1) * c.f(n + j - 1) * c.f(i + j - 2),
                    c.f(n - i) * c.f(n - j) * c.f(i + j - 2),
                    sign(i + j - 1) * c.f(n + i - 2) * c.f(n + j - 1) * c.f(i + j - 1),
                    c.f(n - i + 1) * c.f(n - j) * c.f(i + j - 1),
                ];
                acc.relation("M(n,i,j) = 0", &[("x", c.x), ("n", n), ("i", i), ("j", j)], terms);
            }
        }
    }
    Ok(())
}

fn filrec_sign(reading: Reading, n: i64, i: i64) -> Rational {
    match reading {
        Reading::Amended => sign(n + i + 1),
        _ => sign(n + i),
    }
}

fn filrec(c: &FibAt, grid: CertGrid, reading: Reading, acc: &mut Acc) -> Result<()> {
    for n in 2..=grid.n_max {
        for i in 2..=n {
            let a = c.f(n - i + 1) * c.f(n + i - 2);
            let b = filrec_sign(reading, n, i) * c.f(i - 1) * c.f(i - 1);
            for m in 1..=n {
                for j in 1..=n {
                    let terms = vec![
                        -&a * c.p(n, i - 1, m, j)?,
                        &a * c.p(n - 1, i - 1, m, j)?,
                        &b * c.p(n, i, m, j)?,
                        -&b * c.p(n - 1, i, m, j)?,
                    ];
                    let point = [("x", c.x), ("n", n), ("i", i), ("m", m), ("j", j)];
                    acc.relation("summand recurrence", &point, terms);
                }
            }
        }
    }
    Ok(())
}

fn filsum(c: &FibAt, grid: CertGrid, reading: Reading, acc: &mut Acc) -> Result<()> {
    for n in 2..=grid.n_max {
        for i in 2..=n {
            let a = c.f(n - i + 1) * c.f(n + i - 2);
            let b = filrec_sign(reading, n, i) * c.f(i - 1) * c.f(i - 1);
            for m in 1..=n {
                let terms = vec![
                    -&a * c.p_sum(n, i - 1, m)?,
                    &a * c.p_sum(n - 1, i - 1, m)?,
                    &b * c.p_sum(n, i, m)?,
                    -&b * c.p_sum(n - 1, i, m)?,
                ];
                acc.relation("row-sum recurrence", &[("x", c.x), ("n", n), ("i", i), ("m", m)], terms);
            }
        }
    }
    Ok(())
}

fn pn1m(c: &FibAt, grid: CertGrid, reading: Reading, acc: &mut Acc) -> Result<()> {
    let second = match reading {
        Reading::Amended => q(1),
        _ => q(-1),
    };
    for n in 2..=grid.n_max {
        for m in 2..=n {
            for j in 1..=n {
                let rows: Vec<i64> = match reading {
                    Reading::PrintedFreeIndex => (1..=n).collect(),
                    _ => vec![1],
                };
                for last_row in rows {
                    let terms = vec![
                        sign(m + 1) * c.f(n - 1) * c.f(n + m - 2) * c.p(n, 1, m - 1, j)?,
                        &second * c.f(n) * c.f(n - m + 1) * c.p(n - 1, 1, m - 1, j)?,
                        sign(m) * c.f(n - 1) * c.f(n + m - 1) * c.p(n, 1, m, j)?,
                        c.f(n) * c.f(n - m) * c.p(n - 1, last_row, m, j)?,
                    ];
                    let point = [("x", c.x), ("n", n), ("m", m), ("j", j), ("i", last_row)];
                    acc.relation("first-row recurrence", &point, terms);
                }
            }
        }
    }
    Ok(())
}

fn g1(c: &FibAt, grid: CertGrid, acc: &mut Acc) -> Result<()> {
    let cert = |m: i64, j: i64| -> Result<Rational> {
        Ok(sign(j - 1) * c.f(j) * c.f(j - 1) * c.p(m, 1, m, j)?)
    };
    for m in 1..=grid.n_max {
        for j in 1..=m {
            let terms = vec![
                sign(m) * c.f(m) * c.f(m - 1) * c.p(m, 1, m, j)?,
                -cert(m, j + 1)?,
                cert(m, j)?,
            ];
            acc.relation("telescoping", &[("x", c.x), ("m", m), ("j", j)], terms);
        }
        if m >= 2 {
            let point = [("x", c.x), ("m", m)];
            acc.boundary("G1(m,m+1) - G1(m,1)", &point, cert(m, m + 1)? - cert(m, 1)?, q(0));
            acc.boundary("p(m,1,m)", &point, c.p_sum(m, 1, m)?, q(0));
        }
    }
    Ok(())
}

fn g2(c: &FibAt, grid: CertGrid, acc: &mut Acc) -> Result<()> {
    let cert = |n: i64, j: i64| -> Result<Rational> { Ok(sign(j - 1) * c.f(j) * c.f(j) * c.p(n, 1, 1, j)?) };
    for n in 1..=grid.n_max {
        let scale = sign(n) * c.f(n) * c.f(n);
        for j in 1..=n {
            let terms = vec![&scale * c.p(n, 1, 1, j)?, -cert(n, j + 1)?, cert(n, j)?];
            acc.relation("telescoping", &[("x", c.x), ("n", n), ("j", j)], terms);
        }
        let point = [("x", c.x), ("n", n)];
        let telescoped = (cert(n, n + 1)? - cert(n, 1)?).checked_div(&scale)?;
        acc.boundary("p(n,1,1) from telescoped sum", &point, telescoped, q(1));
        acc.boundary("p(n,1,1)", &point, c.p_sum(n, 1, 1)?, q(1));
    }
    Ok(())
}

fn g3(c: &FibAt, grid: CertGrid, acc: &mut Acc) -> Result<()> {
    let cert = |n: i64, j: i64| -> Result<Rational> {
        let ratio = c.f(3 * n + j - 1).checked_div(&c.f(n + j - 1))? + q(2) * sign(n);
        let sq = c.xf(n + j - 2, j - 2)?;
        Ok(sign(sign_exponent_e(n, n, j)) * ratio * c.xf(2 * n - 1, n - j + 1)? * &sq * &sq)
    };
    for n in 1..=grid.n_max {
        for j in 1..=n + 1 {
            let terms = vec![
                c.p(n + 1, n + 1, n + 1, j)?,
                -c.p(n, n, n, j)?,
                -cert(n, j + 1)?,
                cert(n, j)?,
            ];
            acc.relation("telescoping", &[("x", c.x), ("n", n), ("j", j)], terms);
        }
        let point = [("x", c.x), ("n", n)];
        acc.boundary("G3(n,n+2) - G3(n,1)", &point, cert(n, n + 2)? - cert(n, 1)?, q(0));
        acc.boundary("p(n,n,n)", &point, c.p_sum(n, n, n)?, q(1));
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> Result<Rational> {
    binomial(n, k).map(Rational::from_integer)
}

/// Summand of entry `(i, m)` of `B(n,r) R_n(b_k)`.
fn h_term(n: i64, i: i64, m: i64, j: i64, k: i64, r: i64) -> Result<Rational> {
    b_summand(n, i, j, k, r)?.checked_div(&binom(j + m + r - 2, r)?)
}

fn h_rec(grid: CertGrid, acc: &mut Acc) -> Result<()> {
    for r in 1..=grid.r_max {
        for n in 2..=grid.n_max {
            let outer = q(n * n);
            let inner = q((n + r - 2) * (n + r - 2));
            for i in 2..=n {
                for m in 2..=n {
                    let c1 = q((i - m + r - 1) * (n - i + r - 1) * (n + i + r - 3));
                    let c2 = q((i - m - 1) * (n - i + r - 1) * (n + i + r - 3));
                    let c3 = q((i - 1) * (i - 1) * (i - m + 1));
                    let c4 = q((i - 1) * (i - 1) * (i - m - r + 1));
                    let c5 = q((i - m + r - 1) * (n - i + 1) * (n + i - 1));
                    let c6 = q((i - m - 1) * (n - i + 1) * (n + i - 1));
                    for j in 1..=n {
                        for k in 0..j {
                            let h = |nn, ii, mm| h_term(nn, ii, mm, j, k, r);
                            let terms = vec![
                                &outer * &c1 * h(n - 1, i - 1, m - 1)?,
                                -(&outer * &c2 * h(n - 1, i - 1, m)?),
                                &outer * &c3 * h(n - 1, i, m - 1)?,
                                -(&outer * &c4 * h(n - 1, i, m)?),
                                -(&inner * &c5 * h(n, i - 1, m - 1)?),
                                &inner * &c6 * h(n, i - 1, m)?,
                                -(&inner * &c3 * h(n, i, m - 1)?),
                                &inner * &c4 * h(n, i, m)?,
                            ];
                            let point = [("r", r), ("n", n), ("i", i), ("m", m), ("j", j), ("k", k)];
                            acc.relation("eight-term recurrence", &point, terms);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Summand of entry `(i, m)` of `C(n) R_n(c_k)`.
fn z_term(n: i64, i: i64, m: i64, j: i64, k: i64) -> Result<Rational> {
    let coeff = binomial(n + i + 2, i + k + 1)?
        * binomial(n + k + 1, i + k + 1)?
        * binomial(i + k + 1, i)?
        * binomial(i + k, i)?
        * (i * (j - k));
    let den = binomial(j + m + 2, 3)? * 3;
    Ok(sign(i + k + 1) * Rational::new(coeff, den)?)
}

fn z_rec(grid: CertGrid, acc: &mut Acc) -> Result<()> {
    for n in 2..=grid.n_max {
        for i in 2..=n {
            let a = q((n - i + 1) * (n + i + 1));
            let b = q(i * (i - 1));
            for m in 1..=n {
                for j in 1..=n {
                    for k in 0..j {
                        let terms = vec![
                            &a * z_term(n - 1, i - 1, m, j, k)?,
                            -(&a * z_term(n, i - 1, m, j, k)?),
                            &b * z_term(n - 1, i, m, j, k)?,
                            -(&b * z_term(n, i, m, j, k)?),
                        ];
                        let point = [("n", n), ("i", i), ("m", m), ("j", j), ("k", k)];
                        acc.relation("recurrence", &point, terms);
                    }
                }
            }
        }
    }
    Ok(())
}

/// `T(n,i,j,k)`, the certificate for `S(n+1,i,j,k) - S(n,i,j,k)`. Needs
/// `i <= n` and `k <= n`.
fn t_cert(n: i64, i: i64, j: i64, k: i64, r: i64) -> Result<Rational> {
    let num = q(-(2 * n + r) * k * k * (i + k + r - 2));
    let den = q((n + r - 1) * (n + r - 1) * (n - i + 1) * (n - k + 1));
    (num * b_summand(n, i, j, k, r)?).checked_div(&den)
}

fn t_symm(grid: CertGrid, acc: &mut Acc) -> Result<()> {
    for r in 1..=grid.r_max {
        for n in 1..=grid.n_max {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 0..j {
                        let terms = vec![
                            b_summand(n + 1, i, j, k, r)?,
                            -b_summand(n, i, j, k, r)?,
                            -t_cert(n, i, j, k + 1, r)?,
                            t_cert(n, i, j, k, r)?,
                        ];
                        let point = [("r", r), ("n", n), ("i", i), ("j", j), ("k", k)];
                        acc.relation("S telescoping", &point, terms);
                    }
                    let point = [("r", r), ("n", n), ("i", i), ("j", j)];
                    let terms = vec![
                        b_inverse_entry(n + 1, i, j, r)?,
                        -b_inverse_entry(n, i, j, r)?,
                        -t_cert(n, i, j, j, r)?,
                        t_cert(n, i, j, 0, r)?,
                    ];
                    acc.relation("B difference", &point, terms);
                    let terms = vec![
                        t_cert(n, i, j, j, r)?,
                        -t_cert(n, i, j, 0, r)?,
                        -t_cert(n, j, i, i, r)?,
                        t_cert(n, j, i, 0, r)?,
                    ];
                    acc.relation("symmetry", &point, terms);
                }
                let point = [("r", r), ("n", n), ("i", i)];
                let diff = b_inverse_entry(n, i, n, r)? - b_inverse_entry(n, n, i, r)?;
                acc.boundary("B_in - B_ni", &point, diff, q(0));
            }
        }
    }
    Ok(())
}

/// `S(n,row,col,k)` without its `C(n,row)` factor.
fn s_core(n: i64, row: i64, col: i64, k: i64, r: i64) -> Result<Rational> {
    let coeff = binomial(n + row + r - 2, row)? * binomial(n + k + r - 2, k)? * binomial(n, k)? * (row * row);
    let top = rising_factorial_ext(row + col, r - 2)?;
    let bottom = rising_factorial_ext(row + k, r - 1)? * q(r);
    (sign(row + k + 1) * Rational::from_integer(coeff) * top).checked_div(&bottom)
}

/// `U(n,i,j,k) = S(n,j,i,k) / C(j+r-1, r)`.
fn u_term(n: i64, i: i64, j: i64, k: i64, r: i64) -> Result<Rational> {
    b_summand(n, j, i, k, r)?.checked_div(&binom(j + r - 1, r)?)
}

/// `Y(n,i,j,k)` with `C(n,j) / (n-j+1)` written as `C(n+1,j) / (n+1)`, so the
/// boundary column `j = n+1` is still defined.
fn y_cert(n: i64, i: i64, j: i64, k: i64, r: i64) -> Result<Rational> {
    let num = q(-(2 * n + r) * k * k * (j + k + r - 2)) * binom(n + 1, j)?;
    let den = q((n + r - 1) * (n + r - 1) * (n - k + 1) * (n + 1)) * binom(j + r - 1, r)?;
    (num * s_core(n, j, i, k, r)?).checked_div(&den)
}

fn y_tel(grid: CertGrid, reading: Reading, acc: &mut Acc) -> Result<()> {
    let amended = reading == Reading::Amended;
    for r in 1..=grid.r_max {
        for n in 1..=grid.n_max {
            let j_top = if amended { n + 1 } else { n };
            for i in 1..=n {
                for j in 1..=j_top {
                    for k in 0..i {
                        let terms = vec![
                            u_term(n + 1, i, j, k, r)?,
                            -u_term(n, i, j, k, r)?,
                            -y_cert(n, i, j, k + 1, r)?,
                            y_cert(n, i, j, k, r)?,
                        ];
                        let point = [("r", r), ("n", n), ("i", i), ("j", j), ("k", k)];
                        acc.relation("U telescoping", &point, terms);
                    }
                }
                let mut terms = Vec::new();
                for j in 1..=j_top {
                    terms.push(y_cert(n, i, j, i, r)?);
                    terms.push(-y_cert(n, i, j, 0, r)?);
                }
                acc.relation("sum over j", &[("r", r), ("n", n), ("i", i)], terms);
            }
        }
        let k_start = if amended { 0 } else { 1 };
        for i in 2..=grid.n_max {
            let mut total = Rational::zero();
            for j in 1..=i {
                for k in k_start..i {
                    total += u_term(i, i, j, k, r)?;
                }
            }
            acc.boundary("initial double sum of U", &[("r", r), ("i", i)], total, q(0));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const XS: [i64; 3] = [1, 2, 3];

    fn grid(n_max: i64, r_max: i64) -> CertGrid {
        CertGrid { n_max, r_max }
    }

    fn run(id: CertificateId, reading: Reading, flip: bool, g: CertGrid) -> CertReport {
        let opts = CheckOptions {
            reading,
            flip_first_term: flip,
        };
        check_certificate_with(id, g, &XS, opts).unwrap()
    }

    #[test]
    fn m_zero_holds() {
        let rep = check_certificate(CertificateId::MZero, grid(10, 1), &XS).unwrap();
        assert!(rep.holds(), "{:?}", rep.violations.first());
        assert!(rep.evaluations > 0);
    }

    #[test]
    fn g2_gives_unit_corner() {
        let rep = check_certificate(CertificateId::G2, grid(10, 1), &[1]).unwrap();
        assert!(rep.holds());
        assert!(rep.boundary.iter().filter(|b| b.label == "p(n,1,1)").count() == 10);
    }

    #[test]
    fn filrec_printed_sign_fails_amended_holds() {
        assert!(!run(CertificateId::FilRec, Reading::Printed, false, grid(5, 1)).holds());
        assert!(run(CertificateId::FilRec, Reading::Amended, false, grid(5, 1)).holds());
        assert!(!run(CertificateId::FilRec, Reading::Amended, true, grid(5, 1)).holds());
    }

    #[test]
    fn pn1m_readings() {
        for reading in [Reading::Printed, Reading::PrintedFreeIndex] {
            assert!(!run(CertificateId::Pn1m, reading, false, grid(6, 1)).holds());
        }
        assert!(run(CertificateId::Pn1m, Reading::Amended, false, grid(6, 1)).holds());
    }

    #[test]
    fn y_tel_readings() {
        let printed = run(CertificateId::YTel, Reading::Printed, false, grid(5, 3));
        assert!(!printed.holds());
        // only the j-sum and the initial double sum are affected
        assert!(printed.violations.iter().all(|v| v.relation == "sum over j"));
        assert!(run(CertificateId::YTel, Reading::Amended, false, grid(5, 3)).holds());
    }

    #[test]
    fn y_cert_matches_direct_form_inside_range() {
        for r in 1..=3 {
            for n in 1..=5 {
                for i in 1..=n {
                    for j in 1..=n {
                        for k in 0..=i {
                            let direct = (q(-(2 * n + r) * k * k * (j + k + r - 2)) * u_term(n, i, j, k, r).unwrap())
                                .checked_div(&q((n + r - 1) * (n + r - 1) * (n - j + 1) * (n - k + 1)))
                                .unwrap();
                            assert_eq!(y_cert(n, i, j, k, r).unwrap(), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn domain_checks() {
        assert!(check_certificate(CertificateId::G1, grid(4, 1), &[0]).is_err());
        assert!(check_certificate(CertificateId::G1, grid(4, 1), &[]).is_err());
        assert!(check_certificate(CertificateId::HRec, grid(4, 0), &[]).is_err());
        assert!(check_certificate(CertificateId::ZRec, grid(0, 1), &[]).is_err());
        let opts = CheckOptions {
            reading: Reading::Amended,
            flip_first_term: false,
        };
        assert!(check_certificate_with(CertificateId::G2, grid(3, 1), &[1], opts).is_err());
    }

    #[test]
    fn names_round_trip() {
        for id in CertificateId::ALL {
            assert_eq!(id.name().parse::<CertificateId>().unwrap(), id);
        }
        assert!("G4".parse::<CertificateId>().is_err());
    }
}
