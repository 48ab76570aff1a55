//! The truncated polynomial Poisson algebra `C[X,Y]/(X^a, Y^b)` with
//! `{X, Y} = XY`.
//!
//! Elements are dense coefficient vectors over the monomials `X^i Y^j`,
//! ordered row-major with `i` outermost. All downstream matrix layouts use
//! this order.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("two integers a,b >= 2 are required, got a={a}, b={b}")]
    InvalidParams { a: usize, b: usize },
    #[error("operands belong to different algebras: {0} and {1}")]
    ParamMismatch(TruncParams, TruncParams),
    #[error("monomial X^{i}*Y^{j} is outside the basis of {params}")]
    OutOfRange { i: usize, j: usize, params: TruncParams },
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// Exponent bounds `(a, b)`: `X^a = Y^b = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncParams {
    a: usize,
    b: usize,
}

impl TruncParams {
    pub fn new(a: usize, b: usize) -> Result<Self, AlgebraError> {
        if a < 2 || b < 2 {
            return Err(AlgebraError::InvalidParams { a, b });
        }
        Ok(TruncParams { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Dimension `ab` of the algebra.
    pub fn dim(&self) -> usize {
        self.a * self.b
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.a && j < self.b);
        i * self.b + j
    }

    pub fn monomial_at(&self, index: usize) -> MonomialIndex {
        MonomialIndex { i: index / self.b, j: index % self.b }
    }

    /// All basis monomials in layout order.
    pub fn monomials(&self) -> impl Iterator<Item = MonomialIndex> + '_ {
        (0..self.a).flat_map(move |i| (0..self.b).map(move |j| MonomialIndex { i, j }))
    }

    pub fn contains(&self, m: MonomialIndex) -> bool {
        m.i < self.a && m.j < self.b
    }
}

impl fmt::Display for TruncParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIndex {
    pub i: usize,
    pub j: usize,
}

impl MonomialIndex {
    pub fn new(i: usize, j: usize) -> Self {
        MonomialIndex { i, j }
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, var: &str, e: usize| match e {
            1 => write!(f, "{var}"),
            _ => write!(f, "{var}^{e}"),
        };
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (i, 0) => factor(f, "X", i),
            (0, j) => factor(f, "Y", j),
            (i, j) => {
                factor(f, "X", i)?;
                write!(f, "*")?;
                factor(f, "Y", j)
            }
        }
    }
}

/// Structure constant of the bracket on monomials:
/// `{X^i Y^j, X^k Y^l} = (il - jk) X^{i+k} Y^{j+l}`.
pub fn monomial_bracket_coefficient(u: MonomialIndex, v: MonomialIndex) -> i64 {
    (u.i * v.j) as i64 - (u.j * v.i) as i64
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T> {
    params: TruncParams,
    coeffs: Vec<T>,
}

impl<T: Field> AlgebraElement<T> {
    pub fn zero(params: TruncParams) -> Self {
        AlgebraElement { params, coeffs: vec![T::zero(); params.dim()] }
    }

    pub fn one(params: TruncParams) -> Self {
        Self::monomial(params, 0, 0)
    }

    /// `X^i Y^j`, or zero when the exponents exceed the truncation.
    pub fn monomial(params: TruncParams, i: usize, j: usize) -> Self {
        Self::term(params, T::one(), i, j)
    }

    pub fn term(params: TruncParams, c: T, i: usize, j: usize) -> Self {
        let mut e = Self::zero(params);
        if i < params.a && j < params.b {
            e.coeffs[params.index(i, j)] = c;
        }
        e
    }

    pub fn x(params: TruncParams) -> Self {
        Self::monomial(params, 1, 0)
    }

    pub fn y(params: TruncParams) -> Self {
        Self::monomial(params, 0, 1)
    }

    pub fn from_coeffs(params: TruncParams, coeffs: Vec<T>) -> Result<Self, AlgebraError> {
        if coeffs.len() != params.dim() {
            return Err(AlgebraError::Length { expected: params.dim(), got: coeffs.len() });
        }
        Ok(AlgebraElement { params, coeffs })
    }

    /// Builds from `(coefficient, i, j)` terms, dropping truncated ones.
    pub fn from_terms(params: TruncParams, terms: impl IntoIterator<Item = (T, usize, usize)>) -> Self {
        let mut e = Self::zero(params);
        for (c, i, j) in terms {
            if i < params.a && j < params.b {
                let k = params.index(i, j);
                e.coeffs[k] = e.coeffs[k].clone() + c;
            }
        }
        e
    }

    pub fn params(&self) -> TruncParams {
        self.params
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i < self.params.a && j < self.params.b {
            self.coeffs[self.params.index(i, j)].clone()
        } else {
            T::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Nonzero terms in layout order.
    pub fn terms(&self) -> impl Iterator<Item = (MonomialIndex, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.params.monomial_at(k), c))
    }

    pub fn scale(&self, c: &T) -> Self {
        AlgebraElement { params: self.params, coeffs: self.coeffs.iter().map(|x| if x.is_zero() { x.clone() } else { x.clone() * c.clone() }).collect() }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_params(other)?;
        Ok(self.bilinear(other, |_, _| Some(T::one())))
    }

    /// The Poisson bracket, extended bilinearly from the monomial rule.
    pub fn bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_params(other)?;
        Ok(self.bilinear(other, |u, v| match monomial_bracket_coefficient(u, v) {
            0 => None,
            c => Some(T::from_int(c)),
        }))
    }

    /// Multiplies by `X^i Y^j`.
    pub fn shift(&self, di: usize, dj: usize) -> Self {
        let mut out = Self::zero(self.params);
        for (m, c) in self.terms() {
            if m.i + di < self.params.a && m.j + dj < self.params.b {
                out.coeffs[self.params.index(m.i + di, m.j + dj)] = c.clone();
            }
        }
        out
    }

    fn bilinear(&self, other: &Self, weight: impl Fn(MonomialIndex, MonomialIndex) -> Option<T>) -> Self {
        let p = self.params;
        let mut out = Self::zero(p);
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                let (i, j) = (u.i + v.i, u.j + v.j);
                if i >= p.a || j >= p.b {
                    continue;
                }
                if let Some(w) = weight(u, v) {
                    let k = p.index(i, j);
                    out.coeffs[k] = add_skipping_zero(&out.coeffs[k], &(w * cu.clone() * cv.clone()));
                }
            }
        }
        out
    }

    fn check_params(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.params != other.params {
            return Err(AlgebraError::ParamMismatch(self.params, other.params));
        }
        Ok(())
    }

    /// Parses the rendering produced by `Display`, e.g. `3*X^2*Y + 1/2*X`.
    ///
    /// Terms beyond the truncation are dropped.
    pub fn parse(params: TruncParams, s: &str) -> Result<Self, AlgebraError> {
        let err = || AlgebraError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || ((bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^') {
                terms.push(&compact[start..k]);
                start = k;
            }
        }
        let mut out = Self::zero(params);
        for raw in terms {
            let (negative, body) = match raw.as_bytes()[0] {
                b'+' => (false, &raw[1..]),
                b'-' => (true, &raw[1..]),
                _ => (false, raw),
            };
            if body.is_empty() {
                return Err(err());
            }
            let mut coeff = T::one();
            let (mut i, mut j) = (0usize, 0usize);
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('X') {
                    i += parse_exponent(rest).ok_or_else(err)?;
                } else if let Some(rest) = factor.strip_prefix('Y') {
                    j += parse_exponent(rest).ok_or_else(err)?;
                } else {
                    let c: T = factor.parse().map_err(|_| err())?;
                    coeff = coeff * c;
                }
            }
            if negative {
                coeff = -coeff;
            }
            if i < params.a && j < params.b {
                let k = params.index(i, j);
                out.coeffs[k] = out.coeffs[k].clone() + coeff;
            }
        }
        Ok(out)
    }
}

fn parse_exponent(rest: &str) -> Option<usize> {
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.parse().ok()
}

impl<T: Field> fmt::Display for AlgebraElement<T> {
    /// Highest monomial first, e.g. `3*X^2*Y + 1/2*X`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in terms.into_iter().rev().enumerate() {
            let negative = c < &T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = magnitude.is_one();
            match (m.i, m.j, unit) {
                (0, 0, _) => write!(f, "{magnitude}")?,
                (_, _, true) => write!(f, "{m}")?,
                _ => write!(f, "{magnitude}*{m}")?,
            }
        }
        Ok(())
    }
}

fn add_skipping_zero<T: Field>(x: &T, y: &T) -> T {
    if y.is_zero() {
        x.clone()
    } else if x.is_zero() {
        y.clone()
    } else {
        x.clone() + y.clone()
    }
}

impl<T: Field> Add for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;

    /// Panics if the operands come from different algebras.
    fn add(self, rhs: Self) -> AlgebraElement<T> {
        assert_eq!(self.params, rhs.params, "adding elements of different algebras");
        AlgebraElement {
            params: self.params,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| add_skipping_zero(x, y)).collect(),
        }
    }
}

impl<T: Field> Sub for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;

    fn sub(self, rhs: Self) -> AlgebraElement<T> {
        assert_eq!(self.params, rhs.params, "subtracting elements of different algebras");
        AlgebraElement {
            params: self.params,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| if y.is_zero() { x.clone() } else { x.clone() - y.clone() }).collect(),
        }
    }
}

impl<T: Field> Neg for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;

    fn neg(self) -> AlgebraElement<T> {
        AlgebraElement { params: self.params, coeffs: self.coeffs.iter().map(|x| if x.is_zero() { x.clone() } else { -x.clone() }).collect() }
    }
}

/// Closed-form dimensions of the cochain spaces `χ^0, χ^1, χ^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerDims {
    pub chi0: usize,
    pub chi1: usize,
    pub chi2: usize,
}

impl EulerDims {
    pub fn euler_characteristic(&self) -> i64 {
        self.chi0 as i64 - self.chi1 as i64 + self.chi2 as i64
    }
}

pub fn euler_dims(p: TruncParams) -> EulerDims {
    let (a, b) = (p.a, p.b);
    EulerDims { chi0: a * b, chi1: b * (a - 1) + a * (b - 1), chi2: (a - 1) * (b - 1) }
}
