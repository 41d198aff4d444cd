//! Univariate polynomials over a runtime [`Field`].
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector and structural equality is
//! polynomial equality.

use thiserror::Error;

use crate::fields::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("interpolation points are not distinct")]
    DuplicatePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Build from coefficients, low degree first. Trailing zeros are dropped.
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear<F: Field<Elem = E>>(field: &F, root: &E) -> Self {
        Self::new(field, vec![field.neg(root), field.one()])
    }

    /// `prod (x - r)` over `roots`.
    pub fn from_roots<F: Field<Elem = E>>(field: &F, roots: &[E]) -> Self {
        let mut coeffs = vec![field.one()];
        for r in roots {
            // multiply by (x - r) in place
            coeffs.push(field.zero());
            for i in (0..coeffs.len()).rev() {
                let shifted = if i > 0 { coeffs[i - 1].clone() } else { field.zero() };
                coeffs[i] = field.sub(&shifted, &field.mul(r, &coeffs[i]));
            }
        }
        Self::new(field, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Coefficients padded with zeros to exactly `len` entries. Higher
    /// coefficients beyond `len` are dropped.
    pub fn padded<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        (0..len).map(|i| self.coeff(field, i)).collect()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when `deg self < bound` (the zero polynomial always qualifies).
    pub fn degree_below(&self, bound: usize) -> bool {
        self.coeffs.len() <= bound
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, c)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, c)
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        Self::new(field, self.coeffs.iter().map(|c| field.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, exp: usize, field: &F) -> Self {
        let mut acc = Self::constant(field, field.one());
        for _ in 0..exp {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Euclidean division: `self = quotient * divisor + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Result<(Self, Self), PolyError> {
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = field.inv(&divisor.coeffs[d]).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = field.mul(&rem[i + d], &lead_inv);
            if !field.is_zero(&c) {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = field.sub(&rem[i + j], &field.mul(&c, dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }

    /// Horner evaluation.
    pub fn eval<F: Field<Elem = E>>(&self, x: &E, field: &F) -> E {
        self.coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// The unique polynomial of degree `< points.len()` through `points`
    /// (Newton divided differences).
    pub fn interpolate<F: Field<Elem = E>>(field: &F, points: &[(E, E)]) -> Result<Self, PolyError> {
        let n = points.len();
        let xs: Vec<&E> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<E> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = field.sub(&table[i], &table[i - 1]);
                let den = field.sub(xs[i], xs[i - level]);
                table[i] = field.div(&num, &den).ok_or(PolyError::DuplicatePoint)?;
            }
        }
        // Horner over the Newton basis.
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&Self::linear(field, xs[i]), field).add(&Self::constant(field, table[i].clone()), field);
        }
        Ok(acc)
    }
}
