//! Finite field arithmetic.
//!
//! Two concrete fields are provided: the prime field `GF(q)` ([`PrimeField`])
//! and its degree-`l` extension `GF(q^l)` ([`ExtField`]) realized as
//! `GF(q)[x]/(modulus)`. Both implement the [`Field`] trait, which is what the
//! polynomial and Reed-Solomon code layers are generic over.
//!
//! The extension also carries the trace map `tr: GF(q^l) -> GF(q)` and the
//! machinery for trace-dual bases ([`TraceDualBasis`]), which is how an
//! extension symbol is stored as `l` base-field symbols and recovered again.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

/// Largest supported prime modulus (exclusive). Products of two residues must
/// fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range [2, 2^32)")]
    ModulusOutOfRange(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {q}^{l} does not fit in 63 bits")]
    TooLarge { q: u64, l: usize },
    #[error("polynomial modulus must be monic of degree {expected} with coefficients below q")]
    BadModulus { expected: usize },
    #[error("polynomial modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operand {elem} is not an element of {field}")]
    ForeignElement { elem: String, field: String },
    #[error("basis is linearly dependent over the base field (singular Gram matrix)")]
    DependentBasis,
    #[error("expected {expected} base-field symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// A finite field whose parameters are fixed at runtime.
///
/// Elements are plain values; the field object carries the modulus. All
/// arithmetic assumes its operands belong to `self`; use [`field_arith`] for a
/// checked entry point.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    /// Number of elements.
    fn size(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Decode the canonical integer encoding; `None` when out of range.
    fn from_index(&self, index: u64) -> Option<Self::Elem>;
    /// Canonical integer encoding, in `[0, size)`.
    fn to_index(&self, a: &Self::Elem) -> u64;
    fn contains(&self, a: &Self::Elem) -> bool;
    /// Embed a residue of the prime subfield.
    fn from_base(&self, b: u64) -> Self::Elem;
    fn describe(&self) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Square-and-multiply.
    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Operation selector for [`field_arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldOp<E> {
    Add(E),
    Sub(E),
    Mul(E),
    Div(E),
    Pow(u64),
}

/// Checked arithmetic: rejects operands that are not encodings of elements of
/// `field` and division by zero.
pub fn field_arith<F: Field>(field: &F, a: &F::Elem, op: FieldOp<F::Elem>) -> Result<F::Elem, FieldError> {
    let check = |e: &F::Elem| {
        if field.contains(e) {
            Ok(())
        } else {
            Err(FieldError::ForeignElement { elem: format!("{e:?}"), field: field.describe() })
        }
    };
    check(a)?;
    match op {
        FieldOp::Add(b) => check(&b).map(|_| field.add(a, &b)),
        FieldOp::Sub(b) => check(&b).map(|_| field.sub(a, &b)),
        FieldOp::Mul(b) => check(&b).map(|_| field.mul(a, &b)),
        FieldOp::Div(b) => {
            check(&b)?;
            field.div(a, &b).ok_or(FieldError::DivisionByZero)
        }
        FieldOp::Pow(e) => Ok(field.pow(a, e)),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field `GF(q)`. Elements are residues in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if !(2..MAX_PRIME).contains(&q) {
            return Err(FieldError::ModulusOutOfRange(q));
        }
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Validate a residue.
    pub fn elem(&self, v: u64) -> Result<u64, FieldError> {
        if v < self.q {
            Ok(v)
        } else {
            Err(FieldError::ForeignElement { elem: v.to_string(), field: self.describe() })
        }
    }

    /// Reduce an arbitrary integer into the field.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    /// True when `g` generates the multiplicative group.
    pub fn is_primitive(&self, g: u64) -> bool {
        if g == 0 || g >= self.q {
            return false;
        }
        let order = self.q - 1;
        prime_factors(order).into_iter().all(|r| self.pow(&g, order / r) != 1)
    }

    /// Smallest primitive root.
    pub fn primitive_root(&self) -> u64 {
        (1..self.q).find(|&g| self.is_primitive(g)).expect("every prime field has a primitive root")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn size(&self) -> u64 {
        self.q
    }
    fn characteristic(&self) -> u64 {
        self.q
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.q - b) % self.q
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.q - a) % self.q
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.q
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.q == 0 {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }
    fn from_index(&self, index: u64) -> Option<u64> {
        (index < self.q).then_some(index)
    }
    fn to_index(&self, a: &u64) -> u64 {
        *a
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.q
    }
    fn from_base(&self, b: u64) -> u64 {
        b % self.q
    }
    fn describe(&self) -> String {
        format!("GF({})", self.q)
    }
}

/// Element of `GF(q^l)`: coefficient vector `(c_0, ..., c_{l-1})` over the
/// base field, low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(Vec<u64>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The extension `GF(q^l) = GF(q)[x]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    l: usize,
    /// Monic, `l + 1` coefficients, low degree first.
    modulus: Vec<u64>,
    size: u64,
    /// `tr(x^i)` for `i < l`; the trace of any element is the dot product with
    /// its coefficient vector.
    monomial_traces: Vec<u64>,
}

impl ExtField {
    /// Build the extension with the default modulus: the lexicographically
    /// smallest monic irreducible of degree `l`, comparing the lower
    /// coefficients `c_0, c_1, ...` in that order.
    pub fn new(base: PrimeField, l: usize) -> Result<Self, FieldError> {
        let size = checked_size(base.q, l)?;
        let q = base.q;
        let lower_count = size; // q^l candidate lower-coefficient vectors
        for idx in 0..lower_count {
            let mut lower = vec![0u64; l];
            let mut rest = idx;
            for i in (0..l).rev() {
                lower[i] = rest % q;
                rest /= q;
            }
            let mut modulus = lower;
            modulus.push(1);
            if is_irreducible(&base, &modulus) {
                return Self::build(base, l, modulus, size);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Build the extension with a user-supplied monic modulus of degree `l`,
    /// given as `l + 1` coefficients low degree first.
    pub fn with_modulus(base: PrimeField, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let l = modulus.len() - 1;
        let size = checked_size(base.q, l)?;
        if modulus[l] != 1 || modulus.iter().any(|&c| c >= base.q) {
            return Err(FieldError::BadModulus { expected: l });
        }
        if !is_irreducible(&base, &modulus) {
            return Err(FieldError::Reducible(base.q));
        }
        Self::build(base, l, modulus, size)
    }

    fn build(base: PrimeField, l: usize, modulus: Vec<u64>, size: u64) -> Result<Self, FieldError> {
        let mut field = Self { base, l, modulus, size, monomial_traces: vec![0; l] };
        let traces = (0..l)
            .map(|i| {
                let t = field.trace_by_frobenius(&field.monomial(i));
                debug_assert!(t.0[1..].iter().all(|&c| c == 0), "trace left the base field");
                t.0[0]
            })
            .collect();
        field.monomial_traces = traces;
        Ok(field)
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.l
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Validate a coefficient vector.
    pub fn elem(&self, coeffs: Vec<u64>) -> Result<ExtElem, FieldError> {
        if coeffs.len() != self.l {
            return Err(FieldError::LengthMismatch { expected: self.l, got: coeffs.len() });
        }
        let e = ExtElem(coeffs);
        if self.contains(&e) {
            Ok(e)
        } else {
            Err(FieldError::ForeignElement { elem: e.to_string(), field: self.describe() })
        }
    }

    /// The residue class of `x^i` for `i < l`.
    pub fn monomial(&self, i: usize) -> ExtElem {
        let mut c = vec![0; self.l];
        c[i] = 1;
        ExtElem(c)
    }

    /// `beta^q`.
    pub fn frobenius(&self, beta: &ExtElem) -> ExtElem {
        self.pow(beta, self.base.q)
    }

    /// Sum of Frobenius conjugates `beta + beta^q + ... + beta^{q^{l-1}}`,
    /// returned as an extension element (it always lies in the base field).
    fn trace_by_frobenius(&self, beta: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        let mut conj = beta.clone();
        for _ in 0..self.l {
            acc = self.add(&acc, &conj);
            conj = self.frobenius(&conj);
        }
        acc
    }

    /// The trace `tr_{F/B}(beta)`.
    pub fn trace(&self, beta: &ExtElem) -> u64 {
        let q = self.base.q;
        beta.0.iter().zip(&self.monomial_traces).fold(0, |acc, (c, t)| (acc + c * t) % q)
    }

    /// Multiply by a base-field scalar.
    pub fn scale(&self, b: u64, beta: &ExtElem) -> ExtElem {
        let q = self.base.q;
        ExtElem(beta.0.iter().map(|c| c * b % q).collect())
    }
}

fn checked_size(q: u64, l: usize) -> Result<u64, FieldError> {
    if l == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let mut size: u64 = 1;
    for _ in 0..l {
        size = size
            .checked_mul(q)
            .filter(|s| *s < (1u64 << 63))
            .ok_or(FieldError::TooLarge { q, l })?;
    }
    Ok(size)
}

/// Remainder of `a` modulo monic `b` over `GF(q)`, both low degree first.
fn rem_monic(q: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let off = r.len() - db;
            for (i, bc) in b[..db].iter().enumerate() {
                r[off + i] = (r[off + i] + (q - lead) * bc) % q;
            }
        }
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(base: &PrimeField, modulus: &[u64]) -> bool {
    let q = base.q;
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                divisor.push(rest % q);
                rest /= q;
            }
            divisor.push(1);
            if rem_monic(q, modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn size(&self) -> u64 {
        self.size
    }
    fn characteristic(&self) -> u64 {
        self.base.q
    }
    fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.l])
    }
    fn one(&self) -> ExtElem {
        self.monomial(0)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.sub(x, y)).collect())
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let (q, l) = (self.base.q, self.l);
        let mut prod = vec![0u64; 2 * l - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % q;
            }
        }
        let mut r = rem_monic(q, &prod, &self.modulus);
        r.resize(l, 0);
        ExtElem(r)
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.size - 2))
        }
    }
    fn from_index(&self, index: u64) -> Option<ExtElem> {
        if index >= self.size {
            return None;
        }
        let q = self.base.q;
        let mut rest = index;
        let coeffs = (0..self.l)
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect();
        Some(ExtElem(coeffs))
    }
    fn to_index(&self, a: &ExtElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, c| acc * self.base.q + c)
    }
    fn contains(&self, a: &ExtElem) -> bool {
        a.0.len() == self.l && a.0.iter().all(|&c| c < self.base.q)
    }
    fn from_base(&self, b: u64) -> ExtElem {
        let mut c = vec![0; self.l];
        c[0] = b % self.base.q;
        ExtElem(c)
    }
    fn describe(&self) -> String {
        format!("GF({}^{}) mod {:?}", self.base.q, self.l, self.modulus)
    }
}

/// A basis `zeta` of `GF(q^l)` over `GF(q)` together with its trace-dual
/// basis `nu`, so that `tr(nu_i * zeta_j) = [i == j]`.
///
/// An element is stored as its projections `tr(zeta_i * beta)` and rebuilt as
/// `sum_i tr(zeta_i * beta) * nu_i`. Encoder and decoder must share the same
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDualBasis {
    zeta: Vec<ExtElem>,
    nu: Vec<ExtElem>,
}

impl TraceDualBasis {
    /// Compute the dual of `zeta` by inverting the Gram matrix
    /// `G[i][j] = tr(zeta_i zeta_j)` over the base field.
    pub fn new(field: &ExtField, zeta: Vec<ExtElem>) -> Result<Self, FieldError> {
        let l = field.degree();
        if zeta.len() != l {
            return Err(FieldError::LengthMismatch { expected: l, got: zeta.len() });
        }
        for z in &zeta {
            if !field.contains(z) {
                return Err(FieldError::ForeignElement { elem: z.to_string(), field: field.describe() });
            }
        }
        let gram: Vec<Vec<u64>> = zeta
            .iter()
            .map(|zi| zeta.iter().map(|zj| field.trace(&field.mul(zi, zj))).collect())
            .collect();
        let inv = invert_matrix(field.base(), gram).ok_or(FieldError::DependentBasis)?;
        let nu = inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&zeta)
                    .fold(field.zero(), |acc, (&c, z)| field.add(&acc, &field.scale(c, z)))
            })
            .collect();
        Ok(Self { zeta, nu })
    }

    /// The polynomial basis `(1, x, ..., x^{l-1})` and its dual.
    pub fn polynomial(field: &ExtField) -> Self {
        let zeta = (0..field.degree()).map(|i| field.monomial(i)).collect();
        Self::new(field, zeta).expect("the polynomial basis is a basis")
    }

    pub fn zeta(&self) -> &[ExtElem] {
        &self.zeta
    }

    pub fn nu(&self) -> &[ExtElem] {
        &self.nu
    }

    /// `(tr(zeta_0 beta), ..., tr(zeta_{l-1} beta))`.
    pub fn project(&self, field: &ExtField, beta: &ExtElem) -> Vec<u64> {
        self.zeta.iter().map(|z| field.trace(&field.mul(z, beta))).collect()
    }

    /// `sum_i proj_i * nu_i`.
    pub fn reconstruct(&self, field: &ExtField, proj: &[u64]) -> Result<ExtElem, FieldError> {
        if proj.len() != self.nu.len() {
            return Err(FieldError::LengthMismatch { expected: self.nu.len(), got: proj.len() });
        }
        let base = field.base();
        Ok(proj.iter().zip(&self.nu).fold(field.zero(), |acc, (&c, nu)| {
            field.add(&acc, &field.scale(base.from_base(c), nu))
        }))
    }
}

/// Gauss-Jordan inverse over `GF(q)`; `None` when singular.
pub fn invert_matrix(field: &PrimeField, mut m: Vec<Vec<u64>>) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = field.inv(&m[col][col])?;
        for j in 0..n {
            m[col][j] = field.mul(&m[col][j], &p_inv);
            inv[col][j] = field.mul(&inv[col][j], &p_inv);
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let f = m[r][col];
                for j in 0..n {
                    let a = field.mul(&f, &m[col][j]);
                    let b = field.mul(&f, &inv[col][j]);
                    m[r][j] = field.sub(&m[r][j], &a);
                    inv[r][j] = field.sub(&inv[r][j], &b);
                }
            }
        }
    }
    Some(inv)
}
