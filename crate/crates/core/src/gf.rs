//! Arithmetic in GF(p^N) with elements kept in log form.
//!
//! Every nonzero element is stored as an exponent of a fixed primitive
//! element `α`. Multiplication is exponent addition; addition goes through a
//! Zech logarithm table built once from the polynomial representation.
//!
//! The modulus is the lexicographically smallest monic irreducible polynomial
//! of degree `N` (coefficients compared from the constant term upwards), and
//! `α` is the class of `x` when that class is primitive. Otherwise `α` is the
//! first primitive element in the same lexicographic order. Both choices are
//! deterministic so that constructed matrices are reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{degree} exceeds the table budget of 2^20")]
    FieldTooLarge { p: u32, degree: u32 },
    #[error("modulus {0:?} is not a monic irreducible polynomial")]
    ReducibleModulus(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("determinant of a {rows}x{cols} matrix is not supported (square, side 1 to 3)")]
    UnsupportedSize { rows: usize, cols: usize },
}

/// A field element: zero, or `α^e` with `0 <= e < q - 1`.
/// Serialized as the exponent, or `null` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Option<u32>", into = "Option<u32>")]
pub enum FieldElement {
    Zero,
    Pow(u32),
}

impl FieldElement {
    pub const ONE: FieldElement = FieldElement::Pow(0);

    pub fn is_zero(self) -> bool {
        matches!(self, FieldElement::Zero)
    }

    /// Exponent of `α`, `None` for zero.
    pub fn exponent(self) -> Option<u32> {
        match self {
            FieldElement::Zero => None,
            FieldElement::Pow(e) => Some(e),
        }
    }
}

impl From<Option<u32>> for FieldElement {
    fn from(e: Option<u32>) -> Self {
        e.map_or(FieldElement::Zero, FieldElement::Pow)
    }
}

impl From<FieldElement> for Option<u32> {
    fn from(a: FieldElement) -> Self {
        a.exponent()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Zero => write!(f, "0"),
            FieldElement::Pow(0) => write!(f, "1"),
            FieldElement::Pow(1) => write!(f, "a"),
            FieldElement::Pow(e) => write!(f, "a^{e}"),
        }
    }
}

/// Serialized form of a field: characteristic, degree and modulus
/// coefficients `[c0, ..., cN]` (constant term first, `cN = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    #[serde(rename = "N")]
    pub degree: u32,
    pub modulus: Vec<u32>,
}

/// Lookup tables for GF(p^N). Immutable once built.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    alpha: Vec<u32>,
    /// exponent -> packed polynomial representation
    exp: Vec<u32>,
    /// packed representation -> exponent
    log: Vec<u32>,
    /// e -> log(1 + α^e), NO_LOG when the sum is zero
    zech: Vec<u32>,
    neg_one: u32,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.alpha == other.alpha
    }
}

impl Eq for GaloisField {}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, degree: u32) -> Result<u32, GfError> {
    if !is_prime(p) {
        return Err(GfError::NonPrimeCharacteristic(p));
    }
    if degree == 0 {
        return Err(GfError::ZeroDegree);
    }
    let mut q: u64 = 1;
    for _ in 0..degree {
        q *= p as u64;
        if q > MAX_FIELD_ORDER {
            return Err(GfError::FieldTooLarge { p, degree });
        }
    }
    Ok(q as u32)
}

// Polynomials over GF(p) are coefficient vectors, constant term first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - mulmod(lead, c, p)) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 || *f.last().unwrap() != 1 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = digits(idx, p, d);
            divisor.push(1);
            if trim(poly_rem(&f, &divisor, p)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Base-`p` digits of `v`, least significant first, padded to `len`.
fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// The `idx`-th coefficient vector of length `len` in lexicographic order
/// with the constant term most significant.
fn lex_coefficients(idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut c = digits(idx, p, len);
    c.reverse();
    c
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn unpack(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree, as `[c0, ..., cN]`.
pub fn canonical_modulus(p: u32, degree: u32) -> Result<Vec<u32>, GfError> {
    let q = checked_order(p, degree)?;
    for idx in 0..q as u64 {
        let mut f = lex_coefficients(idx, p, degree as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    /// GF(p^N) with the canonical modulus and primitive element.
    pub fn new(p: u32, degree: u32) -> Result<Self, GfError> {
        let modulus = canonical_modulus(p, degree)?;
        Self::with_modulus(p, modulus)
    }

    /// GF(p^N) for an explicit monic irreducible modulus `[c0, ..., cN]`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if modulus.len() < 2 {
            return Err(GfError::ZeroDegree);
        }
        let degree = (modulus.len() - 1) as u32;
        let order = checked_order(p, degree)?;
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(&modulus, p) {
            return Err(GfError::ReducibleModulus(modulus));
        }
        let n = degree as usize;
        let x = if n == 1 {
            poly_rem(&[0, 1], &modulus, p)
        } else {
            let mut v = vec![0u32; n];
            v[1] = 1;
            v
        };
        let x = pad(x, n);

        let mut candidates = std::iter::once(x.clone()).chain((1..order as u64).map(|idx| lex_coefficients(idx, p, n)));
        let (alpha, exp) = loop {
            let cand = candidates.next().expect("a primitive element exists");
            if cand.iter().all(|&c| c == 0) {
                continue;
            }
            if let Some(exp) = power_walk(&cand, &modulus, p, order) {
                break (cand, exp);
            }
        };

        let q1 = order - 1;
        let mut log = vec![NO_LOG; order as usize];
        for (e, &r) in exp.iter().enumerate() {
            log[r as usize] = e as u32;
        }
        let zech = (0..q1)
            .map(|e| {
                let s = add_packed(exp[0], exp[e as usize], p, n);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let neg_one = if p == 2 { 0 } else { q1 / 2 };
        Ok(GaloisField {
            p,
            degree,
            order,
            modulus,
            alpha,
            exp,
            log,
            zech,
            neg_one,
        })
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self, GfError> {
        if d.modulus.len() != d.degree as usize + 1 {
            return Err(GfError::ReducibleModulus(d.modulus.clone()));
        }
        Self::with_modulus(d.p, d.modulus.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            degree: self.degree,
            modulus: self.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `q`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficients of the primitive element `α` in the polynomial basis.
    pub fn alpha_coefficients(&self) -> &[u32] {
        &self.alpha
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::Zero
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// `α^k` for any integer `k`, reduced modulo `q - 1`.
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let q1 = self.group_order() as i64;
        FieldElement::Pow(k.rem_euclid(q1) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        use FieldElement::*;
        match (a, b) {
            (Zero, x) | (x, Zero) => x,
            (Pow(x), Pow(y)) => {
                let q1 = self.group_order();
                let d = (y + q1 - x) % q1;
                match self.zech[d as usize] {
                    NO_LOG => Zero,
                    z => Pow(((x as u64 + z as u64) % q1 as u64) as u32),
                }
            }
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.mul(a, FieldElement::Pow(self.neg_one))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Pow(x), FieldElement::Pow(y)) => {
                FieldElement::Pow(((x as u64 + y as u64) % self.group_order() as u64) as u32)
            }
            _ => FieldElement::Zero,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        match a {
            FieldElement::Zero => Err(GfError::DivisionByZero),
            FieldElement::Pow(e) => {
                let q1 = self.group_order();
                Ok(FieldElement::Pow((q1 - e % q1) % q1))
            }
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Packed polynomial representation `Σ c_i p^i` of an element.
    pub fn to_repr(&self, a: FieldElement) -> u32 {
        match a {
            FieldElement::Zero => 0,
            FieldElement::Pow(e) => self.exp[(e % self.group_order()) as usize],
        }
    }

    /// Inverse of [`to_repr`](Self::to_repr); `None` when out of range.
    pub fn from_repr(&self, r: u32) -> Option<FieldElement> {
        if r == 0 {
            Some(FieldElement::Zero)
        } else if r < self.order {
            Some(FieldElement::Pow(self.log[r as usize]))
        } else {
            None
        }
    }

    /// Polynomial coefficients `[c0, ..., c_{N-1}]` of an element.
    pub fn to_coefficients(&self, a: FieldElement) -> Vec<u32> {
        unpack(self.to_repr(a), self.p, self.degree as usize)
    }

    /// Every element, zero first, then `α^0 .. α^{q-2}`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::Zero).chain((0..self.group_order()).map(FieldElement::Pow))
    }

    /// Determinant by cofactor expansion. Square matrices of side 1 to 3.
    pub fn det(&self, m: &[Vec<FieldElement>]) -> Result<FieldElement, GfError> {
        let n = m.len();
        let unsupported = GfError::UnsupportedSize {
            rows: n,
            cols: m.first().map_or(0, |r| r.len()),
        };
        if !(1..=3).contains(&n) || m.iter().any(|r| r.len() != n) {
            return Err(unsupported);
        }
        Ok(match n {
            1 => m[0][0],
            2 => self.det2(m[0][0], m[0][1], m[1][0], m[1][1]),
            _ => {
                let c0 = self.mul(m[0][0], self.det2(m[1][1], m[1][2], m[2][1], m[2][2]));
                let c1 = self.mul(m[0][1], self.det2(m[1][0], m[1][2], m[2][0], m[2][2]));
                let c2 = self.mul(m[0][2], self.det2(m[1][0], m[1][1], m[2][0], m[2][1]));
                self.add(self.sub(c0, c1), c2)
            }
        })
    }

    fn det2(&self, a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> FieldElement {
        self.sub(self.mul(a, d), self.mul(b, c))
    }

    /// Rank by Gaussian elimination. Rows may have any common length.
    pub fn rank(&self, mut m: Vec<Vec<FieldElement>>) -> usize {
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][c]).expect("pivot is nonzero");
            for r in 0..m.len() {
                if r == rank || m[r][c].is_zero() {
                    continue;
                }
                let factor = self.mul(m[r][c], inv);
                let pivot_row = m[rank].clone();
                for (x, &y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x = self.sub(*x, self.mul(factor, y));
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn pad(mut v: Vec<u32>, len: usize) -> Vec<u32> {
    v.resize(len, 0);
    v
}

fn add_packed(a: u32, b: u32, p: u32, len: usize) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (x, y) = (unpack(a, p, len), unpack(b, p, len));
    let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
    pack(&s, p)
}

/// Powers `1, g, g^2, ...` as packed values if `g` has order `q - 1`.
fn power_walk(g: &[u32], modulus: &[u32], p: u32, order: u32) -> Option<Vec<u32>> {
    let n = modulus.len() - 1;
    let q1 = (order - 1) as usize;
    let is_x = n > 1 && g.iter().enumerate().all(|(i, &c)| c == u32::from(i == 1));
    let mut exp = Vec::with_capacity(q1);
    let mut cur = pad(vec![1], n);
    for step in 0..q1 {
        let packed = pack(&cur, p);
        if step > 0 && packed == 1 {
            return None;
        }
        exp.push(packed);
        cur = if is_x {
            times_x(&cur, modulus, p)
        } else {
            pad(poly_mul_mod(&cur, g, modulus, p), n)
        };
    }
    (pack(&cur, p) == 1).then_some(exp)
}

fn times_x(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = a.len();
    let top = a[n - 1];
    let mut out = vec![0u32; n];
    out[1..n].copy_from_slice(&a[..(n - 1)]);
    if top != 0 {
        for (i, o) in out.iter_mut().enumerate() {
            *o = (*o + p - mulmod(top, modulus[i], p)) % p;
        }
    }
    out
}
