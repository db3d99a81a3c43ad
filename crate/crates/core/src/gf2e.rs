//! Exact arithmetic in F_q = F_{2^f}.
//!
//! Elements are bit-packed coordinate vectors in the power basis of a fixed
//! irreducible modulus: bit `i` of an element is the coefficient of `u^i`,
//! where `u` is the image of `x` in `F_2[x]/(modulus)`. Addition is XOR;
//! multiplication goes through log/antilog tables for `f <= 8` and plain
//! shift-and-reduce polynomial arithmetic above that.
//!
//! The [`Field`] handle owns the tables and acts as the operation context;
//! elements themselves are plain `Copy` bitmasks.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree. Keeps bitmasks in `u32` range and the
/// irreducibility check exhaustive.
pub const MAX_DEGREE: u32 = 16;

/// Extension degrees with a built-in default modulus.
pub const MAX_DEFAULT_DEGREE: u32 = 4;

/// An element of F_{2^f}, as a bitmask of power-basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Degree and modulus of a binary field, the serializable part of a [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    /// Extension degree over F_2.
    pub f: u32,
    /// Monic irreducible polynomial over F_2, bit `i` = coefficient of `x^i`.
    pub modulus_bits: u64,
}

impl FieldSpec {
    /// Field order q = 2^f.
    pub fn q(&self) -> u64 {
        1u64 << self.f
    }
}

struct FieldInner {
    spec: FieldSpec,
    q: u64,
    /// Bit `i` set iff `Tr(u^i) = 1`; trace is F_2-linear, so the trace of an
    /// element is the popcount parity of `bits & trace_mask`.
    trace_mask: u32,
    /// Discrete logs base a fixed primitive element, for `f <= 8`.
    /// `log[bits]` for bits in 1..q; empty when tables are disabled.
    log: Vec<u16>,
    /// Antilog table of length `2(q-1) - 1`, so products of two logs index
    /// without a modular reduction.
    exp: Vec<u16>,
}

/// A binary field F_{2^f} together with its precomputed tables.
///
/// Cloning is cheap (the tables are shared). Two handles are interchangeable
/// exactly when their [`FieldSpec`]s agree.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(f={}, modulus={:#b})",
            self.inner.spec.f, self.inner.spec.modulus_bits
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

fn poly_deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_deg(m);
    debug_assert!(dm >= 0);
    while a != 0 && poly_deg(a) >= dm {
        a ^= m << (poly_deg(a) - dm);
    }
    a
}

fn poly_mulmod(a: u64, b: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b_shifted = b;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b_shifted;
        }
        a >>= 1;
        b_shifted <<= 1;
    }
    poly_rem(acc, m)
}

/// Exhaustive trial division: a degree-f polynomial over F_2 is irreducible
/// iff no polynomial of degree in 1..=f/2 divides it.
fn is_irreducible(m: u64, f: u32) -> bool {
    for d in 1..=(f / 2) {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(m, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Default irreducible modulus for small degrees.
    pub fn default_modulus_bits(f: u32) -> Option<u64> {
        match f {
            1 => Some(0b11),     // x + 1
            2 => Some(0b111),    // x^2 + x + 1
            3 => Some(0b1011),   // x^3 + x + 1
            4 => Some(0b10011),  // x^4 + x + 1
            _ => None,
        }
    }

    /// Construct the field with the built-in modulus; `f <= 4` only.
    pub fn with_default_modulus(f: u32) -> Result<Field> {
        let m = Self::default_modulus_bits(f).ok_or_else(|| {
            Error::InvalidField(format!(
                "no default modulus for f = {f}; pass the modulus explicitly"
            ))
        })?;
        Field::new(f, m)
    }

    /// Construct the field, or use the default modulus when none is given.
    pub fn from_config(f: u32, modulus_bits: Option<u64>) -> Result<Field> {
        match modulus_bits {
            Some(m) => Field::new(f, m),
            None => Field::with_default_modulus(f),
        }
    }

    /// Validate the modulus (monic, degree `f`, irreducible) and precompute
    /// the trace mask and, for `f <= 8`, the log/antilog tables.
    pub fn new(f: u32, modulus_bits: u64) -> Result<Field> {
        if f == 0 || f > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree must satisfy 1 <= f <= {MAX_DEGREE}, got {f}"
            )));
        }
        if modulus_bits >> f != 1 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus_bits:#b} is not monic of degree {f}"
            )));
        }
        if !is_irreducible(modulus_bits, f) {
            return Err(Error::NotIrreducible { modulus_bits });
        }

        let spec = FieldSpec { f, modulus_bits };
        let q = spec.q();

        let mut trace_mask = 0u32;
        for i in 0..f {
            let basis = poly_rem(1u64 << i, modulus_bits);
            let mut acc = 0u64;
            let mut frob = basis;
            for _ in 0..f {
                acc ^= frob;
                frob = poly_mulmod(frob, frob, modulus_bits);
            }
            debug_assert!(acc <= 1, "trace must land in F_2");
            if acc == 1 {
                trace_mask |= 1 << i;
            }
        }

        let (log, exp) = if f <= 8 {
            build_tables(modulus_bits, q)
        } else {
            (Vec::new(), Vec::new())
        };

        Ok(Field {
            inner: Arc::new(FieldInner {
                spec,
                q,
                trace_mask,
                log,
                exp,
            }),
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.inner.spec
    }

    pub fn f(&self) -> u32 {
        self.inner.spec.f
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn same_spec(&self, other: &Field) -> bool {
        self.inner.spec == other.inner.spec
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// The image of `x` in `F_2[x]/(modulus)` (equals 1 when f = 1).
    pub fn generator(&self) -> FqElem {
        if self.f() == 1 {
            FqElem::ONE
        } else {
            FqElem(0b10)
        }
    }

    /// Validate a bitmask as an element.
    pub fn elem(&self, bits: u64) -> Result<FqElem> {
        if bits >= self.inner.q {
            return Err(Error::InvalidField(format!(
                "bitmask {bits} out of range for a field of order {}",
                self.inner.q
            )));
        }
        Ok(FqElem(bits as u32))
    }

    /// All q elements, in bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.inner.q as u32).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let inner = &*self.inner;
        if !inner.log.is_empty() {
            let idx = inner.log[a.0 as usize] as usize + inner.log[b.0 as usize] as usize;
            FqElem(inner.exp[idx] as u32)
        } else {
            FqElem(poly_mulmod(a.0 as u64, b.0 as u64, inner.spec.modulus_bits) as u32)
        }
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let mut base = a;
        let mut e = e;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        if !inner.log.is_empty() {
            let ord = (inner.q - 1) as usize;
            let idx = (ord - inner.log[a.0 as usize] as usize) % ord;
            Ok(FqElem(inner.exp[idx] as u32))
        } else {
            Ok(self.pow(a, self.inner.q - 2))
        }
    }

    /// Absolute trace down to F_2.
    pub fn trace(&self, a: FqElem) -> bool {
        (a.0 & self.inner.trace_mask).count_ones() % 2 == 1
    }

    /// The unique square root, `a^(2^(f-1))`; squaring is bijective in
    /// characteristic 2.
    pub fn sqrt(&self, a: FqElem) -> FqElem {
        let mut r = a;
        for _ in 0..self.f().saturating_sub(1) {
            r = self.square(r);
        }
        r
    }

    /// The distinguished unramified representative: the first power
    /// `1, u, u^2, ...` of the modulus root with trace 1.
    pub fn unramified_rep(&self) -> FqElem {
        let u = self.generator();
        let mut cand = FqElem::ONE;
        loop {
            if self.trace(cand) {
                return cand;
            }
            cand = self.mul(cand, u);
        }
    }
}

fn build_tables(modulus: u64, q: u64) -> (Vec<u16>, Vec<u16>) {
    let ord = (q - 1) as usize;
    'cand: for g in 2..q.max(2) {
        let mut exp = vec![0u16; 2 * ord - 1];
        let mut log = vec![0u16; q as usize];
        let mut acc = 1u64;
        for (k, slot) in exp.iter_mut().enumerate().take(ord) {
            if k > 0 && acc == 1 {
                continue 'cand; // order of g divides k < q-1: not primitive
            }
            *slot = acc as u16;
            log[acc as usize] = k as u16;
            acc = poly_mulmod(acc, g, modulus);
        }
        debug_assert_eq!(acc, 1, "g^(q-1) must be 1");
        for k in ord..2 * ord - 1 {
            exp[k] = exp[k - ord];
        }
        return (log, exp);
    }
    // q = 2: the loop body never runs; identity tables.
    (vec![0, 0], vec![1])
}

/// An ordered F_2-basis of F_q, with precomputed decomposition data.
///
/// `element(1)` is `u_1`; the default power basis is `{1, u, ..., u^(f-1)}`.
#[derive(Clone)]
pub struct TraceBasis {
    field: Field,
    elems: Vec<FqElem>,
    /// Row-reduced copies of the basis vectors plus the combination masks
    /// expressing each reduced row over the original basis.
    solve_rows: Vec<(u32, u32)>,
}

impl fmt::Debug for TraceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TraceBasis({:?})", self.elems)
    }
}

impl PartialEq for TraceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elems == other.elems
    }
}

impl Eq for TraceBasis {}

impl TraceBasis {
    /// Check F_2-linear independence and prepare the solver.
    pub fn new(field: Field, elems: Vec<FqElem>) -> Result<TraceBasis> {
        let f = field.f() as usize;
        if elems.len() != f {
            return Err(Error::NotABasis);
        }
        let mut rows: Vec<(u32, u32)> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.bits(), 1u32 << i))
            .collect();
        let mut solve_rows = Vec::with_capacity(f);
        for bit in (0..f).rev() {
            let mask = 1u32 << bit;
            let Some(pos) = rows.iter().position(|(r, _)| r & mask != 0) else {
                continue;
            };
            let pivot = rows.swap_remove(pos);
            for (r, c) in rows.iter_mut() {
                if *r & mask != 0 {
                    *r ^= pivot.0;
                    *c ^= pivot.1;
                }
            }
            solve_rows.push(pivot);
        }
        if solve_rows.len() != f {
            return Err(Error::NotABasis);
        }
        Ok(TraceBasis {
            field,
            elems,
            solve_rows,
        })
    }

    /// The power basis `{1, u, ..., u^(f-1)}`.
    pub fn power_basis(field: &Field) -> TraceBasis {
        let elems = (0..field.f()).map(|i| FqElem(1 << i)).collect();
        TraceBasis::new(field.clone(), elems).expect("power basis is a basis")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis element `u_j`, 1-indexed as in the coset coordinates.
    pub fn element(&self, j: u32) -> Result<FqElem> {
        if j == 0 || j as usize > self.elems.len() {
            return Err(Error::InvalidField(format!(
                "basis index j = {j} out of range 1..={}",
                self.elems.len()
            )));
        }
        Ok(self.elems[(j - 1) as usize])
    }

    pub fn elements(&self) -> &[FqElem] {
        &self.elems
    }

    /// Coordinates of `x` over the basis: bit `j-1` of the result is the
    /// coefficient of `u_j`.
    pub fn decompose(&self, x: FqElem) -> u32 {
        let mut rem = x.bits();
        let mut combo = 0u32;
        for &(row, c) in &self.solve_rows {
            let top = 31 - row.leading_zeros();
            if rem & (1 << top) != 0 {
                rem ^= row;
                combo ^= c;
            }
        }
        debug_assert_eq!(rem, 0, "basis spans the field");
        combo
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn combine(&self, mask: u32) -> FqElem {
        let mut acc = FqElem::ZERO;
        for (i, e) in self.elems.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = self.field.add(acc, *e);
            }
        }
        acc
    }
}
