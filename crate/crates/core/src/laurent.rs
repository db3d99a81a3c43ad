//! Truncated Laurent series over F_q, the model of K = F_q((t)).
//!
//! Every series carries an explicit precision: it is known modulo O(t^prec).
//! Operations propagate the exact worst-case output precision and fail loudly
//! with [`Error::InsufficientPrecision`] instead of silently truncating, so a
//! residue read either is certain or does not happen.
//!
//! A series that vanishes on its whole window is flagged zero-to-precision
//! rather than given a sentinel valuation; a nonzero series always has a
//! nonzero leading coefficient.
//!
//! The formal derivative follows the standard convention
//! `d(t^i)/dt = i * t^(i-1)` with the integer `i` reduced mod 2.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2e::{Field, FqElem};

/// Cap on the coefficient window a single series may carry.
const MAX_WINDOW: i64 = 1 << 20;

/// An element of F_q((t)) known modulo O(t^prec).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    /// Exponent of the leading (nonzero) coefficient; equals `prec` when the
    /// series is zero to precision.
    val: i64,
    prec: i64,
    /// Coefficient of `t^(val + i)` at index `i`; covers `[val, prec)`.
    /// Empty iff the series is zero to precision.
    coeffs: Vec<FqElem>,
}

impl LaurentSeries {
    fn build(field: Field, val: i64, prec: i64, mut coeffs: Vec<FqElem>) -> LaurentSeries {
        // Normalize: strip leading zeros, advancing the valuation.
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                field,
                val: prec,
                prec,
                coeffs: Vec::new(),
            },
            Some(k) => {
                coeffs.drain(..k);
                let val = val + k as i64;
                debug_assert_eq!(coeffs.len() as i64, prec - val);
                LaurentSeries {
                    field,
                    val,
                    prec,
                    coeffs,
                }
            }
        }
    }

    /// The zero series, known modulo O(t^prec).
    pub fn zero(field: &Field, prec: i64) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            val: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    /// The constant 1, known modulo O(t^prec).
    pub fn one(field: &Field, prec: i64) -> Result<LaurentSeries> {
        Self::monomial(field, FqElem::ONE, 0, prec)
    }

    /// `c * t^e`, known modulo O(t^prec).
    pub fn monomial(field: &Field, c: FqElem, e: i64, prec: i64) -> Result<LaurentSeries> {
        Self::from_terms(field, &[(e, c)], Some(prec))
    }

    /// Build a series from (exponent, coefficient) terms. Duplicate exponents
    /// merge by XOR; terms at or above the precision are outside the window
    /// and are dropped. Without an explicit precision the series is taken to
    /// be known through its highest term.
    pub fn from_terms(
        field: &Field,
        terms: &[(i64, FqElem)],
        prec: Option<i64>,
    ) -> Result<LaurentSeries> {
        let natural = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| e + 1)
            .max();
        let prec = match (prec, natural) {
            (Some(p), _) => p,
            (None, Some(n)) => n,
            (None, None) => 1,
        };
        let live: Vec<&(i64, FqElem)> = terms
            .iter()
            .filter(|(e, c)| !c.is_zero() && *e < prec)
            .collect();
        let Some(val) = live.iter().map(|(e, _)| *e).min() else {
            return Ok(LaurentSeries::zero(field, prec));
        };
        if prec - val > MAX_WINDOW {
            return Err(Error::Parse(format!(
                "coefficient window [{val}, {prec}) exceeds the cap of {MAX_WINDOW}"
            )));
        }
        let mut coeffs = vec![FqElem::ZERO; (prec - val) as usize];
        for &&(e, c) in &live {
            let slot = &mut coeffs[(e - val) as usize];
            *slot = field.add(*slot, c);
        }
        Ok(Self::build(field.clone(), val, prec, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Precision exponent: the series is known modulo O(t^prec).
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Valuation, or `None` for a series that is zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation for precision bookkeeping: `prec` when zero, so that
    /// `a = O(t^effective_val(a))` always holds.
    fn effective_val(&self) -> i64 {
        if self.is_zero() {
            self.prec
        } else {
            self.val
        }
    }

    /// Coefficient at exponent `e`, which must be determined (`e < prec`).
    fn known_coeff(&self, e: i64) -> FqElem {
        debug_assert!(e < self.prec);
        if e < self.val || self.is_zero() {
            FqElem::ZERO
        } else {
            self.coeffs[(e - self.val) as usize]
        }
    }

    /// Coefficient at exponent `e`, erroring when the precision does not
    /// determine it.
    pub fn coeff(&self, e: i64) -> Result<FqElem> {
        if e >= self.prec {
            return Err(Error::InsufficientPrecision {
                needed: e + 1,
                have: self.prec,
            });
        }
        Ok(self.known_coeff(e))
    }

    /// Known terms, lowest exponent first, zero coefficients skipped.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.val + i as i64, *c))
    }

    fn check_field(&self, other: &LaurentSeries) -> Result<()> {
        if self.field.same_spec(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_field(other)?;
        let prec = self.prec.min(other.prec);
        let val = self.effective_val().min(other.effective_val()).min(prec);
        let mut coeffs = vec![FqElem::ZERO; (prec - val) as usize];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let e = val + i as i64;
            *slot = self.field.add(self.known_coeff(e), other.known_coeff(e));
        }
        Ok(Self::build(self.field.clone(), val, prec, coeffs))
    }

    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_field(other)?;
        let prec = (self.prec + other.effective_val()).min(other.prec + self.effective_val());
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentSeries::zero(&self.field, prec));
        }
        let val = self.val + other.val;
        let n = (prec - val) as usize; // == min of the relative precisions
        let mut coeffs = vec![FqElem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = self.field.add(coeffs[i + j], self.field.mul(a, b));
            }
        }
        Ok(Self::build(self.field.clone(), val, prec, coeffs))
    }

    /// Frobenius square. In characteristic 2 the cross terms vanish, so the
    /// square of a series known mod O(t^p) is known mod O(t^2p) -- strictly
    /// better than generic multiplication.
    pub fn square(&self) -> LaurentSeries {
        if self.is_zero() {
            return LaurentSeries::zero(&self.field, 2 * self.prec);
        }
        let val = 2 * self.val;
        let prec = 2 * self.prec;
        let mut coeffs = vec![FqElem::ZERO; (prec - val) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = self.field.square(a);
        }
        Self::build(self.field.clone(), val, prec, coeffs)
    }

    /// Multiplicative inverse to the matching relative precision.
    pub fn invert(&self) -> Result<LaurentSeries> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let m = self.coeffs.len(); // relative precision
        let lead_inv = self.field.inv(self.coeffs[0])?;
        let mut w = vec![FqElem::ZERO; m];
        w[0] = lead_inv;
        for k in 1..m {
            let mut s = FqElem::ZERO;
            for i in 1..=k {
                let a = self.coeffs[i];
                if !a.is_zero() {
                    s = self.field.add(s, self.field.mul(a, w[k - i]));
                }
            }
            w[k] = self.field.mul(lead_inv, s); // signs vanish in char 2
        }
        let val = -self.val;
        Ok(Self::build(self.field.clone(), val, val + m as i64, w))
    }

    /// Formal derivative `d/dt`: `t^i` maps to `i * t^(i-1)` with `i` mod 2,
    /// so even-exponent terms die. Precision drops by one.
    pub fn derivative(&self) -> LaurentSeries {
        let prec = self.prec - 1;
        if self.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let val = self.val - 1;
        let mut coeffs = vec![FqElem::ZERO; (prec - val) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            if e.rem_euclid(2) == 1 {
                coeffs[i] = a;
            }
        }
        Self::build(self.field.clone(), val, prec, coeffs)
    }

    /// The coefficient at exponent -1. Requires the precision to reach it.
    pub fn residue(&self) -> Result<FqElem> {
        self.coeff(-1)
    }

    /// Restrict to a smaller precision (no-op when `new_prec >= prec`).
    pub fn truncate(&self, new_prec: i64) -> LaurentSeries {
        if new_prec >= self.prec {
            return self.clone();
        }
        if self.is_zero() || new_prec <= self.val {
            return LaurentSeries::zero(&self.field, new_prec);
        }
        let coeffs = self.coeffs[..(new_prec - self.val) as usize].to_vec();
        Self::build(self.field.clone(), self.val, new_prec, coeffs)
    }

    /// Extend the precision, asserting the new window's extra coefficients
    /// are zero. Used when an input is meant verbatim, e.g. CLI operands.
    pub fn padded_to_prec(&self, prec: i64) -> LaurentSeries {
        if prec <= self.prec {
            return self.clone();
        }
        if self.is_zero() {
            return LaurentSeries::zero(&self.field, prec);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize((prec - self.val) as usize, FqElem::ZERO);
        Self::build(self.field.clone(), self.val, prec, coeffs)
    }

    /// Substitute `t -> c t` for a unit `c`: the coefficient at exponent `i`
    /// picks up a factor `c^i`. Valuation and precision are unchanged.
    pub fn rescale_uniformizer(&self, c: FqElem) -> Result<LaurentSeries> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let ord = self.field.q() - 1;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let e = (self.val + i as i64).rem_euclid(ord as i64) as u64;
                self.field.mul(a, self.field.pow(c, e))
            })
            .collect();
        Ok(Self::build(
            self.field.clone(),
            self.val,
            self.prec,
            coeffs,
        ))
    }

    /// Greedy factorization `t^k * theta_0 * prod_i (1 + theta_i t^i)`,
    /// determined through relative precision.
    pub fn product_expansion(&self) -> Result<ProductExpansion> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let k = self.val;
        let theta0 = self.coeffs[0];
        let m = self.coeffs.len();
        // Normalize to a 1-unit: divide by theta_0 (the t^k shift is implicit
        // in working with relative indices).
        let t0_inv = self.field.inv(theta0)?;
        let mut unit: Vec<FqElem> = self
            .coeffs
            .iter()
            .map(|&a| self.field.mul(a, t0_inv))
            .collect();
        let mut thetas = vec![FqElem::ZERO; m.saturating_sub(1)];
        for i in 1..m {
            let theta = unit[i];
            thetas[i - 1] = theta;
            if theta.is_zero() {
                continue;
            }
            // Divide by (1 + theta t^i): multiply by the geometric series
            // sum_j theta^j t^(i j).
            let mut scaled = unit.clone();
            let mut power = theta;
            let mut shift = i;
            while shift < m {
                for idx in shift..m {
                    let contrib = self.field.mul(power, unit[idx - shift]);
                    scaled[idx] = self.field.add(scaled[idx], contrib);
                }
                power = self.field.mul(power, theta);
                shift += i;
            }
            unit = scaled;
            debug_assert!(unit[i].is_zero());
        }
        Ok(ProductExpansion {
            field: self.field.clone(),
            k,
            theta0,
            thetas,
            prec: self.prec,
        })
    }

    /// Parse the textual form: terms `c*t^e` joined by `+`, where `c` is a
    /// field-element bitmask (or `u` for the modulus root) and may be omitted
    /// when 1. Examples: `t^-3 + u*t^-1 + 1 + t^2`, `3*t^2`, `0`.
    pub fn parse(field: &Field, input: &str) -> Result<LaurentSeries> {
        let mut terms = Vec::new();
        for raw in input.split('+') {
            let token = raw.trim();
            if token.is_empty() {
                return Err(Error::Parse(format!("empty term in {input:?}")));
            }
            terms.push(parse_term(field, token)?);
        }
        LaurentSeries::from_terms(field, &terms, None)
    }

    /// Parse, then treat the result as exact at least through `min_prec`
    /// (the natural precision is kept when it is already higher).
    pub fn parse_with_min_prec(field: &Field, input: &str, min_prec: i64) -> Result<LaurentSeries> {
        Ok(Self::parse(field, input)?.padded_to_prec(min_prec))
    }

    /// JSON form `{"val": v, "prec": N, "coeffs": [[e, bits], ...]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .terms()
            .map(|(e, c)| serde_json::json!([e, c.bits()]))
            .collect();
        serde_json::json!({
            "val": self.valuation(),
            "prec": self.prec,
            "coeffs": coeffs,
        })
    }

    pub fn from_json_value(field: &Field, v: &serde_json::Value) -> Result<LaurentSeries> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let prec = obj
            .get("prec")
            .and_then(|p| p.as_i64())
            .ok_or_else(|| Error::Parse("missing integer field \"prec\"".into()))?;
        let coeffs = obj
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("missing array field \"coeffs\"".into()))?;
        let mut terms = Vec::with_capacity(coeffs.len());
        for pair in coeffs {
            let (Some(e), Some(bits)) = (
                pair.get(0).and_then(|x| x.as_i64()),
                pair.get(1).and_then(|x| x.as_u64()),
            ) else {
                return Err(Error::Parse(format!("bad coefficient pair {pair}")));
            };
            terms.push((e, field.elem(bits)?));
        }
        LaurentSeries::from_terms(field, &terms, Some(prec))
    }
}

fn parse_term(field: &Field, token: &str) -> Result<(i64, FqElem)> {
    let (coeff_str, exp_part) = match token.split_once('*') {
        Some((c, rest)) => (Some(c.trim()), Some(rest.trim())),
        None if token.starts_with('t') => (None, Some(token)),
        None => (Some(token), None),
    };
    let coeff = match coeff_str {
        None => FqElem::ONE,
        Some("u") => {
            if field.f() < 2 {
                return Err(Error::Parse(
                    "coefficient `u` needs a field with f >= 2".into(),
                ));
            }
            field.generator()
        }
        Some(c) => {
            let bits: u64 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            field.elem(bits)?
        }
    };
    let exponent = match exp_part {
        None => 0,
        Some("t") => 1,
        Some(e) => {
            let rest = e
                .strip_prefix("t^")
                .ok_or_else(|| Error::Parse(format!("bad term {token:?}")))?;
            rest.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?
        }
    };
    Ok((exponent, coeff))
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c == FqElem::ONE, e) {
                (true, 0) => write!(f, "1")?,
                (true, 1) => write!(f, "t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 0) => write!(f, "{}", c.bits())?,
                (false, 1) => write!(f, "{}*t", c.bits())?,
                (false, _) => write!(f, "{}*t^{e}", c.bits())?,
            }
        }
        Ok(())
    }
}

/// The convergent-product form `t^k * theta_0 * prod_{i>=1} (1 + theta_i t^i)`
/// of a nonzero series, with `theta_i` determined for `1 <= i < prec - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductExpansion {
    field: Field,
    k: i64,
    theta0: FqElem,
    /// `thetas[i - 1]` is `theta_i`.
    thetas: Vec<FqElem>,
    prec: i64,
}

impl ProductExpansion {
    pub fn new(
        field: &Field,
        k: i64,
        theta0: FqElem,
        thetas: Vec<FqElem>,
        prec: i64,
    ) -> Result<ProductExpansion> {
        if theta0.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(ProductExpansion {
            field: field.clone(),
            k,
            theta0,
            thetas,
            prec,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn theta0(&self) -> FqElem {
        self.theta0
    }

    /// `theta_i`, or `None` when the precision does not determine it.
    pub fn theta(&self, i: u64) -> Option<FqElem> {
        if i == 0 || i > self.thetas.len() as u64 {
            None
        } else {
            Some(self.thetas[(i - 1) as usize])
        }
    }

    pub fn thetas(&self) -> &[FqElem] {
        &self.thetas
    }

    /// Number of determined coefficients past the leading one, i.e. the
    /// relative precision of the source series.
    pub fn rel_prec(&self) -> u64 {
        self.thetas.len() as u64 + 1
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Multiply the factors back out, truncated at the stored precision.
    pub fn to_series(&self) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::monomial(&self.field, self.theta0, self.k, self.prec)?;
        for (idx, &theta) in self.thetas.iter().enumerate() {
            if theta.is_zero() {
                continue;
            }
            let i = idx as i64 + 1;
            let factor = LaurentSeries::from_terms(
                &self.field,
                &[(0, FqElem::ONE), (i, theta)],
                Some(self.prec - self.k),
            )?;
            acc = acc.mul(&factor)?;
        }
        Ok(acc.padded_to_prec(self.prec))
    }
}
