//! The Artin-Schreier symbol in characteristic 2 and the quadratic characters
//! it parametrizes.
//!
//! The map `wp(X) = X^2 - X` identifies quadratic extensions of
//! K = F_q((t)) with F_2-lines in K/wp(K). A canonical representative of a
//! coset consists of an unramified bit (the coefficient of a distinguished
//! constant `b0` with `Tr(b0) = 1`) plus a wild part supported on the basis
//! `{u_j t^-(2n+1)}`. The symbol `(alpha, beta]` is computed two independent
//! ways:
//!
//! * the residue route `Tr res(beta * alpha^{-1} * dalpha/dt)`, and
//! * the closed form over the product expansion of `alpha`,
//!   `chi_{n,j}(alpha) = sum_{i | 2n+1} Tr(u_j theta_i^{(2n+1)/i})`.
//!
//! Both land in F_2 = {0, 1} written additively; the multiplicative {1, -1}
//! reading is presentation only.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2e::{FqElem, TraceBasis};
use crate::laurent::LaurentSeries;

/// Canonical representative of a class in K/wp(K): an unramified bit plus a
/// finite set of wild generator coordinates `(n, j)`, standing for
/// `c * b0 + sum u_j t^-(2n+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetRep {
    basis: TraceBasis,
    unram: bool,
    wild: BTreeSet<(u32, u32)>,
}

impl fmt::Debug for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetRep({})", self.label())
    }
}

impl CosetRep {
    pub fn zero(basis: &TraceBasis) -> CosetRep {
        CosetRep {
            basis: basis.clone(),
            unram: false,
            wild: BTreeSet::new(),
        }
    }

    /// The class of the distinguished unramified representative `b0`.
    pub fn unramified(basis: &TraceBasis) -> CosetRep {
        CosetRep {
            basis: basis.clone(),
            unram: true,
            wild: BTreeSet::new(),
        }
    }

    /// The pure wild generator `u_j t^-(2n+1)`.
    pub fn generator(basis: &TraceBasis, n: u32, j: u32) -> Result<CosetRep> {
        basis.element(j)?; // validates j
        let mut wild = BTreeSet::new();
        wild.insert((n, j));
        Ok(CosetRep {
            basis: basis.clone(),
            unram: false,
            wild,
        })
    }

    pub fn from_parts(
        basis: &TraceBasis,
        unram: bool,
        wild: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<CosetRep> {
        let wild: BTreeSet<(u32, u32)> = wild.into_iter().collect();
        for &(_, j) in &wild {
            basis.element(j)?;
        }
        Ok(CosetRep {
            basis: basis.clone(),
            unram,
            wild,
        })
    }

    pub fn basis(&self) -> &TraceBasis {
        &self.basis
    }

    pub fn unram_bit(&self) -> bool {
        self.unram
    }

    /// The set of wild coordinates `(n, j)` with coefficient 1.
    pub fn wild_support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.wild.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        !self.unram && self.wild.is_empty()
    }

    /// F_2-linear sum of two representatives (symmetric difference of the
    /// supports).
    pub fn add(&self, other: &CosetRep) -> Result<CosetRep> {
        if self.basis != other.basis {
            return Err(Error::FieldMismatch);
        }
        let wild = self
            .wild
            .symmetric_difference(&other.wild)
            .copied()
            .collect();
        Ok(CosetRep {
            basis: self.basis.clone(),
            unram: self.unram ^ other.unram,
            wild,
        })
    }

    /// Expand back to a Laurent series (an exact polynomial, so any
    /// precision >= 1 is faithful).
    pub fn to_series(&self, prec: i64) -> Result<LaurentSeries> {
        let field = self.basis.field();
        let mut terms: Vec<(i64, FqElem)> = Vec::new();
        if self.unram {
            terms.push((0, field.unramified_rep()));
        }
        for &(n, j) in &self.wild {
            terms.push((-(2 * n as i64 + 1), self.basis.element(j)?));
        }
        LaurentSeries::from_terms(field, &terms, Some(prec.max(1)))
    }

    /// Compact text form, e.g. `b0 + u1*t^-1 + u2*t^-3`.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        if self.unram {
            parts.push("b0".to_string());
        }
        for &(n, j) in &self.wild {
            parts.push(format!("u{}*t^-{}", j, 2 * n + 1));
        }
        parts.join(" + ")
    }

    /// JSON form `{"c": 0|1, "wild": [[n, j, 1], ...]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let wild: Vec<serde_json::Value> = self
            .wild
            .iter()
            .map(|&(n, j)| serde_json::json!([n, j, 1]))
            .collect();
        serde_json::json!({ "c": self.unram as u8, "wild": wild })
    }
}

/// A quadratic character of K^x, i.e. a nonzero class `beta + wp(K)` acting
/// by `alpha -> (alpha, beta]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadChar {
    rep: CosetRep,
}

impl QuadChar {
    pub fn new(rep: CosetRep) -> Result<QuadChar> {
        if rep.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(QuadChar { rep })
    }

    /// The generator character `chi_{n,j}` attached to `u_j t^-(2n+1)`.
    pub fn generator(basis: &TraceBasis, n: u32, j: u32) -> Result<QuadChar> {
        QuadChar::new(CosetRep::generator(basis, n, j)?)
    }

    pub fn rep(&self) -> &CosetRep {
        &self.rep
    }

    /// The level: `2n+1` for the deepest wild generator, or the conventional
    /// value -1 for the purely unramified character (which is trivial on all
    /// of the unit filtration, and whose parameter has negative depth).
    pub fn level(&self) -> i64 {
        self.rep
            .wild
            .iter()
            .map(|&(n, _)| 2 * n as i64 + 1)
            .max()
            .unwrap_or(-1)
    }

    /// Closed-form evaluation over the product expansion of `alpha`: each
    /// wild generator `(n, j)` contributes
    /// `sum_{i | 2n+1} Tr(u_j theta_i^((2n+1)/i))`, and the unramified bit
    /// contributes the valuation of `alpha` mod 2.
    pub fn eval(&self, alpha: &LaurentSeries) -> Result<bool> {
        if !self.rep.basis.field().same_spec(alpha.field()) {
            return Err(Error::FieldMismatch);
        }
        let field = alpha.field().clone();
        let expansion = alpha.product_expansion()?;
        let mut acc = false;
        if self.rep.unram {
            acc ^= expansion.k().rem_euclid(2) == 1;
        }
        for &(n, j) in &self.rep.wild {
            let level = 2 * n as u64 + 1;
            if expansion.rel_prec() < level + 1 {
                return Err(Error::InsufficientPrecision {
                    needed: expansion.k() + level as i64 + 1,
                    have: alpha.prec(),
                });
            }
            let u_j = self.rep.basis.element(j)?;
            for i in (1..=level).filter(|i| level % i == 0) {
                let theta = expansion.theta(i).expect("checked above");
                let power = field.pow(theta, level / i);
                acc ^= field.trace(field.mul(u_j, power));
            }
        }
        Ok(acc)
    }
}

/// The Artin-Schreier map `wp(g) = g^2 - g` (equal to `g^2 + g` here).
pub fn wp(g: &LaurentSeries) -> LaurentSeries {
    let sq = g.square();
    sq.add(g).expect("same field")
}

/// The symbol `(alpha, beta]` by the residue route:
/// `Tr res(beta * alpha^{-1} * dalpha/dt)`.
///
/// `beta` must have precision >= 1: its class mod wp(K) is then fully
/// determined, because every series in t*O[[t]] is a wp-image (Hensel). The
/// tail beyond the window provably cannot reach the residue, since the
/// logarithmic derivative has valuation >= -1. On the `alpha` side every
/// coefficient read is precision-checked; when `beta` has pole order 2n+1
/// this amounts to `alpha` being known at least 2n+2 places past its
/// valuation.
pub fn pairing(alpha: &LaurentSeries, beta: &LaurentSeries) -> Result<bool> {
    if !alpha.field().same_spec(beta.field()) {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroInversion);
    }
    if beta.prec() < 1 {
        return Err(Error::InsufficientPrecision {
            needed: 1,
            have: beta.prec(),
        });
    }
    let field = alpha.field().clone();
    let log_derivative = alpha.invert()?.mul(&alpha.derivative())?;
    let mut acc = false;
    for (e, b) in beta.terms() {
        let c = log_derivative.coeff(-1 - e)?;
        acc ^= field.trace(field.mul(b, c));
    }
    Ok(acc)
}

/// Reduce `beta` to the canonical coset representative. Requires the
/// principal part and constant term to be determined (`prec >= 1`); the tail
/// in t*O[[t]] lies in wp(K) and never matters.
///
/// The reduction is F_2-linear and idempotent:
/// 1. terms of positive exponent are dropped (wp is bijective on the maximal
///    ideal);
/// 2. the constant term `theta_0` contributes `Tr(theta_0)` to the
///    unramified bit, since the image of wp on F_q is the kernel of the
///    trace;
/// 3. an even-order pole `theta t^-2m` is replaced by `sqrt(theta) t^-m`
///    using `wp(sqrt(theta) t^-m) = theta t^-2m - sqrt(theta) t^-m`, until
///    every pole order is odd;
/// 4. each odd pole coefficient is decomposed over the trace basis into the
///    wild bits `(n, j)`.
pub fn reduce_coset(beta: &LaurentSeries, basis: &TraceBasis) -> Result<CosetRep> {
    if !beta.field().same_spec(basis.field()) {
        return Err(Error::FieldMismatch);
    }
    if beta.prec() < 1 {
        return Err(Error::InsufficientPrecision {
            needed: 1,
            have: beta.prec(),
        });
    }
    let field = basis.field();
    let mut poles: BTreeMap<u64, FqElem> = BTreeMap::new();
    let mut constant = FqElem::ZERO;
    for (e, c) in beta.terms() {
        if e < 0 {
            poles.insert((-e) as u64, c);
        } else if e == 0 {
            constant = c;
        }
    }
    let unram = field.trace(constant);

    // Halve even pole orders until all are odd.
    while let Some(order) = poles.keys().copied().find(|o| o % 2 == 0) {
        let theta = poles.remove(&order).expect("present");
        let root = field.sqrt(theta);
        let half = order / 2;
        let merged = field.add(*poles.get(&half).unwrap_or(&FqElem::ZERO), root);
        if merged.is_zero() {
            poles.remove(&half);
        } else {
            poles.insert(half, merged);
        }
    }

    let mut wild = BTreeSet::new();
    for (order, theta) in poles {
        let n = ((order - 1) / 2) as u32;
        let mask = basis.decompose(theta);
        for j in 1..=basis.len() as u32 {
            if mask & (1 << (j - 1)) != 0 {
                wild.insert((n, j));
            }
        }
    }
    Ok(CosetRep {
        basis: basis.clone(),
        unram,
        wild,
    })
}

/// F_2-dimension of V_n, the image of `p^-n` in K/wp(K):
/// `1 + ceil(n/2) * f`.
pub fn coset_space_dim(n: u64, f: u32) -> u64 {
    1 + n.div_ceil(2) * f as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2e::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(f: u32) -> TraceBasis {
        let field = Field::with_default_modulus(f).unwrap();
        TraceBasis::power_basis(&field)
    }

    fn random_nonzero(rng: &mut ChaCha8Rng, basis: &TraceBasis, rel_prec: usize) -> LaurentSeries {
        let field = basis.field();
        let val = rng.random_range(-4..5);
        let mut terms = Vec::with_capacity(rel_prec);
        let lead = rng.random_range(1..field.q());
        terms.push((val, field.elem(lead).unwrap()));
        for i in 1..rel_prec {
            let bits = rng.random_range(0..field.q());
            terms.push((val + i as i64, field.elem(bits).unwrap()));
        }
        LaurentSeries::from_terms(field, &terms, Some(val + rel_prec as i64)).unwrap()
    }

    #[test]
    fn wp_known_values() {
        let basis = setup(1);
        let field = basis.field();
        assert!(wp(&LaurentSeries::zero(field, 4)).is_zero());
        assert!(wp(&LaurentSeries::one(field, 4).unwrap()).is_zero());
        // wp(t^-1) = t^-2 + t^-1.
        let g = LaurentSeries::parse(field, "t^-1").unwrap();
        let w = wp(&g);
        assert_eq!(w.coeff(-2).unwrap(), FqElem::ONE);
        assert_eq!(w.coeff(-1).unwrap(), FqElem::ONE);
    }

    #[test]
    fn pairing_monomial_against_generator_vanishes() {
        // (theta_0 t^k, u_j t^-(2n+1)] = 0.
        for f in 1..=3u32 {
            let basis = setup(f);
            let field = basis.field();
            for k in -3..4i64 {
                for theta in field.elements().skip(1) {
                    let alpha =
                        LaurentSeries::monomial(field, theta, k, k + 14).unwrap();
                    for n in 0..3u32 {
                        let beta = CosetRep::generator(&basis, n, 1)
                            .unwrap()
                            .to_series(1)
                            .unwrap();
                        assert_eq!(pairing(&alpha, &beta).unwrap(), false);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_unit_factor_divisibility_rule() {
        // (1 + theta t^i, u_j t^-(2n+1)] is 0 when i does not divide 2n+1,
        // and Tr(u_j theta^((2n+1)/i)) when it does.
        for f in 1..=3u32 {
            let basis = setup(f);
            let field = basis.field();
            for n in 0..4u32 {
                let level = 2 * n as i64 + 1;
                for j in 1..=f {
                    let u_j = basis.element(j).unwrap();
                    let beta = CosetRep::generator(&basis, n, j)
                        .unwrap()
                        .to_series(1)
                        .unwrap();
                    for i in 1..=(level + 2) {
                        for theta in field.elements().skip(1) {
                            let alpha = LaurentSeries::from_terms(
                                field,
                                &[(0, FqElem::ONE), (i, theta)],
                                Some(level + 2),
                            )
                            .unwrap();
                            let got = pairing(&alpha, &beta).unwrap();
                            let expected = if level % i == 0 {
                                field.trace(field.mul(u_j, field.pow(theta, (level / i) as u64)))
                            } else {
                                false
                            };
                            assert_eq!(got, expected, "f={f} n={n} j={j} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_requires_alpha_precision() {
        let basis = setup(1);
        let field = basis.field();
        // alpha = t + O(t^2) has one known coefficient; against t^-1 the
        // residue needs two.
        let alpha = LaurentSeries::parse(field, "t").unwrap();
        let beta = LaurentSeries::parse(field, "t^-1").unwrap();
        assert!(matches!(
            pairing(&alpha, &beta),
            Err(Error::InsufficientPrecision { .. })
        ));
        // Padding to the exact monomial makes it 0.
        assert_eq!(pairing(&alpha.padded_to_prec(2), &beta).unwrap(), false);
    }

    #[test]
    fn pairing_rejects_undetermined_beta_class() {
        let basis = setup(1);
        let field = basis.field();
        let alpha = LaurentSeries::parse_with_min_prec(field, "1 + t", 8).unwrap();
        let beta = LaurentSeries::zero(field, 0); // class not determined
        assert!(matches!(
            pairing(&alpha, &beta),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn char_eval_matches_paper_worked_examples() {
        // chi_{0,1} = Tr theta_1, chi_{1,1} = Tr(theta_1^3 + theta_3),
        // chi_{2,1} = Tr(theta_1^5 + theta_5).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in 1..=3u32 {
            let basis = setup(f);
            let field = basis.field();
            for _ in 0..100 {
                let alpha = random_nonzero(&mut rng, &basis, 14);
                let e = alpha.product_expansion().unwrap();
                let t1 = e.theta(1).unwrap();
                let t3 = e.theta(3).unwrap();
                let t5 = e.theta(5).unwrap();
                let chi0 = QuadChar::generator(&basis, 0, 1).unwrap();
                let chi1 = QuadChar::generator(&basis, 1, 1).unwrap();
                let chi2 = QuadChar::generator(&basis, 2, 1).unwrap();
                assert_eq!(chi0.eval(&alpha).unwrap(), field.trace(t1));
                assert_eq!(
                    chi1.eval(&alpha).unwrap(),
                    field.trace(field.add(field.pow(t1, 3), t3))
                );
                assert_eq!(
                    chi2.eval(&alpha).unwrap(),
                    field.trace(field.add(field.pow(t1, 5), t5))
                );
            }
        }
    }

    #[test]
    fn char_eval_agrees_with_residue_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in 1..=2u32 {
            let basis = setup(f);
            for _ in 0..150 {
                let alpha = random_nonzero(&mut rng, &basis, 14);
                for n in 0..=5u32 {
                    for j in 1..=f {
                        let chi = QuadChar::generator(&basis, n, j).unwrap();
                        let beta = chi.rep().to_series(1).unwrap();
                        assert_eq!(
                            chi.eval(&alpha).unwrap(),
                            pairing(&alpha, &beta).unwrap(),
                            "f={f} n={n} j={j} alpha={alpha}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unramified_character_counts_valuation() {
        let basis = setup(2);
        let field = basis.field();
        let chi = QuadChar::new(CosetRep::unramified(&basis)).unwrap();
        for k in -3..4i64 {
            let alpha = LaurentSeries::monomial(field, FqElem::ONE, k, k + 6).unwrap();
            assert_eq!(chi.eval(&alpha).unwrap(), k.rem_euclid(2) == 1);
        }
    }

    #[test]
    fn reduce_kills_wp_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for f in 1..=3u32 {
            let basis = setup(f);
            for _ in 0..100 {
                let gamma = random_nonzero(&mut rng, &basis, 12);
                let image = wp(&gamma);
                if image.prec() < 1 {
                    continue;
                }
                let rep = reduce_coset(&image, &basis).unwrap();
                assert!(rep.is_zero(), "wp({gamma}) reduced to {rep:?}");
            }
        }
    }

    #[test]
    fn reduce_halves_even_poles() {
        // theta t^-2m reduces like sqrt(theta) t^-m.
        for f in 1..=3u32 {
            let basis = setup(f);
            let field = basis.field();
            for m in 1..5i64 {
                for theta in field.elements().skip(1) {
                    let even = LaurentSeries::monomial(field, theta, -2 * m, 1).unwrap();
                    let odd =
                        LaurentSeries::monomial(field, field.sqrt(theta), -m, 1).unwrap();
                    assert_eq!(
                        reduce_coset(&even, &basis).unwrap(),
                        reduce_coset(&odd, &basis).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn reduce_is_idempotent_on_generators() {
        let basis = setup(3);
        for n in 0..4u32 {
            for j in 1..=3u32 {
                let rep = CosetRep::generator(&basis, n, j).unwrap();
                let back = reduce_coset(&rep.to_series(1).unwrap(), &basis).unwrap();
                assert_eq!(back, rep);
            }
        }
    }

    #[test]
    fn reduce_constant_terms_by_trace() {
        for f in 1..=3u32 {
            let basis = setup(f);
            let field = basis.field();
            for theta in field.elements() {
                let c = LaurentSeries::monomial(field, theta, 0, 1).unwrap();
                let rep = reduce_coset(&c, &basis).unwrap();
                assert_eq!(rep.unram_bit(), field.trace(theta));
                assert_eq!(rep.wild.len(), 0);
            }
        }
    }

    #[test]
    fn reduce_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let basis = setup(2);
        for _ in 0..200 {
            let a = random_nonzero(&mut rng, &basis, 10).padded_to_prec(1);
            let b = random_nonzero(&mut rng, &basis, 10).padded_to_prec(1);
            if a.prec() < 1 || b.prec() < 1 {
                continue;
            }
            let sum = a.add(&b).unwrap();
            if sum.prec() < 1 {
                continue;
            }
            let lhs = reduce_coset(&sum, &basis).unwrap();
            let rhs = reduce_coset(&a, &basis)
                .unwrap()
                .add(&reduce_coset(&b, &basis).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn char_level_values() {
        let basis = setup(2);
        assert_eq!(QuadChar::generator(&basis, 0, 1).unwrap().level(), 1);
        assert_eq!(QuadChar::generator(&basis, 3, 2).unwrap().level(), 7);
        let unram = QuadChar::new(CosetRep::unramified(&basis)).unwrap();
        assert_eq!(unram.level(), -1);
        // Mixed: the wild part wins.
        let mixed = QuadChar::new(
            CosetRep::from_parts(&basis, true, [(1, 1)]).unwrap(),
        )
        .unwrap();
        assert_eq!(mixed.level(), 3);
        assert_eq!(
            QuadChar::new(CosetRep::zero(&basis)).err(),
            Some(Error::ZeroCharacter)
        );
    }

    #[test]
    fn dim_formula_spot_values() {
        assert_eq!(coset_space_dim(0, 3), 1);
        assert_eq!(coset_space_dim(1, 1), 2);
        assert_eq!(coset_space_dim(5, 2), 7);
        assert_eq!(coset_space_dim(9, 3), 16);
    }

    #[test]
    fn level_law_on_unit_filtration() {
        // chi_{n,j} is nontrivial on U^(2n+1) and trivial on U^(2n+2).
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in 1..=2u32 {
            let basis = setup(f);
            let field = basis.field();
            for n in 0..3u32 {
                for j in 1..=f {
                    let chi = QuadChar::generator(&basis, n, j).unwrap();
                    let level = 2 * n as i64 + 1;
                    let hit = field.elements().skip(1).any(|theta| {
                        let alpha = LaurentSeries::from_terms(
                            field,
                            &[(0, FqElem::ONE), (level, theta)],
                            Some(level + 3),
                        )
                        .unwrap();
                        chi.eval(&alpha).unwrap()
                    });
                    assert!(hit, "chi({n},{j}) trivial on U^{level}");
                    for _ in 0..50 {
                        let mut terms = vec![(0, FqElem::ONE)];
                        for i in (level + 1)..(level + 8) {
                            let bits = rng.random_range(0..field.q());
                            terms.push((i, field.elem(bits).unwrap()));
                        }
                        let alpha =
                            LaurentSeries::from_terms(field, &terms, Some(level + 8)).unwrap();
                        assert_eq!(chi.eval(&alpha).unwrap(), false);
                    }
                }
            }
        }
    }

    #[test]
    fn coset_rep_json_shape() {
        let basis = setup(2);
        let rep = CosetRep::from_parts(&basis, true, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            rep.to_json_value(),
            serde_json::json!({"c": 1, "wild": [[0, 1, 1], [1, 2, 1]]})
        );
        assert_eq!(rep.label(), "b0 + u1*t^-1 + u2*t^-3");
    }
}
