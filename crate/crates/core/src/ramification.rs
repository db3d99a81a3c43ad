//! Quadratic and biquadratic extensions of K as lines and planes in K/wp(K),
//! their upper-numbering ramification break profiles, the Hasse-Herbrand
//! conversion to lower numbering, and exact counting.
//!
//! The filtration V_n on K/wp(K) (images of the fractional ideals p^-n)
//! induces on every plane one of three break shapes, named Case 1 (the plane
//! contains the unramified line V_0), Case 2.1 (a single break, all three
//! nonzero classes of equal level) and Case 2.2 (two positive breaks).
//! Positive breaks are always odd.
//!
//! Enumeration works in coordinates: the classes in V_t form an F_2-space of
//! dimension `1 + ceil(t/2) f` with bit 0 the unramified line and the
//! remaining bits the wild generators `(n, j)` in lexicographic order.
//! Subspaces are listed once each via a canonical choice of basis.

use serde::Serialize;

use crate::artin_schreier::{coset_space_dim, CosetRep};
use crate::error::{Error, Result};
use crate::f2linalg;
use crate::gf2e::TraceBasis;
use crate::Rational;

/// Hard cap on the ambient F_2-dimension for exhaustive enumeration.
pub const ENUM_DIM_CAP: u64 = 20;

/// A quadratic extension: the F_2-line spanned by a nonzero class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtLine {
    gen: CosetRep,
}

impl ExtLine {
    pub fn new(gen: CosetRep) -> Result<ExtLine> {
        if gen.is_zero() {
            return Err(Error::ZeroCoset);
        }
        Ok(ExtLine { gen })
    }

    pub fn generator(&self) -> &CosetRep {
        &self.gen
    }
}

/// A biquadratic extension: the F_2-plane spanned by two independent classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtPlane {
    gens: [CosetRep; 2],
}

impl ExtPlane {
    pub fn new(a: CosetRep, b: CosetRep) -> Result<ExtPlane> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroCoset);
        }
        if a == b {
            return Err(Error::DependentPlane);
        }
        Ok(ExtPlane { gens: [a, b] })
    }

    pub fn generators(&self) -> &[CosetRep; 2] {
        &self.gens
    }

    /// The three nonzero classes of the plane.
    pub fn nonzero_elements(&self) -> Result<[CosetRep; 3]> {
        let sum = self.gens[0].add(&self.gens[1])?;
        Ok([self.gens[0].clone(), self.gens[1].clone(), sum])
    }

    pub fn label(&self) -> String {
        format!("<{}, {}>", self.gens[0].label(), self.gens[1].label())
    }
}

/// Upper-numbering ramification breaks of a quadratic or biquadratic
/// extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BreakProfile {
    /// The unramified quadratic extension: single break at -1.
    QuadUnramified,
    /// A ramified quadratic extension: single break at an odd t > 0.
    QuadRamified { t: i64 },
    /// Biquadratic containing the unramified line: breaks at -1 and t.
    Case1 { t: i64 },
    /// Biquadratic, single break t (all three classes of equal level);
    /// only occurs for f > 1.
    Case21 { t: i64 },
    /// Biquadratic with two positive breaks t1 < t2.
    Case22 { t1: i64, t2: i64 },
}

fn check_odd_positive(t: i64) -> Result<()> {
    if t <= 0 || t % 2 == 0 {
        return Err(Error::PreconditionViolated(format!(
            "positive breaks must be odd, got {t}"
        )));
    }
    Ok(())
}

impl BreakProfile {
    /// Validate the break parity/order constraints.
    pub fn validate(&self) -> Result<()> {
        match *self {
            BreakProfile::QuadUnramified => Ok(()),
            BreakProfile::QuadRamified { t }
            | BreakProfile::Case1 { t }
            | BreakProfile::Case21 { t } => check_odd_positive(t),
            BreakProfile::Case22 { t1, t2 } => {
                check_odd_positive(t1)?;
                check_odd_positive(t2)?;
                if t1 >= t2 {
                    return Err(Error::PreconditionViolated(format!(
                        "Case 2.2 needs t1 < t2, got ({t1}, {t2})"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn is_biquadratic(&self) -> bool {
        matches!(
            self,
            BreakProfile::Case1 { .. } | BreakProfile::Case21 { .. } | BreakProfile::Case22 { .. }
        )
    }

    /// The upper-numbering breaks, ascending.
    pub fn upper_breaks(&self) -> Vec<i64> {
        match *self {
            BreakProfile::QuadUnramified => vec![-1],
            BreakProfile::QuadRamified { t } => vec![t],
            BreakProfile::Case1 { t } => vec![-1, t],
            BreakProfile::Case21 { t } => vec![t],
            BreakProfile::Case22 { t1, t2 } => vec![t1, t2],
        }
    }

    pub fn case_name(&self) -> &'static str {
        match self {
            BreakProfile::QuadUnramified => "quad-unramified",
            BreakProfile::QuadRamified { .. } => "quad-ramified",
            BreakProfile::Case1 { .. } => "case1",
            BreakProfile::Case21 { .. } => "case2.1",
            BreakProfile::Case22 { .. } => "case2.2",
        }
    }
}

/// The filtration level of a nonzero class: the smallest n with the class in
/// V_n. This is `2n+1` for the deepest wild generator and 0 for the purely
/// unramified class (V_0 is the image of the ring of integers).
pub fn level(rep: &CosetRep) -> Result<i64> {
    if rep.is_zero() {
        return Err(Error::ZeroCoset);
    }
    Ok(rep
        .wild_support()
        .map(|(n, _)| 2 * n as i64 + 1)
        .max()
        .unwrap_or(0))
}

/// Break profile of a quadratic extension: level 0 means unramified (break
/// -1), level t > 0 gives the single break t.
pub fn quad_breaks(line: &ExtLine) -> Result<BreakProfile> {
    let t = level(line.generator())?;
    Ok(if t == 0 {
        BreakProfile::QuadUnramified
    } else {
        BreakProfile::QuadRamified { t }
    })
}

fn profile_from_levels(levels: [i64; 3]) -> BreakProfile {
    let mut sorted = levels;
    sorted.sort_unstable();
    let [a, b, c] = sorted;
    // The level map is ultrametric, so the two largest levels always agree.
    debug_assert_eq!(b, c, "levels {levels:?} violate the ultrametric shape");
    if a == 0 {
        BreakProfile::Case1 { t: c }
    } else if a == c {
        BreakProfile::Case21 { t: c }
    } else {
        BreakProfile::Case22 { t1: a, t2: c }
    }
}

/// Break profile of a biquadratic extension, from the levels of the three
/// nonzero classes of the plane. Basis independent.
pub fn biquad_profile(plane: &ExtPlane) -> Result<BreakProfile> {
    let elems = plane.nonzero_elements()?;
    let mut levels = [0i64; 3];
    for (slot, rep) in levels.iter_mut().zip(elems.iter()) {
        *slot = level(rep)?;
    }
    Ok(profile_from_levels(levels))
}

/// Parameter depth from a break profile: the highest upper break
/// (-1 for the unramified quadratic extension).
pub fn depth_from_profile(profile: &BreakProfile) -> Rational {
    let t = *profile.upper_breaks().last().expect("nonempty");
    Rational::from_integer(t)
}

/// Convert upper breaks to lower numbering via the Hasse-Herbrand function
/// `psi` (the piecewise-linear inverse of `phi(u) = int_0^u |G_w|/|G_0| dw`).
///
/// Returns `(lower break b, |G_b|)` pairs, ascending, one per jump of the
/// lower filtration; a pair at -1 records the unramified quotient when the
/// inertia subgroup is proper.
pub fn upper_to_lower(profile: &BreakProfile) -> Vec<(i64, u64)> {
    match *profile {
        BreakProfile::QuadUnramified => vec![(-1, 2)],
        BreakProfile::QuadRamified { t } => vec![(t, 2)],
        BreakProfile::Case1 { t } => vec![(-1, 4), (t, 2)],
        BreakProfile::Case21 { t } => vec![(t, 4)],
        // psi has slope 1 up to t1 and slope [G^0 : G^(t1+)] = 2 beyond, so
        // the second break lands at t1 + 2 (t2 - t1).
        BreakProfile::Case22 { t1, t2 } => vec![(t1, 4), (2 * t2 - t1, 2)],
    }
}

/// Coordinates of a class inside V_t: bit 0 is the unramified line, bit
/// `1 + n f + (j-1)` the wild generator `(n, j)` with `2n+1 <= t`.
pub fn rep_to_coords(rep: &CosetRep, max_break: i64) -> Result<u64> {
    let f = rep.basis().len() as u64;
    let mut bits = if rep.unram_bit() { 1u64 } else { 0 };
    for (n, j) in rep.wild_support() {
        let lvl = 2 * n as i64 + 1;
        if lvl > max_break {
            return Err(Error::PreconditionViolated(format!(
                "class of level {lvl} does not lie in V_{max_break}"
            )));
        }
        bits |= 1 << (1 + n as u64 * f + (j as u64 - 1));
    }
    Ok(bits)
}

/// Inverse of [`rep_to_coords`].
pub fn coords_to_rep(basis: &TraceBasis, bits: u64) -> Result<CosetRep> {
    let f = basis.len() as u64;
    let unram = bits & 1 == 1;
    let mut wild = Vec::new();
    let mut rest = bits >> 1;
    let mut idx = 0u64;
    while rest != 0 {
        if rest & 1 == 1 {
            let n = (idx / f) as u32;
            let j = (idx % f) as u32 + 1;
            wild.push((n, j));
        }
        rest >>= 1;
        idx += 1;
    }
    CosetRep::from_parts(basis, unram, wild)
}

fn level_of_coords(bits: u64, f: u64) -> i64 {
    debug_assert!(bits != 0);
    let top = 63 - bits.leading_zeros() as u64;
    if top == 0 {
        0
    } else {
        2 * ((top - 1) / f) as i64 + 1
    }
}

fn ambient_dim_checked(max_break: i64, f: u32) -> Result<u64> {
    if max_break < 0 {
        return Err(Error::PreconditionViolated(format!(
            "max_break must be >= 0, got {max_break}"
        )));
    }
    let dim = coset_space_dim(max_break as u64, f);
    if dim > ENUM_DIM_CAP {
        return Err(Error::InfeasibleEnumeration {
            dim,
            cap: ENUM_DIM_CAP,
        });
    }
    Ok(dim)
}

/// All quadratic extensions with break at most `max_break`: one line per
/// nonzero class of V_max_break, in coordinate order.
pub fn enumerate_quadratic(
    basis: &TraceBasis,
    max_break: i64,
) -> Result<Vec<(ExtLine, BreakProfile)>> {
    let dim = ambient_dim_checked(max_break, basis.field().f())?;
    let mut out = Vec::new();
    for v in 1..(1u64 << dim) {
        let line = ExtLine::new(coords_to_rep(basis, v)?)?;
        let profile = quad_breaks(&line)?;
        out.push((line, profile));
    }
    Ok(out)
}

/// All biquadratic extensions with highest break at most `max_break`: one
/// plane per 2-dimensional subspace of V_max_break. Planes are canonicalized
/// by the reduced row-echelon form of their coordinate vectors.
pub fn enumerate_biquadratic(
    basis: &TraceBasis,
    max_break: i64,
) -> Result<Vec<(ExtPlane, BreakProfile)>> {
    let dim = ambient_dim_checked(max_break, basis.field().f())?;
    let f = basis.len() as u64;
    let mut out = Vec::new();
    for a in 1..(1u64 << dim) {
        for b in (a + 1)..(1u64 << dim) {
            // Keep exactly one ordered pair per plane: (a, b) with a the
            // smallest and b the second-smallest nonzero element.
            if (a ^ b) < b {
                continue;
            }
            let rows = f2linalg::rref(&[a, b]);
            debug_assert_eq!(rows.len(), 2);
            let plane = ExtPlane::new(
                coords_to_rep(basis, rows[0])?,
                coords_to_rep(basis, rows[1])?,
            )?;
            let profile =
                profile_from_levels([level_of_coords(a, f), level_of_coords(b, f), level_of_coords(a ^ b, f)]);
            out.push((plane, profile));
        }
    }
    Ok(out)
}

/// Closed-form count of Case 1 planes with breaks (-1, t):
/// `2^(dim V_t - 1) - 2^(dim V_(t-1) - 1)`, i.e. the number of classes of
/// level exactly t modulo the unramified line. Validated against the
/// enumerator (see tests); at t = 1 it is q - 1.
pub fn case1_closed_form(t: i64, f: u32) -> Result<u64> {
    check_odd_positive(t)?;
    let d_t = coset_space_dim(t as u64, f);
    let d_prev = coset_space_dim(t as u64 - 1, f);
    Ok((1u64 << (d_t - 1)) - (1u64 << (d_prev - 1)))
}

/// Exact number of planes realizing the given biquadratic profile.
///
/// Case 1 has a validated closed form, used directly when the ambient space
/// is too large to enumerate. Cases 2.1 and 2.2 are counted by enumeration
/// only and report [`Error::InfeasibleEnumeration`] beyond the cap.
pub fn count_biquadratic(profile: &BreakProfile, basis: &TraceBasis) -> Result<u64> {
    profile.validate()?;
    if !profile.is_biquadratic() {
        return Err(Error::PreconditionViolated(format!(
            "count_biquadratic needs a biquadratic profile, got {}",
            profile.case_name()
        )));
    }
    let f = basis.field().f();
    let t_max = *profile.upper_breaks().last().expect("nonempty");
    match ambient_dim_checked(t_max, f) {
        Ok(_) => {
            let count = enumerate_biquadratic(basis, t_max)?
                .into_iter()
                .filter(|(_, p)| p == profile)
                .count() as u64;
            if let BreakProfile::Case1 { t } = *profile {
                debug_assert_eq!(count, case1_closed_form(t, f)?);
            }
            Ok(count)
        }
        Err(infeasible) => match *profile {
            BreakProfile::Case1 { t } => case1_closed_form(t, f),
            _ => Err(infeasible),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2e::Field;
    use num_traits::One;

    fn setup(f: u32) -> TraceBasis {
        let field = Field::with_default_modulus(f).unwrap();
        TraceBasis::power_basis(&field)
    }

    fn gen(basis: &TraceBasis, n: u32, j: u32) -> CosetRep {
        CosetRep::generator(basis, n, j).unwrap()
    }

    #[test]
    fn level_examples() {
        let basis = setup(2);
        assert_eq!(level(&gen(&basis, 2, 1)).unwrap(), 5);
        assert_eq!(level(&CosetRep::unramified(&basis)).unwrap(), 0);
        let mixed = gen(&basis, 0, 1).add(&CosetRep::unramified(&basis)).unwrap();
        assert_eq!(level(&mixed).unwrap(), 1);
        assert_eq!(level(&CosetRep::zero(&basis)).err(), Some(Error::ZeroCoset));
    }

    #[test]
    fn quad_break_shapes() {
        let basis = setup(2);
        let unram = ExtLine::new(CosetRep::unramified(&basis)).unwrap();
        assert_eq!(quad_breaks(&unram).unwrap(), BreakProfile::QuadUnramified);
        let ram = ExtLine::new(gen(&basis, 1, 2)).unwrap();
        assert_eq!(quad_breaks(&ram).unwrap(), BreakProfile::QuadRamified { t: 3 });
        let mixed = ExtLine::new(
            gen(&basis, 0, 1).add(&CosetRep::unramified(&basis)).unwrap(),
        )
        .unwrap();
        assert_eq!(quad_breaks(&mixed).unwrap(), BreakProfile::QuadRamified { t: 1 });
    }

    #[test]
    fn biquad_profile_examples() {
        let basis = setup(2);
        // <b0, (n,j)> is Case 1.
        let p = ExtPlane::new(CosetRep::unramified(&basis), gen(&basis, 1, 1)).unwrap();
        assert_eq!(biquad_profile(&p).unwrap(), BreakProfile::Case1 { t: 3 });
        // f = 2: <(0,1), (0,2)> has all three classes of level 1.
        let p = ExtPlane::new(gen(&basis, 0, 1), gen(&basis, 0, 2)).unwrap();
        assert_eq!(biquad_profile(&p).unwrap(), BreakProfile::Case21 { t: 1 });
        // <(0,1), (1,1)> has levels {1, 3, 3}.
        let p = ExtPlane::new(gen(&basis, 0, 1), gen(&basis, 1, 1)).unwrap();
        assert_eq!(
            biquad_profile(&p).unwrap(),
            BreakProfile::Case22 { t1: 1, t2: 3 }
        );
    }

    #[test]
    fn biquad_profile_is_basis_independent() {
        let basis = setup(2);
        let a = gen(&basis, 0, 1);
        let b = gen(&basis, 1, 1).add(&CosetRep::unramified(&basis)).unwrap();
        let c = a.add(&b).unwrap();
        let expected = biquad_profile(&ExtPlane::new(a.clone(), b.clone()).unwrap()).unwrap();
        for (x, y) in [
            (a.clone(), b.clone()),
            (b.clone(), a.clone()),
            (a.clone(), c.clone()),
            (c.clone(), a.clone()),
            (b.clone(), c.clone()),
            (c, b),
        ] {
            let p = ExtPlane::new(x, y).unwrap();
            assert_eq!(biquad_profile(&p).unwrap(), expected);
        }
    }

    #[test]
    fn depth_is_highest_break() {
        assert_eq!(
            depth_from_profile(&BreakProfile::Case22 { t1: 3, t2: 7 }),
            Rational::from_integer(7)
        );
        assert_eq!(
            depth_from_profile(&BreakProfile::Case1 { t: 5 }),
            Rational::from_integer(5)
        );
        assert_eq!(
            depth_from_profile(&BreakProfile::QuadUnramified),
            -Rational::one()
        );
    }

    #[test]
    fn lower_numbering_conversion() {
        assert_eq!(
            upper_to_lower(&BreakProfile::Case21 { t: 5 }),
            vec![(5, 4)]
        );
        assert_eq!(
            upper_to_lower(&BreakProfile::Case22 { t1: 1, t2: 3 }),
            vec![(1, 4), (5, 2)]
        );
        assert_eq!(
            upper_to_lower(&BreakProfile::QuadRamified { t: 3 }),
            vec![(3, 2)]
        );
        assert_eq!(
            upper_to_lower(&BreakProfile::Case1 { t: 3 }),
            vec![(-1, 4), (3, 2)]
        );
    }

    /// Piecewise-exact evaluation of psi(u) = int_0^u [G^0 : G^w] dw on a
    /// fine rational grid; the oracle for `upper_to_lower`.
    fn psi_oracle(profile: &BreakProfile, u: Rational) -> Rational {
        // |G^w| for w > 0, piecewise constant between upper breaks.
        let order_above = |w: Rational| -> i64 {
            let breaks = profile.upper_breaks();
            let g0: i64 = match profile {
                BreakProfile::QuadUnramified => 1,
                BreakProfile::QuadRamified { .. } => 2,
                BreakProfile::Case1 { .. } => 2,
                BreakProfile::Case21 { .. } | BreakProfile::Case22 { .. } => 4,
            };
            let mut order = g0;
            for b in breaks {
                if b >= 0 && Rational::from_integer(b) < w {
                    order /= 2;
                }
            }
            order.max(1)
        };
        let g0 = order_above(Rational::new(1, 1000));
        let steps = 64 * (u.ceil().to_integer().max(1));
        let h = u / Rational::from_integer(steps);
        let mut acc = Rational::from_integer(0);
        for k in 0..steps {
            let mid = h * Rational::from_integer(k) + h / Rational::from_integer(2);
            acc += h * Rational::from_integer(g0 / order_above(mid));
        }
        acc
    }

    #[test]
    fn lower_breaks_match_psi_integral() {
        let profiles = [
            BreakProfile::QuadRamified { t: 5 },
            BreakProfile::Case1 { t: 7 },
            BreakProfile::Case21 { t: 3 },
            BreakProfile::Case22 { t1: 1, t2: 3 },
            BreakProfile::Case22 { t1: 3, t2: 9 },
        ];
        for profile in profiles {
            let lower = upper_to_lower(&profile);
            for (upper, (expected_lower, _)) in profile
                .upper_breaks()
                .into_iter()
                .filter(|b| *b >= 0)
                .zip(lower.into_iter().filter(|(b, _)| *b >= 0))
            {
                let psi = psi_oracle(&profile, Rational::from_integer(upper));
                assert_eq!(
                    psi,
                    Rational::from_integer(expected_lower),
                    "profile {profile:?} upper break {upper}"
                );
            }
        }
    }

    #[test]
    fn enumerate_quadratic_small() {
        // V_1 over F_2 has dimension 2: three lines, with depths -1, 1, 1.
        let basis = setup(1);
        let lines = enumerate_quadratic(&basis, 1).unwrap();
        assert_eq!(lines.len(), 3);
        let mut depths: Vec<i64> = lines
            .iter()
            .map(|(_, p)| depth_from_profile(p).to_integer())
            .collect();
        depths.sort_unstable();
        assert_eq!(depths, vec![-1, 1, 1]);
    }

    #[test]
    fn enumerate_biquadratic_small() {
        // f = 1: V_1 is 2-dimensional, with exactly one plane (V_1 itself).
        let basis = setup(1);
        let planes = enumerate_biquadratic(&basis, 1).unwrap();
        assert_eq!(planes.len(), 1);
        assert_eq!(planes[0].1, BreakProfile::Case1 { t: 1 });

        // f = 2: V_1 is 3-dimensional: 7 planes, 3 of Case 1 and 4 of
        // Case 2.1.
        let basis = setup(2);
        let planes = enumerate_biquadratic(&basis, 1).unwrap();
        assert_eq!(planes.len(), 7);
        let case1 = planes
            .iter()
            .filter(|(_, p)| matches!(p, BreakProfile::Case1 { .. }))
            .count();
        let case21 = planes
            .iter()
            .filter(|(_, p)| matches!(p, BreakProfile::Case21 { .. }))
            .count();
        assert_eq!((case1, case21), (3, 4));
    }

    #[test]
    fn counting_examples() {
        // Breaks (-1, 1): q - 1 planes.
        for f in 1..=3u32 {
            let basis = setup(f);
            let q = basis.field().q();
            assert_eq!(
                count_biquadratic(&BreakProfile::Case1 { t: 1 }, &basis).unwrap(),
                q - 1
            );
        }
        // Case 2.1 does not occur over F_2.
        let basis = setup(1);
        for t in [1, 3, 5] {
            assert_eq!(
                count_biquadratic(&BreakProfile::Case21 { t }, &basis).unwrap(),
                0
            );
        }
        // Breaks (-1, 3) over F_2: the closed form gives 4 - 2 = 2.
        assert_eq!(case1_closed_form(3, 1).unwrap(), 2);
        assert_eq!(
            count_biquadratic(&BreakProfile::Case1 { t: 3 }, &basis).unwrap(),
            2
        );
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for f in 1..=2u32 {
            let basis = setup(f);
            for t in [1i64, 3, 5] {
                let enumerated = enumerate_biquadratic(&basis, t)
                    .unwrap()
                    .into_iter()
                    .filter(|(_, p)| *p == BreakProfile::Case1 { t })
                    .count() as u64;
                assert_eq!(enumerated, case1_closed_form(t, f).unwrap(), "f={f} t={t}");
            }
        }
    }

    #[test]
    fn plane_partition_is_exhaustive() {
        // Every plane in V_t is Case 1, 2.1 or 2.2, and the per-case counts
        // sum to the total number of planes.
        let basis = setup(2);
        let t = 3;
        let planes = enumerate_biquadratic(&basis, t).unwrap();
        let dim = coset_space_dim(t as u64, 2) as u32;
        let n = 1u64 << dim;
        let total = (n - 1) * (n - 2) / 6; // planes in an F_2-space
        assert_eq!(planes.len() as u64, total);
        let sum: usize = [
            planes.iter().filter(|(_, p)| matches!(p, BreakProfile::Case1 { .. })).count(),
            planes.iter().filter(|(_, p)| matches!(p, BreakProfile::Case21 { .. })).count(),
            planes.iter().filter(|(_, p)| matches!(p, BreakProfile::Case22 { .. })).count(),
        ]
        .into_iter()
        .sum();
        assert_eq!(sum, planes.len());
    }

    #[test]
    fn case22_level_multiset_shape() {
        // A Case 2.2 plane always realizes levels {t1, t2, t2}.
        let basis = setup(2);
        for (plane, profile) in enumerate_biquadratic(&basis, 3).unwrap() {
            if let BreakProfile::Case22 { t1, t2 } = profile {
                let mut levels: Vec<i64> = plane
                    .nonzero_elements()
                    .unwrap()
                    .iter()
                    .map(|r| level(r).unwrap())
                    .collect();
                levels.sort_unstable();
                assert_eq!(levels, vec![t1, t2, t2]);
            }
        }
    }

    #[test]
    fn all_positive_breaks_are_odd() {
        let basis = setup(2);
        for (_, profile) in enumerate_quadratic(&basis, 5).unwrap() {
            assert!(profile.validate().is_ok());
        }
        for (_, profile) in enumerate_biquadratic(&basis, 3).unwrap() {
            assert!(profile.validate().is_ok());
        }
    }

    #[test]
    fn enumeration_cap() {
        let basis = setup(3);
        // dim V_13 = 1 + 7*3 = 22 > 20.
        assert!(matches!(
            enumerate_quadratic(&basis, 13),
            Err(Error::InfeasibleEnumeration { dim: 22, cap: 20 })
        ));
        // Case 1 still answers through the closed form...
        let big = count_biquadratic(&BreakProfile::Case1 { t: 13 }, &basis).unwrap();
        assert_eq!(big, case1_closed_form(13, 3).unwrap());
        // ...but Case 2.2 cannot.
        assert!(matches!(
            count_biquadratic(&BreakProfile::Case22 { t1: 1, t2: 13 }, &basis),
            Err(Error::InfeasibleEnumeration { .. })
        ));
    }

    #[test]
    fn coords_roundtrip() {
        let basis = setup(2);
        for bits in 1..(1u64 << coset_space_dim(3, 2)) {
            let rep = coords_to_rep(&basis, bits).unwrap();
            assert_eq!(rep_to_coords(&rep, 3).unwrap(), bits);
            assert_eq!(level(&rep).unwrap(), level_of_coords(bits, 2));
        }
    }
}
