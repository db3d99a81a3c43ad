//! Artin conductors and depths of two-dimensional parameters and their
//! projective images, from ramification filtration data.
//!
//! The conductor of a representation V with lower-numbering ramification
//! subgroup orders `g_0 >= g_1 >= ...` is
//!
//! ```text
//! a(V) = (1/g_0) * sum_j g_j * dim(V / V^(G_j))
//! ```
//!
//! and the depth is `a(V)/dim V - 1` (or 0 when inertia acts trivially).
//! For an irreducible V the fixed spaces vanish wherever `g_j > 1`, which is
//! the default here; callers may override for reducible V.
//!
//! The closed-form depth pairs (projective image, minimal lift) are:
//!
//! * octahedral, and tetrahedral with totally ramified cubic subfield:
//!   `(r/3, (5r+1)/12)` for `r ≡ 1 (mod 6)`;
//! * tetrahedral with unramified cubic subfield: `(r, (5r+1)/4)` for odd r;
//! * induced from a ramified quadratic extension:
//!   `((d(xi^2) + d(L/K))/2, (d(xi) + d(L/K))/2)`.
//!
//! Every pair satisfies the strict inequality lift > projective image.
//! All values are exact rationals.

use num_rational::Ratio;
use num_traits::Zero;

use crate::artin_schreier::QuadChar;
use crate::error::{Error, Result};
use crate::ramification::ExtLine;
use crate::Rational;

/// Orders of the lower-numbering ramification subgroups plus the data needed
/// for the conductor sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationData {
    /// `g[j]` is the order of the j-th ramification subgroup; implicitly 1
    /// beyond the stored prefix.
    g: Vec<u64>,
    dim_v: u64,
    /// `dim V^(G_j)` per index; when absent, defaults to 0 where `g_j > 1`
    /// and to `dim_v` where `g_j = 1` (the irreducible case).
    fixed_dims: Option<Vec<u64>>,
    inertia_in_kernel: bool,
}

impl FiltrationData {
    pub fn new(g: Vec<u64>, dim_v: u64) -> Result<FiltrationData> {
        if dim_v == 0 {
            return Err(Error::PreconditionViolated("dim V must be positive".into()));
        }
        if g.is_empty() || g[0] == 0 {
            return Err(Error::PreconditionViolated(
                "the filtration needs g_0 >= 1".into(),
            ));
        }
        if g.windows(2).any(|w| w[0] < w[1]) || *g.last().unwrap() == 0 {
            return Err(Error::PreconditionViolated(
                "subgroup orders must be nonincreasing and positive".into(),
            ));
        }
        Ok(FiltrationData {
            g,
            dim_v,
            fixed_dims: None,
            inertia_in_kernel: false,
        })
    }

    /// Override the fixed-space dimensions (for reducible V).
    pub fn with_fixed_dims(mut self, fixed: Vec<u64>) -> Result<FiltrationData> {
        if fixed.len() != self.g.len() || fixed.iter().any(|&d| d > self.dim_v) {
            return Err(Error::PreconditionViolated(
                "fixed_dims must match the filtration length and stay within dim V".into(),
            ));
        }
        self.fixed_dims = Some(fixed);
        Ok(self)
    }

    pub fn with_inertia_in_kernel(mut self, flag: bool) -> FiltrationData {
        self.inertia_in_kernel = flag;
        self
    }

    pub fn orders(&self) -> &[u64] {
        &self.g
    }

    pub fn dim_v(&self) -> u64 {
        self.dim_v
    }

    fn fixed_dim(&self, j: usize) -> u64 {
        match &self.fixed_dims {
            Some(f) => f[j],
            None => {
                if self.g[j] > 1 {
                    0
                } else {
                    self.dim_v
                }
            }
        }
    }
}

/// Conductor value plus an integrality flag: the conductor of an actual
/// representation is a nonnegative integer, so a fractional value means the
/// input filtration cannot occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conductor {
    pub value: Rational,
    pub integrality_warning: bool,
}

/// The conductor sum `(1/g_0) sum_j g_j (dim V - dim V^(G_j))`.
pub fn artin_conductor(fd: &FiltrationData) -> Conductor {
    let mut sum = Ratio::zero();
    for (j, &gj) in fd.g.iter().enumerate() {
        let codim = fd.dim_v - fd.fixed_dim(j);
        sum += Ratio::from_integer((gj * codim) as i64);
    }
    let value = sum / Ratio::from_integer(fd.g[0] as i64);
    let integrality_warning = !value.is_integer() || value < Ratio::zero();
    Conductor {
        value,
        integrality_warning,
    }
}

/// Tag recording which route produced a depth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthFormula {
    InertiaInKernel,
    ConductorQuotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthReport {
    pub conductor: Rational,
    pub depth: Rational,
    pub formula: DepthFormula,
    pub integrality_warning: bool,
}

/// Depth from filtration data: 0 when inertia lies in the kernel, otherwise
/// `a(V)/dim V - 1`.
pub fn depth_from_filtration(fd: &FiltrationData) -> DepthReport {
    let conductor = artin_conductor(fd);
    if fd.inertia_in_kernel {
        DepthReport {
            conductor: conductor.value,
            depth: Ratio::zero(),
            formula: DepthFormula::InertiaInKernel,
            integrality_warning: conductor.integrality_warning,
        }
    } else {
        DepthReport {
            conductor: conductor.value,
            depth: conductor.value / Ratio::from_integer(fd.dim_v as i64) - Ratio::from_integer(1),
            formula: DepthFormula::ConductorQuotient,
            integrality_warning: conductor.integrality_warning,
        }
    }
}

fn validate_r(r: i64, require_mod6: bool) -> Result<()> {
    if r <= 0 {
        return Err(Error::InvalidRamificationDepth {
            r,
            reason: "the ramification depth must be positive",
        });
    }
    if r % 2 == 0 {
        return Err(Error::InvalidRamificationDepth {
            r,
            reason: "wild breaks occur at odd integers",
        });
    }
    if require_mod6 && r % 6 != 1 {
        return Err(Error::InvalidRamificationDepth {
            r,
            reason: "conductor integrality forces r = 1 (mod 6)",
        });
    }
    Ok(())
}

/// The filtration orders behind the primitive depth computations, as
/// (projective-image data, lift data).
///
/// The projective image acts through its 3-dimensional adjoint
/// representation; the lift is 2-dimensional and its central element is
/// taken to have depth exactly `2r+1`, so the lift orders run
/// `g_(r+1) = ... = g_(2r+1) = 2` and then 1.
fn primitive_filtrations(
    r: i64,
    tame_order: u64, // 3 when the cubic subfield ramifies, 1 when unramified
) -> (FiltrationData, FiltrationData) {
    let r = r as usize;
    // Projective side: inertia image has order 4 * tame_order.
    let mut g_proj = vec![4 * tame_order];
    g_proj.extend(std::iter::repeat(4).take(r));
    let proj = FiltrationData::new(g_proj, 3).expect("valid by construction");
    // Lift: the double cover, with the extra central tail of order 2.
    let mut g_lift = vec![8 * tame_order];
    g_lift.extend(std::iter::repeat(8).take(r));
    g_lift.extend(std::iter::repeat(2).take(r + 1));
    let lift = FiltrationData::new(g_lift, 2).expect("valid by construction");
    (proj, lift)
}

/// Octahedral filtration data; for the totally ramified cases the residue
/// extension contributes the tame factor 3, giving `g_0 = 12` resp. 24.
pub fn octahedral_filtrations(r: i64) -> Result<(FiltrationData, FiltrationData)> {
    validate_r(r, true)?;
    Ok(primitive_filtrations(r, 3))
}

/// Depth pair `(projective, lift) = (r/3, (5r+1)/12)` for octahedral
/// parameters; defined for positive `r ≡ 1 (mod 6)`.
pub fn octahedral_depths(r: i64) -> Result<(Rational, Rational)> {
    validate_r(r, true)?;
    Ok((Ratio::new(r, 3), Ratio::new(5 * r + 1, 12)))
}

pub fn tetrahedral_filtrations(
    r: i64,
    l_unramified: bool,
) -> Result<(FiltrationData, FiltrationData)> {
    validate_r(r, !l_unramified)?;
    Ok(if l_unramified {
        primitive_filtrations(r, 1)
    } else {
        primitive_filtrations(r, 3)
    })
}

/// Depth pair for tetrahedral parameters. With a totally ramified cubic
/// subfield the numbers coincide with the octahedral case, `(r/3,
/// (5r+1)/12)`; with an unramified one they are `(r, (5r+1)/4)` for odd r.
pub fn tetrahedral_depths(r: i64, l_unramified: bool) -> Result<(Rational, Rational)> {
    validate_r(r, !l_unramified)?;
    Ok(if l_unramified {
        (Ratio::from_integer(r), Ratio::new(5 * r + 1, 4))
    } else {
        (Ratio::new(r, 3), Ratio::new(5 * r + 1, 12))
    })
}

/// Depth pair for a parameter induced from a character `xi` of a ramified
/// quadratic extension with discriminant exponent `1 + d_lk`:
/// `((d(xi^2) + d(L/K))/2, (d(xi) + d(L/K))/2)`.
///
/// A minimal totally ramified lift forces `d(xi) > d(L/K)` and squaring
/// drops the depth, `d(xi^2) < d(xi)`; both are enforced.
pub fn imprimitive_depths(d_xi: u64, d_xi_sq: u64, d_lk: u64) -> Result<(Rational, Rational)> {
    if d_xi == 0 || d_lk == 0 {
        return Err(Error::PreconditionViolated(
            "d(xi) and d(L/K) must be positive".into(),
        ));
    }
    if d_xi <= d_lk {
        return Err(Error::PreconditionViolated(format!(
            "minimal lift requires d(xi) > d(L/K), got d(xi) = {d_xi} <= d(L/K) = {d_lk}"
        )));
    }
    if d_xi_sq >= d_xi {
        return Err(Error::PreconditionViolated(format!(
            "squaring drops the depth: need d(xi^2) < d(xi), got d(xi^2) = {d_xi_sq} >= d(xi) = {d_xi}"
        )));
    }
    Ok((
        Ratio::new((d_xi_sq + d_lk) as i64, 2),
        Ratio::new((d_xi + d_lk) as i64, 2),
    ))
}

/// Depth of the principal-series parameter attached to a quadratic
/// extension line: the level of the associated quadratic character, i.e.
/// `2n+1` for the line through `u_j t^-(2n+1)` and -1 for the unramified
/// line.
pub fn ps_parameter_depth(line: &ExtLine) -> Rational {
    let chi = QuadChar::new(line.generator().clone()).expect("line generator is nonzero");
    Ratio::from_integer(chi.level())
}
