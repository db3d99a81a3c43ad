//! Named, seeded self-check suites behind the `verify` CLI command.
//!
//! Every suite reruns one of the crate's mathematical identities on a seeded
//! sample and reports the number of checks plus any failures. All comparisons
//! are exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin_schreier::{
    coset_space_dim, pairing, reduce_coset, wp, CosetRep, QuadChar,
};
use crate::depth::{
    depth_from_filtration, imprimitive_depths, octahedral_depths, octahedral_filtrations,
    ps_parameter_depth, tetrahedral_depths, tetrahedral_filtrations,
};
use crate::error::{Error, Result};
use crate::f2linalg;
use crate::gf2e::{Field, FqElem, TraceBasis};
use crate::laurent::LaurentSeries;
use crate::packets::{classify, ParamDescriptor, PsCharacter};
use crate::ramification::{
    case1_closed_form, depth_from_profile, enumerate_biquadratic, quad_breaks, rep_to_coords,
    BreakProfile, ExtLine,
};

/// Outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    checks: u64,
    failures: Vec<String>,
}

impl Ctx {
    fn new(seed: u64) -> Ctx {
        Ctx {
            rng: ChaCha8Rng::seed_from_u64(seed),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 16 {
            self.failures.push(detail());
        }
    }
}

/// A random nonzero series with valuation in [-4, 4] and the given number of
/// determined coefficients.
pub fn random_series(rng: &mut ChaCha8Rng, field: &Field, rel_prec: usize) -> LaurentSeries {
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

/// A random exact polynomial with exponents in [-max_pole, 1), nonzero,
/// suitable as the right argument of the symbol.
pub fn random_poly(rng: &mut ChaCha8Rng, field: &Field, max_pole: i64) -> LaurentSeries {
    loop {
        let mut terms = Vec::new();
        for e in -max_pole..1 {
            let bits = rng.random_range(0..field.q());
            terms.push((e, field.elem(bits).unwrap()));
        }
        let s = LaurentSeries::from_terms(field, &terms, Some(1)).unwrap();
        if !s.is_zero() {
            return s;
        }
    }
}

fn bases() -> Vec<TraceBasis> {
    (1..=3)
        .map(|f| TraceBasis::power_basis(&Field::with_default_modulus(f).unwrap()))
        .collect()
}

fn suite_closed_form_vs_residue(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let alpha = random_series(&mut ctx.rng, &field, 14);
            for n in 0..=5u32 {
                for j in 1..=field.f() {
                    let chi = QuadChar::generator(&basis, n, j).unwrap();
                    let beta = chi.rep().to_series(1).unwrap();
                    let closed = chi.eval(&alpha);
                    let residue = pairing(&alpha, &beta);
                    ctx.check(closed == residue, || {
                        format!(
                            "f={} chi({n},{j}) on {alpha}: closed {closed:?} vs residue {residue:?}",
                            field.f()
                        )
                    });
                }
            }
        }
    }
    SuiteReport {
        name: "closed-form-vs-residue",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_bilinearity(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let a = random_series(&mut ctx.rng, &field, 24);
            let a2 = random_series(&mut ctx.rng, &field, 24);
            let b = random_poly(&mut ctx.rng, &field, 9);
            let b2 = random_poly(&mut ctx.rng, &field, 9);
            let left = pairing(&a.mul(&a2).unwrap(), &b).unwrap();
            let split = pairing(&a, &b).unwrap() ^ pairing(&a2, &b).unwrap();
            ctx.check(left == split, || format!("mult in alpha: {a} * {a2} vs {b}"));
            let joint = pairing(&a, &b.add(&b2).unwrap()).unwrap();
            let split = pairing(&a, &b).unwrap() ^ pairing(&a, &b2).unwrap();
            ctx.check(joint == split, || format!("add in beta: {a} vs {b} + {b2}"));
        }
    }
    SuiteReport {
        name: "bilinearity",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_kernels(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let a = random_series(&mut ctx.rng, &field, 12);
            let b = random_poly(&mut ctx.rng, &field, 9);
            // Squares pair to zero on the left.
            let sq = pairing(&a.square(), &b).unwrap();
            ctx.check(!sq, || format!("square {a}^2 vs {b} gave 1"));
            // wp-images pair to zero on the right.
            let gamma = random_series(&mut ctx.rng, &field, 12).truncate(1).padded_to_prec(1);
            if !gamma.is_zero() {
                let alpha = random_series(&mut ctx.rng, &field, 26);
                let w = wp(&gamma);
                let val = pairing(&alpha, &w).unwrap();
                ctx.check(!val, || format!("wp({gamma}) vs {alpha} gave 1"));
            }
        }
    }
    SuiteReport {
        name: "kernels",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_coset_well_defined(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let alpha = random_series(&mut ctx.rng, &field, 24);
            let beta = random_poly(&mut ctx.rng, &field, 9);
            let rep = reduce_coset(&beta, &basis).unwrap();
            let canon = rep.to_series(1).unwrap();
            let direct = pairing(&alpha, &beta).unwrap();
            let reduced = pairing(&alpha, &canon).unwrap();
            ctx.check(direct == reduced, || {
                format!("({alpha}, {beta}] != ({alpha}, {}]", rep.label())
            });
        }
    }
    SuiteReport {
        name: "coset-well-defined",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_uniformizer_invariance(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let alpha = random_series(&mut ctx.rng, &field, 20);
            let beta = random_poly(&mut ctx.rng, &field, 7);
            let c = field.elem(ctx.rng.random_range(1..field.q())).unwrap();
            let lhs = pairing(&alpha, &beta).unwrap();
            let rhs = pairing(
                &alpha.rescale_uniformizer(c).unwrap(),
                &beta.rescale_uniformizer(c).unwrap(),
            )
            .unwrap();
            ctx.check(lhs == rhs, || format!("rescale by {c}: ({alpha}, {beta}]"));
        }
    }
    SuiteReport {
        name: "uniformizer-invariance",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_nondegeneracy(seed: u64) -> SuiteReport {
    // For f <= 2 and every nonzero class of level <= 5, some alpha among the
    // multiplicative generators {t} u {1 + theta t^i} detects it.
    let mut ctx = Ctx::new(seed);
    for basis in bases().into_iter().take(2) {
        let field = basis.field().clone();
        let dim = coset_space_dim(5, field.f());
        for bits in 1..(1u64 << dim) {
            let rep = crate::ramification::coords_to_rep(&basis, bits).unwrap();
            let beta = rep.to_series(1).unwrap();
            let mut candidates = vec![LaurentSeries::parse_with_min_prec(&field, "t", 9).unwrap()];
            for i in 1..=5i64 {
                for theta in field.elements().skip(1) {
                    candidates.push(
                        LaurentSeries::from_terms(
                            &field,
                            &[(0, FqElem::ONE), (i, theta)],
                            Some(9),
                        )
                        .unwrap(),
                    );
                }
            }
            let hit = candidates
                .iter()
                .any(|alpha| pairing(alpha, &beta).unwrap());
            ctx.check(hit, || format!("no alpha detects {}", rep.label()));
        }
    }
    SuiteReport {
        name: "nondegeneracy",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_dim_vn(seed: u64) -> SuiteReport {
    // Rank of the reduced classes of {theta t^-i : 0 <= i <= n} equals
    // 1 + ceil(n/2) f.
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for n in 0..=9i64 {
            let mut rows = Vec::new();
            for i in 0..=n {
                for &theta in basis.elements() {
                    let beta = LaurentSeries::monomial(&field, theta, -i, 1).unwrap();
                    let rep = reduce_coset(&beta, &basis).unwrap();
                    rows.push(rep_to_coords(&rep, n.max(1)).unwrap());
                }
            }
            let rank = f2linalg::rank(&rows) as u64;
            let expected = coset_space_dim(n as u64, field.f());
            ctx.check(rank == expected, || {
                format!("f={} n={n}: rank {rank} != {expected}", field.f())
            });
        }
    }
    SuiteReport {
        name: "dim-Vn",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_level_law(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for n in 0..=4u32 {
            let level = 2 * n as i64 + 1;
            for j in 1..=field.f() {
                let chi = QuadChar::generator(&basis, n, j).unwrap();
                let hit = field.elements().skip(1).any(|theta| {
                    let alpha = LaurentSeries::from_terms(
                        &field,
                        &[(0, FqElem::ONE), (level, theta)],
                        Some(level + 2),
                    )
                    .unwrap();
                    chi.eval(&alpha).unwrap()
                });
                ctx.check(hit, || format!("chi({n},{j}) trivial on U^{level}"));
                for _ in 0..100 {
                    let mut terms = vec![(0, FqElem::ONE)];
                    for e in (level + 1)..(level + 9) {
                        let bits = ctx.rng.random_range(0..field.q());
                        terms.push((e, field.elem(bits).unwrap()));
                    }
                    let alpha =
                        LaurentSeries::from_terms(&field, &terms, Some(level + 9)).unwrap();
                    let v = chi.eval(&alpha).unwrap();
                    ctx.check(!v, || format!("chi({n},{j}) nontrivial on U^{}", level + 1));
                }
            }
        }
    }
    SuiteReport {
        name: "level-law",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_depth_pipeline(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for r in (1..=31i64).filter(|r| r % 6 == 1) {
        let (proj_d, lift_d) = octahedral_depths(r).unwrap();
        let (proj, lift) = octahedral_filtrations(r).unwrap();
        ctx.check(depth_from_filtration(&proj).depth == proj_d, || {
            format!("octahedral adjoint depth at r={r}")
        });
        ctx.check(depth_from_filtration(&lift).depth == lift_d, || {
            format!("octahedral lift depth at r={r}")
        });
        ctx.check(!depth_from_filtration(&lift).integrality_warning, || {
            format!("octahedral conductor not integral at r={r}")
        });
    }
    for r in (1..=31i64).step_by(2) {
        let (proj_d, lift_d) = tetrahedral_depths(r, true).unwrap();
        let (proj, lift) = tetrahedral_filtrations(r, true).unwrap();
        ctx.check(depth_from_filtration(&proj).depth == proj_d, || {
            format!("tetrahedral adjoint depth at r={r}")
        });
        ctx.check(depth_from_filtration(&lift).depth == lift_d, || {
            format!("tetrahedral lift depth at r={r}")
        });
    }
    SuiteReport {
        name: "depth-pipeline",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_depth_strict_inequality(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for r in (1..=31i64).filter(|r| r % 6 == 1) {
        let (p, l) = octahedral_depths(r).unwrap();
        ctx.check(l > p, || format!("octahedral r={r}"));
        let (p, l) = tetrahedral_depths(r, false).unwrap();
        ctx.check(l > p, || format!("tetrahedral ramified r={r}"));
    }
    for r in (1..=31i64).step_by(2) {
        let (p, l) = tetrahedral_depths(r, true).unwrap();
        ctx.check(l > p, || format!("tetrahedral unramified r={r}"));
    }
    for d_lk in 1..=5u64 {
        for d_xi in (d_lk + 1)..=9 {
            for d_xi_sq in 0..d_xi {
                let (p, l) = imprimitive_depths(d_xi, d_xi_sq, d_lk).unwrap();
                ctx.check(l > p, || format!("imprimitive ({d_xi},{d_xi_sq},{d_lk})"));
            }
        }
    }
    SuiteReport {
        name: "depth-strict-inequality",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_counting(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let q = basis.field().q();
        let count = crate::ramification::count_biquadratic(&BreakProfile::Case1 { t: 1 }, &basis)
            .unwrap();
        ctx.check(count == q - 1, || {
            format!("breaks (-1,1) count {count} != q-1 = {}", q - 1)
        });
    }
    let f1 = &bases()[0];
    for t in [1i64, 3, 5] {
        let c =
            crate::ramification::count_biquadratic(&BreakProfile::Case21 { t }, f1).unwrap();
        ctx.check(c == 0, || format!("Case 2.1 over F_2 at t={t} gave {c}"));
    }
    for basis in bases().into_iter().take(2) {
        let f = basis.field().f();
        for t in [1i64, 3, 5] {
            let enumerated = enumerate_biquadratic(&basis, t)
                .unwrap()
                .into_iter()
                .filter(|(_, p)| *p == BreakProfile::Case1 { t })
                .count() as u64;
            let closed = case1_closed_form(t, f).unwrap();
            ctx.check(enumerated == closed, || {
                format!("f={f} t={t}: enumeration {enumerated} vs closed form {closed}")
            });
        }
    }
    SuiteReport {
        name: "counting",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_roundtrip(seed: u64, samples: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        let field = basis.field().clone();
        for _ in 0..samples {
            let a = random_series(&mut ctx.rng, &field, 12);
            let back = a.product_expansion().unwrap().to_series().unwrap();
            ctx.check(back == a, || format!("roundtrip of {a} gave {back}"));
        }
    }
    SuiteReport {
        name: "roundtrip",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_ps_depth(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    for basis in bases() {
        for n in 0..=8u32 {
            for j in 1..=basis.field().f() {
                let line = ExtLine::new(CosetRep::generator(&basis, n, j).unwrap()).unwrap();
                let d = ps_parameter_depth(&line);
                let via_breaks = depth_from_profile(&quad_breaks(&line).unwrap());
                ctx.check(
                    d == crate::Rational::from_integer(2 * n as i64 + 1) && d == via_breaks,
                    || format!("ps depth at (n,j)=({n},{j})"),
                );
            }
        }
        let unram = ExtLine::new(CosetRep::unramified(&basis)).unwrap();
        ctx.check(
            ps_parameter_depth(&unram) == crate::Rational::from_integer(-1),
            || "unramified line depth".into(),
        );
    }
    SuiteReport {
        name: "ps-depth",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

fn suite_packet_arithmetic(seed: u64) -> SuiteReport {
    let mut ctx = Ctx::new(seed);
    let basis = TraceBasis::power_basis(&Field::with_default_modulus(2).unwrap());
    let plane = crate::ramification::ExtPlane::new(
        CosetRep::unramified(&basis),
        CosetRep::generator(&basis, 0, 1).unwrap(),
    )
    .unwrap();
    let line = ExtLine::new(CosetRep::generator(&basis, 1, 1).unwrap()).unwrap();
    let descriptors = vec![
        ParamDescriptor::Octahedral { r: 7 },
        ParamDescriptor::Tetrahedral { r: 3, l_unramified: true },
        ParamDescriptor::Steinberg,
        ParamDescriptor::SimplyImprimitive { d_xi: 3, d_xi_sq: 1, d_lk: 1 },
        ParamDescriptor::TriplyImprimitive { plane },
        ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(line)),
        ParamDescriptor::PrincipalSeries(PsCharacter::Trivial),
    ];
    let expected_cards = [(1, 1), (1, 1), (1, 1), (2, 2), (4, 1), (2, 0), (1, 0)];
    for (desc, cards) in descriptors.iter().zip(expected_cards) {
        let info = classify(desc).unwrap();
        ctx.check(
            (info.card_sl2k, info.card_sl1d) == cards,
            || format!("{} cards", desc.label()),
        );
        ctx.check(info.torsion_order == info.s_phi_order, || {
            format!("{} torsion identity", desc.label())
        });
        ctx.check(
            info.script_s_order == info.z_phi_order * info.s_phi_order,
            || format!("{} exact sequence", desc.label()),
        );
        if info.relevant_sl1d {
            ctx.check(
                info.card_sl2k + info.card_sl1d == info.script_s_irreducible_count(),
                || format!("{} irreducible count", desc.label()),
            );
        }
    }
    SuiteReport {
        name: "packet-arithmetic",
        checks: ctx.checks,
        failures: ctx.failures,
    }
}

/// All suite names, in the order `run_all` executes them.
pub fn suite_names() -> &'static [&'static str] {
    &[
        "closed-form-vs-residue",
        "bilinearity",
        "kernels",
        "coset-well-defined",
        "uniformizer-invariance",
        "nondegeneracy",
        "dim-Vn",
        "level-law",
        "depth-pipeline",
        "depth-strict-inequality",
        "counting",
        "roundtrip",
        "ps-depth",
        "packet-arithmetic",
    ]
}

/// Run one suite by name with the given seed.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    Ok(match name {
        "closed-form-vs-residue" => suite_closed_form_vs_residue(seed, 1000),
        "bilinearity" => suite_bilinearity(seed, 600),
        "kernels" => suite_kernels(seed, 600),
        "coset-well-defined" => suite_coset_well_defined(seed, 400),
        "uniformizer-invariance" => suite_uniformizer_invariance(seed, 300),
        "nondegeneracy" => suite_nondegeneracy(seed),
        "dim-Vn" => suite_dim_vn(seed),
        "level-law" => suite_level_law(seed),
        "depth-pipeline" => suite_depth_pipeline(seed),
        "depth-strict-inequality" => suite_depth_strict_inequality(seed),
        "counting" => suite_counting(seed),
        "roundtrip" => suite_roundtrip(seed, 400),
        "ps-depth" => suite_ps_depth(seed),
        "packet-arithmetic" => suite_packet_arithmetic(seed),
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; known: {}",
                suite_names().join(", ")
            )))
        }
    })
}

/// Run every suite.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    suite_names()
        .iter()
        .map(|name| run_suite(name, seed).expect("known name"))
        .collect()
}
