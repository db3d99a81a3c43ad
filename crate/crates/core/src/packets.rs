//! L-packet bookkeeping: torsion group order, component groups, packet
//! cardinalities for SL_2(K) and SL_1(D), relevance and depth, derived from a
//! combinatorial parameter descriptor.
//!
//! The derivation rests on three identities: the torsion group of a minimal
//! lift matches the component group of the PGL_2 centralizer; the SL_2
//! component group sits in a short exact sequence over it with kernel of
//! order 2 exactly when the parameter is relevant for the inner form; and
//! packet elements biject with irreducible representations of the component
//! groups, so the two packet sizes add up to the irreducible count of the
//! SL_2 component group.

use num_traits::Zero;

use crate::depth::{
    imprimitive_depths, octahedral_depths, ps_parameter_depth, tetrahedral_depths,
};
use crate::error::{Error, Result};
use crate::gf2e::TraceBasis;
use crate::ramification::{
    biquad_profile, depth_from_profile, enumerate_biquadratic, enumerate_quadratic, BreakProfile,
    ExtLine, ExtPlane,
};
use crate::Rational;

/// The torus character behind a principal-series parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsCharacter {
    /// A quadratic character, given by its line in K/wp(K). The packet has
    /// two elements.
    Quadratic(ExtLine),
    /// The trivial character: singleton packet, depth 0.
    Trivial,
    /// A character of order > 2, outside the quadratic machinery; carried as
    /// an opaque tag with a caller-supplied depth. Singleton packet.
    NonQuadratic { depth: Rational },
}

/// Combinatorial type of an L-parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamDescriptor {
    PrincipalSeries(PsCharacter),
    Steinberg,
    /// Induced from a ramified quadratic extension, torsion group of order 2;
    /// the three depths pin down the depth pair.
    SimplyImprimitive { d_xi: u64, d_xi_sq: u64, d_lk: u64 },
    /// Kernel cut out by a biquadratic extension, torsion group of order 4.
    TriplyImprimitive { plane: ExtPlane },
    Octahedral { r: i64 },
    Tetrahedral { r: i64, l_unramified: bool },
}

impl ParamDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(_)) => "principal-series",
            ParamDescriptor::PrincipalSeries(PsCharacter::Trivial) => "principal-series-trivial",
            ParamDescriptor::PrincipalSeries(PsCharacter::NonQuadratic { .. }) => {
                "principal-series-nonquadratic"
            }
            ParamDescriptor::Steinberg => "steinberg",
            ParamDescriptor::SimplyImprimitive { .. } => "simply-imprimitive",
            ParamDescriptor::TriplyImprimitive { .. } => "triply-imprimitive",
            ParamDescriptor::Octahedral { .. } => "octahedral",
            ParamDescriptor::Tetrahedral { .. } => "tetrahedral",
        }
    }

    pub fn label(&self) -> String {
        match self {
            ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(line)) => {
                format!("ps[{}]", line.generator().label())
            }
            ParamDescriptor::PrincipalSeries(PsCharacter::Trivial) => "ps[trivial]".into(),
            ParamDescriptor::PrincipalSeries(PsCharacter::NonQuadratic { .. }) => {
                "ps[non-quadratic]".into()
            }
            ParamDescriptor::Steinberg => "steinberg".into(),
            ParamDescriptor::SimplyImprimitive { d_xi, d_xi_sq, d_lk } => {
                format!("simply-imprimitive[d_xi={d_xi}, d_xi2={d_xi_sq}, d_lk={d_lk}]")
            }
            ParamDescriptor::TriplyImprimitive { plane } => {
                format!("triply-imprimitive{}", plane.label())
            }
            ParamDescriptor::Octahedral { r } => format!("octahedral[r={r}]"),
            ParamDescriptor::Tetrahedral { r, l_unramified } => format!(
                "tetrahedral[r={r}, cubic={}]",
                if *l_unramified { "unramified" } else { "ramified" }
            ),
        }
    }
}

/// Imprimitivity class of an induced parameter, decided by the order of the
/// twist character `xi^sigma xi^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImprimitivityClass {
    Simply,
    Triply,
}

/// Twist order 2 means the induced parameter is triply imprimitive (its
/// kernel cuts out a biquadratic extension); any larger order leaves it
/// simply imprimitive. Order 1 would make the induction reducible.
pub fn classify_imprimitive(twist_order: u64) -> Result<ImprimitivityClass> {
    match twist_order {
        0 | 1 => Err(Error::InvalidOrder(twist_order)),
        2 => Ok(ImprimitivityClass::Triply),
        _ => Ok(ImprimitivityClass::Simply),
    }
}

/// Everything the classification derives for one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketInfo {
    /// Order of the torsion group of a minimal lift; equals `s_phi_order`.
    pub torsion_order: u32,
    /// Order of pi_0 of the PGL_2-centralizer.
    pub s_phi_order: u32,
    /// Order of pi_0 of the SL_2-centralizer.
    pub script_s_order: u32,
    /// Isomorphism tag when the group is nonabelian (only "Q8" occurs).
    pub script_s_tag: Option<&'static str>,
    /// Order of the central quotient Z_phi; 2 exactly when relevant.
    pub z_phi_order: u32,
    pub card_sl2k: u32,
    pub card_sl1d: u32,
    pub relevant_sl1d: bool,
    /// Depth of the parameter itself.
    pub depth: Rational,
    /// Depth of a minimal lift, which equals the depth of every packet
    /// member; a lower bound witness `lift_depth >= depth`. `None` when not
    /// determined by the descriptor.
    pub lift_depth: Option<Rational>,
    /// Whether the parameter is essentially tame (wild inertia lands in a
    /// torus); exactly then `lift_depth == depth`.
    pub essentially_tame: bool,
}

impl PacketInfo {
    /// Number of irreducible representations of the SL_2 component group:
    /// 5 for the quaternion group Q8 (four characters plus one
    /// 2-dimensional), the order itself for an abelian group.
    pub fn script_s_irreducible_count(&self) -> u32 {
        if self.script_s_tag == Some("Q8") {
            5
        } else {
            self.script_s_order
        }
    }

    /// JSON row shape used by the CLI and the Python bindings.
    pub fn to_json_value(&self, label: &str, kind: &str) -> serde_json::Value {
        serde_json::json!({
            "descriptor": label,
            "kind": kind,
            "torsion": self.torsion_order,
            "s_phi": self.s_phi_order,
            "script_s": self.script_s_order,
            "script_s_tag": self.script_s_tag,
            "z_phi": self.z_phi_order,
            "card_sl2k": self.card_sl2k,
            "card_sl1d": self.card_sl1d,
            "relevant": self.relevant_sl1d,
            "depth_num": *self.depth.numer(),
            "depth_den": *self.depth.denom(),
            "lift_depth_num": self.lift_depth.map(|d| *d.numer()),
            "lift_depth_den": self.lift_depth.map(|d| *d.denom()),
            "essentially_tame": self.essentially_tame,
        })
    }
}

fn packet(
    torsion: u32,
    relevant: bool,
    script_s_tag: Option<&'static str>,
    cards: (u32, u32),
    depth: Rational,
    lift_depth: Option<Rational>,
    essentially_tame: bool,
) -> PacketInfo {
    let z_phi_order = if relevant { 2 } else { 1 };
    PacketInfo {
        torsion_order: torsion,
        s_phi_order: torsion,
        script_s_order: z_phi_order * torsion,
        script_s_tag,
        z_phi_order,
        card_sl2k: cards.0,
        card_sl1d: cards.1,
        relevant_sl1d: relevant,
        depth,
        lift_depth,
        essentially_tame,
    }
}

/// Derive the packet data for a descriptor.
///
/// Cardinality patterns `(SL_2(K), SL_1(D))` by family: primitive and
/// Steinberg `(1,1)`, simply imprimitive `(2,2)`, triply imprimitive
/// `(4,1)`, quadratic principal series `(2,0)`, other principal series
/// `(1,0)`.
pub fn classify(desc: &ParamDescriptor) -> Result<PacketInfo> {
    Ok(match desc {
        ParamDescriptor::Octahedral { r } => {
            let (proj, lift) = octahedral_depths(*r)?;
            packet(1, true, None, (1, 1), proj, Some(lift), false)
        }
        ParamDescriptor::Tetrahedral { r, l_unramified } => {
            let (proj, lift) = tetrahedral_depths(*r, *l_unramified)?;
            packet(1, true, None, (1, 1), proj, Some(lift), false)
        }
        ParamDescriptor::SimplyImprimitive { d_xi, d_xi_sq, d_lk } => {
            let (proj, lift) = imprimitive_depths(*d_xi, *d_xi_sq, *d_lk)?;
            // These inputs model a totally ramified minimal lift, never the
            // essentially tame (unramified twist) situation.
            packet(2, true, None, (2, 2), proj, Some(lift), false)
        }
        ParamDescriptor::TriplyImprimitive { plane } => {
            let profile = biquad_profile(plane)?;
            let depth = depth_from_profile(&profile);
            // Case 1 planes contain the unramified line, so the torsion
            // group contains an unramified character: essentially tame.
            let tame = matches!(profile, BreakProfile::Case1 { .. });
            let lift = if tame { Some(depth) } else { None };
            packet(4, true, Some("Q8"), (4, 1), depth, lift, tame)
        }
        ParamDescriptor::Steinberg => {
            let zero = Rational::zero();
            packet(1, true, None, (1, 1), zero, Some(zero), true)
        }
        ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(line)) => {
            let depth = ps_parameter_depth(line);
            packet(2, false, None, (2, 0), depth, Some(depth), true)
        }
        ParamDescriptor::PrincipalSeries(PsCharacter::Trivial) => {
            let zero = Rational::zero();
            packet(1, false, None, (1, 0), zero, Some(zero), true)
        }
        ParamDescriptor::PrincipalSeries(PsCharacter::NonQuadratic { depth }) => {
            packet(1, false, None, (1, 0), *depth, Some(*depth), true)
        }
    })
}

/// Which descriptor families a packet table should enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Quadratic,
    Biquadratic,
    All,
}

/// One table row: the descriptor plus everything classified from it.
#[derive(Debug, Clone)]
pub struct PacketRow {
    pub descriptor: ParamDescriptor,
    pub profile: BreakProfile,
    pub info: PacketInfo,
}

impl PacketRow {
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self
            .info
            .to_json_value(&self.descriptor.label(), self.descriptor.kind());
        v["case"] = serde_json::json!(self.profile.case_name());
        v["breaks"] = serde_json::json!(self.profile.upper_breaks());
        v
    }
}

/// Enumerate extensions up to `max_break` and classify the attached
/// parameters: principal-series rows for quadratic lines, triply imprimitive
/// rows for biquadratic planes. Deterministic coordinate order.
pub fn packet_table(
    basis: &TraceBasis,
    max_break: i64,
    kind: TableKind,
) -> Result<Vec<PacketRow>> {
    let mut rows = Vec::new();
    if matches!(kind, TableKind::Quadratic | TableKind::All) {
        for (line, profile) in enumerate_quadratic(basis, max_break)? {
            let descriptor = ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(line));
            let info = classify(&descriptor)?;
            rows.push(PacketRow {
                descriptor,
                profile,
                info,
            });
        }
    }
    if matches!(kind, TableKind::Biquadratic | TableKind::All) {
        for (plane, profile) in enumerate_biquadratic(basis, max_break)? {
            let descriptor = ParamDescriptor::TriplyImprimitive { plane };
            let info = classify(&descriptor)?;
            rows.push(PacketRow {
                descriptor,
                profile,
                info,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin_schreier::CosetRep;
    use crate::gf2e::Field;
    use num_rational::Ratio;

    fn setup(f: u32) -> TraceBasis {
        let field = Field::with_default_modulus(f).unwrap();
        TraceBasis::power_basis(&field)
    }

    fn consistency(info: &PacketInfo) {
        assert_eq!(info.torsion_order, info.s_phi_order);
        assert_eq!(info.script_s_order, info.z_phi_order * info.s_phi_order);
        assert_eq!(info.relevant_sl1d, info.z_phi_order == 2);
        assert!(matches!(info.card_sl2k, 1 | 2 | 4));
        assert!(info.card_sl1d <= 2);
        if info.relevant_sl1d {
            assert_eq!(
                info.card_sl2k + info.card_sl1d,
                info.script_s_irreducible_count()
            );
        } else {
            assert_eq!(info.card_sl1d, 0);
        }
        if let Some(lift) = info.lift_depth {
            assert!(lift >= info.depth);
            assert_eq!(info.essentially_tame, lift == info.depth);
        }
    }

    #[test]
    fn lemma_twist_order() {
        assert_eq!(classify_imprimitive(2).unwrap(), ImprimitivityClass::Triply);
        assert_eq!(classify_imprimitive(3).unwrap(), ImprimitivityClass::Simply);
        assert_eq!(classify_imprimitive(8).unwrap(), ImprimitivityClass::Simply);
        assert_eq!(classify_imprimitive(1).err(), Some(Error::InvalidOrder(1)));
    }

    #[test]
    fn triply_imprimitive_case1_packet() {
        let basis = setup(2);
        let plane = ExtPlane::new(
            CosetRep::unramified(&basis),
            CosetRep::generator(&basis, 1, 1).unwrap(),
        )
        .unwrap();
        let info = classify(&ParamDescriptor::TriplyImprimitive { plane }).unwrap();
        consistency(&info);
        assert_eq!(info.torsion_order, 4);
        assert_eq!((info.card_sl2k, info.card_sl1d), (4, 1));
        assert_eq!(info.depth, Ratio::from_integer(3));
        assert_eq!(info.script_s_tag, Some("Q8"));
        assert_eq!(info.script_s_irreducible_count(), 5);
        assert!(info.essentially_tame);
    }

    #[test]
    fn triply_imprimitive_wild_packet() {
        let basis = setup(2);
        let plane = ExtPlane::new(
            CosetRep::generator(&basis, 0, 1).unwrap(),
            CosetRep::generator(&basis, 1, 1).unwrap(),
        )
        .unwrap();
        let info = classify(&ParamDescriptor::TriplyImprimitive { plane }).unwrap();
        consistency(&info);
        assert_eq!(info.depth, Ratio::from_integer(3));
        assert!(!info.essentially_tame);
        assert_eq!(info.lift_depth, None);
    }

    #[test]
    fn octahedral_packet() {
        let info = classify(&ParamDescriptor::Octahedral { r: 7 }).unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (1, 1));
        assert_eq!(info.depth, Ratio::new(7, 3));
        assert_eq!(info.lift_depth, Some(Ratio::from_integer(3)));
        assert!(!info.essentially_tame);
    }

    #[test]
    fn simply_imprimitive_packet() {
        let info = classify(&ParamDescriptor::SimplyImprimitive {
            d_xi: 5,
            d_xi_sq: 2,
            d_lk: 3,
        })
        .unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (2, 2));
        assert_eq!(info.script_s_order, 4);
        assert_eq!(info.depth, Ratio::new(5, 2));
        assert_eq!(info.lift_depth, Some(Ratio::from_integer(4)));
    }

    #[test]
    fn steinberg_and_principal_series_packets() {
        let info = classify(&ParamDescriptor::Steinberg).unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (1, 1));
        assert_eq!(info.depth, Ratio::from_integer(0));

        let basis = setup(1);
        let line = ExtLine::new(CosetRep::generator(&basis, 0, 1).unwrap()).unwrap();
        let info = classify(&ParamDescriptor::PrincipalSeries(PsCharacter::Quadratic(
            line,
        )))
        .unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (2, 0));
        assert_eq!(info.depth, Ratio::from_integer(1));
        assert!(!info.relevant_sl1d);

        let info = classify(&ParamDescriptor::PrincipalSeries(PsCharacter::Trivial)).unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (1, 0));

        let info = classify(&ParamDescriptor::PrincipalSeries(
            PsCharacter::NonQuadratic {
                depth: Ratio::new(5, 2),
            },
        ))
        .unwrap();
        consistency(&info);
        assert_eq!((info.card_sl2k, info.card_sl1d), (1, 0));
        assert_eq!(info.depth, Ratio::new(5, 2));
    }

    #[test]
    fn packet_table_small_f1() {
        let basis = setup(1);
        // Quadratic lines in V_1: depths {-1, 1, 1}.
        let rows = packet_table(&basis, 1, TableKind::Quadratic).unwrap();
        let mut depths: Vec<i64> = rows.iter().map(|r| r.info.depth.to_integer()).collect();
        depths.sort_unstable();
        assert_eq!(depths, vec![-1, 1, 1]);
        for row in &rows {
            assert_eq!(row.info.card_sl1d, 0);
        }
        // One biquadratic plane, cards (4, 1), depth 1.
        let rows = packet_table(&basis, 1, TableKind::Biquadratic).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].info.card_sl2k, rows[0].info.card_sl1d), (4, 1));
        assert_eq!(rows[0].info.depth, Ratio::from_integer(1));
    }

    #[test]
    fn packet_table_counts_case1_f2() {
        // q - 1 = 3 Case 1 rows at max break 1 over F_4.
        let basis = setup(2);
        let rows = packet_table(&basis, 1, TableKind::Biquadratic).unwrap();
        let case1 = rows
            .iter()
            .filter(|r| matches!(r.profile, BreakProfile::Case1 { .. }))
            .count();
        assert_eq!(case1, 3);
        for row in &rows {
            consistency(&row.info);
        }
    }

    #[test]
    fn json_row_shape() {
        let info = classify(&ParamDescriptor::Octahedral { r: 1 }).unwrap();
        let v = info.to_json_value("octahedral[r=1]", "octahedral");
        assert_eq!(v["depth_num"], serde_json::json!(1));
        assert_eq!(v["depth_den"], serde_json::json!(3));
        assert_eq!(v["card_sl2k"], serde_json::json!(1));
        assert_eq!(v["essentially_tame"], serde_json::json!(false));
    }
}
