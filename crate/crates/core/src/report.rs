//! One-shot analysis of a group at a prime, as a serializable report.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::checks::{prop4_check_with_sylow, Prop4Outcome};
use crate::cohomology::h1_dim;
use crate::error::Result;
use crate::filtration::{
    canonical_series, exhaustive_lengths, non_p_solvable_length, p_perfect_filtration_from,
    theorem_a_filtration_with_sylow, ExhaustiveLengths, FactorKind, GapTag, PPerfectFiltration,
    PPerfectGap, RefinedSeries, TheoremAFiltration, EXHAUSTIVE_ORDER_CAP,
};
use crate::group::PermGroup;
use crate::prime::Prime;
use crate::sylow::{min_generators_p_group, sylow_subgroup};

/// Orders are written as JSON numbers when they fit in `u64`, else as strings.
fn big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

fn big_seq<S: Serializer>(ns: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(ns.len()))?;
    for n in ns {
        match u64::try_from(n) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&n.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct TermSummary {
    #[serde(serialize_with = "big")]
    pub order: BigUint,
    pub fixed_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremASummary {
    pub terms: Vec<TermSummary>,
    #[serde(serialize_with = "big")]
    pub stable_order: BigUint,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesSummary {
    #[serde(serialize_with = "big_seq")]
    pub orders: Vec<BigUint>,
    pub factors: Vec<FactorKind>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PPerfectSummary {
    #[serde(serialize_with = "big_seq")]
    pub orders: Vec<BigUint>,
    pub gaps: Vec<GapTag>,
    /// `dim H_1(J_i ∩ P)_P` per member.
    pub coinvariant_dims: Vec<usize>,
    pub injective_maps: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bounds {
    pub p_length_le_d: bool,
    pub non_p_solvable_length_le_d: bool,
    pub pperfect_length_le_d: bool,
    pub generalized_p_length_le_2d: bool,
}

impl Bounds {
    pub fn all_hold(&self) -> bool {
        self.p_length_le_d
            && self.non_p_solvable_length_le_d
            && self.pperfect_length_le_d
            && self.generalized_p_length_le_2d
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group: String,
    pub p: Prime,
    #[serde(serialize_with = "big")]
    pub order: BigUint,
    #[serde(serialize_with = "big")]
    pub sylow_order: BigUint,
    /// Minimal number of generators of a Sylow p-subgroup.
    pub d: u32,
    pub h1_dim_g: usize,
    pub h1_dim_p: usize,
    pub p_solvable: bool,
    pub p_solvable_criterion: bool,
    pub p_solvable_direct: bool,
    pub theorem_a: TheoremASummary,
    pub p_length: usize,
    pub non_p_solvable_length: usize,
    pub generalized_p_length: usize,
    /// Minima over all admissible normal series, for groups small enough to search.
    pub exhaustive: Option<ExhaustiveLengths>,
    pub pperfect_length: usize,
    pub refined_series: SeriesSummary,
    pub pperfect_filtration: PPerfectSummary,
    pub bounds: Bounds,
}

impl AnalysisReport {
    /// Descriptions of every internal consistency check that failed.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.p_solvable_criterion != self.p_solvable_direct {
            out.push(format!(
                "cohomological verdict {} disagrees with chief-factor verdict {}",
                self.p_solvable_criterion, self.p_solvable_direct
            ));
        }
        let b = self.bounds;
        let d = self.d;
        if !b.p_length_le_d {
            out.push(format!("p_length {} > d = {d}", self.p_length));
        }
        if !b.non_p_solvable_length_le_d {
            out.push(format!(
                "non_p_solvable_length {} > d = {d}",
                self.non_p_solvable_length
            ));
        }
        if !b.pperfect_length_le_d {
            out.push(format!(
                "pperfect_length {} > d = {d}",
                self.pperfect_length
            ));
        }
        if !b.generalized_p_length_le_2d {
            out.push(format!(
                "generalized_p_length {} > 2d = {}",
                self.generalized_p_length,
                2 * d
            ));
        }
        if !self.pperfect_filtration.injective_maps {
            out.push("coinvariant maps along the p-perfect filtration are not as predicted".into());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let orders = |v: &[BigUint]| {
            v.iter()
                .map(|o| o.to_string())
                .collect::<Vec<_>>()
                .join(" > ")
        };
        let mut rows: Vec<(&str, String)> = vec![
            ("group", self.group.clone()),
            ("p", self.p.to_string()),
            ("order", self.order.to_string()),
            ("sylow_order", self.sylow_order.to_string()),
            ("d", self.d.to_string()),
            ("h1_dim_g", self.h1_dim_g.to_string()),
            ("h1_dim_p", self.h1_dim_p.to_string()),
            ("p_solvable", yes(self.p_solvable).into()),
            (
                "theorem_a",
                format!(
                    "lhs {} rhs {} (terms {}, stable order {})",
                    self.theorem_a.lhs_dim,
                    self.theorem_a.rhs_dim,
                    self.theorem_a
                        .terms
                        .iter()
                        .map(|t| format!("{}:{}", t.order, t.fixed_dim))
                        .collect::<Vec<_>>()
                        .join(" "),
                    self.theorem_a.stable_order
                ),
            ),
            ("p_length", self.p_length.to_string()),
            (
                "non_p_solvable_length",
                self.non_p_solvable_length.to_string(),
            ),
            (
                "generalized_p_length",
                self.generalized_p_length.to_string(),
            ),
        ];
        if let Some(e) = self.exhaustive {
            rows.push((
                "exhaustive_minimum",
                format!(
                    "generalized {}, p_length {}",
                    e.generalized_p_length, e.p_length
                ),
            ));
        }
        rows.extend([
            ("pperfect_length", self.pperfect_length.to_string()),
            ("refined_series", orders(&self.refined_series.orders)),
            (
                "pperfect_filtration",
                orders(&self.pperfect_filtration.orders),
            ),
            ("p_length <= d", yes(self.bounds.p_length_le_d).into()),
            (
                "non_p_solvable_length <= d",
                yes(self.bounds.non_p_solvable_length_le_d).into(),
            ),
            (
                "pperfect_length <= d",
                yes(self.bounds.pperfect_length_le_d).into(),
            ),
            (
                "generalized_p_length <= 2d",
                yes(self.bounds.generalized_p_length_le_2d).into(),
            ),
        ]);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k} = {v}").unwrap();
        }
        out
    }
}

/// Computes every invariant of `g` at `p`.
pub fn analyze(name: &str, g: &PermGroup, p: Prime) -> Result<AnalysisReport> {
    let sylow = sylow_subgroup(g, p)?;
    let d = min_generators_p_group(&sylow, p)?;
    let theorem_a = theorem_a_filtration_with_sylow(g, &sylow, p)?;
    let series = canonical_series(g, p)?;
    let pperfect = p_perfect_filtration_from(g, &series)?;
    let prop4 = prop4_check_with_sylow(g, &sylow, p, pperfect.members())?;
    let non_p_solvable = non_p_solvable_length(g, p)?;
    let exhaustive = if g.order_u64().is_some_and(|o| o <= EXHAUSTIVE_ORDER_CAP) {
        Some(exhaustive_lengths(g, p)?)
    } else {
        None
    };

    let p_length = series.p_length();
    let generalized = series.generalized_p_length();
    let pperfect_length = pperfect.pperfect_length();
    let d_us = d as usize;
    Ok(AnalysisReport {
        group: name.to_string(),
        p,
        order: g.order().clone(),
        sylow_order: sylow.order().clone(),
        d,
        h1_dim_g: h1_dim(g, p)?,
        h1_dim_p: theorem_a.lhs_dim(),
        p_solvable: theorem_a.verdict() && non_p_solvable == 0,
        p_solvable_criterion: theorem_a.verdict(),
        p_solvable_direct: non_p_solvable == 0,
        theorem_a: summarize_theorem_a(&theorem_a),
        p_length,
        non_p_solvable_length: non_p_solvable,
        generalized_p_length: generalized,
        exhaustive,
        pperfect_length,
        refined_series: summarize_series(&series),
        pperfect_filtration: summarize_pperfect(&pperfect, &prop4),
        bounds: Bounds {
            p_length_le_d: p_length <= d_us,
            non_p_solvable_length_le_d: non_p_solvable <= d_us,
            pperfect_length_le_d: pperfect_length <= d_us,
            generalized_p_length_le_2d: generalized <= 2 * d_us,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GapSummary {
    #[serde(serialize_with = "big")]
    pub index: BigUint,
    pub tag: GapTag,
    pub pieces: Vec<FactorKind>,
}

/// The chains behind an analysis: the residual chain, the canonical
/// refined series and the p-perfect filtration with coinvariant dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub group: String,
    pub p: Prime,
    pub theorem_a: TheoremASummary,
    pub refined_series: SeriesSummary,
    pub pperfect_filtration: PPerfectSummary,
    pub pperfect_gaps: Vec<GapSummary>,
    pub pperfect_length: usize,
}

impl FiltrationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} at p = {}\n", self.group, self.p);
        let ta = &self.theorem_a;
        writeln!(out, "residual chain (order: dim H^1(M_i)^P):").unwrap();
        for (i, t) in ta.terms.iter().enumerate() {
            writeln!(
                out,
                "  M_{} order {:>8}  fixed_dim {}",
                i + 1,
                t.order,
                t.fixed_dim
            )
            .unwrap();
        }
        writeln!(
            out,
            "  stable order {}, dim H^1(P) = {}, sum = {}",
            ta.stable_order, ta.lhs_dim, ta.rhs_dim
        )
        .unwrap();
        writeln!(out, "refined series:").unwrap();
        let rs = &self.refined_series;
        for (i, o) in rs.orders.iter().enumerate() {
            match rs.factors.get(i) {
                Some(k) => writeln!(out, "  order {o:>8}  then {k:?}").unwrap(),
                None => writeln!(out, "  order {o:>8}").unwrap(),
            }
        }
        writeln!(out, "p-perfect filtration (order: coinvariant dim):").unwrap();
        let pf = &self.pperfect_filtration;
        for (i, o) in pf.orders.iter().enumerate() {
            writeln!(out, "  J_{i} order {o:>8}  dim {}", pf.coinvariant_dims[i]).unwrap();
            if let Some(g) = self.pperfect_gaps.get(i) {
                writeln!(out, "      index {} ({:?})", g.index, g.tag).unwrap();
            }
        }
        writeln!(out, "pperfect_length = {}", self.pperfect_length).unwrap();
        out
    }
}

pub fn filtration_report(name: &str, g: &PermGroup, p: Prime) -> Result<FiltrationReport> {
    let sylow = sylow_subgroup(g, p)?;
    let theorem_a = theorem_a_filtration_with_sylow(g, &sylow, p)?;
    let series = canonical_series(g, p)?;
    let pperfect = p_perfect_filtration_from(g, &series)?;
    let prop4 = prop4_check_with_sylow(g, &sylow, p, pperfect.members())?;
    Ok(FiltrationReport {
        group: name.to_string(),
        p,
        theorem_a: summarize_theorem_a(&theorem_a),
        refined_series: summarize_series(&series),
        pperfect_filtration: summarize_pperfect(&pperfect, &prop4),
        pperfect_gaps: pperfect
            .gaps()
            .iter()
            .map(|gap| GapSummary {
                index: gap.index.clone(),
                tag: gap.tag(),
                pieces: gap.pieces.clone(),
            })
            .collect(),
        pperfect_length: pperfect.pperfect_length(),
    })
}

fn summarize_theorem_a(f: &TheoremAFiltration) -> TheoremASummary {
    TheoremASummary {
        terms: f
            .terms()
            .iter()
            .map(|t| TermSummary {
                order: t.group.order().clone(),
                fixed_dim: t.fixed_dim,
            })
            .collect(),
        stable_order: f.stable().order().clone(),
        lhs_dim: f.lhs_dim(),
        rhs_dim: f.rhs_dim(),
    }
}

fn summarize_series(s: &RefinedSeries) -> SeriesSummary {
    SeriesSummary {
        orders: s.terms().iter().map(|t| t.order().clone()).collect(),
        factors: s.kinds().to_vec(),
    }
}

fn summarize_pperfect(f: &PPerfectFiltration, prop4: &Prop4Outcome) -> PPerfectSummary {
    PPerfectSummary {
        orders: f.members().iter().map(|t| t.order().clone()).collect(),
        gaps: f.gaps().iter().map(PPerfectGap::tag).collect(),
        coinvariant_dims: prop4.coinvariant_dims.clone(),
        injective_maps: prop4.holds(),
    }
}
