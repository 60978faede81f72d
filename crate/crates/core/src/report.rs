//! Deterministic, serializable reports about a (group, σ) pair.
//!
//! Subgroups are rendered as generator lists in cycle notation plus order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{is_sigma_full_sylow_type, is_sigma_nilpotent, is_sigma_soluble};
use crate::embed::{
    is_psigmat_transitive, is_psigmat_via_subnormal, satisfies_y, sigma_hypercentre, PermMode,
    PsigmatFailure, PsigmatVerdict, SigmaCtx,
};
use crate::error::Result;
use crate::group::{Elem, Group};
use crate::lattice::{SubId, SubgroupLattice};
use crate::quotients::QuotientCache;
use crate::sigma::SigmaPartition;
use crate::structure::{check_theorem_a, check_theorem_b_with, is_sigma_hall_subgroup, TheoremAReport, TheoremBReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupView {
    pub order: usize,
    pub generators: Vec<String>,
}

impl SubgroupView {
    pub fn new(lat: &SubgroupLattice, id: SubId) -> Self {
        let g = lat.group();
        SubgroupView {
            order: lat.order(id),
            generators: lat.gens(id).iter().map(|&e| g.element(e).to_string()).collect(),
        }
    }
}

impl fmt::Display for SubgroupView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            write!(f, "<()> (order {})", self.order)
        } else {
            write!(f, "<{}> (order {})", self.generators.join(", "), self.order)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub subgroup: SubgroupView,
}

fn witness(lat: &SubgroupLattice, role: &str, id: SubId) -> Witness {
    Witness {
        role: role.to_string(),
        subgroup: SubgroupView::new(lat, id),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictView {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl VerdictView {
    pub fn psigmat(lat: &SubgroupLattice, v: &PsigmatVerdict) -> Self {
        let witnesses = match v.counterexample {
            None => vec![],
            Some(PsigmatFailure::Transitivity { k, h }) => {
                vec![witness(lat, "K", k), witness(lat, "H", h)]
            }
            Some(PsigmatFailure::Subnormal { a }) => vec![witness(lat, "A", a)],
        };
        VerdictView {
            holds: v.holds,
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: Option<String>,
    pub degree: usize,
    pub order: usize,
    pub subgroups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionIiView {
    pub o_lower: SubgroupView,
    pub hall: Option<SubgroupView>,
    pub normal_complement: Option<SubgroupView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAView {
    pub residual: SubgroupView,
    pub sigma_soluble: bool,
    pub d_abelian: bool,
    pub d_hall: bool,
    pub d_odd: bool,
    pub complement: Option<SubgroupView>,
    pub m_sigma_nilpotent: bool,
    pub power_automorphisms: bool,
    /// `(g, d)` with `d^g` outside `<d>`.
    pub power_counterexample: Option<(String, String)>,
    pub condition_i: bool,
    pub condition_ii: BTreeMap<String, ConditionIiView>,
    pub condition_ii_holds: bool,
    pub psigmat: bool,
    pub equivalence_holds: bool,
}

fn elem(g: &Group, e: Elem) -> String {
    g.element(e).to_string()
}

impl TheoremAView {
    pub fn new(lat: &SubgroupLattice, sigma: &SigmaPartition, r: &TheoremAReport) -> Self {
        let v = |id| SubgroupView::new(lat, id);
        let ci = &r.condition_i;
        TheoremAView {
            residual: v(r.residual),
            sigma_soluble: r.sigma_soluble,
            d_abelian: ci.d_abelian,
            d_hall: ci.d_hall,
            d_odd: ci.d_odd,
            complement: ci.complement.map(v),
            m_sigma_nilpotent: ci.m_sigma_nilpotent,
            power_automorphisms: ci.power_automorphisms,
            power_counterexample: ci
                .power_counterexample
                .map(|(g, d)| (elem(lat.group(), g), elem(lat.group(), d))),
            condition_i: ci.holds(),
            condition_ii: r
                .condition_ii
                .iter()
                .map(|(b, e)| {
                    let view = ConditionIiView {
                        o_lower: v(e.o_lower),
                        hall: e.hall.map(v),
                        normal_complement: e.normal_complement.map(v),
                    };
                    (sigma.describe_block(*b), view)
                })
                .collect(),
            condition_ii_holds: r.condition_ii_holds(),
            psigmat: r.psigmat,
            equivalence_holds: r.equivalence_holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBView {
    pub d: SubgroupView,
    pub normal_sigma_hall: bool,
    pub quotient_psigmat: Option<bool>,
    pub subnormal_of_d_normal: bool,
    pub sigma_full: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

impl TheoremBView {
    pub fn new(lat: &SubgroupLattice, r: &TheoremBReport) -> Self {
        TheoremBView {
            d: SubgroupView::new(lat, r.d),
            normal_sigma_hall: r.normal_sigma_hall,
            quotient_psigmat: r.quotient_psigmat,
            subnormal_of_d_normal: r.subnormal_of_d_normal,
            sigma_full: r.sigma_full,
            hypotheses_hold: r.hypotheses_hold,
            conclusion_holds: r.conclusion_holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_order: usize,
    pub max_subgroups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: GroupInfo,
    pub sigma: String,
    pub sigma_blocks: Vec<String>,
    pub mode: PermMode,
    pub sigma_soluble: bool,
    pub sigma_nilpotent: bool,
    pub sigma_full: bool,
    pub pst: bool,
    pub psigmat_transitive: VerdictView,
    pub psigmat_subnormal: VerdictView,
    pub hypercentre: SubgroupView,
    pub y_property: BTreeMap<String, VerdictView>,
    pub theorem_a: TheoremAView,
    pub theorem_b: Vec<TheoremBView>,
    pub caps: Caps,
}

/// Normal σ-Hall subgroups of `G`, the candidates for `D` in the normal-Hall criterion.
pub fn normal_sigma_hall_candidates(lat: &SubgroupLattice, sigma: &SigmaPartition) -> Vec<SubId> {
    lat.normal_subgroups()
        .into_iter()
        .filter(|&d| is_sigma_hall_subgroup(lat, sigma, d).is_some())
        .collect()
}

pub fn analyze(lat: &SubgroupLattice, sigma: &SigmaPartition, mode: PermMode, caps: Caps) -> Result<AnalysisReport> {
    let g = lat.group();
    let ctx = SigmaCtx::new(lat, sigma, mode);
    let quotients = QuotientCache::new(lat, caps.max_subgroups);
    let sigma0 = SigmaPartition::sigma0();
    let pst = if *sigma == sigma0 {
        is_psigmat_transitive(&ctx).holds
    } else {
        is_psigmat_transitive(&SigmaCtx::new(lat, &sigma0, mode)).holds
    };
    let signature = sigma.signature(g.order() as u64);
    let y_property = signature
        .iter()
        .map(|b| {
            let witnesses = match satisfies_y(&ctx, b) {
                None => vec![],
                Some(f) => vec![witness(lat, "H", f.h), witness(lat, "K", f.k)],
            };
            let view = VerdictView {
                holds: witnesses.is_empty(),
                witnesses,
            };
            (sigma.describe_block(b), view)
        })
        .collect();
    let sigma_full = is_sigma_full_sylow_type(lat, sigma);
    let theorem_b = normal_sigma_hall_candidates(lat, sigma)
        .into_iter()
        .map(|d| Ok(TheoremBView::new(lat, &check_theorem_b_with(&ctx, &quotients, d, sigma_full)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        group: GroupInfo {
            name: g.name().map(str::to_string),
            degree: g.degree(),
            order: g.order(),
            subgroups: lat.len(),
        },
        sigma: sigma.to_string(),
        sigma_blocks: sigma.describe_signature(&signature),
        mode,
        sigma_soluble: is_sigma_soluble(lat, sigma),
        sigma_nilpotent: is_sigma_nilpotent(lat, sigma),
        sigma_full,
        pst,
        psigmat_transitive: VerdictView::psigmat(lat, &is_psigmat_transitive(&ctx)),
        psigmat_subnormal: VerdictView::psigmat(lat, &is_psigmat_via_subnormal(&ctx)),
        hypercentre: SubgroupView::new(lat, sigma_hypercentre(lat, sigma)?),
        y_property,
        theorem_a: TheoremAView::new(lat, sigma, &check_theorem_a(&ctx)?),
        theorem_b,
        caps,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(v: &Option<SubgroupView>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |s| s.to_string())
}

impl fmt::Display for VerdictView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", yes(self.holds))?;
        for w in &self.witnesses {
            write!(f, "; {} = {}", w.role, w.subgroup)?;
        }
        Ok(())
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.group;
        writeln!(
            f,
            "group {}: degree {}, order {}, {} subgroups",
            g.name.as_deref().unwrap_or("(unnamed)"),
            g.degree,
            g.order,
            g.subgroups
        )?;
        writeln!(f, "sigma: {}", self.sigma)?;
        writeln!(f, "blocks of sigma(G): {}", self.sigma_blocks.join(" "))?;
        writeln!(f, "mode: {:?}", self.mode)?;
        writeln!(f, "caps: max order {}, max subgroups {}", self.caps.max_order, self.caps.max_subgroups)?;
        writeln!(f, "sigma-soluble: {}", yes(self.sigma_soluble))?;
        writeln!(f, "sigma-nilpotent: {}", yes(self.sigma_nilpotent))?;
        writeln!(f, "sigma-full of Sylow type: {}", yes(self.sigma_full))?;
        writeln!(f, "PST (sigma0): {}", yes(self.pst))?;
        writeln!(f, "PsigmaT (transitivity): {}", self.psigmat_transitive)?;
        writeln!(f, "PsigmaT (subnormal criterion): {}", self.psigmat_subnormal)?;
        writeln!(f, "sigma-hypercentre: {}", self.hypercentre)?;
        for (b, v) in &self.y_property {
            writeln!(f, "Y property for {}: {}", b, v)?;
        }
        let a = &self.theorem_a;
        writeln!(f, "residual D: {}", a.residual)?;
        writeln!(
            f,
            "  D abelian {}, Hall {}, odd {}, power automorphisms {}",
            yes(a.d_abelian),
            yes(a.d_hall),
            yes(a.d_odd),
            yes(a.power_automorphisms)
        )?;
        if let Some((x, d)) = &a.power_counterexample {
            writeln!(f, "  conjugating {} by {} leaves <{}>", d, x, d)?;
        }
        writeln!(f, "  complement M: {}", opt(&a.complement))?;
        writeln!(f, "  M sigma-nilpotent: {}", yes(a.m_sigma_nilpotent))?;
        for (b, e) in &a.condition_ii {
            writeln!(
                f,
                "  block {}: O = {}, Hall = {}, normal complement = {}",
                b,
                e.o_lower,
                opt(&e.hall),
                opt(&e.normal_complement)
            )?;
        }
        writeln!(
            f,
            "  conditions (i) {}, (ii) {}; PsigmaT {}; equivalence {}",
            yes(a.condition_i),
            yes(a.condition_ii_holds),
            yes(a.psigmat),
            yes(a.equivalence_holds)
        )?;
        for b in &self.theorem_b {
            writeln!(
                f,
                "normal sigma-Hall D = {}: G/D PsigmaT {}, subnormal in D normal {}, hypotheses {}, conclusion {}",
                b.d,
                b.quotient_psigmat.map_or("n/a", yes),
                yes(b.subnormal_of_d_normal),
                yes(b.hypotheses_hold),
                yes(b.conclusion_holds)
            )?;
        }
        Ok(())
    }
}
