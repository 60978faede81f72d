//! Residuals and structural checks: the σ-nilpotent residual, power
//! automorphisms, σ-Hall subgroups and the conditions of the main
//! characterization theorems.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::classes::{
    hall_sigma_subgroups_in, is_sigma_full_sylow_type, is_sigma_nilpotent_in,
    is_sigma_nilpotent_section, is_sigma_soluble, o_sigma_lower_in,
};
use crate::embed::{is_psigmat_transitive, is_psigmat_transitive_in, SigmaCtx};
use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::lattice::{SubId, SubgroupLattice};
use crate::primes;
use crate::quotients::QuotientCache;
use crate::sigma::{BlockId, SigmaPartition, SigmaSignature};

/// Intersection of all normal `N` of `r` with `r/N` σ-nilpotent.
pub fn sigma_nilpotent_residual_in(lat: &SubgroupLattice, sigma: &SigmaPartition, r: SubId) -> Result<SubId> {
    let d = lat
        .normal_subgroups_in(r)
        .into_iter()
        .filter(|&n| is_sigma_nilpotent_section(lat, sigma, r, n))
        .fold(r, |acc, n| lat.meet(acc, n));
    if !is_sigma_nilpotent_section(lat, sigma, r, d) {
        return Err(Error::Inconsistent(
            "quotient by the sigma-nilpotent residual is not sigma-nilpotent".into(),
        ));
    }
    Ok(d)
}

pub fn sigma_nilpotent_residual(lat: &SubgroupLattice, sigma: &SigmaPartition) -> Result<SubId> {
    sigma_nilpotent_residual_in(lat, sigma, lat.top())
}

fn cyclic_closure(g: &Group, d: Elem) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(g.order());
    let mut x = g.identity();
    loop {
        set.insert(x);
        x = g.mul(x, d);
        if x == g.identity() {
            return set;
        }
    }
}

/// Some `(g, d)` with `g⁻¹dg ∉ ⟨d⟩`, or `None` if every element of `G`
/// induces a power automorphism on `D`.
pub fn induces_power_automorphisms(g: &Group, d: &Subgroup) -> Result<Option<(Elem, Elem)>> {
    if !g.is_normal(d) {
        return Err(Error::NotNormal("power automorphisms on a non-normal subgroup"));
    }
    for x in d.elements() {
        let powers = cyclic_closure(g, x);
        if let Some(y) = (0..g.order()).find(|&y| !powers.contains(g.conj(x, y))) {
            return Ok(Some((y, x)));
        }
    }
    Ok(None)
}

/// `Π = σ(|A|)` when `A` is a Hall `Π`-subgroup of `r`.
pub fn is_sigma_hall_subgroup_in(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    a: SubId,
    r: SubId,
) -> Option<SigmaSignature> {
    let inner = sigma.signature(lat.order(a) as u64);
    let outer = sigma.signature((lat.order(r) / lat.order(a)) as u64);
    inner.is_disjoint(&outer).then_some(inner)
}

pub fn is_sigma_hall_subgroup(lat: &SubgroupLattice, sigma: &SigmaPartition, a: SubId) -> Option<SigmaSignature> {
    is_sigma_hall_subgroup_in(lat, sigma, a, lat.top())
}

fn is_abelian_sub(lat: &SubgroupLattice, x: SubId) -> bool {
    let g = lat.group();
    let gens = lat.gens(x);
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn coprime_index(lat: &SubgroupLattice, x: SubId, r: SubId) -> bool {
    let o = lat.order(x);
    o.gcd(&(lat.order(r) / o)) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionI {
    pub d_abelian: bool,
    pub d_hall: bool,
    pub d_odd: bool,
    pub complement: Option<SubId>,
    pub m_sigma_nilpotent: bool,
    pub power_automorphisms: bool,
    pub power_counterexample: Option<(Elem, Elem)>,
}

impl ConditionI {
    pub fn holds(&self) -> bool {
        self.d_abelian
            && self.d_hall
            && self.d_odd
            && self.complement.is_some()
            && self.m_sigma_nilpotent
            && self.power_automorphisms
    }
}

/// Witnesses for one block of condition (ii).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIiEntry {
    pub o_lower: SubId,
    pub hall: Option<SubId>,
    pub normal_complement: Option<SubId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremAReport {
    pub residual: SubId,
    pub sigma_soluble: bool,
    pub condition_i: ConditionI,
    pub condition_ii: BTreeMap<BlockId, ConditionIiEntry>,
    pub psigmat: bool,
    pub equivalence_holds: bool,
}

impl TheoremAReport {
    pub fn condition_ii_holds(&self) -> bool {
        self.condition_ii.values().all(|e| e.normal_complement.is_some())
    }

    pub fn conditions_hold(&self) -> bool {
        self.condition_i.holds() && self.condition_ii_holds()
    }
}

/// Agreement of the element-wise power test with "every subgroup of `D` is normal".
fn power_automorphism_check(lat: &SubgroupLattice, d: SubId) -> Result<Option<(Elem, Elem)>> {
    let witness = induces_power_automorphisms(lat.group(), lat.subgroup(d))?;
    let all_normal = lat.below(d).all(|x| lat.is_normal(x));
    if all_normal != witness.is_none() {
        return Err(Error::Inconsistent(
            "power automorphism test disagrees with normality of subgroups".into(),
        ));
    }
    Ok(witness)
}

/// Evaluates condition (i) for the given `D`.
pub fn condition_i(lat: &SubgroupLattice, sigma: &SigmaPartition, d: SubId) -> Result<ConditionI> {
    let top = lat.top();
    let complement = if lat.is_normal(d) { lat.complement_search(d)? } else { None };
    let power = if lat.is_normal(d) {
        power_automorphism_check(lat, d)?
    } else {
        Some((lat.group().identity(), lat.group().identity()))
    };
    Ok(ConditionI {
        d_abelian: is_abelian_sub(lat, d),
        d_hall: coprime_index(lat, d, top),
        d_odd: lat.order(d) % 2 == 1,
        complement,
        m_sigma_nilpotent: complement.is_some_and(|m| is_sigma_nilpotent_in(lat, sigma, m)),
        power_automorphisms: lat.is_normal(d) && power.is_none(),
        power_counterexample: power.filter(|_| lat.is_normal(d)),
    })
}

/// Normal complement of `o` in `h`: `S ⊴ h` with `S ∩ o = 1` and `|S||o| = |h|`.
fn normal_complement_in(lat: &SubgroupLattice, o: SubId, h: SubId) -> Option<SubId> {
    if !lat.le(o, h) {
        return None;
    }
    let target = lat.order(h) / lat.order(o);
    lat.below(h).find(|&s| {
        lat.order(s) == target && lat.meet(s, o) == lat.trivial() && lat.is_normal_in(s, h)
    })
}

/// Evaluates condition (ii) for the given `D`, one entry per block of `σ(D)`.
pub fn condition_ii(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    d: SubId,
) -> BTreeMap<BlockId, ConditionIiEntry> {
    let top = lat.top();
    sigma
        .signature(lat.order(d) as u64)
        .iter()
        .map(|b| {
            let o = o_sigma_lower_in(lat, sigma, d, b);
            let halls = hall_sigma_subgroups_in(lat, sigma, top, b);
            let found = halls
                .iter()
                .find_map(|&h| normal_complement_in(lat, o, h).map(|s| (h, s)));
            let entry = ConditionIiEntry {
                o_lower: o,
                hall: found.map(|x| x.0).or(halls.first().copied()),
                normal_complement: found.map(|x| x.1),
            };
            (b, entry)
        })
        .collect()
}

pub fn check_theorem_a(ctx: &SigmaCtx<'_>) -> Result<TheoremAReport> {
    let lat = ctx.lattice();
    let sigma = ctx.sigma();
    let residual = sigma_nilpotent_residual(lat, sigma)?;
    let sigma_soluble = is_sigma_soluble(lat, sigma);
    let condition_i = condition_i(lat, sigma, residual)?;
    let condition_ii = condition_ii(lat, sigma, residual);
    let psigmat = is_psigmat_transitive(ctx).holds;
    let mut report = TheoremAReport {
        residual,
        sigma_soluble,
        condition_i,
        condition_ii,
        psigmat,
        equivalence_holds: false,
    };
    let conditions = report.conditions_hold();
    report.equivalence_holds = if sigma_soluble {
        psigmat == conditions
    } else {
        !conditions || psigmat
    };
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBReport {
    pub d: SubId,
    pub normal_sigma_hall: bool,
    /// `None` when `D` is not normal.
    pub quotient_psigmat: Option<bool>,
    pub subnormal_of_d_normal: bool,
    pub sigma_full: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

/// As [`check_theorem_b`], with `σ`-fullness of `G` supplied by the caller.
pub fn check_theorem_b_with(
    ctx: &SigmaCtx<'_>,
    quotients: &QuotientCache<'_>,
    d: SubId,
    sigma_full: bool,
) -> Result<TheoremBReport> {
    let lat = ctx.lattice();
    let sigma = ctx.sigma();
    let normal = lat.is_normal(d);
    let normal_sigma_hall = normal && is_sigma_hall_subgroup(lat, sigma, d).is_some();
    let quotient_psigmat = if normal {
        let view = quotients.get(d)?;
        let qctx = SigmaCtx::new(&view.lattice, sigma, ctx.mode());
        Some(is_psigmat_transitive(&qctx).holds)
    } else {
        None
    };
    let subnormal_of_d_normal = ctx.subnormal_in(d).into_iter().all(|x| lat.is_normal(x));
    let hypotheses_hold =
        normal_sigma_hall && quotient_psigmat == Some(true) && subnormal_of_d_normal && sigma_full;
    Ok(TheoremBReport {
        d,
        normal_sigma_hall,
        quotient_psigmat,
        subnormal_of_d_normal,
        sigma_full,
        hypotheses_hold,
        conclusion_holds: is_psigmat_transitive(ctx).holds,
    })
}

pub fn check_theorem_b(ctx: &SigmaCtx<'_>, quotients: &QuotientCache<'_>, d: SubId) -> Result<TheoremBReport> {
    let full = is_sigma_full_sylow_type(ctx.lattice(), ctx.sigma());
    check_theorem_b_with(ctx, quotients, d, full)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureFailure {
    Subgroup(SubId),
    /// The quotient by this normal subgroup.
    Quotient(SubId),
}

/// Every subgroup and every quotient of a σ-soluble PσT-group is PσT.
pub fn closure_check(ctx: &SigmaCtx<'_>, quotients: &QuotientCache<'_>) -> Result<Option<ClosureFailure>> {
    let lat = ctx.lattice();
    let sigma = ctx.sigma();
    if !is_sigma_soluble(lat, sigma) || !is_psigmat_transitive(ctx).holds {
        return Err(Error::PreconditionFailed(
            "closure check needs a sigma-soluble PsigmaT-group".into(),
        ));
    }
    if let Some(e) = lat.ids().find(|&e| !is_psigmat_transitive_in(ctx, e).holds) {
        return Ok(Some(ClosureFailure::Subgroup(e)));
    }
    for n in lat.normal_subgroups() {
        let view = quotients.get(n)?;
        let qctx = SigmaCtx::new(&view.lattice, sigma, ctx.mode());
        if !is_psigmat_transitive(&qctx).holds {
            return Ok(Some(ClosureFailure::Quotient(n)));
        }
    }
    Ok(None)
}

/// Conditions of the `σ^π` and `σ^{0π}` specializations, computed with
/// prime sets directly rather than through a [`SigmaPartition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedReport {
    pub residual: SubId,
    pub d_abelian_hall_odd: bool,
    pub complement: Option<SubId>,
    pub m_decomposable: bool,
    pub power_automorphisms: bool,
    /// Per prime class checked for a normal complement: `(class primes, found)`.
    pub complements: Vec<(Vec<u64>, bool)>,
}

impl SpecializedReport {
    pub fn conditions_hold(&self) -> bool {
        self.d_abelian_hall_odd
            && self.complement.is_some()
            && self.m_decomposable
            && self.power_automorphisms
            && self.complements.iter().all(|(_, ok)| *ok)
    }
}

/// `r/n` has a normal Hall subgroup for each class of primes dividing `|r:n|`.
fn decomposable_section(
    lat: &SubgroupLattice,
    r: SubId,
    n: SubId,
    class_of: &dyn Fn(u64) -> usize,
) -> bool {
    let index = (lat.order(r) / lat.order(n)) as u64;
    let mut classes: Vec<usize> = primes::prime_divisors(index).into_iter().map(class_of).collect();
    classes.sort_unstable();
    classes.dedup();
    classes.into_iter().all(|c| {
        let target = primes::part(index, |p| class_of(p) == c) as usize * lat.order(n);
        lat.between(n, r)
            .into_iter()
            .any(|x| lat.order(x) == target && lat.is_normal_in(x, r))
    })
}

/// `O_π(r)`: the join of the normal π-subgroups of `r`.
fn o_pi_in(lat: &SubgroupLattice, r: SubId, keep: &dyn Fn(u64) -> bool) -> SubId {
    lat.normal_subgroups_in(r)
        .into_iter()
        .filter(|&x| primes::prime_divisors(lat.order(x) as u64).into_iter().all(keep))
        .fold(lat.trivial(), |acc, x| lat.join(acc, x))
}

fn specialized(
    lat: &SubgroupLattice,
    class_of: &dyn Fn(u64) -> usize,
    complement_classes: &[(Vec<u64>, bool)],
) -> Result<SpecializedReport> {
    let top = lat.top();
    let residual = lat
        .normal_subgroups()
        .into_iter()
        .filter(|&n| decomposable_section(lat, top, n, class_of))
        .fold(top, |acc, n| lat.meet(acc, n));
    let d = residual;
    let d_abelian_hall_odd = is_abelian_sub(lat, d) && coprime_index(lat, d, top) && lat.order(d) % 2 == 1;
    let complement = lat.complement_search(d)?;
    let m_decomposable = complement.is_some_and(|m| decomposable_section(lat, m, lat.trivial(), class_of));
    let power_automorphisms = induces_power_automorphisms(lat.group(), lat.subgroup(d))?.is_none();
    let complements = complement_classes
        .iter()
        .map(|(ps, complementary)| {
            let keep = |p: u64| ps.contains(&p) != *complementary;
            let o = o_pi_in(lat, d, &keep);
            let found = lat
                .hall_subgroups_in(top, keep)
                .into_iter()
                .any(|h| normal_complement_in(lat, o, h).is_some());
            (ps.clone(), found)
        })
        .collect();
    Ok(SpecializedReport {
        residual,
        d_abelian_hall_odd,
        complement,
        m_decomposable,
        power_automorphisms,
        complements,
    })
}

/// Conditions for a π-separable `Pσ^πT`-group: `D ⋊ M` with `M` π-decomposable
/// and `O_π(D)`, `O_{π'}(D)` complemented normally in Hall π- and π'-subgroups.
pub fn check_pi_separable_conditions(lat: &SubgroupLattice, pi: &[u64]) -> Result<SpecializedReport> {
    let class_of = |p: u64| usize::from(!pi.contains(&p));
    specialized(lat, &class_of, &[(pi.to_vec(), false), (pi.to_vec(), true)])
}

/// Conditions for a π-soluble `Pσ^{0π}T`-group: `D ⋊ M` with
/// `M = O_{p1}(M) × … × O_{pn}(M) × O_{π'}(M)` and `O_{π'}(D)` complemented
/// normally in a Hall π'-subgroup.
pub fn check_pi_soluble_conditions(lat: &SubgroupLattice, pi: &[u64]) -> Result<SpecializedReport> {
    let class_of = |p: u64| pi.iter().position(|&q| q == p).unwrap_or(pi.len());
    specialized(lat, &class_of, &[(pi.to_vec(), true)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders;
    use crate::embed::PermMode;
    use crate::lattice::DEFAULT_MAX_SUBGROUPS;
    use crate::perm::parse_cycles;

    fn lat(g: Group) -> SubgroupLattice {
        SubgroupLattice::build(g, DEFAULT_MAX_SUBGROUPS).unwrap()
    }

    fn sub(l: &SubgroupLattice, gens: &[&str]) -> SubId {
        let g = l.group();
        let elems = gens
            .iter()
            .map(|s| g.index_of(&parse_cycles(s, g.degree(), 1, 1).unwrap()).unwrap());
        l.id_of(&g.generated_subgroup(elems)).unwrap()
    }

    #[test]
    fn residuals() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::cyclic(6).unwrap());
        assert_eq!(sigma_nilpotent_residual(&l, &s0).unwrap(), 0);
        let l = lat(builders::symmetric(4).unwrap());
        let a4 = sub(&l, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(sigma_nilpotent_residual(&l, &s0).unwrap(), a4);
        let l = lat(builders::g168());
        let p23 = SigmaPartition::pi(&[2, 3]).unwrap();
        let d = sigma_nilpotent_residual(&l, &p23).unwrap();
        assert_eq!(l.order(d), 7);
    }

    #[test]
    fn power_automorphisms() {
        let s3 = builders::symmetric(3).unwrap();
        let a3 = s3.derived_subgroup();
        assert_eq!(induces_power_automorphisms(&s3, &a3).unwrap(), None);
        let s4 = builders::symmetric(4).unwrap();
        let a4 = s4.derived_subgroup();
        let (g, d) = induces_power_automorphisms(&s4, &a4).unwrap().unwrap();
        assert!(!cyclic_closure(&s4, d).contains(s4.conj(d, g)));
        let c6 = builders::cyclic(6).unwrap();
        assert_eq!(induces_power_automorphisms(&c6, &c6.whole()).unwrap(), None);
        let swap = s3.index_of(&parse_cycles("(1 2)", 3, 1, 1).unwrap()).unwrap();
        let t = s3.generated_subgroup([swap]);
        assert!(matches!(induces_power_automorphisms(&s3, &t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn sigma_hall() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::symmetric(4).unwrap());
        let c3 = sub(&l, &["(1 2 3)"]);
        assert_eq!(
            is_sigma_hall_subgroup(&l, &s0, c3).unwrap().0.into_iter().collect::<Vec<_>>(),
            vec![BlockId::Prime(3)]
        );
        assert_eq!(is_sigma_hall_subgroup(&l, &s0, l.top()).unwrap(), s0.signature(24));
        let c2 = sub(&l, &["(1 2)"]);
        assert!(is_sigma_hall_subgroup(&l, &s0, c2).is_none());
    }

    #[test]
    fn d_rtimes_m_examples() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::frobenius_7_3());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let r = check_theorem_a(&ctx).unwrap();
        assert_eq!(l.order(r.residual), 7);
        assert!(r.conditions_hold() && r.psigmat && r.equivalence_holds);

        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let r = check_theorem_a(&ctx).unwrap();
        assert!(!r.condition_i.d_abelian && !r.psigmat && r.equivalence_holds);

        let l = lat(builders::g168());
        let p23 = SigmaPartition::pi(&[2, 3]).unwrap();
        let ctx = SigmaCtx::new(&l, &p23, PermMode::Strict);
        let r = check_theorem_a(&ctx).unwrap();
        assert!(r.conditions_hold() && r.psigmat && r.equivalence_holds);
    }

    #[test]
    fn normal_hall_criterion_examples() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::symmetric(3).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let q = QuotientCache::new(&l, DEFAULT_MAX_SUBGROUPS);
        let a3 = sub(&l, &["(1 2 3)"]);
        let r = check_theorem_b(&ctx, &q, a3).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds);
        let r = check_theorem_b(&ctx, &q, 0).unwrap();
        assert_eq!(r.hypotheses_hold, r.conclusion_holds);

        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let q = QuotientCache::new(&l, DEFAULT_MAX_SUBGROUPS);
        let a4 = sub(&l, &["(1 2 3)", "(2 3 4)"]);
        let r = check_theorem_b(&ctx, &q, a4).unwrap();
        assert!(!r.subnormal_of_d_normal && !r.hypotheses_hold && !r.conclusion_holds);
    }

    #[test]
    fn closure() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::frobenius_7_3());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let q = QuotientCache::new(&l, DEFAULT_MAX_SUBGROUPS);
        assert_eq!(closure_check(&ctx, &q).unwrap(), None);
        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let q = QuotientCache::new(&l, DEFAULT_MAX_SUBGROUPS);
        assert!(matches!(closure_check(&ctx, &q), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn specialized_checkers() {
        let l = lat(builders::g168());
        let r = check_pi_separable_conditions(&l, &[2, 3]).unwrap();
        assert_eq!(l.order(r.residual), 7);
        assert!(r.conditions_hold());
        let l = lat(builders::symmetric(4).unwrap());
        assert!(!check_pi_soluble_conditions(&l, &[2, 3]).unwrap().conditions_hold());
    }
}
