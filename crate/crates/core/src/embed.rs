//! Subgroup embedding properties relative to a σ-partition: σ-subnormal and
//! σ-permutable subgroups, the PσT property, the σ-hypercentre, property
//! 𝒴_{σᵢ} and σ-modularity.
//!
//! [`SigmaCtx`] bundles a lattice with a partition and caches per-ambient
//! answers, so "in `R`" questions for any subgroup `R` reuse the one lattice.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classes::{hall_subgroups_by_block, CompleteHallSigmaSet};
use crate::error::{Error, Result};
use crate::lattice::{SubId, SubgroupLattice};
use crate::quotients::QuotientCache;
use crate::sigma::{BlockId, SigmaPartition};

/// Which Hall subgroups a σ-permutable subgroup must permute with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PermMode {
    /// Every Hall `σᵢ`-subgroup, for every block.
    #[default]
    Strict,
    /// Every conjugate of the members of one complete Hall σ-set.
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Normal,
    PrimaryQuotient,
}

/// `A = A0 ≤ A1 ≤ … ≤ An = R` with `steps[j]` describing `A(j) ≤ A(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalChain {
    pub terms: Vec<SubId>,
    pub steps: Vec<StepKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermutabilityVerdict {
    Permutable {
        mode: PermMode,
        witness: CompleteHallSigmaSet,
    },
    /// `A` fails to permute with `hall`, a Hall subgroup for `block`.
    NotPermutable {
        mode: PermMode,
        block: BlockId,
        hall: SubId,
    },
    /// The ambient group has no Hall subgroup for `block`.
    NoHallSet { mode: PermMode, block: BlockId },
}

impl PermutabilityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PermutabilityVerdict::Permutable { .. })
    }

    pub fn mode(&self) -> PermMode {
        match self {
            PermutabilityVerdict::Permutable { mode, .. }
            | PermutabilityVerdict::NotPermutable { mode, .. }
            | PermutabilityVerdict::NoHallSet { mode, .. } => *mode,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsigmatFailure {
    /// `k` is σ-permutable in `h`, `h` in `G`, but `k` is not σ-permutable in `G`.
    Transitivity { k: SubId, h: SubId },
    /// `a` is σ-subnormal but not σ-permutable.
    Subnormal { a: SubId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsigmatVerdict {
    pub holds: bool,
    pub counterexample: Option<PsigmatFailure>,
}

impl PsigmatVerdict {
    fn from_failure(counterexample: Option<PsigmatFailure>) -> Self {
        PsigmatVerdict {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// `h ≤ k` are `σ_b`-subgroups and `h` is not σ-permutable in `N_G(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YFailure {
    pub block: BlockId,
    pub h: SubId,
    pub k: SubId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularFailure {
    /// `r` has no complete Hall σ-set.
    NoHallSet { r: SubId, block: BlockId },
    /// `⟨A, H∩C⟩ ≠ ⟨A, H⟩ ∩ C` inside `r`.
    Identity { r: SubId, c: SubId, h: SubId },
}

#[derive(Clone, Copy, Debug)]
struct Step {
    next: SubId,
    kind: StepKind,
}

type HallTable = Vec<(BlockId, Vec<SubId>)>;

#[derive(Debug)]
pub struct SigmaCtx<'a> {
    lat: &'a SubgroupLattice,
    sigma: &'a SigmaPartition,
    mode: PermMode,
    halls: Vec<OnceLock<HallTable>>,
    subnormal: Vec<OnceLock<Vec<Option<Step>>>>,
    permutable: Vec<OnceLock<FixedBitSet>>,
}

impl<'a> SigmaCtx<'a> {
    pub fn new(lat: &'a SubgroupLattice, sigma: &'a SigmaPartition, mode: PermMode) -> Self {
        let n = lat.len();
        SigmaCtx {
            lat,
            sigma,
            mode,
            halls: (0..n).map(|_| OnceLock::new()).collect(),
            subnormal: (0..n).map(|_| OnceLock::new()).collect(),
            permutable: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lat
    }

    pub fn sigma(&self) -> &'a SigmaPartition {
        self.sigma
    }

    pub fn mode(&self) -> PermMode {
        self.mode
    }

    /// Hall `σᵢ`-subgroups of `r`, per block of `σ(r)`.
    pub fn halls_in(&self, r: SubId) -> &[(BlockId, Vec<SubId>)] {
        self.halls[r].get_or_init(|| hall_subgroups_by_block(self.lat, self.sigma, r))
    }

    pub fn has_complete_hall_set_in(&self, r: SubId) -> bool {
        self.halls_in(r).iter().all(|(_, hs)| !hs.is_empty())
    }

    /// One step of a σ-subnormal chain from `x` up to `y ≥ x`.
    pub fn step_kind(&self, x: SubId, y: SubId) -> Option<StepKind> {
        if self.lat.is_normal_in(x, y) {
            return Some(StepKind::Normal);
        }
        let core = self.lat.core_in(x, y);
        let index = (self.lat.order(y) / self.lat.order(core)) as u64;
        self.sigma
            .is_primary_number(index)
            .then_some(StepKind::PrimaryQuotient)
    }

    fn subnormal_table(&self, r: SubId) -> &[Option<Step>] {
        self.subnormal[r].get_or_init(|| {
            let lat = self.lat;
            let mut table: Vec<Option<Step>> = vec![None; lat.len()];
            table[r] = Some(Step {
                next: r,
                kind: StepKind::Normal,
            });
            let below: Vec<SubId> = lat.below(r).collect();
            for &x in below.iter().rev().skip(1) {
                table[x] = lat
                    .supers(x)
                    .ones()
                    .filter(|&y| y != x && table[y].is_some() && lat.le(y, r))
                    .find_map(|y| self.step_kind(x, y).map(|kind| Step { next: y, kind }));
            }
            table
        })
    }

    pub fn is_subnormal_in(&self, a: SubId, r: SubId) -> bool {
        self.subnormal_table(r)[a].is_some()
    }

    pub fn subnormal_chain_in(&self, a: SubId, r: SubId) -> Option<SubnormalChain> {
        let table = self.subnormal_table(r);
        table[a]?;
        let mut terms = vec![a];
        let mut steps = Vec::new();
        let mut cur = a;
        while cur != r {
            let step = table[cur].expect("chain stays inside the table");
            steps.push(step.kind);
            cur = step.next;
            terms.push(cur);
        }
        Some(SubnormalChain { terms, steps })
    }

    /// All σ-subnormal subgroups of `r`, in canonical order.
    pub fn subnormal_in(&self, r: SubId) -> Vec<SubId> {
        let table = self.subnormal_table(r);
        self.lat.below(r).filter(|&x| table[x].is_some()).collect()
    }

    pub fn verdict_in(&self, a: SubId, r: SubId, mode: PermMode) -> PermutabilityVerdict {
        let lat = self.lat;
        let mut entries = BTreeMap::new();
        for (block, hs) in self.halls_in(r) {
            let block = *block;
            let Some(&first) = hs.first() else {
                return PermutabilityVerdict::NoHallSet { mode, block };
            };
            match mode {
                PermMode::Strict => {
                    if let Some(&hall) = hs.iter().find(|&&h| !lat.permutes(a, h)) {
                        return PermutabilityVerdict::NotPermutable { mode, block, hall };
                    }
                    entries.insert(block, first);
                }
                PermMode::Witness => {
                    let good = hs.iter().copied().find(|&h| {
                        lat.conjugates_in(h, r)
                            .into_iter()
                            .all(|c| lat.permutes(a, c))
                    });
                    match good {
                        Some(h) => {
                            entries.insert(block, h);
                        }
                        None => {
                            let hall = lat
                                .conjugates_in(first, r)
                                .into_iter()
                                .find(|&c| !lat.permutes(a, c))
                                .expect("some conjugate fails");
                            return PermutabilityVerdict::NotPermutable { mode, block, hall };
                        }
                    }
                }
            }
        }
        PermutabilityVerdict::Permutable {
            mode,
            witness: CompleteHallSigmaSet { entries },
        }
    }

    /// σ-permutable subgroups of `r` under the context's mode.
    pub fn permutable_in(&self, r: SubId) -> &FixedBitSet {
        self.permutable[r].get_or_init(|| {
            let mut set = FixedBitSet::with_capacity(self.lat.len());
            if self.has_complete_hall_set_in(r) {
                for x in self.lat.below(r) {
                    if self.verdict_in(x, r, self.mode).holds() {
                        set.insert(x);
                    }
                }
            }
            set
        })
    }

    pub fn is_permutable_in(&self, a: SubId, r: SubId) -> bool {
        self.permutable_in(r).contains(a)
    }
}

pub fn is_sigma_subnormal(ctx: &SigmaCtx<'_>, a: SubId) -> Option<SubnormalChain> {
    ctx.subnormal_chain_in(a, ctx.lattice().top())
}

pub fn is_sigma_permutable(ctx: &SigmaCtx<'_>, a: SubId, mode: PermMode) -> PermutabilityVerdict {
    ctx.verdict_in(a, ctx.lattice().top(), mode)
}

/// `K` σ-permutable in `H` and `H` σ-permutable in `G` force `K` σ-permutable in `G`.
pub fn is_psigmat_transitive_in(ctx: &SigmaCtx<'_>, r: SubId) -> PsigmatVerdict {
    let outer = ctx.permutable_in(r);
    let failure = outer.ones().find_map(|h| {
        ctx.permutable_in(h)
            .ones()
            .find(|&k| !outer.contains(k))
            .map(|k| PsigmatFailure::Transitivity { k, h })
    });
    PsigmatVerdict::from_failure(failure)
}

pub fn is_psigmat_transitive(ctx: &SigmaCtx<'_>) -> PsigmatVerdict {
    is_psigmat_transitive_in(ctx, ctx.lattice().top())
}

pub fn is_psigmat_via_subnormal_in(ctx: &SigmaCtx<'_>, r: SubId) -> PsigmatVerdict {
    let failure = ctx
        .subnormal_in(r)
        .into_iter()
        .find(|&a| !ctx.is_permutable_in(a, r))
        .map(|a| PsigmatFailure::Subnormal { a });
    PsigmatVerdict::from_failure(failure)
}

pub fn is_psigmat_via_subnormal(ctx: &SigmaCtx<'_>) -> PsigmatVerdict {
    is_psigmat_via_subnormal_in(ctx, ctx.lattice().top())
}

/// The chief factor `h/k` of `G` together with `G/C_G(h/k)` is σ-primary.
pub fn is_sigma_central_factor(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    k: SubId,
    h: SubId,
) -> Result<bool> {
    let g = lat.group();
    let c = g.centralizer_of_factor(lat.subgroup(h), lat.subgroup(k))?;
    let factor = (lat.order(h) / lat.order(k)) as u64;
    let acting = (g.order() / c.order()) as u64;
    Ok(sigma.is_primary_number(factor * acting))
}

/// `Z_σ(G)`: the largest normal subgroup all of whose chief factors below it
/// are σ-central.
pub fn sigma_hypercentre(lat: &SubgroupLattice, sigma: &SigmaPartition) -> Result<SubId> {
    let mut central: HashMap<(SubId, SubId), bool> = HashMap::new();
    let mut qualifying = Vec::new();
    for n in lat.normal_subgroups() {
        let series = lat.chief_series(Some(n))?;
        let mut ok = true;
        for (k, h) in series.factors().take_while(|&(_, h)| lat.le(h, n)) {
            let c = match central.get(&(k, h)) {
                Some(&c) => c,
                None => {
                    let c = is_sigma_central_factor(lat, sigma, k, h)?;
                    central.insert((k, h), c);
                    c
                }
            };
            if !c {
                ok = false;
                break;
            }
        }
        if ok {
            qualifying.push(n);
        }
    }
    let mut set = FixedBitSet::with_capacity(lat.len());
    set.extend(qualifying.iter().copied());
    for (i, &x) in qualifying.iter().enumerate() {
        for &y in &qualifying[i + 1..] {
            if !set.contains(lat.join(x, y)) {
                return Err(Error::Inconsistent(format!(
                    "joins of normal subgroups of orders {} and {} leave the sigma-central family",
                    lat.order(x),
                    lat.order(y)
                )));
            }
        }
    }
    let top = *qualifying.last().expect("the trivial subgroup qualifies");
    if qualifying.iter().any(|&x| !lat.le(x, top)) {
        return Err(Error::Inconsistent("no largest sigma-central normal subgroup".into()));
    }
    Ok(top)
}

/// Caches `Z_σ(G/N)` per normal `N` for repeated hypercentral-embedding tests.
#[derive(Debug)]
pub struct HypercentreOracle<'a> {
    lat: &'a SubgroupLattice,
    sigma: &'a SigmaPartition,
    quotients: QuotientCache<'a>,
    centres: Vec<OnceLock<Result<SubId>>>,
}

impl<'a> HypercentreOracle<'a> {
    pub fn new(lat: &'a SubgroupLattice, sigma: &'a SigmaPartition, max_subgroups: usize) -> Self {
        HypercentreOracle {
            lat,
            sigma,
            quotients: QuotientCache::new(lat, max_subgroups),
            centres: (0..lat.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn quotients(&self) -> &QuotientCache<'a> {
        &self.quotients
    }

    /// `Z_σ(G/N)` as a subgroup id of the quotient lattice.
    pub fn hypercentre_mod(&self, n: SubId) -> Result<SubId> {
        self.centres[n]
            .get_or_init(|| {
                let view = self.quotients.get(n)?;
                sigma_hypercentre(&view.lattice, self.sigma)
            })
            .clone()
    }

    /// `H/H_G ≤ Z_σ(G/H_G)`.
    pub fn is_hypercentrally_embedded(&self, h: SubId) -> Result<bool> {
        let core = self.lat.core_in(h, self.lat.top());
        let view = self.quotients.get(core)?;
        let z = self.hypercentre_mod(core)?;
        let image = view.image_id(self.lat, h);
        Ok(view.lattice.le(image, z))
    }
}

pub fn is_hypercentrally_embedded(
    lat: &SubgroupLattice,
    sigma: &SigmaPartition,
    h: SubId,
    max_subgroups: usize,
) -> Result<bool> {
    HypercentreOracle::new(lat, sigma, max_subgroups).is_hypercentrally_embedded(h)
}

/// Property `𝒴_{σ_b}`: nested `σ_b`-subgroups `H ≤ K` have `H` σ-permutable in `N_G(K)`.
pub fn satisfies_y(ctx: &SigmaCtx<'_>, block: BlockId) -> Option<YFailure> {
    let lat = ctx.lattice();
    let subs: Vec<SubId> = lat
        .ids()
        .filter(|&x| ctx.sigma().is_block_number(lat.order(x) as u64, block))
        .collect();
    subs.iter().find_map(|&k| {
        let n = lat.normalizer_id(k);
        subs.iter()
            .copied()
            .filter(|&h| lat.le(h, k))
            .find(|&h| !ctx.is_permutable_in(h, n))
            .map(|h| YFailure { block, h, k })
    })
}

/// `𝒴_{σᵢ}` for every block of `σ(G)`.
pub fn satisfies_y_all(ctx: &SigmaCtx<'_>) -> Option<YFailure> {
    let lat = ctx.lattice();
    ctx.sigma()
        .signature(lat.order(lat.top()) as u64)
        .iter()
        .find_map(|b| satisfies_y(ctx, b))
}

/// `A` is σ-modular in `r`: `r` has a complete Hall σ-set and
/// `⟨A, H∩C⟩ = ⟨A, H⟩ ∩ C` for every Hall `σᵢ`-subgroup `H` of `r` and every `A ≤ C ≤ r`.
pub fn sigma_modular_failure_in(ctx: &SigmaCtx<'_>, a: SubId, r: SubId) -> Option<ModularFailure> {
    let lat = ctx.lattice();
    let between = lat.between(a, r);
    for (block, hs) in ctx.halls_in(r) {
        if hs.is_empty() {
            return Some(ModularFailure::NoHallSet { r, block: *block });
        }
    }
    for (_, hs) in ctx.halls_in(r) {
        for &h in hs {
            let ah = lat.join(a, h);
            for &c in &between {
                if lat.join(a, lat.meet(h, c)) != lat.meet(ah, c) {
                    return Some(ModularFailure::Identity { r, c, h });
                }
            }
        }
    }
    None
}

/// `A` is σ-modular in every subgroup of `G` containing it.
pub fn is_sigma_modular_everywhere(ctx: &SigmaCtx<'_>, a: SubId) -> Option<ModularFailure> {
    let lat = ctx.lattice();
    lat.supers(a)
        .ones()
        .find_map(|r| sigma_modular_failure_in(ctx, a, r))
}

/// `N ∩ HK = (N∩H)(N∩K)` for pairwise permutable `H`, `K`, `N` with `H` a Hall subgroup.
pub fn hall_factorization_check(lat: &SubgroupLattice, n: SubId, h: SubId, k: SubId) -> Result<bool> {
    if !(lat.permutes(h, k) && lat.permutes(h, n) && lat.permutes(k, n)) {
        return Err(Error::PreconditionFailed("subgroups do not pairwise permute".into()));
    }
    let order = lat.order(h);
    if order.gcd(&(lat.order(lat.top()) / order)) != 1 {
        return Err(Error::PreconditionFailed("H is not a Hall subgroup".into()));
    }
    let g = lat.group();
    let mut lhs = g.product_set(lat.subgroup(h), lat.subgroup(k));
    lhs.intersect_with(lat.subgroup(n).members());
    let rhs = g.product_set(lat.subgroup(lat.meet(n, h)), lat.subgroup(lat.meet(n, k)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders;
    use crate::group::Group;
    use crate::lattice::DEFAULT_MAX_SUBGROUPS;
    use crate::perm::parse_cycles;
    use crate::sigma::RestPolicy;

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

    fn one_block() -> SigmaPartition {
        SigmaPartition::new(vec![vec![2, 3]], RestPolicy::Singletons).unwrap()
    }

    #[test]
    fn subnormality_in_s3() {
        let l = lat(builders::symmetric(3).unwrap());
        let s0 = SigmaPartition::sigma0();
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let t = sub(&l, &["(1 2)"]);
        assert!(is_sigma_subnormal(&ctx, t).is_none());
        let a3 = sub(&l, &["(1 2 3)"]);
        let chain = is_sigma_subnormal(&ctx, a3).unwrap();
        assert_eq!(chain.terms, vec![a3, l.top()]);
        assert_eq!(chain.steps, vec![StepKind::Normal]);
        assert_eq!(ctx.subnormal_in(l.top()), vec![0, a3, l.top()]);

        let wide = one_block();
        let ctx = SigmaCtx::new(&l, &wide, PermMode::Strict);
        let chain = is_sigma_subnormal(&ctx, t).unwrap();
        assert_eq!(chain.terms, vec![t, l.top()]);
        assert_eq!(chain.steps, vec![StepKind::PrimaryQuotient]);
    }

    #[test]
    fn chains_are_valid() {
        let l = lat(builders::symmetric(4).unwrap());
        let s0 = SigmaPartition::sigma0();
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let mut count = 0;
        for a in l.ids() {
            if let Some(chain) = is_sigma_subnormal(&ctx, a) {
                count += 1;
                for (w, kind) in chain.terms.windows(2).zip(&chain.steps) {
                    assert!(l.le(w[0], w[1]));
                    match kind {
                        StepKind::Normal => assert!(l.is_normal_in(w[0], w[1])),
                        StepKind::PrimaryQuotient => {
                            let core = l.core_in(w[0], w[1]);
                            assert!(s0.is_primary_number((l.order(w[1]) / l.order(core)) as u64));
                        }
                    }
                }
            }
        }
        // 1, four-group, three C2 inside it, A4, S4
        assert_eq!(count, 7);
    }

    #[test]
    fn permutability_examples() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::symmetric(3).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let t = sub(&l, &["(1 2)"]);
        assert!(matches!(
            is_sigma_permutable(&ctx, t, PermMode::Strict),
            PermutabilityVerdict::NotPermutable { block: BlockId::Prime(2), .. }
        ));
        let a3 = sub(&l, &["(1 2 3)"]);
        for mode in [PermMode::Strict, PermMode::Witness] {
            assert!(is_sigma_permutable(&ctx, a3, mode).holds());
        }

        let l = lat(builders::alternating(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let v = sub(&l, &["(1 2)(3 4)"]);
        assert!(!is_sigma_permutable(&ctx, v, PermMode::Strict).holds());

        let l = lat(builders::alternating(5).unwrap());
        let p25 = SigmaPartition::pi(&[2, 5]).unwrap();
        let ctx = SigmaCtx::new(&l, &p25, PermMode::Strict);
        assert!(matches!(
            is_sigma_permutable(&ctx, l.top(), PermMode::Strict),
            PermutabilityVerdict::NoHallSet { .. }
        ));
    }

    #[test]
    fn psigmat_examples() {
        let s0 = SigmaPartition::sigma0();
        for (g, expected) in [
            (builders::cyclic(6).unwrap(), true),
            (builders::quaternion(), true),
            (builders::symmetric(3).unwrap(), true),
            (builders::frobenius_7_3(), true),
            (builders::symmetric(4).unwrap(), false),
            (builders::alternating(4).unwrap(), false),
        ] {
            let l = lat(g);
            let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
            assert_eq!(is_psigmat_transitive(&ctx).holds, expected, "{:?}", l.group().name());
            assert_eq!(is_psigmat_via_subnormal(&ctx).holds, expected, "{:?}", l.group().name());
        }
        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let Some(PsigmatFailure::Transitivity { k, h }) = is_psigmat_transitive(&ctx).counterexample
        else {
            panic!("expected a transitivity failure");
        };
        assert!(ctx.is_permutable_in(k, h) && ctx.is_permutable_in(h, l.top()));
        assert!(!ctx.is_permutable_in(k, l.top()));
    }

    #[test]
    fn hypercentre_examples() {
        let s0 = SigmaPartition::sigma0();
        for g in [builders::cyclic(6).unwrap(), builders::quaternion()] {
            let l = lat(g);
            assert_eq!(sigma_hypercentre(&l, &s0).unwrap(), l.top());
        }
        let l = lat(builders::symmetric(3).unwrap());
        assert_eq!(sigma_hypercentre(&l, &s0).unwrap(), 0);
        assert_eq!(sigma_hypercentre(&l, &one_block()).unwrap(), l.top());
        let t = sub(&l, &["(1 2)"]);
        assert!(!is_hypercentrally_embedded(&l, &s0, t, DEFAULT_MAX_SUBGROUPS).unwrap());
        assert!(is_hypercentrally_embedded(&l, &s0, l.top(), DEFAULT_MAX_SUBGROUPS).unwrap());
        assert!(is_hypercentrally_embedded(&l, &s0, 0, DEFAULT_MAX_SUBGROUPS).unwrap());
        // D4 is nilpotent: its upper central series reaches the top.
        let l = lat(builders::dihedral(4).unwrap());
        assert_eq!(sigma_hypercentre(&l, &s0).unwrap(), l.top());
    }

    #[test]
    fn y_property() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::quaternion());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        assert_eq!(satisfies_y(&ctx, BlockId::Prime(2)), None);
        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let fail = satisfies_y(&ctx, BlockId::Prime(2)).unwrap();
        assert!(l.le(fail.h, fail.k));
        assert!(!ctx.is_permutable_in(fail.h, l.normalizer_id(fail.k)));
        // no 5-subgroups except 1
        assert_eq!(satisfies_y(&ctx, BlockId::Prime(5)), None);
    }

    #[test]
    fn modularity() {
        let s0 = SigmaPartition::sigma0();
        let l = lat(builders::symmetric(4).unwrap());
        let ctx = SigmaCtx::new(&l, &s0, PermMode::Strict);
        let k = sub(&l, &["(1 2)(3 4)"]);
        assert!(is_sigma_modular_everywhere(&ctx, k).is_some());
        assert!(is_sigma_modular_everywhere(&ctx, l.top()).is_none());
        let v4 = sub(&l, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(sigma_modular_failure_in(&ctx, v4, l.top()).is_none());
    }

    #[test]
    fn hall_factorization() {
        let l = lat(builders::symmetric(3).unwrap());
        let a3 = sub(&l, &["(1 2 3)"]);
        let t = sub(&l, &["(1 2)"]);
        assert!(hall_factorization_check(&l, a3, a3, t).unwrap());
        assert!(hall_factorization_check(&l, l.top(), a3, t).unwrap());
        assert!(hall_factorization_check(&l, 0, 0, 0).unwrap());
        let u = sub(&l, &["(1 3)"]);
        assert!(matches!(
            hall_factorization_check(&l, a3, t, u),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
