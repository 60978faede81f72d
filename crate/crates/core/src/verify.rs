//! Corpus-wide verification suites with deterministic, serializable reports.
//!
//! Pair suites evaluate an equivalence on every (group, σ) pair of a corpus.
//! The `lemmas` suite draws random instances from the corpus with a seeded
//! generator and checks one implication per instance; only instances whose
//! hypotheses hold are counted.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{
    is_d_pi_in, is_sigma_full_sylow_type, is_sigma_nilpotent_in, is_sigma_nilpotent_section,
    is_sigma_soluble, o_sigma_upper,
};
use crate::corpus::catalog;
use crate::corpus::format::{Expect, ManifestCheck, VerificationManifest};
use crate::embed::{
    is_psigmat_transitive, is_psigmat_transitive_in, is_psigmat_via_subnormal_in,
    is_sigma_modular_everywhere, satisfies_y_all, HypercentreOracle, PermMode, SigmaCtx,
};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{SubId, SubgroupLattice};
use crate::quotients::{QuotientCache, QuotientView};
use crate::report::{normal_sigma_hall_candidates, SubgroupView};
use crate::sigma::{RestPolicy, SigmaPartition};
use crate::structure::{
    check_pi_separable_conditions, check_pi_soluble_conditions, check_theorem_a, check_theorem_b_with,
    closure_check, induces_power_automorphisms, is_sigma_hall_subgroup, sigma_nilpotent_residual,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremA,
    TheoremB,
    T41,
    T43,
    T46,
    Lemmas,
    Corollaries,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::TheoremA,
        Suite::TheoremB,
        Suite::T41,
        Suite::T43,
        Suite::T46,
        Suite::Lemmas,
        Suite::Corollaries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "theorem-a",
            Suite::TheoremB => "theorem-b",
            Suite::T41 => "t41",
            Suite::T43 => "t43",
            Suite::T46 => "t46",
            Suite::Lemmas => "lemmas",
            Suite::Corollaries => "corollaries",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{}'", s))
    }
}

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub group: std::result::Result<Arc<Group>, Error>,
}

#[derive(Clone, Debug)]
pub struct CorpusSigma {
    pub name: String,
    pub sigma: SigmaPartition,
}

/// Every group paired with every σ-partition, in listed order.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub groups: Vec<CorpusGroup>,
    pub sigmas: Vec<CorpusSigma>,
}

impl Corpus {
    /// The built-in catalog up to `max_order` with the built-in σ-partitions.
    pub fn builtin(max_order: usize) -> Result<Corpus> {
        let groups = catalog::catalog()
            .into_iter()
            .filter(|e| e.order <= max_order)
            .map(|e| {
                Ok(CorpusGroup {
                    name: e.name.to_string(),
                    group: Ok(Arc::new(e.build()?)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let sigmas = catalog::sigma_configs()
            .into_iter()
            .map(|c| CorpusSigma {
                name: c.name.to_string(),
                sigma: c.partition(),
            })
            .collect();
        Ok(Corpus { groups, sigmas })
    }

    pub fn len(&self) -> usize {
        self.groups.len() * self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub mode: PermMode,
    pub seed: u64,
    pub max_subgroups: usize,
    /// Instances per lemma check.
    pub samples: usize,
    /// Pair suites skip groups above this order.
    pub suite_max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: PermMode::Strict,
            seed: 0,
            max_subgroups: crate::lattice::DEFAULT_MAX_SUBGROUPS,
            samples: 200,
            suite_max_order: usize::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Ok,
    Violation,
    Skipped,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub subject: String,
    pub order: Option<usize>,
    pub status: EntryStatus,
    pub checks: u64,
    pub violations: u64,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub mode: PermMode,
    pub seed: u64,
    pub max_subgroups: usize,
    pub pairs: usize,
    pub checks: u64,
    pub violations: u64,
    pub caps_exceeded: u64,
    pub first_violation: Option<String>,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    fn new(suite: Suite, opts: &VerifyOptions, pairs: usize, entries: Vec<SuiteEntry>) -> Self {
        let count = |s| entries.iter().filter(|e| e.status == s).count() as u64;
        SuiteReport {
            suite,
            mode: opts.mode,
            seed: opts.seed,
            max_subgroups: opts.max_subgroups,
            pairs,
            checks: entries.iter().map(|e| e.checks).sum(),
            violations: entries.iter().map(|e| e.violations).sum(),
            caps_exceeded: count(EntryStatus::CapExceeded),
            first_violation: entries
                .iter()
                .find(|e| e.status == EntryStatus::Violation)
                .and_then(|e| e.detail.as_ref().map(|d| format!("{}: {}", e.subject, d))),
            entries,
        }
    }

    /// `0` clean, `1` violation, `3` some entry hit a resource cap.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 || self.entries.iter().any(|e| e.status == EntryStatus::Violation) {
            1
        } else if self.caps_exceeded > 0 {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (mode {:?}, seed {}): {} pairs, {} checks, {} violations, {} capped",
            self.suite, self.mode, self.seed, self.pairs, self.checks, self.violations, self.caps_exceeded
        )?;
        for e in &self.entries {
            let status = match e.status {
                EntryStatus::Ok => "ok",
                EntryStatus::Violation => "VIOLATION",
                EntryStatus::Skipped => "skipped",
                EntryStatus::CapExceeded => "cap exceeded",
            };
            write!(f, "  {:<28} {:<12} checks {:>5}", e.subject, status, e.checks)?;
            if let Some(d) = &e.detail {
                write!(f, "  {}", d)?;
            }
            writeln!(f)?;
        }
        if let Some(v) = &self.first_violation {
            writeln!(f, "first violation: {}", v)?;
        }
        Ok(())
    }
}

/// One (group, σ) pair with lazily computed shared facts.
pub struct PairCtx<'a> {
    pub group_name: &'a str,
    pub sigma_name: &'a str,
    pub lat: &'a SubgroupLattice,
    pub sigma: &'a SigmaPartition,
    pub ctx: SigmaCtx<'a>,
    pub quotients: QuotientCache<'a>,
    pub soluble: bool,
    pub normals: Vec<SubId>,
    psigmat: OnceLock<bool>,
    residual: OnceLock<Result<SubId>>,
    sigma_hall: OnceLock<Vec<SubId>>,
    coprime_hall: OnceLock<Vec<SubId>>,
}

impl<'a> PairCtx<'a> {
    pub fn new(
        group_name: &'a str,
        sigma_name: &'a str,
        lat: &'a SubgroupLattice,
        sigma: &'a SigmaPartition,
        opts: &VerifyOptions,
    ) -> Self {
        PairCtx {
            group_name,
            sigma_name,
            lat,
            sigma,
            ctx: SigmaCtx::new(lat, sigma, opts.mode),
            quotients: QuotientCache::new(lat, opts.max_subgroups),
            soluble: is_sigma_soluble(lat, sigma),
            normals: lat.normal_subgroups(),
            psigmat: OnceLock::new(),
            residual: OnceLock::new(),
            sigma_hall: OnceLock::new(),
            coprime_hall: OnceLock::new(),
        }
    }

    pub fn subject(&self) -> String {
        format!("{} {}", self.group_name, self.sigma_name)
    }

    pub fn psigmat(&self) -> bool {
        *self.psigmat.get_or_init(|| is_psigmat_transitive(&self.ctx).holds)
    }

    pub fn residual(&self) -> Result<SubId> {
        self.residual
            .get_or_init(|| sigma_nilpotent_residual(self.lat, self.sigma))
            .clone()
    }

    fn sigma_hall(&self) -> &[SubId] {
        self.sigma_hall.get_or_init(|| {
            self.lat
                .ids()
                .filter(|&x| is_sigma_hall_subgroup(self.lat, self.sigma, x).is_some())
                .collect()
        })
    }

    fn coprime_hall(&self) -> &[SubId] {
        self.coprime_hall.get_or_init(|| {
            let n = self.lat.order(self.lat.top());
            self.lat
                .ids()
                .filter(|&x| num_integer::gcd(self.lat.order(x), n / self.lat.order(x)) == 1)
                .collect()
        })
    }

    fn show(&self, id: SubId) -> String {
        SubgroupView::new(self.lat, id).to_string()
    }

    /// Runs `f` against `G/N` with a fresh context on the quotient lattice.
    fn in_quotient<R>(&self, n: SubId, f: impl FnOnce(&QuotientView, &SigmaCtx<'_>) -> R) -> Result<R> {
        let view = self.quotients.get(n)?;
        let qctx = SigmaCtx::new(&view.lattice, self.sigma, self.ctx.mode());
        Ok(f(&view, &qctx))
    }
}

/// Outcome of one check: `Ok(None)` hypotheses unmet, `Ok(Some(Ok(())))`
/// instance holds, `Ok(Some(Err(detail)))` violation.
type Outcome = Result<Option<std::result::Result<(), String>>>;

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    Ok(Some(if ok { Ok(()) } else { Err(detail()) }))
}

struct Prepared {
    lattices: Vec<std::result::Result<SubgroupLattice, Error>>,
}

fn prepare(corpus: &Corpus, opts: &VerifyOptions) -> Prepared {
    let lattices = corpus
        .groups
        .par_iter()
        .map(|g| {
            let group = g.group.clone()?;
            if group.order() > opts.suite_max_order {
                return Err(Error::PreconditionFailed("above the suite order limit".into()));
            }
            SubgroupLattice::build(group, opts.max_subgroups)
        })
        .collect();
    Prepared { lattices }
}

fn pair_entry(
    p: &PairCtx<'_>,
    suite: Suite,
) -> SuiteEntry {
    let order = Some(p.lat.order(p.lat.top()));
    let result = run_pair(p, suite);
    let (status, checks, violations, detail) = match result {
        Ok(PairResult::Skipped(why)) => (EntryStatus::Skipped, 0, 0, Some(why)),
        Ok(PairResult::Checked { checks, failure }) => match failure {
            None => (EntryStatus::Ok, checks, 0, None),
            Some((n, d)) => (EntryStatus::Violation, checks, n, Some(d)),
        },
        Err(Error::CapExceeded { what, limit }) => (
            EntryStatus::CapExceeded,
            0,
            0,
            Some(format!("{} passed {}", what, limit)),
        ),
        Err(e) => (EntryStatus::Violation, 1, 1, Some(e.to_string())),
    };
    SuiteEntry {
        subject: p.subject(),
        order,
        status,
        checks,
        violations,
        detail,
    }
}

enum PairResult {
    Skipped(String),
    Checked {
        checks: u64,
        /// Number of failed checks and the first failure.
        failure: Option<(u64, String)>,
    },
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    fn finish(self) -> PairResult {
        PairResult::Checked {
            checks: self.checks,
            failure: self.first.map(|d| (self.failed, d)),
        }
    }
}

fn run_pair(p: &PairCtx<'_>, suite: Suite) -> Result<PairResult> {
    let lat = p.lat;
    let top = lat.top();
    let mut t = Tally::default();
    match suite {
        Suite::TheoremA => {
            let r = check_theorem_a(&p.ctx)?;
            t.check(r.equivalence_holds, || {
                format!(
                    "PsigmaT {} but conditions (i) {} and (ii) {}; D = {}",
                    r.psigmat,
                    r.condition_i.holds(),
                    r.condition_ii_holds(),
                    p.show(r.residual)
                )
            });
        }
        Suite::TheoremB => {
            let full = is_sigma_full_sylow_type(lat, p.sigma);
            for d in normal_sigma_hall_candidates(lat, p.sigma) {
                let r = check_theorem_b_with(&p.ctx, &p.quotients, d, full)?;
                t.check(!r.hypotheses_hold || r.conclusion_holds, || {
                    format!("hypotheses hold for D = {} but G is not PsigmaT", p.show(d))
                });
            }
        }
        Suite::T41 | Suite::T43 | Suite::T46 => {
            if !p.soluble {
                return Ok(PairResult::Skipped("not sigma-soluble".into()));
            }
            let psigmat = p.psigmat();
            let (other, detail) = match suite {
                Suite::T41 => {
                    let oracle = HypercentreOracle::new(lat, p.sigma, p.quotients_cap());
                    let mut bad = None;
                    for a in p.ctx.subnormal_in(top) {
                        if !oracle.is_hypercentrally_embedded(a)? {
                            bad = Some(a);
                            break;
                        }
                    }
                    (bad.is_none(), bad.map(|a| format!("A = {} not hypercentrally embedded", p.show(a))))
                }
                Suite::T43 => {
                    let f = satisfies_y_all(&p.ctx);
                    (
                        f.is_none(),
                        f.map(|f| format!("H = {} in K = {} fails", p.show(f.h), p.show(f.k))),
                    )
                }
                _ => {
                    let bad = p
                        .ctx
                        .subnormal_in(top)
                        .into_iter()
                        .find(|&a| is_sigma_modular_everywhere(&p.ctx, a).is_some());
                    (bad.is_none(), bad.map(|a| format!("A = {} not sigma-modular everywhere", p.show(a))))
                }
            };
            t.check(psigmat == other, || {
                format!(
                    "PsigmaT {} but characterization {} ({})",
                    psigmat,
                    other,
                    detail.unwrap_or_else(|| "no witness".into())
                )
            });
        }
        Suite::Corollaries => corollary_checks(p, &mut t)?,
        Suite::Lemmas => unreachable!("lemmas are sampled, not run per pair"),
    }
    Ok(t.finish())
}

impl PairCtx<'_> {
    fn quotients_cap(&self) -> usize {
        self.lat.len().max(crate::lattice::DEFAULT_MAX_SUBGROUPS)
    }
}

/// Recognizes `{π, π'}` and `{{p1}, …, {pn}, π'}`.
fn pi_shape(sigma: &SigmaPartition) -> (Option<Vec<u64>>, Option<Vec<u64>>) {
    if sigma.rest_policy() != RestPolicy::OneBlock || sigma.blocks().is_empty() {
        return (None, None);
    }
    let blocks = sigma.blocks();
    let separable = (blocks.len() == 1).then(|| blocks[0].clone());
    let soluble = blocks
        .iter()
        .all(|b| b.len() == 1)
        .then(|| blocks.iter().map(|b| b[0]).collect());
    (separable, soluble)
}

fn corollary_checks(p: &PairCtx<'_>, t: &mut Tally) -> Result<()> {
    let lat = p.lat;
    let sigma = p.sigma;
    let psigmat = p.psigmat();
    if p.soluble && psigmat {
        let f = closure_check(&p.ctx, &p.quotients)?;
        t.check(f.is_none(), || format!("subgroup or quotient not PsigmaT: {:?}", f));
    }
    let is_sigma0 = *sigma == SigmaPartition::sigma0();
    if is_sigma0 && p.soluble && psigmat {
        let d = p.residual()?;
        let g = lat.group();
        let power = induces_power_automorphisms(g, lat.subgroup(d))?.is_none();
        let n = lat.order(d);
        let hall = num_integer::gcd(n, g.order() / n) == 1;
        let abelian = lat.group().subgroup_as_group(lat.subgroup(d)).0.is_abelian();
        t.check(power && hall && abelian && n % 2 == 1, || {
            format!("nilpotent residual {} is not an abelian odd Hall subgroup with power action", p.show(d))
        });
    }
    let (separable, pi_soluble) = pi_shape(sigma);
    if p.soluble {
        let general = check_theorem_a(&p.ctx)?.conditions_hold();
        if let Some(pi) = separable {
            let special = check_pi_separable_conditions(lat, &pi)?.conditions_hold();
            t.check(special == general && special == psigmat, || {
                format!("pi-separable conditions {} vs general {} vs PsigmaT {}", special, general, psigmat)
            });
        }
        if let Some(pi) = pi_soluble {
            let special = check_pi_soluble_conditions(lat, &pi)?.conditions_hold();
            t.check(special == general && special == psigmat, || {
                format!("pi-soluble conditions {} vs general {} vs PsigmaT {}", special, general, psigmat)
            });
        }
    }
    let full = is_sigma_full_sylow_type(lat, sigma);
    for d in normal_sigma_hall_candidates(lat, sigma) {
        let all_normal = lat.below(d).all(|x| lat.is_normal(x));
        if all_normal && is_sigma_nilpotent_section(lat, sigma, lat.top(), d) {
            t.check(psigmat, || format!("D = {} with sigma-nilpotent quotient, G not PsigmaT", p.show(d)));
        }
        if is_sigma0 {
            let r = check_theorem_b_with(&p.ctx, &p.quotients, d, full)?;
            if r.normal_sigma_hall && r.quotient_psigmat == Some(true) && r.subnormal_of_d_normal {
                t.check(psigmat, || format!("D = {}: hypotheses hold, G not PST", p.show(d)));
            }
        }
    }
    if is_sigma0 {
        let y = satisfies_y_all(&p.ctx).is_none();
        t.check(y == (p.soluble && psigmat), || {
            format!("Y for all primes {} but soluble PST {}", y, p.soluble && psigmat)
        });
        if p.soluble {
            let top = lat.top();
            let oracle = HypercentreOracle::new(lat, sigma, p.quotients_cap());
            let mut embedded = true;
            for a in p.ctx.subnormal_in(top) {
                embedded &= oracle.is_hypercentrally_embedded(a)?;
            }
            t.check(embedded == psigmat, || format!("hypercentral embedding {} vs PST {}", embedded, psigmat));
            let modular = p
                .ctx
                .subnormal_in(top)
                .into_iter()
                .all(|a| is_sigma_modular_everywhere(&p.ctx, a).is_none());
            t.check(modular == psigmat, || format!("S-modularity {} vs PST {}", modular, psigmat));
        }
    }
    Ok(())
}

/// Builds the pair contexts for every group whose lattice is available.
fn with_pairs<R>(
    corpus: &Corpus,
    opts: &VerifyOptions,
    f: impl FnOnce(&[PairCtx<'_>], Vec<SuiteEntry>) -> R,
) -> R {
    let prepared = prepare(corpus, opts);
    let mut unavailable = Vec::new();
    let mut pairs = Vec::new();
    for (g, lat) in corpus.groups.iter().zip(&prepared.lattices) {
        for s in &corpus.sigmas {
            match lat {
                Ok(lat) => pairs.push(PairCtx::new(&g.name, &s.name, lat, &s.sigma, opts)),
                Err(e) => unavailable.push(SuiteEntry {
                    subject: format!("{} {}", g.name, s.name),
                    order: g.group.as_ref().ok().map(|g| g.order()),
                    status: match e {
                        Error::CapExceeded { .. } => EntryStatus::CapExceeded,
                        _ => EntryStatus::Skipped,
                    },
                    checks: 0,
                    violations: 0,
                    detail: Some(e.to_string()),
                }),
            }
        }
    }
    f(&pairs, unavailable)
}

pub fn run_suite(suite: Suite, corpus: &Corpus, opts: &VerifyOptions) -> SuiteReport {
    with_pairs(corpus, opts, |pairs, unavailable| {
        let mut entries = if suite == Suite::Lemmas {
            run_lemmas(pairs, opts)
        } else {
            pairs.par_iter().map(|p| pair_entry(p, suite)).collect()
        };
        entries.extend(unavailable);
        SuiteReport::new(suite, opts, corpus.len(), entries)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Psigmat,
    Pst,
    SigmaNilpotent,
    SigmaSoluble,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [
        Predicate::Psigmat,
        Predicate::Pst,
        Predicate::SigmaNilpotent,
        Predicate::SigmaSoluble,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Psigmat => "psigmat",
            Predicate::Pst => "pst",
            Predicate::SigmaNilpotent => "sigma-nilpotent",
            Predicate::SigmaSoluble => "sigma-soluble",
        }
    }

    /// `pst` ignores `sigma` and uses the all-singletons partition.
    pub fn evaluate(self, lat: &SubgroupLattice, sigma: &SigmaPartition, mode: PermMode) -> bool {
        match self {
            Predicate::Psigmat => is_psigmat_transitive(&SigmaCtx::new(lat, sigma, mode)).holds,
            Predicate::Pst => {
                let sigma0 = SigmaPartition::sigma0();
                is_psigmat_transitive(&SigmaCtx::new(lat, &sigma0, mode)).holds
            }
            Predicate::SigmaNilpotent => crate::classes::is_sigma_nilpotent(lat, sigma),
            Predicate::SigmaSoluble => is_sigma_soluble(lat, sigma),
        }
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown predicate '{}'", s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestOutcome {
    pub check: ManifestCheck,
    pub actual: std::result::Result<bool, String>,
}

impl ManifestOutcome {
    /// `record` entries agree with any computed value.
    pub fn agrees(&self) -> bool {
        match (&self.actual, self.check.expect) {
            (Err(_), _) => false,
            (Ok(_), Expect::Record) => true,
            (Ok(v), Expect::True) => *v,
            (Ok(v), Expect::False) => !*v,
        }
    }
}

/// Evaluates each check against the built-in catalog and σ-configurations.
pub fn evaluate_manifest(manifest: &VerificationManifest, opts: &VerifyOptions) -> Vec<ManifestOutcome> {
    manifest
        .checks
        .par_iter()
        .map(|check| {
            let actual = (|| {
                let entry = catalog::find(&check.group).ok_or_else(|| format!("unknown group '{}'", check.group))?;
                let sigma = catalog::find_sigma(&check.sigma)
                    .ok_or_else(|| format!("unknown sigma '{}'", check.sigma))?
                    .partition();
                let predicate: Predicate = check.predicate.parse()?;
                let group = entry.build().map_err(|e| e.to_string())?;
                let lat = SubgroupLattice::build(Arc::new(group), opts.max_subgroups).map_err(|e| e.to_string())?;
                Ok(predicate.evaluate(&lat, &sigma, opts.mode))
            })();
            ManifestOutcome {
                check: check.clone(),
                actual,
            }
        })
        .collect()
}

type LemmaFn = fn(&PairCtx<'_>, &mut ChaCha8Rng) -> Outcome;

struct LemmaCheck {
    name: &'static str,
    soluble_only: bool,
    run: LemmaFn,
}

/// The sampled checks, in report order.
pub fn lemma_names() -> Vec<&'static str> {
    lemma_checks().iter().map(|c| c.name).collect()
}

fn lemma_checks() -> Vec<LemmaCheck> {
    let c = |name, soluble_only, run: LemmaFn| LemmaCheck {
        name,
        soluble_only,
        run,
    };
    vec![
        c("soluble-is-sigma-full", true, lemma_soluble_full),
        c("nilpotent-class-closure", false, lemma_nilpotent_closure),
        c("residual-of-quotient", false, lemma_residual_quotient),
        c("hall-factorization", false, lemma_hall_factorization),
        c("subnormal-lift", false, lemma_subnormal_lift),
        c("subnormal-intersection", false, lemma_subnormal_intersection),
        c("subnormal-hall-is-normal", false, lemma_subnormal_hall_normal),
        c("subnormal-meets-hall", false, lemma_subnormal_meets_hall),
        c("subnormal-image", false, lemma_subnormal_image),
        c("subnormal-transitive", false, lemma_subnormal_transitive),
        c("permutable-is-subnormal", false, lemma_permutable_subnormal),
        c("permutable-image", false, lemma_permutable_image),
        c("block-permutable-normalizer", true, lemma_block_permutable),
        c("permutable-core-quotient", false, lemma_permutable_core),
        c("psigmat-subnormal-criterion", false, lemma_psigmat_criterion),
        c("psigmat-quotients", false, lemma_psigmat_quotients),
        c("permutable-section-image", false, lemma_permutable_section),
    ]
}

fn run_lemmas(pairs: &[PairCtx<'_>], opts: &VerifyOptions) -> Vec<SuiteEntry> {
    let checks = lemma_checks();
    checks
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let eligible: Vec<&PairCtx<'_>> = pairs.iter().filter(|p| !check.soluble_only || p.soluble).collect();
            let stream = opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let mut instances = 0u64;
            let mut violations = 0u64;
            let mut detail = None;
            let mut error = None;
            let max_attempts = opts.samples.max(1) * 200;
            for _ in 0..max_attempts {
                if instances as usize >= opts.samples {
                    break;
                }
                let Some(p) = eligible.choose(&mut rng) else {
                    break;
                };
                match (check.run)(p, &mut rng) {
                    Ok(None) => {}
                    Ok(Some(Ok(()))) => instances += 1,
                    Ok(Some(Err(d))) => {
                        instances += 1;
                        violations += 1;
                        if detail.is_none() {
                            detail = Some(format!("{}: {}", p.subject(), d));
                        }
                    }
                    Err(e) => {
                        error = Some(e);
                        break;
                    }
                }
            }
            let (status, detail) = match error {
                Some(e @ Error::CapExceeded { .. }) => (EntryStatus::CapExceeded, Some(e.to_string())),
                Some(e) => {
                    violations += 1;
                    (EntryStatus::Violation, Some(e.to_string()))
                }
                None if violations > 0 => (EntryStatus::Violation, detail),
                None if (instances as usize) < opts.samples => {
                    violations += 1;
                    (
                        EntryStatus::Violation,
                        Some(format!("only {} instances satisfied the hypotheses", instances)),
                    )
                }
                None => (EntryStatus::Ok, None),
            };
            SuiteEntry {
                subject: check.name.to_string(),
                order: None,
                status,
                checks: instances,
                violations,
                detail,
            }
        })
        .collect()
}

fn pick(rng: &mut ChaCha8Rng, xs: &[SubId]) -> Option<SubId> {
    xs.choose(rng).copied()
}

fn any_sub(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> SubId {
    rng.gen_range(0..p.lat.len())
}

fn subnormal_sub(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Option<SubId> {
    pick(rng, &p.ctx.subnormal_in(p.lat.top()))
}

fn permutable_sub(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Option<SubId> {
    let set: Vec<SubId> = p.ctx.permutable_in(p.lat.top()).ones().collect();
    pick(rng, &set)
}

fn lemma_soluble_full(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let e = any_sub(p, rng);
    let ok = p
        .sigma
        .signature(p.lat.order(e) as u64)
        .iter()
        .all(|b| is_d_pi_in(p.lat, e, |q| p.sigma.block_of(q) == b));
    verdict(ok, || format!("E = {} is not a D-group for some block", p.show(e)))
}

fn lemma_nilpotent_closure(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let (lat, sigma) = (p.lat, p.sigma);
    let nil = |x| is_sigma_nilpotent_in(lat, sigma, x);
    match rng.gen_range(0..4) {
        0 => {
            let (a, b) = (pick(rng, &p.normals).unwrap(), pick(rng, &p.normals).unwrap());
            if !(nil(a) && nil(b)) {
                return Ok(None);
            }
            let ab = lat.join(a, b);
            verdict(nil(ab), || format!("product {} not sigma-nilpotent", p.show(ab)))
        }
        1 => {
            let e = any_sub(p, rng);
            if !nil(e) {
                return Ok(None);
            }
            let n = pick(rng, &lat.normal_subgroups_in(e)).unwrap();
            verdict(is_sigma_nilpotent_section(lat, sigma, e, n), || {
                format!("{} / {} not sigma-nilpotent", p.show(e), p.show(n))
            })
        }
        2 => {
            let e = any_sub(p, rng);
            if !nil(e) {
                return Ok(None);
            }
            let below: Vec<SubId> = lat.below(e).collect();
            let f = pick(rng, &below).unwrap();
            verdict(nil(f), || format!("subgroup {} of {} not sigma-nilpotent", p.show(f), p.show(e)))
        }
        _ => {
            let e = pick(rng, &p.normals).unwrap();
            let phi = lat.meet(e, lat.frattini());
            if !is_sigma_nilpotent_section(lat, sigma, e, phi) {
                return Ok(None);
            }
            verdict(nil(e), || format!("{} not sigma-nilpotent modulo Frattini part", p.show(e)))
        }
    }
}

fn lemma_residual_quotient(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let n = pick(rng, &p.normals).unwrap();
    let d = p.residual()?;
    let dn = p.lat.join(d, n);
    p.in_quotient(n, |view, qctx| {
        let qd = sigma_nilpotent_residual(&view.lattice, qctx.sigma())?;
        let image = view.image_id(p.lat, dn);
        verdict(qd == image, || format!("N = {}: residual of G/N is not DN/N", p.show(n)))
    })?
}

fn lemma_hall_factorization(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let h = pick(rng, p.coprime_hall()).unwrap();
    let k = any_sub(p, rng);
    let n = if rng.gen_bool(0.5) {
        pick(rng, &p.normals).unwrap()
    } else {
        any_sub(p, rng)
    };
    if !(lat.permutes(h, k) && lat.permutes(h, n) && lat.permutes(k, n)) {
        return Ok(None);
    }
    let ok = crate::embed::hall_factorization_check(lat, n, h, k)?;
    verdict(ok, || format!("N = {}, H = {}, K = {}", p.show(n), p.show(h), p.show(k)))
}

fn lemma_subnormal_lift(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let n = pick(rng, &p.normals).unwrap();
    let k = pick(rng, &lat.between(n, lat.top())).unwrap();
    let image_subnormal = p.in_quotient(n, |view, qctx| {
        qctx.is_subnormal_in(view.image_id(lat, k), view.lattice.top())
    })?;
    if !image_subnormal {
        return Ok(None);
    }
    verdict(p.ctx.is_subnormal_in(k, lat.top()), || {
        format!("K = {} over N = {}", p.show(k), p.show(n))
    })
}

fn lemma_subnormal_intersection(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let a = subnormal_sub(p, rng).unwrap();
    let k = any_sub(p, rng);
    let ak = p.lat.meet(a, k);
    verdict(p.ctx.is_subnormal_in(ak, k), || format!("A = {}, K = {}", p.show(a), p.show(k)))
}

fn lemma_subnormal_hall_normal(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let a = subnormal_sub(p, rng).unwrap();
    if is_sigma_hall_subgroup(p.lat, p.sigma, a).is_none() {
        return Ok(None);
    }
    verdict(p.lat.is_normal(a), || format!("A = {}", p.show(a)))
}

fn lemma_subnormal_meets_hall(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let a = subnormal_sub(p, rng).unwrap();
    let halls: Vec<SubId> = p.sigma_hall().iter().copied().filter(|&h| h != lat.trivial()).collect();
    let Some(h) = pick(rng, &halls) else {
        return Ok(None);
    };
    let pi = p.sigma.signature(lat.order(h) as u64);
    let sa = p.sigma.signature(lat.order(a) as u64);
    if sa.is_disjoint(&pi) {
        return Ok(None);
    }
    let ah = lat.meet(a, h);
    let want = crate::primes::part(lat.order(a) as u64, |q| pi.contains(p.sigma.block_of(q))) as usize;
    verdict(ah != lat.trivial() && lat.order(ah) == want, || {
        format!("A = {}, H = {}", p.show(a), p.show(h))
    })
}

fn lemma_subnormal_image(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let a = subnormal_sub(p, rng).unwrap();
    let n = pick(rng, &p.normals).unwrap();
    let an = lat.join(a, n);
    let ok = p.in_quotient(n, |view, qctx| {
        qctx.is_subnormal_in(view.image_id(lat, an), view.lattice.top())
    })?;
    verdict(ok, || format!("A = {}, N = {}", p.show(a), p.show(n)))
}

fn lemma_subnormal_transitive(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let a = subnormal_sub(p, rng).unwrap();
    let below: Vec<SubId> = lat.below(a).collect();
    let k = pick(rng, &below).unwrap();
    if !p.ctx.is_subnormal_in(k, a) {
        return Ok(None);
    }
    verdict(p.ctx.is_subnormal_in(k, lat.top()), || {
        format!("K = {} in A = {}", p.show(k), p.show(a))
    })
}

fn lemma_permutable_subnormal(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let Some(h) = permutable_sub(p, rng) else {
        return Ok(None);
    };
    verdict(p.ctx.is_subnormal_in(h, p.lat.top()), || format!("H = {}", p.show(h)))
}

fn lemma_permutable_image(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let Some(h) = permutable_sub(p, rng) else {
        return Ok(None);
    };
    let r = pick(rng, &p.normals).unwrap();
    let hr = lat.join(h, r);
    let ok = p.in_quotient(r, |view, qctx| {
        qctx.is_permutable_in(view.image_id(lat, hr), view.lattice.top())
    })?;
    verdict(ok, || format!("H = {}, R = {}", p.show(h), p.show(r)))
}

fn lemma_block_permutable(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let blocks: Vec<_> = p.sigma.signature(lat.order(lat.top()) as u64).iter().collect();
    let Some(&b) = blocks.choose(rng) else {
        return Ok(None);
    };
    let k = any_sub(p, rng);
    if !p.sigma.is_block_number(lat.order(k) as u64, b) {
        return Ok(None);
    }
    let upper = o_sigma_upper(lat, p.sigma, b);
    let lhs = p.ctx.is_permutable_in(k, lat.top());
    let rhs = lat.le(upper, lat.normalizer_id(k));
    verdict(lhs == rhs, || {
        format!("K = {}: permutable {} but normalizes upper {}", p.show(k), lhs, rhs)
    })
}

fn lemma_permutable_core(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let Some(h) = permutable_sub(p, rng) else {
        return Ok(None);
    };
    let core = lat.core_in(h, lat.top());
    verdict(is_sigma_nilpotent_section(lat, p.sigma, h, core), || format!("H = {}", p.show(h)))
}

fn lemma_psigmat_criterion(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let e = any_sub(p, rng);
    let a = is_psigmat_transitive_in(&p.ctx, e).holds;
    let b = is_psigmat_via_subnormal_in(&p.ctx, e).holds;
    verdict(a == b, || {
        format!("E = {}: transitivity {} but subnormal criterion {}", p.show(e), a, b)
    })
}

fn lemma_psigmat_quotients(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    if !p.psigmat() {
        return Ok(None);
    }
    let n = pick(rng, &p.normals).unwrap();
    let ok = p.in_quotient(n, |_, qctx| is_psigmat_transitive(qctx).holds)?;
    verdict(ok, || format!("G/N not PsigmaT for N = {}", p.show(n)))
}

fn lemma_permutable_section(p: &PairCtx<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let lat = p.lat;
    let h = any_sub(p, rng);
    let inside: Vec<SubId> = p.ctx.permutable_in(h).ones().collect();
    let Some(k) = pick(rng, &inside) else {
        return Ok(None);
    };
    let n = pick(rng, &p.normals).unwrap();
    let (kn, hn) = (lat.join(k, n), lat.join(h, n));
    let ok = p.in_quotient(n, |view, qctx| {
        qctx.is_permutable_in(view.image_id(lat, kn), view.image_id(lat, hn))
    })?;
    verdict(ok, || {
        format!("K = {} in H = {}, N = {}", p.show(k), p.show(h), p.show(n))
    })
}
