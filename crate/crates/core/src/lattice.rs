//! The complete subgroup lattice of a materialized group.
//!
//! Subgroups are enumerated by cyclic extension: start from all cyclic
//! subgroups and keep joining with cyclic subgroups until nothing new
//! appears. The final list is sorted by order and then by member list, and
//! every other subgroup-valued query returns an index ([`SubId`]) into it.
//!
//! Most queries take an ambient subgroup `r` as well, so predicates "inside
//! `H`" are answered from the same lattice: the subgroups of `H` are exactly
//! the lattice members below `H`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::primes;

/// Index into [`SubgroupLattice`]'s canonical subgroup list.
pub type SubId = usize;

pub const DEFAULT_MAX_SUBGROUPS: usize = 20_000;

#[derive(Debug)]
struct Entry {
    sub: Subgroup,
    gens: Vec<Elem>,
    supers: FixedBitSet,
    subs: FixedBitSet,
    normalizer: OnceLock<Subgroup>,
}

#[derive(Debug)]
pub struct SubgroupLattice {
    group: Arc<Group>,
    entries: Vec<Entry>,
    index: HashMap<FixedBitSet, SubId>,
}

/// `1 = T0 < T1 < … < Tk = G`, each term normal in `G` and each factor chief.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub terms: Vec<SubId>,
}

impl ChiefSeries {
    /// Consecutive pairs `(lower, upper)`.
    pub fn factors(&self) -> impl Iterator<Item = (SubId, SubId)> + '_ {
        self.terms.windows(2).map(|w| (w[0], w[1]))
    }
}

impl SubgroupLattice {
    pub fn build(group: impl Into<Arc<Group>>, max_subgroups: usize) -> Result<Self> {
        let group: Arc<Group> = group.into();
        let g = &*group;
        let cap = Error::CapExceeded {
            what: "subgroup count",
            limit: max_subgroups,
        };

        // cyclic subgroups, one generator each
        let mut found: HashMap<FixedBitSet, Vec<Elem>> = HashMap::new();
        let mut cyclic: Vec<(Elem, Subgroup)> = Vec::new();
        let mut covered = FixedBitSet::with_capacity(g.order());
        for e in 0..g.order() {
            if covered.contains(e) {
                continue;
            }
            let c = g.generated_subgroup([e]);
            // every generator of ⟨e⟩ gives the same subgroup
            for x in c.elements() {
                if g.element_order(x) == c.order() {
                    covered.insert(x);
                }
            }
            if !found.contains_key(c.members()) {
                found.insert(c.members().clone(), if e == 0 { vec![] } else { vec![e] });
                cyclic.push((e, c));
            }
        }
        if found.len() > max_subgroups {
            return Err(cap);
        }

        let mut queue: Vec<(Subgroup, Vec<Elem>)> = cyclic
            .iter()
            .map(|(e, c)| (c.clone(), if *e == 0 { vec![] } else { vec![*e] }))
            .collect();
        let mut head = 0;
        while head < queue.len() {
            let (s, gens) = queue[head].clone();
            head += 1;
            for (c, _) in &cyclic {
                if s.contains(*c) {
                    continue;
                }
                let t = g.extend_subgroup(&s, &[*c]);
                if found.contains_key(t.members()) {
                    continue;
                }
                let mut tg = gens.clone();
                tg.push(*c);
                found.insert(t.members().clone(), tg.clone());
                if found.len() > max_subgroups {
                    return Err(cap);
                }
                queue.push((t, tg));
            }
        }

        let mut list: Vec<(Vec<usize>, Subgroup, Vec<Elem>)> = queue
            .into_iter()
            .map(|(s, gens)| (s.elements().collect(), s, gens))
            .collect();
        list.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));

        let n = list.len();
        let mut entries: Vec<Entry> = list
            .into_iter()
            .map(|(_, sub, gens)| Entry {
                sub,
                gens,
                supers: FixedBitSet::with_capacity(n),
                subs: FixedBitSet::with_capacity(n),
                normalizer: OnceLock::new(),
            })
            .collect();
        for i in 0..n {
            for j in i..n {
                let (oi, oj) = (entries[i].sub.order(), entries[j].sub.order());
                if oj % oi == 0 && entries[i].sub.is_subgroup_of(&entries[j].sub) {
                    entries[i].supers.insert(j);
                    entries[j].subs.insert(i);
                }
            }
        }
        let index = entries
            .iter()
            .enumerate()
            .map(|(k, e)| (e.sub.members().clone(), k))
            .collect();
        Ok(SubgroupLattice {
            group,
            entries,
            index,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<SubId> {
        0..self.entries.len()
    }

    pub fn trivial(&self) -> SubId {
        0
    }

    pub fn top(&self) -> SubId {
        self.entries.len() - 1
    }

    pub fn subgroup(&self, id: SubId) -> &Subgroup {
        &self.entries[id].sub
    }

    pub fn order(&self, id: SubId) -> usize {
        self.entries[id].sub.order()
    }

    /// A generating set of the subgroup (empty for the trivial subgroup).
    pub fn gens(&self, id: SubId) -> &[Elem] {
        &self.entries[id].gens
    }

    pub fn id_of(&self, sub: &Subgroup) -> Option<SubId> {
        self.index.get(sub.members()).copied()
    }

    pub fn id_of_members(&self, members: &FixedBitSet) -> Option<SubId> {
        self.index.get(members).copied()
    }

    /// `a ≤ b`.
    pub fn le(&self, a: SubId, b: SubId) -> bool {
        self.entries[a].supers.contains(b)
    }

    pub fn supers(&self, a: SubId) -> &FixedBitSet {
        &self.entries[a].supers
    }

    pub fn subs(&self, a: SubId) -> &FixedBitSet {
        &self.entries[a].subs
    }

    /// Subgroups of `r`, ascending.
    pub fn below(&self, r: SubId) -> impl Iterator<Item = SubId> + '_ {
        self.entries[r].subs.ones()
    }

    /// Subgroups `x` with `a ≤ x ≤ r`, ascending.
    pub fn between(&self, a: SubId, r: SubId) -> Vec<SubId> {
        self.entries[a]
            .supers
            .intersection(&self.entries[r].subs)
            .collect()
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        self.entries[a]
            .supers
            .intersection(&self.entries[b].supers)
            .next()
            .expect("the whole group bounds every pair")
    }

    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        let mut m = self.entries[a].sub.members().clone();
        m.intersect_with(self.entries[b].sub.members());
        self.index[&m]
    }

    /// `AB = BA`.
    pub fn permutes(&self, a: SubId, b: SubId) -> bool {
        let meet = self.entries[a]
            .sub
            .members()
            .intersection_count(self.entries[b].sub.members());
        self.order(a) * self.order(b) == meet * self.order(self.join(a, b))
    }

    pub fn normalizer(&self, a: SubId) -> &Subgroup {
        self.entries[a].normalizer.get_or_init(|| {
            let g = &*self.group;
            let gens = &self.entries[a].gens;
            let sub = &self.entries[a].sub;
            let mut members = FixedBitSet::with_capacity(g.order());
            for x in 0..g.order() {
                if g.normalizes(x, gens, sub) {
                    members.insert(x);
                }
            }
            Subgroup::from_members(members)
        })
    }

    pub fn normalizer_id(&self, a: SubId) -> SubId {
        self.id_of(self.normalizer(a)).expect("normalizer is a subgroup")
    }

    /// `a ⊴ r` (false unless `a ≤ r`).
    pub fn is_normal_in(&self, a: SubId, r: SubId) -> bool {
        self.le(a, r)
            && self
                .subgroup(r)
                .members()
                .is_subset(self.normalizer(a).members())
    }

    pub fn is_normal(&self, a: SubId) -> bool {
        self.is_normal_in(a, self.top())
    }

    pub fn conjugate(&self, a: SubId, g: Elem) -> SubId {
        let c = self.group.conjugate_subgroup(self.subgroup(a), g);
        self.index[c.members()]
    }

    /// Conjugates of `a` under elements of `r`, starting with `a`.
    pub fn conjugates_in(&self, a: SubId, r: SubId) -> Vec<SubId> {
        let mut out = vec![a];
        let mut seen = FixedBitSet::with_capacity(self.len());
        seen.insert(a);
        let mut head = 0;
        while head < out.len() {
            for &g in self.gens(r) {
                let c = self.conjugate(out[head], g);
                if !seen.put(c) {
                    out.push(c);
                }
            }
            head += 1;
        }
        out
    }

    /// Largest subgroup of `a` normal in `r`.
    pub fn core_in(&self, a: SubId, r: SubId) -> SubId {
        let candidates: Vec<SubId> = self.below(a).collect();
        candidates
            .into_iter()
            .rev()
            .find(|&x| self.is_normal_in(x, r))
            .expect("the trivial subgroup is normal")
    }

    /// Smallest normal subgroup of `r` containing `a` (`a ≤ r`).
    pub fn normal_closure_in(&self, a: SubId, r: SubId) -> SubId {
        self.between(a, r)
            .into_iter()
            .find(|&x| self.is_normal_in(x, r))
            .expect("r is normal in itself")
    }

    pub fn normal_subgroups_in(&self, r: SubId) -> Vec<SubId> {
        self.below(r).filter(|&x| self.is_normal_in(x, r)).collect()
    }

    pub fn normal_subgroups(&self) -> Vec<SubId> {
        self.normal_subgroups_in(self.top())
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<SubId> {
        let normals = self.normal_subgroups();
        normals
            .iter()
            .copied()
            .filter(|&x| x != 0)
            .filter(|&x| !normals.iter().any(|&y| y != 0 && y != x && self.le(y, x)))
            .collect()
    }

    pub fn maximal_subgroups_in(&self, r: SubId) -> Vec<SubId> {
        self.below(r)
            .filter(|&x| x != r)
            .filter(|&x| self.between(x, r).len() == 2)
            .collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<SubId> {
        self.maximal_subgroups_in(self.top())
    }

    /// Intersection of all maximal subgroups (the whole group if there are none).
    pub fn frattini(&self) -> SubId {
        let mut members = self.subgroup(self.top()).members().clone();
        for m in self.maximal_subgroups() {
            members.intersect_with(self.subgroup(m).members());
        }
        self.index[&members]
    }

    /// Chief series choosing the first candidate in canonical order.
    pub fn chief_series(&self, through: Option<SubId>) -> Result<ChiefSeries> {
        self.chief_series_in(self.top(), through, |_| 0)
    }

    /// Chief series of the subgroup `r` (terms normal in `r`), where `choose`
    /// picks among the minimal candidates, given in canonical order, at each
    /// step. A `through` term is honored by building the series below it
    /// first and then above it.
    pub fn chief_series_in(
        &self,
        r: SubId,
        through: Option<SubId>,
        mut choose: impl FnMut(&[SubId]) -> usize,
    ) -> Result<ChiefSeries> {
        let normals = self.normal_subgroups_in(r);
        let mut terms = vec![self.trivial()];
        if let Some(n) = through {
            if !self.is_normal_in(n, r) {
                return Err(Error::NotNormal("chief series through a non-normal subgroup"));
            }
            self.chief_segment(&normals, n, &mut terms, &mut choose);
        }
        self.chief_segment(&normals, r, &mut terms, &mut choose);
        Ok(ChiefSeries { terms })
    }

    fn chief_segment(
        &self,
        normals: &[SubId],
        to: SubId,
        terms: &mut Vec<SubId>,
        choose: &mut impl FnMut(&[SubId]) -> usize,
    ) {
        let mut cur = *terms.last().unwrap();
        while cur != to {
            let above: Vec<SubId> = normals
                .iter()
                .copied()
                .filter(|&x| x != cur && self.le(cur, x) && self.le(x, to))
                .collect();
            let minimal: Vec<SubId> = above
                .iter()
                .copied()
                .filter(|&x| !above.iter().any(|&y| y != x && self.le(y, x)))
                .collect();
            let pick = choose(&minimal).min(minimal.len() - 1);
            cur = minimal[pick];
            terms.push(cur);
        }
    }

    /// Subgroups of `r` whose order is the part of `|r|` on primes accepted by `keep`.
    pub fn hall_subgroups_in(&self, r: SubId, keep: impl Fn(u64) -> bool) -> Vec<SubId> {
        let target = primes::part(self.order(r) as u64, keep) as usize;
        self.below(r).filter(|&x| self.order(x) == target).collect()
    }

    pub fn hall_subgroups(&self, pi: &[u64]) -> Vec<SubId> {
        self.hall_subgroups_in(self.top(), |p| pi.contains(&p))
    }

    /// Some `M ≤ r` with `M ∩ N = 1` and `|M||N| = |r|`.
    pub fn complement_in(&self, n: SubId, r: SubId) -> Option<SubId> {
        let target = self.order(r) / self.order(n);
        self.below(r).find(|&m| {
            self.order(m) == target
                && self
                    .subgroup(m)
                    .members()
                    .intersection_count(self.subgroup(n).members())
                    == 1
        })
    }

    pub fn complement_search(&self, n: SubId) -> Result<Option<SubId>> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal("complement of a non-normal subgroup"));
        }
        Ok(self.complement_in(n, self.top()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn lattice(degree: usize, gens: &[&str]) -> SubgroupLattice {
        let gens = gens
            .iter()
            .map(|s| parse_cycles(s, degree, 1, 1).unwrap())
            .collect();
        let g = Group::from_generators(degree, gens, 10_000).unwrap();
        SubgroupLattice::build(g, DEFAULT_MAX_SUBGROUPS).unwrap()
    }

    fn id(l: &SubgroupLattice, gens: &[&str]) -> SubId {
        let g = l.group();
        let s = g.generated_subgroup(
            gens.iter()
                .map(|s| g.index_of(&parse_cycles(s, g.degree(), 1, 1).unwrap()).unwrap()),
        );
        l.id_of(&s).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(lattice(6, &["(1 2 3 4 5 6)"]).len(), 4);
        assert_eq!(lattice(4, &["(1 2 3 4)", "(1 2)"]).len(), 30);
        assert_eq!(lattice(1, &[]).len(), 1);
        assert_eq!(lattice(5, &["(1 2 3 4 5)", "(1 2 3)"]).len(), 59);
    }

    #[test]
    fn s4_normal_structure() {
        let l = lattice(4, &["(1 2 3 4)", "(1 2)"]);
        let normals: Vec<usize> = l.normal_subgroups().iter().map(|&x| l.order(x)).collect();
        assert_eq!(normals, vec![1, 4, 12, 24]);
        let v4 = id(&l, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(l.minimal_normal_subgroups(), vec![v4]);
        let cs = l.chief_series(None).unwrap();
        let orders: Vec<usize> = cs.terms.iter().map(|&x| l.order(x)).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(l.frattini(), 0);
        let t = id(&l, &["(1 2)"]);
        assert!(matches!(l.chief_series(Some(t)), Err(Error::NotNormal(_))));
    }

    #[test]
    fn frattini_and_halls() {
        let c4 = lattice(4, &["(1 2 3 4)"]);
        assert_eq!(c4.order(c4.frattini()), 2);
        let s3 = lattice(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(s3.frattini(), 0);
        assert_eq!(s3.hall_subgroups(&[3]), vec![id(&s3, &["(1 2 3)"])]);
        assert_eq!(s3.hall_subgroups(&[2, 3]), vec![s3.top()]);
        let a4 = lattice(4, &["(1 2 3)", "(1 2)(3 4)"]);
        assert_eq!(a4.hall_subgroups(&[3]).len(), 4);
        assert_eq!(a4.hall_subgroups(&[5]), vec![0]);
    }

    #[test]
    fn complements() {
        let s3 = lattice(3, &["(1 2 3)", "(1 2)"]);
        let a3 = id(&s3, &["(1 2 3)"]);
        let m = s3.complement_search(a3).unwrap().unwrap();
        assert_eq!(s3.order(m), 2);
        assert_eq!(s3.complement_search(0).unwrap(), Some(s3.top()));
        let c4 = lattice(4, &["(1 2 3 4)"]);
        let c2 = id(&c4, &["(1 3)(2 4)"]);
        assert_eq!(c4.complement_search(c2).unwrap(), None);
    }

    #[test]
    fn joins_meets_and_relative_queries() {
        let l = lattice(4, &["(1 2 3 4)", "(1 2)"]);
        let a = id(&l, &["(1 2)"]);
        let b = id(&l, &["(2 3)"]);
        assert_eq!(l.order(l.join(a, b)), 6);
        assert_eq!(l.meet(a, b), 0);
        assert!(!l.permutes(a, b));
        let a4 = id(&l, &["(1 2 3)", "(1 2)(3 4)"]);
        let k = id(&l, &["(1 2)(3 4)"]);
        let v4 = id(&l, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(l.is_normal_in(k, v4));
        assert!(!l.is_normal_in(k, a4));
        assert_eq!(l.core_in(k, a4), 0);
        assert_eq!(l.normal_closure_in(k, a4), v4);
        assert_eq!(l.conjugates_in(k, a4).len(), 3);
        assert_eq!(l.conjugates_in(k, v4), vec![k]);
    }

    #[test]
    fn lattice_is_closed_under_conjugation() {
        let l = lattice(4, &["(1 2 3 4)", "(1 2)"]);
        for s in l.ids() {
            for g in 0..l.group().order() {
                let c = l.group().conjugate_subgroup(l.subgroup(s), g);
                assert!(l.id_of(&c).is_some());
            }
        }
    }
}
