//! Fully materialized finite permutation groups.
//!
//! A [`Group`] stores every element in lexicographic order of image arrays,
//! together with a complete multiplication table. Element `0` is always the
//! identity. A [`Subgroup`] is a bitset of element indices into its parent.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::primes;

/// Index of an element in its group's canonical element list.
pub type Elem = usize;

#[derive(Clone, Debug)]
pub struct Group {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
}

impl Subgroup {
    /// Wraps a member set without checking closure.
    pub fn from_members(members: FixedBitSet) -> Self {
        let order = members.count_ones(..);
        Subgroup { members, order }
    }

    pub fn trivial(group_order: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(group_order);
        members.insert(0);
        Subgroup { members, order: 1 }
    }

    pub fn whole(group_order: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(group_order);
        members.insert_range(..);
        Subgroup {
            members,
            order: group_order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup::from_members(members)
    }
}

/// A quotient `G/N` realized on the cosets of `N`, with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// `projection[g]` is the index in `group` of the image of `g`.
    pub projection: Vec<Elem>,
}

impl Quotient {
    pub fn image(&self, sub: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.group.order());
        for e in sub.elements() {
            members.insert(self.projection[e]);
        }
        Subgroup::from_members(members)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.projection.len());
        for (g, &q) in self.projection.iter().enumerate() {
            if sub.contains(q) {
                members.insert(g);
            }
        }
        Subgroup::from_members(members)
    }
}

impl Group {
    /// Closure of `gens` under composition, by breadth-first search.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>, max_order: usize) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::BadPermutation(format!(
                    "generator {} has degree {}, expected {}",
                    g,
                    g.degree(),
                    degree
                )));
            }
            Permutation::from_images(g.images().to_vec())?;
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= max_order {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            limit: max_order,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Group::from_sorted_elements(degree, elements, gens)
    }

    /// Builds tables for a sorted, closed element list generated by `gens`.
    fn from_sorted_elements(
        degree: usize,
        elements: Vec<Permutation>,
        generators: Vec<Permutation>,
    ) -> Result<Group> {
        let n = elements.len();
        let index: HashMap<&Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, p)| (p, k as u32))
            .collect();
        let ng = generators.len();
        let mut rgen = vec![0u32; n * ng];
        for (x, p) in elements.iter().enumerate() {
            for (j, g) in generators.iter().enumerate() {
                let y = p.then(g);
                rgen[x * ng + j] = *index.get(&y).ok_or_else(|| {
                    Error::Inconsistent("element list is not closed under its generators".into())
                })?;
            }
        }
        // spanning tree from the identity: element b = parent[b] * gen[label[b]]
        let mut parent = vec![u32::MAX; n];
        let mut label = vec![0u32; n];
        let mut order_bfs = Vec::with_capacity(n);
        parent[0] = 0;
        order_bfs.push(0usize);
        let mut head = 0;
        while head < order_bfs.len() {
            let x = order_bfs[head];
            head += 1;
            for j in 0..ng {
                let y = rgen[x * ng + j] as usize;
                if parent[y] == u32::MAX {
                    parent[y] = x as u32;
                    label[y] = j as u32;
                    order_bfs.push(y);
                }
            }
        }
        if order_bfs.len() != n {
            return Err(Error::Inconsistent(
                "generators do not generate the element list".into(),
            ));
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &b in &order_bfs[1..] {
                let via = row[parent[b] as usize] as usize;
                row[b] = rgen[via * ng + label[b] as usize];
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&c| c == 0).expect("group has inverses") as u32;
        }
        let mut elem_order = vec![1u32; n];
        for a in 1..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        Ok(Group {
            name: None,
            degree,
            generators,
            elements,
            mul,
            inv,
            elem_order,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, e: Elem) -> &Permutation {
        &self.elements[e]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.elements.binary_search(p).ok()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        self.elem_order[a] as usize
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self.order())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self.order())
    }

    pub fn subgroup_from_elements(&self, elems: impl IntoIterator<Item = Elem>) -> Result<Subgroup> {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.extend(elems);
        let sub = Subgroup::from_members(members);
        if !self.is_closed(sub.members()) {
            return Err(Error::PreconditionFailed(
                "element set is not a subgroup".into(),
            ));
        }
        Ok(sub)
    }

    /// True iff the set is nonempty and closed under multiplication (hence a subgroup).
    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        let elems: Vec<Elem> = set.ones().collect();
        !elems.is_empty()
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated_subgroup(&self, seed: impl IntoIterator<Item = Elem>) -> Subgroup {
        let gens: Vec<Elem> = seed.into_iter().filter(|&g| g != 0).collect();
        self.closure_from(Subgroup::trivial(self.order()).members.clone(), &gens)
    }

    fn closure_from(&self, mut members: FixedBitSet, gens: &[Elem]) -> Subgroup {
        let mut queue: Vec<Elem> = members.ones().collect();
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members.put(y) {
                    queue.push(y);
                }
            }
        }
        Subgroup::from_members(members)
    }

    /// Smallest subgroup containing `sub` and `extra`.
    pub fn extend_subgroup(&self, sub: &Subgroup, extra: &[Elem]) -> Subgroup {
        let mut gens = self.small_generating_set(sub);
        gens.extend_from_slice(extra);
        let mut members = sub.members.clone();
        // start the search from every member so products with old elements are covered
        let mut queue: Vec<Elem> = members.ones().collect();
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.put(y) {
                    queue.push(y);
                }
            }
        }
        Subgroup::from_members(members)
    }

    /// Greedy generating set: members in canonical order that are not yet generated.
    pub fn small_generating_set(&self, sub: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for e in sub.elements() {
            if current.order() == sub.order() {
                break;
            }
            if !current.contains(e) {
                gens.push(e);
                current = self.generated_subgroup(gens.iter().copied());
            }
        }
        gens
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = self.small_generating_set(a);
        gens.extend(self.small_generating_set(b));
        self.generated_subgroup(gens)
    }

    pub fn conjugate_subgroup(&self, a: &Subgroup, g: Elem) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            members.insert(self.conj(x, g));
        }
        Subgroup {
            members,
            order: a.order,
        }
    }

    /// All distinct conjugates of `a`, in discovery order starting with `a`.
    pub fn conjugates(&self, a: &Subgroup) -> Vec<Subgroup> {
        let gens = self.generator_indices();
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut out = vec![a.clone()];
        seen.insert(a.clone());
        let mut head = 0;
        while head < out.len() {
            for &g in &gens {
                let c = self.conjugate_subgroup(&out[head], g);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            head += 1;
        }
        out
    }

    pub fn generator_indices(&self) -> Vec<Elem> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generator is an element"))
            .collect()
    }

    /// Whether conjugation by `g` maps `a` onto itself.
    pub fn normalizes(&self, g: Elem, a_gens: &[Elem], a: &Subgroup) -> bool {
        a_gens.iter().all(|&h| a.contains(self.conj(h, g)))
    }

    pub fn normalizer(&self, a: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(a);
        let mut members = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if self.normalizes(g, &gens, a) {
                members.insert(g);
            }
        }
        Subgroup::from_members(members)
    }

    /// `a ⊴ b`, assuming `a ≤ b`.
    pub fn is_normal_in(&self, a: &Subgroup, b: &Subgroup) -> bool {
        let gens = self.small_generating_set(a);
        let bgens = self.small_generating_set(b);
        bgens.iter().all(|&g| self.normalizes(g, &gens, a))
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        let gens = self.small_generating_set(a);
        self.generator_indices()
            .iter()
            .all(|&g| self.normalizes(g, &gens, a))
    }

    pub fn centralizer(&self, set: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(set);
        let mut members = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&h| self.mul(g, h) == self.mul(h, g)) {
                members.insert(g);
            }
        }
        Subgroup::from_members(members)
    }

    pub fn centre(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// `C_G(H/K) = {g : [h, g] ∈ K for all h ∈ H}`.
    pub fn centralizer_of_factor(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        if !k.is_subgroup_of(h) || !self.is_normal_in(k, h) {
            return Err(Error::NotNormal("K is not a normal subgroup of H"));
        }
        // checking generators of H suffices once K ⊴ H
        let hgens = self.small_generating_set(h);
        let mut members = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if hgens.iter().all(|&x| k.contains(self.commutator(x, g))) {
                members.insert(g);
            }
        }
        Ok(Subgroup::from_members(members))
    }

    pub fn core(&self, a: &Subgroup) -> Subgroup {
        let mut members = a.members.clone();
        for c in self.conjugates(a) {
            members.intersect_with(&c.members);
        }
        Subgroup::from_members(members)
    }

    pub fn normal_closure(&self, a: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for c in self.conjugates(a) {
            gens.extend(self.small_generating_set(&c));
        }
        self.generated_subgroup(gens)
    }

    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            for y in b.elements() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `AB = BA`, tested as `|A||B| / |A∩B| = |⟨A,B⟩|`.
    pub fn product_permutes(&self, a: &Subgroup, b: &Subgroup) -> bool {
        let meet = a.members.intersection_count(&b.members);
        a.order * b.order == meet * self.join(a, b).order
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal("quotient by a non-normal subgroup"));
        }
        let size = self.order();
        let mut coset_of = vec![u32::MAX; size];
        let mut reps = Vec::new();
        for x in 0..size {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for m in n.elements() {
                coset_of[self.mul(m, x)] = c;
            }
        }
        let m = reps.len();
        let action = |g: Elem| -> Permutation {
            Permutation::from_images_unchecked(
                reps.iter()
                    .map(|&r| coset_of[self.mul(r, g)])
                    .collect(),
            )
        };
        let gens: Vec<Permutation> = self.generator_indices().into_iter().map(action).collect();
        let group = Group::from_generators(m, gens, size)?;
        let projection = (0..size)
            .map(|g| group.index_of(&action(g)).expect("image lies in the quotient"))
            .collect();
        Ok(Quotient { group, projection })
    }

    /// The subgroup as a group in its own right, with the embedding
    /// `embedding[i]` = parent index of the subgroup's element `i`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (Group, Vec<Elem>) {
        let embedding: Vec<Elem> = s.elements().collect();
        let mut back = vec![u32::MAX; self.order()];
        for (i, &e) in embedding.iter().enumerate() {
            back[e] = i as u32;
        }
        let n = embedding.len();
        let mut mul = vec![0u32; n * n];
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                mul[i * n + j] = back[self.mul(a, b)];
            }
        }
        let inv = embedding.iter().map(|&a| back[self.inv(a)]).collect();
        let elem_order = embedding.iter().map(|&a| self.elem_order[a]).collect();
        let generators = self
            .small_generating_set(s)
            .into_iter()
            .map(|e| self.elements[e].clone())
            .collect();
        let group = Group {
            name: None,
            degree: self.degree,
            generators,
            elements: embedding.iter().map(|&e| self.elements[e].clone()).collect(),
            mul,
            inv,
            elem_order,
        };
        (group, embedding)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(g1: &Group, g2: &Group) -> Group {
        let degree = g1.degree + g2.degree;
        let mut elements = Vec::with_capacity(g1.order() * g2.order());
        for a in &g1.elements {
            for b in &g2.elements {
                let mut images = a.images().to_vec();
                images.extend(b.images().iter().map(|&i| i + g1.degree as u32));
                elements.push(Permutation::from_images_unchecked(images));
            }
        }
        let mut gens: Vec<Permutation> = g1
            .generators
            .iter()
            .map(|g| g.shifted(0, degree))
            .collect();
        gens.extend(g2.generators.iter().map(|g| g.shifted(g1.degree, degree)));
        let name = match (g1.name(), g2.name()) {
            (Some(a), Some(b)) => Some(format!("{}x{}", a, b)),
            _ => None,
        };
        let mut g = Group::from_sorted_elements(degree, elements, gens)
            .expect("direct product of closed groups is closed");
        g.name = name;
        g
    }

    /// `{(a, b) : iso(a N1) = b N2}` inside the direct product.
    ///
    /// `iso[q]` maps element `q` of `G1/N1` (as returned by [`Group::quotient`])
    /// to an element of `G2/N2`.
    pub fn subdirect_product(
        g1: &Group,
        g2: &Group,
        n1: &Subgroup,
        n2: &Subgroup,
        iso: &[Elem],
    ) -> Result<Group> {
        let q1 = g1.quotient(n1)?;
        let q2 = g2.quotient(n2)?;
        let size = q1.group.order();
        if iso.len() != size || q2.group.order() != size {
            return Err(Error::BadIso(format!(
                "quotient orders {} and {} with a map of length {}",
                size,
                q2.group.order(),
                iso.len()
            )));
        }
        let mut hit = vec![false; size];
        for &t in iso {
            if t >= size || std::mem::replace(&mut hit[t], true) {
                return Err(Error::BadIso("map is not a bijection".into()));
            }
        }
        for a in 0..size {
            for b in 0..size {
                if iso[q1.group.mul(a, b)] != q2.group.mul(iso[a], iso[b]) {
                    return Err(Error::BadIso("map does not respect products".into()));
                }
            }
        }
        let full = Group::direct_product(g1, g2);
        let o2 = g2.order();
        // direct product elements are ordered (a, b) with a-major order
        let mut members = FixedBitSet::with_capacity(full.order());
        for a in 0..g1.order() {
            for b in 0..o2 {
                if iso[q1.projection[a]] == q2.projection[b] {
                    members.insert(a * o2 + b);
                }
            }
        }
        let sub = Subgroup::from_members(members);
        debug_assert!(full.is_closed(sub.members()));
        Ok(full.subgroup_as_group(&sub).0)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every Sylow subgroup normal, tested by counting p-elements.
    pub fn is_nilpotent(&self) -> bool {
        primes::factorize(self.order() as u64).into_iter().all(|(p, e)| {
            let part = p.pow(e) as usize;
            let count = self
                .elem_order
                .iter()
                .filter(|&&o| primes::is_power_of(o as u64, p))
                .count();
            count == part
        })
    }

    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seed = Vec::new();
        let mut seen = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            for y in b.elements() {
                let c = self.commutator(x, y);
                if !seen.put(c) {
                    seed.push(c);
                }
            }
        }
        self.generated_subgroup(seed)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_cyclic(&self) -> bool {
        self.elem_order.iter().any(|&o| o as usize == self.order())
    }

    /// gcd(|A|, |G:A|) = 1.
    pub fn is_hall(&self, a: &Subgroup) -> bool {
        a.order().gcd(&(self.order() / a.order())) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens = gens
            .iter()
            .map(|s| parse_cycles(s, degree, 1, 1).unwrap())
            .collect();
        Group::from_generators(degree, gens, 10_000).unwrap()
    }

    fn elem(g: &Group, s: &str) -> Elem {
        g.index_of(&parse_cycles(s, g.degree(), 1, 1).unwrap()).unwrap()
    }

    fn sub(g: &Group, gens: &[&str]) -> Subgroup {
        g.generated_subgroup(gens.iter().map(|s| elem(g, s)))
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group(3, &["(1 2 3)", "(1 2)"]).order(), 6);
        let f21 = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert_eq!(f21.order(), 21);
        let c7 = sub(&f21, &["(1 2 3 4 5 6 7)"]);
        assert!(f21.is_normal(&c7));
        let trivial = Group::from_generators(1, vec![], 1).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn cap_and_bad_generators() {
        let gens = vec![
            parse_cycles("(1 2 3 4 5)", 5, 1, 1).unwrap(),
            parse_cycles("(1 2)", 5, 1, 1).unwrap(),
        ];
        assert!(matches!(
            Group::from_generators(5, gens, 100),
            Err(Error::CapExceeded { .. })
        ));
        let short = Permutation::identity(2);
        assert!(matches!(
            Group::from_generators(3, vec![short], 10),
            Err(Error::BadPermutation(_))
        ));
    }

    #[test]
    fn identity_is_first_and_tables_agree() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        assert!(s4.element(0).is_identity());
        for a in 0..s4.order() {
            for b in 0..s4.order() {
                let p = s4.element(a).then(s4.element(b));
                assert_eq!(s4.element(s4.mul(a, b)), &p);
            }
            assert_eq!(s4.mul(a, s4.inv(a)), 0);
        }
    }

    #[test]
    fn s3_subgroup_operations() {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let t = sub(&s3, &["(1 2)"]);
        assert_eq!(t.order(), 2);
        assert_eq!(sub(&s3, &["(1 2)", "(1 3)"]).order(), 6);
        assert_eq!(s3.generated_subgroup([]).order(), 1);

        let c = s3.conjugate_subgroup(&t, elem(&s3, "(1 2 3)"));
        assert_eq!(c, sub(&s3, &["(2 3)"]));
        assert_eq!(s3.conjugate_subgroup(&t, 0), t);

        assert_eq!(s3.normalizer(&t), t);
        assert_eq!(s3.core(&t).order(), 1);
        assert_eq!(s3.normal_closure(&t).order(), 6);

        let a3 = sub(&s3, &["(1 2 3)"]);
        assert_eq!(s3.normalizer(&a3).order(), 6);
        assert_eq!(s3.core(&a3), a3);
        assert_eq!(s3.normal_closure(&a3), a3);
        assert!(!s3.product_permutes(&t, &sub(&s3, &["(1 3)"])));
        assert_eq!(s3.product_set(&t, &sub(&s3, &["(1 3)"])).count_ones(..), 4);
        assert!(s3.product_permutes(&t, &a3));

        let c = s3.centralizer_of_factor(&a3, &s3.trivial_subgroup()).unwrap();
        assert_eq!(c, a3);
        assert_eq!(s3.centralizer_of_factor(&a3, &a3).unwrap().order(), 6);
        assert!(matches!(
            s3.centralizer_of_factor(&s3.whole(), &t),
            Err(Error::NotNormal(_))
        ));

        assert_eq!(s3.derived_subgroup(), a3);
        assert!(!s3.is_abelian());
        assert!(!s3.is_nilpotent());
        assert!(s3.is_soluble());
    }

    #[test]
    fn s4_normalizer_of_sylow3() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(s4.normalizer(&sub(&s4, &["(1 2 3)"])).order(), 6);
    }

    #[test]
    fn a5_is_perfect() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.derived_subgroup().order(), 60);
        assert!(!a5.is_soluble());
    }

    #[test]
    fn quotient_s4_by_v4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(
                    q.projection[s4.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }
        assert_eq!(q.preimage(&q.group.trivial_subgroup()), v4);
        assert_eq!(s4.quotient(&s4.whole()).unwrap().group.order(), 1);
        assert_eq!(s4.quotient(&s4.trivial_subgroup()).unwrap().group.order(), 24);
        let t = sub(&s4, &["(1 2)"]);
        assert!(matches!(s4.quotient(&t), Err(Error::NotNormal(_))));
    }

    #[test]
    fn direct_and_subdirect() {
        let c2 = group(2, &["(1 2)"]);
        let c3 = group(3, &["(1 2 3)"]);
        let c6 = Group::direct_product(&c2, &c3);
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert!(c6.is_cyclic());

        // trivial amalgamation gives the direct product
        let full = Group::subdirect_product(&c2, &c3, &c2.whole(), &c3.whole(), &[0]).unwrap();
        assert_eq!(full.order(), 6);
        // a non-bijective map is rejected
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let a3 = s3.derived_subgroup();
        let err = Group::subdirect_product(&s3, &c2, &a3, &c2.trivial_subgroup(), &[0, 0]);
        assert!(matches!(err, Err(Error::BadIso(_))));
        let ok = Group::subdirect_product(&s3, &c2, &a3, &c2.trivial_subgroup(), &[0, 1]).unwrap();
        assert_eq!(ok.order(), 6);
    }

    #[test]
    fn subgroup_as_group_keeps_canonical_order() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let a4 = s4.derived_subgroup();
        let (g, emb) = s4.subgroup_as_group(&a4);
        assert_eq!(g.order(), 12);
        let rebuilt = Group::from_generators(4, g.generators().to_vec(), 100).unwrap();
        assert_eq!(rebuilt.elements(), g.elements());
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(emb[g.mul(i, j)], s4.mul(emb[i], emb[j]));
            }
        }
    }
}
