//! Constructors for the small permutation groups used throughout.

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::perm::Permutation;
use crate::primes;

/// Largest `n` accepted by [`symmetric`] and [`alternating`].
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<u32> = points.into_iter().map(|p| p as u32).collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

fn build(degree: usize, gens: Vec<Permutation>, max_order: usize, name: String) -> Result<Group> {
    Ok(Group::from_generators(degree, gens, max_order)?.with_name(name))
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::PreconditionFailed("cyclic group of order 0".into()));
    }
    let gens = if n == 1 { vec![] } else { vec![cycle(n, 0..n)] };
    build(n, gens, n, format!("C{}", n))
}

/// Dihedral group of order `2n` acting on the `n`-gon, `n ≥ 3`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n < 3 {
        return Err(Error::PreconditionFailed("dihedral group needs n >= 3".into()));
    }
    let rotation = cycle(n, 0..n);
    let images = (0..n).map(|k| ((n - k) % n) as u32).collect();
    let reflection = Permutation::from_images(images)?;
    build(n, vec![rotation, reflection], 2 * n, format!("D{}", n))
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::CapExceeded {
            what: "symmetric degree",
            limit: MAX_SYMMETRIC_DEGREE,
        });
    }
    let n = n.max(1);
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle(n, 0..n), cycle(n, [0, 1])]
    };
    build(n, gens, usize::MAX, format!("S{}", n))
}

pub fn alternating(n: usize) -> Result<Group> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::CapExceeded {
            what: "alternating degree",
            limit: MAX_SYMMETRIC_DEGREE,
        });
    }
    let n = n.max(1);
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    build(n, gens, usize::MAX, format!("A{}", n))
}

/// `C_p^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    if !primes::is_prime(p as u64) {
        return Err(Error::PreconditionFailed(format!("{} is not a prime", p)));
    }
    let degree = (p * k).max(1);
    let gens = (0..k).map(|i| cycle(degree, i * p..(i + 1) * p)).collect();
    build(degree, gens, p.pow(k as u32), format!("C{}^{}", p, k))
}

/// `C7 ⋊ C3`, generated by `(1 2 3 4 5 6 7)` and `(2 3 5)(4 7 6)`.
pub fn frobenius_7_3() -> Group {
    let gens = vec![
        cycle(7, 0..7),
        Permutation::from_cycles(7, &[vec![1, 2, 4], vec![3, 6, 5]]).unwrap(),
    ];
    build(7, gens, 21, "C7:C3".into()).unwrap()
}

/// `x ↦ a·x + b` over `F_p` with `a` ranging over the order-`k` subgroup of `F_p^*`.
pub fn affine(p: usize, k: usize) -> Result<Group> {
    if !primes::is_prime(p as u64) || k == 0 || !(p - 1).is_multiple_of(k) {
        return Err(Error::PreconditionFailed(format!(
            "no subgroup of order {} in F_{}^*",
            k, p
        )));
    }
    let w = (1..p)
        .find(|&a| multiplicative_order(a, p) == k)
        .expect("F_p^* is cyclic");
    let translation = cycle(p, 0..p);
    let scaling = Permutation::from_images((0..p).map(|x| ((w * x) % p) as u32).collect())?;
    let mut gens = vec![translation];
    if k > 1 {
        gens.push(scaling);
    }
    build(p, gens, p * k, format!("C{}:C{}", p, k))
}

fn multiplicative_order(a: usize, p: usize) -> usize {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// `Q8` in its regular representation.
pub fn quaternion() -> Group {
    let i = Permutation::from_cycles(8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
    let j = Permutation::from_cycles(8, &[vec![0, 4, 2, 6], vec![1, 7, 3, 5]]).unwrap();
    build(8, vec![i, j], 8, "Q8".into()).unwrap()
}

/// `C3 ⋊ C4` with the generator of `C4` inverting `C3`.
pub fn dicyclic_12() -> Group {
    let a = cycle(7, [0, 1, 2]);
    let b = Permutation::from_cycles(7, &[vec![1, 2], vec![3, 4, 5, 6]]).unwrap();
    build(7, vec![a, b], 12, "C3:C4".into()).unwrap()
}

/// Nonzero vectors of `F_3²` in lexicographic order; index = point.
fn f3_vectors() -> Vec<(usize, usize)> {
    (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect()
}

/// Row-vector action `v ↦ vM` of a 2×2 matrix over `F_3` on the 8 nonzero vectors.
fn f3_matrix_perm(m: [[usize; 2]; 2]) -> Permutation {
    let vs = f3_vectors();
    let images = vs
        .iter()
        .map(|&(a, b)| {
            let w = ((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3);
            vs.iter().position(|&v| v == w).unwrap() as u32
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// `SL(2,3)` acting on the 8 nonzero vectors of `F_3²`.
pub fn sl_2_3() -> Group {
    let gens = vec![
        f3_matrix_perm([[1, 1], [0, 1]]),
        f3_matrix_perm([[1, 0], [1, 1]]),
    ];
    build(8, gens, 24, "SL(2,3)".into()).unwrap()
}

/// `GL(2,3)` acting on the 8 nonzero vectors of `F_3²`.
pub fn gl_2_3() -> Group {
    let gens = vec![
        f3_matrix_perm([[1, 1], [0, 1]]),
        f3_matrix_perm([[1, 0], [1, 1]]),
        f3_matrix_perm([[2, 0], [0, 1]]),
    ];
    build(8, gens, 48, "GL(2,3)".into()).unwrap()
}

pub fn direct_product(g1: &Group, g2: &Group) -> Group {
    Group::direct_product(g1, g2)
}

/// Matches two cyclic quotients of the same order by sending the first
/// generator (in canonical order) of one to that of the other.
pub fn cyclic_quotient_iso(q1: &Group, q2: &Group) -> Result<Vec<Elem>> {
    let n = q1.order();
    if q2.order() != n || !q1.is_cyclic() || !q2.is_cyclic() {
        return Err(Error::BadIso("quotients are not cyclic of equal order".into()));
    }
    let x = (0..n).find(|&e| q1.element_order(e) == n).unwrap();
    let y = (0..n).find(|&e| q2.element_order(e) == n).unwrap();
    let mut iso = vec![0; n];
    let (mut px, mut py) = (0, 0);
    for _ in 0..n {
        iso[px] = py;
        px = q1.mul(px, x);
        py = q2.mul(py, y);
    }
    Ok(iso)
}

/// `SL(2,3)` and `C7 ⋊ C3` amalgamated over their common `C3` quotient:
/// the subgroup of the direct product matching `SL(2,3)/Q8` with
/// `(C7 ⋊ C3)/C7`. Order `24·21/3 = 168`.
pub fn g168() -> Group {
    let sl = sl_2_3();
    let f21 = frobenius_7_3();
    let q8 = sl.derived_subgroup();
    let c7 = f21.derived_subgroup();
    let iso = amalgamating_iso(&sl, &f21, &q8, &c7).expect("both quotients are C3");
    Group::subdirect_product(&sl, &f21, &q8, &c7, &iso)
        .expect("valid amalgamation")
        .with_name("G168")
}

fn amalgamating_iso(g1: &Group, g2: &Group, n1: &Subgroup, n2: &Subgroup) -> Result<Vec<Elem>> {
    let q1 = g1.quotient(n1)?;
    let q2 = g2.quotient(n2)?;
    cyclic_quotient_iso(&q1.group, &q2.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(6).unwrap().order(), 6);
        assert!(cyclic(6).unwrap().is_abelian());
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(elementary_abelian(2, 3).unwrap().order(), 8);
        assert_eq!(frobenius_7_3().order(), 21);
        assert_eq!(affine(5, 4).unwrap().order(), 20);
        assert_eq!(affine(7, 3).unwrap().order(), 21);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(dicyclic_12().order(), 12);
        assert_eq!(gl_2_3().order(), 48);
        assert!(matches!(symmetric(9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q = quaternion();
        assert_eq!((0..8).filter(|&e| q.element_order(e) == 2).count(), 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn sl23_centre_and_derived() {
        let sl = sl_2_3();
        assert_eq!(sl.order(), 24);
        assert_eq!(sl.centre().order(), 2);
        let q8 = sl.derived_subgroup();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.elements().filter(|&e| sl.element_order(e) == 2).count(), 1);
    }

    #[test]
    fn g168_has_normal_sylow7() {
        let g = g168();
        assert_eq!(g.order(), 168);
        let sevens: Vec<usize> = (0..g.order()).filter(|&e| g.element_order(e) == 7).collect();
        assert_eq!(sevens.len(), 6);
        let c7 = g.generated_subgroup(sevens);
        assert_eq!(c7.order(), 7);
        assert!(g.is_normal(&c7));
        assert_eq!(g.quotient(&c7).unwrap().group.order(), 24);
    }
}
