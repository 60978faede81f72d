//! Named groups and σ-partitions shipped with the library.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::sigma::SigmaPartition;

use super::builders;
use super::format::{parse_manifest, parse_sigma_file, VerificationManifest};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builder {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian(usize, usize),
    Affine(usize, usize),
    Frobenius73,
    Quaternion,
    Dicyclic12,
    Sl23,
    Gl23,
    G168,
    Direct(Box<Builder>, Box<Builder>),
}

impl Builder {
    pub fn build(&self) -> Result<Group> {
        Ok(match self {
            Builder::Cyclic(n) => builders::cyclic(*n)?,
            Builder::Dihedral(n) => builders::dihedral(*n)?,
            Builder::Symmetric(n) => builders::symmetric(*n)?,
            Builder::Alternating(n) => builders::alternating(*n)?,
            Builder::ElementaryAbelian(p, k) => builders::elementary_abelian(*p, *k)?,
            Builder::Affine(p, k) => builders::affine(*p, *k)?,
            Builder::Frobenius73 => builders::frobenius_7_3(),
            Builder::Quaternion => builders::quaternion(),
            Builder::Dicyclic12 => builders::dicyclic_12(),
            Builder::Sl23 => builders::sl_2_3(),
            Builder::Gl23 => builders::gl_2_3(),
            Builder::G168 => builders::g168(),
            Builder::Direct(a, b) => builders::direct_product(&a.build()?, &b.build()?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub order: usize,
    pub builder: Builder,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Group> {
        let g = self.builder.build()?.with_name(self.name);
        if g.order() != self.order {
            return Err(Error::Inconsistent(format!(
                "{} built with order {}, expected {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

fn entry(name: &'static str, order: usize, builder: Builder) -> CatalogEntry {
    CatalogEntry {
        name,
        order,
        builder,
    }
}

fn direct(a: Builder, b: Builder) -> Builder {
    Builder::Direct(Box::new(a), Box::new(b))
}

/// All catalog groups in increasing order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Builder::*;
    vec![
        entry("C1", 1, Cyclic(1)),
        entry("C2", 2, Cyclic(2)),
        entry("C3", 3, Cyclic(3)),
        entry("C2^2", 4, ElementaryAbelian(2, 2)),
        entry("C4", 4, Cyclic(4)),
        entry("C6", 6, Cyclic(6)),
        entry("S3", 6, Symmetric(3)),
        entry("C2^3", 8, ElementaryAbelian(2, 3)),
        entry("D4", 8, Dihedral(4)),
        entry("Q8", 8, Quaternion),
        entry("D5", 10, Dihedral(5)),
        entry("C3:C4", 12, Dicyclic12),
        entry("A4", 12, Alternating(4)),
        entry("D6", 12, Dihedral(6)),
        entry("S3xC3", 18, direct(Symmetric(3), Cyclic(3))),
        entry("C5:C4", 20, Affine(5, 4)),
        entry("C7:C3", 21, Frobenius73),
        entry("S4", 24, Symmetric(4)),
        entry("SL(2,3)", 24, Sl23),
        entry("C2xA4", 24, direct(Cyclic(2), Alternating(4))),
        entry("S3xS3", 36, direct(Symmetric(3), Symmetric(3))),
        entry("C7:C6", 42, Affine(7, 6)),
        entry("GL(2,3)", 48, Gl23),
        entry("A5", 60, Alternating(5)),
        entry("C3xC7:C3", 63, direct(Cyclic(3), Frobenius73)),
        entry("S5", 120, Symmetric(5)),
        entry("G168", 168, G168),
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaConfig {
    pub name: &'static str,
    pub text: &'static str,
}

impl SigmaConfig {
    pub fn partition(&self) -> SigmaPartition {
        parse_sigma_file(self.text).expect("built-in sigma configs parse")
    }
}

pub fn sigma_configs() -> Vec<SigmaConfig> {
    let c = |name, text| SigmaConfig { name, text };
    vec![
        c("sigma0", "rest singletons\n"),
        c("s23", "block 2 3\nrest singletons\n"),
        c("pi2", "block 2\nrest one-block\n"),
        c("pi23", "block 2 3\nrest one-block\n"),
        c("pi37", "block 3 7\nrest one-block\n"),
        c("zpi23", "block 2\nblock 3\nrest one-block\n"),
        c("zpi37", "block 3\nblock 7\nrest one-block\n"),
    ]
}

pub fn find_sigma(name: &str) -> Option<SigmaConfig> {
    sigma_configs().into_iter().find(|c| c.name == name)
}

/// The standard corpus: every catalog group up to `max_order` paired with
/// every built-in σ-partition, in catalog order.
pub fn corpus_pairs(max_order: usize) -> Vec<(CatalogEntry, SigmaConfig)> {
    let configs = sigma_configs();
    catalog()
        .into_iter()
        .filter(|e| e.order <= max_order)
        .flat_map(|e| configs.iter().map(move |c| (e.clone(), c.clone())))
        .collect()
}

const BUILTIN_MANIFEST: &str = "\
# predicate names: psigmat, pst, sigma-nilpotent, sigma-soluble
check G168 pi23 psigmat expect true # reference: order-168 amalgam, PsigmaT under {2,3}
check G168 sigma0 pst expect false # reference: order-168 amalgam, not PST
check G168 sigma0 psigmat expect false # same as pst under sigma0
check G168 pi23 sigma-soluble expect true # every chief factor has order 2, 3 or 7
check S3 sigma0 pst expect true # derived: S3 = C3 : C2 with C3 a normal Hall subgroup
check C7:C3 sigma0 pst expect true # derived: Frobenius group with normal Hall C7
check S4 sigma0 pst expect false # derived: V4 is subnormal but <(1 2)> does not permute with <(1 2 3)>
check A4 sigma0 pst expect false # derived: C2 is subnormal but does not permute with a Sylow 3-subgroup
check D4 sigma0 psigmat expect true # derived: nilpotent
check A5 sigma0 sigma-soluble expect false # derived: simple non-abelian
check A5 pi23 psigmat expect record
check GL(2,3) pi23 psigmat expect record
check SL(2,3) zpi23 psigmat expect record
";

pub fn builtin_manifest_text() -> &'static str {
    BUILTIN_MANIFEST
}

pub fn builtin_manifest() -> VerificationManifest {
    parse_manifest(BUILTIN_MANIFEST).expect("built-in manifest parses")
}
