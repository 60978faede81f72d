//! Partitions σ of the set of all primes.
//!
//! A [`SigmaPartition`] lists finitely many explicit blocks; every prime not
//! listed goes either into its own singleton block or into one shared block,
//! depending on the [`RestPolicy`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RestPolicy {
    Singletons,
    OneBlock,
}

/// Identifies one effective block of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockId {
    /// The i-th explicitly listed block.
    Listed(usize),
    /// An unlisted prime under [`RestPolicy::Singletons`].
    Prime(u64),
    /// All unlisted primes under [`RestPolicy::OneBlock`].
    Rest,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPartition {
    blocks: Vec<Vec<u64>>,
    rest: RestPolicy,
}

/// `σ(n)`: the blocks meeting the prime divisors of `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaSignature(pub BTreeSet<BlockId>);

impl SigmaSignature {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, b: BlockId) -> bool {
        self.0.contains(&b)
    }

    pub fn iter(&self) -> impl Iterator<Item = BlockId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &SigmaSignature) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &SigmaSignature) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl SigmaPartition {
    pub fn new(blocks: Vec<Vec<u64>>, rest: RestPolicy) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut clean = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::PreconditionFailed("empty sigma block".into()));
            }
            for &p in &block {
                if !primes::is_prime(p) {
                    return Err(Error::PreconditionFailed(format!("{} is not a prime", p)));
                }
                if !seen.insert(p) {
                    return Err(Error::OverlappingBlocks(p));
                }
            }
            block.sort_unstable();
            clean.push(block);
        }
        Ok(SigmaPartition {
            blocks: clean,
            rest,
        })
    }

    /// `σ⁰ = {{2}, {3}, {5}, …}`.
    pub fn sigma0() -> Self {
        SigmaPartition {
            blocks: vec![],
            rest: RestPolicy::Singletons,
        }
    }

    /// `σ^π = {π, π′}`.
    pub fn pi(pi: &[u64]) -> Result<Self> {
        SigmaPartition::new(vec![pi.to_vec()], RestPolicy::OneBlock)
    }

    /// `σ^{0π} = {{p₁}, …, {pₙ}, π′}`.
    pub fn zero_pi(pi: &[u64]) -> Result<Self> {
        SigmaPartition::new(pi.iter().map(|&p| vec![p]).collect(), RestPolicy::OneBlock)
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn rest_policy(&self) -> RestPolicy {
        self.rest
    }

    pub fn block_of(&self, p: u64) -> BlockId {
        if let Some(i) = self.blocks.iter().position(|b| b.contains(&p)) {
            return BlockId::Listed(i);
        }
        match self.rest {
            RestPolicy::Singletons => BlockId::Prime(p),
            RestPolicy::OneBlock => BlockId::Rest,
        }
    }

    pub fn in_block(&self, p: u64, b: BlockId) -> bool {
        self.block_of(p) == b
    }

    pub fn signature(&self, n: u64) -> SigmaSignature {
        SigmaSignature(
            primes::prime_divisors(n)
                .into_iter()
                .map(|p| self.block_of(p))
                .collect(),
        )
    }

    /// The `σ_b`-part of `n`.
    pub fn part(&self, n: u64, b: BlockId) -> u64 {
        primes::part(n, |p| self.block_of(p) == b)
    }

    /// `n` is a `σ_b`-number.
    pub fn is_block_number(&self, n: u64, b: BlockId) -> bool {
        self.signature(n).iter().all(|x| x == b)
    }

    /// At most one block divides `n`.
    pub fn is_primary_number(&self, n: u64) -> bool {
        self.signature(n).len() <= 1
    }

    pub fn describe_block(&self, b: BlockId) -> String {
        let list = |ps: &[u64]| {
            ps.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match b {
            BlockId::Listed(i) => format!("{{{}}}", list(&self.blocks[i])),
            BlockId::Prime(p) => format!("{{{}}}", p),
            BlockId::Rest => {
                let mut listed: Vec<u64> = self.blocks.iter().flatten().copied().collect();
                listed.sort_unstable();
                if listed.is_empty() {
                    "P".to_string()
                } else {
                    format!("{{{}}}'", list(&listed))
                }
            }
        }
    }

    pub fn describe_signature(&self, s: &SigmaSignature) -> Vec<String> {
        s.iter().map(|b| self.describe_block(b)).collect()
    }
}

/// The file grammar, one directive per `; `-separated item.
impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "block")?;
            for p in b {
                write!(f, " {}", p)?;
            }
            write!(f, "; ")?;
        }
        match self.rest {
            RestPolicy::Singletons => write!(f, "rest singletons"),
            RestPolicy::OneBlock => write!(f, "rest one-block"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let s = SigmaPartition::new(vec![vec![3, 2]], RestPolicy::Singletons).unwrap();
        let sig = s.signature(168);
        assert_eq!(
            sig.0.into_iter().collect::<Vec<_>>(),
            vec![BlockId::Listed(0), BlockId::Prime(7)]
        );
        assert!(s.signature(1).is_empty());
        let s0 = SigmaPartition::sigma0();
        assert_eq!(
            s0.signature(12).0.into_iter().collect::<Vec<_>>(),
            vec![BlockId::Prime(2), BlockId::Prime(3)]
        );
        let p23 = SigmaPartition::pi(&[2, 3]).unwrap();
        assert_eq!(p23.signature(168).len(), 2);
        assert_eq!(p23.part(168, BlockId::Listed(0)), 24);
        assert_eq!(p23.part(168, BlockId::Rest), 7);
        assert_eq!(p23.describe_block(BlockId::Rest), "{2,3}'");
        assert!(p23.is_primary_number(24));
        assert!(!s0.is_primary_number(6));
    }

    #[test]
    fn validation() {
        assert_eq!(
            SigmaPartition::new(vec![vec![2], vec![2, 5]], RestPolicy::OneBlock),
            Err(Error::OverlappingBlocks(2))
        );
        assert!(SigmaPartition::new(vec![vec![4]], RestPolicy::OneBlock).is_err());
        assert!(SigmaPartition::new(vec![vec![]], RestPolicy::OneBlock).is_err());
    }
}
