//! Line-oriented text formats.
//!
//! Group files (`.grp`):
//!
//! ```text
//! # comment
//! name S3
//! degree 3
//! gen (1 2 3)
//! gen (1 2)
//! ```
//!
//! Sigma files (`.sigma`): zero or more `block p1 p2 …` lines and exactly one
//! `rest singletons` or `rest one-block` line.
//!
//! Manifests: `check <group> <sigma> <predicate> expect <true|false|record> # provenance`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{parse_cycles, Permutation};
use crate::primes;
use crate::sigma::{RestPolicy, SigmaPartition};

/// Splits off a `#` comment, returning `(content, comment)`.
fn split_comment(line: &str) -> (&str, Option<&str>) {
    match line.find('#') {
        Some(k) => (&line[..k], Some(line[k + 1..].trim())),
        None => (line, None),
    }
}

/// First whitespace-delimited word and the 1-based column where the rest starts.
fn keyword(content: &str) -> Option<(&str, &str, usize)> {
    let start = content.len() - content.trim_start().len();
    let trimmed = &content[start..];
    if trimmed.trim().is_empty() {
        return None;
    }
    let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let rest = &trimmed[end..];
    let rest_start = start + end + (rest.len() - rest.trim_start().len());
    Some((&trimmed[..end], rest.trim(), rest_start + 1))
}

pub fn parse_group_file(text: &str, max_order: usize) -> Result<Group> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let (content, _) = split_comment(raw);
        let Some((word, rest, col)) = keyword(content) else {
            continue;
        };
        match word {
            "name" => {
                if rest.is_empty() {
                    return Err(Error::parse(line, col, "empty name"));
                }
                name = Some(rest.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(Error::parse(line, 1, "duplicate degree line"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| Error::parse(line, col, "degree must be a positive integer"))?;
                if n == 0 {
                    return Err(Error::parse(line, col, "degree must be a positive integer"));
                }
                degree = Some(n);
            }
            "gen" => {
                let n = degree.ok_or_else(|| Error::parse(line, 1, "gen before degree"))?;
                gens.push(parse_cycles(rest, n, line, col)?);
            }
            other => {
                return Err(Error::parse(line, 1, format!("unknown directive '{}'", other)));
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, 1, "missing degree line"))?;
    if gens.is_empty() {
        return Err(Error::parse(1, 1, "at least one gen line is required"));
    }
    let g = Group::from_generators(degree, gens, max_order)?;
    Ok(match name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

/// Canonical text: the greedy generating set in canonical element order, so
/// equal groups emit identical bytes.
pub fn emit_group_file(g: &Group) -> String {
    let mut out = String::new();
    if let Some(name) = g.name() {
        writeln!(out, "name {}", name).unwrap();
    }
    writeln!(out, "degree {}", g.degree()).unwrap();
    let gens = g.small_generating_set(&g.whole());
    if gens.is_empty() {
        out.push_str("gen ()\n");
    }
    for e in gens {
        writeln!(out, "gen {}", g.element(e)).unwrap();
    }
    out
}

pub fn parse_sigma_file(text: &str) -> Result<SigmaPartition> {
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    let mut rest: Option<RestPolicy> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let (content, _) = split_comment(raw);
        let Some((word, args, col)) = keyword(content) else {
            continue;
        };
        match word {
            "block" => {
                let mut block = Vec::new();
                let mut offset = 0;
                for tok in args.split_whitespace() {
                    let at = col + args[offset..].find(tok).unwrap() + offset;
                    offset = at - col + tok.len();
                    let p: u64 = tok
                        .parse()
                        .map_err(|_| Error::parse(line, at, format!("'{}' is not a number", tok)))?;
                    if !primes::is_prime(p) {
                        return Err(Error::parse(line, at, format!("{} is not a prime", p)));
                    }
                    block.push(p);
                }
                if block.is_empty() {
                    return Err(Error::parse(line, col, "empty block"));
                }
                blocks.push(block);
            }
            "rest" => {
                if rest.is_some() {
                    return Err(Error::parse(line, 1, "duplicate rest line"));
                }
                rest = Some(match args {
                    "singletons" => RestPolicy::Singletons,
                    "one-block" => RestPolicy::OneBlock,
                    _ => {
                        return Err(Error::parse(
                            line,
                            col,
                            "expected 'singletons' or 'one-block'",
                        ))
                    }
                });
            }
            other => {
                return Err(Error::parse(line, 1, format!("unknown directive '{}'", other)));
            }
        }
    }
    let rest = rest.ok_or_else(|| Error::parse(1, 1, "missing rest line"))?;
    SigmaPartition::new(blocks, rest)
}

pub fn emit_sigma_file(sigma: &SigmaPartition) -> String {
    let mut out = String::new();
    for b in sigma.blocks() {
        out.push_str("block");
        for p in b {
            write!(out, " {}", p).unwrap();
        }
        out.push('\n');
    }
    out.push_str(match sigma.rest_policy() {
        RestPolicy::Singletons => "rest singletons\n",
        RestPolicy::OneBlock => "rest one-block\n",
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    True,
    False,
    Record,
}

impl FromStr for Expect {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "true" => Ok(Expect::True),
            "false" => Ok(Expect::False),
            "record" => Ok(Expect::Record),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestCheck {
    pub group: String,
    pub sigma: String,
    pub predicate: String,
    pub expect: Expect,
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationManifest {
    pub checks: Vec<ManifestCheck>,
}

/// Pinned expectations must carry a provenance comment; `record` entries may omit it.
pub fn parse_manifest(text: &str) -> Result<VerificationManifest> {
    let mut checks = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let (content, comment) = split_comment(raw);
        let Some((word, args, col)) = keyword(content) else {
            continue;
        };
        if word != "check" {
            return Err(Error::parse(line, 1, format!("unknown directive '{}'", word)));
        }
        let toks: Vec<&str> = args.split_whitespace().collect();
        if toks.len() != 5 || toks[3] != "expect" {
            return Err(Error::parse(
                line,
                col,
                "expected '<group> <sigma> <predicate> expect <true|false|record>'",
            ));
        }
        let expect: Expect = toks[4]
            .parse()
            .map_err(|_| Error::parse(line, col, "expect must be true, false or record"))?;
        let provenance = comment.filter(|c| !c.is_empty()).map(str::to_string);
        if expect != Expect::Record && provenance.is_none() {
            return Err(Error::parse(line, raw.len() + 1, "pinned expectation needs a provenance comment"));
        }
        checks.push(ManifestCheck {
            group: toks[0].to_string(),
            sigma: toks[1].to_string(),
            predicate: toks[2].to_string(),
            expect,
            provenance,
        });
    }
    Ok(VerificationManifest { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_s3() {
        let g = parse_group_file("degree 3\ngen (1 2 3)\ngen (1 2)\n", 1000).unwrap();
        assert_eq!(g.order(), 6);
        let named = parse_group_file("# S3\nname S3\ndegree 3\ngen (1 2 3)  # rotation\ngen (1 2)\n", 1000)
            .unwrap();
        assert_eq!(named.name(), Some("S3"));
    }

    #[test]
    fn group_file_errors() {
        let err = parse_group_file("degree 3\ngen (1 2)(2 3)\n", 1000).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 11, .. }), "{:?}", err);
        assert!(parse_group_file("gen (1 2)\n", 1000).is_err());
        assert!(parse_group_file("degree 3\n", 1000).is_err());
        assert!(parse_group_file("degree 3\ngen (1 4)\n", 1000).is_err());
        assert!(parse_group_file("degree x\ngen (1 2)\n", 1000).is_err());
        assert!(parse_group_file("degree 3\nfoo\n", 1000).is_err());
        assert!(matches!(
            parse_group_file("degree 5\ngen (1 2 3 4 5)\ngen (1 2)\n", 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn group_file_round_trip() {
        let x = "name S3\ndegree 3\ngen (1 2)\ngen (1 2 3)\n";
        let once = emit_group_file(&parse_group_file(x, 1000).unwrap());
        let twice = emit_group_file(&parse_group_file(&once, 1000).unwrap());
        assert_eq!(once, twice);
        // a different generating set of the same group emits the same text
        let y = "name S3\ndegree 3\ngen (1 3)\ngen (2 3)\n";
        assert_eq!(emit_group_file(&parse_group_file(y, 1000).unwrap()), once);
        let trivial = emit_group_file(&parse_group_file("degree 1\ngen ()\n", 10).unwrap());
        assert_eq!(trivial, "degree 1\ngen ()\n");
    }

    #[test]
    fn sigma_files() {
        let s = parse_sigma_file("block 2 3\nrest one-block\n").unwrap();
        assert_eq!(s, SigmaPartition::pi(&[2, 3]).unwrap());
        assert_eq!(parse_sigma_file("rest singletons\n").unwrap(), SigmaPartition::sigma0());
        assert_eq!(
            parse_sigma_file("block 2\nblock 2 5\nrest singletons\n"),
            Err(Error::OverlappingBlocks(2))
        );
        assert!(matches!(
            parse_sigma_file("block 2 4\nrest singletons\n"),
            Err(Error::Parse { line: 1, column: 9, .. })
        ));
        assert!(parse_sigma_file("block 2\n").is_err());
        assert!(parse_sigma_file("rest singletons\nrest one-block\n").is_err());
        let text = emit_sigma_file(&s);
        assert_eq!(parse_sigma_file(&text).unwrap(), s);
    }

    #[test]
    fn manifests() {
        let m = parse_manifest(
            "check G168 pi23 psigmat expect true # reference: order-168 amalgam\n\
             check S3 sigma0 pst expect record\n",
        )
        .unwrap();
        assert_eq!(m.checks.len(), 2);
        assert_eq!(m.checks[0].expect, Expect::True);
        assert!(m.checks[1].provenance.is_none());
        assert!(parse_manifest("check S3 sigma0 pst expect true\n").is_err());
        assert!(parse_manifest("check S3 sigma0 pst expect maybe # x\n").is_err());
    }
}
