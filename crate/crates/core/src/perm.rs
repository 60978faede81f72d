//! Permutations of `{0, .., degree-1}` and cycle notation.
//!
//! Permutations act on the right: `p.then(q)` maps `k` to `q(p(k))`, so
//! `g⁻¹ a g` is the conjugate of `a` by `g`. Cycle notation is 1-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::BadPermutation(format!(
                    "image {} out of range for degree {}",
                    i + 1,
                    n
                )));
            }
            if seen[i] {
                return Err(Error::BadPermutation(format!(
                    "point {} is hit twice",
                    i + 1
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                let p = p as usize;
                if p >= degree {
                    return Err(Error::BadPermutation(format!(
                        "point {} exceeds degree {}",
                        p + 1,
                        degree
                    )));
                }
                if touched[p] {
                    return Err(Error::BadPermutation(format!(
                        "point {} appears in more than one cycle position",
                        p + 1
                    )));
                }
                touched[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i as usize] = k as u32;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Embeds into a larger degree, shifting every point by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (k, &i) in self.images.iter().enumerate() {
            images[k + offset] = i + offset as u32;
        }
        Permutation { images }
    }
}

/// 1-based cycle notation; the identity renders as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `()`.
///
/// `column` is the 1-based column where `text` starts inside its line, used
/// for error positions.
pub fn parse_cycles(text: &str, degree: usize, line: usize, column: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut touched = vec![false; degree];
    let mut current: Option<Vec<u32>> = None;
    let bytes = text.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        let col = column + k;
        match c {
            '(' => {
                if current.is_some() {
                    return Err(Error::parse(line, col, "nested '('"));
                }
                current = Some(Vec::new());
                k += 1;
            }
            ')' => {
                let cycle = current
                    .take()
                    .ok_or_else(|| Error::parse(line, col, "unmatched ')'"))?;
                if cycle.len() == 1 {
                    return Err(Error::parse(line, col, "cycle of length 1"));
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                k += 1;
            }
            c if c.is_ascii_whitespace() || c == ',' => k += 1,
            c if c.is_ascii_digit() => {
                let start = k;
                while k < bytes.len() && (bytes[k] as char).is_ascii_digit() {
                    k += 1;
                }
                let cycle = current
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, column + start, "point outside a cycle"))?;
                let p: usize = text[start..k]
                    .parse()
                    .map_err(|_| Error::parse(line, column + start, "bad point number"))?;
                if p == 0 || p > degree {
                    return Err(Error::parse(
                        line,
                        column + start,
                        format!("point {} outside 1..={}", p, degree),
                    ));
                }
                if touched[p - 1] {
                    return Err(Error::parse(
                        line,
                        column + start,
                        format!("point {} repeated across cycles", p),
                    ));
                }
                touched[p - 1] = true;
                cycle.push((p - 1) as u32);
            }
            other => {
                return Err(Error::parse(line, col, format!("unexpected character '{}'", other)));
            }
        }
    }
    if current.is_some() {
        return Err(Error::parse(line, column + text.len(), "unclosed '('"));
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_action() {
        let a = parse_cycles("(1 2)", 3, 1, 1).unwrap();
        let b = parse_cycles("(1 2 3)", 3, 1, 1).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        // conjugating (1 2) by (1 2 3) gives (2 3)
        let conj = b.inverse().then(&a).then(&b);
        assert_eq!(conj.to_string(), "(2 3)");
    }

    #[test]
    fn rejects_overlapping_cycles() {
        assert!(matches!(
            parse_cycles("(1 2)(2 3)", 3, 4, 5),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn display_round_trip() {
        let p = parse_cycles("(3 1 4)(2 5)", 6, 1, 1).unwrap();
        assert_eq!(p.to_string(), "(1 4 3)(2 5)");
        assert_eq!(parse_cycles(&p.to_string(), 6, 1, 1).unwrap(), p);
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
