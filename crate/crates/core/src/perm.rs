//! Permutations on `{0, .., n-1}` with 1-based cycle notation for I/O.

use std::fmt;

use crate::error::{Error, Result};

/// One-line image array: `self.0[i]` is the image of point `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidGroup(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `"(1 2)(3 4 5)"` or `"(1,2)"`; `"()"` and
    /// `"e"` denote the identity. Points are 1-based and the result has degree
    /// at least `degree`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = degree.max(max_point);
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in &cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                let from = p - 1;
                if touched[from] {
                    return Err(Error::InvalidGroup(format!(
                        "point {p} appears twice in {text:?}"
                    )));
                }
                touched[from] = true;
                images[from] = cycle[(pos + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation(images))
    }

    /// Largest point appearing in `text`, used to size a generator set.
    pub fn max_point(text: &str) -> Result<usize> {
        Ok(parse_cycle_list(text)?.into_iter().flatten().max().unwrap_or(0))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.0.clone();
        images.extend(self.0.len()..degree);
        Permutation(images)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.0[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.0[next];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let trimmed = text.trim();
    if trimmed == "e" || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidGroup(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::InvalidGroup(format!("unbalanced parentheses in {text:?}")))?;
        let body = &open[..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| Error::InvalidGroup(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3,4, 5)", 0).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 4, 2]);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Permutation::parse_cycles("(1 2", 0).is_err());
        assert!(Permutation::parse_cycles("(1 1)", 0).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 0).is_err());
        assert!(Permutation::parse_cycles("1 2", 0).is_err());
    }
}
