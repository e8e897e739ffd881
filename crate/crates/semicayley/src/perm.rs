//! Permutations on a fixed number of points, with cycle-notation parsing and
//! printing. Used both by the built-in symmetric/alternating families and by
//! groups given through generator lists.

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 16;

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds from an image vector; must be a bijection on `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return Err(Error::InvalidPermutation(format!(
                "acts on {n} points, maximum is {MAX_POINTS}"
            )));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::InvalidPermutation(
                    "image vector is not a bijection".into(),
                ));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Composition acting left-to-right: `(a.compose(b)).apply(x) = b.apply(a.apply(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Parity: `true` for even permutations.
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Extends the permutation to act on `n >= degree` points, fixing the new ones.
    pub fn extend_to(&self, n: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Permutation { images }
    }

    /// Parses cycle notation with 1-based points: `"(1 2)(3 4)"`. A run of
    /// single digits such as `"(123)"` is accepted when every point is < 10.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text == "()" || text == "e" || text == "id" {
            return Ok(Permutation::identity(degree));
        }
        let mut perm = Permutation::identity(degree);
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in `{text}`")))?;
            let close = rest[open..]
                .find(')')
                .map(|k| open + k)
                .ok_or_else(|| Error::InvalidPermutation(format!("unbalanced '(' in `{text}`")))?;
            let body = &rest[open + 1..close];
            let points = parse_cycle_points(body, text)?;
            let mut cycle = Permutation::identity(degree);
            for w in points.windows(2) {
                let (a, b) = (w[0], w[1]);
                if a >= degree || b >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} out of range 1..={} in `{}`",
                        a.max(b) + 1,
                        degree,
                        text
                    )));
                }
            }
            if points.iter().any(|&p| p >= degree) {
                return Err(Error::InvalidPermutation(format!(
                    "point out of range in `{text}`"
                )));
            }
            let mut seen = std::collections::HashSet::new();
            for &p in &points {
                if !seen.insert(p) {
                    return Err(Error::InvalidPermutation(format!(
                        "repeated point in cycle of `{text}`"
                    )));
                }
            }
            if points.len() >= 2 {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for i in 0..points.len() {
                    images[points[i]] = points[(i + 1) % points.len()] as u32;
                }
                cycle.images = images;
            }
            perm = perm.compose(&cycle);
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        Ok(perm)
    }

    /// Canonical cycle notation, 1-based, smallest point first in each cycle,
    /// cycles sorted by smallest point. Points above 9 force spaced form.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        if cycles.is_empty() {
            return "1".to_string();
        }
        let spaced = self.degree() > 9;
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", body.join(if spaced { " " } else { "" }))
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

fn parse_cycle_points(body: &str, whole: &str) -> Result<Vec<usize>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let raw: Vec<&str> = if tokens.len() == 1 && tokens[0].len() > 1 {
        // compact single-digit form like "123"
        if !tokens[0].chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::InvalidPermutation(format!(
                "bad cycle `{body}` in `{whole}`"
            )));
        }
        return tokens[0]
            .chars()
            .map(|c| {
                let p = c.to_digit(10).unwrap() as usize;
                if p == 0 {
                    Err(Error::InvalidPermutation(format!(
                        "points are 1-based in `{whole}`"
                    )))
                } else {
                    Ok(p - 1)
                }
            })
            .collect();
    } else {
        tokens
    };
    raw.iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("bad point `{t}` in `{whole}`")))
                .and_then(|p| {
                    if p == 0 {
                        Err(Error::InvalidPermutation(format!(
                            "points are 1-based in `{whole}`"
                        )))
                    } else {
                        Ok(p - 1)
                    }
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let p = Permutation::parse("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.cycle_notation(), "(12)(34)");
        let q = Permutation::parse("(123)", 4).unwrap();
        assert_eq!(q.apply(0), 1);
        assert_eq!(q.apply(2), 0);
        assert_eq!(q.cycle_notation(), "(123)");
        assert_eq!(Permutation::parse("1", 3).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn compose_is_left_to_right() {
        let a = Permutation::parse("(12)", 3).unwrap();
        let b = Permutation::parse("(23)", 3).unwrap();
        // x=0: a sends 0->1, b sends 1->2
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    #[test]
    fn parity() {
        assert!(Permutation::parse("(123)", 3).unwrap().is_even());
        assert!(!Permutation::parse("(12)", 3).unwrap().is_even());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(0 1)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
