//! Permutations of the points `0..n`.
//!
//! The composition convention throughout the crate is left-to-right:
//! `compose(p, q)` maps `i` to `q(p(i))`, i.e. `p` acts first. Under this
//! convention conjugation `p^g = g⁻¹ · p · g` sends the cycle `(a b ...)`
//! to `(a^g b^g ...)`, matching the usual exponent notation for group
//! actions on the right.

use std::fmt;

use crate::error::{Error, Result};

type Point = u16;

/// A bijection of `{0..degree-1}`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Point>,
}

impl Perm {
    /// Identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from the image list; rejects non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree,
                });
            }
            if seen[img] {
                return Err(Error::RepeatedPoint { point: img });
            }
            seen[img] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as Point).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `point` under this permutation.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as Point == img)
    }

    /// Smallest point moved by this permutation, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i as Point != img)
            .map(|(i, _)| i)
    }

    /// Left-to-right product: the result maps `i` to `q(p(i))`.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(Perm {
            images: self.images.iter().map(|&m| q.images[m as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0 as Point; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as Point;
        }
        Perm { images }
    }

    /// Conjugate `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Perm) -> Result<Perm> {
        g.inverse().compose(self)?.compose(g)
    }

    /// Commutator `a⁻¹ · b⁻¹ · a · b` where `a = self`, `b = other`.
    pub fn commutator(&self, b: &Perm) -> Result<Perm> {
        self.inverse().compose(&b.inverse())?.compose(self)?.compose(b)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        // lcm of cycle lengths
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Renders in cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// The identity renders as `()`.
    pub fn to_cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.apply(p);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({})", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses a whitespace-separated product of cycles in 1-based notation,
/// e.g. `"(1 2 3)(4 5)"`. Cycles are applied left to right. Empty input
/// (or `"()"`) is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let mut result = Perm::identity(degree);
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(Error::MalformedCycles {
                at: i,
                reason: format!("expected '(' but found {c:?}"),
            });
        }
        let close = text[i..].find(')').map(|off| i + off).ok_or(Error::MalformedCycles {
            at: i,
            reason: "unclosed '('".into(),
        })?;
        let body = &text[i + 1..close];
        if body.contains('(') {
            return Err(Error::MalformedCycles {
                at: i,
                reason: "nested '('".into(),
            });
        }
        let mut points = Vec::new();
        for tok in body.split_whitespace() {
            let val: usize = tok.parse().map_err(|_| Error::MalformedCycles {
                at: i,
                reason: format!("bad point {tok:?}"),
            })?;
            if val == 0 || val > degree {
                return Err(Error::PointOutOfRange {
                    point: val,
                    degree,
                });
            }
            let p = val - 1;
            if points.contains(&p) {
                return Err(Error::RepeatedPoint { point: val });
            }
            points.push(p);
        }
        // A cycle of length 0 or 1 contributes the identity.
        if points.len() >= 2 {
            let mut cycle = Perm::identity(degree);
            for w in 0..points.len() {
                cycle.images[points[w]] = points[(w + 1) % points.len()] as Point;
            }
            result = result.compose(&cycle).expect("equal degrees");
        }
        i = close + 1;
    }
    Ok(result)
}
