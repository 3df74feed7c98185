//! Finite posets given by an explicit order relation, with covering
//! relations and isomorphism checks.

use serde::Serialize;

/// A finite poset on `0..len` with labels and a precomputed order matrix.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// Outcome of comparing two posets along a proposed bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoReport {
    Isomorphic {
        size: usize,
    },
    SizeMismatch {
        left: usize,
        right: usize,
    },
    NotBijective {
        element: String,
    },
    OrderMismatch {
        a: String,
        b: String,
        left_leq: bool,
        right_leq: bool,
    },
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        matches!(self, IsoReport::Isomorphic { .. })
    }
}

impl Poset {
    /// Builds a poset from labels and an order predicate; the predicate
    /// must already be reflexive and transitive.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Poset {
        let n = labels.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| leq(i, j)).collect())
            .collect();
        Poset { labels, leq }
    }

    /// Builds a poset as the reflexive-transitive closure of `steps`, where
    /// `(a, b)` means `a ≤ b`.
    pub fn from_steps(labels: Vec<String>, steps: &[(usize, usize)]) -> Poset {
        let n = labels.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in steps {
            up[a].push(b);
        }
        let mut leq = vec![vec![false; n]; n];
        for (s, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                if row[x] {
                    continue;
                }
                row[x] = true;
                stack.extend(up[x].iter().copied());
            }
        }
        Poset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq[b][a]))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq[a][b]))
            .collect()
    }

    /// Checks that `map` (indices of `self` to indices of `other`) is a
    /// bijection preserving and reflecting the order.
    pub fn check_isomorphism(&self, other: &Poset, map: &[usize]) -> IsoReport {
        if self.len() != other.len() {
            return IsoReport::SizeMismatch {
                left: self.len(),
                right: other.len(),
            };
        }
        let mut hit = vec![false; other.len()];
        for (i, &j) in map.iter().enumerate() {
            if j >= other.len() || hit[j] {
                return IsoReport::NotBijective {
                    element: self.labels[i].clone(),
                };
            }
            hit[j] = true;
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                let l = self.leq[a][b];
                let r = other.leq[map[a]][map[b]];
                if l != r {
                    return IsoReport::OrderMismatch {
                        a: self.labels[a].clone(),
                        b: self.labels[b].clone(),
                        left_leq: l,
                        right_leq: r,
                    };
                }
            }
        }
        IsoReport::Isomorphic { size: self.len() }
    }

    /// Product poset with componentwise order.
    pub fn product(&self, other: &Poset) -> Poset {
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a} x {b}"));
            }
        }
        let m = other.len();
        Poset::from_relation(labels, |x, y| {
            self.leq[x / m][y / m] && other.leq[x % m][y % m]
        })
    }

    /// Sub-poset on the given indices.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        Poset::from_relation(labels, |a, b| self.leq[keep[a]][keep[b]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_covers_and_iso() {
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let p = Poset::from_steps(labels.clone(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        let q = Poset::from_relation(labels, |a, b| a <= b);
        assert!(p.check_isomorphism(&q, &[0, 1, 2]).passed());
        assert!(!p.check_isomorphism(&q, &[1, 0, 2]).passed());
    }
}
