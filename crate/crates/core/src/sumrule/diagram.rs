//! Cyclic pairings of the integration points.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A closed cycle through all `n` points, up to rotation and reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    pub n: usize,
    /// Visiting order, starting at point 0 with `cycle[1] < cycle[n-1]`.
    pub cycle: Vec<usize>,
    /// Edges as (i, j) with i < j, sorted; the 2-cycle lists its edge twice.
    pub edges: Vec<(usize, usize)>,
}

impl Diagram {
    fn from_cycle(cycle: Vec<usize>) -> Self {
        let n = cycle.len();
        let mut edges: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self { n, cycle, edges }
    }

    /// Multiplicity of each ordered integral: 2 for the doubled edge, 2n otherwise.
    pub fn weight(&self) -> f64 {
        if self.n == 2 {
            2.0
        } else {
            2.0 * self.n as f64
        }
    }
}

pub const MAX_DIAGRAM_ORDER: usize = 9;

/// All inequivalent cycles on `n` points, in lexicographic order of `cycle`.
pub fn enumerate_diagrams(n: usize) -> Result<Vec<Diagram>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("diagram order must be >= 2, got {n}")));
    }
    if n > MAX_DIAGRAM_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    if n == 2 {
        return Ok(vec![Diagram::from_cycle(vec![0, 1])]);
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        if rest[0] < rest[n - 2] {
            let mut c = Vec::with_capacity(n);
            c.push(0);
            c.extend_from_slice(&rest);
            out.push(Diagram::from_cycle(c));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let want = [1usize, 1, 3, 12, 60, 360, 2520, 20160];
        for (n, w) in (2..=9).zip(want) {
            assert_eq!(enumerate_diagrams(n).unwrap().len(), w, "n={n}");
        }
        assert_eq!(enumerate_diagrams(10), Err(Error::OrderTooLarge(10)));
        assert!(enumerate_diagrams(1).is_err());
    }

    #[test]
    fn every_vertex_has_degree_two_and_edge_sets_are_distinct() {
        for n in 3..=7 {
            let ds = enumerate_diagrams(n).unwrap();
            let mut seen = HashSet::new();
            for d in &ds {
                let mut deg = vec![0; n];
                for &(a, b) in &d.edges {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                assert!(deg.iter().all(|&k| k == 2));
                assert!(seen.insert(d.edges.clone()));
            }
        }
    }

    #[test]
    fn low_orders() {
        let d2 = enumerate_diagrams(2).unwrap();
        assert_eq!(d2[0].edges, vec![(0, 1), (0, 1)]);
        assert_eq!(d2[0].weight(), 2.0);
        let d4 = enumerate_diagrams(4).unwrap();
        let cycles: Vec<_> = d4.iter().map(|d| d.cycle.clone()).collect();
        assert_eq!(cycles, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]);
        assert_eq!(d4[0].weight(), 8.0);
    }
}
