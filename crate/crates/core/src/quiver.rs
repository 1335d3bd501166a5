//! Acyclic quivers (finite directed multigraphs).

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Cached topological order of vertex indices.
    pub topo: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    Cyclic,
    DuplicateLabel(String),
    BadVertex(usize),
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::Cyclic => write!(f, "quiver has an oriented cycle"),
            QuiverError::DuplicateLabel(l) => write!(f, "duplicate arrow label {l}"),
            QuiverError::BadVertex(v) => write!(f, "arrow references unknown vertex {v}"),
        }
    }
}

impl std::error::Error for QuiverError {}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let n = vertex_names.len();
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if a.tail >= n {
                return Err(QuiverError::BadVertex(a.tail));
            }
            if a.head >= n {
                return Err(QuiverError::BadVertex(a.head));
            }
            if !seen.insert(a.label.clone()) {
                return Err(QuiverError::DuplicateLabel(a.label.clone()));
            }
        }
        let topo = topo_order(n, &arrows).ok_or(QuiverError::Cyclic)?;
        Ok(Quiver { vertex_names, arrows, topo })
    }

    /// Convenience constructor with numeric vertex names "1".."n" and
    /// auto-generated labels.
    pub fn from_arrow_list(n: usize, arcs: &[(usize, usize)]) -> Self {
        let arrows = arcs
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| Arrow { tail: t, head: h, label: format!("a{i}") })
            .collect();
        Quiver::new((1..=n).map(|v| v.to_string()).collect(), arrows).expect("valid quiver")
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// Adjacency count matrix: entry (i, j) = number of arrows i -> j.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.n_vertices();
        let mut a = vec![vec![0i64; n]; n];
        for arr in &self.arrows {
            a[arr.tail][arr.head] += 1;
        }
        a
    }

    /// Multigraph isomorphism by brute-force vertex permutation; fine for the
    /// small quivers handled here.
    pub fn isomorphic_to(&self, other: &Quiver) -> bool {
        let n = self.n_vertices();
        if n != other.n_vertices() || self.n_arrows() != other.n_arrows() {
            return false;
        }
        let a = self.adjacency();
        let b = other.adjacency();
        permutations(n).into_iter().any(|perm| {
            (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]]))
        })
    }
}

fn topo_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.head] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    stack.sort_unstable();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.tail == v) {
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                stack.push(a.head);
            }
        }
    }
    if order.len() == n {
        Some(order)
    } else {
        None
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The n-arrow Kronecker quiver: two vertices, n arrows 1 -> 2.
pub fn theta(n: usize) -> Quiver {
    Quiver::from_arrow_list(2, &vec![(0, 1); n])
}

/// Three vertices with double arrows 1 => 3 and 2 => 3. Contracting the last
/// arrow of the four-vertex corpus quiver b2 lands here, which pins the
/// orientation.
pub fn theta22() -> Quiver {
    Quiver::from_arrow_list(3, &[(0, 2), (0, 2), (1, 2), (1, 2)])
}

/// Three vertices, arrows d: 1->2, c: 1->3, a, b: 2->3.
pub fn b1() -> Quiver {
    let arrows = vec![
        Arrow { tail: 0, head: 1, label: "d".into() },
        Arrow { tail: 0, head: 2, label: "c".into() },
        Arrow { tail: 1, head: 2, label: "a".into() },
        Arrow { tail: 1, head: 2, label: "b".into() },
    ];
    Quiver::new(vec!["1".into(), "2".into(), "3".into()], arrows).unwrap()
}

/// Three vertices, arrows a: 1->2, b, c: 2->3.
pub fn c36() -> Quiver {
    let arrows = vec![
        Arrow { tail: 0, head: 1, label: "a".into() },
        Arrow { tail: 1, head: 2, label: "b".into() },
        Arrow { tail: 1, head: 2, label: "c".into() },
    ];
    Quiver::new(vec!["1".into(), "2".into(), "3".into()], arrows).unwrap()
}

/// Three vertices, arrows a, b: 1->2, c: 2->3.
pub fn ex0() -> Quiver {
    let arrows = vec![
        Arrow { tail: 0, head: 1, label: "a".into() },
        Arrow { tail: 0, head: 1, label: "b".into() },
        Arrow { tail: 1, head: 2, label: "c".into() },
    ];
    Quiver::new(vec!["1".into(), "2".into(), "3".into()], arrows).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycle() {
        let arrows = vec![
            Arrow { tail: 0, head: 1, label: "a".into() },
            Arrow { tail: 1, head: 0, label: "b".into() },
        ];
        assert_eq!(
            Quiver::new(vec!["1".into(), "2".into()], arrows).unwrap_err(),
            QuiverError::Cyclic
        );
    }

    #[test]
    fn topo_order_respects_arrows() {
        let q = b1();
        let pos: Vec<usize> = {
            let mut p = vec![0; q.n_vertices()];
            for (i, &v) in q.topo.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        for a in &q.arrows {
            assert!(pos[a.tail] < pos[a.head]);
        }
    }

    #[test]
    fn iso_detects_relabeling() {
        let q1 = Quiver::from_arrow_list(3, &[(0, 1), (0, 1), (1, 2)]);
        let q2 = Quiver::from_arrow_list(3, &[(2, 0), (2, 0), (0, 1)]);
        assert!(q1.isomorphic_to(&q2));
        assert!(!q1.isomorphic_to(&theta22()));
    }
}
