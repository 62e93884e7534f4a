use crate::dense::Operator;
use crate::error::{Error, Result};
use crate::scalar::{c, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Cycle on `N` vertices.
    Ring(usize),
    /// `n`-dimensional hypercube on `2ⁿ` vertices.
    Hypercube(usize),
    /// Complete graph on `N` vertices.
    Complete(usize),
}

/// Simple undirected graph stored as a dense 0/1 adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    order: usize,
    adjacency: Vec<bool>,
}

impl Graph {
    pub fn new(kind: GraphKind) -> Result<Self> {
        let order = match kind {
            GraphKind::Ring(n) if n >= 3 => n,
            GraphKind::Complete(n) if n >= 2 => n,
            GraphKind::Hypercube(d) if (1..=12).contains(&d) => 1 << d,
            _ => return Err(Error::param("graph", format!("unsupported size {kind:?}"))),
        };
        let mut adjacency = vec![false; order * order];
        for i in 0..order {
            for j in 0..order {
                adjacency[i * order + j] = match kind {
                    GraphKind::Ring(n) => (i + 1) % n == j || (j + 1) % n == i,
                    GraphKind::Hypercube(_) => (i ^ j).count_ones() == 1,
                    GraphKind::Complete(_) => i != j,
                };
            }
        }
        Ok(Self { kind, order, adjacency })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.order + j]
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.order).filter(|&j| self.adjacent(i, j)).count()
    }

    pub fn adjacency_matrix<T: Real>(&self) -> Operator<T> {
        Operator::from_fn(self.order, |r, col| if self.adjacent(r, col) { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .into_hermitian()
            .expect("adjacency is symmetric")
    }

    /// `𝔏 = A − D`.
    pub fn laplacian<T: Real>(&self) -> Operator<T> {
        Operator::from_fn(self.order, |r, col| {
            if r == col {
                c(-(self.degree(r) as f64), 0.0)
            } else if self.adjacent(r, col) {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
        .into_hermitian()
        .expect("laplacian is symmetric")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        for kind in [GraphKind::Ring(7), GraphKind::Hypercube(3), GraphKind::Complete(5)] {
            let g = Graph::new(kind).unwrap();
            let l = g.laplacian::<f64>();
            for i in 0..g.order() {
                assert!(!g.adjacent(i, i));
                let row: f64 = (0..g.order()).map(|j| l.get(i, j).re).sum();
                assert_eq!(row, 0.0);
                for j in 0..g.order() {
                    assert_eq!(g.adjacent(i, j), g.adjacent(j, i));
                }
            }
        }
        assert_eq!(Graph::new(GraphKind::Hypercube(4)).unwrap().degree(3), 4);
        assert!(Graph::new(GraphKind::Ring(2)).is_err());
    }
}
