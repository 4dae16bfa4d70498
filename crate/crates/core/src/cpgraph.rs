//! The graph of the correspondence E(ρ) over C*(G), the crossed-product graph
//! of ρ ⊗ π_j, and the Pimsner matrices for K-theory.

use num_bigint::BigInt;
use serde::Serialize;

use crate::intlinalg::{coker_ker, IntMatrix, KGroups};
use crate::rep::{rep_op, RepOp, RepSpec};

/// How the correspondence p_k E(ρ) p_i splits into edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// min(n(i), n(k)) edges per occurrence of π_k.
    #[default]
    PaperMin,
    /// n(i) edges per occurrence, one per M_{n(k)×n(i)} summand.
    ModuleCount,
}

impl Convention {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper-min" => Some(Convention::PaperMin),
            "module-count" => Some(Convention::ModuleCount),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::PaperMin => "paper-min",
            Convention::ModuleCount => "module-count",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    PaperMin,
    ModuleCount,
    CrossedProduct,
}

impl From<Convention> for GraphKind {
    fn from(c: Convention) -> Self {
        match c {
            Convention::PaperMin => GraphKind::PaperMin,
            Convention::ModuleCount => GraphKind::ModuleCount,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub index: usize,
    pub name: String,
    pub algebra_dim: u64,
}

/// `multiplicity` parallel edges from `src` to `dst`, each an M_{rows×cols} correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label_rows: u64,
    pub label_cols: u64,
    pub multiplicity: u64,
}

impl Edge {
    pub fn label_dim(&self) -> u64 {
        self.label_rows * self.label_cols
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// `b[v][w]` counts edges from w to v.
    #[serde(rename = "B")]
    pub b: Vec<Vec<u64>>,
    pub convention: GraphKind,
}

impl CorrGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn b_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.b)
    }

    /// Vertices with a zero row of B.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.b[v].iter().all(|&x| x == 0)).collect()
    }

    fn from_edges(r: &RepSpec, edges: Vec<Edge>, kind: GraphKind) -> Self {
        let t = r.table();
        let n = t.num_irreps();
        let vertices =
            (0..n).map(|i| Vertex { index: i, name: t.labels()[i].clone(), algebra_dim: t.dim(i) }).collect();
        let mut b = vec![vec![0u64; n]; n];
        for e in &edges {
            b[e.dst][e.src] += e.multiplicity;
        }
        CorrGraph { vertices, edges, b, convention: kind }
    }
}

pub fn build_e_graph(r: &RepSpec, convention: Convention) -> CorrGraph {
    let t = r.table();
    let n = t.num_irreps();
    let mut edges = Vec::new();
    for i in 0..n {
        let ni = t.dim(i);
        for (k, &mk) in r.mults().iter().enumerate() {
            if mk == 0 {
                continue;
            }
            let nk = t.dim(k);
            let (count, rows, cols) = match convention {
                Convention::PaperMin => (ni.min(nk), ni.max(nk), ni),
                Convention::ModuleCount => (ni, nk, ni),
            };
            edges.push(Edge { src: i, dst: k, label_rows: rows, label_cols: cols, multiplicity: mk * count });
        }
    }
    CorrGraph::from_edges(r, edges, convention.into())
}

/// B(k, j) = multiplicity of π_k in ρ ⊗ π_j.
pub fn build_d_graph(r: &RepSpec) -> CorrGraph {
    let t = r.table();
    let n = t.num_irreps();
    let mut edges = Vec::new();
    for j in 0..n {
        let mut pj = vec![0; n];
        pj[j] = 1;
        let pj = RepSpec::from_mults(std::sync::Arc::clone(t), pj).expect("length matches table");
        let prod = rep_op(r, &pj, RepOp::Tensor).expect("product of characters decomposes");
        for (k, &m) in prod.mults().iter().enumerate() {
            if m > 0 {
                edges.push(Edge { src: j, dst: k, label_rows: t.dim(k), label_cols: t.dim(j), multiplicity: m });
            }
        }
    }
    CorrGraph::from_edges(r, edges, GraphKind::CrossedProduct)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PimsnerData {
    /// M(j, i) = m_i n(j).
    pub m: IntMatrix,
    /// Columns where the left action is injective.
    pub j_cols: Vec<usize>,
    /// (I - M) restricted to `j_cols`.
    pub reduced: IntMatrix,
}

impl PimsnerData {
    pub fn k_groups(&self) -> KGroups {
        coker_ker(&self.reduced)
    }
}

pub fn pimsner_matrices(r: &RepSpec) -> PimsnerData {
    let t = r.table();
    let n = t.num_irreps();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(j, i, BigInt::from(r.mults()[i]) * BigInt::from(t.dim(j)));
        }
    }
    let j_cols: Vec<usize> = (0..n).filter(|&i| r.mults()[i] > 0).collect();
    let reduced = IntMatrix::identity(n).sub(&m).select_columns(&j_cols);
    PimsnerData { m, j_cols, reduced }
}
