//! Tensor products of evolution algebras and the constructions built on
//! them: simplicity prediction from graph periods, semisimple
//! decomposition along product components, block inflation, and the
//! quotient non-simplicity check for one-dimensional ideals.
//!
//! The structure matrix of a tensor product is the Kronecker product of
//! the factors' matrices under the flattening (i, p) -> i*m + p, the same
//! convention as [`crate::graph::DiGraph::categorical_product`]; the
//! associated graph of the product is exactly the categorical product of
//! the factors' graphs.

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{EvolutionAlgebra, Vector};
use crate::field::Scalar;
use crate::graph::{graph_of, DiGraph};
use crate::{Error, Result};

fn kronecker(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<EvolutionAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (n, m) = (a.dim(), b.dim());
    let dim = n * m;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..n {
        for r in 0..m {
            for j in 0..n {
                for c in 0..m {
                    entries.push(a.entry(i, j).mul(b.entry(r, c))?);
                }
            }
        }
    }
    EvolutionAlgebra::new(a.field().clone(), dim, entries)
}

/// The tensor product A (x) B on the basis e_i (x) u_p, flattened to index
/// i*m + p. Its structure matrix is the Kronecker product of the factors'.
pub fn tensor(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<EvolutionAlgebra> {
    let t = kronecker(a, b)?;
    debug_assert_eq!(graph_of(&t), graph_of(a).categorical_product(&graph_of(b)));
    Ok(t)
}

/// Block inflation: each entry w of the template is replaced by the block
/// w * M. As matrices this is exactly the Kronecker product, so inflating
/// a simple template whose graph has a loop by a simple block stays simple.
pub fn inflate(template: &EvolutionAlgebra, block: &EvolutionAlgebra) -> Result<EvolutionAlgebra> {
    kronecker(template, block)
}

fn factor_periods(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<(u64, u64)> {
    if !a.is_simple() || !b.is_simple() {
        return Err(Error::NotSimple("tensor factors must be simple"));
    }
    Ok((graph_of(a).period()?, graph_of(b).period()?))
}

/// Is the tensor product of two simple algebras simple? Exactly when the
/// periods of the factors' graphs are coprime.
pub fn predict_tensor_simple(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<bool> {
    let (d1, d2) = factor_periods(a, b)?;
    Ok(d1.gcd(&d2) == 1)
}

/// Decomposition of a tensor product of simple algebras into its simple
/// summands, one per strongly connected component of the product graph.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Vertex sets of the product-graph components (0-based, sorted).
    pub components: Vec<Vec<usize>>,
    /// The subalgebra spanned by each component.
    pub component_algebras: Vec<EvolutionAlgebra>,
    /// gcd of the factor periods: the predicted component count.
    pub predicted_components: u64,
    pub simple: bool,
    pub semisimple: bool,
}

impl DecompositionReport {
    /// JSON rendering with 1-based vertex labels and printed subalgebras.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "components": self.components.iter()
                .map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "component_algebras": self.component_algebras.iter()
                .map(|a| a.print())
                .collect::<Vec<_>>(),
            "predicted_components": self.predicted_components,
            "simple": self.simple,
            "semisimple": self.semisimple,
        })
    }
}

/// Builds tensor(a, b) for simple factors and decomposes it along the
/// strongly connected components of the product graph. Each component
/// spans a subalgebra (an error otherwise: that would contradict the
/// component structure of products of strongly connected graphs), and each
/// such subalgebra is checked simple.
pub fn decompose(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<DecompositionReport> {
    let (d1, d2) = factor_periods(a, b)?;
    let t = tensor(a, b)?;
    let graph = graph_of(&t);
    let components = graph.components();
    let mut component_algebras = Vec::with_capacity(components.len());
    for comp in &components {
        let sub = t.subalgebra_on(comp)?;
        component_algebras.push(sub);
    }
    let all_simple = component_algebras.iter().all(EvolutionAlgebra::is_simple);
    Ok(DecompositionReport {
        simple: components.len() == 1 && all_simple,
        semisimple: all_simple,
        predicted_components: d1.gcd(&d2),
        components,
        component_algebras,
    })
}

/// Result of the quotient non-simplicity check on a tensor product.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheckReport {
    pub tensor_dim: usize,
    /// Projective representatives of the line ideals found (printed
    /// coordinates), parallel to `quotient_simple`.
    pub ideals: Vec<String>,
    /// is_simple of the quotient by each ideal; the expectation is that
    /// every entry is false.
    pub quotient_simple: Vec<bool>,
}

impl QuotientCheckReport {
    pub fn all_non_simple(&self) -> bool {
        self.quotient_simple.iter().all(|&s| !s)
    }
}

/// Builds A = tensor(a1, a2), finds all line ideals of A, and records
/// whether each quotient A / Ku is simple. An empty ideal list is a valid
/// report.
pub fn quotient_theorem_check(
    a1: &EvolutionAlgebra,
    a2: &EvolutionAlgebra,
) -> Result<QuotientCheckReport> {
    let t = tensor(a1, a2)?;
    let ideals = t.line_ideals();
    let mut printed = Vec::with_capacity(ideals.len());
    let mut quotient_simple = Vec::with_capacity(ideals.len());
    for u in &ideals {
        let pivot = u.support()[0];
        let quotient = t.quotient_by_line(u, pivot)?;
        printed.push(u.to_string());
        quotient_simple.push(quotient.is_simple());
    }
    Ok(QuotientCheckReport { tensor_dim: t.dim(), ideals: printed, quotient_simple })
}

/// The line ideals of a tensor product, re-exported here for callers that
/// want the vectors rather than the printed report.
pub fn tensor_line_ideals(t: &EvolutionAlgebra) -> Vec<Vector> {
    t.line_ideals()
}

/// Helper for tests and the acceptance suite: an algebra over `field` with
/// weight 1 on every edge of `graph`; if that matrix is singular, the
/// designated chord edge gets the smallest unit weight making it
/// nonsingular.
pub fn unit_weight_algebra(
    field: &crate::field::Field,
    graph: &DiGraph,
    chord: (usize, usize),
) -> Result<EvolutionAlgebra> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let n = graph.vertex_count();
    let build = |chord_weight: Scalar| -> Result<EvolutionAlgebra> {
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            for col in 0..n {
                // entry (row, col) weights the edge col -> row
                if graph.has_edge(col, row) {
                    if (col, row) == chord {
                        entries.push(chord_weight.clone());
                    } else {
                        entries.push(field.one());
                    }
                } else {
                    entries.push(field.zero());
                }
            }
        }
        EvolutionAlgebra::new(field.clone(), n, entries)
    };
    for unit in field.units()? {
        let candidate = build(unit)?;
        if candidate.is_perfect() {
            return Ok(candidate);
        }
    }
    Err(Error::ConstraintViolated(
        "no unit weight on the designated chord makes the matrix nonsingular".into(),
    ))
}
