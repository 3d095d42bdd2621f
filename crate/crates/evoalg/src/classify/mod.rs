//! Canonical classification of 2- and 3-dimensional simple evolution
//! algebras.
//!
//! Every simple algebra of dimension 2 or 3 lands in exactly one canonical
//! family: 3 families in dimension 2 and 28 in dimension 3 (the 27
//! published types plus the completion family `_5III^{2,6}`; see
//! [`families`] for why the extra shape is needed). A family is a static
//! record: a matrix pattern over
//! cells Zero / One / Param, the derived canonical graph, a parameter list,
//! and an orbit rule saying when two parameter tuples give isomorphic
//! algebras. Families with the same dimension are told apart by their
//! graphs, which are pairwise non-isomorphic (asserted when the table is
//! built).
//!
//! [`classify`] matches the associated graph against the canonical graphs,
//! picks the lexicographically smallest matching vertex bijection, solves
//! the One-cells of the pattern for the basis rescaling (the cells form a
//! chain, so no root extraction is ever needed), and reads the parameters
//! off the normalized matrix. [`are_isomorphic`] then compares parameter
//! tuples with the family's orbit rule, trying every admissible
//! canonicalization of the second algebra so that graph automorphisms not
//! already absorbed by the rule are covered.

mod brute;
mod census;
mod families;

pub use brute::brute_force_isomorphic;
pub use census::{census, CensusOptions, CensusReport};
pub use families::{Cell, FamilySpec, FamilyTable};

use std::fmt;

use crate::algebra::{BasisChange, EvolutionAlgebra};
use crate::field::{Field, Scalar};
use crate::graph::graph_of;
use crate::moduli::{self, DEFAULT_POWER_BOUND};
use crate::{Error, Result};

/// A classified algebra: canonical family plus its parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTag {
    pub family: &'static str,
    pub params: Vec<Scalar>,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family, params.join(","))
    }
}

impl TypeTag {
    /// `id  name=value ...`, the human-readable report line.
    pub fn describe(&self) -> String {
        let spec = FamilyTable::global().by_id(self.family).expect("tag family exists");
        let parts: Vec<String> = spec
            .params
            .iter()
            .zip(&self.params)
            .map(|(name, value)| format!("{name}={value}"))
            .collect();
        format!("{}  {}", self.family, parts.join(" "))
    }
}

fn ensure_classifiable(a: &EvolutionAlgebra) -> Result<()> {
    if !(2..=3).contains(&a.dim()) {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    if !a.is_perfect() {
        return Err(Error::NotSimple("structure matrix is singular (not perfect)"));
    }
    if !graph_of(a).is_strongly_connected() {
        return Err(Error::NotSimple("associated graph is not strongly connected"));
    }
    Ok(())
}

/// Solves the One-cells of the family pattern for the rescaling constants.
///
/// `sigma` maps canonical vertices to vertices of `a`. A diagonal One-cell
/// (k, k) pins c_k directly; an off-diagonal One-cell (k, i) yields
/// c_k = c_i^2 * m[sigma(k)][sigma(i)] once c_i is known. Whenever no cell
/// is resolvable the lowest-index unknown is a free scaling constant and is
/// set to 1.
fn solve_rescaling(a: &EvolutionAlgebra, spec: &FamilySpec, sigma: &[usize]) -> Result<Vec<Scalar>> {
    let n = spec.dim;
    let field = a.field().clone();
    let mut c: Vec<Option<Scalar>> = vec![None; n];
    let one_cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|k| (0..n).map(move |i| (k, i)))
        .filter(|&(k, i)| spec.cell(k, i) == Cell::One)
        .collect();
    while c.iter().any(Option::is_none) {
        let mut progress = false;
        for &(k, i) in &one_cells {
            if c[k].is_some() {
                continue;
            }
            let w = a.entry(sigma[k], sigma[i]);
            let value = if k == i {
                w.inv()?
            } else if let Some(ci) = &c[i] {
                ci.mul(ci)?.mul(w)?
            } else {
                continue;
            };
            c[k] = Some(value);
            progress = true;
        }
        if !progress {
            let free = c.iter().position(Option::is_none).expect("an unknown remains");
            c[free] = Some(field.one());
        }
    }
    Ok(c.into_iter().map(Option::unwrap).collect())
}

/// Parameters of `a` read through the canonicalization given by `sigma`.
fn params_via(a: &EvolutionAlgebra, spec: &FamilySpec, sigma: &[usize]) -> Result<Vec<Scalar>> {
    let scalars = solve_rescaling(a, spec, sigma)?;
    let change = BasisChange::new(sigma.to_vec(), scalars)?;
    let normalized = a.change_basis(&change)?;
    let mut params = vec![a.field().zero(); spec.params.len()];
    for k in 0..spec.dim {
        for i in 0..spec.dim {
            match spec.cell(k, i) {
                Cell::Zero => debug_assert!(normalized.entry(k, i).is_zero()),
                Cell::One => debug_assert!(normalized.entry(k, i).is_one()),
                Cell::Param(p) => params[p] = normalized.entry(k, i).clone(),
            }
        }
    }
    debug_assert!(params.iter().all(|p| !p.is_zero()));
    Ok(params)
}

/// The canonical family of a simple algebra of dimension 2 or 3, with the
/// parameters obtained from the lexicographically smallest graph matching.
pub fn classify(a: &EvolutionAlgebra) -> Result<TypeTag> {
    ensure_classifiable(a)?;
    let g = graph_of(a);
    let table = FamilyTable::global();
    for spec in table.candidates(a.dim(), g.loop_count(), g.edge_count()) {
        let mut sigmas = spec.graph().isomorphisms_onto(&g);
        if sigmas.is_empty() {
            continue;
        }
        sigmas.sort();
        let params = params_via(a, spec, &sigmas[0])?;
        return Ok(TypeTag { family: spec.id, params });
    }
    Err(Error::NoFamilyMatch)
}

/// Isomorphism verdict; `exhaustive` is false only if a bounded power
/// search was cut off while the answer is "not isomorphic so far".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub exhaustive: bool,
}

/// Are two simple algebras (dimension 2 or 3, same field) isomorphic?
pub fn are_isomorphic(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<bool> {
    Ok(are_isomorphic_with(a, b, DEFAULT_POWER_BOUND)?.isomorphic)
}

/// Like [`are_isomorphic`], with an explicit power bound for the one
/// semi-decidable rule, and reporting exhaustiveness.
///
/// The first algebra is classified once; the second is re-canonicalized
/// through every admissible graph matching, and the tuples are compared
/// with the family's orbit rule. Trying all matchings makes graph
/// automorphisms that the rule does not already absorb (the loop-free
/// 6-edge family is the prominent case) sound and complete: the set of
/// rule-orbits reachable from an algebra is an isomorphism invariant.
pub fn are_isomorphic_with(
    a: &EvolutionAlgebra,
    b: &EvolutionAlgebra,
    power_bound: u32,
) -> Result<IsoVerdict> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    ensure_classifiable(a)?;
    ensure_classifiable(b)?;
    let tag_a = classify(a)?;
    let spec = FamilyTable::global().by_id(tag_a.family).expect("family exists");
    let gb = graph_of(b);
    let mut sigmas = spec.graph().isomorphisms_onto(&gb);
    if sigmas.is_empty() {
        // Different canonical families: distinct graphs, never isomorphic.
        return Ok(IsoVerdict { isomorphic: false, exhaustive: true });
    }
    sigmas.sort();
    let mut exhaustive = true;
    for sigma in &sigmas {
        let params_b = params_via(b, spec, sigma)?;
        let decision = moduli::orbit_decide(&spec.rule, &tag_a.params, &params_b, power_bound)?;
        if decision.equal {
            return Ok(IsoVerdict { isomorphic: true, exhaustive: true });
        }
        exhaustive &= decision.exhaustive;
    }
    Ok(IsoVerdict { isomorphic: false, exhaustive })
}

/// The canonical structure matrix of a family with parameters substituted.
/// Errors if a parameter is zero or the resulting matrix is singular (the
/// family's nonzero-determinant constraint).
pub fn canonical_algebra(family: &str, params: &[Scalar], field: &Field) -> Result<EvolutionAlgebra> {
    let spec = FamilyTable::global()
        .by_id(family)
        .ok_or_else(|| Error::Parse(format!("unknown family id {family:?}")))?;
    if params.len() != spec.params.len() {
        return Err(Error::ShapeMismatch(spec.params.len(), params.len()));
    }
    for p in params {
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
        if p.is_zero() {
            return Err(Error::ConstraintViolated("family parameters must be nonzero".into()));
        }
    }
    let mut entries = Vec::with_capacity(spec.dim * spec.dim);
    for k in 0..spec.dim {
        for i in 0..spec.dim {
            entries.push(match spec.cell(k, i) {
                Cell::Zero => field.zero(),
                Cell::One => field.one(),
                Cell::Param(p) => params[p].clone(),
            });
        }
    }
    let algebra = EvolutionAlgebra::new(field.clone(), spec.dim, entries)?;
    if !algebra.is_perfect() {
        return Err(Error::ConstraintViolated(format!(
            "parameters make the {} structure matrix singular ({})",
            spec.id, spec.constraint
        )));
    }
    debug_assert!(algebra.is_simple());
    Ok(algebra)
}

/// Convenience wrapper over a [`TypeTag`].
pub fn canonical_from_tag(tag: &TypeTag, field: &Field) -> Result<EvolutionAlgebra> {
    canonical_algebra(tag.family, &tag.params, field)
}
