//! The evolution-algebra value type.
//!
//! An evolution algebra is presented by its structure matrix relative to a
//! natural basis: **column i holds the coordinates of e_i^2**, so
//! `e_i^2 = sum_j m[j][i] e_j` and distinct basis vectors multiply to zero.
//! (Transposed conventions exist elsewhere; everything in this crate,
//! including the text format and the graph extraction, uses the column
//! convention.)
//!
//! The algebra is *perfect* when the structure matrix is nonsingular, and
//! simple iff it is perfect with strongly connected associated graph.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::field::{Field, Scalar};
use crate::graph::graph_of;
use crate::{Error, Result};

/// A coordinate vector relative to the ambient natural basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    field: Field,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Vector> {
        for c in &coords {
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Vector { field, coords })
    }

    pub fn zero(field: Field, n: usize) -> Vector {
        let coords = (0..n).map(|_| field.zero()).collect();
        Vector { field, coords }
    }

    /// The i-th natural basis vector of an n-dimensional algebra.
    pub fn basis(field: Field, n: usize, i: usize) -> Vector {
        let mut v = Vector::zero(field.clone(), n);
        v.coords[i] = field.one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Result<Vector> {
        let coords = self.coords.iter().map(|x| x.mul(c)).collect::<Result<_>>()?;
        Ok(Vector { field: self.field.clone(), coords })
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Vector { field: self.field.clone(), coords })
    }

    /// Projective representative: scaled so the first nonzero coordinate is 1.
    pub fn projective_normal(&self) -> Result<Vector> {
        let first = self.support().into_iter().next().ok_or(Error::ZeroInput)?;
        self.scale(&self.coords[first].inv()?)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A change of natural basis `u_i = scalars[i] * e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    perm: Vec<usize>,
    scalars: Vec<Scalar>,
}

impl BasisChange {
    pub fn new(perm: Vec<usize>, scalars: Vec<Scalar>) -> Result<BasisChange> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(Error::DimensionMismatch(n, scalars.len()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::VertexOutOfRange(p, n));
            }
            seen[p] = true;
        }
        for c in &scalars {
            if c.is_zero() {
                return Err(Error::ZeroBasisScalar);
            }
        }
        Ok(BasisChange { perm, scalars })
    }

    pub fn identity(field: &Field, n: usize) -> BasisChange {
        BasisChange {
            perm: (0..n).collect(),
            scalars: (0..n).map(|_| field.one()).collect(),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }

    /// The change mapping the new basis back: e_j = c_{s(j)}^{-1} u_{s(j)}
    /// with s the inverse permutation.
    pub fn inverse(&self) -> BasisChange {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut scalars = vec![None; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scalars[self.perm[i]] = Some(self.scalars[i].inv().expect("basis scalars are nonzero"));
        }
        BasisChange { perm, scalars: scalars.into_iter().map(Option::unwrap).collect() }
    }
}

/// Finite-dimensional evolution algebra given by its structure matrix.
#[derive(Clone)]
pub struct EvolutionAlgebra {
    field: Field,
    n: usize,
    entries: Vec<Scalar>, // row-major n x n
    det: OnceLock<Scalar>,
}

impl PartialEq for EvolutionAlgebra {
    fn eq(&self, other: &Self) -> bool {
        // The determinant cache is derived data and takes no part in equality.
        self.field == other.field && self.n == other.n && self.entries == other.entries
    }
}

impl Eq for EvolutionAlgebra {}

impl fmt::Debug for EvolutionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvolutionAlgebra over {}:\n{}", self.field, self.print())
    }
}

impl EvolutionAlgebra {
    /// Builds an n-dimensional algebra from row-major entries.
    pub fn new(field: Field, n: usize, entries: Vec<Scalar>) -> Result<EvolutionAlgebra> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, entries.len()));
        }
        for s in &entries {
            if s.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(EvolutionAlgebra { field, n, entries, det: OnceLock::new() })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<EvolutionAlgebra> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(n, r.len()));
            }
        }
        EvolutionAlgebra::new(field, n, rows.into_iter().flatten().collect())
    }

    /// Convenience: build over `field` from integer entries.
    pub fn from_integers(field: &Field, rows: &[&[i64]]) -> Result<EvolutionAlgebra> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.integer(x)).collect())
            .collect();
        EvolutionAlgebra::from_rows(field.clone(), rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Structure-matrix entry in `row`, `col` (0-based).
    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.n + col]
    }

    /// e_i^2 as a coordinate vector (column i of the structure matrix).
    pub fn square_of_basis(&self, i: usize) -> Vector {
        let coords = (0..self.n).map(|j| self.entry(j, i).clone()).collect();
        Vector { field: self.field.clone(), coords }
    }

    /// The bilinear product: x * y = sum_i x_i y_i e_i^2.
    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch(x.len(), y.len()));
        }
        let mut out = Vector::zero(self.field.clone(), self.n);
        for i in 0..self.n {
            let c = x.get(i).mul(y.get(i))?;
            if c.is_zero() {
                continue;
            }
            out = out.add(&self.square_of_basis(i).scale(&c)?)?;
        }
        Ok(out)
    }

    /// Determinant of the structure matrix by exact Gaussian elimination,
    /// cached after the first call.
    pub fn determinant(&self) -> &Scalar {
        self.det.get_or_init(|| {
            let n = self.n;
            let mut m: Vec<Scalar> = self.entries.clone();
            let mut det = self.field.one();
            for col in 0..n {
                let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
                let Some(pivot) = pivot else {
                    return self.field.zero();
                };
                if pivot != col {
                    for c in 0..n {
                        m.swap(pivot * n + c, col * n + c);
                    }
                    det = det.neg();
                }
                let p = m[col * n + col].clone();
                det = det.mul(&p).expect("same field");
                let p_inv = p.inv().expect("pivot is nonzero");
                for r in col + 1..n {
                    let factor = m[r * n + col].mul(&p_inv).expect("same field");
                    if factor.is_zero() {
                        continue;
                    }
                    for c in col..n {
                        let sub = m[col * n + c].mul(&factor).expect("same field");
                        m[r * n + c] = m[r * n + c].sub(&sub).expect("same field");
                    }
                }
            }
            det
        })
    }

    /// Perfect means nonsingular structure matrix.
    pub fn is_perfect(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Structure matrix relative to the natural basis `u_i = c_i e_{s(i)}`:
    /// entry (k, i) becomes `c_i^2 c_k^{-1} m[s(k)][s(i)]`.
    pub fn change_basis(&self, b: &BasisChange) -> Result<EvolutionAlgebra> {
        if b.perm.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, b.perm.len()));
        }
        for c in &b.scalars {
            if c.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for k in 0..self.n {
            let ck_inv = b.scalars[k].inv()?;
            for i in 0..self.n {
                let ci2 = b.scalars[i].mul(&b.scalars[i])?;
                let w = self.entry(b.perm[k], b.perm[i]);
                entries.push(ci2.mul(&ck_inv)?.mul(w)?);
            }
        }
        EvolutionAlgebra::new(self.field.clone(), self.n, entries)
    }

    /// The basis-independent counts of a perfect algebra: l = nonzero
    /// diagonal entries (loops), e = nonzero entries (edges), and the
    /// dimension of the diagonal subspace, which equals l.
    pub fn invariants(&self) -> Result<AlgebraInvariants> {
        if !self.is_perfect() {
            return Err(Error::NotPerfect);
        }
        let l = (0..self.n).filter(|&i| !self.entry(i, i).is_zero()).count();
        let e = self.entries.iter().filter(|s| !s.is_zero()).count();
        Ok(AlgebraInvariants { l, e, diag_dim: l })
    }

    /// T(S): the set of vertices reachable from S in the associated graph
    /// (S included via the empty path). The span of the corresponding basis
    /// vectors is an ideal.
    pub fn tree_ideal(&self, s: &[usize]) -> Result<BTreeSet<usize>> {
        for &v in s {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, self.n));
            }
        }
        let g = graph_of(self);
        let mut reached: BTreeSet<usize> = s.iter().copied().collect();
        let mut queue: Vec<usize> = reached.iter().copied().collect();
        while let Some(u) = queue.pop() {
            for v in 0..self.n {
                if g.has_edge(u, v) && reached.insert(v) {
                    queue.push(v);
                }
            }
        }
        // Closure under multiplication: supp(e_i^2) stays inside T(S).
        debug_assert!(reached
            .iter()
            .all(|&i| self.square_of_basis(i).support().iter().all(|j| reached.contains(j))));
        Ok(reached)
    }

    /// Simple iff perfect and the associated graph is strongly connected.
    pub fn is_simple(&self) -> bool {
        self.is_perfect() && graph_of(self).is_strongly_connected()
    }

    /// Does u span a one-dimensional ideal? Happens iff e_i^2 is a scalar
    /// multiple of u for every i in the support of u.
    pub fn spans_line_ideal(&self, u: &Vector) -> Result<bool> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, u.len()));
        }
        let support = u.support();
        if support.is_empty() {
            return Ok(false);
        }
        let j0 = support[0];
        for &i in &support {
            let sq = self.square_of_basis(i);
            // ratio forced by coordinate j0; then the whole vector must match
            let c = sq.get(j0).div(u.get(j0))?;
            if sq != u.scale(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All vectors spanning one-dimensional ideals, as projective
    /// representatives. Candidate directions are each nonzero e_i^2 and
    /// each e_i whose square lies in its own line (including e_i^2 = 0);
    /// no enumeration over the field is needed, so Q is covered exactly.
    pub fn line_ideals(&self) -> Vec<Vector> {
        let mut found: Vec<Vector> = Vec::new();
        let push = |v: Vector, found: &mut Vec<Vector>| {
            if let Ok(norm) = v.projective_normal() {
                if !found.contains(&norm) && self.spans_line_ideal(&norm).unwrap_or(false) {
                    found.push(norm);
                }
            }
        };
        for i in 0..self.n {
            let sq = self.square_of_basis(i);
            if !sq.is_zero() {
                push(sq, &mut found);
            }
        }
        for i in 0..self.n {
            let sq = self.square_of_basis(i);
            let supp = sq.support();
            if supp.is_empty() || supp == [i] {
                push(Vector::basis(self.field.clone(), self.n, i), &mut found);
            }
        }
        found
    }

    /// The quotient A / Ku on the images of the basis vectors e_j, j != pivot,
    /// substituting e_pivot = -u_pivot^{-1} sum_{j != pivot} u_j e_j.
    /// Cross products of distinct images remain zero, so the images form a
    /// natural basis of the quotient.
    pub fn quotient_by_line(&self, u: &Vector, pivot: usize) -> Result<EvolutionAlgebra> {
        if !self.spans_line_ideal(u)? {
            return Err(Error::NotAnIdeal);
        }
        if pivot >= self.n || u.get(pivot).is_zero() {
            return Err(Error::PivotOutsideSupport(pivot));
        }
        if self.n < 2 {
            return Err(Error::UnsupportedDimension(0));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&j| j != pivot).collect();
        let up_inv = u.get(pivot).inv()?;
        let mut entries = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                // new (i, j) entry: w_ij - w_{pivot,j} * u_i / u_pivot
                let correction = self.entry(pivot, j).mul(&up_inv)?.mul(u.get(i))?;
                entries.push(self.entry(i, j).sub(&correction)?);
            }
        }
        EvolutionAlgebra::new(self.field.clone(), keep.len(), entries)
    }

    /// The subalgebra spanned by the given basis vectors; errors unless the
    /// span is closed under multiplication.
    pub fn subalgebra_on(&self, support: &[usize]) -> Result<EvolutionAlgebra> {
        for &v in support {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, self.n));
            }
        }
        for &i in support {
            let outside = self
                .square_of_basis(i)
                .support()
                .into_iter()
                .any(|j| !support.contains(&j));
            if outside {
                return Err(Error::ComponentNotClosed(support.to_vec()));
            }
        }
        let mut entries = Vec::with_capacity(support.len() * support.len());
        for &i in support {
            for &j in support {
                entries.push(self.entry(i, j).clone());
            }
        }
        EvolutionAlgebra::new(self.field.clone(), support.len(), entries)
    }

    /// Text format: line 1 the field header, line 2 the dimension, then the
    /// structure matrix rows as whitespace-separated scalar literals.
    ///
    /// ```
    /// use evoalg::algebra::EvolutionAlgebra;
    /// let a = EvolutionAlgebra::parse("F 5\n2\n0 2\n1 0\n")?;
    /// assert_eq!(a.dim(), 2);
    /// assert_eq!(a.print(), "F 5\n2\n0 2\n1 0\n");
    /// # Ok::<(), evoalg::Error>(())
    /// ```
    pub fn parse(text: &str) -> Result<EvolutionAlgebra> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty algebra file".into()))?;
        let field = Field::parse_header(header)?;
        let n_line = lines.next().ok_or_else(|| Error::Parse("missing dimension line".into()))?;
        let n: usize = n_line
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension {:?}", n_line.trim())))?;
        if n == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {}", row + 1)))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    row + 1,
                    tokens.len()
                )));
            }
            for tok in tokens {
                entries.push(field.parse_scalar(tok)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix rows".into()));
        }
        EvolutionAlgebra::new(field, n, entries)
    }

    /// Inverse of [`EvolutionAlgebra::parse`]: exact round-trip.
    pub fn print(&self) -> String {
        let mut out = format!("{}\n{}\n", self.field.header(), self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The (l, e, dim Diag) record of a perfect evolution algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub l: usize,
    pub e: usize,
    pub diag_dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    /// (0 lambda; 1 0): the two-dimensional loop-free simple algebra.
    fn two_cycle(field: &Field, lambda: i64) -> EvolutionAlgebra {
        EvolutionAlgebra::from_integers(field, &[&[0, lambda], &[1, 0]]).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let a = two_cycle(&q(), 5);
        let e1 = Vector::basis(q(), 2, 0);
        let e2 = Vector::basis(q(), 2, 1);
        assert_eq!(a.multiply(&e1, &e1).unwrap(), e2);
        assert!(a.multiply(&e1, &e2).unwrap().is_zero());
        let sum = e1.add(&e2).unwrap();
        let sq = a.multiply(&sum, &sum).unwrap();
        assert_eq!(sq.get(0), &q().integer(5));
        assert_eq!(sq.get(1), &q().integer(1));
    }

    #[test]
    fn perfect_examples() {
        assert!(two_cycle(&q(), 5).is_perfect()); // det = -5
        let degenerate = EvolutionAlgebra::from_integers(&q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert!(!degenerate.is_perfect());
        // Loop-free 3-dim pattern (0 a m; 1 0 g; d 1 0) is singular exactly
        // when m = -a*d*g; over a field of characteristic 2 the sign is
        // invisible and m = a*d*g is the singular locus.
        let f2 = Field::prime(2).unwrap();
        let sing2 = EvolutionAlgebra::from_integers(&f2, &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert!(!sing2.is_perfect());
        let sing_q =
            EvolutionAlgebra::from_integers(&q(), &[&[0, 1, -1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert!(!sing_q.is_perfect());
        let nonsing_q =
            EvolutionAlgebra::from_integers(&q(), &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert!(nonsing_q.is_perfect()); // det = 1 + 1*1*1 = 2 over Q
    }

    #[test]
    fn change_basis_examples() {
        let field = q();
        let k = 2i64;
        let a = two_cycle(&field, 5);
        // sigma = id, c = (k, k^2): parameter becomes k^3 * 5 = 40.
        let b = BasisChange::new(vec![0, 1], vec![field.integer(k), field.integer(k * k)]).unwrap();
        assert_eq!(a.change_basis(&b).unwrap(), two_cycle(&field, 40));
        // sigma = (1 2), c = (k, k^2 * 5): parameter becomes k^3 * 25 = 200.
        let b =
            BasisChange::new(vec![1, 0], vec![field.integer(k), field.integer(k * k * 5)]).unwrap();
        assert_eq!(a.change_basis(&b).unwrap(), two_cycle(&field, 200));
        // Identity change is the identity.
        let id = BasisChange::identity(&field, 2);
        assert_eq!(a.change_basis(&id).unwrap(), a);
    }

    #[test]
    fn change_basis_round_trip() {
        let field = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let entries: Vec<Scalar> =
                (0..n * n).map(|_| field.integer(rng.gen_range(0..5))).collect();
            let a = EvolutionAlgebra::new(field.clone(), n, entries).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let scalars: Vec<Scalar> = (0..n).map(|_| field.integer(rng.gen_range(1..5))).collect();
            let b = BasisChange::new(perm, scalars).unwrap();
            let transformed = a.change_basis(&b).unwrap();
            assert_eq!(transformed.change_basis(&b.inverse()).unwrap(), a);
        }
    }

    #[test]
    fn invariants_examples() {
        let a = EvolutionAlgebra::from_integers(&q(), &[&[1, 7], &[1, 0]]).unwrap();
        let inv = a.invariants().unwrap();
        assert_eq!((inv.l, inv.e, inv.diag_dim), (1, 3, 1));

        let all = EvolutionAlgebra::from_integers(
            &q(),
            &[&[1, 1, 1], &[1, 2, 1], &[1, 1, 2]],
        )
        .unwrap();
        assert!(all.is_perfect());
        let inv = all.invariants().unwrap();
        assert_eq!((inv.l, inv.e), (3, 9));

        let cyc = EvolutionAlgebra::from_integers(&q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        let inv = cyc.invariants().unwrap();
        assert_eq!((inv.l, inv.e), (0, 3));

        let degenerate = EvolutionAlgebra::from_integers(&q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(degenerate.invariants(), Err(Error::NotPerfect));
    }

    #[test]
    fn tree_ideal_examples() {
        let cyc = EvolutionAlgebra::from_integers(&q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(cyc.tree_ideal(&[0]).unwrap(), BTreeSet::from([0, 1, 2]));
        // Lower triangular: 1 -> 2 -> 3 plus loops; vertex 3 is a sink.
        let tri = EvolutionAlgebra::from_integers(&q(), &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(tri.tree_ideal(&[2]).unwrap(), BTreeSet::from([2]));
        assert_eq!(tri.tree_ideal(&[]).unwrap(), BTreeSet::new());
        assert!(cyc.tree_ideal(&[7]).is_err());
    }

    #[test]
    fn simple_examples() {
        let cyc = EvolutionAlgebra::from_integers(&q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(cyc.is_simple());
        let id3 = EvolutionAlgebra::from_integers(&q(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(!id3.is_simple()); // three isolated loops
        let degenerate = EvolutionAlgebra::from_integers(&q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert!(!degenerate.is_simple()); // not perfect
    }

    #[test]
    fn line_ideal_examples() {
        // b1^2 = 2 b1, the rest a 2-cycle: exactly one line ideal, K b1.
        let a = EvolutionAlgebra::from_integers(
            &q(),
            &[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]],
        )
        .unwrap();
        let ideals = a.line_ideals();
        assert_eq!(ideals.len(), 1);
        assert_eq!(ideals[0], Vector::basis(q(), 3, 0));

        // Simple algebras have none.
        let cyc = EvolutionAlgebra::from_integers(&q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert!(cyc.line_ideals().is_empty());

        // A zero column yields the corresponding basis line.
        let z = EvolutionAlgebra::from_integers(&q(), &[&[0, 0], &[0, 1]]).unwrap();
        let ideals = z.line_ideals();
        assert!(ideals.contains(&Vector::basis(q(), 2, 0)));
    }

    #[test]
    fn quotient_examples() {
        // diag(1, 1), u = e1: quotient is the 1-dim algebra with e^2 = e.
        let d = EvolutionAlgebra::from_integers(&q(), &[&[1, 0], &[0, 1]]).unwrap();
        let u = Vector::basis(q(), 2, 0);
        let quo = d.quotient_by_line(&u, 0).unwrap();
        assert_eq!(quo, EvolutionAlgebra::from_integers(&q(), &[&[1]]).unwrap());

        // u = e_i with e_i^2 = 0: substitution is vacuous, row/col deleted.
        let z = EvolutionAlgebra::from_integers(
            &q(),
            &[&[0, 2, 3], &[0, 4, 5], &[0, 6, 7]],
        )
        .unwrap();
        let u = Vector::basis(q(), 3, 0);
        let quo = z.quotient_by_line(&u, 0).unwrap();
        assert_eq!(quo, EvolutionAlgebra::from_integers(&q(), &[&[4, 5], &[6, 7]]).unwrap());

        // Errors: not an ideal, pivot outside support.
        let cyc = EvolutionAlgebra::from_integers(&q(), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(cyc.quotient_by_line(&Vector::basis(q(), 2, 0), 0), Err(Error::NotAnIdeal));
        let u2 = Vector::basis(q(), 2, 0);
        assert_eq!(d.quotient_by_line(&u2, 1), Err(Error::PivotOutsideSupport(1)));
    }

    #[test]
    fn tree_ideal_is_multiplication_closed() {
        let field = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let entries: Vec<Scalar> =
                (0..n * n).map(|_| field.integer(rng.gen_range(0..5))).collect();
            let a = EvolutionAlgebra::new(field.clone(), n, entries).unwrap();
            let seeds: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let tree = a.tree_ideal(&seeds).unwrap();
            for &i in &tree {
                for j in a.square_of_basis(i).support() {
                    assert!(tree.contains(&j));
                }
            }
        }
    }

    #[test]
    fn invariants_preserved_under_basis_change() {
        let field = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut tested = 0;
        while tested < 500 {
            let n = rng.gen_range(2..=4);
            let entries: Vec<Scalar> =
                (0..n * n).map(|_| field.integer(rng.gen_range(0..5))).collect();
            let a = EvolutionAlgebra::new(field.clone(), n, entries).unwrap();
            if !a.is_perfect() {
                continue;
            }
            tested += 1;
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let scalars: Vec<Scalar> = (0..n).map(|_| field.integer(rng.gen_range(1..5))).collect();
            let b = BasisChange::new(perm, scalars).unwrap();
            let a2 = a.change_basis(&b).unwrap();
            assert_eq!(a.invariants().unwrap(), a2.invariants().unwrap());
            assert_eq!(a.is_simple(), a2.is_simple());
        }
    }

    #[test]
    fn values_are_send_and_sync() {
        // Immutable values, pure operations: safe to share across threads.
        fn check<T: Send + Sync>() {}
        check::<Field>();
        check::<Scalar>();
        check::<Vector>();
        check::<BasisChange>();
        check::<EvolutionAlgebra>();
    }

    #[test]
    fn text_round_trip() {
        let texts = [
            "Q\n2\n0 5\n1 0\n",
            "F 5\n2\n0 2\n1 0\n",
            "F 2^2 t^2+t+1\n2\n0 t\n1 t+1\n",
            "Q\n3\n1 -1/2 0\n2/3 1 0\n0 1 7\n",
        ];
        for text in texts {
            let a = EvolutionAlgebra::parse(text).unwrap();
            assert_eq!(a.print(), text);
            assert_eq!(EvolutionAlgebra::parse(&a.print()).unwrap(), a);
        }
        assert!(EvolutionAlgebra::parse("Q\n2\n0 5\n1\n").is_err()); // wrong token count
        assert!(EvolutionAlgebra::parse("F 5\n2\n0 7\n1 0\n").is_err()); // residue >= p
        assert!(EvolutionAlgebra::parse("Q\n2\n0 1/0\n1 0\n").is_err()); // zero denominator
    }
}
