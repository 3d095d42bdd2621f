//! Orbit-membership deciders for the group actions that parametrize
//! isomorphism classes: scaling subgroups `Delta_{n_1..n_q}` (the image of
//! `k -> (k^{n_1}, ..., k^{n_q})`), equality in the inductive limit of
//! `G_n = K^x/(K^x)^[n]` under `g -> g^m`, and integer exponent matrices
//! acting on tuples of units by `v'_i = prod_j v_j^{M_ij}`.
//!
//! Over Q every decision runs on signed prime-exponent vectors, which makes
//! the power conditions exact linear divisibility systems. Over a finite
//! field the unit group is cyclic, so decisions reduce to arithmetic modulo
//! q - 1 on discrete logarithms, or to outright unit enumeration.
//!
//! The only semi-decision in the crate is a single-generator matrix group
//! that may be infinite in characteristic zero: there the search is cut off
//! at a configurable power bound and the verdict carries `exhaustive =
//! false` so callers can surface the caveat.

use num_integer::Integer;

use crate::field::{Field, Scalar};
use crate::{Error, Result};

/// Default Q-side power-search bound for possibly-infinite cyclic groups.
pub const DEFAULT_POWER_BOUND: u32 = 8;

/// Outcome of an orbit decision. `exhaustive` is false only when a bounded
/// power search gave up, in which case `equal` is false ("unknown treated
/// as false").
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub equal: bool,
    pub exhaustive: bool,
}

impl Decision {
    fn exact(equal: bool) -> Decision {
        Decision { equal, exhaustive: true }
    }
}

/// The scaling subgroup Delta_{n_1,...,n_q}: exponent tuple of the map
/// k -> (k^{n_1}, ..., k^{n_q}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingRule {
    exponents: Vec<i64>,
}

impl ScalingRule {
    pub fn new(exponents: Vec<i64>) -> ScalingRule {
        assert!(!exponents.is_empty(), "scaling rule needs at least one exponent");
        ScalingRule { exponents }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// The tuple (k^{n_1} v_1, ..., k^{n_q} v_q).
    pub fn apply(&self, k: &Scalar, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.exponents.len() {
            return Err(Error::ShapeMismatch(self.exponents.len(), v.len()));
        }
        self.exponents
            .iter()
            .zip(v)
            .map(|(&e, vi)| k.pow(e)?.mul(vi))
            .collect()
    }
}

/// A k x k integer matrix acting on unit tuples by
/// (M . v)_i = prod_j v_j^{M_ij}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    k: usize,
    rows: Vec<Vec<i64>>,
}

impl ExponentMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<ExponentMatrix> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::ShapeMismatch(k, rows.first().map_or(0, Vec::len)));
        }
        Ok(ExponentMatrix { k, rows })
    }

    pub fn identity(k: usize) -> ExponentMatrix {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        ExponentMatrix { k, rows }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self == &ExponentMatrix::identity(self.k)
    }

    /// Matrix product; apply(a.mul(b), v) = apply(a, apply(b, v)).
    pub fn mul(&self, other: &ExponentMatrix) -> Result<ExponentMatrix> {
        if self.k != other.k {
            return Err(Error::ShapeMismatch(self.k, other.k));
        }
        let rows = (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| (0..self.k).map(|l| self.rows[i][l] * other.rows[l][j]).sum())
                    .collect()
            })
            .collect();
        Ok(ExponentMatrix { k: self.k, rows })
    }

    /// Determinant by Laplace expansion (sizes here are at most 6).
    pub fn determinant(&self) -> i64 {
        fn det(rows: &[Vec<i64>]) -> i64 {
            let n = rows.len();
            if n == 1 {
                return rows[0][0];
            }
            let mut acc = 0i64;
            for j in 0..n {
                if rows[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * rows[0][j] * det(&minor);
            }
            acc
        }
        det(&self.rows)
    }

    /// Exact inverse of a matrix with determinant +-1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<ExponentMatrix> {
        let d = self.determinant();
        if d != 1 && d != -1 {
            return Err(Error::ConstraintViolated(format!(
                "matrix determinant {d} is not a unit"
            )));
        }
        let n = self.k;
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.rows[r][c])
                            .collect()
                    })
                    .collect();
                let minor_det = if minor.is_empty() {
                    1
                } else {
                    ExponentMatrix { k: n - 1, rows: minor }.determinant()
                };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *slot = d * sign * minor_det;
            }
        }
        Ok(ExponentMatrix { k: n, rows })
    }

    /// (M . v)_i = prod_j v_j^{M_ij}; every component of v must be nonzero.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.k {
            return Err(Error::ShapeMismatch(self.k, v.len()));
        }
        for x in v {
            if x.is_zero() {
                return Err(Error::ZeroInput);
            }
        }
        let field = v[0].field().clone();
        let mut out = Vec::with_capacity(self.k);
        for row in &self.rows {
            let mut acc = field.one();
            for (x, &e) in v.iter().zip(row) {
                if e != 0 {
                    acc = acc.mul(&x.pow(e)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Entrywise reduction mod n (the action on discrete logs).
    fn reduce_mod(&self, n: u64) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(n as i128) as u64).collect())
            .collect()
    }
}

fn check_tuple(v: &[Scalar], w: &[Scalar]) -> Result<Field> {
    if v.len() != w.len() {
        return Err(Error::ShapeMismatch(v.len(), w.len()));
    }
    if v.is_empty() {
        return Err(Error::ShapeMismatch(0, 0));
    }
    let field = v[0].field().clone();
    for x in v.iter().chain(w) {
        if x.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
    }
    Ok(field)
}

/// Is w = (k^{n_1} v_1, ..., k^{n_q} v_q) for some unit k?
///
/// Finite fields enumerate the q - 1 units. Over Q a solution exists iff a
/// single integer exponent vector t satisfies n_i * t = vec(w_i / v_i) for
/// every i, together with a sign for k consistent with every n_i parity.
pub fn scaling_orbit_contains(rule: &ScalingRule, v: &[Scalar], w: &[Scalar]) -> Result<bool> {
    let field = check_tuple(v, w)?;
    if v.len() != rule.exponents.len() {
        return Err(Error::ShapeMismatch(rule.exponents.len(), v.len()));
    }
    if field.is_finite() {
        for k in field.units()? {
            if rule.apply(&k, v)? == w {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    // Rational path on exponent vectors.
    let ratios: Vec<Scalar> = v
        .iter()
        .zip(w)
        .map(|(vi, wi)| wi.div(vi))
        .collect::<Result<_>>()?;
    let vecs: Vec<_> = ratios.iter().map(|r| r.exponent_vector()).collect::<Result<Vec<_>>>()?;
    let mut all_primes = std::collections::BTreeSet::new();
    for vec in &vecs {
        all_primes.extend(vec.primes.keys().cloned());
    }
    // The exponent of each prime in k is pinned by every component.
    for p in &all_primes {
        let mut t: Option<i64> = None;
        for (vec, &n) in vecs.iter().zip(&rule.exponents) {
            let e = vec.primes.get(p).copied().unwrap_or(0);
            if n == 0 {
                if e != 0 {
                    return Ok(false);
                }
                continue;
            }
            if e % n != 0 {
                return Ok(false);
            }
            let cand = e / n;
            if *t.get_or_insert(cand) != cand {
                return Ok(false);
            }
        }
    }
    // Sign feasibility: try k > 0 and k < 0.
    'sign: for k_negative in [false, true] {
        for (vec, &n) in vecs.iter().zip(&rule.exponents) {
            let expected_negative = k_negative && n.rem_euclid(2) == 1;
            if vec.negative != expected_negative {
                continue 'sign;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Do lambda and mu have the same image in the inductive limit of G_n under
/// g -> g^m, i.e. is lambda^(m^r) = k^n mu^(m^s) for some r, s >= 0 and a
/// unit k?
///
/// m^r mod n is eventually periodic with preperiod + period at most n, so
/// scanning r, s over a window of length 2n + 2 is exhaustive. Over Q the
/// per-prime condition is n | m^r e_p(lambda) - m^s e_p(mu) plus the sign
/// rule; over F_q it becomes m^r a = m^s b mod gcd(n, q - 1) on discrete
/// logs.
pub fn inductive_limit_equal(lambda: &Scalar, mu: &Scalar, m: u64, n: u64) -> Result<bool> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::ZeroInput);
    }
    if lambda.field() != mu.field() {
        return Err(Error::FieldMismatch);
    }
    assert!(m >= 2, "inductive limit needs m >= 2");
    assert!(n >= 1, "power subgroup index must be positive");
    let field = lambda.field().clone();
    if field.is_finite() {
        let table = field.dlog_table()?;
        let d = n.gcd(&table.unit_order);
        if d == 1 {
            return Ok(true);
        }
        let a = table.log(lambda)? % d;
        let b = table.log(mu)? % d;
        let window = 2 * d + 2;
        let mut mr = 1u64 % d;
        for _ in 0..window {
            let mut ms = 1u64 % d;
            for _ in 0..window {
                if (mr as u128 * a as u128) % d as u128 == (ms as u128 * b as u128) % d as u128 {
                    return Ok(true);
                }
                ms = (ms * (m % d)) % d;
            }
            mr = (mr * (m % d)) % d;
        }
        return Ok(false);
    }
    // Rational path.
    let va = lambda.exponent_vector()?;
    let vb = mu.exponent_vector()?;
    let mut primes = std::collections::BTreeSet::new();
    primes.extend(va.primes.keys().cloned());
    primes.extend(vb.primes.keys().cloned());
    let window = 2 * n + 2;
    // lambda^(m^r) is negative iff lambda < 0 and m^r is odd.
    let m_odd = m % 2 == 1;
    let pow_odd = |r: u64| r == 0 || m_odd; // m^0 = 1
    let mut mr = 1u64 % n;
    for r in 0..window {
        let mut ms = 1u64 % n;
        for s in 0..window {
            let exps_ok = primes.iter().all(|p| {
                let ea = va.primes.get(p).copied().unwrap_or(0) as i128;
                let eb = vb.primes.get(p).copied().unwrap_or(0) as i128;
                (mr as i128 * ea - ms as i128 * eb).rem_euclid(n as i128) == 0
            });
            if exps_ok {
                let left_neg = va.negative && pow_odd(r);
                let right_neg = vb.negative && pow_odd(s);
                // k^n takes any sign when n is odd, only + when n is even.
                let sign_ok = if n % 2 == 1 { true } else { left_neg == right_neg };
                if sign_ok {
                    return Ok(true);
                }
            }
            ms = (ms * (m % n)) % n;
        }
        mr = (mr * (m % n)) % n;
    }
    Ok(false)
}

/// Is w in the orbit of v under the group generated by `generators`?
///
/// With `order` given the group is finite: its elements are enumerated by
/// closure (and counted against the stated order). With `order` absent the
/// group is a single-generator cyclic group that may be infinite in
/// characteristic zero: over a finite field the generator is reduced mod
/// q - 1 where it has finite order, giving an exact decision; over Q powers
/// up to `power_bound` are tried and a miss is reported as non-exhaustive.
pub fn matrix_orbit_equal(
    generators: &[ExponentMatrix],
    order: Option<usize>,
    v: &[Scalar],
    w: &[Scalar],
    power_bound: u32,
) -> Result<Decision> {
    let field = check_tuple(v, w)?;
    let k = generators.first().ok_or(Error::ShapeMismatch(0, 0))?.size();
    if v.len() != k {
        return Err(Error::ShapeMismatch(k, v.len()));
    }
    match order {
        Some(bound) => {
            let group = close_group(generators, bound)?;
            for g in &group {
                if g.apply(v)? == w {
                    return Ok(Decision::exact(true));
                }
            }
            Ok(Decision::exact(false))
        }
        None => {
            let m = &generators[0];
            if field.is_finite() {
                // The action on discrete logs is linear mod q - 1, where the
                // generator has finite order.
                let table = field.dlog_table()?;
                let nn = table.unit_order;
                let logs_v: Vec<u64> = v.iter().map(|x| table.log(x)).collect::<Result<_>>()?;
                let logs_w: Vec<u64> = w.iter().map(|x| table.log(x)).collect::<Result<_>>()?;
                let m_red = m.reduce_mod(nn);
                let mat_mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
                    (0..k)
                        .map(|i| {
                            (0..k)
                                .map(|j| {
                                    (0..k).fold(0u128, |acc, l| {
                                        (acc + a[i][l] as u128 * b[l][j] as u128) % nn as u128
                                    }) as u64
                                })
                                .collect()
                        })
                        .collect()
                };
                let apply_mod = |mat: &Vec<Vec<u64>>, x: &Vec<u64>| -> Vec<u64> {
                    mat.iter()
                        .map(|row| {
                            row.iter().zip(x).fold(0u128, |acc, (&c, &xi)| {
                                (acc + c as u128 * xi as u128) % nn as u128
                            }) as u64
                        })
                        .collect()
                };
                let id: Vec<Vec<u64>> = ExponentMatrix::identity(k).reduce_mod(nn);
                let mut cur = id.clone();
                let mut guard = 0u64;
                loop {
                    if apply_mod(&cur, &logs_v) == logs_w {
                        return Ok(Decision::exact(true));
                    }
                    cur = mat_mul(&cur, &m_red);
                    if cur == id {
                        return Ok(Decision::exact(false));
                    }
                    guard += 1;
                    if guard > 1_000_000 {
                        return Err(Error::TooLarge("cyclic exponent-matrix group mod q-1".into()));
                    }
                }
            } else {
                // Bounded two-sided power search; a miss is a semi-decision.
                let inv = m.inverse_unimodular()?;
                let mut pos = v.to_vec();
                let mut neg = v.to_vec();
                if pos == w {
                    return Ok(Decision::exact(true));
                }
                for _ in 1..=power_bound {
                    pos = m.apply(&pos)?;
                    neg = inv.apply(&neg)?;
                    if pos == w || neg == w {
                        return Ok(Decision::exact(true));
                    }
                }
                Ok(Decision { equal: false, exhaustive: false })
            }
        }
    }
}

/// BFS closure of the generated group; errors loudly if it exceeds the
/// stated order (that would mean the static tables are wrong).
pub fn close_group(generators: &[ExponentMatrix], order: usize) -> Result<Vec<ExponentMatrix>> {
    let k = generators[0].size();
    let mut elements = vec![ExponentMatrix::identity(k)];
    let mut frontier = elements.clone();
    while let Some(g) = frontier.pop() {
        for gen in generators {
            let prod = g.mul(gen)?;
            if !elements.contains(&prod) {
                if elements.len() >= order {
                    return Err(Error::TooLarge(format!(
                        "matrix group exceeds stated order {order}"
                    )));
                }
                elements.push(prod.clone());
                frontier.push(prod);
            }
        }
    }
    Ok(elements)
}

/// How two parameter tuples of the same canonical family are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitRule {
    /// Tuples must coincide exactly.
    Equality,
    /// Same Delta_{n_1..n_q}-orbit.
    Scaling(ScalingRule),
    /// Same image in the inductive limit of G_n under g -> g^m
    /// (1-parameter families only).
    InductiveLimit { m: u64, n: u64 },
    /// Same orbit under the group generated by integer exponent matrices;
    /// `order` is the known group order, None for the possibly-infinite
    /// single-generator case.
    MatrixGroup { generators: Vec<ExponentMatrix>, order: Option<usize> },
}

/// Dispatches to the decider for `rule`.
pub fn orbit_decide(
    rule: &OrbitRule,
    v: &[Scalar],
    w: &[Scalar],
    power_bound: u32,
) -> Result<Decision> {
    match rule {
        OrbitRule::Equality => {
            check_tuple(v, w)?;
            Ok(Decision::exact(v == w))
        }
        OrbitRule::Scaling(s) => Ok(Decision::exact(scaling_orbit_contains(s, v, w)?)),
        OrbitRule::InductiveLimit { m, n } => {
            if v.len() != 1 || w.len() != 1 {
                return Err(Error::ShapeMismatch(1, v.len()));
            }
            Ok(Decision::exact(inductive_limit_equal(&v[0], &w[0], *m, *n)?))
        }
        OrbitRule::MatrixGroup { generators, order } => {
            matrix_orbit_equal(generators, *order, v, w, power_bound)
        }
    }
}

/// Orbits of the Z_q action on `G_n(K) = K^x/(K^x)^[n]` given by
/// class(x) -> class(x^j), where j is the smallest integer >= 2 with
/// j^q = 1 mod n. Classes are named by their minimal representative in
/// enumeration order; each orbit is the sorted list of its class names.
pub fn omega_orbits(field: &Field, q_action: u64, n: u64) -> Result<Vec<Vec<Scalar>>> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let j = (2..=n.max(2) + 1)
        .find(|j| {
            let mut acc = 1u64;
            for _ in 0..q_action {
                acc = (acc * (j % n)) % n;
            }
            acc == 1 % n
        })
        .ok_or_else(|| {
            Error::ConstraintViolated(format!("no exponent j with j^{q_action} = 1 mod {n}"))
        })?;
    let units = field.units()?;
    let index_of = |x: &Scalar| units.iter().position(|u| u == x).expect("unit");
    // Coset of x in K^x/(K^x)^[n], named by its minimal member.
    let class_of = |x: &Scalar| -> Result<Scalar> {
        let mut best: Option<Scalar> = None;
        for y in &units {
            let m = x.mul(&y.pow(n as i64)?)?;
            if best.as_ref().is_none_or(|b| index_of(&m) < index_of(b)) {
                best = Some(m);
            }
        }
        Ok(best.expect("unit group is nonempty"))
    };
    let mut seen: Vec<Scalar> = Vec::new();
    let mut orbits = Vec::new();
    for x in &units {
        let c = class_of(x)?;
        if seen.contains(&c) {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = c.clone();
        while !orbit.contains(&cur) {
            orbit.push(cur.clone());
            seen.push(cur.clone());
            cur = class_of(&cur.pow(j as i64)?)?;
        }
        orbit.sort_by_key(index_of);
        orbits.push(orbit);
    }
    Ok(orbits)
}

// The exponent matrices acting on the parameter tuples of the canonical
// families, plus the cyclic-shift form f4. Entries are static data;
// determinants are +-1 (checked in tests and at family-table construction).

pub fn m1() -> ExponentMatrix {
    ExponentMatrix::new(vec![
        vec![0, 1, 2, 5],
        vec![1, 0, 2, 4],
        vec![0, 0, 2, 3],
        vec![0, 0, -1, -2],
    ])
    .unwrap()
}

pub fn m2() -> ExponentMatrix {
    ExponentMatrix::new(vec![vec![-1, 0, 0], vec![2, 0, 1], vec![2, 1, 0]]).unwrap()
}

pub fn m3() -> ExponentMatrix {
    ExponentMatrix::new(vec![
        vec![0, 0, 1, 0, 0],
        vec![0, -1, 0, 0, 0],
        vec![1, 0, 0, 0, 0],
        vec![0, 2, 0, 0, 1],
        vec![0, 2, 0, 1, 0],
    ])
    .unwrap()
}

pub fn m4() -> ExponentMatrix {
    ExponentMatrix::new(vec![vec![0, 1, -2], vec![2, 0, 1], vec![1, 0, 0]]).unwrap()
}

pub fn m5() -> ExponentMatrix {
    ExponentMatrix::new(vec![
        vec![0, 0, 1, -2],
        vec![0, 0, 0, 1],
        vec![1, 2, 0, 0],
        vec![0, 1, 0, 0],
    ])
    .unwrap()
}

pub fn m6() -> ExponentMatrix {
    ExponentMatrix::new(vec![
        vec![0, 0, 1, 0, 0, 0],
        vec![0, -1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 2, 0, 0, 1, 0],
        vec![0, 2, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 0, 1],
    ])
    .unwrap()
}

pub fn m7() -> ExponentMatrix {
    ExponentMatrix::new(vec![
        vec![0, 0, 0, 1, 0, -2],
        vec![-1, 0, 0, 0, 1, -2],
        vec![0, 1, 0, 0, 0, 1],
        vec![2, 0, 0, 0, 0, 1],
        vec![2, 0, 1, 0, 0, 0],
        vec![1, 0, 0, 0, 0, 0],
    ])
    .unwrap()
}

/// Cyclic shift (a, b, c) -> (b, c, a): the normal-form alternative chart
/// for the three-loop family governed by the M4 rule.
pub fn f4() -> ExponentMatrix {
    ExponentMatrix::new(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn ints(field: &Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.integer(x)).collect()
    }

    #[test]
    fn static_matrices_are_unimodular() {
        for m in [m1(), m2(), m3(), m4(), m5(), m6(), m7(), f4()] {
            assert_eq!(m.determinant().abs(), 1, "{m:?}");
            let inv = m.inverse_unimodular().unwrap();
            assert!(m.mul(&inv).unwrap().is_identity());
        }
    }

    #[test]
    fn apply_matrix_examples() {
        let field = q();
        // M2 . (l, m, d) = (l^-1, l^2 d, l^2 m)
        let v = ints(&field, &[2, 3, 5]);
        let out = m2().apply(&v).unwrap();
        assert_eq!(out[0], field.rational(1, 2).unwrap());
        assert_eq!(out[1], field.integer(20));
        assert_eq!(out[2], field.integer(12));
        // F4 is the cyclic shift.
        let out = f4().apply(&ints(&field, &[2, 3, 5])).unwrap();
        assert_eq!(out, ints(&field, &[3, 5, 2]));
        // Identity fixes everything.
        let v = ints(&field, &[7, -2, 9]);
        assert_eq!(ExponentMatrix::identity(3).apply(&v).unwrap(), v);
        // Zero components are rejected.
        assert_eq!(f4().apply(&ints(&field, &[1, 0, 1])), Err(Error::ZeroInput));
    }

    #[test]
    fn apply_is_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f7 = Field::prime(7).unwrap();
        for _ in 0..100 {
            let k = rng.gen_range(1..=4);
            let rand_mat = |rng: &mut ChaCha8Rng| {
                ExponentMatrix::new(
                    (0..k).map(|_| (0..k).map(|_| rng.gen_range(-3i64..=3)).collect()).collect(),
                )
                .unwrap()
            };
            let a = rand_mat(&mut rng);
            let b = rand_mat(&mut rng);
            let v: Vec<Scalar> = (0..k).map(|_| f7.integer(rng.gen_range(1..7))).collect();
            let lhs = a.mul(&b).unwrap().apply(&v).unwrap();
            let rhs = a.apply(&b.apply(&v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let vq: Vec<Scalar> = (0..k).map(|_| q().integer(rng.gen_range(1..4))).collect();
            let lhs = a.mul(&b).unwrap().apply(&vq).unwrap();
            let rhs = a.apply(&b.apply(&vq).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    /// The two order-3 charts for the three-loop 6-edge family are
    /// conjugate: M4 and the cyclic shift f4 both satisfy M^3 = I with
    /// trace 0 and determinant 1, i.e. characteristic polynomial x^3 - 1,
    /// so f4 is the normal form of M4 and either chart classifies. The M4
    /// chart is the authoritative one in the family table.
    #[test]
    fn order_three_charts_are_conjugate() {
        for m in [m4(), f4()] {
            assert!(m.mul(&m).unwrap().mul(&m).unwrap().is_identity());
            assert!(!m.is_identity());
            let trace: i64 = (0..3).map(|i| m.rows()[i][i]).sum();
            assert_eq!(trace, 0);
            assert_eq!(m.determinant(), 1);
        }
    }

    #[test]
    fn group_structure_of_the_static_tables() {
        assert!(m2().mul(&m2()).unwrap().is_identity());
        assert!(m3().mul(&m3()).unwrap().is_identity());
        assert!(m5().mul(&m5()).unwrap().is_identity());
        assert!(m4().mul(&m4()).unwrap().mul(&m4()).unwrap().is_identity());
        assert!(!m4().mul(&m4()).unwrap().is_identity());
        // <M6, M7> is the symmetric group on three letters: 6 elements,
        // M6 of order 2, M7 of order 3, and M6 M7 = M7^2 M6.
        let group = close_group(&[m6(), m7()], 6).unwrap();
        assert_eq!(group.len(), 6);
        assert!(m6().mul(&m6()).unwrap().is_identity());
        assert!(m7().mul(&m7()).unwrap().mul(&m7()).unwrap().is_identity());
        let lhs = m6().mul(&m7()).unwrap();
        let rhs = m7().mul(&m7()).unwrap().mul(&m6()).unwrap();
        assert_eq!(lhs, rhs);
        // M1 has infinite order as an integer matrix.
        assert!(!m1().mul(&m1()).unwrap().is_identity());
    }

    #[test]
    fn scaling_orbit_examples() {
        let field = q();
        let d37 = ScalingRule::new(vec![3, 7]);
        assert!(
            scaling_orbit_contains(&d37, &ints(&field, &[1, 1]), &ints(&field, &[8, 128])).unwrap()
        );
        assert!(
            !scaling_orbit_contains(&d37, &ints(&field, &[1, 1]), &ints(&field, &[8, 1])).unwrap()
        );
        // Over F_5: w = action of k = 2 on v for exponents (-2, 3, 6, 7).
        let f5 = Field::prime(5).unwrap();
        let rule = ScalingRule::new(vec![-2, 3, 6, 7]);
        let v = ints(&f5, &[1, 2, 3, 4]);
        let w = rule.apply(&f5.integer(2), &v).unwrap();
        assert!(scaling_orbit_contains(&rule, &v, &w).unwrap());
        // Negative k over Q with odd exponents.
        let d3 = ScalingRule::new(vec![3]);
        assert!(scaling_orbit_contains(&d3, &ints(&field, &[1]), &ints(&field, &[-8])).unwrap());
        let d2 = ScalingRule::new(vec![2]);
        assert!(!scaling_orbit_contains(&d2, &ints(&field, &[1]), &ints(&field, &[-4])).unwrap());
    }

    #[test]
    fn scaling_finite_matches_brute_force() {
        // The finite-field branch IS unit enumeration; additionally
        // cross-check the Q branch against F_p on compatible integer data.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let fields = [
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::gf4(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::extension(2, &[1, 1, 0, 1]).unwrap(),
            Field::extension(3, &[1, 0, 1]).unwrap(),
        ];
        for field in &fields {
            for _ in 0..50 {
                let len = rng.gen_range(1..=4);
                let rule = ScalingRule::new((0..len).map(|_| rng.gen_range(-3i64..=7)).collect());
                let units = field.units().unwrap();
                let v: Vec<Scalar> =
                    (0..len).map(|_| units[rng.gen_range(0..units.len())].clone()).collect();
                let w: Vec<Scalar> =
                    (0..len).map(|_| units[rng.gen_range(0..units.len())].clone()).collect();
                let got = scaling_orbit_contains(&rule, &v, &w).unwrap();
                let brute = units.iter().any(|k| rule.apply(k, &v).unwrap() == w);
                assert_eq!(got, brute);
            }
        }
        // A Q-side yes on integer tuples maps to an F_p yes when everything
        // involved stays a unit mod p.
        let field = q();
        for p in [3i64, 7] {
            let fp = Field::prime(p as u64).unwrap();
            for _ in 0..50 {
                let len = rng.gen_range(1..=3);
                let rule = ScalingRule::new((0..len).map(|_| rng.gen_range(-2i64..=7)).collect());
                let k = loop {
                    let k = rng.gen_range(1i64..6);
                    if k % p != 0 {
                        break k;
                    }
                };
                let v: Vec<Scalar> = (0..len)
                    .map(|_| loop {
                        let x = rng.gen_range(1i64..6);
                        if x % p != 0 {
                            break field.integer(x);
                        }
                    })
                    .collect();
                let w = rule.apply(&field.integer(k), &v).unwrap();
                assert!(scaling_orbit_contains(&rule, &v, &w).unwrap());
                let to_fp = |xs: &[Scalar]| -> Vec<Scalar> {
                    xs.iter()
                        .map(|x| {
                            use num_traits::ToPrimitive;
                            let ev = x.exponent_vector().unwrap();
                            let mut acc = fp.one();
                            for (prime, &e) in &ev.primes {
                                let pr = fp.integer(prime.to_i64().unwrap());
                                acc = acc.mul(&pr.pow(e).unwrap()).unwrap();
                            }
                            if ev.negative {
                                acc = acc.neg();
                            }
                            acc
                        })
                        .collect()
                };
                assert!(scaling_orbit_contains(&rule, &to_fp(&v), &to_fp(&w)).unwrap());
            }
        }
    }

    #[test]
    fn inductive_limit_examples() {
        let field = q();
        // k = 2, r = s = 0: 8 = 2^3 * 1.
        assert!(inductive_limit_equal(&field.integer(1), &field.integer(8), 2, 3).unwrap());
        // 2 and 3 differ in the limit of G_7 under squaring.
        assert!(!inductive_limit_equal(&field.integer(2), &field.integer(3), 2, 7).unwrap());
        // 2 vs 4: r = 0, s = 1, k = 1.
        assert!(inductive_limit_equal(&field.integer(4), &field.integer(2), 2, 3).unwrap());
        assert!(inductive_limit_equal(&field.integer(2), &field.integer(4), 2, 3).unwrap());
        // Over F_4 the cube subgroup is trivial and squaring swaps t, t+1.
        let f4 = Field::gf4();
        let alpha = f4.parse_scalar("t").unwrap();
        let beta = f4.parse_scalar("t+1").unwrap();
        assert!(inductive_limit_equal(&alpha, &beta, 2, 3).unwrap());
        assert!(!inductive_limit_equal(&f4.one(), &alpha, 2, 3).unwrap());
        assert_eq!(
            inductive_limit_equal(&field.zero(), &field.one(), 2, 3),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn matrix_orbit_examples() {
        let field = q();
        // Direct hit with g = M4.
        let v = ints(&field, &[2, 3, 5]);
        let w = m4().apply(&v).unwrap();
        let d = matrix_orbit_equal(&[m4()], Some(3), &v, &w, DEFAULT_POWER_BOUND).unwrap();
        assert!(d.equal && d.exhaustive);
        // S2 fixes (1,1,1).
        let ones = ints(&field, &[1, 1, 1]);
        assert_eq!(m2().apply(&ones).unwrap(), ones);
        let d =
            matrix_orbit_equal(&[m2()], Some(2), &ones, &ints(&field, &[1, 2, 1]), DEFAULT_POWER_BOUND)
                .unwrap();
        assert!(!d.equal && d.exhaustive);
        // Unbounded single-generator over Q: a hit inside the bound is exact...
        let v = ints(&field, &[2, 3, 5, 7]);
        let w = m1().apply(&m1().apply(&v).unwrap()).unwrap();
        let d = matrix_orbit_equal(&[m1()], None, &v, &w, DEFAULT_POWER_BOUND).unwrap();
        assert!(d.equal && d.exhaustive);
        // ...and the inverse direction is searched too.
        let d = matrix_orbit_equal(&[m1()], None, &w, &v, DEFAULT_POWER_BOUND).unwrap();
        assert!(d.equal && d.exhaustive);
        // A miss is only a semi-decision.
        let d =
            matrix_orbit_equal(&[m1()], None, &v, &ints(&field, &[2, 3, 5, 11]), DEFAULT_POWER_BOUND)
                .unwrap();
        assert!(!d.equal && !d.exhaustive);
        // Over a finite field the same rule is decided exactly.
        let f5 = Field::prime(5).unwrap();
        let v = ints(&f5, &[2, 3, 4, 1]);
        let w = m1().apply(&v).unwrap();
        let d = matrix_orbit_equal(&[m1()], None, &v, &w, DEFAULT_POWER_BOUND).unwrap();
        assert!(d.equal && d.exhaustive);
        let d = matrix_orbit_equal(&[m1()], None, &v, &ints(&f5, &[2, 3, 4, 2]), DEFAULT_POWER_BOUND)
            .unwrap();
        assert!(d.exhaustive);
    }

    #[test]
    fn orbit_decide_dispatch() {
        let field = q();
        let d =
            orbit_decide(&OrbitRule::Equality, &ints(&field, &[2, 3]), &ints(&field, &[2, 3]), 8)
                .unwrap();
        assert!(d.equal);
        let rule = OrbitRule::Scaling(ScalingRule::new(vec![3, 7, 6]));
        let v = ints(&field, &[1, 2, 3]);
        let w = ScalingRule::new(vec![3, 7, 6]).apply(&field.integer(2), &v).unwrap();
        assert!(orbit_decide(&rule, &v, &w, 8).unwrap().equal);
        let rule = OrbitRule::InductiveLimit { m: 2, n: 3 };
        assert!(orbit_decide(&rule, &ints(&field, &[2]), &ints(&field, &[4]), 8).unwrap().equal);
    }

    #[test]
    fn omega_orbits_of_g3_f4() {
        let f4 = Field::gf4();
        let orbits = omega_orbits(&f4, 2, 3).unwrap();
        assert_eq!(orbits.len(), 2);
        let one_orbit = orbits.iter().find(|o| o.len() == 1).expect("singleton orbit of 1");
        assert_eq!(one_orbit[0], f4.one());
        let alpha_orbit = orbits.iter().find(|o| o.len() == 2).expect("orbit {a, a+1}");
        let strs: Vec<String> = alpha_orbit.iter().map(|s| s.to_string()).collect();
        assert_eq!(strs, vec!["t", "t+1"]);
    }

    /// Every decider is an equivalence relation on random samples.
    #[test]
    fn deciders_are_equivalence_relations() {
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let rules = vec![
            OrbitRule::Equality,
            OrbitRule::Scaling(ScalingRule::new(vec![3, 7, 6])),
            OrbitRule::Scaling(ScalingRule::new(vec![-2, 3, 6])),
            OrbitRule::MatrixGroup { generators: vec![m2()], order: Some(2) },
            OrbitRule::MatrixGroup { generators: vec![m4()], order: Some(3) },
        ];
        for rule in &rules {
            for _ in 0..300 {
                let v: Vec<Scalar> = (0..3).map(|_| f7.integer(rng.gen_range(1..7))).collect();
                let w: Vec<Scalar> = (0..3).map(|_| f7.integer(rng.gen_range(1..7))).collect();
                let x: Vec<Scalar> = (0..3).map(|_| f7.integer(rng.gen_range(1..7))).collect();
                let d = |a: &[Scalar], b: &[Scalar]| orbit_decide(rule, a, b, 8).unwrap().equal;
                assert!(d(&v, &v), "reflexive {rule:?}");
                assert_eq!(d(&v, &w), d(&w, &v), "symmetric {rule:?}");
                if d(&v, &w) && d(&w, &x) {
                    assert!(d(&v, &x), "transitive {rule:?}");
                }
            }
        }
        for n in [3u64, 7] {
            let rule = OrbitRule::InductiveLimit { m: 2, n };
            for _ in 0..300 {
                let v = vec![f7.integer(rng.gen_range(1..7))];
                let w = vec![f7.integer(rng.gen_range(1..7))];
                let x = vec![f7.integer(rng.gen_range(1..7))];
                let d = |a: &[Scalar], b: &[Scalar]| orbit_decide(&rule, a, b, 8).unwrap().equal;
                assert!(d(&v, &v));
                assert_eq!(d(&v, &w), d(&w, &v));
                if d(&v, &w) && d(&w, &x) {
                    assert!(d(&v, &x));
                }
            }
        }
    }
}
