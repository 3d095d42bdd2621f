//! Exact arithmetic over the supported ground fields: the rationals Q,
//! prime fields F_p (p < 2^31) and small extension fields F_{p^k} with
//! k <= 4 given by an explicit irreducible polynomial in t.
//!
//! Besides the four field operations this module answers the
//! multiplicative-structure queries the orbit machinery is built on:
//! n-th power / n-th root decisions, unit enumeration in a deterministic
//! order, discrete logarithms to a generator, and signed prime-exponent
//! vectors of nonzero rationals.
//!
//! All values are immutable and all operations are pure functions.

pub mod factor;
pub mod poly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest unit group we are willing to enumerate or tabulate.
const ENUMERATION_LIMIT: u128 = 1 << 20;

#[derive(Debug, PartialEq, Eq, Hash)]
enum FieldKind {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, degree: usize, modulus: Vec<u64> },
}

/// Descriptor of a supported ground field. Cheap to clone and share.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.header())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

impl Field {
    /// The field of rational numbers.
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    /// The prime field F_p. Requires p prime and p < 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if !factor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// The extension field `F_p[t]/(f)` for a monic irreducible f of degree
    /// 2..=4 given by its coefficient vector (index = degree).
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        if !factor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        let f = poly::trim(modulus.iter().map(|&c| c % p).collect());
        let degree = match poly::degree(&f) {
            Some(d) if (2..=4).contains(&d) => d,
            other => return Err(Error::UnsupportedDegree(other.unwrap_or(0))),
        };
        if *f.last().unwrap() != 1 {
            return Err(Error::Parse("defining polynomial must be monic".into()));
        }
        if !poly::is_irreducible(&f, p) {
            return Err(Error::ReduciblePolynomial);
        }
        Ok(Field(Arc::new(FieldKind::Extension { p, degree, modulus: f })))
    }

    /// `F_4 = F_2[t]/(t^2+t+1)`, the smallest proper extension field.
    pub fn gf4() -> Field {
        Field::extension(2, &[1, 1, 1]).expect("t^2+t+1 is irreducible over F_2")
    }

    pub fn is_finite(&self) -> bool {
        !matches!(*self.0, FieldKind::Rationals)
    }

    /// 0 for Q, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
        }
    }

    /// Number of elements q = p^k, None for Q.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(*p as u128),
            FieldKind::Extension { p, degree, .. } => Some((*p as u128).pow(*degree as u32)),
        }
    }

    /// Order of the unit group, q - 1. None for Q.
    pub fn unit_order(&self) -> Option<u128> {
        self.order().map(|q| q - 1)
    }

    pub fn zero(&self) -> Scalar {
        let value = match &*self.0 {
            FieldKind::Rationals => Value::Rat(Box::new(BigRational::zero())),
            FieldKind::Prime { .. } => Value::Fp(0),
            FieldKind::Extension { degree, .. } => Value::Ext(vec![0; *degree]),
        };
        Scalar { field: self.clone(), value }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// Canonical image of an integer in this field.
    pub fn integer(&self, n: i64) -> Scalar {
        let value = match &*self.0 {
            FieldKind::Rationals => Value::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
            FieldKind::Prime { p } => Value::Fp(n.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { p, degree, .. } => {
                let mut coeffs = vec![0; *degree];
                coeffs[0] = n.rem_euclid(*p as i64) as u64;
                Value::Ext(coeffs)
            }
        };
        Scalar { field: self.clone(), value }
    }

    /// The rational n/d. Only defined over Q.
    pub fn rational(&self, n: i64, d: i64) -> Result<Scalar> {
        match &*self.0 {
            FieldKind::Rationals => {
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    field: self.clone(),
                    value: Value::Rat(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
                })
            }
            _ => Err(Error::NotRational),
        }
    }

    fn wrap_rational(&self, r: BigRational) -> Scalar {
        debug_assert!(!self.is_finite());
        Scalar { field: self.clone(), value: Value::Rat(Box::new(r)) }
    }

    /// Element number idx in the fixed enumeration order: residues ascending
    /// for F_p; base-p digit vectors (constant coefficient least significant)
    /// for F_{p^k}. Index 0 is zero.
    pub fn element_from_index(&self, idx: u128) -> Result<Scalar> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        if idx >= q {
            return Err(Error::TooLarge(format!("element index {idx} out of range")));
        }
        let value = match &*self.0 {
            FieldKind::Rationals => unreachable!(),
            FieldKind::Prime { .. } => Value::Fp(idx as u64),
            FieldKind::Extension { p, degree, .. } => {
                let mut coeffs = vec![0u64; *degree];
                let mut rest = idx;
                for c in coeffs.iter_mut() {
                    *c = (rest % *p as u128) as u64;
                    rest /= *p as u128;
                }
                Value::Ext(coeffs)
            }
        };
        Ok(Scalar { field: self.clone(), value })
    }

    /// All field elements in enumeration order (finite fields only).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        if q > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("cannot enumerate {q} elements")));
        }
        (0..q).map(|i| self.element_from_index(i)).collect()
    }

    /// The q - 1 nonzero elements in enumeration order.
    pub fn units(&self) -> Result<Vec<Scalar>> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        if q > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("cannot enumerate {q} units")));
        }
        (1..q).map(|i| self.element_from_index(i)).collect()
    }

    /// A generator of the cyclic unit group: the first unit in enumeration
    /// order of multiplicative order q - 1.
    pub fn generator(&self) -> Result<Scalar> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        let n = u64::try_from(q - 1).map_err(|_| Error::TooLarge("unit group order".into()))?;
        let prime_divisors: Vec<u64> = factor::factor_u64(n).into_keys().collect();
        for unit in self.units()? {
            let primitive = prime_divisors
                .iter()
                .all(|&r| !unit.pow((n / r) as i64).expect("unit is nonzero").is_one());
            if primitive {
                return Ok(unit);
            }
        }
        unreachable!("finite field unit group is cyclic")
    }

    /// Discrete-logarithm table to the canonical generator.
    pub fn dlog_table(&self) -> Result<DlogTable> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        if q > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("cannot tabulate logs for q = {q}")));
        }
        let n = (q - 1) as u64;
        let generator = self.generator()?;
        let mut map = HashMap::with_capacity(n as usize);
        let mut acc = self.one();
        for e in 0..n {
            map.insert(acc.clone(), e);
            acc = acc.mul(&generator).expect("same field");
        }
        Ok(DlogTable { generator, unit_order: n, map })
    }

    /// Header line syntax: `Q`, `F 5`, `F 2^2 t^2+t+1`.
    pub fn header(&self) -> String {
        match &*self.0 {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime { p } => format!("F {p}"),
            FieldKind::Extension { p, degree, modulus } => {
                format!("F {p}^{degree} {}", poly_to_string(modulus))
            }
        }
    }

    /// Parses a field header line.
    pub fn parse_header(line: &str) -> Result<Field> {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("Q") => {
                if parts.next().is_some() {
                    return Err(Error::Parse("unexpected tokens after Q".into()));
                }
                Ok(Field::rationals())
            }
            Some("F") => {
                let spec = parts.next().ok_or_else(|| Error::Parse("missing field order".into()))?;
                if let Some((p_str, k_str)) = spec.split_once('^') {
                    let p: u64 = p_str.parse().map_err(|_| Error::Parse(format!("bad characteristic {p_str}")))?;
                    let k: usize = k_str.parse().map_err(|_| Error::Parse(format!("bad degree {k_str}")))?;
                    let poly_str = parts.next().ok_or_else(|| Error::Parse("missing defining polynomial".into()))?;
                    if parts.next().is_some() {
                        return Err(Error::Parse("unexpected tokens after polynomial".into()));
                    }
                    let coeffs = parse_poly_in_t(poly_str, p, k + 1)?;
                    if coeffs.len() != k + 1 || coeffs[k] != 1 {
                        return Err(Error::Parse(format!("defining polynomial must be monic of degree {k}")));
                    }
                    Field::extension(p, &coeffs)
                } else {
                    let p: u64 = spec.parse().map_err(|_| Error::Parse(format!("bad modulus {spec}")))?;
                    if parts.next().is_some() {
                        return Err(Error::Parse("unexpected tokens after modulus".into()));
                    }
                    Field::prime(p)
                }
            }
            _ => Err(Error::Parse(format!("unrecognized field header: {line:?}"))),
        }
    }

    /// Parses one scalar literal in this field's text syntax.
    pub fn parse_scalar(&self, tok: &str) -> Result<Scalar> {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        match &*self.0 {
            FieldKind::Rationals => {
                let (num_str, den_str) = match tok.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (tok, None),
                };
                let numer: BigInt =
                    num_str.parse().map_err(|_| Error::Parse(format!("bad numerator {num_str:?}")))?;
                let denom: BigInt = match den_str {
                    Some(d) => d.parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?,
                    None => BigInt::one(),
                };
                if denom.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(self.wrap_rational(BigRational::new(numer, denom)))
            }
            FieldKind::Prime { p } => {
                let r: u64 = tok.parse().map_err(|_| Error::Parse(format!("bad residue {tok:?}")))?;
                if r >= *p {
                    return Err(Error::Parse(format!("residue {r} not in canonical range 0..{p}")));
                }
                Ok(Scalar { field: self.clone(), value: Value::Fp(r) })
            }
            FieldKind::Extension { p, degree, .. } => {
                let mut coeffs = parse_poly_in_t(tok, *p, *degree)?;
                coeffs.resize(*degree, 0);
                Ok(Scalar { field: self.clone(), value: Value::Ext(coeffs) })
            }
        }
    }
}

fn parse_poly_in_t(s: &str, p: u64, max_len: usize) -> Result<Vec<u64>> {
    let mut coeffs = vec![0u64; max_len];
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in polynomial {s:?}")));
        }
        let (coeff, degree) = if let Some(rest) = term.strip_suffix('t') {
            // "t" or "Nt"
            (rest, 1usize)
        } else if let Some((before, exp)) = term.split_once("t^") {
            let d: usize = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
            (before, d)
        } else {
            (term, 0usize)
        };
        let c: u64 = if coeff.is_empty() {
            1
        } else {
            coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
        };
        if c >= p {
            return Err(Error::Parse(format!("coefficient {c} not in canonical range 0..{p}")));
        }
        if degree >= max_len {
            return Err(Error::Parse(format!("term degree {degree} too large in {s:?}")));
        }
        coeffs[degree] = (coeffs[degree] + c) % p;
    }
    Ok(coeffs)
}

fn poly_to_string(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match d {
            0 => format!("{c}"),
            1 if c == 1 => "t".into(),
            1 => format!("{c}t"),
            _ if c == 1 => format!("t^{d}"),
            _ => format!("{c}t^{d}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rat(Box<BigRational>),
    Fp(u64),
    Ext(Vec<u64>),
}

/// An exact element of a [`Field`]. Two scalars are equal iff they belong
/// to equal fields and have identical canonical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    value: Value,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Fp(r) => write!(f, "{r}"),
            Value::Ext(coeffs) => f.write_str(&poly_to_string(coeffs)),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Fp(r) => *r == 0,
            Value::Ext(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(Box::new(&**a + &**b)),
            (Value::Fp(a), Value::Fp(b)) => {
                let p = self.field.characteristic();
                Value::Fp((a + b) % p)
            }
            (Value::Ext(a), Value::Ext(b)) => {
                let p = self.field.characteristic();
                Value::Ext(a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect())
            }
            _ => unreachable!("same field implies same representation"),
        };
        Ok(Scalar { field: self.field.clone(), value })
    }

    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(Box::new(-&**a)),
            Value::Fp(a) => {
                let p = self.field.characteristic();
                Value::Fp((p - a) % p)
            }
            Value::Ext(a) => {
                let p = self.field.characteristic();
                Value::Ext(a.iter().map(|&x| (p - x) % p).collect())
            }
        };
        Scalar { field: self.field.clone(), value }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(Box::new(&**a * &**b)),
            (Value::Fp(a), Value::Fp(b)) => {
                let p = self.field.characteristic() as u128;
                Value::Fp(((*a as u128 * *b as u128) % p) as u64)
            }
            (Value::Ext(a), Value::Ext(b)) => {
                let (p, modulus) = match &*self.field.0 {
                    FieldKind::Extension { p, modulus, .. } => (*p, modulus),
                    _ => unreachable!(),
                };
                let mut prod = poly::mulrem(a, b, modulus, p);
                prod.resize(modulus.len() - 1, 0);
                Value::Ext(prod)
            }
            _ => unreachable!("same field implies same representation"),
        };
        Ok(Scalar { field: self.field.clone(), value })
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rat(a) => Value::Rat(Box::new(a.recip())),
            Value::Fp(_) | Value::Ext(_) => {
                // a^(q-2) = a^{-1} in a field of q elements.
                let q = self.field.order().expect("finite field");
                return self.pow_u128(q - 2);
            }
        };
        Ok(Scalar { field: self.field.clone(), value })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    fn pow_u128(&self, mut e: u128) -> Result<Scalar> {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// a^e for an integer exponent of either sign. 0^0 = 1; 0 to a negative
    /// power is an error.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            if self.is_zero() {
                return Err(Error::ZeroToNegativePower);
            }
            return self.inv()?.pow_u128(e.unsigned_abs() as u128);
        }
        self.pow_u128(e as u128)
    }

    /// Some x with x^n = a when a is an n-th power in the field, None
    /// otherwise. Over Q this is decided by prime-exponent divisibility and
    /// the sign rule; over F_q by the criterion a^((q-1)/gcd(n,q-1)) = 1,
    /// the witness being found by unit enumeration.
    pub fn nth_root(&self, n: u32) -> Result<Option<Scalar>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        assert!(n >= 1, "root index must be positive");
        match &self.value {
            Value::Rat(_) => {
                let vec = self.exponent_vector()?;
                if vec.negative && n.is_multiple_of(2) {
                    return Ok(None);
                }
                let mut root_primes = BTreeMap::new();
                for (p, e) in &vec.primes {
                    if e % n as i64 != 0 {
                        return Ok(None);
                    }
                    root_primes.insert(p.clone(), e / n as i64);
                }
                let root = ExponentVector { negative: vec.negative, primes: root_primes };
                Ok(Some(root.to_scalar(&self.field)?))
            }
            Value::Fp(_) | Value::Ext(_) => {
                let q = self.field.order().expect("finite field");
                let unit_order = q - 1;
                let g = (n as u128).gcd(&unit_order);
                if !self.pow_u128(unit_order / g)?.is_one() {
                    return Ok(None);
                }
                for x in self.field.units()? {
                    if &x.pow(n as i64)? == self {
                        return Ok(Some(x));
                    }
                }
                unreachable!("membership test certified an n-th root exists")
            }
        }
    }

    /// Signed prime factorization of a nonzero rational.
    pub fn exponent_vector(&self) -> Result<ExponentVector> {
        let r = match &self.value {
            Value::Rat(r) => r,
            _ => return Err(Error::NotRational),
        };
        if r.is_zero() {
            return Err(Error::ZeroInput);
        }
        let negative = r.is_negative();
        let numer = r.numer().magnitude();
        let denom = r.denom().magnitude();
        let mut primes: BTreeMap<BigUint, i64> = BTreeMap::new();
        for (p, e) in factor::factor(numer) {
            primes.insert(p, e as i64);
        }
        for (p, e) in factor::factor(denom) {
            *primes.entry(p).or_insert(0) -= e as i64;
        }
        primes.retain(|_, e| *e != 0);
        Ok(ExponentVector { negative, primes })
    }
}

/// Sign and prime-exponent map of a nonzero rational; the decision form
/// used by the Delta-scaling and n-th power predicates over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector {
    pub negative: bool,
    pub primes: BTreeMap<BigUint, i64>,
}

impl ExponentVector {
    /// Vector of the product: signs multiply, exponents add.
    pub fn combine(&self, other: &ExponentVector) -> ExponentVector {
        let mut primes = self.primes.clone();
        for (p, e) in &other.primes {
            *primes.entry(p.clone()).or_insert(0) += e;
        }
        primes.retain(|_, e| *e != 0);
        ExponentVector { negative: self.negative ^ other.negative, primes }
    }

    /// Exact reconstruction of the rational.
    pub fn to_scalar(&self, field: &Field) -> Result<Scalar> {
        if field.is_finite() {
            return Err(Error::NotRational);
        }
        let mut numer = BigUint::one();
        let mut denom = BigUint::one();
        for (p, &e) in &self.primes {
            if e > 0 {
                numer *= p.pow(e as u32);
            } else {
                denom *= p.pow((-e) as u32);
            }
        }
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        Ok(field.wrap_rational(BigRational::new(
            BigInt::from_biguint(sign, numer),
            BigInt::from_biguint(Sign::Plus, denom),
        )))
    }
}

/// Discrete logarithms of every unit to the canonical generator.
pub struct DlogTable {
    pub generator: Scalar,
    pub unit_order: u64,
    map: HashMap<Scalar, u64>,
}

impl DlogTable {
    /// log_g(a) in 0..q-1. Errors on zero.
    pub fn log(&self, a: &Scalar) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        self.map.get(a).copied().ok_or(Error::FieldMismatch)
    }
}
