//! Exact arithmetic in GF(p^w) and its tower extension GF(q^m), q = p^w.
//!
//! Elements are canonical integer indices. An element of GF(q) is the
//! polynomial `sum b_j * beta^j` over GF(p) and has index `sum b_j * p^j`;
//! an element of GF(q^m) is `sum c_i * alpha^i` with `c_i` in GF(q) and has
//! index `sum c_i * q^i`. Indices below `q` are therefore exactly the base
//! field embedded in the extension, and addition is digit-wise in radix `p`
//! over the whole index.
//!
//! Levels of at most 2^16 elements use log/antilog tables, larger levels
//! fall back to schoolbook polynomial multiplication.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

/// A field symbol: the canonical index of an element.
pub type Symbol = u32;

const TABLE_LIMIT: u64 = 1 << 16;
const INDEX_LIMIT: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^({w}*{m}) does not fit the 32-bit index space")]
    SizeOverflow { p: u64, w: u32, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{which} modulus is malformed: {reason}")]
    BadModulus { which: &'static str, reason: String },
    #[error("{which} modulus is reducible")]
    ReducibleModulus { which: &'static str },
    #[error("symbol {value} is outside a field of order {order}")]
    OutOfRange { value: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("evaluation points are linearly dependent over the base field")]
    DependentPoints,
    #[error("a linearized polynomial needs at least one coefficient")]
    EmptyPolynomial,
}

/// Serializable description of GF(q^m) with q = p^w.
///
/// Moduli are monic coefficient sequences, low degree first. The base
/// modulus has coefficients in GF(p); the extension modulus has
/// coefficients that are GF(q) indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub w: u32,
    pub m: u32,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<u32>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// One level of the tower: polynomials of degree < `degree` over a subfield
/// of order `radix`, reduced by a monic modulus.
struct Level {
    p: u64,
    size: u64,
    radix: u64,
    degree: usize,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

/// Arithmetic of the coefficient field of a level.
trait Coeffs {
    fn size(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
}

struct PrimeCoeffs(u64);

impl Coeffs for PrimeCoeffs {
    fn size(&self) -> u64 {
        self.0
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn neg(&self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
}

/// GF(q) viewed as the coefficient field of the extension level.
struct BaseCoeffs<'a>(&'a Level);

impl Coeffs for BaseCoeffs<'_> {
    fn size(&self) -> u64 {
        self.0.size
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        digit_add(self.0.p, a, b)
    }
    fn neg(&self, a: u64) -> u64 {
        digit_neg(self.0.p, a)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.0.mul(a, b, &PrimeCoeffs(self.0.p))
    }
}

fn digit_add(p: u64, mut a: u64, mut b: u64) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn digit_neg(p: u64, mut a: u64) -> u64 {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

fn to_digits(mut a: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % radix;
        a /= radix;
    }
    out
}

fn from_digits(digits: &[u64], radix: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

impl Level {
    fn new(p: u64, radix: u64, modulus: Vec<u64>) -> Self {
        let degree = modulus.len() - 1;
        let size = radix.pow(degree as u32);
        Level {
            p,
            size,
            radix,
            degree,
            modulus,
            tables: None,
        }
    }

    fn mul(&self, a: u64, b: u64, coeffs: &dyn Coeffs) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[l] as u64;
        }
        self.slow_mul(a, b, coeffs)
    }

    fn slow_mul(&self, a: u64, b: u64, coeffs: &dyn Coeffs) -> u64 {
        let n = self.degree;
        if n == 1 {
            return coeffs.mul(a, b);
        }
        let da = to_digits(a, self.radix, n);
        let db = to_digits(b, self.radix, n);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = coeffs.add(prod[i + j], coeffs.mul(x, y));
                }
            }
        }
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &mc) in self.modulus[..n].iter().enumerate() {
                if mc != 0 {
                    let pos = top - n + i;
                    prod[pos] = coeffs.add(prod[pos], coeffs.neg(coeffs.mul(c, mc)));
                }
            }
        }
        from_digits(&prod[..n], self.radix)
    }

    fn pow(&self, a: u64, e: u64, coeffs: &dyn Coeffs) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = self.size - 1;
        if let Some(t) = &self.tables {
            let l = (t.log[a as usize] as u128 * (e % group) as u128 % group as u128) as usize;
            return t.exp[l] as u64;
        }
        let mut e = e % group;
        if e == 0 {
            return 1;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base, coeffs);
            }
            base = self.mul(base, base, coeffs);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64, coeffs: &dyn Coeffs) -> u64 {
        debug_assert!(a != 0);
        if let Some(t) = &self.tables {
            let group = (self.size - 1) as usize;
            let l = (group - t.log[a as usize] as usize) % group;
            return t.exp[l] as u64;
        }
        self.pow(a, self.size - 2, coeffs)
    }

    /// Builds log/antilog tables around the smallest primitive element.
    fn build_tables(&mut self, coeffs: &dyn Coeffs) {
        if self.size > TABLE_LIMIT || self.size < 3 {
            return;
        }
        let group = self.size - 1;
        let factors = prime_factors(group);
        let gen = (2..self.size)
            .find(|&g| factors.iter().all(|&f| self.pow(g, group / f, coeffs) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut x = 1u64;
        for i in 0..group as usize {
            exp[i] = x as u32;
            exp[i + group as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, gen, coeffs);
        }
        self.tables = Some(Tables { exp, log });
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` into `(p, w)` with `q = p^w`.
pub fn prime_power(q: u64) -> Result<(u64, u32), GaloisError> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(GaloisError::NotPrimePower(q));
    }
    let p = factors[0];
    let mut w = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        w += 1;
    }
    Ok((p, w))
}

/// Smallest prime power that is at least `x`.
pub fn smallest_prime_power_at_least(x: u64) -> u64 {
    (x.max(2)..).find(|&c| prime_power(c).is_ok()).unwrap()
}

/// Remainder of `f` modulo the monic `g`, both low-degree-first.
fn poly_rem(f: &[u64], g: &[u64], c: &dyn Coeffs) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = c.add(r[shift + i], c.neg(c.mul(lead, gc)));
            }
        }
        r.pop();
    }
    r
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn coeff_inv(a: u64, c: &dyn Coeffs) -> u64 {
    let (mut base, mut e, mut acc) = (a, c.size() - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = c.mul(acc, base);
        }
        base = c.mul(base, base);
        e >>= 1;
    }
    acc
}

fn make_monic(a: &mut [u64], c: &dyn Coeffs) {
    if let Some(&lead) = a.last() {
        let inv = coeff_inv(lead, c);
        a.iter_mut().for_each(|x| *x = c.mul(*x, inv));
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], c: &dyn Coeffs) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = c.add(out[i + j], c.mul(x, y));
            }
        }
    }
    poly_trim(poly_rem(&out, f, c))
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, c: &dyn Coeffs) -> Vec<u64> {
    while !b.is_empty() {
        make_monic(&mut b, c);
        let r = poly_trim(poly_rem(&a, &b, c));
        a = b;
        b = r;
    }
    a
}

/// Irreducibility of a monic polynomial of degree n over a field of size s:
/// no roots, and gcd(x^(s^i) - x, f) = 1 for every i <= n/2.
fn is_irreducible(f: &[u64], c: &dyn Coeffs) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    let rootless = (0..c.size()).all(|x| {
        let val = f.iter().rev().fold(0, |acc, &coef| c.add(c.mul(acc, x), coef));
        val != 0
    });
    if deg <= 3 || !rootless {
        return rootless;
    }
    let mut h = vec![0, 1];
    for _ in 1..=deg / 2 {
        let (mut base, mut e, mut acc) = (h.clone(), c.size(), vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, c);
            }
            base = poly_mulmod(&base, &base, f, c);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = c.add(diff[1], c.neg(1));
        let diff = poly_trim(diff);
        if diff.is_empty() || poly_gcd(f.to_vec(), diff, c).len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree, comparing coefficient sequences low degree first.
fn smallest_irreducible(degree: usize, c: &dyn Coeffs) -> Vec<u64> {
    let s = c.size();
    let count = s.pow(degree as u32);
    // constant term zero means x divides f
    let first = if degree >= 2 { s.pow(degree as u32 - 1) } else { 0 };
    (first..count)
        .map(|t| {
            let mut f: Vec<u64> = (0..degree).map(|i| (t / s.pow((degree - 1 - i) as u32)) % s).collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, c))
        .expect("irreducible polynomials exist in every degree")
}

struct Inner {
    spec: FieldSpec,
    q: u64,
    order: u64,
    base: Level,
    ext: Level,
    base_field: OnceLock<Field>,
}

/// GF(q^m) with its arithmetic tables. Cloning is cheap and the value is
/// immutable, so it can be shared freely across threads.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.inner.spec;
        if s.m == 1 {
            write!(f, "GF({})", self.inner.q)
        } else {
            write!(f, "GF({}^{})", self.inner.q, s.m)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF((p^w)^m) with the lexicographically smallest irreducible
    /// moduli at both levels.
    pub fn new(p: u64, w: u32, m: u32) -> Result<Self, GaloisError> {
        check_sizes(p, w, m)?;
        let prime = PrimeCoeffs(p);
        let base_mod = smallest_irreducible(w as usize, &prime);
        let mut base = Level::new(p, p, base_mod);
        base.build_tables(&prime);
        let ext_mod = smallest_irreducible(m as usize, &BaseCoeffs(&base));
        Self::assemble(p, w, m, base, ext_mod)
    }

    /// Field of prime-power order `q` (no extension).
    pub fn with_order(q: u64) -> Result<Self, GaloisError> {
        let (p, w) = prime_power(q)?;
        Self::new(p, w, 1)
    }

    /// Rebuilds a field from a serialized description, verifying that both
    /// moduli are monic, in range and irreducible.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self, GaloisError> {
        let (p, w, m) = (spec.p as u64, spec.w, spec.m);
        check_sizes(p, w, m)?;
        let q = p.pow(w);
        let base_mod = check_modulus("base", &spec.base_modulus, w as usize, p)?;
        let prime = PrimeCoeffs(p);
        if !is_irreducible(&base_mod, &prime) {
            return Err(GaloisError::ReducibleModulus { which: "base" });
        }
        let mut base = Level::new(p, p, base_mod);
        base.build_tables(&prime);
        let ext_mod = check_modulus("extension", &spec.ext_modulus, m as usize, q)?;
        if !is_irreducible(&ext_mod, &BaseCoeffs(&base)) {
            return Err(GaloisError::ReducibleModulus { which: "extension" });
        }
        Self::assemble(p, w, m, base, ext_mod)
    }

    fn assemble(p: u64, w: u32, m: u32, base: Level, ext_mod: Vec<u64>) -> Result<Self, GaloisError> {
        let q = base.size;
        let mut ext = Level::new(p, q, ext_mod);
        if m > 1 {
            ext.build_tables(&BaseCoeffs(&base));
        }
        let spec = FieldSpec {
            p: p as u32,
            w,
            m,
            base_modulus: base.modulus.iter().map(|&c| c as u32).collect(),
            ext_modulus: ext.modulus.iter().map(|&c| c as u32).collect(),
        };
        Ok(Field {
            inner: Arc::new(Inner {
                spec,
                q,
                order: ext.size,
                base,
                ext,
                base_field: OnceLock::new(),
            }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.base.p
    }

    /// q, the order of the base field.
    pub fn base_order(&self) -> u64 {
        self.inner.q
    }

    /// q^m, the number of elements.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// m, the degree of the extension over GF(q).
    pub fn ext_degree(&self) -> usize {
        self.inner.spec.m as usize
    }

    /// GF(q) as a field in its own right.
    pub fn base_field(&self) -> &Field {
        self.inner.base_field.get_or_init(|| {
            if self.inner.spec.m == 1 {
                return self.clone();
            }
            let spec = FieldSpec {
                p: self.inner.spec.p,
                w: self.inner.spec.w,
                m: 1,
                base_modulus: self.inner.spec.base_modulus.clone(),
                ext_modulus: vec![0, 1],
            };
            Field::from_spec(&spec).expect("base field of a valid field is valid")
        })
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.inner.order
    }

    /// True when `a` lies in the base field GF(q).
    pub fn in_base_field(&self, a: Symbol) -> bool {
        (a as u64) < self.inner.q
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, GaloisError> {
        if !self.contains(value) {
            return Err(GaloisError::OutOfRange {
                value,
                order: self.order(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value: value as Symbol,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.inner.order).map(|v| v as Symbol)
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        digit_add(self.inner.base.p, a as u64, b as u64) as Symbol
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        digit_neg(self.inner.base.p, a as u64) as Symbol
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        let inner = &*self.inner;
        if inner.spec.m == 1 {
            inner.base.mul(a as u64, b as u64, &PrimeCoeffs(inner.base.p)) as Symbol
        } else {
            inner.ext.mul(a as u64, b as u64, &BaseCoeffs(&inner.base)) as Symbol
        }
    }

    pub fn inv(&self, a: Symbol) -> Result<Symbol, GaloisError> {
        if a == 0 {
            return Err(GaloisError::ZeroInverse);
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Symbol) -> Symbol {
        let inner = &*self.inner;
        if inner.spec.m == 1 {
            inner.base.inv(a as u64, &PrimeCoeffs(inner.base.p)) as Symbol
        } else {
            inner.ext.inv(a as u64, &BaseCoeffs(&inner.base)) as Symbol
        }
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Result<Symbol, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Symbol, e: u64) -> Symbol {
        let inner = &*self.inner;
        if inner.spec.m == 1 {
            inner.base.pow(a as u64, e, &PrimeCoeffs(inner.base.p)) as Symbol
        } else {
            inner.ext.pow(a as u64, e, &BaseCoeffs(&inner.base)) as Symbol
        }
    }

    /// `a^(q^i)`, the i-th power of the Frobenius map over GF(q).
    pub fn frobenius(&self, a: Symbol, i: usize) -> Symbol {
        let i = i % self.ext_degree();
        self.pow(a, self.inner.q.pow(i as u32))
    }

    /// Coordinates of `a` in the polynomial basis 1, alpha, ..., alpha^(m-1).
    pub fn to_vector(&self, a: Symbol) -> Vec<Symbol> {
        to_digits(a as u64, self.inner.q, self.ext_degree())
            .into_iter()
            .map(|d| d as Symbol)
            .collect()
    }

    pub fn from_vector(&self, coords: &[Symbol]) -> Result<Symbol, GaloisError> {
        if coords.len() != self.ext_degree() {
            return Err(GaloisError::LengthMismatch {
                expected: self.ext_degree(),
                got: coords.len(),
            });
        }
        if let Some(&c) = coords.iter().find(|&&c| c as u64 >= self.inner.q) {
            return Err(GaloisError::OutOfRange {
                value: c as u64,
                order: self.inner.q,
            });
        }
        let digits: Vec<u64> = coords.iter().map(|&c| c as u64).collect();
        Ok(from_digits(&digits, self.inner.q) as Symbol)
    }

    /// alpha^i in the polynomial basis, for i < m.
    pub fn basis_element(&self, i: usize) -> Symbol {
        assert!(i < self.ext_degree(), "basis index out of range");
        self.inner.q.pow(i as u32) as Symbol
    }

    /// Rank over GF(q) of a set of GF(q^m) elements.
    pub fn base_rank(&self, points: &[Symbol]) -> usize {
        let rows: Vec<Vec<Symbol>> = points.iter().map(|&g| self.to_vector(g)).collect();
        linalg::rank(self.base_field(), &rows)
    }
}

fn check_sizes(p: u64, w: u32, m: u32) -> Result<(), GaloisError> {
    if !is_prime(p) {
        return Err(GaloisError::NotPrime(p));
    }
    if w == 0 || m == 0 {
        return Err(GaloisError::ZeroDegree);
    }
    match (p as u128).checked_pow(w.saturating_mul(m)) {
        Some(o) if o <= INDEX_LIMIT as u128 => Ok(()),
        _ => Err(GaloisError::SizeOverflow { p, w, m }),
    }
}

fn check_modulus(which: &'static str, coeffs: &[u32], degree: usize, radix: u64) -> Result<Vec<u64>, GaloisError> {
    let bad = |reason: String| GaloisError::BadModulus { which, reason };
    if coeffs.len() != degree + 1 {
        return Err(bad(format!(
            "expected {} coefficients, got {}",
            degree + 1,
            coeffs.len()
        )));
    }
    if *coeffs.last().unwrap() != 1 {
        return Err(bad("leading coefficient must be 1".into()));
    }
    if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= radix) {
        return Err(bad(format!("coefficient {c} is not below {radix}")));
    }
    Ok(coeffs.iter().map(|&c| c as u64).collect())
}

/// A field element bound to its field. Mixing elements of different fields
/// is an error rather than silent garbage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Symbol,
}

impl FieldElement {
    pub fn value(&self) -> Symbol {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), GaloisError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GaloisError::FieldMismatch)
        }
    }

    fn with(&self, value: Symbol) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, GaloisError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, i: usize) -> FieldElement {
        self.with(self.field.frobenius(self.value, i))
    }

    pub fn to_vector(&self) -> Vec<Symbol> {
        self.field.to_vector(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `f(x) = sum_i a_i x^(q^i)` over GF(q^m), with coefficients a_0..a_{K-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    field: Field,
    coefficients: Vec<Symbol>,
}

impl LinearizedPolynomial {
    pub fn new(field: &Field, coefficients: Vec<Symbol>) -> Result<Self, GaloisError> {
        if coefficients.is_empty() {
            return Err(GaloisError::EmptyPolynomial);
        }
        if let Some(&c) = coefficients.iter().find(|&&c| !field.contains(c as u64)) {
            return Err(GaloisError::OutOfRange {
                value: c as u64,
                order: field.order(),
            });
        }
        Ok(LinearizedPolynomial {
            field: field.clone(),
            coefficients,
        })
    }

    pub fn coefficients(&self) -> &[Symbol] {
        &self.coefficients
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Largest i with a_i != 0, or `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != 0)
    }

    pub fn eval(&self, x: Symbol) -> Symbol {
        let f = &self.field;
        let mut acc = 0;
        let mut power = x;
        for &a in &self.coefficients {
            acc = f.add(acc, f.mul(a, power));
            power = f.pow(power, f.base_order());
        }
        acc
    }

    /// Interpolates the unique polynomial with K coefficients taking
    /// `values[i]` at `points[i]`, by solving the Moore system
    /// `M[i][j] = points[i]^(q^j)`.
    pub fn moore_solve(field: &Field, points: &[Symbol], values: &[Symbol]) -> Result<Self, GaloisError> {
        if points.len() != values.len() {
            return Err(GaloisError::LengthMismatch {
                expected: points.len(),
                got: values.len(),
            });
        }
        if points.is_empty() {
            return Err(GaloisError::EmptyPolynomial);
        }
        if let Some(&v) = points.iter().chain(values).find(|&&v| !field.contains(v as u64)) {
            return Err(GaloisError::OutOfRange {
                value: v as u64,
                order: field.order(),
            });
        }
        let k = points.len();
        if k > field.ext_degree() || field.base_rank(points) < k {
            return Err(GaloisError::DependentPoints);
        }
        let moore: Vec<Vec<Symbol>> = points
            .iter()
            .map(|&g| {
                let mut row = Vec::with_capacity(k);
                let mut power = g;
                for _ in 0..k {
                    row.push(power);
                    power = field.pow(power, field.base_order());
                }
                row
            })
            .collect();
        let coefficients = linalg::solve_square(field, moore, values.to_vec()).ok_or(GaloisError::DependentPoints)?;
        Ok(LinearizedPolynomial {
            field: field.clone(),
            coefficients,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent multiplication for a prime-power field given explicitly
    /// by its modulus: plain polynomial product reduced mod p and mod f.
    fn reference_mul_gf_pw(p: u64, modulus: &[u64], a: u64, b: u64) -> u64 {
        let w = modulus.len() - 1;
        let da = to_digits(a, p, w);
        let db = to_digits(b, p, w);
        let mut prod = vec![0u64; 2 * w];
        for i in 0..w {
            for j in 0..w {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for top in (w..2 * w).rev() {
            let c = prod[top];
            for i in 0..=w {
                prod[top - w + i] = (prod[top - w + i] + (p - c) * modulus[i] % p) % p;
            }
        }
        from_digits(&prod[..w], p)
    }

    #[test]
    fn prime_fields_have_trivial_moduli() {
        let f = Field::new(2, 1, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.spec().base_modulus, vec![0, 1]);
        let f5 = Field::new(5, 1, 1).unwrap();
        assert_eq!(f5.order(), 5);
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.neg(2), 3);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = Field::new(2, 2, 1).unwrap();
        assert_eq!(f.spec().base_modulus, vec![1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf4_4_moduli_are_smallest_irreducible() {
        let f = Field::new(2, 2, 4).unwrap();
        assert_eq!(f.order(), 256);
        let base = Field::new(2, 2, 1).unwrap();
        let ext = &f.spec().ext_modulus;
        assert_eq!(ext.len(), 5);
        // Irreducible: no roots in GF(4^2) or GF(4) and no quadratic factor.
        // Verified by brute force: no monic quadratic over GF(4) divides it.
        let c = BaseCoeffs(&base.inner.base);
        let fpoly: Vec<u64> = ext.iter().map(|&x| x as u64).collect();
        for t in 0..16u64 {
            let g = vec![t % 4, t / 4, 1];
            assert!(poly_rem(&fpoly, &g, &c).iter().any(|&r| r != 0));
        }
        for t in 0..4u64 {
            assert!(poly_rem(&fpoly, &[t, 1], &c).iter().any(|&r| r != 0));
        }
        // Every lexicographically smaller monic quartic is reducible.
        let s = 4u64;
        for t in 0..s.pow(4) {
            let mut cand: Vec<u64> = (0..4).map(|i| (t / s.pow(3 - i)) % s).collect();
            cand.push(1);
            if cand == fpoly {
                break;
            }
            let reducible = (0..16u64).any(|u| poly_rem(&cand, &[u % 4, u / 4, 1], &c).iter().all(|&r| r == 0))
                || (0..4u64).any(|u| poly_rem(&cand, &[u, 1], &c).iter().all(|&r| r == 0));
            assert!(reducible, "{cand:?} precedes the chosen modulus but is irreducible");
        }
    }

    #[test]
    fn table_and_schoolbook_multiplication_agree() {
        for &(p, w) in &[(2u64, 4u32), (3, 2), (5, 2), (2, 8)] {
            let f = Field::new(p, w, 1).unwrap();
            let modulus: Vec<u64> = f.spec().base_modulus.iter().map(|&c| c as u64).collect();
            for a in 0..f.order() as u32 {
                for b in (0..f.order() as u32).step_by(3) {
                    assert_eq!(f.mul(a, b) as u64, reference_mul_gf_pw(p, &modulus, a as u64, b as u64));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        // 2^20 > table limit, so the extension multiplies by schoolbook.
        let f = Field::new(2, 4, 5).unwrap();
        assert_eq!(f.order(), 1 << 20);
        assert!(f.inner.ext.tables.is_none());
        for a in [1u32, 2, 77, 12345, 1 << 19, 999_999] {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ai), 1);
            assert_eq!(f.frobenius(a, 5), a);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1, 1).unwrap_err(), GaloisError::NotPrime(4));
        assert_eq!(Field::new(2, 0, 1).unwrap_err(), GaloisError::ZeroDegree);
        assert!(matches!(Field::new(2, 11, 3), Err(GaloisError::SizeOverflow { .. })));
        assert!(Field::new(2, 8, 4).is_ok());
        let f = Field::new(5, 1, 1).unwrap();
        assert_eq!(f.inv(0), Err(GaloisError::ZeroInverse));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::new(2, 2, 1).unwrap().element(2).unwrap();
        let b = Field::new(2, 3, 1).unwrap().element(2).unwrap();
        assert_eq!(a.add(&b), Err(GaloisError::FieldMismatch));
        assert_eq!(a.mul(&b), Err(GaloisError::FieldMismatch));
        let c = Field::new(2, 2, 1).unwrap().element(3).unwrap();
        assert_eq!(a.mul(&c).unwrap().value(), 1);
    }

    #[test]
    fn from_spec_validates() {
        let f = Field::new(2, 2, 4).unwrap();
        let g = Field::from_spec(f.spec()).unwrap();
        assert_eq!(f, g);
        let mut bad = f.spec().clone();
        bad.base_modulus = vec![1, 0, 1];
        assert_eq!(
            Field::from_spec(&bad).unwrap_err(),
            GaloisError::ReducibleModulus { which: "base" }
        );
        let mut bad = f.spec().clone();
        bad.ext_modulus[4] = 2;
        assert!(matches!(Field::from_spec(&bad), Err(GaloisError::BadModulus { .. })));
    }

    #[test]
    fn frobenius_fixes_base_field() {
        let f = Field::new(2, 2, 4).unwrap();
        for a in 0..4 {
            assert_eq!(f.frobenius(a, 1), a);
        }
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 4), a);
        }
        let moved = f.elements().filter(|&a| f.frobenius(a, 1) != a).count();
        assert_eq!(moved, 256 - 4);
    }

    #[test]
    fn vector_representation() {
        let f = Field::new(2, 2, 4).unwrap();
        assert_eq!(f.to_vector(0), vec![0; 4]);
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            assert_eq!(f.to_vector(f.basis_element(i)), e);
        }
        for a in f.elements() {
            assert_eq!(f.from_vector(&f.to_vector(a)).unwrap(), a);
        }
        assert!(f.from_vector(&[4, 0, 0, 0]).is_err());
    }

    #[test]
    fn linearized_identity_and_zero() {
        let f = Field::new(2, 2, 4).unwrap();
        let id = LinearizedPolynomial::new(&f, vec![1, 0, 0]).unwrap();
        for x in f.elements() {
            assert_eq!(id.eval(x), x);
        }
        let g = LinearizedPolynomial::new(&f, vec![17, 200, 3]).unwrap();
        assert_eq!(g.eval(0), 0);
        assert_eq!(g.q_degree(), Some(2));
    }

    #[test]
    fn moore_single_point() {
        let f = Field::new(2, 2, 4).unwrap();
        let (g, v) = (37, 201);
        let poly = LinearizedPolynomial::moore_solve(&f, &[g], &[v]).unwrap();
        assert_eq!(poly.coefficients(), &[f.mul(v, f.inv(g).unwrap())]);
    }

    #[test]
    fn moore_rejects_dependent_points() {
        let f = Field::new(2, 2, 4).unwrap();
        let g = 77;
        let cg = f.mul(3, g);
        assert_eq!(
            LinearizedPolynomial::moore_solve(&f, &[g, cg], &[1, 2]),
            Err(GaloisError::DependentPoints)
        );
        assert_eq!(
            LinearizedPolynomial::moore_solve(&f, &[0], &[1]),
            Err(GaloisError::DependentPoints)
        );
    }
}
