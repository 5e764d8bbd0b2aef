//! Arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the value `Σ c_i p^i` stands
//! for the residue class of the polynomial `Σ c_i x^i` modulo the field's
//! defining polynomial. Zero is `0` and one is `1` in every field.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the limit {limit}")]
    TooLarge { p: u32, e: u32, limit: u64 },
    #[error("polynomial {0:?} is not a monic irreducible of the requested degree")]
    NotIrreducible(Vec<u32>),
    #[error("elements belong to different fields: GF({0}^{1}) vs GF({2}^{3})")]
    FieldMismatch(u32, u32, u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no discrete logarithm")]
    LogOfZero,
    #[error("value {0} is not an element of a field of order {1}")]
    OutOfRange(u32, u32),
    #[error("GF({0}^{1}) is not a subfield of GF({2}^{3})")]
    NotSubfield(u32, u32, u32, u32),
}

#[derive(Debug)]
struct Tables {
    /// `exp[k] = g^k` for `k in 0..2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field GF(p^e) with a fixed defining polynomial and primitive element.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Low-degree-first coefficients of the monic modulus, length `e + 1`.
    modulus: Vec<u32>,
    generator: u32,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// A field element tagged with the `(p, e)` of its owning field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub p: u32,
    pub e: u32,
    pub value: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` when `q = p^e` for a prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
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

// Polynomials over GF(p) as low-degree-first coefficient vectors.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Remainder of `a` divided by `b` over GF(p); `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    r
}

fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let degree = (poly.len() - 1) as u32;
    for d in 1..=degree / 2 {
        for divisor in monic_polys(p, d) {
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `e` over GF(p),
/// comparing coefficients from the constant term upwards.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        // the constant term is the most significant digit of the ordering
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut rest = idx;
        for i in (0..e as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[e as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    panic!("no monic irreducible of degree {e} over GF({p}); this cannot happen");
}

impl FieldSpec {
    /// GF(p^e) with the default size limit.
    pub fn new(p: u32, e: u32) -> Result<Self, GaloisError> {
        Self::with_limit(p, e, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(p: u32, e: u32, limit: u64) -> Result<Self, GaloisError> {
        Self::check_params(p, e, limit)?;
        let modulus = least_irreducible(p, e);
        Ok(Self::build(p, e, modulus))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Self, GaloisError> {
        let (p, e) = prime_power(q).ok_or(GaloisError::NotPrime(q))?;
        Self::new(p, e)
    }

    /// A field with an explicitly chosen monic modulus (low-degree-first,
    /// including the leading 1).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self, GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        let reduced: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        let trimmed = poly_trim(reduced.clone());
        if trimmed.len() < 2 || trimmed.len() != reduced.len() || *trimmed.last().unwrap() != 1 {
            return Err(GaloisError::NotIrreducible(modulus.to_vec()));
        }
        let e = (trimmed.len() - 1) as u32;
        Self::check_params(p, e, DEFAULT_MAX_ORDER)?;
        if !is_irreducible(&trimmed, p) {
            return Err(GaloisError::NotIrreducible(modulus.to_vec()));
        }
        Ok(Self::build(p, e, trimmed))
    }

    fn check_params(p: u32, e: u32, limit: u64) -> Result<(), GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if e == 0 {
            return Err(GaloisError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(e);
        match order {
            Some(q) if q <= limit && q <= u32::MAX as u64 => Ok(()),
            _ => Err(GaloisError::TooLarge { p, e, limit }),
        }
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let mut field = FieldSpec {
            p,
            e,
            q,
            modulus,
            generator: 1,
            tables: None,
        };
        field.generator = field.find_generator();
        if q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = Vec::with_capacity(2 * n);
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for k in 0..n {
                exp.push(x);
                log[x as usize] = k as u32;
                x = field.poly_mul(x, field.generator);
            }
            assert_eq!(x, 1, "generator of GF({p}^{e}) does not have order q-1");
            for k in 0..n {
                exp.push(exp[k]);
            }
            field.tables = Some(Arc::new(Tables { exp, log }));
        }
        field
    }

    fn find_generator(&self) -> u32 {
        let n = (self.q - 1) as u64;
        if n == 1 {
            return 1;
        }
        let factors = distinct_prime_factors(n);
        for g in 2..self.q {
            if factors.iter().all(|&r| self.slow_pow(g, n / r) != 1) {
                return g;
            }
        }
        // q = 2 is handled above; GF(3) has generator 2
        panic!("no primitive element found in GF({}^{})", self.p, self.e);
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Low-degree-first coefficients of the modulus, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn coeffs(&self, value: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut rest = value;
        for _ in 0..self.e {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, GaloisError> {
        if value >= self.q {
            return Err(GaloisError::OutOfRange(value, self.q));
        }
        Ok(FieldElement {
            p: self.p,
            e: self.e,
            value,
        })
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut rest = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - rest % self.p) % self.p) * place;
            rest /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.poly_mul(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero (use [`FieldSpec::arith`] for a checked path).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({}^{})", self.p, self.e);
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.slow_pow(a, self.q as u64 - 2),
        }
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u64;
                t.exp[((t.log[a as usize] as u64 * (exp % n)) % n) as usize]
            }
            None => self.slow_pow(a, exp),
        }
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> u32 {
        self.pow(self.generator, k)
    }

    /// Checked arithmetic on tagged elements.
    pub fn arith(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: ArithOp,
    ) -> Result<FieldElement, GaloisError> {
        for x in [a, b] {
            if (x.p, x.e) != (self.p, self.e) {
                return Err(GaloisError::FieldMismatch(x.p, x.e, self.p, self.e));
            }
            if x.value >= self.q {
                return Err(GaloisError::OutOfRange(x.value, self.q));
            }
        }
        let value = match op {
            ArithOp::Add => self.add(a.value, b.value),
            ArithOp::Sub => self.sub(a.value, b.value),
            ArithOp::Mul => self.mul(a.value, b.value),
            ArithOp::Div => {
                if b.value == 0 {
                    return Err(GaloisError::DivisionByZero);
                }
                self.div(a.value, b.value)
            }
        };
        Ok(FieldElement { value, ..a })
    }

    /// The unique `k` in `[0, q-1)` with `generator^k = x`.
    pub fn discrete_log(&self, x: u32) -> Result<u32, GaloisError> {
        if x == 0 {
            return Err(GaloisError::LogOfZero);
        }
        if x >= self.q {
            return Err(GaloisError::OutOfRange(x, self.q));
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[x as usize]);
        }
        let mut acc = 1u32;
        for k in 0..self.q - 1 {
            if acc == x {
                return Ok(k);
            }
            acc = self.poly_mul(acc, self.generator);
        }
        unreachable!("generator does not reach {x}");
    }

    fn slow_pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.poly_mul(result, base);
            }
            base = self.poly_mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// Schoolbook product reduced by the modulus; used before tables exist
    /// and for fields too large to tabulate.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let e = self.e as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^e = -(m_0 + ... + m_{e-1} x^{e-1})
        for d in (e..2 * e).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..e {
                let m = self.modulus[k] as u64;
                prod[d - e + k] = (prod[d - e + k] + (p - c) * m) % p;
            }
        }
        let coeffs: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&coeffs)
    }
}

/// An injective field homomorphism GF(p^a) -> GF(p^b).
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    map: Vec<u32>,
    inverse: Vec<Option<u32>>,
}

impl SubfieldEmbedding {
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// Preimage of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: u32) -> Option<u32> {
        self.inverse.get(y as usize).copied().flatten()
    }

    pub fn image(&self) -> &[u32] {
        &self.map
    }
}

/// Embeds `sub = GF(p^a)` into `sup = GF(p^b)` by sending the class of `x`
/// to the least root (by value) of `sub`'s modulus in `sup`.
pub fn subfield_embedding(
    sub: &FieldSpec,
    sup: &FieldSpec,
) -> Result<SubfieldEmbedding, GaloisError> {
    if sub.p != sup.p || !sup.e.is_multiple_of(sub.e) {
        return Err(GaloisError::NotSubfield(sub.p, sub.e, sup.p, sup.e));
    }
    let eval = |r: u32, coeffs: &[u32]| -> u32 {
        // Horner, coefficients low-degree-first
        coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| sup.add(sup.mul(acc, r), c))
    };
    let root = (0..sup.q)
        .find(|&r| eval(r, &sub.modulus) == 0)
        .expect("a subfield's modulus always splits in the extension");
    let map: Vec<u32> = (0..sub.q).map(|x| eval(root, &sub.coeffs(x))).collect();
    let mut inverse = vec![None; sup.q as usize];
    for (x, &y) in map.iter().enumerate() {
        inverse[y as usize] = Some(x as u32);
    }
    Ok(SubfieldEmbedding { map, inverse })
}
