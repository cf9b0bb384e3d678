//! Exact arithmetic in a finite field `F_{p^m}`.
//!
//! Elements are stored as packed base-`p` indices `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of their coordinates in the power basis of the modulus. All computations of a
//! run take place in one ambient field; subfields `F_{p^s}` (`s | m`) are
//! recognised as fixed points of the Frobenius.

mod irreducible;
mod poly;
mod projective;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use poly::{poly_roots, Polynomial};
pub use projective::{enumerate_projective_line, Embedding, Labelled, ProjPoint};

/// Fields up to this order get exp/log tables; larger ones multiply by schoolbook.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("field of order {p}^{m} does not fit the 32-bit element encoding")]
    TooLarge { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("F_{q} is not a subfield of the ambient field F_{order}")]
    InvalidSubfield { q: u64, order: u64 },
    #[error("element has {got} coordinates, expected {expected}")]
    BadElement { got: usize, expected: usize },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
}

/// An element of a [`FieldSpec`], in canonical (fully reduced) form.
///
/// The value carries no reference to its field; mixing elements of different
/// fields is a logic error that `FieldSpec` methods catch in debug builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    /// Packed base-`p` index of the element.
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(Q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    m: u32,
    modulus: Vec<u64>,
    order: u64,
    tables: Option<Tables>,
}

/// The ambient field `F_{p^m} = F_p[t]/(modulus)`.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Builds `F_{p^m}`.
///
/// Without an explicit modulus the lexicographically smallest monic irreducible
/// polynomial of degree `m` is used, comparing coefficients from `t^{m-1}` down to
/// the constant term. For `m = 1` the default modulus is `t`.
pub fn make_field(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = p
        .checked_pow(m)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(FieldError::TooLarge { p, m })?;
    let modulus = match modulus {
        Some(coeffs) => {
            let reduced: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
            if reduced.len() != m as usize + 1 || reduced[m as usize] != 1 {
                return Err(FieldError::BadModulus { expected: m });
            }
            if !irreducible::is_irreducible(&reduced, p) {
                return Err(FieldError::ReducibleModulus { p });
            }
            reduced
        }
        None => irreducible::smallest_irreducible(p, m),
    };
    let mut inner = Inner {
        p,
        m,
        modulus,
        order,
        tables: None,
    };
    if order <= TABLE_LIMIT && m > 1 {
        inner.tables = Some(build_tables(&inner));
    }
    Ok(FieldSpec {
        inner: Arc::new(inner),
    })
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.order;
    let factors = prime_factors(q - 1);
    let g = (1..q as u32)
        .map(FieldElement)
        .find(|&g| {
            factors
                .iter()
                .all(|&l| slow_pow(inner, g, (q - 1) / l) != FieldElement(1))
        })
        .expect("multiplicative group of a finite field is cyclic");
    let n = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; q as usize];
    let mut x = FieldElement(1);
    for i in 0..n {
        exp[i] = x.0;
        exp[i + n] = x.0;
        log[x.0 as usize] = i as u32;
        x = slow_mul(inner, x, g);
    }
    Tables { exp, log }
}

fn digits(inner: &Inner, x: FieldElement) -> [u64; 32] {
    let mut out = [0u64; 32];
    let mut v = x.0 as u64;
    for d in out.iter_mut().take(inner.m as usize) {
        *d = v % inner.p;
        v /= inner.p;
    }
    out
}

fn pack(inner: &Inner, ds: &[u64]) -> FieldElement {
    let mut v = 0u64;
    for &d in ds[..inner.m as usize].iter().rev() {
        v = v * inner.p + d;
    }
    FieldElement(v as u32)
}

fn slow_mul(inner: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = inner.p;
    let m = inner.m as usize;
    if m == 1 {
        return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u32);
    }
    let da = digits(inner, a);
    let db = digits(inner, b);
    let mut prod = [0u64; 64];
    for i in 0..m {
        if da[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (m..2 * m - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for t in 0..m {
            prod[k - m + t] = (prod[k - m + t] + (p - c) * inner.modulus[t]) % p;
        }
    }
    pack(inner, &prod)
}

fn slow_pow(inner: &Inner, mut base: FieldElement, mut e: u64) -> FieldElement {
    let mut acc = FieldElement(1);
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Ascending coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The class of `t`, i.e. a root of the modulus. Equals the integer `0` when `m = 1`.
    pub fn generator(&self) -> FieldElement {
        if self.inner.m == 1 {
            FieldElement(0)
        } else {
            FieldElement(self.inner.p as u32)
        }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element with the given power-basis coordinates (reduced mod `p`).
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        let m = self.inner.m as usize;
        if coeffs.len() != m {
            return Err(FieldError::BadElement {
                got: coeffs.len(),
                expected: m,
            });
        }
        let p = self.inner.p as i64;
        let ds: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect();
        Ok(pack(&self.inner, &ds))
    }

    /// Element with packed index `idx`; `None` when out of range.
    pub fn from_index(&self, idx: u64) -> Option<FieldElement> {
        (idx < self.inner.order).then_some(FieldElement(idx as u32))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        digits(&self.inner, x)[..self.inner.m as usize].to_vec()
    }

    /// All elements in canonical order (increasing packed index).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.order as u32).map(FieldElement)
    }

    /// Canonical text form: a bare integer for elements of the prime field,
    /// `[c0,c1,...]` otherwise.
    pub fn label(&self, x: FieldElement) -> String {
        if (x.0 as u64) < self.inner.p {
            return x.0.to_string();
        }
        let cs: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cs.join(","))
    }

    #[inline]
    fn check(&self, x: FieldElement) {
        debug_assert!((x.0 as u64) < self.inner.order, "element outside field");
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut v = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            v += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(v as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement(((p - a.0 as u64) % p) as u32);
        }
        let mut x = a.0 as u64;
        let mut v = 0u64;
        let mut place = 1u64;
        while x > 0 {
            v += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(v as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        match &self.inner.tables {
            Some(t) => {
                FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
            }
            None => slow_mul(&self.inner, a, b),
        }
    }

    /// Schoolbook multiplication, bypassing the log tables.
    pub fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        slow_mul(&self.inner, a, b)
    }

    pub fn pow(&self, base: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement(1);
        }
        if base.0 == 0 {
            return FieldElement(0);
        }
        if let Some(t) = &self.inner.tables {
            let n = self.inner.order - 1;
            let k = (t.log[base.0 as usize] as u64 * (e % n)) % n;
            return FieldElement(t.exp[k as usize]);
        }
        let mut acc = FieldElement(1);
        let mut b = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            let n = (self.inner.order - 1) as u32;
            let l = t.log[a.0 as usize];
            return Ok(FieldElement(t.exp[((n - l) % n) as usize]));
        }
        Ok(self.pow(a, self.inner.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn arith(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: ArithOp,
    ) -> Result<FieldElement, FieldError> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// Degree `s` of the subfield `F_q` (`q = p^s`), checking `s | m`.
    pub fn subfield_degree(&self, q: u64) -> Result<u32, FieldError> {
        let invalid = FieldError::InvalidSubfield {
            q,
            order: self.inner.order,
        };
        let mut s = 0u32;
        let mut acc = 1u64;
        while acc < q {
            acc = acc.checked_mul(self.inner.p).ok_or(invalid.clone())?;
            s += 1;
        }
        if acc != q || s == 0 || self.inner.m % s != 0 {
            return Err(invalid);
        }
        Ok(s)
    }

    /// `x^(q^k)`, for `q` the order of a subfield.
    pub fn frobenius(&self, x: FieldElement, q: u64, k: u32) -> Result<FieldElement, FieldError> {
        self.subfield_degree(q)?;
        let mut y = x;
        for _ in 0..k {
            y = self.pow(y, q);
        }
        Ok(y)
    }

    /// Smallest `r >= 1` with `x^(q^r) = x`; always divides `[F : F_q]`.
    pub fn element_degree(&self, x: FieldElement, q: u64) -> Result<u32, FieldError> {
        let s = self.subfield_degree(q)?;
        let mut y = self.pow(x, q);
        let mut r = 1;
        while y != x {
            y = self.pow(y, q);
            r += 1;
        }
        debug_assert!((self.inner.m / s) % r == 0);
        Ok(r)
    }

    /// Whether `x` lies in the subfield of order `q_r`.
    pub fn in_subfield(&self, x: FieldElement, q_r: u64) -> bool {
        self.pow(x, q_r) == x
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.order)?;
        if self.inner.m > 1 {
            let terms: Vec<String> = self
                .inner
                .modulus
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match (i, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "t".to_string(),
                    (1, c) => format!("{c}t"),
                    (i, 1) => format!("t^{i}"),
                    (i, c) => format!("{c}t^{i}"),
                })
                .collect();
            write!(f, " = F_{}[t]/({})", self.inner.p, terms.join("+"))?;
        }
        Ok(())
    }
}
