//! Finite fields `F_{p^h}` in a dense power-basis representation.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`
//! where `c_i` are its coordinates with respect to `1, T, ..., T^{h-1}` modulo
//! the field's modulus. The encoding is a bijection, so equality of [`Fq`]
//! values is coordinate-wise equality.
//!
//! Fields of order up to 2^24 carry exp/log tables; larger fields fall back to
//! schoolbook polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 24;

/// Characteristic, degree and modulus of a field. Modulus coefficients are
/// listed from the constant term upward and include the leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub h: u32,
    pub modulus: Vec<u64>,
}

/// A field element, meaningful only together with the [`Field`] it came from.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Operation selector for [`Field::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

struct Inner {
    spec: FieldSpec,
    p: u32,
    h: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} mod {:?}",
            self.0.p, self.0.h, self.0.spec.modulus
        )
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Dense polynomials over F_p as coefficient vectors, constant term first.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (t0, t1) = (t1, t0 - k * t1);
        }
        t0.rem_euclid(p as i128) as u64
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for (i, &fi) in f.iter().enumerate() {
                    let k = top - df + i;
                    r[k] = (r[k] + p - c * fi % p) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        rem(&c, f, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        rem(&acc, f, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's irreducibility test for a monic `f` of degree at least 1.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let h = f.len() - 1;
        if h == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // frob[k] = x^{p^k} mod f
        let mut frob = vec![rem(&x, f, p)];
        for k in 1..=h {
            let next = powmod(&frob[k - 1], p, f, p);
            frob.push(next);
        }
        if frob[h] != rem(&x, f, p) {
            return false;
        }
        for r in super::prime_factors(h as u64) {
            let k = h / r as usize;
            let mut g = frob[k].clone();
            g.resize(g.len().max(2), 0);
            g[1] = (g[1] + p - 1) % p;
            trim(&mut g);
            if gcd(f, &g, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds `F_{p^h}`. Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial is used, comparing the
    /// coefficient vectors `(c_0, ..., c_{h-1})` with `c_0` most significant.
    pub fn new(p: u64, h: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let q = (p as u128).pow(h);
        if q > u32::MAX as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                fp_poly::trim(&mut m);
                if m.len() != h as usize + 1 || m[h as usize] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: h as usize,
                        got: m.len().saturating_sub(1),
                    });
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => smallest_irreducible(p, h as usize),
        };
        let mut inner = Inner {
            spec: FieldSpec {
                p,
                h,
                modulus: modulus.clone(),
            },
            p: p as u32,
            h: h as usize,
            q: q as u32,
            modulus: modulus[..h as usize].iter().map(|&c| c as u32).collect(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        if q <= TABLE_LIMIT as u128 {
            build_tables(&mut inner);
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.h, Some(spec.modulus.clone()))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }
    pub fn p(&self) -> u64 {
        self.0.p as u64
    }
    pub fn h(&self) -> u32 {
        self.0.h as u32
    }
    /// Field order `q = p^h`.
    pub fn order(&self) -> u64 {
        self.0.q as u64
    }
    pub fn has_tables(&self) -> bool {
        !self.0.exp.is_empty()
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }
    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The integer representative when `a` lies in the prime field.
    pub fn to_int(&self, a: Fq) -> Option<u64> {
        (a.0 < self.0.p).then_some(a.0 as u64)
    }

    /// Coordinates `c_0..c_{h-1}` of `a`.
    pub fn coords(&self, a: Fq) -> Vec<u64> {
        let p = self.0.p;
        let mut x = a.0;
        (0..self.0.h)
            .map(|_| {
                let c = x % p;
                x /= p;
                c as u64
            })
            .collect()
    }

    /// Element with the given coordinates; missing trailing coordinates are 0.
    pub fn from_coords(&self, c: &[u64]) -> Result<Fq> {
        if c.len() > self.0.h && c[self.0.h..].iter().any(|&x| x != 0) {
            return Err(Error::FieldMismatch);
        }
        let p = self.0.p as u64;
        let mut idx = 0u64;
        for &ci in c.iter().take(self.0.h).rev() {
            if ci >= p {
                return Err(Error::FieldMismatch);
            }
            idx = idx * p + ci;
        }
        Ok(Fq(idx as u32))
    }

    /// Like [`Field::from_coords`] but reduces each coordinate mod p.
    pub fn from_coords_signed(&self, c: &[i64]) -> Result<Fq> {
        let p = self.0.p as i64;
        let v: Vec<u64> = c.iter().map(|&x| x.rem_euclid(p) as u64).collect();
        self.from_coords(&v)
    }

    /// The class of `T` in `F_p[T]/(modulus)`; equals the prime-field element 0 when h = 1.
    pub fn t(&self) -> Fq {
        if self.0.h == 1 {
            Fq((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            Fq(self.0.p)
        }
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.0.q
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.h == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut r, mut m) = (0u64, 1u64);
        while x > 0 || y > 0 {
            let s = x % p + y % p;
            let s = if s >= p { s - p } else { s };
            r += s as u64 * m;
            m *= p as u64;
            x /= p;
            y /= p;
        }
        Fq(r as u32)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if self.0.h == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let (mut r, mut m) = (0u64, 1u64);
        while x > 0 {
            let c = x % p;
            if c != 0 {
                r += (p - c) as u64 * m;
            }
            m *= p as u64;
            x /= p;
        }
        Fq(r as u32)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let inner = &*self.0;
        if inner.h == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        if !inner.exp.is_empty() {
            let n = inner.q as u64 - 1;
            let e = (inner.log[a.0 as usize] as u64 + inner.log[b.0 as usize] as u64) % n;
            return Fq(inner.exp[e as usize]);
        }
        mul_slow(inner, a, b)
    }

    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        if !inner.exp.is_empty() {
            let n = inner.q - 1;
            let l = inner.log[a.0 as usize];
            return Ok(Fq(inner.exp[((n - l) % n) as usize]));
        }
        Ok(self.pow(a, inner.q as u64 - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked arithmetic entry point; `y` is ignored by unary ops.
    pub fn arith(&self, op: Op, x: Fq, y: Fq) -> Result<Fq> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            Op::Add => self.add(x, y),
            Op::Sub => self.sub(x, y),
            Op::Mul => self.mul(x, y),
            Op::Div => self.div(x, y)?,
            Op::Neg => self.neg(x),
            Op::Inv => self.inv(x)?,
        })
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let inner = &*self.0;
        if !inner.exp.is_empty() {
            let n = inner.q as u64 - 1;
            let l = inner.log[a.0 as usize] as u64;
            let k = ((l as u128 * (e % n) as u128) % n as u128) as usize;
            return Fq(inner.exp[k]);
        }
        let mut acc = Fq::ONE;
        let mut b = a;
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

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Fq, k: u32) -> Fq {
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.p());
        }
        x
    }

    fn check_divisor(&self, v: u32) -> Result<()> {
        if v == 0 || !self.h().is_multiple_of(v) {
            return Err(Error::NotADivisor { v, h: self.h() });
        }
        Ok(())
    }

    /// True iff `a` lies in the subfield of order `p^v`.
    pub fn in_subfield(&self, a: Fq, v: u32) -> Result<bool> {
        self.check_divisor(v)?;
        Ok(self.frobenius(a, v) == a)
    }

    /// `a^((q-1)/(p^v-1))`, the norm onto the subfield of order `p^v`.
    pub fn norm_to_subfield(&self, a: Fq, v: u32) -> Result<Fq> {
        self.check_divisor(v)?;
        if a.is_zero() {
            return Ok(Fq::ZERO);
        }
        let sub = self.p().pow(v) - 1;
        Ok(self.pow(a, (self.order() - 1) / sub))
    }

    /// Every element once, in lexicographic order of `(c_0, ..., c_{h-1})`.
    pub fn enumerate(&self) -> impl Iterator<Item = Fq> + '_ {
        let p = self.0.p;
        let h = self.0.h;
        (0..self.0.q).map(move |rank| {
            // rank has c_0 as its most significant base-p digit
            let mut r = rank;
            let mut idx = 0u32;
            let mut m = 1u32;
            let mut digits = [0u32; 32];
            for d in digits.iter_mut().take(h) {
                *d = r % p;
                r /= p;
            }
            for i in 0..h {
                idx += digits[h - 1 - i] * m;
                m = m.wrapping_mul(p);
            }
            Fq(idx)
        })
    }

    /// All elements in encoding order; faster than [`Field::enumerate`].
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Fq {
        if self.has_tables() {
            return Fq(self.0.exp[1 % self.0.exp.len()]);
        }
        find_generator(&self.0)
    }

    /// Discrete logarithm to base [`Field::generator`]; only for tabled fields.
    pub fn log(&self, a: Fq) -> Option<u64> {
        if a.is_zero() || !self.has_tables() {
            return None;
        }
        Some(self.0.log[a.0 as usize] as u64)
    }

    pub fn exp(&self, k: u64) -> Fq {
        if self.has_tables() {
            let n = self.order() - 1;
            Fq(self.0.exp[(k % n) as usize])
        } else {
            self.pow(self.generator(), k)
        }
    }

    /// All `w` with `w^n = a`.
    pub fn nth_roots(&self, a: Fq, n: u64) -> Vec<Fq> {
        if a.is_zero() {
            return vec![Fq::ZERO];
        }
        let order = self.order() - 1;
        if !self.has_tables() {
            return self.elements().filter(|&w| self.pow(w, n) == a).collect();
        }
        let l = self.log(a).unwrap();
        let g = gcd(n, order);
        if !l.is_multiple_of(g) {
            return Vec::new();
        }
        // solve (n/g) k = l/g mod order/g
        let m = order / g;
        let ng = (n / g) % m;
        let lg = l / g;
        let k0 = if m == 1 {
            0
        } else {
            (lg % m) * fp_poly::inv_mod(ng, m) % m
        };
        (0..g).map(|i| self.exp(k0 + i * m)).collect()
    }

    pub fn is_square(&self, a: Fq) -> bool {
        if a.is_zero() {
            return true;
        }
        if self.p() == 2 {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == Fq::ONE
    }

    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.nth_roots(a, 2).into_iter().next()
    }

    /// Degree-`k` extension with an embedding of this field into it.
    pub fn extension(&self, k: u32) -> Result<Embedding> {
        static CACHE: OnceLock<Mutex<HashMap<(FieldSpec, u32), Embedding>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (self.0.spec.clone(), k);
        if let Some(e) = cache.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = self.build_extension(k)?;
        if e.big.order() <= 1 << 22 {
            cache.lock().unwrap().insert(key, e.clone());
        }
        Ok(e)
    }

    fn build_extension(&self, k: u32) -> Result<Embedding> {
        let big = Field::new(self.p(), self.h() * k, None)?;
        // a root of this field's modulus inside the big field
        let m = &self.0.spec.modulus;
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = Fq::ZERO;
                for &c in m.iter().rev() {
                    acc = big.add(big.mul(acc, r), big.from_int(c as i64));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Internal("modulus has no root in the extension".into()))?;
        let mut powers = vec![Fq::ONE];
        for i in 1..self.0.h {
            powers.push(big.mul(powers[i - 1], root));
        }
        let image = self
            .elements()
            .map(|a| {
                self.coords(a)
                    .iter()
                    .zip(&powers)
                    .fold(Fq::ZERO, |acc, (&c, &pw)| {
                        big.add(acc, big.mul(big.from_int(c as i64), pw))
                    })
            })
            .collect();
        Ok(Embedding {
            small: self.clone(),
            big,
            image,
        })
    }

    /// Human-readable form such as `3+5T`.
    pub fn fmt_elem(&self, a: Fq) -> String {
        let c = self.coords(a);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            parts.push(match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "T".to_string(),
                (1, _) => format!("{ci}T"),
                (_, 1) => format!("T^{i}"),
                _ => format!("{ci}T^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// An embedding of a field into one of its extensions.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: Field,
    pub big: Field,
    image: Vec<Fq>,
}

impl Embedding {
    pub fn embed(&self, a: Fq) -> Fq {
        self.image[a.0 as usize]
    }
}

fn smallest_irreducible(p: u64, h: usize) -> Vec<u64> {
    let total = p.pow(h as u32);
    for rank in 0..total {
        // c_0 is the most significant digit of rank
        let mut r = rank;
        let mut f = vec![0u64; h + 1];
        for i in (0..h).rev() {
            f[i] = r % p;
            r /= p;
        }
        f[h] = 1;
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mul_slow(inner: &Inner, a: Fq, b: Fq) -> Fq {
    let p = inner.p as u64;
    let h = inner.h;
    let decode = |x: u32| {
        let mut x = x as u64;
        (0..h)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect::<Vec<u64>>()
    };
    let (x, y) = (decode(a.0), decode(b.0));
    let mut c = vec![0u64; 2 * h - 1];
    for i in 0..h {
        if x[i] == 0 {
            continue;
        }
        for j in 0..h {
            c[i + j] = (c[i + j] + x[i] * y[j]) % p;
        }
    }
    for top in (h..2 * h - 1).rev() {
        let k = c[top];
        if k == 0 {
            continue;
        }
        c[top] = 0;
        for (i, &m) in inner.modulus.iter().enumerate() {
            let idx = top - h + i;
            c[idx] = (c[idx] + p - k * m as u64 % p) % p;
        }
    }
    let mut idx = 0u64;
    for &ci in c[..h].iter().rev() {
        idx = idx * p + ci;
    }
    Fq(idx as u32)
}

fn pow_slow(inner: &Inner, a: Fq, mut e: u64) -> Fq {
    let mut acc = Fq::ONE;
    let mut b = a;
    let mul = |x: Fq, y: Fq| {
        if x.0 == 0 || y.0 == 0 {
            Fq::ZERO
        } else if inner.h == 1 {
            Fq(((x.0 as u64 * y.0 as u64) % inner.p as u64) as u32)
        } else {
            mul_slow(inner, x, y)
        }
    };
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn find_generator(inner: &Inner) -> Fq {
    let n = inner.q as u64 - 1;
    if n == 1 {
        return Fq::ONE;
    }
    let factors = prime_factors(n);
    (1..inner.q)
        .map(Fq)
        .find(|&g| {
            factors
                .iter()
                .all(|&r| pow_slow(inner, g, n / r) != Fq::ONE)
        })
        .expect("multiplicative group is cyclic")
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q as usize;
    let g = find_generator(inner);
    let mut exp = vec![0u32; q - 1];
    let mut log = vec![u32::MAX; q];
    let mut x = Fq::ONE;
    for (k, slot) in exp.iter_mut().enumerate() {
        *slot = x.0;
        log[x.0 as usize] = k as u32;
        x = if inner.h == 1 {
            Fq(((x.0 as u64 * g.0 as u64) % inner.p as u64) as u32)
        } else {
            mul_slow(inner, x, g)
        };
    }
    inner.exp = exp;
    inner.log = log;
}
