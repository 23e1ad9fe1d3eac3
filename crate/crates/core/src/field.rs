//! Arithmetic in `F_p` and `F_{p^e}` for odd `p`.
//!
//! Elements are dense coordinate vectors with respect to the polynomial basis
//! `1, Y, ..., Y^{e-1}` of `F_p[Y] / (modulus)`. A [`FieldSpec`] is immutable
//! and cheap to clone, so it can be shared freely across sweep workers.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::parse;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;
const MAX_CHARACTERISTIC: u64 = 1 << 15;

/// An element of some `F_{p^e}`.
///
/// The element remembers a fingerprint of its field so that operands from
/// different fields are rejected with [`Error::FieldMismatch`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    tag: u64,
    degree: u8,
    coords: [u16; MAX_DEGREE],
}

impl FieldElement {
    /// Coordinates `(c_0, ..., c_{e-1})`.
    pub fn coords(&self) -> &[u16] {
        &self.coords[..self.degree as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Inner {
    p: u64,
    e: usize,
    q: u64,
    /// `e + 1` coefficients, low degree first, monic.
    modulus: Vec<u64>,
    /// `p - modulus[j]` for `j < e`: the reduction rule `Y^e = sum neg_mod[j] Y^j`.
    neg_mod: [u64; MAX_DEGREE],
    tag: u64,
    explicit_modulus: bool,
    /// Prime divisors of `q - 1`.
    order_primes: Vec<u64>,
    generator: OnceLock<FieldElement>,
}

/// `F_q` with `q = p^e`, presented as `F_p[Y]` modulo a monic irreducible.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.describe())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn check_characteristic(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

impl FieldSpec {
    /// Builds `F_{p^e}`. With `modulus = None` the lexicographically smallest
    /// monic irreducible of degree `e` is used (coefficients compared
    /// low-degree first).
    pub fn new(p: u64, e: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        check_characteristic(p)?;
        if e == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        if p >= MAX_CHARACTERISTIC || e > MAX_DEGREE {
            return Err(Error::FieldTooLarge(format!("{p}^{e}")));
        }
        let q = p
            .checked_pow(e as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{e}")))?;
        let explicit = modulus.is_some();
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected degree {e}, got {} coefficients",
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
                }
                if m[e] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(format_dense(&m)));
                }
                m
            }
            None => smallest_irreducible(p, e),
        };
        Ok(Self::from_parts(p, e, q, modulus, explicit))
    }

    /// Builds a field whose modulus the caller declares primitive; the class
    /// of `Y` is verified to generate `F_q^*` and becomes the generator.
    pub fn with_primitive_modulus(p: u64, e: usize, modulus: Vec<u64>) -> Result<Self> {
        let field = Self::new(p, e, Some(modulus))?;
        let y = field.class_of_y();
        if field.order_raw(y) != field.q() - 1 {
            return Err(Error::NotPrimitive(format_dense(&field.inner.modulus)));
        }
        let _ = field.inner.generator.set(y);
        Ok(field)
    }

    fn from_parts(p: u64, e: usize, q: u64, modulus: Vec<u64>, explicit: bool) -> Self {
        let mut neg_mod = [0u64; MAX_DEGREE];
        for j in 0..e {
            neg_mod[j] = (p - modulus[j]) % p;
        }
        let mut h = DefaultHasher::new();
        p.hash(&mut h);
        modulus.hash(&mut h);
        FieldSpec {
            inner: Arc::new(Inner {
                p,
                e,
                q,
                modulus,
                neg_mod,
                tag: h.finish(),
                explicit_modulus: explicit,
                order_primes: prime_factors(q - 1),
                generator: OnceLock::new(),
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn e(&self) -> usize {
        self.inner.e
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients, low degree first (`e + 1` entries).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// `"p^e/modulus"`, e.g. `"3^4/x^4+2x^3+2"`.
    pub fn describe(&self) -> String {
        format!("{}^{}/{}", self.p(), self.e(), format_dense(&self.inner.modulus))
    }

    /// Parses `"p^e"`, `"p^e/modulus"` or `"p"`.
    pub fn from_description(s: &str) -> Result<Self> {
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => (h.trim(), Some(m.trim())),
            None => (s.trim(), None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (head, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad characteristic {p:?}")))?;
        let e: usize = e
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad extension degree {e:?}")))?;
        let modulus = match modulus {
            Some(m) => Some(parse_dense(m, p, e)?),
            None => None,
        };
        Self::new(p, e, modulus)
    }

    fn tag(&self) -> u64 {
        self.inner.tag
    }

    fn blank(&self) -> FieldElement {
        FieldElement {
            tag: self.tag(),
            degree: self.e() as u8,
            coords: [0; MAX_DEGREE],
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.blank()
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut x = self.blank();
        x.coords[0] = n.rem_euclid(self.p() as i64) as u16;
        x
    }

    /// Image of an unsigned integer (reduced mod p).
    pub fn from_u128(&self, n: u128) -> FieldElement {
        let mut x = self.blank();
        x.coords[0] = (n % self.p() as u128) as u16;
        x
    }

    /// Element with the given coordinates; missing trailing coordinates are zero.
    pub fn element(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.e() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.e()
            )));
        }
        let mut x = self.blank();
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.p() {
                return Err(Error::InvalidElement(format!("coordinate {c} not below p")));
            }
            x.coords[i] = c as u16;
        }
        Ok(x)
    }

    /// Parses `"(c0,c1,...)"` or a plain integer.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let t = s.trim();
        if t.starts_with('(') {
            self.element(&parse::parse_tuple(t)?)
        } else {
            let n: i64 = t
                .parse()
                .map_err(|_| Error::syntax(0, format!("bad element {t:?}")))?;
            Ok(self.from_int(n))
        }
    }

    /// Class of `Y` (for `e = 1` this is the root of the linear modulus).
    pub fn class_of_y(&self) -> FieldElement {
        if self.e() == 1 {
            self.from_int(-(self.inner.modulus[0] as i64))
        } else {
            let mut x = self.blank();
            x.coords[1] = 1;
            x
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.tag == self.tag()
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Position of `x` in enumeration order.
    pub fn index(&self, x: &FieldElement) -> usize {
        let p = self.p() as usize;
        x.coords().iter().fold(0usize, |acc, &c| acc * p + c as usize)
    }

    /// Inverse of [`FieldSpec::index`].
    pub fn element_at(&self, mut idx: usize) -> FieldElement {
        let p = self.p() as usize;
        let mut x = self.blank();
        for i in (0..self.e()).rev() {
            x.coords[i] = (idx % p) as u16;
            idx /= p;
        }
        x
    }

    /// All `q` elements: zero first, then in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q() as usize).map(move |i| self.element_at(i))
    }

    pub(crate) fn add_raw(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.p() as u16;
        let mut out = x;
        for i in 0..self.e() {
            let s = x.coords[i] + y.coords[i];
            out.coords[i] = if s >= p { s - p } else { s };
        }
        out
    }

    pub(crate) fn neg_raw(&self, x: FieldElement) -> FieldElement {
        let p = self.p() as u16;
        let mut out = x;
        for i in 0..self.e() {
            out.coords[i] = if x.coords[i] == 0 { 0 } else { p - x.coords[i] };
        }
        out
    }

    pub(crate) fn sub_raw(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add_raw(x, self.neg_raw(y))
    }

    pub(crate) fn mul_raw(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.p();
        let e = self.e();
        let mut out = self.blank();
        if e == 1 {
            out.coords[0] = ((x.coords[0] as u64 * y.coords[0] as u64) % p) as u16;
            return out;
        }
        let mut t = [0u64; 2 * MAX_DEGREE];
        for i in 0..e {
            let xi = x.coords[i] as u64;
            if xi == 0 {
                continue;
            }
            for j in 0..e {
                t[i + j] += xi * y.coords[j] as u64;
            }
        }
        let neg = &self.inner.neg_mod;
        for k in (e..2 * e - 1).rev() {
            let c = t[k] % p;
            if c == 0 {
                continue;
            }
            for j in 0..e {
                t[k - e + j] += c * neg[j];
            }
        }
        for i in 0..e {
            out.coords[i] = (t[i] % p) as u16;
        }
        out
    }

    /// `x^n` with `0^0 = 1`.
    pub(crate) fn pow_raw(&self, x: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return self.one();
        }
        if x.is_zero() {
            return x;
        }
        let mut n = n % (self.q() - 1);
        if n == 0 {
            return self.one();
        }
        let mut base = x;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            n >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, x: FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            None
        } else {
            Some(self.pow_raw(x, self.q() - 2))
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(self.add_raw(x, y))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(self.sub_raw(x, y))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        Ok(self.neg_raw(x))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(self.mul_raw(x, y))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(&x)?;
        self.inv_raw(x).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, x: FieldElement, n: u64) -> Result<FieldElement> {
        self.check(&x)?;
        Ok(self.pow_raw(x, n))
    }

    fn order_raw(&self, x: FieldElement) -> u64 {
        let mut ord = self.q() - 1;
        for &r in &self.inner.order_primes {
            while ord % r == 0 && self.pow_raw(x, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> Result<u64> {
        self.check(&x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.order_raw(x))
    }

    /// A generator of `F_q^*`.
    ///
    /// When the modulus was supplied explicitly and the class of `Y` is
    /// primitive, that class is returned; otherwise the smallest element in
    /// enumeration order whose order is `q - 1`.
    pub fn find_generator(&self) -> FieldElement {
        *self.inner.generator.get_or_init(|| {
            let target = self.q() - 1;
            if self.inner.explicit_modulus && self.e() > 1 {
                let y = self.class_of_y();
                if self.order_raw(y) == target {
                    return y;
                }
            }
            self.elements()
                .skip(1)
                .find(|&x| self.order_raw(x) == target)
                .expect("F_q^* is cyclic")
        })
    }

    /// `g^n` for the field generator.
    pub fn gen_pow(&self, n: u64) -> FieldElement {
        self.pow_raw(self.find_generator(), n)
    }

    /// Whether `x = y^k` for some nonzero `y`.
    pub fn is_kth_power(&self, x: FieldElement, k: u64) -> Result<bool> {
        self.check(&x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.q() - 1;
        let g = num_integer::gcd(k, n);
        Ok(self.pow_raw(x, n / g) == self.one())
    }

    /// Discrete logarithm to the base [`FieldSpec::find_generator`], by
    /// baby-step giant-step.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        self.check(&x)?;
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = self.find_generator();
        let n = self.q() - 1;
        let m = (n as f64).sqrt().ceil() as u64;
        let mut baby = vec![u32::MAX; self.q() as usize];
        let mut cur = self.one();
        for j in 0..m {
            let slot = &mut baby[self.index(&cur)];
            if *slot == u32::MAX {
                *slot = j as u32;
            }
            cur = self.mul_raw(cur, g);
        }
        let giant = self
            .inv_raw(self.pow_raw(g, m))
            .expect("generator is nonzero");
        let mut gamma = x;
        for i in 0..=m {
            let j = baby[self.index(&gamma)];
            if j != u32::MAX {
                return Ok((i * m + j as u64) % n);
            }
            gamma = self.mul_raw(gamma, giant);
        }
        unreachable!("every nonzero element is a power of the generator")
    }
}

// Dense polynomials over F_p, low degree first, used for modulus handling.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - dm;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut t = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            t[i + j] = (t[i + j] + x * y) % p;
        }
    }
    poly_rem(&t, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility over `F_p` via `gcd(Y^{p^i} - Y, f) = 1` for `i <= deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let deg = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if deg == 1 {
        return true;
    }
    let mut h = vec![0, 1];
    for _ in 0..deg / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, &f, p);
            }
            base = poly_mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if poly_gcd(&f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let count = p.pow(e as u32);
    (0..count)
        .map(|idx| {
            let mut m = vec![0u64; e + 1];
            let mut r = idx;
            for i in (0..e).rev() {
                m[i] = r % p;
                r /= p;
            }
            m[e] = 1;
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Compact rendering such as `x^4+2x^3+2`.
pub fn format_dense(m: &[u64]) -> String {
    let mut out = String::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (i, c) {
            (0, c) => out.push_str(&c.to_string()),
            (1, 1) => out.push('x'),
            (1, c) => out.push_str(&format!("{c}x")),
            (i, 1) => out.push_str(&format!("x^{i}")),
            (i, c) => out.push_str(&format!("{c}x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_dense(s: &str, p: u64, e: usize) -> Result<Vec<u64>> {
    let mut m = vec![0u64; e + 1];
    for t in parse::parse_terms(s)? {
        if t.a_pow != 0 || t.y_pow != 0 || t.g_pow != 0 || !t.tuples.is_empty() {
            return Err(Error::syntax(0, "modulus must be a polynomial in x over F_p"));
        }
        let deg = t.x_pow as usize;
        if deg > e {
            return Err(Error::InvalidModulus(format!("degree {deg} exceeds {e}")));
        }
        let c = (t.int % p as u128) as u64;
        let c = if t.negative { (p - c) % p } else { c };
        m[deg] = (m[deg] + c) % p;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f81() -> FieldSpec {
        FieldSpec::new(3, 4, Some(vec![2, 0, 0, 2, 1])).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let f = f81();
        assert_eq!(f.q(), 81);
        assert_eq!(f.describe(), "3^4/x^4+2x^3+2");
        let f = FieldSpec::new(5, 2, Some(vec![2, 4, 1])).unwrap();
        assert_eq!(f.q(), 25);
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        // x^2 + 1 over F_3 has no linear factor: x^2+1 at 0,1,2 is 1,2,2.
        let roots = (0..3u64).filter(|x| (x * x + 1) % 3 == 0).count();
        assert_eq!(roots, 0);
        assert!(FieldSpec::new(3, 2, Some(vec![1, 0, 1])).is_ok());
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(FieldSpec::new(9, 1, None).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldSpec::new(2, 3, None).unwrap_err(), Error::EvenCharacteristic);
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(matches!(
            FieldSpec::new(3, 2, Some(vec![2, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(vec![1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn default_modulus_is_lexicographically_smallest() {
        assert_eq!(FieldSpec::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        // x^3+1 and x^3+x^2+1 have roots 2 and 1; x^3+2x^2+1 has none.
        let m = FieldSpec::new(3, 3, None).unwrap().modulus().to_vec();
        assert_eq!(m, vec![1, 0, 2, 1]);
        // x^2+1 splits mod 5 (2^2 = -1); x^2+x+1 has discriminant -3, a non-square.
        assert_eq!(FieldSpec::new(5, 2, None).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f.add(f.from_int(2), f.from_int(2)).unwrap(), f.from_int(1));
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(f5.zero()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f5.pow(f5.zero(), 0).unwrap(), f5.one());
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let a = FieldSpec::new(3, 2, None).unwrap();
        let b = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(a.add(a.one(), b.one()).unwrap_err(), Error::FieldMismatch);
        assert_eq!(b.mul(a.one(), b.one()).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn primitive_modulus_generator() {
        let f = f81();
        let g = f.find_generator();
        assert_eq!(g, f.class_of_y());
        assert_eq!(f.pow(g, 80).unwrap(), f.one());
        assert_ne!(f.pow(g, 40).unwrap(), f.one());
        let f = FieldSpec::with_primitive_modulus(5, 2, vec![2, 4, 1]).unwrap();
        assert_eq!(f.find_generator(), f.class_of_y());
        // x^2 + 1 over F_3: Y has order 4.
        assert!(matches!(
            FieldSpec::with_primitive_modulus(3, 2, vec![1, 0, 1]),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn generators_of_prime_fields() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f3.find_generator(), f3.from_int(2));
        // orders mod 5: ord(2) = 4, ord(3) = 4, ord(4) = 2
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.find_generator(), f5.from_int(2));
    }

    #[test]
    fn kth_powers() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert!(f5.is_kth_power(f5.from_int(4), 2).unwrap());
        assert!(!f5.is_kth_power(f5.from_int(2), 4).unwrap());
        assert_eq!(f5.is_kth_power(f5.zero(), 2).unwrap_err(), Error::ZeroInput);
        let f = f81();
        assert!(f.is_kth_power(f.gen_pow(42), 2).unwrap());
        assert!(!f.is_kth_power(f.gen_pow(43), 2).unwrap());
    }

    #[test]
    fn dlog_examples() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.dlog(f5.one()).unwrap(), 0);
        assert_eq!(f5.dlog(f5.from_int(3)).unwrap(), 3);
        let f = f81();
        assert_eq!(f.dlog(f.gen_pow(17)).unwrap(), 17);
        assert_eq!(f.dlog(f.zero()).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn enumeration_order_and_coverage() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let v: Vec<_> = f3.elements().collect();
        assert_eq!(v, vec![f3.from_int(0), f3.from_int(1), f3.from_int(2)]);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let set: std::collections::HashSet<_> = f9.elements().collect();
        assert_eq!(set.len(), 9);
        let f = f81();
        let all: std::collections::BTreeSet<_> = f.elements().collect();
        let mut powers: std::collections::BTreeSet<_> = (0..80).map(|i| f.gen_pow(i)).collect();
        powers.insert(f.zero());
        assert_eq!(all, powers);
        assert_eq!(f.elements().next().unwrap(), f.zero());
    }

    #[test]
    fn description_round_trip() {
        let f = FieldSpec::from_description("3^4/x^4+2x^3+2").unwrap();
        assert_eq!(f, f81());
        let f = FieldSpec::from_description("5^1").unwrap();
        assert_eq!(f.describe(), "5^1/x");
        assert_eq!(FieldSpec::from_description(&f.describe()).unwrap(), f);
        let f = FieldSpec::from_description("3^2/x^2 + 1").unwrap();
        assert_eq!(f.parse_element("(1,2)").unwrap().to_string(), "(1,2)");
    }

    #[test]
    fn irreducibility_matches_root_search_for_quadratics_and_cubics() {
        for p in [3u64, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let cubic = [c0, c1, c2, 1];
                        let has_root = (0..p).any(|x| {
                            (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0
                        });
                        assert_eq!(is_irreducible(&cubic, p), !has_root, "{cubic:?} mod {p}");
                    }
                    let quad = [c0, c1, 1];
                    let has_root = (0..p).any(|x| (c0 + c1 * x + x * x) % p == 0);
                    assert_eq!(is_irreducible(&quad, p), !has_root);
                }
            }
        }
    }
}
