//! Discrete-log representation of `F_q` for whole-field sweeps.
//!
//! Nonzero elements are stored as `log_g(x)` for the field's generator `g`,
//! zero as [`ZERO`]. Products are sums of logs and sums use Zech's logarithm
//! `Z(k) = log_g(1 + g^k)`, so both are single table lookups.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{BivariatePoly, SparsePoly};

/// Largest field order accepted for table construction.
pub const MAX_TABLE_ORDER: u64 = 1 << 22;

/// Log value of the zero element.
pub const ZERO: u32 = u32::MAX;

pub struct LogTables {
    field: FieldSpec,
    n: u32,
    /// `exp[k] = g^k` for `0 <= k < q - 1`.
    exp: Vec<FieldElement>,
    /// `log[index(x)]`, [`ZERO`] at the zero element.
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl LogTables {
    pub fn new(field: &FieldSpec) -> Result<Self> {
        let q = field.q();
        if q > MAX_TABLE_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "q = {q} exceeds the table limit {MAX_TABLE_ORDER}"
            )));
        }
        let n = (q - 1) as u32;
        let g = field.find_generator();
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![ZERO; q as usize];
        let mut x = field.one();
        for k in 0..n {
            exp.push(x);
            log[field.index(&x)] = k;
            x = field.mul_raw(x, g);
        }
        let one = field.one();
        let zech = exp
            .iter()
            .map(|&y| log[field.index(&field.add_raw(one, y))])
            .collect();
        Ok(LogTables {
            field: field.clone(),
            n,
            exp,
            log,
            zech,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `q - 1`.
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn log_of(&self, x: &FieldElement) -> u32 {
        self.log[self.field.index(x)]
    }

    pub fn element(&self, l: u32) -> FieldElement {
        if l == ZERO {
            self.field.zero()
        } else {
            self.exp[l as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a as u64 + b as u64;
        (s % self.n as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.n - a };
        let z = self.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            self.mul(a, self.n / 2)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `a^k` with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == ZERO {
            return if k == 0 { 0 } else { ZERO };
        }
        ((a as u64 * (k % self.n as u64)) % self.n as u64) as u32
    }

    /// Log-encoded terms `(exponent, log coefficient)`.
    pub fn encode(&self, f: &SparsePoly) -> Vec<(u64, u32)> {
        f.terms().map(|(e, c)| (e, self.log_of(&c))).collect()
    }

    #[inline]
    pub fn eval_encoded(&self, terms: &[(u64, u32)], x: u32) -> u32 {
        terms
            .iter()
            .fold(ZERO, |acc, &(e, c)| self.add(acc, self.mul(c, self.pow(x, e))))
    }

    /// Values of `f` at every log value: slot `k < q - 1` holds `f(g^k)`,
    /// the last slot holds `f(0)`.
    pub fn value_table(&self, f: &SparsePoly) -> Vec<u32> {
        let terms = self.encode(f);
        self.all_logs()
            .map(|x| self.eval_encoded(&terms, x))
            .collect()
    }

    /// `0, 1, ..., q - 2` followed by [`ZERO`].
    pub fn all_logs(&self) -> impl Iterator<Item = u32> {
        (0..self.n).chain(std::iter::once(ZERO))
    }

    /// Position of a log value inside [`LogTables::value_table`].
    #[inline]
    pub fn slot(&self, l: u32) -> usize {
        if l == ZERO {
            self.n as usize
        } else {
            l as usize
        }
    }

    /// Log-encoded bivariate terms `((i, j), log coefficient)`.
    pub fn encode_bivariate(&self, h: &BivariatePoly) -> Vec<((u64, u64), u32)> {
        h.terms().map(|(ij, c)| (ij, self.log_of(&c))).collect()
    }

    #[inline]
    pub fn eval_bivariate_encoded(&self, terms: &[((u64, u64), u32)], x: u32, y: u32) -> u32 {
        terms.iter().fold(ZERO, |acc, &((i, j), c)| {
            let t = self.mul(c, self.mul(self.pow(x, i), self.pow(y, j)));
            self.add(acc, t)
        })
    }
}
