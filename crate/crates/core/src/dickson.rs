//! Dickson polynomials of the `(m+1)`-th kind, `D_{k,m}(X, a)`, with exact
//! integer coefficients and `a` kept as a formal parameter.
//!
//! Every such polynomial is `sum_i c_i a^i X^{k-2i}`; a term is stored as the
//! index `i` (the power of `a`), the integer `c_i` and the exponent. The
//! constant-free composition `D_{k,m}(X^d, a) - D_{k,m}(0, a)` is built by
//! [`frak_d`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicTerm {
    /// Summation index `i`, also the power of `a`.
    pub a_power: u64,
    pub coeff: BigInt,
    pub exponent: u64,
}

/// A Dickson polynomial (or its constant-free composition) over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicDicksonPoly {
    pub k: u64,
    pub m: u64,
    /// Composition exponent; `1` for a plain Dickson polynomial.
    pub d: u64,
    /// Nonzero terms in increasing `i`, i.e. decreasing exponent.
    pub terms: Vec<SymbolicTerm>,
}

/// A term surviving reduction mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReducedTerm {
    pub exponent: u64,
    pub a_power: u64,
    /// Residue in `[1, p)`.
    pub coeff: u64,
}

/// Coefficient vectors of `f_0, ..., f_k` for `f_j = X f_{j-1} - a f_{j-2}`;
/// entry `i` of `f_j` multiplies `a^i X^{j-2i}`.
fn three_term(k: u64, f0: i64, f1: i64) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(f0)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(f1)];
    for j in 2..=k {
        let len = (j / 2 + 1) as usize;
        let mut next = vec![BigInt::zero(); len];
        for (i, c) in cur.iter().enumerate() {
            next[i] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// First-kind coefficients `D_k(X, a)` (`D_0 = 2`, `D_1 = X`).
pub fn first_kind(k: u64) -> Vec<BigInt> {
    three_term(k, 2, 1)
}

/// Second-kind coefficients `E_k(X, a)` (`E_0 = 1`, `E_1 = X`).
pub fn second_kind(k: u64) -> Vec<BigInt> {
    three_term(k, 1, 1)
}

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for j in 0..r {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Coefficient `c_i = (k - m i)/(k - i) * C(k - i, i) * (-1)^i` evaluated
/// directly; `k = 0` gives the constant `2 - m`.
pub fn closed_form_coefficient(k: u64, m: u64, i: u64) -> BigInt {
    if k == 0 {
        return BigInt::from(2) - BigInt::from(m);
    }
    let num = (BigInt::from(k) - BigInt::from(m) * BigInt::from(i)) * binomial(k - i, i);
    let (q, r) = num.div_rem(&BigInt::from(k - i));
    assert!(r.is_zero(), "D_{{{k},{m}}} coefficient {i} is not integral");
    if i % 2 == 1 {
        -q
    } else {
        q
    }
}

/// `D_{k,m}(X, a)` built from the three-term recurrence for both classical
/// kinds and combined as `m E_k - (m-1) D_k`.
pub fn dickson_symbolic(k: u64, m: u64) -> SymbolicDicksonPoly {
    let d = first_kind(k);
    let e = second_kind(k);
    let mb = BigInt::from(m);
    let m1 = BigInt::from(m) - 1;
    let terms = d
        .iter()
        .zip(&e)
        .enumerate()
        .map(|(i, (dk, ek))| SymbolicTerm {
            a_power: i as u64,
            coeff: &mb * ek - &m1 * dk,
            exponent: k - 2 * i as u64,
        })
        .filter(|t| !t.coeff.is_zero())
        .collect();
    SymbolicDicksonPoly { k, m, d: 1, terms }
}

/// `D_{k,m}(X^d, a) - D_{k,m}(0, a)`: the sum truncated at `i <= (k-1)/2`.
pub fn frak_d(k: u64, m: u64, d: u64) -> Result<SymbolicDicksonPoly> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if d == 0 {
        return Err(Error::InvalidElement("composition exponent d must be at least 1".into()));
    }
    let base = dickson_symbolic(k, m);
    let top = (k - 1) / 2;
    let terms = base
        .terms
        .into_iter()
        .filter(|t| t.a_power <= top)
        .map(|t| SymbolicTerm {
            exponent: t.exponent * d,
            ..t
        })
        .collect();
    Ok(SymbolicDicksonPoly { k, m, d, terms })
}

impl SymbolicDicksonPoly {
    /// Terms whose integer coefficient survives reduction mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Vec<ReducedTerm> {
        let pb = BigInt::from(p);
        self.terms
            .iter()
            .filter_map(|t| {
                let r = t.coeff.mod_floor(&pb).to_u64().expect("residue fits");
                (r != 0).then_some(ReducedTerm {
                    exponent: t.exponent,
                    a_power: t.a_power,
                    coeff: r,
                })
            })
            .collect()
    }

    /// Concrete polynomial over `field` at parameter value `a`.
    pub fn instantiate(&self, field: &FieldSpec, a: FieldElement) -> Result<SparsePoly> {
        if !field.contains(&a) {
            return Err(Error::FieldMismatch);
        }
        let terms = self.reduce_mod(field.p()).into_iter().map(|t| {
            let c = field.from_int(t.coeff as i64);
            (t.exponent, field.mul_raw(c, field.pow_raw(a, t.a_power)))
        });
        SparsePoly::from_terms(field, terms)
    }

    /// Integer coefficient attached to `a^i`, zero when absent.
    pub fn coeff_of(&self, i: u64) -> BigInt {
        self.terms
            .iter()
            .find(|t| t.a_power == i)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.iter().any(|t| t.exponent == 0)
    }
}

impl fmt::Display for SymbolicDicksonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (t.a_power == 0 && t.exponent == 0) {
                parts.push(mag.to_string());
            }
            match t.a_power {
                0 => {}
                1 => parts.push("a".into()),
                i => parts.push(format!("a^{i}")),
            }
            match t.exponent {
                0 => {}
                1 => parts.push("x".into()),
                e => parts.push(format!("x^{e}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Parameter bundle parsed from strings like `"k=5,m=2,d=2,p=3,a=g^7"`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DicksonSpec {
    pub k: u64,
    pub m: u64,
    pub d: u64,
    pub p: Option<u64>,
    /// Either `g^n` or a coordinate tuple / integer, resolved against a field.
    pub a: Option<String>,
}

impl DicksonSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut spec = DicksonSpec {
            d: 1,
            ..Default::default()
        };
        let mut seen_k = false;
        // split on commas outside parentheses
        let mut depth = 0i32;
        let mut fields = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    fields.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        fields.push(&s[start..]);
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::syntax(0, format!("expected key=value, got {field:?}")))?;
            let value = value.trim();
            let num = || {
                value
                    .parse::<u64>()
                    .map_err(|_| Error::syntax(0, format!("bad integer {value:?}")))
            };
            match key.trim() {
                "k" => {
                    spec.k = num()?;
                    seen_k = true;
                }
                "m" => spec.m = num()?,
                "d" => spec.d = num()?,
                "p" => spec.p = Some(num()?),
                "a" => spec.a = Some(value.to_string()),
                other => return Err(Error::syntax(0, format!("unknown key {other:?}"))),
            }
        }
        if !seen_k {
            return Err(Error::syntax(0, "missing k"));
        }
        Ok(spec)
    }
}

/// Resolves a parameter value written as `g^n`, `(c0,c1,..)` or an integer.
pub fn parse_parameter(field: &FieldSpec, s: &str) -> Result<FieldElement> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("g^").or_else(|| t.strip_prefix("G^")) {
        let n: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad generator power {rest:?}")))?;
        return Ok(field.gen_pow(n));
    }
    if t == "g" || t == "G" {
        return Ok(field.find_generator());
    }
    field.parse_element(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &SymbolicDicksonPoly) -> Vec<(u64, i64, u64)> {
        p.terms
            .iter()
            .map(|t| (t.a_power, t.coeff.to_i64().unwrap(), t.exponent))
            .collect()
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(coeffs(&dickson_symbolic(3, 2)), vec![(0, 1, 3), (1, -1, 1)]);
        assert_eq!(
            coeffs(&dickson_symbolic(5, 2)),
            vec![(0, 1, 5), (1, -3, 3), (2, 1, 1)]
        );
        assert_eq!(coeffs(&dickson_symbolic(0, 7)), vec![(0, -5, 0)]);
        let d84 = dickson_symbolic(8, 4);
        assert_eq!(d84.coeff_of(0), BigInt::from(1));
        assert_eq!(d84.coeff_of(1), BigInt::from(-4));
        assert_eq!(d84.coeff_of(2), BigInt::zero());
        assert_eq!(d84.coeff_of(3), BigInt::from(8));
        assert!(d84.has_constant_term());
        assert_eq!(dickson_symbolic(5, 2).to_string(), "x^5 - 3*a*x^3 + a^2*x");
        assert_eq!(dickson_symbolic(0, 3).to_string(), "-1");
    }

    #[test]
    fn frak_d_examples() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let a = f.one();
        let inst = frak_d(9, 2, 1).unwrap().instantiate(&f, a).unwrap();
        assert_eq!(
            inst,
            SparsePoly::from_int_terms(&f, &[(9, 1), (7, 2), (3, 2), (1, 1)])
        );
        assert_eq!(coeffs(&frak_d(2, 5, 3).unwrap()), vec![(0, 1, 6)]);
        assert_eq!(
            coeffs(&frak_d(10, 4, 1).unwrap()),
            vec![(0, 1, 10), (1, -6, 8), (2, 7, 6), (3, 10, 4), (4, -15, 2)]
        );
        assert_eq!(frak_d(0, 2, 1).unwrap_err(), Error::InvalidK);
    }

    #[test]
    fn instantiate_examples() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let one = f3.one();
        let p = frak_d(5, 2, 2).unwrap().instantiate(&f3, one).unwrap();
        assert_eq!(p, SparsePoly::from_int_terms(&f3, &[(10, 1), (2, 1)]));
        let p = frak_d(4, 2, 1).unwrap().instantiate(&f3, one).unwrap();
        assert_eq!(p, SparsePoly::from_int_terms(&f3, &[(4, 1), (2, 1)]));
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        for (k, m) in [(5u64, 2u64), (6, 3), (9, 11)] {
            let p = dickson_symbolic(k, m).instantiate(&f7, f7.zero()).unwrap();
            assert_eq!(p, SparsePoly::from_int_terms(&f7, &[(k, 1)]));
        }
    }

    #[test]
    fn spec_string_parsing() {
        let s = DicksonSpec::parse("k=5,m=2,d=2,p=3,a=g^7").unwrap();
        assert_eq!((s.k, s.m, s.d, s.p), (5, 2, 2, Some(3)));
        assert_eq!(s.a.as_deref(), Some("g^7"));
        let s = DicksonSpec::parse("k=3, a=(1,2), m=4").unwrap();
        assert_eq!(s.a.as_deref(), Some("(1,2)"));
        assert_eq!(s.d, 1);
        assert!(DicksonSpec::parse("m=2").is_err());
        assert!(DicksonSpec::parse("k=2,z=1").is_err());
        let f = FieldSpec::new(3, 4, Some(vec![2, 0, 0, 2, 1])).unwrap();
        assert_eq!(parse_parameter(&f, "g^7").unwrap(), f.gen_pow(7));
        assert_eq!(parse_parameter(&f, "(0,1)").unwrap(), f.class_of_y());
    }
}
