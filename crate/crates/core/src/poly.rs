//! Sparse polynomials over a [`FieldSpec`]: univariate, bivariate, and
//! univariate families with a free parameter `a`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::parse::{self, RawTerm};

/// Univariate polynomial stored as exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: FieldSpec,
    terms: BTreeMap<u64, FieldElement>,
}

fn accumulate<K: Ord>(
    field: &FieldSpec,
    map: &mut BTreeMap<K, FieldElement>,
    key: K,
    c: FieldElement,
) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = field.add_raw(*o.get(), c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn raw_coefficient(field: &FieldSpec, t: &RawTerm) -> Result<FieldElement> {
    let mut c = field.from_u128(t.int);
    for tuple in &t.tuples {
        let v = field.element(tuple)?;
        c = field.mul_raw(c, v);
    }
    if t.g_pow > 0 {
        c = field.mul_raw(c, field.gen_pow(t.g_pow));
    }
    if t.negative {
        c = field.neg_raw(c);
    }
    Ok(c)
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &FieldElement, bare_one: bool) -> fmt::Result {
    if c.is_prime_field() {
        let v = c.coords()[0];
        if v == 1 && bare_one {
            return Ok(());
        }
        write!(f, "{v}")
    } else {
        write!(f, "{c}")
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, exp: u64, first: &mut bool) -> fmt::Result {
    if exp == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if exp == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{exp}")
    }
}

/// Writes `c*a^i*x^j*y^k`, omitting unit factors.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &FieldElement,
    vars: &[(&str, u64)],
) -> fmt::Result {
    let is_const = vars.iter().all(|&(_, e)| e == 0);
    write_coeff(f, c, !is_const)?;
    let unit = c.is_prime_field() && c.coords()[0] == 1;
    let mut first = unit || is_const;
    if is_const {
        return Ok(());
    }
    for &(name, e) in vars {
        write_var(f, name, e, &mut first)?;
    }
    Ok(())
}

impl SparsePoly {
    pub fn zero(field: &FieldSpec) -> Self {
        SparsePoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c * X^exp`.
    pub fn monomial(field: &FieldSpec, c: FieldElement, exp: u64) -> Result<Self> {
        Self::from_terms(field, [(exp, c)])
    }

    /// Sums colliding exponents and drops zero coefficients.
    pub fn from_terms(
        field: &FieldSpec,
        terms: impl IntoIterator<Item = (u64, FieldElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(field, &mut map, e, c);
        }
        Ok(SparsePoly {
            field: field.clone(),
            terms: map,
        })
    }

    /// Integer coefficients reduced into the prime field.
    pub fn from_int_terms(field: &FieldSpec, terms: &[(u64, i64)]) -> Self {
        Self::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_int(c))))
            .expect("prime-field coefficients belong to the field")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, exp: u64) -> FieldElement {
        self.terms.get(&exp).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub(crate) fn eval_raw(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (&e, &c)| {
            f.add_raw(acc, f.mul_raw(c, f.pow_raw(x, e)))
        })
    }

    /// `sum c_k x^k` with `0^0 = 1`.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if !self.field.contains(&x) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval_raw(x))
    }

    /// Values at every field element, in enumeration order.
    pub fn value_table(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let q = f.q() as usize;
        let mut out = vec![f.zero(); q];
        for (&e, &c) in &self.terms {
            for (idx, slot) in out.iter_mut().enumerate() {
                let x = f.element_at(idx);
                *slot = f.add_raw(*slot, f.mul_raw(c, f.pow_raw(x, e)));
            }
        }
        out
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            accumulate(&self.field, &mut terms, e, c);
        }
        Ok(SparsePoly {
            field: self.field.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e, self.field.neg_raw(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let mut terms = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                accumulate(f, &mut terms, e1 + e2, f.mul_raw(c1, c2));
            }
        }
        Ok(SparsePoly {
            field: f.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Result<Self> {
        if !self.field.contains(&c) {
            return Err(Error::FieldMismatch);
        }
        Self::from_terms(
            &self.field,
            self.terms.iter().map(|(&e, &t)| (e, self.field.mul_raw(t, c))),
        )
    }

    /// `f(X) -> f(X^d)`.
    pub fn compose_monomial(&self, d: u64) -> Self {
        SparsePoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, &c)| (e * d, c)).collect(),
        }
    }

    /// The unique representative of degree `< q` inducing the same function.
    ///
    /// Nonzero exponents land in `[1, q-1]`, never on `0`: `X^{q-1}` is not the
    /// constant function `1` because it vanishes at `0`.
    pub fn reduce_mod_field(&self) -> Self {
        let m = self.field.q() - 1;
        let mut terms = BTreeMap::new();
        for (&e, &c) in &self.terms {
            let r = if e == 0 { 0 } else { (e - 1) % m + 1 };
            accumulate(&self.field, &mut terms, r, c);
        }
        SparsePoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// `f(X+Y) - f(X) - f(Y)`, expanded with binomial coefficients mod p.
    pub fn delta_bivariate(&self) -> BivariatePoly {
        let f = &self.field;
        let p = f.p();
        let mut terms = BTreeMap::new();
        for (&n, &c) in &self.terms {
            if n == 0 {
                // c - c - c
                accumulate(f, &mut terms, (0, 0), f.neg_raw(c));
                continue;
            }
            for (j, b) in pascal_row_mod(n, p).into_iter().enumerate() {
                let j = j as u64;
                if b == 0 || j == 0 || j == n {
                    continue;
                }
                accumulate(f, &mut terms, (j, n - j), f.mul_raw(c, f.from_int(b as i64)));
            }
        }
        BivariatePoly {
            field: f.clone(),
            terms,
        }
    }

    /// Parses the polynomial grammar; `a` must be supplied when mentioned.
    pub fn parse(s: &str, field: &FieldSpec, a: Option<FieldElement>) -> Result<Self> {
        let family = ParametricPoly::parse(s, field)?;
        match a {
            Some(a) => family.instantiate(a),
            None if family.mentions_parameter() => Err(Error::UnboundParameter),
            None => family.instantiate(field.zero()),
        }
    }
}

/// Row `n` of Pascal's triangle reduced mod `p`.
pub fn pascal_row_mod(n: u64, p: u64) -> Vec<u64> {
    let n = n as usize;
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=i).rev() {
            row[j] = (row[j] + row[j - 1]) % p;
        }
    }
    row
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, c, &[("x", e)])?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.field)
    }
}

/// Polynomial in `X` whose coefficients are monomials in a parameter `a`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParametricPoly {
    field: FieldSpec,
    /// (x exponent, a exponent) -> coefficient
    terms: BTreeMap<(u64, u64), FieldElement>,
}

impl ParametricPoly {
    pub fn from_terms(
        field: &FieldSpec,
        terms: impl IntoIterator<Item = (u64, u64, FieldElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (x_pow, a_pow, c) in terms {
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(field, &mut map, (x_pow, a_pow), c);
        }
        Ok(ParametricPoly {
            field: field.clone(),
            terms: map,
        })
    }

    pub fn parse(s: &str, field: &FieldSpec) -> Result<Self> {
        let mut terms = Vec::new();
        for t in parse::parse_terms(s)? {
            if t.y_pow != 0 {
                return Err(Error::syntax(0, "unexpected variable y in a univariate polynomial"));
            }
            terms.push((t.x_pow, t.a_pow, raw_coefficient(field, &t)?));
        }
        Self::from_terms(field, terms)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// (x exponent, a exponent, coefficient), increasing.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, FieldElement)> + '_ {
        self.terms.iter().map(|(&(x, a), &c)| (x, a, c))
    }

    pub fn mentions_parameter(&self) -> bool {
        self.terms.keys().any(|&(_, a)| a > 0)
    }

    pub fn x_exponents(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.terms.keys().map(|&(x, _)| x).collect();
        v.dedup();
        v
    }

    pub fn instantiate(&self, a: FieldElement) -> Result<SparsePoly> {
        if !self.field.contains(&a) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        SparsePoly::from_terms(
            f,
            self.terms
                .iter()
                .map(|(&(x, ap), &c)| (x, f.mul_raw(c, f.pow_raw(a, ap)))),
        )
    }

    /// `f(X) -> f(X^d)`.
    pub fn compose_monomial(&self, d: u64) -> Self {
        ParametricPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(x, a), &c)| ((x * d, a), c))
                .collect(),
        }
    }
}

impl fmt::Display for ParametricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(x, a), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, c, &[("a", a), ("x", x)])?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParametricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParametricPoly[{}]({self})", self.field)
    }
}

/// Bivariate polynomial stored as `(i, j) -> coefficient of X^i Y^j`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    field: FieldSpec,
    terms: BTreeMap<(u64, u64), FieldElement>,
}

impl BivariatePoly {
    pub fn from_terms(
        field: &FieldSpec,
        terms: impl IntoIterator<Item = ((u64, u64), FieldElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            accumulate(field, &mut map, k, c);
        }
        Ok(BivariatePoly {
            field: field.clone(),
            terms: map,
        })
    }

    /// Parses the polynomial grammar in `x` and `y`.
    pub fn parse(s: &str, field: &FieldSpec, a: Option<FieldElement>) -> Result<Self> {
        let mut terms = Vec::new();
        for t in parse::parse_terms(s)? {
            let mut c = raw_coefficient(field, &t)?;
            if t.a_pow > 0 {
                let a = a.ok_or(Error::UnboundParameter)?;
                if !field.contains(&a) {
                    return Err(Error::FieldMismatch);
                }
                c = field.mul_raw(c, field.pow_raw(a, t.a_pow));
            }
            terms.push(((t.x_pow, t.y_pow), c));
        }
        Self::from_terms(field, terms)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), FieldElement)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, i: u64, j: u64) -> FieldElement {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub(crate) fn eval_raw(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (&(i, j), &c)| {
            let t = f.mul_raw(c, f.mul_raw(f.pow_raw(x, i), f.pow_raw(y, j)));
            f.add_raw(acc, t)
        })
    }

    pub fn eval(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        if !self.field.contains(&x) || !self.field.contains(&y) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval_raw(x, y))
    }

    /// `X^i Y^j` with the given coefficient multiplied in.
    pub fn mul_monomial(&self, i: u64, j: u64, c: FieldElement) -> Result<Self> {
        Self::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|(&(a, b), &t)| ((a + i, b + j), self.field.mul_raw(t, c))),
        )
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(xe, ye), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, c, &[("x", xe), ("y", ye)])?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePoly[{}]({self})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::new(3, 1, None).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = f3();
        let x2 = SparsePoly::from_int_terms(&f, &[(2, 1)]);
        assert_eq!(x2.eval(f.from_int(2)).unwrap(), f.from_int(1));
        let g = SparsePoly::from_int_terms(&f, &[(4, 1), (2, 1)]);
        assert_eq!(g.eval(f.from_int(1)).unwrap(), f.from_int(2));
        assert_eq!(SparsePoly::zero(&f).eval(f.from_int(2)).unwrap(), f.zero());
        // constant term survives evaluation at zero
        let c = SparsePoly::from_int_terms(&f, &[(0, 2), (1, 1)]);
        assert_eq!(c.eval(f.zero()).unwrap(), f.from_int(2));
        let other = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(c.eval(other.one()).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn ring_operations() {
        let f = f3();
        let a = SparsePoly::from_int_terms(&f, &[(1, 1), (0, 1)]);
        let b = SparsePoly::from_int_terms(&f, &[(1, 1), (0, -1)]);
        assert_eq!(a.mul(&b).unwrap().to_string(), "x^2 + 2");
        assert!(a.sub(&a).unwrap().is_zero());
        let g = FieldSpec::new(5, 1, None).unwrap();
        let c = SparsePoly::from_int_terms(&g, &[(1, 1)]);
        assert_eq!(a.add(&c).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn compose_monomial_multiplies_exponents() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        let a = f.from_int(3);
        let p = SparsePoly::parse("x^3 - a*x", &f, Some(a)).unwrap();
        let q = p.compose_monomial(2);
        let expected = SparsePoly::parse("x^6 - a*x^2", &f, Some(a)).unwrap();
        assert_eq!(q, expected);
        assert_eq!(p.compose_monomial(1), p);
    }

    #[test]
    fn reduce_mod_field_examples() {
        let f = f3();
        for a in 1..3i64 {
            let p = SparsePoly::from_int_terms(&f, &[(4, 1), (2, a)]);
            let r = p.reduce_mod_field();
            let expected = SparsePoly::from_int_terms(&f, &[(2, 1 + a)]);
            assert_eq!(r, expected);
        }
        let p = SparsePoly::from_int_terms(&f, &[(4, 1), (2, 2)]);
        assert!(p.reduce_mod_field().is_zero());
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let x9 = SparsePoly::from_int_terms(&f9, &[(9, 1)]);
        assert_eq!(x9.reduce_mod_field(), SparsePoly::from_int_terms(&f9, &[(1, 1)]));
        // X^{q-1} stays X^{q-1}
        let x8 = SparsePoly::from_int_terms(&f9, &[(8, 1), (0, 1)]);
        assert_eq!(x8.reduce_mod_field(), x8);
    }

    #[test]
    fn delta_examples() {
        let f = FieldSpec::new(5, 1, None).unwrap();
        let d = SparsePoly::from_int_terms(&f, &[(2, 1)]).delta_bivariate();
        assert_eq!(d, BivariatePoly::from_terms(&f, [((1, 1), f.from_int(2))]).unwrap());

        let f3 = f3();
        for a in 1..3i64 {
            let d = SparsePoly::from_int_terms(&f3, &[(4, 1), (2, a)]).delta_bivariate();
            let h = BivariatePoly::from_terms(
                &f3,
                [((2, 0), f3.one()), ((0, 2), f3.one()), ((0, 0), f3.from_int(-a))],
            )
            .unwrap();
            assert_eq!(d, h.mul_monomial(1, 1, f3.one()).unwrap());
        }

        let f27 = FieldSpec::new(3, 3, None).unwrap();
        assert!(SparsePoly::from_int_terms(&f27, &[(3, 1)]).delta_bivariate().is_zero());
    }

    #[test]
    fn parse_and_format() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let p = SparsePoly::parse("x^10 + 2*a*x^6 + a^2*x^2", &f5, Some(f5.one())).unwrap();
        assert_eq!(p, SparsePoly::from_int_terms(&f5, &[(10, 1), (6, 2), (2, 1)]));
        assert!(SparsePoly::parse("0", &f5, None).unwrap().is_zero());
        assert_eq!(SparsePoly::parse("x^2", &f5, None).unwrap().to_string(), "x^2");
        assert_eq!(
            SparsePoly::parse("a*x", &f5, None).unwrap_err(),
            Error::UnboundParameter
        );
        assert!(matches!(SparsePoly::parse("x^2 +", &f5, None), Err(Error::Syntax { .. })));
        assert!(matches!(SparsePoly::parse("x*y", &f5, None), Err(Error::Syntax { .. })));

        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let p = SparsePoly::parse("(1,2)*x^3 + 2*x + (0,1)", &f9, None).unwrap();
        assert_eq!(p.to_string(), "(1,2)*x^3 + 2*x + (0,1)");
        assert_eq!(SparsePoly::parse(&p.to_string(), &f9, None).unwrap(), p);
    }

    #[test]
    fn parametric_format_round_trip() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let fam = ParametricPoly::parse("x^10+2*a*x^6+a^2*x^2", &f5).unwrap();
        assert_eq!(fam.to_string(), "x^10 + 2*a*x^6 + a^2*x^2");
        assert_eq!(ParametricPoly::parse(&fam.to_string(), &f5).unwrap(), fam);
    }

    #[test]
    fn bivariate_parse_and_eval() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let h = BivariatePoly::parse("x^2+y^2-(1)", &f9, None).unwrap();
        assert_eq!(h.total_degree(), Some(2));
        assert_eq!(h.eval(f9.one(), f9.zero()).unwrap(), f9.zero());
        assert_eq!(h.to_string(), "x^2 + y^2 + 2");
        assert_eq!(
            BivariatePoly::parse("x^8+y^8-a^2", &f9, None).unwrap_err(),
            Error::UnboundParameter
        );
    }
}
