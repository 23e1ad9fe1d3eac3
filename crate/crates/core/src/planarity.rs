//! Planarity of polynomials over `F_q`, `q` odd.
//!
//! `f` is planar when `f(X + eps) - f(X) - f(eps)` permutes `F_q` for every
//! `eps != 0`. The definition costs `O(q^2)` evaluations. For DO polynomials
//! planarity is equivalent to `f` being 2-to-1, which costs `O(q)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::is_p_power_sum;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::logtab::{LogTables, ZERO};
use crate::poly::{ParametricPoly, SparsePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DeltaPermutation,
    TwoToOne,
}

/// Multiplicity -> number of field values hit exactly that many times.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PreimageHistogram {
    pub counts: BTreeMap<usize, usize>,
}

impl PreimageHistogram {
    /// Exactly one value with a single preimage, all others with 0 or 2.
    pub fn is_two_to_one(&self) -> bool {
        self.counts.get(&1) == Some(&1) && self.counts.keys().all(|&k| k <= 2)
    }
}

/// Evidence that a polynomial is not planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `Delta_f(x1, eps) = Delta_f(x2, eps)` with `x1 != x2`.
    Collision {
        epsilon: FieldElement,
        x1: FieldElement,
        x2: FieldElement,
    },
    /// `f(z) = 0` with `z != 0`.
    NonzeroRoot { z: FieldElement },
    Histogram(PreimageHistogram),
}

impl Witness {
    /// Re-checks the witness against `f` with plain field arithmetic.
    pub fn verify(&self, f: &SparsePoly) -> bool {
        match self {
            Witness::Collision { epsilon, x1, x2 } => {
                x1 != x2
                    && !epsilon.is_zero()
                    && delta_at(f, *x1, *epsilon) == delta_at(f, *x2, *epsilon)
            }
            Witness::NonzeroRoot { z } => !z.is_zero() && f.eval_raw(*z).is_zero(),
            Witness::Histogram(h) => {
                !h.is_two_to_one() && is_two_to_one(f).map(|(_, g)| &g == h).unwrap_or(false)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::Collision { epsilon, x1, x2 } => json!({
                "kind": "collision",
                "epsilon": epsilon.to_string(),
                "x1": x1.to_string(),
                "x2": x2.to_string(),
            }),
            Witness::NonzeroRoot { z } => json!({"kind": "nonzero-root", "z": z.to_string()}),
            Witness::Histogram(h) => json!({"kind": "histogram", "counts": h.counts}),
        }
    }
}

fn delta_at(f: &SparsePoly, x: FieldElement, eps: FieldElement) -> FieldElement {
    let field = f.field();
    let s = f.eval_raw(field.add_raw(x, eps));
    field.sub_raw(field.sub_raw(s, f.eval_raw(x)), f.eval_raw(eps))
}

#[derive(Debug, Clone)]
pub struct PlanarityReport {
    pub planar: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    pub field: FieldSpec,
    pub polynomial: SparsePoly,
}

impl PlanarityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "planar": self.planar,
            "method": self.method,
            "witness": self.witness.as_ref().map(Witness::to_json),
            "field": self.field.describe(),
            "poly": self.polynomial.to_string(),
        })
    }
}

fn require_odd(field: &FieldSpec) -> Result<()> {
    if field.p() == 2 {
        Err(Error::EvenCharacteristic)
    } else {
        Ok(())
    }
}

/// True iff `f` permutes `F_q`.
pub fn is_permutation(f: &SparsePoly) -> Result<bool> {
    let t = LogTables::new(f.field())?;
    let vals = t.value_table(f);
    let mut seen = vec![false; vals.len()];
    for v in vals {
        let s = t.slot(v);
        if seen[s] {
            return Ok(false);
        }
        seen[s] = true;
    }
    Ok(true)
}

/// Checks the definition directly: every `Delta_f(., eps)`, `eps != 0`, is a
/// permutation. Stops at the first collision.
pub fn is_planar_definition(f: &SparsePoly) -> Result<PlanarityReport> {
    let field = f.field();
    require_odd(field)?;
    let t = LogTables::new(field)?;
    let vals = t.value_table(f);
    let q = vals.len();
    let collision = (0..t.order()).into_par_iter().find_map_first(|eps| {
        let f_eps = vals[t.slot(eps)];
        let mut seen = vec![u32::MAX; q];
        for x in t.all_logs() {
            let d = t.sub(t.sub(vals[t.slot(t.add(x, eps))], vals[t.slot(x)]), f_eps);
            let s = t.slot(d);
            if seen[s] != u32::MAX {
                return Some((eps, seen[s], x));
            }
            seen[s] = x;
        }
        None
    });
    let witness = collision.map(|(eps, x1, x2)| Witness::Collision {
        epsilon: t.element(eps),
        x1: t.element(x1),
        x2: t.element(x2),
    });
    Ok(PlanarityReport {
        planar: witness.is_none(),
        method: Method::DeltaPermutation,
        witness,
        field: field.clone(),
        polynomial: f.clone(),
    })
}

fn histogram_of(t: &LogTables, vals: &[u32], scratch: &mut Vec<u32>) -> PreimageHistogram {
    scratch.clear();
    scratch.resize(vals.len(), 0);
    for &v in vals {
        scratch[t.slot(v)] += 1;
    }
    let mut counts = BTreeMap::new();
    for &c in scratch.iter() {
        *counts.entry(c as usize).or_insert(0) += 1;
    }
    PreimageHistogram { counts }
}

/// Preimage histogram of `f` and whether it is 2-to-1.
pub fn is_two_to_one(f: &SparsePoly) -> Result<(bool, PreimageHistogram)> {
    let t = LogTables::new(f.field())?;
    let vals = t.value_table(f);
    let h = histogram_of(&t, &vals, &mut Vec::new());
    Ok((h.is_two_to_one(), h))
}

/// Rejects any exponent that is not `p^i + p^j`.
pub fn check_do_shape(exponents: impl IntoIterator<Item = u64>, p: u64) -> Result<()> {
    for e in exponents {
        if e == 0 || is_p_power_sum(e, p).is_none() {
            return Err(Error::NotDoShaped(e));
        }
    }
    Ok(())
}

fn two_to_one_verdict(t: &LogTables, vals: &[u32], scratch: &mut Vec<u32>) -> Option<Witness> {
    if let Some(k) = (0..t.order()).find(|&k| vals[k as usize] == ZERO) {
        return Some(Witness::NonzeroRoot { z: t.element(k) });
    }
    let h = histogram_of(t, vals, scratch);
    (!h.is_two_to_one()).then_some(Witness::Histogram(h))
}

/// Planarity of a DO polynomial through the 2-to-1 criterion, with the
/// nonzero-root shortcut tried first.
pub fn is_planar_do(f: &SparsePoly) -> Result<PlanarityReport> {
    let field = f.field();
    require_odd(field)?;
    check_do_shape(f.exponents(), field.p())?;
    let t = LogTables::new(field)?;
    let vals = t.value_table(f);
    let witness = two_to_one_verdict(&t, &vals, &mut Vec::new());
    Ok(PlanarityReport {
        planar: witness.is_none(),
        method: Method::TwoToOne,
        witness,
        field: field.clone(),
        polynomial: f.clone(),
    })
}

/// Chooses the 2-to-1 path for DO-shaped input, the definition otherwise.
pub fn is_planar(f: &SparsePoly) -> Result<PlanarityReport> {
    match check_do_shape(f.exponents(), f.field().p()) {
        Ok(()) => is_planar_do(f),
        Err(_) => is_planar_definition(f),
    }
}

/// Number of roots of `Delta_f(., eps)` in `F_q`.
pub fn delta_root_count(f: &SparsePoly, eps: FieldElement) -> Result<usize> {
    let t = LogTables::new(f.field())?;
    let vals = t.value_table(f);
    let le = t.log_of(&eps);
    let fe = vals[t.slot(le)];
    Ok(t.all_logs()
        .filter(|&x| {
            let d = t.sub(t.sub(vals[t.slot(t.add(x, le))], vals[t.slot(x)]), fe);
            d == ZERO
        })
        .count())
}

/// Whether `Delta_f(., eps)` permutes `F_q`.
pub fn delta_is_permutation(f: &SparsePoly, eps: FieldElement) -> Result<bool> {
    let field = f.field();
    let mut shifted = Vec::new();
    for x in field.elements() {
        shifted.push(delta_at(f, x, eps));
    }
    shifted.sort();
    shifted.dedup();
    Ok(shifted.len() as u64 == field.q())
}

/// First `(x, y)` with `x, y != 0` and `f(x + y) - f(x) - f(y) = 0`, scanning
/// `x` then `y` in enumeration order.
pub fn delta_root_search(f: &SparsePoly) -> Result<Option<(FieldElement, FieldElement)>> {
    let field = f.field();
    let t = LogTables::new(field)?;
    let vals = t.value_table(f);
    let nonzero: Vec<u32> = field
        .elements()
        .filter(|x| !x.is_zero())
        .map(|x| t.log_of(&x))
        .collect();
    let found = nonzero.par_iter().find_map_first(|&x| {
        let fx = vals[t.slot(x)];
        nonzero.iter().find_map(|&y| {
            let d = t.sub(t.sub(vals[t.slot(t.add(x, y))], fx), vals[t.slot(y)]);
            (d == ZERO).then_some((t.element(x), t.element(y)))
        })
    });
    Ok(found)
}

/// Planar set of a one-parameter family, as discrete logs and residues.
#[derive(Debug, Clone)]
pub struct PlanarSet {
    pub field: FieldSpec,
    pub family: ParametricPoly,
    pub method: Method,
    /// Parameter values tested (all of `F_q^*` for a full sweep).
    pub tested: usize,
    pub elements: Vec<FieldElement>,
    /// `log_g(a)` of each planar `a`, increasing.
    pub dlogs: Vec<u64>,
    pub residue_pattern: Option<ResiduePattern>,
}

/// The planar set is exactly `{g^k : k mod modulus in residues}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResiduePattern {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl PlanarSet {
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.describe(),
            "poly": self.family.to_string(),
            "method": self.method,
            "tested": self.tested,
            "planar_count": self.elements.len(),
            "planar_set": self.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "planar_dlogs": self.dlogs,
            "generator": self.field.find_generator().to_string(),
            "residue_pattern": self.residue_pattern,
        })
    }
}

/// Detects a residue-class description of `dlogs` modulo 1, 2 or 4.
pub fn residue_pattern(dlogs: &[u64], order: u64) -> Option<ResiduePattern> {
    if dlogs.is_empty() {
        return None;
    }
    for modulus in [1u64, 2, 4] {
        if order % modulus != 0 {
            continue;
        }
        let mut residues: Vec<u64> = dlogs.iter().map(|k| k % modulus).collect();
        residues.sort_unstable();
        residues.dedup();
        let expected = (order / modulus) as usize * residues.len();
        if expected == dlogs.len() {
            return Some(ResiduePattern { modulus, residues });
        }
    }
    None
}

/// Log-encoded family: `(x exponent, a exponent, log coefficient)`.
struct EncodedFamily {
    terms: Vec<(u64, u64, u32)>,
    /// Per-term table of `x^(x exponent)` over all log slots.
    powers: Vec<Vec<u32>>,
}

impl EncodedFamily {
    fn new(t: &LogTables, family: &ParametricPoly) -> Self {
        let terms: Vec<(u64, u64, u32)> = family
            .terms()
            .map(|(x, a, c)| (x, a, t.log_of(&c)))
            .collect();
        let powers = terms
            .iter()
            .map(|&(x, _, _)| t.all_logs().map(|l| t.pow(l, x)).collect())
            .collect();
        EncodedFamily { terms, powers }
    }

    fn values(&self, t: &LogTables, a: u32, out: &mut Vec<u32>) {
        let coeffs: Vec<u32> = self
            .terms
            .iter()
            .map(|&(_, ap, c)| t.mul(c, t.pow(a, ap)))
            .collect();
        out.clear();
        out.resize(t.order() as usize + 1, ZERO);
        for (c, pw) in coeffs.iter().zip(&self.powers) {
            if *c == ZERO {
                continue;
            }
            for (slot, &xp) in out.iter_mut().zip(pw) {
                *slot = t.add(*slot, t.mul(*c, xp));
            }
        }
    }
}

/// Planarity of the family at each of the given parameter values.
pub fn planar_flags(family: &ParametricPoly, params: &[FieldElement]) -> Result<(Method, Vec<bool>)> {
    let field = family.field();
    require_odd(field)?;
    let t = LogTables::new(field)?;
    if check_do_shape(family.x_exponents(), field.p()).is_err() {
        let flags = params
            .iter()
            .map(|&a| Ok(is_planar_definition(&family.instantiate(a)?)?.planar))
            .collect::<Result<Vec<bool>>>()?;
        return Ok((Method::DeltaPermutation, flags));
    }
    let enc = EncodedFamily::new(&t, family);
    let flags = params
        .par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(vals, scratch), a| {
                enc.values(&t, t.log_of(a), vals);
                two_to_one_verdict(&t, vals, scratch).is_none()
            },
        )
        .collect();
    Ok((Method::TwoToOne, flags))
}

/// All `a in F_q^*` for which the family member is planar.
pub fn planar_set_sweep(family: &ParametricPoly) -> Result<PlanarSet> {
    let field = family.field();
    let t = LogTables::new(field)?;
    let params: Vec<FieldElement> = (0..t.order()).map(|k| t.element(k)).collect();
    let (method, flags) = planar_flags(family, &params)?;
    let dlogs: Vec<u64> = flags
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(k, _)| k as u64)
        .collect();
    let elements = dlogs.iter().map(|&k| t.element(k as u32)).collect();
    Ok(PlanarSet {
        field: field.clone(),
        family: family.clone(),
        method,
        tested: params.len(),
        residue_pattern: residue_pattern(&dlogs, t.order() as u64),
        elements,
        dlogs,
    })
}

/// One cell of the monomial-law sweep for `X^(p^alpha + 1)` over `F_{p^e}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialLawRow {
    pub p: u64,
    pub alpha: u32,
    pub e: u32,
    pub planar: bool,
    /// `e / gcd(alpha, e)` is odd.
    pub e_form: bool,
    /// `alpha / gcd(alpha, e)` is odd.
    pub alpha_form: bool,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Measures planarity of `X^(p^alpha + 1)` and evaluates both candidate
/// parity criteria.
pub fn monomial_law_sweep(ps: &[u64], alpha_max: u32, e_max: u32) -> Result<Vec<MonomialLawRow>> {
    let mut rows = Vec::new();
    for &p in ps {
        for e in 1..=e_max {
            let field = FieldSpec::new(p, e as usize, None)?;
            for alpha in 0..=alpha_max {
                let f = SparsePoly::from_int_terms(&field, &[(p.pow(alpha) + 1, 1)]);
                let planar = is_planar_do(&f)?.planar;
                let g = gcd(alpha, e);
                rows.push(MonomialLawRow {
                    p,
                    alpha,
                    e,
                    planar,
                    e_form: (e / g) % 2 == 1,
                    alpha_form: (alpha / g) % 2 == 1,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, e: usize) -> FieldSpec {
        FieldSpec::new(p, e, None).unwrap()
    }

    fn f81() -> FieldSpec {
        FieldSpec::with_primitive_modulus(3, 4, vec![2, 0, 0, 2, 1]).unwrap()
    }

    #[test]
    fn permutation_examples() {
        let f5 = field(5, 1);
        assert!(is_permutation(&SparsePoly::from_int_terms(&f5, &[(1, 1)])).unwrap());
        let f3 = field(3, 1);
        assert!(!is_permutation(&SparsePoly::from_int_terms(&f3, &[(2, 1)])).unwrap());
        // X^3 + 2aX with a non-square permutes; with a square it does not
        for e in 1..=3 {
            let f = field(3, e);
            for a in f.elements().filter(|a| !a.is_zero()) {
                let poly = SparsePoly::parse("x^3 + 2*a*x", &f, Some(a)).unwrap();
                let square = f.is_kth_power(a, 2).unwrap();
                assert_eq!(is_permutation(&poly).unwrap(), !square, "e={e} a={a}");
            }
        }
    }

    #[test]
    fn definition_examples() {
        for e in 1..=4 {
            let f = field(3, e);
            let x2 = SparsePoly::from_int_terms(&f, &[(2, 1)]);
            assert!(is_planar_definition(&x2).unwrap().planar);
        }
        let f9 = field(3, 2);
        let r = is_planar_definition(&SparsePoly::from_int_terms(&f9, &[(4, 1)])).unwrap();
        assert!(!r.planar);
        assert!(r.witness.unwrap().verify(&r.polynomial));
        let f3 = field(3, 1);
        for a in [1i64, 2] {
            let poly = SparsePoly::parse(&format!("x^10 + {}*x^2", a * a), &f3, None).unwrap();
            assert!(is_planar_definition(&poly).unwrap().planar);
        }
    }

    #[test]
    fn two_to_one_examples() {
        let f5 = field(5, 1);
        let (ok, h) = is_two_to_one(&SparsePoly::from_int_terms(&f5, &[(2, 1)])).unwrap();
        assert!(ok);
        assert_eq!(h.counts, BTreeMap::from([(0, 2), (1, 1), (2, 2)]));
        let (ok, _) = is_two_to_one(&SparsePoly::from_int_terms(&f5, &[(1, 1)])).unwrap();
        assert!(!ok);
        // X^2 (X^4 + a)^2 with -a a fourth power has a nonzero root
        let f25 = FieldSpec::with_primitive_modulus(5, 2, vec![2, 4, 1]).unwrap();
        let a = f25.neg(f25.gen_pow(4)).unwrap();
        let poly = SparsePoly::parse("x^10 + 2*a*x^6 + a^2*x^2", &f25, Some(a)).unwrap();
        let (ok, h) = is_two_to_one(&poly).unwrap();
        assert!(!ok);
        assert!(h.counts.get(&1).is_none_or(|_| h.counts.keys().any(|&k| k >= 3)));
        let r = is_planar_do(&poly).unwrap();
        assert!(matches!(r.witness, Some(Witness::NonzeroRoot { .. })));
        assert!(r.witness.unwrap().verify(&poly));
    }

    #[test]
    fn do_path_examples() {
        let f = f81();
        let fam = ParametricPoly::parse("x^10 + a^2*x^2", &f).unwrap();
        let g2 = f.gen_pow(2);
        assert!(is_planar_do(&fam.instantiate(g2).unwrap()).unwrap().planar);
        let g1 = f.gen_pow(1);
        assert!(!is_planar_do(&fam.instantiate(g1).unwrap()).unwrap().planar);
        // with the coefficient a itself the roles swap
        let lin = ParametricPoly::parse("x^10 + a*x^2", &f).unwrap();
        assert!(is_planar_do(&lin.instantiate(g1).unwrap()).unwrap().planar);
        assert!(!is_planar_do(&lin.instantiate(g2).unwrap()).unwrap().planar);
        let f25 = FieldSpec::with_primitive_modulus(5, 2, vec![2, 4, 1]).unwrap();
        let poly = SparsePoly::parse("x^6 + 4*a*x^2", &f25, Some(f25.gen_pow(3))).unwrap();
        assert!(is_planar_do(&poly).unwrap().planar);
        let bad = SparsePoly::from_int_terms(&f25, &[(3, 1)]);
        assert_eq!(is_planar_do(&bad).unwrap_err(), Error::NotDoShaped(3));
    }

    #[test]
    fn sweep_examples() {
        let f = f81();
        let s = planar_set_sweep(&ParametricPoly::parse("x^10 + a^2*x^2", &f).unwrap()).unwrap();
        assert_eq!(s.dlogs, (0..20).map(|n| 4 * n + 2).collect::<Vec<u64>>());
        assert_eq!(
            s.residue_pattern,
            Some(ResiduePattern { modulus: 4, residues: vec![2] })
        );
        // independent check in a scripting language gave {k : k mod 8 in {1, 3, 4}}
        let s = planar_set_sweep(&ParametricPoly::parse("x^10 + a*x^2", &f).unwrap()).unwrap();
        assert_eq!(s.elements.len(), 30);
        assert!(s.dlogs.iter().all(|k| [1, 3, 4].contains(&(k % 8))));
        assert_eq!(s.residue_pattern, None);
        let f9 = field(3, 2);
        let fam = ParametricPoly::parse("x^12 + 2*a*x^10 + a^3*x^6 + 2*a^4*x^4", &f9).unwrap();
        let s = planar_set_sweep(&fam).unwrap();
        assert_eq!(s.elements.len(), 4);
        for a in &s.elements {
            assert!(!f9.is_kth_power(*a, 2).unwrap());
        }
        let f5 = field(5, 1);
        let fam = ParametricPoly::parse("x^10 + 2*a*x^6 + a^2*x^2", &f5).unwrap();
        let s = planar_set_sweep(&fam).unwrap();
        let expected: Vec<FieldElement> = [1i64, 2, 3].iter().map(|&v| f5.from_int(v)).collect();
        let mut got = s.elements.clone();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn root_search_examples() {
        let f9 = field(3, 2);
        for a in f9.elements().filter(|a| !a.is_zero()) {
            let poly = SparsePoly::parse("x^4 + a*x^2", &f9, Some(a)).unwrap();
            let sum_of_squares = f9.elements().filter(|x| !x.is_zero()).any(|x| {
                f9.elements().filter(|y| !y.is_zero()).any(|y| {
                    let s = f9.add(f9.mul(x, x).unwrap(), f9.mul(y, y).unwrap()).unwrap();
                    s == a
                })
            });
            let root = delta_root_search(&poly).unwrap();
            assert_eq!(root.is_some(), sum_of_squares, "a={a}");
            if let Some((x, y)) = root {
                assert!(delta_at(&poly, x, y).is_zero());
            }
        }
        let x2 = SparsePoly::from_int_terms(&f9, &[(2, 1)]);
        assert_eq!(delta_root_search(&x2).unwrap(), None);
    }

    #[test]
    fn residue_detection() {
        assert_eq!(
            residue_pattern(&[0, 2, 4, 6], 8),
            Some(ResiduePattern { modulus: 2, residues: vec![0] })
        );
        assert_eq!(residue_pattern(&[1, 2], 8), None);
        assert_eq!(residue_pattern(&[], 8), None);
    }
}
