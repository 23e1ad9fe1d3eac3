//! Dembowski-Ostrom (DO) classification of `D_{k,m}(X^d, a) - D_{k,m}(0, a)`.
//!
//! [`is_do`] decides the question directly from the reduced integer
//! coefficients. [`theorem_predicate`] encodes the known parameter families
//! and [`classify_sweep`] compares the two over a grid.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dickson::{frak_d, ReducedTerm};
use crate::error::{Error, Result};
use crate::field::is_prime;

/// Exponent `e` with `p^i + p^j = e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub exponent: u64,
    pub i: u32,
    pub j: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoVerdict {
    pub is_do: bool,
    pub decompositions: Vec<Decomposition>,
    /// Smallest surviving exponent without a decomposition.
    pub offending_term: Option<u64>,
    /// `(exponent, coefficient mod p)`, highest exponent first.
    pub surviving_terms: Vec<(u64, u64)>,
}

/// `(n, alpha)` with `p^n (p^alpha + 1) = c d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormWitness {
    pub n: u32,
    pub alpha: u32,
    pub c: u64,
}

/// Returns `Some(t)` when `n = p^t`.
pub fn log_p(n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut t = 0;
    let mut r = n;
    while r % p == 0 {
        r /= p;
        t += 1;
    }
    (r == 1).then_some(t)
}

/// Smallest-`i` witness `(i, j)`, `i <= j`, with `p^i + p^j = n`.
pub fn is_p_power_sum(n: u64, p: u64) -> Option<(u32, u32)> {
    let mut pi: u64 = 1;
    let mut i = 0u32;
    while pi.checked_mul(2).is_some_and(|v| v <= n) {
        if let Some(j) = log_p(n - pi, p) {
            if j >= i {
                return Some((i, j));
            }
        }
        pi = match pi.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        i += 1;
    }
    None
}

/// Searches `p^n <= c d` and `p^alpha <= c d` for `p^n (p^alpha + 1) = c d`.
pub fn form_witness(d: u64, p: u64, c: u64) -> Option<FormWitness> {
    let target = c.checked_mul(d)?;
    let mut pn: u64 = 1;
    let mut n = 0u32;
    while pn <= target {
        if target % pn == 0 {
            let rest = target / pn;
            if let Some(alpha) = rest.checked_sub(1).and_then(|r| log_p(r, p)) {
                return Some(FormWitness { n, alpha, c });
            }
        }
        pn = match pn.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        n += 1;
    }
    None
}

/// `d = base * p^n` for some `n >= 0`.
fn is_scaled_power(d: u64, p: u64, base: u64) -> bool {
    d % base == 0 && log_p(d / base, p).is_some()
}

fn check_p(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Surviving terms of the constant-free polynomial at `d = 1`.
fn shape(k: u64, m: u64, p: u64) -> Vec<ReducedTerm> {
    frak_d(k, m % p, 1)
        .expect("k >= 1")
        .reduce_mod(p)
}

fn verdict_from_shape(shape: &[ReducedTerm], d: u64, p: u64) -> DoVerdict {
    let mut decompositions = Vec::new();
    let mut offending: Option<u64> = None;
    let mut surviving = Vec::with_capacity(shape.len());
    for t in shape {
        let exponent = t.exponent * d;
        surviving.push((exponent, t.coeff));
        match is_p_power_sum(exponent, p) {
            Some((i, j)) => decompositions.push(Decomposition { exponent, i, j }),
            None => offending = Some(offending.map_or(exponent, |o| o.min(exponent))),
        }
    }
    DoVerdict {
        is_do: offending.is_none(),
        decompositions,
        offending_term: offending,
        surviving_terms: surviving,
    }
}

/// DO test for `D_{k,m}(X^d, a) - D_{k,m}(0, a)` over characteristic `p`.
///
/// The answer is independent of the extension degree and of `a != 0`.
pub fn is_do(k: u64, m: u64, d: u64, p: u64) -> Result<DoVerdict> {
    check_p(p)?;
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if d == 0 {
        return Err(Error::InvalidElement("d must be at least 1".into()));
    }
    Ok(verdict_from_shape(&shape(k, m, p), d, p))
}

// ---------------------------------------------------------------------------
// Parameter families

/// Admissible `k` values of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KPattern {
    Fixed { k: u64 },
    /// `k = base * p^l`, `l >= 0`.
    TimesPower { base: u64 },
    /// Any `k` producing a DO monomial.
    Any,
}

impl KPattern {
    /// Returns `l` when `k` matches (`0` for fixed patterns).
    pub fn matches(&self, k: u64, p: u64) -> Option<u32> {
        match *self {
            KPattern::Fixed { k: f } => (f == k).then_some(0),
            KPattern::TimesPower { base } => {
                if k % base == 0 {
                    log_p(k / base, p)
                } else {
                    None
                }
            }
            KPattern::Any => Some(0),
        }
    }

    fn value(&self, p: u64, ell: u32) -> Option<u64> {
        match *self {
            KPattern::Fixed { k } => Some(k),
            KPattern::TimesPower { base } => base.checked_mul(p.checked_pow(ell)?),
            KPattern::Any => None,
        }
    }
}

/// Admissible `d` values of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DPattern {
    /// `divisor * d = p^n (p^alpha + 1)`.
    PowerSum { divisor: u64 },
    /// `d = base * p^n`.
    Scaled { base: u64 },
}

impl DPattern {
    pub fn matches(&self, d: u64, p: u64) -> bool {
        match *self {
            DPattern::PowerSum { divisor } => form_witness(d, p, divisor).is_some(),
            DPattern::Scaled { base } => is_scaled_power(d, p, base),
        }
    }

    fn value(&self, p: u64, n: u32, alpha: u32) -> Option<u64> {
        let pn = p.checked_pow(n)?;
        match *self {
            DPattern::PowerSum { divisor } => {
                let t = pn.checked_mul(p.checked_pow(alpha)? + 1)?;
                (t % divisor == 0).then_some(t / divisor)
            }
            DPattern::Scaled { base } => base.checked_mul(pn),
        }
    }

    fn uses_alpha(&self) -> bool {
        matches!(self, DPattern::PowerSum { .. })
    }
}

/// Exponent `factor * p^(n + shift [+ l]) [* (p^alpha + 1)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentPattern {
    pub factor: u64,
    pub shift: u32,
    pub with_alpha: bool,
}

/// One term `coeff * a^(a_power [* p^l]) * X^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyTerm {
    pub coeff: u64,
    pub a_power: u64,
    pub exponent: ExponentPattern,
}

/// A parameterised list of DO polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixFamily {
    pub p: u64,
    /// Residue of `m` mod `p`; `None` when the family is stated for all `m`.
    pub m_residue: Option<u64>,
    pub k_pattern: KPattern,
    pub d_pattern: DPattern,
    pub terms: Vec<FamilyTerm>,
    pub parameters: Vec<&'static str>,
}

const fn term(coeff: u64, a_power: u64, factor: u64, shift: u32) -> FamilyTerm {
    FamilyTerm {
        coeff,
        a_power,
        exponent: ExponentPattern {
            factor,
            shift,
            with_alpha: false,
        },
    }
}

const fn alpha_term(coeff: u64, a_power: u64, shift: u32) -> FamilyTerm {
    FamilyTerm {
        coeff,
        a_power,
        exponent: ExponentPattern {
            factor: 1,
            shift,
            with_alpha: true,
        },
    }
}

fn family(p: u64, m: u64, k: KPattern, d: DPattern, terms: Vec<FamilyTerm>) -> AppendixFamily {
    let mut parameters = vec!["n"];
    if matches!(k, KPattern::TimesPower { .. }) {
        parameters.push("l");
    }
    if d.uses_alpha() {
        parameters.push("alpha");
    }
    AppendixFamily {
        p,
        m_residue: Some(m),
        k_pattern: k,
        d_pattern: d,
        terms,
        parameters,
    }
}

fn monomial(p: u64, m: u64, k: KPattern, divisor: u64) -> AppendixFamily {
    family(
        p,
        m,
        k,
        DPattern::PowerSum { divisor },
        vec![alpha_term(1, 0, 0)],
    )
}

fn fixed(k: u64) -> KPattern {
    KPattern::Fixed { k }
}

fn times_power(base: u64) -> KPattern {
    KPattern::TimesPower { base }
}

fn scaled(base: u64) -> DPattern {
    DPattern::Scaled { base }
}

fn table_p3() -> Vec<AppendixFamily> {
    vec![
        // m = 0
        monomial(3, 0, times_power(1), 1),
        monomial(3, 0, times_power(2), 2),
        family(3, 0, times_power(4), scaled(1), vec![term(1, 0, 4, 0), term(2, 1, 2, 0)]),
        family(
            3,
            0,
            times_power(5),
            scaled(2),
            vec![term(1, 0, 10, 0), term(1, 1, 2, 1), term(2, 2, 2, 0)],
        ),
        // m = 1
        monomial(3, 1, fixed(1), 1),
        monomial(3, 1, fixed(2), 2),
        monomial(3, 1, fixed(4), 4),
        family(3, 1, fixed(3), DPattern::PowerSum { divisor: 1 }, vec![alpha_term(1, 0, 1), alpha_term(1, 1, 0)]),
        family(3, 1, fixed(5), scaled(2), vec![term(1, 0, 10, 0), term(2, 1, 2, 1)]),
        family(3, 1, fixed(6), scaled(1), vec![term(1, 0, 2, 1), term(1, 1, 4, 0)]),
        family(
            3,
            1,
            fixed(7),
            scaled(4),
            vec![term(1, 0, 28, 0), term(1, 2, 4, 1), term(2, 3, 4, 0)],
        ),
        family(
            3,
            1,
            fixed(9),
            scaled(4),
            vec![term(1, 0, 4, 2), term(1, 1, 28, 0), term(1, 3, 4, 1), term(2, 4, 4, 0)],
        ),
        family(
            3,
            1,
            fixed(10),
            scaled(1),
            vec![term(1, 0, 10, 0), term(1, 2, 2, 1), term(1, 3, 4, 0)],
        ),
        family(
            3,
            1,
            fixed(12),
            scaled(1),
            vec![term(1, 0, 4, 1), term(1, 1, 10, 0), term(1, 4, 4, 0)],
        ),
        // m = 2
        monomial(3, 2, fixed(1), 1),
        monomial(3, 2, fixed(2), 2),
        family(3, 2, fixed(3), DPattern::PowerSum { divisor: 1 }, vec![alpha_term(1, 0, 1), alpha_term(2, 1, 0)]),
        family(3, 2, fixed(4), scaled(1), vec![term(1, 0, 4, 0), term(1, 1, 2, 0)]),
        family(3, 2, fixed(5), scaled(2), vec![term(1, 0, 10, 0), term(1, 2, 2, 0)]),
        family(3, 2, fixed(6), scaled(1), vec![term(1, 0, 2, 1), term(2, 1, 4, 0)]),
        family(
            3,
            2,
            fixed(9),
            scaled(4),
            vec![term(1, 0, 4, 2), term(2, 1, 28, 0), term(2, 3, 4, 1), term(1, 4, 4, 0)],
        ),
        family(
            3,
            2,
            fixed(12),
            scaled(1),
            vec![term(1, 0, 4, 1), term(2, 1, 10, 0), term(1, 3, 2, 1), term(2, 4, 4, 0)],
        ),
    ]
}

fn table_p5() -> Vec<AppendixFamily> {
    vec![
        // m = 0
        monomial(5, 0, times_power(1), 1),
        monomial(5, 0, times_power(2), 2),
        family(5, 0, times_power(3), scaled(2), vec![term(1, 0, 6, 0), term(2, 1, 2, 0)]),
        // m = 1
        monomial(5, 1, fixed(1), 1),
        monomial(5, 1, fixed(2), 2),
        family(5, 1, fixed(3), scaled(2), vec![term(1, 0, 6, 0), term(3, 1, 2, 0)]),
        family(
            5,
            1,
            fixed(5),
            scaled(2),
            vec![term(1, 0, 2, 1), term(1, 1, 6, 0), term(3, 2, 2, 0)],
        ),
        // printed with k = 9 in the source table; only k = 6 yields these terms
        family(5, 1, fixed(6), scaled(1), vec![term(1, 0, 6, 0), term(1, 2, 2, 0)]),
        // m = 2
        monomial(5, 2, fixed(1), 1),
        monomial(5, 2, fixed(2), 2),
        family(5, 2, fixed(3), scaled(2), vec![term(1, 0, 6, 0), term(4, 1, 2, 0)]),
        family(
            5,
            2,
            fixed(5),
            scaled(2),
            vec![term(1, 0, 2, 1), term(2, 1, 6, 0), term(1, 2, 2, 0)],
        ),
        // m = 3
        monomial(5, 3, fixed(1), 1),
        monomial(5, 3, fixed(2), 2),
        monomial(5, 3, fixed(3), 3),
        family(
            5,
            3,
            fixed(5),
            scaled(2),
            vec![term(1, 0, 2, 1), term(3, 1, 6, 0), term(4, 2, 2, 0)],
        ),
        // m = 4
        monomial(5, 4, fixed(1), 1),
        monomial(5, 4, fixed(2), 2),
        monomial(5, 4, fixed(4), 4),
        family(5, 4, fixed(3), scaled(2), vec![term(1, 0, 6, 0), term(1, 1, 2, 0)]),
        family(
            5,
            4,
            fixed(5),
            scaled(2),
            vec![term(1, 0, 2, 1), term(4, 1, 6, 0), term(2, 2, 2, 0)],
        ),
    ]
}

/// The complete list of DO families for characteristic `p`.
///
/// For `p > 5` only the monomial `X^(p^n (p^alpha + 1))` occurs.
pub fn appendix_table(p: u64) -> Result<Vec<AppendixFamily>> {
    check_p(p)?;
    Ok(match p {
        3 => table_p3(),
        5 => table_p5(),
        _ => vec![AppendixFamily {
            p,
            m_residue: None,
            k_pattern: KPattern::Any,
            d_pattern: DPattern::PowerSum { divisor: 1 },
            terms: vec![alpha_term(1, 0, 0)],
            parameters: vec!["n", "alpha"],
        }],
    })
}

/// Families used for `m = 0, 1 (mod p)` when `p > 5`: the monomial cases of
/// the first and second kind.
fn large_p_low_residue(m_res: u64, p: u64) -> Vec<AppendixFamily> {
    match m_res {
        0 => vec![
            monomial(p, 0, times_power(1), 1),
            monomial(p, 0, times_power(2), 2),
        ],
        1 => vec![monomial(p, 1, fixed(1), 1), monomial(p, 1, fixed(2), 2)],
        _ => Vec::new(),
    }
}

impl AppendixFamily {
    pub fn contains(&self, k: u64, d: u64, p: u64) -> bool {
        self.k_pattern.matches(k, p).is_some() && self.d_pattern.matches(d, p)
    }

    /// Concrete `(k, d)` and expected reduced terms at the given parameters,
    /// or `None` when `d` is not integral or the family has no fixed `k`.
    pub fn instantiate(&self, n: u32, ell: u32, alpha: u32) -> Option<(u64, u64, Vec<ReducedTerm>)> {
        let p = self.p;
        let ell = if matches!(self.k_pattern, KPattern::TimesPower { .. }) {
            ell
        } else {
            0
        };
        let k = self.k_pattern.value(p, ell)?;
        let d = self.d_pattern.value(p, n, alpha)?;
        let pl = p.checked_pow(ell)?;
        let mut terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = t.exponent.factor.checked_mul(p.checked_pow(n + ell + t.exponent.shift)?)?;
                if t.exponent.with_alpha {
                    e = e.checked_mul(p.checked_pow(alpha)? + 1)?;
                }
                Some(ReducedTerm {
                    exponent: e,
                    a_power: t.a_power * pl,
                    coeff: t.coeff,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        terms.sort_by(|a, b| b.exponent.cmp(&a.exponent));
        Some((k, d, terms))
    }

    pub fn label(&self) -> String {
        let m = match self.m_residue {
            Some(m) => format!("m={m} mod {}", self.p),
            None => "any m".to_string(),
        };
        let k = match self.k_pattern {
            KPattern::Fixed { k } => format!("k={k}"),
            KPattern::TimesPower { base: 1 } => format!("k={}^l", self.p),
            KPattern::TimesPower { base } => format!("k={base}*{}^l", self.p),
            KPattern::Any => "k any".to_string(),
        };
        format!("p={} {m} {k}", self.p)
    }
}

impl fmt::Display for AppendixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        let ell = matches!(self.k_pattern, KPattern::TimesPower { .. });
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if t.coeff != 1 {
                write!(f, "{}*", t.coeff)?;
            }
            match (t.a_power, ell) {
                (0, _) => {}
                (1, false) => f.write_str("a*")?,
                (i, false) => write!(f, "a^{i}*")?,
                (1, true) => write!(f, "a^({p}^l)*")?,
                (i, true) => write!(f, "a^({i}*{p}^l)*")?,
            }
            let mut power = String::from("n");
            if t.exponent.shift > 0 {
                power.push_str(&format!("+{}", t.exponent.shift));
            }
            if ell {
                power.push_str("+l");
            }
            let base = if power == "n" {
                format!("{p}^n")
            } else {
                format!("{p}^({power})")
            };
            let mut exp = if t.exponent.factor == 1 {
                base
            } else {
                format!("{}*{base}", t.exponent.factor)
            };
            if t.exponent.with_alpha {
                exp.push_str(&format!("*({p}^alpha+1)"));
            }
            write!(f, "x^({exp})")?;
        }
        Ok(())
    }
}

/// Whether `(k, m, d)` lies in one of the families asserted DO for
/// characteristic `p`.
pub fn theorem_predicate(k: u64, m: u64, d: u64, p: u64) -> Result<bool> {
    check_p(p)?;
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let ps = |c| form_witness(d, p, c).is_some();
    let sc = |b| is_scaled_power(d, p, b);
    let r = m % p;
    Ok(match r {
        0 | 1 => {
            let fams = if p <= 5 {
                appendix_table(p)?
                    .into_iter()
                    .filter(|f| f.m_residue == Some(r))
                    .collect()
            } else {
                large_p_low_residue(r, p)
            };
            fams.iter().any(|f| f.contains(k, d, p))
        }
        2 => match k {
            1 => ps(1),
            2 => ps(2),
            3 => (p == 3 && ps(1)) || (p == 5 && sc(2)),
            4 | 6 | 12 => p == 3 && sc(1),
            5 => (p == 3 || p == 5) && sc(2),
            9 => p == 3 && sc(4),
            _ => false,
        },
        3 => match k {
            1..=3 => ps(k),
            5 => p == 5 && sc(2),
            _ => false,
        },
        4 => match k {
            1 | 2 | 4 => ps(k),
            3 | 5 => p == 5 && sc(2),
            _ => false,
        },
        _ => match k {
            1 | 2 => ps(k),
            _ => false,
        },
    })
}

// ---------------------------------------------------------------------------
// Sweeps

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub k: u64,
    pub m: u64,
    pub d: u64,
    pub p: u64,
    pub is_do: bool,
    pub predicted: bool,
    /// `e=p^i+p^j` entries, or the offending exponent when not DO.
    pub witnesses: String,
}

impl SweepRow {
    pub fn is_mismatch(&self) -> bool {
        self.is_do != self.predicted
    }

    pub fn csv_header() -> &'static str {
        "k,m,d,p,is_do,predicted,witnesses"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k, self.m, self.d, self.p, self.is_do, self.predicted, self.witnesses
        )
    }
}

fn witness_string(v: &DoVerdict, p: u64) -> String {
    match v.offending_term {
        Some(e) => format!("offending {e}"),
        None => v
            .decompositions
            .iter()
            .map(|w| format!("{}={p}^{}+{p}^{}", w.exponent, w.i, w.j))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

/// Compares [`is_do`] with [`theorem_predicate`] for `1 <= k <= k_max`,
/// every `m` in `ms`, `1 <= d <= d_max`. Mismatches come first, then rows
/// ordered by `(k, m, d)`.
pub fn classify_sweep(p: u64, k_max: u64, ms: &[u64], d_max: u64) -> Result<Vec<SweepRow>> {
    check_p(p)?;
    let cells: Vec<(u64, u64)> = (1..=k_max)
        .flat_map(|k| ms.iter().map(move |&m| (k, m)))
        .collect();
    let shapes: HashMap<(u64, u64), Vec<ReducedTerm>> = cells
        .par_iter()
        .map(|&(k, m)| ((k, m % p), shape(k, m, p)))
        .collect();
    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .flat_map_iter(|&(k, m)| {
            let s = &shapes[&(k, m % p)];
            (1..=d_max).map(move |d| {
                let v = verdict_from_shape(s, d, p);
                let predicted = theorem_predicate(k, m, d, p).expect("validated above");
                SweepRow {
                    k,
                    m,
                    d,
                    p,
                    is_do: v.is_do,
                    predicted,
                    witnesses: witness_string(&v, p),
                }
            })
        })
        .collect();
    rows.sort_by_key(|r| (!r.is_mismatch(), r.k, r.m, r.d));
    Ok(rows)
}

/// Outcome of instantiating one family at one parameter choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub n: u32,
    pub ell: u32,
    pub alpha: u32,
    pub k: u64,
    pub d: u64,
    pub is_do: bool,
    pub terms_match: bool,
    pub expected: Vec<ReducedTerm>,
    pub actual: Vec<ReducedTerm>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.is_do && self.terms_match
    }
}

/// Instantiates every family of [`appendix_table`] for `n, l, alpha <= bound`
/// and compares against the reduced polynomial term by term.
pub fn verify_appendix(p: u64, bound: u32) -> Result<Vec<FamilyCheck>> {
    let mut out = Vec::new();
    for fam in appendix_table(p)? {
        let Some(m) = fam.m_residue else {
            continue;
        };
        let ells = if matches!(fam.k_pattern, KPattern::TimesPower { .. }) {
            bound
        } else {
            0
        };
        let alphas = if fam.d_pattern.uses_alpha() { bound } else { 0 };
        for n in 0..=bound {
            for ell in 0..=ells {
                for alpha in 0..=alphas {
                    let Some((k, d, expected)) = fam.instantiate(n, ell, alpha) else {
                        continue;
                    };
                    let mut actual = frak_d(k, m, d)?.reduce_mod(p);
                    actual.sort_by(|a, b| b.exponent.cmp(&a.exponent));
                    let v = is_do(k, m, d, p)?;
                    out.push(FamilyCheck {
                        family: fam.label(),
                        n,
                        ell,
                        alpha,
                        k,
                        d,
                        is_do: v.is_do,
                        terms_match: actual == expected,
                        expected,
                        actual,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_examples() {
        assert_eq!(is_p_power_sum(10, 3), Some((0, 2)));
        assert_eq!(is_p_power_sum(2, 7), Some((0, 0)));
        assert_eq!(is_p_power_sum(8, 3), None);
        assert_eq!(is_p_power_sum(1, 3), None);
        assert_eq!(is_p_power_sum(6, 3), Some((1, 1)));
    }

    #[test]
    fn do_examples() {
        let v = is_do(5, 2, 2, 3).unwrap();
        assert!(v.is_do);
        assert_eq!(v.surviving_terms, vec![(10, 1), (2, 1)]);
        assert_eq!(
            v.decompositions,
            vec![
                Decomposition { exponent: 10, i: 0, j: 2 },
                Decomposition { exponent: 2, i: 0, j: 0 }
            ]
        );
        let v = is_do(9, 2, 4, 3).unwrap();
        assert!(v.is_do);
        let exps: Vec<u64> = v.surviving_terms.iter().map(|t| t.0).collect();
        assert_eq!(exps, vec![36, 28, 12, 4]);
        assert!((1..=200).all(|d| !is_do(7, 2, d, 3).unwrap().is_do));
        let v = is_do(3, 5, 1, 7).unwrap();
        assert!(!v.is_do);
        // both 3 and 1 lack a decomposition; the smallest is reported
        assert_eq!(v.offending_term, Some(1));
        assert_eq!(is_p_power_sum(3, 7), None);
        assert_eq!(is_do(1, 2, 1, 2).unwrap_err(), Error::UnsupportedCharacteristic(2));
    }

    #[test]
    fn form_witness_examples() {
        assert_eq!(form_witness(2, 3, 1), Some(FormWitness { n: 0, alpha: 0, c: 1 }));
        assert_eq!(form_witness(5, 3, 2), Some(FormWitness { n: 0, alpha: 2, c: 2 }));
        assert_eq!(form_witness(7, 5, 4), None);
        // brute-force oracle over small ranges
        for p in [3u64, 5, 7] {
            for c in 1..=4u64 {
                for d in 1..=300u64 {
                    let brute = (0..8).any(|n| {
                        (0..8).any(|a| p.pow(n) * (p.pow(a) + 1) == c * d)
                    });
                    assert_eq!(form_witness(d, p, c).is_some(), brute, "d={d} p={p} c={c}");
                }
            }
        }
    }

    #[test]
    fn predicate_examples() {
        assert!(theorem_predicate(1, 2, 4, 3).unwrap());
        assert!(!theorem_predicate(3, 3, 2, 7).unwrap());
        assert!(theorem_predicate(5, 3, 2, 5).unwrap());
        assert_eq!(
            theorem_predicate(1, 1, 1, 2).unwrap_err(),
            Error::UnsupportedCharacteristic(2)
        );
    }

    #[test]
    fn appendix_examples() {
        let t3 = appendix_table(3).unwrap();
        let k12 = t3
            .iter()
            .find(|f| f.m_residue == Some(2) && f.k_pattern == KPattern::Fixed { k: 12 })
            .unwrap();
        assert_eq!(
            k12.to_string(),
            "x^(4*3^(n+1)) + 2*a*x^(10*3^n) + a^3*x^(2*3^(n+1)) + 2*a^4*x^(4*3^n)"
        );
        let t5 = appendix_table(5).unwrap();
        let k5 = t5
            .iter()
            .find(|f| f.m_residue == Some(3) && f.k_pattern == KPattern::Fixed { k: 5 })
            .unwrap();
        assert_eq!(k5.to_string(), "x^(2*5^(n+1)) + 3*a*x^(6*5^n) + 4*a^2*x^(2*5^n)");
        let t11 = appendix_table(11).unwrap();
        assert_eq!(t11.len(), 1);
        assert_eq!(t11[0].to_string(), "x^(11^n*(11^alpha+1))");
    }

    #[test]
    fn appendix_families_are_do_and_match() {
        for p in [3, 5] {
            for c in verify_appendix(p, 2).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn small_sweep_has_no_mismatch() {
        let rows = classify_sweep(3, 12, &[2], 30).unwrap();
        assert_eq!(rows.len(), 12 * 30);
        assert!(!rows[0].is_mismatch(), "{:?}", rows[0]);
    }
}
