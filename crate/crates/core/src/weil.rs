//! Weil-type bounds on affine zero counts of plane curves, kept exact.
//!
//! For an absolutely irreducible `h(X, Y)` of degree `d` over `F_q`,
//! `q + 1 - (d-1)(d-2) sqrt(q) - d <= N <= q + 1 + (d-1)(d-2) sqrt(q)`.
//! Endpoints are stored as `A + B sqrt(q)` and compared by squaring.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::logtab::{LogTables, ZERO};
use crate::poly::{BivariatePoly, ParametricPoly};

/// Largest field order accepted by [`count_bivariate_zeros`] (`3^7`).
pub const MAX_COUNT_ORDER: u64 = 2187;

/// `int + rad * sqrt(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub int: BigInt,
    pub rad: BigInt,
    pub q: BigInt,
}

impl Surd {
    /// Sign of `u + v sqrt(q)`.
    fn sign(u: &BigInt, v: &BigInt, q: &BigInt) -> Ordering {
        let zero = BigInt::zero();
        match (u.cmp(&zero), v.cmp(&zero)) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(v * v * q)),
            (Ordering::Less, Ordering::Greater) => (v * v * q).cmp(&(u * u)),
        }
    }

    /// Exact comparison with an integer.
    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        Self::sign(&(&self.int - n), &self.rad, &self.q)
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.q.to_f64().unwrap_or(f64::INFINITY);
        self.int.to_f64().unwrap_or(0.0) + self.rad.to_f64().unwrap_or(0.0) * q.sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            return write!(f, "{}", self.int);
        }
        let sign = if self.rad.is_negative() { '-' } else { '+' };
        write!(f, "{} {sign} {}*sqrt({})", self.int, self.rad.abs(), self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilBound {
    pub q: u64,
    pub deg: u64,
    pub lower: Surd,
    pub upper: Surd,
    pub measured: Option<u64>,
}

impl WeilBound {
    /// `(d - 1)(d - 2)`.
    pub fn radical_coefficient(&self) -> u64 {
        radical(self.deg)
    }

    pub fn contains(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        self.lower.cmp_int(&n) != Ordering::Greater && self.upper.cmp_int(&n) != Ordering::Less
    }

    /// Whether the measured count, if any, lies inside the interval.
    pub fn measured_inside(&self) -> Option<bool> {
        self.measured.map(|n| self.contains(n))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "deg": self.deg,
            "lower": {"int": self.lower.int.to_string(), "rad": self.lower.rad.to_string(), "approx": self.lower.to_f64()},
            "upper": {"int": self.upper.int.to_string(), "rad": self.upper.rad.to_string(), "approx": self.upper.to_f64()},
            "measured": self.measured,
            "inside": self.measured_inside(),
        })
    }
}

fn radical(deg: u64) -> u64 {
    deg.saturating_sub(1) * deg.saturating_sub(2)
}

pub fn weil_interval(q: u64, deg: u64) -> WeilBound {
    let c = BigInt::from(radical(deg));
    let qb = BigInt::from(q);
    let base = BigInt::from(q) + 1;
    WeilBound {
        q,
        deg,
        lower: Surd {
            int: &base - BigInt::from(deg),
            rad: -c.clone(),
            q: qb.clone(),
        },
        upper: Surd {
            int: base,
            rad: c,
            q: qb,
        },
        measured: None,
    }
}

/// The squared comparison that decided the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdCheck {
    pub e: u32,
    /// `(q + 1 - deg - B)^2`.
    pub lhs_sq: String,
    /// `((deg-1)(deg-2))^2 q`.
    pub rhs_sq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub p: u64,
    pub deg: u64,
    pub boundary: u64,
    pub min_e: u32,
    pub check: ThresholdCheck,
}

/// Largest extension degree tried by [`min_e_exceeding`].
pub const MAX_THRESHOLD_E: u32 = 512;

/// Smallest `e` with `q + 1 - (d-1)(d-2) sqrt(q) - d > boundary`, `q = p^e`.
pub fn min_e_exceeding(p: u64, deg: u64, boundary: u64) -> Result<Threshold> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let c = BigInt::from(radical(deg));
    let c2 = &c * &c;
    let pb = BigInt::from(p);
    let mut q = BigInt::from(1);
    for e in 1..=MAX_THRESHOLD_E {
        q *= &pb;
        let a: BigInt = &q + 1 - BigInt::from(deg) - BigInt::from(boundary);
        let rhs = &c2 * &q;
        if a.is_positive() && &a * &a > rhs {
            return Ok(Threshold {
                p,
                deg,
                boundary,
                min_e: e,
                check: ThresholdCheck {
                    e,
                    lhs_sq: (&a * &a).to_string(),
                    rhs_sq: rhs.to_string(),
                },
            });
        }
    }
    Err(Error::NoThreshold(MAX_THRESHOLD_E))
}

/// Exact number of `(x, y)` in `F_q^2` with `h(x, y) = 0`.
pub fn count_bivariate_zeros(h: &BivariatePoly) -> Result<u64> {
    let field = h.field();
    if field.q() > MAX_COUNT_ORDER {
        return Err(Error::FieldTooLarge(format!(
            "q = {} exceeds {MAX_COUNT_ORDER} for a q^2 zero count",
            field.q()
        )));
    }
    let t = LogTables::new(field)?;
    let terms = t.encode_bivariate(h);
    let logs: Vec<u32> = t.all_logs().collect();
    Ok(logs
        .par_iter()
        .map(|&x| {
            logs.iter()
                .filter(|&&y| t.eval_bivariate_encoded(&terms, x, y) == ZERO)
                .count() as u64
        })
        .sum())
}

/// Zeros of `h` on the axes `x = 0` or `y = 0`.
pub fn xy_zero_solutions(h: &BivariatePoly) -> u64 {
    let field = h.field();
    let zero = field.zero();
    let on_x_axis = field
        .elements()
        .filter(|&x| h.eval_raw(x, zero).is_zero())
        .count() as u64;
    let on_y_axis = field
        .elements()
        .filter(|&y| !y.is_zero() && h.eval_raw(zero, y).is_zero())
        .count() as u64;
    on_x_axis + on_y_axis
}

/// A curve `h` with `f(X+Y) - f(X) - f(Y) = scale * X * Y * h(X, Y)`,
/// together with the inequality that rules out planarity once `q` is large.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaCurve {
    pub p: u64,
    pub f: &'static str,
    pub h: &'static str,
    pub scale: i64,
    pub deg: u64,
    /// Maximum number of zeros of `h` on the axes.
    pub boundary: u64,
    /// Threshold stated for this curve.
    pub min_e: u32,
}

/// Curves attached to the parametric DO polynomials with a parameter.
pub const DELTA_CURVES: &[DeltaCurve] = &[
    DeltaCurve {
        p: 3,
        f: "x^4 + a*x^2",
        h: "x^2 + y^2 - a",
        scale: 1,
        deg: 2,
        boundary: 4,
        min_e: 2,
    },
    DeltaCurve {
        p: 3,
        f: "x^10 + a^2*x^2",
        h: "x^8 + y^8 - a^2",
        scale: 1,
        deg: 8,
        boundary: 16,
        min_e: 7,
    },
    DeltaCurve {
        p: 3,
        f: "x^6 + 2*a*x^4",
        h: "a*x^2 + a*y^2 + x^2*y^2",
        scale: 2,
        deg: 4,
        boundary: 1,
        min_e: 4,
    },
    DeltaCurve {
        p: 3,
        f: "x^12 + 2*a*x^10 + a^3*x^6 + 2*a^4*x^4",
        h: "x^8*y^2 + x^2*y^8 + 2*a*x^8 + 2*a*y^8 + 2*a^3*x^2*y^2 + 2*a^4*x^2 + 2*a^4*y^2",
        scale: 1,
        deg: 10,
        boundary: 16,
        min_e: 8,
    },
    DeltaCurve {
        p: 5,
        f: "x^6 + 4*a*x^2",
        h: "x^4 + y^4 + 3*a",
        scale: 1,
        deg: 4,
        boundary: 8,
        min_e: 3,
    },
];

impl DeltaCurve {
    pub fn family(&self, field: &FieldSpec) -> Result<ParametricPoly> {
        ParametricPoly::parse(self.f, field)
    }

    pub fn curve(&self, field: &FieldSpec, a: FieldElement) -> Result<BivariatePoly> {
        BivariatePoly::parse(self.h, field, Some(a))
    }

    /// Confirms `Delta_f = scale * X * Y * h` at parameter `a`.
    pub fn factorisation_holds(&self, field: &FieldSpec, a: FieldElement) -> Result<bool> {
        let delta = self.family(field)?.instantiate(a)?.delta_bivariate();
        let rhs = self.curve(field, a)?.mul_monomial(1, 1, field.from_int(self.scale))?;
        Ok(delta == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_examples() {
        for e in 1..=6u32 {
            let q = 3u64.pow(e);
            let b = weil_interval(q, 2);
            assert_eq!(b.lower.int, BigInt::from(q - 1));
            assert!(b.lower.rad.is_zero());
            let b = weil_interval(q, 8);
            assert_eq!(b.lower.int, BigInt::from(q) - 7);
            assert_eq!(b.lower.rad, BigInt::from(-42));
        }
        let b = weil_interval(9, 1);
        assert_eq!((b.lower.int.clone(), b.upper.int.clone()), (BigInt::from(9), BigInt::from(10)));
        let b = weil_interval(81, 2);
        assert!(b.contains(80) && b.contains(82) && !b.contains(79) && !b.contains(83));
        assert_eq!(weil_interval(81, 8).lower.to_string(), "74 - 42*sqrt(81)");
    }

    #[test]
    fn surd_comparison_is_exact() {
        // 10 - 3 sqrt(11) is slightly positive
        let s = Surd {
            int: BigInt::from(10),
            rad: BigInt::from(-3),
            q: BigInt::from(11),
        };
        assert_eq!(s.cmp_int(&BigInt::zero()), Ordering::Greater);
        assert_eq!(s.cmp_int(&BigInt::from(1)), Ordering::Less);
        // 6 + 0 sqrt(q) against 6
        let t = Surd {
            int: BigInt::from(6),
            rad: BigInt::zero(),
            q: BigInt::from(7),
        };
        assert_eq!(t.cmp_int(&BigInt::from(6)), Ordering::Equal);
    }

    #[test]
    fn thresholds() {
        for (p, deg, b, e) in [(3, 8, 16, 7), (3, 2, 4, 2), (3, 4, 1, 4), (3, 10, 16, 8), (5, 4, 8, 3)] {
            let t = min_e_exceeding(p, deg, b).unwrap();
            assert_eq!(t.min_e, e, "({p},{deg},{b})");
            // floating evaluation agrees away from the boundary
            let holds = |e: u32| {
                let q = (p as f64).powi(e as i32);
                q + 1.0 - radical(deg) as f64 * q.sqrt() - deg as f64 > b as f64
            };
            assert!(holds(e) && !holds(e - 1));
        }
        for c in DELTA_CURVES {
            assert_eq!(min_e_exceeding(c.p, c.deg, c.boundary).unwrap().min_e, c.min_e);
        }
    }

    #[test]
    fn zero_counts() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let h = BivariatePoly::parse("x^2 + y^2 - 1", &f9, None).unwrap();
        let n = count_bivariate_zeros(&h).unwrap();
        assert!(weil_interval(9, 2).contains(n));
        // brute force with plain arithmetic
        let brute = f9
            .elements()
            .flat_map(|x| f9.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| h.eval(x, y).unwrap().is_zero())
            .count() as u64;
        assert_eq!(n, brute);
        let xy = BivariatePoly::parse("x*y", &f9, None).unwrap();
        assert_eq!(count_bivariate_zeros(&xy).unwrap(), 2 * 9 - 1);
        let big = FieldSpec::new(3, 8, None).unwrap();
        let h = BivariatePoly::parse("x*y", &big, None).unwrap();
        assert!(matches!(count_bivariate_zeros(&h), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn axis_solutions() {
        let f = FieldSpec::new(3, 4, None).unwrap();
        for k in [1u64, 2, 5] {
            let a = f.gen_pow(k);
            let h = BivariatePoly::parse("x^8 + y^8 - a^2", &f, Some(a)).unwrap();
            let a2 = f.mul(a, a).unwrap();
            let roots = f.elements().filter(|&z| f.pow(z, 8).unwrap() == a2).count() as u64;
            assert_eq!(xy_zero_solutions(&h), 2 * roots);
            assert!(xy_zero_solutions(&h) <= 16);
            let h = BivariatePoly::parse("x^2 + y^2 - a", &f, Some(a)).unwrap();
            assert!(xy_zero_solutions(&h) <= 4);
            let h = BivariatePoly::parse("a*x^2 + a*y^2 + x^2*y^2", &f, Some(a)).unwrap();
            assert_eq!(xy_zero_solutions(&h), 1);
        }
    }

    #[test]
    fn delta_factorisations() {
        for c in DELTA_CURVES {
            for e in 1..=3 {
                let field = FieldSpec::new(c.p, e, None).unwrap();
                for a in field.elements().take(6) {
                    assert!(c.factorisation_holds(&field, a).unwrap(), "{} e={e}", c.f);
                }
            }
        }
    }
}
