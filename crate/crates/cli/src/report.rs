//! JSON encodings. Rationals are exact strings `"p/q"` (or `"p"`),
//! coefficient arrays are ascending, floats use 17 significant digits.

use dynzeta::attractor::{CriticalOrbitReport, CycleInfo, OrbitOutcome, SpherePoint};
use dynzeta::cohomop::{RationalFunctionT, TransferMatrix};
use dynzeta::dynmap::{Mobius, RationalMap};
use dynzeta::exact::{Field, MatF, PolyQ, Rat};
use dynzeta::series::{CrosscheckReport, SeriesQ};
use dynzeta::spectra::{LevelVerdict, SpectrumTable, TransversalityReport};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::parse::render_map;

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn float(x: f64) -> Value {
    Value::String(format!("{x:.16e}"))
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": float(z.re), "im": float(z.im) })
}

pub fn poly(p: &PolyQ) -> Value {
    Value::Array(p.coeffs().iter().map(rat).collect())
}

/// `1 - 4t + (1/2)t^2`, ascending.
pub fn t_text(p: &PolyQ) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = abs.to_string();
        match k {
            0 => out.push_str(&mag),
            _ => {
                if !abs.is_one() {
                    if abs.is_integer() {
                        out.push_str(&mag);
                    } else {
                        out.push_str(&format!("({mag})"));
                    }
                }
                out.push('t');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn t_poly(p: &PolyQ) -> Value {
    json!({ "coefficients": poly(p), "text": t_text(p) })
}

pub fn rational_function(r: &RationalFunctionT) -> Value {
    let text = if r.denominator().is_one() {
        t_text(r.numerator())
    } else {
        let wrap = |p: &PolyQ| {
            let text = t_text(p);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({text})")
            } else {
                text
            }
        };
        format!("{} / {}", wrap(r.numerator()), wrap(r.denominator()))
    };
    json!({
        "numerator": poly(r.numerator()),
        "denominator": poly(r.denominator()),
        "text": text,
    })
}

pub fn series(s: &SeriesQ) -> Value {
    Value::Array(s.coeffs().iter().map(rat).collect())
}

pub fn map(phi: &RationalMap) -> Value {
    json!({
        "text": render_map(phi),
        "numerator": poly(phi.numerator()),
        "denominator": poly(phi.denominator()),
        "degree": phi.degree(),
    })
}

pub fn mobius(theta: &Mobius) -> Value {
    let [a, b, c, d] = theta.entries();
    json!({ "a": rat(a), "b": rat(b), "c": rat(c), "d": rat(d), "text": theta.to_string() })
}

pub fn matrix(m: &MatF<Rat>) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(rat).collect()))
            .collect(),
    )
}

pub fn transfer(t: &TransferMatrix) -> Value {
    json!({
        "m": t.m(),
        "dimension": t.dim(),
        "basis": "1, w, ..., w^(2m-2); column j is the image of w^j",
        "entries": matrix(t.entries()),
        "det_one_minus_t": t_poly(&t.det_one_minus_t()),
    })
}

pub fn crosscheck(r: &CrosscheckReport) -> Value {
    let mismatch = match &r.first_mismatch {
        None => Value::Null,
        Some((k, s, c)) => json!({ "index": k, "series": rat(s), "closed": rat(c) }),
    };
    json!({ "passed": r.passed(), "first_mismatch": mismatch })
}

fn verdict(v: &LevelVerdict) -> Value {
    let original = match &v.witness_original {
        None => Value::Null,
        Some((p, inf)) => json!({ "finite": poly(p), "infinity": inf }),
    };
    json!({
        "level": v.level,
        "verdict": if v.transversal { "transversal" } else { "parabolic-found" },
        "witness": v.witness.as_ref().map_or(Value::Null, poly),
        "witness_original": original,
    })
}

pub fn transversality(r: &TransversalityReport) -> Value {
    json!({
        "level_bound": r.level_bound,
        "conjugation": mobius(&r.conjugation),
        "all_transversal": r.all_transversal(),
        "first_failure": r.first_failure(),
        "levels": r.levels.iter().map(verdict).collect::<Vec<_>>(),
    })
}

/// Rows indexed by `n = 1..=N`, columns by `m`.
pub fn spectrum(table: &SpectrumTable) -> Value {
    let rows = |m_max: usize, get: &dyn Fn(usize, usize) -> Value| -> Value {
        (1..=table.level_bound())
            .map(|n| Value::Array((0..=m_max).map(|m| get(n, m)).collect()))
            .collect()
    };
    let s = rows(table.m_bound(), &|n, m| table.s(n, m).map_or(Value::Null, rat));
    let t = rows(table.m_bound() + 1, &|n, m| table.t(n, m).map_or(Value::Null, rat));
    json!({
        "S": s,
        "T": t,
        "S_layout": "S[n-1][m] = sum of multiplier^m over points of period dividing n",
        "T_layout": "T[n-1][m] = sum of multiplier^m / (1 - multiplier) over fixed points of the n-th iterate",
    })
}

fn sphere(p: &SpherePoint) -> Value {
    match p {
        SpherePoint::Infinity => Value::String("infinity".into()),
        SpherePoint::Finite(z) => complex(*z),
    }
}

fn cycle(c: &CycleInfo) -> Value {
    json!({
        "period": c.period,
        "points": c.points.iter().map(sphere).collect::<Vec<_>>(),
        "multiplier": complex(c.multiplier),
        "multiplier_abs": float(c.multiplier.norm()),
        "attracting": c.attracting,
    })
}

pub fn certificate(r: &CriticalOrbitReport) -> Value {
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| {
            let outcome = match &o.outcome {
                OrbitOutcome::Cycle(c) => json!({ "status": "cycle", "cycle": cycle(c) }),
                OrbitOutcome::Undecided => json!({ "status": "undecided" }),
            };
            json!({ "critical_point": sphere(&o.point), "multiplicity": o.multiplicity, "outcome": outcome })
        })
        .collect();
    json!({
        "certificate": if r.certificate { "granted" } else { "not-granted" },
        "required_cycles": r.required_cycles(),
        "attracting_cycle_count": r.attracting_cycles.len(),
        "attracting_cycles": r.attracting_cycles.iter().map(cycle).collect::<Vec<_>>(),
        "critical_orbits": orbits,
        "heuristic": "double-precision search; a granted certificate is evidence, not proof",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_text_examples() {
        assert_eq!(t_text(&PolyQ::from_ints(&[1, -4])), "1 - 4t");
        assert_eq!(t_text(&PolyQ::from_ints(&[1, 0, -1])), "1 - t^2");
        let p = PolyQ::new(vec![Rat::one(), Rat::new(-127, 30)]);
        assert_eq!(t_text(&p), "1 - (127/30)t");
        assert_eq!(t_text(&PolyQ::zero()), "0");
        assert_eq!(t_text(&PolyQ::from_ints(&[-2, 3])), "-2 + 3t");
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rat(&Rat::new(6, -4)), json!("-3/2"));
        assert_eq!(rat(&Rat::from(5)), json!("5"));
        assert_eq!(float(0.5), json!("5.0000000000000000e-1"));
    }
}
