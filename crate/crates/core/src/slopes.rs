//! Newton polygons of characteristic polynomials and slope tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::algebra::{RatFunc, Valuation};
use crate::error::{Error, Result};
use crate::hecke::operator_name;
use crate::representation::Level;

/// `t`-adic valuation of an eigenvalue; `Infinite` for the eigenvalue zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational64),
    Infinite,
}

impl Slope {
    pub fn int(n: i64) -> Self {
        Slope::Finite(Rational64::from_integer(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Slope::Finite(Rational64::new(n, d))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinite => write!(f, "∞"),
            Slope::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Slope::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Slope {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "∞" || s.eq_ignore_ascii_case("inf") {
            return Ok(Slope::Infinite);
        }
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad slope `{s}`: {e}"));
        match s.split_once('/') {
            Some((n, d)) => Ok(Slope::frac(parse(n)?, parse(d)?)),
            None => Ok(Slope::int(parse(s)?)),
        }
    }
}

/// Slopes with multiplicities, ascending, `Infinite` last.
pub type SlopeMultiset = Vec<(Slope, usize)>;

/// Parse the `a^m, b/c^n, ∞^r` notation (empty string is the empty multiset).
pub fn parse_multiset(s: &str) -> std::result::Result<SlopeMultiset, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (slope, mult) = part.trim().rsplit_once('^').ok_or_else(|| format!("missing ^ in `{part}`"))?;
            let mult = mult.trim().parse::<usize>().map_err(|e| e.to_string())?;
            Ok((slope.parse()?, mult))
        })
        .collect()
}

/// Newton slopes from the valuations of `c_0..c_n` (`c_n` a unit).
pub fn newton_slopes_from_valuations(vals: &[Valuation]) -> SlopeMultiset {
    let n = vals.len().saturating_sub(1);
    let zeros = vals.iter().take_while(|v| **v == Valuation::Infinite).count().min(n);
    let points: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .skip(zeros)
        .filter_map(|(i, v)| v.finite().map(|v| (i as i64, v)))
        .collect();
    // lower convex hull, left to right
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut acc: BTreeMap<Slope, usize> = BTreeMap::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        *acc.entry(Slope::Finite(Rational64::new(-dy, dx))).or_default() += dx as usize;
    }
    if zeros > 0 {
        acc.insert(Slope::Infinite, zeros);
    }
    acc.into_iter().collect()
}

/// Newton slopes of a monic polynomial over `F_q(t)`, coefficients lowest first.
pub fn newton_slopes(coeffs: &[RatFunc]) -> SlopeMultiset {
    let vals: Vec<Valuation> = coeffs.iter().map(RatFunc::t_valuation).collect();
    newton_slopes_from_valuations(&vals)
}

/// Slope data for one `(q, k, operator index, level)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeTable {
    pub q: u32,
    pub k: usize,
    pub i: u8,
    pub level: Level,
    pub dim: usize,
    pub slopes: SlopeMultiset,
}

impl SlopeTable {
    /// `0^1, 3/2^4, ∞^4`; empty for dimension zero.
    pub fn cell(&self) -> String {
        render_multiset(&self.slopes)
    }

    pub fn total(&self) -> usize {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    pub fn to_json(&self) -> Value {
        let slopes: Vec<Value> = self
            .slopes
            .iter()
            .map(|(s, m)| match s {
                Slope::Finite(r) => json!({"num": r.numer(), "den": r.denom(), "mult": m}),
                Slope::Infinite => json!({"inf": true, "mult": m}),
            })
            .collect();
        json!({
            "q": self.q,
            "k": self.k,
            "i": self.i,
            "level": self.level.tag(),
            "dim": self.dim,
            "slopes": slopes,
        })
    }
}

pub fn render_multiset(m: &SlopeMultiset) -> String {
    m.iter().map(|(s, n)| format!("{s}^{n}")).collect::<Vec<_>>().join(", ")
}

/// Output formats of the command line tool.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Render tables; the input order is kept for csv and json, markdown lays
/// them out as a grid with one row per `(q, k)` and one column per operator
/// and level.
pub fn format_tables(tables: &[SlopeTable], format: Format) -> String {
    match format {
        Format::Json => {
            let arr: Vec<Value> = tables.iter().map(SlopeTable::to_json).collect();
            serde_json::to_string_pretty(&Value::Array(arr)).unwrap() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("q,k,i,level,slope,mult\n");
            for t in tables {
                for (s, m) in &t.slopes {
                    let slope = match s {
                        Slope::Finite(r) => format!("{}/{}", r.numer(), r.denom()),
                        Slope::Infinite => "inf".to_string(),
                    };
                    out.push_str(&format!("{},{},{},{},{},{}\n", t.q, t.k, t.i, t.level.tag(), slope, m));
                }
            }
            out
        }
        Format::Md => {
            let mut cols: Vec<(u8, Level)> = tables.iter().map(|t| (t.i, t.level)).collect();
            cols.sort();
            cols.dedup();
            let mut rows: Vec<(u32, usize)> = tables.iter().map(|t| (t.q, t.k)).collect();
            rows.sort();
            rows.dedup();
            let multi_q = rows.iter().any(|r| r.0 != rows[0].0);
            let mut out = String::new();
            out.push_str(if multi_q { "| q | k |" } else { "| k |" });
            for (i, l) in &cols {
                out.push_str(&format!(" {} {} |", operator_name(*i, *l), l.tag()));
            }
            out.push('\n');
            out.push_str(if multi_q { "|---|---|" } else { "|---|" });
            out.push_str(&"---|".repeat(cols.len()));
            out.push('\n');
            for (q, k) in rows {
                if multi_q {
                    out.push_str(&format!("| {q} | {k} |"));
                } else {
                    out.push_str(&format!("| {k} |"));
                }
                for (i, l) in &cols {
                    let cell = tables
                        .iter()
                        .find(|t| t.q == q && t.k == k && t.i == *i && t.level == *l)
                        .map(SlopeTable::cell)
                        .unwrap_or_default();
                    out.push_str(&format!(" {cell} |"));
                }
                out.push('\n');
            }
            out
        }
    }
}
