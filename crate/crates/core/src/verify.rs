//! Cross-method verification of spline dimensions on the Alfeld split and
//! sweep reports (CSV with a JSON mirror).

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{braid_arrangement, multider_dim, terao_dim};
use crate::error::{Error, Result};
use crate::formulas::conjecture_dim;
use crate::geometry::alfeld_split;
use crate::homology::euler_alternating_sum;
use crate::linalg::Limits;
use crate::spline::{spline_dim_affine, spline_dim_graded, SmoothnessProblem};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A route to `dim C^r_k(AS(Δ_n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Closed binomial formula.
    Formula,
    /// Graded kernel of the Billera-Rose matrix on the cone.
    SplineKernel,
    /// Graded kernel of the multiderivation matrix of `A_n` with `m = r + 1`.
    ArrangementKernel,
    /// Euler characteristic of the degree-k slice of `R/J`.
    Euler,
    /// Terao's exponents with `m = r + 1`.
    Terao,
    /// Kernel of the non-coned smoothness system.
    SplineAffine,
}

impl Method {
    /// Methods used when none are requested.
    pub const DEFAULT: [Method; 4] = [
        Method::Formula,
        Method::SplineKernel,
        Method::ArrangementKernel,
        Method::Euler,
    ];

    pub const ALL: [Method; 6] = [
        Method::Formula,
        Method::SplineKernel,
        Method::ArrangementKernel,
        Method::Euler,
        Method::Terao,
        Method::SplineAffine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::SplineKernel => "spline-kernel",
            Method::ArrangementKernel => "arrangement-kernel",
            Method::Euler => "euler",
            Method::Terao => "terao",
            Method::SplineAffine => "spline-affine",
        }
    }

    /// Parses a comma-separated list; `all` and `default` are accepted as shorthands.
    pub fn parse_list(text: &str) -> Result<Vec<Method>> {
        let mut out: Vec<Method> = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let expanded: Vec<Method> = match part {
                "all" => Method::ALL.to_vec(),
                "default" => Method::DEFAULT.to_vec(),
                other => vec![other.parse()?],
            };
            for m in expanded {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("empty method list".into()));
        }
        Ok(out)
    }

    /// Computes the dimension for `(n, r, k)` by this method.
    pub fn compute(self, n: u32, r: u32, k: u32, limits: &Limits) -> Result<i64> {
        if n < 1 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let to_i64 = |v: u64| i64::try_from(v).map_err(|_| Error::Overflow("dimension"));
        match self {
            Method::Formula => to_i64(conjecture_dim(n as i64, r as i64, k as i64)?),
            Method::Terao => to_i64(terao_dim(n as u64, r as u64 + 1, k as u64)?),
            Method::SplineKernel => {
                let p = SmoothnessProblem::new(alfeld_split(n as usize), r);
                Ok(spline_dim_graded(&p, k, limits)? as i64)
            }
            Method::SplineAffine => {
                let p = SmoothnessProblem::new(alfeld_split(n as usize), r);
                Ok(spline_dim_affine(&p, k, limits)? as i64)
            }
            Method::ArrangementKernel => Ok(multider_dim(&braid_arrangement(n as usize), r + 1, k, limits)? as i64),
            Method::Euler => euler_alternating_sum(&alfeld_split(n as usize), r, k, limits),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// One `(n, r, k, method)` result. `dimension` is `None` when the method was
/// skipped because the instance exceeded the size cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: u32,
    pub r: u32,
    pub k: u32,
    pub method: Method,
    pub dimension: Option<i64>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub n_range: [u32; 2],
    pub r_range: [u32; 2],
    pub k_range: [u32; 2],
    pub methods: Vec<Method>,
    pub max_entries: usize,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
}

impl DimensionReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn any_skipped(&self) -> bool {
        self.rows.iter().any(|r| r.dimension.is_none())
    }

    /// CSV with header `n,r,k,method,dimension,agree`; skipped methods print
    /// `skipped` in the dimension column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,k,method,dimension,agree\n");
        for row in &self.rows {
            let dim = row.dimension.map_or_else(|| "skipped".to_string(), |d| d.to_string());
            out.push_str(&format!("{},{},{},{},{},{}\n", row.n, row.r, row.k, row.method, dim, row.agree));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs every method on `(n, r, k)` and flags whether the computed
/// dimensions coincide. Methods over the size cap are recorded as skipped.
pub fn verify_cell(n: u32, r: u32, k: u32, methods: &[Method], limits: &Limits) -> Result<Vec<ReportRow>> {
    if methods.len() < 2 {
        return Err(Error::InvalidParameter("verification needs at least two methods".into()));
    }
    let mut dims = Vec::with_capacity(methods.len());
    for &m in methods {
        match m.compute(n, r, k, limits) {
            Ok(d) => dims.push(Some(d)),
            Err(Error::InstanceTooLarge { .. }) => dims.push(None),
            Err(e) => return Err(e),
        }
    }
    let mut present = dims.iter().flatten();
    let agree = match present.next() {
        Some(first) => present.all(|d| d == first),
        None => true,
    };
    Ok(methods
        .iter()
        .zip(dims)
        .map(|(&method, dimension)| ReportRow {
            n,
            r,
            k,
            method,
            dimension,
            agree,
        })
        .collect())
}

/// [`verify_cell`] over a grid, rows ordered by `(n, r, k)` and then by method order.
pub fn sweep(
    n_range: RangeInclusive<u32>,
    r_range: RangeInclusive<u32>,
    k_range: RangeInclusive<u32>,
    methods: &[Method],
    limits: &Limits,
) -> Result<DimensionReport> {
    for (name, range) in [("n", &n_range), ("r", &r_range), ("k", &k_range)] {
        if range.is_empty() {
            return Err(Error::InvalidParameter(format!("empty {name} range")));
        }
    }
    if *n_range.start() < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let grid: Vec<(u32, u32, u32)> = n_range
        .clone()
        .flat_map(|n| {
            let k_range = k_range.clone();
            r_range
                .clone()
                .flat_map(move |r| k_range.clone().map(move |k| (n, r, k)))
        })
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(n, r, k)| verify_cell(n, r, k, methods, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionReport {
        metadata: ReportMetadata {
            n_range: [*n_range.start(), *n_range.end()],
            r_range: [*r_range.start(), *r_range.end()],
            k_range: [*k_range.start(), *k_range.end()],
            methods: methods.to_vec(),
            max_entries: limits.max_entries,
            tool_version: TOOL_VERSION.to_string(),
        },
        rows: cells.into_iter().flatten().collect(),
    })
}
