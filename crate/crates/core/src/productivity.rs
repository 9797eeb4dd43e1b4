//! Chained Törnqvist–Theil output, input and TFP indices, plus average
//! annual growth rates over sub-periods.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::{InputOutputPanel, IoItem, ItemKind};

/// Which aggregate an index tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    Output,
    Input,
    Tfp,
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexKind::Output => "output",
            IndexKind::Input => "input",
            IndexKind::Tfp => "tfp",
        })
    }
}

/// Growth-rate estimator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthMethod {
    /// Least-squares trend of `ln(value)` on year.
    #[default]
    Loglinear,
    /// Compound annual rate between the window endpoints.
    Cagr,
}

impl fmt::Display for GrowthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthMethod::Loglinear => "loglinear",
            GrowthMethod::Cagr => "cagr",
        })
    }
}

impl FromStr for GrowthMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "loglinear" => Ok(GrowthMethod::Loglinear),
            "cagr" => Ok(GrowthMethod::Cagr),
            other => Err(Error::Config(format!("unknown growth method `{other}`"))),
        }
    }
}

/// A level series with the base year at exactly 100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSeries {
    pub label: String,
    pub base_year: i32,
    pub values: BTreeMap<i32, f64>,
}

impl IndexSeries {
    /// `year,value` text with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("year,value\n");
        for (year, value) in &self.values {
            out.push_str(&format!("{year},{}\n", crate::format::sig6(*value)));
        }
        out
    }
}

/// Weighted log change of one side (outputs or inputs) between two years,
/// with shares averaged arithmetically over the two years.
pub fn weighted_log_change(
    panel: &InputOutputPanel,
    kind: ItemKind,
    from_year: i32,
    to_year: i32,
) -> Result<f64> {
    let missing = |y: i32| Error::Coverage(format!("input-output panel has no year {y}"));
    let from = panel.year(from_year).ok_or_else(|| missing(from_year))?.items(kind);
    let to = panel.year(to_year).ok_or_else(|| missing(to_year))?.items(kind);

    let ids: BTreeSet<&String> = from.keys().chain(to.keys()).collect();
    let mut sum = 0.0;
    for id in ids {
        let (a, b) = (from.get(id), to.get(id));
        let share_a = a.map_or(0.0, |i| i.share);
        let share_b = b.map_or(0.0, |i| i.share);
        let share = (share_a + share_b) / 2.0;
        if share == 0.0 {
            continue;
        }
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            (None, _) => {
                return Err(Error::CompositionChange {
                    item: id.clone(),
                    year: from_year,
                })
            }
            (_, None) => {
                return Err(Error::CompositionChange {
                    item: id.clone(),
                    year: to_year,
                })
            }
        };
        sum += share * (log_quantity(id, b, to_year)? - log_quantity(id, a, from_year)?);
    }
    Ok(sum)
}

fn log_quantity(id: &str, item: &IoItem, year: i32) -> Result<f64> {
    if item.quantity > 0.0 {
        Ok(item.quantity.ln())
    } else {
        Err(Error::LogDomain {
            item: id.to_string(),
            year,
        })
    }
}

/// `ln(TFP_to / TFP_from)`: share-weighted output log change minus
/// share-weighted input log change.
pub fn tornqvist_log_growth(panel: &InputOutputPanel, from_year: i32, to_year: i32) -> Result<f64> {
    let output = weighted_log_change(panel, ItemKind::Output, from_year, to_year)?;
    let input = weighted_log_change(panel, ItemKind::Input, from_year, to_year)?;
    Ok(output - input)
}

fn step(panel: &InputOutputPanel, kind: IndexKind, from: i32, to: i32) -> Result<f64> {
    match kind {
        IndexKind::Output => weighted_log_change(panel, ItemKind::Output, from, to),
        IndexKind::Input => weighted_log_change(panel, ItemKind::Input, from, to),
        IndexKind::Tfp => tornqvist_log_growth(panel, from, to),
    }
}

/// Chains year-over-year log changes into a level series, 100 at `base_year`.
pub fn build_index(panel: &InputOutputPanel, kind: IndexKind, base_year: i32) -> Result<IndexSeries> {
    let years = panel.years();
    let (first, last) = match (years.first(), years.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::Coverage("input-output panel is empty".into())),
    };
    if years.len() as i64 != i64::from(last) - i64::from(first) + 1 {
        return Err(Error::Coverage(format!(
            "input-output years {first}..{last} are not contiguous"
        )));
    }
    if !(first..=last).contains(&base_year) {
        return Err(Error::Coverage(format!(
            "base year {base_year} outside {first}..{last}"
        )));
    }

    let mut cumulative = BTreeMap::new();
    cumulative.insert(base_year, 0.0);
    let mut acc = 0.0;
    for year in base_year + 1..=last {
        acc += step(panel, kind, year - 1, year)?;
        cumulative.insert(year, acc);
    }
    acc = 0.0;
    for year in (first..base_year).rev() {
        acc -= step(panel, kind, year, year + 1)?;
        cumulative.insert(year, acc);
    }
    Ok(IndexSeries {
        label: kind.to_string(),
        base_year,
        values: cumulative
            .into_iter()
            .map(|(y, c)| (y, 100.0 * c.exp()))
            .collect(),
    })
}

/// Average annual growth in percent over `from_year..=to_year`.
///
/// Both endpoints must be present in `series`.
pub fn avg_annual_growth(
    series: &BTreeMap<i32, f64>,
    from_year: i32,
    to_year: i32,
    method: GrowthMethod,
) -> Result<f64> {
    if to_year <= from_year {
        return Err(Error::Coverage(format!(
            "growth window {from_year}..{to_year} spans fewer than 2 years"
        )));
    }
    for y in [from_year, to_year] {
        if !series.contains_key(&y) {
            return Err(Error::Coverage(format!("series has no value for {y}")));
        }
    }
    let window: Vec<(f64, f64)> = series
        .range(from_year..=to_year)
        .map(|(y, v)| (f64::from(*y), *v))
        .collect();

    match method {
        GrowthMethod::Loglinear => {
            if let Some((y, v)) = window.iter().find(|(_, v)| *v <= 0.0) {
                return Err(Error::LogDomain {
                    item: format!("value {v}"),
                    year: *y as i32,
                });
            }
            let n = window.len() as f64;
            let mean_t = window.iter().map(|(t, _)| t).sum::<f64>() / n;
            let mean_l = window.iter().map(|(_, v)| v.ln()).sum::<f64>() / n;
            let (mut sxy, mut sxx) = (0.0, 0.0);
            for (t, v) in &window {
                let dt = t - mean_t;
                sxy += dt * (v.ln() - mean_l);
                sxx += dt * dt;
            }
            Ok(((sxy / sxx).exp() - 1.0) * 100.0)
        }
        GrowthMethod::Cagr => {
            let start = series[&from_year];
            let end = series[&to_year];
            if start <= 0.0 || end < 0.0 {
                return Err(Error::Domain(format!(
                    "CAGR needs a positive start value, got {start}"
                )));
            }
            let years = f64::from(to_year - from_year);
            Ok(((end / start).powf(1.0 / years) - 1.0) * 100.0)
        }
    }
}
