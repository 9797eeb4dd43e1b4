//! Decomposition of the change in gross crop revenue into area, price,
//! yield, diversification and interaction effects.
//!
//! With base-period total area `Ā`, area shares `a_i`, yields `Y_i`, prices
//! `P_i`, and discrete differences `Δ = terminal − base`:
//!
//! ```text
//! area            = (Σ a_i Y_i P_i) · ΔĀ
//! price           = Ā · Σ a_i Y_i ΔP_i
//! yield           = Ā · Σ a_i P_i ΔY_i
//! diversification = Ā · Σ Y_i P_i Δa_i
//! interaction     = ΔR − (area + price + yield + diversification)
//! ```
//!
//! The interaction term is the exact residual, so the five effects always
//! add up to `ΔR`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::{triennium_average, CropObservation, CropPanel};

pub const EFFECT_FIELDS: [&str; 6] = [
    "area_effect",
    "price_effect",
    "yield_effect",
    "diversification_effect",
    "interaction_effect",
    "total",
];

/// How a period is resolved from the panel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodMode {
    /// The single named year.
    Endpoint,
    /// Three-year average ending in the named year.
    #[default]
    Triennium,
}

impl fmt::Display for PeriodMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeriodMode::Endpoint => "endpoint",
            PeriodMode::Triennium => "triennium",
        })
    }
}

impl FromStr for PeriodMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "endpoint" => Ok(PeriodMode::Endpoint),
            "triennium" => Ok(PeriodMode::Triennium),
            other => Err(Error::Config(format!("unknown period mode `{other}`"))),
        }
    }
}

/// Effects in currency units. `total` is `R(terminal) − R(base)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub base_label: String,
    pub terminal_label: String,
    pub base_revenue: f64,
    pub terminal_revenue: f64,
    pub total: f64,
    pub area_effect: f64,
    pub price_effect: f64,
    pub yield_effect: f64,
    pub diversification_effect: f64,
    pub interaction_effect: f64,
}

/// Each effect as a percentage of the total change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PercentView {
    pub area_effect: f64,
    pub price_effect: f64,
    pub yield_effect: f64,
    pub diversification_effect: f64,
    pub interaction_effect: f64,
    pub total: f64,
}

/// Flat serialized form with currency and percent fields side by side.
/// Percent fields are `null` when the total change is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub base_label: String,
    pub terminal_label: String,
    pub base_revenue: f64,
    pub terminal_revenue: f64,
    pub area_effect: f64,
    pub price_effect: f64,
    pub yield_effect: f64,
    pub diversification_effect: f64,
    pub interaction_effect: f64,
    pub total: f64,
    pub percent_defined: bool,
    pub area_effect_pct: Option<f64>,
    pub price_effect_pct: Option<f64>,
    pub yield_effect_pct: Option<f64>,
    pub diversification_effect_pct: Option<f64>,
    pub interaction_effect_pct: Option<f64>,
    pub total_pct: Option<f64>,
}

impl DecompositionResult {
    /// The five effects in the fixed field order.
    pub fn effects(&self) -> [f64; 5] {
        [
            self.area_effect,
            self.price_effect,
            self.yield_effect,
            self.diversification_effect,
            self.interaction_effect,
        ]
    }

    /// `None` when the total change is zero.
    pub fn percent(&self) -> Option<PercentView> {
        if self.total == 0.0 || !self.total.is_finite() {
            return None;
        }
        let pct = |x: f64| x * 100.0 / self.total;
        Some(PercentView {
            area_effect: pct(self.area_effect),
            price_effect: pct(self.price_effect),
            yield_effect: pct(self.yield_effect),
            diversification_effect: pct(self.diversification_effect),
            interaction_effect: pct(self.interaction_effect),
            total: 100.0,
        })
    }

    pub fn to_record(&self) -> DecompositionRecord {
        let pct = self.percent();
        DecompositionRecord {
            base_label: self.base_label.clone(),
            terminal_label: self.terminal_label.clone(),
            base_revenue: self.base_revenue,
            terminal_revenue: self.terminal_revenue,
            area_effect: self.area_effect,
            price_effect: self.price_effect,
            yield_effect: self.yield_effect,
            diversification_effect: self.diversification_effect,
            interaction_effect: self.interaction_effect,
            total: self.total,
            percent_defined: pct.is_some(),
            area_effect_pct: pct.map(|p| p.area_effect),
            price_effect_pct: pct.map(|p| p.price_effect),
            yield_effect_pct: pct.map(|p| p.yield_effect),
            diversification_effect_pct: pct.map(|p| p.diversification_effect),
            interaction_effect_pct: pct.map(|p| p.interaction_effect),
            total_pct: pct.map(|p| p.total),
        }
    }
}

/// Σ production × price over crops observed in `year`.
pub fn gross_revenue(panel: &CropPanel, year: i32) -> Result<f64> {
    if !panel.has_year(year) {
        return Err(Error::Coverage(format!("no crops observed in {year}")));
    }
    Ok(panel.year_slice(year).map(CropObservation::revenue).sum())
}

fn resolve_period(panel: &CropPanel, year: i32, mode: PeriodMode) -> Result<(String, CropPanel)> {
    match mode {
        PeriodMode::Endpoint => {
            if !panel.has_year(year) {
                return Err(Error::Coverage(format!("no crops observed in {year}")));
            }
            let slice = CropPanel::from_observations(panel.year_slice(year).cloned())?;
            Ok((year.to_string(), slice))
        }
        PeriodMode::Triennium => Ok((format!("TE {year}"), triennium_average(panel, year)?)),
    }
}

/// Decomposes the revenue change between two periods of `panel`.
pub fn decompose(
    panel: &CropPanel,
    base_year: i32,
    terminal_year: i32,
    mode: PeriodMode,
) -> Result<DecompositionResult> {
    let (base_label, base) = resolve_period(panel, base_year, mode)?;
    let (terminal_label, terminal) = resolve_period(panel, terminal_year, mode)?;
    let mut result = decompose_periods(
        base.year_slice(base_year),
        terminal.year_slice(terminal_year),
    )?;
    result.base_label = base_label;
    result.terminal_label = terminal_label;
    Ok(result)
}

#[derive(Debug, Clone, Copy, Default)]
struct CropValues {
    area: f64,
    production: f64,
    price: f64,
}

impl CropValues {
    fn yield_for(&self, crop: &str, side: &str) -> Result<f64> {
        if self.area > 0.0 {
            Ok(self.production / self.area)
        } else if self.production > 0.0 {
            Err(Error::DataInconsistency(format!(
                "`{crop}` has zero {side} area but production {}",
                self.production
            )))
        } else {
            Ok(0.0)
        }
    }
}

/// Decomposes the revenue change between two sets of per-crop observations.
/// Crops missing on one side enter with zero area, production and price.
pub fn decompose_periods<'a, B, T>(base: B, terminal: T) -> Result<DecompositionResult>
where
    B: IntoIterator<Item = &'a CropObservation>,
    T: IntoIterator<Item = &'a CropObservation>,
{
    let collect = |obs: &mut dyn Iterator<Item = &'a CropObservation>| -> Result<BTreeMap<String, CropValues>> {
        let mut out = BTreeMap::new();
        for o in obs {
            let values = CropValues {
                area: o.area,
                production: o.production,
                price: o.price,
            };
            if out.insert(o.crop_id.clone(), values).is_some() {
                return Err(Error::DuplicateKey {
                    key: o.crop_id.clone(),
                    row: 0,
                });
            }
        }
        Ok(out)
    };
    let base = collect(&mut base.into_iter())?;
    let terminal = collect(&mut terminal.into_iter())?;

    let base_area: f64 = base.values().map(|v| v.area).sum();
    let terminal_area: f64 = terminal.values().map(|v| v.area).sum();
    if base_area <= 0.0 {
        return Err(Error::Domain("base-period total area must be positive".into()));
    }
    if terminal_area <= 0.0 {
        return Err(Error::Domain("terminal-period total area must be positive".into()));
    }

    let crops: BTreeSet<&String> = base.keys().chain(terminal.keys()).collect();
    let mut base_revenue = 0.0;
    let mut terminal_revenue = 0.0;
    let mut base_unit_revenue = 0.0; // Σ a Y P at base
    let mut price_sum = 0.0;
    let mut yield_sum = 0.0;
    let mut share_sum = 0.0;
    for crop in crops {
        let b = base.get(crop).copied().unwrap_or_default();
        let t = terminal.get(crop).copied().unwrap_or_default();
        let (yb, yt) = (b.yield_for(crop, "base")?, t.yield_for(crop, "terminal")?);
        let (ab, at) = (b.area / base_area, t.area / terminal_area);
        base_revenue += b.production * b.price;
        terminal_revenue += t.production * t.price;
        base_unit_revenue += ab * yb * b.price;
        price_sum += ab * yb * (t.price - b.price);
        yield_sum += ab * b.price * (yt - yb);
        share_sum += yb * b.price * (at - ab);
    }

    let total = terminal_revenue - base_revenue;
    let area_effect = base_unit_revenue * (terminal_area - base_area);
    let price_effect = base_area * price_sum;
    let yield_effect = base_area * yield_sum;
    let diversification_effect = base_area * share_sum;
    let interaction_effect =
        total - (area_effect + price_effect + yield_effect + diversification_effect);

    Ok(DecompositionResult {
        base_label: String::new(),
        terminal_label: String::new(),
        base_revenue,
        terminal_revenue,
        total,
        area_effect,
        price_effect,
        yield_effect,
        diversification_effect,
        interaction_effect,
    })
}
