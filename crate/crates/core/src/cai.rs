//! Area-based comparative advantage index.
//!
//! `CAI(g) = (region area of g / region total) / (nation area of g / nation total)`,
//! where each total runs over the caller-supplied universe of groups. A value
//! above one marks a regional advantage in growing `g`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::CropPanel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Region,
    Nation,
}

/// Area by group for one scope and year. `total` is the sum over `entries`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaShareTable {
    pub scope: Scope,
    pub year: i32,
    entries: BTreeMap<String, f64>,
    total: f64,
}

impl AreaShareTable {
    pub fn new(scope: Scope, year: i32, entries: BTreeMap<String, f64>) -> Result<Self> {
        if let Some((g, a)) = entries.iter().find(|(_, a)| !a.is_finite() || **a < 0.0) {
            return Err(Error::Domain(format!("area of `{g}` must be non-negative, got {a}")));
        }
        let total = entries.values().sum();
        Ok(Self {
            scope,
            year,
            entries,
            total,
        })
    }

    /// Builds a table from one year of a crop panel, treating each crop id as a group.
    /// When `universe` is given, only those groups enter the table and its total.
    pub fn from_crop_panel(
        panel: &CropPanel,
        scope: Scope,
        year: i32,
        universe: Option<&[String]>,
    ) -> Result<Self> {
        if !panel.has_year(year) {
            return Err(Error::Coverage(format!("area table has no rows for {year}")));
        }
        let entries = panel
            .year_slice(year)
            .filter(|o| universe.is_none_or(|u| u.contains(&o.crop_id)))
            .map(|o| (o.crop_id.clone(), o.area))
            .collect();
        Self::new(scope, year, entries)
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn share(&self, group: &str) -> Result<f64> {
        let area = self.entries.get(group).ok_or_else(|| {
            Error::Lookup(format!("group `{group}` absent from {:?} table", self.scope))
        })?;
        if self.total <= 0.0 {
            return Err(Error::UndefinedIndex(format!("{:?} total area is zero", self.scope)));
        }
        Ok(area / self.total)
    }
}

/// Comparative advantage index of `group`.
pub fn cai(region: &AreaShareTable, nation: &AreaShareTable, group: &str) -> Result<f64> {
    let national = nation.share(group)?;
    let regional = region.share(group)?;
    if national <= 0.0 {
        return Err(Error::UndefinedIndex(format!(
            "national share of `{group}` is zero"
        )));
    }
    Ok(regional / national)
}

/// CAI for every group in the regional table.
pub fn cai_table(region: &AreaShareTable, nation: &AreaShareTable) -> Result<BTreeMap<String, f64>> {
    region
        .entries()
        .keys()
        .map(|g| cai(region, nation, g).map(|v| (g.clone(), v)))
        .collect()
}

/// `group_id,cai` text with a header row.
pub fn cai_csv(table: &BTreeMap<String, f64>) -> String {
    let mut out = String::from("group_id,cai\n");
    for (g, v) in table {
        out.push_str(&format!("{g},{}\n", crate::format::sig6(*v)));
    }
    out
}
