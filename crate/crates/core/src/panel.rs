//! Loading and validation of the tabular inputs.
//!
//! Every loader reads delimited UTF-8 text with a header row. Column order is
//! free; extra columns are ignored. Row numbers in errors are file line
//! numbers (the header is line 1).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};

use csv::{ReaderBuilder, StringRecord, Trim};
use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CROP_PANEL_COLUMNS: [&str; 5] = ["crop_id", "year", "area_ha", "production_t", "price_per_t"];
pub const IO_PANEL_COLUMNS: [&str; 5] = ["year", "kind", "item_id", "quantity", "share"];
pub const PRICE_SERIES_COLUMNS: [&str; 3] = ["commodity_id", "year", "price_per_t"];
pub const LAND_USE_COLUMNS: [&str; 4] = [
    "year",
    "agricultural_land",
    "non_agricultural_land",
    "total_reported",
];
pub const COST_SERIES_COLUMNS: [&str; 3] = ["year", "output_value", "input_cost"];
pub const DEFLATOR_COLUMNS: [&str; 2] = ["year", "index"];

/// Shares summing within this distance of 1 are renormalized instead of rejected.
pub const SHARE_TOLERANCE: f64 = 1e-3;

/// Year → price index with the reference year at 100.
pub type Deflator = BTreeMap<i32, f64>;

/// One crop in one year.
///
/// Yield is never stored; see [`CropObservation::yield_per_area`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CropObservation {
    pub crop_id: String,
    pub year: i32,
    /// Hectares.
    pub area: f64,
    /// Tonnes.
    pub production: f64,
    /// Currency per tonne.
    pub price: f64,
}

impl CropObservation {
    pub fn new(crop_id: impl Into<String>, year: i32, area: f64, production: f64, price: f64) -> Self {
        Self {
            crop_id: crop_id.into(),
            year,
            area,
            production,
            price,
        }
    }

    /// Production per hectare, defined only for positive area.
    pub fn yield_per_area(&self) -> Option<f64> {
        (self.area > 0.0).then(|| self.production / self.area)
    }

    pub fn revenue(&self) -> f64 {
        self.production * self.price
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("area", self.area),
            ("production", self.production),
            ("price", self.price),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "{name} of `{}` in {} must be finite and non-negative, got {v}",
                    self.crop_id, self.year
                )));
            }
        }
        Ok(())
    }
}

/// Crop-year observations with at most one record per (crop, year).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CropPanel {
    // keyed by (year, crop) so a year slice is a contiguous range
    observations: BTreeMap<(i32, String), CropObservation>,
}

impl CropPanel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_observations<I>(observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = CropObservation>,
    {
        let mut panel = Self::new();
        for obs in observations {
            panel.insert(obs)?;
        }
        Ok(panel)
    }

    /// Adds one observation, rejecting negative values and duplicate keys.
    pub fn insert(&mut self, obs: CropObservation) -> Result<()> {
        obs.validate()?;
        let key = (obs.year, obs.crop_id.clone());
        if self.observations.contains_key(&key) {
            return Err(Error::DuplicateKey {
                key: format!("({}, {})", obs.crop_id, obs.year),
                row: self.observations.len() as u64 + 1,
            });
        }
        self.observations.insert(key, obs);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// All observations, ordered by year then crop.
    pub fn observations(&self) -> impl Iterator<Item = &CropObservation> {
        self.observations.values()
    }

    pub fn years(&self) -> Vec<i32> {
        let years: BTreeSet<i32> = self.observations.keys().map(|(y, _)| *y).collect();
        years.into_iter().collect()
    }

    pub fn crops(&self) -> BTreeSet<String> {
        self.observations.keys().map(|(_, c)| c.clone()).collect()
    }

    pub fn get(&self, crop_id: &str, year: i32) -> Option<&CropObservation> {
        self.observations.get(&(year, crop_id.to_string()))
    }

    pub fn has_year(&self, year: i32) -> bool {
        self.year_slice(year).next().is_some()
    }

    /// Observations for one year, ordered by crop id.
    pub fn year_slice(&self, year: i32) -> impl Iterator<Item = &CropObservation> {
        self.observations
            .range((year, String::new())..)
            .take_while(move |((y, _), _)| *y == year)
            .map(|(_, obs)| obs)
    }

    /// Σ area over crops for `year`.
    pub fn total_area(&self, year: i32) -> Result<f64> {
        if !self.has_year(year) {
            return Err(Error::Coverage(format!("no crop observations for year {year}")));
        }
        Ok(self.year_slice(year).map(|o| o.area).sum())
    }

    /// Area share of each crop in the total cropped area of `year`.
    pub fn area_shares(&self, year: i32) -> Result<BTreeMap<String, f64>> {
        let total = self.total_area(year)?;
        if total <= 0.0 {
            return Err(Error::Domain(format!("total cropped area in {year} is zero")));
        }
        Ok(self
            .year_slice(year)
            .map(|o| (o.crop_id.clone(), o.area / total))
            .collect())
    }
}

/// Per-item quantity and value share within one year of an input-output panel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IoItem {
    pub quantity: f64,
    pub share: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemKind {
    Output,
    Input,
}

impl ItemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ItemKind::Output => "output",
            ItemKind::Input => "input",
        }
    }
}

/// Outputs with revenue shares and inputs with cost shares for one year.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IoYear {
    pub outputs: BTreeMap<String, IoItem>,
    pub inputs: BTreeMap<String, IoItem>,
}

impl IoYear {
    pub fn items(&self, kind: ItemKind) -> &BTreeMap<String, IoItem> {
        match kind {
            ItemKind::Output => &self.outputs,
            ItemKind::Input => &self.inputs,
        }
    }

    fn items_mut(&mut self, kind: ItemKind) -> &mut BTreeMap<String, IoItem> {
        match kind {
            ItemKind::Output => &mut self.outputs,
            ItemKind::Input => &mut self.inputs,
        }
    }
}

/// Output and input quantities with their shares, by year.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InputOutputPanel {
    years: BTreeMap<i32, IoYear>,
}

impl InputOutputPanel {
    /// Validates every year, renormalizing shares that sum within
    /// [`SHARE_TOLERANCE`] of one.
    pub fn from_years(mut years: BTreeMap<i32, IoYear>) -> Result<Self> {
        for (&year, io) in years.iter_mut() {
            for kind in [ItemKind::Output, ItemKind::Input] {
                let items = io.items_mut(kind);
                for (id, item) in items.iter() {
                    if !item.quantity.is_finite() || item.quantity < 0.0 {
                        return Err(Error::Domain(format!(
                            "{} `{id}` in {year} has negative quantity {}",
                            kind.as_str(),
                            item.quantity
                        )));
                    }
                    if !(0.0..=1.0).contains(&item.share) {
                        return Err(Error::Domain(format!(
                            "{} `{id}` in {year} has share {} outside [0, 1]",
                            kind.as_str(),
                            item.share
                        )));
                    }
                    if item.quantity == 0.0 && item.share > 0.0 {
                        warn!(
                            "{} `{id}` in {year} has zero quantity with nonzero share; \
                             log-ratios through this year will fail",
                            kind.as_str()
                        );
                    }
                }
                normalize_shares(items, year, kind)?;
            }
        }
        Ok(Self { years })
    }

    pub fn years(&self) -> Vec<i32> {
        self.years.keys().copied().collect()
    }

    pub fn year(&self, year: i32) -> Option<&IoYear> {
        self.years.get(&year)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &IoYear)> {
        self.years.iter().map(|(y, io)| (*y, io))
    }
}

fn normalize_shares(items: &mut BTreeMap<String, IoItem>, year: i32, kind: ItemKind) -> Result<()> {
    let sum: f64 = items.values().map(|i| i.share).sum();
    if (sum - 1.0).abs() > SHARE_TOLERANCE || !sum.is_finite() {
        return Err(Error::Normalization {
            year,
            kind: kind.as_str().to_string(),
            sum,
        });
    }
    // Rounding noise is left alone so that renormalizing twice is a no-op.
    if (sum - 1.0).abs() > 1e-12 {
        for item in items.values_mut() {
            item.share /= sum;
        }
    }
    Ok(())
}

/// Yearly prices of one commodity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    pub commodity_id: String,
    pub values: BTreeMap<i32, f64>,
}

impl PriceSeries {
    pub fn new(commodity_id: impl Into<String>, values: BTreeMap<i32, f64>) -> Result<Self> {
        let commodity_id = commodity_id.into();
        for (year, price) in &values {
            if !price.is_finite() || *price <= 0.0 {
                return Err(Error::Domain(format!(
                    "price of `{commodity_id}` in {year} must be positive, got {price}"
                )));
            }
        }
        Ok(Self {
            commodity_id,
            values,
        })
    }
}

/// Land use of one year, in consistent area units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandUseRecord {
    pub year: i32,
    pub agricultural_land: f64,
    pub non_agricultural_land: f64,
    pub total_reported: f64,
}

impl LandUseRecord {
    pub fn validate(&self) -> Result<()> {
        let parts = [
            self.agricultural_land,
            self.non_agricultural_land,
            self.total_reported,
        ];
        if parts.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain(format!(
                "land-use values for {} must be non-negative",
                self.year
            )));
        }
        let used = self.agricultural_land + self.non_agricultural_land;
        if used > self.total_reported * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "agricultural + non-agricultural land ({used}) exceeds total reported ({}) in {}",
                self.total_reported, self.year
            )));
        }
        Ok(())
    }
}

/// Gross value of output and total input cost by year.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostSeries {
    pub output_value: BTreeMap<i32, f64>,
    pub input_cost: BTreeMap<i32, f64>,
}

/// Header-indexed rows of a delimited table.
struct Table {
    columns: Vec<usize>,
    names: Vec<&'static str>,
    rows: Vec<(u64, StringRecord)>,
}

impl Table {
    fn read<R: Read>(source: R, names: &[&'static str]) -> Result<Self> {
        let mut reader = ReaderBuilder::new().trim(Trim::All).from_reader(source);
        let headers = reader.headers()?.clone();
        let columns = names
            .iter()
            .map(|name| {
                headers
                    .iter()
                    .position(|h| h == *name)
                    .ok_or_else(|| Error::MissingColumn {
                        column: name.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.iter().all(|c| c.is_empty()) {
                continue;
            }
            rows.push((line, record));
        }
        Ok(Self {
            columns,
            names: names.to_vec(),
            rows,
        })
    }

    fn cell<'a>(&self, record: &'a StringRecord, col: usize, row: u64) -> Result<&'a str> {
        match record.get(self.columns[col]) {
            Some(s) if !s.is_empty() => Ok(s),
            _ => Err(Error::Load {
                row,
                column: self.names[col].to_string(),
                message: "empty cell".to_string(),
            }),
        }
    }

    fn text(&self, record: &StringRecord, col: usize, row: u64) -> Result<String> {
        self.cell(record, col, row).map(str::to_string)
    }

    fn number(&self, record: &StringRecord, col: usize, row: u64) -> Result<f64> {
        let raw = self.cell(record, col, row)?;
        match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Load {
                row,
                column: self.names[col].to_string(),
                message: format!("`{raw}` is not a finite number"),
            }),
        }
    }

    fn year(&self, record: &StringRecord, col: usize, row: u64) -> Result<i32> {
        let raw = self.cell(record, col, row)?;
        raw.parse::<i32>().map_err(|_| Error::Load {
            row,
            column: self.names[col].to_string(),
            message: format!("`{raw}` is not an integer year"),
        })
    }
}

fn non_negative(value: f64, column: &str, row: u64) -> Result<f64> {
    if value < 0.0 {
        return Err(Error::Domain(format!(
            "row {row}, column `{column}`: negative value {value}"
        )));
    }
    Ok(value)
}

/// Loads a crop panel, dividing each price by `deflator[year] / 100` when a
/// deflator is supplied.
pub fn load_crop_panel<R: Read>(source: R, deflator: Option<&Deflator>) -> Result<CropPanel> {
    let table = Table::read(source, &CROP_PANEL_COLUMNS)?;
    let mut seen: HashMap<(String, i32), u64> = HashMap::new();
    let mut panel = CropPanel::new();
    for (row, record) in &table.rows {
        let row = *row;
        let crop_id = table.text(record, 0, row)?;
        let year = table.year(record, 1, row)?;
        let area = non_negative(table.number(record, 2, row)?, "area_ha", row)?;
        let production = non_negative(table.number(record, 3, row)?, "production_t", row)?;
        let mut price = non_negative(table.number(record, 4, row)?, "price_per_t", row)?;
        if let Some(prev) = seen.insert((crop_id.clone(), year), row) {
            return Err(Error::DuplicateKey {
                key: format!("({crop_id}, {year}), first seen at row {prev}"),
                row,
            });
        }
        if let Some(deflator) = deflator {
            let index = deflator.get(&year).ok_or_else(|| {
                Error::Coverage(format!("deflator has no index for year {year}"))
            })?;
            price /= index / 100.0;
        }
        panel.insert(CropObservation::new(crop_id, year, area, production, price))?;
    }
    Ok(panel)
}

/// Writes a panel in the crop-panel schema. Reloading the output yields an
/// equal panel.
pub fn write_crop_panel<W: Write>(panel: &CropPanel, sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(CROP_PANEL_COLUMNS)?;
    for o in panel.observations() {
        writer.write_record([
            o.crop_id.clone(),
            o.year.to_string(),
            o.area.to_string(),
            o.production.to_string(),
            o.price.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Loads a `year,index` deflator table. Indices must be positive.
pub fn load_deflator<R: Read>(source: R) -> Result<Deflator> {
    let table = Table::read(source, &DEFLATOR_COLUMNS)?;
    let mut out = Deflator::new();
    for (row, record) in &table.rows {
        let year = table.year(record, 0, *row)?;
        let index = table.number(record, 1, *row)?;
        if index <= 0.0 {
            return Err(Error::Domain(format!("row {row}: deflator index must be positive")));
        }
        if out.insert(year, index).is_some() {
            return Err(Error::DuplicateKey {
                key: format!("year {year}"),
                row: *row,
            });
        }
    }
    Ok(out)
}

pub fn load_io_panel<R: Read>(source: R) -> Result<InputOutputPanel> {
    let table = Table::read(source, &IO_PANEL_COLUMNS)?;
    let mut years: BTreeMap<i32, IoYear> = BTreeMap::new();
    for (row, record) in &table.rows {
        let row = *row;
        let year = table.year(record, 0, row)?;
        let kind = match table.cell(record, 1, row)? {
            "output" => ItemKind::Output,
            "input" => ItemKind::Input,
            other => {
                return Err(Error::Load {
                    row,
                    column: "kind".to_string(),
                    message: format!("`{other}` is neither `output` nor `input`"),
                })
            }
        };
        let item_id = table.text(record, 2, row)?;
        let quantity = non_negative(table.number(record, 3, row)?, "quantity", row)?;
        let share = table.number(record, 4, row)?;
        let items = years.entry(year).or_default().items_mut(kind);
        if items.contains_key(&item_id) {
            return Err(Error::DuplicateKey {
                key: format!("({year}, {}, {item_id})", kind.as_str()),
                row,
            });
        }
        items.insert(item_id, IoItem { quantity, share });
    }
    InputOutputPanel::from_years(years)
}

/// Loads price series keyed by commodity. A file may carry several commodities.
pub fn load_price_series<R: Read>(source: R) -> Result<BTreeMap<String, PriceSeries>> {
    let table = Table::read(source, &PRICE_SERIES_COLUMNS)?;
    let mut raw: BTreeMap<String, BTreeMap<i32, f64>> = BTreeMap::new();
    for (row, record) in &table.rows {
        let row = *row;
        let id = table.text(record, 0, row)?;
        let year = table.year(record, 1, row)?;
        let price = table.number(record, 2, row)?;
        if price <= 0.0 {
            return Err(Error::Domain(format!(
                "row {row}: price of `{id}` must be positive, got {price}"
            )));
        }
        if raw.entry(id.clone()).or_default().insert(year, price).is_some() {
            return Err(Error::DuplicateKey {
                key: format!("({id}, {year})"),
                row,
            });
        }
    }
    raw.into_iter()
        .map(|(id, values)| PriceSeries::new(id.clone(), values).map(|s| (id, s)))
        .collect()
}

/// Loads land-use records ordered by year.
pub fn load_land_use<R: Read>(source: R) -> Result<Vec<LandUseRecord>> {
    let table = Table::read(source, &LAND_USE_COLUMNS)?;
    let mut out: BTreeMap<i32, LandUseRecord> = BTreeMap::new();
    for (row, record) in &table.rows {
        let row = *row;
        let rec = LandUseRecord {
            year: table.year(record, 0, row)?,
            agricultural_land: table.number(record, 1, row)?,
            non_agricultural_land: table.number(record, 2, row)?,
            total_reported: table.number(record, 3, row)?,
        };
        rec.validate()?;
        if out.insert(rec.year, rec).is_some() {
            return Err(Error::DuplicateKey {
                key: format!("year {}", rec.year),
                row,
            });
        }
    }
    Ok(out.into_values().collect())
}

pub fn load_cost_series<R: Read>(source: R) -> Result<CostSeries> {
    let table = Table::read(source, &COST_SERIES_COLUMNS)?;
    let mut out = CostSeries::default();
    for (row, record) in &table.rows {
        let row = *row;
        let year = table.year(record, 0, row)?;
        let value = non_negative(table.number(record, 1, row)?, "output_value", row)?;
        let cost = non_negative(table.number(record, 2, row)?, "input_cost", row)?;
        if out.output_value.insert(year, value).is_some() {
            return Err(Error::DuplicateKey {
                key: format!("year {year}"),
                row,
            });
        }
        out.input_cost.insert(year, cost);
    }
    Ok(out)
}

/// Three-year average ending in `end_year`, as a single-year panel dated `end_year`.
///
/// A crop missing in one of the three years counts as zero area and
/// production for that year. Its price is averaged over the years it was
/// observed.
pub fn triennium_average(panel: &CropPanel, end_year: i32) -> Result<CropPanel> {
    let window = [end_year - 2, end_year - 1, end_year];
    if let Some(missing) = window.iter().find(|y| !panel.has_year(**y)) {
        return Err(Error::Coverage(format!(
            "triennium ending {end_year} needs year {missing}"
        )));
    }
    #[derive(Default)]
    struct Acc {
        area: f64,
        production: f64,
        price: f64,
        priced: u32,
    }
    let mut acc: BTreeMap<&str, Acc> = BTreeMap::new();
    for year in window {
        for o in panel.year_slice(year) {
            let a = acc.entry(o.crop_id.as_str()).or_default();
            a.area += o.area;
            a.production += o.production;
            a.price += o.price;
            a.priced += 1;
        }
    }
    CropPanel::from_observations(acc.into_iter().map(|(crop, a)| {
        CropObservation::new(
            crop,
            end_year,
            a.area / 3.0,
            a.production / 3.0,
            a.price / f64::from(a.priced),
        )
    }))
}
