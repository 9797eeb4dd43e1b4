//! Run configuration and artifact generation.
//!
//! Each subcommand maps to one `*_artifacts` function that computes its
//! outputs in memory. [`write_artifacts`] is the only place that touches the
//! output directory; `report` is the union of all subcommand artifacts.
//!
//! Run config (JSON, paths relative to the config file):
//!
//! ```json
//! {
//!   "inputs": {
//!     "crop_panel": "crop_panel.csv",
//!     "io_panel": "io_panel.csv",
//!     "price_series": ["prices.csv"],
//!     "land_use": "land_use.csv",
//!     "cost_series": "costs.csv",
//!     "cai_region": "cai_region.csv",
//!     "cai_nation": "cai_nation.csv"
//!   },
//!   "decomposition": { "base_year": 2001, "terminal_year": 2016, "period_mode": "triennium" },
//!   "tfp": { "from_year": 2000, "to_year": 2015, "benchmark_pct": 1.60 },
//!   "markets": { "break_year": 2007, "grain": "wheat", "fertilizer": "urea" },
//!   "cai": { "high_value_crops": ["fruits", "vegetables"] },
//!   "tree": "builtin",
//!   "output_dir": "out"
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cai::{cai_csv, cai_table, AreaShareTable, Scope};
use crate::diagnostics::{self, builtin_bihar_tree, evaluate, load_tree, names, DiagnosticTree, IndicatorSet};
use crate::error::{Error, Result};
use crate::format::{sig6, to_artifact_json};
use crate::growth_accounting::{decompose, PeriodMode};
use crate::market::{
    break_analysis_with, land_use_ratios, price_ratio, rising_volatility_share, share_table,
    value_cost_ratio, CvDenominator, ShareDimension,
};
use crate::panel::{
    load_cost_series, load_crop_panel, load_deflator, load_io_panel, load_land_use,
    load_price_series, CostSeries, CropPanel, InputOutputPanel, LandUseRecord, PriceSeries,
};
use crate::productivity::{avg_annual_growth, build_index, GrowthMethod, IndexKind, IndexSeries};

pub const CONFIG_FILE: &str = "run.json";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputPaths {
    pub crop_panel: Option<PathBuf>,
    pub deflator: Option<PathBuf>,
    pub io_panel: Option<PathBuf>,
    pub price_series: Vec<PathBuf>,
    pub land_use: Option<PathBuf>,
    pub cost_series: Option<PathBuf>,
    pub cai_region: Option<PathBuf>,
    pub cai_nation: Option<PathBuf>,
}

impl InputPaths {
    /// Conventional file names used when a directory has no `run.json`.
    fn conventional(dir: &Path) -> Self {
        let found = |name: &str| {
            let p = dir.join(name);
            p.is_file().then_some(p)
        };
        Self {
            crop_panel: found("crop_panel.csv"),
            deflator: found("deflator.csv"),
            io_panel: found("io_panel.csv"),
            price_series: found("prices.csv").into_iter().collect(),
            land_use: found("land_use.csv"),
            cost_series: found("costs.csv"),
            cai_region: found("cai_region.csv"),
            cai_nation: found("cai_nation.csv"),
        }
    }

    fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.crop_panel,
            &mut self.deflator,
            &mut self.io_panel,
            &mut self.land_use,
            &mut self.cost_series,
            &mut self.cai_region,
            &mut self.cai_nation,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        self.price_series.iter_mut().for_each(fix);
    }
}

/// A named sub-period for growth rates, inclusive on both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Period {
    pub label: String,
    pub from: i32,
    pub to: i32,
}

/// Road-map presets: pre (2001/02–07/08), first (2008/09–11/12),
/// second (2012/13–16/17), overall. Years are the first calendar year of
/// the agricultural year.
pub fn default_periods() -> Vec<Period> {
    [
        ("pre_road_map", 2001, 2007),
        ("first_road_map", 2008, 2011),
        ("second_road_map", 2012, 2016),
        ("overall", 2001, 2016),
    ]
    .into_iter()
    .map(|(l, f, t)| Period {
        label: l.to_string(),
        from: f,
        to: t,
    })
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecompositionConfig {
    pub base_year: i32,
    pub terminal_year: i32,
    pub period_mode: PeriodMode,
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        Self {
            base_year: 2001,
            terminal_year: 2016,
            period_mode: PeriodMode::Triennium,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TfpConfig {
    /// Defaults to the first year of the input-output panel.
    pub base_year: Option<i32>,
    /// Growth window for the TFP indicator; defaults to the panel span.
    pub from_year: Option<i32>,
    pub to_year: Option<i32>,
    /// National TFP growth benchmark, percent per year.
    pub benchmark_pct: f64,
}

impl Default for TfpConfig {
    fn default() -> Self {
        Self {
            base_year: None,
            from_year: None,
            to_year: None,
            benchmark_pct: 1.60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MarketsConfig {
    /// First year of the "after" window.
    pub break_year: i32,
    /// Commodities tracked across the break; defaults to every price series
    /// except the fertilizer.
    pub commodities: Option<Vec<String>>,
    pub grain: String,
    pub fertilizer: String,
    /// Triennium end years for the share table.
    pub share_te_years: Vec<i32>,
    /// Triennium end years for land-use ratios; the first and last give the change indicator.
    pub land_te_years: Vec<i32>,
}

impl Default for MarketsConfig {
    fn default() -> Self {
        Self {
            break_year: 2007,
            commodities: None,
            grain: "wheat".into(),
            fertilizer: "urea".into(),
            share_te_years: vec![2002, 2007, 2016],
            land_te_years: vec![2002, 2007, 2014],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaiConfig {
    /// Year of the area tables; defaults to the single year they contain.
    pub year: Option<i32>,
    /// Groups that form the share base; defaults to every group in each table.
    pub universe: Option<Vec<String>>,
    /// Crop ids in the crop panel counted as high-value.
    pub high_value_crops: Vec<String>,
    /// Triennium for the high-value area share; defaults to the last share TE year.
    pub area_share_te_year: Option<i32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MethodFlags {
    pub growth: GrowthMethod,
    pub cv: CvDenominator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub inputs: InputPaths,
    pub periods: Vec<Period>,
    pub decomposition: DecompositionConfig,
    pub tfp: TfpConfig,
    pub markets: MarketsConfig,
    pub cai: CaiConfig,
    /// `builtin` or a path to a tree config.
    pub tree: String,
    pub methods: MethodFlags,
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            inputs: InputPaths::default(),
            periods: default_periods(),
            decomposition: DecompositionConfig::default(),
            tfp: TfpConfig::default(),
            markets: MarketsConfig::default(),
            cai: CaiConfig::default(),
            tree: "builtin".into(),
            methods: MethodFlags::default(),
            output_dir: None,
        }
    }
}

impl RunConfig {
    /// Reads a config file; relative paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve(base);
        cfg.check()?;
        Ok(cfg)
    }

    /// Uses `dir/run.json` when present, otherwise conventional file names in `dir`.
    pub fn from_input_dir(dir: &Path) -> Result<Self> {
        let config = dir.join(CONFIG_FILE);
        if config.is_file() {
            return Self::load(&config);
        }
        let inputs = InputPaths::conventional(dir);
        if inputs.is_empty() {
            return Err(Error::Config(format!("no inputs found in {}", dir.display())));
        }
        let cfg = Self {
            inputs,
            ..Self::default()
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn resolve(&mut self, base: &Path) {
        self.inputs.resolve(base);
        if self.tree != "builtin" {
            let p = Path::new(&self.tree);
            if p.is_relative() {
                self.tree = base.join(p).to_string_lossy().into_owned();
            }
        }
        if let Some(out) = &mut self.output_dir {
            if out.is_relative() {
                *out = base.join(&*out);
            }
        }
    }

    fn check(&self) -> Result<()> {
        let mut labels = BTreeSet::new();
        for p in &self.periods {
            if !labels.insert(p.label.as_str()) {
                return Err(Error::Config(format!("duplicate period label `{}`", p.label)));
            }
            if p.to <= p.from {
                return Err(Error::Config(format!(
                    "period `{}` must span at least two years",
                    p.label
                )));
            }
        }
        if self.inputs.is_empty() {
            return Err(Error::Config("no inputs configured".into()));
        }
        Ok(())
    }

    fn require<'a>(&self, path: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
        path.as_deref()
            .ok_or_else(|| Error::Config(format!("no {what} input configured")))
    }

    pub fn load_crop_panel(&self) -> Result<CropPanel> {
        let deflator = match &self.inputs.deflator {
            Some(p) => Some(load_deflator(open(p)?)?),
            None => None,
        };
        load_crop_panel(open(self.require(&self.inputs.crop_panel, "crop panel")?)?, deflator.as_ref())
    }

    pub fn load_io_panel(&self) -> Result<InputOutputPanel> {
        load_io_panel(open(self.require(&self.inputs.io_panel, "input-output panel")?)?)
    }

    pub fn load_prices(&self) -> Result<BTreeMap<String, PriceSeries>> {
        if self.inputs.price_series.is_empty() {
            return Err(Error::Config("no price series input configured".into()));
        }
        let mut all = BTreeMap::new();
        for path in &self.inputs.price_series {
            for (id, series) in load_price_series(open(path)?)? {
                if all.insert(id.clone(), series).is_some() {
                    return Err(Error::DuplicateKey {
                        key: format!("commodity `{id}` in {}", path.display()),
                        row: 0,
                    });
                }
            }
        }
        Ok(all)
    }

    pub fn load_land_use(&self) -> Result<Vec<LandUseRecord>> {
        load_land_use(open(self.require(&self.inputs.land_use, "land use")?)?)
    }

    pub fn load_costs(&self) -> Result<CostSeries> {
        load_cost_series(open(self.require(&self.inputs.cost_series, "cost series")?)?)
    }

    pub fn load_cai_tables(&self) -> Result<(AreaShareTable, AreaShareTable)> {
        let region = load_crop_panel(open(self.require(&self.inputs.cai_region, "CAI region")?)?, None)?;
        let nation = load_crop_panel(open(self.require(&self.inputs.cai_nation, "CAI nation")?)?, None)?;
        let year = match self.cai.year {
            Some(y) => y,
            None => match region.years().as_slice() {
                [y] => *y,
                years => {
                    return Err(Error::Config(format!(
                        "CAI region table covers {} years; set cai.year",
                        years.len()
                    )))
                }
            },
        };
        let universe = self.cai.universe.as_deref();
        Ok((
            AreaShareTable::from_crop_panel(&region, Scope::Region, year, universe)?,
            AreaShareTable::from_crop_panel(&nation, Scope::Nation, year, universe)?,
        ))
    }

    pub fn load_tree(&self) -> Result<DiagnosticTree> {
        tree_from_spec(&self.tree)
    }
}

/// `builtin` or a path to a tree config.
pub fn tree_from_spec(spec: &str) -> Result<DiagnosticTree> {
    if spec == "builtin" {
        Ok(builtin_bihar_tree())
    } else {
        let text = fs::read_to_string(spec)
            .map_err(|e| Error::Config(format!("cannot read tree {spec}: {e}")))?;
        load_tree(&text)
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))
}

/// One output file, held in memory until written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: &str, contents: String) -> Self {
        Self {
            name: name.to_string(),
            contents,
        }
    }
}

fn series_csv(series: &BTreeMap<i32, f64>) -> String {
    let mut out = String::from("year,value\n");
    for (y, v) in series {
        out.push_str(&format!("{y},{}\n", sig6(*v)));
    }
    out
}

pub fn decompose_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let panel = cfg.load_crop_panel()?;
    let d = &cfg.decomposition;
    let result = decompose(&panel, d.base_year, d.terminal_year, d.period_mode)?;
    Ok(vec![Artifact::new(
        "decomposition.json",
        to_artifact_json(&result.to_record())?,
    )])
}

struct Indices {
    output: IndexSeries,
    input: IndexSeries,
    tfp: IndexSeries,
}

fn indices(cfg: &RunConfig, panel: &InputOutputPanel) -> Result<Indices> {
    let base = match cfg.tfp.base_year {
        Some(y) => y,
        None => *panel
            .years()
            .first()
            .ok_or_else(|| Error::Coverage("input-output panel is empty".into()))?,
    };
    Ok(Indices {
        output: build_index(panel, IndexKind::Output, base)?,
        input: build_index(panel, IndexKind::Input, base)?,
        tfp: build_index(panel, IndexKind::Tfp, base)?,
    })
}

pub fn tfp_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let idx = indices(cfg, &cfg.load_io_panel()?)?;
    let mut fig = String::from("year,output,input,tfp\n");
    for (y, t) in &idx.tfp.values {
        fig.push_str(&format!(
            "{y},{},{},{}\n",
            sig6(idx.output.values[y]),
            sig6(idx.input.values[y]),
            sig6(*t)
        ));
    }
    Ok(vec![
        Artifact::new("tfp_index.csv", idx.tfp.to_csv()),
        Artifact::new("figure2.csv", fig),
    ])
}

#[derive(Debug, Serialize)]
struct PeriodGrowth {
    label: String,
    from: i32,
    to: i32,
    output: f64,
    input: f64,
    tfp: f64,
}

#[derive(Debug, Serialize)]
struct GrowthRates {
    method: GrowthMethod,
    periods: Vec<PeriodGrowth>,
}

pub fn growth_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let idx = indices(cfg, &cfg.load_io_panel()?)?;
    let method = cfg.methods.growth;
    let periods = cfg
        .periods
        .iter()
        .map(|p| {
            let g = |s: &IndexSeries| avg_annual_growth(&s.values, p.from, p.to, method);
            Ok(PeriodGrowth {
                label: p.label.clone(),
                from: p.from,
                to: p.to,
                output: g(&idx.output)?,
                input: g(&idx.input)?,
                tfp: g(&idx.tfp)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![Artifact::new(
        "growth_rates.json",
        to_artifact_json(&GrowthRates { method, periods })?,
    )])
}

#[derive(Debug, Serialize)]
struct BreakReport {
    break_year: i32,
    cv_denominator: CvDenominator,
    commodities: Vec<crate::market::BreakStats>,
    rising_share: f64,
}

#[derive(Debug, Serialize)]
struct LandReport {
    ratios: Vec<crate::market::LandRatios>,
    al_ratio_change: f64,
}

fn tracked_commodities(cfg: &RunConfig, prices: &BTreeMap<String, PriceSeries>) -> Vec<String> {
    match &cfg.markets.commodities {
        Some(list) => list.clone(),
        None => prices
            .keys()
            .filter(|id| **id != cfg.markets.fertilizer)
            .cloned()
            .collect(),
    }
}

fn break_report(cfg: &RunConfig, prices: &BTreeMap<String, PriceSeries>) -> Result<BreakReport> {
    let stats = tracked_commodities(cfg, prices)
        .iter()
        .map(|id| {
            let series = prices
                .get(id)
                .ok_or_else(|| Error::Lookup(format!("no price series for `{id}`")))?;
            break_analysis_with(series, cfg.markets.break_year, cfg.methods.cv)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BreakReport {
        break_year: cfg.markets.break_year,
        cv_denominator: cfg.methods.cv,
        rising_share: rising_volatility_share(&stats)?,
        commodities: stats,
    })
}

fn land_report(cfg: &RunConfig, records: &[LandUseRecord]) -> Result<LandReport> {
    let years = &cfg.markets.land_te_years;
    if years.len() < 2 {
        return Err(Error::Config("markets.land_te_years needs at least two years".into()));
    }
    let ratios = years
        .iter()
        .map(|y| land_use_ratios(records, *y))
        .collect::<Result<Vec<_>>>()?;
    let change = ratios[ratios.len() - 1].al_ratio - ratios[0].al_ratio;
    Ok(LandReport {
        ratios,
        al_ratio_change: change,
    })
}

fn grain_fertilizer(cfg: &RunConfig, prices: &BTreeMap<String, PriceSeries>) -> Result<BTreeMap<i32, f64>> {
    let get = |id: &str| {
        prices
            .get(id)
            .ok_or_else(|| Error::Lookup(format!("no price series for `{id}`")))
    };
    price_ratio(get(&cfg.markets.grain)?, get(&cfg.markets.fertilizer)?)
}

fn shares_csv(panel: &CropPanel, te_years: &[i32]) -> Result<String> {
    let mut columns = Vec::new();
    for dim in [ShareDimension::Area, ShareDimension::Value] {
        for y in te_years {
            columns.push((dim, *y, share_table(panel, *y, dim)?));
        }
    }
    let crops: BTreeSet<&String> = columns.iter().flat_map(|(_, _, t)| t.keys()).collect();
    let mut out = String::from("crop_id");
    for (dim, y, _) in &columns {
        let d = match dim {
            ShareDimension::Area => "area",
            ShareDimension::Value => "value",
        };
        out.push_str(&format!(",{d}_pct_te{y}"));
    }
    out.push('\n');
    for crop in crops {
        out.push_str(crop);
        for (_, _, t) in &columns {
            out.push_str(&format!(",{}", sig6(t.get(crop).copied().unwrap_or(0.0))));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn markets_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let prices = cfg.load_prices()?;
    let panel = cfg.load_crop_panel()?;
    let land = cfg.load_land_use()?;
    let costs = cfg.load_costs()?;
    Ok(vec![
        Artifact::new("break_stats.json", to_artifact_json(&break_report(cfg, &prices)?)?),
        Artifact::new("shares.csv", shares_csv(&panel, &cfg.markets.share_te_years)?),
        Artifact::new("land_ratios.json", to_artifact_json(&land_report(cfg, &land)?)?),
        Artifact::new(
            "figure3.csv",
            series_csv(&value_cost_ratio(&costs.output_value, &costs.input_cost)?),
        ),
        Artifact::new("figure4.csv", series_csv(&grain_fertilizer(cfg, &prices)?)),
    ])
}

pub fn cai_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    let (region, nation) = cfg.load_cai_tables()?;
    Ok(vec![Artifact::new("cai.csv", cai_csv(&cai_table(&region, &nation)?))])
}

fn last_value(series: &BTreeMap<i32, f64>, what: &str) -> Result<f64> {
    series
        .values()
        .next_back()
        .copied()
        .ok_or_else(|| Error::Coverage(format!("{what} series is empty")))
}

/// Computes every indicator read by the builtin tree, plus the supporting
/// ratio and index series.
pub fn compute_indicators(cfg: &RunConfig) -> Result<IndicatorSet> {
    let mut set = IndicatorSet::new();

    let land = land_report(cfg, &cfg.load_land_use()?)?;
    set.insert_scalar(names::AL_RATIO_CHANGE, land.al_ratio_change, "ratio", "land_use_ratios: last TE minus first TE")?;

    let io = cfg.load_io_panel()?;
    let idx = indices(cfg, &io)?;
    let years = io.years();
    let from = cfg.tfp.from_year.or(years.first().copied()).unwrap_or_default();
    let to = cfg.tfp.to_year.or(years.last().copied()).unwrap_or_default();
    let growth = avg_annual_growth(&idx.tfp.values, from, to, cfg.methods.growth)?;
    set.insert_scalar(
        names::TFP_GROWTH,
        growth,
        "percent_per_year",
        &format!("avg_annual_growth({}) of TFP index {from}-{to}", cfg.methods.growth),
    )?;
    set.insert_scalar(names::TFP_BENCHMARK, cfg.tfp.benchmark_pct, "percent_per_year", "run config")?;
    set.insert_series("tfp_index", &idx.tfp.values, "index", "build_index(tfp)")?;

    let prices = cfg.load_prices()?;
    let breaks = break_report(cfg, &prices)?;
    set.insert_scalar(
        names::PRICE_CV_RISING_SHARE,
        breaks.rising_share,
        "fraction",
        &format!("break_analysis at {} over {} commodities", breaks.break_year, breaks.commodities.len()),
    )?;

    let (region, nation) = cfg.load_cai_tables()?;
    let cai = cai_table(&region, &nation)?;
    let max_cai = cai
        .values()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if !max_cai.is_finite() {
        return Err(Error::Coverage("CAI table is empty".into()));
    }
    set.insert_scalar(names::MAX_CAI, max_cai, "ratio", "cai over region groups")?;

    if cfg.cai.high_value_crops.is_empty() {
        return Err(Error::Config("cai.high_value_crops is empty".into()));
    }
    let panel = cfg.load_crop_panel()?;
    let te = match cfg.cai.area_share_te_year.or(cfg.markets.share_te_years.last().copied()) {
        Some(y) => y,
        None => *panel
            .years()
            .last()
            .ok_or_else(|| Error::Coverage("crop panel is empty".into()))?,
    };
    let shares = share_table(&panel, te, ShareDimension::Area)?;
    let hv: f64 = cfg
        .cai
        .high_value_crops
        .iter()
        .map(|c| shares.get(c).copied().unwrap_or(0.0))
        .sum();
    set.insert_scalar(names::HIGH_VALUE_AREA_SHARE, hv, "percent", &format!("share_table(area) TE {te}"))?;

    let costs = cfg.load_costs()?;
    let vc = value_cost_ratio(&costs.output_value, &costs.input_cost)?;
    set.insert_scalar(names::VALUE_COST_RATIO, last_value(&vc, "value/cost")?, "ratio", "value_cost_ratio, terminal year")?;
    set.insert_series("value_cost_ratio", &vc, "ratio", "value_cost_ratio")?;

    let gf = grain_fertilizer(cfg, &prices)?;
    set.insert_scalar(
        names::GRAIN_FERTILIZER_RATIO,
        last_value(&gf, "grain/fertilizer")?,
        "ratio",
        &format!("price_ratio({}/{}), terminal year", cfg.markets.grain, cfg.markets.fertilizer),
    )?;
    set.insert_series("grain_fertilizer_ratio", &gf, "ratio", "price_ratio")?;

    Ok(set)
}

/// Evaluates `tree` and renders `indicators.json`, `diagnosis.json` and `diagnosis.txt`.
pub fn diagnosis_artifacts(tree: &DiagnosticTree, indicators: &IndicatorSet) -> Result<Vec<Artifact>> {
    let report = evaluate(tree, indicators)?;
    Ok(vec![
        Artifact::new("indicators.json", to_artifact_json(indicators)?),
        Artifact::new("diagnosis.json", to_artifact_json(&report)?),
        Artifact::new("diagnosis.txt", report.render_text()),
    ])
}

pub fn diagnose_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    diagnosis_artifacts(&cfg.load_tree()?, &compute_indicators(cfg)?)
}

/// Reads an `indicators.json` file.
pub fn load_indicators(path: &Path) -> Result<IndicatorSet> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// All artifacts, in a fixed order. Independent groups run on separate threads.
pub fn report_artifacts(cfg: &RunConfig) -> Result<Vec<Artifact>> {
    type Job = fn(&RunConfig) -> Result<Vec<Artifact>>;
    let jobs: [Job; 6] = [
        decompose_artifacts,
        tfp_artifacts,
        growth_artifacts,
        markets_artifacts,
        cai_artifacts,
        diagnose_artifacts,
    ];
    let results: Vec<Result<Vec<Artifact>>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|job| s.spawn(move || job(cfg))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("artifact job panicked"))
            .collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    Ok(all)
}

/// Loads every configured input and returns per-input counts.
pub fn validate_inputs(cfg: &RunConfig) -> Result<BTreeMap<String, usize>> {
    let mut counts = BTreeMap::new();
    if cfg.inputs.crop_panel.is_some() {
        let p = cfg.load_crop_panel()?;
        counts.insert("crop_panel.observations".into(), p.len());
        counts.insert("crop_panel.crops".into(), p.crops().len());
        counts.insert("crop_panel.years".into(), p.years().len());
    }
    if cfg.inputs.io_panel.is_some() {
        counts.insert("io_panel.years".into(), cfg.load_io_panel()?.years().len());
    }
    if !cfg.inputs.price_series.is_empty() {
        let prices = cfg.load_prices()?;
        counts.insert("price_series.commodities".into(), prices.len());
        counts.insert(
            "price_series.observations".into(),
            prices.values().map(|s| s.values.len()).sum(),
        );
    }
    if cfg.inputs.land_use.is_some() {
        counts.insert("land_use.records".into(), cfg.load_land_use()?.len());
    }
    if cfg.inputs.cost_series.is_some() {
        counts.insert("cost_series.years".into(), cfg.load_costs()?.output_value.len());
    }
    if cfg.inputs.cai_region.is_some() && cfg.inputs.cai_nation.is_some() {
        let (r, n) = cfg.load_cai_tables()?;
        counts.insert("cai.region_groups".into(), r.entries().len());
        counts.insert("cai.nation_groups".into(), n.entries().len());
    }
    if cfg.tree != "builtin" || cfg.inputs.crop_panel.is_some() {
        counts.insert("tree.nodes".into(), cfg.load_tree()?.nodes().count());
    }
    Ok(counts)
}

/// Writes artifacts into `dir`. On failure, files written by this call are removed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for a in artifacts {
        let path = dir.join(&a.name);
        if let Err(e) = fs::write(&path, &a.contents) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(e.into());
        }
        written.push(path);
    }
    Ok(())
}

/// Runs the full pipeline and writes every artifact to `out_dir`.
pub fn run_pipeline(cfg: &RunConfig, out_dir: &Path) -> Result<Vec<String>> {
    let artifacts = report_artifacts(cfg)?;
    write_artifacts(out_dir, &artifacts)?;
    Ok(artifacts.into_iter().map(|a| a.name).collect())
}

pub use diagnostics::builtin_tree_json;
