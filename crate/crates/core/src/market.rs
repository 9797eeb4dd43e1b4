//! Market-functioning indicators: price volatility around a structural
//! break, value/cost and grain/fertilizer ratios, crop share tables and
//! land-use ratios.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::{triennium_average, CropPanel, LandUseRecord, PriceSeries};

/// Denominator of the variance in the coefficient of variation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CvDenominator {
    /// n − 1
    #[default]
    Sample,
    /// n
    Population,
}

impl fmt::Display for CvDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CvDenominator::Sample => "sample",
            CvDenominator::Population => "population",
        })
    }
}

impl FromStr for CvDenominator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sample" => Ok(CvDenominator::Sample),
            "population" => Ok(CvDenominator::Population),
            other => Err(Error::Config(format!("unknown CV denominator `{other}`"))),
        }
    }
}

/// Price level and volatility before and after a break year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakStats {
    pub commodity_id: String,
    pub break_year: i32,
    pub n_before: usize,
    pub n_after: usize,
    pub mean_before: f64,
    pub mean_after: f64,
    /// Percent.
    pub cv_before: f64,
    /// Percent.
    pub cv_after: f64,
}

impl BreakStats {
    pub fn volatility_rose(&self) -> bool {
        self.cv_after > self.cv_before
    }
}

/// Sample coefficient of variation in percent.
pub fn coefficient_of_variation(values: &[f64]) -> Result<f64> {
    coefficient_of_variation_with(values, CvDenominator::Sample)
}

pub fn coefficient_of_variation_with(values: &[f64], denominator: CvDenominator) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::Coverage(format!(
            "coefficient of variation needs at least 2 values, got {}",
            values.len()
        )));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if mean <= 0.0 || !mean.is_finite() {
        return Err(Error::Domain(format!(
            "coefficient of variation needs a positive mean, got {mean}"
        )));
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let dof = match denominator {
        CvDenominator::Sample => n - 1.0,
        CvDenominator::Population => n,
    };
    Ok((ss / dof).sqrt() / mean * 100.0)
}

/// Means and CVs for years `< break_year` and `>= break_year`.
pub fn break_analysis(series: &PriceSeries, break_year: i32) -> Result<BreakStats> {
    break_analysis_with(series, break_year, CvDenominator::Sample)
}

pub fn break_analysis_with(
    series: &PriceSeries,
    break_year: i32,
    denominator: CvDenominator,
) -> Result<BreakStats> {
    let before: Vec<f64> = series.values.range(..break_year).map(|(_, v)| *v).collect();
    let after: Vec<f64> = series.values.range(break_year..).map(|(_, v)| *v).collect();
    for (name, window) in [("before", &before), ("after", &after)] {
        if window.len() < 2 {
            return Err(Error::Coverage(format!(
                "`{}` has {} observation(s) in the {name} window around {break_year}; need 2",
                series.commodity_id,
                window.len()
            )));
        }
    }
    let mean = |w: &[f64]| w.iter().sum::<f64>() / w.len() as f64;
    Ok(BreakStats {
        commodity_id: series.commodity_id.clone(),
        break_year,
        n_before: before.len(),
        n_after: after.len(),
        mean_before: mean(&before),
        mean_after: mean(&after),
        cv_before: coefficient_of_variation_with(&before, denominator)?,
        cv_after: coefficient_of_variation_with(&after, denominator)?,
    })
}

/// Fraction of commodities whose CV rose across the break.
pub fn rising_volatility_share(stats: &[BreakStats]) -> Result<f64> {
    if stats.is_empty() {
        return Err(Error::Coverage("no commodities tracked across the break".into()));
    }
    let rising = stats.iter().filter(|s| s.volatility_rose()).count();
    Ok(rising as f64 / stats.len() as f64)
}

fn pointwise_ratio(
    numerator: &BTreeMap<i32, f64>,
    denominator: &BTreeMap<i32, f64>,
    what: &str,
) -> Result<BTreeMap<i32, f64>> {
    if numerator.keys().ne(denominator.keys()) {
        return Err(Error::Coverage(format!("{what}: year coverage differs")));
    }
    numerator
        .iter()
        .map(|(year, num)| {
            let den = denominator[year];
            if den <= 0.0 {
                Err(Error::Domain(format!("{what}: non-positive denominator in {year}")))
            } else {
                Ok((*year, num / den))
            }
        })
        .collect()
}

/// Gross value of output over total input cost, year by year.
pub fn value_cost_ratio(
    output_value: &BTreeMap<i32, f64>,
    input_cost: &BTreeMap<i32, f64>,
) -> Result<BTreeMap<i32, f64>> {
    pointwise_ratio(output_value, input_cost, "value/cost ratio")
}

/// Ratio of two price series, e.g. grain over fertilizer.
pub fn price_ratio(numerator: &PriceSeries, denominator: &PriceSeries) -> Result<BTreeMap<i32, f64>> {
    pointwise_ratio(
        &numerator.values,
        &denominator.values,
        &format!("{}/{} price ratio", numerator.commodity_id, denominator.commodity_id),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShareDimension {
    Area,
    /// Production × price.
    Value,
}

/// Percent share of each crop in the triennium ending `te_year`.
pub fn share_table(panel: &CropPanel, te_year: i32, dimension: ShareDimension) -> Result<BTreeMap<String, f64>> {
    let te = triennium_average(panel, te_year)?;
    let weights: Vec<(String, f64)> = te
        .year_slice(te_year)
        .map(|o| {
            let w = match dimension {
                ShareDimension::Area => o.area,
                ShareDimension::Value => o.revenue(),
            };
            (o.crop_id.clone(), w)
        })
        .collect();
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return Err(Error::Domain(format!(
            "total {dimension:?} in TE {te_year} is zero"
        )));
    }
    Ok(weights
        .into_iter()
        .map(|(c, w)| (c, w * 100.0 / total))
        .collect())
}

/// Agricultural and non-agricultural land as fractions of reported area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandRatios {
    pub te_year: i32,
    pub al_ratio: f64,
    pub nal_ratio: f64,
}

/// Averages each land component over the triennium, then divides.
pub fn land_use_ratios(records: &[LandUseRecord], te_year: i32) -> Result<LandRatios> {
    let mut sums = [0.0; 3];
    for year in te_year - 2..=te_year {
        let rec = records
            .iter()
            .find(|r| r.year == year)
            .ok_or_else(|| Error::Coverage(format!("land use for TE {te_year} needs year {year}")))?;
        sums[0] += rec.agricultural_land;
        sums[1] += rec.non_agricultural_land;
        sums[2] += rec.total_reported;
    }
    if sums[2] <= 0.0 {
        return Err(Error::Domain(format!("total reported area in TE {te_year} is zero")));
    }
    Ok(LandRatios {
        te_year,
        al_ratio: sums[0] / sums[2],
        nal_ratio: sums[1] / sums[2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::panel::CropObservation;
    use proptest::prelude::*;

    fn series(id: &str, pairs: &[(i32, f64)]) -> PriceSeries {
        PriceSeries::new(id, pairs.iter().copied().collect()).unwrap()
    }

    #[test]
    fn cv_basics() {
        assert_eq!(coefficient_of_variation(&[5.0, 5.0, 5.0]).unwrap(), 0.0);
        assert_eq!(coefficient_of_variation(&[1.0, 2.0, 3.0]).unwrap(), 50.0);
        let pop = coefficient_of_variation_with(&[1.0, 2.0, 3.0], CvDenominator::Population).unwrap();
        assert!((pop - (2.0f64 / 3.0).sqrt() * 50.0).abs() < 1e-12);
    }

    #[test]
    fn cv_errors() {
        assert!(matches!(coefficient_of_variation(&[1.0]), Err(Error::Coverage(_))));
        assert!(matches!(coefficient_of_variation(&[-1.0, -2.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn break_year_belongs_to_after_window() {
        let s = series("paddy", &[(2002, 700.0), (2003, 700.0), (2006, 700.0), (2007, 700.0), (2008, 700.0)]);
        let b = break_analysis(&s, 2007).unwrap();
        assert_eq!((b.n_before, b.n_after), (3, 2));
        assert_eq!((b.mean_before, b.mean_after), (700.0, 700.0));
        assert_eq!((b.cv_before, b.cv_after), (0.0, 0.0));
    }

    #[test]
    fn doubled_spread_doubles_cv() {
        // same mean, deviations doubled in the after window
        let s = series(
            "wheat",
            &[(1, 90.0), (2, 110.0), (3, 100.0), (4, 80.0), (5, 120.0), (6, 100.0)],
        );
        let b = break_analysis(&s, 4).unwrap();
        assert_eq!(b.mean_before, b.mean_after);
        assert!((b.cv_after - 2.0 * b.cv_before).abs() < 1e-12);
        assert!(b.volatility_rose());
    }

    #[test]
    fn break_windows_need_two_points() {
        let s = series("maize", &[(2005, 1.0), (2006, 2.0), (2007, 3.0)]);
        let err = break_analysis(&s, 2007).unwrap_err();
        assert!(err.to_string().contains("after"), "{err}");
    }

    #[test]
    fn ratios() {
        let v: BTreeMap<i32, f64> = [(2000, 1500.0)].into_iter().collect();
        let c: BTreeMap<i32, f64> = [(2000, 1000.0)].into_iter().collect();
        assert_eq!(value_cost_ratio(&v, &c).unwrap()[&2000], 1.5);
        assert!(value_cost_ratio(&v, &v).unwrap().values().all(|r| *r == 1.0));

        let wheat = series("wheat", &[(2000, 1000.0)]);
        let urea = series("urea", &[(2000, 800.0)]);
        assert_eq!(price_ratio(&wheat, &urea).unwrap()[&2000], 1.25);
        assert_eq!(price_ratio(&wheat, &wheat).unwrap()[&2000], 1.0);

        let other: BTreeMap<i32, f64> = [(2001, 1000.0)].into_iter().collect();
        assert!(matches!(value_cost_ratio(&v, &other), Err(Error::Coverage(_))));
        let zero: BTreeMap<i32, f64> = [(2000, 0.0)].into_iter().collect();
        assert!(matches!(value_cost_ratio(&v, &zero), Err(Error::Domain(_))));
    }

    #[test]
    fn random_ratio_matches_elementwise_division() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a: BTreeMap<i32, f64> = (0..20).map(|y| (y, rng.gen_range(1.0..1e4))).collect();
        let b: BTreeMap<i32, f64> = (0..20).map(|y| (y, rng.gen_range(1.0..1e4))).collect();
        let r = value_cost_ratio(&a, &b).unwrap();
        for y in 0..20 {
            assert_eq!(r[&y], a[&y] / b[&y]);
        }
    }

    fn flat_panel(crops: &[(&str, f64)]) -> CropPanel {
        CropPanel::from_observations(crops.iter().flat_map(|(c, a)| {
            (2000..=2002).map(move |y| CropObservation::new(*c, y, *a, a * 2.0, 100.0))
        }))
        .unwrap()
    }

    #[test]
    fn share_tables() {
        let one = share_table(&flat_panel(&[("paddy", 10.0)]), 2002, ShareDimension::Area).unwrap();
        assert_eq!(one["paddy"], 100.0);
        let two = share_table(&flat_panel(&[("paddy", 10.0), ("wheat", 10.0)]), 2002, ShareDimension::Value)
            .unwrap();
        assert_eq!((two["paddy"], two["wheat"]), (50.0, 50.0));
        assert!(matches!(
            share_table(&flat_panel(&[("paddy", 10.0)]), 2005, ShareDimension::Area),
            Err(Error::Coverage(_))
        ));
    }

    fn land(year: i32, al: f64, nal: f64, total: f64) -> LandUseRecord {
        LandUseRecord {
            year,
            agricultural_land: al,
            non_agricultural_land: nal,
            total_reported: total,
        }
    }

    #[test]
    fn land_ratios_constant_and_boundary() {
        let recs: Vec<_> = (2000..=2002).map(|y| land(y, 68.0, 18.0, 100.0)).collect();
        let r = land_use_ratios(&recs, 2002).unwrap();
        assert!((r.al_ratio - 0.68).abs() < 1e-12 && (r.nal_ratio - 0.18).abs() < 1e-12);

        let recs: Vec<_> = (2000..=2002).map(|y| land(y, 50.0, 0.0, 50.0)).collect();
        let r = land_use_ratios(&recs, 2002).unwrap();
        assert_eq!((r.al_ratio, r.nal_ratio), (1.0, 0.0));
        assert!(matches!(land_use_ratios(&recs, 2003), Err(Error::Coverage(_))));
    }

    #[test]
    fn land_ratios_average_components_first() {
        let recs = [land(1, 60.0, 10.0, 100.0), land(2, 70.0, 20.0, 120.0), land(3, 80.0, 15.0, 140.0)];
        let r = land_use_ratios(&recs, 3).unwrap();
        // mean-then-divide
        let oracle_al = ((60.0 + 70.0 + 80.0) / 3.0) / ((100.0 + 120.0 + 140.0) / 3.0);
        let oracle_nal = ((10.0 + 20.0 + 15.0) / 3.0) / ((100.0 + 120.0 + 140.0) / 3.0);
        assert!((r.al_ratio - oracle_al).abs() < 1e-12);
        assert!((r.nal_ratio - oracle_nal).abs() < 1e-12);
        let mean_of_ratios = (0.6 + 70.0 / 120.0 + 80.0 / 140.0) / 3.0;
        assert!((r.al_ratio - mean_of_ratios).abs() > 1e-4);
    }

    proptest! {
        #[test]
        fn cv_is_scale_invariant(v in prop::collection::vec(1.0f64..1e3, 2..20), k in 1e-3f64..1e3) {
            let scaled: Vec<f64> = v.iter().map(|x| x * k).collect();
            let a = coefficient_of_variation(&v).unwrap();
            let b = coefficient_of_variation(&scaled).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }

        #[test]
        fn shifting_up_lowers_cv(v in prop::collection::vec(1.0f64..100.0, 2..20), c in 0.1f64..100.0) {
            prop_assume!(v.iter().any(|x| (x - v[0]).abs() > 1e-3));
            let shifted: Vec<f64> = v.iter().map(|x| x + c).collect();
            prop_assert!(coefficient_of_variation(&shifted).unwrap() < coefficient_of_variation(&v).unwrap());
        }

        #[test]
        fn ratio_reciprocity(pairs in prop::collection::vec((1e-3f64..1e6, 1e-3f64..1e6), 1..20)) {
            let a = PriceSeries::new("a", pairs.iter().enumerate().map(|(i, p)| (i as i32, p.0)).collect()).unwrap();
            let b = PriceSeries::new("b", pairs.iter().enumerate().map(|(i, p)| (i as i32, p.1)).collect()).unwrap();
            let ab = price_ratio(&a, &b).unwrap();
            let ba = price_ratio(&b, &a).unwrap();
            for (y, r) in &ab {
                prop_assert!((r * ba[y] - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn shares_sum_to_100(areas in prop::collection::vec(prop::collection::vec(0.0f64..1e5, 3), 1..8)) {
            let panel = CropPanel::from_observations(areas.iter().enumerate().flat_map(|(i, a)| {
                a.iter().enumerate().map(move |(t, area)| {
                    CropObservation::new(format!("c{i}"), 2000 + t as i32, *area + 1.0, area * 3.0 + 1.0, 50.0 + t as f64)
                })
            }))
            .unwrap();
            for dim in [ShareDimension::Area, ShareDimension::Value] {
                let s: f64 = share_table(&panel, 2002, dim).unwrap().values().sum();
                prop_assert!((s - 100.0).abs() < 1e-9);
            }
        }
    }
}
