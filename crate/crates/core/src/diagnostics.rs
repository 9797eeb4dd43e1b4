//! Binding-constraint decision trees over named indicators.
//!
//! A tree is a forest of question chains. Every root is evaluated; each
//! chain ends in a `binding` or `not_binding` verdict that applies to the
//! constraint labels met along the evaluated path (or to the root id when
//! the path carries no label). Labels never reached are reported as not
//! binding.
//!
//! Tree config (JSON):
//!
//! ```json
//! {
//!   "roots": ["markets"],
//!   "manifest": { "price_cv_rising_share": { "units": "fraction", "description": "..." } },
//!   "nodes": [
//!     {
//!       "id": "markets",
//!       "question": "Has price volatility risen for most commodities?",
//!       "constraint_label": "agricultural_markets",
//!       "predicate": { "indicator": "price_cv_rising_share", "comparator": ">", "threshold": 0.5 },
//!       "on_true": { "verdict": "binding" },
//!       "on_false": { "verdict": "not_binding" }
//!     }
//!   ]
//! }
//! ```
//!
//! `threshold` is a number or `{ "indicator": "<name>" }`. Comparators:
//! `<`, `<=`, `>`, `>=`, `=` (with `tolerance`), and `trend_up`,
//! `trend_down`, `stable`, which read the indicator as a signed change and
//! take no threshold.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN_TREE: &str = include_str!("../data/bihar_tree.json");

// ---------------------------------------------------------------------------
// Indicators

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndicatorValue {
    Scalar(f64),
    /// `(year, value)` pairs in year order.
    Series(Vec<(i32, f64)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Indicator {
    pub value: IndicatorValue,
    pub units: String,
    /// Which computation produced the value.
    #[serde(default)]
    pub provenance: String,
}

/// Named indicator values with units and provenance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndicatorSet {
    entries: BTreeMap<String, Indicator>,
}

impl IndicatorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, indicator: Indicator) -> Result<()> {
        let name = name.into();
        if self.entries.contains_key(&name) {
            return Err(Error::DuplicateKey {
                key: format!("indicator `{name}`"),
                row: 0,
            });
        }
        self.entries.insert(name, indicator);
        Ok(())
    }

    pub fn insert_scalar(
        &mut self,
        name: impl Into<String>,
        value: f64,
        units: &str,
        provenance: &str,
    ) -> Result<()> {
        self.insert(
            name,
            Indicator {
                value: IndicatorValue::Scalar(value),
                units: units.to_string(),
                provenance: provenance.to_string(),
            },
        )
    }

    pub fn insert_series(
        &mut self,
        name: impl Into<String>,
        values: &BTreeMap<i32, f64>,
        units: &str,
        provenance: &str,
    ) -> Result<()> {
        self.insert(
            name,
            Indicator {
                value: IndicatorValue::Series(values.iter().map(|(y, v)| (*y, *v)).collect()),
                units: units.to_string(),
                provenance: provenance.to_string(),
            },
        )
    }

    pub fn get(&self, name: &str) -> Option<&Indicator> {
        self.entries.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Indicator)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Scalar value of `name`.
    pub fn scalar(&self, name: &str) -> Result<f64> {
        match self.get(name).map(|i| &i.value) {
            None => Err(Error::MissingIndicator(name.to_string())),
            Some(IndicatorValue::Scalar(v)) => Ok(*v),
            Some(IndicatorValue::Series(_)) => Err(Error::IndicatorType(name.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Tree

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparator {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    TrendUp,
    TrendDown,
    Stable,
}

impl Comparator {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "<" => Comparator::Lt,
            "<=" | "≤" => Comparator::Le,
            ">" => Comparator::Gt,
            ">=" | "≥" => Comparator::Ge,
            "=" | "==" => Comparator::Eq,
            "trend_up" => Comparator::TrendUp,
            "trend_down" => Comparator::TrendDown,
            "stable" => Comparator::Stable,
            other => return Err(Error::Schema(format!("unknown comparator `{other}`"))),
        })
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
            Comparator::Eq => "=",
            Comparator::TrendUp => "trend_up",
            Comparator::TrendDown => "trend_down",
            Comparator::Stable => "stable",
        }
    }

    fn needs_threshold(self) -> bool {
        matches!(
            self,
            Comparator::Lt | Comparator::Le | Comparator::Gt | Comparator::Ge | Comparator::Eq
        )
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Threshold {
    Value(f64),
    Indicator { indicator: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    pub indicator: String,
    pub comparator: Comparator,
    pub threshold: Option<Threshold>,
    pub tolerance: f64,
    /// Normalizer for severity; defaults to `|threshold|`, or 1 when that is zero.
    pub severity_scale: Option<f64>,
}

impl Predicate {
    /// Truth value for an indicator `value` against a resolved `threshold`
    /// (ignored by trend comparators).
    pub fn holds(&self, value: f64, threshold: f64) -> bool {
        let tol = self.tolerance;
        match self.comparator {
            Comparator::Lt => value < threshold,
            Comparator::Le => value <= threshold,
            Comparator::Gt => value > threshold,
            Comparator::Ge => value >= threshold,
            Comparator::Eq => (value - threshold).abs() <= tol,
            Comparator::TrendUp => value > tol,
            Comparator::TrendDown => value < -tol,
            Comparator::Stable => value.abs() <= tol,
        }
    }

    /// Distance of `value` from the threshold, normalized.
    pub fn severity(&self, value: f64, threshold: f64) -> f64 {
        let reference = if self.comparator.needs_threshold() {
            threshold
        } else {
            0.0
        };
        let scale = self.severity_scale.unwrap_or(if reference != 0.0 {
            reference.abs()
        } else {
            1.0
        });
        (value - reference).abs() / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Binding,
    NotBinding,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Branch {
    Node(String),
    Verdict(Verdict),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticNode {
    pub id: String,
    pub question: String,
    pub predicate: Predicate,
    pub on_true: Branch,
    pub on_false: Branch,
    pub constraint_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub units: String,
    #[serde(default)]
    pub description: String,
}

/// A validated forest of question chains.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticTree {
    roots: Vec<String>,
    nodes: BTreeMap<String, DiagnosticNode>,
    manifest: BTreeMap<String, ManifestEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeConfig {
    roots: Vec<String>,
    #[serde(default)]
    manifest: BTreeMap<String, ManifestEntry>,
    nodes: Vec<NodeConfig>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeConfig {
    id: String,
    #[serde(default)]
    question: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constraint_label: Option<String>,
    predicate: PredicateConfig,
    on_true: BranchConfig,
    on_false: BranchConfig,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PredicateConfig {
    indicator: String,
    comparator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<Threshold>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    severity_scale: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verdict: Option<String>,
}

fn parse_branch(node: &str, side: &str, cfg: BranchConfig) -> Result<Branch> {
    match (cfg.node, cfg.verdict) {
        (Some(child), None) => Ok(Branch::Node(child)),
        (None, Some(v)) => match v.as_str() {
            "binding" => Ok(Branch::Verdict(Verdict::Binding)),
            "not_binding" => Ok(Branch::Verdict(Verdict::NotBinding)),
            other => Err(Error::Schema(format!(
                "node `{node}` {side}: unknown verdict `{other}`"
            ))),
        },
        _ => Err(Error::Schema(format!(
            "node `{node}` {side}: exactly one of `node` or `verdict` is required"
        ))),
    }
}

fn parse_predicate(node: &str, cfg: PredicateConfig) -> Result<Predicate> {
    let comparator = Comparator::parse(&cfg.comparator)
        .map_err(|e| Error::Schema(format!("node `{node}`: {e}")))?;
    match (comparator.needs_threshold(), &cfg.threshold) {
        (true, None) => {
            return Err(Error::Schema(format!(
                "node `{node}`: comparator `{comparator}` needs a threshold"
            )))
        }
        (false, Some(_)) => {
            return Err(Error::Schema(format!(
                "node `{node}`: comparator `{comparator}` takes no threshold"
            )))
        }
        _ => {}
    }
    let tolerance = cfg.tolerance.unwrap_or(0.0);
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::Schema(format!("node `{node}`: tolerance must be >= 0")));
    }
    if let Some(s) = cfg.severity_scale {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::Schema(format!("node `{node}`: severity_scale must be > 0")));
        }
    }
    Ok(Predicate {
        indicator: cfg.indicator,
        comparator,
        threshold: cfg.threshold,
        tolerance,
        severity_scale: cfg.severity_scale,
    })
}

impl DiagnosticTree {
    fn from_config(cfg: TreeConfig) -> Result<Self> {
        if cfg.roots.is_empty() {
            return Err(Error::Schema("tree has no roots".into()));
        }
        let mut nodes = BTreeMap::new();
        for n in cfg.nodes {
            let node = DiagnosticNode {
                predicate: parse_predicate(&n.id, n.predicate)?,
                on_true: parse_branch(&n.id, "on_true", n.on_true)?,
                on_false: parse_branch(&n.id, "on_false", n.on_false)?,
                question: n.question,
                constraint_label: n.constraint_label,
                id: n.id.clone(),
            };
            if nodes.insert(n.id.clone(), node).is_some() {
                return Err(Error::Schema(format!("duplicate node id `{}`", n.id)));
            }
        }
        let tree = Self {
            roots: cfg.roots,
            nodes,
            manifest: cfg.manifest,
        };
        tree.validate()?;
        Ok(tree)
    }

    fn validate(&self) -> Result<()> {
        for root in &self.roots {
            if !self.nodes.contains_key(root) {
                return Err(Error::Reference {
                    node: "<roots>".into(),
                    target: root.clone(),
                });
            }
        }
        for node in self.nodes.values() {
            for branch in [&node.on_true, &node.on_false] {
                if let Branch::Node(child) = branch {
                    if !self.nodes.contains_key(child) {
                        return Err(Error::Reference {
                            node: node.id.clone(),
                            target: child.clone(),
                        });
                    }
                }
            }
            let mut referenced = vec![&node.predicate.indicator];
            if let Some(Threshold::Indicator { indicator }) = &node.predicate.threshold {
                referenced.push(indicator);
            }
            for name in referenced {
                if !self.manifest.contains_key(name) {
                    return Err(Error::Manifest {
                        node: node.id.clone(),
                        indicator: name.clone(),
                    });
                }
            }
        }
        self.check_acyclic()
    }

    fn check_acyclic(&self) -> Result<()> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn visit<'a>(
            tree: &'a DiagnosticTree,
            id: &'a str,
            marks: &mut BTreeMap<&'a str, Mark>,
        ) -> Result<()> {
            marks.insert(id, Mark::Active);
            let node = &tree.nodes[id];
            for branch in [&node.on_true, &node.on_false] {
                if let Branch::Node(child) = branch {
                    match marks.get(child.as_str()) {
                        Some(Mark::Active) => {
                            return Err(Error::Cycle {
                                from: id.to_string(),
                                to: child.clone(),
                            })
                        }
                        Some(Mark::Done) => {}
                        None => visit(tree, child, marks)?,
                    }
                }
            }
            marks.insert(id, Mark::Done);
            Ok(())
        }
        let mut marks = BTreeMap::new();
        for root in &self.roots {
            if !marks.contains_key(root.as_str()) {
                visit(self, root, &mut marks)?;
            }
        }
        Ok(())
    }

    pub fn roots(&self) -> &[String] {
        &self.roots
    }

    pub fn node(&self, id: &str) -> Option<&DiagnosticNode> {
        self.nodes.get(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &DiagnosticNode> {
        self.nodes.values()
    }

    pub fn manifest(&self) -> &BTreeMap<String, ManifestEntry> {
        &self.manifest
    }

    /// Every distinct constraint label carried by a node.
    pub fn constraint_labels(&self) -> BTreeSet<String> {
        self.nodes
            .values()
            .filter_map(|n| n.constraint_label.clone())
            .collect()
    }

    /// Serializes back to the JSON config schema.
    pub fn to_json(&self) -> Result<String> {
        let branch = |b: &Branch| match b {
            Branch::Node(n) => BranchConfig {
                node: Some(n.clone()),
                verdict: None,
            },
            Branch::Verdict(v) => BranchConfig {
                node: None,
                verdict: Some(
                    match v {
                        Verdict::Binding => "binding",
                        Verdict::NotBinding => "not_binding",
                    }
                    .to_string(),
                ),
            },
        };
        let cfg = TreeConfig {
            roots: self.roots.clone(),
            manifest: self.manifest.clone(),
            nodes: self
                .nodes
                .values()
                .map(|n| NodeConfig {
                    id: n.id.clone(),
                    question: n.question.clone(),
                    constraint_label: n.constraint_label.clone(),
                    predicate: PredicateConfig {
                        indicator: n.predicate.indicator.clone(),
                        comparator: n.predicate.comparator.symbol().to_string(),
                        threshold: n.predicate.threshold.clone(),
                        tolerance: (n.predicate.tolerance != 0.0).then_some(n.predicate.tolerance),
                        severity_scale: n.predicate.severity_scale,
                    },
                    on_true: branch(&n.on_true),
                    on_false: branch(&n.on_false),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&cfg)?)
    }
}

/// Parses and validates a tree config.
pub fn load_tree(config: &str) -> Result<DiagnosticTree> {
    let cfg: TreeConfig =
        serde_json::from_str(config).map_err(|e| Error::Schema(e.to_string()))?;
    DiagnosticTree::from_config(cfg)
}

/// The shipped default tree with five branches: land, technology, markets,
/// diversification and input costs.
///
/// Thresholds are defaults reconstructed from the narrative of a growth
/// diagnostic study, not published constants:
///
/// | constraint | binding when |
/// |---|---|
/// | `agricultural_land` | AL/total ratio falls by more than 0.02 between the first and last triennium |
/// | `technology` | regional TFP growth is below the national benchmark |
/// | `agricultural_markets` | post-break CV exceeds pre-break CV for a majority of commodities |
/// | `crop_diversification` | some group has CAI > 1 while high-value crops hold < 10% of cropped area |
/// | `input_costs` | value/cost ratio < 1 or grain/fertilizer price ratio < 1 in the terminal year |
pub fn builtin_bihar_tree() -> DiagnosticTree {
    load_tree(BUILTIN_TREE).expect("bundled tree config is valid")
}

/// The bundled tree config text.
pub fn builtin_tree_json() -> &'static str {
    BUILTIN_TREE
}

// ---------------------------------------------------------------------------
// Evaluation

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathStep {
    pub node: String,
    pub question: String,
    pub indicator: String,
    pub value: f64,
    pub comparator: String,
    pub threshold: Option<f64>,
    pub outcome: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedPath {
    pub root: String,
    pub steps: Vec<PathStep>,
    pub verdict: Verdict,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub indicator: String,
    pub value: f64,
    pub units: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintFinding {
    pub label: String,
    /// Node whose predicate decided the verdict; `None` when no path reached the label.
    pub decided_at: Option<String>,
    pub severity: f64,
    pub evidence: Vec<Evidence>,
}

/// Outcome of evaluating a tree. `binding` is ordered by severity, then label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub paths: Vec<EvaluatedPath>,
    pub binding: Vec<ConstraintFinding>,
    pub non_binding: Vec<ConstraintFinding>,
}

impl DiagnosticReport {
    pub fn binding_labels(&self) -> BTreeSet<String> {
        self.binding.iter().map(|f| f.label.clone()).collect()
    }

    pub fn non_binding_labels(&self) -> BTreeSet<String> {
        self.non_binding.iter().map(|f| f.label.clone()).collect()
    }

    /// Plain-text summary.
    pub fn render_text(&self) -> String {
        use crate::format::sig6;
        let mut out = String::new();
        let list = |v: &[ConstraintFinding]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join(", ")
            }
        };
        out.push_str(&format!("Binding constraints: {}\n", list(&self.binding)));
        out.push_str(&format!("Not binding: {}\n", list(&self.non_binding)));
        for path in &self.paths {
            out.push_str(&format!(
                "\n[{}] {}\n",
                path.root,
                match path.verdict {
                    Verdict::Binding => "BINDING",
                    Verdict::NotBinding => "not binding",
                }
            ));
            for step in &path.steps {
                let threshold = step
                    .threshold
                    .map(|t| format!(" {}", sig6(t)))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "  - {} {} = {} {}{} -> {}\n",
                    step.question,
                    step.indicator,
                    sig6(step.value),
                    step.comparator,
                    threshold,
                    step.outcome
                ));
            }
        }
        out
    }
}

fn check_indicators(tree: &DiagnosticTree, indicators: &IndicatorSet) -> Result<()> {
    for (name, entry) in &tree.manifest {
        let ind = indicators
            .get(name)
            .ok_or_else(|| Error::MissingIndicator(name.clone()))?;
        if !entry.units.is_empty() && ind.units != entry.units {
            return Err(Error::Units {
                indicator: name.clone(),
                expected: entry.units.clone(),
                found: ind.units.clone(),
            });
        }
    }
    Ok(())
}

/// Evaluates every root chain against `indicators`.
pub fn evaluate(tree: &DiagnosticTree, indicators: &IndicatorSet) -> Result<DiagnosticReport> {
    check_indicators(tree, indicators)?;

    let mut paths = Vec::with_capacity(tree.roots.len());
    // label -> (verdict, finding); binding overrides not binding
    let mut findings: BTreeMap<String, (Verdict, ConstraintFinding)> = BTreeMap::new();

    for root in &tree.roots {
        let mut steps = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut evidence = Vec::new();
        let mut current = &tree.nodes[root];
        let (verdict, severity) = loop {
            let p = &current.predicate;
            let value = indicators.scalar(&p.indicator)?;
            let threshold = match &p.threshold {
                Some(Threshold::Value(t)) => Some(*t),
                Some(Threshold::Indicator { indicator }) => Some(indicators.scalar(indicator)?),
                None => None,
            };
            let outcome = p.holds(value, threshold.unwrap_or(0.0));
            steps.push(PathStep {
                node: current.id.clone(),
                question: current.question.clone(),
                indicator: p.indicator.clone(),
                value,
                comparator: p.comparator.symbol().to_string(),
                threshold,
                outcome,
            });
            evidence.push(Evidence {
                indicator: p.indicator.clone(),
                value,
                units: indicators.get(&p.indicator).map(|i| i.units.clone()).unwrap_or_default(),
            });
            if let Some(label) = &current.constraint_label {
                if !labels.contains(label) {
                    labels.push(label.clone());
                }
            }
            match if outcome { &current.on_true } else { &current.on_false } {
                Branch::Node(next) => current = &tree.nodes[next],
                Branch::Verdict(v) => break (*v, p.severity(value, threshold.unwrap_or(0.0))),
            }
        };
        if labels.is_empty() {
            labels.push(root.clone());
        }
        let decided_at = steps.last().map(|s| s.node.clone());
        for label in &labels {
            let finding = ConstraintFinding {
                label: label.clone(),
                decided_at: decided_at.clone(),
                severity,
                evidence: evidence.clone(),
            };
            match findings.get(label) {
                Some((Verdict::Binding, _)) => {}
                Some((Verdict::NotBinding, _)) if verdict == Verdict::NotBinding => {}
                _ => {
                    findings.insert(label.clone(), (verdict, finding));
                }
            }
        }
        paths.push(EvaluatedPath {
            root: root.clone(),
            steps,
            verdict,
            labels,
        });
    }

    for label in tree.constraint_labels() {
        findings.entry(label.clone()).or_insert_with(|| {
            (
                Verdict::NotBinding,
                ConstraintFinding {
                    label,
                    decided_at: None,
                    severity: 0.0,
                    evidence: Vec::new(),
                },
            )
        });
    }

    let (mut binding, mut non_binding): (Vec<_>, Vec<_>) = findings
        .into_values()
        .partition(|(v, _)| *v == Verdict::Binding);
    binding.sort_by(|a, b| {
        b.1.severity
            .total_cmp(&a.1.severity)
            .then_with(|| a.1.label.cmp(&b.1.label))
    });
    non_binding.sort_by(|a, b| a.1.label.cmp(&b.1.label));
    Ok(DiagnosticReport {
        paths,
        binding: binding.into_iter().map(|(_, f)| f).collect(),
        non_binding: non_binding.into_iter().map(|(_, f)| f).collect(),
    })
}

/// Indicator names read by the builtin tree.
pub mod names {
    pub const AL_RATIO_CHANGE: &str = "al_ratio_change";
    pub const TFP_GROWTH: &str = "tfp_growth_pct";
    pub const TFP_BENCHMARK: &str = "tfp_benchmark_pct";
    pub const PRICE_CV_RISING_SHARE: &str = "price_cv_rising_share";
    pub const MAX_CAI: &str = "max_cai";
    pub const HIGH_VALUE_AREA_SHARE: &str = "high_value_area_share_pct";
    pub const VALUE_COST_RATIO: &str = "value_cost_ratio_terminal";
    pub const GRAIN_FERTILIZER_RATIO: &str = "grain_fertilizer_ratio_terminal";
}
