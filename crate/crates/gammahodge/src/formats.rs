//! JSON documents read and written by the command-line tool.
//!
//! Exact integers that may outgrow 64 bits are written as decimal strings.
//! Floats use the shortest representation that parses back to the same
//! bits (never more than 17 significant digits).

use gammahodge_core::betti::BettiVector;
use gammahodge_core::poisson::{self, CheckKind, McReport, Profile, Quadratic, ScalarField};
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// `{"d": 3, "beta": [0, 2, 0, 1]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiInput {
    pub d: usize,
    pub beta: Vec<u64>,
}

impl BettiInput {
    pub fn to_core(&self) -> Result<BettiVector, CliError> {
        BettiVector::new(self.d, self.beta.clone()).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn from_core(v: &BettiVector) -> Self {
        Self { d: v.dim(), beta: v.beta().to_vec() }
    }
}

/// Arbitrary-size unsigned integer carried as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecimalInt(pub BigUint);

impl Serialize for DecimalInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for DecimalInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(serde::de::Error::custom(format!("not a decimal integer: {s:?}")));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(DecimalInt)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

impl From<BigUint> for DecimalInt {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingBlock {
    pub k0: DecimalInt,
    /// `b_{K_0}`, always 1 when the block is present.
    pub b_k0: DecimalInt,
}

/// Output of `betti` and `pipeline`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    /// Betti vector the formula was evaluated on.
    pub input: BettiInput,
    pub n_max: usize,
    pub b: Vec<DecimalInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishing: Option<VanishingBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineMeta>,
}

/// Provenance of a β vector produced from simplicial complexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineMeta {
    /// Betti numbers of the base complex as computed.
    pub base_betti: Vec<u64>,
    /// Set when `--infinite-volume` replaced `β_0` by zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta0_override: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_betti: Option<Vec<u64>>,
}

/// `{"maximal": [[0,1,2],[2,3]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexInput {
    pub maximal: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub k: usize,
    pub chains: usize,
    pub harmonic: usize,
    pub exact: usize,
    pub coexact: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KronProbe {
    pub left_degree: usize,
    pub right_degree: usize,
    pub computed: usize,
    pub predicted: usize,
}

/// Output of `simplicial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialReport {
    pub simplex_counts: Vec<usize>,
    pub betti: Vec<u64>,
    pub degrees: Vec<DegreeReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kron_probes: Vec<KronProbe>,
}

/// Grid bounds for `algebra-check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub max_components: usize,
    pub max_degree: u32,
    pub max_dim: usize,
    pub max_m: usize,
    pub max_n: u64,
    /// Bounds of the β sweep comparing the closed Betti formula with the
    /// algebra rank (`d ≤ max_d`, `β_k ≤ max_beta`, `n ≤ max_betti_n`).
    pub max_d: usize,
    pub max_beta: u64,
    pub max_betti_n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { max_components: 3, max_degree: 4, max_dim: 2, max_m: 4, max_n: 6, max_d: 3, max_beta: 2, max_betti_n: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

/// One component instance: closed-form against rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRow {
    /// `(degree, dim)` per generator space.
    pub components: Vec<(u32, usize)>,
    pub m: usize,
    pub n: u64,
    pub closed: DecimalInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<DecimalInt>,
    pub status: RowStatus,
}

/// One β vector and order: Betti formula against the algebra rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub beta: Vec<u64>,
    pub n: usize,
    pub formula: DecimalInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<DecimalInt>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraCheckReport {
    pub grid: GridSpec,
    pub word_cap: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub rows: Vec<AlgebraRow>,
    pub betti_rows: Vec<BettiRow>,
}

/// Test-function profile: `"indicator"` or an object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(FieldName),
    Full {
        profile: FieldName,
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<f64>,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    Indicator,
    Gaussian,
}

impl FieldSpec {
    pub fn to_core(&self) -> Result<ScalarField, CliError> {
        let (name, amplitude, width) = match *self {
            Self::Named(name) => (name, 1.0, None),
            Self::Full { profile, amplitude, width } => (profile, amplitude, width),
        };
        let profile = match name {
            FieldName::Indicator => Profile::Indicator,
            FieldName::Gaussian => Profile::Gaussian {
                width: width.ok_or_else(|| CliError::Input("gaussian profile needs a width".into()))?,
            },
        };
        Ok(ScalarField { amplitude, profile })
    }
}

/// `"const" | "linear" | "square"` or explicit `[c0, c1, c2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Named(PolyName),
    Coefficients([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyName {
    Const,
    Linear,
    Square,
}

impl PolySpec {
    pub fn to_core(&self) -> Quadratic {
        match *self {
            Self::Named(PolyName::Const) => Quadratic::CONST,
            Self::Named(PolyName::Linear) => Quadratic::LINEAR,
            Self::Named(PolyName::Square) => Quadratic::SQUARE,
            Self::Coefficients(c) => Quadratic(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub dim: usize,
    pub lengths: Vec<f64>,
}

impl WindowSpec {
    pub fn to_core(&self) -> Result<poisson::Window, CliError> {
        if self.dim != self.lengths.len() {
            return Err(CliError::Input(format!(
                "window dim {} does not match {} lengths",
                self.dim,
                self.lengths.len()
            )));
        }
        poisson::Window::new(self.lengths.clone()).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Local functional: `{"count": k}` or `{"poly": ..., "phi": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalSpec {
    Count { count: u64 },
    Poly { poly: PolySpec, #[serde(default = "indicator")] phi: FieldSpec },
}

fn indicator() -> FieldSpec {
    FieldSpec::Named(FieldName::Indicator)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeckeSpec {
    pub g: FieldSpec,
    pub h: PolySpec,
    #[serde(default = "indicator")]
    pub phi: FieldSpec,
}

/// Input of `poisson`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "lowercase", deny_unknown_fields)]
pub enum PoissonSpec {
    Laplace {
        window: WindowSpec,
        f: FieldSpec,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
    },
    Local {
        window: WindowSpec,
        #[serde(rename = "F")]
        functional: LocalSpec,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default = "default_series_terms")]
        series_terms: usize,
    },
    Mecke {
        m: u8,
        window: WindowSpec,
        f: MeckeSpec,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
    },
}

fn default_series_terms() -> usize {
    64
}

impl PoissonSpec {
    pub fn samples(&self) -> Option<u64> {
        match self {
            Self::Laplace { samples, .. } | Self::Local { samples, .. } | Self::Mecke { samples, .. } => *samples,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Self::Laplace { seed, .. } | Self::Local { seed, .. } | Self::Mecke { seed, .. } => *seed,
        }
    }
}

/// Serialized [`McReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReportJson {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u8>,
    pub estimate: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub covered_3sigma: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_std_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    pub rng: String,
}

impl From<&McReport> for McReportJson {
    fn from(r: &McReport) -> Self {
        let (check, m) = match r.check {
            CheckKind::Laplace => ("laplace", None),
            CheckKind::LocalExpansion => ("local", None),
            CheckKind::Mecke { order } => ("mecke", Some(order)),
        };
        Self {
            check: check.into(),
            m,
            estimate: r.estimate,
            reference: r.reference,
            abs_error: r.abs_error,
            rel_error: r.rel_error,
            std_error: r.std_error,
            samples: r.samples,
            seed: r.seed,
            covered_3sigma: r.covers(3.0),
            rhs_estimate: r.rhs_estimate,
            rhs_std_error: r.rhs_std_error,
            tail_bound: r.tail_bound,
            rng: poisson::rng::RNG_NAME.into(),
        }
    }
}
