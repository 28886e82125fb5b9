//! The JSON verification report. Struct field order is the key order of the
//! output; everything time-dependent sits under `timing`.

use std::collections::BTreeMap;

use serde::Serialize;

use qtwist_core::localred::LocalReduction;

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: SweepEcho,
    pub summary: Summary,
    pub single: Vec<SingleRecord>,
    pub pairs: Vec<PairRecord>,
    pub failures: Vec<Failure>,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEcho {
    pub curves: usize,
    pub d_max: u64,
    pub pair_d_max: u64,
    pub mode: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub single_instances: usize,
    pub pair_instances: usize,
    pub checks: BTreeMap<String, Tally>,
    pub failures: usize,
    pub u_outside_one_two: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub curve: String,
    pub discriminants: Vec<String>,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub per_curve_seconds: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalJson {
    pub p: String,
    pub kodaira: String,
    pub tamagawa: u32,
    pub disc_valuation: u32,
    pub conductor_exponent: u32,
    pub kind: String,
}

impl From<&LocalReduction> for LocalJson {
    fn from(lr: &LocalReduction) -> Self {
        Self {
            p: lr.prime.to_string(),
            kodaira: lr.kodaira.to_string(),
            tamagawa: lr.tamagawa,
            disc_valuation: lr.disc_valuation,
            conductor_exponent: lr.conductor_exponent,
            kind: lr.kind.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantityJson {
    pub quantity: String,
    pub exponent: Option<i64>,
    pub is_power_of_two: bool,
    pub is_even_exponent: bool,
    pub u: Vec<String>,
    pub omega_n_minus: usize,
    /// `[D, l, c_l]` triples.
    pub twist_tamagawa: Vec<(String, String, u32)>,
    pub c_hat: Vec<(String, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolJson {
    pub b: u32,
    pub closed_form: i8,
    pub direct: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddTamagawaJson {
    pub product: String,
    pub symbol: i8,
    pub is_square: bool,
    pub fast_path_mismatches: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UJson {
    pub closed_form: Option<u32>,
    pub measured: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoAdicJson {
    pub case: String,
    pub pattern: String,
    pub model: String,
    pub predicted: (String, u32),
    pub measured: (String, u32),
    pub residue_profile_agrees: Option<bool>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingleRecord {
    pub curve: String,
    pub d: String,
    pub n_plus: String,
    pub n_minus: String,
    pub twist_minimal_model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<QuantityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_twist_tamagawa: Option<OddTamagawaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<UJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_adic: Option<TwoAdicJson>,
    pub local: Vec<LocalJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairQuantityJson {
    pub combined: QuantityJson,
    pub partials: [QuantityJson; 2],
    pub omega_parity_holds: bool,
    pub c_hat_ratio_exponent: Option<i64>,
    pub matches_partials: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityJson {
    pub q: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareClassJson {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub n_plus_mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub curve: String,
    pub d1: String,
    pub d2: String,
    pub n_plus: String,
    pub n_minus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<PairQuantityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inert_identity: Option<Vec<IdentityJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_class: Option<SquareClassJson>,
}
