//! Outcome of a single identity check, with a fixed-order serialization.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::algebra::{BigRat, LaurentXY};
use crate::real::format_sci;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Thm21,
    Thm22,
    Thm24,
    Prop23,
    Eq13,
    Eq17,
    Eq5,
    Limit,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Thm21,
        IdentityId::Thm22,
        IdentityId::Thm24,
        IdentityId::Prop23,
        IdentityId::Eq13,
        IdentityId::Eq17,
        IdentityId::Eq5,
        IdentityId::Limit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Thm21 => "THM21",
            IdentityId::Thm22 => "THM22",
            IdentityId::Thm24 => "THM24",
            IdentityId::Prop23 => "PROP23",
            IdentityId::Eq13 => "EQ13",
            IdentityId::Eq17 => "EQ17",
            IdentityId::Eq5 => "EQ5",
            IdentityId::Limit => "LIMIT",
        }
    }

    /// Case-insensitive lookup (`thm22`, `THM22`).
    pub fn parse(name: &str) -> Option<IdentityId> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(name))
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Deviation {
    /// The difference is the zero element.
    ExactZero,
    /// Symbolic difference with this many surviving terms.
    NonzeroTerms(usize),
    /// Nonzero exact scalar difference.
    Exact(BigRat),
    /// `|lhs - rhs|` and the certified bound it is compared against, both as
    /// exact values of the binary floats involved.
    Numeric { value: BigRat, bound: BigRat },
}

impl Deviation {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Deviation::ExactZero)
    }
}

/// Ordered key/value pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fields(pub Vec<(String, String)>);

impl Fields {
    pub fn new() -> Self {
        Fields(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// `k1=v1;k2=v2`, used for CSV and text rendering.
    pub fn compact(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub params: Fields,
    pub mode: Mode,
    pub passed: bool,
    pub deviation: Deviation,
    pub witness: Option<Fields>,
    /// Computed quantities worth reporting regardless of the outcome.
    pub details: Fields,
}

impl VerificationReport {
    pub fn new(identity: IdentityId, mode: Mode, params: Fields) -> Self {
        VerificationReport {
            identity,
            params,
            mode,
            passed: true,
            deviation: Deviation::ExactZero,
            witness: None,
            details: Fields::new(),
        }
    }

    /// Symbolic outcome from a difference of identity sides.
    pub fn symbolic(identity: IdentityId, params: Fields, difference: &LaurentXY) -> Self {
        let mut report = Self::new(identity, Mode::Symbolic, params);
        report.record_difference(difference, None);
        report
    }

    /// Folds a (further) symbolic difference into the report; the first
    /// nonzero one determines the witness.
    pub fn record_difference(&mut self, difference: &LaurentXY, label: Option<&str>) {
        if difference.is_zero() {
            return;
        }
        let nonzero = match self.deviation {
            Deviation::NonzeroTerms(k) => k + difference.len(),
            _ => difference.len(),
        };
        self.passed = false;
        self.deviation = Deviation::NonzeroTerms(nonzero);
        if self.witness.is_none() {
            let ((ex, ey), c) = difference.terms().next().expect("nonzero difference");
            let mut w = Fields::new();
            if let Some(label) = label {
                w.push("check", label);
            }
            w.push("x_exp", ex);
            w.push("y_exp", ey);
            w.push("coefficient", c.to_coeff_string());
            self.witness = Some(w);
        }
    }

    pub fn deviation_string(&self) -> String {
        match &self.deviation {
            Deviation::ExactZero => "exact-zero".to_string(),
            Deviation::NonzeroTerms(k) => format!("nonzero:{k}"),
            Deviation::Exact(v) => v.to_string(),
            Deviation::Numeric { value, .. } => format_sci(value, 6),
        }
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerificationReport", 7)?;
        s.serialize_field("identity", self.identity.as_str())?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("mode", self.mode.as_str())?;
        s.serialize_field("passed", &self.passed)?;
        s.serialize_field("deviation", &self.deviation_string())?;
        s.serialize_field("witness", &self.witness)?;
        s.serialize_field("details", &self.details)?;
        s.end()
    }
}
