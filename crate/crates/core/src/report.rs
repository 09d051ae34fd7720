//! Structured pass/fail records shared by every check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Maximum witnesses retained per report.
pub const WITNESS_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// One offending configuration: the points involved and the numbers that
/// show the failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<String>,
    #[serde(with = "real_map")]
    pub values: BTreeMap<String, f64>,
}

impl Witness {
    pub fn new(points: Vec<String>) -> Self {
        Witness { points, values: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.values.insert(key.to_string(), value);
        self
    }

    fn sort_key(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v:e}")).collect();
        format!("{}|{}", self.points.join(";"), vals.join(";"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    /// Number of individual conditions evaluated.
    pub checked: usize,
    pub failures: usize,
    pub tolerance: f64,
    pub witnesses: Vec<Witness>,
    /// Named numbers worth reporting alongside the verdict.
    #[serde(default, with = "real_map")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).copied()
    }

    pub fn summary(&self) -> String {
        let verdict = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        format!(
            "{verdict} {} ({} checked, {} failed, tol {:e})",
            self.check, self.checked, self.failures, self.tolerance
        )
    }
}

/// Accumulates condition outcomes into a [`VerificationReport`].
#[derive(Debug)]
pub struct ReportBuilder {
    check: String,
    tolerance: f64,
    checked: usize,
    failures: usize,
    witnesses: Vec<Witness>,
    metrics: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, tolerance: f64) -> Self {
        ReportBuilder {
            check: check.into(),
            tolerance,
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records one condition. The witness closure only runs on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.witnesses.push(witness());
        }
        ok
    }

    /// Records a failure that is not tied to a single condition, e.g. an
    /// evaluation error.
    pub fn fail(&mut self, witness: Witness) {
        self.checked += 1;
        self.failures += 1;
        self.witnesses.push(witness);
    }

    pub fn metric(&mut self, key: &str, value: f64) -> &mut Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn max_metric(&mut self, key: &str, value: f64) -> &mut Self {
        let slot = self.metrics.entry(key.to_string()).or_insert(value);
        if value > *slot {
            *slot = value;
        }
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    /// Sorts witnesses canonically, keeps the first [`WITNESS_CAP`].
    pub fn finish(self) -> VerificationReport {
        let mut witnesses = self.witnesses;
        witnesses.sort_by_cached_key(Witness::sort_key);
        witnesses.truncate(WITNESS_CAP);
        VerificationReport {
            check: self.check,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            checked: self.checked,
            failures: self.failures,
            tolerance: self.tolerance,
            witnesses,
            metrics: self.metrics,
            notes: self.notes,
        }
    }
}

/// JSON has no infinities; they travel as the strings `"inf"` / `"-inf"`.
mod real_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Real {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, Real> = m
            .iter()
            .map(|(k, &v)| {
                let r = if v.is_finite() {
                    Real::Num(v)
                } else if v.is_nan() {
                    Real::Text("nan".into())
                } else if v > 0.0 {
                    Real::Text("inf".into())
                } else {
                    Real::Text("-inf".into())
                };
                (k, r)
            })
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let raw = BTreeMap::<String, Real>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, r)| {
                let v = match r {
                    Real::Num(v) => v,
                    Real::Text(t) => match t.as_str() {
                        "inf" => f64::INFINITY,
                        "-inf" => f64::NEG_INFINITY,
                        "nan" => f64::NAN,
                        _ => return Err(serde::de::Error::custom(format!("bad number {t}"))),
                    },
                };
                Ok((k, v))
            })
            .collect()
    }
}
