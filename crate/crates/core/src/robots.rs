//! Robot model documents and the bundled models.
//!
//! A document is JSON with a `name`, optional `qlim`, and exactly one of
//! `ets` (sequence text) or `dh` (a DH table converted on load):
//!
//! ```json
//! { "name": "r1", "ets": "rz(q0) tx(1)", "qlim": [[-3.1, 3.1]] }
//! { "name": "r2", "dh": { "convention": "standard",
//!     "links": [ { "theta": "q", "d": 0.3, "a": 0, "alpha": 1.57 } ] } }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ets::{dh_to_ets, format_ets, parse_ets, DhConvention, DhLink, DhTable, Ets, JointKind};

/// A named ETS with optional joint limits (carried as metadata only).
#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel {
    pub name: String,
    pub ets: Ets<f64>,
    pub qlim: Option<Vec<[f64; 2]>>,
}

impl RobotModel {
    pub fn new(name: impl Into<String>, ets: Ets<f64>, qlim: Option<Vec<[f64; 2]>>) -> Result<Self> {
        let model = RobotModel {
            name: name.into(),
            ets,
            qlim,
        };
        model.check_limits()?;
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.ets.n()
    }

    fn check_limits(&self) -> Result<()> {
        let Some(qlim) = &self.qlim else {
            return Ok(());
        };
        if qlim.len() != self.n() {
            return Err(Error::Limit(format!(
                "qlim has {} pairs but the model has {} joints",
                qlim.len(),
                self.n()
            )));
        }
        for (j, [lo, hi]) in qlim.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::Limit(format!("qlim[{j}] is not finite")));
            }
            if lo >= hi {
                return Err(Error::Limit(format!(
                    "qlim[{j}]: lower bound {lo} is not below upper bound {hi}"
                )));
            }
        }
        Ok(())
    }

    /// The model as an ETS-form document.
    pub fn to_json(&self) -> String {
        let doc = EtsDoc {
            name: &self.name,
            ets: format_ets(&self.ets),
            qlim: self.qlim.as_deref(),
        };
        serde_json::to_string_pretty(&doc).expect("model document always serializes")
    }
}

#[derive(Serialize)]
struct EtsDoc<'a> {
    name: &'a str,
    ets: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    qlim: Option<&'a [[f64; 2]]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    name: String,
    #[serde(default)]
    ets: Option<String>,
    #[serde(default)]
    dh: Option<DhDoc>,
    #[serde(default)]
    qlim: Option<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DhDoc {
    convention: ConventionDoc,
    links: Vec<DhLinkDoc>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum ConventionDoc {
    Standard,
    Modified,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DhLinkDoc {
    theta: Slot,
    d: Slot,
    a: f64,
    alpha: f64,
    #[serde(default)]
    offset: Option<f64>,
}

/// A DH entry that is either a number or the joint marker `"q"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Slot {
    Value(f64),
    Marker(String),
}

impl Slot {
    fn is_joint(&self, link: usize, field: &str) -> Result<bool> {
        match self {
            Slot::Value(_) => Ok(false),
            Slot::Marker(s) if s == "q" => Ok(true),
            Slot::Marker(s) => Err(Error::Schema(format!(
                "links[{link}].{field}: expected a number or \"q\", got \"{s}\""
            ))),
        }
    }

    fn value(&self) -> f64 {
        match self {
            Slot::Value(v) => *v,
            Slot::Marker(_) => 0.0,
        }
    }
}

impl DhDoc {
    fn into_table(self) -> Result<DhTable<f64>> {
        let convention = match self.convention {
            ConventionDoc::Standard => DhConvention::Standard,
            ConventionDoc::Modified => DhConvention::Modified,
        };
        let mut links = Vec::with_capacity(self.links.len());
        for (i, l) in self.links.into_iter().enumerate() {
            let kind = match (l.theta.is_joint(i, "theta")?, l.d.is_joint(i, "d")?) {
                (true, false) => JointKind::Revolute,
                (false, true) => JointKind::Prismatic,
                _ => {
                    return Err(Error::Schema(format!(
                        "links[{i}]: exactly one of theta and d must be \"q\""
                    )))
                }
            };
            links.push(DhLink {
                theta: l.theta.value(),
                d: l.d.value(),
                a: l.a,
                alpha: l.alpha,
                kind,
                offset: l.offset.unwrap_or(0.0),
            });
        }
        DhTable::new(convention, links)
    }
}

/// Parses and validates a model document.
pub fn load_model(text: &str) -> Result<RobotModel> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let ets = match (doc.ets, doc.dh) {
        (Some(s), None) => parse_ets(&s)?,
        (None, Some(dh)) => dh_to_ets(&dh.into_table()?)?,
        (Some(_), Some(_)) => return Err(Error::Schema("document has both \"ets\" and \"dh\"".into())),
        (None, None) => return Err(Error::Schema("document needs one of \"ets\" or \"dh\"".into())),
    };
    RobotModel::new(doc.name, ets, doc.qlim)
}

/// Reads and loads a model document from disk.
pub fn load_model_file(path: impl AsRef<Path>) -> Result<RobotModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load_model(&text)
}

const BUNDLED: [(&str, &str); 4] = [
    ("planar2r", include_str!("../models/planar2r.json")),
    ("mixed4", include_str!("../models/mixed4.json")),
    ("panda7", include_str!("../models/panda7.json")),
    ("panda7_dh", include_str!("../models/panda7_dh.json")),
];

/// Source documents of the bundled models as `(name, json)`.
pub fn bundled_documents() -> &'static [(&'static str, &'static str)] {
    &BUNDLED
}

/// All bundled models, loaded through [`load_model`].
pub fn bundled_models() -> Vec<RobotModel> {
    BUNDLED
        .iter()
        .map(|(name, text)| load_model(text).unwrap_or_else(|e| panic!("bundled model {name}: {e}")))
        .collect()
}

/// A bundled model by name.
pub fn bundled_model(name: &str) -> Option<RobotModel> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| load_model(text).expect("bundled models are valid"))
}
