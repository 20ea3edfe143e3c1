//! Layout-level similarity and dissimilarity measures, plus the single-layout
//! principle scores (overlap, alignment).

mod docemd;
mod docsim;
mod ltsim;
mod maxiou;
mod meaniou;
mod principles;
mod raster;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Layout;

pub use docemd::{docemd, DEFAULT_GRID};
pub use docsim::docsim;
pub(crate) use ltsim::check_sigma;
pub use ltsim::{ltsim, ltsim_cost, ltsim_emd, ltsim_emd_value, ltsim_plan};
pub use maxiou::maxiou_beta;
pub use meaniou::{meaniou, DEFAULT_RESOLUTION};
pub use principles::{alignment, overlap};

/// Identifier of a layout-level measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    Ltsim,
    LtsimEmd,
    Docsim,
    MaxiouBeta,
    Meaniou,
    Docemd,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 6] = [
        MeasureKind::Ltsim,
        MeasureKind::LtsimEmd,
        MeasureKind::Docsim,
        MeasureKind::MaxiouBeta,
        MeasureKind::Meaniou,
        MeasureKind::Docemd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Ltsim => "ltsim",
            MeasureKind::LtsimEmd => "ltsim-emd",
            MeasureKind::Docsim => "docsim",
            MeasureKind::MaxiouBeta => "maxiou-beta",
            MeasureKind::Meaniou => "meaniou",
            MeasureKind::Docemd => "docemd",
        }
    }

    /// Dissimilarities (EMD-style) are ranked by their negation.
    pub fn is_dissimilarity(self) -> bool {
        matches!(self, MeasureKind::LtsimEmd | MeasureKind::Docemd)
    }

    /// Maps a raw value onto a "higher is more similar" scale.
    pub fn oriented(self, value: f64) -> f64 {
        if self.is_dissimilarity() {
            -value
        } else {
            value
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// Tunable parameters shared by the measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureParams {
    /// LTSim scaling parameter.
    pub sigma: f64,
    /// MeanIoU raster resolution (cells per side).
    pub resolution: usize,
    /// DocEMD sampling lattice (points per side).
    pub grid: usize,
}

impl Default for MeasureParams {
    fn default() -> Self {
        MeasureParams {
            sigma: 1.0,
            resolution: DEFAULT_RESOLUTION,
            grid: DEFAULT_GRID,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub measure: MeasureKind,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl MeasureValue {
    pub(crate) fn new(measure: MeasureKind, value: f64) -> Self {
        MeasureValue {
            value,
            measure,
            meta: BTreeMap::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }
}

/// Evaluates `kind` on a layout pair.
pub fn evaluate(kind: MeasureKind, a: &Layout, b: &Layout, params: &MeasureParams) -> Result<MeasureValue> {
    match kind {
        MeasureKind::Ltsim => ltsim(a, b, params.sigma),
        MeasureKind::LtsimEmd => ltsim_emd(a, b),
        MeasureKind::Docsim => docsim(a, b),
        MeasureKind::MaxiouBeta => maxiou_beta(a, b),
        MeasureKind::Meaniou => meaniou(a, b, params.resolution),
        MeasureKind::Docemd => docemd(a, b, params.grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in MeasureKind::ALL {
            assert_eq!(k.name().parse::<MeasureKind>().unwrap(), k);
            assert_eq!(serde_json::to_value(k).unwrap(), serde_json::json!(k.name()));
        }
        assert_eq!("MaxIoU_Beta".parse::<MeasureKind>().unwrap(), MeasureKind::MaxiouBeta);
        assert!(matches!("fid".parse::<MeasureKind>(), Err(Error::UnknownMeasure(_))));
    }
}
