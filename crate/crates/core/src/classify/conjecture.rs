use serde::Serialize;

use crate::covers::{is_unmixed, UnmixedMethod};
use crate::error::Result;
use crate::graph::WeightedOrientedGraph;
use crate::ideal::edge_ideal;
use crate::oracle::{oracle_cm_monomial, Field};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureVerdict {
    /// Unmixed with a Cohen-Macaulay radical, and Cohen-Macaulay itself.
    Pass,
    /// Unmixed with a Cohen-Macaulay radical, but not Cohen-Macaulay.
    Counterexample,
    /// The hypothesis fails.
    Vacuous,
}

impl ConjectureVerdict {
    pub fn label(self) -> &'static str {
        match self {
            ConjectureVerdict::Pass => "pass",
            ConjectureVerdict::Counterexample => "counterexample",
            ConjectureVerdict::Vacuous => "vacuous",
        }
    }
}

/// Evaluation of "unmixed and `I(G)` Cohen-Macaulay implies `I(D)`
/// Cohen-Macaulay" on one graph. Fields that were not needed to reach the
/// verdict stay `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub verdict: ConjectureVerdict,
    pub unmixed: bool,
    /// The radical `I(G)` is Cohen-Macaulay.
    pub radical_cm: Option<bool>,
    /// `I(D)` is Cohen-Macaulay.
    pub cm: Option<bool>,
}

/// Boundary weights are normalized before anything is evaluated.
pub fn check_conjecture(
    d: &WeightedOrientedGraph,
    field: Field,
    limits: &Limits,
) -> Result<ConjectureReport> {
    conjecture_with_cm(d, field, limits, None)
}

/// Like [`check_conjecture`], reusing an already computed Cohen-Macaulay
/// verdict for `I(D)` when one is given.
pub(crate) fn conjecture_with_cm(
    d: &WeightedOrientedGraph,
    field: Field,
    limits: &Limits,
    known_cm: Option<bool>,
) -> Result<ConjectureReport> {
    let d = d.normalize_boundary_weights();
    let unmixed = is_unmixed(&d, UnmixedMethod::StrongL3, limits)?.unmixed;
    let vacuous = |radical_cm| ConjectureReport {
        verdict: ConjectureVerdict::Vacuous,
        unmixed,
        radical_cm,
        cm: known_cm,
    };
    if !unmixed {
        return Ok(vacuous(None));
    }
    let ideal = edge_ideal(&d);
    if !oracle_cm_monomial(&ideal.radical(), field, limits)? {
        return Ok(vacuous(Some(false)));
    }
    let cm = match known_cm {
        Some(cm) => cm,
        None => oracle_cm_monomial(&ideal, field, limits)?,
    };
    Ok(ConjectureReport {
        verdict: if cm {
            ConjectureVerdict::Pass
        } else {
            ConjectureVerdict::Counterexample
        },
        unmixed,
        radical_cm: Some(true),
        cm: Some(cm),
    })
}
