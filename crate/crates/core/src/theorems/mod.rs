//! Structural deciders for ECD products and the constructive ECD sets that
//! come with them.
//!
//! Every positive decision made from a characterization carries a
//! certificate built directly from the structure (never by search), and the
//! certificate is checked against the explicitly constructed product before
//! the report is returned.

mod cartesian;
mod direct;
mod strong_lex;

pub use cartesian::{
    build_ecd_cartesian_cycle, build_ecd_cartesian_star, build_mixed_star_ecd,
    decide_cartesian_cycle, decide_cartesian_star, mixed_star_preconditions, MixedStarOutcome,
};
pub use direct::{
    build_ecd_direct_cycles, decide_direct_cycles, decide_direct_paths, direct_cycle_structure,
    direct_cycle_witness, neighboring_source_distances, path_product_certificate,
    DirectCycleWitness,
};
pub use strong_lex::{decide_lex, decide_strong};

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families::FamilyWitness;
use crate::solver::{find_ecd_set, is_ecd_set, EcdCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Theorem,
    BruteForce,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecisionReport {
    /// how the product was built, e.g. `strong(D[3], F[4])`
    pub product: String,
    pub order: usize,
    pub decision: bool,
    pub method: Method,
    /// family witnesses, relabeled to the factor they describe
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<FamilyWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EcdCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation: Option<String>,
}

impl DecisionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn certificate_size(&self) -> Option<usize> {
        self.certificate.as_ref().map(|c| c.set.len())
    }

    fn positive(
        product: String,
        p: &Digraph,
        set: Vec<usize>,
        witnesses: Vec<FamilyWitness>,
    ) -> Result<Self> {
        let certificate = is_ecd_set(p, &set)?.ok_or_else(|| {
            Error::witness(format!(
                "constructed set {set:?} is not an ECD set of {product}"
            ))
        })?;
        Ok(DecisionReport {
            product,
            order: p.order(),
            decision: true,
            method: Method::Theorem,
            witnesses,
            certificate: Some(certificate),
            refutation: None,
        })
    }

    fn negative(product: String, p: &Digraph, refutation: impl Into<String>) -> Self {
        DecisionReport {
            product,
            order: p.order(),
            decision: false,
            method: Method::Theorem,
            witnesses: Vec::new(),
            certificate: None,
            refutation: Some(refutation.into()),
        }
    }

    fn brute_force(product: String, p: &Digraph) -> Self {
        let certificate = find_ecd_set(p);
        DecisionReport {
            product,
            order: p.order(),
            decision: certificate.is_some(),
            method: Method::BruteForce,
            witnesses: Vec::new(),
            refutation: certificate.is_none().then(|| "no ECD set".to_string()),
            certificate,
        }
    }
}
