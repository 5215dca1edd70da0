use serde::{Deserialize, Serialize};

use super::{AxiomMetrics, SchemaView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Classification,
    Descriptive,
    DomainLinguistic,
    Mixed,
}

/// Minimum axiom shares for each profile. Checked in the order
/// classification, descriptive, domain-linguistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileThresholds {
    pub classification: f64,
    pub descriptive: f64,
    pub domain_linguistic: f64,
}

impl Default for ProfileThresholds {
    fn default() -> Self {
        ProfileThresholds {
            classification: 0.5,
            descriptive: 0.5,
            domain_linguistic: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OntologyProfile {
    pub value: ProfileKind,
    pub metrics: AxiomMetrics,
    pub thresholds: ProfileThresholds,
}

impl OntologyProfile {
    fn share(part: usize, total: usize) -> f64 {
        if total == 0 {
            0.0
        } else {
            part as f64 / total as f64
        }
    }

    pub fn subclass_share(&self) -> f64 {
        Self::share(self.metrics.subclass_axioms, self.metrics.total_axioms)
    }

    pub fn data_property_share(&self) -> f64 {
        Self::share(self.metrics.data_property_assertions, self.metrics.total_axioms)
    }

    pub fn lexical_share(&self) -> f64 {
        Self::share(self.metrics.lexical_annotations, self.metrics.total_axioms)
    }
}

pub fn classify_profile(v: &SchemaView) -> OntologyProfile {
    classify_profile_with(v, ProfileThresholds::default())
}

pub fn classify_profile_with(v: &SchemaView, thresholds: ProfileThresholds) -> OntologyProfile {
    let mut profile = OntologyProfile {
        value: ProfileKind::Mixed,
        metrics: v.metrics,
        thresholds,
    };
    if v.metrics.total_axioms == 0 {
        return profile;
    }
    profile.value = if profile.subclass_share() >= thresholds.classification {
        ProfileKind::Classification
    } else if profile.data_property_share() >= thresholds.descriptive {
        ProfileKind::Descriptive
    } else if profile.lexical_share() >= thresholds.domain_linguistic {
        ProfileKind::DomainLinguistic
    } else {
        ProfileKind::Mixed
    };
    profile
}
