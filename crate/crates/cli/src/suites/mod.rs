//! The verification suites, one per group of properties.

pub mod axioms;
pub mod cogroup;
pub mod comparison;
pub mod cone;
pub mod filtered;
pub mod fractions;
pub mod minus;
pub mod stability;
pub mod triangles;

use serde::{Deserialize, Serialize};

use crate::report::{Config, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Comparison,
    Fractions,
    Cone,
    Triangles,
    Minus,
    Cogroup,
    Stability,
    Filtered,
}

/// Default sweep size and generator bounds of a suite.
pub struct Defaults {
    pub cases: u64,
    pub max_dim: usize,
    pub max_deg: usize,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Comparison,
        Suite::Fractions,
        Suite::Cone,
        Suite::Triangles,
        Suite::Minus,
        Suite::Cogroup,
        Suite::Stability,
        Suite::Filtered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Comparison => "comparison",
            Suite::Fractions => "fractions",
            Suite::Cone => "cone",
            Suite::Triangles => "triangles",
            Suite::Minus => "minus",
            Suite::Cogroup => "cogroup",
            Suite::Stability => "stability",
            Suite::Filtered => "filtered",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn defaults(self) -> Defaults {
        let (cases, max_dim, max_deg) = match self {
            Suite::Axioms => (200, 6, 4),
            Suite::Comparison => (100, 3, 2),
            Suite::Fractions => (100, 6, 4),
            Suite::Cone => (200, 6, 4),
            Suite::Triangles => (100, 6, 4),
            Suite::Minus => (50, 6, 4),
            Suite::Cogroup => (50, 6, 4),
            Suite::Stability => (50, 6, 4),
            Suite::Filtered => (100, 6, 4),
        };
        Defaults {
            cases,
            max_dim,
            max_deg,
        }
    }

    pub fn run(self, cfg: &Config) -> VerificationReport {
        match self {
            Suite::Axioms => axioms::run(cfg),
            Suite::Comparison => comparison::run(cfg),
            Suite::Fractions => fractions::run(cfg),
            Suite::Cone => cone::run(cfg),
            Suite::Triangles => triangles::run(cfg),
            Suite::Minus => minus::run(cfg),
            Suite::Cogroup => cogroup::run(cfg),
            Suite::Stability => stability::run(cfg),
            Suite::Filtered => filtered::run(cfg),
        }
    }
}
