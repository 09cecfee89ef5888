//! Machine-readable audit reports.
//!
//! Every audit produces an ordered list of [`Check`] records; identical runs
//! produce byte-identical JSON because all iteration in the library is over
//! ordered containers and sample sets, and randomized audits are driven by an
//! explicit seed.

use serde::{Deserialize, Serialize};

use crate::conditions::standing_conditions;
use crate::duality::{duality_audit, SelfDualSystem};
use crate::hecke::hecke_consistency_audit;
use crate::relations::{audit_family, Family};
use crate::repr::intertwining_check;
use crate::system::{CosetError, InstanceConfig};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    /// Stable identifier of the relation or condition checked.
    pub id: String,
    /// The sample tuple the check ran on, rendered canonically.
    pub tuple: String,
    pub pass: bool,
    /// On failure: a rendering of the disagreeing values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>, tuple: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            tuple: tuple.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        tuple: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Check {
            id: id.into(),
            tuple: tuple.into(),
            pass: false,
            witness: Some(truncate(witness.into())),
        }
    }

    pub fn of(
        id: impl Into<String>,
        tuple: impl Into<String>,
        pass: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if pass {
            Check::pass(id, tuple)
        } else {
            Check::fail(id, tuple, witness())
        }
    }
}

fn truncate(mut s: String) -> String {
    const LIMIT: usize = 400;
    if s.len() > LIMIT {
        let mut cut = LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub operation: String,
    pub seed: u64,
    pub total: usize,
    pub failed: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn from_checks(
        instance: impl Into<String>,
        operation: impl Into<String>,
        seed: u64,
        checks: Vec<Check>,
    ) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        Report {
            instance: instance.into(),
            operation: operation.into(),
            seed,
            total: checks.len(),
            failed,
            pass: failed == 0,
            checks,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// The full audit: standing conditions, the four relation families, Hecke
/// consistency, duality, and the operator intertwining families.
pub fn full_audit<S: SelfDualSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    seed: u64,
) -> Result<Report, CosetError> {
    let mut checks = Vec::new();
    checks.extend(standing_conditions(sys, cfg));
    for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
        checks.extend(audit_family(sys, cfg, family, false));
    }
    checks.extend(hecke_consistency_audit(sys, cfg, seed));
    checks.extend(duality_audit(sys, cfg));
    checks.extend(intertwining_check(sys, cfg, false));
    Ok(Report::from_checks(sys.name(), "audit", seed, checks))
}
