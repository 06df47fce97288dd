use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::operators::{Coef, Instance, OperatorExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum Family {
    A_ddeq,
    B_diff_formulas,
    C_partial_formulas,
    D_recursion_sums,
    E_first_order,
    F_second_order,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::A_ddeq,
        Family::B_diff_formulas,
        Family::C_partial_formulas,
        Family::D_recursion_sums,
        Family::E_first_order,
        Family::F_second_order,
    ];

    /// Single-letter code `A`–`F`.
    pub fn letter(self) -> char {
        match self {
            Family::A_ddeq => 'A',
            Family::B_diff_formulas => 'B',
            Family::C_partial_formulas => 'C',
            Family::D_recursion_sums => 'D',
            Family::E_first_order => 'E',
            Family::F_second_order => 'F',
        }
    }

    /// Accepts the letter or the full name.
    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| {
            s.eq_ignore_ascii_case(&f.letter().to_string()) || s.eq_ignore_ascii_case(f.name())
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A_ddeq => "A_ddeq",
            Family::B_diff_formulas => "B_diff_formulas",
            Family::C_partial_formulas => "C_partial_formulas",
            Family::D_recursion_sums => "D_recursion_sums",
            Family::E_first_order => "E_first_order",
            Family::F_second_order => "F_second_order",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    F41,
    F42,
}

impl Target {
    pub fn parse(s: &str) -> Option<Target> {
        match s.to_ascii_uppercase().as_str() {
            "F41" => Some(Target::F41),
            "F42" => Some(Target::F42),
            _ => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::F41 => "F41",
            Target::F42 => "F42",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedStatus {
    Verified,
    SuspectedTypo,
}

/// Parameter-domain restrictions of one relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Constraints {
    pub k1_one: bool,
    pub k2_one: bool,
    pub k_one: bool,
    /// The relation carries a free integer (`r` or `s`).
    pub indexed: bool,
    /// Smallest admissible value of that integer.
    pub min_index: i64,
    /// `k1` and `k2` must have opposite parity.
    pub k_parity_differs: bool,
}

impl Constraints {
    pub fn indexed(min_index: i64) -> Self {
        Constraints {
            indexed: true,
            min_index,
            ..Default::default()
        }
    }
}

/// `coef · op [instance]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelTerm {
    pub coef: Coef,
    pub op: OperatorExpr,
    pub instance: Instance,
}

/// `Σ lhs = Σ rhs`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<RelTerm>,
    pub rhs: Vec<RelTerm>,
}

pub type RelationBuilder = Arc<dyn Fn(i64) -> Relation + Send + Sync>;

/// One catalogued relation.
#[derive(Clone)]
pub struct Identity {
    pub id: String,
    pub family: Family,
    pub target: Target,
    /// Human-readable locator of the relation in its source.
    pub anchor: String,
    pub constraints: Constraints,
    pub expected_status: ExpectedStatus,
    pub justification: Option<String>,
    /// Id of the cross-linked corrected or as-printed counterpart.
    pub twin: Option<String>,
    pub build: RelationBuilder,
}

impl Identity {
    pub fn relation(&self, index: i64) -> Relation {
        (self.build)(index)
    }

    /// A corrected variant of a suspected entry.
    pub fn is_twin(&self) -> bool {
        self.id.ends_with(".corrected")
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("target", &self.target)
            .field("expected_status", &self.expected_status)
            .field("twin", &self.twin)
            .finish_non_exhaustive()
    }
}
