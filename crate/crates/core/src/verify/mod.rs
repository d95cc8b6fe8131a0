//! Exact identity checkers and the grid campaign runner.
//!
//! Every checker builds both sides of an identity by independent routes and
//! passes only on equality of canonical forms. Parameter collisions are
//! reported as skipped; every other mismatch or error is a failure.

mod checks;
mod grid;
mod report;

pub use checks::{
    check_gseries_chain, check_moebius_interp, check_mult_formula, check_prop1, check_prop2,
    check_section4_closed_form, section4_rhs,
};
pub use grid::{run_grid, GridSpec, IntRange};
pub use report::{IdentityCase, Report, Status, Summary};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The identities a campaign can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Prop1,
    Prop2,
    Mult,
    Section4,
    Moebius,
    Gseries,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Prop1,
        Identity::Prop2,
        Identity::Mult,
        Identity::Section4,
        Identity::Moebius,
        Identity::Gseries,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Prop1 => "prop1",
            Identity::Prop2 => "prop2",
            Identity::Mult => "mult",
            Identity::Section4 => "section4",
            Identity::Moebius => "moebius",
            Identity::Gseries => "gseries",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Identity::ALL
            .into_iter()
            .find(|i| i.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}
