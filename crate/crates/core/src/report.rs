//! Pass/fail records shared by the verification suites.

use serde::Serialize;

/// One verified claim. `claim` is a stable identifier of the statement being
/// checked, so failures can be traced back to it.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: &str, claim: &str, pass: bool, detail: String) -> Self {
        Check { id: id.into(), claim: claim.into(), pass, detail }
    }
}

/// Runs `f`, turning an error into a failed check.
pub fn guarded(id: &str, claim: &str, f: impl FnOnce() -> crate::Result<(bool, String)>) -> Check {
    match f() {
        Ok((pass, detail)) => Check::new(id, claim, pass, detail),
        Err(e) => Check::new(id, claim, false, format!("error: {e}")),
    }
}
