use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::matrix::Matrix;

/// One named annihilation condition: `holds` iff `residual` is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    pub residual: Matrix,
}

impl Condition {
    pub fn zero(name: impl Into<String>, residual: Matrix) -> Self {
        Condition { name: name.into(), holds: residual.is_zero(), residual }
    }
}

// The residual is only worth printing when the condition fails.
impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Condition", if self.holds { 2 } else { 3 })?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("holds", &self.holds)?;
        if !self.holds {
            st.serialize_field("residual", &self.residual)?;
        }
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub case: String,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn new(case: impl Into<String>) -> Self {
        ConditionReport { case: case.into(), conditions: Vec::new() }
    }

    /// Records `name` as holding iff `residual` is the zero matrix.
    pub fn require_zero(&mut self, name: impl Into<String>, residual: Matrix) -> &mut Self {
        self.conditions.push(Condition::zero(name, residual));
        self
    }

    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| !c.holds)
    }

    /// `Ok(())` when every condition holds, otherwise a hypothesis violation
    /// naming the first failing condition.
    pub fn into_hypothesis(self) -> Result<(), Error> {
        match self.conditions.into_iter().find(|c| !c.holds) {
            None => Ok(()),
            Some(c) => Err(Error::HypothesisViolation { condition: c.name, residual: c.residual }),
        }
    }

    /// Same as [`into_hypothesis`](Self::into_hypothesis) but reports a failed
    /// proof step of `context`.
    pub fn into_obligation(self, context: &str) -> Result<(), Error> {
        match self.conditions.into_iter().find(|c| !c.holds) {
            None => Ok(()),
            Some(c) => Err(Error::ProofObligation {
                context: context.to_string(),
                obligation: c.name,
                residual: c.residual,
            }),
        }
    }
}
