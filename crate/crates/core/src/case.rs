use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The shape of instance a case operates on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Two square matrices `a`, `b` of equal size.
    Pair,
    /// `x` (n×m) and `y` (m×n) for Cline's formula.
    Factors,
    /// A single square matrix.
    Square,
    /// The four blocks of a 2×2 operator matrix.
    Block,
    /// `A`, `B`, `C` with `D = CA^dB`.
    Schur,
}

/// Every result with a checkable hypothesis set or formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    AbZero,
    Cline,
    SquareReduction,
    T22,
    T22Dual,
    C23,
    L24,
    T25,
    T25Dual,
    T31,
    C32,
    T33,
    C34,
    L36,
    L37,
    T38,
    C39,
    L310,
    T311,
    C312,
    T41,
    C42,
    T44,
    C45,
    C46,
}

impl Case {
    pub const ALL: [Case; 25] = [
        Case::AbZero,
        Case::Cline,
        Case::SquareReduction,
        Case::T22,
        Case::T22Dual,
        Case::C23,
        Case::L24,
        Case::T25,
        Case::T25Dual,
        Case::T31,
        Case::C32,
        Case::T33,
        Case::C34,
        Case::L36,
        Case::L37,
        Case::T38,
        Case::C39,
        Case::L310,
        Case::T311,
        Case::C312,
        Case::T41,
        Case::C42,
        Case::T44,
        Case::C45,
        Case::C46,
    ];

    pub const BLOCK: [Case; 11] = [
        Case::T31,
        Case::C32,
        Case::T33,
        Case::C34,
        Case::L36,
        Case::L37,
        Case::T38,
        Case::C39,
        Case::L310,
        Case::T311,
        Case::C312,
    ];

    pub const SCHUR: [Case; 5] = [Case::T41, Case::C42, Case::T44, Case::C45, Case::C46];

    pub fn id(self) -> &'static str {
        match self {
            Case::AbZero => "L2.1",
            Case::Cline => "cline",
            Case::SquareReduction => "square",
            Case::T22 => "T2.2",
            Case::T22Dual => "T2.2-dual",
            Case::C23 => "C2.3",
            Case::L24 => "L2.4",
            Case::T25 => "T2.5",
            Case::T25Dual => "T2.5-dual",
            Case::T31 => "T3.1",
            Case::C32 => "C3.2",
            Case::T33 => "T3.3",
            Case::C34 => "C3.4",
            Case::L36 => "L3.6",
            Case::L37 => "L3.7",
            Case::T38 => "T3.8",
            Case::C39 => "C3.9",
            Case::L310 => "L3.10",
            Case::T311 => "T3.11",
            Case::C312 => "C3.12",
            Case::T41 => "T4.1",
            Case::C42 => "C4.2",
            Case::T44 => "T4.4",
            Case::C45 => "C4.5",
            Case::C46 => "C4.6",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Case::AbZero | Case::T22 | Case::T22Dual | Case::C23 | Case::L24 | Case::T25 | Case::T25Dual => Family::Pair,
            Case::Cline => Family::Factors,
            Case::SquareReduction => Family::Square,
            Case::T41 | Case::C42 | Case::T44 | Case::C45 | Case::C46 => Family::Schur,
            _ => Family::Block,
        }
    }

    fn valid_ids() -> String {
        Case::ALL.iter().map(|c| c.id()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case, Error> {
        Case::ALL
            .iter()
            .copied()
            .find(|c| c.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownCase { given: s.to_string(), valid: Case::valid_ids() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for c in Case::ALL {
            assert_eq!(c.id().parse::<Case>().unwrap(), c);
        }
        assert_eq!("l3.10".parse::<Case>().unwrap(), Case::L310);
        let err = "T9.9".parse::<Case>().unwrap_err().to_string();
        assert!(err.contains("T2.2") && err.contains("C4.6"), "{err}");
    }
}
