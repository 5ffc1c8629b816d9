//! The closed set of claims this crate knows how to construct or verify.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// `γ(G) ≤ γ(C(G,f)) ≤ 2γ(G)`.
    Bounds,
    /// Star chains realize every value between `a` and `2a`.
    Realization,
    /// Six-condition characterization of `γ(C(G,f)) = γ(G)`.
    Gen,
    /// Cycle specialization of the lower-bound characterization.
    LbCycle,
    /// `C_3`: upper bound attained iff `f` is not constant.
    C3,
    /// Closed form for `γ(C(C_n, id))`.
    CnId,
    /// Permutations attain the lower bound only on the `C_4` prism.
    C4Perm,
    /// `n ≡ 1 (mod 3)`: a `2k+1` set for every map.
    Mod1,
    /// `C_5`: every map stays strictly below `2γ(C_5)`.
    C5Exhaustive,
    /// `n ≡ 2 (mod 3)`, non-permutations: pigeonhole construction.
    NonPerm3k2,
    /// `n ≡ 2 (mod 3)`: a pair violating distance-residue preservation.
    Distance3k2,
    /// `n ≡ 2 (mod 3)`: residue-preserving permutations give the prism.
    PermStructure3k2,
    /// Monotone residue-preserving sequences satisfy `f(i) ≡ i (mod 3)`.
    LemmaUi,
    /// Three-translate permutations attaining `2k`.
    TtPerm,
    /// Three-translate non-permutations attaining `2k`.
    TtNonPerm,
    /// Upper bounds for `(2,3,1)`, `(3,1,2)` and `(3,2,1)`.
    TtRemark,
    /// `Δ ≥ k+5` forces `γ < 2k` on `C_{3k}`.
    MaxDegree,
    /// Average degree above 4 on a residue class forces `γ < 2k`.
    AvgDegree,
    /// The map on `C_{3k}` with `Δ = k+3` and `γ = 2k`.
    Ex2,
    /// A path map attaining `2γ(P_5)`.
    P5Remark,
    /// Five consecutive vertices mapped into five consecutive vertices.
    Consecutive5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 21] = [
        TheoremId::Bounds,
        TheoremId::Realization,
        TheoremId::Gen,
        TheoremId::LbCycle,
        TheoremId::C3,
        TheoremId::CnId,
        TheoremId::C4Perm,
        TheoremId::Mod1,
        TheoremId::C5Exhaustive,
        TheoremId::NonPerm3k2,
        TheoremId::Distance3k2,
        TheoremId::PermStructure3k2,
        TheoremId::LemmaUi,
        TheoremId::TtPerm,
        TheoremId::TtNonPerm,
        TheoremId::TtRemark,
        TheoremId::MaxDegree,
        TheoremId::AvgDegree,
        TheoremId::Ex2,
        TheoremId::P5Remark,
        TheoremId::Consecutive5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Bounds => "bounds",
            TheoremId::Realization => "realization",
            TheoremId::Gen => "gen",
            TheoremId::LbCycle => "lb-cycle",
            TheoremId::C3 => "c3",
            TheoremId::CnId => "cn-id",
            TheoremId::C4Perm => "c4-perm",
            TheoremId::Mod1 => "mod1",
            TheoremId::C5Exhaustive => "c5-exhaustive",
            TheoremId::NonPerm3k2 => "3k2-nonperm",
            TheoremId::Distance3k2 => "3k2-distance",
            TheoremId::PermStructure3k2 => "3k2-perm-structure",
            TheoremId::LemmaUi => "lemma-ui",
            TheoremId::TtPerm => "tt-perm",
            TheoremId::TtNonPerm => "tt-nonperm",
            TheoremId::TtRemark => "tt-remark",
            TheoremId::MaxDegree => "max-degree",
            TheoremId::AvgDegree => "avg-degree",
            TheoremId::Ex2 => "ex2",
            TheoremId::P5Remark => "p5-remark",
            TheoremId::Consecutive5 => "consecutive5",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "identity" {
            return Ok(TheoremId::CnId);
        }
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("identity".parse::<TheoremId>().unwrap(), TheoremId::CnId);
        assert!("nope".parse::<TheoremId>().is_err());
    }
}
