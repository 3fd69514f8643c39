use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The five evaluated configurations.
///
/// | setting | GameScript | stage one | self-debug |
/// |---------|-----------|-----------|------------|
/// | Basic   |           |           |            |
/// | A       | ✓         |           |            |
/// | B       | ✓         |           | ✓          |
/// | C       | ✓         | ✓         |            |
/// | D       | ✓         | ✓         | ✓          |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Setting {
    Basic,
    A,
    B,
    C,
    D,
}

impl Setting {
    pub const ALL: [Setting; 5] = [Setting::Basic, Setting::A, Setting::B, Setting::C, Setting::D];

    /// Generation goes through GameScript rather than raw `.efg` text.
    pub fn uses_dsl(self) -> bool {
        self != Setting::Basic
    }

    /// Failed attempts feed their error back to the model.
    pub fn self_debug(self) -> bool {
        matches!(self, Setting::B | Setting::D)
    }

    /// Information sets are asked for in a separate first stage.
    pub fn stage_one(self) -> bool {
        matches!(self, Setting::C | Setting::D)
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Basic => "Basic",
            Setting::A => "A",
            Setting::B => "B",
            Setting::C => "C",
            Setting::D => "D",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown setting `{0}`; expected one of basic, A, B, C, D")]
pub struct ParseSettingError(pub String);

impl FromStr for Setting {
    type Err = ParseSettingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Setting::ALL
            .into_iter()
            .find(|set| set.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ParseSettingError(s.to_string()))
    }
}
