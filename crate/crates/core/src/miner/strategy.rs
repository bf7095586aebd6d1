use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which pruning strategies a mining run applies.
///
/// The first two are the classic item and seed-rule filters, the rest are
/// the co-occurrence map, the four expansion bounds and iterated item
/// removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StrategyConfig {
    /// Drop items whose SEU is below minutil.
    pub uip: bool,
    /// Drop rules whose SEU is below minutil.
    pub usrp: bool,
    /// Skip candidates whose ordered pair co-occurrence is below minutil.
    pub reucp: bool,
    /// Gate left expansion on LEEU.
    pub leeup: bool,
    /// Gate right expansion on REEU.
    pub reeup: bool,
    /// Drop left candidates on their running LERSU bound.
    pub lersup: bool,
    /// Drop right candidates on their running RERSU bound.
    pub rersup: bool,
    /// Repeat item removal until no item falls below minutil.
    pub reurp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Baseline,
    V1,
    V2,
    V3,
    V4,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Baseline, Preset::V1, Preset::V2, Preset::V3, Preset::V4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Baseline => "baseline",
            Preset::V1 => "v1",
            Preset::V2 => "v2",
            Preset::V3 => "v3",
            Preset::V4 => "v4",
        }
    }

    pub fn config(self) -> StrategyConfig {
        let base = StrategyConfig { uip: true, usrp: true, ..StrategyConfig::default() };
        let bounds = StrategyConfig { leeup: true, reeup: true, lersup: true, rersup: true, ..base };
        match self {
            Preset::Baseline => base,
            Preset::V1 => StrategyConfig { reucp: true, ..base },
            Preset::V2 => StrategyConfig { reucp: true, ..bounds },
            Preset::V3 => StrategyConfig { reurp: true, ..bounds },
            Preset::V4 => StrategyConfig::all(),
        }
    }
}

const FLAGS: [&str; 8] = ["uip", "usrp", "reucp", "leeup", "reeup", "lersup", "rersup", "reurp"];

impl StrategyConfig {
    pub fn all() -> Self {
        Self { uip: true, usrp: true, reucp: true, leeup: true, reeup: true, lersup: true, rersup: true, reurp: true }
    }

    fn flags(&self) -> [bool; 8] {
        [self.uip, self.usrp, self.reucp, self.leeup, self.reeup, self.lersup, self.rersup, self.reurp]
    }

    fn flag_mut(&mut self, name: &str) -> Option<&mut bool> {
        Some(match name {
            "uip" => &mut self.uip,
            "usrp" => &mut self.usrp,
            "reucp" => &mut self.reucp,
            "leeup" => &mut self.leeup,
            "reeup" => &mut self.reeup,
            "lersup" => &mut self.lersup,
            "rersup" => &mut self.rersup,
            "reurp" => &mut self.reurp,
            _ => return None,
        })
    }

    /// Preset matching this exact flag set, if any.
    pub fn preset(&self) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.config() == *self)
    }

    /// True when every flag set here is also set in `other`.
    pub fn is_subset_of(&self, other: &StrategyConfig) -> bool {
        self.flags().iter().zip(other.flags()).all(|(&a, b)| !a || b)
    }
}

impl From<Preset> for StrategyConfig {
    fn from(p: Preset) -> Self {
        p.config()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyParseError {
    #[error("unknown strategy `{0}` (expected baseline, v1..v4 or custom:<flags>)")]
    UnknownPreset(String),
    #[error("unknown strategy flag `{0}`")]
    UnknownFlag(String),
}

impl FromStr for StrategyConfig {
    type Err = StrategyParseError;

    /// Accepts a preset name or `custom:` followed by a comma-separated flag
    /// list (possibly empty).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(list) = s.strip_prefix("custom:") {
            let mut cfg = StrategyConfig::default();
            for name in list.split(',').map(str::trim).filter(|n| !n.is_empty()) {
                *cfg.flag_mut(&name.to_ascii_lowercase())
                    .ok_or_else(|| StrategyParseError::UnknownFlag(name.to_string()))? = true;
            }
            return Ok(cfg);
        }
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .map(Preset::config)
            .ok_or_else(|| StrategyParseError::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for StrategyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.preset() {
            return f.write_str(p.name());
        }
        let on: Vec<&str> = FLAGS.iter().zip(self.flags()).filter(|(_, on)| *on).map(|(n, _)| *n).collect();
        write!(f, "custom:{}", on.join(","))
    }
}
