use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LatticeError;

/// Label of an irreducible simply-laced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeTag {
    A(usize),
    D(usize),
    E(usize),
}

impl AdeTag {
    pub fn validate(self) -> Result<Self, LatticeError> {
        let ok = match self {
            AdeTag::A(n) => n >= 1,
            AdeTag::D(n) => n >= 4,
            AdeTag::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(LatticeError::InvalidTag(self.to_string()))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            AdeTag::A(n) | AdeTag::D(n) | AdeTag::E(n) => n,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            AdeTag::A(n) => n * (n + 1),
            AdeTag::D(n) => 2 * n * (n - 1),
            AdeTag::E(6) => 72,
            AdeTag::E(7) => 126,
            AdeTag::E(8) => 240,
            AdeTag::E(_) => 0,
        }
    }

    /// The tag with the given rank and number of roots. Rank 3 with 12 roots
    /// is reported as `A3`.
    pub fn from_rank_and_count(rank: usize, count: usize) -> Option<AdeTag> {
        let candidates = [AdeTag::A(rank), AdeTag::D(rank), AdeTag::E(rank)];
        candidates
            .into_iter()
            .filter(|t| t.validate().is_ok())
            .find(|t| t.root_count() == count)
    }

    /// Whether a copy of the D4 root lattice sits inside this root lattice.
    pub fn admits_d4(self) -> bool {
        matches!(self, AdeTag::D(_) | AdeTag::E(_))
    }

    /// Kodaira symbol of the fiber whose non-identity components span this
    /// root lattice (`A1` defaults to the multiplicative `I2`).
    pub fn kodaira(self) -> String {
        match self {
            AdeTag::A(n) => format!("I{}", n + 1),
            AdeTag::D(n) => format!("I{}*", n - 4),
            AdeTag::E(6) => "IV*".into(),
            AdeTag::E(7) => "III*".into(),
            AdeTag::E(_) => "II*".into(),
        }
    }
}

impl fmt::Display for AdeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeTag::A(n) => write!(f, "A{n}"),
            AdeTag::D(n) => write!(f, "D{n}"),
            AdeTag::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for AdeTag {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LatticeError::InvalidTag(s.to_string());
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let tag = match family.to_ascii_uppercase() {
            'A' => AdeTag::A(n),
            'D' => AdeTag::D(n),
            'E' => AdeTag::E(n),
            _ => return Err(bad()),
        };
        tag.validate()
    }
}

/// A multiset of ADE components, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct RootType {
    components: Vec<AdeTag>,
}

impl RootType {
    pub fn new(mut components: Vec<AdeTag>) -> Self {
        components.sort();
        RootType { components }
    }

    pub fn components(&self) -> &[AdeTag] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components.iter().map(|c| c.root_count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Distinct components, in canonical order.
    pub fn distinct(&self) -> Vec<AdeTag> {
        let mut v = self.components.clone();
        v.dedup();
        v
    }

    pub fn multiplicity(&self, tag: AdeTag) -> usize {
        self.components.iter().filter(|&&c| c == tag).count()
    }

    /// Remove one copy of `tag`.
    pub fn without(&self, tag: AdeTag) -> Option<RootType> {
        let pos = self.components.iter().position(|&c| c == tag)?;
        let mut v = self.components.clone();
        v.remove(pos);
        Some(RootType { components: v })
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for tag in self.distinct() {
            match self.multiplicity(tag) {
                1 => parts.push(tag.to_string()),
                k => parts.push(format!("{tag}^{k}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for RootType {
    type Err = LatticeError;

    /// Accepts forms such as `A5^4 D4`, `D4A5^4`, `E6 D7 A11`, `A1^2A9^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::InvalidTag(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" || compact.is_empty() {
            return Ok(RootType::default());
        }
        let bytes = compact.as_bytes();
        let mut comps = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let fam = bytes[i] as char;
            if !matches!(fam.to_ascii_uppercase(), 'A' | 'D' | 'E') {
                return Err(bad());
            }
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let tag: AdeTag = format!("{fam}{}", &compact[start..i]).parse()?;
            let mut mult = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let s2 = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                mult = compact[s2..i].parse().map_err(|_| bad())?;
            }
            comps.extend(std::iter::repeat_n(tag, mult));
        }
        Ok(RootType::new(comps))
    }
}
