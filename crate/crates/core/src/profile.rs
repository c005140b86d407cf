//! Locality profiles: how many symbols have each locality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("a profile needs at least one nonzero count")]
    Empty,
    #[error("cannot parse profile {0:?}: expected comma-separated non-negative integers")]
    Parse(String),
}

fn trim(mut counts: Vec<usize>) -> Result<Vec<usize>, ProfileError> {
    while counts.last() == Some(&0) {
        counts.pop();
    }
    if counts.is_empty() {
        Err(ProfileError::Empty)
    } else {
        Ok(counts)
    }
}

pub(crate) fn parse_counts(s: &str) -> Result<Vec<usize>, ProfileError> {
    let body = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| ProfileError::Parse(s.to_string()))
        })
        .collect()
}

pub(crate) fn write_counts(f: &mut fmt::Formatter<'_>, counts: &[usize]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, c) in counts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, "}}")
}

macro_rules! profile_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
        pub struct $name {
            counts: Vec<usize>,
        }

        impl $name {
            /// Trailing zero classes are dropped, so the last count is
            /// always positive.
            pub fn new(counts: Vec<usize>) -> Result<Self, ProfileError> {
                Ok($name { counts: trim(counts)? })
            }

            /// `counts()[j - 1]` is the number of symbols of locality `j`.
            pub fn counts(&self) -> &[usize] {
                &self.counts
            }

            /// Count for locality `j` (1-based); zero beyond the last class.
            pub fn count(&self, j: usize) -> usize {
                if j == 0 {
                    return 0;
                }
                self.counts.get(j - 1).copied().unwrap_or(0)
            }

            /// Largest locality with a nonzero count.
            pub fn max_locality(&self) -> usize {
                self.counts.len()
            }

            pub fn total(&self) -> usize {
                self.counts.iter().sum()
            }

            /// Counts padded with zeros to `len` classes.
            pub fn padded(&self, len: usize) -> Vec<usize> {
                let mut v = self.counts.clone();
                if v.len() < len {
                    v.resize(len, 0);
                }
                v
            }
        }

        impl TryFrom<Vec<usize>> for $name {
            type Error = ProfileError;
            fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
                Self::new(v)
            }
        }

        impl From<$name> for Vec<usize> {
            fn from(p: $name) -> Vec<usize> {
                p.counts
            }
        }

        impl FromStr for $name {
            type Err = ProfileError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::new(parse_counts(s)?)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_counts(f, &self.counts)
            }
        }
    };
}

profile_type!(
    /// Information locality profile `{k_1, ..., k_r}`: `k_j` information
    /// symbols have locality `j`.
    InfoLocalityProfile
);

profile_type!(
    /// All-symbol locality profile `{n_1, ..., n_ra}`: `n_j` code symbols
    /// have locality `j`.
    AllSymbolLocalityProfile
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: InfoLocalityProfile = "0,4,3,4".parse().unwrap();
        assert_eq!(p.counts(), &[0, 4, 3, 4]);
        assert_eq!(p.to_string(), "{0,4,3,4}");
        assert_eq!(p.total(), 11);
        assert_eq!(p.count(2), 4);
        assert_eq!(p.count(9), 0);
        let q: InfoLocalityProfile = "{0, 6, 0}".parse().unwrap();
        assert_eq!(q.counts(), &[0, 6]);
        assert_eq!(q.padded(3), vec![0, 6, 0]);
        assert!("0,0".parse::<InfoLocalityProfile>().is_err());
        assert!("1,x".parse::<AllSymbolLocalityProfile>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let p = AllSymbolLocalityProfile::new(vec![0, 6, 4, 5]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[0,6,4,5]");
        let back: AllSymbolLocalityProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<AllSymbolLocalityProfile>("[0,0]").is_err());
    }
}
