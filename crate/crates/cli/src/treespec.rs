use std::fmt;
use std::str::FromStr;

use leafcount::tree::DEFAULT_LEAF_CAP;
use leafcount::{Result, Tree};

/// A tree given on the command line: a canonical code or a named builder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSpec {
    Code(String),
    Complete { d: usize, h: u32 },
    Caterpillar { r: usize, k: usize },
    Even { n: usize },
}

fn numbers(text: &str, want: usize) -> std::result::Result<Vec<u64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != want {
        return Err(format!("expected {want} comma-separated integers, got {text:?}"));
    }
    parts
        .iter()
        .map(|p| p.parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

impl TreeSpec {
    pub fn complete(text: &str) -> std::result::Result<TreeSpec, String> {
        let v = numbers(text, 2)?;
        let h = u32::try_from(v[1]).map_err(|_| format!("height {} is too large", v[1]))?;
        Ok(TreeSpec::Complete { d: v[0] as usize, h })
    }

    pub fn caterpillar(text: &str) -> std::result::Result<TreeSpec, String> {
        let v = numbers(text, 2)?;
        Ok(TreeSpec::Caterpillar {
            r: v[0] as usize,
            k: v[1] as usize,
        })
    }

    pub fn even(text: &str) -> std::result::Result<TreeSpec, String> {
        let v = numbers(text, 1)?;
        Ok(TreeSpec::Even { n: v[0] as usize })
    }

    /// Builds the tree, refusing complete trees with more than the default leaf cap.
    pub fn build(&self) -> Result<Tree> {
        match self {
            TreeSpec::Code(code) => Tree::parse(code),
            TreeSpec::Complete { d, h } => Tree::complete_with_cap(*d, *h, DEFAULT_LEAF_CAP),
            TreeSpec::Caterpillar { r, k } => Tree::caterpillar(*r, *k),
            TreeSpec::Even { n } => Tree::even_binary(*n),
        }
    }
}

impl FromStr for TreeSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<TreeSpec, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("complete:") {
            TreeSpec::complete(rest)
        } else if let Some(rest) = s.strip_prefix("caterpillar:") {
            TreeSpec::caterpillar(rest)
        } else if let Some(rest) = s.strip_prefix("even:") {
            TreeSpec::even(rest)
        } else {
            Ok(TreeSpec::Code(s.to_string()))
        }
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSpec::Code(c) => f.write_str(c),
            TreeSpec::Complete { d, h } => write!(f, "complete:{d},{h}"),
            TreeSpec::Caterpillar { r, k } => write!(f, "caterpillar:{r},{k}"),
            TreeSpec::Even { n } => write!(f, "even:{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builders_and_codes() {
        assert_eq!("complete:2,3".parse::<TreeSpec>().unwrap(), TreeSpec::Complete { d: 2, h: 3 });
        assert_eq!("caterpillar:3, 5".parse::<TreeSpec>().unwrap(), TreeSpec::Caterpillar { r: 3, k: 5 });
        assert_eq!("even:7".parse::<TreeSpec>().unwrap(), TreeSpec::Even { n: 7 });
        assert_eq!("(**)".parse::<TreeSpec>().unwrap(), TreeSpec::Code("(**)".into()));
        assert!("complete:2".parse::<TreeSpec>().is_err());
        assert!("even:x".parse::<TreeSpec>().is_err());
    }

    #[test]
    fn builds_trees() {
        let t = TreeSpec::Complete { d: 2, h: 2 }.build().unwrap();
        assert_eq!(t.code(), "((**)(**))");
        assert!(TreeSpec::Code("(*)".into()).build().is_err());
        assert!(TreeSpec::Complete { d: 10, h: 10 }.build().unwrap_err().is_budget());
        assert_eq!(TreeSpec::Even { n: 5 }.to_string(), "even:5");
    }
}
