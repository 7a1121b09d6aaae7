//! Textual generating-set descriptions:
//!
//! ```text
//! cy:3
//! m:2,1
//! classes:1^2 2^1|3^1 1^1
//! nicesep:1^2 2^1;{1}{2 3 4}
//! ```
//!
//! Several cycle types are separated by `|`. Types carry their own degree,
//! which must match the `n` the spec is built for.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::perm::{CycleType, GroundPartition};

use super::{class_union_capped, cy_capped, m_set_capped, nicely_separated_capped, GeneratingSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GensetSpec {
    Cy { r: usize },
    M { k: usize, r: usize },
    Classes(Vec<CycleType>),
    NiceSep { types: Vec<CycleType>, blocks: String },
}

impl GensetSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| ParseError::new(text, 0, "expected <kind>:<arguments>"))?;
        let base = head.len() + 1;
        match head.trim() {
            "cy" => Ok(Self::Cy {
                r: parse_number(body, base)?,
            }),
            "m" => {
                let (k, r) = body
                    .split_once(',')
                    .ok_or_else(|| ParseError::new(body, base, "expected m:<k>,<r>"))?;
                Ok(Self::M {
                    k: parse_number(k, base)?,
                    r: parse_number(r, base + k.len() + 1)?,
                })
            }
            "classes" => Ok(Self::Classes(parse_types(body, base)?)),
            "nicesep" => {
                let (types, blocks) = body.split_once(';').ok_or_else(|| {
                    ParseError::new(body, base, "expected nicesep:<types>;<blocks>")
                })?;
                let blocks_base = base + types.len() + 1;
                if !blocks.trim_start().starts_with('{') {
                    return Err(ParseError::new(blocks, blocks_base, "expected a block `{…}`").into());
                }
                Ok(Self::NiceSep {
                    types: parse_types(types, base)?,
                    blocks: blocks.trim().to_string(),
                })
            }
            other => Err(ParseError::new(other, 0, "unknown generating-set kind (cy, m, classes, nicesep)").into()),
        }
    }

    pub fn build(&self, n: usize) -> Result<GeneratingSet> {
        self.build_capped(n, crate::perm::DEFAULT_GROUP_CAP)
    }

    pub fn build_capped(&self, n: usize, cap: usize) -> Result<GeneratingSet> {
        match self {
            Self::Cy { r } => cy_capped(n, *r, cap),
            Self::M { k, r } => m_set_capped(n, *k, *r, cap),
            Self::Classes(types) => class_union_capped(n, types, cap),
            Self::NiceSep { types, blocks } => {
                let partition = GroundPartition::parse(n, blocks)?;
                nicely_separated_capped(n, types, &partition, cap)
            }
        }
    }
}

fn parse_number(text: &str, base: usize) -> Result<usize> {
    let trimmed = text.trim();
    let offset = text.find(trimmed).unwrap_or(0);
    trimmed
        .parse()
        .map_err(|_| Error::from(ParseError::new(trimmed, base + offset, "expected a positive integer")))
}

fn parse_types(text: &str, base: usize) -> Result<Vec<CycleType>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split('|') {
        out.push(CycleType::parse_at(chunk, base + offset)?);
        offset += chunk.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for GensetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |types: &[CycleType]| {
            types.iter().map(CycleType::to_string).collect::<Vec<_>>().join("|")
        };
        match self {
            Self::Cy { r } => write!(f, "cy:{r}"),
            Self::M { k, r } => write!(f, "m:{k},{r}"),
            Self::Classes(types) => write!(f, "classes:{}", join(types)),
            Self::NiceSep { types, blocks } => write!(f, "nicesep:{};{blocks}", join(types)),
        }
    }
}

impl std::str::FromStr for GensetSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!(GensetSpec::parse("cy:2").unwrap(), GensetSpec::Cy { r: 2 });
        assert_eq!(GensetSpec::parse("m:2,1").unwrap(), GensetSpec::M { k: 2, r: 1 });
        let c = GensetSpec::parse("classes:1^2 2^1|1^1 3^1").unwrap();
        assert_eq!(c.to_string(), "classes:1^2 2^1|1^1 3^1");
        let s = GensetSpec::parse("nicesep:1^2 2^1;{1}{2 3 4}").unwrap();
        assert_eq!(s.to_string(), "nicesep:1^2 2^1;{1}{2 3 4}");
        assert_eq!(s.build(4).unwrap().len(), 3);
    }

    #[test]
    fn printer_round_trips() {
        for text in ["cy:3", "m:3,2", "classes:2^2", "nicesep:1^1 3^1|4^1;{1 2}{3 4}"] {
            let spec = GensetSpec::parse(text).unwrap();
            assert_eq!(GensetSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn errors_name_token_and_position() {
        let err = GensetSpec::parse("classes:1^2 2^x").unwrap_err();
        match err {
            Error::Parse(e) => {
                assert_eq!(e.token, "2^x");
                assert_eq!(e.position, 12);
            }
            other => panic!("{other:?}"),
        }
        let err = GensetSpec::parse("cy:two").unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { position: 3, .. })));
        assert!(matches!(GensetSpec::parse("xx:1"), Err(Error::Parse(_))));
        assert!(matches!(GensetSpec::parse("cy2"), Err(Error::Parse(_))));
    }

    #[test]
    fn degree_must_match() {
        let spec = GensetSpec::parse("classes:1^1 2^1").unwrap();
        assert!(spec.build(4).is_err());
        assert_eq!(spec.build(3).unwrap().len(), 3);
    }
}
