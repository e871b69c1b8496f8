//! Textual construction recipes such as `u-of:nm:2,3` or `rees:fig1_u,xz`.
//!
//! | form | result |
//! |------|--------|
//! | `nm:n,m` | [`nm_family`] |
//! | `asym:n` | [`asym_family`] |
//! | `sqfree:k` | [`squarefree_words`] |
//! | `fixture:name` | [`fixture`] |
//! | `u-of:X` | [`u_of`] |
//! | `op:X` | [`opposite`] |
//! | `s1:X` | [`adjoin_identity`] |
//! | `prod:X,Y` | [`direct_product`], split at the first comma |
//! | `rees:X,e1,e2,...` | Rees quotient by the listed elements, which must already form an ideal |
//!
//! An operand `X` is a nested recipe (anything containing `:`), a fixture
//! name, or a path to an mtab file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{
    asym_family, fixture, nm_family, rees_quotient, squarefree_words, u_of, FIXTURE_NAMES,
};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::mtab::parse_mtab;
use crate::semigroup::{adjoin_identity, direct_product, opposite, FiniteSemigroup};

/// Something a recipe operates on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operand {
    Fixture(String),
    Recipe(Box<ConstructionRecipe>),
    Path(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionRecipe {
    Nm {
        n: usize,
        m: usize,
    },
    Asym(usize),
    Squarefree(usize),
    Fixture(String),
    UOf(Operand),
    Opposite(Operand),
    AdjoinIdentity(Operand),
    Product(Operand, Operand),
    Rees {
        base: Operand,
        elements: Vec<String>,
    },
}

fn recipe_err(recipe: &str, message: impl Into<String>) -> Error {
    Error::Recipe {
        recipe: recipe.to_string(),
        message: message.into(),
    }
}

fn parse_usize(recipe: &str, what: &str, text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| {
        recipe_err(
            recipe,
            format!("{what} must be a non-negative integer, got `{text}`"),
        )
    })
}

impl Operand {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(recipe_err(text, "missing operand"));
        }
        if text.contains(':') {
            Ok(Operand::Recipe(Box::new(ConstructionRecipe::parse(text)?)))
        } else if FIXTURE_NAMES.contains(&text) {
            Ok(Operand::Fixture(text.to_string()))
        } else {
            Ok(Operand::Path(PathBuf::from(text)))
        }
    }

    pub fn build(&self) -> Result<FiniteSemigroup> {
        match self {
            Operand::Fixture(name) => fixture(name),
            Operand::Recipe(r) => r.build(),
            Operand::Path(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                parse_mtab(&text)
            }
        }
    }
}

impl ConstructionRecipe {
    pub fn parse<'a>(text: &'a str) -> Result<Self> {
        let text = text.trim();
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| recipe_err(text, "expected `kind:arguments`"))?;
        let pair = |args: &'a str| -> Result<(&'a str, &'a str)> {
            args.split_once(',')
                .ok_or_else(|| recipe_err(text, "expected two comma-separated arguments"))
        };
        Ok(match kind {
            "nm" => {
                let (n, m) = pair(args)?;
                ConstructionRecipe::Nm {
                    n: parse_usize(text, "n", n)?,
                    m: parse_usize(text, "m", m)?,
                }
            }
            "asym" => ConstructionRecipe::Asym(parse_usize(text, "n", args)?),
            "sqfree" => ConstructionRecipe::Squarefree(parse_usize(text, "k", args)?),
            "fixture" => ConstructionRecipe::Fixture(args.trim().to_string()),
            "u-of" => ConstructionRecipe::UOf(Operand::parse(args)?),
            "op" => ConstructionRecipe::Opposite(Operand::parse(args)?),
            "s1" => ConstructionRecipe::AdjoinIdentity(Operand::parse(args)?),
            "prod" => {
                let (a, b) = pair(args)?;
                ConstructionRecipe::Product(Operand::parse(a)?, Operand::parse(b)?)
            }
            "rees" => {
                let (base, rest) = pair(args)?;
                let elements: Vec<String> = rest
                    .split(',')
                    .map(|e| e.trim().to_string())
                    .filter(|e| !e.is_empty())
                    .collect();
                if elements.is_empty() {
                    return Err(recipe_err(text, "no ideal elements given"));
                }
                ConstructionRecipe::Rees {
                    base: Operand::parse(base)?,
                    elements,
                }
            }
            other => return Err(recipe_err(text, format!("unknown construction `{other}`"))),
        })
    }

    pub fn build(&self) -> Result<FiniteSemigroup> {
        match self {
            ConstructionRecipe::Nm { n, m } => nm_family(*n, *m),
            ConstructionRecipe::Asym(n) => asym_family(*n),
            ConstructionRecipe::Squarefree(k) => squarefree_words(*k),
            ConstructionRecipe::Fixture(name) => fixture(name),
            ConstructionRecipe::UOf(x) => u_of(&x.build()?),
            ConstructionRecipe::Opposite(x) => Ok(opposite(&x.build()?)),
            ConstructionRecipe::AdjoinIdentity(x) => Ok(adjoin_identity(&x.build()?)),
            ConstructionRecipe::Product(x, y) => Ok(direct_product(&x.build()?, &y.build()?)),
            ConstructionRecipe::Rees { base, elements } => {
                let s = base.build()?;
                let members = elements
                    .iter()
                    .map(|e| resolve_element(&s, e))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| recipe_err(&self.to_string(), e.to_string()))?;
                Ok(rees_quotient(&Ideal::new(&s, members)?))
            }
        }
    }
}

/// An element given by name, falling back to a numeric index.
fn resolve_element(s: &FiniteSemigroup, text: &str) -> Result<usize> {
    if let Some(a) = s.element_by_name(text) {
        return Ok(a);
    }
    match text.parse::<usize>() {
        Ok(a) if a < s.order() => Ok(a),
        _ => Err(Error::InvalidIdeal(format!("no element `{text}`"))),
    }
}

impl FromStr for ConstructionRecipe {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Fixture(name) => f.write_str(name),
            Operand::Recipe(r) => write!(f, "{r}"),
            Operand::Path(p) => write!(f, "{}", p.display()),
        }
    }
}

impl fmt::Display for ConstructionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionRecipe::Nm { n, m } => write!(f, "nm:{n},{m}"),
            ConstructionRecipe::Asym(n) => write!(f, "asym:{n}"),
            ConstructionRecipe::Squarefree(k) => write!(f, "sqfree:{k}"),
            ConstructionRecipe::Fixture(name) => write!(f, "fixture:{name}"),
            ConstructionRecipe::UOf(x) => write!(f, "u-of:{x}"),
            ConstructionRecipe::Opposite(x) => write!(f, "op:{x}"),
            ConstructionRecipe::AdjoinIdentity(x) => write!(f, "s1:{x}"),
            ConstructionRecipe::Product(x, y) => write!(f, "prod:{x},{y}"),
            ConstructionRecipe::Rees { base, elements } => {
                write!(f, "rees:{base},{}", elements.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for text in [
            "nm:3,5",
            "asym:2",
            "sqfree:3",
            "fixture:fig1_s",
            "u-of:fig1_s",
            "u-of:u-of:fixture:fig1_s",
            "op:s1:nm:2,3",
            "prod:fig1_s,op:fig1_s",
            "rees:fig1_u,xa,xz",
        ] {
            let r: ConstructionRecipe = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
    }

    #[test]
    fn builds_nested_recipes() {
        let u: ConstructionRecipe = "u-of:fixture:fig1_s".parse().unwrap();
        assert_eq!(u.build().unwrap(), fixture("fig1_u").unwrap());
        let p = ConstructionRecipe::parse("prod:fig1_s,nm:2,3").unwrap();
        assert_eq!(p.build().unwrap().order(), 9);
        let q = ConstructionRecipe::parse("rees:fig1_u,xa,xz").unwrap();
        assert_eq!(q.build().unwrap().order(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ConstructionRecipe::parse("frob:1"),
            Err(Error::Recipe { .. })
        ));
        assert!(matches!(
            ConstructionRecipe::parse("nm:3"),
            Err(Error::Recipe { .. })
        ));
        assert!(ConstructionRecipe::parse("nm:x,3").is_err());
        let not_ideal = ConstructionRecipe::parse("rees:fig1_u,e").unwrap();
        assert!(matches!(not_ideal.build(), Err(Error::InvalidIdeal(_))));
        let missing = ConstructionRecipe::parse("rees:fig1_u,nope").unwrap();
        assert!(matches!(missing.build(), Err(Error::Recipe { .. })));
        let file = ConstructionRecipe::parse("op:/definitely/not/here.mtab").unwrap();
        assert!(matches!(file.build(), Err(Error::Io { .. })));
    }
}
