//! The group-spec language used by the CLI:
//!
//! ```text
//! sym:N | alt:N | cyc:N | dih:N | sl2:Q | psl2:Q | pgl2:Q | pgammal2:Q
//!   | prod(spec,spec) | wreath(base,N,top) | perm:N:gen;gen;…
//!   | regular(spec) | hadamard:K | ex35:M
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{
    alt, cyclic, dihedral, dihedral_subdirect_power, direct_product, generate_enumerated,
    hadamard_perm_group, pgammal2, pgl2, psl2, regular_representation, sl2, sym, wreath_product,
    PermGroup, Permutation, DEFAULT_ENUMERATION_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyc(usize),
    Dih(usize),
    Sl2(u64),
    Psl2(u64),
    Pgl2(u64),
    Pgammal2(u64),
    Prod(Box<GroupSpec>, Box<GroupSpec>),
    Wreath(Box<GroupSpec>, usize, Box<GroupSpec>),
    Perm(usize, Vec<Permutation>),
    Regular(Box<GroupSpec>),
    Hadamard(u32),
    DihedralSubdirect(usize),
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    text.parse()
}

fn syntax(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("group spec: {}", msg.into()))
}

fn number<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| syntax(format!("expected {what}, got {:?}", s.trim())))
}

/// Splits at top-level commas.
fn split_args(s: &str) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax("unbalanced parentheses"));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax("unbalanced parentheses"));
    }
    out.push(&s[start..]);
    Ok(out)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(open) = s.find('(') {
            let head = s[..open].trim();
            if matches!(head, "prod" | "wreath" | "regular") {
                if !s.ends_with(')') {
                    return Err(syntax(format!("missing ')' in {s:?}")));
                }
                let args = split_args(&s[open + 1..s.len() - 1])?;
                return match (head, args.as_slice()) {
                    ("prod", [a, b]) => {
                        Ok(GroupSpec::Prod(Box::new(a.parse()?), Box::new(b.parse()?)))
                    }
                    ("wreath", [a, n, b]) => Ok(GroupSpec::Wreath(
                        Box::new(a.parse()?),
                        number(n, "wreath degree")?,
                        Box::new(b.parse()?),
                    )),
                    ("regular", [a]) => Ok(GroupSpec::Regular(Box::new(a.parse()?))),
                    _ => Err(syntax(format!("wrong number of arguments to {head}"))),
                };
            }
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| syntax(format!("unrecognized group {s:?}")))?;
        Ok(match kind.trim() {
            "sym" => GroupSpec::Sym(number(rest, "degree")?),
            "alt" => GroupSpec::Alt(number(rest, "degree")?),
            "cyc" => GroupSpec::Cyc(number(rest, "order")?),
            "dih" => GroupSpec::Dih(number(rest, "order")?),
            "sl2" => GroupSpec::Sl2(number(rest, "field order")?),
            "psl2" => GroupSpec::Psl2(number(rest, "field order")?),
            "pgl2" => GroupSpec::Pgl2(number(rest, "field order")?),
            "pgammal2" => GroupSpec::Pgammal2(number(rest, "field order")?),
            "hadamard" => GroupSpec::Hadamard(number(rest, "k")?),
            "ex35" => GroupSpec::DihedralSubdirect(number(rest, "m")?),
            "perm" => {
                let (n, gens) = rest.split_once(':').unwrap_or((rest, ""));
                let n: usize = number(n, "degree")?;
                let gens = gens
                    .split(';')
                    .filter(|g| !g.trim().is_empty())
                    .map(|g| Permutation::parse(n, g.trim()))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::Perm(n, gens)
            }
            other => return Err(syntax(format!("unknown group family {other:?}"))),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Cyc(n) => write!(f, "cyc:{n}"),
            GroupSpec::Dih(n) => write!(f, "dih:{n}"),
            GroupSpec::Sl2(q) => write!(f, "sl2:{q}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::Pgammal2(q) => write!(f, "pgammal2:{q}"),
            GroupSpec::Prod(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Wreath(a, n, b) => write!(f, "wreath({a},{n},{b})"),
            GroupSpec::Perm(n, gens) => {
                let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "perm:{n}:{}", gens.join(";"))
            }
            GroupSpec::Regular(a) => write!(f, "regular({a})"),
            GroupSpec::Hadamard(k) => write!(f, "hadamard:{k}"),
            GroupSpec::DihedralSubdirect(m) => write!(f, "ex35:{m}"),
        }
    }
}

impl GroupSpec {
    /// Builds the permutation group (generators only; nothing is enumerated
    /// except for `regular`).
    pub fn build(&self) -> Result<PermGroup> {
        match self {
            GroupSpec::Sym(n) => sym(*n),
            GroupSpec::Alt(n) => alt(*n),
            GroupSpec::Cyc(n) => cyclic(*n),
            GroupSpec::Dih(n) => dihedral(*n),
            GroupSpec::Sl2(q) => sl2(*q),
            GroupSpec::Psl2(q) => psl2(*q),
            GroupSpec::Pgl2(q) => pgl2(*q),
            GroupSpec::Pgammal2(q) => pgammal2(*q),
            GroupSpec::Prod(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupSpec::Wreath(a, n, b) => wreath_product(&a.build()?, *n, &b.build()?),
            GroupSpec::Perm(n, gens) => PermGroup::new(*n, gens.clone()),
            GroupSpec::Regular(a) => {
                let g = a.build()?;
                let e = generate_enumerated(g.degree(), g.gens(), DEFAULT_ENUMERATION_CAP)?;
                regular_representation(&e)
            }
            GroupSpec::Hadamard(k) => hadamard_perm_group(*k),
            GroupSpec::DihedralSubdirect(m) => Ok(dihedral_subdirect_power(*m)?.group),
        }
    }
}
