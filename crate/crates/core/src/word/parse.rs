//! Word grammar:
//!
//! ```text
//! word := atom (sep atom)*      sep  := whitespace | '*'
//! atom := name ('^' signed-int)?
//! name := letter alnum* ('_' digits)?
//! ```
//!
//! Names of the form `x<N>` keep base index `N` when every name in the input
//! has that form; otherwise bases are numbered by first appearance. The
//! literal `1` denotes the empty word.

use std::collections::HashMap;

use super::{Letter, Sign, Variable, Word};
use crate::error::{Error, Result};

const MAX_EXPANDED_LEN: usize = 1 << 20;

struct Atom {
    name: String,
    split: Option<u32>,
    exp: i64,
}

pub(super) fn parse_word(text: &str) -> Result<Word> {
    if text.trim() == "1" {
        return Ok(Word::empty());
    }
    let atoms = tokenize(text)?;
    if atoms.is_empty() {
        return Err(Error::syntax(0, "expected at least one variable"));
    }

    let numbered: Option<Vec<u32>> = atoms.iter().map(|a| numbered_base(&a.name)).collect();
    let bases: Vec<u32> = match numbered {
        Some(b) => b,
        None => {
            let mut order: HashMap<&str, u32> = HashMap::new();
            atoms
                .iter()
                .map(|a| {
                    let next = order.len() as u32 + 1;
                    *order.entry(a.name.as_str()).or_insert(next)
                })
                .collect()
        }
    };

    let total: usize = atoms.iter().map(|a| a.exp.unsigned_abs() as usize).sum();
    if total > MAX_EXPANDED_LEN {
        return Err(Error::InvalidArgument(format!(
            "expanded word length {total} exceeds {MAX_EXPANDED_LEN}"
        )));
    }

    let mut letters = Vec::with_capacity(total);
    for (a, base) in atoms.iter().zip(bases) {
        let var = Variable::raw(base, a.split);
        let sign = if a.exp > 0 { Sign::Pos } else { Sign::Neg };
        letters.extend(std::iter::repeat_n(
            Letter::new(var, sign),
            a.exp.unsigned_abs() as usize,
        ));
    }
    Ok(Word::from_letters(letters))
}

fn numbered_base(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<u32>().ok().filter(|&n| n >= 1)
}

fn tokenize(text: &str) -> Result<Vec<Atom>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut atoms = Vec::new();
    let skip_sep = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b'*') {
            *pos += 1;
        }
    };

    loop {
        skip_sep(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if !bytes[pos].is_ascii_alphabetic() {
            return Err(Error::syntax(
                pos,
                format!("unexpected character '{}'", bytes[pos] as char),
            ));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
            pos += 1;
        }
        let name = text[start..pos].to_string();

        let mut split = None;
        if pos < bytes.len() && bytes[pos] == b'_' {
            pos += 1;
            let (value, next) = read_unsigned(text, pos)?;
            if value == 0 {
                return Err(Error::syntax(pos, "split index must be >= 1"));
            }
            split = Some(
                u32::try_from(value).map_err(|_| Error::syntax(pos, "split index too large"))?,
            );
            pos = next;
        }

        let mut exp: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let exp_pos = pos;
            let mut negative = false;
            if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                negative = bytes[pos] == b'-';
                pos += 1;
            }
            let (value, next) = read_unsigned(text, pos)?;
            if value == 0 {
                return Err(Error::ZeroExponent { pos: exp_pos });
            }
            let value =
                i64::try_from(value).map_err(|_| Error::syntax(exp_pos, "exponent too large"))?;
            exp = if negative { -value } else { value };
            pos = next;
        }

        if pos < bytes.len() && !(bytes[pos].is_ascii_whitespace() || bytes[pos] == b'*') {
            return Err(Error::syntax(
                pos,
                format!("unexpected character '{}'", bytes[pos] as char),
            ));
        }
        atoms.push(Atom { name, split, exp });
    }
    Ok(atoms)
}

fn read_unsigned(text: &str, pos: usize) -> Result<(u64, usize)> {
    let bytes = text.as_bytes();
    let mut end = pos;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == pos {
        return Err(Error::syntax(pos, "expected digits"));
    }
    let value = text[pos..end]
        .parse::<u64>()
        .map_err(|_| Error::syntax(pos, "number too large"))?;
    Ok((value, end))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_parse() {
        let w = parse_word("x1 x1^-1 x2").unwrap();
        assert_eq!(w.to_string(), "x2");
    }

    #[test]
    fn expands_powers() {
        let w = parse_word("x^8").unwrap();
        assert_eq!(w.len(), 8);
        assert!(w
            .letters()
            .iter()
            .all(|l| l.sign == Sign::Pos && l.var.base() == 1));
    }

    #[test]
    fn commutator_unreduced() {
        let w = parse_word("x y x^-1 y^-1").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "x1 x2 x1^-1 x2^-1");
    }

    #[test]
    fn star_separator_and_splits() {
        let w = parse_word("a_1*a_2*b^+2").unwrap();
        assert_eq!(w.to_string(), "x1_1 x1_2 x2^2");
    }

    #[test]
    fn numbered_names_keep_indices() {
        let w = parse_word("x3 x1").unwrap();
        assert_eq!(w.letters()[0].var.base(), 3);
        // mixing forms falls back to first-appearance numbering
        let w = parse_word("x3 y").unwrap();
        assert_eq!(w.bases(), vec![1, 2]);
    }

    #[test]
    fn one_is_empty() {
        assert!(parse_word(" 1 ").unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_word("x^0"),
            Err(Error::ZeroExponent { pos: 2 })
        ));
        assert!(matches!(
            parse_word("x ^2"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_word(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("x^"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_word("x_0"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("x y)"),
            Err(Error::Syntax { pos: 3, .. })
        ));
    }
}
