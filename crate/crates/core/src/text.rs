//! Plain-text stack format, top pancake first.
//!
//! * burnt: signed integers, `+2 -1 +3`
//! * unburnt: unsigned integers, `3 1 2`
//! * mixed: a `u` suffix marks an unburnt pancake, `2u +3 -1`
//! * shorthands `I<n>`, `-I<n>`, `J<n>`, `Y<n>` for the named burnt stacks
//!
//! Any token carrying a sign makes the whole stack burnt.

use std::fmt;

use crate::error::{PancakeError, Result};
use crate::stack::{
    AnyStack, BurntStack, MixedPancake, MixedStack, Orientation, SpecialStack, UnburntStack,
};

fn parse_shorthand(token: &str) -> Option<Result<BurntStack>> {
    let (kind, digits) = if let Some(rest) = token.strip_prefix("-I") {
        (SpecialStack::NegIdentity, rest)
    } else if let Some(rest) = token.strip_prefix("+I").or_else(|| token.strip_prefix('I')) {
        (SpecialStack::Identity, rest)
    } else if let Some(rest) = token.strip_prefix('J') {
        (SpecialStack::J, rest)
    } else {
        (SpecialStack::Y, token.strip_prefix('Y')?)
    };
    Some(match digits.parse::<usize>() {
        Ok(n) => BurntStack::special(kind, n).map_err(|e| PancakeError::parse(1, e.to_string())),
        Err(_) => Err(PancakeError::parse(1, format!("bad size in `{token}`"))),
    })
}

fn check_labels(labels: &[u32]) -> Result<()> {
    let n = labels.len();
    let mut seen = vec![false; n + 1];
    for (i, &l) in labels.iter().enumerate() {
        if l == 0 {
            return Err(PancakeError::parse(i + 1, "pancake 0 does not exist"));
        }
        if l as usize > n {
            return Err(PancakeError::parse(
                i + 1,
                format!("label {l} exceeds stack size {n}"),
            ));
        }
        if std::mem::replace(&mut seen[l as usize], true) {
            return Err(PancakeError::parse(i + 1, format!("label {l} repeated")));
        }
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<AnyStack> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(PancakeError::parse(0, "empty stack"));
    }
    if tokens.len() == 1 {
        if let Some(s) = parse_shorthand(tokens[0]) {
            return s.map(AnyStack::Burnt);
        }
    }

    let mixed = tokens.iter().any(|t| t.ends_with('u'));
    let signed = tokens.iter().any(|t| t.starts_with(['+', '-']));

    let mut labels = Vec::with_capacity(tokens.len());
    let mut orientations = Vec::with_capacity(tokens.len());
    for (i, tok) in tokens.iter().enumerate() {
        let (body, unburnt) = match tok.strip_suffix('u') {
            Some(b) => (b, true),
            None => (*tok, false),
        };
        let value: i64 = body
            .parse()
            .map_err(|_| PancakeError::parse(i + 1, format!("`{tok}` is not a pancake")))?;
        if unburnt && body.starts_with(['+', '-']) {
            return Err(PancakeError::parse(i + 1, "unburnt pancakes carry no sign"));
        }
        if value == 0 {
            return Err(PancakeError::parse(i + 1, "pancake 0 does not exist"));
        }
        let label = u32::try_from(value.unsigned_abs())
            .map_err(|_| PancakeError::parse(i + 1, "label too large"))?;
        labels.push(label);
        orientations.push(if unburnt {
            Orientation::Unburnt
        } else if value < 0 {
            Orientation::Up
        } else {
            Orientation::Down
        });
    }
    check_labels(&labels)?;

    let stack = if mixed {
        AnyStack::Mixed(MixedStack::from_vec_unchecked(
            labels
                .iter()
                .zip(&orientations)
                .map(|(&l, &o)| MixedPancake::new(l, o))
                .collect(),
        ))
    } else if signed {
        AnyStack::Burnt(BurntStack::from_vec_unchecked(
            labels
                .iter()
                .zip(&orientations)
                .map(|(&l, &o)| {
                    if o == Orientation::Up {
                        -(l as i32)
                    } else {
                        l as i32
                    }
                })
                .collect(),
        ))
    } else {
        AnyStack::Unburnt(UnburntStack::from_vec_unchecked(labels))
    };
    Ok(stack)
}

pub fn parse_burnt(text: &str) -> Result<BurntStack> {
    parse(text)?.to_burnt()
}

pub fn parse_unburnt(text: &str) -> Result<UnburntStack> {
    parse(text)?.to_unburnt()
}

fn write_joined<T, F>(f: &mut fmt::Formatter<'_>, items: &[T], mut one: F) -> fmt::Result
where
    F: FnMut(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
{
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        one(f, item)?;
    }
    Ok(())
}

impl fmt::Display for BurntStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.entries(), |f, e| write!(f, "{e:+}"))
    }
}

impl fmt::Display for UnburntStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.entries(), |f, e| write!(f, "{e}"))
    }
}

impl fmt::Display for MixedStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.entries(), |f, p| match p.orientation {
            Orientation::Unburnt => write!(f, "{}u", p.label),
            Orientation::Down => write!(f, "+{}", p.label),
            Orientation::Up => write!(f, "-{}", p.label),
        })
    }
}

impl fmt::Display for AnyStack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyStack::Burnt(s) => s.fmt(f),
            AnyStack::Unburnt(s) => s.fmt(f),
            AnyStack::Mixed(s) => s.fmt(f),
        }
    }
}

impl std::str::FromStr for AnyStack {
    type Err = PancakeError;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Canonical text form; equivalent to `to_string()`.
pub fn format(stack: &AnyStack) -> String {
    stack.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        assert_eq!(
            parse("-I4").unwrap(),
            AnyStack::Burnt(BurntStack::new(vec![-1, -2, -3, -4]).unwrap())
        );
        assert_eq!(
            parse("I3").unwrap(),
            AnyStack::Burnt(BurntStack::identity(3))
        );
        assert_eq!(parse("J3").unwrap().to_string(), "+1 -2 -3");
        assert_eq!(parse("Y4").unwrap().to_string(), "-1 -2 +3 -4");
        assert!(parse("Y1").is_err());
        assert!(parse("I0").is_err());
    }

    #[test]
    fn variants_by_token_shape() {
        assert_eq!(
            parse("3 1 2").unwrap(),
            AnyStack::Unburnt(UnburntStack::new(vec![3, 1, 2]).unwrap())
        );
        let s = parse("+2 -1 +3").unwrap();
        assert!(matches!(s, AnyStack::Burnt(_)));
        assert_eq!(format(&s), "+2 -1 +3");
        let m = parse("2u 3 1u").unwrap();
        assert_eq!(format(&m), "2u +3 1u");
        assert_eq!(parse(&format(&m)).unwrap(), m);
    }

    #[test]
    fn canonical_spacing() {
        assert_eq!(format(&parse("  +1\t-2   +3 ").unwrap()), "+1 -2 +3");
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(
            parse("1 0 2"),
            Err(PancakeError::Parse {
                position: 2,
                message: "pancake 0 does not exist".into()
            })
        );
        assert!(matches!(
            parse("1 2 2"),
            Err(PancakeError::Parse { position: 3, .. })
        ));
        assert!(matches!(
            parse("1 4 2"),
            Err(PancakeError::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse("1 x"),
            Err(PancakeError::Parse { position: 2, .. })
        ));
        assert!(parse("").is_err());
        assert!(parse("-2u 1").is_err());
    }
}
