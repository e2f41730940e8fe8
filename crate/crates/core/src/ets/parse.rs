//! Text notation for elementary transform sequences.
//!
//! ```text
//! ets  := term (whitespace term)* | ""
//! term := axis "(" arg ")"
//! axis := "tx" | "ty" | "tz" | "rx" | "ry" | "rz"      (case-insensitive)
//! arg  := number ("deg")? | "-"? "q" uint
//! ```
//!
//! Numbers are radians for rotations and length units for translations;
//! a `deg` suffix is accepted on rotations only.

use super::{ElementaryTransform, EtParam, Ets};
use crate::error::{Error, Result};
use crate::liealg::Axis;
use crate::scalar::Real;

const MAX_JOINTS: usize = 1 << 16;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(b) => format!("`{}`", b as char),
                None => "end of input".to_string(),
            };
            Err(Error::parse(
                self.pos,
                format!("expected `{}`, found {found}", c as char),
            ))
        }
    }

    fn eat_ignore_case(&mut self, word: &str) -> bool {
        let end = self.pos + word.len();
        if end <= self.src.len() && self.src.as_bytes()[self.pos..end].eq_ignore_ascii_case(word.as_bytes()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if f(c)) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }
}

/// Parses the text notation into a sequence.
pub fn parse_ets<T: Real>(text: &str) -> Result<Ets<T>> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut transforms = Vec::new();
    // seen[j] = byte offset of the term that introduced joint j
    let mut seen: Vec<Option<usize>> = Vec::new();

    let mut separated = true;
    loop {
        if cur.skip_ws() {
            separated = true;
        }
        if cur.at_end() {
            break;
        }
        if !separated {
            return Err(Error::parse(cur.pos, "expected whitespace between terms"));
        }
        let term_start = cur.pos;
        let et = parse_term::<T>(&mut cur)?;
        if let EtParam::Joint { index, .. } = et.param {
            if seen.len() <= index {
                seen.resize(index + 1, None);
            }
            if let Some(first) = seen[index] {
                return Err(Error::parse(
                    term_start,
                    format!("duplicate joint index q{index} (first used at byte {first})"),
                ));
            }
            seen[index] = Some(term_start);
        }
        transforms.push(et);
        separated = false;
    }

    if let Some(missing) = seen.iter().position(Option::is_none) {
        return Err(Error::parse(
            text.len(),
            format!("joint indices must be contiguous from q0: q{missing} is missing"),
        ));
    }
    Ets::new(transforms).map_err(|e| Error::parse(text.len(), e.to_string()))
}

fn parse_term<T: Real>(cur: &mut Cursor<'_>) -> Result<ElementaryTransform<T>> {
    let tag_start = cur.pos;
    let tag = cur.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
    let axis = Axis::from_tag(tag).ok_or_else(|| {
        let shown = if tag.is_empty() {
            cur.peek().map(|c| (c as char).to_string()).unwrap_or_default()
        } else {
            tag.to_string()
        };
        Error::parse(tag_start, format!("unknown axis tag `{shown}`"))
    })?;
    cur.expect(b'(')?;
    cur.skip_ws();
    let param = parse_arg::<T>(cur, axis)?;
    cur.skip_ws();
    cur.expect(b')')?;
    Ok(ElementaryTransform { axis, param })
}

fn parse_arg<T: Real>(cur: &mut Cursor<'_>, axis: Axis) -> Result<EtParam<T>> {
    let start = cur.pos;

    // joint variable: "-"? "q" uint
    let mut probe = Cursor {
        src: cur.src,
        pos: cur.pos,
    };
    let flipped = probe.eat(b'-');
    if probe.eat(b'q') || probe.eat(b'Q') {
        let digits_at = probe.pos;
        let digits = probe.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(Error::parse(digits_at, "expected joint index after `q`"));
        }
        let index = digits
            .parse::<usize>()
            .ok()
            .filter(|&i| i < MAX_JOINTS)
            .ok_or_else(|| Error::parse(digits_at, format!("joint index `{digits}` out of range")))?;
        cur.pos = probe.pos;
        return Ok(EtParam::Joint { index, flipped });
    }

    let literal = scan_number(cur);
    if literal.is_empty() {
        return Err(Error::parse(start, "expected a number or joint variable"));
    }
    let value: f64 = literal
        .parse()
        .map_err(|_| Error::parse(start, format!("malformed number `{literal}`")))?;
    if !value.is_finite() {
        return Err(Error::parse(start, format!("number `{literal}` is not finite")));
    }

    let deg_at = cur.pos;
    let value = if cur.eat_ignore_case("deg") {
        if axis.is_translation() {
            return Err(Error::parse(
                deg_at,
                format!("`deg` is only valid on rotations, not `{axis}`"),
            ));
        }
        value.to_radians()
    } else {
        value
    };
    Ok(EtParam::Constant(T::from_f64_lossy(value)))
}

/// Consumes a decimal or scientific literal (validity is checked by the caller).
fn scan_number<'a>(cur: &mut Cursor<'a>) -> &'a str {
    let start = cur.pos;
    if matches!(cur.peek(), Some(b'+' | b'-')) {
        cur.pos += 1;
    }
    cur.take_while(|c| c.is_ascii_digit() || c == b'.');
    if matches!(cur.peek(), Some(b'e' | b'E')) {
        let bytes = cur.src.as_bytes();
        let mut k = cur.pos + 1;
        if matches!(bytes.get(k), Some(b'+' | b'-')) {
            k += 1;
        }
        if matches!(bytes.get(k), Some(c) if c.is_ascii_digit()) {
            cur.pos = k;
            cur.take_while(|c| c.is_ascii_digit());
        }
    }
    // swallow trailing garbage like "1.2.3x" so it is reported as one malformed literal
    cur.take_while(|c| c.is_ascii_digit() || c == b'.');
    &cur.src[start..cur.pos]
}

/// Canonical lowercase text. Constants use the shortest representation that
/// parses back to the same value.
pub fn format_ets<T: Real>(ets: &Ets<T>) -> String {
    ets.transforms()
        .iter()
        .map(|et| match et.param {
            EtParam::Constant(c) => format!("{}({})", et.axis.tag(), c),
            EtParam::Joint { index, flipped } => {
                format!("{}({}q{})", et.axis.tag(), if flipped { "-" } else { "" }, index)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
