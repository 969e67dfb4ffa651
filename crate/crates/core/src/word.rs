//! Words over the three involutory generators ρ0, ρ1, ρ2, written a, b, c.
//!
//! Words act on flags from the left letter first. Free reduction only
//! cancels ρi·ρi; no group relations beyond the involutions are applied,
//! since membership questions are always settled through the flag action.

use std::fmt;
use thiserror::Error;

/// One of the three generators: `A` = ρ0, `B` = ρ1, `C` = ρ2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    A,
    B,
    C,
}

impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index() as u8)
    }
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    /// Adjacency label 0, 1 or 2.
    pub fn index(self) -> usize {
        match self {
            Letter::A => 0,
            Letter::B => 1,
            Letter::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i]
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }
}

/// A finite word; the empty word is the identity ε.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    /// Shorthand constructor from "abc..." text; panics on other characters.
    pub fn lit(s: &str) -> Word {
        Word(
            s.chars()
                .map(|ch| match ch {
                    'a' => Letter::A,
                    'b' => Letter::B,
                    'c' => Letter::C,
                    _ => panic!("Word::lit expects only a, b, c"),
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Inverse word: letters reversed (every letter is an involution).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// w1^w2 = w2⁻¹ · w1 · w2.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// n-th power; negative n repeats the inverse word.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(self.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Deletes adjacent equal letters until none remain. The result is the
    /// normal form in the free product of three order-2 groups; idempotent.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseWordError {
    pub pos: usize,
    pub msg: String,
}

/// Parses a word expression.
///
/// Grammar (whitespace ignored):
/// ```text
/// word    := factor+
/// factor  := base ('^' base)? ('^' integer)?
/// base    := 'a' | 'b' | 'c' | '(' word ')'
/// integer := '-'? [0-9]+
/// ```
/// `g^w` is conjugation w⁻¹gw, `g^n` the n-th power; both bind tighter
/// than juxtaposition. An empty input parses to ε.
pub fn parse_word(text: &str) -> Result<Word, ParseWordError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Ok(Word::empty());
    }
    let w = p.word()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseWordError {
        ParseWordError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(ch) if ch.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, ParseWordError> {
        let mut out = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'a') | Some(b'b') | Some(b'c') | Some(b'(') => {
                    out = out.concat(&self.factor()?);
                }
                _ => return Ok(out),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseWordError> {
        let mut w = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'a') | Some(b'b') | Some(b'c') | Some(b'(') => {
                    w = w.conjugate(&self.base()?);
                }
                Some(ch) if ch == b'-' || ch.is_ascii_digit() => {
                    self.pos = save;
                }
                _ => return Err(self.err("expected word or integer after '^'")),
            }
        }
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            w = w.pow(self.integer()?);
        }
        Ok(w)
    }

    fn base(&mut self) -> Result<Word, ParseWordError> {
        self.skip_ws();
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(Word::from_letters([Letter::A]))
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(Word::from_letters([Letter::B]))
            }
            Some(b'c') => {
                self.pos += 1;
                Ok(Word::from_letters([Letter::C]))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    return Err(self.err("empty parentheses"));
                }
                let w = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(_) => Err(self.err("expected 'a', 'b', 'c' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseWordError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(ch) if ch.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn concat_examples() {
        let w = Word::lit("ab");
        assert_eq!(Word::empty().concat(&w), w);
        assert_eq!(Word::lit("ab").concat(&Word::lit("c")), Word::lit("abc"));
        let u = Word::lit("abc");
        assert_eq!(u.concat(&u.inverse()), Word::lit("abccba"));
        assert_eq!(u.concat(&u.inverse()).free_reduce(), Word::empty());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(Word::lit("abc").inverse(), Word::lit("cba"));
        assert_eq!(Word::lit("ab").pow(3).inverse(), Word::lit("bababa"));
    }

    #[test]
    fn conjugate_examples() {
        let g = Word::lit("ab").pow(3);
        assert_eq!(g.conjugate(&Word::empty()), g);
        assert_eq!(g.conjugate(&Word::lit("c")), Word::lit("cabababc"));
        let g4 = Word::lit("ab").pow(4);
        assert_eq!(g4.conjugate(&Word::lit("cb")), Word::lit("bcababababcb"));
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(Word::lit("aabb").free_reduce(), Word::empty());
        assert_eq!(Word::lit("abba").free_reduce(), Word::empty());
        assert_eq!(Word::lit("acbbca").free_reduce(), Word::empty());
        assert_eq!(Word::lit("acbca").free_reduce(), Word::lit("acbca"));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("((ab)^3)^c").unwrap(), Word::lit("cabababc"));
        assert_eq!(parse_word("").unwrap(), Word::empty());
        assert_eq!(parse_word("   ").unwrap(), Word::empty());
        assert_eq!(parse_word("(ab)^-1").unwrap(), Word::lit("ba"));
        assert_eq!(parse_word("(ab)^0").unwrap(), Word::empty());
        assert_eq!(parse_word("a b c").unwrap(), Word::lit("abc"));
        assert_eq!(parse_word("cbab(cb)^2ab").unwrap(), Word::lit("cbabcbcbab"));
        // ^ binds to a single base: bare cb conjugates by c only, with b
        // juxtaposed; a multi-letter conjugator needs parentheses.
        assert_eq!(parse_word("((ab)^4)^cb").unwrap(), Word::lit("cababababcb"));
        assert_eq!(parse_word("((ab)^4)^(cb)").unwrap(), Word::lit("bcababababcb"));
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_word("(ab").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = parse_word("ab^").unwrap_err();
        assert!(e.pos >= 2);
        let e = parse_word("ab)").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_word("d").is_err());
        assert!(parse_word("()").is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(vec![Letter::A, Letter::B, Letter::C]), 0..max_len)
            .prop_map(Word::from_letters)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn reduce_idempotent(w in arb_word(64)) {
            let r = w.free_reduce();
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn word_times_inverse_is_trivial(w in arb_word(64)) {
            prop_assert_eq!(w.concat(&w.inverse()).free_reduce(), Word::empty());
        }

        #[test]
        fn conjugation_composes(g in arb_word(16), u in arb_word(16), v in arb_word(16)) {
            let lhs = g.conjugate(&u).conjugate(&v).free_reduce();
            let rhs = g.conjugate(&u.concat(&v)).free_reduce();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_format_round_trip(w in arb_word(64)) {
            let parsed = parse_word(&w.to_string()).unwrap();
            prop_assert_eq!(parsed.free_reduce(), w.free_reduce());
        }
    }
}
