//! Evaluator for factored integers such as `2(2^7*3^2)^2`: products of
//! integers and parenthesized groups, with `^` exponents and `*` or
//! juxtaposition for multiplication.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

pub fn parse_factored(s: &str) -> Result<BigInt> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let v = product(&chars, &mut pos, s)?;
    if pos != chars.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

fn product(c: &[char], pos: &mut usize, src: &str) -> Result<BigInt> {
    let mut acc = BigInt::one();
    let mut any = false;
    while *pos < c.len() && c[*pos] != ')' {
        if c[*pos] == '*' || c[*pos] == '\u{b7}' {
            if !any {
                return Err(Error::Parse(format!("leading '*' in {src:?}")));
            }
            *pos += 1;
        }
        acc *= power(c, pos, src)?;
        any = true;
    }
    if !any {
        return Err(Error::Parse(format!("empty product in {src:?}")));
    }
    Ok(acc)
}

fn power(c: &[char], pos: &mut usize, src: &str) -> Result<BigInt> {
    let base = atom(c, pos, src)?;
    if *pos < c.len() && c[*pos] == '^' {
        *pos += 1;
        let e = integer(c, pos, src)?;
        let e: u32 = e
            .try_into()
            .map_err(|_| Error::Parse(format!("exponent too large in {src:?}")))?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn atom(c: &[char], pos: &mut usize, src: &str) -> Result<BigInt> {
    match c.get(*pos) {
        Some('(') => {
            *pos += 1;
            let v = product(c, pos, src)?;
            if c.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("unbalanced parentheses in {src:?}")));
            }
            *pos += 1;
            Ok(v)
        }
        Some(ch) if ch.is_ascii_digit() => integer(c, pos, src),
        _ => Err(Error::Parse(format!("unexpected character in {src:?}"))),
    }
}

fn integer(c: &[char], pos: &mut usize, src: &str) -> Result<BigInt> {
    let start = *pos;
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse(format!("expected digits in {src:?}")));
    }
    let digits: String = c[start..*pos].iter().collect();
    Ok(digits.parse().expect("digits"))
}
