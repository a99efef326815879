//! Text formats shared by the CLI and the C bindings.
//!
//! * field: `p`, `p^e` (default modulus) or `p^e/<poly>`; a bare prime power
//!   `q` is read as `p^e`.
//! * element: an integer for prime fields, `[c0,c1,...]` little-endian for
//!   extensions.
//! * polynomial: `poly := term (('+'|'-') term)*` with
//!   `term := coeff | coeff '*' VAR ['^' exp] | VAR ['^' exp]`, where `VAR`
//!   is `x` or `t`. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::order::integer::factor_integer;
use crate::poly::Poly;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| parse_err(format!("expected a nonnegative integer, got {s:?}")))
}

pub fn parse_field(spec: &str) -> Result<FieldCtx> {
    let spec: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, modulus) = match spec.split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (spec.as_str(), None),
    };
    let (p, e) = match head.split_once('^') {
        Some((p, e)) => (parse_u64(p)?, parse_u64(e)? as usize),
        None => {
            let q = parse_u64(head)?;
            if q < 2 {
                return Err(Error::NotPrimePower(q));
            }
            let f = factor_integer(q)?;
            match f.factors() {
                [(p, e)] => (*p, *e as usize),
                _ => return Err(Error::NotPrimePower(q)),
            }
        }
    };
    match modulus {
        None => FieldCtx::new(p, e, None),
        Some(m) => {
            let base = FieldCtx::prime(p)?;
            let poly = parse_poly(&base, m)?;
            let coeffs: Vec<u64> = poly.coeffs().iter().map(|c| c.index()).collect();
            FieldCtx::new(p, e, Some(&coeffs))
        }
    }
}

pub fn format_field(field: &FieldCtx) -> String {
    match field.modulus() {
        None => field.p().to_string(),
        Some(m) => {
            let base = FieldCtx::prime(field.p()).expect("valid characteristic");
            format!(
                "{}^{}/{}",
                field.p(),
                field.e(),
                Poly::from_indices(&base, m)
            )
        }
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("expected [c0,c1,...], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| parse_err(format!("bad coefficient {c:?}")))
        })
        .collect()
}

pub fn parse_element(field: &FieldCtx, s: &str) -> Result<FieldElement> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.starts_with('[') {
        let coeffs: Vec<u64> = parse_int_list(&s)?
            .into_iter()
            .map(|c| c.rem_euclid(field.p() as i64) as u64)
            .collect();
        field.from_coeffs(&coeffs)
    } else {
        let n = s
            .parse::<i64>()
            .map_err(|_| parse_err(format!("bad element {s:?}")))?;
        Ok(field.from_int(n))
    }
}

pub fn format_element(field: &FieldCtx, a: FieldElement) -> String {
    if field.is_prime_field() {
        a.index().to_string()
    } else {
        let c: Vec<String> = field.coeffs(a).iter().map(u64::to_string).collect();
        format!("[{}]", c.join(","))
    }
}

/// Splits on `sep` outside brackets and parentheses.
pub fn split_top_level(s: &str, sep: char) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(format!("unbalanced brackets in {s:?}")));
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced brackets in {s:?}")));
    }
    out.push(cur);
    Ok(out.into_iter().map(|p| p.trim().to_string()).collect())
}

/// Comma-separated elements, e.g. `1,0,1` or `[1,0],[0,1]`.
pub fn parse_element_list(field: &FieldCtx, s: &str) -> Result<Vec<FieldElement>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(s, ',')?
        .iter()
        .map(|part| parse_element(field, part))
        .collect()
}

pub fn parse_poly(field: &FieldCtx, s: &str) -> Result<Poly> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let mut pos = 0usize;
    let mut var: Option<char> = None;
    let mut coeffs: Vec<FieldElement> = Vec::new();
    let mut first = true;
    while pos < src.len() {
        let mut negate = false;
        if first {
            if src[pos] == '-' {
                negate = true;
                pos += 1;
            } else if src[pos] == '+' {
                pos += 1;
            }
        } else {
            match src[pos] {
                '+' => {}
                '-' => negate = true,
                c => {
                    return Err(parse_err(format!(
                        "expected '+' or '-' at {pos}, got {c:?}"
                    )))
                }
            }
            pos += 1;
        }
        first = false;

        let coeff = read_coeff(field, &src, &mut pos)?;
        let has_coeff = coeff.is_some();
        if has_coeff && pos < src.len() && src[pos] == '*' {
            pos += 1;
            if pos >= src.len() || !is_var(src[pos]) {
                return Err(parse_err(format!("expected variable after '*' at {pos}")));
            }
        }
        let exponent = if pos < src.len() && is_var(src[pos]) {
            if has_coeff && src[pos - 1] != '*' {
                return Err(parse_err(format!("missing '*' before variable at {pos}")));
            }
            match var {
                Some(v) if v != src[pos] => {
                    return Err(parse_err("mixed variable letters"));
                }
                _ => var = Some(src[pos]),
            }
            pos += 1;
            if pos < src.len() && src[pos] == '^' {
                pos += 1;
                let start = pos;
                while pos < src.len() && src[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(parse_err(format!("expected exponent at {start}")));
                }
                let e: String = src[start..pos].iter().collect();
                e.parse::<usize>()
                    .map_err(|_| parse_err(format!("bad exponent {e:?}")))?
            } else {
                1
            }
        } else if has_coeff {
            0
        } else {
            return Err(parse_err(format!("expected a term at {pos}")));
        };
        if exponent > 1 << 16 {
            return Err(parse_err(format!("exponent {exponent} too large")));
        }
        let mut c = coeff.unwrap_or(field.one());
        if negate {
            c = field.neg(c);
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, field.zero());
        }
        coeffs[exponent] = field.add(coeffs[exponent], c);
    }
    Ok(Poly::new(field, coeffs))
}

fn is_var(c: char) -> bool {
    c == 'x' || c == 't'
}

fn read_coeff(field: &FieldCtx, src: &[char], pos: &mut usize) -> Result<Option<FieldElement>> {
    if *pos >= src.len() {
        return Err(parse_err("unexpected end of polynomial"));
    }
    if src[*pos] == '[' {
        let start = *pos;
        while *pos < src.len() && src[*pos] != ']' {
            *pos += 1;
        }
        if *pos >= src.len() {
            return Err(parse_err("unterminated '['"));
        }
        *pos += 1;
        let text: String = src[start..*pos].iter().collect();
        return parse_element(field, &text).map(Some);
    }
    let start = *pos;
    while *pos < src.len() && src[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Ok(None);
    }
    let digits: String = src[start..*pos].iter().collect();
    // reduce digit by digit so arbitrarily long literals stay exact
    let p = field.p();
    let v = digits
        .bytes()
        .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
    Ok(Some(field.from_int(v as i64)))
}

fn format_coeff(field: &FieldCtx, c: FieldElement) -> String {
    match field.as_prime(c) {
        Some(v) => v.to_string(),
        None => format_element(field, c),
    }
}

/// Canonical text: descending powers, coefficients in `[0, p)`, unit
/// coefficients omitted on non-constant terms.
pub fn format_poly(f: &Poly, var: char) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let field = f.field();
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (i, c == field.one()) {
            (0, _) => format_coeff(field, c),
            (_, true) => mono,
            _ => format!("{}*{}", format_coeff(field, c), mono),
        });
    }
    terms.join("+")
}
