use num_complex::Complex64;
use zetalab::{Error, Result};

/// `y2=x3+A*x+B` with integer `A`, `B`. Spaces, `^` and `*` are optional, either
/// of the linear and constant terms may be absent.
pub fn parse_curve(s: &str) -> Result<(i64, i64)> {
    let bad = |why: &str| Error::Invalid(format!("curve `{s}`: {why}; expected y2=x3+A*x+B"));
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '^' && *c != '*').collect();
    let (lhs, rhs) = t.split_once('=').ok_or_else(|| bad("missing `=`"))?;
    if lhs != "y2" {
        return Err(bad("left side must be y2"));
    }
    let rest = rhs.strip_prefix("x3").ok_or_else(|| bad("right side must start with x3"))?;
    let (mut a, mut b) = (None, None);
    for term in signed_terms(rest).map_err(|e| bad(&e))? {
        let (sign, body) = term;
        if let Some(c) = body.strip_suffix('x') {
            let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad("bad x coefficient"))? };
            if a.replace(sign * c).is_some() {
                return Err(bad("repeated x term"));
            }
        } else {
            let c = body.parse::<i64>().map_err(|_| bad("bad constant"))?;
            if b.replace(sign * c).is_some() {
                return Err(bad("repeated constant"));
            }
        }
    }
    Ok((a.unwrap_or(0), b.unwrap_or(0)))
}

fn signed_terms(s: &str) -> std::result::Result<Vec<(i64, &str)>, String> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'+' => 1,
            b'-' => -1,
            _ => return Err("terms must be joined by + or -".into()),
        };
        rest = &rest[1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        if end == 0 {
            return Err("empty term".into());
        }
        out.push((sign, &rest[..end]));
        rest = &rest[end..];
    }
    Ok(out)
}

/// `a`, `bi`, `a+bi`, `a-bi`, with `i` or `j`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Invalid(format!("cannot parse complex number `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |x: &str| -> Result<f64> {
        let v: f64 = x.parse().map_err(|_| bad())?;
        if v.is_finite() { Ok(v) } else { Err(bad()) }
    };
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let im = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => num(x),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, im(&body[k..])?)),
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("`{x}` is not a nonnegative integer"))))
        .collect()
}
