//! Family specs: `symbolic`, `geom:<scale>,<ratio>`, `const:<value>` and
//! `list:<v1>;<v2>;...`, with values in the expression syntax.

use ratinterp::{Family, FamilySpec};

use crate::error::CliError;
use crate::expr::parse_expression;

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn value(s: &str) -> Result<ratinterp::RatFun, CliError> {
    parse_expression(s)?.to_ratfun()
}

pub fn parse_family(spec: &str, family: Family) -> Result<FamilySpec, CliError> {
    let spec = spec.trim();
    if spec == "symbolic" {
        return Ok(FamilySpec::Symbolic(family));
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("bad family spec '{spec}'; expected symbolic, geom:s,r, const:v or list:v1;v2")))?;
    match kind {
        "geom" => match split_top(body, ',').as_slice() {
            [s, r] => Ok(FamilySpec::geometric(value(s)?, value(r)?)),
            _ => Err(CliError::Usage(format!("geom needs <scale>,<ratio>, got '{body}'"))),
        },
        "const" => Ok(FamilySpec::constant(value(body)?)),
        "list" => {
            let vals = split_top(body, ';').into_iter().map(value).collect::<Result<Vec<_>, _>>()?;
            Ok(FamilySpec::Explicit(vals))
        }
        other => Err(CliError::Usage(format!("unknown family kind '{other}'"))),
    }
}
