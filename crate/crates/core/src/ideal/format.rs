//! Text form of monomial ideals.
//!
//! ```text
//! # ring: x1 x2 y1 y2
//! y1*x1^2
//! x1*x2^3
//! x2*y2
//! ```
//!
//! The `# ring:` header fixes the registry. Without it the registry is the
//! order of first appearance. The unit monomial is written `1`.

use std::fmt::Write as _;

use super::{Monomial, MonomialIdeal, Var};
use crate::error::{Error, Result};
use crate::graph::validate_name;

const RING_HEADER: &str = "# ring:";

pub fn render_monomial(m: &Monomial, registry: &[String]) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut out = String::new();
    for (i, &(v, e)) in m.exponents().iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push_str(&registry[v as usize]);
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// Renders the ideal with a `# ring:` header followed by one generator per line.
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = String::from(RING_HEADER);
    for name in ideal.registry() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for g in ideal.generators() {
        out.push_str(&render_monomial(g, ideal.registry()));
        out.push('\n');
    }
    out
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut registry: Vec<String> = Vec::new();
    let mut fixed = false;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |message: String| Error::Parse { line, message };
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix(RING_HEADER) {
            if fixed || !gens.is_empty() {
                return Err(err("the ring header must come first and only once".into()));
            }
            for name in rest.split_whitespace() {
                validate_name(name).map_err(&err)?;
                if registry.iter().any(|r| r == name) {
                    return Err(err(format!("variable `{name}` listed twice")));
                }
                registry.push(name.to_string());
            }
            fixed = true;
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut pairs: Vec<(Var, u64)> = Vec::new();
        if content != "1" {
            for factor in content.split('*') {
                let factor = factor.trim();
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u64 = e
                            .trim()
                            .parse()
                            .map_err(|_| err(format!("bad exponent in `{factor}`")))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                validate_name(name).map_err(&err)?;
                if exp == 0 {
                    return Err(err(format!("zero exponent in `{factor}`")));
                }
                let idx = match registry.iter().position(|r| r == name) {
                    Some(i) => i,
                    None if fixed => {
                        return Err(err(format!("variable `{name}` is not in the ring")))
                    }
                    None => {
                        registry.push(name.to_string());
                        registry.len() - 1
                    }
                };
                pairs.push((idx as Var, exp));
            }
        }
        let m = Monomial::try_from_pairs(pairs).ok_or_else(|| err("degree overflow".into()))?;
        gens.push(m);
    }
    MonomialIdeal::new(registry, gens)
}
