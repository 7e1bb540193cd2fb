use std::fmt::Write as _;
use std::path::Path;

use super::{CaError, Orbit, Result};

/// Plain PBM (P1) of an orbit: row `t` is `X_t`, columns span the union of
/// all supports padded by one cell on each side, `1` is black. An orbit of
/// empty configurations renders as a single white pixel.
pub fn render_pbm(orbit: &Orbit) -> Result<String> {
    if orbit.rule.alphabet_size() != 2 {
        return Err(CaError::NonBinary(orbit.rule.alphabet_size()));
    }
    let bounds = orbit
        .configurations
        .iter()
        .filter_map(|c| c.support())
        .reduce(|(l1, r1), (l2, r2)| (l1.min(l2), r1.max(r2)));
    let mut out = String::new();
    let Some((left, right)) = bounds else {
        out.push_str("P1\n1 1\n0\n");
        return Ok(out);
    };
    let (from, to) = (left - 1, right + 1);
    writeln!(out, "P1\n{} {}", to - from, orbit.configurations.len()).unwrap();
    for c in &orbit.configurations {
        for cell in c.window(from, to) {
            out.push(if cell == 0 { '0' } else { '1' });
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn render_orbit(orbit: &Orbit, path: impl AsRef<Path>) -> Result<()> {
    let text = render_pbm(orbit)?;
    std::fs::write(path, text)?;
    Ok(())
}
