//! Flag value grammars.

use num_complex::Complex64;
use orb4kit_core::{FgAbelianGroup, GradedGroup};

pub fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

pub fn finite_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn ints<T: std::str::FromStr>(s: &str, n: usize) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated integers, got `{s}`"));
    }
    parts.iter().map(|p| p.parse::<T>().map_err(|e| format!("`{p}`: {e}"))).collect()
}

/// `a,b,c` with positive entries.
pub fn weights(s: &str) -> Result<[u64; 3], String> {
    let v = ints::<u64>(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

/// `m0,m1,m2`, signs allowed.
pub fn action(s: &str) -> Result<[i64; 3], String> {
    let v = ints::<i64>(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

pub fn int_pair(s: &str) -> Result<(i64, i64), String> {
    let v = ints::<i64>(s, 2)?;
    Ok((v[0], v[1]))
}

/// `re,im;re,im;...` with one pair per complex coordinate.
pub fn complex_vector(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';')
        .map(|pair| {
            let v = ints_f64(pair)?;
            Ok(Complex64::new(v[0], v[1]))
        })
        .collect()
}

fn ints_f64(pair: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected `re,im`, got `{pair}`"));
    }
    let re = finite_f64(parts[0])?;
    let im = finite_f64(parts[1])?;
    Ok([re, im])
}

pub fn complex3(s: &str) -> Result<[Complex64; 3], String> {
    let v = complex_vector(s)?;
    <[Complex64; 3]>::try_from(v).map_err(|v| format!("expected 3 complex coordinates, got {}", v.len()))
}

/// One group: `0`, or summands `Z`, `Z^r`, `Z_d` joined by `+`.
pub fn group(s: &str) -> Result<FgAbelianGroup, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(FgAbelianGroup::trivial());
    }
    let mut rank = 0u32;
    let mut torsion = Vec::new();
    for term in s.split('+').map(str::trim) {
        if term == "Z" {
            rank += 1;
        } else if let Some(r) = term.strip_prefix("Z^") {
            rank += r.parse::<u32>().map_err(|e| format!("`{term}`: {e}"))?;
        } else if let Some(d) = term.strip_prefix("Z_") {
            torsion.push(d.parse::<u64>().map_err(|e| format!("`{term}`: {e}"))?);
        } else {
            return Err(format!("cannot parse group summand `{term}` (use Z, Z^r, Z_d or 0)"));
        }
    }
    FgAbelianGroup::new(rank, &torsion).map_err(|e| e.to_string())
}

/// Groups in degrees `0..=n` separated by `;`, e.g. `Z;0;Z_5;0;Z`.
pub fn graded(s: &str) -> Result<GradedGroup, String> {
    let groups = s.split(';').map(group).collect::<Result<Vec<_>, _>>()?;
    GradedGroup::new(groups).map_err(|e| e.to_string())
}
