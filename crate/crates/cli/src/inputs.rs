//! Parsing of command-line values.
//!
//! Structured arguments (domains, maps, regions) accept inline JSON, a
//! short form such as `circle(1.5)`, or `@path` to read either from a file.

use std::path::Path;

use arithcap::algebra::RatPoly;
use arithcap::patching::RegionSpec;
use arithcap::potential::{AnalyticMap, Curve, DomainSpec};
use arithcap::Complex64;

use crate::error::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

/// Resolves `@path` to the file contents and returns anything else as is.
fn resolve(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(read_file(Path::new(path))?.trim().to_string()),
        None => Ok(arg.trim().to_string()),
    }
}

fn numbers(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Parse(format!("not a number: {s:?}")))
        })
        .collect()
}

/// `name(a, b, …)` to `(name, [a, b, …])`.
fn call_form(text: &str) -> Option<(&str, &str)> {
    let open = text.find('(')?;
    let inner = text[open + 1..].strip_suffix(')')?;
    Some((text[..open].trim(), inner))
}

pub fn parse_point(text: &str) -> Result<Complex64, CliError> {
    match numbers(text)?.as_slice() {
        [x, y] => Ok(Complex64::new(*x, *y)),
        [x] => Ok(Complex64::new(*x, 0.0)),
        _ => Err(CliError::Parse(format!("expected x,y but got {text:?}"))),
    }
}

pub fn parse_domain(arg: &str) -> Result<DomainSpec, CliError> {
    let text = resolve(arg)?;
    if text.starts_with('{') {
        return Ok(DomainSpec::from_json(&text)?);
    }
    let Some((name, inner)) = call_form(&text) else {
        return Err(CliError::Parse(format!("unrecognized domain {text:?}")));
    };
    let v = numbers(inner)?;
    let origin = Complex64::new(0.0, 0.0);
    let bad = || CliError::Parse(format!("wrong number of arguments in {text:?}"));
    let curve = match name {
        "circle" | "disk" => match v.as_slice() {
            [r] => Curve::circle(origin, *r)?,
            [r, x, y] => Curve::circle(Complex64::new(*x, *y), *r)?,
            _ => return Err(bad()),
        },
        "ellipse" => match v.as_slice() {
            [a, b] => Curve::ellipse(origin, *a, *b, 0.0)?,
            [a, b, angle] => Curve::ellipse(origin, *a, *b, *angle)?,
            _ => return Err(bad()),
        },
        "conformal" => {
            if v.len() < 2 {
                return Err(bad());
            }
            let d: Vec<Complex64> = v.iter().map(|&c| Complex64::new(c, 0.0)).collect();
            Curve::conformal_image(&d)?
        }
        _ => return Err(CliError::Parse(format!("unknown domain kind {name:?}"))),
    };
    // Short forms are centred where the curve is: origin, or the circle's centre.
    let center = match (name, v.as_slice()) {
        ("circle" | "disk", [_, x, y]) => Complex64::new(*x, *y),
        ("conformal", _) => Complex64::new(v[0], 0.0),
        _ => origin,
    };
    Ok(DomainSpec::new(vec![curve], center)?)
}

pub fn parse_poly(arg: &str) -> Result<RatPoly, CliError> {
    Ok(arithcap::text::parse_polynomial(&resolve(arg)?)?)
}

pub fn parse_map(arg: &str) -> Result<AnalyticMap, CliError> {
    let text = resolve(arg)?;
    if text.starts_with('{') {
        return serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("map: {e}")));
    }
    Ok(AnalyticMap::from_poly(&arithcap::text::parse_polynomial(
        &text,
    )?))
}

pub fn parse_region(arg: &str) -> Result<RegionSpec, CliError> {
    let text = resolve(arg)?;
    if text.starts_with('[') {
        return Ok(RegionSpec::from_json(&text)?);
    }
    match call_form(&text) {
        Some(("disk", inner)) => match numbers(inner)?.as_slice() {
            [r] => Ok(RegionSpec::disk(*r)?),
            _ => Err(CliError::Parse(format!("disk takes one radius: {text:?}"))),
        },
        _ => Err(CliError::Parse(format!("unrecognized region {text:?}"))),
    }
}

/// JSON list of `[x, y]` pairs.
pub fn parse_points(path: &Path) -> Result<Vec<Complex64>, CliError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Parse(format!("points: {e}")))?;
    Ok(pairs.iter().map(|[x, y]| Complex64::new(*x, *y)).collect())
}

/// JSON list of integer lists.
pub fn parse_seed_lists(path: &Path) -> Result<Vec<Vec<i64>>, CliError> {
    serde_json::from_str(&read_file(path)?).map_err(|e| CliError::Parse(format!("seeds: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_forms() {
        let d = parse_domain("circle(1.5, 1, 0)").unwrap();
        assert_eq!(d.center(), Complex64::new(1.0, 0.0));
        assert!(parse_domain("ellipse(2, 1, 0.3)").is_ok());
        assert!(parse_domain("conformal(0, 1.3, 0.2)").is_ok());
        assert!(matches!(parse_domain("square(1)"), Err(CliError::Parse(_))));
        assert!(matches!(
            parse_domain("circle(1,2)"),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            parse_domain("circle(-1)"),
            Err(CliError::Potential(_))
        ));
    }

    #[test]
    fn json_domain_and_map() {
        let d = parse_domain(r#"{"type": "circle", "params": {"radius": 2.0}}"#).unwrap();
        assert_eq!(d.curves().len(), 1);
        let f = parse_map(r#"{"kind": "polynomial", "coeffs": [[0, 0], [1, 0]]}"#).unwrap();
        assert_eq!(f, AnalyticMap::identity());
        assert_eq!(
            parse_map("x^2").unwrap(),
            AnalyticMap::real_polynomial(&[0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn regions_and_points() {
        assert_eq!(parse_region("disk(9)").unwrap().holes().len(), 1);
        let r =
            parse_region(r#"[{"center": [0, 0], "radius": 1}, {"center": [3, 0], "radius": 1}]"#)
                .unwrap();
        assert_eq!(r.holes().len(), 2);
        assert_eq!(parse_point("1,-2").unwrap(), Complex64::new(1.0, -2.0));
        assert!(parse_point("1,2,3").is_err());
    }

    #[test]
    fn missing_file_is_io() {
        assert!(matches!(
            parse_domain("@/nonexistent/domain.json"),
            Err(CliError::Io { .. })
        ));
    }
}
