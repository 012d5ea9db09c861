//! Parsing of command-line values: polynomials, points, windows and
//! Partition instances.

use std::str::FromStr;

use anyhow::{bail, Context, Result};
use archtrop_core::amoeba::Window;
use archtrop_core::polyhedra::Point;
use archtrop_core::{LaurentPolynomial, LogLinearForm, PolynomialSystem};

/// The first polynomial of the start-point example.
pub const F1: &str = "1 + x1^3 + x2^2 - 3*x1*x2";
/// The unit-coefficient octanomial with two interior lattice points.
pub const EXAMPLE_F: &str = "1 + x2^2 + x2^4 + x1*x2^2 + x1*x2^4 + x1^2*x2 + x1^2*x2^2 + x1^3";
/// The same support with spread coefficients; its variety has two holes.
pub const EXAMPLE_G: &str =
    "0.1 + 0.2*x2^2 + 0.1*x2^4 + 10*x1*x2^2 + 0.001*x1*x2^4 + 0.01*x1^2*x2 + 0.1*x1^2*x2^2 + 0.000005*x1^3";

/// Built-in polynomial lists accepted by `--system`.
pub fn preset(name: &str) -> Option<Vec<&'static str>> {
    match name {
        "two-poly" => Some(vec![F1, EXAMPLE_G]),
        "f1" => Some(vec![F1]),
        "example-f" => Some(vec![EXAMPLE_F]),
        "example-g" => Some(vec![EXAMPLE_G]),
        _ => None,
    }
}

pub const PRESET_NAMES: &[&str] = &["two-poly", "f1", "example-f", "example-g"];

/// Largest variable index `k` of any `xk`, or 1 when only `x` (or no
/// variable) occurs.
pub fn infer_dim(texts: &[String]) -> usize {
    let mut n = 1;
    for t in texts {
        let b = t.as_bytes();
        for i in 0..b.len() {
            if b[i] != b'x' {
                continue;
            }
            let digits: String = t[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                n = n.max(k);
            }
        }
    }
    n
}

/// Polynomial texts from repeated `-f` values and an optional `--system`,
/// which is a preset name or a file with one polynomial per line (`#`
/// starts a comment).
pub fn polynomial_texts(inline: &[String], system: Option<&str>) -> Result<Vec<String>> {
    let mut out: Vec<String> = inline.to_vec();
    if let Some(s) = system {
        if let Some(p) = preset(s) {
            out.extend(p.into_iter().map(String::from));
        } else {
            let body = std::fs::read_to_string(s).with_context(|| {
                format!("--system {s:?} is neither a preset ({}) nor a readable file", PRESET_NAMES.join(", "))
            })?;
            out.extend(
                body.lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(String::from),
            );
        }
    }
    if out.is_empty() {
        bail!("no polynomial given; use -f or --system");
    }
    Ok(out)
}

/// Parses all texts in a common number of variables: `dim` if given, else
/// the larger of the inferred dimension and `hint`.
pub fn parse_polynomials(texts: &[String], dim: Option<usize>, hint: usize) -> Result<Vec<LaurentPolynomial>> {
    let n = dim.unwrap_or_else(|| infer_dim(texts).max(hint));
    texts
        .iter()
        .map(|t| LaurentPolynomial::parse(t, n).with_context(|| format!("cannot parse polynomial {t:?}")))
        .collect()
}

pub fn parse_system(texts: &[String], dim: Option<usize>, hint: usize) -> Result<PolynomialSystem> {
    Ok(PolynomialSystem::new(parse_polynomials(texts, dim, hint)?)?)
}

/// Comma-separated coordinates, each a rational or log-linear form such as
/// `2`, `-1/3` or `ln(3) - 1`.
pub fn parse_point(s: &str) -> Result<Point> {
    s.split(',')
        .map(|c| LogLinearForm::from_str(c.trim()).with_context(|| format!("bad coordinate {c:?} in point {s:?}")))
        .collect()
}

/// `x0,x1,y0,y1`.
pub fn parse_window(s: &str) -> Result<Window> {
    let v: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().with_context(|| format!("bad window bound {c:?}")))
        .collect::<Result<_>>()?;
    let [x0, x1, y0, y1] = v[..] else {
        bail!("window needs four values x0,x1,y0,y1, got {}", v.len());
    };
    Ok(Window::new(x0, x1, y0, y1)?)
}

/// Comma-separated positive integers.
pub fn parse_alpha(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|c| c.trim().parse::<i64>().with_context(|| format!("bad Partition entry {c:?}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dim(&["1 - x".into()]), 1);
        assert_eq!(infer_dim(&[F1.into()]), 2);
        assert_eq!(infer_dim(&["x3 + x12^2".into(), "1".into()]), 12);
    }

    #[test]
    fn points_and_windows() {
        let p = parse_point("2, ln(3) - 1/2").unwrap();
        assert_eq!(p.len(), 2);
        assert!((p[1].to_f64() - (3f64.ln() - 0.5)).abs() < 1e-15);
        assert!(parse_point("2,,1").is_err());
        let w = parse_window("-11,11,-9,9").unwrap();
        assert_eq!((w.x0, w.y1), (-11.0, 9.0));
        assert!(parse_window("1,0,0,1").is_err());
        assert!(parse_window("1,2,3").is_err());
    }

    #[test]
    fn presets_parse() {
        for name in PRESET_NAMES {
            let texts = polynomial_texts(&[], Some(name)).unwrap();
            parse_polynomials(&texts, None, 0).unwrap();
        }
        assert!(polynomial_texts(&[], None).is_err());
        assert!(polynomial_texts(&[], Some("/nonexistent/file")).is_err());
    }
}
