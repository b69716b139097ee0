//! Value parsers shared by the command line and the config file.

use hnstrat::rational::{parse_integer_list, parse_rational_list};
use hnstrat::Rational;

/// `gl:N`, case insensitive.
pub fn group(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let rank = s
        .strip_prefix("gl:")
        .or_else(|| s.strip_prefix("GL:"))
        .ok_or_else(|| format!("expected gl:N, got {s:?}"))?;
    match rank.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("rank must be a positive integer, got {rank:?}")),
    }
}

pub fn integers(s: &str) -> Result<Vec<i64>, String> {
    parse_integer_list(s).map_err(|e| e.to_string())
}

pub fn rationals(s: &str) -> Result<Vec<Rational>, String> {
    parse_rational_list(s).map_err(|e| e.to_string())
}

pub fn parts(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid block size {t:?}"))
        })
        .collect()
}

fn fraction(t: &str) -> Result<(i64, i64), String> {
    let t = t.trim();
    let (d, h) = t.split_once('/').unwrap_or((t, "1"));
    let d = d
        .trim()
        .parse::<i64>()
        .map_err(|_| format!("invalid block {t:?}"))?;
    let h = h
        .trim()
        .parse::<i64>()
        .map_err(|_| format!("invalid block {t:?}"))?;
    Ok((d, h))
}

/// Isocrystal blocks `d/h,d/h,...`; a bare `d` means `d/1`.
pub fn blocks(s: &str) -> Result<Vec<(i64, i64)>, String> {
    s.split(',').map(fraction).collect()
}

/// Modification triples `d/h:a,...`; a missing `:a` means no twist.
pub fn instance(s: &str) -> Result<Vec<(i64, i64, i64)>, String> {
    s.split(',')
        .map(|t| {
            let (block, twist) = t.split_once(':').unwrap_or((t, "0"));
            let (d, h) = fraction(block)?;
            let a = twist
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid twist in {t:?}"))?;
            Ok((d, h, a))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hnstrat::q;

    #[test]
    fn groups() {
        assert_eq!(group("gl:7"), Ok(7));
        assert_eq!(group("GL:2"), Ok(2));
        assert!(group("gl:0").is_err());
        assert!(group("sp:4").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(integers("-1, 0,2"), Ok(vec![-1, 0, 2]));
        assert_eq!(
            rationals("5/2,-1/3,4"),
            Ok(vec![q(5, 2), q(-1, 3), q(4, 1)])
        );
        assert!(rationals("1/0").is_err());
        assert_eq!(parts("7,7"), Ok(vec![7, 7]));
    }

    #[test]
    fn block_lists() {
        assert_eq!(blocks("5/7,0"), Ok(vec![(5, 7), (0, 1)]));
        assert_eq!(
            instance("0/1:1,3/2,-1/3:-2"),
            Ok(vec![(0, 1, 1), (3, 2, 0), (-1, 3, -2)])
        );
        assert!(instance("a/b").is_err());
    }
}
