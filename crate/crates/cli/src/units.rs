//! Number-plus-unit parsing for command-line quantities.

use std::f64::consts::PI;
use std::fmt;

use casimir_core::scales::{EV, HBAR};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// m
    Length(f64),
    /// K
    Temperature(f64),
    /// J
    Energy(f64),
    /// s
    Time(f64),
    /// Hz
    Frequency(f64),
    /// rad/s
    AngularFrequency(f64),
}

impl Quantity {
    fn kind(&self) -> &'static str {
        match self {
            Quantity::Length(_) => "length",
            Quantity::Temperature(_) => "temperature",
            Quantity::Energy(_) => "energy",
            Quantity::Time(_) => "time",
            Quantity::Frequency(_) => "frequency",
            Quantity::AngularFrequency(_) => "angular frequency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub token: String,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse '{}': {}", self.token, self.reason)
    }
}

impl std::error::Error for ParseError {}

fn err(token: &str, reason: impl Into<String>) -> ParseError {
    ParseError {
        token: token.to_string(),
        reason: reason.into(),
    }
}

const UNITS: &[(&str, fn(f64) -> Quantity)] = &[
    ("rad/s", Quantity::AngularFrequency),
    ("THz", |v| Quantity::Frequency(v * 1e12)),
    ("GHz", |v| Quantity::Frequency(v * 1e9)),
    ("Hz", Quantity::Frequency),
    ("meV", |v| Quantity::Energy(v / 1e3 * EV)),
    ("eV", |v| Quantity::Energy(v * EV)),
    ("mm", |v| Quantity::Length(v / 1e3)),
    ("um", |v| Quantity::Length(v / 1e6)),
    ("µm", |v| Quantity::Length(v / 1e6)),
    ("nm", |v| Quantity::Length(v / 1e9)),
    ("m", Quantity::Length),
    ("K", Quantity::Temperature),
    ("fs", |v| Quantity::Time(v / 1e15)),
    ("s", Quantity::Time),
];

/// Parses `<number><unit>`, e.g. `150nm`, `300K`, `9eV`, `27fs`, `6.2THz`.
/// Bare numbers are rejected.
pub fn parse_quantity(text: &str) -> Result<Quantity, ParseError> {
    let t = text.trim();
    for (suffix, make) in UNITS {
        if let Some(num) = t.strip_suffix(suffix) {
            let num = num.trim_end();
            if num.is_empty() {
                return Err(err(text, "missing number"));
            }
            let v: f64 = num
                .parse()
                .map_err(|_| err(text, format!("'{num}' is not a number")))?;
            if !v.is_finite() {
                return Err(err(text, "value must be finite"));
            }
            return Ok(make(v));
        }
    }
    if t.parse::<f64>().is_ok() {
        Err(err(text, "missing unit"))
    } else {
        Err(err(text, "unknown unit"))
    }
}

fn expect(text: &str, want: &str) -> Result<Quantity, ParseError> {
    let q = parse_quantity(text)?;
    if q.kind() != want {
        return Err(err(text, format!("expected a {want}, got a {}", q.kind())));
    }
    Ok(q)
}

pub fn length(text: &str) -> Result<f64, ParseError> {
    match expect(text, "length")? {
        Quantity::Length(v) => Ok(v),
        _ => unreachable!(),
    }
}

pub fn temperature(text: &str) -> Result<f64, ParseError> {
    match expect(text, "temperature")? {
        Quantity::Temperature(v) => Ok(v),
        _ => unreachable!(),
    }
}

pub fn time(text: &str) -> Result<f64, ParseError> {
    match expect(text, "time")? {
        Quantity::Time(v) => Ok(v),
        _ => unreachable!(),
    }
}

/// Plasma frequency from an energy (`ω_p = E/ħ`) or a frequency.
pub fn plasma_frequency(text: &str) -> Result<f64, ParseError> {
    match parse_quantity(text)? {
        Quantity::Energy(e) => Ok(e / HBAR),
        Quantity::Frequency(f) => Ok(2.0 * PI * f),
        Quantity::AngularFrequency(w) => Ok(w),
        q => Err(err(text, format!("expected an energy or frequency, got a {}", q.kind()))),
    }
}

/// Angular frequency in rad/s from `Hz`/`THz` (×2π), `rad/s` or an energy.
pub fn angular_frequency(text: &str) -> Result<f64, ParseError> {
    plasma_frequency(text)
}

/// A list of quantities: `a,b,c` or a log-spaced range `start:stop:n`.
pub fn list<F>(text: &str, parse: F) -> Result<Vec<f64>, ParseError>
where
    F: Fn(&str) -> Result<f64, ParseError>,
{
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single.split(',').map(|s| parse(s.trim())).collect::<Result<Vec<_>, _>>()?,
        [a, b, n] => {
            let (a, b) = (parse(a)?, parse(b)?);
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| err(text, format!("'{n}' is not a point count")))?;
            if n < 2 {
                return Err(err(text, "a range needs at least 2 points"));
            }
            if !(a > 0.0 && b > a) {
                return Err(err(text, "a range needs 0 < start < stop"));
            }
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| match i {
                    0 => a,
                    i if i == n - 1 => b,
                    i => (la + (lb - la) * i as f64 / (n - 1) as f64).exp(),
                })
                .collect()
        }
        _ => return Err(err(text, "expected 'a,b,...' or 'start:stop:n'")),
    };
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(err(text, "values must be strictly increasing"));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(length("150nm").unwrap(), 1.5e-7);
        assert_eq!(time("27fs").unwrap(), 2.7e-14);
        let wp = plasma_frequency("9eV").unwrap();
        assert!((wp / 1.367e16 - 1.0).abs() < 1e-3);
        assert!((299_792_458.0 / wp / 22e-9 - 1.0).abs() < 0.02);
        assert_eq!(temperature("300K").unwrap(), 300.0);
        assert_eq!(length("40um").unwrap(), 4e-5);
        assert!((plasma_frequency("9000meV").unwrap() / wp - 1.0).abs() < 1e-14);
        assert!((angular_frequency("1THz").unwrap() / (2.0 * PI * 1e12) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_quantity("150").unwrap_err().reason, "missing unit");
        assert!(parse_quantity("nm").is_err());
        assert!(parse_quantity("1.5 furlongs").is_err());
        assert!(length("300K").is_err());
        assert!(temperature("1um").is_err());
        assert_eq!(parse_quantity("abcnm").unwrap_err().token, "abcnm");
    }

    #[test]
    fn lists_and_ranges() {
        let v = list("1um,2um,5um", length).unwrap();
        assert_eq!(v.len(), 3);
        let r = list("1um:100um:3", length).unwrap();
        assert!((r[1] / 1e-5 - 1.0).abs() < 1e-12);
        assert_eq!(r[2], 1e-4);
        assert!(list("2um,1um", length).is_err());
        assert!(list("1um:2um:1", length).is_err());
    }
}
