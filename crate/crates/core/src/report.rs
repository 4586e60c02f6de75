//! Output helpers: floats with exactly 17 significant digits and canonical
//! JSON rendering (sorted keys).

use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Seventeen significant digits, positional for moderate exponents and
/// scientific otherwise.
pub fn float17(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=16).contains(&exp) {
        return sci;
    }
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        out.push_str(&digits[..int_len]);
        out.push('.');
        if int_len < digits.len() {
            out.push_str(&digits[int_len..]);
        } else {
            out.push('0');
        }
    }
    out
}

/// Serializes as a JSON number carrying [`float17`] digits; non-finite
/// values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let n = serde_json::Number::from_str(&float17(self.0)).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

/// Pretty JSON with keys sorted, so output is byte-stable.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&v).expect("values serialize")
}
