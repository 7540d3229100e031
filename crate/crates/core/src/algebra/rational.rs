use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Exact rational number: always reduced, positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `int` or `int/uint`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) if d.starts_with(['-', '+']) => return None,
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(*r.denom(), BigInt::from(2));
        assert_eq!(format_rational(&rat(0, 7)), "0");
    }

    #[test]
    fn parse_accepts_fraction_forms() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational(" -10 "), Some(int(-10)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
