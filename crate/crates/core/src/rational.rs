use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, Signed, Zero};

/// Exact membership grade.
pub type Rational = Rational64;

/// Parses `p/q`, an integer, or a finite decimal literal (`0.3`, `-.25`).
///
/// Decimals are read exactly: `0.3` is `3/10`. Returns `None` on malformed
/// input, a zero denominator, or overflow of the 64-bit representation.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = parse_int(num)?;
        let den: i64 = parse_int(den)?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let mut value = Rational::zero();
    let ten = Rational::from_integer(10);
    for digit in int_part.bytes() {
        value = value
            .checked_mul(&ten)?
            .checked_add(&Rational::from_integer(i64::from(digit - b'0')))?;
    }
    let mut scale = Rational::from_integer(1);
    for digit in frac_part.bytes() {
        scale = scale.checked_mul(&Rational::new(1, 10))?;
        let term = scale.checked_mul(&Rational::from_integer(i64::from(digit - b'0')))?;
        value = value.checked_add(&term)?;
    }
    Some(if negative { -value } else { value })
}

fn parse_int(text: &str) -> Option<i64> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('+') && text.len() == 1 {
        return None;
    }
    text.parse().ok()
}

/// Lowest-terms rendering: `1/2`, `-2/5`, `0`, `1`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn in_unit(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::from_integer(1)
}

pub(crate) fn in_neg_unit(value: &Rational) -> bool {
    !value.is_positive() && *value >= Rational::from_integer(-1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.3"), Some(Rational::new(3, 10)));
        assert_eq!(parse_rational("-0.25"), Some(Rational::new(-1, 4)));
        assert_eq!(parse_rational(".5"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("1"), Some(Rational::from_integer(1)));
        assert_eq!(parse_rational("-1."), Some(Rational::from_integer(-1)));
    }

    #[test]
    fn fractions_reduce() {
        let half = parse_rational("2/4").unwrap();
        assert_eq!(format_rational(&half), "1/2");
        assert_eq!(format_rational(&parse_rational("-4/10").unwrap()), "-2/5");
        assert_eq!(format_rational(&parse_rational("6/3").unwrap()), "2");
    }

    #[test]
    fn malformed_literals_rejected() {
        for bad in [
            "", "-", ".", "1/0", "a", "1.2.3", "1/2/3", "--1", "0x1", "1e3",
        ] {
            assert_eq!(parse_rational(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn overflow_is_rejected() {
        assert_eq!(parse_rational("0.00000000000000000000001"), None);
        assert_eq!(parse_rational("99999999999999999999"), None);
    }
}
