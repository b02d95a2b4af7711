//! Number formatting for CSV output.

use num_rational::BigRational;

/// Exact rational as `num/den`, always with a denominator.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Real with 12 significant digits in the style of C's `%.12g`.
pub fn real(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // exponent after rounding to DIGITS significant digits
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= DIGITS {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn real_examples() {
        assert_eq!(real(0.0), "0");
        assert_eq!(real(1.0), "1");
        assert_eq!(real(-2.5), "-2.5");
        assert_eq!(real(1.0 / 3.0), "0.333333333333");
        assert_eq!(real(5f64.sqrt() * 0.6), "1.3416407865");
        assert_eq!(real(123456789.123456789), "123456789.123");
        assert_eq!(real(1e-7), "1e-07");
        assert_eq!(real(1.5e15), "1.5e+15");
        assert_eq!(real(999999999999.9), "1e+12");
    }

    #[test]
    fn rational_examples() {
        let q = BigRational::new(BigInt::from(24), BigInt::from(5));
        assert_eq!(rational(&q), "24/5");
        assert_eq!(rational(&BigRational::from_integer(BigInt::from(2))), "2/1");
        let neg = BigRational::new(BigInt::from(3), BigInt::from(-6));
        assert_eq!(rational(&neg), "-1/2");
    }
}
