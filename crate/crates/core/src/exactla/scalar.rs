use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinAlgError;

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar {
                re: self.re.recip(),
                im: BigRational::zero(),
            });
        }
        let n = self.norm_sqr();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Parses a rational literal `"p"` or `"p/q"`.
    pub fn parse_rational(s: &str) -> Result<BigRational, LinAlgError> {
        let t = s.trim();
        let bad = || LinAlgError::Parse(format!("bad rational literal {s:?}"));
        match t.split_once('/') {
            None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad()),
            Some((p, q)) => {
                let p = BigInt::from_str(p).map_err(|_| bad())?;
                let q = BigInt::from_str(q).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(LinAlgError::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(p, q))
            }
        }
    }

    pub fn parse_parts(re: &str, im: &str) -> Result<Self, LinAlgError> {
        Ok(Scalar {
            re: Self::parse_rational(re)?,
            im: Self::parse_rational(im)?,
        })
    }

    pub fn re_string(&self) -> String {
        rational_string(&self.re)
    }

    pub fn im_string(&self) -> String {
        rational_string(&self.im)
    }
}

pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re_string())
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im_string())
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re_string(), rational_string(&-&self.im))
        } else {
            write!(f, "{}+{}i", self.re_string(), self.im_string())
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &o.re,
            im: if self.im.is_zero() && o.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im + &o.im
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &o.re,
            im: if self.im.is_zero() && o.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im - &o.im
            },
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &Scalar) -> Scalar {
        let inv = o.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl Scalar {
    /// `self += a * b` without an intermediate clone of `self`.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
        } else {
            *self += &(a * b);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: String,
    im: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            re: self.re_string(),
            im: self.im_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        Scalar::parse_parts(&r.re, &r.im).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_normalizes() {
        let r = Scalar::parse_rational("6/-4").unwrap();
        assert_eq!(rational_string(&r), "-3/2");
        assert_eq!(rational_string(&Scalar::parse_rational("-8/4").unwrap()), "-2");
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::gaussian(1, 2);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(
            w,
            Scalar::new(
                Scalar::parse_rational("1/5").unwrap(),
                Scalar::parse_rational("-2/5").unwrap()
            )
        );
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn conjugation_fixes_real_part() {
        let z = Scalar::gaussian(3, -7);
        assert_eq!(z.conj(), Scalar::gaussian(3, 7));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(&z * &z.conj(), Scalar::from_int(58));
    }

    #[test]
    fn json_round_trip() {
        let z = Scalar::new(
            Scalar::parse_rational("-1/3").unwrap(),
            Scalar::parse_rational("2").unwrap(),
        );
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-1/3","im":"2"}"#);
        let back: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
