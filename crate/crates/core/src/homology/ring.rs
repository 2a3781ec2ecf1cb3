//! Coefficient rings and exact scalar arithmetic.
//!
//! F2 and Q support matrix inversion and drive every transition-map and
//! snake computation; Z is limited to ranks and torsion of single pairs via
//! Smith normal form.

use serde::{Deserialize, Serialize};
use std::fmt;
// Rat serializes as its exact decimal-free string form ("3" or "3/2").

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientRing {
    F2,
    Q,
    Z,
}

impl CoefficientRing {
    pub fn is_field(self) -> bool {
        matches!(self, CoefficientRing::F2 | CoefficientRing::Q)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::F2 => write!(f, "F2"),
            CoefficientRing::Q => write!(f, "Q"),
            CoefficientRing::Z => write!(f, "Z"),
        }
    }
}

impl std::str::FromStr for CoefficientRing {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "F2" | "f2" => Ok(CoefficientRing::F2),
            "Q" | "q" => Ok(CoefficientRing::Q),
            "Z" | "z" => Ok(CoefficientRing::Z),
            other => Err(format!("unknown coefficient ring '{other}'")),
        }
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exact rational scalar on i128. Desk-scale inputs keep the magnitudes far
/// below overflow; arithmetic is checked so a blowup fails loudly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128, // always > 0, gcd(num, den) == 1
}

// arithmetic goes through the Field trait calling convention, so the
// inherent names mirror it rather than the operator traits
#[allow(clippy::should_implement_trait)]
impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        Rat { num: n, den: d }
    }

    pub fn int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn numer(self) -> i128 {
        self.num
    }

    pub fn denom(self) -> i128 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn add(self, o: Rat) -> Rat {
        let n = self
            .num
            .checked_mul(o.den)
            .and_then(|a| o.num.checked_mul(self.den).and_then(|b| a.checked_add(b)))
            .expect("rational overflow");
        let d = self.den.checked_mul(o.den).expect("rational overflow");
        Rat::new(n, d)
    }

    pub fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn sub(self, o: Rat) -> Rat {
        self.add(o.neg())
    }

    pub fn mul(self, o: Rat) -> Rat {
        // cross-reduce before multiplying to keep magnitudes small
        let g1 = gcd(self.num, o.den).max(1);
        let g2 = gcd(o.num, self.den).max(1);
        let n = (self.num / g1)
            .checked_mul(o.num / g2)
            .expect("rational overflow");
        let d = (self.den / g2)
            .checked_mul(o.den / g1)
            .expect("rational overflow");
        Rat::new(n, d)
    }

    pub fn inv(self) -> Rat {
        assert!(self.num != 0, "division by zero");
        Rat::new(self.den, self.num)
    }

    pub fn div(self, o: Rat) -> Rat {
        self.mul(o.inv())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Field abstraction used by the sparse reduction machinery.
pub trait Field: Copy + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    const RING: CoefficientRing;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn inv(self) -> Self;
    fn from_sign(sign: i8) -> Self {
        if sign >= 0 {
            Self::one()
        } else {
            Self::one().neg()
        }
    }
    fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }
    fn div(self, o: Self) -> Self {
        self.mul(o.inv())
    }
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
    fn to_rat(self) -> Rat;
    fn from_rat(r: Rat) -> Self;
}

/// The two-element field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2(pub u8);

impl Field for Gf2 {
    const RING: CoefficientRing = CoefficientRing::F2;
    fn zero() -> Self {
        Gf2(0)
    }
    fn one() -> Self {
        Gf2(1)
    }
    fn add(self, o: Self) -> Self {
        Gf2(self.0 ^ o.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn mul(self, o: Self) -> Self {
        Gf2(self.0 & o.0)
    }
    fn inv(self) -> Self {
        assert!(self.0 == 1, "division by zero in F2");
        self
    }
    fn to_rat(self) -> Rat {
        Rat::int(self.0 as i128)
    }
    fn from_rat(r: Rat) -> Self {
        assert!(r.is_integer(), "non-integral rational in F2 context");
        Gf2((r.numer().rem_euclid(2)) as u8)
    }
}

impl Field for Rat {
    const RING: CoefficientRing = CoefficientRing::Q;
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn add(self, o: Self) -> Self {
        Rat::add(self, o)
    }
    fn neg(self) -> Self {
        Rat::neg(self)
    }
    fn mul(self, o: Self) -> Self {
        Rat::mul(self, o)
    }
    fn inv(self) -> Self {
        Rat::inv(self)
    }
    fn to_rat(self) -> Rat {
        self
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
}
