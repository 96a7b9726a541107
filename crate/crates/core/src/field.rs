//! Exact scalar fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact field. Zero and one come from num-traits; everything else a
/// Gaussian elimination needs is here.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// 0 for the rationals.
    const CHARACTERISTIC: u64;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Rough storage cost, used to prefer cheap pivots.
    fn weight(&self) -> u64 {
        0
    }

    fn field_name() -> String;
}

impl Field for BigRational {
    const CHARACTERISTIC: u64 = 0;

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn field_name() -> String {
        "Q".into()
    }
}

/// The prime field of order `P`. Primality of `P` is checked by
/// [`FieldSpec::parse`]; constructing `Fp<P>` for composite `P` directly is a bug.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    fn field_name() -> String {
        format!("F{P}")
    }
}

/// Runtime description of a field, as written on the command line:
/// `Q` or `F<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

/// Primes that have a compiled prime-field instantiation.
pub const SUPPORTED_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 32003];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "q" {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::Usage(format!("field must be Q or F<p>, got {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Usage(format!("bad prime in field descriptor {s:?}")))?;
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::Usage(format!(
                "prime {p} has no compiled field; supported: {SUPPORTED_PRIMES:?}"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Run a generic body with the concrete field named by a [`FieldSpec`].
///
/// ```ignore
/// let r = with_field!(spec, F => compute::<F>(args));
/// ```
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        match $spec {
            $crate::field::FieldSpec::Rational => {
                type $f = $crate::Rational;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => match p {
                2 => { type $f = $crate::field::Fp<2>; $body }
                3 => { type $f = $crate::field::Fp<3>; $body }
                5 => { type $f = $crate::field::Fp<5>; $body }
                7 => { type $f = $crate::field::Fp<7>; $body }
                11 => { type $f = $crate::field::Fp<11>; $body }
                13 => { type $f = $crate::field::Fp<13>; $body }
                17 => { type $f = $crate::field::Fp<17>; $body }
                19 => { type $f = $crate::field::Fp<19>; $body }
                23 => { type $f = $crate::field::Fp<23>; $body }
                29 => { type $f = $crate::field::Fp<29>; $body }
                31 => { type $f = $crate::field::Fp<31>; $body }
                32003 => { type $f = $crate::field::Fp<32003>; $body }
                other => unreachable!("unsupported prime {other}"),
            },
        }
    }};
}

/// Exact division of integers; `None` when the quotient is not integral.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Convert an integral rational to an integer.
pub fn rational_to_int(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn sign(neg: bool) -> BigInt {
    if neg {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

pub fn abs(n: &BigInt) -> BigInt {
    n.abs()
}
