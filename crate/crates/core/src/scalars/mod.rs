//! Exact scalars: rationals and elements of cyclotomic fields, plus dense
//! matrices and the exact linear algebra the rest of the crate runs on.

mod cyclotomic;
pub mod linalg;
mod matrix;
pub mod poly;
mod rational;

use std::fmt;
use std::sync::Arc;

pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use linalg::{inverse, kernel, rank, rref, solve, Rref, Subspace};
pub use matrix::{kron, Matrix};
pub use poly::{cyclotomic_polynomial, IntPoly};
pub use rational::Rational;

use crate::error::{Error, Result};

/// The field a scalar lives in.
#[derive(Clone, Debug)]
pub enum Field {
    Rational,
    Cyclotomic(Arc<CyclotomicField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rational, Field::Rational) => true,
            (Field::Cyclotomic(a), Field::Cyclotomic(b)) => a.order() == b.order(),
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Field {
    pub fn cyclotomic(order: usize) -> Field {
        Field::Cyclotomic(CyclotomicField::new(order))
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(&Rational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(&Rational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(&Rational::from_int(n))
    }

    pub fn from_rational(&self, r: &Rational) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(r.clone()),
            Field::Cyclotomic(f) => Scalar::Cyc(Cyclotomic::from_rational(f, r)),
        }
    }

    /// `zeta_N^k`; only meaningful for cyclotomic fields.
    pub fn zeta_pow(&self, k: i64) -> Option<Scalar> {
        match self {
            Field::Rational => None,
            Field::Cyclotomic(f) => Some(Scalar::Cyc(Cyclotomic::zeta_pow(f, k))),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rat(_)) => true,
            (Field::Cyclotomic(f), Scalar::Cyc(c)) => f.order() == c.order(),
            _ => false,
        }
    }

    /// Parses the textual form produced by `Display` for scalars of this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        match self {
            Field::Rational => s.parse::<Rational>().map(Scalar::Rat),
            Field::Cyclotomic(f) => parse_cyclotomic(f, s).map(Scalar::Cyc),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(c) => write!(f, "Q(zeta_{})", c.order()),
        }
    }
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclotomic),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Cyc(c) => Field::Cyclotomic(c.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Cyc(c) => c.is_one(),
        }
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc(c) => c.as_rational(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(format!("{} vs {}", self.field(), other.field()))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.same_field(b) => Ok(Scalar::Cyc(a + b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a - b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.same_field(b) => Ok(Scalar::Cyc(a - b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Cyc(a), Scalar::Cyc(b)) if a.same_field(b) => Ok(Scalar::Cyc(a * b)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => r.inv().map(Scalar::Rat),
            Scalar::Cyc(c) => c.inv().map(Scalar::Cyc),
        }
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => r.pow(exp).map(Scalar::Rat),
            Scalar::Cyc(c) => c.pow(exp).map(Scalar::Cyc),
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Cyc(c) => Scalar::Cyc(c.scale(r)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
        }
    }
}

impl serde::Serialize for Scalar {
    /// Scalars serialize as their exact textual form.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c:?}"),
        }
    }
}

// Operator sugar. Mixing fields here is a programming error and panics; the
// `try_*` methods are the checked entry points.
impl std::ops::Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition across fields")
    }
}

impl std::ops::Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl std::ops::Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(-c),
        }
    }
}

fn parse_cyclotomic(field: &Arc<CyclotomicField>, s: &str) -> Result<Cyclotomic> {
    let bad = |why: &str| Error::Parse(format!("cannot parse {s:?} as element of Q(zeta): {why}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((negative, cur));
    let mut coeffs: Vec<Rational> = Vec::new();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef, power) = match term.find('z') {
            None => (term.parse::<Rational>()?, 0usize),
            Some(pos) => {
                let head = &term[..pos];
                let tail = &term[pos + 1..];
                let coef = match head {
                    "" => Rational::one(),
                    h => h
                        .strip_suffix('*')
                        .ok_or_else(|| bad("expected '*' before z"))?
                        .parse::<Rational>()?,
                };
                let power = match tail {
                    "" => 1,
                    t => t
                        .strip_prefix('^')
                        .ok_or_else(|| bad("expected '^' after z"))?
                        .parse::<usize>()
                        .map_err(|_| bad("bad exponent"))?,
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        let signed = if neg { -coef } else { coef };
        coeffs[power] = &coeffs[power] + &signed;
    }
    Ok(Cyclotomic::from_coeffs(field, &coeffs))
}
