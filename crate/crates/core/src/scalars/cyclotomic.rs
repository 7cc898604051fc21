use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, qpoly_inverse_mod, IntPoly, QPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// The field Q(zeta_N) presented as Q[x] / Phi_N(x).
#[derive(Debug)]
pub struct CyclotomicField {
    order: usize,
    phi: IntPoly,
    degree: usize,
    /// `powers[k]` is `x^k mod Phi_N`, for `k < max(N, 2 * degree - 1)`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(order);
        let degree = phi.degree().unwrap_or(0);
        let count = order.max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![BigInt::zero(); degree];
        if degree > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Phi
            let top = cur.last().cloned().unwrap_or_else(BigInt::zero);
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1].clone();
            }
            if degree > 0 {
                cur[0] = BigInt::zero();
                if !top.is_zero() {
                    for k in 0..degree {
                        cur[k] -= &top * &phi.coeffs()[k];
                    }
                }
            }
        }
        Arc::new(CyclotomicField {
            order,
            phi,
            degree,
            powers,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &IntPoly {
        &self.phi
    }
}

/// Element `num / den` of Q(zeta_N), where `num` holds integer coefficients on
/// the power basis `1, z, ..., z^(phi(N)-1)`. The representation is canonical:
/// `den > 0` and the gcd of `den` with all numerator coefficients is 1.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = r.numer().clone();
        Cyclotomic {
            field: field.clone(),
            num,
            den: r.denom().clone(),
        }
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        Cyclotomic {
            field: field.clone(),
            num: field.powers[e].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds an element from rational coefficients on the power basis;
    /// longer inputs are reduced modulo Phi_N.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[Rational]) -> Self {
        let mut acc = Cyclotomic::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Cyclotomic::zeta_pow(field, k as i64).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::from_inner(BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::from_inner(BigRational::new(
                self.num[0].clone(),
                self.den.clone(),
            )))
        } else {
            None
        }
    }

    fn normalized(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(|c| c.is_zero()) {
            return Cyclotomic {
                field,
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.abs();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        Cyclotomic { field, num, den }
    }

    pub fn same_field(&self, other: &Cyclotomic) -> bool {
        self.field.order == other.field.order
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Cyclotomic::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: QPoly = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let modulus: QPoly = self
            .field
            .phi
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = qpoly_inverse_mod(&a, &modulus).ok_or(Error::DivisionByZero)?;
        let coeffs: Vec<Rational> = inv.into_iter().map(Rational::from_inner).collect();
        Ok(Cyclotomic::from_coeffs(&self.field, &coeffs))
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = Cyclotomic::from_rational(&self.field, &Rational::one());
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Evaluates an integer polynomial at this element.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        let mut acc = Cyclotomic::zero(&self.field);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            acc = &acc + &Cyclotomic::from_rational(&self.field, &Rational::from_int(c.clone()));
        }
        acc
    }

    fn check(&self, other: &Cyclotomic) {
        assert!(
            self.same_field(other),
            "cyclotomic orders differ: {} vs {}",
            self.field.order,
            other.field.order
        );
    }

    fn add_signed(&self, other: &Cyclotomic, negate: bool) -> Cyclotomic {
        self.check(other);
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Cyclotomic::normalized(self.field.clone(), num, den)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        // Canonical but arithmetically meaningless order: compare the
        // rational coefficient vectors lexicographically.
        self.field
            .order
            .cmp(&other.field.order)
            .then_with(|| self.coeffs().cmp(&other.coeffs()))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_signed(rhs, false)
    }
}

impl std::ops::Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_signed(rhs, true)
    }
}

impl std::ops::Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let d = self.field.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // fold the high part back with the precomputed power table
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in num.iter_mut().zip(&self.field.powers[k]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        Cyclotomic::normalized(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

/// Renders as an integer/rational combination of powers of `z`, e.g.
/// `1 + 2*z - 1/2*z^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order, self)
    }
}
