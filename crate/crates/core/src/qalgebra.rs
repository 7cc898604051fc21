//! Deformation context, q-numbers, the defining relations and the Casimir.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repbuild::Rep;
use crate::scalars::{Field, Matrix, Rational, Scalar};

/// A non-negative half-integer spin, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);

    pub fn from_twice(twice: u32) -> Spin {
        Spin(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    /// Dimension `2j + 1` of the corresponding irrep.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `1`, `1.5`, `3/2`.
    fn from_str(s: &str) -> Result<Spin> {
        let r: Rational = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid spin `{s}`")))?;
        let twice = &r * &Rational::from_int(2);
        if !twice.is_integer() || twice.is_negative() {
            return Err(Error::Parse(format!(
                "spin must be a non-negative half-integer, got `{s}`"
            )));
        }
        let n: u32 = twice
            .numer()
            .try_into()
            .map_err(|_| Error::Parse(format!("spin `{s}` out of range")))?;
        Ok(Spin(n))
    }
}

impl Serialize for Spin {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Spin {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Spin, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be +1 or -1, got `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Generic,
    Root,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Generic => "generic",
            Mode::Root => "root",
        })
    }
}

/// The deformation setting every representation is built in.
#[derive(Clone, Debug)]
pub struct QContext {
    mode: Mode,
    n: Option<usize>,
    n_cal: Option<usize>,
    q0: Option<Rational>,
    eps: Sign,
    field: Field,
    q: Scalar,
    q_inv: Scalar,
    /// `1 / (q - q^-1)^2`
    delta_inv_sq: Scalar,
}

impl PartialEq for QContext {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.n == other.n && self.q == other.q && self.eps == other.eps
    }
}

impl Eq for QContext {}

/// Builds a context. Root mode takes `q = zeta_N`; generic mode evaluates at a
/// rational `q0`.
pub fn make_context(mode: Mode, n: Option<usize>, q0: Option<Rational>, eps: Sign) -> Result<QContext> {
    match mode {
        Mode::Root => {
            let n = n.ok_or_else(|| Error::DegenerateDeformation("root mode needs N".into()))?;
            QContext::root(n, eps)
        }
        Mode::Generic => QContext::generic(q0.unwrap_or_else(default_q0), eps),
    }
}

pub fn default_q0() -> Rational {
    Rational::new(3, 2).expect("non-zero denominator")
}

impl QContext {
    pub fn root(n: usize, eps: Sign) -> Result<QContext> {
        if n < 3 {
            return Err(Error::DegenerateDeformation(format!(
                "N = {n}: q - 1/q vanishes for N < 3"
            )));
        }
        let field = Field::cyclotomic(n);
        let q = field.zeta_pow(1).expect("cyclotomic field");
        let n_cal = if n % 2 == 1 { n } else { n / 2 };
        QContext::assemble(Mode::Root, Some(n), Some(n_cal), None, eps, field, q)
    }

    pub fn generic(q0: Rational, eps: Sign) -> Result<QContext> {
        if q0.is_zero() || q0.abs().is_one() {
            return Err(Error::DegenerateDeformation(format!(
                "q0 = {q0}: must avoid 0, 1 and -1"
            )));
        }
        let q = Scalar::Rat(q0.clone());
        QContext::assemble(Mode::Generic, None, None, Some(q0), eps, Field::Rational, q)
    }

    fn assemble(
        mode: Mode,
        n: Option<usize>,
        n_cal: Option<usize>,
        q0: Option<Rational>,
        eps: Sign,
        field: Field,
        q: Scalar,
    ) -> Result<QContext> {
        let q_inv = q.inv()?;
        let delta = &q - &q_inv;
        let delta_inv_sq = (&delta * &delta).inv()?;
        Ok(QContext {
            mode,
            n,
            n_cal,
            q0,
            eps,
            field,
            q,
            q_inv,
            delta_inv_sq,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_root(&self) -> bool {
        self.mode == Mode::Root
    }

    /// `N` with `q^N = 1` (root mode only).
    pub fn order(&self) -> Option<usize> {
        self.n
    }

    /// `N` for odd `N`, `N/2` for even `N` (root mode only).
    pub fn n_cal(&self) -> Option<usize> {
        self.n_cal
    }

    pub fn q0(&self) -> Option<&Rational> {
        self.q0.as_ref()
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_inv(&self) -> &Scalar {
        &self.q_inv
    }

    pub fn delta_inv_sq(&self) -> &Scalar {
        &self.delta_inv_sq
    }

    pub fn eps_scalar(&self) -> Scalar {
        self.field.from_int(self.eps.value())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        match self.mode {
            Mode::Root => self.field.zeta_pow(k).expect("cyclotomic field"),
            Mode::Generic => self.q.pow(k).expect("q0 is non-zero"),
        }
    }

    /// Largest spin with an irrep in this context (`None` when unbounded).
    pub fn j_max(&self) -> Option<Spin> {
        self.n_cal.map(|n| Spin::from_twice(n as u32 - 1))
    }

    /// Same context with the opposite `eps`.
    pub fn with_eps(&self, eps: Sign) -> QContext {
        QContext { eps, ..self.clone() }
    }
}

impl fmt::Display for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Root => write!(
                f,
                "root N={} (n_cal={}) eps={}",
                self.n.unwrap(),
                self.n_cal.unwrap(),
                self.eps
            ),
            Mode::Generic => write!(f, "generic q0={} eps={}", self.q0.as_ref().unwrap(), self.eps),
        }
    }
}

/// `[n]_q = (q^n - q^-n) / (q - q^-1)`
pub fn q_number(n: i64, ctx: &QContext) -> Scalar {
    if n == 0 {
        return ctx.field.zero();
    }
    // finite geometric sum q^{n-1} + q^{n-3} + ... + q^{1-n} avoids a division
    let m = n.abs();
    let sum = (0..m).fold(ctx.field.zero(), |acc, i| &acc + &ctx.q_pow(m - 1 - 2 * i));
    if n < 0 {
        -&sum
    } else {
        sum
    }
}

/// Eigenvalue of the Casimir on a spin-`j` lowest-weight vector of a module
/// built with sign `eps`: `eps (q^{2j+1} + q^{-2j-1}) / (q - q^-1)^2`.
pub fn casimir_candidate_signed(spin: Spin, sign: Sign, ctx: &QContext) -> Scalar {
    let k = spin.twice() as i64 + 1;
    let s = &ctx.q_pow(k) + &ctx.q_pow(-k);
    let s = &s * &ctx.delta_inv_sq;
    match sign {
        Sign::Plus => s,
        Sign::Minus => -&s,
    }
}

/// Candidate Casimir eigenvalue for the context's own `eps`.
pub fn casimir_candidate(spin: Spin, ctx: &QContext) -> Scalar {
    casimir_candidate_signed(spin, ctx.eps, ctx)
}

/// Both displayed forms of the quadratic Casimir,
/// `FE + (q^-1 K + q K^-1)/(q-q^-1)^2` and `EF + (q K + q^-1 K^-1)/(q-q^-1)^2`.
pub fn casimir_forms(rep: &Rep) -> (Matrix, Matrix) {
    let ctx = rep.ctx();
    let (e, f, k, ki) = (rep.e(), rep.f(), rep.k(), rep.k_inv());
    let d = ctx.delta_inv_sq();
    let first = &(f * e) + &(&k.scale(ctx.q_inv()) + &ki.scale(ctx.q())).scale(d);
    let second = &(e * f) + &(&k.scale(ctx.q()) + &ki.scale(ctx.q_inv())).scale(d);
    (first, second)
}

/// The Casimir matrix; fails when the two standard forms disagree, which
/// happens only for inputs violating the defining relations.
pub fn casimir_matrix(rep: &Rep) -> Result<Matrix> {
    let (first, second) = casimir_forms(rep);
    if first != second {
        return Err(Error::MalformedRep(format!(
            "Casimir forms disagree at {:?}",
            first_difference(&first, &second)
        )));
    }
    Ok(first)
}

/// Outcome of one named identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// First offending matrix entry (row, column) on failure.
    pub offending: Option<(usize, usize)>,
    pub note: Option<String>,
}

/// A list of named pass/fail results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub checks: Vec<CheckOutcome>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn push_matrices(&mut self, name: &str, lhs: &Matrix, rhs: &Matrix) {
        let offending = first_difference(lhs, rhs);
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed: offending.is_none(),
            offending,
            note: None,
        });
    }

    pub fn push_flag(&mut self, name: &str, passed: bool, note: Option<String>) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            offending: None,
            note,
        });
    }

    pub fn extend(&mut self, other: AlgebraReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some((i, j)) = c.offending {
                write!(f, " (entry {i},{j})")?;
            }
            if let Some(n) = &c.note {
                write!(f, " [{n}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn first_difference(a: &Matrix, b: &Matrix) -> Option<(usize, usize)> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Some((a.rows(), a.cols()));
    }
    (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, j) != b.get(i, j))
}

pub const REL_KFK: &str = "k f k^-1 = q^2 f";
pub const REL_KEK: &str = "k e k^-1 = q^-2 e";
pub const REL_KINV: &str = "k k^-1 = k^-1 k = 1";
pub const REL_COMM: &str = "[f, e] = (k - k^-1)/(q - q^-1)";
pub const REL_CASIMIR: &str = "Casimir forms agree";
pub const REL_CENTRAL_E: &str = "C e = e C";
pub const REL_CENTRAL_F: &str = "C f = f C";
pub const REL_CENTRAL_K: &str = "C k = k C";

/// Checks the defining relations, the agreement of both Casimir forms and
/// that the Casimir commutes with the generators.
pub fn check_algebra(rep: &Rep) -> AlgebraReport {
    let ctx = rep.ctx();
    let (e, f, k, ki) = (rep.e(), rep.f(), rep.k(), rep.k_inv());
    let id = Matrix::identity(ctx.field(), rep.dim());
    let mut report = AlgebraReport::default();
    report.push_matrices(REL_KFK, &(&(k * f) * ki), &f.scale(&ctx.q_pow(2)));
    report.push_matrices(REL_KEK, &(&(k * e) * ki), &e.scale(&ctx.q_pow(-2)));
    let kk = k * ki;
    let kk2 = ki * k;
    let inv_ok = if kk == id { &kk2 } else { &kk };
    report.push_matrices(REL_KINV, inv_ok, &id);
    let delta_inv = (ctx.q() - ctx.q_inv()).inv().expect("q - 1/q is non-zero");
    report.push_matrices(REL_COMM, &(&(f * e) - &(e * f)), &(k - ki).scale(&delta_inv));
    let (c1, c2) = casimir_forms(rep);
    report.push_matrices(REL_CASIMIR, &c1, &c2);
    report.push_matrices(REL_CENTRAL_E, &(&c1 * e), &(e * &c1));
    report.push_matrices(REL_CENTRAL_F, &(&c1 * f), &(f * &c1));
    report.push_matrices(REL_CENTRAL_K, &(&c1 * k), &(k * &c1));
    report
}

pub const CTR_E: &str = "e^n_cal = 0";
pub const CTR_F: &str = "f^n_cal = 0";
pub const CTR_K: &str = "k^n_cal = +-1";
pub const CTR_IDENTITY: &str = "f^n e^n product identity";

/// Result of the root-of-unity center checks, with the observed sign of
/// `k^n_cal` when it is scalar.
#[derive(Clone, Debug)]
pub struct CenterReport {
    pub report: AlgebraReport,
    pub k_power_sign: Option<Sign>,
}

/// Checks `e^n = f^n = 0`, `k^n = ±1` (n = n_cal) and the identity
/// `f^n e^n = prod_{m<n} (C - (q^{2m} + q^{-2m})/(q-q^-1)^2)
///            + (q^-n k^n - 1)(q^n k^-n - 1)/(q-q^-1)^{2n}`.
pub fn check_center_constraints(rep: &Rep) -> Result<CenterReport> {
    let ctx = rep.ctx();
    let n = ctx
        .n_cal()
        .ok_or_else(|| Error::NotApplicable("center constraints need a root-of-unity context".into()))?;
    let field = ctx.field();
    let dim = rep.dim();
    let zero = Matrix::zeros(field, dim, dim);
    let id = Matrix::identity(field, dim);
    let en = rep.e().pow(n as u32)?;
    let fnn = rep.f().pow(n as u32)?;
    let kn = rep.k().pow(n as u32)?;

    let mut report = AlgebraReport::default();
    report.push_matrices(CTR_E, &en, &zero);
    report.push_matrices(CTR_F, &fnn, &zero);
    let k_power_sign = if kn == id {
        Some(Sign::Plus)
    } else if kn == id.neg() {
        Some(Sign::Minus)
    } else {
        None
    };
    report.push_flag(
        CTR_K,
        k_power_sign.is_some(),
        k_power_sign.map(|s| format!("k^{n} = {s}")),
    );

    let lhs = &fnn * &en;
    report.push_matrices(CTR_IDENTITY, &lhs, &center_identity_rhs(rep, n)?);
    Ok(CenterReport { report, k_power_sign })
}

fn center_identity_rhs(rep: &Rep, n: usize) -> Result<Matrix> {
    let ctx = rep.ctx();
    let c = casimir_matrix(rep)?;
    let d = ctx.delta_inv_sq();
    let mut prod = Matrix::identity(ctx.field(), rep.dim());
    for m in 0..n as i64 {
        let shift = &(&ctx.q_pow(2 * m) + &ctx.q_pow(-2 * m)) * d;
        prod = &prod * &c.add_scalar(&-&shift);
    }
    let one = ctx.field().one();
    let qn = ctx.q_pow(n as i64);
    let qmn = ctx.q_pow(-(n as i64));
    let a = rep.k().pow(n as u32)?.scale(&qmn).add_scalar(&-&one);
    let b = rep.k_inv().pow(n as u32)?.scale(&qn).add_scalar(&-&one);
    let dn = d.pow(n as i64)?;
    Ok(&prod + &(&a * &b).scale(&dn))
}

/// q-dimension of an invariant subspace: the trace of `K` restricted to it.
pub fn q_dimension(k_restricted: &Matrix) -> Scalar {
    k_restricted.trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repbuild::build_irrep;

    fn root(n: usize) -> QContext {
        QContext::root(n, Sign::Plus).unwrap()
    }

    #[test]
    fn contexts() {
        let c4 = root(4);
        assert_eq!(c4.n_cal(), Some(2));
        assert_eq!(c4.q(), &c4.field().zeta_pow(1).unwrap());
        assert_eq!(root(3).n_cal(), Some(3));
        assert_eq!(root(6).n_cal(), Some(3));
        assert!(QContext::generic(default_q0(), Sign::Plus).is_ok());
        assert!(matches!(
            QContext::root(2, Sign::Plus),
            Err(Error::DegenerateDeformation(_))
        ));
        for bad in [0, 1, -1] {
            assert!(matches!(
                QContext::generic(Rational::from_int(bad), Sign::Plus),
                Err(Error::DegenerateDeformation(_))
            ));
        }
    }

    #[test]
    fn q_number_values() {
        let c4 = root(4);
        assert!(q_number(1, &c4).is_one());
        assert!(q_number(2, &c4).is_zero());
        assert!(q_number(3, &root(3)).is_zero());
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        // [2] = q + 1/q = 3/2 + 2/3 = 13/6
        assert_eq!(q_number(2, &g), Scalar::Rat(Rational::new(13, 6).unwrap()));
        assert_eq!(q_number(-3, &g), -&q_number(3, &g));
    }

    #[test]
    fn q_number_recursion() {
        let ctxs = vec![
            QContext::generic(default_q0(), Sign::Plus).unwrap(),
            QContext::generic(Rational::new(5, 2).unwrap(), Sign::Minus).unwrap(),
            root(5),
            root(8),
        ];
        for ctx in &ctxs {
            for n in 1..=12 {
                let lhs = q_number(n + 1, ctx);
                let rhs = &(ctx.q() * &q_number(n, ctx)) + &ctx.q_pow(-n);
                assert_eq!(lhs, rhs, "n = {n} in {ctx}");
            }
        }
    }

    #[test]
    fn casimir_candidate_values() {
        let c4 = root(4);
        assert!(casimir_candidate(Spin::ONE, &c4).is_zero());
        let c3 = root(3);
        let third = c3.field().from_rational(&Rational::new(1, 3).unwrap());
        assert_eq!(casimir_candidate(Spin::ZERO, &c3), third);
        assert_eq!(casimir_candidate(Spin::HALF, &c3), third);
        let c3m = QContext::root(3, Sign::Minus).unwrap();
        assert_eq!(casimir_candidate(Spin::ZERO, &c3m), -&third);
    }

    #[test]
    fn casimir_candidates_collide_as_predicted() {
        for n in 3..=10usize {
            let ctx = root(n);
            for a in 0..8u32 {
                for b in 0..8u32 {
                    let same = casimir_candidate(Spin(a), &ctx) == casimir_candidate(Spin(b), &ctx);
                    // q^{2j+2j'+2} = 1 or q^{2j-2j'} = 1
                    let predicted =
                        ((a + b + 2) as usize).is_multiple_of(n) || (a as i64 - b as i64).rem_euclid(n as i64) == 0;
                    assert_eq!(same, predicted, "N={n} 2j={a} 2j'={b}");
                }
            }
        }
        for q0 in [default_q0(), Rational::new(5, 2).unwrap()] {
            let g = QContext::generic(q0, Sign::Plus).unwrap();
            for a in 0..=12u32 {
                for b in 0..a {
                    assert_ne!(casimir_candidate(Spin(a), &g), casimir_candidate(Spin(b), &g));
                }
            }
        }
    }

    #[test]
    fn spin_half_casimir_is_scalar() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let rep = build_irrep(Spin::HALF, &g).unwrap();
        let c = casimir_matrix(&rep).unwrap();
        // eps (q^2 + q^-2)/(q - q^-1)^2 computed independently in Q
        let q = Rational::new(3, 2).unwrap();
        let qi = q.inv().unwrap();
        let num = &(&q * &q) + &(&qi * &qi);
        let den = &(&q - &qi) * &(&q - &qi);
        let expect = Scalar::Rat(&num / &den);
        assert_eq!(c, Matrix::diag(g.field(), vec![expect.clone(), expect]));
    }

    #[test]
    fn spin_parse_and_display() {
        assert_eq!("0.5".parse::<Spin>().unwrap(), Spin::HALF);
        assert_eq!("3/2".parse::<Spin>().unwrap(), Spin(3));
        assert_eq!("1".parse::<Spin>().unwrap(), Spin::ONE);
        assert_eq!(Spin(3).to_string(), "3/2");
        assert_eq!(Spin(4).to_string(), "2");
        assert!("0.25".parse::<Spin>().is_err());
        assert!("-1".parse::<Spin>().is_err());
    }

    #[test]
    fn center_constraints_on_spin_half_at_q_i() {
        let rep = build_irrep(Spin::HALF, &root(4)).unwrap();
        let r = check_center_constraints(&rep).unwrap();
        assert!(r.report.passed(), "{}", r.report);
        // K = diag(q^-1, q) with q = i squares to -1
        assert_eq!(r.k_power_sign, Some(Sign::Minus));
    }

    #[test]
    fn printed_center_identity_variant_does_not_hold() {
        // The variant with shifts (q^m - 2 + q^-m)/(q-q^-1)^2 and (k^n - 1)(k^-n - 1)
        // leaves 1/4 on the spin-1/2 irrep at q = i, where f^2 e^2 = 0.
        let ctx = root(4);
        let rep = build_irrep(Spin::HALF, &ctx).unwrap();
        let c = casimir_matrix(&rep).unwrap();
        let d = ctx.delta_inv_sq();
        let mut prod = Matrix::identity(ctx.field(), 2);
        for m in 0..2 {
            let shift = &(&(&ctx.q_pow(m) + &ctx.q_pow(-m)) - &ctx.field().from_int(2)) * d;
            prod = &prod * &c.add_scalar(&-&shift);
        }
        let one = ctx.field().one();
        let a = rep.k().pow(2).unwrap().add_scalar(&-&one);
        let b = rep.k_inv().pow(2).unwrap().add_scalar(&-&one);
        let rhs = &prod + &(&a * &b).scale(&d.pow(2).unwrap());
        let quarter = ctx.field().from_rational(&Rational::new(1, 4).unwrap());
        assert_eq!(rhs, Matrix::diag(ctx.field(), vec![quarter.clone(), quarter]));
    }

    #[test]
    fn center_constraints_not_applicable_in_generic_mode() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let rep = build_irrep(Spin::HALF, &g).unwrap();
        assert!(matches!(check_center_constraints(&rep), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn q_dimension_of_spin_one() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let rep = build_irrep(Spin::ONE, &g).unwrap();
        let expect = &(&g.q_pow(2) + &g.field().one()) + &g.q_pow(-2);
        assert_eq!(q_dimension(rep.k()), expect);
        assert_eq!(q_dimension(rep.k()), q_number(3, &g));
    }
}
