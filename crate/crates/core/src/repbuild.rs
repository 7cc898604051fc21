//! Concrete modules: spin-j irreps on polynomials in one variable, the
//! three-parameter realization, and tensor products through the coproduct.

use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::{q_number, AlgebraReport, QContext, Sign, Spin};
use crate::scalars::{inverse, kron, Matrix};

/// Where a representation came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepLabel {
    Irrep(Spin),
    Tensor(Vec<RepLabel>),
    SummandOf {
        parent: Box<RepLabel>,
        index: usize,
    },
    General {
        alpha: i64,
        beta: i64,
        lambda: i64,
    },
    /// Tensored with the one-dimensional sign module (`K = -1`, `E = F = 0`).
    Twisted(Box<RepLabel>),
    Custom(String),
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Irrep(j) => write!(f, "V({j})"),
            RepLabel::Tensor(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", parts.join(" x "))
            }
            RepLabel::SummandOf { parent, index } => write!(f, "{parent}[{index}]"),
            RepLabel::General { alpha, beta, lambda } => {
                write!(f, "G(alpha={alpha}, beta={beta}, lambda={lambda})")
            }
            RepLabel::Twisted(inner) => write!(f, "sigma x {inner}"),
            RepLabel::Custom(s) => f.write_str(s),
        }
    }
}

/// A finite-dimensional module given by the matrices of `E`, `F`, `K`.
#[derive(Clone, Debug)]
pub struct Rep {
    ctx: QContext,
    e: Matrix,
    f: Matrix,
    k: Matrix,
    k_inv: Matrix,
    label: RepLabel,
}

impl Rep {
    /// Wraps three matrices; fails when shapes or fields disagree or `K` is
    /// singular. The defining relations are not checked here.
    pub fn new(ctx: &QContext, e: Matrix, f: Matrix, k: Matrix, label: RepLabel) -> Result<Rep> {
        let d = k.rows();
        for (name, m) in [("E", &e), ("F", &f), ("K", &k)] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::MalformedRep(format!(
                    "{name} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != ctx.field() {
                return Err(Error::FieldMismatch(format!(
                    "{name} lives in {}, context in {}",
                    m.field(),
                    ctx.field()
                )));
            }
        }
        if d == 0 {
            return Err(Error::MalformedRep("zero-dimensional module".into()));
        }
        let k_inv = inverse(&k).map_err(|_| Error::MalformedRep("K is singular".into()))?;
        Ok(Rep {
            ctx: ctx.clone(),
            e,
            f,
            k,
            k_inv,
            label,
        })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.k.rows()
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn k(&self) -> &Matrix {
        &self.k
    }

    pub fn k_inv(&self) -> &Matrix {
        &self.k_inv
    }

    pub fn label(&self) -> &RepLabel {
        &self.label
    }

    pub fn with_label(mut self, label: RepLabel) -> Rep {
        self.label = label;
        self
    }

    /// The module in the basis given by the columns of `p`:
    /// generators become `p^-1 X p`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Rep> {
        let pi = inverse(p)?;
        let conj = |m: &Matrix| -> Result<Matrix> { pi.try_mul(&m.try_mul(p)?) };
        Ok(Rep {
            ctx: self.ctx.clone(),
            e: conj(&self.e)?,
            f: conj(&self.f)?,
            k: conj(&self.k)?,
            k_inv: conj(&self.k_inv)?,
            label: self.label.clone(),
        })
    }
}

/// The spin-`j` irrep on `x^0, ..., x^{2j}`:
/// `E x^m = eps [m] x^{m-1}`, `F x^m = [2j-m] x^{m+1}`, `K x^m = eps q^{2m-2j} x^m`.
pub fn build_irrep(spin: Spin, ctx: &QContext) -> Result<Rep> {
    let d = spin.dim();
    if let Some(bound) = ctx.n_cal() {
        if d > bound {
            return Err(Error::SpinTooLarge {
                spin: spin.to_string(),
                dim: d,
                bound,
            });
        }
    }
    let field = ctx.field();
    let eps = ctx.eps_scalar();
    let two_j = spin.twice() as i64;
    let mut e = Matrix::zeros(field, d, d);
    let mut f = Matrix::zeros(field, d, d);
    let mut k = Matrix::zeros(field, d, d);
    for m in 0..d {
        let mi = m as i64;
        if m > 0 {
            e.set(m - 1, m, &eps * &q_number(mi, ctx));
        }
        if m + 1 < d {
            f.set(m + 1, m, q_number(two_j - mi, ctx));
        }
        k.set(m, m, &eps * &ctx.q_pow(2 * mi - two_j));
    }
    Rep::new(ctx, e, f, k, RepLabel::Irrep(spin))
}

/// Exponent parameters of the three-parameter realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralParams {
    pub alpha: i64,
    pub beta: i64,
    pub lambda: i64,
}

/// The three-parameter realization truncated to `x^0, ..., x^{d-1}`:
/// `E x^m = q^{-lambda/2} [m - beta] x^{m-1}`, `F x^m = q^{lambda/2} [alpha - m] x^{m+1}`,
/// `K x^m = q^{2m - alpha - beta} x^m`. The context's `eps` is not applied.
pub fn build_general(params: GeneralParams, d: usize, ctx: &QContext) -> Result<Rep> {
    let GeneralParams { alpha, beta, lambda } = params;
    if lambda % 2 != 0 {
        return Err(Error::UnsupportedParameter(format!(
            "lambda = {lambda} is odd; q^(lambda/2) would leave the base field"
        )));
    }
    if d == 0 {
        return Err(Error::MalformedRep("zero-dimensional module".into()));
    }
    if !q_number(-beta, ctx).is_zero() {
        return Err(Error::NotClosed(format!("E x^0 = [-beta] x^-1 with [{}] != 0", -beta)));
    }
    let top = alpha - (d as i64 - 1);
    if !q_number(top, ctx).is_zero() {
        return Err(Error::NotClosed(format!(
            "F x^{} = [{top}] x^{d} with [{top}] != 0",
            d - 1
        )));
    }
    let field = ctx.field();
    let down = ctx.q_pow(-lambda / 2);
    let up = ctx.q_pow(lambda / 2);
    let mut e = Matrix::zeros(field, d, d);
    let mut f = Matrix::zeros(field, d, d);
    let mut k = Matrix::zeros(field, d, d);
    for m in 0..d {
        let mi = m as i64;
        if m > 0 {
            e.set(m - 1, m, &down * &q_number(mi - beta, ctx));
        }
        if m + 1 < d {
            f.set(m + 1, m, &up * &q_number(alpha - mi, ctx));
        }
        k.set(m, m, ctx.q_pow(2 * mi - alpha - beta));
    }
    Rep::new(ctx, e, f, k, RepLabel::General { alpha, beta, lambda })
}

/// Tensor product through `K = K⊗K`, `E = E⊗1 + K⊗E`, `F = F⊗K^-1 + 1⊗F`,
/// with first-factor-major index order.
pub fn coproduct(a: &Rep, b: &Rep) -> Result<Rep> {
    if a.ctx != b.ctx {
        return Err(Error::FieldMismatch(format!("contexts differ: {} vs {}", a.ctx, b.ctx)));
    }
    let field = a.ctx.field();
    let ia = Matrix::identity(field, a.dim());
    let ib = Matrix::identity(field, b.dim());
    let e = kron(&a.e, &ib)?.try_add(&kron(&a.k, &b.e)?)?;
    let f = kron(&a.f, &b.k_inv)?.try_add(&kron(&ia, &b.f)?)?;
    let k = kron(&a.k, &b.k)?;
    let k_inv = kron(&a.k_inv, &b.k_inv)?;
    let parts = match (&a.label, &b.label) {
        (RepLabel::Tensor(x), RepLabel::Tensor(y)) => x.iter().chain(y).cloned().collect(),
        (RepLabel::Tensor(x), other) => x.iter().cloned().chain([other.clone()]).collect(),
        (other, RepLabel::Tensor(y)) => [other.clone()].into_iter().chain(y.iter().cloned()).collect(),
        (x, y) => vec![x.clone(), y.clone()],
    };
    Ok(Rep {
        ctx: a.ctx.clone(),
        e,
        f,
        k,
        k_inv,
        label: RepLabel::Tensor(parts),
    })
}

/// Left fold of [`coproduct`].
pub fn tensor_many(factors: &[Rep]) -> Result<Rep> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    rest.iter().try_fold(first.clone(), |acc, r| coproduct(&acc, r))
}

pub const COASSOC_E: &str = "(ab)c = a(bc) for e";
pub const COASSOC_F: &str = "(ab)c = a(bc) for f";
pub const COASSOC_K: &str = "(ab)c = a(bc) for k";

/// Compares `(a ⊗ b) ⊗ c` with `a ⊗ (b ⊗ c)` entry by entry.
pub fn check_coassociativity(a: &Rep, b: &Rep, c: &Rep) -> Result<AlgebraReport> {
    let left = coproduct(&coproduct(a, b)?, c)?;
    let right = coproduct(a, &coproduct(b, c)?)?;
    let mut report = AlgebraReport::default();
    report.push_matrices(COASSOC_E, left.e(), right.e());
    report.push_matrices(COASSOC_F, left.f(), right.f());
    report.push_matrices(COASSOC_K, left.k(), right.k());
    Ok(report)
}

/// Convenience: the tensor product of irreps with the given spins.
pub fn tensor_spins(spins: &[Spin], ctx: &QContext) -> Result<Rep> {
    let reps = spins.iter().map(|&s| build_irrep(s, ctx)).collect::<Result<Vec<_>>>()?;
    tensor_many(&reps)
}

/// The one-dimensional sign module: `K = -1`, `E = F = 0`.
pub fn sign_module(ctx: &QContext) -> Rep {
    let field = ctx.field();
    let z = Matrix::zeros(field, 1, 1);
    let k = Matrix::diag(field, vec![field.from_int(-1)]);
    Rep::new(ctx, z.clone(), z, k, RepLabel::Custom("sigma".into())).expect("K = -1 is invertible")
}

/// `sigma ⊗ rep`: negates `E` and `K`, keeps `F`.
pub fn twist(rep: &Rep) -> Rep {
    Rep {
        ctx: rep.ctx.clone(),
        e: rep.e.neg(),
        f: rep.f.clone(),
        k: rep.k.neg(),
        k_inv: rep.k_inv.neg(),
        label: RepLabel::Twisted(Box::new(rep.label.clone())),
    }
}

/// Twists by `sign` (identity for `Plus`).
pub fn twist_by(rep: &Rep, sign: Sign) -> Rep {
    match sign {
        Sign::Plus => rep.clone(),
        Sign::Minus => twist(rep),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{casimir_matrix, check_algebra, check_center_constraints, default_q0};
    use crate::scalars::{Rational, Scalar};

    fn contexts() -> Vec<QContext> {
        let mut v = Vec::new();
        for eps in [Sign::Plus, Sign::Minus] {
            v.push(QContext::generic(default_q0(), eps).unwrap());
            v.push(QContext::generic(Rational::new(5, 2).unwrap(), eps).unwrap());
            for n in 3..=8 {
                v.push(QContext::root(n, eps).unwrap());
            }
        }
        v
    }

    #[test]
    fn spin_half_matrices() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let r = build_irrep(Spin::HALF, &g).unwrap();
        let fld = g.field();
        assert_eq!(r.e(), &Matrix::from_i64(fld, &[&[0, 1], &[0, 0]]));
        assert_eq!(r.f(), &Matrix::from_i64(fld, &[&[0, 0], &[1, 0]]));
        let two_thirds = Scalar::Rat(Rational::new(2, 3).unwrap());
        let three_halves = Scalar::Rat(Rational::new(3, 2).unwrap());
        assert_eq!(r.k(), &Matrix::diag(fld, vec![two_thirds, three_halves]));
    }

    #[test]
    fn irreps_satisfy_relations() {
        for ctx in contexts() {
            for tj in 0..=5u32 {
                let spin = Spin::from_twice(tj);
                match build_irrep(spin, &ctx) {
                    Ok(r) => {
                        assert!(check_algebra(&r).passed(), "{spin} in {ctx}");
                        assert!(r.e().column(0).iter().all(Scalar::is_zero));
                        assert!(r.f().column(r.dim() - 1).iter().all(Scalar::is_zero));
                        if ctx.is_root() {
                            assert!(check_center_constraints(&r).unwrap().report.passed());
                        }
                    }
                    Err(Error::SpinTooLarge { .. }) => assert!(spin.dim() > ctx.n_cal().unwrap()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn spin_bounds_at_n3() {
        let c3 = QContext::root(3, Sign::Plus).unwrap();
        assert_eq!(build_irrep(Spin::ONE, &c3).unwrap().dim(), 3);
        assert!(matches!(
            build_irrep(Spin::from_twice(3), &c3),
            Err(Error::SpinTooLarge { .. })
        ));
    }

    #[test]
    fn zeroed_e_breaks_commutator() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let r = build_irrep(Spin::ONE, &g).unwrap();
        let broken = Rep::new(
            &g,
            Matrix::zeros(g.field(), 3, 3),
            r.f().clone(),
            r.k().clone(),
            RepLabel::Custom("broken".into()),
        )
        .unwrap();
        let report = check_algebra(&broken);
        assert!(!report.get(crate::qalgebra::REL_COMM).unwrap().passed);
    }

    #[test]
    fn general_realization_reduces_to_irrep() {
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        for tj in 0..=4i64 {
            let gen = build_general(
                GeneralParams {
                    alpha: tj,
                    beta: 0,
                    lambda: 0,
                },
                tj as usize + 1,
                &g,
            )
            .unwrap();
            let irr = build_irrep(Spin::from_twice(tj as u32), &g).unwrap();
            assert_eq!((gen.e(), gen.f(), gen.k()), (irr.e(), irr.f(), irr.k()));
        }
        assert!(matches!(
            build_general(
                GeneralParams {
                    alpha: 1,
                    beta: 0,
                    lambda: 0
                },
                3,
                &g
            ),
            Err(Error::NotClosed(_))
        ));
        assert!(matches!(
            build_general(
                GeneralParams {
                    alpha: 2,
                    beta: 0,
                    lambda: 1
                },
                3,
                &g
            ),
            Err(Error::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn shifted_general_realization_at_roots() {
        for n in 3..=8 {
            let ctx = QContext::root(n, Sign::Plus).unwrap();
            let nc = ctx.n_cal().unwrap() as i64;
            for tj in 0..nc {
                for lambda in [-2, 0, 4] {
                    let p = GeneralParams {
                        alpha: tj + nc,
                        beta: nc,
                        lambda,
                    };
                    let r = build_general(p, tj as usize + 1, &ctx).unwrap();
                    assert!(check_algebra(&r).passed());
                    assert!(check_center_constraints(&r).unwrap().report.passed());
                }
            }
        }
    }

    #[test]
    fn spin_half_squared_actions() {
        // basis order 1, x2, x1, x1 x2
        let g = QContext::generic(default_q0(), Sign::Plus).unwrap();
        let h = build_irrep(Spin::HALF, &g).unwrap();
        let p = coproduct(&h, &h).unwrap();
        let fld = g.field();
        let q = g.q().clone();
        let unit = |i: usize| {
            (0..4)
                .map(|k| if k == i { fld.one() } else { fld.zero() })
                .collect::<Vec<_>>()
        };
        // E x1 = 1, E x2 = q^-1
        assert_eq!(p.e().mul_vec(&unit(2)), unit(0));
        assert_eq!(
            p.e().mul_vec(&unit(1)),
            vec![g.q_inv().clone(), fld.zero(), fld.zero(), fld.zero()]
        );
        // F 1 = q x1 + x2
        assert_eq!(p.f().mul_vec(&unit(0)), vec![fld.zero(), fld.one(), q, fld.zero()]);
        // K 1 = q^-2
        assert_eq!(p.k().get(0, 0), &g.q_pow(-2));
    }

    #[test]
    fn coproduct_is_coassociative() {
        for ctx in contexts() {
            let reps: Vec<Rep> = [Spin::HALF, Spin::ONE]
                .iter()
                .filter_map(|&s| build_irrep(s, &ctx).ok())
                .collect();
            for a in &reps {
                for b in &reps {
                    for c in &reps {
                        let left = coproduct(&coproduct(a, b).unwrap(), c).unwrap();
                        let right = coproduct(a, &coproduct(b, c).unwrap()).unwrap();
                        assert_eq!((left.e(), left.f(), left.k()), (right.e(), right.f(), right.k()));
                    }
                }
            }
        }
    }

    #[test]
    fn triple_product_generator_form() {
        // e = e1 + k1 e2 + k1 k2 e3 on V ⊗ V ⊗ V
        let ctx = QContext::root(5, Sign::Minus).unwrap();
        let h = build_irrep(Spin::HALF, &ctx).unwrap();
        let t = tensor_many(&[h.clone(), h.clone(), h.clone()]).unwrap();
        let i = Matrix::identity(ctx.field(), 2);
        let k3 = |a: &Matrix, b: &Matrix, c: &Matrix| kron(&kron(a, b).unwrap(), c).unwrap();
        let e = &(&k3(h.e(), &i, &i) + &k3(h.k(), h.e(), &i)) + &k3(h.k(), h.k(), h.e());
        assert_eq!(t.e(), &e);
        assert!(check_algebra(&t).passed());
        assert!(check_center_constraints(&t).unwrap().report.passed());
    }

    #[test]
    fn products_satisfy_relations_and_casimir_is_central() {
        for ctx in contexts() {
            let spins = [Spin::HALF, Spin::ONE, Spin::from_twice(3)];
            for &a in &spins {
                for &b in &spins {
                    let (Ok(ra), Ok(rb)) = (build_irrep(a, &ctx), build_irrep(b, &ctx)) else {
                        continue;
                    };
                    let p = coproduct(&ra, &rb).unwrap();
                    assert!(check_algebra(&p).passed(), "{a} x {b} in {ctx}");
                    let c = casimir_matrix(&p).unwrap();
                    for g in [p.e(), p.f(), p.k()] {
                        assert_eq!(&c * g, g * &c);
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let a = build_irrep(Spin::HALF, &QContext::root(5, Sign::Plus).unwrap()).unwrap();
        let b = build_irrep(Spin::HALF, &QContext::root(5, Sign::Minus).unwrap()).unwrap();
        let c = build_irrep(Spin::HALF, &QContext::root(7, Sign::Plus).unwrap()).unwrap();
        assert!(matches!(coproduct(&a, &b), Err(Error::FieldMismatch(_))));
        assert!(matches!(coproduct(&a, &c), Err(Error::FieldMismatch(_))));
        assert_eq!(tensor_many(&[]).unwrap_err(), Error::EmptyProduct);
        assert_eq!(tensor_many(std::slice::from_ref(&a)).unwrap().e(), a.e());
    }

    #[test]
    fn twist_is_tensor_with_sign_module() {
        let ctx = QContext::root(6, Sign::Plus).unwrap();
        let v = build_irrep(Spin::ONE, &ctx).unwrap();
        let direct = coproduct(&sign_module(&ctx), &v).unwrap();
        let tw = twist(&v);
        assert_eq!((direct.e(), direct.f(), direct.k()), (tw.e(), tw.f(), tw.k()));
        // the eps = -1 irrep is the twist of the eps = +1 one
        let vm = build_irrep(Spin::ONE, &ctx.with_eps(Sign::Minus)).unwrap();
        assert_eq!((vm.e(), vm.f(), vm.k()), (tw.e(), tw.f(), tw.k()));
    }
}
