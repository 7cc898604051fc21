//! Weight spaces of `K`, generalized eigenspaces of the Casimir, and cyclic
//! submodules.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qalgebra::{casimir_candidate_signed, casimir_matrix, QContext, Sign, Spin};
use crate::repbuild::Rep;
use crate::scalars::{kernel, rank, Matrix, Scalar, Subspace};

/// Every value `K` may take on a module built in `ctx`: `±q^k`.
pub fn candidate_weights(ctx: &QContext, dim: usize) -> Vec<Scalar> {
    let range: Vec<i64> = match ctx.order() {
        Some(n) => (0..n as i64).collect(),
        None => (-(dim as i64)..=dim as i64).collect(),
    };
    let mut set = std::collections::BTreeSet::new();
    for k in range {
        let w = ctx.q_pow(k);
        set.insert(-&w);
        set.insert(w);
    }
    set.into_iter().collect()
}

/// Candidate Casimir eigenvalues, each with the simple types `(spin, twist)`
/// realizing it. Irreps are bounded by `n_cal` at roots of unity and by
/// `max_dim` otherwise.
pub fn casimir_candidates(ctx: &QContext, max_dim: usize) -> Vec<(Scalar, Vec<(Spin, Sign)>)> {
    let bound = ctx.n_cal().unwrap_or(max_dim).max(1);
    let mut out: Vec<(Scalar, Vec<(Spin, Sign)>)> = Vec::new();
    for tj in 0..bound as u32 {
        for s in [Sign::Plus, Sign::Minus] {
            let spin = Spin::from_twice(tj);
            let c = casimir_candidate_signed(spin, ctx.eps().times(s), ctx);
            match out.iter_mut().find(|(l, _)| *l == c) {
                Some((_, v)) => v.push((spin, s)),
                None => out.push((c, vec![(spin, s)])),
            }
        }
    }
    out
}

/// Bases of the eigenspaces of `K`, keyed by eigenvalue. Fails when `K` does
/// not diagonalize over the candidate weights.
pub fn weight_bases(k: &Matrix, ctx: &QContext) -> Result<Vec<(Scalar, Vec<Vec<Scalar>>)>> {
    let d = k.rows();
    let field = k.field();
    if k.is_diagonal() {
        let mut map: BTreeMap<Scalar, Vec<Vec<Scalar>>> = BTreeMap::new();
        for (i, w) in k.diagonal().into_iter().enumerate() {
            map.entry(w).or_default().push(unit(field, d, i));
        }
        return Ok(map.into_iter().collect());
    }
    let mut out = Vec::new();
    let mut total = 0;
    for w in candidate_weights(ctx, d) {
        let ker = kernel(&k.add_scalar(&-&w));
        if !ker.is_empty() {
            total += ker.len();
            out.push((w, ker));
        }
    }
    if total != d {
        return Err(Error::MalformedRep(format!(
            "K does not diagonalize over the expected weights ({total} of {d} dimensions found)"
        )));
    }
    Ok(out)
}

pub fn unit(field: &crate::scalars::Field, d: usize, i: usize) -> Vec<Scalar> {
    (0..d)
        .map(|k| if k == i { field.one() } else { field.zero() })
        .collect()
}

/// A module rewritten in a basis of `K`-eigenvectors.
pub struct WeightFrame {
    /// Columns are the frame basis in parent coordinates; `None` when the
    /// parent basis already diagonalizes `K`.
    pub to_parent: Option<Matrix>,
    pub rep: Rep,
    pub casimir: Matrix,
    /// Weight and the frame coordinates spanning its eigenspace.
    pub spaces: Vec<(Scalar, Vec<usize>)>,
}

impl WeightFrame {
    pub fn new(rep: &Rep) -> Result<WeightFrame> {
        let ctx = rep.ctx();
        let d = rep.dim();
        if rep.k().is_diagonal() {
            let mut map: BTreeMap<Scalar, Vec<usize>> = BTreeMap::new();
            for (i, w) in rep.k().diagonal().into_iter().enumerate() {
                map.entry(w).or_default().push(i);
            }
            return Ok(WeightFrame {
                to_parent: None,
                casimir: casimir_matrix(rep)?,
                rep: rep.clone(),
                spaces: map.into_iter().collect(),
            });
        }
        let bases = weight_bases(rep.k(), ctx)?;
        let mut cols = Vec::with_capacity(d);
        let mut spaces = Vec::new();
        for (w, vs) in bases {
            let start = cols.len();
            cols.extend(vs);
            spaces.push((w, (start..cols.len()).collect()));
        }
        let p = Matrix::from_columns(ctx.field(), d, &cols);
        let conj = rep.conjugate(&p)?;
        Ok(WeightFrame {
            to_parent: Some(p),
            casimir: casimir_matrix(&conj)?,
            rep: conj,
            spaces,
        })
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Maps a frame vector back to parent coordinates.
    pub fn lift(&self, v: &[Scalar]) -> Vec<Scalar> {
        match &self.to_parent {
            Some(p) => p.mul_vec(v),
            None => v.to_vec(),
        }
    }
}

/// Basis of `ker m^p` for `p` large enough that the kernel stabilizes.
pub fn generalized_kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut power = m.clone();
    let mut ker = kernel(&power);
    while !ker.is_empty() && ker.len() < m.cols() {
        power = &power * m;
        let next = kernel(&power);
        if next.len() == ker.len() {
            break;
        }
        ker = next;
    }
    ker
}

/// The generalized eigenspace of the Casimir for one candidate value, split by
/// weight (frame coordinates, full-length vectors).
pub struct CasimirBlock {
    pub lambda: Scalar,
    pub simples: Vec<(Spin, Sign)>,
    pub spaces: BTreeMap<Scalar, Vec<Vec<Scalar>>>,
}

impl CasimirBlock {
    pub fn dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }
}

/// Splits the frame into Casimir blocks. Fails with `UnknownEigenvalue` when
/// the candidate eigenvalues do not exhaust some weight space.
pub fn casimir_blocks(frame: &WeightFrame) -> Result<Vec<CasimirBlock>> {
    let ctx = frame.rep.ctx();
    let d = frame.dim();
    let field = ctx.field();
    let candidates = casimir_candidates(ctx, d);
    let mut blocks: Vec<CasimirBlock> = candidates
        .into_iter()
        .map(|(lambda, simples)| CasimirBlock {
            lambda,
            simples,
            spaces: BTreeMap::new(),
        })
        .collect();
    for (w, idx) in &frame.spaces {
        let cw = frame.casimir.submatrix(idx, idx);
        let mut found = 0;
        for b in blocks.iter_mut() {
            // every composition factor of the block is one of its simples, so
            // the block can only meet weights those simples carry
            if found == idx.len() || !b.simples.iter().any(|&(j, s)| simple_has_weight(j, s, w, ctx)) {
                continue;
            }
            let ker = generalized_kernel(&cw.add_scalar(&-&b.lambda));
            if ker.is_empty() {
                continue;
            }
            found += ker.len();
            let vs = ker
                .into_iter()
                .map(|y| {
                    let mut v = vec![field.zero(); d];
                    for (c, &i) in y.into_iter().zip(idx) {
                        v[i] = c;
                    }
                    v
                })
                .collect();
            b.spaces.insert(w.clone(), vs);
        }
        if found != idx.len() {
            return Err(Error::UnknownEigenvalue {
                residual: idx.len() - found,
                weight: w.to_string(),
            });
        }
    }
    blocks.retain(|b| !b.spaces.is_empty());
    Ok(blocks)
}

fn simple_has_weight(spin: Spin, sign: Sign, w: &Scalar, ctx: &QContext) -> bool {
    let tj = spin.twice() as i64;
    (0..=tj).any(|m| {
        let x = ctx.q_pow(2 * m - tj);
        match ctx.eps().times(sign) {
            Sign::Plus => &x == w,
            Sign::Minus => &-&x == w,
        }
    })
}

/// Generalized eigenspaces of a Casimir matrix over the candidate eigenvalues,
/// computed on the whole space.
pub fn generalized_eigenspaces(c: &Matrix, ctx: &QContext) -> Result<Vec<(Scalar, Vec<Vec<Scalar>>)>> {
    let mut out = Vec::new();
    let mut total = 0;
    for (lambda, _) in casimir_candidates(ctx, c.rows()) {
        let ker = generalized_kernel(&c.add_scalar(&-&lambda));
        if !ker.is_empty() {
            total += ker.len();
            out.push((lambda, ker));
        }
    }
    if total != c.rows() {
        return Err(Error::UnknownEigenvalue {
            residual: c.rows() - total,
            weight: "all".into(),
        });
    }
    Ok(out)
}

/// Basis of the submodule generated by `v` under `E` and `F` (and `K` when
/// `v` is not known to be a weight vector), in breadth-first order.
pub fn cyclic_closure(rep: &Rep, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut span = Subspace::new(rep.ctx().field(), rep.dim());
    let mut queue = std::collections::VecDeque::new();
    if span.insert(v) {
        queue.push_back(v.to_vec());
    }
    let with_k = !rep.k().is_diagonal();
    while let Some(u) = queue.pop_front() {
        let mut images = vec![rep.e().mul_vec(&u), rep.f().mul_vec(&u)];
        if with_k {
            images.push(rep.k().mul_vec(&u));
        }
        for w in images {
            if span.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    span.basis().to_vec()
}

/// The matrix of `X` restricted to the invariant span of `basis`; fails when
/// the span is not `X`-invariant.
pub fn restrict_matrix(x: &Matrix, basis: &Matrix) -> Result<Matrix> {
    // pick rows where the basis is invertible, then solve there
    let bt = basis.transpose();
    let pivots = crate::scalars::rref(&bt).pivots;
    if pivots.len() != basis.cols() {
        return Err(Error::ShapeError("basis vectors are dependent".into()));
    }
    let xb = x.try_mul(basis)?;
    let square = basis.submatrix(&pivots, &(0..basis.cols()).collect::<Vec<_>>());
    let rhs = xb.submatrix(&pivots, &(0..basis.cols()).collect::<Vec<_>>());
    let r = crate::scalars::inverse(&square)?.try_mul(&rhs)?;
    if basis.try_mul(&r)? != xb {
        return Err(Error::MalformedRep("subspace is not invariant".into()));
    }
    Ok(r)
}

/// The submodule spanned by `basis`, in that basis.
pub fn restrict(rep: &Rep, basis: &[Vec<Scalar>], label: crate::repbuild::RepLabel) -> Result<Rep> {
    let b = Matrix::from_columns(rep.ctx().field(), rep.dim(), basis);
    Rep::new(
        rep.ctx(),
        restrict_matrix(rep.e(), &b)?,
        restrict_matrix(rep.f(), &b)?,
        restrict_matrix(rep.k(), &b)?,
        label,
    )
}

/// Rank of the images of `vs` under `m`.
pub fn image_rank(m: &Matrix, vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| m.mul_vec(v)).collect();
    rank(&Matrix::from_columns(m.field(), m.rows(), &cols))
}
