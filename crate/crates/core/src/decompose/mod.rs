//! Splitting a module into irreducible and indecomposable summands.
//!
//! The module is first written in a basis of `K`-eigenvectors and cut into
//! generalized eigenspaces of the Casimir. Each such block is a direct sum of
//! simple modules and of `2 n_cal`-dimensional indecomposables, each of which
//! is generated by the lowest vector of its top. Multiplicities come from an
//! exact linear system over per-weight dimensions and per-weight ranks of
//! `n = C - lambda`; explicit summands are then found greedily:
//! indecomposables from vectors `v` of the generator weight with `n v` outside
//! the current sum, simple modules from lowest vectors outside the current sum.

mod fingerprint;
mod library;
pub mod spectral;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use fingerprint::{fingerprint, Fingerprint};
pub use library::{build_fingerprint_library, FingerprintLibrary, LibraryEntry, SummandKind, SummandType};
pub use spectral::generalized_eigenspaces;

use crate::error::{Error, Result};
use crate::qalgebra::{q_dimension, q_number, AlgebraReport, QContext, Sign};
use crate::repbuild::{build_irrep, twist_by, Rep, RepLabel};
use crate::scalars::{kernel, rank, solve, Field, Matrix, Scalar, Subspace};
use spectral::{casimir_blocks, cyclic_closure, image_rank, CasimirBlock, WeightFrame};

/// Random combinations tried per missing summand before giving up.
const FALLBACK_ATTEMPTS: usize = 64;

/// One summand: its type, basis in parent coordinates and the module it spans.
#[derive(Clone, Debug)]
pub struct Summand {
    pub ty: SummandType,
    pub basis: Vec<Vec<Scalar>>,
    pub rep: Rep,
    /// Fingerprint of the library reference for `ty`.
    pub expected: Fingerprint,
}

impl Summand {
    pub fn casimir(&self) -> &Scalar {
        &self.expected.casimir
    }

    pub fn q_dim(&self) -> Scalar {
        q_dimension(self.rep.k())
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parent: Rep,
    pub summands: Vec<Summand>,
    /// Columns are the summand bases, in summand order.
    pub change_of_basis: Matrix,
    pub seed: u64,
    /// Whether the seeded random search was needed.
    pub used_fallback: bool,
}

impl Decomposition {
    /// Assembles a decomposition from explicit bases; the result is not
    /// verified (see [`verify_decomposition`]).
    pub fn from_parts(
        parent: &Rep,
        parts: Vec<(SummandType, Vec<Vec<Scalar>>)>,
        lib: &FingerprintLibrary,
        seed: u64,
    ) -> Result<Decomposition> {
        let d = parent.dim();
        let cols: Vec<Vec<Scalar>> = parts.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        if cols.len() != d || cols.iter().any(|c| c.len() != d) {
            return Err(Error::ShapeError(format!(
                "{} basis vectors for a {d}-dimensional module",
                cols.len()
            )));
        }
        let p = Matrix::from_columns(parent.ctx().field(), d, &cols);
        let conj = parent.conjugate(&p)?;
        let mut summands = Vec::new();
        let mut start = 0;
        for (index, (ty, basis)) in parts.into_iter().enumerate() {
            let idx: Vec<usize> = (start..start + basis.len()).collect();
            start += basis.len();
            let rep = Rep::new(
                parent.ctx(),
                conj.e().submatrix(&idx, &idx),
                conj.f().submatrix(&idx, &idx),
                conj.k().submatrix(&idx, &idx),
                RepLabel::SummandOf {
                    parent: Box::new(parent.label().clone()),
                    index,
                },
            )?;
            summands.push(Summand {
                ty,
                expected: lib.entry(ty)?.fingerprint,
                basis,
                rep,
            });
        }
        Ok(Decomposition {
            parent: parent.clone(),
            summands,
            change_of_basis: p,
            seed,
            used_fallback: false,
        })
    }

    /// Multiplicity of every summand type.
    pub fn multiset(&self) -> BTreeMap<SummandType, usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry(s.ty).or_insert(0) += 1;
        }
        m
    }

    /// Multiplicities up to the sign twist.
    pub fn kinds(&self) -> BTreeMap<SummandKind, usize> {
        let mut m = BTreeMap::new();
        for s in &self.summands {
            *m.entry(s.ty.kind).or_insert(0) += 1;
        }
        m
    }
}

/// Decomposes with the default seed 0.
pub fn decompose(rep: &Rep, lib: &FingerprintLibrary) -> Result<Decomposition> {
    decompose_seeded(rep, lib, 0)
}

pub fn decompose_seeded(rep: &Rep, lib: &FingerprintLibrary, seed: u64) -> Result<Decomposition> {
    check_library(rep, lib)?;
    let frame = WeightFrame::new(rep)?;
    let blocks = casimir_blocks(&frame)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = Subspace::new(rep.ctx().field(), rep.dim());
    let mut used_fallback = false;
    let mut parts: Vec<(SummandType, Vec<Vec<Scalar>>)> = Vec::new();
    for block in &blocks {
        let typing = type_block(&frame, block, lib)?;
        let found = split_block(&frame, block, &typing, &mut span, &mut rng, &mut used_fallback)
            .map_err(|e| with_typing(e, rep, lib))?;
        parts.extend(found);
    }
    parts.sort_by_key(|a| a.0);
    let parts = parts
        .into_iter()
        .map(|(ty, basis)| (ty, basis.iter().map(|v| frame.lift(v)).collect()))
        .collect();
    let mut d = Decomposition::from_parts(rep, parts, lib, seed)?;
    d.used_fallback = used_fallback;
    Ok(d)
}

/// Summand multiplicities from the invariant system alone, without building
/// explicit bases.
pub fn type_multiplicities(rep: &Rep, lib: &FingerprintLibrary) -> Result<BTreeMap<SummandType, usize>> {
    check_library(rep, lib)?;
    let frame = WeightFrame::new(rep)?;
    let mut out = BTreeMap::new();
    for block in casimir_blocks(&frame)? {
        for (entry, m) in type_block(&frame, &block, lib)? {
            *out.entry(entry.ty).or_insert(0) += m;
        }
    }
    Ok(out)
}

/// A failed split still reports the multiplicities the invariants imply.
fn with_typing(e: Error, rep: &Rep, lib: &FingerprintLibrary) -> Error {
    let Error::SplitFailed { attempts, reason } = e else {
        return e;
    };
    let typing = match type_multiplicities(rep, lib) {
        Ok(m) => m
            .iter()
            .map(|(t, c)| format!("{c}x{t}"))
            .collect::<Vec<_>>()
            .join(" + "),
        Err(e) => format!("unavailable ({e})"),
    };
    Error::SplitFailed {
        attempts,
        reason: format!("{reason}; typing {typing}"),
    }
}

fn check_library(rep: &Rep, lib: &FingerprintLibrary) -> Result<()> {
    if rep.ctx() != lib.ctx() && rep.ctx().with_eps(lib.ctx().eps()) != *lib.ctx() {
        return Err(Error::FieldMismatch(format!(
            "module built in {}, library for {}",
            rep.ctx(),
            lib.ctx()
        )));
    }
    if rep.ctx().eps() != lib.ctx().eps() {
        return Err(Error::FieldMismatch("module and library use different eps".into()));
    }
    Ok(())
}

/// Solves `dim W_w = sum_T x_T dim T_w` and `rank n|W_w = sum_T x_T rank n_T|w`
/// over all weights `w` for non-negative integers `x_T`.
fn type_block(
    frame: &WeightFrame,
    block: &CasimirBlock,
    lib: &FingerprintLibrary,
) -> Result<Vec<(LibraryEntry, usize)>> {
    let entries = lib.types_with_casimir(&block.lambda, block.dim())?;
    let n = frame.casimir.add_scalar(&-&block.lambda);
    let mut weights: Vec<Scalar> = block.spaces.keys().cloned().collect();
    for e in &entries {
        weights.extend(e.fingerprint.weights.iter().map(|(w, _)| w.clone()));
    }
    weights.sort();
    weights.dedup();

    let q = Field::Rational;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let maps: Vec<_> = entries
        .iter()
        .map(|e| (e.fingerprint.weight_map(), e.fingerprint.image_map()))
        .collect();
    for w in &weights {
        let space = block.spaces.get(w).map(Vec::as_slice).unwrap_or(&[]);
        rows.push(
            maps.iter()
                .map(|(dm, _)| q.from_int(*dm.get(w).unwrap_or(&0) as i64))
                .collect(),
        );
        rhs.push(q.from_int(space.len() as i64));
        rows.push(
            maps.iter()
                .map(|(_, im)| q.from_int(*im.get(w).unwrap_or(&0) as i64))
                .collect(),
        );
        rhs.push(q.from_int(image_rank(&n, space) as i64));
    }
    let describe = || {
        format!(
            "lambda = {} with candidates [{}]",
            block.lambda,
            entries.iter().map(|e| e.ty.to_string()).collect::<Vec<_>>().join(", ")
        )
    };
    if entries.is_empty() {
        return Err(Error::UnknownSummand(format!("no summand type has {}", describe())));
    }
    let a = Matrix::from_rows(&q, rows)?;
    if rank(&a) < entries.len() {
        return Err(Error::AmbiguousTyping(describe()));
    }
    let x =
        solve(&a, &rhs).map_err(|_| Error::UnknownSummand(format!("invariants inconsistent for {}", describe())))?;
    let context = describe();
    let mut out = Vec::new();
    for (e, xi) in entries.into_iter().zip(x) {
        let r = xi.as_rational().expect("rational system");
        if !r.is_integer() || r.is_negative() {
            return Err(Error::UnknownSummand(format!(
                "multiplicity {r} of {} is not a non-negative integer ({context})",
                e.ty
            )));
        }
        let m: usize = r.numer().try_into().expect("small multiplicity");
        if m > 0 {
            out.push((e, m));
        }
    }
    Ok(out)
}

/// The submodule generated by `v` if it is an indecomposable of dimension
/// `target` meeting `span` trivially; on success it is added to `span`.
pub(crate) fn try_projective(
    rep: &Rep,
    n: &Matrix,
    v: &[Scalar],
    target: usize,
    span: &mut Subspace,
) -> Option<Vec<Vec<Scalar>>> {
    let nv = n.mul_vec(v);
    if nv.iter().all(Scalar::is_zero) || span.contains(&nv) {
        return None;
    }
    let basis = cyclic_closure(rep, v);
    if basis.len() != target {
        return None;
    }
    let mut trial = span.clone();
    if !basis.iter().all(|b| trial.insert(b)) {
        return None;
    }
    *span = trial;
    Some(basis)
}

/// The irrep generated by a lowest vector `v`, normalized so that it matches
/// the reference matrices exactly; added to `span` when independent of it.
fn try_simple(rep: &Rep, v: &[Scalar], two_j: u32, span: &mut Subspace) -> Option<Vec<Vec<Scalar>>> {
    if span.contains(v) {
        return None;
    }
    let ctx = rep.ctx();
    let mut basis = vec![v.to_vec()];
    for m in 0..two_j as i64 {
        let next = rep.f().mul_vec(basis.last().unwrap());
        let c = q_number(two_j as i64 - m, ctx).inv().ok()?;
        basis.push(next.iter().map(|x| x * &c).collect());
    }
    let mut trial = span.clone();
    if !basis.iter().all(|b| trial.insert(b)) {
        return None;
    }
    *span = trial;
    Some(basis)
}

fn random_combination(rng: &mut ChaCha8Rng, vs: &[Vec<Scalar>], field: &Field) -> Vec<Scalar> {
    let d = vs[0].len();
    let mut out = vec![field.zero(); d];
    for v in vs {
        let c = field.from_int(rng.gen_range(-3..=3));
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(&c * x);
        }
    }
    out
}

/// Lowest vectors of the simple type `(2j, sign)` inside `cands`:
/// the common kernel of `E` and `F^{2j+1}`.
fn lowest_vectors(rep: &Rep, cands: &[Vec<Scalar>], two_j: u32) -> Result<Vec<Vec<Scalar>>> {
    if cands.is_empty() {
        return Ok(Vec::new());
    }
    let field = rep.ctx().field();
    let d = rep.dim();
    let b = Matrix::from_columns(field, d, cands);
    let mut top = b.clone();
    for _ in 0..=two_j {
        top = rep.f().try_mul(&top)?;
    }
    let stacked = rep.e().try_mul(&b)?.vcat(&top)?;
    Ok(kernel(&stacked).into_iter().map(|y| b.mul_vec(&y)).collect())
}

fn split_block(
    frame: &WeightFrame,
    block: &CasimirBlock,
    typing: &[(LibraryEntry, usize)],
    span: &mut Subspace,
    rng: &mut ChaCha8Rng,
    used_fallback: &mut bool,
) -> Result<Vec<(SummandType, Vec<Vec<Scalar>>)>> {
    let ctx = frame.rep.ctx();
    let field = ctx.field();
    let n = frame.casimir.add_scalar(&-&block.lambda);
    let mut out = Vec::new();
    // indecomposables first: they are injective, so any direct copy splits off
    let mut order: Vec<&(LibraryEntry, usize)> = typing.iter().collect();
    order.sort_by_key(|(e, _)| !e.ty.kind.is_indec());
    for (entry, mult) in order {
        let ty = entry.ty;
        let w = ty.generator_weight(ctx).expect("library type has a top");
        let space = block.spaces.get(&w).cloned().unwrap_or_default();
        let cands = match ty.kind {
            SummandKind::Indec { .. } => space.clone(),
            SummandKind::Irrep(j) => lowest_vectors(&frame.rep, &space, j.twice())?,
        };
        let attempt = |v: &[Scalar], span: &mut Subspace| match ty.kind {
            SummandKind::Indec { dim, .. } => try_projective(&frame.rep, &n, v, dim, span),
            SummandKind::Irrep(j) => try_simple(&frame.rep, v, j.twice(), span),
        };
        let mut got = 0;
        for v in &cands {
            if got == *mult {
                break;
            }
            if let Some(b) = attempt(v, span) {
                out.push((ty, b));
                got += 1;
            }
        }
        let mut tries = 0;
        while got < *mult && !cands.is_empty() && tries < FALLBACK_ATTEMPTS * mult {
            tries += 1;
            *used_fallback = true;
            let v = random_combination(rng, &cands, field);
            if let Some(b) = attempt(&v, span) {
                out.push((ty, b));
                got += 1;
            }
        }
        if got < *mult {
            return Err(Error::SplitFailed {
                attempts: tries,
                reason: format!("found {got} of {mult} copies of {ty} at lambda = {}", block.lambda),
            });
        }
    }
    Ok(out)
}

pub const VER_BASIS: &str = "change of basis is invertible";
pub const VER_BLOCKS: &str = "generators are block diagonal";
pub const VER_TRACES: &str = "traces of K powers agree";
pub const VER_QDIM_INDEC: &str = "indecomposables have zero q-dimension";
pub const VER_QDIM_IRREP: &str = "irreps have q-dimension eps [2j+1]";

/// Replays every structural claim of a decomposition.
pub fn verify_decomposition(d: &Decomposition) -> AlgebraReport {
    let mut report = AlgebraReport::default();
    let parent = &d.parent;
    let ctx = parent.ctx();
    let dim = parent.dim();
    let total: usize = d.summands.iter().map(|s| s.basis.len()).sum();
    let p = &d.change_of_basis;
    let invertible = total == dim && p.rows() == dim && p.cols() == dim && rank(p) == dim;
    report.push_flag(
        VER_BASIS,
        invertible,
        (!invertible).then(|| format!("{total} vectors for dim {dim}")),
    );
    if !invertible {
        return report;
    }

    let conj = match parent.conjugate(p) {
        Ok(c) => c,
        Err(e) => {
            report.push_flag(VER_BLOCKS, false, Some(e.to_string()));
            return report;
        }
    };
    let mut owner = Vec::with_capacity(dim);
    for (i, s) in d.summands.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, s.basis.len()));
    }
    let mut offending = None;
    for m in [conj.e(), conj.f(), conj.k()] {
        if let Some(pos) = m.nonzero_entries().into_iter().find(|&(i, j)| owner[i] != owner[j]) {
            offending = Some(pos);
            break;
        }
    }
    report.checks.push(crate::qalgebra::CheckOutcome {
        name: VER_BLOCKS.into(),
        passed: offending.is_none(),
        offending,
        note: None,
    });

    for (i, s) in d.summands.iter().enumerate() {
        let name = format!("summand {i} ({}) fingerprint", s.ty);
        match fingerprint(&s.rep) {
            Ok(fp) => report.push_flag(&name, fp == s.expected, None),
            Err(e) => report.push_flag(&name, false, Some(e.to_string())),
        }
        if let SummandKind::Irrep(j) = s.ty.kind {
            let name = format!("summand {i} ({}) equals the reference irrep", s.ty);
            match build_irrep(j, ctx) {
                Ok(r) => {
                    let r = twist_by(&r, s.ty.twist);
                    let same = (r.e(), r.f(), r.k()) == (s.rep.e(), s.rep.f(), s.rep.k());
                    report.push_flag(&name, same, None);
                }
                Err(e) => report.push_flag(&name, false, Some(e.to_string())),
            }
        }
    }

    let powers = ctx.order().unwrap_or(4);
    let mut traces_ok = true;
    let mut kp = Matrix::identity(ctx.field(), dim);
    let mut blocks: Vec<Matrix> = d
        .summands
        .iter()
        .map(|s| Matrix::identity(ctx.field(), s.rep.dim()))
        .collect();
    for _ in 1..=powers {
        kp = &kp * parent.k();
        let mut sum = ctx.field().zero();
        for (b, s) in blocks.iter_mut().zip(&d.summands) {
            *b = &*b * s.rep.k();
            sum = &sum + &b.trace();
        }
        traces_ok &= sum == kp.trace();
    }
    report.push_flag(VER_TRACES, traces_ok, None);

    let indec_ok = d
        .summands
        .iter()
        .filter(|s| s.ty.kind.is_indec())
        .all(|s| s.q_dim().is_zero());
    report.push_flag(VER_QDIM_INDEC, indec_ok, None);
    let irrep_ok = d.summands.iter().all(|s| match s.ty.kind {
        SummandKind::Irrep(j) => {
            let expect = q_number(j.dim() as i64, ctx);
            let sign = ctx.eps().times(s.ty.twist);
            s.q_dim() == if sign == Sign::Plus { expect.clone() } else { -&expect }
        }
        _ => true,
    });
    report.push_flag(VER_QDIM_IRREP, irrep_ok, None);
    report
}

/// Convenience for callers holding only a context.
pub fn decompose_in(rep: &Rep, ctx: &QContext) -> Result<Decomposition> {
    decompose(rep, &build_fingerprint_library(ctx)?)
}
