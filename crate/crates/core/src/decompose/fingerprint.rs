//! Basis-independent invariants of a single summand.

use std::collections::BTreeMap;

use serde::Serialize;

use super::spectral::{image_rank, weight_bases};
use crate::error::Result;
use crate::qalgebra::casimir_matrix;
use crate::repbuild::Rep;
use crate::scalars::{kernel, rank, Matrix, Scalar};

/// Invariants used to recognise a summand type. Weights are multisets of
/// `K`-eigenvalues, listed in ascending scalar order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// The unique Casimir eigenvalue `lambda`, read off as `tr C / dim`.
    pub casimir: Scalar,
    /// Rank of `n = C - lambda`.
    pub nilpotent_rank: usize,
    pub weights: Vec<(Scalar, usize)>,
    pub ker_e: usize,
    pub ker_e_ker_n: usize,
    /// Weights of `ker E`.
    pub lowest_weights: Vec<(Scalar, usize)>,
    /// Weights of `im n`.
    pub image_weights: Vec<(Scalar, usize)>,
}

impl Fingerprint {
    /// Dimension of each weight space.
    pub fn weight_map(&self) -> BTreeMap<Scalar, usize> {
        self.weights.iter().cloned().collect()
    }

    /// Rank of `n` on each weight space.
    pub fn image_map(&self) -> BTreeMap<Scalar, usize> {
        self.image_weights.iter().cloned().collect()
    }
}

pub fn fingerprint(rep: &Rep) -> Result<Fingerprint> {
    let ctx = rep.ctx();
    let field = ctx.field();
    let d = rep.dim();
    let c = casimir_matrix(rep)?;
    let lambda = c.trace().try_mul(&field.from_int(d as i64).inv()?)?;
    let n = c.add_scalar(&-&lambda);
    let e = rep.e();

    let mut weights = Vec::new();
    let mut lowest = Vec::new();
    let mut image = Vec::new();
    for (w, basis) in weight_bases(rep.k(), ctx)? {
        weights.push((w.clone(), basis.len()));
        let b = Matrix::from_columns(field, d, &basis);
        let low = kernel(&e.try_mul(&b)?).len();
        if low > 0 {
            lowest.push((w.clone(), low));
        }
        let img = image_rank(&n, &basis);
        if img > 0 {
            image.push((w, img));
        }
    }
    Ok(Fingerprint {
        dim: d,
        nilpotent_rank: rank(&n),
        ker_e: kernel(e).len(),
        ker_e_ker_n: kernel(&e.vcat(&n)?).len(),
        casimir: lambda,
        weights,
        lowest_weights: lowest,
        image_weights: image,
    })
}
