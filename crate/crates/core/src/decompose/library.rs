//! Summand types and the per-context library of reference modules.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::fingerprint::{fingerprint, Fingerprint};
use super::spectral::{casimir_blocks, WeightFrame};
use crate::error::{Error, Result};
use crate::qalgebra::{casimir_candidate_signed, QContext, Sign, Spin};
use crate::repbuild::{build_irrep, coproduct, twist, twist_by, Rep, RepLabel};
use crate::scalars::{Scalar, Subspace};

/// Isomorphism class of a summand up to the sign twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    Irrep(Spin),
    /// `2 n_cal`-dimensional indecomposable; variant `k` has top spin `j_max - k/2`.
    Indec {
        dim: usize,
        variant: u32,
    },
}

impl SummandKind {
    pub fn is_indec(self) -> bool {
        matches!(self, SummandKind::Indec { .. })
    }

    pub fn dim(self) -> usize {
        match self {
            SummandKind::Irrep(j) => j.dim(),
            SummandKind::Indec { dim, .. } => dim,
        }
    }

    fn sort_key(self) -> (u8, i64, u32) {
        match self {
            SummandKind::Indec { dim, variant } => (0, -(dim as i64), variant),
            SummandKind::Irrep(j) => (1, -(j.twice() as i64), 0),
        }
    }
}

/// Indecomposables first, then irreps by decreasing spin.
impl Ord for SummandKind {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SummandKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandKind::Irrep(j) => write!(f, "V({j})"),
            SummandKind::Indec { dim, variant } => write!(f, "I{dim}_{variant}"),
        }
    }
}

impl FromStr for SummandKind {
    type Err = Error;

    /// Parses `V(1/2)` or `I6_1`.
    fn from_str(s: &str) -> Result<SummandKind> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("V(").and_then(|r| r.strip_suffix(')')) {
            return Ok(SummandKind::Irrep(inner.parse()?));
        }
        if let Some(rest) = s.strip_prefix('I') {
            if let Some((d, v)) = rest.split_once('_') {
                let dim = d.parse().map_err(|_| Error::Parse(format!("bad summand `{s}`")))?;
                let variant = v.parse().map_err(|_| Error::Parse(format!("bad summand `{s}`")))?;
                return Ok(SummandKind::Indec { dim, variant });
            }
        }
        Err(Error::Parse(format!("bad summand `{s}`")))
    }
}

/// A summand type: a kind together with its twist relative to the context's
/// sign (`Minus` means tensored with the sign module).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandType {
    pub kind: SummandKind,
    pub twist: Sign,
}

impl SummandType {
    pub fn irrep(spin: Spin) -> SummandType {
        SummandType {
            kind: SummandKind::Irrep(spin),
            twist: Sign::Plus,
        }
    }

    pub fn indec(dim: usize, variant: u32) -> SummandType {
        SummandType {
            kind: SummandKind::Indec { dim, variant },
            twist: Sign::Plus,
        }
    }

    pub fn twisted(self) -> SummandType {
        SummandType {
            twist: self.twist.flip(),
            ..self
        }
    }

    pub fn dim(self) -> usize {
        self.kind.dim()
    }

    /// Spin of the irreducible top (the irrep itself for simple summands).
    pub fn top_spin(self, ctx: &QContext) -> Option<Spin> {
        match self.kind {
            SummandKind::Irrep(j) => Some(j),
            SummandKind::Indec { variant, .. } => {
                let n = ctx.n_cal()? as u32;
                (variant >= 1 && variant < n).then(|| Spin::from_twice(n - 1 - variant))
            }
        }
    }

    /// Casimir eigenvalue on this type.
    pub fn casimir(self, ctx: &QContext) -> Option<Scalar> {
        let j = self.top_spin(ctx)?;
        Some(casimir_candidate_signed(j, ctx.eps().times(self.twist), ctx))
    }

    /// Weight of the lowest vector of the top, which generates the module.
    pub fn generator_weight(self, ctx: &QContext) -> Option<Scalar> {
        let j = self.top_spin(ctx)?;
        let w = ctx.q_pow(-(j.twice() as i64));
        Some(match ctx.eps().times(self.twist) {
            Sign::Plus => w,
            Sign::Minus => -&w,
        })
    }
}

impl fmt::Display for SummandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            Sign::Plus => write!(f, "{}", self.kind),
            Sign::Minus => write!(f, "sigma*{}", self.kind),
        }
    }
}

impl FromStr for SummandType {
    type Err = Error;

    fn from_str(s: &str) -> Result<SummandType> {
        match s.trim().strip_prefix("sigma*") {
            Some(rest) => Ok(SummandType {
                kind: rest.parse()?,
                twist: Sign::Minus,
            }),
            None => Ok(SummandType {
                kind: s.parse()?,
                twist: Sign::Plus,
            }),
        }
    }
}

/// Both type names serialize as their display strings.
macro_rules! serde_via_str {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<$t, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_str!(SummandKind);
serde_via_str!(SummandType);

/// A reference module for one summand type.
#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub ty: SummandType,
    pub rep: Rep,
    pub fingerprint: Fingerprint,
}

/// Reference modules and fingerprints for every summand type of a context.
/// In generic mode only irreps exist and they are produced on demand.
#[derive(Clone, Debug)]
pub struct FingerprintLibrary {
    ctx: QContext,
    entries: Vec<LibraryEntry>,
}

fn irrep_entry(spin: Spin, twist_sign: Sign, ctx: &QContext) -> Result<LibraryEntry> {
    let rep = twist_by(&build_irrep(spin, ctx)?, twist_sign);
    Ok(LibraryEntry {
        ty: SummandType {
            kind: SummandKind::Irrep(spin),
            twist: twist_sign,
        },
        fingerprint: fingerprint(&rep)?,
        rep,
    })
}

impl FingerprintLibrary {
    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    pub fn types(&self) -> Vec<SummandType> {
        self.entries.iter().map(|e| e.ty).collect()
    }

    /// The reference entry for `ty`.
    pub fn entry(&self, ty: SummandType) -> Result<LibraryEntry> {
        if let Some(e) = self.entries.iter().find(|e| e.ty == ty) {
            return Ok(e.clone());
        }
        match ty.kind {
            SummandKind::Irrep(j) if !self.ctx.is_root() => irrep_entry(j, ty.twist, &self.ctx),
            _ => Err(Error::UnknownSummand(format!(
                "{ty} is not a summand type in {}",
                self.ctx
            ))),
        }
    }

    /// Entries whose Casimir eigenvalue is `lambda`, restricted to dimension at
    /// most `max_dim`.
    pub fn types_with_casimir(&self, lambda: &Scalar, max_dim: usize) -> Result<Vec<LibraryEntry>> {
        if self.ctx.is_root() {
            return Ok(self
                .entries
                .iter()
                .filter(|e| e.ty.dim() <= max_dim && &e.fingerprint.casimir == lambda)
                .cloned()
                .collect());
        }
        let mut out = Vec::new();
        for tj in 0..max_dim as u32 {
            for s in [Sign::Plus, Sign::Minus] {
                let spin = Spin::from_twice(tj);
                if &casimir_candidate_signed(spin, self.ctx.eps().times(s), &self.ctx) == lambda {
                    out.push(irrep_entry(spin, s, &self.ctx)?);
                }
            }
        }
        Ok(out)
    }

    /// The library type whose fingerprint equals `fp`, if any.
    pub fn identify(&self, fp: &Fingerprint) -> Option<SummandType> {
        self.entries.iter().find(|e| &e.fingerprint == fp).map(|e| e.ty)
    }
}

/// Builds the library. At a root of unity the indecomposable of variant `k`
/// is cut out of `V(j_max) ⊗ V(k/2)` as the submodule generated by a vector of
/// the expected generator weight on which the nilpotent part of the Casimir
/// does not vanish; `k = 1` is the classic `j_max ⊗ 1/2` construction.
pub fn build_fingerprint_library(ctx: &QContext) -> Result<FingerprintLibrary> {
    let Some(n_cal) = ctx.n_cal() else {
        return Ok(FingerprintLibrary {
            ctx: ctx.clone(),
            entries: Vec::new(),
        });
    };
    let mut entries = Vec::new();
    for tj in 0..n_cal as u32 {
        for s in [Sign::Plus, Sign::Minus] {
            entries.push(irrep_entry(Spin::from_twice(tj), s, ctx)?);
        }
    }
    let j_max = build_irrep(Spin::from_twice(n_cal as u32 - 1), ctx)?;
    for variant in 1..n_cal as u32 {
        let other = build_irrep(Spin::from_twice(variant), ctx)?;
        let product = coproduct(&j_max, &other)?;
        let base = SummandType::indec(2 * n_cal, variant);
        let rep = extract_indecomposable(&product, base, ctx)?;
        let reference = rep.with_label(RepLabel::Custom(base.kind.to_string()));
        let (plus, minus) = match reference_twist(&reference, base, ctx)? {
            Sign::Plus => (reference.clone(), twist(&reference)),
            Sign::Minus => (twist(&reference), reference.clone()),
        };
        for (s, r) in [(Sign::Plus, plus), (Sign::Minus, minus)] {
            let ty = SummandType { twist: s, ..base };
            entries.push(LibraryEntry {
                ty,
                fingerprint: fingerprint(&r)?,
                rep: r,
            });
        }
    }
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[..i] {
            if a.fingerprint == b.fingerprint {
                return Err(Error::BootstrapFailed(format!(
                    "{} and {} share the fingerprint {:?}",
                    a.ty, b.ty, a.fingerprint
                )));
            }
        }
    }
    Ok(FingerprintLibrary {
        ctx: ctx.clone(),
        entries,
    })
}

/// Which twist of `base` the extracted module is: its Casimir value must match
/// and its top (the image of the nilpotent part) must contain the generator
/// weight. The Casimir alone cannot decide when both twists share it.
fn reference_twist(rep: &Rep, base: SummandType, ctx: &QContext) -> Result<Sign> {
    let fp = fingerprint(rep)?;
    let image = fp.image_map();
    let matches: Vec<Sign> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .filter(|&s| {
            let ty = SummandType { twist: s, ..base };
            ty.casimir(ctx).as_ref() == Some(&fp.casimir)
                && ty.generator_weight(ctx).is_some_and(|w| image.contains_key(&w))
        })
        .collect();
    match matches[..] {
        [s] => Ok(s),
        _ => Err(Error::BootstrapFailed(format!(
            "{base}: cannot decide the twist of the reference module ({} candidates)",
            matches.len()
        ))),
    }
}

fn extract_indecomposable(product: &Rep, base: SummandType, ctx: &QContext) -> Result<Rep> {
    let frame = WeightFrame::new(product)?;
    let blocks = casimir_blocks(&frame)?;
    let mut found = Vec::new();
    for s in [Sign::Plus, Sign::Minus] {
        let ty = SummandType { twist: s, ..base };
        let (Some(lambda), Some(w)) = (ty.casimir(ctx), ty.generator_weight(ctx)) else {
            continue;
        };
        let Some(block) = blocks.iter().find(|b| b.lambda == lambda) else {
            continue;
        };
        let Some(cands) = block.spaces.get(&w) else {
            continue;
        };
        let n = frame.casimir.add_scalar(&-&lambda);
        let mut span = Subspace::new(ctx.field(), frame.dim());
        for v in cands {
            if let Some(basis) = super::try_projective(&frame.rep, &n, v, base.dim(), &mut span) {
                found.push(basis);
                break;
            }
        }
    }
    match found.len() {
        1 => super::spectral::restrict(&frame.rep, &found[0], RepLabel::Custom(base.kind.to_string())),
        k => Err(Error::BootstrapFailed(format!(
            "{base}: expected one generator in {}, found {k}",
            product.label()
        ))),
    }
}
