//! Serializable summaries of modules, decompositions and fusion tables, and the
//! invariant suites run by `slq check`. Scalars are written as exact strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decompose::{
    build_fingerprint_library, decompose, verify_decomposition, Decomposition, SummandKind, SummandType,
};
use crate::error::{Error, Result};
use crate::fusion::{multiset_dim, project_kinds, FusionTable, TowerMode};
use crate::qalgebra::{
    casimir_matrix, check_algebra, check_center_constraints, make_context, AlgebraReport, Mode, QContext, Spin,
};
use crate::repbuild::{build_irrep, check_coassociativity, tensor_spins, Rep};
use crate::scalars::{Matrix, Rational, Scalar};

/// Enough data to rebuild a context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextInfo {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_cal: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q0: Option<String>,
    pub eps: String,
    pub field: String,
}

impl ContextInfo {
    pub fn new(ctx: &QContext) -> ContextInfo {
        ContextInfo {
            mode: ctx.mode().to_string(),
            n: ctx.order(),
            n_cal: ctx.n_cal(),
            q0: ctx.q0().map(ToString::to_string),
            eps: ctx.eps().to_string(),
            field: ctx.field().to_string(),
        }
    }

    pub fn to_context(&self) -> Result<QContext> {
        let mode = match self.mode.as_str() {
            "generic" => Mode::Generic,
            "root" => Mode::Root,
            other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        let q0 = self.q0.as_deref().map(Rational::from_str).transpose()?;
        make_context(mode, self.n, q0, self.eps.parse()?)
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

/// The generators and the Casimir of a module.
#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub context: ContextInfo,
    pub label: String,
    pub dim: usize,
    pub e: Vec<Vec<String>>,
    pub f: Vec<Vec<String>>,
    pub k: Vec<Vec<String>>,
    pub casimir: Vec<Vec<String>>,
}

impl RepReport {
    pub fn new(rep: &Rep) -> Result<RepReport> {
        Ok(RepReport {
            context: ContextInfo::new(rep.ctx()),
            label: rep.label().to_string(),
            dim: rep.dim(),
            e: matrix_strings(rep.e()),
            f: matrix_strings(rep.f()),
            k: matrix_strings(rep.k()),
            casimir: matrix_strings(&casimir_matrix(rep)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    #[serde(rename = "type")]
    pub ty: SummandType,
    pub kind: SummandKind,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<u32>,
    pub twist: String,
    pub casimir: String,
    pub q_dim: String,
    /// Basis vectors in the coordinates of the product basis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<Vec<String>>>,
}

/// A decomposition of a product of irreps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub context: ContextInfo,
    pub spins: Vec<Spin>,
    pub dim: usize,
    pub summands: Vec<SummandReport>,
    pub verified: bool,
    pub used_fallback: bool,
    pub seed: u64,
}

impl DecompositionReport {
    pub fn new(spins: &[Spin], d: &Decomposition, with_basis: bool) -> DecompositionReport {
        let summands = d
            .summands
            .iter()
            .map(|s| SummandReport {
                ty: s.ty,
                kind: s.ty.kind,
                dim: s.ty.dim(),
                variant: match s.ty.kind {
                    SummandKind::Indec { variant, .. } => Some(variant),
                    SummandKind::Irrep(_) => None,
                },
                twist: s.ty.twist.to_string(),
                casimir: s.casimir().to_string(),
                q_dim: s.q_dim().to_string(),
                basis: with_basis.then(|| {
                    s.basis
                        .iter()
                        .map(|v| v.iter().map(ToString::to_string).collect())
                        .collect()
                }),
            })
            .collect();
        DecompositionReport {
            context: ContextInfo::new(d.parent.ctx()),
            spins: spins.to_vec(),
            dim: d.parent.dim(),
            summands,
            verified: verify_decomposition(d).passed(),
            used_fallback: d.used_fallback,
            seed: d.seed,
        }
    }

    /// Rebuilds the decomposition from the serialized bases (which must be
    /// present); the result can be handed to `verify_decomposition`.
    pub fn rebuild(&self) -> Result<Decomposition> {
        let ctx = self.context.to_context()?;
        let lib = build_fingerprint_library(&ctx)?;
        let parent = tensor_spins(&self.spins, &ctx)?;
        let field = ctx.field();
        let mut parts = Vec::new();
        for s in &self.summands {
            let basis = s
                .basis
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("summand {} has no basis", s.ty)))?;
            let vs = basis
                .iter()
                .map(|v| v.iter().map(|x| field.parse(x)).collect::<Result<Vec<Scalar>>>())
                .collect::<Result<Vec<_>>>()?;
            parts.push((s.ty, vs));
        }
        Decomposition::from_parts(&parent, parts, &lib, self.seed)
    }
}

/// Decomposes the product of irreps with the given spins.
pub fn decompose_spins(spins: &[Spin], ctx: &QContext, seed: u64, cap: usize) -> Result<Decomposition> {
    let dim: u64 = spins.iter().map(|s| s.dim() as u64).product();
    if dim > cap as u64 {
        return Err(Error::CapExceeded { dim, cap: cap as u64 });
    }
    let lib = build_fingerprint_library(ctx)?;
    let rep = tensor_spins(spins, ctx)?;
    crate::decompose::decompose_seeded(&rep, &lib, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub dim: u64,
    pub summands: BTreeMap<SummandType, usize>,
    pub kinds: BTreeMap<SummandKind, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub context: ContextInfo,
    pub generator: SummandType,
    pub mode: String,
    pub levels: Vec<LevelReport>,
    pub branching: BTreeMap<SummandType, BTreeMap<SummandType, usize>>,
    pub closed: bool,
}

impl FusionReport {
    pub fn new(table: &FusionTable, mode: TowerMode) -> FusionReport {
        FusionReport {
            context: ContextInfo::new(&table.ctx),
            generator: table.generator,
            mode: match mode {
                TowerMode::Ring => "ring".into(),
                TowerMode::FullMatrix => "full-matrix".into(),
            },
            levels: table
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| LevelReport {
                    level: i + 1,
                    dim: multiset_dim(l),
                    summands: l.clone(),
                    kinds: project_kinds(l),
                })
                .collect(),
            branching: table.branching.clone(),
            closed: table.closed,
        }
    }
}

/// Which invariants `run_suite` checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Center,
    Coassociativity,
    Decomposition,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "center" => Suite::Center,
            "coassoc" | "coassociativity" => Suite::Coassociativity,
            "decompose" | "decomposition" => Suite::Decomposition,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

/// Largest irrep dimension used in generic mode, where spins are unbounded.
pub const GENERIC_MAX_IRREP_DIM: usize = 5;

/// The irreps a suite runs over: every allowed spin at a root of unity,
/// dimensions up to [`GENERIC_MAX_IRREP_DIM`] otherwise.
pub fn suite_spins(ctx: &QContext) -> Vec<Spin> {
    let bound = ctx.n_cal().unwrap_or(GENERIC_MAX_IRREP_DIM);
    (0..bound as u32).map(Spin::from_twice).collect()
}

/// Non-decreasing lists of at least two non-trivial spins drawn from `spins`
/// whose product has dimension at most `cap`.
pub fn product_spin_lists(spins: &[Spin], cap: usize) -> Vec<Vec<Spin>> {
    let mut factors: Vec<Spin> = spins.iter().copied().filter(|s| s.dim() > 1).collect();
    factors.sort();
    factors.dedup();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Spin>, usize, usize)> = vec![(Vec::new(), 0, 1)];
    while let Some((list, from, dim)) = stack.pop() {
        if list.len() >= 2 {
            out.push(list.clone());
        }
        for (i, &s) in factors.iter().enumerate().skip(from) {
            if dim * s.dim() <= cap {
                let mut next = list.clone();
                next.push(s);
                stack.push((next, i, dim * s.dim()));
            }
        }
    }
    out.sort();
    out
}

fn spin_list_name(spins: &[Spin]) -> String {
    spins.iter().map(|s| format!("V({s})")).collect::<Vec<_>>().join("x")
}

fn prefixed(target: &str, r: AlgebraReport) -> AlgebraReport {
    AlgebraReport {
        checks: r
            .checks
            .into_iter()
            .map(|mut c| {
                c.name = format!("{target}: {}", c.name);
                c
            })
            .collect(),
    }
}

/// Runs the chosen invariants on every irrep of `spins` (all suite spins when
/// empty) and on every product of them up to dimension `cap`.
pub fn run_suite(ctx: &QContext, suite: Suite, spins: &[Spin], cap: usize) -> Result<AlgebraReport> {
    let spins = if spins.is_empty() {
        suite_spins(ctx)
    } else {
        spins.to_vec()
    };
    let mut targets: Vec<(String, Rep)> = Vec::new();
    for &s in &spins {
        targets.push((format!("V({s})"), build_irrep(s, ctx)?));
    }
    let products = product_spin_lists(&spins, cap);
    for list in &products {
        targets.push((spin_list_name(list), tensor_spins(list, ctx)?));
    }
    let mut report = AlgebraReport::default();
    for (name, rep) in &targets {
        if suite.includes(Suite::Algebra) {
            report.extend(prefixed(name, check_algebra(rep)));
        }
        if suite.includes(Suite::Center) && ctx.is_root() {
            report.extend(prefixed(name, check_center_constraints(rep)?.report));
        }
    }
    if suite.includes(Suite::Coassociativity) {
        let irreps: Vec<(Spin, Rep)> = spins
            .iter()
            .filter(|s| s.dim() > 1)
            .map(|&s| Ok((s, build_irrep(s, ctx)?)))
            .collect::<Result<_>>()?;
        for (a, ra) in &irreps {
            for (b, rb) in &irreps {
                for (c, rc) in &irreps {
                    if a.dim() * b.dim() * c.dim() <= cap {
                        let name = spin_list_name(&[*a, *b, *c]);
                        report.extend(prefixed(&name, check_coassociativity(ra, rb, rc)?));
                    }
                }
            }
        }
    }
    if suite.includes(Suite::Decomposition) {
        let lib = build_fingerprint_library(ctx)?;
        for list in &products {
            let d = decompose(&tensor_spins(list, ctx)?, &lib)?;
            report.extend(prefixed(&spin_list_name(list), verify_decomposition(&d)));
        }
    }
    Ok(report)
}
