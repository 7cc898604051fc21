//! Fusion of summand types: pair tables, towers of tensor powers, ring closure
//! and Bratteli diagrams.
//!
//! A tower is computed either by the ring recursion (level `n + 1` is the sum
//! of `a ⊗ generator` over the types `a` of level `n`, each product decomposed
//! once) or by decomposing the full `n`-fold tensor product. The latter exists
//! to cross-check the former on small dimensions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::decompose::{decompose, FingerprintLibrary, SummandKind, SummandType};
use crate::error::{Error, Result};
use crate::qalgebra::{q_dimension, QContext, Spin};
use crate::repbuild::{coproduct, Rep};
use crate::scalars::Scalar;

/// Multiplicity of each summand type.
pub type TypeMultiset = BTreeMap<SummandType, usize>;

/// Default bound on the total dimension of a ring-recursion tower.
pub const RING_CAP: u64 = 4096;
/// Default bound on the total dimension of a full-matrix tower.
pub const MATRIX_CAP: u64 = 64;

/// The reference module of a type: irreps are built directly, indecomposables
/// are the stored blocks cut out of reference products.
pub fn type_rep(ty: SummandType, lib: &FingerprintLibrary) -> Result<Rep> {
    Ok(lib.entry(ty)?.rep)
}

/// Summand multiset of `a ⊗ b`.
pub fn fuse_pair(a: SummandType, b: SummandType, lib: &FingerprintLibrary) -> Result<TypeMultiset> {
    let rep = coproduct(&type_rep(a, lib)?, &type_rep(b, lib)?)?;
    Ok(decompose(&rep, lib)?.multiset())
}

/// Forgets the twist.
pub fn project_kinds(m: &TypeMultiset) -> BTreeMap<SummandKind, usize> {
    let mut out = BTreeMap::new();
    for (ty, &c) in m {
        *out.entry(ty.kind).or_insert(0) += c;
    }
    out
}

/// Total dimension of a multiset.
pub fn multiset_dim(m: &TypeMultiset) -> u64 {
    m.iter().map(|(ty, &c)| (ty.dim() * c) as u64).sum()
}

/// Total q-dimension of a multiset, from the reference modules.
pub fn multiset_q_dim(m: &TypeMultiset, lib: &FingerprintLibrary) -> Result<Scalar> {
    let mut acc = lib.ctx().field().zero();
    for (&ty, &c) in m {
        let qd = q_dimension(type_rep(ty, lib)?.k());
        acc = acc.try_add(&qd.scale(&crate::scalars::Rational::from_int(c as i64)))?;
    }
    Ok(acc)
}

fn add_scaled(target: &mut TypeMultiset, src: &TypeMultiset, factor: usize) {
    for (&ty, &c) in src {
        *target.entry(ty).or_insert(0) += c * factor;
    }
}

/// Memoized `a ⊗ b` decompositions.
#[derive(Clone, Debug, Default)]
pub struct PairTable {
    entries: BTreeMap<(SummandType, SummandType), TypeMultiset>,
}

impl PairTable {
    pub fn new() -> PairTable {
        PairTable::default()
    }

    pub fn get(&self, a: SummandType, b: SummandType) -> Option<&TypeMultiset> {
        self.entries.get(&(a, b))
    }

    /// `a ⊗ b`, decomposed on first use.
    pub fn fuse(&mut self, a: SummandType, b: SummandType, lib: &FingerprintLibrary) -> Result<TypeMultiset> {
        if let Some(m) = self.entries.get(&(a, b)) {
            return Ok(m.clone());
        }
        let m = fuse_pair(a, b, lib)?;
        self.entries.insert((a, b), m.clone());
        Ok(m)
    }

    pub fn entries(&self) -> &BTreeMap<(SummandType, SummandType), TypeMultiset> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every type occurring as a factor or a summand.
    pub fn types(&self) -> BTreeSet<SummandType> {
        let mut out = BTreeSet::new();
        for ((a, b), m) in &self.entries {
            out.insert(*a);
            out.insert(*b);
            out.extend(m.keys().copied());
        }
        out
    }

    /// Pairs computed in both orders whose products differ.
    pub fn commutativity_failures(&self) -> Vec<(SummandType, SummandType)> {
        self.entries
            .iter()
            .filter(|((a, b), m)| a < b && self.entries.get(&(*b, *a)).is_some_and(|n| n != *m))
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_failures().is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerMode {
    /// Level by level from the pair table.
    Ring,
    /// Decompose the full tensor power at every level.
    FullMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TowerOptions {
    pub mode: TowerMode,
    /// Bound on the dimension of the deepest tensor power.
    pub cap: u64,
}

impl TowerOptions {
    pub fn ring() -> TowerOptions {
        TowerOptions {
            mode: TowerMode::Ring,
            cap: RING_CAP,
        }
    }

    pub fn full_matrix() -> TowerOptions {
        TowerOptions {
            mode: TowerMode::FullMatrix,
            cap: MATRIX_CAP,
        }
    }

    pub fn with_cap(self, cap: u64) -> TowerOptions {
        TowerOptions { cap, ..self }
    }
}

/// Multiplicities of the summands of the tensor powers of one generator.
#[derive(Clone, Debug)]
pub struct FusionTable {
    pub ctx: QContext,
    pub generator: SummandType,
    /// `levels[n - 1]` decomposes the `n`-fold product.
    pub levels: Vec<TypeMultiset>,
    /// `a ⊗ generator` for every type `a` occurring in the levels.
    pub branching: BTreeMap<SummandType, TypeMultiset>,
    /// Whether the types of all levels are closed under `⊗ generator`.
    pub closed: bool,
}

impl FusionTable {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `n` (1-based).
    pub fn level(&self, n: usize) -> &TypeMultiset {
        &self.levels[n - 1]
    }

    /// Levels with the twist forgotten.
    pub fn kinds(&self) -> Vec<BTreeMap<SummandKind, usize>> {
        self.levels.iter().map(project_kinds).collect()
    }

    /// Every type occurring in some level.
    pub fn types(&self) -> BTreeSet<SummandType> {
        self.levels.iter().flat_map(|l| l.keys().copied()).collect()
    }

    /// Levels whose total dimension differs from `dim(generator)^n`.
    pub fn dimension_failures(&self) -> Vec<usize> {
        let g = self.generator.dim() as u64;
        (1..=self.depth())
            .filter(|&n| multiset_dim(self.level(n)) != g.pow(n as u32))
            .collect()
    }
}

fn check_cap(generator: SummandType, depth: usize, cap: u64) -> Result<()> {
    let dim = (generator.dim() as u64).checked_pow(depth as u32).unwrap_or(u64::MAX);
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    Ok(())
}

/// Tower of `depth` levels by the ring recursion with the default cap.
pub fn fusion_tower(generator: SummandType, depth: usize, lib: &FingerprintLibrary) -> Result<FusionTable> {
    fusion_tower_with(generator, depth, lib, &mut PairTable::new(), TowerOptions::ring())
}

/// Tower of `depth` levels. Fails with `CapExceeded` when the `depth`-fold
/// product is larger than `opts.cap`.
pub fn fusion_tower_with(
    generator: SummandType,
    depth: usize,
    lib: &FingerprintLibrary,
    pairs: &mut PairTable,
    opts: TowerOptions,
) -> Result<FusionTable> {
    if depth == 0 {
        return Err(Error::EmptyProduct);
    }
    check_cap(generator, depth, opts.cap)?;
    let mut levels = vec![TypeMultiset::from([(generator, 1)])];
    match opts.mode {
        TowerMode::Ring => {
            for _ in 1..depth {
                let mut next = TypeMultiset::new();
                for (&a, &c) in levels.last().expect("nonempty") {
                    add_scaled(&mut next, &pairs.fuse(a, generator, lib)?, c);
                }
                levels.push(next);
            }
        }
        TowerMode::FullMatrix => {
            let g = type_rep(generator, lib)?;
            let mut power = g.clone();
            for _ in 1..depth {
                power = coproduct(&power, &g)?;
                levels.push(decompose(&power, lib)?.multiset());
            }
        }
    }
    let mut branching = BTreeMap::new();
    let seen: BTreeSet<SummandType> = levels.iter().flat_map(|l| l.keys().copied()).collect();
    let mut closed = true;
    for &a in &seen {
        let m = pairs.fuse(a, generator, lib)?;
        closed &= m.keys().all(|t| seen.contains(t));
        branching.insert(a, m);
    }
    Ok(FusionTable {
        ctx: lib.ctx().clone(),
        generator,
        levels,
        branching,
        closed,
    })
}

/// Decomposition of `factors[0] ⊗ factors[1] ⊗ ...` by the ring recursion.
pub fn fuse_sequence(factors: &[SummandType], lib: &FingerprintLibrary, pairs: &mut PairTable) -> Result<TypeMultiset> {
    let (&first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    let mut acc = TypeMultiset::from([(first, 1)]);
    for &b in rest {
        let mut next = TypeMultiset::new();
        for (&a, &c) in &acc {
            add_scaled(&mut next, &pairs.fuse(a, b, lib)?, c);
        }
        acc = next;
    }
    Ok(acc)
}

/// Decomposition of the full tensor product of the reference modules.
pub fn fuse_sequence_full(factors: &[SummandType], lib: &FingerprintLibrary, cap: u64) -> Result<TypeMultiset> {
    let dim: u64 = factors.iter().map(|t| t.dim() as u64).product();
    if factors.is_empty() {
        return Err(Error::EmptyProduct);
    }
    if dim > cap {
        return Err(Error::CapExceeded { dim, cap });
    }
    let mut rep = type_rep(factors[0], lib)?;
    for &b in &factors[1..] {
        rep = coproduct(&rep, &type_rep(b, lib)?)?;
    }
    Ok(decompose(&rep, lib)?.multiset())
}

/// One bundle of parallel links between consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliEdge<T> {
    /// Level of the source node (1-based).
    pub level: usize,
    pub from: T,
    pub to: T,
    pub multiplicity: usize,
}

/// Layered multigraph of a tower: nodes carry their path counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliDiagram<T: Ord> {
    pub layers: Vec<BTreeMap<T, usize>>,
    pub edges: Vec<BratteliEdge<T>>,
}

impl<T: Ord + Clone> BratteliDiagram<T> {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Node set of level `n` (1-based).
    pub fn nodes(&self, n: usize) -> Vec<T> {
        self.layers[n - 1].keys().cloned().collect()
    }

    /// Number of parallel links from `from` at level `n` to `to` at `n + 1`.
    pub fn edge(&self, n: usize, from: &T, to: &T) -> usize {
        self.edges
            .iter()
            .find(|e| e.level == n && &e.from == from && &e.to == to)
            .map_or(0, |e| e.multiplicity)
    }

    /// Levels `n + 1` whose path counts differ from
    /// `Σ_s paths(s, n) · edge(s → t)`.
    pub fn path_count_failures(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for n in 1..self.depth() {
            let mut expect: BTreeMap<T, usize> = BTreeMap::new();
            for e in self.edges.iter().filter(|e| e.level == n) {
                let paths = self.layers[n - 1].get(&e.from).copied().unwrap_or(0);
                *expect.entry(e.to.clone()).or_insert(0) += paths * e.multiplicity;
            }
            expect.retain(|_, c| *c > 0);
            if expect != self.layers[n] {
                bad.push(n + 1);
            }
        }
        bad
    }

    pub fn is_consistent(&self) -> bool {
        self.path_count_failures().is_empty()
    }
}

impl<T: Ord + Clone + fmt::Display> BratteliDiagram<T> {
    /// Graphviz rendering: one rank per level, parallel links collapsed to a
    /// single edge labelled `×r`.
    pub fn to_dot(&self, title: &str) -> String {
        let node = |n: usize, t: &T| format!("\"{n}:{t}\"");
        let mut out = format!("digraph bratteli {{\n  label=\"{title}\";\n  rankdir=TB;\n  node [shape=plaintext];\n");
        for (i, layer) in self.layers.iter().enumerate() {
            let n = i + 1;
            out.push_str(&format!("  {{ rank=same; \"n={n}\" [shape=none];"));
            for (t, paths) in layer {
                out.push_str(&format!(" {} [label=\"{t}\", tooltip=\"{paths} paths\"];", node(n, t)));
            }
            out.push_str(" }\n");
        }
        for n in 1..self.depth() {
            out.push_str(&format!("  \"n={n}\" -> \"n={}\" [style=invis];\n", n + 1));
        }
        for e in &self.edges {
            let label = if e.multiplicity > 1 {
                format!(" [label=\"×{}\", penwidth=2]", e.multiplicity)
            } else {
                String::new()
            };
            out.push_str(&format!(
                "  {} -> {}{label};\n",
                node(e.level, &e.from),
                node(e.level + 1, &e.to)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// The Bratteli diagram of a tower: layers are its levels and the links out of
/// a node are the summands of `node ⊗ generator`.
pub fn bratteli(table: &FusionTable) -> BratteliDiagram<SummandType> {
    let mut edges = Vec::new();
    for (i, layer) in table.levels.iter().enumerate().take(table.depth().saturating_sub(1)) {
        for from in layer.keys() {
            for (to, &m) in &table.branching[from] {
                edges.push(BratteliEdge {
                    level: i + 1,
                    from: *from,
                    to: *to,
                    multiplicity: m,
                });
            }
        }
    }
    BratteliDiagram {
        layers: table.levels.clone(),
        edges,
    }
}

impl BratteliDiagram<SummandType> {
    /// The diagram with twisted copies identified. Fails when two copies of a
    /// kind at one level branch differently.
    pub fn up_to_twist(&self) -> Result<BratteliDiagram<SummandKind>> {
        let layers: Vec<_> = self.layers.iter().map(project_kinds).collect();
        let mut edges: Vec<BratteliEdge<SummandKind>> = Vec::new();
        for n in 1..self.depth() {
            // branching of each source type, projected
            let mut per_source: BTreeMap<SummandType, BTreeMap<SummandKind, usize>> = BTreeMap::new();
            for e in self.edges.iter().filter(|e| e.level == n) {
                *per_source.entry(e.from).or_default().entry(e.to.kind).or_insert(0) += e.multiplicity;
            }
            let mut per_kind: BTreeMap<SummandKind, BTreeMap<SummandKind, usize>> = BTreeMap::new();
            for (from, targets) in per_source {
                match per_kind.get(&from.kind) {
                    Some(existing) if *existing != targets => {
                        return Err(Error::NotApplicable(format!(
                            "twisted copies of {} branch differently at level {n}",
                            from.kind
                        )))
                    }
                    Some(_) => {}
                    None => {
                        per_kind.insert(from.kind, targets);
                    }
                }
            }
            for (from, targets) in per_kind {
                for (to, multiplicity) in targets {
                    edges.push(BratteliEdge {
                        level: n,
                        from,
                        to,
                        multiplicity,
                    });
                }
            }
        }
        Ok(BratteliDiagram { layers, edges })
    }
}

/// Outcome of closing a set of types under pairwise fusion.
#[derive(Clone, Debug)]
pub struct RingClosure {
    pub closed: bool,
    pub types: BTreeSet<SummandType>,
    pub pairs: PairTable,
}

impl RingClosure {
    pub fn kinds(&self) -> BTreeSet<SummandKind> {
        self.types.iter().map(|t| t.kind).collect()
    }
}

/// Starting from the untwisted simple modules (spins 0 and 1/2 in generic
/// mode), repeatedly adds every summand of every pairwise product, for at most
/// `depth` rounds. At a root of unity the set is closed when a round adds
/// nothing; in generic mode the spins grow without bound and the set counts as
/// closed when no indecomposable ever appears.
pub fn check_ring_closure(lib: &FingerprintLibrary, depth: usize) -> Result<RingClosure> {
    let ctx = lib.ctx();
    let start: Vec<SummandType> = match ctx.n_cal() {
        Some(n) => (0..n as u32).map(|t| SummandType::irrep(Spin::from_twice(t))).collect(),
        None => vec![SummandType::irrep(Spin::ZERO), SummandType::irrep(Spin::HALF)],
    };
    let mut types: BTreeSet<SummandType> = start.into_iter().collect();
    let mut pairs = PairTable::new();
    let mut stable = false;
    for _ in 0..depth {
        let current: Vec<SummandType> = types.iter().copied().collect();
        let mut added = false;
        for &a in &current {
            for &b in &current {
                for t in pairs.fuse(a, b, lib)?.into_keys() {
                    added |= types.insert(t);
                }
            }
        }
        if !added {
            stable = true;
            break;
        }
    }
    let closed = if ctx.is_root() {
        stable
    } else {
        types.iter().all(|t| !t.kind.is_indec())
    };
    Ok(RingClosure { closed, types, pairs })
}

/// `V(j_max) ⊗ V(1)` at a root of unity with `n_cal ≥ 3`.
pub fn jmax_tensor_one(lib: &FingerprintLibrary) -> Result<TypeMultiset> {
    let ctx = lib.ctx();
    let j_max = ctx
        .j_max()
        .ok_or_else(|| Error::NotApplicable("j_max exists only at roots of unity".into()))?;
    if ctx.n_cal().unwrap_or(0) < 3 {
        return Err(Error::NotApplicable("spin 1 needs n_cal >= 3".into()));
    }
    fuse_pair(SummandType::irrep(j_max), SummandType::irrep(Spin::ONE), lib)
}
