//! Explicit vertex maps between graphs: the covering `B_{n,k} → K_{n,k}`, the
//! complement automorphism `κ`, automorphisms induced by permutations of the
//! ground set, the isomorphisms between components of color-deleted graphs,
//! and circuit lifting through double covers.
//!
//! Every constructor computes its images from a formula and then runs the
//! matching verifier, recording the outcome in [`VertexMap::status`].

use std::collections::HashSet;
use std::sync::Arc;

use crate::decompose::{ColorDeletion, ColorSet};
use crate::error::{param, Error, Result};
use crate::graphs::{FamilyId, LabelKind, LabeledGraph};
use crate::hamilton::PathSeq;
use crate::setcore::{apply_perm, Block, GroundSize, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Morphism,
    /// An injective morphism.
    Embedding,
    Isomorphism,
    Covering,
    Automorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verification {
    Unchecked,
    Pass,
    Fail,
}

/// A function `V(source) → V(target)`, stored by vertex index.
#[derive(Clone, Debug)]
pub struct VertexMap {
    source: Arc<LabeledGraph>,
    target: Arc<LabeledGraph>,
    images: Vec<Option<usize>>,
    kind: MapKind,
    status: Verification,
}

impl VertexMap {
    pub fn new(
        source: Arc<LabeledGraph>,
        target: Arc<LabeledGraph>,
        images: Vec<Option<usize>>,
        kind: MapKind,
    ) -> Result<VertexMap> {
        if images.len() != source.vertex_count() {
            return param(format!(
                "map has {} images for {} source vertices",
                images.len(),
                source.vertex_count()
            ));
        }
        if let Some(bad) = images
            .iter()
            .flatten()
            .find(|&&j| j >= target.vertex_count())
        {
            return param(format!("image index {bad} is not a target vertex"));
        }
        Ok(VertexMap {
            source,
            target,
            images,
            kind,
            status: Verification::Unchecked,
        })
    }

    /// Builds the map from a formula on blocks. Blocks the formula sends
    /// outside the target are left without an image.
    pub fn from_block_fn(
        source: Arc<LabeledGraph>,
        target: Arc<LabeledGraph>,
        kind: MapKind,
        f: impl Fn(Block) -> Option<Block>,
    ) -> VertexMap {
        let images = source
            .vertices()
            .iter()
            .map(|&b| f(b).and_then(|img| target.index_of(img)))
            .collect();
        VertexMap {
            source,
            target,
            images,
            kind,
            status: Verification::Unchecked,
        }
    }

    pub fn source(&self) -> &Arc<LabeledGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LabeledGraph> {
        &self.target
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn status(&self) -> Verification {
        self.status
    }

    pub fn image(&self, i: usize) -> Option<usize> {
        self.images.get(i).copied().flatten()
    }

    pub fn map_block(&self, b: Block) -> Option<Block> {
        let i = self.source.index_of(b)?;
        self.image(i).map(|j| self.target.vertex(j))
    }

    /// Runs the verifier for this map's kind and records the outcome.
    pub fn verify(&mut self) -> bool {
        let ok = match self.kind {
            MapKind::Morphism => is_morphism(self).unwrap_or(false),
            MapKind::Embedding => is_morphism(self).unwrap_or(false) && is_injective(&self.images),
            MapKind::Isomorphism => is_isomorphism(self).unwrap_or(false),
            MapKind::Automorphism => {
                self.source == self.target && is_isomorphism(self).unwrap_or(false)
            }
            MapKind::Covering => verify_cover(self).passed,
        };
        self.status = if ok {
            Verification::Pass
        } else {
            Verification::Fail
        };
        ok
    }

    pub fn verified(mut self) -> VertexMap {
        self.verify();
        self
    }

    /// `next ∘ self`. The target of `self` must equal the source of `next`.
    /// The result is unchecked.
    pub fn then(&self, next: &VertexMap) -> Result<VertexMap> {
        if *self.target != *next.source {
            return param("composition of maps whose graphs do not match");
        }
        let images = self
            .images
            .iter()
            .map(|i| i.and_then(|i| next.image(i)))
            .collect();
        let kind = match (self.kind, next.kind) {
            (
                MapKind::Isomorphism | MapKind::Automorphism,
                MapKind::Isomorphism | MapKind::Automorphism,
            ) => MapKind::Isomorphism,
            (
                MapKind::Isomorphism | MapKind::Automorphism | MapKind::Embedding,
                MapKind::Embedding,
            ) => MapKind::Embedding,
            _ => MapKind::Morphism,
        };
        VertexMap::new(self.source.clone(), next.target.clone(), images, kind)
    }

    /// The inverse of a bijective map. The result is unchecked.
    pub fn inverse(&self) -> Result<VertexMap> {
        let mut inv = vec![None; self.target.vertex_count()];
        for (i, img) in self.images.iter().enumerate() {
            let j = img.ok_or(Error::NotTotal(i))?;
            if inv[j].replace(i).is_some() {
                return param("map is not injective");
            }
        }
        if inv.iter().any(Option::is_none) {
            return param("map is not surjective");
        }
        VertexMap::new(self.target.clone(), self.source.clone(), inv, self.kind)
    }
}

fn total(images: &[Option<usize>]) -> Result<Vec<usize>> {
    images
        .iter()
        .enumerate()
        .map(|(i, img)| img.ok_or(Error::NotTotal(i)))
        .collect()
}

fn is_injective(images: &[Option<usize>]) -> bool {
    let mut seen = HashSet::new();
    images.iter().all(|img| img.is_some_and(|j| seen.insert(j)))
}

/// Every edge of the source maps to an edge of the target.
pub fn is_morphism(m: &VertexMap) -> Result<bool> {
    let img = total(&m.images)?;
    Ok(m.source
        .edges()
        .all(|(u, v, _)| m.target.adjacent(img[u], img[v])))
}

/// Bijective, adjacency-preserving, with an adjacency-preserving inverse.
pub fn is_isomorphism(m: &VertexMap) -> Result<bool> {
    let img = total(&m.images)?;
    if m.source.vertex_count() != m.target.vertex_count() || !is_injective(&m.images) {
        return Ok(false);
    }
    if !m
        .source
        .edges()
        .all(|(u, v, _)| m.target.adjacent(img[u], img[v]))
    {
        return Ok(false);
    }
    let mut inv = vec![0; img.len()];
    for (i, &j) in img.iter().enumerate() {
        inv[j] = i;
    }
    Ok(m.target
        .edges()
        .all(|(u, v, _)| m.source.adjacent(inv[u], inv[v])))
}

/// Outcome of checking a covering map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// Common fiber size, when every fiber has the same positive size.
    pub fiber_size: Option<usize>,
    pub morphism: bool,
    pub locally_bijective: bool,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Checks constant fiber size, the morphism property, and that each vertex's
/// incident edges map bijectively onto those of its image.
pub fn verify_cover(m: &VertexMap) -> CoverReport {
    let mut report = CoverReport {
        fiber_size: None,
        morphism: false,
        locally_bijective: false,
        passed: false,
        failure: None,
    };
    let img = match total(&m.images) {
        Ok(img) => img,
        Err(e) => {
            report.failure = Some(e.to_string());
            return report;
        }
    };
    let mut fibers = vec![0usize; m.target.vertex_count()];
    for &j in &img {
        fibers[j] += 1;
    }
    let f0 = fibers.first().copied().unwrap_or(0);
    if f0 > 0 && fibers.iter().all(|&f| f == f0) {
        report.fiber_size = Some(f0);
    } else {
        report.failure = Some("fiber sizes are not constant and positive".into());
    }
    report.morphism = m
        .source
        .edges()
        .all(|(u, v, _)| m.target.adjacent(img[u], img[v]));
    if !report.morphism && report.failure.is_none() {
        report.failure = Some("an edge does not map to an edge".into());
    }
    report.locally_bijective = (0..m.source.vertex_count()).all(|x| {
        let mut mapped: Vec<usize> = m
            .source
            .neighbors(x)
            .iter()
            .map(|nb| img[nb.index])
            .collect();
        mapped.sort_unstable();
        let want: Vec<usize> = m
            .target
            .neighbors(img[x])
            .iter()
            .map(|nb| nb.index)
            .collect();
        mapped == want
    });
    if !report.locally_bijective && report.failure.is_none() {
        report.failure = Some("some vertex's edges do not map bijectively".into());
    }
    report.passed = report.fiber_size.is_some() && report.morphism && report.locally_bijective;
    report
}

/// The 2-to-1 map `B_{n,k} → K_{n,k}` sending `v` to itself when `|v| = k`
/// and to `[n] − v` otherwise.
pub fn cover_map(n: usize, k: usize) -> Result<VertexMap> {
    if 2 * k == n {
        return Err(Error::Degenerate(format!(
            "k = n - k = {k}: the two sides coincide"
        )));
    }
    if 2 * k > n {
        return param(format!("cover map needs k < n/2, got n={n} k={k}"));
    }
    let source = Arc::new(LabeledGraph::build(FamilyId::BipartiteKneser { n, k })?);
    let target = Arc::new(LabeledGraph::build(FamilyId::Kneser { n, k })?);
    let map = VertexMap::from_block_fn(source, target, MapKind::Covering, |v| {
        Some(if v.len() == k { v } else { v.complement() })
    });
    Ok(map.verified())
}

/// `κ(v) = [2n − 1] − v` on `B_n`.
pub fn kappa(n: usize) -> Result<VertexMap> {
    let g = Arc::new(LabeledGraph::build(FamilyId::MiddleLevels(n))?);
    Ok(
        VertexMap::from_block_fn(g.clone(), g, MapKind::Automorphism, |v| {
            Some(v.complement())
        })
        .verified(),
    )
}

/// The automorphism `v ↦ p(v)` of a graph whose adjacency is invariant under
/// the symmetric group of the ground set.
pub fn perm_automorphism(g: Arc<LabeledGraph>, p: &Perm) -> Result<VertexMap> {
    if p.ground() != g.ground() {
        return param(format!(
            "permutation on [{}] for a graph over {}",
            p.ground().get(),
            g.ground()
        ));
    }
    Ok(
        VertexMap::from_block_fn(g.clone(), g, MapKind::Automorphism, |v| {
            Some(apply_perm(p, v))
        })
        .verified(),
    )
}

/// The permutation `(s_1, t_1)...(s_r, t_r)` pairing the sorted elements of
/// `S − T` with those of `T − S`; it carries `S` onto `T`.
pub fn color_swap_perm(s: Block, t: Block) -> Result<Perm> {
    if s.len() != t.len() || s.ground() != t.ground() {
        return param(format!("color sets {s} and {t} differ in size"));
    }
    Perm::swap_pairs(
        s.ground(),
        &s.difference(t).elements(),
        &t.difference(s).elements(),
    )
}

/// The isomorphism `O_n(S) → O_n(T)` induced by [`color_swap_perm`].
pub fn color_swap_iso(n: usize, s: ColorSet, t: ColorSet) -> Result<VertexMap> {
    let p = color_swap_perm(s.block(), t.block())?;
    let source = Arc::new(ColorDeletion::odd(n, s)?.graph);
    let target = Arc::new(ColorDeletion::odd(n, t)?.graph);
    Ok(
        VertexMap::from_block_fn(source, target, MapKind::Isomorphism, |v| {
            Some(apply_perm(&p, v))
        })
        .verified(),
    )
}

fn canonical_block_component(n: usize, k: usize, t: Block) -> Result<Arc<LabeledGraph>> {
    let cd = ColorDeletion::odd(n, ColorSet::canonical(n, k)?)?;
    Ok(Arc::new(cd.block_component(t)?))
}

/// Isomorphism between the block components for `T1` and `T2` of `O_n(k)`
/// induced by a permutation fixing `S` setwise, sending `T1` onto `T2` and
/// fixing every element outside `S`.
pub fn biregular_internal_iso(n: usize, k: usize, t1: Block, t2: Block) -> Result<VertexMap> {
    let s = ColorSet::canonical(n, k)?.block();
    if t1.ground() != s.ground()
        || t2.ground() != s.ground()
        || !t1.is_subset(s)
        || !t2.is_subset(s)
    {
        return param(format!("{t1} and {t2} must be subsets of {s}"));
    }
    if t1.len() != t2.len() {
        return param(format!("{t1} and {t2} differ in size"));
    }
    if t1 == s.difference(t2) && t1 != t2 {
        return param(format!(
            "{t1} = S - {t2}: the two blocks are the same component"
        ));
    }
    let mut images: Vec<usize> = (1..=s.ground().get()).collect();
    for (a, b) in t1.iter().zip(t2.iter()) {
        images[a - 1] = b;
    }
    for (a, b) in s.difference(t1).iter().zip(s.difference(t2).iter()) {
        images[a - 1] = b;
    }
    let p = Perm::from_images(&images)?;
    let source = canonical_block_component(n, k, t1)?;
    let target = canonical_block_component(n, k, t2)?;
    Ok(
        VertexMap::from_block_fn(source, target, MapKind::Isomorphism, |v| {
            Some(apply_perm(&p, v))
        })
        .verified(),
    )
}

/// Isomorphism from the `T1` block component of `O_n(k)` to the `T2` block
/// component of `O_m(p)` when both have the same degree signature:
/// `v ↦ (v − T1) ∪ T2` on `U_{T1}` and `v ↦ (v − (S1 − T1)) ∪ (S2 − T2)` on `W_{T1}`.
pub fn biregular_cross_iso(
    n: usize,
    k: usize,
    t1: Block,
    m: usize,
    p: usize,
    t2: Block,
) -> Result<VertexMap> {
    if k == 0 || p == 0 {
        return param("cross isomorphism needs at least one deleted color on each side");
    }
    let s1 = ColorSet::canonical(n, k)?.block();
    let s2 = ColorSet::canonical(m, p)?.block();
    if t1.ground() != s1.ground()
        || !t1.is_subset(s1)
        || t2.ground() != s2.ground()
        || !t2.is_subset(s2)
    {
        return param(format!("{t1} and {t2} must be subsets of {s1} and {s2}"));
    }
    let (i, j) = (t1.len(), t2.len());
    if n + j != m + i || n + i + p != m + j + k {
        return param(format!(
            "signatures differ: ({}, {}) vs ({}, {})",
            n - i,
            (n + i).saturating_sub(k),
            m - j,
            (m + j).saturating_sub(p)
        ));
    }
    let source = canonical_block_component(n, k, t1)?;
    let target = canonical_block_component(m, p, t2)?;
    let g2 = target.ground();
    let (w1, w2) = (s1.difference(t1), s2.difference(t2));
    let map = VertexMap::from_block_fn(source, target, MapKind::Isomorphism, |v| {
        let core = if v.intersection(s1) == t1 {
            v.difference(t1).regrounded(g2).ok()?.union(t2)
        } else {
            v.difference(w1).regrounded(g2).ok()?.union(w2)
        };
        Some(core)
    });
    Ok(map.verified())
}

/// The regular component of `O_{m+1}({2m, 2m+1})` for `T = {2m}`.
pub fn middle_component_of_odd(m: usize) -> Result<Arc<LabeledGraph>> {
    let g = GroundSize::new(2 * m + 1)?;
    canonical_block_component(m + 1, 2, Block::from_elements(g, &[2 * m])?)
}

/// Isomorphism from the regular component of `O_{m+1}({2m, 2m+1})` onto `B_m`:
/// `v ↦ v − {2m}` on `U_T` and `v ↦ [2m − 1] − (v − {2m + 1})` on `W_T`.
pub fn middle_component_iso(m: usize) -> Result<VertexMap> {
    if m == 0 {
        return param("m must be positive");
    }
    let source = middle_component_of_odd(m)?;
    let target = Arc::new(LabeledGraph::build(FamilyId::MiddleLevels(m))?);
    let small = target.ground();
    let map = VertexMap::from_block_fn(source, target, MapKind::Isomorphism, |v| {
        if v.contains(2 * m) {
            v.without(2 * m).regrounded(small).ok()
        } else {
            Some(v.without(2 * m + 1).regrounded(small).ok()?.complement())
        }
    });
    Ok(map.verified())
}

/// The embedding `B_m → O_{m+1}` inverse to [`middle_component_iso`]:
/// `w ↦ w ∪ {2m}` when `|w| = m − 1`, `w ↦ ([2m − 1] − w) ∪ {2m + 1}` when `|w| = m`.
pub fn embed_middle_in_odd(m: usize) -> Result<VertexMap> {
    if m == 0 {
        return param("m must be positive");
    }
    let source = Arc::new(LabeledGraph::build(FamilyId::MiddleLevels(m))?);
    let target = Arc::new(LabeledGraph::build(FamilyId::Odd(m + 1))?);
    let big = target.ground();
    let map = VertexMap::from_block_fn(source, target, MapKind::Embedding, |w| {
        embed_block(m, w, big)
    });
    Ok(map.verified())
}

fn embed_block(m: usize, w: Block, big: GroundSize) -> Option<Block> {
    if w.len() + 1 == m {
        w.regrounded(big).ok()?.with(2 * m).ok()
    } else {
        w.complement().regrounded(big).ok()?.with(2 * m + 1).ok()
    }
}

/// An isomorphism from a regular component of `O_n(C)` (given by its vertex
/// blocks) onto `B_{n − |C|/2}`. The color set is first carried onto the
/// canonical top colors by [`color_swap_perm`], then the block component is
/// sent to the middle component of `O_{m+1}(2)` and finally onto `B_m`.
pub fn regular_component_to_middle(n: usize, colors: Block, blocks: &[Block]) -> Result<VertexMap> {
    let k = colors.len();
    if k == 0 || k % 2 == 1 || blocks.is_empty() {
        return param("need an even, positive number of colors and a nonempty component");
    }
    let s = ColorSet::canonical(n, k)?.block();
    let p = color_swap_perm(colors, s)?;
    let t = apply_perm(&p, blocks[0]).intersection(s);
    if 2 * t.len() != k {
        return param(format!("component of {} is not a regular one", blocks[0]));
    }
    let host = ColorDeletion::odd(n, ColorSet::from_block(n, colors)?)?;
    let source = component_subgraph(&host.graph, blocks)?;
    let step1 = VertexMap::from_block_fn(
        source,
        canonical_block_component(n, k, t)?,
        MapKind::Isomorphism,
        |v| Some(apply_perm(&p, v)),
    )
    .verified();
    finish_to_middle(step1, n, k, t)
}

/// As [`regular_component_to_middle`] for a regular component of `B_n(C)`:
/// the component is first embedded into `O_{n+1}`, where it becomes a
/// regular component for the color set `C ∪ {2n, 2n + 1}`.
pub fn middle_levels_component_to_middle(
    n: usize,
    colors: Block,
    blocks: &[Block],
) -> Result<VertexMap> {
    let k = colors.len();
    if k == 0 || k % 2 == 1 || blocks.is_empty() {
        return param("need an even, positive number of colors and a nonempty component");
    }
    let s = ColorSet::canonical(n, k)?.block();
    let p = color_swap_perm(colors, s)?;
    let big = GroundSize::new(2 * n + 1)?;
    let lift = |v: Block| embed_block(n, apply_perm(&p, v), big);
    let s_big = ColorSet::canonical(n + 1, k + 2)?.block();
    let t = lift(blocks[0])
        .ok_or_else(|| Error::Parameter("block does not embed".into()))?
        .intersection(s_big);
    if 2 * t.len() != k + 2 {
        return param(format!("component of {} is not a regular one", blocks[0]));
    }
    let base = LabeledGraph::build(FamilyId::MiddleLevels(n))?;
    let host = crate::decompose::delete_colors(&base, colors)?;
    let source = component_subgraph(&host, blocks)?;
    let step1 = VertexMap::from_block_fn(
        source,
        canonical_block_component(n + 1, k + 2, t)?,
        MapKind::Isomorphism,
        lift,
    )
    .verified();
    finish_to_middle(step1, n + 1, k + 2, t)
}

fn component_subgraph(host: &LabeledGraph, blocks: &[Block]) -> Result<Arc<LabeledGraph>> {
    let idx = blocks
        .iter()
        .map(|&b| {
            host.index_of(b)
                .ok_or_else(|| Error::Parameter(format!("{b} is not a vertex")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(host.induced_subgraph(&idx)))
}

/// Composes `step1` (onto the `T` block of `O_n(k)`, `|T| = k/2`) with the
/// cross isomorphism onto the middle component of `O_{m+1}(2)` and then onto
/// `B_m`, verifying the composite.
fn finish_to_middle(step1: VertexMap, n: usize, k: usize, t: Block) -> Result<VertexMap> {
    let m = n - k / 2;
    let t2 = Block::from_elements(GroundSize::new(2 * m + 1)?, &[2 * m])?;
    let step2 = biregular_cross_iso(n, k, t, m + 1, 2, t2)?;
    let step3 = middle_component_iso(m)?;
    let pieces_ok = [&step1, &step2, &step3]
        .iter()
        .all(|s| s.status() == Verification::Pass);
    let mut composite = step1.then(&step2)?.then(&step3)?;
    composite.kind = MapKind::Isomorphism;
    let ok = composite.verify();
    if !pieces_ok && ok {
        composite.status = Verification::Fail;
    }
    Ok(composite)
}

/// The bipartite double cover of `g`: vertex `v` on the first side stays `v`;
/// on the second side it becomes `v ∪ {m + 1}` over `[m + 1]`. Each edge `uv`
/// becomes `u -- v'` and `u' -- v`. Edge colors are dropped.
pub fn generic_double_cover(g: &LabeledGraph) -> Result<(LabeledGraph, VertexMap)> {
    let m = g.ground().get();
    let big = GroundSize::new(m + 1)?;
    let count = g.vertex_count();
    let mut vertices = Vec::with_capacity(2 * count);
    for &v in g.vertices() {
        vertices.push(v.regrounded(big)?);
    }
    for &v in g.vertices() {
        vertices.push(v.regrounded(big)?.with(m + 1)?);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .flat_map(|(u, v, _)| [(u, count + v), (count + u, v)])
        .collect();
    let cover = LabeledGraph::from_parts(big, vertices, &edges, None, None)?;
    let base = Arc::new(g.clone());
    let shared = Arc::new(cover.clone());
    let map = VertexMap::from_block_fn(shared, base, MapKind::Covering, |v| {
        v.without(m + 1).regrounded(g.ground()).ok()
    });
    Ok((cover, map.verified()))
}

/// Searches for an isomorphism between two small graphs by backtracking.
/// Intended as an independent check of the explicit maps.
pub fn find_isomorphism(g: &LabeledGraph, h: &LabeledGraph) -> Result<Option<Vec<usize>>> {
    const LIMIT: usize = 24;
    let n = g.vertex_count();
    if n > LIMIT || h.vertex_count() > LIMIT {
        return Err(Error::Unsupported(format!(
            "isomorphism search is limited to {LIMIT} vertices"
        )));
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut gd: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut hd: Vec<usize> = (0..n).map(|i| h.degree(i)).collect();
    let (gdeg, hdeg) = (gd.clone(), hd.clone());
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return Ok(None);
    }
    // place vertices so each new one is adjacent to an earlier one when possible
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for nb in g.neighbors(x) {
                if !placed[nb.index] {
                    placed[nb.index] = true;
                    queue.push_back(nb.index);
                }
            }
        }
    }
    fn extend(
        depth: usize,
        order: &[usize],
        g: &LabeledGraph,
        h: &LabeledGraph,
        gdeg: &[usize],
        hdeg: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..h.vertex_count() {
            if used[y] || hdeg[y] != gdeg[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let fz = map[z].expect("placed");
                g.adjacent(x, z) == h.adjacent(y, fz)
            });
            if !consistent {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if extend(depth + 1, order, g, h, gdeg, hdeg, map, used) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if extend(0, &order, g, h, &gdeg, &hdeg, &mut map, &mut used) {
        Ok(Some(
            map.into_iter().map(|x| x.expect("complete")).collect(),
        ))
    } else {
        Ok(None)
    }
}

/// How a closed circuit lifts through a double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftVariant {
    /// One circuit of twice the length.
    SingleCircuit(PathSeq),
    /// Two disjoint circuits of the base length.
    TwoCircuits(PathSeq, PathSeq),
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub variant: LiftVariant,
    /// Whether lifted vertices `L` steps apart (single circuit) or at the
    /// same position (two circuits) always form a full fiber.
    pub antipodal: bool,
    /// The covering graph the lifted indices refer to.
    pub graph: Arc<LabeledGraph>,
}

/// Lifts a circuit of `O_n` to `B_n` through `cover_map(2n − 1, n − 1)`.
pub fn lift_circuit(n: usize, c: &PathSeq) -> Result<LiftResult> {
    if n < 2 {
        return param("lifting needs n >= 2");
    }
    lift_through(&cover_map(2 * n - 1, n - 1)?, c)
}

/// Lifts a circuit of `cover.target()` through a 2-fold covering map,
/// starting from the lexicographically smaller preimage of its first vertex.
pub fn lift_through(cover: &VertexMap, c: &PathSeq) -> Result<LiftResult> {
    let base = cover.target();
    let up = cover.source();
    let len = c.vertices().len();
    if !c.is_closed() || len < 3 || !c.is_simple() || !c.is_valid_in(base) {
        return param("lifting needs a closed simple circuit in the base graph");
    }
    let img = total(cover.images())?;
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); base.vertex_count()];
    for (x, &y) in img.iter().enumerate() {
        fibers[y].push(x);
    }
    if fibers.iter().any(|f| f.len() != 2) {
        return param("lifting needs a 2-fold cover");
    }
    let cv = c.vertices();
    let start = *fibers[cv[0]]
        .iter()
        .min_by_key(|&&x| up.vertex(x).elements())
        .expect("fiber of size 2");
    let mut walk = vec![start];
    let mut at = start;
    for step in 1..=2 * len {
        let want = cv[step % len];
        let mut next = up.neighbors(at).iter().filter(|nb| img[nb.index] == want);
        let y = next
            .next()
            .ok_or_else(|| Error::Relation("edge has no preimage at the current vertex".into()))?
            .index;
        if next.next().is_some() {
            return param("cover is not locally bijective along the circuit");
        }
        at = y;
        if step % len == 0 && at == start {
            break;
        }
        walk.push(at);
    }
    let other = |x: usize| -> usize {
        let f = &fibers[img[x]];
        if f[0] == x {
            f[1]
        } else {
            f[0]
        }
    };
    let (variant, antipodal) = if walk.len() == len {
        let first = walk;
        let second_start = other(start);
        let mut second = vec![second_start];
        let mut at = second_start;
        for step in 1..len {
            let want = cv[step];
            at = up
                .neighbors(at)
                .iter()
                .find(|nb| img[nb.index] == want)
                .ok_or_else(|| Error::Relation("edge has no preimage".into()))?
                .index;
            second.push(at);
        }
        let antipodal = first.iter().zip(&second).all(|(&a, &b)| other(a) == b);
        (
            LiftVariant::TwoCircuits(PathSeq::closed(up, first)?, PathSeq::closed(up, second)?),
            antipodal,
        )
    } else {
        if walk.len() != 2 * len || at != start {
            return param("lift did not close up after two passes");
        }
        let antipodal = (0..len).all(|i| other(walk[i]) == walk[i + len]);
        (
            LiftVariant::SingleCircuit(PathSeq::closed(up, walk)?),
            antipodal,
        )
    };
    Ok(LiftResult {
        variant,
        antipodal,
        graph: up.clone(),
    })
}

/// Checks that complementation carries each edge of `B_n` to an edge with
/// the same color.
pub fn kappa_preserves_labels(n: usize) -> Result<bool> {
    let g = LabeledGraph::build(FamilyId::MiddleLevels(n))?;
    let preserved = g.edges().all(|(u, v, c)| {
        let (a, b) = (g.vertex(u).complement(), g.vertex(v).complement());
        c.is_some() && LabelKind::Bipartite.color_of(a, b) == c
    });
    Ok(preserved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::girth;

    fn blk(m: usize, e: &[usize]) -> Block {
        Block::from_elements(GroundSize::new(m).unwrap(), e).unwrap()
    }

    fn arc(f: FamilyId) -> Arc<LabeledGraph> {
        Arc::new(LabeledGraph::build(f).unwrap())
    }

    #[test]
    fn morphism_checks() {
        let o3 = arc(FamilyId::Odd(3));
        let id = VertexMap::new(
            o3.clone(),
            o3.clone(),
            (0..10).map(Some).collect(),
            MapKind::Morphism,
        )
        .unwrap();
        assert!(is_morphism(&id).unwrap());
        assert!(is_isomorphism(&id).unwrap());
        let constant =
            VertexMap::new(o3.clone(), o3.clone(), vec![Some(0); 10], MapKind::Morphism).unwrap();
        assert!(!is_morphism(&constant).unwrap());
        let mut partial = vec![Some(0); 10];
        partial[3] = None;
        let partial = VertexMap::new(o3.clone(), o3.clone(), partial, MapKind::Morphism).unwrap();
        assert_eq!(is_morphism(&partial), Err(Error::NotTotal(3)));

        let b2 = arc(FamilyId::MiddleLevels(2));
        let k = kappa(2).unwrap();
        assert!(is_morphism(&k).unwrap());
        assert_eq!(k.map_block(blk(3, &[1])), Some(blk(3, &[2, 3])));
        assert_eq!(b2.edge_count(), 6);

        // different orders
        let cross = VertexMap::new(
            o3.clone(),
            b2.clone(),
            vec![Some(0); 10],
            MapKind::Isomorphism,
        )
        .unwrap();
        assert!(!is_isomorphism(&cross).unwrap());
    }

    #[test]
    fn kappa_is_a_label_preserving_involution() {
        for n in 1..=5 {
            let k = kappa(n).unwrap();
            assert_eq!(k.status(), Verification::Pass);
            let twice = k.then(&k).unwrap();
            assert!(twice
                .images()
                .iter()
                .enumerate()
                .all(|(i, j)| *j == Some(i)));
            assert!(kappa_preserves_labels(n).unwrap());
        }
        let k = kappa(3).unwrap();
        let (u, v) = (blk(5, &[1, 2]), blk(5, &[1, 2, 3]));
        let (a, b) = (k.map_block(u).unwrap(), k.map_block(v).unwrap());
        assert_eq!((a, b), (blk(5, &[3, 4, 5]), blk(5, &[4, 5])));
        assert_eq!(LabelKind::Bipartite.color_of(a, b), Some(3));
    }

    #[test]
    fn cover_map_examples() {
        let c = cover_map(5, 2).unwrap();
        assert_eq!(c.map_block(blk(5, &[1, 2])), Some(blk(5, &[1, 2])));
        assert_eq!(c.map_block(blk(5, &[1, 2, 3])), Some(blk(5, &[4, 5])));
        let r = verify_cover(&c);
        assert!(r.passed);
        assert_eq!(r.fiber_size, Some(2));

        let c = cover_map(3, 1).unwrap();
        assert_eq!(
            (c.source().vertex_count(), c.target().vertex_count()),
            (6, 3)
        );
        assert_eq!(c.status(), Verification::Pass);
        let c = cover_map(7, 3).unwrap();
        assert_eq!(
            (c.source().vertex_count(), c.target().vertex_count()),
            (70, 35)
        );
        assert_eq!(c.status(), Verification::Pass);
        assert!(verify_cover(&cover_map(9, 4).unwrap()).passed);

        // fibers are {v, complement(v)}
        for v in c.source().vertices() {
            assert_eq!(c.map_block(*v), c.map_block(v.complement()));
        }
        assert!(matches!(cover_map(6, 3), Err(Error::Degenerate(_))));
    }

    #[test]
    fn uneven_fibers_are_not_a_cover() {
        // κ alone is a 1-fold cover of B_3 by itself, not a double cover of O_3
        let k = kappa(3).unwrap();
        let as_cover = VertexMap::new(
            k.source().clone(),
            k.target().clone(),
            k.images().to_vec(),
            MapKind::Covering,
        )
        .unwrap();
        assert_eq!(verify_cover(&as_cover).fiber_size, Some(1));
        // sending every large side vertex to one point breaks the fibers
        let c = cover_map(5, 2).unwrap();
        let fixed = c.target().index_of(blk(5, &[4, 5]));
        let images = c
            .source()
            .vertices()
            .iter()
            .map(|v| {
                if v.len() == 2 {
                    c.target().index_of(*v)
                } else {
                    fixed
                }
            })
            .collect();
        let bad = VertexMap::new(
            c.source().clone(),
            c.target().clone(),
            images,
            MapKind::Covering,
        )
        .unwrap()
        .verified();
        assert_eq!(bad.status(), Verification::Fail);
        let r = verify_cover(&bad);
        assert_eq!(r.fiber_size, None);
        assert!(!r.locally_bijective);
    }

    #[test]
    fn perm_automorphisms() {
        let o3 = arc(FamilyId::Odd(3));
        let p = Perm::transposition(GroundSize::new(5).unwrap(), 1, 2).unwrap();
        let a = perm_automorphism(o3.clone(), &p).unwrap();
        assert_eq!(a.status(), Verification::Pass);
        for fixed in [[3, 4], [3, 5], [4, 5]] {
            assert_eq!(a.map_block(blk(5, &fixed)), Some(blk(5, &fixed)));
        }
        let b3 = arc(FamilyId::MiddleLevels(3));
        let sigma = Perm::rotation(GroundSize::new(5).unwrap());
        let a = perm_automorphism(b3, &sigma).unwrap();
        assert_eq!(a.status(), Verification::Pass);
        assert!(a.images().iter().enumerate().all(|(i, j)| *j != Some(i)));
        let id = perm_automorphism(o3, &Perm::identity(GroundSize::new(5).unwrap())).unwrap();
        assert!(id.images().iter().enumerate().all(|(i, j)| *j == Some(i)));
    }

    #[test]
    fn color_swap_examples() {
        let m = color_swap_iso(
            3,
            ColorSet::new(3, &[4, 5]).unwrap(),
            ColorSet::new(3, &[1, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.status(), Verification::Pass);
        let s = ColorSet::new(3, &[4, 5]).unwrap();
        let same = color_swap_iso(3, s, s).unwrap();
        assert!(same.images().iter().enumerate().all(|(i, j)| *j == Some(i)));
        let m = color_swap_iso(
            4,
            ColorSet::new(4, &[5, 6, 7]).unwrap(),
            ColorSet::new(4, &[1, 6, 7]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.status(), Verification::Pass);
        assert!(color_swap_iso(
            4,
            ColorSet::new(4, &[5, 6]).unwrap(),
            ColorSet::new(4, &[1, 6, 7]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn internal_iso_examples() {
        let m = biregular_internal_iso(5, 4, blk(9, &[6]), blk(9, &[7])).unwrap();
        assert_eq!(m.status(), Verification::Pass);
        assert_eq!(m.source().vertex_count(), m.target().vertex_count());
        let id = biregular_internal_iso(5, 4, blk(9, &[6]), blk(9, &[6])).unwrap();
        assert!(id.images().iter().enumerate().all(|(i, j)| *j == Some(i)));
        let m = biregular_internal_iso(5, 4, blk(9, &[6, 7]), blk(9, &[6, 8])).unwrap();
        assert_eq!(m.status(), Verification::Pass);
        assert_eq!(m.source().vertex_count(), 20);
        assert!(biregular_internal_iso(5, 4, blk(9, &[6, 7]), blk(9, &[8, 9])).is_err());
        assert!(biregular_internal_iso(5, 4, blk(9, &[6]), blk(9, &[6, 7])).is_err());
    }

    #[test]
    fn internal_iso_covers_every_pair_of_equal_size() {
        for (n, k) in [(4, 2), (4, 3), (5, 3)] {
            let s = ColorSet::canonical(n, k).unwrap().block();
            for i in 0..=k {
                let ts = crate::setcore::k_subsets_of(s, i);
                for &t1 in &ts {
                    for &t2 in &ts {
                        if t1 == s.difference(t2) && t1 != t2 {
                            continue;
                        }
                        let m = biregular_internal_iso(n, k, t1, t2).unwrap();
                        assert_eq!(m.status(), Verification::Pass, "n={n} k={k} {t1} {t2}");
                    }
                }
            }
        }
    }

    #[test]
    fn cross_iso_examples() {
        let m = biregular_cross_iso(4, 2, blk(7, &[]), 5, 4, blk(9, &[6])).unwrap();
        assert_eq!(m.status(), Verification::Pass);
        assert_eq!(m.source().vertex_count(), 15);
        let m = biregular_cross_iso(3, 2, blk(5, &[]), 4, 4, blk(7, &[4])).unwrap();
        assert_eq!(m.status(), Verification::Pass);
        let m = biregular_cross_iso(5, 2, blk(9, &[8]), 5, 2, blk(9, &[8])).unwrap();
        assert!(m.images().iter().enumerate().all(|(i, j)| *j == Some(i)));
        assert!(biregular_cross_iso(4, 2, blk(7, &[]), 5, 4, blk(9, &[6, 7])).is_err());
    }

    #[test]
    fn middle_component_iso_examples() {
        let m = middle_component_iso(2).unwrap();
        assert_eq!(m.status(), Verification::Pass);
        for (v, img) in [
            (vec![1, 4], vec![1]),
            (vec![2, 4], vec![2]),
            (vec![3, 4], vec![3]),
        ] {
            assert_eq!(m.map_block(blk(5, &v)), Some(blk(3, &img)));
        }
        let m = middle_component_iso(3).unwrap();
        assert_eq!(
            (m.source().vertex_count(), m.status()),
            (20, Verification::Pass)
        );
        let m = middle_component_iso(1).unwrap();
        assert_eq!(
            (m.source().vertex_count(), m.status()),
            (2, Verification::Pass)
        );
    }

    #[test]
    fn embedding_inverts_the_middle_iso() {
        let e = embed_middle_in_odd(2).unwrap();
        assert_eq!(e.status(), Verification::Pass);
        assert_eq!(e.map_block(blk(3, &[1])), Some(blk(5, &[1, 4])));
        assert_eq!(e.map_block(blk(3, &[1, 2])), Some(blk(5, &[3, 5])));
        for m in 1..=5 {
            let e = embed_middle_in_odd(m).unwrap();
            assert_eq!(e.status(), Verification::Pass);
            let iso = middle_component_iso(m).unwrap();
            for &w in e.source().vertices() {
                let up = e.map_block(w).unwrap();
                assert_eq!(iso.map_block(up), Some(w));
                // edge colors survive the embedding
            }
            for (u, v, c) in e.source().edges() {
                let (a, b) = (e.image(u).unwrap(), e.image(v).unwrap());
                assert_eq!(e.target().edge(a, b).unwrap().color, c);
            }
            let image: Vec<Block> = e
                .images()
                .iter()
                .map(|j| e.target().vertex(j.unwrap()))
                .collect();
            let mut image = image;
            image.sort();
            assert_eq!(image, middle_component_of_odd(m).unwrap().vertices());
        }
    }

    #[test]
    fn regular_components_map_onto_middle_levels() {
        for (n, colors) in [
            (3, vec![1, 2]),
            (4, vec![1, 3]),
            (5, vec![2, 3, 5, 7]),
            (4, vec![1, 2, 3, 4]),
        ] {
            let cs = ColorSet::new(n, &colors).unwrap();
            let cd = ColorDeletion::odd(n, cs).unwrap();
            let census = crate::decompose::classify_components(&cd.graph);
            let m = n - colors.len() / 2;
            for &ci in &census.entries[&crate::decompose::ComponentSignature::Regular(m)] {
                let blocks: Vec<Block> = census.components[ci]
                    .iter()
                    .map(|&i| cd.graph.vertex(i))
                    .collect();
                let iso = regular_component_to_middle(n, cs.block(), &blocks).unwrap();
                assert_eq!(iso.status(), Verification::Pass, "n={n} C={cs}");
                assert_eq!(iso.target().family(), Some(FamilyId::MiddleLevels(m)));
            }
        }
    }

    #[test]
    fn six_cycle_of_o3_maps_onto_b2() {
        let s = ColorSet::new(3, &[4, 5]).unwrap();
        let cd = ColorDeletion::odd(3, s).unwrap();
        let cycle = cd.block_component(blk(5, &[4])).unwrap();
        let iso = regular_component_to_middle(3, s.block(), cycle.vertices()).unwrap();
        assert_eq!(iso.status(), Verification::Pass);
        assert!(find_isomorphism(
            &cycle,
            &LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap()
        )
        .unwrap()
        .is_some());
    }

    #[test]
    fn double_cover_examples() {
        let g3 = GroundSize::new(3).unwrap();
        let tri = LabeledGraph::from_parts(
            g3,
            vec![blk(3, &[1]), blk(3, &[2]), blk(3, &[3])],
            &[(0, 1), (1, 2), (0, 2)],
            None,
            None,
        )
        .unwrap();
        let (cover, map) = generic_double_cover(&tri).unwrap();
        assert_eq!(map.status(), Verification::Pass);
        assert_eq!((cover.vertex_count(), girth(&cover)), (6, Some(6)));
        assert!(crate::graphs::is_connected(&cover));

        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        let (cover, map) = generic_double_cover(&o3).unwrap();
        assert_eq!(map.status(), Verification::Pass);
        let b3 = LabeledGraph::build(FamilyId::MiddleLevels(3)).unwrap();
        let found = find_isomorphism(&cover, &b3)
            .unwrap()
            .expect("isomorphic to B_3");
        let check = VertexMap::new(
            Arc::new(cover),
            Arc::new(b3),
            found.into_iter().map(Some).collect(),
            MapKind::Isomorphism,
        )
        .unwrap()
        .verified();
        assert_eq!(check.status(), Verification::Pass);

        let g4 = GroundSize::new(4).unwrap();
        let square = LabeledGraph::from_parts(
            g4,
            (1..=4).map(|x| blk(4, &[x])).collect(),
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
            None,
            None,
        )
        .unwrap();
        let (cover, map) = generic_double_cover(&square).unwrap();
        assert_eq!(map.status(), Verification::Pass);
        let parts = crate::graphs::components(&cover);
        assert_eq!(parts.len(), 2);
        assert!(parts
            .iter()
            .all(|p| p.vertex_count() == 4 && p.edge_count() == 4));
    }

    #[test]
    fn isomorphism_search_rejects_non_isomorphic() {
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        assert_eq!(find_isomorphism(&o3, &b2).unwrap(), None);
        let (cover, _) = generic_double_cover(&o3).unwrap();
        assert!(find_isomorphism(&cover, &cover).unwrap().is_some());
        let big = LabeledGraph::build(FamilyId::Odd(4)).unwrap();
        assert!(find_isomorphism(&big, &big).is_err());
    }

    fn circuit(g: &LabeledGraph, blocks: &[&[usize]]) -> PathSeq {
        let m = g.ground().get();
        let idx = blocks
            .iter()
            .map(|b| g.index_of(blk(m, b)).unwrap())
            .collect();
        PathSeq::closed(g, idx).unwrap()
    }

    #[test]
    fn lifting_odd_and_even_circuits() {
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        // a 5-cycle of the Petersen graph
        let c5 = circuit(&o3, &[&[1, 2], &[3, 4], &[1, 5], &[2, 3], &[4, 5]]);
        let lift = lift_circuit(3, &c5).unwrap();
        assert!(lift.antipodal);
        match &lift.variant {
            LiftVariant::SingleCircuit(p) => {
                assert_eq!(p.vertices().len(), 10);
                assert!(p.is_simple() && p.is_valid_in(&lift.graph));
                // starts at the lexicographically smaller preimage of {1,2}
                assert_eq!(lift.graph.vertex(p.vertices()[0]), blk(5, &[1, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
        // a 6-cycle: the component of O_3({4,5}) for T = {4}
        let c6 = circuit(&o3, &[&[1, 4], &[2, 5], &[3, 4], &[1, 5], &[2, 4], &[3, 5]]);
        let lift = lift_circuit(3, &c6).unwrap();
        assert!(lift.antipodal);
        match &lift.variant {
            LiftVariant::TwoCircuits(a, b) => {
                assert_eq!((a.vertices().len(), b.vertices().len()), (6, 6));
                for (&x, &y) in a.vertices().iter().zip(b.vertices()) {
                    assert_eq!(lift.graph.vertex(x).complement(), lift.graph.vertex(y));
                }
                assert!(a.is_valid_in(&lift.graph) && b.is_valid_in(&lift.graph));
            }
            other => panic!("unexpected {other:?}"),
        }
        let open = PathSeq::open(&o3, c5.vertices().to_vec()).unwrap();
        assert!(lift_circuit(3, &open).is_err());
    }

    #[test]
    fn lifts_project_back_onto_the_base() {
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        let cover = cover_map(5, 2).unwrap();
        let c5 = circuit(&o3, &[&[1, 2], &[3, 4], &[1, 5], &[2, 3], &[4, 5]]);
        let lift = lift_through(&cover, &c5).unwrap();
        let LiftVariant::SingleCircuit(p) = lift.variant else {
            panic!()
        };
        let projected: Vec<usize> = p
            .vertices()
            .iter()
            .map(|&x| cover.image(x).unwrap())
            .collect();
        let twice: Vec<usize> = c5.vertices().iter().chain(c5.vertices()).copied().collect();
        assert_eq!(projected, twice);
    }
}
