//! Two-color paths in `O_n` and the graphs formed by the middle levels
//! components of `O_n(C)` and `B_n(C)`.
//!
//! For an even color set `C` with distinguished color `d = max C`, every
//! regular component of `O_n(C)` is `U_T ∪ W_T` with `|T| = |C|/2`; the half
//! of `{T, C − T}` containing `d`, minus `d`, names the component. Two
//! components are adjacent when some involution `(a, d)`, `a ∈ C − {d}`,
//! carries one onto the other.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::decompose::{
    classify_components, delete_colors, odd_ground, ColorSet, ComponentSignature, HostFamily,
};
use crate::error::{param, Error, Result};
use crate::graphs::{bfs_distances, Color, FamilyId, LabelKind, LabeledGraph};
use crate::hamilton::PathSeq;
use crate::morphisms::{self, MapKind, Verification, VertexMap};
use crate::setcore::{apply_perm, binomial, Block, GroundSize, Perm};

/// A path `⟨v, x, w⟩` of length two in `O_n` whose edges carry the colors
/// `a` and `b`, with `w = (a, b)v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoColorPath {
    pub vertices: [Block; 3],
    pub labels: [Color; 2],
}

impl TwoColorPath {
    pub fn start(&self) -> Block {
        self.vertices[0]
    }

    pub fn middle(&self) -> Block {
        self.vertices[1]
    }

    pub fn end(&self) -> Block {
        self.vertices[2]
    }

    /// The same path as vertex indices of `g`, checking both edges.
    pub fn in_graph(&self, g: &LabeledGraph) -> Result<PathSeq> {
        let idx = self
            .vertices
            .iter()
            .map(|&b| {
                g.index_of(b)
                    .ok_or_else(|| Error::Parameter(format!("{b} is not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        PathSeq::open(g, idx)
    }
}

/// The path from `v` to `(a, b)v` through `[2n − 1] − (v ∪ {c})`, where `c` is
/// whichever of `a`, `b` is missing from `v`.
pub fn two_color_path(n: usize, v: Block, a: usize, b: usize) -> Result<TwoColorPath> {
    let ground = odd_ground(n)?;
    if v.ground() != ground || v.len() + 1 != n {
        return param(format!("{v} is not a vertex of O_{n}"));
    }
    if a == b || a == 0 || b == 0 || a > ground.get() || b > ground.get() {
        return param(format!(
            "colors {a} and {b} must be distinct elements of {ground}"
        ));
    }
    let (inside, outside) = match (v.contains(a), v.contains(b)) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ => {
            return Err(Error::Degenerate(format!(
                "({a},{b}) fixes {v}: the path would return to its start"
            )))
        }
    };
    let grown = v.with(outside)?;
    let middle = grown.complement();
    let end = grown.without(inside);
    Ok(TwoColorPath {
        vertices: [v, middle, end],
        labels: [outside as Color, inside as Color],
    })
}

/// Names one middle levels component of `O_n(C)` or `B_n(C)`.
///
/// For odd graphs `key` is the `(k/2 − 1)`-subset of `[k − 1]`; for middle
/// levels graphs it is the `k/2`-subset of `[k]` shared by all vertices of the
/// component. Color sets other than `[k]` are relabeled order-preservingly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MiddleComponentId {
    pub key: Block,
    pub n: usize,
    pub k: usize,
    pub family: HostFamily,
}

/// The graph on middle levels components.
#[derive(Clone, Debug)]
pub struct SuperGraph {
    pub family: HostFamily,
    pub n: usize,
    /// The deleted colors of the host graph.
    pub colors: Block,
    pub ids: Vec<MiddleComponentId>,
    /// Host vertices of each component, aligned with `ids`.
    pub components: Vec<Vec<Block>>,
    /// Vertex `i` is the image of `ids[i]` in the ground set of `target`;
    /// edges come from the involution criterion.
    pub graph: LabeledGraph,
    /// Whether the involution criterion and the partition criterion agree on
    /// every pair of components.
    pub criteria_agree: bool,
    /// `O_{k/2}` for odd hosts, `B_{k/2}` for middle levels hosts.
    pub target: FamilyId,
    pub iso: VertexMap,
}

impl SuperGraph {
    pub fn k(&self) -> usize {
        self.colors.len()
    }

    pub fn passed(&self) -> bool {
        self.criteria_agree && self.iso.status() == Verification::Pass
    }
}

fn relabel(colors: Block, subset: Block, ground: GroundSize) -> Block {
    let elems: Vec<usize> = colors
        .iter()
        .enumerate()
        .filter(|(_, c)| subset.contains(*c))
        .map(|(i, _)| i + 1)
        .collect();
    Block::from_elements(ground, &elems).expect("relabeled subset fits")
}

fn host_graph(n: usize, colors: Block, family: HostFamily) -> Result<LabeledGraph> {
    let base = LabeledGraph::build(family.family(n))?;
    delete_colors(&base, colors)
}

struct Located {
    host: LabeledGraph,
    /// Host index -> position in `ids`, for vertices of regular components.
    owner: Vec<Option<usize>>,
    ids: Vec<MiddleComponentId>,
    members: Vec<Vec<usize>>,
}

fn locate(n: usize, colors: Block, family: HostFamily) -> Result<Located> {
    let k = colors.len();
    if k == 0 || k % 2 == 1 {
        return param(format!(
            "middle levels components need an even positive number of colors, got {k}"
        ));
    }
    match family {
        HostFamily::Odd if k > 2 * n - 2 => {
            return param(format!(
                "O_{n} minus {k} colors has no middle levels components"
            ))
        }
        HostFamily::MiddleLevels if k >= n => {
            return param(format!("B_{n} minus {k} colors needs k < n"))
        }
        _ => {}
    }
    ColorSet::from_block(n, colors)?;
    let host = host_graph(n, colors, family)?;
    let census = classify_components(&host);
    let m = n - k / 2;
    let d = colors.max_element().expect("nonempty");
    let mut found: Vec<(MiddleComponentId, Vec<usize>)> = Vec::new();
    for &ci in census
        .entries
        .get(&ComponentSignature::Regular(m))
        .into_iter()
        .flatten()
    {
        let members = census.components[ci].clone();
        let key = match family {
            HostFamily::Odd => {
                let rest = colors.without(d);
                let v = members
                    .iter()
                    .map(|&i| host.vertex(i))
                    .find(|v| v.contains(d))
                    .expect("one side contains the distinguished color");
                relabel(rest, v.intersection(rest), GroundSize::new(k - 1)?)
            }
            HostFamily::MiddleLevels => relabel(
                colors,
                host.vertex(members[0]).intersection(colors),
                GroundSize::new(k)?,
            ),
        };
        found.push((MiddleComponentId { key, n, k, family }, members));
    }
    found.sort_by_key(|(id, _)| id.key);
    let mut owner = vec![None; host.vertex_count()];
    for (pos, (_, members)) in found.iter().enumerate() {
        for &x in members {
            owner[x] = Some(pos);
        }
    }
    let (ids, members) = found.into_iter().unzip();
    Ok(Located {
        host,
        owner,
        ids,
        members,
    })
}

/// One id per middle levels component of `O_n([k])` or `B_n([k])`.
pub fn middle_components(n: usize, k: usize, family: HostFamily) -> Result<Vec<MiddleComponentId>> {
    Ok(locate(n, ColorSet::initial(n, k)?.block(), family)?.ids)
}

/// The superstructure `M_n(k)` on the middle levels components of `O_n([k])`,
/// checked against `O_{k/2}`.
#[allow(non_snake_case)]
pub fn build_M(n: usize, k: usize) -> Result<SuperGraph> {
    build_super(n, ColorSet::initial(n, k)?.block(), HostFamily::Odd)
}

/// The superstructure `L_n(k)` on the middle levels components of `B_n([k])`,
/// checked against `B_{k/2}`.
#[allow(non_snake_case)]
pub fn build_L(n: usize, k: usize) -> Result<SuperGraph> {
    build_super(
        n,
        ColorSet::initial(n, k)?.block(),
        HostFamily::MiddleLevels,
    )
}

/// The superstructure for an arbitrary even color set.
pub fn build_super(n: usize, colors: Block, family: HostFamily) -> Result<SuperGraph> {
    let Located {
        host,
        owner,
        ids,
        members,
    } = locate(n, colors, family)?;
    let k = colors.len();
    let d = colors.max_element().expect("nonempty");
    let small = GroundSize::new(k - 1)?;

    // criterion (i): the involutions (a, d) acting on the components
    let mut involution_edges = BTreeSet::new();
    let mut consistent = true;
    for (pos, comp) in members.iter().enumerate() {
        for a in colors.without(d).iter() {
            let p = Perm::transposition(host.ground(), a, d)?;
            let image_owner = |x: usize| {
                host.index_of(apply_perm(&p, host.vertex(x)))
                    .and_then(|j| owner[j])
            };
            let other = image_owner(comp[0]);
            consistent &= comp.iter().all(|&x| image_owner(x) == other);
            match other {
                Some(q) if q != pos => {
                    involution_edges.insert((pos.min(q), pos.max(q)));
                }
                Some(_) => {}
                None => consistent = false,
            }
        }
    }

    // criterion (ii): from the names alone
    let images: Vec<Block> = ids
        .iter()
        .map(|id| match family {
            HostFamily::Odd => id.key,
            HostFamily::MiddleLevels => {
                let top = id.key.ground().get();
                id.key
                    .without(top)
                    .regrounded(small)
                    .expect("fits in [k-1]")
            }
        })
        .collect();
    let mut partition_edges = BTreeSet::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            let adjacent = match family {
                HostFamily::Odd => ids[i].key.is_disjoint(ids[j].key),
                HostFamily::MiddleLevels => {
                    let (a, b) = (images[i], images[j]);
                    a != b && (a.is_subset(b) || b.is_subset(a))
                }
            };
            if adjacent {
                partition_edges.insert((i, j));
            }
        }
    }
    let criteria_agree = consistent && involution_edges == partition_edges;

    let (target, label_kind) = match family {
        HostFamily::Odd => (FamilyId::Odd(k / 2), Some(LabelKind::Odd)),
        HostFamily::MiddleLevels => (FamilyId::MiddleLevels(k / 2), Some(LabelKind::Bipartite)),
    };
    let edges: Vec<(usize, usize)> = involution_edges.iter().copied().collect();
    let graph = LabeledGraph::from_parts(small, images.clone(), &edges, label_kind, None)
        .or_else(|_| LabeledGraph::from_parts(small, images.clone(), &edges, None, None))?;
    let target_graph = Arc::new(LabeledGraph::build(target)?);
    let graph_arc = Arc::new(graph.clone());
    let iso =
        VertexMap::from_block_fn(graph_arc, target_graph, MapKind::Isomorphism, Some).verified();
    let components = members
        .iter()
        .map(|c| c.iter().map(|&x| host.vertex(x)).collect())
        .collect();
    Ok(SuperGraph {
        family,
        n,
        colors,
        ids,
        components,
        graph,
        criteria_agree,
        target,
        iso,
    })
}

/// The subgraph of `O_n` at maximal distance `n − 1` from `v`.
#[derive(Clone, Debug)]
pub struct BottomLevelReport {
    pub n: usize,
    pub v: Block,
    pub graph: LabeledGraph,
    pub expected_copies: usize,
    pub copies: usize,
    /// Copies whose explicit map onto `B_{⌈n/2⌉}` verified.
    pub copies_verified: usize,
    /// Whether the copies are exactly the middle levels components of
    /// `O_n(v)` (n odd) or `O_n([2n − 1] − v)` (n even).
    pub matches_components: bool,
    pub superstructure: SuperGraph,
    pub passed: bool,
}

pub fn bottom_level(n: usize, v: Block) -> Result<BottomLevelReport> {
    if n < 2 {
        return param("bottom level needs n >= 2");
    }
    let o = LabeledGraph::build(FamilyId::Odd(n))?;
    let src = o
        .index_of(v)
        .ok_or_else(|| Error::Parameter(format!("{v} is not a vertex of O_{n}")))?;
    let dist = bfs_distances(&o, src);
    let level: Vec<usize> = (0..o.vertex_count())
        .filter(|&i| dist[i] == Some(n - 1))
        .collect();
    let graph = o.induced_subgraph(&level);
    let colors = if n % 2 == 1 { v } else { v.complement() };
    let superstructure = build_super(n, colors, HostFamily::Odd)?;

    let parts = crate::graphs::component_indices(&graph);
    let mut found: Vec<Vec<Block>> = parts
        .iter()
        .map(|c| c.iter().map(|&i| graph.vertex(i)).collect())
        .collect();
    found.sort();
    let mut expected_parts = superstructure.components.clone();
    expected_parts.sort();
    let matches_components = found == expected_parts;

    let mut copies_verified = 0;
    for blocks in &found {
        if let Ok(map) = morphisms::regular_component_to_middle(n, colors, blocks) {
            if map.status() == Verification::Pass
                && map.target().family() == Some(FamilyId::MiddleLevels(n.div_ceil(2)))
            {
                copies_verified += 1;
            }
        }
    }
    let half = (n / 2) as u64;
    let expected_copies: usize = binomial(2 * half - 1, half - 1)
        .try_into()
        .expect("desk-scale count");
    let copies = found.len();
    let passed = copies == expected_copies
        && copies_verified == copies
        && matches_components
        && superstructure.passed()
        && superstructure.target == FamilyId::Odd(n / 2);
    Ok(BottomLevelReport {
        n,
        v,
        graph,
        expected_copies,
        copies,
        copies_verified,
        matches_components,
        superstructure,
        passed,
    })
}

/// Census of [`bottom_level`] reports by choice of `v`, for checking that the
/// count does not depend on the vertex.
pub fn bottom_level_counts(n: usize) -> Result<BTreeMap<(usize, usize), usize>> {
    let o = LabeledGraph::build(FamilyId::Odd(n))?;
    let mut counts = BTreeMap::new();
    for &v in o.vertices() {
        let r = bottom_level(n, v)?;
        *counts
            .entry((r.graph.vertex_count(), r.copies))
            .or_insert(0) += 1;
    }
    Ok(counts)
}
