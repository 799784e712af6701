//! Color-deletion subgraphs `O_n(S)` and `B_n(S)`, the block components
//! `U_T ∪ W_T`, component censuses and remainder graphs.
//!
//! For `S ⊆ [2n−1]` and `T ⊆ S`,
//! `U_T = { u ∈ V(O_n) : u ∩ S = T }` and `W_T = { w ∈ V(O_n) : w ∩ S = S − T }`.
//! In `O_n(S)` the subgraph induced by `U_T ∪ W_T` is a component with degree
//! `n − k + |T|` on `U_T` and `n − |T|` on `W_T`, where `k = |S|`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{param, Error, Result};
use crate::graphs::{
    component_indices, degree_profile, DegreeClass, DegreeProfile, FamilyId, LabeledGraph,
};
use crate::morphisms::{self, Verification};
use crate::setcore::{binomial, k_subsets_of, Block, GroundSize};

/// A set of edge colors drawn from `[2n − 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(Block);

impl ColorSet {
    pub fn new(n: usize, colors: &[usize]) -> Result<ColorSet> {
        let ground = odd_ground(n)?;
        Ok(ColorSet(Block::from_elements(ground, colors)?))
    }

    pub fn from_block(n: usize, block: Block) -> Result<ColorSet> {
        if block.ground() != odd_ground(n)? {
            return param(format!("color set {block} is not over [{}]", 2 * n - 1));
        }
        Ok(ColorSet(block))
    }

    /// The top `k` colors `{2n − k, ..., 2n − 1}`.
    pub fn canonical(n: usize, k: usize) -> Result<ColorSet> {
        let ground = odd_ground(n)?;
        if k > ground.get() {
            return param(format!("cannot delete {k} of {} colors", ground.get()));
        }
        Ok(ColorSet(Block::range(ground, 2 * n - k, 2 * n - 1)?))
    }

    /// The first `k` colors `{1, ..., k}`.
    pub fn initial(n: usize, k: usize) -> Result<ColorSet> {
        let ground = odd_ground(n)?;
        if k > ground.get() {
            return param(format!("cannot delete {k} of {} colors", ground.get()));
        }
        Ok(ColorSet(Block::range(ground, 1, k)?))
    }

    pub fn block(self) -> Block {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn odd_ground(n: usize) -> Result<GroundSize> {
    if n == 0 {
        return param("n must be positive");
    }
    GroundSize::new(2 * n - 1)
}

/// Removes every edge whose color lies in `colors`.
pub fn delete_colors(g: &LabeledGraph, colors: Block) -> Result<LabeledGraph> {
    if !g.is_labeled() {
        return Err(Error::Unsupported(
            "color deletion needs an edge-colored graph".into(),
        ));
    }
    if colors.ground() != g.ground() {
        return param(format!("color set {colors} is not over {}", g.ground()));
    }
    Ok(g.filter_edges(|_, _, c| !c.is_some_and(|c| colors.contains(c as usize))))
}

/// Degree signature of a connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentSignature {
    /// A single vertex.
    Isolated,
    /// `d`-regular with `d >= 1`.
    Regular(usize),
    /// `(high, low)`-biregular, `high > low >= 1`.
    Biregular(usize, usize),
    Irregular,
}

impl ComponentSignature {
    pub fn from_profile(p: &DegreeProfile) -> ComponentSignature {
        match p.class {
            DegreeClass::Regular(0) => ComponentSignature::Isolated,
            DegreeClass::Regular(d) => ComponentSignature::Regular(d),
            DegreeClass::Biregular { high, low } => ComponentSignature::Biregular(high, low),
            DegreeClass::Irregular => ComponentSignature::Irregular,
        }
    }

    /// Signature of a `(a, b)`-biregular piece, normalized so the larger
    /// degree comes first; equal degrees give a regular signature.
    pub fn from_degrees(a: usize, b: usize) -> ComponentSignature {
        match (a.max(b), a.min(b)) {
            (_, 0) => ComponentSignature::Isolated,
            (hi, lo) if hi == lo => ComponentSignature::Regular(hi),
            (hi, lo) => ComponentSignature::Biregular(hi, lo),
        }
    }

    pub fn is_regular(self) -> bool {
        matches!(self, ComponentSignature::Regular(_))
    }
}

impl fmt::Display for ComponentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSignature::Isolated => write!(f, "Isolated"),
            ComponentSignature::Regular(d) => write!(f, "Regular({d})"),
            ComponentSignature::Biregular(a, b) => write!(f, "Biregular({a},{b})"),
            ComponentSignature::Irregular => write!(f, "Irregular"),
        }
    }
}

/// Every component of a graph grouped by degree signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCensus {
    /// Vertex index sets of the components, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Signature -> indices into `components`.
    pub entries: BTreeMap<ComponentSignature, Vec<usize>>,
}

impl ComponentCensus {
    pub fn count(&self, sig: ComponentSignature) -> usize {
        self.entries.get(&sig).map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.components.len()
    }

    /// Signature -> count.
    pub fn counts(&self) -> BTreeMap<ComponentSignature, usize> {
        self.entries.iter().map(|(s, v)| (*s, v.len())).collect()
    }

    pub fn regular_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|(s, _)| s.is_regular())
            .map(|(_, v)| v.len())
            .sum()
    }
}

pub fn classify_components(g: &LabeledGraph) -> ComponentCensus {
    let components = component_indices(g);
    let mut entries: BTreeMap<ComponentSignature, Vec<usize>> = BTreeMap::new();
    for (ci, members) in components.iter().enumerate() {
        let sub = g.induced_subgraph(members);
        let sig = ComponentSignature::from_profile(&degree_profile(&sub));
        entries.entry(sig).or_default().push(ci);
    }
    ComponentCensus {
        components,
        entries,
    }
}

/// The census predicted by the closed forms, for `O_n(k)` with `1 <= k <= n`
/// or `B_n(k)` with `1 <= k <= n − 1`.
///
/// In `O_n(k)` the pieces for `T` and `S − T` coincide, so each size `i < k/2`
/// contributes `C(k, i)` components of signature `(n − i, n − k + i)` and the
/// size `k/2` contributes `C(k, k/2) / 2` regular ones. In `B_n(k)` every
/// `A ⊆ S` gives its own component, doubling the off-diagonal counts.
pub fn expected_census(
    family: FamilyId,
    n: usize,
    k: usize,
) -> Result<BTreeMap<ComponentSignature, usize>> {
    let count = |k: usize, i: usize| -> usize {
        binomial(k as u64, i as u64)
            .try_into()
            .expect("desk-scale count")
    };
    let mut out = BTreeMap::new();
    match family {
        FamilyId::Odd(_) => {
            if k == 0 || k > n {
                return param(format!(
                    "closed-form census of O_{n}(k) needs 1 <= k <= n, got {k}"
                ));
            }
            for i in 0..=k / 2 {
                let sig = ComponentSignature::from_degrees(n - i, n - k + i);
                let c = if 2 * i == k {
                    count(k, i) / 2
                } else {
                    count(k, i)
                };
                *out.entry(sig).or_insert(0) += c;
            }
        }
        FamilyId::MiddleLevels(_) => {
            if k == 0 || k + 1 > n {
                return param(format!(
                    "closed-form census of B_{n}(k) needs 1 <= k <= n - 1, got {k}"
                ));
            }
            for j in 0..=k {
                let sig = ComponentSignature::from_degrees(n - j, n - k + j);
                *out.entry(sig).or_insert(0) += count(k, j);
            }
        }
        other => return param(format!("no closed-form census for {other}")),
    }
    Ok(out)
}

/// `O_n(S)` together with the `U_T` / `W_T` bookkeeping.
#[derive(Clone, Debug)]
pub struct ColorDeletion {
    pub n: usize,
    pub colors: ColorSet,
    pub graph: LabeledGraph,
}

impl ColorDeletion {
    pub fn odd(n: usize, colors: ColorSet) -> Result<ColorDeletion> {
        let base = LabeledGraph::build(FamilyId::Odd(n))?;
        let graph = delete_colors(&base, colors.block())?;
        Ok(ColorDeletion { n, colors, graph })
    }

    fn check_subset(&self, t: Block) -> Result<()> {
        if t.ground() != self.colors.block().ground() || !t.is_subset(self.colors.block()) {
            return param(format!(
                "{t} is not a subset of the deleted colors {}",
                self.colors
            ));
        }
        Ok(())
    }

    /// Indices of `U_T`.
    pub fn u_class(&self, t: Block) -> Result<Vec<usize>> {
        self.check_subset(t)?;
        let s = self.colors.block();
        Ok((0..self.graph.vertex_count())
            .filter(|&i| self.graph.vertex(i).intersection(s) == t)
            .collect())
    }

    /// Indices of `W_T`.
    pub fn w_class(&self, t: Block) -> Result<Vec<usize>> {
        self.check_subset(t)?;
        self.u_class(self.colors.block().difference(t))
    }

    /// The subgraph of `O_n(S)` induced by `U_T ∪ W_T`.
    pub fn block_component(&self, t: Block) -> Result<LabeledGraph> {
        let mut members = self.u_class(t)?;
        members.extend(self.w_class(t)?);
        if members.is_empty() {
            return param(format!("U_T and W_T are both empty for T = {t}"));
        }
        Ok(self.graph.induced_subgraph(&members))
    }

    /// The signature the block component for `T` should carry.
    pub fn expected_signature(&self, t: Block) -> ComponentSignature {
        let (n, k, i) = (self.n, self.colors.len(), t.len());
        ComponentSignature::from_degrees(n - i.min(n), (n + i).saturating_sub(k))
    }
}

/// The block component `U_T ∪ W_T` of `O_n(S)` and its degree profile.
pub fn block_component(
    n: usize,
    colors: ColorSet,
    t: Block,
) -> Result<(LabeledGraph, DegreeProfile)> {
    let cd = ColorDeletion::odd(n, colors)?;
    let g = cd.block_component(t)?;
    let p = degree_profile(&g);
    Ok((g, p))
}

/// The `(n, n − k)`-biregular component of `O_n(k)`: the `T = ∅` block for the
/// canonical colors `{2n − k, ..., 2n − 1}`.
#[derive(Clone, Debug)]
pub struct RemainderGraph {
    pub n: usize,
    pub k: usize,
    pub colors: ColorSet,
    pub graph: LabeledGraph,
}

pub fn remainder_graph(n: usize, k: usize) -> Result<RemainderGraph> {
    if !(0 < k && k < n) {
        return param(format!("remainder graph R_{n}^{k} needs 0 < k < n"));
    }
    let colors = ColorSet::canonical(n, k)?;
    let cd = ColorDeletion::odd(n, colors)?;
    let graph = cd.block_component(Block::empty(colors.block().ground()))?;
    Ok(RemainderGraph {
        n,
        k,
        colors,
        graph,
    })
}

/// Result of checking pairwise separation of the block components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessReport {
    pub n: usize,
    pub colors: ColorSet,
    pub pairs_checked: usize,
    /// Complementary half-size pairs where `U` and `W` swap.
    pub swapped_pairs: usize,
    /// Pairs with disjoint, mutually unreachable vertex sets.
    pub separated_pairs: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// For every pair `T1 ≠ T2 ⊆ S` of equal size: complementary half-size pairs
/// have `U_{T1} = W_{T2}` and `W_{T1} = U_{T2}`; every other pair has disjoint
/// vertex sets lying in different components of `O_n(S)`.
pub fn verify_disjointness(n: usize, colors: ColorSet) -> Result<DisjointnessReport> {
    let cd = ColorDeletion::odd(n, colors)?;
    let comp_of = component_lookup(&cd.graph);
    let s = colors.block();
    let k = s.len();
    let mut report = DisjointnessReport {
        n,
        colors,
        pairs_checked: 0,
        swapped_pairs: 0,
        separated_pairs: 0,
        passed: true,
        failure: None,
    };
    let fail = |report: &mut DisjointnessReport, msg: String| {
        if report.passed {
            report.passed = false;
            report.failure = Some(msg);
        }
    };
    for i in 0..=k {
        let subsets = k_subsets_of(s, i);
        for (a, &t1) in subsets.iter().enumerate() {
            for &t2 in &subsets[a + 1..] {
                report.pairs_checked += 1;
                let (u1, w1) = (cd.u_class(t1)?, cd.w_class(t1)?);
                let (u2, w2) = (cd.u_class(t2)?, cd.w_class(t2)?);
                if 2 * i == k && t1.is_disjoint(t2) {
                    if u1 == w2 && w1 == u2 {
                        report.swapped_pairs += 1;
                    } else {
                        fail(&mut report, format!("T1={t1}, T2={t2}: U/W do not swap"));
                    }
                    continue;
                }
                let first: Vec<usize> = u1.into_iter().chain(w1).collect();
                let second: Vec<usize> = u2.into_iter().chain(w2).collect();
                let overlap = first.iter().any(|x| second.contains(x));
                let comps_first: Vec<usize> = first.iter().map(|&x| comp_of[x]).collect();
                let joined = second.iter().any(|y| comps_first.contains(&comp_of[*y]));
                if overlap {
                    fail(
                        &mut report,
                        format!("T1={t1}, T2={t2}: vertex sets intersect"),
                    );
                } else if joined {
                    fail(
                        &mut report,
                        format!("T1={t1}, T2={t2}: connected in O_n(S)"),
                    );
                } else {
                    report.separated_pairs += 1;
                }
            }
        }
    }
    Ok(report)
}

pub(crate) fn component_lookup(g: &LabeledGraph) -> Vec<usize> {
    let mut comp_of = vec![0; g.vertex_count()];
    for (ci, members) in component_indices(g).iter().enumerate() {
        for &v in members {
            comp_of[v] = ci;
        }
    }
    comp_of
}

/// Which family a middle-levels census is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HostFamily {
    Odd,
    MiddleLevels,
}

impl HostFamily {
    pub fn family(self, n: usize) -> FamilyId {
        match self {
            HostFamily::Odd => FamilyId::Odd(n),
            HostFamily::MiddleLevels => FamilyId::MiddleLevels(n),
        }
    }
}

/// Regular components of `O_n(k)` or `B_n(k)` and their isomorphisms onto
/// `B_{n − k/2}`.
#[derive(Clone, Debug)]
pub struct MiddleCensusReport {
    pub family: HostFamily,
    pub n: usize,
    pub k: usize,
    pub expected: usize,
    pub found: usize,
    pub component_sizes: Vec<usize>,
    /// Components whose explicit map onto `B_{n − k/2}` verified as an isomorphism.
    pub isomorphisms_verified: usize,
    pub passed: bool,
}

/// Counts the regular components after deleting the top `k` colors and maps
/// each onto `B_{n − k/2}` with the explicit proof maps, verifying every map.
pub fn middle_component_census(
    n: usize,
    k: usize,
    family: HostFamily,
) -> Result<MiddleCensusReport> {
    if k == 0 || k % 2 == 1 {
        return param(format!(
            "middle levels census needs an even positive k, got {k}"
        ));
    }
    let half_binom: usize = binomial(k as u64 - 1, k as u64 / 2 - 1)
        .try_into()
        .expect("desk-scale count");
    let (host, expected) = match family {
        HostFamily::Odd => {
            if k > 2 * n - 2 {
                return param(format!("O_{n}({k}) has no regular components"));
            }
            (FamilyId::Odd(n), half_binom)
        }
        HostFamily::MiddleLevels => {
            if k >= n {
                return param(format!("B_{n}({k}) needs k < n"));
            }
            (FamilyId::MiddleLevels(n), 2 * half_binom)
        }
    };
    let base = LabeledGraph::build(host)?;
    let colors = ColorSet::canonical(n, k)?;
    let deleted = Arc::new(delete_colors(&base, colors.block())?);
    let census = classify_components(&deleted);
    let m = n - k / 2;
    let regular = census
        .entries
        .get(&ComponentSignature::Regular(m))
        .cloned()
        .unwrap_or_default();
    let mut report = MiddleCensusReport {
        family,
        n,
        k,
        expected,
        found: census.regular_count(),
        component_sizes: Vec::new(),
        isomorphisms_verified: 0,
        passed: false,
    };
    for ci in regular {
        let members = &census.components[ci];
        report.component_sizes.push(members.len());
        let blocks: Vec<Block> = members.iter().map(|&i| deleted.vertex(i)).collect();
        let map = match family {
            HostFamily::Odd => morphisms::regular_component_to_middle(n, colors.block(), &blocks)?,
            HostFamily::MiddleLevels => {
                morphisms::middle_levels_component_to_middle(n, colors.block(), &blocks)?
            }
        };
        if map.status() == Verification::Pass {
            report.isomorphisms_verified += 1;
        }
    }
    report.passed = report.found == expected
        && report.isomorphisms_verified == expected
        && census.regular_count() == census.count(ComponentSignature::Regular(m));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(m: usize, e: &[usize]) -> Block {
        Block::from_elements(GroundSize::new(m).unwrap(), e).unwrap()
    }

    fn census_of(n: usize, colors: &[usize]) -> BTreeMap<ComponentSignature, usize> {
        let cd = ColorDeletion::odd(n, ColorSet::new(n, colors).unwrap()).unwrap();
        classify_components(&cd.graph).counts()
    }

    use ComponentSignature::{Biregular, Isolated, Regular};

    #[test]
    fn delete_colors_examples() {
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        let d = delete_colors(&o3, blk(5, &[4, 5])).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (10, 9));
        let same = delete_colors(&o3, Block::empty(o3.ground())).unwrap();
        assert_eq!(same.with_family(o3.family()), o3);
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        let e = delete_colors(&b2, blk(3, &[1, 2, 3])).unwrap();
        assert_eq!((e.vertex_count(), e.edge_count()), (6, 0));
        let k = LabeledGraph::build(FamilyId::Kneser { n: 6, k: 2 }).unwrap();
        assert!(matches!(
            delete_colors(&k, blk(6, &[1])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn deletion_composes_as_union() {
        let o4 = LabeledGraph::build(FamilyId::Odd(4)).unwrap();
        let (s, t) = (blk(7, &[1, 5]), blk(7, &[5, 6, 2]));
        let twice = delete_colors(&delete_colors(&o4, s).unwrap(), t).unwrap();
        assert_eq!(twice, delete_colors(&o4, s.union(t)).unwrap());
    }

    #[test]
    fn block_component_examples() {
        let s = ColorSet::new(3, &[4, 5]).unwrap();
        let (cycle, p) = block_component(3, s, blk(5, &[4])).unwrap();
        assert_eq!(cycle.vertex_count(), 6);
        assert_eq!(p.class, DegreeClass::Regular(2));
        assert_eq!(crate::graphs::girth(&cycle), Some(6));

        let (star, p) = block_component(3, s, Block::empty(s.block().ground())).unwrap();
        assert_eq!(star.vertex_count(), 4);
        assert_eq!(p.class, DegreeClass::Biregular { high: 3, low: 1 });
        let (hi, _) = p.sides.unwrap();
        assert_eq!(star.vertex(hi[0]), blk(5, &[4, 5]));

        // k = n: the T = ∅ block is the single vertex [5] − S
        let s = ColorSet::new(3, &[1, 2, 3]).unwrap();
        let (single, p) = block_component(3, s, Block::empty(s.block().ground())).unwrap();
        assert_eq!(single.vertices(), &[blk(5, &[4, 5])]);
        assert_eq!(ComponentSignature::from_profile(&p), Isolated);

        assert!(block_component(3, ColorSet::new(3, &[4, 5]).unwrap(), blk(5, &[1])).is_err());
    }

    #[test]
    fn block_components_match_their_predicted_signature() {
        for n in 2..=5 {
            for k in 1..=n {
                let cd = ColorDeletion::odd(n, ColorSet::canonical(n, k).unwrap()).unwrap();
                let comp_of = component_lookup(&cd.graph);
                for i in 0..=k {
                    for t in k_subsets_of(cd.colors.block(), i) {
                        let g = cd.block_component(t).unwrap();
                        let sig = ComponentSignature::from_profile(&degree_profile(&g));
                        assert_eq!(sig, cd.expected_signature(t), "n={n} k={k} T={t}");
                        // connected: every member in one component of O_n(S)
                        let mut members = cd.u_class(t).unwrap();
                        members.extend(cd.w_class(t).unwrap());
                        assert!(members.iter().all(|&x| comp_of[x] == comp_of[members[0]]));
                        assert!(crate::graphs::is_connected(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn u_classes_partition_the_vertices() {
        for (n, k) in [(3, 2), (4, 3), (5, 4), (5, 2)] {
            let cd = ColorDeletion::odd(n, ColorSet::canonical(n, k).unwrap()).unwrap();
            let mut seen = vec![0; cd.graph.vertex_count()];
            for i in 0..=k {
                for t in k_subsets_of(cd.colors.block(), i) {
                    for x in cd.u_class(t).unwrap() {
                        seen[x] += 1;
                    }
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            census_of(3, &[4, 5]),
            BTreeMap::from([(Regular(2), 1), (Biregular(3, 1), 1)])
        );
        assert_eq!(
            census_of(5, &[6, 7, 8, 9]),
            BTreeMap::from([(Regular(3), 3), (Biregular(4, 2), 4), (Biregular(5, 1), 1)])
        );
        let odd_k = census_of(4, &[5, 6, 7]);
        assert!(odd_k.keys().all(|s| !s.is_regular()));
        assert_eq!(
            odd_k,
            BTreeMap::from([(Biregular(4, 1), 1), (Biregular(3, 2), 3)])
        );
    }

    #[test]
    fn census_matches_closed_form() {
        for n in 2..=6 {
            for k in 1..=n {
                let colors: Vec<usize> = (2 * n - k..2 * n).collect();
                let got = census_of(n, &colors);
                let want = expected_census(FamilyId::Odd(n), n, k).unwrap();
                assert_eq!(got, want, "O_{n}({k})");
                if k % 2 == 1 {
                    assert!(got.keys().all(|s| !s.is_regular()), "odd k={k}");
                }
            }
        }
        for n in 2..=5 {
            for k in 1..n {
                let b = LabeledGraph::build(FamilyId::MiddleLevels(n)).unwrap();
                let d = delete_colors(&b, ColorSet::canonical(n, k).unwrap().block()).unwrap();
                let want = expected_census(FamilyId::MiddleLevels(n), n, k).unwrap();
                assert_eq!(classify_components(&d).counts(), want, "B_{n}({k})");
            }
        }
        assert!(expected_census(FamilyId::Odd(3), 3, 4).is_err());
        assert!(expected_census(FamilyId::Kneser { n: 6, k: 2 }, 6, 2).is_err());
    }

    #[test]
    fn census_does_not_depend_on_which_colors_are_deleted() {
        for n in 3..=5 {
            for k in 1..=n {
                let canonical: Vec<usize> = (2 * n - k..2 * n).collect();
                let reference = census_of(n, &canonical);
                for t in k_subsets_of(Block::full(GroundSize::new(2 * n - 1).unwrap()), k) {
                    assert_eq!(census_of(n, &t.elements()), reference, "n={n} S={t}");
                }
            }
        }
    }

    #[test]
    fn remainder_graph_sizes() {
        for (n, size) in [(3, 4), (4, 15), (5, 56)] {
            let r = remainder_graph(n, 2).unwrap();
            assert_eq!(r.graph.vertex_count(), size);
            assert_eq!(
                degree_profile(&r.graph).class,
                DegreeClass::Biregular {
                    high: n,
                    low: n - 2
                }
            );
        }
        assert!(remainder_graph(3, 3).is_err());
        assert!(remainder_graph(3, 0).is_err());
    }

    #[test]
    fn remainder_graph_is_the_unique_component_of_its_signature() {
        for n in 3..=6 {
            for k in 1..n {
                let r = remainder_graph(n, k).unwrap();
                let cd = ColorDeletion::odd(n, r.colors).unwrap();
                let census = classify_components(&cd.graph);
                let sig = ComponentSignature::from_degrees(n, n - k);
                assert_eq!(census.count(sig), 1, "n={n} k={k}");
                let ci = census.entries[&sig][0];
                let blocks: Vec<Block> = census.components[ci]
                    .iter()
                    .map(|&i| cd.graph.vertex(i))
                    .collect();
                assert_eq!(blocks, r.graph.vertices());
            }
        }
    }

    #[test]
    fn remainder_size_closed_form() {
        for n in 2..=6u64 {
            let r = remainder_graph(n as usize + 1, 2).unwrap();
            let structural = num_bigint::BigUint::from(r.graph.vertex_count());
            assert_eq!(structural, binomial(2 * n, n - 1));
            assert_eq!(
                binomial(2 * n + 1, n),
                binomial(2 * n, n - 1) + binomial(2 * n - 1, n - 1) * 2u32
            );
        }
    }

    #[test]
    fn disjointness_examples() {
        let r = verify_disjointness(4, ColorSet::new(4, &[5, 6, 7]).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.swapped_pairs, 0);

        let r = verify_disjointness(4, ColorSet::new(4, &[6, 7]).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.swapped_pairs, 1);
        let cd = ColorDeletion::odd(4, ColorSet::new(4, &[6, 7]).unwrap()).unwrap();
        assert_eq!(
            cd.u_class(blk(7, &[6])).unwrap(),
            cd.w_class(blk(7, &[7])).unwrap()
        );

        let r = verify_disjointness(5, ColorSet::new(5, &[6, 7, 8, 9]).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.swapped_pairs, 3);
        let cd = ColorDeletion::odd(5, ColorSet::new(5, &[6, 7, 8, 9]).unwrap()).unwrap();
        let comp_of = component_lookup(&cd.graph);
        let a = cd.u_class(blk(9, &[6, 7])).unwrap();
        let b = cd.u_class(blk(9, &[6, 8])).unwrap();
        assert!(a.iter().all(|x| !b.contains(x)));
        assert_ne!(comp_of[a[0]], comp_of[b[0]]);
    }

    #[test]
    fn middle_census_examples() {
        let r = middle_component_census(4, 2, HostFamily::Odd).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.found, 1);
        assert_eq!(r.component_sizes, vec![20]);

        let r = middle_component_census(5, 4, HostFamily::Odd).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!((r.found, r.isomorphisms_verified), (3, 3));
        assert!(r.component_sizes.iter().all(|&s| s == 20));

        let r = middle_component_census(4, 2, HostFamily::MiddleLevels).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.found, 2);
        assert_eq!(r.component_sizes, vec![20, 20]);

        assert!(middle_component_census(4, 3, HostFamily::Odd).is_err());
    }
}
