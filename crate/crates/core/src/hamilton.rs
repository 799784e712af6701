//! Paths and circuits, a backtracking Hamiltonian cycle search, and the
//! diagnostics of the lift-and-embed recursion
//! `O_{n−1} ← B_{n−1} ↪ O_n`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::remainder_graph;
use crate::error::{param, Error, Result};
use crate::graphs::{is_connected, Color, FamilyId, LabeledGraph};
use crate::morphisms::{embed_middle_in_odd, lift_circuit, LiftVariant, Verification};
use crate::superstructure::two_color_path;

/// A sequence of vertex indices in some graph, open or closed, with the
/// colors of its edges. A closed sequence also carries the closing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSeq {
    vertices: Vec<usize>,
    closed: bool,
    colors: Vec<Option<Color>>,
}

impl PathSeq {
    pub fn open(g: &LabeledGraph, vertices: Vec<usize>) -> Result<PathSeq> {
        PathSeq::build(g, vertices, false)
    }

    pub fn closed(g: &LabeledGraph, vertices: Vec<usize>) -> Result<PathSeq> {
        if vertices.len() < 3 {
            return param("a closed path needs at least three vertices");
        }
        PathSeq::build(g, vertices, true)
    }

    fn build(g: &LabeledGraph, vertices: Vec<usize>, closed: bool) -> Result<PathSeq> {
        if vertices.is_empty() {
            return param("empty path");
        }
        if let Some(&bad) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return param(format!("vertex index {bad} out of range"));
        }
        let steps = if closed {
            vertices.len()
        } else {
            vertices.len() - 1
        };
        let mut colors = Vec::with_capacity(steps);
        for i in 0..steps {
            let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            let nb = g
                .edge(u, v)
                .ok_or_else(|| Error::Relation(format!("{} and {}", g.vertex(u), g.vertex(v))))?;
            colors.push(nb.color);
        }
        Ok(PathSeq {
            vertices,
            closed,
            colors,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Edge colors in traversal order.
    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// Whether every step is an edge of `g`.
    pub fn is_valid_in(&self, g: &LabeledGraph) -> bool {
        PathSeq::build(g, self.vertices.clone(), self.closed).is_ok_and(|p| p == *self)
    }
}

/// True iff `p` is a closed simple path through every vertex of `g`.
pub fn verify_cycle(g: &LabeledGraph, p: &PathSeq) -> bool {
    p.is_closed() && p.vertices().len() == g.vertex_count() && p.is_simple() && p.is_valid_in(g)
}

/// Limits for [`find_hamiltonian_cycle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_expansions: u64,
    pub max_time: Duration,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_expansions: 50_000_000,
            max_time: Duration::from_secs(60),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PathSeq),
    /// The search space was exhausted: there is no Hamiltonian cycle.
    None {
        reason: String,
    },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub expansions: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn cycle(&self) -> Option<&PathSeq> {
        match &self.outcome {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }
}

struct Search<'a> {
    g: &'a LabeledGraph,
    budget: SearchBudget,
    started: Instant,
    expansions: u64,
    out_of_budget: bool,
    rank: Vec<usize>,
    on_path: Vec<bool>,
    /// Neighbors of each vertex not yet on the path.
    free: Vec<usize>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.g.adjacent(a, b)
    }

    /// Edges still usable by an unvisited vertex `w`: to unvisited vertices
    /// and to the two path ends (both at `start` while the path is a single vertex).
    fn available(&self, w: usize, head: usize, start: usize) -> usize {
        self.free[w] + usize::from(self.adjacent(w, head)) + usize::from(self.adjacent(w, start))
    }

    fn visit(&mut self, x: usize) {
        self.on_path[x] = true;
        self.path.push(x);
        for nb in self.g.neighbors(x) {
            self.free[nb.index] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let x = self.path.pop().expect("nonempty path");
        self.on_path[x] = false;
        for nb in self.g.neighbors(x) {
            self.free[nb.index] += 1;
        }
    }

    /// The unvisited vertices together with the path ends stay connected.
    fn remainder_connected(&self, head: usize, start: usize) -> bool {
        let n = self.g.vertex_count();
        let remaining = n - self.path.len();
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![head];
        seen[head] = true;
        let mut reached = 0;
        let mut start_reached = head == start;
        while let Some(x) = stack.pop() {
            for nb in self.g.neighbors(x) {
                let y = nb.index;
                if seen[y] {
                    continue;
                }
                if y == start {
                    start_reached = true;
                    seen[y] = true;
                    continue;
                }
                if !self.on_path[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == remaining && start_reached
    }

    fn extend(&mut self) -> Option<Vec<usize>> {
        self.expansions += 1;
        if self.expansions > self.budget.max_expansions
            || (self.expansions.is_multiple_of(1024) && self.started.elapsed() > self.budget.max_time)
        {
            self.out_of_budget = true;
            return None;
        }
        let n = self.g.vertex_count();
        let start = self.path[0];
        let head = *self.path.last().expect("nonempty");
        if self.path.len() == n {
            return self.adjacent(head, start).then(|| self.path.clone());
        }
        // the previous head has just lost its role as a path end
        if self.path.len() >= 2 {
            let prev = self.path[self.path.len() - 2];
            for nb in self.g.neighbors(prev) {
                let w = nb.index;
                if !self.on_path[w] && self.available(w, head, start) < 2 {
                    return None;
                }
            }
        }
        if !self.remainder_connected(head, start) {
            return None;
        }
        let mut candidates: Vec<usize> = self
            .g
            .neighbors(head)
            .iter()
            .map(|nb| nb.index)
            .filter(|&w| !self.on_path[w])
            .collect();
        // a neighbor with only two usable edges must be entered now
        let forced: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&w| {
                self.available(w, head, start) == 2
                    && !(self.path.len() + 1 == n && self.adjacent(w, start))
            })
            .collect();
        match forced.len() {
            0 => {}
            1 => candidates = forced,
            _ => return None,
        }
        candidates.sort_by_key(|&w| (self.free[w], self.rank[w]));
        for w in candidates {
            self.visit(w);
            if let Some(found) = self.extend() {
                return Some(found);
            }
            self.unvisit();
            if self.out_of_budget {
                return None;
            }
        }
        None
    }
}

/// Backtracking search for a Hamiltonian cycle. Unvisited neighbors are tried
/// fewest-remaining-neighbors first, with ties broken by a seeded shuffle.
/// Branches are cut when some unvisited vertex keeps fewer than two usable
/// edges, when a neighbor of the path end is forced, or when the unvisited
/// vertices separate.
pub fn find_hamiltonian_cycle(g: &LabeledGraph, budget: SearchBudget) -> SearchReport {
    let started = Instant::now();
    let n = g.vertex_count();
    let finish = |outcome: SearchOutcome, expansions: u64| SearchReport {
        outcome,
        expansions,
        elapsed: started.elapsed(),
    };
    if n < 3 {
        return finish(
            SearchOutcome::None {
                reason: format!("{n} vertices cannot form a circuit"),
            },
            0,
        );
    }
    if !is_connected(g) {
        return finish(
            SearchOutcome::None {
                reason: "graph is disconnected".into(),
            },
            0,
        );
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) < 2) {
        return finish(
            SearchOutcome::None {
                reason: format!("vertex {} has degree {}", g.vertex(v), g.degree(v)),
            },
            0,
        );
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(budget.seed));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let start = (0..n)
        .min_by_key(|&v| (g.degree(v), rank[v]))
        .expect("nonempty");
    let mut search = Search {
        g,
        budget,
        started,
        expansions: 0,
        out_of_budget: false,
        rank,
        on_path: vec![false; n],
        free: (0..n).map(|v| g.degree(v)).collect(),
        path: Vec::with_capacity(n),
    };
    search.visit(start);
    let found = search.extend();
    let outcome = match found {
        Some(cycle) => {
            SearchOutcome::Found(PathSeq::closed(g, cycle).expect("search returns a valid circuit"))
        }
        None if search.out_of_budget => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::None {
            reason: "search space exhausted".into(),
        },
    };
    finish(outcome, search.expansions)
}

/// How the base cycle of the recursion was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseCycle {
    /// A Hamiltonian cycle of `O_{n−1}` lifted to `B_{n−1}`.
    Lifted { base_length: usize, single: bool },
    /// `O_{n−1}` has no Hamiltonian cycle; one was searched for in `B_{n−1}` directly.
    DirectInMiddle,
    /// No cycle of `B_{n−1}` could be obtained within the budget.
    Unavailable,
}

/// Diagnostics of the lift-and-embed recursion at level `n`.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub n: usize,
    /// Outcome of the search in `O_{n−1}`.
    pub base_search: SearchOutcome,
    pub base_cycle: BaseCycle,
    /// Circuits of `B_{n−1}` obtained from the lift (or direct search), by length.
    pub middle_circuits: Vec<usize>,
    /// Whether each circuit covers all of `B_{n−1}`.
    pub middle_hamiltonian: bool,
    /// Vertices of `O_n` covered by the embedded circuits.
    pub embedded_vertices: usize,
    pub order: usize,
    /// `|R_n^2|`, the vertices of `O_n` outside the embedded middle component.
    pub remainder_size: usize,
    pub remainder_odd: bool,
    /// Connectors built from the two deleted colors, one per embedded vertex.
    pub connectors: usize,
    /// Remainder vertices used as the middle of more than one connector.
    pub shared_connector_vertices: usize,
    /// Remainder vertices no connector reaches.
    pub unreached_remainder: usize,
    /// Whether every connector middle lies in the remainder graph.
    pub connectors_in_remainder: bool,
    /// A direct search in `O_n`, run when no lift is available.
    pub direct_search: Option<SearchOutcome>,
}

/// Runs the recursion diagnostics. Nothing here claims a Hamiltonian cycle of
/// `O_n`; the report lists what the embedded circuits and connectors cover.
pub fn recursion_pipeline(n: usize, budget: SearchBudget) -> Result<PipelineReport> {
    if n < 3 {
        return param("the recursion pipeline needs n >= 3");
    }
    let lower = LabeledGraph::build(FamilyId::Odd(n - 1))?;
    let base = find_hamiltonian_cycle(&lower, budget);
    let middle = LabeledGraph::build(FamilyId::MiddleLevels(n - 1))?;
    let mut circuits: Vec<Vec<usize>> = Vec::new();
    let mut direct_search = None;
    let base_cycle = match &base.outcome {
        SearchOutcome::Found(cycle) => {
            let lift = lift_circuit(n - 1, cycle)?;
            match lift.variant {
                LiftVariant::SingleCircuit(p) => {
                    circuits.push(p.vertices().to_vec());
                    BaseCycle::Lifted {
                        base_length: cycle.len(),
                        single: true,
                    }
                }
                LiftVariant::TwoCircuits(a, b) => {
                    circuits.push(a.vertices().to_vec());
                    circuits.push(b.vertices().to_vec());
                    BaseCycle::Lifted {
                        base_length: cycle.len(),
                        single: false,
                    }
                }
            }
        }
        _ => {
            let upper = LabeledGraph::build(FamilyId::Odd(n))?;
            direct_search = Some(find_hamiltonian_cycle(&upper, budget).outcome);
            match find_hamiltonian_cycle(&middle, budget).outcome {
                SearchOutcome::Found(p) => {
                    circuits.push(p.vertices().to_vec());
                    BaseCycle::DirectInMiddle
                }
                _ => BaseCycle::Unavailable,
            }
        }
    };
    let middle_hamiltonian =
        !circuits.is_empty() && circuits.iter().all(|c| c.len() == middle.vertex_count());

    let embed = embed_middle_in_odd(n - 1)?;
    if embed.status() != Verification::Pass {
        return Err(Error::Relation(
            "embedding of the middle levels graph failed".into(),
        ));
    }
    let upper = embed.target().clone();
    let mut covered = vec![false; upper.vertex_count()];
    for c in &circuits {
        for &x in c {
            covered[embed.image(x).expect("total embedding")] = true;
        }
    }
    let embedded_vertices = covered.iter().filter(|&&c| c).count();

    let remainder = remainder_graph(n, 2)?;
    let (a, b) = (2 * n - 2, 2 * n - 1);
    let mut hits = vec![0usize; upper.vertex_count()];
    let mut connectors = 0;
    let mut connectors_in_remainder = true;
    for (x, &is_covered) in covered.iter().enumerate() {
        if !is_covered {
            continue;
        }
        let path = two_color_path(n, upper.vertex(x), a, b)?;
        path.in_graph(&upper)?;
        connectors += 1;
        connectors_in_remainder &= remainder.graph.contains(path.middle());
        hits[upper.index_of(path.middle()).expect("vertex of O_n")] += 1;
    }
    let remainder_idx: Vec<usize> = remainder
        .graph
        .vertices()
        .iter()
        .map(|&v| upper.index_of(v).expect("remainder lies in O_n"))
        .collect();
    let shared_connector_vertices = remainder_idx.iter().filter(|&&i| hits[i] > 1).count();
    let unreached_remainder = remainder_idx.iter().filter(|&&i| hits[i] == 0).count();
    Ok(PipelineReport {
        n,
        base_search: base.outcome,
        base_cycle,
        middle_circuits: circuits.iter().map(Vec::len).collect(),
        middle_hamiltonian,
        embedded_vertices,
        order: upper.vertex_count(),
        remainder_size: remainder.graph.vertex_count(),
        remainder_odd: remainder.graph.vertex_count() % 2 == 1,
        connectors,
        shared_connector_vertices,
        unreached_remainder,
        connectors_in_remainder,
        direct_search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SearchBudget {
        SearchBudget {
            max_expansions: 1_000_000,
            max_time: Duration::from_secs(10),
            seed: 0,
        }
    }

    #[test]
    fn path_validation() {
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        assert!(PathSeq::open(&b2, vec![0, 1]).is_err() || b2.adjacent(0, 1));
        assert!(PathSeq::closed(&b2, vec![0, 1]).is_err());
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        assert!(matches!(
            PathSeq::open(&o3, vec![0, 0]),
            Err(Error::Relation(_))
        ));
    }

    #[test]
    fn odd_graph_three_has_no_hamiltonian_cycle() {
        let o3 = LabeledGraph::build(FamilyId::Odd(3)).unwrap();
        let r = find_hamiltonian_cycle(&o3, quick());
        assert!(matches!(r.outcome, SearchOutcome::None { .. }), "{r:?}");
        assert!(r.expansions <= 1_000_000);
    }

    #[test]
    fn six_cycle_is_its_own_hamiltonian_cycle() {
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        let r = find_hamiltonian_cycle(&b2, quick());
        let c = r.cycle().expect("found");
        assert!(verify_cycle(&b2, c));
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn odd_graph_four_is_hamiltonian() {
        let o4 = LabeledGraph::build(FamilyId::Odd(4)).unwrap();
        let r = find_hamiltonian_cycle(&o4, quick());
        let c = r.cycle().expect("found");
        assert_eq!(c.vertices().len(), 35);
        assert!(verify_cycle(&o4, c));
        // same seed, same cycle
        assert_eq!(find_hamiltonian_cycle(&o4, quick()).outcome, r.outcome);
    }

    #[test]
    fn verify_cycle_rejects_bad_sequences() {
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        let c = find_hamiltonian_cycle(&b2, quick())
            .cycle()
            .unwrap()
            .clone();
        let open = PathSeq::open(&b2, c.vertices().to_vec()).unwrap();
        assert!(!verify_cycle(&b2, &open));
        let mut repeated = c.vertices().to_vec();
        repeated.extend_from_slice(c.vertices());
        let twice = PathSeq::closed(&b2, repeated).unwrap();
        assert!(!twice.is_simple());
        assert!(!verify_cycle(&b2, &twice));
    }

    #[test]
    fn disconnected_and_tiny_graphs() {
        let b2 = LabeledGraph::build(FamilyId::MiddleLevels(2)).unwrap();
        let split =
            crate::decompose::delete_colors(&b2, crate::setcore::Block::full(b2.ground())).unwrap();
        assert!(matches!(
            find_hamiltonian_cycle(&split, quick()).outcome,
            SearchOutcome::None { .. }
        ));
        let b1 = LabeledGraph::build(FamilyId::MiddleLevels(1)).unwrap();
        assert!(matches!(
            find_hamiltonian_cycle(&b1, quick()).outcome,
            SearchOutcome::None { .. }
        ));
    }

    #[test]
    fn budget_is_respected() {
        let o5 = LabeledGraph::build(FamilyId::Odd(5)).unwrap();
        let tiny = SearchBudget {
            max_expansions: 10,
            ..quick()
        };
        let r = find_hamiltonian_cycle(&o5, tiny);
        assert_eq!(r.outcome, SearchOutcome::BudgetExhausted);
        assert!(r.expansions <= 11);
    }

    #[test]
    fn pipeline_at_four_falls_back() {
        let r = recursion_pipeline(4, quick()).unwrap();
        assert!(matches!(r.base_search, SearchOutcome::None { .. }));
        assert_eq!(r.base_cycle, BaseCycle::DirectInMiddle);
        assert_eq!(r.middle_circuits, vec![20]);
        assert_eq!(
            (r.embedded_vertices, r.remainder_size, r.order),
            (20, 15, 35)
        );
        assert!(r.remainder_odd && r.connectors_in_remainder);
        assert!(matches!(r.direct_search, Some(SearchOutcome::Found(_))));
    }

    #[test]
    fn pipeline_at_five_lifts_a_single_circuit() {
        let r = recursion_pipeline(5, quick()).unwrap();
        assert_eq!(
            r.base_cycle,
            BaseCycle::Lifted {
                base_length: 35,
                single: true
            }
        );
        assert_eq!(r.middle_circuits, vec![70]);
        assert!(r.middle_hamiltonian);
        assert_eq!(
            (r.embedded_vertices, r.remainder_size, r.order),
            (70, 56, 126)
        );
        assert_eq!(r.connectors, 70);
        assert!(r.connectors_in_remainder);
        assert!(!r.remainder_odd);
    }
}
