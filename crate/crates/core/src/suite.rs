//! Named verification suites. Each check carries a short statement of the
//! result it tests and reports pass, fail or skip with measured values.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::catalan::{
    central_parity_table, independent_orbit_excision, necklace_of, orbits, remainder_size_form,
    verify_difference_identity, verify_size_identity,
};
use crate::decompose::{
    classify_components, delete_colors, expected_census, middle_component_census,
    verify_disjointness, ColorDeletion, ColorSet, ComponentSignature, HostFamily,
};
use crate::error::{Error, Result};
use crate::graphs::{degree_profile, verify_distance_formula, DegreeClass, FamilyId, LabeledGraph};
use crate::morphisms::{
    biregular_cross_iso, biregular_internal_iso, color_swap_iso, cover_map, kappa,
    kappa_preserves_labels, verify_cover, Verification,
};
use crate::setcore::{catalan_fourth_convolution, k_subsets_of, Block};
use crate::superstructure::{bottom_level, build_L, build_M};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Covers,
    Decompose,
    Isomorphisms,
    Superstructure,
    Identities,
    Distance,
    Orbits,
    Coxeter,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Covers,
        Suite::Decompose,
        Suite::Isomorphisms,
        Suite::Superstructure,
        Suite::Identities,
        Suite::Distance,
        Suite::Orbits,
        Suite::Coxeter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Covers => "covers",
            Suite::Decompose => "decompose",
            Suite::Isomorphisms => "isomorphisms",
            Suite::Superstructure => "superstructure",
            Suite::Identities => "identities",
            Suite::Distance => "distance",
            Suite::Orbits => "orbits",
            Suite::Coxeter => "coxeter",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    /// The mathematical statement being tested.
    pub reference: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id_width = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let ref_width = self
            .checks
            .iter()
            .map(|c| c.reference.len())
            .max()
            .unwrap_or(9)
            .max(9);
        writeln!(
            f,
            "{:<4}  {:<id_width$}  {:<ref_width$}  detail",
            "stat", "check", "reference"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<4}  {:<id_width$}  {:<ref_width$}  {}",
                c.status, c.id, c.reference, c.detail
            )?;
        }
        let total = self.checks.len();
        write!(
            f,
            "suite {}: {} checks, {} failed, {} skipped",
            self.suite,
            total,
            self.failures(),
            self.checks
                .iter()
                .filter(|c| c.status == Status::Skip)
                .count()
        )
    }
}

const DOUBLE_COVER: &str = "B(n,k) is the bipartite double cover of K(n,k)";
const KAPPA: &str = "complementation is a label-preserving automorphism of B_n";
const CENSUS: &str = "component census of O_n minus k colors";
const MIDDLE_CENSUS: &str = "regular components of O_n(k), B_n(k) are middle levels graphs";
const DISJOINT: &str = "block components for distinct T are disjoint and disconnected";
const REMAINDER: &str = "R_n^k is the unique (n, n-k)-biregular component";
const COLOR_SWAP: &str = "O_n(S) and O_n(T) are isomorphic when |S| = |T|";
const INTERNAL: &str = "components of O_n(k) with |T1| = |T2| are isomorphic";
const CROSS: &str = "biregular components with equal degrees are isomorphic";
const SUPER_M: &str = "middle levels components of O_n([k]) form O_{k/2}";
const SUPER_L: &str = "middle levels components of B_n([k]) form B_{k/2}";
const BOTTOM: &str = "vertices at distance n-1 form copies of B_{ceil(n/2)}";
const SIZE: &str = "|V(O_n)| = (2n-1) c_{n-1}";
const DIFFERENCE: &str = "|V(B_n)| - |R_{n+1}^2| = c_n";
const REMAINDER_FORM: &str = "|R_{n+1}^2| = C(2n, n-1)";
const PARITY: &str = "C(2n-1, n-1) is odd exactly for n a power of 2";
const FOURTH: &str = "fourth Catalan convolution is an integer";
const DISTANCE: &str = "distance in O_n from the intersection size; diameter n-1";
const ORBITS: &str = "rotation orbits of O_n are counted by c_{n-1}";
const NECKLACES: &str = "canonical necklaces name the rotation orbits";
const COXETER: &str = "deleting an independent orbit of O_4 leaves the Coxeter graph";
const EXCISION: &str = "cubic excisions use exactly C_n^(4) orbits";

/// Parameters at which the decomposition and isomorphism checks run.
pub const DECOMPOSITION_CASES: [(usize, usize); 8] = [
    (3, 2),
    (4, 2),
    (5, 2),
    (6, 2),
    (5, 4),
    (6, 4),
    (4, 3),
    (5, 3),
];

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(
        &mut self,
        id: impl Into<String>,
        reference: &'static str,
        f: impl FnOnce() -> Result<(bool, String)>,
    ) {
        let started = Instant::now();
        let (status, detail) = match f() {
            Ok((ok, detail)) => (if ok { Status::Pass } else { Status::Fail }, detail),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        let ms = started.elapsed().as_millis();
        self.checks.push(Check {
            id: id.into(),
            reference,
            status,
            detail: format!("{detail} [{ms} ms]"),
        });
    }

    fn skip(&mut self, id: impl Into<String>, reference: &'static str, why: &str) {
        self.checks.push(Check {
            id: id.into(),
            reference,
            status: Status::Skip,
            detail: why.to_string(),
        });
    }
}

/// Runs a suite. `max_n` bounds the size parameter; each suite also applies
/// its own cap so every run stays small.
pub fn run_suite(suite: Suite, max_n: usize) -> RunReport {
    let mut r = Runner { checks: Vec::new() };
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    for s in suites {
        match s {
            Suite::Covers => covers(&mut r, max_n),
            Suite::Decompose => decompose(&mut r, max_n),
            Suite::Isomorphisms => isomorphisms(&mut r, max_n),
            Suite::Superstructure => superstructure(&mut r, max_n),
            Suite::Identities => identities(&mut r, max_n),
            Suite::Distance => distance(&mut r, max_n),
            Suite::Orbits => orbit_checks(&mut r, max_n),
            Suite::Coxeter => coxeter(&mut r, max_n),
            Suite::All => unreachable!("expanded above"),
        }
    }
    RunReport {
        suite: suite.name().to_string(),
        checks: r.checks,
    }
}

fn covers(r: &mut Runner, max_n: usize) {
    for n in 2..=max_n.min(6) {
        r.check(format!("cover B_{n} -> O_{n}"), DOUBLE_COVER, || {
            let rep = verify_cover(&cover_map(2 * n - 1, n - 1)?);
            Ok((
                rep.passed && rep.fiber_size == Some(2),
                format!("fiber {:?}", rep.fiber_size),
            ))
        });
    }
    for n in 1..=max_n.min(5) {
        r.check(format!("kappa on B_{n}"), KAPPA, || {
            let k = kappa(n)?;
            let labels = kappa_preserves_labels(n)?;
            Ok((
                k.status() == Verification::Pass && labels,
                format!("automorphism {:?}, labels kept {labels}", k.status()),
            ))
        });
    }
}

fn census_cases(max_n: usize) -> Vec<(usize, usize)> {
    DECOMPOSITION_CASES
        .iter()
        .copied()
        .filter(|&(n, _)| n <= max_n)
        .collect()
}

fn decompose(r: &mut Runner, max_n: usize) {
    let limit = max_n.min(6);
    for n in 2..=limit {
        for k in 1..=n {
            r.check(format!("census O_{n}({k})"), CENSUS, || {
                let cd = ColorDeletion::odd(n, ColorSet::canonical(n, k)?)?;
                let got = classify_components(&cd.graph).counts();
                let want = expected_census(FamilyId::Odd(n), n, k)?;
                Ok((got == want, format_census(&got)))
            });
        }
    }
    for n in 2..=limit.min(5) {
        for k in 1..n {
            r.check(format!("census B_{n}({k})"), CENSUS, || {
                let b = LabeledGraph::build(FamilyId::MiddleLevels(n))?;
                let d = delete_colors(&b, ColorSet::canonical(n, k)?.block())?;
                let got = classify_components(&d).counts();
                let want = expected_census(FamilyId::MiddleLevels(n), n, k)?;
                Ok((got == want, format_census(&got)))
            });
        }
    }
    for (n, k) in census_cases(max_n) {
        if k % 2 == 0 {
            r.check(
                format!("middle components O_{n}({k})"),
                MIDDLE_CENSUS,
                || {
                    let rep = middle_component_census(n, k, HostFamily::Odd)?;
                    Ok((
                        rep.passed,
                        format!("{} of {} verified", rep.isomorphisms_verified, rep.expected),
                    ))
                },
            );
        }
    }
    for (n, k) in [(4, 2), (5, 2), (5, 4), (6, 2), (6, 4)] {
        if n <= limit {
            r.check(
                format!("middle components B_{n}({k})"),
                MIDDLE_CENSUS,
                || {
                    let rep = middle_component_census(n, k, HostFamily::MiddleLevels)?;
                    Ok((
                        rep.passed,
                        format!("{} of {} verified", rep.isomorphisms_verified, rep.expected),
                    ))
                },
            );
        }
    }
    for n in 3..=limit.min(5) {
        for k in 1..=n {
            r.check(format!("disjointness O_{n}({k})"), DISJOINT, || {
                let rep = verify_disjointness(n, ColorSet::canonical(n, k)?)?;
                Ok((
                    rep.passed,
                    format!("{} pairs, {} swapped", rep.pairs_checked, rep.swapped_pairs),
                ))
            });
        }
    }
    for n in 3..=limit {
        for k in 1..n {
            r.check(format!("remainder R_{n}^{k}"), REMAINDER, || {
                let cd = ColorDeletion::odd(n, ColorSet::canonical(n, k)?)?;
                let census = classify_components(&cd.graph);
                let sig = ComponentSignature::from_degrees(n, n - k);
                let rem = crate::decompose::remainder_graph(n, k)?;
                let ok = census.count(sig) == 1
                    && degree_profile(&rem.graph).class
                        == DegreeClass::Biregular {
                            high: n,
                            low: n - k,
                        };
                Ok((ok, format!("{} vertices", rem.graph.vertex_count())))
            });
        }
    }
}

fn format_census(c: &std::collections::BTreeMap<ComponentSignature, usize>) -> String {
    c.iter()
        .map(|(s, n)| format!("{s}x{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn isomorphisms(r: &mut Runner, max_n: usize) {
    for (n, k) in census_cases(max_n) {
        r.check(format!("color swap O_{n}({k})"), COLOR_SWAP, || {
            let m = color_swap_iso(n, ColorSet::canonical(n, k)?, ColorSet::initial(n, k)?)?;
            Ok((
                m.status() == Verification::Pass,
                format!("{} vertices", m.source().vertex_count()),
            ))
        });
        r.check(format!("internal O_{n}({k})"), INTERNAL, || {
            let s = ColorSet::canonical(n, k)?.block();
            let (mut maps, mut failed) = (0, 0);
            for i in 0..=k {
                let ts = k_subsets_of(s, i);
                for &t2 in &ts[1..] {
                    let t1 = ts[0];
                    if t1 == s.difference(t2) {
                        continue;
                    }
                    maps += 1;
                    if biregular_internal_iso(n, k, t1, t2)?.status() != Verification::Pass {
                        failed += 1;
                    }
                }
            }
            Ok((failed == 0, format!("{maps} maps, {failed} failed")))
        });
        r.check(format!("cross O_{n}({k})"), CROSS, || {
            let s = ColorSet::canonical(n, k)?.block();
            let (mut maps, mut failed) = (0, 0);
            for i in 0..k.div_ceil(2) {
                // the (n - i, n - k + i) component is also the remainder R_{n-i}^{k-2i}
                let target_n = n - i;
                let target_k = k - 2 * i;
                let empty = Block::empty(ColorSet::canonical(target_n, target_k)?.block().ground());
                for t in k_subsets_of(s, i) {
                    maps += 1;
                    if biregular_cross_iso(n, k, t, target_n, target_k, empty)?.status()
                        != Verification::Pass
                    {
                        failed += 1;
                    }
                }
            }
            Ok((failed == 0, format!("{maps} maps, {failed} failed")))
        });
    }
}

fn superstructure(r: &mut Runner, max_n: usize) {
    for (n, k) in [(4, 4), (5, 4), (6, 6)] {
        if n > max_n.min(6) {
            r.skip(format!("M_{n}({k})"), SUPER_M, "above --max-n");
            continue;
        }
        r.check(format!("M_{n}({k})"), SUPER_M, || {
            let s = build_M(n, k)?;
            Ok((
                s.passed(),
                format!(
                    "{} components, criteria agree {}",
                    s.ids.len(),
                    s.criteria_agree
                ),
            ))
        });
    }
    for (n, k) in [(4, 2), (5, 4), (6, 4)] {
        if n > max_n.min(6) {
            r.skip(format!("L_{n}({k})"), SUPER_L, "above --max-n");
            continue;
        }
        r.check(format!("L_{n}({k})"), SUPER_L, || {
            let s = build_L(n, k)?;
            Ok((
                s.passed(),
                format!(
                    "{} components, criteria agree {}",
                    s.ids.len(),
                    s.criteria_agree
                ),
            ))
        });
    }
    for n in 2..=max_n.min(5) {
        r.check(format!("bottom level O_{n}"), BOTTOM, || {
            let g = crate::setcore::GroundSize::new(2 * n - 1)?;
            let v = Block::range(g, 1, n - 1)?;
            let rep = bottom_level(n, v)?;
            Ok((
                rep.passed,
                format!(
                    "{} vertices, {} copies",
                    rep.graph.vertex_count(),
                    rep.copies
                ),
            ))
        });
    }
}

fn identities(r: &mut Runner, max_n: usize) {
    let limit = max_n.clamp(1, 60);
    r.check(format!("size n<={limit}"), SIZE, || {
        let bad: Vec<usize> = (1..=limit)
            .filter(|&n| !verify_size_identity(n).is_ok_and(|x| x.passed))
            .collect();
        Ok((bad.is_empty(), format!("failures at {bad:?}")))
    });
    r.check(format!("difference n<={limit}"), DIFFERENCE, || {
        let bad: Vec<usize> = (1..=limit)
            .filter(|&n| !verify_difference_identity(n).is_ok_and(|x| x.passed))
            .collect();
        Ok((bad.is_empty(), format!("failures at {bad:?}")))
    });
    r.check(format!("remainder form n<={limit}"), REMAINDER_FORM, || {
        let bad: Vec<usize> = (1..=limit)
            .filter(|&n| !remainder_size_form(n).is_ok_and(|x| x.passed))
            .collect();
        Ok((bad.is_empty(), format!("failures at {bad:?}")))
    });
    let parity = limit.max(16);
    r.check(format!("parity n<={parity}"), PARITY, || {
        let bad: Vec<usize> = central_parity_table(parity)
            .into_iter()
            .filter(|t| t.1 != t.2)
            .map(|t| t.0)
            .collect();
        Ok((bad.is_empty(), format!("mismatches at {bad:?}")))
    });
    let fourth = limit.max(40);
    r.check(format!("C^(4) integral 3..={fourth}"), FOURTH, || {
        let bad: Vec<usize> = (3..=fourth)
            .filter(|&n| catalan_fourth_convolution(n as u64).is_err())
            .collect();
        Ok((bad.is_empty(), format!("non-integral at {bad:?}")))
    });
}

fn distance(r: &mut Runner, max_n: usize) {
    for n in 2..=max_n.min(5) {
        r.check(format!("distance O_{n}"), DISTANCE, || {
            let rep = verify_distance_formula(n)?;
            Ok((
                rep.passed,
                format!("{} pairs, diameter {}", rep.pairs_checked, rep.diameter),
            ))
        });
    }
}

fn orbit_checks(r: &mut Runner, max_n: usize) {
    for n in 2..=max_n.min(7) {
        r.check(format!("orbits O_{n}"), ORBITS, || {
            let o = orbits(n)?;
            Ok((o.count_matches_catalan(), format!("{} orbits", o.count())))
        });
    }
    for n in 2..=max_n.min(6) {
        r.check(format!("necklaces O_{n}"), NECKLACES, || {
            let g = LabeledGraph::build(FamilyId::Odd(n))?;
            let o = orbits(n)?;
            let mut names = std::collections::BTreeSet::new();
            let mut constant = true;
            for orbit in &o.orbits {
                let first = necklace_of(g.vertex(orbit[0]), n)?.canonical;
                for &x in orbit {
                    constant &= necklace_of(g.vertex(x), n)?.canonical == first;
                }
                names.insert(first);
            }
            Ok((
                constant && names.len() == o.count(),
                format!("{} necklaces", names.len()),
            ))
        });
    }
}

fn coxeter(r: &mut Runner, max_n: usize) {
    r.check("excision O_4", COXETER, || {
        let rep = independent_orbit_excision(4)?;
        let ok = rep.target_size == Some(1)
            && rep.necessity_holds
            && !rep.cubic_examples.is_empty()
            && rep
                .cubic_examples
                .iter()
                .all(|c| (c.vertices, c.edges, c.girth) == (28, 42, Some(7)));
        let print = rep.cubic_examples.first().map_or("none".to_string(), |c| {
            let girth = c.girth.map_or("infinite".to_string(), |g| g.to_string());
            format!("({}, {}, 3-regular, girth {girth})", c.vertices, c.edges)
        });
        Ok((
            ok,
            format!("{} cubic, fingerprint {print}", rep.cubic_examples.len()),
        ))
    });
    r.check("excision O_3", EXCISION, || {
        let rep = independent_orbit_excision(3)?;
        Ok((
            rep.necessity_holds && rep.target_size == Some(0),
            format!("target {}", rep.target),
        ))
    });
    if max_n >= 5 {
        r.check("excision O_5", EXCISION, || {
            let rep = independent_orbit_excision(5)?;
            let at_target = rep.sizes.iter().find(|s| Some(s.size) == rep.target_size);
            Ok((
                rep.necessity_holds,
                format!(
                    "target {}, independent unions {}, cubic {}",
                    rep.target,
                    at_target.map_or(0, |s| s.independent_unions),
                    at_target.map_or(0, |s| s.cubic)
                ),
            ))
        });
    } else {
        r.skip("excision O_5", EXCISION, "above --max-n");
    }
}
