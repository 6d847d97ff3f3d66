//! Structural checks on finished decoration graphs and batch comparison
//! against the trail oracle.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_decoration_graph, BuildLimits, DecorationGraph};
use crate::laurent::ExpMonomial;
use crate::root_data::RootDatum;
use crate::trails::{enumerate_trails, trail_from_ds};
use crate::word::{random_words, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub violations: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check(name: &'static str, violations: Vec<String>) -> Check {
    Check { name, violations }
}

/// The graph-level invariants. The exponent checks only make sense for a
/// minuscule node; on other nodes they are skipped.
pub fn graph_invariants(dg: &DecorationGraph) -> Result<Vec<Check>> {
    let word = dg.word();
    let n = word.len();
    let node = dg.node();
    let highest = word.highest_term(node)?;
    let lowest = word.lowest_term(node)?;
    let verts = dg.vertices();

    let mut checks = Vec::new();
    let sources = dg.sources();
    checks.push(check(
        "unique source is t_k",
        if sources == vec![&highest] {
            vec![]
        } else {
            vec![format!("sources {:?}", render_all(&sources))]
        },
    ));
    let sinks = dg.sinks();
    checks.push(check(
        "unique sink is the lowest term",
        if sinks == vec![&lowest] {
            vec![]
        } else {
            vec![format!("sinks {:?}", render_all(&sinks))]
        },
    ));
    checks.push(check(
        "acyclic",
        if dg.is_acyclic() {
            vec![]
        } else {
            vec!["cycle found".into()]
        },
    ));

    let mut by_src: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for e in dg.edges() {
        by_src.entry(e.src).or_default().push((e.dst, e.label));
    }
    let reaches = |from: usize, to: usize| {
        by_src
            .get(&from)
            .is_some_and(|out| out.iter().any(|&(d, _)| d == to))
    };
    let mut diamond = Vec::new();
    for (&v, out) in &by_src {
        for (a, &(da, ja)) in out.iter().enumerate() {
            for &(db, jb) in &out[a + 1..] {
                if da == db {
                    continue;
                }
                let meet = verts[v]
                    .combine(&word.a_monomial(ja)?, -1)?
                    .combine(&word.a_monomial(jb)?, -1)?;
                let ok = dg
                    .vertex_index(&meet)
                    .is_some_and(|m| reaches(da, m) && reaches(db, m));
                if !ok {
                    diamond.push(format!("{} via {ja},{jb}", verts[v]));
                }
            }
        }
    }
    checks.push(check("diamond completion", diamond));

    if dg.is_minuscule() {
        let mut range = Vec::new();
        let mut pair = Vec::new();
        let mut positive = Vec::new();
        let mut last_slot = Vec::new();
        let mut nonneg = Vec::new();
        for m in verts {
            if m.exps().iter().any(|e| e.abs() > 1) {
                range.push(m.to_string());
            }
            for j in 1..=n {
                let jp = word.jplus(j);
                if m.exp(j) == 1 && jp <= n && m.exp(jp) == -1 {
                    pair.push(format!("{m} at {j}"));
                }
                if m.exp(j) == 1 && jp == n + 1 && *m != lowest {
                    last_slot.push(format!("{m} at {j}"));
                }
            }
            if m.exps().iter().all(|&e| e <= 0) {
                positive.push(m.to_string());
            }
            if m.exps().iter().all(|&e| e >= 0) && *m != highest {
                nonneg.push(m.to_string());
            }
        }
        checks.push(check("exponents in {-1,0,1}", range));
        checks.push(check("no 1 at j with -1 at j+", pair));
        checks.push(check(
            "1 at a last occurrence only in the lowest term",
            last_slot,
        ));
        checks.push(check("some exponent positive", positive));
        checks.push(check("only t_k is nonnegative", nonneg));

        let mut decreasing = Vec::new();
        let stats: Vec<i64> = verts
            .iter()
            .map(|m| trail_from_ds(word, node, m.exps()).map(|t| t.order_statistic()))
            .collect::<Result<_>>()?;
        for e in dg.edges() {
            if stats[e.dst] >= stats[e.src] {
                decreasing.push(format!("{} -> {}", verts[e.src], verts[e.dst]));
            }
        }
        checks.push(check("trail statistic L decreases along edges", decreasing));
    }
    Ok(checks)
}

fn render_all(ms: &[&ExpMonomial]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub word: String,
    pub node: usize,
    pub vertices: usize,
    pub edges: usize,
    pub trails: usize,
    pub dg_equals_oracle: bool,
    pub unit_coefficients: bool,
    pub bijection: bool,
    pub checks: Vec<Check>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.dg_equals_oracle
            && self.unit_coefficients
            && self.bijection
            && self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.dg_equals_oracle {
            out.push("DG vertex set differs from the oracle".to_string());
        }
        if !self.unit_coefficients {
            out.push("oracle produced a repeated monomial".to_string());
        }
        if !self.bijection {
            out.push("trail/monomial correspondence broken".to_string());
        }
        for c in self.checks.iter().filter(|c| !c.passed()) {
            out.push(format!("{}: {}", c.name, c.violations.join("; ")));
        }
        out
    }

    /// `Ok` when every check passed, else a mismatch error naming the word.
    pub fn into_result(self) -> Result<InstanceReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::VerificationMismatch {
                word: format!("{} i={}", self.word, self.node),
                reason: self.failures().join(" | "),
            })
        }
    }
}

/// Builds the graph, enumerates trails, and compares everything.
pub fn verify_instance(
    word: &ReducedWord,
    node: usize,
    limits: BuildLimits,
) -> Result<InstanceReport> {
    let dg = build_decoration_graph(word, node, limits)?;
    let trails = enumerate_trails(word, node)?;
    let oracle: BTreeSet<ExpMonomial> = trails.iter().map(|t| t.monomial()).collect();
    let dg_set: BTreeSet<ExpMonomial> = dg.vertices().iter().cloned().collect();
    let unit_coefficients = oracle.len() == trails.len();
    let bijection = unit_coefficients
        && trails
            .iter()
            .all(|t| trail_from_ds(word, node, &t.ds).is_ok_and(|back| back == *t));
    Ok(InstanceReport {
        word: word.to_string(),
        node,
        vertices: dg.vertices().len(),
        edges: dg.edges().len(),
        trails: trails.len(),
        dg_equals_oracle: oracle == dg_set,
        unit_coefficients,
        bijection,
        checks: graph_invariants(&dg)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub datum: String,
    pub node: usize,
    pub seed: u64,
    pub words: usize,
    pub distinct_words: usize,
    pub total_vertices: usize,
}

/// Checks `count` random words reached from the seed word by `moves`
/// braid moves each. Words are processed in parallel; the first failing
/// word in generation order is reported.
pub fn verify_random(
    datum: &RootDatum,
    node: usize,
    count: usize,
    seed: u64,
    moves: usize,
    limits: BuildLimits,
) -> Result<BatchReport> {
    datum.check_node(node)?;
    let words = random_words(datum, count, moves, seed);
    let outcomes: Vec<Result<InstanceReport>> = words
        .par_iter()
        .map(|w| verify_instance(w, node, limits).and_then(InstanceReport::into_result))
        .collect();
    let mut total_vertices = 0;
    for (w, outcome) in words.iter().zip(outcomes) {
        match outcome {
            Ok(r) => total_vertices += r.vertices,
            Err(Error::VerificationMismatch { reason, .. }) => {
                return Err(Error::VerificationMismatch {
                    word: format!("{} {w} i={node}", datum.name()),
                    reason,
                })
            }
            Err(e) => return Err(e),
        }
    }
    let distinct: BTreeSet<&[usize]> = words.iter().map(|w| w.letters()).collect();
    Ok(BatchReport {
        datum: datum.name(),
        node,
        seed,
        words: words.len(),
        distinct_words: distinct.len(),
        total_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ty: &str, text: &str) -> ReducedWord {
        ReducedWord::parse(&ty.parse().unwrap(), text).unwrap()
    }

    #[test]
    fn worked_examples_pass() {
        for (ty, text, nodes) in [
            ("A3", "1,2,3,2,1,2", vec![1, 2, 3]),
            ("A4", "4,3,2,3,1,2,4,3,2,4", vec![1, 2, 3, 4]),
            ("D4", "1,2,3,4,2,1,4,3,2,3,4,2", vec![1, 3, 4]),
        ] {
            let w = word(ty, text);
            for node in nodes {
                let r = verify_instance(&w, node, BuildLimits::default()).unwrap();
                assert!(r.passed(), "{ty} {node}: {:?}", r.failures());
            }
        }
        let r = verify_instance(
            &word("D4", "1,2,3,4,2,1,4,3,2,3,4,2"),
            1,
            BuildLimits::default(),
        )
        .unwrap();
        assert_eq!((r.vertices, r.trails), (21, 21));
    }

    #[test]
    fn random_batches() {
        let a4: RootDatum = "A4".parse().unwrap();
        let r = verify_random(&a4, 2, 12, 7, 30, BuildLimits::default()).unwrap();
        assert_eq!(r.words, 12);
        assert_eq!(
            r,
            verify_random(&a4, 2, 12, 7, 30, BuildLimits::default()).unwrap()
        );
    }

    #[test]
    fn non_minuscule_is_rejected() {
        let b3: RootDatum = "B3".parse().unwrap();
        assert!(verify_random(&b3, 1, 2, 0, 5, BuildLimits::default()).is_err());
    }
}
