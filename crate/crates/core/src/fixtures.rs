//! Worked examples, stored as JSON under `fixtures/`, and a
//! replay routine that recomputes each one.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::crystal::{compare_dg_crystal, PChoice, DEFAULT_CRYSTAL_CAP};
use crate::error::{Error, Result};
use crate::graph::{build_decoration_graph, BuildLimits};
use crate::laurent::{ExpMonomial, LaurentPoly};
use crate::root_data::RootDatum;
use crate::strategy::{StrategyRegistry, DEFAULT_POLICY};
use crate::tropical::{binfinity_cone, parse_linear_form, tropicalize_ratio, ConeOptions};
use crate::verify::Check;
use crate::word::ReducedWord;

const WORD_SOURCES: [(&str, &str); 8] = [
    ("a3-intro", include_str!("../fixtures/a3-intro.json")),
    ("a4-chain", include_str!("../fixtures/a4-chain.json")),
    ("d4-branch", include_str!("../fixtures/d4-branch.json")),
    ("a4-crystal", include_str!("../fixtures/a4-crystal.json")),
    (
        "g2-long-first",
        include_str!("../fixtures/g2-long-first.json"),
    ),
    (
        "g2-short-first",
        include_str!("../fixtures/g2-short-first.json"),
    ),
    ("b3-cyclic", include_str!("../fixtures/b3-cyclic.json")),
    ("c3-cyclic", include_str!("../fixtures/c3-cyclic.json")),
];

const RATIO_SOURCE: &str = include_str!("../fixtures/tropical-ratio.json");

#[derive(Debug, Clone, Deserialize)]
pub struct MinorFixture {
    pub i: usize,
    pub polynomial: String,
    /// Coefficients in `polynomial` are not expected to be reproduced.
    #[serde(default)]
    pub monomials_only: bool,
    pub source: Option<String>,
    pub sink: Option<String>,
    /// `(src, dst, label)`; a null label is not checked.
    pub edges: Option<Vec<(String, String, Option<usize>)>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CrystalFixture {
    pub i: usize,
    /// `(j, k, p_{j,k})`; the reverse pairs are implied.
    pub p: Vec<(usize, usize, i64)>,
    pub highest: String,
    pub lowest: Option<String>,
    pub size: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct WordFixture {
    pub name: String,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub word: String,
    pub minors: Vec<MinorFixture>,
    pub cone: Option<Vec<String>>,
    pub crystal: Option<CrystalFixture>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RatioFixture {
    pub name: String,
    pub slots: usize,
    pub numerator: String,
    pub denominator: String,
    pub expected: String,
}

fn bad(name: &str, reason: impl ToString) -> Error {
    Error::BadFixture {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

pub fn fixture_names() -> Vec<&'static str> {
    WORD_SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn word_fixture(name: &str) -> Result<WordFixture> {
    let (_, text) = WORD_SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    serde_json::from_str(text).map_err(|e| bad(name, e))
}

pub fn word_fixtures() -> Result<Vec<WordFixture>> {
    fixture_names().into_iter().map(word_fixture).collect()
}

pub fn ratio_fixture() -> Result<RatioFixture> {
    serde_json::from_str(RATIO_SOURCE).map_err(|e| bad("tropical-ratio", e))
}

impl WordFixture {
    pub fn reduced_word(&self) -> Result<ReducedWord> {
        let datum: RootDatum = self.lie_type.parse()?;
        ReducedWord::parse(&datum, &self.word)
    }
}

#[derive(Debug, Clone)]
pub struct FixtureReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| format!("{}: {}", c.name, c.violations.join("; ")))
            .collect()
    }
}

fn set_diff(name: &'static str, got: &BTreeSet<String>, want: &BTreeSet<String>) -> Check {
    let mut violations: Vec<String> = want
        .difference(got)
        .map(|m| format!("missing {m}"))
        .collect();
    violations.extend(got.difference(want).map(|m| format!("unexpected {m}")));
    Check { name, violations }
}

fn expect(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check {
        name,
        violations: if ok { vec![] } else { vec![detail()] },
    }
}

/// Recomputes every minor, graph, cone and crystal comparison stored in
/// the fixture.
pub fn replay(fx: &WordFixture) -> Result<FixtureReport> {
    let word = fx.reduced_word()?;
    let n = word.len();
    let registry = StrategyRegistry::default();
    let mut checks = Vec::new();

    for minor in &fx.minors {
        let expected = LaurentPoly::parse(&minor.polynomial, n)?;
        let strategy = registry.resolve(&word, minor.i, &DEFAULT_POLICY, false)?;
        let out = strategy.compute(&word, minor.i, BuildLimits::default())?;
        let got: BTreeSet<String> = out.support.iter().map(|m| m.to_string()).collect();
        let want: BTreeSet<String> = expected.support().iter().map(|m| m.to_string()).collect();
        checks.push(set_diff("monomial set", &got, &want));
        if !minor.monomials_only {
            checks.push(expect(
                "polynomial",
                out.polynomial.as_ref() == Some(&expected),
                || {
                    format!(
                        "i={}: got {:?}",
                        minor.i,
                        out.polynomial.as_ref().map(|p| p.to_string())
                    )
                },
            ));
        }
        if minor.source.is_none() && minor.sink.is_none() && minor.edges.is_none() {
            continue;
        }
        let graph = match out.graph {
            Some(g) => g,
            None => build_decoration_graph(&word, minor.i, BuildLimits::forced())?,
        };
        if let Some(src) = &minor.source {
            let want = ExpMonomial::parse(src, n)?;
            checks.push(expect("source", graph.sources() == vec![&want], || {
                format!("i={}: sources {:?}", minor.i, graph.sources())
            }));
        }
        if let Some(sink) = &minor.sink {
            let want = ExpMonomial::parse(sink, n)?;
            checks.push(expect("sink", graph.sinks() == vec![&want], || {
                format!("i={}: sinks {:?}", minor.i, graph.sinks())
            }));
        }
        if let Some(edges) = &minor.edges {
            let labeled = edges.iter().all(|e| e.2.is_some());
            let render =
                |src: &str, dst: &str, label: Option<usize>| match label.filter(|_| labeled) {
                    Some(j) => format!("{src} -{j}-> {dst}"),
                    None => format!("{src} -> {dst}"),
                };
            let mut want = BTreeSet::new();
            for (s, d, j) in edges {
                let s = ExpMonomial::parse(s, n)?.to_string();
                let d = ExpMonomial::parse(d, n)?.to_string();
                want.insert(render(&s, &d, *j));
            }
            let verts = graph.vertices();
            let got: BTreeSet<String> = graph
                .edges()
                .iter()
                .map(|e| {
                    render(
                        &verts[e.src].to_string(),
                        &verts[e.dst].to_string(),
                        Some(e.label),
                    )
                })
                .collect();
            checks.push(set_diff("edges", &got, &want));
            checks.push(expect(
                "edge count",
                graph.edges().len() == edges.len(),
                || format!("i={}: {} edges", minor.i, graph.edges().len()),
            ));
        }
    }

    if let Some(rows) = &fx.cone {
        let cone = binfinity_cone(&word, &registry, &ConeOptions::default())?;
        let want: BTreeSet<Vec<i64>> = rows
            .iter()
            .map(|r| parse_linear_form(r, n))
            .collect::<Result<_>>()?;
        let got = cone.vector_set();
        let fmt = |v: &Vec<i64>| crate::tropical::render_linear_form(v);
        let mut violations: Vec<String> = want
            .difference(&got)
            .map(|v| format!("missing {}", fmt(v)))
            .collect();
        violations.extend(
            got.difference(&want)
                .map(|v| format!("unexpected {}", fmt(v))),
        );
        if cone.inequalities.len() != rows.len() {
            violations.push(format!(
                "{} rows, expected {}",
                cone.inequalities.len(),
                rows.len()
            ));
        }
        checks.push(Check {
            name: "cone",
            violations,
        });
    }

    if let Some(cr) = &fx.crystal {
        let mut p = std::collections::BTreeMap::new();
        for &(j, k, v) in &cr.p {
            p.insert((j, k), v);
            p.insert((k, j), 1 - v);
        }
        let p = PChoice::new(word.datum(), p)?;
        checks.push(expect(
            "p from word",
            p == PChoice::from_word(&word),
            || "stated p differs from the word's default".into(),
        ));
        let dg = build_decoration_graph(&word, cr.i, BuildLimits::forced())?;
        let report = compare_dg_crystal(&dg, &p, DEFAULT_CRYSTAL_CAP)?;
        checks.push(expect("crystal containment", report.contained, || {
            format!("missing {:?}", report.missing)
        }));
        checks.push(expect(
            "crystal highest",
            report.highest == cr.highest,
            || report.highest.clone(),
        ));
        checks.push(expect(
            "crystal size",
            report.crystal_size == cr.size,
            || format!("{} vertices", report.crystal_size),
        ));
        if let Some(lowest) = &cr.lowest {
            checks.push(expect(
                "crystal minus lowest",
                report.equals_crystal_minus_lowest && report.lowest == vec![lowest.clone()],
                || format!("extra {:?}, lowest {:?}", report.extra, report.lowest),
            ));
        }
    }

    Ok(FixtureReport {
        name: fx.name.clone(),
        checks,
    })
}

pub fn replay_ratio(fx: &RatioFixture) -> Result<FixtureReport> {
    let num = LaurentPoly::parse(&fx.numerator, fx.slots)?;
    let den = LaurentPoly::parse(&fx.denominator, fx.slots)?;
    let got = tropicalize_ratio(&num, &den)?.render();
    Ok(FixtureReport {
        name: fx.name.clone(),
        checks: vec![expect("tropical form", got == fx.expected, || got.clone())],
    })
}
