//! Interchangeable ways of computing the minor `Delta_{w0 Lambda_i, s_i Lambda_i}`
//! along a reduced word, registered by name and picked at run time.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_decoration_graph, BuildLimits, DecorationGraph};
use crate::laurent::{ExpMonomial, LaurentPoly};
use crate::trails::minor_via_trails;
use crate::word::ReducedWord;

/// How much a computed minor can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Minuscule node: the monomial set and unit coefficients are theorems.
    Proven,
    /// `i_N = i`: the minor is the single monomial `t_N`.
    TerminalLetter,
    /// Non-minuscule node run through the graph algorithm; the monomial set
    /// is expected but not proven, coefficients are unknown.
    Conjectural,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Proven => "proven",
            Provenance::TerminalLetter => "terminal-letter",
            Provenance::Conjectural => "conjectural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    Proven,
    Conjectural,
    NotApplicable(String),
}

#[derive(Debug, Clone)]
pub struct MinorComputation {
    pub node: usize,
    pub strategy: &'static str,
    pub provenance: Provenance,
    /// Monomials in display order.
    pub support: Vec<ExpMonomial>,
    /// `None` when only the monomial set is known.
    pub polynomial: Option<LaurentPoly>,
    pub graph: Option<DecorationGraph>,
}

pub trait MinorStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn applicability(&self, word: &ReducedWord, node: usize, force: bool) -> Applicability;

    fn compute(
        &self,
        word: &ReducedWord,
        node: usize,
        limits: BuildLimits,
    ) -> Result<MinorComputation>;
}

pub struct DecorationGraphStrategy;

impl MinorStrategy for DecorationGraphStrategy {
    fn name(&self) -> &'static str {
        "decoration-graph"
    }

    fn description(&self) -> &'static str {
        "grow the decoration graph from the highest term"
    }

    fn applicability(&self, word: &ReducedWord, node: usize, force: bool) -> Applicability {
        if word.datum().is_minuscule(node) {
            Applicability::Proven
        } else if force || word.is_adapted() {
            Applicability::Conjectural
        } else {
            Applicability::NotApplicable("node is not minuscule and the word is not adapted".into())
        }
    }

    fn compute(
        &self,
        word: &ReducedWord,
        node: usize,
        limits: BuildLimits,
    ) -> Result<MinorComputation> {
        let graph = build_decoration_graph(word, node, limits)?;
        let (provenance, polynomial) = if graph.is_minuscule() {
            (Provenance::Proven, Some(graph.minor_polynomial()?))
        } else {
            (Provenance::Conjectural, None)
        };
        Ok(MinorComputation {
            node,
            strategy: self.name(),
            provenance,
            support: graph.monomials(),
            polynomial,
            graph: Some(graph),
        })
    }
}

pub struct TrailOracleStrategy;

impl MinorStrategy for TrailOracleStrategy {
    fn name(&self) -> &'static str {
        "trail-oracle"
    }

    fn description(&self) -> &'static str {
        "enumerate i-trails in the minuscule module"
    }

    fn applicability(&self, word: &ReducedWord, node: usize, _force: bool) -> Applicability {
        if word.datum().is_minuscule(node) {
            Applicability::Proven
        } else {
            Applicability::NotApplicable("trail enumeration needs a minuscule node".into())
        }
    }

    fn compute(
        &self,
        word: &ReducedWord,
        node: usize,
        _limits: BuildLimits,
    ) -> Result<MinorComputation> {
        let poly = minor_via_trails(word, node)?;
        Ok(MinorComputation {
            node,
            strategy: self.name(),
            provenance: Provenance::Proven,
            support: poly.support(),
            polynomial: Some(poly),
            graph: None,
        })
    }
}

pub struct TerminalLetterStrategy;

impl MinorStrategy for TerminalLetterStrategy {
    fn name(&self) -> &'static str {
        "terminal-letter"
    }

    fn description(&self) -> &'static str {
        "the minor is t_N when the word ends in the node"
    }

    fn applicability(&self, word: &ReducedWord, node: usize, _force: bool) -> Applicability {
        if word.letter(word.len()) == node {
            Applicability::Proven
        } else {
            Applicability::NotApplicable(format!("word does not end in {node}"))
        }
    }

    fn compute(
        &self,
        word: &ReducedWord,
        node: usize,
        _limits: BuildLimits,
    ) -> Result<MinorComputation> {
        if let Applicability::NotApplicable(reason) = self.applicability(word, node, false) {
            return Err(Error::StrategyNotApplicable {
                strategy: self.name().into(),
                node,
                reason,
            });
        }
        let t_n = ExpMonomial::variable(word.len(), word.len());
        let poly = LaurentPoly::from_monomials(word.len(), [&t_n])?;
        Ok(MinorComputation {
            node,
            strategy: self.name(),
            provenance: Provenance::TerminalLetter,
            support: vec![t_n],
            polynomial: Some(poly),
            graph: None,
        })
    }
}

/// Named collection of minor strategies.
pub struct StrategyRegistry {
    strategies: Vec<Box<dyn MinorStrategy>>,
}

/// Cone assembly order when nothing else is requested.
pub const DEFAULT_POLICY: [&str; 2] = ["decoration-graph", "terminal-letter"];

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            strategies: Vec::new(),
        }
    }

    pub fn register(&mut self, strategy: Box<dyn MinorStrategy>) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MinorStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    /// First strategy in `policy` that applies with proof; failing that,
    /// the first that applies conjecturally.
    pub fn resolve(
        &self,
        word: &ReducedWord,
        node: usize,
        policy: &[&str],
        force: bool,
    ) -> Result<&dyn MinorStrategy> {
        let candidates = policy
            .iter()
            .map(|name| self.get(name))
            .collect::<Result<Vec<_>>>()?;
        let verdicts: Vec<Applicability> = candidates
            .iter()
            .map(|s| s.applicability(word, node, force))
            .collect();
        for wanted in [Applicability::Proven, Applicability::Conjectural] {
            if let Some(p) = verdicts.iter().position(|v| *v == wanted) {
                return Ok(candidates[p]);
            }
        }
        Err(Error::IncompleteCover { node })
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(DecorationGraphStrategy));
        r.register(Box::new(TrailOracleStrategy));
        r.register(Box::new(TerminalLetterStrategy));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ty: &str, text: &str) -> ReducedWord {
        ReducedWord::parse(&ty.parse().unwrap(), text).unwrap()
    }

    #[test]
    fn lookup() {
        let r = StrategyRegistry::default();
        assert_eq!(
            r.names(),
            vec!["decoration-graph", "trail-oracle", "terminal-letter"]
        );
        assert!(matches!(r.get("nope"), Err(Error::UnknownStrategy(_))));
    }

    #[test]
    fn strategies_agree_on_minuscule_nodes() {
        let r = StrategyRegistry::default();
        let w = word("A4", "4,3,2,3,1,2,4,3,2,4");
        for node in 1..=4 {
            let dg = r
                .get("decoration-graph")
                .unwrap()
                .compute(&w, node, BuildLimits::default())
                .unwrap();
            let tr = r
                .get("trail-oracle")
                .unwrap()
                .compute(&w, node, BuildLimits::default())
                .unwrap();
            assert_eq!(dg.polynomial, tr.polynomial);
        }
    }

    #[test]
    fn resolution_policy() {
        let r = StrategyRegistry::default();
        let d4 = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        assert_eq!(
            r.resolve(&d4, 1, &DEFAULT_POLICY, false).unwrap().name(),
            "decoration-graph"
        );
        assert_eq!(
            r.resolve(&d4, 2, &DEFAULT_POLICY, false).unwrap().name(),
            "terminal-letter"
        );
        let c3 = word("C3", "2,1,3,2,1,3,2,1,3");
        assert_eq!(
            r.resolve(&c3, 3, &DEFAULT_POLICY, false).unwrap().name(),
            "terminal-letter"
        );
        // adapted word, non-minuscule node not at the end
        let dg = r.resolve(&c3, 2, &DEFAULT_POLICY, false).unwrap();
        assert_eq!(dg.name(), "decoration-graph");
        let out = dg.compute(&c3, 2, BuildLimits::default()).unwrap();
        assert_eq!(out.provenance, Provenance::Conjectural);
        assert!(out.polynomial.is_none());
        assert_eq!(out.support.len(), 13);

        let a3 = word("A3", "1,2,3,2,1,2");
        assert!(r.resolve(&a3, 1, &["terminal-letter"], false).is_err());
    }

    #[test]
    fn terminal_letter_refuses_other_nodes() {
        let a3 = word("A3", "1,2,3,2,1,2");
        assert!(matches!(
            TerminalLetterStrategy.compute(&a3, 1, BuildLimits::default()),
            Err(Error::StrategyNotApplicable { .. })
        ));
        let out = TerminalLetterStrategy
            .compute(&a3, 2, BuildLimits::default())
            .unwrap();
        assert_eq!(out.polynomial.unwrap().to_string(), "t6");
    }
}
