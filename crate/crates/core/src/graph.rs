//! The decoration graph: grown from the highest term `t_k` by dividing sinks
//! by the monomials `A_j` until the only sink left is the lowest term.
//!
//! A sink `M` gets an arrow labeled `j` to `M * A_j^{-1}` whenever `j+ <= N`,
//! the exponent of `t_j` in `M` is positive and the exponent of `t_{j+}` is
//! not. Vertices are identified by their monomial across all rounds.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{display_order, ExpMonomial, LaurentPoly};
use crate::trails::dual_node;
use crate::trails::weight_orbit;
use crate::word::ReducedWord;

/// Environment variable overriding the round cap.
pub const MAX_ROUNDS_ENV: &str = "DECOGRAPH_MAX_ROUNDS";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildLimits {
    /// `None` picks [`default_max_rounds`].
    pub max_rounds: Option<usize>,
    /// Run on non-minuscule nodes even when the word is not adapted.
    pub force: bool,
}

impl BuildLimits {
    pub fn forced() -> Self {
        BuildLimits {
            max_rounds: None,
            force: true,
        }
    }

    /// Reads [`MAX_ROUNDS_ENV`] if set and parseable.
    pub fn from_env(force: bool) -> Self {
        let max_rounds = std::env::var(MAX_ROUNDS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok());
        BuildLimits { max_rounds, force }
    }
}

/// `4 N |W Lambda_{i*}|` for minuscule nodes, `4 N^2` otherwise.
pub fn default_max_rounds(word: &ReducedWord, node: usize) -> usize {
    let n = word.len();
    let orbit = dual_node(word, node).ok().and_then(|dual| {
        let datum = word.datum();
        weight_orbit(datum, &datum.fundamental_weight(dual)).ok()
    });
    match orbit {
        Some(weights) => 4 * n * weights.len(),
        None => 4 * n * n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    /// The position `j` with `dst = src * A_j^{-1}`.
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct DecorationGraph {
    word: ReducedWord,
    node: usize,
    minuscule: bool,
    vertices: Vec<ExpMonomial>,
    index: HashMap<ExpMonomial, usize>,
    edges: Vec<Edge>,
    source: ExpMonomial,
    declared_sink: ExpMonomial,
    rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub source: String,
    pub sink: String,
    pub rounds: usize,
    pub is_dag: bool,
}

pub fn build_decoration_graph(
    word: &ReducedWord,
    node: usize,
    limits: BuildLimits,
) -> Result<DecorationGraph> {
    let datum = word.datum();
    datum.check_node(node)?;
    let minuscule = datum.is_minuscule(node);
    if !minuscule && !limits.force && !word.is_adapted() {
        return Err(Error::NotMinusculeNotAdapted { node });
    }
    let n = word.len();
    let max_rounds = limits
        .max_rounds
        .unwrap_or_else(|| default_max_rounds(word, node));

    let jplus: Vec<usize> = (1..=n).map(|j| word.jplus(j)).collect();
    let a_inv: Vec<Option<ExpMonomial>> = (1..=n).map(|j| word.a_monomial(j).ok()).collect();

    let source = word.highest_term(node)?;
    let lowest = word.lowest_term(node)?;

    let mut g = DecorationGraph {
        word: word.clone(),
        node,
        minuscule,
        vertices: vec![source.clone()],
        index: HashMap::from([(source.clone(), 0)]),
        edges: Vec::new(),
        source,
        declared_sink: lowest.clone(),
        rounds: 0,
    };
    let mut out_degree = vec![0usize];

    loop {
        let sinks: Vec<usize> = (0..g.vertices.len())
            .filter(|&v| out_degree[v] == 0)
            .collect();
        if sinks.len() == 1 && g.vertices[sinks[0]] == lowest {
            break;
        }
        if g.rounds >= max_rounds {
            return Err(Error::NonTermination { max_rounds });
        }
        let mut new_edges = Vec::new();
        for &s in &sinks {
            let m = &g.vertices[s];
            let mut expanded = false;
            for j in 1..=n {
                let Some(a) = &a_inv[j - 1] else { continue };
                if m.exp(j) > 0 && m.exp(jplus[j - 1]) <= 0 {
                    new_edges.push((s, m.combine(a, -1)?, j));
                    expanded = true;
                }
            }
            if !expanded && *m != lowest {
                return Err(Error::StuckSink {
                    sink: m.to_string(),
                });
            }
        }
        for (src, child, label) in new_edges {
            let dst = match g.index.get(&child) {
                Some(&v) => v,
                None => {
                    let v = g.vertices.len();
                    g.index.insert(child.clone(), v);
                    g.vertices.push(child);
                    out_degree.push(0);
                    v
                }
            };
            out_degree[src] += 1;
            g.edges.push(Edge { src, dst, label });
        }
        g.rounds += 1;
    }
    Ok(g)
}

impl DecorationGraph {
    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn is_minuscule(&self) -> bool {
        self.minuscule
    }

    /// Vertices in insertion order; indices match [`Edge`] endpoints.
    pub fn vertices(&self) -> &[ExpMonomial] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, m: &ExpMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &ExpMonomial) -> bool {
        self.index.contains_key(m)
    }

    pub fn source(&self) -> &ExpMonomial {
        &self.source
    }

    pub fn declared_sink(&self) -> &ExpMonomial {
        &self.declared_sink
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.src == v)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.dst] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.src] += 1;
        }
        deg
    }

    /// Vertices without incoming edges.
    pub fn sources(&self) -> Vec<&ExpMonomial> {
        let deg = self.in_degrees();
        (0..self.vertices.len())
            .filter(|&v| deg[v] == 0)
            .map(|v| &self.vertices[v])
            .collect()
    }

    /// Vertices without outgoing edges.
    pub fn sinks(&self) -> Vec<&ExpMonomial> {
        let deg = self.out_degrees();
        (0..self.vertices.len())
            .filter(|&v| deg[v] == 0)
            .map(|v| &self.vertices[v])
            .collect()
    }

    /// Kahn's algorithm; true iff every vertex gets removed.
    pub fn is_acyclic(&self) -> bool {
        let mut deg = self.in_degrees();
        let mut queue: VecDeque<usize> = (0..deg.len()).filter(|&v| deg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for e in self.out_edges(v) {
                deg[e.dst] -= 1;
                if deg[e.dst] == 0 {
                    queue.push_back(e.dst);
                }
            }
        }
        removed == self.vertices.len()
    }

    /// Vertex monomials in display order.
    pub fn monomials(&self) -> Vec<ExpMonomial> {
        let mut v = self.vertices.clone();
        v.sort_by(display_order);
        v
    }

    /// Sum of the vertex monomials. Only meaningful for minuscule nodes,
    /// where every coefficient is 1.
    pub fn minor_polynomial(&self) -> Result<LaurentPoly> {
        if !self.minuscule {
            return Err(Error::NonMinusculeCoefficients { node: self.node });
        }
        LaurentPoly::from_monomials(self.word.len(), &self.vertices)
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            source: self.source.to_string(),
            sink: self.declared_sink.to_string(),
            rounds: self.rounds,
            is_dag: self.is_acyclic(),
        }
    }

    /// Permutation taking display position to vertex index.
    fn display_permutation(&self) -> (Vec<usize>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| display_order(&self.vertices[a], &self.vertices[b]));
        let mut rank = vec![0; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        (order, rank)
    }

    fn sorted_edges(&self, rank: &[usize]) -> Vec<[usize; 3]> {
        let mut edges: Vec<[usize; 3]> = self
            .edges
            .iter()
            .map(|e| [rank[e.src], rank[e.dst], e.label])
            .collect();
        edges.sort();
        edges
    }

    /// `{"vertices": [...], "edges": [[src, dst, j], ...], "source": ..., "sink": ...}`
    /// with vertices in display order and monomials as `[slot, exponent]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let (order, rank) = self.display_permutation();
        let vertices: Vec<_> = order.iter().map(|&v| self.vertices[v].to_pairs()).collect();
        serde_json::json!({
            "vertices": vertices,
            "edges": self.sorted_edges(&rank),
            "source": self.source.to_pairs(),
            "sink": self.declared_sink.to_pairs(),
        })
    }

    pub fn to_dot(&self) -> String {
        let (order, rank) = self.display_permutation();
        let mut out = String::from("digraph DG {\n");
        for (pos, &v) in order.iter().enumerate() {
            out.push_str(&format!("  n{pos} [label=\"{}\"];\n", self.vertices[v]));
        }
        for [src, dst, label] in self.sorted_edges(&rank) {
            out.push_str(&format!("  n{src} -> n{dst} [label=\"{label}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ty: &str, text: &str) -> ReducedWord {
        ReducedWord::parse(&ty.parse().unwrap(), text).unwrap()
    }

    fn t(s: &str, n: usize) -> ExpMonomial {
        ExpMonomial::parse(s, n).unwrap()
    }

    fn edge_set(g: &DecorationGraph) -> Vec<(String, String, usize)> {
        let mut v: Vec<_> = g
            .edges()
            .iter()
            .map(|e| {
                (
                    g.vertices()[e.src].to_string(),
                    g.vertices()[e.dst].to_string(),
                    e.label,
                )
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn a3_chain() {
        let w = word("A3", "1,2,3,2,1,2");
        let g = build_decoration_graph(&w, 3, BuildLimits::default()).unwrap();
        assert_eq!(g.vertices().len(), 4);
        let mut expected = vec![
            ("t1".to_string(), "t2*t4*t5^-1".to_string(), 1),
            ("t2*t4*t5^-1".to_string(), "t2*t6^-1".to_string(), 4),
            ("t2*t6^-1".to_string(), "t3*t4^-1*t6^-1".to_string(), 2),
        ];
        expected.sort();
        assert_eq!(edge_set(&g), expected);
        assert_eq!(g.rounds(), 3);

        let single = build_decoration_graph(&w, 2, BuildLimits::default()).unwrap();
        let s = single.summary();
        assert_eq!((s.vertices, s.edges), (1, 0));
        assert_eq!((s.source.as_str(), s.sink.as_str()), ("t6", "t6"));
        assert_eq!(single.rounds(), 0);

        assert_eq!(
            build_decoration_graph(&w, 1, BuildLimits::default())
                .unwrap()
                .minor_polynomial()
                .unwrap()
                .to_string(),
            "t4 + t5*t6^-1"
        );
    }

    #[test]
    fn a4_diamond() {
        let w = word("A4", "4,3,2,3,1,2,4,3,2,4");
        let g = build_decoration_graph(&w, 1, BuildLimits::default()).unwrap();
        assert_eq!(g.vertices().len(), 7);
        assert_eq!(g.edges().len(), 7);
        assert_eq!(g.rounds(), 5);
        assert_eq!(g.sinks(), vec![&t("t5*t6^-1*t9^-1", 10)]);
        let diamond_top = g.vertex_index(&t("t2*t6*t8^-1", 10)).unwrap();
        assert_eq!(g.out_edges(diamond_top).count(), 2);
        assert_eq!(
            build_decoration_graph(&w, 3, BuildLimits::default())
                .unwrap()
                .minor_polynomial()
                .unwrap(),
            LaurentPoly::parse(
                "t4 + t6*t7*t8^-1 + t7*t9^-1 + t6*t10^-1 + t8*t9^-1*t10^-1",
                10
            )
            .unwrap()
        );
    }

    #[test]
    fn d4_graphs() {
        let w = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        let g = build_decoration_graph(&w, 1, BuildLimits::default()).unwrap();
        let s = g.summary();
        assert_eq!(s.vertices, 21);
        assert_eq!(s.source, "t1");
        assert_eq!(s.sink, "t6*t9^-1*t12^-1");
        assert!(s.is_dag);
        let four = build_decoration_graph(&w, 4, BuildLimits::default()).unwrap();
        assert_eq!(
            four.minor_polynomial().unwrap().to_string(),
            "t8 + t9*t10^-1 + t11*t12^-1"
        );
    }

    #[test]
    fn refuses_non_adapted_non_minuscule() {
        let w = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        assert_eq!(
            build_decoration_graph(&w, 2, BuildLimits::default()).unwrap_err(),
            Error::NotMinusculeNotAdapted { node: 2 }
        );
        // i_N = 2, so the forced run is the single vertex t_12
        let g = build_decoration_graph(&w, 2, BuildLimits::forced()).unwrap();
        assert_eq!(g.vertices(), &[t("t12", 12)]);
        assert_eq!(
            g.minor_polynomial().unwrap_err(),
            Error::NonMinusculeCoefficients { node: 2 }
        );
    }

    #[test]
    fn round_cap() {
        let w = word("A4", "4,3,2,3,1,2,4,3,2,4");
        let limits = BuildLimits {
            max_rounds: Some(2),
            force: false,
        };
        assert_eq!(
            build_decoration_graph(&w, 1, limits).unwrap_err(),
            Error::NonTermination { max_rounds: 2 }
        );
    }

    #[test]
    fn exports() {
        let w = word("A3", "1,2,3,2,1,2");
        let g = build_decoration_graph(&w, 1, BuildLimits::default()).unwrap();
        assert_eq!(
            g.to_json(),
            serde_json::json!({
                "vertices": [[[4, 1]], [[5, 1], [6, -1]]],
                "edges": [[0, 1, 4]],
                "source": [[4, 1]],
                "sink": [[5, 1], [6, -1]],
            })
        );
        assert_eq!(
            g.to_dot(),
            "digraph DG {\n  n0 [label=\"t4\"];\n  n1 [label=\"t5*t6^-1\"];\n  n0 -> n1 [label=\"4\"];\n}\n"
        );
    }

    #[test]
    fn default_cap_uses_orbit_size() {
        let w = word("A3", "1,2,3,2,1,2");
        assert_eq!(default_max_rounds(&w, 1), 4 * 6 * 4);
        let g2 = word("G2", "1,2,1,2,1,2");
        assert_eq!(default_max_rounds(&g2, 1), 4 * 36);
    }
}
