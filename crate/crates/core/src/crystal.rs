//! Monomial realization of highest-weight crystals on Laurent monomials in
//! the variables `Y_{s,i}`, and its comparison with decoration graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DecorationGraph;
use crate::laurent::ExpMonomial;
use crate::root_data::RootDatum;
use crate::word::ReducedWord;

/// Finitely supported product of `Y_{s,i}^{e}`, keyed by `(s, i)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalMonomial(BTreeMap<(i64, usize), i64>);

impl CrystalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn y(s: i64, i: usize) -> Self {
        let mut m = Self::one();
        m.0.insert((s, i), 1);
        m
    }

    pub fn exp(&self, s: i64, i: usize) -> i64 {
        self.0.get(&(s, i)).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, usize), i64)> + '_ {
        self.0.iter().map(|(&k, &e)| (k, e))
    }

    pub fn mul_var(&mut self, s: i64, i: usize, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.0.entry((s, i)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&(s, i));
        }
    }

    /// `self * other^sign`.
    pub fn times(&self, other: &CrystalMonomial, sign: i64) -> CrystalMonomial {
        let mut out = self.clone();
        for ((s, i), e) in other.entries() {
            out.mul_var(s, i, sign * e);
        }
        out
    }

    /// `Y[1,1]*Y[2,1]^-1`, or `1`.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .entries()
            .map(|((s, i), e)| match e {
                1 => format!("Y[{s},{i}]"),
                _ => format!("Y[{s},{i}]^{e}"),
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for CrystalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The parameters `p_{j,k}` for connected pairs, with `p_{j,k} + p_{k,j} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PChoice {
    p: BTreeMap<(usize, usize), i64>,
}

impl PChoice {
    pub fn new(datum: &RootDatum, p: BTreeMap<(usize, usize), i64>) -> Result<Self> {
        for (&(j, k), &v) in &p {
            if datum.check_node(j).is_err() || datum.check_node(k).is_err() || datum.a(j, k) >= 0 {
                return Err(Error::BadPChoice(format!(
                    "({j},{k}) is not a connected pair"
                )));
            }
            if v != 0 && v != 1 {
                return Err(Error::BadPChoice(format!("p({j},{k}) = {v}")));
            }
        }
        for j in datum.nodes() {
            for k in datum.neighbors(j) {
                match (p.get(&(j, k)), p.get(&(k, j))) {
                    (Some(a), Some(b)) if a + b == 1 => {}
                    _ => {
                        return Err(Error::BadPChoice(format!(
                            "p({j},{k}) + p({k},{j}) must be 1"
                        )))
                    }
                }
            }
        }
        Ok(PChoice { p })
    }

    /// `p_{j,l} = 1` exactly when the `{j,l}`-subword of `word` starts with `j`.
    pub fn from_word(word: &ReducedWord) -> Self {
        let datum = word.datum();
        let mut p = BTreeMap::new();
        for j in datum.nodes() {
            for l in datum.neighbors(j) {
                let first = word.letters().iter().find(|&&x| x == j || x == l);
                p.insert((j, l), i64::from(first == Some(&j)));
            }
        }
        PChoice { p }
    }

    /// `p_{j,k} = 1` exactly when `j < k`.
    pub fn lower_first(datum: &RootDatum) -> Self {
        let mut p = BTreeMap::new();
        for j in datum.nodes() {
            for k in datum.neighbors(j) {
                p.insert((j, k), i64::from(j < k));
            }
        }
        PChoice { p }
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.p.get(&(j, k)).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrystalStats {
    pub wt: i64,
    pub phi: i64,
    pub eps: i64,
    /// Where `f_i` acts; `None` when `phi = 0`.
    pub n_f: Option<i64>,
    /// Where `e_i` acts; `None` when `eps = 0`.
    pub n_e: Option<i64>,
}

/// Prefix sums `sum_{k <= r} zeta_{k,i}` are constant between support
/// points, so scanning the support plus the empty prefix covers all `r`.
pub fn crystal_stats(y: &CrystalMonomial, i: usize) -> CrystalStats {
    let column: Vec<(i64, i64)> = y
        .entries()
        .filter(|&((_, node), _)| node == i)
        .map(|((s, _), e)| (s, e))
        .collect();
    let mut prefix = Vec::with_capacity(column.len());
    let mut acc = 0;
    for &(_, e) in &column {
        acc += e;
        prefix.push(acc);
    }
    let wt = acc;
    let phi = prefix.iter().copied().max().unwrap_or(0).max(0);
    let eps = phi - wt;
    let n_f = (phi > 0).then(|| {
        let p = prefix
            .iter()
            .position(|&v| v == phi)
            .expect("phi is attained");
        column[p].0
    });
    let n_e = (eps > 0).then(|| match prefix.iter().rposition(|&v| v == phi) {
        // the segment after support point p is the last one at the max
        Some(p) => column[p + 1].0 - 1,
        None => column[0].0 - 1,
    });
    CrystalStats {
        wt,
        phi,
        eps,
        n_f,
        n_e,
    }
}

/// `A_{s,k} = Y_{s,k} Y_{s+1,k} prod_{j: a_{j,k} < 0} Y_{s+p_{j,k},j}^{a_{j,k}}`.
pub fn a_variable(datum: &RootDatum, p: &PChoice, s: i64, k: usize) -> CrystalMonomial {
    let mut m = CrystalMonomial::one();
    m.mul_var(s, k, 1);
    m.mul_var(s + 1, k, 1);
    for j in datum.neighbors(k) {
        m.mul_var(s + p.get(j, k), j, datum.a(j, k));
    }
    m
}

pub fn kashiwara_f(
    datum: &RootDatum,
    p: &PChoice,
    y: &CrystalMonomial,
    i: usize,
) -> Option<CrystalMonomial> {
    let n = crystal_stats(y, i).n_f?;
    Some(y.times(&a_variable(datum, p, n, i), -1))
}

pub fn kashiwara_e(
    datum: &RootDatum,
    p: &PChoice,
    y: &CrystalMonomial,
    i: usize,
) -> Option<CrystalMonomial> {
    let n = crystal_stats(y, i).n_e?;
    Some(y.times(&a_variable(datum, p, n, i), 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredEdge {
    pub src: usize,
    pub dst: usize,
    pub color: usize,
}

#[derive(Debug, Clone)]
pub struct CrystalGraph {
    vertices: Vec<CrystalMonomial>,
    index: HashMap<CrystalMonomial, usize>,
    edges: Vec<ColoredEdge>,
}

/// Breadth-first closure of `{y0}` under every `f_i`.
pub fn generate_crystal_graph(
    datum: &RootDatum,
    p: &PChoice,
    y0: &CrystalMonomial,
    cap: usize,
) -> Result<CrystalGraph> {
    for i in datum.nodes() {
        let eps = crystal_stats(y0, i).eps;
        if eps > 0 {
            return Err(Error::HighestWeightViolation { node: i, eps });
        }
    }
    let mut g = CrystalGraph {
        vertices: vec![y0.clone()],
        index: HashMap::from([(y0.clone(), 0)]),
        edges: Vec::new(),
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for i in datum.nodes() {
            let Some(next) = kashiwara_f(datum, p, &g.vertices[v], i) else {
                continue;
            };
            let dst = match g.index.get(&next) {
                Some(&d) => d,
                None => {
                    if g.vertices.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    g.vertices.push(next.clone());
                    g.index.insert(next, g.vertices.len() - 1);
                    queue.push_back(g.vertices.len() - 1);
                    g.vertices.len() - 1
                }
            };
            g.edges.push(ColoredEdge {
                src: v,
                dst,
                color: i,
            });
        }
    }
    Ok(g)
}

impl CrystalGraph {
    pub fn vertices(&self) -> &[CrystalMonomial] {
        &self.vertices
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, y: &CrystalMonomial) -> bool {
        self.index.contains_key(y)
    }

    pub fn index_of(&self, y: &CrystalMonomial) -> Option<usize> {
        self.index.get(y).copied()
    }

    pub fn has_edge(&self, src: usize, dst: usize, color: usize) -> bool {
        self.edges.contains(&ColoredEdge { src, dst, color })
    }

    /// Vertices with no outgoing edge.
    pub fn lowest(&self) -> Vec<&CrystalMonomial> {
        let mut has_out = vec![false; self.vertices.len()];
        for e in &self.edges {
            has_out[e.src] = true;
        }
        self.vertices
            .iter()
            .zip(has_out)
            .filter(|(_, out)| !out)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<String> = self.vertices.iter().map(|v| v.render()).collect();
        let edges: Vec<[usize; 3]> = self.edges.iter().map(|e| [e.src, e.dst, e.color]).collect();
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Crystal {\n");
        for (n, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  n{n} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.src, e.dst, e.color
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// `t_m -> Y_{s,r}` with `r = i_m` and `s` the number of `a <= m` with `i_a = r`.
pub fn relabel(word: &ReducedWord, m: &ExpMonomial) -> CrystalMonomial {
    let mut seen = vec![0i64; word.datum().rank() + 1];
    let mut out = CrystalMonomial::one();
    for (pos, &r) in word.letters().iter().enumerate() {
        seen[r] += 1;
        out.mul_var(seen[r], r, m.exp(pos + 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorMismatch {
    pub src: String,
    pub dst: String,
    pub label: usize,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalComparison {
    /// Relabeled source `t_k`; the crystal is generated from it.
    pub highest: String,
    pub highest_weight_node: usize,
    /// How the highest monomial was chosen.
    pub highest_rule: &'static str,
    pub dg_size: usize,
    pub crystal_size: usize,
    /// DG monomials absent from the crystal.
    pub missing: Vec<String>,
    /// Crystal vertices absent from the DG.
    pub extra: Vec<String>,
    pub lowest: Vec<String>,
    pub contained: bool,
    /// The crystal minus its lowest vertex is exactly the DG.
    pub equals_crystal_minus_lowest: bool,
    /// DG edges `j` that are crystal edges of color `i_j`.
    pub consistent_edges: usize,
    pub color_mismatches: Vec<ColorMismatch>,
    pub color_consistent: bool,
}

pub const DEFAULT_CRYSTAL_CAP: usize = 100_000;

pub fn compare_dg_crystal(
    dg: &DecorationGraph,
    p: &PChoice,
    cap: usize,
) -> Result<CrystalComparison> {
    let word = dg.word();
    let datum = word.datum();
    let k = word.source_index(dg.node())?;
    let highest = relabel(word, dg.source());
    let crystal = generate_crystal_graph(datum, p, &highest, cap)?;
    let relabeled: Vec<CrystalMonomial> = dg.vertices().iter().map(|m| relabel(word, m)).collect();
    let dg_set: BTreeSet<&CrystalMonomial> = relabeled.iter().collect();

    let missing: Vec<String> = relabeled
        .iter()
        .filter(|y| !crystal.contains(y))
        .map(|y| y.render())
        .collect();
    let extra: Vec<String> = crystal
        .vertices()
        .iter()
        .filter(|y| !dg_set.contains(y))
        .map(|y| y.render())
        .collect();
    let lowest: Vec<String> = crystal.lowest().iter().map(|y| y.render()).collect();

    let mut consistent_edges = 0;
    let mut color_mismatches = Vec::new();
    for e in dg.edges() {
        let (src, dst) = (&relabeled[e.src], &relabeled[e.dst]);
        let color = word.letter(e.label);
        let hit = match (crystal.index_of(src), crystal.index_of(dst)) {
            (Some(a), Some(b)) => crystal.has_edge(a, b, color),
            _ => false,
        };
        if hit {
            consistent_edges += 1;
        } else {
            color_mismatches.push(ColorMismatch {
                src: src.render(),
                dst: dst.render(),
                label: e.label,
                color,
            });
        }
    }

    Ok(CrystalComparison {
        highest: highest.render(),
        highest_weight_node: word.letter(k),
        highest_rule: "relabeled source t_k",
        dg_size: relabeled.len(),
        crystal_size: crystal.len(),
        contained: missing.is_empty(),
        equals_crystal_minus_lowest: missing.is_empty() && extra == lowest,
        missing,
        extra,
        lowest,
        consistent_edges,
        color_consistent: color_mismatches.is_empty(),
        color_mismatches,
    })
}
