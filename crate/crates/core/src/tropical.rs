//! Min-plus tropicalization of positive Laurent polynomials and the cone
//! cut out by the tropicalized minors.
//!
//! A positive polynomial `sum c_d t^d` tropicalizes to `min_d (d . z)`; the
//! coefficients play no role. A ratio of two such polynomials becomes the
//! difference of the two minima.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::BuildLimits;
use crate::laurent::{display_order, ExpMonomial, LaurentPoly};
use crate::strategy::{Provenance, StrategyRegistry, DEFAULT_POLICY};
use crate::word::ReducedWord;

/// Renders `d . z` as `z2 + z4 - z5`, or `0`.
pub fn render_linear_form(d: &[i64]) -> String {
    let mut out = String::new();
    for (m, &c) in d.iter().enumerate().filter(|(_, &c)| c != 0) {
        let var = format!("z{}", m + 1);
        let magnitude = match c.abs() {
            1 => var,
            a => format!("{a}{var}"),
        };
        match (out.is_empty(), c < 0) {
            (true, false) => out.push_str(&magnitude),
            (true, true) => out.push_str(&format!("-{magnitude}")),
            (false, false) => out.push_str(&format!(" + {magnitude}")),
            (false, true) => out.push_str(&format!(" - {magnitude}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses forms like `z3+z4-z5-2z12` (spaces optional) into a vector of
/// length `dim`.
pub fn parse_linear_form(text: &str, dim: usize) -> Result<Vec<i64>> {
    let bad = || Error::BadLinearForm(text.to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut d = vec![0i64; dim];
    if compact == "0" {
        return Ok(d);
    }
    let mut rest = compact.as_str();
    if rest.is_empty() {
        return Err(bad());
    }
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (coef, var) = term.split_once('z').ok_or_else(bad)?;
        let coef: i64 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let slot: usize = var.parse().map_err(|_| bad())?;
        if slot == 0 || slot > dim {
            return Err(bad());
        }
        d[slot - 1] += sign * coef;
    }
    Ok(d)
}

/// `min(terms) - min(subtracted)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalForm {
    min_terms: Vec<Vec<i64>>,
    subtracted: Option<Vec<Vec<i64>>>,
}

fn exponent_set(poly: &LaurentPoly) -> Result<Vec<Vec<i64>>> {
    if poly.is_zero() {
        return Err(Error::EmptyPolynomial);
    }
    let mut support = poly.support();
    support.sort_by(display_order);
    Ok(support.into_iter().map(|m| m.exps().to_vec()).collect())
}

pub fn tropicalize(poly: &LaurentPoly) -> Result<TropicalForm> {
    Ok(TropicalForm {
        min_terms: exponent_set(poly)?,
        subtracted: None,
    })
}

pub fn tropicalize_ratio(
    numerator: &LaurentPoly,
    denominator: &LaurentPoly,
) -> Result<TropicalForm> {
    if numerator.slots() != denominator.slots() {
        return Err(Error::SlotMismatch {
            left: numerator.slots(),
            right: denominator.slots(),
        });
    }
    Ok(TropicalForm {
        min_terms: exponent_set(numerator)?,
        subtracted: Some(exponent_set(denominator)?),
    })
}

fn min_over(terms: &[Vec<i64>], z: &[i64]) -> i64 {
    terms
        .iter()
        .map(|d| d.iter().zip(z).map(|(a, b)| a * b).sum::<i64>())
        .min()
        .expect("tropical forms have at least one term")
}

fn render_min(terms: &[Vec<i64>]) -> String {
    if terms.len() == 1 {
        return render_linear_form(&terms[0]);
    }
    let inner: Vec<String> = terms.iter().map(|d| render_linear_form(d)).collect();
    format!("min({})", inner.join(", "))
}

impl TropicalForm {
    pub fn min_terms(&self) -> &[Vec<i64>] {
        &self.min_terms
    }

    pub fn subtracted(&self) -> Option<&[Vec<i64>]> {
        self.subtracted.as_deref()
    }

    pub fn evaluate(&self, z: &[i64]) -> i64 {
        let base = min_over(&self.min_terms, z);
        match &self.subtracted {
            Some(sub) => base - min_over(sub, z),
            None => base,
        }
    }

    pub fn render(&self) -> String {
        match &self.subtracted {
            Some(sub) => format!("{} - {}", render_min(&self.min_terms), render_min(sub)),
            None => render_min(&self.min_terms),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    /// Meaning `d . z >= 0`.
    pub d: Vec<i64>,
    #[serde(rename = "i")]
    pub node: usize,
    pub monomial: String,
    pub provenance: Provenance,
}

impl Inequality {
    pub fn holds_at(&self, z: &[i64]) -> bool {
        self.d.iter().zip(z).map(|(a, b)| a * b).sum::<i64>() >= 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub contained: bool,
    /// Indices into [`Cone::inequalities`].
    pub violated: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ConeOptions {
    /// Strategy names tried in order for every node.
    pub policy: Vec<String>,
    pub limits: BuildLimits,
    /// Drop inequalities whose vector already occurred.
    pub dedup: bool,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions {
            policy: DEFAULT_POLICY.iter().map(|s| s.to_string()).collect(),
            limits: BuildLimits::default(),
            dedup: false,
        }
    }
}

/// One inequality `d . z >= 0` per monomial `t^d` of each minor, all nodes.
pub fn binfinity_cone(
    word: &ReducedWord,
    registry: &StrategyRegistry,
    options: &ConeOptions,
) -> Result<Cone> {
    let policy: Vec<&str> = options.policy.iter().map(String::as_str).collect();
    let mut inequalities: Vec<Inequality> = Vec::new();
    for node in word.datum().nodes() {
        let strategy = registry.resolve(word, node, &policy, options.limits.force)?;
        let minor = strategy.compute(word, node, options.limits)?;
        for m in &minor.support {
            if options.dedup && inequalities.iter().any(|q| q.d == m.exps()) {
                continue;
            }
            inequalities.push(Inequality {
                d: m.exps().to_vec(),
                node,
                monomial: m.to_string(),
                provenance: minor.provenance,
            });
        }
    }
    Ok(Cone {
        dim: word.len(),
        inequalities,
    })
}

impl Cone {
    pub fn contains(&self, z: &[i64]) -> Result<Membership> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let violated: Vec<usize> = self
            .inequalities
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.holds_at(z))
            .map(|(p, _)| p)
            .collect();
        Ok(Membership {
            contained: violated.is_empty(),
            violated,
        })
    }

    /// Inequality vectors as a monomial set, for order-free comparison.
    pub fn vector_set(&self) -> std::collections::BTreeSet<Vec<i64>> {
        self.inequalities.iter().map(|q| q.d.clone()).collect()
    }

    pub fn is_conjectural(&self) -> bool {
        self.inequalities
            .iter()
            .any(|q| q.provenance == Provenance::Conjectural)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cone serializes")
    }

    /// One `z4 >= 0` line per inequality, tagged with its node.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for q in &self.inequalities {
            let tag = match q.provenance {
                Provenance::Conjectural => format!("i={}, conjectural", q.node),
                _ => format!("i={}", q.node),
            };
            out.push_str(&format!("{} >= 0    [{tag}]\n", render_linear_form(&q.d)));
        }
        out
    }
}

/// Builds a [`Cone`] whose rows are the given monomials, tagged `node`.
pub fn cone_from_monomials(dim: usize, rows: &[(usize, ExpMonomial)]) -> Cone {
    Cone {
        dim,
        inequalities: rows
            .iter()
            .map(|(node, m)| Inequality {
                d: m.exps().to_vec(),
                node: *node,
                monomial: m.to_string(),
                provenance: Provenance::Proven,
            })
            .collect(),
    }
}
