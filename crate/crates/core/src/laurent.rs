//! Laurent monomials in `t_1..t_N` as dense exponent vectors, and Laurent
//! polynomials with positive integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A Laurent monomial `t_1^{e_1} ... t_N^{e_N}`. Slots are 1-based in the
/// public API and 0-based in the backing vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpMonomial(Vec<i64>);

impl ExpMonomial {
    pub fn one(slots: usize) -> Self {
        ExpMonomial(vec![0; slots])
    }

    pub fn from_exps(exps: Vec<i64>) -> Self {
        ExpMonomial(exps)
    }

    /// The monomial `t_slot`.
    pub fn variable(slots: usize, slot: usize) -> Self {
        let mut m = Self::one(slots);
        m.0[slot - 1] = 1;
        m
    }

    pub fn slots(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    /// Exponent of `t_slot`, 1-based.
    #[inline]
    pub fn exp(&self, slot: usize) -> i64 {
        self.0[slot - 1]
    }

    pub fn set_exp(&mut self, slot: usize, e: i64) {
        self.0[slot - 1] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self * other^sign`.
    pub fn combine(&self, other: &ExpMonomial, sign: i64) -> Result<ExpMonomial> {
        if self.slots() != other.slots() {
            return Err(Error::SlotMismatch {
                left: self.slots(),
                right: other.slots(),
            });
        }
        Ok(ExpMonomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + sign * b)
                .collect(),
        ))
    }

    /// Linear form `sum_m e_m z_m`.
    pub fn dot(&self, z: &[i64]) -> i64 {
        self.0.iter().zip(z).map(|(a, b)| a * b).sum()
    }

    /// Sparse `[slot, exponent]` pairs, zeros omitted, slots ascending.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(m, &e)| [m as i64 + 1, e])
            .collect()
    }

    pub fn from_pairs(slots: usize, pairs: &[[i64; 2]]) -> Result<Self> {
        let mut m = Self::one(slots);
        for &[slot, e] in pairs {
            if slot < 1 || slot as usize > slots {
                return Err(Error::PositionOutOfRange {
                    position: slot.max(0) as usize,
                    len: slots,
                });
            }
            m.0[slot as usize - 1] += e;
        }
        Ok(m)
    }

    pub fn render(&self, prefix: &str) -> String {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(m, &e)| {
                if e == 1 {
                    format!("{prefix}{}", m + 1)
                } else {
                    format!("{prefix}{}^{e}", m + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }

    /// Parses the output of [`ExpMonomial::render`] with prefix `t`.
    pub fn parse(s: &str, slots: usize) -> Result<Self> {
        parse_monomial(s, "t", slots)
    }
}

impl fmt::Display for ExpMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Display order: reverse lexicographic on exponent vectors, so `t_1` comes
/// before anything that starts in a later slot.
pub fn display_order(a: &ExpMonomial, b: &ExpMonomial) -> Ordering {
    b.cmp(a)
}

fn parse_monomial(s: &str, prefix: &str, slots: usize) -> Result<ExpMonomial> {
    let bad = || Error::BadMonomial(s.to_string());
    let s = s.trim();
    let mut m = ExpMonomial::one(slots);
    if s == "1" {
        return Ok(m);
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let body = factor.strip_prefix(prefix).ok_or_else(bad)?;
        let (slot, e) = match body.split_once('^') {
            Some((slot, e)) => (slot, e.trim().parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let slot: usize = slot.trim().parse().map_err(|_| bad())?;
        if slot == 0 || slot > slots {
            return Err(bad());
        }
        m.0[slot - 1] += e;
    }
    Ok(m)
}

/// Laurent polynomial with strictly positive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    slots: usize,
    terms: BTreeMap<ExpMonomial, u64>,
}

impl LaurentPoly {
    pub fn zero(slots: usize) -> Self {
        LaurentPoly {
            slots,
            terms: BTreeMap::new(),
        }
    }

    /// Each monomial's coefficient is its multiplicity in `monomials`.
    pub fn from_monomials<'a, I>(slots: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ExpMonomial>,
    {
        let mut p = Self::zero(slots);
        for m in monomials {
            p.add_term(m.clone(), 1)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: ExpMonomial, coefficient: u64) -> Result<()> {
        if m.slots() != self.slots {
            return Err(Error::SlotMismatch {
                left: self.slots,
                right: m.slots(),
            });
        }
        if coefficient > 0 {
            *self.terms.entry(m).or_insert(0) += coefficient;
        }
        Ok(())
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ExpMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn contains(&self, m: &ExpMonomial) -> bool {
        self.terms.contains_key(m)
    }

    /// Terms in display order.
    pub fn terms(&self) -> Vec<(&ExpMonomial, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        v.sort_by(|a, b| display_order(a.0, b.0));
        v
    }

    pub fn support(&self) -> Vec<ExpMonomial> {
        self.terms().into_iter().map(|(m, _)| m.clone()).collect()
    }

    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .into_iter()
            .map(|(m, c)| match (c, m.is_one()) {
                (1, _) => m.render(prefix),
                (c, true) => c.to_string(),
                (c, false) => format!("{c}*{}", m.render(prefix)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`LaurentPoly::render`] with prefix `t`.
    pub fn parse(s: &str, slots: usize) -> Result<Self> {
        let mut p = Self::zero(slots);
        let s = s.trim();
        if s == "0" {
            return Ok(p);
        }
        for term in s.split('+') {
            let term = term.trim();
            let (coefficient, body) = match term.split_once('*') {
                Some((head, rest)) if head.chars().all(|c| c.is_ascii_digit()) => (
                    head.parse::<u64>()
                        .map_err(|_| Error::BadMonomial(term.to_string()))?,
                    rest,
                ),
                _ if term.chars().all(|c| c.is_ascii_digit()) => (
                    term.parse::<u64>()
                        .map_err(|_| Error::BadMonomial(term.to_string()))?,
                    "1",
                ),
                _ => (1, term),
            };
            if coefficient == 0 {
                return Err(Error::BadMonomial(term.to_string()));
            }
            p.add_term(parse_monomial(body, "t", slots)?, coefficient)?;
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}
