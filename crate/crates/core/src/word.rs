//! Reduced words of the longest Weyl group element and the position
//! combinatorics the decoration-graph algorithm runs on.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::ExpMonomial;
use crate::root_data::{LieType, RootDatum};

/// Parses the comma-separated, 1-based word format (`"1,2,3,2,1,2"`).
pub fn parse_letters(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::BadWord(text.to_string()));
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadWord(text.to_string()))
        })
        .collect()
}

/// A reduced word `(i_1, ..., i_N)` certified to represent `w_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    datum: RootDatum,
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Checks length and the certificate `w(rho) = -rho`, which together
    /// force the word to be a reduced expression of `w_0`.
    pub fn validate(datum: &RootDatum, letters: &[usize]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::BadWord(String::new()));
        }
        let expected = datum.positive_root_count();
        let image = datum.weyl_act(letters, &datum.rho())?;
        if letters.len() != expected {
            return Err(Error::WrongLength {
                expected,
                got: letters.len(),
            });
        }
        if image != datum.rho().neg() {
            return Err(Error::NotLongestElement);
        }
        Ok(ReducedWord {
            datum: datum.clone(),
            letters: letters.to_vec(),
        })
    }

    pub fn parse(datum: &RootDatum, text: &str) -> Result<Self> {
        Self::validate(datum, &parse_letters(text)?)
    }

    /// Canonical seed word for `w_0`.
    pub fn seed(datum: &RootDatum) -> Self {
        let letters = match datum.lie_type() {
            LieType::A => (1..=datum.rank()).flat_map(|top| (1..=top).rev()).collect(),
            LieType::G => vec![1, 2, 1, 2, 1, 2],
            _ => greedy_w0(datum),
        };
        Self::validate(datum, &letters).expect("seed word must be a reduced word of w_0")
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// `N`, the number of positive roots.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `i_j`, 1-based.
    #[inline]
    pub fn letter(&self, j: usize) -> usize {
        self.letters[j - 1]
    }

    fn check_position(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.len() {
            return Err(Error::PositionOutOfRange {
                position: j,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// The unique `k` with `s_{i_N} ... s_{i_{k+1}} alpha_{i_k} = alpha_i`.
    pub fn source_index(&self, node: usize) -> Result<usize> {
        self.datum.check_node(node)?;
        // alpha_{i_k} = s_{i_{k+1}} ... s_{i_N} alpha_i, peeled from the right
        let mut root = self.datum.simple_root(node);
        for k in (1..=self.len()).rev() {
            let letter = self.letter(k);
            if root == self.datum.simple_root(letter) {
                return Ok(k);
            }
            root = self.datum.reflect(letter, &root);
        }
        Err(Error::SourceNotFound { node })
    }

    /// `J = max{k | i_k = i}`.
    pub fn last_occurrence(&self, node: usize) -> Option<usize> {
        self.letters.iter().rposition(|&l| l == node).map(|p| p + 1)
    }

    /// Next occurrence of the letter at `j`, or `N + 1`.
    pub fn jplus(&self, j: usize) -> usize {
        let letter = self.letter(j);
        (j + 1..=self.len())
            .find(|&l| self.letter(l) == letter)
            .unwrap_or(self.len() + 1)
    }

    /// Previous occurrence of the letter at `j`, or `0`.
    pub fn jminus(&self, j: usize) -> usize {
        let letter = self.letter(j);
        (1..j)
            .rev()
            .find(|&l| self.letter(l) == letter)
            .unwrap_or(0)
    }

    /// `A_j = t_j t_{j+} prod_{j<l<j+} t_l^{a_{i_l, i_j}}`.
    pub fn a_monomial(&self, j: usize) -> Result<ExpMonomial> {
        self.check_position(j)?;
        let next = self.jplus(j);
        if next > self.len() {
            return Err(Error::NoNextOccurrence { position: j });
        }
        let ij = self.letter(j);
        let mut m = ExpMonomial::one(self.len());
        m.set_exp(j, 1);
        m.set_exp(next, 1);
        for l in j + 1..next {
            m.set_exp(l, self.datum.a(self.letter(l), ij));
        }
        Ok(m)
    }

    /// `t_J t_{J+1}^{a_{i_{J+1}, i}} ... t_N^{a_{i_N, i}}`.
    pub fn lowest_term(&self, node: usize) -> Result<ExpMonomial> {
        self.datum.check_node(node)?;
        let last = self
            .last_occurrence(node)
            .ok_or_else(|| Error::InternalInconsistency(format!("letter {node} missing")))?;
        let mut m = ExpMonomial::one(self.len());
        m.set_exp(last, 1);
        for l in last + 1..=self.len() {
            m.set_exp(l, self.datum.a(self.letter(l), node));
        }
        Ok(m)
    }

    /// `t_k` for `k` = [`ReducedWord::source_index`].
    pub fn highest_term(&self, node: usize) -> Result<ExpMonomial> {
        Ok(ExpMonomial::variable(self.len(), self.source_index(node)?))
    }

    /// For every connected pair `{j, l}`, whether the subword on `{j, l}`
    /// strictly alternates.
    pub fn adaptedness(&self) -> AdaptedReport {
        let mut pairs = Vec::new();
        for j in self.datum.nodes() {
            for l in self
                .datum
                .nodes()
                .filter(|&l| l > j && self.datum.a(j, l) < 0)
            {
                let subword: Vec<usize> = self
                    .letters
                    .iter()
                    .copied()
                    .filter(|&x| x == j || x == l)
                    .collect();
                let alternates = subword.windows(2).all(|w| w[0] != w[1]);
                pairs.push(PairReport {
                    pair: (j, l),
                    subword,
                    alternates,
                });
            }
        }
        AdaptedReport {
            adapted: pairs.iter().all(|p| p.alternates),
            interpretation: "strict alternation of each connected pair's subword",
            pairs,
        }
    }

    pub fn is_adapted(&self) -> bool {
        self.adaptedness().adapted
    }

    /// All positions where a commutation or braid relation applies.
    pub fn legal_moves(&self) -> Vec<BraidMove> {
        let mut moves = Vec::new();
        let n = self.len();
        for p in 0..n.saturating_sub(1) {
            let (i, j) = (self.letters[p], self.letters[p + 1]);
            if i == j {
                continue;
            }
            let span = braid_length(self.datum.a(i, j) * self.datum.a(j, i));
            if p + span > n {
                continue;
            }
            let window = &self.letters[p..p + span];
            let alternating = window
                .iter()
                .enumerate()
                .all(|(q, &x)| x == if q % 2 == 0 { i } else { j });
            if alternating {
                moves.push(BraidMove {
                    position: p + 1,
                    span,
                });
            }
        }
        moves
    }

    /// Applies a move from [`ReducedWord::legal_moves`].
    pub fn apply_move(&self, mv: BraidMove) -> ReducedWord {
        let mut letters = self.letters.clone();
        let start = mv.position - 1;
        let (i, j) = (letters[start], letters[start + 1]);
        for q in 0..mv.span {
            letters[start + q] = if q % 2 == 0 { j } else { i };
        }
        ReducedWord {
            datum: self.datum.clone(),
            letters,
        }
    }

    /// Applies `moves` uniformly chosen legal moves.
    pub fn random_walk<R: Rng>(&self, moves: usize, rng: &mut R) -> ReducedWord {
        let mut word = self.clone();
        for _ in 0..moves {
            let legal = word.legal_moves();
            if legal.is_empty() {
                break;
            }
            let mv = legal[rng.gen_range(0..legal.len())];
            word = word.apply_move(mv);
        }
        word
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `count` words, each a random walk of `moves` steps from the seed word.
pub fn random_words(datum: &RootDatum, count: usize, moves: usize, seed: u64) -> Vec<ReducedWord> {
    let start = ReducedWord::seed(datum);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| start.random_walk(moves, &mut rng))
        .collect()
}

fn braid_length(bond: i64) -> usize {
    match bond {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

/// Builds a reduced word of `w_0` by reflecting `rho` down to `-rho`,
/// always taking the smallest node with positive pairing.
fn greedy_w0(datum: &RootDatum) -> Vec<usize> {
    let mut mu = datum.rho();
    let mut applied = Vec::new();
    while let Some(i) = datum.nodes().find(|&i| mu.pair(i) > 0) {
        mu = datum.reflect(i, &mu);
        applied.push(i);
    }
    // mu = s_{j_m} ... s_{j_1} rho, so the word is the reverse
    applied.reverse();
    applied
}

/// A braid or commutation move replacing `(i, j, i, ...)` of length `span`
/// starting at 1-based `position` with `(j, i, j, ...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidMove {
    pub position: usize,
    pub span: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub pair: (usize, usize),
    pub subword: Vec<usize>,
    pub alternates: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdaptedReport {
    pub adapted: bool,
    pub interpretation: &'static str,
    pub pairs: Vec<PairReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(ty: &str, text: &str) -> ReducedWord {
        ReducedWord::parse(&ty.parse().unwrap(), text).unwrap()
    }

    fn t(s: &str, n: usize) -> ExpMonomial {
        ExpMonomial::parse(s, n).unwrap()
    }

    #[test]
    fn validation() {
        let a2: RootDatum = "A2".parse().unwrap();
        assert!(ReducedWord::parse(&a2, "1,2,1").is_ok());
        assert_eq!(
            ReducedWord::parse(&a2, "1,2"),
            Err(Error::WrongLength {
                expected: 3,
                got: 2
            })
        );
        assert_eq!(
            ReducedWord::parse(&a2, "1,1,2"),
            Err(Error::NotLongestElement)
        );
        assert!(matches!(
            ReducedWord::parse(&a2, "1,3,1"),
            Err(Error::LetterOutOfRange { letter: 3, .. })
        ));
        assert!(matches!(
            ReducedWord::parse(&a2, "1,x"),
            Err(Error::BadWord(_))
        ));
        assert!(matches!(
            ReducedWord::parse(&a2, ""),
            Err(Error::BadWord(_))
        ));
    }

    #[test]
    fn source_positions() {
        let w = word("A3", "1,2,3,2,1,2");
        assert_eq!(w.source_index(3).unwrap(), 1);
        assert_eq!(w.source_index(1).unwrap(), 4);
        assert_eq!(w.source_index(2).unwrap(), 6);
    }

    #[test]
    fn occurrences() {
        let w = word("A3", "1,2,3,2,1,2");
        assert_eq!(w.last_occurrence(1), Some(5));
        assert_eq!(w.last_occurrence(2), Some(6));
        assert_eq!(w.last_occurrence(3), Some(3));
        assert_eq!(w.jplus(2), 4);
        assert_eq!(w.jplus(5), 7);
        assert_eq!(w.jminus(4), 2);
        assert_eq!(w.jminus(1), 0);
    }

    #[test]
    fn a_monomials() {
        let w = word("A3", "1,2,3,2,1,2");
        assert_eq!(w.a_monomial(1).unwrap(), t("t1*t2^-1*t4^-1*t5", 6));
        assert_eq!(w.a_monomial(4).unwrap(), t("t4*t5^-1*t6", 6));
        assert_eq!(w.a_monomial(2).unwrap(), t("t2*t3^-1*t4", 6));
        assert_eq!(
            w.a_monomial(5),
            Err(Error::NoNextOccurrence { position: 5 })
        );
        assert!(matches!(
            w.a_monomial(7),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn lowest_and_highest_terms() {
        let w = word("A3", "1,2,3,2,1,2");
        assert_eq!(w.lowest_term(1).unwrap(), t("t5*t6^-1", 6));
        assert_eq!(w.lowest_term(3).unwrap(), t("t3*t4^-1*t6^-1", 6));
        assert_eq!(w.lowest_term(2).unwrap(), t("t6", 6));
        assert_eq!(w.highest_term(3).unwrap(), t("t1", 6));

        let a4 = word("A4", "4,3,2,3,1,2,4,3,2,4");
        assert_eq!(a4.highest_term(1).unwrap(), t("t1", 10));
        let d4 = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        assert_eq!(d4.highest_term(3).unwrap(), t("t7", 12));
    }

    #[test]
    fn adapted_words() {
        assert!(word("G2", "1,2,1,2,1,2").is_adapted());
        assert!(word("B3", "1,2,3,1,2,3,1,2,3").is_adapted());
        let report = word("A3", "1,2,3,2,1,2").adaptedness();
        assert!(!report.adapted);
        let p12 = report.pairs.iter().find(|p| p.pair == (1, 2)).unwrap();
        assert_eq!(p12.subword, vec![1, 2, 2, 1, 2]);
        assert!(!p12.alternates);
    }

    #[test]
    fn seeds_validate() {
        for name in [
            "A1", "A2", "A5", "B2", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            let d: RootDatum = name.parse().unwrap();
            let s = ReducedWord::seed(&d);
            assert_eq!(s.len(), d.positive_root_count(), "{name}");
        }
        let a3: RootDatum = "A3".parse().unwrap();
        assert_eq!(ReducedWord::seed(&a3).letters(), &[1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn w0_maps_rho_to_minus_rho() {
        for name in ["B3", "C3", "D4", "F4", "E6"] {
            let d: RootDatum = name.parse().unwrap();
            for w in random_words(&d, 5, 30, 7) {
                assert_eq!(d.weyl_act(w.letters(), &d.rho()).unwrap(), d.rho().neg());
            }
        }
    }

    #[test]
    fn every_node_has_a_source() {
        for name in ["A4", "B3", "C3", "D4", "G2", "F4"] {
            let d: RootDatum = name.parse().unwrap();
            for w in random_words(&d, 10, 40, 11) {
                for i in d.nodes() {
                    assert!(w.source_index(i).is_ok(), "{name} {w} {i}");
                }
            }
        }
    }

    #[test]
    fn random_words_are_deterministic() {
        let d: RootDatum = "D4".parse().unwrap();
        assert_eq!(random_words(&d, 4, 25, 99), random_words(&d, 4, 25, 99));
    }

    proptest! {
        #[test]
        fn braid_moves_preserve_validity(
            name in prop::sample::select(vec!["A3", "A4", "B3", "C3", "D4", "G2", "F4"]),
            steps in 0usize..40,
            seed in any::<u64>(),
        ) {
            let d: RootDatum = name.parse().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = ReducedWord::seed(&d).random_walk(steps, &mut rng);
            prop_assert!(ReducedWord::validate(&d, w.letters()).is_ok());
        }

        #[test]
        fn a_monomial_support(
            name in prop::sample::select(vec!["A4", "B3", "D4", "G2"]),
            seed in any::<u64>(),
        ) {
            let d: RootDatum = name.parse().unwrap();
            let w = &random_words(&d, 1, 20, seed)[0];
            for j in 1..=w.len() {
                let next = w.jplus(j);
                if next > w.len() { continue; }
                let a = w.a_monomial(j).unwrap();
                for m in 1..=w.len() {
                    if m < j || m > next {
                        prop_assert_eq!(a.exp(m), 0);
                    }
                }
                prop_assert_eq!(a.exp(j), 1);
                prop_assert_eq!(a.exp(next), 1);
            }
        }

        #[test]
        fn lowest_term_has_single_positive_slot(
            name in prop::sample::select(vec!["A4", "B3", "C3", "D4", "G2", "F4"]),
            seed in any::<u64>(),
        ) {
            let d: RootDatum = name.parse().unwrap();
            let w = &random_words(&d, 1, 20, seed)[0];
            for i in d.nodes() {
                let low = w.lowest_term(i).unwrap();
                let positive: Vec<usize> =
                    (1..=w.len()).filter(|&m| low.exp(m) > 0).collect();
                prop_assert_eq!(positive, vec![w.last_occurrence(i).unwrap()]);
            }
        }
    }
}
