//! Cartan data for the finite types A–G, Kac numbering.
//!
//! Weights are stored in fundamental-weight coordinates: entry `j` of a
//! [`Weight`] is the pairing with the coroot `h_{j+1}`. With this choice the
//! simple root `alpha_i` is column `i` of the Cartan matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn letter(self) -> char {
        match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => LieType::A,
            'B' => LieType::B,
            'C' => LieType::C,
            'D' => LieType::D,
            'E' => LieType::E,
            'F' => LieType::F,
            'G' => LieType::G,
            _ => return None,
        })
    }

    pub fn supports_rank(self, rank: usize) -> bool {
        match self {
            LieType::A => rank >= 1,
            LieType::B | LieType::C => rank >= 2,
            LieType::D => rank >= 4,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        }
    }
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// Pairing with the coroot `h_node` (1-based).
    #[inline]
    pub fn pair(&self, node: usize) -> i64 {
        self.0[node - 1]
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add_scaled(&self, other: &Weight, scale: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + scale * b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, a) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
}

/// Standard Cartan matrix `a_{i,j} = <h_i, alpha_j>` in Kac numbering.
pub fn cartan_matrix(lie_type: LieType, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !lie_type.supports_rank(rank) {
        return Err(Error::InvalidRank {
            lie_type: lie_type.letter(),
            rank,
        });
    }
    // (i, j, a_{i,j}, a_{j,i}), 1-based
    let mut bonds: Vec<(usize, usize, i64, i64)> = Vec::new();
    let chain = |bonds: &mut Vec<(usize, usize, i64, i64)>, from: usize, to: usize| {
        for i in from..to {
            bonds.push((i, i + 1, -1, -1));
        }
    };
    match lie_type {
        LieType::A => chain(&mut bonds, 1, rank),
        LieType::B => {
            chain(&mut bonds, 1, rank - 1);
            // alpha_n short
            bonds.push((rank - 1, rank, -1, -2));
        }
        LieType::C => {
            chain(&mut bonds, 1, rank - 1);
            // alpha_n long
            bonds.push((rank - 1, rank, -2, -1));
        }
        LieType::D => {
            chain(&mut bonds, 1, rank - 1);
            bonds.push((rank - 2, rank, -1, -1));
        }
        LieType::E => {
            let (chain_len, branch) = match rank {
                6 => (5, 3),
                7 => (6, 3),
                _ => (7, 5),
            };
            chain(&mut bonds, 1, chain_len);
            bonds.push((branch, rank, -1, -1));
        }
        LieType::F => {
            bonds.push((1, 2, -1, -1));
            bonds.push((2, 3, -1, -2));
            bonds.push((3, 4, -1, -1));
        }
        LieType::G => bonds.push((1, 2, -1, -3)),
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, aij, aji) in bonds {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    }
    Ok(a)
}

impl RootDatum {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(lie_type, rank)?;
        Ok(RootDatum {
            lie_type,
            rank,
            cartan,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `a_{i,j}`, 1-based.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.rank
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank {
            return Err(Error::NodeOutOfRange {
                node,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Nodes adjacent to `node` in the Dynkin diagram.
    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes()
            .filter(move |&j| j != node && self.a(j, node) < 0)
    }

    pub fn fundamental_weight(&self, node: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.0[node - 1] = 1;
        w
    }

    pub fn simple_root(&self, node: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][node - 1]).collect())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// `s_i(mu) = mu - <h_i, mu> alpha_i`.
    pub fn reflect(&self, node: usize, w: &Weight) -> Weight {
        let c = w.pair(node);
        if c == 0 {
            return w.clone();
        }
        let mut out = w.clone();
        for (r, x) in out.0.iter_mut().enumerate() {
            *x -= c * self.cartan[r][node - 1];
        }
        out
    }

    /// Applies `s_{i_1} ... s_{i_m}` to `w`, rightmost letter first.
    pub fn weyl_act(&self, word: &[usize], w: &Weight) -> Result<Weight> {
        for &letter in word {
            if letter == 0 || letter > self.rank {
                return Err(Error::LetterOutOfRange {
                    letter,
                    rank: self.rank,
                });
            }
        }
        Ok(word
            .iter()
            .rev()
            .fold(w.clone(), |acc, &i| self.reflect(i, &acc)))
    }

    pub fn minuscule_nodes(&self) -> Vec<usize> {
        let n = self.rank;
        match self.lie_type {
            LieType::A => (1..=n).collect(),
            LieType::B => vec![n],
            LieType::C => vec![1],
            LieType::D => vec![1, n - 1, n],
            LieType::E => match n {
                6 => vec![1, 5],
                7 => vec![6],
                _ => vec![],
            },
            LieType::F | LieType::G => vec![],
        }
    }

    pub fn is_minuscule(&self, node: usize) -> bool {
        self.minuscule_nodes().contains(&node)
    }

    /// Length of the longest Weyl group element.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.lie_type {
            LieType::A => n * (n + 1) / 2,
            LieType::B | LieType::C => n * n,
            LieType::D => n * (n - 1),
            LieType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            LieType::F => 24,
            LieType::G => 6,
        }
    }

    /// Short name such as `"D4"`.
    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type.letter(), self.rank)
    }
}

impl FromStr for RootDatum {
    type Err = Error;

    /// Parses names like `A3`, `e6` or `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let lie_type = chars
            .next()
            .and_then(LieType::from_letter)
            .ok_or_else(|| Error::BadLieType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadLieType(s.to_string()))?;
        RootDatum::new(lie_type, rank)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(
            cartan_matrix(LieType::G, 2).unwrap(),
            vec![vec![2, -1], vec![-3, 2]]
        );
        assert_eq!(cartan_matrix(LieType::A, 1).unwrap(), vec![vec![2]]);
        assert_eq!(
            cartan_matrix(LieType::A, 3).unwrap(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        assert_eq!(
            cartan_matrix(LieType::B, 3).unwrap(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );
        assert_eq!(
            cartan_matrix(LieType::C, 3).unwrap(),
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        assert_eq!(
            cartan_matrix(LieType::D, 4).unwrap(),
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2]
            ]
        );
        assert_eq!(
            cartan_matrix(LieType::F, 4).unwrap(),
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
    }

    #[test]
    fn unsupported_ranks() {
        for (t, r) in [
            (LieType::E, 5),
            (LieType::E, 9),
            (LieType::F, 3),
            (LieType::G, 3),
            (LieType::A, 0),
            (LieType::D, 3),
        ] {
            assert!(matches!(
                cartan_matrix(t, r),
                Err(Error::InvalidRank { .. })
            ));
        }
        assert!("X3".parse::<RootDatum>().is_err());
        assert!("A".parse::<RootDatum>().is_err());
    }

    #[test]
    fn cartan_axioms_all_types() {
        for name in [
            "A1", "A5", "B2", "B5", "C2", "C4", "D4", "D6", "E6", "E7", "E8", "F4", "G2",
        ] {
            let d = datum(name);
            for i in d.nodes() {
                assert_eq!(d.a(i, i), 2);
                for j in d.nodes() {
                    if i != j {
                        assert!(d.a(i, j) <= 0, "{name}");
                        assert_eq!(d.a(i, j) == 0, d.a(j, i) == 0, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn reflections() {
        let a2 = datum("A2");
        assert_eq!(
            a2.reflect(1, &a2.fundamental_weight(1)),
            Weight(vec![-1, 1])
        );
        let mu = Weight(vec![3, -2]);
        assert_eq!(a2.reflect(1, &a2.reflect(1, &mu)), mu);
        let d4 = datum("D4");
        for i in d4.nodes() {
            for j in d4.nodes().filter(|&j| j != i) {
                let l = d4.fundamental_weight(j);
                assert_eq!(d4.reflect(i, &l), l);
            }
            let l = d4.fundamental_weight(i);
            assert_eq!(d4.reflect(i, &l), l.add_scaled(&d4.simple_root(i), -1));
        }
    }

    #[test]
    fn weyl_action() {
        let a2 = datum("A2");
        assert_eq!(
            a2.weyl_act(&[1, 2, 1], &a2.rho()).unwrap(),
            Weight(vec![-1, -1])
        );
        assert_eq!(a2.weyl_act(&[], &a2.rho()).unwrap(), a2.rho());
        let a3 = datum("A3");
        assert_eq!(
            a3.weyl_act(&[1, 2, 3, 2, 1, 2], &a3.fundamental_weight(1))
                .unwrap(),
            Weight(vec![0, 0, -1])
        );
        assert!(matches!(
            a3.weyl_act(&[1, 4], &a3.rho()),
            Err(Error::LetterOutOfRange { letter: 4, .. })
        ));
    }

    #[test]
    fn minuscule_table() {
        assert_eq!(datum("A4").minuscule_nodes(), vec![1, 2, 3, 4]);
        assert_eq!(datum("D4").minuscule_nodes(), vec![1, 3, 4]);
        assert!(datum("G2").minuscule_nodes().is_empty());
        assert!(datum("E8").minuscule_nodes().is_empty());
        assert!(datum("F4").minuscule_nodes().is_empty());
        assert_eq!(datum("B3").minuscule_nodes(), vec![3]);
        assert_eq!(datum("C3").minuscule_nodes(), vec![1]);
        assert_eq!(datum("E6").minuscule_nodes(), vec![1, 5]);
        assert_eq!(datum("E7").minuscule_nodes(), vec![6]);
    }

    #[test]
    fn positive_roots() {
        assert_eq!(datum("A3").positive_root_count(), 6);
        assert_eq!(datum("D4").positive_root_count(), 12);
        assert_eq!(datum("G2").positive_root_count(), 6);
        assert_eq!(datum("B3").positive_root_count(), 9);
        assert_eq!(datum("E6").positive_root_count(), 36);
    }

    proptest! {
        #[test]
        fn reflect_is_involution(
            name in prop::sample::select(vec!["A3", "B3", "C3", "D4", "G2", "F4", "E6"]),
            coords in prop::collection::vec(-10i64..=10, 6),
            node_seed in 0usize..8,
        ) {
            let d = datum(name);
            let w = Weight(coords.into_iter().cycle().take(d.rank()).collect());
            let i = node_seed % d.rank() + 1;
            prop_assert_eq!(d.reflect(i, &d.reflect(i, &w)), w);
        }
    }
}
