//! Brute-force enumeration of i-trails in minuscule representations.
//!
//! In a minuscule module every weight space is one-dimensional and
//! `e_j` acts nontrivially on the `mu`-weight space exactly when
//! `<h_j, mu> = -1`. A sequence of exponents `c_l` therefore gives a nonzero
//! operator `e_{i_1}^{c_1} ... e_{i_N}^{c_N}` iff every `c_l` is 0 or 1 and
//! each raising step starts from a weight pairing to -1. Trails are paths
//! in this weight graph; no representation matrices are built.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExpMonomial, LaurentPoly};
use crate::root_data::{RootDatum, Weight};
use crate::word::ReducedWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    /// `gamma_0, ..., gamma_N`.
    pub gammas: Vec<Weight>,
    /// `c_1, ..., c_N`.
    pub cs: Vec<i64>,
    /// `d_1, ..., d_N`.
    pub ds: Vec<i64>,
}

#[derive(Debug, Serialize)]
struct TrailJson<'a> {
    cs: &'a [i64],
    ds: &'a [i64],
}

impl Trail {
    pub fn monomial(&self) -> ExpMonomial {
        ExpMonomial::from_exps(self.ds.clone())
    }

    /// `L = sum_l l * c_l`.
    pub fn order_statistic(&self) -> i64 {
        self.cs
            .iter()
            .enumerate()
            .map(|(l, c)| (l as i64 + 1) * c)
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TrailJson {
            cs: &self.cs,
            ds: &self.ds,
        })
        .expect("trail serializes")
    }
}

/// Orbit of `highest` under the Weyl group, by closure under simple
/// reflections. Fails as soon as a weight pairs outside `{-1, 0, 1}`.
pub fn weight_orbit(datum: &RootDatum, highest: &Weight) -> Result<Vec<Weight>> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([highest.clone()]);
    seen.insert(highest.clone());
    while let Some(mu) = queue.pop_front() {
        if let Some(&bad) = mu.coords().iter().find(|c| c.abs() > 1) {
            return Err(Error::NotMinuscule { pairing: bad });
        }
        for i in datum.nodes() {
            let next = datum.reflect(i, &mu);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        order.push(mu);
    }
    Ok(order)
}

/// The node `i*` with `w_0 Lambda_i = -Lambda_{i*}`.
pub fn dual_node(word: &ReducedWord, node: usize) -> Result<usize> {
    let datum = word.datum();
    datum.check_node(node)?;
    let image = datum
        .weyl_act(word.letters(), &datum.fundamental_weight(node))?
        .neg();
    let mut hits = datum
        .nodes()
        .filter(|&j| image == datum.fundamental_weight(j));
    match (hits.next(), hits.next()) {
        (Some(j), None) => Ok(j),
        _ => Err(Error::InternalInconsistency(format!(
            "w_0 Lambda_{node} = {} is not minus a fundamental weight",
            image.neg()
        ))),
    }
}

/// All i-trails from `-w_0 Lambda_i` to `-s_i Lambda_i` in `V(-w_0 Lambda_i)`.
pub fn enumerate_trails(word: &ReducedWord, node: usize) -> Result<Vec<Trail>> {
    let datum = word.datum();
    let n = word.len();
    let dual = dual_node(word, node)?;
    let orbit = weight_orbit(datum, &datum.fundamental_weight(dual))?;
    let index: HashMap<&Weight, usize> = orbit.iter().enumerate().map(|(p, w)| (w, p)).collect();

    let lambda = datum.fundamental_weight(node);
    let target = datum.weyl_act(word.letters(), &lambda)?.neg();
    let start = datum.reflect(node, &lambda).neg();
    let (Some(&target_ix), Some(&start_ix)) = (index.get(&target), index.get(&start)) else {
        return Err(Error::InternalInconsistency(
            "trail endpoints are not weights of the module".into(),
        ));
    };

    // raise[l][p]: index of gamma + alpha_{i_l} if e_{i_l} acts nontrivially
    let raise: Vec<Vec<Option<usize>>> = (1..=n)
        .map(|l| {
            let letter = word.letter(l);
            let alpha = datum.simple_root(letter);
            orbit
                .iter()
                .map(|mu| (mu.pair(letter) == -1).then(|| index[&mu.add_scaled(&alpha, 1)]))
                .collect()
        })
        .collect();

    // viable[l][p]: from gamma_l = orbit[p] the target gamma_0 is reachable
    let mut viable = vec![vec![false; orbit.len()]; n + 1];
    viable[0][target_ix] = true;
    for l in 1..=n {
        for p in 0..orbit.len() {
            viable[l][p] = viable[l - 1][p] || raise[l - 1][p].is_some_and(|q| viable[l - 1][q]);
        }
    }

    let mut trails = Vec::new();
    if !viable[n][start_ix] {
        return Ok(trails);
    }
    let mut path = vec![0usize; n + 1];
    let mut cs = vec![0i64; n];
    path[n] = start_ix;
    descend(n, &raise, &viable, &mut path, &mut cs, &mut |path, cs| {
        let gammas: Vec<Weight> = path.iter().map(|&p| orbit[p].clone()).collect();
        let ds = (1..=n)
            .map(|l| cs[l - 1] + gammas[l].pair(word.letter(l)))
            .collect();
        trails.push(Trail {
            gammas,
            cs: cs.to_vec(),
            ds,
        });
    });
    Ok(trails)
}

fn descend(
    l: usize,
    raise: &[Vec<Option<usize>>],
    viable: &[Vec<bool>],
    path: &mut [usize],
    cs: &mut [i64],
    emit: &mut dyn FnMut(&[usize], &[i64]),
) {
    if l == 0 {
        emit(path, cs);
        return;
    }
    let here = path[l];
    if viable[l - 1][here] {
        cs[l - 1] = 0;
        path[l - 1] = here;
        descend(l - 1, raise, viable, path, cs, emit);
    }
    if let Some(up) = raise[l - 1][here] {
        if viable[l - 1][up] {
            cs[l - 1] = 1;
            path[l - 1] = up;
            descend(l - 1, raise, viable, path, cs, emit);
            cs[l - 1] = 0;
        }
    }
}

/// Rebuilds a trail from its d-vector alone, using
/// `c_l = d_l - <h_{i_l}, gamma_l>` from `gamma_N = -s_i Lambda_i` downwards.
pub fn trail_from_ds(word: &ReducedWord, node: usize, ds: &[i64]) -> Result<Trail> {
    let datum = word.datum();
    let n = word.len();
    if ds.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: ds.len(),
        });
    }
    let lambda = datum.fundamental_weight(node);
    let mut gammas = vec![Weight::zero(datum.rank()); n + 1];
    let mut cs = vec![0i64; n];
    gammas[n] = datum.reflect(node, &lambda).neg();
    for l in (1..=n).rev() {
        let letter = word.letter(l);
        let c = ds[l - 1] - gammas[l].pair(letter);
        if c < 0 {
            return Err(Error::InternalInconsistency(format!(
                "negative step c_{l} = {c}"
            )));
        }
        cs[l - 1] = c;
        gammas[l - 1] = gammas[l].add_scaled(&datum.simple_root(letter), c);
    }
    let target = datum.weyl_act(word.letters(), &lambda)?.neg();
    if gammas[0] != target {
        return Err(Error::InternalInconsistency(
            "d-vector does not end at -w_0 Lambda_i".into(),
        ));
    }
    Ok(Trail {
        gammas,
        cs,
        ds: ds.to_vec(),
    })
}

/// The minor as the sum of trail monomials; every multiplicity must be 1.
pub fn minor_via_trails(word: &ReducedWord, node: usize) -> Result<LaurentPoly> {
    let trails = enumerate_trails(word, node)?;
    let monomials: Vec<ExpMonomial> = trails.iter().map(Trail::monomial).collect();
    let poly = LaurentPoly::from_monomials(word.len(), &monomials)?;
    if let Some((m, c)) = poly.terms().into_iter().find(|(_, c)| *c != 1) {
        return Err(Error::MultiplicityViolation {
            monomial: m.to_string(),
            count: c as usize,
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ty: &str, text: &str) -> ReducedWord {
        ReducedWord::parse(&ty.parse().unwrap(), text).unwrap()
    }

    fn poly(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn orbits() {
        let a3: RootDatum = "A3".parse().unwrap();
        assert_eq!(
            weight_orbit(&a3, &a3.fundamental_weight(1)).unwrap().len(),
            4
        );
        assert_eq!(
            weight_orbit(&a3, &a3.fundamental_weight(2)).unwrap().len(),
            6
        );
        let d4: RootDatum = "D4".parse().unwrap();
        assert_eq!(
            weight_orbit(&d4, &d4.fundamental_weight(1)).unwrap().len(),
            8
        );
        let a1: RootDatum = "A1".parse().unwrap();
        let mut o = weight_orbit(&a1, &a1.fundamental_weight(1)).unwrap();
        o.sort();
        assert_eq!(o, vec![Weight(vec![-1]), Weight(vec![1])]);
        let g2: RootDatum = "G2".parse().unwrap();
        assert!(matches!(
            weight_orbit(&g2, &g2.fundamental_weight(1)),
            Err(Error::NotMinuscule { .. })
        ));
    }

    #[test]
    fn minuscule_table_matches_orbits() {
        for name in [
            "A5", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "F4", "G2",
        ] {
            let d: RootDatum = name.parse().unwrap();
            for i in d.nodes() {
                let ok = weight_orbit(&d, &d.fundamental_weight(i)).is_ok();
                assert_eq!(ok, d.is_minuscule(i), "{name} node {i}");
            }
        }
        let e6: RootDatum = "E6".parse().unwrap();
        assert_eq!(
            weight_orbit(&e6, &e6.fundamental_weight(1)).unwrap().len(),
            27
        );
        let e7: RootDatum = "E7".parse().unwrap();
        assert_eq!(
            weight_orbit(&e7, &e7.fundamental_weight(6)).unwrap().len(),
            56
        );
    }

    #[test]
    fn dual_nodes() {
        let a3 = word("A3", "1,2,3,2,1,2");
        assert_eq!(dual_node(&a3, 1).unwrap(), 3);
        assert_eq!(dual_node(&a3, 2).unwrap(), 2);
        let d4 = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        assert_eq!(dual_node(&d4, 1).unwrap(), 1);
        assert_eq!(dual_node(&word("A1", "1"), 1).unwrap(), 1);
        let e6: RootDatum = "E6".parse().unwrap();
        assert_eq!(dual_node(&ReducedWord::seed(&e6), 1).unwrap(), 5);
    }

    #[test]
    fn a3_trails() {
        let w = word("A3", "1,2,3,2,1,2");
        let t2 = enumerate_trails(&w, 2).unwrap();
        assert_eq!(t2.len(), 1);
        assert_eq!(t2[0].monomial(), ExpMonomial::variable(6, 6));
        assert_eq!(enumerate_trails(&w, 3).unwrap().len(), 4);
        assert_eq!(minor_via_trails(&w, 1).unwrap(), poly("t4 + t5*t6^-1", 6));
        assert_eq!(
            minor_via_trails(&w, 3).unwrap(),
            poly("t1 + t2*t4*t5^-1 + t2*t6^-1 + t3*t4^-1*t6^-1", 6)
        );
    }

    #[test]
    fn a4_and_d4_trails() {
        let a4 = word("A4", "4,3,2,3,1,2,4,3,2,4");
        assert_eq!(enumerate_trails(&a4, 1).unwrap().len(), 7);
        assert_eq!(
            minor_via_trails(&a4, 3).unwrap(),
            poly(
                "t4 + t6*t7*t8^-1 + t7*t9^-1 + t6*t10^-1 + t8*t9^-1*t10^-1",
                10
            )
        );
        let d4 = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        assert_eq!(
            minor_via_trails(&d4, 3).unwrap(),
            poly("t7 + t9*t11^-1 + t10*t12^-1", 12)
        );
        assert_eq!(enumerate_trails(&d4, 1).unwrap().len(), 21);
    }

    #[test]
    fn trail_shape() {
        let d4 = word("D4", "1,2,3,4,2,1,4,3,2,3,4,2");
        let d = d4.datum();
        for node in [1, 3, 4] {
            for trail in enumerate_trails(&d4, node).unwrap() {
                for l in 1..=d4.len() {
                    let step = trail.gammas[l - 1].add_scaled(&trail.gammas[l], -1);
                    assert_eq!(
                        step,
                        Weight::zero(4).add_scaled(&d.simple_root(d4.letter(l)), trail.cs[l - 1])
                    );
                    assert!((0..=1).contains(&trail.cs[l - 1]));
                    assert!((-1..=1).contains(&trail.ds[l - 1]));
                }
                assert_eq!(trail_from_ds(&d4, node, &trail.ds).unwrap(), trail);
            }
        }
    }

    #[test]
    fn non_minuscule_rejected() {
        let g2 = word("G2", "1,2,1,2,1,2");
        assert!(matches!(
            enumerate_trails(&g2, 1),
            Err(Error::NotMinuscule { .. })
        ));
    }

    #[test]
    fn trail_json() {
        let w = word("A3", "1,2,3,2,1,2");
        let t = &enumerate_trails(&w, 2).unwrap()[0];
        let v = t.to_json();
        assert_eq!(v["ds"], serde_json::json!([0, 0, 0, 0, 0, 1]));
        assert_eq!(v["cs"].as_array().unwrap().len(), 6);
    }
}
