use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{RootDataError, RootDatum};
use crate::intmat::{self, IntMatrix};

/// Enumeration stops with an error beyond this many elements.
pub const WEYL_BOUND: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    /// Action on column vectors of `Y`.
    pub matrix: IntMatrix,
    /// A reduced word: the element is `s_{word[0]} s_{word[1]} ⋯`.
    pub word: Vec<usize>,
    pub length: usize,
}

/// The finite Weyl group, enumerated breadth-first from the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    generators: Vec<IntMatrix>,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
}

impl WeylGroup {
    pub fn generate(datum: &RootDatum, bound: usize) -> Result<Self, RootDataError> {
        let generators: Vec<IntMatrix> = (0..datum.semisimple_rank()).map(|i| datum.reflection_matrix(i)).collect();
        let id = intmat::identity(datum.rank());
        let mut elements = vec![WeylElement { matrix: id.clone(), word: Vec::new(), length: 0 }];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, s) in generators.iter().enumerate() {
                let m = intmat::mat_mul(s, &elements[k].matrix);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(RootDataError::WeylTooLarge(bound));
                }
                let mut word = vec![i];
                word.extend_from_slice(&elements[k].word);
                let length = elements[k].length + 1;
                index.insert(m.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { matrix: m, word, length });
            }
        }
        Ok(WeylGroup { generators, elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn index_of(&self, matrix: &IntMatrix) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = intmat::mat_mul(&self.elements[a].matrix, &self.elements[b].matrix);
        self.index[&m]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut m = intmat::identity(self.elements[a].matrix.len());
        for &i in self.elements[a].word.iter() {
            m = intmat::mat_mul(&self.generators[i], &m);
        }
        self.index[&m]
    }

    /// The longest element.
    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&k| self.elements[k].length).unwrap_or(0)
    }

    pub fn act(&self, k: usize, y: &[i64]) -> Vec<i64> {
        intmat::mat_vec(&self.elements[k].matrix, y)
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_root_datum;
    use super::*;

    fn group(coroots: Vec<Vec<i64>>, roots: Vec<Vec<i64>>) -> WeylGroup {
        let r = coroots[0].len();
        build_root_datum(r, coroots, roots).unwrap().weyl_group().unwrap()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(group(vec![vec![1]], vec![vec![2]]).order(), 2);
        assert_eq!(group(vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-1, 2]]).order(), 6);
        assert_eq!(group(vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-2, 2]]).order(), 8);
        assert_eq!(group(vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-3, 2]]).order(), 12);
        let a3 = group(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        );
        assert_eq!(a3.order(), 24);
    }

    #[test]
    fn coxeter_relations_and_lengths() {
        let w = group(vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-2, 2]]);
        let gens = w.generators();
        let id = intmat::identity(2);
        for s in gens {
            assert_eq!(intmat::mat_mul(s, s), id);
        }
        let st = intmat::mat_mul(&gens[0], &gens[1]);
        let mut p = id.clone();
        for k in 1..=4 {
            p = intmat::mat_mul(&p, &st);
            assert_eq!(p == id, k == 4);
        }
        assert_eq!(w.element(0).length, 0);
        for k in 0..w.order() {
            for g in 0..gens.len() {
                let m = intmat::mat_mul(&gens[g], &w.element(k).matrix);
                let j = w.index_of(&m).unwrap();
                assert_eq!((w.element(j).length as i64 - w.element(k).length as i64).abs(), 1);
            }
            assert_eq!(w.compose(k, w.inverse(k)), 0);
        }
        assert_eq!(w.element(w.longest()).length, 4);
    }
}
