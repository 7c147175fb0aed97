use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::HeckeError;
use crate::intmat::{self, IntMatrix};
use crate::metalattice::{LatticeBasis, MetaplecticDatum};
use crate::rootdata::WeylGroup;

/// `t_λ w` with `λ ∈ Λ` in `Y`-coordinates and `w` an index into the finite Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineWeylElement {
    pub lambda: Vec<i64>,
    pub w: usize,
}

#[derive(Clone, Debug)]
struct PositiveCoroot {
    coroot: Vec<i64>,
    root: Vec<i64>,
    n_alpha: i64,
}

/// The extended affine Weyl group `W_a = Λ ⋊ W` of the dual datum.
#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    weyl: WeylGroup,
    lattice: LatticeBasis,
    positive: Vec<PositiveCoroot>,
    positive_set: HashSet<Vec<i64>>,
    inverses: Vec<usize>,
    words: Vec<Vec<usize>>,
    simple: Vec<AffineWeylElement>,
    finite_simple: usize,
}

impl AffineWeylGroup {
    pub fn new(md: &MetaplecticDatum) -> Result<Self, HeckeError> {
        let root = md.root_datum();
        let weyl = root.weyl_group()?;
        let positive: Vec<PositiveCoroot> = md
            .coroots()
            .iter()
            .zip(md.n_alphas())
            .filter(|(c, _)| c.positive)
            .map(|(c, &n_alpha)| PositiveCoroot { coroot: c.coroot.clone(), root: c.root.clone(), n_alpha })
            .collect();
        let positive_set = positive.iter().map(|p| p.coroot.clone()).collect();
        let inverses = (0..weyl.order()).map(|k| weyl.inverse(k)).collect();
        let words = weyl.elements().iter().map(|e| e.word.clone()).collect();
        let rank = md.rank();
        let mut g = AffineWeylGroup {
            weyl,
            lattice: md.lambda().clone(),
            positive,
            positive_set,
            inverses,
            words,
            simple: Vec::new(),
            finite_simple: 0,
        };
        let zero = vec![0; rank];
        for s in g.weyl.generators().to_vec() {
            let w = g.weyl.index_of(&s).expect("generator is enumerated");
            g.simple.push(AffineWeylElement { lambda: zero.clone(), w });
        }
        g.finite_simple = g.simple.len();
        // affine simple reflections t_φ s_φ, φ = n_α α, are the remaining length-one reflections
        for p in g.positive.clone() {
            let refl: IntMatrix = (0..rank)
                .map(|r| (0..rank).map(|c| i64::from(r == c) - p.coroot[r] * p.root[c]).collect())
                .collect();
            let w = g.weyl.index_of(&refl).expect("reflections lie in W");
            let phi: Vec<i64> = p.coroot.iter().map(|x| x * p.n_alpha).collect();
            let x = AffineWeylElement { lambda: phi, w };
            if g.length(&x) == 1 {
                g.simple.push(x);
            }
        }
        Ok(g)
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.weyl.element(0).matrix.len()
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement { lambda: vec![0; self.rank()], w: 0 }
    }

    pub fn translation(&self, lambda: &[i64]) -> Result<AffineWeylElement, HeckeError> {
        if !self.lattice.contains(lambda) {
            return Err(HeckeError::NotInLambda(lambda.to_vec()));
        }
        Ok(AffineWeylElement { lambda: lambda.to_vec(), w: 0 })
    }

    pub fn finite(&self, w: usize) -> AffineWeylElement {
        AffineWeylElement { w, ..self.identity() }
    }

    /// Simple affine reflections: the finite simple reflections first, then the affine ones.
    pub fn simple_reflections(&self) -> &[AffineWeylElement] {
        &self.simple
    }

    pub fn finite_simple_count(&self) -> usize {
        self.finite_simple
    }

    pub fn contains(&self, x: &AffineWeylElement) -> bool {
        x.w < self.weyl.order() && self.lattice.contains(&x.lambda)
    }

    pub fn mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let moved = self.weyl.act(x.w, &y.lambda);
        AffineWeylElement {
            lambda: x.lambda.iter().zip(&moved).map(|(a, b)| a + b).collect(),
            w: self.weyl.compose(x.w, y.w),
        }
    }

    pub fn inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        let wi = self.inverses[x.w];
        let moved = self.weyl.act(wi, &x.lambda);
        AffineWeylElement { lambda: moved.iter().map(|a| -a).collect(), w: wi }
    }

    fn length_with(&self, x: &AffineWeylElement, dual: bool) -> i64 {
        let wi = self.inverses[x.w];
        self.positive
            .iter()
            .map(|p| {
                let raw = intmat::dot(&p.root, &x.lambda);
                let a = if dual { raw / p.n_alpha } else { raw };
                if self.positive_set.contains(&self.weyl.act(wi, &p.coroot)) {
                    a.abs()
                } else {
                    (a - 1).abs()
                }
            })
            .sum()
    }

    /// Length in `W_a`, measured by the dual functionals `α^∨ / n_α`.
    pub fn length(&self, x: &AffineWeylElement) -> i64 {
        self.length_with(x, true)
    }

    /// Length of the same element in the affine Weyl group `Y ⋊ W` of the cover's own datum.
    pub fn length_in_y(&self, x: &AffineWeylElement) -> i64 {
        self.length_with(x, false)
    }

    /// `x = ω · s_{word[0]} ⋯ s_{word[k−1]}` with `ℓ(ω) = 0` and `k = ℓ(x)`.
    pub fn reduced_decomposition(&self, x: &AffineWeylElement) -> (AffineWeylElement, Vec<usize>) {
        let mut y = x.clone();
        let mut len = self.length(&y);
        let mut peeled = Vec::new();
        while len > 0 {
            let (i, ys) = self
                .simple
                .iter()
                .enumerate()
                .map(|(i, s)| (i, self.mul(&y, s)))
                .find(|(_, ys)| self.length(ys) < len)
                .expect("an element of positive length has a right descent");
            peeled.push(i);
            y = ys;
            len -= 1;
        }
        peeled.reverse();
        (y, peeled)
    }

    /// Coordinates of `λ` in the `Λ` basis.
    pub fn lambda_coordinates(&self, lambda: &[i64]) -> Vec<i64> {
        self.lattice.coordinates(lambda).expect("translation lies in Λ")
    }

    pub fn lambda_basis(&self) -> &[Vec<i64>] {
        &self.lattice.basis
    }

    /// Reduced word of the finite part.
    pub fn finite_word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// All elements of length at most `max_len` whose translation part has
    /// `Λ`-coordinates bounded by `box_bound` in absolute value.
    pub fn elements_up_to(&self, max_len: i64, box_bound: i64) -> Vec<AffineWeylElement> {
        let in_box = |x: &AffineWeylElement| self.lambda_coordinates(&x.lambda).iter().all(|c| c.abs() <= box_bound);
        let mut gens: Vec<AffineWeylElement> = self.simple.clone();
        gens.extend(self.length_zero_generators());
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = self.mul(&x, g);
                if self.length(&y) <= max_len && in_box(&y) && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_by_key(|x| (self.length(x), self.label(x)));
        out
    }

    /// Length-zero elements `t_λ w` with `λ` among `0` and `±` the `Λ` basis vectors.
    fn length_zero_generators(&self) -> Vec<AffineWeylElement> {
        let mut cands = vec![vec![0; self.rank()]];
        for b in &self.lattice.basis {
            cands.push(b.clone());
            cands.push(b.iter().map(|x| -x).collect());
        }
        let mut out = Vec::new();
        for lambda in cands {
            for w in 0..self.weyl.order() {
                let x = AffineWeylElement { lambda: lambda.clone(), w };
                if self.length(&x) == 0 && x != self.identity() {
                    out.push(x);
                }
            }
        }
        out
    }

    /// `t(c_1,…,c_r)` in `Λ`-coordinates followed by a reduced word of the finite part.
    pub fn label(&self, x: &AffineWeylElement) -> String {
        let c: Vec<String> = self.lambda_coordinates(&x.lambda).iter().map(i64::to_string).collect();
        let word: String = self.words[x.w].iter().map(|i| format!("s{}", i + 1)).collect();
        if word.is_empty() {
            format!("t({})", c.join(","))
        } else {
            format!("t({})·{word}", c.join(","))
        }
    }
}
