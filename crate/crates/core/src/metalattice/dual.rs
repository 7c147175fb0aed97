use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use super::{MetaError, MetaplecticDatum};
use crate::intmat::{self, IntMatrix, Rat};
use crate::rootdata::{build_root_datum, RootDatum};

/// The quadruple `(X, Φ, X′, Φ′)` with `X = Λ`, `Φ = {n_α α}` and
/// `Φ′ = {α^∨ / n_α}`.
#[derive(Clone, Debug, Serialize)]
pub struct DualRootDatum {
    /// Basis of `X = Λ` in `Y`-coordinates.
    pub lattice: Vec<Vec<i64>>,
    /// `n_α α` in `Y`-coordinates, in coroot-set order.
    pub roots: Vec<Vec<i64>>,
    /// The same roots in coordinates of the `Λ` basis.
    pub roots_in_lattice: Vec<Vec<i64>>,
    /// `α^∨ / n_α` with exact rational coordinates in `Y*`.
    #[serde(serialize_with = "ser_rat_vecs")]
    pub coroots: Vec<Vec<Rat>>,
    /// Integrality certificate: `⟨α^∨ / n_α, b_k⟩` for each basis vector `b_k` of `Λ`.
    pub coroot_pairings: Vec<Vec<i64>>,
    pub positive: Vec<bool>,
    /// Indices (into `roots`) of the simple roots `n_{α_i} α_i`.
    pub simple: Vec<usize>,
    /// `cartan[i][j] = ⟨φ′_i, φ_j⟩` over the simple system.
    pub cartan: IntMatrix,
}

fn ser_rat_vecs<S: serde::Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let strs: Vec<String> = row.iter().map(|r| r.to_string()).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

impl DualRootDatum {
    /// The datum on `Λ` used for the affine Weyl group: its "coroots" are the
    /// translation directions `Φ ⊂ Λ` and its "roots" the functionals `Φ′`,
    /// all in `Λ`-basis coordinates.
    pub fn translation_datum(&self) -> RootDatum {
        let coroots: Vec<Vec<i64>> = self.simple.iter().map(|&k| self.roots_in_lattice[k].clone()).collect();
        let roots: Vec<Vec<i64>> = self.simple.iter().map(|&k| self.coroot_pairings[k].clone()).collect();
        build_root_datum(self.lattice.len(), coroots, roots).expect("dual datum was verified")
    }
}

fn fail(axiom: &'static str, witness: String) -> MetaError {
    MetaError::AxiomFailure { axiom, witness }
}

pub fn dual_root_datum(md: &MetaplecticDatum) -> Result<DualRootDatum, MetaError> {
    let root = md.root_datum();
    let lam = md.lambda();
    let mut roots = Vec::new();
    let mut roots_in_lattice = Vec::new();
    let mut coroots = Vec::new();
    let mut coroot_pairings = Vec::new();
    let mut positive = Vec::new();
    for (c, &na) in md.coroots().iter().zip(md.n_alphas()) {
        let phi: Vec<i64> = c.coroot.iter().map(|x| x * na).collect();
        let Some(coords) = lam.coordinates(&phi) else {
            return Err(fail("n_alpha alpha lies in Lambda", format!("{phi:?}")));
        };
        let mut pair = Vec::with_capacity(lam.basis.len());
        for b in &lam.basis {
            let p = intmat::dot(&c.root, b);
            if p % na != 0 {
                return Err(fail("alpha^vee / n_alpha pairs integrally with Lambda", format!("{:?} on {b:?}", c.root)));
            }
            pair.push(p / na);
        }
        let phi_prime: Vec<Rat> = c.root.iter().map(|&x| Rat::new(x, na)).collect();
        let two: Rat = phi_prime.iter().zip(&phi).map(|(a, &b)| *a * b).sum();
        if two != Rat::from_integer(2) {
            return Err(fail("<phi', phi> = 2", format!("{phi:?} gives {two}")));
        }
        roots.push(phi);
        roots_in_lattice.push(coords);
        coroots.push(phi_prime);
        coroot_pairings.push(pair);
        positive.push(c.positive);
    }

    let root_set: HashSet<&Vec<i64>> = roots.iter().collect();
    let coroot_set: HashSet<&Vec<Rat>> = coroots.iter().collect();
    for i in 0..root.semisimple_rank() {
        for (phi, phi_prime) in roots.iter().zip(&coroots) {
            let moved = root.reflect(i, phi);
            if !root_set.contains(&moved) {
                return Err(fail("Phi is W-stable", format!("s_{i} {phi:?} = {moved:?}")));
            }
            // contragredient action on rationals: x − ⟨x, α_i⟩ α_i^∨
            let c: Rat = phi_prime.iter().zip(&root.simple_coroots()[i]).map(|(a, &b)| *a * b).sum();
            let moved: Vec<Rat> = phi_prime.iter().zip(&root.simple_roots()[i]).map(|(a, &b)| *a - c * b).collect();
            if !coroot_set.contains(&moved) {
                return Err(fail("Phi' is W-stable", format!("s_{i} moves {phi_prime:?} outside")));
            }
        }
    }
    for (a, a_prime) in roots.iter().zip(&coroots) {
        for b in &roots {
            let c: Rat = a_prime.iter().zip(b).map(|(x, &y)| *x * y).sum();
            if !c.is_integer() {
                return Err(fail("Cartan integers are integral", format!("<{a_prime:?}, {b:?}> = {c}")));
            }
            let c = c.to_integer();
            let refl: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - c * y).collect();
            if !root_set.contains(&refl) {
                return Err(fail("Phi is closed under its reflections", format!("s_{a:?} {b:?} = {refl:?}")));
            }
        }
    }

    let simple: Vec<usize> = root
        .simple_coroots()
        .iter()
        .map(|a| md.coroots().iter().position(|c| &c.coroot == a).expect("simple coroot"))
        .collect();
    let cartan: IntMatrix = simple
        .iter()
        .map(|&i| {
            simple
                .iter()
                .map(|&j| {
                    let c: Rat = coroots[i].iter().zip(&roots[j]).map(|(x, &y)| *x * y).sum();
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    Ok(DualRootDatum {
        lattice: lam.basis.clone(),
        roots,
        roots_in_lattice,
        coroots,
        coroot_pairings,
        positive,
        simple,
        cartan,
    })
}

/// Generator `k0 · α0` of `Λ ∩ Qα` (`α0` primitive) compared against `n_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichWitness {
    pub coroot: Vec<i64>,
    pub n_alpha: i64,
    /// `α = m · α0`.
    pub multiplicity: i64,
    pub generator_multiple: i64,
    /// `n_α Zα ⊂ Λ ∩ Qα`.
    pub lower: bool,
    /// `Λ ∩ Qα ⊂ (n_α / 2) Zα`.
    pub upper: bool,
}

impl MetaplecticDatum {
    /// `Λ ∩ Qα` for every coroot, with the two containments evaluated.
    pub fn sandwich(&self) -> Vec<SandwichWitness> {
        let n = self.degree();
        self.coroots()
            .iter()
            .zip(self.n_alphas())
            .map(|(c, &na)| {
                let m = c.coroot.iter().fold(0i64, |g, &x| g.gcd(&x));
                let a0: Vec<i64> = c.coroot.iter().map(|x| x / m).collect();
                let content = intmat::mat_vec(self.form().matrix(), &a0).iter().fold(0i64, |g, &x| g.gcd(&x));
                let k0 = n / n.gcd(&content);
                SandwichWitness {
                    coroot: c.coroot.clone(),
                    n_alpha: na,
                    multiplicity: m,
                    generator_multiple: k0,
                    lower: (na * m) % k0 == 0,
                    upper: (2 * k0) % (na * m) == 0,
                }
            })
            .collect()
    }

    /// `Q(α) | B(α, e_k)` for every coroot and basis vector; returns the violations.
    pub fn divisibility_violations(&self) -> Vec<(Vec<i64>, usize)> {
        let mut bad = Vec::new();
        for (c, &q) in self.coroots().iter().zip(self.q_values()) {
            let row = intmat::mat_vec(self.form().matrix(), &c.coroot);
            for (k, v) in row.iter().enumerate() {
                if v % q != 0 {
                    bad.push((c.coroot.clone(), k));
                }
            }
        }
        bad
    }

    /// `⟨α^∨, β⟩ ∈ n_α Z` for every coroot and `Λ` basis vector `β`; returns the violations.
    pub fn pairing_violations(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut bad = Vec::new();
        for (c, &na) in self.coroots().iter().zip(self.n_alphas()) {
            for b in &self.lambda().basis {
                if intmat::dot(&c.root, b) % na != 0 {
                    bad.push((c.coroot.clone(), b.clone()));
                }
            }
        }
        bad
    }

    /// Every simple reflection maps the `Λ` basis back into `Λ`.
    pub fn lambda_is_weyl_stable(&self) -> bool {
        let root = self.root_datum();
        (0..root.semisimple_rank())
            .all(|i| self.lambda().basis.iter().all(|b| self.lambda().contains(&root.reflect(i, b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::BilinearForm;

    fn sl2(q: i64, n: i64) -> MetaplecticDatum {
        let root = build_root_datum(1, vec![vec![1]], vec![vec![2]]).unwrap();
        MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2 * q]]), n).unwrap()
    }

    fn sl3(n: i64) -> MetaplecticDatum {
        let root = build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-1, 2]]).unwrap();
        MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2, -1], vec![-1, 2]]), n).unwrap()
    }

    #[test]
    fn sl2_triple_cover() {
        let d = dual_root_datum(&sl2(1, 3)).unwrap();
        assert_eq!(d.lattice, vec![vec![3]]);
        assert_eq!(d.roots, vec![vec![3], vec![-3]]);
        assert_eq!(d.coroots[0], vec![Rat::new(2, 3)]);
        assert_eq!(d.coroot_pairings[0], vec![2]);
        assert_eq!(d.cartan, vec![vec![2]]);
    }

    #[test]
    fn trivial_cover_is_langlands_dual() {
        for md in [sl2(1, 1), sl3(1)] {
            let d = dual_root_datum(&md).unwrap();
            let g = md.root_datum().cartan_matrix();
            assert_eq!(d.cartan, *g);
            assert_eq!(d.roots, md.coroots().iter().map(|c| c.coroot.clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn sl3_triple_cover() {
        let md = sl3(3);
        let d = dual_root_datum(&md).unwrap();
        assert_eq!(d.roots.len(), 6);
        for (phi, c) in d.roots.iter().zip(md.coroots()) {
            assert_eq!(*phi, c.coroot.iter().map(|x| 3 * x).collect::<Vec<_>>());
        }
        assert_eq!(md.lambda().index, 3);
    }

    #[test]
    fn structural_invariants() {
        for md in [sl2(1, 3), sl2(1, 2), sl2(2, 4), sl3(3), sl3(2)] {
            assert!(md.lambda_is_weyl_stable());
            assert!(md.divisibility_violations().is_empty());
            assert!(md.pairing_violations().is_empty());
            for w in md.sandwich() {
                assert!(w.lower && w.upper, "{w:?}");
            }
        }
    }

    #[test]
    fn broken_form_is_reported() {
        // B is not W-invariant for SL3: rejected when building the datum
        let root = build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2, 0], vec![0, 2]]), 3).is_err());
    }
}
