use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::affine::AffineWeylElement;
use super::algebra::{HeckeAlgebra, HeckeElement};
use super::HeckeError;
use crate::intmat;
use crate::metalattice::{dominant_lambda, dual_root_datum, MetaplecticDatum};
use crate::scalar::Scalar;

/// Longest braid relation checked; larger orders are treated as infinite.
const MAX_BRAID: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    /// `"1"`–`"6"`, `"3'"`, `"4'"`, `"braid"` or `"associativity"`.
    pub relation: String,
    pub instance: String,
    pub holds: bool,
    /// Both sides in the `T'` basis when the relation fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub height: i64,
    pub max_length: i64,
    pub seed: u64,
    pub simple_reflections: Vec<String>,
    pub checks: Vec<RelationCheck>,
    pub all_hold: bool,
}

impl PresentationReport {
    pub fn count(&self, relation: &str) -> usize {
        self.checks.iter().filter(|c| c.relation == relation).count()
    }

    pub fn holds(&self, relation: &str) -> bool {
        self.checks.iter().filter(|c| c.relation == relation).all(|c| c.holds)
    }
}

fn render(alg: &HeckeAlgebra, h: &HeckeElement) -> String {
    let terms = alg.labelled_terms(h);
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(l, c)| format!("({c}) T[{l}]")).collect::<Vec<_>>().join(" + ")
}

struct Checker<'a> {
    alg: &'a HeckeAlgebra,
    checks: Vec<RelationCheck>,
}

impl Checker<'_> {
    fn record(&mut self, relation: &str, instance: String, lhs: &HeckeElement, rhs: &HeckeElement) {
        let holds = lhs == rhs;
        let witness = (!holds).then(|| {
            let (l, r) = (self.alg.to_group_basis(lhs), self.alg.to_group_basis(rhs));
            format!("{} != {}", render(self.alg, &l), render(self.alg, &r))
        });
        self.checks.push(RelationCheck { relation: relation.into(), instance, holds, witness });
    }
}

fn scaled(v: &[i64], k: i64) -> Vec<i64> {
    v.iter().map(|x| x * k).collect()
}

fn combine(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// Relations (1)–(6) of the metaplectic Iwahori–Hecke presentation in the
/// `T'` basis over every qualifying dominant `λ` of height at most `height`,
/// plus the braid relations and associativity on `trials` random triples of
/// length at most `max_length`.
pub fn verify_presentation(
    md: &MetaplecticDatum,
    height: i64,
    max_length: i64,
    trials: usize,
    seed: u64,
) -> Result<PresentationReport, HeckeError> {
    let alg = HeckeAlgebra::new(md)?;
    let g = alg.group();
    let root = md.root_datum();
    let mut c = Checker { alg: &alg, checks: Vec::new() };
    let q = Scalar::q_pow(1);
    let q1 = &q - &Scalar::one();
    let tp = |l: &[i64]| -> Result<HeckeElement, HeckeError> { Ok(alg.t_group(&g.translation(l)?)) };
    let dominant = dominant_lambda(md, height);
    let n_alphas = md.simple_n_alphas();

    for (i, l) in dominant.iter().enumerate() {
        for m in &dominant[i..] {
            let lhs = alg.mul(&tp(l)?, &tp(m)?)?;
            c.record("1", format!("λ={l:?} μ={m:?}"), &lhs, &tp(&combine(l, m, 1))?);
        }
    }
    for (k, s) in g.simple_reflections()[..g.finite_simple_count()].iter().enumerate() {
        let alpha = &root.simple_coroots()[k];
        let na = n_alphas[k];
        let ts = alg.t(s);
        let tsi = alg.t_simple_inverse(s);
        for l in &dominant {
            let pairing = intmat::dot(&root.simple_roots()[k], l);
            let tl = tp(l)?;
            if pairing == 0 {
                c.record("2", format!("α_{} λ={l:?}", k + 1), &alg.mul(&ts, &tl)?, &alg.mul(&tl, &ts)?);
            }
            if pairing == na || pairing == 2 * na {
                let lhs = alg.product(&[tl.clone(), tsi.clone(), tl.clone(), tsi.clone()])?;
                let once = tp(&combine(&scaled(l, 2), alpha, -na))?;
                let rhs = if pairing == na {
                    once.scale(&Scalar::q_pow(na - 1))
                } else {
                    let twice = tp(&combine(&scaled(l, 2), alpha, -2 * na))?;
                    let tail = alg.mul(&once, &tsi)?.scale(&(&q1 * &Scalar::q_pow(na - 1)));
                    twice.scale(&Scalar::q_pow(2 * na - 1)).add(&tail)
                };
                let name = if pairing == na { "3" } else { "4" };
                c.record(name, format!("α_{} λ={l:?}", k + 1), &lhs, &rhs);
            }
        }
        if root.semisimple_rank() == 1 {
            for (name, half) in [("3'", true), ("4'", false)] {
                let l: Vec<i64> = if half {
                    if na % 2 != 0 {
                        continue;
                    }
                    scaled(alpha, na / 2)
                } else {
                    scaled(alpha, na)
                };
                if !md.in_lambda(&l) {
                    continue;
                }
                let tl = tp(&l)?;
                let lhs = alg.product(&[tl.clone(), tsi.clone(), tl.clone()])?;
                let rhs = if half {
                    ts.scale(&Scalar::q_pow(na - 1))
                } else {
                    ts.scale(&Scalar::q_pow(2 * na - 1)).add(&tl.scale(&(&q1 * &Scalar::q_pow(na - 1))))
                };
                c.record(name, format!("λ={l:?}"), &lhs, &rhs);
            }
        }
    }
    for s in g.simple_reflections() {
        let ts = alg.t(s);
        let lhs = alg.mul(&ts.sub(&alg.one().scale(&q)), &ts.add(&alg.one()))?;
        c.record("5", g.label(s), &lhs, &HeckeElement::zero());
    }
    let weyl = g.weyl();
    for a in 0..weyl.order() {
        for b in 0..weyl.order() {
            let ab = weyl.compose(a, b);
            if weyl.element(ab).length == weyl.element(a).length + weyl.element(b).length {
                let (x, y) = (g.finite(a), g.finite(b));
                let lhs = alg.mul(&alg.t(&x), &alg.t(&y))?;
                c.record("6", format!("{} · {}", g.label(&x), g.label(&y)), &lhs, &alg.t(&g.finite(ab)));
            }
        }
    }
    let simple = g.simple_reflections();
    for i in 0..simple.len() {
        for j in i + 1..simple.len() {
            let (si, sj) = (&simple[i], &simple[j]);
            let pair = g.mul(si, sj);
            let mut p = pair.clone();
            let mut order = 1;
            while p != g.identity() && order <= MAX_BRAID {
                p = g.mul(&p, &pair);
                order += 1;
            }
            if order > MAX_BRAID {
                continue;
            }
            let word = |first: &AffineWeylElement, second: &AffineWeylElement| {
                (0..order).map(|k| alg.t(if k % 2 == 0 { first } else { second })).collect::<Vec<_>>()
            };
            let lhs = alg.product(&word(si, sj))?;
            let rhs = alg.product(&word(sj, si))?;
            c.record("braid", format!("{} {} (m={order})", g.label(si), g.label(sj)), &lhs, &rhs);
        }
    }
    let pool = g.elements_up_to(max_length, 2 * max_length + 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let picks: Vec<&AffineWeylElement> = (0..3).map(|_| pool.choose(&mut rng).expect("identity is present")).collect();
        let [a, b, d] = [0, 1, 2].map(|k| alg.t(picks[k]));
        let lhs = alg.mul(&alg.mul(&a, &b)?, &d)?;
        let rhs = alg.mul(&a, &alg.mul(&b, &d)?)?;
        let instance = picks.iter().map(|x| g.label(x)).collect::<Vec<_>>().join(", ");
        c.record("associativity", instance, &lhs, &rhs);
    }
    let all_hold = c.checks.iter().all(|k| k.holds);
    Ok(PresentationReport {
        height,
        max_length,
        seed,
        simple_reflections: g.simple_reflections().iter().map(|s| g.label(s)).collect(),
        checks: c.checks,
        all_hold,
    })
}

/// `U_x U_y = Σ_z c_z U_z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureEntry {
    pub x: String,
    pub y: String,
    pub product: Vec<(String, Scalar)>,
}

/// All products `U_x U_y` with `ℓ(x) + ℓ(y) ≤ max_length`, ordered by the
/// lengths of the factors and then by label. Labels use `Λ`-coordinates.
pub fn structure_table(md: &MetaplecticDatum, max_length: i64) -> Result<Vec<StructureEntry>, HeckeError> {
    let alg = HeckeAlgebra::new(md)?;
    let g = alg.group();
    let elems = g.elements_up_to(max_length, 2 * max_length + 2);
    let mut out = Vec::new();
    for x in &elems {
        for y in &elems {
            if g.length(x) + g.length(y) > max_length {
                continue;
            }
            let p = alg.bernstein_rescale(&alg.mul(&alg.u(x), &alg.u(y))?);
            out.push(StructureEntry { x: g.label(x), y: g.label(y), product: alg.labelled_terms(&p) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualIsomorphismReport {
    pub equal_dual_data: bool,
    pub entries: usize,
    pub tables_equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
}

/// Compares the dual root data of two covers and, when they agree, the
/// `U`-basis structure constants of their Iwahori–Hecke algebras.
pub fn dual_isomorphism(a: &MetaplecticDatum, b: &MetaplecticDatum, max_length: i64) -> Result<DualIsomorphismReport, HeckeError> {
    let (da, db) = (dual_root_datum(a)?, dual_root_datum(b)?);
    let equal_dual_data = da.cartan == db.cartan
        && da.roots_in_lattice == db.roots_in_lattice
        && da.coroot_pairings == db.coroot_pairings
        && da.positive == db.positive
        && da.simple == db.simple;
    let ta = structure_table(a, max_length)?;
    let tb = structure_table(b, max_length)?;
    let first_difference = if ta.len() != tb.len() {
        Some(format!("{} entries vs {}", ta.len(), tb.len()))
    } else {
        ta.iter().zip(&tb).find(|(x, y)| x != y).map(|(x, y)| format!("{x:?} vs {y:?}"))
    };
    Ok(DualIsomorphismReport {
        equal_dual_data,
        entries: ta.len(),
        tables_equal: first_difference.is_none(),
        first_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn rank_one_relations() {
        let r = verify_presentation(&sl2(1, 3), 8, 6, 50, 1).unwrap();
        assert!(r.all_hold, "{:#?}", r.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
        assert_eq!(r.count("4'"), 1);
        assert_eq!(r.count("4"), 1);
        let r = verify_presentation(&sl2(1, 4), 8, 6, 50, 1).unwrap();
        assert!(r.all_hold, "{:#?}", r.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>());
        assert_eq!(r.count("3'"), 1);
    }

    #[test]
    fn bernstein_variables() {
        let md = sl2(1, 3);
        let alg = HeckeAlgebra::new(&md).unwrap();
        let g = alg.group();
        let t3 = g.translation(&[3]).unwrap();
        assert_eq!(alg.u(&t3), HeckeElement::term(t3.clone(), Scalar::v_pow(-2)));
        assert_eq!(alg.u(&g.identity()), alg.one());
        // U_λ U_s^{-1} U_λ = q^{-1} U_s + (1 − q^{-1}) U_λ for λ = n_α α, independent of n_α
        for (q_form, n, l) in [(1, 3, 3), (1, 4, 4), (1, 1, 1)] {
            let md = sl2(q_form, n);
            let alg = HeckeAlgebra::new(&md).unwrap();
            let g = alg.group();
            let s = &g.simple_reflections()[0];
            let ul = alg.u(&g.translation(&[l]).unwrap());
            let p = alg.bernstein_rescale(&alg.product(&[ul.clone(), alg.t_simple_inverse(s), ul]).unwrap());
            let expect = HeckeElement::term(s.clone(), Scalar::q_pow(-1))
                .add(&HeckeElement::term(g.translation(&[l]).unwrap(), Scalar::one() - Scalar::q_pow(-1)));
            assert_eq!(p, expect, "n = {n}");
        }
    }

    #[test]
    fn dual_isomorphic_covers() {
        let r = dual_isomorphism(&sl2(1, 3), &sl2(3, 9), 6).unwrap();
        assert!(r.equal_dual_data && r.tables_equal, "{r:?}");
        let r = dual_isomorphism(&sl2(1, 3), &sl2(1, 4), 4).unwrap();
        assert!(!r.equal_dual_data);
    }

    #[test]
    fn rank_two() {
        let r = verify_presentation(&sl3(1, 2), 8, 4, 20, 3).unwrap();
        assert!(r.all_hold, "{:#?}", r.checks.iter().filter(|c| !c.holds).take(3).collect::<Vec<_>>());
        assert_eq!((r.count("3"), r.count("4"), r.count("braid")), (2, 2, 3));
    }
}
