use serde::Serialize;

use super::{commutator_from_cocycle, random, torus_cocycle, torus_commutator, CocycleError, SL2Element, Sl2Cover, TorusElement};
use crate::arith::{LaurentNumber, PrimeField, RatFunc};
use crate::hilbert::tame_symbol;
use crate::metalattice::MetaplecticDatum;
use crate::rootdata::{build_root_datum, BilinearForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub identity: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub q: u64,
    pub n: u64,
    pub q_alpha: i64,
    pub seed: u64,
    pub lines: Vec<CheckLine>,
}

impl CocycleReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn line(&self, identity: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.identity == identity)
    }
}

struct Tally {
    line: CheckLine,
}

impl Tally {
    fn new(identity: &'static str) -> Self {
        Tally { line: CheckLine { identity, trials: 0, failures: 0, counterexample: None } }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.line.trials += 1;
        if !ok {
            self.line.failures += 1;
            if self.line.counterexample.is_none() {
                self.line.counterexample = Some(witness());
            }
        }
    }
}

/// Runs the cocycle, splitting and commutator identities on `trials` random
/// inputs each, for the `n`-fold cover of `SL_2` with `Q(α) = q_alpha`.
pub fn cocycle_check(q: u64, n: u64, q_alpha: i64, trials: usize, seed: u64) -> Result<CocycleReport, CocycleError> {
    let field = PrimeField::new(q)?;
    let cover = Sl2Cover::new(field.clone(), n, q_alpha)?;
    let root = build_root_datum(1, vec![vec![1]], vec![vec![2]]).expect("SL2 datum");
    let md = MetaplecticDatum::new(root, BilinearForm::new(vec![vec![2 * q_alpha]]), n as i64)?;
    let mut rng = random::rng(seed);

    let mut torus_id = Tally::new("torus_cocycle");
    let mut torus_comm = Tally::new("torus_commutator");
    for _ in 0..trials {
        let s = random::torus(&mut rng, q, 1);
        let t = random::torus(&mut rng, q, 1);
        let u = random::torus(&mut rng, q, 1);
        let sig = |a: &TorusElement<LaurentNumber>, b: &TorusElement<LaurentNumber>| torus_cocycle(&field, a, b, &md);
        let lhs = sig(&s, &t)?.mul(&sig(&s.mul(&t)?, &u)?)?;
        let rhs = sig(&s, &t.mul(&u)?)?.mul(&sig(&t, &u)?)?;
        torus_id.record(lhs == rhs, || format!("s={:?} t={:?} u={:?}", s.data(), t.data(), u.data()));
        let c1 = torus_commutator(&field, &s, &t, &md)?;
        let c2 = commutator_from_cocycle(&field, &s, &t, &md)?;
        torus_comm.record(c1 == c2, || format!("s={:?} t={:?}: {c1} vs {c2}", s.data(), t.data()));
    }

    let mut kub = Tally::new("kubota_cocycle");
    let mut assoc = Tally::new("meta_associativity");
    for _ in 0..trials {
        let g1 = random::sl2(&mut rng, q);
        let g2 = random::sl2(&mut rng, q);
        let g3 = random::sl2(&mut rng, q);
        let g12 = g1.mul(&g2)?;
        let g23 = g2.mul(&g3)?;
        let lhs = cover.sigma(&g1, &g2)?.mul(&cover.sigma(&g12, &g3)?)?;
        let rhs = cover.sigma(&g1, &g23)?.mul(&cover.sigma(&g2, &g3)?)?;
        kub.record(lhs == rhs, || format!("g1={g1} g2={g2} g3={g3}"));
        let (x, y, z) = (cover.lift(g1), cover.lift(g2), cover.lift(g3));
        let left = cover.mul(&cover.mul(&x, &y)?, &z)?;
        let right = cover.mul(&x, &cover.mul(&y, &z)?)?;
        assoc.record(left == right, || format!("{} {} {}", x.g, y.g, z.g));
    }

    let mut split = Tally::new("kappa_splitting");
    for _ in 0..trials {
        let k1 = random::sl2_integral(&mut rng, q);
        let k2 = random::sl2_integral(&mut rng, q);
        let k12 = k1.mul(&k2)?;
        let lhs = cover.kappa(&k1)?.mul(&cover.kappa(&k2)?)?.mul(&cover.sigma(&k1, &k2)?)?;
        split.record(lhs == cover.kappa(&k12)?, || format!("k1={k1} k2={k2}"));
    }

    let mut diag = Tally::new("diagonal_commutator");
    let mut diag_inv = Tally::new("diagonal_commutator_inverse");
    for _ in 0..trials {
        let x = random::laurent(&mut rng, q, 3, 3);
        let y = random::laurent(&mut rng, q, 3, 3);
        let (xd, yd) = (x.valuation_leading()?, y.valuation_leading()?);
        let hx = SL2Element::diag(RatFunc::laurent_poly(q, xd.0, &[xd.1 as i64]))?;
        let hy = SL2Element::diag(RatFunc::laurent_poly(q, yd.0, &[yd.1 as i64]))?;
        let comm = cover.sigma(&hx, &hy)?.mul(&cover.sigma(&hy, &hx)?.inv())?;
        let expected = tame_symbol(&field, xd, yd, n)?.pow(2 * q_alpha);
        diag.record(comm == expected, || format!("x={x} y={y}: sigma commutator {comm}, (x,y)^(2Q) = {expected}"));
        diag_inv.record(comm == expected.inv(), || format!("x={x} y={y}"));
    }

    Ok(CocycleReport {
        q,
        n,
        q_alpha,
        seed,
        lines: vec![torus_id.line, torus_comm.line, kub.line, assoc.line, split.line, diag.line, diag_inv.line],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_on_the_triple_cover() {
        for q_alpha in [1, 2] {
            let r = cocycle_check(7, 3, q_alpha, 200, 11).unwrap();
            for id in ["torus_cocycle", "torus_commutator", "kubota_cocycle", "meta_associativity", "kappa_splitting"] {
                assert!(r.line(id).unwrap().passed(), "{:?}", r.line(id));
            }
            // the Kubota cocycle pairs diagonal elements as (y, x)^Q
            assert!(r.line("diagonal_commutator_inverse").unwrap().passed());
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        assert_eq!(cocycle_check(13, 2, 1, 30, 5).unwrap(), cocycle_check(13, 2, 1, 30, 5).unwrap());
    }
}
