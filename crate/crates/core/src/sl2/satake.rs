use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GenuineCosetReport, Sl2Engine, Sl2Error};
use crate::arith::RatFunc;
use crate::cocycle::SL2Element;
use crate::scalar::{CycloSum, Scalar};

/// Points checked per shell besides the representative `u = t^m`.
const SPOT_CHECKS: usize = 3;

/// One piece of the partition of `U ≅ F`: `u ∈ t^shell (residue + tO)`,
/// or all of `O` when `shell` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellRecord {
    pub shell: Option<i64>,
    pub residue: Option<u64>,
    pub class: GenuineCosetReport,
    pub measure: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeReport {
    pub l: i64,
    pub m: i64,
    pub value: Scalar,
    pub shells: Vec<ShellRecord>,
}

/// Rows `λ = lα` of the Satake transform, read in the monomial basis of `C[Λ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeMatrix {
    pub q: u64,
    pub n: u64,
    pub q_alpha: i64,
    pub step: i64,
    pub rows: Vec<SatakeRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeRow {
    pub l: i64,
    /// `(m, a_{lm})` for `m ∈ Λ`, `|m| ≤ l + step`.
    pub entries: Vec<(i64, Scalar)>,
}

impl SatakeRow {
    pub fn get(&self, m: i64) -> Scalar {
        self.entries.iter().find(|(k, _)| *k == m).map(|(_, s)| s.clone()).unwrap_or_default()
    }

    /// `a_{λμ} = 0` for dominant `μ > λ`, and `a_{λλ} ≠ 0`.
    pub fn triangular(&self) -> bool {
        self.entries.iter().all(|(m, s)| *m <= self.l || s.is_zero()) && !self.get(self.l).is_zero()
    }

    pub fn w_symmetric(&self) -> bool {
        self.entries.iter().all(|(m, s)| &self.get(-m) == s)
    }
}

impl SatakeMatrix {
    pub fn row(&self, l: i64) -> Option<&SatakeRow> {
        self.rows.iter().find(|r| r.l == l)
    }
}

fn unit<R: Rng>(rng: &mut R, q: u64, shell: i64, lead: Option<u64>) -> RatFunc {
    let mut c = vec![lead.unwrap_or_else(|| rng.gen_range(1..q)) as i64];
    c.extend((0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..q) as i64));
    RatFunc::laurent_poly(q, shell, &c)
}

impl Sl2Engine {
    fn translate_class(&self, m: i64, u: RatFunc) -> Result<GenuineCosetReport, Sl2Error> {
        let g = SL2Element::pi_power(self.modulus(), m).mul(&SL2Element::upper(u))?;
        self.genuine_cartan(&self.cover().lift(g))
    }

    /// `(S c_λ)(μ) = δ^{1/2}(π^μ) ∫_U c_λ(π^μ u) du` for `λ = lα`, `μ = mα`.
    pub fn satake_coefficient(&self, l: i64, m: i64, seed: u64) -> Result<SatakeReport, Sl2Error> {
        self.check_dominant(l)?;
        if !self.in_lambda(m) {
            return Err(Sl2Error::NotInLambda { l: m, step: self.lambda_step() });
        }
        let q = self.modulus();
        let n = self.degree();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((l as u64) << 32) ^ (m as u64));
        let mut sum = CycloSum::new(n);
        let mut shells = Vec::new();

        // u ∈ O: e(u) ∈ K with κ(e(u)) = 1
        let class = self.translate_class(m, RatFunc::zero(q))?;
        for _ in 0..SPOT_CHECKS {
            let v = rng.gen_range(0..3);
            let u = unit(&mut rng, q, v, None);
            let other = self.translate_class(m, u.clone())?;
            if other != class {
                return Err(Sl2Error::ShellNotConstant { shell: 0, witness: format!("u = {u}: {other:?} vs {class:?}") });
            }
        }
        shells.push(ShellRecord { shell: None, residue: None, class, measure: Scalar::one() });

        // below -(l + |m|) the Cartan coordinate exceeds l
        let lowest = -(l + m.abs()) - 1;
        for j in (lowest..0).rev() {
            let first = shells.len();
            for r in 1..q {
                let class = self.translate_class(m, RatFunc::laurent_poly(q, j, &[r as i64]))?;
                shells.push(ShellRecord { shell: Some(j), residue: Some(r), class, measure: Scalar::q_pow(-j - 1) });
            }
            for _ in 0..SPOT_CHECKS {
                let r = rng.gen_range(1..q);
                let u = unit(&mut rng, q, j, Some(r));
                let other = self.translate_class(m, u.clone())?;
                let class = &shells[first + r as usize - 1].class;
                if &other != class {
                    return Err(Sl2Error::ShellNotConstant { shell: j, witness: format!("u = {u}: {other:?} vs {class:?}") });
                }
            }
        }

        for s in shells.iter().filter(|s| s.shell.is_none() && s.class.l == l) {
            if let Some(e) = s.class.zeta() {
                sum.add_at((n - e) % n, &s.measure);
            }
        }
        for j in lowest..0 {
            // Σ over leading residues of ε^{-1}(ζ_r)
            let mut chars = CycloSum::new(n);
            let mut hits = 0;
            for s in shells.iter().filter(|s| s.shell == Some(j) && s.class.l == l) {
                if let Some(e) = s.class.zeta() {
                    chars.add_at((n - e) % n, &Scalar::one());
                    hits += 1;
                }
            }
            let constant = chars.parts().iter().position(|p| p.as_int() == Some(hits));
            match constant {
                _ if hits == 0 => {}
                Some(e) if hits == q as i128 - 1 => sum.add_at(e as u64, &Scalar::shell_measure(j)),
                _ => match chars.as_scalar() {
                    Some(k) => sum.add_at(0, &(&k * &Scalar::q_pow(-j - 1))),
                    None => {
                        return Err(Sl2Error::ShellNotConstant {
                            shell: j,
                            witness: format!("residue sum {:?} is not rational", chars.reduced()),
                        })
                    }
                },
            }
        }
        let value = sum.as_scalar().ok_or_else(|| Sl2Error::ShellNotConstant {
            shell: 0,
            witness: format!("root-of-unity sum {:?} is not rational", sum.reduced()),
        })?;
        Ok(SatakeReport { l, m, value: &value * &Scalar::v_pow(-2 * m), shells })
    }

    /// Rows `λ ∈ Λ^+` with `λ ≤ lmax·α`, each over `|μ| ≤ λ + step`.
    pub fn satake_matrix(&self, lmax: i64, seed: u64) -> Result<SatakeMatrix, Sl2Error> {
        let step = self.lambda_step();
        let mut rows = Vec::new();
        for l in (0..=lmax).step_by(step as usize) {
            let mut entries = Vec::new();
            let reach = (l + step) / step;
            for k in -reach..=reach {
                let m = k * step;
                entries.push((m, self.satake_coefficient(l, m, seed)?.value));
            }
            rows.push(SatakeRow { l, entries });
        }
        Ok(SatakeMatrix { q: self.modulus(), n: self.degree(), q_alpha: self.q_alpha(), step, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_cover_rows() {
        let e = Sl2Engine::new(7, 3, 1).unwrap();
        let s = e.satake_matrix(6, 1).unwrap();
        assert_eq!(s.rows.len(), 3);
        for r in &s.rows {
            assert!(r.triangular(), "{r:?}");
            assert!(r.w_symmetric(), "{r:?}");
            assert_eq!(r.get(r.l), Scalar::q_pow(r.l));
        }
        assert_eq!(s.row(0).unwrap().entries, vec![(-3, Scalar::zero()), (0, Scalar::one()), (3, Scalar::zero())]);
        // S(c_3) = q^3 (z_3 + z_{-3}) + (q^3 − q^2) z_0
        let r3 = s.row(3).unwrap();
        assert_eq!(r3.get(0), Scalar::q_pow(3) - Scalar::q_pow(2));
    }

    #[test]
    fn other_covers() {
        for (q, n, qa) in [(7u64, 1u64, 1i64), (13, 2, 1), (13, 6, 1), (17, 4, 1), (13, 3, 2)] {
            let e = Sl2Engine::new(q, n, qa).unwrap();
            let s = e.satake_matrix(2 * e.lambda_step(), 9).unwrap();
            for r in &s.rows {
                assert!(r.triangular() && r.w_symmetric(), "q={q} n={n}: {r:?}");
                assert_eq!(r.get(r.l), Scalar::q_pow(r.l));
            }
        }
    }
}
