use super::ArithError;

/// The prime field `F_q` together with its smallest primitive root and a
/// dense discrete-logarithm table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
    generator: u64,
    /// `dlog[u]` is the index of `u` with respect to `generator`; `dlog[0]` is unused.
    dlog: Vec<u32>,
    /// `powers[k] = generator^k` for `0 <= k < q - 1`.
    powers: Vec<u64>,
}

const MAX_MODULUS: u64 = 1 << 24;

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        if !is_prime(q) {
            return Err(ArithError::NotPrime(q));
        }
        if q > MAX_MODULUS {
            return Err(ArithError::ModulusTooLarge(q));
        }
        let order = q - 1;
        let mut generator = 1;
        let mut powers = Vec::new();
        for g in 1..q {
            powers.clear();
            let mut x = 1u64;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                powers.push(x);
                x = x * g % q;
            }
            if ok {
                generator = g;
                break;
            }
        }
        let mut dlog = vec![0u32; q as usize];
        for (k, &p) in powers.iter().enumerate() {
            dlog[p as usize] = k as u32;
        }
        Ok(PrimeField { q, generator, dlog, powers })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Standing assumption for a degree-`n` cover: `2n | q - 1`.
    pub fn check_cover_degree(&self, n: u64) -> Result<(), ArithError> {
        if n == 0 || (self.q - 1) % (2 * n) != 0 {
            return Err(ArithError::CoverDegree { q: self.q, n });
        }
        Ok(())
    }

    pub fn reduce(&self, c: i64) -> u64 {
        c.rem_euclid(self.q as i64) as u64
    }

    pub fn dlog(&self, u: u64) -> Result<u64, ArithError> {
        let u = u % self.q;
        if u == 0 {
            return Err(ArithError::ZeroUnit);
        }
        Ok(self.dlog[u as usize] as u64)
    }

    pub fn gen_pow(&self, k: i64) -> u64 {
        self.powers[k.rem_euclid(self.q as i64 - 1) as usize]
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn inv(&self, a: u64) -> Result<u64, ArithError> {
        let k = self.dlog(a)?;
        Ok(self.gen_pow(-(k as i64)))
    }

    pub fn pow(&self, a: u64, e: i64) -> Result<u64, ArithError> {
        if a % self.q == 0 {
            return if e > 0 { Ok(0) } else { Err(ArithError::ZeroUnit) };
        }
        let k = self.dlog(a)? as i64;
        Ok(self.gen_pow(k * e))
    }

    /// All nonzero residues in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.q
    }
}

/// Modular inverse by Fermat; `q` must be prime and `a` nonzero mod `q`.
pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a % q, q - 2, q)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_primitive_roots() {
        assert_eq!(PrimeField::new(7).unwrap().generator(), 3);
        assert_eq!(PrimeField::new(13).unwrap().generator(), 2);
        assert_eq!(PrimeField::new(17).unwrap().generator(), 3);
        assert_eq!(PrimeField::new(3).unwrap().generator(), 2);
    }

    #[test]
    fn dlog_table_inverts_powers() {
        let f = PrimeField::new(31).unwrap();
        for u in f.units() {
            assert_eq!(f.gen_pow(f.dlog(u).unwrap() as i64), u);
        }
    }

    #[test]
    fn rejects_composites_and_bad_degree() {
        assert!(matches!(PrimeField::new(9), Err(ArithError::NotPrime(9))));
        let f = PrimeField::new(11).unwrap();
        assert!(f.check_cover_degree(3).is_err());
        assert!(f.check_cover_degree(5).is_ok());
        assert!(PrimeField::new(7).unwrap().check_cover_degree(3).is_ok());
    }

    #[test]
    fn inverse_and_power() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.pow(3, -2).unwrap(), 4);
        assert_eq!(inv_mod(3, 7), 5);
        assert!(f.inv(0).is_err());
    }
}
