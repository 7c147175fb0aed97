use std::fmt;

use super::field::inv_mod;
use super::{ArithError, LocalField};

/// A truncated Laurent series `Σ c_k t^k + O(t^N)` over `F_q`, modelling an
/// element of `F_q((t))` known to absolute precision `N`.
///
/// Elements without an `O(·)` term are exact (Laurent polynomials). The zero
/// element carries no valuation; an inexact zero `O(t^N)` only records `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentNumber {
    q: u64,
    /// Valuation of `coeffs[0]`; meaningless when `coeffs` is empty.
    val: i64,
    /// `coeffs[0] != 0` whenever nonempty, no trailing zeros.
    coeffs: Vec<u64>,
    /// Absolute precision; `None` for exact values.
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl LaurentNumber {
    fn normalized(q: u64, mut val: i64, coeffs: Vec<u64>, prec: Option<i64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % q).collect();
        if let Some(p) = prec {
            let keep = (p - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..lead);
        val += lead as i64;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            val = 0;
        }
        LaurentNumber { q, val, coeffs, prec }
    }

    /// Exact Laurent polynomial `Σ coeffs[i] t^{val+i}`.
    pub fn exact(q: u64, val: i64, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u64).collect();
        Self::normalized(q, val, cs, None)
    }

    /// `Σ coeffs[i] t^{val+i} + O(t^{abs_prec})`.
    pub fn with_precision(q: u64, val: i64, coeffs: &[i64], abs_prec: i64) -> Self {
        let cs = coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u64).collect();
        Self::normalized(q, val, cs, Some(abs_prec))
    }

    pub(crate) fn from_residues(q: u64, val: i64, coeffs: Vec<u64>, prec: Option<i64>) -> Self {
        Self::normalized(q, val, coeffs, prec)
    }

    pub fn zero(q: u64) -> Self {
        LaurentNumber { q, val: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(t^abs_prec)`.
    pub fn big_o(q: u64, abs_prec: i64) -> Self {
        LaurentNumber { q, val: 0, coeffs: Vec::new(), prec: Some(abs_prec) }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Absolute precision `N` of `... + O(t^N)`; `None` when exact.
    pub fn absolute_precision(&self) -> Option<i64> {
        self.prec
    }

    /// Number of known coefficients from the leading term on.
    pub fn relative_precision(&self) -> Option<i64> {
        match (self.prec, self.coeffs.is_empty()) {
            (None, _) => None,
            (Some(_), true) => Some(0),
            (Some(p), false) => Some(p - self.val),
        }
    }

    /// Coefficient of `t^k`, if known.
    pub fn coefficient(&self, k: i64) -> Option<u64> {
        if let Some(p) = self.prec {
            if k >= p {
                return None;
            }
        }
        if self.coeffs.is_empty() || k < self.val {
            return Some(0);
        }
        Some(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0))
    }

    /// Drop everything from `t^abs_prec` on.
    pub fn truncate(&self, abs_prec: i64) -> Self {
        let p = min_prec(self.prec, Some(abs_prec));
        Self::normalized(self.q, self.val, self.coeffs.clone(), p)
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.q != other.q {
            return Err(ArithError::ModulusMismatch(self.q, other.q));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let prec = min_prec(self.prec, other.prec);
        if self.coeffs.is_empty() {
            return Ok(Self::normalized(self.q, other.val, other.coeffs.clone(), prec));
        }
        if other.coeffs.is_empty() {
            return Ok(Self::normalized(self.q, self.val, self.coeffs.clone(), prec));
        }
        let lo = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i64).max(other.val + other.coeffs.len() as i64);
        let mut out = vec![0u64; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = (self.val - lo) as usize + i;
            out[k] = (out[k] + c) % self.q;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let k = (other.val - lo) as usize + i;
            out[k] = (out[k] + c) % self.q;
        }
        Ok(Self::normalized(self.q, lo, out, prec))
    }

    pub fn neg(&self) -> Self {
        let cs = self.coeffs.iter().map(|&c| (self.q - c) % self.q).collect();
        Self::normalized(self.q, self.val, cs, self.prec)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let q = self.q;
        let a_zero = self.coeffs.is_empty();
        let b_zero = other.coeffs.is_empty();
        if (a_zero && self.prec.is_none()) || (b_zero && other.prec.is_none()) {
            return Ok(Self::zero(q));
        }
        match (a_zero, b_zero) {
            (true, true) => {
                return Ok(Self::big_o(q, self.prec.unwrap() + other.prec.unwrap()));
            }
            (true, false) => return Ok(Self::big_o(q, self.prec.unwrap() + other.val)),
            (false, true) => return Ok(Self::big_o(q, other.prec.unwrap() + self.val)),
            _ => {}
        }
        let prec = min_prec(self.prec.map(|p| p + other.val), other.prec.map(|p| p + self.val));
        let val = self.val + other.val;
        // only coefficients below the result precision are needed
        let limit = prec.map(|p| (p - val).max(0) as usize);
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let len = limit.map_or(len, |l| l.min(len));
        let mut out = vec![0u64; len];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        Ok(Self::normalized(q, val, out, prec))
    }

    /// Inverse to the element's own relative precision. Exact monomials invert
    /// exactly; other exact elements need [`LaurentNumber::inv_to`].
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.coeffs.is_empty() {
            return Err(ArithError::ZeroInput);
        }
        match self.relative_precision() {
            None if self.coeffs.len() == 1 => {
                let c = inv_mod(self.coeffs[0], self.q);
                Ok(Self::normalized(self.q, -self.val, vec![c], None))
            }
            None => Err(ArithError::InfiniteExpansion),
            Some(p) => self.inv_to(p),
        }
    }

    /// Inverse with `rel_prec` known coefficients.
    pub fn inv_to(&self, rel_prec: i64) -> Result<Self, ArithError> {
        if self.coeffs.is_empty() {
            return Err(ArithError::ZeroInput);
        }
        if rel_prec < 1 {
            return Err(ArithError::ZeroPrecision);
        }
        let p = match self.relative_precision() {
            Some(own) => own.min(rel_prec),
            None => rel_prec,
        } as usize;
        let q = self.q;
        let c0_inv = inv_mod(self.coeffs[0], q);
        let mut b = vec![0u64; p];
        b[0] = c0_inv;
        for k in 1..p {
            let mut s = 0u64;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s = (s + self.coeffs[i] * b[k - i]) % q;
            }
            b[k] = (q - s) % q * c0_inv % q;
        }
        Ok(Self::normalized(q, -self.val, b, Some(-self.val + p as i64)))
    }

    pub fn valuation_leading(&self) -> Result<(i64, u64), ArithError> {
        match (self.coeffs.first(), self.prec) {
            (Some(&c), _) => Ok((self.val, c)),
            (None, None) => Err(ArithError::ZeroInput),
            (None, Some(_)) => Err(ArithError::InsufficientPrecision),
        }
    }

    pub fn is_zero(&self) -> Result<bool, ArithError> {
        match (self.coeffs.is_empty(), self.prec) {
            (false, _) => Ok(false),
            (true, None) => Ok(true),
            (true, Some(_)) => Err(ArithError::InsufficientPrecision),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self, ArithError> {
        let mut r = LaurentNumber::exact(self.q, 0, &[1]);
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn parse(q: u64, text: &str) -> Result<Self, ArithError> {
        parse::parse_laurent(q, text)
    }
}

impl LocalField for LaurentNumber {
    fn modulus(&self) -> u64 {
        self.q
    }
    fn constant(q: u64, c: i64) -> Self {
        LaurentNumber::exact(q, 0, &[c])
    }
    fn monomial(q: u64, c: i64, k: i64) -> Self {
        LaurentNumber::exact(q, k, &[c])
    }
    fn add(&self, o: &Self) -> Result<Self, ArithError> {
        LaurentNumber::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self, ArithError> {
        LaurentNumber::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self, ArithError> {
        LaurentNumber::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentNumber::neg(self)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        LaurentNumber::inv(self)
    }
    fn is_zero(&self) -> Result<bool, ArithError> {
        LaurentNumber::is_zero(self)
    }
    fn valuation_leading(&self) -> Result<(i64, u64), ArithError> {
        LaurentNumber::valuation_leading(self)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: u64, k: i64) -> fmt::Result {
    match (c, k) {
        (c, 0) => write!(f, "{c}"),
        (1, 1) => write!(f, "t"),
        (1, k) => write!(f, "t^{k}"),
        (c, 1) => write!(f, "{c}*t"),
        (c, k) => write!(f, "{c}*t^{k}"),
    }
}

impl fmt::Display for LaurentNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            fmt_term(f, c, self.val + i as i64)?;
            first = false;
        }
        match (self.prec, first) {
            (Some(p), true) => write!(f, "O(t^{p})"),
            (Some(p), false) => write!(f, " + O(t^{p})"),
            (None, true) => write!(f, "0"),
            (None, false) => Ok(()),
        }
    }
}

mod parse {
    use super::LaurentNumber;
    use crate::arith::ArithError;

    struct Cursor<'a> {
        s: &'a [u8],
        pos: usize,
    }

    impl<'a> Cursor<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.pos).copied()
        }
        fn eat(&mut self, c: u8) -> bool {
            if self.peek() == Some(c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }
        fn expect(&mut self, c: u8) -> Result<(), ArithError> {
            if self.eat(c) {
                Ok(())
            } else {
                Err(self.err(&format!("expected '{}'", c as char)))
            }
        }
        fn err(&self, msg: &str) -> ArithError {
            ArithError::Parse { pos: self.pos, msg: msg.to_string() }
        }
        fn int(&mut self) -> Result<i64, ArithError> {
            self.skip_ws();
            let start = self.pos;
            if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ArithError::Parse { pos: start, msg: "expected integer".into() })
        }
        fn unsigned(&mut self) -> Result<i64, ArithError> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ArithError::Parse { pos: start, msg: "expected coefficient".into() })
        }
        /// `'t' ['^' INT]`, returning the exponent.
        fn power_of_t(&mut self) -> Result<i64, ArithError> {
            self.expect(b't')?;
            if self.eat(b'^') {
                self.int()
            } else {
                Ok(1)
            }
        }
    }

    pub(super) fn parse_laurent(q: u64, text: &str) -> Result<LaurentNumber, ArithError> {
        let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
        let mut terms: Vec<(i64, i64)> = Vec::new();
        let mut prec: Option<i64> = None;
        let mut sign = if cur.eat(b'-') { -1 } else { 1 };
        loop {
            if cur.peek() == Some(b'O') {
                if sign < 0 {
                    return Err(cur.err("O-term cannot be negated"));
                }
                cur.pos += 1;
                cur.expect(b'(')?;
                prec = Some(match cur.peek() {
                    Some(b'1') => {
                        if cur.unsigned()? != 1 {
                            return Err(cur.err("expected O(1) or O(t^k)"));
                        }
                        0
                    }
                    _ => cur.power_of_t()?,
                });
                cur.expect(b')')?;
                if cur.peek().is_some() {
                    return Err(cur.err("O-term must come last"));
                }
                break;
            }
            let (coeff, exp) = match cur.peek() {
                Some(b't') => (1, cur.power_of_t()?),
                Some(c) if c.is_ascii_digit() => {
                    let c = cur.unsigned()?;
                    if cur.eat(b'*') {
                        (c, cur.power_of_t()?)
                    } else {
                        (c, 0)
                    }
                }
                _ => return Err(cur.err("expected term")),
            };
            terms.push((sign * coeff, exp));
            match cur.peek() {
                None => break,
                Some(b'+') => {
                    cur.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    cur.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(cur.err("expected '+' or '-'")),
            }
        }
        if terms.is_empty() {
            return Ok(match prec {
                Some(p) => LaurentNumber::big_o(q, p),
                None => LaurentNumber::zero(q),
            });
        }
        let lo = terms.iter().map(|t| t.1).min().unwrap();
        let hi = terms.iter().map(|t| t.1).max().unwrap();
        let mut cs = vec![0i64; (hi - lo + 1) as usize];
        for (c, e) in terms {
            cs[(e - lo) as usize] += c;
        }
        Ok(match prec {
            Some(p) => LaurentNumber::with_precision(q, lo, &cs, p),
            None => LaurentNumber::exact(q, lo, &cs),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7(s: &str) -> LaurentNumber {
        LaurentNumber::parse(7, s).unwrap()
    }

    #[test]
    fn product_examples() {
        let t = p7("t");
        let t2 = t.mul(&t).unwrap();
        assert_eq!(t2, p7("t^2"));
        assert_eq!(t2.valuation_leading().unwrap(), (2, 1));

        let a = p7("1 + t + O(t^3)");
        let b = p7("1 - t + O(t^3)");
        assert_eq!(a.mul(&b).unwrap(), p7("1 - t^2 + O(t^3)"));

        let c = p7("3 + O(t^2)").mul(&p7("5 + O(t^2)")).unwrap();
        assert_eq!(c, p7("1 + O(t^2)"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p7("t").inv().unwrap(), p7("t^-1"));
        assert_eq!(p7("3 + O(t^2)").inv().unwrap(), p7("5 + O(t^2)"));
        // geometric series 1/(1+t) = 1 - t + t^2 - ...
        assert_eq!(p7("1 + t + O(t^3)").inv().unwrap(), p7("1 - t + t^2 + O(t^3)"));
        assert!(matches!(LaurentNumber::zero(7).inv(), Err(ArithError::ZeroInput)));
        assert!(matches!(p7("1 + t").inv(), Err(ArithError::InfiniteExpansion)));
        assert!(matches!(p7("1 + t").inv_to(0), Err(ArithError::ZeroPrecision)));
    }

    #[test]
    fn leading_examples() {
        assert_eq!(p7("3*t^-2 + t^-1 + O(1)").valuation_leading().unwrap(), (-2, 3));
        assert_eq!(p7("t").valuation_leading().unwrap(), (1, 1));
        assert_eq!(p7("5 + 2*t + O(t^4)").valuation_leading().unwrap(), (0, 5));
        assert!(matches!(LaurentNumber::zero(7).valuation_leading(), Err(ArithError::ZeroInput)));
        assert!(matches!(p7("O(t^3)").valuation_leading(), Err(ArithError::InsufficientPrecision)));
    }

    #[test]
    fn precision_propagation() {
        let a = p7("t^-1 + 2 + O(t^3)"); // relative precision 4
        let b = p7("3*t^2 + O(t^4)"); // relative precision 2
        let c = a.mul(&b).unwrap();
        assert_eq!(c.valuation_leading().unwrap().0, 1);
        assert_eq!(c.relative_precision(), Some(2));
        let s = a.add(&b).unwrap();
        assert_eq!(s.absolute_precision(), Some(3));
        // cancellation leaves an inexact zero whose sign cannot be decided
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero().is_err());
        assert_eq!(z.absolute_precision(), Some(3));
    }

    #[test]
    fn parse_and_display() {
        let a = LaurentNumber::parse(7, "3*t^-1 + 1 + 2*t + O(t^5)").unwrap();
        assert_eq!(a.to_string(), "3*t^-1 + 1 + 2*t + O(t^5)");
        assert_eq!(a.coefficient(-1), Some(3));
        assert_eq!(a.coefficient(4), Some(0));
        assert_eq!(a.coefficient(5), None);
        assert_eq!(p7("-1").to_string(), "6");
        assert_eq!(p7("10*t").to_string(), "3*t");
        assert!(LaurentNumber::parse(7, "3*x").is_err());
        assert!(LaurentNumber::parse(7, "1 + O(t^2) + t").is_err());
    }

    #[test]
    fn mismatched_moduli() {
        let a = LaurentNumber::exact(7, 0, &[1]);
        let b = LaurentNumber::exact(13, 0, &[1]);
        assert!(matches!(a.mul(&b), Err(ArithError::ModulusMismatch(7, 13))));
    }
}
