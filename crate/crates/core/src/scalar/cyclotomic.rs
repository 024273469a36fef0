//! Elements of the cyclotomic field Q(eps_n), stored as coordinate vectors in
//! the power basis 1, eps, ..., eps^(phi(n)-1) and reduced modulo Phi_n.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Monic integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d);
            p = divide_monic(&p, &q);
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An element of Q(eps_n). Values lying in Q are always stored with order 1,
/// so equal values have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    coords: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self { order: 1, coords: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        Self { order: 1, coords: vec![r] }
    }

    pub fn integer(i: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(i)))
    }

    /// `eps_n^k` for a primitive `n`-th root of unity.
    pub fn root_power(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(n, poly)
    }

    /// Reduces an arbitrary polynomial in eps modulo Phi_n.
    pub fn from_poly(n: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        if poly.len() > deg {
            for i in (deg..poly.len()).rev() {
                let c = std::mem::replace(&mut poly[i], BigRational::zero());
                if c.is_zero() {
                    continue;
                }
                for (j, pj) in phi.iter().enumerate().take(deg) {
                    poly[i - deg + j] -= &c * BigRational::from_integer(pj.clone());
                }
            }
            poly.truncate(deg);
        }
        poly.resize(deg, BigRational::zero());
        let mut out = Self { order: n, coords: poly };
        out.demote();
        out
    }

    fn demote(&mut self) {
        if self.order > 1 && self.coords[1..].iter().all(Zero::is_zero) {
            self.coords.truncate(1);
            self.order = 1;
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coords[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coords[0])
    }

    /// Number of nonzero power-basis coordinates.
    pub fn term_count(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    /// Common order of two operands, or `None` if they live in different
    /// nontrivial cyclotomic fields.
    pub fn common_order(a: u32, b: u32) -> Option<u32> {
        match (a, b) {
            (1, m) | (m, 1) => Some(m),
            (m, k) if m == k => Some(m),
            _ => None,
        }
    }

    fn lifted(&self, order: u32) -> std::borrow::Cow<'_, [BigRational]> {
        if self.order == order {
            std::borrow::Cow::Borrowed(&self.coords)
        } else {
            debug_assert_eq!(self.order, 1);
            let mut v = vec![BigRational::zero(); totient(order)];
            v[0] = self.coords[0].clone();
            std::borrow::Cow::Owned(v)
        }
    }

    fn order_with(&self, other: &Self) -> u32 {
        Self::common_order(self.order, other.order).unwrap_or_else(|| {
            panic!("mixing eps_{} with eps_{}", self.order, other.order)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coords[0] + &other.coords[0]);
        }
        let n = self.order_with(other);
        let a = self.lifted(n);
        let b = other.lifted(n);
        let coords = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        let mut out = Self { order: n, coords };
        out.demote();
        out
    }

    pub fn neg(&self) -> Self {
        Self { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coords[0] * &other.coords[0]);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let n = self.order_with(other);
        let mut prod = vec![BigRational::zero(); self.coords.len() + other.coords.len() - 1];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_poly(n, prod)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { order: self.order, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::rational(r.recip()));
        }
        // extended Euclid in Q[x] against Phi_n
        let n = self.order;
        let phi: Vec<BigRational> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s, _) = qpoly::ext_gcd(trim(self.coords.clone()), phi);
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let s: Vec<_> = s.into_iter().map(|c| c * &inv_g).collect();
        Some(Self::from_poly(n, s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True when the textual rendering has a leading minus sign and one term.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.term_count() == 1 && self.coords.iter().any(|c| c.is_negative())
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

mod qpoly {
    use super::trim;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let b = trim(b.to_vec());
        let mut rem = trim(a.to_vec());
        let db = b.len() - 1;
        if rem.len() <= db {
            return (vec![BigRational::zero()], rem);
        }
        let lead = b[db].clone();
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        rem.truncate(db.max(1));
        (trim(quot), trim(rem))
    }

    /// Returns (g, s, t) with s*a + t*b = g.
    pub(super) fn ext_gcd(
        a: Vec<BigRational>,
        b: Vec<BigRational>,
    ) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
        let one = vec![BigRational::from_integer(1.into())];
        let zero = vec![BigRational::zero()];
        let (mut r0, mut r1) = (a, b);
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match j {
                0 => fmt_rational(c),
                _ => {
                    let e = if j == 1 { "eps".to_string() } else { format!("eps^{j}") };
                    if c.is_one() {
                        e
                    } else if (-c).is_one() {
                        format!("-{e}")
                    } else {
                        format!("{}*{e}", fmt_rational(c))
                    }
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_relations() {
        let e4 = Cyclotomic::root_power(4, 1);
        assert_eq!(e4.mul(&e4), Cyclotomic::integer(-1));
        assert_eq!(e4.pow(4), Cyclotomic::one());
        // eps_2 is rational
        assert_eq!(Cyclotomic::root_power(2, 1), Cyclotomic::integer(-1));
        assert_eq!(Cyclotomic::root_power(2, 1).order(), 1);
        // 1 + eps + eps^2 = 0 for n = 3
        let e3 = Cyclotomic::root_power(3, 1);
        let s = Cyclotomic::one().add(&e3).add(&e3.mul(&e3));
        assert!(s.is_zero());
    }

    #[test]
    fn inverses() {
        for n in [3u32, 4, 5, 7, 8, 12] {
            let a = Cyclotomic::one().add(&Cyclotomic::root_power(n, 1).scale(&BigRational::new(2.into(), 3.into())));
            let inv = a.inv().unwrap();
            assert!(a.mul(&inv).is_one(), "n = {n}");
        }
        assert!(Cyclotomic::zero().inv().is_none());
    }

    #[test]
    fn totients() {
        assert_eq!(
            (1..=12).map(totient).collect::<Vec<_>>(),
            vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
        );
    }
}
