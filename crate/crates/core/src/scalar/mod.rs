//! Exact coefficients: rational functions in an indeterminate `q` over the
//! cyclotomic field Q(eps_n).
//!
//! A [`Scalar`] is stored as `N(q) / D(q)` where `N` is a sparse Laurent
//! polynomial and `D` is an ordinary polynomial with `D(0) != 0`, monic, and
//! coprime to `N`. Since `q` is a unit, this representation is canonical, and
//! structural equality is value equality. Cocycle values are single Laurent
//! monomials, so the common case never touches polynomial gcds.

mod cyclotomic;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: BTreeMap<i32, Cyclotomic>,
    den: Vec<Cyclotomic>,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: BTreeMap::new(), den: vec![Cyclotomic::one()] }
    }

    pub fn one() -> Self {
        Self::from_cyclotomic(Cyclotomic::one())
    }

    pub fn integer(i: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::integer(i))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_cyclotomic(Cyclotomic::rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_big_rational(r: BigRational) -> Self {
        Self::from_cyclotomic(Cyclotomic::rational(r))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: Cyclotomic, e: i32) -> Self {
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(e, c);
        }
        Self { num, den: vec![Cyclotomic::one()] }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Cyclotomic::one(), e)
    }

    /// `eps_n^k` for a primitive `n`-th root of unity.
    pub fn eps(n: u32, k: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::root_power(n, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial()
            && self.num.len() == 1
            && self.num.get(&0).is_some_and(Cyclotomic::is_one)
    }

    /// Membership in the unit group of the coefficient field.
    pub fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    /// Largest root-of-unity order among the coefficients (1 if none).
    pub fn root_order(&self) -> u32 {
        self.num
            .values()
            .chain(self.den.iter())
            .map(Cyclotomic::order)
            .max()
            .unwrap_or(1)
    }

    fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// Single Laurent monomial `c * q^e` with `c` a single power-basis term.
    pub fn is_single_term(&self) -> bool {
        self.is_polynomial()
            && self.num.len() == 1
            && self.num.values().next().is_some_and(|c| c.term_count() == 1)
    }

    /// Value in the cyclotomic field if the scalar does not depend on `q`.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return Some(Cyclotomic::zero());
        }
        (self.is_polynomial() && self.num.len() == 1)
            .then(|| self.num.get(&0).cloned())
            .flatten()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.root_order(), other.root_order());
        Cyclotomic::common_order(a, b)
            .map(|_| ())
            .ok_or(Error::IncompatibleRootOrder(a, b))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_polynomial() && self.num.len() == 1 {
            let (&e, c) = self.num.iter().next().unwrap();
            let c = c.inv().ok_or(Error::DivisionByZero)?;
            return Ok(Self::monomial(c, -e));
        }
        let den = self.den.iter().enumerate().map(|(i, c)| (i as i32, c.clone())).collect();
        Ok(Self::from_parts(den, self.num.clone()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if self.is_polynomial() && self.num.len() == 1 {
            let (&k, c) = self.num.iter().next().unwrap();
            return Ok(Self::monomial(c.pow(e as u64), k * e as i32));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.iter().map(|(&e, c)| (e, c.neg())).collect(),
            den: self.den.clone(),
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if self.is_polynomial() && other.is_polynomial() {
            return Self { num: laurent_add(&self.num, &other.num), den: self.den.clone() };
        }
        let num = laurent_add(
            &laurent_mul(&self.num, &dense_to_laurent(&other.den)),
            &laurent_mul(&other.num, &dense_to_laurent(&self.den)),
        );
        let den = laurent_mul(&dense_to_laurent(&self.den), &dense_to_laurent(&other.den));
        Self::from_parts(num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_polynomial() && other.is_polynomial() {
            return Self { num: laurent_mul(&self.num, &other.num), den: self.den.clone() };
        }
        let num = laurent_mul(&self.num, &other.num);
        let den = laurent_mul(&dense_to_laurent(&self.den), &dense_to_laurent(&other.den));
        Self::from_parts(num, den)
    }

    /// Canonical form of `num / den` for Laurent polynomials.
    fn from_parts(num: BTreeMap<i32, Cyclotomic>, den: BTreeMap<i32, Cyclotomic>) -> Self {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let s = *num.keys().next().unwrap();
        let t = *den.keys().next().unwrap();
        let mut n = laurent_to_dense(&num, s);
        let mut d = laurent_to_dense(&den, t);
        if d.len() > 1 {
            let g = poly::gcd(&n, &d);
            if g.len() > 1 {
                n = poly::div_exact(&n, &g);
                d = poly::div_exact(&d, &g);
            }
        }
        let lead_inv = d.last().unwrap().inv().expect("nonzero leading coefficient");
        let n: Vec<Cyclotomic> = n.iter().map(|c| c.mul(&lead_inv)).collect();
        let d: Vec<Cyclotomic> = d.iter().map(|c| c.mul(&lead_inv)).collect();
        let num = n
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i32 + s - t, c))
            .collect();
        Self { num, den: d }
    }

    /// Substitutes `q := eps_n^j`.
    pub fn specialize_q(&self, n: u32, j: i64) -> Result<Self> {
        let eval = |coeffs: &mut dyn Iterator<Item = (i32, &Cyclotomic)>| {
            coeffs.fold(Cyclotomic::zero(), |acc, (e, c)| {
                acc.add(&c.mul(&Cyclotomic::root_power(n, j * e as i64)))
            })
        };
        let num = eval(&mut self.num.iter().map(|(&e, c)| (e, c)));
        let den = eval(&mut self.den.iter().enumerate().map(|(i, c)| (i as i32, c)));
        let den = den.inv().ok_or(Error::DivisionByZero)?;
        Ok(Self::from_cyclotomic(num.mul(&den)))
    }

    /// Laurent coefficients of the numerator (exponent, coefficient).
    pub fn numerator_terms(&self) -> impl Iterator<Item = (i32, &Cyclotomic)> {
        self.num.iter().map(|(&e, c)| (e, c))
    }

    pub fn denominator_coeffs(&self) -> &[Cyclotomic] {
        &self.den
    }

    /// True when the rendering is a single term carrying a leading minus sign.
    pub fn is_negative_term(&self) -> bool {
        self.is_single_term() && self.num.values().next().unwrap().is_negative_monomial()
    }
}

fn laurent_add(
    a: &BTreeMap<i32, Cyclotomic>,
    b: &BTreeMap<i32, Cyclotomic>,
) -> BTreeMap<i32, Cyclotomic> {
    let mut out = a.clone();
    for (&e, c) in b {
        let v = match out.get(&e) {
            Some(x) => x.add(c),
            None => c.clone(),
        };
        if v.is_zero() {
            out.remove(&e);
        } else {
            out.insert(e, v);
        }
    }
    out
}

fn laurent_mul(
    a: &BTreeMap<i32, Cyclotomic>,
    b: &BTreeMap<i32, Cyclotomic>,
) -> BTreeMap<i32, Cyclotomic> {
    let mut out: BTreeMap<i32, Cyclotomic> = BTreeMap::new();
    for (&i, x) in a {
        for (&j, y) in b {
            let p = x.mul(y);
            let entry = out.entry(i + j).or_insert_with(Cyclotomic::zero);
            *entry = entry.add(&p);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_to_laurent(d: &[Cyclotomic]) -> BTreeMap<i32, Cyclotomic> {
    d.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i32, c.clone()))
        .collect()
}

fn laurent_to_dense(l: &BTreeMap<i32, Cyclotomic>, shift: i32) -> Vec<Cyclotomic> {
    let top = *l.keys().next_back().unwrap();
    let mut v = vec![Cyclotomic::zero(); (top - shift + 1) as usize];
    for (&e, c) in l {
        v[(e - shift) as usize] = c.clone();
    }
    v
}

/// Dense univariate polynomials over the cyclotomic field, lowest degree first.
mod poly {
    use super::Cyclotomic;

    fn trim(mut v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
        while v.len() > 1 && v.last().is_some_and(Cyclotomic::is_zero) {
            v.pop();
        }
        v
    }

    fn is_zero(p: &[Cyclotomic]) -> bool {
        p.iter().all(Cyclotomic::is_zero)
    }

    pub(super) fn divrem(a: &[Cyclotomic], b: &[Cyclotomic]) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
        let b = trim(b.to_vec());
        let mut rem = trim(a.to_vec());
        let db = b.len() - 1;
        if rem.len() <= db {
            return (vec![Cyclotomic::zero()], rem);
        }
        let lead_inv = b[db].inv().expect("division by zero polynomial");
        let mut quot = vec![Cyclotomic::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(bj));
            }
            quot[i] = c;
        }
        rem.truncate(db.max(1));
        (trim(quot), trim(rem))
    }

    pub(super) fn gcd(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !is_zero(&y) {
            let (_, r) = divrem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        let lead_inv = x.last().unwrap().inv().expect("nonzero gcd");
        x.iter().map(|c| c.mul(&lead_inv)).collect()
    }

    pub(super) fn div_exact(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let (q, r) = divrem(a, b);
        debug_assert!(is_zero(&r));
        q
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when mixing different nontrivial roots of unity.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(i: i64) -> Self {
        Scalar::integer(i)
    }
}

fn fmt_laurent<'a>(terms: impl Iterator<Item = (i32, &'a Cyclotomic)>) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let cs = c.to_string();
        let term = if e == 0 {
            cs
        } else {
            let qs = if e == 1 { "q".to_string() } else { format!("q^{e}") };
            if c.is_one() {
                qs
            } else if cs == "-1" {
                format!("-{qs}")
            } else if c.term_count() == 1 {
                format!("{cs}*{qs}")
            } else {
                format!("({cs})*{qs}")
            }
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn is_compound(s: &str) -> bool {
    s.char_indices().skip(1).any(|(_, ch)| ch == '+' || ch == '-') || s.contains('/')
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return f.write_str(&fmt_laurent(self.numerator_terms()));
        }
        // Show the denominator with a positive lowest coefficient: `(1+q)/(1-q)`.
        let flip = self
            .den
            .iter()
            .find(|c| !c.is_zero())
            .and_then(Cyclotomic::as_rational)
            .is_some_and(|r| num_traits::Signed::is_negative(r));
        let sign = |c: &Cyclotomic| if flip { c.neg() } else { c.clone() };
        let num: Vec<(i32, Cyclotomic)> = self.num.iter().map(|(&e, c)| (e, sign(c))).collect();
        let den: Vec<(i32, Cyclotomic)> =
            self.den.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i32, sign(c))).collect();
        let num = fmt_laurent(num.iter().map(|(e, c)| (*e, c)));
        let den = fmt_laurent(den.iter().map(|(e, c)| (*e, c)));
        let wrap = |s: String| if is_compound(&s) || s.contains('*') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_addition() {
        assert_eq!(Scalar::rational(1, 2) + Scalar::rational(1, 3), Scalar::rational(5, 6));
        assert_eq!(Scalar::rational(5, 6).to_string(), "5/6");
    }

    #[test]
    fn root_of_unity_reduction() {
        let e = |k| Scalar::eps(4, k);
        assert_eq!(e(2) * e(3), e(1));
        assert_eq!(e(2), Scalar::integer(-1));
        assert_eq!(e(1).to_string(), "eps");
        assert_eq!(e(3).to_string(), "-eps");
    }

    #[test]
    fn laurent_division() {
        let q = Scalar::q();
        let r = q.pow(2).unwrap() / q.pow(3).unwrap();
        assert_eq!(r, Scalar::q_pow(-1));
        assert_eq!(r.to_string(), "q^-1");
    }

    #[test]
    fn units() {
        assert!(!Scalar::zero().is_unit());
        assert!(Scalar::q_pow(-3).is_unit());
        assert!(!(Scalar::eps(4, 1) - Scalar::eps(4, 1)).is_unit());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixing_roots_is_reported() {
        let r = Scalar::eps(3, 1).checked_add(&Scalar::eps(5, 1));
        assert_eq!(r, Err(Error::IncompatibleRootOrder(3, 5)));
        // rational values mix freely
        assert!(Scalar::eps(3, 1).checked_mul(&Scalar::rational(2, 7)).is_ok());
    }

    #[test]
    fn rational_functions_reduce() {
        let q = Scalar::q();
        let one = Scalar::one();
        let a = (&one + &q) / (&one - &q);
        let b = (&one - &q.pow(2).unwrap()) / ((&one - &q) * (&one - &q));
        assert_eq!(a, b);
        assert_eq!(&a * &((&one - &q) / (&one + &q)), one);
        // (q^2 - 1)/(q - 1) collapses to a polynomial
        let c = (q.pow(2).unwrap() - &one) / (&q - &one);
        assert_eq!(c, &q + &one);
        assert!(c.is_polynomial());
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for n in 2..=6u32 {
            let e = Scalar::eps(n, 1);
            assert!(e.pow(n as i64).unwrap().is_one());
            for k in 1..n as i64 {
                assert!(!e.pow(k).unwrap().is_one(), "eps_{n}^{k} == 1");
            }
        }
    }

    #[test]
    fn specialization() {
        let q = Scalar::q();
        let s = (&q + &Scalar::one()).specialize_q(4, 1).unwrap();
        assert_eq!(s, Scalar::eps(4, 1) + Scalar::one());
        let bad = (Scalar::one() / (&q + &Scalar::one())).specialize_q(2, 1);
        assert_eq!(bad, Err(Error::DivisionByZero));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let coeff = (-5i64..=5, 1i64..=4, 0i64..6, 0i64..2);
        proptest::collection::vec((coeff, -3i32..=3), 1..4).prop_map(|terms| {
            terms.into_iter().fold(Scalar::zero(), |acc, ((n, d, k, use_eps), e)| {
                let c = Scalar::rational(n, d) * Scalar::eps(6, k * use_eps);
                acc + c * Scalar::q_pow(e)
            })
        })
    }

    fn arb_fraction() -> impl Strategy<Value = Scalar> {
        (arb_scalar(), arb_scalar()).prop_map(|(a, b)| if b.is_zero() { a } else { a / b })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_fraction(), b in arb_fraction(), c in arb_fraction()) {
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_zero(a in arb_fraction(), b in arb_fraction()) {
            let diff = &a - &b;
            prop_assert_eq!(diff.is_zero(), a == b);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
