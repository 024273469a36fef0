use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Monomial, Presentation};
use crate::error::{Error, Result};
use crate::grading::Grade;
use crate::scalar::Scalar;

/// A finite linear combination of basis monomials.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pres: Arc<Presentation>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_presentation(&self.pres, &other.pres)
    }
}

impl Eq for AlgebraElement {}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        Self { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn one(pres: &Arc<Presentation>) -> Self {
        Self::scalar(pres, Scalar::one())
    }

    pub fn scalar(pres: &Arc<Presentation>, c: Scalar) -> Self {
        Self::term(pres, c, pres.unit_monomial())
    }

    pub fn monomial(pres: &Arc<Presentation>, m: Monomial) -> Self {
        Self::term(pres, Scalar::one(), m)
    }

    pub fn term(pres: &Arc<Presentation>, c: Scalar, m: Monomial) -> Self {
        assert!(pres.is_valid_monomial(&m), "monomial outside the presentation");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { pres: pres.clone(), terms }
    }

    pub fn generator(pres: &Arc<Presentation>, i: usize) -> Self {
        Self::monomial(pres, pres.generator_monomial(i))
    }

    pub fn from_terms(
        pres: &Arc<Presentation>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut out = Self::zero(pres);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar value if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.pres);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let (c, m) = self.pres.mul_monomials(ma, mb);
                out.add_term(m, &(&(ca * cb) * &c));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::integer(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.pres);
        }
        Self {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.pres), |acc, _| &acc * self)
    }

    /// The common grade of all monomials.
    pub fn grade(&self) -> Result<Grade> {
        let mut it = self.terms.keys().map(|m| self.pres.grade_of_monomial(m));
        let g = it.next().ok_or(Error::ZeroElement)?;
        if it.all(|h| h == g) {
            Ok(g)
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    /// Grade check that accepts zero.
    pub fn has_grade(&self, g: &Grade) -> bool {
        self.terms.keys().all(|m| &self.pres.grade_of_monomial(m) == g)
    }

    /// `u v - rho(|u|, |v|) v u` for homogeneous `u`, `v`.
    pub fn rho_commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.pres));
        }
        let rho = self.pres.cocycle().eval(&self.grade()?, &other.grade()?);
        let uv = self.checked_mul(other)?;
        let vu = other.checked_mul(self)?;
        uv.checked_sub(&vu.scale(&rho))
    }
}

macro_rules! element_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            /// Panics on operands from different presentations.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).expect("presentation mismatch")
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);

/// Renders a coefficient-times-basis term, returning text that may start with `-`.
pub(crate) fn format_term(c: &Scalar, basis: &str) -> String {
    if basis == "1" {
        return c.to_string();
    }
    let cs = c.to_string();
    if c.is_one() {
        basis.to_string()
    } else if cs == "-1" {
        format!("-{basis}")
    } else if c.is_single_term() {
        format!("{cs} * {basis}")
    } else {
        format!("({cs}) * {basis}")
    }
}

/// Joins rendered terms with ` + ` / ` - `.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| format_term(c, &self.pres.format_monomial(m)));
        f.write_str(&join_terms(terms))
    }
}
