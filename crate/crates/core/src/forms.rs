//! The universal differential calculus `Omega*(A, phi)`.
//!
//! A basis tensor `(m0; m1, ..., mk)` stands for `m0 dm1 /\ ... /\ dmk` with
//! every barred slot a non-unit basis monomial. The differential satisfies
//! `d(ab) = da b + phi(|a|) a db`, so moving an algebra element to the left
//! across a differential uses
//!
//! ```text
//! (da) b = d(ab) - phi(|a|) a db
//! ```
//!
//! recursively from the rightmost slot.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{format_term, join_terms, same_presentation, AlgebraElement, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::grading::{BiGrade, ExtendedCocycle, GradedUnitHom};
use crate::scalar::Scalar;

/// The ambient data of a form algebra: the presentation and the character `phi`.
#[derive(Debug)]
pub struct FormSpace {
    pres: Arc<Presentation>,
    rho_bar: ExtendedCocycle,
}

impl PartialEq for FormSpace {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.phi() == other.phi()
    }
}

impl Eq for FormSpace {}

impl FormSpace {
    pub fn new(pres: &Arc<Presentation>, phi: GradedUnitHom) -> Result<Arc<Self>> {
        if **phi.group() != **pres.group() {
            return Err(Error::GroupMismatch);
        }
        let rho_bar = ExtendedCocycle::new(pres.cocycle().clone(), phi)?;
        Ok(Arc::new(Self { pres: pres.clone(), rho_bar }))
    }

    pub fn trivial(pres: &Arc<Presentation>) -> Arc<Self> {
        Self::new(pres, GradedUnitHom::trivial(pres.group().clone())).expect("same group")
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn phi(&self) -> &GradedUnitHom {
        self.rho_bar.phi()
    }

    pub fn rho_bar(&self) -> &ExtendedCocycle {
        &self.rho_bar
    }

    pub fn bigrade(&self, t: &Tensor) -> BiGrade {
        let mut g = self.pres.group().zero();
        for m in &t.0 {
            g = &g + &self.pres.grade_of_monomial(m);
        }
        BiGrade::new(t.degree() as i64, g)
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// `(m0; m1, ..., mk)`. Ordered by form degree, then slot by slot.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor(Vec<Monomial>);

impl Tensor {
    /// `None` if some barred slot is the unit (the tensor is then zero).
    pub fn new(coefficient: Monomial, dslots: Vec<Monomial>) -> Option<Self> {
        if dslots.iter().any(Monomial::is_unit) {
            return None;
        }
        let mut slots = Vec::with_capacity(dslots.len() + 1);
        slots.push(coefficient);
        slots.extend(dslots);
        Some(Self(slots))
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coefficient(&self) -> &Monomial {
        &self.0[0]
    }

    pub fn dslots(&self) -> &[Monomial] {
        &self.0[1..]
    }

    pub fn slots(&self) -> &[Monomial] {
        &self.0
    }
}

impl PartialOrd for Tensor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tensor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, Debug)]
pub struct Form {
    space: Arc<FormSpace>,
    terms: BTreeMap<Tensor, Scalar>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && FormSpace::same(&self.space, &other.space)
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(space: &Arc<FormSpace>) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &Arc<FormSpace>) -> Self {
        Self::term(space, Scalar::one(), Tensor(vec![space.pres.unit_monomial()]))
    }

    pub fn term(space: &Arc<FormSpace>, c: Scalar, t: Tensor) -> Self {
        assert!(
            t.0.iter().all(|m| space.pres.is_valid_monomial(m)),
            "monomial outside the presentation"
        );
        let mut out = Self::zero(space);
        out.add_term(t, &c);
        out
    }

    /// `m0 dm1 /\ ... /\ dmk`; zero if a barred slot is the unit.
    pub fn basis(space: &Arc<FormSpace>, slots: Vec<Monomial>) -> Self {
        let mut it = slots.into_iter();
        let m0 = it.next().expect("at least one slot");
        match Tensor::new(m0, it.collect()) {
            Some(t) => Self::term(space, Scalar::one(), t),
            None => Self::zero(space),
        }
    }

    pub fn from_element(space: &Arc<FormSpace>, u: &AlgebraElement) -> Result<Self> {
        if !same_presentation(u.presentation(), &space.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut out = Self::zero(space);
        for (m, c) in u.terms() {
            out.add_term(Tensor(vec![m.clone()]), c);
        }
        Ok(out)
    }

    /// The exact one-form `du`.
    pub fn exact(space: &Arc<FormSpace>, u: &AlgebraElement) -> Result<Self> {
        Ok(Self::from_element(space, u)?.differential())
    }

    /// `dx_i`.
    pub fn dgen(space: &Arc<FormSpace>, i: usize) -> Self {
        let p = &space.pres;
        Self::basis(space, vec![p.unit_monomial(), p.generator_monomial(i)])
    }

    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tensor, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, t: &Tensor) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, t: Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if !same_presentation(&self.space.pres, &other.space.pres) {
            Err(Error::PresentationMismatch)
        } else if self.space.phi() != other.space.phi() {
            Err(Error::PhiMismatch)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::integer(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * s)).collect(),
        }
    }

    /// Expansion of `(m0 dm1 ... dmk) * b` into basis slots.
    fn right_mul(&self, slots: &[Monomial], b: &Monomial) -> Vec<(Vec<Monomial>, Scalar)> {
        let pres = &self.space.pres;
        if b.is_unit() {
            return vec![(slots.to_vec(), Scalar::one())];
        }
        let k = slots.len() - 1;
        let (c, m) = pres.mul_monomials(&slots[k], b);
        if k == 0 {
            return vec![(vec![m], c)];
        }
        let mut out = vec![];
        if !m.is_unit() {
            let mut s = slots[..k].to_vec();
            s.push(m);
            out.push((s, c));
        }
        let f = self.space.phi().eval(&pres.grade_of_monomial(&slots[k])).neg();
        for (mut s, c2) in self.right_mul(&slots[..k], &slots[k]) {
            s.push(b.clone());
            out.push((s, &c2 * &f));
        }
        out
    }

    /// The wedge product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.space);
        for (s, cs) in &self.terms {
            for (t, ct) in &other.terms {
                let c = cs * ct;
                for (mut slots, cu) in self.right_mul(&s.0, &t.0[0]) {
                    slots.extend_from_slice(&t.0[1..]);
                    out.add_term(Tensor(slots), &(&c * &cu));
                }
            }
        }
        Ok(out)
    }

    pub fn differential(&self) -> Self {
        let mut out = Self::zero(&self.space);
        let unit = self.space.pres.unit_monomial();
        for (t, c) in &self.terms {
            if !t.0[0].is_unit() {
                let mut slots = Vec::with_capacity(t.0.len() + 1);
                slots.push(unit.clone());
                slots.extend_from_slice(&t.0);
                out.add_term(Tensor(slots), c);
            }
        }
        out
    }

    pub fn bigrade(&self) -> Result<BiGrade> {
        let mut it = self.terms.keys().map(|t| self.space.bigrade(t));
        let g = it.next().ok_or(Error::ZeroElement)?;
        if it.all(|h| h == g) {
            Ok(g)
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    /// Bidegree check that accepts zero.
    pub fn has_bigrade(&self, g: &BiGrade) -> bool {
        self.terms.keys().all(|t| &self.space.bigrade(t) == g)
    }

    /// Part of form degree `k`.
    pub fn component(&self, k: usize) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == k)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Part of bidegree `g`.
    pub fn homogeneous_part(&self, g: &BiGrade) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| &self.space.bigrade(t) == g)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// The algebra element of a form of degree zero.
    pub fn as_element(&self) -> Option<AlgebraElement> {
        if self.terms.keys().any(|t| t.degree() != 0) {
            return None;
        }
        Some(AlgebraElement::from_terms(
            &self.space.pres,
            self.terms.iter().map(|(t, c)| (t.0[0].clone(), c.clone())),
        ))
    }

    /// `d(w /\ t) == dw /\ t + rho_bar((1,0), |w|) w /\ dt` for homogeneous `w`.
    pub fn leibniz_check(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(true);
        }
        let deg = self.bigrade()?;
        let one = BiGrade::new(1, self.space.pres.group().zero());
        let twist = self.space.rho_bar.eval(&one, &deg);
        let lhs = self.checked_mul(other)?.differential();
        let rhs = self
            .differential()
            .checked_mul(other)?
            .checked_add(&self.checked_mul(&other.differential())?.scale(&twist))?;
        Ok(lhs == rhs)
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        format_tensor(&self.space.pres, t)
    }
}

pub fn format_tensor(pres: &Presentation, t: &Tensor) -> String {
    let m0 = pres.format_monomial(&t.0[0]);
    if t.degree() == 0 {
        return m0;
    }
    let ds: Vec<String> =
        t.dslots().iter().map(|m| format!("d({})", pres.format_monomial(m))).collect();
    let ds = ds.join(" /\\ ");
    if t.0[0].is_unit() {
        ds
    } else {
        format!("{m0}*{ds}")
    }
}

macro_rules! form_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Form> for &Form {
            type Output = Form;
            /// Panics on operands from different form spaces.
            fn $method(self, rhs: &Form) -> Form {
                self.$checked(rhs).expect("form space mismatch")
            }
        }
    };
}

form_binop!(Add, add, checked_add);
form_binop!(Sub, sub, checked_sub);
form_binop!(Mul, mul, checked_mul);

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(t, c)| format_term(c, &self.format_tensor(t)));
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qplane() -> (Arc<FormSpace>, Form, Form, Form, Form) {
        let a = Presentation::quantum_plane(2);
        let s = FormSpace::trivial(&a);
        let x1 = Form::from_element(&s, &AlgebraElement::generator(&a, 0)).unwrap();
        let x2 = Form::from_element(&s, &AlgebraElement::generator(&a, 1)).unwrap();
        let dx1 = Form::dgen(&s, 0);
        let dx2 = Form::dgen(&s, 1);
        (s, x1, x2, dx1, dx2)
    }

    fn mono(e: &[i64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn differential_examples() {
        let (s, x1, _, dx1, dx2) = qplane();
        assert!(Form::one(&s).differential().is_zero());
        assert!(dx1.differential().is_zero());
        let w = &x1 * &dx2;
        assert_eq!(w.differential(), &dx1 * &dx2);
        assert_eq!(w.differential().to_string(), "d(x1) /\\ d(x2)");
        assert_eq!(w.to_string(), "x1*d(x2)");
    }

    #[test]
    fn products() {
        let (s, x1, x2, dx1, dx2) = qplane();
        // (dx1) x2 = d(x1 x2) - x1 dx2
        let lhs = &dx1 * &x2;
        let expected = &Form::basis(&s, vec![mono(&[0, 0]), mono(&[1, 1])])
            - &Form::basis(&s, vec![mono(&[1, 0]), mono(&[0, 1])]);
        assert_eq!(lhs, expected);
        // a (b dc) = (ab) dc
        assert_eq!(&x2 * &(&x1 * &dx2), Form::basis(&s, vec![mono(&[1, 1]), mono(&[0, 1])]).scale(&Scalar::q_pow(-1)));
        let w = &(&x1 * &dx2) * &dx1;
        assert_eq!(w, Form::basis(&s, vec![mono(&[1, 0]), mono(&[0, 1]), mono(&[1, 0])]));
        assert_eq!(w.to_string(), "x1*d(x2) /\\ d(x1)");
    }

    #[test]
    fn bigrades() {
        let (_, x1, _, dx1, dx2) = qplane();
        let g = (&x1 * &dx2).bigrade().unwrap();
        assert_eq!((g.degree, g.grade.coords().to_vec()), (1, vec![1, 1]));
        let g = (&dx1 * &dx2).bigrade().unwrap();
        assert_eq!((g.degree, g.grade.coords().to_vec()), (2, vec![1, 1]));
        assert_eq!((&x1 + &dx2).bigrade(), Err(Error::NonHomogeneous));
    }

    #[test]
    fn leibniz_examples() {
        let (_, x1, x2, dx1, dx2) = qplane();
        assert!(x1.leibniz_check(&dx2).unwrap());
        assert!(dx1.leibniz_check(&dx2).unwrap());
        assert!(dx1.leibniz_check(&x2).unwrap());
        // d(dx1 x2) = -dx1 dx2
        assert_eq!((&dx1 * &x2).differential(), (&dx1 * &dx2).neg());
        assert_eq!((&x1 + &dx1).leibniz_check(&x2), Err(Error::NonHomogeneous));
    }

    #[test]
    fn twisted_leibniz_with_nontrivial_phi() {
        let a = Presentation::cyclic(4).unwrap();
        let phi = GradedUnitHom::new(a.group().clone(), vec![Scalar::eps(4, 1)]).unwrap();
        let s = FormSpace::new(&a, phi).unwrap();
        let g = Form::from_element(&s, &AlgebraElement::generator(&a, 0)).unwrap();
        let dg = Form::dgen(&s, 0);
        // d(g g) = dg g + eps g dg
        let g2 = &g * &g;
        let rhs = &(&dg * &g) + &(&g * &dg).scale(&Scalar::eps(4, 1));
        assert_eq!(g2.differential(), rhs);
        assert!(g.leibniz_check(&dg).unwrap());
        assert!(dg.leibniz_check(&g).unwrap());
        assert!((&dg * &g).leibniz_check(&(&g * &dg)).unwrap());
        let other = FormSpace::trivial(&a);
        assert_eq!(g.checked_add(&Form::dgen(&other, 0)), Err(Error::PhiMismatch));
    }

    #[test]
    fn products_are_associative_on_basis_samples() {
        let a = Presentation::clock_shift(2).unwrap();
        let s = FormSpace::trivial(&a);
        let mons = a.sample_monomials(0);
        let mut forms = vec![];
        for m0 in &mons {
            for m1 in &mons {
                forms.push(Form::basis(&s, vec![m0.clone()]));
                forms.push(Form::basis(&s, vec![m0.clone(), m1.clone()]));
            }
        }
        forms.retain(|f| !f.is_zero());
        for u in forms.iter().step_by(3) {
            for v in forms.iter().step_by(2) {
                for w in forms.iter().step_by(5) {
                    assert_eq!(&(u * v) * w, u * &(v * w));
                }
            }
        }
    }
}
