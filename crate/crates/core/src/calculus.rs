//! Graded derivations of `Omega*(A)`, field-valued forms and the
//! Frölicher–Nijenhuis calculus built from them.
//!
//! An [`OmegaDerivation`] of bidegree `(k, a)` is stored by its values on the
//! generators `x_i` and their differentials `dx_i`, and extended by
//!
//! ```text
//! D(w /\ t) = D(w) /\ t + rho_bar((k,a), |w|) w /\ D(t).
//! ```
//!
//! A [`FieldValuedForm`] `K: Omega^1 -> Omega^k` of grade `a` is stored by
//! `K(dx_i)`. Its contraction `j_K` is the derivation of bidegree `(k-1, a)`
//! vanishing on `A` and agreeing with `K` on `dx_i`. Fields are the `k = 0` case.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, Monomial};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{Form, FormSpace, Tensor};
use crate::grading::{BiGrade, Grade};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDerivation {
    space: Arc<FormSpace>,
    degree: BiGrade,
    on_x: Vec<Form>,
    on_dx: Vec<Form>,
}

impl OmegaDerivation {
    /// Checks bidegrees of the values and compatibility with the defining
    /// relations of `A` and their differentials.
    pub fn new(space: &Arc<FormSpace>, degree: BiGrade, on_x: Vec<Form>, on_dx: Vec<Form>) -> Result<Self> {
        let n = space.presentation().num_generators();
        if on_x.len() != n || on_dx.len() != n {
            return Err(Error::IllDefined("one value per generator and differential required".into()));
        }
        let group = space.presentation().group();
        for i in 0..n {
            for (k, v) in [(0, &on_x[i]), (1, &on_dx[i])] {
                if !FormSpace::same(v.space(), space) {
                    return Err(Error::PresentationMismatch);
                }
                let target = BiGrade::new(degree.degree + k, &degree.grade + &group.generator(i));
                if !v.has_bigrade(&target) {
                    return Err(Error::IllDefined(format!("value is not of bidegree {target}")));
                }
            }
        }
        let d = Self::from_parts(space, degree, on_x, on_dx);
        d.check_relations()?;
        Ok(d)
    }

    /// Trusted constructor for operators known to be derivations.
    fn from_parts(space: &Arc<FormSpace>, degree: BiGrade, on_x: Vec<Form>, on_dx: Vec<Form>) -> Self {
        Self { space: space.clone(), degree, on_x, on_dx }
    }

    pub fn zero(space: &Arc<FormSpace>, degree: BiGrade) -> Self {
        let n = space.presentation().num_generators();
        Self::from_parts(space, degree, vec![Form::zero(space); n], vec![Form::zero(space); n])
    }

    /// The exterior derivative, of bidegree `(1, 0)`.
    pub fn exterior(space: &Arc<FormSpace>) -> Self {
        let pres = space.presentation();
        let n = pres.num_generators();
        let on_x = (0..n).map(|i| Form::dgen(space, i)).collect();
        Self::from_parts(space, BiGrade::new(1, pres.group().zero()), on_x, vec![Form::zero(space); n])
    }

    fn check_relations(&self) -> Result<()> {
        let mut ev = Evaluator::new(self);
        for rel in self.space.presentation().relations() {
            let lhs = ev.word(&rel.lhs);
            let rhs = ev.word(&rel.rhs).scale(&rel.coeff);
            let dlhs = ev.dword(&rel.lhs);
            let drhs = ev.dword(&rel.rhs).scale(&rel.coeff);
            if lhs != rhs || dlhs != drhs {
                return Err(Error::IllDefined("derivation does not respect the defining relations".into()));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    pub fn degree(&self) -> &BiGrade {
        &self.degree
    }

    pub fn on_generators(&self) -> &[Form] {
        &self.on_x
    }

    pub fn on_differentials(&self) -> &[Form] {
        &self.on_dx
    }

    pub fn is_zero(&self) -> bool {
        self.on_x.iter().chain(&self.on_dx).all(Form::is_zero)
    }

    /// Vanishes on `A`.
    pub fn is_algebraic(&self) -> bool {
        self.on_x.iter().all(Form::is_zero)
    }

    pub fn apply(&self, w: &Form) -> Result<Form> {
        if !FormSpace::same(w.space(), &self.space) {
            return Err(Error::PresentationMismatch);
        }
        Ok(Evaluator::new(self).form(w))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_parts(
            &self.space,
            self.degree.clone(),
            self.on_x.iter().map(|f| f.scale(s)).collect(),
            self.on_dx.iter().map(|f| f.scale(s)).collect(),
        )
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !FormSpace::same(&self.space, &other.space) {
            return Err(Error::PresentationMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
        }
        let add = |a: &[Form], b: &[Form]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self::from_parts(&self.space, self.degree.clone(), add(&self.on_x, &other.on_x), add(&self.on_dx, &other.on_dx)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&Scalar::integer(-1)))
    }

    /// `[D1, D2] = D1 D2 - rho_bar(|D1|, |D2|) D2 D1`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if !FormSpace::same(&self.space, &other.space) {
            return Err(Error::PresentationMismatch);
        }
        let twist = self.space.rho_bar().eval(&self.degree, &other.degree);
        let mut e1 = Evaluator::new(self);
        let mut e2 = Evaluator::new(other);
        let mut compose = |a: &Form, b: &Form| e1.form(b).checked_sub(&e2.form(a).scale(&twist));
        let on_x = self
            .on_x
            .iter()
            .zip(&other.on_x)
            .map(|(a, b)| compose(a, b))
            .collect::<Result<_>>()?;
        let on_dx = self
            .on_dx
            .iter()
            .zip(&other.on_dx)
            .map(|(a, b)| compose(a, b))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(&self.space, &self.degree + &other.degree, on_x, on_dx))
    }
}

/// Evaluates one derivation with memoised values on monomials and their
/// differentials.
struct Evaluator<'a> {
    d: &'a OmegaDerivation,
    words: BTreeMap<Vec<usize>, Form>,
    dwords: BTreeMap<Vec<usize>, Form>,
    monomials: BTreeMap<Monomial, Form>,
    dmonomials: BTreeMap<Monomial, Form>,
}

impl<'a> Evaluator<'a> {
    fn new(d: &'a OmegaDerivation) -> Self {
        Self {
            d,
            words: BTreeMap::new(),
            dwords: BTreeMap::new(),
            monomials: BTreeMap::new(),
            dmonomials: BTreeMap::new(),
        }
    }

    fn space(&self) -> &Arc<FormSpace> {
        &self.d.space
    }

    fn twist(&self, k: i64, g: &Grade) -> Scalar {
        self.d.space.rho_bar().eval(&self.d.degree, &BiGrade::new(k, g.clone()))
    }

    /// The literal product of a word of generators, as a form of degree 0.
    fn product(&self, word: &[usize]) -> (Form, Grade) {
        let pres = self.space().presentation();
        let (c, m) = pres.word_product(word);
        let g = pres.grade_of_monomial(&m);
        (Form::basis(self.space(), vec![m]).scale(&c), g)
    }

    /// `D(x_{w1} ... x_{wr})` by the Leibniz rule along the word.
    fn word(&mut self, w: &[usize]) -> Form {
        if let Some(f) = self.words.get(w) {
            return f.clone();
        }
        let mut acc = Form::zero(self.space());
        for j in 0..w.len() {
            let v = &self.d.on_x[w[j]];
            if v.is_zero() {
                continue;
            }
            let (pre, g) = self.product(&w[..j]);
            let (suf, _) = self.product(&w[j + 1..]);
            let t = self.twist(0, &g);
            acc = &acc + &(&(&pre * v) * &suf).scale(&t);
        }
        self.words.insert(w.to_vec(), acc.clone());
        acc
    }

    /// `D(d(x_{w1} ... x_{wr}))`, expanding `d` of the word first.
    fn dword(&mut self, w: &[usize]) -> Form {
        if let Some(f) = self.dwords.get(w) {
            return f.clone();
        }
        let space = self.space().clone();
        let group = space.presentation().group().clone();
        let mut acc = Form::zero(&space);
        for j in 0..w.len() {
            let (pre, gp) = self.product(&w[..j]);
            let (suf, _) = self.product(&w[j + 1..]);
            let dx = Form::dgen(&space, w[j]);
            let gx = &gp + &group.generator(w[j]);
            // D(pre dx suf)
            let mut term = &(&self.word(&w[..j]) * &dx) * &suf;
            let t1 = self.twist(0, &gp);
            term = &term + &(&(&pre * &self.d.on_dx[w[j]]) * &suf).scale(&t1);
            let t2 = self.twist(1, &gx);
            term = &term + &(&(&pre * &dx) * &self.word(&w[j + 1..])).scale(&t2);
            acc = &acc + &term.scale(&space.phi().eval(&gp));
        }
        self.dwords.insert(w.to_vec(), acc.clone());
        acc
    }

    fn monomial(&mut self, m: &Monomial) -> Form {
        if let Some(f) = self.monomials.get(m) {
            return f.clone();
        }
        let pres = self.space().presentation().clone();
        let w = pres.word_of(m);
        let (c, _) = pres.word_product(&w);
        let f = self.word(&w).scale(&c.inv().expect("unit"));
        self.monomials.insert(m.clone(), f.clone());
        f
    }

    fn dmonomial(&mut self, m: &Monomial) -> Form {
        if let Some(f) = self.dmonomials.get(m) {
            return f.clone();
        }
        let pres = self.space().presentation().clone();
        let w = pres.word_of(m);
        let (c, _) = pres.word_product(&w);
        let f = self.dword(&w).scale(&c.inv().expect("unit"));
        self.dmonomials.insert(m.clone(), f.clone());
        f
    }

    fn tensor(&mut self, t: &Tensor) -> Form {
        let space = self.space().clone();
        let pres = space.presentation().clone();
        let slots = t.slots();
        let unit = pres.unit_monomial();
        let mut acc = Form::zero(&space);
        let rest = Form::basis(&space, [vec![unit.clone()], slots[1..].to_vec()].concat());
        let d0 = self.monomial(&slots[0]);
        if !d0.is_zero() {
            acc = &acc + &(&d0 * &rest);
        }
        let mut g = pres.grade_of_monomial(&slots[0]);
        for j in 1..slots.len() {
            let dv = self.dmonomial(&slots[j]);
            if !dv.is_zero() {
                let pre = Form::basis(&space, slots[..j].to_vec());
                let suf = Form::basis(&space, [vec![unit.clone()], slots[j + 1..].to_vec()].concat());
                let tw = self.twist(j as i64 - 1, &g);
                acc = &acc + &(&(&pre * &dv) * &suf).scale(&tw);
            }
            g = &g + &pres.grade_of_monomial(&slots[j]);
        }
        acc
    }

    fn form(&mut self, w: &Form) -> Form {
        let mut acc = Form::zero(self.space());
        for (t, c) in w.terms() {
            acc = &acc + &self.tensor(t).scale(c);
        }
        acc
    }
}

/// A bimodule map `K: Omega^1 -> Omega^k` of grade `a`, stored by `K(dx_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldValuedForm {
    space: Arc<FormSpace>,
    target: i64,
    grade: Grade,
    values: Vec<Form>,
}

impl FieldValuedForm {
    /// Validates bidegrees and well-definedness on `d` of the relations of `A`.
    pub fn new(space: &Arc<FormSpace>, target: i64, grade: Grade, values: Vec<Form>) -> Result<Self> {
        if target < 0 {
            return Err(Error::DegreeUnderflow);
        }
        let k = Self { space: space.clone(), target, grade, values };
        k.contraction_checked()?;
        Ok(k)
    }

    /// The zero map into `Omega^target`; `target = -1` is allowed here only.
    pub fn zero(space: &Arc<FormSpace>, target: i64, grade: Grade) -> Self {
        let n = space.presentation().num_generators();
        Self { space: space.clone(), target, grade, values: vec![Form::zero(space); n] }
    }

    pub fn identity(space: &Arc<FormSpace>) -> Self {
        let n = space.presentation().num_generators();
        let values = (0..n).map(|i| Form::dgen(space, i)).collect();
        Self { space: space.clone(), target: 1, grade: space.presentation().group().zero(), values }
    }

    /// The field of a derivation: `K(a db) = rho_bar((-1,|X|),(0,|a|)) a X(b)`.
    pub fn from_derivation(space: &Arc<FormSpace>, x: &Derivation) -> Result<Self> {
        let values = x.values().iter().map(|v| Form::from_element(space, v)).collect::<Result<_>>()?;
        Ok(Self { space: space.clone(), target: 0, grade: x.degree().clone(), values })
    }

    pub fn to_derivation(&self) -> Result<Derivation> {
        if self.target != 0 {
            return Err(Error::DegreeMismatch(format!("form-valued of degree {}", self.target)));
        }
        let values = self.values.iter().map(|v| v.as_element().expect("degree 0")).collect();
        Derivation::new(self.space.presentation(), self.grade.clone(), values)
    }

    /// `K(dx_i) = w x_i - rho_bar(|w|, (0,|x_i|)) x_i w` for homogeneous `w`.
    pub fn inner(w: &Form) -> Result<Self> {
        let space = w.space().clone();
        let deg = w.bigrade()?;
        let pres = space.presentation();
        let values = (0..pres.num_generators())
            .map(|i| {
                let x = Form::from_element(&space, &AlgebraElement::generator(pres, i))?;
                let t = space.rho_bar().eval(&deg, &BiGrade::new(0, pres.group().generator(i)));
                (w * &x).checked_sub(&(&x * w).scale(&t))
            })
            .collect::<Result<_>>()?;
        if deg.degree < 0 {
            return Err(Error::DegreeUnderflow);
        }
        Ok(Self { space, target: deg.degree, grade: deg.grade, values })
    }

    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    pub fn target_degree(&self) -> i64 {
        self.target
    }

    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn values(&self) -> &[Form] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Form::is_zero)
    }

    /// Bidegree of the contraction `j_K`.
    pub fn contraction_degree(&self) -> BiGrade {
        BiGrade::new(self.target - 1, self.grade.clone())
    }

    fn contraction_checked(&self) -> Result<OmegaDerivation> {
        let n = self.space.presentation().num_generators();
        if self.values.len() != n {
            return Err(Error::IllDefined("one value per differential required".into()));
        }
        OmegaDerivation::new(&self.space, self.contraction_degree(), vec![Form::zero(&self.space); n], self.values.clone())
    }

    /// `j_K`.
    pub fn contraction(&self) -> OmegaDerivation {
        let n = self.space.presentation().num_generators();
        OmegaDerivation::from_parts(&self.space, self.contraction_degree(), vec![Form::zero(&self.space); n], self.values.clone())
    }

    /// `j_K(w)`.
    pub fn contract(&self, w: &Form) -> Result<Form> {
        self.contraction().apply(w)
    }

    /// `K` on a one-form.
    pub fn eval(&self, w: &Form) -> Result<Form> {
        if w.terms().any(|(t, _)| t.degree() != 1) {
            return Err(Error::DegreeMismatch("expected a one-form".into()));
        }
        self.contract(w)
    }

    /// `L_K = [j_K, d]`, of bidegree `(k, a)`.
    pub fn lie_derivation(&self) -> OmegaDerivation {
        self.contraction()
            .bracket(&OmegaDerivation::exterior(&self.space))
            .expect("same space")
    }

    pub fn lie_derivative(&self, w: &Form) -> Result<Form> {
        self.lie_derivation().apply(w)
    }

    /// `(f K)(dx_i) = f K(dx_i)` for homogeneous `f`.
    pub fn left_scale(&self, f: &AlgebraElement) -> Result<Self> {
        if f.is_zero() {
            return Ok(Self::zero(&self.space, self.target, self.grade.clone()));
        }
        let g = f.grade()?;
        let ff = Form::from_element(&self.space, f)?;
        let values = self.values.iter().map(|v| ff.checked_mul(v)).collect::<Result<_>>()?;
        Ok(Self { space: self.space.clone(), target: self.target, grade: &g + &self.grade, values })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            space: self.space.clone(),
            target: self.target,
            grade: self.grade.clone(),
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.target != other.target || self.grade != other.grade {
            return Err(Error::DegreeMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.target, self.grade, other.target, other.grade
            )));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { space: self.space.clone(), target: self.target, grade: self.grade.clone(), values })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&Scalar::integer(-1)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if FormSpace::same(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// `j_K o L`, of target degree `k + l - 1`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let target = self.target + other.target - 1;
        let grade = &self.grade + &other.grade;
        if target < 0 {
            return Ok(Self::zero(&self.space, target, grade));
        }
        let j = self.contraction();
        let values = other.values.iter().map(|v| j.apply(v)).collect::<Result<_>>()?;
        Ok(Self { space: self.space.clone(), target, grade, values })
    }

    /// `[K, L]^ = j_K o L - rho_bar(|j_K|, |j_L|) j_L o K`. Two fields give the
    /// zero map of target degree `-1`.
    pub fn nijenhuis(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let twist = self.space.rho_bar().eval(&self.contraction_degree(), &other.contraction_degree());
        let a = self.compose(other)?;
        let b = other.compose(self)?;
        if a.target < 0 {
            return Ok(a);
        }
        a.checked_sub(&b.scale(&twist))
    }

    /// The Frölicher–Nijenhuis bracket: `M(dx_i) = [L_K, L_L](x_i)`.
    pub fn fn_bracket(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let br = self.lie_derivation().bracket(&other.lie_derivation())?;
        Ok(Self {
            space: self.space.clone(),
            target: self.target + other.target,
            grade: &self.grade + &other.grade,
            values: br.on_x,
        })
    }
}

/// `D = L_K + j_L` with `K(dx_i) = D(x_i)` and `L = (D - L_K)` on `dx_i`.
pub fn decompose(d: &OmegaDerivation) -> Result<(FieldValuedForm, FieldValuedForm)> {
    let deg = d.degree();
    if deg.degree < 0 {
        return Err(Error::DegreeUnderflow);
    }
    let space = d.space();
    let k = FieldValuedForm { space: space.clone(), target: deg.degree, grade: deg.grade.clone(), values: d.on_x.clone() };
    let lk = k.lie_derivation();
    let values = d.on_dx.iter().zip(&lk.on_dx).map(|(a, b)| a - b).collect();
    let l = FieldValuedForm { space: space.clone(), target: deg.degree + 1, grade: deg.grade.clone(), values };
    Ok((k, l))
}

fn fmt_values(f: &mut fmt::Formatter<'_>, space: &FormSpace, prefix: &str, values: &[Form]) -> fmt::Result {
    for (name, v) in space.presentation().generator_names().iter().zip(values) {
        write!(f, " {prefix}{name}{}->{v}", if prefix.is_empty() { "" } else { ")" })?;
    }
    Ok(())
}

/// `fvform k=1 deg=(0,0) x1->d(x1) x2->d(x2)`.
impl fmt::Display for FieldValuedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fvform k={} deg={}", self.target, self.grade)?;
        fmt_values(f, &self.space, "", &self.values)
    }
}

/// `deg=1:(0,0) x1->... d(x1)->...`.
impl fmt::Display for OmegaDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg={}", self.degree)?;
        fmt_values(f, &self.space, "", &self.on_x)?;
        fmt_values(f, &self.space, "d(", &self.on_dx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;

    struct Fixture {
        a: Arc<Presentation>,
        s: Arc<FormSpace>,
        x1: Form,
        x2: Form,
        dx1: Form,
        dx2: Form,
    }

    fn fixture() -> Fixture {
        let a = Presentation::quantum_plane(2);
        let s = FormSpace::trivial(&a);
        let x1 = Form::from_element(&s, &AlgebraElement::generator(&a, 0)).unwrap();
        let x2 = Form::from_element(&s, &AlgebraElement::generator(&a, 1)).unwrap();
        let dx1 = Form::dgen(&s, 0);
        let dx2 = Form::dgen(&s, 1);
        Fixture { a, s, x1, x2, dx1, dx2 }
    }

    fn partial(f: &Fixture, i: usize) -> FieldValuedForm {
        FieldValuedForm::from_derivation(&f.s, &Derivation::partial(&f.a, i).unwrap()).unwrap()
    }

    #[test]
    fn field_of_a_derivation() {
        let f = fixture();
        let k = partial(&f, 0);
        assert_eq!(k.values()[0], Form::one(&f.s));
        assert!(k.values()[1].is_zero());
        assert!(k.eval(&(&f.x1 * &f.dx2)).unwrap().is_zero());
        assert_eq!(k.to_derivation().unwrap(), Derivation::partial(&f.a, 0).unwrap());
        let z = Derivation::zero(&f.a, f.a.group().zero());
        assert!(FieldValuedForm::from_derivation(&f.s, &z).unwrap().is_zero());
    }

    #[test]
    fn contraction_examples() {
        let f = fixture();
        let k = partial(&f, 0);
        // j(x2 dx1) = rho(-e1, e2) x2 = q^-1 x2
        assert_eq!(k.contract(&(&f.x2 * &f.dx1)).unwrap(), f.x2.scale(&Scalar::q_pow(-1)));
        assert_eq!(k.contract(&(&f.dx1 * &f.dx2)).unwrap(), f.dx2);
        assert!(k.contract(&f.x1).unwrap().is_zero());
        let id = FieldValuedForm::identity(&f.s);
        let w = &(&f.x1 * &f.dx2) * &f.dx1;
        assert_eq!(id.contract(&w).unwrap(), w.scale(&Scalar::integer(2)));
        let w3 = &w * &Form::exact(&f.s, &AlgebraElement::generator(&f.a, 0).pow(2)).unwrap();
        assert_eq!(id.contract(&w3).unwrap(), w3.scale(&Scalar::integer(3)));
    }

    #[test]
    fn lie_derivatives() {
        let f = fixture();
        let id = FieldValuedForm::identity(&f.s);
        let u = &(&f.x1 * &f.x2) + &f.x1;
        assert_eq!(id.lie_derivative(&u).unwrap(), u.differential());
        let k = partial(&f, 1);
        assert_eq!(k.lie_derivative(&(&f.x1 * &f.x2)).unwrap(), f.x1.scale(&Scalar::q()));
        let d = OmegaDerivation::exterior(&f.s);
        let lk = k.lie_derivation();
        assert!(lk.bracket(&d).unwrap().is_zero());
        assert_eq!(id.lie_derivation(), d);
        assert!(d.bracket(&d).unwrap().is_zero());
    }

    #[test]
    fn decomposition() {
        let f = fixture();
        let d = OmegaDerivation::exterior(&f.s);
        let (k, l) = decompose(&d).unwrap();
        assert_eq!(k, FieldValuedForm::identity(&f.s));
        assert!(l.is_zero());
        let m = FieldValuedForm::identity(&f.s).left_scale(&AlgebraElement::generator(&f.a, 0)).unwrap();
        let j = m.contraction();
        let (k, l) = decompose(&j).unwrap();
        assert!(k.is_zero());
        assert_eq!(l, m);
    }

    #[test]
    fn brackets() {
        let f = fixture();
        let id = FieldValuedForm::identity(&f.s);
        let d1 = partial(&f, 0);
        let d2 = partial(&f, 1);
        assert!(id.nijenhuis(&id).unwrap().is_zero());
        let nb = d1.nijenhuis(&d2).unwrap();
        assert!(nb.is_zero() && nb.target_degree() == -1);
        assert_eq!(d1.nijenhuis(&id).unwrap(), d1);
        assert!(id.fn_bracket(&id).unwrap().is_zero());
        assert!(d1.fn_bracket(&d2).unwrap().is_zero());
        let x1d1 = d1.left_scale(&AlgebraElement::generator(&f.a, 0)).unwrap();
        let br = x1d1.fn_bracket(&d1).unwrap();
        let expected = x1d1.to_derivation().unwrap().bracket(&d1.to_derivation().unwrap()).unwrap();
        assert_eq!(br.to_derivation().unwrap(), expected);
    }

    #[test]
    fn inner_forms_are_valid() {
        let f = fixture();
        let w = &f.x1 * &f.dx2;
        let k = FieldValuedForm::inner(&w).unwrap();
        assert_eq!(k.target_degree(), 1);
        assert!(FieldValuedForm::new(&f.s, 1, k.grade().clone(), k.values().to_vec()).is_ok());
        // right multiplication by x1 is not a bimodule map on Omega^1
        let g = f.a.group().grade(&[1, 0]).unwrap();
        let bad = FieldValuedForm::new(&f.s, 1, g, vec![&f.dx1 * &f.x1, &f.dx2 * &f.x1]);
        assert!(matches!(bad, Err(Error::IllDefined(_))));
    }
}
