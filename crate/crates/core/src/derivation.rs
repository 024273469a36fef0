//! Rho-derivations `X: A -> A` of a fixed grade, determined by their values on
//! generators and extended by `X(fg) = X(f) g + rho(|X|, |f|) f X(g)`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_presentation, AlgebraElement, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::grading::Grade;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pres: Arc<Presentation>,
    degree: Grade,
    values: Vec<AlgebraElement>,
}

impl Derivation {
    /// Validates grades of the generator values and compatibility with every
    /// defining relation.
    pub fn new(pres: &Arc<Presentation>, degree: Grade, values: Vec<AlgebraElement>) -> Result<Self> {
        if values.len() != pres.num_generators() {
            return Err(Error::IllDefined("one value per generator required".into()));
        }
        if **degree.group() != **pres.group() {
            return Err(Error::GroupMismatch);
        }
        for (i, v) in values.iter().enumerate() {
            if !same_presentation(v.presentation(), pres) {
                return Err(Error::PresentationMismatch);
            }
            let target = &degree + &pres.group().generator(i);
            if !v.has_grade(&target) {
                return Err(Error::IllDefined(format!(
                    "value on {} is not of grade {target}",
                    pres.generator_names()[i]
                )));
            }
        }
        let x = Self { pres: pres.clone(), degree, values };
        x.check_relations()?;
        Ok(x)
    }

    pub fn zero(pres: &Arc<Presentation>, degree: Grade) -> Self {
        let values = vec![AlgebraElement::zero(pres); pres.num_generators()];
        Self { pres: pres.clone(), degree, values }
    }

    /// The partial derivative along generator `i`, of degree `-e_i`.
    pub fn partial(pres: &Arc<Presentation>, i: usize) -> Result<Self> {
        let values = (0..pres.num_generators())
            .map(|j| {
                if i == j {
                    AlgebraElement::one(pres)
                } else {
                    AlgebraElement::zero(pres)
                }
            })
            .collect();
        Self::new(pres, pres.group().generator(i).neg(), values)
    }

    fn check_relations(&self) -> Result<()> {
        for rel in self.pres.relations() {
            let lhs = self.apply_word(&rel.lhs);
            let rhs = self.apply_word(&rel.rhs).scale(&rel.coeff);
            if lhs != rhs {
                let names = self.pres.generator_names();
                let word = |w: &[usize]| w.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("*");
                return Err(Error::IllDefined(format!(
                    "derivation does not respect {} = ({}) {}",
                    word(&rel.lhs),
                    rel.coeff,
                    if rel.rhs.is_empty() { "1".to_string() } else { word(&rel.rhs) }
                )));
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn degree(&self) -> &Grade {
        &self.degree
    }

    pub fn values(&self) -> &[AlgebraElement] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(AlgebraElement::is_zero)
    }

    /// Twisted Leibniz rule along a word of generators.
    fn apply_word(&self, word: &[usize]) -> AlgebraElement {
        let pres = &self.pres;
        let gens: Vec<AlgebraElement> =
            word.iter().map(|&i| AlgebraElement::generator(pres, i)).collect();
        let mut suffixes = vec![AlgebraElement::one(pres); word.len() + 1];
        for k in (0..word.len()).rev() {
            suffixes[k] = &gens[k] * &suffixes[k + 1];
        }
        let mut prefix = AlgebraElement::one(pres);
        let mut prefix_grade = pres.group().zero();
        let mut acc = AlgebraElement::zero(pres);
        for (k, &i) in word.iter().enumerate() {
            if !self.values[i].is_zero() {
                let twist = pres.cocycle().eval(&self.degree, &prefix_grade);
                let term = &(&prefix * &self.values[i]) * &suffixes[k + 1];
                acc = &acc + &term.scale(&twist);
            }
            prefix = &prefix * &gens[k];
            prefix_grade = &prefix_grade + &pres.group().generator(i);
        }
        acc
    }

    fn apply_monomial(&self, m: &Monomial) -> AlgebraElement {
        let word = self.pres.word_of(m);
        let (c, _) = self.pres.word_product(&word);
        let inv = c.inv().expect("word coefficients are units");
        self.apply_word(&word).scale(&inv)
    }

    pub fn apply(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        if !same_presentation(u.presentation(), &self.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut acc = AlgebraElement::zero(&self.pres);
        for (m, c) in u.terms() {
            if !m.is_unit() {
                acc = &acc + &self.apply_monomial(m).scale(c);
            }
        }
        Ok(acc)
    }

    /// `(f X)(g) = f X(g)`, of degree `|f| + |X|`.
    pub fn left_scale(&self, f: &AlgebraElement) -> Result<Self> {
        if f.is_zero() {
            return Ok(Self::zero(&self.pres, self.degree.clone()));
        }
        let g = f.grade()?;
        let values = self.values.iter().map(|v| f.checked_mul(v)).collect::<Result<_>>()?;
        Self::new(&self.pres, &g + &self.degree, values)
    }

    /// `X f = rho(|X|, |f|) f X`.
    pub fn right_scale(&self, f: &AlgebraElement) -> Result<Self> {
        if f.is_zero() {
            return Ok(Self::zero(&self.pres, self.degree.clone()));
        }
        let twist = self.pres.cocycle().eval(&self.degree, &f.grade()?);
        self.left_scale(&f.scale(&twist))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            pres: self.pres.clone(),
            degree: self.degree.clone(),
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { pres: self.pres.clone(), degree: self.degree.clone(), values })
    }

    /// `[X, Y] = X Y - rho(|X|, |Y|) Y X`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        let twist = self.pres.cocycle().eval(&self.degree, &other.degree);
        let values = (0..self.pres.num_generators())
            .map(|i| {
                let xy = self.apply(&other.values[i])?;
                let yx = other.apply(&self.values[i])?;
                xy.checked_sub(&yx.scale(&twist))
            })
            .collect::<Result<_>>()?;
        Self::new(&self.pres, &self.degree + &other.degree, values)
    }
}

/// `deriv deg=(-1,0) x1->1 x2->0`.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deriv deg={}", self.degree)?;
        for (name, v) in self.pres.generator_names().iter().zip(&self.values) {
            write!(f, " {name}->{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<Presentation>, AlgebraElement, AlgebraElement) {
        let a = Presentation::quantum_plane(2);
        let x1 = AlgebraElement::generator(&a, 0);
        let x2 = AlgebraElement::generator(&a, 1);
        (a, x1, x2)
    }

    #[test]
    fn partial_derivatives() {
        let (a, x1, x2) = setup();
        let d1 = Derivation::partial(&a, 0).unwrap();
        let d2 = Derivation::partial(&a, 1).unwrap();
        // d2(x1 x2) = rho(-e2, e1) x1 = q x1
        assert_eq!(d2.apply(&(&x1 * &x2)).unwrap(), x1.scale(&Scalar::q()));
        assert_eq!(d1.apply(&(&x1 * &x1)).unwrap(), x1.scale(&Scalar::integer(2)));
        assert!(d1.apply(&AlgebraElement::one(&a)).unwrap().is_zero());
        assert_eq!(d1.to_string(), "deriv deg=(-1,0) x1->1 x2->0");
    }

    #[test]
    fn ill_defined_data_is_rejected() {
        let (a, x1, x2) = setup();
        // on the quantum plane any grade-correct values are admissible
        let deg = a.group().grade(&[-1, 1]).unwrap();
        assert!(Derivation::new(&a, deg, vec![x2.clone(), AlgebraElement::zero(&a)]).is_ok());
        // wrong grade
        let r = Derivation::new(&a, a.group().zero(), vec![x2, x1]);
        assert!(matches!(r, Err(Error::IllDefined(_))));
        // no nonzero derivation p -> lambda p survives p^n = 1
        let c = Presentation::clock_shift(3).unwrap();
        let p = AlgebraElement::generator(&c, 0);
        let r = Derivation::new(&c, c.group().zero(), vec![p, AlgebraElement::zero(&c)]);
        assert!(matches!(r, Err(Error::IllDefined(_))));
    }

    #[test]
    fn module_structure() {
        let (a, x1, x2) = setup();
        let d1 = Derivation::partial(&a, 0).unwrap();
        let d2 = Derivation::partial(&a, 1).unwrap();
        let e1 = d1.left_scale(&x1).unwrap();
        assert_eq!(e1.apply(&x1).unwrap(), x1);
        assert_eq!(d1.left_scale(&AlgebraElement::one(&a)).unwrap(), d1);
        // both evaluation orders of the twisted Leibniz rule agree
        let direct = e1.apply(&(&x1 * &x2)).unwrap();
        let twist = a.cocycle().eval(e1.degree(), &a.group().generator(0));
        let leibniz = &(&e1.apply(&x1).unwrap() * &x2) + &(&x1 * &e1.apply(&x2).unwrap()).scale(&twist);
        assert_eq!(direct, leibniz);
        assert_eq!(d1.right_scale(&x1).unwrap(), e1);
        assert_eq!(d2.right_scale(&x1).unwrap(), d2.left_scale(&x1).unwrap().scale(&Scalar::q()));
        assert_eq!(d1.right_scale(&AlgebraElement::one(&a)).unwrap(), d1);
    }

    #[test]
    fn brackets() {
        let (a, x1, x2) = setup();
        let d1 = Derivation::partial(&a, 0).unwrap();
        let d2 = Derivation::partial(&a, 1).unwrap();
        assert!(d1.bracket(&d2).unwrap().is_zero());
        assert!(d1.bracket(&d1).unwrap().is_zero());
        let e1 = d1.left_scale(&x1).unwrap();
        let br = e1.bracket(&d1).unwrap();
        let u = &x1 * &x2;
        let twist = a.cocycle().eval(e1.degree(), d1.degree());
        let composed = &e1.apply(&d1.apply(&u).unwrap()).unwrap()
            - &d1.apply(&e1.apply(&u).unwrap()).unwrap().scale(&twist);
        assert_eq!(br.apply(&u).unwrap(), composed);
        assert_eq!(br.apply(&x1).unwrap(), AlgebraElement::one(&a).neg());
    }
}
