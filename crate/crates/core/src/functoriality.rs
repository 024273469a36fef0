//! Graded algebra homomorphisms, the induced map of form algebras
//! `Omega(f)(a0 da1 ... dan) = f(a0) df(a1) ... df(an)`, and naturality of
//! the brackets under `f`.
//!
//! Two field-valued forms are `f`-related when `K' o Omega^1(f) = Omega(f) o K`.
//! Both sides are bimodule maps along `f`, so agreement on the generator
//! differentials `dx_i` decides the identity.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_presentation, AlgebraElement, Monomial};
use crate::calculus::{FieldValuedForm, OmegaDerivation};
use crate::error::{Error, Result};
use crate::forms::{Form, FormSpace};
use crate::grading::Grade;

#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Arc<FormSpace>,
    target: Arc<FormSpace>,
    degree: Grade,
    images: Vec<AlgebraElement>,
}

impl AlgebraHom {
    /// `f(x_i) = images[i]`, extended multiplicatively. Each image must have
    /// grade `degree + |x_i|`, and the defining relations must be preserved.
    pub fn new(
        source: &Arc<FormSpace>,
        target: &Arc<FormSpace>,
        degree: Grade,
        images: Vec<AlgebraElement>,
    ) -> Result<Self> {
        let (sp, tp) = (source.presentation(), target.presentation());
        if sp.group() != tp.group() {
            return Err(Error::GroupMismatch);
        }
        if sp.cocycle() != tp.cocycle() {
            return Err(Error::InvalidArgument("source and target cocycles differ".into()));
        }
        if source.phi() != target.phi() {
            return Err(Error::PhiMismatch);
        }
        if images.len() != sp.num_generators() {
            return Err(Error::IllDefined("one image per generator required".into()));
        }
        for (i, v) in images.iter().enumerate() {
            if !same_presentation(v.presentation(), tp) {
                return Err(Error::PresentationMismatch);
            }
            if !v.has_grade(&(&degree + &sp.group().generator(i))) {
                return Err(Error::IllDefined(format!("image of {} has the wrong grade", sp.generator_names()[i])));
            }
        }
        let f = Self { source: source.clone(), target: target.clone(), degree, images };
        for rel in sp.relations() {
            if f.word(&rel.lhs) != f.word(&rel.rhs).scale(&rel.coeff) {
                return Err(Error::IllDefined("homomorphism does not respect the defining relations".into()));
            }
        }
        Ok(f)
    }

    pub fn identity(space: &Arc<FormSpace>) -> Self {
        let pres = space.presentation();
        let images = (0..pres.num_generators()).map(|i| AlgebraElement::generator(pres, i)).collect();
        Self { source: space.clone(), target: space.clone(), degree: pres.group().zero(), images }
    }

    pub fn source(&self) -> &Arc<FormSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FormSpace> {
        &self.target
    }

    pub fn degree(&self) -> &Grade {
        &self.degree
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    fn word(&self, w: &[usize]) -> AlgebraElement {
        w.iter()
            .fold(AlgebraElement::one(self.target.presentation()), |acc, &i| &acc * &self.images[i])
    }

    fn monomial(&self, m: &Monomial) -> AlgebraElement {
        let sp = self.source.presentation();
        let w = sp.word_of(m);
        let (c, _) = sp.word_product(&w);
        self.word(&w).scale(&c.inv().expect("unit"))
    }

    pub fn apply(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        if !same_presentation(u.presentation(), self.source.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        let mut acc = AlgebraElement::zero(self.target.presentation());
        for (m, c) in u.terms() {
            acc = &acc + &self.monomial(m).scale(c);
        }
        Ok(acc)
    }

    /// `Omega(f)`.
    pub fn apply_form(&self, w: &Form) -> Result<Form> {
        if !FormSpace::same(w.space(), &self.source) {
            return Err(Error::PresentationMismatch);
        }
        let t = &self.target;
        let mut acc = Form::zero(t);
        for (tensor, c) in w.terms() {
            let mut term = Form::from_element(t, &self.monomial(tensor.coefficient()))?;
            for m in tensor.dslots() {
                if term.is_zero() {
                    break;
                }
                term = &term * &Form::exact(t, &self.monomial(m))?;
            }
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }

    fn require_degree_zero(&self) -> Result<()> {
        if self.degree.is_zero() {
            Ok(())
        } else {
            Err(Error::DegreeMismatch(format!("homomorphism of degree {}", self.degree)))
        }
    }

    /// The first `dx_i` on which `K' o Omega^1(f)` and `Omega(f) o K` differ.
    pub fn relatedness_witness(&self, k: &FieldValuedForm, k2: &FieldValuedForm) -> Result<Option<usize>> {
        self.require_degree_zero()?;
        if k.target_degree() != k2.target_degree() || k.grade() != k2.grade() {
            return Err(Error::DegreeMismatch("related forms must share their bidegree".into()));
        }
        if !FormSpace::same(k.space(), &self.source) || !FormSpace::same(k2.space(), &self.target) {
            return Err(Error::PresentationMismatch);
        }
        for (i, img) in self.images.iter().enumerate() {
            let lhs = k2.eval(&Form::exact(&self.target, img)?)?;
            let rhs = self.apply_form(&k.values()[i])?;
            if lhs != rhs {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_related(&self, k: &FieldValuedForm, k2: &FieldValuedForm) -> Result<bool> {
        Ok(self.relatedness_witness(k, k2)?.is_none())
    }

    /// First sample on which `D' o Omega(f)` and `Omega(f) o D` differ.
    pub fn intertwining_witness<'a>(
        &self,
        d: &OmegaDerivation,
        d2: &OmegaDerivation,
        samples: &'a [Form],
    ) -> Result<Option<&'a Form>> {
        for w in samples {
            if d2.apply(&self.apply_form(w)?)? != self.apply_form(&d.apply(w)?)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for AlgebraHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("hom")?;
        for (name, v) in self.source.presentation().generator_names().iter().zip(&self.images) {
            write!(f, " {name}->{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportItem {
    pub item: u8,
    pub statement: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// The six naturality statements evaluated for two pairs `(K1, K1')`,
/// `(K2, K2')` on a sample of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub related: [bool; 2],
    pub items: Vec<ReportItem>,
}

impl NaturalityReport {
    pub fn item(&self, n: u8) -> &ReportItem {
        self.items.iter().find(|i| i.item == n).expect("items 1..=6")
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for NaturalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pair 1 related: {}", self.related[0])?;
        writeln!(f, "pair 2 related: {}", self.related[1])?;
        for i in &self.items {
            write!(f, "({}) {}: {}", i.item, i.statement, if i.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &i.witness {
                write!(f, " [witness: {w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn naturality_report(
    f: &AlgebraHom,
    pair1: (&FieldValuedForm, &FieldValuedForm),
    pair2: (&FieldValuedForm, &FieldValuedForm),
    samples: &[Form],
) -> Result<NaturalityReport> {
    f.require_degree_zero()?;
    let related = [f.is_related(pair1.0, pair1.1)?, f.is_related(pair2.0, pair2.1)?];
    let mut items = vec![];
    let render = |w: Option<&Form>| w.map(|w| w.to_string());

    // (1) j_{K'} o Omega(f) = Omega(f) o j_K
    let mut witness = None;
    for (k, k2) in [pair1, pair2] {
        if witness.is_none() {
            witness = render(f.intertwining_witness(&k.contraction(), &k2.contraction(), samples)?);
        }
    }
    items.push(ReportItem { item: 1, statement: "contractions intertwine", passed: witness.is_none(), witness });

    // (2) intertwining on exact one-forms implies relatedness
    let exact: Vec<Form> = samples
        .iter()
        .filter(|w| w.terms().all(|(t, _)| t.degree() == 0))
        .map(Form::differential)
        .collect();
    let mut ok = true;
    for (idx, (k, k2)) in [pair1, pair2].into_iter().enumerate() {
        let hyp = f.intertwining_witness(&k.contraction(), &k2.contraction(), &exact)?.is_none();
        ok &= !hyp || related[idx];
    }
    items.push(ReportItem { item: 2, statement: "intertwining on d(A) implies related", passed: ok, witness: None });

    // (3) j_{K1} o K2 and the Nijenhuis brackets are related
    let c1 = pair1.0.compose(pair2.0)?;
    let c2 = pair1.1.compose(pair2.1)?;
    let n1 = pair1.0.nijenhuis(pair2.0)?;
    let n2 = pair1.1.nijenhuis(pair2.1)?;
    let passed = related_or_trivial(f, &c1, &c2)? && related_or_trivial(f, &n1, &n2)?;
    items.push(ReportItem {
        item: 3,
        statement: "Nijenhuis brackets related",
        passed,
        witness: (!passed).then(|| format!("{n1}")),
    });

    // (4) L_{K'} o Omega(f) = Omega(f) o L_K
    let mut witness = None;
    for (k, k2) in [pair1, pair2] {
        if witness.is_none() {
            witness = render(f.intertwining_witness(&k.lie_derivation(), &k2.lie_derivation(), samples)?);
        }
    }
    items.push(ReportItem { item: 4, statement: "Lie derivations intertwine", passed: witness.is_none(), witness });

    // (5) intertwining of L on Omega^0 implies relatedness
    let functions: Vec<Form> =
        samples.iter().filter(|w| w.terms().all(|(t, _)| t.degree() == 0)).cloned().collect();
    let mut ok = true;
    for (idx, (k, k2)) in [pair1, pair2].into_iter().enumerate() {
        let hyp = f.intertwining_witness(&k.lie_derivation(), &k2.lie_derivation(), &functions)?.is_none();
        ok &= !hyp || related[idx];
    }
    items.push(ReportItem { item: 5, statement: "intertwining on A implies related", passed: ok, witness: None });

    // (6) Frölicher–Nijenhuis brackets are related
    let b1 = pair1.0.fn_bracket(pair2.0)?;
    let b2 = pair1.1.fn_bracket(pair2.1)?;
    let passed = related_or_trivial(f, &b1, &b2)?;
    items.push(ReportItem {
        item: 6,
        statement: "FN brackets related",
        passed,
        witness: (!passed).then(|| format!("{b1}")),
    });

    Ok(NaturalityReport { related, items })
}

fn related_or_trivial(f: &AlgebraHom, k: &FieldValuedForm, k2: &FieldValuedForm) -> Result<bool> {
    if k.target_degree() < 0 {
        return Ok(true);
    }
    f.is_related(k, k2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;
    use crate::derivation::Derivation;

    fn kill_x2() -> (Arc<Presentation>, Arc<FormSpace>, AlgebraHom) {
        let a = Presentation::quantum_plane(2);
        let s = FormSpace::trivial(&a);
        let f = AlgebraHom::new(
            &s,
            &s,
            a.group().zero(),
            vec![AlgebraElement::generator(&a, 0), AlgebraElement::zero(&a)],
        )
        .unwrap();
        (a, s, f)
    }

    #[test]
    fn induced_form_map() {
        let (a, s, f) = kill_x2();
        let id = AlgebraHom::identity(&s);
        let w = &Form::from_element(&s, &AlgebraElement::generator(&a, 0)).unwrap() * &Form::dgen(&s, 1);
        assert_eq!(id.apply_form(&w).unwrap(), w);
        assert!(f.apply_form(&Form::dgen(&s, 1)).unwrap().is_zero());
        let x1x2 = &AlgebraElement::generator(&a, 0) * &AlgebraElement::generator(&a, 1);
        assert!(f.apply_form(&Form::exact(&s, &x1x2).unwrap()).unwrap().is_zero());
        let dx1 = Form::dgen(&s, 0);
        let v = &(&dx1 * &Form::from_element(&s, &x1x2).unwrap()) * &dx1;
        assert_eq!(f.apply_form(&v.differential()).unwrap(), f.apply_form(&v).unwrap().differential());
    }

    #[test]
    fn bad_homomorphisms_are_rejected() {
        let a = Presentation::quantum_plane(2);
        let s = FormSpace::trivial(&a);
        // swapping the generators breaks x2 x1 = q^-1 x1 x2
        let swap = AlgebraHom::new(
            &s,
            &s,
            a.group().zero(),
            vec![AlgebraElement::generator(&a, 1), AlgebraElement::generator(&a, 0)],
        );
        assert!(swap.is_err());
    }

    #[test]
    fn relatedness_examples() {
        let (a, s, f) = kill_x2();
        let id = FieldValuedForm::identity(&s);
        assert!(f.is_related(&id, &id).unwrap());
        let d2 = FieldValuedForm::from_derivation(&s, &Derivation::partial(&a, 1).unwrap()).unwrap();
        let zero = FieldValuedForm::zero(&s, 0, d2.grade().clone());
        assert!(!f.is_related(&d2, &zero).unwrap());
        let x2d2 = d2.left_scale(&AlgebraElement::generator(&a, 1)).unwrap();
        let zero0 = FieldValuedForm::zero(&s, 0, a.group().zero());
        assert!(f.is_related(&x2d2, &zero0).unwrap());
    }

    #[test]
    fn naturality_examples() {
        let (a, s, f) = kill_x2();
        let id = FieldValuedForm::identity(&s);
        let mons = a.sample_monomials(1);
        let samples: Vec<Form> = mons
            .iter()
            .flat_map(|m0| {
                let s = s.clone();
                mons.iter().map(move |m1| Form::basis(&s, vec![m0.clone(), m1.clone()]))
            })
            .chain(mons.iter().map(|m| Form::basis(&s, vec![m.clone()])))
            .filter(|w| !w.is_zero())
            .collect();
        let r = naturality_report(&AlgebraHom::identity(&s), (&id, &id), (&id, &id), &samples).unwrap();
        assert!(r.all_passed());
        let d2 = FieldValuedForm::from_derivation(&s, &Derivation::partial(&a, 1).unwrap()).unwrap();
        let x2d2 = d2.left_scale(&AlgebraElement::generator(&a, 1)).unwrap();
        let zero0 = FieldValuedForm::zero(&s, 0, a.group().zero());
        let r = naturality_report(&f, (&x2d2, &zero0), (&id, &id), &samples).unwrap();
        assert!(r.all_passed(), "{r}");
        let zero = FieldValuedForm::zero(&s, 0, d2.grade().clone());
        let r = naturality_report(&f, (&d2, &zero), (&id, &id), &samples).unwrap();
        assert!(!r.item(1).passed);
        assert!(r.item(1).witness.is_some());
    }
}
