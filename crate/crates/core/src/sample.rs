//! Seeded random generators for elements, forms, derivations and
//! field-valued forms. Everything generated here satisfies the construction
//! invariants of its type.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Monomial, Presentation};
use crate::calculus::{FieldValuedForm, OmegaDerivation};
use crate::cohomology::component_basis;
use crate::derivation::Derivation;
use crate::forms::{Form, FormSpace};
use crate::grading::Grade;
use crate::scalar::Scalar;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero coefficient: `c q^e eps^j`, occasionally a binomial.
pub fn scalar(rng: &mut SampleRng, root_order: u32) -> Scalar {
    let term = |rng: &mut SampleRng| {
        let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
        let mut s = Scalar::rational(c, rng.gen_range(1..=2));
        s = &s * &Scalar::q_pow(rng.gen_range(-1..=1));
        if root_order > 1 {
            s = &s * &Scalar::eps(root_order, rng.gen_range(0..root_order as i64));
        }
        s
    };
    let s = term(rng);
    if rng.gen_bool(0.2) {
        let t = &s + &term(rng);
        if !t.is_zero() {
            return t;
        }
    }
    s
}

pub fn free_grade(rng: &mut SampleRng, pres: &Presentation, bound: i64) -> Grade {
    let g = pres.group();
    let coords: Vec<i64> = (0..g.rank())
        .map(|i| match g.order_of(i) {
            Some(n) => rng.gen_range(0..n),
            None => rng.gen_range(-bound..=bound),
        })
        .collect();
    g.grade(&coords).expect("in range")
}

pub fn monomial(rng: &mut SampleRng, pres: &Presentation, bound: i64) -> Monomial {
    let g = pres.group();
    let coords = (0..g.rank())
        .map(|i| match g.order_of(i) {
            Some(n) => rng.gen_range(0..n),
            None => rng.gen_range(0..=bound),
        })
        .collect();
    Monomial::new(coords)
}

pub fn nonunit_monomial(rng: &mut SampleRng, pres: &Presentation, bound: i64) -> Monomial {
    loop {
        let m = monomial(rng, pres, bound.max(1));
        if !m.is_unit() {
            return m;
        }
    }
}

pub fn element(rng: &mut SampleRng, pres: &Arc<Presentation>, terms: usize, bound: i64) -> AlgebraElement {
    let mut u = AlgebraElement::zero(pres);
    for _ in 0..terms {
        let t = AlgebraElement::term(pres, scalar(rng, pres.root_order()), monomial(rng, pres, bound));
        u = &u + &t;
    }
    u
}

/// A nonzero homogeneous element `c m`.
pub fn homogeneous_element(rng: &mut SampleRng, pres: &Arc<Presentation>, bound: i64) -> AlgebraElement {
    AlgebraElement::term(pres, scalar(rng, pres.root_order()), monomial(rng, pres, bound))
}

/// Up to `terms` random basis tensors of degree at most `max_degree`.
pub fn form(rng: &mut SampleRng, space: &Arc<FormSpace>, max_degree: usize, terms: usize, bound: i64) -> Form {
    let pres = space.presentation();
    let mut w = Form::zero(space);
    for _ in 0..terms {
        let k = rng.gen_range(0..=max_degree);
        let mut slots = vec![monomial(rng, pres, bound)];
        for _ in 0..k {
            slots.push(nonunit_monomial(rng, pres, bound));
        }
        w = &w + &Form::basis(space, slots).scale(&scalar(rng, pres.root_order()));
    }
    w
}

/// A random combination of basis tensors of bidegree `(k, g)`; zero if the
/// component is empty.
pub fn form_of_bigrade(rng: &mut SampleRng, space: &Arc<FormSpace>, k: usize, g: &Grade, terms: usize) -> Form {
    let basis = component_basis(space, k, g).expect("same group");
    let mut w = Form::zero(space);
    if basis.is_empty() {
        return w;
    }
    for _ in 0..terms {
        let t = basis.choose(rng).unwrap().clone();
        let c = scalar(rng, space.presentation().root_order());
        w = &w + &Form::term(space, c, t);
    }
    w
}

/// A nonzero homogeneous form of degree at most `max_degree`.
pub fn homogeneous_form(rng: &mut SampleRng, space: &Arc<FormSpace>, max_degree: usize, bound: i64) -> Form {
    loop {
        let k = rng.gen_range(0..=max_degree);
        let g = grade_of_degree(rng, space.presentation(), k, bound);
        let terms = rng.gen_range(1..=3);
        let w = form_of_bigrade(rng, space, k, &g, terms);
        if !w.is_zero() {
            return w;
        }
    }
}

/// A grade large enough to carry forms of degree `k` on free generators.
fn grade_of_degree(rng: &mut SampleRng, pres: &Presentation, k: usize, bound: i64) -> Grade {
    let mut g = pres.grade_of_monomial(&monomial(rng, pres, bound));
    for _ in 0..k {
        g = &g + &pres.grade_of_monomial(&nonunit_monomial(rng, pres, 1));
    }
    g
}

/// A derivation of degree `g` with monomial values; for non-free relations
/// the candidate values are thinned out until the relation check passes.
pub fn derivation_of_degree(rng: &mut SampleRng, pres: &Arc<Presentation>, g: &Grade) -> Derivation {
    let group = pres.group();
    let mut values: Vec<AlgebraElement> = (0..pres.num_generators())
        .map(|i| match pres.monomial_of_grade(&(g + &group.generator(i))) {
            Some(m) => AlgebraElement::term(pres, scalar(rng, pres.root_order()), m),
            None => AlgebraElement::zero(pres),
        })
        .collect();
    for i in 0..=values.len() {
        if let Ok(x) = Derivation::new(pres, g.clone(), values.clone()) {
            return x;
        }
        if i < values.len() {
            values[i] = AlgebraElement::zero(pres);
        }
    }
    Derivation::zero(pres, g.clone())
}

/// A random derivation whose degree is the grade of a monomial minus a generator.
pub fn derivation(rng: &mut SampleRng, pres: &Arc<Presentation>, bound: i64) -> Derivation {
    let i = rng.gen_range(0..pres.num_generators());
    let g = &pres.grade_of_monomial(&monomial(rng, pres, bound)) - &pres.group().generator(i);
    derivation_of_degree(rng, pres, &g)
}

/// A field-valued form of target degree `k` and grade `g`, assembled from
/// fields, multiples of the identity and inner forms `[w, -]`.
pub fn field_valued_form(rng: &mut SampleRng, space: &Arc<FormSpace>, k: usize, g: &Grade) -> FieldValuedForm {
    let pres = space.presentation();
    if k == 0 {
        let x = derivation_of_degree(rng, pres, g);
        return FieldValuedForm::from_derivation(space, &x).expect("same presentation");
    }
    let mut acc = FieldValuedForm::zero(space, k as i64, g.clone());
    if k == 1 {
        if let Some(m) = pres.monomial_of_grade(g) {
            let f = AlgebraElement::term(pres, scalar(rng, pres.root_order()), m);
            acc = acc.checked_add(&FieldValuedForm::identity(space).left_scale(&f).unwrap()).unwrap();
        }
    }
    let w = form_of_bigrade(rng, space, k, g, 2);
    if !w.is_zero() {
        acc = acc.checked_add(&FieldValuedForm::inner(&w).unwrap()).unwrap();
    }
    // f [w2, -] with |f| + |w2| = g
    let m = monomial(rng, pres, 1);
    let rest = g - &pres.grade_of_monomial(&m);
    let w2 = form_of_bigrade(rng, space, k, &rest, 1);
    if !w2.is_zero() {
        let f = AlgebraElement::term(pres, scalar(rng, pres.root_order()), m);
        acc = acc.checked_add(&FieldValuedForm::inner(&w2).unwrap().left_scale(&f).unwrap()).unwrap();
    }
    acc
}

/// A nonnegative grade with free part of total size at most `bound`.
pub fn small_grade(rng: &mut SampleRng, pres: &Presentation, bound: i64) -> Grade {
    let g = pres.group();
    let mut budget = bound;
    let coords: Vec<i64> = (0..g.rank())
        .map(|i| match g.order_of(i) {
            Some(n) => rng.gen_range(0..n),
            None => {
                let c = rng.gen_range(0..=budget);
                budget -= c;
                c
            }
        })
        .collect();
    g.grade(&coords).expect("in range")
}

/// A random derivation of `Omega*`: `d`, a contraction, a Lie derivation, or
/// a scalar multiple of one of these.
pub fn omega_derivation(rng: &mut SampleRng, space: &Arc<FormSpace>) -> OmegaDerivation {
    let pres = space.presentation();
    let g = small_grade(rng, pres, 1);
    let k = rng.gen_range(0..=2);
    let c = scalar(rng, pres.root_order());
    let d = match rng.gen_range(0..3) {
        0 => OmegaDerivation::exterior(space),
        1 => field_valued_form(rng, space, k, &g).contraction(),
        _ => field_valued_form(rng, space, k.min(1), &g).lie_derivation(),
    };
    d.scale(&c)
}

/// Basis forms `m0 dm1 ... dmk` over monomials of exponent at most `bound`.
pub fn basis_forms(space: &Arc<FormSpace>, max_degree: usize, bound: i64) -> Vec<Form> {
    let mons = space.presentation().sample_monomials(bound);
    let mut layer: Vec<Vec<Monomial>> = mons.iter().map(|m| vec![m.clone()]).collect();
    let mut out: Vec<Form> = layer.iter().map(|s| Form::basis(space, s.clone())).collect();
    for _ in 0..max_degree {
        layer = layer
            .iter()
            .flat_map(|s| {
                mons.iter().filter(|m| !m.is_unit()).map(move |m| {
                    let mut t = s.clone();
                    t.push(m.clone());
                    t
                })
            })
            .collect();
        out.extend(layer.iter().map(|s| Form::basis(space, s.clone())));
    }
    out
}
