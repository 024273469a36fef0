//! Grade-by-grade de Rham complex of the universal calculus and its Betti
//! numbers by exact rank computation.

use std::sync::Arc;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::forms::{Form, FormSpace, Tensor};
use crate::grading::Grade;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Basis monomials whose grade can occur in a slot of a component of grade `g`.
fn candidates(space: &FormSpace, g: &Grade) -> Vec<Monomial> {
    let pres = space.presentation();
    let r = pres.group().free_rank();
    let mut out = vec![vec![]];
    for i in 0..pres.num_generators() {
        let range = if i < r { 0..=g.coords()[i] } else { 0..=pres.group().torsion_orders()[i - r] - 1 };
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                range.clone().map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// All basis tensors `(m0; m1, ..., mi)` of total grade `g`, sorted.
pub fn component_basis(space: &Arc<FormSpace>, i: usize, g: &Grade) -> Result<Vec<Tensor>> {
    let pres = space.presentation();
    if **g.group() != **pres.group() {
        return Err(Error::GroupMismatch);
    }
    if g.coords()[..pres.group().free_rank()].iter().any(|&c| c < 0) {
        return Ok(vec![]);
    }
    let cands = candidates(space, g);
    let mut out = vec![];
    let mut slots = vec![];
    fill(space, &cands, i + 1, g, &mut slots, &mut out);
    out.sort();
    Ok(out)
}

fn fill(
    space: &FormSpace,
    cands: &[Monomial],
    remaining_slots: usize,
    rest: &Grade,
    slots: &mut Vec<Monomial>,
    out: &mut Vec<Tensor>,
) {
    let pres = space.presentation();
    let barred = !slots.is_empty();
    if remaining_slots == 1 {
        if let Some(m) = pres.monomial_of_grade(rest) {
            if !(barred && m.is_unit()) {
                let mut s = slots.clone();
                s.push(m);
                let m0 = s.remove(0);
                out.extend(Tensor::new(m0, s));
            }
        }
        return;
    }
    for m in cands {
        if barred && m.is_unit() {
            continue;
        }
        let next = rest - &pres.grade_of_monomial(m);
        if next.coords()[..pres.group().free_rank()].iter().any(|&c| c < 0) {
            continue;
        }
        slots.push(m.clone());
        fill(space, cands, remaining_slots - 1, &next, slots, out);
        slots.pop();
    }
}

/// The grade-`g` part of the de Rham complex in form degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    grade: Grade,
    bases: Vec<Vec<Tensor>>,
    /// `differentials[i]` maps degree `i` to degree `i + 1` (rows index the target basis).
    differentials: Vec<Matrix>,
}

impl ComplexSlice {
    /// Bases up to degree `top + 1` and the differentials out of degrees `0..=top`.
    pub fn build(space: &Arc<FormSpace>, g: &Grade, top: usize) -> Result<Self> {
        let bases = (0..=top + 1).map(|i| component_basis(space, i, g)).collect::<Result<Vec<_>>>()?;
        let mut differentials = vec![];
        for i in 0..=top {
            let (src, dst) = (&bases[i], &bases[i + 1]);
            let mut m = Matrix::zeros(dst.len(), src.len());
            for (c, t) in src.iter().enumerate() {
                let image = Form::term(space, Scalar::one(), t.clone()).differential();
                for (u, coeff) in image.terms() {
                    let r = dst.binary_search(u).expect("d preserves the grade");
                    m.set(r, c, coeff.clone());
                }
            }
            differentials.push(m);
        }
        Ok(Self { grade: g.clone(), bases, differentials })
    }

    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn basis(&self, i: usize) -> &[Tensor] {
        &self.bases[i]
    }

    pub fn differential(&self, i: usize) -> &Matrix {
        &self.differentials[i]
    }

    pub fn top(&self) -> usize {
        self.differentials.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|i| self.bases[i].len()).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(Matrix::rank).collect()
    }

    /// `d_{i+1} d_i = 0` for every consecutive pair.
    pub fn squares_vanish(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// `b_i = dim ker d_i - rank d_{i-1}`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..=self.top())
            .map(|i| {
                let kernel = self.bases[i].len() - ranks[i];
                kernel - if i == 0 { 0 } else { ranks[i - 1] }
            })
            .collect()
    }
}

pub fn betti(space: &Arc<FormSpace>, g: &Grade, top: usize) -> Result<Vec<usize>> {
    Ok(ComplexSlice::build(space, g, top)?.betti())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;

    #[test]
    fn component_examples() {
        let c = FormSpace::trivial(&Presentation::clock_shift(2).unwrap());
        let zero = c.presentation().group().zero();
        assert_eq!(component_basis(&c, 0, &zero).unwrap().len(), 1);
        let total: usize = c
            .presentation()
            .group()
            .elements()
            .unwrap()
            .iter()
            .map(|g| component_basis(&c, 1, g).unwrap().len())
            .sum();
        assert_eq!(total, 12);

        let a = Presentation::quantum_plane(2);
        let s = FormSpace::trivial(&a);
        let g = a.group().grade(&[1, 1]).unwrap();
        let basis = component_basis(&s, 1, &g).unwrap();
        let shown: Vec<String> =
            basis.iter().map(|t| crate::forms::format_tensor(&a, t)).collect();
        assert_eq!(shown.len(), 3);
        for expected in ["x1*d(x2)", "x2*d(x1)", "d(x1*x2)"] {
            assert!(shown.contains(&expected.to_string()), "{shown:?}");
        }
    }

    #[test]
    fn betti_examples() {
        let c = FormSpace::trivial(&Presentation::clock_shift(2).unwrap());
        let zero = c.presentation().group().zero();
        let slice = ComplexSlice::build(&c, &zero, 2).unwrap();
        assert!(slice.squares_vanish());
        assert_eq!(slice.betti(), vec![1, 0, 0]);
        let s1 = FormSpace::trivial(&Presentation::quantum_plane(1));
        assert_eq!(betti(&s1, &s1.presentation().group().zero(), 1).unwrap()[0], 1);
        let g = s1.presentation().group().grade(&[3]).unwrap();
        assert_eq!(betti(&s1, &g, 2).unwrap(), vec![0, 0, 0]);
    }
}
