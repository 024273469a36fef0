//! Seeded property suites. Every suite compares exact values, either against
//! an independent oracle (explicit cocycle formulas, literal matrices,
//! operator composition) or between two evaluation routes.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::oracle::MatrixModel;
use crate::algebra::{AlgebraElement, Presentation};
use crate::calculus::{decompose, FieldValuedForm, OmegaDerivation};
use crate::cohomology::ComplexSlice;
use crate::derivation::Derivation;
use crate::forms::{Form, FormSpace};
use crate::functoriality::{naturality_report, AlgebraHom};
use crate::grading::{BiGrade, Cocycle, ExtendedCocycle, Grade, GradeGroup, GradedUnitHom};
use crate::sample::{self, SampleRng};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub suite: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(suite: &'static str, seed: u64) -> Self {
        Self { suite, seed, cases: 0, failures: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (seed {}, {} cases)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.seed,
            self.cases
        )?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

pub type Suite = fn(u64) -> Outcome;

pub const SUITES: &[(&str, Suite)] = &[
    ("scalars", scalars),
    ("cocycle", cocycle),
    ("commutativity", commutativity),
    ("matrix-oracle", matrix_oracle),
    ("derivations", derivations),
    ("forms", forms),
    ("universality", universality),
    ("contraction", contraction),
    ("decomposition", decomposition),
    ("fn-bracket", fn_bracket),
    ("functoriality", functoriality),
    ("naturality", naturality),
    ("cohomology", cohomology),
];

pub fn suite(name: &str) -> Option<Suite> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

// ---------------------------------------------------------------- scalars

pub fn scalars(seed: u64) -> Outcome {
    let mut out = Outcome::new("scalars", seed);
    let mut rng = sample::rng(seed);
    for n in [1u32, 5] {
        for _ in 0..100 {
            let a = sample::scalar(&mut rng, n);
            let b = sample::scalar(&mut rng, n);
            let c = sample::scalar(&mut rng, n);
            out.check(&(&a + &b) + &c == &a + &(&b + &c), || format!("(a+b)+c, a={a} b={b} c={c}"));
            out.check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity, a={a}"));
            out.check((&a * &a.inv().unwrap()).is_one(), || format!("inverse of {a}"));
            out.check((&a - &b).is_zero() == (a == b), || format!("canonical form {a} vs {b}"));
        }
    }
    for n in 2..=6u32 {
        let e = Scalar::eps(n, 1);
        out.check(e.pow(n as i64).unwrap().is_one(), || format!("eps_{n}^{n} != 1"));
        for k in 1..n as i64 {
            out.check(!e.pow(k).unwrap().is_one(), || format!("eps_{n}^{k} == 1"));
        }
    }
    out
}

// ---------------------------------------------------------------- cocycles

/// `q^{sum_{j<k} a_j b_k - sum_{j>k} a_j b_k}`.
fn qplane_formula(a: &[i64], b: &[i64]) -> Scalar {
    let mut e = 0;
    for j in 0..a.len() {
        for k in 0..b.len() {
            e += a[j] * b[k] * (k as i64 - j as i64).signum();
        }
    }
    Scalar::q_pow(e as i32)
}

/// `eps^{a1 b2 - a2 b1}`: the commutation factor of `p^a1 qh^a2` past `p^b1 qh^b2`.
fn clock_formula(n: u32, a: &[i64], b: &[i64]) -> Scalar {
    Scalar::eps(n, a[0] * b[1] - a[1] * b[0])
}

fn character(values: &[Scalar], g: &Grade) -> Scalar {
    values
        .iter()
        .zip(g.coords())
        .fold(Scalar::one(), |acc, (v, &k)| &acc * &v.pow(k).unwrap())
}

/// `(-1)^{nm} phi(a)^{-m} phi(b)^n rho(a, b)` evaluated directly.
fn rho_bar_formula(phi: &[Scalar], rho: &Scalar, a: &BiGrade, b: &BiGrade) -> Scalar {
    let sign = if (a.degree * b.degree).rem_euclid(2) == 1 { -1 } else { 1 };
    let v = &character(phi, &a.grade).pow(-b.degree).unwrap() * &character(phi, &b.grade).pow(a.degree).unwrap();
    &(&v * rho) * &Scalar::integer(sign)
}

fn cocycle_laws(out: &mut Outcome, rho: &Cocycle, a: &Grade, b: &Grade, c: &Grade) {
    let ab = rho.eval(a, b);
    out.check((&ab * &rho.eval(b, a)).is_one(), || format!("rho({a},{b}) rho({b},{a}) != 1"));
    out.check(rho.eval(&(a + b), c) == &rho.eval(a, c) * &rho.eval(b, c), || format!("left additivity {a},{b},{c}"));
    out.check(rho.eval(a, &(b + c)) == &ab * &rho.eval(a, c), || format!("right additivity {a},{b},{c}"));
    let zero = a.group().zero();
    out.check(rho.eval(&zero, b).is_one(), || format!("rho(0,{b}) != 1"));
    let cc = rho.eval(c, c);
    out.check(cc.is_one() || (&cc + &Scalar::one()).is_zero(), || format!("rho({c},{c}) = {cc}"));
}

fn rho_bar_laws(out: &mut Outcome, rb: &ExtendedCocycle, phi: &[Scalar], a: &BiGrade, b: &BiGrade, c: &BiGrade) {
    let ab = rb.eval(a, b);
    out.check((&ab * &rb.eval(b, a)).is_one(), || format!("rho_bar antisymmetry {a},{b}"));
    out.check(rb.eval(&(a + b), c) == &rb.eval(a, c) * &rb.eval(b, c), || format!("rho_bar left additivity {a},{b},{c}"));
    out.check(rb.eval(a, &(b + c)) == &ab * &rb.eval(a, c), || format!("rho_bar right additivity {a},{b},{c}"));
    let rho = rb.base().eval(&a.grade, &b.grade);
    out.check(ab == rho_bar_formula(phi, &rho, a, b), || format!("rho_bar formula {a},{b}"));
    let one = BiGrade::new(1, a.grade.group().zero());
    let next = BiGrade::new(a.degree + 1, a.grade.clone());
    out.check((&rb.eval(&one, &next) + &rb.eval(&one, a)).is_zero(), || format!("rho_bar((1,0),(n+1,a)) + rho_bar((1,0),(n,a)) != 0 at {a}"));
    let sign = Scalar::integer(if a.degree.rem_euclid(2) == 1 { -1 } else { 1 });
    out.check(rb.eval(&one, a) == &sign * &character(phi, &a.grade), || format!("rho_bar((1,0),{a}) != (-1)^n phi"));
}

pub fn cocycle(seed: u64) -> Outcome {
    let mut out = Outcome::new("cocycle", seed);
    let mut rng = sample::rng(seed);
    let z4 = GradeGroup::free(4);
    let rho = Cocycle::quantum_plane(4);
    let rand_grade = |rng: &mut SampleRng| {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
        z4.grade(&c).unwrap()
    };
    for _ in 0..1000 {
        let (a, b, c) = (rand_grade(&mut rng), rand_grade(&mut rng), rand_grade(&mut rng));
        cocycle_laws(&mut out, &rho, &a, &b, &c);
        out.check(rho.eval(&a, &b) == qplane_formula(a.coords(), b.coords()), || format!("quantum plane formula at {a},{b}"));
    }
    let phi4 = vec![Scalar::q(), Scalar::integer(-1), Scalar::integer(2), Scalar::rational(1, 3)];
    let rb = ExtendedCocycle::new(rho.clone(), GradedUnitHom::new(z4.clone(), phi4.clone()).unwrap()).unwrap();
    for _ in 0..1000 {
        let bg = |rng: &mut SampleRng| BiGrade::new(rng.gen_range(-3..=3), rand_grade(rng));
        let (a, b, c) = (bg(&mut rng), bg(&mut rng), bg(&mut rng));
        rho_bar_laws(&mut out, &rb, &phi4, &a, &b, &c);
    }

    let rho3 = Cocycle::clock_shift(3);
    let elems = rho3.group().elements().unwrap();
    for a in &elems {
        for b in &elems {
            out.check(rho3.eval(a, b) == clock_formula(3, a.coords(), b.coords()), || format!("clock formula at {a},{b}"));
            for c in &elems {
                cocycle_laws(&mut out, &rho3, a, b, c);
            }
        }
    }
    let phi3 = vec![Scalar::eps(3, 1), Scalar::eps(3, 2)];
    let rb3 = ExtendedCocycle::new(rho3.clone(), GradedUnitHom::new(rho3.group().clone(), phi3.clone()).unwrap()).unwrap();
    let bigrades: Vec<BiGrade> = (-2..=2).flat_map(|n| elems.iter().map(move |g| BiGrade::new(n, g.clone()))).collect();
    for a in &bigrades {
        for b in &bigrades {
            let c = &bigrades[rng.gen_range(0..bigrades.len())];
            rho_bar_laws(&mut out, &rb3, &phi3, a, b, c);
        }
    }
    out
}

// ---------------------------------------------------------------- algebras

pub fn commutativity(seed: u64) -> Outcome {
    let mut out = Outcome::new("commutativity", seed);
    let mut rng = sample::rng(seed);
    let s4 = Presentation::quantum_plane(4);
    for _ in 0..500 {
        let u = sample::homogeneous_element(&mut rng, &s4, 6);
        let v = sample::homogeneous_element(&mut rng, &s4, 6);
        out.check(u.rho_commutator(&v).unwrap().is_zero(), || format!("[{u}, {v}] != 0"));
    }
    for n in [2, 3] {
        let c = Presentation::clock_shift(n).unwrap();
        let basis = c.sample_monomials(0);
        for a in &basis {
            for b in &basis {
                let u = AlgebraElement::monomial(&c, a.clone());
                let v = AlgebraElement::monomial(&c, b.clone());
                out.check(u.rho_commutator(&v).unwrap().is_zero(), || format!("n={n}: [{u}, {v}] != 0"));
            }
        }
    }
    out
}

pub fn matrix_oracle(seed: u64) -> Outcome {
    let mut out = Outcome::new("matrix-oracle", seed);
    for n in [2u32, 3] {
        let pres = Presentation::clock_shift(n).unwrap();
        let model = MatrixModel::new(n).unwrap();
        let pq = model.clock().mul(model.shift());
        let qp = model.shift().mul(model.clock());
        out.check(pq == qp.scale(&Scalar::eps(n, 1)), || format!("n={n}: pq != eps qp for the literal matrices"));
        let basis = pres.sample_monomials(0);
        for a in &basis {
            for b in &basis {
                let u = AlgebraElement::monomial(&pres, a.clone());
                let v = AlgebraElement::monomial(&pres, b.clone());
                let lhs = model.model(&(&u * &v)).unwrap();
                let rhs = model.model(&u).unwrap().mul(&model.model(&v).unwrap());
                out.check(lhs == rhs, || format!("n={n}: {u} * {v} disagrees with the matrix product"));
            }
        }
        out.check(model.coordinate_matrix().rank() == (n * n) as usize, || format!("n={n}: basis does not span M_n"));
    }
    out
}

pub fn derivations(seed: u64) -> Outcome {
    let mut out = Outcome::new("derivations", seed);
    let mut rng = sample::rng(seed);
    for (pres, count) in [(Presentation::quantum_plane(2), 20), (Presentation::quantum_plane(3), 10)] {
        for _ in 0..count {
            let x = sample::derivation(&mut rng, &pres, 2);
            let y = sample::derivation(&mut rng, &pres, 2);
            let z = sample::derivation(&mut rng, &pres, 2);
            let u = sample::element(&mut rng, &pres, 3, 3);
            let cocycle = pres.cocycle();
            let rxy = cocycle.eval(x.degree(), y.degree());
            let xy = x.bracket(&y).unwrap();
            let composed = &x.apply(&y.apply(&u).unwrap()).unwrap() - &y.apply(&x.apply(&u).unwrap()).unwrap().scale(&rxy);
            out.check(xy.apply(&u).unwrap() == composed, || format!("bracket is not X Y - rho Y X on {u}"));
            let yx = y.bracket(&x).unwrap();
            out.check(xy == yx.scale(&rxy).scale(&Scalar::integer(-1)), || "antisymmetry".into());
            // [[X,Y],Z] = [X,[Y,Z]] - rho(X,Y) [Y,[X,Z]]
            let lhs = xy.bracket(&z).unwrap();
            let rhs = x
                .bracket(&y.bracket(&z).unwrap())
                .unwrap()
                .checked_add(&y.bracket(&x.bracket(&z).unwrap()).unwrap().scale(&rxy.neg()))
                .unwrap();
            out.check(lhs == rhs, || "Jacobi".into());
            let f = sample::homogeneous_element(&mut rng, &pres, 2);
            let g = sample::homogeneous_element(&mut rng, &pres, 2);
            let lhs = x.left_scale(&(&f * &g)).unwrap().apply(&u).unwrap();
            let rhs = &f * &x.left_scale(&g).unwrap().apply(&u).unwrap();
            out.check(lhs == rhs, || "left module law".into());
            let v = sample::element(&mut rng, &pres, 2, 2);
            let uv = x.apply(&(&u * &v)).unwrap();
            let mut leib = &x.apply(&u).unwrap() * &v;
            for (m, c) in u.terms() {
                let um = AlgebraElement::term(&pres, c.clone(), m.clone());
                let t = cocycle.eval(x.degree(), &pres.grade_of_monomial(m));
                leib = &leib + &(&um * &x.apply(&v).unwrap()).scale(&t);
            }
            out.check(uv == leib, || "twisted Leibniz rule".into());
        }
    }
    out
}

// ---------------------------------------------------------------- forms

fn nontrivial_cyclic() -> Arc<FormSpace> {
    let a = Presentation::cyclic(4).unwrap();
    let phi = GradedUnitHom::new(a.group().clone(), vec![Scalar::eps(4, 1)]).unwrap();
    FormSpace::new(&a, phi).unwrap()
}

fn qplane2() -> Arc<FormSpace> {
    FormSpace::trivial(&Presentation::quantum_plane(2))
}

pub fn forms(seed: u64) -> Outcome {
    let mut out = Outcome::new("forms", seed);
    let mut rng = sample::rng(seed);
    let clock = FormSpace::trivial(&Presentation::clock_shift(2).unwrap());
    for space in [qplane2(), clock] {
        for _ in 0..200 {
            let terms = rng.gen_range(1..=4);
            let w = sample::form(&mut rng, &space, 3, terms, 2);
            out.check(w.differential().differential().is_zero(), || format!("d^2 != 0 on {w}"));
        }
    }
    for space in [qplane2(), nontrivial_cyclic()] {
        for _ in 0..200 {
            let w = sample::homogeneous_form(&mut rng, &space, 2, 2);
            let t = sample::homogeneous_form(&mut rng, &space, 2, 2);
            out.check(w.leibniz_check(&t).unwrap(), || format!("graded Leibniz fails for {w} and {t}"));
            let p = &w * &t;
            if !p.is_zero() {
                let g = &w.bigrade().unwrap() + &t.bigrade().unwrap();
                out.check(p.bigrade().unwrap() == g, || format!("bidegree of {w} /\\ {t}"));
            }
        }
        for _ in 0..60 {
            let u = sample::form(&mut rng, &space, 2, 2, 2);
            let v = sample::form(&mut rng, &space, 2, 2, 2);
            let w = sample::form(&mut rng, &space, 1, 2, 2);
            out.check(&(&u * &v) * &w == &u * &(&v * &w), || format!("associativity on {u}, {v}, {w}"));
        }
    }
    out
}

/// A field from a derivation reproduces it through `K o d`.
pub fn universality(seed: u64) -> Outcome {
    let mut out = Outcome::new("universality", seed);
    let mut rng = sample::rng(seed);
    let spaces = [qplane2(), FormSpace::trivial(&Presentation::quantum_plane(3))];
    for r in 0..20 {
        let space = &spaces[usize::from(r >= 15)];
        let pres = space.presentation();
        let x = sample::derivation(&mut rng, pres, 2);
        let k = FieldValuedForm::from_derivation(space, &x).unwrap();
        out.check(
            FieldValuedForm::new(space, 0, k.grade().clone(), k.values().to_vec()).is_ok(),
            || format!("field of {x:?} is not a bimodule map"),
        );
        out.check(k.to_derivation().as_ref() == Ok(&x), || "round trip".into());
        for _ in 0..50 {
            let u = sample::element(&mut rng, pres, 3, 3);
            let du = Form::exact(space, &u).unwrap();
            let lhs = k.eval(&du).unwrap();
            let rhs = Form::from_element(space, &x.apply(&u).unwrap()).unwrap();
            out.check(lhs == rhs, || format!("K(d u) != X(u) for u = {u}"));
        }
        for _ in 0..5 {
            let a = sample::homogeneous_element(&mut rng, pres, 2);
            let b = sample::element(&mut rng, pres, 2, 2);
            let w = &Form::from_element(space, &a).unwrap() * &Form::exact(space, &b).unwrap();
            let t = pres.cocycle().eval(x.degree(), &a.grade().unwrap());
            let rhs = Form::from_element(space, &(&a * &x.apply(&b).unwrap()).scale(&t)).unwrap();
            out.check(k.eval(&w).unwrap() == rhs, || "f(a db) != rho(|X|,|a|) a X(b)".into());
        }
    }
    out
}

// ---------------------------------------------------------------- calculus

fn random_fvform(rng: &mut SampleRng, space: &Arc<FormSpace>, max_target: usize) -> FieldValuedForm {
    loop {
        let k = rng.gen_range(0..=max_target);
        let g = sample::small_grade(rng, space.presentation(), 2);
        let f = sample::field_valued_form(rng, space, k, &g);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn contraction(seed: u64) -> Outcome {
    let mut out = Outcome::new("contraction", seed);
    let mut rng = sample::rng(seed);
    for (space, count) in [(qplane2(), 70), (nontrivial_cyclic(), 30)] {
        let rb = space.rho_bar().clone();
        for _ in 0..count {
            let k = random_fvform(&mut rng, &space, 2);
            let j = k.contraction();
            let w = sample::homogeneous_form(&mut rng, &space, 2, 1);
            let t = sample::form(&mut rng, &space, 1, 2, 1);
            let lhs = j.apply(&(&w * &t)).unwrap();
            let tw = rb.eval(j.degree(), &w.bigrade().unwrap());
            let rhs = &(&j.apply(&w).unwrap() * &t) + &(&w * &j.apply(&t).unwrap()).scale(&tw);
            out.check(lhs == rhs, || format!("j_K is not a derivation: K = {k}, w = {w}, t = {t}"));

            for (i, v) in k.values().iter().enumerate() {
                out.check(&j.apply(&Form::dgen(&space, i)).unwrap() == v, || format!("j_K(dx_{i}) != K(dx_{i})"));
            }
            let pres = space.presentation();
            let a = sample::homogeneous_element(&mut rng, pres, 2);
            let fa = Form::from_element(&space, &a).unwrap();
            let one = sample::form(&mut rng, &space, 1, 2, 2).component(1);
            let ta = rb.eval(j.degree(), &BiGrade::new(0, a.grade().unwrap()));
            out.check(
                k.eval(&(&fa * &one)).unwrap() == (&fa * &k.eval(&one).unwrap()).scale(&ta),
                || "K(a w) != rho_bar a K(w)".into(),
            );
            out.check(k.eval(&(&one * &fa)).unwrap() == &k.eval(&one).unwrap() * &fa, || "K(w a) != K(w) a".into());
            let k2 = random_fvform(&mut rng, &space, 2);
            if k2 != k {
                let differs = (0..pres.num_generators()).any(|i| {
                    let dx = Form::dgen(&space, i);
                    k2.contract(&dx).unwrap() != k.contract(&dx).unwrap()
                });
                out.check(differs, || "distinct forms with equal contractions".into());
            }
        }
    }
    let space = qplane2();
    let rb = space.rho_bar().clone();
    for _ in 0..20 {
        let d1 = sample::omega_derivation(&mut rng, &space);
        let d2 = sample::omega_derivation(&mut rng, &space);
        let d3 = sample::omega_derivation(&mut rng, &space);
        let t12 = rb.eval(d1.degree(), d2.degree());
        let lhs = d1.bracket(&d2.bracket(&d3).unwrap()).unwrap();
        let rhs = d1
            .bracket(&d2)
            .unwrap()
            .bracket(&d3)
            .unwrap()
            .checked_add(&d2.bracket(&d1.bracket(&d3).unwrap()).unwrap().scale(&t12))
            .unwrap();
        out.check(lhs == rhs, || format!("Jacobi fails for {d1}; {d2}; {d3}"));
    }
    out
}

pub fn decomposition(seed: u64) -> Outcome {
    let mut out = Outcome::new("decomposition", seed);
    let mut rng = sample::rng(seed);
    let space = qplane2();
    let d = OmegaDerivation::exterior(&space);
    for _ in 0..50 {
        let kt = rng.gen_range(0..=1);
        let g = sample::small_grade(&mut rng, space.presentation(), 2);
        let k = sample::field_valued_form(&mut rng, &space, kt, &g);
        let l = sample::field_valued_form(&mut rng, &space, kt + 1, &g);
        let dd = k.lie_derivation().checked_add(&l.contraction()).unwrap();
        let (k2, l2) = decompose(&dd).unwrap();
        out.check(k2 == k && l2 == l, || format!("decompose(L_K + j_L) != (K, L) for K = {k}, L = {l}"));
        out.check(dd.bracket(&d).unwrap().is_zero() == l.is_zero(), || "[D, d] = 0 iff L = 0".into());
        let (k3, l3) = decompose(&k.lie_derivation()).unwrap();
        out.check(k3 == k && l3.is_zero(), || "decompose(L_K) != (K, 0)".into());
        let (k4, l4) = decompose(&l.contraction()).unwrap();
        out.check(k4.is_zero() && l4 == l, || "decompose(j_L) != (0, L)".into());
    }
    let (k, l) = decompose(&d).unwrap();
    out.check(k == FieldValuedForm::identity(&space) && l.is_zero(), || "decompose(d) != (id, 0)".into());
    out
}

pub fn fn_bracket(seed: u64) -> Outcome {
    let mut out = Outcome::new("fn-bracket", seed);
    let mut rng = sample::rng(seed);
    let spaces = [qplane2(), FormSpace::trivial(&Presentation::quantum_plane(3))];
    for r in 0..50 {
        let space = &spaces[usize::from(r >= 40)];
        let pres = space.presentation();
        let x = sample::derivation(&mut rng, pres, 2);
        let y = sample::derivation(&mut rng, pres, 2);
        let kx = FieldValuedForm::from_derivation(space, &x).unwrap();
        let ky = FieldValuedForm::from_derivation(space, &y).unwrap();
        let br = kx.fn_bracket(&ky).unwrap().to_derivation();
        out.check(br == x.bracket(&y), || "FN bracket of fields != derivation bracket".into());
    }
    let space = qplane2();
    let rb = space.rho_bar().clone();
    for _ in 0..20 {
        let k = random_fvform(&mut rng, &space, 1);
        let l = random_fvform(&mut rng, &space, 1);
        let m = k.fn_bracket(&l).unwrap();
        out.check(
            FieldValuedForm::new(&space, m.target_degree(), m.grade().clone(), m.values().to_vec()).is_ok(),
            || format!("[{k}, {l}] is not a bimodule map"),
        );
        let lk = k.lie_derivation();
        let ll = l.lie_derivation();
        let commutator = lk.bracket(&ll).unwrap();
        let lm = m.lie_derivation();
        out.check(lm == commutator, || format!("L_[K,L] != [L_K, L_L] on generators for K = {k}, L = {l}"));
        for _ in 0..20 {
            let w = sample::form(&mut rng, &space, 2, 2, 2);
            out.check(lm.apply(&w).unwrap() == commutator.apply(&w).unwrap(), || format!("L_[K,L] != [L_K, L_L] on {w}"));
        }
        let t = rb.eval(lk.degree(), ll.degree());
        let lk_ = l.fn_bracket(&k).unwrap();
        out.check(m == lk_.scale(&t).scale(&Scalar::integer(-1)), || "FN antisymmetry".into());
    }
    out
}

// ---------------------------------------------------------------- functoriality

fn kill_x2(space: &Arc<FormSpace>) -> AlgebraHom {
    let a = space.presentation();
    AlgebraHom::new(space, space, a.group().zero(), vec![AlgebraElement::generator(a, 0), AlgebraElement::zero(a)])
        .expect("x2 -> 0 respects the relations")
}

pub fn functoriality(seed: u64) -> Outcome {
    let mut out = Outcome::new("functoriality", seed);
    let mut rng = sample::rng(seed);
    let space = qplane2();
    let a = space.presentation().clone();
    let scaling = AlgebraHom::new(
        &space,
        &space,
        a.group().zero(),
        vec![AlgebraElement::generator(&a, 0).scale(&Scalar::q()), AlgebraElement::generator(&a, 1).scale(&Scalar::integer(-2))],
    )
    .unwrap();
    for f in [AlgebraHom::identity(&space), kill_x2(&space), scaling] {
        for _ in 0..30 {
            let w = sample::form(&mut rng, &space, 2, 2, 2);
            let t = sample::form(&mut rng, &space, 1, 2, 2);
            let fw = f.apply_form(&w).unwrap();
            out.check(f.apply_form(&(&w * &t)).unwrap() == &fw * &f.apply_form(&t).unwrap(), || format!("Omega(f) not multiplicative on {w}, {t}"));
            out.check(f.apply_form(&w.differential()).unwrap() == fw.differential(), || format!("Omega(f) d != d Omega(f) on {w}"));
        }
    }
    // a homomorphism of nonzero degree: g -> g^3 on Z_5, degree 2
    let c = Presentation::cyclic(5).unwrap();
    let cs = FormSpace::trivial(&c);
    let alpha = c.group().grade(&[2]).unwrap();
    let g3 = AlgebraElement::generator(&c, 0).pow(3);
    let f = AlgebraHom::new(&cs, &cs, alpha.clone(), vec![g3]).unwrap();
    let gen = c.generator_monomial(0);
    for n in 0..=3usize {
        let w = Form::basis(&cs, vec![gen.clone(); n + 1]);
        let beta = w.bigrade().unwrap().grade;
        let image = f.apply_form(&w).unwrap();
        let expected = BiGrade::new(n as i64, &beta + &alpha.scale(n as i64 + 1));
        out.check(image.is_zero() || image.bigrade().unwrap() == expected, || format!("Omega(f) bidegree on {w}"));
    }
    out
}

/// Pairs `(K, K')` related by `f: x1 -> x1, x2 -> 0` on the quantum plane,
/// built from blocks whose images under `f` are known.
pub fn related_pair(rng: &mut SampleRng, space: &Arc<FormSpace>, f: &AlgebraHom) -> (FieldValuedForm, FieldValuedForm) {
    let pres = space.presentation().clone();
    let group = pres.group().clone();
    let kt = rng.gen_range(0..=1);
    let g = sample::small_grade(rng, &pres, 2);
    let mut k = FieldValuedForm::zero(space, kt, g.clone());
    let mut k2 = FieldValuedForm::zero(space, kt, g.clone());
    if kt == 0 {
        // g1 d/dx1 -> f(g1) d/dx1
        if let Some(m) = pres.monomial_of_grade(&(&g + &group.generator(0))) {
            let g1 = AlgebraElement::term(&pres, sample::scalar(rng, 1), m);
            let x = Derivation::new(&pres, g.clone(), vec![g1.clone(), AlgebraElement::zero(&pres)]).unwrap();
            let x2 = Derivation::new(&pres, g.clone(), vec![f.apply(&g1).unwrap(), AlgebraElement::zero(&pres)]).unwrap();
            k = k.checked_add(&FieldValuedForm::from_derivation(space, &x).unwrap()).unwrap();
            k2 = k2.checked_add(&FieldValuedForm::from_derivation(space, &x2).unwrap()).unwrap();
        }
        // g2 d/dx2 with x2 | g2 -> 0
        if let Some(m) = pres.monomial_of_grade(&(&g + &group.generator(1))) {
            if m.exponents()[1] > 0 {
                let g2 = AlgebraElement::term(&pres, sample::scalar(rng, 1), m);
                let x = Derivation::new(&pres, g.clone(), vec![AlgebraElement::zero(&pres), g2]).unwrap();
                k = k.checked_add(&FieldValuedForm::from_derivation(space, &x).unwrap()).unwrap();
            }
        }
    } else {
        // h id -> f(h) id
        if let Some(m) = pres.monomial_of_grade(&g) {
            let h = AlgebraElement::term(&pres, sample::scalar(rng, 1), m);
            let id = FieldValuedForm::identity(space);
            k = k.checked_add(&id.left_scale(&h).unwrap()).unwrap();
            let fh = f.apply(&h).unwrap();
            if !fh.is_zero() {
                k2 = k2.checked_add(&id.left_scale(&fh).unwrap()).unwrap();
            }
        }
        // [w, -] -> [Omega(f) w, -]
        let w = sample::form_of_bigrade(rng, space, 1, &g, 2);
        if !w.is_zero() {
            k = k.checked_add(&FieldValuedForm::inner(&w).unwrap()).unwrap();
            let fw = f.apply_form(&w).unwrap();
            if !fw.is_zero() {
                k2 = k2.checked_add(&FieldValuedForm::inner(&fw).unwrap()).unwrap();
            }
        }
    }
    (k, k2)
}

pub fn naturality(seed: u64) -> Outcome {
    let mut out = Outcome::new("naturality", seed);
    let mut rng = sample::rng(seed);
    let space = qplane2();
    let samples: Vec<Form> = sample::basis_forms(&space, 2, 1).into_iter().filter(|w| !w.is_zero()).collect();
    let f = kill_x2(&space);
    let id = AlgebraHom::identity(&space);
    let idk = FieldValuedForm::identity(&space);
    let mut pairs = vec![];
    for _ in 0..20 {
        pairs.push(related_pair(&mut rng, &space, &f));
    }
    for (r, (k, k2)) in pairs.iter().enumerate() {
        out.check(f.is_related(k, k2).unwrap(), || format!("constructed pair {r} is not related"));
        let (l, l2) = if r % 2 == 0 { (&idk, &idk) } else { (&pairs[r - 1].0, &pairs[r - 1].1) };
        let report = naturality_report(&f, (k, k2), (l, l2), &samples).unwrap();
        for item in [1, 2, 3, 4, 5, 6] {
            out.check(report.item(item).passed, || format!("item ({item}) fails for pair {r}: {k} / {k2}"));
        }
        let report = naturality_report(&id, (k, k), (l, l), &samples).unwrap();
        out.check(report.all_passed(), || format!("identity homomorphism: {report}"));
    }
    // K = d/dx2 and K' = 0 are not related; item (1) must fail with a witness
    let d2 = FieldValuedForm::from_derivation(&space, &Derivation::partial(space.presentation(), 1).unwrap()).unwrap();
    let zero = FieldValuedForm::zero(&space, 0, d2.grade().clone());
    let report = naturality_report(&f, (&d2, &zero), (&idk, &idk), &samples).unwrap();
    out.check(!report.related[0], || "d/dx2 and 0 reported related".into());
    out.check(!report.item(1).passed && report.item(1).witness.is_some(), || "negative case did not fail item (1)".into());
    out
}

// ---------------------------------------------------------------- cohomology

fn slice_checks(out: &mut Outcome, space: &Arc<FormSpace>, g: &Grade, top: usize) -> Vec<usize> {
    let slice = ComplexSlice::build(space, g, top).unwrap();
    out.check(slice.squares_vanish(), || format!("d^2 matrix nonzero at {g}"));
    let ranks = slice.ranks();
    for (i, dim) in slice.dims().into_iter().enumerate() {
        let kernel = dim - ranks[i];
        out.check(kernel + ranks[i] == dim && ranks[i] <= slice.basis(i + 1).len(), || format!("rank-nullity at {g}, degree {i}"));
    }
    slice.betti()
}

pub fn cohomology(seed: u64) -> Outcome {
    let mut out = Outcome::new("cohomology", seed);
    for n in [2u32, 3] {
        let space = FormSpace::trivial(&Presentation::clock_shift(n).unwrap());
        for g in space.presentation().group().elements().unwrap() {
            let b = slice_checks(&mut out, &space, &g, 2);
            let expected = if g.is_zero() { vec![1, 0, 0] } else { vec![0, 0, 0] };
            out.check(b == expected, || format!("clock-shift n={n}, grade {g}: betti {b:?}"));
        }
    }
    let space = FormSpace::trivial(&Presentation::clock_shift(4).unwrap());
    for g in space.presentation().group().elements().unwrap() {
        let b = slice_checks(&mut out, &space, &g, 0);
        out.check(b[0] == usize::from(g.is_zero()), || format!("clock-shift n=4, grade {g}: b0 = {}", b[0]));
    }
    let space = qplane2();
    let group = space.presentation().group().clone();
    for a in 0..=4 {
        for b in 0..=4 - a {
            let g = group.grade(&[a, b]).unwrap();
            let betti = slice_checks(&mut out, &space, &g, 2);
            let expected = if g.is_zero() { vec![1, 0, 0] } else { vec![0, 0, 0] };
            out.check(betti == expected, || format!("quantum plane, grade {g}: betti {betti:?}"));
        }
    }
    out
}
