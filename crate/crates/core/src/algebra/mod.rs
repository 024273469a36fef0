//! Rho-commutative algebras presented as twisted monoid algebras.
//!
//! A presentation has one cyclic generator `x_i` per coordinate of the grade
//! group `Z^r x prod Z_{n_i}`. Basis monomials are exponent vectors with
//! nonnegative free part and reduced torsion part, so each grade carries at
//! most one basis monomial. Products are given by the factor set
//!
//! ```text
//! x_a x_b = prod_{i,j} t_ij^(a_i b_j) * prod_{torsion i} w_i^(carry_i(a,b)) * x_{a+b}
//! ```
//!
//! where `w_i` is the value of `x_i^{n_i}`. The quantum hyperplane and the
//! clock-shift presentation of the full matrix algebra are both of this shape.

mod element;
pub mod oracle;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use element::AlgebraElement;
pub(crate) use element::{format_term, join_terms, same_presentation};

use crate::error::{Error, Result};
use crate::grading::{Cocycle, Grade, GradeGroup};
use crate::scalar::Scalar;

/// Exponent vector of a basis monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree first, then lexicographically descending exponents, so
/// `x1^2 < x1*x2 < x2^2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// Which of the built-in families a presentation belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    QuantumPlane { n: usize },
    ClockShift { n: u32 },
    Cyclic { n: u32 },
    Custom,
}

/// `lhs = coeff * rhs` as words in the generators.
#[derive(Clone, Debug)]
pub struct Relation {
    pub lhs: Vec<usize>,
    pub coeff: Scalar,
    pub rhs: Vec<usize>,
}

#[derive(Debug)]
pub struct Presentation {
    name: String,
    family: Family,
    group: Arc<GradeGroup>,
    generator_names: Vec<String>,
    twist: Vec<Vec<Scalar>>,
    wrap: Vec<Scalar>,
    cocycle: Cocycle,
    root_order: u32,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.group == other.group
            && self.generator_names == other.generator_names
            && self.twist == other.twist
            && self.wrap == other.wrap
    }
}

impl Eq for Presentation {}

impl Presentation {
    /// The quantum hyperplane `S_N^q`: `x_i x_j = q x_j x_i` for `i < j`,
    /// basis `x_1^{n_1} ... x_N^{n_N}` in ascending order.
    pub fn quantum_plane(n: usize) -> Arc<Self> {
        let twist = (0..n)
            .map(|j| (0..n).map(|k| if j > k { Scalar::q_pow(-1) } else { Scalar::one() }).collect())
            .collect();
        let cocycle = Cocycle::quantum_plane(n);
        Arc::new(Self {
            name: format!("qplane:N={n}"),
            family: Family::QuantumPlane { n },
            group: cocycle.group().clone(),
            generator_names: (1..=n).map(|i| format!("x{i}")).collect(),
            twist,
            wrap: vec![],
            cocycle,
            root_order: 1,
        })
    }

    /// The matrix algebra `M_n` on clock `p` and shift `qh` with `p qh = eps qh p`,
    /// basis `p^a qh^b`. Since `qh^n = eps^{n(n-1)/2}`, the factor set carries a
    /// wrap-around sign for even `n`.
    pub fn clock_shift(n: u32) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidPresentation("clock-shift needs n >= 2".into()));
        }
        let e = |k| Scalar::eps(n, k);
        let cocycle = Cocycle::clock_shift(n);
        Ok(Arc::new(Self {
            name: format!("clockshift:n={n}"),
            family: Family::ClockShift { n },
            group: cocycle.group().clone(),
            generator_names: vec!["p".into(), "qh".into()],
            twist: vec![vec![e(0), e(0)], vec![e(-1), e(0)]],
            wrap: vec![e(0), e((n as i64) * (n as i64 - 1) / 2)],
            cocycle,
            root_order: n,
        }))
    }

    /// The group algebra of `Z_n` on one generator `g` with `g^n = 1`.
    pub fn cyclic(n: u32) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidPresentation("cyclic needs n >= 2".into()));
        }
        let group = GradeGroup::new(0, vec![n as i64])?;
        Ok(Arc::new(Self {
            name: format!("cyclic:n={n}"),
            family: Family::Cyclic { n },
            cocycle: Cocycle::trivial(group.clone()),
            group,
            generator_names: vec!["g".into()],
            twist: vec![vec![Scalar::one()]],
            wrap: vec![Scalar::one()],
            root_order: n,
        }))
    }

    /// A user-defined twisted monoid algebra. The commutation cocycle is derived
    /// from the twist, and the factor set is validated for the unit law,
    /// associativity and rho-commutativity on a sample of monomials.
    pub fn custom(
        name: &str,
        group: Arc<GradeGroup>,
        generator_names: Vec<String>,
        twist: Vec<Vec<Scalar>>,
        wrap: Vec<Scalar>,
    ) -> Result<Arc<Self>> {
        let r = group.rank();
        if generator_names.len() != r
            || twist.len() != r
            || twist.iter().any(|row| row.len() != r)
            || wrap.len() != group.torsion_orders().len()
        {
            return Err(Error::InvalidPresentation("shape of presentation data".into()));
        }
        if twist.iter().flatten().chain(&wrap).any(|s| !s.is_unit()) {
            return Err(Error::InvalidPresentation("structure constants must be units".into()));
        }
        let pairing = (0..r)
            .map(|i| (0..r).map(|j| &twist[i][j] / &twist[j][i]).collect())
            .collect();
        let cocycle = Cocycle::new(group.clone(), pairing)
            .map_err(|e| Error::InvalidPresentation(e.to_string()))?;
        let root_order = twist
            .iter()
            .flatten()
            .chain(&wrap)
            .map(Scalar::root_order)
            .max()
            .unwrap_or(1);
        let pres = Self {
            name: name.to_string(),
            family: Family::Custom,
            group,
            generator_names,
            twist,
            wrap,
            cocycle,
            root_order,
        };
        pres.validate()?;
        Ok(Arc::new(pres))
    }

    /// Parses `qplane:N=<int>`, `clockshift:n=<int>`, `cyclic:n=<int>`.
    pub fn parse(spec: &str) -> Result<Arc<Self>> {
        let bad = || Error::InvalidPresentation(format!("unknown algebra spec '{spec}'"));
        let (family, arg) = spec.trim().split_once(':').ok_or_else(bad)?;
        let (key, value) = arg.split_once('=').ok_or_else(bad)?;
        let value: u32 = value.trim().parse().map_err(|_| bad())?;
        match (family, key) {
            ("qplane", "N") if value >= 1 => Ok(Self::quantum_plane(value as usize)),
            ("clockshift", "n") => Self::clock_shift(value),
            ("cyclic", "n") => Self::cyclic(value),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn group(&self) -> &Arc<GradeGroup> {
        &self.group
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// Order of the root of unity adjoined to the coefficient field (1 if none).
    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|g| g == name)
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.num_generators()];
        e[i] = 1;
        Monomial(e)
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial(vec![0; self.num_generators()])
    }

    pub fn is_valid_monomial(&self, m: &Monomial) -> bool {
        let r = self.group.free_rank();
        m.0.len() == self.num_generators()
            && m.0[..r].iter().all(|&e| e >= 0)
            && m.0[r..].iter().zip(self.group.torsion_orders()).all(|(&e, &n)| (0..n).contains(&e))
    }

    pub fn grade_of_monomial(&self, m: &Monomial) -> Grade {
        self.group.grade(&m.0).expect("monomial length matches group rank")
    }

    /// The basis monomial of a grade, if the grade has a nonnegative free part.
    pub fn monomial_of_grade(&self, g: &Grade) -> Option<Monomial> {
        let m = Monomial(g.coords().to_vec());
        self.is_valid_monomial(&m).then_some(m)
    }

    /// `x_a x_b = c(a, b) x_{a+b}`.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> (Scalar, Monomial) {
        let r = self.group.free_rank();
        let mut coeff = Scalar::one();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                let t = &self.twist[i][j];
                if bj != 0 && !t.is_one() {
                    coeff = &coeff * &t.pow(ai * bj).expect("twist entries are units");
                }
            }
        }
        let mut sum: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        for (t, &n) in self.group.torsion_orders().iter().enumerate() {
            let s = &mut sum[r + t];
            if *s >= n {
                *s -= n;
                let w = &self.wrap[t];
                if !w.is_one() {
                    coeff = &coeff * w;
                }
            }
        }
        (coeff, Monomial(sum))
    }

    /// Checked variant of [`Presentation::mul_monomials`].
    pub fn monomial_mul(&self, a: &Monomial, b: &Monomial) -> Result<(Scalar, Monomial)> {
        if !self.is_valid_monomial(a) || !self.is_valid_monomial(b) {
            return Err(Error::PresentationMismatch);
        }
        Ok(self.mul_monomials(a, b))
    }

    /// Ascending generator word whose product is a multiple of `m`.
    pub fn word_of(&self, m: &Monomial) -> Vec<usize> {
        m.0.iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Product of a word of generators as `(coefficient, monomial)`.
    pub fn word_product(&self, word: &[usize]) -> (Scalar, Monomial) {
        word.iter().fold((Scalar::one(), self.unit_monomial()), |(c, m), &i| {
            let (c2, m2) = self.mul_monomials(&m, &self.generator_monomial(i));
            (&c * &c2, m2)
        })
    }

    /// Defining relations: commutation of each generator pair and the order
    /// relation of each torsion generator.
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.num_generators();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let (cl, _) = self.word_product(&[j, i]);
                let (cr, _) = self.word_product(&[i, j]);
                out.push(Relation { lhs: vec![j, i], coeff: &cl / &cr, rhs: vec![i, j] });
            }
        }
        let r = self.group.free_rank();
        for (t, &order) in self.group.torsion_orders().iter().enumerate() {
            let word = vec![r + t; order as usize];
            let (c, _) = self.word_product(&word);
            out.push(Relation { lhs: word, coeff: c, rhs: vec![] });
        }
        out
    }

    /// A finite sample of basis monomials: all of them for finite groups,
    /// otherwise those with free exponents at most `bound`.
    pub fn sample_monomials(&self, bound: i64) -> Vec<Monomial> {
        let r = self.group.free_rank();
        let ranges: Vec<i64> = (0..self.num_generators())
            .map(|i| if i < r { bound + 1 } else { self.group.torsion_orders()[i - r] })
            .collect();
        let mut out = vec![vec![]];
        for &n in &ranges {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..n).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        let mut out: Vec<Monomial> = out.into_iter().map(Monomial).collect();
        out.sort();
        out
    }

    /// Checks the unit law, associativity and rho-commutativity of the factor
    /// set on sample monomials.
    pub fn validate(&self) -> Result<()> {
        let sample = self.sample_monomials(2);
        let sample: Vec<_> = sample.into_iter().take(27).collect();
        let unit = self.unit_monomial();
        for a in &sample {
            let (c1, m1) = self.mul_monomials(&unit, a);
            let (c2, m2) = self.mul_monomials(a, &unit);
            if !c1.is_one() || !c2.is_one() || &m1 != a || &m2 != a {
                return Err(Error::InvalidPresentation("unit law fails".into()));
            }
            for b in &sample {
                let (cab, mab) = self.mul_monomials(a, b);
                let (cba, _) = self.mul_monomials(b, a);
                let rho = self.cocycle.eval(&self.grade_of_monomial(a), &self.grade_of_monomial(b));
                if cab != &rho * &cba {
                    return Err(Error::InvalidPresentation(format!(
                        "not rho-commutative on {a:?}, {b:?}"
                    )));
                }
                for e in &sample {
                    let (c_ab_e, m1) = self.mul_monomials(&mab, e);
                    let (cbe, mbe) = self.mul_monomials(b, e);
                    let (c_a_be, m2) = self.mul_monomials(a, &mbe);
                    if m1 != m2 || &cab * &c_ab_e != &cbe * &c_a_be {
                        return Err(Error::InvalidPresentation(format!(
                            "factor set not associative on {a:?}, {b:?}, {e:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.generator_names)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_plane_structure_constants() {
        let a = Presentation::quantum_plane(2);
        let x1 = a.generator_monomial(0);
        let x2 = a.generator_monomial(1);
        assert_eq!(a.mul_monomials(&x2, &x1), (Scalar::q_pow(-1), Monomial::new(vec![1, 1])));
        assert_eq!(a.mul_monomials(&x1, &x2), (Scalar::one(), Monomial::new(vec![1, 1])));
        let unit = a.unit_monomial();
        assert_eq!(a.mul_monomials(&unit, &x2), (Scalar::one(), x2));
    }

    #[test]
    fn clock_shift_structure_constants() {
        let a = Presentation::clock_shift(3).unwrap();
        let p = a.generator_monomial(0);
        let qh = a.generator_monomial(1);
        assert_eq!(a.mul_monomials(&qh, &p), (Scalar::eps(3, -1), Monomial::new(vec![1, 1])));
        // qh^2 * qh wraps around to the unit with eps^{3} = 1
        let (c, m) = a.mul_monomials(&Monomial::new(vec![0, 2]), &qh);
        assert!(c.is_one() && m.is_unit());
        let a2 = Presentation::clock_shift(2).unwrap();
        let (c, m) = a2.mul_monomials(&a2.generator_monomial(1), &a2.generator_monomial(1));
        assert_eq!(c, Scalar::integer(-1));
        assert!(m.is_unit());
    }

    #[test]
    fn builtins_validate() {
        Presentation::quantum_plane(3).validate().unwrap();
        for n in 2..=4 {
            Presentation::clock_shift(n).unwrap().validate().unwrap();
        }
        Presentation::cyclic(4).unwrap().validate().unwrap();
    }

    #[test]
    fn custom_presentations_are_checked() {
        let g = GradeGroup::free(2);
        let names = vec!["a".to_string(), "b".to_string()];
        let twist = vec![
            vec![Scalar::one(), Scalar::integer(2)],
            vec![Scalar::one(), Scalar::one()],
        ];
        let pres = Presentation::custom("two", g, names, twist, vec![]).unwrap();
        assert_eq!(
            pres.cocycle().eval(&pres.group().generator(0), &pres.group().generator(1)),
            Scalar::integer(2)
        );
        // a twist on a torsion generator that is not an n-th root of unity breaks associativity
        let z3 = GradeGroup::parse("Z3").unwrap();
        let bad = Presentation::custom(
            "bad",
            z3,
            vec!["g".into()],
            vec![vec![Scalar::integer(2)]],
            vec![Scalar::one()],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn relations_of_the_quantum_plane() {
        let a = Presentation::quantum_plane(2);
        let rels = a.relations();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].lhs, vec![1, 0]);
        assert_eq!(rels[0].coeff, Scalar::q_pow(-1));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(Presentation::parse("qplane:N=2").unwrap().num_generators(), 2);
        assert_eq!(Presentation::parse("clockshift:n=3").unwrap().root_order(), 3);
        assert!(Presentation::parse("clockshift:n=1").is_err());
        assert!(Presentation::parse("weyl:n=2").is_err());
    }

    #[test]
    fn monomial_order_is_graded() {
        let mut v = vec![
            Monomial::new(vec![0, 2]),
            Monomial::new(vec![1, 1]),
            Monomial::new(vec![0, 0]),
            Monomial::new(vec![2, 0]),
        ];
        v.sort();
        let a = Presentation::quantum_plane(2);
        let names: Vec<_> = v.iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(names, ["1", "x1^2", "x1*x2", "x2^2"]);
    }
}
