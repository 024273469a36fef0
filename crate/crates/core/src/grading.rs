//! Grade groups `Z^r x Z_{n_1} x ... x Z_{n_t}`, commutation cocycles, grading
//! characters and the extended cocycle on `Z x G`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GradeGroup {
    free_rank: usize,
    torsion_orders: Vec<i64>,
}

impl GradeGroup {
    pub fn new(free_rank: usize, torsion_orders: Vec<i64>) -> Result<Arc<Self>> {
        if let Some(n) = torsion_orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidArgument(format!("torsion order {n} < 2")));
        }
        Ok(Arc::new(Self { free_rank, torsion_orders }))
    }

    pub fn free(rank: usize) -> Arc<Self> {
        Arc::new(Self { free_rank: rank, torsion_orders: vec![] })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    /// Total number of cyclic generators.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    /// Order of generator `i`, `None` for free generators.
    pub fn order_of(&self, i: usize) -> Option<i64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion_orders[t])
    }

    fn reduce(&self, coords: &mut [i64]) {
        for (c, &n) in coords[self.free_rank..].iter_mut().zip(&self.torsion_orders) {
            *c = c.rem_euclid(n);
        }
    }

    pub fn grade(self: &Arc<Self>, coords: &[i64]) -> Result<Grade> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        let mut coords = coords.to_vec();
        self.reduce(&mut coords);
        Ok(Grade { group: self.clone(), coords })
    }

    pub fn zero(self: &Arc<Self>) -> Grade {
        Grade { group: self.clone(), coords: vec![0; self.rank()] }
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> Grade {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Grade { group: self.clone(), coords }
    }

    /// Every element of a finite group, in lexicographic order.
    pub fn elements(self: &Arc<Self>) -> Option<Vec<Grade>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut out = vec![vec![]];
        for &n in &self.torsion_orders {
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
        Some(out.into_iter().map(|coords| Grade { group: self.clone(), coords }).collect())
    }

    /// Parses `Z^2`, `Z3+Z3`, `Z^2+Z4`, `Z`, `0`.
    pub fn parse(text: &str) -> Result<Arc<Self>> {
        let mut free = 0usize;
        let mut torsion = vec![];
        let bad = || Error::InvalidArgument(format!("cannot parse grade group '{text}'"));
        for part in text.split('+').map(str::trim) {
            if part == "0" || part.is_empty() {
                continue;
            }
            let rest = part.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                free += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                free += r.parse::<usize>().map_err(|_| bad())?;
            } else {
                torsion.push(rest.parse::<i64>().map_err(|_| bad())?);
            }
        }
        Self::new(free, torsion)
    }
}

impl fmt::Display for GradeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion_orders.iter().map(|n| format!("Z{n}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// An element of a grade group; torsion coordinates are kept reduced.
#[derive(Clone, Debug)]
pub struct Grade {
    group: Arc<GradeGroup>,
    coords: Vec<i64>,
}

impl PartialEq for Grade {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for Grade {}

impl std::hash::Hash for Grade {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords).then_with(|| self.group.cmp(&other.group))
    }
}

impl Grade {
    pub fn group(&self) -> &Arc<GradeGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group == other.group
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        let mut coords: Vec<i64> =
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.reduce(&mut coords);
        Ok(Self { group: self.group.clone(), coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut coords: Vec<i64> = self.coords.iter().map(|c| c * k).collect();
        self.group.reduce(&mut coords);
        Self { group: self.group.clone(), coords }
    }

    /// Parses `(1,0)`, `1,0`, `-1` within `group`.
    pub fn parse(group: &Arc<GradeGroup>, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = if inner.trim().is_empty() {
            vec![]
        } else {
            inner
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse grade '{text}'")))?
        };
        group.grade(&coords)
    }
}

impl std::ops::Add for &Grade {
    type Output = Grade;
    /// Panics on grades from different groups.
    fn add(self, rhs: &Grade) -> Grade {
        self.checked_add(rhs).expect("grade group mismatch")
    }
}

impl std::ops::Sub for &Grade {
    type Output = Grade;
    fn sub(self, rhs: &Grade) -> Grade {
        self.checked_sub(rhs).expect("grade group mismatch")
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A bicharacter `rho: G x G -> k*` given by its values on pairs of generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle {
    group: Arc<GradeGroup>,
    pairing: Vec<Vec<Scalar>>,
}

impl Cocycle {
    /// Validates `s[i][j] s[j][i] = 1` and `s[i][j]^{n_i} = 1` on torsion rows.
    pub fn new(group: Arc<GradeGroup>, pairing: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = group.rank();
        if pairing.len() != r || pairing.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidArgument("pairing matrix has wrong shape".into()));
        }
        for i in 0..r {
            for j in 0..r {
                let s = &pairing[i][j];
                if !s.is_unit() {
                    return Err(Error::InvalidArgument(format!("rho(e{i},e{j}) = 0")));
                }
                if !(s * &pairing[j][i]).is_one() {
                    return Err(Error::InvalidArgument(format!(
                        "rho(e{i},e{j}) rho(e{j},e{i}) != 1"
                    )));
                }
                if let Some(n) = group.order_of(i) {
                    if !s.pow(n)?.is_one() {
                        return Err(Error::InvalidArgument(format!(
                            "rho(e{i},e{j})^{n} != 1 for a generator of order {n}"
                        )));
                    }
                }
            }
        }
        Ok(Self { group, pairing })
    }

    pub fn trivial(group: Arc<GradeGroup>) -> Self {
        let r = group.rank();
        Self { group, pairing: vec![vec![Scalar::one(); r]; r] }
    }

    /// `rho(n, n') = q^{sum_{j,k} n_j n'_k a_{jk}}` with `a_{jk} = sign(k - j)`.
    pub fn quantum_plane(n: usize) -> Self {
        let group = GradeGroup::free(n);
        let pairing = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| Scalar::q_pow(match j.cmp(&k) {
                        Ordering::Less => 1,
                        Ordering::Equal => 0,
                        Ordering::Greater => -1,
                    }))
                    .collect()
            })
            .collect();
        Self { group, pairing }
    }

    /// `rho(a, b) = eps^{a_1 b_2 - a_2 b_1}` on `Z_n + Z_n`, the sign forced by
    /// `p q = eps q p` for the clock and shift matrices.
    pub fn clock_shift(n: u32) -> Self {
        let group = GradeGroup::new(0, vec![n as i64, n as i64]).expect("n >= 2");
        let e = |k| Scalar::eps(n, k);
        let pairing = vec![vec![e(0), e(1)], vec![e(-1), e(0)]];
        Self { group, pairing }
    }

    pub fn group(&self) -> &Arc<GradeGroup> {
        &self.group
    }

    pub fn pairing(&self) -> &[Vec<Scalar>] {
        &self.pairing
    }

    pub fn checked_eval(&self, a: &Grade, b: &Grade) -> Result<Scalar> {
        if **a.group() != *self.group || **b.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let mut acc = Scalar::one();
        for (i, &ai) in a.coords().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords().iter().enumerate() {
                let e = ai * bj;
                if e == 0 {
                    continue;
                }
                let s = &self.pairing[i][j];
                if !s.is_one() {
                    acc = &acc * &s.pow(e)?;
                }
            }
        }
        Ok(acc)
    }

    /// Panics on a group mismatch.
    pub fn eval(&self, a: &Grade, b: &Grade) -> Scalar {
        self.checked_eval(a, b).expect("grade group mismatch")
    }
}

/// A homomorphism `phi: G -> k*` given by its values on generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedUnitHom {
    group: Arc<GradeGroup>,
    values: Vec<Scalar>,
}

impl GradedUnitHom {
    pub fn new(group: Arc<GradeGroup>, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != group.rank() {
            return Err(Error::InvalidArgument("wrong number of character values".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_unit() {
                return Err(Error::InvalidArgument(format!("phi(e{i}) is not a unit")));
            }
            if let Some(n) = group.order_of(i) {
                if !v.pow(n)?.is_one() {
                    return Err(Error::InvalidArgument(format!("phi(e{i})^{n} != 1")));
                }
            }
        }
        Ok(Self { group, values })
    }

    pub fn trivial(group: Arc<GradeGroup>) -> Self {
        let r = group.rank();
        Self { group, values: vec![Scalar::one(); r] }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn group(&self) -> &Arc<GradeGroup> {
        &self.group
    }

    pub fn eval(&self, a: &Grade) -> Scalar {
        assert!(**a.group() == *self.group, "grade group mismatch");
        let mut acc = Scalar::one();
        for (v, &k) in self.values.iter().zip(a.coords()) {
            if k != 0 && !v.is_one() {
                acc = &acc * &v.pow(k).expect("units are invertible");
            }
        }
        acc
    }
}

/// A degree in `Z x G`: form degree and inner grade.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BiGrade {
    pub degree: i64,
    pub grade: Grade,
}

impl BiGrade {
    pub fn new(degree: i64, grade: Grade) -> Self {
        Self { degree, grade }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self { degree: self.degree + other.degree, grade: self.grade.checked_add(&other.grade)? })
    }
}

impl std::ops::Add for &BiGrade {
    type Output = BiGrade;
    fn add(self, rhs: &BiGrade) -> BiGrade {
        self.checked_add(rhs).expect("grade group mismatch")
    }
}

impl fmt::Display for BiGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.degree, self.grade)
    }
}

/// `rho_bar((n,a),(m,b)) = (-1)^{nm} phi(a)^{-m} phi(b)^n rho(a,b)` on `Z x G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedCocycle {
    base: Cocycle,
    phi: GradedUnitHom,
}

impl ExtendedCocycle {
    pub fn new(base: Cocycle, phi: GradedUnitHom) -> Result<Self> {
        if base.group() != phi.group() {
            return Err(Error::GroupMismatch);
        }
        Ok(Self { base, phi })
    }

    pub fn base(&self) -> &Cocycle {
        &self.base
    }

    pub fn phi(&self) -> &GradedUnitHom {
        &self.phi
    }

    pub fn checked_eval(&self, a: &BiGrade, b: &BiGrade) -> Result<Scalar> {
        let mut v = self.base.checked_eval(&a.grade, &b.grade)?;
        if !self.phi.is_trivial() {
            v = &v * &self.phi.eval(&a.grade).pow(-b.degree)?;
            v = &v * &self.phi.eval(&b.grade).pow(a.degree)?;
        }
        if (a.degree * b.degree).rem_euclid(2) == 1 {
            v = v.neg();
        }
        Ok(v)
    }

    pub fn eval(&self, a: &BiGrade, b: &BiGrade) -> Scalar {
        self.checked_eval(a, b).expect("grade group mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grade_addition() {
        let z2 = GradeGroup::free(2);
        let a = z2.grade(&[1, 0]).unwrap();
        let b = z2.grade(&[0, 1]).unwrap();
        assert_eq!(&a + &b, z2.grade(&[1, 1]).unwrap());
        assert_eq!(&a + &z2.zero(), a);

        let z33 = GradeGroup::parse("Z3+Z3").unwrap();
        let a = z33.grade(&[2, 1]).unwrap();
        let b = z33.grade(&[2, 2]).unwrap();
        assert_eq!(&a + &b, z33.grade(&[1, 0]).unwrap());
    }

    #[test]
    fn group_mismatch() {
        let a = GradeGroup::free(2).zero();
        let b = GradeGroup::free(3).zero();
        assert_eq!(a.checked_add(&b), Err(Error::GroupMismatch));
        assert_eq!(Cocycle::quantum_plane(2).checked_eval(&b, &b), Err(Error::GroupMismatch));
    }

    #[test]
    fn group_parsing_and_display() {
        for text in ["Z^2", "Z3+Z3", "Z^2+Z4", "Z", "0"] {
            assert_eq!(GradeGroup::parse(text).unwrap().to_string(), text);
        }
        assert!(GradeGroup::parse("Z1").is_err());
        assert!(GradeGroup::parse("Q").is_err());
    }

    #[test]
    fn quantum_plane_cocycle() {
        let rho = Cocycle::quantum_plane(2);
        let g = rho.group().clone();
        let e1 = g.generator(0);
        let e2 = g.generator(1);
        assert_eq!(rho.eval(&e1, &e2), Scalar::q());
        assert_eq!(rho.eval(&e2, &e1), Scalar::q_pow(-1));
        let n = g.grade(&[3, -2]).unwrap();
        assert!(rho.eval(&n, &n).is_one());
        assert!(rho.eval(&g.zero(), &n).is_one());
    }

    #[test]
    fn clock_shift_cocycle() {
        for n in 2..=5u32 {
            let rho = Cocycle::clock_shift(n);
            let g = rho.group().clone();
            assert_eq!(rho.eval(&g.generator(0), &g.generator(1)), Scalar::eps(n, 1));
        }
    }

    #[test]
    fn cocycle_validation() {
        let g = GradeGroup::parse("Z4").unwrap();
        assert!(Cocycle::new(g.clone(), vec![vec![Scalar::integer(-1)]]).is_ok());
        assert!(Cocycle::new(g.clone(), vec![vec![Scalar::q()]]).is_err());
        let z = GradeGroup::parse("Z3").unwrap();
        // -1 squared is 1 but (-1)^3 != 1
        assert!(Cocycle::new(z, vec![vec![Scalar::integer(-1)]]).is_err());
        assert!(GradedUnitHom::new(g.clone(), vec![Scalar::eps(4, 1)]).is_ok());
        assert!(GradedUnitHom::new(g, vec![Scalar::eps(8, 1)]).is_err());
    }

    #[test]
    fn extended_cocycle_values() {
        let rho = Cocycle::quantum_plane(2);
        let g = rho.group().clone();
        let ext = ExtendedCocycle::new(rho.clone(), GradedUnitHom::trivial(g.clone())).unwrap();
        let d = BiGrade::new(1, g.zero());
        for n in 0..4 {
            let a = BiGrade::new(n, g.grade(&[2, 1]).unwrap());
            let expected = if n % 2 == 0 { Scalar::one() } else { Scalar::integer(-1) };
            assert_eq!(ext.eval(&d, &a), expected);
        }
        let (a, b) = (g.grade(&[1, 0]).unwrap(), g.grade(&[0, 1]).unwrap());
        assert_eq!(
            ext.eval(&BiGrade::new(0, a.clone()), &BiGrade::new(0, b.clone())),
            rho.eval(&a, &b)
        );
        assert_eq!(ext.eval(&d, &d), Scalar::integer(-1));
    }
}
