//! The graded ring `Q[x, y, z]`.
//!
//! Monomials of a fixed degree are ordered graded-lexicographically with
//! `x > y > z`, so `basis(k)[0] == x^k` and `basis(k).last() == z^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{Rat, SparseMatrix, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadCoordinates { expected: usize, got: usize },
}

/// Number of monomials of degree `k` in three variables, `C(k+2, 2)`.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// `C(n, 2)`, zero for `n < 2`.
pub fn choose2(n: i64) -> usize {
    if n < 2 {
        0
    } else {
        (n * (n - 1) / 2) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; 3],
}

impl Monomial {
    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { exps: [ex, ey, ez] }
    }

    pub fn one() -> Self {
        Monomial::new(0, 0, 0)
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; 3];
        exps[v.index()] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> [u32; 3] {
        self.exps
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: [self.exps[0] + other.exps[0], self.exps[1] + other.exps[1], self.exps[2] + other.exps[2]] }
    }

    /// Position in `basis(self.degree())`.
    pub fn index(&self) -> usize {
        let [_, ey, ez] = self.exps;
        let n = (ey + ez) as usize;
        n * (n + 1) / 2 + ez as usize
    }
}

/// Degree first, then position in the degree's basis.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.index()).cmp(&(other.degree(), other.index()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Ordered monomial basis of `S_k`.
pub fn basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_s(k as i64));
    for ex in (0..=k).rev() {
        for ey in (0..=k - ex).rev() {
            out.push(Monomial::new(ex, ey, k - ex - ey));
        }
    }
    out
}

/// An element of `S_k`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly { degree, terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: Rat, m: Monomial) -> Self {
        let mut p = Self::zero(m.degree());
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rat::one(), Monomial::var(v))
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Monomial::one())
    }

    /// Sums the given terms; every monomial must have degree `degree`.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Self, PolyError> {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(PolyError::DegreeMismatch(degree, m.degree()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in basis order (`x^k` first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousPoly { degree: self.degree, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HomogeneousPoly { degree: self.degree + m.degree(), terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative; the derivative of a constant is the zero
    /// polynomial of degree 0.
    pub fn partial(&self, v: Var) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(degree);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps();
            exps[v.index()] -= 1;
            out.add_term(Monomial { exps }, c * Rat::from_integer(e.into()));
        }
        out
    }

    pub fn partials(&self) -> [HomogeneousPoly; 3] {
        Var::ALL.map(|v| self.partial(v))
    }

    /// Dense coordinates in `basis(self.degree())`.
    pub fn coord_vector(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim_s(self.degree as i64)];
        for (m, c) in &self.terms {
            out[m.index()] = c.clone();
        }
        out
    }

    /// Sparse coordinates, shifted by `offset`.
    pub fn sparse_coords(&self, offset: usize) -> SparseVec {
        let mut v: SparseVec = self.terms.iter().map(|(m, c)| (offset + m.index(), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn from_coords(degree: u32, coords: &[Rat]) -> Result<Self, PolyError> {
        let b = basis(degree);
        if coords.len() != b.len() {
            return Err(PolyError::BadCoordinates { expected: b.len(), got: coords.len() });
        }
        Self::from_terms(degree, b.into_iter().zip(coords.iter().cloned()))
    }

    pub fn from_sparse_coords(degree: u32, coords: &[(usize, Rat)]) -> Self {
        let b = basis(degree);
        Self::from_terms(degree, coords.iter().map(|(i, c)| (b[*i], c.clone()))).expect("basis monomials")
    }

    /// Multiplies every coefficient by a common factor so that all become
    /// coprime integers with a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let Some((_, lead)) = self.terms.iter().next() else {
            return self.clone();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rat::new(den, num);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn eval(&self, point: [&Rat; 3]) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    t *= point[v.index()];
                }
            }
            acc + t
        })
    }
}

/// Matrix of `q -> p * q` from `S_k` to `S_{k + deg p}`.
pub fn multiplication_matrix(p: &HomogeneousPoly, k: u32) -> SparseMatrix {
    let mut m = SparseMatrix::new(dim_s((k + p.degree()) as i64));
    for mono in basis(k) {
        m.push_column(p.mul_monomial(&mono).sparse_coords(0));
    }
    m
}

impl fmt::Display for HomogeneousPoly {
    /// Canonical text: terms in basis order, explicit `*`, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let is_const = m.degree() == 0;
            if abs.is_one() {
                if is_const {
                    f.write_str("1")?;
                }
            } else {
                write!(f, "{abs}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            if !is_const {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ArithmeticMode};
    use proptest::prelude::*;

    fn x() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::X)
    }
    fn y() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::Y)
    }
    fn z() -> HomogeneousPoly {
        HomogeneousPoly::var(Var::Z)
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(basis(0), vec![Monomial::one()]);
        let b2: Vec<String> = basis(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(b2, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        assert_eq!(basis(5).len(), 21);
        for k in 0..30 {
            let b = basis(k);
            assert_eq!(b.len(), dim_s(k as i64));
            assert!(b.iter().enumerate().all(|(i, m)| m.index() == i && m.degree() == k));
        }
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).unwrap().mul(&x().sub(&y()).unwrap());
        assert_eq!(p.to_string(), "x^2-y^2");
    }

    #[test]
    fn multiply_by_zero_keeps_degree() {
        let p = x().mul(&HomogeneousPoly::zero(3));
        assert!(p.is_zero());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn fermat_times_xyz() {
        let c = x().pow(3).add(&y().pow(3)).unwrap().add(&z().pow(3)).unwrap();
        let p = c.mul(&x().mul(&y()).mul(&z()));
        assert_eq!(p.degree(), 6);
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        assert_eq!(x().add(&x().pow(2)), Err(PolyError::DegreeMismatch(1, 2)));
    }

    #[test]
    fn partials_of_simple_cubics() {
        let fermat = x().pow(3).add(&y().pow(3)).unwrap().add(&z().pow(3)).unwrap();
        let [fx, fy, fz] = fermat.partials();
        assert_eq!((fx.to_string(), fy.to_string(), fz.to_string()), ("3*x^2".into(), "3*y^2".into(), "3*z^2".into()));
        let xyz = x().mul(&y()).mul(&z());
        let [fx, fy, fz] = xyz.partials();
        assert_eq!((fx.to_string(), fy.to_string(), fz.to_string()), ("y*z".into(), "x*z".into(), "x*y".into()));
    }

    #[test]
    fn euler_relation_hessian() {
        let c1 = x().pow(3).add(&y().pow(3)).unwrap().add(&z().pow(3)).unwrap();
        let c2 = x().mul(&y()).mul(&z());
        let f = c2.mul(&c1.pow(3).sub(&c2.pow(3).scale(&rat(27))).unwrap());
        assert_eq!(f.degree(), 12);
        let [fx, fy, fz] = f.partials();
        let euler = x().mul(&fx).add(&y().mul(&fy)).unwrap().add(&z().mul(&fz)).unwrap();
        assert_eq!(euler, f.scale(&rat(12)));
    }

    #[test]
    fn coord_vectors() {
        assert_eq!(x().pow(2).coord_vector(), vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)]);
        assert_eq!(HomogeneousPoly::zero(3).coord_vector(), vec![rat(0); 10]);
        assert!(HomogeneousPoly::from_coords(2, &[rat(1)]).is_err());
    }

    #[test]
    fn display_rationals_and_constants() {
        let p =
            HomogeneousPoly::from_terms(3, [(Monomial::new(3, 0, 0), crate::exactla::rat_frac(3, 2)), (Monomial::new(1, 1, 1), rat(-1))])
                .unwrap();
        assert_eq!(p.to_string(), "3/2*x^3-x*y*z");
        assert_eq!(HomogeneousPoly::constant(rat(-4)).to_string(), "-4");
        assert_eq!(HomogeneousPoly::constant(rat(1)).to_string(), "1");
        assert_eq!(p.primitive().to_string(), "3*x^3-2*x*y*z");
    }

    fn poly(max_deg: u32) -> impl Strategy<Value = HomogeneousPoly> {
        (0..=max_deg).prop_flat_map(|k| {
            proptest::collection::vec((-5i64..=5).prop_map(rat), dim_s(k as i64))
                .prop_map(move |c| HomogeneousPoly::from_coords(k, &c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn coord_round_trip(p in poly(6)) {
            prop_assert_eq!(HomogeneousPoly::from_coords(p.degree(), &p.coord_vector()).unwrap(), p);
        }

        #[test]
        fn multiplication_matrix_matches_product(p in poly(4), q in poly(4)) {
            let m = multiplication_matrix(&p, q.degree()).to_dense();
            prop_assert_eq!(m.mul_vec(&q.coord_vector()).unwrap(), p.mul(&q).coord_vector());
        }

        #[test]
        fn multiply_is_commutative_associative(p in poly(3), q in poly(3), r in poly(3)) {
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q).degree(), p.degree() + q.degree());
        }

        #[test]
        fn euler_relation(p in poly(7)) {
            prop_assume!(p.degree() >= 1);
            let [fx, fy, fz] = p.partials();
            let e = x().mul(&fx).add(&y().mul(&fy)).unwrap().add(&z().mul(&fz)).unwrap();
            prop_assert_eq!(e, p.scale(&rat(p.degree() as i64)));
        }
    }

    #[test]
    fn multiplication_by_nonzero_is_injective() {
        let p = x().add(&y()).unwrap();
        let m = multiplication_matrix(&p, 5);
        assert_eq!(m.rank(ArithmeticMode::Exact), dim_s(5));
    }
}
