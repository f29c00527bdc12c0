//! Jacobian syzygies `AR(f)`: graded pieces, minimal generator degrees and
//! the free / nearly free classification.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{SparseMatrix, SparseVec};
use crate::jacobian::CurveInput;
use crate::polyring::{basis, dim_s, HomogeneousPoly, Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error("new generators still appear at the search bound j = {jmax}; raise --jmax")]
    InconclusiveBound { jmax: u32 },
    #[error("two generators of degrees {d1}, {d2} but d1 + d2 != d - 1 = {}", .degree - 1)]
    InconsistentExponents { d1: u32, d2: u32, degree: u32 },
}

/// A relation `a f_x + b f_y + c f_z = 0` with `a, b, c` of degree `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyzygyTriple {
    pub j: u32,
    pub a: HomogeneousPoly,
    pub b: HomogeneousPoly,
    pub c: HomogeneousPoly,
}

impl SyzygyTriple {
    pub fn new(a: HomogeneousPoly, b: HomogeneousPoly, c: HomogeneousPoly) -> Self {
        let j = a.degree();
        assert!(b.degree() == j && c.degree() == j, "syzygy entries must share a degree");
        SyzygyTriple { j, a, b, c }
    }

    /// Decodes `S_j^3` coordinates (`a` block, `b` block, `c` block).
    pub fn from_coords(j: u32, v: &SparseVec) -> Self {
        let n = dim_s(j as i64);
        let mut parts: [Vec<(usize, crate::exactla::Rat)>; 3] = Default::default();
        for (i, x) in v {
            parts[i / n].push((i % n, x.clone()));
        }
        let [a, b, c] = parts.map(|p| HomogeneousPoly::from_sparse_coords(j, &p));
        SyzygyTriple { j, a, b, c }
    }

    pub fn coords(&self) -> SparseVec {
        let n = dim_s(self.j as i64);
        let mut v = self.a.sparse_coords(0);
        v.extend(self.b.sparse_coords(n));
        v.extend(self.c.sparse_coords(2 * n));
        v
    }

    pub fn entries(&self) -> [&HomogeneousPoly; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn scale_by(&self, g: &HomogeneousPoly) -> Self {
        SyzygyTriple::new(self.a.mul(g), self.b.mul(g), self.c.mul(g))
    }

    /// Form degree of the associated 2-form.
    /// Common rescaling to coprime integer coefficients, first nonzero
    /// coefficient (in `a`, `b`, `c` order) positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        let coeffs: Vec<&crate::exactla::Rat> = self.entries().into_iter().flat_map(|p| p.terms().map(|(_, c)| c)).collect();
        let Some(lead) = coeffs.first() else {
            return self.clone();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in &coeffs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = crate::exactla::Rat::new(den, num);
        if lead.is_negative() {
            factor = -factor;
        }
        SyzygyTriple { j: self.j, a: self.a.scale(&factor), b: self.b.scale(&factor), c: self.c.scale(&factor) }
    }

    pub fn form_degree(&self) -> u32 {
        self.j + 2
    }

    /// `a f_x + b f_y + c f_z`.
    pub fn pairing(&self, partials: &[HomogeneousPoly; 3]) -> HomogeneousPoly {
        let [fx, fy, fz] = partials;
        self.a.mul(fx).add(&self.b.mul(fy)).and_then(|s| s.add(&self.c.mul(fz))).expect("equal degrees")
    }

    pub fn is_syzygy_of(&self, curve: &CurveInput) -> bool {
        self.pairing(curve.partials()).is_zero()
    }
}

impl fmt::Display for SyzygyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `S_j^3 -> S_{j+d-1}`, `(a, b, c) -> a f_x + b f_y + c f_z`.
pub fn syzygy_matrix(curve: &CurveInput, j: u32) -> SparseMatrix {
    let d = curve.degree();
    let mut mat = SparseMatrix::new(dim_s((j + d - 1) as i64));
    let mons = basis(j);
    for p in curve.partials() {
        for mono in &mons {
            mat.push_column(p.mul_monomial(mono).sparse_coords(0));
        }
    }
    mat
}

/// Reduced basis of `AR(f)_j`.
pub fn syzygy_space(curve: &CurveInput, j: u32) -> Vec<SyzygyTriple> {
    syzygy_matrix(curve, j).kernel_basis().iter().map(|v| SyzygyTriple::from_coords(j, v)).collect()
}

pub fn dim_ar(curve: &CurveInput, j: i64) -> usize {
    if j < 0 {
        return 0;
    }
    syzygy_matrix(curve, j as u32).nullity(curve.mode())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub j: u32,
    pub dim_ar: usize,
    pub new_gens: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorProfile {
    pub jmax: u32,
    pub degrees: Vec<DegreeCount>,
    /// Minimal generator degrees with multiplicity, ascending.
    pub generator_degrees: Vec<u32>,
    pub boundary_warning: bool,
}

impl GeneratorProfile {
    pub fn dim_ar(&self, j: u32) -> Option<usize> {
        self.degrees.get(j as usize).map(|c| c.dim_ar)
    }

    /// Smallest degree of a nonzero syzygy, if one was found.
    pub fn min_degree(&self) -> Option<u32> {
        self.generator_degrees.first().copied()
    }
}

/// Index of `m * var` in `basis(deg m + 1)`.
fn shift_index(m: &Monomial, var: Var) -> usize {
    m.mul(&Monomial::var(var)).index()
}

/// Columns `x v, y v, z v` for every `v` in a basis of `AR_{j-1}`, in `S_j^3`
/// coordinates.
fn linear_multiples(prev: &[SparseVec], j: u32) -> SparseMatrix {
    let n_prev = dim_s(j as i64 - 1);
    let n = dim_s(j as i64);
    let mons = basis(j.saturating_sub(1));
    let mut mat = SparseMatrix::new(3 * n);
    for v in prev {
        for var in Var::ALL {
            mat.push_column(v.iter().map(|(i, x)| ((i / n_prev) * n + shift_index(&mons[i % n_prev], var), x.clone())).collect());
        }
    }
    mat
}

/// Per-degree dimensions of `AR(f)` and counts of minimal generators, by
/// graded Nakayama: new generators in degree `j` span a complement of
/// `S_1 AR(f)_{j-1}` in `AR(f)_j`.
pub fn generator_profile(curve: &CurveInput, jmax: u32) -> GeneratorProfile {
    let bases: Vec<Vec<SparseVec>> = (0..=jmax).into_par_iter().map(|j| syzygy_matrix(curve, j).kernel_basis()).collect();
    let counts: Vec<DegreeCount> = (0..=jmax)
        .into_par_iter()
        .map(|j| {
            let dim = bases[j as usize].len();
            let inherited = if j == 0 { 0 } else { linear_multiples(&bases[j as usize - 1], j).rank(curve.mode()) };
            DegreeCount { j, dim_ar: dim, new_gens: dim - inherited }
        })
        .collect();
    let generator_degrees = counts.iter().flat_map(|c| std::iter::repeat_n(c.j, c.new_gens)).collect();
    let boundary_warning = counts.last().is_some_and(|c| c.new_gens > 0);
    GeneratorProfile { jmax, degrees: counts, generator_degrees, boundary_warning }
}

pub fn default_jmax(d: u32) -> u32 {
    (2 * d).saturating_sub(2).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Free { d1: u32, d2: u32 },
    NearlyFree { d1: u32, d2: u32 },
    Other { degrees: Vec<u32> },
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::Free { .. } => "free",
            Classification::NearlyFree { .. } => "nearly-free",
            Classification::Other { .. } => "other",
        }
    }

    pub fn exponents(&self) -> Option<(u32, u32)> {
        match self {
            Classification::Free { d1, d2 } | Classification::NearlyFree { d1, d2 } => Some((*d1, *d2)),
            Classification::Other { .. } => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Free { d1, d2 } => write!(f, "Free({d1},{d2})"),
            Classification::NearlyFree { d1, d2 } => write!(f, "NearlyFree({d1},{d2})"),
            Classification::Other { degrees } => {
                let list: Vec<String> = degrees.iter().map(u32::to_string).collect();
                write!(f, "Other({})", list.join(","))
            }
        }
    }
}

/// Classification from a generator profile.
///
/// Nearly free additionally requires `d1 + d2 = d`; without it the three
/// Koszul generators of a smooth curve would match the degree pattern.
pub fn classify_profile(profile: &GeneratorProfile, degree: u32) -> Result<Classification, SyzygyError> {
    if profile.boundary_warning {
        return Err(SyzygyError::InconclusiveBound { jmax: profile.jmax });
    }
    let g = &profile.generator_degrees;
    match g.as_slice() {
        [d1, d2] => {
            if d1 + d2 + 1 != degree {
                return Err(SyzygyError::InconsistentExponents { d1: *d1, d2: *d2, degree });
            }
            Ok(Classification::Free { d1: *d1, d2: *d2 })
        }
        [d1, d2, d3] if d2 == d3 && d1 + d2 == degree => Ok(Classification::NearlyFree { d1: *d1, d2: *d2 }),
        _ => Ok(Classification::Other { degrees: g.clone() }),
    }
}

pub fn classify(curve: &CurveInput) -> Result<Classification, SyzygyError> {
    classify_with_bound(curve, default_jmax(curve.degree()))
}

pub fn classify_with_bound(curve: &CurveInput, jmax: u32) -> Result<Classification, SyzygyError> {
    classify_profile(&generator_profile(curve, jmax), curve.degree())
}

/// `dim AR(f)_k` predicted for a free curve with exponents `(d1, d2)`.
pub fn free_ar_dim(d1: u32, d2: u32, k: u32) -> usize {
    let (d1, d2, k) = (d1 as i64, d2 as i64, k as i64);
    if k < d1 {
        0
    } else if k < d2 {
        crate::polyring::choose2(k - d1 + 2)
    } else {
        crate::polyring::choose2(k - d1 + 2) + crate::polyring::choose2(k - d2 + 2)
    }
}
