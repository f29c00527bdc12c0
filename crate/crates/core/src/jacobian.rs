//! Jacobian ideal, graded Milnor algebra and input validation.

use rayon::prelude::*;
use thiserror::Error;

use crate::exactla::{ArithmeticMode, SparseMatrix};
use crate::polyring::{basis, choose2, dim_s, HomogeneousPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("Milnor algebra dimensions {values:?} on degrees {window:?} never stabilize: singularities are not isolated (is f reduced?)")]
    NonIsolatedSingularities { window: (u32, u32), values: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Accept curves of degree 1 and 2.
    pub allow_low_degree: bool,
    pub mode: ArithmeticMode,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { allow_low_degree: false, mode: ArithmeticMode::Exact }
    }
}

/// A validated reduced plane curve `f = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInput {
    f: HomogeneousPoly,
    partials: [HomogeneousPoly; 3],
    components: Option<u32>,
    tjurina: usize,
    mode: ArithmeticMode,
}

/// One graded piece `M(f)_m = S_m / (J_f)_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MilnorSlot {
    pub m: u32,
    pub dim_s: usize,
    pub jacobian_rank: usize,
    pub dim_m: usize,
}

/// Degrees probed for the Tjurina plateau.
pub fn plateau_window(d: u32) -> (u32, u32) {
    let d = d as i64;
    ((3 * d - 6).max(0) as u32, (3 * d + 2) as u32)
}

/// The map `S_{m-d+1}^3 -> S_m`, `(u, v, w) -> u f_x + v f_y + w f_z`.
/// Columns are ordered `u` block, `v` block, `w` block, each in basis order.
pub fn jacobian_matrix(partials: &[HomogeneousPoly; 3], m: u32) -> SparseMatrix {
    let mut mat = SparseMatrix::new(dim_s(m as i64));
    let src = m as i64 - partials[0].degree() as i64;
    if src < 0 {
        return mat;
    }
    let mons = basis(src as u32);
    for p in partials {
        for mono in &mons {
            mat.push_column(p.mul_monomial(mono).sparse_coords(0));
        }
    }
    mat
}

fn milnor_slot_raw(partials: &[HomogeneousPoly; 3], m: u32, mode: ArithmeticMode) -> MilnorSlot {
    let dim = dim_s(m as i64);
    let rank = jacobian_matrix(partials, m).rank(mode);
    MilnorSlot { m, dim_s: dim, jacobian_rank: rank, dim_m: dim - rank }
}

/// Checks the standing hypotheses and records the Tjurina number.
pub fn validate(f: HomogeneousPoly, components: Option<u32>) -> Result<CurveInput, CurveError> {
    validate_with(f, components, ValidateOptions::default())
}

pub fn validate_with(f: HomogeneousPoly, components: Option<u32>, opts: ValidateOptions) -> Result<CurveInput, CurveError> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    let d = f.degree();
    if d < 3 && !(opts.allow_low_degree && d >= 1) {
        return Err(CurveError::DegreeTooSmall(d));
    }
    let partials = f.partials();
    let window = plateau_window(d);
    let values: Vec<usize> = (window.0..=window.1).into_par_iter().map(|m| milnor_slot_raw(&partials, m, opts.mode).dim_m).collect();
    let tjurina = values
        .windows(3)
        .find(|w| w[0] == w[1] && w[1] == w[2])
        .map(|w| w[0])
        .ok_or_else(|| CurveError::NonIsolatedSingularities { window, values: values.clone() })?;
    Ok(CurveInput { f, partials, components, tjurina, mode: opts.mode })
}

impl CurveInput {
    pub fn f(&self) -> &HomogeneousPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn partials(&self) -> &[HomogeneousPoly; 3] {
        &self.partials
    }

    pub fn components(&self) -> Option<u32> {
        self.components
    }

    pub fn with_components(mut self, r: Option<u32>) -> Self {
        self.components = r;
        self
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// Switches the rank backend; the stored Tjurina number is kept.
    pub fn with_mode(mut self, mode: ArithmeticMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn milnor_slot(&self, m: u32) -> MilnorSlot {
        milnor_slot_raw(&self.partials, m, self.mode)
    }

    pub fn milnor_dim(&self, m: u32) -> usize {
        self.milnor_slot(m).dim_m
    }

    /// Total Tjurina number: the plateau value of `dim M(f)_m`.
    pub fn tjurina(&self) -> usize {
        self.tjurina
    }

    /// `dim (df ∧ Ω¹)_q = 3 C(q-d+1, 2) - C(q-2d+2, 2)`.
    pub fn kr_dim(&self, q: u32) -> usize {
        kr_dim_formula(self.degree(), q)
    }
}

pub fn kr_dim_formula(d: u32, q: u32) -> usize {
    let (d, q) = (d as i64, q as i64);
    3 * choose2(q - d + 1) - choose2(q - 2 * d + 2)
}

/// Koszul relations `g (f_y, -f_x, 0)`, `g (f_z, 0, -f_x)`, `g (0, f_z, -f_y)`
/// with `g` running over `S_{q-d-1}`, as columns in `S_{q-2}^3` coordinates.
pub fn kr_matrix(curve: &CurveInput, q: u32) -> SparseMatrix {
    let j = q as i64 - 2;
    let n = dim_s(j);
    let mut mat = SparseMatrix::new(3 * n);
    let src = q as i64 - curve.degree() as i64 - 1;
    if src < 0 || j < 0 {
        return mat;
    }
    let [fx, fy, fz] = curve.partials();
    let gens: [[Option<(&HomogeneousPoly, bool)>; 3]; 3] = [
        [Some((fy, false)), Some((fx, true)), None],
        [Some((fz, false)), None, Some((fx, true))],
        [None, Some((fz, false)), Some((fy, true))],
    ];
    for gen in &gens {
        for mono in basis(src as u32) {
            let mut col = Vec::new();
            for (slot, entry) in gen.iter().enumerate() {
                if let Some((p, negate)) = entry {
                    let mut term = p.mul_monomial(&mono);
                    if *negate {
                        term = term.neg();
                    }
                    col.extend(term.sparse_coords(slot * n));
                }
            }
            mat.push_column(col);
        }
    }
    mat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::polyring::{Monomial, Var};

    fn v(var: Var) -> HomogeneousPoly {
        HomogeneousPoly::var(var)
    }

    fn fermat(d: u32) -> HomogeneousPoly {
        v(Var::X).pow(d).add(&v(Var::Y).pow(d)).unwrap().add(&v(Var::Z).pow(d)).unwrap()
    }

    /// Hilbert function of `Q[x,y,z]/(x^n, y^n, z^n)`: coefficients of
    /// `(1 + t + ... + t^{n-1})^3`, by direct convolution.
    fn complete_intersection_hilbert(n: usize, m: usize) -> usize {
        let one = vec![1usize; n];
        let mut acc = vec![1usize];
        for _ in 0..3 {
            let mut next = vec![0; acc.len() + n - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in one.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc.get(m).copied().unwrap_or(0)
    }

    #[test]
    fn fermat_quartic_milnor_algebra_matches_oracle() {
        let c = validate(fermat(4), None).unwrap();
        for m in 0..10 {
            assert_eq!(c.milnor_dim(m), complete_intersection_hilbert(3, m as usize), "m = {m}");
        }
        assert_eq!(c.milnor_dim(0), 1);
        assert_eq!(c.milnor_dim(6), 1);
        assert_eq!(c.milnor_dim(7), 0);
        assert_eq!(c.tjurina(), 0);
    }

    #[test]
    fn low_degrees_are_free() {
        let c = validate(fermat(5), None).unwrap();
        for m in 0..4 {
            assert_eq!(c.milnor_dim(m), dim_s(m as i64));
        }
    }

    #[test]
    fn kr_formula_values() {
        assert_eq!(kr_dim_formula(6, 6), 0);
        assert_eq!(kr_dim_formula(6, 7), 3);
        assert_eq!(kr_dim_formula(6, 13), 81);
        for q in 0..=6 {
            assert_eq!(kr_dim_formula(6, q), 0);
        }
    }

    #[test]
    fn kr_formula_matches_matrix_rank_fermat() {
        let c = validate(fermat(4), None).unwrap();
        for q in 0..=11 {
            assert_eq!(kr_matrix(&c, q).rank(ArithmeticMode::Exact), c.kr_dim(q), "q = {q}");
        }
    }

    #[test]
    fn non_reduced_is_rejected() {
        let f = v(Var::X).pow(2).mul(&v(Var::Y));
        assert!(matches!(validate(f, None), Err(CurveError::NonIsolatedSingularities { .. })));
    }

    #[test]
    fn degree_and_zero_checks() {
        assert_eq!(validate(v(Var::X).pow(2), None), Err(CurveError::DegreeTooSmall(2)));
        assert_eq!(validate(HomogeneousPoly::zero(4), None), Err(CurveError::ZeroPolynomial));
        let conic = v(Var::X).mul(&v(Var::Y)).sub(&v(Var::Z).pow(2)).unwrap();
        let opts = ValidateOptions { allow_low_degree: true, ..Default::default() };
        assert_eq!(validate_with(conic, None, opts).unwrap().tjurina(), 0);
    }

    #[test]
    fn smooth_cubic_accepted() {
        let c = validate(fermat(3), Some(1)).unwrap();
        assert_eq!(c.tjurina(), 0);
        assert_eq!(c.components(), Some(1));
    }

    #[test]
    fn nodal_cubic_has_tau_one() {
        // y^2 z - x^3 - x^2 z has a single node
        let f = HomogeneousPoly::from_terms(
            3,
            [(Monomial::new(0, 2, 1), rat(1)), (Monomial::new(3, 0, 0), rat(-1)), (Monomial::new(2, 0, 1), rat(-1))],
        )
        .unwrap();
        assert_eq!(validate(f, None).unwrap().tjurina(), 1);
    }

    #[test]
    fn modes_agree_on_milnor_dims() {
        let c = validate(fermat(5), None).unwrap();
        for mode in [ArithmeticMode::Verify, ArithmeticMode::Trust] {
            let other = c.clone().with_mode(mode);
            for m in 0..14 {
                assert_eq!(other.milnor_dim(m), c.milnor_dim(m));
            }
        }
    }
}
