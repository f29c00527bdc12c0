//! Divergence maps on Jacobian syzygies and the resulting `E_2` dimensions.
//!
//! A syzygy `(a, b, c)` of degree `j` is the 2-form
//! `ω = a dy∧dz - b dx∧dz + c dx∧dy` of degree `q = j + 2`; then
//! `dω = (a_x + b_y + c_z) dx∧dy∧dz`. The map `δ_q` sends `ω` to the class of
//! its divergence in `M(f)_{q-3}`, `κ_q = dim ker δ_q`, and
//! `ε_q = κ_q - dim (df∧Ω¹)_q`.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactla::{QMatrix, SparseMatrix, SparseVec};
use crate::jacobian::{jacobian_matrix, CurveInput};
use crate::polyring::{basis, dim_s, HomogeneousPoly, Var};
use crate::syzygy::{dim_ar, Classification, SyzygyTriple};

/// `a dy∧dz - b dx∧dz + c dx∧dy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoForm {
    pub a: HomogeneousPoly,
    pub b: HomogeneousPoly,
    pub c: HomogeneousPoly,
}

/// `p dx + q dy + r dz`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub p: HomogeneousPoly,
    pub q: HomogeneousPoly,
    pub r: HomogeneousPoly,
}

impl From<SyzygyTriple> for TwoForm {
    fn from(s: SyzygyTriple) -> Self {
        TwoForm { a: s.a, b: s.b, c: s.c }
    }
}

impl From<&SyzygyTriple> for TwoForm {
    fn from(s: &SyzygyTriple) -> Self {
        s.clone().into()
    }
}

impl TwoForm {
    pub fn triple(&self) -> SyzygyTriple {
        SyzygyTriple::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn coefficient_degree(&self) -> u32 {
        self.a.degree()
    }

    pub fn degree(&self) -> u32 {
        self.a.degree() + 2
    }

    /// Coefficient of `dx∧dy∧dz` in `dω`.
    pub fn divergence(&self) -> HomogeneousPoly {
        self.a.partial(Var::X).add(&self.b.partial(Var::Y)).and_then(|s| s.add(&self.c.partial(Var::Z))).expect("equal degrees")
    }

    pub fn is_closed(&self) -> bool {
        self.divergence().is_zero()
    }

    /// Coefficient of `dx∧dy∧dz` in `df∧ω`.
    pub fn wedge_df(&self, curve: &CurveInput) -> HomogeneousPoly {
        self.triple().pairing(curve.partials())
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dy^dz - ({})*dx^dz + ({})*dx^dy", self.a, self.b, self.c)
    }
}

impl OneForm {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// Contraction with the Euler field: `x p + y q + z r`.
    pub fn euler_contraction(&self) -> HomogeneousPoly {
        let v = HomogeneousPoly::var;
        v(Var::X).mul(&self.p).add(&v(Var::Y).mul(&self.q)).and_then(|s| s.add(&v(Var::Z).mul(&self.r))).expect("equal degrees")
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx + ({})*dy + ({})*dz", self.p, self.q, self.r)
    }
}

/// Contraction of a 2-form with the Euler vector field:
/// `(bz - cy) dx + (cx - az) dy + (ay - bx) dz`.
pub fn euler_contraction(w: &TwoForm) -> OneForm {
    let x = HomogeneousPoly::var(Var::X);
    let y = HomogeneousPoly::var(Var::Y);
    let z = HomogeneousPoly::var(Var::Z);
    let diff = |p: HomogeneousPoly, q: HomogeneousPoly| p.sub(&q).expect("equal degrees");
    OneForm { p: diff(w.b.mul(&z), w.c.mul(&y)), q: diff(w.c.mul(&x), w.a.mul(&z)), r: diff(w.a.mul(&y), w.b.mul(&x)) }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessForm {
    pub q: u32,
    pub two_form: TwoForm,
    pub one_form: OneForm,
    /// `dω = 0` and `df∧ω = 0` hold exactly.
    pub closed: bool,
}

impl WitnessForm {
    /// Normalizes `two_form` to coprime integer coefficients.
    pub fn new(q: u32, two_form: TwoForm, curve: &CurveInput) -> Self {
        let two_form: TwoForm = two_form.triple().primitive().into();
        let closed = two_form.is_closed() && two_form.wedge_df(curve).is_zero();
        let one_form = euler_contraction(&two_form);
        WitnessForm { q, two_form, one_form, closed }
    }
}

/// One homogeneous slot `q = t d + k`, `k` in `[1, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralCell {
    pub q: u32,
    pub t: u32,
    pub k: u32,
    pub dim_syz: usize,
    pub dim_kr: usize,
    pub kappa: usize,
    pub epsilon: usize,
}

/// `(t, k)` with `q = t d + k` and `k` in `[1, d]`.
pub fn cell_index(q: u32, d: u32) -> (u32, u32) {
    let k = (q + d - 1) % d + 1;
    ((q - k) / d, k)
}

/// Divergence of the basis 2-forms `mono · e_i`, as coordinates in
/// `S_{q-3}` shifted by `offset`.
fn divergence_column(mono: &crate::polyring::Monomial, slot: usize, offset: usize) -> SparseVec {
    let var = Var::ALL[slot];
    HomogeneousPoly::monomial(crate::exactla::rat(1), *mono).partial(var).sparse_coords(offset)
}

/// The map `Syz-coordinates ⊕ S_{q-d-2}^3 -> S_{j+d-1} ⊕ S_{q-3}`,
/// `(a, b, c, u, v, w) -> (a f_x + b f_y + c f_z, div(a, b, c) - (u f_x + v f_y + w f_z))`.
/// Its kernel projects onto `ker δ_q`; the projection has kernel
/// `AR(f)_{q-d-2}` (the `u, v, w` with `u f_x + v f_y + w f_z = 0`).
fn delta_system(curve: &CurveInput, q: u32, with_jacobian: bool) -> SparseMatrix {
    let d = curve.degree();
    let j = q - 2;
    let n_syz = dim_s((j + d - 1) as i64);
    let n_div = dim_s(q as i64 - 3);
    let mut mat = SparseMatrix::new(n_syz + n_div);
    let mons = basis(j);
    for (slot, p) in curve.partials().iter().enumerate() {
        for mono in &mons {
            let mut col = p.mul_monomial(mono).sparse_coords(0);
            if q >= 3 {
                col.extend(divergence_column(mono, slot, n_syz));
            }
            mat.push_column(col);
        }
    }
    let src = q as i64 - d as i64 - 2;
    if with_jacobian && src >= 0 {
        for p in curve.partials() {
            for mono in basis(src as u32) {
                mat.push_column(p.mul_monomial(&mono).neg().sparse_coords(n_syz));
            }
        }
    }
    mat
}

/// `κ_q = dim ker δ_q`.
pub fn delta_kernel_dim(curve: &CurveInput, q: u32) -> usize {
    if q < 2 {
        return 0;
    }
    let system = delta_system(curve, q, true).nullity(curve.mode());
    let lifts = if q >= 3 {
        let jac = jacobian_matrix(curve.partials(), q - 3);
        jac.nullity(curve.mode())
    } else {
        0
    };
    system - lifts
}

/// A basis of `ker δ_q` inside `Syz(f)_q`, as syzygy triples of degree `q - 2`.
pub fn delta_kernel_basis(curve: &CurveInput, q: u32) -> Vec<SyzygyTriple> {
    if q < 2 {
        return Vec::new();
    }
    let j = q - 2;
    let n3 = 3 * dim_s(j as i64);
    let projected: Vec<Vec<crate::exactla::Rat>> = delta_system(curve, q, true)
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut dense = vec![crate::exactla::Rat::zero(); n3];
            for (i, x) in v {
                if i < n3 {
                    dense[i] = x;
                }
            }
            dense
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if projected.is_empty() {
        return Vec::new();
    }
    QMatrix::from_rows(n3, projected)
        .expect("uniform lengths")
        .row_space_basis()
        .iter()
        .map(|v| SyzygyTriple::from_coords(j, &crate::exactla::sparsify(v)))
        .collect()
}

pub fn epsilon(curve: &CurveInput, q: u32) -> usize {
    spectral_cell(curve, q).epsilon
}

pub fn spectral_cell(curve: &CurveInput, q: u32) -> SpectralCell {
    let d = curve.degree();
    let (t, k) = cell_index(q, d);
    let dim_syz = dim_ar(curve, q as i64 - 2);
    let dim_kr = curve.kr_dim(q);
    let kappa = delta_kernel_dim(curve, q);
    let epsilon = kappa.checked_sub(dim_kr).unwrap_or_else(|| panic!("Koszul relations must lie in ker δ_{q}: κ = {kappa} < {dim_kr}"));
    SpectralCell { q, t, k, dim_syz, dim_kr, kappa, epsilon }
}

pub fn default_qmax(d: u32) -> u32 {
    2 * d
}

/// Cells for `q = 1..=qmax`, sorted by `q`.
pub fn e2_table(curve: &CurveInput, qmax: u32) -> Vec<SpectralCell> {
    let mut cells: Vec<SpectralCell> = (1..=qmax).into_par_iter().map(|q| spectral_cell(curve, q)).collect();
    cells.sort_by_key(|c| c.q);
    cells
}

/// `Z²_{f,q}`: syzygy forms of degree `q` with zero divergence.
pub fn closed_syzygy_space(curve: &CurveInput, q: u32) -> Vec<WitnessForm> {
    if q < 2 {
        return Vec::new();
    }
    let j = q - 2;
    delta_system(curve, q, false)
        .kernel_basis()
        .iter()
        .map(|v| WitnessForm::new(q, SyzygyTriple::from_coords(j, v).into(), curve))
        .collect()
}

pub fn closed_dim(curve: &CurveInput, q: u32) -> usize {
    if q < 2 {
        return 0;
    }
    delta_system(curve, q, false).nullity(curve.mode())
}

/// `df∧dg` for `g` running over `S_{q-d}`, in `S_{q-2}^3` coordinates.
pub fn exact_forms_matrix(curve: &CurveInput, q: u32) -> SparseMatrix {
    let j = q as i64 - 2;
    let n = dim_s(j);
    let mut mat = SparseMatrix::new(3 * n);
    let src = q as i64 - curve.degree() as i64;
    if src < 0 || j < 0 {
        return mat;
    }
    let [fx, fy, fz] = curve.partials();
    for mono in basis(src as u32) {
        let g = HomogeneousPoly::monomial(crate::exactla::rat(1), mono);
        let [gx, gy, gz] = g.partials();
        let cross = |p: &HomogeneousPoly, q: &HomogeneousPoly, r: &HomogeneousPoly, s: &HomogeneousPoly| {
            if p.degree() + q.degree() != j as u32 {
                // g constant: dg = 0
                return HomogeneousPoly::zero(j as u32);
            }
            p.mul(q).sub(&r.mul(s)).expect("equal degrees")
        };
        let a = cross(fy, &gz, fz, &gy);
        let b = cross(fz, &gx, fx, &gz);
        let c = cross(fx, &gy, fy, &gx);
        let mut col = a.sparse_coords(0);
        col.extend(b.sparse_coords(n));
        col.extend(c.sparse_coords(2 * n));
        mat.push_column(col);
    }
    mat
}

/// `dim H²_{f,q} = dim Z²_{f,q} - dim B²_{f,q}`.
pub fn h2f_dim(curve: &CurveInput, q: u32) -> usize {
    closed_dim(curve, q) - exact_forms_matrix(curve, q).rank(curve.mode())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub d1: u32,
    pub d2: u32,
    /// `(q, κ_q)` for `q = j + 2`, `j` in `[d1, d2)`.
    pub checks: Vec<(u32, usize)>,
    pub passed: bool,
}

/// For a free curve, `δ_q` must be injective for `q - 2` in `[d1, d2)`.
pub fn injectivity_probe(curve: &CurveInput, classification: &Classification) -> Option<InjectivityReport> {
    let Classification::Free { d1, d2 } = *classification else {
        return None;
    };
    let checks: Vec<(u32, usize)> = (d1..d2).into_par_iter().map(|j| (j + 2, delta_kernel_dim(curve, j + 2))).collect();
    let passed = checks.iter().all(|(_, k)| *k == 0);
    Some(InjectivityReport { d1, d2, checks, passed })
}

/// Witness forms for every cell with `ε_q > 0`: a basis of `Z²_{f,q}` when it
/// is nonempty, otherwise a basis of `ker δ_q` (not closed).
pub fn witnesses(curve: &CurveInput, cells: &[SpectralCell]) -> Vec<WitnessForm> {
    cells
        .par_iter()
        .filter(|c| c.epsilon > 0)
        .flat_map_iter(|c| {
            let closed = closed_syzygy_space(curve, c.q);
            if closed.is_empty() {
                delta_kernel_basis(curve, c.q).into_iter().map(|s| WitnessForm::new(c.q, s.into(), curve)).collect()
            } else {
                closed
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::jacobian::validate;
    use proptest::prelude::*;

    fn v(var: Var) -> HomogeneousPoly {
        HomogeneousPoly::var(var)
    }

    fn fermat(d: u32) -> CurveInput {
        let f = v(Var::X).pow(d).add(&v(Var::Y).pow(d)).unwrap().add(&v(Var::Z).pow(d)).unwrap();
        validate(f, Some(1)).unwrap()
    }

    #[test]
    fn cell_indices() {
        assert_eq!(cell_index(5, 6), (0, 5));
        assert_eq!(cell_index(6, 6), (0, 6));
        assert_eq!(cell_index(7, 6), (1, 1));
        assert_eq!(cell_index(12, 6), (1, 6));
        assert_eq!(cell_index(13, 6), (2, 1));
    }

    #[test]
    fn contraction_of_unit_form() {
        let one = HomogeneousPoly::constant(rat(1));
        let zero = HomogeneousPoly::zero(0);
        let w = TwoForm { a: one, b: zero.clone(), c: zero };
        let c = euler_contraction(&w);
        assert_eq!(c.to_string(), "(0)*dx + (-z)*dy + (y)*dz");
    }

    #[test]
    fn contraction_of_euler_pattern_vanishes() {
        let w = TwoForm { a: v(Var::X), b: v(Var::Y), c: v(Var::Z) };
        assert!(euler_contraction(&w).is_zero());
    }

    #[test]
    fn smooth_curves_have_vanishing_epsilon() {
        for d in 3..=4 {
            let c = fermat(d);
            for cell in e2_table(&c, 2 * d) {
                assert_eq!(cell.kappa, cell.dim_kr, "d = {d}, q = {}", cell.q);
                assert_eq!(cell.epsilon, 0);
                // regular sequence: every syzygy is Koszul
                assert_eq!(cell.dim_syz, cell.dim_kr);
            }
        }
    }

    #[test]
    fn h2f_vanishes_below_degree_for_smooth_quartic() {
        let c = fermat(4);
        for q in 2..=4 {
            assert_eq!(h2f_dim(&c, q), 0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn double_contraction_vanishes(coeffs in proptest::collection::vec(-4i64..=4, 30)) {
            let part = |k: usize| HomogeneousPoly::from_coords(3, &coeffs[k * 10..(k + 1) * 10].iter().map(|&c| rat(c)).collect::<Vec<_>>()).unwrap();
            let w = TwoForm { a: part(0), b: part(1), c: part(2) };
            prop_assert!(euler_contraction(&w).euler_contraction().is_zero());
        }
    }
}
