//! Checks catalog facts against fresh computations.
#![allow(dead_code)]

use milnor::alexander::alexander;
use milnor::catalog::{ExpectedFact, Fact};
use milnor::exactla::SparseMatrix;
use milnor::exactla::{densify, QMatrix, Rat};
use milnor::jacobian::{jacobian_matrix, kr_matrix, CurveInput};
use milnor::polyring::{dim_s, HomogeneousPoly};
use milnor::spectral::{closed_syzygy_space, e2_table, h2f_dim, injectivity_probe, TwoForm};
use milnor::syzygy::{classify, free_ar_dim, generator_profile, Classification, SyzygyTriple};

pub fn triple(form: &[HomogeneousPoly; 3]) -> SyzygyTriple {
    SyzygyTriple::new(form[0].clone(), form[1].clone(), form[2].clone())
}

/// Whether `form` lies in the span of the computed basis of `Z²_q`.
pub fn in_closed_space(curve: &CurveInput, q: u32, form: &SyzygyTriple) -> bool {
    let n = 3 * dim_s(q as i64 - 2);
    let basis = closed_syzygy_space(curve, q);
    if basis.is_empty() {
        return false;
    }
    let cols: Vec<Vec<Rat>> = basis.iter().map(|w| densify(&w.two_form.triple().coords(), n)).collect();
    let m = QMatrix::from_rows(n, cols).unwrap().transpose();
    m.solve_membership(&densify(&form.coords(), n)).unwrap().is_some()
}

pub fn check_fact(curve: &CurveInput, fact: &ExpectedFact) -> Result<(), String> {
    match &fact.fact {
        Fact::Classification { classification } => {
            let got = classify(curve).map_err(|e| e.to_string())?;
            (got == *classification).then_some(()).ok_or(format!("classification {got}, expected {classification}"))
        }
        Fact::GeneratorDegrees { jmax, degrees } => {
            let p = generator_profile(curve, *jmax);
            (p.generator_degrees == *degrees)
                .then_some(())
                .ok_or(format!("generator degrees {:?}, expected {degrees:?}", p.generator_degrees))
        }
        Fact::EpsilonRange { qmin, qmax, nonzero } => {
            let table = e2_table(curve, *qmax);
            for cell in table.iter().filter(|c| c.q >= *qmin) {
                let want = nonzero.iter().find(|(q, _)| *q == cell.q).map_or(0, |(_, e)| *e);
                if cell.epsilon != want {
                    return Err(format!("epsilon_{} = {}, expected {want}", cell.q, cell.epsilon));
                }
            }
            Ok(())
        }
        Fact::Delta1 { polynomial } => {
            let r = alexander(curve);
            match r.delta1_string() {
                Ok(s) if s == *polynomial => Ok(()),
                Ok(s) => Err(format!("delta1 {s}, expected {polynomial}")),
                Err(e) => Err(format!("{e}; intervals {}", r.interval_string())),
            }
        }
        Fact::Tjurina { value } => (curve.tjurina() == *value).then_some(()).ok_or(format!("tau {}, expected {value}", curve.tjurina())),
        Fact::H2f { q, value } => {
            let got = h2f_dim(curve, *q);
            (got == *value).then_some(()).ok_or(format!("h2f_{q} = {got}, expected {value}"))
        }
        Fact::AlexanderBound { k, lower, upper, exact } => {
            let r = alexander(curve);
            let b = r.bounds.iter().find(|b| b.k == *k).ok_or("k out of range")?;
            ((b.lower, b.upper, b.exact) == (*lower, *upper, *exact))
                .then_some(())
                .ok_or(format!("k = {k}: [{}, {}] exact {}", b.lower, b.upper, b.exact))
        }
        Fact::ClosedForm { q, form } => {
            let t = triple(&form.parse());
            if !t.is_syzygy_of(curve) {
                return Err(format!("{t} is not a syzygy"));
            }
            if !TwoForm::from(&t).is_closed() {
                return Err(format!("{t} is not closed"));
            }
            in_closed_space(curve, *q, &t).then_some(()).ok_or(format!("{t} not in the computed Z2_{q}"))
        }
        Fact::InjectiveRange { d1, d2 } => {
            let r = injectivity_probe(curve, &Classification::Free { d1: *d1, d2: *d2 }).unwrap();
            r.passed.then_some(()).ok_or(format!("kappa nonzero: {:?}", r.checks))
        }
    }
}

/// `dim (df∧Ω¹)_q` by the closed formula against the matrix rank.
pub fn kr_formula_holds(curve: &CurveInput, q: u32) -> bool {
    kr_matrix(curve, q).rank(curve.mode()) == curve.kr_dim(q)
}

/// Every Koszul relation has divergence in the Jacobian ideal.
pub fn kr_in_kernel(curve: &CurveInput, q: u32) -> bool {
    if q < 3 {
        return true;
    }
    let kr = kr_matrix(curve, q);
    let jac = jacobian_matrix(curve.partials(), q - 3);
    let base = jac.rank(curve.mode());
    let mut aug = SparseMatrix::new(jac.nrows());
    for c in 0..jac.ncols() {
        aug.push_column(jac.column(c).clone());
    }
    for c in 0..kr.ncols() {
        let t = SyzygyTriple::from_coords(q - 2, kr.column(c));
        aug.push_column(TwoForm::from(&t).divergence().sparse_coords(0));
    }
    aug.rank(curve.mode()) == base
}

/// `dim AR(f)_j` against the free-module count, `j <= jmax`.
pub fn free_dims_hold(curve: &CurveInput, d1: u32, d2: u32, jmax: u32) -> Result<(), String> {
    let p = generator_profile(curve, jmax);
    for c in &p.degrees {
        let want = free_ar_dim(d1, d2, c.j);
        if c.dim_ar != want {
            return Err(format!("dim AR_{} = {}, free formula {want}", c.j, c.dim_ar));
        }
    }
    Ok(())
}

pub fn euler_holds(f: &HomogeneousPoly) -> bool {
    use milnor::polyring::Var;
    let lhs = Var::ALL.iter().map(|&v| HomogeneousPoly::var(v).mul(&f.partial(v))).reduce(|a, b| a.add(&b).unwrap()).unwrap();
    lhs == f.scale(&Rat::from_integer(f.degree().into()))
}
