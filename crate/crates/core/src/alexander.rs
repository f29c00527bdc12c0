//! Alexander polynomial of the curve from the `t = 0` row of the `E_2` table.
//!
//! For `λ = exp(-2πik/d) ≠ 1` the multiplicity `m(λ)` satisfies
//! `max(ε_k, ε_{d-k}) <= m(λ) <= ε_k + ε_{d-k}`, with equality when either
//! term vanishes. The eigenvalue 1 contributes `(t-1)^{r-1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::CurveInput;
use crate::spectral::e2_table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("the multiplicity bounds are not all exact or the number of components is unknown")]
    NotCertified,
    #[error("multiplicities differ across the primitive {e}-th roots of unity")]
    OrbitInconsistency { e: u32 },
    #[error("(t^{d}-1)^{chi_u} * Δ¹(t) / (t-1) is not a polynomial")]
    NonPolynomialResult { d: u32, chi_u: i64 },
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: u32) -> Self {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(-1);
        c[n as usize] = BigInt::one();
        Self::from_coeffs(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_coeffs(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `self / divisor` when the division is exact over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        if rem.len() < dl {
            return self.is_zero().then(|| self.clone());
        }
        let lead = divisor.coeffs.last().expect("nonzero");
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::from_coeffs(quot))
    }

    /// The `e`-th cyclotomic polynomial.
    pub fn cyclotomic(e: u32) -> Self {
        assert!(e >= 1, "cyclotomic index starts at 1");
        (1..e)
            .filter(|k| e.is_multiple_of(*k))
            .fold(Self::t_pow_minus_one(e), |acc, k| acc.div_exact(&Self::cyclotomic(k)).expect("divides t^e - 1"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Bounds on the multiplicity of `exp(-2πik/d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityBound {
    pub k: u32,
    pub k_prime: u32,
    pub eps_k: usize,
    pub eps_kprime: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl MultiplicityBound {
    pub fn new(d: u32, k: u32, eps_k: usize, eps_kprime: usize) -> Self {
        let k_prime = d - k;
        if k == k_prime {
            // λ = -1: both indices coincide, only ε_k is available.
            return MultiplicityBound { k, k_prime, eps_k, eps_kprime, lower: eps_k, upper: 2 * eps_k, exact: eps_k == 0 };
        }
        MultiplicityBound {
            k,
            k_prime,
            eps_k,
            eps_kprime,
            lower: eps_k.max(eps_kprime),
            upper: eps_k + eps_kprime,
            exact: eps_k == 0 || eps_kprime == 0,
        }
    }

    pub fn is_root(&self) -> bool {
        self.upper > 0
    }

    /// Order of `exp(-2πik/d)`.
    pub fn order(&self) -> u32 {
        (self.k + self.k_prime) / (self.k + self.k_prime).gcd(&self.k)
    }
}

/// Multiplicity interval shared by all primitive `e`-th roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInterval {
    pub e: u32,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderResult {
    pub degree: u32,
    pub bounds: Vec<MultiplicityBound>,
    pub unity_multiplicity: Option<u32>,
    pub certified: bool,
}

/// Bounds from `eps[k - 1] = ε_k`, `k = 1..d-1`.
pub fn alexander_from_epsilons(d: u32, eps: &[usize], components: Option<u32>) -> AlexanderResult {
    assert!(eps.len() + 1 >= d as usize, "need ε_k for k = 1..d-1");
    let bounds: Vec<MultiplicityBound> =
        (1..d).map(|k| MultiplicityBound::new(d, k, eps[k as usize - 1], eps[(d - k) as usize - 1])).collect();
    let unity_multiplicity = components.map(|r| r.saturating_sub(1));
    let certified = unity_multiplicity.is_some() && bounds.iter().all(|b| b.exact);
    AlexanderResult { degree: d, bounds, unity_multiplicity, certified }
}

pub fn alexander(curve: &CurveInput) -> AlexanderResult {
    let d = curve.degree();
    let eps: Vec<usize> = e2_table(curve, d - 1).iter().map(|c| c.epsilon).collect();
    alexander_from_epsilons(d, &eps, curve.components())
}

impl AlexanderResult {
    /// One interval per root order `e > 1` dividing `d`, intersecting the
    /// per-root bounds over the orbit.
    pub fn orbit_intervals(&self) -> Vec<OrbitInterval> {
        let mut by_order: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for b in &self.bounds {
            let entry = by_order.entry(b.order()).or_insert((0, usize::MAX));
            entry.0 = entry.0.max(b.lower);
            entry.1 = entry.1.min(b.upper);
        }
        by_order.into_iter().map(|(e, (lower, upper))| OrbitInterval { e, lower, upper }).collect()
    }

    /// `(e, multiplicity of Φ_e)`, including `e = 1`, with zero entries dropped.
    pub fn cyclotomic_factorization(&self) -> Result<Vec<(u32, u32)>, AlexanderError> {
        let unity = match self.unity_multiplicity {
            Some(u) if self.certified => u,
            _ => return Err(AlexanderError::NotCertified),
        };
        let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
        for b in &self.bounds {
            match mult.insert(b.order(), b.lower) {
                Some(prev) if prev != b.lower => return Err(AlexanderError::OrbitInconsistency { e: b.order() }),
                _ => {}
            }
        }
        let mut out = vec![(1, unity)];
        out.extend(mult.into_iter().map(|(e, m)| (e, m as u32)));
        out.retain(|&(_, m)| m > 0);
        Ok(out)
    }

    pub fn delta1(&self) -> Result<IntPoly, AlexanderError> {
        Ok(self.cyclotomic_factorization()?.iter().fold(IntPoly::one(), |acc, &(e, m)| acc.mul(&IntPoly::cyclotomic(e).pow(m))))
    }

    /// Expanded when squarefree, otherwise a product of cyclotomic powers.
    pub fn delta1_string(&self) -> Result<String, AlexanderError> {
        let factors = self.cyclotomic_factorization()?;
        if factors.iter().all(|&(_, m)| m == 1) {
            return Ok(self.delta1()?.to_string());
        }
        Ok(factors
            .iter()
            .map(|&(e, m)| power_string(&IntPoly::cyclotomic(e).to_string(), &m.to_string(), m == 1))
            .collect::<Vec<_>>()
            .join("*"))
    }

    /// Factored display with `^[lo,hi]` for inexact orbits; the unity factor
    /// appears only when the number of components is known.
    pub fn interval_string(&self) -> String {
        let mut parts = Vec::new();
        if let Some(u) = self.unity_multiplicity.filter(|&u| u > 0) {
            parts.push(power_string("t-1", &u.to_string(), u == 1));
        }
        for o in self.orbit_intervals() {
            if o.upper == 0 {
                continue;
            }
            let phi = IntPoly::cyclotomic(o.e).to_string();
            if o.lower == o.upper {
                parts.push(power_string(&phi, &o.lower.to_string(), o.lower == 1));
            } else {
                parts.push(power_string(&phi, &format!("[{},{}]", o.lower, o.upper), false));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn power_string(base: &str, exp: &str, bare: bool) -> String {
    if bare {
        format!("({base})")
    } else {
        format!("({base})^{exp}")
    }
}

/// `Δ⁰ = t - 1` and `Δ² = (t^d - 1)^{χ(U)} Δ¹(t) / (t - 1)`.
pub fn delta0_delta2(d: u32, chi_u: i64, delta1: &IntPoly) -> Result<(IntPoly, IntPoly), AlexanderError> {
    let base = IntPoly::t_pow_minus_one(d);
    let e = u32::try_from(chi_u.unsigned_abs()).map_err(|_| AlexanderError::NonPolynomialResult { d, chi_u })?;
    let (num, den) = if chi_u >= 0 {
        (base.pow(e).mul(delta1), IntPoly::t_pow_minus_one(1))
    } else {
        (delta1.clone(), IntPoly::t_pow_minus_one(1).mul(&base.pow(e)))
    };
    let delta2 = num.div_exact(&den).ok_or(AlexanderError::NonPolynomialResult { d, chi_u })?;
    Ok((IntPoly::t_pow_minus_one(1), delta2))
}
