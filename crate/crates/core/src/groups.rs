//! Companion presentations of difference groups and their ranks.
//!
//! A presentation is a ring R (a number field) and a monic P over R with
//! P(0) ≠ 0, the characteristic polynomial of the companion matrix M with
//! last row (c_1, ..., c_m), P(x) = x^m - Σ c_j x^(j-1).

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::field::Scalar;
use crate::hereditary::{has_root_of_unity_root, hereditary_factorization, HereditaryFactorization};
use crate::numfield::{factor_over_k, KPoly, NfElem, NumberField};
use crate::poly::{charpoly_of, companion_of, CompanionMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    #[default]
    Multiplicative,
    CmElliptic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompanionPresentation {
    pub ring: NumberField,
    pub char_poly: KPoly,
    pub ambient: Ambient,
}

impl CompanionPresentation {
    pub fn new(ring: NumberField, char_poly: KPoly, ambient: Ambient) -> Result<Self> {
        let m = char_poly.degree().ok_or(Error::ZeroPolynomial)?;
        if m == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !ring.poly_ring().is_monic(&char_poly) {
            return Err(Error::NotMonic);
        }
        if char_poly.constant_term().is_none_or(Scalar::is_zero) {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(CompanionPresentation { ring, char_poly, ambient })
    }

    /// Builds the presentation from the last row (c_1, ..., c_m) of M.
    pub fn from_last_row(ring: NumberField, last_row: Vec<NfElem>, ambient: Ambient) -> Result<Self> {
        if last_row.is_empty() {
            return Err(Error::ConstantPolynomial);
        }
        let p = charpoly_of(&ring.poly_ring(), &CompanionMatrix { last_row });
        Self::new(ring, p, ambient)
    }

    /// Over Q, from integer coefficients of P (low to high).
    pub fn over_q(coeffs: &[i64]) -> Result<Self> {
        let q = NumberField::rationals();
        let p = q.embed_qpoly(&crate::poly::QPoly::from_ints(coeffs));
        Self::new(q, p, Ambient::Multiplicative)
    }

    /// m, the size of M and the σ-degree of a generic point.
    pub fn size(&self) -> usize {
        self.char_poly.degree().unwrap()
    }

    pub fn sigma_degree(&self) -> usize {
        self.size()
    }

    pub fn companion(&self) -> CompanionMatrix<NfElem> {
        companion_of(&self.ring.poly_ring(), &self.char_poly).expect("presentation polynomial is monic")
    }

    pub fn last_row(&self) -> Vec<NfElem> {
        self.companion().last_row
    }

    /// The degree ratio |P(0)| forced by an integral presentation over Q.
    pub fn degree_ratio(&self) -> Option<Rational> {
        if !self.ring.is_rationals() {
            return None;
        }
        let c = self.char_poly.constant_term()?.as_rational()?.clone();
        let integral = self.char_poly.coeffs().iter().all(|x| x.coords[0].is_integer());
        integral.then(|| if c < Rational::from_integer(0.into()) { -c } else { c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub irreducible_over_r: bool,
    pub root_of_unity_eigenvalue: bool,
    /// Necessary for minimality.
    pub minimal_necessary: bool,
    /// Necessary for one-basedness.
    pub one_based_necessary: bool,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.minimal_necessary && self.one_based_necessary
    }
}

/// Checks the necessary conditions: P irreducible over R and no eigenvalue
/// of M a root of unity. The conditions are not claimed to be sufficient.
pub fn validate(g: &CompanionPresentation) -> Result<ValidationReport> {
    if g.char_poly.constant_term().is_none_or(Scalar::is_zero) {
        return Err(Error::ZeroConstantTerm);
    }
    let irreducible = g.size() == 1 || factor_over_k(&g.ring, &g.char_poly)?.is_irreducible();
    let root_of_unity = has_root_of_unity_root(&g.ring, &g.char_poly)?;
    Ok(ValidationReport {
        irreducible_over_r: irreducible,
        root_of_unity_eigenvalue: root_of_unity,
        minimal_necessary: irreducible,
        one_based_necessary: !root_of_unity,
    })
}

fn require_valid(g: &CompanionPresentation) -> Result<ValidationReport> {
    let v = validate(g)?;
    if !v.irreducible_over_r {
        return Err(Error::ValidationFailed("characteristic polynomial is reducible over the ring".into()));
    }
    if v.root_of_unity_eigenvalue {
        return Err(Error::ValidationFailed("a root of unity is an eigenvalue".into()));
    }
    Ok(v)
}

/// True iff the last row of the prolonged matrix carries c_j at column
/// (j-1)n+1 (1-based) and zeros elsewhere.
pub fn entry_law_holds(g: &CompanionPresentation, prolonged: &CompanionPresentation, n: usize) -> bool {
    let row = g.last_row();
    let long = prolonged.last_row();
    if long.len() != row.len() * n {
        return false;
    }
    long.iter().enumerate().all(|(k, e)| {
        if k % n == 0 {
            *e == row[k / n]
        } else {
            Scalar::is_zero(e)
        }
    })
}

/// The presentation of size m·n whose characteristic polynomial is P(x^n).
pub fn prolong(g: &CompanionPresentation, n: usize) -> Result<CompanionPresentation> {
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let p = g.ring.poly_ring().substitute_power(&g.char_poly, n);
    let out = CompanionPresentation::new(g.ring.clone(), p, g.ambient)?;
    if !entry_law_holds(g, &out, n) {
        return Err(Error::Internal("prolongation violates the entry law".into()));
    }
    Ok(out)
}

fn factor_power(g: &CompanionPresentation, n: usize, budget: &Budget) -> Result<Factorization<NfElem>> {
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    budget.check_degree(g.size().saturating_mul(n))?;
    factor_over_k(&g.ring, &g.ring.poly_ring().substitute_power(&g.char_poly, n))
}

/// Rank in the reduct to τ with τ^n = σ: the number of irreducible factors
/// of P(x^n) over R, with multiplicity.
pub fn rank_in_reduct(g: &CompanionPresentation, n: usize, budget: &Budget) -> Result<usize> {
    require_valid(g)?;
    Ok(factor_power(g, n, budget)?.count())
}

/// Sorted degrees of the irreducible factors of P(x^n) over R.
pub fn subgroup_degree_spectrum(g: &CompanionPresentation, n: usize, budget: &Budget) -> Result<Vec<usize>> {
    require_valid(g)?;
    Ok(factor_power(g, n, budget)?.degrees())
}

/// True iff every root of `candidate` is a root of P(x^n).
pub fn eigenvalue_compatible(candidate: &KPoly, g: &CompanionPresentation, n: usize) -> Result<bool> {
    if candidate.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let ring = g.ring.poly_ring();
    let sq = ring.squarefree_part(candidate)?;
    Ok(ring.divides(&sq, &ring.substitute_power(&g.char_poly, n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Rank {
    Finite(u64),
    /// Only an upper bound is known.
    AtMost(u64),
    Infinite,
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    HereditaryFactorCount,
    FixedFieldRule,
    DegreeRatioBoundOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RankWitness {
    Hereditary(Box<HereditaryFactorization>),
    DegreeRatio { ratio: Rational, bound: Option<u64> },
    FixedField { q0: Rational, m: i64, characteristic: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub rank: Rank,
    pub method: RankMethod,
    pub witness: RankWitness,
}

/// Rank as the number of hereditarily irreducible hereditary factors of P.
pub fn qacfa_rank(g: &CompanionPresentation, budget: &Budget) -> Result<RankReport> {
    let v = validate(g)?;
    if v.root_of_unity_eigenvalue {
        return Err(Error::RootOfUnity);
    }
    if !v.irreducible_over_r {
        return Err(Error::ValidationFailed("characteristic polynomial is reducible over the ring".into()));
    }
    let hf = hereditary_factorization(&g.ring, &g.char_poly, budget)?;
    Ok(RankReport {
        rank: Rank::Finite(hf.factors.len() as u64),
        method: RankMethod::HereditaryFactorCount,
        witness: RankWitness::Hereditary(Box::new(hf)),
    })
}

/// The upper bound on the rank given by the degree ratio of an integral
/// presentation over Q; `None` when there is no ratio or it equals 1.
pub fn degree_ratio_rank_bound(g: &CompanionPresentation) -> Result<Option<RankReport>> {
    let Some(ratio) = g.degree_ratio() else { return Ok(None) };
    let Some(bound) = crate::classify::rank_bound_from_ratio(&ratio)? else { return Ok(None) };
    Ok(Some(RankReport {
        rank: Rank::AtMost(bound),
        method: RankMethod::DegreeRatioBoundOnly,
        witness: RankWitness::DegreeRatio { ratio, bound: Some(bound) },
    }))
}
