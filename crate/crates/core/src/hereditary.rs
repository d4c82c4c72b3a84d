//! Root-of-unity detection, the Capelli analysis of P(x^n), and the
//! hereditary factorization of a polynomial over a number field.
//!
//! For Q irreducible over K with root α, Q(x^n) is irreducible over K iff
//! x^n - α is irreducible over K(α). By Capelli's theorem that fails for some
//! n iff α is a p-th power in K(α) for a prime p, or α ∈ -4 K(α)^4. If α = β^p
//! then h(β) = h(α)/p, so only primes p ≤ h(α)/h_min need testing, where
//! h_min bounds from below the height of any non-torsion element of K(α).

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{exponent_vector, primes_up_to, totient};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::numfield::{
    cmp_kpoly, factor_over_k, flatten, height_lower_bound, minus_four_test, power_test, replay_power_test,
    weil_height, KPoly, NumberField, PowerMethod, PowerTest,
};
use crate::par;
use crate::poly::{qring, QPoly};

/// Why Q(x^n) splits for some n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The root is a p-th power in K(α); Q(x^p) splits.
    PthPower { p: u32 },
    /// The root lies in -4 K(α)^4; Q(x^4) splits.
    MinusFour,
}

impl Obstruction {
    /// The substitution exponent that splits the factor.
    pub fn exponent(&self) -> u32 {
        match self {
            Obstruction::PthPower { p } => *p,
            Obstruction::MinusFour => 4,
        }
    }
}

/// One prime tested in a Capelli analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTest {
    pub prime: u32,
    pub is_power: bool,
    pub method: PowerMethod,
}

/// Full record of a Capelli analysis of one irreducible factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapelliAnalysis {
    /// [K(α):Q].
    pub field_degree: usize,
    /// Every prime up to this bound was tested (or excluded, below).
    pub prime_bound: u64,
    /// Upper bound for h(α); absent when the exact rational route was used.
    pub height_upper: Option<f64>,
    /// Lower bound for non-torsion heights in K(α); absent likewise.
    pub height_lower: Option<f64>,
    pub prime_tests: Vec<PrimeTest>,
    /// Result of the -4 L^4 test; absent if the search stopped at a prime.
    pub minus_four: Option<PowerTest>,
    pub obstruction: Option<Obstruction>,
}

impl CapelliAnalysis {
    /// All obstructing primes found.
    pub fn obstructing_primes(&self) -> Vec<u32> {
        self.prime_tests.iter().filter(|t| t.is_power).map(|t| t.prime).collect()
    }
}

fn mobius(n: u64) -> i32 {
    let (mut m, mut result, mut p) = (n, 1, 2);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Cyclotomic polynomial Φ_n = ∏_{d | n} (x^d - 1)^μ(n/d) over Q.
pub fn cyclotomic_polynomial(n: u64) -> QPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let q = qring();
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = q.one();
    let mut den = q.one();
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = q.mul(&num, &q.x_pow_minus_one(d as usize)),
            -1 => den = q.mul(&den, &q.x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    q.div_exact(&num, &den).expect("cyclotomic quotient is exact")
}

/// True iff some root of `p` (over an algebraic closure of K) is a root of
/// unity. Roots of unity of degree at most D = deg p · [K:Q] have order n with
/// φ(n) ≤ D, and φ(n) ≥ √(n/2) bounds n by 2D². The test runs on the norm of
/// `p` down to Q, which has a root of unity among its roots iff `p` does.
pub fn has_root_of_unity_root(k: &NumberField, p: &KPoly) -> Result<bool> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(false);
    }
    let q = qring();
    let norm = match k.to_qpoly(p) {
        Some(r) => r,
        None => k.norm_poly(p),
    };
    let norm = q.squarefree_part(&norm)?;
    let big_d = norm.degree().unwrap() as u64;
    let candidates: Vec<u64> = (1..=2 * big_d * big_d).filter(|&n| totient(n) <= big_d).collect();
    let hits = par::map(&candidates, |&n| q.divides(&cyclotomic_polynomial(n), &norm));
    Ok(hits.into_iter().any(|h| h))
}

fn check_preconditions(k: &NumberField, q: &KPoly) -> Result<()> {
    let deg = q.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if q.constant_term().is_none_or(Scalar::is_zero) {
        return Err(Error::ZeroConstantTerm);
    }
    if has_root_of_unity_root(k, q)? {
        return Err(Error::RootOfUnity);
    }
    if deg > 1 && !factor_over_k(k, q)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(())
}

/// Capelli analysis of an irreducible Q over K with Q(0) ≠ 0 and no
/// root-of-unity roots. With `exhaustive` every prime up to the bound and the
/// -4 L^4 case are tested; otherwise the search stops at the first
/// obstruction, trying primes in increasing order and then -4 L^4.
pub fn capelli_analysis(k: &NumberField, q: &KPoly, budget: &Budget, exhaustive: bool) -> Result<CapelliAnalysis> {
    check_preconditions(k, q)?;
    analyze(k, q, budget, exhaustive)
}

/// The obstruction to hereditary irreducibility of Q over K, if any.
pub fn capelli_obstruction(k: &NumberField, q: &KPoly, budget: &Budget) -> Result<Option<Obstruction>> {
    Ok(capelli_analysis(k, q, budget, false)?.obstruction)
}

fn analyze(k: &NumberField, q: &KPoly, budget: &Budget, exhaustive: bool) -> Result<CapelliAnalysis> {
    if q.constant_term().is_none_or(Scalar::is_zero) {
        return Err(Error::ZeroConstantTerm);
    }
    let fl = flatten(k, q)?;
    let l = &fl.field;
    let alpha = &fl.root;
    let d = l.degree();

    let (prime_bound, height_upper, height_lower, mut prime_tests) = if l.is_rationals() {
        rational_prime_tests(alpha.coords[0].clone())?
    } else {
        let h_up = weil_height(l, alpha)?;
        let h_min = height_lower_bound(d);
        let bound = (h_up / h_min).ceil();
        if !bound.is_finite() || bound > budget.max_prime as f64 {
            return Err(Error::BudgetExceeded(format!(
                "prime bound {bound} exceeds the cap {}",
                budget.max_prime
            )));
        }
        let bound = bound as u64;
        let primes: Vec<u32> = primes_up_to(bound).into_iter().map(|p| p as u32).collect();
        let results = par::map(&primes, |&p| power_test(l, alpha, p));
        let mut tests = Vec::with_capacity(primes.len());
        for (p, r) in primes.iter().zip(results) {
            let t = r?;
            tests.push(PrimeTest { prime: *p, is_power: t.is_power, method: t.method });
        }
        (bound, Some(h_up), Some(h_min), tests)
    };

    let first_prime = prime_tests.iter().find(|t| t.is_power).map(|t| t.prime);
    if !exhaustive {
        if let Some(p) = first_prime {
            prime_tests.retain(|t| t.prime <= p);
        }
    }
    let minus_four = if exhaustive || first_prime.is_none() { Some(minus_four_test(l, alpha)?) } else { None };
    let obstruction = match (first_prime, minus_four) {
        (Some(p), _) => Some(Obstruction::PthPower { p }),
        (None, Some(t)) if t.is_power => Some(Obstruction::MinusFour),
        _ => None,
    };
    Ok(CapelliAnalysis {
        field_degree: d,
        prime_bound,
        height_upper,
        height_lower,
        prime_tests,
        minus_four,
        obstruction,
    })
}

type PrimeSurvey = (u64, Option<f64>, Option<f64>, Vec<PrimeTest>);

/// For rational α ≠ 0, ±1: α is a p-th power iff p divides the gcd g of its
/// prime exponents (and α > 0 when p = 2), so primes beyond g never qualify.
fn rational_prime_tests(alpha: crate::arith::Rational) -> Result<PrimeSurvey> {
    let ev = exponent_vector(&alpha.abs())?;
    let g = ev.values().fold(0i64, |g, e| g.gcd(e)).unsigned_abs();
    if g == 0 {
        return Err(Error::RootOfUnity);
    }
    let tests = primes_up_to(g)
        .into_iter()
        .map(|p| {
            let is_power = g % p == 0 && (p != 2 || alpha.is_positive());
            PrimeTest { prime: p as u32, is_power, method: PowerMethod::Exact }
        })
        .collect();
    Ok((g, None, None, tests))
}

/// Verdict recorded for one factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    HereditarilyIrreducible,
    Obstructed { obstruction: Obstruction },
}

/// Certificate for a node of the hereditary factorization tree.
#[derive(Clone, Debug, PartialEq)]
pub struct HereditaryCertificate {
    /// The factor analysed.
    pub factor: KPoly,
    /// The node stands for a factor of P(x^acc).
    pub acc: u64,
    pub verdict: Verdict,
    pub analysis: CapelliAnalysis,
    /// For obstructed nodes: the irreducible factors of factor(x^e).
    pub split: Vec<KPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HereditaryFactorization {
    pub field: NumberField,
    pub input: KPoly,
    pub n: u64,
    /// Leading coefficient of the input.
    pub unit: crate::numfield::NfElem,
    /// Monic hereditarily irreducible factors of P(x^N), canonically sorted.
    pub factors: Vec<KPoly>,
    /// Terminal certificates in the order of `factors`, each for the factor
    /// before lifting by x -> x^(N/acc).
    pub certificates: Vec<HereditaryCertificate>,
    /// Certificates of the nodes that split.
    pub splits: Vec<HereditaryCertificate>,
}

struct Terminal {
    factor: KPoly,
    acc: u64,
    analysis: CapelliAnalysis,
}

/// Hereditary factorization of an irreducible P over K with P(0) ≠ 0 and no
/// root-of-unity roots: the least N found by repeatedly splitting obstructed
/// factors, and the factors of P(x^N), each hereditarily irreducible.
pub fn hereditary_factorization(k: &NumberField, p: &KPoly, budget: &Budget) -> Result<HereditaryFactorization> {
    check_preconditions(k, p)?;
    let ring = k.poly_ring();
    let deg_p = p.degree().unwrap();
    let unit = p.lc().unwrap().clone();
    let monic = ring.monic(p);

    let mut pending: Vec<(KPoly, u64)> = vec![(monic.clone(), 1)];
    let mut terminals: Vec<Terminal> = Vec::new();
    let mut splits: Vec<HereditaryCertificate> = Vec::new();
    while !pending.is_empty() {
        let results = par::map(&pending, |(q, acc)| -> Result<(Option<Terminal>, Option<HereditaryCertificate>, Vec<(KPoly, u64)>)> {
            let analysis = analyze(k, q, budget, false)?;
            match analysis.obstruction {
                None => Ok((Some(Terminal { factor: q.clone(), acc: *acc, analysis }), None, Vec::new())),
                Some(ob) => {
                    let e = u64::from(ob.exponent());
                    let next = acc * e;
                    budget.check_degree(deg_p * next as usize)?;
                    let fz = factor_over_k(k, &ring.substitute_power(q, e as usize))?;
                    if fz.is_irreducible() {
                        return Err(Error::Internal("obstructed factor failed to split".into()));
                    }
                    let children: Vec<KPoly> = fz.factors.into_iter().map(|(f, _)| f).collect();
                    let cert = HereditaryCertificate {
                        factor: q.clone(),
                        acc: *acc,
                        verdict: Verdict::Obstructed { obstruction: ob },
                        analysis,
                        split: children.clone(),
                    };
                    Ok((None, Some(cert), children.into_iter().map(|c| (c, next)).collect()))
                }
            }
        });
        let mut next_level = Vec::new();
        for r in results {
            let (t, c, kids) = r?;
            terminals.extend(t);
            splits.extend(c);
            next_level.extend(kids);
        }
        pending = next_level;
    }

    let n = terminals.iter().fold(1u64, |l, t| l.lcm(&t.acc));
    budget.check_degree(deg_p * n as usize)?;
    let mut lifted: Vec<(KPoly, Terminal)> = terminals
        .into_iter()
        .map(|t| (ring.substitute_power(&t.factor, (n / t.acc) as usize), t))
        .collect();
    lifted.sort_by(|a, b| cmp_kpoly(&a.0, &b.0));
    let product = ring.product(lifted.iter().map(|(f, _)| f));
    if product != ring.substitute_power(&monic, n as usize) {
        return Err(Error::Internal("hereditary factors do not multiply back to P(x^N)".into()));
    }
    splits.sort_by(|a, b| a.acc.cmp(&b.acc).then_with(|| cmp_kpoly(&a.factor, &b.factor)));
    let (factors, certificates) = lifted
        .into_iter()
        .map(|(f, t)| {
            let cert = HereditaryCertificate {
                factor: t.factor,
                acc: t.acc,
                verdict: Verdict::HereditarilyIrreducible,
                analysis: t.analysis,
                split: Vec::new(),
            };
            (f, cert)
        })
        .unzip();
    Ok(HereditaryFactorization { field: k.clone(), input: p.clone(), n, unit, factors, certificates, splits })
}

/// Re-runs every recorded test of a certificate; true iff all verdicts are
/// reproduced (and, for splits, the recorded factors multiply back).
pub fn replay_certificate(k: &NumberField, cert: &HereditaryCertificate, budget: &Budget) -> Result<bool> {
    let fl = flatten(k, &cert.factor)?;
    let (l, alpha) = (&fl.field, &fl.root);
    let a = &cert.analysis;
    if l.degree() != a.field_degree {
        return Ok(false);
    }
    if !l.is_rationals() {
        let (Some(h_up), Some(h_min)) = (a.height_upper, a.height_lower) else { return Ok(false) };
        if weil_height(l, alpha)? > h_up || height_lower_bound(l.degree()) < h_min {
            return Ok(false);
        }
        if ((h_up / h_min).ceil() as u64) != a.prime_bound || a.prime_bound > budget.max_prime {
            return Ok(false);
        }
    } else {
        let (bound, _, _, tests) = rational_prime_tests(alpha.coords[0].clone())?;
        if bound != a.prime_bound {
            return Ok(false);
        }
        let recorded: BTreeMap<u32, bool> = a.prime_tests.iter().map(|t| (t.prime, t.is_power)).collect();
        if tests.iter().any(|t| recorded.get(&t.prime).is_some_and(|&v| v != t.is_power)) {
            return Ok(false);
        }
    }
    for t in &a.prime_tests {
        if !replay_power_test(l, alpha, t.prime, &PowerTest { is_power: t.is_power, method: t.method })? {
            return Ok(false);
        }
    }
    match &cert.verdict {
        Verdict::HereditarilyIrreducible => {
            // every prime up to the bound must be recorded as failing
            let tested: Vec<u32> = a.prime_tests.iter().filter(|t| !t.is_power).map(|t| t.prime).collect();
            let all: Vec<u32> = primes_up_to(a.prime_bound).into_iter().map(|p| p as u32).collect();
            let Some(m4) = a.minus_four else { return Ok(false) };
            if tested != all || m4.is_power {
                return Ok(false);
            }
            let target = l.mul(alpha, &l.from_rational(&crate::arith::rat(-1, 4)));
            replay_power_test(l, &target, 4, &m4)
        }
        Verdict::Obstructed { obstruction } => {
            let e = obstruction.exponent() as usize;
            let ring = k.poly_ring();
            let ok_test = match obstruction {
                Obstruction::PthPower { p } => a.prime_tests.iter().any(|t| t.prime == *p && t.is_power),
                Obstruction::MinusFour => a.minus_four.is_some_and(|t| t.is_power),
            };
            let product = ring.product(cert.split.iter());
            Ok(ok_test && cert.split.len() > 1 && product == ring.substitute_power(&cert.factor, e))
        }
    }
}

/// Number of irreducible factors (with multiplicity) of P(x^n) over K for
/// each n, by direct factorization.
pub fn oracle_factor_counts(k: &NumberField, p: &KPoly, ns: &[u64], budget: &Budget) -> Result<Vec<usize>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    for &n in ns {
        if n == 0 {
            return Err(Error::NonPositive("0".into()));
        }
        budget.check_degree(deg.saturating_mul(usize::try_from(n).unwrap_or(usize::MAX)))?;
    }
    let ring = k.poly_ring();
    par::map(ns, |&n| Ok(factor_over_k(k, &ring.substitute_power(p, n as usize))?.count()))
        .into_iter()
        .collect()
}
