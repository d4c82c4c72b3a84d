//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Run with `cargo test -p qrank-core --test acceptance`. The process exits
//! non-zero when any criterion has an unexpected outcome.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qrank_core::arith::{rat, rat_int, Rational};
use qrank_core::classify::{
    fixed_field_rank, rank_bound_from_ratio, rationality_exponent, FixedFieldQuery,
};
use qrank_core::config::Budget;
use qrank_core::factor::factor_over_q;
use qrank_core::field::Field;
use qrank_core::groups::{
    eigenvalue_compatible, prolong, qacfa_rank, validate, CompanionPresentation, Rank, RankWitness,
};
use qrank_core::hereditary::{
    capelli_obstruction, has_root_of_unity_root, hereditary_factorization, oracle_factor_counts,
};
use qrank_core::numfield::{factor_over_k, KPoly, NfElem, NumberField};
use qrank_core::poly::{charpoly_of, companion_of, qring, Poly, QPoly};

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn run(id: &'static str, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let detail = if in_time {
        detail
    } else {
        format!("{detail}; exceeded time limit {:?}", limit.unwrap())
    };
    Outcome { id, title, pass: ok && in_time, detail, elapsed, limit }
}

fn q() -> NumberField {
    NumberField::rationals()
}

fn qp(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

fn kq(c: &[i64]) -> KPoly {
    q().embed_qpoly(&qp(c))
}

fn presentation(c: &[i64]) -> CompanionPresentation {
    CompanionPresentation::over_q(c).expect("valid presentation")
}

fn finite_rank(g: &CompanionPresentation, budget: &Budget) -> Result<(u64, u64, Vec<KPoly>), String> {
    let r = qacfa_rank(g, budget).map_err(|e| e.to_string())?;
    let Rank::Finite(k) = r.rank else { return Err(format!("rank {:?}", r.rank)) };
    let RankWitness::Hereditary(hf) = r.witness else { return Err("no hereditary witness".into()) };
    Ok((k, hf.n, hf.factors))
}

// ---------------------------------------------------------------------------
// Independent oracles used only by this suite.

/// Φ_n by repeated exact division of x^n - 1 by Φ_d, d | n, d < n.
fn cyclotomic_by_division(n: usize, memo: &mut BTreeMap<usize, QPoly>) -> QPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let r = qring();
    let mut f = r.x_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic_by_division(d, memo);
            f = r.divrem(&f, &phi).unwrap().0;
        }
    }
    memo.insert(n, f.clone());
    f
}

/// Rational root test for an integer polynomial.
fn has_rational_root(c: &[i64]) -> bool {
    let r = qring();
    let f = qp(c);
    if c[0] == 0 {
        return true;
    }
    let lead = *c.last().unwrap();
    let divisors = |n: i64| (1..=n.abs()).filter(move |d| n % d == 0);
    divisors(c[0]).any(|a| {
        divisors(lead).any(|b| {
            let x = rat(a, b);
            r.eval(&f, &x).is_zero() || r.eval(&f, &(-x)).is_zero()
        })
    })
}

/// Irreducibility over Q for degree ≤ 3 integer polynomials, by the rational
/// root test alone.
fn small_irreducible(c: &[i64]) -> bool {
    let deg = c.len() - 1;
    deg >= 1 && (deg == 1 || !has_rational_root(c))
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence.
fn faddeev_leverrier(a: &[Vec<Rational>]) -> QPoly {
    let n = a.len();
    let mul = |x: &[Vec<Rational>], y: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mul(a, &m);
        let trace: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
    }
    QPoly::new(coeffs)
}

fn random_monic(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Vec<i64> {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    c
}

/// Random monic irreducible P over Q of degree 1..=3 with coefficients in
/// [-10, 10], P(0) ≠ 0, and not cyclotomic.
fn random_test_polynomial(rng: &mut ChaCha8Rng, memo: &mut BTreeMap<usize, QPoly>) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(1..=3);
        let c = random_monic(rng, deg, 10);
        if c[0] == 0 || !small_irreducible(&c) {
            continue;
        }
        let p = qp(&c);
        let cyclotomic = (1..=18).any(|n| cyclotomic_by_division(n, memo) == p);
        if !cyclotomic {
            return c;
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria

fn criterion_1() -> (bool, String) {
    let budget = Budget::default();
    let g = presentation(&[-9, 1]);
    let (rank, n, factors) = match finite_rank(&g, &budget) {
        Ok(v) => v,
        Err(e) => return (false, e),
    };
    let counts = oracle_factor_counts(&q(), &g.char_poly, &[2, 4, 6, 8, 10], &budget).unwrap();
    let ok = rank == 2 && n == 2 && factors == vec![kq(&[-3, 1]), kq(&[3, 1])] && counts == vec![2; 5];
    (ok, format!("rank {rank}, N = {n}, oracle counts of x^(2j)-9: {counts:?}"))
}

fn criterion_2() -> (bool, String) {
    let budget = Budget::default();
    let (rank, n, factors) = match finite_rank(&presentation(&[-4, 1]), &budget) {
        Ok(v) => v,
        Err(e) => return (false, e),
    };
    let ok = rank == 2 && factors == vec![kq(&[-2, 1]), kq(&[2, 1])];
    (ok, format!("rank {rank}, N = {n}, {} factors", factors.len()))
}

fn criterion_3() -> (bool, String) {
    let budget = Budget::default();
    let g = presentation(&[1, -4, 1]);
    let v = validate(&g).unwrap();
    let ratio = g.degree_ratio().unwrap();
    let bound = rank_bound_from_ratio(&ratio).unwrap();
    let (rank, n, _) = match finite_rank(&g, &budget) {
        Ok(v) => v,
        Err(e) => return (false, e),
    };
    let ns: Vec<u64> = (1..=12).collect();
    let counts = oracle_factor_counts(&q(), &g.char_poly, &ns, &budget).unwrap();
    let ok = v.passes() && ratio.is_one() && bound.is_none() && rank == 1 && counts.iter().all(|&c| c == 1);
    (ok, format!("validate passes: {}, ratio {ratio}, bound {bound:?}, rank {rank} (N = {n}), oracle n<=12 all irreducible: {}", v.passes(), counts.iter().all(|&c| c == 1)))
}

fn criterion_4() -> (bool, String) {
    let mut checked = 0;
    for q0 in [rat_int(1), rat(1, 2), rat(3, 7)] {
        for p in [2u64, 5, 97] {
            for m in (-100i64..=100).filter(|&m| m != 0) {
                let r = fixed_field_rank(&FixedFieldQuery { q0: q0.clone(), m, characteristic: p }).unwrap();
                if r.rank != Rank::Finite(m.unsigned_abs()) {
                    return (false, format!("q0 = {q0}, m = {m}, p = {p}: {:?}", r.rank));
                }
                checked += 1;
            }
            let r = fixed_field_rank(&FixedFieldQuery { q0: q0.clone(), m: 0, characteristic: p }).unwrap();
            if r.rank != Rank::Undefined {
                return (false, format!("m = 0 gave {:?}", r.rank));
            }
            checked += 1;
        }
    }
    (true, format!("{checked} queries exact"))
}

struct BoundSurvey {
    values: usize,
    violations: Vec<String>,
    equality: BTreeMap<i64, (u64, u64)>,
}

fn bound_survey() -> BoundSurvey {
    let budget = Budget::default();
    let ds: Vec<i64> = (-50..=50).filter(|d: &i64| d.abs() >= 2).collect();
    let results = qrank_core::par::map(&ds, |&d| {
        let g = presentation(&[-d, 1]);
        let s = rationality_exponent(&rat_int(d.abs())).unwrap();
        (d, finite_rank(&g, &budget).map(|(k, _, _)| k), s)
    });
    let mut violations = Vec::new();
    for (d, rank, s) in &results {
        match rank {
            Ok(k) if *k > *s => violations.push(format!("d = {d}: rank {k} > S = {s}")),
            Ok(k) if *s == 1 && *k != 1 => violations.push(format!("d = {d}: S = 1 but rank {k}")),
            Ok(_) => {}
            Err(e) => violations.push(format!("d = {d}: {e}")),
        }
    }
    let mut equality = BTreeMap::new();
    for d in [9i64, 4, 16, 64] {
        let g = presentation(&[-d, 1]);
        let s = rationality_exponent(&rat_int(d)).unwrap();
        let k = finite_rank(&g, &budget).map(|(k, _, _)| k).unwrap_or(0);
        equality.insert(d, (k, s));
    }
    BoundSurvey { values: ds.len(), violations, equality }
}

fn criterion_5_bound(s: &BoundSurvey) -> (bool, String) {
    (s.violations.is_empty(), format!("{} values of d checked; violations: {:?}", s.values, s.violations))
}

fn criterion_5_equality(s: &BoundSurvey, ds: &[i64]) -> (bool, String) {
    let parts: Vec<String> = ds
        .iter()
        .map(|d| {
            let (k, sx) = s.equality[d];
            format!("d = {d}: rank {k}, S = {sx}")
        })
        .collect();
    let ok = ds.iter().all(|d| s.equality[d].0 == s.equality[d].1);
    (ok, parts.join("; "))
}

fn criterion_6() -> (bool, String) {
    let budget = Budget::default();
    let cap = Budget::default().with_max_degree(60);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut memo = BTreeMap::new();
    let polys: Vec<Vec<i64>> = (0..200).map(|_| random_test_polynomial(&mut rng, &mut memo)).collect();
    let results = qrank_core::par::map(&polys, |c| -> Result<(usize, usize), String> {
        let k = q();
        let p = kq(c);
        let deg = c.len() - 1;
        let hf = hereditary_factorization(&k, &p, &budget).map_err(|e| format!("{c:?}: {e}"))?;
        let kf = hf.factors.len();
        let ns: Vec<u64> = [hf.n, 2 * hf.n, 3 * hf.n].into_iter().filter(|&n| deg * n as usize <= 60).collect();
        let stable = oracle_factor_counts(&k, &p, &ns, &cap).map_err(|e| e.to_string())?;
        if stable.iter().any(|&x| x != kf) {
            return Err(format!("{c:?}: N = {}, k = {kf}, oracle {stable:?}", hf.n));
        }
        let ob = capelli_obstruction(&k, &p, &budget).map_err(|e| e.to_string())?;
        let ns: Vec<u64> = (2..=24).collect();
        let counts = oracle_factor_counts(&k, &p, &ns, &budget).map_err(|e| e.to_string())?;
        let splits_somewhere = counts.iter().any(|&x| x > 1);
        let agrees = match ob {
            None => !splits_somewhere,
            Some(o) => counts[(o.exponent() - 2) as usize] > 1,
        };
        if !agrees {
            return Err(format!("{c:?}: verdict {ob:?}, counts {counts:?}"));
        }
        Ok((ns.len() + 1, usize::from(ob.is_some())))
    });
    let mut errors = Vec::new();
    let mut obstructed = 0;
    for r in results {
        match r {
            Ok((_, o)) => obstructed += o,
            Err(e) => errors.push(e),
        }
    }
    let ok = errors.is_empty();
    (ok, format!("200 polynomials, {obstructed} obstructed; disagreements: {}{}", errors.len(), if ok { String::new() } else { format!(" {:?}", &errors[..errors.len().min(3)]) }))
}

fn criterion_7() -> (bool, String) {
    let mut memo = BTreeMap::new();
    for n in 1..=30usize {
        let phi = cyclotomic_by_division(n, &mut memo);
        if !has_root_of_unity_root(&q(), &q().embed_qpoly(&phi)).unwrap() {
            return (false, format!("Φ_{n} not detected"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cyclo_list: Vec<QPoly> = (1..=60).map(|n| cyclotomic_by_division(n, &mut memo)).collect();
    cyclo_list.retain(|p| p.degree().unwrap() <= 6);
    let mut tested = 0;
    while tested < 200 {
        let deg = rng.gen_range(1..=6);
        let c = random_monic(&mut rng, deg, 6);
        let p = qp(&c);
        if c[0] == 0 || cyclo_list.contains(&p) {
            continue;
        }
        if !factor_over_q(&p).unwrap().is_irreducible() {
            continue;
        }
        if has_root_of_unity_root(&q(), &q().embed_qpoly(&p)).unwrap() {
            return (false, format!("{c:?} wrongly flagged"));
        }
        tested += 1;
    }
    (true, format!("Φ_1..Φ_30 detected; {tested} non-cyclotomic irreducibles rejected"))
}

/// Known irreducibles over a quadratic field K = Q(√D), D squarefree.
struct QuadField {
    name: &'static str,
    field: NumberField,
    d: i64,
}

fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    &n * &n == *r.numer() && &d * &d == *r.denom()
}

impl QuadField {
    /// c ∈ Q is a square in Q(√D) iff c or D·c is a rational square.
    fn rational_is_square(&self, c: &Rational) -> bool {
        is_rational_square(c) || is_rational_square(&(c * Rational::from_integer(self.d.into())))
    }

    fn random_elem(&self, rng: &mut ChaCha8Rng) -> NfElem {
        let k = &self.field;
        let coords: Vec<Rational> = (0..k.degree()).map(|_| rat_int(rng.gen_range(-4..=4))).collect();
        k.elem(coords)
    }

    /// A random monic polynomial known to be irreducible over K.
    fn random_irreducible(&self, rng: &mut ChaCha8Rng) -> KPoly {
        let k = &self.field;
        let ring = k.poly_ring();
        let shift = self.random_elem(rng);
        loop {
            let base: KPoly = match rng.gen_range(0..3) {
                0 => Poly::new(vec![k.neg(&shift), k.one()]),
                1 => {
                    let c = rat_int(rng.gen_range(-12..=12));
                    if c.is_zero() || (!self.field.is_rationals() && self.rational_is_square(&c)) {
                        continue;
                    }
                    if self.field.is_rationals() && is_rational_square(&c) {
                        continue;
                    }
                    Poly::new(vec![k.from_rational(&-c), k.zero(), k.one()])
                }
                _ => {
                    // x^3 - c is irreducible over K iff c is not a rational cube
                    let c: i64 = rng.gen_range(-12..=12);
                    if [-8, -1, 0, 1, 8].contains(&c) {
                        continue;
                    }
                    Poly::new(vec![k.from_int(-c), k.zero(), k.zero(), k.one()])
                }
            };
            return if base.degree() == Some(1) { base } else { ring.shift(&base, &shift) };
        }
    }
}

fn criterion_8() -> (bool, String) {
    let fields = [
        QuadField { name: "Q", field: q(), d: 1 },
        QuadField { name: "Q(i)", field: NumberField::new(qp(&[1, 0, 1])).unwrap(), d: -1 },
        QuadField { name: "Q(√2)", field: NumberField::new(qp(&[-2, 0, 1])).unwrap(), d: 2 },
        QuadField { name: "Q(√-3)", field: NumberField::new(qp(&[3, 0, 1])).unwrap(), d: -3 },
    ];
    let mut summary = Vec::new();
    let mut all_ok = true;
    for (fi, qf) in fields.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(80 + fi as u64);
        let cases: Vec<Vec<KPoly>> = (0..500)
            .map(|_| {
                let count = rng.gen_range(1..=3);
                (0..count).map(|_| qf.random_irreducible(&mut rng)).collect()
            })
            .collect();
        let k = &qf.field;
        let ring = k.poly_ring();
        let failures: usize = qrank_core::par::map(&cases, |parts| {
            let product = ring.product(parts.iter());
            let mut expected: BTreeMap<Vec<NfElem>, u32> = BTreeMap::new();
            for p in parts {
                *expected.entry(p.coeffs().to_vec()).or_default() += 1;
            }
            let got = factor_over_k(k, &product).unwrap();
            let got: BTreeMap<Vec<NfElem>, u32> =
                got.factors.iter().map(|(f, m)| (f.coeffs().to_vec(), *m)).collect();
            usize::from(got != expected)
        })
        .into_iter()
        .sum();
        all_ok &= failures == 0;
        summary.push(format!("{}: {failures}/500 mismatches", qf.name));
    }
    (all_ok, summary.join("; "))
}

fn criterion_9() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let k = q();
    let ring = k.poly_ring();
    let mut checked = 0;
    while checked < 100 {
        let m = rng.gen_range(1..=4usize);
        let n = rng.gen_range(1..=24 / m);
        let c = random_monic(&mut rng, m, 9);
        if c[0] == 0 {
            continue;
        }
        let g = presentation(&c);
        let long = match prolong(&g, n) {
            Ok(l) => l,
            Err(e) => return (false, format!("{c:?}, n = {n}: {e}")),
        };
        // entry law, checked directly on the last rows
        let row = g.last_row();
        let long_row = long.last_row();
        for (idx, e) in long_row.iter().enumerate() {
            let want = if idx % n == 0 { row[idx / n].clone() } else { k.zero() };
            if *e != want {
                return (false, format!("{c:?}, n = {n}: entry {idx}"));
            }
        }
        // charpoly round trip and an independent determinant
        let comp = companion_of(&ring, &long.char_poly).unwrap();
        let expected = ring.substitute_power(&g.char_poly, n);
        if charpoly_of(&ring, &comp) != expected {
            return (false, format!("{c:?}, n = {n}: round trip"));
        }
        let dense: Vec<Vec<Rational>> =
            comp.to_dense(&k).into_iter().map(|r| r.into_iter().map(|e| e.coords[0].clone()).collect()).collect();
        if k.embed_qpoly(&faddeev_leverrier(&dense)) != expected {
            return (false, format!("{c:?}, n = {n}: determinant"));
        }
        checked += 1;
    }
    (true, format!("{checked} prolongations, m·n ≤ 24"))
}

fn criterion_10() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut memo = BTreeMap::new();
    let k = q();
    let ring = k.poly_ring();
    let mut factors_checked = 0;
    for _ in 0..40 {
        let c = random_test_polynomial(&mut rng, &mut memo);
        let n = rng.gen_range(1..=8usize);
        let g = presentation(&c);
        let target = ring.substitute_power(&g.char_poly, n);
        for (f, _) in factor_over_k(&k, &target).unwrap().factors {
            if !eigenvalue_compatible(&f, &g, n).unwrap() {
                return (false, format!("factor of {c:?}(x^{n}) rejected"));
            }
            factors_checked += 1;
        }
    }
    let mut non_factors = 0;
    while non_factors < 100 {
        let c = random_test_polynomial(&mut rng, &mut memo);
        let n = rng.gen_range(1..=6usize);
        let deg = rng.gen_range(1..=3);
        let cand = random_monic(&mut rng, deg, 10);
        if !small_irreducible(&cand) {
            continue;
        }
        let g = presentation(&c);
        let target = ring.substitute_power(&g.char_poly, n);
        // skip genuine factors, decided by long division
        if ring.divrem(&target, &kq(&cand)).unwrap().1.is_zero() {
            continue;
        }
        if eigenvalue_compatible(&kq(&cand), &g, n).unwrap() {
            return (false, format!("non-factor {cand:?} of {c:?}(x^{n}) accepted"));
        }
        non_factors += 1;
    }
    (true, format!("{factors_checked} factors accepted, {non_factors} non-factors rejected"))
}

// ---------------------------------------------------------------------------

/// Sub-checks that cannot pass because the stated expectation is false;
/// they are still run and reported, and must keep failing.
const KNOWN_UNATTAINABLE: &[&str] = &["5c"];

fn main() {
    let secs = Duration::from_secs;
    let mut outcomes = vec![
        run("1", "qacfa_rank(x-9) = 2, N = 2, factors x±3, oracle confirms", Some(secs(1)), criterion_1),
        run("2", "qacfa_rank(x-4) = 2, factors x±2", Some(secs(1)), criterion_2),
        run("3", "x^2-4x+1: valid, ratio 1, rank 1, oracle irreducible to n = 12", Some(secs(10)), criterion_3),
        run("4", "fixed_field_rank = |m|, m = 0 undefined", None, criterion_4),
    ];
    let start5 = Instant::now();
    let survey = bound_survey();
    let survey_time = start5.elapsed();
    let limit5 = secs(60);
    let mut o5a = run("5a", "qacfa_rank(x-d) <= S(|d|) for 2 <= |d| <= 50; S = 1 forces rank 1", None, || criterion_5_bound(&survey));
    o5a.elapsed = survey_time;
    o5a.limit = Some(limit5);
    if survey_time > limit5 {
        o5a.pass = false;
        o5a.detail.push_str("; exceeded time limit");
    }
    outcomes.push(o5a);
    outcomes.push(run("5b", "equality rank = S for d in {9, 4, 16}", None, || criterion_5_equality(&survey, &[9, 4, 16])));
    outcomes.push(run("5c", "equality rank = S for d = 64", None, || criterion_5_equality(&survey, &[64])));
    outcomes.push(run("6", "hereditary factorization and Capelli verdicts agree with the oracle", Some(secs(600)), criterion_6));
    outcomes.push(run("7", "cyclotomic detection", None, criterion_7));
    outcomes.push(run("8", "re-factoring products of known irreducibles over Q, Q(i), Q(√2), Q(√-3)", None, criterion_8));
    outcomes.push(run("9", "prolongation entry law and charpoly round trip", None, criterion_9));
    outcomes.push(run("10", "eigenvalue compatibility of factors and non-factors", None, criterion_10));

    println!();
    for o in &outcomes {
        let limit = o.limit.map(|l| format!(" / limit {l:?}")).unwrap_or_default();
        let known = if KNOWN_UNATTAINABLE.contains(&o.id) { " [expected: unattainable]" } else { "" };
        println!(
            "{} [{}] {} ({:.2?}{limit}){known}\n      {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed,
            o.detail
        );
    }
    let unexpected: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_UNATTAINABLE.contains(&o.id))
        .map(|o| o.id)
        .collect();
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria have their expected outcome");
}
