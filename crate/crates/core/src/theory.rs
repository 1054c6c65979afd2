//! Exact verification of the probabilistic statements behind lifting.
//!
//! Length-4 chains over circulant size `L0 = 2q` are modeled by tuples
//! `(a, b, c, d)` drawn uniformly from `{0, ..., 2q-1}^4`; the chain forms a
//! cycle (`C0`) when `a - b - c + d == 0 (mod 2q)`, and the lifted chain for
//! `L1 = q` forms a cycle (`C1`) under the analogous condition mod `q`.
//! Everything that can be settled by exhaustive enumeration over tuples, or
//! over the independent-column cycle-survival model, is computed in exact
//! rational arithmetic; Monte Carlo is used only for the unbounded-`y`
//! asymptotics, with a fixed seed for bit-exact reproducibility.

use num::integer::{binomial, gcd};
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Exact rational number used for all probability results.
pub type Rational = BigRational;

/// Outcome budget for exact model enumeration.
const ENUMERATION_BUDGET: u128 = 10_000_000;

fn check_q(q: i64) -> Result<()> {
    if q <= 2 {
        return Err(Error::BadQ { q });
    }
    Ok(())
}

fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn int(value: u64) -> BigInt {
    BigInt::from(value)
}

/// `p_fl = 5 / (4(2q - 1))`: probability that a non-cycle chain becomes a
/// cycle after floor lifting.
pub fn p_floor(q: i64) -> Result<Rational> {
    check_q(q)?;
    Ok(rat(5, 4 * (2 * q - 1)))
}

/// `p_mod = 1 / (2q - 1)`: the same probability for modulo lifting.
pub fn p_modulo(q: i64) -> Result<Rational> {
    check_q(q)?;
    Ok(rat(1, 2 * q - 1))
}

/// Conditional cycle-survival probabilities of one lifting method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCycleProbabilities {
    /// `Pr(C1 | C0)`.
    pub given_cycle: Rational,
    /// `Pr(C1 | not C0)`.
    pub given_non_cycle: Rational,
}

fn floor_value(e: i64, q: i64) -> i64 {
    (q as i128 * e as i128 / (2 * q) as i128) as i64
}

fn modulo_value(e: i64, q: i64) -> i64 {
    e.rem_euclid(q)
}

fn fsm_value(e: i64, q: i64, r: i64) -> i64 {
    let l0 = (2 * q) as i128;
    let scaled = (r as i128 * e as i128).rem_euclid(l0);
    (q as i128 * scaled / l0) as i64
}

/// Counts `(|C0|, |C1 and C0|, |C1 and not C0|)` over all `(2q)^4` tuples for
/// the lift given by the lookup table.
fn conditional_counts(q: i64, lifted: &[i64]) -> (u64, u64, u64) {
    let l0 = 2 * q;
    let mut c0 = 0u64;
    let mut c0_c1 = 0u64;
    let mut not_c0_c1 = 0u64;
    for a in 0..l0 {
        for b in 0..l0 {
            for c in 0..l0 {
                let partial = a - b - c;
                let lifted_partial =
                    lifted[a as usize] - lifted[b as usize] - lifted[c as usize];
                for d in 0..l0 {
                    let was = (partial + d).rem_euclid(l0) == 0;
                    let now = (lifted_partial + lifted[d as usize]).rem_euclid(q) == 0;
                    if was {
                        c0 += 1;
                        if now {
                            c0_c1 += 1;
                        }
                    } else if now {
                        not_c0_c1 += 1;
                    }
                }
            }
        }
    }
    (c0, c0_c1, not_c0_c1)
}

fn conditionals_from(q: i64, lifted: Vec<i64>) -> LiftCycleProbabilities {
    let (c0, c0_c1, not_c0_c1) = conditional_counts(q, &lifted);
    let total = (2 * q as u128).pow(4);
    let non_c0 = (total - c0 as u128) as u64;
    LiftCycleProbabilities {
        given_cycle: Rational::new(int(c0_c1), int(c0)),
        given_non_cycle: Rational::new(int(not_c0_c1), int(non_c0)),
    }
}

/// Exhaustive conditional probabilities for floor lifting; must equal
/// `(3/4, 5/(4(2q-1)))`.
pub fn brute_force_floor(q: i64) -> Result<LiftCycleProbabilities> {
    check_q(q)?;
    let table: Vec<i64> = (0..2 * q).map(|e| floor_value(e, q)).collect();
    Ok(conditionals_from(q, table))
}

/// Exhaustive conditional probabilities for modulo lifting; must equal
/// `(1, 1/(2q-1))`.
pub fn brute_force_modulo(q: i64) -> Result<LiftCycleProbabilities> {
    check_q(q)?;
    let table: Vec<i64> = (0..2 * q).map(|e| modulo_value(e, q)).collect();
    Ok(conditionals_from(q, table))
}

/// A precondition of the two-scale statement that a pair fails to meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairViolation {
    /// The two scale values are equal.
    NotDistinct,
    /// A scale value outside `0 < r < 2q`.
    OutOfRange { scale: i64 },
    /// A scale value sharing a factor with `2q`.
    NotCoprime { scale: i64 },
    /// `r1 == r2 * (q+1) (mod 2q)` (equivalently with the roles swapped).
    PairedScales,
}

/// Tuple count for `C1(r1) and C1(r2) and not C0`, with any violated
/// preconditions reported alongside. Admissible pairs must count zero;
/// violating pairs are still counted so negative tests can observe nonzero
/// results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsmPairCount {
    pub count: u64,
    pub violations: Vec<PairViolation>,
}

pub fn brute_force_fsm_pair(q: i64, r1: i64, r2: i64) -> Result<FsmPairCount> {
    check_q(q)?;
    let l0 = 2 * q;
    let mut violations = Vec::new();
    if r1 == r2 {
        violations.push(PairViolation::NotDistinct);
    }
    for r in [r1, r2] {
        if r <= 0 || r >= l0 {
            violations.push(PairViolation::OutOfRange { scale: r });
        } else if gcd(r, l0) != 1 {
            violations.push(PairViolation::NotCoprime { scale: r });
        }
    }
    if (r1 * (q + 1)).rem_euclid(l0) == r2.rem_euclid(l0)
        || (r2 * (q + 1)).rem_euclid(l0) == r1.rem_euclid(l0)
    {
        violations.push(PairViolation::PairedScales);
    }

    let t1: Vec<i64> = (0..l0).map(|e| fsm_value(e, q, r1)).collect();
    let t2: Vec<i64> = (0..l0).map(|e| fsm_value(e, q, r2)).collect();
    let mut count = 0u64;
    for a in 0..l0 {
        for b in 0..l0 {
            for c in 0..l0 {
                let partial = a - b - c;
                let p1 = t1[a as usize] - t1[b as usize] - t1[c as usize];
                let p2 = t2[a as usize] - t2[b as usize] - t2[c as usize];
                for d in 0..l0 {
                    if (partial + d).rem_euclid(l0) != 0
                        && (p1 + t1[d as usize]).rem_euclid(q) == 0
                        && (p2 + t2[d as usize]).rem_euclid(q) == 0
                    {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(FsmPairCount { count, violations })
}

/// Counts tuples in `C0` where `C1(r)` and `C1(1)` disagree, over every unit
/// scale `r`. Zero confirms that within the cycle slice every coprime scale
/// behaves like `r = 1`.
pub fn fsm_c0_slice_mismatches(q: i64) -> Result<u64> {
    check_q(q)?;
    let l0 = 2 * q;
    let base: Vec<i64> = (0..l0).map(|e| fsm_value(e, q, 1)).collect();
    let mut mismatches = 0u64;
    for r in 2..l0 {
        if gcd(r, l0) != 1 {
            continue;
        }
        let t: Vec<i64> = (0..l0).map(|e| fsm_value(e, q, r)).collect();
        for a in 0..l0 {
            for b in 0..l0 {
                for c in 0..l0 {
                    for d in 0..l0 {
                        if (a - b - c + d).rem_euclid(l0) != 0 {
                            continue;
                        }
                        let c1_base = (base[a as usize] - base[b as usize] - base[c as usize]
                            + base[d as usize])
                            .rem_euclid(q)
                            == 0;
                        let c1_r = (t[a as usize] - t[b as usize] - t[c as usize]
                            + t[d as usize])
                            .rem_euclid(q)
                            == 0;
                        if c1_base != c1_r {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(mismatches)
}

/// Expected cycle counts after floor and modulo lifting for a matrix with
/// `x` cycle-forming and `y` non-cycle chains of length 4:
/// `EC_fl = (3/4)x + p_fl y` and `EC_mod = x + p_mod y`.
pub fn expectations_thm1(q: i64, x: u64, y: u64) -> Result<(Rational, Rational)> {
    let p_fl = p_floor(q)?;
    let p_mod = p_modulo(q)?;
    let ec_fl = rat(3, 4) * Rational::from(int(x)) + p_fl * Rational::from(int(y));
    let ec_mod = Rational::from(int(x)) + p_mod * Rational::from(int(y));
    Ok((ec_fl, ec_mod))
}

/// The printed closed form for `EC_fsml(2)`:
/// `3x/4 + sum_n (n/2)(1 - C(n, floor(n/2)) / 2^n) (2p)^n (1-2p)^(y-n) C(y,n)`.
///
/// Its inner term matches the exact `E min(Y, n-Y)` only for even `n`; see
/// `ec_fsml2_conditional` for the enumerated inner term.
pub fn ec_fsml2_formula(q: i64, x: u64, y: u64) -> Result<Rational> {
    let p = p_floor(q)?;
    Ok(rat(3, 4) * Rational::from(int(x)) + fsml2_sum(&p, y, printed_min_split))
}

/// Same outer sum as the printed formula, but with `E min(Y, n-Y)` for
/// `Y ~ B(n, 1/2)` computed by exact enumeration. By the law of total
/// expectation this equals the direct model enumeration for `N_r = 2`.
pub fn ec_fsml2_conditional(q: i64, x: u64, y: u64) -> Result<Rational> {
    let p = p_floor(q)?;
    Ok(rat(3, 4) * Rational::from(int(x)) + fsml2_sum(&p, y, enumerated_min_split))
}

fn fsml2_sum(p: &Rational, y: u64, inner: impl Fn(u64) -> Rational) -> Rational {
    let one = Rational::one();
    let two_p = p * Rational::from(BigInt::from(2));
    let rest = &one - &two_p;
    let mut total = Rational::zero();
    for n in 0..=y {
        let weight = two_p.pow(n as i32)
            * rest.pow((y - n) as i32)
            * Rational::from(binomial(int(y), int(n)));
        total += inner(n) * weight;
    }
    total
}

/// `(n/2)(1 - C(n, floor(n/2)) / 2^n)`.
fn printed_min_split(n: u64) -> Rational {
    let one = Rational::one();
    let central = Rational::new(binomial(int(n), int(n / 2)), BigInt::one() << n);
    Rational::new(int(n), BigInt::from(2)) * (one - central)
}

/// Exact `E min(Y, n-Y)` for `Y ~ B(n, 1/2)` by enumeration.
fn enumerated_min_split(n: u64) -> Rational {
    let mut numer = BigInt::zero();
    for k in 0..=n {
        numer += binomial(int(n), int(k)) * int(k.min(n - k));
    }
    Rational::new(numer, BigInt::one() << n)
}

/// Exact results of enumerating the independent-column model: each of `y`
/// columns lands in row `i` with probability `p_fl` for each of the `N_r`
/// rows, or in no row with probability `1 - N_r p_fl`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsmModelSummary {
    /// Number of multinomial outcomes enumerated.
    pub outcomes: u64,
    /// `E min(X_1, ..., X_{N_r})`.
    pub expected_min: Rational,
    /// `Pr(min(X_1, ..., X_{N_r}) = 0)`: some row of the survival matrix is
    /// empty, i.e. at least one scale value kills every surviving chain.
    pub prob_min_zero: Rational,
}

fn check_family(q: i64, n_r: usize) -> Result<Rational> {
    let p = p_floor(q)?;
    if n_r < 1 {
        return Err(Error::BadFamilySize { n_r, q });
    }
    let load = &p * Rational::from(int(n_r as u64));
    if load > Rational::one() {
        return Err(Error::BadFamilySize { n_r, q });
    }
    Ok(p)
}

/// Enumerates the model distribution exactly. Refuses when the number of
/// outcomes `C(y + N_r, N_r)` exceeds the budget of 10^7; use Monte Carlo
/// beyond that.
pub fn fsm_model_enumerate(q: i64, y: u64, n_r: usize) -> Result<FsmModelSummary> {
    let p = check_family(q, n_r)?;
    let needed = binomial(int(y + n_r as u64), int(n_r as u64));
    if needed > BigInt::from(ENUMERATION_BUDGET) {
        return Err(Error::EnumerationBudget {
            needed: needed.to_u128().unwrap_or(u128::MAX),
            budget: ENUMERATION_BUDGET,
        });
    }

    let one = Rational::one();
    let none_prob = &one - &(&p * Rational::from(int(n_r as u64)));
    let p_pows = powers(&p, y);
    let none_pows = powers(&none_prob, y);

    let mut acc = ModelAccumulator {
        n_r,
        y,
        p_pows: &p_pows,
        none_pows: &none_pows,
        outcomes: 0,
        expected_min: Rational::zero(),
        prob_min_zero: Rational::zero(),
    };
    acc.descend(0, y, BigInt::one(), u64::MAX);
    Ok(FsmModelSummary {
        outcomes: acc.outcomes,
        expected_min: acc.expected_min,
        prob_min_zero: acc.prob_min_zero,
    })
}

fn powers(base: &Rational, up_to: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    out.push(Rational::one());
    for i in 1..=up_to as usize {
        let next = &out[i - 1] * base;
        out.push(next);
    }
    out
}

struct ModelAccumulator<'a> {
    n_r: usize,
    y: u64,
    p_pows: &'a [Rational],
    none_pows: &'a [Rational],
    outcomes: u64,
    expected_min: Rational,
    prob_min_zero: Rational,
}

impl ModelAccumulator<'_> {
    fn descend(&mut self, level: usize, remaining: u64, coeff: BigInt, min_so_far: u64) {
        if level == self.n_r {
            let spent = (self.y - remaining) as usize;
            let prob = Rational::from(coeff)
                * &self.p_pows[spent]
                * &self.none_pows[remaining as usize];
            if min_so_far == 0 {
                self.prob_min_zero += prob;
            } else {
                self.expected_min += prob * Rational::from(int(min_so_far));
            }
            self.outcomes += 1;
            return;
        }
        for x in 0..=remaining {
            let c = coeff.clone() * binomial(int(remaining), int(x));
            self.descend(level + 1, remaining - x, c, min_so_far.min(x));
        }
    }
}

/// Ground-truth `EC_fsml(N_r) = 3x/4 + E min(X_1, ..., X_{N_r})` by exact
/// model enumeration.
pub fn ec_fsml_exact(q: i64, x: u64, y: u64, n_r: usize) -> Result<Rational> {
    let summary = fsm_model_enumerate(q, y, n_r)?;
    Ok(rat(3, 4) * Rational::from(int(x)) + summary.expected_min)
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Simulates the model and estimates `EC_fsml(N_r)`. Deterministic for a
/// given `(seed, trials)` pair.
pub fn ec_fsml_montecarlo(
    q: i64,
    x: u64,
    y: u64,
    n_r: usize,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let p = check_family(q, n_r)?;
    if trials < 1 {
        return Err(Error::NoTrials);
    }
    let p = p.to_f64().expect("p_fl fits in f64");
    let threshold = n_r as f64 * p;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; n_r];
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..trials {
        counts.fill(0);
        for _ in 0..y {
            let u: f64 = rng.gen();
            if u < threshold {
                let row = ((u / p) as usize).min(n_r - 1);
                counts[row] += 1;
            }
        }
        let min = *counts.iter().min().expect("n_r >= 1") as f64;
        sum += min;
        sum_sq += min * min;
    }
    let n = trials as f64;
    let mean_min = sum / n;
    let variance = if trials > 1 {
        ((sum_sq / n - mean_min * mean_min) * n / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        mean: 0.75 * x as f64 + mean_min,
        stderr: (variance / n).sqrt(),
        trials,
    })
}

/// Probabilities that lifting a 4-cycle-free matrix stays free of 4-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsenceProbabilities {
    /// `(1 - p_mod)^y`.
    pub p_mod: Rational,
    /// `(1 - p_fl)^y`.
    pub p_fl: Rational,
    /// `sum_{k=1}^{N_r} (-1)^(k-1) C(N_r, k) (1 - k p_fl)^y`: by
    /// inclusion-exclusion, the probability that at least one scale value of
    /// the family leaves no 4-cycle.
    pub p_fsml: Rational,
}

pub fn absence_probabilities(q: i64, y: u64, n_r: usize) -> Result<AbsenceProbabilities> {
    let p_fl = check_family(q, n_r)?;
    let p_mod = p_modulo(q)?;
    let one = Rational::one();
    let mut p_fsml = Rational::zero();
    for k in 1..=n_r as u64 {
        let survive = (&one - &(&p_fl * Rational::from(int(k)))).pow(y as i32);
        let term = Rational::from(binomial(int(n_r as u64), int(k))) * survive;
        if k % 2 == 1 {
            p_fsml += term;
        } else {
            p_fsml -= term;
        }
    }
    Ok(AbsenceProbabilities {
        p_mod: (&one - &p_mod).pow(y as i32),
        p_fl: (&one - &p_fl).pow(y as i32),
        p_fsml,
    })
}

/// Checks `sum_{k=0}^{n} (-1)^k C(n,k) g(k) == 0` in exact arithmetic for the
/// polynomial with the given coefficients (constant term first). The
/// identity holds whenever `deg(g) < n`; callers may pass higher degrees to
/// observe it fail.
pub fn lemma1_check(n: u32, coefficients: &[BigInt]) -> bool {
    let mut sum = BigInt::zero();
    for k in 0..=n {
        let kval = BigInt::from(k);
        let mut g = BigInt::zero();
        for c in coefficients.iter().rev() {
            g = g * &kval + c;
        }
        let term = binomial(BigInt::from(n), BigInt::from(k)) * g;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.is_zero()
}

/// Parameters of the probabilistic model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoryParams {
    /// Base circulant size is `2q`, target is `q`.
    pub q: i64,
    /// Scale-family size.
    pub n_r: usize,
    /// Cycle-forming chains of length 4 in the base matrix.
    pub x: u64,
    /// Non-cycle chains of length 4 in the base matrix.
    pub y: u64,
    /// Monte Carlo trials.
    pub trials: u64,
    /// Monte Carlo seed.
    pub seed: u64,
}

/// Every closed-form and enumerated quantity of the model for one parameter
/// set, in exact rationals except for the Monte Carlo estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryReport {
    pub p_fl: Rational,
    pub p_mod: Rational,
    pub floor: LiftCycleProbabilities,
    pub modulo: LiftCycleProbabilities,
    pub ec_fl: Rational,
    pub ec_mod: Rational,
    pub ec_fsml2_formula: Rational,
    /// Ground truth by model enumeration; `None` when above the budget.
    pub ec_fsml_exact: Option<Rational>,
    pub ec_fsml_mc: McEstimate,
    pub absence: AbsenceProbabilities,
}

/// Computes the full report for one parameter set.
pub fn theory_report(params: &TheoryParams) -> Result<TheoryReport> {
    let (ec_fl, ec_mod) = expectations_thm1(params.q, params.x, params.y)?;
    let ec_fsml_exact = match ec_fsml_exact(params.q, params.x, params.y, params.n_r) {
        Ok(v) => Some(v),
        Err(Error::EnumerationBudget { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TheoryReport {
        p_fl: p_floor(params.q)?,
        p_mod: p_modulo(params.q)?,
        floor: brute_force_floor(params.q)?,
        modulo: brute_force_modulo(params.q)?,
        ec_fl,
        ec_mod,
        ec_fsml2_formula: ec_fsml2_formula(params.q, params.x, params.y)?,
        ec_fsml_exact,
        ec_fsml_mc: ec_fsml_montecarlo(
            params.q,
            params.x,
            params.y,
            params.n_r,
            params.trials,
            params.seed,
        )?,
        absence: absence_probabilities(params.q, params.y, params.n_r)?,
    })
}
