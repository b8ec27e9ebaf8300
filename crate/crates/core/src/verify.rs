//! Exhaustive and seeded randomized verification campaigns.
//!
//! Each suite walks a finite family of instances, checks one identity per
//! instance and reports every failure with its full input. Instances are
//! checked in parallel; results are sorted by their text encoding, so a
//! report depends only on the suite, its parameters and the seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cauchy::{
    cauchy_product_formula, factorial_cauchy, fc_det, inverse_binomial, minor_sequences, omega, rc_det,
    RestrictedCauchyMatrix, SequencePair,
};
use crate::dschur::{double_schur_comb, double_schur_det, fc_det_via_double_schur, for_each_tableau, FactorialSubstitution};
use crate::error::{Error, Result};
use crate::exact::{int, Poly, Rational};
use crate::giambelli::{
    hg_matrix, pq_sets, predicted_linear_coefficient,
    CutTags, Cutter, OutsideDecomposition,
};
use crate::rank::{enumerate_strip_decompositions, jrank, min_strip_rank, rank_code, rank_diagonal, SearchBounds};
use crate::schur::{ribbon_from_bits, ribbon_to_skew, skew_schur_spec, skew_schur_values, zrank};
use crate::shapes::{basic_shapes_up_to, Partition, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    RankAgreement,
    ZrankRank,
    CauchySign,
    CauchyMinors,
    FactorialSign,
    BinomialSign,
    DoubleSchurEquiv,
    Lemma42,
    Grank,
    HgIdentity,
    PqInvariance,
    J1Coefficients,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::RankAgreement,
        Suite::ZrankRank,
        Suite::CauchySign,
        Suite::CauchyMinors,
        Suite::FactorialSign,
        Suite::BinomialSign,
        Suite::DoubleSchurEquiv,
        Suite::Lemma42,
        Suite::Grank,
        Suite::HgIdentity,
        Suite::PqInvariance,
        Suite::J1Coefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RankAgreement => "rank-agreement",
            Suite::ZrankRank => "zrank-rank",
            Suite::CauchySign => "cauchy-sign",
            Suite::CauchyMinors => "cauchy-minors",
            Suite::FactorialSign => "factorial-sign",
            Suite::BinomialSign => "binomial-sign",
            Suite::DoubleSchurEquiv => "double-schur-equiv",
            Suite::Lemma42 => "lemma42",
            Suite::Grank => "grank",
            Suite::HgIdentity => "hg-identity",
            Suite::PqInvariance => "pq-invariance",
            Suite::J1Coefficients => "j1-coefficients",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Family bounds. Each suite reads only the fields it needs; the defaults
/// from [`Params::for_suite`] are the full-size families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub max_cells: usize,
    /// Largest matrix order in exhaustive Cauchy-type families.
    pub n: usize,
    /// Inclusive entry range for restricted Cauchy families.
    pub lo: i64,
    pub hi: i64,
    /// Random rational pairs drawn per order.
    pub random: usize,
    pub random_n: usize,
    /// Factorial families: `a ∈ 1..=max_a`, `b ∈ 1..=max_b`.
    pub max_a: i64,
    pub max_b: i64,
    /// Double Schur: `λ` ranges over a `rows × cols` box, `vars` variables.
    pub box_rows: usize,
    pub box_cols: usize,
    pub vars: usize,
    pub points: usize,
    pub max_ribbon: usize,
    pub seed: u64,
}

impl Params {
    pub fn for_suite(suite: Suite) -> Self {
        let max_cells = match suite {
            Suite::RankAgreement => 12,
            Suite::PqInvariance => 8,
            _ => 10,
        };
        let n = match suite {
            Suite::FactorialSign | Suite::BinomialSign | Suite::Lemma42 => 4,
            _ => 5,
        };
        Params {
            max_cells,
            n,
            lo: -4,
            hi: 8,
            random: 1000,
            random_n: 6,
            max_a: 10,
            max_b: 6,
            box_rows: 3,
            box_cols: 3,
            vars: 3,
            points: 20,
            max_ribbon: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub suite: String,
    pub bounds: BTreeMap<String, String>,
    pub seed: u64,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    pub failures: Vec<Failure>,
    pub wall_time_secs: f64,
}

impl CampaignReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// The report with the wall time zeroed, for comparisons.
    pub fn without_time(&self) -> CampaignReport {
        CampaignReport { wall_time_secs: 0.0, ..self.clone() }
    }
}

/// Outcome of one unit of parallel work, which may cover many instances.
#[derive(Default)]
struct Tally {
    instances: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn one(instance: impl FnOnce() -> String, outcome: std::result::Result<(), String>) -> Tally {
        let failures = match outcome {
            Ok(()) => Vec::new(),
            Err(detail) => vec![Failure { instance: instance(), detail }],
        };
        Tally { instances: 1, failures }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items.par_iter().map(f).reduce(Tally::default, Tally::merge)
}

/// Runs `suite` on `jobs` worker threads (`0` picks the rayon default).
pub fn run(suite: Suite, params: &Params, jobs: usize) -> Result<CampaignReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Parse(format!("cannot start {jobs} workers: {e}")))?;
    let start = Instant::now();
    let (bounds, tally) = pool.install(|| dispatch(suite, params));
    let mut failures = tally.failures;
    failures.sort();
    let failed = failures.len() as u64;
    Ok(CampaignReport {
        suite: suite.name().to_string(),
        bounds: bounds.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        seed: params.seed,
        instances: tally.instances,
        passed: tally.instances - failed,
        failed,
        failures,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

pub fn run_named(name: &str, params: Option<&Params>, jobs: usize) -> Result<CampaignReport> {
    let suite: Suite = name.parse()?;
    let defaults = Params::for_suite(suite);
    run(suite, params.unwrap_or(&defaults), jobs)
}

type Bounds = Vec<(&'static str, String)>;

fn dispatch(suite: Suite, p: &Params) -> (Bounds, Tally) {
    let cells = || vec![("max_cells", p.max_cells.to_string())];
    let cauchy = || {
        vec![
            ("n", p.n.to_string()),
            ("range", format!("{}..{}", p.lo, p.hi)),
            ("random", p.random.to_string()),
            ("random_n", p.random_n.to_string()),
        ]
    };
    let factorial = || vec![("n", p.n.to_string()), ("max_a", p.max_a.to_string()), ("max_b", p.max_b.to_string())];
    match suite {
        Suite::RankAgreement => (cells(), rank_agreement(p)),
        Suite::ZrankRank => (cells(), zrank_rank(p)),
        Suite::CauchySign => (cauchy(), cauchy_sign(p)),
        Suite::CauchyMinors => (cauchy()[..2].to_vec(), cauchy_minors(p)),
        Suite::FactorialSign => (factorial(), factorial_sign(p)),
        Suite::BinomialSign => (factorial(), binomial_sign(p)),
        Suite::Lemma42 => (factorial(), lemma42(p)),
        Suite::DoubleSchurEquiv => (
            vec![
                ("box", format!("{}x{}", p.box_rows, p.box_cols)),
                ("vars", p.vars.to_string()),
                ("points", p.points.to_string()),
            ],
            double_schur_equiv(p),
        ),
        Suite::Grank => (cells(), grank_suite(p)),
        Suite::HgIdentity => (cells(), hg_identity(p)),
        Suite::PqInvariance => (cells(), pq_invariance(p)),
        Suite::J1Coefficients => (vec![("max_ribbon", p.max_ribbon.to_string())], j1_coefficients(p)),
    }
}

fn shapes(p: &Params) -> Vec<SkewShape> {
    basic_shapes_up_to(p.max_cells)
}

fn bounds_for(p: &Params) -> SearchBounds {
    SearchBounds {
        min_strip_cells: p.max_cells.max(16),
        enumeration_cells: p.max_cells.max(10),
        outside_diagonals: 2 * p.max_cells,
    }
}

fn rank_agreement(p: &Params) -> Tally {
    let bounds = bounds_for(p);
    par_tally(&shapes(p), |s| {
        let outcome = (|| {
            let d = rank_diagonal(s);
            let values = [("code", rank_code(s)), ("jt", jrank(s))];
            let m = min_strip_rank(s, &bounds).map_err(|e| e.to_string())?;
            for (name, v) in values.into_iter().chain([("min-strips", m)]) {
                if v != d {
                    return Err(format!("diagonal rank {d} but {name} rank {v}"));
                }
            }
            Ok(())
        })();
        Tally::one(|| s.to_string(), outcome)
    })
}

fn zrank_rank(p: &Params) -> Tally {
    par_tally(&shapes(p), |s| {
        let (z, r) = (zrank(s), rank_diagonal(s));
        Tally::one(|| s.to_string(), if z == r { Ok(()) } else { Err(format!("zrank {z}, rank {r}")) })
    })
}

fn show_seq(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn pair_name(pair: &SequencePair) -> String {
    format!("a={} b={}", show_seq(pair.a()), show_seq(pair.b()))
}

/// Strictly decreasing `n`-subsets of `lo..=hi`.
fn decreasing(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(n: usize, below: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let mut v = below - 1;
        while v >= lo {
            cur.push(v);
            rec(n, v, lo, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    rec(n, hi + 1, lo, &mut Vec::new(), &mut out);
    out
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Every valid pair with `1 ≤ n ≤ max_n` and entries in `lo..=hi`.
fn integer_pairs(max_n: usize, lo: i64, hi: i64, factorial: bool) -> Vec<SequencePair> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let subsets = decreasing(n, lo, hi);
        for a in &subsets {
            for b in &subsets {
                let b: Vec<i64> = b.iter().rev().copied().collect();
                let pair = if factorial {
                    SequencePair::factorial(ints(a), ints(&b))
                } else {
                    SequencePair::restricted(ints(a), ints(&b))
                };
                out.extend(pair.ok());
            }
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=7).into())
}

fn random_distinct(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = Vec::with_capacity(n);
    while v.len() < n {
        let x = random_rational(rng);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v
}

fn random_pairs(p: &Params) -> Vec<SequencePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut out = Vec::new();
    for n in 1..=p.random_n {
        let mut made = 0;
        while made < p.random {
            let mut a = random_distinct(&mut rng, n);
            let mut b = random_distinct(&mut rng, n);
            a.sort_by(|x, y| y.cmp(x));
            b.sort();
            if let Ok(pair) = SequencePair::restricted(a, b) {
                out.push(pair);
                made += 1;
            }
        }
    }
    out
}

fn check_cauchy_sign(pair: &SequencePair) -> std::result::Result<(), String> {
    let m = RestrictedCauchyMatrix::from_pair(pair.clone()).map_err(|e| e.to_string())?;
    let d = rc_det(&m).map_err(|e| e.to_string())?;
    if omega(&m) == 0 {
        let closed = cauchy_product_formula(pair.a(), pair.b()).map_err(|e| e.to_string())?;
        if closed != d.value {
            return Err(format!("det {} but product formula {closed}", d.value));
        }
    }
    Ok(())
}

fn cauchy_sign(p: &Params) -> Tally {
    let mut pairs = integer_pairs(p.n, p.lo, p.hi, false);
    pairs.extend(random_pairs(p));
    par_tally(&pairs, |pair| Tally::one(|| pair_name(pair), check_cauchy_sign(pair)))
}

fn cauchy_minors(p: &Params) -> Tally {
    let pairs: Vec<SequencePair> =
        integer_pairs(p.n, p.lo, p.hi, false).into_iter().filter(SequencePair::is_irreducible).collect();
    par_tally(&pairs, |pair| {
        let m = RestrictedCauchyMatrix::from_pair(pair.clone()).expect("restricted pair");
        let n = pair.len();
        let mut t = Tally::default();
        for i in 1..=n {
            for j in 1..=n {
                let outcome = minor_sequences(&m, i, j)
                    .and_then(RestrictedCauchyMatrix::from_pair)
                    .and_then(|minor| rc_det(&minor))
                    .map(|_| ())
                    .map_err(|e| e.to_string());
                t = t.merge(Tally::one(|| format!("{} minor=({i},{j})", pair_name(pair)), outcome));
            }
        }
        t
    })
}

fn factorial_pairs(p: &Params) -> Vec<SequencePair> {
    // Integer pairs over the union range, then cut to the a and b bounds.
    integer_pairs(p.n, 1, p.max_a.max(p.max_b), true)
        .into_iter()
        .filter(|pair| {
            pair.a().iter().all(|x| *x <= int(p.max_a)) && pair.b().iter().all(|x| *x <= int(p.max_b))
        })
        .collect()
}

fn factorial_sign(p: &Params) -> Tally {
    par_tally(&factorial_pairs(p), |pair| {
        let outcome = factorial_cauchy(pair.a().to_vec(), pair.b().to_vec())
            .and_then(|m| fc_det(&m))
            .map(|_| ())
            .map_err(|e| e.to_string());
        Tally::one(|| pair_name(pair), outcome)
    })
}

fn as_u64(v: &[Rational]) -> Vec<u64> {
    v.iter().map(|x| x.to_integer().try_into().expect("small positive integer")).collect()
}

fn binomial_sign(p: &Params) -> Tally {
    par_tally(&factorial_pairs(p), |pair| {
        let outcome = inverse_binomial(&as_u64(pair.a()), &as_u64(pair.b())).map(|_| ()).map_err(|e| e.to_string());
        Tally::one(|| pair_name(pair), outcome)
    })
}

fn lemma42(p: &Params) -> Tally {
    let pairs: Vec<SequencePair> = factorial_pairs(p)
        .into_iter()
        .filter(|pair| (0..pair.len()).all(|i| (0..pair.len()).all(|j| pair.predicts_nonzero(i, j))))
        .collect();
    par_tally(&pairs, |pair| {
        let outcome = (|| {
            let direct = fc_det(&factorial_cauchy(pair.a().to_vec(), pair.b().to_vec())?)?.value;
            let via = fc_det_via_double_schur(pair.a().to_vec(), pair.b().to_vec())?;
            if direct != via {
                return Ok(Err(format!("det F = {direct}, double Schur form gives {via}")));
            }
            if !FactorialSubstitution::new(pair)?.factors_positive() {
                return Ok(Err("a tableau factor is not positive".to_string()));
            }
            Ok(Ok(()))
        })()
        .unwrap_or_else(|e: Error| Err(e.to_string()));
        Tally::one(|| pair_name(pair), outcome)
    })
}

fn double_schur_equiv(p: &Params) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut cases = Vec::new();
    for lambda in Partition::in_box(p.box_rows, p.box_cols) {
        if lambda.len() > p.vars {
            continue;
        }
        for _ in 0..p.points {
            let x = random_distinct(&mut rng, p.vars);
            let y: Vec<Rational> = (0..p.box_cols + p.vars).map(|_| random_rational(&mut rng)).collect();
            cases.push((lambda.clone(), x, y));
        }
    }
    // With y = 0 the alternant is the ordinary Schur polynomial.
    for lambda in Partition::in_box(2, 2) {
        let x = random_distinct(&mut rng, 2);
        cases.push((lambda, x, vec![Rational::zero(); 3]));
    }
    par_tally(&cases, |(lambda, x, y)| {
        let outcome = (|| {
            let d = double_schur_det(lambda, x, y).map_err(|e| e.to_string())?;
            let c = double_schur_comb(lambda, x, y).map_err(|e| e.to_string())?;
            if d != c {
                return Err(format!("alternant {d}, tableau sum {c}"));
            }
            if y.iter().all(Zero::is_zero) {
                let mut mono = Rational::zero();
                for_each_tableau(lambda, x.len(), |t| {
                    mono += t.cells().fold(Rational::one(), |acc, (_, e)| acc * &x[e - 1])
                });
                if mono != d {
                    return Err(format!("alternant {d}, monomial sum {mono}"));
                }
            }
            Ok(())
        })();
        Tally::one(|| format!("lambda={lambda} x={} y={}", show_seq(x), show_seq(y)), outcome)
    })
}

fn each_cut(s: &SkewShape, mut f: impl FnMut(u64, Result<OutsideDecomposition>)) {
    let cutter = Cutter::new(s);
    for w in 0..1u64 << (cutter.diagonals() - 1) {
        f(w, cutter.decompose(w));
    }
}

fn cut_name(s: &SkewShape, w: u64, k: usize) -> String {
    let word: String = (0..k - 1).map(|i| if w >> i & 1 == 1 { 'U' } else { 'R' }).collect();
    format!("{s} cut={word}")
}

/// Runs `check` on the endpoint data of every cut of every shape.
fn per_cut(p: &Params, check: impl Fn(&SkewShape, &CutTags) -> std::result::Result<(), String> + Sync + Send) -> Tally {
    par_tally(&shapes(p), |s| {
        let cutter = Cutter::new(s);
        let k = cutter.diagonals();
        let mut t = Tally::default();
        for w in 0..1u64 << (k - 1) {
            let outcome = cutter.tags(w).map_err(|e| e.to_string()).and_then(|tags| check(s, &tags));
            t = t.merge(Tally::one(|| cut_name(s, w, k), outcome));
        }
        t
    })
}

/// `grank = rank`, and the lowest-order matrix is a nonsingular Cauchy
/// matrix whose determinant is the lowest coefficient of `s_{λ/μ}(1^t)`.
fn grank_suite(p: &Params) -> Tally {
    let shapes = shapes(p);
    let lowest: std::collections::HashMap<&SkewShape, (usize, Rational)> = shapes
        .iter()
        .map(|s| {
            let r = rank_diagonal(s);
            (s, (r, skew_schur_spec(s).coeff(r)))
        })
        .collect();
    per_cut(p, |s, tags| {
        let (r, coeff) = &lowest[s];
        let g = tags.grank();
        if g != *r {
            return Err(format!("grank {g}, rank {r}"));
        }
        tags.check_lowest_order(coeff).map_err(|e| e.to_string())
    })
}

fn hg_identity(p: &Params) -> Tally {
    let targets: std::collections::HashMap<SkewShape, Vec<num_bigint::BigInt>> =
        shapes(p).into_iter().map(|s| {
            let v = skew_schur_values(&s, s.size() as u64);
            (s, v)
        }).collect();
    per_cut(p, |s, tags| {
        let target = &targets[s];
        let got = tags.hg_values(s.size());
        match got.iter().zip(target).position(|(a, b)| a != b) {
            Some(at) => Err(format!("at t = {at}: {} vs {}", got[at], target[at])),
            None => Ok(()),
        }
    })
}

fn pq_invariance(p: &Params) -> Tally {
    let bounds = bounds_for(p);
    par_tally(&shapes(p), |s| {
        let r = rank_diagonal(s);
        let mut t = Tally::default();
        let all = match enumerate_strip_decompositions(s, &bounds) {
            Ok(all) => all,
            Err(e) => return Tally::one(|| s.to_string(), Err(e.to_string())),
        };
        let reference = pq_sets(all[0].strips());
        let (pm, qm) = (reference.p_minus_q(), reference.q_minus_p());
        for d in &all {
            let pq = pq_sets(d.strips());
            let outcome = if pq.p_minus_q() != pm || pq.q_minus_p() != qm {
                Err(format!("P-Q = {:?}, Q-P = {:?}; first decomposition had {pm:?}, {qm:?}", pq.p_minus_q(), pq.q_minus_p()))
            } else if pm.len() != r {
                Err(format!("|P-Q| = {} but rank {r}", pm.len()))
            } else if d.len() == r && !pq.intersection().is_empty() {
                Err(format!("minimal decomposition with P and Q sharing {:?}", pq.intersection()))
            } else {
                Ok(())
            };
            let strips: Vec<String> = d.strips().iter().map(|x| x.to_string()).collect();
            t = t.merge(Tally::one(|| format!("{s} strips={}", strips.join(" ")), outcome));
        }
        let k = s.diagonals().len();
        each_cut(s, |w, d| {
            let outcome = d.map_err(|e| e.to_string()).and_then(|d| {
                let hg = hg_matrix(&d);
                let ones = (0..hg.order()).filter(|&i| hg.row_has_one(i)).count();
                let common = pq_sets(d.strips()).intersection().len();
                if ones == common {
                    Ok(())
                } else {
                    Err(format!("|P and Q| = {common} but {ones} rows hold a one"))
                }
            });
            t = std::mem::take(&mut t).merge(Tally::one(|| cut_name(s, w, k), outcome));
        });
        t
    })
}

fn j1_coefficients(p: &Params) -> Tally {
    let ribbons: Vec<(usize, u64)> =
        (1..=p.max_ribbon).flat_map(|len| (0..1u64 << (len - 1)).map(move |bits| (len, bits))).collect();
    par_tally(&ribbons, |&(len, bits)| {
        let r = ribbon_from_bits(len, bits);
        let spec: Poly = skew_schur_spec(&ribbon_to_skew(&r));
        let want = predicted_linear_coefficient(&r);
        let outcome = if spec.valuation() != Some(1) {
            Err(format!("valuation {:?}", spec.valuation()))
        } else if spec.coeff(1) != want {
            Err(format!("coefficient of t is {}, expected {want}", spec.coeff(1)))
        } else {
            Ok(())
        };
        Tally::one(|| format!("ribbon={r}"), outcome)
    })
}
