//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Campaign bounds are pinned here rather than taken from `Params` defaults,
//! so a change of defaults cannot silently shrink a family.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use skewrank::exact::Rational;
use skewrank::rank::{jrank, jt_matrix, min_strip_rank, rank_code, rank_diagonal, SearchBounds};
use skewrank::schur::{skew_schur_spec, zrank};
use skewrank::shapes::basic_shapes_up_to;
use skewrank::verify::{self, CampaignReport, Params, Suite};
use skewrank::{Cell, SkewShape};

struct Outcome {
    pass: bool,
    detail: String,
}

fn shape(text: &str) -> SkewShape {
    text.parse().expect("shape literal")
}

fn figures() -> Outcome {
    let mut problems = Vec::new();
    let bounds = SearchBounds::default();
    for text in ["6,5,5,3/2,1,1", "5,4,3,2/2,1,1"] {
        let s = shape(text);
        let values = [
            rank_diagonal(&s),
            rank_code(&s),
            jrank(&s),
            min_strip_rank(&s, &bounds).expect("small shape"),
            zrank(&s),
        ];
        if values != [3; 5] {
            problems.push(format!("{text}: ranks {values:?}"));
        }
    }

    let code = shape("5,4,3,2/2,1,1").reduced_code();
    if (code.top_string().as_str(), code.bottom_string().as_str()) != ("101101000", "001010101") {
        problems.push(format!("reduced code {} / {}", code.top_string(), code.bottom_string()));
    }

    let jt = jt_matrix(&shape("6,5,5,3/2,1,1"));
    let want = [[4, 6, 7, 9], [2, 4, 5, 7], [1, 3, 4, 6], [-2, 0, 1, 3]];
    let got: Vec<Vec<i64>> = (0..jt.order()).map(|i| jt.subscripts().row(i).to_vec()).collect();
    if got != want {
        problems.push(format!("Jacobi-Trudi subscripts {got:?}"));
    }
    let ones: Vec<bool> = (0..4).map(|i| jt.row_has_one(i)).collect();
    if ones != [false, false, false, true] {
        problems.push(format!("rows containing 1: {ones:?}"));
    }
    if problems.is_empty() {
        return Outcome { pass: true, detail: "ranks, reduced code and Jacobi-Trudi matrix exact".into() };
    }
    Outcome { pass: false, detail: problems.join("; ") }
}

fn campaign(suite: Suite, tune: impl FnOnce(&mut Params)) -> CampaignReport {
    let mut params = Params::for_suite(suite);
    params.seed = 0;
    tune(&mut params);
    match verify::run(suite, &params, 0) {
        Ok(r) => r,
        Err(e) => panic!("{suite}: {e}"),
    }
}

fn campaigns(reports: &[CampaignReport], limit: Option<Duration>) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for r in reports {
        pass &= r.ok() && r.instances > 0;
        let bounds: Vec<String> = r.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.push(format!(
            "{} {}/{} passed [{}] {:.1}s",
            r.suite,
            r.passed,
            r.instances,
            bounds.join(" "),
            r.wall_time_secs
        ));
        if let Some(f) = r.failures.first() {
            parts.push(format!("first failure {}: {}", f.instance, f.detail));
        }
    }
    let total: f64 = reports.iter().map(|r| r.wall_time_secs).sum();
    if let Some(limit) = limit {
        if total > limit.as_secs_f64() {
            pass = false;
            parts.push(format!("over the {}s budget", limit.as_secs()));
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

/// Semistandard fillings of `s` with entries in `1..=t`, by backtracking over
/// the cells in row-major order.
fn ssyt_count(s: &SkewShape, t: u32) -> u64 {
    let cells = s.cells();
    let mut filling: Vec<u32> = vec![0; cells.len()];
    let position = |c: Cell| cells.iter().position(|&d| d == c);
    let left: Vec<Option<usize>> =
        cells.iter().map(|c| if c.col > 1 { position(Cell::new(c.row, c.col - 1)) } else { None }).collect();
    let above: Vec<Option<usize>> =
        cells.iter().map(|c| if c.row > 1 { position(Cell::new(c.row - 1, c.col)) } else { None }).collect();

    fn go(k: usize, t: u32, filling: &mut [u32], left: &[Option<usize>], above: &[Option<usize>]) -> u64 {
        if k == filling.len() {
            return 1;
        }
        let lo = left[k].map_or(1, |i| filling[i]).max(above[k].map_or(1, |i| filling[i] + 1));
        let mut total = 0;
        for v in lo..=t {
            filling[k] = v;
            total += go(k + 1, t, filling, left, above);
        }
        total
    }
    go(0, t, &mut filling, &left, &above)
}

fn tableau_oracle() -> Outcome {
    let shapes = basic_shapes_up_to(8);
    let mut checked = 0;
    for s in &shapes {
        let p = skew_schur_spec(s);
        for t in 1..=4u32 {
            let got = p.eval(&Rational::from_integer(t.into()));
            let want = ssyt_count(s, t);
            if !got.is_integer() || got.to_integer().to_u64() != Some(want) {
                return Outcome { pass: false, detail: format!("{s} at t={t}: polynomial {got}, tableaux {want}") };
            }
            checked += 1;
        }
    }
    Outcome { pass: true, detail: format!("{} shapes, {checked} evaluations", shapes.len()) }
}

fn main() -> ExitCode {
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        (
            "figures reproduced",
            Box::new(|| {
                let start = Instant::now();
                let mut o = figures();
                let spent = start.elapsed();
                if spent > Duration::from_secs(1) {
                    o.pass = false;
                    o.detail = format!("{} took {spent:?}", o.detail);
                }
                o
            }),
        ),
        (
            "zrank = rank, basic shapes <= 10 cells",
            Box::new(move || campaigns(&[campaign(Suite::ZrankRank, |p| p.max_cells = 10)], minutes(5))),
        ),
        (
            "four ranks agree, basic shapes <= 12 cells",
            Box::new(move || campaigns(&[campaign(Suite::RankAgreement, |p| p.max_cells = 12)], minutes(10))),
        ),
        (
            "restricted Cauchy sign law and product formula",
            Box::new(move || {
                let r = campaign(Suite::CauchySign, |p| {
                    (p.n, p.lo, p.hi, p.random, p.random_n) = (5, -4, 8, 1000, 6);
                });
                campaigns(&[r], minutes(5))
            }),
        ),
        (
            "irreducible minors validate and are nonzero",
            Box::new(|| campaigns(&[campaign(Suite::CauchyMinors, |p| (p.n, p.lo, p.hi) = (5, -4, 8))], None)),
        ),
        (
            "factorial sign law and det R = det F * prod b!",
            Box::new(|| {
                let pin = |p: &mut Params| (p.n, p.max_a, p.max_b) = (4, 10, 6);
                campaigns(&[campaign(Suite::FactorialSign, pin), campaign(Suite::BinomialSign, pin)], None)
            }),
        ),
        (
            "factorial det equals double Schur form",
            Box::new(|| {
                campaigns(&[campaign(Suite::Lemma42, |p| (p.n, p.max_a, p.max_b) = (4, 10, 6))], None)
            }),
        ),
        (
            "double Schur determinant equals tableau sum",
            Box::new(|| {
                let r = campaign(Suite::DoubleSchurEquiv, |p| {
                    (p.box_rows, p.box_cols, p.vars, p.points) = (3, 3, 3, 20);
                });
                campaigns(&[r], None)
            }),
        ),
        (
            "grank = rank, all outside decompositions <= 10 cells",
            Box::new(|| campaigns(&[campaign(Suite::Grank, |p| p.max_cells = 10)], None)),
        ),
        (
            "specialized Giambelli determinant = s(1^t), <= 10 cells",
            Box::new(|| campaigns(&[campaign(Suite::HgIdentity, |p| p.max_cells = 10)], None)),
        ),
        (
            "ribbon lowest coefficients, length <= 8",
            Box::new(|| campaigns(&[campaign(Suite::J1Coefficients, |p| p.max_ribbon = 8)], None)),
        ),
        (
            "P-Q and Q-P invariance, <= 8 cells",
            Box::new(|| campaigns(&[campaign(Suite::PqInvariance, |p| p.max_cells = 8)], None)),
        ),
        ("s(1^t) matches tableau counts, t <= 4, <= 8 cells", Box::new(tableau_oracle)),
    ];

    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name} ({:.1}s) {}", k + 1, start.elapsed().as_secs_f64(), o.detail);
    }
    println!("{} criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
