//! Acceptance checks, one PASS/FAIL line each. `DWD_ACCEPT_LONG=1` also runs
//! the 5-string enumeration (about two minutes and 600 MB in release mode);
//! `DWD_BLESS=1` rewrites the worked-example rendering.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dwd_core::graph::{enumerate, hamiltonian_cycle, is_hamiltonian_cycle, EnumerateOptions};
use dwd_core::label::non_fixed_minors;
use dwd_core::laurent::{LaurentPoly, Monomial};
use dwd_core::oracle::{oracle_check_all, oracle_check_sampled};
use dwd_core::positivity::{
    express_minor, express_steps, identity_check_classes, identity_check_sampled, numeric_check, tp_matrix,
    verify_conjecture, MinorId, Scope, VerifyOptions,
};
use dwd_core::quiver::{detect_moves, Move, MoveKind};
use dwd_core::wiring::{chamber_labels, standard_word};
use dwd_core::{ChamberLabel, GraphStats, LabelSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Option<Outcome>>);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn hist(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
    pairs.iter().copied().collect()
}

fn label(text: &str) -> ChamberLabel {
    text.parse().unwrap()
}

fn graph_stats(n: usize, opts: &EnumerateOptions) -> Result<(GraphStats, Duration), String> {
    let t = Instant::now();
    let e = enumerate(n, opts).map_err(|e| e.to_string())?;
    Ok((e.stats, t.elapsed()))
}

fn phi2() -> Outcome {
    let (s, dt) = graph_stats(2, &EnumerateOptions::default())?;
    check(s.vertices == 2 && s.undirected_edges == 1, format!("{s:?}"))?;
    check(s.degree_histogram == hist(&[(1, 2)]), format!("{:?}", s.degree_histogram))?;
    within(dt, Duration::from_secs(1))?;
    Ok(format!("vertices 2, undirected edges 1, histogram {{1: 2}} in {dt:.2?}"))
}

fn phi3() -> Outcome {
    let (s, dt) = graph_stats(3, &EnumerateOptions::default())?;
    check(s.vertices == 34, format!("vertices {}", s.vertices))?;
    check(s.degree_histogram == hist(&[(3, 16), (4, 18)]), format!("{:?}", s.degree_histogram))?;
    check(s.degree_sum == 120 && s.undirected_edges == 60, format!("{s:?}"))?;
    check(s.is_consistent() && s.degree_sum == 2 * s.undirected_edges, "handshake identity")?;
    within(dt, Duration::from_secs(1))?;
    Ok(format!(
        "vertices 34, histogram {{3: 16, 4: 18}}, degree sum 120 = 2 x 60 undirected edges in {dt:.2?} \
         (edge totals 120, 33300, 60930112 for n = 3, 4, 5 are degree sums, while the total 1 for n = 2 counts undirected edges)"
    ))
}

fn phi4() -> Outcome {
    let (s, dt) = graph_stats(4, &EnumerateOptions::default())?;
    check(s.vertices == 4894, format!("vertices {}", s.vertices))?;
    let want = hist(&[(4, 2), (5, 522), (6, 1362), (7, 1754), (8, 1054), (9, 200)]);
    check(s.degree_histogram == want, format!("{:?}", s.degree_histogram))?;
    check(s.degree_sum == 33300, format!("degree sum {}", s.degree_sum))?;
    within(dt, Duration::from_secs(60))?;
    Ok(format!("vertices 4894, degree sum 33300, histogram matches in {dt:.2?}"))
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn phi5() -> Option<Outcome> {
    if std::env::var("DWD_ACCEPT_LONG").as_deref() != Ok("1") {
        return None;
    }
    Some((|| {
        let opts = EnumerateOptions { fingerprint: true, build_graph: false, ..Default::default() };
        let (s, dt) = graph_stats(5, &opts)?;
        check(s.vertices == 5_520_372, format!("vertices {}", s.vertices))?;
        let want = hist(&[
            (6, 84),
            (7, 28584),
            (8, 198596),
            (9, 632028),
            (10, 1165732),
            (11, 1402756),
            (12, 1165888),
            (13, 651188),
            (14, 227520),
            (15, 44452),
            (16, 3544),
        ]);
        check(s.degree_histogram == want, format!("{:?}", s.degree_histogram))?;
        check(s.degree_sum == 60_930_112, format!("degree sum {}", s.degree_sum))?;
        within(dt, Duration::from_secs(2 * 3600))?;
        let rss = peak_rss_kib();
        if let Some(kib) = rss {
            check(kib < 8 * 1024 * 1024, format!("peak RSS {kib} KiB"))?;
        }
        Ok(format!(
            "vertices 5520372, degree sum 60930112, histogram matches in {dt:.1?}, peak RSS {} MiB",
            rss.map_or("?".into(), |k| (k / 1024).to_string())
        ))
    })())
}

/// Labels used by the reference chain of three exchange steps for `14|12`.
const WORKED_LABELS: [&str; 7] = ["1|1", "3|1", "4|1", "13|12", "13|13", "34|12", "134|123"];

/// `(center, replacement, factor pairs)` of the reference steps.
const WORKED_STEPS: [(&str, &str, [[&str; 2]; 2]); 3] = [
    ("13|12", "34|13", [["34|12", "13|13"], ["134|123", "3|1"]]),
    ("3|1", "14|13", [["1|1", "34|13"], ["4|1", "13|13"]]),
    ("34|13", "14|12", [["14|13", "34|12"], ["134|123", "4|1"]]),
];

/// Reference results as lists of `(label, exponent)` monomials. The
/// reference form of the second step drops the `1|1` factor from its first
/// term; every term of that step has degree 1, so the factor is restored
/// here and the uncorrected form is checked separately.
fn reference_terms(step: usize, restored: bool) -> Vec<Vec<(&'static str, i32)>> {
    match step {
        0 => vec![vec![("134|123", 1), ("13|12", -1), ("3|1", 1)], vec![("34|12", 1), ("13|12", -1), ("13|13", 1)]],
        1 => {
            let mut first = vec![("134|123", 1), ("13|12", -1)];
            if restored {
                first.push(("1|1", 1));
            }
            vec![
                first,
                vec![("34|12", 1), ("13|12", -1), ("13|13", 1), ("3|1", -1), ("1|1", 1)],
                vec![("13|13", 1), ("4|1", 1), ("3|1", -1)],
            ]
        }
        _ => vec![vec![("34|12", 1), ("3|1", -1), ("1|1", 1)], vec![("13|12", 1), ("4|1", 1), ("3|1", -1)]],
    }
}

fn build(like: &LaurentPoly, terms: &[Vec<(&str, i32)>]) -> LaurentPoly {
    let vars = like.vars();
    let mut p = LaurentPoly::zero(vars);
    for t in terms {
        let mut e = vec![0; vars.len()];
        for (l, k) in t {
            e[vars.index_of(label(l)).unwrap()] += k;
        }
        p = p.add(&LaurentPoly::monomial(vars, Monomial::from_exponents(e), BigInt::from(1))).unwrap();
    }
    p
}

fn worked_steps_from(base: &LabelSet) -> Option<Vec<Move>> {
    let mut s = base.clone();
    let mut out = Vec::new();
    for (center, replacement, _) in WORKED_STEPS {
        let m = detect_moves(&s).into_iter().find(|m| m.center == label(center))?;
        if m.replacement != label(replacement) {
            return None;
        }
        s = s.replace(m.center, m.replacement)?;
        out.push(m);
    }
    Some(out)
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/worked_example.txt")
}

fn worked_example() -> Outcome {
    let g = enumerate(4, &EnumerateOptions::default()).map_err(|e| e.to_string())?.graph.unwrap();
    let candidates: Vec<LabelSet> = (0..g.vertex_count())
        .map(|id| g.labels(id))
        .filter(|s| WORKED_LABELS.iter().all(|l| s.contains(label(l))))
        .collect();
    check(!candidates.is_empty(), "no class holds every label of the worked example")?;
    let (base, moves) = candidates
        .iter()
        .find_map(|s| worked_steps_from(s).map(|m| (s.clone(), m)))
        .ok_or("no class admits the three reference moves in sequence")?;
    let mut rendering = format!("base {{{base}}}\n");
    let steps = express_steps(&base, &moves).map_err(|e| e.to_string())?;
    for (i, (step, (_, _, factors))) in steps.iter().zip(WORKED_STEPS).enumerate() {
        check(step.step.kind == [MoveKind::Two, MoveKind::Three, MoveKind::Two][i], format!("step {i} kind"))?;
        let mut got: Vec<[ChamberLabel; 2]> = step.step.factors.iter().map(|&(a, b)| sorted(a, b)).collect();
        let mut want: Vec<[ChamberLabel; 2]> = factors.iter().map(|[a, b]| sorted(label(a), label(b))).collect();
        got.sort();
        want.sort();
        check(got == want, format!("step {} factors {got:?}, reference {want:?}", i + 1))?;
        let expected = build(&step.result, &reference_terms(i, true));
        check(step.result == expected, format!("step {}: {} != {}", i + 1, step.result, expected))?;
        check(step.result.is_positive(), format!("step {} not positive", i + 1))?;
        rendering.push_str(&format!("{}\n{} = {}\n", step.step, label_name(step.step.replacement), step.result));
    }
    // the uncorrected step 2 mixes degrees 0 and 1
    let literal = build(&steps[1].result, &reference_terms(1, false));
    let degrees: std::collections::BTreeSet<i64> = literal.terms().map(|(m, _)| m.degree()).collect();
    check(degrees.len() == 2, "uncorrected step 2 expected to be inhomogeneous")?;

    let path = golden_path();
    if std::env::var("DWD_BLESS").as_deref() == Ok("1") {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &rendering).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    check(golden == rendering, format!("rendering differs from {}:\n{rendering}", path.display()))?;
    Ok(format!(
        "{} candidate base classes; three steps reproduced, final {}; step 2 matches once the dropped 1|1 factor is restored",
        candidates.len(),
        steps[2].result
    ))
}

fn sorted(a: ChamberLabel, b: ChamberLabel) -> [ChamberLabel; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn label_name(l: ChamberLabel) -> String {
    dwd_core::laurent::minor_name(l)
}

fn conjecture_n3() -> Outcome {
    let r = verify_conjecture(3, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    check(r.pairs == 476 && r.positive == 476, format!("{} pairs, {} positive", r.pairs, r.positive))?;
    check(r.failures.is_empty(), format!("{:?}", r.failures.first()))?;
    check(r.wall_seconds < 300.0, format!("{:.1}s", r.wall_seconds))?;
    Ok(format!("476 expressions, all positive, max {} terms, {:.2}s", r.max_terms, r.wall_seconds))
}

fn conjecture_n4_sampled() -> Outcome {
    // 17 classes x 62 non-fixed minors = 1054 pairs
    let opts = VerifyOptions { scope: Scope::Sample(17), seed: 4, ..Default::default() };
    let r = verify_conjecture(4, &opts).map_err(|e| e.to_string())?;
    check(r.pairs >= 1000, format!("only {} pairs", r.pairs))?;
    check(r.passed(), format!("{} positive of {}; {:?}", r.positive, r.pairs, r.failures.first()))?;
    check(r.max_terms > 100, format!("max terms {}", r.max_terms))?;
    Ok(format!("{} pairs all positive, max {} terms, {:.2}s", r.pairs, r.max_terms, r.wall_seconds))
}

fn oracle() -> Outcome {
    let all3 = oracle_check_all(3);
    check(all3.classes == 34 && all3.passed(), format!("n=3: {:?}", all3.mismatches))?;
    let s4 = oracle_check_sampled(4, 1000, 8);
    check(s4.classes >= 1000, format!("n=4 only {} classes", s4.classes))?;
    check(s4.passed(), format!("n=4: {:?}", s4.mismatches))?;
    Ok(format!("34 classes at n=3 and {} sampled at n=4, zero mismatches", s4.classes))
}

fn identities() -> Outcome {
    let g = enumerate(3, &EnumerateOptions::default()).map_err(|e| e.to_string())?.graph.unwrap();
    let classes: Vec<LabelSet> = (0..g.vertex_count()).map(|id| g.labels(id)).collect();
    let r3 = identity_check_classes(3, &classes);
    check(r3.classes == 34 && r3.moves == 120 && r3.passed(), format!("n=3: {r3:?}"))?;
    let r4 = identity_check_sampled(4, &chamber_labels(&standard_word(4)), 100, 9);
    check(r4.moves == 100 && r4.passed(), format!("n=4: {:?}", r4.failures))?;
    Ok("all 120 moves of the 34 classes at n=3 and 100 random moves at n=4 expand to zero".into())
}

fn numeric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [3, 4] {
        let g = enumerate(n, &EnumerateOptions::default()).map_err(|e| e.to_string())?.graph.unwrap();
        let minors = non_fixed_minors(n);
        for i in 0..100u64 {
            let base = g.labels(rng.gen_range(0..g.vertex_count()));
            let target = MinorId::new(minors[rng.gen_range(0..minors.len())], n).unwrap();
            let m = tp_matrix(n, 1000 * n as u64 + i).map_err(|e| e.to_string())?;
            let r = express_minor(&base, target).map_err(|e| e.to_string())?;
            check(numeric_check(&r, &m).map_err(|e| e.to_string())?, format!("n={n} {target} from {{{base}}}"))?;
        }
    }
    Ok("100 pairs at n=3 and 100 at n=4 match exactly on verified TP matrices".into())
}

fn hamiltonian() -> Outcome {
    let t = Instant::now();
    let g = enumerate(3, &EnumerateOptions::default()).map_err(|e| e.to_string())?.graph.unwrap();
    let cycle = hamiltonian_cycle(&g, 10_000_000).map_err(|e| e.to_string())?.ok_or("no cycle found")?;
    check(cycle.len() == 34 && is_hamiltonian_cycle(&g, &cycle), "invalid cycle")?;
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!("34-vertex cycle validated in {:.2?}", t.elapsed()))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 phi2 counts", Box::new(|| Some(phi2()))),
        ("2 phi3 counts", Box::new(|| Some(phi3()))),
        ("3 phi4 counts", Box::new(|| Some(phi4()))),
        ("4 phi5 counts (long)", Box::new(phi5)),
        ("5 worked example", Box::new(|| Some(worked_example()))),
        ("6 positivity n=3 full", Box::new(|| Some(conjecture_n3()))),
        ("7 positivity n=4 sampled", Box::new(|| Some(conjecture_n4_sampled()))),
        ("8 quiver vs word oracle", Box::new(|| Some(oracle()))),
        ("9 symbolic exchange identity", Box::new(|| Some(identities()))),
        ("10 numeric TP oracle", Box::new(|| Some(numeric()))),
        ("11 hamiltonian cycle phi3", Box::new(|| Some(hamiltonian()))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Some(Ok(detail)) => println!("PASS criterion {name}: {detail}"),
            Some(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
            None => println!("SKIP criterion {name}: set DWD_ACCEPT_LONG=1 to run"),
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
