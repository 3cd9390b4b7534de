//! Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grassvar::export::canonicalize;
use grassvar::grass::oracle_suite;
use grassvar::job::{execute, JobSpec, Mode};
use grassvar::lift::vanishes_on_parametrization;
use grassvar::poly::groebner::ideal_equal;
use grassvar::poly::{GbOptions, Poly, Var};
use grassvar::skeleton::{critical_paths, enumerate_skeleta, is_normalized};
use grassvar::{
    AffineResult, Exec, Presentation, ProjectiveLift, SemisimpleSequence, Setting, Skeleton, TauSystem,
};

const CARLSON: &str = include_str!("../fixtures/carlson.pres");
const A0: &str = include_str!("../fixtures/a0.pres");
const EXAMPLE: &str = include_str!("../fixtures/example41.skel");
const A0_SIGMA: &str = include_str!("../fixtures/a0_sigma.skel");

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn carlson() -> Presentation {
    Presentation::parse(CARLSON).unwrap()
}

fn a0() -> Presentation {
    Presentation::parse(A0).unwrap()
}

/// Looks a variable up by its printed label.
fn var_by_label(vars: &[Var], label: &str) -> Poly {
    Poly::var(vars.iter().find(|v| v.label() == label).unwrap_or_else(|| panic!("no variable {label}")).clone())
}

fn canonical_strings(polys: &[Poly]) -> BTreeSet<String> {
    canonicalize(polys).iter().map(Poly::to_string).collect()
}

/// Lines following a `# <title> (...)` header up to the next `#` line.
fn section<'a>(text: &'a str, title: &str) -> Vec<&'a str> {
    let mut lines = text.lines().skip_while(|l| !l.starts_with(title));
    lines.next();
    lines.take_while(|l| !l.starts_with('#')).collect()
}

fn grass_eqs_run() -> String {
    let pres = carlson();
    let sk = Skeleton::parse(EXAMPLE, &pres).unwrap();
    let mut job = JobSpec::new("carlson.pres", Mode::GrassEqs, "grass.txt");
    job.skeleton = Some("example41.skel".into());
    execute(&job, &pres, Some(&sk)).unwrap().artifacts.remove(0).1
}

fn criterion_1() -> Check {
    let text = grass_eqs_run();
    let pres = carlson();
    let sk = Skeleton::parse(EXAMPLE, &pres).unwrap();
    let vars = TauSystem::new(&pres, &sk, Setting::Small).map_err(|e| e.to_string())?.variables();
    let x = |c: &str, b: &str| var_by_label(&vars, &format!("X[{c};{b}]"));
    let one = Poly::one();
    let expected = vec![
        x("a*a*z1", "b*a*z1"),
        x("b*b*z1", "b*a*z1"),
        x("a*a*z2", "b*a*z1"),
        x("a*b*z1", "b*a*z1") - one,
        x("b*z2", "b*z1") - x("b*a*z2", "b*a*z1"),
        x("b*z2", "a*z1") + x("b*z2", "a*z2") * x("b*a*z2", "b*a*z1"),
        x("a*z3", "a*z1") - x("b*z3", "b*z1") + x("a*z3", "a*z2") * x("b*a*z2", "b*a*z1"),
        x("a*z3", "b*z1"),
        x("b*z3", "a*z1") + x("b*z3", "a*z2") * x("b*a*z2", "b*a*z1"),
    ];
    let want = canonical_strings(&expected);
    let got: BTreeSet<String> = section(&text, "# grass: polynomials").iter().map(|s| s.to_string()).collect();
    ensure(got.len() == 9 && got == want, || format!("got {got:?}\nwant {want:?}"))?;
    Ok("nine equations match".into())
}

fn criterion_2() -> Check {
    let text = grass_eqs_run();
    let got: Vec<&str> =
        section(&text, "# critical paths").iter().map(|l| l.split_whitespace().next().unwrap()).collect();
    let want = ["a*a*z1", "a*b*z1", "b*b*z1", "b*z2", "a*a*z2", "b*a*z2", "a*z3", "b*z3"];
    let (g, w): (BTreeSet<&str>, BTreeSet<&str>) = (got.iter().copied().collect(), want.into_iter().collect());
    ensure(got.len() == 8 && g == w, || format!("got {got:?}"))?;
    Ok("eight critical paths".into())
}

fn y(t: &[u32]) -> Poly {
    Poly::var(Var::pluecker(t))
}

fn a0_lift() -> ProjectiveLift {
    let pres = a0();
    let sk = Skeleton::parse(A0_SIGMA, &pres).unwrap();
    ProjectiveLift::compute(&pres, &sk).unwrap()
}

fn display_66() -> Vec<Poly> {
    let (h12, h21) = (y(&[2, 4, 5, 6]), y(&[1, 3, 5, 6]));
    let mut out = vec![
        y(&[3, 4, 5, 6]) - Poly::one(),
        y(&[1, 2, 3, 5]) - &(&h12 * &h21) * &h21,
        y(&[1, 2, 3, 6]) - &h21 * &h21,
        y(&[1, 2, 5, 6]) - &h12 * &h21,
        y(&[2, 3, 4, 5]) + &h12 * &h21,
        y(&[2, 3, 4, 6]) + h21.clone(),
    ];
    for t in [[1, 2, 3, 4], [1, 2, 4, 5], [1, 2, 4, 6], [1, 3, 4, 5], [1, 3, 4, 6], [1, 4, 5, 6]] {
        out.push(y(&t));
    }
    out
}

fn display_67() -> Vec<Poly> {
    let (z, h11, h12, h21) = (y(&[3, 4, 5, 6]), y(&[1, 4, 5, 6]), y(&[2, 4, 5, 6]), y(&[1, 3, 5, 6]));
    let (y1235, y1236, y1256) = (y(&[1, 2, 3, 5]), y(&[1, 2, 3, 6]), y(&[1, 2, 5, 6]));
    vec![
        &y1235 * &z - &h12 * &y1236,
        &y1236 * &z - &h21 * &h21,
        &y1256 * &z - &h12 * &h21,
        h11,
        y(&[2, 3, 4, 5]) + y1256.clone(),
        y(&[2, 3, 4, 6]) + h21.clone(),
        y(&[1, 2, 3, 4]),
        y(&[1, 2, 4, 5]),
        y(&[1, 2, 4, 6]),
        y(&[1, 3, 4, 5]),
        y(&[1, 3, 4, 6]),
        &h12 * &y1236 - &h21 * &y1256,
        &y1236 * &y1256 - &h21 * &y1235,
        &y1256 * &y1256 - &h12 * &y1235,
    ]
}

fn criterion_3() -> Check {
    let pres = a0();
    let lift = a0_lift();
    let b = lift.basis.display(&pres);
    ensure(b == "(z1, a*z1, b*z1, z2, a*z2, b*z2)", || format!("B = {b}"))?;
    let x = |i, j| Poly::var(Var::reduced(i, j));
    let (x12, x21, x22) = (x(1, 2), x(2, 1), x(2, 2));
    let table: BTreeMap<Vec<u32>, Poly> = [
        (vec![3, 4, 5, 6], Poly::one()),
        (vec![1, 2, 3, 5], -(&(&x12 * &x21) * &x21)),
        (vec![1, 2, 3, 6], &x21 * &x21),
        (vec![1, 2, 5, 6], -(&x12 * &x21)),
        (vec![1, 3, 5, 6], x21.clone()),
        (vec![2, 3, 4, 5], &x12 * &x21),
        (vec![2, 3, 4, 6], -x21.clone()),
        (vec![2, 3, 5, 6], x22.clone()),
        (vec![2, 4, 5, 6], -x12.clone()),
    ]
    .into_iter()
    .collect();
    ensure(lift.expansion.rho == table, || format!("rho = {:?}", lift.expansion.rho))?;
    let signs = &lift.expansion.signs;
    ensure(signs[&(1, 2)] == -1 && signs[&(2, 1)] == 1 && signs[&(2, 2)] == 1, || format!("eps = {signs:?}"))?;
    let got = canonical_strings(&lift.schubert.generators());
    let want = canonical_strings(&display_66());
    ensure(lift.schubert.generators().len() == 12 && got == want, || format!("got {got:?}"))?;
    Ok("basis, 9 minors, signs and 12 generators".into())
}

fn criterion_4() -> Check {
    let ideal = a0_lift().saturate(&GbOptions::unlimited()).map_err(|e| e.to_string())?;
    let eq = ideal_equal(&ideal.generators, &display_67(), &GbOptions::unlimited()).map_err(|e| e.to_string())?;
    ensure(eq, || format!("saturation {:?}", ideal.generators))?;
    Ok(format!("saturation equals the 14-generator ideal ({} generators)", ideal.generators.len()))
}

fn criterion_5() -> Check {
    let lift = a0_lift();
    let opts = GbOptions::default();
    let sat = lift.saturate(&opts).map_err(|e| e.to_string())?;
    for (name, polys) in
        [("6.6", display_66()), ("6.7", display_67()), ("schubert output", lift.schubert.generators()), ("saturation output", sat.generators)]
    {
        let ok = vanishes_on_parametrization(&polys, &lift.expansion, &lift.reduced, &opts).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{name} does not vanish"))?;
    }
    Ok("all generators vanish on the parametrization".into())
}

fn carlson_skeleta(max_d: usize) -> Vec<Skeleton> {
    let pres = carlson();
    (1..=max_d)
        .flat_map(|d| SemisimpleSequence::all_with_dimvec(&[d], pres.loewy() + 1))
        .flat_map(|s| enumerate_skeleta(&s, &pres, false, Exec::default()))
        .collect()
}

fn criterion_6() -> Check {
    let pres = carlson();
    let all = carlson_skeleta(5);
    let report = oracle_suite(&pres, &all, 100, 2024, Exec::default());
    ensure(report.all_passed() && report.triangular > 0, || format!("{report:?}"))?;
    Ok(format!(
        "{} skeleta, {} triangular, {}/{} points",
        report.skeleta, report.triangular, report.passed, report.points
    ))
}

/// Brute-force `|N|`: one-letter extensions of members that leave σ, each
/// counted with the members of at least its length (single vertex).
fn brute_force_n(members: &[(usize, &str)], loewy: usize) -> usize {
    let set: BTreeSet<(usize, String)> = members.iter().map(|(r, w)| (*r, w.to_string())).collect();
    let mut total = 0;
    for (r, w) in &set {
        for c in ["a", "b"] {
            let ext = format!("{w}{c}");
            if ext.len() <= loewy && !set.contains(&(*r, ext.clone())) {
                total += set.iter().filter(|(_, m)| m.len() >= ext.len()).count();
            }
        }
    }
    total
}

fn criterion_7() -> Check {
    let pres = carlson();
    let sk = Skeleton::parse(EXAMPLE, &pres).unwrap();
    let members = [(1, ""), (1, "a"), (1, "b"), (1, "ab"), (2, ""), (2, "a"), (3, "")];
    let n = brute_force_n(&members, 2);
    ensure(n == 17, || format!("brute-force |N| = {n}"))?;
    let tau = TauSystem::new(&pres, &sk, Setting::Small).map_err(|e| e.to_string())?;
    ensure(tau.variables().len() == n, || format!("|N| = {}", tau.variables().len()))?;
    match tau.detect_affine_space() {
        AffineResult::Affine(c) if c.dimension() == 8 => {}
        other => return Err(format!("example: {other:?}")),
    }
    let mut normalized = 0;
    for s in carlson_skeleta(6) {
        if is_normalized(&s, &pres).map_err(|e| e.to_string())?.is_none() {
            continue;
        }
        normalized += 1;
        let tau = TauSystem::new(&pres, &s, Setting::Small).map_err(|e| e.to_string())?;
        if !matches!(tau.detect_affine_space(), AffineResult::Affine(_)) {
            return Err(format!("not triangular:\n{}", s.to_text(&pres)));
        }
    }
    Ok(format!("|N| = 17, dimension 8, {normalized} normalized skeleta triangular"))
}

const FIXTURES_8: [(&str, &str); 5] = [
    ("1;2;1", "z1@1: ε, a, b, b*a"),
    ("2;2;0", "z1@1: ε, a; z2@1: ε, a"),
    ("2;2;1", "z1@1: ε, a, b, b*a; z2@1: ε"),
    ("3;2;0", "z1@1: ε, a; z2@1: ε, a; z3@1: ε"),
    ("2;3;0", "z1@1: ε, a; z2@1: ε, a, b"),
];

fn criterion_8() -> Check {
    let pres = carlson();
    for (seq, text) in FIXTURES_8 {
        let s = SemisimpleSequence::parse(seq).map_err(|e| e.to_string())?;
        let want = Skeleton::parse(text, &pres).map_err(|e| e.to_string())?.canonical_up_to_permutation(&pres);
        let found = enumerate_skeleta(&s, &pres, false, Exec::default());
        let hit = found.iter().any(|k| k.canonical_up_to_permutation(&pres) == want);
        ensure(hit, || format!("{seq}: missing {text}"))?;
    }
    Ok("all five generic skeleta enumerated".into())
}

fn criterion_9() -> Check {
    let lift = a0_lift();
    let n1 = lift.expansion.num_coordinates();
    ensure(n1 == 15 && lift.expansion.tuples().len() == 15, || format!("|N1| = {n1}"))?;
    let mut cases: Vec<(Presentation, &str)> = vec![(carlson(), EXAMPLE), (a0(), A0_SIGMA)];
    for (_, text) in FIXTURES_8 {
        cases.push((carlson(), text));
    }
    for (pres, text) in &cases {
        let sk = Skeleton::parse(text, pres).map_err(|e| e.to_string())?;
        let small = critical_paths(&sk, pres, Setting::Small).map_err(|e| e.to_string())?.len();
        let big = critical_paths(&sk, pres, Setting::Big).map_err(|e| e.to_string())?.len();
        ensure(big - small == sk.len() - sk.t(), || format!("{text}: {big} - {small} != d - t"))?;
    }
    Ok(format!("|N1| = 15, big - small = d - t on {} fixtures", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 9] = [
        ("1 Carlson reference equations", criterion_1, 1),
        ("2 critical-path list", criterion_2, 1),
        ("3 basis, minors and chart equations", criterion_3, 5),
        ("4 saturated closure ideal", criterion_4, 60),
        ("5 parametrization vanishing", criterion_5, 5),
        ("6 representation oracle d <= 5", criterion_6, 30),
        ("7 normalized skeleta are affine d <= 6", criterion_7, 10),
        ("8 generic skeleta enumerated", criterion_8, 5),
        ("9 counting invariants", criterion_9, 5),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(limit) => Err(format!("{msg}, but over the {limit} s limit")),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({:.3} s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({:.3} s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
