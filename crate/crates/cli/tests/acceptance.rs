//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test -p tropopt-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropopt::oracle::random::{random_instance, DataRange};
use tropopt::oracle::{
    check_samples, default_grid, evaluate_objective, grid_optimize, max_cycle_mean, OracleError,
};
use tropopt::semifield::{MaxPlus, MinPlus};
use tropopt::solvers::{
    cheby_box, cheby_ineq, rayleigh_box, rayleigh_full, rayleigh_ineq, span_max, span_max_constrained, ConstraintKind,
};
use tropopt::spectral::{eigenvectors, spectral_radius};
use tropopt::{solve, Error, Form, ProblemInstance, Rational, Scalar, SolutionSet, TropMatrix, TropVector};

type S = Scalar<MaxPlus>;
type M = TropMatrix<MaxPlus>;
type V = TropVector<MaxPlus>;
type Outcome = Result<String, String>;

const SEED: u64 = 20_240_611;

fn one() -> S {
    Scalar::one()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- random exact data ----------------------------------------------------

fn rational(rng: &mut impl Rng) -> S {
    Scalar::Finite(Ratio::new(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
}

fn scalar(rng: &mut impl Rng) -> S {
    if rng.gen_bool(0.2) {
        Scalar::Bottom
    } else {
        rational(rng)
    }
}

fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> M {
    M::from_fn(rows, cols, |_, _| scalar(rng))
}

fn regular(rng: &mut impl Rng, n: usize) -> V {
    V::from_fn(n, |_| rational(rng))
}

/// `I ⊕ A ⊕ ⋯ ⊕ A^{n−1}` by repeated multiplication.
fn star_by_powers(a: &M) -> M {
    let n = a.rows();
    let mut acc = M::identity(n);
    let mut power = M::identity(n);
    for _ in 1..n {
        power = power.mul(a).unwrap();
        acc = acc.add(&power).unwrap();
    }
    acc
}

// ---- criterion 1 ------------------------------------------------------------

fn algebraic_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..500 {
        let (a, b, c) = (scalar(&mut rng), scalar(&mut rng), scalar(&mut rng));
        ensure(a + a == a, || format!("case {case}: a ⊕ a ≠ a for {a}"))?;
        ensure(a * (b + c) == a * b + a * c, || format!("case {case}: distributivity fails for {a}, {b}, {c}"))?;
        ensure((b + c) * a == b * a + c * a, || format!("case {case}: right distributivity fails"))?;
        ensure(a + S::zero() == a && a * S::zero() == S::zero(), || format!("case {case}: 𝟘 is not absorbing for {a}"))?;
        ensure(a * one() == a, || format!("case {case}: 𝟙 is not neutral"))?;

        let (r, k, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=5));
        let x = matrix(&mut rng, r, k);
        let y = matrix(&mut rng, k, cols);
        let z = matrix(&mut rng, k, cols);
        ensure(x.add(&x).unwrap() == x, || format!("case {case}: A ⊕ A ≠ A"))?;
        ensure(
            x.mul(&y.add(&z).unwrap()).unwrap() == x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap(),
            || format!("case {case}: matrix distributivity fails"),
        )?;
        if !x.is_zero() {
            ensure(x.conj().unwrap().conj().unwrap() == x, || format!("case {case}: (A⁻)⁻ ≠ A"))?;
        }
        let v = regular(&mut rng, r);
        let vv = v.conj().unwrap().mul(&v.as_column()).unwrap().to_scalar().unwrap();
        ensure(vv == one(), || format!("case {case}: x⁻x = {vv}"))?;

        let sq = matrix(&mut rng, r, r);
        let lambda = spectral_radius(&sq).unwrap();
        let sq = match lambda {
            Scalar::Finite(l) if l > Rational::from_integer(0) => sq.scale(Scalar::Finite(-l)),
            _ => sq,
        };
        let star = sq.kleene_star().map_err(|e| format!("case {case}: star failed: {e}"))?;
        ensure(star.mul(&star).unwrap() == star, || format!("case {case}: A*A* ≠ A*"))?;
        ensure(star == star_by_powers(&sq), || format!("case {case}: A* differs from I ⊕ ⋯ ⊕ A^(n-1)"))?;
    }
    Ok("500 cases".into())
}

// ---- criterion 2 ------------------------------------------------------------

fn spectral_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut matrices = 0;
    let mut vectors = 0;
    while matrices < 200 {
        let n = rng.gen_range(1..=5);
        let a = matrix(&mut rng, n, n);
        let expected = max_cycle_mean(&a);
        if expected.is_zero() {
            continue;
        }
        matrices += 1;
        let lambda = spectral_radius(&a).unwrap();
        ensure(lambda == expected, || format!("λ = {lambda}, cycle mean {expected} for {a:?}"))?;
        let spec = eigenvectors(&a).map_err(|e| e.to_string())?;
        let g = &spec.eigen_generator;
        for _ in 0..100 {
            let u = regular(&mut rng, g.cols());
            let x = g.mul_vec(&u).unwrap();
            ensure(x.is_nonzero(), || "zero eigenvector".into())?;
            ensure(a.mul_vec(&x).unwrap() == x.scale(lambda), || format!("Ax ≠ λx for {a:?}, x = {x:?}"))?;
            vectors += 1;
        }
    }
    Ok(format!("{matrices} matrices, {vectors} eigenvectors"))
}

// ---- criteria 3 and 4 -------------------------------------------------------

/// Nodes lying on a cycle of mean `𝟙` (for a matrix with `λ = 𝟙`).
fn critical_nodes(a: &M) -> Vec<bool> {
    let n = a.rows();
    let mut critical = vec![false; n];
    let mut path = Vec::new();
    fn walk(a: &M, path: &mut Vec<usize>, weight: Rational, critical: &mut [bool]) {
        let (first, last) = (path[0], *path.last().unwrap());
        for next in first..a.rows() {
            let Scalar::Finite(w) = a.get(last, next) else { continue };
            if next == first {
                if (weight + w).numer() == &0 {
                    for &i in path.iter() {
                        critical[i] = true;
                    }
                }
            } else if !path.contains(&next) {
                path.push(next);
                walk(a, path, weight + w, critical);
                path.pop();
            }
        }
    }
    for root in 0..n {
        path.push(root);
        walk(a, &mut path, Rational::from_integer(0), &mut critical);
        path.pop();
    }
    critical
}

/// Whether every node has a walk of length at least one to a critical node.
fn all_reach_critical(a: &M) -> bool {
    let n = a.rows();
    let critical = critical_nodes(a);
    (0..n).all(|start| {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&j| a.get(start, j).is_finite()).collect();
        while let Some(i) = stack.pop() {
            if critical[i] {
                return true;
            }
            if !seen[i] {
                seen[i] = true;
                stack.extend((0..n).filter(|&j| a.get(i, j).is_finite()));
            }
        }
        false
    })
}

fn positive(s: S) -> bool {
    one().lt(&s)
}

/// `h⁻ x` summed the long way.
fn pair(h: &V, x: &V) -> S {
    (0..h.dim())
        .map(|i| match h.get(i) {
            Scalar::Finite(v) => Scalar::Finite(-v) * x.get(i),
            Scalar::Bottom => S::zero(),
        })
        .fold(S::zero(), |a, b| a + b)
}

/// The violated condition the solver should report, found independently of
/// the solver gates, and whether the feasible set is empty.
fn expected_rejection(inst: &ProblemInstance<MaxPlus>) -> Option<(String, bool)> {
    use ProblemInstance as P;
    let reject = |name: &str, empty: bool| Some((name.to_string(), empty));
    let radius = |a: &M| max_cycle_mean(a).is_zero();
    let diverges = |b: &M| positive(max_cycle_mean(b));
    match inst {
        P::Rayleigh { a } | P::RayleighAffine { a, .. } if radius(a) => reject("spectral radius = 0", false),
        P::ChebyBox { g, h, .. } if !g.leq(h).unwrap() => reject("g ≰ h", true),
        P::ChebyIneqBox { b, .. } | P::ChebyIneq { b, .. } if diverges(b) => reject("Tr(B) > 1", true),
        P::ChebyIneqBox { b, g, h, .. } if positive(pair(h, &star_by_powers(b).mul_vec(g).unwrap())) => {
            reject("h⁻B*g > 1", true)
        }
        P::SpanMinConstrained { d, .. } if diverges(d) => reject("Tr(D) > 1", true),
        P::SpanMaxIneq { c, .. } if diverges(c) => reject("Tr(C) > 1", true),
        P::SpanMaxEq { c, .. } if max_cycle_mean(c) != one() => reject("Tr(C) ≠ 1", true),
        P::SpanMaxEq { c, .. } if !all_reach_critical(c) => reject("Cx = x has no regular solution", true),
        P::RayleighFull { a, .. }
        | P::RayleighIneq { a, .. }
        | P::RayleighBox { a, .. }
        | P::RayleighPIneq { a, .. }
            if radius(a) =>
        {
            reject("spectral radius = 0", false)
        }
        P::RayleighFull { b, .. } | P::RayleighIneq { b, .. } | P::RayleighPIneq { b, .. } if diverges(b) => {
            reject("Tr(B) > 1", true)
        }
        P::RayleighFull { b, c, g, h, .. }
            if !c.is_zero() && positive(pair(h, &c.mul(&star_by_powers(b)).unwrap().mul_vec(g).unwrap())) =>
        {
            reject("h⁻CB*g > 1", true)
        }
        P::RayleighBox { g, h, .. } if positive(pair(h, g)) => reject("h⁻g > 1", true),
        _ => None,
    }
}

fn check_rejection(inst: &ProblemInstance<MaxPlus>, err: &Error) -> Result<bool, String> {
    let Some((expected, empty)) = expected_rejection(inst) else {
        return Err(format!("unexpected rejection `{}` of {inst:?}", err.condition()));
    };
    ensure(err.condition() == expected, || {
        format!("{inst:?}: condition `{}`, expected `{expected}`", err.condition())
    })?;
    if empty {
        let grid = grid_optimize(inst, &default_grid(inst));
        ensure(grid == Err(OracleError::EmptyFeasibleGrid), || {
            format!("{inst:?}: rejected as `{expected}` but the grid found {grid:?}")
        })?;
    }
    Ok(empty)
}

struct Tally {
    solved: usize,
    rejected: usize,
    infeasible: usize,
    samples: usize,
    members: usize,
}

/// Membership of the oracle's optimal points in sets that describe every optimizer.
fn members_in_set(form: Form, set: &SolutionSet<MaxPlus>, points: &[V]) -> Result<usize, String> {
    let complete = match set {
        SolutionSet::Interval { .. } | SolutionSet::GeneratedInterval { .. } => true,
        SolutionSet::GeneratedCone { .. } => {
            matches!(form, Form::Rayleigh | Form::RayleighFull | Form::RayleighIneq | Form::RayleighPIneq)
        }
        _ => false,
    };
    if !complete {
        return Ok(0);
    }
    for x in points {
        let inside = match set {
            SolutionSet::Interval { lower, upper } => lower.leq(x).unwrap() && x.leq(upper).unwrap(),
            SolutionSet::GeneratedInterval {
                generator,
                u_lower,
                u_upper,
            } => generator.mul_vec(x).unwrap() == *x && u_lower.leq(x).unwrap() && x.leq(u_upper).unwrap(),
            SolutionSet::GeneratedCone { generator, u_lower } => {
                generator.mul_vec(x).unwrap() == *x && u_lower.leq(x).unwrap()
            }
            _ => unreachable!(),
        };
        ensure(inside, || format!("optimal grid point {x:?} is outside {set:?}"))?;
    }
    Ok(points.len())
}

fn oracle_suite(soundness: &mut Outcome) -> Outcome {
    let range = DataRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut lines = Vec::new();
    let mut total = Tally {
        solved: 0,
        rejected: 0,
        infeasible: 0,
        samples: 0,
        members: 0,
    };
    let mut sound: Result<(), String> = Ok(());
    for form in Form::ALL {
        let mut t = Tally {
            solved: 0,
            rejected: 0,
            infeasible: 0,
            samples: 0,
            members: 0,
        };
        let mut attempts = 0;
        while t.solved < 50 || t.infeasible < 5 {
            attempts += 1;
            if attempts > 2000 {
                if t.solved < 50 {
                    return Err(format!("{form}: only {} solvable instances in 2000 draws", t.solved));
                }
                break;
            }
            // mostly shaped draws; raw draws exercise the infeasibility gates
            let shaped = t.solved < 50 && (t.infeasible >= 5 || rng.gen_bool(0.8));
            let inst = random_instance(&mut rng, form, &range, shaped);
            match solve(&inst) {
                Ok(report) => {
                    if t.solved >= 50 {
                        continue;
                    }
                    t.solved += 1;
                    let oracle = grid_optimize(&inst, &default_grid(&inst)).map_err(|e| format!("{form}: {e} on {inst:?}"))?;
                    ensure(oracle.best_value == report.value, || {
                        format!(
                            "{form}: solver {} vs grid {} on {inst:?}",
                            report.value, oracle.best_value
                        )
                    })?;
                    if sound.is_ok() {
                        let seed = rng.gen();
                        sound = check_samples(&inst, &report, 50, seed)
                            .map(|n| t.samples += n)
                            .map_err(|e| format!("{form}: {e} on {inst:?}"))
                            .and_then(|_| members_in_set(form, &report.set, &oracle.argbest).map(|m| t.members += m));
                    }
                }
                Err(e) => {
                    if check_rejection(&inst, &e)? {
                        t.infeasible += 1;
                    }
                    t.rejected += 1;
                }
            }
        }
        lines.push(format!("{}:{}/{}", form.id().split('-').next().unwrap(), t.solved, t.infeasible));
        total.solved += t.solved;
        total.rejected += t.rejected;
        total.infeasible += t.infeasible;
        total.samples += t.samples;
        total.members += t.members;
    }
    *soundness = sound.map(|_| format!("{} samples, {} optimal grid points in complete sets", total.samples, total.members));
    Ok(format!(
        "{} solved, {} rejected ({} infeasible, grid empty) [{}]",
        total.solved,
        total.rejected,
        total.infeasible,
        lines.join(" ")
    ))
}

// ---- criterion 5 ------------------------------------------------------------

fn specialization() -> Outcome {
    let range = DataRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let same = |what: &str, l: tropopt::Result<S>, r: tropopt::Result<S>| -> Result<bool, String> {
        match (l, r) {
            (Ok(a), Ok(b)) => ensure(a == b, || format!("{what}: {a} vs {b}")).map(|_| true),
            (Err(a), Err(b)) => ensure(a.condition() == b.condition(), || format!("{what}: {a} vs {b}")).map(|_| false),
            (a, b) => Err(format!("{what}: {a:?} vs {b:?}")),
        }
    };
    let mut counts = [0usize; 4];
    let mut draws = 0;
    while counts.iter().any(|&c| c < 50) {
        draws += 1;
        if draws > 5000 {
            return Err(format!("too few solvable draws: {counts:?}"));
        }
        if let ProblemInstance::RayleighFull { a, b, g, .. } = random_instance(&mut rng, Form::RayleighFull, &range, true) {
            let n = a.rows();
            let ok = same(
                "P16(C = 0) vs P17",
                rayleigh_full(&a, &b, &M::zeros(1, n), &g, &V::ones(1)).map(|r| r.value),
                rayleigh_ineq(&a, &b, &g).map(|r| r.value),
            )?;
            counts[0] += ok as usize;
        }
        if let ProblemInstance::RayleighBox { a, g, h } = random_instance(&mut rng, Form::RayleighBox, &range, true) {
            let n = a.rows();
            let ok = same(
                "P16(B = 0, C = I) vs P18",
                rayleigh_full(&a, &M::zeros(n, n), &M::identity(n), &g, &h).map(|r| r.value),
                rayleigh_box(&a, &g, &h).map(|r| r.value),
            )?;
            counts[1] += ok as usize;
        }
        if let ProblemInstance::ChebyBox { p, q, g, h } = random_instance(&mut rng, Form::ChebyBox, &range, true) {
            let n = p.dim();
            let ok = same(
                "P6(B = 0) vs P4",
                cheby_ineq(&M::zeros(n, n), &p, &q, &g, Some(&h)).map(|r| r.value),
                cheby_box(&p, &q, &g, &h).map(|r| r.value),
            )?;
            counts[2] += ok as usize;
        }
        if let ProblemInstance::SpanMax { a, b, p, q } = random_instance(&mut rng, Form::SpanMax, &range, true) {
            let n = a.cols();
            let ok = same(
                "P13(C = 0) vs P11",
                span_max_constrained(&a, &b, &M::zeros(n, n), &p, &q, ConstraintKind::Inequality).map(|r| r.value),
                span_max(&a, &b, &p, &q).map(|r| r.value),
            )?;
            counts[3] += ok as usize;
        }
    }
    Ok(format!("{counts:?} equal values"))
}

// ---- criterion 6 ------------------------------------------------------------

fn identity_span() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    for n in 1..=6 {
        let i = M::identity(n);
        let ones = V::ones(n);
        let inst = ProblemInstance::SpanMin {
            a: i.clone(),
            b: i,
            p: ones.clone(),
            q: ones.clone(),
        };
        let report = solve(&inst).map_err(|e| e.to_string())?;
        ensure(report.value == one(), || format!("n = {n}: minimum {}", report.value))?;
        for _ in 0..20 {
            let x = ones.scale(rational(&mut rng));
            let v = evaluate_objective(&inst, &x).unwrap();
            ensure(v == one(), || format!("n = {n}: objective {v} at {x:?}"))?;
        }
        check_samples(&inst, &report, 50, rng.gen()).map_err(|e| e.to_string())?;
    }
    Ok("Δ = 𝟙 for n = 1..6".into())
}

// ---- criterion 7 ------------------------------------------------------------

fn duality() -> Outcome {
    let range = DataRange::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut solved = 0;
    let mut draws = 0;
    while solved < 50 {
        draws += 1;
        let form = Form::ALL[draws % Form::ALL.len()];
        let inst = random_instance(&mut rng, form, &range, true);
        let mirror: ProblemInstance<MinPlus> = inst.map(|s| s.mirror());
        match (solve(&inst), solve(&mirror)) {
            (Ok(a), Ok(b)) => {
                ensure(a.value.mirror() == b.value, || format!("{form}: {} vs {}", a.value, b.value))?;
                ensure(a.witness.map(|s| s.mirror()) == b.witness, || format!("{form}: witnesses differ"))?;
                solved += 1;
            }
            (Err(a), Err(b)) => ensure(a == b, || format!("{form}: {a} vs {b}"))?,
            (a, b) => return Err(format!("{form}: {a:?} vs {b:?}")),
        }
    }
    Ok(format!("{solved} instances over all forms"))
}

// ---- criterion 8 ------------------------------------------------------------

fn golden_corpus() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().ends_with(".report.json"))
        .collect();
    files.sort();
    let run = |args: &[&str], file: &Path| {
        Command::new(env!("CARGO_BIN_EXE_tropopt"))
            .env_remove("TROPOPT_MODE")
            .args(args)
            .arg(file)
            .output()
            .map_err(|e| e.to_string())
    };
    for file in &files {
        let name = file.file_name().unwrap().to_string_lossy();
        let out = run(&["solve"], file)?;
        let expected = std::fs::read(file.with_extension("report.json")).map_err(|e| format!("{name}: {e}"))?;
        ensure(out.status.code() == Some(0) && out.stdout == expected, || format!("{name}: report differs"))?;
        let out = run(&["verify"], file)?;
        ensure(out.status.code() == Some(0), || format!("{name}: verify exited {:?}", out.status.code()))?;
        let out = run(&["verify", "--inject-fault"], file)?;
        ensure(out.status.code() == Some(4), || format!("{name}: fault gave exit {:?}", out.status.code()))?;
    }
    ensure(files.len() >= Form::ALL.len(), || format!("only {} examples", files.len()))?;
    Ok(format!("{} examples", files.len()))
}

// ---- driver -----------------------------------------------------------------

fn report(id: usize, name: &str, budget: Option<Duration>, elapsed: Duration, outcome: &Outcome) -> bool {
    let over = budget.is_some_and(|b| elapsed > b);
    let (status, detail) = match outcome {
        Ok(_) if over => ("FAIL", format!("took {elapsed:.1?}, budget {:?}", budget.unwrap())),
        Ok(d) => ("PASS", d.clone()),
        Err(e) => ("FAIL", e.clone()),
    };
    println!("{status} {id}. {name}: {detail} ({elapsed:.1?})");
    status == "PASS"
}

fn timed(f: impl FnOnce() -> Outcome) -> (Duration, Outcome) {
    let start = Instant::now();
    let out = f();
    (start.elapsed(), out)
}

fn main() {
    let mut ok = true;

    let (t, out) = timed(algebraic_laws);
    ok &= report(1, "algebraic laws", Some(Duration::from_secs(10)), t, &out);

    let (t, out) = timed(spectral_suite);
    ok &= report(2, "spectral radius and eigenvectors", Some(Duration::from_secs(30)), t, &out);

    let mut soundness = Err("not run".to_string());
    let (t, out) = timed(|| oracle_suite(&mut soundness));
    ok &= report(3, "oracle optimality", Some(Duration::from_secs(300)), t, &out);
    if out.is_err() && soundness == Err("not run".to_string()) {
        soundness = Err("oracle suite did not complete".into());
    }
    ok &= report(4, "solution-set soundness", None, t, &soundness);

    let (t, out) = timed(specialization);
    ok &= report(5, "specialization consistency", None, t, &out);

    let (t, out) = timed(identity_span);
    ok &= report(6, "identity span minimum", None, t, &out);

    let (t, out) = timed(duality);
    ok &= report(7, "max-plus / min-plus duality", None, t, &out);

    let (t, out) = timed(golden_corpus);
    ok &= report(8, "CLI golden corpus", None, t, &out);

    if !ok {
        std::process::exit(1);
    }
}
