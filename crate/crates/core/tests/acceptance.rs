//! The seven acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use wittkit::automorphism::{
    aut_apply, aut_compose, aut_verify, extend_from_generators, rigidity_check, AutElement,
    Character,
};
use wittkit::cohomology::{
    coboundary_fit, cocycle_condition_check, ladder_check, normalize_cocycle, required_window,
    Cocycle, CocycleTable, LinearFunctional,
};
use wittkit::derivation::{
    decompose_derivation, direct_sum_check, leibniz_check, AdditiveMap, DerivationSpec,
};
use wittkit::dsl::{parse, print};
use wittkit::ground::{Gamma, GroupElement, Scalar, ScaleMap};
use wittkit::lie::{jacobi_sweep, BasisIndex, BracketRule, CompletionElement, Element};
use wittkit::structure::{
    ad_probe, filtration_level, ideal_generated, nested_bracket_span_check, theta_apply,
};
use wittkit::window::Window;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: wittkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let q = Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        if !(nonzero && q.is_zero()) {
            return q;
        }
    }
}

fn degree(rng: &mut ChaCha8Rng, gamma: &Gamma, bound: i64) -> GroupElement {
    let coords: Vec<i64> = (0..gamma.rank())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    gamma.element(&coords)
}

fn random_element(rng: &mut ChaCha8Rng, gamma: &Gamma, bound: i64, max_level: u32) -> Element {
    loop {
        let n = rng.gen_range(1..=4);
        let x = Element::from_terms((0..n).map(|_| {
            let d = degree(rng, gamma, bound);
            (
                BasisIndex::new(d, rng.gen_range(0..=max_level)),
                rational(rng, true),
            )
        }));
        if !x.is_zero() {
            return x;
        }
    }
}

fn jacobi_suite() -> Check {
    let window = Window::new(3, 3).unwrap();
    let rules = [
        BracketRule::WGamma,
        BracketRule::WGammaHat,
        BracketRule::WittType,
        BracketRule::subquotient(0, 2).unwrap(),
    ];
    let mut triples = 0;
    for gamma in [Gamma::integers(), Gamma::symbolic(2)] {
        for rule in rules {
            let s = ok(jacobi_sweep(&gamma, window, rule))?;
            ensure(s.is_zero(), || {
                format!(
                    "rank {} rule {rule}: {:?}",
                    gamma.rank(),
                    s.failures.first()
                )
            })?;
            triples += s.checked;
        }
    }
    Ok(format!("{triples} triples, all residuals exactly 0"))
}

fn adprobe_witness() -> Check {
    let z = Gamma::integers();
    let l = |n: i64, i: u32| Element::basis(z.element(&[n]), i);
    let p = ok(ad_probe(&z, &l(1, 0), &l(0, 1), 8, BracketRule::WGamma))?;
    ensure(p.ranks == (1..=9).collect::<Vec<_>>(), || {
        format!("W ranks {:?}", p.ranks)
    })?;
    let mut fact = 1i64;
    for (k, h) in p.highest_terms.iter().enumerate() {
        if k > 0 {
            fact *= k as i64;
        }
        ensure(h.computed == Scalar::from_int(fact) && h.holds(), || {
            format!(
                "step {k}: top coefficient {}",
                z.display_scalar(&h.computed)
            )
        })?;
    }
    ensure(p.highest_terms.len() == 9, || {
        "missing highest terms".into()
    })?;
    let w = ok(ad_probe(&z, &l(0, 0), &l(1, 3), 10, BracketRule::WittType))?;
    ensure(w.ranks.iter().all(|&r| r <= 4), || {
        format!("Witt ranks {:?}", w.ranks)
    })?;
    Ok(format!(
        "W ranks {:?}, top coefficients k!; Witt ranks max {}",
        p.ranks,
        w.ranks.iter().max().unwrap()
    ))
}

fn ideals() -> Check {
    let z = Gamma::integers();
    let small = Window::new(3, 3).unwrap();
    let mut classified = 0;
    for (d, j) in small.basis(&z) {
        let r = ok(ideal_generated(&z, &Element::basis(d, j), small))?;
        let passed = r.window_check.as_ref().is_some_and(|c| c.passed());
        ensure(
            r.classified_as == format!("W^{j}") && passed && ok(r.replay(&z))?,
            || {
                format!(
                    "L({},{j}) classified {} closure {passed}",
                    z.format_degree(&d),
                    r.classified_as
                )
            },
        )?;
        classified += 1;
    }

    let window = Window::new(3, 6).unwrap();
    let mut thetas = 0;
    for gamma in [z.clone(), Gamma::symbolic(2)] {
        let degrees = if gamma.rank() == 1 {
            window.degrees(&gamma)
        } else {
            Window::new(1, 6).unwrap().degrees(&gamma)
        };
        for g in degrees.iter().filter(|g| !g.is_zero()) {
            let factor = gamma.embed(g).mul(&gamma.embed(g)).mul_int(-4);
            for beta in &degrees {
                for (b0, j0) in window
                    .basis(&gamma)
                    .into_iter()
                    .filter(|(b, _)| degrees.contains(b))
                {
                    let got = ok(theta_apply(&gamma, beta, g, &Element::basis(b0, j0)))?;
                    let want = Element::basis(beta.add(&b0), j0).scale(&factor);
                    ensure(got == want, || {
                        format!("θ mismatch at β={beta:?}, γ={g:?}, L({b0:?},{j0})")
                    })?;
                    thetas += 1;
                }
            }
        }
    }

    let mut spans = 0;
    for n in 0..=3 {
        for m in 0..=n {
            ensure(ok(nested_bracket_span_check(&z, n, m, window))?, || {
                format!("span fails for n={n}, m={m}")
            })?;
            spans += 1;
        }
    }
    Ok(format!(
        "{classified} ideals classified, {thetas} θ identities, {spans} nested spans"
    ))
}

fn derivations() -> Check {
    let z = Gamma::integers();
    let window = Window::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 0..50 {
        let y = random_element(&mut rng, &z, 2, 3);
        let phi = rational(&mut rng, false);
        let spec = DerivationSpec::Symbolic {
            y: CompletionElement::from_element(&y),
            phi: AdditiveMap::new(vec![phi.clone()]),
        };
        let table = ok(spec.tabulate(&z, window))?;
        let r = ok(decompose_derivation(&z, &table, window, 6))?;
        ensure(r.residual.is_zero() && r.y_in_w, || {
            format!("sample {n}: residual {:?}", r.residual.failures)
        })?;
        ensure(r.phi.values() == [phi.clone()], || {
            format!("sample {n}: φ recovered as {:?}", r.phi.values())
        })?;
        ensure(r.y.to_element().as_ref() == Some(&y), || {
            format!("sample {n}: y recovered differently")
        })?;
    }

    let ds = ok(direct_sum_check(&z, window, Window::new(3, 4).unwrap()))?;
    ensure(ds.phi_forced_zero && ds.y_forced_zero, || {
        format!("direct sum: {ds:?}")
    })?;

    let spec = DerivationSpec::Symbolic {
        y: CompletionElement::from_element(&Element::basis(z.element(&[1]), 1)),
        phi: AdditiveMap::zero(1),
    };
    let DerivationSpec::Table { mut images } = ok(spec.tabulate(&z, window))? else {
        return Err("tabulate returned a symbolic spec".into());
    };
    let key = (z.element(&[2]), 1);
    let bumped = images[&key].add(&CompletionElement::from_element(&Element::basis(
        z.element(&[2]),
        0,
    )));
    images.insert(key, bumped);
    let corrupted = ok(leibniz_check(&z, &DerivationSpec::Table { images }, window))?;
    ensure(!corrupted.is_zero(), || {
        "corrupted table passed the Leibniz check".into()
    })?;
    Ok(format!(
        "50 decompositions exact, direct sum over {} unknowns, corrupted table has {} nonzero residuals",
        ds.unknowns, corrupted.nonzero
    ))
}

fn random_aut(rng: &mut ChaCha8Rng, gamma: &Gamma) -> AutElement {
    let tau = Character::new((0..gamma.rank()).map(|_| rational(rng, true)).collect()).unwrap();
    let c = if rng.gen_bool(0.5) {
        ScaleMap::identity(gamma)
    } else {
        ScaleMap::negation(gamma)
    };
    AutElement::new(tau, c)
}

fn automorphisms() -> Check {
    let window = Window::new(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sweeps = 0;
    for gamma in [Gamma::integers(), Gamma::symbolic(2)] {
        let auts: Vec<AutElement> = (0..10).map(|_| random_aut(&mut rng, &gamma)).collect();
        for (k, a) in auts.iter().enumerate() {
            let s = ok(aut_verify(&gamma, a, window))?;
            ensure(s.is_zero(), || {
                format!("rank {} aut {k}: {:?}", gamma.rank(), s.failures.first())
            })?;
            ensure(ok(rigidity_check(&gamma, a, window))?, || {
                format!("rank {} aut {k} not rigid", gamma.rank())
            })?;
            sweeps += s.checked;

            let b = &auts[(k + 1) % auts.len()];
            let ab = aut_compose(&gamma, a, b);
            for (d, i) in window.basis(&gamma) {
                let x = Element::basis(d, i);
                let lhs = ok(aut_apply(&ab, &x))?;
                ensure(lhs == ok(aut_apply(a, &ok(aut_apply(b, &x))?))?, || {
                    format!("functoriality at {x:?}")
                })?;
            }
            for _ in 0..10 {
                let x = random_element(&mut rng, &gamma, 3, 3);
                let lhs = ok(aut_apply(&ab, &x))?;
                ensure(lhs == ok(aut_apply(a, &ok(aut_apply(b, &x))?))?, || {
                    "functoriality on a sum".into()
                })?;
                ensure(
                    ok(filtration_level(&ok(aut_apply(a, &x))?))? == ok(filtration_level(&x))?,
                    || "filtration level moved".into(),
                )?;
            }
        }
        // The map fixing every L(α,0), L(α,1) extends to the identity.
        let fixed: BTreeMap<_, _> = window
            .generators(&gamma)
            .into_iter()
            .map(|(d, i)| ((d, i), Element::basis(d, i)))
            .collect();
        let ext = ok(extend_from_generators(&gamma, &fixed, window))?;
        ensure(
            ext.iter().all(|((d, i), x)| *x == Element::basis(*d, *i)),
            || "identity extension moved".into(),
        )?;
    }
    // Over ℚ(g1,g2) the only admissible scale maps are ±1.
    let g = Gamma::symbolic(2);
    let shear = ScaleMap::new(&g, Scalar::one(), vec![vec![1, 1], vec![0, 1]]);
    ensure(shear.is_err(), || {
        "a shear was accepted as multiplication by a scalar".into()
    })?;
    Ok(format!(
        "20 automorphisms, {sweeps} bracket pairs, functoriality, filtration and rigidity exact"
    ))
}

fn cocycles() -> Check {
    let z = Gamma::integers();
    let window = Window::new(4, 4).unwrap();
    let closure = required_window(window);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tables = 0;
    for n in 0..100 {
        let c = rational(&mut rng, false);
        let mut f = LinearFunctional::zero();
        for _ in 0..rng.gen_range(1..=8) {
            let d = degree(&mut rng, &z, closure.degree_bound as i64);
            f.set(
                d,
                rng.gen_range(0..=closure.level_bound),
                rational(&mut rng, true),
            );
        }
        let mut psi = Cocycle::Canonical
            .scale(c.clone())
            .plus(Cocycle::Coboundary(f));
        if n % 10 == 0 {
            psi = Cocycle::Table(ok(CocycleTable::tabulate(&z, &psi, closure))?);
            tables += 1;
        }
        let r = ok(normalize_cocycle(&z, &psi, window))?;
        ensure(r.c == c, || {
            format!(
                "sample {n}: c = {} expected {}",
                z.display_scalar(&r.c),
                z.display_scalar(&c)
            )
        })?;
        ensure(r.success() && r.residual.is_zero(), || {
            format!("sample {n}: {:?}", r.residual.failures.first())
        })?;
        let ladder = ok(ladder_check(&z, &r.normalized(&psi), window, 5))?;
        ensure(ladder.is_zero(), || {
            format!("sample {n}: ladder {:?}", ladder.failures.first())
        })?;
    }

    let cyc = ok(cocycle_condition_check(&z, &Cocycle::Canonical, window))?;
    ensure(cyc.is_zero(), || {
        format!("φ₀ cyclic identity: {:?}", cyc.failures.first())
    })?;

    let fit = ok(coboundary_fit(
        &z,
        &Cocycle::Canonical,
        Window::new(3, 2).unwrap(),
    ))?;
    let lines: Vec<String> = fit.certificate.iter().map(|e| e.format(&z)).collect();
    ensure(
        !fit.feasible
            && lines
                == [
                    "-2*f(L(0,0)) = 0  from (L(1,0), L(-1,0))",
                    "-4*f(L(0,0)) = 1/2  from (L(2,0), L(-2,0))",
                ],
        || format!("fit: feasible {} certificate {lines:?}", fit.feasible),
    )?;
    Ok(format!(
        "100 normalizations exact ({tables} from raw tables), φ₀ cyclic over {} triples, certificate {}",
        cyc.checked,
        lines.join(" / ")
    ))
}

fn random_expr(rng: &mut ChaCha8Rng, gamma: &Gamma, depth: u32) -> String {
    let terms = rng.gen_range(1..=3);
    let mut out = String::new();
    for k in 0..terms {
        let sign = if rng.gen_bool(0.3) { "-" } else { "+" };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        match rng.gen_range(0..4) {
            0 => out.push_str(&format!("{}*", rng.gen_range(1..20))),
            1 => out.push_str(&format!("{}/{}*", rng.gen_range(1..9), rng.gen_range(2..9))),
            2 if gamma.rank() > 1 => out.push_str("((g1 - 2*g2)/(g2 + 1))*"),
            _ => {}
        }
        let atom = match rng.gen_range(0..if depth == 0 { 2 } else { 5 }) {
            0 => {
                let d = degree(rng, gamma, 4);
                format!("L({},{})", gamma.format_degree(&d), rng.gen_range(0..6))
            }
            1 => "C".to_string(),
            2 | 3 => format!(
                "[{}, {}]",
                random_expr(rng, gamma, depth - 1),
                random_expr(rng, gamma, depth - 1)
            ),
            _ => format!("({})", random_expr(rng, gamma, depth - 1)),
        };
        out.push_str(&atom);
    }
    out
}

fn report_without_timing(stdout: &[u8]) -> Option<Value> {
    let mut v: Value = serde_json::from_slice(stdout).ok()?;
    v.as_object_mut()?.remove("timing_ms");
    Some(v)
}

fn run_cli(args: &[&str]) -> (i32, Option<Value>) {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let out = Command::new(env!("CARGO_BIN_EXE_wittkit"))
        .args(args)
        .env("WITTKIT_GAMMA", format!("{data}/z.json"))
        .current_dir(data)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        report_without_timing(&out.stdout),
    )
}

fn parser_and_cli() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gammas = [Gamma::integers(), Gamma::symbolic(2)];
    for n in 0..200 {
        let gamma = &gammas[n % 2];
        let src = random_expr(&mut rng, gamma, 3);
        let ast = ok(parse(gamma, &src)).map_err(|e| format!("{src:?}: {e}"))?;
        let printed = print(gamma, &ast);
        let again = ok(parse(gamma, &printed)).map_err(|e| format!("{printed:?}: {e}"))?;
        ensure(again == ast, || {
            format!("round trip changed {src:?} into {printed:?}")
        })?;
    }

    let cases: [(&[&str], i32); 5] = [
        (&["jacobi", "--window", "2", "2", "--rule", "wgamma"], 0),
        (
            &[
                "cocycle",
                "fit",
                "--input",
                "cocycle_canonical.json",
                "--window",
                "3",
                "2",
                "--expect",
                "infeasible",
            ],
            0,
        ),
        (
            &[
                "cocycle",
                "fit",
                "--input",
                "cocycle_canonical.json",
                "--window",
                "3",
                "2",
                "--expect",
                "feasible",
            ],
            1,
        ),
        (&["eval", "garbage("], 2),
        (&["aut", "verify", "--input", "missing.json"], 2),
    ];
    for (args, want) in cases {
        let (code, report) = run_cli(args);
        ensure(code == want, || {
            format!("{args:?} exited {code}, expected {want}")
        })?;
        let report = report.ok_or_else(|| format!("{args:?} printed no report"))?;
        ensure(report["schema"] == "wittkit.report/1", || {
            format!("{args:?}: schema {}", report["schema"])
        })?;
        ensure(run_cli(args).1.as_ref() == Some(&report), || {
            format!("{args:?} is not deterministic")
        })?;
    }
    let (_, report) = run_cli(&["eval", "garbage("]);
    let kind = report
        .map(|r| r["error"]["kind"].clone())
        .unwrap_or_default();
    ensure(kind == "SyntaxError", || {
        format!("garbage reported as {kind}")
    })?;
    Ok("200 expressions round-trip, exit codes 0/1/2 and reports deterministic".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("jacobi suite", jacobi_suite),
        ("ad-probe witness", adprobe_witness),
        ("ideals at window scale", ideals),
        ("derivation round trip", derivations),
        ("automorphisms", automorphisms),
        ("cocycle normalization", cocycles),
        ("parser and CLI", parser_and_cli),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
