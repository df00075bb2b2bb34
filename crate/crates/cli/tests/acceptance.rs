//! Acceptance criteria 1–9, one line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use hyperforge::algebroid::{self, AlgebroidSpec, Form, Mu, Section, ValuedForm};
use hyperforge::coeff::{CoeffMatrix, RatFunc};
use hyperforge::hyperstruct::{self, StructClass, SymplecticTriple};
use hyperforge_cli::Loaded;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperforge")).args(args).output().expect("run hyperforge");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn basis() -> Loaded {
    hyperforge_cli::load(&fixture("r4_basis.json")).expect("basis fixture")
}

fn golden(loaded: &Loaded) -> Vec<([usize; 3], SymplecticTriple)> {
    let forms: Vec<&CoeffMatrix> = loaded.forms.values().collect();
    let mut out = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let t = hyperstruct::build_triple(&loaded.mu, [forms[a], forms[b], forms[c]]).expect("golden triple");
                out.push(([a + 1, b + 1, c + 1], t));
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let (code, out) = run_cli(&["enumerate", fixture("r4_basis.json").to_str().unwrap(), "--json"]);
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let triples = report["triples"].as_array().ok_or("no triples")?;
    ensure(triples.len() == 20, || format!("{} triples", triples.len()))?;
    let index = |v: &serde_json::Value| -> usize { v.as_str().unwrap().trim_start_matches("omega").parse().unwrap() };
    let (mut hyper, mut fam_a, mut fam_b) = (Vec::new(), 0, 0);
    for t in triples {
        let idx: Vec<usize> = t["forms"].as_array().unwrap().iter().map(index).collect();
        match t["report"]["class"].as_str().unwrap() {
            "Hypersymplectic" => hyper.push(idx),
            "ParaHypersymplectic" => {
                let low = idx.iter().filter(|&&i| i <= 3).count();
                if low == 2 {
                    fam_a += 1;
                } else if low == 1 {
                    fam_b += 1;
                }
            }
            other => return Err(format!("{idx:?} classified {other}")),
        }
    }
    ensure(hyper == vec![vec![1, 2, 3], vec![4, 5, 6]], || format!("hypersymplectic: {hyper:?}"))?;
    ensure(fam_a == 9 && fam_b == 9, || format!("para families {fam_a}+{fam_b}"))?;
    let summary = &report["summary"]["by_class"];
    ensure(summary["Hypersymplectic"] == 2 && summary["ParaHypersymplectic"] == 18, || summary.to_string())?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("20 triples: 2 hypersymplectic, 9+9 para, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let mut fixtures = vec![("so(3)", AlgebroidSpec::so3())];
    for rank in 1..=4 {
        fixtures.push(("abelian", AlgebroidSpec::abelian(names(2), rank).unwrap()));
    }
    for n in 1..=4 {
        fixtures.push(("tangent", AlgebroidSpec::tangent(names(n)).unwrap()));
    }
    for (name, spec) in &fixtures {
        ensure(algebroid::build_mu(spec).check_jacobi(), || format!("{name} rank {} fails Jacobi", spec.rank()))?;
    }
    let (code, out) = run_cli(&["validate", fixture("broken_jacobi.json").to_str().unwrap(), "--json"]);
    ensure(code == 1, || format!("broken fixture exit {code}"))?;
    ensure(out.contains("jacobi"), || "error does not name the Jacobi check".into())?;
    let (code, _) = run_cli(&["validate", fixture("so3.json").to_str().unwrap()]);
    ensure(code == 0, || format!("so3 fixture exit {code}"))?;
    Ok(format!("{} fixtures satisfy {{mu,mu}}=0; broken constants exit 1", fixtures.len()))
}

fn criterion_3() -> Check {
    let loaded = basis();
    let mut checked = 0;
    for (idx, t) in golden(&loaded) {
        let report = hyperstruct::classify(&t);
        ensure(!report.suite.is_empty(), || format!("{idx:?}: empty suite"))?;
        for family in ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R11"] {
            ensure(report.suite.iter().any(|c| c.name.split(' ').next() == Some(family)), || {
                format!("{idx:?}: {family} missing")
            })?;
        }
        let failed: Vec<_> = report.suite.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        ensure(failed.is_empty(), || format!("{idx:?}: {failed:?}"))?;
        checked += report.suite.len();
    }
    Ok(format!("{checked} identities over 20 triples, all exact"))
}

fn criterion_4() -> Check {
    let loaded = basis();
    let mu = &loaded.mu;
    for (idx, t) in golden(&loaded) {
        let eps = hyperstruct::epsilon_signature(&t).ok_or("no signature")?;
        let g = hyperstruct::metric_g(&t, &eps).map_err(|e| e.to_string())?;
        let inv = hyperstruct::induced_structures(&t, &eps, &g);
        for kind in [hyperstruct::PairKind::POmega, hyperstruct::PairKind::PN, hyperstruct::PairKind::OmegaN] {
            ensure(inv.count(kind) == 6, || format!("{idx:?}: {kind:?} {}", inv.count(kind)))?;
        }
        for i in 0..3 {
            for j in i + 1..3 {
                ensure(hyperstruct::poisson_compatible(mu, t.pi(i), t.pi(j)), || format!("{idx:?}: [p{i},p{j}]"))?;
                let c = hyperstruct::nijenhuis_compatible(mu, t.n(i), t.n(j)).map_err(|e| e.to_string())?;
                ensure(c.frolicher_nijenhuis && c.torsion_of_sum && c.agree(), || format!("{idx:?}: N{i},N{j} {c:?}"))?;
            }
        }
    }
    Ok("18 induced pairs, Poisson and Nijenhuis compatibility (both paths) on 20 triples".into())
}

fn criterion_5() -> Check {
    let loaded = basis();
    let mut para = 0;
    for (idx, t) in golden(&loaded) {
        let eps = hyperstruct::epsilon_signature(&t).ok_or("no signature")?;
        let g = hyperstruct::metric_g(&t, &eps).map_err(|e| e.to_string())?;
        let hk = hyperstruct::to_hyperkahler(&t, &eps, &g).map_err(|e| e.to_string())?;
        ensure(hk.failures().is_empty(), || format!("{idx:?}: {:?}", hk.failures()))?;
        ensure(hk.n3_sign != 0, || format!("{idx:?}: N3 is not ±N1N2"))?;
        for i in 0..3 {
            let s = eps.get(i) * eps.get((i + 2) % 3);
            ensure(i64::from(hk.round_trip_sign[i]) == s, || format!("{idx:?}: sign {i}"))?;
        }
        if idx == [1, 2, 3] {
            ensure(hk.round_trip_sign == [1, 1, 1], || "round trip not exact".into())?;
        } else if eps.eps != [-1, -1, -1] {
            para += 1;
        }
    }
    Ok(format!("(w1,w2,w3) exact; {para} para triples up to the R6 sign"))
}

fn criterion_6() -> Check {
    const FIXTURES: usize = 120;
    let mut rng = rng(6);
    let sec = |mu: &Mu, c: &[RatFunc]| Section::new(mu.gens(), c.to_vec()).unwrap();
    for i in 0..FIXTURES {
        let spec = fixture_spec(&mut rng, i);
        let mu = algebroid::build_mu(&spec);
        let o = Oracle::from_spec(&spec);
        let d = spec.rank();
        let (x, y) = (random_section(&mut rng, &spec), random_section(&mut rng, &spec));
        let xy = algebroid::lie_bracket(&mu, &sec(&mu, &x), &sec(&mu, &y));
        ensure(xy.components() == o.bracket(&x, &y).as_slice(), || format!("fixture {i}: lie_bracket"))?;
        let s = algebroid::schouten(&mu, &sec(&mu, &x).to_multivector(), &sec(&mu, &y).to_multivector());
        ensure(s.elem() == xy.elem(), || format!("fixture {i}: schouten"))?;

        let n = random_matrix(&mut rng, d, spec.dim(), 1);
        let mu_n = algebroid::deform_by_endo(&mu, &endo(&spec, n.clone()));
        let got = algebroid::lie_bracket(&mu_n, &sec(&mu, &x), &sec(&mu, &y));
        ensure(got.components() == o.deformed_bracket(&n, &x, &y).as_slice(), || format!("fixture {i}: deform_by_endo"))?;

        let t = algebroid::torsion(&mu, &endo(&spec, n.clone()));
        let t = ValuedForm::from_elem(t.elem().clone(), 2).map_err(|e| format!("fixture {i}: {e}"))?;
        for a in 0..d {
            for b in 0..d {
                let expect = o.torsion(&n, &common::basis(d, a), &common::basis(d, b));
                for (c, v) in expect.iter().enumerate() {
                    ensure(&t.component(c, &[a, b]) == v, || format!("fixture {i}: torsion"))?;
                }
            }
        }
        let nv = endo(&spec, n.clone()).to_valued_form();
        let fnb = algebroid::frolicher_nijenhuis(&mu, &nv, &nv).map_err(|e| e.to_string())?;
        ensure(fnb.elem() == &t.elem().scale_int(-2), || format!("fixture {i}: [N,N]_FN"))?;

        let pi = random_antisymmetric(&mut rng, d, spec.dim(), 1);
        let mu_pi = algebroid::deform_by_bivector(&mu, &bivector(&spec, &pi));
        let (alpha, beta) = (random_section(&mut rng, &spec), random_section(&mut rng, &spec));
        let (fa, fb) = (one_form(&spec, &alpha), one_form(&spec, &beta));
        let got = algebroid::dual_bracket(&mu_pi, &fa, &fb);
        let expect = pi_bracket(&o, &pi, &alpha, &beta);
        for (k, v) in expect.iter().enumerate() {
            ensure(&got.component(&[k]) == v, || format!("fixture {i}: deform_by_bivector"))?;
        }

        let c = Mu::from_elem(algebroid::concomitant(&mu, &bivector(&spec, &pi), &endo(&spec, n.clone())));
        let got = algebroid::dual_bracket(&c, &fa, &fb);
        let nt = n.transpose();
        let second = sub(
            &add(
                &pi_bracket(&o, &pi, &mat_apply(&nt, &alpha), &beta),
                &pi_bracket(&o, &pi, &alpha, &mat_apply(&nt, &beta)),
            ),
            &mat_apply(&nt, &pi_bracket(&o, &pi, &alpha, &beta)),
        );
        let expect = sub(&pi_bracket(&o.deformed(&n), &pi, &alpha, &beta), &second);
        for (k, v) in expect.iter().enumerate() {
            ensure(&got.component(&[k]) == v, || format!("fixture {i}: concomitant"))?;
        }
    }
    Ok(format!("{FIXTURES} fixtures, big bracket = component formulas"))
}

fn criterion_7() -> Check {
    let mut rng = rng(7);
    let spec = AlgebroidSpec::tangent(names(4)).unwrap();
    let mu = algebroid::build_mu(&spec);
    for k in 0..20 {
        let pi = bivector(&spec, &random_antisymmetric(&mut rng, 4, 0, 0));
        let w = Form::two_form(spec.gens(), &random_antisymmetric(&mut rng, 4, 0, 0)).unwrap();
        ensure(algebroid::lemma_ksr_check(&mu, &pi, &w), || format!("constant case {k}"))?;
    }
    let spec = AlgebroidSpec::tangent(names(2)).unwrap();
    let mu = algebroid::build_mu(&spec);
    for k in 0..20 {
        let pi = bivector(&spec, &random_antisymmetric(&mut rng, 2, 2, 2));
        let w = Form::two_form(spec.gens(), &random_antisymmetric(&mut rng, 2, 2, 2)).unwrap();
        ensure(algebroid::lemma_ksr_check(&mu, &pi, &w), || format!("polynomial case {k}"))?;
    }
    Ok("20 constant pairs on TR4, 20 polynomial pairs on TR2".into())
}

fn criterion_8() -> Check {
    let found = matrix::positive_product_search();
    ensure(!found.is_empty(), || "no product +1 triple within the search budget".into())?;
    let spec = AlgebroidSpec::tangent(names(4)).unwrap();
    let mu = algebroid::build_mu(&spec);
    let step = found.len().div_ceil(12);
    let mut checked = 0;
    for (ws, _) in found.iter().step_by(step) {
        let cm: Vec<CoeffMatrix> = ws.iter().map(matrix::to_coeff).collect();
        let t = hyperstruct::build_triple(&mu, [&cm[0], &cm[1], &cm[2]]).map_err(|e| e.to_string())?;
        let report = hyperstruct::classify(&t);
        ensure(report.class == StructClass::PositiveProduct, || format!("{:?}", report.class))?;
        let eps = report.epsilon.unwrap();
        let g = hyperstruct::metric_g(&t, &eps).map_err(|e| e.to_string())?;
        let gb = g.inverse_as_bivector(&mu).map_err(|e| e.to_string())?;
        let gf = g.as_form(&mu).map_err(|e| e.to_string())?;
        ensure(hyperstruct::poisson_compatible(&mu, &gb, &gb), || "g^-1 not Poisson".into())?;
        for i in 0..3 {
            ensure(algebroid::concomitant(&mu, t.pi(i), t.n(i)).is_zero(), || format!("C(p{i},N{i})"))?;
            let c = algebroid::contract_bivector(t.pi(i), &t.n_matrix(i).transpose()).map_err(|e| e.to_string())?;
            let expect = g.ginv.transpose().scale_int(2 * eps.get(i + 1));
            ensure(c.matrix() == expect, || format!("i_(N{i}*) p{i}"))?;
            ensure(hyperstruct::is_p_omega(&mu, t.pi(i), &gf) == Ok(true), || format!("(p{i}, g)"))?;
            ensure(hyperstruct::is_p_omega(&mu, &gb, t.omega(i)) == Ok(true), || format!("(g^-1, w{i})"))?;
            ensure(hyperstruct::poisson_compatible(&mu, t.pi(i), &gb), || format!("[p{i}, g^-1]"))?;
        }
        ensure(report.all_passed(), || format!("{:?}", report.failed_identities()))?;
        checked += 1;
    }
    Ok(format!("{} product +1 triples found (all with a repeated form up to sign); {checked} verified", found.len()))
}

fn criterion_9() -> Check {
    let loaded = basis();
    let forms: Vec<&CoeffMatrix> = loaded.forms.values().collect();
    for (idx, t) in golden(&loaded) {
        let base = hyperstruct::classify(&t);
        for flip in 0..3 {
            let mut ws: Vec<CoeffMatrix> = idx.iter().map(|&i| forms[i - 1].clone()).collect();
            ws[flip] = ws[flip].neg();
            let t = hyperstruct::build_triple(&loaded.mu, [&ws[0], &ws[1], &ws[2]]).map_err(|e| e.to_string())?;
            let r = hyperstruct::classify(&t);
            ensure(r.input_epsilon == base.input_epsilon && r.class == base.class, || {
                format!("{idx:?} flip {}", flip + 1)
            })?;
        }
    }
    Ok("60 flipped triples keep signature and class".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("R4 golden classification", criterion_1),
        ("Jacobi gate", criterion_2),
        ("proposition suite R1-R11", criterion_3),
        ("induced structures", criterion_4),
        ("hyperkahler round trip", criterion_5),
        ("cross-oracle calibration", criterion_6),
        ("KSR lemma", criterion_7),
        ("positive product suite", criterion_8),
        ("sign-flip invariance", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
