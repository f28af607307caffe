//! Acceptance suite: drives the `lieatom` binary and prints one line per
//! criterion. Runs without the libtest harness so the lines always show.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_rational::BigRational;
use serde_json::Value;

struct Run {
    code: i32,
    json: Value,
    stderr: String,
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lieatom(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_lieatom"))
        .current_dir(root())
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    Run {
        code: out.status.code().unwrap_or(-1),
        json: serde_json::from_str(&text).unwrap_or(Value::Null),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn raw(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_lieatom"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs")
        .stdout
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Exit 0 and every listed check passed.
fn all_pass(r: &Run, what: &str) -> Result<usize, String> {
    let checks = r.json["checks"].as_array().ok_or_else(|| format!("{what}: no report ({})", r.stderr.trim()))?;
    if let Some(bad) = checks.iter().find(|c| c["status"] == "fail") {
        return Err(format!("{what}: {} failed [{}]", bad["name"], bad["witness"]));
    }
    ensure(r.code == 0, format!("{what}: exit code {}", r.code))?;
    Ok(checks.len())
}

fn status(r: &Run, name: &str) -> Option<String> {
    r.json["checks"]
        .as_array()?
        .iter()
        .find(|c| c["name"] == name)
        .and_then(|c| c["status"].as_str().map(String::from))
}

fn rational(s: &str) -> BigRational {
    s.parse().expect("rational literal")
}

/// `B_n / n!` from the Akiyama-Tanigawa algorithm (with `B_1 = +1/2`,
/// flipped to the `x/(e^x - 1)` convention).
fn bernoulli_over_factorial(n: usize) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut fact = BigRational::from_integer(1.into());
    for m in 0..=n {
        if m > 0 {
            fact *= BigRational::from_integer(m.into());
        }
        let mut a: Vec<BigRational> = (0..=m).map(|j| BigRational::new(1.into(), (j + 1).into())).collect();
        for k in (1..=m).rev() {
            for j in 0..k {
                a[j] = BigRational::from_integer((j + 1).into()) * (&a[j] - &a[j + 1]);
            }
        }
        let mut b = a[0].clone();
        if m == 1 {
            b = -b;
        }
        out.push(b / &fact);
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1() -> Outcome {
    let r = lieatom(&["bernoulli", "--order", "30", "--check", "all"]);
    let n = all_pass(&r, "bernoulli suite")?;
    let c = r.json["data"]["c"].as_array().ok_or("no coefficient list")?;
    let oracle = bernoulli_over_factorial(12);
    ensure(c.len() == 13, "expected c_0..c_12")?;
    for (k, (got, want)) in c.iter().zip(&oracle).enumerate() {
        ensure(rational(got.as_str().unwrap()) == *want, format!("c_{k} disagrees with the oracle"))?;
    }
    let v = lieatom(&["bernoulli", "--order", "30", "--check", "product_coeff_variant:1"]);
    ensure(v.code == 1, "the alternative coefficient form should be reported failing")?;
    Ok(format!("{n} identities exact to order 30; c_0..c_12 match the Akiyama-Tanigawa oracle"))
}

fn criterion_2() -> Outcome {
    let r = lieatom(&["lie", "verify", "--kind", "alternating", "--max-m", "6"]);
    let n = all_pass(&r, "alternating expansion")?;
    let d = &r.json["data"]["m0_discrepancy"];
    ensure(d["holds"] == false, "m = 0 discrepancy missing")?;
    ensure(d["lhs"] == "2*[a1,a2]" && d["closed_form"] == "[a1,a2]", "unexpected m = 0 values")?;
    let z = lieatom(&["lie", "verify", "--kind", "alternating", "--max-m", "0"]);
    ensure(z.code == 2, "max_m = 0 must be a usage error")?;
    Ok(format!("{n} orders exact; m = 0 reported as lhs 2*[a1,a2] vs closed form [a1,a2]"))
}

fn criterion_3() -> Outcome {
    let r = lieatom(&["lie", "verify", "--kind", "bernoulli-sum", "--max-m", "6"]);
    let n = all_pass(&r, "Bernoulli bracket sum")?;
    let w = &r.json["data"]["m2_witness"];
    let (big, c1) = (w["big_sum"].as_str().unwrap_or(""), w["c1_term"].as_str().unwrap_or(""));
    ensure(big.starts_with("1/2*") && c1.starts_with("-1/2*"), "m = 2 witness missing")?;
    ensure(big.trim_start_matches("1/2*") == c1.trim_start_matches("-1/2*").replace("- 1/2*", "+ 1/2*"), "witness terms do not cancel")?;
    let one = lieatom(&["lie", "verify", "--kind", "bernoulli-sum", "--max-m", "1"]);
    all_pass(&one, "m = 1")?;
    ensure(one.json["data"].get("m2_witness").is_none(), "m = 1 run should carry no witness")?;
    Ok(format!("{n} orders exact; m = 2 big sum {big} cancels {c1}"))
}

fn criterion_4() -> Outcome {
    let r = lieatom(&["random-pairs", "--count", "20", "--max-dim", "4", "--max-m", "4"]);
    let n = all_pass(&r, "random pairs")?;
    let d2s = r.json["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().ends_with(".d2")).count();
    ensure(d2s == 20, format!("expected 20 d2 checks, found {d2s}"))?;
    for (s, a) in [("1", "2"), ("1", "3"), ("2", "4")] {
        let g = lieatom(&["examples", "grassmannian", "--dims", s, a, "--m", "3"]);
        all_pass(&g, "grassmannian")?;
        ensure(status(&g, "d2").as_deref() == Some("pass"), format!("d2 for ({s},{a})"))?;
    }
    let h = lieatom(&["complex", "data/heisenberg_pair.json", "--m", "3", "--d2"]);
    all_pass(&h, "Heisenberg pair")?;
    Ok(format!("{n} checks on 20 seeded pairs; gl sub (1,2), (1,3), (2,4) and Heisenberg at m = 3"))
}

fn criterion_5() -> Outcome {
    let mut seen = Vec::new();
    for (s, a, m) in [(1usize, 2usize, 3usize), (1, 3, 3), (2, 4, 2)] {
        let r = lieatom(&["examples", "grassmannian", "--dims", &s.to_string(), &a.to_string(), "--m", &m.to_string()]);
        all_pass(&r, "grassmannian")?;
        let d = s * (a - s);
        let want: Vec<usize> = (1..=m).map(|k| binom(d + k - 1, k)).collect();
        let h0 = r.json["data"]["h0_dim"].as_u64().ok_or("no h0_dim")? as usize;
        ensure(h0 == want.iter().sum::<usize>(), format!("dim H0 = {h0} for ({s},{a},{m})"))?;
        let graded: Vec<usize> = serde_json::from_value(r.json["data"]["graded"]["graded_dims"].clone()).map_err(|e| e.to_string())?;
        ensure(graded == want, format!("graded {graded:?} against {want:?}"))?;
        seen.push(format!("({s},{a},{m}): {h0}"));
    }
    Ok(format!("dim H0 {}", seen.join(", ")))
}

fn criterion_6() -> Outcome {
    let r = lieatom(&["complex", "data/line_pair.json", "--m", "3", "--ring"]);
    all_pass(&r, "line pair ring")?;
    let table = &r.json["data"]["ring"]["table"];
    let want = serde_json::json!([[0, 0, [[1, "2"]]], [0, 1, [[2, "3"]]]]);
    ensure(*table == want, format!("line ring table {table}"))?;
    ensure(r.json["data"]["ring"]["dim"] == 4, "line ring should have dimension 4")?;
    let q = lieatom(&["complex", "data/identity_line_pair.json", "--m", "3", "--ring"]);
    all_pass(&q, "quasi-trivial pair")?;
    ensure(q.json["data"]["ring"]["dim"] == 1, "quasi-trivial ring should be Q")?;
    let rings = lieatom(&["examples", "rings", "--m", "3"]);
    let mut n = all_pass(&rings, "stock rings")?;
    for (s, a, m) in [("1", "2", "3"), ("1", "3", "3"), ("2", "4", "2")] {
        let g = lieatom(&["examples", "grassmannian", "--dims", s, a, "--m", m]);
        all_pass(&g, "grassmannian axioms")?;
        for name in ["h0.coassociative", "h0.cocommutative", "h0.descends", "ring.associative", "ring.commutative"] {
            ensure(status(&g, name).as_deref() == Some("pass"), format!("{name} for ({s},{a})"))?;
            n += 1;
        }
    }
    Ok(format!("Q[t]/t^4 with binomial table, quasi-trivial ring Q, {n} axiom checks"))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    let mut runs = vec![lieatom(&["examples", "rings", "--m", "3"])];
    for (s, a, m) in [("1", "2", "3"), ("1", "3", "3"), ("2", "4", "2")] {
        runs.push(lieatom(&["examples", "grassmannian", "--dims", s, a, "--m", m]));
    }
    for r in &runs {
        all_pass(r, "tower")?;
        for c in r.json["checks"].as_array().unwrap() {
            if c["name"].as_str().unwrap().contains("tower.") {
                ensure(c["status"] == "pass", format!("{} failed", c["name"]))?;
                n += 1;
            }
        }
    }
    ensure(n == 15, format!("expected 15 tower checks, found {n}"))?;
    Ok(format!("{n} tower checks (surjective, multiplicative, kills m^m)"))
}

fn criterion_8() -> Outcome {
    let r = lieatom(&["examples", "quasi-iso", "--max-m", "3"]);
    let n = all_pass(&r, "quasi-isomorphisms")?;
    let dims = r.json["data"]["h0_dims"].as_object().ok_or("no h0 dims")?;
    for (k, v) in dims {
        ensure(v[0] == v[1], format!("{k}: {v}"))?;
    }
    Ok(format!("{n} morphisms induce isomorphisms on H0 for m <= 3"))
}

fn criterion_9() -> Outcome {
    let r = lieatom(&["ks-suite"]);
    let n = all_pass(&r, "deformation suite")?;
    let names: Vec<&str> = r.json["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let count = |p: &str| names.iter().filter(|x| x.starts_with(p)).count();
    ensure(count("intertwine:") == 10 && count("gauge:") == 25, "expected 10 intertwine and 25 gauge cases")?;
    ensure(names.contains(&"orbit.heisenberg_hull"), "orbit closure check missing")?;
    let ob = lieatom(&["mc", "data/obstruction_mc.json"]);
    ensure(ob.code == 1 && status(&ob, "mc").as_deref() == Some("fail"), "obstruction must fail mc")?;
    let w = &ob.json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "mc").unwrap()["witness"];
    ensure(*w == "1/2·w⊗t^2", format!("obstruction witness {w}"))?;
    let ab = lieatom(&["mc", "data/abelian_mc.json"]);
    all_pass(&ab, "abelian deformation file")?;
    Ok(format!("{n} seeded checks; obstruction witness {w}"))
}

fn criterion_10(started: Instant) -> Outcome {
    let documented: &[&[&str]] = &[
        &["--seed", "7", "random-pairs", "--count", "5"],
        &["--seed", "7", "ks-suite"],
        &["complex", "data/filiform_atom.json", "--m", "2"],
        &["lie", "check", "data/heisenberg_pair.json"],
    ];
    for args in documented {
        let (a, b) = (raw(args), raw(args));
        ensure(!a.is_empty() && a == b, format!("report of {args:?} is not reproducible"))?;
    }
    let plain = String::from_utf8(raw(&["random-pairs", "--count", "1"])).unwrap();
    ensure(plain.contains("seed: 2024"), "default seed is not printed")?;
    let json = String::from_utf8(raw(&["--format", "json", "bernoulli", "--order", "4", "--check", "quad_rec"])).unwrap();
    ensure(!json.contains("timing_ms"), "timing should be omitted by default")?;
    let dir = std::env::temp_dir().join(format!("lieatom-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"format": 1, "lie_algebra": {"dim": 2, "brackets": [[0, 1, [[1, "1/0"]]]]}, "module": {"dim": 0}, "atom_i": []}"#).unwrap();
    let r = lieatom(&["complex", bad.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    ensure(r.code == 2 && r.stderr.contains("lie_algebra.brackets[0][2][0][1]"), format!("parse error: {}", r.stderr.trim()))?;
    ensure(lieatom(&["bernoulli", "--check", "nosuch"]).code == 2, "bad tag must be a usage error")?;
    ensure(lieatom(&["examples", "grassmannian", "--dims", "2", "2"]).code == 2, "(2, 2) must be a usage error")?;
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 300.0, format!("suite took {secs:.1} s"))?;
    Ok(format!("reproducible reports, exit codes and parse paths; whole suite {secs:.1} s"))
}

fn main() {
    let started = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Bernoulli series identities", Box::new(criterion_1)),
        ("alternating bracket expansion", Box::new(criterion_2)),
        ("Bernoulli-weighted bracket sum", Box::new(criterion_3)),
        ("composite differentials vanish", Box::new(criterion_4)),
        ("Grassmannian germs", Box::new(criterion_5)),
        ("deformation ring structure", Box::new(criterion_6)),
        ("ring tower", Box::new(criterion_7)),
        ("quasi-isomorphism invariance", Box::new(criterion_8)),
        ("Maurer-Cartan and compatibility", Box::new(criterion_9)),
        ("end-to-end command line", Box::new(move || criterion_10(started))),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({:.2} s)", k + 1, t.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
