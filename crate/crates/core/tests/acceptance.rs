//! Acceptance suite. Runs each criterion in isolation, prints one
//! `criterion N: PASS|FAIL` line per criterion and exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::*;
use cpair::algebra::{adjoint_module, validate_pair, CourantPair};
use cpair::catalog::{self, leibniz_class};
use cpair::cochain::{alpha0, gerstenhaber, Bicomplex, Cochain, TotalCochain};
use cpair::cohomology::{
    class_representatives, cohomology_dim, column_cohomology, differential_columns, independent_in_cohomology,
    is_coboundary, is_cocycle, Column,
};
use cpair::deformation::{
    apply_equivalence, equivalent_infinitesimals_differ_by_coboundary, extend, infinitesimal, obstruction,
    obstruction_identities, theta_a_gerstenhaber, validate_deformation, Deformation, Equivalence,
};
use cpair::format::{cochain_json, total_json, DeformationDocument, PairDocument};
use cpair::linalg::Scalar;
use num_traits::One;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: cpair::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `(-1)^k` as a rational.
fn parity(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

const SAMPLES: usize = 100;

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (seed, e) in catalog::all().into_iter().enumerate() {
        let module = adjoint_module(&e.pair);
        let bc = lib(Bicomplex::new(&e.pair, &module))?;
        let mut rng = rng(100 + seed as u64);
        for n in 0..=2 {
            for p in 0..=n {
                let q = n - p;
                for _ in 0..SAMPLES {
                    let f = random_cochain(&mut rng, bc.shape(p, q));
                    let dl = lib(bc.leibniz_delta(&f))?;
                    ensure!(lib(bc.leibniz_delta(&dl))?.is_zero(), "{}: δ_L² ≠ 0 at ({p},{q})", e.name);
                    if p > 0 {
                        let dh = lib(bc.hochschild_delta(&f))?;
                        ensure!(lib(bc.hochschild_delta(&dh))?.is_zero(), "{}: δ_H² ≠ 0 at ({p},{q})", e.name);
                        ensure!(
                            lib(bc.leibniz_delta(&dh))? == lib(bc.hochschild_delta(&dl))?,
                            "{}: δ_Hδ_L ≠ δ_Lδ_H at ({p},{q})",
                            e.name
                        );
                    } else {
                        let dv = lib(bc.vertical_delta(&f))?;
                        ensure!(lib(bc.hochschild_delta(&dv))?.is_zero(), "{}: δ_Hδ_v ≠ 0 at (0,{q})", e.name);
                        ensure!(
                            lib(bc.leibniz_delta(&dv))? == lib(bc.vertical_delta(&dl))?,
                            "{}: δ_vδ_L ≠ δ_Lδ_v at (0,{q})",
                            e.name
                        );
                    }
                    checked += 1;
                }
            }
            for _ in 0..SAMPLES {
                let c = random_total(&mut rng, &bc, n);
                ensure!(lib(bc.total_delta(&lib(bc.total_delta(&c))?))?.is_zero(), "{}: δ_tot² ≠ 0 in degree {n}", e.name);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} random cochains over every catalog pair"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (seed, e) in catalog::all().into_iter().enumerate() {
        let module = adjoint_module(&e.pair);
        let bc = lib(Bicomplex::new(&e.pair, &module))?;
        let a0 = alpha0(&e.pair);
        let mut rng = rng(200 + seed as u64);
        for p in 1..=3 {
            for _ in 0..SAMPLES {
                let f = random_cochain(&mut rng, bc.shape(p, 0));
                let rhs = lib(gerstenhaber(&a0, &f))?.scale(&parity(p - 1));
                ensure!(lib(bc.hochschild_delta(&f))? == rhs, "{}: δ_H f ≠ ±[α₀,f] for p = {p}", e.name);
                checked += 1;
            }
        }
        for _ in 0..SAMPLES {
            let degs: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 1..=3usize)).collect();
            let [x, y, z] = [degs[0], degs[1], degs[2]].map(|p| random_cochain(&mut rng, bc.shape(p, 0)));
            let (dx, dy, dz) = (degs[0] - 1, degs[1] - 1, degs[2] - 1);
            let xy = lib(gerstenhaber(&x, &y))?;
            let yx = lib(gerstenhaber(&y, &x))?;
            ensure!(xy == yx.scale(&-parity(dx * dy)), "{}: graded antisymmetry fails for degrees {degs:?}", e.name);
            let j1 = lib(gerstenhaber(&x, &lib(gerstenhaber(&y, &z))?))?.scale(&parity(dx * dz));
            let j2 = lib(gerstenhaber(&y, &lib(gerstenhaber(&z, &x))?))?.scale(&parity(dy * dx));
            let j3 = lib(gerstenhaber(&z, &xy))?.scale(&parity(dz * dy));
            ensure!(lib(lib(j1.add(&j2))?.add(&j3))?.is_zero(), "{}: graded Jacobi fails for degrees {degs:?}", e.name);
            checked += 1;
        }
    }
    Ok(format!("{checked} random cochains and triples over every catalog algebra"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for (seed, e) in catalog::all().into_iter().enumerate() {
        let module = adjoint_module(&e.pair);
        let bc = lib(Bicomplex::new(&e.pair, &module))?;
        let mut rng = rng(300 + seed as u64);
        for k in 0..SAMPLES {
            let p = 1 + k % 3;
            let f = random_cochain(&mut rng, bc.shape(p, 0));
            let df = lib(bc.hochschild_delta(&f))?;
            for x in 0..e.pair.dim_l() {
                let lhs = lib(bc.hochschild_delta(&lib(bc.module_action(x, &f))?))?;
                ensure!(lhs == lib(bc.module_action(x, &df))?, "{}: δ_H[x,f] ≠ [x,δ_H f] at x = {x}, p = {p}", e.name);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (x, f) pairs over every catalog pair"))
}

fn criterion_4() -> Outcome {
    let h = catalog::heisenberg();
    let module = adjoint_module(&h.pair);
    let bc = lib(Bicomplex::new(&h.pair, &module))?;
    let mut classes = Vec::new();
    for f in &h.featured_cochains {
        ensure!(lib(bc.leibniz_delta(&f.cochain))?.is_zero(), "δ_L {} ≠ 0", f.name);
        ensure!(lib(bc.vertical_delta(&f.cochain))?.is_zero(), "δ_v {} ≠ 0", f.name);
        let c = leibniz_class(&h.pair, &f.cochain);
        ensure!(lib(is_cocycle(&bc, &c))?, "(0,0,{}) is not a cocycle", f.name);
        ensure!(lib(is_coboundary(&bc, &c))?.is_none(), "(0,0,{}) is a coboundary", f.name);
        classes.push(c);
    }
    ensure!(lib(independent_in_cohomology(&bc, &classes))?, "the three classes are dependent");
    let hl2 = lib(cohomology_dim(&bc, 2))?;
    ensure!(hl2 >= 3, "dim HL² = {hl2} < 3");
    let ds = &h.featured_deformations;
    for (name, d) in ds {
        ensure!(validate_deformation(d).passed(), "deformation {name} does not validate");
    }
    for (i, (n1, d1)) in ds.iter().enumerate() {
        for (n2, d2) in &ds[i + 1..] {
            ensure!(
                lib(equivalent_infinitesimals_differ_by_coboundary(d1, d2))?.is_none(),
                "{n1} and {n2} are equivalent at order 1"
            );
        }
    }
    Ok(format!("phi1..phi3 are independent non-trivial classes; dim HL² = {hl2}"))
}

/// Obstruction checks for one valid deformation.
fn check_obstruction(label: &str, d: &Deformation) -> Result<(), String> {
    let theta = lib(obstruction(d))?;
    let module = adjoint_module(d.pair());
    let bc = lib(Bicomplex::new(d.pair(), &module))?;
    ensure!(lib(is_cocycle(&bc, &theta.total()))?, "{label}: Θ is not a cocycle at order {}", d.order());
    let ids = lib(obstruction_identities(d))?;
    ensure!(ids.all(), "{label}: component identity fails at order {}: {ids:?}", d.order());
    Ok(())
}

/// The deformation and its extensions up to `to`, stopping early if obstructed.
fn extensions(d: &Deformation, to: usize) -> Result<Vec<Deformation>, String> {
    let mut out = vec![d.clone()];
    while out.last().expect("nonempty").order() < to {
        match lib(extend(out.last().expect("nonempty")))? {
            Some(next) => out.push(next),
            None => break,
        }
    }
    Ok(out)
}

fn featured() -> Vec<(String, Deformation)> {
    catalog::all()
        .into_iter()
        .flat_map(|e| {
            let name = e.name;
            e.featured_deformations.into_iter().map(move |(n, d)| (format!("{name}/{n}"), d))
        })
        .collect()
}

/// An order-1 deformation `t·c` with `c` a random combination of HL²
/// representatives plus a random coboundary.
fn random_cocycle_deformation(rng: &mut rand::rngs::StdRng, pair: &CourantPair) -> Result<Deformation, String> {
    let module = adjoint_module(pair);
    let bc = lib(Bicomplex::new(pair, &module))?;
    let mut c = lib(bc.total_delta(&random_total(rng, &bc, 1)))?;
    for r in lib(class_representatives(&bc, 2))? {
        let k = random_scalar(rng);
        c = lib(c.add(&TotalCochain::new(r.components().iter().map(|x| x.scale(&k)).collect()).expect("degree 2")))?;
    }
    lib(Deformation::new(pair.clone(), vec![c]))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for (name, d) in featured() {
        for e in extensions(&d, 3)? {
            check_obstruction(&name, &e)?;
            checked += 1;
        }
    }
    let mut rng = rng(500);
    for e in catalog::all() {
        let samples = if e.pair.dim_l() > 3 { 2 } else { 5 };
        for k in 0..samples {
            let d = random_cocycle_deformation(&mut rng, &e.pair)?;
            let label = format!("{} random #{k}", e.name);
            ensure!(validate_deformation(&d).passed(), "{label}: sampled cocycle does not give a valid deformation");
            for x in extensions(&d, 3)? {
                check_obstruction(&label, &x)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} valid deformations of order 1 to 3"))
}

fn criterion_6() -> Outcome {
    let names = ["dual-numbers/x2-to-t", "heisenberg/phi1", "heisenberg/phi2", "heisenberg/phi3"];
    for (name, d) in featured().into_iter().filter(|(n, _)| names.contains(&n.as_str())) {
        let mut cur = d;
        while cur.order() < 4 {
            let theta = lib(obstruction(&cur))?;
            ensure!(
                theta.theta_a == lib(theta_a_gerstenhaber(&cur))?,
                "{name}: Θ(A) ≠ ½Σ[α_i,α_j] at order {}",
                cur.order()
            );
            let Some(next) = lib(extend(&cur))? else {
                return Err(format!("{name}: obstructed at order {}", cur.order() + 1));
            };
            ensure!(validate_deformation(&next).passed(), "{name}: order {} does not validate", next.order());
            ensure!(next.truncate(cur.order()) == cur, "{name}: extension changed lower coefficients");
            cur = next;
        }
    }
    Ok(format!("{} deformations extended through order 4", names.len()))
}

fn criterion_7() -> Outcome {
    let mut rng = rng(700);
    let mut checked = 0;
    for (name, d) in featured() {
        let d = extensions(&d, 2)?.pop().expect("nonempty");
        ensure!(d.order() == 2, "{name}: could not extend to order 2");
        let pair = d.pair().clone();
        let module = adjoint_module(&pair);
        let bc = lib(Bicomplex::new(&pair, &module))?;
        for _ in 0..50 {
            let phis: Vec<Cochain> = (0..2).map(|_| random_cochain(&mut rng, bc.shape(1, 0))).collect();
            let psis: Vec<Cochain> = (0..2).map(|_| random_cochain(&mut rng, bc.shape(0, 1))).collect();
            let first = TotalCochain::new(vec![phis[0].clone(), psis[0].clone()]).expect("degree 1");
            let e = Equivalence { phis, psis };
            let d2 = lib(apply_equivalence(&d, &e))?;
            ensure!(validate_deformation(&d2).passed(), "{name}: transformed deformation is invalid");
            let diff = lib(d2.coefficient(1).sub(&d.coefficient(1)))?;
            ensure!(diff == lib(bc.total_delta(&first))?, "{name}: infinitesimals differ by more than δ_tot(φ₁,ψ₁)");
            checked += 1;
        }
    }
    Ok(format!("{checked} random order-2 equivalences"))
}

fn criterion_8() -> Outcome {
    let mut compared = 0;
    for e in catalog::all() {
        let module = adjoint_module(&e.pair);
        let bc = lib(Bicomplex::new(&e.pair, &module))?;
        let mut h_prev = None;
        let mut l_prev = None;
        for n in 0..=3 {
            let h = hochschild_oracle(&e.pair, &module, n);
            ensure!(lib(differential_columns(&bc, Column::Hochschild, n))? == h, "{}: Hochschild δ^{n} differs", e.name);
            // The bicomplex normalizes the Leibniz coboundary by (-1)^{q+1}.
            let l = leibniz_oracle(&e.pair, &module, n);
            let l_norm = if n % 2 == 1 { l.clone() } else { negate(&l) };
            ensure!(lib(differential_columns(&bc, Column::Leibniz, n))? == l_norm, "{}: Leibniz δ^{n} differs", e.name);
            let hd = lib(column_cohomology(&bc, Column::Hochschild, n))?.dim;
            let ld = lib(column_cohomology(&bc, Column::Leibniz, n))?.dim;
            ensure!(hd == oracle_cohomology(h_prev.as_deref(), &h), "{}: dim HH^{n} differs", e.name);
            ensure!(ld == oracle_cohomology(l_prev.as_deref(), &l), "{}: dim HL^{n}(L;L) differs", e.name);
            h_prev = Some(h);
            l_prev = Some(l);
            compared += 2;
        }
    }
    Ok(format!("{compared} differentials and cohomology dimensions match the brute-force oracles"))
}

struct Cli {
    bin: PathBuf,
    dir: tempfile::TempDir,
}

impl Cli {
    fn new() -> Result<Self, String> {
        Ok(Self {
            bin: PathBuf::from(env!("CARGO_BIN_EXE_cpair")),
            dir: tempfile::tempdir().map_err(|e| e.to_string())?,
        })
    }

    fn write(&self, name: &str, text: &str) -> Result<PathBuf, String> {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        Ok(path)
    }

    /// Exit code and parsed JSON output of `cpair --json ARGS`.
    fn run(&self, args: &[&str]) -> Result<(i32, Value), String> {
        let out = Command::new(&self.bin).arg("--json").args(args).output().map_err(|e| e.to_string())?;
        let code = out.status.code().ok_or("killed by a signal")?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        let json = serde_json::from_str(&stdout).map_err(|e| format!("cpair {args:?}: unparseable output: {e}"))?;
        Ok((code, json))
    }

    fn export(&self, entry: &str, deformation: Option<&str>) -> Result<PathBuf, String> {
        let mut args = vec!["catalog", "export", entry];
        if let Some(d) = deformation {
            args.extend(["--deformation", d]);
        }
        let (code, doc) = self.run(&args)?;
        ensure!(code == 0, "export of {entry} failed");
        let file = format!("{entry}-{}.json", deformation.unwrap_or("pair"));
        self.write(&file, &doc.to_string())
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("temporary paths are UTF-8")
}

fn expect_eq(what: &str, got: &Value, want: &Value) -> Result<(), String> {
    ensure!(got == want, "{what}: CLI {got} differs from library {want}");
    Ok(())
}

fn criterion_9() -> Outcome {
    let cli = Cli::new()?;
    let mut runs = 0;

    // Export and re-parse every entry.
    let mut def_files: Vec<(String, PathBuf, Deformation)> = Vec::new();
    for e in catalog::all() {
        let path = cli.export(e.name, None)?;
        let text = std::fs::read_to_string(&path).map_err(|x| x.to_string())?;
        let (pair, _) = lib(lib(PairDocument::parse(&text))?.to_pair())?;
        ensure!(pair == e.pair, "{}: re-parsed pair differs", e.name);
        let (code, report) = cli.run(&["validate", path_str(&path)])?;
        ensure!(code == 0 && report["passed"] == Value::Bool(true), "{}: exported pair does not validate", e.name);
        let want = serde_json::to_value(validate_pair(&e.pair).checks).expect("serializes");
        expect_eq(&format!("{} validation", e.name), &report["checks"], &want)?;
        runs += 1;
        for (name, d) in &e.featured_deformations {
            let path = cli.export(e.name, Some(name))?;
            let text = std::fs::read_to_string(&path).map_err(|x| x.to_string())?;
            ensure!(&lib(lib(DeformationDocument::parse(&text))?.to_deformation())? == d, "{name}: re-parsed differs");
            def_files.push((format!("{}/{name}", e.name), path, d.clone()));
        }
    }

    // Criterion 4 through the command line.
    let h = catalog::heisenberg();
    let module = adjoint_module(&h.pair);
    let bc = lib(Bicomplex::new(&h.pair, &module))?;
    let hpath = cli.export("heisenberg", None)?;
    let (code, coh) = cli.run(&["cohomology", path_str(&hpath), "--degree", "2"])?;
    ensure!(code == 0, "cohomology exited with {code}");
    expect_eq("dim HL²", &coh["dim"], &Value::from(lib(cohomology_dim(&bc, 2))?))?;
    let phis: Vec<&(String, PathBuf, Deformation)> = def_files.iter().filter(|(n, ..)| n.starts_with("heisenberg/")).collect();
    ensure!(phis.len() == 3, "expected three Heisenberg deformations");
    for (name, path, d) in &phis {
        let (code, v) = cli.run(&["deform", path_str(path), "validate"])?;
        ensure!(code == 0 && v["passed"] == Value::Bool(true), "{name}: deform validate failed");
        let (code, inf) = cli.run(&["deform", path_str(path), "infinitesimal"])?;
        ensure!(code == 0, "{name}: infinitesimal exited with {code}");
        expect_eq(&format!("{name} infinitesimal"), &inf["infinitesimal"], &total_json(&lib(infinitesimal(d))?))?;
        ensure!(inf["cocycle"] == Value::Bool(true), "{name}: CLI says the infinitesimal is not a cocycle");
        ensure!(inf["coboundary"] == Value::Bool(false), "{name}: CLI says the infinitesimal is a coboundary");
        runs += 3;
    }
    let (code, ind) = cli.run(&["deform", path_str(&phis[0].1), "independent", path_str(&phis[1].1), path_str(&phis[2].1)])?;
    ensure!(code == 0 && ind["independent"] == Value::Bool(true), "CLI finds the three classes dependent");
    for i in 0..3 {
        for j in i + 1..3 {
            let (code, eq) = cli.run(&["deform", path_str(&phis[i].1), "equivalent", path_str(&phis[j].1)])?;
            let lib_eq = lib(equivalent_infinitesimals_differ_by_coboundary(&phis[i].2, &phis[j].2))?.is_some();
            ensure!(code == 0 && eq["equivalent_at_order_1"] == Value::Bool(lib_eq) && !lib_eq, "pair {i},{j}: equivalence");
            ensure!(eq["verdict"] == "non-equivalent at order 1", "pair {i},{j}: wrong verdict");
            runs += 1;
        }
    }

    // Criteria 5 and 6 through the command line.
    for (name, path, d) in &def_files {
        let (code, ext) = cli.run(&["deform", path_str(path), "extend", "--to", "4"])?;
        ensure!(code == 0 && ext["obstructed_at"].is_null(), "{name}: CLI extension failed");
        let chain = extensions(d, 4)?;
        ensure!(chain.len() == 4, "{name}: library extension stopped early");
        for (k, step) in ext["steps"].as_array().ok_or("steps missing")?.iter().enumerate() {
            let lib_d = &chain[k + 1];
            ensure!(step["valid"] == Value::Bool(validate_deformation(lib_d).passed()), "{name}: step {k} validity");
            ensure!(step["theta_a_matches_bracket"] == Value::Bool(true), "{name}: Θ(A) mismatch at step {k}");
            expect_eq(&format!("{name} coefficient {}", k + 2), &step["coefficient"], &total_json(&lib_d.coefficient(k + 2)))?;
        }
        let doc: DeformationDocument = serde_json::from_value(ext["deformation"].clone()).map_err(|e| e.to_string())?;
        ensure!(lib(doc.to_deformation())? == chain[3], "{name}: CLI order-4 deformation differs");
        runs += 1;
        for lower in &chain[..3] {
            let file = cli.write(
                &format!("{}-order{}.json", name.replace('/', "-"), lower.order()),
                &serde_json::to_string(&DeformationDocument::from_deformation(lower)).expect("serializes"),
            )?;
            let (code, ob) = cli.run(&["deform", path_str(&file), "obstruction"])?;
            ensure!(code == 0, "{name}: obstruction exited with {code}");
            let theta = lib(obstruction(lower))?;
            for (key, c) in [
                ("theta_a", &theta.theta_a),
                ("theta1", &theta.theta1),
                ("theta2", &theta.theta2),
                ("theta_l", &theta.theta_l),
            ] {
                expect_eq(&format!("{name} order {} {key}", lower.order()), &ob["theta"][key], &cochain_json(c))?;
            }
            let ids = serde_json::to_value(lib(obstruction_identities(lower))?).expect("serializes");
            expect_eq(&format!("{name} identities"), &ob["identities"], &ids)?;
            ensure!(ob["cocycle"] == Value::Bool(true), "{name}: CLI says Θ is not a cocycle");
            runs += 1;
        }
    }

    // Exit-code contract on corrupted input.
    let text = std::fs::read_to_string(&hpath).map_err(|e| e.to_string())?;
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    doc["assoc"]["table"].as_array_mut().ok_or("no table")?.push(serde_json::json!([1, 1, ["1", "0", "0"]]));
    let bad = cli.write("nonassoc.json", &doc.to_string())?;
    let (code, rep) = cli.run(&["validate", path_str(&bad)])?;
    ensure!(code == 1, "non-associative table exited with {code}");
    let witness = rep["checks"][0]["witness"].as_str().unwrap_or_default().to_string();
    ensure!(rep["checks"][0]["law"] == "associativity" && witness.starts_with('('), "no offending tuple named");
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    doc["assoc"]["table"][0][2][0] = Value::from("0.5");
    let dec = cli.write("decimal.json", &doc.to_string())?;
    let (code, _) = cli.run(&["validate", path_str(&dec)])?;
    ensure!(code == 2, "decimal coefficient exited with {code}");
    let mal = cli.write("malformed.json", &text[..text.len() / 2])?;
    let (code, _) = cli.run(&["validate", path_str(&mal)])?;
    ensure!(code == 2, "malformed document exited with {code}");

    Ok(format!("{runs} CLI runs agree with the library; corrupted fixtures exit 1 ({witness}), 2, 2"))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Outcome); 9] = [
        (1, "complex identities", criterion_1),
        (2, "differential graded Lie algebra", criterion_2),
        (3, "equivariance", criterion_3),
        (4, "Heisenberg classes", criterion_4),
        (5, "obstruction cocycles", criterion_5),
        (6, "extension through order 4", criterion_6),
        (7, "equivalences", criterion_7),
        (8, "brute-force oracles", criterion_8),
        (9, "command line end to end", criterion_9),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, title, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS  {title} ({detail}; {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL  {title}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
