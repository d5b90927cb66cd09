//! The work behind each command-line command. Every command returns a
//! [`Report`] holding the exit code, the human-readable text and a JSON
//! value carrying the same information.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{adjoint_module, validate_module, validate_pair, CPModule, CourantPair, ValidationReport};
use crate::catalog;
use crate::cochain::{Bicomplex, Cochain, Shape, TotalCochain};
use crate::cohomology::{
    column_cohomology, column_representatives, degree_cap, check_degree, independent_in_cohomology, is_coboundary,
    is_cocycle, space_dim, Column,
};
use crate::deformation::{
    equivalent_infinitesimals_differ_by_coboundary, extend, n_infinitesimal, obstruction, obstruction_identities,
    rigidity_probe, theta_a_gerstenhaber, validate_deformation, Deformation,
};
use crate::error::{Error, Result};
use crate::format::{cochain_json, total_json, DeformationDocument, PairDocument};
use crate::linalg::{format_scalar, Scalar};

/// Exit code for a successful check.
pub const EXIT_OK: i32 = 0;
/// Exit code for a mathematical failure: a broken law, a nonvanishing obstruction.
pub const EXIT_MATH: i32 = 1;
/// Exit code for unreadable or malformed input and refused requests.
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { code: EXIT_OK, text, json }
    }
}

/// Exit code for an error that aborted a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidDeformation(_) => EXIT_MATH,
        _ => EXIT_INPUT,
    }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Document {
    Pair(CourantPair, Option<CPModule>),
    Deformation(Deformation),
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

/// Deformation documents are recognised by their `order` key.
pub fn parse_document(text: &str) -> Result<Document> {
    let probe: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
    if probe.get("order").is_some() {
        Ok(Document::Deformation(DeformationDocument::parse(text)?.to_deformation()?))
    } else {
        let (pair, module) = PairDocument::parse(text)?.to_pair()?;
        Ok(Document::Pair(pair, module))
    }
}

fn read_pair(path: &Path) -> Result<(CourantPair, Option<CPModule>)> {
    match read_document(path)? {
        Document::Pair(pair, module) => Ok((pair, module)),
        Document::Deformation(_) => Err(Error::Input(format!("{} is a deformation, expected a pair", path.display()))),
    }
}

fn read_deformation(path: &Path) -> Result<Deformation> {
    match read_document(path)? {
        Document::Deformation(d) => Ok(d),
        Document::Pair(..) => Err(Error::Input(format!("{} is a pair, expected a deformation", path.display()))),
    }
}

fn render_validation(kind: &str, report: &ValidationReport) -> Report {
    let mut text = String::new();
    for c in &report.checks {
        match &c.witness {
            None => writeln!(text, "{}: ok", c.law),
            Some(w) => writeln!(text, "{}: FAILED at {w}", c.law),
        }
        .expect("writing to a string");
    }
    let passed = report.passed();
    writeln!(text, "{kind}: {}", if passed { "valid" } else { "invalid" }).expect("writing to a string");
    Report {
        code: if passed { EXIT_OK } else { EXIT_MATH },
        text,
        json: json!({ "kind": kind, "passed": passed, "checks": report.checks }),
    }
}

fn pair_report(pair: &CourantPair, module: Option<&CPModule>) -> Result<ValidationReport> {
    let mut report = validate_pair(pair);
    if let Some(m) = module {
        report.extend(validate_module(pair, m)?);
    }
    Ok(report)
}

fn deformation_report(d: &Deformation) -> ValidationReport {
    let mut report = validate_pair(d.pair());
    if report.passed() {
        report.extend(validate_deformation(d));
    }
    report
}

/// Checks a pair (with its module, if any) or a deformation.
pub fn validate(path: &Path) -> Result<Report> {
    Ok(match read_document(path)? {
        Document::Pair(pair, module) => render_validation("pair", &pair_report(&pair, module.as_ref())?),
        Document::Deformation(d) => render_validation("deformation", &deformation_report(&d)),
    })
}

/// Refuses invalid input with exit code 1, naming the first broken law.
fn require(report: &ValidationReport) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(f) => Err(Error::InvalidDeformation(format!(
            "{} fails at {}",
            f.law,
            f.witness.as_deref().unwrap_or("?")
        ))),
    }
}

/// Basis labels of a bicomplex: A, L, M, P.
struct Labels {
    a: Vec<String>,
    l: Vec<String>,
    m: Vec<String>,
    p: Vec<String>,
}

impl Labels {
    fn new(pair: &CourantPair, module: &CPModule) -> Self {
        Self {
            a: pair.assoc.basis.clone(),
            l: pair.leibniz.basis.clone(),
            m: module.m_basis.clone(),
            p: module.p_basis.clone(),
        }
    }

    fn adjoint(pair: &CourantPair) -> Self {
        Self::new(pair, &adjoint_module(pair))
    }
}

fn vector_text(v: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            write!(out, " {sign} ").expect("writing to a string");
        }
        let a = c.abs();
        if a.is_one() {
            out.push_str(l);
        } else {
            write!(out, "{}*{l}", format_scalar(&a)).expect("writing to a string");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// One line per nonzero value, `(a1, a2; x) -> value`. The output space is
/// M for `p > 0` and P for `p = 0`.
fn cochain_text(c: &Cochain, labels: &Labels, out_labels: Option<&[String]>, indent: &str) -> String {
    let s = c.shape();
    let out = out_labels.unwrap_or(if s.p > 0 { &labels.m } else { &labels.p });
    let mut text = String::new();
    for b in 0..s.blocks() {
        let args = s.args_of(b);
        let v = c.value(&args);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let a: Vec<&str> = args[..s.p].iter().map(|&i| labels.a[i].as_str()).collect();
        let x: Vec<&str> = args[s.p..].iter().map(|&i| labels.l[i].as_str()).collect();
        writeln!(text, "{indent}({}; {}) -> {}", a.join(", "), x.join(", "), vector_text(v, out))
            .expect("writing to a string");
    }
    if text.is_empty() {
        writeln!(text, "{indent}0").expect("writing to a string");
    }
    text
}

fn total_text(c: &TotalCochain, labels: &Labels, indent: &str) -> String {
    let mut text = String::new();
    for part in c.components() {
        if part.is_zero() {
            continue;
        }
        writeln!(text, "{indent}({},{}):", part.p(), part.q()).expect("writing to a string");
        text.push_str(&cochain_text(part, labels, None, &format!("{indent}  ")));
    }
    if text.is_empty() {
        writeln!(text, "{indent}0").expect("writing to a string");
    }
    text
}

/// Options for [`cohomology`].
#[derive(Clone, Copy, Debug)]
pub struct CohomologyOptions {
    pub degree: usize,
    pub column: Column,
    pub representatives: bool,
    pub force: bool,
}

/// Dimensions of `C^n`, `ker δ^n`, `im δ^{n-1}` and `H^n` for one column,
/// with the adjoint module unless the document supplies one.
pub fn cohomology(path: &Path, opts: CohomologyOptions) -> Result<Report> {
    let (pair, module) = read_pair(path)?;
    let module = module.unwrap_or_else(|| adjoint_module(&pair));
    require(&pair_report(&pair, Some(&module))?)?;
    let bc = Bicomplex::new(&pair, &module)?;
    let n = opts.degree;
    if !opts.force {
        check_degree(n, degree_cap(), space_dim(&bc, opts.column, n))?;
    }
    let r = column_cohomology(&bc, opts.column, n)?;
    let mut text = format!(
        "column: {}\ndegree: {n}\ndim C^{n}: {}\ndim ker: {}\nincoming rank: {}\ndim H^{n}: {}\n",
        r.column, r.cochain_dim, r.kernel_dim, r.incoming_rank, r.dim
    );
    let mut out = serde_json::to_value(&r).expect("report serializes");
    if opts.representatives {
        let labels = Labels::new(&pair, &module);
        let mut reps = Vec::new();
        for (k, v) in column_representatives(&bc, opts.column, n)?.iter().enumerate() {
            writeln!(text, "class {}:", k + 1).expect("writing to a string");
            match opts.column {
                Column::Total => {
                    let c = bc.total_from_flat(n, v)?;
                    text.push_str(&total_text(&c, &labels, "  "));
                    reps.push(total_json(&c));
                }
                Column::Leibniz => {
                    let c = Cochain::from_coeffs(bc.shape(0, n), v.clone())?;
                    text.push_str(&cochain_text(&c, &labels, None, "  "));
                    reps.push(cochain_json(&c));
                }
                Column::Hochschild => {
                    // C^0 of the Hochschild column is M itself.
                    let shape = Shape { dim_out: module.m_dim(), ..bc.shape(n, 0) };
                    let c = Cochain::from_coeffs(shape, v.clone())?;
                    text.push_str(&cochain_text(&c, &labels, Some(&labels.m), "  "));
                    reps.push(cochain_json(&c));
                }
            }
        }
        out["representatives"] = Value::Array(reps);
    }
    Ok(Report::ok(text, out))
}

/// `HL^2(A, L; A, L)` with a basis of classes.
pub fn rigidity(path: &Path) -> Result<Report> {
    let (pair, _) = read_pair(path)?;
    require(&validate_pair(&pair))?;
    let r = rigidity_probe(&pair)?;
    let labels = Labels::adjoint(&pair);
    let mut text = format!("dim HL^2: {}\nrigid: {}\n", r.hl2, r.rigid());
    for (k, c) in r.representatives.iter().enumerate() {
        writeln!(text, "class {}:", k + 1).expect("writing to a string");
        text.push_str(&total_text(c, &labels, "  "));
    }
    let reps: Vec<Value> = r.representatives.iter().map(total_json).collect();
    Ok(Report::ok(text, json!({ "hl2": r.hl2, "rigid": r.rigid(), "representatives": reps })))
}

/// What `deform` should do with the deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeformAction {
    Validate,
    Infinitesimal,
    Obstruction,
    Extend { to: usize },
    Equivalent { other: std::path::PathBuf },
    Independent { others: Vec<std::path::PathBuf> },
}

pub fn deform(path: &Path, action: &DeformAction) -> Result<Report> {
    let d = read_deformation(path)?;
    let report = deformation_report(&d);
    if *action == DeformAction::Validate {
        return Ok(render_validation("deformation", &report));
    }
    require(&report)?;
    match action {
        DeformAction::Validate => unreachable!("handled above"),
        DeformAction::Infinitesimal => infinitesimal_report(&d),
        DeformAction::Obstruction => obstruction_report(&d),
        DeformAction::Extend { to } => extend_report(d, *to),
        DeformAction::Equivalent { other } => {
            let other = read_deformation(other)?;
            require(&deformation_report(&other))?;
            equivalent_report(&d, &other)
        }
        DeformAction::Independent { others } => {
            let mut all = vec![d];
            for p in others {
                let o = read_deformation(p)?;
                require(&deformation_report(&o))?;
                all.push(o);
            }
            independent_report(&all)
        }
    }
}

fn infinitesimal_report(d: &Deformation) -> Result<Report> {
    let (n, c) = n_infinitesimal(d)?;
    let module = adjoint_module(d.pair());
    let bc = Bicomplex::new(d.pair(), &module)?;
    let cocycle = is_cocycle(&bc, &c)?;
    let preimage = is_coboundary(&bc, &c)?;
    let labels = Labels::adjoint(d.pair());
    let mut text = format!("{n}-infinitesimal:\n{}", total_text(&c, &labels, "  "));
    writeln!(text, "cocycle: {cocycle}\ncoboundary: {}", preimage.is_some()).expect("writing to a string");
    if let Some(x) = &preimage {
        writeln!(text, "preimage:\n{}", total_text(x, &labels, "  ").trim_end()).expect("writing to a string");
    }
    Ok(Report::ok(
        text,
        json!({
            "order": n,
            "infinitesimal": total_json(&c),
            "cocycle": cocycle,
            "coboundary": preimage.is_some(),
            "preimage": preimage.as_ref().map(total_json),
        }),
    ))
}

fn obstruction_report(d: &Deformation) -> Result<Report> {
    let theta = obstruction(d)?;
    let module = adjoint_module(d.pair());
    let bc = Bicomplex::new(d.pair(), &module)?;
    let total = theta.total();
    let cocycle = is_cocycle(&bc, &total)?;
    let identities = obstruction_identities(d)?;
    let bracket = theta_a_gerstenhaber(d)? == theta.theta_a;
    let extends = is_coboundary(&bc, &total)?.is_some();
    let labels = Labels::adjoint(d.pair());
    let mut text = format!("obstruction to order {}:\n", d.order() + 1);
    for (name, c) in [
        ("theta_A", &theta.theta_a),
        ("theta_1", &theta.theta1),
        ("theta_2", &theta.theta2),
        ("theta_L", &theta.theta_l),
    ] {
        writeln!(text, "{name} ({},{}):\n{}", c.p(), c.q(), cochain_text(c, &labels, None, "  ").trim_end())
            .expect("writing to a string");
    }
    writeln!(
        text,
        "cocycle: {cocycle}\nidentities: hochschild {}, (3,1) {}, (2,2) {}, (1,3) {}, leibniz {}\n\
         theta_A equals half the bracket sum: {bracket}\nclass vanishes: {extends}",
        identities.hochschild, identities.mixed_31, identities.mixed_22, identities.mixed_13, identities.leibniz
    )
    .expect("writing to a string");
    Ok(Report::ok(
        text,
        json!({
            "order": d.order(),
            "theta": {
                "theta_a": cochain_json(&theta.theta_a),
                "theta1": cochain_json(&theta.theta1),
                "theta2": cochain_json(&theta.theta2),
                "theta_l": cochain_json(&theta.theta_l),
            },
            "cocycle": cocycle,
            "identities": identities,
            "theta_a_matches_bracket": bracket,
            "class_vanishes": extends,
        }),
    ))
}

fn extend_report(mut d: Deformation, to: usize) -> Result<Report> {
    let labels = Labels::adjoint(d.pair());
    let mut text = String::new();
    let mut steps = Vec::new();
    while d.order() < to {
        let order = d.order() + 1;
        let theta = obstruction(&d)?;
        let bracket = theta_a_gerstenhaber(&d)? == theta.theta_a;
        let Some(next) = extend(&d)? else {
            let total = theta.total();
            writeln!(
                text,
                "order {order}: obstructed; obstruction class representative:\n{}",
                total_text(&total, &labels, "  ").trim_end()
            )
            .expect("writing to a string");
            return Ok(Report {
                code: EXIT_MATH,
                text,
                json: json!({
                    "reached": d.order(),
                    "steps": steps,
                    "obstructed_at": order,
                    "obstruction": total_json(&total),
                    "deformation": DeformationDocument::from_deformation(&d),
                }),
            });
        };
        d = next;
        let c = d.coefficient(order);
        let valid = validate_deformation(&d).passed();
        writeln!(
            text,
            "order {order}: extended (valid: {valid}, theta_A equals half the bracket sum: {bracket})\n{}",
            total_text(&c, &labels, "  ").trim_end()
        )
        .expect("writing to a string");
        steps.push(json!({
            "order": order,
            "valid": valid,
            "theta_a_matches_bracket": bracket,
            "coefficient": total_json(&c),
        }));
    }
    writeln!(text, "reached order {}", d.order()).expect("writing to a string");
    Ok(Report::ok(
        text,
        json!({
            "reached": d.order(),
            "steps": steps,
            "obstructed_at": null,
            "deformation": DeformationDocument::from_deformation(&d),
        }),
    ))
}

fn same_pair(ds: &[Deformation]) -> Result<()> {
    if ds.windows(2).any(|w| w[0].pair() != w[1].pair()) {
        return Err(Error::Input("the deformations are not of the same pair".into()));
    }
    Ok(())
}

fn equivalent_report(d1: &Deformation, d2: &Deformation) -> Result<Report> {
    same_pair(&[d1.clone(), d2.clone()])?;
    let x = equivalent_infinitesimals_differ_by_coboundary(d1, d2)?;
    let verdict = if x.is_some() { "equivalent at order 1" } else { "non-equivalent at order 1" };
    let mut text = format!("{verdict}\n");
    if let Some(x) = &x {
        let labels = Labels::adjoint(d1.pair());
        writeln!(text, "(phi_1, psi_1):\n{}", total_text(x, &labels, "  ").trim_end()).expect("writing to a string");
    }
    Ok(Report::ok(
        text,
        json!({
            "equivalent_at_order_1": x.is_some(),
            "verdict": verdict,
            "preimage": x.as_ref().map(total_json),
        }),
    ))
}

fn independent_report(ds: &[Deformation]) -> Result<Report> {
    same_pair(ds)?;
    let module = adjoint_module(ds[0].pair());
    let bc = Bicomplex::new(ds[0].pair(), &module)?;
    let classes: Vec<TotalCochain> = ds.iter().map(|d| n_infinitesimal(d).map(|(_, c)| c)).collect::<Result<_>>()?;
    if classes.iter().any(|c| c.degree() != classes[0].degree()) {
        return Err(Error::Input("infinitesimals of different degrees".into()));
    }
    let independent = independent_in_cohomology(&bc, &classes)?;
    Ok(Report::ok(
        format!("{} infinitesimal classes, independent: {independent}\n", classes.len()),
        json!({ "count": classes.len(), "independent": independent }),
    ))
}

pub fn catalog_list() -> Report {
    let entries = catalog::all();
    let mut text = String::new();
    let mut list = Vec::new();
    for e in &entries {
        let names: Vec<&str> = e.featured_deformations.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(
            text,
            "{} (dim A = {}, dim L = {}){}",
            e.name,
            e.pair.dim_a(),
            e.pair.dim_l(),
            if names.is_empty() { String::new() } else { format!("; deformations: {}", names.join(", ")) }
        )
        .expect("writing to a string");
        list.push(json!({
            "name": e.name,
            "dim_a": e.pair.dim_a(),
            "dim_l": e.pair.dim_l(),
            "deformations": names,
            "notes": e.notes,
        }));
    }
    Report::ok(text, Value::Array(list))
}

/// The document for a catalog pair, or for one of its featured deformations.
/// The text form is the document itself.
pub fn catalog_export(name: &str, deformation: Option<&str>) -> Result<Report> {
    let e = catalog::by_name(name)?;
    let doc = match deformation {
        None => serde_json::to_value(PairDocument::from_pair(&e.pair, None)),
        Some(dn) => serde_json::to_value(DeformationDocument::from_deformation(e.deformation(dn)?)),
    }
    .expect("documents serialize");
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n";
    Ok(Report::ok(text, doc))
}
