//! One function per subcommand. Each returns the process exit status.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use genus2::algebra::{field_from_json, Field, FieldJson};
use genus2::aut::AutLabel;
use genus2::census::{
    census, classify_curve, empty_cell_reason, superspecial_census, verify_counts, verify_tables, write_census,
    CensusOptions, CensusReport, EoFilter,
};
use genus2::curve::{element_from_coeff_json, CoeffJson, CurveJson};
use genus2::eo::{elliptic_hasse, eo_type_of, EoType};
use genus2::igusa::{igusa_invariants, wp_equal, IgusaPointJson};
use genus2::strata::{
    d4_model, d6_model, d6_omega_model, prank_additivity_check, render_strata, CountTable, EllipticModel, GluingDatum,
    Stratum,
};
use genus2::strata::glue as glue_curves;
use genus2::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::output::{coeff, emit, field_name, json, record, table};
use crate::{input, Cli, Command, CurveInput, Format, Global, ModelStratum, VerifyMode, EXIT_VIOLATION};

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    if g.p == Some(2) {
        return Err(Error::CharacteristicTwo);
    }
    match &cli.command {
        Command::Invariants(c) => invariants(g, c),
        Command::Classify { curve, eo, aut } => classify(g, curve, *eo, *aut),
        Command::Model { stratum, point, input } => model(g, *stratum, point.as_deref(), input.as_deref()),
        Command::Glue { l1, l2, input } => glue(g, l1.as_deref(), l2.as_deref(), input.as_deref()),
        Command::Count { input } => count(g, input.as_deref()),
        Command::Census { filter } => run_census(g, filter),
        Command::Verify { mode, ks, input } => verify(g, *mode, ks, input.as_deref()),
    }
}

fn options(g: &Global, filter: EoFilter) -> CensusOptions {
    CensusOptions { filter, workers: g.workers, budget: g.budget }
}

#[derive(Serialize, Deserialize)]
struct InvariantsOut {
    command: String,
    curve: CurveJson,
    equation: String,
    invariants: IgusaPointJson,
}

fn invariants(g: &Global, c: &CurveInput) -> Result<u8> {
    let curve = input::curve(c, g)?;
    let f = curve.field().clone();
    let pt = igusa_invariants(&curve)?;
    let mut rows = vec![("p", f.p().to_string()), ("k", f.degree().to_string()), ("curve", curve.display())];
    for (name, v) in ["J2", "J4", "J6", "J8", "J10"].iter().zip(pt.coords()) {
        rows.push((name, f.display(v)));
    }
    rows.push(("key", pt.key().render(&f)));
    let out = InvariantsOut {
        command: "invariants".into(),
        curve: curve.to_json(),
        equation: curve.display(),
        invariants: pt.to_json(),
    };
    let text = match g.format {
        Format::Table => table(&[
            ("field", field_name(&f)),
            ("curve", curve.display()),
            ("invariants", pt.display()),
            ("key", pt.key().render(&f)),
        ]),
        _ => record(g, &rows, &out)?,
    };
    emit(g, &text)?;
    Ok(0)
}

#[derive(Serialize, Deserialize)]
struct AutJson {
    label: AutLabel,
    reduced_order: usize,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct ClassifyOut {
    command: String,
    curve: CurveJson,
    equation: String,
    invariants: IgusaPointJson,
    hasse_witt: [[CoeffJson; 2]; 2],
    eo: EoType,
    aut: AutJson,
    strata: BTreeSet<Stratum>,
    /// Set when the (EO, aut) cell is empty in the dimension table.
    violation: Option<String>,
}

fn classify(g: &Global, c: &CurveInput, only_eo: bool, only_aut: bool) -> Result<u8> {
    let curve = input::curve(c, g)?;
    let f = curve.field().clone();
    let cl = classify_curve(&curve)?;
    let violation = empty_cell_reason(cl.eo, cl.aut, f.p());
    let mut rows = vec![("p", f.p().to_string()), ("k", f.degree().to_string()), ("curve", curve.display())];
    if !only_eo && !only_aut {
        rows.push(("invariants", cl.point.display()));
    }
    if only_eo || !only_aut {
        rows.push(("hasse_witt", cl.hasse_witt.display()));
        rows.push(("eo", cl.eo.to_string()));
    }
    if only_aut || !only_eo {
        rows.push(("aut", cl.aut.to_string()));
        rows.push(("reduced_order", cl.reduced_order.to_string()));
    }
    if !only_eo && !only_aut {
        rows.push(("strata", render_strata(&cl.strata)));
    }
    if let Some(v) = &violation {
        rows.push(("violation", v.clone()));
    }
    let out = ClassifyOut {
        command: "classify".into(),
        curve: curve.to_json(),
        equation: curve.display(),
        invariants: cl.point.to_json(),
        hasse_witt: cl.hasse_witt.m.map(|r| r.map(|x| coeff(&f, &x))),
        eo: cl.eo,
        aut: AutJson { label: cl.aut, reduced_order: cl.reduced_order, order: 2 * cl.reduced_order },
        strata: cl.strata.clone(),
        violation: violation.clone(),
    };
    emit(g, &record(g, &rows, &out)?)?;
    Ok(if violation.is_some() { EXIT_VIOLATION } else { 0 })
}

#[derive(Serialize, Deserialize)]
struct ModelOut {
    command: String,
    stratum: String,
    point: IgusaPointJson,
    curve: CurveJson,
    equation: String,
    /// Invariants of the model curve.
    invariants: IgusaPointJson,
    /// Whether the model's invariants equal the input point.
    matches: bool,
}

fn model(g: &Global, stratum: ModelStratum, point: Option<&str>, path: Option<&Path>) -> Result<u8> {
    let pt = input::point(point, path, g)?;
    let (name, curve) = match stratum {
        ModelStratum::D4 => ("d4", d4_model(&pt)?),
        ModelStratum::D6 => ("d6", d6_model(&pt)?),
        ModelStratum::D6Omega => ("d6-omega", d6_omega_model(&pt)?),
    };
    let got = igusa_invariants(&curve)?;
    let matches = wp_equal(&pt.embed(curve.field())?, &got)?;
    let rows = vec![
        ("stratum", name.to_string()),
        ("point", pt.display()),
        ("field", field_name(curve.field())),
        ("curve", curve.display()),
        ("invariants", got.display()),
        ("matches", matches.to_string()),
    ];
    let out = ModelOut {
        command: "model".into(),
        stratum: name.into(),
        point: pt.to_json(),
        curve: curve.to_json(),
        equation: curve.display(),
        invariants: got.to_json(),
        matches,
    };
    emit(g, &record(g, &rows, &out)?)?;
    Ok(if matches { 0 } else { EXIT_VIOLATION })
}

#[derive(Serialize, Deserialize)]
struct EllipticOut {
    lambda: CoeffJson,
    equation: String,
    j: CoeffJson,
    ordinary: bool,
}

#[derive(Serialize, Deserialize)]
struct GlueChecks {
    /// The maps to E1, E2 are morphisms and agree on the common quotient.
    maps: bool,
    p_rank_additive: bool,
    /// The reduced automorphism group has even order, i.e. contains C2xC2.
    has_c2xc2: bool,
}

#[derive(Serialize, Deserialize)]
struct GlueOut {
    command: String,
    field: FieldJson,
    l1: CoeffJson,
    l2: CoeffJson,
    curve: CurveJson,
    equation: String,
    invariants: IgusaPointJson,
    eo: EoType,
    aut: AutJson,
    e1: EllipticOut,
    e2: EllipticOut,
    checks: GlueChecks,
}

fn elliptic(f: &Field, l: &genus2::algebra::FieldElement) -> Result<EllipticOut> {
    let e = EllipticModel::legendre(f, l);
    Ok(EllipticOut {
        lambda: coeff(f, l),
        equation: e.display(),
        j: coeff(f, &e.j_invariant()?),
        ordinary: !elliptic_hasse(f, l)?.is_zero(),
    })
}

fn glue(g: &Global, l1: Option<&str>, l2: Option<&str>, path: Option<&Path>) -> Result<u8> {
    let (f, l1, l2) = match (l1, l2, path) {
        (Some(a), Some(b), None) => {
            let f = input::base_field(g)?;
            let (a, b) = (f.parse_element(a)?, f.parse_element(b)?);
            (f, a, b)
        }
        (None, None, Some(path)) => {
            let v = input::read_json(path)?;
            let fj: FieldJson = serde_json::from_value(v.get("field").cloned().unwrap_or(Value::Null))?;
            let f = field_from_json(&fj)?;
            let get = |k: &str| -> Result<genus2::algebra::FieldElement> {
                let c: CoeffJson = serde_json::from_value(v.get(k).cloned().unwrap_or(Value::Null))?;
                element_from_coeff_json(&f, &c)
            };
            let (a, b) = (get("l1")?, get("l2")?);
            (f, a, b)
        }
        _ => return Err(Error::Parse("give --l1 and --l2, or --in".into())),
    };
    let curve = glue_curves(&f, &l1, &l2)?;
    let cl = classify_curve(&curve)?;
    let checks = GlueChecks {
        maps: GluingDatum::new(&f, &l1, &l2)?.verify_maps()?,
        p_rank_additive: prank_additivity_check(&f, &l1, &l2)?,
        has_c2xc2: cl.reduced_order % 2 == 0,
    };
    let ok = checks.maps && checks.p_rank_additive && checks.has_c2xc2;
    let (e1, e2) = (elliptic(&f, &l1)?, elliptic(&f, &l2)?);
    let rows = vec![
        ("field", field_name(&f)),
        ("l1", f.display(&l1)),
        ("l2", f.display(&l2)),
        ("curve", curve.display()),
        ("invariants", cl.point.display()),
        ("eo", cl.eo.to_string()),
        ("aut", cl.aut.to_string()),
        ("E1", e1.equation.clone()),
        ("E1_ordinary", e1.ordinary.to_string()),
        ("E2", e2.equation.clone()),
        ("E2_ordinary", e2.ordinary.to_string()),
        ("maps_verified", checks.maps.to_string()),
        ("p_rank_additive", checks.p_rank_additive.to_string()),
    ];
    let out = GlueOut {
        command: "glue".into(),
        field: f.to_json(),
        l1: coeff(&f, &l1),
        l2: coeff(&f, &l2),
        curve: curve.to_json(),
        equation: curve.display(),
        invariants: cl.point.to_json(),
        eo: eo_type_of(&curve),
        aut: AutJson { label: cl.aut, reduced_order: cl.reduced_order, order: 2 * cl.reduced_order },
        e1,
        e2,
        checks,
    };
    emit(g, &record(g, &rows, &out)?)?;
    Ok(if ok { 0 } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct CountOut<'a> {
    command: &'static str,
    #[serde(flatten)]
    table: &'a CountTable,
}

fn render_table(g: &Global, t: &CountTable) -> Result<String> {
    match g.format {
        Format::Json => json(&CountOut { command: "count", table: t }),
        Format::Csv => Ok(t.to_csv()),
        Format::Table => Ok(t.to_text()),
    }
}

fn count(g: &Global, path: Option<&Path>) -> Result<u8> {
    let (table, saved) = match path {
        Some(path) => {
            let saved: CountTable = serde_json::from_value(input::read_json(path)?)?;
            (CountTable::new(saved.p)?, Some(saved))
        }
        None => {
            let p = g.p.ok_or_else(|| Error::Parse("--p is required".into()))?;
            (CountTable::new(p)?, None)
        }
    };
    emit(g, &render_table(g, &table)?)?;
    if saved.is_some_and(|s| s != table) {
        eprintln!("the saved table differs from the formulas at p = {}", table.p);
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}

fn parse_filter(s: &str) -> Result<EoFilter> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("all") {
        return Ok(EoFilter::All);
    }
    let nums: Vec<u8> = t
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad EO filter {s:?}"))))
        .collect::<Result<_>>()?;
    match nums[..] {
        [f, a] => Ok(EoFilter::Only(EoType::new(f, a)?)),
        _ => Err(Error::Parse(format!("bad EO filter {s:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct CellCount {
    eo: EoType,
    aut: AutLabel,
    points: u64,
    curves: u64,
}

#[derive(Serialize, Deserialize)]
struct CensusOut {
    command: String,
    p: u64,
    k: usize,
    filter: EoFilter,
    grid: u64,
    smooth: u64,
    survivors: u64,
    distinct_points: u64,
    elapsed_ms: u128,
    csv: PathBuf,
    manifest: PathBuf,
    cells: Vec<CellCount>,
    violations: Vec<String>,
}

fn run_census(g: &Global, filter: &str) -> Result<u8> {
    let f = input::base_field(g)?;
    let c = census(f.p(), f.degree(), &options(g, parse_filter(filter)?))?;
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("out")).join("census");
    let csv = write_census(&dir, &c)?;
    let manifest = dir.join(format!("p{}_k{}.manifest.json", f.p(), f.degree()));
    let mut cells: std::collections::BTreeMap<(EoType, AutLabel), CellCount> = Default::default();
    for r in &c.records {
        let e = cells.entry((r.eo, r.aut)).or_insert(CellCount { eo: r.eo, aut: r.aut, points: 0, curves: 0 });
        e.points += 1;
        e.curves += r.curves;
    }
    let cells: Vec<CellCount> = cells.into_values().collect();
    let violations: Vec<String> = cells.iter().filter_map(|c| empty_cell_reason(c.eo, c.aut, f.p())).collect();
    let out = CensusOut {
        command: "census".into(),
        p: f.p(),
        k: f.degree(),
        filter: c.filter,
        grid: c.grid,
        smooth: c.smooth,
        survivors: c.survivors,
        distinct_points: c.records.len() as u64,
        elapsed_ms: c.elapsed_ms,
        csv,
        manifest,
        cells,
        violations,
    };
    let text = match g.format {
        Format::Json => json(&out)?,
        Format::Csv => c.to_csv(),
        Format::Table => {
            let mut s = table(&[
                ("field", field_name(&f)),
                ("grid", out.grid.to_string()),
                ("smooth", out.smooth.to_string()),
                ("survivors", out.survivors.to_string()),
                ("distinct points", out.distinct_points.to_string()),
                ("csv", out.csv.display().to_string()),
                ("manifest", out.manifest.display().to_string()),
            ]);
            for cell in &out.cells {
                s.push_str(&format!("{:6} {:10} {:>8} points {:>10} curves\n", cell.eo.to_string(), cell.aut.to_string(), cell.points, cell.curves));
            }
            for v in &out.violations {
                s.push_str(&format!("VIOLATION {v}\n"));
            }
            s
        }
    };
    // The CSV already went to the census directory; stdout gets the summary.
    print!("{text}");
    Ok(if out.violations.is_empty() { 0 } else { EXIT_VIOLATION })
}

#[derive(Serialize, Deserialize)]
struct VerifyOut {
    command: String,
    mode: String,
    passed: bool,
    report: CensusReport,
    table: Option<CountTable>,
}

fn render_report(r: &CensusReport) -> String {
    let mut s = format!("{} at p = {}: {}\n", r.kind, r.p, if r.passed() { "PASS" } else { "FAIL" });
    for f in &r.fields {
        s.push_str(&format!(
            "  F_{}^{}: grid {}, smooth {}, survivors {}, distinct points {}, {} ms\n",
            r.p, f.k, f.grid, f.smooth, f.survivors, f.distinct_points, f.elapsed_ms
        ));
    }
    for c in &r.cells {
        let dim = c.expected_dimension.map_or("EMPTY".to_string(), |d| d.to_string());
        s.push_str(&format!("  k={} {:6} {:10} {:>8} points  dimension {dim}\n", c.k, c.eo.to_string(), c.aut.to_string(), c.points));
    }
    for c in &r.checks {
        let status = if c.passed { "ok" } else if c.hard { "FAIL" } else { "short" };
        s.push_str(&format!("  check {}: expected {}, observed {} [{status}]\n", c.name, c.expected, c.observed));
    }
    for v in &r.violations {
        s.push_str(&format!("  VIOLATION {}\n", v.reason));
    }
    for n in &r.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn verify(g: &Global, mode: VerifyMode, ks: &[usize], path: Option<&Path>) -> Result<u8> {
    if let Some(path) = path {
        return verify_saved(g, path);
    }
    let p = g.p.ok_or_else(|| Error::Parse("--p is required".into()))?;
    let opts = options(g, EoFilter::All);
    let (name, report, table) = match mode {
        VerifyMode::Tables => ("tables", verify_tables(p, ks, &opts)?, None),
        VerifyMode::Counts => {
            let (t, r) = verify_counts(p, &opts)?;
            ("counts", r, Some(t))
        }
        VerifyMode::Superspecial => ("superspecial", superspecial_census(p, &opts)?, None),
    };
    let passed = report.passed();
    let text = match g.format {
        Format::Json => json(&VerifyOut { command: "verify".into(), mode: name.into(), passed, report, table })?,
        Format::Csv => {
            let mut s = String::from("k,f,a,aut,points,expected_dimension,expected_components\n");
            for c in &report.cells {
                let dim = c.expected_dimension.map_or("EMPTY".to_string(), |d| d.to_string());
                let comps = c.expected_components.map_or(String::new(), |n| n.to_string());
                s.push_str(&format!("{},{},{},{},{},{dim},{comps}\n", c.k, c.eo.f_rank, c.eo.a_rank, c.aut, c.points));
            }
            s
        }
        Format::Table => {
            let mut s = render_report(&report);
            if let Some(t) = &table {
                s.push_str(&t.to_text());
            }
            s
        }
    };
    emit(g, &text)?;
    Ok(if passed { 0 } else { EXIT_VIOLATION })
}

/// Re-checks a file written by `verify`, `count` or `census` against the tables.
fn verify_saved(g: &Global, path: &Path) -> Result<u8> {
    let mut problems = Vec::new();
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        problems.extend(check_census_csv(path)?);
    } else {
        let v = input::read_json(path)?;
        let report = v.get("report").or_else(|| v.get("kind").map(|_| &v));
        if let Some(r) = report {
            let r: CensusReport = serde_json::from_value(r.clone())?;
            if !r.passed() {
                problems.push(format!("{} report at p = {} records a failure", r.kind, r.p));
            }
            problems.extend(r.cells.iter().filter_map(|c| empty_cell_reason(c.eo, c.aut, r.p)));
        }
        if let Some(t) = v.get("table").filter(|t| !t.is_null()).or_else(|| v.get("rows").map(|_| &v)) {
            let saved: CountTable = serde_json::from_value(t.clone())?;
            if CountTable::new(saved.p)? != saved {
                problems.push(format!("count table differs from the formulas at p = {}", saved.p));
            }
        }
        if v.get("command").and_then(Value::as_str) == Some("census") {
            let csv: PathBuf = serde_json::from_value(v.get("csv").cloned().unwrap_or(Value::Null))?;
            problems.extend(check_census_csv(&csv)?);
        }
    }
    let text = match g.format {
        Format::Json => json(&serde_json::json!({ "command": "verify", "input": path, "passed": problems.is_empty(), "problems": problems }))?,
        _ => {
            let mut s = format!("{}: {}\n", path.display(), if problems.is_empty() { "PASS" } else { "FAIL" });
            for p in &problems {
                s.push_str(&format!("  {p}\n"));
            }
            s
        }
    };
    emit(g, &text)?;
    Ok(if problems.is_empty() { 0 } else { EXIT_VIOLATION })
}

/// Empty-cell violations among the rows of a census CSV.
fn check_census_csv(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let col = |name: &str| {
        header.iter().position(|h| *h == name).ok_or_else(|| Error::Parse(format!("{}: no column {name}", path.display())))
    };
    let (cp, cf, ca, caut) = (col("p")?, col("f")?, col("a")?, col("aut")?);
    let mut out = BTreeSet::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        let bad = || Error::Parse(format!("{}: malformed row {}", path.display(), i + 2));
        let get = |c: usize| cells.get(c).copied().ok_or_else(bad);
        let p: u64 = get(cp)?.parse().map_err(|_| bad())?;
        let eo = EoType::new(get(cf)?.parse().map_err(|_| bad())?, get(ca)?.parse().map_err(|_| bad())?)?;
        let aut: AutLabel = get(caut)?.parse()?;
        if let Some(r) = empty_cell_reason(eo, aut, p) {
            out.insert(r);
        }
    }
    Ok(out.into_iter().collect())
}
