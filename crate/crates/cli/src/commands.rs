use std::fmt::Write as _;
use std::path::Path;

use idegen_core::algebra::{format_rational, parse_rational, Rational};
use idegen_core::curvature::{invariants as basis_invariants, invariants_at, InvariantBasis};
use idegen_core::lattice::{
    appendix_b_report, enumerate_boost_vectors, shape_tables, BoostVector, MonomialShapeSet,
};
use idegen_core::limit::{
    csi_certificate, finite_pullback, invariant_agreement, pullback_limit,
    replay as replay_certificate, vsi_search, CertificateJson, CsiOutcome, LimitError,
    LimitOutcome, VsiOutcome,
};
use idegen_core::metric::{
    assemble, classify as classify_metric, instantiate_template, validate_class, CanonicalMetric,
    FullMetric, MetricFile, Point, PointSpec, TemplateSource,
};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// What a verb prints, in both formats, and how it exits.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub status: Status,
}

impl Report {
    fn new(json: Value, table: String, pass: bool) -> Self {
        Self {
            json,
            table,
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }
}

struct Loaded {
    file: MetricFile,
    canonical: CanonicalMetric,
    full: FullMetric,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let wrap = |source| CliError::Metric {
        path: path.to_path_buf(),
        source,
    };
    let file = MetricFile::parse(&text).map_err(wrap)?;
    let canonical = file.to_canonical().map_err(wrap)?;
    let full = assemble(&canonical).map_err(wrap)?;
    Ok(Loaded {
        file,
        canonical,
        full,
    })
}

fn parse_boost(text: &str) -> Result<BoostVector, CliError> {
    Ok(text.parse()?)
}

fn boost_for(loaded: &Loaded, flag: Option<&str>) -> Result<BoostVector, CliError> {
    match (flag, &loaded.file.boost) {
        (Some(text), _) => parse_boost(text),
        (None, Some(b)) => Ok(b.clone()),
        (None, None) => Err(CliError::Usage(
            "--boost is required (the metric file has no boost)".into(),
        )),
    }
}

/// `--point` as inline JSON or a path, else the file's point, else the origin.
fn point_for(loaded: &Loaded, flag: Option<&str>) -> Result<Point, CliError> {
    let cs = loaded.full.coords();
    let Some(arg) = flag else {
        return Ok(loaded
            .file
            .point(cs)
            .map_err(|e| CliError::Point(e.to_string()))?
            .unwrap_or_else(|| Point::origin(cs)));
    };
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    let spec: PointSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Point(e.to_string()))?;
    spec.to_point(cs)
        .map_err(|e| CliError::Point(e.to_string()))
}

fn point_json(p: &Point, g: &FullMetric) -> Value {
    serde_json::to_value(PointSpec::from_point(p, g.coords())).expect("point serializes")
}

fn metric_json(g: &FullMetric) -> Result<Value, CliError> {
    let file = MetricFile::from_canonical(&g.to_canonical()?);
    Ok(serde_json::to_value(file).expect("metric serializes"))
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serializes")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces, each row indented.
fn columns(rows: &[Vec<String>], indent: &str) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from(indent);
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<w$}  ", w = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn enumerate(k: usize) -> Result<Report, CliError> {
    let boosts = enumerate_boost_vectors(k)?;
    let mut table = format!("k = {k}, {} boost vectors\n", boosts.len());
    for (n, b) in boosts.iter().enumerate() {
        let _ = writeln!(table, "{:>4}. {b}", n + 1);
    }
    Ok(Report::new(
        json!({ "k": k, "boosts": boosts }),
        table,
        true,
    ))
}

fn shape_row(component: &str, i: usize, j: Option<usize>, s: &MonomialShapeSet) -> Value {
    json!({
        "boost": s.boost,
        "component": component,
        "i": i + 1,
        "j": j.map(|j| j + 1),
        "target": s.target,
        "generators": s.generators,
    })
}

pub fn shapes(k: Option<usize>, boost: &str) -> Result<Report, CliError> {
    let b = parse_boost(boost)?;
    if let Some(k) = k {
        if k != b.k() {
            return Err(CliError::Usage(format!("--k {k} does not match boost {b}")));
        }
    }
    let t = shape_tables(&b)?;
    let n = b.k();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            rows.push(shape_row("a", i, Some(j), &t.a_raw[i][j]));
        }
    }
    for i in 0..n {
        for j in i..n {
            rows.push(shape_row("A", i, Some(j), &t.a_sym[i][j]));
        }
    }
    for i in 0..n {
        rows.push(shape_row("B", i, None, &t.b[i]));
    }
    let json = json!({
        "boost": b,
        "canonical": b.is_canonical(),
        "shapes": rows,
        "a_normalized": t.a.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "absorbable": t.absorbable.iter().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
    });

    let mut table = format!("boost {b}");
    if !b.is_canonical() {
        table.push_str(" (non-canonical)");
    }
    table.push_str("\n\na (normalized)\n");
    let a_rows: Vec<Vec<String>> =
        t.a.iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
    table.push_str(&columns(&a_rows, "  "));
    table.push_str("\nA\n");
    let big: Vec<Vec<String>> = t
        .a_sym
        .iter()
        .map(|r| r.iter().map(MonomialShapeSet::bracket).collect())
        .collect();
    table.push_str(&columns(&big, "  "));
    table.push_str("\nB\n");
    let brow: Vec<Vec<String>> = t.b.iter().map(|s| vec![s.bracket()]).collect();
    table.push_str(&columns(&brow, "  "));
    Ok(Report::new(json, table, true))
}

pub fn appendix_b(k: usize) -> Result<Report, CliError> {
    let report = appendix_b_report(k)?;
    Ok(Report::new(to_json(&report), report.to_text(), true))
}

pub fn validate(path: &Path, boost: Option<&str>) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let b = boost_for(&loaded, boost)?;
    let report = validate_class(&loaded.canonical, &b)?;
    let mut json = to_json(&report);
    json["canonical"] = json!(b.is_canonical());
    let mut table = format!("{} boost {b}", if report.pass { "PASS" } else { "FAIL" });
    if !b.is_canonical() {
        table.push_str(" (non-canonical)");
    }
    table.push('\n');
    if !report.violations.is_empty() {
        let mut rows = vec![vec!["component".into(), "monomial".into(), "excess".into()]];
        rows.extend(report.violations.iter().map(|v| {
            vec![
                v.component.clone(),
                v.monomial.clone(),
                format!("+{}", v.excess),
            ]
        }));
        table.push_str(&columns(&rows, "  "));
    }
    Ok(Report::new(json, table, report.pass))
}

pub fn classify(path: &Path) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let report = classify_metric(&loaded.canonical);
    const NAMES: [&str; 5] = ["I", "II", "III", "IV", "V"];
    let mut rows: Vec<Vec<String>> = report
        .types
        .iter()
        .zip(NAMES)
        .map(|(t, name)| {
            let state = if t.holds {
                "holds".to_string()
            } else {
                format!("fails: {}", t.witness)
            };
            vec![format!("type {name}"), state]
        })
        .collect();
    let opt = |v: Option<bool>| v.map_or("n/a", yes_no).to_string();
    rows.push(vec!["nabla F = 0".into(), opt(report.nabla_f_constant)]);
    rows.push(vec!["Killing-Yano".into(), opt(report.killing_yano)]);
    rows.push(vec!["d/dv Killing".into(), opt(report.v_killing)]);
    if let Some(w) = &report.walker {
        rows.push(vec!["Walker k".into(), format!("({})", w.join(", "))]);
    }
    rows.push(vec![
        "cross-checks".into(),
        (if report.cross_checks_agree {
            "agree"
        } else {
            "DISAGREE"
        })
        .into(),
    ]);
    let mut json = to_json(&report);
    json["highest"] = json!(report.highest());
    Ok(Report::new(json, columns(&rows, ""), true))
}

pub fn limit(path: &Path, boost: Option<&str>, point: Option<&str>) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let b = boost_for(&loaded, boost)?;
    let p = point_for(&loaded, point)?;
    let g = &loaded.full;
    let r = pullback_limit(g, &b, &p)?;
    let mut json = json!({
        "boost": b,
        "canonical": b.is_canonical(),
        "point": point_json(&p, g),
        "dropped": r.dropped,
    });
    let mut table = format!("boost {b} at {}\n", point_text(&p, g));
    let pass = match &r.outcome {
        LimitOutcome::Converged(m) => {
            json["outcome"] = json!("converged");
            json["metric"] = metric_json(m)?;
            json["line_element"] = json!(m.to_string());
            let _ = writeln!(table, "converged: {m}");
            true
        }
        LimitOutcome::Unchanged => {
            json["outcome"] = json!("unchanged");
            json["metric"] = metric_json(g)?;
            json["line_element"] = json!(g.to_string());
            table.push_str("unchanged: every term has weight 0\n");
            true
        }
        LimitOutcome::BlowUp {
            component,
            term,
            weight,
        } => {
            json["outcome"] = json!("blow_up");
            json["blow_up"] = json!({ "component": component, "term": term, "weight": weight });
            let _ = writeln!(
                table,
                "diverges: {component} term {term} has weight +{weight}"
            );
            false
        }
    };
    if !r.dropped.is_empty() {
        table.push_str("dropped\n");
        let rows: Vec<Vec<String>> = r
            .dropped
            .iter()
            .map(|d| vec![d.component.clone(), d.term.clone(), d.weight.to_string()])
            .collect();
        table.push_str(&columns(&rows, "  "));
    }
    Ok(Report::new(json, table, pass))
}

fn point_text(p: &Point, g: &FullMetric) -> String {
    let cs = g.coords();
    let parts: Vec<String> = (0..cs.dim())
        .map(|v| format!("{}={}", cs.name(v), format_rational(p.get(v))))
        .collect();
    format!("({})", parts.join(", "))
}

pub fn invariants(path: &Path, point: Option<&str>) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let g = &loaded.full;
    let basis = InvariantBasis::standard();
    let values = basis_invariants(g, &basis)?;
    let cs = g.coords();
    let mut map = serde_json::Map::new();
    let mut rows = Vec::new();
    for (inv, p) in basis.members().iter().zip(&values) {
        let text = p.to_string_with(cs);
        rows.push(vec![inv.name().to_string(), text.clone()]);
        map.insert(inv.name().into(), json!(text));
    }
    let constant = values.iter().all(|p| p.is_constant());
    let zero = values.iter().all(|p| p.is_zero());
    let mut json = json!({
        "metric": path.display().to_string(),
        "invariants": map,
        "constant": constant,
        "zero": zero,
    });
    if point.is_some() || loaded.file.point.is_some() {
        let p = point_for(&loaded, point)?;
        let at = invariants_at(g, &basis, &p)?;
        let at_map: serde_json::Map<String, Value> = basis
            .members()
            .iter()
            .zip(&at)
            .map(|(inv, v)| (inv.name().to_string(), json!(format_rational(v))))
            .collect();
        json["point"] = point_json(&p, g);
        json["at_point"] = Value::Object(at_map);
        for (row, v) in rows.iter_mut().zip(&at) {
            row.push(format!("= {} at point", format_rational(v)));
        }
    }
    let mut table = columns(&rows, "");
    let _ = writeln!(
        table,
        "constant: {}, zero: {}",
        yes_no(constant),
        yes_no(zero)
    );
    Ok(Report::new(json, table, true))
}

pub fn vsi(
    path: &Path,
    max_depth: usize,
    max_entry: u32,
    point: Option<&str>,
) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let p = point_for(&loaded, point)?;
    match vsi_search(&loaded.full, max_depth, max_entry, &p)? {
        VsiOutcome::Certificate(cert) => {
            let json = CertificateJson::from_certificate(&cert)?;
            let mut table = format!("VSI certificate, {} step(s)\n", cert.steps.len());
            for (n, s) in cert.steps.iter().enumerate() {
                let _ = writeln!(table, "{:>3}. {} -> {}", n + 1, s.boost, s.metric);
            }
            let _ = writeln!(table, "endpoint flat: {}", yes_no(json.flat));
            Ok(Report::new(to_json(&json), table, true))
        }
        VsiOutcome::NotFound { nodes } => {
            let json = json!({
                "result": "not_found",
                "max_depth": max_depth,
                "max_entry": max_entry,
                "nodes": nodes,
            });
            let table = format!(
                "no chain to flat space within depth {max_depth}, entries <= {max_entry} ({nodes} nodes, inconclusive)\n"
            );
            Ok(Report::new(json, table, false))
        }
    }
}

pub fn replay(path: &Path, cert_path: &Path, point: Option<&str>) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let p = point_for(&loaded, point)?;
    let text = read(cert_path)?;
    let bad = |message: String| CliError::Certificate {
        path: cert_path.to_path_buf(),
        message,
    };
    let parsed: CertificateJson = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let cert = parsed.to_certificate(&p).map_err(|e| bad(e.to_string()))?;
    let report = match replay_certificate(&loaded.full, &cert) {
        Ok(r) => r,
        Err(LimitError::BoostDimension { boost, k }) => {
            return Err(bad(format!(
                "boost has {boost} entries, metric has k = {k}"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let mut table = String::new();
    for (n, (step, ok)) in cert.steps.iter().zip(&report.steps_ok).enumerate() {
        let _ = writeln!(
            table,
            "{:>3}. {}  {}",
            n + 1,
            step.boost,
            if *ok { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(table, "endpoint flat: {}", yes_no(report.endpoint_flat));
    let _ = writeln!(table, "{}", if report.valid { "VALID" } else { "INVALID" });
    Ok(Report::new(to_json(&report), table, report.valid))
}

pub fn csi(path: &Path) -> Result<Report, CliError> {
    let loaded = load(path)?;
    let outcome = csi_certificate(&loaded.full, &InvariantBasis::standard())?;
    let (rows, pass, head): (Vec<Vec<String>>, bool, String) = match &outcome {
        CsiOutcome::Constant(c) => (
            c.values
                .iter()
                .map(|v| vec![v.invariant.to_string(), v.value.clone()])
                .collect(),
            true,
            c.label.to_string(),
        ),
        CsiOutcome::NotConstant { offending } => (
            offending
                .iter()
                .map(|v| vec![v.invariant.to_string(), v.value.clone()])
                .collect(),
            false,
            "not constant".to_string(),
        ),
    };
    let table = format!("{head}\n{}", columns(&rows, "  "));
    Ok(Report::new(to_json(&outcome), table, pass))
}

fn parse_scale(text: &str) -> Result<Rational, CliError> {
    match parse_rational(text.trim()) {
        Some(s) if s != Rational::from_integer(0.into()) => Ok(s),
        _ => Err(CliError::Usage(format!(
            "invalid scale `{text}`, expected a nonzero rational"
        ))),
    }
}

pub fn check_theorem(
    metric: Option<&Path>,
    boost: Option<&str>,
    point: Option<&str>,
    seed: Option<u64>,
    m: usize,
    scales: &[String],
) -> Result<Report, CliError> {
    let scales = scales
        .iter()
        .map(|s| parse_scale(s))
        .collect::<Result<Vec<_>, _>>()?;
    let loaded = match (metric, seed) {
        (Some(path), _) => load(path)?,
        (None, Some(seed)) => {
            let text = boost.ok_or_else(|| CliError::Usage("--seed needs --boost".into()))?;
            let b = parse_boost(text)?;
            let canonical = instantiate_template(&b, m, &TemplateSource::Random { seed })?;
            let full = assemble(&canonical)?;
            let mut file = MetricFile::from_canonical(&canonical);
            file.boost = Some(b);
            Loaded {
                file,
                canonical,
                full,
            }
        }
        (None, None) => {
            return Err(CliError::Usage(
                "either --metric or --seed is required".into(),
            ))
        }
    };
    let b = boost_for(&loaded, boost)?;
    let p = point_for(&loaded, point)?;
    let g = &loaded.full;
    let basis = InvariantBasis::standard();

    let agreement = match invariant_agreement(g, &b, &p, &basis) {
        Ok(r) => r,
        Err(LimitError::BlowUp {
            component,
            term,
            weight,
        }) => {
            let json = json!({
                "boost": b,
                "point": point_json(&p, g),
                "pass": false,
                "blow_up": { "component": component, "term": term, "weight": weight },
            });
            let table =
                format!("FAIL: limit diverges, {component} term {term} has weight +{weight}\n");
            return Ok(Report::new(json, table, false));
        }
        Err(e) => return Err(e.into()),
    };
    let before = invariants_at(g, &basis, &p)?;
    let mut finite = Vec::new();
    for s in &scales {
        let moved = finite_pullback(g, &b, s, &p)?;
        let after = invariants_at(&moved, &basis, &p)?;
        finite.push((s, after == before));
    }
    let pass = agreement.pass && finite.iter().all(|(_, ok)| *ok);

    let json = json!({
        "boost": b,
        "point": point_json(&p, g),
        "metric": serde_json::to_value(&loaded.file).expect("metric serializes"),
        "agreement": agreement,
        "finite": finite.iter().map(|(s, ok)| json!({ "s": format_rational(s), "equal": ok })).collect::<Vec<_>>(),
        "pass": pass,
    });
    let mut rows = vec![vec![
        "invariant".to_string(),
        "metric".into(),
        "limit".into(),
        String::new(),
    ]];
    for row in &agreement.rows {
        rows.push(vec![
            row.invariant.to_string(),
            row.original.clone(),
            row.limit.clone(),
            (if row.equal { "equal" } else { "DIFFER" }).into(),
        ]);
    }
    let mut table = format!(
        "boost {b} at {}, limit {}\n",
        point_text(&p, g),
        if agreement.converged {
            "converged"
        } else {
            "unchanged"
        }
    );
    table.push_str(&columns(&rows, "  "));
    for (s, ok) in &finite {
        let _ = writeln!(
            table,
            "  s = {}: {}",
            format_rational(s),
            if *ok {
                "invariants unchanged"
            } else {
                "CHANGED"
            }
        );
    }
    let _ = writeln!(table, "{}", if pass { "PASS" } else { "FAIL" });
    Ok(Report::new(json, table, pass))
}
