//! Request handling for the `cubicy` command-line tool.
//!
//! A [`Request`] names a subcommand and its textual inputs. [`run`] parses
//! the inputs, calls into the library and returns a [`Report`]: an ordered
//! list of named fields rendered either as `name: value` lines or as JSON.

use cubicy::classify::{classify, defining_relations, potentials_equivalent_in};
use cubicy::curves::{classify_curve, CurveClass};
use cubicy::cy::{
    cy_check, is_standard, point_scheme, standard_q, tau_of_point, CyVerdict, PointScheme, P1,
};
use cubicy::hdet::{check_automorphism, is_hdet_exceptional, structured_search, AutCheck};
use cubicy::oracle::{cubic_regular_series, graded_dims, ideal_member, nilpotent_linear_form};
use cubicy::parse::Reader;
use cubicy::present::{to_clifford, to_dq, verify_centrality, verify_dq};
use cubicy::{Error, Gl2, NcPoly, Scalar};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    CyCheck,
    PointScheme,
    Tau,
    Hdet,
    Equiv,
    PresentDq,
    PresentClifford,
    Hilbert,
    Member,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::CyCheck => "cy-check",
            Command::PointScheme => "point-scheme",
            Command::Tau => "tau",
            Command::Hdet => "hdet",
            Command::Equiv => "equiv",
            Command::PresentDq => "present-dq",
            Command::PresentClifford => "present-clifford",
            Command::Hilbert => "hilbert",
            Command::Member => "member",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    /// The main potential; for `hilbert` and `member` it may be absent when
    /// `relations` is given.
    pub potential: Option<String>,
    /// `equiv`: the second potential.
    pub other: Option<String>,
    /// `hdet`: the automorphism.
    pub sigma: Option<String>,
    /// `tau`: a point `(a:b),(c:d)`.
    pub point: Option<String>,
    /// `hilbert`, `member`: cubic relations separated by `;`.
    pub relations: Option<String>,
    /// `member`: the element to test.
    pub element: Option<String>,
    pub max_degree: Option<usize>,
    pub tower_depth: usize,
    pub seed: u64,
    /// `hdet`: how many random automorphisms to sample.
    pub samples: usize,
}

impl Request {
    pub fn new(command: Command, potential: impl Into<String>) -> Request {
        Request {
            command,
            potential: Some(potential.into()),
            other: None,
            sigma: None,
            point: None,
            relations: None,
            element: None,
            max_degree: None,
            tower_depth: cubicy::FieldTower::rationals().limit(),
            seed: 0,
            samples: 0,
        }
    }
}

/// A machine-readable error class; see [`ErrorInfo::exit_code`].
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
    pub pos: Option<usize>,
}

impl ErrorInfo {
    fn from_error(e: &Error) -> ErrorInfo {
        let (code, pos) = match e {
            Error::Parse { pos, .. } => ("parse", Some(*pos)),
            Error::NonHomogeneous { pos, .. } => ("non_homogeneous", Some(*pos)),
            Error::ExtensionUnavailable(_) | Error::TowerDepthExceeded { .. } => {
                ("extension_unavailable", None)
            }
            Error::SymmetricPotential => ("symmetric_potential", None),
            Error::NotOnE => ("not_on_point_scheme", None),
            Error::AmbiguousThirdPoint => ("ambiguous_third_point", None),
            Error::DegreeMismatch { .. } => ("degree_mismatch", None),
            _ => ("precondition", None),
        };
        ErrorInfo {
            code,
            message: e.to_string(),
            pos,
        }
    }

    /// 2 for unreadable input, 4 for an unreachable field extension and 3
    /// for everything else.
    pub fn exit_code(&self) -> i32 {
        match self.code {
            "parse" | "non_homogeneous" => 2,
            "extension_unavailable" => 4,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub input: Map<String, Value>,
    pub result: Map<String, Value>,
    pub error: Option<ErrorInfo>,
}

impl Report {
    fn new(command: Command) -> Report {
        Report {
            command,
            input: Map::new(),
            result: Map::new(),
            error: None,
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }

    pub fn status(&self) -> &'static str {
        match (&self.error, self.result.is_empty()) {
            (None, _) => "ok",
            (Some(_), true) => "error",
            (Some(_), false) => "partial",
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, ErrorInfo::exit_code)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command.name(),
            "status": self.status(),
            "input": self.input,
            "result": self.result,
            "error": self.error.as_ref().map(|e| json!({
                "code": e.code,
                "message": e.message,
                "pos": e.pos,
            })),
        })
    }

    /// One `name: value` line per field, in report order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.input {
            out.push_str(&format!("input.{k}: {}\n", text_value(v)));
        }
        if self.command == Command::Classify {
            if let Some(line) = table_line(&self.result) {
                out.push_str(&line);
                out.push('\n');
            }
        }
        for (k, v) in &self.result {
            out.push_str(&format!("{k}: {}\n", text_value(v)));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error[{}]: {}\n", e.code, e.message));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
            }
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(text_value).collect::<Vec<_>>().join("; "),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k} = {}", text_value(v)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

/// `(row) | relations | H | E` in the layout of a classification table.
fn table_line(r: &Map<String, Value>) -> Option<String> {
    let place = match (r.get("table_row"), r.get("exceptional_id")) {
        (Some(Value::String(row)), _) => format!("({row})"),
        (_, Some(Value::String(e))) => e.clone(),
        _ => return None,
    };
    Some(format!(
        "{place} | {} | H = {} | {}",
        text_value(r.get("relations")?),
        text_value(r.get("point_scheme").unwrap_or(&Value::Null)),
        text_value(r.get("curve").unwrap_or(&Value::Null)),
    ))
}

fn s<T: ToString>(t: &T) -> Value {
    Value::String(t.to_string())
}

fn strings<T: ToString>(ts: &[T]) -> Value {
    Value::Array(ts.iter().map(s).collect())
}

/// Runs a request. Failures are recorded in the report, which keeps every
/// field computed before the failure.
pub fn run(req: &Request) -> Report {
    let mut report = Report::new(req.command);
    let mut reader = Reader::new(req.tower_depth);
    if let Err(e) = dispatch(req, &mut reader, &mut report) {
        report.error = Some(ErrorInfo::from_error(&e));
    }
    report
}

fn required<'a>(v: &'a Option<String>, what: &str) -> cubicy::Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::PreconditionViolated(format!("missing {what}")))
}

fn read_potential(
    req: &Request,
    reader: &mut Reader,
    report: &mut Report,
) -> cubicy::Result<NcPoly> {
    let w = reader.homogeneous(required(&req.potential, "potential")?, 4)?;
    report.input.insert("potential".into(), s(&w));
    Ok(w)
}

fn dispatch(req: &Request, reader: &mut Reader, report: &mut Report) -> cubicy::Result<()> {
    report
        .input
        .insert("tower_depth".into(), req.tower_depth.into());
    match req.command {
        Command::Classify => run_classify(read_potential(req, reader, report)?, report),
        Command::CyCheck => run_cy_check(read_potential(req, reader, report)?, report),
        Command::PointScheme => run_point_scheme(read_potential(req, reader, report)?, report),
        Command::Tau => {
            let w = read_potential(req, reader, report)?;
            let p = read_point(reader, required(&req.point, "point")?)?;
            report.input.insert("point".into(), s(&fmt_point(&p)));
            let q = tau_of_point(&w, &p)?;
            report.set("tau", fmt_point(&q));
            Ok(())
        }
        Command::Hdet => run_hdet(req, reader, report),
        Command::Equiv => {
            let w1 = read_potential(req, reader, report)?;
            let w2 = reader.homogeneous(required(&req.other, "second potential")?, 4)?;
            report.input.insert("other".into(), s(&w2));
            let found = potentials_equivalent_in(&w1, &w2, reader.context_mut())?;
            report.set("equivalent", found.is_some());
            report.set("sigma", found.as_ref().map(s));
            if let Some(g) = &found {
                let moved = w1.project_c().apply_gl2(g);
                report.set("scale", moved.ratio_to(&w2.project_c()).as_ref().map(s));
            }
            Ok(())
        }
        Command::PresentDq => {
            let w = read_potential(req, reader, report)?;
            let p = to_dq(&w)?;
            report.set("lambda", s(&p.lambda));
            report.set("f", s(&p.f));
            report.set("relations", strings(&p.relations));
            report.set("verified", verify_dq(&p, &w));
            Ok(())
        }
        Command::PresentClifford => {
            let w = read_potential(req, reader, report)?;
            let c = to_clifford(&w)?;
            let mat = |m: &[[Scalar; 2]; 2]| {
                format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
            };
            report.set("a", s(&c.a));
            report.set("b", s(&c.b));
            report.set("m1", mat(&c.m1));
            report.set("m2", mat(&c.m2));
            report.set("sigma", s(&c.sigma));
            report.set("scale", s(&c.scale));
            report.set("relations", strings(&c.relations()));
            let n = req.max_degree.unwrap_or(6);
            report.input.insert("max_degree".into(), n.into());
            report.set("cubes_central", verify_centrality(&w, n)?);
            Ok(())
        }
        Command::Hilbert => {
            let rels = read_relations(req, reader, report)?;
            let n = req.max_degree.unwrap_or(8);
            report.input.insert("max_degree".into(), n.into());
            let dims = graded_dims(&rels, n)?;
            let expected = cubic_regular_series(n);
            let deviation = dims.iter().zip(&expected).position(|(a, b)| a != b);
            report.set("dims", dims);
            report.set("expected", expected);
            report.set("matches_cy_signature", deviation.is_none());
            report.set("first_deviation", deviation);
            if let Some(text) = &req.potential {
                let c = classify(&reader.homogeneous(text, 4)?);
                report.set("exceptional_id", c.exceptional_id.map(|e| e.id()));
                report.set("table_row", c.table_row.map(|r| r.id()));
            }
            match nilpotent_linear_form(&rels) {
                Ok(l) => report.set("nilpotent_form", l.as_ref().map(s)),
                Err(e @ Error::ExtensionUnavailable(_)) => {
                    report.set("nilpotent_form", e.to_string())
                }
                Err(e) => return Err(e),
            }
            Ok(())
        }
        Command::Member => {
            let rels = read_relations(req, reader, report)?;
            let text = required(&req.element, "element")?;
            let u = read_element(reader, text)?;
            report.input.insert("element".into(), s(&u));
            report.set("degree", u.degree());
            report.set("member", ideal_member(&u, &rels)?);
            Ok(())
        }
    }
}

/// An element of any degree, read at the degree of its first nonzero term.
fn read_element(reader: &mut Reader, text: &str) -> cubicy::Result<NcPoly> {
    match reader.homogeneous(text, 0) {
        Err(Error::NonHomogeneous { found, .. }) => reader.homogeneous(text, found),
        other => other,
    }
}

fn read_relations(
    req: &Request,
    reader: &mut Reader,
    report: &mut Report,
) -> cubicy::Result<Vec<NcPoly>> {
    if let Some(text) = &req.relations {
        let mut rels = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            let r = reader.homogeneous(part, 3).map_err(|e| shift(e, offset))?;
            offset += part.len() + 1;
            rels.push(r);
        }
        report.input.insert("relations".into(), strings(&rels));
        return Ok(rels);
    }
    let w = read_potential(req, reader, report)?;
    let (r1, r2) = defining_relations(&w);
    report
        .input
        .insert("relations".into(), strings(&[&r1, &r2]));
    Ok(vec![r1, r2])
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        Error::NonHomogeneous {
            expected,
            found,
            pos,
        } => Error::NonHomogeneous {
            expected,
            found,
            pos: pos + offset,
        },
        other => other,
    }
}

fn fmt_point(p: &(P1, P1)) -> String {
    format!("{},{}", p.0, p.1)
}

/// `(a:b),(c:d)`.
fn read_point(reader: &mut Reader, text: &str) -> cubicy::Result<(P1, P1)> {
    let bad = |pos: usize| Error::Parse {
        pos,
        msg: "expected a point (a:b),(c:d)".into(),
    };
    let mut coords = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    for k in 0..2 {
        let t = rest.trim_start();
        offset += rest.len() - t.len();
        let t = if k == 1 {
            let u = t.strip_prefix(',').ok_or_else(|| bad(offset))?;
            offset += 1;
            let v = u.trim_start();
            offset += u.len() - v.len();
            v
        } else {
            t
        };
        let body = t.strip_prefix('(').ok_or_else(|| bad(offset))?;
        let close = body.find(')').ok_or_else(|| bad(offset + t.len()))?;
        let (a, b) = body[..close]
            .split_once(':')
            .ok_or_else(|| bad(offset + 1))?;
        let pa = reader.scalar(a).map_err(|e| shift(e, offset + 1))?;
        let pb = reader
            .scalar(b)
            .map_err(|e| shift(e, offset + 2 + a.len()))?;
        if pa.is_zero() && pb.is_zero() {
            return Err(bad(offset));
        }
        coords.push(P1::new(pa, pb));
        offset += close + 2;
        rest = &body[close + 1..];
    }
    if !rest.trim().is_empty() {
        return Err(bad(offset));
    }
    let q = coords.pop().expect("two points");
    let p = coords.pop().expect("two points");
    Ok((p, q))
}

fn verdict_name(v: &CyVerdict) -> &'static str {
    match v {
        CyVerdict::CalabiYau => "CalabiYau",
        CyVerdict::NotStandard => "NotStandard",
        CyVerdict::NonEmptyLocus(_) => "NonEmptyLocus",
    }
}

fn run_cy_check(w: NcPoly, report: &mut Report) -> cubicy::Result<()> {
    let c = w.project_c();
    let v = cy_check(&w);
    report.set("cyclic_part", s(&c));
    report.set("standard", is_standard(&c));
    report.set("q_s", standard_q(&c).as_ref().map(s));
    report.set("verdict", verdict_name(&v));
    report.set("calabi_yau", v.is_cy());
    if let CyVerdict::NonEmptyLocus(l) = &v {
        report.set("minor_gcd", s(&l.minor_gcd));
        report.set("locus_point", l.point.as_ref().map(fmt_point));
    }
    Ok(())
}

/// `(h₁)^m₁*(h₂)^m₂…` from the components, or the expanded form.
fn factored(class: &CurveClass, e: &PointScheme) -> String {
    if class.components.is_empty() {
        return match e {
            PointScheme::WholeSurface => "0".into(),
            PointScheme::Curve(h) => h.to_string(),
        };
    }
    class
        .components
        .iter()
        .map(|c| match c.multiplicity {
            1 => format!("({})", c.form),
            m => format!("({})^{m}", c.form),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn curve_fields(e: &PointScheme, report: &mut Report) -> cubicy::Result<()> {
    let class = classify_curve(e)?;
    report.set("point_scheme", factored(&class, e));
    report.set(
        "hessian",
        match e {
            PointScheme::WholeSurface => "0".to_string(),
            PointScheme::Curve(h) => h.to_string(),
        },
    );
    report.set("curve_tag", class.tag.name());
    report.set("curve", class.tag.description());
    report.set(
        "singular_points",
        Value::Array(
            class
                .singular_points
                .iter()
                .map(|p| json!({"point": fmt_point(&p.point), "rank": p.rank}))
                .collect(),
        ),
    );
    Ok(())
}

fn run_point_scheme(w: NcPoly, report: &mut Report) -> cubicy::Result<()> {
    let e = point_scheme(&w)?;
    curve_fields(&e, report)
}

fn run_classify(w: NcPoly, report: &mut Report) -> cubicy::Result<()> {
    let c = classify(&w);
    let (r1, r2) = defining_relations(&w);
    report.set("table_row", c.table_row.map(|r| r.id()));
    report.set("exceptional_id", c.exceptional_id.map(|e| e.id()));
    report.set("parameters", params_json(&c.parameters));
    report.set("cyclic_part", s(&c.cyclic_part));
    report.set("sp_coords", strings(&c.sp_coords));
    report.set("relations", strings(&[r1, r2]));
    report.set("quartic_class", c.quartic_class.tag.name());
    report.set(
        "lambda",
        match &c.quartic_class.lambda {
            Some(Ok(l)) => s(l),
            _ => Value::Null,
        },
    );
    report.set("cy", verdict_name(&c.cy));
    match &c.point_scheme {
        Some(e) => curve_fields(e, report)?,
        None => {
            report.set("point_scheme", Value::Null);
            report.set("curve_tag", Value::Null);
            report.set("curve", Value::Null);
        }
    }
    report.set(
        "normal_form",
        c.normal_form.as_ref().map(|n| {
            json!({
                "sigma": n.sigma.to_string(),
                "scale": n.scale.to_string(),
                "potential": n.potential.to_string(),
            })
        }),
    );
    report.set("notes", strings(&c.notes));
    if let Some(Err(e @ Error::ExtensionUnavailable(_))) = &c.quartic_class.lambda {
        return Err(e.clone());
    }
    Ok(())
}

fn params_json(p: &cubicy::classify::Params) -> Value {
    use cubicy::classify::Params;
    match p {
        Params::None => Value::Null,
        Params::AlphaBeta(a, b) => json!({"alpha": a.to_string(), "beta": b.to_string()}),
        Params::Gamma(g) => json!({"gamma": g.to_string()}),
    }
}

fn aut_json(c: &AutCheck) -> Value {
    json!({
        "sigma": c.sigma.to_string(),
        "extends": c.extends,
        "lambda": c.lambda.as_ref().map(|l| l.to_string()),
        "det": c.det_sigma.to_string(),
        "hdet": c.hdet.as_ref().map(|h| h.to_string()),
        "hdet_eq_detsq": c.ratio_to_detsq().map(|r| r.is_one()),
    })
}

fn run_hdet(req: &Request, reader: &mut Reader, report: &mut Report) -> cubicy::Result<()> {
    let w = read_potential(req, reader, report)?;
    if let Some(text) = &req.sigma {
        let g = reader.matrix(text)?;
        report.input.insert("sigma".into(), s(&g));
        let c = check_automorphism(&w, &g)?;
        for (k, v) in aut_json(&c).as_object().expect("object") {
            if k != "sigma" {
                report.set(k, v.clone());
            }
        }
        return Ok(());
    }
    report.input.insert("seed".into(), req.seed.into());
    report.input.insert("samples".into(), req.samples.into());
    let mut ctx = cubicy::RootContext::spanning(w.coeffs())?;
    let found = structured_search(&w, &mut ctx)?;
    report.set(
        "structured",
        Value::Array(found.iter().map(aut_json).collect()),
    );
    let sampled = sample_automorphisms(&w, &found, req.samples, req.seed)?;
    report.set(
        "sampled",
        Value::Array(sampled.iter().map(aut_json).collect()),
    );
    let witness = is_hdet_exceptional(&w)?;
    report.set("hdet_exceptional", witness.is_some());
    report.set(
        "witness",
        witness
            .as_ref()
            .map(|g| aut_json(&check_automorphism(&w, g).expect("checked"))),
    );
    Ok(())
}

/// Random products of the extending structured automorphisms, times small
/// rational scalars.
fn sample_automorphisms(
    w: &NcPoly,
    gens: &[AutCheck],
    n: usize,
    seed: u64,
) -> cubicy::Result<Vec<AutCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut g = Gl2::identity();
        for _ in 0..rng.gen_range(0..4) {
            if !gens.is_empty() {
                g = gens[rng.gen_range(0..gens.len())].sigma.compose(&g);
            }
        }
        let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=3);
        g = g.scale(&(Scalar::from_int(num) / Scalar::from_int(den)));
        out.push(check_automorphism(w, &g)?);
    }
    Ok(out)
}

/// Every request line of a batch file: blank lines and `#` comments are
/// skipped.
pub fn batch_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}
