//! Report generation behind the `toric-cox` binary.
//!
//! Each subcommand reads one JSON file and produces a [`Report`]. Reports
//! render either as aligned text or as JSON; both are deterministic.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use toric_cox::euler::kappa_weights;
use toric_cox::fan::{
    anticanonical, cech_transitions, is_ample, validate_fan, verify_exactness, FanDefect,
    TorusInvariantDivisor,
};
use toric_cox::lattice::{solve_integer, to_bigint_vec};
use toric_cox::polyhedral::hilbert_basis;
use toric_cox::reconstruct::{
    gale_dual_rays, reconstruct_fan, roundtrip_check, splitting_certificate,
};
use toric_cox::{
    little_hilbert_check, CoxData, CoxError, EulerModule, Fan, FanError, GradingInput, Polynomial,
    ReconstructError, Strategy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Cox,
    Euler,
    Reconstruct,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cox => "cox",
            Command::Euler => "euler",
            Command::Reconstruct => "reconstruct",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub title: String,
    pub entries: Map<String, Value>,
}

impl Section {
    fn new(title: &str) -> Self {
        Self {
            title: title.to_string(),
            entries: Map::new(),
        }
    }

    fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.entries.insert(key.to_string(), value.into());
        self
    }

    fn passed(&self) -> bool {
        self.entries
            .get("pass")
            .and_then(Value::as_bool)
            .unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error { code: i32, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the input bytes, hex encoded.
    pub input_digest: String,
    pub sections: Vec<Section>,
    pub status: Status,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::Error { code, .. } => code,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.input_digest);
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.title);
            let width = s.entries.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &s.entries {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    Value::Bool(true) => "yes".into(),
                    Value::Bool(false) => "no".into(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "  {k:<width$}  {shown}");
            }
        }
        let _ = match &self.status {
            Status::Ok => writeln!(out, "\nstatus: ok"),
            Status::Error { code, message } => writeln!(out, "\nstatus: error {code}: {message}"),
        };
        out
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        let code = match e {
            FanError::Parse(_) => EXIT_PARSE,
            FanError::Malformed(_) | FanError::DivisorLength { .. } => EXIT_MALFORMED,
            _ => EXIT_FAILED,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CoxError> for Failure {
    fn from(e: CoxError) -> Self {
        match e {
            CoxError::Fan(f) => f.into(),
            other => Failure::new(EXIT_FAILED, other.to_string()),
        }
    }
}

impl From<ReconstructError> for Failure {
    fn from(e: ReconstructError) -> Self {
        let code = match e {
            ReconstructError::Parse(_) => EXIT_PARSE,
            ReconstructError::Shape { .. } => EXIT_MALFORMED,
            _ => EXIT_FAILED,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<toric_cox::EulerError> for Failure {
    fn from(e: toric_cox::EulerError) -> Self {
        Failure::new(EXIT_FAILED, e.to_string())
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Runs one subcommand on the file at `path`.
pub fn run(command: Command, path: &Path, degree: Option<&[i64]>) -> Report {
    let mut report = Report {
        command: command.name().to_string(),
        input_digest: String::new(),
        sections: Vec::new(),
        status: Status::Ok,
    };
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            report.status = Status::Error {
                code: EXIT_PARSE,
                message: format!("{}: {e}", path.display()),
            };
            return report;
        }
    };
    report.input_digest = digest(&bytes);
    let text = match String::from_utf8(bytes) {
        Ok(t) => t,
        Err(_) => {
            report.status = Status::Error {
                code: EXIT_PARSE,
                message: "input is not UTF-8".into(),
            };
            return report;
        }
    };
    let result = match command {
        Command::Validate => validate(&text, &mut report.sections),
        Command::Cox => cox(&text, &mut report.sections),
        Command::Euler => euler(&text, degree, &mut report.sections),
        Command::Reconstruct => reconstruct(&text, &mut report.sections),
        Command::Verify => verify(&text, &mut report.sections),
    };
    if let Err(f) = result {
        report.status = Status::Error {
            code: f.code,
            message: f.message,
        };
    }
    report
}

fn load_fan(text: &str, sections: &mut Vec<Section>) -> Result<Fan, Failure> {
    let fan = Fan::from_json(text).map_err(|e| {
        if let FanError::Malformed(d) = &e {
            sections.push(Section::new("fan").put("defect", describe_defect(d)));
        }
        Failure::from(e)
    })?;
    sections.push(
        Section::new("fan")
            .put("dim", fan.dim())
            .put("rays", json!(fan.rays()))
            .put("max_cones", json!(fan.max_cones())),
    );
    Ok(fan)
}

fn describe_defect(d: &FanDefect) -> String {
    format!("{d:?}")
}

fn load_cox(fan: &Fan, sections: &mut Vec<Section>) -> Result<CoxData, Failure> {
    let report = validate_fan(fan);
    sections.push(flags_section(&report));
    if !report.smooth_and_complete() {
        return Err(Failure::new(EXIT_FAILED, "fan must be smooth and complete"));
    }
    Ok(CoxData::new(fan.clone())?)
}

fn flags_section(r: &toric_cox::fan::FanReport) -> Section {
    Section::new("validation")
        .put("simplicial", r.simplicial)
        .put("smooth", r.smooth)
        .put("complete", r.complete)
}

fn validate(text: &str, sections: &mut Vec<Section>) -> Result<(), Failure> {
    let fan = load_fan(text, sections)?;
    let r = validate_fan(&fan);
    sections.push(flags_section(&r));
    if !r.smooth_and_complete() {
        return Err(Failure::new(EXIT_FAILED, "fan is not smooth and complete"));
    }
    Ok(())
}

fn monomial(e: &[u32]) -> String {
    Polynomial::from_exponent(e.to_vec()).to_string()
}

fn cox(text: &str, sections: &mut Vec<Section>) -> Result<(), Failure> {
    let fan = load_fan(text, sections)?;
    let cd = load_cox(&fan, sections)?;
    let q = cd
        .degree_map()
        .matrix
        .to_i64_rows()
        .map_err(|e| Failure::new(EXIT_FAILED, e.to_string()))?;
    sections.push(
        Section::new("class group")
            .put("rank", cd.cl_rank())
            .put("torsion", json!([])),
    );
    let mut degrees = Section::new("degrees").put("Q", json!(q));
    for (name, d) in cd.variable_names().iter().zip(cd.variable_degrees()) {
        degrees = degrees.put(name, json!(d));
    }
    sections.push(degrees);
    let eff = cd.effective_cone();
    let gens = eff.minimal_generators();
    let hilbert = hilbert_basis(&eff).map_err(|e| Failure::new(EXIT_FAILED, e.to_string()))?;
    sections.push(
        Section::new("effective cone")
            .put("rays", bigs(&gens.rays))
            .put("facet_normals", bigs(eff.facet_normals()))
            .put("hilbert_basis", bigs(&hilbert)),
    );
    let on_hilbert: Vec<Value> = hilbert.iter().map(|h| big(&cd.kappa().eval(h))).collect();
    sections.push(
        Section::new("kappa")
            .put(
                "coefficients",
                Value::Array(cd.kappa().coefficients.iter().map(big).collect()),
            )
            .put(
                "rule",
                "sum of primitive dual extreme rays, scaled to be >= 1 on the Hilbert basis",
            )
            .put("values_on_hilbert_basis", json!(on_hilbert))
            .put("variable_weights", json!(cd.weights())),
    );
    let ideal = cd.irrelevant_ideal();
    sections.push(Section::new("irrelevant ideal").put(
        "generators",
        json!(ideal.generators.iter().map(|g| monomial(g)).collect::<Vec<_>>()),
    ));
    sections
        .push(Section::new("anticanonical").put("class", json!(cd.class_of(&anticanonical(&fan)))));
    Ok(())
}

/// Integers that fit in `i64` print as JSON numbers, larger ones as strings.
fn big(x: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn bigs(v: &[Vec<num_bigint::BigInt>]) -> Value {
    Value::Array(
        v.iter()
            .map(|r| Value::Array(r.iter().map(big).collect()))
            .collect(),
    )
}

fn euler(text: &str, degree: Option<&[i64]>, sections: &mut Vec<Section>) -> Result<(), Failure> {
    let fan = load_fan(text, sections)?;
    let cd = load_cox(&fan, sections)?;
    let em = EulerModule::new(cd);
    let anti = em.anticanonical_class();
    sections.push(
        Section::new("euler module")
            .put("rank", em.rank())
            .put("basis_degrees", json!(em.basis_degrees()))
            .put("degree_sum", json!(em.degree_sum()))
            .put("anticanonical_class", json!(anti)),
    );
    let lambda = degree.map(<[i64]>::to_vec).unwrap_or(anti);
    if lambda.len() != em.cox().cl_rank() {
        return Err(Failure::new(
            EXIT_MALFORMED,
            format!(
                "degree has {} entries, class group has rank {}",
                lambda.len(),
                em.cox().cl_rank()
            ),
        ));
    }
    let mut summands = Vec::with_capacity(em.rank());
    for d in em.basis_degrees() {
        let shifted: Vec<i64> = lambda.iter().zip(d).map(|(a, b)| a - b).collect();
        summands.push(em.cox().graded_dimension(&shifted)?);
    }
    sections.push(
        Section::new("graded piece")
            .put("degree", json!(lambda))
            .put("dimension", em.graded_piece_dim(&lambda)?)
            .put("summand_dimensions", json!(summands)),
    );
    let kappa = em.cox().kappa().clone();
    let rep = em.verify_euler_identity(&kappa, 4, 10, 0, Strategy::default())?;
    sections.push(
        Section::new("euler identity")
            .put("max_weight", 4)
            .put("checked", rep.checked)
            .put("failures", json!(rep.failures))
            .put("pass", rep.holds()),
    );
    if !rep.holds() {
        return Err(Failure::new(EXIT_FAILED, "Euler identity failed"));
    }
    Ok(())
}

fn reconstruct(text: &str, sections: &mut Vec<Section>) -> Result<(), Failure> {
    let gi = GradingInput::from_json(text)?;
    let lift = if gi.q.len() == gi.w.len() {
        solve_integer(&gi.matrix(), &to_bigint_vec(&gi.w))
            .ok()
            .flatten()
            .map(|a| Value::Array(a.iter().map(big).collect()))
    } else {
        None
    };
    sections.push(
        Section::new("grading")
            .put("Q", json!(gi.q))
            .put("w", json!(gi.w))
            .put("lift", lift.unwrap_or(Value::Null)),
    );
    let gale = gale_dual_rays(&gi)?;
    sections.push(
        Section::new("gale dual")
            .put("rays", json!(gale.rays))
            .put("multiplicities", json!(gale.multiplicities)),
    );
    let fan = reconstruct_fan(&gi)?;
    let r = validate_fan(&fan);
    sections.push(
        Section::new("fan")
            .put("json", serde_json::to_value(&fan).expect("fans serialize"))
            .put("max_cones", fan.max_cones().len())
            .put("smooth", r.smooth)
            .put("complete", r.complete),
    );
    Ok(())
}

/// Small divisors with coefficients in `0..=max`.
fn small_divisors(n: usize, max: i64) -> Vec<TorusInvariantDivisor> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        out.push(TorusInvariantDivisor(cur.clone()));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Degrees with entries in `-bound..=bound`.
pub fn degree_window(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn verify(text: &str, sections: &mut Vec<Section>) -> Result<(), Failure> {
    let fan = load_fan(text, sections)?;
    let cd = load_cox(&fan, sections)?;
    let n = fan.num_rays();
    let start = sections.len();

    let ex = verify_exactness(&fan)?;
    sections.push(
        Section::new("exactness")
            .put("composite_zero", ex.composite_zero)
            .put("kernel_is_image", ex.kernel_is_image)
            .put("div_injective", ex.div_injective)
            .put("class_group_rank", ex.class_group_rank)
            .put("pass", ex.holds() && ex.class_group_rank == n - fan.dim()),
    );

    let window = degree_window(cd.cl_rank(), if cd.cl_rank() > 2 { 1 } else { 2 });
    let mut mismatches = Vec::new();
    let mut total = 0usize;
    for lambda in &window {
        match cd.graded_dimension(lambda) {
            Ok(d) => total += d,
            Err(CoxError::OracleMismatch { degree, .. }) => mismatches.push(json!(degree)),
            Err(e) => return Err(e.into()),
        }
    }
    sections.push(
        Section::new("graded dimensions")
            .put("degrees", window.len())
            .put("total_dimension", total)
            .put("mismatches", Value::Array(mismatches.clone()))
            .put("pass", mismatches.is_empty()),
    );

    let em = EulerModule::new(cd);
    let kappa = em.cox().kappa().clone();
    let id = em.verify_euler_identity(&kappa, 6, 20, 0, Strategy::default())?;
    sections.push(
        Section::new("euler identity")
            .put("max_weight", 6)
            .put("checked", id.checked)
            .put("failures", json!(id.failures))
            .put("pass", id.holds()),
    );
    let lb = em.verify_leibniz(4, 20, 0)?;
    sections.push(
        Section::new("leibniz")
            .put("pairs", lb.checked)
            .put("failures", json!(lb.failures))
            .put("pass", lb.holds()),
    );
    let sj = em.verify_surjectivity(&kappa, 6)?;
    sections.push(
        Section::new("kappa-hat surjectivity")
            .put("monomials", sj.checked)
            .put("constant_terms", sj.constant_terms)
            .put("missed", json!(sj.missed))
            .put("pass", sj.holds()),
    );
    let gens: Vec<Polynomial> = em
        .generation_transfer(&kappa)?
        .into_iter()
        .map(|g| g.poly)
        .collect();
    let generates = little_hilbert_check(&kappa_weights(em.cox(), &kappa), &gens, 6)?;
    sections.push(
        Section::new("generation transfer")
            .put(
                "images",
                json!(gens.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
            .put("max_weight", 6)
            .put("pass", generates),
    );
    let x = Polynomial::variable(2, 0);
    let y = Polynomial::variable(2, 1);
    let rejects = !little_hilbert_check(&[1, 1], &[x.mul(&x), y], 3)?;
    sections.push(
        Section::new("little hilbert counterexample")
            .put("candidates", "x0^2, x1")
            .put("pass", rejects),
    );

    let window =
        std::iter::once(vec![0; em.cox().cl_rank()]).chain(em.basis_degrees().iter().cloned());
    let mut window: Vec<Vec<i64>> = window.collect();
    window.sort();
    window.dedup();
    let dec = em.tinvariant_decomposition_check(&window)?;
    sections.push(
        Section::new("section sequence")
            .put("rank", dec.rank)
            .put(
                "omega_dims",
                json!(dec
                    .rows
                    .iter()
                    .map(|r| json!([r.degree, r.omega_dim]))
                    .collect::<Vec<_>>()),
            )
            .put("pass", dec.holds()),
    );

    let mut ample = 0;
    let mut failed = Vec::new();
    for d in small_divisors(n, 2) {
        if is_ample(&fan, &d)? {
            ample += 1;
            if !matches!(roundtrip_check(&fan, &d), Ok(true)) {
                failed.push(json!(d.coefficients()));
            }
        }
    }
    sections.push(
        Section::new("round trip")
            .put("ample_divisors", ample)
            .put("failures", Value::Array(failed.clone()))
            .put("pass", ample > 0 && failed.is_empty()),
    );

    let mut divisors: Vec<TorusInvariantDivisor> =
        (0..n).map(|r| TorusInvariantDivisor::prime(n, r)).collect();
    divisors.push(anticanonical(&fan));
    let mut cocycle = true;
    let mut additive = true;
    for d in &divisors {
        let g = cech_transitions(&fan, d)?;
        cocycle &= g.satisfies_cocycle() && g.is_antisymmetric();
        let k = cech_transitions(&fan, &anticanonical(&fan))?;
        additive &= cech_transitions(&fan, &d.add(&anticanonical(&fan)))? == g.add(&k);
    }
    sections.push(
        Section::new("cech cocycle")
            .put("divisors", divisors.len())
            .put("cocycle", cocycle)
            .put("additive", additive)
            .put("pass", cocycle && additive),
    );

    let cert = splitting_certificate(&fan)?;
    sections.push(
        Section::new("splitting certificate")
            .put("rank", cert.rank)
            .put("degree_multiset", json!(cert.degree_multiset))
            .put("anticanonical_check", cert.anticanonical_check)
            .put("divisor_match", cert.divisor_match)
            .put("pass", cert.holds()),
    );

    let failing: Vec<&str> = sections[start..]
        .iter()
        .filter(|s| !s.passed())
        .map(|s| s.title.as_str())
        .collect();
    if !failing.is_empty() {
        return Err(Failure::new(
            EXIT_FAILED,
            format!("failed: {}", failing.join(", ")),
        ));
    }
    Ok(())
}

/// Parses `"1,-2"` into a degree vector.
pub fn parse_degree(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad degree entry {p:?}: {e}"))
        })
        .collect()
}
