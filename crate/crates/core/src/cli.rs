//! Command-line front end. [`run`] does all the work and returns the exit code with
//! the text destined for stdout and stderr, so it can be tested without a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use crate::gf::{FieldSpec, FieldSpecRepr};
use crate::group::{
    classify_reflections, fixed_hyperplane, is_reflection_generated, pointwise_stabilizer,
    reflecting_arrangement, stabilizer_decomposition, Group, GroupSpec,
};
use crate::invariants::{
    construct_hyperplane_invariants, verify_basic_invariants, BasicInvariants, ConstructionTrace,
};
use crate::mpoly::MultiPoly;
use crate::report::{
    vector_repr, AnalysisRepr, GroupInput, GroupSummary, InvariantsRepr, Output, ReflectionCensus,
    StabilizerRepr, TheoremRepr, VerificationRepr, SCHEMA_VERSION,
};
use crate::theorem::{
    arrangement_data, degree_identity_from, factorization_from, ramification_check,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hyperjac",
    version,
    about = "Reflection arrangements, basic invariants and Jacobians of finite linear groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Order, reflections, arrangement and hyperplane stabilizers
    Analyze(JobArgs),
    /// Basic invariants, constructed for hyperplane-fixing groups
    Invariants(JobArgs),
    /// Jacobian factorization over the reflection arrangement
    Jacobian(JobArgs),
    /// Every check, including the ramification formula
    Verify(JobArgs),
    /// List builtin groups, or print one as an input file
    Builtin {
        name: Option<String>,
        args: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct JobArgs {
    /// JSON group file
    pub input: Option<PathBuf>,
    /// builtin group, e.g. `--builtin gl 2 3`
    #[arg(long, num_args = 1.., value_names = ["NAME", "ARGS"])]
    pub builtin: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// include the construction trace
    #[arg(long)]
    pub trace: bool,
    /// sum the ramification formula over every hyperplane
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long)]
    pub order_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Invariants,
    Jacobian,
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Invariants => "invariants",
            Command::Jacobian => "jacobian",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Builtin(String, Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Input,
    pub format: Format,
    pub trace: bool,
    pub exhaustive: bool,
    pub order_cap: Option<usize>,
}

/// What a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Internal(_) | Error::VerificationFailed => EXIT_CHECK,
        _ => EXIT_INPUT,
    }
}

fn failure(err: Error) -> RunResult {
    RunResult {
        code: exit_code(&err),
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    }
}

/// Parses arguments (including the program name) and runs the job.
pub fn main_with_args<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (command, args) = match cli.command {
        CliCommand::Builtin { name, args } => return builtin_command(name.as_deref(), &args),
        CliCommand::Analyze(a) => (Command::Analyze, a),
        CliCommand::Invariants(a) => (Command::Invariants, a),
        CliCommand::Jacobian(a) => (Command::Jacobian, a),
        CliCommand::Verify(a) => (Command::Verify, a),
    };
    let input = match (args.input, args.builtin) {
        (Some(path), None) => Input::File(path),
        (None, Some(mut b)) => {
            let name = b.remove(0);
            Input::Builtin(name, b)
        }
        _ => {
            return failure(Error::Parse(
                "give exactly one of an input file or --builtin".into(),
            ))
        }
    };
    run(&JobSpec {
        command,
        input,
        format: args.format,
        trace: args.trace,
        exhaustive: args.exhaustive,
        order_cap: args.order_cap,
    })
}

fn builtin_command(name: Option<&str>, args: &[String]) -> RunResult {
    let Some(name) = name else {
        let mut out = String::new();
        for (name, args, about) in fixtures::REGISTRY {
            let _ = writeln!(out, "{:<24}{about}", format!("{name} {args}"));
        }
        return RunResult {
            code: EXIT_OK,
            stdout: out,
            stderr: String::new(),
        };
    };
    let fixture = match fixtures::builtin(name, args) {
        Ok(f) => f,
        Err(e) => return failure(e),
    };
    let invariants = match fixture.family_invariants().transpose() {
        Ok(inv) => inv,
        Err(e) => return failure(e),
    };
    let input = GroupInput::from_spec(
        &fixture.spec,
        Some(fixture.labels.clone()),
        invariants.as_deref(),
    );
    let text = serde_json::to_string_pretty(&input).expect("serializable");
    RunResult {
        code: EXIT_OK,
        stdout: text + "\n",
        stderr: String::new(),
    }
}

struct Loaded {
    source: String,
    spec: GroupSpec,
    proposed: Option<Vec<MultiPoly>>,
    fixture: Option<Fixture>,
}

fn load(job: &JobSpec) -> Result<Loaded> {
    let mut loaded = match &job.input {
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let input = GroupInput::parse(&text)?;
            let (spec, proposed) = input.resolve()?;
            Loaded {
                source: path.display().to_string(),
                spec,
                proposed,
                fixture: None,
            }
        }
        Input::Builtin(name, args) => {
            let fixture = fixtures::builtin(name, args)?;
            Loaded {
                source: format!("builtin {}", fixture.name),
                spec: fixture.spec.clone(),
                proposed: None,
                fixture: Some(fixture),
            }
        }
    };
    if let Some(cap) = job.order_cap {
        loaded.spec.order_cap = cap;
    }
    Ok(loaded)
}

fn analysis(field: &FieldSpec, group: &Group) -> Result<AnalysisRepr> {
    let reflections = classify_reflections(field, &group.elements);
    let transvections = reflections.iter().filter(|r| r.is_transvection).count();
    let arrangement = reflecting_arrangement(field, &group.elements);
    let stabilizers = arrangement
        .iter()
        .map(|h| {
            let g_h = pointwise_stabilizer(field, &group.elements, h);
            Ok(StabilizerRepr::new(
                field,
                &stabilizer_decomposition(field, &g_h, h)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisRepr {
        census: ReflectionCensus {
            reflections: reflections.len(),
            transvections,
            diagonalizable: reflections.len() - transvections,
        },
        reflection_generated: is_reflection_generated(field, &group.elements)?,
        arrangement: arrangement
            .iter()
            .map(|h| vector_repr(field, h.form()))
            .collect(),
        stabilizers,
    })
}

/// Source label, polynomials and (for constructed invariants) the trace.
type Chosen = (String, Vec<MultiPoly>, Option<ConstructionTrace>);

/// Basic invariants for the job: proposed in the input, a builtin family, or constructed.
fn basic_invariants(
    field: &FieldSpec,
    group: &Group,
    loaded: &Loaded,
    prefer_construction: bool,
) -> Result<Chosen> {
    let construct = || -> Result<Option<Chosen>> {
        let Some(h) = fixed_hyperplane(field, &group.elements) else {
            return Ok(None);
        };
        let (basics, trace) = construct_hyperplane_invariants(field, &group.elements, &h)?;
        Ok(Some(("constructed".into(), basics.polys, Some(trace))))
    };
    if prefer_construction {
        if let Some(found) = construct()? {
            return Ok(found);
        }
    }
    if let Some(polys) = &loaded.proposed {
        return Ok(("input".into(), polys.clone(), None));
    }
    if let Some(polys) = loaded.fixture.as_ref().and_then(Fixture::family_invariants) {
        return Ok(("family".into(), polys?, None));
    }
    construct()?.ok_or(Error::NotHyperplaneFixing)
}

/// Runs one job; never panics on bad input.
pub fn run(job: &JobSpec) -> RunResult {
    match execute(job) {
        Ok(output) => {
            let code = if output.pass { EXIT_OK } else { EXIT_CHECK };
            let stdout = match job.format {
                Format::Json => serde_json::to_string_pretty(&output).expect("serializable") + "\n",
                Format::Text => render_text(&output),
            };
            RunResult {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => failure(e),
    }
}

/// Builds the report document for a job.
pub fn execute(job: &JobSpec) -> Result<Output> {
    let loaded = load(job)?;
    let group = Group::generate(&loaded.spec)?;
    let field = group.field.clone();
    let mut output = Output {
        schema: SCHEMA_VERSION,
        command: job.command.name().into(),
        source: Some(loaded.source.clone()),
        group: GroupSummary {
            field: FieldSpecRepr::from(&field),
            n: group.n,
            order: group.order(),
        },
        analysis: None,
        invariants: None,
        verification: None,
        report: None,
        pass: true,
    };
    if matches!(job.command, Command::Analyze | Command::Verify) {
        let a = analysis(&field, &group)?;
        output.pass &= a.stabilizers.iter().all(|s| s.order_formula);
        output.analysis = Some(a);
    }
    if job.command == Command::Analyze {
        return Ok(output);
    }

    let (source, polys, trace) =
        basic_invariants(&field, &group, &loaded, job.command == Command::Invariants)?;
    let basics = BasicInvariants::new(polys)?;
    let trace = if job.trace { trace } else { None };
    output.invariants = Some(InvariantsRepr::new(
        &field,
        &source,
        &basics,
        trace.as_ref(),
    ));
    let verification = verify_basic_invariants(&field, &group, &basics.polys)?;
    output.pass &= verification.pass;
    output.verification = Some(VerificationRepr::from(&verification));
    if job.command == Command::Invariants || !verification.pass {
        return Ok(output);
    }

    let locals = arrangement_data(&field, &group)?;
    let factorization = factorization_from(&field, &basics, &locals)?;
    let degree_identity = degree_identity_from(&basics, &locals);
    let ramification = if job.command == Command::Verify {
        Some(ramification_check(&field, &group, &basics, job.exhaustive)?)
    } else {
        None
    };
    let report = TheoremRepr::new(
        &field,
        &factorization,
        &degree_identity,
        ramification.as_ref(),
    );
    output.pass &= report.pass;
    output.report = Some(report);
    Ok(output)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn form_text(field: &FieldSpec, form: &[Vec<u32>]) -> String {
    let coeffs: Vec<_> = form
        .iter()
        .map(|c| field.from_coeffs(c).expect("valid scalar"))
        .collect();
    MultiPoly::linear(&coeffs).display(field).to_string()
}

fn poly_text(field: &FieldSpec, n: usize, terms: &[crate::mpoly::TermRepr]) -> String {
    MultiPoly::from_repr(field, n, terms)
        .expect("valid polynomial")
        .display(field)
        .to_string()
}

/// Human-readable rendering of a report document.
pub fn render_text(output: &Output) -> String {
    let field = FieldSpec::try_from(output.group.field.clone()).expect("valid field");
    let n = output.group.n;
    let mut s = String::new();
    if let Some(src) = &output.source {
        let _ = writeln!(s, "source: {src}");
    }
    let _ = writeln!(
        s,
        "group: n = {n} over F_{} (modulus {:?}), order {}",
        field.order(),
        field.modulus(),
        output.group.order
    );
    if let Some(a) = &output.analysis {
        let c = &a.census;
        let _ = writeln!(
            s,
            "reflections: {} ({} transvections, {} diagonalizable); generated by reflections: {}",
            c.reflections,
            c.transvections,
            c.diagonalizable,
            yes(a.reflection_generated)
        );
        let _ = writeln!(s, "arrangement: {} hyperplane(s)", a.arrangement.len());
        for st in &a.stabilizers {
            let _ = writeln!(
                s,
                "  {}: |G_H| = {}, e = {}, |F_p(w)| = {}, d = {}, |K| = {}, order formula {}",
                form_text(&field, &st.hyperplane),
                st.order,
                st.e,
                st.subfield_order,
                st.d,
                st.k_order,
                ok(st.order_formula)
            );
        }
    }
    if let Some(inv) = &output.invariants {
        let _ = writeln!(
            s,
            "invariants ({}): degrees {:?}, exponents {:?}",
            inv.source, inv.degrees, inv.exponents
        );
        for (i, f) in inv.polys.iter().enumerate() {
            let _ = writeln!(s, "  f{} = {}", i + 1, poly_text(&field, n, f));
        }
        if let Some(trace) = &inv.trace {
            let _ = writeln!(
                s,
                "trace: hyperplane {}, start J ~ l^{}",
                form_text(&field, &trace.hyperplane),
                trace.initial_exponent
            );
            for (k, step) in trace.steps.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  step {}: pivot f{}, |A| = {}, J ~ l^{}",
                    k + 1,
                    step.pivot + 1,
                    step.additive_set.len(),
                    step.jacobian_exponent
                );
            }
        }
    }
    if let Some(v) = &output.verification {
        let _ = writeln!(
            s,
            "verification: invariant {}, jacobian nonzero {}, degree product = |G| {}",
            yes(v.invariant),
            yes(v.jacobian_nonzero),
            yes(v.degree_product_matches)
        );
    }
    if let Some(r) = &output.report {
        let _ = writeln!(s, "jacobian: {}", poly_text(&field, n, &r.jacobian));
        for f in &r.factors {
            let _ = writeln!(
                s,
                "  {}: multiplicity {} (observed {}, divides {})",
                form_text(&field, &f.hyperplane),
                f.multiplicity,
                f.observed,
                yes(f.divides)
            );
        }
        match &r.unit {
            Some(u) => {
                let _ = writeln!(
                    s,
                    "factorization: ok, unit {}",
                    field.format(field.from_coeffs(u).expect("valid scalar"))
                );
            }
            None => {
                let _ = writeln!(s, "factorization: FAILED");
            }
        }
        let d = &r.degree_identity;
        let _ = writeln!(
            s,
            "degree identity: deg J = {}, sum m_H = {}: {}",
            d.jacobian_degree,
            d.exponent_sum,
            ok(d.pass)
        );
        if let Some(ram) = &r.ramification {
            let _ = writeln!(
                s,
                "ramification: |G| psi = {}/{}, sum |G_H| psi_H = {}/{}: {}",
                ram.lhs.num,
                ram.lhs.den,
                ram.rhs.num,
                ram.rhs.den,
                ok(ram.pass)
            );
        }
        let _ = writeln!(
            s,
            "zero set is the arrangement: {}",
            yes(r.zero_set_is_arrangement)
        );
    }
    let _ = writeln!(s, "verdict: {}", if output.pass { "PASS" } else { "FAIL" });
    s
}
