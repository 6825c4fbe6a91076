//! Command-line front end. [`run`] does all the work and returns the exit
//! code with both output streams, so the binary is a thin wrapper.

use std::ffi::OsString;
use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use discomp::forms::BinaryForm;
use discomp::groups::GradedGroup;
use discomp::oracle::{self, Connection, LoopSpec, MoveGraph};
use discomp::resolution::{self, Mismatch, Problem};
use discomp::simplicial::{caratheodory_check, DEFAULT_FACE_CAP};
use discomp::Error;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "discomp", version, about = "Cohomology of real binary forms without multiple root lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced cohomology of the complement of the discriminant.
    Groups {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = GroupsMethod::Closed)]
        method: GroupsMethod,
        #[arg(long)]
        json: bool,
    },
    /// First page of the spectral sequence and the page after d₁.
    E1 {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Number of connected components.
    Components {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = ComponentsMethod::Both)]
        method: ComponentsMethod,
    },
    /// Root pattern and component id of a form.
    Classify {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Path between two forms, or a verdict that none exists.
    Connect {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Winding number of a loop of forms with simple real roots.
    Winding {
        /// Rotate `--form` through a half-turn.
        #[arg(long, requires = "form", conflicts_with = "loop_forms")]
        rotate: bool,
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        /// Closed polygon `f0;f1;…;f0`.
        #[arg(long = "loop", value_name = "FORMS", allow_hyphen_values = true)]
        loop_forms: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: i64,
    },
    /// Homology of the r-fold join power of the n-gon.
    Caratheodory {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Refuse complexes with more faces than this.
        #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
        cap: usize,
    },
    /// Cross-check both routes over every valid (d, k).
    Sweep {
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        kmax: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupsMethod {
    Closed,
    Spectral,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComponentsMethod {
    Theorem,
    Oracle,
    Both,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FaceCap { .. } | Error::LoopApproachesDiscriminant { .. } | Error::PathConstruction(_) => {
                Failure::Infeasible(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<(String, bool), Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, true)) => Output { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Output { code: 1, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Infeasible(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cmd: Command) -> Run {
    match cmd {
        Command::Groups { d, k, method, json } => groups(d, k, method, json),
        Command::E1 { d, k, json } => e1(d, k, json),
        Command::Components { d, k, method } => components(d, k, method),
        Command::Classify { k, form } => classify(k, &form),
        Command::Connect { k, f, g, json } => connect(k, &f, &g, json),
        Command::Winding { rotate, form, loop_forms, k } => winding(rotate, form, loop_forms, k),
        Command::Caratheodory { r, n, cap } => caratheodory(r, n, cap),
        Command::Sweep { dmax, kmax } => sweep(dmax, kmax),
    }
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let s: String = n.unsigned_abs().to_string().chars().map(|c| DIGITS[c as usize - '0' as usize]).collect();
    if n < 0 {
        format!("⁻{s}")
    } else {
        s
    }
}

fn subscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let s: String = n.unsigned_abs().to_string().chars().map(|c| DIGITS[c as usize - '0' as usize]).collect();
    if n < 0 {
        format!("₋{s}")
    } else {
        s
    }
}

fn table(out: &mut String, h: &GradedGroup) {
    if h.is_zero() {
        out.push_str("  (all groups vanish)\n");
    }
    for (l, g) in h.iter() {
        let _ = writeln!(out, "  H̃{} = {g}", superscript(l));
    }
}

fn parse_form(s: &str) -> Result<BinaryForm, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn threshold(k: i64) -> Result<u32, Failure> {
    if k < 2 {
        return Err(Failure::Usage(format!("need k ≥ 2, got k = {k}")));
    }
    u32::try_from(k).map_err(|_| Failure::Usage(format!("k = {k} is too large")))
}

fn groups(d: i64, k: i64, method: GroupsMethod, as_json: bool) -> Run {
    let pr = Problem::new(d, k)?;
    let check = resolution::crosscheck(&pr);
    let agree = check.passed();
    if as_json {
        let mut v = json!({ "schema": 1, "d": d, "k": k });
        match method {
            GroupsMethod::Closed => v["groups"] = check.closed.to_json(),
            GroupsMethod::Spectral => v["groups"] = check.spectral.to_json(),
            GroupsMethod::Both => {
                v["closed"] = check.closed.to_json();
                v["spectral"] = check.spectral.to_json();
                v["agree"] = json!(agree);
            }
        }
        let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        return Ok((text, method != GroupsMethod::Both || agree));
    }
    let mut out = String::new();
    let _ = writeln!(out, "reduced cohomology of the complement, d = {d}, k = {k}");
    match method {
        GroupsMethod::Closed => table(&mut out, &check.closed),
        GroupsMethod::Spectral => table(&mut out, &check.spectral),
        GroupsMethod::Both => {
            out.push_str("closed form:\n");
            table(&mut out, &check.closed);
            out.push_str("spectral sequence:\n");
            table(&mut out, &check.spectral);
            let _ = writeln!(out, "euler characteristic: E¹ {}, answer {}", check.e1_euler, check.answer_euler);
            match &check.mismatch {
                None => out.push_str("AGREE\n"),
                Some(Mismatch::Degree { degree, spectral, closed }) => {
                    let _ = writeln!(out, "FAIL: degree {degree}: spectral {spectral}, closed {closed}");
                }
                Some(Mismatch::Euler { e1, answer }) => {
                    let _ = writeln!(out, "FAIL: euler characteristic E¹ {e1} vs answer {answer}");
                }
            }
        }
    }
    Ok((out, method != GroupsMethod::Both || agree))
}

fn e1(d: i64, k: i64, as_json: bool) -> Run {
    let pr = Problem::new(d, k)?;
    let first = resolution::e1_page(&pr);
    let second = resolution::apply_d1(&first)?;
    if as_json {
        let v = json!({ "schema": 1, "e1": first.to_json(), "e2": second.to_json() });
        return Ok((serde_json::to_string_pretty(&v).expect("serializable") + "\n", true));
    }
    let mut out = String::new();
    let _ = writeln!(out, "E¹, d = {d}, k = {k}");
    out.push_str(&first.render_grid());
    let note = if pr.has_d1() { "d₁ kills the ℤ₂ in the last stratum column" } else { "d₁ = 0" };
    let _ = writeln!(out, "\nE² = E^∞ ({note})");
    out.push_str(&second.render_grid());
    Ok((out, true))
}

fn components(d: i64, k: i64, method: ComponentsMethod) -> Run {
    let pr = Problem::new(d, k)?;
    let theorem = 1 + resolution::closed_form_groups(&pr).get(0).free_rank();
    let mut out = String::new();
    match method {
        ComponentsMethod::Theorem => {
            let _ = writeln!(out, "theorem: {theorem}");
            Ok((out, true))
        }
        ComponentsMethod::Oracle => {
            let _ = writeln!(out, "oracle: {}", oracle::component_count(pr.d(), pr.k()));
            Ok((out, true))
        }
        ComponentsMethod::Both => {
            let graph = MoveGraph::build(pr.d(), pr.k());
            let count = graph.component_count();
            let _ = writeln!(out, "theorem: {theorem}");
            let _ = writeln!(out, "oracle: {count}");
            for comp in graph.components() {
                let names: Vec<String> = comp.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {}", names.join(" "));
            }
            out.push_str(if count == theorem { "AGREE\n" } else { "FAIL\n" });
            Ok((out, count == theorem))
        }
    }
}

fn classify(k: i64, form: &str) -> Run {
    let k = threshold(k)?;
    let f = parse_form(form)?;
    let pattern = f.pattern(k)?;
    let id = oracle::classify(&f, k)?;
    Ok((format!("pattern: {pattern}\ncomponent: {id}\n"), true))
}

fn connect(k: i64, f: &str, g: &str, as_json: bool) -> Run {
    let k = threshold(k)?;
    let (f, g) = (parse_form(f)?, parse_form(g)?);
    let c = oracle::connect(&f, &g, k)?;
    let ok = c.is_connected();
    if as_json {
        return Ok((serde_json::to_string_pretty(&c.to_json()).expect("serializable") + "\n", ok));
    }
    let mut out = String::new();
    match c {
        Connection::Connected(path) => {
            let _ = writeln!(out, "connected: {} samples", path.len());
            for s in &path {
                let _ = writeln!(out, "  t = {}  {}  {}", s.t, s.pattern, s.form);
            }
        }
        Connection::Distinct { f_class, g_class } => {
            let _ = writeln!(out, "distinct components: {f_class} and {g_class}");
        }
    }
    Ok((out, ok))
}

fn winding(rotate: bool, form: Option<String>, loop_forms: Option<String>, k: i64) -> Run {
    let k = threshold(k)?;
    let spec = match (rotate, form, loop_forms) {
        (true, Some(f), None) => LoopSpec::Rotate(parse_form(&f)?),
        (false, None, Some(l)) => {
            LoopSpec::Polygon(l.split(';').map(|s| parse_form(s.trim())).collect::<Result<Vec<_>, _>>()?)
        }
        _ => return Err(Failure::Usage("give either --rotate --form F or --loop \"f0;f1;…;f0\"".into())),
    };
    let w = oracle::winding(&spec, k)?;
    Ok((format!("{w}\n"), true))
}

fn caratheodory(r: usize, n: usize, cap: usize) -> Run {
    let rep = caratheodory_check(r, n, cap)?;
    let mut out = String::new();
    let fv: Vec<String> = rep.f_vector.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "join power r = {r} of the {n}-gon, f-vector ({})", fv.join(", "));
    if rep.homology.is_zero() {
        out.push_str("  (all groups vanish)\n");
    }
    for (q, g) in rep.homology.iter() {
        let _ = writeln!(out, "  H̃{} = {g}", subscript(q));
    }
    let verdict = if rep.is_sphere { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "sphere check S{} {verdict}", superscript(2 * r as i64 - 1));
    Ok((out, rep.is_sphere))
}

fn sweep(dmax: u32, kmax: Option<u32>) -> Run {
    if dmax < 2 {
        return Err(Failure::Usage(format!("need dmax ≥ 2, got {dmax}")));
    }
    let kmax = kmax.unwrap_or(dmax).min(dmax);
    if kmax < 2 {
        return Err(Failure::Usage(format!("need kmax ≥ 2, got {kmax}")));
    }
    let checks = resolution::sweep(dmax, kmax);
    let width = dmax.to_string().len();
    let mut out = String::new();
    let _ = write!(out, "{:>width$} |", "d\\k", width = width.max(3));
    for k in 2..=kmax {
        let _ = write!(out, " {k:>width$}");
    }
    out.push('\n');
    let mut it = checks.iter().peekable();
    for d in 2..=dmax {
        let _ = write!(out, "{:>width$} |", d, width = width.max(3));
        for _ in 2..=d.min(kmax) {
            let c = it.next().expect("one check per cell");
            let _ = write!(out, " {:>width$}", if c.passed() { "+" } else { "X" });
        }
        out.push('\n');
    }
    let failures: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    for c in &failures {
        let _ = writeln!(out, "FAIL d = {}, k = {}: {:?}", c.problem.d(), c.problem.k(), c.mismatch);
    }
    let _ = writeln!(out, "{} cases, {} failures", checks.len(), failures.len());
    Ok((out, failures.is_empty()))
}
