//! The `latcomp` command line.
//!
//! [`run`] takes an argument vector and returns a [`CommandResult`]
//! instead of printing or exiting, so the whole surface is testable
//! in-process. Exit codes: 0 ok, 1 a check failed, 2 usage
//! error, 3 invalid input, 4 budget exceeded.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{check_named, enumerate_complementations, Algebra, CompFilters};
use crate::congruence::{
    congruence_lattice, quotient, subdirect_irreducibility, Congruence, Subject,
};
use crate::construct::{
    boolean_algebra, direct_product, free_algebra, free_closure_count, free_rank, horizontal_sum,
    interval_algebra, l_construction, make_mn_prime, Action,
};
use crate::fixtures::{fixture_lattice, fixture_names, lattice_names, resolve_algebra};
use crate::json::{algebra_from_str, algebra_to_json, lattice_from_str, lattice_to_json};
use crate::lattice::Lattice;
use crate::morphism::{all_subuniverses, automorphism_group, find_isomorphism};
use crate::term::{check_formula_with_budget, default_budget, Formula, BUILTIN_NAMES};
use crate::verify::{verify_paper, SCOPES};
use crate::{Error, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Error,
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub report: String,
    pub payload: Value,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(report: String, payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            report,
            payload,
            exit_code: 0,
        }
    }

    fn verdict(passed: bool, report: String, payload: Value) -> Self {
        if passed {
            Self::ok(report, payload)
        } else {
            CommandResult {
                status: Status::Fail,
                report,
                payload,
                exit_code: 1,
            }
        }
    }

    fn error(code: i32, message: String) -> Self {
        let kind = match code {
            2 => "usage",
            4 => "budget",
            _ => "input",
        };
        CommandResult {
            status: Status::Error,
            payload: json!({ "status": "error", "kind": kind, "message": message }),
            report: message,
            exit_code: code,
        }
    }

    /// What the binary prints: the JSON payload or the text report.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.payload).expect("plain data");
            s.push('\n');
            s
        } else if self.report.ends_with('\n') || self.report.is_empty() {
            self.report.clone()
        } else {
            format!("{}\n", self.report)
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "latcomp",
    version,
    about = "Finite lattices with complementation"
)]
struct Cli {
    /// Emit the machine-readable JSON payload instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Evaluation cap for exhaustive formula checks.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Built-in algebra: a fixture name, `m<n>p` or `bool<k>`.
    #[arg(long)]
    algebra: Option<String>,
    /// Algebra JSON document.
    #[arg(long)]
    algebra_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct OtherSource {
    /// Second built-in algebra.
    #[arg(long)]
    other: Option<String>,
    /// Second algebra as a JSON document.
    #[arg(long)]
    other_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct LatticeSource {
    /// Built-in lattice: a fixture lattice, `m<n>` or `bool<k>`.
    #[arg(long)]
    lattice: Option<String>,
    /// Lattice JSON document.
    #[arg(long)]
    lattice_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load an algebra (or lattice) and report whether it is valid.
    Validate {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        lat: LatticeSource,
    },
    /// Class membership plus a profile of every element.
    Report {
        #[command(flatten)]
        src: Source,
    },
    /// Check a named formula or a formula file.
    Check {
        #[command(flatten)]
        src: Source,
        /// Registered formula name.
        #[arg(long)]
        formula: Option<String>,
        /// Formula JSON document.
        #[arg(long)]
        formula_file: Option<PathBuf>,
        /// Parameter for `Mn`, `Tn` and `ATAU`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// All congruences.
    Con {
        #[command(flatten)]
        src: Source,
        /// Congruences of the lattice reduct instead.
        #[arg(long)]
        reduct: bool,
    },
    /// Subdirect irreducibility and the monolith.
    Si {
        #[command(flatten)]
        src: Source,
    },
    /// Quotient by a congruence given as `{"blocks": [...]}`.
    Quotient {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        congruence: String,
    },
    /// Automorphism group.
    Aut {
        #[command(flatten)]
        src: Source,
    },
    /// Isomorphism between two algebras.
    Iso {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        other: OtherSource,
    },
    /// All subuniverses.
    Subuniverses {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Complementations of a lattice.
    EnumComp {
        #[command(flatten)]
        lat: LatticeSource,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        de_morgan: bool,
        #[arg(long)]
        in_w: bool,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Build an algebra.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Free algebra of the variety generated by `M_n'`.
    Free {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Build the generated subalgebra and compare it with the product;
        /// for targets above the carrier cap this counts the closure instead.
        #[arg(long)]
        verify: bool,
    },
    /// List the registry.
    Fixtures,
    /// Run the reproduction suite.
    VerifyPaper {
        /// One of s1..s6 or appendix.
        #[arg(long)]
        scope: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Construction {
    Mn {
        #[arg(long)]
        n: usize,
    },
    Bool {
        #[arg(long)]
        k: usize,
    },
    Product {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        other: OtherSource,
    },
    Hsum {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        other: OtherSource,
    },
    /// `K × 2^k` with the complementation of an action file.
    Action {
        #[command(flatten)]
        lat: LatticeSource,
        #[arg(long)]
        action_file: PathBuf,
    },
    /// The two interval algebras at a neutral element.
    Interval {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        element: String,
    },
}

/// Parses and runs one command.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(text.clone(), json!({ "status": "ok", "help": text }))
                }
                _ => CommandResult::error(2, text),
            };
        }
    };
    let budget = cli.budget.unwrap_or_else(default_budget);
    let go = || match dispatch(&cli.command, budget) {
        Ok(r) => r,
        Err(Failure::Usage(m)) => CommandResult::error(2, m),
        Err(Failure::Lib(e)) => {
            let code = if matches!(e, Error::BudgetExceeded { .. }) {
                4
            } else {
                3
            };
            CommandResult::error(code, e.to_string())
        }
    };
    match cli.jobs {
        Some(0) => CommandResult::error(2, "--jobs must be positive".into()),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(go),
            Err(e) => CommandResult::error(3, e.to_string()),
        },
        None => go(),
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Outcome = std::result::Result<CommandResult, Failure>;

fn load(src: &Source) -> std::result::Result<Algebra, Failure> {
    match (&src.algebra, &src.algebra_file) {
        (Some(name), None) => Ok(resolve_algebra(name)?),
        (None, Some(path)) => Ok(algebra_from_str(&std::fs::read_to_string(path)?)?),
        _ => Err(Failure::Usage(
            "give exactly one of --algebra and --algebra-file".into(),
        )),
    }
}

fn load_other(src: &OtherSource) -> std::result::Result<Algebra, Failure> {
    match (&src.other, &src.other_file) {
        (Some(name), None) => Ok(resolve_algebra(name)?),
        (None, Some(path)) => Ok(algebra_from_str(&std::fs::read_to_string(path)?)?),
        _ => Err(Failure::Usage(
            "give exactly one of --other and --other-file".into(),
        )),
    }
}

/// `m<n>` and `bool<k>` name the plain lattices; anything else is a
/// registry lattice.
fn resolve_lattice(name: &str) -> crate::Result<Lattice> {
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix('m').and_then(|d| d.parse().ok()) {
        return crate::construct::make_mn(n);
    }
    if let Some(k) = lower.strip_prefix("bool").and_then(|d| d.parse().ok()) {
        return crate::construct::boolean_lattice(k);
    }
    fixture_lattice(name)
}

fn load_lattice(src: &LatticeSource) -> std::result::Result<Option<Lattice>, Failure> {
    match (&src.lattice, &src.lattice_file) {
        (Some(name), None) => Ok(Some(resolve_lattice(name)?)),
        (None, Some(path)) => Ok(Some(lattice_from_str(&std::fs::read_to_string(path)?)?)),
        (None, None) => Ok(None),
        _ => Err(Failure::Usage(
            "give at most one of --lattice and --lattice-file".into(),
        )),
    }
}

fn require_lattice(src: &LatticeSource) -> std::result::Result<Lattice, Failure> {
    load_lattice(src)?.ok_or_else(|| Failure::Usage("give --lattice or --lattice-file".into()))
}

fn labels_of(alg: &Algebra, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&e| alg.label(e).to_string()).collect()
}

fn blocks_text(alg: &Algebra, c: &Congruence) -> String {
    c.blocks()
        .iter()
        .map(|b| format!("{{{}}}", labels_of(alg, b).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn algebra_result(what: &str, alg: &Algebra) -> CommandResult {
    let mut report = format!("{what}: {} elements\n", alg.size());
    for e in alg.elements() {
        report.push_str(&format!(
            "  {} ' = {}\n",
            alg.label(e),
            alg.label(alg.comp(e))
        ));
    }
    CommandResult::ok(
        report,
        json!({ "status": "ok", "algebra": algebra_to_json(alg) }),
    )
}

fn dispatch(cmd: &Command, budget: u64) -> Outcome {
    match cmd {
        Command::Validate { src, lat } => {
            if src.algebra.is_none() && src.algebra_file.is_none() {
                let l = load_lattice(lat)?
                    .ok_or_else(|| Failure::Usage("nothing to validate".into()))?;
                return Ok(CommandResult::ok(
                    format!("valid lattice with {} elements", l.size()),
                    json!({ "status": "ok", "kind": "lattice", "size": l.size(), "lattice": lattice_to_json(&l) }),
                ));
            }
            let a = load(src)?;
            Ok(CommandResult::ok(
                format!("valid lattice with complementation, {} elements", a.size()),
                json!({ "status": "ok", "kind": "algebra", "size": a.size(), "algebra": algebra_to_json(&a) }),
            ))
        }
        Command::Report { src } => {
            let a = load(src)?;
            let class = a.classify();
            let prof = a.lattice().profile();
            let mut report = format!(
                "{} elements, length {}, width {}\n{}\n",
                a.size(),
                prof.length,
                prof.width,
                serde_json::to_string(&class).expect("plain data")
            );
            let mut elements = Vec::new();
            for e in a.elements() {
                let p = a.lattice().element_profile(e);
                report.push_str(&format!(
                    "  {:<6} ' = {:<6} neutral={} standard={} distributive={} complements={}\n",
                    a.label(e),
                    a.label(a.comp(e)),
                    p.neutral,
                    p.standard,
                    p.distributive,
                    labels_of(&a, &p.complements).join(",")
                ));
                elements.push(json!({
                    "element": a.label(e),
                    "complement": a.label(a.comp(e)),
                    "distributive": p.distributive,
                    "dually_distributive": p.dually_distributive,
                    "standard": p.standard,
                    "dually_standard": p.dually_standard,
                    "neutral": p.neutral,
                    "complements": labels_of(&a, &p.complements),
                }));
            }
            Ok(CommandResult::ok(
                report,
                json!({
                    "status": "ok",
                    "size": a.size(),
                    "length": prof.length,
                    "width": prof.width,
                    "atoms": labels_of(&a, &prof.atoms),
                    "coatoms": labels_of(&a, &prof.coatoms),
                    "classes": class,
                    "elements": elements,
                }),
            ))
        }
        Command::Check {
            src,
            formula,
            formula_file,
            n,
        } => {
            let a = load(src)?;
            let params: Vec<usize> = n.iter().copied().collect();
            let (label, verdict) = match (formula, formula_file) {
                (Some(name), None) => {
                    if !BUILTIN_NAMES.contains(&name.as_str()) {
                        return Err(Failure::Lib(Error::UnknownFormula(name.clone())));
                    }
                    (name.clone(), check_named(&a, name, &params, budget)?)
                }
                (None, Some(path)) => {
                    let f: Formula = Formula::from_json(&std::fs::read_to_string(path)?)?;
                    (f.to_string(), check_formula_with_budget(&a, &f, budget)?)
                }
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --formula and --formula-file".into(),
                    ))
                }
            };
            Ok(match verdict {
                Verdict::Holds => CommandResult::ok(
                    format!("{label}: holds"),
                    json!({ "status": "ok", "formula": label, "holds": true }),
                ),
                Verdict::Fails(cx) => {
                    let witness: serde_json::Map<String, Value> = cx
                        .assignment
                        .iter()
                        .map(|(v, e)| (v.clone(), Value::String(a.label(*e).to_string())))
                        .collect();
                    CommandResult::verdict(
                        false,
                        format!("{label}: fails at {}", cx.describe(&a)),
                        json!({ "status": "fail", "formula": label, "holds": false, "clause": cx.clause, "witness": witness }),
                    )
                }
            })
        }
        Command::Con { src, reduct } => {
            let a = load(src)?;
            let subject = if *reduct {
                Subject::LatticeReduct
            } else {
                Subject::Algebra
            };
            let con = congruence_lattice(&a, subject)?;
            let mut report = format!("{} congruences\n", con.len());
            for c in &con.congruences {
                report.push_str(&format!("  {}\n", blocks_text(&a, c)));
            }
            let list: Vec<Value> = con.congruences.iter().map(|c| c.to_json()).collect();
            Ok(CommandResult::ok(
                report,
                json!({ "status": "ok", "count": con.len(), "congruences": list }),
            ))
        }
        Command::Si { src } => {
            let a = load(src)?;
            let (si, monolith) = subdirect_irreducibility(&a)?;
            let report = match &monolith {
                Some(m) if si => {
                    format!("subdirectly irreducible; monolith {}", blocks_text(&a, m))
                }
                _ => "not subdirectly irreducible".to_string(),
            };
            Ok(CommandResult::ok(
                report,
                json!({ "status": "ok", "subdirectly_irreducible": si, "monolith": monolith.map(|m| m.to_json()) }),
            ))
        }
        Command::Quotient { src, congruence } => {
            let a = load(src)?;
            let v: Value = serde_json::from_str(congruence).map_err(Error::from)?;
            let theta = Congruence::from_json(&v, a.size())?;
            let q = quotient(&a, &theta)?;
            Ok(algebra_result("quotient", &q))
        }
        Command::Aut { src } => {
            let a = load(src)?;
            let g = automorphism_group(&a);
            let gens: Vec<Value> = g.generators.iter().map(|m| m.to_json()).collect();
            Ok(CommandResult::ok(
                format!(
                    "order {}, {}",
                    g.order(),
                    if g.is_cyclic { "cyclic" } else { "not cyclic" }
                ),
                json!({ "status": "ok", "order": g.order(), "cyclic": g.is_cyclic, "generators": gens }),
            ))
        }
        Command::Iso { src, other } => {
            let (a, b) = (load(src)?, load_other(other)?);
            Ok(match find_isomorphism(&a, &b) {
                Some(iso) => {
                    let pairs: Vec<String> = a
                        .elements()
                        .map(|e| format!("{}->{}", a.label(e), b.label(iso.apply(e))))
                        .collect();
                    CommandResult::ok(
                        format!("isomorphic: {}", pairs.join(" ")),
                        json!({ "status": "ok", "isomorphic": true, "isomorphism": iso.to_json() }),
                    )
                }
                None => CommandResult::verdict(
                    false,
                    "not isomorphic".into(),
                    json!({ "status": "fail", "isomorphic": false }),
                ),
            })
        }
        Command::Subuniverses { src, cap } => {
            let a = load(src)?;
            let subs = all_subuniverses(&a, *cap)?;
            let mut report = format!("{} subuniverses\n", subs.len());
            for s in &subs {
                report.push_str(&format!("  {{{}}}\n", labels_of(&a, s).join(",")));
            }
            Ok(CommandResult::ok(
                report,
                json!({ "status": "ok", "count": subs.len(), "subuniverses": subs }),
            ))
        }
        Command::EnumComp {
            lat,
            injective,
            de_morgan,
            in_w,
            up_to_iso,
        } => {
            let l = require_lattice(lat)?;
            let filters = CompFilters {
                injective_only: *injective,
                de_morgan_only: *de_morgan,
                in_w_only: *in_w,
                up_to_iso: *up_to_iso,
            };
            let found = enumerate_complementations(&l, filters, budget)?;
            let mut report = format!("{} complementations\n", found.len());
            for a in &found {
                let pairs: Vec<String> = a
                    .elements()
                    .map(|e| format!("{}->{}", a.label(e), a.label(a.comp(e))))
                    .collect();
                report.push_str(&format!("  {}\n", pairs.join(" ")));
            }
            let tables: Vec<Vec<usize>> = found.iter().map(|a| a.comp_table()).collect();
            Ok(CommandResult::ok(
                report,
                json!({ "status": "ok", "count": found.len(), "lattice": lattice_to_json(&l), "complements": tables }),
            ))
        }
        Command::Construct { what } => construct(what),
        Command::Free { n, k, verify } => free(*n, *k, *verify),
        Command::Fixtures => {
            let algs = fixture_names();
            let lats = lattice_names();
            Ok(CommandResult::ok(
                format!(
                    "algebras: {}\nlattices: {}\nalso: m<n>p, bool<k> (algebras); m<n>, bool<k> (lattices)",
                    algs.join(" "),
                    lats.join(" ")
                ),
                json!({ "status": "ok", "algebras": algs, "lattices": lats }),
            ))
        }
        Command::VerifyPaper { scope } => {
            if let Some(s) = scope {
                if !SCOPES.contains(&s.as_str()) {
                    return Err(Failure::Usage(format!(
                        "unknown scope {s}; expected one of {}",
                        SCOPES.join(", ")
                    )));
                }
            }
            let report = verify_paper(scope.as_deref())?;
            let mut payload = serde_json::to_value(&report).map_err(Error::from)?;
            payload["status"] = json!(if report.passed { "ok" } else { "fail" });
            Ok(CommandResult::verdict(
                report.passed,
                report.to_text(),
                payload,
            ))
        }
    }
}

fn construct(what: &Construction) -> Outcome {
    let alg = match what {
        Construction::Mn { n } => make_mn_prime(*n)?,
        Construction::Bool { k } => boolean_algebra(*k)?,
        Construction::Product { src, other } => direct_product(&load(src)?, &load_other(other)?)?,
        Construction::Hsum { src, other } => horizontal_sum(&load(src)?, &load_other(other)?)?,
        Construction::Action { lat, action_file } => {
            let k = require_lattice(lat)?;
            let v: Value = serde_json::from_str(&std::fs::read_to_string(action_file)?)
                .map_err(Error::from)?;
            l_construction(&k, &Action::from_json(&v)?)?
        }
        Construction::Interval { src, element } => {
            let a = load(src)?;
            let e = a
                .index_of(element)
                .ok_or_else(|| Failure::Lib(Error::Input(format!("unknown element {element}"))))?;
            let (lower, upper) = interval_algebra(&a, e)?;
            let report = format!(
                "[0,{element}]: {} elements; [{element},1]: {} elements",
                lower.size(),
                upper.size()
            );
            return Ok(CommandResult::ok(
                report,
                json!({ "status": "ok", "lower": algebra_to_json(&lower), "upper": algebra_to_json(&upper) }),
            ));
        }
    };
    Ok(algebra_result("constructed", &alg))
}

fn free(n: usize, k: usize, verify: bool) -> Outcome {
    let q = free_rank(n, k)?;
    let target = (n as u128 + 2)
        .saturating_pow(q as u32)
        .saturating_mul(1u128 << (1u32 << k.min(6)));
    let mut payload =
        json!({ "status": "ok", "n": n, "k": k, "q": q, "target_size": target.to_string() });
    let mut report = format!(
        "n={n} k={k}: q = {q}, target (M_{n}')^{q} × 2^{} has {target} elements",
        1u64 << k
    );
    if !verify {
        return Ok(CommandResult::ok(report, payload));
    }
    if target <= crate::construct::MAX_CARRIER as u128 {
        let f = free_algebra(n, k)?;
        let mut product = boolean_algebra(1 << k)?;
        for _ in 0..q {
            product = direct_product(&make_mn_prime(n)?, &product)?;
        }
        let iso = find_isomorphism(&f.algebra, &product).is_some();
        report.push_str(&format!(
            "\ngenerated subalgebra has {} elements; whole product: {}; isomorphic to the product: {iso}",
            f.algebra.size(),
            f.verified_shape
        ));
        payload["size"] = json!(f.algebra.size());
        payload["verified_shape"] = json!(f.verified_shape);
        payload["isomorphic_to_product"] = json!(iso);
        payload["orbit_sizes"] = json!(f.orbit_sizes);
        let ok = f.verified_shape && iso;
        payload["status"] = json!(if ok { "ok" } else { "fail" });
        return Ok(CommandResult::verdict(ok, report, payload));
    }
    let fc = free_closure_count(n, k, 2_000_000)?;
    let ok = fc.reached as u128 == target;
    report.push_str(&format!("\nclosure reached {} elements", fc.reached));
    payload["size"] = json!(fc.reached);
    payload["verified_shape"] = json!(ok);
    payload["status"] = json!(if ok { "ok" } else { "fail" });
    Ok(CommandResult::verdict(ok, report, payload))
}
