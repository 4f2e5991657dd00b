//! Argument parsing, dispatch and serialization for the `helixlab` binary.
//!
//! [`dispatch`] never prints or exits; it returns a [`CommandResult`] so the
//! whole front end can be driven from tests.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use helixlab_core::helix::{
    Certificate, CertificateStatus, Eigenvalues, GrowthReport, WindowReport,
};
use helixlab_core::hilbert::{CheckOutcome, CheckStatus, HilbertTriple};
use helixlab_core::seeds::{Case2Report, MutationStep, SeedConstruction};
use helixlab_core::surd::QuadSurd;
use helixlab_core::{
    case2_infeasible, certify_generation, classify_growth, construct_markov_seed, deltas_from_seed, descent_path,
    enumerate_markov, euler_chi, family_equigen, family_noneq, hilbert_series, mutate_seed, reduce_to_lines,
    scan_window, verify_hilbert, Algebra, DeltaTriple, Helix, HelixError, KClass, MarkovTriple, Seed, SolutionSet,
    Vec3,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    S,
    End,
}

#[derive(Parser, Debug)]
#[command(name = "helixlab", version, about = "Exact numerics of three-periodic elliptic helices")]
pub struct Cli {
    /// Output format; CSV prints the command's table, or key/value rows.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DeltaSource {
    /// Δ-invariants, e.g. `5,5,5`.
    #[arg(long)]
    pub deltas: Option<String>,
    /// A seed whose Δ's are used, e.g. `-5/2,0/1,5/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
}

#[derive(Args, Debug)]
pub struct SeedArg {
    /// Three classes `d/r`, e.g. `-5/2,0/1,5/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: String,
}

#[derive(Args, Debug)]
pub struct TripleArg {
    /// An ordered Markov triple, e.g. `1,2,5`.
    #[arg(long)]
    pub triple: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Growth type of a Δ triple.
    Classify(DeltaSource),
    /// Δ's, q, growth and certificate of a seed.
    SeedInfo(SeedArg),
    /// Classes of the helix over an index range.
    Expand {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        to: i64,
    },
    /// Exact generation certificate.
    Certify(SeedArg),
    /// Finite scan of the generation conditions (a falsifier only).
    Scan {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 16)]
        depth: u32,
    },
    /// Hilbert series of End or S.
    Hilbert {
        #[command(flatten)]
        source: DeltaSource,
        #[arg(long, value_enum, default_value_t = AlgebraArg::S)]
        algebra: AlgebraArg,
        #[arg(long, env = "HELIXLAB_ORDER", default_value_t = 32)]
        order: usize,
    },
    /// Cross-checks of the Hilbert series; a seed enables the χ check.
    VerifyHilbert {
        #[command(flatten)]
        source: DeltaSource,
        #[arg(long, env = "HELIXLAB_ORDER", default_value_t = 32)]
        order: usize,
    },
    /// Markov triples.
    #[command(subcommand)]
    Markov(MarkovCommand),
    /// Markov-type seed with the given rank triple.
    Construct(TripleArg),
    /// Right mutation of every third member.
    Mutate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        residue: u8,
    },
    /// Mutations from a Markov-type seed down to line bundles.
    Reduce(SeedArg),
    /// The two exponential example families.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Shows that ranks 3ρ never give a seed.
    Case2Check(TripleArg),
}

#[derive(Subcommand, Debug)]
pub enum MarkovCommand {
    /// All Markov triples with entries up to `--max`.
    Tree {
        #[arg(long)]
        max: BigInt,
    },
    /// Descent of a triple to (1,1,1).
    Descend(TripleArg),
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// ((−r0−r2−a)/r0, 0/1, (r0+r2+a)/r2).
    Equigen {
        #[arg(long)]
        r0: BigInt,
        #[arg(long)]
        r2: BigInt,
        #[arg(long)]
        a: BigInt,
    },
    /// ((−d−a−1)/(d+a−r), 0/1, d/r).
    Noneq {
        #[arg(long, allow_negative_numbers = true)]
        d: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        r: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        a: BigInt,
    },
}

/// Exit code plus what should go to stdout and stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub code: i32,
    pub json: Option<Value>,
    pub csv: Option<String>,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn usage(text: String) -> Self {
        CommandResult {
            code: EXIT_USAGE,
            json: None,
            csv: None,
            stdout: String::new(),
            stderr: text,
        }
    }
}

/// What a command produced before formatting.
struct Output {
    input: Value,
    result: Value,
    verification: Option<Value>,
    warnings: Vec<String>,
    table: Option<Table>,
    failed: bool,
}

impl Output {
    fn new(input: Value, result: Value) -> Self {
        Output {
            input,
            result,
            verification: None,
            warnings: Vec::new(),
            table: None,
            failed: false,
        }
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn s(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn vec3(v: &Vec3) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn deltas_json(d: &DeltaTriple) -> Value {
    Value::Array(d.as_array().iter().map(s).collect())
}

fn seed_str(seed: &Seed) -> Value {
    Value::String(seed.0.iter().map(KClass::to_string).collect::<Vec<_>>().join(","))
}

fn triple_json(t: &MarkovTriple) -> Value {
    Value::Array(t.as_array().iter().map(s).collect())
}

fn surd(q: &Option<QuadSurd>) -> Value {
    q.as_ref().map_or(Value::Null, |q| Value::String(q.to_string()))
}

fn parse_seed(text: &str) -> Result<Seed, HelixError> {
    text.parse()
}

fn parse_source(src: &DeltaSource) -> Result<(DeltaTriple, Option<Seed>, Value), HelixError> {
    match (&src.deltas, &src.seed) {
        (Some(d), _) => {
            let deltas: DeltaTriple = d.parse()?;
            let input = json!({ "deltas": deltas_json(&deltas) });
            Ok((deltas, None, input))
        }
        (None, Some(text)) => {
            let seed = parse_seed(text)?;
            let deltas = deltas_from_seed(&seed)?;
            let input = json!({ "seed": seed_str(&seed), "deltas": deltas_json(&deltas) });
            Ok((deltas, Some(seed), input))
        }
        (None, None) => Err(HelixError::Parameter("one of --deltas or --seed is required".into())),
    }
}

fn growth_json(g: &GrowthReport) -> Value {
    let mut m = Map::new();
    m.insert("q".into(), s(&g.q));
    m.insert("class".into(), Value::String(g.class.to_string()));
    m.insert("p".into(), s(&g.p));
    let eig = match &g.eigenvalues {
        Eigenvalues::AllOne => json!({ "kind": "all-one", "description": "all eigenvalues 1" }),
        Eigenvalues::RootsOfUnity { case, description } => json!({
            "kind": "roots-of-unity",
            "case": case.to_string(),
            "description": description,
        }),
        Eigenvalues::Real { p, disc } => json!({
            "kind": "real",
            "lambda_plus": format!("({p} + √{disc})/2"),
            "lambda_minus": format!("({p} - √{disc})/2"),
            "p": s(p),
            "disc": s(disc),
            "lambda_plus_approx": g.lambda_plus_approx(),
        }),
    };
    m.insert("eigenvalues".into(), eig);
    Value::Object(m)
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "status": c.status.to_string(),
        "witness": c.witness.as_ref().map(|w| w.to_string()),
        "lower": surd(&c.lower),
        "upper": surd(&c.upper),
        "inequalities": c.inequalities.iter().map(|q| json!({
            "description": q.description,
            "margin": q.margin.to_string(),
            "holds": q.holds,
        })).collect::<Vec<_>>(),
        "notes": c.notes,
    })
}

fn window_json(rep: &WindowReport) -> Value {
    json!({
        "depth": rep.depth,
        "clean": rep.is_clean(),
        "violation": rep.violation.as_ref().map(|v| json!({
            "index": v.index,
            "reason": v.reason.to_string(),
            "detail": v.detail,
        })),
        "rows": rep.rows.iter().map(|r| json!({
            "index": r.index,
            "degree": s(&r.class.degree),
            "rank": s(&r.class.rank),
            "primed_rank": s(&r.primed_rank),
        })).collect::<Vec<_>>(),
    })
}

fn series_json(h: &HilbertTriple) -> Value {
    Value::Array(
        h.series
            .iter()
            .map(|x| Value::Array(x.coeffs().iter().map(s).collect()))
            .collect(),
    )
}

fn series_table(h: &HilbertTriple) -> Table {
    let n = h.series[0].order();
    Table {
        header: vec!["power", "h0", "h1", "h2"],
        rows: (0..n)
            .map(|i| {
                let mut row = vec![i.to_string()];
                row.extend(h.series.iter().map(|x| x.coeff(i).to_string()));
                row
            })
            .collect(),
    }
}

fn check_json(c: &CheckOutcome) -> Value {
    json!({
        "name": c.name,
        "status": c.status.to_string(),
        "discrepancy": c.discrepancy.as_ref().map(|d| json!({
            "series": d.series,
            "coefficient": d.coefficient,
            "expected": s(&d.expected),
            "actual": s(&d.actual),
        })),
        "note": c.note,
    })
}

fn step_json(step: &MutationStep) -> Value {
    json!({
        "residue": step.residue,
        "old_seed": seed_str(&step.old_seed),
        "new_seed": seed_str(&step.new_seed),
        "old_ranks": vec3(&step.old_ranks),
        "new_ranks": vec3(&step.new_ranks),
    })
}

fn construction_verification(c: &SeedConstruction) -> Value {
    let e = &c.seed.0;
    let chi01 = euler_chi(&e[0], &e[1]);
    let chi12 = euler_chi(&e[1], &e[2]);
    let chi02 = euler_chi(&e[0], &e[2]);
    let cf = &c.closed_form;
    json!({
        "chi": { "E0,E1": s(&chi01), "E1,E2": s(&chi12), "E0,E2": s(&chi02) },
        "delta_vec_is_3r": c.deltas.delta_vec() == c.seed.ranks().scale(&BigInt::from(3)),
        "markov_type": c.seed.is_markov_type(),
        "closed_form": {
            "bezout": { "a": s(&cf.a), "b": s(&cf.b) },
            "mu0": vec3(&cf.mu0),
            "mu1": vec3(&cf.mu1),
            "mu2": vec3(&cf.mu2),
            "a_mu2_plus_b_mu0": vec3(&cf.degrees),
            "sign": cf.sign.to_string(),
            "shift": cf.shift.as_ref().map(s),
            "b_mu0_minus_a_mu2": vec3(&cf.corrected),
            "corrected_shift": cf.corrected_shift.as_ref().map(s),
        },
    })
}

fn case2_json(rep: &Case2Report) -> Value {
    let solutions = match &rep.solutions {
        SolutionSet::Feasible { particular, generator } => json!({
            "feasible": true,
            "particular": vec3(particular),
            "generator": vec3(generator),
        }),
        SolutionSet::Infeasible(why) => json!({ "feasible": false, "obstruction": why.to_string() }),
    };
    json!({
        "ranks": vec3(&rep.ranks),
        "solutions": solutions,
        "witnesses": rep.witnesses.iter().map(|w| json!({
            "k": s(&w.k),
            "degrees": vec3(&w.degrees),
            "index": w.index,
            "gcd": s(&w.gcd),
        })).collect::<Vec<_>>(),
        "infeasible_as_seed": rep.infeasible_as_seed,
    })
}

fn run(cmd: &Command) -> Result<Output, HelixError> {
    match cmd {
        Command::Classify(src) => {
            let (deltas, _, input) = parse_source(src)?;
            Ok(Output::new(input, growth_json(&classify_growth(&deltas))))
        }
        Command::SeedInfo(SeedArg { seed }) => {
            let seed = parse_seed(seed)?;
            let mut warnings = Vec::new();
            if let Err(e) = seed.check_structure() {
                warnings.push(e.to_string());
            }
            let deltas = deltas_from_seed(&seed)?;
            let cert = certify_generation(&seed)?;
            let result = json!({
                "deltas": deltas_json(&deltas),
                "delta02": s(&deltas.delta02()),
                "equigenerated": deltas.is_equigenerated(),
                "markov_type": seed.is_markov_type(),
                "growth": growth_json(&classify_growth(&deltas)),
                "certificate": certificate_json(&cert),
            });
            let mut out = Output::new(json!({ "seed": seed_str(&seed) }), result);
            out.warnings = warnings;
            Ok(out)
        }
        Command::Expand { seed, from, to } => {
            let seed = parse_seed(&seed.seed)?;
            if from > to {
                return Err(HelixError::Parameter(format!("--from {from} exceeds --to {to}")));
            }
            let helix = Helix::new(&seed);
            let rows: Vec<(i64, KClass, KClass)> = (*from..=*to)
                .map(|i| (i, helix.class_at(i), helix.intermediate_class(i)))
                .collect();
            let result = json!({
                "classes": rows.iter().map(|(i, c, p)| json!({
                    "index": i,
                    "degree": s(&c.degree),
                    "rank": s(&c.rank),
                    "primed_rank": s(&p.rank),
                })).collect::<Vec<_>>(),
            });
            let mut out = Output::new(json!({ "seed": seed_str(&seed), "from": from, "to": to }), result);
            out.table = Some(Table {
                header: vec!["index", "degree", "rank", "primed_rank"],
                rows: rows
                    .iter()
                    .map(|(i, c, p)| vec![i.to_string(), c.degree.to_string(), c.rank.to_string(), p.rank.to_string()])
                    .collect(),
            });
            Ok(out)
        }
        Command::Certify(SeedArg { seed }) => {
            let seed = parse_seed(seed)?;
            let cert = certify_generation(&seed)?;
            let mut out = Output::new(json!({ "seed": seed_str(&seed) }), certificate_json(&cert));
            if cert.status != CertificateStatus::Certified {
                out.warnings.push(format!("status {}: the criterion is sufficient only", cert.status));
            }
            Ok(out)
        }
        Command::Scan { seed, depth } => {
            let seed = parse_seed(&seed.seed)?;
            let rep = scan_window(&seed, *depth);
            let mut out = Output::new(json!({ "seed": seed_str(&seed), "depth": depth }), window_json(&rep));
            out.warnings
                .push("a clean window does not prove generation; use certify or a Markov seed".into());
            out.failed = !rep.is_clean();
            out.table = Some(Table {
                header: vec!["index", "degree", "rank", "primed_rank"],
                rows: rep
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.index.to_string(),
                            r.class.degree.to_string(),
                            r.class.rank.to_string(),
                            r.primed_rank.to_string(),
                        ]
                    })
                    .collect(),
            });
            Ok(out)
        }
        Command::Hilbert { source, algebra, order } => {
            let (deltas, _, mut input) = parse_source(source)?;
            let which = match algebra {
                AlgebraArg::S => Algebra::S,
                AlgebraArg::End => Algebra::End,
            };
            let h = hilbert_series(&deltas, which, *order)?;
            input["algebra"] = Value::String(which.to_string());
            input["order"] = json!(order);
            let mut out = Output::new(input, json!({ "series": series_json(&h) }));
            out.table = Some(series_table(&h));
            Ok(out)
        }
        Command::VerifyHilbert { source, order } => {
            let (deltas, seed, mut input) = parse_source(source)?;
            input["order"] = json!(order);
            let v = verify_hilbert(&deltas, *order, seed.as_ref())?;
            let result = json!({
                "passed": v.passed(),
                "s": series_json(&v.s),
                "end": series_json(&v.end),
            });
            let mut out = Output::new(input, result);
            out.verification = Some(json!({ "checks": v.checks.iter().map(check_json).collect::<Vec<_>>() }));
            out.failed = !v.passed();
            if v.checks.iter().any(|c| c.status == CheckStatus::Skipped) {
                out.warnings.push("χ check skipped: pass --seed to enable it".into());
            }
            Ok(out)
        }
        Command::Markov(MarkovCommand::Tree { max }) => {
            let triples = enumerate_markov(max)?;
            let mut out = Output::new(
                json!({ "max": s(max) }),
                json!({
                    "count": triples.len(),
                    "triples": triples.iter().map(triple_json).collect::<Vec<_>>(),
                }),
            );
            out.table = Some(Table {
                header: vec!["m0", "m1", "m2"],
                rows: triples
                    .iter()
                    .map(|t| t.as_array().iter().map(ToString::to_string).collect())
                    .collect(),
            });
            Ok(out)
        }
        Command::Markov(MarkovCommand::Descend(TripleArg { triple })) => {
            let t: MarkovTriple = triple.parse()?;
            let path = descent_path(&t);
            let mut out = Output::new(
                json!({ "triple": triple_json(&t) }),
                json!({
                    "length": path.len(),
                    "steps": path.steps.iter().map(|st| json!({
                        "slot": st.slot,
                        "before": triple_json(&st.before),
                        "after": triple_json(&st.after),
                    })).collect::<Vec<_>>(),
                    "terminal": triple_json(&path.terminal),
                }),
            );
            out.table = Some(Table {
                header: vec!["step", "slot", "before", "after"],
                rows: path
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, st)| vec![(i + 1).to_string(), st.slot.to_string(), st.before.to_string(), st.after.to_string()])
                    .collect(),
            });
            Ok(out)
        }
        Command::Construct(TripleArg { triple }) => {
            let t: MarkovTriple = triple.parse()?;
            let c = construct_markov_seed(&t)?;
            let mut out = Output::new(
                json!({ "triple": triple_json(&t) }),
                json!({
                    "seed": seed_str(&c.seed),
                    "deltas": deltas_json(&c.deltas),
                    "degrees": vec3(&c.seed.degrees()),
                    "generator": vec3(&c.generator),
                }),
            );
            out.verification = Some(construction_verification(&c));
            Ok(out)
        }
        Command::Mutate { seed, residue } => {
            let seed = parse_seed(&seed.seed)?;
            let step = mutate_seed(&seed, usize::from(*residue))?;
            let new_deltas = deltas_from_seed(&step.new_seed)?;
            let mut result = step_json(&step);
            result["new_deltas"] = deltas_json(&new_deltas);
            Ok(Output::new(json!({ "seed": seed_str(&seed), "residue": residue }), result))
        }
        Command::Reduce(SeedArg { seed }) => {
            let seed = parse_seed(seed)?;
            let (steps, fin) = reduce_to_lines(&seed)?;
            let mut out = Output::new(
                json!({ "seed": seed_str(&seed) }),
                json!({
                    "length": steps.len(),
                    "steps": steps.iter().map(step_json).collect::<Vec<_>>(),
                    "final_seed": seed_str(&fin),
                    "final_deltas": deltas_json(&deltas_from_seed(&fin)?),
                }),
            );
            out.table = Some(Table {
                header: vec!["step", "residue", "old_seed", "new_seed", "new_ranks"],
                rows: steps
                    .iter()
                    .enumerate()
                    .map(|(i, st)| {
                        vec![
                            (i + 1).to_string(),
                            st.residue.to_string(),
                            st.old_seed.to_string(),
                            st.new_seed.to_string(),
                            st.new_ranks.to_string(),
                        ]
                    })
                    .collect(),
            });
            Ok(out)
        }
        Command::Family(fam) => {
            let (input, seed) = match fam {
                FamilyCommand::Equigen { r0, r2, a } => (
                    json!({ "family": "equigen", "r0": s(r0), "r2": s(r2), "a": s(a) }),
                    family_equigen(r0, r2, a)?,
                ),
                FamilyCommand::Noneq { d, r, a } => (
                    json!({ "family": "noneq", "d": s(d), "r": s(r), "a": s(a) }),
                    family_noneq(d, r, a)?,
                ),
            };
            let deltas = deltas_from_seed(&seed)?;
            let cert = certify_generation(&seed)?;
            let mut out = Output::new(
                input,
                json!({
                    "seed": seed_str(&seed),
                    "deltas": deltas_json(&deltas),
                    "growth": growth_json(&classify_growth(&deltas)),
                }),
            );
            out.failed = cert.status != CertificateStatus::Certified;
            out.verification = Some(json!({ "certificate": certificate_json(&cert) }));
            Ok(out)
        }
        Command::Case2Check(TripleArg { triple }) => {
            let t: MarkovTriple = triple.parse()?;
            let rep = case2_infeasible(&t)?;
            let mut out = Output::new(json!({ "rho": triple_json(&t) }), case2_json(&rep));
            out.failed = !rep.infeasible_as_seed;
            Ok(out)
        }
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(t) => rows.push(vec![prefix.to_string(), t.clone()]),
        Value::Null => rows.push(vec![prefix.to_string(), String::new()]),
        other => rows.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn write_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    code: EXIT_OK,
                    json: None,
                    csv: None,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandResult::usage(text),
            };
        }
    };

    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            let code = match e {
                HelixError::Internal(_) => EXIT_VERIFICATION,
                _ => EXIT_USAGE,
            };
            let json = json!({ "error": e.to_string() });
            return CommandResult {
                code,
                json: Some(json),
                csv: None,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            };
        }
    };

    let mut doc = Map::new();
    doc.insert("input".into(), out.input);
    doc.insert("result".into(), out.result.clone());
    if let Some(v) = out.verification.clone() {
        doc.insert("verification".into(), v);
    }
    doc.insert("warnings".into(), json!(out.warnings));
    let doc = Value::Object(doc);

    let csv = match &out.table {
        Some(t) => write_csv(&t.header, &t.rows),
        None => {
            let mut rows = Vec::new();
            flatten("", &out.result, &mut rows);
            if let Some(v) = &out.verification {
                flatten("verification", v, &mut rows);
            }
            write_csv(&["key", "value"], &rows)
        }
    };

    let stdout = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")),
        Format::Csv => csv.clone(),
    };
    CommandResult {
        code: if out.failed { EXIT_VERIFICATION } else { EXIT_OK },
        json: Some(doc),
        csv: Some(csv),
        stdout,
        stderr: String::new(),
    }
}
