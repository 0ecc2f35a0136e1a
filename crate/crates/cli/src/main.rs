use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopkit::construction;
use loopkit::group::mult_groups;
use loopkit::identity::{check_identity, Law, Mode, DEFAULT_SAMPLES};
use loopkit::isotopy::{isotope_at, principal_isotope, Side};
use loopkit::report::{Record, Report};
use loopkit::subloop::{self, SubloopSet};
use loopkit::suite::{minverse_report, SuiteOptions};
use loopkit::{calculus, theorems, verify, CayleyTable, Elem, LoopError};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "loopkit", version, about = "Finite loops given by Cayley tables")]
struct Cli {
    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include per-check timings in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the loop axioms.
    Validate {
        file: PathBuf,
        /// Move a nonzero identity element to index 0.
        #[arg(long)]
        relabel: bool,
        /// Write the (relabelled) table here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an identity on all tuples or on seeded samples.
    Check {
        file: PathBuf,
        #[arg(long)]
        law: Law,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Nuclei, centre, associator subloop and multiplication groups.
    Structure {
        file: PathBuf,
        #[arg(long)]
        nuclei: bool,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        associator_subloop: bool,
        /// The special subloops defined through the translation groups.
        #[arg(long)]
        special: bool,
        #[arg(long)]
        groups: bool,
        /// Also write the result as JSON to this file.
        #[arg(long = "json-out", value_name = "OUT")]
        json_out: Option<PathBuf>,
    },
    /// The left or right isotope at an element, or a principal isotope.
    Isotope {
        file: PathBuf,
        #[arg(long, required_unless_present = "principal")]
        at: Option<Elem>,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// `a,b` for the principal isotope `(x/b)(a\y)`.
        #[arg(long, conflicts_with = "at", value_parser = parse_pair)]
        principal: Option<(Elem, Elem)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The quotient by a normal subloop.
    Quotient {
        file: PathBuf,
        /// Comma-separated members; the subloop they generate is used.
        #[arg(long, value_delimiter = ',', required = true)]
        subloop: Vec<Elem>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the constructed Buchsteiner loop of order 1024 or 64.
    PaperExample {
        #[arg(long, value_parser = ["1024", "64"])]
        order: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one of the verification suites on a table.
    Suite {
        file: PathBuf,
        /// theorems, calculus or minverse:<m>.
        #[arg(long, value_parser = parse_kind)]
        kind: SuiteKind,
        /// Exhaustive up to 2^24 tuples, sampled beyond.
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Build both constructed loops and run every check on them.
    VerifyPaper {
        /// Sample the Buchsteiner law on Q1024 and thin out its isotope checks.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug)]
enum SuiteKind {
    Theorems,
    Calculus,
    MInverse(i64),
}

fn parse_kind(s: &str) -> Result<SuiteKind, String> {
    match s {
        "theorems" => Ok(SuiteKind::Theorems),
        "calculus" => Ok(SuiteKind::Calculus),
        _ => match s.strip_prefix("minverse:").map(str::parse) {
            Some(Ok(m)) => Ok(SuiteKind::MInverse(m)),
            _ => Err(format!("unknown suite `{s}`; expected theorems, calculus or minverse:<m>")),
        },
    }
}

fn parse_pair(s: &str) -> Result<(Elem, Elem), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let p = |v: &str| v.trim().parse::<Elem>().map_err(|_| format!("`{v}` is not an element index"));
    Ok((p(a)?, p(b)?))
}

/// Exit status 2 with a message.
struct Usage(String);

impl From<io::Error> for Usage {
    fn from(e: io::Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<LoopError> for Usage {
    fn from(e: LoopError) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Usage> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<CayleyTable, Usage> {
    let text = read_text(path)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let t = CayleyTable::parse(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Ok(if t.label().is_empty() { t.with_label(label) } else { t })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Usage> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(cli: &Cli, r: &Report) {
    if cli.json {
        println!("{}", r.to_json(cli.timings));
    } else {
        let mut r = r.clone();
        if !cli.timings {
            r.records.iter_mut().for_each(|x| x.timing_ms = None);
        }
        print!("{}", r.render_text());
        if cli.timings {
            for x in &r.records {
                println!("{:>8} ms  {}", x.timing_ms.unwrap_or(0), x.id);
            }
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { file, relabel, output } => validate(cli, file, *relabel, output.as_deref()),
        Command::Check { file, law, sweep } => check(cli, file, *law, sweep),
        Command::Structure { file, nuclei, center, associator_subloop, special, groups, json_out } => {
            let any = *nuclei || *center || *associator_subloop || *special || *groups;
            let sel = Selection {
                nuclei: *nuclei || !any,
                center: *center || !any,
                associator_subloop: *associator_subloop,
                special: *special,
                groups: *groups,
            };
            structure(cli, file, sel, json_out.as_deref())
        }
        Command::Isotope { file, at, side, principal, output } => {
            let t = load(file)?;
            let iso = match (principal, at) {
                (Some((a, b)), _) => principal_isotope(&t, *a, *b)?,
                (None, Some(e)) => {
                    let side = match side {
                        SideArg::Left => Side::Left,
                        SideArg::Right => Side::Right,
                    };
                    isotope_at(&t, side, *e)?
                }
                (None, None) => return Err(Usage("--at or --principal is required".into())),
            };
            let mut text = String::new();
            if let Some(sigma) = &iso.relabel {
                let images: Vec<String> = sigma.images().map(|v| v.to_string()).collect();
                text.push_str(&format!("# relabelling old -> new: {}\n", images.join(" ")));
            }
            text.push_str(&iso.to_text());
            emit(&text, output.as_deref())?;
            Ok(true)
        }
        Command::Quotient { file, subloop: gens, output } => {
            let t = load(file)?;
            let s = subloop::generate(&t, gens)?;
            if !subloop::is_normal(&t, &s) {
                eprintln!("subloop generated by {gens:?} (order {}) is not normal", s.len());
                return Ok(false);
            }
            let q = subloop::quotient(&t, &s)?;
            let mut text = format!("# quotient of {} by a normal subloop of order {}\n", t.label(), s.len());
            text.push_str("# classes numbered by their least member\n");
            text.push_str(&q.table.to_text());
            emit(&text, output.as_deref())?;
            Ok(true)
        }
        Command::PaperExample { order, output } => {
            let start = Instant::now();
            let q = construction::build_q1024();
            let (t, header) = if order == "1024" {
                (q, Q1024_HEADER.to_string())
            } else {
                let t = construction::build_q64_from(&q)?.table;
                (t, format!("{Q1024_HEADER}{Q64_HEADER}"))
            };
            emit(&format!("{header}{}", t.to_text()), output.as_deref())?;
            if cli.timings {
                eprintln!("built in {} ms", start.elapsed().as_millis());
            }
            Ok(true)
        }
        Command::Suite { file, kind, fast, seed } => {
            let t = load(file)?;
            let opts = if *fast { SuiteOptions::fast() } else { SuiteOptions::default() }.with_seed(*seed);
            let r = match kind {
                SuiteKind::Theorems => theorems::theorem_suite(&t, &opts),
                SuiteKind::Calculus => calculus::calculus_suite(&t, &opts),
                SuiteKind::MInverse(m) => minverse_report(&t, *m),
            };
            let r = match r {
                Ok(r) => r,
                Err(e @ (LoopError::NotBuchsteiner(_) | LoopError::NotNormal | LoopError::AssociatorsNotNuclear)) => {
                    let mut r = Report::new(t.label());
                    r.push(Record::run("precondition", "suite precondition", Mode::Exhaustive, || {
                        loopkit::report::Outcome::fail(e.to_string())
                    }));
                    r
                }
                Err(e) => return Err(e.into()),
            };
            print_report(cli, &r);
            Ok(r.passed())
        }
        Command::VerifyPaper { fast } => {
            let r = verify::verify_all(*fast)?;
            print_report(cli, &r);
            Ok(r.passed())
        }
    }
}

const Q1024_HEADER: &str = "\
# Buchsteiner loop of order 1024 on B x A.
# B = <e1, e2 | e1^4 = e2^4 = 1>; x = e1^(a1 + 2 a1') e2^(a2 + 2 a2') has bIndex = a1 + 2 a1' + 4 a2 + 8 a2'.
# A = F_2^6 with basis bits 0..5 = c111 c222 c112 c121 c122 c212 (aIndex = bit mask).
# The element (x, a) has index 64 * bIndex + aIndex; (1, 0) is 0.
";

const Q64_HEADER: &str = "\
# Order-64 quotient by K = {1, e2^2} x span{c222, c122, c212}.
# Classes of the order-1024 loop are numbered by their least member.
";

fn validate(cli: &Cli, file: &Path, relabel: bool, output: Option<&Path>) -> Outcome {
    let text = read_text(file)?;
    let rows = loopkit::table::parse_rows(&text).map_err(|e| Usage(format!("{}: {e}", file.display())))?;
    let result = if relabel {
        CayleyTable::from_rows_relabel(&rows).map(|(t, s)| (t, Some(s)))
    } else {
        CayleyTable::from_rows(&rows).map(|t| (t, None))
    };
    match result {
        Ok((t, sigma)) => {
            if cli.json {
                #[derive(Serialize)]
                struct V {
                    valid: bool,
                    order: usize,
                    relabelling: Option<Vec<usize>>,
                }
                let v = V { valid: true, order: t.order(), relabelling: sigma.as_ref().map(|s| s.images().collect()) };
                println!("{}", serde_json::to_string_pretty(&v).expect("serialises"));
            } else {
                println!("valid loop of order {}", t.order());
                if let Some(s) = &sigma {
                    if !s.is_identity() {
                        let images: Vec<String> = s.images().map(|v| v.to_string()).collect();
                        println!("relabelling old -> new: {}", images.join(" "));
                    }
                }
            }
            if let Some(p) = output {
                emit(&t.to_text(), Some(p))?;
            }
            Ok(true)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "valid": false, "error": e.to_string() }));
            } else {
                println!("invalid: {e}");
            }
            Ok(false)
        }
    }
}

fn check(cli: &Cli, file: &Path, law: Law, a: &SweepArgs) -> Outcome {
    let t = load(file)?;
    let n = t.order();
    let arity = law.arity();
    let mode = match a.mode {
        Some(ModeArg::Exhaustive) => Mode::Exhaustive,
        Some(ModeArg::Sampled) => Mode::Sampled { samples: a.samples.unwrap_or(DEFAULT_SAMPLES), seed: a.seed.unwrap_or(1) },
        None => Mode::auto(n, arity, a.seed, a.samples)
            .map_err(|_| Usage(format!("{n}^{arity} tuples exceed the exhaustive limit; pass --seed or --mode sampled")))?,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.threads.unwrap_or(0)).build().map_err(|e| Usage(e.to_string()))?;
    let start = Instant::now();
    let res = pool.install(|| check_identity(&t, law, mode));
    let ms = start.elapsed().as_millis() as u64;
    let mut r = Report::new(t.label());
    let mut rec = Record::from_check(&format!("law.{law}"), &format!("{law} holds"), &res, ms);
    rec.detail = Some(match &res.failed_part {
        Some(p) => format!("{p} fails; {} evaluations", res.evaluations),
        None => format!("{} evaluations", res.evaluations),
    });
    r.push(rec);
    print_report(cli, &r);
    Ok(r.passed())
}

struct Selection {
    nuclei: bool,
    center: bool,
    associator_subloop: bool,
    special: bool,
    groups: bool,
}

#[derive(Serialize, Default)]
struct Structure {
    label: String,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    nuclei: Option<subloop::Nuclei>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<SubloopSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutant: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    associator_subloop: Option<SubloopSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    special: Option<theorems::SpecialSubloops>,
    #[serde(skip_serializing_if = "Option::is_none")]
    groups: Option<GroupOrders>,
}

#[derive(Serialize)]
struct GroupOrders {
    mlt: String,
    lmlt: String,
    rmlt: String,
    inn: String,
    lmlt1: String,
    rmlt1: String,
}

fn structure(cli: &Cli, file: &Path, sel: Selection, json_out: Option<&Path>) -> Outcome {
    let t = load(file)?;
    let mut s = Structure { label: t.label().to_string(), order: t.order(), ..Default::default() };
    if sel.nuclei {
        s.nuclei = Some(subloop::nuclei(&t));
    }
    if sel.center {
        s.center = Some(subloop::center(&t));
        s.commutant = Some(subloop::commutant(&t));
    }
    if sel.associator_subloop {
        s.associator_subloop = Some(subloop::associator_subloop(&t));
    }
    if sel.special || sel.groups {
        let g = mult_groups(&t);
        if sel.groups {
            s.groups = Some(GroupOrders {
                mlt: g.mlt.order().to_string(),
                lmlt: g.lmlt.order().to_string(),
                rmlt: g.rmlt.order().to_string(),
                inn: g.inn.order().to_string(),
                lmlt1: g.lmlt1.order().to_string(),
                rmlt1: g.rmlt1.order().to_string(),
            });
        }
        if sel.special {
            s.special = Some(theorems::special_subloops(&t, &g));
        }
    }
    let json = serde_json::to_string_pretty(&s).expect("serialises");
    if let Some(p) = json_out {
        emit(&format!("{json}\n"), Some(p))?;
    }
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", render_structure(&s));
    }
    Ok(true)
}

fn list(v: &[Elem]) -> String {
    const MAX: usize = 32;
    let shown: Vec<String> = v.iter().take(MAX).map(|x| x.to_string()).collect();
    let more = if v.len() > MAX { format!(" ... ({} more)", v.len() - MAX) } else { String::new() };
    format!("order {}: {{{}}}{more}", v.len(), shown.join(", "))
}

fn render_structure(s: &Structure) -> String {
    let mut out = format!("{} (order {})\n", s.label, s.order);
    if let Some(n) = &s.nuclei {
        out += &format!("left nucleus    {}\n", list(n.left.members()));
        out += &format!("middle nucleus  {}\n", list(n.middle.members()));
        out += &format!("right nucleus   {}\n", list(n.right.members()));
        out += &format!("nucleus         {}\n", list(n.nucleus.members()));
    }
    if let Some(c) = &s.center {
        out += &format!("centre          {}\n", list(c.members()));
    }
    if let Some(c) = &s.commutant {
        out += &format!("commutant       {}\n", list(c));
    }
    if let Some(a) = &s.associator_subloop {
        out += &format!("associator      {}\n", list(a.members()));
    }
    if let Some(sp) = &s.special {
        out += &format!("M               {}\n", list(&sp.m));
        out += &format!("R_x in LMlt     {}\n", list(&sp.right_in_lmlt));
        out += &format!("T_x in LMlt_1   {}\n", list(&sp.t_in_lmlt1));
        out += &format!("T_x in RMlt_1   {}\n", list(&sp.t_in_rmlt1));
        out += &format!("Z(LMlt) at 1    {}\n", list(&sp.z_lmlt));
        out += &format!("Z(RMlt) at 1    {}\n", list(&sp.z_rmlt));
    }
    if let Some(g) = &s.groups {
        out += &format!("|Mlt| = {}, |LMlt| = {}, |RMlt| = {}\n", g.mlt, g.lmlt, g.rmlt);
        out += &format!("|Inn| = {}, |LMlt_1| = {}, |RMlt_1| = {}\n", g.inn, g.lmlt1, g.rmlt1);
    }
    out
}
