//! The `ybe` command line.
//!
//! Exit codes: 0 for success or a true answer, 1 for a false answer or an
//! invalid object (with a report), 2 for usage, I/O and format errors.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ybe_core::catalog::{self, Fixture};
use ybe_core::document::{Document, DocumentError, Item};
use ybe_core::extension::{cohomologous, AbelianCocycleSpace, Covering, CycleSetAction};
use ybe_core::format::{emit_acocycle, emit_cycle_set, emit_dcocycle, emit_solution};
use ybe_core::group::named;
use ybe_core::limits::seed_from_env;
use ybe_core::{exact_isomorphic, selftest, CycleSet, Limits, MplKind, Partition, Permutation};

#[derive(Parser, Debug)]
#[command(name = "ybe", version, about = "Finite involutive solutions of the Yang-Baxter equation via cycle sets")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Input file, `-` for standard input.
    file: Option<String>,
    /// Use a built-in example instead of a file.
    #[arg(long, conflicts_with = "file")]
    example: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Target {
    Solution,
    Cycleset,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every section of a document.
    Check(Input),
    /// Convert between cycle sets and solutions.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Retraction, iterated `--steps` times.
    Retract {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Multipermutation level.
    Mpl(Input),
    /// Isomorphism test between two cycle sets.
    Iso { a: String, b: String },
    /// Equitable congruences and their quotients.
    Covers(Input),
    /// Whether the cycle set is simple.
    Simple(Input),
    /// The permutation group generated by the σ maps.
    Group {
        #[command(flatten)]
        input: Input,
        /// Compare with a named reference group.
        #[arg(long)]
        exact_iso: Option<String>,
    },
    /// Extension of a base by a dynamical or abelian cocycle.
    Extend {
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        #[arg(long, conflicts_with = "cocycle")]
        example: Option<String>,
    },
    /// Basis of abelian cocycles over Z/p.
    Cocycles {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        base: String,
        /// Restrict to f(x,x) = 0.
        #[arg(long)]
        zero_diagonal: bool,
    },
    /// Whether two cocycles over a base are cohomologous.
    Cohomologous {
        a: String,
        b: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Semidirect product by a cycle set action.
    Semidirect {
        #[arg(long)]
        base: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        action: String,
    },
    /// Cocycle of a covering given by an equitable congruence.
    ExtractCover {
        #[arg(long)]
        total: String,
        /// Labels `1 2 1 2` or blocks `{1,3}{2,4}`.
        #[arg(long)]
        partition: String,
        /// Fiber labels, space separated.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Show or emit a built-in example; lists them without a name.
    Example {
        name: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// Run the reproducibility checks.
    Selftest,
}

/// Result of a command before rendering.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Report {
            code,
            text: text.into(),
            json,
        }
    }
}

/// An error with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure {
            code: if e.is_invalid() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn compute(message: impl ToString) -> Failure {
    usage(message.to_string())
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    limits: Limits,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(usage("standard input can only be read once"));
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| usage(format!("standard input: {e}")))?;
            return Ok(text);
        }
        if let Some(name) = path.strip_prefix("example:") {
            return Ok(example(name)?.fixture.emit());
        }
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }

    fn document(&mut self, path: &str, base: Option<&CycleSet>) -> Result<Document, Failure> {
        let text = self.read(path)?;
        Document::load(&text, base).map_err(|e| {
            let mut f = Failure::from(e);
            f.message = format!("{path}: {}", f.message);
            f
        })
    }

    fn fixture(&mut self, input: &Input) -> Result<Fixture, Failure> {
        match (&input.file, &input.example) {
            (_, Some(name)) => Ok(example(name)?.fixture),
            (Some(path), None) => Ok(self.document(path, None)?.to_fixture()?),
            (None, None) => Err(usage("give an input file, `-`, or --example NAME")),
        }
    }

    /// A cycle set from a file or example name.
    fn cycle_set_at(&mut self, source: &str) -> Result<CycleSet, Failure> {
        if let Some(name) = source.strip_prefix("example:") {
            return Ok(example(name)?.fixture.cycle_set());
        }
        Ok(self.document(source, None)?.cycle_set()?)
    }
}

fn example(name: &str) -> Result<catalog::CatalogEntry, Failure> {
    catalog::entry(name).map_err(|e| usage(e.to_string()))
}

fn partition_json(p: &Partition) -> Value {
    json!(p.classes().iter().map(|c| c.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn table_json(x: &CycleSet) -> Value {
    json!(x.table_rows().iter().map(|r| r.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn perms_json(ps: &[Permutation]) -> Value {
    json!(ps.iter().map(Permutation::to_cycles).collect::<Vec<_>>())
}

fn yes(flag: bool) -> i32 {
    if flag {
        0
    } else {
        1
    }
}

fn check(ctx: &mut Context, input: &Input) -> Result<Report, Failure> {
    let doc = match (&input.file, &input.example) {
        (_, Some(name)) => {
            let text = example(name)?.fixture.emit();
            Document::load(&text, None)?
        }
        (Some(path), None) => ctx.document(path, None)?,
        (None, None) => return Err(usage("give an input file, `-`, or --example NAME")),
    };
    let mut text = String::new();
    let mut sections = Vec::new();
    for (line, item) in &doc.items {
        let mut extra = String::new();
        if let Item::CycleSet(x) = item {
            if x.is_square_free() {
                extra = ", square-free".into();
            }
        }
        let _ = writeln!(text, "line {line}: {} of size {}: valid{extra}", item.kind(), item.size());
        sections.push(json!({"line": line, "kind": item.kind(), "size": item.size(), "valid": true}));
    }
    Ok(Report::new(0, text, json!({"valid": true, "sections": sections})))
}

fn convert(ctx: &mut Context, input: &Input, to: Target) -> Result<Report, Failure> {
    let x = ctx.fixture(input)?.cycle_set();
    let (text, json) = match to {
        Target::Cycleset => (emit_cycle_set(&x), json!({"kind": "cycleset", "table": table_json(&x)})),
        Target::Solution => {
            let s = ybe_core::Solution::from_cycle_set(&x);
            (
                emit_solution(&s),
                json!({"kind": "solution", "sigma": perms_json(s.sigmas()), "tau": perms_json(s.taus())}),
            )
        }
    };
    Ok(Report::new(0, text, json))
}

fn retract(ctx: &mut Context, input: &Input, steps: usize) -> Result<Report, Failure> {
    let mut x = ctx.fixture(input)?.cycle_set();
    let mut text = String::new();
    let mut chain = vec![json!(x.size())];
    let mut partitions = Vec::new();
    for step in 1..=steps {
        let (r, p) = x.retract().map_err(compute)?;
        let _ = writeln!(text, "step {step}: {} -> {} points, classes {p}", x.size(), r.size());
        partitions.push(partition_json(&p));
        chain.push(json!(r.size()));
        x = r;
    }
    text.push_str(&emit_cycle_set(&x));
    Ok(Report::new(
        0,
        text,
        json!({"sizes": chain, "partitions": partitions, "table": table_json(&x)}),
    ))
}

fn mpl(ctx: &mut Context, input: &Input) -> Result<Report, Failure> {
    let x = ctx.fixture(input)?.cycle_set();
    let m = x.mpl();
    let kind = match m.kind {
        MplKind::Multipermutation { level } => json!({"multipermutation": {"level": level}}),
        MplKind::Irretractable {
            stable_size,
            steps_to_fixpoint,
        } => json!({"irretractable": {"stable_size": stable_size, "steps_to_fixpoint": steps_to_fixpoint}}),
    };
    Ok(Report::new(0, format!("{m}\n"), json!({"kind": kind, "chain": m.chain})))
}

fn iso(ctx: &mut Context, a: &str, b: &str) -> Result<Report, Failure> {
    let (x, y) = (ctx.cycle_set_at(a)?, ctx.cycle_set_at(b)?);
    Ok(match x.isomorphism(&y) {
        Some(f) => Report::new(
            0,
            format!("isomorphic: true\nmap: {}\n", f.to_cycles()),
            json!({"isomorphic": true, "map": f.one_based_images()}),
        ),
        None => Report::new(1, "isomorphic: false\n", json!({"isomorphic": false})),
    })
}

fn covers(ctx: &mut Context, input: &Input) -> Result<Report, Failure> {
    let x = ctx.fixture(input)?.cycle_set();
    let covs = x.coverings(&ctx.limits).map_err(compute)?;
    let mut text = format!("{} coverings\n", covs.len());
    let mut list = Vec::new();
    for (p, q) in &covs {
        let fiber = x.size() / q.size();
        let _ = writeln!(text, "{p} -> {} points, fiber size {fiber}", q.size());
        list.push(json!({"partition": partition_json(p), "base_size": q.size(), "fiber_size": fiber}));
    }
    Ok(Report::new(0, text, json!({"coverings": list})))
}

fn simple(ctx: &mut Context, input: &Input) -> Result<Report, Failure> {
    let x = ctx.fixture(input)?.cycle_set();
    let s = x.is_simple(&ctx.limits).map_err(compute)?;
    Ok(Report::new(yes(s), format!("simple: {s}\n"), json!({"simple": s})))
}

fn group(ctx: &mut Context, input: &Input, reference: Option<&str>) -> Result<Report, Failure> {
    let fixture = ctx.fixture(input)?;
    let s = match &fixture {
        Fixture::Solution(s) => s.clone(),
        other => ybe_core::Solution::from_cycle_set(&other.cycle_set()),
    };
    let g = s.yb_group(&ctx.limits).map_err(compute)?;
    let fp = g.fingerprint();
    let histogram: Vec<String> = fp.order_histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    let mut text = format!(
        "order: {}\nabelian: {}\norder histogram: {}\ncenter order: {}\nderived order: {}\n",
        fp.order,
        fp.abelian,
        histogram.join(" "),
        fp.center_order,
        fp.derived_order
    );
    let mut matched = None;
    for name in named::NAMES {
        let h = named::group(name).expect("listed name");
        if h.order() == g.order() && g.order() <= ctx.limits.group_iso_order
            && exact_isomorphic(&g, &h, &ctx.limits).map_err(compute)?
        {
            matched = Some(*name);
            break;
        }
    }
    let _ = writeln!(text, "named: {}", matched.unwrap_or("none"));
    let mut json = json!({
        "order": fp.order,
        "abelian": fp.abelian,
        "order_histogram": fp.order_histogram.iter().map(|(o, c)| (o.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "center_order": fp.center_order,
        "derived_order": fp.derived_order,
        "named": matched,
    });
    let mut code = 0;
    if let Some(name) = reference {
        let h = named::group(name)
            .ok_or_else(|| usage(format!("unknown group `{name}`; available: {}", named::NAMES.join(", "))))?;
        let iso = exact_isomorphic(&g, &h, &ctx.limits).map_err(compute)?;
        let _ = writeln!(text, "isomorphic to {name}: {iso}");
        json["exact_iso"] = json!({"name": name, "isomorphic": iso});
        code = yes(iso);
    }
    Ok(Report::new(code, text, json))
}

fn cocycle_document(ctx: &mut Context, source: &str, base: Option<&CycleSet>) -> Result<Document, Failure> {
    if let Some(name) = source.strip_prefix("example:") {
        let text = example(name)?.fixture.emit();
        return Ok(Document::load(&text, base)?);
    }
    ctx.document(source, base)
}

fn extend(
    ctx: &mut Context,
    base: Option<&str>,
    cocycle: Option<&str>,
    name: Option<&str>,
) -> Result<Report, Failure> {
    let base = base.map(|b| ctx.cycle_set_at(b)).transpose()?;
    let source = match (cocycle, name) {
        (Some(c), _) => c.to_string(),
        (None, Some(n)) => format!("example:{n}"),
        (None, None) => return Err(usage("give --cocycle FILE or --example NAME")),
    };
    let doc = cocycle_document(ctx, &source, base.as_ref())?;
    let c = doc.dynamical_cocycle()?;
    let ext = c.build_extension();
    let text = emit_cycle_set(&ext);
    Ok(Report::new(
        0,
        text,
        json!({
            "base_size": c.base().size(),
            "s_labels": c.labels(),
            "square_free_compatible": c.is_square_free_compatible(),
            "table": table_json(&ext),
            "rows": perms_json(&ext.rows()),
        }),
    ))
}

fn cocycles(ctx: &mut Context, prime: u32, base: &str, zero_diagonal: bool) -> Result<Report, Failure> {
    let b = ctx.cycle_set_at(base)?;
    let space = if zero_diagonal {
        AbelianCocycleSpace::solve_with_zero_diagonal(&b, prime)
    } else {
        AbelianCocycleSpace::solve(&b, prime)
    }
    .map_err(compute)?;
    let mut text = format!("dimension: {}\n", space.dimension());
    for c in space.basis() {
        text.push('\n');
        text.push_str(&emit_acocycle(&c));
    }
    Ok(Report::new(
        0,
        text,
        json!({"p": prime, "dimension": space.dimension(), "basis": space.basis().iter().map(|c| c.matrix().to_vec()).collect::<Vec<_>>()}),
    ))
}

fn cohomologous_cmd(ctx: &mut Context, a: &str, b: &str, base: Option<&str>) -> Result<Report, Failure> {
    let base = base.map(|s| ctx.cycle_set_at(s)).transpose()?;
    let ca = cocycle_document(ctx, a, base.as_ref())?.dynamical_cocycle()?;
    let cb = cocycle_document(ctx, b, base.as_ref())?.dynamical_cocycle()?;
    let w = cohomologous(&ca, &cb, &ctx.limits).map_err(compute)?;
    Ok(match w {
        Some(gamma) => {
            let mut text = "cohomologous: true\n".to_string();
            for (x, g) in gamma.iter().enumerate() {
                let _ = writeln!(text, "gamma_{} = {}", x + 1, g.to_cycles());
            }
            Report::new(0, text, json!({"cohomologous": true, "gamma": perms_json(&gamma)}))
        }
        None => Report::new(1, "cohomologous: false\n", json!({"cohomologous": false})),
    })
}

fn semidirect(ctx: &mut Context, base: &str, module: &str, action: &str) -> Result<Report, Failure> {
    let x = ctx.cycle_set_at(base)?;
    let s = ctx.cycle_set_at(module)?;
    let doc = ctx.document(action, None)?;
    let (n, m, rows) = doc
        .items
        .iter()
        .find_map(|(_, item)| match item {
            Item::Action { n, m, rows } => Some((*n, *m, rows.clone())),
            _ => None,
        })
        .ok_or_else(|| usage(format!("{action}: no action section")))?;
    if n != x.size() || m != s.size() {
        return Err(usage(format!(
            "action is {n}×{m} but base and module have sizes {} and {}",
            x.size(),
            s.size()
        )));
    }
    let a = CycleSetAction::new(x, s, rows).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let ext = a.semidirect_product().map_err(compute)?;
    Ok(Report::new(0, emit_cycle_set(&ext), json!({"table": table_json(&ext)})))
}

fn extract_cover(ctx: &mut Context, total: &str, partition: &str, labels: Option<&str>) -> Result<Report, Failure> {
    let x = ctx.cycle_set_at(total)?;
    let p = Partition::parse(partition, x.size()).map_err(|e| usage(format!("--partition: {e}")))?;
    let invalid = |e: ybe_core::ExtensionError| Failure {
        code: 1,
        message: e.to_string(),
    };
    let mut cov = Covering::from_partition(x, &p).map_err(invalid)?;
    if let Some(labels) = labels {
        let labels: Vec<String> = labels.split_whitespace().map(str::to_string).collect();
        let fibers = cov.fibers().to_vec();
        cov = cov.with_fibers(fibers, labels).map_err(invalid)?;
    }
    let (alpha, iso) = cov.extract_cocycle().map_err(compute)?;
    let mut text = emit_cycle_set(alpha.base());
    text.push_str(&emit_dcocycle(&alpha));
    let _ = writeln!(text, "# isomorphism onto the extension: {}", iso.to_cycles());
    Ok(Report::new(
        0,
        text,
        json!({
            "base": table_json(alpha.base()),
            "s_labels": alpha.labels(),
            "alpha": alpha.maps().iter().map(|p| p.one_based_images()).collect::<Vec<_>>(),
            "isomorphism": iso.one_based_images(),
        }),
    ))
}

fn example_cmd(name: Option<&str>, emit: bool) -> Result<Report, Failure> {
    let Some(name) = name else {
        let mut text = String::new();
        let mut list = Vec::new();
        for e in catalog::all() {
            let _ = writeln!(text, "{:<16} {:<10} {}", e.name, e.kind().to_string(), e.provenance);
            list.push(json!({"name": e.name, "kind": e.kind().to_string(), "provenance": e.provenance}));
        }
        return Ok(Report::new(0, text, json!({"examples": list})));
    };
    let e = example(name)?;
    let emitted = e.fixture.emit();
    let size = e.fixture.cycle_set().size();
    let text = if emit {
        emitted.clone()
    } else {
        format!(
            "name: {}\nkind: {}\nsize: {size}\nprovenance: {}\n",
            e.name,
            e.kind(),
            e.provenance
        )
    };
    Ok(Report::new(
        0,
        text,
        json!({"name": e.name, "kind": e.kind().to_string(), "size": size, "provenance": e.provenance, "document": emitted}),
    ))
}

fn selftest_cmd(ctx: &Context) -> Result<Report, Failure> {
    let seed = seed_from_env();
    let outcomes = selftest::run(&ctx.limits, seed);
    let mut text = String::new();
    for o in &outcomes {
        let _ = writeln!(text, "{o}");
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(text, "{passed}/{} criteria passed (seed {seed:#x})", outcomes.len());
    let json = json!({
        "seed": seed,
        "outcomes": outcomes.iter().map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail})).collect::<Vec<_>>(),
    });
    Ok(Report::new(yes(passed == outcomes.len()), text, json))
}

fn dispatch(cli: &Cli, ctx: &mut Context) -> Result<Report, Failure> {
    match &cli.command {
        Command::Check(input) => check(ctx, input),
        Command::Convert { input, to } => convert(ctx, input, *to),
        Command::Retract { input, steps } => retract(ctx, input, *steps),
        Command::Mpl(input) => mpl(ctx, input),
        Command::Iso { a, b } => iso(ctx, a, b),
        Command::Covers(input) => covers(ctx, input),
        Command::Simple(input) => simple(ctx, input),
        Command::Group { input, exact_iso } => group(ctx, input, exact_iso.as_deref()),
        Command::Extend { base, cocycle, example } => {
            extend(ctx, base.as_deref(), cocycle.as_deref(), example.as_deref())
        }
        Command::Cocycles { prime, base, zero_diagonal } => cocycles(ctx, *prime, base, *zero_diagonal),
        Command::Cohomologous { a, b, base } => cohomologous_cmd(ctx, a, b, base.as_deref()),
        Command::Semidirect { base, module, action } => semidirect(ctx, base, module, action),
        Command::ExtractCover { total, partition, labels } => {
            extract_cover(ctx, total, partition, labels.as_deref())
        }
        Command::Example { name, emit } => example_cmd(name.as_deref(), *emit),
        Command::Selftest => selftest_cmd(ctx),
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(stderr, "error: YBE_LIMITS: {e}");
            return 2;
        }
    };
    let mut ctx = Context {
        stdin,
        stdin_used: false,
        limits,
    };
    match dispatch(&cli, &mut ctx) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", report.json)
            } else {
                write!(stdout, "{}", report.text)
            };
            report.code
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(stdout, "{}", json!({"error": f.message, "exit_code": f.code}));
            }
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
