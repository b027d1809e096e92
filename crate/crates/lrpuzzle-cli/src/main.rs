use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lrpuzzle::coeff::{IntCoeff, LaurentCoeff, PolyCoeff, Ring};
use lrpuzzle::engine::{enumerate_fillings, expand_product};
use lrpuzzle::mondrian;
use lrpuzzle::og::{self, OGIndex, OGType};
use lrpuzzle::pieces::{RingKind, Theory};
use lrpuzzle::quantum;
use lrpuzzle::render::render_svg;
use lrpuzzle::schubert::{parse_parts, FlagString, SchubertIndex, Space};
use lrpuzzle::sweep::{crosscheck, display_order, Method, SweepReport};
use lrpuzzle::trace::{trace_filling, trace_tsv};
use lrpuzzle::Error;

/// Environment variable holding the worker thread count.
const THREADS_VAR: &str = "LRPUZZLE_THREADS";

/// Exact Littlewood-Richardson-type structure constants.
///
/// Spaces are written g(k,n), fl(a,b;n) or fl(a,b,c;n). Grassmannian classes
/// are 0/1 strings of length n with k ones; flag classes are digit strings in
/// which digit r marks the smallest subspace. Partitions are written "3,2,1"
/// ("0" for the empty partition). Outputs are TSV lines; --json prints one
/// object. Exit status: 0 success, 1 usage error, 2 cross-check failure.
/// The worker thread count is read from LRPUZZLE_THREADS.
#[derive(Parser, Debug)]
#[command(name = "lrpuzzle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a product of two Schubert classes with puzzles.
    Lr(LrArgs),
    /// Play the Mondrian tableau game for two Grassmannian classes.
    Mondrian(MondrianArgs),
    /// A Gromov-Witten invariant (three classes and -d) or a quantum product (two classes).
    Quantum(QuantumArgs),
    /// Expand a product with a classical oracle (lr, giambelli, flag, mondrian).
    Oracle(OracleArgs),
    /// Compare several methods on every pair of classes of a space.
    Crosscheck(CrosscheckArgs),
    /// Orthogonal Grassmannian indexing arithmetic.
    Og(OgArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// g(k,n), fl(a,b;n) or fl(a,b,c;n).
    #[arg(long)]
    space: String,
    /// Print one JSON object instead of TSV lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LrArgs {
    #[command(flatten)]
    common: Common,
    /// h, k, kalt, ht, kt (1-step), h2, ht2 (2-step) or h3 (3-step); defaults to cohomology.
    #[arg(long)]
    theory: Option<String>,
    /// Report only the coefficient of this class.
    #[arg(long)]
    gamma: Option<String>,
    /// Print the number of puzzles for each class instead of coefficients.
    #[arg(long)]
    count_puzzles: bool,
    /// Write one SVG per puzzle, named <alpha>_<beta>_<index>.svg.
    #[arg(long)]
    render_dir: Option<PathBuf>,
    /// Print the degeneration trace of every puzzle.
    #[arg(long)]
    trace: bool,
    alpha: String,
    beta: String,
}

#[derive(Args, Debug)]
struct MondrianArgs {
    #[command(flatten)]
    common: Common,
    /// Print every tableau of the game, one per line.
    #[arg(long)]
    trace: bool,
    lambda: String,
    mu: String,
}

#[derive(Args, Debug)]
struct QuantumArgs {
    #[command(flatten)]
    common: Common,
    /// Degree of the curves; required with three classes.
    #[arg(short = 'd', long = "degree")]
    degree: Option<usize>,
    /// Two or three partitions.
    #[arg(num_args = 2..=3, required = true)]
    classes: Vec<String>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    /// lr, giambelli, mondrian or flag.
    #[arg(long, default_value = "flag")]
    name: String,
    alpha: String,
    beta: String,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated methods: lr, giambelli, mondrian, flag, puzzle:<theory>.
    #[arg(long, value_delimiter = ',', required = true)]
    methods: Vec<String>,
}

#[derive(Args, Debug)]
struct OgArgs {
    #[command(subcommand)]
    op: OgOp,
    /// Print one JSON object instead of TSV lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum OgOp {
    /// The associated partition of a strictly decreasing lambda.
    Associated {
        #[arg(long)]
        m: usize,
        /// b for OG(k,2m+1), d for OG(k,2m).
        #[arg(long, default_value = "b")]
        r#type: String,
        lambda: String,
    },
    /// Discrepancy and codimension of the class lambda|mu in OG(k, 2m+1).
    Discrepancy {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "b")]
        r#type: String,
        lambda: String,
        #[arg(default_value = "")]
        mu: String,
    },
    /// Type B coefficient from a type C coefficient and sign-change counts.
    BFromC {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        su: u32,
        #[arg(long)]
        sv: u32,
        #[arg(long)]
        sw: u32,
    },
}

enum Failure {
    Usage(String),
    CrossCheck(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck(_) => Failure::CrossCheck(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::CrossCheck(m)) => {
            print!("{m}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| format!("{THREADS_VAR}='{v}' is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Lr(a) => run_lr(a),
        Command::Mondrian(a) => run_mondrian(a),
        Command::Quantum(a) => run_quantum(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Crosscheck(a) => run_crosscheck(a),
        Command::Og(a) => run_og(a),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn space_of(s: &str) -> Result<Space, Failure> {
    s.parse::<Space>().map_err(|e| usage(format!("--space: {e}")))
}

fn class_of(space: &Space, s: &str, what: &str) -> Result<FlagString, Failure> {
    FlagString::parse(&space.steps, s).map_err(|e| usage(format!("{what}: {e} in {space}")))
}

fn grass(space: &Space) -> Result<(usize, usize), Failure> {
    match space.steps[..] {
        [k] => Ok((k, space.n)),
        _ => Err(usage(format!("--space: {space} is not a Grassmannian"))),
    }
}

fn partition(s: &str, k: usize, n: usize, what: &str) -> Result<SchubertIndex, Failure> {
    let parts = parse_parts(s).map_err(|e| usage(format!("{what}: {e}")))?;
    SchubertIndex::new(k, n, &parts).map_err(|e| usage(format!("{what}: {e}")))
}

fn parts_text(p: &SchubertIndex) -> String {
    let s = p.parts_string();
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn to_json(v: Value) -> String {
    serde_json::to_string(&v).expect("json values serialize") + "\n"
}

fn tsv<V: std::fmt::Display>(m: &BTreeMap<String, V>) -> String {
    display_order(m).into_iter().map(|(g, c)| format!("{g}\t{c}\n")).collect()
}

fn terms_json<V: std::fmt::Display>(m: &BTreeMap<String, V>) -> Value {
    Value::Array(display_order(m).into_iter().map(|(g, c)| json!({"class": g, "coeff": c.to_string()})).collect())
}

fn run_lr(a: LrArgs) -> Out {
    let space = space_of(&a.common.space)?;
    let theory = match &a.theory {
        Some(t) => t.parse::<Theory>().map_err(|e| usage(format!("--theory: {e}")))?,
        None => match space.r() {
            1 => Theory::H,
            2 => Theory::H2,
            3 => Theory::H3,
            r => return Err(usage(format!("--space: no puzzle rule for {r}-step flags"))),
        },
    };
    if theory.steps() != space.r() {
        return Err(usage(format!("--theory: {theory} applies to {}-step flags, not {space}", theory.steps())));
    }
    let alpha = class_of(&space, &a.alpha, "alpha")?.as_string();
    let beta = class_of(&space, &a.beta, "beta")?.as_string();
    let gamma = match &a.gamma {
        Some(g) => Some(class_of(&space, g, "--gamma")?.as_string()),
        None => None,
    };
    let pieces = theory.pieces();
    let needs_fillings = a.count_puzzles || a.render_dir.is_some() || a.trace;
    let fillings = if needs_fillings { enumerate_fillings(space.n, &alpha, &beta, &pieces, gamma.as_deref())? } else { Vec::new() };
    if let Some(dir) = &a.render_dir {
        fs::create_dir_all(dir).map_err(|e| usage(format!("--render-dir: {e}")))?;
        for (i, f) in fillings.iter().enumerate() {
            let path = dir.join(format!("{alpha}_{beta}_{i}.svg"));
            fs::write(&path, render_svg(f)).map_err(|e| usage(format!("--render-dir: {}: {e}", path.display())))?;
        }
    }
    let coeffs: BTreeMap<String, String> = match theory.ring() {
        RingKind::Int => stringify(expand_product::<IntCoeff>(&alpha, &beta, &pieces)?),
        RingKind::Poly => stringify(expand_product::<PolyCoeff>(&alpha, &beta, &pieces)?),
        RingKind::Laurent => stringify(expand_product::<LaurentCoeff>(&alpha, &beta, &pieces)?),
    };
    let coeffs: BTreeMap<String, String> = match &gamma {
        Some(g) => [(g.clone(), coeffs.get(g).cloned().unwrap_or_else(|| "0".into()))].into(),
        None => coeffs,
    };
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for f in &fillings {
        *counts.entry(f.gamma.clone()).or_default() += 1;
    }
    if let Some(g) = &gamma {
        counts.entry(g.clone()).or_default();
    }
    let mut traces = Vec::new();
    if a.trace {
        for (i, f) in fillings.iter().enumerate() {
            traces.push((i, f.gamma.clone(), trace_filling(f, theory)?));
        }
    }

    if a.common.json {
        let mut obj = json!({
            "command": "lr",
            "space": space.to_string(),
            "theory": theory.tag(),
            "alpha": alpha,
            "beta": beta,
            "terms": terms_json(&coeffs),
        });
        if needs_fillings {
            obj["puzzles"] = terms_json(&counts);
        }
        if a.trace {
            obj["traces"] = Value::Array(
                traces
                    .iter()
                    .map(|(i, g, steps)| {
                        json!({"index": i, "gamma": g, "steps": steps.iter().map(|s| json!({"step": s.step, "alpha": s.alpha, "beta": s.beta})).collect::<Vec<_>>()})
                    })
                    .collect(),
            );
        }
        return Ok(to_json(obj));
    }
    if a.trace {
        let mut out = String::new();
        for (i, g, steps) in &traces {
            let _ = writeln!(out, "# puzzle {i}\t{g}");
            out.push_str(&trace_tsv(steps));
        }
        return Ok(out);
    }
    let shown: BTreeMap<String, String> =
        if a.count_puzzles { counts.iter().map(|(g, c)| (g.clone(), c.to_string())).collect() } else { coeffs };
    if gamma.is_some() {
        return Ok(shown.values().map(|c| format!("{c}\n")).collect());
    }
    Ok(tsv(&shown))
}

fn stringify<R: Ring>(m: BTreeMap<String, R>) -> BTreeMap<String, String> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (g, c.to_string())).collect()
}

fn run_mondrian(a: MondrianArgs) -> Out {
    let space = space_of(&a.common.space)?;
    let (k, n) = grass(&space)?;
    let l = partition(&a.lambda, k, n, "lambda")?;
    let m = partition(&a.mu, k, n, "mu")?;
    if a.trace && !a.common.json {
        return Ok(mondrian::trace_dump(&l.lambda, &m.lambda, k, n)?);
    }
    let leaves = mondrian::play(&l.lambda, &m.lambda, k, n)?;
    let mut rows: Vec<(&SchubertIndex, &u64)> = leaves.iter().collect();
    rows.sort_by(|x, y| y.0.codim().cmp(&x.0.codim()).then(y.0.lambda.cmp(&x.0.lambda)));
    if a.common.json {
        let mut obj = json!({
            "command": "mondrian",
            "space": space.to_string(),
            "lambda": parts_text(&l),
            "mu": parts_text(&m),
            "terms": rows.iter().map(|(p, c)| json!({"class": parts_text(p), "coeff": c.to_string()})).collect::<Vec<_>>(),
        });
        if a.trace {
            obj["trace"] = Value::String(mondrian::trace_dump(&l.lambda, &m.lambda, k, n)?);
        }
        return Ok(to_json(obj));
    }
    Ok(rows.iter().map(|(p, c)| format!("{}\t{c}\n", parts_text(p))).collect())
}

fn run_quantum(a: QuantumArgs) -> Out {
    let space = space_of(&a.common.space)?;
    let (k, n) = grass(&space)?;
    let classes: Vec<SchubertIndex> =
        a.classes.iter().enumerate().map(|(i, c)| partition(c, k, n, &format!("class {}", i + 1))).collect::<Result<_, _>>()?;
    if classes.len() == 3 {
        let d = a.degree.ok_or_else(|| usage("-d is required with three classes"))?;
        let (l, m, v) = (&classes[0].lambda, &classes[1].lambda, &classes[2].lambda);
        if !quantum::degree_condition(l, m, v, k, n, d) {
            return Err(usage(format!("-d: classes do not satisfy |l|+|m|+|n| = k(n-k) + dn at d={d}")));
        }
        let value = quantum::gw_invariant(l, m, v, k, n, d)?;
        if a.common.json {
            return Ok(to_json(json!({
                "command": "quantum",
                "space": space.to_string(),
                "degree": d,
                "classes": classes.iter().map(parts_text).collect::<Vec<_>>(),
                "invariant": value.to_string(),
            })));
        }
        return Ok(format!("{value}\n"));
    }
    let mut q = quantum::quantum_product(&classes[0].lambda, &classes[1].lambda, k, n)?;
    if let Some(d) = a.degree {
        q.terms.retain(|(e, _), _| *e == d);
    }
    if a.common.json {
        let text = q.to_string();
        let terms: Vec<Value> = text
            .lines()
            .map(|line| {
                let f: Vec<&str> = line.split('\t').collect();
                json!({"degree": f[0].trim_start_matches("q^").parse::<usize>().unwrap_or(0), "class": f[1], "coeff": f[2]})
            })
            .collect();
        return Ok(to_json(json!({
            "command": "quantum",
            "space": space.to_string(),
            "classes": classes.iter().map(parts_text).collect::<Vec<_>>(),
            "terms": terms,
        })));
    }
    Ok(q.to_string())
}

fn run_oracle(a: OracleArgs) -> Out {
    let space = space_of(&a.common.space)?;
    let method: Method = a.name.parse().map_err(|e: Error| usage(format!("--name: {e}")))?;
    if matches!(method, Method::Puzzle(_)) {
        return Err(usage("--name: puzzles are not an oracle; use the lr command"));
    }
    if !method.supports(&space) {
        return Err(usage(format!("--name: {method} does not apply to {space}")));
    }
    let alpha = class_of(&space, &a.alpha, "alpha")?;
    let beta = class_of(&space, &a.beta, "beta")?;
    let m = method.product(&alpha, &beta)?;
    if a.common.json {
        return Ok(to_json(json!({
            "command": "oracle",
            "space": space.to_string(),
            "oracle": method.to_string(),
            "alpha": alpha.as_string(),
            "beta": beta.as_string(),
            "terms": terms_json(&m),
        })));
    }
    Ok(tsv(&m))
}

fn run_crosscheck(a: CrosscheckArgs) -> Out {
    let space = space_of(&a.common.space)?;
    let methods: Vec<Method> =
        a.methods.iter().map(|m| m.parse::<Method>().map_err(|e| usage(format!("--methods: {e}")))).collect::<Result<_, _>>()?;
    let report = crosscheck(&space, &methods)?;
    let text = match &report {
        SweepReport::Ok { products } => format!("OK {products} products\n"),
        SweepReport::Mismatch(c) => c.to_string(),
    };
    let out = if a.common.json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["space"] = Value::String(space.to_string());
        v["methods"] = Value::Array(methods.iter().map(|m| Value::String(m.to_string())).collect());
        to_json(v)
    } else {
        text
    };
    match report {
        SweepReport::Ok { .. } => Ok(out),
        SweepReport::Mismatch(_) => Err(Failure::CrossCheck(out)),
    }
}

fn og_type(s: &str) -> Result<OGType, Failure> {
    match s {
        "b" | "B" => Ok(OGType::B),
        "d" | "D" => Ok(OGType::D),
        _ => Err(usage(format!("--type: expected b or d, got '{s}'"))),
    }
}

fn strict_parts(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| usage(format!("{what}: bad part '{p}'")))).collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn run_og(a: OgArgs) -> Out {
    match a.op {
        OgOp::Associated { m, r#type, lambda } => {
            let ty = og_type(&r#type)?;
            let lam = strict_parts(&lambda, "lambda")?;
            let tilde = og::associated(ty, &lam, m)?;
            if a.json {
                return Ok(to_json(json!({"command": "og", "op": "associated", "m": m, "lambda": join(&lam), "associated": join(&tilde)})));
            }
            Ok(format!("{}\n", join(&tilde)))
        }
        OgOp::Discrepancy { m, k, r#type, lambda, mu } => {
            let ty = og_type(&r#type)?;
            let idx = OGIndex::new(ty, k, m, &strict_parts(&lambda, "lambda")?, &strict_parts(&mu, "mu")?)?;
            if a.json {
                return Ok(to_json(json!({
                    "command": "og", "op": "discrepancy", "class": idx.to_string(), "m": m, "k": k,
                    "discrepancy": idx.discrepancy(), "codim": idx.codim(),
                })));
            }
            Ok(format!("discrepancy\t{}\ncodim\t{}\n", idx.discrepancy(), idx.codim()))
        }
        OgOp::BFromC { c, su, sv, sw } => {
            let c: num_bigint::BigInt = c.trim().parse().map_err(|_| usage(format!("--c: '{c}' is not an integer")))?;
            let b = og::type_b_from_type_c(&c, su, sv, sw);
            if a.json {
                return Ok(to_json(json!({"command": "og", "op": "b-from-c", "c": c.to_string(), "b": b.to_string()})));
            }
            Ok(format!("{b}\n"))
        }
    }
}
