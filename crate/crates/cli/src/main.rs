use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use zzschur::audit::{character_audit, form_audit, integrality_audit};
use zzschur::combinat::{delta_character, dominant_weights, kostka_table, multi_lr, Weight};
use zzschur::json::{cached_product_table, character_value, document, eta_basis_value, render, Cache};
use zzschur::ringel_verify::{
    build_scrt, content_characters, dimension_identity, full_tilting_failures, tilt_weight_audit, verify_kostka,
    verify_ringel_on, CommutationMode, RingelOptions,
};
use zzschur::schur::{schur_dimension, CharacterTable, SchurAlgebra};
use zzschur::superalg::{heredity_audit, zigzag};
use zzschur::tilting_core::{tilting_bimodule, verify_lzprime};
use zzschur::{Error, FieldSpec};

#[derive(Parser)]
#[command(name = "zzschur", version, about = "Zigzag Schur algebras, their tilting bimodule and Ringel self-duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Matrix size n.
    #[arg(short = 'n', default_value_t = 2)]
    n: usize,
    /// Degree d.
    #[arg(short = 'd', default_value_t = 2)]
    d: usize,
    /// Zigzag length l (vertices 0..=l).
    #[arg(short = 'l', default_value_t = 1)]
    l: usize,
    /// Field: Q or F<p>.
    #[arg(short = 'F', default_value = "Q")]
    field: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write output to a file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of Z, T^Z(n,d) and the tilting bimodule.
    Dim(Common),
    /// The η basis of T^Z(n,d).
    Basis {
        #[command(flatten)]
        common: Common,
        /// Include every nonzero product (memoized under ZZSCHUR_CACHE_DIR).
        #[arg(long)]
        products: bool,
    },
    /// One product η^A η^B; A and B are indices or basis names.
    Mult {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Kostka numbers k_{λ,μ} for dominant λ.
    Kostka(Common),
    /// Littlewood-Richardson coefficients for multipartitions.
    Lr {
        #[command(flatten)]
        common: Common,
        /// First multipartition, e.g. "1,0|1,0"; all of degree < d when omitted.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Formal character of Δ(λ).
    CharDelta {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
    },
    /// Run one audit.
    Verify {
        check: Check,
        #[command(flatten)]
        common: Common,
        /// Stop each block solve once the right action is accounted for.
        #[arg(long)]
        early_exit: bool,
        /// Sample this many commutation triples instead of checking all.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every audit at the given size.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        early_exit: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Heredity,
    Lzprime,
    Tilting,
    Kostka,
    Ringel,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Heredity => "heredity",
            Check::Lzprime => "lzprime",
            Check::Tilting => "tilting",
            Check::Kostka => "kostka",
            Check::Ringel => "ringel",
        }
    }
}

/// Outcome of one leg: its JSON payload and a text summary.
struct Leg {
    name: String,
    passed: bool,
    value: Value,
    summary: String,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) => Failure::Usage(m),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn to_value<T: serde::Serialize>(v: &T) -> Run<Value> {
    serde_json::to_value(v).map_err(|e| Failure::Check(e.to_string()))
}

fn field(c: &Common) -> Run<FieldSpec> {
    Ok(FieldSpec::parse(&c.field)?)
}

fn need_l(c: &Common) -> Run<()> {
    if c.l == 0 {
        return Err(Failure::Usage("l must be at least 1".into()));
    }
    Ok(())
}

fn need_d_le_n(c: &Common) -> Run<()> {
    if c.d > c.n {
        return Err(Failure::Usage(format!("need d <= n, got n = {}, d = {}", c.n, c.d)));
    }
    Ok(())
}

fn emit(c: &Common, kind: &str, value: &Value, text: &str) -> Run<()> {
    let body = if c.json { render(&document(kind, value)?)? } else { format!("{text}\n") };
    match &c.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn finish(c: &Common, kind: &str, legs: Vec<Leg>) -> Run<bool> {
    let passed = legs.iter().all(|l| l.passed);
    let mut text = Vec::new();
    let mut data = serde_json::Map::new();
    for leg in &legs {
        text.push(format!("{}: {} {}", leg.name, if leg.passed { "PASS" } else { "FAIL" }, leg.summary));
        data.insert(leg.name.clone(), json!({ "passed": leg.passed, "report": leg.value }));
        if !leg.passed && !c.json {
            eprintln!("{}: witnesses {}", leg.name, leg.value);
        }
    }
    data.insert("passed".into(), json!(passed));
    emit(c, kind, &Value::Object(data), &text.join("\n"))?;
    Ok(passed)
}

fn dim(c: &Common) -> Run<bool> {
    need_l(c)?;
    let z = zigzag(c.l)?;
    let s = SchurAlgebra::new(&z, c.n, c.d)?;
    let t = tilting_bimodule(c.l)?;
    let (even, odd) = s.even_odd_dims();
    let formula = schur_dimension(&z, c.n, c.d);
    let scrt = if c.d <= c.n && c.n > 0 { Some(build_scrt(c.n, c.d, c.l)?.dim()) } else { None };
    let value = json!({
        "zigzag": z.dim(),
        "tilting": t.dim(),
        "schur": s.dim(),
        "schur_even": even,
        "schur_odd": odd,
        "schur_formula": formula.to_string(),
        "scrt": scrt,
    });
    let mut text = format!("{}\ndim Z = {}\ndim T = {}\neven/odd = {even}/{odd}", s.dim(), z.dim(), t.dim());
    if let Some(k) = scrt {
        text.push_str(&format!("\ndim Gamma^d M_n(T) = {k}"));
    }
    emit(c, "dim", &value, &text)?;
    Ok(formula == s.dim().into())
}

fn basis(c: &Common, products: bool) -> Run<bool> {
    need_l(c)?;
    let s = SchurAlgebra::new(&zigzag(c.l)?, c.n, c.d)?;
    let mut value = eta_basis_value(&s);
    if products {
        value["products"] = cached_product_table(&s, &Cache::from_env())?;
    }
    let text: Vec<String> = (0..s.dim())
        .map(|i| {
            let w = s.basis_weights(i).map(|(l, r)| format!(" [{l}] [{r}]")).unwrap_or_default();
            format!("{i}\t{}\t{}{w}", s.dp.name(i), s.parity(i))
        })
        .collect();
    emit(c, "basis", &value, &text.join("\n"))?;
    Ok(true)
}

fn lookup(s: &SchurAlgebra, key: &str) -> Run<usize> {
    if let Ok(i) = key.parse::<usize>() {
        if i < s.dim() {
            return Ok(i);
        }
        return Err(Failure::Usage(format!("index {i} out of range 0..{}", s.dim())));
    }
    (0..s.dim()).find(|&i| s.dp.name(i) == key).ok_or_else(|| Failure::Usage(format!("no basis element {key:?}")))
}

fn mult(c: &Common, a: &str, b: &str) -> Run<bool> {
    need_l(c)?;
    let s = SchurAlgebra::new(&zigzag(c.l)?, c.n, c.d)?;
    let (a, b) = (lookup(&s, a)?, lookup(&s, b)?);
    let prod = s.mult(a, b)?;
    let terms: Vec<Value> = prod.iter().map(|(k, v)| json!([s.dp.name(*k), v.to_string()])).collect();
    let value = json!({ "left": s.dp.name(a), "right": s.dp.name(b), "product": terms });
    let text = if prod.is_empty() {
        "0".to_string()
    } else {
        prod.iter().map(|(k, v)| format!("{v} {}", s.dp.name(*k))).collect::<Vec<_>>().join(" + ")
    };
    emit(c, "mult", &value, &text)?;
    Ok(true)
}

fn kostka(c: &Common) -> Run<bool> {
    need_l(c)?;
    let table = kostka_table(c.l, c.n, c.d);
    let mut text = Vec::new();
    for (lam, row) in &table {
        for (mu, k) in row {
            if *k > 0 {
                text.push(format!("{lam}\t{mu}\t{k}"));
            }
        }
    }
    emit(c, "kostka", &to_value(&table)?, &text.join("\n"))?;
    Ok(true)
}

fn parse_weight(s: &str, c: &Common) -> Run<Weight> {
    let w = Weight::parse(s)?;
    if w.components() != c.l + 1 || w.rows() != c.n {
        return Err(Failure::Usage(format!("{s:?} needs {} components of {} rows", c.l + 1, c.n)));
    }
    Ok(w)
}

fn lr(c: &Common, lambda: &Option<String>, mu: &Option<String>) -> Run<bool> {
    need_l(c)?;
    let pairs: Vec<(Weight, Weight)> = match (lambda, mu) {
        (Some(a), Some(b)) => vec![(parse_weight(a, c)?, parse_weight(b, c)?)],
        (None, None) => (0..=c.d)
            .flat_map(|k| {
                let right = dominant_weights(c.l, c.n, c.d - k);
                dominant_weights(c.l, c.n, k)
                    .into_iter()
                    .flat_map(move |a| right.clone().into_iter().map(move |b| (a.clone(), b)))
            })
            .collect(),
        _ => return Err(Failure::Usage("give both --lambda and --mu or neither".into())),
    };
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for (a, b) in pairs {
        for nu in dominant_weights(c.l, c.n, a.degree() + b.degree()) {
            let k = multi_lr(&a, &b, &nu);
            if k > 0 {
                text.push(format!("{a}\t{b}\t{nu}\t{k}"));
                rows.push(json!([a.to_string(), b.to_string(), nu.to_string(), k]));
            }
        }
    }
    emit(c, "lr", &Value::Array(rows), &text.join("\n"))?;
    Ok(true)
}

fn char_delta(c: &Common, lambda: &str) -> Run<bool> {
    need_l(c)?;
    let lam = parse_weight(lambda, c)?;
    if !lam.is_dominant() {
        return Err(Failure::Usage(format!("{lambda:?} is not a multipartition")));
    }
    let ch = CharacterTable::from(delta_character(c.l, &lam));
    let text: Vec<String> = ch.0.iter().map(|(w, k)| format!("{w}\t{k}")).collect();
    emit(c, "char-delta", &character_value(&ch), &text.join("\n"))?;
    Ok(true)
}

fn heredity_leg(l: usize) -> Run<Leg> {
    let z = zigzag(l)?;
    let data = z.heredity.as_ref().ok_or_else(|| Failure::Check("no heredity data".into()))?;
    let rep = heredity_audit(&z, data);
    Ok(Leg { name: "heredity".into(), passed: rep.passed(), value: to_value(&rep)?, summary: format!("l={l}") })
}

fn lzprime_leg(l: usize) -> Run<Leg> {
    let rep = verify_lzprime(l)?;
    let summary = format!("l={l} primed basis {}", rep.ringel.basis_size);
    Ok(Leg { name: "lzprime".into(), passed: rep.passed(), value: to_value(&rep)?, summary })
}

fn tilting_leg(c: &Common) -> Run<Leg> {
    need_d_le_n(c)?;
    let t = build_scrt(c.n, c.d, c.l)?;
    let audits = (0..=c.l).map(|i| tilt_weight_audit(&t, i)).collect::<Result<Vec<_>, _>>()?;
    let chars = content_characters(c.n, c.d, c.l)?;
    let full = full_tilting_failures(&chars, c.l, c.n, c.d)?;
    let passed = audits.iter().all(|a| a.passed) && full.is_empty();
    let dims: Vec<String> = audits.iter().map(|a| a.dim.to_string()).collect();
    Ok(Leg {
        name: "tilting".into(),
        passed,
        value: json!({ "summands": to_value(&audits)?, "full_tilting_failures": to_value(&full)? }),
        summary: format!("summand dims {}", dims.join(",")),
    })
}

fn kostka_leg(c: &Common) -> Run<Leg> {
    let rep = verify_kostka(c.n, c.d, c.l)?;
    let id = dimension_identity(c.n, c.d, c.l)?;
    let summary = format!("{} blocks, {} LR/Omega checks, dim {}", rep.blocks.len(), rep.lr_beta.checked, id.enumerated);
    Ok(Leg {
        name: "kostka".into(),
        passed: rep.passed() && id.passed(),
        value: json!({ "filtrations": to_value(&rep)?, "dimension_identity": to_value(&id)? }),
        summary,
    })
}

fn ringel_leg(c: &Common, opts: RingelOptions) -> Run<Leg> {
    need_d_le_n(c)?;
    let f = field(c)?;
    let t = build_scrt(c.n, c.d, c.l)?;
    let r = verify_ringel_on(&t, f, opts)?;
    let timings: Vec<String> = r.timings_ms.iter().map(|(k, v)| format!("{k} {v}ms")).collect();
    let summary = format!(
        "End = {} ({}/{}), dim T^Z = {}, faithful rank {}, {} commutation checks [{}]",
        r.end.total,
        r.end.even,
        r.end.odd,
        r.dim_left,
        r.faithful_rank,
        r.commutation.checked,
        timings.join(", ")
    );
    Ok(Leg { name: "ringel".into(), passed: r.passed(), value: to_value(&r)?, summary })
}

fn integrality_leg(c: &Common) -> Run<Leg> {
    let rep = integrality_audit(c.n, c.d, c.l)?;
    let summary = format!("{} products, {} action constants", rep.products, rep.action_constants);
    Ok(Leg { name: "integrality".into(), passed: rep.passed(), value: to_value(&rep)?, summary })
}

fn form_leg(c: &Common) -> Run<Leg> {
    let rep = form_audit(c.n, c.d, c.l, true)?;
    let summary = format!("{} pairings", rep.pairs_checked);
    Ok(Leg { name: "forms".into(), passed: rep.passed(), value: to_value(&rep)?, summary })
}

fn character_leg(c: &Common) -> Run<Leg> {
    let rep = character_audit(c.n, c.d, c.l)?;
    let summary = format!("{} tensor products", rep.tensor_products_checked);
    Ok(Leg { name: "characters".into(), passed: rep.passed(), value: to_value(&rep)?, summary })
}

fn verify(c: &Common, check: Check, opts: RingelOptions) -> Run<bool> {
    need_l(c)?;
    let leg = match check {
        Check::Heredity => heredity_leg(c.l)?,
        Check::Lzprime => lzprime_leg(c.l)?,
        Check::Tilting => tilting_leg(c)?,
        Check::Kostka => kostka_leg(c)?,
        Check::Ringel => ringel_leg(c, opts)?,
    };
    finish(c, &format!("verify-{}", check.name()), vec![leg])
}

fn report(c: &Common, opts: RingelOptions) -> Run<bool> {
    need_l(c)?;
    need_d_le_n(c)?;
    field(c)?;
    let legs = (0..8)
        .into_par_iter()
        .map(|k| match k {
            0 => heredity_leg(c.l),
            1 => lzprime_leg(c.l),
            2 => integrality_leg(c),
            3 => form_leg(c),
            4 => character_leg(c),
            5 => kostka_leg(c),
            6 => tilting_leg(c),
            _ => ringel_leg(c, opts),
        })
        .collect::<Run<Vec<Leg>>>()?;
    finish(c, "report", legs)
}

fn run(cli: Cli) -> Run<bool> {
    let common = match &cli.command {
        Command::Dim(c) | Command::Kostka(c) => c,
        Command::Basis { common, .. }
        | Command::Mult { common, .. }
        | Command::Lr { common, .. }
        | Command::CharDelta { common, .. }
        | Command::Verify { common, .. }
        | Command::Report { common, .. } => common,
    };
    if let Some(j) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    }
    match &cli.command {
        Command::Dim(c) => dim(c),
        Command::Basis { common, products } => basis(common, *products),
        Command::Mult { common, a, b } => mult(common, a, b),
        Command::Kostka(c) => kostka(c),
        Command::Lr { common, lambda, mu } => lr(common, lambda, mu),
        Command::CharDelta { common, lambda } => char_delta(common, lambda),
        Command::Verify { check, common, early_exit, samples, seed } => {
            let commutation = match samples {
                Some(k) => CommutationMode::Sampled { seed: *seed, samples: *k },
                None => CommutationMode::Exhaustive,
            };
            verify(common, *check, RingelOptions { commutation, early_exit: *early_exit })
        }
        Command::Report { common, early_exit } => {
            report(common, RingelOptions { early_exit: *early_exit, ..RingelOptions::default() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(2)
        }
    }
}
