use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use widecat::grading::{LineType, WeightData};
use widecat::ktheory::{WeylElement, K0};
use widecat::sheaves::poset::{wid_poset_window, PosetConfig, Scope};
use widecat::sheaves::{self, exc_torsion_perp_decompose, k0_rank, IndecSheaf, SheafJson};
use widecat::tube::{enumerate_wide, TubeWideFingerprint};
use widecat::{verify, Error};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "widecat",
    version,
    about = "Wide subcategories over domestic weighted projective lines"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the type of the weighted projective line.
    Classify(ClassifyArgs),
    /// Dimension of Hom(A, B).
    Hom(PairArgs),
    /// Dimension of Ext^1(A, B).
    Ext(PairArgs),
    /// Check whether the given objects form an exceptional sequence.
    ExcCheck(SeqArgs),
    /// Right perpendicular category of the given objects, restricted to the window.
    Perp(SeqArgs),
    /// Enumerate the wide subcategories of a tube.
    TubeEnum(TubeArgs),
    /// Tube commands.
    Tube {
        #[command(subcommand)]
        cmd: TubeCmd,
    },
    /// Coxeter transformations of exceptional sequences.
    Cox(CoxArgs),
    /// Poset of wide subcategories in a window of line bundle shifts.
    Poset(PosetArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum TubeCmd {
    Enum(TubeArgs),
}

#[derive(Args, Clone)]
struct LineArgs {
    /// Comma separated weights, e.g. `2,3`.
    #[arg(long, default_value = "")]
    weights: String,
    /// JSON config `{"weights": [...], "ordinary_points": [...]}`; overrides `--weights`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Declared ordinary points, comma separated.
    #[arg(long, value_delimiter = ',')]
    universe: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    line: LineArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    line: LineArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
    /// First object, e.g. `O(1;0)`, `S(inf,1)`, `T(a,2)`.
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
}

#[derive(Args)]
struct SeqArgs {
    #[command(flatten)]
    line: LineArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
    #[arg(required = true, allow_hyphen_values = true)]
    objects: Vec<String>,
}

#[derive(Args)]
struct TubeArgs {
    #[arg(long)]
    rank: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args)]
struct CoxArgs {
    #[command(flatten)]
    line: LineArgs,
    /// JSON file holding a sequence, or a list of sequences, of objects.
    #[arg(long)]
    sequence: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Core,
    Full,
}

#[derive(Args)]
struct PosetArgs {
    #[command(flatten)]
    line: LineArgs,
    /// Shift window `a..b` in multiples of `x1`.
    #[arg(long, default_value = "-2..3", allow_hyphen_values = true)]
    window: String,
    #[arg(long, value_enum, default_value = "dot")]
    format: GraphFormat,
    #[arg(long, value_enum, default_value = "core")]
    scope: ScopeArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

enum Failure {
    Usage(String),
    Compute(Error),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) | Error::InvalidWeights(m) => Failure::Usage(m),
            e => Failure::Compute(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(Error::WindowTooSmall(m))) => {
            let report = json!({"schema": SCHEMA, "error": "window_too_small", "detail": m});
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            ExitCode::from(3)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Checks(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Classify(a) => classify(a),
        Cmd::Hom(a) => pair(a, false),
        Cmd::Ext(a) => pair(a, true),
        Cmd::ExcCheck(a) => exc_check(a),
        Cmd::Perp(a) => perp(a),
        Cmd::TubeEnum(a)
        | Cmd::Tube {
            cmd: TubeCmd::Enum(a),
        } => tube_enum(a),
        Cmd::Cox(a) => cox(a),
        Cmd::Poset(a) => poset(a),
        Cmd::Verify(a) => run_verify(a),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn with_schema(v: Value) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    if let Value::Object(m) = v {
        obj.extend(m);
    }
    Value::Object(obj)
}

/// Weight data plus the declared ordinary universe.
fn load_line(a: &LineArgs) -> Result<(WeightData, Vec<String>), Failure> {
    let (w, mut universe) = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("config: {e}")))?;
            let weights: Vec<u32> =
                serde_json::from_value(v.get("weights").cloned().unwrap_or(json!([])))
                    .map_err(|e| Failure::Usage(format!("config weights: {e}")))?;
            let points: Vec<String> =
                serde_json::from_value(v.get("ordinary_points").cloned().unwrap_or(json!([])))
                    .map_err(|e| Failure::Usage(format!("config ordinary_points: {e}")))?;
            (WeightData::new(&weights)?, points)
        }
        None => (WeightData::parse(&a.weights)?, Vec::new()),
    };
    universe.extend(a.universe.iter().cloned());
    universe.sort();
    universe.dedup();
    for p in &universe {
        if w.point_index(p).is_some_and(|i| i < w.declared()) {
            return Err(Failure::Usage(format!(
                "ordinary point {p} clashes with a weighted point"
            )));
        }
    }
    Ok((w, universe))
}

fn parse_objects(w: &WeightData, texts: &[String]) -> Result<Vec<IndecSheaf>, Failure> {
    texts
        .iter()
        .map(|t| IndecSheaf::parse(w, t).map_err(Failure::from))
        .collect()
}

fn signed(n: i64) -> String {
    if n < 0 {
        format!("\u{2212}{}", -n)
    } else {
        n.to_string()
    }
}

fn classify(a: ClassifyArgs) -> Result<String, Failure> {
    let (w, _) = load_line(&a.line)?;
    let inv = w.line_invariants();
    let delta = inv.omega.degree();
    Ok(match a.format {
        TextFormat::Text => format!("{}, \u{3b4}(\u{3c9})={}\n", inv.kind, signed(delta)),
        TextFormat::Json => {
            let rank = (inv.kind == LineType::Domestic).then(|| k0_rank(&w));
            pretty(&with_schema(json!({
                "weights": w.declared_weights(),
                "type": inv.kind,
                "delta_omega": delta,
                "c": inv.c.to_string(),
                "omega": inv.omega.to_string(),
                "k0_rank": rank,
            })))
        }
    })
}

fn pair(a: PairArgs, ext: bool) -> Result<String, Failure> {
    let (w, _) = load_line(&a.line)?;
    let objs = parse_objects(&w, &[a.a, a.b])?;
    let d = if ext {
        sheaves::ext_dim(&w, &objs[0], &objs[1])?
    } else {
        sheaves::hom_dim(&w, &objs[0], &objs[1])?
    };
    Ok(match a.format {
        TextFormat::Text => format!("{d}\n"),
        TextFormat::Json => pretty(&with_schema(json!({
            "a": objs[0].to_json(&w),
            "b": objs[1].to_json(&w),
            if ext { "ext" } else { "hom" }: d,
        }))),
    })
}

fn exc_check(a: SeqArgs) -> Result<String, Failure> {
    let (w, _) = load_line(&a.line)?;
    let objs = parse_objects(&w, &a.objects)?;
    let each: Vec<bool> = objs
        .iter()
        .map(|x| sheaves::is_exceptional(&w, x))
        .collect::<Result<_, _>>()?;
    let seq = sheaves::is_exceptional_sequence(&w, &objs)?;
    Ok(match a.format {
        TextFormat::Text => format!(
            "{}\n",
            if seq {
                "exceptional"
            } else {
                "not exceptional"
            }
        ),
        TextFormat::Json => pretty(&with_schema(json!({
            "objects": objs.iter().map(|x| x.display(&w).to_string()).collect::<Vec<_>>(),
            "exceptional_objects": each,
            "exceptional_sequence": seq,
        }))),
    })
}

/// Bundles in the default window, torsion arcs up to the tube rank, ordinary torsion of length one.
fn window_probes(w: &WeightData, universe: &[String]) -> Vec<IndecSheaf> {
    let mut probes = verify::sample_objects(w);
    probes.retain(|x| !matches!(x, IndecSheaf::OrdinaryTorsion { .. }));
    probes.extend(sheaves::window::ordinary_torsion(universe, 1));
    probes.push(IndecSheaf::ordinary(sheaves::wide::GENERIC_POINT, 1));
    probes
}

fn perp(a: SeqArgs) -> Result<String, Failure> {
    let (w, universe) = load_line(&a.line)?;
    let gens = parse_objects(&w, &a.objects)?;
    let mut members = Vec::new();
    for x in window_probes(&w, &universe) {
        if sheaves::perp_membership(&w, &x, &gens)? {
            members.push(x);
        }
    }
    let decomposition = match gens.as_slice() {
        [e @ IndecSheaf::TorsionArc { .. }] if sheaves::is_exceptional(&w, e)? => {
            Some(exc_torsion_perp_decompose(&w, e, &members)?)
        }
        _ => None,
    };
    Ok(match a.format {
        TextFormat::Text => {
            let mut s = String::new();
            for x in &members {
                let _ = writeln!(s, "{}", x.display(&w));
            }
            s
        }
        TextFormat::Json => pretty(&with_schema(json!({
            "generators": gens.iter().map(|x| x.display(&w).to_string()).collect::<Vec<_>>(),
            "members": members.iter().map(|x| x.display(&w).to_string()).collect::<Vec<_>>(),
            "decomposition": decomposition,
        }))),
    })
}

fn fingerprint_name(f: &TubeWideFingerprint) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let arcs: Vec<String> = f
        .arcs()
        .iter()
        .map(|a| format!("{},{}", a.socle(), a.len()))
        .collect();
    format!("{{{}}}", arcs.join(" "))
}

fn tube_enum(a: TubeArgs) -> Result<String, Failure> {
    if a.rank == 0 {
        return Err(Failure::Usage("rank must be positive".into()));
    }
    let fps = enumerate_wide(a.rank)?;
    Ok(match a.format {
        GraphFormat::Json => pretty(&with_schema(json!({
            "rank": a.rank,
            "count": fps.len(),
            "fingerprints": fps.iter().map(TubeWideFingerprint::to_json).collect::<Vec<_>>(),
        }))),
        GraphFormat::Dot => {
            let n = fps.len();
            let order: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| fps[i].is_subset(&fps[j])).collect())
                .collect();
            let mut s = String::from("digraph tube {\n  rankdir=BT;\n  node [shape=plaintext];\n");
            for (i, j) in sheaves::poset::cover_relations(&order) {
                let _ = writeln!(
                    s,
                    "  \"{}\" -> \"{}\";",
                    fingerprint_name(&fps[i]),
                    fingerprint_name(&fps[j])
                );
            }
            s.push_str("}\n");
            s
        }
    })
}

fn read_sequences(w: &WeightData, v: &Value) -> Result<Vec<Vec<IndecSheaf>>, Failure> {
    let one = |x: &Value| -> Result<IndecSheaf, Failure> {
        match x {
            Value::String(t) => Ok(IndecSheaf::parse(w, t)?),
            other => {
                let j: SheafJson = serde_json::from_value(other.clone())
                    .map_err(|e| Failure::Usage(format!("sequence entry: {e}")))?;
                Ok(IndecSheaf::from_json(w, &j)?)
            }
        }
    };
    let list = match v {
        Value::Object(m) => m
            .get("sequences")
            .or_else(|| m.get("sequence"))
            .cloned()
            .unwrap_or(Value::Null),
        other => other.clone(),
    };
    let Value::Array(items) = list else {
        return Err(Failure::Usage("sequence file must hold an array".into()));
    };
    if items.iter().all(|x| x.is_array()) && !items.is_empty() {
        items
            .iter()
            .map(|s| s.as_array().expect("array").iter().map(one).collect())
            .collect()
    } else {
        Ok(vec![items.iter().map(one).collect::<Result<_, _>>()?])
    }
}

fn cox(a: CoxArgs) -> Result<String, Failure> {
    let (w, _) = load_line(&a.line)?;
    let text = std::fs::read_to_string(&a.sequence)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.sequence.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("sequence file: {e}")))?;
    let seqs = read_sequences(&w, &v)?;
    let k = K0::new(&w)?;
    let c = k.coxeter_element()?;
    let mut elems: Vec<WeylElement> = Vec::new();
    let mut entries = Vec::new();
    for s in &seqs {
        let e = k.cox_of(s)?;
        entries.push(json!({
            "objects": s.iter().map(|x| x.display(&w).to_string()).collect::<Vec<_>>(),
            "exceptional": sheaves::is_exceptional_sequence(&w, s)?,
            "matrix": e.to_ints(),
            "abs_length": k.abs_length(&e)?,
            "below_coxeter": k.nc_leq(&e, &c)?,
        }));
        elems.push(e);
    }
    let nc: Vec<Vec<bool>> = elems
        .iter()
        .map(|u| {
            elems
                .iter()
                .map(|v| k.nc_leq(u, v))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(pretty(&with_schema(json!({
        "k0": k.to_json(),
        "coxeter": c.to_ints(),
        "sequences": entries,
        "nc_leq": nc,
    }))))
}

fn parse_window(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("window {s:?} is not of the form a..b"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn poset(a: PosetArgs) -> Result<String, Failure> {
    let (w, universe) = load_line(&a.line)?;
    let mut cfg = PosetConfig::new(parse_window(&a.window)?);
    cfg.universe = universe;
    cfg.scope = match a.scope {
        ScopeArg::Core => Scope::Core,
        ScopeArg::Full => Scope::Full,
    };
    let p = wid_poset_window(&w, &cfg)?;
    Ok(match a.format {
        GraphFormat::Dot => p.to_dot(),
        GraphFormat::Json => {
            let v = serde_json::to_value(p.to_json(&w)).expect("json");
            pretty(&with_schema(v))
        }
    })
}

fn run_verify(a: VerifyArgs) -> Result<String, Failure> {
    let checks = verify::run_all();
    let ok = checks.iter().all(|c| c.pass);
    let out = match a.format {
        TextFormat::Text => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(
                    s,
                    "[{}] {:>2} {}: {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.detail
                );
            }
            s
        }
        TextFormat::Json => pretty(&with_schema(json!({ "pass": ok, "checks": checks }))),
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Checks(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("-2..3").ok(), Some((-2, 3)));
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("x").is_err());
    }

    #[test]
    fn minus_sign() {
        assert_eq!(signed(-1), "\u{2212}1");
        assert_eq!(signed(4), "4");
    }

    #[test]
    fn sequence_file_shapes() {
        let w = WeightData::new(&[2]).unwrap();
        let single = read_sequences(&w, &json!(["O", "O(1;0)"])).ok().unwrap();
        assert_eq!(single.len(), 1);
        let many = read_sequences(&w, &json!({"sequences": [["O"], ["S(inf,0)"]]}))
            .ok()
            .unwrap();
        assert_eq!(many.len(), 2);
        assert!(read_sequences(&w, &json!(3)).is_err());
    }

    #[test]
    fn fingerprint_names() {
        assert_eq!(fingerprint_name(&TubeWideFingerprint::zero(2)), "0");
        let whole = fingerprint_name(&TubeWideFingerprint::whole(1));
        assert_eq!(whole, "{0,1}");
    }
}
