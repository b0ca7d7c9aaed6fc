//! `wb`: batch commands over the walled Brauer engines. Every command prints
//! one JSON object with sorted keys on stdout.
//!
//! Exit status: 0 on success, 1 when an engine reports an error, 2 on a
//! usage error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;
use walled_brauer::affine::{w_coeff, AffineEngine, OmegaSpec};
use walled_brauer::arith::rational::to_text;
use walled_brauer::arith::MultiPoly;
use walled_brauer::cyclotomic::{self, center_basis, make_params, q_cancellation, CycloEngine, CycloParams};
use walled_brauer::diagram::{DecoratedElement, GenKind, OrSeq, Step};
use walled_brauer::glrep::{self, GlContext};
use walled_brauer::young4::{eigenvalue_tuple, enumerate_y};
use walled_brauer::{Error, Result};

#[derive(Parser)]
#[command(name = "wb", version, about = "Exact computations in the degenerate affine walled Brauer category")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Params {
    /// Size of the first block of gl_{m+n}.
    #[arg(long)]
    m: Option<i64>,
    /// Size of the second block.
    #[arg(long)]
    n: Option<i64>,
    /// Highest weight shift.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<i64>,
}

impl Params {
    fn get(&self) -> Result<CycloParams> {
        match (self.m, self.n, self.delta) {
            (Some(m), Some(n), Some(d)) => make_params(m, n, d),
            _ => Err(Error::Precondition("this command needs --m, --n and --delta".into())),
        }
    }

    fn given(&self) -> bool {
        self.m.is_some() || self.n.is_some() || self.delta.is_some()
    }
}

#[derive(Args, Clone)]
struct ElementInput {
    /// Element JSON, `@file`, or `-` for stdin.
    #[arg(long, conflicts_with = "word")]
    element: Option<String>,
    /// A product of generators such as "e1 y1^2 e1" (rightmost acts first).
    #[arg(long, requires = "seq")]
    word: Option<String>,
    /// Source object of --word, e.g. "1,-1".
    #[arg(long, allow_hyphen_values = true)]
    seq: Option<String>,
}

#[derive(Args, Clone)]
struct Engine {
    /// Omega specification JSON for the affine engine.
    #[arg(long)]
    omega: Option<String>,
    #[command(flatten)]
    params: Params,
    /// Reduce in the level-two cyclotomic quotient (needs --m, --n, --delta).
    #[arg(long)]
    cyclotomic: bool,
}

#[derive(Args, Clone)]
struct Module {
    /// Trivial module of gl_N.
    #[arg(long = "big-n", id = "big_n")]
    big_n: Option<usize>,
    #[command(flatten)]
    params: Params,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an element.
    Reduce {
        #[command(flatten)]
        input: ElementInput,
        #[command(flatten)]
        engine: Engine,
    },
    /// Product left·right (right acts first).
    Multiply {
        /// Element JSON, `@file`, or `-`.
        #[arg(long)]
        left: String,
        /// Element JSON, `@file`, or `-`.
        #[arg(long)]
        right: String,
        #[command(flatten)]
        engine: Engine,
    },
    /// Cyclotomic basis monomials of End(A).
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
    /// Dimension of the cyclotomic End(A).
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
    /// Sparse multiplication table of the cyclotomic End(A).
    StructConsts {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
    /// Coefficients of the bubble series W_i for object A.
    Wseries {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        /// Position (1-based) with a_i != a_{i+1}.
        #[arg(long)]
        i: usize,
        /// Highest coefficient index.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        engine: Engine,
    },
    /// omega_k for the parabolic parameters.
    Omega {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        k: usize,
    },
    /// Whether a polynomial in the dots is central in End(A).
    CenterTest {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        engine: Engine,
    },
    /// Basis of invariant, Q-cancelling polynomials up to a degree.
    CenterBasis {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        max_deg: u32,
    },
    /// Q-cancellation of a polynomial for a pair of positions.
    Qcancel {
        #[arg(long)]
        poly: String,
        /// Two 1-based positions, e.g. "1,2".
        #[arg(long)]
        pair: String,
        /// Number of variables (defaults to the largest index used).
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Check every defining relation on a module.
    VerifyRelations {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        module: Module,
        /// Largest dot power in bubble instances.
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        /// Largest Verma degree of test vectors.
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Check the Casimir identities behind the action.
    VerifyS8 {
        #[command(flatten)]
        module: Module,
        /// Longest object checked.
        #[arg(long, default_value_t = 3)]
        len: usize,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Joint generalized eigenvalues of the dots over composition factors.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
    /// Sequences of 4-Young diagrams for A.
    YoungEnum {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
    /// Rank of the cyclotomic basis acting on the parabolic Verma tensor space.
    Faithfulness {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[command(flatten)]
        params: Params,
    },
}

fn read_json(src: &str) -> Result<Value> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
        s
    } else if let Some(path) = src.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    } else {
        src.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

fn parse_word(a: &OrSeq, word: &str, engine: &AffineEngine) -> Result<DecoratedElement> {
    let mut steps = Vec::new();
    for tok in word.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let (head, power) = match tok.split_once('^') {
            Some((h, p)) => (h, p.parse::<usize>().map_err(|_| Error::Parse(format!("bad power in {tok:?}")))?),
            None => (tok, 1),
        };
        let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("missing index in {tok:?}")))?;
        let kind = GenKind::parse(&head[..split])?;
        let i: usize = head[split..].parse().map_err(|_| Error::Parse(format!("bad index in {tok:?}")))?;
        if i == 0 {
            return Err(Error::Parse("generator indices start at 1".into()));
        }
        steps.extend(std::iter::repeat_n(Step::new(kind, i - 1), power));
    }
    steps.reverse();
    engine.word_element(a, &steps)
}

fn omega_of(engine: &Engine) -> Result<OmegaSpec> {
    match (&engine.omega, engine.params.given()) {
        (Some(s), _) => OmegaSpec::from_json(&read_json(s)?),
        (None, true) => Ok(engine.params.get()?.omega),
        (None, false) => Err(Error::Precondition("give --omega or --m/--n/--delta".into())),
    }
}

struct Reducer {
    affine: AffineEngine,
    cyclo: Option<CycloEngine>,
}

impl Reducer {
    fn new(e: &Engine) -> Result<Self> {
        if e.cyclotomic {
            let c = CycloEngine::new(e.params.get()?);
            Ok(Reducer { affine: AffineEngine::new(c.params.omega.clone()), cyclo: Some(c) })
        } else {
            Ok(Reducer { affine: AffineEngine::new(omega_of(e)?), cyclo: None })
        }
    }

    fn reduce(&self, x: &DecoratedElement) -> Result<DecoratedElement> {
        match &self.cyclo {
            Some(c) => c.cyclo_reduce(x),
            None => self.affine.reduce(x),
        }
    }
}

fn element(input: &ElementInput, affine: &AffineEngine) -> Result<DecoratedElement> {
    match (&input.element, &input.word, &input.seq) {
        (Some(e), _, _) => DecoratedElement::from_json(&read_json(e)?),
        (None, Some(w), Some(s)) => parse_word(&OrSeq::parse(s)?, w, affine),
        _ => Err(Error::Precondition("give --element, or --word with --seq".into())),
    }
}

fn module_context(m: &Module) -> Result<GlContext> {
    match (m.big_n, m.params.given()) {
        (Some(n), false) => GlContext::trivial(n),
        (None, true) => {
            let p = m.params.get()?;
            GlContext::parabolic(p.m as usize, p.n as usize, p.delta)
        }
        _ => Err(Error::Precondition("give either --big-n or --m/--n/--delta".into())),
    }
}

fn max_var_index(s: &str) -> usize {
    let b = s.as_bytes();
    let mut best = 0;
    for (i, &c) in b.iter().enumerate() {
        if c == b'y' {
            let digits: String = s[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            best = best.max(digits.parse().unwrap_or(0));
        }
    }
    best
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| Error::Parse(format!("bad pair {s:?}")))?,
            b.parse().map_err(|_| Error::Parse(format!("bad pair {s:?}")))?,
        )),
        _ => Err(Error::Parse(format!("pair must look like 1,2, got {s:?}"))),
    }
}

fn run(cmd: Command) -> Result<Value> {
    Ok(match cmd {
        Command::Reduce { input, engine } => {
            let r = Reducer::new(&engine)?;
            let x = element(&input, &r.affine)?;
            json!({"element": r.reduce(&x)?.to_json()})
        }
        Command::Multiply { left, right, engine } => {
            let r = Reducer::new(&engine)?;
            let x = DecoratedElement::from_json(&read_json(&left)?)?;
            let y = DecoratedElement::from_json(&read_json(&right)?)?;
            json!({"element": r.reduce(&r.affine.multiply(&x, &y)?)?.to_json()})
        }
        Command::Basis { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            let p = params.get()?;
            let b: Vec<Value> = cyclotomic::basis(&a).iter().map(|m| m.to_json()).collect();
            let mut out = json!({"basis": b, "dim": b.len()});
            if let Some(w) = cyclotomic::basis_warning(&a, &p) {
                out["warning"] = json!(w);
            }
            out
        }
        Command::Dim { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            params.get()?;
            json!({"dim": cyclotomic::basis(&a).len()})
        }
        Command::StructConsts { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            let e = CycloEngine::new(params.get()?);
            let (b, table) = e.structure_constants(&a)?;
            let t: Vec<Value> = table.iter().map(|(i, j, k, c)| json!([i, j, k, to_text(c)])).collect();
            json!({"basis": b.iter().map(|m| m.to_json()).collect::<Vec<_>>(), "constants": t})
        }
        Command::Wseries { seq, i, k, engine } => {
            let a = OrSeq::parse(&seq)?;
            let om = omega_of(&engine)?;
            let coeffs: Result<Vec<String>> = (0..=k).map(|j| Ok(w_coeff(&a, i, j, &om)?.to_string())).collect();
            json!({"coeffs": coeffs?})
        }
        Command::Omega { params, k } => {
            let p = params.get()?;
            json!({"omega": to_text(&p.omega.omega(k)?)})
        }
        Command::CenterTest { poly, seq, engine } => {
            let a = OrSeq::parse(&seq)?;
            let p = MultiPoly::parse(&poly, a.len())?;
            let params = if engine.params.given() { engine.params.get()? } else { make_params(a.len() as i64 + 1, a.len() as i64 + 1, 0)? };
            let e = CycloEngine::new(params);
            let central = if engine.cyclotomic { e.is_central_in_quotient(&p, &a)? } else { e.is_central(&p, &a)? };
            json!({"result": central})
        }
        Command::CenterBasis { seq, max_deg } => {
            let a = OrSeq::parse(&seq)?;
            json!({"basis": center_basis(&a, max_deg).iter().map(|p| p.to_string()).collect::<Vec<_>>()})
        }
        Command::Qcancel { poly, pair, nvars } => {
            let (i, j) = parse_pair(&pair)?;
            let nv = nvars.unwrap_or_else(|| max_var_index(&poly).max(i).max(j));
            let p = MultiPoly::parse(&poly, nv)?;
            json!({"result": q_cancellation(&p, i, j)?})
        }
        Command::VerifyRelations { seq, module, kmax, max_deg } => {
            let a = OrSeq::parse(&seq)?;
            let ctx = module_context(&module)?;
            let deg = if ctx.nsymbols() == 0 { 0 } else { max_deg };
            let rep = glrep::verify_relations(&ctx, &a, kmax, deg)?;
            json!({"passed": glrep::report_passed(&rep), "report": glrep::report_json(&rep)})
        }
        Command::VerifyS8 { module, len, max_deg } => {
            let ctx = module_context(&module)?;
            let deg = if ctx.nsymbols() == 0 { 0 } else { max_deg };
            let rep = glrep::verify_section8(&ctx, len, deg)?;
            json!({"passed": glrep::report_passed(&rep), "report": glrep::report_json(&rep)})
        }
        Command::Spectrum { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            let p = params.get()?;
            let ctx = GlContext::parabolic(p.m as usize, p.n as usize, p.delta)?;
            let sp = glrep::spectrum(&ctx, &a)?;
            json!({"eigenvalues": sp.iter().map(|t| t.iter().map(to_text).collect::<Vec<_>>()).collect::<Vec<_>>()})
        }
        Command::YoungEnum { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            let p = params.get()?;
            let seqs = enumerate_y(&a, p.m as usize, p.n as usize, p.delta);
            let items: Vec<Value> = seqs
                .iter()
                .map(|s| {
                    let mut v = s.to_json();
                    v["eigenvalues"] = json!(eigenvalue_tuple(s).iter().map(to_text).collect::<Vec<_>>());
                    v
                })
                .collect();
            json!({"count": items.len(), "sequences": items})
        }
        Command::Faithfulness { seq, params } => {
            let a = OrSeq::parse(&seq)?;
            let p = params.get()?;
            json!({"rank": glrep::faithfulness_rank(&a, &p)?, "dim": cyclotomic::basis(&a).len()})
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("WB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(v) => {
            println!("{}", serde_json::to_string(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            ExitCode::from(1)
        }
    }
}
