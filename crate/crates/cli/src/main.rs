//! `zhu` — command-line front end.
//!
//! Exit codes: 0 when everything verified, 1 on a failed verification or a
//! counterexample, 2 on usage errors (bad flags, parse errors, violated
//! preconditions).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zhu::arith::{parse_scalar, Param, Rational};
use zhu::identities::{self, RangeSpec};
use zhu::modules::{GradedModule, ModuleKind};
use zhu::presentations::{self, builtin, PresentationSpec, VerifyOptions, LOWER_ORDER_PRODUCTS};
use zhu::suites;
use zhu::voa::{Element, Space, VoaPresentation};
use zhu::zhu::{CertificateFile, Membership, Separation, SpanOptions, ZhuContext};

#[derive(Parser)]
#[command(name = "zhu", version, about = "Exact computation in level-n Zhu algebras of the Heisenberg and Virasoro VOAs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Vertex algebra.
    #[arg(long, short = 'p', global = true, value_enum, default_value = "heisenberg")]
    presentation: Pres,
    /// Level n.
    #[arg(long, short = 'n', global = true, default_value_t = 0)]
    level: u32,
    /// Specialize a parameter in the output, e.g. `--bind c=1/2` (c, h, lambda).
    #[arg(long = "bind", global = true, value_name = "PARAM=VALUE")]
    bindings: Vec<String>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pres {
    Heisenberg,
    Virasoro,
}

impl From<Pres> for VoaPresentation {
    fn from(p: Pres) -> Self {
        match p {
            Pres::Heisenberg => VoaPresentation::Heisenberg,
            Pres::Virasoro => VoaPresentation::Virasoro,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Module {
    Fock,
    Verma,
}

impl From<Module> for ModuleKind {
    fn from(m: Module) -> Self {
        match m {
            Module::Fock => ModuleKind::Fock,
            Module::Verma => ModuleKind::Verma,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the PBW normal form of an expression.
    Normalize {
        expr: String,
        /// Read the expression in a module instead of V.
        #[arg(long, value_enum)]
        module: Option<Module>,
    },
    /// `w_j v` in vertex indexing, for a state `w` and a target `v`.
    Mode {
        #[arg(allow_negative_numbers = true)]
        j: i64,
        state: String,
        target: String,
        /// The target lives in this module.
        #[arg(long, value_enum)]
        module: Option<Module>,
    },
    /// `u ∘ₙ v`.
    Circle { u: String, v: String },
    /// `u *ₙ v`.
    Star { u: String, v: String },
    /// Rewrite into the spanning normal form modulo Oₙ(V).
    Reduce {
        expr: String,
        /// Also print the certificate for `input − output ∈ Oₙ(V)`.
        #[arg(long)]
        certificate: bool,
    },
    /// Search for a certificate of membership in Oₙ(V).
    Membership {
        expr: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Largest weight of the left operand of circle products.
        #[arg(long)]
        max_u: Option<i64>,
        /// Write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a presentation by builtin name or spec file.
    VerifyPresentation {
        spec: String,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        max_u: Option<i64>,
        #[arg(long)]
        no_zero_modes: bool,
        #[arg(long)]
        no_descent: bool,
        /// Write one certificate file per relation into this directory.
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// List the builtin presentations or print one as a spec file.
    Presentations { name: Option<String> },
    /// Filtered memberships `p ∈ O₂(V) + F_r(𝟏)` for the level-two products.
    LowerOrder {
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Brute-force the binomial identities.
    VerifyIdentities {
        #[arg(long)]
        identity: Option<String>,
        #[command(flatten)]
        ranges: RangeFlags,
    },
    /// Decide whether `(L(-1)+L(0))u ∈ Oₙ°(V)`.
    Separation {
        expr: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Matrix of the zero mode `o(v)` on a graded piece of a module.
    ZeroMode {
        expr: String,
        #[arg(long, value_enum)]
        module: Module,
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Re-verify a certificate file exactly.
    Recheck { certificate: PathBuf },
    /// Run the seeded randomized property suites.
    Properties {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct RangeFlags {
    #[arg(long)]
    n_min: Option<i64>,
    #[arg(long)]
    n_max: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k_max: Option<i64>,
    /// `m` runs up to `2n+k+m_span`.
    #[arg(long)]
    m_span: Option<i64>,
    #[arg(long)]
    r_max: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    s_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    s_max: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    j_max: Option<i64>,
}

impl RangeFlags {
    fn spec(&self) -> RangeSpec {
        let d = RangeSpec::default();
        RangeSpec {
            n: (self.n_min.unwrap_or(d.n.0), self.n_max.unwrap_or(d.n.1)),
            k: (self.k_min.unwrap_or(d.k.0), self.k_max.unwrap_or(d.k.1)),
            m_span: self.m_span.unwrap_or(d.m_span),
            r: (d.r.0, self.r_max.unwrap_or(d.r.1)),
            s: (self.s_min.unwrap_or(d.s.0), self.s_max.unwrap_or(d.s.1)),
            cj_j: (self.j_min.unwrap_or(d.cj_j.0), self.j_max.unwrap_or(d.cj_j.1)),
        }
    }
}

/// How a command ended.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<zhu::Error> for Failure {
    fn from(e: zhu::Error) -> Self {
        match e {
            zhu::Error::Arith(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Env {
    pres: VoaPresentation,
    level: u32,
    bindings: Vec<(Param, Rational)>,
    json: bool,
}

impl Env {
    fn ctx(&self) -> ZhuContext {
        ZhuContext::new(self.pres, self.level)
    }

    fn bind(&self, e: &Element) -> Result<Element, Failure> {
        Ok(e.substitute(&self.bindings)?)
    }

    fn emit(&self, text: impl std::fmt::Display, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else {
            println!("{text}");
        }
    }
}

fn parse_bindings(raw: &[String]) -> Result<Vec<(Param, Rational)>, Failure> {
    raw.iter()
        .map(|b| {
            let (name, value) = b.split_once('=').ok_or_else(|| Failure::Usage(format!("binding {b:?} is not PARAM=VALUE")))?;
            let param = Param::ALL
                .into_iter()
                .find(|p| p.name() == name.trim())
                .ok_or_else(|| Failure::Usage(format!("unknown parameter {name:?}; expected c, h or lambda")))?;
            let value = parse_scalar(value.trim()).map_err(|e| Failure::Usage(format!("binding {b:?}: {e}")))?;
            let value = value.as_rational().ok_or_else(|| Failure::Usage(format!("binding {b:?} must be a rational number")))?;
            Ok((param, value))
        })
        .collect()
}

/// Parses with a caret under the failing position.
fn parse_in(space: &Space, src: &str) -> Result<Element, Failure> {
    space.parse(src).map_err(|e| match e {
        zhu::Error::Parse { pos, msg } => Failure::Usage(format!("cannot parse expression at byte {pos}: {msg}\n  {src}\n  {}^", " ".repeat(pos.min(src.len())))),
        other => other.into(),
    })
}

fn module_space(m: Option<Module>, pres: VoaPresentation) -> Result<Space, Failure> {
    match m {
        None => Ok(Space::vacuum(pres)),
        Some(m) => {
            let kind = ModuleKind::from(m);
            if kind.presentation() != pres {
                return Err(Failure::Usage(format!("module {} needs --presentation {}", kind_name(kind), kind.presentation().name())));
            }
            Ok(match kind {
                ModuleKind::Fock => Space::fock(),
                ModuleKind::Verma => Space::verma(),
            })
        }
    }
}

fn kind_name(k: ModuleKind) -> &'static str {
    match k {
        ModuleKind::Fock => "fock",
        ModuleKind::Verma => "verma",
    }
}

fn element_json(space: &Space, e: &Element) -> Value {
    json!({
        "presentation": space.presentation().name(),
        "element": space.render(e),
        "terms": e.len(),
    })
}

fn load_spec(name: &str) -> Result<PresentationSpec, Failure> {
    if let Some(s) = builtin(name) {
        return Ok(s);
    }
    let path = PathBuf::from(name);
    if !path.exists() {
        let names: Vec<String> = presentations::builtin_specs().into_iter().map(|s| s.name).collect();
        return Err(Failure::Usage(format!("{name:?} is neither a builtin ({}) nor a file", names.join(", "))));
    }
    let src = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(PresentationSpec::from_json(&src)?)
}

fn write_json(path: &std::path::Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let env = Env { pres: g.presentation.into(), level: g.level, bindings: parse_bindings(&g.bindings)?, json: g.format == Format::Json };
    match &cli.cmd {
        Cmd::Normalize { expr, module } => {
            let space = module_space(*module, env.pres)?;
            let e = env.bind(&parse_in(&space, expr)?)?;
            env.emit(space.render(&e), element_json(&space, &e));
            Ok(true)
        }
        Cmd::Mode { j, state, target, module } => {
            let v_space = Space::vacuum(env.pres);
            let w = parse_in(&v_space, state)?;
            let space = module_space(*module, env.pres)?;
            let v = parse_in(&space, target)?;
            let out = env.bind(&space.mode(&w, *j, &v))?;
            env.emit(space.render(&out), element_json(&space, &out));
            Ok(true)
        }
        Cmd::Circle { u, v } | Cmd::Star { u, v } => {
            let ctx = env.ctx();
            let (u, v) = (parse_in(ctx.space(), u)?, parse_in(ctx.space(), v)?);
            let out = match &cli.cmd {
                Cmd::Circle { .. } => ctx.circle(&u, &v)?,
                _ => ctx.star(&u, &v)?,
            };
            let out = env.bind(&out)?;
            let mut j = element_json(ctx.space(), &out);
            j["level"] = json!(env.level);
            env.emit(ctx.render(&out), j);
            Ok(true)
        }
        Cmd::Reduce { expr, certificate } => {
            let ctx = env.ctx();
            let v = parse_in(ctx.space(), expr)?;
            let red = ctx.spanning_normal_form_certified(&v);
            let ok = red.certificate.recheck(&ctx);
            let out = env.bind(&red.output)?;
            let mut j = element_json(ctx.space(), &out);
            j["level"] = json!(env.level);
            j["certificate_rechecked"] = json!(ok);
            let mut text = ctx.render(&out);
            if *certificate {
                let file = red.certificate.to_file(&ctx);
                text = format!("{text}\n{}", serde_json::to_string_pretty(&file).expect("serializable"));
                j["certificate"] = serde_json::to_value(&file).expect("serializable");
            }
            env.emit(text, j);
            Ok(ok)
        }
        Cmd::Membership { expr, bound, max_u, out } => {
            let ctx = env.ctx();
            let v = parse_in(ctx.space(), expr)?;
            let mut opts = SpanOptions::with_bound(*bound);
            opts.max_u_weight = *max_u;
            match ctx.membership_with(&v, &opts) {
                Membership::Found(cert) => {
                    let ok = cert.recheck(&ctx);
                    let file = cert.to_file(&ctx);
                    if let Some(p) = out {
                        write_json(p, &file)?;
                    }
                    let j = json!({"found": true, "rechecked": ok, "vectors": cert.len(), "certificate": file});
                    env.emit(format!("in O_{}(V): certificate with {} spanning vectors, recheck {}", env.level, cert.len(), verdict(ok)), j);
                    Ok(ok)
                }
                Membership::NotFoundUpToBound(b) => {
                    env.emit(format!("not found up to bound {b} (not a proof of non-membership)"), json!({"found": false, "bound": b}));
                    Ok(false)
                }
            }
        }
        Cmd::VerifyPresentation { spec, bound, max_u, no_zero_modes, no_descent, certificates } => {
            let mut spec = load_spec(spec)?;
            if max_u.is_some() {
                spec.max_u_weight = *max_u;
            }
            let opts = VerifyOptions { bound: *bound, zero_modes: !no_zero_modes, descent: !no_descent, keep_certificates: true };
            let report = presentations::verify_presentation_with(&spec, &opts)?;
            if let Some(dir) = certificates {
                std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                for (i, r) in report.relations.iter().enumerate() {
                    if let Some(c) = &r.certificate {
                        write_json(&dir.join(format!("{}_{i}.json", report.name)), c)?;
                    }
                }
            }
            let mut text = format!("{} (level {}): {}\n", report.name, report.level, report.expected_notes);
            for r in &report.relations {
                text += &format!(
                    "  {:<45} weight {:>3}  terms {:>5}  member {}  zero modes {}  descent {}  {} ms\n",
                    r.relation,
                    r.weight,
                    r.terms,
                    verdict(r.certified),
                    if r.zero_modes.degrees.is_empty() { "skipped" } else { verdict(r.zero_modes.passed()) },
                    r.descent.map_or("n/a", verdict),
                    r.millis
                );
            }
            text += &format!("  {}\n{}", report.limitation, if report.passed() { "all relations verified" } else { "VERIFICATION FAILED" });
            let mut j = serde_json::to_value(&report).expect("serializable");
            if let Some(rel) = j["relations"].as_array_mut() {
                for r in rel {
                    r.as_object_mut().expect("object").remove("certificate");
                }
            }
            j["passed"] = json!(report.passed());
            env.emit(text, j);
            Ok(report.passed())
        }
        Cmd::Presentations { name } => match name {
            None => {
                let specs = presentations::builtin_specs();
                let text = specs.iter().map(|s| format!("{:<16} level {}  {}", s.name, s.level, s.expected_notes)).collect::<Vec<_>>().join("\n");
                let j = json!(specs.iter().map(|s| &s.name).collect::<Vec<_>>());
                env.emit(text, j);
                Ok(true)
            }
            Some(n) => {
                let s = load_spec(n)?;
                println!("{}", s.to_json());
                Ok(true)
            }
        },
        Cmd::LowerOrder { bound } => {
            let spec = builtin("heis_A2").expect("shipped");
            let products: Vec<(&str, usize)> = LOWER_ORDER_PRODUCTS.iter().copied().filter(|(_, r)| *r > 0).collect();
            let entries = presentations::lower_order_check(&spec, &products, *bound)?;
            let ok = entries.iter().all(|e| e.certified);
            let text = entries.iter().map(|e| format!("{:<14} ∈ O_2 + F_{}: {}", e.product, e.filtration, verdict(e.certified))).collect::<Vec<_>>().join("\n");
            let j = json!(entries.iter().map(|e| json!({"product": e.product, "filtration": e.filtration, "certified": e.certified})).collect::<Vec<_>>());
            env.emit(text, j);
            Ok(ok)
        }
        Cmd::VerifyIdentities { identity, ranges } => {
            let r = ranges.spec();
            let reports = match identity {
                Some(name) => vec![identities::check_by_name(name, &r)?],
                None => identities::check_all(&r)?,
            };
            let ok = reports.iter().all(|r| r.passed());
            let text = reports
                .iter()
                .map(|r| format!("{:<12} {:>7} tuples  {} counterexamples", r.identity, r.tuples_checked, r.counterexamples.len()))
                .collect::<Vec<_>>()
                .join("\n");
            let j = if reports.len() == 1 { serde_json::to_value(&reports[0]) } else { serde_json::to_value(&reports) }.expect("serializable");
            env.emit(text, j);
            Ok(ok)
        }
        Cmd::Separation { expr, bound } => {
            let ctx = env.ctx();
            let u = parse_in(ctx.space(), expr)?;
            let verdict_json;
            let text;
            let ok = match ctx.ol_separation_check(&u, *bound)? {
                Separation::Separated { weight, floor, component } => {
                    text = format!("Separated: (L(-1)+L(0))u has a component of weight {weight} < {floor}, below every circle product: {}", ctx.render(&component));
                    verdict_json = json!({"verdict": "separated", "weight": weight, "floor": floor, "component": ctx.render(&component)});
                    true
                }
                Separation::FoundMembership(cert) => {
                    let ok = cert.recheck(&ctx);
                    text = format!("FoundMembership: (L(-1)+L(0))u lies in O_{}°(V); {} circle-type vectors, recheck {}", env.level, cert.len(), verdict(ok));
                    verdict_json = json!({"verdict": "found_membership", "rechecked": ok, "certificate": cert.to_file(&ctx)});
                    ok
                }
                Separation::NotSeparatedUpToBound(b) => {
                    text = format!("NotSeparatedUpToBound({b}): no proof and no certificate within the search window");
                    verdict_json = json!({"verdict": "not_separated_up_to_bound", "bound": b});
                    false
                }
            };
            env.emit(text, verdict_json);
            Ok(ok)
        }
        Cmd::ZeroMode { expr, module, degree } => {
            let m = GradedModule::new((*module).into());
            let ctx = ZhuContext::new(m.presentation(), 0);
            let v = parse_in(ctx.space(), expr)?;
            let mut z = m.zero_mode(&v, *degree);
            if !env.bindings.is_empty() {
                for i in 0..z.dim() {
                    for j in 0..z.dim() {
                        let c = z.entry(i, j).substitute(&env.bindings).map_err(|e| Failure::Verification(e.to_string()))?;
                        z.matrix.set(i, j, c);
                    }
                }
            }
            let j = z.to_json(&m, &ctx.render(&v));
            let text = j.basis.iter().zip(&j.matrix).map(|(b, row)| format!("{b:>24} | {}", row.join("  "))).collect::<Vec<_>>().join("\n");
            env.emit(text, serde_json::to_value(&j).expect("serializable"));
            Ok(true)
        }
        Cmd::Recheck { certificate } => {
            let src = std::fs::read_to_string(certificate).map_err(|e| Failure::Usage(format!("{}: {e}", certificate.display())))?;
            let file: CertificateFile = serde_json::from_str(&src).map_err(|e| Failure::Usage(format!("{}: {e}", certificate.display())))?;
            let ok = file.recheck()?;
            env.emit(format!("recheck {}", verdict(ok)), json!({"rechecked": ok, "level": file.level, "presentation": file.presentation.name()}));
            Ok(ok)
        }
        Cmd::Properties { suite, cases, seed } => {
            let seed = seed.unwrap_or_else(|| {
                eprintln!("using default seed {}", suites::DEFAULT_SEED);
                suites::DEFAULT_SEED
            });
            let reports = match suite {
                Some(s) => vec![suites::run_suite(s, *cases, seed)?],
                None => suites::run_all(*cases, seed)?,
            };
            let ok = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                text += &format!("{:<18} seed {} {:>5} cases  {} failures  {} ms\n", r.suite, r.seed, r.cases, r.failures.len(), r.millis);
                for f in &r.failures {
                    text += &format!("    {f}\n");
                }
            }
            env.emit(text.trim_end(), serde_json::to_value(&reports).expect("serializable"));
            Ok(ok)
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}
