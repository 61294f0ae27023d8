//! Subcommand dispatch and report emission.
//!
//! Every command produces a JSON value. `--json` prints it inside a fixed
//! envelope; otherwise it is rendered as indented text after a header that
//! echoes the derived constants ζ, ω, η, s and m. JSON objects built here use
//! sorted keys, so identical inputs give byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ncomp_core::algebra::{AlgElem, GroupAlgebra};
use ncomp_core::cqstruct::{eval_poly, ComplementSearch, CqContext, ProjVec, Which, DEFAULT_BUDGET};
use ncomp_core::field::{FieldCtx, FieldElem};
use ncomp_core::unitgroup::{self, Sampler};
use ncomp_core::verifier::{self, Instance, InstanceSummary};

use crate::config::{parse_config, Config};
use crate::error::CliError;
use crate::expr::parse_element;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u64 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "ncomp",
    version,
    about = "Exact computations in F[A x| C_q] and normal-complement certificates"
)]
pub struct Cli {
    /// Instance file with p, f, q, A and action.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of elements an enumeration may materialize.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of random conjugations per variant in sample-disjoint.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    #[value(name = "V")]
    V,
    #[value(name = "V+")]
    VPlus,
    #[value(name = "V*")]
    VStar,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Which {
        match w {
            WhichArg::V => Which::V,
            WhichArg::VPlus => Which::VPlus,
            WhichArg::VStar => Which::VStar,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The primitive idempotents of FC_q with verification flags.
    Idempotents,
    /// Projection vector (u_0, ..., u_{q-1}) of an element of FB.
    Project { expr: String },
    /// Unit, normalized, symmetric, unitary and distinct-projection flags.
    Classify { expr: String },
    /// Polynomial p of degree < q with b = p(u).
    Bpoly { expr: String },
    /// The <b>-orbits on A.
    Orbits,
    /// Class length of a unit of FB under conjugation by 1 + Γ(A).
    ClassLength {
        expr: String,
        /// Also report the class length under the unitary subgroup.
        #[arg(long)]
        unitary: bool,
    },
    /// Cayley transform (1 - l)(1 + l)^{-1} of a skew element of Γ(A).
    Cayley { expr: String },
    /// Inverse Cayley transform of a unitary element of 1 + Γ(A).
    CayleyInv { expr: String },
    /// All elements of V(FB), V₊(FB) or V_*(FB) by projection vector.
    Enumerate {
        #[arg(value_enum)]
        which: WhichArg,
    },
    /// Every complement of <b> in V_*(FB), with a structural scan.
    ComplementSearch,
    /// A unitary unit with q distinct projections built from an order-q unitary unit.
    DistinctUnit {
        #[arg(default_value = "b")]
        expr: String,
    },
    /// Runs the applicable branch of the non-existence argument.
    Verify,
    /// The exact counting certificate.
    Certificate,
    /// Searches random conjugates of b·z₁ for b·z₂ with z₁ ≠ z₂ in C(b).
    SampleDisjoint,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Idempotents => "idempotents",
            Command::Project { .. } => "project",
            Command::Classify { .. } => "classify",
            Command::Bpoly { .. } => "bpoly",
            Command::Orbits => "orbits",
            Command::ClassLength { .. } => "class-length",
            Command::Cayley { .. } => "cayley",
            Command::CayleyInv { .. } => "cayley-inv",
            Command::Enumerate { .. } => "enumerate",
            Command::ComplementSearch => "complement-search",
            Command::DistinctUnit { .. } => "distinct-unit",
            Command::Verify => "verify",
            Command::Certificate => "certificate",
            Command::SampleDisjoint => "sample-disjoint",
        }
    }
}

#[derive(Debug, Serialize)]
struct Provenance {
    seed: u64,
    budget: u64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    instance: InstanceSummary,
    command: &'a str,
    result: Value,
    provenance: Provenance,
}

/// Everything a command needs.
pub struct Ctx {
    pub inst: Instance,
    pub cq: CqContext,
    pub seed: u64,
    pub budget: u64,
    pub trials: u64,
}

impl Ctx {
    pub fn new(cli: &Cli) -> Result<Self, CliError> {
        let path = cli
            .config
            .as_ref()
            .ok_or_else(|| CliError::Parse("--config <PATH> is required".into()))?;
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let config: Config = parse_config(&text)?;
        let inst = config.instance()?;
        let cq = inst.cq()?;
        Ok(Ctx {
            inst,
            cq,
            seed: cli.seed.or(config.seed).unwrap_or(DEFAULT_SEED),
            budget: cli.budget.or(config.budget).unwrap_or(DEFAULT_BUDGET),
            trials: cli.trials.unwrap_or(DEFAULT_TRIALS),
        })
    }

    fn alg(&self) -> &Arc<GroupAlgebra> {
        &self.inst.alg
    }

    fn field(&self) -> &FieldCtx {
        self.inst.field()
    }

    fn parse(&self, expr: &str) -> Result<AlgElem, CliError> {
        parse_element(expr, self.alg())
    }

    /// Integers for prime fields, bracketed coefficient lists otherwise.
    fn fe(&self, x: FieldElem) -> Value {
        let f = self.field();
        if f.degree() == 1 {
            json!(x.raw())
        } else {
            json!(f.display(x).to_string())
        }
    }

    fn proj(&self, v: &ProjVec) -> Value {
        Value::Array(v.0.iter().map(|&x| self.fe(x)).collect())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Runs a command and returns its result object.
pub fn run(cmd: &Command, ctx: &Ctx) -> Result<Value, CliError> {
    match cmd {
        Command::Idempotents => idempotents(ctx),
        Command::Project { expr } => {
            let u = ctx.parse(expr)?;
            let v = ctx.cq.projections(&u)?;
            Ok(json!({
                "element": u.to_string(),
                "projections": ctx.proj(&v),
                "distinct": v.has_distinct_entries(),
            }))
        }
        Command::Classify { expr } => classify(ctx, expr),
        Command::Bpoly { expr } => {
            let u = ctx.parse(expr)?;
            let c = ctx.cq.b_polynomial(&u)?;
            let fb = ctx.cq.alg();
            let u_fb = u.to_fb()?;
            let poly = AlgElem::from_coeffs(fb, c.clone())?;
            Ok(json!({
                "element": u.to_string(),
                "coefficients": c.iter().map(|&x| ctx.fe(x)).collect::<Vec<_>>(),
                "polynomial": poly.to_string().replace('b', "x"),
                "b_equals_p_of_u": eval_poly(&c, &u_fb) == ctx.cq.b(),
                "u_equals_p_of_b": poly == u_fb,
            }))
        }
        Command::Orbits => orbits(ctx),
        Command::ClassLength { expr, unitary } => {
            let x = ctx.parse(expr)?;
            let c = unitgroup::class_length(&x, *unitary)?;
            let p = c.p;
            Ok(json!({
                "element": x.to_string(),
                "p": p,
                "exponent": c.exponent,
                "class_length": format!("{p}^{}", c.exponent),
                "unitary_exponent": c.starred_exponent,
                "unitary_class_length": c.starred_exponent.map(|e| format!("{p}^{e}")),
            }))
        }
        Command::Cayley { expr } => {
            let l = ctx.parse(expr)?;
            let u = unitgroup::cayley(&l)?;
            Ok(json!({
                "input": l.to_string(),
                "image": u.to_string(),
                "unitary": (&u * &u.star()).is_one(),
                "round_trip": unitgroup::cayley_inv(&u)? == l,
            }))
        }
        Command::CayleyInv { expr } => {
            let u = ctx.parse(expr)?;
            let l = unitgroup::cayley_inv(&u)?;
            Ok(json!({
                "input": u.to_string(),
                "image": l.to_string(),
                "skew": l.is_skew(),
                "round_trip": unitgroup::cayley(&l)? == u,
            }))
        }
        Command::Enumerate { which } => {
            let which: Which = (*which).into();
            let elements = ctx.cq.enumerate(which, ctx.budget)?;
            Ok(json!({
                "subgroup": which,
                "order": elements.len(),
                "expected_order": ctx.cq.subgroup_order(which).to_string(),
                "projections": elements.iter().map(|v| ctx.proj(v)).collect::<Vec<_>>(),
            }))
        }
        Command::ComplementSearch => {
            let search = ctx.cq.complement_search(ctx.budget)?;
            let scan = ctx.cq.structural_scan(ctx.budget)?;
            Ok(json!({
                "search": search_json(ctx, &search),
                "scan": scan,
            }))
        }
        Command::DistinctUnit { expr } => {
            let n = ctx.parse(expr)?;
            let v = ctx.cq.distinct_projection_unit(&ctx.cq.projections(&n)?)?;
            let u = ctx.cq.from_projections(&v)?;
            Ok(json!({
                "input": n.to_string(),
                "element": u.to_string(),
                "projections": ctx.proj(&v),
                "distinct": v.distinct_count(),
                "unitary": ctx.cq.classify_unit(&u)?.is_unitary,
            }))
        }
        Command::Verify => {
            let report = verifier::verify(&ctx.inst, ctx.budget)?;
            let m_gt_1 = report.m_gt_1.as_ref().map(|m| {
                json!({
                    "search": search_json(ctx, &m.search),
                    "scan": m.scan,
                    "verdict": m.verdict,
                })
            });
            let verdict = report
                .certificate
                .as_ref()
                .map(|c| c.verdict)
                .or(report.m_gt_1.as_ref().map(|m| m.verdict));
            Ok(json!({
                "analysis": report.analysis,
                "certificate": report.certificate,
                "m_gt_1": m_gt_1,
                "verdict": verdict,
            }))
        }
        Command::Certificate => {
            Ok(serde_json::to_value(verifier::counting_certificate(&ctx.inst)?).expect("certificates serialize"))
        }
        Command::SampleDisjoint => sample_disjoint(ctx),
    }
}

fn idempotents(ctx: &Ctx) -> Result<Value, CliError> {
    let cq = &ctx.cq;
    let f = ctx.field();
    let q = cq.q();
    let es = cq.idempotents();
    let fb = cq.alg();
    let b = cq.b();
    let mut sum = AlgElem::zero(fb);
    let mut rows = Vec::new();
    for (j, e) in es.iter().enumerate() {
        sum = &sum + e;
        let eigen = f.pow(cq.decomp().omega, j as u64);
        let orthogonal = es.iter().enumerate().all(|(k, g)| k == j || (e * g).is_zero());
        rows.push(json!({
            "index": j,
            "element": e.to_string(),
            "idempotent": &(e * e) == e,
            "orthogonal": orthogonal,
            "b_eigenvalue": ctx.fe(eigen),
            "b_action": &b * e == e.scale(eigen),
            "star_index": (q - j) % q,
            "star": e.star() == es[(q - j) % q],
        }));
    }
    let all_ok = rows.iter().all(|r| {
        ["idempotent", "orthogonal", "b_action", "star"]
            .iter()
            .all(|k| r[k] == Value::Bool(true))
    }) && sum.is_one();
    Ok(json!({
        "idempotents": rows,
        "sum_is_one": sum.is_one(),
        "all_verified": all_ok,
    }))
}

fn classify(ctx: &Ctx, expr: &str) -> Result<Value, CliError> {
    let x = ctx.parse(expr)?;
    let inverse = x.invert().ok();
    let is_unit = inverse.is_some();
    let fb = if x.is_in_fb() {
        let class = ctx.cq.classify_unit(&x)?;
        let v = ctx.cq.projections(&x)?;
        Some(json!({ "class": class, "projections": ctx.proj(&v) }))
    } else {
        None
    };
    Ok(json!({
        "element": x.to_string(),
        "augmentation": ctx.fe(x.augmentation()),
        "is_unit": is_unit,
        "is_normalized": is_unit && x.augmentation() == FieldElem::ONE,
        "is_symmetric": x.is_symmetric(),
        "is_skew": x.is_skew(),
        "is_unitary": is_unit && (&x * &x.star()).is_one(),
        "in_one_plus_gamma": x.rho().is_one(),
        "in_fb": fb,
    }))
}

fn orbits(ctx: &Ctx) -> Result<Value, CliError> {
    let g = ctx.inst.group();
    let table = ctx.alg().orbits();
    let list: Vec<Value> = table
        .orbits
        .iter()
        .enumerate()
        .map(|(id, o)| {
            json!({
                "representative": g.a_digits(o.rep),
                "size": o.members.len(),
                "members": o.members.iter().map(|&a| g.a_digits(a)).collect::<Vec<_>>(),
                "inverse_orbit": table.inverse_orbit(g, id),
            })
        })
        .collect();
    Ok(json!({
        "count": list.len(),
        "nontrivial": table.nontrivial_count(),
        "orbits": list,
    }))
}

fn search_json(ctx: &Ctx, s: &ComplementSearch) -> Value {
    let complements: Vec<Value> = s
        .complements
        .iter()
        .map(|c| {
            json!({
                "functional": c.functional,
                "order": c.order,
                "distinct_projection_witness": c.distinct_projection_witness.as_ref().map(|v| ctx.proj(v)),
            })
        })
        .collect();
    json!({
        "group_order": s.group_order,
        "index_q_subgroups": s.index_q_subgroups,
        "complement_count": complements.len(),
        "complements": complements,
        "every_complement_has_witness": s.every_complement_has_witness(),
    })
}

fn sample_disjoint(ctx: &Ctx) -> Result<Value, CliError> {
    let alg = ctx.alg();
    let sampler = Sampler::new(alg, &ctx.cq);
    let mut rng = ctx.rng();
    let span = unitgroup::centralizer_of_b_orbit_form(alg);
    if span.dim() == 0 {
        return Err(CliError::Math("C(b) ∩ (1 + Γ(A)) is trivial".into()));
    }
    let z1 = sampler.unitary_centralizer_of_b(&span, &mut rng);
    let mut z2 = sampler.unitary_centralizer_of_b(&span, &mut rng);
    // With dim C(b) ≥ 1 a distinct draw appears within a few tries.
    for _ in 0..64 {
        if z2 != z1 {
            break;
        }
        z2 = sampler.unitary_centralizer_of_b(&span, &mut rng);
    }
    if z1 == z2 {
        return Err(CliError::Math("could not draw distinct centralizer elements".into()));
    }
    let w = AlgElem::b_pow(alg, 1);
    let mut variants = Vec::new();
    for starred in [false, true] {
        let r = unitgroup::sample_disjoint_classes(&sampler, &w, &z1, &z2, ctx.trials, starred, ctx.seed, &mut rng)?;
        variants.push(serde_json::to_value(r).expect("reports serialize"));
    }
    Ok(json!({
        "w": w.to_string(),
        "z1": z1.to_string(),
        "z2": z2.to_string(),
        "conjugating_group": ["V(FG)", "V_*(FG)"],
        "reports": variants,
    }))
}

/// The `--json` envelope.
pub fn render_json(cmd: &Command, ctx: &Ctx, result: Value) -> String {
    let report = Report {
        instance: ctx.inst.summary(),
        command: cmd.name(),
        result,
        provenance: Provenance {
            seed: ctx.seed,
            budget: ctx.budget,
        },
    };
    serde_json::to_string_pretty(&report).expect("reports serialize")
}

/// Header plus an indented rendering of the result.
pub fn render_text(cmd: &Command, ctx: &Ctx, result: &Value) -> String {
    let s = ctx.inst.summary();
    let mut out = String::new();
    out.push_str(&format!(
        "instance: p={} f={} q={} A={:?} n={} action={:?}\n",
        s.p, s.f, s.q, s.a_factors, s.n, s.action
    ));
    out.push_str(&format!(
        "constants: zeta={} omega={} eta={} s={} m={}\n",
        s.zeta, s.omega, s.eta, s.s, s.m
    ));
    out.push_str(&format!("command: {}\n", cmd.name()));
    text_value(result, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|x| match x {
                    Value::Array(_) | Value::Object(_) => None,
                    other => scalar(other),
                })
                .collect();
            parts.map(|p| format!("({})", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn text_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_value(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_value(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
