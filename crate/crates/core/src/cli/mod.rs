//! The `capitulation` command line: one subcommand per pipeline, JSON on stdout.
//!
//! Exit status is 0 when every recorded check passes, 1 when some check fails
//! (the document is still printed) and 2 on invalid input.

mod corpus;
pub mod json;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::ring::Ring;
use crate::capitulation::capitulation_extension;
use crate::cokernel::{joint_residue_check, unit_cokernel};
use crate::error::{Error, Result};
use crate::field::ideal::{is_principal_by_search, Ideal, PrincipalSearch};
use crate::field::spec::{FieldElement, NumberFieldSpec};
use crate::kernel_group::{capitulation_triviality_check, milnor_kernel_group, split_group_algebra};
use crate::lambda::{extend_scalars, lambda_order, matrix_ring_iso_certificate, verify_ring_closure, Embedding};
use crate::noncap::{exclusion_predicate, injectivity_predicate, NonCapQuery};

pub const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "capitulation", version, about = "Exact capitulation certificates")]
struct Cli {
    /// Pretty-print with this many spaces of indentation.
    #[arg(long, global = true)]
    json_indent: Option<usize>,
    /// Record wall-clock time in the output (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unit u - mX congruent to u mod m in an extension unramified above m.
    CapitulateUnit {
        /// `Q` or a path to a TOML field description.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        modulus: u64,
        /// Comma-separated coefficients in the power basis.
        #[arg(long, allow_hyphen_values = true)]
        residue: String,
        /// Include the inverse of the unit (large for big t).
        #[arg(long)]
        with_inverse: bool,
    },
    /// (O_F/m)^x modulo the global units, optionally capitulating each generator.
    UnitCokernel {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        capitulate: bool,
    },
    /// Kernel group D(O_F[G]) for G a product of cyclic groups.
    KernelGroup {
        #[arg(long, default_value = "Q")]
        field: String,
        /// Cyclic orders, e.g. 2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        /// Defaults to |G|.
        #[arg(long)]
        modulus: Option<u64>,
        /// Root of unity of order exp(G); defaults to a declared one.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[arg(long)]
        check_capitulation: bool,
    },
    /// The order Lambda_{a,r}, its scalar extension and matrix-ring certificate.
    LambdaOrder {
        #[arg(long, default_value = "Q")]
        field: String,
        /// Ideal generators, each comma-separated; repeat the flag or separate generators by ';'.
        #[arg(long, allow_hyphen_values = true, required = true)]
        ideal: Vec<String>,
        #[arg(long)]
        size: usize,
        /// Field to extend scalars to.
        #[arg(long)]
        extend: Option<String>,
        /// Image of the base field's power-basis generator in the extension.
        #[arg(long, allow_hyphen_values = true)]
        embedding: Option<String>,
        /// Generator of the (extended) ideal used as conjugator.
        #[arg(long, allow_hyphen_values = true)]
        generator: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        search_bound: u64,
    },
    /// Divisibility predicates excluding capitulation.
    Noncap {
        #[arg(long)]
        class_order: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        class_group_order: Option<u64>,
        /// Withdraw the assertion that O_L is free over O_F.
        #[arg(long)]
        not_free: bool,
    },
    /// Replays the built-in example corpus.
    Corpus {
        /// Only cases whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result payload plus named checks.
struct Outcome {
    field: Option<Value>,
    result: Value,
    checks: Vec<(String, bool)>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn render(v: &Value, indent: Option<usize>) -> String {
    match indent {
        None => serde_json::to_string(v).expect("serializable"),
        Some(n) => {
            let pad = vec![b' '; n];
            let mut out = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut out, serde_json::ser::PrettyFormatter::with_indent(&pad));
            v.serialize(&mut ser).expect("serializable");
            String::from_utf8(out).expect("utf-8")
        }
    }
}

pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<Value> = argv.iter().skip(1).map(|a| Value::String(a.to_string_lossy().into_owned())).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) { 0 } else { 2 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let mut doc = json!({ "schema": SCHEMA, "command": echo });
    let code = match dispatch(&cli.command) {
        Ok(o) => {
            let passed = o.passed();
            doc["field"] = o.field.unwrap_or(Value::Null);
            doc["result"] = o.result;
            doc["checks"] = json::checks(o.checks.iter().map(|(k, v)| (k.as_str(), *v)));
            doc["passed"] = Value::Bool(passed);
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            doc["error"] = json!({ "kind": e.kind(), "message": e.to_string() });
            2
        }
    };
    if cli.timing {
        doc["timing_ms"] = json::num(start.elapsed().as_millis());
    }
    let stderr = doc.get("error").map(|e| format!("error: {}\n", e["message"].as_str().unwrap_or(""))).unwrap_or_default();
    Output { code, stdout: render(&doc, cli.json_indent) + "\n", stderr }
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Input(format!("not an integer: {t:?}"))))
        .collect()
}

/// Comma-separated power-basis coefficients, zero-padded to the degree.
pub fn parse_element(field: &NumberFieldSpec, s: &str) -> Result<FieldElement> {
    let mut v = parse_ints(s)?;
    if v.len() > field.degree() {
        return Err(Error::Input(format!("{s:?} has more than {} coefficients", field.degree())));
    }
    v.resize(field.degree(), BigInt::zero());
    Ok(field.element_from_ints(&v))
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CapitulateUnit { field, modulus, residue, with_inverse } => {
            let f = NumberFieldSpec::load(field)?;
            let u = parse_element(&f, residue)?;
            let cert = capitulation_extension(&f, *modulus, &u)?;
            let checks = cert.checks.named().iter().map(|(k, v)| (k.to_string(), *v)).collect();
            Ok(Outcome { field: Some(json::field(&f)), result: json::certificate(&cert, *with_inverse), checks })
        }
        Command::UnitCokernel { field, modulus, capitulate } => {
            let f = NumberFieldSpec::load(field)?;
            unit_cokernel_cmd(&f, *modulus, *capitulate)
        }
        Command::KernelGroup { field, group, modulus, zeta, check_capitulation } => {
            let f = NumberFieldSpec::load(field)?;
            let zeta = zeta.as_deref().map(|z| parse_element(&f, z)).transpose()?;
            kernel_group_cmd(&f, group, *modulus, zeta.as_ref(), *check_capitulation)
        }
        Command::LambdaOrder { field, ideal, size, extend, embedding, generator, search_bound } => {
            let f = NumberFieldSpec::load(field)?;
            let gens: Vec<&str> = ideal.iter().flat_map(|s| s.split(';')).filter(|s| !s.trim().is_empty()).collect();
            lambda_cmd(&f, &gens, *size, extend.as_deref(), embedding.as_deref(), generator.as_deref(), *search_bound)
        }
        Command::Noncap { class_order, degree, class_group_order, not_free } => {
            let q = NonCapQuery { class_order: *class_order, extension_degree: *degree, ring_of_integers_free: !not_free };
            let verdict = exclusion_predicate(&q)?;
            let mut result = json!({
                "hypothesis": { "ring_of_integers_free": q.ring_of_integers_free, "asserted_by": "caller" },
                "class_order": json::num(q.class_order),
                "degree": json::num(q.extension_degree),
                "verdict": verdict,
            });
            if let Some(h) = class_group_order {
                result["class_group_order"] = json::num(h);
                result["injective"] = Value::Bool(injectivity_predicate(*h, *degree, q.ring_of_integers_free)?);
            }
            Ok(Outcome { field: None, result, checks: Vec::new() })
        }
        Command::Corpus { only } => corpus::run(only.as_deref()),
    }
}

fn unit_cokernel_cmd(f: &NumberFieldSpec, m: u64, capitulate: bool) -> Result<Outcome> {
    let c = unit_cokernel(f, m)?;
    let mut checks = vec![(
        "lifts_coprime".to_string(),
        c.generator_lifts.iter().all(|u| crate::field::ideal::coprime_to_integer(f, u, &BigInt::from(m))),
    )];
    let mut result = json!({
        "modulus": json::num(m),
        "unit_group": json::ints(&c.units.invariant_factors),
        "unit_group_order": json::num(c.units.order()),
        "global_generators": json::elems(&c.global_generators),
        "global_image_order": json::int(&c.image_order()),
        "invariant_factors": json::ints(&c.invariant_factors()),
        "order": json::int(&c.order()),
        "generator_lifts": json::elems(&c.generator_lifts),
    });
    if capitulate {
        let certs = c.capitulate()?;
        result["certificates"] = Value::Array(certs.iter().map(|(_, cert)| json::certificate_summary(cert)).collect());
        for (i, (_, cert)) in certs.iter().enumerate() {
            checks.push((format!("certificate_{i}"), cert.checks.all_pass()));
        }
        let plain: Vec<_> = certs.into_iter().map(|(_, c)| c).collect();
        match joint_residue_check(f, m, &plain) {
            Ok(ok) => {
                result["joint_residue_check"] = Value::Bool(ok);
                checks.push(("joint_residue_check".into(), ok));
            }
            Err(Error::ResourceLimit(msg)) => result["joint_residue_check"] = json!({ "skipped": msg }),
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome { field: Some(json::field(f)), result, checks })
}

fn tuples(ts: &[Vec<Vec<BigInt>>]) -> Value {
    Value::Array(ts.iter().map(|t| Value::Array(t.iter().map(|x| json::ints(x)).collect())).collect())
}

fn kernel_group_cmd(
    f: &NumberFieldSpec,
    group: &[u64],
    modulus: Option<u64>,
    zeta: Option<&FieldElement>,
    check_capitulation: bool,
) -> Result<Outcome> {
    let alg = split_group_algebra(f, group, zeta)?;
    let m = modulus.unwrap_or(alg.order() as u64);
    let k = milnor_kernel_group(&alg, m)?;
    let mut checks = vec![("exactness".to_string(), k.is_exact())];
    if let Some(ok) = k.unit_lemma {
        checks.push(("subring_unit_lemma".into(), ok));
    }
    let mut result = json!({
        "group": group.iter().map(json::num).collect::<Vec<_>>(),
        "modulus": json::num(m),
        "zeta": json::elem(&alg.zeta),
        "character_determinant": json::elem(&alg.determinant),
        "components": json::num(k.components),
        "component_units": json::ints(&k.component_units.invariant_factors),
        "ambient_order": json::int(&k.ambient_order),
        "global_image_order": json::int(&k.global_image_order),
        "subring_size": json::num(k.subring_size),
        "subring_unit_order": json::int(&k.subring_unit_order),
        "join_order": json::int(&k.join_order),
        "invariant_factors": json::ints(&k.invariant_factors),
        "order": json::int(&k.order()),
        "generators": tuples(&k.generators),
    });
    if check_capitulation {
        let rep = capitulation_triviality_check(&k, f, m)?;
        result["capitulation"] = json!({
            "certificates": rep.certificates.iter().enumerate().map(|(i, (_, c))| {
                let mut v = json::certificate_summary(c);
                v["id"] = json::num(i);
                v
            }).collect::<Vec<_>>(),
            "generators": rep.tuples.iter().map(|t| json!({
                "tuple": t.tuple.iter().map(|x| json::ints(x)).collect::<Vec<_>>(),
                "components": t.components.iter().map(|c| json!({
                    "component": json::num(c.component),
                    "class": json::ints(&c.class),
                    "certificate": c.certificate.map(json::num),
                    "residue_ok": c.residue_ok,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "trivial": rep.trivial(),
        });
        checks.push(("capitulation_trivial".into(), rep.trivial()));
    }
    Ok(Outcome { field: Some(json::field(f)), result, checks })
}

fn principality(s: &PrincipalSearch) -> Value {
    match s {
        PrincipalSearch::Principal(x) => json!({ "status": "principal", "generator": json::elem(x) }),
        PrincipalSearch::CertifiedNonPrincipal => json!({ "status": "non_principal" }),
        PrincipalSearch::Inconclusive => json!({ "status": "inconclusive" }),
    }
}

fn ideal_json(f: &NumberFieldSpec, a: &Ideal) -> Value {
    json!({ "z_basis": json::elems(&a.z_basis(f)), "norm": json::rat(&a.norm()) })
}

fn lambda_cmd(
    f: &NumberFieldSpec,
    gens: &[&str],
    size: usize,
    extend: Option<&str>,
    embedding: Option<&str>,
    generator: Option<&str>,
    bound: u64,
) -> Result<Outcome> {
    let gens = gens.iter().map(|g| parse_element(f, g)).collect::<Result<Vec<_>>>()?;
    let a = Ideal::from_generators(f, &gens)?;
    let order = lambda_order(f, &a, size)?;
    let closure = verify_ring_closure(&order);
    let mut checks = vec![("ring_closure".to_string(), closure), ("contains_identity".to_string(), order.contains_identity())];
    let search = is_principal_by_search(f, &a, bound)?;
    let mut result = json!({
        "size": json::num(size),
        "ideal": ideal_json(f, &a),
        "inverse": ideal_json(f, &order.column_ideal),
        "lattice_rank": json::num(order.basis().len()),
        "principality": principality(&search),
    });
    let (target, target_order, found) = match (extend, embedding) {
        (Some(path), emb) => {
            let l = NumberFieldSpec::load(path)?;
            let image = match emb {
                Some(s) => Some(parse_element(&l, s)?),
                // Q = Z[beta] with beta = 0
                None if f.is_rationals() => Some(l.zero()),
                None => None,
            };
            let e = image.map(|b| Embedding::new(f, &l, b)).transpose()?;
            let ext = extend_scalars(&order, e.as_ref())?;
            let ok = verify_ring_closure(&ext);
            checks.push(("extended_ring_closure".into(), ok));
            let s = is_principal_by_search(&l, &ext.ideal, bound)?;
            result["extension"] = json!({
                "field": json::field(&l),
                "ideal": ideal_json(&l, &ext.ideal),
                "principality": principality(&s),
            });
            (l, ext, s)
        }
        (None, Some(_)) => return Err(Error::Input("--embedding needs --extend".into())),
        (None, None) => (f.clone(), order, search),
    };
    let alpha = match (generator, found) {
        (Some(g), _) => Some(parse_element(&target, g)?),
        (None, PrincipalSearch::Principal(x)) => Some(x),
        _ => None,
    };
    if let Some(alpha) = alpha {
        let c = matrix_ring_iso_certificate(&target_order, &alpha)?;
        result["matrix_ring_certificate"] = json!({
            "alpha": json::elem(&c.alpha),
            "generates": c.generates,
            "norm_matches": c.norm_matches,
            "forward_inclusion": c.forward,
            "backward_inclusion": c.backward,
        });
        checks.push(("iso_generates".into(), c.generates));
        checks.push(("iso_forward".into(), c.forward));
        checks.push(("iso_backward".into(), c.backward));
    }
    Ok(Outcome { field: Some(json::field(f)), result, checks })
}

pub fn main_with_args() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
