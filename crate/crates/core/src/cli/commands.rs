//! Dispatch from parsed commands to the library.

use serde_json::{json, Map, Value};

use super::document::{InputDocument, Mode};
use super::report::{matrix, ratio, real, Report};
use super::CliError;
use crate::gf::Modulus;
use crate::group::{self, GroupSpec, CHROMATIC_VERTEX_LIMIT};
use crate::oracle::{self, OptimizerConfig, OracleError};
use crate::stabilizer::{self, Stabilizer};
use crate::symplectic;

/// Deviation allowed for dense cross-checks against exact values.
const EXACT_TOL: f64 = 1e-12;
/// Tolerance on bounds reached by eigensolvers and iterations.
const BOUND_TOL: f64 = 1e-9;
/// Tolerance on optimizer-based overlaps and extrema.
const OPTIMIZER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flags {
    pub cfg: OptimizerConfig,
    pub cap_vertices: usize,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            cfg: OptimizerConfig::default(),
            cap_vertices: group::CLIQUE_VERTEX_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub swap: bool,
    pub lagrange: bool,
    pub theta: bool,
    /// Dimension for the input-free checks.
    pub d: Option<Modulus>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Canonical,
    Entanglement,
    Verify(VerifyOptions),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Canonical => "canonical",
            Command::Entanglement => "entanglement",
            Command::Verify(_) => "verify",
        }
    }
}

pub fn run_command(
    cmd: &Command,
    doc: Option<&InputDocument>,
    flags: &Flags,
) -> Result<Report, CliError> {
    flags.cfg.validate()?;
    match cmd {
        Command::Verify(opts) => verify(opts, doc, flags),
        _ => {
            let doc = doc.ok_or_else(|| {
                CliError::Usage(format!("{} needs an input file or --builtin", cmd.name()))
            })?;
            let mut r = Report::new(cmd.name(), &doc.to_text());
            match cmd {
                Command::Analyze => analyze(&mut r, doc, flags)?,
                Command::Canonical => canonical(&mut r, doc)?,
                Command::Entanglement => entanglement(&mut r, doc)?,
                Command::Verify(_) => unreachable!(),
            }
            Ok(r)
        }
    }
}

fn group_spec(doc: &InputDocument) -> Result<GroupSpec, CliError> {
    Ok(GroupSpec::from_generators(doc.generators.clone())?)
}

fn analyze(r: &mut Report, doc: &InputDocument, flags: &Flags) -> Result<(), CliError> {
    let spec = group_spec(doc)?;
    let d = spec.modulus();
    r.insert("d", d.get());
    r.insert("n_sites", doc.n_sites);
    r.insert("k", spec.k());
    r.insert("gamma", matrix(spec.gamma()));
    r.insert("rank", spec.rank());
    r.insert("nullity", spec.nullity());
    r.insert("clique_number", group::clique_number(&spec)?);
    r.insert("sos_bound", group::sos_bound(&spec)?);
    r.insert(
        "central_subgroup_order",
        (d.get() as u64).checked_pow(spec.nullity() as u32),
    );
    if d.get() != 2 {
        r.insert("sum_bound", real(group::sum_bound(&spec)?));
    }

    let order = spec.order().unwrap_or(u128::MAX);
    let graph = if order <= flags.cap_vertices as u128 {
        let g = group::commutation_graph(&spec, flags.cap_vertices)?;
        let mut stats = Map::new();
        stats.insert("vertices".into(), g.vertex_count().into());
        stats.insert("edges".into(), g.edge_count().into());
        stats.insert(
            "clique_number_bruteforce".into(),
            group::clique_number_bruteforce(&g)?.into(),
        );
        if g.vertex_count() <= CHROMATIC_VERTEX_LIMIT {
            stats.insert(
                "chromatic_number".into(),
                group::chromatic_number_exact(&g)?.into(),
            );
        }
        Value::Object(stats)
    } else {
        json!({ "skipped": format!("{order} vertices exceed --cap-vertices {}", flags.cap_vertices) })
    };
    r.insert("graph", graph);
    Ok(())
}

fn canonical(r: &mut Report, doc: &InputDocument) -> Result<(), CliError> {
    let spec = group_spec(doc)?;
    let cf = symplectic::canonical_form(spec.gamma())?;
    let reduced =
        cf.o.transpose()
            .mul(spec.gamma())
            .and_then(|t| t.mul(&cf.o))
            .map_err(|e| CliError::Internal {
                code: "E_INTERNAL",
                message: e.to_string(),
            })?;
    let br = symplectic::block_reduce(spec.gamma())?;
    r.insert("d", spec.modulus().get());
    r.insert("k", spec.k());
    r.insert("gamma", matrix(spec.gamma()));
    r.insert("o", matrix(&cf.o));
    r.insert("blocks", cf.blocks);
    r.insert("residual_dim", cf.residual_dim);
    r.insert("normal_form", matrix(&reduced));
    r.insert(
        "block_reduction",
        json!({
            "o": matrix(&br.o),
            "n": br.n,
            "m": br.m(),
            "d_block": matrix(&br.d_block),
        }),
    );
    Ok(())
}

fn stabilizer_of(doc: &InputDocument) -> Result<Stabilizer, CliError> {
    if doc.mode == Some(Mode::Group) {
        return Err(CliError::Validation {
            code: "E_MODE",
            message: "this command needs a stabilizer document, found mode=group".into(),
        });
    }
    Ok(Stabilizer::new(doc.generators.clone())?)
}

fn entanglement(r: &mut Report, doc: &InputDocument) -> Result<(), CliError> {
    let s = stabilizer_of(doc)?;
    let cap = stabilizer::default_bipartition_cap();
    let reports = stabilizer::gm_reports(&s, cap)?;
    r.insert("d", s.modulus().get());
    r.insert("n_sites", s.n_sites());
    r.insert("k", s.k());
    let rows: Vec<Value> = reports
        .iter()
        .map(|b| {
            json!({
                "q": b.q.indices(),
                "rank": b.rank_q,
                "gamma_q": matrix(&b.gamma_q),
                "gm": ratio(b.gm),
            })
        })
        .collect();
    r.insert("bipartitions", rows);
    r.insert("is_gme", reports.iter().all(|b| b.rank_q > 0));
    if let Some(min) = reports.iter().map(|b| b.gm).min() {
        r.insert("ggm", ratio(min));
    } else {
        r.insert("ggm", Value::Null);
    }
    Ok(())
}

struct Checks(Vec<Value>);

impl Checks {
    fn push(&mut self, name: String, value: f64, expected: f64, tolerance: f64, relation: &str) {
        let deviation = (value - expected).abs();
        let passed = match relation {
            "at_most" => value <= expected + tolerance,
            "at_least" => value >= expected - tolerance,
            _ => deviation < tolerance,
        };
        self.0.push(json!({
            "name": name,
            "relation": relation,
            "value": real(value),
            "expected": real(expected),
            "deviation": real(deviation),
            "tolerance": real(tolerance),
            "passed": passed,
        }));
    }

    fn skip(&mut self, name: String, reason: impl ToString) {
        self.0
            .push(json!({ "name": name, "skipped": reason.to_string() }));
    }
}

/// Runs a dense check, turning size limits into a skipped entry.
fn sized<T>(
    checks: &mut Checks,
    name: &str,
    f: impl FnOnce() -> Result<T, OracleError>,
) -> Result<Option<T>, CliError> {
    match f() {
        Ok(v) => Ok(Some(v)),
        Err(
            e @ (OracleError::TooLarge { .. }
            | OracleError::Group(group::GroupError::TooLarge { .. })),
        ) => {
            checks.skip(name.to_owned(), e);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(
    opts: &VerifyOptions,
    doc: Option<&InputDocument>,
    flags: &Flags,
) -> Result<Report, CliError> {
    let standalone = opts.swap || opts.lagrange || opts.theta;
    if !standalone && doc.is_none() {
        return Err(CliError::Usage(
            "verify needs an input, --builtin, or one of --swap, --lagrange, --theta".into(),
        ));
    }
    let d = match (standalone, opts.d) {
        (true, None) => {
            return Err(CliError::Usage(
                "--swap, --lagrange and --theta need --d".into(),
            ))
        }
        (_, d) => d,
    };

    let mut digest_src = String::new();
    if let Some(doc) = doc {
        digest_src.push_str(&doc.to_text());
    }
    for (on, tag) in [
        (opts.swap, "swap"),
        (opts.lagrange, "lagrange"),
        (opts.theta, "theta"),
    ] {
        if on {
            digest_src.push_str(&format!("--{tag}\n"));
        }
    }
    if let Some(d) = d {
        digest_src.push_str(&format!("--d {d}\n"));
    }
    let mut r = Report::new("verify", &digest_src);
    let mut checks = Checks(Vec::new());
    let cfg = &flags.cfg;

    if let Some(d) = d.filter(|_| standalone) {
        if opts.swap {
            let dev = oracle::verify_swap_identity(d)?;
            checks.push(format!("swap_identity d={d}"), dev, 0.0, EXACT_TOL, "equal");
        }
        if opts.lagrange {
            let v = oracle::lagrange_extremum(d, cfg)?;
            let want = oracle::lagrange_closed_form(d);
            checks.push(
                format!("lagrange_extremum d={d}"),
                v,
                want,
                OPTIMIZER_TOL,
                "equal",
            );
        }
        if opts.theta {
            let s = oracle::theta_pauli_sum(d)?;
            let dv = d.get() as f64;
            let want = 0.5 * dv * (1.0 + dv.sqrt());
            checks.push(
                format!("theta_pauli_sum d={d}"),
                s.re,
                want,
                EXACT_TOL * dv * dv,
                "equal",
            );
            checks.push(
                format!("theta_pauli_sum_imag d={d}"),
                s.im,
                0.0,
                EXACT_TOL * dv * dv,
                "equal",
            );
        }
    }

    if let Some(doc) = doc {
        let spec = group_spec(doc)?;
        let bound = group::sos_bound(&spec)? as f64;
        if let Some(sos) = sized(&mut checks, "max_sos", || oracle::max_sos(&spec, cfg))? {
            checks.push("max_sos".into(), sos.value, bound, BOUND_TOL, "equal");
            checks.push(
                "max_sos_iterated".into(),
                sos.iterated,
                bound,
                BOUND_TOL,
                "at_most",
            );
        }
        if spec.modulus().get() != 2 {
            let bound = group::sum_bound(&spec)?;
            if let Some(e) = sized(&mut checks, "max_sum_eigenvalue", || {
                oracle::max_sum_eigenvalue(&spec)
            })? {
                checks.push(
                    "max_sum_eigenvalue".into(),
                    e.lambda_max,
                    bound,
                    BOUND_TOL,
                    "at_most",
                );
                checks.push(
                    "eigen_residual".into(),
                    e.residual,
                    0.0,
                    BOUND_TOL * e.hamiltonian_norm.max(1.0),
                    "at_most",
                );
            }
        }
        if doc.mode != Some(Mode::Group) {
            if let Ok(s) = Stabilizer::new(doc.generators.clone()) {
                let cuts = stabilizer::gm_reports(&s, stabilizer::default_bipartition_cap())?;
                for b in cuts {
                    let name = format!("product_overlap Q={}", b.q);
                    let want = 1.0 - b.gm_value();
                    if let Some(o) = sized(&mut checks, &name, || {
                        oracle::max_product_overlap(&s, &b.q, cfg)
                    })? {
                        checks.push(name, o.overlap, want, OPTIMIZER_TOL, "equal");
                    }
                }
            }
        }
    }

    let passed = checks
        .0
        .iter()
        .all(|c| c.get("passed").is_none_or(|p| p == &Value::Bool(true)));
    r.insert("seed", cfg.seed);
    r.insert("checks", checks.0);
    r.insert("passed", passed);
    Ok(r)
}
