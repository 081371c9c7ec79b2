//! Batch front end for `mukai-core`.
//!
//! Each input line is one JSON request; each output line is one JSON response
//! with sorted keys, so identical input gives byte-identical output.

pub mod render;
pub mod request;
pub mod schema;

use mukai_core::{
    classify_line_class, contraction_budget, enumerate_p_type, is_p_type, isotropic_classes,
    jh_feasibility, line_class_from_wall_side, mori_candidates, p_type_decomposition,
    smith_normal_form, theta_dual, IntVector, IntegralLattice, LatticeError, MukaiSetup,
    PartitionReport, PointedSublattice, Sublattice, WallSide,
};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde_json::Value;

use render::{
    int_value, ints_value, line_class_value, matrix_value, object, pointed_value, vector_value,
    vectors_value,
};
pub use request::{Command, Request, RequestError, Setup};

/// Settings shared by every request in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Box bound for enumerations when a request does not give one.
    pub default_bound: u32,
    /// Only changes how the batch is split into parallel work units.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            default_bound: 10,
            seed: 0,
        }
    }
}

/// Failure of a single request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: &'static str,
    /// `parse`, `schema` or `library`.
    pub kind: &'static str,
    pub message: String,
}

impl From<RequestError> for Failure {
    fn from(e: RequestError) -> Self {
        let kind = match e {
            RequestError::Parse(_) => "parse",
            RequestError::Schema(_) => "schema",
        };
        Failure {
            code: e.code(),
            kind,
            message: e.message().to_string(),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure {
            code: e.code(),
            kind: "library",
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub id: Option<Value>,
    pub outcome: Result<Value, Failure>,
    pub diagnostics: Vec<String>,
}

impl Response {
    pub fn is_ok(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn to_value(&self) -> Value {
        let mut m = serde_json::Map::new();
        if let Some(id) = &self.id {
            m.insert("id".into(), id.clone());
        }
        let mut diagnostics = self.diagnostics.clone();
        match &self.outcome {
            Ok(result) => {
                m.insert("status".into(), Value::String("ok".into()));
                m.insert("result".into(), result.clone());
            }
            Err(f) => {
                m.insert("status".into(), Value::String("error".into()));
                m.insert(
                    "error".into(),
                    object([
                        ("code", Value::String(f.code.into())),
                        ("kind", Value::String(f.kind.into())),
                    ]),
                );
                diagnostics.insert(0, f.message.clone());
            }
        }
        m.insert(
            "diagnostics".into(),
            Value::Array(diagnostics.into_iter().map(Value::String).collect()),
        );
        Value::Object(m)
    }

    /// One line of output, without the trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("values always serialize")
    }
}

type Outcome = Result<Value, Failure>;

/// Builds the lattice a setup names.
pub fn ambient_lattice(setup: &Setup) -> Result<IntegralLattice, LatticeError> {
    Ok(match setup {
        Setup::KummerMukai => MukaiSetup::kummer_mukai().ambient().clone(),
        Setup::NsRankOne(d) => MukaiSetup::ns_rank_one(d.clone())?.ambient().clone(),
        Setup::KummerBbf(n) => IntegralLattice::kummer_bbf(*n),
        Setup::Ns(g) => MukaiSetup::new(g.clone())?.ambient().clone(),
        Setup::Gram(g) => IntegralLattice::new(g.clone())?,
    })
}

/// Runs one parsed request.
pub fn run(req: &Request, opts: &Options) -> Response {
    let mut diagnostics = Vec::new();
    let outcome = dispatch(req, opts, &mut diagnostics);
    Response {
        id: req.id.clone(),
        outcome,
        diagnostics,
    }
}

/// Parses and runs one line.
pub fn run_line(line: &str, opts: &Options) -> Response {
    match Request::parse(line) {
        Ok(req) => run(&req, opts),
        Err(e) => {
            let id = serde_json::from_str::<Value>(line)
                .ok()
                .and_then(|v| v.get("id").cloned())
                .filter(|id| id.is_string() || id.is_number());
            Response {
                id,
                outcome: Err(e.into()),
                diagnostics: Vec::new(),
            }
        }
    }
}

/// Runs every non-blank line, returning responses in input order.
pub fn run_batch(input: &str, opts: &Options) -> Vec<Response> {
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    let chunk = 1 + (opts.seed % 8) as usize;
    lines
        .par_chunks(chunk)
        .flat_map_iter(|c| c.iter().map(|l| run_line(l, opts)))
        .collect()
}

fn need<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T, Failure> {
    field
        .as_ref()
        .ok_or_else(|| Failure::from(RequestError::Schema(format!("missing field `{name}`"))))
}

fn dispatch(req: &Request, opts: &Options, notes: &mut Vec<String>) -> Outcome {
    match req.command {
        Command::Snf => {
            let m = need(&req.matrix, "matrix")?;
            let snf = smith_normal_form(m);
            Ok(object([
                ("d", ints_value(&snf.diagonal())),
                ("invariant_factors", ints_value(&snf.invariant_factors())),
                ("rank", int_value(&BigInt::from(snf.rank()))),
                ("u", matrix_value(&snf.u)),
                ("v", matrix_value(&snf.v)),
            ]))
        }
        Command::Saturate => {
            let basis = need(&req.basis, "basis")?;
            let s = Sublattice::new(basis[0].len(), basis)?;
            let sat = s.saturate();
            Ok(object([
                ("basis", matrix_value(sat.basis())),
                ("index", int_value(&s.saturation_index())),
                ("saturated", Value::Bool(s.is_saturated())),
            ]))
        }
        _ => {
            let ambient = ambient_lattice(need(&req.setup, "setup")?)?;
            dispatch_in(req, opts, &ambient, notes)
        }
    }
}

fn ptype_lattice(
    req: &Request,
    ambient: &IntegralLattice,
    v: &IntVector,
) -> Result<PointedSublattice, Failure> {
    Ok(match (&req.basis, &req.w) {
        (Some(rows), None) => PointedSublattice::new(ambient, v, rows)?,
        (None, Some(w)) => PointedSublattice::spanned_by(ambient, v, w)?,
        _ => return Err(RequestError::Schema("give exactly one of `basis` or `w`".into()).into()),
    })
}

fn bool_or_null(x: Option<bool>) -> Value {
    x.map_or(Value::Null, Value::Bool)
}

fn report_value(r: &PartitionReport) -> Value {
    let opt_int = |x: &Option<BigInt>| x.as_ref().map_or(Value::Null, int_value);
    object([
        ("parts", vectors_value(&r.parts)),
        ("m", int_value(&BigInt::from(r.m))),
        ("square_sum", int_value(&r.square_sum)),
        ("jh_ok", Value::Bool(r.jh_ok)),
        ("ext1_total", int_value(&r.ext1_total)),
        ("ext1_budget_ok", Value::Bool(r.ext1_budget_ok)),
        ("ext1_cross", opt_int(&r.ext1_cross)),
        ("n", opt_int(&r.n)),
        (
            "dimension_identity_ok",
            bool_or_null(r.dimension_identity_ok),
        ),
    ])
}

fn dispatch_in(
    req: &Request,
    opts: &Options,
    ambient: &IntegralLattice,
    notes: &mut Vec<String>,
) -> Outcome {
    let mut bound = || {
        req.bound.unwrap_or_else(|| {
            notes.push(format!("bound not given, using {}", opts.default_bound));
            opts.default_bound
        })
    };
    match req.command {
        Command::Snf | Command::Saturate => unreachable!("handled without a setup"),
        Command::Disc => {
            let g = ambient.discriminant_group()?;
            let (p, n, z) = ambient.signature();
            Ok(object([
                ("factors", ints_value(g.invariant_factors())),
                ("order", int_value(g.order())),
                ("cyclic", Value::Bool(g.is_cyclic())),
                ("determinant", int_value(&ambient.determinant())),
                ("signature", ints_value(&[p.into(), n.into(), z.into()])),
                ("even", Value::Bool(ambient.is_even())),
            ]))
        }
        Command::Pair => {
            let value = ambient.pair(need(&req.x, "x")?, need(&req.y, "y")?)?;
            Ok(object([("value", int_value(&value))]))
        }
        Command::PtypeCheck => {
            let v = need(&req.v, "v")?;
            let h = ptype_lattice(req, ambient, v)?;
            let census = isotropic_classes(&h)?;
            let p_type = is_p_type(&h)?;
            if census.is_empty() {
                notes.push("no primitive isotropic classes in H".into());
            }
            let pairings: Vec<BigInt> = census
                .classes()
                .iter()
                .map(|a| ambient.pair(a, v))
                .collect::<Result<_, _>>()?;
            Ok(object([
                ("p_type", Value::Bool(p_type)),
                ("lattice", pointed_value(&h)),
                ("v_square", int_value(&h.v_square())),
                ("isotropic_classes", vectors_value(census.classes())),
                ("pairings_with_v", ints_value(&pairings)),
            ]))
        }
        Command::PtypeDecompose => {
            let v = need(&req.v, "v")?;
            let h = ptype_lattice(req, ambient, v)?;
            let d = p_type_decomposition(&h)?;
            let cross = d.cross_pairing(ambient);
            let mut fields = vec![
                ("s", vector_value(&d.s)),
                ("t", vector_value(&d.t)),
                ("gram", matrix_value(&d.gram(ambient))),
                ("cross_pairing", int_value(&cross)),
                ("n", int_value(&(&cross - BigInt::one()))),
                ("lattice", pointed_value(&h)),
            ];
            match line_class_from_wall_side(&h, WallSide::Plus) {
                Ok(plus) => {
                    fields.push(("plus", line_class_value(&plus)));
                    fields.push((
                        "minus",
                        line_class_value(&line_class_from_wall_side(&h, WallSide::Minus)?),
                    ));
                }
                Err(e) => {
                    notes.push(format!("line classes unavailable: {e}"));
                    fields.push(("plus", Value::Null));
                    fields.push(("minus", Value::Null));
                }
            }
            if let Some(side) = req.side {
                fields.push((
                    "selected",
                    line_class_value(&line_class_from_wall_side(&h, side)?),
                ));
            }
            let mut m = serde_json::Map::new();
            for (k, val) in fields {
                m.insert(k.into(), val);
            }
            Ok(Value::Object(m))
        }
        Command::PtypeEnumerate => {
            let v = need(&req.v, "v")?;
            let b = bound();
            let found = enumerate_p_type(ambient, v, b)?;
            let lattices = found
                .iter()
                .map(|h| {
                    let d = p_type_decomposition(h)?;
                    Ok(object([
                        ("basis", matrix_value(h.basis())),
                        ("gram2", matrix_value(h.gram2())),
                        ("s", vector_value(&d.s)),
                        ("t", vector_value(&d.t)),
                    ]))
                })
                .collect::<Result<Vec<Value>, LatticeError>>()?;
            Ok(object([
                ("bound", int_value(&BigInt::from(b))),
                ("count", int_value(&BigInt::from(lattices.len()))),
                ("lattices", Value::Array(lattices)),
            ]))
        }
        Command::LineClass => {
            let lc = theta_dual(ambient, need(&req.v, "v")?, need(&req.a, "a")?)?;
            Ok(line_class_value(&lc))
        }
        Command::Classify => {
            let v = need(&req.v, "v")?;
            let a = need(&req.a, "a")?;
            let verdict = classify_line_class(ambient, v, a)?;
            if let Some(e) = &verdict.lattice_error {
                notes.push(format!("no P-type lattice from a: {e}"));
            }
            Ok(object([
                ("line_class", line_class_value(&verdict.line_class)),
                ("n", int_value(&verdict.n)),
                ("square_ok", Value::Bool(verdict.square_ok)),
                ("torsion_ok", Value::Bool(verdict.torsion_ok)),
                (
                    "isotropic_witness_ok",
                    Value::Bool(verdict.isotropic_witness_ok),
                ),
                ("lagrangian", Value::Bool(verdict.is_lagrangian())),
                (
                    "lattice",
                    verdict.lattice.as_ref().map_or(Value::Null, pointed_value),
                ),
                (
                    "lattice_error",
                    verdict
                        .lattice_error
                        .as_ref()
                        .map_or(Value::Null, |e| Value::String(e.code().into())),
                ),
            ]))
        }
        Command::Mori => {
            let b = bound();
            let cands = mori_candidates(ambient, need(&req.v, "v")?, need(&req.h, "h")?, b)?;
            let lagrangian = cands.iter().filter(|c| c.lagrangian).count();
            let list = cands
                .iter()
                .map(|c| {
                    object([
                        ("a", vector_value(&c.a)),
                        ("lagrangian", Value::Bool(c.lagrangian)),
                        ("line_class", line_class_value(&c.line_class)),
                    ])
                })
                .collect();
            Ok(object([
                ("bound", int_value(&BigInt::from(b))),
                ("count", int_value(&BigInt::from(cands.len()))),
                ("lagrangian_count", int_value(&BigInt::from(lagrangian))),
                ("candidates", Value::Array(list)),
            ]))
        }
        Command::JhCheck => {
            let r = jh_feasibility(ambient, need(&req.v, "v")?, need(&req.parts, "parts")?)?;
            Ok(report_value(&r))
        }
        Command::BudgetCheck => {
            let r = contraction_budget(ambient, need(&req.v, "v")?, need(&req.parts, "parts")?)?;
            Ok(report_value(&r))
        }
    }
}
