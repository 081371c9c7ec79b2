//! Request documents: parsing, validation and canonical re-serialization.

use std::fmt;
use std::str::FromStr;

use mukai_core::{IntMatrix, IntVector, WallSide};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use crate::render::{int_value, matrix_value, vector_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Snf,
    Disc,
    Saturate,
    Pair,
    PtypeCheck,
    PtypeDecompose,
    PtypeEnumerate,
    LineClass,
    Classify,
    Mori,
    JhCheck,
    BudgetCheck,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Snf,
        Command::Disc,
        Command::Saturate,
        Command::Pair,
        Command::PtypeCheck,
        Command::PtypeDecompose,
        Command::PtypeEnumerate,
        Command::LineClass,
        Command::Classify,
        Command::Mori,
        Command::JhCheck,
        Command::BudgetCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Snf => "snf",
            Command::Disc => "disc",
            Command::Saturate => "saturate",
            Command::Pair => "pair",
            Command::PtypeCheck => "ptype-check",
            Command::PtypeDecompose => "ptype-decompose",
            Command::PtypeEnumerate => "ptype-enumerate",
            Command::LineClass => "line-class",
            Command::Classify => "classify",
            Command::Mori => "mori",
            Command::JhCheck => "jh-check",
            Command::BudgetCheck => "budget-check",
        }
    }

    /// Fields that must be present, beyond `command`.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Command::Snf => &["matrix"],
            Command::Disc => &["setup"],
            Command::Saturate => &["basis"],
            Command::Pair => &["setup", "x", "y"],
            Command::PtypeCheck | Command::PtypeDecompose => &["setup", "v"],
            Command::PtypeEnumerate => &["setup", "v"],
            Command::LineClass | Command::Classify => &["setup", "v", "a"],
            Command::Mori => &["setup", "v", "h"],
            Command::JhCheck | Command::BudgetCheck => &["setup", "v", "parts"],
        }
    }
}

impl FromStr for Command {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The lattice a request runs in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Setup {
    /// U⁴ in Mukai coordinates (r, U³, s).
    KummerMukai,
    /// Mukai lattice over NS = ⟨2d⟩; holds 2d.
    NsRankOne(BigInt),
    /// U³ ⊕ ⟨−2n−2⟩; holds n.
    KummerBbf(u64),
    /// Mukai lattice over an explicit Néron–Severi Gram matrix.
    Ns(IntMatrix),
    /// A bare lattice with the given Gram matrix.
    Gram(IntMatrix),
}

impl Setup {
    fn to_value(&self) -> Value {
        match self {
            Setup::KummerMukai => Value::String("kummer-mukai".into()),
            Setup::NsRankOne(d) => Value::String(format!("ns-rank1:{d}")),
            Setup::KummerBbf(n) => Value::String(format!("kummer-bbf:{n}")),
            Setup::Ns(g) => single("ns", matrix_value(g)),
            Setup::Gram(g) => single("gram", matrix_value(g)),
        }
    }
}

fn single(key: &str, v: Value) -> Value {
    let mut m = Map::new();
    m.insert(key.into(), v);
    Value::Object(m)
}

/// A validated request. Vectors are flat ambient coordinates, so a Mukai
/// vector `(r, c, s)` is written `[r, c₁, …, c_ρ, s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub id: Option<Value>,
    pub setup: Option<Setup>,
    pub matrix: Option<IntMatrix>,
    pub basis: Option<Vec<IntVector>>,
    pub x: Option<IntVector>,
    pub y: Option<IntVector>,
    pub v: Option<IntVector>,
    pub a: Option<IntVector>,
    pub w: Option<IntVector>,
    pub h: Option<IntVector>,
    pub parts: Option<Vec<IntVector>>,
    pub bound: Option<u32>,
    pub side: Option<WallSide>,
}

/// Why a request line could not be turned into a [`Request`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RequestError {
    /// Not a JSON document at all.
    Parse(String),
    /// JSON, but the wrong shape.
    Schema(String),
}

impl RequestError {
    pub fn code(&self) -> &'static str {
        match self {
            RequestError::Parse(_) => "parse_error",
            RequestError::Schema(_) => "schema_error",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RequestError::Parse(m) | RequestError::Schema(m) => m,
        }
    }
}

type Parsed<T> = Result<T, RequestError>;

fn schema<T>(msg: impl Into<String>) -> Parsed<T> {
    Err(RequestError::Schema(msg.into()))
}

const KNOWN_KEYS: &[&str] = &[
    "command", "id", "setup", "ns", "gram", "preset", "n", "matrix", "basis", "x", "y", "v", "a",
    "w", "h", "parts", "bound", "side",
];

/// Integers may be JSON numbers or decimal strings (for arbitrary precision).
pub fn parse_int(v: &Value, what: &str) -> Parsed<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return schema(format!("{what}: expected an integer")),
    };
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return schema(format!("{what}: `{text}` is not an integer"));
    }
    BigInt::from_str(&text).or_else(|_| schema(format!("{what}: `{text}` is not an integer")))
}

fn parse_vector(v: &Value, what: &str) -> Parsed<IntVector> {
    let Value::Array(items) = v else {
        return schema(format!("{what}: expected an array of integers"));
    };
    if items.is_empty() {
        return schema(format!("{what}: empty vector"));
    }
    Ok(IntVector(
        items
            .iter()
            .map(|x| parse_int(x, what))
            .collect::<Parsed<_>>()?,
    ))
}

fn parse_rows(v: &Value, what: &str) -> Parsed<Vec<IntVector>> {
    let Value::Array(rows) = v else {
        return schema(format!("{what}: expected an array of rows"));
    };
    if rows.is_empty() {
        return schema(format!("{what}: no rows"));
    }
    let rows: Vec<IntVector> = rows
        .iter()
        .map(|r| parse_vector(r, what))
        .collect::<Parsed<_>>()?;
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return schema(format!("{what}: rows have different lengths"));
    }
    Ok(rows)
}

fn parse_matrix(v: &Value, what: &str) -> Parsed<IntMatrix> {
    let rows = parse_rows(v, what)?;
    IntMatrix::from_rows(rows.into_iter().map(|r| r.0).collect())
        .or_else(|e| schema(format!("{what}: {e}")))
}

fn parse_preset(name: &str, n: Option<&Value>) -> Parsed<Setup> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(Value::String(a.to_string()))),
        None => (name, n.cloned()),
    };
    match base {
        "kummer-mukai" => {
            if arg.is_some() {
                return schema("setup: kummer-mukai takes no parameter");
            }
            Ok(Setup::KummerMukai)
        }
        "ns-rank1" => {
            let Some(arg) = arg else {
                return schema("setup: ns-rank1 needs the polarization square 2d");
            };
            let d = parse_int(&arg, "setup")?;
            if !d.is_positive() {
                return schema("setup: ns-rank1 needs a positive polarization square");
            }
            Ok(Setup::NsRankOne(d))
        }
        "kummer-bbf" => {
            let Some(arg) = arg else {
                return schema("setup: kummer-bbf needs n");
            };
            let n = parse_int(&arg, "setup")?;
            match n.to_u64() {
                Some(n) if n >= 1 => Ok(Setup::KummerBbf(n)),
                _ => schema("setup: kummer-bbf needs n >= 1"),
            }
        }
        other => schema(format!("setup: unknown preset `{other}`")),
    }
}

fn parse_setup(obj: &Map<String, Value>) -> Parsed<Option<Setup>> {
    let mut found: Vec<Setup> = Vec::new();
    if let Some(s) = obj.get("setup") {
        found.push(match s {
            Value::String(name) => parse_preset(name, obj.get("n"))?,
            Value::Object(inner) => {
                for k in inner.keys() {
                    if !["preset", "n", "ns", "gram"].contains(&k.as_str()) {
                        return schema(format!("setup: unknown key `{k}`"));
                    }
                }
                match (inner.get("preset"), inner.get("ns"), inner.get("gram")) {
                    (Some(Value::String(p)), None, None) => parse_preset(p, inner.get("n"))?,
                    (None, Some(g), None) => Setup::Ns(parse_matrix(g, "setup.ns")?),
                    (None, None, Some(g)) => Setup::Gram(parse_matrix(g, "setup.gram")?),
                    _ => return schema("setup: give exactly one of preset, ns, gram"),
                }
            }
            _ => return schema("setup: expected a preset name or an object"),
        });
    }
    if let Some(g) = obj.get("ns") {
        found.push(Setup::Ns(parse_matrix(g, "ns")?));
    }
    if let Some(g) = obj.get("gram") {
        found.push(Setup::Gram(parse_matrix(g, "gram")?));
    }
    if let Some(p) = obj.get("preset") {
        let Value::String(p) = p else {
            return schema("preset: expected a string");
        };
        found.push(parse_preset(p, obj.get("n"))?);
    }
    if obj.contains_key("n")
        && !obj.contains_key("preset")
        && !matches!(obj.get("setup"), Some(Value::String(_)))
    {
        return schema("n: only meaningful together with a preset");
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        _ => schema("setup given more than once"),
    }
}

impl Request {
    /// Parses one request document.
    pub fn parse(line: &str) -> Parsed<Request> {
        let value: Value =
            serde_json::from_str(line).map_err(|e| RequestError::Parse(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Parsed<Request> {
        let Value::Object(obj) = value else {
            return schema("request must be a JSON object");
        };
        for k in obj.keys() {
            if !KNOWN_KEYS.contains(&k.as_str()) {
                return schema(format!("unknown field `{k}`"));
            }
        }
        let command = match obj.get("command") {
            Some(Value::String(c)) => c
                .parse::<Command>()
                .or_else(|_| schema(format!("unknown command `{c}`")))?,
            Some(_) => return schema("command: expected a string"),
            None => return schema("missing field `command`"),
        };
        let vector = |key: &str| obj.get(key).map(|v| parse_vector(v, key)).transpose();
        let rows = |key: &str| obj.get(key).map(|v| parse_rows(v, key)).transpose();
        let bound = match obj.get("bound") {
            None => None,
            Some(b) => {
                let b = parse_int(b, "bound")?;
                match b.to_u32() {
                    Some(b) => Some(b),
                    None => return schema("bound: expected a nonnegative integer below 2^32"),
                }
            }
        };
        let side = match obj.get("side") {
            None => None,
            Some(Value::String(s)) if s == "plus" => Some(WallSide::Plus),
            Some(Value::String(s)) if s == "minus" => Some(WallSide::Minus),
            Some(_) => return schema("side: expected \"plus\" or \"minus\""),
        };
        let id = match obj.get("id") {
            None => None,
            Some(v @ (Value::String(_) | Value::Number(_))) => Some(v.clone()),
            Some(_) => return schema("id: expected a string or a number"),
        };
        let req = Request {
            command,
            id,
            setup: parse_setup(obj)?,
            matrix: obj
                .get("matrix")
                .map(|m| parse_matrix(m, "matrix"))
                .transpose()?,
            basis: rows("basis")?,
            x: vector("x")?,
            y: vector("y")?,
            v: vector("v")?,
            a: vector("a")?,
            w: vector("w")?,
            h: vector("h")?,
            parts: rows("parts")?,
            bound,
            side,
        };
        req.check_required()?;
        Ok(req)
    }

    fn has(&self, field: &str) -> bool {
        match field {
            "setup" => self.setup.is_some(),
            "matrix" => self.matrix.is_some(),
            "basis" => self.basis.is_some(),
            "x" => self.x.is_some(),
            "y" => self.y.is_some(),
            "v" => self.v.is_some(),
            "a" => self.a.is_some(),
            "h" => self.h.is_some(),
            "parts" => self.parts.is_some(),
            _ => false,
        }
    }

    fn check_required(&self) -> Parsed<()> {
        for f in self.command.required() {
            if !self.has(f) {
                return schema(format!("{}: missing field `{f}`", self.command));
            }
        }
        if matches!(self.command, Command::PtypeCheck | Command::PtypeDecompose)
            && self.basis.is_none() == self.w.is_none()
        {
            return schema(format!(
                "{}: give exactly one of `basis` or `w`",
                self.command
            ));
        }
        Ok(())
    }

    /// The canonical document: normalized setup, integers as JSON numbers,
    /// keys sorted.
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.name().into()));
        if let Some(id) = &self.id {
            m.insert("id".into(), id.clone());
        }
        if let Some(s) = &self.setup {
            m.insert("setup".into(), s.to_value());
        }
        if let Some(x) = &self.matrix {
            m.insert("matrix".into(), matrix_value(x));
        }
        let rows = |r: &Vec<IntVector>| Value::Array(r.iter().map(vector_value).collect());
        if let Some(b) = &self.basis {
            m.insert("basis".into(), rows(b));
        }
        if let Some(p) = &self.parts {
            m.insert("parts".into(), rows(p));
        }
        for (key, val) in [
            ("x", &self.x),
            ("y", &self.y),
            ("v", &self.v),
            ("a", &self.a),
            ("w", &self.w),
            ("h", &self.h),
        ] {
            if let Some(val) = val {
                m.insert(key.into(), vector_value(val));
            }
        }
        if let Some(b) = self.bound {
            m.insert("bound".into(), int_value(&BigInt::from(b)));
        }
        if let Some(s) = self.side {
            let name = match s {
                WallSide::Plus => "plus",
                WallSide::Minus => "minus",
            };
            m.insert("side".into(), Value::String(name.into()));
        }
        Value::Object(m)
    }

    pub fn to_canonical_string(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("values always serialize")
    }
}
