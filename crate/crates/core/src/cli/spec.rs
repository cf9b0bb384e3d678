//! Tower spec files: `[section]` headers, `key = value` lines and `#` comments.
//!
//! ```text
//! [field]
//! p = 5
//! [tower]
//! type = separated
//! f_num = [1,0,1]
//! f_den = [0,2]
//! g_num = [0,0,1]
//! g_den = [1]
//! [options]
//! levels = 1,2
//! ```
//!
//! Polynomials are ascending coefficient lists whose entries are integers
//! (prime-field elements) or `[c0,...,c_{m-1}]` vectors over the power basis.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::correspondence::{Correspondence, CorrespondenceError, RationalMap};
use crate::fields::{make_field, FieldElement, FieldError, FieldSpec, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{line}:{col}: expected {expected}")]
    SyntaxError {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("{0}")]
    SemanticError(String),
}

fn syntax(line: usize, col: usize, expected: impl Into<String>) -> SpecError {
    SpecError::SyntaxError {
        line,
        col,
        expected: expected.into(),
    }
}

impl From<FieldError> for SpecError {
    fn from(e: FieldError) -> Self {
        SpecError::SemanticError(e.to_string())
    }
}

impl From<CorrespondenceError> for SpecError {
    fn from(e: CorrespondenceError) -> Self {
        SpecError::SemanticError(e.to_string())
    }
}

/// A polynomial coefficient as written: an integer or a coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Int(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSection {
    pub p: u64,
    pub m: u32,
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerSection {
    Separated {
        f_num: Vec<Coef>,
        f_den: Vec<Coef>,
        g_num: Vec<Coef>,
        g_den: Vec<Coef>,
    },
    Bihomogeneous {
        d1: usize,
        d2: usize,
        coeffs: Vec<Coef>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Options {
    pub levels: Option<Vec<u32>>,
    pub ambient_degree: Option<u32>,
    pub ambient_modulus: Option<Vec<u64>>,
    pub deltas: Option<Vec<i64>>,
    pub ell: Option<(i64, i64)>,
    pub allow_unequal_bidegree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpecFile {
    pub field: FieldSection,
    pub tower: TowerSection,
    pub options: Options,
}

/// Raw value syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(i64),
    List(Vec<Value>),
    /// `a, b, c` without brackets
    Bare(Vec<Value>),
    Ratio(i64, i64),
    Word(String),
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, offset: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            offset,
            _src: src,
        }
    }

    fn col(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn err(&self, expected: &str) -> SpecError {
        syntax(self.line, self.col(), expected)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, SpecError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.err("integer in range")
        })
    }

    fn atom(&mut self) -> Result<Value, SpecError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => self.list(),
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => {
                let n = self.int()?;
                if self.eat('/') {
                    let d = self.int()?;
                    if d == 0 {
                        self.pos -= 1;
                        return Err(self.err("nonzero denominator"));
                    }
                    Ok(Value::Ratio(n, d))
                } else {
                    Ok(Value::Int(n))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                Ok(Value::Word(self.chars[start..self.pos].iter().collect()))
            }
            _ => Err(self.err("value")),
        }
    }

    fn list(&mut self) -> Result<Value, SpecError> {
        self.eat('[');
        let mut items = Vec::new();
        if self.eat(']') {
            return Ok(Value::List(items));
        }
        loop {
            items.push(self.atom()?);
            if self.eat(']') {
                return Ok(Value::List(items));
            }
            if !self.eat(',') {
                return Err(self.err("',' or ']'"));
            }
        }
    }

    fn value(&mut self) -> Result<Value, SpecError> {
        let first = self.atom()?;
        if !self.eat(',') {
            self.skip_ws();
            if self.peek().is_some() {
                return Err(self.err("end of line"));
            }
            return Ok(first);
        }
        let mut items = vec![first];
        loop {
            items.push(self.atom()?);
            if !self.eat(',') {
                break;
            }
        }
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.err("',' or end of line"));
        }
        Ok(Value::Bare(items))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Field,
    Tower,
    Options,
}

const FIELD_KEYS: &[&str] = &["p", "m", "modulus"];
const TOWER_KEYS: &[&str] = &["type", "f_num", "f_den", "g_num", "g_den", "bidegree", "coeffs"];
const OPTION_KEYS: &[&str] = &[
    "levels",
    "ambient_degree",
    "ambient_modulus",
    "deltas",
    "ell",
    "allow_unequal_bidegree",
];

struct Entry {
    value: Value,
    line: usize,
    col: usize,
}

type Table = BTreeMap<(Section, String), Entry>;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn tokenize(text: &str) -> Result<(Table, usize), SpecError> {
    let mut table = Table::new();
    let mut section: Option<Section> = None;
    let mut seen_content = false;
    let mut last_line = 1;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        last_line = line_no;
        let body = strip_comment(raw);
        let indent = body.len() - body.trim_start().len();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body[..indent].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(line_no, col + trimmed.chars().count(), "']'"))?;
            section = Some(match name.trim() {
                "field" => Section::Field,
                "tower" => Section::Tower,
                "options" => Section::Options,
                _ => return Err(syntax(line_no, col + 1, "one of field, tower, options")),
            });
            seen_content = true;
            continue;
        }
        let Some(sec) = section else {
            return Err(syntax(line_no, col, "section header"));
        };
        seen_content = true;
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| syntax(line_no, col + trimmed.chars().count(), "'='"))?;
        let key = key.trim();
        let allowed = match sec {
            Section::Field => FIELD_KEYS,
            Section::Tower => TOWER_KEYS,
            Section::Options => OPTION_KEYS,
        };
        if !allowed.contains(&key) {
            return Err(syntax(line_no, col, format!("one of {}", allowed.join(", "))));
        }
        let eq = trimmed.find('=').expect("split succeeded");
        let value_offset = indent + eq + 1;
        let value_col = body[..value_offset].chars().count();
        let mut cursor = Cursor::new(value, line_no, value_col);
        let parsed = cursor.value()?;
        if table.contains_key(&(sec, key.to_string())) {
            return Err(syntax(line_no, col, format!("no second definition of '{key}'")));
        }
        table.insert(
            (sec, key.to_string()),
            Entry {
                value: parsed,
                line: line_no,
                col: value_col + 1,
            },
        );
    }
    if !seen_content {
        return Err(syntax(1, 1, "section header"));
    }
    Ok((table, last_line))
}

fn bad(e: &Entry, expected: &str) -> SpecError {
    syntax(e.line, e.col, expected)
}

fn as_int(e: &Entry) -> Result<i64, SpecError> {
    match e.value {
        Value::Int(n) => Ok(n),
        _ => Err(bad(e, "integer")),
    }
}

fn as_nonneg(e: &Entry) -> Result<u64, SpecError> {
    u64::try_from(as_int(e)?).map_err(|_| bad(e, "nonnegative integer"))
}

fn items(e: &Entry) -> Vec<&Value> {
    match &e.value {
        Value::List(v) | Value::Bare(v) => v.iter().collect(),
        other => vec![other],
    }
}

fn int_list(e: &Entry) -> Result<Vec<i64>, SpecError> {
    items(e)
        .into_iter()
        .map(|v| match v {
            Value::Int(n) => Ok(*n),
            _ => Err(bad(e, "list of integers")),
        })
        .collect()
}

fn coef_list(e: &Entry) -> Result<Vec<Coef>, SpecError> {
    let Value::List(vs) = &e.value else {
        return Err(bad(e, "'[' starting a coefficient list"));
    };
    vs.iter()
        .map(|v| match v {
            Value::Int(n) => Ok(Coef::Int(*n)),
            Value::List(inner) => inner
                .iter()
                .map(|x| match x {
                    Value::Int(n) => Ok(*n),
                    _ => Err(bad(e, "integer coordinates")),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Coef::Vector),
            _ => Err(bad(e, "integer or [c0,...] coefficient")),
        })
        .collect()
}

pub fn parse_spec(text: &str) -> Result<TowerSpecFile, SpecError> {
    let (table, last_line) = tokenize(text)?;
    let get = |s: Section, k: &str| table.get(&(s, k.to_string()));
    let require = |s: Section, k: &str| {
        get(s, k).ok_or_else(|| syntax(last_line + 1, 1, format!("key '{k}'")))
    };

    let p = as_nonneg(require(Section::Field, "p")?)?;
    let m = match get(Section::Field, "m") {
        Some(e) => u32::try_from(as_nonneg(e)?).map_err(|_| bad(e, "small integer"))?,
        None => 1,
    };
    let modulus = get(Section::Field, "modulus")
        .map(|e| {
            int_list(e)?
                .into_iter()
                .map(|c| u64::try_from(c).map_err(|_| bad(e, "nonnegative coefficients")))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;

    let ty = require(Section::Tower, "type")?;
    let tower = match &ty.value {
        Value::Word(w) if w == "separated" => TowerSection::Separated {
            f_num: coef_list(require(Section::Tower, "f_num")?)?,
            f_den: coef_list(require(Section::Tower, "f_den")?)?,
            g_num: coef_list(require(Section::Tower, "g_num")?)?,
            g_den: coef_list(require(Section::Tower, "g_den")?)?,
        },
        Value::Word(w) if w == "bihomogeneous" => {
            let bd = require(Section::Tower, "bidegree")?;
            let ds = int_list(bd)?;
            let [d1, d2] = ds.as_slice() else {
                return Err(bad(bd, "d1,d2"));
            };
            let to_usize = |d: i64| usize::try_from(d).map_err(|_| bad(bd, "nonnegative degrees"));
            TowerSection::Bihomogeneous {
                d1: to_usize(*d1)?,
                d2: to_usize(*d2)?,
                coeffs: coef_list(require(Section::Tower, "coeffs")?)?,
            }
        }
        _ => return Err(bad(ty, "separated or bihomogeneous")),
    };

    let mut options = Options::default();
    if let Some(e) = get(Section::Options, "levels") {
        let ls = int_list(e)?
            .into_iter()
            .map(|l| u32::try_from(l).ok().filter(|&l| l >= 1).ok_or_else(|| bad(e, "levels >= 1")))
            .collect::<Result<Vec<_>, _>>()?;
        options.levels = Some(ls);
    }
    if let Some(e) = get(Section::Options, "ambient_degree") {
        options.ambient_degree = Some(
            u32::try_from(as_nonneg(e)?)
                .ok()
                .filter(|&l| l >= 1)
                .ok_or_else(|| bad(e, "positive integer"))?,
        );
    }
    if let Some(e) = get(Section::Options, "ambient_modulus") {
        options.ambient_modulus = Some(
            int_list(e)?
                .into_iter()
                .map(|c| u64::try_from(c).map_err(|_| bad(e, "nonnegative coefficients")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if let Some(e) = get(Section::Options, "deltas") {
        let ds = int_list(e)?;
        if ds.iter().any(|&d| d < 0) {
            return Err(bad(e, "nonnegative deltas"));
        }
        options.deltas = Some(ds);
    }
    if let Some(e) = get(Section::Options, "ell") {
        options.ell = Some(match e.value {
            Value::Int(n) => (n, 1),
            Value::Ratio(n, d) => (n, d),
            _ => return Err(bad(e, "rational p/q")),
        });
    }
    if let Some(e) = get(Section::Options, "allow_unequal_bidegree") {
        options.allow_unequal_bidegree = match &e.value {
            Value::Word(w) if w == "true" => true,
            Value::Word(w) if w == "false" => false,
            _ => return Err(bad(e, "true or false")),
        };
    }
    Ok(TowerSpecFile {
        field: FieldSection { p, m, modulus },
        tower,
        options,
    })
}

/// A parsed spec turned into field and correspondence.
#[derive(Debug, Clone)]
pub struct Tower {
    pub field: FieldSpec,
    pub corr: Correspondence,
    pub maps: Option<(RationalMap, RationalMap)>,
    pub options: Options,
}

fn element(field: &FieldSpec, c: &Coef) -> Result<FieldElement, SpecError> {
    match c {
        Coef::Int(n) => Ok(field.from_int(*n)),
        Coef::Vector(v) => Ok(field.element(v)?),
    }
}

fn polynomial(field: &FieldSpec, cs: &[Coef]) -> Result<Polynomial, SpecError> {
    Ok(Polynomial::new(
        cs.iter().map(|c| element(field, c)).collect::<Result<_, _>>()?,
    ))
}

impl TowerSpecFile {
    pub fn build(&self) -> Result<Tower, SpecError> {
        let field = make_field(self.field.p, self.field.m, self.field.modulus.as_deref())?;
        let (corr, maps) = match &self.tower {
            TowerSection::Separated {
                f_num,
                f_den,
                g_num,
                g_den,
            } => {
                let f = RationalMap::new(
                    &field,
                    polynomial(&field, f_num)?,
                    polynomial(&field, f_den)?,
                )?;
                let g = RationalMap::new(
                    &field,
                    polynomial(&field, g_num)?,
                    polynomial(&field, g_den)?,
                )?;
                (Correspondence::from_separated(&field, &f, &g)?, Some((f, g)))
            }
            TowerSection::Bihomogeneous { d1, d2, coeffs } => {
                if coeffs.len() != (d1 + 1) * (d2 + 1) {
                    return Err(SpecError::SemanticError(format!(
                        "coeffs has {} entries, bidegree ({d1},{d2}) needs {}",
                        coeffs.len(),
                        (d1 + 1) * (d2 + 1)
                    )));
                }
                let flat: Vec<FieldElement> = coeffs
                    .iter()
                    .map(|c| element(&field, c))
                    .collect::<Result<_, _>>()?;
                let rows = flat.chunks(d2 + 1).map(<[_]>::to_vec).collect();
                (Correspondence::new(&field, rows, *d1, *d2)?, None)
            }
        };
        Ok(Tower {
            field,
            corr,
            maps,
            options: self.options.clone(),
        })
    }
}

impl Tower {
    /// Ambient field for level `r`: degree `ambient_degree` (or `r`) over the base.
    pub fn ambient_for(&self, r: u32) -> Result<FieldSpec, SpecError> {
        let ext = self.options.ambient_degree.unwrap_or(r);
        if ext % r != 0 {
            return Err(SpecError::SemanticError(format!(
                "ambient degree {ext} is not a multiple of level {r}"
            )));
        }
        let modulus = self
            .options
            .ambient_degree
            .and(self.options.ambient_modulus.as_deref());
        Ok(make_field(self.field.p(), self.field.m() * ext, modulus)?)
    }
}
