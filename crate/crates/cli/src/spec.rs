//! Textual function specifications such as `fz0p(alpha=pi/6, z0=0.5)`.
//!
//! ```text
//! spec  := family [ "(" [ pair ("," pair)* ] ")" ]
//! pair  := key "=" value
//! value := float | "pi/" int | "-pi/" int | "[" complex ("," complex)* "]"
//! ```
//!
//! Whitespace between tokens is ignored. Parsed specs print back to a
//! canonical string with keys in sorted order.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use schwarzian_core::robertson::{extremal_f0, extremal_fz0p, robertson_from_omega, Distortion};
use schwarzian_core::{
    Identity, RobertsonFunction64, SchwarzFunction, SpiralAlpha64, TaylorSeries64, C64,
    DEFAULT_ORDER,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("domain error: {0}")]
    Domain(String),
}

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError::Parse {
        offset,
        message: message.into(),
    })
}

/// An angle as written: decimal radians or a fraction `±pi/k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleLiteral {
    Radians(f64),
    PiOver { negative: bool, k: u32 },
}

impl AngleLiteral {
    pub fn radians(&self) -> f64 {
        match *self {
            AngleLiteral::Radians(x) => x,
            AngleLiteral::PiOver { negative, k } => {
                let x = PI / f64::from(k);
                if negative {
                    -x
                } else {
                    x
                }
            }
        }
    }

    /// A spiral angle strictly inside `(-π/2, π/2)`.
    pub fn to_alpha(&self) -> Result<SpiralAlpha64, SpecError> {
        let x = self.radians();
        if !(x.abs() < FRAC_PI_2) {
            return Err(SpecError::Domain(format!(
                "alpha = {self} violates |alpha| < pi/2"
            )));
        }
        Ok(SpiralAlpha64::new(x).expect("range checked"))
    }
}

impl fmt::Display for AngleLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AngleLiteral::Radians(x) => write!(f, "{x}"),
            AngleLiteral::PiOver { negative, k } => {
                write!(f, "{}pi/{k}", if negative { "-" } else { "" })
            }
        }
    }
}

impl FromStr for AngleLiteral {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let mut p = Parser::new(s);
        p.skip_ws();
        let v = p.angle()?;
        p.skip_ws();
        if p.pos != s.len() {
            return parse_err(p.pos, "trailing input after angle");
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Identity,
    F0,
    Fz0p,
    Robertson,
    Series,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::F0 => "f0",
            Family::Fz0p => "fz0p",
            Family::Robertson => "robertson",
            Family::Series => "series",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        [
            Family::Identity,
            Family::F0,
            Family::Fz0p,
            Family::Robertson,
            Family::Series,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }

    /// Required and optional keys.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Family::Identity => (&[], &["alpha"]),
            Family::F0 => (&["alpha"], &[]),
            Family::Fz0p => (&["alpha", "z0"], &[]),
            Family::Robertson => (&["alpha", "b", "p"], &[]),
            Family::Series => (&["coeffs"], &["alpha"]),
        }
    }
}

/// A validated function specification.
///
/// `alpha` is kept in the form it was written so that the canonical string
/// reproduces it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub family: Family,
    pub alpha: Option<AngleLiteral>,
    pub z0: Option<f64>,
    pub p: Option<f64>,
    pub b: Option<f64>,
    pub coeffs: Option<Vec<C64>>,
}

fn fmt_complex(z: &C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BTreeMap order of the keys: alpha, b, coeffs, p, z0
        let mut pairs = Vec::new();
        if let Some(a) = &self.alpha {
            pairs.push(format!("alpha={a}"));
        }
        if let Some(b) = self.b {
            pairs.push(format!("b={b}"));
        }
        if let Some(c) = &self.coeffs {
            let items: Vec<String> = c.iter().map(fmt_complex).collect();
            pairs.push(format!("coeffs=[{}]", items.join(", ")));
        }
        if let Some(p) = self.p {
            pairs.push(format!("p={p}"));
        }
        if let Some(z0) = self.z0 {
            pairs.push(format!("z0={z0}"));
        }
        write!(f, "{}({})", self.family.name(), pairs.join(", "))
    }
}

impl FromStr for FunctionSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_spec(s)
    }
}

/// Parses and validates a specification.
pub fn parse_spec(text: &str) -> Result<FunctionSpec, SpecError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let name_at = p.pos;
    let name = p.ident();
    let family = match Family::from_name(name) {
        Some(f) => f,
        None if name.is_empty() => return parse_err(name_at, "expected a family name"),
        None => return parse_err(name_at, format!("unknown family '{name}'")),
    };
    let mut spec = FunctionSpec {
        family,
        alpha: None,
        z0: None,
        p: None,
        b: None,
        coeffs: None,
    };
    let mut seen = BTreeSet::new();
    p.skip_ws();
    if p.eat('(') {
        p.skip_ws();
        if !p.eat(')') {
            loop {
                p.skip_ws();
                let key_at = p.pos;
                let key = p.ident();
                if key.is_empty() {
                    return parse_err(key_at, "expected a key");
                }
                let (req, opt) = family.keys();
                if !req.contains(&key) && !opt.contains(&key) {
                    return parse_err(
                        key_at,
                        format!("key '{key}' is not accepted by {}", family.name()),
                    );
                }
                if !seen.insert(key) {
                    return parse_err(key_at, format!("duplicate key '{key}'"));
                }
                p.skip_ws();
                p.expect('=')?;
                p.skip_ws();
                match key {
                    "alpha" => spec.alpha = Some(p.angle()?),
                    "z0" => spec.z0 = Some(p.float()?),
                    "p" => spec.p = Some(p.float()?),
                    "b" => spec.b = Some(p.float()?),
                    "coeffs" => spec.coeffs = Some(p.complex_list()?),
                    _ => unreachable!("key filtered above"),
                }
                p.skip_ws();
                if p.eat(',') {
                    continue;
                }
                p.expect(')')?;
                break;
            }
        }
    }
    p.skip_ws();
    if p.pos != text.len() {
        return parse_err(p.pos, "trailing input");
    }
    let (req, _) = family.keys();
    if let Some(missing) = req.iter().find(|k| !seen.contains(*k)) {
        return parse_err(
            text.len(),
            format!("{} requires key '{missing}'", family.name()),
        );
    }
    spec.validate()?;
    Ok(spec)
}

impl FunctionSpec {
    fn validate(&self) -> Result<(), SpecError> {
        if let Some(a) = &self.alpha {
            a.to_alpha()?;
        }
        if let Some(z0) = self.z0 {
            if !(z0.abs() < 1.0) {
                return Err(SpecError::Domain(format!("z0 = {z0} violates |z0| < 1")));
            }
        }
        if let Some(b) = self.b {
            if !(b.abs() < 1.0) {
                return Err(SpecError::Domain(format!("b = {b} violates |b| < 1")));
            }
        }
        if let Some(p) = self.p {
            if p != 1.0 && p != -1.0 {
                return Err(SpecError::Domain(format!("p = {p} must be 1 or -1")));
            }
        }
        if let Some(c) = &self.coeffs {
            if c.len() < 2 || c[1] == Complex::new(0.0, 0.0) {
                return Err(SpecError::Domain(
                    "coeffs need a nonzero linear coefficient (f'(0) != 0)".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn spiral_alpha(&self) -> Option<SpiralAlpha64> {
        self.alpha
            .map(|a| a.to_alpha().expect("validated at parse time"))
    }

    /// Constructs the function; Robertson constructions use series order `order`.
    pub fn build(&self, order: usize) -> Result<BuiltFunction, SpecError> {
        let domain = |e: schwarzian_core::Error| SpecError::Domain(e.to_string());
        let alpha = self.spiral_alpha();
        Ok(match self.family {
            Family::Identity => BuiltFunction::Identity(Identity::new()),
            Family::F0 => {
                BuiltFunction::Robertson(extremal_f0(alpha.unwrap(), order).map_err(domain)?)
            }
            Family::Fz0p => BuiltFunction::Robertson(
                extremal_fz0p(alpha.unwrap(), self.z0.unwrap(), order).map_err(domain)?,
            ),
            Family::Robertson => {
                let omega =
                    SchwarzFunction::blaschke2(self.p.unwrap(), self.b.unwrap()).map_err(domain)?;
                BuiltFunction::Robertson(
                    robertson_from_omega(alpha.unwrap(), omega, order).map_err(domain)?,
                )
            }
            Family::Series => {
                let mut c = self.coeffs.clone().unwrap();
                c.resize(c.len().max(order + 1), Complex::new(0.0, 0.0));
                BuiltFunction::Series(TaylorSeries64::from_coeffs(c))
            }
        })
    }

    pub fn build_default(&self) -> Result<BuiltFunction, SpecError> {
        self.build(DEFAULT_ORDER)
    }
}

/// A function constructed from a [`FunctionSpec`].
#[derive(Debug, Clone)]
pub enum BuiltFunction {
    Identity(Identity<f64>),
    /// Evaluated in closed form through its Schwarz function.
    Robertson(RobertsonFunction64),
    /// Evaluated from the truncated polynomial.
    Series(TaylorSeries64),
}

impl BuiltFunction {
    pub fn evaluator(&self) -> &'static str {
        match self {
            BuiltFunction::Identity(_) | BuiltFunction::Robertson(_) => "closed-form",
            BuiltFunction::Series(_) => "series",
        }
    }
}

impl Distortion for BuiltFunction {
    type Scalar = f64;

    fn pre_schwarzian(&self, z: C64) -> schwarzian_core::Result<C64> {
        match self {
            BuiltFunction::Identity(f) => f.pre_schwarzian(z),
            BuiltFunction::Robertson(f) => f.pre_schwarzian(z),
            BuiltFunction::Series(f) => f.pre_schwarzian(z),
        }
    }

    fn schwarzian(&self, z: C64) -> schwarzian_core::Result<C64> {
        match self {
            BuiltFunction::Identity(f) => f.schwarzian(z),
            BuiltFunction::Robertson(f) => f.schwarzian(z),
            BuiltFunction::Series(f) => f.schwarzian(z),
        }
    }

    fn truncation_radius(&self) -> Option<f64> {
        match self {
            BuiltFunction::Identity(f) => Distortion::truncation_radius(f),
            BuiltFunction::Robertson(f) => Distortion::truncation_radius(f),
            BuiltFunction::Series(f) => Distortion::truncation_radius(f),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => parse_err(self.pos, format!("expected '{c}', found '{found}'")),
                None => parse_err(self.pos, format!("expected '{c}', found end of input")),
            }
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !f(c))
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn ident(&mut self) -> &'a str {
        self.take_while(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    /// Unsigned decimal literal such as `12`, `0.5`, `.5` or `1e-3`.
    fn unsigned_number(&mut self) -> Result<f64, SpecError> {
        let start = self.pos;
        self.take_while(|c| c.is_ascii_digit() || c == '.');
        if matches!(self.peek(), Some('e') | Some('E')) && self.pos > start {
            self.pos += 1;
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.pos += 1;
            }
            self.take_while(|c| c.is_ascii_digit());
        }
        let lit = &self.text[start..self.pos];
        if lit.is_empty() {
            return parse_err(start, "expected a number");
        }
        match lit.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => parse_err(start, format!("malformed number '{lit}'")),
        }
    }

    fn sign(&mut self) -> bool {
        if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        }
    }

    fn float(&mut self) -> Result<f64, SpecError> {
        let negative = self.sign();
        let x = self.unsigned_number()?;
        Ok(if negative { -x } else { x })
    }

    fn angle(&mut self) -> Result<AngleLiteral, SpecError> {
        let start = self.pos;
        let negative = self.sign();
        if self.rest().starts_with("pi") {
            self.pos += 2;
            self.skip_ws();
            self.expect('/')?;
            self.skip_ws();
            let at = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            return match digits.parse::<u32>() {
                Ok(k) if k > 0 => Ok(AngleLiteral::PiOver { negative, k }),
                _ => parse_err(at, "expected a positive integer after 'pi/'"),
            };
        }
        self.pos = start;
        Ok(AngleLiteral::Radians(self.float()?))
    }

    /// `a`, `bi`, `a+bi` or `a-bi`; `i` alone means `1i`.
    fn complex(&mut self) -> Result<C64, SpecError> {
        let first_neg = self.sign();
        self.skip_ws();
        let first = if self.peek() == Some('i') {
            1.0
        } else {
            self.unsigned_number()?
        };
        let first = if first_neg { -first } else { first };
        self.skip_ws();
        if self.eat('i') {
            return Ok(Complex::new(0.0, first));
        }
        self.skip_ws();
        if matches!(self.peek(), Some('+') | Some('-')) {
            let neg = self.sign();
            self.skip_ws();
            let im = if self.peek() == Some('i') {
                1.0
            } else {
                self.unsigned_number()?
            };
            self.skip_ws();
            if !self.eat('i') {
                return parse_err(self.pos, "expected 'i' after the imaginary part");
            }
            return Ok(Complex::new(first, if neg { -im } else { im }));
        }
        Ok(Complex::new(first, 0.0))
    }

    fn complex_list(&mut self) -> Result<Vec<C64>, SpecError> {
        self.expect('[')?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            out.push(self.complex()?);
            self.skip_ws();
            if self.eat(',') {
                continue;
            }
            self.expect(']')?;
            return Ok(out);
        }
    }
}
