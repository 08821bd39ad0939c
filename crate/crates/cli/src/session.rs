//! Line-oriented sessions: named bindings, command dispatch, rendering.
//!
//! A session processes one line at a time. A line is blank, a comment
//! (`#` first), a binding `let <name> = <command or expression>`, a
//! command (first word from the fixed command list, then its arguments),
//! or a bare expression, which prints in canonical form.
//!
//! Command arguments that are expressions split on top-level commas when
//! any are present (commas inside parentheses or braces don't count) and
//! on whitespace otherwise, so `relation 2 u v` and
//! `relation 2 ab' + ba', ba' + ab'` both read as intended.

use std::collections::BTreeMap;
use std::fmt;

use leavitt_core::json::{ElementJson, TableJson, TensorJson};
use leavitt_core::tensor::{independent_up_to, laurent_image, TensorElement};
use leavitt_core::projections::{
    is_projection, projection_standard_form, twist_to_unital, unit_equivalence,
};
use leavitt_core::relations::{find_relation_report, transfer_polynomial};
use leavitt_core::{
    AlgebraElement, BivariatePolynomial, EventuallyPeriodicPath, Ring, Scalar, Table,
};

use crate::parser::{is_valid_name, parse_expr, Expr, SyntaxError};

/// Anything a session can bind to a name or print.
#[derive(Debug, Clone)]
pub enum Value {
    Element(AlgebraElement),
    Tensor(TensorElement),
    Table(Table),
    Poly(BivariatePolynomial),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Element(_) => "an algebra element",
            Value::Tensor(_) => "a tensor element",
            Value::Table(_) => "a table",
            Value::Poly(_) => "a polynomial",
        }
    }
}

/// Errors split by exit code: syntax errors exit 2, evaluation errors 1.
#[derive(Debug, Clone)]
pub enum SessionError {
    Syntax(SyntaxError),
    Eval(String),
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SessionError::Syntax(e) => write!(f, "{e}"),
            SessionError::Eval(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SessionError {}

fn eval_err(e: impl fmt::Display) -> SessionError {
    SessionError::Eval(e.to_string())
}

/// The fixed command list; any other first word starts an expression.
const COMMANDS: &[&str] = &[
    "normal",
    "unitary?",
    "reduced",
    "uplus",
    "signsplit",
    "fullspec",
    "coeff-free",
    "table",
    "compose",
    "inverse",
    "reduce",
    "tounitary",
    "fromunitary",
    "act",
    "fixed",
    "orbits",
    "tensor-eval",
    "laurent",
    "indep",
    "relation",
    "transfer",
    "projection?",
    "standard-form",
    "mvn",
    "twist",
];

/// One command argument with the character offset of its start inside the
/// original line, so syntax errors keep line-accurate columns.
struct Arg {
    text: String,
    offset: usize,
}

pub struct Session {
    ring: Ring,
    json: bool,
    bindings: BTreeMap<String, Value>,
}

impl Session {
    pub fn new(ring: Ring, json: bool) -> Session {
        Session {
            ring,
            json,
            bindings: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Evaluates one expression in this session's ring without binding or
    /// printing it.
    pub fn eval_expression(&self, text: &str) -> Result<Value, SessionError> {
        self.eval_text(text, 0)
    }

    /// Processes one line; `Ok(Some(text))` is output for stdout,
    /// `Ok(None)` silence (blank lines, comments, bindings).
    pub fn run_line(&mut self, line: &str) -> Result<Option<String>, SessionError> {
        let chars: Vec<char> = line.chars().collect();
        let start = chars.iter().take_while(|c| c.is_whitespace()).count();
        let body: String = chars[start..].iter().collect::<String>().trim_end().to_string();
        if body.is_empty() || body.starts_with('#') {
            return Ok(None);
        }
        let (first, first_len) = first_word(&body);
        if first == "let" {
            return self.run_let(&body, start).map(|()| None);
        }
        if COMMANDS.contains(&first.as_str()) {
            let rest_off = first_len + gap_len(&body, first_len);
            let rest: String = body.chars().skip(rest_off).collect();
            let out = self.run_command(&first, &rest, start + rest_off)?;
            return Ok(Some(out.text));
        }
        let value = self.eval_text(&body, start)?;
        Ok(Some(self.render(&value)))
    }

    /// `let <name> = <command or expression>`: binds and stays silent.
    fn run_let(&mut self, body: &str, base: usize) -> Result<(), SessionError> {
        let eq = body
            .chars()
            .position(|c| c == '=')
            .ok_or_else(|| eval_err("a binding needs the form `let <name> = <value>`"))?;
        let head: String = body.chars().take(eq).collect();
        let rhs: String = body.chars().skip(eq + 1).collect();
        let name = head.trim_start_matches("let").trim();
        if !is_valid_name(name) {
            return Err(eval_err(format!(
                "`{name}` cannot be used as a name; names are identifiers other \
                 than `e`, `ox`, `let`, and words spelled with only `a` and `b`"
            )));
        }
        let rhs_off = base + eq + 1;
        let pad = gap_len(&rhs, 0);
        let tail: String = rhs.chars().skip(pad).collect();
        let (first, first_len) = first_word(&tail);
        let value = if COMMANDS.contains(&first.as_str()) {
            let arg_off = pad + first_len + gap_len(&tail, first_len);
            let rest: String = rhs.chars().skip(arg_off).collect();
            let out = self.run_command(&first, &rest, rhs_off + arg_off)?;
            out.value.ok_or_else(|| {
                eval_err(format!("`{first}` does not produce a value that can be bound"))
            })?
        } else {
            self.eval_text(&rhs, rhs_off)?
        };
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    // ----- expression evaluation -------------------------------------

    fn eval_text(&self, text: &str, offset: usize) -> Result<Value, SessionError> {
        let expr =
            parse_expr(text).map_err(|e| SessionError::Syntax(e.shifted(offset)))?;
        self.eval(&expr)
    }

    fn eval(&self, e: &Expr) -> Result<Value, SessionError> {
        match e {
            Expr::Scalar(s) => {
                let c = self.ring.parse_scalar(s).map_err(eval_err)?;
                Ok(Value::Element(AlgebraElement::scalar(self.ring, c)))
            }
            Expr::Gen('a') => Ok(Value::Element(AlgebraElement::gen_a(self.ring))),
            Expr::Gen(_) => Ok(Value::Element(AlgebraElement::gen_b(self.ring))),
            Expr::One => Ok(Value::Element(AlgebraElement::one(self.ring))),
            Expr::Name(n) => self
                .bindings
                .get(n)
                .cloned()
                .ok_or_else(|| eval_err(format!("unknown name `{n}`"))),
            Expr::Adjoint(x) => match self.eval(x)? {
                Value::Element(v) => Ok(Value::Element(v.adjoint())),
                Value::Tensor(t) => Ok(Value::Tensor(t.adjoint())),
                other => Err(eval_err(format!(
                    "the adjoint applies to algebra and tensor elements, not {}",
                    other.kind()
                ))),
            },
            Expr::Neg(x) => match self.eval(x)? {
                Value::Element(v) => Ok(Value::Element(v.neg())),
                Value::Tensor(t) => Ok(Value::Tensor(t.neg())),
                Value::Poly(p) => Ok(Value::Poly(p.neg())),
                other => Err(eval_err(format!("cannot negate {}", other.kind()))),
            },
            Expr::Add(x, y) => self.combine(x, y, "+"),
            Expr::Sub(x, y) => self.combine(x, y, "-"),
            Expr::Mul(x, y) => self.combine(x, y, "*"),
            Expr::Tensor(x, y) => match (self.eval(x)?, self.eval(y)?) {
                (Value::Element(u), Value::Element(v)) => Ok(Value::Tensor(
                    TensorElement::tensor_of(&u, &v).map_err(eval_err)?,
                )),
                (u, v) => Err(eval_err(format!(
                    "`ox` expects algebra elements on both sides, found {} and {}",
                    u.kind(),
                    v.kind()
                ))),
            },
        }
    }

    fn combine(&self, x: &Expr, y: &Expr, op: &str) -> Result<Value, SessionError> {
        let (u, v) = (self.eval(x)?, self.eval(y)?);
        match (op, u, v) {
            ("+", Value::Element(u), Value::Element(v)) => {
                Ok(Value::Element(u.add(&v).map_err(eval_err)?))
            }
            ("+", Value::Tensor(u), Value::Tensor(v)) => {
                Ok(Value::Tensor(u.add(&v).map_err(eval_err)?))
            }
            ("+", Value::Poly(u), Value::Poly(v)) => {
                Ok(Value::Poly(u.add(&v).map_err(eval_err)?))
            }
            ("-", Value::Element(u), Value::Element(v)) => {
                Ok(Value::Element(u.sub(&v).map_err(eval_err)?))
            }
            ("-", Value::Tensor(u), Value::Tensor(v)) => {
                Ok(Value::Tensor(u.sub(&v).map_err(eval_err)?))
            }
            ("-", Value::Poly(u), Value::Poly(v)) => {
                Ok(Value::Poly(u.sub(&v).map_err(eval_err)?))
            }
            ("*", Value::Element(u), Value::Element(v)) => {
                Ok(Value::Element(u.mul(&v).map_err(eval_err)?))
            }
            ("*", Value::Tensor(u), Value::Tensor(v)) => {
                Ok(Value::Tensor(u.mul(&v).map_err(eval_err)?))
            }
            ("*", Value::Poly(u), Value::Poly(v)) => {
                Ok(Value::Poly(u.mul(&v).map_err(eval_err)?))
            }
            ("*", Value::Element(u), Value::Tensor(t)) => match as_scalar(&u) {
                Some(c) => Ok(Value::Tensor(t.scale(&c))),
                None => Err(eval_err(
                    "only scalars multiply tensor elements; lift the element with `ox` first",
                )),
            },
            ("*", Value::Tensor(t), Value::Element(u)) => match as_scalar(&u) {
                Some(c) => Ok(Value::Tensor(t.scale(&c))),
                None => Err(eval_err(
                    "only scalars multiply tensor elements; lift the element with `ox` first",
                )),
            },
            (_, u, v) => Err(eval_err(format!(
                "`{op}` is not defined between {} and {}",
                u.kind(),
                v.kind()
            ))),
        }
    }

    // ----- argument plumbing ------------------------------------------

    fn expect_element(&self, arg: &Arg) -> Result<AlgebraElement, SessionError> {
        match self.eval_text(&arg.text, arg.offset)? {
            Value::Element(x) => Ok(x),
            other => Err(eval_err(format!(
                "expected an algebra element, found {}",
                other.kind()
            ))),
        }
    }

    fn expect_tensor(&self, arg: &Arg) -> Result<TensorElement, SessionError> {
        match self.eval_text(&arg.text, arg.offset)? {
            Value::Tensor(t) => Ok(t),
            Value::Element(x) => match as_scalar(&x) {
                // A scalar is its own tensor lift, so accept it.
                Some(c) => Ok(TensorElement::one(self.ring).scale(&c)),
                None => Err(eval_err(
                    "expected a tensor expression; lift algebra elements with `ox`",
                )),
            },
            other => Err(eval_err(format!(
                "expected a tensor expression, found {}",
                other.kind()
            ))),
        }
    }

    /// Tables come as `{β -> α; ...}` literals or bound names.
    fn expect_table(&self, arg: &Arg) -> Result<Table, SessionError> {
        let text = arg.text.trim();
        if text.starts_with('{') {
            return text.parse::<Table>().map_err(eval_err);
        }
        match self.eval_text(&arg.text, arg.offset)? {
            Value::Table(g) => Ok(g),
            other => Err(eval_err(format!(
                "expected a table, found {}",
                other.kind()
            ))),
        }
    }

    /// Polynomials come as bound names or `w`/`z` term lists.
    fn expect_poly(&self, arg: &Arg) -> Result<BivariatePolynomial, SessionError> {
        let text = arg.text.trim();
        if is_valid_name(text) {
            if let Some(value) = self.bindings.get(text) {
                return match value {
                    Value::Poly(p) => Ok(p.clone()),
                    other => Err(eval_err(format!(
                        "expected a polynomial, found {}",
                        other.kind()
                    ))),
                };
            }
        }
        BivariatePolynomial::parse_in(self.ring, text).map_err(eval_err)
    }

    // ----- rendering ---------------------------------------------------

    fn render(&self, value: &Value) -> String {
        if self.json {
            match value {
                Value::Element(x) => to_json(&ElementJson::from_element(x)),
                Value::Tensor(t) => to_json(&TensorJson::from_tensor(t)),
                Value::Table(g) => to_json(&TableJson::from_table(g)),
                // Polynomials have no JSON form; the display line is exact.
                Value::Poly(p) => p.to_string(),
            }
        } else {
            match value {
                Value::Element(x) => x.to_string(),
                Value::Tensor(t) => t.to_string(),
                Value::Table(g) => g.to_string(),
                Value::Poly(p) => p.to_string(),
            }
        }
    }

    // ----- commands ----------------------------------------------------

    fn run_command(
        &mut self,
        name: &str,
        rest: &str,
        base: usize,
    ) -> Result<CommandOutput, SessionError> {
        match name {
            "normal" | "tensor-eval" => {
                let value = match name {
                    "normal" => self.eval_text(rest, base)?,
                    _ => Value::Tensor(self.expect_tensor(&whole_arg(rest, base))?),
                };
                Ok(CommandOutput {
                    text: self.render(&value),
                    value: Some(value),
                })
            }
            "unitary?" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                Ok(CommandOutput::text_only(x.is_unitary().to_string()))
            }
            "reduced" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let rf = x.reduced_form().map_err(eval_err)?;
                Ok(CommandOutput::text_only(rf.to_string()))
            }
            "uplus" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let value = Value::Element(x.u_plus().map_err(eval_err)?);
                Ok(CommandOutput {
                    text: self.render(&value),
                    value: Some(value),
                })
            }
            "signsplit" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let (plus, minus) = x.sign_split().map_err(eval_err)?;
                Ok(CommandOutput::text_only(format!(
                    "plus: {plus}\nminus: {minus}"
                )))
            }
            "fullspec" => {
                let (d, arg) = peel_count::<u32>(rest, base, "a degree bound")?;
                let x = self.expect_element(&arg)?;
                let text = match x.full_spectrum_up_to(d).map_err(eval_err)? {
                    Some(q) => q.to_string(),
                    None => format!("independent up to degree {d}"),
                };
                Ok(CommandOutput::text_only(text))
            }
            "coeff-free" => {
                let (m, arg) = peel_count::<usize>(rest, base, "a level")?;
                let x = self.expect_element(&arg)?;
                let free = x.is_coefficient_free_at_level(m).map_err(eval_err)?;
                Ok(CommandOutput::text_only(free.to_string()))
            }
            "table" => {
                let g = rest.trim().parse::<Table>().map_err(eval_err)?;
                Ok(self.table_output(g))
            }
            "compose" => {
                let [left, right] = two_args(rest, base, "compose")?;
                let g = self.expect_table(&left)?;
                let h = self.expect_table(&right)?;
                Ok(self.table_output(g.compose(&h)))
            }
            "inverse" => {
                let g = self.expect_table(&whole_arg(rest, base))?;
                Ok(self.table_output(g.inverse()))
            }
            "reduce" => {
                let g = self.expect_table(&whole_arg(rest, base))?;
                Ok(self.table_output(g.reduce()))
            }
            "tounitary" => {
                let g = self.expect_table(&whole_arg(rest, base))?;
                let value = Value::Element(g.to_unitary(self.ring));
                Ok(CommandOutput {
                    text: self.render(&value),
                    value: Some(value),
                })
            }
            "fromunitary" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let g = Table::from_unitary(&x).map_err(eval_err)?;
                Ok(self.table_output(g))
            }
            "act" => {
                let (path_text, arg) = token_then_expr(rest, base, "a path")?;
                let path = path_text
                    .parse::<EventuallyPeriodicPath>()
                    .map_err(eval_err)?;
                let g = self.expect_table(&arg)?;
                Ok(CommandOutput::text_only(g.act(&path).to_string()))
            }
            "fixed" => {
                let g = self.expect_table(&whole_arg(rest, base))?;
                Ok(CommandOutput::text_only(g.fixed_points().to_string()))
            }
            "orbits" => {
                let (bound, arg) = peel_count::<u32>(rest, base, "a power bound")?;
                let g = self.expect_table(&arg)?;
                let lines: Vec<String> = g
                    .finite_orbit_search(bound)
                    .into_iter()
                    .map(|(k, fp)| format!("k={k}: {fp}"))
                    .collect();
                Ok(CommandOutput::text_only(lines.join("\n")))
            }
            "laurent" => {
                let [p, u, v] = three_args(rest, base, "laurent")?;
                let p = self.expect_poly(&p)?;
                let u = self.expect_element(&u)?;
                let v = self.expect_element(&v)?;
                let value = Value::Tensor(laurent_image(&p, &u, &v).map_err(eval_err)?);
                Ok(CommandOutput {
                    text: self.render(&value),
                    value: Some(value),
                })
            }
            "indep" => {
                let (d, rest_arg) = peel_count::<u32>(rest, base, "a degree bound")?;
                let [u, v] = two_args(&rest_arg.text, rest_arg.offset, "indep")?;
                let u = self.expect_element(&u)?;
                let v = self.expect_element(&v)?;
                let free = independent_up_to(&u, &v, d).map_err(eval_err)?;
                Ok(CommandOutput::text_only(free.to_string()))
            }
            "relation" => {
                let (d, rest_arg) = peel_count::<u32>(rest, base, "a degree bound")?;
                let [ua, va] = two_args(&rest_arg.text, rest_arg.offset, "relation")?;
                let u = self.expect_element(&ua)?;
                let v = self.expect_element(&va)?;
                let report = find_relation_report(&u, &v, d).map_err(eval_err)?;
                let mut lines = vec![format!(
                    "matrix {}x{}, kernel rank {}",
                    report.rows, report.cols, report.kernel_rank
                )];
                let value = match report.polynomial {
                    Some(q) => {
                        let vanishes = q
                            .evaluate(&u, &v)
                            .map(|x| x.is_zero())
                            .unwrap_or(false);
                        lines.push(format!("q = {q}"));
                        lines.push(format!("q(u,v) = 0: {vanishes}"));
                        Some(Value::Poly(q))
                    }
                    None => {
                        lines.push(format!("no relation up to degree {d}"));
                        None
                    }
                };
                Ok(CommandOutput {
                    text: lines.join("\n"),
                    value,
                })
            }
            "transfer" => {
                let q = self.expect_poly(&whole_arg(rest, base))?;
                let value = Value::Poly(transfer_polynomial(&q).map_err(eval_err)?);
                Ok(CommandOutput {
                    text: self.render(&value),
                    value: Some(value),
                })
            }
            "projection?" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                Ok(CommandOutput::text_only(is_projection(&x).to_string()))
            }
            "standard-form" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let code = projection_standard_form(&x).map_err(eval_err)?;
                let words: Vec<String> = code.iter().map(|w| w.to_string()).collect();
                Ok(CommandOutput::text_only(to_json(&words)))
            }
            "mvn" => {
                let x = self.expect_element(&whole_arg(rest, base))?;
                let t = unit_equivalence(&x).map_err(eval_err)?;
                Ok(CommandOutput {
                    text: to_json(&ElementJson::from_element(&t)),
                    value: Some(Value::Element(t)),
                })
            }
            "twist" => {
                let args = split_args(rest, base);
                if args.len() < 2 {
                    return Err(eval_err(
                        "twist needs at least one image and the projection, \
                         e.g. `twist x, y, p`",
                    ));
                }
                let (p_arg, images) = args.split_last().expect("checked length");
                let images = images
                    .iter()
                    .map(|a| self.expect_element(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = self.expect_element(p_arg)?;
                let twisted = twist_to_unital(&images, &p).map_err(eval_err)?;
                let text = if self.json {
                    to_json(
                        &twisted
                            .iter()
                            .map(ElementJson::from_element)
                            .collect::<Vec<_>>(),
                    )
                } else {
                    twisted
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join("\n")
                };
                Ok(CommandOutput::text_only(text))
            }
            other => unreachable!("dispatch only routes known commands, got {other}"),
        }
    }

    fn table_output(&self, g: Table) -> CommandOutput {
        let value = Value::Table(g);
        CommandOutput {
            text: self.render(&value),
            value: Some(value),
        }
    }
}

struct CommandOutput {
    text: String,
    value: Option<Value>,
}

impl CommandOutput {
    fn text_only(text: String) -> CommandOutput {
        CommandOutput { text, value: None }
    }
}

/// The single scalar `c` when the element is `c·1` (including zero).
fn as_scalar(x: &AlgebraElement) -> Option<Scalar> {
    if x.is_zero() {
        return Some(x.ring().zero());
    }
    let mut it = x.terms();
    let (m, c) = it.next()?;
    if it.next().is_none() && m.alpha.is_empty() && m.beta.is_empty() {
        Some(c.clone())
    } else {
        None
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// First whitespace-delimited word and its length in characters.
fn first_word(s: &str) -> (String, usize) {
    let word: String = s.chars().take_while(|c| !c.is_whitespace()).collect();
    let len = word.chars().count();
    (word, len)
}

/// Characters of whitespace following position `from`.
fn gap_len(s: &str, from: usize) -> usize {
    s.chars()
        .skip(from)
        .take_while(|c| c.is_whitespace())
        .count()
}

fn whole_arg(rest: &str, base: usize) -> Arg {
    Arg {
        text: rest.to_string(),
        offset: base,
    }
}

/// Splits on top-level commas when any are present, else on whitespace,
/// keeping each piece's character offset into the line.
fn split_args(rest: &str, base: usize) -> Vec<Arg> {
    let chars: Vec<char> = rest.chars().collect();
    let mut depth = 0i32;
    let mut comma_positions = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => comma_positions.push(i),
            _ => {}
        }
    }
    let mut args = Vec::new();
    if comma_positions.is_empty() {
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            args.push(Arg {
                text: chars[start..i].iter().collect(),
                offset: base + start,
            });
        }
    } else {
        let mut start = 0;
        for end in comma_positions.into_iter().chain([chars.len()]) {
            args.push(Arg {
                text: chars[start..end].iter().collect(),
                offset: base + start,
            });
            start = end + 1;
        }
    }
    args
}

/// Peels the first whitespace-delimited token as a count, returning it with
/// the remaining text as one argument.
fn peel_count<T: std::str::FromStr>(
    rest: &str,
    base: usize,
    what: &str,
) -> Result<(T, Arg), SessionError> {
    let trimmed_off = gap_len(rest, 0);
    let tail: String = rest.chars().skip(trimmed_off).collect();
    let (tok, tok_len) = first_word(&tail);
    if tok.is_empty() {
        return Err(eval_err(format!("expected {what}")));
    }
    let n = tok
        .parse::<T>()
        .map_err(|_| eval_err(format!("expected {what}, found `{tok}`")))?;
    let rest_off = trimmed_off + tok_len;
    Ok((
        n,
        Arg {
            text: rest.chars().skip(rest_off).collect(),
            offset: base + rest_off,
        },
    ))
}

/// Peels one literal token (e.g. a path), returning it and the remainder.
fn token_then_expr(
    rest: &str,
    base: usize,
    what: &str,
) -> Result<(String, Arg), SessionError> {
    let trimmed_off = gap_len(rest, 0);
    let tail: String = rest.chars().skip(trimmed_off).collect();
    let (tok, tok_len) = first_word(&tail);
    if tok.is_empty() {
        return Err(eval_err(format!("expected {what}")));
    }
    let rest_off = trimmed_off + tok_len;
    Ok((
        tok,
        Arg {
            text: rest.chars().skip(rest_off).collect(),
            offset: base + rest_off,
        },
    ))
}

fn two_args(rest: &str, base: usize, cmd: &str) -> Result<[Arg; 2], SessionError> {
    let args = split_args(rest, base);
    match args.try_into() {
        Ok(pair) => Ok(pair),
        Err(args) => Err(eval_err(format!(
            "{cmd} takes exactly two arguments, found {}; separate \
             expressions containing spaces with commas",
            args.len()
        ))),
    }
}

fn three_args(rest: &str, base: usize, cmd: &str) -> Result<[Arg; 3], SessionError> {
    let args = split_args(rest, base);
    match args.try_into() {
        Ok(triple) => Ok(triple),
        Err(args) => Err(eval_err(format!(
            "{cmd} takes exactly three arguments, found {}; separate \
             expressions containing spaces with commas",
            args.len()
        ))),
    }
}
