//! Expression grammar for the command-line surface.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := juxt (('*' | 'ox') juxt)*
//! juxt    := factor (factor)*
//! factor  := primary ("'")*
//! primary := scalar | 'a' | 'b' | 'e' | name | '(' expr ')'
//! ```
//!
//! `*` and `ox` share one precedence level and associate to the left;
//! juxtaposition binds tighter (indistinguishable from `*` between algebra
//! elements, since multiplication is associative, but it keeps a whole
//! word on one tensor leg: `1 ox ba'` is `1 ⊗ ba*`, not `(1 ⊗ b)·a*`).
//! The adjoint mark `'` binds tighter still, `+`/`-` looser. A run
//! of letters drawn only from `{a, b}` reads as a product of generators
//! (`ab'` is `a·b*`), `e` is the unit, and any other identifier is a name
//! to be resolved against session bindings. Scalars are unsigned integers
//! or fractions `p/q`; coefficient text is kept verbatim so each ring can
//! parse it exactly.

use std::fmt;

/// A parsed expression. Coefficient literals stay as text so every
/// coefficient ring reads them exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar(String),
    /// One generator, `'a'` or `'b'`.
    Gen(char),
    /// The unit `e`.
    One,
    /// A session binding.
    Name(String),
    Adjoint(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

/// A syntax error with a 1-based character column into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    /// Shifts the reported column by `offset` characters, for text that
    /// was sliced out of a longer line.
    pub fn shifted(mut self, offset: usize) -> SyntaxError {
        self.column += offset;
        self
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Gen(char),
    One,
    Name(String),
    Ox,
    Plus,
    Minus,
    Star,
    Slash,
    Quote,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Gen(c) => format!("`{c}`"),
        Tok::One => "`e`".to_string(),
        Tok::Name(w) => format!("`{w}`"),
        Tok::Ox => "`ox`".to_string(),
        Tok::Plus => "`+`".to_string(),
        Tok::Minus => "`-`".to_string(),
        Tok::Star => "`*`".to_string(),
        Tok::Slash => "`/`".to_string(),
        Tok::Quote => "`'`".to_string(),
        Tok::LParen => "`(`".to_string(),
        Tok::RParen => "`)`".to_string(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "ox" {
                toks.push((Tok::Ox, col));
            } else if word == "e" {
                toks.push((Tok::One, col));
            } else if word.chars().all(|ch| ch == 'a' || ch == 'b') {
                for (k, ch) in word.chars().enumerate() {
                    toks.push((Tok::Gen(ch), col + k));
                }
            } else {
                toks.push((Tok::Name(word), col));
            }
        } else {
            let tok = match c {
                '\'' => Tok::Quote,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(SyntaxError {
                        column: col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            };
            toks.push((tok, col));
            i += 1;
        }
    }
    Ok(toks)
}

/// Whether `name` is usable as a binding name: it must lex as a single
/// identifier token, which rules out `e`, `ox`, and anything spelled with
/// only the generator letters.
pub fn is_valid_name(name: &str) -> bool {
    matches!(lex(name).as_deref(), Ok([(Tok::Name(w), _)]) if w != "let" && w == name)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expected(&self, what: &str, got: Option<(Tok, usize)>) -> SyntaxError {
        match got {
            Some((t, col)) => SyntaxError {
                column: col,
                message: format!("expected {what}, found {}", describe(&t)),
            },
            None => SyntaxError {
                column: self.end_col,
                message: format!("expected {what}, found end of input"),
            },
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let negated = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if negated {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.term()?;
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.term()?;
                acc = Expr::Sub(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Gen(_) | Tok::One | Tok::Name(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.juxtaposition()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.juxtaposition()?;
                acc = Expr::Mul(Box::new(acc), Box::new(rhs));
            } else if self.eat(&Tok::Ox) {
                let rhs = self.juxtaposition()?;
                acc = Expr::Tensor(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// A run of adjacent factors, multiplied. Binding juxtaposition tighter
    /// than `*` and `ox` is invisible for `*` (multiplication is
    /// associative) and makes printed tensor terms like `1 ox ba'`
    /// re-parse with the whole word on the right leg.
    fn juxtaposition(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.factor()?;
        while self.starts_factor() {
            let rhs = self.factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.primary()?;
        while self.eat(&Tok::Quote) {
            acc = Expr::Adjoint(Box::new(acc));
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.next() {
            Some((Tok::Int(n), _)) => {
                if self.eat(&Tok::Slash) {
                    match self.next() {
                        Some((Tok::Int(d), _)) => Ok(Expr::Scalar(format!("{n}/{d}"))),
                        got => Err(self.expected("a denominator", got)),
                    }
                } else {
                    Ok(Expr::Scalar(n))
                }
            }
            Some((Tok::Gen(c), _)) => Ok(Expr::Gen(c)),
            Some((Tok::One, _)) => Ok(Expr::One),
            Some((Tok::Name(w), _)) => Ok(Expr::Name(w)),
            Some((Tok::LParen, col)) => {
                let inner = self.expr()?;
                if self.eat(&Tok::RParen) {
                    Ok(inner)
                } else {
                    let got = self.next();
                    Err(self.expected(
                        &format!("`)` closing the `(` at column {col}"),
                        got,
                    ))
                }
            }
            got => Err(self.expected("an expression", got)),
        }
    }
}

/// Parses one expression, requiring the whole input to be consumed.
pub fn parse_expr(input: &str) -> Result<Expr, SyntaxError> {
    let toks = lex(input)?;
    let end_col = input.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end_col };
    let e = p.expr()?;
    if let Some((t, col)) = p.next() {
        return Err(SyntaxError {
            column: col,
            message: format!("unexpected {}", describe(&t)),
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn letter_runs_split_into_generators() {
        // `ab'` is a·(b*): the adjoint mark binds to the last letter only.
        assert_eq!(
            parse_expr("ab'").unwrap(),
            Expr::Mul(b(Expr::Gen('a')), b(Expr::Adjoint(b(Expr::Gen('b')))))
        );
        assert_eq!(parse_expr("ab'"), parse_expr("a * b'"));
        assert_eq!(parse_expr("ab'"), parse_expr("a(b)'"));
    }

    #[test]
    fn adjoint_binds_tighter_than_products_and_sums() {
        // (a + b)' needs parentheses; a + b' does not adjoint the sum.
        assert_eq!(
            parse_expr("a + b'").unwrap(),
            Expr::Add(b(Expr::Gen('a')), b(Expr::Adjoint(b(Expr::Gen('b')))))
        );
        assert_eq!(
            parse_expr("(a + b)'").unwrap(),
            Expr::Adjoint(b(Expr::Add(b(Expr::Gen('a')), b(Expr::Gen('b')))))
        );
        // Double adjoint stacks.
        assert_eq!(
            parse_expr("a''").unwrap(),
            Expr::Adjoint(b(Expr::Adjoint(b(Expr::Gen('a')))))
        );
    }

    #[test]
    fn sums_products_and_tensors_nest_by_precedence() {
        // 2ab + 3 = (2·a·b) + 3.
        assert_eq!(
            parse_expr("2ab + 3").unwrap(),
            Expr::Add(
                b(Expr::Mul(
                    b(Expr::Mul(b(Expr::Scalar("2".into())), b(Expr::Gen('a')))),
                    b(Expr::Gen('b'))
                )),
                b(Expr::Scalar("3".into()))
            )
        );
        // a ox b + c ox d splits at the sum.
        assert_eq!(
            parse_expr("a ox b + b ox a").unwrap(),
            Expr::Add(
                b(Expr::Tensor(b(Expr::Gen('a')), b(Expr::Gen('b')))),
                b(Expr::Tensor(b(Expr::Gen('b')), b(Expr::Gen('a'))))
            )
        );
        // Leading minus negates the first term only.
        assert_eq!(
            parse_expr("-a + b").unwrap(),
            Expr::Add(b(Expr::Neg(b(Expr::Gen('a')))), b(Expr::Gen('b')))
        );
    }

    #[test]
    fn fractions_and_names() {
        assert_eq!(
            parse_expr("3/2 u").unwrap(),
            Expr::Mul(b(Expr::Scalar("3/2".into())), b(Expr::Name("u".into())))
        );
        assert_eq!(parse_expr("e").unwrap(), Expr::One);
        // A mixed word that is not all-generator letters is a name.
        assert_eq!(parse_expr("swap").unwrap(), Expr::Name("swap".into()));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let err = parse_expr("a +* b").unwrap_err();
        assert_eq!(err.column, 4);
        assert!(err.to_string().contains("column 4"), "{err}");

        let err = parse_expr("(a + b").unwrap_err();
        assert_eq!(err.column, 7);
        assert!(err.to_string().contains("closing the `(` at column 1"), "{err}");

        let err = parse_expr("a b )").unwrap_err();
        assert_eq!(err.column, 5);

        let err = parse_expr("").unwrap_err();
        assert_eq!(err.column, 1);
        assert!(err.to_string().contains("end of input"), "{err}");

        let err = parse_expr("a ? b").unwrap_err();
        assert_eq!(err.column, 3);
    }

    #[test]
    fn binding_names_exclude_reserved_words() {
        assert!(is_valid_name("u"));
        assert!(is_valid_name("swap_2"));
        assert!(is_valid_name("x0"));
        assert!(!is_valid_name("a"));
        assert!(!is_valid_name("ba"));
        assert!(!is_valid_name("e"));
        assert!(!is_valid_name("ox"));
        assert!(!is_valid_name("let"));
        assert!(!is_valid_name("2u"));
        assert!(!is_valid_name("u v"));
        assert!(!is_valid_name(""));
    }
}
