//! S-expression reader for formulas, sequents and proofs.

use super::check::infer_conclusion;
use super::{Formula, Language, Params, Proof, RuleName, Sequent};
use std::fmt;

/// A syntax or shape error, with a byte offset into the input where known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Human-readable description.
    pub message: String,
    /// Byte offset into the input, if the error is positional.
    pub offset: Option<usize>,
}

impl ParseError {
    fn at(message: impl Into<String>, offset: usize) -> ParseError {
        ParseError {
            message: message.into(),
            offset: Some(offset),
        }
    }

    fn new(message: impl Into<String>) -> ParseError {
        ParseError {
            message: message.into(),
            offset: None,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offset {
            Some(o) => write!(f, "{} (at byte {o})", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SExpr {
    Sym(String, usize),
    List(Vec<SExpr>, usize),
}

impl SExpr {
    fn offset(&self) -> usize {
        match self {
            SExpr::Sym(_, o) | SExpr::List(_, o) => *o,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(String, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() || c == ';' {
            if !current.is_empty() {
                tokens.push((std::mem::take(&mut current), start));
            }
            if c == '(' || c == ')' {
                tokens.push((c.to_string(), i));
            }
            if c == ';' {
                // Comment to end of line.
                let rest = &text[i..];
                let skip = rest.find('\n').unwrap_or(rest.len());
                return tokenize_rest(text, i + skip, tokens);
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push((current, start));
    }
    Ok(tokens)
}

fn tokenize_rest(
    text: &str,
    from: usize,
    mut acc: Vec<(String, usize)>,
) -> Result<Vec<(String, usize)>, ParseError> {
    let mut rest = tokenize(&text[from..])?;
    for t in &mut rest {
        t.1 += from;
    }
    acc.append(&mut rest);
    Ok(acc)
}

fn read_sexpr(tokens: &[(String, usize)], pos: &mut usize) -> Result<SExpr, ParseError> {
    let (tok, off) = tokens
        .get(*pos)
        .ok_or_else(|| ParseError::new("unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let start = *off;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(SExpr::List(items, start));
                    }
                    Some(_) => items.push(read_sexpr(tokens, pos)?),
                    None => return Err(ParseError::at("unclosed parenthesis", start)),
                }
            }
        }
        ")" => Err(ParseError::at("unexpected ')'", *off)),
        _ => Ok(SExpr::Sym(tok.clone(), *off)),
    }
}

fn read_single(text: &str) -> Result<SExpr, ParseError> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let e = read_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ParseError::at("trailing input", tokens[pos].1));
    }
    Ok(e)
}

fn formula_of(e: &SExpr) -> Result<Formula, ParseError> {
    match e {
        SExpr::Sym(s, o) => match s.as_str() {
            "top" => Ok(Formula::Top),
            "bot" => Ok(Formula::Bot),
            "one" => Ok(Formula::One),
            "zero" => Ok(Formula::Zero),
            _ => Err(ParseError::at(format!("unknown formula '{s}'"), *o)),
        },
        SExpr::List(items, o) => {
            let head = match items.first() {
                Some(SExpr::Sym(s, _)) => s.as_str(),
                _ => return Err(ParseError::at("expected a formula constructor", *o)),
            };
            let binary = |ctor: fn(Formula, Formula) -> Formula| -> Result<Formula, ParseError> {
                if items.len() != 3 {
                    return Err(ParseError::at(
                        format!("'{head}' takes two subformulas"),
                        *o,
                    ));
                }
                Ok(ctor(formula_of(&items[1])?, formula_of(&items[2])?))
            };
            let unary = |ctor: fn(Formula) -> Formula| -> Result<Formula, ParseError> {
                if items.len() != 2 {
                    return Err(ParseError::at(format!("'{head}' takes one subformula"), *o));
                }
                Ok(ctor(formula_of(&items[1])?))
            };
            match head {
                "atom" => match items.get(1) {
                    Some(SExpr::Sym(n, _)) if items.len() == 2 => Ok(Formula::Atom(n.clone())),
                    _ => Err(ParseError::at("'atom' takes one name", *o)),
                },
                "tensor" => binary(Formula::tensor),
                "par" => binary(Formula::par),
                "with" => binary(Formula::with),
                "plus" => binary(Formula::plus),
                "limp" => binary(Formula::limp),
                "ofc" => unary(Formula::ofc),
                "wn" => unary(Formula::wn),
                "and" => binary(Formula::and),
                "or" => binary(Formula::or),
                "implies" => binary(Formula::implies),
                _ => Err(ParseError::at(format!("unknown constructor '{head}'"), *o)),
            }
        }
    }
}

fn formula_list_of(e: &SExpr) -> Result<Vec<Formula>, ParseError> {
    match e {
        SExpr::List(items, _) => items.iter().map(formula_of).collect(),
        SExpr::Sym(_, o) => Err(ParseError::at("expected a list of formulas", *o)),
    }
}

/// Parses a formula and checks it belongs to `lang`.
pub fn parse_formula(text: &str, lang: Language) -> Result<Formula, ParseError> {
    let f = formula_of(&read_single(text)?)?;
    f.in_language(lang).map_err(ParseError::new)?;
    Ok(f)
}

/// Parses a `(seq (F*) (F*))` sequent and checks its formulas against `lang`.
pub fn parse_sequent(text: &str, lang: Language) -> Result<Sequent, ParseError> {
    let e = read_single(text)?;
    let s = sequent_of(&e)?;
    for f in s.ante.iter().chain(s.succ.iter()) {
        f.in_language(lang).map_err(ParseError::new)?;
    }
    Ok(s)
}

fn sequent_of(e: &SExpr) -> Result<Sequent, ParseError> {
    match e {
        SExpr::List(items, o) => {
            if items.len() != 3 || !matches!(&items[0], SExpr::Sym(s, _) if s == "seq") {
                return Err(ParseError::at("expected (seq (F*) (F*))", *o));
            }
            Ok(Sequent::new(
                formula_list_of(&items[1])?,
                formula_list_of(&items[2])?,
            ))
        }
        SExpr::Sym(_, o) => Err(ParseError::at("expected (seq (F*) (F*))", *o)),
    }
}

/// Parses a proof tree, materializing every endsequent bottom-up.
///
/// Formulas are not checked against a language here; `check_proof` does that
/// together with the schema checks, so a proof can be parsed once and checked
/// against several calculi.
pub fn parse_proof(text: &str) -> Result<Proof, ParseError> {
    proof_of(&read_single(text)?)
}

fn proof_of(e: &SExpr) -> Result<Proof, ParseError> {
    let (items, off) = match e {
        SExpr::List(items, o) => (items, *o),
        SExpr::Sym(_, o) => return Err(ParseError::at("expected a proof node", *o)),
    };
    let head = match items.first() {
        Some(SExpr::Sym(s, _)) => s,
        _ => return Err(ParseError::at("expected a rule name", off)),
    };
    let rule = RuleName::from_name(head)
        .ok_or_else(|| ParseError::at(format!("unknown rule '{head}'"), off))?;
    let mut params = Params::default();
    let mut rest = &items[1..];

    let take = |rest: &mut &[SExpr], what: &str| -> Result<SExpr, ParseError> {
        match rest.split_first() {
            Some((e, tail)) => {
                *rest = tail;
                Ok(e.clone())
            }
            None => Err(ParseError::at(
                format!("'{head}' is missing its {what} parameter"),
                off,
            )),
        }
    };

    match rule {
        RuleName::Id | RuleName::Cut | RuleName::Wl | RuleName::Wr | RuleName::OcW
        | RuleName::WnW => {
            params.formula = Some(formula_of(&take(&mut rest, "formula")?)?);
        }
        RuleName::Xl | RuleName::Xr => {
            let e = take(&mut rest, "position")?;
            match &e {
                SExpr::Sym(s, o) => {
                    params.position = Some(
                        s.parse::<usize>()
                            .map_err(|_| ParseError::at("expected a position", *o))?,
                    );
                }
                SExpr::List(_, o) => return Err(ParseError::at("expected a position", *o)),
            }
        }
        RuleName::WithL | RuleName::PlusR => {
            let e = take(&mut rest, "side")?;
            match &e {
                SExpr::Sym(s, o) if s == "1" || s == "2" => {
                    params.side = Some(if s == "1" { 1 } else { 2 });
                }
                _ => return Err(ParseError::at("expected side index 1 or 2", e.offset())),
            }
            params.formula = Some(formula_of(&take(&mut rest, "principal formula")?)?);
        }
        RuleName::ZeroL => {
            params.succ = Some(formula_list_of(&take(&mut rest, "succedent")?)?);
        }
        RuleName::OneR => {
            params.ante = Some(formula_list_of(&take(&mut rest, "antecedent")?)?);
            params.succ = Some(formula_list_of(&take(&mut rest, "succedent")?)?);
        }
        _ => {}
    }

    if rest.len() != rule.arity() {
        return Err(ParseError::at(
            format!(
                "'{head}' takes {} subproof(s), got {}",
                rule.arity(),
                rest.len()
            ),
            off,
        ));
    }
    let premises = rest.iter().map(proof_of).collect::<Result<Vec<_>, _>>()?;
    let premise_seqs: Vec<&Sequent> = premises.iter().map(|p| &p.endsequent).collect();
    let endsequent = infer_conclusion(rule, None, &params, &premise_seqs)
        .map_err(|msg| ParseError::at(format!("'{head}': {msg}"), off))?;
    Ok(Proof {
        rule,
        endsequent,
        params,
        premises,
    })
}
