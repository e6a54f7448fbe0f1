//! Formulas, sequents, rule-labeled proof trees, and the proof checker.
//!
//! The four calculi share one formula type and one proof type; each calculus
//! admits a fixed subset of rule names and, for the intuitionistic calculi,
//! only sequents whose succedent has at most one formula.
//!
//! Text format is S-expressions, UTF-8:
//!
//! ```text
//! formula  ::= top | bot | one | zero | (atom NAME)
//!            | (tensor F F) | (par F F) | (with F F) | (plus F F)
//!            | (limp F F) | (ofc F) | (wn F)
//!            | (and F F) | (or F F) | (implies F F)
//! sequent  ::= (seq (F*) (F*))
//! proof    ::= (RULE param* proof*)
//! ```
//!
//! Parameters are mandatory exactly where conclusion inference is not
//! functional: `(id F)`, `(cut- F p q)` (cut formula), `(xl N p)` / `(xr N p)`
//! (0-based index of the left member of the swapped pair), `(wl F p)`,
//! `(wr F p)`, `(ocw F p)`, `(wnw F p)` (the added formula, undecorated for
//! `ocw`/`wnw`), `(withl I F p)` / `(plusr I F p)` (side index 1 or 2 and the
//! principal formula), `(0l (F*))` (the succedent), `(1r (F*) (F*))` (the
//! antecedent and the trailing succedent). Every other rule infers its
//! conclusion from its premises.

mod check;
mod sexpr;

pub use check::{check_proof, infer_conclusion, CheckFailure, CheckReport};
pub use sexpr::{parse_formula, parse_proof, parse_sequent, ParseError};

use std::fmt;

/// The four formal languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Language {
    /// Linear logic negative: full linear language without linear negation.
    LlMinus,
    /// Intuitionistic linear logic: LL⁻ without `par` and `wn`.
    Ill,
    /// Classical logic: `and`/`or`/`implies`/`top`/`bot` only.
    Cl,
    /// Intuitionistic logic: same language as CL.
    Il,
}

/// The four calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// LLK⁻ for LL⁻ (Fig. 2 rules, with the distribution rules).
    Llk,
    /// LK⁻ for CL.
    Lk,
    /// LLJ for ILL: the LLK rules restricted to intuitionistic sequents.
    Llj,
    /// LJ for IL: the LK rules restricted to intuitionistic sequents.
    Lj,
}

impl Calculus {
    /// The language whose formulas this calculus manipulates.
    pub fn language(self) -> Language {
        match self {
            Calculus::Llk => Language::LlMinus,
            Calculus::Lk => Language::Cl,
            Calculus::Llj => Language::Ill,
            Calculus::Lj => Language::Il,
        }
    }

    /// Whether every sequent in a proof must be intuitionistic.
    pub fn intuitionistic(self) -> bool {
        matches!(self, Calculus::Llj | Calculus::Lj)
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Calculus::Llk => "llk-",
            Calculus::Lk => "lk-",
            Calculus::Llj => "llj",
            Calculus::Lj => "lj",
        }
    }

    /// Inverse of [`Calculus::name`].
    pub fn from_name(s: &str) -> Option<Calculus> {
        match s {
            "llk-" => Some(Calculus::Llk),
            "lk-" => Some(Calculus::Lk),
            "llj" => Some(Calculus::Llj),
            "lj" => Some(Calculus::Lj),
            _ => None,
        }
    }
}

/// Syntax trees for all four languages.
///
/// Negation is not primitive: ¬A is stored expanded as `A ⊸ ⊥` (linear) or
/// `A ⇒ ⊥` (classical). `one` and `zero` are kept distinct from `top` and
/// `bot` in syntax; the semantics maps them to the same games.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// ⊤, the unit of ⊗ (and the terminal object).
    Top,
    /// ⊥, the unit of ⅋.
    Bot,
    /// 1, semantically the same game as ⊤.
    One,
    /// 0, semantically the same game as ⊥.
    Zero,
    /// A propositional atom (allowed in checking, rejected by the semantics).
    Atom(String),
    /// A ⊗ B.
    Tensor(Box<Formula>, Box<Formula>),
    /// A ⅋ B.
    Par(Box<Formula>, Box<Formula>),
    /// A & B.
    With(Box<Formula>, Box<Formula>),
    /// A ⊕ B.
    Plus(Box<Formula>, Box<Formula>),
    /// A ⊸ B.
    Limp(Box<Formula>, Box<Formula>),
    /// !A.
    OfCourse(Box<Formula>),
    /// ?A.
    WhyNot(Box<Formula>),
    /// A ∧ B.
    And(Box<Formula>, Box<Formula>),
    /// A ∨ B.
    Or(Box<Formula>, Box<Formula>),
    /// A ⇒ B.
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// `a ⊗ b`.
    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }
    /// `a ⅋ b`.
    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }
    /// `a & b`.
    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Box::new(a), Box::new(b))
    }
    /// `a ⊕ b`.
    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Box::new(a), Box::new(b))
    }
    /// `a ⊸ b`.
    pub fn limp(a: Formula, b: Formula) -> Formula {
        Formula::Limp(Box::new(a), Box::new(b))
    }
    /// `!a`.
    pub fn ofc(a: Formula) -> Formula {
        Formula::OfCourse(Box::new(a))
    }
    /// `?a`.
    pub fn wn(a: Formula) -> Formula {
        Formula::WhyNot(Box::new(a))
    }
    /// `a ∧ b`.
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    /// `a ∨ b`.
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    /// `a ⇒ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    /// Linear negation ¬a, stored expanded as `a ⊸ ⊥`.
    pub fn neg_linear(a: Formula) -> Formula {
        Formula::limp(a, Formula::Bot)
    }

    /// Checks that every constructor in the formula belongs to `lang`.
    pub fn in_language(&self, lang: Language) -> Result<(), String> {
        let linear_only = |name: &str| -> Result<(), String> {
            match lang {
                Language::LlMinus => Ok(()),
                Language::Ill => Ok(()),
                Language::Cl | Language::Il => Err(format!("{name} not in CL/IL")),
            }
        };
        let classical_only = |name: &str| -> Result<(), String> {
            match lang {
                Language::Cl | Language::Il => Ok(()),
                Language::LlMinus | Language::Ill => Err(format!("{name} not in LL⁻/ILL")),
            }
        };
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => Ok(()),
            Formula::One | Formula::Zero => linear_only(if matches!(self, Formula::One) {
                "one"
            } else {
                "zero"
            }),
            Formula::Tensor(a, b) => {
                linear_only("tensor")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::Par(a, b) => {
                linear_only("par")?;
                if lang == Language::Ill {
                    return Err("par not in ILL".into());
                }
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::With(a, b) => {
                linear_only("with")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::Plus(a, b) => {
                linear_only("plus")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::Limp(a, b) => {
                linear_only("limp")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::OfCourse(a) => {
                linear_only("ofc")?;
                a.in_language(lang)
            }
            Formula::WhyNot(a) => {
                linear_only("wn")?;
                if lang == Language::Ill {
                    return Err("wn not in ILL".into());
                }
                a.in_language(lang)
            }
            Formula::And(a, b) => {
                classical_only("and")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::Or(a, b) => {
                classical_only("or")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
            Formula::Implies(a, b) => {
                classical_only("implies")?;
                a.in_language(lang)?;
                b.in_language(lang)
            }
        }
    }

    /// True if the formula contains no atoms.
    pub fn atom_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::One | Formula::Zero => true,
            Formula::Atom(_) => false,
            Formula::Tensor(a, b)
            | Formula::Par(a, b)
            | Formula::With(a, b)
            | Formula::Plus(a, b)
            | Formula::Limp(a, b)
            | Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b) => a.atom_free() && b.atom_free(),
            Formula::OfCourse(a) | Formula::WhyNot(a) => a.atom_free(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => write!(f, "top"),
            Formula::Bot => write!(f, "bot"),
            Formula::One => write!(f, "one"),
            Formula::Zero => write!(f, "zero"),
            Formula::Atom(n) => write!(f, "(atom {n})"),
            Formula::Tensor(a, b) => write!(f, "(tensor {a} {b})"),
            Formula::Par(a, b) => write!(f, "(par {a} {b})"),
            Formula::With(a, b) => write!(f, "(with {a} {b})"),
            Formula::Plus(a, b) => write!(f, "(plus {a} {b})"),
            Formula::Limp(a, b) => write!(f, "(limp {a} {b})"),
            Formula::OfCourse(a) => write!(f, "(ofc {a})"),
            Formula::WhyNot(a) => write!(f, "(wn {a})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
        }
    }
}

/// A sequent Δ ⊢ Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    /// Δ, the antecedent.
    pub ante: Vec<Formula>,
    /// Γ, the succedent.
    pub succ: Vec<Formula>,
}

impl Sequent {
    /// Builds a sequent.
    pub fn new(ante: Vec<Formula>, succ: Vec<Formula>) -> Sequent {
        Sequent { ante, succ }
    }

    /// At most one succedent formula.
    pub fn intuitionistic(&self) -> bool {
        self.succ.len() <= 1
    }

    /// True if no formula on either side contains an atom.
    pub fn atom_free(&self) -> bool {
        self.ante.iter().all(Formula::atom_free) && self.succ.iter().all(Formula::atom_free)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(seq (")?;
        for (i, a) in self.ante.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ") (")?;
        for (i, s) in self.succ.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "))")
    }
}

/// Every rule name of Fig. 1 (classical) and Fig. 2 (linear).
///
/// Names with a trailing `-` in the text format are the restricted forms.
/// The same name can carry different schemas in different calculi: `cut-` is
/// the unrestricted Cut in LK⁻/LJ, and `plusl-`/`limpr-` are the
/// context-carrying ⊕L/⊸R in LLJ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(missing_docs)]
pub enum RuleName {
    // Shared axioms and structural rules.
    Id,
    Cut,
    Xl,
    Xr,
    // Linear structural rules.
    OcW,
    WnW,
    OcC,
    WnC,
    OcD,
    WnD,
    WnL,
    OcR,
    // Units.
    ZeroL,
    OneR,
    TopL,
    TopR,
    BotL,
    BotR,
    // Linear logical rules.
    TensorL,
    TensorR,
    WithL,
    WithR,
    ParL,
    ParR,
    PlusL,
    PlusR,
    LimpL,
    LimpR,
    // Distribution rules.
    OcWnL,
    OcWnR,
    TensorParL,
    TensorParR,
    // Classical structural and logical rules.
    Wl,
    Wr,
    Cl,
    Cr,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
}

impl RuleName {
    /// The name used in the proof text format.
    pub fn name(self) -> &'static str {
        use RuleName::*;
        match self {
            Id => "id",
            Cut => "cut-",
            Xl => "xl",
            Xr => "xr",
            OcW => "ocw",
            WnW => "wnw",
            OcC => "occ",
            WnC => "wnc",
            OcD => "ocd",
            WnD => "wnd",
            WnL => "wnl",
            OcR => "ocr",
            ZeroL => "0l",
            OneR => "1r",
            TopL => "topl",
            TopR => "topr",
            BotL => "botl",
            BotR => "botr",
            TensorL => "tensorl",
            TensorR => "tensorr-",
            WithL => "withl",
            WithR => "withr-",
            ParL => "parl-",
            ParR => "parr",
            PlusL => "plusl-",
            PlusR => "plusr",
            LimpL => "limpl",
            LimpR => "limpr-",
            OcWnL => "ocwnl",
            OcWnR => "ocwnr",
            TensorParL => "tensorparl",
            TensorParR => "tensorparr",
            Wl => "wl",
            Wr => "wr",
            Cl => "cl",
            Cr => "cr",
            AndL => "andl",
            AndR => "andr",
            OrL => "orl",
            OrR => "orr",
            ImpL => "impl",
            ImpR => "impr-",
        }
    }

    /// Inverse of [`RuleName::name`].
    pub fn from_name(s: &str) -> Option<RuleName> {
        use RuleName::*;
        Some(match s {
            "id" => Id,
            "cut-" => Cut,
            "xl" => Xl,
            "xr" => Xr,
            "ocw" => OcW,
            "wnw" => WnW,
            "occ" => OcC,
            "wnc" => WnC,
            "ocd" => OcD,
            "wnd" => WnD,
            "wnl" => WnL,
            "ocr" => OcR,
            "0l" => ZeroL,
            "1r" => OneR,
            "topl" => TopL,
            "topr" => TopR,
            "botl" => BotL,
            "botr" => BotR,
            "tensorl" => TensorL,
            "tensorr-" => TensorR,
            "withl" => WithL,
            "withr-" => WithR,
            "parl-" => ParL,
            "parr" => ParR,
            "plusl-" => PlusL,
            "plusr" => PlusR,
            "limpl" => LimpL,
            "limpr-" => LimpR,
            "ocwnl" => OcWnL,
            "ocwnr" => OcWnR,
            "tensorparl" => TensorParL,
            "tensorparr" => TensorParR,
            "wl" => Wl,
            "wr" => Wr,
            "cl" => Cl,
            "cr" => Cr,
            "andl" => AndL,
            "andr" => AndR,
            "orl" => OrL,
            "orr" => OrR,
            "impl" => ImpL,
            "impr-" => ImpR,
            _ => return None,
        })
    }

    /// Number of premises of the rule.
    pub fn arity(self) -> usize {
        use RuleName::*;
        match self {
            Id | ZeroL | OneR | TopR | BotL => 0,
            Cut | TensorR | WithR | ParL | PlusL | LimpL | AndR | OrL | ImpL => 2,
            _ => 1,
        }
    }

    /// All rule names admissible in `calc` (before the intuitionistic-sequent
    /// restriction, which is checked separately on every sequent).
    pub fn admissible_in(calc: Calculus) -> &'static [RuleName] {
        use RuleName::*;
        match calc {
            Calculus::Llk => &[
                Id, Cut, Xl, Xr, OcW, WnW, OcC, WnC, OcD, WnD, WnL, OcR, ZeroL, OneR, TopL, TopR,
                BotL, BotR, TensorL, TensorR, WithL, WithR, ParL, ParR, PlusL, PlusR, LimpL, LimpR,
                OcWnL, OcWnR, TensorParL, TensorParR,
            ],
            Calculus::Lk => &[
                Id, Cut, Xl, Xr, Wl, Wr, Cl, Cr, TopL, TopR, BotL, BotR, AndL, AndR, OrL, OrR,
                ImpL, ImpR,
            ],
            Calculus::Llj => &[
                Id, Cut, Xl, OcW, OcC, OcD, OcR, ZeroL, OneR, TopL, TopR, BotL, BotR, TensorL,
                TensorR, WithL, WithR, PlusL, PlusR, LimpL, LimpR,
            ],
            Calculus::Lj => &[
                Id, Cut, Xl, Wl, Wr, Cl, TopL, TopR, BotL, BotR, AndL, AndR, OrL, ImpL, ImpR,
            ],
        }
    }
}

/// Rule parameters; only the fields the rule requires are set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    /// Principal or cut formula, where not inferable.
    pub formula: Option<Formula>,
    /// Exchange position (0-based, left member of the swapped pair).
    pub position: Option<usize>,
    /// Side index for `withl`/`plusr` (1 or 2).
    pub side: Option<u8>,
    /// Antecedent context, for the `1r` axiom.
    pub ante: Option<Vec<Formula>>,
    /// Succedent context, for the `0l` and `1r` axioms.
    pub succ: Option<Vec<Formula>>,
}

/// A rule-labeled proof tree with materialized endsequents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    /// The rule applied at the root.
    pub rule: RuleName,
    /// The conclusion of the root rule.
    pub endsequent: Sequent,
    /// Rule parameters.
    pub params: Params,
    /// Subproofs of the premises, left to right.
    pub premises: Vec<Proof>,
}

impl Proof {
    /// True if no node in the tree is a cut.
    pub fn cut_free(&self) -> bool {
        self.rule != RuleName::Cut && self.premises.iter().all(Proof::cut_free)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.rule.name())?;
        match self.rule {
            RuleName::Id | RuleName::Cut | RuleName::Wl | RuleName::Wr | RuleName::OcW
            | RuleName::WnW => {
                if let Some(a) = &self.params.formula {
                    write!(f, " {a}")?;
                }
            }
            RuleName::Xl | RuleName::Xr => {
                if let Some(n) = self.params.position {
                    write!(f, " {n}")?;
                }
            }
            RuleName::WithL | RuleName::PlusR => {
                if let Some(i) = self.params.side {
                    write!(f, " {i}")?;
                }
                if let Some(a) = &self.params.formula {
                    write!(f, " {a}")?;
                }
            }
            RuleName::ZeroL => {
                write!(f, " (")?;
                let gamma = self.params.succ.as_deref().unwrap_or_default();
                for (i, c) in gamma.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")?;
            }
            RuleName::OneR => {
                for ctx in [
                    self.params.ante.as_deref().unwrap_or_default(),
                    self.params.succ.as_deref().unwrap_or_default(),
                ] {
                    write!(f, " (")?;
                    for (i, c) in ctx.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    write!(f, ")")?;
                }
            }
            _ => {}
        }
        for p in &self.premises {
            write!(f, " {p}")?;
        }
        write!(f, ")")
    }
}
