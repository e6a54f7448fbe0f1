//! Games over atom-free linear formulas.
//!
//! A formula shape induces an arena: its moves are tag paths descending the
//! shape, ending either at a `bot`/`zero` leaf (the single question of that
//! leaf game) or at a pair/function initial of `par`, `plus` or `wn`.  On top
//! of the arena sit justified sequences, views, legality and the thread-index
//! identification of positions.  `top` and `one` denote the same (empty) game,
//! as do `bot` and `zero`.
//!
//! Move shapes per connective:
//!
//!     tensor A B, with A B : L-tagged A-moves and R-tagged B-moves
//!     limp A B            : ditto, with owners flipped on the left
//!     par A B, plus A B   : pinit(a^,b^) pair initials, PL/PR component moves
//!     ofc A               : bang(i)-tagged A-moves, one copy per thread i
//!     wn A                : wninit(f) function initials (thread -> initial
//!                           of A, finitely supported), wn(i) component moves
//!
//! Thread indices are only meaningful up to permutation; `canonicalize`
//! renames them to first-use order per layer and `positions_equivalent`
//! compares canonical forms.

use crate::logic::Formula;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// One step of a move address.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// Left component of tensor/with/limp.
    L,
    /// Right component of tensor/with/limp.
    R,
    /// Left component move of par/plus.
    PL,
    /// Right component move of par/plus.
    PR,
    /// Pair initial of par/plus; carries one initial move per component.
    PInit(Box<Move>, Box<Move>),
    /// Thread i of an ofc layer.
    Bang(u64),
    /// Thread i of a wn layer (component moves).
    Wn(u64),
    /// Function initial of a wn layer.
    WnInit(FinSuppFn),
}

/// A move: a path of tags into the game shape.
///
/// An empty path is the single question of `bot`/`zero`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Move {
    pub tags: Vec<Tag>,
}

/// A finitely supported function from thread indices to initial moves of the
/// inner game: a default value plus finitely many exceptions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSuppFn {
    pub default: Box<Move>,
    pub exceptions: BTreeMap<u64, Move>,
}

impl FinSuppFn {
    /// Builds a function, dropping exceptions equal to the default.
    pub fn new(default: Move, exceptions: BTreeMap<u64, Move>) -> FinSuppFn {
        let exceptions = exceptions.into_iter().filter(|(_, m)| *m != default).collect();
        FinSuppFn {
            default: Box::new(default),
            exceptions,
        }
    }

    /// A constant function.
    pub fn constant(default: Move) -> FinSuppFn {
        FinSuppFn::new(default, BTreeMap::new())
    }

    /// The value at thread `i`.
    pub fn at(&self, i: u64) -> &Move {
        self.exceptions.get(&i).unwrap_or(&self.default)
    }
}

impl Move {
    pub fn leaf() -> Move {
        Move { tags: Vec::new() }
    }

    pub fn tagged(tag: Tag, rest: Move) -> Move {
        let mut tags = Vec::with_capacity(rest.tags.len() + 1);
        tags.push(tag);
        tags.extend(rest.tags);
        Move { tags }
    }

    /// Splits off the head tag, if any.
    pub fn split(&self) -> Option<(&Tag, Move)> {
        self.tags.split_first().map(|(t, rest)| {
            (
                t,
                Move {
                    tags: rest.to_vec(),
                },
            )
        })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut terminal = true;
        for t in &self.tags {
            match t {
                Tag::L => parts.push("L".into()),
                Tag::R => parts.push("R".into()),
                Tag::PL => parts.push("PL".into()),
                Tag::PR => parts.push("PR".into()),
                Tag::Bang(i) => parts.push(format!("bang({i})")),
                Tag::Wn(i) => parts.push(format!("wn({i})")),
                Tag::PInit(a, b) => {
                    parts.push(format!("pinit({a},{b})"));
                    terminal = false;
                }
                Tag::WnInit(alpha) => {
                    let mut s = format!("wninit({}", alpha.default);
                    for (i, m) in &alpha.exceptions {
                        s.push_str(&format!(";{i}->{m}"));
                    }
                    s.push(')');
                    parts.push(s);
                    terminal = false;
                }
            }
        }
        if terminal {
            parts.push("q".into());
        }
        write!(f, "{}", parts.join("/"))
    }
}

/// Owner of a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    O,
    P,
}

impl Owner {
    pub fn flip(self) -> Owner {
        match self {
            Owner::O => Owner::P,
            Owner::P => Owner::O,
        }
    }
}

/// Question/answer kind.  Every move of these games is a question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Q,
    A,
}

/// A move label, computed on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub owner: Owner,
    pub kind: Kind,
}

/// A justified sequence: moves with justifier indices (None for initial
/// occurrences).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Position {
    pub entries: Vec<(Move, Option<usize>)>,
}

impl Position {
    pub fn empty() -> Position {
        Position::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, m: Move, justifier: Option<usize>) {
        self.entries.push((m, justifier));
    }

    pub fn extended(&self, m: Move, justifier: Option<usize>) -> Position {
        let mut p = self.clone();
        p.push(m, justifier);
        p
    }

    /// The prefix of the first `n` entries.
    pub fn prefix(&self, n: usize) -> Position {
        Position {
            entries: self.entries[..n].to_vec(),
        }
    }
}

/// A game: an atom-free linear formula read as an arena shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Game {
    pub shape: Formula,
}

impl Game {
    /// Wraps a formula, rejecting atoms and non-linear connectives.
    pub fn new(shape: Formula) -> Result<Game, String> {
        shape
            .in_language(crate::logic::Language::LlMinus)
            .map_err(|e| format!("not a linear formula: {e}"))?;
        if !shape.atom_free() {
            return Err("games are defined for atom-free formulas only".into());
        }
        Ok(Game { shape })
    }

    /// Checks that `m` resolves to a move of this game.
    pub fn check_move(&self, m: &Move) -> Result<(), String> {
        check_move(&self.shape, m)
    }

    /// The label of a move: owner by parity of limp-left crossings, kind
    /// always Q.
    pub fn label(&self, m: &Move) -> Result<Label, String> {
        self.check_move(m)?;
        Ok(Label {
            owner: owner(&self.shape, m),
            kind: Kind::Q,
        })
    }

    /// The enabling relation: `parent = None` stands for the root enabler.
    pub fn enabled(&self, parent: Option<&Move>, child: &Move) -> Result<bool, String> {
        self.check_move(child)?;
        match parent {
            None => Ok(is_initial(&self.shape, child)),
            Some(p) => {
                self.check_move(p)?;
                Ok(enables(&self.shape, p, child))
            }
        }
    }

    /// Full legality: justifier edges, alternation, visibility, and the
    /// structural per-connective position constraints, recursively.
    pub fn is_legal(&self, s: &Position) -> bool {
        is_legal(&self.shape, s)
    }

    /// The P-view, with justifiers re-indexed into the view.
    pub fn p_view(&self, s: &Position) -> Position {
        subsequence(s, &view_indices(&self.shape, s, s.len(), Owner::P))
    }

    /// The O-view.
    pub fn o_view(&self, s: &Position) -> Position {
        subsequence(s, &view_indices(&self.shape, s, s.len(), Owner::O))
    }

    /// First-use renaming of thread indices, per exponential layer.
    pub fn canonicalize(&self, s: &Position) -> Position {
        canonicalize(&self.shape, s)
    }

    /// Identification of positions: equality of canonical forms.
    pub fn positions_equivalent(&self, s: &Position, t: &Position) -> bool {
        if s.len() != t.len() {
            return false;
        }
        self.canonicalize(s) == self.canonicalize(t)
    }

    /// Canonical candidate moves relative to `s`: thread indices are those
    /// used in `s` plus one fresh index per layer, and wn function initials
    /// are constant functions over canonical initial moves.
    pub fn candidate_moves(&self, s: &Position) -> Vec<Move> {
        let mut used = UsedIndices::default();
        for (m, _) in &s.entries {
            used.mine(&self.shape, m, &mut Vec::new());
        }
        gen_moves(&self.shape, &used, &mut Vec::new())
    }

    /// All legal one-move extensions of `s`, with the canonical-index bound
    /// of `candidate_moves`.
    pub fn legal_extensions(&self, s: &Position) -> Vec<(Move, Option<usize>)> {
        let mut out = Vec::new();
        for m in self.candidate_moves(s) {
            if is_initial(&self.shape, &m) {
                if self.is_legal(&s.extended(m.clone(), None)) {
                    out.push((m, None));
                }
            } else {
                for k in 0..s.len() {
                    if enables(&self.shape, &s.entries[k].0, &m)
                        && self.is_legal(&s.extended(m.clone(), Some(k)))
                    {
                        out.push((m.clone(), Some(k)));
                    }
                }
            }
        }
        out
    }

    /// Renders a position in the trace format, one move per line:
    /// `IDX. O|P Q|A ADDRESS just=IDX|-`.
    pub fn format_position(&self, s: &Position) -> String {
        let mut out = String::new();
        for (i, (m, j)) in s.entries.iter().enumerate() {
            let o = match owner(&self.shape, m) {
                Owner::O => "O",
                Owner::P => "P",
            };
            let just = match j {
                Some(k) => k.to_string(),
                None => "-".into(),
            };
            out.push_str(&format!("{i}. {o} Q {m} just={just}\n"));
        }
        out
    }
}

fn check_move(f: &Formula, m: &Move) -> Result<(), String> {
    check_tags(f, &m.tags).map_err(|e| format!("move {m} does not resolve: {e}"))
}

fn check_tags(f: &Formula, tags: &[Tag]) -> Result<(), String> {
    use Formula::*;
    match tags.split_first() {
        None => match f {
            Bot | Zero => Ok(()),
            _ => Err(format!("address ends at non-leaf {f}")),
        },
        Some((t, rest)) => match (t, f) {
            (Tag::L, Tensor(a, _)) | (Tag::L, With(a, _)) | (Tag::L, Limp(a, _)) => {
                check_tags(a, rest)
            }
            (Tag::R, Tensor(_, b)) | (Tag::R, With(_, b)) | (Tag::R, Limp(_, b)) => {
                check_tags(b, rest)
            }
            (Tag::PL, Par(a, _)) | (Tag::PL, Plus(a, _)) => check_tags(a, rest),
            (Tag::PR, Par(_, b)) | (Tag::PR, Plus(_, b)) => check_tags(b, rest),
            (Tag::PInit(x, y), Par(a, b)) | (Tag::PInit(x, y), Plus(a, b)) => {
                if !rest.is_empty() {
                    return Err("pair initial must end the address".into());
                }
                check_tags(a, &x.tags)?;
                check_tags(b, &y.tags)?;
                if !is_initial(a, x) || !is_initial(b, y) {
                    return Err("pair components must be initial moves".into());
                }
                Ok(())
            }
            (Tag::Bang(_), OfCourse(a)) => check_tags(a, rest),
            (Tag::Wn(_), WhyNot(a)) => check_tags(a, rest),
            (Tag::WnInit(alpha), WhyNot(a)) => {
                if !rest.is_empty() {
                    return Err("function initial must end the address".into());
                }
                for v in std::iter::once(alpha.default.as_ref()).chain(alpha.exceptions.values()) {
                    check_tags(a, &v.tags)?;
                    if !is_initial(a, v) {
                        return Err("function values must be initial moves".into());
                    }
                }
                Ok(())
            }
            _ => Err(format!("tag does not match connective {f}")),
        },
    }
}

fn owner(f: &Formula, m: &Move) -> Owner {
    let mut o = Owner::O;
    let mut f = f;
    for t in &m.tags {
        match (t, f) {
            (Tag::L, Formula::Limp(a, _)) => {
                o = o.flip();
                f = a;
            }
            (Tag::L, Formula::Tensor(a, _)) | (Tag::L, Formula::With(a, _)) => f = a,
            (Tag::R, Formula::Tensor(_, b))
            | (Tag::R, Formula::With(_, b))
            | (Tag::R, Formula::Limp(_, b)) => f = b,
            (Tag::PL, Formula::Par(a, _)) | (Tag::PL, Formula::Plus(a, _)) => f = a,
            (Tag::PR, Formula::Par(_, b)) | (Tag::PR, Formula::Plus(_, b)) => f = b,
            (Tag::Bang(_), Formula::OfCourse(a)) | (Tag::Wn(_), Formula::WhyNot(a)) => f = a,
            // Pair and function initials are OQ in their own game; enclosing
            // limp-left crossings have already been counted.
            (Tag::PInit(_, _), _) | (Tag::WnInit(_), _) => break,
            _ => break,
        }
    }
    o
}

/// Whether `m` is enabled by the root (its justifier slot is `None`).
pub fn is_initial(f: &Formula, m: &Move) -> bool {
    use Formula::*;
    match m.split() {
        None => matches!(f, Bot | Zero),
        Some((t, rest)) => match (t, f) {
            (Tag::L, Tensor(a, _)) | (Tag::L, With(a, _)) => is_initial(a, &rest),
            (Tag::R, Tensor(_, b)) | (Tag::R, With(_, b)) => is_initial(b, &rest),
            // Domain moves of limp are never root-enabled.
            (Tag::L, Limp(_, _)) => false,
            (Tag::R, Limp(_, b)) => is_initial(b, &rest),
            (Tag::PInit(_, _), Par(_, _)) | (Tag::PInit(_, _), Plus(_, _)) => true,
            // Bare component initials keep their (unreachable) root enabling.
            (Tag::PL, Par(a, _)) | (Tag::PL, Plus(a, _)) => is_initial(a, &rest),
            (Tag::PR, Par(_, b)) | (Tag::PR, Plus(_, b)) => is_initial(b, &rest),
            (Tag::Bang(_), OfCourse(a)) => is_initial(a, &rest),
            (Tag::WnInit(_), WhyNot(_)) => true,
            (Tag::Wn(_), WhyNot(a)) => is_initial(a, &rest),
            _ => false,
        },
    }
}

/// Whether the occurrence of `p` may justify `c`.
pub fn enables(f: &Formula, p: &Move, c: &Move) -> bool {
    use Formula::*;
    let (pt, prest) = match p.split() {
        Some(x) => x,
        None => return false, // the bot question enables nothing
    };
    let (ct, crest) = match c.split() {
        Some(x) => x,
        None => return false,
    };
    match f {
        Tensor(a, b) | With(a, b) => match (pt, ct) {
            (Tag::L, Tag::L) => enables(a, &prest, &crest),
            (Tag::R, Tag::R) => enables(b, &prest, &crest),
            _ => false,
        },
        Limp(a, b) => match (pt, ct) {
            (Tag::L, Tag::L) => enables(a, &prest, &crest),
            (Tag::R, Tag::R) => enables(b, &prest, &crest),
            // A codomain initial enables every domain initial.
            (Tag::R, Tag::L) => is_initial(b, &prest) && is_initial(a, &crest),
            _ => false,
        },
        Par(a, b) | Plus(a, b) => match (pt, ct) {
            (Tag::PInit(x, _), Tag::PL) => enables(a, x, &crest),
            (Tag::PInit(_, y), Tag::PR) => enables(b, y, &crest),
            (Tag::PL, Tag::PL) => enables(a, &prest, &crest),
            (Tag::PR, Tag::PR) => enables(b, &prest, &crest),
            _ => false,
        },
        OfCourse(a) => match (pt, ct) {
            (Tag::Bang(i), Tag::Bang(j)) => i == j && enables(a, &prest, &crest),
            _ => false,
        },
        WhyNot(a) => match (pt, ct) {
            (Tag::WnInit(alpha), Tag::Wn(i)) => {
                !is_initial(a, &crest) && enables(a, alpha.at(*i), &crest)
            }
            (Tag::Wn(i), Tag::Wn(j)) => i == j && enables(a, &prest, &crest),
            _ => false,
        },
        _ => false,
    }
}

/// Indices (ascending) of the P- or O-view of `s[..upto]`.
fn view_indices(f: &Formula, s: &Position, upto: usize, side: Owner) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = upto;
    while i > 0 {
        let k = i - 1;
        let (m, j) = &s.entries[k];
        let own = owner(f, m);
        if own == side {
            // Our own move: keep it and look further back.
            out.push(k);
            i = k;
        } else {
            match j {
                None => {
                    // An initial move of the other side cuts the view.
                    out.push(k);
                    break;
                }
                Some(jj) => {
                    // Keep the move and its justifier; resume before it.
                    out.push(k);
                    out.push(*jj);
                    i = *jj;
                }
            }
        }
    }
    out.reverse();
    out
}

/// Rebuilds a position from a sorted list of kept indices, re-closing
/// justifier edges through eliminated occurrences.
fn subsequence(s: &Position, kept: &[usize]) -> Position {
    let mut newidx: HashMap<usize, usize> = HashMap::new();
    for (n, &k) in kept.iter().enumerate() {
        newidx.insert(k, n);
    }
    let mut out = Position::empty();
    for &k in kept {
        let (m, j) = &s.entries[k];
        let mut j = *j;
        let just = loop {
            match j {
                None => break None,
                Some(jj) => match newidx.get(&jj) {
                    Some(&n) => break Some(n),
                    None => j = s.entries[jj].1,
                },
            }
        };
        out.push(m.clone(), just);
    }
    out
}

/// The result of projecting a position through a per-move relabeling.
pub struct Projection {
    /// The projected position.
    pub position: Position,
    /// Original indices of the kept moves, ascending.
    pub kept: Vec<usize>,
    /// Map from original index to projected index.
    pub index_map: Vec<Option<usize>>,
}

/// J-subsequence projection: keeps the moves on which `sel` returns a
/// relabeled move, re-closing justifier edges through the dropped ones.
pub fn project(s: &Position, mut sel: impl FnMut(&Move) -> Option<Move>) -> Projection {
    let mut kept = Vec::new();
    let mut relabeled = Vec::new();
    for (k, (m, _)) in s.entries.iter().enumerate() {
        if let Some(r) = sel(m) {
            kept.push(k);
            relabeled.push(r);
        }
    }
    let mut index_map = vec![None; s.len()];
    for (n, &k) in kept.iter().enumerate() {
        index_map[k] = Some(n);
    }
    let mut position = Position::empty();
    for (n, &k) in kept.iter().enumerate() {
        let mut j = s.entries[k].1;
        let just = loop {
            match j {
                None => break None,
                Some(jj) => match index_map[jj] {
                    Some(x) => break Some(x),
                    None => j = s.entries[jj].1,
                },
            }
        };
        position.push(relabeled[n].clone(), just);
    }
    Projection {
        position,
        kept,
        index_map,
    }
}

/// Projection to the left/right component of tensor, with or limp.
pub fn proj_side(s: &Position, left: bool) -> Projection {
    let want = if left { Tag::L } else { Tag::R };
    project(s, |m| match m.split() {
        Some((t, rest)) if *t == want => Some(rest),
        _ => None,
    })
}

/// Projection to a component of par/plus: pair initials become the chosen
/// component initial, component moves are untagged.
pub fn proj_pair_side(s: &Position, left: bool) -> Projection {
    project(s, |m| match m.split() {
        Some((Tag::PInit(a, b), _)) => Some(if left {
            (**a).clone()
        } else {
            (**b).clone()
        }),
        Some((Tag::PL, rest)) if left => Some(rest),
        Some((Tag::PR, rest)) if !left => Some(rest),
        _ => None,
    })
}

/// Projection to thread `i` of an ofc layer.
pub fn proj_bang_thread(s: &Position, i: u64) -> Projection {
    project(s, |m| match m.split() {
        Some((Tag::Bang(j), rest)) if *j == i => Some(rest),
        _ => None,
    })
}

/// Projection to thread `i` of a wn layer: function initials become their
/// value at `i`, component moves of thread `i` are untagged.
pub fn proj_wn_thread(s: &Position, i: u64) -> Projection {
    project(s, |m| match m.split() {
        Some((Tag::WnInit(alpha), _)) => Some(alpha.at(i).clone()),
        Some((Tag::Wn(j), rest)) if *j == i => Some(rest),
        _ => None,
    })
}

fn is_legal(f: &Formula, s: &Position) -> bool {
    // Justifier edges.
    for (k, (m, j)) in s.entries.iter().enumerate() {
        if check_move(f, m).is_err() {
            return false;
        }
        match j {
            None => {
                if !is_initial(f, m) {
                    return false;
                }
            }
            Some(jj) => {
                if *jj >= k || !enables(f, &s.entries[*jj].0, m) {
                    return false;
                }
            }
        }
    }
    // Alternation, starting with O.
    for (k, (m, _)) in s.entries.iter().enumerate() {
        let expected = if k % 2 == 0 { Owner::O } else { Owner::P };
        if owner(f, m) != expected {
            return false;
        }
    }
    // Visibility: a P-move's justifier occurs in the P-view of the prefix
    // before it, an O-move's in the O-view.
    for (k, (m, j)) in s.entries.iter().enumerate() {
        if let Some(jj) = j {
            let side = owner(f, m);
            if !view_indices(f, s, k, side).contains(jj) {
                return false;
            }
        }
    }
    structural(f, s)
}

fn structural(f: &Formula, s: &Position) -> bool {
    use Formula::*;
    match f {
        Top | One => s.is_empty(),
        Bot | Zero => s.len() <= 1,
        Tensor(a, b) | Limp(a, b) => {
            is_legal(a, &proj_side(s, true).position) && is_legal(b, &proj_side(s, false).position)
        }
        With(a, b) => {
            let l = proj_side(s, true);
            let r = proj_side(s, false);
            (l.position.is_empty() || r.position.is_empty())
                && is_legal(a, &l.position)
                && is_legal(b, &r.position)
        }
        Par(a, b) => {
            pair_first(s)
                && is_legal(a, &proj_pair_side(s, true).position)
                && is_legal(b, &proj_pair_side(s, false).position)
        }
        Plus(a, b) => {
            pair_first(s)
                && (is_legal(a, &proj_pair_side(s, true).position)
                    || is_legal(b, &proj_pair_side(s, false).position))
        }
        OfCourse(a) => bang_threads(s)
            .iter()
            .all(|&i| is_legal(a, &proj_bang_thread(s, i).position)),
        WhyNot(a) => {
            if let Some((m, _)) = s.entries.first() {
                if !matches!(m.tags.as_slice(), [Tag::WnInit(_)]) {
                    return false;
                }
            }
            wn_threads(s)
                .iter()
                .all(|&i| is_legal(a, &proj_wn_thread(s, i).position))
        }
        Atom(_) | And(_, _) | Or(_, _) | Implies(_, _) => false,
    }
}

fn pair_first(s: &Position) -> bool {
    match s.entries.first() {
        None => true,
        Some((m, _)) => matches!(m.tags.as_slice(), [Tag::PInit(_, _)]),
    }
}

fn bang_threads(s: &Position) -> BTreeSet<u64> {
    s.entries
        .iter()
        .filter_map(|(m, _)| match m.tags.first() {
            Some(Tag::Bang(i)) => Some(*i),
            _ => None,
        })
        .collect()
}

/// Threads worth checking in a wn layer: component threads, exception keys,
/// and one fresh index standing for all untouched default threads.
fn wn_threads(s: &Position) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut has_init = false;
    for (m, _) in &s.entries {
        match m.tags.first() {
            Some(Tag::Wn(i)) => {
                out.insert(*i);
            }
            Some(Tag::WnInit(alpha)) => {
                has_init = true;
                out.extend(alpha.exceptions.keys().copied());
            }
            _ => {}
        }
    }
    if has_init {
        let fresh = out.iter().next_back().map_or(0, |m| m + 1);
        out.insert(fresh);
    }
    out
}

// ---------------------------------------------------------------------------
// Canonicalization: first-use renaming of thread indices per layer.
// ---------------------------------------------------------------------------

/// A scope names one exponential layer instance: the path to it through the
/// shape, with outer thread indices already canonical.
type Scope = Vec<ScopeStep>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ScopeStep {
    L,
    R,
    PL,
    PR,
    Thread(u64),
}

#[derive(Default)]
struct Renaming {
    maps: HashMap<Scope, (BTreeMap<u64, u64>, u64)>,
}

impl Renaming {
    fn rename(&mut self, scope: &Scope, i: u64) -> u64 {
        let (map, next) = self.maps.entry(scope.clone()).or_default();
        match map.get(&i) {
            Some(&c) => c,
            None => {
                let c = *next;
                map.insert(i, c);
                *next += 1;
                c
            }
        }
    }

    fn lookup(&self, scope: &Scope, i: u64) -> Option<u64> {
        self.maps.get(scope).and_then(|(m, _)| m.get(&i).copied())
    }
}

fn canonicalize(f: &Formula, s: &Position) -> Position {
    let mut ren = Renaming::default();
    // First pass: assign canonical indices from thread tags in order of use.
    let mut first: Vec<Move> = Vec::new();
    for (m, _) in &s.entries {
        first.push(canon_move(f, m, &mut Vec::new(), &mut ren, false));
    }
    // Second pass: exception keys of untouched threads now pick up stable
    // indices after every used one.
    let mut out = Position::empty();
    for (k, (m, j)) in s.entries.iter().enumerate() {
        let _ = k;
        out.push(canon_move(f, m, &mut Vec::new(), &mut ren, true), *j);
    }
    let _ = first;
    out
}

fn canon_move(f: &Formula, m: &Move, scope: &mut Scope, ren: &mut Renaming, second: bool) -> Move {
    let tags = canon_tags(f, &m.tags, scope, ren, second);
    Move { tags }
}

fn canon_tags(
    f: &Formula,
    tags: &[Tag],
    scope: &mut Scope,
    ren: &mut Renaming,
    second: bool,
) -> Vec<Tag> {
    use Formula::*;
    let (t, rest) = match tags.split_first() {
        Some(x) => x,
        None => return Vec::new(),
    };
    let with_step = |step: ScopeStep,
                         inner: &Formula,
                         scope: &mut Scope,
                         ren: &mut Renaming|
     -> Vec<Tag> {
        scope.push(step);
        let out = canon_tags(inner, rest, scope, ren, second);
        scope.pop();
        out
    };
    match (t, f) {
        (Tag::L, Tensor(a, _)) | (Tag::L, With(a, _)) | (Tag::L, Limp(a, _)) => {
            let mut out = vec![Tag::L];
            out.extend(with_step(ScopeStep::L, a, scope, ren));
            out
        }
        (Tag::R, Tensor(_, b)) | (Tag::R, With(_, b)) | (Tag::R, Limp(_, b)) => {
            let mut out = vec![Tag::R];
            out.extend(with_step(ScopeStep::R, b, scope, ren));
            out
        }
        (Tag::PL, Par(a, _)) | (Tag::PL, Plus(a, _)) => {
            let mut out = vec![Tag::PL];
            out.extend(with_step(ScopeStep::PL, a, scope, ren));
            out
        }
        (Tag::PR, Par(_, b)) | (Tag::PR, Plus(_, b)) => {
            let mut out = vec![Tag::PR];
            out.extend(with_step(ScopeStep::PR, b, scope, ren));
            out
        }
        (Tag::PInit(x, y), Par(a, b)) | (Tag::PInit(x, y), Plus(a, b)) => {
            // Pair components live in the same layers as later PL/PR moves.
            scope.push(ScopeStep::PL);
            let cx = canon_tags(a, &x.tags, scope, ren, second);
            scope.pop();
            scope.push(ScopeStep::PR);
            let cy = canon_tags(b, &y.tags, scope, ren, second);
            scope.pop();
            vec![Tag::PInit(
                Box::new(Move { tags: cx }),
                Box::new(Move { tags: cy }),
            )]
        }
        (Tag::Bang(i), OfCourse(a)) => {
            let ci = ren.rename(scope, *i);
            let mut out = vec![Tag::Bang(ci)];
            out.extend(with_step(ScopeStep::Thread(ci), a, scope, ren));
            out
        }
        (Tag::Wn(i), WhyNot(a)) => {
            let ci = ren.rename(scope, *i);
            let mut out = vec![Tag::Wn(ci)];
            out.extend(with_step(ScopeStep::Thread(ci), a, scope, ren));
            out
        }
        (Tag::WnInit(alpha), WhyNot(a)) => {
            // Function values are canonicalized in isolation; see the module
            // docs for the limits of this representation.
            let default = canon_local(a, &alpha.default);
            let mut exceptions = BTreeMap::new();
            if second {
                // All genuinely used keys are assigned by now; leftover
                // exception keys get stable fresh indices in key order.
                for (i, v) in &alpha.exceptions {
                    let ci = match ren.lookup(scope, *i) {
                        Some(c) => c,
                        None => ren.rename(scope, *i),
                    };
                    exceptions.insert(ci, canon_local(a, v));
                }
            }
            vec![Tag::WnInit(FinSuppFn::new(default, exceptions))]
        }
        _ => tags.to_vec(),
    }
}

/// Canonicalizes a standalone move value: first-use renaming local to it.
fn canon_local(f: &Formula, m: &Move) -> Move {
    let mut ren = Renaming::default();
    let first = canon_move(f, m, &mut Vec::new(), &mut ren, false);
    let _ = first;
    canon_move(f, m, &mut Vec::new(), &mut ren, true)
}

// ---------------------------------------------------------------------------
// Canonical move enumeration.
// ---------------------------------------------------------------------------

#[derive(Default)]
struct UsedIndices {
    per_scope: HashMap<Scope, BTreeSet<u64>>,
}

impl UsedIndices {
    fn mine(&mut self, f: &Formula, m: &Move, scope: &mut Scope) {
        self.mine_tags(f, &m.tags, scope);
    }

    fn mine_tags(&mut self, f: &Formula, tags: &[Tag], scope: &mut Scope) {
        use Formula::*;
        let (t, rest) = match tags.split_first() {
            Some(x) => x,
            None => return,
        };
        match (t, f) {
            (Tag::L, Tensor(a, _)) | (Tag::L, With(a, _)) | (Tag::L, Limp(a, _)) => {
                scope.push(ScopeStep::L);
                self.mine_tags(a, rest, scope);
                scope.pop();
            }
            (Tag::R, Tensor(_, b)) | (Tag::R, With(_, b)) | (Tag::R, Limp(_, b)) => {
                scope.push(ScopeStep::R);
                self.mine_tags(b, rest, scope);
                scope.pop();
            }
            (Tag::PL, Par(a, _)) | (Tag::PL, Plus(a, _)) => {
                scope.push(ScopeStep::PL);
                self.mine_tags(a, rest, scope);
                scope.pop();
            }
            (Tag::PR, Par(_, b)) | (Tag::PR, Plus(_, b)) => {
                scope.push(ScopeStep::PR);
                self.mine_tags(b, rest, scope);
                scope.pop();
            }
            (Tag::PInit(x, y), Par(a, b)) | (Tag::PInit(x, y), Plus(a, b)) => {
                scope.push(ScopeStep::PL);
                self.mine_tags(a, &x.tags, scope);
                scope.pop();
                scope.push(ScopeStep::PR);
                self.mine_tags(b, &y.tags, scope);
                scope.pop();
            }
            (Tag::Bang(i), OfCourse(a)) => {
                self.per_scope.entry(scope.clone()).or_default().insert(*i);
                scope.push(ScopeStep::Thread(*i));
                self.mine_tags(a, rest, scope);
                scope.pop();
            }
            (Tag::Wn(i), WhyNot(a)) => {
                self.per_scope.entry(scope.clone()).or_default().insert(*i);
                scope.push(ScopeStep::Thread(*i));
                self.mine_tags(a, rest, scope);
                scope.pop();
            }
            (Tag::WnInit(alpha), WhyNot(a)) => {
                let set = self.per_scope.entry(scope.clone()).or_default();
                set.extend(alpha.exceptions.keys().copied());
                let keys: Vec<u64> = alpha.exceptions.keys().copied().collect();
                for i in keys {
                    scope.push(ScopeStep::Thread(i));
                    let v = alpha.exceptions.get(&i).cloned().unwrap();
                    self.mine_tags(a, &v.tags, scope);
                    scope.pop();
                }
            }
            _ => {}
        }
    }

    fn indices(&self, scope: &Scope) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .per_scope
            .get(scope)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        let fresh = out.iter().copied().max().map_or(0, |m| m + 1);
        out.push(fresh);
        out
    }
}

fn gen_moves(f: &Formula, used: &UsedIndices, scope: &mut Scope) -> Vec<Move> {
    use Formula::*;
    match f {
        Top | One | Atom(_) | And(_, _) | Or(_, _) | Implies(_, _) => Vec::new(),
        Bot | Zero => vec![Move::leaf()],
        Tensor(a, b) | With(a, b) | Limp(a, b) => {
            let mut out = Vec::new();
            scope.push(ScopeStep::L);
            out.extend(gen_moves(a, used, scope).into_iter().map(|m| Move::tagged(Tag::L, m)));
            scope.pop();
            scope.push(ScopeStep::R);
            out.extend(gen_moves(b, used, scope).into_iter().map(|m| Move::tagged(Tag::R, m)));
            scope.pop();
            out
        }
        Par(a, b) | Plus(a, b) => {
            let mut out = Vec::new();
            scope.push(ScopeStep::PL);
            let la = gen_moves(a, used, scope);
            scope.pop();
            scope.push(ScopeStep::PR);
            let lb = gen_moves(b, used, scope);
            scope.pop();
            for x in la.iter().filter(|m| is_initial(a, m)) {
                for y in lb.iter().filter(|m| is_initial(b, m)) {
                    out.push(Move {
                        tags: vec![Tag::PInit(Box::new(x.clone()), Box::new(y.clone()))],
                    });
                }
            }
            out.extend(la.into_iter().map(|m| Move::tagged(Tag::PL, m)));
            out.extend(lb.into_iter().map(|m| Move::tagged(Tag::PR, m)));
            out
        }
        OfCourse(a) => {
            let mut out = Vec::new();
            for i in used.indices(scope) {
                scope.push(ScopeStep::Thread(i));
                let inner = gen_moves(a, used, scope);
                scope.pop();
                out.extend(inner.into_iter().map(|m| Move::tagged(Tag::Bang(i), m)));
            }
            out
        }
        WhyNot(a) => {
            let mut out = Vec::new();
            // Constant function initials over the canonical initial moves.
            scope.push(ScopeStep::Thread(0));
            let inner0 = gen_moves(a, used, scope);
            scope.pop();
            for v in inner0.iter().filter(|m| is_initial(a, m)) {
                out.push(Move {
                    tags: vec![Tag::WnInit(FinSuppFn::constant(v.clone()))],
                });
            }
            for i in used.indices(scope) {
                scope.push(ScopeStep::Thread(i));
                let inner = gen_moves(a, used, scope);
                scope.pop();
                out.extend(inner.into_iter().map(|m| Move::tagged(Tag::Wn(i), m)));
            }
            out
        }
    }
}
