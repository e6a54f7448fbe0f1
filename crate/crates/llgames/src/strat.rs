//! Strategies on games, and the algebra over them: copy-cats, composition,
//! tensor/par/pairing/copairing, the exponential constructions, the
//! structural natural transformations, and bounded equivalence.
//!
//! A strategy is an oracle: a partial function from odd-length legal
//! positions of its game to responses (a move plus justifier index).  The
//! generated even-position set is never materialized; bounded exploration
//! walks it on demand.  Most constructions fall into three shapes:
//!
//!   - mirrors: respond to an Opponent move with a relabeled counterpart on
//!     the other side of a limp, justified by the partner discipline
//!     (copy-cat, dereliction, waste, absorption, the distribution maps and
//!     every natural isomorphism);
//!   - routers: project the position to a component game, consult the
//!     component strategy there, and map its response back through the
//!     projection's index map (tensor, par, pairing, copairing, promotion,
//!     why-not);
//!   - replays: reconstruct a hidden interaction from scratch on every query
//!     (composition).
//!
//! Equivalence of strategies is the bounded alternating bisimulation over
//! canonical Opponent extensions; thread indices are identified through
//! `Game::canonicalize`.

use crate::game::{is_initial, project, FinSuppFn, Game, Move, Position, Tag};
use crate::logic::Formula;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

/// A response: the move to play and its justifier index.
pub type Response = (Move, Option<usize>);

/// A strategy: a game plus a memoized response oracle.
pub struct Strategy {
    pub game: Game,
    /// Construction expression, for diagnostics and proof extraction.
    pub provenance: String,
    oracle: Rc<dyn Fn(&Position) -> Option<Response>>,
    memo: Rc<RefCell<HashMap<Position, Option<Response>>>>,
}

impl std::fmt::Debug for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} : {}", self.provenance, self.game.shape)
    }
}

impl Clone for Strategy {
    fn clone(&self) -> Strategy {
        Strategy {
            game: self.game.clone(),
            provenance: self.provenance.clone(),
            oracle: Rc::clone(&self.oracle),
            memo: Rc::clone(&self.memo),
        }
    }
}

impl Strategy {
    pub fn new(
        game: Game,
        provenance: impl Into<String>,
        oracle: impl Fn(&Position) -> Option<Response> + 'static,
    ) -> Strategy {
        Strategy {
            game,
            provenance: provenance.into(),
            oracle: Rc::new(oracle),
            memo: Rc::new(RefCell::new(HashMap::new())),
        }
    }

    /// The response at an odd-length position of the strategy's play, if any.
    pub fn respond(&self, s: &Position) -> Option<Response> {
        if s.len() % 2 == 0 {
            return None;
        }
        if let Some(r) = self.memo.borrow().get(s) {
            return r.clone();
        }
        let r = (self.oracle)(s);
        self.memo.borrow_mut().insert(s.clone(), r.clone());
        r
    }

    /// Renames this strategy's provenance, keeping the behaviour.
    pub fn named(mut self, provenance: impl Into<String>) -> Strategy {
        self.provenance = provenance.into();
        self
    }
}

/// Splits a limp-shaped formula into domain and codomain.
pub fn limp_parts(f: &Formula) -> Result<(&Formula, &Formula), String> {
    match f {
        Formula::Limp(a, b) => Ok((a, b)),
        _ => Err(format!("expected a limp-shaped game, got {f}")),
    }
}

fn mv(tags: Vec<Tag>) -> Move {
    Move { tags }
}

fn cat(head: Vec<Tag>, rest: &Move) -> Move {
    let mut tags = head;
    tags.extend(rest.tags.iter().cloned());
    Move { tags }
}

fn pinit(x: Move, y: Move) -> Move {
    mv(vec![Tag::PInit(Box::new(x), Box::new(y))])
}

/// The Cantor pairing, fixed wherever two thread-index spaces are merged.
pub fn cantor(i: u64, j: u64) -> u64 {
    (i + j) * (i + j + 1) / 2 + j
}

pub fn uncantor(k: u64) -> (u64, u64) {
    let mut w = 0u64;
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let j = k - w * (w + 1) / 2;
    (w - j, j)
}

fn map_fsf(f: &FinSuppFn, mut g: impl FnMut(&Move) -> Option<Move>) -> Option<FinSuppFn> {
    let d = g(&f.default)?;
    let mut exc = BTreeMap::new();
    for (k, v) in &f.exceptions {
        exc.insert(*k, g(v)?);
    }
    Some(FinSuppFn::new(d, exc))
}

/// Attaches a justifier to a computed response move: the preferred index
/// first, then the root, then every earlier occurrence from the most recent
/// one backwards, keeping the first choice that is legal.
fn attach_just(game: &Game, s: &Position, m: Move, preferred: Option<usize>) -> Option<Response> {
    if let Some(k) = preferred {
        if game.is_legal(&s.extended(m.clone(), Some(k))) {
            return Some((m, Some(k)));
        }
    }
    if game.is_legal(&s.extended(m.clone(), None)) {
        return Some((m, None));
    }
    for k in (0..s.len()).rev() {
        if game.is_legal(&s.extended(m.clone(), Some(k))) {
            return Some((m, Some(k)));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Mirrors.
// ---------------------------------------------------------------------------

/// Context handed to a mirror's move map: the position, the last (Opponent)
/// move, its justifier, and the partner of that justifier under the ping-pong
/// pairing (index k paired with k xor 1).
pub struct MirrorCtx<'a> {
    pub s: &'a Position,
    pub m: &'a Move,
    pub j: Option<usize>,
    pub partner: Option<&'a Move>,
}

/// A mirror strategy: every Opponent move is answered by the move the map
/// yields, with the partner justifier discipline.  An unmapped move gets no
/// response.
fn mirror(
    game: Game,
    provenance: impl Into<String>,
    map: impl Fn(&MirrorCtx) -> Option<Move> + 'static,
) -> Strategy {
    let g = game.clone();
    Strategy::new(game, provenance, move |s| {
        let (m, j) = s.entries.last()?;
        let partner = j.and_then(|k| s.entries.get(k ^ 1)).map(|(mm, _)| mm);
        let ctx = MirrorCtx {
            s,
            m,
            j: *j,
            partner,
        };
        let r = map(&ctx)?;
        let preferred = match j {
            Some(k) => Some(k ^ 1),
            None => Some(s.len() - 1),
        };
        attach_just(&g, s, r, preferred)
    })
}

/// A mirror on `dom ⊸ cod` given by two component-move maps.  `to_dom` sees
/// codomain moves (side tag stripped) and yields domain moves, `to_cod` the
/// converse.
fn swap_mirror(
    dom: Formula,
    cod: Formula,
    provenance: impl Into<String>,
    to_dom: impl Fn(&MirrorCtx, &Move) -> Option<Move> + 'static,
    to_cod: impl Fn(&MirrorCtx, &Move) -> Option<Move> + 'static,
) -> Result<Strategy, String> {
    let game = Game::new(Formula::limp(dom, cod))?;
    Ok(mirror(game, provenance, move |cx| {
        let (t, rest) = cx.m.split()?;
        match t {
            Tag::R => to_dom(cx, &rest).map(|x| Move::tagged(Tag::L, x)),
            Tag::L => to_cod(cx, &rest).map(|x| Move::tagged(Tag::R, x)),
            _ => None,
        }
    }))
}

/// The copy-cat on `a ⊸ a`.
pub fn copycat(a: &Formula) -> Result<Strategy, String> {
    swap_mirror(
        a.clone(),
        a.clone(),
        format!("cp({a})"),
        |_, x| Some(x.clone()),
        |_, x| Some(x.clone()),
    )
}

/// Dereliction `!a ⊸ a`: copy-cat through thread 0.
pub fn dereliction(a: &Formula) -> Result<Strategy, String> {
    swap_mirror(
        Formula::ofc(a.clone()),
        a.clone(),
        format!("der({a})"),
        |_, x| Some(cat(vec![Tag::Bang(0)], x)),
        |_, x| match x.tags.as_slice() {
            [Tag::Bang(0), rest @ ..] => Some(mv(rest.to_vec())),
            _ => None,
        },
    )
}

/// Waste `a ⊸ ?a`: the domain play equals thread 0 of the codomain.
pub fn waste(a: &Formula) -> Result<Strategy, String> {
    swap_mirror(
        a.clone(),
        Formula::wn(a.clone()),
        format!("wst({a})"),
        |_, x| match x.tags.as_slice() {
            [Tag::WnInit(alpha)] => Some(alpha.at(0).clone()),
            [Tag::Wn(0), rest @ ..] => Some(mv(rest.to_vec())),
            _ => None,
        },
        |_, x| Some(cat(vec![Tag::Wn(0)], x)),
    )
}

/// Absorption `??a ⊸ ?a`: thread pair (i, j) of the domain equals thread
/// cantor(i, j) of the codomain.
pub fn absorption(a: &Formula) -> Result<Strategy, String> {
    let to_dom = |_: &MirrorCtx<'_>, x: &Move| match x.tags.as_slice() {
        [Tag::WnInit(delta)] => {
            // Split the exception table along the pairing.
            let mut per_i: BTreeMap<u64, BTreeMap<u64, Move>> = BTreeMap::new();
            for (k, v) in &delta.exceptions {
                let (i, j) = uncantor(*k);
                per_i.entry(i).or_default().insert(j, v.clone());
            }
            let inner_default = (*delta.default).clone();
            let mut exc = BTreeMap::new();
            for (i, table) in per_i {
                let f = FinSuppFn::new(inner_default.clone(), table);
                exc.insert(i, mv(vec![Tag::WnInit(f)]));
            }
            let d = mv(vec![Tag::WnInit(FinSuppFn::constant(inner_default))]);
            Some(mv(vec![Tag::WnInit(FinSuppFn::new(d, exc))]))
        }
        [Tag::Wn(k), rest @ ..] => {
            let (i, j) = uncantor(*k);
            Some(cat(vec![Tag::Wn(i), Tag::Wn(j)], &mv(rest.to_vec())))
        }
        _ => None,
    };
    let to_cod = |_: &MirrorCtx<'_>, x: &Move| match x.tags.as_slice() {
        [Tag::Wn(i), Tag::Wn(j), rest @ ..] => {
            Some(cat(vec![Tag::Wn(cantor(*i, *j))], &mv(rest.to_vec())))
        }
        _ => None,
    };
    swap_mirror(
        Formula::wn(Formula::wn(a.clone())),
        Formula::wn(a.clone()),
        format!("abs({a})"),
        to_dom,
        to_cod,
    )
}

/// The distributive map `!?a ⊸ ?!a`: thread i of the single domain session
/// equals thread i of the codomain with its bang index erased.
pub fn upsilon(a: &Formula) -> Result<Strategy, String> {
    let strip_bang = |m: &Move| match m.tags.as_slice() {
        [Tag::Bang(_), rest @ ..] => Some(mv(rest.to_vec())),
        _ => None,
    };
    let to_dom = move |_: &MirrorCtx<'_>, x: &Move| match x.tags.as_slice() {
        [Tag::WnInit(beta)] => {
            let alpha = map_fsf(beta, strip_bang)?;
            Some(mv(vec![Tag::Bang(0), Tag::WnInit(alpha)]))
        }
        [Tag::Wn(i), Tag::Bang(_), rest @ ..] => {
            Some(cat(vec![Tag::Bang(0), Tag::Wn(*i)], &mv(rest.to_vec())))
        }
        _ => None,
    };
    let to_cod = |cx: &MirrorCtx<'_>, x: &Move| match x.tags.as_slice() {
        [Tag::Bang(0), Tag::Wn(i), rest @ ..] => {
            // Recover the codomain bang index from the mirror partner, or use
            // a fresh one for a thread opener.
            let j = match cx.partner.map(|p| p.tags.as_slice()) {
                Some([Tag::R, Tag::Wn(_), Tag::Bang(j), ..]) => *j,
                Some([Tag::R, Tag::WnInit(beta)]) => match beta.at(*i).tags.as_slice() {
                    [Tag::Bang(j), ..] => *j,
                    _ => return None,
                },
                _ => {
                    let mut fresh = 0u64;
                    for (m, _) in &cx.s.entries {
                        match m.tags.as_slice() {
                            [Tag::R, Tag::Wn(ii), Tag::Bang(j), ..] if ii == i => {
                                fresh = fresh.max(j + 1)
                            }
                            [Tag::R, Tag::WnInit(beta)] => {
                                if let [Tag::Bang(j), ..] = beta.at(*i).tags.as_slice() {
                                    fresh = fresh.max(j + 1);
                                }
                            }
                            _ => {}
                        }
                    }
                    fresh
                }
            };
            Some(cat(vec![Tag::Wn(*i), Tag::Bang(j)], &mv(rest.to_vec())))
        }
        _ => None,
    };
    swap_mirror(
        Formula::ofc(Formula::wn(a.clone())),
        Formula::wn(Formula::ofc(a.clone())),
        format!("ups({a})"),
        to_dom,
        to_cod,
    )
}

// ---------------------------------------------------------------------------
// Structural transformations and isomorphisms.
// ---------------------------------------------------------------------------

/// Names for the fixed families of structural strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralName {
    Omega,
    Sigma,
    Pi,
    Upsilon,
    AssocTensor,
    AssocPar,
    UnitTensor,
    UnitPar,
    SymTensor,
    SymPar,
    Ni1,
    Ni1Inv,
    Ni2,
    Ni2Inv,
    Ni3,
    Ni3Inv,
    Ni4,
    Ni4Inv,
    Proj1,
    Proj2,
    Inj1,
    Inj2,
}

impl StructuralName {
    pub fn name(self) -> &'static str {
        use StructuralName::*;
        match self {
            Omega => "omega",
            Sigma => "sigma",
            Pi => "pi",
            Upsilon => "upsilon",
            AssocTensor => "assoc-tensor",
            AssocPar => "assoc-par",
            UnitTensor => "unit-tensor",
            UnitPar => "unit-par",
            SymTensor => "sym-tensor",
            SymPar => "sym-par",
            Ni1 => "ni1",
            Ni1Inv => "ni1-inv",
            Ni2 => "ni2",
            Ni2Inv => "ni2-inv",
            Ni3 => "ni3",
            Ni3Inv => "ni3-inv",
            Ni4 => "ni4",
            Ni4Inv => "ni4-inv",
            Proj1 => "proj1",
            Proj2 => "proj2",
            Inj1 => "inj1",
            Inj2 => "inj2",
        }
    }

    pub fn from_name(s: &str) -> Option<StructuralName> {
        use StructuralName::*;
        for n in [
            Omega,
            Sigma,
            Pi,
            Upsilon,
            AssocTensor,
            AssocPar,
            UnitTensor,
            UnitPar,
            SymTensor,
            SymPar,
            Ni1,
            Ni1Inv,
            Ni2,
            Ni2Inv,
            Ni3,
            Ni3Inv,
            Ni4,
            Ni4Inv,
            Proj1,
            Proj2,
            Inj1,
            Inj2,
        ] {
            if n.name() == s {
                return Some(n);
            }
        }
        None
    }

    pub fn arity(self) -> usize {
        use StructuralName::*;
        match self {
            Omega | AssocTensor | AssocPar => 3,
            Upsilon | UnitTensor | UnitPar | Ni1 | Ni1Inv => 1,
            _ => 2,
        }
    }
}

/// The structural strategy of the given name over the component games.
pub fn structural(name: StructuralName, comps: &[Formula]) -> Result<Strategy, String> {
    use StructuralName::*;
    if comps.len() != name.arity() {
        return Err(format!(
            "{} takes {} component(s), got {}",
            name.name(),
            name.arity(),
            comps.len()
        ));
    }
    match name {
        Omega => omega(&comps[0], &comps[1], &comps[2]),
        Sigma => sigma(&comps[0], &Formula::wn(comps[1].clone())),
        Pi => pi(&comps[0], &comps[1]),
        Upsilon => upsilon(&comps[0]),
        AssocTensor => assoc_tensor(&comps[0], &comps[1], &comps[2]),
        AssocPar => assoc_par(&comps[0], &comps[1], &comps[2]),
        UnitTensor => unit_tensor(&comps[0]),
        UnitPar => unit_par(&comps[0]),
        SymTensor => sym_tensor(&comps[0], &comps[1]),
        SymPar => sym_par(&comps[0], &comps[1]),
        Ni1 => ni1(&comps[0]),
        Ni1Inv => ni1_inv(&comps[0]),
        Ni2 => ni2(&comps[0], &comps[1]),
        Ni2Inv => ni2_inv(&comps[0], &comps[1]),
        Ni3 => ni3(&comps[0], &comps[1]),
        Ni3Inv => ni3_inv(&comps[0], &comps[1]),
        Ni4 => ni4(&comps[0], &comps[1]),
        Ni4Inv => ni4_inv(&comps[0], &comps[1]),
        Proj1 => proj(&comps[0], &comps[1], true),
        Proj2 => proj(&comps[0], &comps[1], false),
        Inj1 => inj(&comps[0], &comps[1], true),
        Inj2 => inj(&comps[0], &comps[1], false),
    }
}

fn assoc_tensor(a: &Formula, b: &Formula, c: &Formula) -> Result<Strategy, String> {
    // (a⊗b)⊗c ⊸ a⊗(b⊗c)
    let dom = Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone());
    let cod = Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone()));
    swap_mirror(
        dom,
        cod,
        "assoc-tensor",
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            [Tag::R, Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
        |_, x| match x.tags.as_slice() {
            [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
    )
}

fn un_pinit(m: &Move) -> Option<(Move, Move)> {
    match m.tags.as_slice() {
        [Tag::PInit(x, y)] => Some(((**x).clone(), (**y).clone())),
        _ => None,
    }
}

fn assoc_par(a: &Formula, b: &Formula, c: &Formula) -> Result<Strategy, String> {
    // (a⅋b)⅋c ⊸ a⅋(b⅋c)
    let dom = Formula::par(Formula::par(a.clone(), b.clone()), c.clone());
    let cod = Formula::par(a.clone(), Formula::par(b.clone(), c.clone()));
    swap_mirror(
        dom,
        cod,
        "assoc-par",
        |_, x| {
            if let Some((ah, rest)) = un_pinit(x) {
                let (bh, ch) = un_pinit(&rest)?;
                return Some(pinit(pinit(ah, bh), ch));
            }
            match x.tags.as_slice() {
                [Tag::PL, rest @ ..] => Some(cat(vec![Tag::PL, Tag::PL], &mv(rest.to_vec()))),
                [Tag::PR, Tag::PL, rest @ ..] => {
                    Some(cat(vec![Tag::PL, Tag::PR], &mv(rest.to_vec())))
                }
                [Tag::PR, Tag::PR, rest @ ..] => Some(cat(vec![Tag::PR], &mv(rest.to_vec()))),
                _ => None,
            }
        },
        |_, x| {
            if let Some((rest, ch)) = un_pinit(x) {
                let (ah, bh) = un_pinit(&rest)?;
                return Some(pinit(ah, pinit(bh, ch)));
            }
            match x.tags.as_slice() {
                [Tag::PL, Tag::PL, rest @ ..] => Some(cat(vec![Tag::PL], &mv(rest.to_vec()))),
                [Tag::PL, Tag::PR, rest @ ..] => {
                    Some(cat(vec![Tag::PR, Tag::PL], &mv(rest.to_vec())))
                }
                [Tag::PR, rest @ ..] => Some(cat(vec![Tag::PR, Tag::PR], &mv(rest.to_vec()))),
                _ => None,
            }
        },
    )
}

fn unit_tensor(a: &Formula) -> Result<Strategy, String> {
    // a⊗⊤ ⊸ a
    swap_mirror(
        Formula::tensor(a.clone(), Formula::Top),
        a.clone(),
        "unit-tensor",
        |_, x| Some(cat(vec![Tag::L], x)),
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(mv(rest.to_vec())),
            _ => None,
        },
    )
}

/// `a ⊸ a⊗⊤`: the inverse unit, used when assembling classical strategies.
pub fn tensor_unit_intro(a: &Formula) -> Result<Strategy, String> {
    swap_mirror(
        a.clone(),
        Formula::tensor(a.clone(), Formula::Top),
        "unit-tensor-intro",
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(mv(rest.to_vec())),
            _ => None,
        },
        |_, x| Some(cat(vec![Tag::L], x)),
    )
}

fn unit_par(a: &Formula) -> Result<Strategy, String> {
    // a⅋⊥ ⊸ a
    let af = a.clone();
    swap_mirror(
        Formula::par(a.clone(), Formula::Bot),
        a.clone(),
        "unit-par",
        move |_, x| {
            if is_initial(&af, x) {
                Some(pinit(x.clone(), Move::leaf()))
            } else {
                Some(cat(vec![Tag::PL], x))
            }
        },
        |_, x| {
            if let Some((xh, _)) = un_pinit(x) {
                return Some(xh);
            }
            match x.tags.as_slice() {
                [Tag::PL, rest @ ..] => Some(mv(rest.to_vec())),
                _ => None,
            }
        },
    )
}

/// `⊥⅋a ⊸ a`: the left par unit, used when assembling classical strategies.
pub fn par_unit_elim_left(a: &Formula) -> Result<Strategy, String> {
    let af = a.clone();
    swap_mirror(
        Formula::par(Formula::Bot, a.clone()),
        a.clone(),
        "unit-par-left",
        move |_, x| {
            if is_initial(&af, x) {
                Some(pinit(Move::leaf(), x.clone()))
            } else {
                Some(cat(vec![Tag::PR], x))
            }
        },
        |_, x| {
            if let Some((_, xh)) = un_pinit(x) {
                return Some(xh);
            }
            match x.tags.as_slice() {
                [Tag::PR, rest @ ..] => Some(mv(rest.to_vec())),
                _ => None,
            }
        },
    )
}

fn sym_tensor(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // a⊗b ⊸ b⊗a
    swap_mirror(
        Formula::tensor(a.clone(), b.clone()),
        Formula::tensor(b.clone(), a.clone()),
        "sym-tensor",
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            _ => None,
        },
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            _ => None,
        },
    )
}

fn sym_par(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // a⅋b ⊸ b⅋a
    let flip = |x: &Move| {
        if let Some((l, r)) = un_pinit(x) {
            return Some(pinit(r, l));
        }
        match x.tags.as_slice() {
            [Tag::PL, rest @ ..] => Some(cat(vec![Tag::PR], &mv(rest.to_vec()))),
            [Tag::PR, rest @ ..] => Some(cat(vec![Tag::PL], &mv(rest.to_vec()))),
            _ => None,
        }
    };
    swap_mirror(
        Formula::par(a.clone(), b.clone()),
        Formula::par(b.clone(), a.clone()),
        "sym-par",
        move |_, x| flip(x),
        move |_, x| flip(x),
    )
}

fn ni1(a: &Formula) -> Result<Strategy, String> {
    // a⅋⊤ ⊸ ⊤: both sides have no reachable move.
    swap_mirror(
        Formula::par(a.clone(), Formula::Top),
        Formula::Top,
        "ni1",
        |_, _| None,
        |_, _| None,
    )
}

fn ni1_inv(a: &Formula) -> Result<Strategy, String> {
    swap_mirror(
        Formula::Top,
        Formula::par(a.clone(), Formula::Top),
        "ni1-inv",
        |_, _| None,
        |_, _| None,
    )
}

// The bot question inside a negation: the move R·q of a ⊸ ⊥.
fn neg_question() -> Move {
    mv(vec![Tag::R])
}

fn ni2_to_dom(b: &Formula) -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬a⅋b moves to a⊸b moves.
    let b = b.clone();
    move |_, x| {
        if let Some((_, bh)) = un_pinit(x) {
            return Some(cat(vec![Tag::R], &bh));
        }
        match x.tags.as_slice() {
            [Tag::PL, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::PR, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => {
                let _ = &b;
                None
            }
        }
    }
}

fn ni2_to_cod(b: &Formula) -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // a⊸b moves to ¬a⅋b moves.
    let b = b.clone();
    move |_, x| match x.tags.as_slice() {
        [Tag::R, rest @ ..] => {
            let y = mv(rest.to_vec());
            if is_initial(&b, &y) {
                Some(pinit(neg_question(), y))
            } else {
                Some(cat(vec![Tag::PR], &y))
            }
        }
        [Tag::L, rest @ ..] => Some(cat(vec![Tag::PL, Tag::L], &mv(rest.to_vec()))),
        _ => None,
    }
}

fn ni2(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // (a⊸b) ⊸ (¬a⅋b)
    let dom = Formula::limp(a.clone(), b.clone());
    let cod = Formula::par(Formula::neg_linear(a.clone()), b.clone());
    swap_mirror(dom, cod, "ni2", ni2_to_dom(b), ni2_to_cod(b))
}

fn ni2_inv(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    let dom = Formula::par(Formula::neg_linear(a.clone()), b.clone());
    let cod = Formula::limp(a.clone(), b.clone());
    swap_mirror(dom, cod, "ni2-inv", ni2_to_cod(b), ni2_to_dom(b))
}

fn ni3_to_dom() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // (!a⊸?b) moves to ?(a⊸b) moves.
    |_, x| match x.tags.as_slice() {
        [Tag::L, Tag::Bang(i), rest @ ..] => {
            Some(cat(vec![Tag::Wn(*i), Tag::L], &mv(rest.to_vec())))
        }
        [Tag::R, Tag::WnInit(beta)] => {
            let alpha = map_fsf(beta, |v| Some(cat(vec![Tag::R], v)))?;
            Some(mv(vec![Tag::WnInit(alpha)]))
        }
        [Tag::R, Tag::Wn(i), rest @ ..] => Some(cat(vec![Tag::Wn(*i), Tag::R], &mv(rest.to_vec()))),
        _ => None,
    }
}

fn ni3_to_cod() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ?(a⊸b) moves to (!a⊸?b) moves.
    |_, x| match x.tags.as_slice() {
        [Tag::Wn(i), Tag::L, rest @ ..] => {
            Some(cat(vec![Tag::L, Tag::Bang(*i)], &mv(rest.to_vec())))
        }
        [Tag::Wn(i), Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::Wn(*i)], &mv(rest.to_vec()))),
        [Tag::WnInit(alpha)] => {
            let beta = map_fsf(alpha, |v| match v.tags.as_slice() {
                [Tag::R, rest @ ..] => Some(mv(rest.to_vec())),
                _ => None,
            })?;
            Some(cat(vec![Tag::R], &mv(vec![Tag::WnInit(beta)])))
        }
        _ => None,
    }
}

fn ni3(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // ?(a⊸b) ⊸ (!a⊸?b)
    let dom = Formula::wn(Formula::limp(a.clone(), b.clone()));
    let cod = Formula::limp(Formula::ofc(a.clone()), Formula::wn(b.clone()));
    swap_mirror(dom, cod, "ni3", ni3_to_dom(), ni3_to_cod())
}

fn ni3_inv(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    let dom = Formula::limp(Formula::ofc(a.clone()), Formula::wn(b.clone()));
    let cod = Formula::wn(Formula::limp(a.clone(), b.clone()));
    swap_mirror(dom, cod, "ni3-inv", ni3_to_cod(), ni3_to_dom())
}

fn ni4_to_dom() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬(a&b) moves to ¬a⊕¬b moves.
    |_, x| match x.tags.as_slice() {
        [Tag::R] => Some(pinit(neg_question(), neg_question())),
        [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::PL, Tag::L], &mv(rest.to_vec()))),
        [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::PR, Tag::L], &mv(rest.to_vec()))),
        _ => None,
    }
}

fn ni4_to_cod() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬a⊕¬b moves to ¬(a&b) moves.
    |_, x| {
        if un_pinit(x).is_some() {
            return Some(neg_question());
        }
        match x.tags.as_slice() {
            [Tag::PL, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::PR, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        }
    }
}

fn ni4(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // (¬a⊕¬b) ⊸ ¬(a&b)
    let dom = Formula::plus(
        Formula::neg_linear(a.clone()),
        Formula::neg_linear(b.clone()),
    );
    let cod = Formula::neg_linear(Formula::with(a.clone(), b.clone()));
    swap_mirror(dom, cod, "ni4", ni4_to_dom(), ni4_to_cod())
}

fn ni4_inv(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    let dom = Formula::neg_linear(Formula::with(a.clone(), b.clone()));
    let cod = Formula::plus(
        Formula::neg_linear(a.clone()),
        Formula::neg_linear(b.clone()),
    );
    swap_mirror(dom, cod, "ni4-inv", ni4_to_cod(), ni4_to_dom())
}

fn demorgan_ofc_to_dom() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬!a moves to ?¬a moves.
    |_, x| match x.tags.as_slice() {
        [Tag::R] => Some(mv(vec![Tag::WnInit(FinSuppFn::constant(neg_question()))])),
        [Tag::L, Tag::Bang(i), rest @ ..] => {
            Some(cat(vec![Tag::Wn(*i), Tag::L], &mv(rest.to_vec())))
        }
        _ => None,
    }
}

fn demorgan_ofc_to_cod() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ?¬a moves to ¬!a moves.
    |_, x| match x.tags.as_slice() {
        [Tag::WnInit(_)] => Some(neg_question()),
        [Tag::Wn(i), Tag::L, rest @ ..] => {
            Some(cat(vec![Tag::L, Tag::Bang(*i)], &mv(rest.to_vec())))
        }
        _ => None,
    }
}

/// The derived De Morgan iso `?¬a ⊸ ¬!a`, as the flattened composite of the
/// ni3/ni2/unit relabelings.
pub fn demorgan_ofc(a: &Formula) -> Result<Strategy, String> {
    let dom = Formula::wn(Formula::neg_linear(a.clone()));
    let cod = Formula::neg_linear(Formula::ofc(a.clone()));
    swap_mirror(
        dom,
        cod,
        "demorgan-ofc",
        demorgan_ofc_to_dom(),
        demorgan_ofc_to_cod(),
    )
}

pub fn demorgan_ofc_inv(a: &Formula) -> Result<Strategy, String> {
    let dom = Formula::neg_linear(Formula::ofc(a.clone()));
    let cod = Formula::wn(Formula::neg_linear(a.clone()));
    swap_mirror(
        dom,
        cod,
        "demorgan-ofc-inv",
        demorgan_ofc_to_cod(),
        demorgan_ofc_to_dom(),
    )
}

fn demorgan_tensor_to_dom() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬(a⊗b) moves to ¬a⅋¬b moves.
    |_, x| match x.tags.as_slice() {
        [Tag::R] => Some(pinit(neg_question(), neg_question())),
        [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::PL, Tag::L], &mv(rest.to_vec()))),
        [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::PR, Tag::L], &mv(rest.to_vec()))),
        _ => None,
    }
}

fn demorgan_tensor_to_cod() -> impl Fn(&MirrorCtx<'_>, &Move) -> Option<Move> + 'static {
    // ¬a⅋¬b moves to ¬(a⊗b) moves.
    |_, x| {
        if un_pinit(x).is_some() {
            return Some(neg_question());
        }
        match x.tags.as_slice() {
            [Tag::PL, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::PR, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        }
    }
}

/// The derived De Morgan iso `¬a⅋¬b ⊸ ¬(a⊗b)`.
pub fn demorgan_tensor(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    let dom = Formula::par(
        Formula::neg_linear(a.clone()),
        Formula::neg_linear(b.clone()),
    );
    let cod = Formula::neg_linear(Formula::tensor(a.clone(), b.clone()));
    swap_mirror(
        dom,
        cod,
        "demorgan-tensor",
        demorgan_tensor_to_dom(),
        demorgan_tensor_to_cod(),
    )
}

pub fn demorgan_tensor_inv(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    let dom = Formula::neg_linear(Formula::tensor(a.clone(), b.clone()));
    let cod = Formula::par(
        Formula::neg_linear(a.clone()),
        Formula::neg_linear(b.clone()),
    );
    swap_mirror(
        dom,
        cod,
        "demorgan-tensor-inv",
        demorgan_tensor_to_cod(),
        demorgan_tensor_to_dom(),
    )
}

fn proj(a: &Formula, b: &Formula, left: bool) -> Result<Strategy, String> {
    // (a&b) ⊸ a   resp.   (a&b) ⊸ b
    let side = if left { Tag::L } else { Tag::R };
    let side2 = side.clone();
    swap_mirror(
        Formula::with(a.clone(), b.clone()),
        if left { a.clone() } else { b.clone() },
        if left { "proj1" } else { "proj2" },
        move |_, x| Some(cat(vec![side.clone()], x)),
        move |_, x| match x.split() {
            Some((t, rest)) if *t == side2 => Some(rest),
            _ => None,
        },
    )
}

fn inj(a: &Formula, b: &Formula, left: bool) -> Result<Strategy, String> {
    // a ⊸ (a⊕b)   resp.   b ⊸ (a⊕b)
    let side = if left { Tag::PL } else { Tag::PR };
    swap_mirror(
        if left { a.clone() } else { b.clone() },
        Formula::plus(a.clone(), b.clone()),
        if left { "inj1" } else { "inj2" },
        move |_, x| {
            if let Some((l, r)) = un_pinit(x) {
                return Some(if left { l } else { r });
            }
            match x.split() {
                Some((t, rest)) if *t == side => Some(rest),
                _ => None,
            }
        },
        |_, _| None,
    )
}

fn omega(a: &Formula, b: &Formula, c: &Formula) -> Result<Strategy, String> {
    // a⊗(b⅋c) ⊸ (a⊗b)⅋c: the linear distribution.  The codomain pair
    // carries either an a-initial or a b-initial; only in the latter case can
    // the domain pair be opened, so a play opened through the a-side never
    // reaches c.
    let dom = Formula::tensor(a.clone(), Formula::par(b.clone(), c.clone()));
    let cod = Formula::par(Formula::tensor(a.clone(), b.clone()), c.clone());
    swap_mirror(
        dom,
        cod,
        "omega",
        |_, x| {
            if let Some((xh, ch)) = un_pinit(x) {
                return match xh.tags.as_slice() {
                    [Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
                    [Tag::R, rest @ ..] => {
                        Some(cat(vec![Tag::R], &pinit(mv(rest.to_vec()), ch)))
                    }
                    _ => None,
                };
            }
            match x.tags.as_slice() {
                [Tag::PL, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
                [Tag::PL, Tag::R, rest @ ..] => {
                    Some(cat(vec![Tag::R, Tag::PL], &mv(rest.to_vec())))
                }
                [Tag::PR, rest @ ..] => Some(cat(vec![Tag::R, Tag::PR], &mv(rest.to_vec()))),
                _ => None,
            }
        },
        |_, x| match x.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::PL, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::PL, rest @ ..] => Some(cat(vec![Tag::PL, Tag::R], &mv(rest.to_vec()))),
            [Tag::R, Tag::PR, rest @ ..] => Some(cat(vec![Tag::PR], &mv(rest.to_vec()))),
            _ => None,
        },
    )
}

/// The strength of the exponential over par: `!(b⅋w) ⊸ !b⅋w`, for any
/// second component `w` (the sequent interpretation instantiates `w` with a
/// fold of why-not elements).
pub fn sigma(b: &Formula, w: &Formula) -> Result<Strategy, String> {
    let dom = Formula::ofc(Formula::par(b.clone(), w.clone()));
    let cod = Formula::par(Formula::ofc(b.clone()), w.clone());
    swap_mirror(
        dom,
        cod,
        "sigma",
        |cx, x| {
            if let Some((gh, wh)) = un_pinit(x) {
                return match gh.tags.as_slice() {
                    [Tag::Bang(j), rest @ ..] => {
                        Some(cat(vec![Tag::Bang(*j)], &pinit(mv(rest.to_vec()), wh)))
                    }
                    _ => None,
                };
            }
            match x.tags.as_slice() {
                [Tag::PL, Tag::Bang(j), rest @ ..] => {
                    Some(cat(vec![Tag::Bang(*j), Tag::PL], &mv(rest.to_vec())))
                }
                [Tag::PR, rest @ ..] => {
                    // The session index comes from the mirror partner.
                    let j = match cx.partner.map(|p| p.tags.as_slice()) {
                        Some([Tag::L, Tag::Bang(j), ..]) => *j,
                        _ => return None,
                    };
                    Some(cat(vec![Tag::Bang(j), Tag::PR], &mv(rest.to_vec())))
                }
                _ => None,
            }
        },
        |_, x| match x.tags.as_slice() {
            [Tag::Bang(j), Tag::PL, rest @ ..] => {
                Some(cat(vec![Tag::PL, Tag::Bang(*j)], &mv(rest.to_vec())))
            }
            [Tag::Bang(_), Tag::PR, rest @ ..] => Some(cat(vec![Tag::PR], &mv(rest.to_vec()))),
            _ => None,
        },
    )
}

fn pi(a: &Formula, b: &Formula) -> Result<Strategy, String> {
    // !a⊗?b ⊸ ?(!a⅋b)
    let dom = Formula::tensor(Formula::ofc(a.clone()), Formula::wn(b.clone()));
    let cod = Formula::wn(Formula::par(Formula::ofc(a.clone()), b.clone()));
    swap_mirror(
        dom,
        cod,
        "pi",
        |_, x| match x.tags.as_slice() {
            [Tag::WnInit(delta)] => {
                let beta = map_fsf(delta, |v| un_pinit(v).map(|(_, bh)| bh))?;
                Some(cat(vec![Tag::R], &mv(vec![Tag::WnInit(beta)])))
            }
            [Tag::Wn(i), Tag::PR, rest @ ..] => {
                Some(cat(vec![Tag::R, Tag::Wn(*i)], &mv(rest.to_vec())))
            }
            [Tag::Wn(i), Tag::PL, Tag::Bang(j), rest @ ..] => Some(cat(
                vec![Tag::L, Tag::Bang(cantor(*i, *j))],
                &mv(rest.to_vec()),
            )),
            _ => None,
        },
        |_, x| match x.tags.as_slice() {
            [Tag::R, Tag::Wn(i), rest @ ..] => {
                Some(cat(vec![Tag::Wn(*i), Tag::PR], &mv(rest.to_vec())))
            }
            [Tag::L, Tag::Bang(t), rest @ ..] => {
                let (i, j) = uncantor(*t);
                Some(cat(
                    vec![Tag::Wn(i), Tag::PL, Tag::Bang(j)],
                    &mv(rest.to_vec()),
                ))
            }
            _ => None,
        },
    )
}

// ---------------------------------------------------------------------------
// Conjugation: relabeling a strategy along a move-address bijection.
// ---------------------------------------------------------------------------

/// Runs `phi` behind a move-address bijection: positions of the new game are
/// relabeled into `phi`'s game, the response relabeled back.  Justifier
/// indices carry over unchanged.
pub fn conjugate(
    phi: &Strategy,
    new_game: Game,
    provenance: impl Into<String>,
    new_to_old: impl Fn(&Move) -> Option<Move> + 'static,
    old_to_new: impl Fn(&Move) -> Option<Move> + 'static,
) -> Strategy {
    let phi = phi.clone();
    let g = new_game.clone();
    Strategy::new(new_game, provenance, move |s| {
        let mut old = Position::empty();
        for (m, j) in &s.entries {
            old.push(new_to_old(m)?, *j);
        }
        if !phi.game.is_legal(&old) {
            return None;
        }
        let (rm, rj) = phi.respond(&old)?;
        let nm = old_to_new(&rm)?;
        if g.is_legal(&s.extended(nm.clone(), rj)) {
            Some((nm, rj))
        } else {
            None
        }
    })
}

/// Currying `(a⊗b)⊸c` into `a⊸(b⊸c)` by address relabeling.
pub fn curry(phi: &Strategy) -> Result<Strategy, String> {
    let (dom, c) = limp_parts(&phi.game.shape)?;
    let (a, b) = match dom {
        Formula::Tensor(a, b) => (a.as_ref().clone(), b.as_ref().clone()),
        _ => return Err(format!("curry expects a tensor domain, got {dom}")),
    };
    let new_shape = Formula::limp(a, Formula::limp(b, c.clone()));
    let game = Game::new(new_shape)?;
    let prov = format!("curry({})", phi.provenance);
    Ok(conjugate(
        phi,
        game,
        prov,
        |m| match m.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            [Tag::R, Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
        |m| match m.tags.as_slice() {
            [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
    ))
}

/// Uncurrying `a⊸(b⊸c)` into `(a⊗b)⊸c`.
pub fn uncurry(phi: &Strategy) -> Result<Strategy, String> {
    let (a, cod) = limp_parts(&phi.game.shape)?;
    let (b, c) = match cod {
        Formula::Limp(b, c) => (b.as_ref().clone(), c.as_ref().clone()),
        _ => return Err(format!("uncurry expects a limp codomain, got {cod}")),
    };
    let new_shape = Formula::limp(Formula::tensor(a.clone(), b), c);
    let game = Game::new(new_shape)?;
    let prov = format!("uncurry({})", phi.provenance);
    Ok(conjugate(
        phi,
        game,
        prov,
        |m| match m.tags.as_slice() {
            [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
        |m| match m.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            [Tag::R, Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        },
    ))
}

// ---------------------------------------------------------------------------
// Composition.
// ---------------------------------------------------------------------------

pub const DEFAULT_FUEL: usize = 10_000;

/// Composition `phi ; psi` of `phi : a⊸b` and `psi : b⊸c` by interaction
/// replay with the middle game hidden.  The fuel bounds the number of hidden
/// moves per query; exhausting it makes the oracle silent.
pub fn compose(phi: &Strategy, psi: &Strategy) -> Result<Strategy, String> {
    compose_fuel(phi, psi, DEFAULT_FUEL)
}

pub fn compose_fuel(phi: &Strategy, psi: &Strategy, fuel: usize) -> Result<Strategy, String> {
    let (a, b) = limp_parts(&phi.game.shape)?;
    let (b2, c) = limp_parts(&psi.game.shape)?;
    if b != b2 {
        return Err(format!("compose: middle games differ: {b} vs {b2}"));
    }
    let game = Game::new(Formula::limp(a.clone(), c.clone()))?;
    let prov = format!("({};{})", phi.provenance, psi.provenance);
    let phi = phi.clone();
    let psi = psi.clone();
    Ok(Strategy::new(game, prov, move |s| {
        replay(&phi, &psi, s, fuel)
    }))
}

#[derive(Clone, Copy)]
enum Src {
    /// Mirrors a composite occurrence.
    Ext(usize),
    /// Mirrors a hidden occurrence on the other side.
    Mid(usize),
}

/// Resolves the composite justifier of an external response given on one
/// side, chasing justifier chains through hidden middle-game occurrences.
fn resolve_just(
    side_phi: bool,
    rj: Option<usize>,
    phi_pos: &Position,
    phi_src: &[Src],
    psi_pos: &Position,
    psi_src: &[Src],
) -> Option<Option<usize>> {
    let mut side = side_phi;
    let mut j = match rj {
        None => return Some(None),
        Some(k) => k,
    };
    loop {
        let src = if side { phi_src[j] } else { psi_src[j] };
        match src {
            Src::Ext(c) => return Some(Some(c)),
            Src::Mid(partner) => {
                side = !side;
                let pos = if side { phi_pos } else { psi_pos };
                match pos.entries[partner].1 {
                    None => return None,
                    Some(j2) => j = j2,
                }
            }
        }
    }
}

fn find_legal_just(g: &Game, pos: &Position, m: &Move) -> Option<usize> {
    (0..pos.len())
        .rev()
        .find(|&k| g.is_legal(&pos.extended(m.clone(), Some(k))))
}

fn replay(phi: &Strategy, psi: &Strategy, s: &Position, fuel: usize) -> Option<Response> {
    if s.len() % 2 == 0 {
        return None;
    }
    let mut phi_pos = Position::empty();
    let mut psi_pos = Position::empty();
    let mut phi_src: Vec<Src> = Vec::new();
    let mut psi_src: Vec<Src> = Vec::new();
    // Composite index -> (side is phi, index in that side's position).
    let mut comp_map: Vec<(bool, usize)> = Vec::new();
    let mut steps = 0usize;
    let mut i = 0usize;
    while i < s.len() {
        // Feed the Opponent move at composite index i.
        let (m, j) = &s.entries[i];
        let in_phi = match m.tags.first() {
            Some(Tag::L) => true,
            Some(Tag::R) => false,
            _ => return None,
        };
        if in_phi {
            let pj = match j {
                None => return None,
                Some(k) => {
                    let &(side, idx) = comp_map.get(*k)?;
                    if !side {
                        return None;
                    }
                    Some(idx)
                }
            };
            phi_pos.push(m.clone(), pj);
            if !phi.game.is_legal(&phi_pos) {
                return None;
            }
            phi_src.push(Src::Ext(i));
            comp_map.push((true, phi_pos.len() - 1));
        } else {
            let pj = match j {
                None => None,
                Some(k) => {
                    let &(side, idx) = comp_map.get(*k)?;
                    if side {
                        return None;
                    }
                    Some(idx)
                }
            };
            psi_pos.push(m.clone(), pj);
            if !psi.game.is_legal(&psi_pos) {
                return None;
            }
            psi_src.push(Src::Ext(i));
            comp_map.push((false, psi_pos.len() - 1));
        }
        // Run the hidden interaction until an external response emerges.
        let mut turn_phi = in_phi;
        let resp: Option<(bool, Move, Option<usize>)> = loop {
            steps += 1;
            if steps > fuel {
                return None;
            }
            if turn_phi {
                let (rm, rj) = match phi.respond(&phi_pos) {
                    None => break None,
                    Some(r) => r,
                };
                match rm.tags.first() {
                    Some(Tag::L) => break Some((true, rm, rj)),
                    Some(Tag::R) => {
                        // Hidden middle-game move: mirror into psi.
                        phi_pos.push(rm.clone(), rj);
                        let phi_idx = phi_pos.len() - 1;
                        let rest = mv(rm.tags[1..].to_vec());
                        let pm = Move::tagged(Tag::L, rest);
                        let pj = match rj {
                            None => Some(find_legal_just(&psi.game, &psi_pos, &pm)?),
                            Some(k) => match phi_src[k] {
                                Src::Mid(pk) => Some(pk),
                                Src::Ext(_) => return None,
                            },
                        };
                        psi_pos.push(pm, pj);
                        if !psi.game.is_legal(&psi_pos) {
                            return None;
                        }
                        phi_src.push(Src::Mid(psi_pos.len() - 1));
                        psi_src.push(Src::Mid(phi_idx));
                        turn_phi = false;
                    }
                    _ => return None,
                }
            } else {
                let (rm, rj) = match psi.respond(&psi_pos) {
                    None => break None,
                    Some(r) => r,
                };
                match rm.tags.first() {
                    Some(Tag::R) => break Some((false, rm, rj)),
                    Some(Tag::L) => {
                        psi_pos.push(rm.clone(), rj);
                        let rest = mv(rm.tags[1..].to_vec());
                        let pm = Move::tagged(Tag::R, rest);
                        let pj = match rj {
                            None => return None,
                            Some(k) => match psi_src[k] {
                                Src::Mid(pk) => Some(pk),
                                // Justified by an external c-initial: the
                                // mirrored b-move is initial on phi's side.
                                Src::Ext(_) => None,
                            },
                        };
                        phi_pos.push(pm, pj);
                        if !phi.game.is_legal(&phi_pos) {
                            return None;
                        }
                        psi_src.push(Src::Mid(phi_pos.len() - 1));
                        phi_src.push(Src::Mid(psi_pos.len() - 1));
                        turn_phi = true;
                    }
                    _ => return None,
                }
            }
        };
        // Translate the external response, verify against the replayed
        // position or return it.
        let out = match resp {
            None => None,
            Some((side, rm, rj)) => {
                let cj = resolve_just(side, rj, &phi_pos, &phi_src, &psi_pos, &psi_src)?;
                Some((side, rm, rj, cj))
            }
        };
        if i + 1 < s.len() {
            let (em, ej) = &s.entries[i + 1];
            match out {
                Some((side, rm, rj, cj)) if rm == *em && cj == *ej => {
                    if side {
                        phi_pos.push(rm, rj);
                        phi_src.push(Src::Ext(i + 1));
                        comp_map.push((true, phi_pos.len() - 1));
                    } else {
                        psi_pos.push(rm, rj);
                        psi_src.push(Src::Ext(i + 1));
                        comp_map.push((false, psi_pos.len() - 1));
                    }
                    i += 2;
                }
                _ => return None,
            }
        } else {
            return out.map(|(_, rm, _, cj)| (rm, cj));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Routing combinators: tensor, par, pairing, copairing.
// ---------------------------------------------------------------------------

/// Consults a component strategy through a projection of the composite
/// position and maps its response back.
fn route(
    comp_game: &Game,
    s: &Position,
    component: &Strategy,
    sel: impl FnMut(&Move) -> Option<Move>,
    back: impl Fn(&Move) -> Option<Move>,
) -> Option<Response> {
    let pr = project(s, sel);
    if *pr.kept.last()? != s.len() - 1 {
        return None;
    }
    if !component.game.is_legal(&pr.position) {
        return None;
    }
    let (rm, rj) = component.respond(&pr.position)?;
    let cm = back(&rm)?;
    let preferred = rj.map(|k| pr.kept[k]);
    attach_just(comp_game, s, cm, preferred)
}

/// Tensor of strategies: `phi : a⊸c` and `psi : b⊸d` give
/// `(a⊗b) ⊸ (c⊗d)`, routing every move to the component that owns it.
pub fn tensor(phi: &Strategy, psi: &Strategy) -> Result<Strategy, String> {
    let (a, c) = limp_parts(&phi.game.shape)?;
    let (b, d) = limp_parts(&psi.game.shape)?;
    let shape = Formula::limp(
        Formula::tensor(a.clone(), b.clone()),
        Formula::tensor(c.clone(), d.clone()),
    );
    let game = Game::new(shape)?;
    let prov = format!("({}⊗{})", phi.provenance, psi.provenance);
    let phi = phi.clone();
    let psi = psi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        let (m, _) = s.entries.last()?;
        let sel_phi = |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::L, Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::L, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        let sel_psi = |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::L, Tag::R, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        let back_left = |r: &Move| match r.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::L], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::L], &mv(rest.to_vec()))),
            _ => None,
        };
        let back_right = |r: &Move| match r.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        if sel_phi(m).is_some() {
            route(&g, s, &phi, sel_phi, back_left)
        } else if sel_psi(m).is_some() {
            route(&g, s, &psi, sel_psi, back_right)
        } else {
            None
        }
    }))
}

/// Probes `phi` at a lone codomain initial; `Some` is the (full) response.
fn probe_initial(phi: &Strategy, cod_init: &Move) -> Option<Response> {
    let p = Position::empty().extended(Move::tagged(Tag::R, cod_init.clone()), None);
    if !phi.game.is_legal(&p) {
        return None;
    }
    phi.respond(&p)
}

/// A pair of first moves witnessing that the raw par of two strategies is
/// not deterministic: both extend the same opening pair.
pub fn par_s2_witness(phi: &Strategy, psi: &Strategy) -> Option<(Position, Position)> {
    let (_, c) = limp_parts(&phi.game.shape).ok()?;
    let (_, d) = limp_parts(&psi.game.shape).ok()?;
    let cg = Game::new(c.clone()).ok()?;
    let dg = Game::new(d.clone()).ok()?;
    let c_inits: Vec<Move> = cg
        .candidate_moves(&Position::empty())
        .into_iter()
        .filter(|m| is_initial(c, m))
        .collect();
    let d_inits: Vec<Move> = dg
        .candidate_moves(&Position::empty())
        .into_iter()
        .filter(|m| is_initial(d, m))
        .collect();
    for ch in &c_inits {
        for dh in &d_inits {
            let r1 = probe_initial(phi, ch);
            let r2 = probe_initial(psi, dh);
            let strict1 = matches!(&r1, Some((m, _)) if matches!(m.tags.first(), Some(Tag::L)));
            let strict2 = matches!(&r2, Some((m, _)) if matches!(m.tags.first(), Some(Tag::L)));
            // A codomain response on either side makes the raw position set
            // branch at the opening pair.
            let pair = Move::tagged(Tag::R, pinit(ch.clone(), dh.clone()));
            let opened = Position::empty().extended(pair, None);
            if let (Some((m1, _)), Some((m2, _))) = (&r1, &r2) {
                if !strict1 || !strict2 {
                    let emb1 = if strict1 {
                        cat(vec![Tag::L, Tag::PL], &mv(m1.tags[1..].to_vec()))
                    } else {
                        cat(vec![Tag::R, Tag::PL], &mv(m1.tags[1..].to_vec()))
                    };
                    let emb2 = if strict2 {
                        cat(vec![Tag::L, Tag::PR], &mv(m2.tags[1..].to_vec()))
                    } else {
                        cat(vec![Tag::R, Tag::PR], &mv(m2.tags[1..].to_vec()))
                    };
                    return Some((
                        opened.extended(emb1, Some(0)),
                        opened.extended(emb2, Some(0)),
                    ));
                }
            }
        }
    }
    None
}

/// Par of strategies: `phi : a⊸c` and `psi : b⊸d` give `(a⅋b) ⊸ (c⅋d)`.
/// Requires both inputs strict; a raw-set determinism witness is reported
/// otherwise.
pub fn par(phi: &Strategy, psi: &Strategy) -> Result<Strategy, String> {
    let (a, c) = limp_parts(&phi.game.shape)?;
    let (b, d) = limp_parts(&psi.game.shape)?;
    if let Some((w1, w2)) = par_s2_witness(phi, psi) {
        return Err(format!(
            "par of non-strict strategies: raw position set branches at the \
             opening pair:\n{}\nversus\n{}",
            Game::new(Formula::limp(
                Formula::par(a.clone(), b.clone()),
                Formula::par(c.clone(), d.clone()),
            ))?
            .format_position(&w1),
            Game::new(Formula::limp(
                Formula::par(a.clone(), b.clone()),
                Formula::par(c.clone(), d.clone()),
            ))?
            .format_position(&w2),
        ));
    }
    let shape = Formula::limp(
        Formula::par(a.clone(), b.clone()),
        Formula::par(c.clone(), d.clone()),
    );
    let game = Game::new(shape)?;
    let prov = format!("({}⅋{})", phi.provenance, psi.provenance);
    let phi = phi.clone();
    let psi = psi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        let (m, _) = s.entries.last()?;
        // The opening codomain pair is answered by the domain pair combining
        // both strict responses.
        if let [Tag::R, Tag::PInit(ch, dh)] = m.tags.as_slice() {
            let (r1, _) = probe_initial(&phi, ch)?;
            let (r2, _) = probe_initial(&psi, dh)?;
            let ah = match r1.tags.as_slice() {
                [Tag::L, rest @ ..] => mv(rest.to_vec()),
                _ => return None,
            };
            let bh = match r2.tags.as_slice() {
                [Tag::L, rest @ ..] => mv(rest.to_vec()),
                _ => return None,
            };
            let dom_pair = Move::tagged(Tag::L, pinit(ah, bh));
            return attach_just(&g, s, dom_pair, Some(s.len() - 1));
        }
        // Everything else routes componentwise; pair occurrences project to
        // the component initials on both sides.
        let sel_phi = |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::L, Tag::PInit(x, _)] => Some(Move::tagged(Tag::L, (**x).clone())),
            [Tag::R, Tag::PInit(x, _)] => Some(Move::tagged(Tag::R, (**x).clone())),
            [Tag::L, Tag::PL, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::PL, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        let sel_psi = |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::L, Tag::PInit(_, y)] => Some(Move::tagged(Tag::L, (**y).clone())),
            [Tag::R, Tag::PInit(_, y)] => Some(Move::tagged(Tag::R, (**y).clone())),
            [Tag::L, Tag::PR, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, Tag::PR, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        let back_left = |r: &Move| match r.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::PL], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::PL], &mv(rest.to_vec()))),
            _ => None,
        };
        let back_right = |r: &Move| match r.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::PR], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::PR], &mv(rest.to_vec()))),
            _ => None,
        };
        match m.tags.as_slice() {
            [_, Tag::PL, ..] => route(&g, s, &phi, sel_phi, back_left),
            [_, Tag::PR, ..] => route(&g, s, &psi, sel_psi, back_right),
            _ => None,
        }
    }))
}

/// Pairing: `phi : c⊸a` and `psi : c⊸b` give `c ⊸ (a&b)`.  The Opponent's
/// first codomain move picks the component; the whole play then follows it.
pub fn pairing(phi: &Strategy, psi: &Strategy) -> Result<Strategy, String> {
    let (c1, a) = limp_parts(&phi.game.shape)?;
    let (c2, b) = limp_parts(&psi.game.shape)?;
    if c1 != c2 {
        return Err(format!("pairing: domains differ: {c1} vs {c2}"));
    }
    let shape = Formula::limp(c1.clone(), Formula::with(a.clone(), b.clone()));
    let game = Game::new(shape)?;
    let prov = format!("<{},{}>", phi.provenance, psi.provenance);
    let phi = phi.clone();
    let psi = psi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        // Determine the chosen component from the codomain moves seen so far.
        let mut left = None;
        for (m, _) in &s.entries {
            match m.tags.as_slice() {
                [Tag::R, Tag::L, ..] => left = Some(true),
                [Tag::R, Tag::R, ..] => left = Some(false),
                _ => {}
            }
            if left.is_some() {
                break;
            }
        }
        let left = left?;
        let side = if left { Tag::L } else { Tag::R };
        let side2 = side.clone();
        let sel = move |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, t, rest @ ..] if *t == side => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            _ => None,
        };
        let back = move |r: &Move| match r.tags.as_slice() {
            [Tag::L, rest @ ..] => Some(cat(vec![Tag::L], &mv(rest.to_vec()))),
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, side2.clone()], &mv(rest.to_vec()))),
            _ => None,
        };
        let component = if left { &phi } else { &psi };
        route(&g, s, component, sel, back)
    }))
}

/// Copairing: `phi : a⊸c` and `psi : b⊸c` give `(a⊕b) ⊸ c`.  Before the
/// Opponent commits to a component the play follows `phi`; the opening
/// domain pair combines both strategies' first domain moves.
pub fn copairing(phi: &Strategy, psi: &Strategy) -> Result<Strategy, String> {
    let (a, c1) = limp_parts(&phi.game.shape)?;
    let (b, c2) = limp_parts(&psi.game.shape)?;
    if c1 != c2 {
        return Err(format!("copairing: codomains differ: {c1} vs {c2}"));
    }
    let shape = Formula::limp(Formula::plus(a.clone(), b.clone()), c1.clone());
    let game = Game::new(shape)?;
    let prov = format!("[{},{}]", phi.provenance, psi.provenance);
    let phi = phi.clone();
    let psi = psi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        let mut left = None;
        for (m, _) in &s.entries {
            match m.tags.as_slice() {
                [Tag::L, Tag::PL, ..] => left = Some(true),
                [Tag::L, Tag::PR, ..] => left = Some(false),
                _ => {}
            }
            if left.is_some() {
                break;
            }
        }
        let use_left = left.unwrap_or(true);
        let component = if use_left { &phi } else { &psi };
        let other = if use_left { &psi } else { &phi };
        let sel = move |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
            [Tag::L, Tag::PInit(x, y)] => Some(Move::tagged(
                Tag::L,
                if use_left {
                    (**x).clone()
                } else {
                    (**y).clone()
                },
            )),
            [Tag::L, t, rest @ ..]
                if *t == if use_left { Tag::PL } else { Tag::PR } =>
            {
                Some(cat(vec![Tag::L], &mv(rest.to_vec())))
            }
            _ => None,
        };
        let pr = project(s, sel);
        if *pr.kept.last()? != s.len() - 1 {
            return None;
        }
        if !component.game.is_legal(&pr.position) {
            return None;
        }
        let (rm, rj) = component.respond(&pr.position)?;
        let has_pair = s
            .entries
            .iter()
            .any(|(m, _)| matches!(m.tags.as_slice(), [Tag::L, Tag::PInit(_, _)]));
        let cm = match rm.tags.as_slice() {
            [Tag::R, rest @ ..] => cat(vec![Tag::R], &mv(rest.to_vec())),
            [Tag::L, rest @ ..] => {
                let x = mv(rest.to_vec());
                if has_pair {
                    let side = if use_left { Tag::PL } else { Tag::PR };
                    cat(vec![Tag::L, side], &x)
                } else {
                    // Opening the domain: pair this first move with the other
                    // component's first domain move at the same play.
                    let other_sel = |mv_: &Move| match mv_.tags.as_slice() {
                        [Tag::R, rest @ ..] => Some(cat(vec![Tag::R], &mv(rest.to_vec()))),
                        _ => None,
                    };
                    let opr = project(s, other_sel);
                    if !other.game.is_legal(&opr.position) {
                        return None;
                    }
                    let (om, _) = other.respond(&opr.position)?;
                    let y = match om.tags.as_slice() {
                        [Tag::L, orest @ ..] => mv(orest.to_vec()),
                        _ => return None,
                    };
                    if use_left {
                        Move::tagged(Tag::L, pinit(x, y))
                    } else {
                        Move::tagged(Tag::L, pinit(y, x))
                    }
                }
            }
            _ => return None,
        };
        let preferred = rj.map(|k| pr.kept[k]);
        attach_just(&g, s, cm, preferred)
    }))
}

// ---------------------------------------------------------------------------
// Exponential combinators: promotion and why-not.
// ---------------------------------------------------------------------------

/// Promotion with caller-supplied session relabeling on the domain: the
/// codomain becomes `!` of `phi`'s codomain, thread j of which runs one
/// session of `phi`; `dom_session` names the session a composite domain move
/// belongs to, `dom_sel`/`dom_unsel` relabel between composite and
/// per-session domain moves (full moves, left tag included).
pub fn promote_sessions(
    phi: &Strategy,
    dom_session: impl Fn(&Move) -> Option<u64> + 'static,
    dom_sel: impl Fn(u64, &Move) -> Option<Move> + 'static,
    dom_unsel: impl Fn(u64, &Move) -> Option<Move> + 'static,
) -> Result<Strategy, String> {
    let (a, b) = limp_parts(&phi.game.shape)?;
    let shape = Formula::limp(a.clone(), Formula::ofc(b.clone()));
    let game = Game::new(shape)?;
    let prov = format!("({})!", phi.provenance);
    let phi = phi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        let (m, _) = s.entries.last()?;
        let j = match m.tags.as_slice() {
            [Tag::R, Tag::Bang(j), ..] => *j,
            [Tag::L, ..] => dom_session(m)?,
            _ => return None,
        };
        let sel = |mv_: &Move| match mv_.tags.as_slice() {
            [Tag::R, Tag::Bang(jj), rest @ ..] if *jj == j => {
                Some(cat(vec![Tag::R], &mv(rest.to_vec())))
            }
            [Tag::L, ..] => dom_sel(j, mv_),
            _ => None,
        };
        let back = |r: &Move| match r.tags.as_slice() {
            [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::Bang(j)], &mv(rest.to_vec()))),
            [Tag::L, ..] => dom_unsel(j, r),
            _ => None,
        };
        route(&g, s, &phi, sel, back)
    }))
}

/// Promotion `!a ⊸ b` to `!a ⊸ !b`: session j of the codomain uses the
/// domain threads cantor(j, k).
pub fn promotion(phi: &Strategy) -> Result<Strategy, String> {
    let (a, _) = limp_parts(&phi.game.shape)?;
    if !matches!(a, Formula::OfCourse(_)) {
        return Err(format!("promotion expects an ofc domain, got {a}"));
    }
    promote_sessions(
        phi,
        |m| match m.tags.as_slice() {
            [Tag::L, Tag::Bang(t), ..] => Some(uncantor(*t).0),
            _ => None,
        },
        |j, m| match m.tags.as_slice() {
            [Tag::L, Tag::Bang(t), rest @ ..] => {
                let (jj, k) = uncantor(*t);
                if jj == j {
                    Some(cat(vec![Tag::L, Tag::Bang(k)], &mv(rest.to_vec())))
                } else {
                    None
                }
            }
            _ => None,
        },
        |j, m| match m.tags.as_slice() {
            [Tag::L, Tag::Bang(k), rest @ ..] => Some(cat(
                vec![Tag::L, Tag::Bang(cantor(j, *k))],
                &mv(rest.to_vec()),
            )),
            _ => None,
        },
    )
}

/// Why-not `phi : a⊸b` to `?a ⊸ ?b`: thread i runs one copy of `phi`;
/// the opening function initial is answered pointwise through `phi`'s first
/// responses (which requires `phi` strict).
pub fn whynot(phi: &Strategy) -> Result<Strategy, String> {
    let (a, b) = limp_parts(&phi.game.shape)?;
    let shape = Formula::limp(Formula::wn(a.clone()), Formula::wn(b.clone()));
    let game = Game::new(shape)?;
    let prov = format!("?({})", phi.provenance);
    let phi = phi.clone();
    let g = game.clone();
    Ok(Strategy::new(game, prov, move |s| {
        let (m, _) = s.entries.last()?;
        match m.tags.as_slice() {
            [Tag::R, Tag::WnInit(beta)] => {
                let alpha = map_fsf(beta, |v| {
                    let (r, _) = probe_initial(&phi, v)?;
                    match r.tags.as_slice() {
                        [Tag::L, rest @ ..] => Some(mv(rest.to_vec())),
                        _ => None,
                    }
                })?;
                let dom_init = Move::tagged(Tag::L, mv(vec![Tag::WnInit(alpha)]));
                attach_just(&g, s, dom_init, Some(s.len() - 1))
            }
            [_, Tag::Wn(i), ..] => {
                let i = *i;
                let sel = move |mv_: &Move| match mv_.tags.as_slice() {
                    [Tag::R, Tag::WnInit(beta)] => Some(Move::tagged(Tag::R, beta.at(i).clone())),
                    [Tag::L, Tag::WnInit(alpha)] => Some(Move::tagged(Tag::L, alpha.at(i).clone())),
                    [Tag::R, Tag::Wn(k), rest @ ..] if *k == i => {
                        Some(cat(vec![Tag::R], &mv(rest.to_vec())))
                    }
                    [Tag::L, Tag::Wn(k), rest @ ..] if *k == i => {
                        Some(cat(vec![Tag::L], &mv(rest.to_vec())))
                    }
                    _ => None,
                };
                let back = move |r: &Move| match r.tags.as_slice() {
                    [Tag::R, rest @ ..] => Some(cat(vec![Tag::R, Tag::Wn(i)], &mv(rest.to_vec()))),
                    [Tag::L, rest @ ..] => Some(cat(vec![Tag::L, Tag::Wn(i)], &mv(rest.to_vec()))),
                    _ => None,
                };
                route(&g, s, &phi, sel, back)
            }
            _ => None,
        }
    }))
}

// ---------------------------------------------------------------------------
// Classical strategies.
// ---------------------------------------------------------------------------

/// Excluded middle `⊤ ⊸ (¬a ⅋ a)`: the curried copy-cat on `a`, read
/// through the iso between `a⊸a` and `¬a⅋a`.
pub fn lem(a: &Formula) -> Result<Strategy, String> {
    let cod = Formula::par(Formula::neg_linear(a.clone()), a.clone());
    let game = Game::new(Formula::limp(Formula::Top, cod))?;
    Ok(mirror(game, format!("lem({a})"), |cx| {
        if let [Tag::R, rest @ ..] = cx.m.tags.as_slice() {
            let inner = mv(rest.to_vec());
            if let Some((_, ah)) = un_pinit(&inner) {
                // Opening pair: interrogate the a inside ¬a.
                return Some(cat(vec![Tag::R, Tag::PL, Tag::L], &ah));
            }
            return match inner.tags.as_slice() {
                [Tag::PL, Tag::L, irest @ ..] => {
                    Some(cat(vec![Tag::R, Tag::PR], &mv(irest.to_vec())))
                }
                [Tag::PR, irest @ ..] => {
                    Some(cat(vec![Tag::R, Tag::PL, Tag::L], &mv(irest.to_vec())))
                }
                _ => None,
            };
        }
        None
    }))
}

/// Evaluation `(¬a ⊗ a) ⊸ ⊥`: the uncurried identity on ¬a.
pub fn ev(a: &Formula) -> Result<Strategy, String> {
    let dom = Formula::tensor(Formula::neg_linear(a.clone()), a.clone());
    let game = Game::new(Formula::limp(dom, Formula::Bot))?;
    Ok(mirror(game, format!("ev({a})"), |cx| {
        match cx.m.tags.as_slice() {
            // The codomain bot question: forward it to the bot inside ¬a.
            [Tag::R] => Some(mv(vec![Tag::L, Tag::L, Tag::R])),
            // Copy between the a inside ¬a and the a component.
            [Tag::L, Tag::L, Tag::L, rest @ ..] => {
                Some(cat(vec![Tag::L, Tag::R], &mv(rest.to_vec())))
            }
            [Tag::L, Tag::R, rest @ ..] => {
                Some(cat(vec![Tag::L, Tag::L, Tag::L], &mv(rest.to_vec())))
            }
            _ => None,
        }
    }))
}

/// Double negation elimination `¬¬a ⊸ a`, assembled from the classical
/// chain: pad with the tensor unit, tensor with lem, distribute, evaluate,
/// drop the bot unit.
pub fn dne(a: &Formula) -> Result<Strategy, String> {
    let na = Formula::neg_linear(a.clone());
    let nna = Formula::neg_linear(na.clone());
    // ¬¬a ⊸ ¬¬a⊗⊤
    let intro = tensor_unit_intro(&nna)?;
    // ¬¬a⊗⊤ ⊸ ¬¬a⊗(¬a⅋a)
    let step = tensor(&copycat(&nna)?, &lem(a)?)?;
    // ¬¬a⊗(¬a⅋a) ⊸ (¬¬a⊗¬a)⅋a
    let dist = omega(&nna, &na, a)?;
    // (¬¬a⊗¬a)⅋a ⊸ ⊥⅋a
    let evpar = par(&ev(&na)?, &copycat(a)?)?;
    // ⊥⅋a ⊸ a
    let unit = par_unit_elim_left(a)?;
    let s = compose(&intro, &step)?;
    let s = compose(&s, &dist)?;
    let s = compose(&s, &evpar)?;
    let s = compose(&s, &unit)?;
    Ok(s.named(format!("dne({a})")))
}

// ---------------------------------------------------------------------------
// Exploration, strictness, equivalence.
// ---------------------------------------------------------------------------

/// Walks the strategy's generated positions: every legal Opponent extension
/// (canonical-index discipline) of every reached even position, up to the
/// length bound.  The callback sees each odd position with the response.
pub fn explore(
    phi: &Strategy,
    max_len: usize,
    visit: &mut dyn FnMut(&Position, Option<&Response>),
) {
    fn walk(
        phi: &Strategy,
        s: &Position,
        max_len: usize,
        visit: &mut dyn FnMut(&Position, Option<&Response>),
    ) {
        if s.len() >= max_len {
            return;
        }
        for (m, j) in phi.game.legal_extensions(s) {
            let s1 = s.extended(m, j);
            let r = phi.respond(&s1);
            visit(&s1, r.as_ref());
            if let Some((rm, rj)) = r {
                let s2 = s1.extended(rm, rj);
                if phi.game.is_legal(&s2) {
                    walk(phi, &s2, max_len, visit);
                }
            }
        }
    }
    walk(phi, &Position::empty(), max_len, visit);
}

/// The finite view table of a strategy up to a position-length bound: each
/// reached P-view with the response played under it.
pub fn view_table(phi: &Strategy, max_len: usize) -> Vec<(Position, Response)> {
    let mut seen: HashSet<Position> = HashSet::new();
    let mut out = Vec::new();
    explore(phi, max_len, &mut |s, r| {
        if let Some(r) = r {
            let v = phi.game.p_view(s);
            let key = phi.game.canonicalize(&v);
            if seen.insert(key) {
                out.push((v, r.clone()));
            }
        }
    });
    out
}

/// A minimal-length witness that `phi` is not strict at the bound: an even
/// position whose last Opponent move is initial but whose response is not a
/// domain initial.  `None` means strict as far as explored.
pub fn strictness_witness(phi: &Strategy, max_len: usize) -> Option<Position> {
    let dom = match limp_parts(&phi.game.shape) {
        Ok((a, _)) => a.clone(),
        Err(_) => return None,
    };
    let mut best: Option<Position> = None;
    explore(phi, max_len, &mut |s, r| {
        let (_, j) = s.entries.last().unwrap();
        if j.is_none() {
            if let Some((rm, rj)) = r {
                let ok = match rm.tags.as_slice() {
                    [Tag::L, rest @ ..] => is_initial(&dom, &mv(rest.to_vec())),
                    _ => false,
                };
                if !ok {
                    let w = s.extended(rm.clone(), *rj);
                    if best.as_ref().map_or(true, |b| w.len() < b.len()) {
                        best = Some(w);
                    }
                }
            }
        }
    });
    best
}

/// Membership in the strict subcategory: strict at the bound, or a play-free
/// domain, or a codomain that is the bot game.
pub fn in_sharp(phi: &Strategy, max_len: usize) -> bool {
    if let Ok((dom, cod)) = limp_parts(&phi.game.shape) {
        if matches!(dom, Formula::Top | Formula::One) {
            return true;
        }
        if matches!(cod, Formula::Bot | Formula::Zero) {
            return true;
        }
    }
    strictness_witness(phi, max_len).is_none()
}

/// Bounded alternating bisimulation between two strategies on the same game:
/// every canonical Opponent extension on either side must be matched by one
/// of the other with identified responses, recursively, for `depth` rounds.
pub fn strategies_equivalent(phi: &Strategy, psi: &Strategy, depth: usize) -> bool {
    if phi.game.shape != psi.game.shape {
        return false;
    }
    let mut memo: HashMap<(Position, usize), bool> = HashMap::new();
    equiv_rec(
        phi,
        psi,
        &Position::empty(),
        &Position::empty(),
        depth,
        &mut memo,
    )
}

fn equiv_rec(
    phi: &Strategy,
    psi: &Strategy,
    s: &Position,
    t: &Position,
    depth: usize,
    memo: &mut HashMap<(Position, usize), bool>,
) -> bool {
    if depth == 0 {
        return true;
    }
    let key = (phi.game.canonicalize(s), depth);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let exts_s = phi.game.legal_extensions(s);
    let exts_t = psi.game.legal_extensions(t);
    let canon_t: Vec<(Position, Position)> = exts_t
        .iter()
        .map(|(n, k)| {
            let t2 = t.extended(n.clone(), *k);
            (psi.game.canonicalize(&t2), t2)
        })
        .collect();
    let mut result = true;
    'outer: for (m, j) in &exts_s {
        let s2 = s.extended(m.clone(), *j);
        let cs2 = phi.game.canonicalize(&s2);
        let t2 = match canon_t.iter().find(|(c, _)| *c == cs2) {
            Some((_, t2)) => t2.clone(),
            None => {
                result = false;
                break 'outer;
            }
        };
        match (phi.respond(&s2), psi.respond(&t2)) {
            (None, None) => {}
            (Some((rm, rj)), Some((tm, tj))) => {
                let s3 = s2.extended(rm, rj);
                let t3 = t2.extended(tm, tj);
                if !phi.game.is_legal(&s3)
                    || !psi.game.is_legal(&t3)
                    || phi.game.canonicalize(&s3) != psi.game.canonicalize(&t3)
                {
                    result = false;
                    break 'outer;
                }
                if !equiv_rec(phi, psi, &s3, &t3, depth - 1, memo) {
                    result = false;
                    break 'outer;
                }
            }
            _ => {
                result = false;
                break 'outer;
            }
        }
    }
    if result {
        // Coverage in the other direction: every extension of t is matched.
        for (c, _) in &canon_t {
            if !exts_s
                .iter()
                .any(|(m, j)| phi.game.canonicalize(&s.extended(m.clone(), *j)) == *c)
            {
                result = false;
                break;
            }
        }
    }
    memo.insert(key, result);
    result
}
