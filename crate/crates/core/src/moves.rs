//! The three homotopy moves and their inverses, acting on flat positions.
//!
//! * move 1: `xAAy -> xy`
//! * move 2: `xAByBAz -> xyz` when `|B| = tau(|A|)`
//! * move 3: `xAByACzBCt -> xBAyCAzCBt` when `|A| = |B| = |C|`
//!
//! `x, y, z, t` may contain component separators; the adjacent pairs may not.

use std::fmt;

use crate::alphabet::{InvolutiveAlphabet, Sym};
use crate::error::{Error, Result};
use crate::phrase::{GaussCode, Nanophrase, SEP};
use crate::search::SearchBudget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    M1Del,
    M1Ins,
    M2Del,
    M2Ins,
    M3Fwd,
    M3Bwd,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::M1Del => "M1_del",
            MoveKind::M1Ins => "M1_ins",
            MoveKind::M2Del => "M2_del",
            MoveKind::M2Ins => "M2_ins",
            MoveKind::M3Fwd => "M3_fwd",
            MoveKind::M3Bwd => "M3_bwd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "M1_del" => MoveKind::M1Del,
            "M1_ins" => MoveKind::M1Ins,
            "M2_del" => MoveKind::M2Del,
            "M2_ins" => MoveKind::M2Ins,
            "M3_fwd" => MoveKind::M3Fwd,
            "M3_bwd" => MoveKind::M3Bwd,
            _ => return None,
        })
    }

    pub fn is_insertion(self) -> bool {
        matches!(self, MoveKind::M1Ins | MoveKind::M2Ins)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One concrete move on a nanophrase.
///
/// `positions` are flat positions (separators included):
/// * `M1_del`: the two adjacent occurrences `[i, i + 1]`;
/// * `M2_del`: `[p, p + 1, r, r + 1]` for the pairs `AB` and `BA`;
/// * `M3_fwd` / `M3_bwd`: the starts and ends of the three swapped pairs;
/// * `M1_ins`: the insertion slot `[s]`;
/// * `M2_ins`: the slots `[s1, s2]`, `s1 <= s2`, of `AB` and `BA`.
///
/// Insertions carry the projection of the new letter `A`
/// (for `M2_ins`, `|B| = tau(|A|)`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveApplication {
    pub kind: MoveKind,
    pub positions: Vec<usize>,
    pub projection: Option<Sym>,
}

impl MoveApplication {
    fn new(kind: MoveKind, positions: Vec<usize>) -> Self {
        MoveApplication {
            kind,
            positions,
            projection: None,
        }
    }

    fn insertion(kind: MoveKind, positions: Vec<usize>, s: Sym) -> Self {
        MoveApplication {
            kind,
            positions,
            projection: Some(s),
        }
    }

    /// `kind @ p1,p2,.. [proj]`
    pub fn to_text(&self, alphabet: &InvolutiveAlphabet) -> String {
        let pos: Vec<String> = self.positions.iter().map(usize::to_string).collect();
        match self.projection {
            Some(s) => format!("{} @ {} [{}]", self.kind, pos.join(","), alphabet.name(s)),
            None => format!("{} @ {}", self.kind, pos.join(",")),
        }
    }

    /// Inverse of `text` rendering.
    pub fn parse(text: &str, alphabet: &InvolutiveAlphabet) -> Result<Self> {
        let bad = || Error::StaleMove(format!("cannot parse move `{text}`"));
        let (kind, rest) = text.split_once('@').ok_or_else(bad)?;
        let kind = MoveKind::parse(kind.trim()).ok_or_else(bad)?;
        let (pos, proj) = match rest.split_once('[') {
            Some((p, s)) => {
                let s = s.trim().strip_suffix(']').ok_or_else(bad)?;
                (p, Some(alphabet.lookup(s.trim())?))
            }
            None => (rest, None),
        };
        let positions = pos
            .trim()
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveApplication {
            kind,
            positions,
            projection: proj,
        })
    }
}

fn letter_at(seq: &[u16], i: usize) -> Option<u16> {
    seq.get(i).copied().filter(|&x| x != SEP)
}

/// All applicable moves on `code`, sorted by `(kind, positions, projection)`.
/// Insertions are only listed while the result stays within `max_letters`.
pub fn find_code_moves(
    code: &GaussCode,
    alphabet: &InvolutiveAlphabet,
    max_letters: usize,
) -> Vec<MoveApplication> {
    let all: Vec<Sym> = alphabet.symbols().collect();
    find_code_moves_with(code, alphabet, max_letters, &all)
}

/// As [`find_code_moves`], but inserted letters only project to `insert`.
pub fn find_code_moves_with(
    code: &GaussCode,
    alphabet: &InvolutiveAlphabet,
    max_letters: usize,
    insert: &[Sym],
) -> Vec<MoveApplication> {
    let seq = &code.seq;
    let len = seq.len();
    let pos = code.positions();
    let other = |l: u16, i: usize| {
        let p = pos[l as usize - 1];
        if p[0] == i {
            p[1]
        } else {
            p[0]
        }
    };
    let n = code.letter_count();
    let mut out = Vec::new();

    for i in 0..len.saturating_sub(1) {
        if let (Some(a), Some(b)) = (letter_at(seq, i), letter_at(seq, i + 1)) {
            if a == b {
                out.push(MoveApplication::new(MoveKind::M1Del, vec![i, i + 1]));
            }
        }
    }

    if n < max_letters {
        for s in 0..=len {
            for &sym in insert {
                out.push(MoveApplication::insertion(MoveKind::M1Ins, vec![s], sym));
            }
        }
    }

    for p in 0..len.saturating_sub(1) {
        let (Some(a), Some(b)) = (letter_at(seq, p), letter_at(seq, p + 1)) else {
            continue;
        };
        if a == b || code.projection(b) != alphabet.tau(code.projection(a)) {
            continue;
        }
        let r = other(b, p + 1);
        if r > p + 1 && r + 1 < len && seq[r + 1] == a {
            out.push(MoveApplication::new(
                MoveKind::M2Del,
                vec![p, p + 1, r, r + 1],
            ));
        }
    }

    if n + 2 <= max_letters {
        for s1 in 0..=len {
            for s2 in s1..=len {
                for &sym in insert {
                    out.push(MoveApplication::insertion(
                        MoveKind::M2Ins,
                        vec![s1, s2],
                        sym,
                    ));
                }
            }
        }
    }

    for p in 0..len.saturating_sub(1) {
        let (Some(a), Some(b)) = (letter_at(seq, p), letter_at(seq, p + 1)) else {
            continue;
        };
        let s = code.projection(a);
        if a == b || code.projection(b) != s {
            continue;
        }
        // forward: A B .. A C .. B C
        let q = other(a, p);
        if q > p + 1 {
            if let Some(c) = letter_at(seq, q + 1) {
                if c != a && c != b && code.projection(c) == s {
                    let r = other(b, p + 1);
                    if r > q + 1 && letter_at(seq, r + 1) == Some(c) {
                        out.push(MoveApplication::new(
                            MoveKind::M3Fwd,
                            vec![p, p + 1, q, q + 1, r, r + 1],
                        ));
                    }
                }
            }
        }
        // backward: B A .. C A .. C B, here with b = seq[p], a = seq[p + 1]
        let (xb, ya) = (a, b);
        let q1 = other(ya, p + 1);
        if q1 > p + 2 {
            let q = q1 - 1;
            if let Some(c) = letter_at(seq, q) {
                if c != xb && c != ya && code.projection(c) == s {
                    let r = other(c, q);
                    if r > q + 1 && letter_at(seq, r + 1) == Some(xb) {
                        out.push(MoveApplication::new(
                            MoveKind::M3Bwd,
                            vec![p, p + 1, q, q + 1, r, r + 1],
                        ));
                    }
                }
            }
        }
    }

    out.sort();
    out
}

/// All applicable moves on a nanophrase; see [`find_code_moves`].
pub fn find_moves(n: &Nanophrase, budget: &SearchBudget) -> Vec<MoveApplication> {
    find_code_moves(n.code(), n.alphabet(), budget.max_letters)
}

fn stale(m: &MoveApplication, why: &str) -> Error {
    Error::StaleMove(format!("{} {:?}: {why}", m.kind, m.positions))
}

/// Checks that `m` matches its pattern in `code`.
pub fn validate(
    code: &GaussCode,
    alphabet: &InvolutiveAlphabet,
    m: &MoveApplication,
) -> Result<()> {
    let seq = &code.seq;
    let want = match m.kind {
        MoveKind::M1Del => 2,
        MoveKind::M1Ins => 1,
        MoveKind::M2Del => 4,
        MoveKind::M2Ins => 2,
        MoveKind::M3Fwd | MoveKind::M3Bwd => 6,
    };
    if m.positions.len() != want {
        return Err(stale(m, "wrong number of positions"));
    }
    if m.kind.is_insertion() != m.projection.is_some() {
        return Err(stale(m, "projection must be given exactly for insertions"));
    }
    if let Some(s) = m.projection {
        if s.index() >= alphabet.len() {
            return Err(stale(m, "projection outside the alphabet"));
        }
    }
    let ps = &m.positions;
    let at = |i: usize| letter_at(seq, i).ok_or_else(|| stale(m, "position is not a letter"));
    let adjacent = |i: usize| ps[i] + 1 == ps[i + 1];
    match m.kind {
        MoveKind::M1Del => {
            if !adjacent(0) || at(ps[0])? != at(ps[1])? {
                return Err(stale(m, "no adjacent AA"));
            }
        }
        MoveKind::M1Ins => {
            if ps[0] > seq.len() {
                return Err(stale(m, "slot out of range"));
            }
        }
        MoveKind::M2Ins => {
            if ps[0] > ps[1] || ps[1] > seq.len() {
                return Err(stale(m, "slots out of range"));
            }
        }
        MoveKind::M2Del => {
            if !adjacent(0) || !adjacent(2) || ps[1] >= ps[2] {
                return Err(stale(m, "pairs not adjacent and ordered"));
            }
            let (a, b) = (at(ps[0])?, at(ps[1])?);
            if a == b || at(ps[2])? != b || at(ps[3])? != a {
                return Err(stale(m, "no AB..BA pattern"));
            }
            if code.projection(b) != alphabet.tau(code.projection(a)) {
                return Err(stale(m, "|B| != tau(|A|)"));
            }
        }
        MoveKind::M3Fwd | MoveKind::M3Bwd => {
            if !adjacent(0) || !adjacent(2) || !adjacent(4) || ps[1] >= ps[2] || ps[3] >= ps[4] {
                return Err(stale(m, "pairs not adjacent and ordered"));
            }
            let l: Vec<u16> = ps.iter().map(|&i| at(i)).collect::<Result<_>>()?;
            let (a, b, c, ok) = if m.kind == MoveKind::M3Fwd {
                // A B .. A C .. B C
                (
                    l[0],
                    l[1],
                    l[3],
                    l[2] == l[0] && l[4] == l[1] && l[5] == l[3],
                )
            } else {
                // B A .. C A .. C B
                (
                    l[1],
                    l[0],
                    l[2],
                    l[3] == l[1] && l[4] == l[2] && l[5] == l[0],
                )
            };
            if !ok || a == b || b == c || a == c {
                return Err(stale(m, "no move-3 pattern"));
            }
            let s = code.projection(a);
            if code.projection(b) != s || code.projection(c) != s {
                return Err(stale(m, "projections differ"));
            }
        }
    }
    Ok(())
}

/// Letter bookkeeping of one applied move.
pub(crate) enum Change {
    Removed(Vec<u16>),
    Added(usize),
    Same,
}

/// Applies `m` to `code`. Deleted letters are removed and the rest renumbered
/// keeping their order; inserted letters get the next free numbers.
pub(crate) fn apply_code(
    code: &GaussCode,
    alphabet: &InvolutiveAlphabet,
    m: &MoveApplication,
) -> Result<(GaussCode, Change)> {
    validate(code, alphabet, m)?;
    let seq = &code.seq;
    let ps = &m.positions;
    let n = code.letter_count() as u16;
    match m.kind {
        MoveKind::M1Del | MoveKind::M2Del => {
            let mut removed: Vec<u16> = ps.iter().map(|&i| seq[i]).collect();
            removed.sort_unstable();
            removed.dedup();
            let new_seq = seq
                .iter()
                .filter(|x| !removed.contains(x))
                .map(|&x| {
                    if x == SEP {
                        SEP
                    } else {
                        x - removed.iter().filter(|&&r| r < x).count() as u16
                    }
                })
                .collect();
            let proj = code
                .proj
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(&(*i as u16 + 1)))
                .map(|(_, &s)| s)
                .collect();
            Ok((
                GaussCode::new_unchecked(new_seq, proj),
                Change::Removed(removed),
            ))
        }
        MoveKind::M1Ins => {
            let s = m.projection.expect("validated");
            let a = n + 1;
            let mut new_seq = seq.clone();
            new_seq.splice(ps[0]..ps[0], [a, a]);
            let mut proj = code.proj.clone();
            proj.push(s);
            Ok((GaussCode::new_unchecked(new_seq, proj), Change::Added(1)))
        }
        MoveKind::M2Ins => {
            let s = m.projection.expect("validated");
            let (a, b) = (n + 1, n + 2);
            let mut new_seq = seq.clone();
            new_seq.splice(ps[1]..ps[1], [b, a]);
            new_seq.splice(ps[0]..ps[0], [a, b]);
            let mut proj = code.proj.clone();
            proj.push(s);
            proj.push(alphabet.tau(s));
            Ok((GaussCode::new_unchecked(new_seq, proj), Change::Added(2)))
        }
        MoveKind::M3Fwd | MoveKind::M3Bwd => {
            let mut new_seq = seq.clone();
            for pair in ps.chunks(2) {
                new_seq.swap(pair[0], pair[1]);
            }
            Ok((
                GaussCode::new_unchecked(new_seq, code.proj.clone()),
                Change::Same,
            ))
        }
    }
}

/// Applies `m` to a bare code; letters are renumbered as in [`apply_move`].
pub fn apply_to_code(
    code: &GaussCode,
    alphabet: &InvolutiveAlphabet,
    m: &MoveApplication,
) -> Result<GaussCode> {
    Ok(apply_code(code, alphabet, m)?.0)
}

/// The move undoing `m`, expressed on the phrase `m` produces from `source`.
pub fn inverse_move(source: &GaussCode, m: &MoveApplication) -> MoveApplication {
    let ps = &m.positions;
    match m.kind {
        MoveKind::M1Del => MoveApplication::insertion(
            MoveKind::M1Ins,
            vec![ps[0]],
            source.projection(source.seq[ps[0]]),
        ),
        MoveKind::M1Ins => MoveApplication::new(MoveKind::M1Del, vec![ps[0], ps[0] + 1]),
        MoveKind::M2Del => MoveApplication::insertion(
            MoveKind::M2Ins,
            vec![ps[0], ps[2] - 2],
            source.projection(source.seq[ps[0]]),
        ),
        MoveKind::M2Ins => MoveApplication::new(
            MoveKind::M2Del,
            vec![ps[0], ps[0] + 1, ps[1] + 2, ps[1] + 3],
        ),
        MoveKind::M3Fwd => MoveApplication::new(MoveKind::M3Bwd, ps.clone()),
        MoveKind::M3Bwd => MoveApplication::new(MoveKind::M3Fwd, ps.clone()),
    }
}

fn fresh_name(names: &[String], start: usize) -> (String, usize) {
    let mut i = start;
    loop {
        let candidate = format!("X{i}");
        if !names.contains(&candidate) {
            return (candidate, i + 1);
        }
        i += 1;
    }
}

/// Applies `m` to `n`, keeping the names of surviving letters. Inserted
/// letters are named `X<i>` with the smallest unused `i`.
pub fn apply_move(n: &Nanophrase, m: &MoveApplication) -> Result<Nanophrase> {
    let (code, change) = apply_code(n.code(), n.alphabet(), m)?;
    let mut names: Vec<String> = n.names().to_vec();
    match change {
        Change::Removed(removed) => {
            names = names
                .into_iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(&(*i as u16 + 1)))
                .map(|(_, s)| s)
                .collect();
        }
        Change::Added(count) => {
            let mut next = 1;
            for _ in 0..count {
                let (name, after) = fresh_name(&names, next);
                names.push(name);
                next = after;
            }
        }
        Change::Same => {}
    }
    Nanophrase::from_code(n.alphabet().clone(), code, names)
}
