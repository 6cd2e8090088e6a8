//! Bounded homotopy search.
//!
//! Two phrases are first compared with the invariant battery. If nothing
//! separates them, a bidirectional breadth-first search over canonical keys
//! looks for a move path, allowing insertions up to a letter cap that is
//! raised one step at a time until `max_letters`.

use std::collections::HashSet;
use std::sync::Arc;

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::alphabet::{InvolutiveAlphabet, Sym};
use crate::error::{Error, Result};
use crate::invariants::{invariant_battery, Witness};
use crate::moves::{apply_code, find_code_moves_with, MoveApplication};
use crate::phrase::{desingularize, CanonicalKey, EtalePhrase, GaussCode, Nanophrase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest letter count of any intermediate nanophrase.
    pub max_letters: usize,
    /// Largest number of canonical keys visited.
    pub max_states: usize,
    /// Longest move path.
    pub max_depth: usize,
}

impl SearchBudget {
    pub const DEFAULT_MAX_STATES: usize = 2_000_000;
    pub const DEFAULT_MAX_DEPTH: usize = 64;

    /// Default budget for endpoints with at most `entries` flat entries:
    /// `entries / 2 + 4` letters.
    pub fn for_entries(entries: usize) -> Self {
        SearchBudget {
            max_letters: entries / 2 + 4,
            max_states: Self::DEFAULT_MAX_STATES,
            max_depth: Self::DEFAULT_MAX_DEPTH,
        }
    }

    /// Default budget for a pair of étale phrases.
    pub fn for_phrases(a: &EtalePhrase, b: &EtalePhrase) -> Self {
        let entries = desingularize(a)
            .letter_count()
            .max(desingularize(b).letter_count())
            * 2;
        Self::for_entries(entries)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::for_entries(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A move path from the first desingularization to a phrase isomorphic
    /// to the second. Each move is stated on the phrase produced by the
    /// previous one.
    Homotopic {
        path: Vec<MoveApplication>,
    },
    Distinct {
        witness: Witness,
    },
    /// Budget exhausted without a path.
    Unknown {
        explored: usize,
    },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Homotopic { .. } => "homotopic",
            Verdict::Distinct { .. } => "distinct",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    /// 0, 1 and 2 for homotopic, distinct and unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Homotopic { .. } => 0,
            Verdict::Distinct { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }

    pub fn is_homotopic(&self) -> bool {
        matches!(self, Verdict::Homotopic { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct { .. })
    }

    /// Report entries: `verdict`, then `length` and `move.<i>` (zero-padded),
    /// `invariant`, `left` and `right`, or `explored`.
    pub fn entries(&self, alphabet: &InvolutiveAlphabet) -> Vec<(String, String)> {
        let mut out = vec![("verdict".to_string(), self.kind().to_string())];
        match self {
            Verdict::Homotopic { path } => {
                out.push(("length".into(), path.len().to_string()));
                let width = path.len().saturating_sub(1).to_string().len();
                for (i, m) in path.iter().enumerate() {
                    out.push((format!("move.{i:0width$}"), m.to_text(alphabet)));
                }
            }
            Verdict::Distinct { witness } => {
                out.push(("invariant".into(), witness.invariant.clone()));
                out.push(("left".into(), witness.left.clone()));
                out.push(("right".into(), witness.right.clone()));
            }
            Verdict::Unknown { explored } => out.push(("explored".into(), explored.to_string())),
        }
        out
    }
}

/// Applies `path` to `start` move by move.
pub fn replay(start: &Nanophrase, path: &[MoveApplication]) -> Result<Nanophrase> {
    let mut cur = start.clone();
    for m in path {
        cur = crate::moves::apply_move(&cur, m)?;
    }
    Ok(cur)
}

type Packed = Box<[u16]>;

fn pack(key: &CanonicalKey) -> Packed {
    let code = key.code();
    let mut out = Vec::with_capacity(1 + code.seq.len() + code.proj.len());
    out.push(code.seq.len() as u16);
    out.extend_from_slice(&code.seq);
    out.extend(code.proj.iter().map(|s| s.0));
    out.into_boxed_slice()
}

fn unpack(p: &[u16]) -> GaussCode {
    let n = p[0] as usize;
    GaussCode::new_unchecked(
        p[1..=n].to_vec(),
        p[n + 1..].iter().map(|&x| Sym(x)).collect(),
    )
}

const ROOT: u32 = u32::MAX;

enum Outcome {
    Found(Vec<MoveApplication>),
    Disconnected,
    OutOfStates,
}

struct Search<'a> {
    alphabet: &'a InvolutiveAlphabet,
    /// Projections allowed for inserted letters.
    insert: Vec<Sym>,
    cap: usize,
    keys: IndexSet<Packed>,
    /// Parent index and side (false: start, true: goal) per key.
    parent: Vec<(u32, bool)>,
}

impl<'a> Search<'a> {
    fn neighbours(&self, code: &GaussCode) -> Vec<(MoveApplication, Packed)> {
        let mut seen = HashSet::new();
        find_code_moves_with(code, self.alphabet, self.cap, &self.insert)
            .into_iter()
            .filter_map(|m| {
                let (next, _) = apply_code(code, self.alphabet, &m).ok()?;
                let key = pack(&next.canonical());
                seen.insert(key.clone()).then_some((m, key))
            })
            .collect()
    }

    /// A move taking key `from` to key `to`.
    fn edge(&self, from: u32, to: u32) -> MoveApplication {
        let code = unpack(&self.keys[from as usize]);
        let target = &self.keys[to as usize];
        self.neighbours(&code)
            .into_iter()
            .find(|(_, k)| k == target)
            .map(|(m, _)| m)
            .expect("recorded edge")
    }

    /// Node ids from the side's root to `id`.
    fn chain(&self, mut id: u32) -> Vec<u32> {
        let mut out = vec![id];
        while self.parent[id as usize].0 != ROOT {
            id = self.parent[id as usize].0;
            out.push(id);
        }
        out.reverse();
        out
    }

    /// Path from the start root to the goal root through `from -> to`,
    /// where `from` is on the start side and `to` on the goal side.
    fn join(&self, from: u32, to: u32) -> Vec<MoveApplication> {
        let mut ids = self.chain(from);
        let mut back = self.chain(to);
        back.reverse();
        ids.extend(back);
        ids.windows(2).map(|w| self.edge(w[0], w[1])).collect()
    }

    fn run(
        &mut self,
        start: &Packed,
        goal: &Packed,
        budget: &SearchBudget,
        explored: &mut usize,
    ) -> Outcome {
        self.keys.clear();
        self.parent.clear();
        self.keys.insert(start.clone());
        self.parent.push((ROOT, false));
        self.keys.insert(goal.clone());
        self.parent.push((ROOT, true));
        let mut frontier = [vec![0u32], vec![1u32]];
        let mut depth = 0;
        loop {
            if frontier[0].is_empty() || frontier[1].is_empty() || depth >= budget.max_depth {
                return Outcome::Disconnected;
            }
            let s = usize::from(frontier[0].len() > frontier[1].len());
            let side = s == 1;
            let expanded: Vec<Vec<(MoveApplication, Packed)>> = frontier[s]
                .par_iter()
                .map(|&id| self.neighbours(&unpack(&self.keys[id as usize])))
                .collect();
            let mut next = Vec::new();
            for (&id, list) in frontier[s].iter().zip(expanded) {
                for (_, key) in list {
                    let (other, fresh) = self.keys.insert_full(key);
                    let other = other as u32;
                    if fresh {
                        self.parent.push((id, side));
                        next.push(other);
                        *explored += 1;
                        if *explored >= budget.max_states {
                            return Outcome::OutOfStates;
                        }
                    } else if self.parent[other as usize].1 != side {
                        let path = if side {
                            self.join(other, id)
                        } else {
                            self.join(id, other)
                        };
                        return Outcome::Found(path);
                    }
                }
            }
            frontier[s] = next;
            depth += 1;
        }
    }
}

/// Searches for a move path between two nanophrases over the same alphabet.
/// Returns `None` when the budget runs out; the second value counts visited
/// keys.
///
/// Inserted letters only project into the tau-closure of the projections
/// already present at either end: deleting every other letter maps a move
/// sequence to a move sequence, so this loses no path.
pub fn search_path(
    a: &Nanophrase,
    b: &Nanophrase,
    budget: &SearchBudget,
) -> (Option<Vec<MoveApplication>>, usize) {
    let start = pack(&a.canonical());
    let goal = pack(&b.canonical());
    if start == goal {
        return (Some(Vec::new()), 0);
    }
    let alphabet = a.alphabet();
    let mut insert: Vec<Sym> = a
        .code()
        .proj
        .iter()
        .chain(&b.code().proj)
        .flat_map(|&s| [s, alphabet.tau(s)])
        .collect();
    insert.sort();
    insert.dedup();
    let mut search = Search {
        alphabet,
        insert,
        cap: 0,
        keys: IndexSet::new(),
        parent: Vec::new(),
    };
    let mut explored = 0;
    let lowest = a.letter_count().max(b.letter_count());
    for cap in lowest..=budget.max_letters.max(lowest) {
        search.cap = cap;
        match search.run(&start, &goal, budget, &mut explored) {
            Outcome::Found(path) => return (Some(path), explored),
            Outcome::OutOfStates => return (None, explored),
            Outcome::Disconnected => {}
        }
    }
    (None, explored)
}

/// Decides homotopy of nanophrases within `budget`.
pub fn homotopic_nanophrases(
    a: &Nanophrase,
    b: &Nanophrase,
    budget: &SearchBudget,
) -> Result<Verdict> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.len() != b.len() {
        return Ok(Verdict::Distinct {
            witness: Witness {
                invariant: "k".into(),
                left: a.len().to_string(),
                right: b.len().to_string(),
            },
        });
    }
    if let Some(witness) = invariant_battery(a, b) {
        return Ok(Verdict::Distinct { witness });
    }
    match search_path(a, b, budget) {
        (Some(path), _) => Ok(Verdict::Homotopic { path }),
        (None, explored) => Ok(Verdict::Unknown { explored }),
    }
}

/// Decides homotopy of étale phrases within `budget`, working on their
/// desingularizations. Paths start from `desingularize(a)`.
pub fn homotopic_bounded(
    a: &EtalePhrase,
    b: &EtalePhrase,
    budget: &SearchBudget,
) -> Result<Verdict> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    homotopic_nanophrases(&desingularize(a), &desingularize(b), budget)
}

/// [`homotopic_bounded`] against the empty phrase with the same number of words.
pub fn contract_bounded(p: &EtalePhrase, budget: &SearchBudget) -> Result<Verdict> {
    let empty = Nanophrase::empty(p.alphabet().clone(), p.len());
    homotopic_nanophrases(&desingularize(p), &empty, budget)
}

/// The empty étale phrase with `k` words over `alphabet`.
pub fn empty_phrase(alphabet: Arc<InvolutiveAlphabet>, k: usize) -> EtalePhrase {
    Nanophrase::empty(alphabet, k).to_etale()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phrase(alpha: &Arc<InvolutiveAlphabet>, text: &str) -> EtalePhrase {
        let words: Vec<Vec<&str>> = text
            .split('|')
            .map(|w| w.split_whitespace().collect())
            .collect();
        EtalePhrase::on_alphabet(alpha.clone(), &words).unwrap()
    }

    fn check_path(a: &EtalePhrase, b: &EtalePhrase, v: &Verdict) {
        let Verdict::Homotopic { path } = v else {
            panic!("expected a path, got {v:?}");
        };
        let end = replay(&desingularize(a), path).unwrap();
        assert_eq!(end.canonical(), desingularize(b).canonical());
    }

    #[test]
    fn contracts_simple_words() {
        let alpha = Arc::new(InvolutiveAlphabet::new(&["a", "b"], &[]).unwrap());
        for w in ["a a b b", "a b b a", "a a"] {
            let p = phrase(&alpha, w);
            let budget = SearchBudget::for_phrases(&p, &p);
            let v = contract_bounded(&p, &budget).unwrap();
            check_path(&p, &empty_phrase(alpha.clone(), 1), &v);
        }
    }

    #[test]
    fn abab_with_swap_contracts() {
        let a0 = Arc::new(InvolutiveAlphabet::alpha0());
        let p = phrase(&a0, "a b a b");
        let v = contract_bounded(&p, &SearchBudget::for_phrases(&p, &p)).unwrap();
        check_path(&p, &empty_phrase(a0, 1), &v);
    }

    #[test]
    fn separated_components_are_distinct() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let v = contract_bounded(&phrase(&one, "a | a"), &SearchBudget::default()).unwrap();
        match v {
            Verdict::Distinct { witness } => assert_eq!(witness.invariant, "w"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_contracts_trivially() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let v = contract_bounded(&phrase(&one, "|"), &SearchBudget::default()).unwrap();
        assert_eq!(v, Verdict::Homotopic { path: vec![] });
    }

    #[test]
    fn different_lengths() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let v = homotopic_bounded(
            &phrase(&one, "|"),
            &phrase(&one, ""),
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(v.is_distinct());
    }

    #[test]
    fn alphabet_mismatch() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let a0 = Arc::new(InvolutiveAlphabet::alpha0());
        let r = homotopic_bounded(
            &phrase(&one, ""),
            &phrase(&a0, ""),
            &SearchBudget::default(),
        );
        assert_eq!(r, Err(Error::AlphabetMismatch));
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let p = phrase(&one, "a a a");
        let budget = SearchBudget {
            max_letters: 3,
            max_states: 3,
            max_depth: 64,
        };
        assert!(matches!(
            contract_bounded(&p, &budget).unwrap(),
            Verdict::Unknown { .. }
        ));
    }
}
