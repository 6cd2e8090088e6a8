//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use nanophrase::moves::MoveKind;
use nanophrase::phrase::AlphaAlphabet;
use nanophrase::{
    find_moves, EtalePhrase, InvolutiveAlphabet, MoveApplication, Nanophrase, SearchBudget,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Random alphabet with `1..=max` symbols and a random set of swapped pairs.
pub fn alphabet(rng: &mut TestRng, max: usize) -> Arc<InvolutiveAlphabet> {
    let n = rng.gen_range(1..=max);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        if rng.gen_bool(0.5) {
            pairs.push((NAMES[order[i]], NAMES[order[i + 1]]));
            i += 2;
        } else {
            i += 1;
        }
    }
    Arc::new(InvolutiveAlphabet::new(&NAMES[..n], &pairs).unwrap())
}

fn split_words(rng: &mut TestRng, flat: Vec<String>, k: usize) -> Vec<Vec<String>> {
    let mut cuts: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(0..=flat.len())).collect();
    cuts.sort();
    cuts.push(flat.len());
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for c in cuts {
        out.push(flat[start..c].to_vec());
        start = c;
    }
    out
}

fn letter_table(
    rng: &mut TestRng,
    alpha: &InvolutiveAlphabet,
    n: usize,
) -> (Vec<String>, AlphaAlphabet) {
    let names: Vec<String> = (1..=n).map(|i| format!("L{i}")).collect();
    let table: Vec<(String, String)> = names
        .iter()
        .map(|l| {
            let s = nanophrase::Sym(rng.gen_range(0..alpha.len()) as u16);
            (l.clone(), alpha.name(s).to_string())
        })
        .collect();
    (names, AlphaAlphabet::new(alpha, &table).unwrap())
}

/// Random étale phrase with `1..=max_k` words and at most `max_entries` entries.
pub fn etale(
    rng: &mut TestRng,
    alpha: &Arc<InvolutiveAlphabet>,
    max_k: usize,
    max_entries: usize,
) -> EtalePhrase {
    let k = rng.gen_range(1..=max_k);
    let entries = rng.gen_range(0..=max_entries);
    let n = rng.gen_range(1..=4);
    let (names, letters) = letter_table(rng, alpha, n);
    let flat: Vec<String> = (0..entries)
        .map(|_| names[rng.gen_range(0..n)].clone())
        .collect();
    EtalePhrase::new(alpha.clone(), letters, &split_words(rng, flat, k)).unwrap()
}

/// Random nanophrase with `0..=max_letters` letters and `1..=max_k` components.
pub fn nanophrase(
    rng: &mut TestRng,
    alpha: &Arc<InvolutiveAlphabet>,
    max_k: usize,
    max_letters: usize,
) -> Nanophrase {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(0..=max_letters);
    let (names, letters) = letter_table(rng, alpha, n);
    let mut flat: Vec<String> = names.iter().flat_map(|l| [l.clone(), l.clone()]).collect();
    flat.shuffle(rng);
    Nanophrase::new(alpha.clone(), letters, &split_words(rng, flat, k)).unwrap()
}

/// A random applicable move, choosing the kind uniformly among those
/// available so that rarer moves are well represented. Insertions may add
/// up to two letters.
pub fn random_move(rng: &mut TestRng, n: &Nanophrase) -> MoveApplication {
    let budget = SearchBudget {
        max_letters: n.letter_count() + 2,
        ..SearchBudget::default()
    };
    let moves = find_moves(n, &budget);
    let mut kinds: Vec<MoveKind> = moves.iter().map(|m| m.kind).collect();
    kinds.dedup();
    let kind = *kinds.choose(rng).expect("insertions are always available");
    let of_kind: Vec<&MoveApplication> = moves.iter().filter(|m| m.kind == kind).collect();
    (*of_kind.choose(rng).unwrap()).clone()
}

/// A nanophrase reached from a random one by a few random moves, so that
/// deletions and third moves show up often.
pub fn stirred(
    rng: &mut TestRng,
    alpha: &Arc<InvolutiveAlphabet>,
    max_k: usize,
    max_letters: usize,
) -> Nanophrase {
    let mut n = nanophrase(rng, alpha, max_k, max_letters);
    for _ in 0..rng.gen_range(0..4) {
        let m = random_move(rng, &n);
        n = nanophrase::apply_move(&n, &m).unwrap();
    }
    n
}

/// Phrase from `a b | c` notation over base symbols.
pub fn phrase(alpha: &Arc<InvolutiveAlphabet>, text: &str) -> EtalePhrase {
    let words: Vec<Vec<&str>> = text
        .split('|')
        .map(|w| w.split_whitespace().collect())
        .collect();
    EtalePhrase::on_alphabet(alpha.clone(), &words).unwrap()
}

pub mod cli {
    use std::path::{Path, PathBuf};
    use std::process::Command;

    pub fn golden_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
    }

    pub struct Output {
        pub code: i32,
        pub stdout: String,
        pub stderr: String,
    }

    pub fn run(args: &[&str]) -> Output {
        let out = Command::new(env!("CARGO_BIN_EXE_nanophrase"))
            .args(args)
            .current_dir(golden_dir())
            .output()
            .expect("binary runs");
        Output {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8(out.stdout).unwrap(),
            stderr: String::from_utf8(out.stderr).unwrap(),
        }
    }

    /// `(left, right, expected exit code, extra flags)` from `homotopic.txt`.
    pub fn homotopic_cases() -> Vec<(String, String, i32, Vec<String>)> {
        let text = std::fs::read_to_string(golden_dir().join("homotopic.txt")).unwrap();
        text.lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| {
                let f: Vec<&str> = l.split_whitespace().collect();
                (
                    format!("words/{}.np", f[0]),
                    format!("words/{}.np", f[1]),
                    f[2].parse().unwrap(),
                    f[3..].iter().map(|s| s.to_string()).collect(),
                )
            })
            .collect()
    }

    /// Canonical documents under `docs/`, sorted.
    pub fn documents() -> Vec<String> {
        let mut out: Vec<String> = std::fs::read_dir(golden_dir().join("docs"))
            .unwrap()
            .map(|e| format!("docs/{}", e.unwrap().file_name().to_string_lossy()))
            .filter(|n| n.ends_with(".np"))
            .collect();
        out.sort();
        out
    }
}
