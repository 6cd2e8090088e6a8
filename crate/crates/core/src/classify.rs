//! Normal forms of multiplicity-one-free phrases with at most three entries,
//! the word forms of length at most four, and separation certificates.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::alphabet::{InvolutiveAlphabet, Sym};
use crate::error::{Error, Result};
use crate::invariants::{invariant_battery, named_invariant, Witness};
use crate::moves::MoveApplication;
use crate::phrase::{desingularize, EtalePhrase, Nanophrase};
use crate::search::{homotopic_bounded, replay, SearchBudget, Verdict};

/// Shape of a normal form. Component indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Empty,
    /// `a` in components `l1` and `l2`.
    P11 {
        a: Sym,
        l1: usize,
        l2: usize,
    },
    /// `a a a` in component `l`; needs `tau(a) != a`.
    P3 {
        a: Sym,
        l: usize,
    },
    /// `a a` in `l1`, `a` in `l2`.
    P21 {
        a: Sym,
        l1: usize,
        l2: usize,
    },
    /// `a` in `l1`, `a a` in `l2`.
    P12 {
        a: Sym,
        l1: usize,
        l2: usize,
    },
    P111 {
        a: Sym,
        l1: usize,
        l2: usize,
        l3: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub k: usize,
    pub shape: Shape,
}

impl NormalForm {
    /// Checks index ranges and the `P3` condition.
    pub fn new(k: usize, shape: Shape, alphabet: &InvolutiveAlphabet) -> Result<Self> {
        let nf = NormalForm { k, shape };
        nf.check(alphabet)?;
        Ok(nf)
    }

    pub fn empty(k: usize) -> Self {
        NormalForm {
            k,
            shape: Shape::Empty,
        }
    }

    fn check(&self, alphabet: &InvolutiveAlphabet) -> Result<()> {
        let bad = |why: &str| {
            Err(Error::InvalidNormalForm(format!(
                "{}: {why}",
                self.to_text(alphabet)
            )))
        };
        if self.k == 0 {
            return bad("k must be positive");
        }
        if let Some(a) = self.symbol() {
            if a.index() >= alphabet.len() {
                return Err(Error::InvalidNormalForm(format!(
                    "symbol #{} outside the alphabet",
                    a.0
                )));
            }
        }
        let idx = self.indices();
        if idx.iter().any(|&l| l == 0 || l > self.k) {
            return bad("component index out of range");
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return bad("component indices must increase");
        }
        if let Shape::P3 { a, .. } = self.shape {
            if alphabet.tau(a) == a {
                return bad("P3 needs tau(a) != a");
            }
        }
        Ok(())
    }

    pub fn symbol(&self) -> Option<Sym> {
        match self.shape {
            Shape::Empty => None,
            Shape::P11 { a, .. }
            | Shape::P3 { a, .. }
            | Shape::P21 { a, .. }
            | Shape::P12 { a, .. }
            | Shape::P111 { a, .. } => Some(a),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match self.shape {
            Shape::Empty => vec![],
            Shape::P3 { l, .. } => vec![l],
            Shape::P11 { l1, l2, .. } | Shape::P21 { l1, l2, .. } | Shape::P12 { l1, l2, .. } => {
                vec![l1, l2]
            }
            Shape::P111 { l1, l2, l3, .. } => vec![l1, l2, l3],
        }
    }

    pub fn family(&self) -> &'static str {
        match self.shape {
            Shape::Empty => "Empty",
            Shape::P11 { .. } => "P11",
            Shape::P3 { .. } => "P3",
            Shape::P21 { .. } => "P21",
            Shape::P12 { .. } => "P12",
            Shape::P111 { .. } => "P111",
        }
    }

    /// `Empty`, `P21(a;1,2)` and so on.
    pub fn to_text(&self, alphabet: &InvolutiveAlphabet) -> String {
        match self.symbol() {
            None => "Empty".into(),
            Some(a) => {
                let name = if a.index() < alphabet.len() {
                    alphabet.name(a)
                } else {
                    "?"
                };
                let idx: Vec<String> = self.indices().iter().map(usize::to_string).collect();
                format!("{}({name};{})", self.family(), idx.join(","))
            }
        }
    }
}

/// The literal phrase of a normal form, written in base symbols.
pub fn realize(nf: &NormalForm, alphabet: &Arc<InvolutiveAlphabet>) -> Result<EtalePhrase> {
    nf.check(alphabet)?;
    let mut words: Vec<Vec<&str>> = vec![Vec::new(); nf.k];
    if let Some(a) = nf.symbol() {
        let name = alphabet.name(a);
        let counts: Vec<(usize, usize)> = match nf.shape {
            Shape::Empty => vec![],
            Shape::P11 { l1, l2, .. } => vec![(l1, 1), (l2, 1)],
            Shape::P3 { l, .. } => vec![(l, 3)],
            Shape::P21 { l1, l2, .. } => vec![(l1, 2), (l2, 1)],
            Shape::P12 { l1, l2, .. } => vec![(l1, 1), (l2, 2)],
            Shape::P111 { l1, l2, l3, .. } => vec![(l1, 1), (l2, 1), (l3, 1)],
        };
        for (l, c) in counts {
            words[l - 1] = vec![name; c];
        }
    }
    EtalePhrase::on_alphabet(alphabet.clone(), &words)
}

fn multiplicity_one_check(p: &EtalePhrase) -> Result<()> {
    for id in 0..p.letters().len() {
        if p.multiplicity_of(id) == 1 {
            return Err(Error::MultiplicityOne(p.letters().name(id).to_string()));
        }
    }
    Ok(())
}

/// The normal form homotopic to `p`.
pub fn classify_phrase(p: &EtalePhrase) -> Result<NormalForm> {
    let entries = p.entry_count();
    if entries > 3 {
        return Err(Error::TooManyEntries(entries));
    }
    multiplicity_one_check(p)?;
    let k = p.len();
    // at most three entries and no multiplicity one: a single letter
    let Some(&letter) = p.words().iter().flatten().next() else {
        return Ok(NormalForm::empty(k));
    };
    let a = p.letters().projection(letter);
    let mut per: Vec<(usize, usize)> = Vec::new();
    for (i, w) in p.words().iter().enumerate() {
        if !w.is_empty() {
            per.push((i + 1, w.len()));
        }
    }
    let shape = match per.as_slice() {
        [(_, 2)] => Shape::Empty,
        [(l, 3)] if p.alphabet().tau(a) != a => Shape::P3 { a, l: *l },
        [(_, 3)] => Shape::Empty,
        [(l1, 1), (l2, 1)] => Shape::P11 {
            a,
            l1: *l1,
            l2: *l2,
        },
        [(l1, 2), (l2, 1)] => Shape::P21 {
            a,
            l1: *l1,
            l2: *l2,
        },
        [(l1, 1), (l2, 2)] => Shape::P12 {
            a,
            l1: *l1,
            l2: *l2,
        },
        [(l1, 1), (l2, 1), (l3, 1)] => Shape::P111 {
            a,
            l1: *l1,
            l2: *l2,
            l3: *l3,
        },
        _ => unreachable!("at most three entries of one letter"),
    };
    Ok(NormalForm { k, shape })
}

/// Homotopy classes of the listed words of length at most four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordClass {
    Contractible,
    Aaa(Sym),
    Aaaa(Sym),
    Abab(Sym, Sym),
}

impl WordClass {
    pub fn to_text(&self, alphabet: &InvolutiveAlphabet) -> String {
        match *self {
            WordClass::Contractible => "Contractible".into(),
            WordClass::Aaa(a) => format!("AAA({})", alphabet.name(a)),
            WordClass::Aaaa(a) => format!("AAAA({})", alphabet.name(a)),
            WordClass::Abab(a, b) => format!("ABAB({},{})", alphabet.name(a), alphabet.name(b)),
        }
    }
}

/// Classifies a one-word phrase of the form `aa`, `aaa`, `aaaa`, `aabb`,
/// `abba` or `abab` (letters up to renaming; projections decide the class).
/// The empty word is contractible.
pub fn classify_word(p: &EtalePhrase) -> Result<WordClass> {
    if p.len() != 1 {
        return Err(Error::UnlistedWordForm(format!("{} words", p.len())));
    }
    let word = &p.words()[0];
    let mut first: Vec<usize> = Vec::new();
    let pattern: Vec<usize> = word
        .iter()
        .map(|l| match first.iter().position(|x| x == l) {
            Some(i) => i,
            None => {
                first.push(*l);
                first.len() - 1
            }
        })
        .collect();
    let tau = |s: Sym| p.alphabet().tau(s);
    let proj = |i: usize| p.letters().projection(first[i]);
    let class = match pattern.as_slice() {
        [] | [0, 0] | [0, 0, 1, 1] | [0, 1, 1, 0] => WordClass::Contractible,
        [0, 0, 0] if tau(proj(0)) == proj(0) => WordClass::Contractible,
        [0, 0, 0] => WordClass::Aaa(proj(0)),
        [0, 0, 0, 0] if tau(proj(0)) == proj(0) => WordClass::Contractible,
        [0, 0, 0, 0] => WordClass::Aaaa(proj(0)),
        [0, 1, 0, 1] if tau(proj(0)) == proj(1) => WordClass::Contractible,
        [0, 1, 0, 1] => WordClass::Abab(proj(0), proj(1)),
        _ => return Err(Error::UnlistedWordForm(p.words_text())),
    };
    Ok(class)
}

/// Evidence about normal forms: an invariant separating two of them, or a
/// move path taking a phrase to the empty phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Separated {
        left: NormalForm,
        right: NormalForm,
        witness: Witness,
    },
    Reduced {
        phrase: EtalePhrase,
        path: Vec<MoveApplication>,
    },
}

impl Certificate {
    /// Recomputes the witness values, or replays the path.
    pub fn verify(&self, alphabet: &Arc<InvolutiveAlphabet>) -> bool {
        match self {
            Certificate::Separated {
                left,
                right,
                witness,
            } => {
                if witness.invariant == "k" {
                    return left.k != right.k
                        && witness.left == left.k.to_string()
                        && witness.right == right.k.to_string();
                }
                let (Ok(a), Ok(b)) = (realize(left, alphabet), realize(right, alphabet)) else {
                    return false;
                };
                let va = named_invariant(&desingularize(&a), &witness.invariant);
                let vb = named_invariant(&desingularize(&b), &witness.invariant);
                match (va, vb) {
                    (Some((va, ta)), Some((vb, tb))) => {
                        va != vb && ta == witness.left && tb == witness.right
                    }
                    _ => false,
                }
            }
            Certificate::Reduced { phrase, path } => match replay(&desingularize(phrase), path) {
                Ok(end) => end.letter_count() == 0,
                Err(_) => false,
            },
        }
    }

    pub fn to_text(&self, alphabet: &InvolutiveAlphabet) -> String {
        match self {
            Certificate::Separated {
                left,
                right,
                witness,
            } => format!(
                "{} / {}: {} {} vs {}",
                left.to_text(alphabet),
                right.to_text(alphabet),
                witness.invariant,
                witness.left,
                witness.right
            ),
            Certificate::Reduced { phrase, path } => {
                format!("{} -> Empty in {} moves", phrase.words_text(), path.len())
            }
        }
    }
}

fn orbit_rep(alphabet: &InvolutiveAlphabet, a: Sym) -> Sym {
    alphabet.crs()[alphabet.orbits().slot(a)]
}

fn single_orbit(alphabet: &InvolutiveAlphabet) -> bool {
    alphabet.crs().len() == 1
}

/// `name` evaluated on the sub-alphabet of `a`'s orbit.
fn scoped(alphabet: &InvolutiveAlphabet, a: Sym, name: &str) -> String {
    if single_orbit(alphabet) {
        name.to_string()
    } else {
        format!("UL[{}].{name}", alphabet.name(orbit_rep(alphabet, a)))
    }
}

/// Invariant telling a nonempty form from the empty one.
fn against_empty(alphabet: &InvolutiveAlphabet, nf: &NormalForm) -> String {
    let a = nf.symbol().expect("nonempty form");
    match nf.shape {
        Shape::P11 { .. } => "w".into(),
        Shape::P3 { .. } => "cwl".into(),
        Shape::P21 { .. } | Shape::P12 { .. } => scoped(alphabet, a, "T"),
        Shape::P111 { .. } => "lk".into(),
        Shape::Empty => unreachable!(),
    }
}

/// Candidate invariants for a pair of forms, by case.
fn preferred(alphabet: &InvolutiveAlphabet, x: &NormalForm, y: &NormalForm) -> Vec<String> {
    use Shape::*;
    let (a, b) = match (x.symbol(), y.symbol()) {
        (None, None) => return vec![],
        (Some(_), None) => return vec![against_empty(alphabet, x)],
        (None, Some(_)) => return vec![against_empty(alphabet, y)],
        (Some(a), Some(b)) => (a, b),
    };
    let is = |f: &str| x.family() == f || y.family() == f;
    if orbit_rep(alphabet, a) != orbit_rep(alphabet, b) {
        // the restriction to one orbit empties the other form
        let rep = alphabet.name(orbit_rep(alphabet, a));
        let inner = against_empty(alphabet, x);
        let inner = inner.rsplit('.').next().unwrap_or(&inner).to_string();
        return vec![format!("UL[{rep}].{inner}")];
    }
    if a != b {
        return if is("P11") {
            vec![if x.family() == y.family() { "lk" } else { "w" }.into()]
        } else if is("P3") {
            vec!["cwl".into()]
        } else {
            vec!["lk".into()]
        };
    }
    if is("P11") {
        return vec!["w".into()];
    }
    if is("P3") {
        return vec!["cwl".into()];
    }
    let fixed = alphabet.tau(a) == a;
    match (x.shape, y.shape) {
        (P21 { l1, l2, .. }, P12 { l1: m1, l2: m2, .. })
        | (P12 { l1, l2, .. }, P21 { l1: m1, l2: m2, .. })
            if !fixed && (l1, l2) == (m1, m2) =>
        {
            vec![scoped(alphabet, a, "T")]
        }
        (P21 { .. } | P12 { .. }, P21 { .. } | P12 { .. }) if fixed => {
            vec![scoped(alphabet, a, "So")]
        }
        _ => vec!["lk".into()],
    }
}

/// An invariant separating two different normal forms over `alphabet`.
/// Tries the invariant used for the case at hand first, then the battery.
pub fn distinguish(
    x: &NormalForm,
    y: &NormalForm,
    alphabet: &Arc<InvolutiveAlphabet>,
) -> Result<Certificate> {
    let label = || (x.to_text(alphabet), y.to_text(alphabet));
    if x.k != y.k {
        return Ok(Certificate::Separated {
            left: *x,
            right: *y,
            witness: Witness {
                invariant: "k".into(),
                left: x.k.to_string(),
                right: y.k.to_string(),
            },
        });
    }
    if x == y {
        let (l, r) = label();
        return Err(Error::NoSeparatingInvariant(l, r));
    }
    let nx = desingularize(&realize(x, alphabet)?);
    let ny = desingularize(&realize(y, alphabet)?);
    for name in preferred(alphabet, x, y) {
        if let (Some((vx, tx)), Some((vy, ty))) =
            (named_invariant(&nx, &name), named_invariant(&ny, &name))
        {
            if vx != vy {
                return Ok(Certificate::Separated {
                    left: *x,
                    right: *y,
                    witness: Witness {
                        invariant: name,
                        left: tx,
                        right: ty,
                    },
                });
            }
        }
    }
    match invariant_battery(&nx, &ny) {
        Some(witness) => Ok(Certificate::Separated {
            left: *x,
            right: *y,
            witness,
        }),
        None => {
            let (l, r) = label();
            Err(Error::NoSeparatingInvariant(l, r))
        }
    }
}

/// Every normal form with `k` components over `alphabet`, in data order.
pub fn normal_forms(k: usize, alphabet: &InvolutiveAlphabet) -> Vec<NormalForm> {
    let mut out = vec![NormalForm::empty(k)];
    for a in alphabet.symbols() {
        for l1 in 1..=k {
            if alphabet.tau(a) != a {
                out.push(NormalForm {
                    k,
                    shape: Shape::P3 { a, l: l1 },
                });
            }
            for l2 in l1 + 1..=k {
                out.push(NormalForm {
                    k,
                    shape: Shape::P11 { a, l1, l2 },
                });
                out.push(NormalForm {
                    k,
                    shape: Shape::P21 { a, l1, l2 },
                });
                out.push(NormalForm {
                    k,
                    shape: Shape::P12 { a, l1, l2 },
                });
                for l3 in l2 + 1..=k {
                    out.push(NormalForm {
                        k,
                        shape: Shape::P111 { a, l1, l2, l3 },
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Every multiplicity-one-free phrase with at most three entries and `k`
/// words, written in base symbols.
pub fn small_phrases(k: usize, alphabet: &Arc<InvolutiveAlphabet>) -> Vec<EtalePhrase> {
    fn compositions(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=m {
            cur.push(c);
            compositions(m - c, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![
        EtalePhrase::on_alphabet(alphabet.clone(), &vec![Vec::<&str>::new(); k]).expect("k > 0"),
    ];
    for a in alphabet.symbols() {
        let name = alphabet.name(a);
        for m in 2..=3 {
            let mut comps = Vec::new();
            compositions(m, k, &mut Vec::new(), &mut comps);
            for c in comps {
                let words: Vec<Vec<&str>> = c.iter().map(|&n| vec![name; n]).collect();
                out.push(
                    EtalePhrase::on_alphabet(alphabet.clone(), &words)
                        .expect("symbols of the alphabet"),
                );
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct AtlasRecord {
    pub phrase: EtalePhrase,
    pub form: NormalForm,
    /// Outcome of the search from the phrase to its realized normal form.
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct Atlas {
    pub k: usize,
    pub alphabet: Arc<InvolutiveAlphabet>,
    /// Sorted by phrase text.
    pub records: Vec<AtlasRecord>,
    /// Distinct normal forms reached, in data order.
    pub classes: Vec<NormalForm>,
    /// One certificate per pair of classes `(i, j)`, `i < j`.
    pub certificates: Vec<(usize, usize, Result<Certificate>)>,
}

impl Atlas {
    /// Every record has a path and every pair of classes a valid certificate.
    pub fn is_verified(&self) -> bool {
        self.records.iter().all(|r| r.verdict.is_homotopic())
            && self
                .certificates
                .iter()
                .all(|(_, _, c)| c.as_ref().is_ok_and(|c| c.verify(&self.alphabet)))
    }

    /// Report entries: counts, one `record.<i>` per phrase, one `class.<i>`
    /// per normal form, one `certificate.<i>.<j>` per pair, and `verified`.
    pub fn entries(&self) -> Vec<(String, String)> {
        let alpha = &self.alphabet;
        let pad =
            |i: usize, n: usize| format!("{i:0w$}", w = n.saturating_sub(1).to_string().len());
        let mut out = vec![
            ("k".to_string(), self.k.to_string()),
            ("phrases".to_string(), self.records.len().to_string()),
            ("classes".to_string(), self.classes.len().to_string()),
        ];
        for (i, r) in self.records.iter().enumerate() {
            let path = match &r.verdict {
                Verdict::Homotopic { path } => format!("path {}", path.len()),
                other => other.kind().to_string(),
            };
            out.push((
                format!("record.{}", pad(i, self.records.len())),
                format!(
                    "({}) -> {} {path}",
                    r.phrase.words_text(),
                    r.form.to_text(alpha)
                ),
            ));
        }
        for (i, c) in self.classes.iter().enumerate() {
            out.push((
                format!("class.{}", pad(i, self.classes.len())),
                c.to_text(alpha),
            ));
        }
        for (i, j, c) in &self.certificates {
            let body = match c {
                Ok(Certificate::Separated { witness, .. }) => {
                    format!(
                        "{} {} vs {}",
                        witness.invariant, witness.left, witness.right
                    )
                }
                Ok(other) => other.to_text(alpha),
                Err(e) => format!("missing: {e}"),
            };
            let n = self.classes.len();
            out.push((format!("certificate.{}.{}", pad(*i, n), pad(*j, n)), body));
        }
        out.push(("verified".into(), self.is_verified().to_string()));
        out
    }
}

/// Enumerates the small phrases with `k` words, classifies each, searches a
/// path to its normal form, and separates the forms reached pairwise.
pub fn atlas(k: usize, alphabet: &Arc<InvolutiveAlphabet>) -> Result<Atlas> {
    if k == 0 {
        return Err(Error::NoComponents);
    }
    let mut records = small_phrases(k, alphabet)
        .into_par_iter()
        .map(|p| {
            let form = classify_phrase(&p)?;
            let target = realize(&form, alphabet)?;
            let verdict = homotopic_bounded(&p, &target, &SearchBudget::for_phrases(&p, &target))?;
            Ok(AtlasRecord {
                phrase: p,
                form,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_cached_key(|r| r.phrase.words_text());
    let classes: Vec<NormalForm> = records
        .iter()
        .map(|r| r.form)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pairs: Vec<(usize, usize)> = (0..classes.len())
        .flat_map(|i| (i + 1..classes.len()).map(move |j| (i, j)))
        .collect();
    let certificates = pairs
        .into_par_iter()
        .map(|(i, j)| (i, j, distinguish(&classes[i], &classes[j], alphabet)))
        .collect();
    Ok(Atlas {
        k,
        alphabet: alphabet.clone(),
        records,
        classes,
        certificates,
    })
}

/// A move path from `p` to the empty phrase, when the search finds one.
pub fn reduction_certificate(
    p: &EtalePhrase,
    budget: &SearchBudget,
) -> Result<Option<Certificate>> {
    let empty = Nanophrase::empty(p.alphabet().clone(), p.len());
    match crate::search::homotopic_nanophrases(&desingularize(p), &empty, budget)? {
        Verdict::Homotopic { path } => Ok(Some(Certificate::Reduced {
            phrase: p.clone(),
            path,
        })),
        _ => Ok(None),
    }
}
