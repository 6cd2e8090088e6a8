//! Étale phrases, nanophrases, desingularization and canonical forms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{InvolutiveAlphabet, Sym};
use crate::error::{Error, Result};

/// Component separator in a [`GaussCode`] sequence.
pub const SEP: u16 = 0;

/// Letters of an étale phrase together with their projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaAlphabet {
    names: Vec<String>,
    proj: Vec<Sym>,
    index: HashMap<String, usize>,
}

impl AlphaAlphabet {
    pub fn new(
        base: &InvolutiveAlphabet,
        letters: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Self> {
        let mut out = AlphaAlphabet {
            names: Vec::new(),
            proj: Vec::new(),
            index: HashMap::new(),
        };
        for (name, sym) in letters {
            let sym = base.lookup(sym.as_ref())?;
            out.push(name.as_ref().to_string(), sym)?;
        }
        Ok(out)
    }

    /// Every symbol of `base` as a letter projecting to itself.
    pub fn identity(base: &InvolutiveAlphabet) -> Self {
        let mut out = AlphaAlphabet {
            names: Vec::new(),
            proj: Vec::new(),
            index: HashMap::new(),
        };
        for s in base.symbols() {
            out.push(base.name(s).to_string(), s)
                .expect("symbol names are distinct");
        }
        out
    }

    fn push(&mut self, name: String, sym: Sym) -> Result<usize> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateLetter(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.proj.push(sym);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn projection(&self, id: usize) -> Sym {
        self.proj[id]
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// True when the letters are exactly the base symbols, each projecting to itself.
    pub fn is_identity_on(&self, base: &InvolutiveAlphabet) -> bool {
        self.len() == base.len()
            && base
                .symbols()
                .enumerate()
                .all(|(i, s)| self.names[i] == base.name(s) && self.proj[i] == s)
    }
}

/// An α-alphabet with a phrase on it. Letters may occur any number of times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtalePhrase {
    alphabet: Arc<InvolutiveAlphabet>,
    letters: AlphaAlphabet,
    words: Vec<Vec<usize>>,
}

impl EtalePhrase {
    pub fn new(
        alphabet: Arc<InvolutiveAlphabet>,
        letters: AlphaAlphabet,
        words: &[Vec<impl AsRef<str>>],
    ) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::NoComponents);
        }
        let words = words
            .iter()
            .map(|w| w.iter().map(|l| letters.lookup(l.as_ref())).collect())
            .collect::<Result<Vec<_>>>()?;
        Ok(EtalePhrase {
            alphabet,
            letters,
            words,
        })
    }

    /// A phrase written directly in the base symbols (identity projection).
    pub fn on_alphabet(
        alphabet: Arc<InvolutiveAlphabet>,
        words: &[Vec<impl AsRef<str>>],
    ) -> Result<Self> {
        let letters = AlphaAlphabet::identity(&alphabet);
        Self::new(alphabet, letters, words)
    }

    pub(crate) fn from_parts(
        alphabet: Arc<InvolutiveAlphabet>,
        letters: AlphaAlphabet,
        words: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(!words.is_empty());
        EtalePhrase {
            alphabet,
            letters,
            words,
        }
    }

    pub fn alphabet(&self) -> &Arc<InvolutiveAlphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &AlphaAlphabet {
        &self.letters
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Number of words `k`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entry_count() == 0
    }

    pub fn entry_count(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    pub fn multiplicity(&self, letter: &str) -> Result<usize> {
        let id = self.letters.lookup(letter)?;
        Ok(self.multiplicity_of(id))
    }

    pub(crate) fn multiplicity_of(&self, id: usize) -> usize {
        self.words.iter().flatten().filter(|&&l| l == id).count()
    }

    fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.letters.len()];
        for &l in self.words.iter().flatten() {
            m[l] += 1;
        }
        m
    }

    /// Every declared letter occurs exactly twice.
    pub fn is_gauss(&self) -> bool {
        self.multiplicities().iter().all(|&m| m == 2)
    }

    pub fn is_multiplicity_one_free(&self) -> bool {
        self.multiplicities().iter().all(|&m| m != 1)
    }

    /// Words separated by ` | `; letters separated by single spaces.
    pub fn words_text(&self) -> String {
        render_words(
            self.words
                .iter()
                .map(|w| w.iter().map(|&l| self.letters.name(l))),
        )
    }
}

impl fmt::Display for EtalePhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.words_text())
    }
}

pub(crate) fn render_words<'a, W, L>(words: W) -> String
where
    W: IntoIterator<Item = L>,
    L: IntoIterator<Item = &'a str>,
{
    let mut tokens: Vec<&str> = Vec::new();
    for (i, w) in words.into_iter().enumerate() {
        if i > 0 {
            tokens.push("|");
        }
        tokens.extend(w);
    }
    tokens.join(" ")
}

/// Flat letter sequence of a nanophrase. Letters are numbered `1..=n`,
/// `proj[l - 1]` is the projection of letter `l`, and [`SEP`] separates
/// components. Positions in this sequence are the "flat positions" moves
/// refer to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussCode {
    pub(crate) seq: Vec<u16>,
    pub(crate) proj: Vec<Sym>,
}

impl GaussCode {
    pub(crate) fn new_unchecked(seq: Vec<u16>, proj: Vec<Sym>) -> Self {
        GaussCode { seq, proj }
    }

    /// The empty phrase with `k` components.
    pub fn empty(k: usize) -> Self {
        GaussCode {
            seq: vec![SEP; k.saturating_sub(1)],
            proj: Vec::new(),
        }
    }

    pub fn seq(&self) -> &[u16] {
        &self.seq
    }

    pub fn letter_count(&self) -> usize {
        self.proj.len()
    }

    pub fn component_count(&self) -> usize {
        self.seq.iter().filter(|&&x| x == SEP).count() + 1
    }

    pub fn projection(&self, letter: u16) -> Sym {
        self.proj[letter as usize - 1]
    }

    /// Flat positions of the two occurrences of each letter, indexed by `l - 1`.
    pub fn positions(&self) -> Vec<[usize; 2]> {
        let mut pos = vec![[usize::MAX; 2]; self.proj.len()];
        for (i, &x) in self.seq.iter().enumerate() {
            if x != SEP {
                let p = &mut pos[x as usize - 1];
                if p[0] == usize::MAX {
                    p[0] = i;
                } else {
                    p[1] = i;
                }
            }
        }
        pos
    }

    /// Component index (0-based) of each flat position; separators get the
    /// index of the component they close.
    pub fn component_of_positions(&self) -> Vec<usize> {
        let mut c = 0;
        self.seq
            .iter()
            .map(|&x| {
                let here = c;
                if x == SEP {
                    c += 1;
                }
                here
            })
            .collect()
    }

    /// Splits into the letter lists of each component.
    pub fn components(&self) -> Vec<&[u16]> {
        self.seq.split(|&x| x == SEP).collect()
    }

    /// Relabels letters by order of first occurrence.
    pub fn canonical(&self) -> CanonicalKey {
        let mut map = vec![0u16; self.proj.len() + 1];
        let mut next = 0u16;
        let mut proj = Vec::with_capacity(self.proj.len());
        let seq = self
            .seq
            .iter()
            .map(|&x| {
                if x == SEP {
                    return SEP;
                }
                let m = &mut map[x as usize];
                if *m == 0 {
                    next += 1;
                    *m = next;
                    proj.push(self.proj[x as usize - 1]);
                }
                *m
            })
            .collect();
        CanonicalKey(GaussCode { seq, proj })
    }

    fn check(&self) -> Result<()> {
        let mut count = vec![0usize; self.proj.len()];
        for &x in &self.seq {
            if x != SEP {
                let i = x as usize - 1;
                if i >= count.len() {
                    return Err(Error::UnknownLetter(x.to_string()));
                }
                count[i] += 1;
            }
        }
        match count.iter().position(|&c| c != 2) {
            Some(i) => Err(Error::NotGauss {
                letter: (i + 1).to_string(),
                count: count[i],
            }),
            None => Ok(()),
        }
    }
}

/// Isomorphism normal form of a nanophrase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub(crate) GaussCode);

impl CanonicalKey {
    pub fn code(&self) -> &GaussCode {
        &self.0
    }

    pub fn into_code(self) -> GaussCode {
        self.0
    }

    /// Letter numbering sequence with `0` as separator.
    pub fn occurrence_code(&self) -> &[u16] {
        &self.0.seq
    }

    pub fn projection_code(&self) -> &[Sym] {
        &self.0.proj
    }

    /// Renders as `1 2 | 2 1 ; 1->a 2->b`.
    pub fn to_text(&self, alphabet: &InvolutiveAlphabet) -> String {
        let names: Vec<String> = (1..=self.0.proj.len()).map(|l| l.to_string()).collect();
        let words = render_words(
            self.0
                .components()
                .into_iter()
                .map(|w| w.iter().map(|&l| names[l as usize - 1].as_str())),
        );
        let table: Vec<String> = self
            .0
            .proj
            .iter()
            .enumerate()
            .map(|(i, &s)| format!("{}->{}", i + 1, alphabet.name(s)))
            .collect();
        if table.is_empty() {
            words
        } else {
            format!("{words} ; {}", table.join(" "))
        }
    }
}

/// An étale phrase satisfying the Gauss condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nanophrase {
    alphabet: Arc<InvolutiveAlphabet>,
    code: GaussCode,
    names: Vec<String>,
}

impl Nanophrase {
    pub fn new(
        alphabet: Arc<InvolutiveAlphabet>,
        letters: AlphaAlphabet,
        words: &[Vec<impl AsRef<str>>],
    ) -> Result<Self> {
        Self::try_from(EtalePhrase::new(alphabet, letters, words)?)
    }

    pub fn from_code(
        alphabet: Arc<InvolutiveAlphabet>,
        code: GaussCode,
        names: Vec<String>,
    ) -> Result<Self> {
        if code.proj.len() != names.len() {
            return Err(Error::AlphabetShape("letter table size mismatch".into()));
        }
        code.check()?;
        Ok(Nanophrase {
            alphabet,
            code,
            names,
        })
    }

    /// A representative of a canonical key, with letters named `X1..Xn`.
    pub fn from_key(alphabet: Arc<InvolutiveAlphabet>, key: &CanonicalKey) -> Self {
        let names = (1..=key.0.proj.len()).map(|i| format!("X{i}")).collect();
        Nanophrase {
            alphabet,
            code: key.0.clone(),
            names,
        }
    }

    /// The empty nanophrase with `k` components.
    pub fn empty(alphabet: Arc<InvolutiveAlphabet>, k: usize) -> Self {
        Nanophrase {
            alphabet,
            code: GaussCode::empty(k),
            names: Vec::new(),
        }
    }

    pub(crate) fn from_parts(
        alphabet: Arc<InvolutiveAlphabet>,
        code: GaussCode,
        names: Vec<String>,
    ) -> Self {
        debug_assert!(code.check().is_ok());
        Nanophrase {
            alphabet,
            code,
            names,
        }
    }

    pub fn alphabet(&self) -> &Arc<InvolutiveAlphabet> {
        &self.alphabet
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of letter `l` (numbered from 1).
    pub fn letter_name(&self, l: u16) -> &str {
        &self.names[l as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.code.component_count()
    }

    pub fn is_empty(&self) -> bool {
        self.code.proj.is_empty()
    }

    pub fn letter_count(&self) -> usize {
        self.code.proj.len()
    }

    pub fn canonical(&self) -> CanonicalKey {
        self.code.canonical()
    }

    pub fn to_etale(&self) -> EtalePhrase {
        let mut letters = AlphaAlphabet {
            names: Vec::new(),
            proj: Vec::new(),
            index: HashMap::new(),
        };
        for (name, &s) in self.names.iter().zip(&self.code.proj) {
            letters
                .push(name.clone(), s)
                .expect("nanophrase letter names are distinct");
        }
        let words = self
            .code
            .components()
            .into_iter()
            .map(|w| w.iter().map(|&l| l as usize - 1).collect())
            .collect();
        EtalePhrase::from_parts(self.alphabet.clone(), letters, words)
    }

    pub fn words_text(&self) -> String {
        render_words(
            self.code
                .components()
                .into_iter()
                .map(|w| w.iter().map(|&l| self.names[l as usize - 1].as_str())),
        )
    }
}

impl fmt::Display for Nanophrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.words_text())
    }
}

impl TryFrom<EtalePhrase> for Nanophrase {
    type Error = Error;

    fn try_from(p: EtalePhrase) -> Result<Self> {
        let n = p.letters.len();
        if n >= u16::MAX as usize {
            return Err(Error::TooManyLetters(n));
        }
        let mult = p.multiplicities();
        if let Some(i) = mult.iter().position(|&m| m != 2) {
            return Err(Error::NotGauss {
                letter: p.letters.name(i).to_string(),
                count: mult[i],
            });
        }
        let mut seq = Vec::with_capacity(p.entry_count() + p.len());
        for (i, w) in p.words.iter().enumerate() {
            if i > 0 {
                seq.push(SEP);
            }
            seq.extend(w.iter().map(|&l| l as u16 + 1));
        }
        Ok(Nanophrase {
            alphabet: p.alphabet,
            code: GaussCode {
                seq,
                proj: p.letters.proj,
            },
            names: p.letters.names,
        })
    }
}

/// Replaces the `i`-th occurrence of each letter `A` of multiplicity `m >= 2`
/// by `A_{1,i} .. A_{i-1,i} A_{i,i+1} .. A_{i,m}`; letters of multiplicity at
/// most one are dropped. New letters are named `A_i_j`.
pub fn desingularize(p: &EtalePhrase) -> Nanophrase {
    let mult = p.multiplicities();
    // first new letter number (1-based) of each old letter's block of pairs
    let mut base = vec![0usize; mult.len()];
    let mut names = Vec::new();
    let mut proj = Vec::new();
    for (a, &m) in mult.iter().enumerate() {
        base[a] = names.len() + 1;
        for i in 1..=m {
            for j in i + 1..=m {
                names.push(format!("{}_{}_{}", p.letters.name(a), i, j));
                proj.push(p.letters.projection(a));
            }
        }
    }
    // number of pair (i, j), 1 <= i < j <= m, in lexicographic order
    let pair_index = |m: usize, i: usize, j: usize| (i - 1) * (2 * m - i) / 2 + (j - i - 1);

    let mut seen = vec![0usize; mult.len()];
    let mut seq = Vec::new();
    for (c, w) in p.words.iter().enumerate() {
        if c > 0 {
            seq.push(SEP);
        }
        for &a in w {
            let m = mult[a];
            if m < 2 {
                continue;
            }
            seen[a] += 1;
            let i = seen[a];
            for h in 1..i {
                seq.push((base[a] + pair_index(m, h, i)) as u16);
            }
            for j in i + 1..=m {
                seq.push((base[a] + pair_index(m, i, j)) as u16);
            }
        }
    }
    Nanophrase::from_parts(p.alphabet.clone(), GaussCode { seq, proj }, names)
}

pub fn canonicalize(n: &Nanophrase) -> CanonicalKey {
    n.canonical()
}

pub fn isomorphic(a: &Nanophrase, b: &Nanophrase) -> Result<bool> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(a.canonical() == b.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha0() -> Arc<InvolutiveAlphabet> {
        Arc::new(InvolutiveAlphabet::alpha0())
    }

    fn words(text: &str) -> Vec<Vec<String>> {
        text.split('|')
            .map(|w| w.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    fn etale(alpha: &Arc<InvolutiveAlphabet>, letters: &[(&str, &str)], text: &str) -> EtalePhrase {
        let letters = AlphaAlphabet::new(alpha, letters).unwrap();
        EtalePhrase::new(alpha.clone(), letters, &words(text)).unwrap()
    }

    #[test]
    fn multiplicity_counts() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let p = EtalePhrase::on_alphabet(one.clone(), &words("a a | a")).unwrap();
        assert_eq!(p.multiplicity("a").unwrap(), 3);
        let p = EtalePhrase::on_alphabet(one.clone(), &words("|")).unwrap();
        assert_eq!(p.multiplicity("a").unwrap(), 0);
        assert!(p.multiplicity("Z").is_err());
        let a0 = alpha0();
        let p = etale(&a0, &[("A", "a"), ("B", "b")], "A B | B A");
        assert_eq!(p.multiplicity("A").unwrap(), 2);
    }

    #[test]
    fn gauss_condition() {
        let a0 = alpha0();
        assert!(etale(&a0, &[("A", "a"), ("B", "b")], "A B | B A").is_gauss());
        assert!(!etale(&a0, &[("a", "a")], "a a a").is_gauss());
        assert!(etale(&a0, &[("A", "a"), ("B", "b")], "A | A B B").is_gauss());
        // declared but unused letters are fine for étale phrases only
        let p = etale(&a0, &[("A", "a"), ("B", "b")], "|");
        assert!(!p.is_gauss());
        assert!(matches!(
            Nanophrase::try_from(p),
            Err(Error::NotGauss { count: 0, .. })
        ));
    }

    #[test]
    fn desingularize_triple() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let p = EtalePhrase::on_alphabet(one, &words("a a a")).unwrap();
        let d = desingularize(&p);
        assert_eq!(d.words_text(), "a_1_2 a_1_3 a_1_2 a_2_3 a_1_3 a_2_3");
        assert_eq!(d.code().seq.len(), 6);
    }

    #[test]
    fn desingularize_drops_single_letters() {
        let a0 = alpha0();
        let p = etale(&a0, &[("A", "a"), ("B", "b")], "A | B B");
        let d = desingularize(&p);
        assert_eq!(d.words_text(), "| B_1_2 B_1_2");
        assert_eq!(d.names(), ["B_1_2"]);
    }

    #[test]
    fn desingularize_quadruple() {
        let one = Arc::new(InvolutiveAlphabet::one_element());
        let p = EtalePhrase::on_alphabet(one, &words("a a a a")).unwrap();
        let d = desingularize(&p);
        assert_eq!(
            d.canonical().occurrence_code(),
            &[1, 2, 3, 1, 4, 5, 2, 4, 6, 3, 5, 6]
        );
    }

    #[test]
    fn desingularize_nanophrase_is_isomorphic() {
        let a0 = alpha0();
        let p = etale(&a0, &[("X", "a"), ("Y", "b")], "X Y | Y X");
        let n = Nanophrase::try_from(p.clone()).unwrap();
        assert_eq!(desingularize(&p).canonical(), n.canonical());
    }

    #[test]
    fn canonical_keys() {
        let a0 = alpha0();
        let n1 = Nanophrase::try_from(etale(&a0, &[("X", "a"), ("Y", "b")], "X Y | Y X")).unwrap();
        let n2 = Nanophrase::try_from(etale(&a0, &[("P", "a"), ("Q", "b")], "P Q | Q P")).unwrap();
        let n3 = Nanophrase::try_from(etale(&a0, &[("X", "b"), ("Y", "a")], "X Y | Y X")).unwrap();
        assert!(isomorphic(&n1, &n2).unwrap());
        assert!(!isomorphic(&n1, &n3).unwrap());
        let n4 = Nanophrase::try_from(etale(&a0, &[("A", "a")], "A A")).unwrap();
        let n5 = Nanophrase::try_from(etale(&a0, &[("A", "a")], "A | A")).unwrap();
        assert!(!isomorphic(&n4, &n5).unwrap());
        let other = Nanophrase::empty(Arc::new(InvolutiveAlphabet::one_element()), 1);
        assert_eq!(isomorphic(&n4, &other), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn key_text() {
        let a0 = alpha0();
        let n = Nanophrase::try_from(etale(&a0, &[("X", "a"), ("Y", "b")], "X Y | Y X")).unwrap();
        assert_eq!(n.canonical().to_text(&a0), "1 2 | 2 1 ; 1->a 2->b");
        assert_eq!(GaussCode::empty(2).canonical().to_text(&a0), "|");
    }
}
