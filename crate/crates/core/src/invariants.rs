//! Homotopy invariants of nanophrases and the battery that compares them.
//!
//! Invariants of étale phrases are the invariants of their desingularization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::alphabet::{InvolutiveAlphabet, PiElement, Sym};
use crate::error::{Error, Result};
use crate::phrase::{desingularize, EtalePhrase, GaussCode, Nanophrase, SEP};

/// Word lengths mod 2, one bit per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLengthVector(pub Vec<u8>);

/// `lk[(i, j)]` for `i < j`, in lexicographic order of `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingVector {
    pub k: usize,
    pub entries: Vec<PiElement>,
}

impl LinkingVector {
    /// Entry for the 1-based component pair `i < j`.
    pub fn get(&self, i: usize, j: usize) -> &PiElement {
        assert!(1 <= i && i < j && j <= self.k);
        let (i, j) = (i - 1, j - 1);
        let idx = i * (2 * self.k - i - 1) / 2 + (j - i - 1);
        &self.entries[idx]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let k = self.k;
        (1..=k).flat_map(move |i| (i + 1..=k).map(move |j| (i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TFlavor {
    /// Integer values; alphabet `{a, tau(a)}` with `a != tau(a)`.
    Alpha0,
    /// Values mod 2; one-element alphabet.
    OneElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TVector {
    pub flavor: TFlavor,
    pub values: Vec<i64>,
}

/// One set of nonzero vectors of `(Z/2)^k` per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoValue {
    pub k: usize,
    pub sets: Vec<BTreeSet<Vec<u8>>>,
}

/// Per component: for each letter `A` whose two occurrences lie in that
/// component, the group element `n(A)` collected from letters met once
/// between the two `A`s (`|B|` for a first occurrence, `tau(|B|)` for a
/// second), summed over letters with `n(A) != 1` in the group generated by
/// pairs `(|A|, n(A))` modulo `(s, g) + (tau(s), g) = 0`.
///
/// The sum is keyed by `(orbit slot of |A|, n(A))`; coefficients on fixed
/// points are reduced mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordLinking(pub Vec<BTreeMap<(usize, PiElement), i64>>);

fn letter_components(code: &GaussCode) -> (Vec<[usize; 2]>, Vec<[usize; 2]>) {
    let pos = code.positions();
    let comp_of = code.component_of_positions();
    let comps = pos.iter().map(|p| [comp_of[p[0]], comp_of[p[1]]]).collect();
    (pos, comps)
}

pub fn component_length_vector(n: &Nanophrase) -> ComponentLengthVector {
    ComponentLengthVector(
        n.code()
            .components()
            .iter()
            .map(|w| (w.len() % 2) as u8)
            .collect(),
    )
}

pub fn linking_vector(n: &Nanophrase) -> LinkingVector {
    let k = n.len();
    let pi = n.alphabet().pi();
    let mut entries = vec![pi.unit(); k * k.saturating_sub(1) / 2];
    let (_, comps) = letter_components(n.code());
    for (l, c) in comps.iter().enumerate() {
        let (i, j) = (c[0].min(c[1]), c[0].max(c[1]));
        if i != j {
            let idx = i * (2 * k - i - 1) / 2 + (j - i - 1);
            pi.mul_sym(&mut entries[idx], n.code().projection(l as u16 + 1));
        }
    }
    LinkingVector { k, entries }
}

/// `+1` for `A..B..A..B`, `-1` for `B..A..B..A`, `0` otherwise.
fn interleaving(a: [usize; 2], b: [usize; 2]) -> i64 {
    if a[0] < b[0] && b[0] < a[1] && a[1] < b[1] {
        1
    } else if b[0] < a[0] && a[0] < b[1] && b[1] < a[1] {
        -1
    } else {
        0
    }
}

/// `T` over `{a, tau(a)}`, reading the orbit representative as `a`.
pub fn t_alpha0(n: &Nanophrase) -> Result<TVector> {
    let alpha = n.alphabet();
    if !alpha.is_swap_pair() {
        return Err(Error::AlphabetShape(
            "T needs two symbols exchanged by tau".into(),
        ));
    }
    Ok(t_alpha0_with(n, alpha.crs()[0]))
}

/// `T` over `{a, tau(a)}` with `designated` playing the role of `a`.
pub fn t_alpha0_with(n: &Nanophrase, designated: Sym) -> TVector {
    let code = n.code();
    let (pos, comps) = letter_components(code);
    let sign = |l: usize| if code.proj[l] == designated { 1 } else { -1 };
    let mut values = vec![0i64; n.len()];
    for a in 0..pos.len() {
        if comps[a][0] != comps[a][1] {
            continue;
        }
        let sum: i64 = (0..pos.len())
            .filter(|&b| b != a)
            .map(|b| interleaving(pos[a], pos[b]) * sign(b))
            .sum();
        values[comps[a][0]] += sign(a) * sum;
    }
    TVector {
        flavor: TFlavor::Alpha0,
        values,
    }
}

/// `T` over the one-element alphabet: parity of interleaved partners.
pub fn t_one(n: &Nanophrase) -> Result<TVector> {
    if !n.alphabet().is_one_element() {
        return Err(Error::AlphabetShape(
            "T mod 2 needs a one-element alphabet".into(),
        ));
    }
    let (pos, comps) = letter_components(n.code());
    let mut values = vec![0i64; n.len()];
    for a in 0..pos.len() {
        if comps[a][0] != comps[a][1] {
            continue;
        }
        let partners = (0..pos.len())
            .filter(|&b| b != a && interleaving(pos[a], pos[b]) != 0)
            .count() as i64;
        values[comps[a][0]] = (values[comps[a][0]] + partners) % 2;
    }
    Ok(TVector {
        flavor: TFlavor::OneElement,
        values,
    })
}

/// Gibson's `S_o` over the one-element alphabet.
///
/// For `A` with both occurrences in component `i`, write the phrase as
/// `xAyAz`; `l_j(A)` is the parity of the letters with exactly one
/// occurrence in `y` whose other occurrence lies in component `j`.
pub fn s_o(n: &Nanophrase) -> Result<SoValue> {
    if !n.alphabet().is_one_element() {
        return Err(Error::AlphabetShape(
            "S_o needs a one-element alphabet".into(),
        ));
    }
    let k = n.len();
    let code = n.code();
    let (pos, comps) = letter_components(code);
    let comp_of = code.component_of_positions();
    let mut counts: Vec<BTreeMap<Vec<u8>, usize>> = vec![BTreeMap::new(); k];
    for a in 0..pos.len() {
        if comps[a][0] != comps[a][1] {
            continue;
        }
        let mut v = vec![0u8; k];
        let [lo, hi] = pos[a];
        for i in lo + 1..hi {
            let x = code.seq[i];
            if x == SEP {
                continue;
            }
            let p = pos[x as usize - 1];
            let other = if p[0] == i { p[1] } else { p[0] };
            if other < lo || other > hi {
                v[comp_of[other]] ^= 1;
            }
        }
        *counts[comps[a][0]].entry(v).or_default() += 1;
    }
    let sets = counts
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter(|(v, d)| d % 2 == 1 && v.contains(&1))
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    Ok(SoValue { k, sets })
}

pub fn word_linking(n: &Nanophrase) -> WordLinking {
    let alpha = n.alphabet();
    let pi = alpha.pi();
    let orbits = alpha.orbits();
    let code = n.code();
    let (_, comps) = letter_components(code);
    let mut out = Vec::with_capacity(n.len());
    for word in code.components() {
        // letters with both occurrences in this component
        let inner: Vec<u16> = word
            .iter()
            .copied()
            .filter(|&l| {
                let c = comps[l as usize - 1];
                c[0] == c[1]
            })
            .collect();
        let mut first = BTreeMap::new();
        let mut span = BTreeMap::new();
        for (i, &l) in inner.iter().enumerate() {
            match first.get(&l) {
                None => {
                    first.insert(l, i);
                }
                Some(&f) => {
                    span.insert(l, (f, i));
                }
            }
        }
        let mut sum: BTreeMap<(usize, PiElement), i64> = BTreeMap::new();
        for (&a, &(lo, hi)) in &span {
            let mut g = pi.unit();
            for &b in &inner[lo + 1..hi] {
                let (blo, bhi) = span[&b];
                let s = code.projection(b);
                if blo > lo && bhi > hi {
                    pi.mul_sym(&mut g, s);
                } else if blo < lo && bhi < hi {
                    pi.mul_sym(&mut g, alpha.tau(s));
                }
            }
            if g.is_unit() {
                continue;
            }
            let s = code.projection(a);
            let slot = orbits.slot(s);
            let e = sum.entry((slot, g)).or_default();
            *e += orbits.sign(s);
            if orbits.is_fixed_slot(slot) {
                *e = e.rem_euclid(2);
            }
        }
        sum.retain(|_, c| *c != 0);
        out.push(sum);
    }
    WordLinking(out)
}

/// Deletes every letter whose projection lies outside `L ∪ tau(L)`. The
/// result lives over the sub-alphabet `L ∪ tau(L)`.
pub fn u_l(n: &Nanophrase, l: &[Sym]) -> Result<Nanophrase> {
    let alpha = n.alphabet();
    let orbits = alpha.orbits();
    let mut slots = BTreeSet::new();
    for &s in l {
        if s.index() >= alpha.len() || !alpha.crs().contains(&s) {
            let name = if s.index() < alpha.len() {
                alpha.name(s).to_string()
            } else {
                format!("#{}", s.0)
            };
            return Err(Error::NotRepresentative(name));
        }
        slots.insert(orbits.slot(s));
    }
    let keep = |s: Sym| slots.contains(&orbits.slot(s));
    let (sub, map) = alpha.restrict(keep);
    let code = n.code();
    let mut renumber = vec![0u16; code.letter_count() + 1];
    let mut proj = Vec::new();
    let mut names = Vec::new();
    for l in 1..=code.letter_count() as u16 {
        let s = code.projection(l);
        if keep(s) {
            proj.push(map[s.index()].expect("kept symbol"));
            names.push(n.letter_name(l).to_string());
            renumber[l as usize] = proj.len() as u16;
        }
    }
    let seq = code
        .seq()
        .iter()
        .filter(|&&x| x == SEP || renumber[x as usize] != 0)
        .map(|&x| if x == SEP { SEP } else { renumber[x as usize] })
        .collect();
    Ok(Nanophrase::from_parts(
        Arc::new(sub),
        GaussCode::new_unchecked(seq, proj),
        names,
    ))
}

/// [`u_l`] with `L` given by symbol names.
pub fn u_l_named(n: &Nanophrase, l: &[&str]) -> Result<Nanophrase> {
    let syms = l
        .iter()
        .map(|s| n.alphabet().lookup(s))
        .collect::<Result<Vec<_>>>()?;
    u_l(n, &syms)
}

/// A computed invariant value, comparable between phrases over the same alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantValue {
    W(ComponentLengthVector),
    Lk(LinkingVector),
    T(TVector),
    So(SoValue),
    WordLinking(WordLinking),
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| char::from(b'0' + b)).collect()
}

impl InvariantValue {
    pub fn render(&self, alphabet: &InvolutiveAlphabet) -> String {
        let pi = alphabet.pi();
        match self {
            InvariantValue::W(w) => {
                let parts: Vec<String> = w.0.iter().map(u8::to_string).collect();
                format!("({})", parts.join(","))
            }
            InvariantValue::Lk(lk) => {
                let parts: Vec<String> = lk
                    .pairs()
                    .zip(&lk.entries)
                    .map(|((i, j), g)| format!("({i},{j})={}", pi.format(g)))
                    .collect();
                parts.join(" ")
            }
            InvariantValue::T(t) => {
                let parts: Vec<String> = t.values.iter().map(i64::to_string).collect();
                format!("({})", parts.join(","))
            }
            InvariantValue::So(so) => {
                let parts: Vec<String> = so
                    .sets
                    .iter()
                    .map(|s| {
                        let vs: Vec<String> = s.iter().map(|v| bits(v)).collect();
                        format!("{{{}}}", vs.join(","))
                    })
                    .collect();
                format!("({})", parts.join(","))
            }
            InvariantValue::WordLinking(wl) => {
                let crs = alphabet.crs();
                let parts: Vec<String> = wl
                    .0
                    .iter()
                    .map(|sum| {
                        if sum.is_empty() {
                            return "0".to_string();
                        }
                        let mut out = String::new();
                        for (i, ((slot, g), c)) in sum.iter().enumerate() {
                            if i > 0 {
                                out.push(' ');
                            }
                            let _ =
                                write!(out, "{c}[{}:{}]", alphabet.name(crs[*slot]), pi.format(g));
                        }
                        out
                    })
                    .collect();
                format!("({})", parts.join(" | "))
            }
        }
    }
}

/// The direct invariants of `n` in battery order: `w`, `lk`, `T` and `So`
/// when the alphabet has the required shape, then `cwl` (word linking).
pub fn direct_invariants(n: &Nanophrase) -> Vec<(&'static str, InvariantValue)> {
    let alpha = n.alphabet();
    let mut out = vec![
        ("w", InvariantValue::W(component_length_vector(n))),
        ("lk", InvariantValue::Lk(linking_vector(n))),
    ];
    if alpha.is_swap_pair() {
        out.push(("T", InvariantValue::T(t_alpha0(n).expect("shape checked"))));
    }
    if alpha.is_one_element() {
        out.push(("T", InvariantValue::T(t_one(n).expect("shape checked"))));
        out.push(("So", InvariantValue::So(s_o(n).expect("shape checked"))));
    }
    out.push(("cwl", InvariantValue::WordLinking(word_linking(n))));
    out
}

/// Nonempty proper subsets of the orbit representatives, by size then order.
pub fn restriction_sets(alphabet: &InvolutiveAlphabet) -> Vec<Vec<Sym>> {
    let crs = alphabet.crs();
    let c = crs.len();
    if !(2..=16).contains(&c) {
        return Vec::new();
    }
    let mut sets: Vec<Vec<Sym>> = (1u32..(1 << c) - 1)
        .map(|mask| {
            (0..c)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| crs[i])
                .collect()
        })
        .collect();
    sets.sort_by_key(|s: &Vec<Sym>| (s.len(), s.clone()));
    sets
}

pub fn set_label(alphabet: &InvolutiveAlphabet, l: &[Sym]) -> String {
    let names: Vec<&str> = l.iter().map(|&s| alphabet.name(s)).collect();
    format!("UL[{}]", names.join(","))
}

/// Evaluates one battery entry by name: a direct invariant (`w`, `lk`, `T`,
/// `So`, `cwl`) or `UL[x,..].name` for that invariant of a `U_L` image.
/// Returns `None` when the name does not apply to the alphabet.
pub fn named_invariant(n: &Nanophrase, name: &str) -> Option<(InvariantValue, String)> {
    let (target, inner) = match name.strip_prefix("UL[") {
        Some(rest) => {
            let (set, inner) = rest.split_once("].")?;
            let syms = set
                .split(',')
                .map(|s| n.alphabet().lookup(s).ok())
                .collect::<Option<Vec<_>>>()?;
            (u_l(n, &syms).ok()?, inner)
        }
        None => (n.clone(), name),
    };
    let value = direct_invariants(&target)
        .into_iter()
        .find(|(k, _)| *k == inner)?
        .1;
    let text = value.render(target.alphabet());
    Some((value, text))
}

/// Evidence that two phrases are not homotopic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

fn compare_direct(prefix: &str, a: &Nanophrase, b: &Nanophrase) -> Option<Witness> {
    let alpha = a.alphabet();
    for ((name, va), (_, vb)) in direct_invariants(a).into_iter().zip(direct_invariants(b)) {
        if va != vb {
            return Some(Witness {
                invariant: format!("{prefix}{name}"),
                left: va.render(alpha),
                right: vb.render(alpha),
            });
        }
    }
    None
}

/// Compares the invariants of two nanophrases over the same alphabet and with
/// the same number of components; returns the first that differs. `U_L`
/// images are compared by their own direct invariants (one level deep).
pub fn invariant_battery(a: &Nanophrase, b: &Nanophrase) -> Option<Witness> {
    debug_assert_eq!(a.alphabet(), b.alphabet());
    debug_assert_eq!(a.len(), b.len());
    if let Some(w) = compare_direct("", a, b) {
        return Some(w);
    }
    for l in restriction_sets(a.alphabet()) {
        let ua = u_l(a, &l).expect("subsets of crs");
        let ub = u_l(b, &l).expect("subsets of crs");
        let prefix = format!("{}.", set_label(a.alphabet(), &l));
        if let Some(w) = compare_direct(&prefix, &ua, &ub) {
            return Some(w);
        }
    }
    None
}

/// [`invariant_battery`] on desingularizations.
pub fn invariant_battery_etale(a: &EtalePhrase, b: &EtalePhrase) -> Option<Witness> {
    invariant_battery(&desingularize(a), &desingularize(b))
}

fn push_entries(out: &mut Vec<(String, String)>, prefix: &str, n: &Nanophrase) {
    let alpha = n.alphabet();
    for (k, v) in direct_invariants(n) {
        match &v {
            InvariantValue::Lk(lk) => {
                for ((i, j), g) in lk.pairs().zip(&lk.entries) {
                    out.push((format!("{prefix}lk[({i},{j})]"), alpha.pi().format(g)));
                }
            }
            _ => out.push((format!("{prefix}{k}"), v.render(alpha))),
        }
    }
}

/// Full report: direct invariants, then each `U_L` image (canonical text)
/// followed by its direct invariants. Linking entries are listed per pair as
/// `lk[(i,j)]`. `only` restricts the `U_L` part to one set.
pub fn report(n: &Nanophrase, only: Option<&[Sym]>) -> Result<Vec<(String, String)>> {
    let alpha = n.alphabet();
    let mut out = Vec::new();
    push_entries(&mut out, "", n);
    let sets = match only {
        Some(l) => vec![l.to_vec()],
        None => restriction_sets(alpha),
    };
    for l in sets {
        let image = u_l(n, &l)?;
        let label = set_label(alpha, &l);
        out.push((label.clone(), image.canonical().to_text(image.alphabet())));
        push_entries(&mut out, &format!("{label}."), &image);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phrase::EtalePhrase;

    fn phrase(alpha: &Arc<InvolutiveAlphabet>, text: &str) -> Nanophrase {
        let words: Vec<Vec<&str>> = text
            .split('|')
            .map(|w| w.split_whitespace().collect())
            .collect();
        desingularize(&EtalePhrase::on_alphabet(alpha.clone(), &words).unwrap())
    }

    fn alpha0() -> Arc<InvolutiveAlphabet> {
        Arc::new(InvolutiveAlphabet::alpha0())
    }

    fn one() -> Arc<InvolutiveAlphabet> {
        Arc::new(InvolutiveAlphabet::one_element())
    }

    #[test]
    fn length_vector_examples() {
        let a = alpha0();
        assert_eq!(component_length_vector(&phrase(&a, "| |")).0, vec![0, 0, 0]);
        assert_eq!(component_length_vector(&phrase(&a, "a | a")).0, vec![1, 1]);
        let letters = crate::phrase::AlphaAlphabet::new(&a, &[("A", "a"), ("B", "b")]).unwrap();
        let n = Nanophrase::new(a.clone(), letters, &[vec!["A", "B"], vec!["B", "A"]]).unwrap();
        assert_eq!(component_length_vector(&n).0, vec![0, 0]);
    }

    #[test]
    fn linking_examples() {
        let a = alpha0();
        let pi = a.pi();
        let lk = linking_vector(&phrase(&a, "a | a"));
        assert_eq!(lk.get(1, 2), &pi.embed_name("a").unwrap());
        let letters = crate::phrase::AlphaAlphabet::new(&a, &[("A", "a"), ("B", "b")]).unwrap();
        let n = Nanophrase::new(a.clone(), letters, &[vec!["A", "B"], vec!["B", "A"]]).unwrap();
        assert!(linking_vector(&n).get(1, 2).is_unit());
        assert!(linking_vector(&phrase(&a, "a a |")).get(1, 2).is_unit());
    }

    #[test]
    fn linking_index_order() {
        let a = alpha0();
        // P111 over 4 components at 1, 2, 4
        let lk = linking_vector(&phrase(&a, "a | a | | a"));
        let pairs: Vec<_> = lk.pairs().collect();
        assert_eq!(pairs, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let units: Vec<bool> = lk.entries.iter().map(PiElement::is_unit).collect();
        assert_eq!(units, [false, true, false, true, false, true]);
    }

    #[test]
    fn t_values_on_normal_forms() {
        let a = alpha0();
        assert_eq!(t_alpha0(&phrase(&a, "a a | a")).unwrap().values, vec![1, 0]);
        assert_eq!(
            t_alpha0(&phrase(&a, "a | a a")).unwrap().values,
            vec![0, -1]
        );
        assert_eq!(t_alpha0(&phrase(&a, "b b | b")).unwrap().values, vec![1, 0]);
        assert_eq!(t_alpha0(&phrase(&a, "a a")).unwrap().values, vec![0]);
        let o = one();
        assert_eq!(t_one(&phrase(&o, "a | a a")).unwrap().values, vec![0, 1]);
        assert_eq!(t_one(&phrase(&o, "a a | a")).unwrap().values, vec![1, 0]);
        assert!(t_one(&phrase(&a, "a a")).is_err());
        assert!(t_alpha0(&phrase(&o, "a a")).is_err());
    }

    #[test]
    fn t_one_on_abab() {
        let o = one();
        let letters = crate::phrase::AlphaAlphabet::new(&o, &[("A", "a"), ("B", "a")]).unwrap();
        let n = Nanophrase::new(o.clone(), letters, &[vec!["A", "B", "A", "B"]]).unwrap();
        assert_eq!(t_one(&n).unwrap().values, vec![0]);
        assert_eq!(t_one(&phrase(&o, "| |")).unwrap().values, vec![0, 0, 0]);
    }

    #[test]
    fn so_values_on_normal_forms() {
        let o = one();
        let so = s_o(&phrase(&o, "a a | a")).unwrap();
        assert_eq!(so.sets[0].iter().collect::<Vec<_>>(), [&vec![0, 1]]);
        assert!(so.sets[1].is_empty());
        let so = s_o(&phrase(&o, "a | | a a")).unwrap();
        assert!(so.sets[0].is_empty() && so.sets[1].is_empty());
        assert_eq!(so.sets[2].iter().collect::<Vec<_>>(), [&vec![1, 0, 0]]);
        let so = s_o(&phrase(&o, "a a |")).unwrap();
        assert!(so.sets.iter().all(BTreeSet::is_empty));
    }

    #[test]
    fn word_linking_detects_triple_letter() {
        let a = alpha0();
        let wl = word_linking(&phrase(&a, "a a a"));
        assert_eq!(
            InvariantValue::WordLinking(wl).render(&a),
            "(1[a:a^-1] 1[a:a])"
        );
        // the mirror symbol gives the negated sum
        let wl = word_linking(&phrase(&a, "b b b"));
        assert_eq!(
            InvariantValue::WordLinking(wl).render(&a),
            "(-1[a:a^-1] -1[a:a])"
        );
        let o = one();
        assert!(word_linking(&phrase(&o, "a a a")).0[0].is_empty());
        assert!(word_linking(&phrase(&a, "a a | a"))
            .0
            .iter()
            .all(BTreeMap::is_empty));
    }

    #[test]
    fn u_l_examples() {
        let alpha = Arc::new(InvolutiveAlphabet::new(&["a", "b", "c"], &[("a", "b")]).unwrap());
        let n = phrase(&alpha, "a a | a");
        let image = u_l_named(&n, &["a"]).unwrap();
        assert_eq!(image.words_text(), n.words_text());
        assert_eq!(image.alphabet().len(), 2);
        let m = phrase(&alpha, "c | c");
        let image = u_l_named(&m, &["a"]).unwrap();
        assert_eq!(image.canonical(), GaussCode::empty(2).canonical());
        let all = u_l_named(&m, &["a", "c"]).unwrap();
        assert_eq!(all.canonical(), m.canonical());
        assert!(matches!(
            u_l_named(&n, &["b"]),
            Err(Error::NotRepresentative(_))
        ));
    }

    #[test]
    fn battery_witnesses() {
        let a = alpha0();
        let w = invariant_battery(&phrase(&a, "a | a"), &phrase(&a, "|")).unwrap();
        assert_eq!(w.invariant, "w");
        assert_eq!((w.left.as_str(), w.right.as_str()), ("(1,1)", "(0,0)"));
        let w = invariant_battery(&phrase(&a, "a a | a | "), &phrase(&a, "a | a | a")).unwrap();
        assert_eq!(w.invariant, "lk");
        assert!(invariant_battery(&phrase(&a, "a a | a"), &phrase(&a, "a a | a")).is_none());
    }

    #[test]
    fn battery_uses_restrictions() {
        let alpha = Arc::new(InvolutiveAlphabet::new(&["a", "b", "c"], &[("a", "b")]).unwrap());
        let w = invariant_battery(&phrase(&alpha, "c c | c"), &phrase(&alpha, "|")).unwrap();
        assert_eq!(w.invariant, "UL[c].T");
    }
}
