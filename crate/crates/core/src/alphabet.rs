//! Base alphabets with an involution, their orbit structure, and the abelian
//! group generated by the symbols subject to `s * tau(s) = 1`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Interned symbol of an [`InvolutiveAlphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u16);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Orbits of the involution. Two-element orbits come first, each keyed by
/// its earliest declared member, then the fixed points in declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub two_orbits: Vec<(Sym, Sym)>,
    pub fixed_points: Vec<Sym>,
    /// One representative per orbit, in the order above.
    pub crs: Vec<Sym>,
    slot: Vec<usize>,
    sign: Vec<i64>,
}

impl OrbitDecomposition {
    fn new(tau: &[u16]) -> Self {
        let mut two_orbits = Vec::new();
        let mut fixed_points = Vec::new();
        for (x, &t) in tau.iter().enumerate() {
            let t = t as usize;
            if t == x {
                fixed_points.push(Sym(x as u16));
            } else if x < t {
                two_orbits.push((Sym(x as u16), Sym(t as u16)));
            }
        }
        let crs: Vec<Sym> = two_orbits
            .iter()
            .map(|&(r, _)| r)
            .chain(fixed_points.iter().copied())
            .collect();
        let mut slot = vec![0; tau.len()];
        let mut sign = vec![1; tau.len()];
        for (i, &(r, t)) in two_orbits.iter().enumerate() {
            slot[r.index()] = i;
            slot[t.index()] = i;
            sign[t.index()] = -1;
        }
        for (i, &f) in fixed_points.iter().enumerate() {
            slot[f.index()] = two_orbits.len() + i;
        }
        OrbitDecomposition {
            two_orbits,
            fixed_points,
            crs,
            slot,
            sign,
        }
    }

    /// Number of two-element orbits.
    pub fn free_rank(&self) -> usize {
        self.two_orbits.len()
    }

    /// Index into `crs` of the orbit containing `s`.
    pub fn slot(&self, s: Sym) -> usize {
        self.slot[s.index()]
    }

    /// `+1` if `s` is its orbit's representative, `-1` if it is the partner.
    pub fn sign(&self, s: Sym) -> i64 {
        self.sign[s.index()]
    }

    pub fn is_fixed_slot(&self, slot: usize) -> bool {
        slot >= self.two_orbits.len()
    }
}

/// A finite alphabet with an involution `tau`.
#[derive(Debug, Clone)]
pub struct InvolutiveAlphabet {
    names: Vec<String>,
    tau: Vec<u16>,
    index: HashMap<String, Sym>,
    orbits: OrbitDecomposition,
}

impl PartialEq for InvolutiveAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.tau == other.tau
    }
}

impl Eq for InvolutiveAlphabet {}

impl InvolutiveAlphabet {
    /// Builds an alphabet from declared symbols and the 2-cycles of `tau`.
    /// Symbols that appear in no pair are fixed points.
    pub fn new<S: AsRef<str>>(symbols: &[S], tau_pairs: &[(S, S)]) -> Result<Self> {
        if symbols.len() > u16::MAX as usize {
            return Err(Error::AlphabetShape("too many symbols".into()));
        }
        let mut names = Vec::with_capacity(symbols.len());
        let mut index = HashMap::new();
        for s in symbols {
            let s = s.as_ref();
            if !is_valid_name(s) {
                return Err(Error::InvalidName(s.to_string()));
            }
            if index
                .insert(s.to_string(), Sym(names.len() as u16))
                .is_some()
            {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
            names.push(s.to_string());
        }
        let mut tau: Vec<u16> = (0..names.len() as u16).collect();
        let mut paired = vec![false; names.len()];
        for (x, y) in tau_pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            let sx = *index
                .get(x)
                .ok_or_else(|| Error::UnknownSymbol(x.to_string()))?;
            let sy = *index
                .get(y)
                .ok_or_else(|| Error::UnknownSymbol(y.to_string()))?;
            if sx == sy {
                // (x x) is a fixed point written out explicitly
                if paired[sx.index()] {
                    return Err(Error::SymbolInTwoPairs(x.to_string()));
                }
                paired[sx.index()] = true;
                continue;
            }
            for (s, name) in [(sx, x), (sy, y)] {
                if paired[s.index()] {
                    return Err(Error::SymbolInTwoPairs(name.to_string()));
                }
                paired[s.index()] = true;
            }
            tau[sx.index()] = sy.0;
            tau[sy.index()] = sx.0;
        }
        let orbits = OrbitDecomposition::new(&tau);
        Ok(InvolutiveAlphabet {
            names,
            tau,
            index,
            orbits,
        })
    }

    /// The two-element alphabet `{a, b}` with `tau` swapping the symbols.
    pub fn alpha0() -> Self {
        Self::new(&["a", "b"], &[("a", "b")]).expect("static alphabet")
    }

    /// The one-element alphabet `{a}`.
    pub fn one_element() -> Self {
        Self::new(&["a"], &[]).expect("static alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.names.len() as u16).map(Sym)
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.index()]
    }

    pub fn lookup(&self, name: &str) -> Result<Sym> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn tau(&self, s: Sym) -> Sym {
        Sym(self.tau[s.index()])
    }

    pub fn orbits(&self) -> &OrbitDecomposition {
        &self.orbits
    }

    pub fn crs(&self) -> &[Sym] {
        &self.orbits.crs
    }

    /// True for the shape of `alpha0`: two symbols exchanged by `tau`.
    pub fn is_swap_pair(&self) -> bool {
        self.len() == 2 && self.orbits.two_orbits.len() == 1
    }

    pub fn is_one_element(&self) -> bool {
        self.len() == 1
    }

    /// Sub-alphabet on the symbols satisfying `keep`, which must be closed
    /// under `tau`. Returns the alphabet and the old-to-new symbol map.
    pub fn restrict(&self, keep: impl Fn(Sym) -> bool) -> (Self, Vec<Option<Sym>>) {
        let mut map = vec![None; self.len()];
        let mut names = Vec::new();
        for s in self.symbols() {
            if keep(s) {
                debug_assert!(keep(self.tau(s)), "restriction must be tau-closed");
                map[s.index()] = Some(Sym(names.len() as u16));
                names.push(self.names[s.index()].clone());
            }
        }
        let tau: Vec<u16> = self
            .symbols()
            .filter_map(|s| map[s.index()].map(|_| map[self.tau(s).index()].unwrap().0))
            .collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Sym(i as u16)))
            .collect();
        let orbits = OrbitDecomposition::new(&tau);
        (
            InvolutiveAlphabet {
                names,
                tau,
                index,
                orbits,
            },
            map,
        )
    }

    pub fn pi(&self) -> PiGroup<'_> {
        PiGroup { alphabet: self }
    }

    /// `alpha: ...` / `tau: ...` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::from("alpha:");
        for n in &self.names {
            out.push(' ');
            out.push_str(n);
        }
        out.push_str("\ntau:");
        for &(x, y) in &self.orbits.two_orbits {
            out.push_str(&format!(" ({} {})", self.name(x), self.name(y)));
        }
        out.push('\n');
        out
    }
}

/// Element of the abelian group generated by the alphabet with relations
/// `s * tau(s) = 1`: one exponent per orbit representative, reduced mod 2
/// on fixed points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiElement {
    exponents: Vec<i64>,
}

impl PiElement {
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

/// Group operations on [`PiElement`]s of one alphabet.
#[derive(Clone, Copy)]
pub struct PiGroup<'a> {
    alphabet: &'a InvolutiveAlphabet,
}

impl<'a> PiGroup<'a> {
    pub fn unit(&self) -> PiElement {
        PiElement {
            exponents: vec![0; self.alphabet.crs().len()],
        }
    }

    pub fn embed(&self, s: Sym) -> PiElement {
        let orbits = self.alphabet.orbits();
        let mut x = self.unit();
        x.exponents[orbits.slot(s)] = orbits.sign(s);
        x
    }

    pub fn embed_name(&self, name: &str) -> Result<PiElement> {
        Ok(self.embed(self.alphabet.lookup(name)?))
    }

    fn reduce(&self, mut x: PiElement) -> PiElement {
        let orbits = self.alphabet.orbits();
        for (slot, e) in x.exponents.iter_mut().enumerate() {
            if orbits.is_fixed_slot(slot) {
                *e = e.rem_euclid(2);
            }
        }
        x
    }

    pub fn mul(&self, x: &PiElement, y: &PiElement) -> PiElement {
        let exponents = x
            .exponents
            .iter()
            .zip(&y.exponents)
            .map(|(a, b)| a + b)
            .collect();
        self.reduce(PiElement { exponents })
    }

    /// Multiplies `x` in place by `s`.
    pub fn mul_sym(&self, x: &mut PiElement, s: Sym) {
        let orbits = self.alphabet.orbits();
        let slot = orbits.slot(s);
        let e = &mut x.exponents[slot];
        *e += orbits.sign(s);
        if orbits.is_fixed_slot(slot) {
            *e = e.rem_euclid(2);
        }
    }

    pub fn inverse(&self, x: &PiElement) -> PiElement {
        self.reduce(PiElement {
            exponents: x.exponents.iter().map(|e| -e).collect(),
        })
    }

    pub fn equal(&self, x: &PiElement, y: &PiElement) -> bool {
        self.reduce(x.clone()) == self.reduce(y.clone())
    }

    /// Product notation over the representatives, e.g. `a^2 c`; `1` for the unit.
    pub fn format(&self, x: &PiElement) -> String {
        let parts: Vec<String> = x
            .exponents
            .iter()
            .zip(self.alphabet.crs())
            .filter(|(e, _)| **e != 0)
            .map(|(&e, &s)| {
                let name = self.alphabet.name(s);
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for InvolutiveAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha0_swaps() {
        let a = InvolutiveAlphabet::alpha0();
        let (sa, sb) = (a.lookup("a").unwrap(), a.lookup("b").unwrap());
        assert_eq!(a.tau(sa), sb);
        assert_eq!(a.tau(sb), sa);
        assert_eq!(a.crs(), &[sa]);
        assert!(a.is_swap_pair());
    }

    #[test]
    fn one_element_is_fixed() {
        let a = InvolutiveAlphabet::one_element();
        let s = a.lookup("a").unwrap();
        assert_eq!(a.tau(s), s);
        assert_eq!(a.orbits().fixed_points, vec![s]);
    }

    #[test]
    fn orbits_and_crs() {
        let a = InvolutiveAlphabet::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let o = a.orbits();
        assert_eq!(o.two_orbits, vec![(Sym(0), Sym(1))]);
        assert_eq!(o.fixed_points, vec![Sym(2)]);
        let names: Vec<_> = a.crs().iter().map(|&s| a.name(s)).collect();
        assert_eq!(names, ["a", "c"]);
    }

    #[test]
    fn crs_puts_two_orbits_first() {
        let a = InvolutiveAlphabet::new(&["c", "x", "y", "d"], &[("y", "x")]).unwrap();
        let names: Vec<_> = a.crs().iter().map(|&s| a.name(s)).collect();
        assert_eq!(names, ["x", "c", "d"]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            InvolutiveAlphabet::new(&["a", "a"], &[]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert_eq!(
            InvolutiveAlphabet::new(&["a"], &[("a", "z")]),
            Err(Error::UnknownSymbol("z".into()))
        );
        assert_eq!(
            InvolutiveAlphabet::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
            Err(Error::SymbolInTwoPairs("b".into()))
        );
        assert!(matches!(
            InvolutiveAlphabet::new(&["1a"], &[]),
            Err(Error::InvalidName(_))
        ));
    }

    #[test]
    fn pi_relations() {
        let a0 = InvolutiveAlphabet::alpha0();
        let pi = a0.pi();
        let x = pi.mul(&pi.embed_name("a").unwrap(), &pi.embed_name("b").unwrap());
        assert!(pi.equal(&x, &pi.unit()));
        let aa = pi.mul(&pi.embed_name("a").unwrap(), &pi.embed_name("a").unwrap());
        assert_eq!(aa.exponents(), &[2]);
        assert!(!aa.is_unit());
        assert_eq!(pi.format(&aa), "a^2");

        let one = InvolutiveAlphabet::one_element();
        let pi = one.pi();
        let a = pi.embed_name("a").unwrap();
        assert!(pi.mul(&a, &a).is_unit());
        assert!(pi.embed_name("q").is_err());
    }

    #[test]
    fn restrict_keeps_involution() {
        let a =
            InvolutiveAlphabet::new(&["a", "b", "c", "d", "e"], &[("a", "b"), ("d", "e")]).unwrap();
        let (sub, map) = a.restrict(|s| matches!(a.name(s), "d" | "e"));
        assert_eq!(sub.len(), 2);
        assert!(sub.is_swap_pair());
        assert_eq!(map[3], Some(Sym(0)));
        assert_eq!(map[0], None);
    }
}
