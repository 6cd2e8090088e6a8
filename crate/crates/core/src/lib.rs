//! Words and phrases over an alphabet with involution, their homotopy moves,
//! invariants, and a classifier for phrases with few letters.

pub mod alphabet;
pub mod classify;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod phrase;
pub mod search;
pub mod text;

pub use alphabet::{InvolutiveAlphabet, PiElement, PiGroup, Sym};
pub use classify::{
    atlas, classify_phrase, classify_word, distinguish, realize, Certificate, NormalForm, Shape,
    WordClass,
};
pub use error::{Error, Result};
pub use moves::{apply_move, find_moves, inverse_move, MoveApplication, MoveKind};
pub use phrase::{
    canonicalize, desingularize, isomorphic, AlphaAlphabet, CanonicalKey, EtalePhrase, Nanophrase,
};
pub use search::{contract_bounded, homotopic_bounded, SearchBudget, Verdict};
pub use text::{parse_alphabet, parse_document, serialize_document, ReportFormat};
