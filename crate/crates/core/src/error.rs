use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{0}` appears in more than one involution pair")]
    SymbolInTwoPairs(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("a phrase needs at least one component")]
    NoComponents,
    #[error("letter `{letter}` occurs {count} times; a nanophrase needs exactly 2")]
    NotGauss { letter: String, count: usize },
    #[error("phrase has {0} letters, more than the supported maximum")]
    TooManyLetters(usize),
    #[error("phrases are over different base alphabets")]
    AlphabetMismatch,
    #[error("alphabet has the wrong shape: {0}")]
    AlphabetShape(String),
    #[error("symbol `{0}` is not a representative of its orbit")]
    NotRepresentative(String),
    #[error("move does not apply: {0}")]
    StaleMove(String),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("letter `{0}` has multiplicity one")]
    MultiplicityOne(String),
    #[error("phrase has {0} entries, more than the classifier handles")]
    TooManyEntries(usize),
    #[error("word is not one of the classified forms: {0}")]
    UnlistedWordForm(String),
    #[error("no invariant separates {0} and {1}")]
    NoSeparatingInvariant(String, String),
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
