use std::collections::HashSet;
use std::path::{Path, PathBuf};

use super::WordClass;

const DEFAULT_LEXICON: &str = include_str!("../../data/function_words.txt");

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon {path} contains no entries")]
    Empty { path: PathBuf },
}

/// Closed-class word list. Lookup is case-insensitive; anything absent is
/// treated as an open-class word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    closed: HashSet<String>,
}

impl Lexicon {
    /// Parses the plain-text format: one word per line, `#` starts a comment.
    pub fn parse(text: &str) -> Self {
        let closed = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|word| !word.is_empty())
            .map(normalize)
            .collect();
        Lexicon { closed }
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let lexicon = Self::parse(&text);
        if lexicon.is_empty() {
            return Err(LexiconError::Empty {
                path: path.to_path_buf(),
            });
        }
        Ok(lexicon)
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Lexicon {
            closed: words.into_iter().map(|w| normalize(w.as_ref())).collect(),
        }
    }

    pub fn classify(&self, word: &str) -> WordClass {
        if self.closed.contains(&normalize(word)) {
            WordClass::Closed
        } else {
            WordClass::Open
        }
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }
}

impl Default for Lexicon {
    /// The shipped function-word list.
    fn default() -> Self {
        Self::parse(DEFAULT_LEXICON)
    }
}

fn normalize(word: &str) -> String {
    word.to_lowercase().replace('\u{2019}', "'")
}
