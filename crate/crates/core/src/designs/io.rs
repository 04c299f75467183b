//! Text and JSON loaders for squares, pairs and nets.
//!
//! Square files hold `n` lines of `n` whitespace-separated tokens; a line
//! whose first non-blank character is `#` is a comment. Tokens may be any
//! strings and are numbered in order of first appearance (row-major).
//! In a pair file each token is a Latin symbol (its first character)
//! followed directly by a Greek symbol (the rest), e.g. `bζ`.

use serde::{Deserialize, Serialize};

use super::{validate_latin, validate_net, DesignError, GraecoPair, LatinSquare, Net};

/// Maps file tokens to symbol numbers in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    pub fn intern(&mut self, token: &str) -> usize {
        if let Some(i) = self.tokens.iter().position(|t| t == token) {
            return i;
        }
        self.tokens.push(token.to_string());
        self.tokens.len() - 1
    }

    pub fn index(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn token(&self, symbol: usize) -> &str {
        &self.tokens[symbol]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedSquare {
    pub square: LatinSquare,
    pub alphabet: Alphabet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedPair {
    pub pair: GraecoPair,
    pub latin_alphabet: Alphabet,
    pub greek_alphabet: Alphabet,
}

impl LoadedPair {
    /// Renders a symbol pair with the file's own tokens.
    pub fn name(&self, pair: (u8, u8)) -> String {
        format!(
            "{}{}",
            self.latin_alphabet.token(pair.0 as usize),
            self.greek_alphabet.token(pair.1 as usize)
        )
    }
}

fn token_rows(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| (i + 1, l.split_whitespace().collect()))
        .collect()
}

pub fn parse_latin_square(text: &str) -> Result<LoadedSquare, DesignError> {
    let mut alphabet = Alphabet::default();
    let cells: Vec<Vec<usize>> = token_rows(text)
        .into_iter()
        .map(|(_, row)| row.iter().map(|t| alphabet.intern(t)).collect())
        .collect();
    let square = validate_latin(&cells)?;
    Ok(LoadedSquare { square, alphabet })
}

pub fn parse_graeco_pair(text: &str) -> Result<LoadedPair, DesignError> {
    let mut latin_alphabet = Alphabet::default();
    let mut greek_alphabet = Alphabet::default();
    let mut latin = Vec::new();
    let mut greek = Vec::new();
    for (line, row) in token_rows(text) {
        let mut lrow = Vec::new();
        let mut grow = Vec::new();
        for tok in row {
            let mut chars = tok.chars();
            let first = chars.next().expect("split_whitespace yields nonempty tokens");
            let rest = chars.as_str();
            if rest.is_empty() {
                return Err(DesignError::Parse {
                    line,
                    reason: format!("token {tok:?} has no second symbol"),
                });
            }
            lrow.push(latin_alphabet.intern(first.encode_utf8(&mut [0; 4])));
            grow.push(greek_alphabet.intern(rest));
        }
        latin.push(lrow);
        greek.push(grow);
    }
    let pair = GraecoPair::new(validate_latin(&latin)?, validate_latin(&greek)?)?;
    Ok(LoadedPair {
        pair,
        latin_alphabet,
        greek_alphabet,
    })
}

const LATIN_TOKENS: [char; 10] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j'];
const GREEK_TOKENS: [char; 10] = ['α', 'β', 'γ', 'δ', 'ε', 'ζ', 'η', 'θ', 'ι', 'κ'];

/// Writes a pair as `Xy` tokens (`a..` and `α..`), one row per line. Orders
/// above 10 are not representable.
pub fn format_graeco_pair(pair: &GraecoPair) -> String {
    let n = pair.order();
    assert!(n <= LATIN_TOKENS.len(), "order {n} has no token set");
    let mut out = String::new();
    for r in 0..n {
        let row: Vec<String> = (0..n)
            .map(|c| {
                let (x, y) = (pair.latin().get(r, c), pair.greek().get(r, c));
                format!("{}{}", LATIN_TOKENS[x as usize], GREEK_TOKENS[y as usize])
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses several pair blocks separated by blank lines.
pub fn parse_graeco_pairs(text: &str) -> Result<Vec<LoadedPair>, DesignError> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !token_rows(&block).is_empty() {
                out.push(parse_graeco_pair(&block)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(out)
}

/// Builds a pair from two separately loaded squares.
pub fn pair_from_squares(latin: LoadedSquare, greek: LoadedSquare) -> Result<LoadedPair, DesignError> {
    Ok(LoadedPair {
        pair: GraecoPair::new(latin.square, greek.square)?,
        latin_alphabet: latin.alphabet,
        greek_alphabet: greek.alphabet,
    })
}

/// The on-disk net format: points are row-major grid indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetFile {
    pub n: usize,
    pub k: usize,
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl From<&Net> for NetFile {
    fn from(net: &Net) -> Self {
        NetFile {
            n: net.order(),
            k: net.num_classes(),
            classes: net.classes().to_vec(),
        }
    }
}

pub fn parse_net_json(text: &str) -> Result<Net, DesignError> {
    let file: NetFile = serde_json::from_str(text).map_err(|e| DesignError::Parse {
        line: e.line(),
        reason: e.to_string(),
    })?;
    if file.k != file.classes.len() {
        return Err(DesignError::ClassCountMismatch {
            declared: file.k,
            found: file.classes.len(),
        });
    }
    validate_net(file.n, file.classes)
}
