//! Words over a finite alphabet of generators.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word, read left to right in path order. Operations keep words freely
/// reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator index {0} is not in the alphabet")]
    ForeignLetter(usize),
    #[error("malformed exponent in '{0}'")]
    BadExponent(String),
}

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(generator: usize) -> Self {
        Self(vec![Letter::new(generator, false)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect()).reduced()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Exponent sum per generator.
    pub fn exponents(&self, generators: usize) -> Vec<i64> {
        let mut e = vec![0; generators];
        for l in &self.0 {
            e[l.generator] += if l.inverse { -1 } else { 1 };
        }
        e
    }

    pub fn check_alphabet(&self, generators: usize) -> Result<(), WordError> {
        match self.0.iter().find(|l| l.generator >= generators) {
            Some(l) => Err(WordError::ForeignLetter(l.generator)),
            None => Ok(()),
        }
    }

    /// Parses tokens such as `g1^2 g2^-1`, separated by spaces or `*`.
    /// `1` and the empty string denote the empty word.
    pub fn parse(s: &str, names: &[String]) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if token == "1" {
                continue;
            }
            let (name, power) = match token.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| WordError::BadExponent(token.into()))?),
                None => (token, 1),
            };
            let generator = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| WordError::UnknownGenerator(name.into()))?;
            let letter = Letter::new(generator, power < 0);
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        Ok(Word(letters).reduced())
    }

    /// Renders with caret powers; the empty word is `1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let power = (j - i) as i64 * if l.inverse { -1 } else { 1 };
            let name = names.get(l.generator).cloned().unwrap_or_else(|| format!("#{}", l.generator));
            parts.push(if power == 1 { name } else { format!("{name}^{power}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.0.iter().map(|l| l.generator).max().unwrap_or(0))
            .map(|i| format!("g{}", i + 1))
            .collect();
        f.write_str(&self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["g1".into(), "g2".into()]
    }

    #[test]
    fn parse_and_format() {
        let w = Word::parse("g1^2 * g2^-1 g2 g1", &names()).unwrap();
        assert_eq!(w.format(&names()), "g1^3");
        assert_eq!(Word::parse("1", &names()).unwrap(), Word::empty());
        assert!(matches!(Word::parse("h", &names()), Err(WordError::UnknownGenerator(_))));
        assert!(matches!(Word::parse("g1^x", &names()), Err(WordError::BadExponent(_))));
        let w = Word::parse("g2^-2 g1", &names()).unwrap();
        assert_eq!(Word::parse(&w.format(&names()), &names()).unwrap(), w);
    }

    #[test]
    fn group_operations() {
        let w = Word::parse("g1 g2^-1", &names()).unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.exponents(2), vec![1, -1]);
        assert!(Word::letter(3).check_alphabet(2).is_err());
    }
}
