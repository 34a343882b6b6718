//! Reduced words in a free group `F_r`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter `x_g^{±1}`; generators are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A non-trivial reduced word. Letters are stored left to right as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Freely reduces `letters`; fails if nothing is left.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator == 0 {
                return Err(Error::Parse("generators are numbered from 1".into()));
            }
            if stack.last().is_some_and(|&top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        if stack.is_empty() {
            return Err(Error::TrivialWord);
        }
        Ok(Self { letters: stack })
    }

    /// `x_g`.
    pub fn generator(g: usize) -> Result<Self> {
        Self::from_letters([Letter { generator: g, inverse: false }])
    }

    /// `x_1^ℓ`, or `x_1^{-ℓ}` when `inverse` is set.
    pub fn power(ell: usize, inverse: bool) -> Result<Self> {
        Self::from_letters(std::iter::repeat_n(Letter { generator: 1, inverse }, ell))
    }

    /// The commutator `[x_1, x_2] = x_1 x_2 x_1^{-1} x_2^{-1}`.
    pub fn commutator() -> Self {
        parse_word("x1 x2 x1^-1 x2^-1").expect("commutator is reduced")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn length(&self) -> usize {
        self.letters.len()
    }

    /// Largest generator index that occurs.
    pub fn rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// `w1 * w2`: the generators of `w2` are shifted past the rank of `w1`.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let offset = self.rank();
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|l| Letter { generator: l.generator + offset, ..*l }));
        FreeWord { letters }
    }

    /// `w^{*t}`; `t` must be at least 1.
    pub fn self_concat(&self, t: usize) -> Result<FreeWord> {
        if t == 0 {
            return Err(Error::TrivialWord);
        }
        Ok((1..t).fold(self.clone(), |acc, _| acc.concat(self)))
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Strips letters that cancel cyclically; the result is conjugate to `self`.
    pub fn cyclically_reduce(&self) -> FreeWord {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k].cancels(l[l.len() - 1 - k]) {
            k += 1;
        }
        FreeWord { letters: l[k..l.len() - k].to_vec() }
    }

    /// `Some((g, ℓ, inverse))` when the word is `x_g^{±ℓ}`.
    pub fn as_power(&self) -> Option<(usize, usize, bool)> {
        let first = self.letters[0];
        self.letters.iter().all(|&l| l == first).then_some((first.generator, self.length(), first.inverse))
    }
}

/// Parses whitespace-separated terms `x<INT>` or `x<INT>^<SIGNED_INT>`.
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let bad = || Error::Parse(format!("bad word token {token:?}"));
        let body = token.strip_prefix('x').ok_or_else(bad)?;
        let (gen, exp) = match body.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        if gen.is_empty() || !gen.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let generator: usize = gen.parse().map_err(|_| bad())?;
        if generator == 0 {
            return Err(bad());
        }
        let letter = Letter { generator, inverse: exp < 0 };
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    FreeWord::from_letters(letters)
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl fmt::Display for FreeWord {
    /// Runs of a repeated letter are written as one power, e.g. `x1^3 x2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "x{}", l.generator)?;
            } else {
                write!(f, "x{}^{exp}", l.generator)?;
            }
            i += run;
        }
        Ok(())
    }
}
