use std::fmt;

use super::MonodromyError;

/// A freely reduced word; letter `±i` is generator `i` (1-based) or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i8>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: u8) -> Self {
        assert!(i >= 1 && i <= i8::MAX as u8, "generators are 1-based");
        Word(vec![i as i8])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i8>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i8) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.mul(self).mul(&g.inverse())
    }

    /// Replace generator `i` by `images[i-1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        self.0.iter().fold(Word::identity(), |acc, &l| {
            let img = &images[l.unsigned_abs() as usize - 1];
            acc.mul(&if l > 0 { img.clone() } else { img.inverse() })
        })
    }

    /// Letters of each generator with signs summed up, `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut s = &self.0[..];
        while s.len() >= 2 && s[0] == -s[s.len() - 1] {
            s = &s[1..s.len() - 1];
        }
        Word(s.to_vec())
    }

    /// Conjugacy in the free group: cyclic reductions agree up to rotation.
    pub fn is_conjugate(&self, other: &Word) -> bool {
        let (a, b) = (self.cyclically_reduced(), other.cyclically_reduced());
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|r| a.0[r..].iter().chain(&a.0[..r]).eq(b.0.iter()))
    }

    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [&'a str],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(self.names[l.unsigned_abs() as usize - 1])?;
            let e = run as i64 * l.signum() as i64;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parse a word over `names`, in the spellings accepted by matrix fixtures.
pub fn parse_word(text: &str, names: &[&str]) -> Result<Word, MonodromyError> {
    let parsed = crate::fixture::MatrixWord::parse(text)?;
    let mut w = Word::identity();
    for (name, e) in parsed.letters {
        let i = names
            .iter()
            .position(|n| n.eq_ignore_ascii_case(&name))
            .ok_or_else(|| MonodromyError::UnknownGenerator(name.clone()))?;
        w = w.mul(&Word::gen(i as u8 + 1).pow(e as i64));
    }
    Ok(w)
}
