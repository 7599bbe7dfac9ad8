use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

/// Dense element id. Id 0 is always the unit.
pub type Letter = u16;

pub const UNIT: Letter = 0;

/// A finite sequence of letters. Words may contain the unit; the canonical
/// form of a word drops every unit letter.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn single(x: Letter) -> Self {
        Word::from_slice(&[x])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn is_canonical(&self) -> bool {
        !self.0.contains(&UNIT)
    }

    pub fn canonical(&self) -> Word {
        if self.is_canonical() {
            self.clone()
        } else {
            self.0.iter().copied().filter(|&x| x != UNIT).collect()
        }
    }

    /// Contiguous subword `[i, j)`.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        Word::from_slice(&self.0[i..j])
    }

    pub fn map(&self, f: impl Fn(Letter) -> Letter) -> Word {
        self.0.iter().map(|&x| f(x)).collect()
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

// Hash, Eq and Ord all agree with the slice impls, so set lookups by slice
// are sound.
impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word::from_slice(s)
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(s: [Letter; N]) -> Self {
        Word::from_slice(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}
