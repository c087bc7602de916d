use std::fmt;

use serde::Serialize;

/// Word in the Artin generators; letter `±i` is `σ_i^{±1}`, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Panics if a letter is zero or names a generator outside `1..strands`.
    pub fn new(strands: usize, letters: Vec<i32>) -> Self {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            assert!(i >= 1 && i < strands, "generator {l} on {strands} strands");
        }
        Self { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn push(&mut self, letter: i32) {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < self.strands, "generator {letter} on {} strands", self.strands);
        self.letters.push(letter);
    }

    pub fn extend_from(&mut self, other: &BraidWord) {
        assert_eq!(self.strands, other.strands);
        self.letters.extend_from_slice(&other.letters);
    }

    /// Positive full twist `(σ_a … σ_{b-1})^{b-a+1}` on strands `a..=b`.
    pub fn full_twist(strands: usize, a: usize, b: usize) -> Self {
        let mut w = Self::identity(strands);
        for _ in a..=b {
            for i in a..b {
                w.push(i as i32);
            }
        }
        w
    }

    /// Free reduction of adjacent `σσ⁻¹` pairs.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("S{}", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
