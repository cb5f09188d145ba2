//! Normally ordered operator words and Wick (Isserlis) factorization.
//!
//! For a zero-mean Gaussian state every normally ordered moment is a sum over
//! perfect pairings of its ladder operators, each pair contributing the
//! normally ordered second moment of the two operators it joins.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{SecondMoments, TwoModeState};

/// Longest word the pairing engine accepts; 15!! pairings at the limit.
pub const MAX_WORD_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    A,
    B,
}

/// One annihilation (`dagger == false`) or creation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Ladder {
    pub mode: Mode,
    pub dagger: bool,
}

impl Ladder {
    pub const A: Ladder = Ladder { mode: Mode::A, dagger: false };
    pub const A_DAG: Ladder = Ladder { mode: Mode::A, dagger: true };
    pub const B: Ladder = Ladder { mode: Mode::B, dagger: false };
    pub const B_DAG: Ladder = Ladder { mode: Mode::B, dagger: true };

    pub fn adjoint(self) -> Ladder {
        Ladder {
            dagger: !self.dagger,
            ..self
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.mode {
            Mode::A => 'a',
            Mode::B => 'b',
        };
        if self.dagger {
            write!(f, "{name}†")
        } else {
            write!(f, "{name}")
        }
    }
}

/// A normally ordered product of ladder operators: every creation operator
/// precedes every annihilation operator. Operators of the same kind commute,
/// so their relative order inside each group is free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorWord {
    tokens: Vec<Ladder>,
}

impl OperatorWord {
    pub fn new(tokens: Vec<Ladder>) -> Result<Self> {
        if let Some(pos) = tokens.windows(2).position(|w| !w[0].dagger && w[1].dagger) {
            let word = OperatorWord { tokens };
            return Err(Error::NotNormallyOrdered(format!(
                "`{word}` has a creation operator after an annihilation operator at position {}",
                pos + 1
            )));
        }
        if tokens.len() > MAX_WORD_LEN {
            return Err(Error::InvalidParameter {
                name: "word",
                reason: format!("length {} exceeds {MAX_WORD_LEN}", tokens.len()),
            });
        }
        Ok(OperatorWord { tokens })
    }

    /// The identity (empty word); its expectation is 1.
    pub fn identity() -> Self {
        OperatorWord::default()
    }

    /// `a†^p b†^q a^r b^s`.
    pub fn monomial(a_dag: usize, b_dag: usize, a: usize, b: usize) -> Self {
        let mut tokens = Vec::with_capacity(a_dag + b_dag + a + b);
        tokens.extend(std::iter::repeat_n(Ladder::A_DAG, a_dag));
        tokens.extend(std::iter::repeat_n(Ladder::B_DAG, b_dag));
        tokens.extend(std::iter::repeat_n(Ladder::A, a));
        tokens.extend(std::iter::repeat_n(Ladder::B, b));
        OperatorWord { tokens }
    }

    /// Every distinct monomial `a†^p b†^q a^r b^s` with `1 <= p+q+r+s <= max_len`.
    pub fn monomials_up_to(max_len: usize) -> Vec<OperatorWord> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for p in 0..=len {
                for q in 0..=len - p {
                    for r in 0..=len - p - q {
                        out.push(OperatorWord::monomial(p, q, r, len - p - q - r));
                    }
                }
            }
        }
        out
    }

    pub fn tokens(&self) -> &[Ladder] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Exponents `(p, q, r, s)` of `a†^p b†^q a^r b^s`.
    pub fn exponents(&self) -> (usize, usize, usize, usize) {
        let count = |l: Ladder| self.tokens.iter().filter(|&&t| t == l).count();
        (
            count(Ladder::A_DAG),
            count(Ladder::B_DAG),
            count(Ladder::A),
            count(Ladder::B),
        )
    }

    /// Hermitian adjoint; reversing a normally ordered word and swapping
    /// daggers yields another normally ordered word.
    pub fn adjoint(&self) -> OperatorWord {
        OperatorWord {
            tokens: self.tokens.iter().rev().map(|t| t.adjoint()).collect(),
        }
    }

    pub fn involves(&self, mode: Mode) -> bool {
        self.tokens.iter().any(|t| t.mode == mode)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parses words such as `"a+ a+ a a"`, `"a† b† a b"` or `"a+^2 b^2"`.
/// Accepted dagger marks are `+`, `†`, `'` and `d`.
impl FromStr for OperatorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for raw in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (body, power) = match raw.split_once('^') {
                Some((body, p)) => {
                    let p: usize = p.parse().map_err(|_| Error::InvalidParameter {
                        name: "word",
                        reason: format!("bad exponent in `{raw}`"),
                    })?;
                    (body, p)
                }
                None => (raw, 1),
            };
            let mut chars = body.chars();
            let mode = match chars.next() {
                Some('a') => Mode::A,
                Some('b') => Mode::B,
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "word",
                        reason: format!("unknown operator `{raw}`"),
                    })
                }
            };
            let dagger = match chars.as_str() {
                "" => false,
                "+" | "†" | "'" | "d" => true,
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "word",
                        reason: format!("unknown operator `{raw}`"),
                    })
                }
            };
            tokens.extend(std::iter::repeat_n(Ladder { mode, dagger }, power));
        }
        OperatorWord::new(tokens)
    }
}

/// Normally ordered expectation of `first * second` for operators appearing
/// in that order inside a normally ordered word.
fn contraction(m: &SecondMoments, first: Ladder, second: Ladder) -> Complex64 {
    use Mode::{A, B};
    match (first.dagger, second.dagger) {
        (true, false) => match (first.mode, second.mode) {
            (A, A) => Complex64::from(m.n_a),
            (B, B) => Complex64::from(m.n_b),
            (A, B) => m.adag_b,
            (B, A) => m.adag_b.conj(),
        },
        (false, false) => match (first.mode, second.mode) {
            (A, A) => m.aa,
            (B, B) => m.bb,
            _ => m.ab,
        },
        (true, true) => match (first.mode, second.mode) {
            (A, A) => m.aa.conj(),
            (B, B) => m.bb.conj(),
            _ => m.ab.conj(),
        },
        // excluded by the normal-ordering invariant of `OperatorWord`
        (false, true) => unreachable!("annihilator before creator in a normally ordered word"),
    }
}

fn pairing_sum(m: &SecondMoments, tokens: &[Ladder], mask: u32) -> Complex64 {
    if mask == 0 {
        return Complex64::from(1.0);
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut total = Complex64::from(0.0);
    let mut scan = rest;
    while scan != 0 {
        let j = scan.trailing_zeros() as usize;
        scan &= !(1 << j);
        let pair = contraction(m, tokens[i], tokens[j]);
        if pair != Complex64::from(0.0) {
            total += pair * pairing_sum(m, tokens, rest & !(1 << j));
        }
    }
    total
}

/// Normally ordered moment of a zero-mean Gaussian state with the given
/// second moments. Odd-length words vanish.
pub fn wick_moment(moments: &SecondMoments, word: &OperatorWord) -> Complex64 {
    let tokens = word.tokens();
    if tokens.len() % 2 == 1 {
        return Complex64::from(0.0);
    }
    let mask = if tokens.is_empty() {
        0
    } else {
        (1u32 << tokens.len()) - 1
    };
    pairing_sum(moments, tokens, mask)
}

/// Complex linear combination of normally ordered words.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormalPolynomial {
    terms: Vec<(Complex64, OperatorWord)>,
}

impl NormalPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coefficient: Complex64, word: OperatorWord) {
        self.terms.push((coefficient, word));
    }

    pub fn with(mut self, coefficient: impl Into<Complex64>, word: OperatorWord) -> Self {
        self.push(coefficient.into(), word);
        self
    }

    pub fn terms(&self) -> &[(Complex64, OperatorWord)] {
        &self.terms
    }

    pub fn expect<S: TwoModeState + ?Sized>(&self, state: &S) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, w)| c * state.expect(w))
            .sum()
    }
}
