//! Rankings as permutations of `1..=n` and multi-voter profiles.
//!
//! Candidate ids and ranks are 1-based throughout: `seq[k]` is the candidate
//! placed at rank `k` (rank 1 is best) and `pos[c]` is the rank of candidate
//! `c`, i.e. the inverse permutation. Both directions are stored so either
//! lookup is O(1).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ranking {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl Ranking {
    /// Builds a ranking from candidates listed best first.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let mut pos = vec![0usize; n];
        for (k, &c) in seq.iter().enumerate() {
            if c == 0 || c > n {
                return Err(Error::UnknownCandidate { candidate: c, n });
            }
            if pos[c - 1] != 0 {
                return Err(Error::NotAPermutation(format!(
                    "candidate {c} appears twice"
                )));
            }
            pos[c - 1] = k + 1;
        }
        Ok(Ranking { seq, pos })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        let seq: Vec<usize> = (1..=n).collect();
        Ok(Ranking {
            pos: seq.clone(),
            seq,
        })
    }

    pub(crate) fn from_zero_based(seq0: &[u8]) -> Self {
        let n = seq0.len();
        let mut seq = Vec::with_capacity(n);
        let mut pos = vec![0usize; n];
        for (k, &c) in seq0.iter().enumerate() {
            seq.push(c as usize + 1);
            pos[c as usize] = k + 1;
        }
        Ranking { seq, pos }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Candidates in rank order, best first.
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// `pos()[c - 1]` is the rank of candidate `c`.
    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    /// Candidate at 1-based rank `k`.
    pub fn candidate_at(&self, k: usize) -> usize {
        self.seq[k - 1]
    }

    /// 1-based rank of candidate `c`.
    pub fn rank_of(&self, c: usize) -> usize {
        self.pos[c - 1]
    }

    pub fn top(&self) -> usize {
        self.seq[0]
    }

    pub fn invert(&self) -> Ranking {
        Ranking {
            seq: self.pos.clone(),
            pos: self.seq.clone(),
        }
    }

    /// Exchanges the candidates at ranks `k` and `k + 1`.
    pub fn swap_adjacent(&self, k: usize) -> Result<Ranking> {
        let n = self.len();
        if k == 0 || k >= n {
            return Err(Error::PositionOutOfRange { position: k, n });
        }
        self.transpose(k, k + 1)
    }

    /// Exchanges the candidates at ranks `a` and `b`.
    pub fn transpose(&self, a: usize, b: usize) -> Result<Ranking> {
        let n = self.len();
        for p in [a, b] {
            if p == 0 || p > n {
                return Err(Error::PositionOutOfRange { position: p, n });
            }
        }
        let mut out = self.clone();
        out.seq.swap(a - 1, b - 1);
        out.pos[out.seq[a - 1] - 1] = a;
        out.pos[out.seq[b - 1] - 1] = b;
        Ok(out)
    }

    /// True iff `a` is ranked strictly before `b`.
    pub fn ranks_before(&self, a: usize, b: usize) -> Result<bool> {
        let n = self.len();
        for c in [a, b] {
            if c == 0 || c > n {
                return Err(Error::UnknownCandidate { candidate: c, n });
            }
        }
        Ok(self.pos[a - 1] < self.pos[b - 1])
    }

    /// Function composition `self ∘ other`: rank `k` maps to `self(other(k))`.
    pub fn compose(&self, other: &Ranking) -> Result<Ranking> {
        check_same_len(self.len(), other.len())?;
        let seq = other.seq.iter().map(|&k| self.seq[k - 1]).collect();
        Ranking::new(seq)
    }

    /// `self⁻¹ ∘ other`, the ranking `other` with candidates renamed so that
    /// `self` becomes the identity.
    pub(crate) fn relative_zero_based(&self, other: &Ranking, out: &mut [u8]) {
        for (slot, &c) in out.iter_mut().zip(&other.seq) {
            *slot = (self.pos[c - 1] - 1) as u8;
        }
    }
}

pub(crate) fn check_same_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        Err(Error::DimensionMismatch { expected, got })
    } else {
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Ranking {
    type Error = Error;

    fn try_from(seq: Vec<usize>) -> Result<Self> {
        Ranking::new(seq)
    }
}

impl From<Ranking> for Vec<usize> {
    fn from(r: Ranking) -> Self {
        r.seq
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `m ≥ 1` complete rankings of the same `n` candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteProfile {
    n: usize,
    votes: Vec<Ranking>,
}

impl VoteProfile {
    pub fn new(votes: Vec<Ranking>) -> Result<Self> {
        let first = votes.first().ok_or(Error::EmptyProfile)?;
        let n = first.len();
        for v in &votes {
            check_same_len(n, v.len())?;
        }
        Ok(VoteProfile { n, votes })
    }

    pub fn from_seqs<I>(seqs: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Vec<usize>>,
    {
        let votes = seqs
            .into_iter()
            .map(|s| Ranking::new(s.into()))
            .collect::<Result<Vec<_>>>()?;
        VoteProfile::new(votes)
    }

    /// Number of candidates.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of votes.
    pub fn m(&self) -> usize {
        self.votes.len()
    }

    pub fn votes(&self) -> &[Ranking] {
        &self.votes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Ranking> {
        self.votes.iter()
    }

    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        check_same_len(self.n, n)
    }
}

impl<'a> IntoIterator for &'a VoteProfile {
    type Item = &'a Ranking;
    type IntoIter = std::slice::Iter<'a, Ranking>;

    fn into_iter(self) -> Self::IntoIter {
        self.votes.iter()
    }
}

/// Lexicographic (Lehmer) indexing of permutations of `0..n` stored as bytes.
pub(crate) mod lehmer {
    pub fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    pub fn rank(perm: &[u8]) -> usize {
        let n = perm.len();
        let mut seen: u32 = 0;
        let mut idx = 0usize;
        for (i, &v) in perm.iter().enumerate() {
            let smaller_unused = v as u32 - (seen & ((1u32 << v) - 1)).count_ones();
            idx = idx * (n - i) + smaller_unused as usize;
            seen |= 1 << v;
        }
        idx
    }

    pub fn unrank(mut idx: usize, out: &mut [u8]) {
        let n = out.len();
        let mut digits = [0usize; 16];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = idx % base;
            idx /= base;
        }
        let mut unused: u32 = (1u32 << n) - 1;
        for i in 0..n {
            let mut d = digits[i];
            let mut v = 0u32;
            loop {
                if unused & (1 << v) != 0 {
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                }
                v += 1;
            }
            out[i] = v as u8;
            unused &= !(1 << v);
        }
    }
}
