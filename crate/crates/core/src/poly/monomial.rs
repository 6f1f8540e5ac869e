//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest number of ring variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 8;

const SORT_KEY_LEN: usize = 8 + 2 * MAX_VARS;

/// Integers ordered like the monomials under a given order.
pub type SortKey = (u128, u64);

/// Exponent vector of a monomial. Slots beyond the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Panics if more than [`MAX_VARS`] exponents are given or an exponent overflows `u16`.
    /// Every monomial of total degree `d` in `n` variables.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, n: usize, left: u32, cur: Monomial, out: &mut Vec<Monomial>) {
            if i + 1 == n {
                out.push(cur.with_exp(i, left));
                return;
            }
            for e in (0..=left).rev() {
                rec(i + 1, n, left - e, cur.with_exp(i, e), out);
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(0, n, d, Monomial::one(), &mut out);
        }
        out
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    /// The variable `x_index` (zero-based).
    pub fn var(index: usize) -> Self {
        Monomial::pure_power(index, 1)
    }

    pub fn pure_power(index: usize, exp: u32) -> Self {
        let mut m = Monomial::default();
        m.exps[index] = u16::try_from(exp).expect("exponent overflow");
        m.deg = exp;
        m
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        weights
            .iter()
            .zip(self.exps.iter())
            .map(|(&w, &e)| w as u64 * e as u64)
            .sum()
    }

    /// Highest index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        m.deg = other.deg - self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// `Some(i)` when the monomial is a pure power `x_i^k` with `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Drop the first `count` variables, shifting the rest down.
    pub fn drop_leading(&self, count: usize) -> Monomial {
        let mut m = Monomial::default();
        for i in count..MAX_VARS {
            m.exps[i - count] = self.exps[i];
            m.deg += self.exps[i] as u32;
        }
        m
    }

    /// Insert `count` zero exponents in front, shifting variables up.
    pub fn shift_up(&self, count: usize, nvars: usize) -> Monomial {
        assert!(nvars + count <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for i in 0..nvars {
            m.exps[i + count] = self.exps[i];
        }
        m.deg = self.deg;
        m
    }

    /// Copy with the exponent at `index` set to `exp`.
    pub fn with_exp(&self, index: usize, exp: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[index] as u32 + exp;
        m.exps[index] = u16::try_from(exp).expect("exponent overflow");
        m
    }

    /// Reorder variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial::default();
        for (i, &src) in perm.iter().enumerate() {
            m.exps[i] = self.exps[src];
        }
        m.deg = self.deg;
        m
    }

    /// Render with variable names `z1..zn`.
    pub fn display(&self, nvars: usize) -> String {
        let names: Vec<String> = (1..=nvars).map(|i| format!("z{i}")).collect();
        self.display_with(&names)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| self.exps[*i] > 0)
            .map(|(i, name)| match self.exps[i] {
                1 => name.clone(),
                e => format!("{name}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len().max(1);
        write!(f, "{:?}", &self.exps[..n])
    }
}

/// A term order on monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Degrevlex on the first `split` variables, ties broken by degrevlex on the rest.
    /// Eliminates the first `split` variables.
    Block { split: usize },
    /// Weighted degree (weights must be positive), ties broken by reverse lex.
    WeightedDegRevLex { weights: Vec<u32> },
    /// Local order: lower total degree is larger, ties broken by reverse lex.
    /// Not a well-order, so Groebner bases in it need a truncation degree.
    NegDegRevLex,
}

#[inline]
fn revlex(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    for i in range.rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn partial_degree(m: &Monomial, range: std::ops::Range<usize>) -> u32 {
    m.exps[range].iter().map(|&e| e as u32).sum()
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a
                .deg
                .cmp(&b.deg)
                .then_with(|| revlex(a, b, 0..MAX_VARS)),
            MonomialOrder::Block { split } => {
                let s = *split;
                partial_degree(a, 0..s)
                    .cmp(&partial_degree(b, 0..s))
                    .then_with(|| revlex(a, b, 0..s))
                    .then_with(|| a.deg.cmp(&b.deg))
                    .then_with(|| revlex(a, b, s..MAX_VARS))
            }
            MonomialOrder::WeightedDegRevLex { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| revlex(a, b, 0..MAX_VARS)),
            MonomialOrder::NegDegRevLex => b
                .deg
                .cmp(&a.deg)
                .then_with(|| revlex(a, b, 0..MAX_VARS)),
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::NegDegRevLex)
    }

    /// Key whose lexicographic order agrees with this monomial order, built
    /// from a big-endian byte string.
    #[inline]
    pub fn sort_key(&self, m: &Monomial) -> SortKey {
        let mut k = [0u8; SORT_KEY_LEN];
        let mut at = 0;
        let mut put = |bytes: &[u8]| {
            k[at..at + bytes.len()].copy_from_slice(bytes);
            at += bytes.len();
        };
        let flipped = |e: u16| (u16::MAX - e).to_be_bytes();
        match self {
            MonomialOrder::Lex => {
                for &e in &m.exps {
                    put(&e.to_be_bytes());
                }
            }
            MonomialOrder::DegRevLex => {
                put(&m.deg.to_be_bytes());
                for &e in m.exps.iter().rev() {
                    put(&flipped(e));
                }
            }
            MonomialOrder::Block { split } => {
                let s = *split;
                put(&partial_degree(m, 0..s).to_be_bytes());
                for &e in m.exps[..s].iter().rev() {
                    put(&flipped(e));
                }
                put(&m.deg.to_be_bytes());
                for &e in m.exps[s..].iter().rev() {
                    put(&flipped(e));
                }
            }
            MonomialOrder::WeightedDegRevLex { weights } => {
                put(&m.weighted_degree(weights).to_be_bytes());
                for &e in m.exps.iter().rev() {
                    put(&flipped(e));
                }
            }
            MonomialOrder::NegDegRevLex => {
                put(&(u32::MAX - m.deg).to_be_bytes());
                for &e in m.exps.iter().rev() {
                    put(&flipped(e));
                }
            }
        }
        let (hi, lo) = k.split_at(16);
        (
            u128::from_be_bytes(hi.try_into().expect("16 bytes")),
            u64::from_be_bytes(lo.try_into().expect("8 bytes")),
        )
    }

    /// Degree used by the normal selection strategy.
    pub fn sugar_degree(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::WeightedDegRevLex { weights } => m.weighted_degree(weights),
            _ => m.degree() as u64,
        }
    }
}
