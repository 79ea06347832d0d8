use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponent = u16;
pub const MAX_EXPONENT: u32 = Exponent::MAX as u32;

/// An exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow {
                limit: MAX_EXPONENT,
            })?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product; panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn set_exponent(&mut self, index: usize, e: Exponent) {
        self.degree = self.degree - self.exps[index] as u32 + e as u32;
        self.exps[index] = e;
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on exponents; only a tiebreak, not a term order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders. Elimination orders compare block by block, each block by
/// degree-reverse-lexicographic order, so variables in earlier blocks are
/// eliminated first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    Elimination(Vec<usize>),
}

impl TermOrder {
    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let TermOrder::Elimination(blocks) = self {
            if blocks.is_empty() || blocks.contains(&0) || blocks.iter().sum::<usize>() != nvars {
                return Err(Error::InvalidRing(format!(
                    "elimination blocks {blocks:?} do not partition {nvars} variables"
                )));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(&a.exps, a.degree, &b.exps, b.degree),
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::Elimination(blocks) => {
                let mut start = 0;
                for &len in blocks {
                    let (sa, sb) = (&a.exps[start..start + len], &b.exps[start..start + len]);
                    let da = sa.iter().map(|&e| e as u32).sum();
                    let db = sb.iter().map(|&e| e as u32).sum();
                    let o = grevlex(sa, da, sb, db);
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += len;
                }
                Ordering::Equal
            }
        }
    }

    /// Integer key whose lexicographic order agrees with [`TermOrder::cmp`].
    pub fn key(&self, m: &Monomial) -> SmallVec<[i32; 12]> {
        let mut key = SmallVec::new();
        let push_grevlex = |exps: &[Exponent], key: &mut SmallVec<[i32; 12]>| {
            key.push(exps.iter().map(|&e| e as i32).sum());
            key.extend(exps.iter().rev().map(|&e| -(e as i32)));
        };
        match self {
            TermOrder::Grevlex => push_grevlex(&m.exps, &mut key),
            TermOrder::Lex => key.extend(m.exps.iter().map(|&e| e as i32)),
            TermOrder::Elimination(blocks) => {
                let mut start = 0;
                for &len in blocks {
                    push_grevlex(&m.exps[start..start + len], &mut key);
                    start += len;
                }
            }
        }
        key
    }
}

#[inline]
fn grevlex(a: &[Exponent], da: u32, b: &[Exponent], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}
