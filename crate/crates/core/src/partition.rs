//! Integer partitions and symmetric-group characters.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};

/// A weakly decreasing tuple of positive integers. The empty partition has size 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicities `a_i` of each part value `i`, as `(value, count)` pairs
    /// in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of the centralizer of a permutation of this cycle type.
    pub fn z_factor(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (i, a)| {
                acc * BigInt::from(i).pow(a) * factorial(a as u64)
            })
    }

    /// `|Aut(mu)|`, the product of factorials of part multiplicities.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (_, a)| acc * factorial(a as u64))
    }

    /// The framing exponent `sum_i mu_i (mu_i - 2i + 1)`.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = i64::from(p);
                p * (p - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// Divides every part by `d`, or returns `None` if some part is not divisible.
    pub fn scale_down(&self, d: u32) -> Option<Partition> {
        assert!(d >= 1, "scale_down by zero");
        self.0
            .iter()
            .all(|p| p % d == 0)
            .then(|| Partition(self.0.iter().map(|p| p / d).collect()))
    }

    /// Multiplies every part by `d`.
    pub fn scale_up(&self, d: u32) -> Partition {
        Partition(self.0.iter().map(|p| p * d).collect())
    }

    /// Greatest common divisor of the parts (0 for the empty partition).
    pub fn parts_gcd(&self) -> u32 {
        self.0.iter().fold(0, |g, &p| num_integer::gcd(g, p))
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`
/// and ending with `(1,...,1)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        current.push(p);
        fill(rest - p, p, current, out);
        current.pop();
    }
}

type CharKey = (Partition, Partition);

fn char_cache() -> &'static RwLock<HashMap<CharKey, BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Irreducible character `chi_lambda` evaluated on the class of cycle type `mu`,
/// by the Murnaghan–Nakayama rule. Values are memoized process-wide.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::Domain(format!(
            "character sizes differ: |{lambda}| != |{mu}|"
        )));
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = char_cache().read().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let value = mn_uncached(lambda.parts(), mu.parts());
    char_cache()
        .write()
        .expect("cache poisoned")
        .insert(key, value.clone());
    Ok(value)
}

/// Murnaghan–Nakayama on beta-sets: removing a rim hook of length `r` moves a
/// bead from position `b` to the free position `b - r`, with sign given by the
/// parity of the beads jumped over.
fn mn_uncached(lambda: &[u32], mu: &[u32]) -> BigInt {
    let l = lambda.len();
    let beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i) as u32)
        .collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &[u32], mu: &[u32]) -> BigInt {
    let Some((&r, rest)) = mu.split_first() else {
        return BigInt::one();
    };
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next: Vec<u32> = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn_beta(&normalize_beta(next), rest);
        if jumped % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

/// Drops the trailing beads 0,1,...,k-1 that correspond to zero-length rows, so
/// that equal partitions share one beta-set representation.
fn normalize_beta(mut beta: Vec<u32>) -> Vec<u32> {
    while let Some(&last) = beta.last() {
        if last == 0 {
            beta.pop();
            for b in beta.iter_mut() {
                *b -= 1;
            }
        } else {
            break;
        }
    }
    beta
}
