//! Numerical semigroups `S = <a1, ..., ak>`, the value semigroups of the
//! one-dimensional local domains `k[[t^a1, ..., t^ak]]`.

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Upper limit on the Frobenius number. Membership windows are dense, so this
/// caps memory at a few megabytes and keeps every derived quantity far below
/// `2^62`.
pub const MAX_FROBENIUS: i64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    multiplicity: i64,
    frobenius: i64,
    /// Membership over `[0, frobenius + 1)`.
    members: Bits,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, reducing to the minimal
    /// generating set.
    pub fn new(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&g) = gens.iter().find(|&&g| g < 1) {
            return Err(Error::NonPositiveGenerator(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let g = sorted.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let e = sorted[0];
        let largest = *sorted.last().unwrap();
        // Schur's bound F <= (a1 - 1)(ak - 1) - 1.
        let bound = (e - 1)
            .checked_mul(largest - 1)
            .filter(|&b| b <= MAX_FROBENIUS)
            .ok_or(Error::TooLarge("Frobenius number bound"))?;

        // Reachability over [0, bound + 1); everything past the bound is in S.
        let len = (bound + 1) as usize;
        let mut reach = vec![false; len];
        reach[0] = true;
        for z in 1..len {
            reach[z] = sorted
                .iter()
                .any(|&a| (a as usize) <= z && reach[z - a as usize]);
        }
        let frobenius = reach.iter().rposition(|&m| !m).map_or(-1, |p| p as i64);
        let mut members = Bits::new((frobenius + 1) as usize);
        for (z, _) in reach
            .iter()
            .enumerate()
            .take(members.len())
            .filter(|(_, &m)| m)
        {
            members.set(z);
        }

        let mut semigroup = Self {
            generators: Vec::new(),
            multiplicity: e,
            frobenius,
            members,
        };
        // A generator is redundant iff it is a sum of two nonzero elements.
        semigroup.generators = sorted
            .iter()
            .copied()
            .filter(|&a| !(1..a).any(|s| semigroup.contains(s) && semigroup.contains(a - s)))
            .collect();
        Ok(semigroup)
    }

    /// Minimal generating set, strictly increasing.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.multiplicity
    }

    /// Largest integer outside `S`, or `-1` when `S` is all of `N`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    #[inline]
    pub fn contains(&self, z: i64) -> bool {
        if z < 0 {
            false
        } else if z > self.frobenius {
            true
        } else {
            self.members.get(z as usize)
        }
    }

    pub fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius)
            .filter(|&z| !self.contains(z))
            .collect()
    }

    pub fn genus(&self) -> usize {
        (self.frobenius + 1) as usize - self.members.count_ones()
    }

    /// Smallest element of `S` in each residue class modulo `a`, indexed by
    /// residue.
    pub fn apery_set(&self, a: i64) -> Result<Vec<i64>> {
        if a <= 0 || !self.contains(a) {
            return Err(Error::NotInSemigroup(a));
        }
        let mut best = vec![-1i64; a as usize];
        let mut found = 0;
        let mut z = 0;
        while found < a {
            let r = (z % a) as usize;
            if best[r] < 0 && self.contains(z) {
                best[r] = z;
                found += 1;
            }
            z += 1;
        }
        Ok(best)
    }

    /// `z in S` xor `F - z in S` for every integer `z`; equivalent to the
    /// semigroup ring being Gorenstein.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.frobenius).all(|z| self.contains(z) != self.contains(self.frobenius - z))
    }

    /// Membership window over `[0, F + 1)`.
    pub(crate) fn window(&self) -> &Bits {
        &self.members
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}
