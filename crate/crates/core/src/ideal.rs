//! Fractional ideals of a numerical semigroup ring, stored as the integer
//! sets of their valuations.
//!
//! A fractional `S`-ideal is a set `E ⊆ Z` that is bounded below, closed
//! under adding elements of `S`, and contains a tail `[c, ∞)`. The normal
//! form records the least element, the least such `c` and a bitset for the
//! finite window `[min, c)`; two ideals are equal exactly when their normal
//! forms are identical.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug)]
pub struct NormalizedIdeal {
    ambient: Arc<NumericalSemigroup>,
    min: i64,
    conductor: i64,
    /// Bit `i` stands for `min + i`; length `conductor - min`.
    window: Bits,
}

impl PartialEq for NormalizedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.min == other.min
            && self.conductor == other.conductor
            && self.window == other.window
            && same_ambient(&self.ambient, &other.ambient)
    }
}

impl Eq for NormalizedIdeal {}

fn same_ambient(a: &Arc<NumericalSemigroup>, b: &Arc<NumericalSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a.generators() == b.generators()
}

impl NormalizedIdeal {
    /// Normalises the set that agrees with `bits` (offset `low`) on
    /// `[low, tail)` and contains all of `[tail, ∞)`. Bits at or past `tail`
    /// are ignored.
    fn from_raw(ambient: &Arc<NumericalSemigroup>, low: i64, bits: &Bits, tail: i64) -> Self {
        let span = (tail - low) as usize;
        debug_assert!(bits.len() >= span);
        let first = bits.first_one().map_or(span, |i| i.min(span));
        let mut end = span;
        while end > first && bits.get(end - 1) {
            end -= 1;
        }
        Self {
            ambient: Arc::clone(ambient),
            min: low + first as i64,
            conductor: low + end as i64,
            window: bits.slice(first, end),
        }
    }

    /// Ideal generated by `gens`, i.e. the union of `g + S`.
    pub fn from_generators(ambient: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self> {
        let low = *gens.iter().min().ok_or(Error::EmptyInput)?;
        let tail = low + ambient.conductor();
        let mut bits = Bits::new((tail - low) as usize);
        for &g in gens {
            bits.or_shifted(ambient.window(), g - low);
        }
        Ok(Self::from_raw(ambient, low, &bits, tail))
    }

    /// `S` itself, the unit ideal.
    pub fn unit(ambient: &Arc<NumericalSemigroup>) -> Self {
        Self::from_generators(ambient, &[0]).expect("nonempty")
    }

    /// `S ∖ {0}`, the valuations of the maximal ideal.
    pub fn maximal(ambient: &Arc<NumericalSemigroup>) -> Self {
        Self::from_generators(ambient, ambient.generators()).expect("nonempty")
    }

    /// The canonical ideal `K = {z : F - z ∉ S}`.
    pub fn canonical(ambient: &Arc<NumericalSemigroup>) -> Self {
        let f = ambient.frobenius();
        let mut bits = Bits::new((f + 1) as usize);
        for z in 0..=f {
            if !ambient.contains(f - z) {
                bits.set(z as usize);
            }
        }
        Self::from_raw(ambient, 0, &bits, f + 1)
    }

    /// `{z ∈ S : z >= from}`.
    pub fn semigroup_tail(ambient: &Arc<NumericalSemigroup>, from: i64) -> Self {
        let from = from.max(0);
        let tail = from.max(ambient.conductor());
        let mut bits = Bits::new((tail - from) as usize);
        for z in from..tail {
            if ambient.contains(z) {
                bits.set((z - from) as usize);
            }
        }
        Self::from_raw(ambient, from, &bits, tail)
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    #[inline]
    pub fn contains(&self, z: i64) -> bool {
        if z < self.min {
            false
        } else if z >= self.conductor {
            true
        } else {
            self.window.get((z - self.min) as usize)
        }
    }

    /// Members below the conductor, ascending.
    pub fn window_members(&self) -> Vec<i64> {
        self.window.ones().map(|i| self.min + i as i64).collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Window bits re-based at `low` over `[low, tail)`, with the tail filled.
    fn bits_over(&self, low: i64, tail: i64) -> Bits {
        let mut bits = Bits::new((tail - low).max(0) as usize);
        bits.or_shifted(&self.window, self.min - low);
        if self.conductor < tail {
            bits.fill_from((self.conductor - low).max(0) as usize);
        }
        bits
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.min < other.min {
            return false;
        }
        (self.min..other.conductor.max(self.min)).all(|z| !self.contains(z) || other.contains(z))
    }

    /// Minkowski sum `E + F`, the valuations of the product ideal.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let low = self.min + other.min;
        let tail = (self.min + other.conductor).min(self.conductor + other.min);
        let mut bits = Bits::new((tail - low) as usize);
        for i in self.window.ones() {
            bits.or_shifted(&other.window, i as i64);
        }
        Ok(Self::from_raw(&self.ambient, low, &bits, tail))
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(&self.ambient);
        for _ in 0..n {
            acc = acc.product(self).expect("same ambient");
        }
        acc
    }

    pub fn shift(&self, c: i64) -> Self {
        Self {
            ambient: Arc::clone(&self.ambient),
            min: self.min + c,
            conductor: self.conductor + c,
            window: self.window.clone(),
        }
    }

    /// Union.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let low = self.min.min(other.min);
        let tail = self.conductor.min(other.conductor);
        let mut bits = self.bits_over(low, tail);
        bits.or_shifted(&other.bits_over(low, tail), 0);
        Ok(Self::from_raw(&self.ambient, low, &bits, tail))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let low = self.min.max(other.min);
        let tail = self.conductor.max(other.conductor).max(low);
        let mut bits = Bits::new((tail - low) as usize);
        for z in low..tail {
            if self.contains(z) && other.contains(z) {
                bits.set((z - low) as usize);
            }
        }
        Ok(Self::from_raw(&self.ambient, low, &bits, tail))
    }

    /// `{z ∈ Z : z + F ⊆ E}` with `self = E`, `other = F`.
    ///
    /// `z` fails exactly when `z = g - f` for a hole `g` of `E` above its
    /// minimum and some `f ∈ F`; holes below `min(E)` only reject
    /// `z < min(E) - min(F)`.
    pub fn colon_z(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let low = self.min - other.min;
        let tail = self.conductor - other.min;
        if tail == low {
            return Ok(Self::from_raw(&self.ambient, low, &Bits::new(0), tail));
        }
        let holes = self.window.complement();
        let mut failing = Bits::new((tail - low) as usize);
        // Hole at window index h, f at index j of F's window: z - low = h - j.
        for j in other.window.ones() {
            failing.or_shifted(&holes, -(j as i64));
        }
        // f in F's tail [c_F, ∞) rejects every z <= last hole - c_F.
        if let Some(last) = holes.ones().last() {
            let upto = self.min + last as i64 - other.conductor - low;
            if upto >= 0 {
                let upto = (upto as usize).min(failing.len() - 1);
                for i in 0..=upto {
                    failing.set(i);
                }
            }
        }
        Ok(Self::from_raw(
            &self.ambient,
            low,
            &failing.complement(),
            tail,
        ))
    }

    /// `colon_z(E, F) ∩ within`: the colon taken inside the ring (pass the
    /// unit ideal) or inside a module.
    pub fn colon_in(&self, other: &Self, within: &Self) -> Result<Self> {
        self.check_ambient(within)?;
        self.colon_z(other)?.intersect(within)
    }

    /// Sorted minimal generators, `E ∖ (m + E)`.
    pub fn minimal_generators(&self) -> Vec<i64> {
        let m = Self::maximal(&self.ambient);
        let me = m.product(self).expect("same ambient");
        (self.min..me.conductor.max(self.min))
            .filter(|&z| self.contains(z) && !me.contains(z))
            .collect()
    }

    /// `|E ∖ F|` for `F ⊆ E`, the length of the quotient module.
    pub fn quotient_length(&self, sub: &Self) -> Result<u64> {
        self.check_ambient(sub)?;
        if !sub.is_subset_of(self) {
            return Err(Error::NotContained);
        }
        let top = self.conductor.max(sub.conductor);
        Ok((self.min..top)
            .filter(|&z| self.contains(z) && !sub.contains(z))
            .count() as u64)
    }

    /// Integral closure of `I^t`: `{z ∈ S : z >= t·min(I)}`.
    pub fn integral_closure_power(&self, t: u32) -> Self {
        Self::semigroup_tail(&self.ambient, self.min * t as i64)
    }

    /// Full invariant check; used by tests.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.conductor > self.min {
            if !self.contains(self.min) {
                return Err("min not a member".into());
            }
            if self.contains(self.conductor - 1) {
                return Err("conductor not tight".into());
            }
        }
        if self.window.len() as i64 != self.conductor - self.min {
            return Err("window length".into());
        }
        if self.conductor > self.min + self.ambient.conductor() {
            return Err("conductor above min + F + 1".into());
        }
        for z in self.window_members() {
            for &g in self.ambient.generators() {
                if !self.contains(z + g) {
                    return Err(format!("{z} + {g} missing"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for NormalizedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{min={}, conductor={}, members=[",
            self.min, self.conductor
        )?;
        for (i, z) in self.window_members().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, "]}}")
    }
}

impl Serialize for NormalizedIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("NormalizedIdeal", 3)?;
        s.serialize_field("min", &self.min)?;
        s.serialize_field("conductor", &self.conductor)?;
        s.serialize_field("members", &self.window_members())?;
        s.end()
    }
}
