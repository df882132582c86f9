//! Ratliff–Rush ideals `r(I^t, M)`, closures, reduction numbers and the
//! stabilisation indices `s`, `ρ`, `s*`.
//!
//! All unions over `k` are evaluated as a single colon at `k = r_x(I)`.
//! With `v = min(I)`, the principal ideal `(t^v)` is a reduction of `I`, and
//! once `k >= r_x` we have `I^{k+1} = v + I^k` exactly. Both sides of every
//! colon then translate by `v` together, so the ascending chain of colons is
//! literally constant from `k = r_x` on and its union is that colon.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::NormalizedIdeal;
use crate::semigroup::NumericalSemigroup;

/// Valuation of the principal reduction `t^v_min` and the reduction number
/// with respect to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    pub v_min: i64,
    pub r_x: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RRIndices {
    pub v_min: i64,
    pub r_x: u32,
    pub s_star: u32,
    pub rho: u32,
    pub s: u32,
}

fn check_proper(ideal: &NormalizedIdeal) -> Result<()> {
    let unit = NormalizedIdeal::unit(ideal.ambient());
    if ideal.min() < 1 || !ideal.is_subset_of(&unit) {
        return Err(Error::NotProperIdeal);
    }
    Ok(())
}

fn reduction_powers(ideal: &NormalizedIdeal) -> Result<(ReductionData, Vec<NormalizedIdeal>)> {
    check_proper(ideal)?;
    let v = ideal.min();
    let cap = (ideal.ambient().frobenius() + 2 * v) as u64;
    let mut powers = vec![NormalizedIdeal::unit(ideal.ambient())];
    loop {
        let n = powers.len() - 1;
        let next = powers[n].product(ideal)?;
        if powers[n].shift(v) == next {
            let data = ReductionData {
                v_min: v,
                r_x: n as u32,
            };
            return Ok((data, powers));
        }
        if n as u64 >= cap {
            return Err(Error::SafetyCapExceeded(cap));
        }
        powers.push(next);
    }
}

/// `(min(I), least n with min(I) + I^n = I^{n+1})`.
pub fn reduction_index(ideal: &NormalizedIdeal) -> Result<ReductionData> {
    reduction_powers(ideal).map(|(data, _)| data)
}

/// The filtrations `I^n` and `I^n M` for a proper ideal `I` and a fractional
/// ideal `M`, with the powers up to the reduction number kept so that any
/// `I^n`, `I^n M` is a single translation away.
#[derive(Clone, Debug)]
pub struct Filtration {
    ideal: NormalizedIdeal,
    module: NormalizedIdeal,
    unit: NormalizedIdeal,
    reduction: ReductionData,
    powers: Vec<NormalizedIdeal>,
    module_powers: Vec<NormalizedIdeal>,
}

impl Filtration {
    pub fn new(ideal: &NormalizedIdeal, module: &NormalizedIdeal) -> Result<Self> {
        if ideal.ambient().generators() != module.ambient().generators() {
            return Err(Error::AmbientMismatch);
        }
        let (reduction, powers) = reduction_powers(ideal)?;
        let module_powers = powers
            .iter()
            .map(|p| p.product(module))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ideal: ideal.clone(),
            module: module.clone(),
            unit: NormalizedIdeal::unit(ideal.ambient()),
            reduction,
            powers,
            module_powers,
        })
    }

    /// Filtration of `I` against the ring itself.
    pub fn of_ring(ideal: &NormalizedIdeal) -> Result<Self> {
        Self::new(ideal, &NormalizedIdeal::unit(ideal.ambient()))
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        self.ideal.ambient()
    }

    pub fn ideal(&self) -> &NormalizedIdeal {
        &self.ideal
    }

    pub fn module(&self) -> &NormalizedIdeal {
        &self.module
    }

    pub fn reduction(&self) -> ReductionData {
        self.reduction
    }

    fn r(&self) -> u32 {
        self.reduction.r_x
    }

    pub fn power(&self, n: u32) -> NormalizedIdeal {
        let r = self.r();
        if n <= r {
            self.powers[n as usize].clone()
        } else {
            self.powers[r as usize].shift((n - r) as i64 * self.reduction.v_min)
        }
    }

    /// `I^n M`.
    pub fn module_power(&self, n: u32) -> NormalizedIdeal {
        let r = self.r();
        if n <= r {
            self.module_powers[n as usize].clone()
        } else {
            self.module_powers[r as usize].shift((n - r) as i64 * self.reduction.v_min)
        }
    }

    /// `(I^{t+k} M :_A I^k M)`, the `k`-th term of the chain whose union is
    /// `r(I^t, M)`.
    pub fn ring_colon(&self, t: u32, k: u32) -> NormalizedIdeal {
        self.module_power(t + k)
            .colon_in(&self.module_power(k), &self.unit)
            .expect("same ambient")
    }

    /// `(I^{t+k} M :_M I^k)`, the `k`-th term of the chain whose union is the
    /// Ratliff–Rush closure of `I^t M`.
    pub fn module_colon(&self, t: u32, k: u32) -> NormalizedIdeal {
        self.module_power(t + k)
            .colon_in(&self.power(k), &self.module)
            .expect("same ambient")
    }

    /// `r(I^t, M)`.
    pub fn rr_ideal(&self, t: u32) -> Result<NormalizedIdeal> {
        check_exponent(t)?;
        Ok(self.ring_colon(t, self.r()))
    }

    /// Ratliff–Rush closure of `I^t M` inside `M`.
    pub fn rr_module_closure(&self, t: u32) -> Result<NormalizedIdeal> {
        check_exponent(t)?;
        Ok(self.module_colon(t, self.r()))
    }

    pub fn indices(&self, t: u32) -> Result<RRIndices> {
        let r = self.r();
        let stable = self.rr_ideal(t)?;
        let s = (0..=r)
            .find(|&k| self.ring_colon(t, k) == stable)
            .expect("k = r_x attains the stable value");
        let closure = self.rr_module_closure(t)?;
        let rho = (0..=r)
            .find(|&k| self.module_colon(t, k) == closure)
            .expect("k = r_x attains the stable value");
        // Above r_x the closure of I^m M is I^m M itself.
        let s_star = (1..=r)
            .rev()
            .find(|&m| self.module_colon(m, r) != self.module_power(m))
            .map_or(0, |m| m + 1);
        Ok(RRIndices {
            v_min: self.reduction.v_min,
            r_x: r,
            s_star,
            rho,
            s,
        })
    }
}

fn check_exponent(t: u32) -> Result<()> {
    if t == 0 {
        Err(Error::InvalidExponent(t))
    } else {
        Ok(())
    }
}

pub fn rr_ideal(
    ideal: &NormalizedIdeal,
    t: u32,
    module: &NormalizedIdeal,
) -> Result<NormalizedIdeal> {
    Filtration::new(ideal, module)?.rr_ideal(t)
}

/// Ratliff–Rush closure of `I^t`, i.e. `r(I^t, A)`.
pub fn rr_closure(ideal: &NormalizedIdeal, t: u32) -> Result<NormalizedIdeal> {
    Filtration::of_ring(ideal)?.rr_ideal(t)
}

pub fn rr_module_closure(
    ideal: &NormalizedIdeal,
    t: u32,
    module: &NormalizedIdeal,
) -> Result<NormalizedIdeal> {
    Filtration::new(ideal, module)?.rr_module_closure(t)
}

pub fn indices(ideal: &NormalizedIdeal, t: u32, module: &NormalizedIdeal) -> Result<RRIndices> {
    Filtration::new(ideal, module)?.indices(t)
}
