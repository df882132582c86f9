//! The quasi-Hilbert decision for `A = k[[S]]`.
//!
//! With `m` the maximal ideal and `K` the canonical ideal, the module
//! `E = ⊕ r(m^n, K) / ~m^n` is studied through its length series. In
//! dimension one "Krull dimension of E equals dim A" means the series has a
//! positive eventual value, and that value is certified exactly from the
//! window `W = C_r ∖ m^r`, `C_r = (m^{2r} K : m^r K)`, where `r = r_x(m)`:
//! for `n >= r` the `n`-th length counts the `w ∈ W` with
//! `w + (n - r)·e ∈ S`.
//!
//! Unmixedness of `G_m(A)` is decided through depth: at dimension one,
//! `G_m(A)` is unmixed iff its depth is positive iff
//! `(m^{n+1} : t^e) = m^n` for all `n`, which only has to be checked for
//! `n < r` since the equality is automatic in a domain beyond that.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::ideal::NormalizedIdeal;
use crate::rr::Filtration;
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthWitness {
    pub n: u32,
    pub element: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthCheck {
    pub positive: bool,
    pub witness: Option<DepthWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableWindow {
    pub r_x: u32,
    pub window: Vec<i64>,
    pub n_star: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ESeries {
    /// `ℓ(r(m^n, K) / ~m^n)` for `n = 1..=n_max`.
    pub tilde: Vec<u64>,
    /// `ℓ(r(m^n, K) / m^n)` for `n = 1..=n_max`.
    pub power: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiHilbertReport {
    pub gorenstein: bool,
    /// Positive depth of `G_m(A)`, which at dimension one is unmixedness.
    pub depth_positive: bool,
    pub depth_witness: Option<DepthWitness>,
    pub v_min: i64,
    pub r_x: u32,
    pub n_max: u32,
    pub e_series_tilde: Vec<u64>,
    pub e_series_power: Vec<u64>,
    pub series_disagree: bool,
    pub stable_window: Vec<i64>,
    pub n_star: u32,
    pub eventual_length: u64,
    pub quasi_hilbert: bool,
    pub hilbert_mod_x: Vec<u64>,
    pub notes: Vec<String>,
}

/// Filtrations of the maximal ideal against `A` and against `K`.
struct MaximalFiltrations {
    ring: Filtration,
    canonical: Filtration,
}

impl MaximalFiltrations {
    fn new(semigroup: &Arc<NumericalSemigroup>) -> Result<Self> {
        let m = NormalizedIdeal::maximal(semigroup);
        let k = NormalizedIdeal::canonical(semigroup);
        Ok(Self {
            ring: Filtration::of_ring(&m)?,
            canonical: Filtration::new(&m, &k)?,
        })
    }

    fn e_series(&self, n_max: u32) -> Result<ESeries> {
        let mut tilde = Vec::with_capacity(n_max as usize);
        let mut power = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            let rr = self.canonical.rr_ideal(n)?;
            tilde.push(rr.quotient_length(&self.ring.rr_ideal(n)?)?);
            power.push(rr.quotient_length(&self.ring.power(n))?);
        }
        Ok(ESeries { tilde, power })
    }

    fn depth(&self) -> DepthCheck {
        let red = self.ring.reduction();
        let unit = NormalizedIdeal::unit(self.ring.ambient());
        let x = unit.shift(red.v_min);
        for n in 0..red.r_x {
            let colon = self
                .ring
                .power(n + 1)
                .colon_in(&x, &unit)
                .expect("same ambient");
            let mn = self.ring.power(n);
            if colon != mn {
                let element = (colon.min()..)
                    .find(|&z| colon.contains(z) && !mn.contains(z))
                    .expect("colon strictly contains m^n");
                return DepthCheck {
                    positive: false,
                    witness: Some(DepthWitness { n, element }),
                };
            }
        }
        DepthCheck {
            positive: true,
            witness: None,
        }
    }

    fn stable_window(&self) -> StableWindow {
        let red = self.canonical.reduction();
        let r = red.r_x;
        let c_r = self
            .canonical
            .module_power(2 * r)
            .colon_z(&self.canonical.module_power(r))
            .expect("same ambient");
        let m_r = self.ring.power(r);
        let top = c_r.conductor().max(m_r.conductor());
        let window: Vec<i64> = (c_r.min()..top)
            .filter(|&z| c_r.contains(z) && !m_r.contains(z))
            .collect();
        let f = self.ring.ambient().frobenius();
        let gap = f + 1 - c_r.min();
        let extra = if gap > 0 {
            (gap + red.v_min - 1) / red.v_min
        } else {
            0
        };
        StableWindow {
            r_x: r,
            window,
            n_star: r + extra as u32,
        }
    }
}

pub fn e_series(semigroup: &Arc<NumericalSemigroup>, n_max: u32) -> Result<ESeries> {
    MaximalFiltrations::new(semigroup)?.e_series(n_max)
}

pub fn depth_positive(semigroup: &Arc<NumericalSemigroup>) -> Result<DepthCheck> {
    Ok(MaximalFiltrations::new(semigroup)?.depth())
}

pub fn stable_window(semigroup: &Arc<NumericalSemigroup>) -> Result<StableWindow> {
    Ok(MaximalFiltrations::new(semigroup)?.stable_window())
}

/// Hilbert function of `A / (t^e)` with respect to the image of `m`.
pub fn hilbert_fn_mod_x(semigroup: &Arc<NumericalSemigroup>) -> Result<Vec<u64>> {
    let ring = Filtration::of_ring(&NormalizedIdeal::maximal(semigroup))?;
    let e = semigroup.multiplicity() as u64;
    let x = NormalizedIdeal::unit(semigroup).shift(e as i64);
    let mut coeffs = Vec::new();
    let mut total = 0;
    let mut i = 0;
    while total < e {
        let upper = ring.power(i).sum(&x)?;
        let lower = ring.power(i + 1).sum(&x)?;
        let c = upper.quotient_length(&lower)?;
        total += c;
        coeffs.push(c);
        i += 1;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Default series length, `2·r_x(m) + 4`.
pub fn default_n_max(semigroup: &Arc<NumericalSemigroup>) -> Result<u32> {
    let m = NormalizedIdeal::maximal(semigroup);
    Ok(2 * crate::rr::reduction_index(&m)?.r_x + 4)
}

pub fn verdict(
    semigroup: &Arc<NumericalSemigroup>,
    n_max: Option<u32>,
) -> Result<QuasiHilbertReport> {
    let filtrations = MaximalFiltrations::new(semigroup)?;
    let red = filtrations.ring.reduction();
    let n_max = n_max.unwrap_or(2 * red.r_x + 4);
    let series = filtrations.e_series(n_max)?;
    let depth = filtrations.depth();
    let window = filtrations.stable_window();
    let gorenstein = semigroup.is_symmetric();
    let eventual_length = window.window.len() as u64;
    let quasi_hilbert = eventual_length > 0;
    let series_disagree = series.tilde != series.power;

    let mut notes = Vec::new();
    if gorenstein {
        notes.push("Gorenstein: K is a translate of A, so E = 0 and A is not quasi-Hilbert".into());
    }
    if series_disagree {
        notes.push("lengths against ~m^n and against m^n differ; G_m(A) has depth zero".into());
    }
    if depth.positive && quasi_hilbert {
        let from = window.n_star.max(1) as usize;
        let tail_ok = series
            .tilde
            .iter()
            .skip(from - 1)
            .all(|&l| l == eventual_length);
        notes.push(format!(
            "positive depth and W nonempty: E_n has constant length {eventual_length} for n >= {} ({})",
            window.n_star,
            if tail_ok { "confirmed on computed range" } else { "MISMATCH on computed range" }
        ));
    }
    Ok(QuasiHilbertReport {
        gorenstein,
        depth_positive: depth.positive,
        depth_witness: depth.witness,
        v_min: red.v_min,
        r_x: red.r_x,
        n_max,
        e_series_tilde: series.tilde,
        e_series_power: series.power,
        series_disagree,
        stable_window: window.window,
        n_star: window.n_star,
        eventual_length,
        quasi_hilbert,
        hilbert_mod_x: hilbert_fn_mod_x(semigroup)?,
        notes,
    })
}
