//! Brute-force twin of the kernel over dense truncated windows.
//!
//! Nothing here touches the bitset windows or the normal forms of
//! [`NormalizedIdeal`]; sets are plain `Vec<bool>` over `[low, bound)` and
//! every operation is an exhaustive scan. Colon chains are walked step by
//! step instead of being cut at the reduction number.
//!
//! A truncated set is trusted up to its bound only when it ends in a run of
//! at least `e` (the multiplicity) members: for an `S`-closed set that run
//! forces everything above it to be present, so the last missing element
//! seen is the true conductor minus one.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::NormalizedIdeal;
use crate::rr::Filtration;
use crate::semigroup::NumericalSemigroup;

/// Hard cap for bound doubling.
pub const MAX_BOUND: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSet {
    low: i64,
    bound: i64,
    members: Vec<bool>,
}

impl TruncatedSet {
    fn from_fn(low: i64, bound: i64, f: impl Fn(i64) -> bool) -> Self {
        let bound = bound.max(low);
        Self {
            low,
            bound,
            members: (low..bound).map(f).collect(),
        }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Membership; below `low` is outside, at or past `bound` is unknown.
    pub fn get(&self, z: i64) -> Result<bool> {
        if z < self.low {
            Ok(false)
        } else if z >= self.bound {
            Err(Error::BeyondBound(z))
        } else {
            Ok(self.members[(z - self.low) as usize])
        }
    }

    fn at(&self, z: i64) -> bool {
        z >= self.low && z < self.bound && self.members[(z - self.low) as usize]
    }

    /// One past the last missing element seen below the bound.
    pub fn apparent_conductor(&self) -> i64 {
        self.members
            .iter()
            .rposition(|&m| !m)
            .map_or(self.low, |p| self.low + p as i64 + 1)
    }

    pub fn first_member(&self) -> Option<i64> {
        self.members
            .iter()
            .position(|&m| m)
            .map(|p| self.low + p as i64)
    }

    /// Members below the apparent conductor.
    pub fn window_members(&self) -> Vec<i64> {
        (self.low..self.apparent_conductor())
            .filter(|&z| self.at(z))
            .collect()
    }

    /// The final run of members is at least `run` long.
    pub fn margin_ok(&self, run: i64) -> bool {
        self.bound - self.apparent_conductor() >= run
    }

    /// Equality on the overlap of the two windows.
    pub fn same_as(&self, other: &Self) -> bool {
        let lo = self.low.min(other.low);
        let hi = self.bound.min(other.bound);
        (lo..hi).all(|z| self.at(z) == other.at(z))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        let hi = self.bound.min(other.bound);
        (self.low..hi).all(|z| !self.at(z) || other.at(z))
    }

    /// Agreement with a kernel ideal on `[low, bound)`; the kernel must have
    /// nothing below `low`.
    pub fn agrees_with(&self, ideal: &NormalizedIdeal) -> bool {
        ideal.min() >= self.low && (self.low..self.bound).all(|z| self.at(z) == ideal.contains(z))
    }
}

impl fmt::Display for TruncatedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members = self.window_members();
        write!(
            f,
            "{{min={}, conductor={}, members={:?}, bound={}}}",
            self.first_member().unwrap_or(self.bound),
            self.apparent_conductor(),
            members,
            self.bound
        )
    }
}

/// `S` over `[0, bound)` by dynamic programming reachability.
pub fn naive_semigroup(gens: &[i64], bound: i64) -> Result<TruncatedSet> {
    let max = *gens.iter().max().ok_or(Error::EmptyInput)?;
    let min = *gens.iter().min().unwrap();
    if min < 1 {
        return Err(Error::NonPositiveGenerator(min));
    }
    let needed = 2 * max * min + 1;
    if bound < needed {
        return Err(Error::BoundTooSmall { bound, needed });
    }
    let mut reach = vec![false; bound as usize];
    reach[0] = true;
    for z in 1..bound as usize {
        reach[z] = gens
            .iter()
            .any(|&g| g as usize <= z && reach[z - g as usize]);
    }
    Ok(TruncatedSet {
        low: 0,
        bound,
        members: reach,
    })
}

/// Union of `g + S` over the generators.
pub fn naive_ideal(semigroup: &TruncatedSet, gens: &[i64]) -> Result<TruncatedSet> {
    let low = *gens.iter().min().ok_or(Error::EmptyInput)?;
    let bound = semigroup.bound + low;
    Ok(TruncatedSet::from_fn(low, bound, |z| {
        gens.iter().any(|&g| semigroup.at(z - g))
    }))
}

/// `{z : F - z ∉ S}` with `F` read off the truncated semigroup.
pub fn naive_canonical(semigroup: &TruncatedSet) -> TruncatedSet {
    let f = semigroup.apparent_conductor() - 1;
    TruncatedSet::from_fn(0, semigroup.bound, |z| !semigroup.at(f - z))
}

pub fn naive_shift(set: &TruncatedSet, c: i64) -> TruncatedSet {
    TruncatedSet {
        low: set.low + c,
        bound: set.bound + c,
        members: set.members.clone(),
    }
}

/// Minkowski sum by exhaustive search for a decomposition.
pub fn naive_product(a: &TruncatedSet, b: &TruncatedSet) -> TruncatedSet {
    let low = a.low + b.low;
    let bound = (a.bound + b.low).min(b.bound + a.low);
    let a_members: Vec<i64> = (a.low..a.bound).filter(|&z| a.at(z)).collect();
    TruncatedSet::from_fn(low, bound, |z| {
        a_members
            .iter()
            .take_while(|&&x| x <= z - b.low)
            .any(|&x| b.at(z - x))
    })
}

pub fn naive_power(ideal: &TruncatedSet, n: u32, unit: &TruncatedSet) -> TruncatedSet {
    (0..n).fold(unit.clone(), |acc, _| naive_product(&acc, ideal))
}

pub fn naive_intersect(a: &TruncatedSet, b: &TruncatedSet) -> TruncatedSet {
    let low = a.low.max(b.low);
    let bound = a.bound.min(b.bound);
    TruncatedSet::from_fn(low, bound, |z| a.at(z) && b.at(z))
}

pub fn naive_union(a: &TruncatedSet, b: &TruncatedSet) -> TruncatedSet {
    let low = a.low.min(b.low);
    let bound = a.bound.min(b.bound);
    TruncatedSet::from_fn(low, bound, |z| a.at(z) || b.at(z))
}

/// `{z : z + F ⊆ E}`, optionally intersected with `within`.
///
/// Every `f` with `z + f` below the apparent conductor of `E` is tested, so
/// `F` must be known that far.
pub fn naive_colon(
    e: &TruncatedSet,
    f: &TruncatedSet,
    within: Option<&TruncatedSet>,
) -> Result<TruncatedSet> {
    let f_low = f.first_member().ok_or(Error::EmptyInput)?;
    let e_low = e.first_member().unwrap_or(e.bound);
    let ce = e.apparent_conductor();
    let low = e_low - f_low;
    let needed = ce - low;
    if f.bound < needed {
        return Err(Error::BoundTooSmall {
            bound: f.bound,
            needed,
        });
    }
    let bound = e.bound - f_low;
    let f_members: Vec<i64> = (f_low..f.bound).filter(|&y| f.at(y)).collect();
    let colon = TruncatedSet::from_fn(low, bound, |z| {
        f_members
            .iter()
            .take_while(|&&y| z + y < ce)
            .all(|&y| e.at(z + y))
    });
    Ok(match within {
        Some(w) => naive_intersect(&colon, w),
        None => colon,
    })
}

/// `(min(I), least n with min(I) + I^n = I^{n+1})`, compared on the
/// overlap of the truncated windows.
pub fn naive_reduction(ideal: &TruncatedSet, unit: &TruncatedSet, cap: u32) -> Result<(i64, u32)> {
    let v = ideal.first_member().ok_or(Error::EmptyInput)?;
    let mut power = unit.clone();
    for n in 0..=cap {
        let next = naive_product(&power, ideal);
        if naive_shift(&power, v).same_as(&next) {
            return Ok((v, n));
        }
        power = next;
    }
    Err(Error::SafetyCapExceeded(cap as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `(I^{t+k} M :_A I^k M)`, whose union is `r(I^t, M)`.
    Ring,
    /// `(I^{t+k} M :_M I^k)`, whose union is the closure of `I^t M`.
    Module,
}

/// Walks the colon chain `k = 0, 1, 2, ...` until it has been constant for
/// `r` consecutive steps with `k >= r`, where `r` is the reduction number.
pub fn naive_rr_chain(
    ideal: &TruncatedSet,
    t: u32,
    module: &TruncatedSet,
    unit: &TruncatedSet,
    kind: ChainKind,
) -> Result<TruncatedSet> {
    let cap = 64;
    let (_, r) = naive_reduction(ideal, unit, cap)?;
    let within = match kind {
        ChainKind::Ring => unit,
        ChainKind::Module => module,
    };
    let mut ideal_power = unit.clone();
    let mut module_power = module.clone();
    let mut top = naive_power(ideal, t, unit);
    top = naive_product(&top, module);
    let mut previous: Option<TruncatedSet> = None;
    let mut plateau = 0;
    for k in 0..=(4 * r + 8) {
        let denominator = match kind {
            ChainKind::Ring => &module_power,
            ChainKind::Module => &ideal_power,
        };
        let current = naive_colon(&top, denominator, Some(within))?;
        if let Some(prev) = &previous {
            if !prev.is_subset_of(&current) {
                return Err(Error::NoStabilization(k as u64));
            }
            if prev.same_as(&current) {
                plateau += 1;
            } else {
                plateau = 0;
            }
        }
        if k >= r && plateau >= r {
            return Ok(current);
        }
        previous = Some(current);
        ideal_power = naive_product(&ideal_power, ideal);
        module_power = naive_product(&module_power, ideal);
        top = naive_product(&top, ideal);
    }
    Err(Error::NoStabilization((4 * r + 8) as u64))
}

/// Which fractional ideal plays the module `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleChoice {
    Canonical,
    /// `t^c A`.
    Principal(i64),
    /// The fractional ideal generated by the given valuations.
    Fractional(Vec<i64>),
}

impl ModuleChoice {
    pub fn build(&self, semigroup: &Arc<NumericalSemigroup>) -> Result<NormalizedIdeal> {
        match self {
            ModuleChoice::Canonical => Ok(NormalizedIdeal::canonical(semigroup)),
            ModuleChoice::Principal(c) => Ok(NormalizedIdeal::unit(semigroup).shift(*c)),
            ModuleChoice::Fractional(gens) => NormalizedIdeal::from_generators(semigroup, gens),
        }
    }

    fn build_naive(&self, unit: &TruncatedSet) -> Result<TruncatedSet> {
        match self {
            ModuleChoice::Canonical => Ok(naive_canonical(unit)),
            ModuleChoice::Principal(c) => Ok(naive_shift(unit, *c)),
            ModuleChoice::Fractional(gens) => naive_ideal(unit, gens),
        }
    }

    fn largest_valuation(&self) -> i64 {
        match self {
            ModuleChoice::Canonical => 0,
            ModuleChoice::Principal(c) => c.abs(),
            ModuleChoice::Fractional(gens) => gens.iter().map(|g| g.abs()).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for ModuleChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleChoice::Canonical => write!(f, "canonical"),
            ModuleChoice::Principal(c) => write!(f, "principal({c})"),
            ModuleChoice::Fractional(g) => write!(f, "fractional{g:?}"),
        }
    }
}

/// One checked instance: semigroup, ideal, module and exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInstance {
    pub semigroup: Vec<i64>,
    pub ideal: Vec<i64>,
    pub module: ModuleChoice,
    pub t: u32,
}

impl fmt::Display for OracleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S={:?} I={:?} M={} t={}",
            self.semigroup, self.ideal, self.module, self.t
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub operation: String,
    pub instance: String,
    pub bound: i64,
    pub kernel: String,
    pub oracle: String,
    pub agree: bool,
    pub margin_ok: bool,
}

/// Default truncation bound `8(F+1) + 12·g·(t + r)`, with `g` the largest
/// valuation among the inputs and `r` a sizing hint for the reduction number.
pub fn default_bound(frobenius: i64, largest: i64, t: u32, r_hint: u32) -> i64 {
    8 * (frobenius + 1) + 12 * largest * (t + r_hint) as i64
}

struct Checker {
    instance: String,
    bound: i64,
    run: i64,
    reports: Vec<OracleReport>,
}

impl Checker {
    fn ideal(
        &mut self,
        op: &str,
        kernel: &NormalizedIdeal,
        oracle: &TruncatedSet,
        inputs_ok: bool,
    ) {
        self.reports.push(OracleReport {
            operation: op.into(),
            instance: self.instance.clone(),
            bound: self.bound,
            kernel: kernel.to_string(),
            oracle: oracle.to_string(),
            agree: oracle.agrees_with(kernel),
            margin_ok: inputs_ok && oracle.margin_ok(self.run),
        });
    }

    fn value<T: fmt::Debug + PartialEq>(
        &mut self,
        op: &str,
        kernel: T,
        oracle: T,
        margin_ok: bool,
    ) {
        self.reports.push(OracleReport {
            operation: op.into(),
            instance: self.instance.clone(),
            bound: self.bound,
            kernel: format!("{kernel:?}"),
            oracle: format!("{oracle:?}"),
            agree: kernel == oracle,
            margin_ok,
        });
    }
}

/// Runs every kernel operation on `instance` against its naive twin at
/// truncation bound `bound`.
pub fn check_instance(instance: &OracleInstance, bound: i64) -> Result<Vec<OracleReport>> {
    let s = Arc::new(NumericalSemigroup::new(&instance.semigroup)?);
    let e = s.multiplicity();
    let t = instance.t;
    let unit_n = naive_semigroup(s.generators(), bound)?;
    let mut ck = Checker {
        instance: instance.to_string(),
        bound,
        run: e,
        reports: Vec::new(),
    };
    let unit_ok = unit_n.margin_ok(e);

    // Semigroup-level data.
    let unit = NormalizedIdeal::unit(&s);
    ck.ideal("semigroup", &unit, &unit_n, true);
    let f_naive = unit_n.apparent_conductor() - 1;
    ck.value("frobenius", s.frobenius(), f_naive, unit_ok);
    let apery_naive: Vec<i64> = (0..e)
        .map(|r| {
            (0..bound)
                .find(|&z| z % e == r && unit_n.at(z))
                .unwrap_or(-1)
        })
        .collect();
    ck.value("apery_set", s.apery_set(e)?, apery_naive, unit_ok);
    let symmetric_naive = (0..=f_naive).all(|z| unit_n.at(z) != unit_n.at(f_naive - z));
    ck.value("is_symmetric", s.is_symmetric(), symmetric_naive, unit_ok);
    let k = NormalizedIdeal::canonical(&s);
    let k_n = naive_canonical(&unit_n);
    ck.ideal("canonical_ideal", &k, &k_n, unit_ok);

    // Ideal and module.
    let ideal = NormalizedIdeal::from_generators(&s, &instance.ideal)?;
    let ideal_n = naive_ideal(&unit_n, &instance.ideal)?;
    ck.ideal("ideal_from_generators", &ideal, &ideal_n, unit_ok);
    let module = instance.module.build(&s)?;
    let module_n = instance.module.build_naive(&unit_n)?;
    ck.ideal("module", &module, &module_n, unit_ok);

    let m_n = naive_ideal(&unit_n, s.generators())?;
    let me_n = naive_product(&m_n, &ideal_n);
    let mingens_naive: Vec<i64> = (ideal_n.low..me_n.apparent_conductor())
        .filter(|&z| ideal_n.at(z) && !me_n.at(z))
        .collect();
    ck.value(
        "minimal_generators",
        ideal.minimal_generators(),
        mingens_naive,
        me_n.margin_ok(e),
    );

    let prod = ideal.product(&module)?;
    let prod_n = naive_product(&ideal_n, &module_n);
    ck.ideal("product", &prod, &prod_n, true);
    let pow = ideal.power(t);
    let pow_n = naive_power(&ideal_n, t, &unit_n);
    ck.ideal("power", &pow, &pow_n, true);

    let num = ideal.power(t + 1).product(&module)?;
    let den = prod.clone();
    let num_n = naive_product(&naive_power(&ideal_n, t + 1, &unit_n), &module_n);
    let raw_n = naive_colon(&num_n, &prod_n, None)?;
    ck.ideal("colon_z", &num.colon_z(&den)?, &raw_n, num_n.margin_ok(e));
    let inside_n = naive_colon(&num_n, &prod_n, Some(&unit_n))?;
    ck.ideal(
        "colon_in",
        &num.colon_in(&den, &unit)?,
        &inside_n,
        num_n.margin_ok(e),
    );

    let closure_n = TruncatedSet::from_fn(0, bound, |z| {
        unit_n.at(z) && z >= t as i64 * ideal_n.first_member().unwrap_or(0)
    });
    ck.ideal(
        "integral_closure_power",
        &ideal.integral_closure_power(t),
        &closure_n,
        true,
    );

    let proper = ideal.min() >= 1 && ideal.is_subset_of(&unit);
    if proper {
        let filtration = Filtration::new(&ideal, &module)?;
        let ring_filtration = Filtration::of_ring(&ideal)?;
        let red = filtration.reduction();
        let (v_n, r_n) = naive_reduction(&ideal_n, &unit_n, 64)?;
        ck.value("reduction_index", (red.v_min, red.r_x), (v_n, r_n), true);

        let rr = filtration.rr_ideal(t)?;
        let rr_n = naive_rr_chain(&ideal_n, t, &module_n, &unit_n, ChainKind::Ring)?;
        ck.ideal("rr_ideal", &rr, &rr_n, true);
        let cl = ring_filtration.rr_ideal(t)?;
        let cl_n = naive_rr_chain(&ideal_n, t, &unit_n, &unit_n, ChainKind::Ring)?;
        ck.ideal("rr_closure", &cl, &cl_n, true);
        let mc = filtration.rr_module_closure(t)?;
        let mc_n = naive_rr_chain(&ideal_n, t, &module_n, &unit_n, ChainKind::Module)?;
        ck.ideal("rr_module_closure", &mc, &mc_n, true);

        let len_n = (pow_n.low..rr_n.bound.min(pow_n.bound))
            .filter(|&z| rr_n.at(z) && !pow_n.at(z))
            .count() as u64;
        ck.value(
            "quotient_length",
            rr.quotient_length(&pow)?,
            len_n,
            rr_n.margin_ok(e) && pow_n.margin_ok(e),
        );
    }

    let hilbert_n = naive_hilbert_mod_x(&unit_n, &m_n, e);
    ck.value(
        "hilbert_fn_mod_x",
        crate::qh::hilbert_fn_mod_x(&s)?,
        hilbert_n,
        true,
    );
    Ok(ck.reports)
}

fn naive_hilbert_mod_x(unit: &TruncatedSet, m: &TruncatedSet, e: i64) -> Vec<u64> {
    let x = naive_shift(unit, e);
    let mut coeffs = Vec::new();
    let mut upper = naive_union(unit, &x);
    let mut power = unit.clone();
    let mut total = 0;
    while total < e as u64 && coeffs.len() <= e as usize {
        power = naive_product(&power, m);
        let lower = naive_union(&power, &x);
        let hi = upper.bound.min(lower.bound);
        let c = (0..hi).filter(|&z| upper.at(z) && !lower.at(z)).count() as u64;
        coeffs.push(c);
        total += c;
        upper = lower;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

/// Checks `instance` at `bound` and at twice that bound. Without an explicit
/// bound the default is used and doubled on `BoundTooSmall` up to [`MAX_BOUND`].
pub fn check_instance_two_bounds(
    instance: &OracleInstance,
    bound: Option<i64>,
) -> Result<Vec<OracleReport>> {
    let mut b = match bound {
        Some(b) => b,
        None => {
            let s = NumericalSemigroup::new(&instance.semigroup)?;
            let largest = instance
                .ideal
                .iter()
                .chain(s.generators())
                .map(|x| x.abs())
                .max()
                .unwrap_or(1)
                .max(instance.module.largest_valuation());
            let ideal = NormalizedIdeal::from_generators(&Arc::new(s.clone()), &instance.ideal)?;
            let r_hint = crate::rr::reduction_index(&ideal).map_or(0, |r| r.r_x);
            default_bound(s.frobenius(), largest, instance.t, r_hint)
        }
    };
    loop {
        let attempt = check_instance(instance, b).and_then(|mut first| {
            first.extend(check_instance(instance, 2 * b)?);
            Ok(first)
        });
        match attempt {
            Err(Error::BoundTooSmall { .. }) if bound.is_none() && 4 * b <= MAX_BOUND => b *= 2,
            other => return other,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Largest Frobenius number admitted by the random generator.
pub const SUITE_MAX_FROBENIUS: i64 = 200;

/// Deterministic random instance stream: 2 to 4 generators in `[3, 60]`
/// with gcd 1 and Frobenius number at most [`SUITE_MAX_FROBENIUS`].
pub fn random_instance(rng: &mut impl Rng) -> OracleInstance {
    let s = loop {
        let k = rng.gen_range(2..=4);
        let gens: Vec<i64> = (0..k).map(|_| rng.gen_range(3..=60)).collect();
        if gens.iter().fold(0, |a, &x| gcd(a, x)) != 1 {
            continue;
        }
        if let Ok(s) = NumericalSemigroup::new(&gens) {
            if s.frobenius() <= SUITE_MAX_FROBENIUS {
                break s;
            }
        }
    };
    let top = s.frobenius() + s.generators().last().unwrap();
    let elements: Vec<i64> = (1..=top).filter(|&z| s.contains(z)).collect();
    let count = rng.gen_range(1..=3);
    let mut ideal: Vec<i64> = elements.choose_multiple(rng, count).copied().collect();
    ideal.sort_unstable();
    let module = match rng.gen_range(0..3) {
        0 => ModuleChoice::Canonical,
        1 => ModuleChoice::Principal(rng.gen_range(-10..=10)),
        _ => {
            let n = rng.gen_range(1..=3);
            let mut g: Vec<i64> = (0..n)
                .map(|_| rng.gen_range(-8..=s.frobenius() + 8))
                .collect();
            g.sort_unstable();
            g.dedup();
            ModuleChoice::Fractional(g)
        }
    };
    OracleInstance {
        semigroup: s.generators().to_vec(),
        ideal,
        module,
        t: rng.gen_range(1..=6),
    }
}

/// Generates `count` instances from `seed` and checks each at the default
/// bound `B` and at `2B`.
pub fn compare_suite(seed: u64, count: usize) -> Result<Vec<OracleReport>> {
    compare_suite_at(seed, count, None)
}

/// [`compare_suite`] with an explicit truncation bound for every instance.
pub fn compare_suite_at(seed: u64, count: usize, bound: Option<i64>) -> Result<Vec<OracleReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for _ in 0..count {
        let instance = random_instance(&mut rng);
        reports.extend(check_instance_two_bounds(&instance, bound)?);
    }
    Ok(reports)
}
