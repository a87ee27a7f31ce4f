//! Parameter sweeps over three infinite families, achievable atom counts,
//! searches for a prescribed count, and sums `Σ(p_i + 1)` over distinct primes.
//!
//! Families, with q = p^m:
//! 1. `GF(q) + GF(q^k) X + GF(q^{kl})[[X]] X^2`
//! 2. `GF(q) + W X + GF(q^3)[[X]] X^2`, `W = span{1, y}` with y the least
//!    element of degree 3 over GF(q)
//! 3. `GF(q) + GF(q^k)[[X]] X^l`

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::atoms::enumerate_atoms;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::{is_prime, tower_make_capped, FieldTower};
use crate::linalg::Subspace;
use crate::ring::{graded_specs, RingSpec};
use crate::structure::structure_report;

/// A member of one of the three families. Family 2 ignores k and l (both 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyPoint {
    pub family: u32,
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub l: u32,
}

/// Closed-form invariants of a family point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub atoms: u64,
    pub in_m2: u64,
    pub least_universal: usize,
    pub v_order: u64,
}

fn overflow() -> Error {
    Error::CapExceeded {
        cap: "count width",
        requested: u128::MAX,
        limit: u64::MAX as u128,
    }
}

fn pow(b: u64, e: u64) -> Result<u64> {
    let e = u32::try_from(e).map_err(|_| overflow())?;
    b.checked_pow(e).ok_or_else(overflow)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(overflow)
}

impl FamilyPoint {
    pub fn new(family: u32, p: u64, m: u32, k: u32, l: u32) -> FamilyPoint {
        let (k, l) = if family == 2 { (1, 1) } else { (k, l) };
        FamilyPoint { family, p, m, k, l }
    }

    fn check(&self) -> Result<()> {
        if !(1..=3).contains(&self.family) {
            return Err(Error::UnknownFamily(self.family));
        }
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        for (v, what) in [(self.m, "m"), (self.k, "k"), (self.l, "l")] {
            if v == 0 {
                return Err(Error::ZeroParameter { what });
            }
        }
        Ok(())
    }

    /// |K| = p^m.
    pub fn q(&self) -> Result<u64> {
        pow(self.p, self.m as u64)
    }

    /// Builds the ring of the point.
    pub fn to_spec(&self, caps: Caps) -> Result<Arc<RingSpec>> {
        self.check()?;
        let (e, n) = match self.family {
            1 => (self.k.checked_mul(self.l).ok_or_else(overflow)?, 2),
            2 => (3, 2),
            _ => (self.k, self.l as usize),
        };
        let tower = Arc::new(tower_make_capped(self.p, self.m, e, &caps)?);
        let v = match self.family {
            1 => vec![subfield(&tower, self.m * self.k)?],
            2 => vec![Subspace::span(&tower, &tower.kbasis()[..2])?],
            _ => vec![Subspace::zero(&tower); n - 1],
        };
        RingSpec::validate(&tower, n, v, caps)
    }
}

/// The subfield of F of degree d over the prime field.
fn subfield(tower: &Arc<FieldTower>, d: u32) -> Result<Subspace> {
    let f = tower.field();
    let elems: Vec<_> = f.elements().filter(|&a| f.frobenius(a, d) == a).collect();
    Subspace::span(tower, &elems)
}

/// Closed-form counts for a family point.
pub fn predict(point: &FamilyPoint) -> Result<Prediction> {
    point.check()?;
    let q = point.q()?;
    let (k, l) = (point.k as u64, point.l as u64);
    match point.family {
        1 | 3 => {
            let big = pow(q, mul(k, if point.family == 1 { l } else { 1 })?)?;
            let lines = (big - 1) / (q - 1);
            let tail = pow(q, mul(k, l - 1)?)?;
            let atoms = if point.family == 1 {
                mul(lines, tail)?
            } else {
                mul(mul(l, lines)?, tail)?
            };
            let least_universal = match (k, l) {
                (1, 1) => 1,
                (_, 1) => 2,
                _ if point.family == 1 => 4,
                _ => 3,
            };
            // |V| = |L*/K*|·|F/L| (Family 1) and |F*/K*|·|F|^{l-1} (Family 3)
            let v_order = mul((pow(q, k)? - 1) / (q - 1), tail)?;
            Ok(Prediction {
                atoms,
                in_m2: 0,
                least_universal,
                v_order,
            })
        }
        _ => {
            let q2 = mul(q, q)?;
            Ok(Prediction {
                atoms: mul(q, q2 + q + 2)? / 2,
                in_m2: mul(q2, q - 1)? / 2,
                least_universal: 4,
                v_order: q,
            })
        }
    }
}

/// Enumerated invariants of a family point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerated {
    pub atoms: u64,
    pub in_m2: u64,
    pub least_universal: usize,
    pub v_order: u64,
}

/// Cross-check status of a sweep entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepStatus {
    /// Only the closed form was evaluated.
    Predicted,
    /// Enumeration agrees with the closed form.
    Agrees,
    /// Enumeration disagrees with the closed form.
    Mismatch,
    /// Enumeration was requested but a cap was exceeded.
    CapExceeded(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub point: FamilyPoint,
    pub predicted: Prediction,
    pub enumerated: Option<Enumerated>,
    pub status: SweepStatus,
}

/// Parameter bounds of a sweep; points whose predicted count exceeds
/// `max_atoms` are left out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBounds {
    /// Largest q = p^m.
    pub max_pm: u64,
    pub max_k: u32,
    pub max_l: u32,
    pub max_atoms: Option<u64>,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_pm: 9,
            max_k: 3,
            max_l: 3,
            max_atoms: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepResult {
    pub entries: Vec<SweepEntry>,
}

impl SweepResult {
    /// Distinct predicted atom counts.
    pub fn achievable(&self) -> BTreeSet<u64> {
        self.entries.iter().map(|e| e.predicted.atoms).collect()
    }

    pub fn mismatches(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == SweepStatus::Mismatch)
            .count()
    }
}

/// Prime powers `p^m <= max` as `(p, m)`, ordered by value.
pub fn prime_powers(max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in 2..=max {
        if !is_prime(p) {
            continue;
        }
        let mut v = p;
        let mut m = 1;
        while v <= max {
            out.push((p, m));
            match v.checked_mul(p) {
                Some(next) => v = next,
                None => break,
            }
            m += 1;
        }
    }
    out.sort_by_key(|&(p, m)| p.pow(m));
    out
}

/// The family points within the bounds, in (q, k, l) order.
pub fn family_points(family: u32, bounds: &SweepBounds) -> Result<Vec<FamilyPoint>> {
    if !(1..=3).contains(&family) {
        return Err(Error::UnknownFamily(family));
    }
    let mut out = Vec::new();
    for (p, m) in prime_powers(bounds.max_pm) {
        let (ks, ls) = if family == 2 {
            (1..=1, 1..=1)
        } else {
            (1..=bounds.max_k, 1..=bounds.max_l)
        };
        for k in ks {
            for l in ls.clone() {
                let point = FamilyPoint::new(family, p, m, k, l);
                match predict(&point) {
                    Ok(pr) if bounds.max_atoms.is_none_or(|mx| pr.atoms <= mx) => out.push(point),
                    Ok(_) | Err(Error::CapExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// Enumerates the invariants of a point's ring.
pub fn enumerate_point(point: &FamilyPoint, caps: Caps) -> Result<Enumerated> {
    let spec = point.to_spec(caps)?;
    let inv = enumerate_atoms(&spec)?;
    let rep = structure_report(&spec, &inv)?;
    Ok(Enumerated {
        atoms: inv.total() as u64,
        in_m2: inv.in_m2() as u64,
        least_universal: rep.least_universal,
        v_order: rep.v_order,
    })
}

/// Sweeps a family. With `enumerate`, every point is also built and
/// enumerated; points beyond the caps are kept with status `CapExceeded`.
pub fn sweep(family: u32, bounds: &SweepBounds, enumerate: bool, caps: Caps) -> Result<SweepResult> {
    let points = family_points(family, bounds)?;
    let entries = points
        .par_iter()
        .map(|point| {
            let predicted = predict(point)?;
            if !enumerate {
                return Ok(SweepEntry {
                    point: *point,
                    predicted,
                    enumerated: None,
                    status: SweepStatus::Predicted,
                });
            }
            match enumerate_point(point, caps) {
                Ok(en) => {
                    let agrees = en.atoms == predicted.atoms
                        && en.in_m2 == predicted.in_m2
                        && en.least_universal == predicted.least_universal
                        && en.v_order == predicted.v_order;
                    Ok(SweepEntry {
                        point: *point,
                        predicted,
                        enumerated: Some(en),
                        status: if agrees {
                            SweepStatus::Agrees
                        } else {
                            SweepStatus::Mismatch
                        },
                    })
                }
                Err(e @ Error::CapExceeded { .. }) => Ok(SweepEntry {
                    point: *point,
                    predicted,
                    enumerated: None,
                    status: SweepStatus::CapExceeded(e.to_string()),
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { entries })
}

/// Constraint on the parameter l when collecting achievable counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LFilter {
    Any,
    Eq(u32),
    AtLeast(u32),
}

impl LFilter {
    fn accepts(&self, l: u32) -> bool {
        match *self {
            LFilter::Any => true,
            LFilter::Eq(x) => l == x,
            LFilter::AtLeast(x) => l >= x,
        }
    }
}

/// Bounds large enough that every point with fewer than `limit` atoms is
/// reached (all counts grow with q, k and l).
fn covering_bounds(limit: u64) -> SweepBounds {
    let bits = 64 - limit.max(2).leading_zeros();
    SweepBounds {
        max_pm: limit,
        max_k: bits + 1,
        max_l: bits + 1,
        max_atoms: Some(limit.saturating_sub(1)),
    }
}

/// Atom counts below `limit` realised by a family, by closed forms.
pub fn achievable(family: u32, l: LFilter, limit: u64) -> Result<BTreeSet<u64>> {
    let points = family_points(family, &covering_bounds(limit))?;
    points
        .iter()
        .filter(|p| family == 2 || l.accepts(p.l))
        .map(|p| predict(p).map(|pr| pr.atoms))
        .collect()
}

/// Whether `n = (q^k - 1)/(q - 1)` for a prime power q and k >= 2.
pub fn is_projective_line_count(n: u64) -> bool {
    prime_powers(n).iter().any(|&(p, m)| {
        let q = p.pow(m);
        let mut acc = 1 + q;
        while acc < n {
            acc = acc * q + 1;
        }
        acc == n
    })
}

/// Why no ring with a given atom count exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Impossibility {
    /// No local domain has exactly two nonassociate atoms.
    Two,
    /// A prime count forces `M^2` universal, hence the form `(q^k-1)/(q-1)`.
    PrimeWrongForm,
}

/// Counts below `limit` neither realised by a family nor ruled out by the
/// two impossibility results.
pub fn unresolved(limit: u64) -> Result<BTreeSet<u64>> {
    let mut reached = BTreeSet::new();
    for family in 1..=3 {
        reached.extend(achievable(family, LFilter::Any, limit)?);
    }
    Ok((1..limit)
        .filter(|&n| !reached.contains(&n) && impossibility(n).is_none())
        .collect())
}

/// Proven nonexistence of a local ring with n atoms.
pub fn impossibility(n: u64) -> Option<Impossibility> {
    if n == 2 {
        Some(Impossibility::Two)
    } else if n >= 3 && is_prime(n) && !is_projective_line_count(n) {
        Some(Impossibility::PrimeWrongForm)
    } else {
        None
    }
}

/// A graded spec found by the exhaustive search.
#[derive(Debug, Clone)]
pub struct GradedHit {
    pub spec: Arc<RingSpec>,
    pub in_m2: u64,
    pub least_universal: usize,
}

/// Outcome of [`find_with_atom_count`].
#[derive(Debug, Clone)]
pub enum FindOutcome {
    /// Rings with the requested count.
    Found {
        points: Vec<FamilyPoint>,
        graded: Vec<GradedHit>,
    },
    /// No such ring exists.
    Impossible(Impossibility),
    /// Nothing within the searched bounds; existence is left open.
    NotFoundWithinBounds,
}

/// Family points (and optionally graded specs over small towers) with exactly
/// n atom classes.
pub fn find_with_atom_count(
    n: u64,
    bounds: &SweepBounds,
    exhaustive: Option<&GradedBounds>,
    caps: Caps,
) -> Result<FindOutcome> {
    if n == 0 {
        return Err(Error::ZeroParameter { what: "n" });
    }
    if let Some(reason) = impossibility(n) {
        return Ok(FindOutcome::Impossible(reason));
    }
    let mut points = Vec::new();
    for family in 1..=3 {
        for p in family_points(family, bounds)? {
            if predict(&p)?.atoms == n {
                points.push(p);
            }
        }
    }
    let mut graded = Vec::new();
    if let Some(gb) = exhaustive {
        let specs = battery(gb, caps)?;
        let hits: Vec<Option<GradedHit>> = specs
            .par_iter()
            .map(|s| {
                let inv = enumerate_atoms(s)?;
                if inv.total() as u64 != n {
                    return Ok(None);
                }
                let rep = structure_report(s, &inv)?;
                Ok(Some(GradedHit {
                    spec: Arc::clone(s),
                    in_m2: inv.in_m2() as u64,
                    least_universal: rep.least_universal,
                }))
            })
            .collect::<Result<_>>()?;
        graded.extend(hits.into_iter().flatten());
    }
    if points.is_empty() && graded.is_empty() {
        Ok(FindOutcome::NotFoundWithinBounds)
    } else {
        Ok(FindOutcome::Found { points, graded })
    }
}

/// Bounds of the exhaustive graded-spec search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedBounds {
    pub max_field_order: u64,
    pub max_n: usize,
}

impl Default for GradedBounds {
    fn default() -> Self {
        GradedBounds {
            max_field_order: 16,
            max_n: 3,
        }
    }
}

/// Every valid graded spec with `|F| <= max_field_order` and `n <= max_n`,
/// ordered by (p, m, e, n) and then by subspace chain.
pub fn battery(bounds: &GradedBounds, caps: Caps) -> Result<Vec<Arc<RingSpec>>> {
    let mut towers = Vec::new();
    for (p, d) in prime_powers(bounds.max_field_order) {
        for m in 1..=d {
            if d % m == 0 {
                towers.push((p, m, d / m));
            }
        }
    }
    towers.sort();
    let mut out = Vec::new();
    for (p, m, e) in towers {
        let t = Arc::new(tower_make_capped(p, m, e, &caps)?);
        for n in 1..=bounds.max_n {
            out.extend(graded_specs(&t, n, caps)?);
        }
    }
    Ok(out)
}

/// Decompositions `n = Σ(p_i + 1)` over sets of distinct primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    /// Number of decompositions.
    pub count: u128,
    /// The decompositions (primes ascending, lists in lexicographic order),
    /// at most `limit` of them.
    pub decompositions: Vec<Vec<u64>>,
    pub truncated: bool,
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| is_prime(p)).collect()
}

/// Number of ways to write each value up to n as `Σ(p_i + 1)`, distinct primes.
fn composition_counts(n: u64) -> Vec<u128> {
    let mut ways = vec![0u128; n as usize + 1];
    ways[0] = 1;
    for p in primes_below(n) {
        let part = (p + 1) as usize;
        for v in (part..=n as usize).rev() {
            ways[v] = ways[v].saturating_add(ways[v - part]);
        }
    }
    ways
}

/// Whether n is a sum `Σ(p_i + 1)` over distinct primes.
pub fn compose_exists(n: u64) -> bool {
    composition_counts(n)[n as usize] > 0
}

/// Lists the decompositions `n = Σ(p_i + 1)`, stopping after `limit`.
pub fn compose_nonlocal(n: u64, limit: usize) -> Composition {
    let count = composition_counts(n)[n as usize];
    let primes = primes_below(n);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn walk(
        primes: &[u64],
        from: usize,
        rest: u64,
        stack: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if rest == 0 {
            out.push(stack.clone());
            return;
        }
        for i in from..primes.len() {
            let part = primes[i] + 1;
            if part > rest {
                break;
            }
            stack.push(primes[i]);
            walk(primes, i + 1, rest - part, stack, out, limit);
            stack.pop();
        }
    }
    walk(&primes, 0, n, &mut stack, &mut out, limit);
    Composition {
        count,
        truncated: (out.len() as u128) < count,
        decompositions: out,
    }
}
