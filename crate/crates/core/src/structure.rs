//! Ideal powers, universality, the multiplier ring `[M:M]` and the group
//! `V = U([M:M]) / U(R)`.
//!
//! # Coefficientwise description of `M^k`
//!
//! Put `S_j^(1) = V_j` (with `V_j = F` for `j >= n`) and
//! `S_j^(k) = K·span(∪_{i>=1} S_{j-i}^(k-1) · V_i)`. Then `f ∈ M^k` iff
//! `c_j = 0` for `j < k` and `c_j ∈ S_j^(k)` for `k <= j < kn`; coefficients
//! from `kn` on are free.
//!
//! Sketch: a product of `k` elements of `M` has its j-th coefficient in the
//! span of products `V_{i_1}···V_{i_k}` with `i_1 + ... + i_k = j`, which is
//! `S_j^(k)`, and sums stay in the span. Conversely `s X^j` with `s` a product
//! `v_1···v_k`, `v_t ∈ V_{i_t}`, is the product of the monomials `v_t X^{i_t}`,
//! and `F[[X]] X^{kn} = (F[[X]] X^n)^k ⊆ M^k`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::atoms::AtomInventory;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Subspace;
use crate::ring::{series_quotient, window_mul, RingElem, RingSpec, WindowSpace};

/// The ideal `M^k`, described by the subspaces `S_j^(k)`.
#[derive(Debug, Clone)]
pub struct IdealPower {
    spec: Arc<RingSpec>,
    k: usize,
    /// `s[j - k]` for `k <= j < kn`.
    s: Vec<Subspace>,
    zero: Subspace,
}

impl IdealPower {
    fn first(spec: &Arc<RingSpec>) -> IdealPower {
        let n = spec.n();
        IdealPower {
            spec: Arc::clone(spec),
            k: 1,
            s: (1..n).map(|j| spec.coeff_space(j).clone()).collect(),
            zero: Subspace::zero(spec.tower()),
        }
    }

    fn next(&self) -> Result<IdealPower> {
        let spec = &self.spec;
        let n = spec.n();
        let k = self.k + 1;
        let full = spec.coeff_space(n);
        let mut s = Vec::with_capacity(k * n - k);
        for j in k..k * n {
            let mut acc = self.zero.clone();
            for i in 1..=j - self.k {
                let prev = self.space(j - i);
                if prev.is_zero() {
                    continue;
                }
                let term = prev.product_space(spec.coeff_space(i))?;
                acc = acc.sum(&term)?;
                if acc.is_full() {
                    break;
                }
            }
            debug_assert!(acc.is_subspace_of(full).unwrap_or(false));
            s.push(acc);
        }
        Ok(IdealPower {
            spec: Arc::clone(spec),
            k,
            s,
            zero: self.zero.clone(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `S_j^(k)`: zero below k, F from kn on.
    pub fn space(&self, j: usize) -> &Subspace {
        let n = self.spec.n();
        if j < self.k {
            &self.zero
        } else if j >= self.k * n {
            self.spec.coeff_space(n)
        } else {
            &self.s[j - self.k]
        }
    }

    pub fn contains(&self, f: &RingElem) -> bool {
        f.coeffs()
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0 || self.space(j).contains(c))
    }

    /// Membership of a window polynomial of order d.
    pub fn contains_window(&self, d: usize, w: &[Elem]) -> bool {
        w.iter()
            .enumerate()
            .all(|(t, &c)| c == 0 || self.space(d + t).contains(c))
    }

    /// R-module generators as `(j, s)` meaning `s·X^j`.
    pub fn generators(&self) -> Vec<(usize, Elem)> {
        let n = self.spec.n();
        let kn = self.k * n;
        let mut g = Vec::new();
        for j in self.k..kn {
            g.extend(self.space(j).basis().iter().map(|&s| (j, s)));
        }
        for j in kn..kn + n {
            g.extend(self.spec.tower().kbasis().iter().map(|&b| (j, b)));
        }
        g
    }

    /// `dim_K` of the graded piece `M^{k-1} / M^k` (for k >= 2).
    pub fn quotient_dim(&self, prev: &IdealPower) -> usize {
        (prev.k..self.k * self.spec.n())
            .map(|j| prev.space(j).dim() - self.space(j).dim())
            .sum()
    }
}

/// Computes `M^k`.
pub fn ideal_power(spec: &Arc<RingSpec>, k: usize) -> Result<IdealPower> {
    if k == 0 {
        return Err(Error::ZeroParameter { what: "k" });
    }
    let mut p = IdealPower::first(spec);
    while p.k < k {
        p = p.next()?;
    }
    Ok(p)
}

/// Lazily extended sequence `M, M^2, M^3, ...`.
pub struct PowerChain {
    powers: Vec<IdealPower>,
}

impl PowerChain {
    pub fn new(spec: &Arc<RingSpec>) -> PowerChain {
        PowerChain {
            powers: vec![IdealPower::first(spec)],
        }
    }

    pub fn get(&mut self, k: usize) -> Result<&IdealPower> {
        assert!(k >= 1);
        while self.powers.len() < k {
            let next = self.powers.last().unwrap().next()?;
            self.powers.push(next);
        }
        Ok(&self.powers[k - 1])
    }

    /// Largest k with the window polynomial in `M^k` (at least 1, at most d).
    pub fn layer(&mut self, d: usize, w: &[Elem]) -> Result<usize> {
        let mut k = 1;
        while k < d && self.get(k + 1)?.contains_window(d, w) {
            k += 1;
        }
        Ok(k)
    }

    /// `dim_K M^{k-1} / M^k` for k >= 2.
    pub fn graded_dim(&mut self, k: usize) -> Result<usize> {
        assert!(k >= 2);
        self.get(k)?;
        Ok(self.powers[k - 1].quotient_dim(&self.powers[k - 2]))
    }
}

fn divisible_by_all(spec: &RingSpec, power: &IdealPower, divisors: &[&crate::atoms::AtomClass]) -> bool {
    let n = spec.n();
    let gens = power.generators();
    divisors.par_iter().all(|a| {
        let s = a.form.order;
        gens.iter().all(|&(j, c)| {
            if j >= s + n {
                return true;
            }
            let mut w = vec![0; n];
            w[0] = c;
            spec.window_divides(&a.form.window, s, &w, j)
        })
    })
}

/// Whether `M^k ⊆ Ra` for every atom a.
pub fn is_universal(spec: &Arc<RingSpec>, inv: &AtomInventory, k: usize) -> Result<bool> {
    let power = ideal_power(spec, k)?;
    let all: Vec<_> = inv.atoms().iter().collect();
    Ok(divisible_by_all(spec, &power, &all))
}

/// Whether `M^k ⊆ Ra` for every atom a in `M \ M^2`.
pub fn is_weakly_universal(spec: &Arc<RingSpec>, inv: &AtomInventory, k: usize) -> Result<bool> {
    let power = ideal_power(spec, k)?;
    let first: Vec<_> = inv.atoms().iter().filter(|a| a.layer == 1).collect();
    Ok(divisible_by_all(spec, &power, &first))
}

fn least_power(
    spec: &Arc<RingSpec>,
    inv: &AtomInventory,
    weakly: bool,
    cap: usize,
) -> Result<usize> {
    let divisors: Vec<_> = inv
        .atoms()
        .iter()
        .filter(|a| !weakly || a.layer == 1)
        .collect();
    let mut chain = PowerChain::new(spec);
    for k in 1..=cap {
        if divisible_by_all(spec, chain.get(k)?, &divisors) {
            return Ok(k);
        }
    }
    Err(Error::Internal(format!(
        "no {}universal power up to the guaranteed bound {cap}",
        if weakly { "weakly " } else { "" }
    )))
}

/// Least k with `M^k` universal. The search stops at `max(1, N-1)`, N the
/// number of atom classes, where a universal power is guaranteed.
pub fn least_universal_power(spec: &Arc<RingSpec>, inv: &AtomInventory) -> Result<usize> {
    least_power(spec, inv, false, inv.total().saturating_sub(1).max(1))
}

/// Least k with `M^k` weakly universal, searched up to the number of atoms in
/// `M \ M^2`.
pub fn least_weakly_universal_power(spec: &Arc<RingSpec>, inv: &AtomInventory) -> Result<usize> {
    least_power(spec, inv, true, inv.layer_count(1).max(1))
}

/// The multiplier ring `[M:M] = U_0 + U_1 X + ... + U_{n-2} X^{n-2} + F[[X]] X^{n-1}`.
#[derive(Debug, Clone)]
pub struct MultiplierRing {
    /// `U_0, ..., U_{n-1}`; the last entry is F (for n = 1 the list is just F).
    pub u: Vec<Subspace>,
    /// Whether M is the maximal ideal of `[M:M]`.
    pub m_maximal: bool,
}

impl MultiplierRing {
    /// Allowed coefficients at index j.
    pub fn coeff_space(&self, j: usize) -> &Subspace {
        &self.u[j.min(self.u.len() - 1)]
    }
}

/// `U_j = {c ∈ F : c·V_i ⊆ V_{i+j} for 1 <= i, i + j <= n-1}`.
pub fn multiplier_ring(spec: &RingSpec) -> MultiplierRing {
    let n = spec.n();
    let f = spec.field();
    let mut u = Vec::with_capacity(n);
    for j in 0..n.saturating_sub(1) {
        let gens: Vec<Elem> = f
            .elements()
            .filter(|&c| {
                (1..n - j).all(|i| {
                    let target = spec.coeff_space(i + j);
                    spec.coeff_space(i)
                        .basis()
                        .iter()
                        .all(|&b| target.contains(f.mul(c, b)))
                })
            })
            .collect();
        u.push(Subspace::span(spec.tower(), &gens).expect("elements lie in F"));
    }
    u.push(spec.coeff_space(n).clone());
    let m_maximal = (1..n).all(|j| u[j] == *spec.coeff_space(j));
    MultiplierRing { u, m_maximal }
}

/// |V| and the lex-least transversal of V in U([M:M]) modulo `1 + F[[X]]X^n`.
#[derive(Debug, Clone)]
pub struct VGroup {
    pub order: u64,
    /// Unit windows of `[M:M]` (length n), one per coset of U(R).
    pub transversal: Vec<Vec<Elem>>,
}

/// |V| from the quotient of unit-window group sizes.
pub fn v_order_formula(spec: &RingSpec, mr: &MultiplierRing) -> Result<u64> {
    let n = spec.n();
    let num = (1..n).fold(mr.u[0].size() as u128 - 1, |acc, j| {
        acc * mr.coeff_space(j).size() as u128
    });
    let den = spec.unit_group_order();
    if num % den != 0 {
        return Err(Error::Internal(format!(
            "unit group of R (order {den}) does not divide that of [M:M] (order {num})"
        )));
    }
    Ok((num / den) as u64)
}

/// |V| by counting U(R)-orbits on the unit windows of `[M:M]`; asserts
/// agreement with [`v_order_formula`].
pub fn v_group(spec: &RingSpec) -> Result<VGroup> {
    let mr = multiplier_ring(spec);
    let spaces: Vec<&Subspace> = (0..spec.n()).map(|j| mr.coeff_space(j)).collect();
    let space = WindowSpace::new(spec.field(), &spaces);
    let orbits = space.orbits(spec.field(), spec.unit_windows()?, spec.caps())?;
    let transversal: Vec<Vec<Elem>> = orbits.reps.chunks(spec.n()).map(|c| c.to_vec()).collect();
    let direct = transversal.len() as u64;
    let formula = v_order_formula(spec, &mr)?;
    if direct != formula {
        return Err(Error::Internal(format!(
            "|V| mismatch: orbit count {direct}, quotient formula {formula}"
        )));
    }
    Ok(VGroup {
        order: direct,
        transversal,
    })
}

/// |V|.
pub fn v_order(spec: &RingSpec) -> Result<u64> {
    Ok(v_group(spec)?.order)
}

/// Partitions the atom classes (as indices into `inv.atoms()`) into V-orbits.
/// Orbits are listed by their least member.
pub fn v_orbits(spec: &RingSpec, inv: &AtomInventory, v: &VGroup) -> Result<Vec<Vec<usize>>> {
    let n = spec.n();
    let index: HashMap<(usize, &[Elem]), usize> = inv
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.form.order, a.form.window.as_slice()), i))
        .collect();
    let mut assigned = vec![false; inv.atoms().len()];
    let mut orbits = Vec::new();
    let mut buf = vec![0; n];
    for (i, a) in inv.atoms().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for sigma in &v.transversal {
            window_mul(spec.field(), sigma, &a.form.window, &mut buf);
            let c = spec.canonical_window(&buf)?;
            let &j = index.get(&(a.form.order, c.as_slice())).ok_or_else(|| {
                Error::Internal("V does not map atoms to atoms".into())
            })?;
            if !assigned[j] {
                assigned[j] = true;
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Whether `M = a·[M:M]` for some a of order 1, i.e. M is a principal ideal of
/// the multiplier ring.
pub fn m_principal_in_multiplier(spec: &Arc<RingSpec>, mr: &MultiplierRing) -> Result<bool> {
    let n = spec.n();
    let gens = ideal_power(spec, 1)?.generators();
    let f = spec.field();
    let classes = spec.classes(1)?;
    Ok(classes.forms.iter().any(|a| {
        gens.iter().all(|&(j, c)| {
            let mut w = vec![0; n];
            w[0] = c;
            series_quotient(f, &a.window, 1, &w, j, n, |i, q| mr.coeff_space(i).contains(q))
                .is_some()
        })
    }))
}

/// Invariants of the group of divisibility G(R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityInvariants {
    /// `G(R) ≅ Z ⊕ F*/K* ⊕ F/W` (n <= 2; W = F when n = 1).
    Structured {
        rank: u32,
        units_mod_k: u64,
        f_mod_w: u64,
    },
    /// Only the order of the torsion part `|F*/K*|·∏|F/V_j|` is reported.
    CardinalityOnly { cardinality: u128 },
}

/// Per-power universality data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProfile {
    pub k: usize,
    pub universal: bool,
    pub weakly_universal: bool,
    /// `dim_K M^{k-1}/M^k` (for k = 1 this is `dim_K R/M = 1`).
    pub graded_dim: usize,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub dim_m_over_m2: usize,
    pub residue_field_size: u64,
    pub v_order: u64,
    pub v_transversal: Vec<Vec<Elem>>,
    pub v_orbits: Vec<Vec<usize>>,
    pub least_universal: usize,
    pub least_weakly_universal: usize,
    pub m_maximal_in_multiplier: bool,
    pub m_principal_in_multiplier: bool,
    pub multiplier: Vec<Subspace>,
    pub profile: Vec<PowerProfile>,
    pub divisibility: DivisibilityInvariants,
    /// R is a DVR (a single atom class).
    pub dvr: bool,
}

fn divisibility_invariants(spec: &RingSpec) -> DivisibilityInvariants {
    let q = spec.q();
    let fo = spec.tower().order() as u64;
    let units_mod_k = (fo - 1) / (q - 1);
    match spec.n() {
        1 => DivisibilityInvariants::Structured {
            rank: 1,
            units_mod_k,
            f_mod_w: 1,
        },
        2 => DivisibilityInvariants::Structured {
            rank: 1,
            units_mod_k,
            f_mod_w: fo / spec.v()[0].size() as u64,
        },
        _ => DivisibilityInvariants::CardinalityOnly {
            cardinality: spec
                .v()
                .iter()
                .fold(units_mod_k as u128, |acc, v| acc * (fo / v.size() as u64) as u128),
        },
    }
}

/// Assembles the structural invariants of R.
pub fn structure_report(spec: &Arc<RingSpec>, inv: &AtomInventory) -> Result<StructureReport> {
    let mr = multiplier_ring(spec);
    let v = v_group(spec)?;
    let orbits = v_orbits(spec, inv, &v)?;
    let least_universal = least_universal_power(spec, inv)?;
    let least_weakly_universal = least_weakly_universal_power(spec, inv)?;
    let mut chain = PowerChain::new(spec);
    let dim_m_over_m2 = chain.graded_dim(2)?;
    let mut profile = Vec::new();
    for k in 1..=least_universal.max(least_weakly_universal) {
        let power = chain.get(k)?.clone();
        let first: Vec<_> = inv.atoms().iter().filter(|a| a.layer == 1).collect();
        let all: Vec<_> = inv.atoms().iter().collect();
        profile.push(PowerProfile {
            k,
            universal: divisible_by_all(spec, &power, &all),
            weakly_universal: divisible_by_all(spec, &power, &first),
            graded_dim: if k == 1 { 1 } else { chain.graded_dim(k)? },
        });
    }
    Ok(StructureReport {
        dim_m_over_m2,
        residue_field_size: spec.q(),
        v_order: v.order,
        v_transversal: v.transversal,
        v_orbits: orbits,
        least_universal,
        least_weakly_universal,
        m_maximal_in_multiplier: mr.m_maximal,
        m_principal_in_multiplier: m_principal_in_multiplier(spec, &mr)?,
        multiplier: mr.u,
        profile,
        divisibility: divisibility_invariants(spec),
        dvr: inv.total() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::enumerate_atoms;
    use crate::gf::tower_make;
    use crate::ring::spec_validate;
    use crate::ring::tests::small_specs;

    fn spec(p: u64, m: u32, e: u32, n: usize, v: &[&[u32]]) -> Arc<RingSpec> {
        let t = Arc::new(tower_make(p, m, e).unwrap());
        let v = v.iter().map(|g| Subspace::span(&t, g).unwrap()).collect();
        spec_validate(&t, n, v).unwrap()
    }

    fn eight_atom() -> Arc<RingSpec> {
        spec(2, 1, 3, 2, &[&[1, 2]])
    }

    fn staircase3() -> Arc<RingSpec> {
        spec(2, 1, 4, 3, &[&[1, 2], &[1, 2, 4]])
    }

    #[test]
    fn ideal_power_examples() {
        let r = eight_atom();
        let m = ideal_power(&r, 1).unwrap();
        assert_eq!(m.space(1), r.coeff_space(1));
        assert!(m.space(0).is_zero());
        let m2 = ideal_power(&r, 2).unwrap();
        assert!(m2.space(1).is_zero());
        assert!(m2.space(2).is_full());
        assert!(m2.contains(&RingElem::new(&r, vec![0, 0, 7]).unwrap()));
        assert!(!m2.contains(&RingElem::new(&r, vec![0, 1]).unwrap()));
        assert_eq!(ideal_power(&r, 0).unwrap_err(), Error::ZeroParameter { what: "k" });

        let r = staircase3();
        let m2 = ideal_power(&r, 2).unwrap();
        assert_eq!(m2.space(2), r.coeff_space(2));
        assert!(m2.space(3).is_full());
        let m3 = ideal_power(&r, 3).unwrap();
        assert!((0..3).all(|j| m3.space(j).is_zero()));
        assert!((3..12).all(|j| m3.space(j).is_full()));
    }

    #[test]
    fn n2_square_is_w_squared_then_f() {
        for r in small_specs().into_iter().filter(|r| r.n() == 2) {
            let w = r.coeff_space(1);
            if w.is_zero() {
                continue;
            }
            let m2 = ideal_power(&r, 2).unwrap();
            assert_eq!(*m2.space(2), w.product_space(w).unwrap());
            assert!(m2.space(3).is_full());
        }
    }

    #[test]
    fn power_chain_laws() {
        for r in small_specs() {
            let n = r.n();
            let nonzero = r.v().iter().all(|v| !v.is_zero());
            let mut chain = PowerChain::new(&r);
            for k in 1..=4 {
                let p = chain.get(k).unwrap().clone();
                let next = chain.get(k + 1).unwrap().clone();
                for j in 0..(k + 2) * n {
                    assert!(next.space(j).is_subspace_of(p.space(j)).unwrap());
                    if nonzero && k >= 2 && j + n >= k * n + 1 {
                        assert!(p.space(j).is_full(), "{r:?} k={k} j={j}");
                    }
                }
                // M^k · M ⊆ M^{k+1}, checked on generators
                let m = chain.get(1).unwrap().clone();
                for &(i, a) in &p.generators() {
                    for &(j, b) in &m.generators() {
                        if i + j >= r.truncation() {
                            continue;
                        }
                        let x = RingElem::monomial(&r, a, i).unwrap();
                        let y = RingElem::monomial(&r, b, j).unwrap();
                        assert!(next.contains(&x.mul(&y).unwrap()));
                    }
                }
                if k >= 2 {
                    let expected: usize = (k - 1..k * n)
                        .map(|j| chain.get(k - 1).unwrap().space(j).dim() - p.space(j).dim())
                        .sum();
                    assert_eq!(chain.graded_dim(k).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn universality_examples() {
        let r = spec(2, 1, 2, 1, &[]);
        let inv = enumerate_atoms(&r).unwrap();
        assert!(!is_universal(&r, &inv, 1).unwrap());
        assert_eq!(least_universal_power(&r, &inv).unwrap(), 2);

        let r = eight_atom();
        let inv = enumerate_atoms(&r).unwrap();
        assert!(!is_universal(&r, &inv, 3).unwrap());
        assert!(is_universal(&r, &inv, 4).unwrap());
        assert_eq!(least_universal_power(&r, &inv).unwrap(), 4);
        assert!(least_weakly_universal_power(&r, &inv).unwrap() <= 4);

        let r = spec(2, 1, 1, 1, &[]);
        let inv = enumerate_atoms(&r).unwrap();
        assert_eq!(least_universal_power(&r, &inv).unwrap(), 1);

        let r = staircase3();
        let inv = enumerate_atoms(&r).unwrap();
        assert_eq!(least_universal_power(&r, &inv).unwrap(), 2 * r.n());
    }

    #[test]
    fn universal_powers_are_upward_closed() {
        for r in small_specs().into_iter().take(60) {
            let inv = enumerate_atoms(&r).unwrap();
            let k = least_universal_power(&r, &inv).unwrap();
            assert!(is_universal(&r, &inv, k + 1).unwrap());
            let w = least_weakly_universal_power(&r, &inv).unwrap();
            assert!(w <= k);
        }
    }

    #[test]
    fn multiplier_ring_examples() {
        let r = eight_atom();
        let mr = multiplier_ring(&r);
        assert_eq!(mr.u[0], Subspace::base_field(r.tower()));
        assert!(mr.u[1].is_full());
        assert!(!mr.m_maximal);

        let t = Arc::new(tower_make(2, 1, 3).unwrap());
        let r = spec_validate(&t, 2, vec![Subspace::full(&t)]).unwrap();
        let mr = multiplier_ring(&r);
        assert!(mr.u[0].is_full());
        assert!(mr.m_maximal);

        // U_1 = V_1 but V_2 is not all of F
        let r = staircase3();
        let mr = multiplier_ring(&r);
        assert_eq!(mr.u[1], *r.coeff_space(1));
        assert!(!mr.m_maximal);
    }

    #[test]
    fn multiplier_ring_matches_direct_test() {
        for r in small_specs() {
            let n = r.n();
            let mr = multiplier_ring(&r);
            let gens = ideal_power(&r, 1).unwrap().generators();
            for j in 0..n {
                for c in r.field().elements() {
                    // c X^j ∈ [M:M] iff c X^j · g ∈ M for every generator g of M
                    let direct = gens.iter().all(|&(i, b)| {
                        let prod = r.field().mul(c, b);
                        let mut coeffs = vec![0; i + j + 1];
                        coeffs[i + j] = prod;
                        RingElem::new(&r, coeffs).is_ok()
                    });
                    assert_eq!(mr.coeff_space(j).contains(c), direct, "{r:?} j={j} c={c}");
                }
            }
            if n == 2 {
                assert_eq!(mr.u[0], r.coeff_space(1).stabilizer());
            }
        }
    }

    #[test]
    fn v_group_examples() {
        let r = eight_atom();
        let inv = enumerate_atoms(&r).unwrap();
        let v = v_group(&r).unwrap();
        assert_eq!(v.order, 2);
        assert_eq!(v.transversal, vec![vec![1, 0], vec![1, 4]]);
        // 1 + (1+y+y^2)X lies in the same coset as 1 + y^2 X
        let w = r.canonical_window(&[1, 7]).unwrap();
        assert_eq!(r.canonical_window(&[1, 4]).unwrap(), w);
        let orbits = v_orbits(&r, &inv, &v).unwrap();
        assert_eq!(orbits.len(), 4);
        assert!(orbits.iter().all(|o| o.len() == 2));

        let r = spec(2, 1, 2, 1, &[]);
        let inv = enumerate_atoms(&r).unwrap();
        let v = v_group(&r).unwrap();
        assert_eq!(v.order, 3);
        assert_eq!(v_orbits(&r, &inv, &v).unwrap(), vec![vec![0, 1, 2]]);

        assert_eq!(v_order(&spec(2, 1, 1, 1, &[])).unwrap(), 1);
    }

    #[test]
    fn v_orbits_partition_atoms() {
        for r in small_specs() {
            let inv = enumerate_atoms(&r).unwrap();
            let v = v_group(&r).unwrap();
            let orbits = v_orbits(&r, &inv, &v).unwrap();
            let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..inv.total()).collect::<Vec<_>>());
            for o in &orbits {
                assert_eq!(v.order as usize % o.len(), 0);
                let layer = inv.atoms()[o[0]].layer;
                assert!(o.iter().all(|&i| inv.atoms()[i].layer == layer));
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = eight_atom();
        let inv = enumerate_atoms(&r).unwrap();
        let rep = structure_report(&r, &inv).unwrap();
        assert_eq!(rep.dim_m_over_m2, 2);
        assert_eq!(rep.residue_field_size, 2);
        assert_eq!(rep.v_order, 2);
        assert_eq!(rep.least_universal, 4);
        assert!(!rep.dvr);
        assert_eq!(
            rep.divisibility,
            DivisibilityInvariants::Structured {
                rank: 1,
                units_mod_k: 7,
                f_mod_w: 2
            }
        );
        assert_eq!(rep.profile.len(), 4);
        assert!(rep.profile[3].universal);

        let r = spec(2, 1, 1, 2, &[&[]]);
        let inv = enumerate_atoms(&r).unwrap();
        let rep = structure_report(&r, &inv).unwrap();
        assert_eq!(rep.dim_m_over_m2, 2);
        assert_eq!(rep.least_universal, 3);

        let r = spec(2, 1, 1, 1, &[]);
        let inv = enumerate_atoms(&r).unwrap();
        let rep = structure_report(&r, &inv).unwrap();
        assert_eq!(rep.dim_m_over_m2, 1);
        assert!(rep.dvr);
        assert!(rep.m_principal_in_multiplier);
    }
}
