//! Brute-force atom enumeration used to cross-check [`crate::atoms`].
//!
//! Nothing here calls the division or canonical-form code of the ring module.
//! An element of order d is reducible iff its window equals the truncated
//! product of the windows of two nonunits of orders `i` and `d - i`. The set
//! of such products is closed under units, so it suffices to let the first
//! factor run over one representative per unit orbit. Layers come from a
//! direct K-linear description of `M^k` modulo `X^L` with `L >= kn`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::atoms::{AtomClass, AtomInventory};
use crate::caps::Caps;
use crate::error::Result;
use crate::gf::{Elem, Field};
use crate::ring::{NormalForm, RingSpec};

struct Oracle<'a> {
    spec: &'a RingSpec,
    f: &'a Field,
    n: usize,
    base: u64,
    units: Vec<Vec<Elem>>,
}

impl<'a> Oracle<'a> {
    fn key(&self, w: &[Elem]) -> u64 {
        w.iter().fold(0, |acc, &c| acc * self.base + c as u64)
    }

    fn unkey(&self, mut k: u64) -> Vec<Elem> {
        let mut w = vec![0; self.n];
        for t in (0..self.n).rev() {
            w[t] = (k % self.base) as Elem;
            k /= self.base;
        }
        w
    }

    fn allowed(&self, j: usize) -> Vec<Elem> {
        self.f
            .elements()
            .filter(|&c| self.spec.coeff_space(j).contains(c))
            .collect()
    }

    /// Every window of order d.
    fn windows(&self, d: usize) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
        for t in 0..self.n {
            let choices: Vec<Elem> = self
                .allowed(d + t)
                .into_iter()
                .filter(|&c| t > 0 || c != 0)
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut w = prefix.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn product(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        (0..self.n)
            .map(|t| {
                (0..=t).fold(0, |acc, i| self.f.add(acc, self.f.mul(a[i], b[t - i])))
            })
            .collect()
    }

    /// Orbit representatives (least key) of the windows of order d.
    fn orbit_reps(&self, windows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for w in windows {
            if seen.contains(&self.key(w)) {
                continue;
            }
            let orbit: Vec<u64> = self.units.iter().map(|u| self.key(&self.product(u, w))).collect();
            reps.push(*orbit.iter().min().unwrap());
            seen.extend(orbit);
        }
        reps.sort_unstable();
        reps.into_iter().map(|k| self.unkey(k)).collect()
    }
}

/// Gaussian elimination over K on vectors of K-coordinates.
struct Echelon<'a> {
    f: &'a Field,
    rows: HashMap<usize, Vec<Elem>>,
}

impl<'a> Echelon<'a> {
    fn reduce(&self, mut v: Vec<Elem>) -> Option<(usize, Vec<Elem>)> {
        loop {
            let piv = v.iter().position(|&c| c != 0)?;
            match self.rows.get(&piv) {
                Some(row) => {
                    let factor = v[piv];
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = self.f.sub(*x, self.f.mul(factor, r));
                    }
                }
                None => return Some((piv, v)),
            }
        }
    }

    fn insert(&mut self, v: Vec<Elem>) -> bool {
        match self.reduce(v) {
            None => false,
            Some((piv, mut v)) => {
                let inv = self.f.inv(v[piv]).expect("pivot is nonzero");
                for x in v.iter_mut() {
                    *x = self.f.mul(*x, inv);
                }
                self.rows.insert(piv, v);
                true
            }
        }
    }
}

fn coordinates(spec: &RingSpec, poly: &[Elem]) -> Vec<Elem> {
    poly.iter()
        .flat_map(|&c| spec.tower().coords(c).iter().copied())
        .collect()
}

/// Bases of `M^k` modulo `X^L` for k = 1..=kmax, as truncated polynomials.
fn power_bases(spec: &RingSpec, kmax: usize, l: usize) -> Vec<Echelon<'_>> {
    let f = spec.field();
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for j in 1..l {
        for &s in spec.coeff_space(j).basis() {
            let mut p = vec![0; l];
            p[j] = s;
            gens.push(p);
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Vec<Elem>> = gens.clone();
    for k in 1..=kmax {
        let mut ech = Echelon {
            f,
            rows: HashMap::new(),
        };
        let mut kept = Vec::new();
        for p in current {
            if ech.insert(coordinates(spec, &p)) {
                kept.push(p);
            }
        }
        out.push(ech);
        if k == kmax {
            break;
        }
        let mut next = Vec::new();
        for a in &kept {
            for g in &gens {
                let mut prod = vec![0; l];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in g.iter().enumerate().take(l - i) {
                        prod[i + j] = f.add(prod[i + j], f.mul(x, y));
                    }
                }
                next.push(prod);
            }
        }
        current = next;
    }
    out
}

/// Enumerates the atom classes by brute force; |F|^n must be within the
/// oracle cap.
pub fn brute_force_atoms(spec: &Arc<RingSpec>) -> Result<AtomInventory> {
    let n = spec.n();
    let f = spec.field();
    let base = f.order() as u64;
    Caps::check(
        "oracle windows",
        (base as u128).pow(n as u32),
        spec.caps().oracle_windows,
    )?;

    let mut o = Oracle {
        spec,
        f,
        n,
        base,
        units: Vec::new(),
    };
    let mut units: Vec<Vec<Elem>> = vec![Vec::new()];
    for j in 0..n {
        let choices: Vec<Elem> = o.allowed(j).into_iter().filter(|&c| j > 0 || c != 0).collect();
        units = units
            .into_iter()
            .flat_map(|p| {
                choices.iter().map(move |&c| {
                    let mut u = p.clone();
                    u.push(c);
                    u
                })
            })
            .collect();
    }
    o.units = units;

    let mut windows = vec![Vec::new()];
    let mut reps = vec![Vec::new()];
    for d in 1..2 * n {
        let ws = o.windows(d);
        reps.push(o.orbit_reps(&ws));
        windows.push(ws);
    }

    let mut atoms = Vec::new();
    for d in 1..2 * n {
        let mut reducible = HashSet::new();
        for i in 1..d {
            for a in &reps[i] {
                for v in &windows[d - i] {
                    reducible.insert(o.key(&o.product(a, v)));
                }
            }
        }
        for w in &reps[d] {
            if !reducible.contains(&o.key(w)) {
                atoms.push(NormalForm {
                    order: d,
                    window: w.clone(),
                    canonical: true,
                });
            }
        }
    }

    let kmax = atoms.iter().map(|a| a.order).max().unwrap_or(1);
    let l = kmax * n;
    let bases = power_bases(spec, kmax, l);
    let classes = atoms
        .into_iter()
        .map(|form| {
            let mut poly = vec![0; l];
            for (t, &c) in form.window.iter().enumerate() {
                if form.order + t < l {
                    poly[form.order + t] = c;
                }
            }
            let v = coordinates(spec, &poly);
            let layer = (1..=form.order.min(kmax))
                .rev()
                .find(|&k| bases[k - 1].reduce(v.clone()).is_none())
                .unwrap_or(0);
            AtomClass { form, layer }
        })
        .collect();
    Ok(AtomInventory::new(spec, classes))
}
