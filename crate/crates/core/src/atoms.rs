//! Atom tests and enumeration up to associates.
//!
//! Divisibility is invariant under replacing the divisor by an associate, so
//! the divisor search runs over canonical classes only: `x` of order d is
//! reducible iff some canonical class of order `1..d` divides it, the
//! quotient then having order at least 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{NormalForm, RingElem, RingSpec};
use crate::structure::PowerChain;

/// An atom class together with its layer k (the class lies in `M^k \ M^{k+1}`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AtomClass {
    pub form: NormalForm,
    pub layer: usize,
}

/// All atom classes of a ring, ordered by (order, window).
#[derive(Debug, Clone)]
pub struct AtomInventory {
    spec: Arc<RingSpec>,
    atoms: Vec<AtomClass>,
}

impl PartialEq for AtomInventory {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.atoms == other.atoms
    }
}

impl AtomInventory {
    pub(crate) fn new(spec: &Arc<RingSpec>, mut atoms: Vec<AtomClass>) -> AtomInventory {
        atoms.sort();
        AtomInventory {
            spec: Arc::clone(spec),
            atoms,
        }
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn atoms(&self) -> &[AtomClass] {
        &self.atoms
    }

    pub fn total(&self) -> usize {
        self.atoms.len()
    }

    /// Atoms of order d.
    pub fn of_order(&self, d: usize) -> impl Iterator<Item = &AtomClass> {
        self.atoms.iter().filter(move |a| a.form.order == d)
    }

    /// Number of atom classes in each layer (layer k means `M^k \ M^{k+1}`).
    pub fn layer_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in &self.atoms {
            *m.entry(a.layer).or_insert(0) += 1;
        }
        m
    }

    pub fn layer_count(&self, k: usize) -> usize {
        self.atoms.iter().filter(|a| a.layer == k).count()
    }

    /// Atom classes lying in `M^2`.
    pub fn in_m2(&self) -> usize {
        self.atoms.iter().filter(|a| a.layer >= 2).count()
    }
}

/// Outcome of [`is_atom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomVerdict {
    Atom,
    /// `x = left · right` with both factors nonunits.
    Reducible { left: RingElem, right: RingElem },
}

impl AtomVerdict {
    pub fn is_atom(&self) -> bool {
        matches!(self, AtomVerdict::Atom)
    }
}

/// Tests whether x is an atom, producing the first factorization found
/// otherwise. Requires `1 <= ord x <= 2n`.
pub fn is_atom(x: &RingElem) -> Result<AtomVerdict> {
    let spec = x.spec();
    let n = spec.n();
    let d = x.ord().ok_or(Error::ZeroInput)?;
    if d == 0 {
        return Err(Error::UnitInput);
    }
    if d > 2 * n {
        return Err(Error::OrderOutOfRange {
            order: d,
            min: 1,
            max: 2 * n,
        });
    }
    if d == 1 {
        return Ok(AtomVerdict::Atom);
    }
    let witness = |left: RingElem| -> Result<AtomVerdict> {
        let right = x
            .divide(&left)?
            .ok_or_else(|| Error::Internal("window divisor does not divide".into()))?;
        Ok(AtomVerdict::Reducible { left, right })
    };
    if d == 2 * n {
        return witness(RingElem::monomial(spec, 1, n)?);
    }
    let w = x.window(d);
    for i in 1..d {
        for a in spec.classes(i)?.forms.iter() {
            if spec.window_divides(&a.window, i, w, d) {
                return witness(a.to_elem(spec)?);
            }
        }
    }
    Ok(AtomVerdict::Atom)
}

fn reducible_window(spec: &RingSpec, form: &NormalForm) -> Result<bool> {
    let d = form.order;
    for i in 1..d {
        let classes = spec.classes(i)?;
        if classes
            .forms
            .iter()
            .any(|a| spec.window_divides(&a.window, i, &form.window, d))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Enumerates every atom class, orders 1 through 2n-1, with layers.
pub fn enumerate_atoms(spec: &Arc<RingSpec>) -> Result<AtomInventory> {
    let n = spec.n();
    let mut found = Vec::new();
    for d in 1..2 * n {
        let classes = spec.classes(d)?;
        let flags: Vec<bool> = if d == 1 {
            vec![false; classes.forms.len()]
        } else {
            (1..d).try_for_each(|i| spec.classes(i).map(|_| ()))?;
            classes
                .forms
                .par_iter()
                .map(|f| reducible_window(spec, f))
                .collect::<Result<_>>()?
        };
        found.extend(
            classes
                .forms
                .iter()
                .zip(flags)
                .filter(|(_, r)| !r)
                .map(|(f, _)| f.clone()),
        );
    }
    let mut chain = PowerChain::new(spec);
    let atoms = found
        .into_iter()
        .map(|form| {
            let layer = chain.layer(form.order, &form.window)?;
            Ok(AtomClass { form, layer })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AtomInventory::new(spec, atoms))
}
