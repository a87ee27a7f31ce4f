//! K-subspaces of F.
//!
//! A [`Subspace`] keeps its basis in reduced row-echelon form over K, in
//! coordinates relative to the tower's K-basis, so equal subspaces compare
//! equal as data. Fields here are small, so every subspace also carries an
//! explicit membership table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};

#[derive(Clone)]
pub struct Subspace {
    tower: Arc<FieldTower>,
    rref: Vec<Vec<Elem>>,
    basis: Vec<Elem>,
    members: Vec<bool>,
    elements: Vec<Elem>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        same_tower(&self.tower, &other.tower) && self.rref == other.rref
    }
}
impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.tower.field();
        let gens: Vec<String> = self.basis.iter().map(|&b| field.format(b)).collect();
        write!(f, "span{{{}}}", gens.join(", "))
    }
}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Row-reduces coordinate vectors over K. Returns the nonzero rows of the RREF.
fn rref(tower: &FieldTower, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let f = tower.field();
    let cols = tower.e() as usize;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv_nz(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c];
                for j in 0..cols {
                    let t = f.mul(factor, rows[rank][j]);
                    rows[r][j] = f.sub(rows[r][j], t);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

impl Subspace {
    /// The K-span of `gens`.
    pub fn span(tower: &Arc<FieldTower>, gens: &[Elem]) -> Result<Subspace> {
        for &g in gens {
            if !tower.field().contains(g) {
                return Err(Error::NotInField {
                    value: g,
                    order: tower.order(),
                });
            }
        }
        let rows = gens.iter().map(|&g| tower.coords(g).to_vec()).collect();
        Ok(Self::from_rref(tower, rref(tower, rows)))
    }

    fn from_rref(tower: &Arc<FieldTower>, rref: Vec<Vec<Elem>>) -> Subspace {
        let f = tower.field();
        let basis: Vec<Elem> = rref
            .iter()
            .map(|row| {
                row.iter()
                    .zip(tower.kbasis())
                    .fold(0, |acc, (&c, &b)| f.add(acc, f.mul(c, b)))
            })
            .collect();
        let mut members = vec![false; tower.order() as usize];
        members[0] = true;
        let mut elements = vec![0];
        for &b in &basis {
            let current = elements.clone();
            for &k in tower.k_units() {
                let kb = f.mul(k, b);
                for &x in &current {
                    let y = f.add(x, kb);
                    members[y as usize] = true;
                    elements.push(y);
                }
            }
        }
        elements.sort_unstable();
        Subspace {
            tower: Arc::clone(tower),
            rref,
            basis,
            members,
            elements,
        }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Subspace {
        Self::from_rref(tower, Vec::new())
    }

    /// F as a K-space.
    pub fn full(tower: &Arc<FieldTower>) -> Subspace {
        Self::span(tower, tower.kbasis()).expect("kbasis lies in F")
    }

    /// K itself, the span of 1.
    pub fn base_field(tower: &Arc<FieldTower>) -> Subspace {
        Self::span(tower, &[1]).expect("1 lies in F")
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    fn same(&self, other: &Subspace) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::CrossTower)
        }
    }

    /// Checked membership test.
    pub fn member(&self, x: Elem) -> Result<bool> {
        if !self.tower.field().contains(x) {
            return Err(Error::NotInField {
                value: x,
                order: self.tower.order(),
            });
        }
        Ok(self.members[x as usize])
    }

    /// Unchecked membership test for elements known to lie in F.
    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members[x as usize]
    }

    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    /// Number of elements, |K|^dim.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rref.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.tower.e() as usize
    }

    /// Basis vectors as F-elements, in echelon order.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// Reduced row-echelon basis in K-coordinates.
    pub fn echelon(&self) -> &[Vec<Elem>] {
        &self.rref
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.same(other)?;
        Ok(self.basis.iter().all(|&b| other.contains(b)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same(other)?;
        let gens: Vec<Elem> = self.basis.iter().chain(&other.basis).copied().collect();
        Subspace::span(&self.tower, &gens)
    }

    /// {a·b : a ∈ self, b ∈ other}, sorted.
    pub fn set_product(&self, other: &Subspace) -> Result<Vec<Elem>> {
        self.same(other)?;
        let f = self.tower.field();
        let mut seen = vec![false; self.tower.order() as usize];
        for &a in &self.elements {
            for &b in &other.elements {
                seen[f.mul(a, b) as usize] = true;
            }
        }
        Ok((0..seen.len() as Elem).filter(|&x| seen[x as usize]).collect())
    }

    /// The K-span of the set product.
    pub fn product_space(&self, other: &Subspace) -> Result<Subspace> {
        self.same(other)?;
        let f = self.tower.field();
        let gens: Vec<Elem> = self
            .basis
            .iter()
            .flat_map(|&a| other.basis.iter().map(move |&b| f.mul(a, b)))
            .collect();
        Subspace::span(&self.tower, &gens)
    }

    /// The subspace c·self.
    pub fn scaled(&self, c: Elem) -> Result<Subspace> {
        let f = self.tower.field();
        let gens: Vec<Elem> = self.basis.iter().map(|&b| f.mul(c, b)).collect();
        Subspace::span(&self.tower, &gens)
    }

    /// The least nonzero element of each one-dimensional K-subspace, ascending.
    pub fn lines(&self) -> Vec<Elem> {
        let f = self.tower.field();
        let mut seen = vec![false; self.tower.order() as usize];
        let mut reps = Vec::new();
        for &x in &self.elements[1..] {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &k in self.tower.k_units() {
                seen[f.mul(k, x) as usize] = true;
            }
        }
        reps
    }

    /// The least element of each coset x + self, ascending.
    pub fn coset_reps(&self) -> Vec<Elem> {
        let f = self.tower.field();
        let mut seen = vec![false; self.tower.order() as usize];
        let mut reps = Vec::new();
        for x in f.elements() {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &w in &self.elements {
                seen[f.add(x, w) as usize] = true;
            }
        }
        reps
    }

    /// Every K-subspace of F, ordered by dimension and then by echelon data.
    pub fn all(tower: &Arc<FieldTower>) -> Vec<Subspace> {
        let mut out = vec![Subspace::zero(tower)];
        let mut layer = out.clone();
        while !layer.is_empty() {
            let mut next: Vec<Subspace> = Vec::new();
            for s in &layer {
                for x in tower.field().elements() {
                    if s.contains(x) {
                        continue;
                    }
                    let mut gens = s.basis.clone();
                    gens.push(x);
                    let bigger = Subspace::span(tower, &gens).expect("elements lie in F");
                    if !next.contains(&bigger) {
                        next.push(bigger);
                    }
                }
            }
            next.sort_by(|a, b| a.rref.cmp(&b.rref));
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// {x ∈ F : x·self ⊆ self}.
    pub fn stabilizer(&self) -> Subspace {
        let f = self.tower.field();
        let gens: Vec<Elem> = f
            .elements()
            .filter(|&x| self.basis.iter().all(|&b| self.contains(f.mul(x, b))))
            .collect();
        Subspace::span(&self.tower, &gens).expect("elements lie in F")
    }
}
