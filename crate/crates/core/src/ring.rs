//! The ring `R = K + V_1 X + ... + V_{n-1} X^{n-1} + F[[X]] X^n`.
//!
//! Elements are stored truncated at `T = 3n`. This is enough for everything
//! the crate does:
//!
//! * an element `f` with `ord f >= 2n` is `X^n · (f / X^n)` with both factors
//!   nonunits, so every atom has order at most `2n - 1`;
//! * an element of order `d` is associate to its *window* `c_d, ..., c_{d+n-1}`
//!   (read as a polynomial), because the correcting factor lies in
//!   `1 + F[[X]] X^n ⊆ U(R)`;
//! * deciding `a | x` for `ord a <= 2n - 1` needs the quotient's coefficients
//!   up to index `n - 1` only, hence dividend coefficients up to
//!   `ord a + n - 1 <= 3n - 2`.
//!
//! Two windows of the same order are associate exactly when one is the other
//! multiplied by a *unit window* `u_0 + u_1 X + ... + u_{n-1} X^{n-1}` with
//! `u_0 ∈ K*`, `u_j ∈ V_j`, product truncated to `n` terms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FieldTower};
use crate::linalg::{same_tower, Subspace};

/// A validated graded ring specification.
pub struct RingSpec {
    tower: Arc<FieldTower>,
    n: usize,
    /// `spaces[j]` constrains coefficient j: K, V_1, ..., V_{n-1}, then F.
    spaces: Vec<Subspace>,
    caps: Caps,
    units: OnceLock<Vec<Elem>>,
    classes: Vec<OnceLock<Arc<OrderClasses>>>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingSpec")
            .field("p", &self.tower.p())
            .field("m", &self.tower.m())
            .field("e", &self.tower.e())
            .field("n", &self.n)
            .field("V", &&self.spaces[1..self.n])
            .finish()
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && same_tower(&self.tower, &other.tower)
            && self.spaces == other.spaces
    }
}
impl Eq for RingSpec {}

/// Validates `(tower, n, [V_1, ..., V_{n-1}])` under the default caps.
pub fn spec_validate(
    tower: &Arc<FieldTower>,
    n: usize,
    v: Vec<Subspace>,
) -> Result<Arc<RingSpec>> {
    RingSpec::validate(tower, n, v, Caps::default())
}

/// Every valid spec with the given tower and n, in lexicographic order of
/// `(V_1, ..., V_{n-1})` under [`Subspace::all`].
pub fn graded_specs(tower: &Arc<FieldTower>, n: usize, caps: Caps) -> Result<Vec<Arc<RingSpec>>> {
    if n == 0 {
        return Err(Error::ZeroParameter { what: "n" });
    }
    let subs = Subspace::all(tower);
    let mut chains: Vec<Vec<Subspace>> = vec![Vec::new()];
    for j in 1..n {
        let mut next = Vec::new();
        for chain in &chains {
            for s in &subs {
                let mut closed = true;
                for i in 1..j {
                    if i > j - i {
                        break;
                    }
                    let prod = chain[i - 1].set_product(&chain[j - i - 1])?;
                    if !prod.iter().all(|&x| s.contains(x)) {
                        closed = false;
                        break;
                    }
                }
                if closed {
                    let mut c = chain.clone();
                    c.push(s.clone());
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    chains
        .into_iter()
        .map(|v| RingSpec::validate(tower, n, v, caps))
        .collect()
}

impl RingSpec {
    pub fn validate(
        tower: &Arc<FieldTower>,
        n: usize,
        v: Vec<Subspace>,
        caps: Caps,
    ) -> Result<Arc<RingSpec>> {
        if n == 0 {
            return Err(Error::ZeroParameter { what: "n" });
        }
        if v.len() != n - 1 {
            return Err(Error::WrongSubspaceCount {
                expected: n - 1,
                got: v.len(),
            });
        }
        if v.iter().any(|s| !same_tower(s.tower(), tower)) {
            return Err(Error::CrossTower);
        }
        let k = Subspace::base_field(tower);
        for s in &v {
            // K·V_i ⊆ V_i holds by construction; assert it anyway
            if !k.product_space(s)?.is_subspace_of(s)? {
                return Err(Error::Internal("subspace not closed under K".into()));
            }
        }
        let mut pairs = Vec::new();
        for i in 1..n {
            for j in i..n - i {
                let target = &v[i + j - 1];
                let prod = v[i - 1].set_product(&v[j - 1])?;
                if !prod.iter().all(|&x| target.contains(x)) {
                    pairs.push((i, j));
                }
            }
        }
        if !pairs.is_empty() {
            return Err(Error::ClosureViolation { pairs });
        }
        let mut spaces = Vec::with_capacity(n + 1);
        spaces.push(k);
        spaces.extend(v);
        spaces.push(Subspace::full(tower));
        Ok(Arc::new(RingSpec {
            tower: Arc::clone(tower),
            n,
            spaces,
            caps,
            units: OnceLock::new(),
            classes: (0..2 * n).map(|_| OnceLock::new()).collect(),
        }))
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn field(&self) -> &Field {
        self.tower.field()
    }

    /// The conductor exponent n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation level T = 3n.
    pub fn truncation(&self) -> usize {
        3 * self.n
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// |K|.
    pub fn q(&self) -> u64 {
        self.tower.q() as u64
    }

    /// Allowed coefficients at index j: K for j = 0, V_j for j < n, F beyond.
    pub fn coeff_space(&self, j: usize) -> &Subspace {
        &self.spaces[j.min(self.n)]
    }

    /// The subspaces V_1, ..., V_{n-1}.
    pub fn v(&self) -> &[Subspace] {
        &self.spaces[1..self.n]
    }

    pub(crate) fn same(&self, other: &RingSpec) -> Result<()> {
        if std::ptr::eq(self, other) || self == other {
            Ok(())
        } else {
            Err(Error::CrossTower)
        }
    }

    /// Size of the unit-window group, (|K|-1)·∏|V_j|.
    pub fn unit_group_order(&self) -> u128 {
        (1..self.n).fold(self.q() as u128 - 1, |acc, j| {
            acc * self.spaces[j].size() as u128
        })
    }

    /// All unit windows, flattened with stride n.
    pub fn unit_windows(&self) -> Result<&[Elem]> {
        if let Some(u) = self.units.get() {
            return Ok(u);
        }
        let bytes = self.unit_group_order() * (self.n as u128) * 4;
        Caps::check("window table bytes", bytes, self.caps.window_bytes)?;
        let mut lists: Vec<&[Elem]> = vec![self.tower.k_units()];
        lists.extend((1..self.n).map(|j| self.spaces[j].elements()));
        let units = product_flat(&lists);
        Ok(self.units.get_or_init(|| units))
    }

    /// Canonical classes of order d, with orbit sizes (cached).
    pub fn classes(&self, d: usize) -> Result<Arc<OrderClasses>> {
        self.check_order(d, 2 * self.n - 1)?;
        if let Some(c) = self.classes[d].get() {
            return Ok(Arc::clone(c));
        }
        let space = WindowSpace::new(self.field(), &self.window_spaces(d));
        let orbits = space.orbits(self.field(), self.unit_windows()?, &self.caps)?;
        let forms = orbits
            .reps
            .chunks(self.n)
            .map(|w| NormalForm {
                order: d,
                window: w.to_vec(),
                canonical: true,
            })
            .collect();
        let c = Arc::new(OrderClasses {
            forms,
            orbit_sizes: orbits.sizes,
            windows: space.total,
        });
        Ok(Arc::clone(self.classes[d].get_or_init(|| c)))
    }

    pub(crate) fn window_spaces(&self, d: usize) -> Vec<&Subspace> {
        (0..self.n).map(|t| self.coeff_space(d + t)).collect()
    }

    fn check_order(&self, d: usize, max: usize) -> Result<()> {
        if d < 1 || d > max {
            Err(Error::OrderOutOfRange {
                order: d,
                min: 1,
                max,
            })
        } else {
            Ok(())
        }
    }

    /// Whether the window `w` (of length n) is a valid window at order d.
    pub fn window_valid(&self, d: usize, w: &[Elem]) -> bool {
        w.len() == self.n
            && w[0] != 0
            && w
                .iter()
                .enumerate()
                .all(|(t, &c)| self.field().contains(c) && self.coeff_space(d + t).contains(c))
    }

    /// The lex-least window in the unit orbit of `w`.
    pub fn canonical_window(&self, w: &[Elem]) -> Result<Vec<Elem>> {
        let f = self.field();
        let n = self.n;
        let mut best = w.to_vec();
        let mut buf = vec![0; n];
        for u in self.unit_windows()?.chunks(n) {
            window_mul(f, u, w, &mut buf);
            if buf < best {
                best.copy_from_slice(&buf);
            }
        }
        Ok(best)
    }

    /// Whether a window polynomial `a` of order `s` divides one `x` of order `t`.
    ///
    /// Both are read as exact polynomials. The quotient `x / a` is built by
    /// series division and accepted when its coefficient at each index j < n
    /// lies in the allowed space for j.
    pub fn window_divides(&self, a: &[Elem], s: usize, x: &[Elem], t: usize) -> bool {
        self.window_quotient(a, s, x, t).is_some()
    }

    /// Quotient coefficients `q_0..q_{len-1}` of `x / a` starting at index
    /// `t - s`, where `len = n - (t - s)` (empty when `t - s >= n`).
    pub(crate) fn window_quotient(
        &self,
        a: &[Elem],
        s: usize,
        x: &[Elem],
        t: usize,
    ) -> Option<Vec<Elem>> {
        series_quotient(self.field(), a, s, x, t, self.n, |j, c| {
            self.coeff_space(j).contains(c)
        })
    }

    /// The canonical normal form of x.
    pub fn canonicalize(&self, x: &RingElem) -> Result<NormalForm> {
        self.same(&x.spec)?;
        let d = x.ord().ok_or(Error::ZeroInput)?;
        if d == 0 {
            return Err(Error::UnitInput);
        }
        self.check_order(d, 2 * self.n)?;
        Ok(NormalForm {
            order: d,
            window: self.canonical_window(&x.coeffs[d..d + self.n])?,
            canonical: true,
        })
    }
}

/// Series division of the polynomial `x` (order `t`) by `a` (order `s`),
/// both given by their leading coefficients. Produces the quotient
/// coefficients at indices `t - s, ..., len - 1` and rejects as soon as
/// `allowed(index, coefficient)` fails.
pub(crate) fn series_quotient(
    f: &Field,
    a: &[Elem],
    s: usize,
    x: &[Elem],
    t: usize,
    len: usize,
    allowed: impl Fn(usize, Elem) -> bool,
) -> Option<Vec<Elem>> {
    if t < s {
        return None;
    }
    let shift = t - s;
    if shift >= len {
        return Some(Vec::new());
    }
    let mut q = Vec::with_capacity(len - shift);
    for i in 0..len - shift {
        let mut acc = x.get(i).copied().unwrap_or(0);
        for k in 1..=i.min(a.len() - 1) {
            acc = f.sub(acc, f.mul(a[k], q[i - k]));
        }
        let qi = f.div_nz(acc, a[0]);
        if !allowed(shift + i, qi) {
            return None;
        }
        q.push(qi);
    }
    Some(q)
}

/// Cartesian product of the lists, first list most significant, flattened.
pub(crate) fn product_flat(lists: &[&[Elem]]) -> Vec<Elem> {
    let n = lists.len();
    let count: usize = lists.iter().map(|l| l.len()).product();
    let mut out = Vec::with_capacity(count * n);
    let mut idx = vec![0usize; n];
    if count == 0 {
        return out;
    }
    loop {
        out.extend(idx.iter().zip(lists).map(|(&i, l)| l[i]));
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `out_t = Σ_{a <= t} u_a w_{t-a}` for t < n.
#[inline]
pub fn window_mul(f: &Field, u: &[Elem], w: &[Elem], out: &mut [Elem]) {
    for t in 0..out.len() {
        let mut acc = 0;
        for a in 0..=t {
            acc = f.add(acc, f.mul(u[a], w[t - a]));
        }
        out[t] = acc;
    }
}

/// Mixed-radix indexing of windows whose position t ranges over a fixed
/// subspace (nonzero at position 0). Index order equals lex order.
pub(crate) struct WindowSpace<'a> {
    allowed: Vec<&'a [Elem]>,
    ranks: Vec<Vec<u32>>,
    strides: Vec<u64>,
    pub(crate) total: u64,
}

pub(crate) struct Orbits {
    pub(crate) reps: Vec<Elem>,
    pub(crate) sizes: Vec<u64>,
}

impl<'a> WindowSpace<'a> {
    pub(crate) fn new(f: &Field, spaces: &[&'a Subspace]) -> Self {
        let allowed: Vec<&[Elem]> = spaces
            .iter()
            .enumerate()
            .map(|(t, s)| if t == 0 { &s.elements()[1..] } else { s.elements() })
            .collect();
        let ranks = allowed
            .iter()
            .map(|list| {
                let mut r = vec![u32::MAX; f.order() as usize];
                for (i, &x) in list.iter().enumerate() {
                    r[x as usize] = i as u32;
                }
                r
            })
            .collect();
        let mut strides = vec![1u64; allowed.len()];
        for t in (0..allowed.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1].saturating_mul(allowed[t + 1].len() as u64);
        }
        let total = allowed
            .iter()
            .fold(1u64, |acc, l| acc.saturating_mul(l.len() as u64));
        WindowSpace {
            allowed,
            ranks,
            strides,
            total,
        }
    }

    #[inline]
    fn index(&self, w: &[Elem]) -> u64 {
        w.iter()
            .zip(&self.ranks)
            .zip(&self.strides)
            .map(|((&c, r), &s)| r[c as usize] as u64 * s)
            .sum()
    }

    fn decode(&self, mut idx: u64, out: &mut [Elem]) {
        for t in 0..out.len() {
            let r = idx / self.strides[t];
            idx %= self.strides[t];
            out[t] = self.allowed[t][r as usize];
        }
    }

    /// Orbits of `group` (flattened windows acting by truncated product),
    /// represented by their lex-least members in ascending order.
    pub(crate) fn orbits(&self, f: &Field, group: &[Elem], caps: &Caps) -> Result<Orbits> {
        Caps::check("window table bytes", self.total as u128, caps.window_bytes)?;
        let n = self.allowed.len();
        let mut visited = vec![false; self.total as usize];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut w = vec![0; n];
        let mut img = vec![0; n];
        for idx in 0..self.total {
            if visited[idx as usize] {
                continue;
            }
            self.decode(idx, &mut w);
            let mut size = 0;
            for u in group.chunks(n) {
                window_mul(f, u, &w, &mut img);
                let j = self.index(&img) as usize;
                if !visited[j] {
                    visited[j] = true;
                    size += 1;
                }
            }
            reps.extend_from_slice(&w);
            sizes.push(size);
        }
        Ok(Orbits { reps, sizes })
    }
}

/// The canonical classes of one order.
#[derive(Debug, Clone)]
pub struct OrderClasses {
    pub forms: Vec<NormalForm>,
    pub orbit_sizes: Vec<u64>,
    /// Number of windows of this order.
    pub windows: u64,
}

/// A window `(c_d, ..., c_{d+n-1})` standing for an associate class of order d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub order: usize,
    pub window: Vec<Elem>,
    pub canonical: bool,
}

impl NormalForm {
    /// The window read as an exact element of R.
    pub fn to_elem(&self, spec: &Arc<RingSpec>) -> Result<RingElem> {
        let mut coeffs = vec![0; self.order];
        coeffs.extend_from_slice(&self.window);
        RingElem::new(spec, coeffs)
    }

    /// Renders the window as a polynomial in X, e.g. `yX+(1+y^2)X^2`.
    pub fn format(&self, f: &Field) -> String {
        let terms: Vec<String> = self
            .window
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| {
                let j = self.order + t;
                let xpow = if j == 1 { "X".to_string() } else { format!("X^{j}") };
                let cs = f.format(c);
                if c == 1 {
                    xpow
                } else if cs.contains('+') {
                    format!("({cs}){xpow}")
                } else {
                    format!("{cs}{xpow}")
                }
            })
            .collect();
        terms.join("+")
    }
}

/// Lists the canonical classes of order d, `1 <= d <= 2n-1`, in lex order.
pub fn class_enumerate(spec: &RingSpec, d: usize) -> Result<Vec<NormalForm>> {
    Ok(spec.classes(d)?.forms.clone())
}

/// Whether two nonzero elements are associates.
pub fn associates(x: &RingElem, y: &RingElem) -> Result<bool> {
    x.spec.same(&y.spec)?;
    match (x.ord(), y.ord()) {
        (None, _) | (_, None) => Err(Error::ZeroInput),
        (Some(0), Some(0)) => Ok(true),
        (Some(a), Some(b)) if a != b || a == 0 => Ok(false),
        _ => Ok(x.spec.canonicalize(x)? == y.spec.canonicalize(y)?),
    }
}

/// An element of R truncated at T = 3n.
#[derive(Clone)]
pub struct RingElem {
    spec: Arc<RingSpec>,
    coeffs: Vec<Elem>,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.spec.same(&other.spec).is_ok() && self.coeffs == other.coeffs
    }
}
impl Eq for RingElem {}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.spec.field();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| format!("({})X^{j}", field.format(c)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl RingElem {
    /// Builds an element from its leading coefficients (padded with zeros to T).
    pub fn new(spec: &Arc<RingSpec>, mut coeffs: Vec<Elem>) -> Result<RingElem> {
        let t = spec.truncation();
        if coeffs.len() > t {
            return Err(Error::TooManyCoefficients {
                got: coeffs.len(),
                truncation: t,
            });
        }
        coeffs.resize(t, 0);
        for (j, &c) in coeffs.iter().enumerate() {
            let member = spec.coeff_space(j).member(c)?;
            if !member {
                return Err(Error::NotInRing { index: j });
            }
        }
        Ok(RingElem {
            spec: Arc::clone(spec),
            coeffs,
        })
    }

    /// `c·X^j`.
    pub fn monomial(spec: &Arc<RingSpec>, c: Elem, j: usize) -> Result<RingElem> {
        let mut coeffs = vec![0; j + 1];
        coeffs[j] = c;
        RingElem::new(spec, coeffs)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Least index with a nonzero coefficient; `None` past the truncation.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// Truncated product.
    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.spec.same(&other.spec)?;
        let f = self.spec.field();
        let mut out = vec![0; self.coeffs.len()];
        window_mul(f, &self.coeffs, &other.coeffs, &mut out);
        Ok(RingElem {
            spec: Arc::clone(&self.spec),
            coeffs: out,
        })
    }

    /// Divides `self` by `a` in R. Returns `Ok(None)` when `a` does not divide
    /// `self`; a divisor of larger order never divides.
    ///
    /// The returned quotient `q` satisfies `a·q = self` on every stored
    /// coefficient; coefficients of `q` past index `T - ord a` are set to zero,
    /// which is harmless since they lie at indices `>= n`.
    pub fn divide(&self, a: &RingElem) -> Result<Option<RingElem>> {
        self.spec.same(&a.spec)?;
        let s = a.ord().ok_or(Error::DivisionByZero)?;
        let n = self.spec.n;
        let tr = self.spec.truncation();
        if s + n > tr {
            return Err(Error::OrderOutOfRange {
                order: s,
                min: 0,
                max: tr - n,
            });
        }
        let t = self.ord().ok_or(Error::ZeroInput)?;
        if t < s {
            return Ok(None);
        }
        let f = self.spec.field();
        let a_tail = &a.coeffs[s..];
        let x_tail = &self.coeffs[t..];
        let shift = t - s;
        let len = tr - t;
        let mut q = vec![0; tr];
        for i in 0..len {
            let mut acc = x_tail[i];
            for k in 1..=i.min(a_tail.len() - 1) {
                acc = f.sub(acc, f.mul(a_tail[k], q[shift + i - k]));
            }
            let qi = f.div_nz(acc, a_tail[0]);
            if !self.spec.coeff_space(shift + i).contains(qi) {
                return Ok(None);
            }
            q[shift + i] = qi;
        }
        Ok(Some(RingElem {
            spec: Arc::clone(&self.spec),
            coeffs: q,
        }))
    }

    /// The n coefficients starting at index d.
    pub fn window(&self, d: usize) -> &[Elem] {
        &self.coeffs[d..d + self.spec.n]
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::gf::tower_make;
    use proptest::prelude::*;

    /// K + span{1,y} X + GF(8)[[X]] X^2 over K = GF(2).
    fn eight_atom() -> Arc<RingSpec> {
        let t = Arc::new(tower_make(2, 1, 3).unwrap());
        let w = Subspace::span(&t, &[1, 2]).unwrap();
        spec_validate(&t, 2, vec![w]).unwrap()
    }

    fn el(spec: &Arc<RingSpec>, c: &[Elem]) -> RingElem {
        RingElem::new(spec, c.to_vec()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t = Arc::new(tower_make(2, 1, 3).unwrap());
        assert!(spec_validate(&t, 1, vec![]).is_ok());
        assert_eq!(
            spec_validate(&t, 2, vec![]).unwrap_err(),
            Error::WrongSubspaceCount {
                expected: 1,
                got: 0
            }
        );

        let t4 = Arc::new(tower_make(2, 1, 4).unwrap());
        let y = t4.field().generator();
        let f = t4.field();
        let v1 = Subspace::span(&t4, &[1, y]).unwrap();
        let v2 = Subspace::span(&t4, &[1, y, f.mul(y, y)]).unwrap();
        assert!(spec_validate(&t4, 3, vec![v1.clone(), v2]).is_ok());
        // V_1 V_1 ⊄ V_2 when V_2 = V_1
        assert_eq!(
            spec_validate(&t4, 3, vec![v1.clone(), v1]).unwrap_err(),
            Error::ClosureViolation {
                pairs: vec![(1, 1)]
            }
        );
    }

    #[test]
    fn order_and_units() {
        let r = eight_atom();
        assert_eq!(el(&r, &[0, 2]).ord(), Some(1));
        assert_eq!(el(&r, &[1, 1]).ord(), Some(0));
        assert_eq!(el(&r, &[]).ord(), None);
        assert!(el(&r, &[1, 1]).is_unit());
        assert!(!el(&r, &[0, 1]).is_unit());
        assert!(el(&r, &[1]).is_unit());
        assert_eq!(
            RingElem::new(&r, vec![0, 7]).unwrap_err(),
            Error::NotInRing { index: 1 }
        );
        assert_eq!(
            RingElem::new(&r, vec![2]).unwrap_err(),
            Error::NotInRing { index: 0 }
        );
    }

    #[test]
    fn products() {
        let r = eight_atom();
        let x = el(&r, &[0, 1]);
        assert_eq!(x.mul(&x).unwrap(), el(&r, &[0, 0, 1]));
        let yx = el(&r, &[0, 2]);
        assert_eq!(yx.mul(&yx).unwrap(), el(&r, &[0, 0, 4]));
        assert_eq!(yx.mul(&x).unwrap(), el(&r, &[0, 0, 2]));
    }

    #[test]
    fn division_examples() {
        let r = eight_atom();
        let x = el(&r, &[0, 1]);
        assert_eq!(el(&r, &[0, 0, 7]).divide(&x).unwrap(), None);
        assert_eq!(el(&r, &[0, 0, 1]).divide(&x).unwrap(), Some(x.clone()));
        let yx = el(&r, &[0, 2]);
        assert_eq!(el(&r, &[0, 0, 4]).divide(&yx).unwrap(), Some(yx.clone()));
        assert_eq!(x.divide(&el(&r, &[0, 0, 1])).unwrap(), None);
        assert_eq!(x.divide(&el(&r, &[])).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn eight_atom_order_one_classes() {
        let r = eight_atom();
        let classes = class_enumerate(&r, 1).unwrap();
        assert_eq!(classes.len(), 6);
        // reference representatives, each associate to exactly one canonical class
        let given: [&[Elem]; 6] = [&[0, 1], &[0, 1, 7], &[0, 2], &[0, 2, 5], &[0, 3], &[0, 3, 2]];
        let mut hit = Vec::new();
        for g in given {
            let nf = r.canonicalize(&el(&r, g)).unwrap();
            assert!(classes.contains(&nf));
            hit.push(nf);
        }
        hit.sort();
        hit.dedup();
        assert_eq!(hit.len(), 6);
    }

    #[test]
    fn associates_examples() {
        let r = eight_atom();
        assert!(associates(&el(&r, &[0, 1]), &el(&r, &[0, 1, 1])).unwrap());
        assert!(!associates(&el(&r, &[0, 1]), &el(&r, &[0, 1, 4])).unwrap());
        let x = el(&r, &[0, 3, 4]);
        let c = r.canonicalize(&x).unwrap();
        assert_eq!(r.canonicalize(&c.to_elem(&r).unwrap()).unwrap(), c);
    }

    #[test]
    fn class_counts_match_generic_n2_formula() {
        // order-1 classes for K + W X + F[[X]] X^2: (|W|-1)/(|K|-1) · |F|/|W|
        for (p, m, e) in [(2, 1, 3), (2, 1, 4), (3, 1, 2), (2, 2, 2), (3, 1, 3)] {
            let t = Arc::new(tower_make(p, m, e).unwrap());
            let q = t.q() as usize;
            let full = Subspace::full(&t);
            for w in Subspace::all(&t) {
                if w.is_zero() || w == full {
                    continue;
                }
                let r = spec_validate(&t, 2, vec![w.clone()]).unwrap();
                let expected = (w.size() - 1) / (q - 1) * (t.order() as usize / w.size());
                assert_eq!(class_enumerate(&r, 1).unwrap().len(), expected);
            }
        }
    }

    /// All windows of order d, brute force.
    fn windows(r: &RingSpec, d: usize) -> Vec<Vec<Elem>> {
        let lists: Vec<&[Elem]> = (0..r.n())
            .map(|t| {
                let s = r.coeff_space(d + t).elements();
                if t == 0 { &s[1..] } else { s }
            })
            .collect();
        product_flat(&lists).chunks(r.n()).map(|c| c.to_vec()).collect()
    }

    pub(crate) fn small_specs() -> Vec<Arc<RingSpec>> {
        let mut out = Vec::new();
        for (p, m, e) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let t = Arc::new(tower_make(p, m, e).unwrap());
            for n in 1..=3 {
                out.extend(graded_specs(&t, n, Caps::default()).unwrap());
            }
        }
        out
    }

    #[test]
    fn associates_is_an_equivalence_matching_canonical_forms() {
        for r in small_specs() {
            let g = r.unit_group_order() as u64;
            for d in 1..2 * r.n() {
                let ws = windows(&r, d);
                let classes = r.classes(d).unwrap();
                assert_eq!(classes.windows as usize, ws.len());
                assert_eq!(classes.orbit_sizes.iter().sum::<u64>() as usize, ws.len());
                for &sz in &classes.orbit_sizes {
                    assert_eq!(g % sz, 0);
                }
                if ws.len() > 120 {
                    continue;
                }
                let elems: Vec<RingElem> = ws
                    .iter()
                    .map(|w| NormalForm { order: d, window: w.clone(), canonical: false }.to_elem(&r).unwrap())
                    .collect();
                let canon: Vec<NormalForm> =
                    elems.iter().map(|x| r.canonicalize(x).unwrap()).collect();
                for (i, x) in elems.iter().enumerate() {
                    assert!(classes.forms.contains(&canon[i]));
                    for (j, y) in elems.iter().enumerate() {
                        // definitional check: y = u·x for some unit window u
                        let direct = r.unit_windows().unwrap().chunks(r.n()).any(|u| {
                            let mut out = vec![0; r.n()];
                            window_mul(r.field(), u, x.window(d), &mut out);
                            out == y.window(d)
                        });
                        assert_eq!(direct, canon[i] == canon[j]);
                        assert_eq!(associates(x, y).unwrap(), direct);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn divide_round_trip(si in 0usize..200, a in proptest::collection::vec(0u32..16, 9),
                             b in proptest::collection::vec(0u32..16, 9)) {
            let specs = small_specs();
            let r = &specs[si % specs.len()];
            let q = r.tower().order();
            let clamp = |v: &[u32]| -> Option<RingElem> {
                let coeffs: Vec<Elem> = v.iter().take(r.truncation()).enumerate().map(|(j, &c)| {
                    let s = r.coeff_space(j).elements();
                    if j == 0 { 0 } else { s[(c % q) as usize % s.len()] }
                }).collect();
                RingElem::new(r, coeffs).ok()
            };
            let (Some(a), Some(b)) = (clamp(&a), clamp(&b)) else { return Ok(()); };
            let (Some(sa), Some(_)) = (a.ord(), b.ord()) else { return Ok(()); };
            prop_assume!(sa < 2 * r.n());
            let x = a.mul(&b).unwrap();
            prop_assume!(x.ord().is_some());
            // a·b is divisible by a, and the quotient multiplies back
            let qt = x.divide(&a).unwrap().expect("a divides a·b");
            let back = a.mul(&qt).unwrap();
            let t = x.ord().unwrap();
            prop_assert_eq!(&back.coeffs()[..(t + r.n()).min(r.truncation())],
                            &x.coeffs()[..(t + r.n()).min(r.truncation())]);
        }
    }
}
