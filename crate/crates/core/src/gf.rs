//! Finite fields GF(p^d) and towers K = GF(p^m) ⊆ F = GF(p^{me}).
//!
//! An element is stored as the integer `Σ c_i p^i`, where `c_i ∈ GF(p)` is the
//! coefficient of `y^i` and `y` is the class of `t` modulo the defining
//! polynomial. The integer order on encodings is the "lex" order used for
//! every deterministic choice in the crate.

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Elem = u32;

const NO_LOG: u32 = u32::MAX;

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Polynomial helpers over GF(p); coefficient vectors are low-degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo monic `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let lead = *r.last().unwrap();
            for (i, &bi) in b.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - (lead * bi) % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }
}

fn digits(mut x: u32, p: u32, d: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(d as usize);
    for _ in 0..d {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `d` whose low coefficients have encoding `code`.
fn monic_from_code(code: u32, p: u32, d: u32) -> Vec<u32> {
    let mut v = digits(code, p, d);
    v.push(1);
    v
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = (f.len() - 1) as u32;
    for dg in 1..=d / 2 {
        for code in 0..p.pow(dg) {
            let g = monic_from_code(code, p, dg);
            if poly::rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The finite field GF(p^d) with log/antilog tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    d: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d
    }
}
impl Eq for Field {}

/// Builds GF(p^d) under the default size cap.
pub fn field_make(p: u64, d: u32) -> Result<Field> {
    field_make_capped(p, d, &Caps::default())
}

/// Builds GF(p^d), defined by the least monic irreducible polynomial of degree
/// `d` over GF(p). Polynomials are ordered by the encoding of their
/// non-leading coefficients, highest degree most significant.
pub fn field_make_capped(p: u64, d: u32, caps: &Caps) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = (p as u128).checked_pow(d).unwrap_or(u128::MAX);
    Caps::check("field order", order, caps.field_order.min(u32::MAX as u64))?;
    let p = p as u32;
    let order = order as u32;

    let modulus = (0..order)
        .map(|c| monic_from_code(c, p, d))
        .find(|f| is_irreducible(f, p))
        .ok_or_else(|| Error::Internal("no irreducible polynomial found".into()))?;

    let n = order - 1;
    let mul_slow = |a: Elem, b: Elem| -> Elem {
        let prod = poly::mul(&digits(a, p, d), &digits(b, p, d), p);
        let mut r = poly::rem(&prod, &modulus, p);
        r.resize(d as usize, 0);
        undigits(&r, p)
    };

    let mut exp = Vec::new();
    let mut primitive = 0;
    for g in 1..order {
        let mut powers = Vec::with_capacity(n as usize);
        let mut x = 1;
        loop {
            powers.push(x);
            x = mul_slow(x, g);
            if x == 1 {
                break;
            }
        }
        if powers.len() as u32 == n {
            primitive = g;
            exp = powers;
            break;
        }
    }
    if exp.is_empty() {
        return Err(Error::Internal("no primitive element found".into()));
    }
    let mut log = vec![NO_LOG; order as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    let doubled: Vec<Elem> = exp.iter().chain(exp.iter()).copied().collect();

    // zech[i] = log(1 + g^i), or NO_LOG when 1 + g^i = 0.
    let mut zech = Vec::new();
    if p != 2 {
        zech = (0..n)
            .map(|i| {
                let mut a = digits(exp[i as usize], p, d);
                a[0] = (a[0] + 1) % p;
                let s = undigits(&a, p);
                log[s as usize]
            })
            .collect();
    }

    Ok(Field {
        p,
        d,
        order,
        modulus,
        primitive,
        exp: doubled,
        log,
        zech,
    })
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial, low-degree coefficients first (monic, length d+1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// The class of `t`, i.e. the generator `y` of the power basis.
    pub fn generator(&self) -> Elem {
        if self.d == 1 {
            // modulus is t itself
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    fn check(&self, x: Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInField {
                value: x,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.order - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let diff = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[diff as usize];
        if z == NO_LOG {
            0
        } else {
            self.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let half = (self.order - 1) / 2;
        self.exp[(self.log[a as usize] + half) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nz(a))
    }

    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub(crate) fn div_nz(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        let n = self.order - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        self.exp[(la + n - lb) as usize]
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let e = (self.log[a as usize] as u64 * (k % n)) % n;
        self.exp[e as usize]
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Elem, j: u32) -> Elem {
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let mut e = self.log[a as usize] as u64;
        for _ in 0..j {
            e = e * self.p as u64 % n;
        }
        self.exp[e as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        match self.log[a as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// Value of `Σ c_i y^i` with integer coefficients reduced mod p.
    pub fn eval_poly(&self, coeffs: &[i64]) -> Elem {
        let y = self.generator();
        let mut acc = 0;
        for &c in coeffs.iter().rev() {
            let c = c.rem_euclid(self.p as i64) as Elem;
            acc = self.add(self.mul(acc, y), c);
        }
        acc
    }

    /// Coefficients of `a` in the power basis, low degree first.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a, self.p, self.d)
    }

    /// Renders `a` as a polynomial in `y`, e.g. `1+y+y^2` or `2y`.
    pub fn format(&self, a: Elem) -> String {
        if a == 0 {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coefficients(a).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }
}

/// A tower K = GF(p^m) ⊆ F = GF(p^{me}) with a fixed K-basis of F.
#[derive(Debug, Clone)]
pub struct FieldTower {
    m: u32,
    e: u32,
    field: Field,
    k_elems: Vec<Elem>,
    in_k: Vec<bool>,
    kbasis: Vec<Elem>,
    coords: Vec<Elem>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.m == other.m && self.e == other.e
    }
}
impl Eq for FieldTower {}

/// Builds the tower (p, m, e) under the default size cap.
pub fn tower_make(p: u64, m: u32, e: u32) -> Result<FieldTower> {
    tower_make_capped(p, m, e, &Caps::default())
}

pub fn tower_make_capped(p: u64, m: u32, e: u32, caps: &Caps) -> Result<FieldTower> {
    if m == 0 {
        return Err(Error::ZeroParameter { what: "m" });
    }
    if e == 0 {
        return Err(Error::ZeroParameter { what: "e" });
    }
    let d = m.checked_mul(e).ok_or(Error::CapExceeded {
        cap: "field order",
        requested: u128::MAX,
        limit: caps.field_order as u128,
    })?;
    let field = field_make_capped(p, d, caps)?;
    let q = field.characteristic().pow(m);

    let in_k: Vec<bool> = field
        .elements()
        .map(|x| field.frobenius(x, m) == x)
        .collect();
    let k_elems: Vec<Elem> = field.elements().filter(|&x| in_k[x as usize]).collect();
    if k_elems.len() as u32 != q {
        return Err(Error::Internal("subfield has the wrong size".into()));
    }

    // Degree of x over K: least j with x^(q^j) = x.
    let degree_over_k = |x: Elem| -> u32 {
        (1..=e)
            .find(|&j| field.frobenius(x, m * j) == x)
            .unwrap_or(e)
    };
    let g = (1..field.order())
        .find(|&x| degree_over_k(x) == e)
        .ok_or_else(|| Error::Internal("no generator over K".into()))?;
    let kbasis: Vec<Elem> = (0..e).map(|j| field.pow(g, j as u64)).collect();

    let mut coords = vec![u32::MAX; (field.order() * e) as usize];
    let mut combo = vec![0usize; e as usize];
    loop {
        let x = combo
            .iter()
            .zip(&kbasis)
            .fold(0, |acc, (&ci, &b)| field.add(acc, field.mul(k_elems[ci], b)));
        let slot = &mut coords[(x * e) as usize..((x + 1) * e) as usize];
        if slot[0] != u32::MAX {
            return Err(Error::Internal("K-basis is dependent".into()));
        }
        for (s, &ci) in slot.iter_mut().zip(&combo) {
            *s = k_elems[ci];
        }
        let mut i = 0;
        loop {
            if i == combo.len() {
                return Ok(FieldTower {
                    m,
                    e,
                    field,
                    k_elems,
                    in_k,
                    kbasis,
                    coords,
                });
            }
            combo[i] += 1;
            if combo[i] < q as usize {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

impl FieldTower {
    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// The ambient field F.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// |K|.
    pub fn q(&self) -> u32 {
        self.k_elems.len() as u32
    }

    /// |F|.
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Elements of K in ascending order.
    pub fn k_elements(&self) -> &[Elem] {
        &self.k_elems
    }

    /// Nonzero elements of K in ascending order.
    pub fn k_units(&self) -> &[Elem] {
        &self.k_elems[1..]
    }

    /// The K-basis (1, g, ..., g^{e-1}).
    pub fn kbasis(&self) -> &[Elem] {
        &self.kbasis
    }

    /// Coordinates of `x` in the K-basis, as elements of K.
    pub fn coords(&self, x: Elem) -> &[Elem] {
        let e = self.e as usize;
        &self.coords[x as usize * e..(x as usize + 1) * e]
    }

    fn check(&self, x: Elem) -> Result<()> {
        self.field.check(x)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.field.add(a, b))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.field.sub(a, b))
    }

    pub fn neg(&self, a: Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(self.field.neg(a))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.field.mul(a, b))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.field.inv(a)
    }

    pub fn pow(&self, a: Elem, k: u64) -> Result<Elem> {
        self.check(a)?;
        Ok(self.field.pow(a, k))
    }

    pub fn frobenius(&self, a: Elem, j: u32) -> Result<Elem> {
        self.check(a)?;
        Ok(self.field.frobenius(a, j))
    }

    /// Whether `a` lies in K, i.e. `a^(p^m) = a`.
    pub fn in_subfield_k(&self, a: Elem) -> Result<bool> {
        self.check(a)?;
        Ok(self.in_k[a as usize])
    }
}
