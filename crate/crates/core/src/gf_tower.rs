//! Table-driven arithmetic in GF(p^e), subfield embeddings and the relative
//! trace machinery of an extension GF(q^t)/GF(q).
//!
//! Elements are packed coefficient vectors: `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! encodes `c_0 + c_1 X + ... + c_{e-1} X^{e-1}` modulo the field modulus, so
//! `0` is zero and `1` is one in every field. Whenever a canonical choice is
//! needed (modulus, generator, embedding root, gamma) the smallest candidate
//! is taken under lexicographic order of coefficient vectors read from the
//! constant term upward.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A field element, as a packed coefficient vector.
pub type Elem = u32;

/// Largest field order for which tables are built.
pub const FIELD_ORDER_BOUND: u64 = 1 << 16;

const NONE: u32 = u32::MAX;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `q = p^e` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    e: u32,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be positive".into()));
        }
        Ok(PrimePower { p, e })
    }

    /// Splits `q` into `p^e`.
    pub fn from_value(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = prime_factors(q)[0];
        let mut rest = q;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(PrimePower { p, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// The value `p^e`. Panics if it does not fit in 64 bits.
    pub fn value(&self) -> u64 {
        self.p.checked_pow(self.e).expect("prime power overflows u64")
    }

    pub fn value_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e)
    }

    /// `q^k` as a prime power.
    pub fn pow(&self, k: u32) -> PrimePower {
        PrimePower { p: self.p, e: self.e * k }
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Polynomials over GF(p) as coefficient vectors, low degree first.
mod fp_poly {
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        // m is monic
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let v = (r[shift + i] as u64 + (p - lead) as u64 * c as u64) % p as u64;
                    r[shift + i] = v as u32;
                }
            }
            r.pop();
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    /// Monic polynomials of the given degree, in increasing packed order.
    pub fn monic_of_degree(deg: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(deg as u32);
        (0..count).map(move |mut k| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push((k % p as u64) as u32);
                k /= p as u64;
            }
            c.push(1);
            c
        })
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for g in monic_of_degree(d, p) {
                let r = rem(f, &g, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// The finite field GF(p^e) with log, antilog and Zech tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// Builds GF(p^e) with the lexicographically smallest monic irreducible
/// modulus (constant term compared first).
pub fn build_field(p: u64, e: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, e)
}

impl FieldCtx {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let order = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if order > FIELD_ORDER_BOUND as u128 {
            return Err(Error::SizeExceeded { order, bound: FIELD_ORDER_BOUND });
        }
        let p = p as u32;
        let order = order as u32;
        let modulus = smallest_irreducible(p, e as usize);

        let mut ctx = FieldCtx {
            p,
            e,
            order,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let prod = fp_poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let r = fp_poly::rem(&prod, &self.modulus, self.p);
        self.from_coeffs(&r)
    }

    fn slow_pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn digit_add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as u64;
        let factors = prime_factors(n);
        let mut gen = None;
        for x in self.by_order().skip(1) {
            if factors.iter().all(|&r| self.slow_pow(x, n / r) != 1) {
                gen = Some(x);
                break;
            }
        }
        // GF(2) has the single unit 1, which the loop above accepts since n = 1.
        let g = gen.unwrap_or(1);
        self.primitive = g;

        let n = n as usize;
        let mut exp = vec![0; 2 * n.max(1)];
        let mut log = vec![0; self.order as usize];
        let mut cur = 1;
        for k in 0..n.max(1) {
            exp[k] = cur;
            log[cur as usize] = k as u32;
            cur = self.slow_mul(cur, g);
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }
        self.exp = exp;
        self.log = log;

        let mut zech = vec![NONE; n.max(1)];
        for (k, z) in zech.iter_mut().enumerate().take(n) {
            let v = self.digit_add(1, self.exp[k]);
            if v != 0 {
                *z = self.log[v as usize];
            }
        }
        self.zech = zech;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn prime_power(&self) -> PrimePower {
        PrimePower { p: self.p as u64, e: self.e }
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The ordering-smallest generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order
    }

    pub fn coeffs(&self, mut x: Elem) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            c.push(x % self.p);
            x /= self.p;
        }
        c
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        debug_assert!(c.len() <= self.e as usize);
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as Elem
    }

    /// Sort key realizing the coefficient-vector ordering (constant term first).
    pub fn order_key(&self, x: Elem) -> u32 {
        self.coeffs(x).iter().fold(0, |acc, &d| acc * self.p + d)
    }

    /// All elements, smallest first under the coefficient-vector ordering.
    pub fn by_order(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(move |key| {
            let mut k = key;
            let mut digits = vec![0u32; self.e as usize];
            for d in digits.iter_mut().rev() {
                *d = k % self.p;
                k /= self.p;
            }
            self.from_coeffs(&digits)
        })
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let n = self.order - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d as usize] {
            NONE => 0,
            z => self.exp[(la + z) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 || self.p == 2 {
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

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(self.exp[((n - self.log[a as usize]) % n.max(1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, k: u128) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u128;
        let l = (self.log[a as usize] as u128 * (k % n)) % n;
        self.exp[l as usize]
    }

    /// `x^(q^u)` where `q` is a power of the characteristic.
    pub fn frobenius(&self, x: Elem, q: u64, u: u32) -> Elem {
        let n = (self.order - 1) as u128;
        let k = mod_pow(q as u128, u as u128, n.max(1));
        // x^(q^u) with q^u reduced mod (order - 1); q^u ≡ 0 only when order = 2.
        if x == 0 {
            return 0;
        }
        self.exp[((self.log[x as usize] as u128 * k) % n.max(1)) as usize]
    }

    /// Discrete logarithm with respect to [`FieldCtx::primitive`].
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }

    pub fn is_square(&self, x: Elem) -> bool {
        x == 0 || self.p == 2 || self.log[x as usize].is_multiple_of(2)
    }

    /// Evaluates a polynomial over this field (coefficients low degree first).
    pub fn eval(&self, poly: &[Elem], x: Elem) -> Elem {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

fn mod_pow(mut b: u128, mut e: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e as u32);
    for key in 0..count {
        // the constant term is the most significant digit of the key
        let mut k = key;
        let mut low = vec![0u32; e];
        for d in low.iter_mut().rev() {
            *d = (k % p as u64) as u32;
            k /= p as u64;
        }
        let mut f = low;
        f.push(1);
        if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Ring embedding GF(p^a) -> GF(p^b), `a | b`.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FieldCtx>,
    large: Arc<FieldCtx>,
    root: Elem,
    image: Vec<Elem>,
    preimage: Vec<u32>,
}

impl Embedding {
    pub fn new(small: Arc<FieldCtx>, large: Arc<FieldCtx>) -> Result<Self> {
        if small.p != large.p || !large.e.is_multiple_of(small.e) {
            return Err(Error::FieldMismatch(format!(
                "GF({}^{}) does not embed in GF({}^{})",
                small.p, small.e, large.p, large.e
            )));
        }
        let modulus: Vec<Elem> = small.modulus.iter().map(|&c| c as Elem).collect();
        let root = large
            .by_order()
            .find(|&x| large.eval(&modulus, x) == 0)
            .expect("the small modulus splits in the large field");
        let mut image = Vec::with_capacity(small.order as usize);
        let mut preimage = vec![NONE; large.order as usize];
        for s in 0..small.order {
            let c: Vec<Elem> = small.coeffs(s);
            let y = large.eval(&c, root);
            image.push(y);
            preimage[y as usize] = s;
        }
        Ok(Embedding { small, large, root, image, preimage })
    }

    pub fn small(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    pub fn large(&self) -> &Arc<FieldCtx> {
        &self.large
    }

    /// Image of the small field's generator `X`.
    pub fn root(&self) -> Elem {
        self.root
    }

    #[inline]
    pub fn map(&self, s: Elem) -> Elem {
        self.image[s as usize]
    }

    /// Inverse image, if `y` lies in the embedded copy.
    #[inline]
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        match self.preimage[y as usize] {
            NONE => None,
            s => Some(s),
        }
    }
}

/// The nonzero γ ∈ GF(q^{2^a}) with γ + γ^{q^{2^{a-1}}} = 0, where t = 2^a m, m odd.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub field: Arc<FieldCtx>,
    pub value: Elem,
}

pub fn find_gamma(q: PrimePower, t: u32) -> Result<Gamma> {
    if t == 0 || t % 2 == 1 {
        return Err(Error::FormInadmissible(format!("gamma needs an even t, got t = {t}")));
    }
    let a = t.trailing_zeros();
    let field = Arc::new(FieldCtx::new(q.p(), q.e() << a)?);
    let half = 1u32 << (a - 1);
    let value = field
        .by_order()
        .skip(1)
        .find(|&g| field.add(g, field.frobenius(g, q.value(), half)) == 0)
        .expect("gamma exists");
    Ok(Gamma { field, value })
}

/// `x^(q^u)` in the given field.
pub fn frobenius_iterate(field: &FieldCtx, x: Elem, q: PrimePower, u: u32) -> Elem {
    field.frobenius(x, q.value(), u)
}

/// The extension GF(q^t)/GF(q) with a fixed GF(q)-basis `1, X, ..., X^{t-1}`
/// of the top field (`X` the root of its modulus).
#[derive(Debug, Clone)]
pub struct Extension {
    q: PrimePower,
    t: u32,
    base: Arc<FieldCtx>,
    top: Arc<FieldCtx>,
    embed: Embedding,
    basis: Vec<Elem>,
    coords: Vec<Elem>,
}

impl Extension {
    pub fn new(q: PrimePower, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("t must be positive".into()));
        }
        let base = Arc::new(FieldCtx::new(q.p(), q.e())?);
        let top = Arc::new(FieldCtx::new(q.p(), q.e() * t)?);
        let embed = Embedding::new(base.clone(), top.clone())?;
        let x = if top.e >= 2 { top.p } else { 1 };
        let basis: Vec<Elem> = (0..t).map(|u| top.pow(x, u as u128)).collect();

        let t_us = t as usize;
        let mut coords = vec![0; top.order as usize * t_us];
        let mut c = vec![0 as Elem; t_us];
        for idx in 0..top.order as u64 {
            let mut k = idx;
            for cu in c.iter_mut() {
                *cu = (k % base.order as u64) as Elem;
                k /= base.order as u64;
            }
            let y = c
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&cu, &b)| top.add(acc, top.mul(embed.map(cu), b)));
            coords[y as usize * t_us..(y as usize + 1) * t_us].copy_from_slice(&c);
        }
        Ok(Extension { q, t, base, top, embed, basis, coords })
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FieldCtx> {
        &self.top
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embed
    }

    /// The fixed GF(q)-basis β_0, ..., β_{t-1} of GF(q^t).
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// Coordinates of `x` over [`Extension::basis`].
    pub fn coords(&self, x: Elem) -> &[Elem] {
        let t = self.t as usize;
        &self.coords[x as usize * t..(x as usize + 1) * t]
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        c.iter().zip(&self.basis).fold(0, |acc, (&cu, &b)| {
            self.top.add(acc, self.top.mul(self.embed.map(cu), b))
        })
    }

    #[inline]
    pub fn lift(&self, b: Elem) -> Elem {
        self.embed.map(b)
    }

    #[inline]
    pub fn frob(&self, x: Elem, u: u32) -> Elem {
        self.top.frobenius(x, self.q.value(), u)
    }

    /// Σ_{j<t} x^{q^j}, as an element of the top field.
    pub fn tr(&self, x: Elem) -> Elem {
        (0..self.t).fold(0, |acc, j| self.top.add(acc, self.frob(x, j)))
    }

    /// Relative trace, landing in the base field.
    pub fn rel_trace(&self, x: Elem) -> Result<Elem> {
        if !self.top.contains(x) {
            return Err(Error::FieldMismatch(format!("{x} is not in GF({}^{})", self.q, self.t)));
        }
        Ok(self.trace_base(x))
    }

    /// Relative trace with the result pulled back to the base field.
    pub fn trace_base(&self, x: Elem) -> Elem {
        self.embed.preimage(self.tr(x)).expect("trace lies in the base field")
    }

    pub fn phi_admissible(&self) -> bool {
        self.t >= 2 && (self.t as u64) % self.q.p() != 1
    }

    /// φ(x) = Σ_{j=1}^{t-1} x^{q^j}.
    pub fn phi_map(&self, x: Elem) -> Result<Elem> {
        if !self.phi_admissible() {
            return Err(Error::FormInadmissible(format!(
                "phi needs t >= 2 and t != 1 (mod {}), got t = {}",
                self.q.p(),
                self.t
            )));
        }
        Ok(self.phi(x))
    }

    pub(crate) fn phi(&self, x: Elem) -> Elem {
        (1..self.t).fold(0, |acc, j| self.top.add(acc, self.frob(x, j)))
    }

    /// γ embedded in the top field.
    pub fn gamma(&self) -> Result<Elem> {
        let g = find_gamma(self.q, self.t)?;
        let emb = Embedding::new(g.field.clone(), self.top.clone())?;
        Ok(emb.map(g.value))
    }
}
