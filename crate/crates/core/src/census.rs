//! The census pipeline and the code-level oracle.
//!
//! [`census`] assembles the closed-form count. [`CyclicCodeEnum`] builds the
//! actual cyclic F_q-linear F_{q^t}-codes of length n, computes each dual as
//! the null space of a Gram matrix, and counts complementary-dual codes
//! directly; [`enumerate_lcd_count_shift_invariant`] does the same without the
//! ideal decomposition, for the tiniest lengths.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{
    gauss_binom, n_pair, n_unitary, r_bullet, r_factor, Bullet, FormKind, KBreakdown,
};
use crate::cyclotomic::{classify, cosets, multiplicative_order, CosetTable, MuClassification};
use crate::error::{Error, Result};
use crate::gf_tower::{Elem, Embedding, Extension, FieldCtx, PrimePower};
use crate::linalg::{self, Row};

/// Parameters of one census cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRequest {
    pub q: PrimePower,
    pub t: u32,
    pub n: u64,
    pub delta: FormKind,
}

impl CensusRequest {
    pub fn new(q: u64, t: u32, n: u64, delta: FormKind) -> Result<Self> {
        let req = CensusRequest { q: PrimePower::from_value(q)?, t, n, delta };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let qv = self.q.value();
        if self.n.gcd(&qv) != 1 {
            return Err(Error::NotCoprime { n: self.n, q: qv });
        }
        self.delta.check_admissible(self.q, self.t)
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| de::Error::custom(format!("not a decimal integer: {s:?}")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_str_radix(10))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|s| {
                    BigUint::parse_bytes(s.as_bytes(), 10)
                        .ok_or_else(|| de::Error::custom(format!("not a decimal integer: {s:?}")))
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// i ∈ 𝔉: a unitary space over K_i.
    Unitary,
    /// h ∈ 𝔐: the pair (J_h, J_{μ(h)}).
    Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub index: usize,
    pub kind: FactorKind,
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partner: Option<usize>,
    #[serde(with = "decimal")]
    pub value: BigUint,
    #[serde(with = "decimal::vec")]
    pub per_k: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(rename = "I")]
    pub set_i: Vec<usize>,
    #[serde(rename = "F")]
    pub set_f: Vec<usize>,
    #[serde(rename = "M")]
    pub set_m: Vec<usize>,
}

/// Output of [`census`]: N = R^{gcd(n,2)} × Π factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub q: u64,
    pub t: u32,
    pub n: u64,
    pub form: FormKind,
    pub s: usize,
    pub reps: Vec<u64>,
    pub d: Vec<u32>,
    pub classification: Classification,
    pub r_case: Bullet,
    #[serde(with = "decimal")]
    pub r_factor: BigUint,
    #[serde(with = "decimal::vec")]
    pub r_per_k: Vec<BigUint>,
    pub r_exponent: u32,
    pub factors: Vec<Factor>,
    #[serde(with = "decimal")]
    pub total: BigUint,
}

impl CountReport {
    /// Recomputes R^g × Π factors.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.r_factor.pow(self.r_exponent), |acc, f| acc * &f.value)
    }
}

pub fn census(req: &CensusRequest) -> Result<CountReport> {
    req.validate()?;
    let table = cosets(req.q, req.n, req.t)?;
    let mu = classify(&table);
    let r: KBreakdown = r_factor(req.delta, req.t, req.q)?;
    let r_exponent = req.n.gcd(&2) as u32;
    let qv = req.q.value();

    let mut factors = Vec::new();
    for &i in &mu.set_f {
        let k = n_unitary(req.t, table.sizes[i], qv)?;
        factors.push(Factor {
            index: i,
            kind: FactorKind::Unitary,
            d: table.sizes[i],
            partner: None,
            value: k.total,
            per_k: k.per_k,
        });
    }
    for &h in &mu.set_m {
        let k = n_pair(req.t, table.sizes[h], qv);
        factors.push(Factor {
            index: h,
            kind: FactorKind::Pair,
            d: table.sizes[h],
            partner: Some(mu.partner(h)),
            value: k.total,
            per_k: k.per_k,
        });
    }
    factors.sort_by_key(|f| f.index);

    let mut report = CountReport {
        q: qv,
        t: req.t,
        n: req.n,
        form: req.delta,
        s: table.s(),
        reps: table.reps.clone(),
        d: table.sizes.clone(),
        classification: Classification {
            set_i: mu.set_i.clone(),
            set_f: mu.set_f.clone(),
            set_m: mu.set_m.clone(),
        },
        r_case: r_bullet(req.delta, req.t, req.q)?,
        r_factor: r.total,
        r_per_k: r.per_k,
        r_exponent,
        factors,
        total: BigUint::zero(),
    };
    report.total = report.product();
    Ok(report)
}

/// One of the vector-level trace forms on GF(q^t).
#[derive(Debug, Clone, Copy)]
pub struct TraceForm<'a> {
    ext: &'a Extension,
    delta: FormKind,
    gamma: Elem,
}

impl<'a> TraceForm<'a> {
    pub fn new(ext: &'a Extension, delta: FormKind) -> Result<Self> {
        delta.check_admissible(ext.q(), ext.t())?;
        let gamma = match delta {
            FormKind::Hermitian => ext.gamma()?,
            _ => 1,
        };
        Ok(TraceForm { ext, delta, gamma })
    }

    pub fn delta(&self) -> FormKind {
        self.delta
    }

    /// ψ with (a,b)_δ = Tr(a ψ(b)).
    pub fn partner(&self, b: Elem) -> Elem {
        match self.delta {
            FormKind::Ordinary => b,
            FormKind::Star => self.ext.phi(b),
            FormKind::Hermitian => {
                let top = self.ext.top();
                top.mul(self.gamma, self.ext.frob(b, self.ext.t() / 2))
            }
        }
    }

    /// (a,b)_δ for single coordinates, as a base-field element.
    pub fn eval(&self, a: Elem, b: Elem) -> Elem {
        self.ext.trace_base(self.ext.top().mul(a, self.partner(b)))
    }

    /// Gram matrix over the fixed basis of GF(q^t).
    pub fn block_gram(&self) -> Vec<Row> {
        let basis = self.ext.basis();
        basis
            .iter()
            .map(|&a| basis.iter().map(|&b| self.eval(a, b)).collect())
            .collect()
    }
}

/// Gram matrix of (·,·)_δ on GF(q^t)^n over the basis ε_j β_u, ordered with
/// the coordinate index j outermost.
pub fn trace_form_gram(q: PrimePower, t: u32, n: usize, delta: FormKind) -> Result<Vec<Row>> {
    let ext = Extension::new(q, t)?;
    let form = TraceForm::new(&ext, delta)?;
    Ok(block_diagonal(&form.block_gram(), n))
}

fn block_diagonal(block: &[Row], n: usize) -> Vec<Row> {
    let t = block.len();
    let mut g = vec![vec![0; t * n]; t * n];
    for j in 0..n {
        for u in 0..t {
            for v in 0..t {
                g[j * t + u][j * t + v] = block[u][v];
            }
        }
    }
    g
}

/// Product in GF(q^t)[X]/(X^n − 1).
fn cyc_mul(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = f.add(out[k], f.mul(x, y));
        }
    }
    out
}

/// τ_{q^u, v}(Σ a_i X^i) = Σ a_i^{q^u} X^{v i mod n}, v = ±1.
fn tau(ext: &Extension, a: &[Elem], u: u32, v: i64) -> Vec<Elem> {
    let n = a.len() as i64;
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[(v * i as i64).rem_euclid(n) as usize] = ext.frob(x, u);
    }
    out
}

fn cyc_add(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// [a, b]_δ on R_n^{(q^t)}; the result has coefficients in GF(q).
pub fn poly_form(ext: &Extension, a: &[Elem], b: &[Elem], delta: FormKind) -> Result<Vec<Elem>> {
    let form = TraceForm::new(ext, delta)?;
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidArgument("operands must have the same positive length".into()));
    }
    let top = ext.top();
    let t = ext.t();
    let n = a.len();
    let inner = match delta {
        FormKind::Ordinary => cyc_mul(top, a, &tau(ext, b, 0, -1)),
        FormKind::Hermitian => {
            let ga: Vec<Elem> = a.iter().map(|&x| top.mul(form.gamma, x)).collect();
            cyc_mul(top, &ga, &tau(ext, b, t / 2, -1))
        }
        FormKind::Star => {
            let s = (1..t).fold(vec![0; n], |acc, w| cyc_add(top, &acc, &tau(ext, b, w, -1)));
            cyc_mul(top, a, &s)
        }
    };
    let sum = (0..t).fold(vec![0; n], |acc, w| cyc_add(top, &acc, &tau(ext, &inner, w, 1)));
    sum.iter()
        .map(|&c| {
            ext.embedding()
                .preimage(c)
                .ok_or_else(|| Error::FieldMismatch("poly_form left GF(q)".into()))
        })
        .collect()
}

/// Polynomials over a field, low degree first.
fn poly_mul(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Exact quotient of `a` by the monic `m`.
fn poly_div_exact(f: &FieldCtx, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let mut quo = vec![0; a.len() - dm];
    for s in (0..quo.len()).rev() {
        let lead = r[s + dm];
        quo[s] = lead;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[s + i] = f.sub(r[s + i], f.mul(lead, c));
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "division was not exact");
    quo
}

/// The factorization X^n − 1 = f_0 ⋯ f_{s−1} over GF(q).
#[derive(Debug, Clone)]
pub struct FactorTable {
    pub q: PrimePower,
    pub n: u64,
    /// Degree of the splitting field over GF(q).
    pub m: u32,
    pub splitting: FieldCtx,
    /// The chosen primitive n-th root of unity in the splitting field.
    pub eta: Elem,
    /// Monic f_i over GF(q), low degree first, indexed like the coset table.
    pub factors: Vec<Vec<Elem>>,
}

pub fn factor_xn_minus_1(q: PrimePower, n: u64) -> Result<FactorTable> {
    let table = cosets(q, n, 1)?;
    let m = multiplicative_order(q.value(), n);
    let base = std::sync::Arc::new(FieldCtx::new(q.p(), q.e())?);
    let splitting = std::sync::Arc::new(FieldCtx::new(q.p(), q.e() * m)?);
    let emb = Embedding::new(base.clone(), splitting.clone())?;
    let big_q = splitting.order() as u128;
    let eta = splitting.pow(splitting.primitive(), (big_q - 1) / n as u128);

    let mut factors = Vec::new();
    for coset in &table.cosets {
        let mut f = vec![1];
        for &k in coset {
            let root = splitting.pow(eta, k as u128);
            f = poly_mul(&splitting, &f, &[splitting.neg(root), 1]);
        }
        let over_q = f
            .iter()
            .map(|&c| {
                emb.preimage(c).ok_or_else(|| {
                    Error::FieldMismatch("cyclotomic factor has a coefficient outside GF(q)".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        factors.push(over_q);
    }

    let prod = factors.iter().fold(vec![1], |acc, f| poly_mul(&base, &acc, f));
    let mut expect = vec![0; n as usize + 1];
    expect[0] = base.neg(1);
    expect[n as usize] = 1;
    assert_eq!(prod, expect, "product of the factors is not X^n - 1");

    Ok(FactorTable {
        q,
        n,
        m,
        splitting: (*splitting).clone(),
        eta,
        factors,
    })
}

/// Per-index data of the decomposition R_n^{(q^t)} = ⊕ J_i.
#[derive(Debug, Clone)]
struct Component {
    d: usize,
    /// The identity e_i of K_i, as a polynomial over GF(q).
    idempotent: Vec<Elem>,
    /// All elements of K_i; index 0 is zero and index 1 is e_i.
    k_elems: Vec<Vec<Elem>>,
    /// A GF(q)-basis of J_i in coordinates.
    j_basis: Vec<Row>,
}

/// One K_i-subspace C_i ⊆ J_i, stored by its GF(q)-basis.
#[derive(Debug, Clone)]
struct SubspaceChoice {
    k_dim: usize,
    basis: Vec<Row>,
    /// basis × Gᵀ, the rows whose null space is the dual.
    dual_rows: Vec<Row>,
}

/// A code visited by [`CyclicCodeEnum::for_each_code`].
pub struct CodeView<'a> {
    /// K_i-dimension of each component C_i.
    pub k_dims: Vec<usize>,
    /// GF(q)-basis of the code in coordinates.
    pub basis: Vec<Row>,
    /// GF(q)-basis of the dual.
    pub dual: Vec<Row>,
    enumerator: &'a CyclicCodeEnum,
}

impl CodeView<'_> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_lcd(&self) -> bool {
        let f = self.enumerator.base();
        let mut both = self.basis.clone();
        both.extend_from_slice(&self.dual);
        linalg::rank(f, &both) == self.basis.len() + self.dual.len()
    }
}

/// Cyclic F_q-linear F_{q^t}-codes of length n, enumerated component-wise.
#[derive(Debug, Clone)]
pub struct CyclicCodeEnum {
    ext: Extension,
    delta: FormKind,
    n: usize,
    table: CosetTable,
    mu: MuClassification,
    factors: FactorTable,
    components: Vec<Component>,
    gram: Vec<Row>,
}

impl CyclicCodeEnum {
    pub fn new(q: PrimePower, t: u32, n: u64, delta: FormKind, bound: u64) -> Result<Self> {
        CensusRequest { q, t, n, delta }.validate()?;
        let table = cosets(q, n, t)?;
        let estimate = work_estimate(&table, t);
        if estimate > BigUint::from(bound) {
            return Err(Error::WorkBoundExceeded { estimate: estimate.to_string(), bound });
        }
        let mu = classify(&table);
        let ext = Extension::new(q, t)?;
        let factors = factor_xn_minus_1(q, n)?;
        let form = TraceForm::new(&ext, delta)?;
        let gram = block_diagonal(&form.block_gram(), n as usize);

        let mut e = CyclicCodeEnum {
            ext,
            delta,
            n: n as usize,
            table,
            mu,
            factors,
            components: Vec::new(),
            gram,
        };
        e.components = (0..e.table.s()).map(|i| e.build_component(i)).collect();
        Ok(e)
    }

    fn base(&self) -> &FieldCtx {
        self.ext.base()
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn delta(&self) -> FormKind {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.table
    }

    pub fn classification(&self) -> &MuClassification {
        &self.mu
    }

    pub fn factor_table(&self) -> &FactorTable {
        &self.factors
    }

    /// Gram matrix of (·,·)_δ over GF(q), size tn × tn.
    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    fn build_component(&self, i: usize) -> Component {
        let f = self.base();
        let n = self.n;
        let d = self.table.sizes[i] as usize;
        let mut xn1 = vec![0; n + 1];
        xn1[0] = f.neg(1);
        xn1[n] = 1;
        let mut g = poly_div_exact(f, &xn1, &self.factors.factors[i]);
        g.resize(n, 0);

        // K_i = span of X^m g for m < d
        let k_basis: Vec<Vec<Elem>> = (0..d).map(|m| shift(&g, m)).collect();
        // identity: e = Σ c_m X^m g with e·g = g
        let products: Vec<Vec<Elem>> = k_basis.iter().map(|b| cyc_mul(f, b, &g)).collect();
        let system: Vec<Row> = (0..n).map(|r| products.iter().map(|p| p[r]).collect()).collect();
        let c = linalg::solve(f, &system, &g).expect("K_i has an identity");
        let idempotent = combine(f, &c, &k_basis);

        let k_span: Vec<Vec<Elem>> = (0..d).map(|m| shift(&idempotent, m)).collect();
        let k_elems: Vec<Vec<Elem>> = linalg::all_vectors(f.order(), d)
            .map(|coef| combine(f, &coef, &k_span))
            .collect();
        debug_assert_eq!(k_elems[1], idempotent);

        let mut j_basis = Vec::new();
        for &beta in self.ext.basis() {
            for m in 0..d {
                j_basis.push(self.coords(&self.scale_lift(beta, &shift(&idempotent, m))));
            }
        }
        Component { d, idempotent, k_elems, j_basis }
    }

    /// β · lift(k) for k ∈ R_n^{(q)}.
    fn scale_lift(&self, beta: Elem, k: &[Elem]) -> Vec<Elem> {
        let top = self.ext.top();
        k.iter().map(|&c| top.mul(beta, self.ext.lift(c))).collect()
    }

    /// GF(q)-coordinates of a vector of GF(q^t)^n.
    pub fn coords(&self, v: &[Elem]) -> Row {
        v.iter().flat_map(|&x| self.ext.coords(x).to_vec()).collect()
    }

    /// Inverse of [`CyclicCodeEnum::coords`].
    pub fn from_coords(&self, c: &[Elem]) -> Vec<Elem> {
        let t = self.ext.t() as usize;
        c.chunks(t).map(|ch| self.ext.from_coords(ch)).collect()
    }

    /// Cyclic shift σ in coordinates.
    pub fn shift_coords(&self, c: &[Elem]) -> Row {
        let t = self.ext.t() as usize;
        let len = c.len();
        let mut out = vec![0; len];
        for (idx, &x) in c.iter().enumerate() {
            out[(idx + t) % len] = x;
        }
        out
    }

    /// GF(q)-basis of J_i in coordinates.
    pub fn j_basis(&self, i: usize) -> &[Row] {
        &self.components[i].j_basis
    }

    /// The identity of K_i as a polynomial over GF(q).
    pub fn idempotent(&self, i: usize) -> &[Elem] {
        &self.components[i].idempotent
    }

    /// Order of K_i (equal to q^{d_i} exactly when K_i is a field of that size).
    pub fn k_order(&self, i: usize) -> usize {
        self.components[i].k_elems.len()
    }

    fn dual_rows(&self, basis: &[Row]) -> Vec<Row> {
        // v ∈ C^⊥ iff v · (G cᵀ) = 0 for all c in the basis
        let f = self.base();
        basis
            .iter()
            .map(|c| self.gram.iter().map(|grow| linalg::dot(f, grow, c)).collect())
            .collect()
    }

    fn component_choices(&self, i: usize) -> Vec<SubspaceChoice> {
        let comp = &self.components[i];
        let t = self.ext.t() as usize;
        let order = comp.k_elems.len() as u32;
        let mut out = Vec::new();
        for k in 0..=t {
            linalg::for_each_rref(t, k, order, |rows| {
                let mut basis = Vec::with_capacity(k * comp.d);
                for row in rows {
                    let gen = row.iter().enumerate().fold(vec![0; self.n], |acc, (u, &idx)| {
                        let term = self.scale_lift(self.ext.basis()[u], &comp.k_elems[idx as usize]);
                        cyc_add(self.ext.top(), &acc, &term)
                    });
                    for m in 0..comp.d {
                        basis.push(self.coords(&shift(&gen, m)));
                    }
                }
                let dual_rows = self.dual_rows(&basis);
                out.push(SubspaceChoice { k_dim: k, basis, dual_rows });
                true
            });
        }
        out
    }

    /// Visits every cyclic code once.
    pub fn for_each_code<V>(&self, mut visit: V)
    where
        V: FnMut(&CodeView<'_>),
    {
        let f = self.base();
        let width = self.gram.len();
        let choices: Vec<Vec<SubspaceChoice>> =
            (0..self.components.len()).map(|i| self.component_choices(i)).collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut basis = Vec::new();
            let mut rows = Vec::new();
            let mut k_dims = Vec::with_capacity(idx.len());
            for (c, &j) in choices.iter().zip(&idx) {
                basis.extend_from_slice(&c[j].basis);
                rows.extend_from_slice(&c[j].dual_rows);
                k_dims.push(c[j].k_dim);
            }
            let dual = if rows.is_empty() {
                identity(width)
            } else {
                linalg::nullspace(f, &rows, width)
            };
            visit(&CodeView { k_dims, basis, dual, enumerator: self });

            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn count_lcd(&self) -> BigUint {
        let mut count = BigUint::zero();
        self.for_each_code(|code| {
            if code.is_lcd() {
                count += 1u32;
            }
        });
        count
    }

    /// Checks dim C + dim C^⊥ = tn and
    /// dim_{K_μ(i)} (C^⊥ ∩ J_μ(i)) = t − dim_{K_i} C_i for every code.
    pub fn check_dual_dimensions(&self) -> bool {
        let f = self.base();
        let t = self.ext.t() as usize;
        let width = self.gram.len();
        let mut ok = true;
        self.for_each_code(|code| {
            if code.dim() + code.dual.len() != width {
                ok = false;
                return;
            }
            for (i, &k) in code.k_dims.iter().enumerate() {
                let j = self.mu.mu[i];
                let inter = linalg::intersection_dim(f, &code.dual, &self.components[j].j_basis);
                let dj = self.components[j].d;
                if !inter.is_multiple_of(dj) || inter / dj != t - k {
                    ok = false;
                }
            }
        });
        ok
    }

    /// Checks that every enumerated code is closed under the cyclic shift.
    pub fn check_shift_invariance(&self) -> bool {
        let f = self.base();
        let mut ok = true;
        self.for_each_code(|code| {
            let shifted: Vec<Row> = code.basis.iter().map(|r| self.shift_coords(r)).collect();
            if !linalg::spans_contain(f, &code.basis, &shifted) {
                ok = false;
            }
        });
        ok
    }
}

fn shift(a: &[Elem], m: usize) -> Vec<Elem> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        out[(i + m) % n] = x;
    }
    out
}

fn combine(f: &FieldCtx, coef: &[Elem], vecs: &[Vec<Elem>]) -> Vec<Elem> {
    let n = vecs.first().map_or(0, |v| v.len());
    coef.iter()
        .zip(vecs)
        .fold(vec![0; n], |acc, (&c, v)| linalg::axpy(f, &acc, c, v))
}

fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Number of cyclic codes: Π_i Σ_k [t, k]_{q^{d_i}}.
pub fn work_estimate(table: &CosetTable, t: u32) -> BigUint {
    let q = table.q.value_big();
    table.sizes.iter().fold(BigUint::one(), |acc, &d| {
        let big_q = q.pow(d);
        acc * (0..=t).map(|k| gauss_binom(t, k, &big_q)).sum::<BigUint>()
    })
}

/// Complementary-dual cyclic codes counted by explicit enumeration.
pub fn enumerate_lcd_count(
    q: PrimePower,
    t: u32,
    n: u64,
    delta: FormKind,
    bound: u64,
) -> Result<BigUint> {
    Ok(CyclicCodeEnum::new(q, t, n, delta, bound)?.count_lcd())
}

pub fn dual_dimension_check(
    q: PrimePower,
    t: u32,
    n: u64,
    delta: FormKind,
    bound: u64,
) -> Result<bool> {
    Ok(CyclicCodeEnum::new(q, t, n, delta, bound)?.check_dual_dimensions())
}

/// Complementary-dual cyclic codes found by scanning every GF(q)-subspace of
/// GF(q^t)^n for shift invariance, with no use of the ideal decomposition.
pub fn enumerate_lcd_count_shift_invariant(
    q: PrimePower,
    t: u32,
    n: u64,
    delta: FormKind,
    bound: u64,
) -> Result<BigUint> {
    CensusRequest { q, t, n, delta }.validate()?;
    let width = (t as u64 * n) as u32;
    let qb = q.value_big();
    let estimate: BigUint = (0..=width).map(|k| gauss_binom(width, k, &qb)).sum();
    if estimate > BigUint::from(bound) {
        return Err(Error::WorkBoundExceeded { estimate: estimate.to_string(), bound });
    }
    let ext = Extension::new(q, t)?;
    let gram = block_diagonal(&TraceForm::new(&ext, delta)?.block_gram(), n as usize);
    let f = ext.base();
    let w = width as usize;
    let tu = t as usize;
    let shift_row = |c: &Row| -> Row {
        let mut out = vec![0; w];
        for (idx, &x) in c.iter().enumerate() {
            out[(idx + tu) % w] = x;
        }
        out
    };
    let mut count = BigUint::zero();
    for k in 0..=w {
        linalg::for_each_rref(w, k, f.order(), |rows| {
            let shifted: Vec<Row> = rows.iter().map(&shift_row).collect();
            if !linalg::spans_contain(f, rows, &shifted) {
                return true;
            }
            let cons: Vec<Row> = rows
                .iter()
                .map(|c| gram.iter().map(|g| linalg::dot(f, g, c)).collect())
                .collect();
            let dual = if cons.is_empty() { identity(w) } else { linalg::nullspace(f, &cons, w) };
            let mut both = rows.to_vec();
            both.extend_from_slice(&dual);
            if linalg::rank(f, &both) == rows.len() + dual.len() {
                count += 1u32;
            }
            true
        });
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_WORK_BOUND;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_value(q).unwrap()
    }

    #[test]
    fn census_examples() {
        let r = census(&CensusRequest::new(2, 2, 3, FormKind::Ordinary).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(16u32));
        assert_eq!(r.r_factor, BigUint::from(4u32));
        let r = census(&CensusRequest::new(2, 2, 7, FormKind::Star).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(148u32));
        let r = census(&CensusRequest::new(2, 2, 3, FormKind::Hermitian).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(8u32));
    }

    #[test]
    fn factorizations() {
        let f = factor_xn_minus_1(pp(2), 3).unwrap();
        assert_eq!(f.factors, vec![vec![1, 1], vec![1, 1, 1]]);
        let f = factor_xn_minus_1(pp(2), 7).unwrap();
        let degs: Vec<usize> = f.factors.iter().map(|p| p.len() - 1).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        let mut cubics = vec![f.factors[1].clone(), f.factors[2].clone()];
        cubics.sort();
        assert_eq!(cubics, vec![vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
        let f = factor_xn_minus_1(pp(5), 1).unwrap();
        assert_eq!(f.factors, vec![vec![4, 1]]);
    }

    #[test]
    fn gram_for_gf4() {
        let g = trace_form_gram(pp(2), 2, 1, FormKind::Ordinary).unwrap();
        assert_eq!(g, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn small_oracle_values() {
        let b = DEFAULT_WORK_BOUND;
        assert_eq!(enumerate_lcd_count(pp(2), 2, 1, FormKind::Ordinary, b).unwrap(), BigUint::from(4u32));
        assert_eq!(enumerate_lcd_count(pp(2), 2, 3, FormKind::Ordinary, b).unwrap(), BigUint::from(16u32));
        assert_eq!(enumerate_lcd_count(pp(2), 2, 3, FormKind::Star, b).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn enumeration_visits_every_cyclic_code_once() {
        for (q, t, n) in [(2u64, 2u32, 3u64), (3, 2, 4), (2, 3, 3), (4, 2, 3)] {
            let e = CyclicCodeEnum::new(pp(q), t, n, FormKind::Ordinary, DEFAULT_WORK_BOUND).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut visited = 0u64;
            e.for_each_code(|code| {
                let mut b = code.basis.clone();
                linalg::rref(e.extension().base(), &mut b);
                assert_eq!(b.len(), code.dim());
                seen.insert(b);
                visited += 1;
            });
            assert_eq!(BigUint::from(visited), work_estimate(e.cosets(), t));
            assert_eq!(seen.len() as u64, visited);
            assert!(e.check_shift_invariance());
        }
    }

    #[test]
    fn star_form_with_nonsquare_discriminant() {
        // 1 - t = -1 is a non-square mod 3
        let b = DEFAULT_WORK_BOUND;
        assert_eq!(enumerate_lcd_count(pp(3), 2, 1, FormKind::Star, b).unwrap(), BigUint::from(6u32));
        let r = census(&CensusRequest::new(3, 2, 1, FormKind::Star).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(6u32));
        assert_eq!(r.r_case, Bullet::OrthogonalDefective);
    }

    #[test]
    fn poly_form_is_a_gf_q_polynomial() {
        let ext = Extension::new(pp(2), 2).unwrap();
        let a = vec![1, 2, 0];
        let b = vec![3, 1, 2];
        for delta in FormKind::ALL {
            let v = poly_form(&ext, &a, &b, delta).unwrap();
            assert_eq!(v.len(), 3);
        }
        // constant term of [a, b]_0 is Σ Tr(a_i b_i)
        let v = poly_form(&ext, &a, &b, FormKind::Ordinary).unwrap();
        let top = ext.top();
        let direct = (0..3).fold(0, |acc, i| ext.base().add(acc, ext.trace_base(top.mul(a[i], b[i]))));
        assert_eq!(v[0], direct);
    }

    #[test]
    fn work_bound_refuses_large_jobs() {
        let err = enumerate_lcd_count(pp(2), 2, 31, FormKind::Ordinary, DEFAULT_WORK_BOUND);
        assert!(matches!(err, Err(Error::WorkBoundExceeded { .. })));
    }
}
