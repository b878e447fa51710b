//! Exhaustive ground truth on small formed spaces.
//!
//! Everything here works by enumeration: subspaces are visited through their
//! reduced row-echelon representatives and vectors by counting through all of
//! `GF(Q)^dim`. Each routine estimates its work first and refuses jobs above
//! the supplied bound.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::TraceForm;
use crate::counting::{gauss_binom, FormKind};
use crate::error::{Error, Result};
use crate::gf_tower::{Elem, Extension, FieldCtx, PrimePower};
use crate::linalg::{self, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Conjugate-symmetric for x ↦ x^{√Q}.
    Hermitian,
    /// Symmetric bilinear; in odd characteristic this carries the quadratic
    /// map u ↦ ½[u, u].
    SymmetricBilinear,
    /// Alternating: skew-symmetric with zero diagonal.
    Alternating,
}

/// A finite-dimensional space over GF(Q) with a sesquilinear form given by
/// its Gram matrix.
#[derive(Debug, Clone)]
pub struct FormedSpace {
    field: Arc<FieldCtx>,
    dim: usize,
    gram: Vec<Row>,
    flavor: Flavor,
}

fn check_bound(estimate: BigUint, bound: u64) -> Result<()> {
    if estimate > BigUint::from(bound) {
        Err(Error::WorkBoundExceeded { estimate: estimate.to_string(), bound })
    } else {
        Ok(())
    }
}

fn subspace_count(dim: usize, k: usize, order: u32) -> BigUint {
    gauss_binom(dim as u32, k as u32, &BigUint::from(order))
}

fn vector_count(order: u32, dim: usize) -> BigUint {
    BigUint::from(order).pow(dim as u32)
}

impl FormedSpace {
    pub fn new(field: Arc<FieldCtx>, gram: Vec<Row>, flavor: Flavor) -> Result<Self> {
        let dim = gram.len();
        if dim == 0 || gram.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("Gram matrix must be square and non-empty".into()));
        }
        if gram.iter().flatten().any(|&x| !field.contains(x)) {
            return Err(Error::FieldMismatch("Gram entry outside the field".into()));
        }
        if flavor == Flavor::Hermitian && field.degree() % 2 == 1 {
            return Err(Error::FormInadmissible(format!(
                "a Hermitian form needs a square field order, got {}",
                field.order()
            )));
        }
        let space = FormedSpace { field, dim, gram, flavor };
        for i in 0..dim {
            for j in 0..dim {
                let (a, b) = (space.gram[i][j], space.gram[j][i]);
                let ok = match flavor {
                    Flavor::Hermitian => b == space.conj(a),
                    Flavor::SymmetricBilinear => a == b,
                    Flavor::Alternating => b == space.field.neg(a) && (i != j || a == 0),
                };
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "Gram matrix is not {flavor:?} at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(space)
    }

    /// Identity Gram matrix with the Hermitian involution.
    pub fn unitary(field: Arc<FieldCtx>, dim: usize) -> Result<Self> {
        let gram = identity(dim);
        FormedSpace::new(field, gram, Flavor::Hermitian)
    }

    /// The standard alternating form of even dimension.
    pub fn symplectic(field: Arc<FieldCtx>, dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::OddT(dim as u32));
        }
        let mut gram = vec![vec![0; dim]; dim];
        for i in 0..dim / 2 {
            gram[2 * i][2 * i + 1] = 1;
            gram[2 * i + 1][2 * i] = field.neg(1);
        }
        FormedSpace::new(field, gram, Flavor::Alternating)
    }

    /// GF(q^t) viewed over GF(q) with the trace form of type δ.
    pub fn trace_form(q: PrimePower, t: u32, delta: FormKind) -> Result<Self> {
        let ext = Extension::new(q, t)?;
        let gram = TraceForm::new(&ext, delta)?.block_gram();
        let flavor = match delta {
            FormKind::Ordinary => Flavor::SymmetricBilinear,
            FormKind::Star if !q.is_even() => Flavor::SymmetricBilinear,
            FormKind::Star | FormKind::Hermitian => Flavor::Alternating,
        };
        FormedSpace::new(ext.base().clone(), gram, flavor)
    }

    /// Turns a skew-Hermitian Gram matrix into a Hermitian one by scaling
    /// with the ordering-smallest nonzero γ satisfying γ^{√Q} = −γ.
    pub fn hermitianize_skew(field: Arc<FieldCtx>, gram: Vec<Row>) -> Result<Self> {
        if field.degree() % 2 == 1 {
            return Err(Error::FormInadmissible("skew-Hermitian forms need a square order".into()));
        }
        let root = sqrt_order(&field);
        let gamma = field
            .by_order()
            .find(|&x| x != 0 && field.pow(x, root as u128) == field.neg(x))
            .expect("a nonzero skew element exists");
        let scaled = gram.iter().map(|r| linalg::scale(&field, gamma, r)).collect();
        FormedSpace::new(field, scaled, Flavor::Hermitian)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &[Row] {
        &self.gram
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// x ↦ x^{√Q} for Hermitian spaces, the identity otherwise.
    pub fn conj(&self, x: Elem) -> Elem {
        match self.flavor {
            Flavor::Hermitian => self.field.pow(x, sqrt_order(&self.field) as u128),
            _ => x,
        }
    }

    /// [u, v] = u G v̄ᵀ.
    pub fn form(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 && self.gram[i][j] != 0 {
                    acc = f.add(acc, f.mul(ui, f.mul(self.gram[i][j], self.conj(vj))));
                }
            }
        }
        acc
    }

    /// Gram matrix of the form restricted to the span of `basis`.
    pub fn restricted_gram(&self, basis: &[Row]) -> Vec<Row> {
        basis
            .iter()
            .map(|u| basis.iter().map(|v| self.form(u, v)).collect())
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&self.field, &self.gram) == self.dim
    }

    pub fn is_nondegenerate_on(&self, basis: &[Row]) -> bool {
        linalg::rank(&self.field, &self.restricted_gram(basis)) == basis.len()
    }

    /// {v : [u, v] = 0 for all u in `basis`}.
    pub fn perp(&self, basis: &[Row]) -> Vec<Row> {
        // [u, v] = Σ_j (u G)_j v̄_j, so v̄ is in the null space of the rows u G
        let rows: Vec<Row> = basis
            .iter()
            .map(|u| linalg::mat_mul(&self.field, std::slice::from_ref(u), &self.gram).remove(0))
            .collect();
        let ns = if rows.is_empty() {
            identity(self.dim)
        } else {
            linalg::nullspace(&self.field, &rows, self.dim)
        };
        ns.into_iter()
            .map(|v| v.into_iter().map(|x| self.conj(x)).collect())
            .collect()
    }
}

fn sqrt_order(f: &FieldCtx) -> u64 {
    (f.characteristic() as u64).pow(f.degree() / 2)
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

/// Non-degenerate k-dimensional subspaces.
pub fn count_nondeg_subspaces(space: &FormedSpace, k: usize, bound: u64) -> Result<BigUint> {
    if k > space.dim {
        return Ok(BigUint::zero());
    }
    let order = space.field.order();
    check_bound(subspace_count(space.dim, k, order), bound)?;
    let mut count = BigUint::zero();
    linalg::for_each_rref(space.dim, k, order, |rows| {
        if space.is_nondegenerate_on(rows) {
            count += 1u32;
        }
        true
    });
    Ok(count)
}

/// Non-degenerate subspaces of every dimension 0..=dim.
pub fn nondeg_subspace_profile(space: &FormedSpace, bound: u64) -> Result<Vec<BigUint>> {
    let order = space.field.order();
    let total: BigUint = (0..=space.dim).map(|k| subspace_count(space.dim, k, order)).sum();
    check_bound(total, bound)?;
    (0..=space.dim).map(|k| count_nondeg_subspaces(space, k, bound)).collect()
}

/// Largest dimension of a totally isotropic subspace.
///
/// In odd characteristic with a symmetric form, totally isotropic and totally
/// singular coincide.
pub fn witt_index_bruteforce(space: &FormedSpace, bound: u64) -> Result<usize> {
    let order = space.field.order();
    let total: BigUint = (1..=space.dim / 2).map(|k| subspace_count(space.dim, k, order)).sum();
    check_bound(total, bound)?;
    let mut w = 0;
    for k in 1..=space.dim / 2 {
        let mut found = false;
        linalg::for_each_rref(space.dim, k, order, |rows| {
            found = space.restricted_gram(rows).iter().flatten().all(|&x| x == 0);
            !found
        });
        if !found {
            break;
        }
        w = k;
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyCounts {
    /// Nonzero vectors u with [u, u] = 0.
    pub isotropic: BigUint,
    /// Ordered pairs (a, b) of isotropic vectors with [a, b] = 1.
    pub hyperbolic: BigUint,
}

pub fn count_isotropic_and_hyperbolic(space: &FormedSpace, bound: u64) -> Result<IsotropyCounts> {
    let order = space.field.order();
    check_bound(vector_count(order, 2 * space.dim), bound)?;
    let iso: Vec<Row> = linalg::all_vectors(order, space.dim)
        .skip(1)
        .filter(|v| space.form(v, v) == 0)
        .collect();
    let mut hyperbolic = 0u64;
    for a in &iso {
        for b in &iso {
            if space.form(a, b) == 1 {
                hyperbolic += 1;
            }
        }
    }
    Ok(IsotropyCounts { isotropic: BigUint::from(iso.len()), hyperbolic: BigUint::from(hyperbolic) })
}

/// `(L, M)`: non-singular u with [u, u] in [r, r]·(GF(Q)^×)², and the rest of
/// the non-singular vectors.
pub fn count_isometric_nonsingular(
    space: &FormedSpace,
    r: &[Elem],
    bound: u64,
) -> Result<(BigUint, BigUint)> {
    let f = &space.field;
    if f.characteristic() == 2 {
        return Err(Error::EvenQ(f.order() as u64));
    }
    if space.flavor != Flavor::SymmetricBilinear {
        return Err(Error::FormInadmissible("a quadratic space is required".into()));
    }
    let rr = space.form(r, r);
    if rr == 0 {
        return Err(Error::SingularReference);
    }
    check_bound(vector_count(f.order(), space.dim), bound)?;
    let (mut l, mut m) = (0u64, 0u64);
    for u in linalg::all_vectors(f.order(), space.dim) {
        let uu = space.form(&u, &u);
        if uu == 0 {
            continue;
        }
        if f.is_square(f.div(uu, rr).unwrap()) {
            l += 1;
        } else {
            m += 1;
        }
    }
    Ok((BigUint::from(l), BigUint::from(m)))
}

/// Trace-kernel subspaces of GF(q^t) for q even.
#[derive(Debug, Clone)]
pub struct TraceKernels {
    /// Basis of V_0 = ker Tr, as elements of GF(q^t).
    pub v0: Vec<Elem>,
    /// Ordering-smallest α with Tr(α) = 1 (t even only).
    pub alpha: Option<Elem>,
    /// Basis of V_1 = V_0 ∩ α^{-1} V_0 (t even only).
    pub v1: Option<Vec<Elem>>,
}

pub fn trace_kernel_spaces(q: PrimePower, t: u32) -> Result<TraceKernels> {
    if !q.is_even() {
        return Err(Error::OddQ(q.value()));
    }
    let ext = Extension::new(q, t)?;
    let top = ext.top();
    let functional = |c: Elem| -> Row {
        ext.basis().iter().map(|&b| ext.trace_base(top.mul(c, b))).collect()
    };
    let tu = t as usize;
    let to_elems = |rows: Vec<Row>| -> Vec<Elem> { rows.iter().map(|r| ext.from_coords(r)).collect() };
    let v0 = to_elems(linalg::nullspace(ext.base(), &[functional(1)], tu));
    if t % 2 == 1 {
        return Ok(TraceKernels { v0, alpha: None, v1: None });
    }
    let alpha = top.by_order().find(|&x| ext.trace_base(x) == 1).expect("trace is onto");
    let v1 = to_elems(linalg::nullspace(ext.base(), &[functional(1), functional(alpha)], tu));
    Ok(TraceKernels { v0, alpha: Some(alpha), v1: Some(v1) })
}

/// K^t ⊕ K^t with [a ⊕ b, c ⊕ d] = ([a, d], [c, b]) for a non-degenerate
/// bilinear pairing [x, y] = x P yᵀ.
#[derive(Debug, Clone)]
pub struct PairedModuleSpace {
    field: Arc<FieldCtx>,
    rank: usize,
    pairing: Vec<Row>,
}

/// An element a ⊕ b of the paired module.
pub type PairElem = (Row, Row);

impl PairedModuleSpace {
    pub fn new(field: Arc<FieldCtx>, pairing: Vec<Row>) -> Result<Self> {
        let rank = pairing.len();
        if rank == 0 || pairing.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidArgument("pairing matrix must be square and non-empty".into()));
        }
        if linalg::rank(&field, &pairing) != rank {
            return Err(Error::DegenerateInput("pairing matrix is singular".into()));
        }
        Ok(PairedModuleSpace { field, rank, pairing })
    }

    fn module_field(q: PrimePower, d: u32) -> Result<Arc<FieldCtx>> {
        Ok(Arc::new(FieldCtx::new(q.p(), q.e() * d)?))
    }

    /// Rank t over GF(q^d) with the identity pairing.
    pub fn identity(q: PrimePower, d: u32, t: usize) -> Result<Self> {
        PairedModuleSpace::new(Self::module_field(q, d)?, identity(t))
    }

    /// Rank t over GF(q^d) with a random invertible pairing drawn from `seed`.
    pub fn random(q: PrimePower, d: u32, t: usize, seed: u64) -> Result<Self> {
        let field = Self::module_field(q, d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let m: Vec<Row> = (0..t)
                .map(|_| (0..t).map(|_| rng.gen_range(0..field.order())).collect())
                .collect();
            if linalg::rank(&field, &m) == t {
                return PairedModuleSpace::new(field, m);
            }
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pair(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                acc = f.add(acc, f.mul(ai, linalg::dot(f, &self.pairing[i], b)));
            }
        }
        acc
    }

    /// [x, y] as its two components.
    pub fn form(&self, x: &PairElem, y: &PairElem) -> (Elem, Elem) {
        (self.pair(&x.0, &y.1), self.pair(&y.0, &x.1))
    }

    /// {β : [α, β] = 0 for all α in `a`}.
    pub fn right_perp(&self, a: &[Row]) -> Vec<Row> {
        if a.is_empty() {
            return identity(self.rank);
        }
        let rows = linalg::mat_mul(&self.field, a, &self.pairing);
        linalg::nullspace(&self.field, &rows, self.rank)
    }

    /// {α : [α, β] = 0 for all β in `b`}.
    pub fn left_perp(&self, b: &[Row]) -> Vec<Row> {
        if b.is_empty() {
            return identity(self.rank);
        }
        let rows = linalg::mat_mul(&self.field, b, &linalg::transpose(&self.pairing));
        linalg::nullspace(&self.field, &rows, self.rank)
    }

    /// A ⊕ B is non-degenerate: A ∩ B^⊥ = {0} and B ∩ A^⊥ = {0}.
    pub fn is_nondegenerate_pair(&self, a: &[Row], b: &[Row]) -> bool {
        let f = &self.field;
        linalg::intersection_dim(f, a, &self.left_perp(b)) == 0
            && linalg::intersection_dim(f, b, &self.right_perp(a)) == 0
    }
}

/// Ordered non-degenerate pairs (A, B) with dim A = ka and dim B = kb.
pub fn count_nondeg_module_pairs_dims(
    space: &PairedModuleSpace,
    ka: usize,
    kb: usize,
    bound: u64,
) -> Result<BigUint> {
    let t = space.rank;
    if ka > t || kb > t {
        return Ok(BigUint::zero());
    }
    let order = space.field.order();
    check_bound(subspace_count(t, ka, order) * subspace_count(t, kb, order), bound)?;
    let mut bs: Vec<Vec<Row>> = Vec::new();
    linalg::for_each_rref(t, kb, order, |rows| {
        bs.push(rows.to_vec());
        true
    });
    let mut count = BigUint::zero();
    linalg::for_each_rref(t, ka, order, |a| {
        for b in &bs {
            if space.is_nondegenerate_pair(a, b) {
                count += 1u32;
            }
        }
        true
    });
    Ok(count)
}

pub fn count_nondeg_module_pairs(space: &PairedModuleSpace, k: usize, bound: u64) -> Result<BigUint> {
    count_nondeg_module_pairs_dims(space, k, k, bound)
}

/// `table[ka][kb]` = [`count_nondeg_module_pairs_dims`].
pub fn nondeg_module_pair_table(space: &PairedModuleSpace, bound: u64) -> Result<Vec<Vec<BigUint>>> {
    let t = space.rank;
    (0..=t)
        .map(|ka| (0..=t).map(|kb| count_nondeg_module_pairs_dims(space, ka, kb, bound)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedCounts {
    /// Nonzero isotropic a ⊕ b with a = 0 or b = 0.
    pub trivial: BigUint,
    /// Isotropic a ⊕ b with a ≠ 0 and b ≠ 0.
    pub nontrivial: BigUint,
    /// Ordered pairs (x, y) of isotropic elements with [x, y] = (1, 1).
    pub hyperbolic: BigUint,
}

pub fn count_paired_isotropic_hyperbolic(space: &PairedModuleSpace, bound: u64) -> Result<PairedCounts> {
    let f = &space.field;
    let order = f.order();
    let t = space.rank;
    let size = vector_count(order, t);
    let words_big = (&size + 63u32) / 64u32;
    check_bound(&size * &size * words_big, bound)?;
    let v = (order as usize).pow(t as u32);
    let vecs: Vec<Row> = linalg::all_vectors(order, t).collect();
    let left: Vec<Row> = vecs
        .iter()
        .map(|a| linalg::mat_mul(f, std::slice::from_ref(a), &space.pairing).remove(0))
        .collect();
    let table: Vec<Vec<Elem>> = left
        .iter()
        .map(|la| vecs.iter().map(|b| linalg::dot(f, la, b)).collect())
        .collect();

    let words = v.div_ceil(64);
    let bitset = |pred: &dyn Fn(usize) -> bool| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        for j in 0..v {
            if pred(j) {
                bits[j / 64] |= 1 << (j % 64);
            }
        }
        bits
    };
    // zero[c]: the d with [c, d] = 0; one[a]: the d with [a, d] = 1
    let zero: Vec<Vec<u64>> = (0..v).map(|c| bitset(&|d| table[c][d] == 0)).collect();
    let one: Vec<Vec<u64>> = (0..v).map(|a| bitset(&|d| table[a][d] == 1)).collect();

    let mut nontrivial = 0u64;
    let mut hyperbolic = 0u64;
    for a in 1..v {
        for b in 1..v {
            if table[a][b] != 0 {
                continue;
            }
            nontrivial += 1;
            for c in 0..v {
                if table[c][b] != 1 {
                    continue;
                }
                hyperbolic += zero[c]
                    .iter()
                    .zip(&one[a])
                    .map(|(z, o)| (z & o).count_ones() as u64)
                    .sum::<u64>();
            }
        }
    }
    Ok(PairedCounts {
        trivial: BigUint::from(2 * (v as u64 - 1)),
        nontrivial: BigUint::from(nontrivial),
        hyperbolic: BigUint::from(hyperbolic),
    })
}

/// An orthogonal decomposition of a non-degenerate A ⊕ B into hyperbolic
/// pairs and at most one anisotropic element.
#[derive(Debug, Clone)]
pub struct WittTranscript {
    pub hyperbolic: Vec<(PairElem, PairElem)>,
    pub anisotropic: Option<PairElem>,
}

impl WittTranscript {
    fn blocks(&self) -> Vec<Vec<&PairElem>> {
        let mut out: Vec<Vec<&PairElem>> = self.hyperbolic.iter().map(|(x, y)| vec![x, y]).collect();
        if let Some(z) = &self.anisotropic {
            out.push(vec![z]);
        }
        out
    }

    /// Checks the Gram blocks, orthogonality between blocks, and that the
    /// components span A and B.
    pub fn verify(&self, space: &PairedModuleSpace, a: &[Row], b: &[Row]) -> bool {
        let f = &space.field;
        for (x, y) in &self.hyperbolic {
            if space.form(x, x) != (0, 0) || space.form(y, y) != (0, 0) {
                return false;
            }
            if space.form(x, y) != (1, 1) || space.form(y, x) != (1, 1) {
                return false;
            }
        }
        if let Some(z) = &self.anisotropic {
            if space.form(z, z) != (1, 1) {
                return false;
            }
        }
        let blocks = self.blocks();
        for (i, bi) in blocks.iter().enumerate() {
            for bj in blocks.iter().skip(i + 1) {
                for x in bi {
                    for y in bj {
                        if space.form(x, y) != (0, 0) || space.form(y, x) != (0, 0) {
                            return false;
                        }
                    }
                }
            }
        }
        let parts: Vec<&PairElem> = blocks.into_iter().flatten().collect();
        let a_parts: Vec<Row> = parts.iter().map(|x| x.0.clone()).collect();
        let b_parts: Vec<Row> = parts.iter().map(|x| x.1.clone()).collect();
        let same_span = |basis: &[Row], got: &[Row]| {
            linalg::rank(f, got) == basis.len()
                && got.len() == basis.len()
                && linalg::spans_contain(f, basis, got)
        };
        same_span(a, &a_parts) && same_span(b, &b_parts)
    }
}

/// Splits off hyperbolic pairs from A ⊕ B until at most one dimension is left.
pub fn find_witt_decomposition_pair(
    space: &PairedModuleSpace,
    a: &[Row],
    b: &[Row],
) -> Result<WittTranscript> {
    let f = space.field.clone();
    let r = a.len();
    if b.len() != r {
        return Err(Error::DegenerateInput(format!("dimensions differ: {} and {}", r, b.len())));
    }
    if linalg::rank(&f, a) != r || linalg::rank(&f, b) != r {
        return Err(Error::DegenerateInput("bases are not independent".into()));
    }
    let cross: Vec<Row> = a.iter().map(|x| b.iter().map(|y| space.pair(x, y)).collect()).collect();
    if r > 0 && linalg::rank(&f, &cross) != r {
        return Err(Error::DegenerateInput("the pair is degenerate".into()));
    }

    let combine = |coef: &[Elem], basis: &[Row]| -> Row {
        coef.iter()
            .zip(basis)
            .fold(vec![0; space.rank], |acc, (&c, v)| linalg::axpy(&f, &acc, c, v))
    };
    // a vector of span(basis) on which the functionals take the given values
    let pick = |basis: &[Row], functionals: &[&dyn Fn(&Row) -> Elem], values: &[Elem]| -> Row {
        let rows: Vec<Row> = functionals
            .iter()
            .map(|phi| basis.iter().map(phi).collect())
            .collect();
        let coef = linalg::solve(&f, &rows, values).expect("non-degenerate pair");
        combine(&coef, basis)
    };
    let restrict = |basis: &[Row], functionals: &[&dyn Fn(&Row) -> Elem]| -> Vec<Row> {
        let rows: Vec<Row> = functionals
            .iter()
            .map(|phi| basis.iter().map(phi).collect())
            .collect();
        linalg::nullspace(&f, &rows, basis.len())
            .iter()
            .map(|c| combine(c, basis))
            .collect()
    };

    let mut a_cur = a.to_vec();
    let mut b_cur = b.to_vec();
    let mut hyperbolic = Vec::new();
    while a_cur.len() >= 2 {
        let bb = b_cur[0].clone();
        let against_b = |v: &Row| space.pair(v, &bb);
        let kernel = restrict(&a_cur, &[&against_b]);
        let aa = kernel[0].clone();
        let c = pick(&a_cur, &[&against_b], &[1]);
        let from_a = |v: &Row| space.pair(&aa, v);
        let d = pick(&b_cur, &[&from_a], &[1]);
        let cd = space.pair(&c, &d);
        let c2 = linalg::axpy(&f, &c, f.neg(cd), &aa);

        let against_d = |v: &Row| space.pair(v, &d);
        let from_c2 = |v: &Row| space.pair(&c2, v);
        let a_next = restrict(&a_cur, &[&against_b, &against_d]);
        let b_next = restrict(&b_cur, &[&from_a, &from_c2]);
        hyperbolic.push(((aa.clone(), bb.clone()), (c2.clone(), d)));
        a_cur = a_next;
        b_cur = b_next;
    }
    let anisotropic = if a_cur.len() == 1 {
        let s = space.pair(&a_cur[0], &b_cur[0]);
        let inv = f.inv(s).expect("remaining line is anisotropic");
        Some((a_cur[0].clone(), linalg::scale(&f, inv, &b_cur[0])))
    } else {
        None
    };
    Ok(WittTranscript { hyperbolic, anisotropic })
}
