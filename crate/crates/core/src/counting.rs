//! Closed-form counts in exact integer arithmetic.
//!
//! Every count with a per-dimension structure is returned as a [`KBreakdown`]
//! holding `N_k` for `k = 0..=t`. Divisions go through [`exact_div`], which
//! reports a non-zero remainder as [`Error::InexactDivision`] instead of
//! truncating.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{classify, cosets};
use crate::error::{Error, Result};
use crate::gf_tower::PrimePower;

/// The trace form δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// (a,b)_∗ = Σ Tr(a_j φ(b_j)).
    Star,
    /// (a,b)_0 = Σ Tr(a_j b_j).
    Ordinary,
    /// (a,b)_γ = Σ Tr(γ a_j b_j^{q^{t/2}}).
    Hermitian,
}

impl FormKind {
    pub const ALL: [FormKind; 3] = [FormKind::Star, FormKind::Ordinary, FormKind::Hermitian];

    pub fn name(self) -> &'static str {
        match self {
            FormKind::Star => "star",
            FormKind::Ordinary => "ordinary",
            FormKind::Hermitian => "hermitian",
        }
    }

    /// Checks `t ∈ T_δ`.
    pub fn check_admissible(self, q: PrimePower, t: u32) -> Result<()> {
        if t < 2 {
            return Err(Error::FormInadmissible(format!("t = {t} must be at least 2")));
        }
        match self {
            FormKind::Star if t as u64 % q.p() == 1 => Err(Error::FormInadmissible(format!(
                "the star form needs t != 1 (mod p), but t = {t} ≡ 1 (mod {})",
                q.p()
            ))),
            FormKind::Hermitian if t % 2 == 1 => Err(Error::FormInadmissible(format!(
                "the Hermitian form needs an even t, got t = {t}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_admissible(self, q: PrimePower, t: u32) -> bool {
        self.check_admissible(q, t).is_ok()
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "star" | "*" => Ok(FormKind::Star),
            "ordinary" | "0" => Ok(FormKind::Ordinary),
            "hermitian" | "gamma" => Ok(FormKind::Hermitian),
            other => Err(Error::InvalidArgument(format!("unknown form {other:?}"))),
        }
    }
}

/// Counts `N_k` of non-degenerate k-dimensional objects, `k = 0..=t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KBreakdown {
    pub per_k: Vec<BigUint>,
    pub total: BigUint,
}

impl KBreakdown {
    /// Wraps interior values `N_1..N_{t-1}` with the boundary ones.
    fn from_interior(t: u32, mut f: impl FnMut(u32) -> Result<BigInt>) -> Result<Self> {
        let mut per_k = vec![BigUint::one()];
        for k in 1..t {
            let v = f(k)?;
            per_k.push(to_unsigned(v, "per-dimension count")?);
        }
        if t > 0 {
            per_k.push(BigUint::one());
        }
        let total = per_k.iter().sum();
        Ok(KBreakdown { per_k, total })
    }

    pub fn t(&self) -> u32 {
        self.per_k.len() as u32 - 1
    }
}

fn to_unsigned(v: BigInt, what: &str) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| Error::InexactDivision(format!("{what} came out negative")))
}

fn pw(q: u64, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn big(v: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

/// `num / den`, failing unless the remainder is zero.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: division by zero")));
    }
    let (quo, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: {num} / {den}")));
    }
    Ok(quo)
}

/// The Gaussian binomial `[a, b]_Q`, with `[a, 0] = 1` and `[a, b] = 0` for `b > a`.
pub fn gauss_binom(a: u32, b: u32, big_q: &BigUint) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= big_q.pow(a) - big_q.pow(i);
        den *= big_q.pow(b) - big_q.pow(i);
    }
    let (quo, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial [{a},{b}]_{big_q} is not integral");
    quo
}

/// `[a, b]_{q^2}` as a signed integer.
fn gb_sq(a: u32, b: u32, q: u64) -> BigInt {
    big(&gauss_binom(a, b, &(BigUint::from(q) * q)))
}

/// Non-degenerate subspaces of a t-dimensional unitary space over GF(q^d), d even.
pub fn n_unitary(t: u32, d: u32, q: u64) -> Result<KBreakdown> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::OddD(d));
    }
    if t < 1 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let qh = BigInt::from(q).pow(d / 2);
    let sign = |e: u32| if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    KBreakdown::from_interior(t, |k| {
        let mut num = qh.pow(k * (t - k));
        let mut den = BigInt::one();
        for j in 0..k {
            num *= qh.pow(t - j) - sign(t - j);
            den *= qh.pow(k - j) - sign(k - j);
        }
        exact_div(&num, &den, "unitary count")
    })
}

/// Non-degenerate subspaces of a t-dimensional symplectic space over GF(q).
pub fn n_symplectic(t: u32, q: u64) -> Result<KBreakdown> {
    if t % 2 == 1 {
        return Err(Error::OddT(t));
    }
    KBreakdown::from_interior(t, |k| {
        if k % 2 == 1 {
            return Ok(BigInt::zero());
        }
        Ok(pw(q, (k * (t - k) / 2) as u64) * gb_sq(t / 2, k / 2, q))
    })
}

/// Witt index of the trace form Tr(ab) on GF(q^t), q odd.
pub fn witt_index_closed(t: u32, q: u64) -> Result<u32> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    Ok(if t % 2 == 1 {
        (t - 1) / 2
    } else if q % 4 == 3 && t % 4 == 2 {
        t / 2
    } else {
        (t - 2) / 2
    })
}

/// Witt index of the restricted trace form on GF(q^t) for δ ∈ {∗, 0}, q odd.
///
/// For δ = 0 this is [`witt_index_closed`]. The star form equals
/// `Tr(a)Tr(b) − Tr(ab)`, whose determinant is `(1 − t)` times that of the
/// ordinary form when t is even; the index therefore agrees with the ordinary
/// one exactly when `1 − t` is a square in GF(q), and moves to the other
/// admissible value otherwise.
pub fn witt_index_for_form(delta: FormKind, t: u32, q: PrimePower) -> Result<u32> {
    let qv = q.value();
    let w0 = witt_index_closed(t, qv)?;
    match delta {
        FormKind::Ordinary => Ok(w0),
        FormKind::Star => {
            delta.check_admissible(q, t)?;
            if t % 2 == 1 || one_minus_t_is_square(t, q) {
                Ok(w0)
            } else if w0 == t / 2 {
                Ok((t - 2) / 2)
            } else {
                Ok(t / 2)
            }
        }
        FormKind::Hermitian => Err(Error::BadWittIndex(
            "the Hermitian trace form is alternating, not quadratic".into(),
        )),
    }
}

/// Whether the prime-field element 1 − t is a square in GF(q).
fn one_minus_t_is_square(t: u32, q: PrimePower) -> bool {
    let p = q.p();
    let c = (1 - t as i64).rem_euclid(p as i64) as u64;
    if c == 0 || q.e().is_multiple_of(2) {
        return true;
    }
    // Euler's criterion in GF(p)
    let mut acc = 1u64;
    let mut b = c;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WittRow {
    /// w = t/2
    Half,
    /// w = (t−1)/2
    OddT,
    /// w = (t−2)/2
    HalfMinusOne,
}

fn witt_row(t: u32, w: u32) -> Result<WittRow> {
    match (t % 2, w) {
        (1, w) if w == (t - 1) / 2 => Ok(WittRow::OddT),
        (0, w) if w == t / 2 => Ok(WittRow::Half),
        (0, w) if t >= 2 && w == (t - 2) / 2 => Ok(WittRow::HalfMinusOne),
        _ => Err(Error::BadWittIndex(format!("w = {w} is not a Witt index for dimension {t}"))),
    }
}

/// Non-degenerate subspaces of a t-dimensional quadratic space over GF(q), q odd,
/// of Witt index `w`.
pub fn n_orthogonal_with_witt(t: u32, q: u64, w: u32) -> Result<KBreakdown> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    let row = witt_row(t, w)?;
    KBreakdown::from_interior(t, |k| {
        Ok(if k % 2 == 1 {
            let e = ((t * k) as i64 - (k * k) as i64 - 1) / 2;
            match row {
                WittRow::Half => {
                    pw(q, e as u64) * (pw(q, (t / 2) as u64) - 1) * gb_sq((t - 2) / 2, (k - 1) / 2, q)
                }
                WittRow::OddT => {
                    pw(q, ((t - k) * (k + 1) / 2) as u64) * gb_sq((t - 1) / 2, (k - 1) / 2, q)
                }
                WittRow::HalfMinusOne => {
                    pw(q, e as u64) * (pw(q, (t / 2) as u64) + 1) * gb_sq((t - 2) / 2, (k - 1) / 2, q)
                }
            }
        } else {
            match row {
                WittRow::OddT => {
                    pw(q, (k * (t - k + 1) / 2) as u64) * gb_sq((t - 1) / 2, k / 2, q)
                }
                _ => pw(q, (k * (t - k) / 2) as u64) * gb_sq(t / 2, k / 2, q),
            }
        })
    })
}

/// [`n_orthogonal_with_witt`] at the index given by [`witt_index_closed`].
pub fn n_orthogonal_odd_q(t: u32, q: u64) -> Result<KBreakdown> {
    n_orthogonal_with_witt(t, q, witt_index_closed(t, q)?)
}

/// Non-degenerate even-dimensional subspaces of Witt index `m_k`: the `R`
/// count for `m_k = k/2 − 1`, the `S` count for `m_k = k/2`, in a space of
/// Witt index `w`.
pub fn orth_k_by_witt_with_index(t: u32, q: u64, k: u32, m_k: u32, w: u32) -> Result<BigUint> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    if k == 0 || k % 2 == 1 || k >= t {
        return Err(Error::BadWittIndex(format!("k = {k} must be even with 2 <= k < t = {t}")));
    }
    let plus = if m_k == k / 2 {
        true
    } else if m_k + 1 == k / 2 {
        false
    } else {
        return Err(Error::BadWittIndex(format!("m_k = {m_k} must be k/2 or k/2 - 1")));
    };
    let s = |x: BigInt| if plus { x + 1 } else { x - 1 };
    let lead = pw(q, (k * (t - k) / 2) as u64);
    let v = match witt_row(t, w)? {
        WittRow::Half => {
            let num = lead
                * s(pw(q, (k / 2) as u64))
                * s(pw(q, ((t - k) / 2) as u64))
                * gb_sq(t / 2, k / 2, q);
            exact_div(&num, &(BigInt::from(2) * (pw(q, (t / 2) as u64) + 1)), "R/S count")?
        }
        WittRow::OddT => {
            let num = lead * s(pw(q, (k / 2) as u64)) * gb_sq((t - 1) / 2, k / 2, q);
            exact_div(&num, &BigInt::from(2), "R/S count")?
        }
        WittRow::HalfMinusOne => {
            // the second factor carries the opposite sign
            let other = if plus {
                pw(q, ((t - k) / 2) as u64) - 1
            } else {
                pw(q, ((t - k) / 2) as u64) + 1
            };
            let num = lead * s(pw(q, (k / 2) as u64)) * other * gb_sq(t / 2, k / 2, q);
            exact_div(&num, &(BigInt::from(2) * (pw(q, (t / 2) as u64) - 1)), "R/S count")?
        }
    };
    to_unsigned(v, "R/S count")
}

/// [`orth_k_by_witt_with_index`] at the index given by [`witt_index_closed`].
pub fn orth_k_by_witt(t: u32, q: u64, k: u32, m_k: u32) -> Result<BigUint> {
    orth_k_by_witt_with_index(t, q, k, m_k, witt_index_closed(t, q)?)
}

/// `(L_k, M_k)`: non-singular vectors of a k-dimensional quadratic space whose
/// span is, respectively is not, isometric to the anisotropic reference line.
pub fn lk_mk(k: u32, q: u64) -> Result<(BigUint, BigUint)> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenK(k));
    }
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    let h = pw(q, ((k - 1) / 2) as u64);
    let base = &h * (BigInt::from(q) - 1);
    let l = exact_div(&(&base * (&h + 1)), &BigInt::from(2), "L_k")?;
    let m = exact_div(&(&base * (&h - 1)), &BigInt::from(2), "M_k")?;
    Ok((to_unsigned(l, "L_k")?, to_unsigned(m, "M_k")?))
}

/// The two quotients asserted integral by the divisibility corollary, for
/// q odd and 1 <= μ <= λ.
pub fn divisibility_corollary(q: u64, lambda: u32, mu: u32) -> Result<[BigInt; 2]> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ(q));
    }
    if mu == 0 || mu > lambda {
        return Err(Error::InvalidArgument(format!("need 1 <= mu <= lambda, got {mu}, {lambda}")));
    }
    let g = gb_sq(lambda, mu, q);
    let a = pw(q, mu as u64);
    let b = pw(q, (lambda - mu) as u64);
    let l = pw(q, lambda as u64);
    let two = BigInt::from(2);
    if q % 4 == 3 && lambda % 2 == 1 {
        let den = &two * (&l + 1);
        Ok([
            exact_div(&((&a + 1) * (&b + 1) * &g), &den, "corollary (a), first")?,
            exact_div(&((&a - 1) * (&b - 1) * &g), &den, "corollary (a), second")?,
        ])
    } else {
        let den = &two * (&l - 1);
        Ok([
            exact_div(&((&a + 1) * (&b - 1) * &g), &den, "corollary (b), first")?,
            exact_div(&((&a - 1) * (&b + 1) * &g), &den, "corollary (b), second")?,
        ])
    }
}

/// Non-degenerate subspaces of GF(q^t) under Tr(ab), q even.
pub fn n_ordinary_even_q(t: u32, q: u64) -> Result<KBreakdown> {
    if q % 2 == 1 {
        return Err(Error::OddQ(q));
    }
    KBreakdown::from_interior(t, |k| {
        Ok(match (t % 2, k % 2) {
            (1, 0) => pw(q, (k * (t - k + 1) / 2) as u64) * gb_sq((t - 1) / 2, k / 2, q),
            (1, _) => pw(q, ((t - k) * (k + 1) / 2) as u64) * gb_sq((t - 1) / 2, (k - 1) / 2, q),
            (_, 0) => {
                let inner = (pw(q, k as u64) + q - 1) * gb_sq((t - 2) / 2, k / 2, q)
                    + (pw(q, (t - k + 1) as u64) - pw(q, (t - k) as u64) + 1)
                        * gb_sq((t - 2) / 2, (k - 2) / 2, q);
                pw(q, ((t * k - k * k - 2) / 2) as u64) * inner
            }
            _ => pw(q, ((t * k - k * k + t - 1) / 2) as u64) * gb_sq((t - 2) / 2, (k - 1) / 2, q),
        })
    })
}

/// Pairs of equal-dimensional subspaces forming a non-degenerate pair in
/// K^t ⊕ K^t, K = GF(q^d).
pub fn n_pair(t: u32, d: u32, q: u64) -> KBreakdown {
    let big_q = BigUint::from(q).pow(d);
    KBreakdown::from_interior(t, |k| {
        let v = big_q.pow(k * (t - k)) * gauss_binom(t, k, &big_q);
        Ok(big(&v))
    })
    .expect("pair counts involve no division")
}

/// Non-trivial isotropic elements of a rank-r paired module over GF(q^d).
pub fn i_r_count(r: u32, d: u32, q: u64) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let big_q = BigUint::from(q).pow(d);
    Ok((big_q.pow(r - 1) - 1u32) * (big_q.pow(r) - 1u32))
}

/// Hyperbolic pairs of a rank-r paired module over GF(q^d).
pub fn h_r_count(r: u32, d: u32, q: u64) -> Result<BigUint> {
    let i = i_r_count(r, d, q)?;
    Ok(BigUint::from(q).pow(d * (2 * r - 3)) * i)
}

/// Which closed form supplies the factor R for the indices in 𝔦.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bullet {
    /// δ = γ, or δ = ∗ with q even: alternating.
    Symplectic,
    /// δ ∈ {∗, 0}, q and t odd.
    OrthogonalOddT,
    /// δ ∈ {∗, 0}, q odd, Witt index (t−2)/2.
    OrthogonalDefective,
    /// δ ∈ {∗, 0}, q odd, Witt index t/2.
    OrthogonalHyperbolic,
    /// δ = 0, q even, t odd.
    OrdinaryEvenQOddT,
    /// δ = 0, q even, t even.
    OrdinaryEvenQEvenT,
}

pub fn r_bullet(delta: FormKind, t: u32, q: PrimePower) -> Result<Bullet> {
    delta.check_admissible(q, t)?;
    let qv = q.value();
    let even_q = q.is_even();
    match delta {
        FormKind::Hermitian => Ok(Bullet::Symplectic),
        FormKind::Star if even_q => Ok(Bullet::Symplectic),
        FormKind::Ordinary if even_q => Ok(if t % 2 == 1 {
            Bullet::OrdinaryEvenQOddT
        } else {
            Bullet::OrdinaryEvenQEvenT
        }),
        FormKind::Star | FormKind::Ordinary => {
            let w = witt_index_for_form(delta, t, q)?;
            match witt_row(t, w)? {
                WittRow::OddT => Ok(Bullet::OrthogonalOddT),
                WittRow::HalfMinusOne => Ok(Bullet::OrthogonalDefective),
                WittRow::Half => Ok(Bullet::OrthogonalHyperbolic),
            }
        }
    }
    .map_err(|e: Error| match e {
        Error::BadWittIndex(_) => {
            Error::NoBulletMatches { delta: delta.name().into(), t, q: qv }
        }
        other => other,
    })
}

/// The factor R contributed by each index in 𝔦.
pub fn r_factor(delta: FormKind, t: u32, q: PrimePower) -> Result<KBreakdown> {
    let qv = q.value();
    match r_bullet(delta, t, q)? {
        Bullet::Symplectic => n_symplectic(t, qv),
        Bullet::OrdinaryEvenQOddT | Bullet::OrdinaryEvenQEvenT => n_ordinary_even_q(t, qv),
        Bullet::OrthogonalOddT | Bullet::OrthogonalDefective | Bullet::OrthogonalHyperbolic => {
            n_orthogonal_with_witt(t, qv, witt_index_for_form(delta, t, q)?)
        }
    }
}

/// The number N of δ-complementary-dual cyclic codes.
pub fn total_count(q: PrimePower, t: u32, n: u64, delta: FormKind) -> Result<BigUint> {
    delta.check_admissible(q, t)?;
    let table = cosets(q, n, t)?;
    let mu = classify(&table);
    let r = r_factor(delta, t, q)?;
    let mut total = r.total.pow(table.n.gcd(&2) as u32);
    for &i in &mu.set_f {
        total *= n_unitary(t, table.sizes[i], q.value())?.total;
    }
    for &h in &mu.set_m {
        total *= n_pair(t, table.sizes[h], q.value()).total;
    }
    Ok(total)
}
