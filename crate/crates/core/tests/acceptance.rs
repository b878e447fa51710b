//! Acceptance run: one PASS/FAIL line per criterion, all comparisons exact.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};

use lcd_census::census::{
    census, dual_dimension_check, enumerate_lcd_count, enumerate_lcd_count_shift_invariant,
    CensusRequest,
};
use lcd_census::counting::{
    divisibility_corollary, gauss_binom, h_r_count, i_r_count, lk_mk, n_ordinary_even_q, n_pair,
    n_symplectic, n_unitary, n_orthogonal_odd_q, r_factor, witt_index_closed,
    witt_index_for_form, FormKind, KBreakdown,
};
use lcd_census::cyclotomic::{classify, cosets};
use lcd_census::formed_oracle::{
    count_isometric_nonsingular, count_nondeg_module_pairs, count_nondeg_subspaces,
    count_paired_isotropic_hyperbolic, witt_index_bruteforce, FormedSpace, PairedModuleSpace,
};
use lcd_census::gf_tower::FieldCtx;
use lcd_census::linalg::all_vectors;
use lcd_census::{PrimePower, DEFAULT_WORK_BOUND as BOUND};

use FormKind::{Hermitian, Ordinary, Star};

fn pp(q: u64) -> PrimePower {
    PrimePower::from_value(q).unwrap()
}

fn field_of(q: u64) -> Arc<FieldCtx> {
    let q = pp(q);
    Arc::new(FieldCtx::new(q.p(), q.e()).unwrap())
}

/// Collects mismatches for one criterion.
#[derive(Default)]
struct Check {
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: String, got: T, want: T) {
        self.cases += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn ok(&mut self, what: String, cond: bool) {
        self.cases += 1;
        if !cond {
            self.failures.push(what);
        }
    }

    fn err(&mut self, what: String, e: impl std::fmt::Display) {
        self.cases += 1;
        self.failures.push(format!("{what}: {e}"));
    }
}

fn grid() -> Vec<(FormKind, u64, u32, Vec<u64>)> {
    vec![
        (Ordinary, 2, 2, vec![1, 3, 5, 7]),
        (Ordinary, 3, 2, vec![1, 2, 4, 5]),
        (Ordinary, 2, 3, vec![1, 3]),
        (Ordinary, 3, 3, vec![1, 2]),
        (Star, 2, 2, vec![1, 3, 5, 7]),
        (Star, 3, 2, vec![1, 2, 4]),
        (Star, 3, 3, vec![1, 2]),
        (Hermitian, 2, 2, vec![1, 3, 5, 7]),
        (Hermitian, 3, 2, vec![1, 2, 4]),
    ]
}

fn criterion_1(c: &mut Check) {
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let label = format!("{delta} q={q} t={t} n={n}");
            let formula = CensusRequest::new(q, t, n, delta).and_then(|r| census(&r));
            let oracle = enumerate_lcd_count(pp(q), t, n, delta, BOUND);
            match (formula, oracle) {
                (Ok(f), Ok(o)) => c.eq(label, f.total, o),
                (Err(e), _) | (_, Err(e)) => c.err(label, e),
            }
        }
    }
}

fn compare_per_k(c: &mut Check, label: &str, space: &FormedSpace, closed: &KBreakdown) {
    for (k, want) in closed.per_k.iter().enumerate() {
        match count_nondeg_subspaces(space, k, BOUND) {
            Ok(got) => c.eq(format!("{label} k={k}"), got, want.clone()),
            Err(e) => c.err(format!("{label} k={k}"), e),
        }
    }
}

fn criterion_2(c: &mut Check) {
    for q in [2u64, 3] {
        for t in 1..=4u32 {
            let space = FormedSpace::unitary(field_of(q * q), t as usize).unwrap();
            compare_per_k(c, &format!("unitary q={q} d=2 t={t}"), &space, &n_unitary(t, 2, q).unwrap());
        }
    }
    for q in [2u64, 3, 4] {
        for t in [2u32, 4] {
            let space = FormedSpace::symplectic(field_of(q), t as usize).unwrap();
            compare_per_k(c, &format!("symplectic q={q} t={t}"), &space, &n_symplectic(t, q).unwrap());
        }
    }
    for q in [3u64, 5, 7] {
        for t in [2u32, 3, 4] {
            let space = FormedSpace::trace_form(pp(q), t, Ordinary).unwrap();
            let closed = n_orthogonal_odd_q(t, q).unwrap();
            compare_per_k(c, &format!("orthogonal Tr(ab) q={q} t={t}"), &space, &closed);
        }
    }
    for q in [2u64, 4] {
        for t in [2u32, 3, 4] {
            let space = FormedSpace::trace_form(pp(q), t, Ordinary).unwrap();
            let closed = n_ordinary_even_q(t, q).unwrap();
            compare_per_k(c, &format!("ordinary even q={q} t={t}"), &space, &closed);
        }
    }
    // the R factor for every admissible δ, against its own trace-form space
    for delta in FormKind::ALL {
        for q in [2u64, 3, 4, 5, 7] {
            for t in 1..=4u32 {
                if !delta.is_admissible(pp(q), t) {
                    continue;
                }
                let space = FormedSpace::trace_form(pp(q), t, delta).unwrap();
                let closed = r_factor(delta, t, pp(q)).unwrap();
                compare_per_k(c, &format!("R factor {delta} q={q} t={t}"), &space, &closed);
            }
        }
    }
}

fn criterion_3(c: &mut Check) {
    for q in [2u64, 3] {
        for d in [1u32, 2] {
            for t in [2usize, 3] {
                let space = PairedModuleSpace::identity(pp(q), d, t).unwrap();
                let closed = n_pair(t as u32, d, q);
                for (k, want) in closed.per_k.iter().enumerate() {
                    let label = format!("pairs q={q} d={d} t={t} k={k}");
                    match count_nondeg_module_pairs(&space, k, BOUND) {
                        Ok(got) => c.eq(label, got, want.clone()),
                        Err(e) => c.err(label, e),
                    }
                }
                let label = format!("isotropic/hyperbolic q={q} d={d} r={t}");
                match count_paired_isotropic_hyperbolic(&space, BOUND) {
                    Ok(got) => {
                        let r = t as u32;
                        c.eq(format!("{label} i_r"), got.nontrivial, i_r_count(r, d, q).unwrap());
                        c.eq(format!("{label} h_r"), got.hyperbolic, h_r_count(r, d, q).unwrap());
                        let qd = BigUint::from(q).pow(d * r);
                        c.eq(format!("{label} trivial"), got.trivial, (qd - 1u32) * 2u32);
                    }
                    Err(e) => c.err(label, e),
                }
            }
        }
    }
}

fn criterion_4(c: &mut Check) {
    for q in [3u64, 5, 7] {
        for t in [2u32, 3, 4] {
            let space = FormedSpace::trace_form(pp(q), t, Ordinary).unwrap();
            let label = format!("Tr(ab) q={q} t={t}");
            match witt_index_bruteforce(&space, BOUND) {
                Ok(w) => c.eq(label, w as u32, witt_index_closed(t, q).unwrap()),
                Err(e) => c.err(label, e),
            }
            if Star.is_admissible(pp(q), t) {
                let space = FormedSpace::trace_form(pp(q), t, Star).unwrap();
                let label = format!("star form q={q} t={t}");
                match witt_index_bruteforce(&space, BOUND) {
                    Ok(w) => c.eq(label, w as u32, witt_index_for_form(Star, t, pp(q)).unwrap()),
                    Err(e) => c.err(label, e),
                }
            }
        }
    }
}

fn criterion_5(c: &mut Check) {
    let anchors = [
        (2u64, 2u32, 1u64, Ordinary, 4u32),
        (2, 2, 1, Star, 2),
        (2, 2, 1, Hermitian, 2),
        (2, 3, 1, Ordinary, 10),
        (2, 2, 7, Ordinary, 296),
    ];
    for (q, t, n, delta, want) in anchors {
        let label = format!("{delta} q={q} t={t} n={n}");
        let want = BigUint::from(want);
        match CensusRequest::new(q, t, n, delta).and_then(|r| census(&r)) {
            Ok(r) => c.eq(format!("{label} formula"), r.total, want.clone()),
            Err(e) => c.err(format!("{label} formula"), e),
        }
        match enumerate_lcd_count(pp(q), t, n, delta, BOUND) {
            Ok(o) => c.eq(format!("{label} oracle"), o, want),
            Err(e) => c.err(format!("{label} oracle"), e),
        }
    }
}

fn criterion_6(c: &mut Check) {
    // Gaussian binomials
    for q in [2u64, 3, 4, 5, 7, 9] {
        let qb = BigUint::from(q);
        for a in 0..=8u32 {
            for b in 0..=a {
                c.eq(format!("[{a},{b}]_{q} symmetry"), gauss_binom(a, b, &qb), gauss_binom(a, a - b, &qb));
                if a > 0 && b > 0 && b < a {
                    let pascal = gauss_binom(a - 1, b - 1, &qb) + qb.pow(b) * gauss_binom(a - 1, b, &qb);
                    c.eq(format!("[{a},{b}]_{q} Pascal"), gauss_binom(a, b, &qb), pascal);
                }
            }
        }
    }
    // exact divisions never fire on the grid
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let r = CensusRequest::new(q, t, n, delta).and_then(|r| census(&r));
            c.ok(format!("census {delta} q={q} t={t} n={n} divides exactly"), r.is_ok());
        }
    }
    for q in [3u64, 5, 7, 9] {
        for t in 1..=8u32 {
            for d in [2u32, 4, 6] {
                c.ok(format!("unitary t={t} d={d} q={q}"), n_unitary(t, d, q).is_ok());
            }
            c.ok(format!("orthogonal t={t} q={q}"), n_orthogonal_odd_q(t, q).is_ok());
        }
    }
    for q in [2u64, 4, 8] {
        for t in 1..=8u32 {
            c.ok(format!("ordinary even q={q} t={t}"), n_ordinary_even_q(t, q).is_ok());
        }
    }
    // divisibility corollary
    for q in [3u64, 5, 7] {
        for lambda in 1..=4u32 {
            for mu in 1..=lambda {
                match divisibility_corollary(q, lambda, mu) {
                    Ok(v) => c.ok(
                        format!("corollary q={q} λ={lambda} μ={mu} positive"),
                        v.iter().all(|x| *x >= BigInt::from(0)),
                    ),
                    Err(e) => c.err(format!("corollary q={q} λ={lambda} μ={mu}"), e),
                }
            }
        }
    }
    // L_k and M_k
    for q in [3u64, 5] {
        let space = FormedSpace::new(field_of(q), identity(3), lcd_census::formed_oracle::Flavor::SymmetricBilinear)
            .unwrap();
        let (l, m) = lk_mk(3, q).unwrap();
        c.eq(format!("L_3 + M_3 q={q}"), &l + &m, BigUint::from(q.pow(3) - q.pow(2)));
        let f = space.field().clone();
        for r in all_vectors(f.order(), 3).skip(1) {
            if space.form(&r, &r) == 0 {
                continue;
            }
            let got = count_isometric_nonsingular(&space, &r, BOUND).unwrap();
            let perp = space.perp(std::slice::from_ref(&r));
            let perp_space = FormedSpace::new(
                f.clone(),
                space.restricted_gram(&perp),
                lcd_census::formed_oracle::Flavor::SymmetricBilinear,
            )
            .unwrap();
            let hyperbolic_perp = witt_index_bruteforce(&perp_space, BOUND).unwrap() == 1;
            let want = if hyperbolic_perp { (l.clone(), m.clone()) } else { (m.clone(), l.clone()) };
            c.eq(format!("(L, M) q={q} r={r:?}"), got, want);
        }
    }
    // dual dimensions
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let label = format!("dual dimensions {delta} q={q} t={t} n={n}");
            match dual_dimension_check(pp(q), t, n, delta, BOUND) {
                Ok(ok) => c.ok(label, ok),
                Err(e) => c.err(label, e),
            }
        }
    }
    // cosets and μ
    for q in (2u64..=9).filter(|&q| PrimePower::from_value(q).is_ok()) {
        for n in (1u64..=64).filter(|n| n % pp(q).p() != 0) {
            let table = cosets(pp(q), n, 2).unwrap();
            let mut all: Vec<u64> = table.cosets.concat();
            all.sort_unstable();
            c.ok(format!("cosets partition q={q} n={n}"), all == (0..n).collect::<Vec<_>>());
            let mu = classify(&table);
            c.ok(
                format!("μ involution q={q} n={n}"),
                (0..table.s()).all(|i| mu.mu[mu.mu[i]] == i),
            );
            c.ok(
                format!("μ maps -C_i q={q} n={n}"),
                (0..table.s()).all(|i| table.index_of(n - table.reps[i] % n) == mu.mu[i]),
            );
            c.ok(
                format!("even d on 𝔉 q={q} n={n}"),
                mu.set_f.iter().all(|&i| table.sizes[i].is_multiple_of(2)),
            );
        }
    }
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

fn criterion_7(c: &mut Check) {
    for n in [1u64, 3] {
        for delta in FormKind::ALL {
            let label = format!("shift-invariant {delta} q=2 t=2 n={n}");
            let a = enumerate_lcd_count_shift_invariant(pp(2), 2, n, delta, BOUND);
            let b = enumerate_lcd_count(pp(2), 2, n, delta, BOUND);
            match (a, b) {
                (Ok(a), Ok(b)) => c.eq(label, a, b),
                (Err(e), _) | (_, Err(e)) => c.err(label, e),
            }
        }
    }
}

type Criterion = (&'static str, fn(&mut Check));

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("census total equals the code oracle on the grid", criterion_1),
        ("per-dimension counts equal formed-space enumeration", criterion_2),
        ("pair, isotropic and hyperbolic counts equal module enumeration", criterion_3),
        ("Witt index equals brute force", criterion_4),
        ("anchor values from both paths", criterion_5),
        ("algebraic identities", criterion_6),
        ("shift-invariant enumeration agrees", criterion_7),
    ];
    let mut all_pass = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut check = Check::default();
        run(&mut check);
        let secs = start.elapsed().as_secs_f64();
        if check.failures.is_empty() {
            println!("criterion {}: PASS  {name} ({} checks, {secs:.1}s)", i + 1, check.cases);
        } else {
            all_pass = false;
            println!(
                "criterion {}: FAIL  {name} ({} of {} checks failed, {secs:.1}s)",
                i + 1,
                check.failures.len(),
                check.cases
            );
            for f in &check.failures {
                println!("    {f}");
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
