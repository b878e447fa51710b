//! Structural checks of the code-level oracle and of the polynomial form.

use num_bigint::BigUint;
use num_traits::One;

use lcd_census::census::{
    census, factor_xn_minus_1, poly_form, trace_form_gram, CensusRequest, CyclicCodeEnum,
};
use lcd_census::counting::{total_count, FormKind};
use lcd_census::gf_tower::{Elem, Extension};
use lcd_census::linalg::{self, all_vectors};
use lcd_census::{PrimePower, DEFAULT_WORK_BOUND};

fn pp(q: u64) -> PrimePower {
    PrimePower::from_value(q).unwrap()
}

fn grid() -> Vec<(FormKind, u64, u32, Vec<u64>)> {
    use FormKind::*;
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

#[test]
fn gram_is_invertible_on_the_grid() {
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let g = trace_form_gram(pp(q), t, n as usize, delta).unwrap();
            let f = Extension::new(pp(q), t).unwrap().base().clone();
            assert_eq!(linalg::rank(&f, &g), g.len(), "{delta} q={q} t={t} n={n}");
        }
    }
}

#[test]
fn gram_shape_by_form() {
    for q in [2u64, 4] {
        let g = trace_form_gram(pp(q), 2, 2, FormKind::Star).unwrap();
        assert!((0..g.len()).all(|i| g[i][i] == 0));
    }
    for q in [2u64, 3, 5] {
        let g = trace_form_gram(pp(q), 3, 2, FormKind::Ordinary).unwrap();
        assert_eq!(g, linalg::transpose(&g));
        for j in 0..g.len() {
            for i in 0..g.len() {
                if i / 3 != j / 3 {
                    assert_eq!(g[i][j], 0);
                }
            }
        }
    }
    assert!(trace_form_gram(pp(3), 4, 1, FormKind::Star).is_err());
}

#[test]
fn factor_roots_and_degrees() {
    for (q, n) in [(2u64, 7u64), (3, 8), (4, 5), (5, 12), (2, 15)] {
        let ft = factor_xn_minus_1(pp(q), n).unwrap();
        let table = lcd_census::cyclotomic::cosets(pp(q), n, 1).unwrap();
        let big = &ft.splitting;
        let small = Extension::new(pp(q), ft.m).unwrap();
        for (i, f) in ft.factors.iter().enumerate() {
            assert_eq!(f.len() - 1, table.sizes[i] as usize);
            // evaluate f_i at η^{ℓ_i} inside the splitting field
            let emb = lcd_census::gf_tower::Embedding::new(small.base().clone(), std::sync::Arc::new(big.clone())).unwrap();
            let lifted: Vec<Elem> = f.iter().map(|&c| emb.map(c)).collect();
            let root = big.pow(ft.eta, table.reps[i] as u128);
            assert_eq!(big.eval(&lifted, root), 0, "q={q} n={n} i={i}");
        }
    }
}

#[test]
fn j0_is_the_constant_multiples_of_the_all_ones_word() {
    for (delta, q, t, ns) in grid() {
        for n in ns.into_iter().filter(|n| n % 2 == 1) {
            let e = CyclicCodeEnum::new(pp(q), t, n, delta, DEFAULT_WORK_BOUND).unwrap();
            let ext = e.extension();
            let f = ext.base();
            let mult: Vec<_> = ext
                .basis()
                .iter()
                .map(|&b| e.coords(&vec![b; n as usize]))
                .collect();
            let j0 = e.j_basis(0);
            assert!(linalg::spans_contain(f, j0, &mult));
            assert!(linalg::spans_contain(f, &mult, j0));
        }
    }
}

#[test]
fn k_components_have_the_right_size() {
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let e = CyclicCodeEnum::new(pp(q), t, n, delta, DEFAULT_WORK_BOUND).unwrap();
            let f = e.extension().base();
            let mut total = 0;
            for (i, &d) in e.cosets().sizes.iter().enumerate() {
                assert_eq!(e.k_order(i) as u64, q.pow(d));
                assert_eq!(linalg::rank(f, e.j_basis(i)), (t * d) as usize);
                total += (t * d) as usize;
            }
            assert_eq!(total, t as usize * n as usize);
        }
    }
}

#[test]
fn zero_and_full_codes_have_the_obvious_duals() {
    let e = CyclicCodeEnum::new(pp(2), 2, 3, FormKind::Ordinary, DEFAULT_WORK_BOUND).unwrap();
    let mut seen = 0;
    e.for_each_code(|code| {
        if code.dim() == 0 {
            assert_eq!(code.dual.len(), 6);
            seen += 1;
        }
        if code.dim() == 6 {
            assert!(code.dual.is_empty());
            seen += 1;
        }
    });
    assert_eq!(seen, 2);
}

fn rev(a: &[Elem]) -> Vec<Elem> {
    let n = a.len();
    (0..n).map(|i| a[(n - i) % n]).collect()
}

#[test]
fn poly_form_reflexive_and_hermitian_on_r3() {
    let ext = Extension::new(pp(2), 2).unwrap();
    let words: Vec<Vec<Elem>> = all_vectors(4, 3).collect();
    let zero = vec![0; 3];
    for delta in FormKind::ALL {
        for a in &words {
            assert_eq!(poly_form(&ext, a, &zero, delta).unwrap(), zero);
            for b in &words {
                let ab = poly_form(&ext, a, b, delta).unwrap();
                let ba = poly_form(&ext, b, a, delta).unwrap();
                assert_eq!(ab == zero, ba == zero, "{delta} {a:?} {b:?}");
                if delta != FormKind::Hermitian {
                    assert_eq!(ba, rev(&ab));
                }
            }
        }
    }
}

#[test]
fn annihilator_dual_matches_gram_dual() {
    for delta in FormKind::ALL {
        let e = CyclicCodeEnum::new(pp(2), 2, 3, delta, DEFAULT_WORK_BOUND).unwrap();
        let ext = e.extension();
        let f = ext.base();
        let words: Vec<_> = all_vectors(2, 6).collect();
        let zero = vec![0; 3];
        e.for_each_code(|code| {
            let gens: Vec<_> = code.basis.iter().map(|r| e.from_coords(r)).collect();
            let ann: Vec<_> = words
                .iter()
                .filter(|v| {
                    let pv = e.from_coords(v);
                    gens.iter().all(|c| poly_form(ext, c, &pv, delta).unwrap() == zero)
                })
                .cloned()
                .collect();
            assert_eq!(ann.len(), 1 << code.dual.len(), "{delta}");
            assert!(linalg::spans_contain(f, &code.dual, &ann));
        });
    }
}

#[test]
fn report_composition() {
    for (delta, q, t, ns) in grid() {
        for n in ns {
            let r = census(&CensusRequest::new(q, t, n, delta).unwrap()).unwrap();
            assert_eq!(r.total, r.product());
            assert_eq!(r.total, total_count(pp(q), t, n, delta).unwrap());
            assert!(r.r_factor >= BigUint::from(2u32));
            for factor in &r.factors {
                assert!(factor.value >= BigUint::from(2u32));
                assert_eq!(factor.per_k.iter().sum::<BigUint>(), factor.value);
                assert!(factor.per_k.first().unwrap().is_one() && factor.per_k.last().unwrap().is_one());
            }
        }
    }
}

#[test]
fn census_documented_values() {
    let cases = [
        (2u64, 2u32, 3u64, FormKind::Ordinary, 16u32),
        (2, 2, 7, FormKind::Star, 148),
        (2, 2, 3, FormKind::Hermitian, 8),
        (3, 2, 1, FormKind::Ordinary, 4),
    ];
    for (q, t, n, delta, want) in cases {
        let r = census(&CensusRequest::new(q, t, n, delta).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(want), "{delta} q={q} t={t} n={n}");
    }
    let r = census(&CensusRequest::new(2, 2, 7, FormKind::Star).unwrap()).unwrap();
    assert_eq!(r.r_factor, BigUint::from(2u32));
    assert_eq!(r.factors.len(), 1);
    assert_eq!(r.factors[0].value, BigUint::from(74u32));
}

#[test]
fn requests_are_validated() {
    use lcd_census::Error;
    assert!(matches!(CensusRequest::new(2, 2, 4, FormKind::Ordinary), Err(Error::NotCoprime { .. })));
    assert!(matches!(CensusRequest::new(2, 3, 3, FormKind::Star), Err(Error::FormInadmissible(_))));
    assert!(matches!(CensusRequest::new(2, 3, 3, FormKind::Hermitian), Err(Error::FormInadmissible(_))));
    assert!(matches!(CensusRequest::new(6, 2, 1, FormKind::Ordinary), Err(Error::NotPrimePower(6))));
}
