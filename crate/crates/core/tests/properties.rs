#![allow(clippy::eq_op)]

use grifcalc::cli::cache::Cache;
use grifcalc::fermat::{character_monomial, hodge_type, monomial_character};
use grifcalc::hodge::{ci_prim_hodge, euler_characteristic, hypersurface_prim_hodge, CIData};
use grifcalc::jacobian::{fermat_hilbert_series, fermat_polynomial, HomogeneousPolynomial, HypersurfaceRing, LinearMap, Monomial, RankMode, RankKernel, KernelBasis};
use grifcalc::kermu::{mu_apply, rank_one_generators, round_trip_holds, standardize, verify_certificate};
use grifcalc::nl::{delta_nu, independence_rank, q_tensor_r, symbolic_triple};
use grifcalc::scalar::{assignment, Rational};
use grifcalc::tensor::TensorSum;
use grifcalc::Scalar;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn term_scalar(c: i64, e: [u32; 3]) -> Scalar {
    ["a", "b", "h"]
        .iter()
        .zip(e)
        .fold(Scalar::from_int(c), |acc, (s, k)| &acc * &Scalar::sym(s).pow(k))
}

fn poly_scalar(terms: &[(i64, [u32; 3])]) -> Scalar {
    terms.iter().fold(Scalar::zero(), |acc, (c, e)| &acc + &term_scalar(*c, *e))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let term = (-5i64..=5, [0u32..=1, 0u32..=1, 0u32..=2]);
    (prop::collection::vec(term.clone(), 1..4), prop::collection::vec(term, 1..3)).prop_filter_map(
        "zero denominator",
        |(n, d)| {
            let den = poly_scalar(&d);
            poly_scalar(&n).checked_div(&den).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &Scalar::zero(), x.clone());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!((&y * &x).checked_div(&x).unwrap(), y.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_text_round_trips(x in scalar()) {
        let back: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn specialization_is_a_homomorphism(
        x in scalar(),
        y in scalar(),
        vals in [(-9i64..=9), (-9i64..=9), (-9i64..=9)],
    ) {
        let asg = assignment([
            ("a", Rational::from_integer(vals[0].into())),
            ("b", Rational::from_integer(vals[1].into())),
            ("h", Rational::from_integer(vals[2].into())),
        ]);
        if let (Ok(sx), Ok(sy)) = (x.specialize(&asg), y.specialize(&asg)) {
            // A removable singularity of the sum is fine; a defined value must agree.
            if let Ok(s) = (&x + &y).specialize(&asg) {
                prop_assert_eq!(s, &sx + &sy);
            }
            if let Ok(p) = (&x * &y).specialize(&asg) {
                prop_assert_eq!(p, &sx * &sy);
            }
        }
    }
}

fn random_poly(nvars: usize, degree: u32, coeffs: &[i64]) -> HomogeneousPolynomial {
    let monos = Monomial::all_of_degree(nvars, degree);
    HomogeneousPolynomial::from_terms(
        nvars,
        degree,
        monos.into_iter().zip(coeffs.iter().cycle()).map(|(m, c)| (m, Scalar::from_int(*c))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fermat_fast_path_matches_generic(
        d in 2u32..=4,
        n in 2usize..=4,
        k in 0u32..=8,
        coeffs in prop::collection::vec(-3i64..=3, 1..12),
    ) {
        let fast = HypersurfaceRing::fermat(d, n);
        let slow = HypersurfaceRing::new_generic(fermat_polynomial(d, n)).unwrap();
        let k = k.min(fast.socle_degree().max(0) as u32 + 1);
        let (bf, bs) = (fast.quotient_basis(k), slow.quotient_basis(k));
        prop_assert_eq!(bf.monomials(), bs.monomials());
        let p = random_poly(n, k, &coeffs);
        prop_assert_eq!(fast.normal_form(&p).unwrap(), slow.normal_form(&p).unwrap());
    }

    #[test]
    fn normal_form_is_multiplicative(
        ka in 1u32..=3,
        kb in 1u32..=3,
        ca in prop::collection::vec(-3i64..=3, 1..8),
        cb in prop::collection::vec(-3i64..=3, 1..8),
    ) {
        let ring = HypersurfaceRing::new(
            HomogeneousPolynomial::parse("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2", 4).unwrap(),
        ).unwrap();
        let (p, q) = (random_poly(4, ka, &ca), random_poly(4, kb, &cb));
        let direct = ring.normal_form(&p.mul(&q).unwrap()).unwrap();
        let stepwise = ring
            .normal_form(&ring.normal_form(&p).unwrap().mul(&ring.normal_form(&q).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(&direct, &stepwise);
        prop_assert_eq!(ring.normal_form(&direct).unwrap(), direct);
    }

    #[test]
    fn gorenstein_duality(d in 2u32..=5, n in 1usize..=9) {
        let h = fermat_hilbert_series(d, n);
        prop_assert!(h.iter().eq(h.iter().rev()));
        prop_assert_eq!(h.len() as i64 - 1, n as i64 * (d as i64 - 2));
        if d == 3 {
            let ring = HypersurfaceRing::fermat(3, n);
            let s = ring.socle_degree() as u32;
            for k in 0..=s {
                prop_assert_eq!(ring.quotient_basis(k).dim(), ring.quotient_basis(s - k).dim());
            }
        }
    }

    #[test]
    fn modp_rank_never_exceeds_exact(
        rows in 1usize..=7,
        cols in 1usize..=7,
        entries in prop::collection::vec(-3i64..=3, 49),
        prime in prop::sample::select(vec![2u64, 3, 5, 7, 2_147_483_647]),
    ) {
        let dense: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| (0..cols).map(|j| Scalar::from_int(entries[i * 7 + j])).collect())
            .collect();
        let m = LinearMap::from_dense(&dense);
        let RankKernel { rank, kernel } = m.rank_kernel(&RankMode::Exact).unwrap();
        let modp = m.rank(&RankMode::ModP { prime, specialization: None }).unwrap();
        prop_assert!(modp <= rank);
        prop_assert_eq!(rank + kernel.len(), cols);
        let KernelBasis::Exact(vs) = kernel else { unreachable!() };
        for v in vs {
            let mut dense_v = vec![Scalar::zero(); cols];
            for (j, x) in v {
                dense_v[j] = x;
            }
            prop_assert!(m.apply(&dense_v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn hodge_methods_agree(d in 2u32..=6, m in 1usize..=8) {
        let ci = CIData::new(vec![d], m).unwrap();
        let a = hypersurface_prim_hodge(d, m);
        prop_assert_eq!(&a, &ci_prim_hodge(&ci));
        prop_assert_eq!(BigInt::from(a.euler_with_hyperplane_classes()), euler_characteristic(&ci));
    }

    #[test]
    fn complete_intersections_are_consistent(
        degrees in prop::collection::vec(2u32..=4, 1..=3),
        m in 1usize..=5,
    ) {
        let ci = CIData::new(degrees, m).unwrap();
        let h = ci_prim_hodge(&ci);
        prop_assert!(h.is_symmetric());
        prop_assert_eq!(BigInt::from(h.euler_with_hyperplane_classes()), euler_characteristic(&ci));
    }

    #[test]
    fn characters_and_monomials_correspond(
        d in 3u32..=5,
        exps in prop::collection::vec(0u32..=3, 3..=6),
    ) {
        let exps: Vec<u32> = exps.into_iter().map(|e| e % (d - 1)).collect();
        let n = exps.len();
        let deg: u32 = exps.iter().sum();
        let m = Monomial::new(exps);
        let c = monomial_character(&m, d).unwrap();
        prop_assert_eq!(character_monomial(&c).unwrap(), m);
        if (deg as usize + n).is_multiple_of(d as usize) {
            let (p, q) = hodge_type(&c).unwrap();
            prop_assert_eq!(p + q, n - 2);
            for member in &c.orbit().members {
                prop_assert!(member.is_nonvanishing());
            }
        }
    }

    #[test]
    fn independence_detects_exactly_the_duplicates(
        a in prop::collection::btree_set(1i64..=40, 1..=6),
        dup in 0usize..6,
    ) {
        let mut pairs: Vec<(i64, i64)> = a.iter().map(|&a| (a, 1)).collect();
        let n = pairs.len();
        prop_assert_eq!(independence_rank(&pairs).unwrap().rank, n);
        pairs.push(pairs[dup % n]);
        let r = independence_rank(&pairs).unwrap();
        prop_assert_eq!(r.rank, n);
        prop_assert_eq!(r.relations.len(), 1);
    }
}

fn monomial_tensor() -> impl Strategy<Value = (i64, Vec<usize>, Vec<usize>)> {
    (
        -4i64..=4,
        prop::collection::vec(0usize..7, 3),
        prop::collection::vec(0usize..7, 3),
    )
}

fn tensor_from(parts: &[(i64, Vec<usize>, Vec<usize>)]) -> TensorSum {
    let mut w = TensorSum::new();
    for (c, l, r) in parts {
        let mono = |idx: &[usize]| {
            let mut e = vec![0u32; 7];
            for &i in idx {
                e[i] += 1;
            }
            Monomial::new(e)
        };
        w.extend(TensorSum::monomial(Scalar::from_int(*c), mono(l), mono(r)));
    }
    w
}

fn generators7() -> &'static [grifcalc::kermu::RankOneGenerator] {
    static G: OnceLock<Vec<grifcalc::kermu::RankOneGenerator>> = OnceLock::new();
    G.get_or_init(|| rank_one_generators(7).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standardize_round_trips(parts in prop::collection::vec(monomial_tensor(), 1..6)) {
        let ring = HypersurfaceRing::fermat(3, 7);
        let w = tensor_from(&parts);
        let s = standardize(&ring, &w).unwrap();
        prop_assert!(verify_certificate(&ring, &s.certificate));
        prop_assert!(round_trip_holds(&ring, &w, &s).unwrap());
        for st in s.standard.keys() {
            prop_assert!(st.indices.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn kernel_elements_standardize_to_zero(
        picks in prop::collection::vec((0usize..100_000, -3i64..=3), 1..6),
    ) {
        let ring = HypersurfaceRing::fermat(3, 7);
        let gens = generators7();
        let mut w = TensorSum::new();
        for (i, c) in picks {
            let g = &gens[i % gens.len()];
            w.push(Scalar::from_int(c), g.left(), g.right());
        }
        prop_assert!(mu_apply(&ring, &w).unwrap().is_zero());
        let s = standardize(&ring, &w).unwrap();
        prop_assert!(s.standard.is_empty());
        prop_assert!(round_trip_holds(&ring, &w, &s).unwrap());
    }

    #[test]
    fn cache_round_trips(
        payload in prop::collection::btree_map("[a-z]{1,6}", -1000i64..1000, 0..8),
        k in 0u32..10,
    ) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let params = serde_json::json!({ "k": k });
        let payload = serde_json::to_value(&payload).unwrap();
        cache.put("prop", &params, payload.clone()).unwrap();
        prop_assert_eq!(cache.get("prop", &params).unwrap().payload, payload);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// δν is additive and ℚ-linear over summands.
    #[test]
    fn delta_nu_is_linear(c1 in -3i64..=3, c2 in -3i64..=3) {
        let t = symbolic_triple();
        let w = q_tensor_r();
        let w2 = w.swapped();
        let mut sum = w.scaled(&Scalar::from_int(c1));
        sum.extend(w2.scaled(&Scalar::from_int(c2)));
        let lhs = delta_nu(&t, &sum).unwrap();
        let rhs = &(&Scalar::from_int(c1) * &delta_nu(&t, &w).unwrap())
            + &(&Scalar::from_int(c2) * &delta_nu(&t, &w2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
