use std::sync::OnceLock;

use proptest::prelude::*;

use fracdec::bounds::{min_info_check, radius_optimal};
use fracdec::codeword::{ArrayCodeword, ErrorPattern};
use fracdec::combinatorics::Combinations;
use fracdec::fields::{ExtElem, ExtField, Field, PrimeField};
use fracdec::frs::{FrsConfig, FrsParams};
use fracdec::poly::Poly;
use fracdec::rational::{parse_rational, to_fraction_string, Rational};
use fracdec::rs::RsCode;
use fracdec::trace_scheme::{TsConfig, TsOverrides};

fn ts() -> &'static TsConfig {
    static CELL: OnceLock<TsConfig> = OnceLock::new();
    CELL.get_or_init(|| TsConfig::new(13, 12, 4, 4, 2, TsOverrides::default()).unwrap())
}

fn frs() -> &'static FrsConfig {
    static CELL: OnceLock<FrsConfig> = OnceLock::new();
    CELL.get_or_init(|| {
        FrsConfig::new(FrsParams { p: Some(37), gamma: Some(2), n: 8, k: 3, l: 4, alpha: Rational::new(3, 4) }).unwrap()
    })
}

fn gf(q: u64, l: usize) -> ExtField {
    ExtField::new(PrimeField::new(q).unwrap(), l).unwrap()
}

fn ext_message(f: &ExtField, raw: &[u64]) -> Vec<ExtElem> {
    raw.iter().map(|v| f.from_index(v % f.size()).unwrap()).collect()
}

/// `g_j = h_{l-m+j} p_j^{l-m} + sum_{u < l-m} h_u p_j^u`.
fn g_poly(c: &TsConfig, projections: &[Poly<u64>], j: usize) -> Poly<u64> {
    let b = c.base();
    let r = c.l() - c.m();
    let p = &c.annihilators()[j];
    let mut g = projections[r + j].mul(&p.pow(r, b), b);
    for (u, h) in projections.iter().take(r).enumerate() {
        g = g.add(&h.mul(&p.pow(u, b), b), b);
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_base_linear(a in 0u64..6561, b in 0u64..6561, x in 0u64..3, y in 0u64..3) {
        let f = gf(3, 8);
        let (a, b) = (f.from_index(a).unwrap(), f.from_index(b).unwrap());
        let lhs = f.trace(&f.add(&f.scale(x, &a), &f.scale(y, &b)));
        let base = f.base();
        let rhs = base.add(&base.mul(&x, &f.trace(&a)), &base.mul(&y, &f.trace(&b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projections_reconstruct(v in 0u64..28561) {
        let c = ts();
        let f = c.field();
        let beta = f.from_index(v).unwrap();
        let proj = c.basis().project(f, &beta);
        prop_assert_eq!(c.basis().reconstruct(f, &proj).unwrap(), beta);
    }

    #[test]
    fn download_matches_g_polynomials(raw in prop::collection::vec(any::<u64>(), 4)) {
        let c = ts();
        let message = ext_message(c.field(), &raw);
        let h = c.message_poly(&message).unwrap();
        let projections = c.project_polys(&h);
        let word = c.encode(&message).unwrap();
        for j in 0..c.m() {
            let g = g_poly(c, &projections, j);
            prop_assert!(g.degree_below(c.row_dimension()));
            for (i, &w) in c.omega().iter().enumerate() {
                prop_assert_eq!(c.download(word.column(i), i).unwrap()[j], g.eval(&w, c.base()));
            }
        }
    }

    #[test]
    fn peeling_recovers_projections(raw in prop::collection::vec(any::<u64>(), 4)) {
        let c = ts();
        let b = c.base();
        let message = ext_message(c.field(), &raw);
        let projections = c.project_polys(&c.message_poly(&message).unwrap());
        for j in 0..c.m() {
            let mut g = g_poly(c, &projections, j);
            for (s, hs) in projections.iter().take(c.l() - c.m()).enumerate() {
                for w in &c.sets()[j] {
                    prop_assert_eq!(g.eval(w, b), hs.eval(w, b), "step {} set {}", s, j);
                }
                let (quot, rem) = g.sub(hs, b).div_rem(&c.annihilators()[j], b).unwrap();
                prop_assert!(rem.is_zero());
                g = quot;
            }
            prop_assert_eq!(&g, &projections[c.l() - c.m() + j]);
        }
    }

    #[test]
    fn any_k_columns_determine_ts_codeword(raw in prop::collection::vec(any::<u64>(), 4), pick in prop::sample::subsequence((0..12usize).collect::<Vec<_>>(), 4)) {
        let c = ts();
        let f = c.field();
        let message = ext_message(f, &raw);
        let word = c.encode(&message).unwrap();
        let known: Vec<(usize, ExtElem)> = pick.iter().map(|&i| (i, c.basis().reconstruct(f, word.column(i)).unwrap())).collect();
        let h = c.code().erasure_decode(&known).unwrap();
        prop_assert_eq!(h.padded(f, 4), message);
    }

    #[test]
    fn ts_corrects_up_to_radius(raw in prop::collection::vec(any::<u64>(), 4), seed in any::<u64>(), weight in 0usize..=2) {
        use rand::SeedableRng;
        let c = ts();
        let message = ext_message(c.field(), &raw);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let errors = ErrorPattern::random(&mut rng, 12, weight, 4, 13).unwrap();
        let out = c.pipeline(&message, &errors).unwrap();
        prop_assert_eq!(out.decoded, message);
        prop_assert_eq!(out.bundle.downloaded, 24);
    }

    #[test]
    fn frs_corrects_up_to_radius(raw in prop::collection::vec(0u64..37, 12), seed in any::<u64>(), weight in 0usize..=2) {
        use rand::SeedableRng;
        let c = frs();
        let word = c.encode_message(&raw).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let errors = ErrorPattern::random(&mut rng, 8, weight, 4, 37).unwrap();
        let bundle = c.download_all(&errors.apply(&word, 37).unwrap()).unwrap();
        let dec = c.decode(&bundle, 1000).unwrap();
        prop_assert_eq!(dec.message.padded(c.field(), 12), raw);
        // an error confined to the unread last symbol is invisible
        let visible: Vec<usize> = errors.entries().iter().filter(|(_, e)| e[..3].iter().any(|&v| v != 0)).map(|(i, _)| *i).collect();
        prop_assert_eq!(dec.corrected_columns, visible);
    }

    #[test]
    fn frs_columns_are_consecutive_powers(raw in prop::collection::vec(0u64..37, 12)) {
        let c = frs();
        let f = c.field();
        let h = Poly::new(f, raw.clone());
        let word = c.encode_message(&raw).unwrap();
        for i in 0..8 {
            for j in 0..4 {
                let x = f.pow(&c.gamma(), (i * 4 + j) as u64);
                prop_assert_eq!(word.column(i)[j], h.eval(&x, f));
            }
        }
    }

    #[test]
    fn rs_any_k_positions_interpolate(raw in prop::collection::vec(0u64..13, 3), pick in prop::sample::subsequence((0..7usize).collect::<Vec<_>>(), 3)) {
        let f = PrimeField::new(13).unwrap();
        let code = RsCode::new(f, 3, (0..7).collect()).unwrap();
        let cw = code.encode(&Poly::new(&f, raw.clone())).unwrap();
        let known: Vec<(usize, u64)> = pick.iter().map(|&i| (i, cw[i])).collect();
        prop_assert_eq!(code.erasure_decode(&known).unwrap().padded(&f, 3), raw);
    }

    #[test]
    fn min_info_matches_subset_enumeration(nums in prop::collection::vec(0i64..=6, 1..8), t in 0usize..4, k in 1u64..4) {
        let alphas: Vec<Rational> = nums.iter().map(|&a| Rational::new(a, 6)).collect();
        let n = alphas.len();
        prop_assume!(2 * t <= n);
        let got = min_info_check(&alphas, t, k).unwrap();
        let brute = Combinations::new(n, n - 2 * t)
            .map(|s| s.iter().map(|&i| alphas[i]).sum::<Rational>())
            .min()
            .unwrap();
        prop_assert_eq!(got.min_sum, brute);
        prop_assert_eq!(got.passed, brute >= Rational::from_integer(k as i64));
        prop_assert_eq!(got.subset.iter().map(|&i| alphas[i]).sum::<Rational>(), brute);
    }

    #[test]
    fn radius_optimal_is_largest_passing_t(n in 1u64..30, k in 1u64..30, num in 1i64..=12) {
        prop_assume!(k <= n);
        let alpha = Rational::new(num, 12);
        prop_assume!(alpha * (n as i64) >= Rational::from_integer(k as i64));
        let r = radius_optimal(n, k, alpha).unwrap();
        let passes = |t: u64| 2 * t <= n && alpha * ((n - 2 * t) as i64) >= Rational::from_integer(k as i64);
        prop_assert!(passes(r));
        prop_assert!(!passes(r + 1));
    }

    #[test]
    fn rational_text_roundtrip(a in -50i64..50, b in 1i64..50) {
        let r = Rational::new(a, b);
        prop_assert_eq!(parse_rational(&to_fraction_string(&r)).unwrap(), r);
    }

    #[test]
    fn column_distance_counts_changed_columns(cols in prop::collection::vec(prop::collection::vec(0u64..5, 3), 1..6), flips in prop::collection::vec(any::<bool>(), 6)) {
        let a = ArrayCodeword::new(cols.clone());
        let changed: Vec<Vec<u64>> = cols.iter().zip(&flips).map(|(c, &f)| if f { vec![c[0] ^ 1, c[1], c[2]] } else { c.clone() }).collect();
        let expected = flips.iter().take(cols.len()).filter(|&&f| f).count();
        prop_assert_eq!(a.column_distance(&ArrayCodeword::new(changed)), expected);
    }
}
