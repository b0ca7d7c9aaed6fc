use proptest::prelude::*;
use walled_brauer::affine::{mn_delta_omegas, AffineEngine, OmegaSpec};
use walled_brauer::arith::rational::{frac, int, one, zero};
use walled_brauer::arith::{series_div, series_mul, series_star, LaurentSeries, MultiPoly, Rational};
use walled_brauer::cyclotomic::{make_params, q_cancellation, w1_closed_form, CycloEngine};
use walled_brauer::diagram::{enumerate_diagrams, DecoratedElement, Monomial, OrSeq, WBDiagram};
use walled_brauer::young4::{eigenvalue_from_weight, eigenvalue_tuple, enumerate_y, FourYoung};

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn series(order: usize) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(rat(), order + 1).prop_map(|cs| LaurentSeries::from_rationals(0, &cs).unwrap())
}

fn orientation(max_len: usize) -> impl Strategy<Value = OrSeq> {
    prop::collection::vec(prop::bool::ANY, 1..=max_len)
        .prop_map(|v| OrSeq::new(v.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap())
}

fn poly(nvars: usize, deg: u32) -> impl Strategy<Value = MultiPoly> {
    let exps = MultiPoly::exponents_up_to(nvars, deg);
    let k = exps.len();
    prop::collection::vec(prop_oneof![3 => Just(zero()), 2 => rat()], k)
        .prop_map(move |cs| MultiPoly::from_terms(nvars, exps.clone().into_iter().zip(cs)))
}

fn eval(p: &MultiPoly, pt: &[Rational]) -> Rational {
    let mut s = zero();
    for (e, c) in p.terms() {
        let mut t = c.clone();
        for (x, &k) in pt.iter().zip(e) {
            for _ in 0..k {
                t *= x;
            }
        }
        s += t;
    }
    s
}

fn generic_omega() -> OmegaSpec {
    OmegaSpec::List(vec![int(3), frac(1, 2), int(-2), frac(7, 3), int(5), int(1), frac(-4, 5), int(2), int(9)])
}

/// Random combination of regular monomials with at most two dots per end.
fn element(a: OrSeq) -> impl Strategy<Value = DecoratedElement> {
    let mons: Vec<Monomial> =
        enumerate_diagrams(&a, &a).unwrap().iter().flat_map(|d| Monomial::regular_on(d, 2)).collect();
    let n = mons.len();
    prop::collection::vec((0..n, -3i64..=3), 1..=3).prop_map(move |picks| {
        let mut x = DecoratedElement::zero(a.clone(), a.clone());
        for (i, c) in picks {
            x.add_term(mons[i].clone(), int(c));
        }
        x
    })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_involution(f in series(7)) {
        prop_assert_eq!(series_star(&series_star(&f)), f);
    }

    #[test]
    fn division_inverts_multiplication(f in series(6), g in series(6), c in 1i64..=5) {
        let mut cs: Vec<Rational> = g.coeffs().iter().map(|p| p.constant_term()).collect();
        cs[0] = int(c);
        let g = LaurentSeries::from_rationals(0, &cs).unwrap();
        prop_assert_eq!(series_div(&series_mul(&f, &g).unwrap(), &g).unwrap(), f);
    }

    #[test]
    fn closed_form_matches_recursion(m in 1i64..=6, n in 1i64..=6, delta in -4i64..=6, k in 0usize..=12) {
        prop_assume!(delta != m && delta != n);
        let p = make_params(m, n, delta).unwrap();
        prop_assert_eq!(w1_closed_form(&p, k), mn_delta_omegas(m, n, delta, k)[k].clone());
    }

    #[test]
    fn endomorphism_diagrams_count_factorial(a in orientation(5)) {
        prop_assert_eq!(enumerate_diagrams(&a, &a).unwrap().len(), factorial(a.len()));
    }

    #[test]
    fn composition_is_associative(a in orientation(4), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let ds = enumerate_diagrams(&a, &a).unwrap();
        let (x, y, z) = (i.get(&ds), j.get(&ds), k.get(&ds));
        let (b1, xy) = WBDiagram::compose(x, y).unwrap();
        let (b2, left) = WBDiagram::compose(&xy, z).unwrap();
        let (b3, yz) = WBDiagram::compose(y, z).unwrap();
        let (b4, right) = WBDiagram::compose(x, &yz).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(b1 + b2, b3 + b4);
    }

    #[test]
    fn word_round_trip(a in orientation(4), i in any::<prop::sample::Index>()) {
        let ds = enumerate_diagrams(&a, &a).unwrap();
        let d = i.get(&ds);
        let steps: Vec<_> = d.word().into_iter().map(|(s, _)| s).collect();
        let (bubbles, back) = WBDiagram::from_word(&a, &steps).unwrap();
        prop_assert_eq!(bubbles, 0);
        prop_assert_eq!(&back, d);
    }

    #[test]
    fn q_cancellation_agrees_with_evaluation(p in poly(3, 3), pts in prop::collection::vec((rat(), rat()), 6)) {
        let base = |y3: &Rational| eval(&p, &[zero(), zero(), y3.clone()]);
        let holds = pts.iter().enumerate().all(|(s, (y, y3))| {
            let y = y + int(s as i64);
            eval(&p, &[y.clone(), -y, y3.clone()]) == base(y3)
        });
        if q_cancellation(&p, 1, 2).unwrap() {
            prop_assert!(holds);
        }
        // sum of c (y1 + y2)^k y3^l, expanded
        let lifted = MultiPoly::from_terms(3, p.terms().flat_map(|(e, c)| {
            let (k, l) = (e[0], e[2]);
            (0..=k).map(move |t| (vec![t, k - t, l], c * binom(k, t)))
        }));
        prop_assert!(q_cancellation(&lifted, 1, 2).unwrap());
    }

    #[test]
    fn polynomial_text_round_trip(p in poly(3, 3)) {
        prop_assert_eq!(MultiPoly::parse(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn young_weight_round_trip_and_eigenvalue_routes(a in orientation(3), m in 1usize..=3, n in 1usize..=3, delta in -2i64..=3) {
        for seq in enumerate_y(&a, m, n, delta) {
            for d in &seq.diagrams {
                let back = FourYoung::from_weight(d.weight(), m, n, delta).unwrap();
                prop_assert_eq!(back.weight(), d.weight());
            }
            let tuple = eigenvalue_tuple(&seq);
            for (i, step) in seq.steps.iter().enumerate() {
                let via_weight = eigenvalue_from_weight(seq.diagrams[i].weight(), step.column, a.get(i), m, n);
                prop_assert_eq!(&tuple[i], &via_weight);
            }
        }
    }
}

fn binom(n: u32, k: u32) -> Rational {
    let mut r = one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(
        (x, y, z) in prop_oneof![Just(vec![1i8, -1]), Just(vec![-1i8, 1]), Just(vec![1i8, 1])]
            .prop_flat_map(|v| { let a = OrSeq::new(v).unwrap(); (element(a.clone()), element(a.clone()), element(a)) })
    ) {
        let eng = AffineEngine::new(generic_omega());
        let left = eng.multiply(&eng.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = eng.multiply(&x, &eng.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduction_is_idempotent_and_multiplicative(
        (x, y) in prop_oneof![Just(vec![1i8, -1]), Just(vec![-1i8, 1])]
            .prop_flat_map(|v| { let a = OrSeq::new(v).unwrap(); (element(a.clone()), element(a)) }),
        delta in 0i64..=2,
    ) {
        let cyc = CycloEngine::new(make_params(3, 4, delta).unwrap());
        let rx = cyc.cyclo_reduce(&x).unwrap();
        prop_assert!(rx.terms().all(|(m, _)| m.is_cyclotomic_regular()));
        prop_assert_eq!(cyc.cyclo_reduce(&rx).unwrap(), rx.clone());
        let ry = cyc.cyclo_reduce(&y).unwrap();
        prop_assert_eq!(cyc.multiply(&x, &y).unwrap(), cyc.multiply(&rx, &ry).unwrap());
    }
}
