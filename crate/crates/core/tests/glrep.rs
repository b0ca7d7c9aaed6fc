use walled_brauer::affine::{mn_delta_omegas, AffineEngine};
use walled_brauer::arith::rational::{frac, int, one};
use walled_brauer::arith::Rational;
use walled_brauer::cyclotomic::{basis, make_params, CycloEngine};
use walled_brauer::diagram::{DecoratedElement, GenKind, OrSeq, Step};
use walled_brauer::glrep::{extract_omega, represent, y1_minimal_poly, GlContext, ModuleVector};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn minimal_polynomials_of_the_first_dot() {
    let cases: [((usize, usize, i64, i8), Vec<Rational>); 4] = [
        ((3, 2, 1, 1), vec![frac(-3, 4), int(-1), int(1)]),
        ((2, 2, 2, 1), ints(&[0, 0, 1])),
        ((2, 2, 0, -1), ints(&[0, -2, 1])),
        ((2, 2, 2, -1), ints(&[4, -4, 1])),
    ];
    for ((m, n, delta, a), want) in cases {
        let ctx = GlContext::parabolic(m, n, delta).unwrap();
        assert_eq!(y1_minimal_poly(&ctx, a, 2).unwrap(), want, "({m},{n},{delta}) a={a}");
    }
}

#[test]
fn bubbles_from_the_action() {
    for big_n in 1..=4usize {
        let ctx = GlContext::trivial(big_n).unwrap();
        for k in 0..=4 {
            let half = frac(big_n as i64, 2);
            let want = (0..k).fold(int(big_n as i64), |acc, _| acc * &half);
            assert_eq!(extract_omega(&ctx, k).unwrap(), want);
        }
    }
    for (m, n) in [(2, 2), (3, 2), (2, 3), (1, 1)] {
        for delta in [-1, 0, 1] {
            if delta == m as i64 || delta == n as i64 {
                continue;
            }
            let ctx = GlContext::parabolic(m, n, delta).unwrap();
            let want = mn_delta_omegas(m as i64, n as i64, delta, 8);
            for (k, w) in want.iter().enumerate() {
                assert_eq!(&extract_omega(&ctx, k).unwrap(), w, "({m},{n},{delta}) k={k}");
            }
        }
    }
}

#[test]
fn dotted_bubble_acts_by_omega() {
    let ctx = GlContext::parabolic(2, 2, 1).unwrap();
    let eng = AffineEngine::new(ctx.omega_spec());
    let a = OrSeq::parse("1,-1").unwrap();
    let (e, y) = (Step::new(GenKind::E, 0), Step::new(GenKind::Y, 0));
    let vs: Vec<ModuleVector> = ctx.test_tensors(&a, 2).into_iter().map(|t| ModuleVector::basis(a.clone(), t)).collect();
    let single = DecoratedElement::identity(&a);
    let single = eng.apply_word(&[e], &single).unwrap();
    for k in 0..=6 {
        let mut word = vec![e];
        word.extend(std::iter::repeat_n(y, k));
        word.push(e);
        let x = eng.word_element(&a, &word).unwrap();
        let w = ctx.omega_spec().omega(k).unwrap();
        for v in &vs {
            assert_eq!(represent(&ctx, &x, v).unwrap(), represent(&ctx, &single, v).unwrap().scale(&w), "k={k}");
        }
    }
}

#[test]
fn action_factors_through_the_quotient() {
    let (m, n, delta) = (2usize, 2usize, 1i64);
    let ctx = GlContext::parabolic(m, n, delta).unwrap();
    let cyc = CycloEngine::new(make_params(m as i64, n as i64, delta).unwrap());
    for a in [OrSeq::parse("1,-1").unwrap(), OrSeq::parse("-1,1").unwrap()] {
        let (b, table) = cyc.structure_constants(&a).unwrap();
        let elems: Vec<DecoratedElement> = b.iter().map(|m| DecoratedElement::from_monomial(m.clone(), one())).collect();
        let vs: Vec<ModuleVector> = ctx.test_tensors(&a, 2).into_iter().map(|t| ModuleVector::basis(a.clone(), t)).collect();
        let mut prods = vec![vec![DecoratedElement::zero(a.clone(), a.clone()); b.len()]; b.len()];
        for (i, j, k, c) in &table {
            prods[*i][*j].add_scaled(&elems[*k], c);
        }
        for i in 0..b.len() {
            for j in 0..b.len() {
                for v in &vs {
                    let via_table = represent(&ctx, &prods[i][j], v).unwrap();
                    let twice = represent(&ctx, &elems[i], &represent(&ctx, &elems[j], v).unwrap()).unwrap();
                    assert_eq!(via_table, twice, "b{i} b{j} on {a}");
                }
            }
        }
    }
}

#[test]
fn small_parabolic_bubbles() {
    for (m, n, delta) in [(2, 1, -1), (1, 3, 2)] {
        let ctx = GlContext::parabolic(m, n, delta).unwrap();
        let want = mn_delta_omegas(m as i64, n as i64, delta, 4);
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&extract_omega(&ctx, k).unwrap(), w, "({m},{n},{delta}) k={k}");
        }
    }
}

#[test]
fn action_respects_multiplication() {
    let ctx = GlContext::parabolic(2, 2, 1).unwrap();
    let eng = AffineEngine::new(ctx.omega_spec());
    for a in [OrSeq::parse("1,-1").unwrap(), OrSeq::parse("-1,1").unwrap(), OrSeq::parse("1,1").unwrap()] {
        let b: Vec<DecoratedElement> = basis(&a).into_iter().map(|m| DecoratedElement::from_monomial(m, one())).collect();
        let vs: Vec<ModuleVector> = ctx.test_tensors(&a, 1).into_iter().map(|t| ModuleVector::basis(a.clone(), t)).collect();
        for x in &b {
            for y in &b {
                let xy = eng.multiply(x, y).unwrap();
                for v in &vs {
                    let once = represent(&ctx, &xy, v).unwrap();
                    let twice = represent(&ctx, x, &represent(&ctx, y, v).unwrap()).unwrap();
                    assert_eq!(once, twice, "on {a}");
                }
            }
        }
    }
}
