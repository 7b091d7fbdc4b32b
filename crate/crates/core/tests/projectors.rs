use feasor::prelude::*;
use feasor::sets::Dilated;
use proptest::prelude::*;

fn vec_in(dim: usize) -> impl Strategy<Value = Vec64> {
    prop::collection::vec(-10.0..10.0f64, dim).prop_map(Vec64::from)
}

fn normal(dim: usize) -> impl Strategy<Value = Vec64> {
    vec_in(dim).prop_filter("nonzero normal", |v| v.norm() > 1e-3)
}

fn weights(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1..5.0f64, dim)
}

/// Projector axioms for a convex set under `ip`.
fn check_convex(set: &dyn ProjectableSet<f64>, ip: &InnerProduct<f64>, x: &Vec64, y: &Vec64) {
    let px = set.project(x).unwrap();
    let py = set.project(y).unwrap();
    assert!(
        set.contains(&px),
        "{} does not contain its projection",
        set.name()
    );
    assert!(ip.dist(&set.project(&px).unwrap(), &px).unwrap() <= 1e-10);
    let vi = ip.inner(&(x - &px), &(&py - &px)).unwrap();
    assert!(vi <= 1e-8, "variational inequality violated by {vi}");
    let lhs = ip.dist(&px, &py).unwrap().powi(2) + ip.dist(&(x - &px), &(y - &py)).unwrap().powi(2);
    assert!(lhs <= ip.dist(x, y).unwrap().powi(2) + 1e-8);
}

proptest! {
    #[test]
    fn hyperplane_and_halfspace_axioms(a in normal(4), b in -5.0..5.0f64, x in vec_in(4), y in vec_in(4)) {
        let e = InnerProduct::euclidean();
        check_convex(&Hyperplane::new(a.clone(), b).unwrap(), &e, &x, &y);
        check_convex(&Halfspace::new(a, b).unwrap(), &e, &x, &y);
    }

    #[test]
    fn weighted_sets_use_their_inner_product(
        w in weights(4), a in normal(4), b in -5.0..5.0f64, r in 0.1..5.0f64, x in vec_in(4), y in vec_in(4),
    ) {
        let ip = InnerProduct::weighted(w).unwrap();
        check_convex(&Hyperplane::with_inner(a.clone(), b, ip.clone()).unwrap(), &ip, &x, &y);
        check_convex(&Halfspace::with_inner(a, b, ip.clone()).unwrap(), &ip, &x, &y);
        check_convex(&Ball::with_inner(4, r, ip.clone()).unwrap(), &ip, &x, &y);
    }

    #[test]
    fn weighted_hyperplane_projection_is_nearest(
        w in weights(3), a in normal(3), b in -5.0..5.0f64, x in vec_in(3), t in vec_in(3),
    ) {
        // Any other point of the hyperplane is at least as far in the weighted norm.
        let ip = InnerProduct::weighted(w).unwrap();
        let h = Hyperplane::with_inner(a.clone(), b, ip.clone()).unwrap();
        let px = h.project(&x).unwrap();
        let other = h.project(&t).unwrap();
        prop_assert!(ip.dist(&x, &px).unwrap() <= ip.dist(&x, &other).unwrap() + 1e-9);
    }

    #[test]
    fn translation_shifts_the_projector(r in 0.1..5.0f64, s in vec_in(3), x in vec_in(3)) {
        let ball = shared(Ball::new(3, r).unwrap());
        let moved = translate(ball.clone(), s.clone()).unwrap();
        let expected = &ball.project(&(&x - &s)).unwrap() + &s;
        prop_assert!(moved.project(&x).unwrap().max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn dilation_scales_the_projector(a in normal(3), b in -5.0..5.0f64, f in prop_oneof![-4.0..-0.25f64, 0.25..4.0f64], x in vec_in(3)) {
        let h: SetRef<f64> = shared(Halfspace::new(a, b).unwrap());
        let d = Dilated::new(h.clone(), f).unwrap();
        let expected = h.project(&x.scaled(1.0 / f)).unwrap().scaled(f);
        prop_assert!(d.project(&x).unwrap().max_abs_diff(&expected) <= 1e-9);
        check_convex(&d, &InnerProduct::euclidean(), &x, &x.scaled(0.5));
    }

    #[test]
    fn sum_constraints_hold_after_projection(m in 1usize..7, x in vec_in(6)) {
        let mf = m as f64;
        let eq = SumEquals::new(6, m).unwrap().project(&x).unwrap();
        prop_assert!((eq.iter().sum::<f64>() - mf).abs() <= 1e-9);
        let le = SumAtMost::new(6, m).unwrap().project(&x).unwrap();
        prop_assert!(le.iter().sum::<f64>() <= mf + 1e-9);
        if x.iter().sum::<f64>() <= mf {
            prop_assert_eq!(le, x);
        }
    }

    #[test]
    fn binary_projections_are_admissible_and_no_worse_than_rounding(x in prop::collection::vec(-1.0..2.0f64, 2..9), m in 1usize..4) {
        let p = x.len();
        let xv = Vec64::from(x.clone());
        let le = BinarySumAtMost::new(p, m).unwrap();
        let z = le.project(&xv).unwrap();
        prop_assert!(le.contains(&z));
        prop_assert!(z.iter().all(|&v| v == 0.0 || v == 1.0));
        prop_assert!(z.iter().sum::<f64>() <= m as f64);
        // The empty board is admissible, so the projection is at least that close.
        prop_assert!((&xv - &z).norm() <= xv.norm() + 1e-12);
        if m <= p {
            let eq = BinarySumEquals::new(p, m).unwrap();
            let z = eq.project(&xv).unwrap();
            prop_assert_eq!(z.iter().sum::<f64>(), m as f64);
            prop_assert_eq!(eq.project(&z).unwrap(), z);
        }
    }

    #[test]
    fn product_and_diagonal_project_blockwise(x in vec_in(6)) {
        let ball: SetRef<f64> = shared(Ball::new(3, 1.0).unwrap());
        let orth: SetRef<f64> = shared(Orthant::new(3));
        let prod = Product::new(vec![ball.clone(), orth.clone()]).unwrap();
        let px = prod.project(&x).unwrap();
        let head = Vec64::from(x.as_slice()[..3].to_vec());
        let tail = Vec64::from(x.as_slice()[3..].to_vec());
        let (ph, pt) = (ball.project(&head).unwrap(), orth.project(&tail).unwrap());
        prop_assert_eq!(&px.as_slice()[..3], ph.as_slice());
        prop_assert_eq!(&px.as_slice()[3..], pt.as_slice());

        let diag = Diagonal::new(2, 3).unwrap();
        let pd = diag.project(&x).unwrap();
        for j in 0..3 {
            let mean = (x[j] + x[j + 3]) / 2.0;
            prop_assert!((pd[j] - mean).abs() <= 1e-12 && (pd[j + 3] - mean).abs() <= 1e-12);
        }
    }
}

#[test]
fn invalid_sets_are_rejected() {
    assert!(matches!(
        Hyperplane::new(Vec64::zeros(3), 1.0),
        Err(Error::InvalidSet(_))
    ));
    assert!(matches!(Ball::new(3, -1.0), Err(Error::InvalidSet(_))));
    assert!(matches!(
        BinarySumEquals::new(3, 4),
        Err(Error::InvalidSet(_))
    ));
    assert!(InnerProduct::weighted(vec![1.0, 0.0]).is_err());
    let ball = shared(Ball::new(2, 1.0).unwrap());
    assert!(matches!(
        ball.project(&Vec64::zeros(3)),
        Err(Error::Dimension { .. })
    ));
}
