use feasor::prelude::*;
use feasor::Vec32;
use proptest::prelude::*;

fn line(a: [f64; 2], b: f64) -> SetRef<f64> {
    shared(Hyperplane::new(Vec64::from_f64(&a), b).unwrap())
}

fn point() -> impl Strategy<Value = Vec64> {
    prop::collection::vec(-10.0..10.0f64, 2).prop_map(Vec64::from)
}

proptest! {
    #[test]
    fn dr_is_fejer_monotone_for_crossing_lines(angle in 0.1..3.0f64, x0 in point()) {
        // Fix T is {0} for two distinct lines through the origin.
        let a = line([0.0, 1.0], 0.0);
        let b = line([-angle.sin(), angle.cos()], 0.0);
        let dr = DouglasRachford::new(a, b).unwrap();
        let mut x = x0;
        for _ in 0..50 {
            let next = dr.apply(&x).unwrap();
            prop_assert!(next.norm() <= x.norm() + 1e-12);
            x = next;
        }
    }

    #[test]
    fn product_dr_matches_two_set_dr_on_diagonal(x in prop::collection::vec(-5.0..5.0f64, 6)) {
        let sets: Vec<SetRef<f64>> = vec![
            shared(Ball::new(2, 1.0).unwrap()),
            line([1.0, 1.0], 0.5),
            shared(Halfspace::new(Vec64::from_f64(&[1.0, -2.0]), 0.0).unwrap()),
        ];
        let space = ProductSpace::new(sets.clone()).unwrap();
        let generic = DouglasRachford::new(space.diagonal(), space.product()).unwrap();
        let fast = ProductDr::new(sets).unwrap();
        let x = Vec64::from(x);
        prop_assert!(fast.apply(&x).unwrap().max_abs_diff(&generic.apply(&x).unwrap()) <= 1e-12);
        let mean = fast.shadow(&x).unwrap();
        prop_assert!(mean.max_abs_diff(&space.unlift(&space.diagonal().project(&x).unwrap()).unwrap()) <= 1e-12);
    }
}

#[test]
fn dr_finds_a_point_in_ball_and_line() {
    let a = line([1.0, 1.0], 1.0);
    let b = translate(
        shared(Ball::new(2, 1.0).unwrap()),
        Vec64::from_f64(&[1.0, 1.0]),
    )
    .unwrap();
    let dr = DouglasRachford::new(a.clone(), b.clone()).unwrap();
    let report = Iteration::new(StoppingPolicy::default())
        .operator_shadow(&dr)
        .run(&dr, &Vec64::from_f64(&[-3.0, 5.0]))
        .unwrap();
    assert_eq!(report.status, Status::Converged);
    let s = report.shadow.unwrap();
    assert!(a.contains(&s) && b.contains(&s));
}

#[test]
fn inconsistent_halfspaces_diverge_with_gap_displacement() {
    // y <= 0 and y >= 2: the DR iterates run off at the gap vector each step.
    let a: SetRef<f64> = shared(Halfspace::new(Vec64::from_f64(&[0.0, 1.0]), 0.0).unwrap());
    let b: SetRef<f64> = shared(Halfspace::new(Vec64::from_f64(&[0.0, -1.0]), -2.0).unwrap());
    let dr = DouglasRachford::new(a, b).unwrap();
    let report = Iteration::new(StoppingPolicy::default().with_divergence_radius(1e3))
        .run(&dr, &Vec64::from_f64(&[0.3, -0.7]))
        .unwrap();
    assert_eq!(report.status, Status::Diverging);
    let v = report.displacement_estimate.unwrap();
    assert!(v.max_abs_diff(&Vec64::from_f64(&[0.0, 2.0])) <= 1e-12);
}

#[test]
fn stopping_rules_are_reported() {
    let dr = DouglasRachford::new(line([0.0, 1.0], 0.0), line([1.0, -1.0], 0.0)).unwrap();
    let x0 = Vec64::from_f64(&[1.0, 0.0]);
    let capped = Iteration::new(StoppingPolicy::default().with_max_iters(5))
        .run(&dr, &x0)
        .unwrap();
    assert_eq!(
        (capped.status, capped.iterations),
        (Status::MaxIterations, 5)
    );
    assert_eq!(capped.residuals.len(), 5);
    let found = Iteration::new(StoppingPolicy::default())
        .solution_test(|x| x.norm() < 0.1)
        .run(&dr, &x0)
        .unwrap();
    assert_eq!(found.status, Status::SolutionFound);
    assert!(found.final_iterate.norm() < 0.1);
}

#[test]
fn runs_are_deterministic() {
    let sets: Vec<SetRef<f64>> = vec![
        shared(Ball::new(2, 1.0).unwrap()),
        line([1.0, 2.0], 0.3),
        shared(Orthant::new(2)),
    ];
    let x0 = Vec64::from_f64(&[4.0, -3.0]);
    let run = || {
        let op = CyclicDr::new(sets.clone()).unwrap();
        Iteration::new(StoppingPolicy::default())
            .trace_stride(3)
            .run(&op, &x0)
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.final_iterate, b.final_iterate);
    assert_eq!(a.residuals, b.residuals);
    assert_eq!(a.snapshots.len(), b.snapshots.len());
}

#[test]
fn single_precision_instance_converges() {
    let a: SetRef<f32> = shared(Hyperplane::new(Vec32::from_f64(&[0.0, 1.0]), 0.0).unwrap());
    let b: SetRef<f32> = shared(Hyperplane::new(Vec32::from_f64(&[1.0, -1.0]), 0.0).unwrap());
    let dr = DouglasRachford::new(a, b).unwrap();
    let report = Iteration::new(StoppingPolicy::default().with_step_tol(1e-6))
        .operator_shadow(&dr)
        .run(&dr, &Vec32::from_f64(&[1.0, 0.0]))
        .unwrap();
    assert_eq!(report.status, Status::Converged);
    assert!(report.shadow.unwrap().norm() < 1e-5);
}

#[test]
fn circumcenter_of_a_triangle_is_equidistant() {
    let p = [
        Vec64::from_f64(&[0.0, 0.0, 1.0]),
        Vec64::from_f64(&[2.0, 0.0, 0.0]),
        Vec64::from_f64(&[0.5, 3.0, -1.0]),
    ];
    let c = circumcenter(&p[0], &p[1], &p[2], &InnerProduct::euclidean()).unwrap();
    let d: Vec<f64> = p.iter().map(|q| (q - &c).norm()).collect();
    assert!((d[0] - d[1]).abs() < 1e-12 && (d[0] - d[2]).abs() < 1e-12);
    let collinear = circumcenter(
        &p[0],
        &p[1],
        &Vector::combine(0.5, &p[0], 0.5, &p[1]),
        &InnerProduct::euclidean(),
    );
    assert!(collinear.is_err());
}
