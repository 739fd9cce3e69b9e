use corrgauss::gaussian::{
    apply_symplectic, entropy_function, homodyne_condition, pts_min_eigenvalue,
    symplectic_eigenvalues, two_mode_pts_eigenvalues, two_mode_symplectic_eigenvalues,
    von_neumann_entropy, CovarianceMatrix, EntanglementReport, Quadrature, SymplecticTransform,
};
use corrgauss::{beam_splitter, make_epr_cm};
use nalgebra::DMatrix;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Op {
    Rotate(usize, f64),
    Squeeze(usize, f64),
    Mix(usize, usize, f64),
}

fn op(n: usize) -> BoxedStrategy<Op> {
    let local = prop_oneof![
        (0..n, 0.0..std::f64::consts::TAU).prop_map(|(k, t)| Op::Rotate(k, t)),
        (0..n, -0.7..0.7f64).prop_map(|(k, r)| Op::Squeeze(k, r)),
    ];
    if n < 2 {
        return local.boxed();
    }
    let mix = (0..n, 1..n, 0.05..0.95f64).prop_map(move |(i, d, t)| Op::Mix(i, (i + d) % n, t));
    prop_oneof![2 => local, 1 => mix].boxed()
}

fn symplectic(n: usize, ops: &[Op]) -> SymplecticTransform {
    let mut m = DMatrix::identity(2 * n, 2 * n);
    for op in ops {
        let (s, modes) = match *op {
            Op::Rotate(k, t) => {
                let (sin, cos) = t.sin_cos();
                let r = DMatrix::from_row_slice(2, 2, &[cos, sin, -sin, cos]);
                (SymplecticTransform::new(r).unwrap(), vec![k])
            }
            Op::Squeeze(k, r) => {
                let z = DMatrix::from_row_slice(2, 2, &[r.exp(), 0.0, 0.0, (-r).exp()]);
                (SymplecticTransform::new(z).unwrap(), vec![k])
            }
            Op::Mix(i, j, t) => (beam_splitter(t).unwrap(), vec![i, j]),
        };
        m = s.embed(&modes, n).unwrap().matrix() * m;
    }
    SymplecticTransform::new(m).expect("product of symplectic maps")
}

/// A state with prescribed symplectic spectrum, dressed by a random Gaussian unitary.
fn state(max_modes: usize) -> impl Strategy<Value = (Vec<f64>, CovarianceMatrix)> {
    (1..=max_modes).prop_flat_map(|n| {
        (
            prop::collection::vec(1.0..6.0f64, n),
            prop::collection::vec(op(n), 0..8),
        )
            .prop_map(move |(nus, ops)| {
                let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    2 * n,
                    nus.iter().flat_map(|&v| [v, v]),
                ));
                let s = symplectic(n, &ops);
                let m = s.matrix();
                let cm = CovarianceMatrix::new(m * diag * m.transpose()).unwrap();
                let mut nus = nus;
                nus.sort_by(|a, b| b.total_cmp(a));
                (nus, cm)
            })
    })
}

fn two_mode_state() -> impl Strategy<Value = CovarianceMatrix> {
    (
        prop::collection::vec(1.0..6.0f64, 2),
        prop::collection::vec(op(2), 1..8),
    )
        .prop_map(|(nus, ops)| {
            let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                nus[0], nus[0], nus[1], nus[1],
            ]));
            let m = symplectic(2, &ops).matrix().clone();
            CovarianceMatrix::new(&m * diag * m.transpose()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn williamson_spectrum_recovered((nus, cm) in state(4)) {
        let got = symplectic_eigenvalues(&cm).unwrap();
        for (a, b) in got.iter().zip(&nus) {
            prop_assert!((a - b).abs() <= 1e-9 * b, "{got:?} vs {nus:?}");
        }
    }

    #[test]
    fn spectrum_invariant_under_symplectic_maps(
        (_, cm) in state(4),
        ops in prop::collection::vec(op(4), 1..10),
    ) {
        let n = cm.n_modes();
        let ops: Vec<Op> = ops
            .into_iter()
            .filter(|o| match *o {
                Op::Rotate(k, _) | Op::Squeeze(k, _) => k < n,
                Op::Mix(i, j, _) => i < n && j < n,
            })
            .collect();
        let s = symplectic(n, &ops);
        let modes: Vec<usize> = (0..n).collect();
        let moved = apply_symplectic(&cm, &s, &modes).unwrap();
        let a = symplectic_eigenvalues(&cm).unwrap();
        let b = symplectic_eigenvalues(&moved).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * x);
        }
    }

    #[test]
    fn epr_is_pure(mu in 1.0..1e4f64) {
        let v = make_epr_cm(mu).unwrap();
        prop_assert!((v.determinant() - 1.0).abs() < 1e-6);
        prop_assert!(von_neumann_entropy(&v).unwrap() < 1e-6);
        for nu in symplectic_eigenvalues(&v).unwrap() {
            prop_assert!((nu - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn two_mode_closed_forms(cm in two_mode_state()) {
        let (plus, minus) = two_mode_symplectic_eigenvalues(&cm).unwrap();
        let generic = symplectic_eigenvalues(&cm).unwrap();
        prop_assert!((plus - generic[0]).abs() <= 1e-10 * plus.max(1.0));
        prop_assert!((minus - generic[1]).abs() <= 1e-10 * minus.max(1.0));
        let (_, pts_minus) = two_mode_pts_eigenvalues(&cm).unwrap();
        let pts = pts_min_eigenvalue(&cm, &[1]).unwrap();
        prop_assert!((pts - pts_minus).abs() <= 1e-10 * pts.max(1.0), "{pts} vs {pts_minus}");
        prop_assert!((pts - pts_min_eigenvalue(&cm, &[0]).unwrap()).abs() <= 1e-10 * pts.max(1.0));
    }

    #[test]
    fn log_negativity_vanishes_iff_ppt(cm in two_mode_state()) {
        let r = EntanglementReport::new(&cm, &[1]).unwrap();
        prop_assert_eq!(r.log_negativity == 0.0, r.pts_min >= 1.0);
        prop_assert!(r.log_negativity >= 0.0);
    }

    #[test]
    fn homodyne_detections_commute((_, cm) in state(4), q_mode in 0..4usize, p_mode in 0..4usize) {
        let n = cm.n_modes();
        prop_assume!(n >= 3);
        let (q_mode, p_mode) = (q_mode % n, p_mode % n);
        prop_assume!(q_mode != p_mode);
        let shift = |m: usize, removed: usize| if m > removed { m - 1 } else { m };
        let a = homodyne_condition(&cm, q_mode, Quadrature::Q).unwrap();
        let a = homodyne_condition(&a, shift(p_mode, q_mode), Quadrature::P).unwrap();
        let b = homodyne_condition(&cm, p_mode, Quadrature::P).unwrap();
        let b = homodyne_condition(&b, shift(q_mode, p_mode), Quadrature::Q).unwrap();
        let scale = cm.as_matrix().amax();
        prop_assert!((a.as_matrix() - b.as_matrix()).amax() <= 1e-10 * scale);
    }

    #[test]
    fn conditioning_keeps_states_physical((_, cm) in state(4), mode in 0..4usize, p in any::<bool>()) {
        let n = cm.n_modes();
        prop_assume!(n >= 2);
        let quad = if p { Quadrature::P } else { Quadrature::Q };
        let out = homodyne_condition(&cm, mode % n, quad).unwrap();
        prop_assert!(out.is_physical().unwrap());
    }

    #[test]
    fn entropy_increasing(a in 1.0..50.0f64, b in 1.0..50.0f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(entropy_function(lo).unwrap() <= entropy_function(hi).unwrap());
    }
}

#[test]
fn entropy_at_vacuum() {
    assert_eq!(entropy_function(1.0).unwrap(), 0.0);
}
