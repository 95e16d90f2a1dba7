//! Randomized invariants of the numerical core.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symlap::entropy::{majorizes, renyi, von_neumann, ProbabilityVector};
use symlap::laplacian::{doubled_incidence, incidence, symmetric};
use symlap::linalg::{jacobi_eigen, kron_vec, partial_trace_pure, Keep, Matrix, SymMatrix, DEFAULT_JACOBI_TOL};
use symlap::Graph;

/// Random spanning tree plus random extra edges, so always connected.
fn random_connected(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let density: f64 = rng.gen();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < density && !edges.contains(&(i, j)) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, any::<u64>()).prop_map(|(n, seed)| random_connected(n, seed))
}

fn probability_vector(max_len: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(0.0f64..1.0, 2..=max_len).prop_filter_map("all-zero weights", |w| {
        let s: f64 = w.iter().sum();
        (s > 1e-6).then(|| ProbabilityVector::new(w.iter().map(|x| x / s).collect()).unwrap())
    })
}

/// Product of random Householder reflections.
fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut q = Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 });
    for _ in 0..n {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv < 1e-8 {
            continue;
        }
        let h = Matrix::from_fn(n, n, |i, j| {
            (if i == j { 1.0 } else { 0.0 }) - 2.0 * v[i] * v[j] / vv
        });
        q = q.mul(&h).unwrap();
    }
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn renyi_nonincreasing_in_order(p in probability_vector(12)) {
        let grid = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 7.0, 20.0];
        for w in grid.windows(2) {
            let (a, b) = (renyi(&p, w[0]).unwrap(), renyi(&p, w[1]).unwrap());
            prop_assert!(b <= a + 1e-12, "H_{} = {} > H_{} = {}", w[1], b, w[0], a);
        }
    }

    #[test]
    fn uniform_is_majorized_by_everything(p in probability_vector(10)) {
        let u = ProbabilityVector::uniform(p.len());
        prop_assert!(majorizes(&u, &p).unwrap());
        for order in [1.0, 2.0, 3.0] {
            prop_assert!(renyi(&u, order).unwrap() >= renyi(&p, order).unwrap() - 1e-12);
        }
    }

    #[test]
    fn transfer_toward_balance_raises_entropy(
        p in probability_vector(8),
        pick in any::<(prop::sample::Index, prop::sample::Index)>(),
        t in 0.0f64..=1.0,
    ) {
        let v = p.values();
        let (i, j) = (pick.0.index(v.len()), pick.1.index(v.len()));
        prop_assume!(i != j);
        // move a fraction of the gap from the larger entry to the smaller one
        let (hi, lo) = if v[i] >= v[j] { (i, j) } else { (j, i) };
        let delta = t * (v[hi] - v[lo]) / 2.0;
        let mut w = v.to_vec();
        w[hi] -= delta;
        w[lo] += delta;
        let q = ProbabilityVector::new(w).unwrap();
        prop_assert!(majorizes(&q, &p).unwrap());
        for order in [1.0, 2.0, 3.0] {
            prop_assert!(renyi(&q, order).unwrap() >= renyi(&p, order).unwrap() - 1e-12);
        }
    }

    #[test]
    fn eigensolver_recovers_planted_spectrum(n in 1usize..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_orthogonal(n, &mut rng);
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let a = Matrix::from_fn(n, n, |i, j| (0..n).map(|k| q.get(i, k) * d[k] * q.get(j, k)).sum());
        let a = SymMatrix::from_matrix(&a, 1e-9).unwrap();
        let got = jacobi_eigen(&a, DEFAULT_JACOBI_TOL).unwrap();
        let mut want = d.clone();
        want.sort_by(|x, y| y.total_cmp(x));
        for (g, w) in got.values().iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-9, "{g} vs {w}");
        }
        prop_assert!((got.sum() - a.trace()).abs() < 1e-9);
    }

    #[test]
    fn symmetric_laplacian_ignores_orientation(g in connected_graph(), seed in any::<u64>()) {
        let l = symmetric(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let sources: Vec<usize> = g
                .edges()
                .iter()
                .map(|&(i, j)| if rng.gen() { i } else { j })
                .collect();
            let s = incidence(&g, &sources).unwrap().normalized(&g).unwrap();
            prop_assert!(s.gram().max_abs_diff(&l).unwrap() < 1e-12);
        }
    }

    #[test]
    fn doubled_incidence_gram_is_twice_laplacian(g in connected_graph()) {
        let l2 = symmetric(&g).unwrap().scale(2.0);
        prop_assert!(doubled_incidence(&g).unwrap().gram().max_abs_diff(&l2).unwrap() < 1e-12);
    }

    #[test]
    fn laplacian_spectrum_in_unit_band(g in connected_graph()) {
        let l = symmetric(&g).unwrap();
        let spec = jacobi_eigen(&l, DEFAULT_JACOBI_TOL).unwrap();
        prop_assert!((spec.sum() - g.n() as f64).abs() < 1e-9);
        prop_assert!(spec.values()[0] <= 2.0 + 1e-9);
        prop_assert!(spec.values()[g.n() - 1].abs() < 1e-9);
    }

    #[test]
    fn product_states_have_pure_marginals(
        a in prop::collection::vec(-1.0f64..1.0, 2..5),
        b in prop::collection::vec(-1.0f64..1.0, 2..5),
    ) {
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm(&a) > 1e-3 && norm(&b) > 1e-3);
        let scale = 1.0 / (norm(&a) * norm(&b));
        let psi: Vec<f64> = kron_vec(&a, &b).iter().map(|x| x * scale).collect();
        for keep in [Keep::First, Keep::Second] {
            let rho = partial_trace_pure(&psi, (a.len(), b.len()), keep).unwrap();
            let spec = jacobi_eigen(&rho, DEFAULT_JACOBI_TOL).unwrap();
            prop_assert!((spec.values()[0] - 1.0).abs() < 1e-12);
            let p = ProbabilityVector::from_spectrum(&spec).unwrap();
            prop_assert!(von_neumann(&p).abs() < 1e-9);
        }
    }

    #[test]
    fn marginals_of_pure_state_share_spectrum(
        dims in (2usize..5, 2usize..5),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut psi: Vec<f64> = (0..dims.0 * dims.1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
        psi.iter_mut().for_each(|x| *x /= norm);
        let first = jacobi_eigen(&partial_trace_pure(&psi, dims, Keep::First).unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        let second = jacobi_eigen(&partial_trace_pure(&psi, dims, Keep::Second).unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        let (hf, hs) = (
            von_neumann(&ProbabilityVector::from_spectrum(&first).unwrap()),
            von_neumann(&ProbabilityVector::from_spectrum(&second).unwrap()),
        );
        prop_assert!((hf - hs).abs() < 1e-9);
    }

    #[test]
    fn edge_list_roundtrip(g in connected_graph()) {
        let back: Graph = g.to_edge_list().parse().unwrap();
        prop_assert_eq!(&back, &g);
        if let Some(mask) = g.bitmask() {
            prop_assert_eq!(Graph::from_bitmask(g.n(), mask).unwrap(), g);
        }
    }
}
