use crate::semifield::{MaxPlus, Rational, Scalar};
use crate::tropalg::TropMatrix;

/// Largest order accepted by [`max_cycle_mean`].
pub const MAX_CYCLE_DIM: usize = 8;

/// The largest mean weight over all elementary cycles of the digraph of `a`,
/// found by enumerating every cycle; `𝟘` for acyclic graphs.
///
/// Panics if `a` is not square or its order exceeds [`MAX_CYCLE_DIM`].
pub fn max_cycle_mean(a: &TropMatrix<MaxPlus>) -> Scalar<MaxPlus> {
    let n = a.rows();
    assert!(a.is_square() && n <= MAX_CYCLE_DIM, "max_cycle_mean needs a small square matrix");
    let mut best: Option<Rational> = None;
    let mut on_path = vec![false; n];
    // each cycle is found once, rooted at its smallest vertex
    for root in 0..n {
        on_path[root] = true;
        walk(a, root, root, Rational::from_integer(0), 1, &mut on_path, &mut best);
        on_path[root] = false;
    }
    best.map_or(Scalar::Bottom, Scalar::Finite)
}

fn walk(
    a: &TropMatrix<MaxPlus>,
    root: usize,
    at: usize,
    weight: Rational,
    len: i128,
    on_path: &mut [bool],
    best: &mut Option<Rational>,
) {
    for next in root..a.rows() {
        let Scalar::Finite(w) = a.get(at, next) else {
            continue;
        };
        if next == root {
            let mean = (weight + w) / Rational::from_integer(len);
            if best.map_or(true, |b| mean > b) {
                *best = Some(mean);
            }
        } else if !on_path[next] {
            on_path[next] = true;
            walk(a, root, next, weight + w, len + 1, on_path, best);
            on_path[next] = false;
        }
    }
}
