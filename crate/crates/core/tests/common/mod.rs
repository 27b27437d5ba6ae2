//! Dense reference implementations used as independent oracles.
#![allow(dead_code)]

use fractal_pst::{GrowthSpec, JacobiChain, LayeredGraph};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Spec entries drawn for the mixed-parameter family.
pub const FAMILY_BRANCHING: [usize; 3] = [1, 2, 3];
pub const FAMILY_SEGMENTING: [usize; 2] = [2, 3];
pub const FAMILY_SEED: u64 = 20_240_611;

pub fn family() -> Vec<GrowthSpec> {
    let mut rng = fractal_pst::suite::rng(FAMILY_SEED);
    (0..20)
        .map(|_| {
            fractal_pst::suite::random_growth_spec(&mut rng, 3, &FAMILY_BRANCHING, &FAMILY_SEGMENTING)
        })
        .collect()
}

/// `P` as an `(N+1) x |V|` matrix: row `n` averages layer `n`.
pub fn p_matrix(g: &LayeredGraph) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(g.n() + 1, g.node_count());
    for x in 0..g.node_count() {
        let n = g.layer(x);
        p[(n, x)] = 1.0 / g.layer_size(n) as f64;
    }
    p
}

/// `P*` as a `|V| x (N+1)` 0/1 matrix.
pub fn p_star_matrix(g: &LayeredGraph) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(g.node_count(), g.n() + 1);
    for x in 0..g.node_count() {
        p[(x, g.layer(x))] = 1.0;
    }
    p
}

/// The lift written out entry by entry from the graph's edge list.
pub fn lift_dense(c: &JacobiChain, g: &LayeredGraph) -> DMatrix<f64> {
    let mut h = DMatrix::zeros(g.node_count(), g.node_count());
    for x in 0..g.node_count() {
        h[(x, x)] = c.diagonal()[g.layer(x)];
    }
    for &(a, b) in g.edges() {
        let (lo, hi) = if g.layer(a) < g.layer(b) { (a, b) } else { (b, a) };
        let j = c.couplings()[g.layer(lo)];
        let up = g.edges().iter().filter(|&&(u, v)| u == lo || v == lo).filter(|&&(u, v)| {
            let other = if u == lo { v } else { u };
            g.layer(other) > g.layer(lo)
        });
        let down = g.edges().iter().filter(|&&(u, v)| u == hi || v == hi).filter(|&&(u, v)| {
            let other = if u == hi { v } else { u };
            g.layer(other) < g.layer(hi)
        });
        h[(lo, hi)] = j / up.count() as f64;
        h[(hi, lo)] = j / down.count() as f64;
    }
    h
}

pub fn chain_dense(c: &JacobiChain) -> DMatrix<f64> {
    let n = c.sites();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c.diagonal()[i];
    }
    for (i, &j) in c.couplings().iter().enumerate() {
        m[(i, i + 1)] = j;
        m[(i + 1, i)] = j;
    }
    m
}

/// `exp(i t M)` by Taylor series with scaling and squaring.
pub fn expm_i(m: &DMatrix<f64>, t: f64) -> CMatrix {
    let a: CMatrix = m.map(|v| Complex64::new(0.0, t * v));
    let norm = a.iter().map(|z| z.norm()).fold(0.0, f64::max) * a.nrows() as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * Complex64::new(scale, 0.0);
    let n = a.nrows();
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &a * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| Complex64::new(v, 0.0))
}

/// Largest column 2-norm of `a - b`.
pub fn max_column_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    let d = a - b;
    d.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn max_entry_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}
