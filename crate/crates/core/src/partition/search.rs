//! Floating-point search for simultaneous bisectors.
//!
//! Candidates found here are only proposals: the caller converts them to
//! exact coefficients and re-verifies the bisection predicate.

use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::SearchBudget;

/// Lifted points (with a trailing 1) in scaled floating coordinates.
pub(super) struct FloatLifted {
    pub dim: usize,
    class_of: Vec<usize>,
    vectors: Vec<Vec<f64>>,
    halves: Vec<usize>,
    members: Vec<Vec<usize>>,
}

/// `(excess over the half bounds, points at zero)`.
type Score = (usize, usize);

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FloatLifted {
    pub fn new(classes: &[Vec<Vec<crate::algebra::Rat>>]) -> Self {
        let mut class_of = Vec::new();
        let mut vectors = Vec::new();
        let mut members = Vec::new();
        let mut dim = 0;
        for (c, pts) in classes.iter().enumerate() {
            let mut m = Vec::new();
            for v in pts {
                let mut f: Vec<f64> = v.iter().map(|x| x.to_f64().expect("finite")).collect();
                f.push(1.0);
                dim = f.len();
                m.push(vectors.len());
                vectors.push(f);
                class_of.push(c);
            }
            members.push(m);
        }
        FloatLifted { dim, class_of, vectors, halves: classes.iter().map(|c| c.len().div_ceil(2)).collect(), members }
    }

    fn values(&self, coef: &[f64]) -> Vec<f64> {
        self.vectors.iter().map(|v| dot(v, coef)).collect()
    }

    fn score_values(&self, values: &[f64]) -> Score {
        let k = self.halves.len();
        let (mut pos, mut neg, mut zero) = (alloc::vec![0usize; k], alloc::vec![0usize; k], 0);
        for (v, &c) in values.iter().zip(&self.class_of) {
            if *v > 0.0 {
                pos[c] += 1;
            } else if *v < 0.0 {
                neg[c] += 1;
            } else {
                zero += 1;
            }
        }
        (self.excess(&pos, &neg), zero)
    }

    fn excess(&self, pos: &[usize], neg: &[usize]) -> usize {
        self.halves
            .iter()
            .enumerate()
            .map(|(c, &h)| pos[c].saturating_sub(h) + neg[c].saturating_sub(h))
            .sum()
    }

    fn score(&self, coef: &[f64]) -> Score {
        self.score_values(&self.values(coef))
    }

    /// Minimal-norm correction putting zero at the median of every class.
    fn median_step(&self, coef: &[f64]) -> Option<Vec<f64>> {
        let values = self.values(coef);
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for m in self.members.iter().filter(|m| m.len() >= 2) {
            let mut m = m.clone();
            m.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            let c = m.len();
            rows.push(if c % 2 == 0 {
                let (a, b) = (&self.vectors[m[c / 2 - 1]], &self.vectors[m[c / 2]]);
                a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect()
            } else {
                self.vectors[m[c / 2]].clone()
            });
        }
        let rhs: Vec<f64> = rows.iter().map(|r| -dot(r, coef)).collect();
        let gram: Vec<Vec<f64>> = rows.iter().map(|r| rows.iter().map(|q| dot(r, q)).collect()).collect();
        let y = solve_dense(gram, rhs)?;
        Some((0..self.dim).map(|j| rows.iter().zip(&y).map(|(r, yi)| r[j] * yi).sum()).collect())
    }

    /// Best strictly-between step along `dir`, by a sweep over the
    /// parameters where points change side.
    fn line_search(&self, coef: &[f64], dir: &[f64]) -> Option<(Score, f64)> {
        let g = self.values(coef);
        let h = self.values(dir);
        let k = self.halves.len();
        let (mut pos, mut neg, mut zero) = (alloc::vec![0usize; k], alloc::vec![0usize; k], 0usize);
        let mut events: Vec<(f64, usize)> = Vec::new();
        for i in 0..g.len() {
            let c = self.class_of[i];
            let lead = if h[i] == 0.0 { g[i] } else { -h[i] };
            if lead > 0.0 {
                pos[c] += 1;
            } else if lead < 0.0 {
                neg[c] += 1;
            } else {
                zero += 1;
            }
            if h[i] != 0.0 {
                events.push((-g[i] / h[i], i));
            }
        }
        if events.is_empty() {
            return None;
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = ((self.excess(&pos, &neg), zero), events[0].0 - 1.0);
        let mut k = 0;
        while k < events.len() {
            let t = events[k].0;
            let mut end = k;
            while end < events.len() && events[end].0 == t {
                let i = events[end].1;
                let c = self.class_of[i];
                if h[i] > 0.0 {
                    neg[c] -= 1;
                    pos[c] += 1;
                } else {
                    pos[c] -= 1;
                    neg[c] += 1;
                }
                end += 1;
            }
            let next = events.get(end).map_or(t + 1.0, |(u, _)| (t + u) / 2.0);
            let score = (self.excess(&pos, &neg), zero);
            if score < best.0 || (score == best.0 && next.abs() < best.1.abs()) {
                best = (score, next);
            }
            k = end;
        }
        Some(best)
    }
}

/// Gaussian elimination with partial pivoting; `None` if near-singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() <= scale * 1e-13 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
            b[i] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn normalized(v: Vec<f64>) -> Option<Vec<f64>> {
    let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (m > 0.0 && m.is_finite()).then(|| v.into_iter().map(|x| x / m).collect())
}

/// Seeded search: median iteration from random starts, then line searches
/// along coordinate, median and random directions. Yields candidates with
/// zero excess and no point on the hyperplane.
pub(super) fn search(lifted: &FloatLifted, rng: &mut ChaCha8Rng, budget: &SearchBudget) -> Option<Vec<f64>> {
    let dim = lifted.dim;
    for _ in 0..budget.restarts {
        let mut coef = random_vector(rng, dim);
        let mut score = lifted.score(&coef);
        for _ in 0..budget.passes {
            if score == (0, 0) {
                break;
            }
            let Some(next) = lifted.median_step(&coef).and_then(|d| normalized(coef.iter().zip(&d).map(|(c, x)| c + x).collect())) else {
                break;
            };
            coef = next;
            score = lifted.score(&coef);
        }
        for _ in 0..budget.passes {
            if score == (0, 0) {
                break;
            }
            let mut dirs: Vec<Vec<f64>> =
                (0..dim).map(|j| (0..dim).map(|k| if k == j { 1.0 } else { 0.0 }).collect()).collect();
            dirs.extend((0..budget.random_directions).map(|_| random_vector(rng, dim)));
            dirs.shuffle(rng);
            if let Some(d) = lifted.median_step(&coef) {
                dirs.insert(0, d);
            }
            let before = score;
            for dir in &dirs {
                if let Some((s, t)) = lifted.line_search(&coef, dir) {
                    if s < score {
                        if let Some(next) = normalized(coef.iter().zip(dir).map(|(c, d)| c + t * d).collect()) {
                            coef = next;
                            score = s;
                        }
                    }
                }
                if score == (0, 0) {
                    break;
                }
            }
            if score >= before {
                break;
            }
        }
        if score == (0, 0) && coef[..dim - 1].iter().any(|c| *c != 0.0) {
            return Some(coef);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_solver() {
        let x = solve_dense(alloc::vec![alloc::vec![2.0, 1.0], alloc::vec![1.0, 3.0]], alloc::vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve_dense(alloc::vec![alloc::vec![1.0, 2.0], alloc::vec![2.0, 4.0]], alloc::vec![1.0, 2.0]).is_none());
    }
}
