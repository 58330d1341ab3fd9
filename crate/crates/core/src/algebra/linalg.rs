use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Rat};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn new(cols: usize) -> Self {
        Matrix { cols, rows: Vec::new() }
    }

    /// # Panics
    /// If a row has the wrong length.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { cols, rows }
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.rows.push(row);
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Clears denominators row by row.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let l = r.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                r.iter().map(|c| c.numer() * (&l / c.denom())).collect()
            })
            .collect()
    }
}

/// Some solution of `a x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.num_rows(), b.len(), "right-hand side length");
    let n = a.cols;
    let mut rows: Vec<Vec<Rat>> = a.rows.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=n {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = alloc::vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Fraction-free (Bareiss) row echelon form. Returns pivot columns; the
/// rows are left in echelon order with integer entries.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        // Entries left of the pivot in row r are already zero.
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.integer_rows();
    bareiss_echelon(&mut a, m.cols).len()
}

/// A nonzero `v` with `m v = 0`, or `None` when the nullspace is trivial.
///
/// The first free column is set to 1, later free columns to 0, and the
/// result is scaled to a primitive integer vector whose first nonzero
/// entry is positive, so the output is a deterministic function of `m`.
pub fn nullspace_vector(m: &Matrix) -> Option<Vec<Rat>> {
    let mut a = m.integer_rows();
    let pivots = bareiss_echelon(&mut a, m.cols);
    let free = (0..m.cols).find(|c| !pivots.contains(c))?;
    let mut x = alloc::vec![Rat::zero(); m.cols];
    x[free] = Rat::one();
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut s = Rat::zero();
        for j in pc + 1..m.cols {
            if !x[j].is_zero() && !a[r][j].is_zero() {
                s += Rat::from_integer(a[r][j].clone()) * &x[j];
            }
        }
        x[pc] = -s / Rat::from_integer(a[r][pc].clone());
    }
    Some(primitive(x))
}

fn primitive(v: Vec<Rat>) -> Vec<Rat> {
    let l = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|c| Rat::from_integer(c / &g * &sign)).collect()
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rat(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] -= d;
            }
        }
        det *= pivot;
    }
    det
}

/// Determinant of a square matrix of polynomials (all of one arity).
///
/// Small matrices use expansion by minors memoized over column subsets;
/// larger ones use Bareiss elimination with exact polynomial division.
pub fn det_poly(a: &[Vec<MultiPoly>], arity: usize) -> MultiPoly {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return MultiPoly::one(arity);
    }
    if n <= 10 {
        det_minors(a, arity)
    } else {
        det_bareiss(a.to_vec(), arity)
    }
}

// Laplace expansion along rows, memoized on the set of used columns.
fn det_minors(a: &[Vec<MultiPoly>], arity: usize) -> MultiPoly {
    let n = a.len();
    // minors[mask] = det of rows (n - |mask|)..n restricted to columns in mask.
    let mut minors: Vec<Option<MultiPoly>> = alloc::vec![None; 1 << n];
    minors[0] = Some(MultiPoly::one(arity));
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = MultiPoly::zero(arity);
        let mut position = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &a[row][col];
            if !entry.is_zero() {
                let sub = minors[mask & !(1 << col)].as_ref().expect("filled");
                if !sub.is_zero() {
                    let t = entry * sub;
                    if position % 2 == 0 {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
            }
            position += 1;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

fn det_bareiss(mut a: Vec<Vec<MultiPoly>>, arity: usize) -> MultiPoly {
    let n = a.len();
    let mut prev = MultiPoly::one(arity);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero(arity);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn solve_examples() {
        use super::super::int;
        let a = Matrix::from_rows(3, alloc::vec![[1, 2, 0].map(int).to_vec(), [0, 1, 1].map(int).to_vec()]);
        let x = solve(&a, &[int(5), int(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), [int(5), int(2)]);
        let dup = Matrix::from_rows(2, alloc::vec![[1, 1].map(int).to_vec(), [2, 2].map(int).to_vec()]);
        assert_eq!(solve(&dup, &[int(1), int(3)]), None);
        assert!(solve(&dup, &[int(1), int(2)]).is_some());
    }

    use super::super::{int, rat};
    use super::*;
    use alloc::vec;

    fn m(cols: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn nullspace_examples() {
        let v = nullspace_vector(&m(2, &[&[1, 1]])).unwrap();
        assert_eq!(v, vec![int(1), int(-1)]);
        assert_eq!(nullspace_vector(&m(2, &[&[1, 0], &[0, 1]])), None);
        // Degree <= 1 monomials (1, x, y) at (0,0), (1,0), (0,1).
        assert_eq!(nullspace_vector(&m(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]])), None);
    }

    #[test]
    fn nullspace_of_wide_matrix_is_annihilated() {
        let a = Matrix::from_rows(
            4,
            vec![
                vec![rat(1, 2), int(3), int(-1), rat(2, 3)],
                vec![int(2), rat(-5, 7), int(0), int(1)],
            ],
        );
        let v = nullspace_vector(&a).unwrap();
        assert!(v.iter().any(|c| !c.is_zero()));
        assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let a = m(3, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(rank(&a), 2);
        let v = nullspace_vector(&a).unwrap();
        assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinants_agree() {
        let rows = vec![vec![int(2), int(-1), int(0)], vec![int(1), int(3), int(4)], vec![int(0), int(5), int(-2)]];
        let d = det_rat(rows.clone());
        assert_eq!(d, int(-54));
        let poly_rows: Vec<Vec<MultiPoly>> =
            rows.iter().map(|r| r.iter().map(|c| MultiPoly::constant(1, c.clone())).collect()).collect();
        assert_eq!(det_poly(&poly_rows, 1), MultiPoly::constant(1, d.clone()));
        assert_eq!(det_bareiss(poly_rows, 1), MultiPoly::constant(1, d));
    }

    #[test]
    fn symbolic_determinant_paths_agree() {
        // Symmetric Toeplitz matrix with polynomial entries.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let one = MultiPoly::one(2);
        let entries = [x.clone(), &y + &one, &x * &y, &one - &x];
        let n = 5;
        let a: Vec<Vec<MultiPoly>> =
            (0..n).map(|i: usize| (0..n).map(|j: usize| entries[i.abs_diff(j) % 4].clone()).collect()).collect();
        assert_eq!(det_minors(&a, 2), det_bareiss(a.clone(), 2));
    }
}
