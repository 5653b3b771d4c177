//! Exact nullspace by fraction-free Gauss-Jordan elimination.

use rayon::prelude::*;
use rug::{Integer, Rational};

fn content(row: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for v in row {
        if *v != 0 {
            g.gcd_mut(v);
            if g == 1 {
                break;
            }
        }
    }
    g
}

fn make_primitive(row: &mut [Integer]) {
    let g = content(row);
    if g > 1 {
        for v in row.iter_mut() {
            if *v != 0 {
                v.div_exact_mut(&g);
            }
        }
    }
}

/// `row <- row * (p/g) - pivot_row * (f/g)` with `g = gcd(p, f)`, then primitive.
fn eliminate(row: &mut [Integer], pivot_row: &[Integer], col: usize) {
    let p = &pivot_row[col];
    let f = row[col].clone();
    let g = Integer::from(p.gcd_ref(&f));
    let pm = Integer::from(p.div_exact_ref(&g));
    let fm = Integer::from(f.div_exact_ref(&g));
    for (v, w) in row.iter_mut().zip(pivot_row.iter()) {
        if *v != 0 {
            *v *= &pm;
        }
        if *w != 0 {
            *v -= &fm * w;
        }
    }
    make_primitive(row);
}

fn is_zero_row(row: &[Integer]) -> bool {
    row.iter().all(|v| *v == 0)
}

/// Reduced row echelon form: returns the primitive pivot rows and their pivot columns.
///
/// The pivot in each column is the entry of largest absolute value, with the
/// lowest row index breaking ties, so the outcome is deterministic.
pub fn rref_integer(rows: Vec<Vec<Integer>>, ncols: usize) -> (Vec<Vec<Integer>>, Vec<usize>) {
    let mut m: Vec<Vec<Integer>> = rows
        .into_iter()
        .filter(|r| !is_zero_row(r))
        .map(|mut r| {
            make_primitive(&mut r);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..m.len() {
            if m[i][c] != 0 {
                best = match best {
                    Some(b) if m[b][c].cmp_abs(&m[i][c]) != std::cmp::Ordering::Less => Some(b),
                    _ => Some(i),
                };
            }
        }
        let Some(b) = best else { continue };
        m.swap(r, b);
        {
            let (top, bottom) = m.split_at_mut(r + 1);
            let prow = &top[r];
            bottom.par_iter_mut().for_each(|row| {
                if row[c] != 0 {
                    eliminate(row, prow, c);
                }
            });
        }
        let mut tail: Vec<Vec<Integer>> = m.split_off(r + 1);
        tail.retain(|row| !is_zero_row(row));
        m.extend(tail);
        if m[r][c] < 0 {
            for v in m[r].iter_mut() {
                *v = Integer::from(-&*v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    for i in (0..r).rev() {
        let c = pivots[i];
        let (top, bottom) = m.split_at_mut(i);
        let prow = &bottom[0];
        top.par_iter_mut().for_each(|row| {
            if row[c] != 0 {
                eliminate(row, prow, c);
            }
        });
    }
    for (row, &c) in m.iter_mut().zip(&pivots) {
        if row[c] < 0 {
            for v in row.iter_mut() {
                *v = Integer::from(-&*v);
            }
        }
    }
    (m, pivots)
}

/// Basis of the nullspace of an integer matrix as primitive integer vectors.
///
/// One vector per free column `f`, with `x_f` set and the other free
/// coordinates zero. Each vector is scaled so its first nonzero entry is positive.
pub fn nullspace_integer(rows: Vec<Vec<Integer>>, ncols: usize) -> Vec<Vec<Integer>> {
    let (rref, pivots) = rref_integer(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut l = Integer::from(1);
        for (row, &c) in rref.iter().zip(&pivots) {
            if row[f] != 0 {
                l.lcm_mut(&row[c]);
            }
        }
        let mut v = vec![Integer::new(); ncols];
        v[f] = l.clone();
        for (row, &c) in rref.iter().zip(&pivots) {
            if row[f] != 0 {
                let scale = Integer::from(l.div_exact_ref(&row[c]));
                v[c] = -Integer::from(&row[f] * &scale);
            }
        }
        make_primitive(&mut v);
        canonical_sign(&mut v);
        basis.push(v);
    }
    basis
}

/// Flips sign so the first nonzero entry is positive.
pub fn canonical_sign(v: &mut [Integer]) {
    if let Some(first) = v.iter().find(|x| **x != 0) {
        if *first < 0 {
            for x in v.iter_mut() {
                *x = Integer::from(-&*x);
            }
        }
    }
}

/// Basis of the nullspace of a rational matrix (rows scaled to integers first).
pub fn nullspace_rational(rows: &[Vec<Rational>]) -> Vec<Vec<Integer>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let int_rows = rows
        .iter()
        .map(|row| {
            let mut l = Integer::from(1);
            for v in row {
                l.lcm_mut(v.denom());
            }
            row.iter().map(|v| v.numer() * Integer::from(&l / v.denom())).collect()
        })
        .collect();
    nullspace_integer(int_rows, ncols)
}

/// Rank of an integer matrix.
pub fn rank_integer(rows: Vec<Vec<Integer>>, ncols: usize) -> usize {
    rref_integer(rows, ncols).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn rats(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn rank_one_matrix() {
        let ns = nullspace_rational(&[rats(&[1, 2]), rats(&[2, 4])]);
        assert_eq!(ns, vec![ints(&[2, -1])]);
    }

    #[test]
    fn second_difference_kernel() {
        let ns = nullspace_rational(&[rats(&[1, 1, 1]), rats(&[0, 1, 2])]);
        assert_eq!(ns, vec![ints(&[1, -2, 1])]);
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let ns = nullspace_rational(&[rats(&[1, 0]), rats(&[0, 1]), rats(&[1, 1])]);
        assert!(ns.is_empty());
    }

    #[test]
    fn rational_entries() {
        let row = vec![Rational::from((1, 2)), Rational::from((1, 3)), Rational::from(1)];
        let ns = nullspace_rational(std::slice::from_ref(&row));
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational = row.iter().zip(&v).map(|(a, b)| Rational::from(a * b)).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn basis_uses_free_columns() {
        // x0 + x2 = 0 ; x1 - x3 = 0
        let ns = nullspace_rational(&[rats(&[1, 0, 1, 0]), rats(&[0, 1, 0, -1])]);
        assert_eq!(ns, vec![ints(&[1, 0, -1, 0]), ints(&[0, 1, 0, 1])]);
    }
}
