//! Exact integer linear algebra for the feasibility core.
//!
//! A [`RowSpace`] holds the row space of a homogeneous integer system in
//! reduced echelon form. Rows are kept primitive (content 1, positive pivot),
//! and elimination is fraction-free: rows are cross-multiplied through the
//! gcd, so every intermediate value stays an exact integer. The systems here
//! are tiny (at most ~20 edges over ~30 unknowns) and coefficients start at
//! 0/±1, so `i128` has enormous headroom.

use num_integer::Integer;

/// Row space of integer linear functionals over columns `0..width`.
#[derive(Debug, Clone)]
pub struct RowSpace {
    width: usize,
    /// Reduced echelon rows, sorted by pivot column; each row is primitive
    /// with a positive pivot, and pivot columns are cleared in all other rows.
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

fn content(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |acc, &x| acc.gcd(&x))
}

fn normalize(row: &mut [i128]) {
    let g = content(row);
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
    if let Some(&lead) = row.iter().find(|&&x| x != 0) {
        if lead < 0 {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
    }
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates all pivot columns from `row` in place.
    fn reduce(&self, row: &mut [i128]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let a = row[p];
            if a == 0 {
                continue;
            }
            let b = r[p]; // positive
            let g = a.gcd(&b);
            let (ma, mb) = (b / g, a / g);
            for (x, &y) in row.iter_mut().zip(r.iter()) {
                *x = *x * ma - y * mb;
            }
        }
    }

    /// Adds a functional to the span. Returns `false` if it was already implied.
    pub fn add(&mut self, mut row: Vec<i128>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        self.reduce(&mut row);
        normalize(&mut row);
        let Some(pivot) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        // clear the new pivot column from existing rows
        for r in self.rows.iter_mut() {
            let a = r[pivot];
            if a == 0 {
                continue;
            }
            let b = row[pivot];
            let g = a.gcd(&b);
            let (ma, mb) = (b / g, a / g);
            for (x, &y) in r.iter_mut().zip(row.iter()) {
                *x = *x * ma - y * mb;
            }
            normalize(r);
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        true
    }

    /// Does the functional lie in the row space? Equivalently: does it vanish
    /// identically on the solution space of the system?
    pub fn contains(&self, row: &[i128]) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let mut tmp = row.to_vec();
        self.reduce(&mut tmp);
        tmp.iter().all(|&x| x == 0)
    }

    /// Does `e_a - e_b` vanish on the solution space?
    pub fn difference_vanishes(&self, a: usize, b: usize) -> bool {
        let mut row = vec![0i128; self.width];
        row[a] = 1;
        row[b] = -1;
        self.contains(&row)
    }

    /// Integer-scaled basis of the solution space (null space), one vector per
    /// free column, in ascending free-column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<i128>> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let scale = self
            .rows
            .iter()
            .zip(&self.pivots)
            .fold(1i128, |acc, (r, &p)| acc.lcm(&r[p]));
        let mut basis = Vec::new();
        for f in 0..self.width {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![0i128; self.width];
            v[f] = scale;
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                // r[p] * v[p] + r[f] * scale = 0
                v[p] = -r[f] * (scale / r[p]);
            }
            let g = content(&v);
            if g > 1 {
                for x in v.iter_mut() {
                    *x /= g;
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_forced_equalities() {
        // x0 + x1 - s = 0 and x1 + x2 - s = 0 force x0 = x2
        let mut space = RowSpace::new(4);
        assert!(space.add(vec![1, 1, 0, -1]));
        assert!(space.add(vec![0, 1, 1, -1]));
        assert!(space.difference_vanishes(0, 2));
        assert!(!space.difference_vanishes(0, 1));
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let mut space = RowSpace::new(3);
        assert!(space.add(vec![2, -2, 0]));
        assert!(!space.add(vec![-3, 3, 0]));
        assert_eq!(space.rank(), 1);
    }

    #[test]
    fn nullspace_is_orthogonal_to_rows() {
        let mut space = RowSpace::new(5);
        space.add(vec![1, 1, 0, 0, -1]);
        space.add(vec![0, 1, 1, 0, -1]);
        space.add(vec![1, 0, 0, 1, -1]);
        let basis = space.nullspace_basis();
        assert_eq!(basis.len(), 5 - 3);
        let rows = [[1i128, 1, 0, 0, -1], [0, 1, 1, 0, -1], [1, 0, 0, 1, -1]];
        for v in &basis {
            for row in &rows {
                let dot: i128 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn c4_two_class_pattern_forces_opposite_vertices_equal() {
        // C_4 edges 01,12,23,30 alternately colored with sums s0, s1:
        // x0+x1=s0, x1+x2=s1, x2+x3=s0, x3+x0=s1 forces x0=x2 and x1=x3.
        let mut space = RowSpace::new(6);
        space.add(vec![1, 1, 0, 0, -1, 0]);
        space.add(vec![0, 1, 1, 0, 0, -1]);
        space.add(vec![0, 0, 1, 1, -1, 0]);
        space.add(vec![1, 0, 0, 1, 0, -1]);
        assert!(space.difference_vanishes(0, 2));
        assert!(space.difference_vanishes(1, 3));
        // and the two class sums collapse as well
        assert!(space.difference_vanishes(4, 5));
    }
}
