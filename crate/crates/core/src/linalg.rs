//! Affine subspaces of `Q^n`, stored as reduced row echelon equations.
//!
//! The reduced form is unique, so two subspaces are equal exactly when their
//! equation rows are equal.

use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSpace {
    dim: usize,
    /// Rows `[a_1 .. a_n | c]` meaning `a · z = c`, in reduced echelon form.
    rows: Vec<Vec<Rational>>,
}

impl AffineSpace {
    /// All of `Q^n`.
    pub fn full(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    /// The solutions of `a · z = c` for each `(a, c)`, or `None` if inconsistent.
    pub fn from_equations(dim: usize, equations: Vec<(Vec<Rational>, Rational)>) -> Option<Self> {
        let rows = equations
            .into_iter()
            .map(|(mut a, c)| {
                assert_eq!(a.len(), dim, "equation has wrong length");
                a.push(c);
                a
            })
            .collect();
        Self { dim, rows }.reduce()
    }

    fn reduce(mut self) -> Option<Self> {
        let n = self.dim;
        let mut rows = std::mem::take(&mut self.rows);
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = rows[rank][col].recip();
            for v in rows[rank].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for k in col..=n {
                        let d = &f * &rows[rank][k];
                        rows[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        if rows[rank..].iter().any(|r| !r[n].is_zero()) {
            return None;
        }
        rows.truncate(rank);
        self.rows = rows;
        Some(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the solution set.
    pub fn dimension(&self) -> usize {
        self.dim - self.rank()
    }

    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn intersect(&self, other: &AffineSpace) -> Option<AffineSpace> {
        assert_eq!(self.dim, other.dim);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self {
            dim: self.dim,
            rows,
        }
        .reduce()
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|v| !v.is_zero()).expect("reduced rows are nonzero"))
            .collect()
    }

    pub fn free_variables(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.dim).filter(|c| !pivots.contains(c)).collect()
    }

    /// The unique point when the dimension is zero.
    pub fn point(&self) -> Option<Vec<Rational>> {
        (self.dimension() == 0).then(|| self.at(&[]))
    }

    /// The point whose free coordinates take the given values.
    pub fn at(&self, free_values: &[Rational]) -> Vec<Rational> {
        let free = self.free_variables();
        assert_eq!(free.len(), free_values.len());
        let mut z = vec![Rational::zero(); self.dim];
        for (c, v) in free.iter().zip(free_values) {
            z[*c] = v.clone();
        }
        for (row, pc) in self.rows.iter().zip(self.pivots()) {
            let mut v = row[self.dim].clone();
            for c in &free {
                v -= &row[*c] * &z[*c];
            }
            z[pc] = v;
        }
        z
    }

    /// Base point (free coordinates zero) and one direction per free coordinate.
    pub fn parametric(&self) -> (Vec<Rational>, Vec<Vec<Rational>>) {
        let free = self.free_variables();
        let base = self.at(&vec![Rational::zero(); free.len()]);
        let directions = (0..free.len())
            .map(|i| {
                let mut e = vec![Rational::zero(); free.len()];
                e[i] = Rational::one();
                let p = self.at(&e);
                p.iter().zip(&base).map(|(a, b)| a - b).collect()
            })
            .collect();
        (base, directions)
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: Rational = r[..self.dim].iter().zip(z).map(|(a, b)| a * b).sum();
            lhs == r[self.dim]
        })
    }

    /// The image `{T z}` for an invertible `T`, given `T⁻¹`.
    pub fn image_under(&self, t_inverse: &[Vec<Rational>]) -> AffineSpace {
        let n = self.dim;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: Vec<Rational> = (0..n)
                    .map(|j| (0..n).map(|k| &r[k] * &t_inverse[k][j]).sum())
                    .collect();
                out.push(r[n].clone());
                out
            })
            .collect();
        Self { dim: n, rows }.reduce().expect("image of a nonempty space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn unique_solution() {
        let s = AffineSpace::from_equations(
            2,
            vec![(v(&[1, 1]), int(3)), (v(&[1, -1]), int(1))],
        )
        .unwrap();
        assert_eq!(s.point(), Some(v(&[2, 1])));
    }

    #[test]
    fn inconsistent_system() {
        assert!(AffineSpace::from_equations(
            2,
            vec![(v(&[1, 1]), int(3)), (v(&[2, 2]), int(5))]
        )
        .is_none());
    }

    #[test]
    fn family_and_intersection() {
        let line = AffineSpace::from_equations(3, vec![(v(&[1, -1, 0]), int(1))]).unwrap();
        assert_eq!(line.dimension(), 2);
        let (base, dirs) = line.parametric();
        assert!(line.contains(&base));
        assert_eq!(dirs.len(), 2);
        let plane = AffineSpace::from_equations(3, vec![(v(&[0, 0, 2]), int(1))]).unwrap();
        let both = line.intersect(&plane).unwrap();
        assert_eq!(both.dimension(), 1);
        assert!(both.contains(&[rat(3, 2), rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = AffineSpace::from_equations(2, vec![(v(&[2, 4]), int(2))]).unwrap();
        let b = AffineSpace::from_equations(2, vec![(v(&[-1, -2]), int(-1))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn image_of_point() {
        let s = AffineSpace::from_equations(2, vec![(v(&[1, 0]), int(1)), (v(&[0, 1]), int(2))])
            .unwrap();
        // T = swap, self-inverse
        let t = vec![v(&[0, 1]), v(&[1, 0])];
        assert_eq!(s.image_under(&t).point(), Some(v(&[2, 1])));
    }
}
