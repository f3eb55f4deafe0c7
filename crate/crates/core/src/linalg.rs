//! Dense matrices over a prime field.

use std::fmt;

use crate::prime::Prime;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of residues; entries are reduced mod `p`.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = FpMatrix::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has the wrong length");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % p.get());
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p.as_u64();
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u64 * other.get(k, j) as u64) % p;
                }
                out.set(i, j, acc as u32);
            }
        }
        out
    }

    /// `self - other`.
    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p.get();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let p = self.p.as_u64();
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..m.cols {
                    let (a, b) = (m.get(pivot, j), m.get(rank, j));
                    m.set(pivot, j, b);
                    m.set(rank, j, a);
                }
            }
            let inv = inverse_mod(m.get(rank, col) as u64, p);
            for j in col..m.cols {
                m.set(rank, j, (m.get(rank, j) as u64 * inv % p) as u32);
            }
            for r in 0..m.rows {
                let f = m.get(r, col) as u64;
                if r == rank || f == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = (m.get(r, j) as u64 + p - f * m.get(rank, j) as u64 % p) % p;
                    m.set(r, j, v as u32);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2).
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix over F_{} ({}x{})",
            self.p, self.rows, self.cols
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn small_ranks() {
        let p = pr(2);
        let m = FpMatrix::from_rows(p, 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(FpMatrix::identity(p, 3).rank(), 3);
        assert_eq!(FpMatrix::zeros(p, 2, 4).rank(), 0);
        let m = FpMatrix::from_rows(pr(3), 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        // Row 2 = 2 * row 1 mod 3.
        assert_eq!(m.rank(), 2);
        assert_eq!(FpMatrix::zeros(p, 0, 3).rank(), 0);
    }

    #[test]
    fn inverse_mod_is_inverse() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a * inverse_mod(a, p) % p, 1);
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, usize, usize, Vec<u32>)> {
        (
            prop::sample::select(vec![2u64, 3, 5, 7]),
            0usize..6,
            0usize..6,
        )
            .prop_flat_map(|(p, r, c)| {
                (
                    Just(p),
                    Just(r),
                    Just(c),
                    prop::collection::vec(0u32..(p as u32), r * c),
                )
            })
    }

    fn make(p: u64, r: usize, c: usize, v: &[u32]) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect();
        FpMatrix::from_rows(pr(p), c, &rows)
    }

    proptest! {
        #[test]
        fn rank_bounded((p, r, c, v) in arb_matrix()) {
            let m = make(p, r, c, &v);
            prop_assert!(m.rank() <= r.min(c));
        }

        #[test]
        fn rank_invariant_under_row_and_column_permutations(
            (p, r, c, v, row_order, col_order) in arb_matrix().prop_flat_map(|(p, r, c, v)| {
                let rows: Vec<usize> = (0..r).collect();
                let cols: Vec<usize> = (0..c).collect();
                (Just(p), Just(r), Just(c), Just(v), Just(rows).prop_shuffle(), Just(cols).prop_shuffle())
            }),
        ) {
            let m = make(p, r, c, &v);
            let rows: Vec<Vec<u32>> = row_order
                .iter()
                .map(|&i| col_order.iter().map(|&j| m.get(i, j)).collect())
                .collect();
            let shuffled = FpMatrix::from_rows(pr(p), c, &rows);
            prop_assert_eq!(shuffled.rank(), m.rank());
        }

        #[test]
        fn rank_of_product_bounded((p, r, c, v) in arb_matrix()) {
            let m = make(p, r, c, &v);
            let id = FpMatrix::identity(pr(p), c);
            prop_assert_eq!(m.mul(&id), m.clone());
            prop_assert_eq!(m.vstack(&m).rank(), m.rank());
        }
    }
}
