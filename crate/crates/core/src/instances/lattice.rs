//! Integer-lattice helpers: row-style Hermite normal form, canonical coset
//! reduction against an HNF basis, nested-lattice transversals, and exact
//! rational solves.
//!
//! A lattice is stored as `(1/den)·rowspan_Z(rows)` where `rows` is the n×n
//! upper-triangular HNF of a full-rank integer matrix: positive diagonal and
//! `0 ≤ rows[i][j] < rows[j][j]` for `i < j`. Together with the gcd-reduced
//! denominator this is a canonical form, so structural equality is lattice
//! equality.

// index loops here mutate one row of a matrix while reading another; the
// iterator forms need split borrows and read worse
#![allow(clippy::needless_range_loop)]

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::system::CosetError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeHnf {
    den: BigInt,
    rows: Vec<Vec<BigInt>>,
}

/// Row-style HNF of a full-rank integer matrix (rows generate the lattice).
pub fn hnf_rows(mut work: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<Vec<BigInt>>, CosetError> {
    for col in 0..n {
        loop {
            // index of the row at or below the pivot with smallest nonzero |entry|
            let mut best: Option<usize> = None;
            for (r, row) in work.iter().enumerate().skip(col) {
                if row[col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if row[col].abs() < work[b][col].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(b) = best else {
                return Err(CosetError::Internal("rank-deficient lattice".into()));
            };
            work.swap(col, b);
            let mut others = false;
            for r in col + 1..work.len() {
                if work[r][col].is_zero() {
                    continue;
                }
                others = true;
                let q: BigInt = {
                    let a = &work[r][col];
                    let p = &work[col][col];
                    a.div_floor(p)
                };
                if !q.is_zero() {
                    for j in 0..n {
                        let t = &work[col][j] * &q;
                        work[r][j] -= t;
                    }
                }
            }
            if !others {
                break;
            }
        }
        if work[col][col].is_negative() {
            for j in 0..n {
                work[col][j] = -work[col][j].clone();
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for r in 0..col {
            let q = work[r][col].div_floor(&work[col][col]);
            if !q.is_zero() {
                for j in 0..n {
                    let t = &work[col][j] * &q;
                    work[r][j] -= t;
                }
            }
        }
    }
    for row in work.iter().skip(n) {
        if row.iter().any(|x| !x.is_zero()) {
            return Err(CosetError::Internal(
                "HNF left a nonzero trailing row".into(),
            ));
        }
    }
    work.truncate(n);
    Ok(work)
}

impl LatticeHnf {
    /// Build the canonical form of the lattice spanned by the given rational
    /// rows (at least `n` of them, full rank).
    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Result<Self, CosetError> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || rows.len() < n {
            return Err(CosetError::Internal("not enough lattice generators".into()));
        }
        let mut den = BigInt::one();
        for row in rows {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let scaled = x * BigRational::from_integer(den.clone());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        let hnf = hnf_rows(int_rows, n)?;
        Ok(Self::normalized(den, hnf))
    }

    fn normalized(den: BigInt, rows: Vec<Vec<BigInt>>) -> Self {
        let mut g = den.clone();
        for row in &rows {
            for x in row {
                g = g.gcd(x);
            }
        }
        if g.is_one() {
            return LatticeHnf { den, rows };
        }
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / &g).collect())
            .collect();
        LatticeHnf { den: den / g, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// The basis as rational row vectors.
    pub fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        let d = BigRational::from_integer(self.den.clone());
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()) / d.clone())
                    .collect()
            })
            .collect()
    }

    /// Covolume `Π diag / den^n` as a positive rational.
    pub fn covolume(&self) -> BigRational {
        let n = self.dim();
        let mut prod = BigInt::one();
        for (i, row) in self.rows.iter().enumerate() {
            prod *= &row[i];
        }
        let mut denpow = BigInt::one();
        for _ in 0..n {
            denpow *= &self.den;
        }
        BigRational::new(prod, denpow)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        let d = BigRational::from_integer(self.den.clone());
        let mut v: Vec<BigRational> = x.iter().map(|c| c * &d).collect();
        for i in 0..self.dim() {
            if !v[i].is_integer() {
                return false;
            }
            let q = &v[i] / BigRational::from_integer(self.rows[i][i].clone());
            if !q.is_integer() {
                return false;
            }
            for j in i..self.dim() {
                let t = &q * BigRational::from_integer(self.rows[i][j].clone());
                v[j] -= t;
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// Canonical representative of `x + L`: successive reduction against the
    /// triangular basis, landing in the fundamental box.
    pub fn reduce(&self, x: &[BigRational]) -> Vec<BigRational> {
        let d = BigRational::from_integer(self.den.clone());
        let mut v: Vec<BigRational> = x.iter().map(|c| c * &d).collect();
        for i in 0..self.dim() {
            let q = (&v[i] / BigRational::from_integer(self.rows[i][i].clone())).floor();
            if q.is_zero() {
                continue;
            }
            for j in i..self.dim() {
                let t = &q * BigRational::from_integer(self.rows[i][j].clone());
                v[j] -= t;
            }
        }
        v.into_iter().map(|c| c / d.clone()).collect()
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.rational_rows().iter().all(|row| other.contains(row))
    }

    /// `[sup : self]` for nested lattices.
    pub fn index_in(&self, sup: &Self) -> Result<u64, CosetError> {
        if !self.is_sublattice_of(sup) {
            return Err(CosetError::NotNested);
        }
        let ratio = self.covolume() / sup.covolume();
        if !ratio.is_integer() {
            return Err(CosetError::Internal(
                "nested lattices with non-integer index".into(),
            ));
        }
        u64::try_from(&ratio.to_integer()).map_err(|_| CosetError::TooLarge)
    }

    /// Canonical representatives (reduced against `self`) of the cosets of
    /// `self` partitioning `sup`, sorted; `cap` bounds the enumeration.
    pub fn transversal_in(
        &self,
        sup: &Self,
        cap: u64,
    ) -> Result<Vec<Vec<BigRational>>, CosetError> {
        let idx = self.index_in(sup)?;
        if idx > cap {
            return Err(CosetError::TooLarge);
        }
        let n = self.dim();
        // coordinates of self's basis in sup's basis: integer rows
        let coords: Vec<Vec<BigInt>> = self
            .rational_rows()
            .iter()
            .map(|row| sup.solve_coordinates(row))
            .collect::<Result<_, _>>()?;
        let box_rows = hnf_rows(coords, n)?;
        // odometer over the fundamental box of the coordinate lattice
        let mut digits = vec![BigInt::zero(); n];
        let mut out = Vec::with_capacity(idx as usize);
        loop {
            let mut point = vec![BigRational::zero(); n];
            let d = BigRational::from_integer(sup.den.clone());
            for (i, k) in digits.iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                let kq = BigRational::from_integer(k.clone());
                for j in 0..n {
                    let t = &kq * BigRational::from_integer(sup.rows[i][j].clone()) / d.clone();
                    point[j] += t;
                }
            }
            out.push(self.reduce(&point));
            // increment
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    debug_assert_eq!(out.len() as u64, idx);
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < box_rows[i][i] {
                    break;
                }
                digits[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    /// Integer coordinates of a lattice member `x` in this basis.
    fn solve_coordinates(&self, x: &[BigRational]) -> Result<Vec<BigInt>, CosetError> {
        let n = self.dim();
        let d = BigRational::from_integer(self.den.clone());
        let target: Vec<BigRational> = x.iter().map(|c| c * &d).collect();
        let mut k = vec![BigRational::zero(); n];
        for j in 0..n {
            let mut acc = target[j].clone();
            for (i, ki) in k.iter().enumerate().take(j) {
                acc -= ki * BigRational::from_integer(self.rows[i][j].clone());
            }
            k[j] = acc / BigRational::from_integer(self.rows[j][j].clone());
        }
        k.into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(CosetError::NotNested)
                }
            })
            .collect()
    }

    /// The lattice sum `self + other`.
    pub fn join(&self, other: &Self) -> Result<Self, CosetError> {
        let mut rows = self.rational_rows();
        rows.extend(other.rational_rows());
        Self::from_rational_rows(&rows)
    }

    /// The lattice scaled by a positive rational.
    pub fn scale(&self, k: &BigRational) -> Result<Self, CosetError> {
        let rows: Vec<Vec<BigRational>> = self
            .rational_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|c| c * k).collect())
            .collect();
        Self::from_rational_rows(&rows)
    }
}

/// Solve `A y = b` exactly over the rationals (square full-rank `A`).
pub fn solve_linear(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Result<Vec<BigRational>, CosetError> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(CosetError::NotInvertible)?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..=n {
                let t = &f * &m[col][j];
                m[r][j] -= t;
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}
