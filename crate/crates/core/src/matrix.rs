//! Matrices of polynomials and their minor-based invariants: rank,
//! determinants, the gcd `d_i` of all `i x i` minors, and (column) reduced
//! minors.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grobner::ModuleElement;
use crate::poly::{gcd, MonomialOrder, Polynomial, Vars};

/// Dense rectangular matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Precondition("matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        let vars = rows[0][0].vars().clone();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::Precondition("matrix rows have unequal lengths".into()));
            }
            for p in r {
                if !p.vars().same(&vars) {
                    return Err(Error::VariableMismatch {
                        left: vars.to_string(),
                        right: p.vars().to_string(),
                    });
                }
                entries.push(p.clone());
            }
        }
        Ok(PolyMatrix { vars, rows: rows.len(), cols, entries })
    }

    pub fn from_elements(elems: &[ModuleElement]) -> Result<Self> {
        Self::from_rows(elems.iter().map(|e| e.coords().to_vec()).collect())
    }

    pub fn zero(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zero(vars, n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Polynomial::one(vars);
        }
        m
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> ModuleElement {
        ModuleElement::new((0..self.cols).map(|c| self.entry(r, c).clone()).collect())
            .expect("nonempty row")
    }

    pub fn row_elements(&self) -> Vec<ModuleElement> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut m = Self::zero(&self.vars, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.entry_mut(c, r) = self.entry(r, c).clone();
            }
        }
        m
    }

    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> PolyMatrix {
        let mut m = Self::zero(&self.vars, rs.len(), cs.len());
        for (i, &r) in rs.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                *m.entry_mut(i, j) = self.entry(r, c).clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                lr: self.rows,
                lc: self.cols,
                rr: other.rows,
                rc: other.cols,
            });
        }
        if !self.vars.same(&other.vars) {
            return Err(Error::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        let mut out = Self::zero(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.vars);
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.entry(i, k).checked_mul(other.entry(k, j))?)?;
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Determinant by Laplace expansion memoized on column subsets.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let full: u64 = if self.cols == 64 { u64::MAX } else { (1u64 << self.cols) - 1 };
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        Ok(self.det_rec(full, 0, &mut memo))
    }

    fn det_rec(&self, mask: u64, row: usize, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if row == self.rows {
            return Polynomial::one(&self.vars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.vars);
        let mut sign_pos = true;
        for c in 0..self.cols {
            if mask & (1 << c) == 0 {
                continue;
            }
            let e = self.entry(row, c);
            if !e.is_zero() {
                let sub = self.det_rec(mask & !(1 << c), row + 1, memo);
                let term = e.checked_mul(&sub).expect("vars");
                acc = if sign_pos {
                    acc.checked_add(&term).expect("vars")
                } else {
                    acc.checked_sub(&term).expect("vars")
                };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Fraction-free Bareiss determinant, kept as an independent route for
    /// cross-checking `det`.
    pub fn det_bareiss(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let order = MonomialOrder::DegRevLex;
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut sign_pos = true;
        let mut prev = Polynomial::one(&self.vars);
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign_pos = !sign_pos;
                    }
                    None => return Ok(Polynomial::zero(&self.vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(&a[k][k])?
                        .checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                    a[i][j] = num.div_exact(&prev, order)?;
                }
                a[i][k] = Polynomial::zero(&self.vars);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_pos { d } else { d.neg() })
    }

    /// All `i x i` minors, row subsets outer and column subsets inner, both
    /// in lexicographic order.
    pub fn minors(&self, i: usize) -> Result<Vec<Polynomial>> {
        if i < 1 || i > self.rows.min(self.cols) {
            return Err(Error::MinorLevel { level: i, max: self.rows.min(self.cols) });
        }
        let mut out = Vec::new();
        for rs in combinations(self.rows, i) {
            for cs in combinations(self.cols, i) {
                out.push(self.submatrix(&rs, &cs).det()?);
            }
        }
        Ok(out)
    }

    /// Largest `i` with a nonzero `i x i` minor.
    pub fn rank(&self) -> usize {
        for i in (1..=self.rows.min(self.cols)).rev() {
            for rs in combinations(self.rows, i) {
                for cs in combinations(self.cols, i) {
                    if let Ok(d) = self.submatrix(&rs, &cs).det() {
                        if !d.is_zero() {
                            return i;
                        }
                    }
                }
            }
        }
        0
    }

    /// Rank by fraction-free elimination; independent route used by the
    /// property suite.
    pub fn rank_elimination(&self) -> Result<usize> {
        let order = MonomialOrder::DegRevLex;
        let mut a: Vec<Vec<Polynomial>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut prev = Polynomial::one(&self.vars);
        let mut pr = 0; // pivot row
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            match (pr..self.rows).find(|&i| !a[i][pc].is_zero()) {
                None => continue,
                Some(i) => a.swap(pr, i),
            }
            for i in pr + 1..self.rows {
                for j in pc + 1..self.cols {
                    let num = a[i][j]
                        .checked_mul(&a[pr][pc])?
                        .checked_sub(&a[i][pc].checked_mul(&a[pr][j])?)?;
                    a[i][j] = num.div_exact(&prev, order)?;
                }
                a[i][pc] = Polynomial::zero(&self.vars);
            }
            prev = a[pr][pc].clone();
            pr += 1;
        }
        Ok(pr)
    }

    /// Monic gcd of all `i x i` minors.
    pub fn d_i(&self, i: usize) -> Result<Polynomial> {
        let ms = self.minors(i)?;
        if ms.iter().all(Polynomial::is_zero) {
            return Err(Error::LevelExceedsRank { level: i });
        }
        gcd(&ms)
    }

    /// Minors of level `i` together with their monic gcd and the reduced
    /// minors `b_j = a_j / d_i`.
    pub fn minor_report(&self, i: usize) -> Result<MinorReport> {
        let minors = self.minors(i)?;
        if minors.iter().all(Polynomial::is_zero) {
            return Err(Error::LevelExceedsRank { level: i });
        }
        let d = gcd(&minors)?;
        let order = MonomialOrder::DegRevLex;
        let reduced = minors
            .iter()
            .map(|a| {
                if a.is_zero() {
                    Ok(Polynomial::zero(&self.vars))
                } else {
                    a.div_exact(&d, order)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MinorReport { level: i, minors, d_i: d, reduced })
    }

    /// Column reduced minors: the `binom(l, r)` minors of the first
    /// full-column-rank `l x r` submatrix, divided by their monic gcd.
    pub fn column_reduced_minors(&self, r: usize) -> Result<ColumnReducedMinors> {
        if r < 1 {
            return Err(Error::MinorLevel { level: r, max: self.rows });
        }
        if r > self.rows || r > self.cols {
            return Err(Error::ReducedMinorLevel { r, l: self.rows });
        }
        let order = MonomialOrder::DegRevLex;
        let row_sets = combinations(self.rows, r);
        for cs in combinations(self.cols, r) {
            let mut dets = Vec::with_capacity(row_sets.len());
            for rs in &row_sets {
                dets.push(self.submatrix(rs, &cs).det()?);
            }
            if dets.iter().all(Polynomial::is_zero) {
                continue;
            }
            let d = gcd(&dets)?;
            let values = dets
                .iter()
                .map(|a| {
                    if a.is_zero() {
                        Ok(Polynomial::zero(&self.vars))
                    } else {
                        a.div_exact(&d, order)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(ColumnReducedMinors { r, columns: cs, values });
        }
        Err(Error::RankMismatch { expected: r, found: self.rank() })
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Level-`i` minors `a_j`, their monic gcd and reduced minors `b_j`,
/// satisfying `a_j = d_i * b_j`.
#[derive(Clone, Debug)]
pub struct MinorReport {
    pub level: usize,
    pub minors: Vec<Polynomial>,
    pub d_i: Polynomial,
    pub reduced: Vec<Polynomial>,
}

/// The `r x r` column reduced minors of a rank-`r` matrix and the column
/// set of the submatrix they came from.
#[derive(Clone, Debug)]
pub struct ColumnReducedMinors {
    pub r: usize,
    pub columns: Vec<usize>,
    pub values: Vec<Polynomial>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
