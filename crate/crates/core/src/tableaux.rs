//! Semistandard Young tableaux and principal specializations of Schur
//! polynomials, with the two-column bijection onto Dyck paths.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dyck::{DyckPath, Step};
use crate::error::{Error, Result};
use crate::qpoly::{exact_div, q_int, QPoly};

/// An integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `⟨2^k⟩ = (2, 2, ..., 2)` with `k` parts.
    pub fn two_column(k: usize) -> Self {
        Partition { parts: vec![2; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `ℓ(λ)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_two_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 2)
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && row <= self.length() && col <= self.parts[row - 1]
    }

    /// Cells `(row, col)`, 1-based, in row-reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
    }

    fn column_length(&self, col: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= col).count()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Arm plus leg plus one.
pub fn hook_length(shape: &Partition, row: usize, col: usize) -> Result<usize> {
    if !shape.contains(row, col) {
        return Err(Error::CellNotInDiagram { row, col });
    }
    let arm = shape.parts[row - 1] - col;
    let leg = shape.column_length(col) - row;
    Ok(arm + leg + 1)
}

/// `col - row`.
pub fn content(shape: &Partition, row: usize, col: usize) -> Result<i64> {
    if !shape.contains(row, col) {
        return Err(Error::CellNotInDiagram { row, col });
    }
    Ok(col as i64 - row as i64)
}

/// A semistandard tableau, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Ssyt {
    rows: Vec<Vec<usize>>,
}

impl Ssyt {
    /// Validates positivity, weak rows, strict columns and partition shape.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        for (i, row) in rows.iter().enumerate() {
            if row.contains(&0) {
                return Err(Error::InvalidTableau("entries must be positive".into()));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidTableau(format!("row {} decreases", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(b, a)| b <= a) {
                return Err(Error::InvalidTableau(format!("column strictness fails at row {}", i + 1)));
            }
        }
        Ok(Ssyt { rows })
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row - 1][col - 1]
    }

    pub fn entry_sum(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    pub fn max_entry(&self) -> Option<usize> {
        self.rows.iter().flatten().copied().max()
    }

    /// `row(T) = (γ_1, γ_2, ...)` with `γ_i` the sum of row `i`.
    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Ssyt {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Ssyt::new(rows)
    }
}

impl From<Ssyt> for Vec<Vec<usize>> {
    fn from(t: Ssyt) -> Self {
        t.rows
    }
}

impl fmt::Display for Ssyt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}

/// Visits every SSYT of `shape` with entries in `1..=max_part`, in
/// lexicographic order of the row-reading word.
pub fn for_each_ssyt(shape: &Partition, max_part: usize, mut visit: impl FnMut(&[Vec<usize>])) {
    let mut rows: Vec<Vec<usize>> = shape.parts.iter().map(|&len| vec![0; len]).collect();
    let cells: Vec<(usize, usize)> = shape.cells().map(|(i, j)| (i - 1, j - 1)).collect();
    fill(&cells, 0, max_part, &mut rows, &mut visit);
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    max_part: usize,
    rows: &mut Vec<Vec<usize>>,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    let Some(&(i, j)) = cells.get(at) else {
        visit(rows);
        return;
    };
    let left = if j > 0 { rows[i][j - 1] } else { 1 };
    let above = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
    for v in left.max(above)..=max_part {
        rows[i][j] = v;
        fill(cells, at + 1, max_part, rows, visit);
    }
    rows[i][j] = 0;
}

pub fn enumerate_ssyt(shape: &Partition, max_part: usize) -> Vec<Ssyt> {
    let mut out = Vec::new();
    for_each_ssyt(shape, max_part, |rows| out.push(Ssyt { rows: rows.to_vec() }));
    out
}

/// The path `w(T)` of a two-column tableau with entries below `n`: blocks of
/// `T_{i2} - T_{(i-1)2}` vertical and `T_{i1} - T_{(i-1)1}` horizontal steps,
/// closed by `n - T_{k2}` and `n - T_{k1}`.
pub fn ssyt_to_dyck(t: &Ssyt, n: usize) -> Result<DyckPath> {
    if !t.shape().is_two_column() {
        return Err(Error::InvalidTableau("shape must be (2, 2, ..., 2)".into()));
    }
    if let Some(entry) = t.max_entry().filter(|&e| e >= n) {
        return Err(Error::EntryOutOfRange { entry, bound: n });
    }
    let mut steps = Vec::with_capacity(2 * n);
    let (mut prev_left, mut prev_right) = (0, 0);
    let bounds = t.rows.iter().map(|r| (r[0], r[1])).chain(std::iter::once((n, n)));
    for (left, right) in bounds {
        steps.extend(std::iter::repeat_n(Step::V, right - prev_right));
        steps.extend(std::iter::repeat_n(Step::H, left - prev_left));
        prev_left = left;
        prev_right = right;
    }
    DyckPath::new(&steps)
}

/// Inverse of [`ssyt_to_dyck`]: reads the run lengths `V^{a_1} H^{b_1} ...`
/// and takes partial sums as the right and left columns.
pub fn dyck_to_ssyt(w: &DyckPath) -> Ssyt {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut prev = None;
    for s in w.steps() {
        match (prev, s) {
            (Some(Step::H), Step::V) | (None, Step::V) => runs.push((1, 0)),
            (_, Step::V) => runs.last_mut().expect("open run").0 += 1,
            (_, Step::H) => runs.last_mut().expect("path starts with V").1 += 1,
        }
        prev = Some(s);
    }
    // the final run closes the path and contributes no row
    runs.pop();
    let (mut left, mut right) = (0, 0);
    let rows = runs
        .into_iter()
        .map(|(a, b)| {
            right += a;
            left += b;
            vec![left, right]
        })
        .collect();
    Ssyt { rows }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurRoute {
    /// Sum of `q^{ΣT}` over tableaux.
    Ssyt,
    /// Hook-content product.
    Hook,
}

/// `s_λ(q, q², ..., q^m)` as a sum over SSYT with entries at most `m`.
pub fn schur_principal_ssyt(shape: &Partition, m: usize) -> QPoly {
    let mut counts: Vec<u64> = Vec::new();
    for_each_ssyt(shape, m, |rows| {
        let e: usize = rows.iter().flatten().sum();
        if counts.len() <= e {
            counts.resize(e + 1, 0);
        }
        counts[e] += 1;
    });
    QPoly::from_coeffs(counts.into_iter().map(BigInt::from))
}

/// `s_λ(q, ..., q^m) = q^{Σ i λ_i} Π_u [m + c(u)] / [h(u)]`.
///
/// The numerator is multiplied out first; the hook q-integers are then
/// divided out one at a time, smallest first.
pub fn schur_principal_hook(shape: &Partition, m: usize) -> Result<QPoly> {
    if shape.length() > m {
        // the cell (m+1, 1) contributes the factor [0]
        return Ok(QPoly::zero());
    }
    let mut numerator = QPoly::one();
    let mut hooks = Vec::with_capacity(shape.size());
    for (row, col) in shape.cells() {
        let c = content(shape, row, col)?;
        numerator = &numerator * &q_int((m as i64 + c) as usize);
        hooks.push(hook_length(shape, row, col)?);
    }
    hooks.sort_unstable();
    let mut value = numerator;
    for h in hooks {
        value = exact_div(&value, &q_int(h))?;
    }
    let weight: usize = shape.parts.iter().enumerate().map(|(i, &p)| (i + 1) * p).sum();
    Ok(value.shift(weight))
}

pub fn schur_principal(shape: &Partition, m: usize, route: SchurRoute) -> Result<QPoly> {
    match route {
        SchurRoute::Ssyt => Ok(schur_principal_ssyt(shape, m)),
        SchurRoute::Hook => schur_principal_hook(shape, m),
    }
}

/// `N_q(n,k) = s_{⟨2^k⟩}(q, ..., q^{n-1})`, by the tableau sum.
pub fn q_narayana_schur(n: usize, k: usize) -> Result<QPoly> {
    q_narayana_schur_with(n, k, SchurRoute::Ssyt)
}

pub fn q_narayana_schur_with(n: usize, k: usize, route: SchurRoute) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("q-Narayana numbers need n >= 1".into()));
    }
    schur_principal(&Partition::two_column(k), n - 1, route)
}
