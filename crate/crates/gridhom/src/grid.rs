//! Grid-diagram data model: validation, grid moves, reflection, connected sum,
//! and conversion to a planar rectilinear diagram.
//!
//! Conventions: columns are indexed left to right, rows bottom to top, both
//! `0..n`. `o[j]` / `x[j]` is the row of the O- resp. X-marking in column `j`.
//! Markings sit at square centers `(j+1/2, r+1/2)`; state points sit at
//! lattice points. "Diagonal" means `o[j] = n-1-j` (top-left to bottom-right).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GridError, Result};
use crate::planar::{AnnotatedDiagram, Pt};

/// A toroidal grid diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDiagram {
    n: usize,
    o: Vec<usize>,
    x: Vec<usize>,
}

/// A generator of the grid chain complexes: one lattice point per column,
/// `rows[j]` being the row of the point on vertical circle `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    rows: Vec<u8>,
}

impl State {
    pub fn new(rows: Vec<u8>) -> Result<Self> {
        let n = rows.len();
        let mut seen = vec![false; n];
        for &r in &rows {
            if (r as usize) >= n || seen[r as usize] {
                return Err(GridError::Validation("state is not a permutation".into()));
            }
            seen[r as usize] = true;
        }
        Ok(State { rows })
    }

    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, col: usize) -> usize {
        self.rows[col] as usize
    }

    /// Lehmer code rank; a dense collision-free index for permutations with n <= 20.
    pub fn lehmer_rank(&self) -> u64 {
        let n = self.rows.len();
        let mut rank: u64 = 0;
        let mut fact: u64 = 1;
        // factorials computed on the fly, right to left
        let mut smaller = vec![0u64; n];
        for i in 0..n {
            for k in i + 1..n {
                if self.rows[k] < self.rows[i] {
                    smaller[i] += 1;
                }
            }
        }
        for i in (0..n).rev() {
            rank += smaller[i] * fact;
            fact *= (n - i) as u64;
        }
        rank
    }
}

/// Which corner of the new 2x2 block receives the O-marking in a stabilization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabKind {
    ONw,
    ONe,
    OSw,
    OSe,
}

impl StabKind {
    pub const ALL: [StabKind; 4] = [StabKind::ONw, StabKind::ONe, StabKind::OSw, StabKind::OSe];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

impl GridDiagram {
    /// Validates and builds a grid diagram.
    pub fn new(n: usize, o: Vec<usize>, x: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(GridError::Validation("grid size must be positive".into()));
        }
        if o.len() != n || x.len() != n {
            return Err(GridError::Validation(format!(
                "marking sequences must have length {n}"
            )));
        }
        for (name, seq) in [("O", &o), ("X", &x)] {
            let mut seen = vec![false; n];
            for &r in seq.iter() {
                if r >= n {
                    return Err(GridError::Validation(format!(
                        "{name} contains out-of-range row {r}"
                    )));
                }
                if seen[r] {
                    return Err(GridError::Validation(format!(
                        "{name} is not a permutation (row {r} repeated)"
                    )));
                }
                seen[r] = true;
            }
        }
        for j in 0..n {
            if o[j] == x[j] {
                return Err(GridError::Validation(format!(
                    "O and X share the square in column {j}"
                )));
            }
        }
        Ok(GridDiagram { n, o, x })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn o(&self) -> &[usize] {
        &self.o
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn o_row(&self, col: usize) -> usize {
        self.o[col]
    }

    pub fn x_row(&self, col: usize) -> usize {
        self.x[col]
    }

    /// Column of the O-marking in the given row.
    pub fn o_col(&self, row: usize) -> usize {
        self.o.iter().position(|&r| r == row).unwrap()
    }

    /// Column of the X-marking in the given row.
    pub fn x_col(&self, row: usize) -> usize {
        self.x.iter().position(|&r| r == row).unwrap()
    }

    /// Number of link components: cycles of the column successor `j -> X^{-1}(O[j])`.
    pub fn component_count(&self) -> usize {
        let n = self.n;
        let mut xinv = vec![0usize; n];
        for j in 0..n {
            xinv[self.x[j]] = j;
        }
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = xinv[self.o[j]];
            }
        }
        cycles
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn require_knot(&self) -> Result<()> {
        let c = self.component_count();
        if c == 1 {
            Ok(())
        } else {
            Err(GridError::NotAKnot(format!("{c} components")))
        }
    }

    /// True iff the O-markings run along the top-left-to-bottom-right diagonal.
    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|j| self.o[j] == self.n - 1 - j)
    }

    pub fn require_diagonal(&self) -> Result<()> {
        if self.is_diagonal() {
            Ok(())
        } else {
            Err(GridError::NotDiagonal)
        }
    }

    /// Diagonal grid of a torus knot: `O[j] = n-1-j`, `X[j] = (O[j]-k) mod n`,
    /// a diagonal diagram of the (k, n-k) torus knot when gcd(k, n) = 1.
    pub fn torus_shift(n: usize, k: usize) -> Result<Self> {
        let o: Vec<usize> = (0..n).map(|j| n - 1 - j).collect();
        let x: Vec<usize> = (0..n).map(|j| (o[j] + n - (k % n)) % n).collect();
        GridDiagram::new(n, o, x)
    }

    /// The 2x2 unknot grid.
    pub fn unknot() -> Self {
        GridDiagram::new(2, vec![1, 0], vec![0, 1]).unwrap()
    }

    /// Commute two adjacent columns (or rows, via `axis`), index and index+1 mod n.
    pub fn commute(&self, index: usize, axis: Axis) -> Result<Self> {
        match axis {
            Axis::Columns => self.commute_columns(index),
            Axis::Rows => self.commute_rows(index),
        }
    }

    fn commute_columns(&self, j: usize) -> Result<Self> {
        let n = self.n;
        if j >= n {
            return Err(GridError::IllegalMove(format!("column {j} out of range")));
        }
        let j2 = (j + 1) % n;
        let a = interval(self.o[j], self.x[j]);
        let b = interval(self.o[j2], self.x[j2]);
        if !disjoint_or_nested(a, b) {
            return Err(GridError::IllegalMove(format!(
                "columns {j} and {j2} have interleaved marking intervals"
            )));
        }
        let mut o = self.o.clone();
        let mut x = self.x.clone();
        o.swap(j, j2);
        x.swap(j, j2);
        GridDiagram::new(n, o, x)
    }

    fn commute_rows(&self, r: usize) -> Result<Self> {
        let n = self.n;
        if r >= n {
            return Err(GridError::IllegalMove(format!("row {r} out of range")));
        }
        let r2 = (r + 1) % n;
        let a = interval(self.o_col(r), self.x_col(r));
        let b = interval(self.o_col(r2), self.x_col(r2));
        if !disjoint_or_nested(a, b) {
            return Err(GridError::IllegalMove(format!(
                "rows {r} and {r2} have interleaved marking intervals"
            )));
        }
        let swap = |v: usize| {
            if v == r {
                r2
            } else if v == r2 {
                r
            } else {
                v
            }
        };
        let o = self.o.iter().map(|&v| swap(v)).collect();
        let x = self.x.iter().map(|&v| swap(v)).collect();
        GridDiagram::new(n, o, x)
    }

    /// Stabilize at the X-marking of `column`; `kind` picks the corner of the
    /// new 2x2 block that receives the O-marking.
    pub fn stabilize(&self, column: usize, kind: StabKind) -> Result<Self> {
        let n = self.n;
        if column >= n {
            return Err(GridError::IllegalMove(format!(
                "column {column} out of range"
            )));
        }
        let j = column;
        let r = self.x[j];
        let m = n + 1;
        // shift of coordinates away from the split column/row
        let sc = |c: usize| if c > j { c + 1 } else { c };
        let sr = |row: usize| if row > r { row + 1 } else { row };
        let mut o = vec![usize::MAX; m];
        let mut x = vec![usize::MAX; m];
        for c in 0..n {
            if c != j {
                if self.o[c] != r {
                    o[sc(c)] = sr(self.o[c]);
                }
                x[sc(c)] = sr(self.x[c]);
            }
        }
        // block corners: (j, r) SW, (j, r+1) NW, (j+1, r) SE, (j+1, r+1) NE
        let (o_pos, x1, x2) = match kind {
            StabKind::ONe => ((j + 1, r + 1), (j, r + 1), (j + 1, r)),
            StabKind::ONw => ((j, r + 1), (j + 1, r + 1), (j, r)),
            StabKind::OSe => ((j + 1, r), (j + 1, r + 1), (j, r)),
            StabKind::OSw => ((j, r), (j, r + 1), (j + 1, r)),
        };
        o[o_pos.0] = o_pos.1;
        x[x1.0] = x1.1;
        x[x2.0] = x2.1;
        // old column-O joins the block column without an O; old row-O the block
        // row without an O
        let free_col = if o_pos.0 == j { j + 1 } else { j };
        o[free_col] = sr(self.o[j]);
        let free_row = if o_pos.1 == r { r + 1 } else { r };
        let old_row_o_col = self.o_col(r);
        o[sc(old_row_o_col)] = free_row;
        GridDiagram::new(m, o, x)
    }

    /// All destabilization sites: 2x2 blocks holding exactly three markings in
    /// an L-pattern (XOX or OXO). A site is `(col, row, middle_is_o)`, ordered
    /// lexicographically.
    pub fn destabilize_sites(&self) -> Vec<(usize, usize, bool)> {
        let n = self.n;
        let mut sites = Vec::new();
        if n < 2 {
            return sites;
        }
        let mark = |c: usize, r: usize| -> Option<bool> {
            // Some(true) = O, Some(false) = X
            if self.o[c] == r {
                Some(true)
            } else if self.x[c] == r {
                Some(false)
            } else {
                None
            }
        };
        for j in 0..n - 1 {
            for r in 0..n - 1 {
                let corners = [
                    (j, r),
                    (j + 1, r),
                    (j, r + 1),
                    (j + 1, r + 1),
                ];
                let marks: Vec<(usize, usize, bool)> = corners
                    .iter()
                    .filter_map(|&(c, row)| mark(c, row).map(|is_o| (c, row, is_o)))
                    .collect();
                if marks.len() != 3 {
                    continue;
                }
                let o_cnt = marks.iter().filter(|m| m.2).count();
                // middle = the corner sharing its block row and column with the
                // other two markings; it must carry the minority type
                for &(c, row, is_o) in &marks {
                    let others: Vec<_> = marks
                        .iter()
                        .filter(|&&m| (m.0, m.1) != (c, row))
                        .collect();
                    let adjacent = others
                        .iter()
                        .all(|m| m.0 == c || m.1 == row);
                    if !adjacent {
                        continue;
                    }
                    let minority = if o_cnt == 1 { is_o } else { !is_o };
                    if minority && others.iter().all(|m| m.2 != is_o) {
                        sites.push((j, r, is_o));
                    }
                }
            }
        }
        sites.sort();
        sites.dedup();
        sites
    }

    /// Destabilize at the lexicographically smallest site.
    pub fn destabilize(&self) -> Result<Self> {
        let sites = self.destabilize_sites();
        let &(j, r, _) = sites
            .first()
            .ok_or_else(|| GridError::IllegalMove("no 2x2 destabilization pattern".into()))?;
        self.destabilize_at(j, r)
    }

    /// Destabilize the 2x2 block with lower-left square `(j, r)`.
    pub fn destabilize_at(&self, j: usize, r: usize) -> Result<Self> {
        let site = self
            .destabilize_sites()
            .into_iter()
            .find(|&(c, row, _)| c == j && row == r)
            .ok_or_else(|| {
                GridError::IllegalMove(format!("no destabilization pattern at ({j}, {r})"))
            })?;
        let n = self.n;
        let is_o_middle = site.2;
        let mark = |c: usize, row: usize| -> Option<bool> {
            if self.o[c] == row {
                Some(true)
            } else if self.x[c] == row {
                Some(false)
            } else {
                None
            }
        };
        let corners = [(j, r), (j + 1, r), (j, r + 1), (j + 1, r + 1)];
        let (mut cm, mut rm) = (usize::MAX, usize::MAX);
        for &(c, row) in &corners {
            if mark(c, row) == Some(is_o_middle) {
                let others: Vec<_> = corners
                    .iter()
                    .filter(|&&p| p != (c, row) && mark(p.0, p.1).is_some())
                    .collect();
                if others.len() == 2 && others.iter().all(|p| p.0 == c || p.1 == row) {
                    cm = c;
                    rm = row;
                }
            }
        }
        // fourth (empty) corner receives the merged marking
        let co = j + (j + 1) - cm;
        let ro = r + (r + 1) - rm;
        let m = n - 1;
        let sc = |c: usize| if c > cm { c - 1 } else { c };
        let sr = |row: usize| if row > rm { row - 1 } else { row };
        let mut o = vec![usize::MAX; m];
        let mut x = vec![usize::MAX; m];
        let in_block =
            |c: usize, row: usize| (c == j || c == j + 1) && (row == r || row == r + 1);
        for c in 0..n {
            if !in_block(c, self.o[c]) {
                o[sc(c)] = sr(self.o[c]);
            }
            if !in_block(c, self.x[c]) {
                x[sc(c)] = sr(self.x[c]);
            }
        }
        if is_o_middle {
            // XOX: the two X's merge at the fourth corner
            x[sc(co)] = sr(ro);
        } else {
            o[sc(co)] = sr(ro);
        }
        GridDiagram::new(m, o, x)
    }

    /// Reflect across the grid diagonal (top-left to bottom-right); represents
    /// the reverse of the link and preserves diagonality.
    pub fn reflect_diagonal(&self) -> Self {
        let n = self.n;
        let mut o = vec![0usize; n];
        let mut x = vec![0usize; n];
        for j in 0..n {
            o[n - 1 - self.o[j]] = n - 1 - j;
            x[n - 1 - self.x[j]] = n - 1 - j;
        }
        GridDiagram { n, o, x }
    }

    /// Translate along the diagonal by `t` (cyclic shift of both columns and
    /// rows); a toroidal translation, so the link is unchanged and a diagonal
    /// diagram stays diagonal.
    pub fn diagonal_translate(&self, t: usize) -> Self {
        let n = self.n;
        let t = t % n;
        let mut o = vec![0usize; n];
        let mut x = vec![0usize; n];
        for j in 0..n {
            o[j] = (self.o[(j + t) % n] + t) % n;
            x[j] = (self.x[(j + t) % n] + t) % n;
        }
        GridDiagram { n, o, x }
    }

    /// Connected sum of two diagonal knot diagrams: a diagonal grid of size
    /// `n1 + n2 - 2`.
    ///
    /// The blocks are corner-joined with the shared 2x2 pattern removed: the
    /// last column and bottom row of the first diagram and the first column
    /// and top row of the second are deleted, and the two orphaned marking
    /// rows are cross-wired through the opposite block.
    pub fn connected_sum(&self, other: &GridDiagram) -> Result<Self> {
        self.require_diagonal()?;
        other.require_diagonal()?;
        self.require_knot()?;
        other.require_knot()?;
        let n1 = self.n;
        let n2 = other.n;
        if n1 == 2 {
            return Ok(other.clone());
        }
        if n2 == 2 {
            return Ok(self.clone());
        }
        let n = n1 + n2 - 2;
        // column of the X in the deleted G1 row, and of the X in the deleted
        // G2 row, after renumbering
        let cstar = self.x.iter().position(|&r| r == 0).unwrap();
        let dstar = other.x.iter().position(|&r| r == n2 - 1).unwrap();
        let o: Vec<usize> = (0..n).map(|j| n - 1 - j).collect();
        let mut x = vec![usize::MAX; n];
        for j in 0..n1 - 1 {
            if j != cstar {
                x[j] = n2 - 2 + self.x[j];
            }
        }
        for j in 1..n2 {
            if j != dstar {
                x[n1 - 2 + j] = other.x[j];
            }
        }
        x[cstar] = other.x[0];
        x[n1 - 2 + dstar] = n2 - 2 + self.x[n1 - 1];
        let sum = GridDiagram::new(n, o, x)?;
        sum.require_knot()?;
        debug_assert!(sum.is_diagonal());
        Ok(sum)
    }

    /// Rectilinear planar diagram of a knot grid, all crossings vertical-over.
    pub fn to_planar_diagram(&self) -> Result<AnnotatedDiagram> {
        self.require_knot()?;
        let n = self.n;
        let mut xinv = vec![0usize; n];
        for j in 0..n {
            xinv[self.x[j]] = j;
        }
        // walk the knot: in column j, X -> O vertically; in row O[j], O -> X
        // horizontally. Vertices at marking centers, coordinates doubled.
        let mut verts: Vec<Pt> = Vec::with_capacity(2 * n);
        let mut j = 0usize;
        loop {
            let xv = Pt::new(2 * j as i64 + 1, 2 * self.x[j] as i64 + 1);
            let ov = Pt::new(2 * j as i64 + 1, 2 * self.o[j] as i64 + 1);
            verts.push(xv);
            verts.push(ov);
            j = xinv[self.o[j]];
            if j == 0 {
                break;
            }
        }
        AnnotatedDiagram::from_polyline(verts)
    }

    // ---- file formats ----

    /// Serialize as the bit-exact JSON object `{"size": n, "O": [...], "X": [...]}`.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"size\":{},\"O\":{},\"X\":{}}}",
            self.n,
            serde_json::to_string(&self.o).unwrap(),
            serde_json::to_string(&self.x).unwrap()
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            size: usize,
            #[serde(rename = "O")]
            o: Vec<usize>,
            #[serde(rename = "X")]
            x: Vec<usize>,
        }
        let mut de = serde_json::Deserializer::from_str(text);
        let raw = Raw::deserialize(&mut de).map_err(|e| GridError::Parse(e.to_string()))?;
        de.end()
            .map_err(|_| GridError::Parse("trailing content after JSON object".into()))?;
        GridDiagram::new(raw.size, raw.o, raw.x)
    }

    /// Compact text form `n;o0,o1,...;x0,x1,...` with no whitespace.
    pub fn to_compact(&self) -> String {
        let fmt = |v: &[usize]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{};{};{}", self.n, fmt(&self.o), fmt(&self.x))
    }

    pub fn from_compact(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 3 {
            return Err(GridError::Parse("expected n;o...;x...".into()));
        }
        let n: usize = parts[0]
            .parse()
            .map_err(|_| GridError::Parse("bad size".into()))?;
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|t| t.parse().map_err(|_| GridError::Parse(format!("bad entry {t:?}"))))
                .collect()
        };
        GridDiagram::new(n, nums(parts[1])?, nums(parts[2])?)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in (0..self.n).rev() {
            for j in 0..self.n {
                let c = if self.o[j] == r {
                    'O'
                } else if self.x[j] == r {
                    'X'
                } else {
                    '.'
                };
                write!(f, "{c} ")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn interval(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn disjoint_or_nested(a: (usize, usize), b: (usize, usize)) -> bool {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let a_in_b = b.0 < a.0 && a.1 < b.1;
    let b_in_a = a.0 < b.0 && b.1 < a.1;
    disjoint || a_in_b || b_in_a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::torus_shift(5, 2).unwrap()
    }

    #[test]
    fn validation() {
        assert!(GridDiagram::new(2, vec![1, 0], vec![0, 1]).is_ok());
        let g = GridDiagram::new(5, vec![4, 3, 2, 1, 0], vec![2, 1, 0, 4, 3]).unwrap();
        assert!(g.is_diagonal());
        // O/X collision
        let err = GridDiagram::new(3, vec![2, 1, 0], vec![2, 0, 1]).unwrap_err();
        assert!(matches!(err, GridError::Validation(_)));
        // non-permutation
        assert!(GridDiagram::new(3, vec![2, 2, 0], vec![0, 1, 2]).is_err());
        assert!(GridDiagram::new(3, vec![2, 1], vec![0, 1, 2]).is_err());
    }

    #[test]
    fn component_counts() {
        assert_eq!(GridDiagram::unknot().component_count(), 1);
        assert_eq!(trefoil().component_count(), 1);
        let two = GridDiagram::new(4, vec![3, 2, 1, 0], vec![1, 0, 3, 2]).unwrap();
        assert_eq!(two.component_count(), 2);
    }

    #[test]
    fn diagonal_predicate() {
        assert!(trefoil().is_diagonal());
        assert!(GridDiagram::unknot().is_diagonal());
        let anti = GridDiagram::new(5, vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap();
        assert!(!anti.is_diagonal());
    }

    #[test]
    fn commutation_inverse() {
        let g = trefoil();
        for j in 0..5 {
            for axis in [Axis::Columns, Axis::Rows] {
                if let Ok(h) = g.commute(j, axis) {
                    assert_eq!(h.commute(j, axis).unwrap(), g);
                    assert_eq!(h.component_count(), 1);
                }
            }
        }
    }

    #[test]
    fn stabilize_destabilize_roundtrip() {
        let g = GridDiagram::unknot();
        for kind in StabKind::ALL {
            let h = g.stabilize(0, kind).unwrap();
            assert_eq!(h.size(), 3);
            assert_eq!(h.component_count(), 1);
            let back = h.destabilize().unwrap();
            assert_eq!(back.size(), 2);
            assert_eq!(back.component_count(), 1);
        }
        let g = trefoil();
        for col in 0..5 {
            for kind in StabKind::ALL {
                let h = g.stabilize(col, kind).unwrap();
                assert_eq!(h.component_count(), 1);
                assert!(!h.destabilize_sites().is_empty());
            }
        }
    }

    #[test]
    fn reflect_involution() {
        let g = trefoil();
        assert_eq!(g.reflect_diagonal().reflect_diagonal(), g);
        assert!(g.reflect_diagonal().is_diagonal());
        assert_eq!(g.reflect_diagonal().component_count(), 1);
    }

    #[test]
    fn diagonal_translation() {
        let g = trefoil();
        for t in 0..5 {
            let h = g.diagonal_translate(t);
            assert!(h.is_diagonal());
            assert!(h.is_knot());
        }
    }

    #[test]
    fn connected_sum_sizes() {
        let t = trefoil();
        let sum = t.connected_sum(&t).unwrap();
        assert_eq!(sum.size(), 8);
        assert!(sum.is_diagonal());
        assert!(sum.is_knot());
        let with_unknot = t.connected_sum(&GridDiagram::unknot()).unwrap();
        assert_eq!(with_unknot.size(), 5);
    }

    #[test]
    fn json_roundtrip_and_strictness() {
        let g = trefoil();
        let s = g.to_json();
        assert_eq!(GridDiagram::from_json(&s).unwrap(), g);
        assert!(GridDiagram::from_json(&format!("{s} junk")).is_err());
        let c = g.to_compact();
        assert_eq!(c, "5;4,3,2,1,0;2,1,0,4,3");
        assert_eq!(GridDiagram::from_compact(&c).unwrap(), g);
        assert!(GridDiagram::from_compact("5;4,3,2,1,0").is_err());
    }

    #[test]
    fn planar_crossings() {
        let d = GridDiagram::unknot().to_planar_diagram().unwrap();
        assert_eq!(d.crossing_count(), 0);
        let d = trefoil().to_planar_diagram().unwrap();
        assert_eq!(d.crossing_count(), 3);
    }
}
