//! Maslov and Alexander gradings via the pairwise domination counts I and J.
//!
//! All arithmetic is exact: half-integers are carried as doubled integers and
//! cast back only after an integrality assertion. Point sets live in doubled
//! coordinates, so states sit at even points and markings at odd points.

use crate::error::{GridError, Result};
use crate::grid::{GridDiagram, State};

/// A planar point in doubled coordinates.
pub type Point = (i64, i64);

/// Number of pairs `(a, b)` in `A x B` with `a` strictly below-left of `b`.
pub fn domination_count(a: &[Point], b: &[Point]) -> i64 {
    let mut n = 0;
    for &(ax, ay) in a {
        for &(bx, by) in b {
            if ax < bx && ay < by {
                n += 1;
            }
        }
    }
    n
}

/// Twice the symmetrized count `J(A, B) = (I(A,B) + I(B,A)) / 2`.
pub fn j_doubled(a: &[Point], b: &[Point]) -> i64 {
    domination_count(a, b) + domination_count(b, a)
}

fn state_points(x: &State) -> Vec<Point> {
    x.rows()
        .iter()
        .enumerate()
        .map(|(j, &r)| (2 * j as i64, 2 * r as i64))
        .collect()
}

fn marking_points(rows: &[usize]) -> Vec<Point> {
    rows.iter()
        .enumerate()
        .map(|(j, &r)| (2 * j as i64 + 1, 2 * r as i64 + 1))
        .collect()
}

/// Per-point Alexander contributions: `2 A(x) = sum_j table[x_j][j] + constant`.
#[derive(Debug, Clone)]
pub struct ContributionTable {
    /// `doubled[r][j]` is twice the contribution of a state point at `(j, r)`.
    pub doubled: Vec<Vec<i64>>,
    /// Twice the constant term.
    pub constant: i64,
}

impl ContributionTable {
    /// Twice the Alexander grading of a state, by table lookup.
    pub fn alexander_doubled(&self, x: &State) -> i64 {
        let mut s = self.constant;
        for (j, &r) in x.rows().iter().enumerate() {
            s += self.doubled[r as usize][j];
        }
        s
    }

    /// Column-wise maxima, used as an optimistic bound by pruned enumeration.
    pub fn column_maxima(&self) -> Vec<i64> {
        let n = self.doubled.len();
        (0..n)
            .map(|j| (0..n).map(|r| self.doubled[r][j]).max().unwrap())
            .collect()
    }
}

/// A planar realization: the toroidal diagram cut after column `col_cut` and
/// row `row_cut`, then laid out on `[0,n) x [0,n)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cut {
    pub col: usize,
    pub row: usize,
}

fn shift_state(x: &State, cut: Cut, n: usize) -> State {
    let rows: Vec<u8> = (0..n)
        .map(|j| {
            let old = (j + cut.col) % n;
            ((x.row(old) + n - cut.row) % n) as u8
        })
        .collect();
    State::new(rows).unwrap()
}

fn shift_markings(m: &[usize], cut: Cut, n: usize) -> Vec<usize> {
    (0..n).map(|j| (m[(j + cut.col) % n] + n - cut.row) % n).collect()
}

/// Maslov grading `M(x) = J(x - O, x - O) + 1`, under the given cut.
pub fn maslov_at_cut(g: &GridDiagram, x: &State, cut: Cut) -> i64 {
    let n = g.size();
    let xs = state_points(&shift_state(x, cut, n));
    let os = marking_points(&shift_markings(g.o(), cut, n));
    let m2 = j_doubled(&xs, &xs) - 2 * j_doubled(&xs, &os) + j_doubled(&os, &os) + 2;
    debug_assert!(m2 % 2 == 0);
    m2 / 2
}

/// Maslov grading in the canonical cut.
pub fn maslov(g: &GridDiagram, x: &State) -> i64 {
    maslov_at_cut(g, x, Cut::default())
}

/// Twice the Alexander grading, under the given cut.
pub fn alexander_doubled_at_cut(g: &GridDiagram, x: &State, cut: Cut) -> i64 {
    let n = g.size();
    let xs = state_points(&shift_state(x, cut, n));
    let os = marking_points(&shift_markings(g.o(), cut, n));
    let ms = marking_points(&shift_markings(g.x(), cut, n));
    // 2A = 2 J(x, X - O) + (J(O,O) - J(X,X)) - (n - 1)
    j_doubled(&xs, &ms) - j_doubled(&xs, &os) + (domination_count(&os, &os) - domination_count(&ms, &ms))
        - (n as i64 - 1)
}

/// Alexander grading of a state of a knot grid; errors when non-integral
/// (which signals a link).
pub fn alexander(g: &GridDiagram, x: &State) -> Result<i64> {
    let a2 = alexander_doubled_at_cut(g, x, Cut::default());
    if a2 % 2 != 0 {
        return Err(GridError::NotAKnot("half-integral Alexander grading".into()));
    }
    Ok(a2 / 2)
}

/// Per-point contribution table in the canonical cut.
pub fn contribution_table(g: &GridDiagram) -> ContributionTable {
    let n = g.size();
    let os = marking_points(g.o());
    let ms = marking_points(g.x());
    let mut doubled = vec![vec![0i64; n]; n];
    for r in 0..n {
        for j in 0..n {
            let p = [(2 * j as i64, 2 * r as i64)];
            doubled[r][j] = j_doubled(&p, &ms) - j_doubled(&p, &os);
        }
    }
    let constant =
        domination_count(&os, &os) - domination_count(&ms, &ms) - (n as i64 - 1);
    ContributionTable { doubled, constant }
}

/// Marking counts and interior-point counts of the rectangle with SW corner
/// `(c1, r1)` and NE corner `(c2, r2)`, both cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub n: usize,
    pub c1: usize,
    pub c2: usize,
    pub r1: usize,
    pub r2: usize,
}

impl Rect {
    /// The two rectangles from `x` to `y` for states differing in columns
    /// `c1 != c2` (rows swapped between them).
    pub fn pair(n: usize, x: &State, c1: usize, c2: usize) -> (Rect, Rect) {
        let a1 = x.row(c1);
        let a2 = x.row(c2);
        (
            Rect { n, c1, c2, r1: a1, r2: a2 },
            Rect { n, c1: c2, c2: c1, r1: a2, r2: a1 },
        )
    }

    #[inline]
    fn in_cyc(_n: usize, lo: usize, hi: usize, v: usize) -> bool {
        // v in the half-open cyclic interval [lo, hi)
        if lo < hi {
            lo <= v && v < hi
        } else {
            v >= lo || v < hi
        }
    }

    pub fn width(&self) -> usize {
        (self.c2 + self.n - self.c1) % self.n
    }

    pub fn height(&self) -> usize {
        (self.r2 + self.n - self.r1) % self.n
    }

    pub fn contains_square(&self, col: usize, row: usize) -> bool {
        Rect::in_cyc(self.n, self.c1, self.c2, col) && Rect::in_cyc(self.n, self.r1, self.r2, row)
    }

    pub fn o_count(&self, g: &GridDiagram) -> usize {
        (0..self.n)
            .filter(|&j| self.contains_square(j, g.o_row(j)))
            .count()
    }

    pub fn x_count(&self, g: &GridDiagram) -> usize {
        (0..self.n)
            .filter(|&j| self.contains_square(j, g.x_row(j)))
            .count()
    }

    /// True when a lattice point `(col, row)` lies strictly inside.
    pub fn interior_contains(&self, col: usize, row: usize) -> bool {
        let strict = |lo: usize, hi: usize, v: usize| {
            if v == lo {
                false
            } else {
                Rect::in_cyc(self.n, lo, hi, v)
            }
        };
        strict(self.c1, self.c2, col) && strict(self.r1, self.r2, row)
    }

    pub fn interior_state_count(&self, x: &State) -> usize {
        (0..self.n)
            .filter(|&j| self.interior_contains(j, x.row(j)))
            .count()
    }

    /// Empty in the sense of the grid complexes: no state point strictly inside.
    pub fn is_empty_for(&self, x: &State) -> bool {
        let n = self.n;
        let mut j = (self.c1 + 1) % n;
        while j != self.c2 {
            if self.interior_contains(j, x.row(j)) {
                return false;
            }
            j = (j + 1) % n;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;

    fn trefoil() -> GridDiagram {
        GridDiagram::torus_shift(5, 2).unwrap()
    }

    fn all_states(n: usize) -> Vec<State> {
        let mut out = Vec::new();
        let mut perm: Vec<u8> = (0..n as u8).collect();
        permute(&mut perm, 0, &mut out);
        out
    }

    fn permute(p: &mut Vec<u8>, k: usize, out: &mut Vec<State>) {
        if k == p.len() {
            out.push(State::new(p.clone()).unwrap());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, out);
            p.swap(k, i);
        }
    }

    #[test]
    fn dominations() {
        assert_eq!(domination_count(&[(0, 0)], &[(1, 1)]), 1);
        assert_eq!(domination_count(&[(1, 1)], &[(0, 0)]), 0);
        assert_eq!(j_doubled(&[(0, 0)], &[(1, 1)]), 1);
        // a 3-point antichain has no dominating pairs
        let anti = [(0, 2), (1, 1), (2, 0)];
        assert_eq!(domination_count(&anti, &anti), 0);
    }

    #[test]
    fn unknot_gradings() {
        let g = GridDiagram::unknot();
        let x0 = State::new(vec![0, 1]).unwrap();
        let other = State::new(vec![1, 0]).unwrap();
        assert_eq!(maslov(&g, &x0), 0);
        assert_eq!(alexander(&g, &x0).unwrap(), 0);
        assert_eq!(maslov(&g, &other), -1);
        assert_eq!(alexander(&g, &other).unwrap(), -1);
    }

    #[test]
    fn trefoil_x0() {
        let g = trefoil();
        let x0 = crate::diagonal::canonical_state(&g);
        assert_eq!(maslov(&g, &x0), 0);
        assert_eq!(alexander(&g, &x0).unwrap(), 1);
    }

    #[test]
    fn cut_invariance_small() {
        for g in [GridDiagram::unknot(), GridDiagram::torus_shift(4, 1).unwrap()] {
            let n = g.size();
            for x in all_states(n) {
                let m0 = maslov(&g, &x);
                let a0 = alexander_doubled_at_cut(&g, &x, Cut::default());
                for c in 0..n {
                    for r in 0..n {
                        let cut = Cut { col: c, row: r };
                        assert_eq!(maslov_at_cut(&g, &x, cut), m0);
                        assert_eq!(alexander_doubled_at_cut(&g, &x, cut), a0);
                    }
                }
            }
        }
    }

    #[test]
    fn table_matches_alexander() {
        let g = trefoil();
        let table = contribution_table(&g);
        for x in all_states(5) {
            assert_eq!(
                table.alexander_doubled(&x),
                alexander_doubled_at_cut(&g, &x, Cut::default())
            );
        }
    }

    #[test]
    fn rectangle_grading_deltas_trefoil() {
        let g = trefoil();
        let n = g.size();
        for x in all_states(n) {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    let mut rows = x.rows().to_vec();
                    rows.swap(c1, c2);
                    let y = State::new(rows).unwrap();
                    let (ra, rb) = Rect::pair(n, &x, c1, c2);
                    for r in [ra, rb] {
                        let dm = maslov(&g, &x) - maslov(&g, &y);
                        let da = alexander(&g, &x).unwrap() - alexander(&g, &y).unwrap();
                        assert_eq!(
                            dm,
                            1 - 2 * r.o_count(&g) as i64 + 2 * r.interior_state_count(&x) as i64
                        );
                        assert_eq!(da, r.x_count(&g) as i64 - r.o_count(&g) as i64);
                    }
                }
            }
        }
    }
}
