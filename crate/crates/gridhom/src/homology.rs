//! State enumeration (full and stratum-pruned), the tilde differential,
//! bigraded homology over GF(2), hat extraction by deconvolution, genus, and
//! the Alexander polynomial.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{GridError, Result};
use crate::gradings::{alexander, contribution_table, maslov, ContributionTable, Rect};
use crate::grid::{GridDiagram, State};
use crate::poly::LaurentPoly;

/// Default cap on grid size for full state enumeration (n! states).
pub const DEFAULT_FULL_ENUM_CAP: usize = 10;

/// Resource limits for stratified computations.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub full_enum_cap: usize,
    pub budget_mb: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            full_enum_cap: DEFAULT_FULL_ENUM_CAP,
            budget_mb: 8192,
        }
    }
}

/// Map `(Maslov, Alexander) -> dimension`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedDims(pub BTreeMap<(i32, i32), usize>);

impl BigradedDims {
    pub fn add(&mut self, m: i32, a: i32, d: usize) {
        if d > 0 {
            *self.0.entry((m, a)).or_insert(0) += d;
        }
    }

    pub fn dim(&self, m: i32, a: i32) -> usize {
        self.0.get(&(m, a)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Entries at a fixed Alexander grading, as `M -> dim`.
    pub fn stratum(&self, a: i32) -> BTreeMap<i32, usize> {
        self.0
            .iter()
            .filter(|&(&(_, s), _)| s == a)
            .map(|(&(m, _), &d)| (m, d))
            .collect()
    }

    pub fn max_alexander(&self) -> Option<i32> {
        self.0.keys().map(|&(_, a)| a).max()
    }

    /// Convolve with `W^{tensor k}`, `W = F_(0,0) + F_(-1,-1)`.
    pub fn convolve_w(&self, k: usize) -> BigradedDims {
        let mut out = BigradedDims::default();
        let binom = binomial_row(k);
        for (&(m, a), &d) in &self.0 {
            for (i, &b) in binom.iter().enumerate() {
                out.add(m - i as i32, a - i as i32, d * b);
            }
        }
        out
    }
}

fn binomial_row(k: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![1];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

/// All states of the grid; requires `n <= limits.full_enum_cap`.
pub fn enumerate_all_states(g: &GridDiagram, limits: &Limits) -> Result<Vec<State>> {
    let n = g.size();
    if n > limits.full_enum_cap {
        return Err(GridError::SizeCapExceeded {
            n,
            cap: limits.full_enum_cap,
        });
    }
    let mut out = Vec::new();
    let mut rows: Vec<u8> = (0..n as u8).collect();
    fn rec(rows: &mut Vec<u8>, k: usize, out: &mut Vec<State>) {
        if k == rows.len() {
            out.push(State::new(rows.clone()).unwrap());
            return;
        }
        for i in k..rows.len() {
            rows.swap(k, i);
            rec(rows, k + 1, out);
            rows.swap(k, i);
        }
    }
    rec(&mut rows, 0, &mut out);
    Ok(out)
}

/// States with Alexander grading at least `min_alexander`, by column-by-column
/// depth-first assignment pruned with the contribution-table optimistic bound.
pub fn enumerate_states_pruned(g: &GridDiagram, min_alexander: i64) -> Result<Vec<State>> {
    g.require_knot()?;
    let n = g.size();
    let table = contribution_table(g);
    let threshold = 2 * min_alexander - table.constant; // doubled, constant removed
    // suffix bounds from per-column maxima
    let colmax = table.column_maxima();
    let mut suffix = vec![0i64; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] + colmax[j];
    }
    // per-column rows sorted by decreasing contribution, for a tighter bound
    let mut by_col: Vec<Vec<(i64, u8)>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<(i64, u8)> = (0..n).map(|r| (table.doubled[r][j], r as u8)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        by_col.push(v);
    }
    let mut out = Vec::new();
    let mut rows = vec![0u8; n];
    let mut used = vec![false; n];
    dfs_prune(
        g, &table, &by_col, &suffix, threshold, 0, &mut rows, &mut used, 0, &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_prune(
    g: &GridDiagram,
    table: &ContributionTable,
    by_col: &[Vec<(i64, u8)>],
    suffix: &[i64],
    threshold: i64,
    col: usize,
    rows: &mut Vec<u8>,
    used: &mut Vec<bool>,
    partial: i64,
    out: &mut Vec<State>,
) {
    let n = g.size();
    if col == n {
        if partial >= threshold {
            out.push(State::new(rows.clone()).unwrap());
        }
        return;
    }
    // optimistic bound on the remaining columns, restricted to unused rows
    let mut bound = partial;
    for j in col..n {
        let best = by_col[j]
            .iter()
            .find(|&&(_, r)| !used[r as usize])
            .map(|&(v, _)| v)
            .unwrap_or(i64::MIN);
        bound += best;
    }
    if bound < threshold {
        return;
    }
    for r in 0..n {
        if used[r] {
            continue;
        }
        used[r] = true;
        rows[col] = r as u8;
        dfs_prune(
            g,
            table,
            by_col,
            suffix,
            threshold,
            col + 1,
            rows,
            used,
            partial + table.doubled[r][col],
            out,
        );
        used[r] = false;
    }
}

/// Stream interface from the spec: with no bound, all states (capped);
/// with a bound, the pruned enumeration.
pub fn enumerate_states(
    g: &GridDiagram,
    min_alexander: Option<i64>,
    limits: &Limits,
) -> Result<Vec<State>> {
    match min_alexander {
        None => enumerate_all_states(g, limits),
        Some(s) => enumerate_states_pruned(g, s),
    }
}

/// Marking positions folded into prefix counts for O(1) cyclic rectangle counts.
struct MarkIndex {
    n: usize,
    o_rows: Vec<usize>,
    x_rows: Vec<usize>,
}

impl MarkIndex {
    fn new(g: &GridDiagram) -> Self {
        MarkIndex {
            n: g.size(),
            o_rows: g.o().to_vec(),
            x_rows: g.x().to_vec(),
        }
    }

    #[inline]
    fn in_cyc(_n: usize, lo: usize, hi: usize, v: usize) -> bool {
        if lo < hi {
            lo <= v && v < hi
        } else {
            v >= lo || v < hi
        }
    }

    /// (o_count, x_count) of the rectangle with SW (c1, r1), NE (c2, r2), cyclic.
    fn counts(&self, c1: usize, c2: usize, r1: usize, r2: usize) -> (usize, usize) {
        let n = self.n;
        let mut o = 0;
        let mut x = 0;
        let mut j = c1;
        while j != c2 {
            if MarkIndex::in_cyc(n, r1, r2, self.o_rows[j]) {
                o += 1;
            }
            if MarkIndex::in_cyc(n, r1, r2, self.x_rows[j]) {
                x += 1;
            }
            j = (j + 1) % n;
        }
        (o, x)
    }
}

/// The boundary of `x` in the tilde complex: states reachable by marking-free
/// empty rectangles, counted mod 2 (a multiset with multiplicities reduced).
pub fn tilde_differential(g: &GridDiagram, x: &State) -> Vec<State> {
    let marks = MarkIndex::new(g);
    let n = g.size();
    let mut acc: HashMap<State, usize> = HashMap::new();
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            let (ra, rb) = Rect::pair(n, x, c1, c2);
            let mut count = 0usize;
            for r in [ra, rb] {
                let (oc, xc) = marks.counts(r.c1, r.c2, r.r1, r.r2);
                if oc == 0 && xc == 0 && r.is_empty_for(x) {
                    count += 1;
                }
            }
            if count % 2 == 1 {
                let mut rows = x.rows().to_vec();
                rows.swap(c1, c2);
                acc.entry(State::new(rows).unwrap())
                    .and_modify(|c| *c += 1)
                    .or_insert(1);
            }
        }
    }
    let mut out: Vec<State> = acc
        .into_iter()
        .filter(|(_, c)| c % 2 == 1)
        .map(|(s, _)| s)
        .collect();
    out.sort();
    out
}

/// Dense bit-packed matrix over GF(2); only rank is ever consumed.
pub struct Gf2Matrix {
    rows: Vec<Vec<u64>>,
    words: usize,
}

impl Gf2Matrix {
    pub fn new(ncols: usize) -> Self {
        Gf2Matrix {
            rows: Vec::new(),
            words: ncols.div_ceil(64),
        }
    }

    pub fn push_row(&mut self, cols: &[usize]) {
        let mut row = vec![0u64; self.words];
        for &c in cols {
            row[c / 64] ^= 1u64 << (c % 64);
        }
        self.rows.push(row);
    }

    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        let nrows = self.rows.len();
        for bit in 0..self.words * 64 {
            let (w, b) = (bit / 64, bit % 64);
            let mask = 1u64 << b;
            let Some(pivot) = (rank..nrows).find(|&r| self.rows[r][w] & mask != 0) else {
                continue;
            };
            self.rows.swap(rank, pivot);
            let (head, tail) = self.rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                if row[w] & mask != 0 {
                    for (a, b) in row.iter_mut().zip(prow.iter()) {
                        *a ^= *b;
                    }
                }
            }
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        rank
    }
}

/// Chain groups of one Alexander stratum, bucketed by Maslov grading.
struct Stratum {
    by_maslov: BTreeMap<i32, Vec<State>>,
}

impl Stratum {
    fn build(g: &GridDiagram, states: Vec<State>) -> Self {
        let graded: Vec<(i32, State)> = states
            .into_par_iter()
            .map(|x| (maslov(g, &x) as i32, x))
            .collect();
        let mut by_maslov: BTreeMap<i32, Vec<State>> = BTreeMap::new();
        for (m, x) in graded {
            by_maslov.entry(m).or_default().push(x);
        }
        for v in by_maslov.values_mut() {
            v.sort();
        }
        Stratum { by_maslov }
    }

    /// Rank of the boundary map from Maslov grading `d` to `d - 1`.
    fn boundary_rank(&self, g: &GridDiagram, d: i32, budget_mb: usize) -> Result<usize> {
        let Some(src) = self.by_maslov.get(&d) else {
            return Ok(0);
        };
        let Some(dst) = self.by_maslov.get(&(d - 1)) else {
            return Ok(0);
        };
        let bits = src.len() as u64 * dst.len() as u64;
        if bits / 8 > (budget_mb as u64) * 1024 * 1024 {
            return Err(GridError::ResourceBudgetExceeded(format!(
                "boundary matrix {}x{} exceeds {budget_mb} MiB",
                src.len(),
                dst.len()
            )));
        }
        let index: HashMap<&State, usize> = dst.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let rows: Vec<Vec<usize>> = src
            .par_iter()
            .map(|x| {
                tilde_differential(g, x)
                    .into_iter()
                    .filter_map(|y| index.get(&y).copied())
                    .collect()
            })
            .collect();
        let mut m = Gf2Matrix::new(dst.len());
        for r in rows {
            m.push_row(&r);
        }
        Ok(m.rank())
    }

    fn homology(&self, g: &GridDiagram, budget_mb: usize) -> Result<BTreeMap<i32, usize>> {
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for (&d, _) in &self.by_maslov {
            ranks.insert(d, self.boundary_rank(g, d, budget_mb)?);
        }
        let mut out = BTreeMap::new();
        for (&d, states) in &self.by_maslov {
            let rd = ranks.get(&d).copied().unwrap_or(0);
            let rup = ranks.get(&(d + 1)).copied().unwrap_or(0);
            let h = states.len() - rd - rup;
            if h > 0 {
                out.insert(d, h);
            }
        }
        Ok(out)
    }
}

/// Tilde homology of the stratum `A = s`, via kernel/rank over GF(2).
pub fn stratum_homology(g: &GridDiagram, s: i64, limits: &Limits) -> Result<BigradedDims> {
    g.require_knot()?;
    let states: Vec<State> = enumerate_states_pruned(g, s)?
        .into_iter()
        .filter(|x| alexander(g, x).map(|a| a == s).unwrap_or(false))
        .collect();
    let st = Stratum::build(g, states);
    let h = st.homology(g, limits.budget_mb)?;
    let mut dims = BigradedDims::default();
    for (d, k) in h {
        dims.add(d, s as i32, k);
    }
    Ok(dims)
}

/// Full tilde homology table by independent strata (requires full enumeration).
pub fn tilde_homology(g: &GridDiagram, limits: &Limits) -> Result<BigradedDims> {
    g.require_knot()?;
    let states = enumerate_all_states(g, limits)?;
    let mut by_a: BTreeMap<i64, Vec<State>> = BTreeMap::new();
    for x in states {
        by_a.entry(alexander(g, &x)?).or_default().push(x);
    }
    let mut dims = BigradedDims::default();
    for (a, states) in by_a {
        let st = Stratum::build(g, states);
        for (d, k) in st.homology(g, limits.budget_mb)? {
            dims.add(d, a as i32, k);
        }
    }
    Ok(dims)
}

/// Invert the relation `tilde = hat (x) W^{(n-1)}` from the top down.
///
/// `tilde` must be complete for every Alexander grading `>= s0` (pass the full
/// table, or a top fragment when only top strata are wanted).
pub fn hat_from_tilde(tilde: &BigradedDims, n: usize) -> Result<BigradedDims> {
    let binom = binomial_row(n - 1);
    let mut hat: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    // process in decreasing d + a so corrections are already known
    let mut keys: Vec<(i32, i32)> = tilde.0.keys().copied().collect();
    keys.sort_by_key(|&(d, a)| -(d as i64 + a as i64));
    for &(d, a) in &keys {
        let mut v = tilde.dim(d, a) as i64;
        for (k, &b) in binom.iter().enumerate().skip(1) {
            v -= b as i64 * hat.get(&(d + k as i32, a + k as i32)).copied().unwrap_or(0);
        }
        if v < 0 {
            return Err(GridError::NotDivisible { m: d, a });
        }
        if v > 0 {
            hat.insert((d, a), v);
        }
    }
    // consistency: convolving back must reproduce the input
    let mut out = BigradedDims::default();
    for (&(d, a), &v) in &hat {
        out.add(d, a, v as usize);
    }
    let back = out.convolve_w(n - 1);
    for (&(d, a), &v) in &tilde.0 {
        if back.dim(d, a) != v {
            return Err(GridError::NotDivisible { m: d, a });
        }
    }
    Ok(out)
}

/// Tilde dims of the top strata `A in {amax, amax-1, ..., amax-back}` for a
/// diagonal knot, via pruned enumeration only.
pub fn top_strata_tilde(g: &GridDiagram, back: i64, limits: &Limits) -> Result<BigradedDims> {
    g.require_diagonal()?;
    g.require_knot()?;
    let x0 = crate::diagonal::canonical_state(g);
    let gmax = alexander(g, &x0)?;
    let states = enumerate_states_pruned(g, gmax - back)?;
    let mut by_a: BTreeMap<i64, Vec<State>> = BTreeMap::new();
    for x in states {
        by_a.entry(alexander(g, &x)?).or_default().push(x);
    }
    let mut dims = BigradedDims::default();
    for (a, states) in by_a {
        if a < gmax - back {
            continue;
        }
        let st = Stratum::build(g, states);
        for (d, k) in st.homology(g, limits.budget_mb)? {
            dims.add(d, a as i32, k);
        }
    }
    Ok(dims)
}

/// Genus: diagonal fast path `A(x0)`, generic path via the full hat table.
pub fn genus(g: &GridDiagram, limits: &Limits) -> Result<i64> {
    g.require_knot()?;
    if g.is_diagonal() {
        let x0 = crate::diagonal::canonical_state(g);
        return alexander(g, &x0);
    }
    let hat = hat_from_tilde(&tilde_homology(g, limits)?, g.size())?;
    Ok(hat.max_alexander().unwrap_or(0) as i64)
}

/// Euler characteristic of the tilde chain groups as a Laurent polynomial in t.
fn tilde_euler(g: &GridDiagram, limits: &Limits) -> Result<LaurentPoly> {
    let states = enumerate_all_states(g, limits)?;
    let table = contribution_table(g);
    let terms: Vec<(i32, i64)> = states
        .par_iter()
        .map(|x| {
            let a2 = table.alexander_doubled(x);
            debug_assert!(a2 % 2 == 0);
            let m = maslov(g, x);
            (
                (a2 / 2) as i32,
                if m % 2 == 0 { 1i64 } else { -1i64 },
            )
        })
        .collect();
    let mut acc: BTreeMap<i32, i64> = BTreeMap::new();
    for (a, sgn) in terms {
        *acc.entry(a).or_insert(0) += sgn;
    }
    let mut p = LaurentPoly::zero();
    for (a, c) in acc {
        p = &p + &LaurentPoly::monomial(a, c);
    }
    Ok(p)
}

/// The symmetrized Alexander polynomial with value +1 at t = 1.
///
/// Computed as the Euler characteristic of the tilde complex divided by
/// `(1 - 1/t)^(n-1)`, which equals the alternating sum of hat dimensions.
pub fn alexander_poly(g: &GridDiagram, limits: &Limits) -> Result<LaurentPoly> {
    g.require_knot()?;
    let chi = tilde_euler(g, limits)?;
    let w = &LaurentPoly::one() - &LaurentPoly::monomial(-1, 1); // 1 - t^{-1}
    let mut p = chi;
    for _ in 0..g.size() - 1 {
        p = p.div_exact(&w)?;
    }
    let out = p.normalized_symmetric()?;
    if !out.is_symmetric() {
        return Err(GridError::PreconditionViolated(
            "Alexander polynomial failed the symmetry check".into(),
        ));
    }
    Ok(out)
}

/// Alexander polynomial read off a hat homology table by Equation-style
/// alternating sums; used to cross-check the Euler-characteristic route.
pub fn alexander_from_hat(hat: &BigradedDims) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for (&(d, a), &dim) in &hat.0 {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        p = &p + &LaurentPoly::monomial(a, sign * dim as i64);
    }
    p.normalized_symmetric()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::torus_shift(5, 2).unwrap()
    }

    #[test]
    fn unknot_two_states() {
        let g = GridDiagram::unknot();
        let states = enumerate_states(&g, None, &Limits::default()).unwrap();
        assert_eq!(states.len(), 2);
        for x in &states {
            assert!(tilde_differential(&g, x).is_empty());
        }
    }

    #[test]
    fn trefoil_top_stratum_is_x0_only() {
        let g = trefoil();
        let top = enumerate_states_pruned(&g, 1).unwrap();
        let top: Vec<_> = top
            .into_iter()
            .filter(|x| alexander(&g, x).unwrap() >= 1)
            .collect();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0], crate::diagonal::canonical_state(&g));
    }

    #[test]
    fn pruned_matches_bruteforce() {
        let g = trefoil();
        let all = enumerate_all_states(&g, &Limits::default()).unwrap();
        for threshold in -4..=2 {
            let brute: Vec<_> = all
                .iter()
                .filter(|x| alexander(&g, x).unwrap() >= threshold)
                .cloned()
                .collect();
            let mut pruned = enumerate_states_pruned(&g, threshold).unwrap();
            pruned.sort();
            let mut brute = brute;
            brute.sort();
            assert_eq!(pruned, brute);
        }
    }

    #[test]
    fn differential_squares_to_zero_small() {
        for g in [GridDiagram::unknot(), trefoil()] {
            let states = enumerate_all_states(&g, &Limits::default()).unwrap();
            for x in &states {
                let mut second: HashMap<State, usize> = HashMap::new();
                for y in tilde_differential(&g, x) {
                    assert_eq!(maslov(&g, &y), maslov(&g, x) - 1);
                    assert_eq!(
                        alexander(&g, &y).unwrap(),
                        alexander(&g, x).unwrap()
                    );
                    for z in tilde_differential(&g, &y) {
                        *second.entry(z).or_insert(0) += 1;
                    }
                }
                assert!(second.values().all(|c| c % 2 == 0));
            }
        }
    }

    #[test]
    fn unknot_homology() {
        let g = GridDiagram::unknot();
        let tilde = tilde_homology(&g, &Limits::default()).unwrap();
        let mut want = BigradedDims::default();
        want.add(0, 0, 1);
        want.add(-1, -1, 1);
        assert_eq!(tilde, want);
        let hat = hat_from_tilde(&tilde, 2).unwrap();
        let mut wanthat = BigradedDims::default();
        wanthat.add(0, 0, 1);
        assert_eq!(hat, wanthat);
    }

    #[test]
    fn trefoil_hat_and_delta() {
        let lim = Limits::default();
        let g = trefoil();
        let tilde = tilde_homology(&g, &lim).unwrap();
        let hat = hat_from_tilde(&tilde, 5).unwrap();
        let mut want = BigradedDims::default();
        want.add(0, 1, 1);
        want.add(-1, 0, 1);
        want.add(-2, -1, 1);
        assert_eq!(hat, want);
        // hat convolved back reproduces tilde
        assert_eq!(hat.convolve_w(4), tilde);
        let delta = alexander_poly(&g, &lim).unwrap();
        let want_delta = LaurentPoly::from_coeffs(-1, vec![1, -1, 1]);
        assert_eq!(delta, want_delta);
        assert_eq!(alexander_from_hat(&hat).unwrap(), want_delta);
        assert_eq!(genus(&g, &lim).unwrap(), 1);
    }

    #[test]
    fn stratum_matches_full() {
        let lim = Limits::default();
        let g = trefoil();
        let full = tilde_homology(&g, &lim).unwrap();
        for s in [-1i64, 0, 1] {
            let st = stratum_homology(&g, s, &lim).unwrap();
            assert_eq!(st.stratum(s as i32), full.stratum(s as i32));
        }
    }

    #[test]
    fn size_cap() {
        let g = GridDiagram::torus_shift(11, 2).unwrap();
        let err = enumerate_states(&g, None, &Limits::default()).unwrap_err();
        assert!(matches!(err, GridError::SizeCapExceeded { .. }));
    }
}
