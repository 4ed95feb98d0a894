//! The auxiliary combinatorial chain complexes: ordered partitions with the
//! splitting differential, and the domain complex of a planar diagonal grid.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::error::{GridError, Result};
use crate::homology::Gf2Matrix;

// ---- the complex of ordered partitions ----

/// Ordered partitions (compositions) of `n`, graded by length.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=rem {
            cur.push(part);
            rec(rem - part, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// The partition complex: bases per length and the splitting differential
/// `C_m -> C_{m+1}`.
pub struct PartitionComplex {
    pub n: usize,
    pub basis: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl PartitionComplex {
    pub fn new(n: usize) -> Self {
        let mut basis: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for c in compositions(n) {
            basis.entry(c.len()).or_default().push(c);
        }
        for v in basis.values_mut() {
            v.sort();
        }
        PartitionComplex { n, basis }
    }

    pub fn dim(&self, m: usize) -> usize {
        self.basis.get(&m).map_or(0, |v| v.len())
    }

    /// All single-part splittings of a composition.
    pub fn differential(lambda: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (k, &part) in lambda.iter().enumerate() {
            for a in 1..part {
                let mut next = Vec::with_capacity(lambda.len() + 1);
                next.extend_from_slice(&lambda[..k]);
                next.push(a);
                next.push(part - a);
                next.extend_from_slice(&lambda[k + 1..]);
                out.push(next);
            }
        }
        out
    }

    fn boundary_rank(&self, m: usize) -> usize {
        let Some(src) = self.basis.get(&m) else {
            return 0;
        };
        let Some(dst) = self.basis.get(&(m + 1)) else {
            return 0;
        };
        let index: HashMap<&[usize], usize> = dst
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();
        let mut mat = Gf2Matrix::new(dst.len());
        for lam in src {
            let cols: Vec<usize> = PartitionComplex::differential(lam)
                .iter()
                .map(|t| index[t.as_slice()])
                .collect();
            mat.push_row(&cols);
        }
        mat.rank()
    }

    /// Graded homology dimensions, by length.
    pub fn homology(&self) -> BTreeMap<usize, usize> {
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        for (&m, _) in &self.basis {
            ranks.insert(m, self.boundary_rank(m));
        }
        let mut out = BTreeMap::new();
        for (&m, v) in &self.basis {
            let rout = ranks.get(&m).copied().unwrap_or(0);
            let rin = if m >= 1 {
                ranks.get(&(m - 1)).copied().unwrap_or(0)
            } else {
                0
            };
            let h = v.len() - rout - rin;
            if h > 0 {
                out.insert(m, h);
            }
        }
        out
    }
}

// ---- the complex of a planar diagonal grid ----

/// An `l x l` planar grid with O-markings on the top-left-to-bottom-right
/// diagonal (square `(t, l-1-t)` in bottom-up coordinates) and an arbitrary
/// set of X-marked squares avoiding the O squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGrid {
    pub size: usize,
    pub xs: Vec<(usize, usize)>,
}

impl PlanarGrid {
    pub fn new(size: usize, mut xs: Vec<(usize, usize)>) -> Result<Self> {
        if size == 0 {
            return Err(GridError::Validation("size must be positive".into()));
        }
        xs.sort();
        for w in xs.windows(2) {
            if w[0] == w[1] {
                return Err(GridError::Validation("repeated X square".into()));
            }
        }
        for &(c, r) in &xs {
            if c >= size || r >= size {
                return Err(GridError::Validation("X out of range".into()));
            }
            if r == size - 1 - c {
                return Err(GridError::Validation("X on an O square".into()));
            }
        }
        Ok(PlanarGrid { size, xs })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            size: usize,
            #[serde(rename = "X", default)]
            xs: Vec<(usize, usize)>,
        }
        let mut de = serde_json::Deserializer::from_str(text);
        let raw = Raw::deserialize(&mut de).map_err(|e| GridError::Parse(e.to_string()))?;
        de.end()
            .map_err(|_| GridError::Parse("trailing content after JSON object".into()))?;
        PlanarGrid::new(raw.size, raw.xs)
    }

    /// True when two X-markings are mirror images across the grid diagonal.
    pub fn has_symmetric_x_pair(&self) -> bool {
        let l = self.size;
        self.xs
            .iter()
            .any(|&(c, r)| self.xs.contains(&(l - 1 - r, l - 1 - c)))
    }
}

/// A domain of the planar complex: the region between two monotone staircase
/// paths, recorded as a bitmap with its grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDomain {
    pub size: usize,
    /// `cells[c]` = half-open row interval `[lo, hi)` of column `c`.
    pub cells: Vec<(usize, usize)>,
    /// `gr(D) = |x cap x0|`.
    pub grading: usize,
}

impl GridDomain {
    pub fn contains(&self, c: usize, r: usize) -> bool {
        let (lo, hi) = self.cells[c];
        r >= lo && r < hi
    }

    pub fn area(&self) -> usize {
        self.cells.iter().map(|&(lo, hi)| hi - lo).sum()
    }

    fn bitmap(&self) -> Vec<bool> {
        let l = self.size;
        let mut b = vec![false; l * l];
        for c in 0..l {
            for r in self.cells[c].0..self.cells[c].1 {
                b[c * l + r] = true;
            }
        }
        b
    }
}

/// Non-increasing sequences of length `l` with values in `0..=l`: the monotone
/// staircase paths from the top-left to the bottom-right corner.
fn staircase_paths(l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(l: usize, maxv: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for v in (0..=maxv).rev() {
            cur.push(v);
            rec(l, v, cur, out);
            cur.pop();
        }
    }
    rec(l, l, &mut cur, &mut out);
    out
}

/// The boundary-chain membership test: the domain between `lo` and `hi`
/// belongs to the complex iff `x0 - d(d_alpha D)` is a state with 0/1
/// coefficients; returns the grading when it is.
fn domain_state_grading(l: usize, lo: &[usize], hi: &[usize]) -> Option<usize> {
    let mut chain: HashMap<(usize, usize), i64> = HashMap::new();
    for c in 0..l {
        if lo[c] >= hi[c] {
            continue;
        }
        *chain.entry((c + 1, lo[c])).or_insert(0) += 1;
        *chain.entry((c, lo[c])).or_insert(0) -= 1;
        *chain.entry((c + 1, hi[c])).or_insert(0) -= 1;
        *chain.entry((c, hi[c])).or_insert(0) += 1;
    }
    // x = x0 - chain must be a permutation state on the (l+1)-point lattice
    let mut x: HashMap<(usize, usize), i64> = HashMap::new();
    for i in 0..=l {
        x.insert((i, l - i), 1);
    }
    for (p, v) in chain {
        *x.entry(p).or_insert(0) -= v;
    }
    let points: Vec<(usize, usize)> = x
        .iter()
        .filter_map(|(&p, &v)| match v {
            0 => None,
            1 => Some(p),
            _ => Some((usize::MAX, usize::MAX)),
        })
        .collect();
    if points.iter().any(|&p| p.0 == usize::MAX) || points.len() != l + 1 {
        return None;
    }
    let mut cols = vec![false; l + 1];
    let mut rows = vec![false; l + 1];
    for &(c, r) in &points {
        if c > l || r > l || cols[c] || rows[r] {
            return None;
        }
        cols[c] = true;
        rows[r] = true;
    }
    // grading: points shared with x0
    let gr = points.iter().filter(|&&(c, r)| r == l - c).count();
    Some(gr)
}

/// All domains of the planar complex of `E`, ordered deterministically.
pub fn planar_domains(e: &PlanarGrid) -> Vec<GridDomain> {
    let l = e.size;
    let paths = staircase_paths(l);
    // marking containment prefilters
    let lo_ok: Vec<&Vec<usize>> = paths
        .iter()
        .filter(|p| {
            (0..l).all(|t| p[t] <= l - 1 - t) && e.xs.iter().all(|&(c, r)| p[c] <= r)
        })
        .collect();
    let hi_ok: Vec<&Vec<usize>> = paths
        .iter()
        .filter(|p| {
            (0..l).all(|t| p[t] > l - 1 - t) && e.xs.iter().all(|&(c, r)| p[c] > r)
        })
        .collect();
    let mut seen: HashMap<Vec<bool>, ()> = HashMap::new();
    let mut out = Vec::new();
    for lo in &lo_ok {
        for hi in &hi_ok {
            if (0..l).any(|c| lo[c] > hi[c]) {
                continue;
            }
            let Some(gr) = domain_state_grading(l, lo, hi) else {
                continue;
            };
            let d = GridDomain {
                size: l,
                cells: (0..l).map(|c| (lo[c], hi[c])).collect(),
                grading: gr,
            };
            if seen.insert(d.bitmap(), ()).is_none() {
                out.push(d);
            }
        }
    }
    out.sort_by(|a, b| a.cells.cmp(&b.cells));
    out
}

/// Graded homology of the planar-grid complex `(C(E), d_E)`.
pub fn planar_homology(e: &PlanarGrid) -> BTreeMap<usize, usize> {
    let domains = planar_domains(e);
    homology_of_domains(&domains)
}

fn difference_is_rectangle(big: &GridDomain, small: &GridDomain) -> bool {
    let l = big.size;
    let mut cols = Vec::new();
    let mut rows: Option<(usize, usize)> = None;
    for c in 0..l {
        let (blo, bhi) = big.cells[c];
        let (slo, shi) = small.cells[c];
        if slo < blo || shi > bhi {
            return false; // not contained
        }
        if (blo, bhi) == (slo, shi) {
            continue;
        }
        // the difference in this column must be one contiguous interval
        let diff = if slo >= shi {
            (blo, bhi)
        } else if slo == blo {
            (shi, bhi)
        } else if shi == bhi {
            (blo, slo)
        } else {
            return false; // small strictly inside: two pieces
        };
        if diff.0 >= diff.1 {
            continue;
        }
        match rows {
            None => rows = Some(diff),
            Some(r) if r == diff => {}
            _ => return false,
        }
        cols.push(c);
    }
    if cols.is_empty() {
        return false;
    }
    // contiguous columns
    cols.windows(2).all(|w| w[1] == w[0] + 1)
}

fn homology_of_domains(domains: &[GridDomain]) -> BTreeMap<usize, usize> {
    let mut by_gr: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, d) in domains.iter().enumerate() {
        by_gr.entry(d.grading).or_default().push(i);
    }
    // ranks of d: gr -> gr-1
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for (&gr, idxs) in &by_gr {
        if gr == 0 {
            continue;
        }
        let Some(dst) = by_gr.get(&(gr - 1)) else {
            ranks.insert(gr, 0);
            continue;
        };
        let pos: HashMap<usize, usize> = dst.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut mat = Gf2Matrix::new(dst.len());
        for &i in idxs {
            let cols: Vec<usize> = dst
                .iter()
                .filter(|&&j| difference_is_rectangle(&domains[i], &domains[j]))
                .map(|j| pos[j])
                .collect();
            mat.push_row(&cols);
        }
        ranks.insert(gr, mat.rank());
    }
    let mut out = BTreeMap::new();
    for (&gr, idxs) in &by_gr {
        let rdown = ranks.get(&gr).copied().unwrap_or(0);
        let rup = ranks.get(&(gr + 1)).copied().unwrap_or(0);
        let h = idxs.len() - rdown - rup;
        if h > 0 {
            out.insert(gr, h);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        for n in 1..=10usize {
            let pc = PartitionComplex::new(n);
            for m in 1..=n {
                // compositions of n with m parts: C(n-1, m-1)
                let mut b = 1usize;
                for i in 0..m - 1 {
                    b = b * (n - 1 - i) / (i + 1);
                }
                assert_eq!(pc.dim(m), b, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn partition_differential_squares_to_zero() {
        for n in 2..=9usize {
            let pc = PartitionComplex::new(n);
            for basis in pc.basis.values() {
                for lam in basis {
                    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
                    for mu in PartitionComplex::differential(lam) {
                        for nu in PartitionComplex::differential(&mu) {
                            *counts.entry(nu).or_insert(0) += 1;
                        }
                    }
                    assert!(counts.values().all(|c| c % 2 == 0));
                }
            }
        }
    }

    #[test]
    fn partition_homology_results() {
        let one = PartitionComplex::new(1).homology();
        assert_eq!(one.len(), 1);
        assert_eq!(one.get(&1), Some(&1));
        for n in 2..=9usize {
            assert!(PartitionComplex::new(n).homology().is_empty(), "n={n}");
        }
        // the N=3 complex has dims (1, 2, 1) and differentials as stated
        let pc = PartitionComplex::new(3);
        assert_eq!(
            PartitionComplex::differential(&[3]),
            vec![vec![1, 2], vec![2, 1]]
        );
        assert_eq!(PartitionComplex::differential(&[1, 2]), vec![vec![1, 1, 1]]);
        assert_eq!(pc.dim(1), 1);
        assert_eq!(pc.dim(2), 2);
        assert_eq!(pc.dim(3), 1);
    }

    #[test]
    fn planar_no_x_homology_one_dimensional() {
        for l in 2..=5usize {
            let e = PlanarGrid::new(l, vec![]).unwrap();
            let h = planar_homology(&e);
            assert_eq!(h.values().sum::<usize>(), 1, "l={l}");
            assert_eq!(h.get(&0), Some(&1), "l={l}");
        }
    }

    #[test]
    fn paths_enumeration_matches_bruteforce_small() {
        // exhaustive bitmap enumeration for l <= 3 agrees with the staircase
        // path enumeration
        for l in 1..=3usize {
            for mask in 0u32..(1 << (l * l - l)) {
                // distribute X's over non-O squares
                let mut xs = Vec::new();
                let mut bit = 0;
                for c in 0..l {
                    for r in 0..l {
                        if r == l - 1 - c {
                            continue;
                        }
                        if mask & (1 << bit) != 0 {
                            xs.push((c, r));
                        }
                        bit += 1;
                    }
                }
                let e = PlanarGrid::new(l, xs).unwrap();
                let via_paths = planar_domains(&e);
                let brute = brute_force_domains(&e);
                assert_eq!(via_paths.len(), brute, "l={l} mask={mask}");
            }
        }
    }

    fn brute_force_domains(e: &PlanarGrid) -> usize {
        let l = e.size;
        let cells = l * l;
        let mut count = 0;
        'outer: for mask in 0u64..(1u64 << cells) {
            let get = |c: usize, r: usize| mask & (1 << (c * l + r)) != 0;
            // contains all markings
            for t in 0..l {
                if !get(t, l - 1 - t) {
                    continue 'outer;
                }
            }
            for &(c, r) in &e.xs {
                if !get(c, r) {
                    continue 'outer;
                }
            }
            // boundary chain test on the raw bitmap
            let mut chain: HashMap<(usize, usize), i64> = HashMap::new();
            for c in 0..l {
                for r in 0..l {
                    if !get(c, r) {
                        continue;
                    }
                    *chain.entry((c + 1, r)).or_insert(0) += 1;
                    *chain.entry((c, r)).or_insert(0) -= 1;
                    *chain.entry((c + 1, r + 1)).or_insert(0) -= 1;
                    *chain.entry((c, r + 1)).or_insert(0) += 1;
                }
            }
            let mut x: HashMap<(usize, usize), i64> = HashMap::new();
            for i in 0..=l {
                x.insert((i, l - i), 1);
            }
            for (p, v) in chain {
                *x.entry(p).or_insert(0) -= v;
            }
            let pts: Vec<(usize, usize)> = x.iter().filter(|(_, &v)| v != 0).map(|(&p, _)| p).collect();
            if x.values().any(|&v| v < 0 || v > 1) || pts.len() != l + 1 {
                continue;
            }
            let mut cols = vec![false; l + 1];
            let mut rows = vec![false; l + 1];
            let mut ok = true;
            for &(c, r) in &pts {
                if c > l || r > l || cols[c] || rows[r] {
                    ok = false;
                    break;
                }
                cols[c] = true;
                rows[r] = true;
            }
            if ok {
                count += 1;
            }
        }
        count
    }
}
