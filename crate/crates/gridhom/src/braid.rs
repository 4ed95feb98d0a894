//! Positive braid words, grid diagrams of braid closures, and diagonal grid
//! diagrams for the three-strand family built from sigma_1-twist blocks.

use crate::error::{GridError, Result};
use crate::fox::fox_alexander;
use crate::grid::GridDiagram;

/// A positive braid word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self> {
        if strands == 0 {
            return Err(GridError::Validation("need at least one strand".into()));
        }
        for &i in &letters {
            if i == 0 || i >= strands {
                return Err(GridError::Validation(format!(
                    "generator index {i} out of range 1..{}",
                    strands - 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse words like `"a1^4 a2 a1^3 a2^2"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let rest = tok
                .strip_prefix('a')
                .or_else(|| tok.strip_prefix('s'))
                .ok_or_else(|| GridError::Parse(format!("bad braid token {tok:?}")))?;
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i, p),
                None => (rest, "1"),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| GridError::Parse(format!("bad generator index in {tok:?}")))?;
            let p: usize = pow
                .parse()
                .map_err(|_| GridError::Parse(format!("bad exponent in {tok:?}")))?;
            letters.extend(std::iter::repeat(i).take(p));
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Number of components of the closure: cycles of the underlying permutation.
    pub fn closure_components(&self) -> usize {
        let s = self.strands;
        let mut perm: Vec<usize> = (0..s).collect();
        for &i in &self.letters {
            perm.swap(i - 1, i);
        }
        let mut seen = vec![false; s];
        let mut cycles = 0;
        for start in 0..s {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
        cycles
    }
}

/// A grid diagram of the closure of a positive braid word, built by tracking
/// vertical runs: one column per run, one row per horizontal jog. The under
/// strand of each letter jogs past the over strand; the closure arcs nest on
/// the right, position 1 outermost, so no crossings appear beyond the letters
/// themselves. Size is `letters + 2 * strands`.
pub fn braid_closure_grid(w: &BraidWord) -> Result<GridDiagram> {
    if w.closure_components() != 1 {
        return Err(GridError::NotAKnot(format!(
            "{} components",
            w.closure_components()
        )));
    }
    let s = w.strands;
    let c = w.letters.len();
    #[derive(Clone, Copy)]
    struct Run {
        x_row: usize,
        o_row: usize,
    }
    let none = usize::MAX;
    let mut runs: Vec<Run> = Vec::with_capacity(c + 2 * s);
    // return run of position k: enters at top row s+c+s-k, exits at bottom
    // row k-1
    for k in 1..=s {
        runs.push(Run {
            x_row: s + c + s - k,
            o_row: k - 1,
        });
    }
    // initial lane runs, entered from the bottom jogs
    for k in 1..=s {
        runs.push(Run {
            x_row: k - 1,
            o_row: none,
        });
    }
    // lanes left to right, then returns with position 1 rightmost
    let mut order: Vec<usize> = (s..2 * s).chain((0..s).rev()).collect();
    let mut pos: Vec<usize> = (s..2 * s).collect(); // pos[k-1] = active run id
    for (t, &i) in w.letters.iter().enumerate() {
        let row = s + t;
        let over = pos[i - 1];
        let under = pos[i];
        runs[under].o_row = row;
        let new_id = runs.len();
        runs.push(Run {
            x_row: row,
            o_row: none,
        });
        let at = order.iter().position(|&r| r == over).unwrap();
        order.insert(at, new_id);
        pos[i - 1] = new_id;
        pos[i] = over;
    }
    for k in 1..=s {
        runs[pos[k - 1]].o_row = s + c + s - k;
    }
    let n = runs.len();
    let mut o = vec![0usize; n];
    let mut x = vec![0usize; n];
    for (col, &rid) in order.iter().enumerate() {
        o[col] = runs[rid].o_row;
        x[col] = runs[rid].x_row;
    }
    let g = GridDiagram::new(n, o, x)?;
    g.require_knot()?;
    Ok(g)
}

/// The word `[m_1]...[m_p] sigma_2^l` with `[m] = sigma_1^m sigma_2`, on three
/// strands.
pub fn family_word(ms: &[usize], twists: usize) -> Result<BraidWord> {
    if ms.is_empty() || ms.iter().any(|&m| m == 0) {
        return Err(GridError::Validation(
            "block exponents must be positive".into(),
        ));
    }
    let mut letters = Vec::new();
    for &m in ms {
        letters.extend(std::iter::repeat(1).take(m));
        letters.push(2);
    }
    letters.extend(std::iter::repeat(2).take(twists));
    BraidWord::new(3, letters)
}

/// Diagonal grid with `X[j] = n-1-pi(j)` for the two-block staircase
/// permutation: `a` strands shift by 2, then `b` strands shift by 3.
fn two_block_staircase_grid(a: usize, b: usize) -> Result<GridDiagram> {
    let n = a + b + 3;
    let mut pi = vec![0usize; n];
    for (j, p) in pi.iter_mut().enumerate() {
        *p = if j < a {
            j + 2
        } else if j < a + b {
            j + 3
        } else if j == a + b {
            0
        } else if j == a + b + 1 {
            1
        } else {
            a + 2
        };
    }
    let o: Vec<usize> = (0..n).map(|j| n - 1 - j).collect();
    let x: Vec<usize> = (0..n).map(|j| n - 1 - pi[j]).collect();
    GridDiagram::new(n, o, x)
}

/// A diagonal grid diagram of the closure of `[m_1]...[m_p] sigma_2^l`.
///
/// Single-block words split as connected sums of (2, q) torus knots and are
/// assembled from shift grids. Longer words are matched against the
/// two-block staircase grids, with agreement certified by the Fox oracle
/// against the generic closure grid.
pub fn diagonal_family_grid(ms: &[usize], twists: usize) -> Result<GridDiagram> {
    let w = family_word(ms, twists)?;
    if w.closure_components() != 1 {
        return Err(GridError::NotAKnot(format!(
            "{} components",
            w.closure_components()
        )));
    }
    if ms.len() == 1 {
        // sigma_1^m sigma_2^(l+1): the connected sum T(2,m) # T(2,l+1)
        let factor = |q: usize| -> Result<Option<GridDiagram>> {
            match q {
                0 => Err(GridError::NotAKnot("even twist region".into())),
                1 => Ok(None),
                _ => Ok(Some(GridDiagram::torus_shift(q + 2, 2)?)),
            }
        };
        let left = factor(ms[0])?;
        let right = factor(twists + 1)?;
        let out = match (left, right) {
            (None, None) => GridDiagram::unknot(),
            (Some(g), None) | (None, Some(g)) => g,
            (Some(g1), Some(g2)) => g1.connected_sum(&g2)?,
        };
        debug_assert!(out.is_diagonal());
        return Ok(out);
    }
    // two-block staircase scan, certified by Alexander-polynomial agreement
    let closure = braid_closure_grid(&w)?;
    let target = fox_alexander(&closure.to_planar_diagram()?)?;
    let c = w.letters().len();
    for b in 1..=(c.saturating_sub(1)) / 2 {
        let a = c - 2 * b;
        if a == 0 {
            break;
        }
        let Ok(g) = two_block_staircase_grid(a, b) else {
            continue;
        };
        if !g.is_knot() {
            continue;
        }
        let delta = fox_alexander(&g.to_planar_diagram()?)?;
        if delta == target {
            debug_assert!(g.is_diagonal());
            return Ok(g);
        }
    }
    Err(GridError::IllegalMove(
        "no diagonal staircase grid matches this braid closure".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;

    fn delta_of(g: &GridDiagram) -> LaurentPoly {
        fox_alexander(&g.to_planar_diagram().unwrap()).unwrap()
    }

    #[test]
    fn closure_component_counts() {
        let tref = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(tref.closure_components(), 1);
        let id2 = BraidWord::new(2, vec![]).unwrap();
        assert_eq!(id2.closure_components(), 2);
        assert!(braid_closure_grid(&id2).is_err());
    }

    #[test]
    fn closure_unknot_and_trefoil() {
        let u = BraidWord::new(2, vec![1]).unwrap();
        let g = braid_closure_grid(&u).unwrap();
        assert_eq!(delta_of(&g), LaurentPoly::one());

        let tref = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let g = braid_closure_grid(&tref).unwrap();
        assert_eq!(g.size(), 3 + 4);
        assert_eq!(delta_of(&g), LaurentPoly::from_coeffs(-1, vec![1, -1, 1]));
    }

    #[test]
    fn closure_torus_34() {
        let w = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        let g = braid_closure_grid(&w).unwrap();
        let want = delta_of(&GridDiagram::torus_shift(7, 3).unwrap());
        assert_eq!(delta_of(&g), want);
    }

    #[test]
    fn closure_torus_25() {
        let w = BraidWord::new(2, vec![1; 5]).unwrap();
        let g = braid_closure_grid(&w).unwrap();
        let want = delta_of(&GridDiagram::torus_shift(7, 2).unwrap());
        assert_eq!(delta_of(&g), want);
    }

    #[test]
    fn word_parsing() {
        let w = BraidWord::parse(3, "a1^4 a2 a1^3 a2^2").unwrap();
        assert_eq!(w.letters(), &[1, 1, 1, 1, 2, 1, 1, 1, 2, 2]);
        assert!(BraidWord::parse(3, "a3").is_err());
    }

    #[test]
    fn family_unknot() {
        let g = diagonal_family_grid(&[1], 0).unwrap();
        assert!(g.is_diagonal());
        assert_eq!(delta_of(&g), LaurentPoly::one());
    }

    #[test]
    fn family_trefoil() {
        let g = diagonal_family_grid(&[3], 0).unwrap();
        assert!(g.is_diagonal());
        assert_eq!(g.size(), 5);
        assert_eq!(delta_of(&g), LaurentPoly::from_coeffs(-1, vec![1, -1, 1]));
    }

    #[test]
    fn family_granny() {
        let g = diagonal_family_grid(&[3], 2).unwrap();
        assert!(g.is_diagonal());
        assert_eq!(g.size(), 8);
        let tref = LaurentPoly::from_coeffs(-1, vec![1, -1, 1]);
        assert_eq!(delta_of(&g), &tref * &tref);
    }

    #[test]
    fn family_rejects_links() {
        assert!(matches!(
            diagonal_family_grid(&[2, 2], 0),
            Err(GridError::NotAKnot(_))
        ));
        assert!(matches!(
            diagonal_family_grid(&[2], 1),
            Err(GridError::NotAKnot(_))
        ));
    }

    #[test]
    fn family_ten_139() {
        // closure of a1^4 a2 a1^3 a2^2
        let g = diagonal_family_grid(&[4, 3], 1).unwrap();
        assert!(g.is_diagonal());
        assert!(g.is_knot());
        let w = family_word(&[4, 3], 1).unwrap();
        let closure = braid_closure_grid(&w).unwrap();
        assert_eq!(delta_of(&g), delta_of(&closure));
    }
}
