//! Independent Alexander-polynomial oracle: Wirtinger presentation, Fox
//! derivatives, and a fraction-free Bareiss determinant over Z[t].

use crate::error::{GridError, Result};
use crate::planar::AnnotatedDiagram;
use crate::poly::{bareiss_det, BigPoly, LaurentPoly};

/// Alexander polynomial of a knot diagram via the Wirtinger Alexander matrix:
/// delete one row and column, take the determinant, normalize symmetric with
/// value +1 at t = 1.
pub fn fox_alexander(d: &AnnotatedDiagram) -> Result<LaurentPoly> {
    let crossings = d.crossings();
    let c = crossings.len();
    if c == 0 {
        return Ok(LaurentPoly::one());
    }
    let walk = d.walk(&crossings);
    // arcs: maximal over-runs, split at under-passages
    let under_positions: Vec<usize> = walk
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_over(&crossings))
        .map(|(i, _)| i)
        .collect();
    if under_positions.len() != c {
        return Err(GridError::PreconditionViolated(
            "diagram walk does not visit each crossing under exactly once".into(),
        ));
    }
    // arc index of each walk position: arc k runs from under_positions[k]
    // (exclusive) to under_positions[k+1] (inclusive)
    let m = walk.len();
    let arc_of_position = |pos: usize| -> usize {
        // the most recent under-passage at or before pos, cyclically;
        // positions strictly after under_positions[k] belong to arc k
        for (k, &u) in under_positions.iter().enumerate().rev() {
            if u < pos {
                return k;
            }
        }
        under_positions.len() - 1 // wrapped: after the last under-passage
    };
    let _ = m;

    // rows: one relation per crossing; columns: arcs
    let mut mat = vec![vec![BigPoly::zero(); c]; c];
    for (k, &upos) in under_positions.iter().enumerate() {
        let p = walk[upos];
        let cr = p.crossing;
        let arc_in = if k == 0 { c - 1 } else { k - 1 };
        let arc_out = k;
        // over arc at this crossing: the arc containing its over passage
        let opos = walk
            .iter()
            .enumerate()
            .position(|(i, q)| q.crossing == cr && i != upos)
            .unwrap();
        let arc_over = arc_of_position(opos);
        let sign = crossing_sign(d, &crossings, cr);
        // Fox derivative of o^e u_in o^{-e} u_out^{-1}, abelianized to t.
        // For e = +1: (u_in: t, u_out: -1, o: 1 - t); for e = -1 multiply by t:
        // (u_in: 1, u_out: -t, o: t - 1).
        let (ci, co, cv) = if sign > 0 {
            (
                BigPoly::from_i64(&[0, 1]),
                BigPoly::constant(-1),
                BigPoly::from_i64(&[1, -1]),
            )
        } else {
            (
                BigPoly::constant(1),
                BigPoly::from_i64(&[0, -1]),
                BigPoly::from_i64(&[-1, 1]),
            )
        };
        let row = &mut mat[k];
        row[arc_in] = row[arc_in].sub(&ci.mul(&BigPoly::constant(-1)));
        row[arc_out] = row[arc_out].sub(&co.mul(&BigPoly::constant(-1)));
        row[arc_over] = row[arc_over].sub(&cv.mul(&BigPoly::constant(-1)));
    }
    // first Alexander ideal: any (c-1)-minor
    let minor: Vec<Vec<BigPoly>> = mat[..c - 1]
        .iter()
        .map(|row| row[..c - 1].to_vec())
        .collect();
    let det = bareiss_det(minor);
    if det.is_zero() {
        return Err(GridError::PreconditionViolated(
            "vanishing Alexander determinant".into(),
        ));
    }
    det.to_laurent()?.normalized_symmetric()
}

/// Sign of a crossing from the over and under directions of travel.
fn crossing_sign(
    d: &AnnotatedDiagram,
    crossings: &[crate::planar::Crossing],
    cr: usize,
) -> i64 {
    let segs = d.segments();
    let c = &crossings[cr];
    let v = segs[c.vseg].dir();
    let h = segs[c.hseg].dir();
    let (over, under) = if c.vertical_over { (v, h) } else { (h, v) };
    let det = over.0 * under.1 - over.1 * under.0;
    det.signum() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;

    #[test]
    fn unknot_delta_one() {
        let d = GridDiagram::unknot().to_planar_diagram().unwrap();
        assert_eq!(fox_alexander(&d).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_delta() {
        let g = GridDiagram::torus_shift(5, 2).unwrap();
        let d = g.to_planar_diagram().unwrap();
        let delta = fox_alexander(&d).unwrap();
        assert_eq!(delta, LaurentPoly::from_coeffs(-1, vec![1, -1, 1]));
    }

    #[test]
    fn torus_34_delta() {
        let g = GridDiagram::torus_shift(7, 3).unwrap();
        let d = g.to_planar_diagram().unwrap();
        let delta = fox_alexander(&d).unwrap();
        // t^3 - t^2 + 1 - t^-2 + t^-3
        let want = LaurentPoly::from_coeffs(-3, vec![1, -1, 0, 1, 0, -1, 1]);
        assert_eq!(delta, want);
    }
}
