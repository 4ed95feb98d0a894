//! Rectilinear planar knot diagrams: closed orthogonal polylines with
//! per-crossing over bits, crossing exchange, and Reidemeister I/II reduction.
//!
//! A diagram produced from a grid has every crossing "vertical over"; an
//! exchanged crossing is recorded in `flips`. Reductions are geometric:
//! coordinates are rescaled before a strand is rerouted so all offsets stay
//! on the integer lattice.

use std::collections::HashSet;

use crate::error::{GridError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

impl Pt {
    pub fn new(x: i64, y: i64) -> Self {
        Pt { x, y }
    }
}

/// An oriented axis-parallel segment of the diagram, `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seg {
    pub a: Pt,
    pub b: Pt,
}

impl Seg {
    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    pub fn dir(&self) -> (i64, i64) {
        (
            (self.b.x - self.a.x).signum(),
            (self.b.y - self.a.y).signum(),
        )
    }

    fn span(&self) -> (i64, i64) {
        if self.is_vertical() {
            (self.a.y.min(self.b.y), self.a.y.max(self.b.y))
        } else {
            (self.a.x.min(self.b.x), self.a.x.max(self.b.x))
        }
    }

    fn line(&self) -> i64 {
        if self.is_vertical() {
            self.a.x
        } else {
            self.a.y
        }
    }

    fn contains_interior(&self, p: Pt) -> bool {
        if self.is_vertical() {
            p.x == self.a.x && p.y > self.span().0 && p.y < self.span().1
        } else {
            p.y == self.a.y && p.x > self.span().0 && p.x < self.span().1
        }
    }
}

/// A transverse crossing; `vertical_over` already accounts for exchanges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub pt: Pt,
    pub vseg: usize,
    pub hseg: usize,
    pub vertical_over: bool,
}

/// One passage of the knot through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub seg: usize,
    pub vertical_role: bool,
}

impl Passage {
    pub fn is_over(&self, crossings: &[Crossing]) -> bool {
        crossings[self.crossing].vertical_over == self.vertical_role
    }
}

/// A knot diagram as one closed rectilinear polyline plus exchanged crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDiagram {
    verts: Vec<Pt>,
    flips: HashSet<Pt>,
}

impl AnnotatedDiagram {
    pub fn from_polyline(verts: Vec<Pt>) -> Result<Self> {
        let d = AnnotatedDiagram {
            verts,
            flips: HashSet::new(),
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = self.verts.len();
        if n < 4 || n % 2 != 0 {
            return Err(GridError::Validation(format!(
                "polyline needs an even number >= 4 of vertices, got {n}"
            )));
        }
        let segs = self.segments();
        for (i, s) in segs.iter().enumerate() {
            if s.a == s.b {
                return Err(GridError::Validation(format!("segment {i} is degenerate")));
            }
            if s.a.x != s.b.x && s.a.y != s.b.y {
                return Err(GridError::Validation(format!("segment {i} is not axis-parallel")));
            }
            let t = &segs[(i + 1) % segs.len()];
            if s.is_vertical() == t.is_vertical() {
                return Err(GridError::Validation(format!(
                    "segments {i} and next do not alternate axes"
                )));
            }
        }
        // no collinear overlaps, no endpoint touching another segment's interior
        for (i, s) in segs.iter().enumerate() {
            for (j, t) in segs.iter().enumerate() {
                if i >= j {
                    continue;
                }
                if s.is_vertical() == t.is_vertical() && s.line() == t.line() {
                    let (a0, a1) = s.span();
                    let (b0, b1) = t.span();
                    if a0 < b1 && b0 < a1 {
                        return Err(GridError::Validation(format!(
                            "segments {i} and {j} overlap collinearly"
                        )));
                    }
                }
                if t.contains_interior(s.a) && s.is_vertical() == t.is_vertical() {
                    return Err(GridError::Validation("T-touching segments".into()));
                }
            }
        }
        Ok(())
    }

    pub fn verts(&self) -> &[Pt] {
        &self.verts
    }

    pub fn segments(&self) -> Vec<Seg> {
        let n = self.verts.len();
        (0..n)
            .map(|i| Seg {
                a: self.verts[i],
                b: self.verts[(i + 1) % n],
            })
            .collect()
    }

    /// All transverse crossings, sorted by point; the index is the crossing id.
    pub fn crossings(&self) -> Vec<Crossing> {
        let segs = self.segments();
        let mut out = Vec::new();
        for (i, s) in segs.iter().enumerate() {
            if !s.is_vertical() {
                continue;
            }
            for (j, t) in segs.iter().enumerate() {
                if t.is_vertical() {
                    continue;
                }
                let (y0, y1) = s.span();
                let (x0, x1) = t.span();
                if x0 < s.line() && s.line() < x1 && y0 < t.line() && t.line() < y1 {
                    let pt = Pt::new(s.line(), t.line());
                    out.push(Crossing {
                        pt,
                        vseg: i,
                        hseg: j,
                        vertical_over: !self.flips.contains(&pt),
                    });
                }
            }
        }
        out.sort_by_key(|c| c.pt);
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// Passages through crossings in walk order along the knot.
    pub fn walk(&self, crossings: &[Crossing]) -> Vec<Passage> {
        let segs = self.segments();
        let mut out = Vec::new();
        for (i, s) in segs.iter().enumerate() {
            let mut here: Vec<(i64, Passage)> = Vec::new();
            for (ci, c) in crossings.iter().enumerate() {
                if c.vseg == i || c.hseg == i {
                    let param = if s.is_vertical() { c.pt.y } else { c.pt.x };
                    // order along direction of travel
                    let d = if s.is_vertical() {
                        s.dir().1
                    } else {
                        s.dir().0
                    };
                    here.push((
                        param * d,
                        Passage {
                            crossing: ci,
                            seg: i,
                            vertical_role: s.is_vertical(),
                        },
                    ));
                }
            }
            here.sort_by_key(|e| e.0);
            out.extend(here.into_iter().map(|e| e.1));
        }
        out
    }

    /// Toggle the over bit of the crossing with the given id.
    pub fn with_crossing_flipped(&self, crossing: usize) -> Result<Self> {
        let cs = self.crossings();
        let c = cs
            .get(crossing)
            .ok_or_else(|| GridError::PreconditionViolated("crossing id out of range".into()))?;
        let mut flips = self.flips.clone();
        if !flips.insert(c.pt) {
            flips.remove(&c.pt);
        }
        Ok(AnnotatedDiagram {
            verts: self.verts.clone(),
            flips,
        })
    }

    fn scale(&self, k: i64) -> Self {
        AnnotatedDiagram {
            verts: self
                .verts
                .iter()
                .map(|p| Pt::new(p.x * k, p.y * k))
                .collect(),
            flips: self.flips.iter().map(|p| Pt::new(p.x * k, p.y * k)).collect(),
        }
    }

    /// Merge collinear consecutive segments and drop repeated vertices.
    fn normalized(&self) -> Self {
        let mut v = self.verts.clone();
        loop {
            let n = v.len();
            let mut out: Vec<Pt> = Vec::with_capacity(n);
            for i in 0..n {
                let prev = v[(i + n - 1) % n];
                let cur = v[i];
                let next = v[(i + 1) % n];
                if cur == next {
                    continue;
                }
                let straight = (prev.x == cur.x && cur.x == next.x)
                    || (prev.y == cur.y && cur.y == next.y);
                if straight {
                    continue;
                }
                out.push(cur);
            }
            if out.len() == v.len() {
                break;
            }
            v = out;
        }
        AnnotatedDiagram {
            verts: v,
            flips: self.flips.clone(),
        }
    }

    /// One Reidemeister I reduction if a kink exists (two consecutive passages
    /// of the same crossing): removes the empty loop.
    fn try_r1(&self) -> Option<Self> {
        let cs = self.crossings();
        let walk = self.walk(&cs);
        let m = walk.len();
        for i in 0..m {
            let p = walk[i];
            let q = walk[(i + 1) % m];
            if p.crossing != q.crossing {
                continue;
            }
            let pt = cs[p.crossing].pt;
            // keep: ..., verts[q.seg + 1 .. p.seg], pt
            let n = self.verts.len();
            let mut verts = Vec::new();
            let mut k = (q.seg + 1) % n;
            loop {
                verts.push(self.verts[k]);
                if k == p.seg {
                    break;
                }
                k = (k + 1) % n;
            }
            verts.push(pt);
            let out = AnnotatedDiagram {
                verts,
                flips: self.flips.clone(),
            }
            .normalized();
            if out.verts.len() >= 4 {
                debug_assert!(out.validate().is_ok());
                return Some(out);
            }
        }
        None
    }

    /// One Reidemeister II reduction if a pair of crossings bounds an empty
    /// bigon with one strand over at both; reroutes the under strand alongside
    /// the over strand. Rescales coordinates by 4 first.
    fn try_r2(&self) -> Option<Self> {
        let scaled = self.scale(4);
        let cs = scaled.crossings();
        let walk = scaled.walk(&cs);
        let m = walk.len();
        for i in 0..m {
            let a = walk[i];
            let b = walk[(i + 1) % m];
            if a.crossing == b.crossing {
                continue;
            }
            if !(a.is_over(&cs) && b.is_over(&cs)) {
                continue;
            }
            // find the complementary consecutive pair of the same two crossings
            for k in 0..m {
                if k == i {
                    continue;
                }
                let p = walk[k];
                let q = walk[(k + 1) % m];
                let set_ok = (p.crossing == a.crossing && q.crossing == b.crossing)
                    || (p.crossing == b.crossing && q.crossing == a.crossing);
                if !set_ok || p.is_over(&cs) || q.is_over(&cs) {
                    continue;
                }
                // disjoint occurrences
                if k == i || (k + 1) % m == i || k == (i + 1) % m {
                    continue;
                }
                if let Some(d) = scaled.reroute_under(&cs, &walk, i, k) {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Reroute the under arc (consecutive passages k, k+1) parallel to the over
    /// arc (passages i, i+1), removing both crossings.
    fn reroute_under(
        &self,
        cs: &[Crossing],
        walk: &[Passage],
        i: usize,
        k: usize,
    ) -> Option<Self> {
        let m = walk.len();
        let segs = self.segments();
        let n = self.verts.len();
        let over_a = walk[i];
        let over_b = walk[(i + 1) % m];
        let under_a = walk[k];
        let under_b = walk[(k + 1) % m];
        // over arc corner points, oriented from the crossing of under_a to
        // that of under_b (the over strand itself may travel either way)
        let p_c = cs[under_a.crossing].pt;
        let p_d = cs[under_b.crossing].pt;
        let mut arc: Vec<Pt> = Vec::new();
        arc.push(cs[over_a.crossing].pt);
        if over_a.seg != over_b.seg {
            let mut s = (over_a.seg + 1) % n;
            loop {
                arc.push(self.verts[s]);
                if s == over_b.seg {
                    break;
                }
                s = (s + 1) % n;
            }
        }
        arc.push(cs[over_b.crossing].pt);
        if arc[0] == p_d {
            arc.reverse();
        }
        debug_assert_eq!(arc[0], p_c);
        debug_assert_eq!(*arc.last().unwrap(), p_d);

        // under approach and exit
        let app_seg = segs[under_a.seg];
        let exit_seg = segs[under_b.seg];
        let u_app = app_seg.dir();
        // offset side: one unit back along the approach, on the approach side
        let first = Seg { a: arc[0], b: arc[1] };
        let off0 = (-u_app.0, -u_app.1);
        // left/right relative to the over arc's direction of travel
        let u0 = first.dir();
        let left = (-u0.1, u0.0);
        let side_left = left == off0;
        if !side_left && (u0.1, -u0.0) != off0 {
            return None; // degenerate geometry
        }
        let offset_of = |s: &Seg| -> i64 {
            let u = s.dir();
            let d = if side_left { (-u.1, u.0) } else { (u.1, -u.0) };
            if s.is_vertical() {
                s.line() + d.0
            } else {
                s.line() + d.1
            }
        };
        let sub: Vec<Seg> = arc
            .windows(2)
            .map(|w| Seg { a: w[0], b: w[1] })
            .collect();
        let mut path: Vec<Pt> = Vec::new();
        // entry corner: on approach line and the first offset line
        let a0 = if sub[0].is_vertical() {
            Pt::new(offset_of(&sub[0]), app_seg.line())
        } else {
            Pt::new(app_seg.line(), offset_of(&sub[0]))
        };
        path.push(a0);
        for w in 0..sub.len() - 1 {
            let (s1, s2) = (&sub[w], &sub[w + 1]);
            let corner = if s1.is_vertical() {
                Pt::new(offset_of(s1), offset_of(s2))
            } else {
                Pt::new(offset_of(s2), offset_of(s1))
            };
            path.push(corner);
        }
        let last = sub.last().unwrap();
        let b0 = if last.is_vertical() {
            Pt::new(offset_of(last), exit_seg.line())
        } else {
            Pt::new(exit_seg.line(), offset_of(last))
        };
        path.push(b0);

        // splice: keep verts from after the exit segment around to the start of
        // the approach segment, then the new path (this also covers the case
        // where approach and exit are the same segment)
        let mut verts: Vec<Pt> = Vec::new();
        let mut s = (under_b.seg + 1) % n;
        loop {
            verts.push(self.verts[s]);
            if s == under_a.seg {
                break;
            }
            s = (s + 1) % n;
        }
        verts.extend(path);
        let out = AnnotatedDiagram {
            verts,
            flips: self.flips.clone(),
        }
        .normalized();
        if out.verts.len() < 4 || out.validate().is_err() {
            return None;
        }
        // the reroute must remove exactly the two crossings
        if out.crossing_count() + 2 != self.crossing_count() {
            return None;
        }
        Some(out)
    }

    /// Apply rectilinear R1 and R2 reductions until none applies.
    /// Returns the reduced diagram and the numbers of R1 / R2 moves applied.
    pub fn reduce(&self) -> (Self, usize, usize) {
        let mut d = self.clone();
        let (mut r1, mut r2) = (0usize, 0usize);
        loop {
            if let Some(next) = d.try_r1() {
                d = next;
                r1 += 1;
                continue;
            }
            if let Some(next) = d.try_r2() {
                d = next;
                r2 += 1;
                continue;
            }
            break;
        }
        (d, r1, r2)
    }

    /// Apply only R1 reductions (kink removal) until none applies.
    pub fn reduce_r1(&self) -> (Self, usize) {
        let mut d = self.clone();
        let mut r1 = 0usize;
        while let Some(next) = d.try_r1() {
            d = next;
            r1 += 1;
        }
        (d, r1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect() -> AnnotatedDiagram {
        AnnotatedDiagram::from_polyline(vec![
            Pt::new(0, 0),
            Pt::new(0, 4),
            Pt::new(4, 4),
            Pt::new(4, 0),
        ])
        .unwrap()
    }

    #[test]
    fn rectangle_has_no_crossings() {
        assert_eq!(rect().crossing_count(), 0);
    }

    #[test]
    fn kink_reduces() {
        // a rectangle with one R1 kink
        let d = AnnotatedDiagram::from_polyline(vec![
            Pt::new(0, 0),
            Pt::new(0, 10),
            Pt::new(6, 10),
            Pt::new(6, 4),
            Pt::new(2, 4),
            Pt::new(2, 8),
            Pt::new(8, 8),
            Pt::new(8, 0),
        ])
        .unwrap();
        assert_eq!(d.crossing_count(), 1);
        let (r, n1, n2) = d.reduce();
        assert_eq!((n1, n2), (1, 0));
        assert_eq!(r.crossing_count(), 0);
    }

    #[test]
    fn alternation_enforced() {
        let bad = AnnotatedDiagram::from_polyline(vec![
            Pt::new(0, 0),
            Pt::new(0, 2),
            Pt::new(0, 4),
            Pt::new(4, 4),
        ]);
        assert!(bad.is_err());
    }
}
