use crate::bgfile::{BgDocument, FaceKind};
use crate::ribbon::{BrauerGraph, HalfEdge};

use super::AinfError;

/// Arcs are the edges of `graph`, punctures its vertices. The arrow `α_h` is the oriented
/// intersection at the corner between `h` and `next(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedArcSystem {
    pub graph: BrauerGraph,
    /// Indexed like `graph.faces().orbits`.
    pub faces: Vec<FaceKind>,
    /// Degree of `α_h`, per half-edge.
    pub degrees: Vec<i64>,
    /// Winding number per arc (edge index).
    pub windings: Vec<i64>,
}

impl GradedArcSystem {
    /// All faces annuli, all degrees and windings zero.
    pub fn seed(g: &BrauerGraph) -> Result<GradedArcSystem, AinfError> {
        let s = GradedArcSystem {
            faces: vec![FaceKind::Annulus; g.faces().orbits.len()],
            degrees: vec![0; g.ribbon().half_edge_count()],
            windings: vec![0; g.edge_count()],
            graph: g.clone(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Unmarked faces are annuli; unset degrees and windings are zero.
    pub fn from_document(doc: &BgDocument) -> Result<GradedArcSystem, AinfError> {
        let g = &doc.graph;
        let r = g.ribbon();
        let orbits = g.faces().orbits;
        let face_of = |h: HalfEdge| {
            orbits
                .iter()
                .position(|o| o.contains(&h))
                .expect("every half-edge lies on a face")
        };
        let mut faces = vec![FaceKind::Annulus; orbits.len()];
        for &(h, kind) in &doc.faces {
            faces[face_of(h)] = kind;
        }
        let mut degrees = vec![0; r.half_edge_count()];
        for &(h, d) in &doc.degrees {
            degrees[h] = d;
        }
        let mut windings = vec![0; r.edge_count()];
        for &(h, w) in &doc.windings {
            windings[r.edge_of(h)] = w;
        }
        let s = GradedArcSystem {
            graph: g.clone(),
            faces,
            degrees,
            windings,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn to_document(&self) -> BgDocument {
        let r = self.graph.ribbon();
        let orbits = self.graph.faces().orbits;
        BgDocument {
            graph: self.graph.clone(),
            faces: orbits
                .iter()
                .zip(&self.faces)
                .filter(|(_, k)| **k == FaceKind::Disc)
                .map(|(o, k)| (o[0], *k))
                .collect(),
            degrees: (0..r.half_edge_count())
                .filter(|&h| self.degrees[h] != 0)
                .map(|h| (h, self.degrees[h]))
                .collect(),
            windings: (0..r.edge_count())
                .filter(|&e| self.windings[e] != 0)
                .map(|e| (r.edge_halves(e).0, self.windings[e]))
                .collect(),
        }
    }

    /// Arrows around each disc face, `a_1, …, a_n` with `a_{i+1} = α_{pair(next(h_i))}` for
    /// `a_i = α_{h_i}`, starting at the arrow whose half-edge is smallest.
    pub fn disc_sequences(&self) -> Vec<Vec<HalfEdge>> {
        let r = self.graph.ribbon();
        let orbits = self.graph.faces().orbits;
        let mut out = Vec::new();
        for (orbit, kind) in orbits.iter().zip(&self.faces) {
            if *kind != FaceKind::Disc {
                continue;
            }
            let start = orbit.iter().map(|&x| r.prev(x)).min().expect("faces are nonempty");
            let mut seq = vec![start];
            let mut y = r.pair(r.next(start));
            while y != start {
                seq.push(y);
                y = r.pair(r.next(y));
            }
            out.push(seq);
        }
        out
    }

    pub fn validate(&self) -> Result<(), AinfError> {
        let g = &self.graph;
        let r = g.ribbon();
        if !g.deformed().is_empty() {
            return Err(AinfError::DeformedNotSupported);
        }
        let orbits = g.faces().orbits;
        if !self.faces.contains(&FaceKind::Annulus) {
            return Err(AinfError::NotAdmissible("no annulus face".into()));
        }
        let mut reached = vec![false; r.vertex_count()];
        for (orbit, kind) in orbits.iter().zip(&self.faces) {
            if *kind == FaceKind::Annulus {
                for &h in orbit {
                    reached[r.vertex_of(h)] = true;
                }
            }
        }
        if let Some(v) = reached.iter().position(|&x| !x) {
            return Err(AinfError::NotAdmissible(format!(
                "puncture {} touches no annulus face",
                g.vertex_name(v)
            )));
        }
        for seq in self.disc_sequences() {
            let n = seq.len() as i64;
            let total: i64 = seq.iter().map(|&h| self.degrees[h]).sum();
            if n < 3 {
                return Err(AinfError::GradingViolation(format!(
                    "disc face at arrow a[{}] has {n} corners, at least 3 are needed",
                    g.half_edge_name(seq[0])
                )));
            }
            if total != n - 2 {
                return Err(AinfError::GradingViolation(format!(
                    "disc face at arrow a[{}]: degrees sum to {total}, expected {}",
                    g.half_edge_name(seq[0]),
                    n - 2
                )));
            }
            // otherwise (Mu1) and (HigherOps5) assign different values to the same inputs
            let winding: i64 = seq.iter().map(|&h| self.windings[r.edge_of(h)]).sum();
            if (winding - n).rem_euclid(2) != 0 {
                return Err(AinfError::GradingViolation(format!(
                    "disc face at arrow a[{}]: windings of its arcs sum to {winding}, which must have the parity of {n}",
                    g.half_edge_name(seq[0])
                )));
            }
        }
        for (v, halves) in r.vertices().iter().enumerate() {
            let total: i64 = halves.iter().map(|&h| self.degrees[h]).sum();
            if total != 0 {
                return Err(AinfError::GradingViolation(format!(
                    "arrow degrees around puncture {} sum to {total}, expected 0",
                    g.vertex_name(v)
                )));
            }
        }
        Ok(())
    }
}

/// Three arcs bounding a triangle: the inner face is a disc with degrees `(0, 0, 1)`, the outer
/// face an annulus with degrees `(0, 0, -1)`. The arc leaving the first corner has winding 1.
pub fn triangle_disc() -> GradedArcSystem {
    polygon_disc(&[0, 0, 1])
}

/// Four arcs bounding a square disc with degrees `(0, 0, 1, 1)`.
pub fn square_disc() -> GradedArcSystem {
    polygon_disc(&[0, 0, 1, 1])
}

/// An `n`-gon of arcs whose disc face carries the given degrees; each puncture has one corner
/// in the disc and one in the outer annulus, of opposite degrees. For odd `n` the arc leaving
/// the first disc corner gets winding 1, so that the windings around the disc have the parity of `n`.
pub fn polygon_disc(disc_degrees: &[i64]) -> GradedArcSystem {
    let g = BrauerGraph::cycle(disc_degrees.len());
    let r = g.ribbon();
    let orbits = g.faces().orbits;
    let mut s = GradedArcSystem {
        faces: vec![FaceKind::Annulus; orbits.len()],
        degrees: vec![0; r.half_edge_count()],
        windings: vec![0; r.edge_count()],
        graph: g.clone(),
    };
    s.faces[0] = FaceKind::Disc;
    let seq = s.disc_sequences().remove(0);
    for (&h, &d) in seq.iter().zip(disc_degrees) {
        s.degrees[h] = d;
        // the other corner at a valency-2 puncture
        s.degrees[r.next(h)] = -d;
    }
    if seq.len() % 2 == 1 {
        s.windings[r.edge_of(seq[0])] = 1;
    }
    s.validate().expect("polygon fixture is admissible");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_one_disc_sequence() {
        let s = triangle_disc();
        let seqs = s.disc_sequences();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].len(), 3);
        assert_eq!(seqs[0].iter().map(|&h| s.degrees[h]).sum::<i64>(), 1);
    }

    #[test]
    fn grading_and_admissibility_errors() {
        let mut s = triangle_disc();
        let h = s.disc_sequences()[0][0];
        s.degrees[h] += 1;
        let n = s.graph.ribbon().next(h);
        s.degrees[n] -= 1;
        assert!(matches!(s.validate(), Err(AinfError::GradingViolation(_))));
        let mut v = triangle_disc();
        v.windings = vec![0; 3];
        assert!(matches!(v.validate(), Err(AinfError::GradingViolation(_))));
        let mut t = triangle_disc();
        t.faces = vec![FaceKind::Disc; 2];
        assert!(matches!(t.validate(), Err(AinfError::NotAdmissible(_))));
        let mut u = GradedArcSystem::seed(&BrauerGraph::single_loop(1)).unwrap();
        u.faces = vec![FaceKind::Disc, FaceKind::Annulus];
        assert!(u.validate().is_err());
        let mut w = GradedArcSystem::seed(&BrauerGraph::cycle(3)).unwrap();
        w.faces = vec![FaceKind::Disc; 2];
        assert!(w.validate().is_err());
        let mut x = GradedArcSystem::seed(&BrauerGraph::star(2, 1)).unwrap();
        x.faces = vec![FaceKind::Disc];
        assert!(matches!(x.validate(), Err(AinfError::NotAdmissible(_))));
    }
}
