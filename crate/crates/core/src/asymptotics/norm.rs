//! Limit norms on the abelianization and homogeneous dimension.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GenSet, Group, LatticeElement};

const TOL: f64 = 1e-9;

/// Norm whose unit ball is a centrally symmetric polytope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyhedralNorm {
    dim: usize,
    /// Hull vertices, sorted lexicographically.
    vertices: Vec<Vec<f64>>,
    /// Outer facet normals `a` with `a·p ≤ 1` on the ball.
    facets: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())) else {
            break;
        };
        if m[p][c].abs() < TOL {
            continue;
        }
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c] / m[r][c];
                for k in 0..dim {
                    m[i][k] -= f * m[r][k];
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves `A a = 1` for a square `A` by Gaussian elimination.
fn solve_ones(rows: &[&[f64]]) -> Option<Vec<f64>> {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().copied().chain([1.0]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < TOL {
            return None;
        }
        m.swap(c, p);
        for i in 0..n {
            if i != c {
                let f = m[i][c] / m[c][c];
                for k in c..=n {
                    m[i][k] -= f * m[c][k];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn clean(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        r + 0.0
    } else {
        x
    }
}

impl PolyhedralNorm {
    /// Convex hull of `points ∪ −points`.
    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        if !(1..=3).contains(&dim) || points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameter(format!("expected points in ℝ^{dim}, 1 ≤ dim ≤ 3")));
        }
        let mut pts: Vec<Vec<f64>> = Vec::new();
        for p in points.iter().flat_map(|p| [p.clone(), p.iter().map(|x| -x).collect()]) {
            if p.iter().any(|x| x.abs() > TOL) && !pts.iter().any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() < TOL)) {
                pts.push(p);
            }
        }
        let r = rank(&pts, dim);
        if r < dim {
            return Err(Error::NotFullDimensional { rank: r, dim });
        }
        let mut facets: Vec<Vec<f64>> = Vec::new();
        for idx in subsets(pts.len(), dim) {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| pts[i].as_slice()).collect();
            let Some(a) = solve_ones(&rows) else { continue };
            if pts.iter().all(|p| dot(&a, p) <= 1.0 + TOL) {
                let a: Vec<f64> = a.into_iter().map(clean).collect();
                if !facets.iter().any(|f| f.iter().zip(&a).all(|(x, y)| (x - y).abs() < TOL)) {
                    facets.push(a);
                }
            }
        }
        // a vertex is where the active facets pin down a point
        let mut vertices: Vec<Vec<f64>> = pts
            .into_iter()
            .filter(|p| {
                let active: Vec<Vec<f64>> = facets.iter().filter(|a| (dot(a, p) - 1.0).abs() < TOL).cloned().collect();
                rank(&active, dim) == dim
            })
            .map(|p| p.into_iter().map(clean).collect())
            .collect();
        vertices.sort_by(|a: &Vec<f64>, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        facets.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        Ok(PolyhedralNorm { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<f64>] {
        &self.facets
    }

    /// Minkowski gauge of the unit ball.
    pub fn gauge(&self, u: &[f64]) -> f64 {
        self.facets.iter().map(|a| dot(a, u)).fold(0.0, f64::max)
    }

    /// True when the unit ball is the cross-polytope.
    pub fn is_l1(&self) -> bool {
        self.vertices.len() == 2 * self.dim
            && self
                .vertices
                .iter()
                .all(|v| v.iter().filter(|x| x.abs() > TOL).count() == 1 && v.iter().any(|x| (x.abs() - 1.0).abs() < TOL))
    }
}

/// Horizontal (abelianized) coordinates of a generator.
pub fn project(e: &LatticeElement) -> Vec<f64> {
    match e.group {
        Group::Heis => vec![e.x as f64, e.y as f64],
        Group::ProdHeisZ => vec![e.v as f64, e.x as f64, e.y as f64],
        Group::Z3 => vec![e.x as f64, e.y as f64, e.z as f64],
    }
}

/// Dimension of the abelianization's horizontal layer.
pub fn horizontal_dim(group: Group) -> usize {
    match group {
        Group::Heis => 2,
        Group::ProdHeisZ | Group::Z3 => 3,
    }
}

/// Limit norm: gauge of the hull of the projected generators.
pub fn pansu_norm(s: &GenSet) -> Result<PolyhedralNorm> {
    let pts: Vec<Vec<f64>> = s.elements().iter().map(project).collect();
    PolyhedralNorm::from_points(horizontal_dim(s.group()), &pts)
}

/// Ranks `d_k` of the lower central series quotients.
fn graded_ranks(group: Group) -> &'static [usize] {
    match group {
        Group::Heis => &[2, 1],
        Group::ProdHeisZ => &[3, 1],
        Group::Z3 => &[3],
    }
}

/// `Σ k·d_k` (Bass–Guivarc'h).
pub fn homogeneous_dimension(group: Group) -> u32 {
    graded_ranks(group).iter().enumerate().map(|(i, d)| ((i + 1) * d) as u32).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Builtin;

    #[test]
    fn builtin_norms_are_l1() {
        let h = pansu_norm(&Builtin::HeisStd.genset()).unwrap();
        assert_eq!(h.vertices(), &[vec![-1.0, 0.0], vec![0.0, -1.0], vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(h.gauge(&[1.0, 1.0]), 2.0);
        let s1 = pansu_norm(&Builtin::ProdS1.genset()).unwrap();
        let s2 = pansu_norm(&Builtin::ProdS2.genset()).unwrap();
        assert_eq!(s1.gauge(&[1.0, 1.0, 1.0]), 3.0);
        assert_eq!(s1.vertices(), s2.vertices());
        assert_eq!(s1.facets().len(), 8);
        assert!(s1.is_l1() && s2.is_l1() && h.is_l1());
    }

    #[test]
    fn hexagon_and_degenerate_sets() {
        let s = GenSet::parse("hex", Group::Heis, "1 0 0\n0 1 0\n1 1 0\n", true).unwrap();
        let n = pansu_norm(&s).unwrap();
        assert_eq!(n.vertices().len(), 6);
        assert_eq!(n.gauge(&[1.0, 1.0]), 1.0);
        assert_eq!(n.gauge(&[1.0, -1.0]), 2.0);
        assert!(!n.is_l1());
        let line = GenSet::parse("line", Group::Heis, "1 0 0\n", true).unwrap();
        assert!(matches!(pansu_norm(&line), Err(Error::NotFullDimensional { rank: 1, dim: 2 })));
    }

    #[test]
    fn non_vertex_points_are_dropped() {
        let n = PolyhedralNorm::from_points(2, &[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5], vec![0.2, 0.1]]).unwrap();
        assert_eq!(n.vertices().len(), 4);
    }

    #[test]
    fn dimensions() {
        assert_eq!(homogeneous_dimension(Group::Heis), 4);
        assert_eq!(homogeneous_dimension(Group::ProdHeisZ), 5);
        assert_eq!(homogeneous_dimension(Group::Z3), 3);
    }
}
