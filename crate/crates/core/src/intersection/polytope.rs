use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use super::vars::vars;
use super::IntersectionError;
use crate::algebra::{int, rat, solve_rational, MultiPoly, Rational, RationalMatrix, Var};

pub type Point = [Rational; 3];

/// `normal · x + offset ≥ 0`.
#[derive(Clone, Debug)]
pub struct HalfSpace {
    pub normal: [Rational; 3],
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: [i64; 3], offset: Rational) -> Self {
        HalfSpace {
            normal: normal.map(int),
            offset,
        }
    }

    fn value(&self, x: &Point) -> Rational {
        (0..3).map(|r| &self.normal[r] * &x[r]).fold(self.offset.clone(), |a, b| a + b)
    }
}

/// Which lower bound the last partition entry carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaFloor {
    /// `λ3 ≥ 0`, as in the filtration.
    Zero,
    /// `λ3 ≥ γ`.
    Gamma,
}

/// A bounded convex polytope in the coordinates `(x2, x3, g)`.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: [Point; 4],
}

impl Simplex {
    fn edge_matrix(&self) -> RationalMatrix {
        let v = &self.vertices;
        let rows = (0..3).map(|r| (1..4).map(|i| &v[i][r] - &v[0][r]).collect()).collect();
        RationalMatrix::from_rows(rows).expect("3x3")
    }

    /// `|det(v1 - v0, v2 - v0, v3 - v0)|`, six times the volume.
    pub fn jacobian(&self) -> Rational {
        self.edge_matrix().determinant().expect("square").abs()
    }

    pub fn volume(&self) -> Rational {
        self.jacobian() / int(6)
    }

    /// Integral of `p` (a polynomial in `x2, x3, g`, other variables carried as
    /// coefficients) via `∫_{Δ} t^a dt = a! / (|a| + 3)!` on the reference simplex.
    pub fn integrate(&self, p: &MultiPoly) -> MultiPoly {
        let v = vars();
        let v0 = &self.vertices[0];
        let mut affine: HashMap<Var, MultiPoly> = HashMap::new();
        for r in 0..3 {
            let mut x = v.constant(v0[r].clone());
            for i in 0..3 {
                let step = &self.vertices[i + 1][r] - &v0[r];
                x.add_scaled(&v.poly(v.t[i]), &step);
            }
            affine.insert(v.x[r], x);
        }
        let pulled = p.substitute(&affine).expect("same arena");
        let mut out = MultiPoly::zero(&v.arena);
        for (m, c) in pulled.terms() {
            let (inside, outside) = m.split(&v.t);
            let a = v.t.map(|t| inside.exponent(t) as u64);
            let num: Rational = a.iter().map(|&k| factorial(k)).product();
            let den = factorial(a.iter().sum::<u64>() + 3);
            out.add_term(outside, c * num / den);
        }
        out.scale(&self.jacobian())
    }

    /// Cone from the centroid over the four facets.
    pub fn stellar(&self) -> Vec<Simplex> {
        let c: Point = std::array::from_fn(|r| self.vertices.iter().map(|v| v[r].clone()).sum::<Rational>() / int(4));
        (0..4)
            .map(|i| {
                let mut v = self.vertices.clone();
                v[i] = c.clone();
                Simplex { vertices: v }
            })
            .collect()
    }
}

fn factorial(n: u64) -> Rational {
    (1..=n as i64).map(int).product()
}

fn affine_rank(points: &[&Point]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| (0..3).map(|r| &p[r] - &points[0][r]).collect())
        .collect();
    rank(rows)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    for col in 0..3 {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pivot);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                for c in 0..3 {
                    let t = &f * &rows[r][c];
                    rows[i][c] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

impl Polytope {
    /// `{λ1 + 2λ2 + 3λ3 = 1 - γ, λi - λj ≥ γ, λ3 ≥ 0 (or γ), 0 ≤ γ ≤ 1/5}` with `λ1` eliminated.
    pub fn filtration_region(floor: LambdaFloor) -> Self {
        // x1 = 1 - g - 2 x2 - 3 x3
        let mut h = vec![
            HalfSpace::new([-3, -3, -2], int(1)), // x1 - x2 ≥ g
            HalfSpace::new([-2, -4, -2], int(1)), // x1 - x3 ≥ g
            HalfSpace::new([1, -1, -1], int(0)),  // x2 - x3 ≥ g
            HalfSpace::new([0, 0, 1], int(0)),    // g ≥ 0
            HalfSpace::new([0, 0, -1], rat(1, 5)), // g ≤ 1/5
        ];
        h.push(match floor {
            LambdaFloor::Zero => HalfSpace::new([0, 1, 0], int(0)),
            LambdaFloor::Gamma => HalfSpace::new([0, 1, -1], int(0)),
        });
        Polytope { halfspaces: h }
    }

    pub fn unit_cube() -> Self {
        let mut h = Vec::new();
        for r in 0..3 {
            let mut n = [0; 3];
            n[r] = 1;
            h.push(HalfSpace::new(n, int(0)));
            n[r] = -1;
            h.push(HalfSpace::new(n, int(1)));
        }
        Polytope { halfspaces: h }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| !h.value(x).is_negative())
    }

    /// Vertices from all nonsingular triples of bounding planes, in discovery order.
    pub fn vertices(&self) -> Vec<Point> {
        let n = self.halfspaces.len();
        let mut out: Vec<Point> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let hs = [&self.halfspaces[i], &self.halfspaces[j], &self.halfspaces[k]];
                    let m = RationalMatrix::from_rows(hs.iter().map(|h| h.normal.to_vec()).collect()).expect("3x3");
                    let rhs: Vec<Rational> = hs.iter().map(|h| -h.offset.clone()).collect();
                    let Ok(x) = solve_rational(&m, &rhs) else { continue };
                    let p: Point = [x[0].clone(), x[1].clone(), x[2].clone()];
                    if self.contains(&p) && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Pulling triangulation: cone from vertex `apex` over fan-triangulated facets.
    pub fn triangulate(&self, apex: usize) -> Result<Vec<Simplex>, IntersectionError> {
        let verts = self.vertices();
        if verts.len() < 4 || affine_rank(&verts.iter().collect::<Vec<_>>()) < 3 {
            return Err(IntersectionError::UnsupportedPolytope(format!("{} vertices", verts.len())));
        }
        let apex = apex % verts.len();
        let tight: Vec<BTreeSet<usize>> = verts
            .iter()
            .map(|v| (0..self.halfspaces.len()).filter(|&h| self.halfspaces[h].value(v).is_zero()).collect())
            .collect();
        let on = |h: usize| -> BTreeSet<usize> { (0..verts.len()).filter(|&v| tight[v].contains(&h)).collect() };

        let mut facets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for h in 0..self.halfspaces.len() {
            let f = on(h);
            if affine_rank(&f.iter().map(|&i| &verts[i]).collect::<Vec<_>>()) == 2 {
                facets.insert(f);
            }
        }
        let mut out = Vec::new();
        for facet in facets.iter().filter(|f| !f.contains(&apex)) {
            let w0 = *facet.iter().next().expect("nonempty");
            for other in &facets {
                let edge: Vec<usize> = facet.intersection(other).copied().collect();
                if other == facet || edge.len() != 2 || edge.contains(&w0) {
                    continue;
                }
                out.push(Simplex {
                    vertices: [
                        verts[apex].clone(),
                        verts[w0].clone(),
                        verts[edge[0]].clone(),
                        verts[edge[1]].clone(),
                    ],
                });
            }
        }
        Ok(out)
    }
}

/// Leading coefficient of a lattice sum over the scaled filtration region.
///
/// `p` must be homogeneous in `(λ1, λ2, λ3, δ, g)`; if its degree is `k` then
/// `Σ_{lattice points of mR} p(λ, δm, γ) = m^{k+3} · result + O(m^{k+2})`.
/// The free lattice coordinates are `(λ2, λ3, γ)` with unit cell volume 1.
pub fn polytope_integrate(p: &MultiPoly, region: &Polytope) -> Result<MultiPoly, IntersectionError> {
    let v = vars();
    let scaled = [v.l[0], v.l[1], v.l[2], v.delta, v.x[2]];
    if p.homogeneous_degree_in(&scaled).is_none() {
        return Err(IntersectionError::NonHomogeneous);
    }
    let x1 = &(&v.constant(int(1)) - &v.poly(v.x[2])) - &(&v.poly(v.x[0]).scale(&int(2)) + &v.poly(v.x[1]).scale(&int(3)));
    let bindings = HashMap::from([(v.l[0], x1), (v.l[1], v.poly(v.x[0])), (v.l[2], v.poly(v.x[1]))]);
    let q = p.substitute(&bindings)?;
    let mut out = MultiPoly::zero(&v.arena);
    for s in region.triangulate(0)? {
        out = &out + &s.integrate(&q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtration_region_is_a_tetrahedron() {
        let r = Polytope::filtration_region(LambdaFloor::Zero);
        let verts = r.vertices();
        assert_eq!(verts.len(), 4);
        let pieces = r.triangulate(0).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].volume(), rat(1, 540));
    }

    #[test]
    fn cube_triangulation() {
        let cube = Polytope::unit_cube();
        assert_eq!(cube.vertices().len(), 8);
        let v = vars();
        let x = v.poly(v.x[0]);
        for apex in [0, 3, 7] {
            let pieces = cube.triangulate(apex).unwrap();
            let vol: Rational = pieces.iter().map(Simplex::volume).sum();
            assert_eq!(vol, int(1));
            let sq: MultiPoly = pieces.iter().fold(MultiPoly::zero(&v.arena), |acc, s| &acc + &s.integrate(&x.pow(2)));
            assert_eq!(sq.as_constant().unwrap(), rat(1, 3));
        }
    }

    #[test]
    fn monomial_over_reference_simplex() {
        let v = vars();
        let o = || int(0);
        let s = Simplex {
            vertices: [[o(), o(), o()], [int(1), o(), o()], [o(), int(1), o()], [o(), o(), int(1)]],
        };
        // ∫ x3^6 = 6! / 9!
        let i = s.integrate(&v.poly(v.x[1]).pow(6));
        assert_eq!(i.as_constant().unwrap(), rat(1, 504));
    }

    #[test]
    fn volume_matches_lattice_count() {
        let vol = polytope_integrate(&MultiPoly::one(&vars().arena), &Polytope::filtration_region(LambdaFloor::Zero))
            .unwrap()
            .as_constant()
            .unwrap();
        assert_eq!(vol, rat(1, 540));
        // The count is m³·vol + O(m²); one Richardson step removes the boundary term.
        let ratio = |m: u64| super::super::filtration::filtration_count(m) as f64 / (m as f64).powi(3) * 540.0;
        let (r1, r2) = (ratio(500), ratio(1000));
        assert!((r1 - 1.0).abs() < 0.05, "{r1}");
        let extrapolated = 2.0 * r2 - r1;
        assert!((extrapolated - 1.0).abs() < 0.005, "{extrapolated}");
    }

    #[test]
    fn stellar_subdivision_is_additive() {
        let v = vars();
        let r = Polytope::filtration_region(LambdaFloor::Zero);
        let s = &r.triangulate(0).unwrap()[0];
        let p = &(&v.poly(v.x[0]).pow(3) * &v.poly(v.x[1]).pow(2)) * &v.poly(v.x[2]);
        let whole = s.integrate(&p);
        let parts = s.stellar().iter().fold(MultiPoly::zero(&v.arena), |acc, t| &acc + &t.integrate(&p));
        assert_eq!(whole, parts);
    }

    #[test]
    fn rejects_non_homogeneous() {
        let v = vars();
        let p = &v.poly(v.l[0]) + &v.constant(int(1));
        assert!(matches!(
            polytope_integrate(&p, &Polytope::filtration_region(LambdaFloor::Zero)),
            Err(IntersectionError::NonHomogeneous)
        ));
    }
}
