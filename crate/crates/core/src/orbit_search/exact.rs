//! Orbit closure in exact arithmetic.

use crate::fricke_action::{apply, Generator, Omega, Point3, POINT_CAP};
use crate::trig_field::{CosSum, RationalAngle};

use super::SearchError;

/// A finite orbit with its colored adjacency: `neighbors[i][g]` is the image
/// of point `i` under generator `g`.
#[derive(Clone, Debug)]
pub struct ExactOrbit {
    pub points: Vec<Point3>,
    pub neighbors: Vec<[usize; 3]>,
    pub omega: Omega,
}

impl ExactOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, p: &Point3) -> Option<usize> {
        find_point(&self.points, &self.floats(), p)
    }

    fn floats(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(Point3::floats).collect()
    }
}

/// `g(p)` with the changed coordinate rewritten in a short form.
pub fn apply_simplified(g: Generator, p: &Point3, w: &[CosSum; 3]) -> Point3 {
    let mut q = apply(g, p, w);
    let i = g.index();
    q.0[i] = q.0[i].simplified();
    q
}

pub(crate) fn find_point(points: &[Point3], floats: &[[f64; 3]], p: &Point3) -> Option<usize> {
    let f = p.floats();
    floats.iter().enumerate().find_map(|(i, q)| {
        let near = (0..3).all(|k| (q[k] - f[k]).abs() < 1e-7);
        (near && points[i].exact_eq(p)).then_some(i)
    })
}

/// Breadth-first closure of `seed` under `x, y, z`; fails past `cap` points.
pub fn close_exact(seed: &Point3, omega: &Omega, cap: usize) -> Result<ExactOrbit, SearchError> {
    let mut points = vec![seed.clone()];
    let mut floats = vec![seed.floats()];
    let mut neighbors: Vec<[usize; 3]> = vec![[usize::MAX; 3]];
    let mut i = 0;
    while i < points.len() {
        for g in Generator::ALL {
            if neighbors[i][g.index()] != usize::MAX {
                continue;
            }
            let img = apply_simplified(g, &points[i], &omega.w);
            let j = match find_point(&points, &floats, &img) {
                Some(j) => j,
                None => {
                    if points.len() >= cap {
                        return Err(SearchError::CapExceeded(cap));
                    }
                    floats.push(img.floats());
                    points.push(img);
                    neighbors.push([usize::MAX; 3]);
                    points.len() - 1
                }
            };
            neighbors[i][g.index()] = j;
            neighbors[j][g.index()] = i;
        }
        i += 1;
    }
    Ok(ExactOrbit { points, neighbors, omega: omega.clone() })
}

/// Orbit on the Cayley cubic (all parameters zero) through
/// `(-2cos pi(rY + rZ), 2cos pi rY, 2cos pi rZ)`.
pub fn cayley_orbit(ry: RationalAngle, rz: RationalAngle) -> Result<ExactOrbit, SearchError> {
    let sum = RationalAngle::from_ratio(ry.ratio() + rz.ratio());
    let seed = Point3::new(-CosSum::two_cos(sum), CosSum::two_cos(ry), CosSum::two_cos(rz));
    let om = Omega::new([CosSum::zero(), CosSum::zero(), CosSum::zero()], CosSum::zero());
    close_exact(&seed, &om, POINT_CAP)
}
