//! Recognition of the four one-parameter families of small orbits that have
//! no generating configuration.

use serde::Serialize;

use crate::fricke_action::{EquivTransform, Omega, Point3};
use crate::trig_field::CosSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpecialType {
    /// A single point fixed by `x, y, z`.
    I,
    /// `(a, 0, 0), (b, 0, 0)`.
    II,
    /// `(1, 0, 0), (1, w, 0), (1, 0, w)`.
    III,
    /// `(1, 1, 1)` and its three neighbours `(w - 2, 1, 1)`, ...
    IV,
}

impl SpecialType {
    pub fn name(self) -> &'static str {
        ["I", "II", "III", "IV"][self as usize]
    }
}

fn int(n: i64) -> CosSum {
    CosSum::from_int(n)
}

fn same_set(a: &[Point3], b: &[Point3]) -> bool {
    a.len() == b.len() && b.iter().all(|q| a.iter().any(|p| p.exact_eq(q)))
}

fn matches(t: &EquivTransform, points: &[Point3], om: &Omega) -> Option<SpecialType> {
    let om = t.apply_omega(om);
    let pts: Vec<Point3> = points.iter().map(|p| t.apply_point(p)).collect();
    let [wx, wy, wz] = &om.w;
    match pts.len() {
        2 => {
            let zero_yz = pts.iter().all(|p| p.0[1].is_zero() && p.0[2].is_zero());
            (zero_yz && wy.is_zero() && wz.is_zero()).then_some(SpecialType::II)
        }
        3 => {
            if !(wx.exact_eq(&int(2)) && wy.exact_eq(wz) && om.w4.exact_eq(&int(5))) {
                return None;
            }
            let want = [
                Point3::from_ints(1, 0, 0),
                Point3::new(int(1), wy.clone(), int(0)),
                Point3::new(int(1), int(0), wy.clone()),
            ];
            same_set(&pts, &want).then_some(SpecialType::III)
        }
        4 => {
            if !(wx.exact_eq(wy) && wy.exact_eq(wz) && om.w4.exact_eq(&(wx * &int(3)))) {
                return None;
            }
            let c = wx - &int(2);
            let want = [
                Point3::from_ints(1, 1, 1),
                Point3::new(c.clone(), int(1), int(1)),
                Point3::new(int(1), c.clone(), int(1)),
                Point3::new(int(1), int(1), c),
            ];
            same_set(&pts, &want).then_some(SpecialType::IV)
        }
        _ => None,
    }
}

/// Family type of a closed orbit, up to the 24 coordinate symmetries.
pub fn classify_special(points: &[Point3], om: &Omega) -> Option<SpecialType> {
    match points.len() {
        1 => Some(SpecialType::I),
        2..=4 => EquivTransform::all().iter().find_map(|t| matches(t, points, om)),
        _ => None,
    }
}

const TOL: f64 = 1e-6;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < TOL
}

fn same_set_floats(a: &[[f64; 3]], b: &[[f64; 3]]) -> bool {
    a.len() == b.len() && b.iter().all(|q| a.iter().any(|p| (0..3).all(|i| near(p[i], q[i]))))
}

fn matches_floats(t: &EquivTransform, points: &[[f64; 3]], w: &[f64; 3], w4: f64) -> Option<SpecialType> {
    let [wx, wy, wz] = t.apply_floats(w);
    let pts: Vec<[f64; 3]> = points.iter().map(|p| t.apply_floats(p)).collect();
    match pts.len() {
        2 => {
            let zero_yz = pts.iter().all(|p| near(p[1], 0.0) && near(p[2], 0.0));
            (zero_yz && near(wy, 0.0) && near(wz, 0.0)).then_some(SpecialType::II)
        }
        3 => {
            if !(near(wx, 2.0) && near(wy, wz) && near(w4, 5.0)) {
                return None;
            }
            let want = [[1.0, 0.0, 0.0], [1.0, wy, 0.0], [1.0, 0.0, wy]];
            same_set_floats(&pts, &want).then_some(SpecialType::III)
        }
        4 => {
            if !(near(wx, wy) && near(wy, wz) && near(w4, 3.0 * wx)) {
                return None;
            }
            let c = wx - 2.0;
            let want = [[1.0, 1.0, 1.0], [c, 1.0, 1.0], [1.0, c, 1.0], [1.0, 1.0, c]];
            same_set_floats(&pts, &want).then_some(SpecialType::IV)
        }
        _ => None,
    }
}

/// Float counterpart of [`classify_special`], used to skip exact work on the
/// families. `w4` is the fourth parameter.
pub fn classify_special_floats(points: &[[f64; 3]], w: &[f64; 3], w4: f64) -> Option<SpecialType> {
    match points.len() {
        1 => Some(SpecialType::I),
        2..=4 => EquivTransform::all().iter().find_map(|t| matches_floats(t, points, w, w4)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fricke_action::{omega4_of, POINT_CAP};
    use crate::orbit_search::close_exact;

    fn family(seed: Point3, w: [i64; 3]) -> (Vec<Point3>, Omega) {
        let w = w.map(CosSum::from_int);
        let w4 = omega4_of(&seed, &w);
        let om = Omega::new(w, w4);
        (close_exact(&seed, &om, POINT_CAP).unwrap().points, om)
    }

    #[test]
    fn recognises_each_family() {
        let (p, om) = family(Point3::from_ints(1, 1, 1), [1, 1, 1]);
        assert_eq!(p.len(), 4);
        assert_eq!(classify_special(&p, &om), Some(SpecialType::IV));
        let (p, om) = family(Point3::from_ints(1, 0, 0), [2, 3, 3]);
        assert_eq!(p.len(), 3);
        assert_eq!(classify_special(&p, &om), Some(SpecialType::III));
        let (p, om) = family(Point3::from_ints(1, 0, 0), [3, 0, 0]);
        assert_eq!(p.len(), 2);
        assert_eq!(classify_special(&p, &om), Some(SpecialType::II));
        // permuted and sign-flipped copy of type II
        let t = EquivTransform { perm: [1, 2, 0], signs: [-1, 1, -1] };
        let q: Vec<Point3> = p.iter().map(|x| t.apply_point(x)).collect();
        assert_eq!(classify_special(&q, &t.apply_omega(&om)), Some(SpecialType::II));
        let (p, om) = family(Point3::from_ints(0, 0, 0), [0, 0, 0]);
        assert_eq!(classify_special(&p, &om), Some(SpecialType::I));
    }

    #[test]
    fn float_classifier_agrees() {
        for (seed, w) in [((1, 1, 1), [1, 1, 1]), ((1, 0, 0), [2, 3, 3]), ((1, 0, 0), [3, 0, 0]), ((-1, 1, 1), [0, 1, 1])] {
            let (p, om) = family(Point3::from_ints(seed.0, seed.1, seed.2), w);
            let pf: Vec<[f64; 3]> = p.iter().map(|q| q.0.each_ref().map(CosSum::float)).collect();
            let wf = om.w.each_ref().map(CosSum::float);
            assert_eq!(classify_special_floats(&pf, &wf, om.w4.float()), classify_special(&p, &om));
        }
    }
}
