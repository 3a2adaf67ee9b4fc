//! The 45 exceptional finite orbits, with one point of each and a matching
//! set of local-monodromy exponents.
//!
//! Values are written as cosine sums; `c5` below stands for `2cos(pi/5)`.

use crate::fricke_action::{omega4_of, Omega, Point3};
use crate::trig_field::{CosSum, RationalAngle, TrigError};

#[derive(Clone, Copy, Debug)]
pub struct GoldenRow {
    pub id: usize,
    pub size: usize,
    pub omega: [&'static str; 3],
    /// `4 - omega_4`.
    pub omega4_minus: &'static str,
    /// Point `(2cos(pi*rX), 2cos(pi*rY), 2cos(pi*rZ))` on the orbit.
    pub rep: [(i64, i64); 3],
    /// `(theta_x, theta_y, theta_z, theta_inf)` giving an equivalent parameter set.
    pub theta: [(i64, i64); 4],
}

impl GoldenRow {
    pub fn omega_exact(&self) -> Result<[CosSum; 3], TrigError> {
        Ok([self.omega[0].parse()?, self.omega[1].parse()?, self.omega[2].parse()?])
    }

    pub fn omega4_minus_exact(&self) -> Result<CosSum, TrigError> {
        self.omega4_minus.parse()
    }

    pub fn rep_point(&self) -> Result<Point3, TrigError> {
        let c = |(n, d): (i64, i64)| CosSum::two_cos_of(n, d);
        Ok(Point3::new(c(self.rep[0])?, c(self.rep[1])?, c(self.rep[2])?))
    }

    pub fn rep_angles(&self) -> Result<[RationalAngle; 3], TrigError> {
        let a = |(n, d): (i64, i64)| RationalAngle::new(n, d);
        Ok([a(self.rep[0])?, a(self.rep[1])?, a(self.rep[2])?])
    }

    /// Parameters with `omega_4` taken from the listed point.
    pub fn params(&self) -> Result<Omega, TrigError> {
        let w = self.omega_exact()?;
        let w4 = omega4_of(&self.rep_point()?, &w);
        Ok(Omega::new(w, w4))
    }
}

macro_rules! row {
    ($id:expr, $size:expr, [$a:expr, $b:expr, $c:expr], $d:expr,
     [$($rn:expr, $rd:expr);*], [$($tn:expr, $td:expr);*]) => {
        GoldenRow {
            id: $id,
            size: $size,
            omega: [$a, $b, $c],
            omega4_minus: $d,
            rep: [$(($rn, $rd)),*],
            theta: [$(($tn, $td)),*],
        }
    };
}

const C5: &str = "2cos(pi*1/5)";
const SQRT2: &str = "2cos(pi*1/4)";

pub const GOLDEN: [GoldenRow; 45] = [
    row!(1, 5, ["0", "1", "1"], "0", [2,3; 1,3; 1,3], [2,5; 1,5; 1,3; 2,3]),
    row!(2, 5, ["3", "2", "2"], "-3", [1,3; 1,3; 1,3], [1,5; 2,5; 1,5; 2,5]),
    row!(3, 6, ["1", "0", "0"], "2", [1,2; 1,3; 1,3], [1,2; 1,3; 1,3; 1,2]),
    row!(4, 6, [SQRT2, "0", "0"], "1", [1,4; 1,3; 3,4], [1,2; 1,4; 1,2; 2,3]),
    row!(5, 6, ["3", "2*2cos(pi*1/4)", "2*2cos(pi*1/4)"], "-4", [1,2; 1,4; 1,4], [1,4; 1,4; 1,3; 1,3]),
    row!(6, 6, ["2-2*2cos(pi*1/5)", "2-2cos(pi*1/5)", "2-2cos(pi*1/5)"], "-3+2*2cos(pi*1/5)",
         [4,5; 1,3; 1,3], [2,5; 1,5; 2,5; 2,3]),
    row!(7, 6, ["2*2cos(pi*1/5)", "1+2cos(pi*1/5)", "1+2cos(pi*1/5)"], "-1-2*2cos(pi*1/5)",
         [2,5; 1,3; 1,3], [1,5; 2,5; 1,5; 1,3]),
    row!(8, 7, ["1", "1", "1"], "0", [1,2; 1,2; 1,2], [2,7; 2,7; 2,7; 4,7]),
    row!(9, 8, ["2", "0", "0"], "0", [0,1; 1,3; 2,3], [1,4; 1,2; 1,4; 1,2]),
    row!(10, 8, ["1", SQRT2, SQRT2], "0", [1,2; 1,2; 1,2], [1,3; 1,2; 1,4; 2,3]),
    row!(11, 8, ["1+2cos(pi*1/5)", "1", "1"], "-2cos(pi*1/5)", [1,3; 1,2; 1,2], [1,2; 1,5; 2,5; 4,5]),
    row!(12, 8, ["2-2cos(pi*1/5)", "1", "1"], "2cos(pi*1/5)-1", [1,3; 1,2; 1,2], [2,5; 1,2; 2,5; 4,5]),
    row!(13, 9, ["3-2*2cos(pi*1/5)", "3-2*2cos(pi*1/5)", "3-2*2cos(pi*1/5)"], "5*2cos(pi*1/5)-6",
         [4,5; 3,5; 3,5], [2,5; 2,5; 2,5; 2,3]),
    row!(14, 9, ["1+2*2cos(pi*1/5)", "1+2*2cos(pi*1/5)", "1+2*2cos(pi*1/5)"], "-5*2cos(pi*1/5)-1",
         [2,5; 1,5; 1,5], [1,5; 1,5; 1,5; 1,3]),
    row!(15, 10, ["1", "0", "0"], "1", [1,3; 1,3; 2,3], [1,2; 1,5; 1,2; 3,5]),
    row!(16, 10, ["4-2*2cos(pi*1/5)", "4-2*2cos(pi*1/5)", "4-2*2cos(pi*1/5)"], "7*2cos(pi*1/5)-9",
         [3,5; 3,5; 3,5], [0,1; 0,1; 0,1; -4,5]),
    row!(17, 10, ["2+2*2cos(pi*1/5)", "2+2*2cos(pi*1/5)", "2+2*2cos(pi*1/5)"], "-7*2cos(pi*1/5)-2",
         [1,5; 1,5; 1,5], [0,1; 0,1; 0,1; -2,5]),
    row!(18, 10, ["1-2cos(pi*1/5)", "1-2cos(pi*1/5)", "1-2cos(pi*1/5)"], "0",
         [1,2; 1,2; 1,2], [1,3; 1,3; 1,3; 4,5]),
    row!(19, 10, [C5, C5, C5], "0", [1,2; 1,2; 1,2], [1,3; 1,3; 1,3; 2,5]),
    row!(20, 12, ["0", "0", "0"], "3", [2,3; 1,4; 1,4], [1,2; 1,2; 1,2; 2,3]),
    row!(21, 12, ["1", "0", "0"], "2", [0,1; 1,4; 3,4], [1,3; 1,2; 1,2; 2,3]),
    row!(22, 12, ["2", "2*2cos(pi*1/5)-1", "2*2cos(pi*1/5)-1"], "-2", [1,5; 2,5; 2,5], [1,3; 1,3; 1,5; 2,5]),
    row!(23, 12, ["1+2cos(pi*1/5)", C5, C5], "1-2*2cos(pi*1/5)", [2,5; 2,5; 2,5], [1,5; 1,5; 1,3; 1,2]),
    row!(24, 12, ["2-2cos(pi*1/5)", "1-2cos(pi*1/5)", "1-2cos(pi*1/5)"], "2*2cos(pi*1/5)-1",
         [4,5; 4,5; 4,5], [2,5; 2,5; 1,3; 1,2]),
    row!(25, 12, [C5, "2cos(pi*1/5)-1", "1"], "0", [1,2; 1,2; 1,2], [2,5; 1,3; 1,2; 4,5]),
    row!(26, 15, ["2-2cos(pi*1/5)", "2-2cos(pi*1/5)", "2-2cos(pi*1/5)"], "2*2cos(pi*1/5)-2",
         [1,2; 3,5; 3,5], [1,3; 1,3; 1,3; 3,5]),
    row!(27, 15, ["1+2cos(pi*1/5)", "1+2cos(pi*1/5)", "1+2cos(pi*1/5)"], "-2*2cos(pi*1/5)",
         [1,2; 1,5; 1,5], [1,3; 1,3; 1,3; 1,5]),
    row!(28, 15, ["3-2cos(pi*1/5)", "2-2*2cos(pi*1/5)", "2-2*2cos(pi*1/5)"], "3*2cos(pi*1/5)-4",
         [3,5; 4,5; 4,5], [3,5; 3,5; 2,3; 2,3]),
    row!(29, 15, ["2+2cos(pi*1/5)", "2*2cos(pi*1/5)", "2*2cos(pi*1/5)"], "-3*2cos(pi*1/5)-1",
         [1,5; 2,5; 2,5], [1,3; 1,3; 4,5; 4,5]),
    row!(30, 16, ["0", "0", "0"], "2", [2,3; 2,3; 2,3], [1,2; 1,2; 1,2; 3,4]),
    row!(31, 18, ["2", "2", "2"], "-1", [0,1; 1,5; 3,5], [1,3; 1,3; 1,3; 1,3]),
    row!(32, 18, ["1-2cos(pi*2/7)", "1-2cos(pi*2/7)", "1-2cos(pi*2/7)"], "2*2cos(pi*2/7)",
         [6,7; 5,7; 5,7], [4,7; 4,7; 4,7; 1,3]),
    row!(33, 18, ["1-2cos(pi*4/7)", "1-2cos(pi*4/7)", "1-2cos(pi*4/7)"], "2*2cos(pi*4/7)",
         [2,7; 3,7; 3,7], [1,3; 1,7; 1,7; 6,7]),
    row!(34, 18, ["1-2cos(pi*6/7)", "1-2cos(pi*6/7)", "1-2cos(pi*6/7)"], "2*2cos(pi*6/7)",
         [4,7; 1,7; 1,7], [2,7; 2,7; 2,7; 1,3]),
    row!(35, 20, ["2-2cos(pi*1/5)", "0", "0"], "2*2cos(pi*1/5)", [0,1; 1,3; 2,3], [0,1; 0,1; 1,10; 9,10]),
    row!(36, 20, ["1+2cos(pi*1/5)", "0", "0"], "2-2*2cos(pi*1/5)", [0,1; 1,3; 2,3], [0,1; 0,1; 3,10; 7,10]),
    row!(37, 20, ["1", "1-2cos(pi*1/5)", "1-2cos(pi*1/5)"], C5, [2,3; 3,5; 3,5], [1,3; 1,3; 1,2; 2,5]),
    row!(38, 20, ["1", C5, C5], "1-2cos(pi*1/5)", [2,3; 1,5; 1,5], [1,3; 1,3; 1,2; 4,5]),
    row!(39, 24, ["1", "1", "1"], "1", [1,5; 1,2; 1,2], [1,3; 1,3; 1,3; 1,2]),
    row!(40, 30, ["-2cos(pi*1/5)", "0", "0"], "2-2cos(pi*1/5)", [2,3; 2,3; 2,3], [1,15; 1,15; 7,30; 23,30]),
    row!(41, 30, ["2cos(pi*1/5)-1", "0", "0"], "1+2cos(pi*1/5)", [2,3; 2,3; 2,3], [2,15; 2,15; 1,30; 29,30]),
    row!(42, 36, ["1", "0", "0"], "2", [0,1; 1,5; 4,5], [0,1; 0,1; 1,6; 5,6]),
    row!(43, 40, ["0", "0", "0"], "3-2cos(pi*1/5)", [2,5; 2,5; 2,5], [3,20; 3,20; 3,20; 17,20]),
    row!(44, 40, ["0", "0", "0"], "2+2cos(pi*1/5)", [4,5; 4,5; 4,5], [1,20; 1,20; 1,20; 19,20]),
    row!(45, 72, ["0", "0", "0"], "3", [1,2; 1,5; 2,5], [1,12; 1,12; 1,12; 11,12]),
];

pub fn golden_row(id: usize) -> Option<&'static GoldenRow> {
    GOLDEN.get(id.checked_sub(1)?)
}
