//! Generating configurations: a good point `r` and enough of its neighbours
//! to pin down the three parameters `omega_X, omega_Y, omega_Z`.

use serde::Serialize;

use crate::fricke_action::Point3;
use crate::trig_field::{CosSum, TrigError};

use super::dictionary::Dictionary;

/// Entries are indices into the largest dictionary (`S4`). Primed fields are
/// the changed coordinate of the corresponding neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "class")]
pub enum GenConfig {
    /// All three neighbours good, generic parameters.
    Class1 { x: u8, y: u8, z: u8, xp: u8, yp: u8, zp: u8 },
    /// `x(r)` is fixed by `y` and `z`.
    Class2 { x: u8, y: u8, z: u8, yp: u8 },
    /// `omega_Y = omega_Z`.
    Class3 { x: u8, xp: u8, y: u8, yp: u8, z: u8 },
    /// `omega_X = omega_Y = omega_Z`.
    Class4 { x: u8, xp: u8, y: u8, z: u8 },
}

impl GenConfig {
    pub fn class(&self) -> u8 {
        match self {
            GenConfig::Class1 { .. } => 1,
            GenConfig::Class2 { .. } => 2,
            GenConfig::Class3 { .. } => 3,
            GenConfig::Class4 { .. } => 4,
        }
    }

    pub fn seed(&self) -> [u8; 3] {
        match *self {
            GenConfig::Class1 { x, y, z, .. }
            | GenConfig::Class2 { x, y, z, .. }
            | GenConfig::Class3 { x, y, z, .. }
            | GenConfig::Class4 { x, y, z, .. } => [x, y, z],
        }
    }

    pub fn seed_exact(&self, s4: &Dictionary) -> Point3 {
        let [x, y, z] = self.seed();
        Point3::new(s4.value(x as usize), s4.value(y as usize), s4.value(z as usize))
    }

    pub fn omega_float(&self, f: &[f64]) -> [f64; 3] {
        let v = |i: u8| f[i as usize];
        match *self {
            GenConfig::Class1 { x, y, z, xp, yp, zp } => {
                let (x, y, z) = (v(x), v(y), v(z));
                [x + v(xp) + y * z, y + v(yp) + x * z, z + v(zp) + x * y]
            }
            GenConfig::Class2 { x, y, z, yp } => {
                let (x, y, z, yp) = (v(x), v(y), v(z), v(yp));
                let xp = x + (yp - y) / z;
                let zp = z - y * (y - yp) / z;
                [x + xp + y * z, y + yp + x * z, z + zp + x * y]
            }
            GenConfig::Class3 { x, xp, y, yp, z } => {
                let (x, y, z) = (v(x), v(y), v(z));
                let wy = y + v(yp) + x * z;
                [x + v(xp) + y * z, wy, wy]
            }
            GenConfig::Class4 { x, xp, y, z } => {
                let w = v(x) + v(xp) + v(y) * v(z);
                [w, w, w]
            }
        }
    }

    pub fn omega_exact(&self, s4: &Dictionary) -> Result<[CosSum; 3], TrigError> {
        let v = |i: u8| s4.value(i as usize);
        Ok(match *self {
            GenConfig::Class1 { x, y, z, xp, yp, zp } => {
                let (x, y, z) = (v(x), v(y), v(z));
                [
                    &x + &v(xp) + &y * &z,
                    &y + &v(yp) + &x * &z,
                    &z + &v(zp) + &x * &y,
                ]
            }
            GenConfig::Class2 { x, y, z, yp } => {
                let (x, y, z, yp) = (v(x), v(y), v(z), v(yp));
                let zinv = z.inverse()?;
                let xp = &x + &(&(&yp - &y) * &zinv);
                let zp = &z - &(&(&y * &(&y - &yp)) * &zinv);
                [
                    (&x + &xp + &y * &z).simplified(),
                    &y + &yp + &x * &z,
                    (&z + &zp + &x * &y).simplified(),
                ]
            }
            GenConfig::Class3 { x, xp, y, yp, z } => {
                let (x, y, z) = (v(x), v(y), v(z));
                let wy = &y + &v(yp) + &x * &z;
                [&x + &v(xp) + &y * &z, wy.clone(), wy]
            }
            GenConfig::Class4 { x, xp, y, z } => {
                let w = &v(x) + &v(xp) + &v(y) * &v(z);
                [w.clone(), w.clone(), w]
            }
        })
    }
}
