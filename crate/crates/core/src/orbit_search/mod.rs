//! Exhaustive search for finite orbits seeded by generating configurations.

mod closure;
mod config;
mod dictionary;
mod exact;
pub mod golden;
mod search;
mod special;

pub use closure::FloatOutcome;
pub use config::GenConfig;
pub use dictionary::{build_dictionaries, DictKind, Dictionary};
pub use exact::{apply_simplified, cayley_orbit, close_exact, ExactOrbit};
pub use golden::{golden_row, GoldenRow, GOLDEN};
pub use search::{
    close_orbit, expected_class_counts, full_search, full_search_with, ClassCounter, OrbitRecord, SearchOptions,
    SearchReport, SearchTables,
};
pub use special::{classify_special, SpecialType};

use crate::trig_field::TrigError;

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("orbit exceeded the cap of {0} points")]
    CapExceeded(usize),
    #[error("no finite orbit")]
    NoFiniteOrbit,
    #[error("float and exact closures disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fricke_action::{fricke_residual, POINT_CAP};
    use crate::trig_field::CosSum;

    #[test]
    fn golden_rows_close_to_listed_size() {
        for row in GOLDEN.iter() {
            let om = row.params().unwrap();
            let d = &CosSum::from_int(4) - &om.w4;
            assert!(d.exact_eq(&row.omega4_minus_exact().unwrap()), "row {} omega4", row.id);
            let orb = close_exact(&row.rep_point().unwrap(), &om, POINT_CAP).unwrap();
            assert_eq!(orb.len(), row.size, "row {}", row.id);
            for p in &orb.points {
                assert!(fricke_residual(p, &om).is_zero());
            }
        }
    }
}
