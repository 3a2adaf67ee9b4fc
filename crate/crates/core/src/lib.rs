//! Exact cosine arithmetic, SL(2) monodromy triples and an exhaustive search
//! for finite orbits of the braid-type action on the Fricke cubic surface.

pub mod cosine_sums;
pub mod fricke_action;
pub mod orbit_graphs;
pub mod orbit_search;
pub mod parameter_maps;
pub mod sl2_monodromy;
pub mod trig_field;
