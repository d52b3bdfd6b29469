//! Modules, corings and comodules over DG algebras, and the functors between
//! their categories.

mod balanced;
mod cellular;
mod change;
#[allow(clippy::module_inception)]
mod comodule;
mod coring;
mod module;
mod scalars;

pub use balanced::{tensor_over, Balanced};
pub use cellular::{verify_cellular_filtration, FiltrationWitness};
pub use change::{
    can, can_prim_unit, canonical_bicomodule, canonical_functors, change_of_corings, cotensor_comodule, prim, pull_back,
    pull_counit, push_forward, source_bicomodule, verify_comodule_map, verify_coring_map, Bicomodule, Canonical,
    CoringDirection, CoringMap, PullBack,
};
pub use comodule::{coinvariants, cotensor_over, verify_comodule, Comodule, Cotensor};
pub use coring::{verify_coring, Coring};
pub use module::{verify_bimodule, verify_module, AModule, Bimodule, Side};
pub use scalars::{
    adjunction_counit, adjunction_unit, coring_pushforward, extend_scalars, restrict_scalars, verify_adjunction, Extended,
    Pushforward,
};
