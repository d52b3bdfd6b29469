//! Two-sided cobar constructions, the cobar resolution and its algebra
//! structures, and the bar construction as a check on the cobar side.

mod algebra;
mod bar;
mod complex;
mod filtration;
mod resolution;

pub use complex::{cobar, verify_coaction, Coaction, CobarComplex, Word};
pub use resolution::{cobar_resolution, verify_resolution, CobarResolution};
pub use algebra::{cobar_algebra, cobar_multiplication, hco, hco_map, hco_map_with, CobarAlgebra, CobarVariant, HcoMap};
pub use bar::{bar, cobar_bar_counit, verify_coalgebra_map, verify_counit, BarCoalgebra, CobarBarCounit};
pub use filtration::{cobar_filtration, verify_a_free, verify_cobar_filtration, CobarFiltration};
