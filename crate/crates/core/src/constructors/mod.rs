mod corings;
mod structures;

pub use corings::{
    coinvariant_comparison, cof, desc, first_factor_inclusion, galois, hopf, hopf_regular, normal_extension, relative_hopf_check, Cof,
    CoringMorphism, Desc, Galois, HopfCoring, RelativeHopf,
};
pub use structures::{
    coinvariant_algebra, verify_comod_alg_morphism, verify_comod_algebra, verify_module_coalgebra, ComodAlgMorphism, ComodAlgebra,
    ModuleCoalgebra,
};
