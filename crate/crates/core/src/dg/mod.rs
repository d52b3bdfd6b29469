//! DG algebras, coalgebras and bialgebras stored as exact structure tables.

pub mod algebra;
pub mod bialgebra;
pub mod catalog;
pub mod coalgebra;
pub mod conilpotent;

pub use algebra::{pair_product, verify_algebra, verify_algebra_map, AlgebraMap, DGAlgebra};
pub use bialgebra::{
    galois_map, galois_map_invertible, is_connected, is_simply_connected, verify_bialgebra, verify_bialgebra_map,
    BialgebraMap, DGBialgebra,
};
pub use catalog::{
    acyclic_d, catalog, exterior_hopf, exterior_hopf_named, free_primitive_bialgebra, free_u2, lambda_x1_y3, mutations,
    s2, verify_dg_structure, verify_object, DGObject, Mutation, StructureKind,
};
pub use coalgebra::{verify_coalgebra, DGCoalgebra, Term};
pub use conilpotent::{primitive_filtration, verify_split_conilpotent, ConilpotentWitness};
