//! Tensor products with Koszul signs, the symmetry, desuspension and
//! truncated tensor algebras.

mod tensor;
mod words;

pub use tensor::{
    apply_factorwise, id_factor, relabeling, symmetry, tensor, tensor_map, Cell, Factor, Tensor, TensorSpace,
};
pub use words::{desuspend, tensor_algebra_trunc, word_degree, word_label, words_up_to, WordSpace, DESUSP};
