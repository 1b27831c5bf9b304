//! Classical Lie algebras as matrix algebras: root data, Weyl groups and
//! characters of finite-dimensional simple modules.

pub mod freudenthal;
pub mod realization;
pub mod roots;
pub mod weight;
pub mod weyl;

pub use freudenthal::{freudenthal_character, Character, CharacterCache};
pub use realization::{
    build_classical, build_double, build_gl, root_datum, weight_decomposition_datum, AlgebraRealization, ClassicalType, Family,
    RealizationKind,
};
pub use roots::{coroot_pairing, reflect, RootDatum};
pub use weight::Weight;
pub use weyl::{generate_group, simple_reflections, weyl_group, WeylElement, WEYL_RANK_CAP};
