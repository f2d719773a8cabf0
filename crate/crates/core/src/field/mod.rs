//! Number fields with monogenic rings of integers, residue rings and ideals.

pub mod ideal;
pub mod quadratic;
pub mod residue;
pub mod spec;

pub use ideal::{coprime_to_integer, is_principal_by_search, Ideal, PrincipalSearch};
pub use quadratic::{imaginary_quadratic_class_group, quadratic_field, real_quadratic_fundamental_unit, BinaryForm};
pub use residue::{ResidueElem, ResidueRing};
pub use spec::{make_field, Declarations, FieldElement, Maximality, NumberFieldSpec};
