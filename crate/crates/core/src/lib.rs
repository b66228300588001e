pub mod algebra;
pub mod bundles;
pub mod expr;
pub mod linalg;
pub mod lowdim;
pub mod obstruction;
pub mod poly;
pub mod rational;
pub mod script;
pub mod spaces;
pub mod sphere_bundles;
