pub mod corpus;
pub mod curve;
pub mod error;
pub mod field;
pub mod lattice;
pub mod motivic;
pub mod poly;
pub mod provider;
pub mod report;
pub mod semigroup;
pub mod series;
pub mod xi;
