pub mod circuit;
pub mod cli;
pub mod faces;
pub mod hitting;
pub mod linalg;
pub mod magnitude;
pub mod poly;
pub mod projective;
pub mod rational;
pub mod realzeros;
pub mod report;
