pub mod corpus;
pub mod error;
pub mod exactnum;
pub mod expr;
pub mod paramsolve;
pub mod poly;
pub mod sturm;
pub mod prover;
pub mod report;
pub mod trig;
