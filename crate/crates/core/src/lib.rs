pub mod arith;
pub mod chern;
pub mod complex;
pub mod coxeter;
pub mod davis;
pub mod homology;
pub mod lie;
pub mod linalg;
pub mod lorentz;
pub mod poly;
pub mod properties;
pub mod report;
pub mod sequences;
