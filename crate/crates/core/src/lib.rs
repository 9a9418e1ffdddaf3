pub mod classify3;
pub mod cli;
pub mod fields;
pub mod groebner;
pub mod linalg;
pub mod omega;
pub mod report;
pub mod sample;
pub mod suite;
pub mod variety;
