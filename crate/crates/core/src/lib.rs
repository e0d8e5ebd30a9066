//! Exact-arithmetic constructions and checks around the discrete and
//! topological central point theorems.

pub mod centerpoint;
pub mod cli;
pub mod counterexample;
pub mod exact_lp;
pub mod random;
pub mod rational;
pub mod simplicial;
pub mod waist;
pub mod z2_index;
