pub mod chartable;
pub mod cpgraph;
pub mod cyclotomic;
pub mod graphlab;
pub mod group;
pub mod intlinalg;
pub mod par;
pub mod rep;
