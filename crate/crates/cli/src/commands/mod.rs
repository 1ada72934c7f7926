pub mod bipartite;
pub mod check;
pub mod demo;
pub mod search;
pub mod sweep;
