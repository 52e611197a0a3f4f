pub mod drawing;
pub mod endgame;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod observation;
pub mod oracle;
pub mod planarity;
pub mod thomassen;
pub mod reductions;
pub mod solver;
