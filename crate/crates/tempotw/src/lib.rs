pub mod construct;
pub mod decomposition;
pub mod exact;
pub mod generators;
pub mod logic;
pub mod pace;
pub mod solvers;
pub mod structures;
pub mod temporal;
pub mod tgr;
