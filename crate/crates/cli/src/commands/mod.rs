pub mod gap_sweep;
pub mod nn_train;
pub mod oracles;
pub mod rademacher;
pub mod symmetrizer;
pub mod verify_group;
