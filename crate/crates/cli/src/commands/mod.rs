pub mod evolve;
pub mod poles;
pub mod scan;
pub mod verify;
