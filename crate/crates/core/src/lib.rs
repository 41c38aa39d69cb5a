pub mod cli;
pub mod cohside;
pub mod conside;
pub mod fans;
pub mod linalg;
pub mod picsym;
pub mod polyhedra;
pub mod skeleton;
pub mod verify;
pub mod zlin;
