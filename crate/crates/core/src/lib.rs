pub mod construct;
pub mod ds;
pub mod geom;
pub mod io;
pub mod search;
pub mod union;
