pub mod group;
pub mod incidence;
pub mod octagon;
pub mod subgeom;
pub mod tower;
pub mod valuations;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
