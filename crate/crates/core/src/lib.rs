pub mod error;
pub mod fatpoint;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod liaison;
pub mod lifting;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod ops;
pub mod order;
pub mod parse;
pub mod poly;
pub mod random;
pub mod report;
pub mod ring;
pub mod zerodim;

pub use error::{Error, Result};
pub use ideal::Ideal;
