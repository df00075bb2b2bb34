pub mod algebroid;
pub mod coeff;
pub mod conventions;
pub mod hyperstruct;
pub mod superalgebra;
