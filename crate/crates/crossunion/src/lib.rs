//! Formats, the parallel search driver, batch verification and operator
//! property suites for cross s-union families.

pub mod json;
pub mod parallel;
pub mod properties;
pub mod table;
pub mod verify;
