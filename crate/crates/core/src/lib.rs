//! Explicit conditional bounds for the residue of a Dedekind zeta function
//! at `s = 1`, together with the machinery to check them numerically: a
//! segmented prime sieve, exact prime sums, splitting types of primes in a
//! number field, closed-form bound functions, field-record I/O and sweep
//! verifiers.

pub mod bounds;
pub mod bundled;
pub mod constants;
pub mod error;
pub mod field;
pub mod numeric;
pub mod prime_sums;
pub mod primes;
pub mod quadratic;
pub mod report;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{Interval, Precision, PrecisionPolicy};
pub use primes::PrimeTable;
