//! Exact linear algebra: integer matrices, Smith normal form, `Z_(l)`-lattices and `F_p`.

pub mod fp;
pub mod int;
pub mod local;
pub mod smith;

pub use int::{dot, gcd, is_prime, vadd, vscale, vsub, Matrix};
