use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Γ(num) / Γ(den)` via log-Gamma subtraction, so large arguments never
/// overflow. Both arguments must be positive.
pub fn gamma_ratio<T: Scalar>(num: T, den: T) -> Result<T> {
    if !(num > T::zero()) || !(den > T::zero()) {
        return Err(Error::Domain(format!(
            "gamma_ratio({num}, {den}): arguments must be positive"
        )));
    }
    if num == den {
        return Ok(T::one());
    }
    Ok((num.ln_gamma() - den.ln_gamma()).exp())
}

/// `1 / Γ(z)` for `z > 0`.
pub(crate) fn recip_gamma<T: Scalar>(z: T) -> Result<T> {
    gamma_ratio(T::one(), z)
}
