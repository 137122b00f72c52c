//! Float helpers that do not depend on `std`.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// `10^(-db/10)`, the linear transmittance of a `db` loss.
#[inline]
pub(crate) fn db_to_linear_loss(db: f64) -> f64 {
    libm::pow(10.0, -db / 10.0)
}
