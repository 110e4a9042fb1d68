//! Float math shims so the crate builds without `std` (via `libm`).

#[cfg(feature = "std")]
mod imp {
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    #[inline(always)]
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }
    #[inline(always)]
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    #[inline(always)]
    pub fn log2(x: f64) -> f64 {
        x.log2()
    }
    #[inline(always)]
    pub fn powf(x: f64, y: f64) -> f64 {
        x.powf(y)
    }
    #[inline(always)]
    pub fn asin(x: f64) -> f64 {
        x.asin()
    }
    #[inline(always)]
    pub fn sin_cos(x: f64) -> (f64, f64) {
        x.sin_cos()
    }
}

#[cfg(not(feature = "std"))]
mod imp {
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline(always)]
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    #[inline(always)]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    #[inline(always)]
    pub fn log2(x: f64) -> f64 {
        libm::log2(x)
    }
    #[inline(always)]
    pub fn powf(x: f64, y: f64) -> f64 {
        libm::pow(x, y)
    }
    #[inline(always)]
    pub fn asin(x: f64) -> f64 {
        libm::asin(x)
    }
    #[inline(always)]
    pub fn sin_cos(x: f64) -> (f64, f64) {
        (libm::sin(x), libm::cos(x))
    }
}

pub(crate) use imp::*;

/// `d^(-alpha)` evaluated from the squared distance, with fast paths for the
/// common integer exponents (the hot interference loops sit on this).
#[inline(always)]
pub(crate) fn pathloss_from_dist_sq(dist_sq: f64, alpha: f64) -> f64 {
    if alpha == 4.0 {
        1.0 / (dist_sq * dist_sq)
    } else if alpha == 2.0 {
        1.0 / dist_sq
    } else {
        powf(dist_sq, -0.5 * alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pathloss_fast_paths_match_powf() {
        for &d in &[0.5, 1.0, 3.7, 10.0, 712.0, 1999.0] {
            for &a in &[2.0, 3.1, 4.0] {
                let fast = pathloss_from_dist_sq(d * d, a);
                let slow = powf(d, -a);
                assert!(
                    (fast - slow).abs() / slow < 1e-12,
                    "d={d} alpha={a}: {fast} vs {slow}"
                );
            }
        }
    }
}
