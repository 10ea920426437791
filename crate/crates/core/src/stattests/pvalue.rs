use super::TestError;
use statrs::function::gamma::gamma_ur;

/// Upper tail `P(X >= stat)` of a chi-square variable with `dof` degrees of
/// freedom, i.e. the regularized upper incomplete gamma `Q(dof/2, stat/2)`.
pub fn chi_square_pvalue(stat: f64, dof: u32) -> Result<f64, TestError> {
    if dof == 0 {
        return Err(TestError::InvalidParameter(
            "chi-square needs at least one degree of freedom".into(),
        ));
    }
    if stat.is_nan() || stat < 0.0 {
        return Err(TestError::InvalidParameter(format!(
            "chi-square statistic must be non-negative, got {stat}"
        )));
    }
    if stat == 0.0 {
        return Ok(1.0);
    }
    if stat.is_infinite() {
        return Ok(0.0);
    }
    Ok(gamma_ur(dof as f64 / 2.0, stat / 2.0).clamp(0.0, 1.0))
}

/// Two-sided tail of a standard normal: `P(|Z| >= |z|) = erfc(|z| / sqrt 2)`.
pub fn normal_pvalue(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// Complementary error function for `x >= 0`, as `Q(1/2, x^2)`.
///
/// statrs' own `erfc` is off by up to about `3e-11` near `x = 1`; the
/// incomplete gamma route stays within a few ulps.
pub(crate) fn erfc(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    gamma_ur(0.5, x * x).clamp(0.0, 1.0)
}
