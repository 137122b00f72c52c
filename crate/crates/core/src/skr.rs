//! Decoy-state BB84 secret key rate as a function of link attenuation.
//!
//! The rate follows the asymptotic GLLP bound with an infinite number of
//! decoy states:
//!
//! ```text
//! η   = η_Bob · 10^(-a/10)
//! Q_μ = Y0 + 1 - exp(-ημ)
//! E_μ = (e0·Y0 + e_det·(1 - exp(-ημ))) / Q_μ
//! Y1  = Y0 + η - Y0·η
//! Q_1 = Y1 · μ · exp(-μ)
//! e_1 = (e0·Y0 + e_det·η) / Y1
//! R   = q · ( -Q_μ·f_ec·H2(E_μ) + Q_1·(1 - H2(e_1)) )
//! ```
//!
//! `R` is per emitted pulse; [`skr_bps`] clamps it at zero, scales it by the
//! pulse rate and applies the optional throughput ceiling.

use alloc::string::String;

use crate::error::{Error, Result};
use crate::math;

/// Error rate of background (dark count) events.
pub const E0: f64 = 0.5;

/// Throughput ceiling of the built-in profiles, in bits/s.
///
/// Flattens `f(a)` at short distances, where the device rather than the
/// channel limits key generation.
pub const DEFAULT_KEY_RATE_CEILING_BPS: f64 = 9.0e5;

/// Physical parameters of a decoy-state BB84 link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoyParams {
    /// Mean photon number of signal states.
    pub mu: f64,
    /// Background yield per pulse.
    pub y0: f64,
    /// Intrinsic detector/misalignment error probability.
    pub e_det: f64,
    /// Receiver detection efficiency.
    pub eta_bob: f64,
    /// Sifting/protocol efficiency.
    pub q: f64,
    /// Error-correction inefficiency.
    pub f_ec: f64,
    pub pulse_rate_hz: f64,
    /// Upper bound on the delivered key rate, `None` for an unbounded model.
    pub max_skr_bps: Option<f64>,
}

impl DecoyParams {
    /// Standard literature values with the given receiver efficiency and no
    /// throughput ceiling.
    pub const fn literature(eta_bob: f64) -> Self {
        DecoyParams {
            mu: 0.5,
            y0: 1.7e-6,
            e_det: 0.033,
            eta_bob,
            q: 0.5,
            f_ec: 1.22,
            pulse_rate_hz: 1.0e9,
            max_skr_bps: None,
        }
    }

    pub const fn with_ceiling(mut self, max_skr_bps: Option<f64>) -> Self {
        self.max_skr_bps = max_skr_bps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        fn check(field: &'static str, value: f64, ok: bool) -> Result<()> {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter { field, value })
            }
        }
        check("mu", self.mu, self.mu > 0.0)?;
        check("y0", self.y0, (0.0..=1.0).contains(&self.y0))?;
        check("e_det", self.e_det, (0.0..0.5).contains(&self.e_det))?;
        check(
            "eta_bob",
            self.eta_bob,
            self.eta_bob > 0.0 && self.eta_bob <= 1.0,
        )?;
        check("q", self.q, self.q > 0.0 && self.q <= 1.0)?;
        check("f_ec", self.f_ec, self.f_ec >= 1.0)?;
        check(
            "pulse_rate_hz",
            self.pulse_rate_hz,
            self.pulse_rate_hz > 0.0,
        )?;
        if let Some(cap) = self.max_skr_bps {
            check("max_skr_bps", cap, cap > 0.0)?;
        }
        Ok(())
    }
}

/// Gain and error rate of the signal states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalTerms {
    pub gain: f64,
    pub qber: f64,
}

/// Gain and error rate of the single-photon component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinglePhotonTerms {
    pub gain: f64,
    pub error: f64,
}

/// A named key-rate curve `f(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkrProfile {
    pub name: String,
    pub params: DecoyParams,
}

impl SkrProfile {
    pub const BUILTIN_NAMES: [&'static str; 3] = ["experimental", "low", "high"];

    pub fn new(name: impl Into<String>, params: DecoyParams) -> Result<Self> {
        params.validate()?;
        let name = name.into();
        if skr_bps(&params, 0.0)? <= 0.0 {
            return Err(Error::InvalidProfile { name });
        }
        Ok(SkrProfile { name, params })
    }

    /// `η_Bob = 6%`, the simulated curve matching the measured devices.
    pub fn experimental() -> Self {
        Self::builtin_unchecked("experimental", 0.06)
    }

    /// `η_Bob = 2%`, a pessimistic curve.
    pub fn low() -> Self {
        Self::builtin_unchecked("low", 0.02)
    }

    /// `η_Bob = 25%`.
    pub fn high() -> Self {
        Self::builtin_unchecked("high", 0.25)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "experimental" => Some(Self::experimental()),
            "low" => Some(Self::low()),
            "high" => Some(Self::high()),
            _ => None,
        }
    }

    pub fn builtins() -> [Self; 3] {
        [Self::experimental(), Self::low(), Self::high()]
    }

    fn builtin_unchecked(name: &str, eta_bob: f64) -> Self {
        SkrProfile {
            name: name.into(),
            params: DecoyParams::literature(eta_bob)
                .with_ceiling(Some(DEFAULT_KEY_RATE_CEILING_BPS)),
        }
    }
}

/// Anything that maps a link attenuation (dB) to a secret key rate (bits/s).
///
/// Implementations must be non-increasing in attenuation.
pub trait KeyRateModel {
    fn rate_bps(&self, attenuation_db: f64) -> Result<f64>;
}

impl KeyRateModel for DecoyParams {
    fn rate_bps(&self, attenuation_db: f64) -> Result<f64> {
        skr_bps(self, attenuation_db)
    }
}

impl KeyRateModel for SkrProfile {
    fn rate_bps(&self, attenuation_db: f64) -> Result<f64> {
        skr_bps(&self.params, attenuation_db)
    }
}

impl<F: Fn(f64) -> f64> KeyRateModel for F {
    fn rate_bps(&self, attenuation_db: f64) -> Result<f64> {
        check_attenuation(attenuation_db)?;
        Ok(self(attenuation_db))
    }
}

/// Binary Shannon entropy `H2(p)` in bits, with `0·log2(0) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            what: "probability",
            value: p,
        });
    }
    Ok(h2(p))
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * math::log2(x) } else { 0.0 };
    term(p) + term(1.0 - p)
}

fn check_attenuation(a: f64) -> Result<()> {
    // NaN fails the comparison.
    if a >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "attenuation (dB)",
            value: a,
        })
    }
}

/// Overall transmittance `η_Bob · 10^(-a/10)`.
pub fn channel_transmittance(params: &DecoyParams, a: f64) -> Result<f64> {
    check_attenuation(a)?;
    Ok(params.eta_bob * math::db_to_linear_loss(a))
}

pub fn signal_gain_and_qber(params: &DecoyParams, a: f64) -> Result<SignalTerms> {
    let eta = channel_transmittance(params, a)?;
    let detected = -libm::expm1(-eta * params.mu);
    let gain = params.y0 + detected;
    let qber = if gain > 0.0 {
        (E0 * params.y0 + params.e_det * detected) / gain
    } else {
        // No clicks at all; the limit of the ratio for y0 > 0 is e0.
        E0
    };
    Ok(SignalTerms { gain, qber })
}

pub fn single_photon_terms(params: &DecoyParams, a: f64) -> Result<SinglePhotonTerms> {
    let eta = channel_transmittance(params, a)?;
    let yield1 = params.y0 + eta - params.y0 * eta;
    if yield1 <= 0.0 {
        return Err(Error::DegenerateChannel);
    }
    let gain = yield1 * params.mu * math::exp(-params.mu);
    let error = (E0 * params.y0 + params.e_det * eta) / yield1;
    Ok(SinglePhotonTerms { gain, error })
}

/// Unclamped key fraction per emitted pulse.
pub fn skr_per_pulse(params: &DecoyParams, a: f64) -> Result<f64> {
    let signal = signal_gain_and_qber(params, a)?;
    let single = single_photon_terms(params, a)?;
    Ok(params.q
        * (-signal.gain * params.f_ec * h2(signal.qber) + single.gain * (1.0 - h2(single.error))))
}

/// The key-rate function `f(a)` in bits/s.
pub fn skr_bps(params: &DecoyParams, a: f64) -> Result<f64> {
    let rate = skr_per_pulse(params, a)?.max(0.0) * params.pulse_rate_hz;
    Ok(match params.max_skr_bps {
        Some(cap) => rate.min(cap),
        None => rate,
    })
}

const CUTOFF_SEARCH_LIMIT_DB: f64 = 1000.0;

/// Smallest attenuation at which the key rate reaches zero, to within 1e-6 dB.
pub fn cutoff_attenuation(params: &DecoyParams) -> Result<f64> {
    if skr_bps(params, 0.0)? <= 0.0 {
        return Err(Error::InvalidProfile {
            name: String::new(),
        });
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while skr_bps(params, hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > CUTOFF_SEARCH_LIMIT_DB {
            return Err(Error::Domain {
                what: "cutoff attenuation (dB)",
                value: hi,
            });
        }
    }
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if skr_bps(params, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // 30-digit evaluation of the closed form.
        assert!(rel_eq(
            binary_entropy(0.11).unwrap(),
            0.499_915_958_164_527_995_6,
            1e-14
        ));
    }

    #[test]
    fn binary_entropy_rejects_out_of_range() {
        assert!(matches!(binary_entropy(-0.01), Err(Error::Domain { .. })));
        assert!(matches!(binary_entropy(1.5), Err(Error::Domain { .. })));
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn transmittance() {
        let high = DecoyParams::literature(0.25);
        assert_eq!(channel_transmittance(&high, 0.0).unwrap(), 0.25);
        assert!(rel_eq(
            channel_transmittance(&high, 10.0).unwrap(),
            0.025,
            1e-15
        ));
        let exp = DecoyParams::literature(0.06);
        assert!(rel_eq(
            channel_transmittance(&exp, 3.0).unwrap(),
            0.030_071_234_017_636_337_1,
            1e-14
        ));
        assert!(channel_transmittance(&exp, -0.1).is_err());
    }

    #[test]
    fn signal_terms_limits() {
        let mut p = DecoyParams::literature(0.06);
        p.y0 = 0.0;
        let far = signal_gain_and_qber(&p, 400.0).unwrap();
        assert!(far.gain < 1e-40);

        p.e_det = 0.0;
        for a in [0.0, 3.0, 30.0] {
            assert_eq!(signal_gain_and_qber(&p, a).unwrap().qber, 0.0);
        }

        let noisy = DecoyParams::literature(0.06);
        let s = signal_gain_and_qber(&noisy, 200.0).unwrap();
        assert!((s.qber - E0).abs() < 1e-3);
    }

    #[test]
    fn signal_terms_high_profile_at_20km() {
        // mpmath, 30 digits.
        let s = signal_gain_and_qber(&DecoyParams::literature(0.25), 4.2).unwrap();
        assert!(rel_eq(s.gain, 0.046_413_802_889_491_650_12, 1e-12));
        assert!(rel_eq(s.qber, 0.033_017_104_825_516_888_29, 1e-12));
    }

    #[test]
    fn single_photon_experimental_at_10km() {
        let t = single_photon_terms(&DecoyParams::literature(0.06), 2.1).unwrap();
        assert!(rel_eq(t.gain, 0.011_220_009_675_525_036_12, 1e-12));
        assert!(rel_eq(t.error, 0.033_021_514_398_565_081_58, 1e-12));
    }

    #[test]
    fn single_photon_limits() {
        let mut p = DecoyParams::literature(0.25);
        p.y0 = 0.0;
        for a in [0.0, 5.0, 50.0] {
            assert_eq!(single_photon_terms(&p, a).unwrap().error, p.e_det);
        }
        p.mu = 1e-12;
        assert!(single_photon_terms(&p, 0.0).unwrap().gain < 1e-12);

        p.mu = 0.5;
        // Transmittance underflows to zero.
        assert_eq!(
            single_photon_terms(&p, 5000.0),
            Err(Error::DegenerateChannel)
        );
    }

    #[test]
    fn uncapped_rate_matches_closed_form() {
        let r = skr_bps(&DecoyParams::literature(0.25), 4.2).unwrap();
        assert!(rel_eq(r, 5_470_634.384_441_728_384_65, 1e-10));
        let r = skr_bps(&DecoyParams::literature(0.06), 0.0).unwrap();
        assert!(rel_eq(r, 3_419_632.625_042_443_957_4, 1e-10));
    }

    #[test]
    fn ceiling_flattens_short_links() {
        let p = SkrProfile::experimental();
        assert_eq!(
            skr_bps(&p.params, 0.0).unwrap(),
            DEFAULT_KEY_RATE_CEILING_BPS
        );
        assert_eq!(
            skr_bps(&p.params, 5.0).unwrap(),
            DEFAULT_KEY_RATE_CEILING_BPS
        );
        assert!(skr_bps(&p.params, 10.0).unwrap() < DEFAULT_KEY_RATE_CEILING_BPS);
    }

    #[test]
    fn rate_is_zero_far_beyond_cutoff() {
        for p in SkrProfile::builtins() {
            assert_eq!(skr_bps(&p.params, 60.0).unwrap(), 0.0, "{}", p.name);
            let c = cutoff_attenuation(&p.params).unwrap();
            assert_eq!(skr_bps(&p.params, c + 1.0).unwrap(), 0.0);
            assert!(skr_bps(&p.params, c - 0.01).unwrap() > 0.0);
        }
    }

    #[test]
    fn cutoff_matches_linear_scan() {
        for p in SkrProfile::builtins() {
            let c = cutoff_attenuation(&p.params).unwrap();
            let mut a = 0.0;
            let mut i = 0u32;
            while skr_bps(&p.params, a).unwrap() > 0.0 {
                i += 1;
                a = f64::from(i) * 0.01;
            }
            // First zero of the scan lies within one step above the cutoff.
            assert!(
                a >= c - 1e-6 && a - c < 0.01 + 1e-6,
                "{}: scan {a} cutoff {c}",
                p.name
            );
        }
    }

    #[test]
    fn cutoff_grows_with_detector_efficiency() {
        let lo = cutoff_attenuation(&DecoyParams::literature(0.06)).unwrap();
        let hi = cutoff_attenuation(&DecoyParams::literature(0.25)).unwrap();
        assert!(hi > lo);
    }

    #[test]
    fn cutoff_rejects_dead_profile() {
        let mut p = DecoyParams::literature(0.06);
        p.e_det = 0.3;
        assert!(matches!(
            cutoff_attenuation(&p),
            Err(Error::InvalidProfile { .. })
        ));
        assert!(SkrProfile::new("dead", p).is_err());
    }

    #[test]
    fn builtin_profiles_are_distinct_and_positive() {
        let [a, b, c] = SkrProfile::builtins();
        assert_ne!(a.params, b.params);
        assert_ne!(b.params, c.params);
        assert_ne!(a.params, c.params);
        for p in [a, b, c] {
            p.params.validate().unwrap();
            assert!(skr_bps(&p.params, 0.0).unwrap() > 0.0);
            assert_eq!(SkrProfile::builtin(&p.name).unwrap(), p);
        }
        assert!(SkrProfile::builtin("medium").is_none());
    }

    #[test]
    fn validation_names_the_field() {
        let mut p = DecoyParams::literature(0.06);
        p.f_ec = 0.9;
        assert_eq!(
            p.validate(),
            Err(Error::InvalidParameter {
                field: "f_ec",
                value: 0.9
            })
        );
        let mut p = DecoyParams::literature(0.06);
        p.e_det = 0.5;
        assert!(p.validate().is_err());
        let p = DecoyParams::literature(1.5);
        assert!(p.validate().is_err());
    }

    #[test]
    fn pure_function() {
        let p = SkrProfile::high();
        assert_eq!(
            skr_bps(&p.params, 13.37).unwrap().to_bits(),
            skr_bps(&p.params, 13.37).unwrap().to_bits()
        );
    }
}
