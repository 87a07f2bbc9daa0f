//! Link-level channel: free-space path loss, Rayleigh power fading, SINR and
//! outage probability.
//!
//! All arithmetic is done on linear power ratios; dB appears only in the
//! public signatures that say so.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Reference noise temperature (K).
pub const T0_KELVIN: f64 = 290.0;

pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

pub fn dbm_to_w(dbm: f64) -> f64 {
    db_to_lin(dbm - 30.0)
}

pub fn w_to_dbm(w: f64) -> f64 {
    lin_to_db(w) + 30.0
}

/// Thermal noise power `k T0 B` scaled by the receiver noise figure.
pub fn noise_power_w(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) || !noise_figure_db.is_finite() {
        return Err(Error::domain(format!(
            "noise bandwidth must be > 0 and noise figure finite (got {bandwidth_hz} Hz, {noise_figure_db} dB)"
        )));
    }
    Ok(BOLTZMANN * T0_KELVIN * bandwidth_hz * db_to_lin(noise_figure_db))
}

/// Friis free-space path loss in dB.
pub fn free_space_path_loss(distance_m: f64, freq_hz: f64) -> Result<f64> {
    if !(distance_m > 0.0) || !(freq_hz > 0.0) || !distance_m.is_finite() || !freq_hz.is_finite() {
        return Err(Error::domain(format!(
            "path loss needs distance > 0 and frequency > 0 (got {distance_m} m, {freq_hz} Hz)"
        )));
    }
    Ok(20.0 * distance_m.log10() + 20.0 * freq_hz.log10() + 20.0 * (4.0 * PI / SPEED_OF_LIGHT).log10())
}

/// Large-scale power gain of a free-space link, `(c / 4 pi d f)^2`.
pub fn path_gain(distance_m: f64, freq_hz: f64) -> Result<f64> {
    free_space_path_loss(distance_m, freq_hz).map(|loss| db_to_lin(-loss))
}

/// Draws a unit-mean exponential power gain (squared Rayleigh envelope).
pub fn draw_fading_gain<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

/// SINR in dB of `signal_w` against the summed interferers plus noise.
pub fn sinr(signal_w: f64, interference_w: &[f64], noise_w: f64) -> Result<f64> {
    if !(noise_w > 0.0) {
        return Err(Error::domain(format!("noise power must be > 0 (got {noise_w})")));
    }
    if !(signal_w >= 0.0) {
        return Err(Error::domain(format!("signal power must be >= 0 (got {signal_w})")));
    }
    let mut total = 0.0;
    for &p in interference_w {
        if !(p >= 0.0) {
            return Err(Error::domain(format!("interference power must be >= 0 (got {p})")));
        }
        total += p;
    }
    Ok(lin_to_db(signal_w / (total + noise_w)))
}

fn check_outage_args(snr_threshold_lin: f64, mean_snr_lin: f64) -> Result<()> {
    if !(snr_threshold_lin > 0.0) || !(mean_snr_lin > 0.0) {
        return Err(Error::domain(format!(
            "outage needs threshold > 0 and mean SNR > 0 (got {snr_threshold_lin}, {mean_snr_lin})"
        )));
    }
    Ok(())
}

/// Rayleigh outage `P(mean * g < threshold) = 1 - exp(-threshold / mean)`.
pub fn outage_analytic(snr_threshold_lin: f64, mean_snr_lin: f64) -> Result<f64> {
    check_outage_args(snr_threshold_lin, mean_snr_lin)?;
    Ok(-(-snr_threshold_lin / mean_snr_lin).exp_m1())
}

/// Outage of a Rayleigh-faded link against independently Rayleigh-faded
/// interferers, all powers normalised to the noise power.
///
/// `P(S / (sum I_j + 1) < threshold)` with `S ~ Exp(mean_snr)` and
/// `I_j ~ Exp(inr_j)` has the closed form
/// `1 - exp(-threshold / mean_snr) * prod_j 1 / (1 + threshold * inr_j / mean_snr)`.
pub fn outage_with_interferers(snr_threshold_lin: f64, mean_snr_lin: f64, mean_inr_lin: &[f64]) -> Result<f64> {
    check_outage_args(snr_threshold_lin, mean_snr_lin)?;
    let ratio = snr_threshold_lin / mean_snr_lin;
    let mut log_success = -ratio;
    for &inr in mean_inr_lin {
        if !(inr >= 0.0) {
            return Err(Error::domain(format!("interferer INR must be >= 0 (got {inr})")));
        }
        log_success -= (ratio * inr).ln_1p();
    }
    Ok(-log_success.exp_m1())
}

/// Monte Carlo estimate of [`outage_analytic`]; deterministic for a fixed seed.
pub fn outage_monte_carlo(snr_threshold_lin: f64, mean_snr_lin: f64, n_trials: u64, seed: u64) -> Result<f64> {
    check_outage_args(snr_threshold_lin, mean_snr_lin)?;
    if n_trials == 0 {
        return Err(Error::domain("outage Monte Carlo needs at least one trial"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outages = 0u64;
    for _ in 0..n_trials {
        if mean_snr_lin * draw_fading_gain(&mut rng) < snr_threshold_lin {
            outages += 1;
        }
    }
    Ok(outages as f64 / n_trials as f64)
}

/// One draw of a link: large-scale loss, small-scale gain and the SNRs they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRealization {
    pub path_loss_db: f64,
    pub fading_power_gain: f64,
    pub mean_snr_db: f64,
    pub inst_snr_db: f64,
}

impl ChannelRealization {
    /// Builds the realization for a transmitter of `tx_power_w` over a
    /// free-space link, with `fading_power_gain` applied on top.
    pub fn new(
        tx_power_w: f64,
        distance_m: f64,
        freq_hz: f64,
        noise_w: f64,
        fading_power_gain: f64,
    ) -> Result<Self> {
        if !(fading_power_gain >= 0.0) {
            return Err(Error::domain(format!("fading gain must be >= 0 (got {fading_power_gain})")));
        }
        if !(noise_w > 0.0) || !(tx_power_w > 0.0) {
            return Err(Error::domain("realization needs positive transmit and noise power"));
        }
        let path_loss_db = free_space_path_loss(distance_m, freq_hz)?;
        let mean_snr = tx_power_w * db_to_lin(-path_loss_db) / noise_w;
        Ok(ChannelRealization {
            path_loss_db,
            fading_power_gain,
            mean_snr_db: lin_to_db(mean_snr),
            inst_snr_db: lin_to_db(mean_snr * fading_power_gain),
        })
    }

    pub fn draw<R: Rng + ?Sized>(
        rng: &mut R,
        tx_power_w: f64,
        distance_m: f64,
        freq_hz: f64,
        noise_w: f64,
    ) -> Result<Self> {
        let gain = draw_fading_gain(rng);
        Self::new(tx_power_w, distance_m, freq_hz, noise_w, gain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fspl_cancels_at_reference_frequency() {
        let f = SPEED_OF_LIGHT / (4.0 * PI);
        assert!(free_space_path_loss(1.0, f).unwrap().abs() < 1e-9);
    }

    #[test]
    fn fspl_hand_value() {
        // 40 + 187.6042 - 147.5522
        let loss = free_space_path_loss(100.0, 2.4e9).unwrap();
        assert!((loss - 80.1).abs() <= 0.1, "{loss}");
        assert!((loss - 80.052_008).abs() < 1e-5);
    }

    #[test]
    fn fspl_distance_doubling() {
        for f in [9e8, 2.4e9, 3.5e9, 28e9] {
            let a = free_space_path_loss(37.0, f).unwrap();
            let b = free_space_path_loss(74.0, f).unwrap();
            assert!((b - a - 6.0206).abs() < 1e-4);
        }
    }

    #[test]
    fn fspl_rejects_bad_inputs() {
        assert!(free_space_path_loss(0.0, 1e9).is_err());
        assert!(free_space_path_loss(-1.0, 1e9).is_err());
        assert!(free_space_path_loss(10.0, 0.0).is_err());
        assert!(free_space_path_loss(f64::NAN, 1e9).is_err());
    }

    #[test]
    fn sinr_examples() {
        assert_eq!(sinr(1.0, &[], 1.0).unwrap(), 0.0);
        let v = sinr(1.0, &[0.5, 0.5], 1.0).unwrap();
        assert!((v + 3.0103).abs() < 1e-4);
        assert!(sinr(1.0, &[-0.1], 1.0).is_err());
        assert!(sinr(-1.0, &[], 1.0).is_err());
        assert!(sinr(1.0, &[], 0.0).is_err());
    }

    #[test]
    fn outage_limits() {
        assert!(outage_analytic(1e-12, 1.0).unwrap() < 1e-11);
        assert!(outage_analytic(1.0, 1e12).unwrap() < 1e-11);
        let p = outage_analytic(2.0, 2.0).unwrap();
        assert!((p - 0.632_120_558_828_557_7).abs() < 1e-15);
        assert!(outage_analytic(0.0, 1.0).is_err());
        assert!(outage_analytic(1.0, -1.0).is_err());
    }

    #[test]
    fn interferer_outage_reduces_to_plain_outage() {
        let a = outage_analytic(3.0, 7.0).unwrap();
        let b = outage_with_interferers(3.0, 7.0, &[]).unwrap();
        assert_eq!(a, b);
        let c = outage_with_interferers(3.0, 7.0, &[0.0, 0.0]).unwrap();
        assert_eq!(a, c);
        assert!(outage_with_interferers(3.0, 7.0, &[1.0]).unwrap() > a);
    }

    #[test]
    fn monte_carlo_rejects_zero_trials() {
        assert!(outage_monte_carlo(1.0, 1.0, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a = outage_monte_carlo(1.0, 2.0, 10_000, 99).unwrap();
        let b = outage_monte_carlo(1.0, 2.0, 10_000, 99).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(outage_monte_carlo(1e-6, 1e6, 10_000, 3).unwrap(), 0.0);
    }

    #[test]
    fn realization_snr_relation() {
        let r = ChannelRealization::new(1.0, 250.0, 3.5e9, 1e-13, 0.37).unwrap();
        let inst = db_to_lin(r.inst_snr_db);
        let mean = db_to_lin(r.mean_snr_db);
        assert!((inst / mean - 0.37).abs() < 1e-12);
        assert!(ChannelRealization::new(1.0, 250.0, 3.5e9, 1e-13, -0.1).is_err());
    }

    #[test]
    fn noise_power_room_temperature() {
        // -174 dBm/Hz over 1 Hz
        let n = noise_power_w(1.0, 0.0).unwrap();
        assert!((w_to_dbm(n) + 173.975).abs() < 1e-2);
    }
}
