//! Far-field exposure metrics: power density, plane-wave E-field, and the
//! exposure ratio (device E-field over the reference level of a standard).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sim::UserEquipment;
use crate::trmode::Mode;

/// Free-space wave impedance (ohm).
pub const FREE_SPACE_IMPEDANCE: f64 = 376.73;

/// One frequency band of a standard with its E-field reference level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Band {
    pub freq_low_hz: f64,
    pub freq_high_hz: f64,
    pub e_ref_v_per_m: f64,
    /// Where the reference level came from; free text.
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExposureStandard {
    /// Short identifier used to reference the standard from other records.
    pub key: String,
    pub name: String,
    pub bands: Vec<Band>,
}

impl ExposureStandard {
    /// Bands must be sorted, non-overlapping, non-empty, with positive reference levels.
    pub fn new(key: impl Into<String>, name: impl Into<String>, bands: Vec<Band>) -> Result<Self> {
        let key = key.into();
        if bands.is_empty() {
            return Err(Error::domain(format!("standard `{key}` has no bands")));
        }
        for (i, b) in bands.iter().enumerate() {
            if !(b.freq_low_hz >= 0.0) || !(b.freq_high_hz > b.freq_low_hz) || !b.freq_high_hz.is_finite() {
                return Err(Error::domain(format!("standard `{key}` band {i}: need 0 <= f_low < f_high")));
            }
            if !(b.e_ref_v_per_m > 0.0) || !b.e_ref_v_per_m.is_finite() {
                return Err(Error::domain(format!("standard `{key}` band {i}: reference level must be > 0")));
            }
            if i > 0 && b.freq_low_hz < bands[i - 1].freq_high_hz {
                return Err(Error::domain(format!(
                    "standard `{key}` band {i} overlaps or precedes band {}",
                    i - 1
                )));
            }
        }
        Ok(ExposureStandard {
            key,
            name: name.into(),
            bands,
        })
    }

    pub fn band_for(&self, freq_hz: f64) -> Result<&Band> {
        self.bands
            .iter()
            .find(|b| b.freq_low_hz <= freq_hz && freq_hz <= b.freq_high_hz)
            .ok_or_else(|| Error::UnmappedBand {
                standard: self.name.clone(),
                freq_hz,
            })
    }
}

/// Spherical-spreading power density `P G / (4 pi d^2)` in W/m^2.
pub fn power_density(tx_power_w: f64, antenna_gain_lin: f64, distance_m: f64) -> Result<f64> {
    if !(distance_m > 0.0) {
        return Err(Error::domain(format!("distance must be > 0 (got {distance_m})")));
    }
    if !(tx_power_w >= 0.0) || !(antenna_gain_lin > 0.0) {
        return Err(Error::domain(format!(
            "power density needs tx power >= 0 and gain > 0 (got {tx_power_w}, {antenna_gain_lin})"
        )));
    }
    Ok(tx_power_w * antenna_gain_lin / (4.0 * PI * distance_m * distance_m))
}

/// Plane-wave E-field `sqrt(S * eta0)` in V/m.
pub fn e_field_from_density(s_w_m2: f64) -> Result<f64> {
    if !(s_w_m2 >= 0.0) {
        return Err(Error::domain(format!("power density must be >= 0 (got {s_w_m2})")));
    }
    Ok((s_w_m2 * FREE_SPACE_IMPEDANCE).sqrt())
}

pub fn exposure_ratio(e_field_v_per_m: f64, standard: &ExposureStandard, freq_hz: f64) -> Result<f64> {
    if !(e_field_v_per_m >= 0.0) {
        return Err(Error::domain(format!("E-field must be >= 0 (got {e_field_v_per_m})")));
    }
    if !(freq_hz > 0.0) {
        return Err(Error::domain(format!("frequency must be > 0 (got {freq_hz})")));
    }
    Ok(e_field_v_per_m / standard.band_for(freq_hz)?.e_ref_v_per_m)
}

/// Downlink field from the serving base station, evaluated at each device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DownlinkExposure {
    pub bs_tx_power_w: f64,
    pub bs_antenna_gain_lin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExposureOptions {
    /// Distance from each device's antenna to the exposed observer.
    pub observer_distance_m: f64,
    pub device_antenna_gain_lin: f64,
    pub downlink: Option<DownlinkExposure>,
}

impl Default for ExposureOptions {
    fn default() -> Self {
        ExposureOptions {
            observer_distance_m: 1.0,
            device_antenna_gain_lin: 1.0,
            downlink: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceExposure {
    pub id: usize,
    pub mode: Mode,
    pub power_density_w_m2: f64,
    pub e_field_v_per_m: f64,
    /// One entry per standard, in report order.
    pub exposure_ratio: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExposureReport {
    pub standards: Vec<String>,
    pub per_device: Vec<DeviceExposure>,
    /// Incoherent sum of per-device densities.
    pub network_total_power_density_w_m2: f64,
    pub network_e_field_v_per_m: f64,
    /// `sqrt(sum_i ER_i^2)` per standard: the squared ratios of uncorrelated
    /// sources add like their power densities.
    pub network_exposure_ratio: Vec<f64>,
}

/// Exposure of a device population. TR-mode devices radiate no uplink power.
pub fn network_exposure(
    devices: &[UserEquipment],
    standards: &[ExposureStandard],
    opts: &ExposureOptions,
) -> Result<ExposureReport> {
    if devices.is_empty() {
        return Err(Error::domain("network exposure needs at least one device"));
    }
    let mut per_device = Vec::with_capacity(devices.len());
    for ue in devices {
        let mut density = power_density(ue.uplink_tx_power_w(), opts.device_antenna_gain_lin, opts.observer_distance_m)?;
        if let Some(dl) = opts.downlink {
            density += power_density(dl.bs_tx_power_w, dl.bs_antenna_gain_lin, ue.distance_m)?;
        }
        let e = e_field_from_density(density)?;
        let er = standards
            .iter()
            .map(|s| exposure_ratio(e, s, ue.freq_hz))
            .collect::<Result<Vec<_>>>()?;
        per_device.push(DeviceExposure {
            id: ue.id,
            mode: ue.mode,
            power_density_w_m2: density,
            e_field_v_per_m: e,
            exposure_ratio: er,
        });
    }
    let total: f64 = per_device.iter().map(|d| d.power_density_w_m2).sum();
    let network_exposure_ratio = (0..standards.len())
        .map(|k| per_device.iter().map(|d| d.exposure_ratio[k].powi(2)).sum::<f64>().sqrt())
        .collect();
    Ok(ExposureReport {
        standards: standards.iter().map(|s| s.name.clone()).collect(),
        per_device,
        network_total_power_density_w_m2: total,
        network_e_field_v_per_m: e_field_from_density(total)?,
        network_exposure_ratio,
    })
}

/// Number of pairwise interference relationships among `n_active_ul`
/// uplink transmitters, at unit cost.
pub fn complexity_metric(n_active_ul: usize) -> f64 {
    complexity_metric_with_cost(n_active_ul, 1.0)
}

pub fn complexity_metric_with_cost(n_active_ul: usize, unit_cost: f64) -> f64 {
    let n = n_active_ul as f64;
    unit_cost * n * (n - 1.0).max(0.0) / 2.0
}

/// A measured (or fixture-derived) E-field for one generation, mode and standard.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub label: String,
    pub standard_key: String,
    pub mode: Mode,
    pub freq_hz: f64,
    pub e_field_v_per_m: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExposureRatioRow {
    pub label: String,
    pub standard: String,
    pub mode: Mode,
    pub freq_hz: f64,
    pub e_field_v_per_m: f64,
    pub e_ref_v_per_m: f64,
    pub exposure_ratio: f64,
}

/// Exposure ratio for every sample, in input order.
pub fn exposure_ratio_table(samples: &[FieldSample], standards: &[ExposureStandard]) -> Result<Vec<ExposureRatioRow>> {
    samples
        .iter()
        .map(|s| {
            let std = standards
                .iter()
                .find(|st| st.key == s.standard_key)
                .ok_or_else(|| Error::domain(format!("sample `{}` references unknown standard `{}`", s.label, s.standard_key)))?;
            let band = std.band_for(s.freq_hz)?;
            Ok(ExposureRatioRow {
                label: s.label.clone(),
                standard: std.name.clone(),
                mode: s.mode,
                freq_hz: s.freq_hz,
                e_field_v_per_m: s.e_field_v_per_m,
                e_ref_v_per_m: band.e_ref_v_per_m,
                exposure_ratio: exposure_ratio(s.e_field_v_per_m, std, s.freq_hz)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rrc::RrcState;
    use proptest::prelude::*;

    fn band(lo: f64, hi: f64, e: f64) -> Band {
        Band {
            freq_low_hz: lo,
            freq_high_hz: hi,
            e_ref_v_per_m: e,
            provenance: "test".into(),
        }
    }

    fn standard() -> ExposureStandard {
        ExposureStandard::new("t", "TEST", vec![band(8e8, 9e8, 40.0), band(3.3e9, 3.8e9, 61.0)]).unwrap()
    }

    fn ue(id: usize, mode: Mode, p: f64) -> UserEquipment {
        UserEquipment {
            id,
            position_m: (100.0, 0.0),
            distance_m: 100.0,
            tx_power_w: p,
            mode,
            rrc_state: match mode {
                Mode::ActiveMode => RrcState::Connected,
                Mode::ThermalRadiationMode => RrcState::EnergyEfficient,
            },
            freq_hz: 3.5e9,
            tr_enabled: mode == Mode::ThermalRadiationMode,
        }
    }

    #[test]
    fn density_examples() {
        assert!((power_density(4.0 * PI, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((power_density(1.0, 2.0, 10.0).unwrap() - 1.5915e-3).abs() < 1e-7);
        let a = power_density(0.3, 1.5, 7.0).unwrap();
        let b = power_density(0.3, 1.5, 14.0).unwrap();
        assert!((a / b - 4.0).abs() < 1e-12);
        assert!(power_density(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn field_examples() {
        assert_eq!(e_field_from_density(0.0).unwrap(), 0.0);
        assert!((e_field_from_density(1.0).unwrap() - 19.409).abs() < 1e-3);
        let s = power_density(2.0, 1.0, 3.0).unwrap();
        let e = e_field_from_density(s).unwrap();
        assert!((e * e / FREE_SPACE_IMPEDANCE - s).abs() < 1e-15);
        assert!(e_field_from_density(-1.0).is_err());
    }

    #[test]
    fn ratio_examples() {
        let s = standard();
        assert_eq!(exposure_ratio(61.0, &s, 3.5e9).unwrap(), 1.0);
        assert!((exposure_ratio(0.83 * 61.0, &s, 3.5e9).unwrap() - 0.83).abs() < 1e-12);
        assert!((exposure_ratio(0.6075 * 61.0, &s, 3.5e9).unwrap() - 0.6075).abs() < 1e-12);
        assert!(matches!(exposure_ratio(1.0, &s, 2.0e9), Err(Error::UnmappedBand { .. })));
    }

    #[test]
    fn standard_validation() {
        assert!(ExposureStandard::new("x", "X", vec![]).is_err());
        assert!(ExposureStandard::new("x", "X", vec![band(1e9, 2e9, 1.0), band(1.5e9, 3e9, 1.0)]).is_err());
        assert!(ExposureStandard::new("x", "X", vec![band(2e9, 1e9, 1.0)]).is_err());
        assert!(ExposureStandard::new("x", "X", vec![band(1e9, 2e9, 0.0)]).is_err());
    }

    #[test]
    fn all_tr_without_downlink_is_zero() {
        let devs: Vec<_> = (0..5).map(|i| ue(i, Mode::ThermalRadiationMode, 0.2)).collect();
        let r = network_exposure(&devs, &[standard()], &ExposureOptions::default()).unwrap();
        assert_eq!(r.network_total_power_density_w_m2, 0.0);
        assert!(r.per_device.iter().all(|d| d.power_density_w_m2 == 0.0 && d.exposure_ratio[0] == 0.0));
        assert_eq!(r.network_exposure_ratio, vec![0.0]);
    }

    #[test]
    fn downlink_term_is_added_per_device() {
        let devs = vec![ue(0, Mode::ThermalRadiationMode, 0.2)];
        let opts = ExposureOptions {
            downlink: Some(DownlinkExposure {
                bs_tx_power_w: 20.0,
                bs_antenna_gain_lin: 1.0,
            }),
            ..ExposureOptions::default()
        };
        let r = network_exposure(&devs, &[], &opts).unwrap();
        let want = power_density(20.0, 1.0, 100.0).unwrap();
        assert_eq!(r.network_total_power_density_w_m2, want);
    }

    #[test]
    fn singleton_matches_power_density() {
        let r = network_exposure(&[ue(3, Mode::ActiveMode, 0.2)], &[standard()], &ExposureOptions::default()).unwrap();
        assert_eq!(r.network_total_power_density_w_m2, power_density(0.2, 1.0, 1.0).unwrap());
        assert!(network_exposure(&[], &[], &ExposureOptions::default()).is_err());
    }

    #[test]
    fn fifty_vs_thirty_twenty() {
        let am: Vec<_> = (0..50).map(|i| ue(i, Mode::ActiveMode, 0.2)).collect();
        let mixed: Vec<_> = (0..50)
            .map(|i| ue(i, if i < 30 { Mode::ActiveMode } else { Mode::ThermalRadiationMode }, 0.2))
            .collect();
        let o = ExposureOptions::default();
        let a = network_exposure(&am, &[standard()], &o).unwrap();
        let b = network_exposure(&mixed, &[standard()], &o).unwrap();
        let ratio = b.network_total_power_density_w_m2 / a.network_total_power_density_w_m2;
        assert!((ratio - 0.6).abs() <= 1e-12 * 0.6);
    }

    #[test]
    fn complexity_values() {
        assert_eq!(complexity_metric(0), 0.0);
        assert_eq!(complexity_metric(1), 0.0);
        assert_eq!(complexity_metric(50), 1225.0);
        assert_eq!(complexity_metric(30), 435.0);
        assert_eq!(complexity_metric_with_cost(4, 2.5), 15.0);
        for n in 2..500 {
            assert!(complexity_metric(n + 1) > complexity_metric(n));
        }
    }

    #[test]
    fn table_rows_follow_input() {
        let samples = vec![FieldSample {
            label: "5G".into(),
            standard_key: "t".into(),
            mode: Mode::ActiveMode,
            freq_hz: 3.5e9,
            e_field_v_per_m: 0.83 * 61.0,
            note: String::new(),
        }];
        let rows = exposure_ratio_table(&samples, &[standard()]).unwrap();
        assert_eq!(rows[0].e_ref_v_per_m, 61.0);
        assert!((rows[0].exposure_ratio - 0.83).abs() < 1e-12);
        let mut bad = samples.clone();
        bad[0].standard_key = "nope".into();
        assert!(exposure_ratio_table(&bad, &[standard()]).is_err());
    }

    proptest! {
        #[test]
        fn ratio_is_linear(e in 0.0f64..200.0, k in 0.0f64..10.0, f in 3.3e9f64..3.8e9) {
            let s = standard();
            let a = exposure_ratio(k * e, &s, f).unwrap();
            let b = k * exposure_ratio(e, &s, f).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }

        #[test]
        fn total_is_permutation_invariant(
            powers in prop::collection::vec((0.0f64..2.0, any::<bool>()), 1..40),
            seed in any::<u64>(),
        ) {
            let devs: Vec<_> = powers.iter().enumerate()
                .map(|(i, &(p, tr))| ue(i, if tr { Mode::ThermalRadiationMode } else { Mode::ActiveMode }, p))
                .collect();
            let mut shuffled = devs.clone();
            let n = shuffled.len();
            let mut x = seed;
            for i in (1..n).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (x >> 33) as usize % (i + 1));
            }
            let o = ExposureOptions::default();
            let a = network_exposure(&devs, &[standard()], &o).unwrap().network_total_power_density_w_m2;
            let b = network_exposure(&shuffled, &[standard()], &o).unwrap().network_total_power_density_w_m2;
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
        }

        #[test]
        fn switching_to_tr_never_increases_density(
            powers in prop::collection::vec((0.0f64..2.0, any::<bool>()), 1..40),
            pick in any::<prop::sample::Index>(),
        ) {
            let devs: Vec<_> = powers.iter().enumerate()
                .map(|(i, &(p, tr))| ue(i, if tr { Mode::ThermalRadiationMode } else { Mode::ActiveMode }, p))
                .collect();
            let mut switched = devs.clone();
            let k = pick.index(switched.len());
            switched[k].mode = Mode::ThermalRadiationMode;
            let o = ExposureOptions::default();
            let a = network_exposure(&devs, &[standard()], &o).unwrap().network_total_power_density_w_m2;
            let b = network_exposure(&switched, &[standard()], &o).unwrap().network_total_power_density_w_m2;
            prop_assert!(b <= a);
        }
    }
}
