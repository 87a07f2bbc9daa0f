//! Adaptive AM/TR switching and the services each mode admits.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// Full-duplex operation with always-on uplink signalling.
    ActiveMode,
    /// Downlink-only operation; uplink information transfer is disabled.
    ThermalRadiationMode,
}

impl Mode {
    pub fn short_name(self) -> &'static str {
        match self {
            Mode::ActiveMode => "AM",
            Mode::ThermalRadiationMode => "TR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchConfig {
    /// Downlink received power threshold at the device.
    pub rss_threshold_dbm: f64,
    /// Half-width of the dead band around the threshold.
    pub hysteresis_db: f64,
}

impl SwitchConfig {
    pub const DEFAULT_HYSTERESIS_DB: f64 = 3.0;

    pub fn new(rss_threshold_dbm: f64, hysteresis_db: f64) -> Result<Self> {
        if !rss_threshold_dbm.is_finite() {
            return Err(Error::domain(format!("rss threshold must be finite (got {rss_threshold_dbm})")));
        }
        if !(hysteresis_db >= 0.0) || !hysteresis_db.is_finite() {
            return Err(Error::domain(format!("hysteresis must be >= 0 (got {hysteresis_db})")));
        }
        Ok(SwitchConfig {
            rss_threshold_dbm,
            hysteresis_db,
        })
    }

    pub fn enter_tr_below_dbm(&self) -> f64 {
        self.rss_threshold_dbm - self.hysteresis_db
    }

    pub fn exit_tr_above_dbm(&self) -> f64 {
        self.rss_threshold_dbm + self.hysteresis_db
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ServiceClass {
    VoiceCall,
    TextMessage,
    HighBandwidth,
}

/// Next mode given one received-power sample.
///
/// Samples inside `[threshold - h, threshold + h]` never change the mode.
pub fn evaluate_switch(rss_dbm: f64, cfg: &SwitchConfig, current: Mode) -> Result<Mode> {
    if rss_dbm.is_nan() {
        return Err(Error::domain("received signal strength is NaN"));
    }
    Ok(match current {
        Mode::ActiveMode if rss_dbm < cfg.enter_tr_below_dbm() => Mode::ThermalRadiationMode,
        Mode::ThermalRadiationMode if rss_dbm > cfg.exit_tr_above_dbm() => Mode::ActiveMode,
        unchanged => unchanged,
    })
}

pub fn uplink_enabled(mode: Mode) -> bool {
    mode == Mode::ActiveMode
}

/// TR mode carries only low-rate services.
pub fn service_admitted(mode: Mode, svc: ServiceClass) -> bool {
    match mode {
        Mode::ActiveMode => true,
        Mode::ThermalRadiationMode => matches!(svc, ServiceClass::VoiceCall | ServiceClass::TextMessage),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL_SERVICES: [ServiceClass; 3] = [
        ServiceClass::VoiceCall,
        ServiceClass::TextMessage,
        ServiceClass::HighBandwidth,
    ];

    fn cfg() -> SwitchConfig {
        SwitchConfig::new(-95.0, 3.0).unwrap()
    }

    #[test]
    fn switches_below_and_above_band() {
        let c = cfg();
        assert_eq!(
            evaluate_switch(-95.0 - 3.0 - 1.0, &c, Mode::ActiveMode).unwrap(),
            Mode::ThermalRadiationMode
        );
        assert_eq!(
            evaluate_switch(-95.0 + 3.0 + 1.0, &c, Mode::ThermalRadiationMode).unwrap(),
            Mode::ActiveMode
        );
    }

    #[test]
    fn threshold_is_dead_band() {
        let c = cfg();
        for m in [Mode::ActiveMode, Mode::ThermalRadiationMode] {
            assert_eq!(evaluate_switch(-95.0, &c, m).unwrap(), m);
            assert_eq!(evaluate_switch(-98.0, &c, m).unwrap(), m);
            assert_eq!(evaluate_switch(-92.0, &c, m).unwrap(), m);
        }
    }

    #[test]
    fn zero_hysteresis_is_literal_threshold_rule() {
        let c = SwitchConfig::new(-95.0, 0.0).unwrap();
        assert_eq!(evaluate_switch(-95.001, &c, Mode::ActiveMode).unwrap(), Mode::ThermalRadiationMode);
        assert_eq!(evaluate_switch(-94.999, &c, Mode::ThermalRadiationMode).unwrap(), Mode::ActiveMode);
    }

    #[test]
    fn nan_is_rejected() {
        assert!(evaluate_switch(f64::NAN, &cfg(), Mode::ActiveMode).is_err());
        assert!(SwitchConfig::new(-90.0, -1.0).is_err());
        assert!(SwitchConfig::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn gating() {
        assert!(uplink_enabled(Mode::ActiveMode));
        assert!(!uplink_enabled(Mode::ThermalRadiationMode));
        let m = evaluate_switch(-120.0, &cfg(), Mode::ActiveMode).unwrap();
        assert!(!uplink_enabled(m));

        assert!(!service_admitted(Mode::ThermalRadiationMode, ServiceClass::HighBandwidth));
        assert!(service_admitted(Mode::ThermalRadiationMode, ServiceClass::VoiceCall));
        assert!(service_admitted(Mode::ThermalRadiationMode, ServiceClass::TextMessage));
        assert!(ALL_SERVICES.iter().all(|&s| service_admitted(Mode::ActiveMode, s)));
    }

    proptest! {
        #[test]
        fn no_change_inside_dead_band(
            start_tr in any::<bool>(),
            offsets in prop::collection::vec(-3.0f64..=3.0, 1..200),
        ) {
            let c = cfg();
            let start = if start_tr { Mode::ThermalRadiationMode } else { Mode::ActiveMode };
            let mut mode = start;
            for off in offsets {
                mode = evaluate_switch(c.rss_threshold_dbm + off, &c, mode).unwrap();
                prop_assert_eq!(mode, start);
            }
        }

        #[test]
        fn changes_are_triggered_outside_band(trace in prop::collection::vec(-130.0f64..-60.0, 1..300)) {
            let c = cfg();
            let mut mode = Mode::ActiveMode;
            for rss in trace {
                let next = evaluate_switch(rss, &c, mode).unwrap();
                if next != mode {
                    prop_assert!(rss < c.enter_tr_below_dbm() || rss > c.exit_tr_above_dbm());
                }
                mode = next;
            }
        }

        #[test]
        fn monotone_traces(high in prop::collection::vec(0.001f64..40.0, 1..100), start_tr in any::<bool>()) {
            let c = cfg();
            let mut mode = Mode::ActiveMode;
            for h in &high {
                mode = evaluate_switch(c.exit_tr_above_dbm() + h, &c, mode).unwrap();
                prop_assert_eq!(mode, Mode::ActiveMode);
            }
            let mut mode = if start_tr { Mode::ThermalRadiationMode } else { Mode::ActiveMode };
            for h in &high {
                mode = evaluate_switch(c.enter_tr_below_dbm() - h, &c, mode).unwrap();
                prop_assert_eq!(mode, Mode::ThermalRadiationMode);
            }
        }
    }
}
