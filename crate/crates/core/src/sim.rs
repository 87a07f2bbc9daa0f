//! Slot-stepped scenario engine.
//!
//! Devices `0..n_users - n_tr` are conventional (TR disabled, always AM);
//! the remaining `n_tr` devices have TR enabled and switch on their own
//! downlink received power. Each device owns a ChaCha stream derived from the
//! scenario seed, so results depend only on the config.
//!
//! Per slot and device, in id order:
//! 1. redraw downlink fading and compute the received power,
//! 2. run the switch controller (TR-enabled devices only) and feed the
//!    resulting events to the RRC machine,
//! 3. draw traffic, pick the slot kind from the device's frame context and
//!    derive the radiated uplink power.
//!
//! The downlink SINR of every device is then computed against the uplink
//! transmissions of all other devices (full-duplex UL-to-DL interference).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channel::{self, db_to_lin, lin_to_db, w_to_dbm};
use crate::error::{Error, FieldError, Result};
use crate::exposure::{self, ExposureOptions, ExposureReport, ExposureStandard};
use crate::frames::{self, Numerology, RadioFrame, SlotKind, SubframeDirection};
use crate::rrc::{self, RrcEvent, RrcState};
use crate::trmode::{self, Mode, SwitchConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UserEquipment {
    pub id: usize,
    /// Position relative to the base station.
    pub position_m: (f64, f64),
    pub distance_m: f64,
    /// Nominal uplink data transmit power.
    pub tx_power_w: f64,
    pub mode: Mode,
    pub rrc_state: RrcState,
    pub freq_hz: f64,
    /// Whether the device runs the TR switch controller at all.
    pub tr_enabled: bool,
}

impl UserEquipment {
    /// Uplink power the device radiates: zero in TR mode.
    pub fn uplink_tx_power_w(&self) -> f64 {
        if trmode::uplink_enabled(self.mode) {
            self.tx_power_w
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    /// Uniform over the annulus `[min_distance_m, cell_radius_m]`; the TR
    /// cohort uses `[tr_region_inner_m, cell_radius_m]` when that is set.
    UniformDisk,
    /// Every device at the same distance, evenly spaced in angle.
    Fixed { distance_m: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum DuplexConfig {
    Fdd,
    /// Pattern with exactly one [`SubframeDirection::Superframe`] entry.
    Tdd { pattern: Vec<SubframeDirection> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_users: usize,
    pub n_tr: usize,
    pub n_slots: usize,
    pub seed: u64,
    pub cell_radius_m: f64,
    pub min_distance_m: f64,
    pub tr_region_inner_m: Option<f64>,
    pub placement: Placement,
    pub ue_tx_power_w: f64,
    pub bs_tx_power_w: f64,
    /// Always-on signalling power of an AM device without uplink data, as a
    /// fraction of `ue_tx_power_w`.
    pub always_on_fraction: f64,
    /// Per-slot probability of uplink data demand.
    pub ul_activity: f64,
    pub dl_activity: f64,
    pub ue_antenna_gain_dbi: f64,
    pub bs_antenna_gain_dbi: f64,
    pub observer_distance_m: f64,
    pub complexity_unit_cost: f64,
    pub freq_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub snr_threshold_db: f64,
    /// Mean interference-to-noise ratio of one uplink interferer, used by
    /// [`outage_curve`].
    pub interferer_inr_db: f64,
    /// Floor on device-to-device distance for interference coupling.
    pub min_separation_m: f64,
    pub mu: u8,
    pub duplex: DuplexConfig,
    pub switching: SwitchConfig,
    pub standards: Vec<ExposureStandard>,
}

impl ScenarioConfig {
    /// A 50-user FDD cell at 3.5 GHz with 20 TR-enabled devices.
    pub fn baseline() -> Self {
        ScenarioConfig {
            n_users: 50,
            n_tr: 20,
            n_slots: 200,
            seed: 1,
            cell_radius_m: 500.0,
            min_distance_m: 10.0,
            tr_region_inner_m: None,
            placement: Placement::UniformDisk,
            ue_tx_power_w: 0.2,
            bs_tx_power_w: 20.0,
            always_on_fraction: 0.1,
            ul_activity: 0.5,
            dl_activity: 0.5,
            ue_antenna_gain_dbi: 0.0,
            bs_antenna_gain_dbi: 0.0,
            observer_distance_m: 1.0,
            complexity_unit_cost: 1.0,
            freq_hz: 3.5e9,
            bandwidth_hz: 20e6,
            noise_figure_db: 7.0,
            snr_threshold_db: 0.0,
            interferer_inr_db: -10.0,
            min_separation_m: 1.0,
            mu: 0,
            duplex: DuplexConfig::Fdd,
            switching: SwitchConfig {
                rss_threshold_dbm: -70.0,
                hysteresis_db: SwitchConfig::DEFAULT_HYSTERESIS_DB,
            },
            standards: Vec::new(),
        }
    }

    pub fn n_conventional(&self) -> usize {
        self.n_users - self.n_tr.min(self.n_users)
    }

    /// Field-level checks; every problem is reported, not just the first.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let mut check = |ok: bool, key: &str, msg: String| {
            if !ok {
                errs.push(FieldError::new(None, key, msg));
            }
        };
        let pos = |v: f64| v > 0.0 && v.is_finite();
        let prob = |v: f64| (0.0..=1.0).contains(&v);
        check(self.n_users > 0, "scenario.n_users", "must be > 0".into());
        check(
            self.n_tr <= self.n_users,
            "scenario.n_tr",
            format!("scenario.n_tr ({}) must not exceed scenario.n_users ({})", self.n_tr, self.n_users),
        );
        check(self.n_slots > 0, "scenario.n_slots", "must be > 0".into());
        check(pos(self.cell_radius_m), "scenario.cell_radius_m", format!("must be > 0 (got {})", self.cell_radius_m));
        check(
            pos(self.min_distance_m) && self.min_distance_m < self.cell_radius_m,
            "scenario.min_distance_m",
            format!("must be in (0, cell_radius_m) (got {})", self.min_distance_m),
        );
        if let Some(inner) = self.tr_region_inner_m {
            check(
                inner >= self.min_distance_m && inner < self.cell_radius_m,
                "scenario.tr_region_inner_m",
                format!("must be in [min_distance_m, cell_radius_m) (got {inner})"),
            );
        }
        if let Placement::Fixed { distance_m } = self.placement {
            check(pos(distance_m), "scenario.fixed_distance_m", format!("must be > 0 (got {distance_m})"));
        }
        check(pos(self.ue_tx_power_w), "scenario.ue_tx_power_w", format!("must be > 0 (got {})", self.ue_tx_power_w));
        check(pos(self.bs_tx_power_w), "scenario.bs_tx_power_w", format!("must be > 0 (got {})", self.bs_tx_power_w));
        check(prob(self.always_on_fraction), "scenario.always_on_fraction", "must be in [0, 1]".into());
        check(prob(self.ul_activity), "scenario.ul_activity", "must be in [0, 1]".into());
        check(prob(self.dl_activity), "scenario.dl_activity", "must be in [0, 1]".into());
        check(self.ue_antenna_gain_dbi.is_finite(), "scenario.ue_antenna_gain_dbi", "must be finite".into());
        check(self.bs_antenna_gain_dbi.is_finite(), "scenario.bs_antenna_gain_dbi", "must be finite".into());
        check(pos(self.observer_distance_m), "scenario.observer_distance_m", "must be > 0".into());
        check(
            self.complexity_unit_cost >= 0.0 && self.complexity_unit_cost.is_finite(),
            "scenario.complexity_unit_cost",
            "must be >= 0".into(),
        );
        check(pos(self.freq_hz), "channel.freq_hz", format!("must be > 0 (got {})", self.freq_hz));
        check(pos(self.bandwidth_hz), "channel.bandwidth_hz", "must be > 0".into());
        check(self.noise_figure_db.is_finite(), "channel.noise_figure_db", "must be finite".into());
        check(self.snr_threshold_db.is_finite(), "channel.snr_threshold_db", "must be finite".into());
        check(self.interferer_inr_db.is_finite(), "channel.interferer_inr_db", "must be finite".into());
        check(pos(self.min_separation_m), "channel.min_separation_m", "must be > 0".into());
        check(self.mu <= frames::MAX_MU, "frame.mu", format!("must be in [0, {}] (got {})", frames::MAX_MU, self.mu));
        if let DuplexConfig::Tdd { pattern } = &self.duplex {
            let supers = pattern.iter().filter(|d| **d == SubframeDirection::Superframe).count();
            check(
                pattern.len() == frames::SUBFRAMES_PER_FRAME && supers == 1,
                "frame.tdd_pattern",
                "must have 10 subframes with exactly one superframe".into(),
            );
        }
        check(
            self.switching.rss_threshold_dbm.is_finite(),
            "switching.rss_threshold_dbm",
            "must be finite".into(),
        );
        check(
            self.switching.hysteresis_db >= 0.0 && self.switching.hysteresis_db.is_finite(),
            "switching.hysteresis_db",
            "must be >= 0".into(),
        );
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errs))
        }
    }

    pub fn noise_w(&self) -> Result<f64> {
        channel::noise_power_w(self.bandwidth_hz, self.noise_figure_db)
    }

    pub fn exposure_options(&self) -> ExposureOptions {
        ExposureOptions {
            observer_distance_m: self.observer_distance_m,
            device_antenna_gain_lin: db_to_lin(self.ue_antenna_gain_dbi),
            downlink: None,
        }
    }
}

/// The frame a device follows in AM and in TR mode.
#[derive(Debug, Clone)]
pub struct FramePlan {
    pub active: RadioFrame,
    pub tr: RadioFrame,
}

impl FramePlan {
    /// For FDD this is the uplink frame of the pair; the downlink frame does
    /// not depend on the mode.
    pub fn new(num: Numerology, duplex: &DuplexConfig) -> Result<Self> {
        Ok(match duplex {
            DuplexConfig::Fdd => FramePlan {
                active: frames::build_fdd_pair(num, false).1,
                tr: frames::build_fdd_pair(num, true).1,
            },
            DuplexConfig::Tdd { pattern } => FramePlan {
                active: frames::build_tdd_frame(num, pattern, false)?,
                tr: frames::build_tdd_frame(num, pattern, true)?,
            },
        })
    }

    pub fn frame(&self, mode: Mode) -> &RadioFrame {
        match mode {
            Mode::ActiveMode => &self.active,
            Mode::ThermalRadiationMode => &self.tr,
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Initial device population: positions from stream 0, cohorts by id.
pub fn place_devices(cfg: &ScenarioConfig) -> Vec<UserEquipment> {
    let mut rng = stream_rng(cfg.seed, 0);
    let n_conv = cfg.n_conventional();
    (0..cfg.n_users)
        .map(|id| {
            let tr_enabled = id >= n_conv;
            let (r, theta) = match cfg.placement {
                Placement::Fixed { distance_m } => (distance_m, 2.0 * PI * id as f64 / cfg.n_users as f64),
                Placement::UniformDisk => {
                    let inner = if tr_enabled {
                        cfg.tr_region_inner_m.unwrap_or(cfg.min_distance_m)
                    } else {
                        cfg.min_distance_m
                    };
                    let (a, b) = (inner * inner, cfg.cell_radius_m * cfg.cell_radius_m);
                    let u: f64 = rng.random();
                    let v: f64 = rng.random();
                    ((a + u * (b - a)).sqrt(), 2.0 * PI * v)
                }
            };
            UserEquipment {
                id,
                position_m: (r * theta.cos(), r * theta.sin()),
                distance_m: r,
                tx_power_w: cfg.ue_tx_power_w,
                mode: Mode::ActiveMode,
                rrc_state: RrcState::Idle,
                freq_hz: cfg.freq_hz,
                tr_enabled,
            }
        })
        .collect()
}

/// Placed devices with the TR cohort already in TR mode.
pub fn cohort_snapshot(cfg: &ScenarioConfig) -> Vec<UserEquipment> {
    let mut devices = place_devices(cfg);
    for d in devices.iter_mut().filter(|d| d.tr_enabled) {
        d.mode = Mode::ThermalRadiationMode;
        d.rrc_state = RrcState::EnergyEfficient;
    }
    devices
}

/// Exposure of the cohort snapshot against the configured standards.
pub fn scenario_exposure(cfg: &ScenarioConfig) -> Result<ExposureReport> {
    cfg.validate()?;
    exposure::network_exposure(&cohort_snapshot(cfg), &cfg.standards, &cfg.exposure_options())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeChange {
    pub slot: usize,
    pub device: usize,
    pub rss_dbm: f64,
    pub from: Mode,
    pub to: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RrcLogEntry {
    pub slot: usize,
    pub device: usize,
    pub event: RrcEvent,
    pub from: RrcState,
    pub to: RrcState,
}

/// Per-slot history of one device. Every vector has `n_slots` entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceTrace {
    pub id: usize,
    pub tr_enabled: bool,
    pub rss_dbm: Vec<f64>,
    pub sinr_db: Vec<f64>,
    pub mode: Vec<Mode>,
    pub rrc_state: Vec<RrcState>,
    pub slot_kind: Vec<SlotKind>,
    pub ul_demand: Vec<bool>,
    pub dl_demand: Vec<bool>,
    pub uplink_power_w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub devices: Vec<UserEquipment>,
    pub traces: Vec<DeviceTrace>,
    /// Large-scale uplink power arriving at the base station, per slot.
    pub uplink_interference_w: Vec<f64>,
    pub n_uplink_active: Vec<usize>,
    /// Fraction of AM-mode device-slots with SINR below the outage threshold.
    pub outage_am: Option<f64>,
    pub outage_tr: Option<f64>,
    pub exposure: ExposureReport,
    pub complexity: f64,
    pub mode_log: Vec<ModeChange>,
    pub rrc_log: Vec<RrcLogEntry>,
}

impl SimResult {
    pub fn total_uplink_interference_w(&self) -> f64 {
        self.uplink_interference_w.iter().sum()
    }
}

struct DeviceState {
    ue: UserEquipment,
    rng: ChaCha8Rng,
    trace: DeviceTrace,
    /// Fading of the interference links from every other device, this slot.
    incoming_fading: Vec<f64>,
    signal_w: f64,
}

fn apply_event(st: &mut DeviceState, slot: usize, event: RrcEvent, log: &mut Vec<RrcLogEntry>) {
    let from = st.ue.rrc_state;
    let to = rrc::transition(from, event);
    if to != from {
        log.push(RrcLogEntry {
            slot,
            device: st.ue.id,
            event,
            from,
            to,
        });
        st.ue.rrc_state = to;
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<SimResult> {
    cfg.validate()?;
    let num = frames::make_numerology(cfg.mu)?;
    let plan = FramePlan::new(num, &cfg.duplex)?;
    let noise_w = cfg.noise_w()?;
    let g_ue = db_to_lin(cfg.ue_antenna_gain_dbi);
    let g_bs = db_to_lin(cfg.bs_antenna_gain_dbi);
    let n = cfg.n_users;
    let n_slots = cfg.n_slots;
    let spf = num.slots_per_frame();

    let devices = place_devices(cfg);
    let bs_gain: Vec<f64> = devices
        .iter()
        .map(|d| channel::path_gain(d.distance_m, cfg.freq_hz))
        .collect::<Result<_>>()?;
    let mut coupling = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (a, b) = (devices[i].position_m, devices[j].position_m);
                let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt().max(cfg.min_separation_m);
                coupling[i * n + j] = g_ue * g_ue * channel::path_gain(d, cfg.freq_hz)?;
            }
        }
    }

    let mut states: Vec<DeviceState> = devices
        .into_iter()
        .map(|ue| {
            let rng = stream_rng(cfg.seed, ue.id as u64 + 1);
            let trace = DeviceTrace {
                id: ue.id,
                tr_enabled: ue.tr_enabled,
                rss_dbm: Vec::with_capacity(n_slots),
                sinr_db: Vec::with_capacity(n_slots),
                mode: Vec::with_capacity(n_slots),
                rrc_state: Vec::with_capacity(n_slots),
                slot_kind: Vec::with_capacity(n_slots),
                ul_demand: Vec::with_capacity(n_slots),
                dl_demand: Vec::with_capacity(n_slots),
                uplink_power_w: Vec::with_capacity(n_slots),
            };
            DeviceState {
                ue,
                rng,
                trace,
                incoming_fading: vec![0.0; n],
                signal_w: 0.0,
            }
        })
        .collect();

    let mut mode_log = Vec::new();
    let mut rrc_log = Vec::new();
    let mut uplink_interference_w = Vec::with_capacity(n_slots);
    let mut n_uplink_active = Vec::with_capacity(n_slots);
    let mut ul_power = vec![0.0; n];
    let mut interferers = Vec::with_capacity(n);

    for slot in 0..n_slots {
        let pos = slot % spf;
        for (i, st) in states.iter_mut().enumerate() {
            let g_dl = channel::draw_fading_gain(&mut st.rng);
            for j in 0..n {
                st.incoming_fading[j] = if j == i { 0.0 } else { channel::draw_fading_gain(&mut st.rng) };
            }
            st.signal_w = cfg.bs_tx_power_w * g_bs * g_ue * bs_gain[i] * g_dl;
            let rss_dbm = w_to_dbm(st.signal_w);

            if slot == 0 {
                apply_event(st, slot, RrcEvent::ConnectionRequest, &mut rrc_log);
            }
            if st.ue.tr_enabled {
                let next = trmode::evaluate_switch(rss_dbm, &cfg.switching, st.ue.mode)?;
                if next != st.ue.mode {
                    mode_log.push(ModeChange {
                        slot,
                        device: st.ue.id,
                        rss_dbm,
                        from: st.ue.mode,
                        to: next,
                    });
                    st.ue.mode = next;
                    let event = match next {
                        Mode::ThermalRadiationMode => RrcEvent::TrModeEnter,
                        Mode::ActiveMode => RrcEvent::TrModeExit,
                    };
                    apply_event(st, slot, event, &mut rrc_log);
                }
            }

            let ul_demand = st.rng.random_bool(cfg.ul_activity);
            let dl_demand = st.rng.random_bool(cfg.dl_activity);
            if dl_demand {
                apply_event(st, slot, RrcEvent::DownlinkDataArrival, &mut rrc_log);
            }
            // TR devices hold uplink data; they generate no uplink traffic.
            let ul_allowed_by_mode = trmode::uplink_enabled(st.ue.mode);
            if ul_demand && ul_allowed_by_mode {
                apply_event(st, slot, RrcEvent::UplinkDataPending, &mut rrc_log);
            }

            let kind = plan.frame(st.ue.mode).slot_at(pos);
            let transmits = ul_allowed_by_mode && rrc::uplink_grant_allowed(st.ue.rrc_state) && kind == SlotKind::Uplink;
            ul_power[i] = match (transmits, ul_demand) {
                (false, _) => 0.0,
                (true, true) => st.ue.tx_power_w,
                (true, false) => st.ue.tx_power_w * cfg.always_on_fraction,
            };

            let t = &mut st.trace;
            t.rss_dbm.push(rss_dbm);
            t.mode.push(st.ue.mode);
            t.rrc_state.push(st.ue.rrc_state);
            t.slot_kind.push(kind);
            t.ul_demand.push(ul_demand);
            t.dl_demand.push(dl_demand);
            t.uplink_power_w.push(ul_power[i]);
        }

        let mut at_bs = 0.0;
        let mut active = 0;
        for (j, &p) in ul_power.iter().enumerate() {
            if p > 0.0 {
                at_bs += p * g_ue * g_bs * bs_gain[j];
                active += 1;
            }
        }
        uplink_interference_w.push(at_bs);
        n_uplink_active.push(active);

        for (i, st) in states.iter_mut().enumerate() {
            interferers.clear();
            for (j, &p) in ul_power.iter().enumerate() {
                if j != i && p > 0.0 {
                    interferers.push(p * coupling[i * n + j] * st.incoming_fading[j]);
                }
            }
            let s = channel::sinr(st.signal_w, &interferers, noise_w)?;
            st.trace.sinr_db.push(s);
        }
    }

    let mut counts = [(0usize, 0usize); 2];
    for st in &states {
        for (m, s) in st.trace.mode.iter().zip(&st.trace.sinr_db) {
            let c = &mut counts[(*m == Mode::ThermalRadiationMode) as usize];
            c.0 += 1;
            if *s < cfg.snr_threshold_db {
                c.1 += 1;
            }
        }
    }
    let frac = |(total, out): (usize, usize)| (total > 0).then(|| out as f64 / total as f64);

    let (devices, traces): (Vec<_>, Vec<_>) = states.into_iter().map(|s| (s.ue, s.trace)).unzip();
    let exposure = exposure::network_exposure(&devices, &cfg.standards, &cfg.exposure_options())?;
    let active_final = devices
        .iter()
        .filter(|d| trmode::uplink_enabled(d.mode) && rrc::uplink_grant_allowed(d.rrc_state))
        .count();

    Ok(SimResult {
        devices,
        traces,
        uplink_interference_w,
        n_uplink_active,
        outage_am: frac(counts[0]),
        outage_tr: frac(counts[1]),
        exposure,
        complexity: exposure::complexity_metric_with_cost(active_final, cfg.complexity_unit_cost),
        mode_log,
        rrc_log,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutagePoint {
    pub mean_snr_db: f64,
    pub outage_am: f64,
    pub outage_tr: f64,
}

/// Uplink interferers seen by a tagged device: all other devices in the
/// conventional network, minus the TR devices in the TR-enabled one.
pub fn outage_interferer_counts(cfg: &ScenarioConfig) -> (usize, usize) {
    let others = cfg.n_users.saturating_sub(1);
    (others, others - cfg.n_tr.min(others))
}

/// Rayleigh outage versus mean SNR for the conventional (AM) network and the
/// network with `n_tr` devices in TR mode, each interferer at
/// `interferer_inr_db` mean INR.
pub fn outage_curve(cfg: &ScenarioConfig, mean_snr_points_db: &[f64]) -> Result<Vec<OutagePoint>> {
    if mean_snr_points_db.is_empty() {
        return Err(Error::domain("outage curve needs at least one mean SNR point"));
    }
    cfg.validate()?;
    let (n_am, n_tr) = outage_interferer_counts(cfg);
    let inr = db_to_lin(cfg.interferer_inr_db);
    let threshold = db_to_lin(cfg.snr_threshold_db);
    mean_snr_points_db
        .iter()
        .map(|&snr_db| {
            if !snr_db.is_finite() {
                return Err(Error::domain(format!("mean SNR point must be finite (got {snr_db})")));
            }
            let mean = db_to_lin(snr_db);
            Ok(OutagePoint {
                mean_snr_db: snr_db,
                outage_am: channel::outage_with_interferers(threshold, mean, &vec![inr; n_am])?,
                outage_tr: channel::outage_with_interferers(threshold, mean, &vec![inr; n_tr])?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationDensity {
    pub label: String,
    pub density_am: f64,
    pub density_tr: f64,
}

/// Network power density per generation with every device in AM, and with
/// the TR cohort of each config in TR mode.
pub fn generation_power_density_series(configs: &[(String, ScenarioConfig)]) -> Result<Vec<GenerationDensity>> {
    configs
        .iter()
        .map(|(label, cfg)| {
            cfg.validate()?;
            let all_am = place_devices(cfg);
            let with_tr = cohort_snapshot(cfg);
            let o = cfg.exposure_options();
            Ok(GenerationDensity {
                label: label.clone(),
                density_am: exposure::network_exposure(&all_am, &[], &o)?.network_total_power_density_w_m2,
                density_tr: exposure::network_exposure(&with_tr, &[], &o)?.network_total_power_density_w_m2,
            })
        })
        .collect()
}

/// Mean of the linear SINR over slots, in dB. Handy for summaries.
pub fn mean_sinr_db(trace: &DeviceTrace) -> f64 {
    let n = trace.sinr_db.len().max(1) as f64;
    lin_to_db(trace.sinr_db.iter().map(|s| db_to_lin(*s)).sum::<f64>() / n)
}
