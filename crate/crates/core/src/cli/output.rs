//! CSV and JSON-lines emitters. Column orders are part of the interface.

use std::fmt::Write as _;

use serde_json::json;

use super::OutputFormat;
use crate::exposure::{ExposureRatioRow, ExposureReport};
use crate::frames::{self, RadioFrame};
use crate::rrc::{self, ReachabilityReport};
use crate::sim::{OutagePoint, ScenarioConfig, SimResult};

pub const RUN_COLUMNS: &str = "slot,device,tr_enabled,mode,rrc_state,slot_kind,rss_dbm,sinr_db,uplink_power_w";
pub const OUTAGE_COLUMNS: &str = "mean_snr_db,outage_am,outage_tr";
pub const EXPOSURE_TABLE_COLUMNS: &str = "label,standard,mode,freq_hz,e_field_v_per_m,e_ref_v_per_m,exposure_ratio";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "na".to_string(), |x| x.to_string())
}

fn push_json(out: &mut String, v: serde_json::Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

pub fn run(cfg: &ScenarioConfig, r: &SimResult, fmt: OutputFormat) -> String {
    let mut out = String::new();
    let er: Vec<(String, f64)> = cfg
        .standards
        .iter()
        .zip(&r.exposure.network_exposure_ratio)
        .map(|(s, v)| (format!("network_er_{}", s.key), *v))
        .collect();
    let summary: Vec<(String, String)> = [
        ("seed", cfg.seed.to_string()),
        ("n_users", cfg.n_users.to_string()),
        ("n_tr", cfg.n_tr.to_string()),
        ("n_slots", cfg.n_slots.to_string()),
        ("outage_am", opt(r.outage_am)),
        ("outage_tr", opt(r.outage_tr)),
        ("complexity", r.complexity.to_string()),
        ("mode_changes", r.mode_log.len().to_string()),
        ("rrc_events", r.rrc_log.len().to_string()),
        ("total_uplink_interference_w", r.total_uplink_interference_w().to_string()),
        (
            "network_total_power_density_w_m2",
            r.exposure.network_total_power_density_w_m2.to_string(),
        ),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .chain(er.iter().map(|(k, v)| (k.clone(), v.to_string())))
    .collect();

    match fmt {
        OutputFormat::Csv => {
            for (k, v) in &summary {
                let _ = writeln!(out, "# {k}={v}");
            }
            out.push_str(RUN_COLUMNS);
            out.push('\n');
            for slot in 0..cfg.n_slots {
                for t in &r.traces {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        slot,
                        t.id,
                        t.tr_enabled,
                        t.mode[slot].short_name(),
                        t.rrc_state[slot],
                        t.slot_kind[slot].code(),
                        t.rss_dbm[slot],
                        t.sinr_db[slot],
                        t.uplink_power_w[slot],
                    );
                }
            }
        }
        OutputFormat::JsonLines => {
            let mut s = serde_json::Map::new();
            s.insert("record".into(), json!("summary"));
            s.insert("seed".into(), json!(cfg.seed));
            s.insert("n_users".into(), json!(cfg.n_users));
            s.insert("n_tr".into(), json!(cfg.n_tr));
            s.insert("n_slots".into(), json!(cfg.n_slots));
            s.insert("outage_am".into(), json!(r.outage_am));
            s.insert("outage_tr".into(), json!(r.outage_tr));
            s.insert("complexity".into(), json!(r.complexity));
            s.insert("total_uplink_interference_w".into(), json!(r.total_uplink_interference_w()));
            s.insert("exposure".into(), json!(r.exposure));
            push_json(&mut out, serde_json::Value::Object(s));
            for slot in 0..cfg.n_slots {
                for t in &r.traces {
                    push_json(
                        &mut out,
                        json!({
                            "record": "slot",
                            "slot": slot,
                            "device": t.id,
                            "tr_enabled": t.tr_enabled,
                            "mode": t.mode[slot].short_name(),
                            "rrc_state": t.rrc_state[slot].to_string(),
                            "slot_kind": t.slot_kind[slot].code().to_string(),
                            "rss_dbm": t.rss_dbm[slot],
                            "sinr_db": t.sinr_db[slot],
                            "uplink_power_w": t.uplink_power_w[slot],
                        }),
                    );
                }
            }
            for m in &r.mode_log {
                push_json(
                    &mut out,
                    json!({"record": "mode_change", "slot": m.slot, "device": m.device, "rss_dbm": m.rss_dbm,
                           "from": m.from.short_name(), "to": m.to.short_name()}),
                );
            }
            for e in &r.rrc_log {
                push_json(
                    &mut out,
                    json!({"record": "rrc_event", "slot": e.slot, "device": e.device, "event": e.event.to_string(),
                           "from": e.from.to_string(), "to": e.to.to_string()}),
                );
            }
        }
    }
    out
}

pub fn outage(curve: &[OutagePoint], fmt: OutputFormat) -> String {
    let mut out = String::new();
    match fmt {
        OutputFormat::Csv => {
            out.push_str(OUTAGE_COLUMNS);
            out.push('\n');
            for p in curve {
                let _ = writeln!(out, "{},{},{}", p.mean_snr_db, p.outage_am, p.outage_tr);
            }
        }
        OutputFormat::JsonLines => {
            for p in curve {
                push_json(&mut out, json!(p));
            }
        }
    }
    out
}

pub fn frames(built: &[RadioFrame], fmt: OutputFormat) -> String {
    let mut out = String::new();
    for f in built {
        let tr = if f.tr_active { "on" } else { "off" };
        match fmt {
            OutputFormat::Csv => {
                let _ = writeln!(out, "# {} mu={} tr={}", f.duplex.label(), f.numerology.mu, tr);
                out.push_str(&frames::dump(f));
            }
            OutputFormat::JsonLines => {
                let subframes: Vec<String> = frames::dump(f).lines().map(str::to_string).collect();
                push_json(
                    &mut out,
                    json!({"duplex": f.duplex.label(), "mu": f.numerology.mu, "tr_active": f.tr_active,
                           "subframes": subframes}),
                );
            }
        }
    }
    out
}

pub fn rrc(report: &ReachabilityReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Csv => report.render(),
        OutputFormat::JsonLines => {
            let mut out = String::new();
            for e in &report.table {
                push_json(
                    &mut out,
                    json!({"record": "transition", "from": e.from.to_string(), "event": e.event.to_string(),
                           "to": e.to.to_string(), "uplink_grant": rrc::uplink_grant_allowed(e.to)}),
                );
            }
            for (state, path) in &report.paths_from_idle {
                let p: Vec<String> = path.iter().map(ToString::to_string).collect();
                push_json(&mut out, json!({"record": "reachable", "state": state.to_string(), "path": p}));
            }
            let names = |v: &[rrc::RrcEvent]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            push_json(
                &mut out,
                json!({"record": "checks", "entries": report.table.len(),
                       "all_reachable_from_idle": report.all_reachable_from_idle(),
                       "ee_grant_safe": report.ee_grant_safe,
                       "ee_single_step_grant": names(&report.ee_single_step_grant_events),
                       "idle_to_ee_single_step": names(&report.idle_to_ee_single_step)}),
            );
            out
        }
    }
}

pub fn exposure_table(rows: &[ExposureRatioRow], fmt: OutputFormat) -> String {
    let mut out = String::new();
    match fmt {
        OutputFormat::Csv => {
            out.push_str(EXPOSURE_TABLE_COLUMNS);
            out.push('\n');
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.label,
                    r.standard,
                    r.mode.short_name(),
                    r.freq_hz,
                    r.e_field_v_per_m,
                    r.e_ref_v_per_m,
                    r.exposure_ratio
                );
            }
        }
        OutputFormat::JsonLines => {
            for r in rows {
                push_json(
                    &mut out,
                    json!({"label": r.label, "standard": r.standard, "mode": r.mode.short_name(),
                           "freq_hz": r.freq_hz, "e_field_v_per_m": r.e_field_v_per_m,
                           "e_ref_v_per_m": r.e_ref_v_per_m, "exposure_ratio": r.exposure_ratio}),
                );
            }
        }
    }
    out
}

pub fn exposure_report(cfg: &ScenarioConfig, report: &ExposureReport, fmt: OutputFormat) -> String {
    let mut out = String::new();
    match fmt {
        OutputFormat::Csv => {
            out.push_str("device_id,mode,power_density_w_m2,e_field_v_per_m");
            for s in &cfg.standards {
                let _ = write!(out, ",er_{}", s.key);
            }
            out.push('\n');
            for d in &report.per_device {
                let _ = write!(
                    out,
                    "{},{},{},{}",
                    d.id,
                    d.mode.short_name(),
                    d.power_density_w_m2,
                    d.e_field_v_per_m
                );
                for er in &d.exposure_ratio {
                    let _ = write!(out, ",{er}");
                }
                out.push('\n');
            }
            let _ = write!(
                out,
                "total,,{},{}",
                report.network_total_power_density_w_m2, report.network_e_field_v_per_m
            );
            for er in &report.network_exposure_ratio {
                let _ = write!(out, ",{er}");
            }
            out.push('\n');
        }
        OutputFormat::JsonLines => {
            for d in &report.per_device {
                push_json(&mut out, json!({"record": "device", "device": d}));
            }
            push_json(
                &mut out,
                json!({"record": "total", "standards": report.standards,
                       "network_total_power_density_w_m2": report.network_total_power_density_w_m2,
                       "network_e_field_v_per_m": report.network_e_field_v_per_m,
                       "network_exposure_ratio": report.network_exposure_ratio}),
            );
        }
    }
    out
}
