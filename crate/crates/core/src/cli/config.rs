//! Sectioned key-value config format.
//!
//! ```text
//! # comment
//! [scenario]
//! n_users = 50
//! [standards.icnirp]
//! name = ICNIRP
//! band = 824e6 849e6 39.47 | provenance note
//! ```
//!
//! Keys are unique within a section except `band` (standards) and `sample`
//! (field surveys), which repeat.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, FieldError, Result};
use crate::exposure::{Band, ExposureStandard, FieldSample};
use crate::frames::{self, DEFAULT_SUPERFRAME_INDEX};
use crate::sim::{DuplexConfig, Placement, ScenarioConfig};
use crate::trmode::{Mode, SwitchConfig};

#[derive(Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    used: bool,
}

#[derive(Debug)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn split_sections(text: &str, errs: &mut Vec<FieldError>) -> Vec<Section> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            match rest.strip_suffix(']') {
                Some(name) if !name.trim().is_empty() => {
                    let name = name.trim().to_string();
                    if sections.iter().any(|s| s.name == name) {
                        errs.push(FieldError::new(Some(line), name.clone(), "duplicate section"));
                    }
                    sections.push(Section {
                        name,
                        line,
                        entries: Vec::new(),
                    });
                }
                _ => errs.push(FieldError::new(Some(line), trimmed, "malformed section header")),
            }
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            errs.push(FieldError::new(Some(line), trimmed, "expected `key = value`"));
            continue;
        };
        let key = key.trim().to_string();
        match sections.last_mut() {
            Some(sec) => sec.entries.push(Entry {
                key,
                value: value.trim().to_string(),
                line,
                used: false,
            }),
            None => errs.push(FieldError::new(Some(line), key, "key outside of any section")),
        }
    }
    sections
}

/// Typed access to the parsed sections with error collection.
struct Reader {
    sections: Vec<Section>,
    errs: Vec<FieldError>,
}

impl Reader {
    fn new(text: &str) -> Self {
        let mut errs = Vec::new();
        let sections = split_sections(text, &mut errs);
        Reader { sections, errs }
    }

    fn raw(&mut self, section: &str, key: &str) -> Option<(String, usize)> {
        let sec = self.sections.iter_mut().find(|s| s.name == section)?;
        let mut found: Option<(String, usize)> = None;
        for e in sec.entries.iter_mut().filter(|e| e.key == key) {
            e.used = true;
            if found.is_some() {
                self.errs
                    .push(FieldError::new(Some(e.line), format!("{section}.{key}"), "duplicate key"));
            } else {
                found = Some((e.value.clone(), e.line));
            }
        }
        found
    }

    fn all(&mut self, section: &str, key: &str) -> Vec<(String, usize)> {
        self.sections
            .iter_mut()
            .filter(|s| s.name == section)
            .flat_map(|s| s.entries.iter_mut())
            .filter(|e| e.key == key)
            .map(|e| {
                e.used = true;
                (e.value.clone(), e.line)
            })
            .collect()
    }

    fn parse<T: FromStr>(&mut self, section: &str, key: &str) -> Option<T> {
        let (value, line) = self.raw(section, key)?;
        match value.parse::<T>() {
            Ok(v) => Some(v),
            Err(_) => {
                self.errs.push(FieldError::new(
                    Some(line),
                    format!("{section}.{key}"),
                    format!("cannot parse `{value}` as {}", type_label::<T>()),
                ));
                None
            }
        }
    }

    fn required<T: FromStr>(&mut self, section: &str, key: &str) -> Option<T> {
        if self.raw_present(section, key) {
            self.parse(section, key)
        } else {
            self.errs
                .push(FieldError::new(None, format!("{section}.{key}"), "missing required key"));
            None
        }
    }

    fn optional<T: FromStr>(&mut self, section: &str, key: &str, default: T) -> T {
        if self.raw_present(section, key) {
            self.parse(section, key).unwrap_or(default)
        } else {
            default
        }
    }

    fn raw_present(&self, section: &str, key: &str) -> bool {
        self.sections
            .iter()
            .any(|s| s.name == section && s.entries.iter().any(|e| e.key == key))
    }

    fn line_of(&self, qualified: &str) -> Option<usize> {
        let (section, key) = qualified.rsplit_once('.')?;
        self.sections
            .iter()
            .filter(|s| s.name == section)
            .flat_map(|s| s.entries.iter())
            .find(|e| e.key == key)
            .map(|e| e.line)
    }

    fn error(&mut self, line: Option<usize>, key: impl Into<String>, msg: impl Into<String>) {
        self.errs.push(FieldError::new(line, key, msg));
    }

    /// Reports unknown sections and every key nobody asked for.
    fn finish(&mut self, allowed_sections: impl Fn(&str) -> bool) {
        for sec in &self.sections {
            if !allowed_sections(&sec.name) {
                self.errs
                    .push(FieldError::new(Some(sec.line), sec.name.clone(), "unknown section"));
                continue;
            }
            for e in sec.entries.iter().filter(|e| !e.used) {
                self.errs
                    .push(FieldError::new(Some(e.line), format!("{}.{}", sec.name, e.key), "unknown key"));
            }
        }
    }
}

fn type_label<T>() -> &'static str {
    let name = std::any::type_name::<T>();
    match name {
        "f64" => "a number",
        "u64" | "usize" | "u8" => "a non-negative integer",
        _ => "a value",
    }
}

fn parse_standards(r: &mut Reader) -> Vec<ExposureStandard> {
    let keys: Vec<(String, usize)> = r
        .sections
        .iter()
        .filter_map(|s| s.name.strip_prefix("standards.").map(|k| (k.to_string(), s.line)))
        .collect();
    let mut out = Vec::new();
    for (key, sec_line) in keys {
        let section = format!("standards.{key}");
        let name = r.optional(&section, "name", key.to_uppercase());
        let mut bands = Vec::new();
        for (value, line) in r.all(&section, "band") {
            let (nums, note) = match value.split_once('|') {
                Some((a, b)) => (a, b.trim().to_string()),
                None => (value.as_str(), String::new()),
            };
            let parsed: Vec<f64> = nums.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            if parsed.len() != 3 || nums.split_whitespace().count() != 3 {
                r.error(
                    Some(line),
                    format!("{section}.band"),
                    "expected `<f_low_hz> <f_high_hz> <e_ref_v_per_m> [| provenance]`",
                );
                continue;
            }
            bands.push(Band {
                freq_low_hz: parsed[0],
                freq_high_hz: parsed[1],
                e_ref_v_per_m: parsed[2],
                provenance: note,
            });
        }
        match ExposureStandard::new(key.clone(), name, bands) {
            Ok(s) => out.push(s),
            Err(e) => r.error(Some(sec_line), section, e.to_string()),
        }
    }
    out
}

/// Parses a scenario config, returning every field-level problem found.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut r = Reader::new(text);
    let d = ScenarioConfig::baseline();

    let n_users = r.required::<usize>("scenario", "n_users");
    let n_tr = r.required::<usize>("scenario", "n_tr");
    let n_slots = r.required::<usize>("scenario", "n_slots");
    let seed = r.required::<u64>("scenario", "seed");
    let cell_radius_m = r.required::<f64>("scenario", "cell_radius_m");
    let ue_tx_power_w = r.required::<f64>("scenario", "ue_tx_power_w");
    let bs_tx_power_w = r.required::<f64>("scenario", "bs_tx_power_w");
    let freq_hz = r.required::<f64>("channel", "freq_hz");
    let snr_threshold_db = r.required::<f64>("channel", "snr_threshold_db");
    let rss_threshold_dbm = r.required::<f64>("switching", "rss_threshold_dbm");

    let min_distance_m = r.optional("scenario", "min_distance_m", d.min_distance_m);
    let tr_region_inner_m = if r.raw_present("scenario", "tr_region_inner_m") {
        r.parse::<f64>("scenario", "tr_region_inner_m")
    } else {
        None
    };
    let placement_name = r.optional("scenario", "placement", "uniform-disk".to_string());
    let placement = match placement_name.as_str() {
        "uniform-disk" => {
            if r.raw_present("scenario", "fixed_distance_m") {
                let line = r.line_of("scenario.fixed_distance_m");
                r.raw("scenario", "fixed_distance_m");
                r.error(line, "scenario.fixed_distance_m", "only valid with `placement = fixed`");
            }
            Placement::UniformDisk
        }
        "fixed" => match r.raw_present("scenario", "fixed_distance_m") {
            true => Placement::Fixed {
                distance_m: r.parse("scenario", "fixed_distance_m").unwrap_or(f64::NAN),
            },
            false => {
                r.error(None, "scenario.fixed_distance_m", "missing required key (placement = fixed)");
                Placement::Fixed { distance_m: f64::NAN }
            }
        },
        other => {
            let line = r.line_of("scenario.placement");
            r.error(line, "scenario.placement", format!("expected `uniform-disk` or `fixed`, got `{other}`"));
            Placement::UniformDisk
        }
    };

    let always_on_fraction = r.optional("scenario", "always_on_fraction", d.always_on_fraction);
    let ul_activity = r.optional("scenario", "ul_activity", d.ul_activity);
    let dl_activity = r.optional("scenario", "dl_activity", d.dl_activity);
    let ue_antenna_gain_dbi = r.optional("scenario", "ue_antenna_gain_dbi", d.ue_antenna_gain_dbi);
    let bs_antenna_gain_dbi = r.optional("scenario", "bs_antenna_gain_dbi", d.bs_antenna_gain_dbi);
    let observer_distance_m = r.optional("scenario", "observer_distance_m", d.observer_distance_m);
    let complexity_unit_cost = r.optional("scenario", "complexity_unit_cost", d.complexity_unit_cost);
    let bandwidth_hz = r.optional("channel", "bandwidth_hz", d.bandwidth_hz);
    let noise_figure_db = r.optional("channel", "noise_figure_db", d.noise_figure_db);
    let interferer_inr_db = r.optional("channel", "interferer_inr_db", d.interferer_inr_db);
    let min_separation_m = r.optional("channel", "min_separation_m", d.min_separation_m);
    let mu = r.optional("frame", "mu", d.mu);
    let duplex_name = r.optional("frame", "duplex", "fdd".to_string());
    let superframe_index = r.optional("frame", "superframe_index", DEFAULT_SUPERFRAME_INDEX);
    let pattern_text = r.optional("frame", "tdd_pattern", "DSUUUDSUUU".to_string());
    let duplex = match duplex_name.as_str() {
        "fdd" => {
            for key in ["tdd_pattern", "superframe_index"] {
                if r.raw_present("frame", key) {
                    let q = format!("frame.{key}");
                    let line = r.line_of(&q);
                    r.error(line, q, "only valid with `duplex = tdd`");
                }
            }
            DuplexConfig::Fdd
        }
        "tdd" => match frames::parse_tdd_pattern(&pattern_text, superframe_index) {
            Ok(pattern) => DuplexConfig::Tdd { pattern },
            Err(e) => {
                let line = r.line_of("frame.tdd_pattern");
                r.error(line, "frame.tdd_pattern", e.to_string());
                DuplexConfig::Fdd
            }
        },
        other => {
            let line = r.line_of("frame.duplex");
            r.error(line, "frame.duplex", format!("expected `fdd` or `tdd`, got `{other}`"));
            DuplexConfig::Fdd
        }
    };
    let hysteresis_db = r.optional("switching", "hysteresis_db", SwitchConfig::DEFAULT_HYSTERESIS_DB);
    let standards = parse_standards(&mut r);

    r.finish(|s| matches!(s, "scenario" | "channel" | "frame" | "switching") || s.starts_with("standards."));

    let (
        Some(n_users),
        Some(n_tr),
        Some(n_slots),
        Some(seed),
        Some(cell_radius_m),
        Some(ue_tx_power_w),
        Some(bs_tx_power_w),
        Some(freq_hz),
        Some(snr_threshold_db),
        Some(rss_threshold_dbm),
    ) = (
        n_users,
        n_tr,
        n_slots,
        seed,
        cell_radius_m,
        ue_tx_power_w,
        bs_tx_power_w,
        freq_hz,
        snr_threshold_db,
        rss_threshold_dbm,
    )
    else {
        return Err(Error::Config(r.errs));
    };

    let cfg = ScenarioConfig {
        n_users,
        n_tr,
        n_slots,
        seed,
        cell_radius_m,
        min_distance_m,
        tr_region_inner_m,
        placement,
        ue_tx_power_w,
        bs_tx_power_w,
        always_on_fraction,
        ul_activity,
        dl_activity,
        ue_antenna_gain_dbi,
        bs_antenna_gain_dbi,
        observer_distance_m,
        complexity_unit_cost,
        freq_hz,
        bandwidth_hz,
        noise_figure_db,
        snr_threshold_db,
        interferer_inr_db,
        min_separation_m,
        mu,
        duplex,
        switching: SwitchConfig {
            rss_threshold_dbm,
            hysteresis_db,
        },
        standards,
    };
    // Range errors are reported together with any syntax or unknown-key errors.
    let mut errs = std::mem::take(&mut r.errs);
    match cfg.validate() {
        Ok(()) => {}
        Err(Error::Config(range)) => errs.extend(range.into_iter().map(|mut e| {
            e.line = r.line_of(&e.key);
            e
        })),
        Err(e) => return Err(e),
    }
    if errs.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Config(errs))
    }
}

fn emit_standards(out: &mut String, standards: &[ExposureStandard]) {
    for s in standards {
        let _ = writeln!(out, "\n[standards.{}]", s.key);
        let _ = writeln!(out, "name = {}", s.name);
        for b in &s.bands {
            let _ = write!(out, "band = {} {} {}", b.freq_low_hz, b.freq_high_hz, b.e_ref_v_per_m);
            if !b.provenance.is_empty() {
                let _ = write!(out, " | {}", b.provenance);
            }
            out.push('\n');
        }
    }
}

/// Writes `cfg` in the config format; [`parse_config`] reads it back unchanged.
pub fn emit_config(cfg: &ScenarioConfig) -> String {
    let mut out = String::new();
    let kv = |out: &mut String, k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{k} = {v}");
    };
    out.push_str("[scenario]\n");
    kv(&mut out, "n_users", &cfg.n_users);
    kv(&mut out, "n_tr", &cfg.n_tr);
    kv(&mut out, "n_slots", &cfg.n_slots);
    kv(&mut out, "seed", &cfg.seed);
    kv(&mut out, "cell_radius_m", &cfg.cell_radius_m);
    kv(&mut out, "min_distance_m", &cfg.min_distance_m);
    if let Some(inner) = cfg.tr_region_inner_m {
        kv(&mut out, "tr_region_inner_m", &inner);
    }
    match cfg.placement {
        Placement::UniformDisk => kv(&mut out, "placement", &"uniform-disk"),
        Placement::Fixed { distance_m } => {
            kv(&mut out, "placement", &"fixed");
            kv(&mut out, "fixed_distance_m", &distance_m);
        }
    }
    kv(&mut out, "ue_tx_power_w", &cfg.ue_tx_power_w);
    kv(&mut out, "bs_tx_power_w", &cfg.bs_tx_power_w);
    kv(&mut out, "always_on_fraction", &cfg.always_on_fraction);
    kv(&mut out, "ul_activity", &cfg.ul_activity);
    kv(&mut out, "dl_activity", &cfg.dl_activity);
    kv(&mut out, "ue_antenna_gain_dbi", &cfg.ue_antenna_gain_dbi);
    kv(&mut out, "bs_antenna_gain_dbi", &cfg.bs_antenna_gain_dbi);
    kv(&mut out, "observer_distance_m", &cfg.observer_distance_m);
    kv(&mut out, "complexity_unit_cost", &cfg.complexity_unit_cost);
    out.push_str("\n[channel]\n");
    kv(&mut out, "freq_hz", &cfg.freq_hz);
    kv(&mut out, "bandwidth_hz", &cfg.bandwidth_hz);
    kv(&mut out, "noise_figure_db", &cfg.noise_figure_db);
    kv(&mut out, "snr_threshold_db", &cfg.snr_threshold_db);
    kv(&mut out, "interferer_inr_db", &cfg.interferer_inr_db);
    kv(&mut out, "min_separation_m", &cfg.min_separation_m);
    out.push_str("\n[frame]\n");
    kv(&mut out, "mu", &cfg.mu);
    match &cfg.duplex {
        DuplexConfig::Fdd => kv(&mut out, "duplex", &"fdd"),
        DuplexConfig::Tdd { pattern } => {
            kv(&mut out, "duplex", &"tdd");
            kv(&mut out, "tdd_pattern", &frames::pattern_string(pattern));
        }
    }
    out.push_str("\n[switching]\n");
    kv(&mut out, "rss_threshold_dbm", &cfg.switching.rss_threshold_dbm);
    kv(&mut out, "hysteresis_db", &cfg.switching.hysteresis_db);
    emit_standards(&mut out, &cfg.standards);
    out
}

/// Standards plus E-field samples, as used for exposure-ratio tables.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSurvey {
    pub standards: Vec<ExposureStandard>,
    pub samples: Vec<FieldSample>,
}

/// Parses a field survey: `[standards.*]` sections and a `[fields]` section of
/// `sample = <label> <standard> <am|tr> <freq_hz> <e_field_v_per_m> [| note]` lines.
pub fn parse_field_survey(text: &str) -> Result<FieldSurvey> {
    let mut r = Reader::new(text);
    let standards = parse_standards(&mut r);
    let mut samples = Vec::new();
    for (value, line) in r.all("fields", "sample") {
        let (body, note) = match value.split_once('|') {
            Some((a, b)) => (a, b.trim().to_string()),
            None => (value.as_str(), String::new()),
        };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let parsed = match toks.as_slice() {
            [label, std_key, mode, f, e] => {
                let mode = match mode.to_ascii_lowercase().as_str() {
                    "am" => Some(Mode::ActiveMode),
                    "tr" => Some(Mode::ThermalRadiationMode),
                    _ => None,
                };
                match (mode, f.parse::<f64>(), e.parse::<f64>()) {
                    (Some(mode), Ok(freq_hz), Ok(e_field)) if e_field >= 0.0 && freq_hz > 0.0 => Some(FieldSample {
                        label: label.to_string(),
                        standard_key: std_key.to_string(),
                        mode,
                        freq_hz,
                        e_field_v_per_m: e_field,
                        note,
                    }),
                    _ => None,
                }
            }
            _ => None,
        };
        match parsed {
            Some(s) => {
                if !standards.iter().any(|st| st.key == s.standard_key) {
                    r.error(
                        Some(line),
                        "fields.sample",
                        format!("unknown standard `{}`", s.standard_key),
                    );
                }
                samples.push(s);
            }
            None => r.error(
                Some(line),
                "fields.sample",
                "expected `<label> <standard> <am|tr> <freq_hz> <e_field_v_per_m> [| note]`",
            ),
        }
    }
    if samples.is_empty() && !r.errs.iter().any(|e| e.key == "fields.sample") {
        r.error(None, "fields.sample", "no samples");
    }
    r.finish(|s| s == "fields" || s.starts_with("standards."));
    if r.errs.is_empty() {
        Ok(FieldSurvey { standards, samples })
    } else {
        Err(Error::Config(r.errs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
[scenario]
n_users = 10
n_tr = 4
n_slots = 20
seed = 7
cell_radius_m = 300
ue_tx_power_w = 0.2
bs_tx_power_w = 20

[channel]
freq_hz = 3.5e9
snr_threshold_db = 0

[switching]
rss_threshold_dbm = -70
";

    fn config_errors(text: &str) -> Vec<FieldError> {
        match parse_config(text) {
            Err(Error::Config(errs)) => errs,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.n_users, 10);
        assert_eq!(cfg.n_tr, 4);
        assert_eq!(cfg.switching.hysteresis_db, 3.0);
        assert_eq!(cfg.duplex, DuplexConfig::Fdd);
        assert!(cfg.standards.is_empty());
    }

    #[test]
    fn empty_input_lists_required_keys() {
        let errs = config_errors("");
        let keys: Vec<_> = errs.iter().map(|e| e.key.as_str()).collect();
        assert_eq!(
            keys,
            vec![
                "scenario.n_users",
                "scenario.n_tr",
                "scenario.n_slots",
                "scenario.seed",
                "scenario.cell_radius_m",
                "scenario.ue_tx_power_w",
                "scenario.bs_tx_power_w",
                "channel.freq_hz",
                "channel.snr_threshold_db",
                "switching.rss_threshold_dbm",
            ]
        );
        assert!(errs.iter().all(|e| e.message == "missing required key"));
    }

    #[test]
    fn n_tr_above_n_users_is_single_error() {
        let text = MINIMAL.replace("n_tr = 4", "n_tr = 11");
        let errs = config_errors(&text);
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].key, "scenario.n_tr");
        assert_eq!(errs[0].line, Some(3));
        assert!(errs[0].message.contains("n_users"));
    }

    #[test]
    fn unknown_key_and_section() {
        let text = format!("{MINIMAL}bogus = 1\n[extra]\nx = 2\n");
        let errs = config_errors(&text);
        let shown: Vec<_> = errs.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, vec!["line 16: switching.bogus: unknown key", "line 17: extra: unknown section"]);
    }

    #[test]
    fn bad_number_and_duplicates() {
        let text = MINIMAL.replace("seed = 7", "seed = -7\nseed = 8");
        let errs = config_errors(&text);
        let keys: Vec<_> = errs.iter().map(|e| (e.key.as_str(), e.line)).collect();
        assert!(keys.contains(&("scenario.seed", Some(6))));
        assert!(keys.contains(&("scenario.seed", Some(5))));
    }

    #[test]
    fn tdd_and_standards_round_trip() {
        let text = format!(
            "{MINIMAL}\n[frame]\nmu = 2\nduplex = tdd\ntdd_pattern = DSUUU-DSUUU\n\n\
             [standards.icnirp]\nname = ICNIRP\nband = 3.3e9 3.8e9 61 | flat above 2 GHz\n"
        );
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.mu, 2);
        match &cfg.duplex {
            DuplexConfig::Tdd { pattern } => assert_eq!(frames::pattern_string(pattern), "DXUUUDSUUU"),
            other => panic!("{other:?}"),
        }
        assert_eq!(cfg.standards[0].bands[0].provenance, "flat above 2 GHz");
        let again = parse_config(&emit_config(&cfg)).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn fixed_placement_needs_distance() {
        let text = MINIMAL.replace("seed = 7", "seed = 7\nplacement = fixed");
        let errs = config_errors(&text);
        assert_eq!(errs[0].key, "scenario.fixed_distance_m");
        let text = MINIMAL.replace("seed = 7", "seed = 7\nplacement = fixed\nfixed_distance_m = 120");
        assert_eq!(
            parse_config(&text).unwrap().placement,
            Placement::Fixed { distance_m: 120.0 }
        );
    }

    #[test]
    fn bad_band_line() {
        let text = format!("{MINIMAL}[standards.x]\nband = 1 2\n");
        let errs = config_errors(&text);
        assert!(errs.iter().any(|e| e.key == "standards.x.band"));
    }

    #[test]
    fn field_survey_parse() {
        let text = "\
[standards.icnirp]
name = ICNIRP
band = 3.3e9 3.8e9 61

[fields]
sample = 5G icnirp am 3.5e9 50.63 | 0.83 x 61
sample = 5G icnirp tr 3.5e9 37.0575
";
        let s = parse_field_survey(text).unwrap();
        assert_eq!(s.samples.len(), 2);
        assert_eq!(s.samples[0].note, "0.83 x 61");
        assert_eq!(s.samples[1].mode, Mode::ThermalRadiationMode);
        assert!(parse_field_survey("[fields]\nsample = 5G nope am 1 1\n").is_err());
        assert!(parse_field_survey("[fields]\n").is_err());
    }
}
