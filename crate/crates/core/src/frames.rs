//! Radio frame layouts: numerology, the FDD pair with its frequency-switching
//! subframe, and the TDD frame with the hold/release superframe.
//!
//! A frame is always 10 subframes of 1 ms; each subframe holds `2^mu` slots.

use std::fmt;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SUBFRAMES_PER_FRAME: usize = 10;
pub const MAX_MU: u8 = 4;
/// Uplink subframe that carries the FDD frequency-switching state slot.
pub const FDD_SWITCH_SUBFRAME: usize = 0;
/// Default superframe position, the LTE special-subframe slot.
pub const DEFAULT_SUPERFRAME_INDEX: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerology {
    pub mu: u8,
    pub subcarrier_spacing_khz: f64,
    pub slots_per_subframe: usize,
}

pub fn make_numerology(mu: u8) -> Result<Numerology> {
    if mu > MAX_MU {
        return Err(Error::domain(format!("numerology mu must be in [0, {MAX_MU}] (got {mu})")));
    }
    Ok(Numerology {
        mu,
        subcarrier_spacing_khz: 15.0 * f64::from(1u32 << mu),
        slots_per_subframe: 1usize << mu,
    })
}

impl Numerology {
    pub fn slots_per_frame(&self) -> usize {
        SUBFRAMES_PER_FRAME * self.slots_per_subframe
    }

    pub fn slot_duration_ms(&self) -> f64 {
        1.0 / self.slots_per_subframe as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SlotKind {
    Downlink,
    Uplink,
    Guard,
    FreqSwitch0,
    FreqSwitch1,
    Hold,
    Release,
}

impl SlotKind {
    pub const ALL: [SlotKind; 7] = [
        SlotKind::Downlink,
        SlotKind::Uplink,
        SlotKind::Guard,
        SlotKind::FreqSwitch0,
        SlotKind::FreqSwitch1,
        SlotKind::Hold,
        SlotKind::Release,
    ];

    /// Single-character code used in frame dumps.
    pub fn code(self) -> char {
        match self {
            SlotKind::Downlink => 'D',
            SlotKind::Uplink => 'U',
            SlotKind::Guard => 'G',
            SlotKind::FreqSwitch0 => '0',
            SlotKind::FreqSwitch1 => '1',
            SlotKind::Hold => 'H',
            SlotKind::Release => 'R',
        }
    }

    pub fn from_code(c: char) -> Option<SlotKind> {
        SlotKind::ALL.into_iter().find(|k| k.code() == c)
    }

    fn ordinal(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Duplex {
    FddDownlink,
    FddUplink,
    Tdd,
}

impl Duplex {
    pub fn label(self) -> &'static str {
        match self {
            Duplex::FddDownlink => "fdd-dl",
            Duplex::FddUplink => "fdd-ul",
            Duplex::Tdd => "tdd",
        }
    }
}

/// Per-subframe direction of a TDD configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubframeDirection {
    Downlink,
    Uplink,
    /// Conventional special subframe (downlink part followed by the guard period).
    Special,
    /// Special subframe extended with the TR hold/release slot.
    Superframe,
}

impl SubframeDirection {
    pub fn code(self) -> char {
        match self {
            SubframeDirection::Downlink => 'D',
            SubframeDirection::Uplink => 'U',
            SubframeDirection::Special => 'S',
            SubframeDirection::Superframe => 'X',
        }
    }
}

/// Parses a TDD pattern such as `DSUUU-DSUUU`.
///
/// `D`, `U`, `S` give subframe directions, `X` marks the superframe
/// explicitly; `-` and whitespace are ignored. Without an `X`, the subframe
/// at `superframe_index` becomes the superframe.
pub fn parse_tdd_pattern(text: &str, superframe_index: usize) -> Result<Vec<SubframeDirection>> {
    let mut out = Vec::with_capacity(SUBFRAMES_PER_FRAME);
    for c in text.chars().filter(|c| *c != '-' && !c.is_whitespace()) {
        out.push(match c.to_ascii_uppercase() {
            'D' => SubframeDirection::Downlink,
            'U' => SubframeDirection::Uplink,
            'S' => SubframeDirection::Special,
            'X' => SubframeDirection::Superframe,
            other => return Err(Error::domain(format!("unknown TDD pattern code `{other}`"))),
        });
    }
    if out.len() != SUBFRAMES_PER_FRAME {
        return Err(Error::domain(format!(
            "TDD pattern must have {SUBFRAMES_PER_FRAME} subframes (got {})",
            out.len()
        )));
    }
    if !out.contains(&SubframeDirection::Superframe) {
        let slot = out.get_mut(superframe_index).ok_or_else(|| {
            Error::domain(format!("superframe index {superframe_index} is outside the frame"))
        })?;
        *slot = SubframeDirection::Superframe;
    }
    Ok(out)
}

pub fn pattern_string(pattern: &[SubframeDirection]) -> String {
    pattern.iter().map(|d| d.code()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadioFrame {
    pub duplex: Duplex,
    pub numerology: Numerology,
    pub subframes: Vec<Vec<SlotKind>>,
    pub tr_active: bool,
}

impl RadioFrame {
    /// Slot kind at `index` within the frame, counting slots across subframes.
    pub fn slot_at(&self, index: usize) -> SlotKind {
        let per = self.numerology.slots_per_subframe;
        self.subframes[index / per][index % per]
    }

    pub fn slots(&self) -> impl Iterator<Item = SlotKind> + '_ {
        self.subframes.iter().flatten().copied()
    }
}

fn special_slots(n: usize) -> Vec<SlotKind> {
    let mut v = vec![SlotKind::Downlink; n / 2];
    v.resize(n, SlotKind::Guard);
    v
}

fn superframe_slots(n: usize, tr_active: bool) -> Vec<SlotKind> {
    let mut v = vec![SlotKind::Downlink; (n - 1) / 2];
    v.push(if tr_active { SlotKind::Hold } else { SlotKind::Release });
    v.resize(n, SlotKind::Guard);
    v
}

/// Builds the FDD (downlink, uplink) frame pair.
///
/// The uplink frame's switching subframe carries `FreqSwitch1` when TR is
/// active (uplink stops, all other subframes fall silent as `Guard`) and
/// `FreqSwitch0` otherwise.
pub fn build_fdd_pair(num: Numerology, tr_active: bool) -> (RadioFrame, RadioFrame) {
    let n = num.slots_per_subframe;
    let dl = RadioFrame {
        duplex: Duplex::FddDownlink,
        numerology: num,
        subframes: vec![vec![SlotKind::Downlink; n]; SUBFRAMES_PER_FRAME],
        tr_active,
    };
    let data = if tr_active { SlotKind::Guard } else { SlotKind::Uplink };
    let state = if tr_active {
        SlotKind::FreqSwitch1
    } else {
        SlotKind::FreqSwitch0
    };
    let subframes = (0..SUBFRAMES_PER_FRAME)
        .map(|i| {
            if i == FDD_SWITCH_SUBFRAME {
                let mut sf = vec![SlotKind::Guard; n];
                sf[0] = state;
                sf
            } else {
                vec![data; n]
            }
        })
        .collect();
    let ul = RadioFrame {
        duplex: Duplex::FddUplink,
        numerology: num,
        subframes,
        tr_active,
    };
    (dl, ul)
}

pub fn build_tdd_frame(num: Numerology, pattern: &[SubframeDirection], tr_active: bool) -> Result<RadioFrame> {
    if pattern.len() != SUBFRAMES_PER_FRAME {
        return Err(Error::domain(format!(
            "TDD pattern must have {SUBFRAMES_PER_FRAME} entries (got {})",
            pattern.len()
        )));
    }
    let supers = pattern.iter().filter(|d| **d == SubframeDirection::Superframe).count();
    if supers != 1 {
        return Err(Error::domain(format!(
            "TDD pattern must mark exactly one superframe (found {supers})"
        )));
    }
    let n = num.slots_per_subframe;
    let subframes = pattern
        .iter()
        .map(|dir| match dir {
            SubframeDirection::Downlink => vec![SlotKind::Downlink; n],
            SubframeDirection::Uplink if tr_active => vec![SlotKind::Guard; n],
            SubframeDirection::Uplink => vec![SlotKind::Uplink; n],
            SubframeDirection::Special => special_slots(n),
            SubframeDirection::Superframe => superframe_slots(n, tr_active),
        })
        .collect();
    Ok(RadioFrame {
        duplex: Duplex::Tdd,
        numerology: num,
        subframes,
        tr_active,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    SubframeCount,
    SlotCount,
    UplinkInFddDownlink,
    DownlinkInFddUplink,
    UplinkWhileTrActive,
    /// A slot kind that does not belong to this duplex type.
    ForeignSlotKind,
    /// TDD frames carry exactly one Hold or Release slot.
    HoldReleaseCount,
    /// Hold must appear iff TR is active.
    HoldReleaseState,
    /// FDD uplink frames carry exactly one frequency-switching slot.
    SwitchSlotCount,
    /// FreqSwitch1 must appear iff TR is active.
    SwitchSlotState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: Invariant,
    pub subframe: Option<usize>,
    pub slot: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.invariant)?;
        if let Some(sf) = self.subframe {
            write!(f, " at subframe {sf}")?;
        }
        if let Some(s) = self.slot {
            write!(f, " slot {s}")?;
        }
        Ok(())
    }
}

pub fn validate_frame(f: &RadioFrame) -> Vec<Violation> {
    let mut out = Vec::new();
    let at = |invariant, subframe, slot| Violation {
        invariant,
        subframe: Some(subframe),
        slot: Some(slot),
    };
    if f.subframes.len() != SUBFRAMES_PER_FRAME {
        out.push(Violation {
            invariant: Invariant::SubframeCount,
            subframe: None,
            slot: None,
        });
    }
    let mut hold_release = Vec::new();
    let mut switches = Vec::new();
    for (i, sf) in f.subframes.iter().enumerate() {
        if sf.len() != f.numerology.slots_per_subframe {
            out.push(Violation {
                invariant: Invariant::SlotCount,
                subframe: Some(i),
                slot: None,
            });
        }
        for (j, &kind) in sf.iter().enumerate() {
            match (f.duplex, kind) {
                (Duplex::FddDownlink, SlotKind::Uplink) => out.push(at(Invariant::UplinkInFddDownlink, i, j)),
                (Duplex::FddUplink, SlotKind::Downlink) => out.push(at(Invariant::DownlinkInFddUplink, i, j)),
                (Duplex::Tdd, SlotKind::Hold | SlotKind::Release) => hold_release.push((i, j, kind)),
                (Duplex::FddUplink, SlotKind::FreqSwitch0 | SlotKind::FreqSwitch1) => switches.push((i, j, kind)),
                (_, SlotKind::Hold | SlotKind::Release | SlotKind::FreqSwitch0 | SlotKind::FreqSwitch1) => {
                    out.push(at(Invariant::ForeignSlotKind, i, j))
                }
                _ => {}
            }
            if f.tr_active && kind == SlotKind::Uplink {
                out.push(at(Invariant::UplinkWhileTrActive, i, j));
            }
        }
    }
    let expected_tr = |tr_kind: SlotKind, plain_kind: SlotKind| if f.tr_active { tr_kind } else { plain_kind };
    match f.duplex {
        Duplex::Tdd => {
            if hold_release.len() != 1 {
                out.push(Violation {
                    invariant: Invariant::HoldReleaseCount,
                    subframe: hold_release.get(1).map(|h| h.0),
                    slot: hold_release.get(1).map(|h| h.1),
                });
            }
            let want = expected_tr(SlotKind::Hold, SlotKind::Release);
            for &(i, j, kind) in &hold_release {
                if kind != want {
                    out.push(at(Invariant::HoldReleaseState, i, j));
                }
            }
        }
        Duplex::FddUplink => {
            if switches.len() != 1 {
                out.push(Violation {
                    invariant: Invariant::SwitchSlotCount,
                    subframe: switches.get(1).map(|s| s.0),
                    slot: switches.get(1).map(|s| s.1),
                });
            }
            let want = expected_tr(SlotKind::FreqSwitch1, SlotKind::FreqSwitch0);
            for &(i, j, kind) in &switches {
                if kind != want {
                    out.push(at(Invariant::SwitchSlotState, i, j));
                }
            }
        }
        Duplex::FddDownlink => {}
    }
    out
}

/// Slot counts per [`SlotKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SlotCensus([usize; 7]);

impl SlotCensus {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Non-zero entries in [`SlotKind::ALL`] order.
    pub fn nonzero(&self) -> Vec<(SlotKind, usize)> {
        SlotKind::ALL
            .into_iter()
            .map(|k| (k, self[k]))
            .filter(|(_, c)| *c > 0)
            .collect()
    }
}

impl Index<SlotKind> for SlotCensus {
    type Output = usize;

    fn index(&self, kind: SlotKind) -> &usize {
        &self.0[kind.ordinal()]
    }
}

pub fn slot_census(f: &RadioFrame) -> SlotCensus {
    let mut c = SlotCensus::default();
    for kind in f.slots() {
        c.0[kind.ordinal()] += 1;
    }
    c
}

/// One line per subframe, one character per slot.
pub fn dump(f: &RadioFrame) -> String {
    let mut s = String::with_capacity(f.subframes.len() * (f.numerology.slots_per_subframe + 1));
    for sf in &f.subframes {
        s.extend(sf.iter().map(|k| k.code()));
        s.push('\n');
    }
    s
}
