//! RRC state machine with the energy-efficient (EE) state used by TR mode.
//!
//! EE keeps the connection for downlink transfer only. Uplink grants are
//! issued exclusively in `Connected`; an uplink request in EE returns the
//! device to `Connected` in one step.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RrcState {
    Idle,
    Connected,
    Inactive,
    EnergyEfficient,
}

impl RrcState {
    pub const ALL: [RrcState; 4] = [
        RrcState::Idle,
        RrcState::Connected,
        RrcState::Inactive,
        RrcState::EnergyEfficient,
    ];
}

impl fmt::Display for RrcState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RrcState::Idle => "RRC_IDLE",
            RrcState::Connected => "RRC_CONNECTED",
            RrcState::Inactive => "RRC_INACTIVE",
            RrcState::EnergyEfficient => "RRC_EE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RrcEvent {
    ConnectionRequest,
    ConnectionRelease,
    SuspendToInactive,
    ResumeFromInactive,
    TrModeEnter,
    TrModeExit,
    UplinkDataPending,
    DownlinkDataArrival,
    InactivityTimeout,
}

impl RrcEvent {
    pub const ALL: [RrcEvent; 9] = [
        RrcEvent::ConnectionRequest,
        RrcEvent::ConnectionRelease,
        RrcEvent::SuspendToInactive,
        RrcEvent::ResumeFromInactive,
        RrcEvent::TrModeEnter,
        RrcEvent::TrModeExit,
        RrcEvent::UplinkDataPending,
        RrcEvent::DownlinkDataArrival,
        RrcEvent::InactivityTimeout,
    ];
}

impl fmt::Display for RrcEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Total transition function; pairs not listed below are self-loops.
pub fn transition(state: RrcState, event: RrcEvent) -> RrcState {
    use RrcEvent as E;
    use RrcState as S;
    match (state, event) {
        (S::Idle, E::ConnectionRequest) => S::Connected,
        (S::Connected, E::ConnectionRelease) => S::Idle,
        (S::Connected, E::SuspendToInactive) => S::Inactive,
        (S::Inactive, E::ResumeFromInactive) => S::Connected,
        (S::Inactive, E::InactivityTimeout) => S::Idle,
        (S::Connected, E::TrModeEnter) => S::EnergyEfficient,
        (S::EnergyEfficient, E::TrModeExit) => S::Connected,
        (S::EnergyEfficient, E::UplinkDataPending) => S::Connected,
        (S::EnergyEfficient, E::DownlinkDataArrival) => S::EnergyEfficient,
        (s, _) => s,
    }
}

pub fn uplink_grant_allowed(state: RrcState) -> bool {
    state == RrcState::Connected
}

/// Applies `events` in order, returning the final state.
pub fn run_trace(start: RrcState, events: impl IntoIterator<Item = RrcEvent>) -> RrcState {
    events.into_iter().fold(start, transition)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub from: RrcState,
    pub event: RrcEvent,
    pub to: RrcState,
}

/// Result of exhaustively exploring the transition table.
#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    /// Every (state, event) pair, states in [`RrcState::ALL`] order.
    pub table: Vec<TableEntry>,
    /// Shortest event sequence from Idle to each reachable state.
    pub paths_from_idle: BTreeMap<RrcState, Vec<RrcEvent>>,
    /// No edge out of EE lands in a grant-allowed state except via `Connected`,
    /// and EE itself never allows a grant.
    pub ee_grant_safe: bool,
    /// Events that move EE to a grant-allowed state in a single step.
    pub ee_single_step_grant_events: Vec<RrcEvent>,
    /// Events that move Idle to EE in a single step (expected empty).
    pub idle_to_ee_single_step: Vec<RrcEvent>,
}

impl ReachabilityReport {
    pub fn all_reachable_from_idle(&self) -> bool {
        RrcState::ALL.iter().all(|s| self.paths_from_idle.contains_key(s))
    }

    /// Line-oriented text form used by the `rrc-check` subcommand.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# transition table\n");
        out.push_str("from,event,to,uplink_grant\n");
        for e in &self.table {
            let _ = writeln!(out, "{},{},{},{}", e.from, e.event, e.to, uplink_grant_allowed(e.to));
        }
        out.push_str("# reachability from RRC_IDLE\n");
        for s in RrcState::ALL {
            match self.paths_from_idle.get(&s) {
                Some(path) => {
                    let p: Vec<String> = path.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "reachable,{},[{}]", s, p.join(" "));
                }
                None => {
                    let _ = writeln!(out, "unreachable,{s}");
                }
            }
        }
        out.push_str("# checks\n");
        let _ = writeln!(out, "entries,{}", self.table.len());
        let _ = writeln!(out, "all_reachable_from_idle,{}", self.all_reachable_from_idle());
        let _ = writeln!(out, "ee_grant_safe,{}", self.ee_grant_safe);
        let names = |v: &[RrcEvent]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "ee_single_step_grant,[{}]", names(&self.ee_single_step_grant_events));
        let _ = writeln!(out, "idle_to_ee_single_step,[{}]", names(&self.idle_to_ee_single_step));
        out
    }
}

pub fn check_reachability() -> ReachabilityReport {
    let table: Vec<TableEntry> = RrcState::ALL
        .iter()
        .flat_map(|&from| {
            RrcEvent::ALL.iter().map(move |&event| TableEntry {
                from,
                event,
                to: transition(from, event),
            })
        })
        .collect();

    let mut paths_from_idle = BTreeMap::new();
    paths_from_idle.insert(RrcState::Idle, Vec::new());
    let mut queue = VecDeque::from([RrcState::Idle]);
    while let Some(s) = queue.pop_front() {
        let path = paths_from_idle[&s].clone();
        for &event in &RrcEvent::ALL {
            let next = transition(s, event);
            if let std::collections::btree_map::Entry::Vacant(slot) = paths_from_idle.entry(next) {
                let mut p = path.clone();
                p.push(event);
                slot.insert(p);
                queue.push_back(next);
            }
        }
    }

    let ee_edges = table.iter().filter(|e| e.from == RrcState::EnergyEfficient);
    let ee_grant_safe = !uplink_grant_allowed(RrcState::EnergyEfficient)
        && ee_edges
            .clone()
            .all(|e| !uplink_grant_allowed(e.to) || e.to == RrcState::Connected);
    let ee_single_step_grant_events = ee_edges
        .filter(|e| uplink_grant_allowed(e.to))
        .map(|e| e.event)
        .collect();
    let idle_to_ee_single_step = table
        .iter()
        .filter(|e| e.from == RrcState::Idle && e.to == RrcState::EnergyEfficient)
        .map(|e| e.event)
        .collect();

    ReachabilityReport {
        table,
        paths_from_idle,
        ee_grant_safe,
        ee_single_step_grant_events,
        idle_to_ee_single_step,
    }
}
