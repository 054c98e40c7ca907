//! JSON results and CSV histograms.
//!
//! Bitstrings list qubit 1 first: character `k` is qubit `k + 1`. Maps are
//! ordered, so equal runs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::Result;

use super::config::{ExecutionConfig, Mode};
use super::exec::{histogram, reported_qubits, run_hqcm, run_unitary, total_variation, ShotResult};

pub fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn index_bitstring(index: usize, width: usize) -> String {
    (0..width).map(|k| if (index >> k) & 1 == 1 { '1' } else { '0' }).collect()
}

#[derive(Debug, Serialize)]
pub struct CircuitSummary {
    pub num_logical: usize,
    pub num_work: usize,
    pub tau_max: usize,
    pub gate_count: usize,
    pub rotation_count: usize,
}

#[derive(Debug, Serialize)]
pub struct FlowJson {
    pub x: String,
    pub z: String,
}

#[derive(Debug, Serialize)]
pub struct ShotJson {
    pub shot: usize,
    pub s: String,
    pub s_corrected: String,
    pub outcomes: String,
    pub kappas: String,
    pub flow: FlowJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct UnitaryJson {
    pub distribution: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_variation: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub circuit: CircuitSummary,
    pub config: ExecutionConfig,
    /// Qubits (1-based) covered by `s_corrected` histogram keys.
    pub reported_qubits: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shots: Vec<ShotJson>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub histogram: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitary: Option<UnitaryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `readout,count,frequency[,probability]`, one row per observed or
    /// possible readout.
    pub fn histogram_csv(&self) -> String {
        let total: usize = self.histogram.values().sum();
        let mut keys: Vec<&String> = self.histogram.keys().collect();
        if let Some(u) = &self.unitary {
            keys.extend(u.distribution.keys());
        }
        keys.sort();
        keys.dedup();
        let with_p = self.unitary.is_some();
        let mut out = String::from(if with_p {
            "readout,count,frequency,probability\n"
        } else {
            "readout,count,frequency\n"
        });
        for k in keys {
            let count = self.histogram.get(k).copied().unwrap_or(0);
            let freq = if total == 0 { 0.0 } else { count as f64 / total as f64 };
            out.push_str(&format!("{k},{count},{freq}"));
            if let Some(u) = &self.unitary {
                out.push_str(&format!(",{}", u.distribution.get(k).copied().unwrap_or(0.0)));
            }
            out.push('\n');
        }
        out
    }
}

/// Executes `circuit` as configured and collects everything into a report.
pub fn run_report(circuit: &Circuit, config: &ExecutionConfig) -> Result<RunReport> {
    config.validate()?;
    let reported = reported_qubits(circuit, config.include_work);
    let width = reported.len();
    let unitary_dist = match config.mode {
        Mode::Unitary | Mode::Both => Some(run_unitary(circuit, config)?.1),
        Mode::Hqcm => None,
    };
    let shots: Vec<ShotResult> = match config.mode {
        Mode::Hqcm | Mode::Both => run_hqcm(circuit, config)?,
        Mode::Unitary => Vec::new(),
    };

    let mut hist = BTreeMap::new();
    let counts = histogram(&shots, &reported);
    if !shots.is_empty() {
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                hist.insert(index_bitstring(i, width), c);
            }
        }
    }
    let unitary = match &unitary_dist {
        Some(dist) => Some(UnitaryJson {
            distribution: dist
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 1e-15)
                .map(|(i, &p)| (index_bitstring(i, width), p))
                .collect(),
            total_variation: if shots.is_empty() {
                None
            } else {
                Some(total_variation(&counts, dist)?)
            },
        }),
        None => None,
    };
    let trace = shots.first().and_then(|s| s.trace.as_ref()).map(|t| t.to_json());
    let shots_json = shots
        .iter()
        .map(|s| ShotJson {
            shot: s.shot,
            s: bitstring(&s.raw),
            s_corrected: bitstring(&s.corrected),
            outcomes: bitstring(&s.records.iter().map(|r| r.outcome).collect::<Vec<_>>()),
            kappas: bitstring(&s.records.iter().map(|r| r.kappa).collect::<Vec<_>>()),
            flow: FlowJson {
                x: bitstring(s.flow.x()),
                z: bitstring(s.flow.z()),
            },
            fidelity: s.fidelity,
        })
        .collect();
    Ok(RunReport {
        circuit: CircuitSummary {
            num_logical: circuit.num_logical(),
            num_work: circuit.num_work(),
            tau_max: circuit.tau_max(),
            gate_count: circuit.gate_count(),
            rotation_count: circuit.rotation_count(),
        },
        config: config.clone(),
        reported_qubits: reported.iter().map(|q| q + 1).collect(),
        shots: shots_json,
        histogram: hist,
        unitary,
        trace,
    })
}
