//! Experiment plans: a `key = value` config file describing one instance
//! sweep, expandable into concrete instance specs.
//!
//! Recognized keys: `family` (required), integer family parameters (`m`,
//! `d`, `k`, `copies`, `m_a`) as single values, comma lists, or inclusive
//! ranges `lo..hi`; `rho` as a rational; `deg_a`/`deg_b` in `COUNTxDEG`
//! notation (`50x4;10x5`); `base` for line-graph instances; `t`;
//! `algorithm` (`separator` or `exact`); `provider` (`planar`, `treewidth`,
//! `fallback`); `seeds`; `record_time`; `node_budget`; `declared_k` and
//! `declared_gamma` for the fallback provider's profile. `#` starts a
//! comment.

use std::collections::BTreeMap;

use mcc_core::gen::{Family, InstanceSpec};
use num_rational::Rational64;

use crate::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Separator,
    Exact,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Separator => "separator",
            Algorithm::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProviderKind {
    Planar,
    Treewidth,
    Fallback,
}

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub family: String,
    /// Integer parameters, each a list of values to sweep (cross product).
    pub int_params: BTreeMap<String, Vec<u64>>,
    /// Verbatim parameters (`rho`, `deg_a`, `deg_b`, `base`).
    pub text_params: BTreeMap<String, String>,
    pub t: u32,
    pub algorithm: Algorithm,
    pub provider: ProviderKind,
    pub seeds: Vec<u64>,
    pub record_time: bool,
    pub node_budget: Option<u64>,
    pub declared_coefficient: Rational64,
    pub declared_exponent: Rational64,
    pub out: Option<String>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            family: String::new(),
            int_params: BTreeMap::new(),
            text_params: BTreeMap::new(),
            t: 2,
            algorithm: Algorithm::Separator,
            provider: ProviderKind::Fallback,
            seeds: vec![0],
            record_time: true,
            node_budget: None,
            declared_coefficient: Rational64::new(4, 1),
            declared_exponent: Rational64::new(1, 2),
            out: None,
        }
    }
}

fn parse_u64_list(value: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty value list".into());
    }
    Ok(out)
}

/// Parses `COUNTxDEG` runs, e.g. `190x4;10x5`.
pub fn parse_degree_runs(value: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for run in value.split(';') {
        let (count, deg) = run
            .trim()
            .split_once('x')
            .ok_or_else(|| format!("degree run {run:?} must be COUNTxDEG"))?;
        let count: usize = count.trim().parse().map_err(|_| format!("bad count in {run:?}"))?;
        let deg: u32 = deg.trim().parse().map_err(|_| format!("bad degree in {run:?}"))?;
        out.extend(std::iter::repeat_n(deg, count));
    }
    if out.is_empty() {
        return Err("empty degree sequence".into());
    }
    Ok(out)
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<ExperimentPlan, String> {
        let mut plan = ExperimentPlan::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("plan line {}: expected key = value", i + 1))?;
            plan.set(key.trim(), value.trim())
                .map_err(|e| format!("plan line {}: {e}", i + 1))?;
        }
        if plan.family.is_empty() {
            return Err("plan is missing `family`".into());
        }
        Ok(plan)
    }

    /// Applies one key, as in the plan file; used for `--set` overrides too.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "family" => self.family = value.to_string(),
            "t" => self.t = value.parse().map_err(|_| format!("bad t {value:?}"))?,
            "algorithm" => {
                self.algorithm = match value {
                    "separator" => Algorithm::Separator,
                    "exact" => Algorithm::Exact,
                    other => return Err(format!("unknown algorithm {other:?}")),
                }
            }
            "provider" => {
                self.provider = match value {
                    "planar" => ProviderKind::Planar,
                    "treewidth" => ProviderKind::Treewidth,
                    "fallback" => ProviderKind::Fallback,
                    other => return Err(format!("unknown provider {other:?}")),
                }
            }
            "seeds" => {
                self.seeds = if value == "none" {
                    Vec::new() // empty sweep: header-only CSV
                } else {
                    parse_u64_list(value)?
                }
            }
            "record_time" => {
                self.record_time = match value {
                    "true" => true,
                    "false" => false,
                    other => return Err(format!("record_time must be true/false, got {other:?}")),
                }
            }
            "node_budget" => {
                self.node_budget =
                    Some(value.parse().map_err(|_| format!("bad node_budget {value:?}"))?)
            }
            "declared_k" => self.declared_coefficient = parse_rational(value)?,
            "declared_gamma" => self.declared_exponent = parse_rational(value)?,
            "out" => self.out = Some(value.to_string()),
            "rho" | "deg_a" | "deg_b" | "base" => {
                self.text_params.insert(key.to_string(), value.to_string());
            }
            "m" | "d" | "k" | "copies" | "m_a" => {
                self.int_params
                    .insert(key.to_string(), parse_u64_list(value)?);
            }
            other => return Err(format!("unknown plan key {other:?}")),
        }
        Ok(())
    }

    fn int_param(&self, combo: &BTreeMap<&str, u64>, key: &str) -> Result<usize, String> {
        combo
            .get(key)
            .map(|&v| v as usize)
            .ok_or_else(|| format!("family {:?} needs parameter {key:?}", self.family))
    }

    fn family_for(&self, combo: &BTreeMap<&str, u64>) -> Result<Family, String> {
        match self.family.as_str() {
            "grid_diag" => Ok(Family::GridDiag {
                m: self.int_param(combo, "m")?,
                d: self.int_param(combo, "d")?,
            }),
            "tri_grid" => Ok(Family::TriGrid {
                m: self.int_param(combo, "m")?,
            }),
            "rib_planar" => Ok(Family::RibPlanar {
                k: self.int_param(combo, "k")?,
            }),
            "fan" => Ok(Family::Fan {
                k: self.int_param(combo, "k")?,
            }),
            "cone" => Ok(Family::Cone {
                k: self.int_param(combo, "k")?,
                copies: self.int_param(combo, "copies")?,
            }),
            "hamming_cube" => Ok(Family::HammingCube {
                d: self.int_param(combo, "d")?,
            }),
            "line_graph" => {
                let base = self
                    .text_params
                    .get("base")
                    .ok_or("line_graph needs `base`")?;
                let inner = match base.as_str() {
                    "hamming_cube" => Family::HammingCube {
                        d: self.int_param(combo, "d")?,
                    },
                    "grid_diag" => Family::GridDiag {
                        m: self.int_param(combo, "m")?,
                        d: self.int_param(combo, "d")?,
                    },
                    "fan" => Family::Fan {
                        k: self.int_param(combo, "k")?,
                    },
                    "tri_grid" => Family::TriGrid {
                        m: self.int_param(combo, "m")?,
                    },
                    other => return Err(format!("unsupported line_graph base {other:?}")),
                };
                Ok(Family::LineGraphOf(Box::new(inner)))
            }
            "config_bipartite" => {
                let a = self.text_params.get("deg_a").ok_or("config_bipartite needs `deg_a`")?;
                let b = self.text_params.get("deg_b").ok_or("config_bipartite needs `deg_b`")?;
                Ok(Family::ConfigBipartite {
                    deg_a: parse_degree_runs(a)?,
                    deg_b: parse_degree_runs(b)?,
                })
            }
            "deg45_line" => {
                let rho = self.text_params.get("rho").ok_or("deg45_line needs `rho`")?;
                Ok(Family::Deg45Line {
                    m_a: self.int_param(combo, "m_a")?,
                    rho: parse_rational(rho)?,
                })
            }
            other => Err(format!("unknown family {other:?}")),
        }
    }

    /// Cross product of all integer parameter lists and seeds, in
    /// deterministic order.
    pub fn expand(&self) -> Result<Vec<InstanceSpec>, String> {
        let keys: Vec<&str> = self.int_params.keys().map(String::as_str).collect();
        let mut combos: Vec<BTreeMap<&str, u64>> = vec![BTreeMap::new()];
        for &key in &keys {
            let values = &self.int_params[key];
            let mut next = Vec::with_capacity(combos.len() * values.len());
            for combo in &combos {
                for &v in values {
                    let mut c = combo.clone();
                    c.insert(key, v);
                    next.push(c);
                }
            }
            combos = next;
        }
        let mut specs = Vec::new();
        for combo in &combos {
            let family = self.family_for(combo)?;
            for &seed in &self.seeds {
                specs.push(InstanceSpec {
                    family: family.clone(),
                    seed,
                });
            }
        }
        Ok(specs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_lists() {
        assert_eq!(parse_u64_list("4..7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_u64_list("1,5,9").unwrap(), vec![1, 5, 9]);
        assert_eq!(parse_u64_list("2..3,8").unwrap(), vec![2, 3, 8]);
        assert!(parse_u64_list("9..2").is_err());
    }

    #[test]
    fn parses_degree_runs() {
        assert_eq!(parse_degree_runs("3x4").unwrap(), vec![4, 4, 4]);
        assert_eq!(parse_degree_runs("2x5;1x4").unwrap(), vec![5, 5, 4]);
        assert!(parse_degree_runs("x4").is_err());
    }

    #[test]
    fn plan_round_trip() {
        let text = "\
# planar sweep
family = rib_planar
k = 4..6
t = 2
algorithm = separator
provider = planar
seeds = 0
record_time = false
";
        let plan = ExperimentPlan::parse(text).unwrap();
        assert_eq!(plan.family, "rib_planar");
        assert_eq!(plan.t, 2);
        assert!(!plan.record_time);
        let specs = plan.expand().unwrap();
        assert_eq!(specs.len(), 3);
        assert_eq!(specs[0].to_string(), "rib_planar[k=4]#s0");
    }

    #[test]
    fn plan_rejects_unknown_keys() {
        assert!(ExperimentPlan::parse("family = fan\nwhat = 3\n").is_err());
        assert!(ExperimentPlan::parse("k = 3\n").is_err());
    }

    #[test]
    fn expand_crosses_parameters() {
        let mut plan = ExperimentPlan::default();
        plan.set("family", "cone").unwrap();
        plan.set("k", "3,4").unwrap();
        plan.set("copies", "2,5").unwrap();
        plan.set("seeds", "0,1").unwrap();
        let specs = plan.expand().unwrap();
        assert_eq!(specs.len(), 8);
    }
}
