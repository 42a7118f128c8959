//! JSON reports.
//!
//! Every report is an object with `version`, `command`, `instance`, `result`
//! and `seeds`. Partitions are lists of sorted agent lists in canonical
//! order. Welfare is written twice: the scaled integer and the exact value
//! as a reduced fraction.

use hedonic_core::mnm::MnMTrace;
use hedonic_core::oracle::{EmptinessCertificate, Membership, Verdict, Violation};
use hedonic_core::stability::SolverStats;
use hedonic_core::workbench::CampaignReport;
use hedonic_core::workbench::HeuristicStats;
use hedonic_core::{BlockingWitness, Coalition, GameInstance, Matching, Partition, Rational, Weight};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Assembles the top-level report object.
pub fn envelope(command: &str, instance: Value, result: Value, seeds: Value) -> Value {
    json!({
        "version": VERSION,
        "command": command,
        "instance": instance,
        "result": result,
        "seeds": seeds,
    })
}

pub fn instance(game: &GameInstance) -> Value {
    json!({
        "n": game.n(),
        "m": game.graph().edge_count(),
        "k": game.k(),
        "weight_scale": game.weight_scale(),
    })
}

pub fn partition(p: &Partition) -> Value {
    json!(p.to_vecs())
}

pub fn coalition(c: &Coalition) -> Value {
    json!(c.members())
}

/// `{ "scaled": w, "value": "w/scale" }` with the fraction reduced.
pub fn welfare(w: Weight, scale: u64) -> Value {
    let value = Rational::new(w, scale).expect("scale is positive");
    json!({ "scaled": w, "value": value.to_string() })
}

pub fn witness(w: &BlockingWitness) -> Value {
    json!({
        "coalition": coalition(&w.coalition),
        "mode": w.mode.to_string(),
        "per_agent": w.per_agent.iter().map(|g| json!({
            "agent": g.agent,
            "coalition_weight": g.coalition_weight,
            "current_utility": g.current_utility,
        })).collect::<Vec<_>>(),
    })
}

pub fn solver_stats(s: &SolverStats) -> Value {
    json!({
        "outer_iterations": s.outer_iterations,
        "welfare_trajectory": s.welfare_trajectory,
        "removed_agents": s.removed_agents,
        "steps": s.steps.iter().map(|step| json!({
            "coalition": coalition(&step.coalition),
            "welfare_before": step.welfare_before,
            "welfare_after": step.welfare_after,
            "froze": step.froze,
        })).collect::<Vec<_>>(),
    })
}

pub fn heuristic_stats(s: &HeuristicStats) -> Value {
    json!({
        "restarts": s.restarts,
        "applied_blocks": s.applied_blocks,
        "distinct_partitions": s.distinct_partitions,
        "exhaustive_scans": s.exhaustive_scans,
    })
}

pub fn trace(t: &MnMTrace) -> Value {
    json!(t
        .rounds
        .iter()
        .map(|r| json!({
            "round": r.round,
            "nodes": r.node_count,
            "edges": r.edge_count,
            "matching": r.matching.iter().map(|(a, b)| json!([coalition(a), coalition(b)])).collect::<Vec<_>>(),
            "matched_weight": r.matched_weight,
        }))
        .collect::<Vec<_>>())
}

pub fn membership(m: &Membership) -> Value {
    let violation = match &m.violation {
        None => Value::Null,
        Some(Violation::Blocking(w)) => json!({ "kind": "blocking", "witness": witness(w) }),
        Some(Violation::Move { agent, target, gain_from, gain_to }) => json!({
            "kind": "move",
            "agent": agent,
            "target": coalition(target),
            "utility_before": gain_from,
            "utility_after": gain_to,
        }),
    };
    json!({ "member": m.member, "violation": violation })
}

pub fn emptiness(c: &EmptinessCertificate) -> Value {
    json!({
        "verdict": match c.verdict { Verdict::Empty => "empty", Verdict::Nonempty => "nonempty" },
        "mode": c.mode.to_string(),
        "stable_partition": c.stable_partition.as_ref().map(partition),
        "refutations": c.refutations.iter().map(|(p, w)| json!({
            "partition": partition(p),
            "witness": witness(w),
        })).collect::<Vec<_>>(),
        "nodes_explored": c.nodes_explored,
    })
}

pub fn matchings(ms: &[Matching]) -> Value {
    json!(ms.iter().map(|m| json!(m.edges())).collect::<Vec<_>>())
}

pub fn campaign(r: &CampaignReport) -> Value {
    json!({
        "master_seed": r.master_seed,
        "n": r.n,
        "k": r.k,
        "instances_per_family": r.instances_per_family,
        "total_instances": r.total_instances(),
        "total_successes": r.total_successes(),
        "families": r.families.iter().map(|f| json!({
            "family": f.family,
            "instances": f.instances,
            "successes": f.successes,
            "failures": f.failures,
            "restarts": f.restarts,
            "instances_restarted": f.instances_restarted,
            "mean_applied_blocks": f.mean_applied_blocks,
            "counterexample_seeds": f.counterexample_seeds,
        })).collect::<Vec<_>>(),
    })
}

/// Reads a partition from a bare array, an object with a `partition` key, or
/// a full report (`result.partition`).
pub fn read_partition(v: &Value) -> Option<Vec<Vec<usize>>> {
    let arr = match v {
        Value::Array(_) => v,
        Value::Object(map) => find_partition(map)?,
        _ => return None,
    };
    arr.as_array()?
        .iter()
        .map(|block| {
            block
                .as_array()?
                .iter()
                .map(|a| a.as_u64().and_then(|a| usize::try_from(a).ok()))
                .collect()
        })
        .collect()
}

fn find_partition(map: &Map<String, Value>) -> Option<&Value> {
    map.get("partition")
        .or_else(|| map.get("result").and_then(Value::as_object).and_then(|r| r.get("partition")))
}
