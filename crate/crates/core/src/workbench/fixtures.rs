//! Named graphs.
//!
//! A fixture is written `name` or `name(arg, ...)`:
//!
//! | name | graph | default `k` |
//! |------|-------|-------------|
//! | `fig1` | 8 agents, 16 unit edges | 3 |
//! | `fig5_empty_core` | 9 agents, 12 weighted edges, empty core | 3 |
//! | `complete(n)` | `K_n` | `max(2, n / 2)` |
//! | `clique(m)` | `K_m` | `max(2, m - 1)` |
//! | `cycle(n)` / `path(n)` / `empty(n)` | as named | 3 |
//! | `star_chain(k)` | `k` hubs on a path, each with `k - 1` leaves | `k` |
//! | `mnm_weighted_worst(eps)` | two unit triangles bridged by `eps` | 3 |
//! | `sc_gadget(base, k)` | strict-core gadget over another fixture | `k` |
//!
//! An optional trailing `k=...` argument overrides the default cap.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::graph::{Agent, Graph, Weight};
use crate::rational::Rational;

const FIG1: [(Agent, Agent); 16] = [
    (1, 2),
    (1, 3),
    (1, 5),
    (2, 4),
    (3, 4),
    (4, 5),
    (3, 5),
    (4, 6),
    (6, 7),
    (4, 7),
    (1, 6),
    (2, 7),
    (5, 8),
    (4, 8),
    (6, 8),
    (3, 6),
];

const FIG5: [(Agent, Agent, Weight); 12] = [
    (1, 2, 6),
    (2, 3, 7),
    (2, 6, 5),
    (3, 6, 4),
    (3, 4, 5),
    (3, 7, 4),
    (6, 7, 4),
    (6, 8, 7),
    (4, 5, 6),
    (4, 7, 7),
    (7, 8, 5),
    (8, 9, 6),
];

pub fn fig1() -> GameInstance {
    GameInstance::new(Graph::unweighted(8, FIG1).expect("fixture is valid"), 3).expect("k = 3")
}

pub fn fig5_empty_core() -> GameInstance {
    GameInstance::new(Graph::new(9, FIG5).expect("fixture is valid"), 3).expect("k = 3")
}

/// `k` hubs `1..=k` joined in a path; hub `i` owns leaves
/// `k + (i-1)(k-1) + 1 ..= k + i(k-1)`.
pub fn star_chain(k: usize) -> Graph {
    let mut edges: Vec<(Agent, Agent)> = (1..k).map(|i| (i, i + 1)).collect();
    for hub in 1..=k {
        edges.extend(star_chain_leaves(k, hub).map(|leaf| (hub, leaf)));
    }
    Graph::unweighted(k * k, edges).expect("star chain is simple")
}

/// Leaves attached to `hub` in [`star_chain`].
pub fn star_chain_leaves(k: usize, hub: usize) -> core::ops::RangeInclusive<Agent> {
    k + (hub - 1) * (k - 1) + 1..=k + hub * (k - 1)
}

/// Two triangles `{1,2,3}` and `{4,5,6}` of weight 1 joined by edge `(3,4)`
/// of weight `eps`, scaled to integers. Returns the graph and its scale.
pub fn mnm_weighted_worst(eps: Rational) -> Result<(Graph, u64)> {
    if eps.numer() == 0 {
        return Err(Error::Unsupported("the bridge weight must be positive".into()));
    }
    let scale = decimal_scale(eps.denom());
    let unit = scale;
    let bridge = eps.numer() * (scale / eps.denom());
    let g = Graph::new(
        6,
        [
            (1, 2, unit),
            (2, 3, unit),
            (1, 3, unit),
            (4, 5, unit),
            (4, 6, unit),
            (5, 6, unit),
            (3, 4, bridge),
        ],
    )?;
    Ok((g, scale))
}

/// Smallest power of ten divisible by `den`, or `den` itself when none fits.
fn decimal_scale(den: u64) -> u64 {
    let mut s = 1u64;
    for _ in 0..19 {
        if s.is_multiple_of(den) {
            return s;
        }
        match s.checked_mul(10) {
            Some(t) => s = t,
            None => break,
        }
    }
    den
}

/// For each agent `x` of `base` adds `x̂ = n + (x-1)k + 1` and
/// `x^i = x̂ + i` for `i = 1..k`; the `x^i` form a clique and each is joined
/// to both `x` and `x̂`. The result has `n(k+1)` agents.
pub fn sc_gadget(base: &Graph, k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidK { k });
    }
    let n = base.n();
    let mut edges: Vec<(Agent, Agent, Weight)> =
        base.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
    for x in 1..=n {
        let hat = n + (x - 1) * k + 1;
        for i in 1..k {
            edges.push((x, hat + i, 1));
            edges.push((hat + i, hat, 1));
            for j in i + 1..k {
                edges.push((hat + i, hat + j, 1));
            }
        }
    }
    Graph::new(n * (k + 1), edges)
}

pub fn cycle(n: usize) -> Graph {
    let mut pairs: Vec<(Agent, Agent)> = (1..n).map(|i| (i, i + 1)).collect();
    if n >= 3 {
        pairs.push((1, n));
    }
    Graph::unweighted(n, pairs).expect("cycle is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::unweighted(n, (1..n).map(|i| (i, i + 1))).expect("path is simple")
}

/// Builds a fixture from its textual name (see the module docs).
pub fn gen_fixture(spec: &str) -> Result<GameInstance> {
    let (name, mut args) = split_call(spec)?;
    let mut k_override = None;
    if let Some(last) = args.last() {
        if let Some(v) = last.strip_prefix("k=") {
            k_override = Some(parse_usize(v.trim())?);
            args.pop();
        }
    }
    let arity = |want: usize| -> Result<()> {
        if args.len() == want {
            Ok(())
        } else {
            Err(Error::Unsupported(alloc::format!(
                "fixture `{name}` takes {want} argument(s), got {}",
                args.len()
            )))
        }
    };
    let (graph, k, scale) = match name.as_str() {
        "fig1" => {
            arity(0)?;
            (fig1().graph().clone(), 3, 1)
        }
        "fig5_empty_core" | "fig5" => {
            arity(0)?;
            (fig5_empty_core().graph().clone(), 3, 1)
        }
        "complete" => {
            arity(1)?;
            let n = parse_usize(&args[0])?;
            (Graph::complete(n), (n / 2).max(2), 1)
        }
        "clique" => {
            arity(1)?;
            let m = parse_usize(&args[0])?;
            (Graph::complete(m), m.saturating_sub(1).max(2), 1)
        }
        "cycle" | "path" | "empty" => {
            arity(1)?;
            let n = parse_usize(&args[0])?;
            let g = match name.as_str() {
                "cycle" => cycle(n),
                "path" => path(n),
                _ => Graph::empty(n),
            };
            (g, 3, 1)
        }
        "star_chain" => {
            arity(1)?;
            let k = parse_usize(&args[0])?;
            if k < 2 {
                return Err(Error::InvalidK { k });
            }
            (star_chain(k), k, 1)
        }
        "mnm_weighted_worst" => {
            arity(1)?;
            let eps: Rational = args[0]
                .parse()
                .map_err(|_| Error::Unsupported(alloc::format!("bad epsilon `{}`", args[0])))?;
            let (g, scale) = mnm_weighted_worst(eps)?;
            (g, 3, scale)
        }
        "sc_gadget" => {
            arity(2)?;
            let base = gen_fixture(&args[0])?;
            let k = parse_usize(&args[1])?;
            (sc_gadget(base.graph(), k)?, k, base.weight_scale())
        }
        other => return Err(Error::Unsupported(alloc::format!("unknown fixture `{other}`"))),
    };
    GameInstance::with_scale(graph, k_override.unwrap_or(k), scale)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Unsupported(alloc::format!("expected a non-negative integer, got `{s}`")))
}

/// Splits `name(a, b(c, d))` into the name and its top-level arguments.
pub(crate) fn split_call(spec: &str) -> Result<(String, Vec<String>)> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return Ok((spec.into(), Vec::new()));
    };
    if !spec.ends_with(')') {
        return Err(Error::Unsupported(alloc::format!("unbalanced parentheses in `{spec}`")));
    }
    let name = spec[..open].trim().into();
    let inner = &spec[open + 1..spec.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim().into());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Unsupported(alloc::format!("unbalanced parentheses in `{spec}`")));
        }
    }
    if depth != 0 {
        return Err(Error::Unsupported(alloc::format!("unbalanced parentheses in `{spec}`")));
    }
    let last: String = inner[start..].trim().into();
    if !last.is_empty() || !args.is_empty() {
        args.push(last);
    }
    Ok((name, args))
}
