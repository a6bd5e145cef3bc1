//! Branch points of RS models of `R_n` and the checks that force one ball of
//! radius at least `2^(n-2)`.
//!
//! For a verifying model, `m_1` and `m_n` are the ends of the connecting
//! path between the clique subtrees `S(C_1)` and `S(C_n)`. For `1 < i < n`,
//! `s_i` is the end in `S(C_i)` of the connecting path from `S(C_1)`, and
//! `m_i` is the median of `m_1`, `m_n` and `s_i`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::model::{RSModel, SubtreeModel};
use crate::rn::RnGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchPoints {
    /// `m_1, ..., m_n`.
    pub m: Vec<String>,
    /// `s_i` for `1 < i < n`, reached from `S(C_1)`.
    pub s: BTreeMap<usize, String>,
    /// `s_i` for `1 < i < n`, reached from `S(C_n)`.
    pub s_from_last: BTreeMap<usize, String>,
}

impl BranchPoints {
    /// `m_i`, 1-based.
    pub fn m(&self, i: usize) -> &str {
        &self.m[i - 1]
    }
}

fn clique_indices(r: &RnGraph, members: &VertexSet) -> Result<Vec<usize>> {
    members.iter().map(|v| r.graph().require(v)).collect()
}

fn ensure_model(r: &RnGraph, m: &RSModel) -> Result<SubtreeModel> {
    if m.graph() != r.graph() {
        return Err(Error::NotAModelOfRn("model graph is not R_n".into()));
    }
    let expanded = m.expand();
    if let Some(why) = expanded.first_violation() {
        return Err(Error::NotAModelOfRn(why));
    }
    Ok(expanded)
}

pub fn branch_points(r: &RnGraph, m: &RSModel) -> Result<BranchPoints> {
    let sm = ensure_model(r, m)?;
    let n = r.n();
    let host = m.host();
    let subtree = |i: usize| sm.clique_subtree_idx(&clique_indices(r, &r.clique(i))?);
    let first = subtree(1)?;
    let last = subtree(n)?;
    let spine = host.connecting_path_idx(&first, &last)?;
    let (m1, mn) = (spine[0], *spine.last().expect("nonempty path"));
    let mut ms = vec![host.id(m1).to_string()];
    let mut s = BTreeMap::new();
    let mut s_from_last = BTreeMap::new();
    for i in 2..n {
        let si = subtree(i)?;
        let end = *host.connecting_path_idx(&first, &si)?.last().expect("nonempty");
        let alt = *host.connecting_path_idx(&last, &si)?.last().expect("nonempty");
        ms.push(host.id(host.median_idx(m1, mn, end)).to_string());
        s.insert(i, host.id(end).to_string());
        s_from_last.insert(i, host.id(alt).to_string());
    }
    ms.push(host.id(mn).to_string());
    Ok(BranchPoints {
        m: ms,
        s,
        s_from_last,
    })
}

fn cover_of(m: &RSModel, node: &str) -> Option<VertexSet> {
    m.expand().cover(node).ok()
}

/// Both ways of reaching `S(C_i)` end at the same node.
pub fn check_endpoint_agreement(bp: &BranchPoints) -> bool {
    bp.s == bp.s_from_last
}

/// `cover(s_i) = C_i` for every `1 < i < n`.
pub fn check_s_cover(r: &RnGraph, m: &RSModel, bp: &BranchPoints) -> bool {
    let sm = m.expand();
    bp.s.iter()
        .all(|(&i, node)| sm.cover(node).ok() == Some(r.clique(i)))
}

/// `cover(m_i)` is `{a_j : j >= i} + {b_i}` plus a nonempty subset of
/// `{c_i, b_(i+1)}`.
pub fn check_median_cover(r: &RnGraph, m: &RSModel, bp: &BranchPoints, i: usize) -> bool {
    let n = r.n();
    if !(2..n).contains(&i) || bp.m.len() != n {
        return false;
    }
    let Some(cover) = cover_of(m, bp.m(i)) else {
        return false;
    };
    let mut core: VertexSet = (i..=n).map(RnGraph::a).collect();
    core.insert(RnGraph::b(i));
    if !core.is_subset(&cover) {
        return false;
    }
    let optional: VertexSet = [RnGraph::c(i), RnGraph::b(i + 1)].into();
    let extra: VertexSet = cover.difference(&core).cloned().collect();
    !extra.is_empty() && extra.is_subset(&optional)
}

/// The `m_i` are pairwise distinct and the host path from `m_1` to `m_n`
/// visits them in order.
pub fn check_order(r: &RnGraph, m: &RSModel, bp: &BranchPoints) -> bool {
    let host = m.host();
    if bp.m.len() != r.n() {
        return false;
    }
    let Ok(idx) = host.require_all(&bp.m) else {
        return false;
    };
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idx.len() {
        return false;
    }
    // Along a path, visiting in order is equivalent to distances from the
    // first node adding up along consecutive pairs.
    let from_first = host.bfs(idx[0]);
    let path = host.path_idx(idx[0], *idx.last().unwrap());
    let on_path: Vec<bool> = {
        let mut flags = vec![false; host.node_count()];
        for &x in &path {
            flags[x] = true;
        }
        flags
    };
    idx.iter().all(|&x| on_path[x])
        && idx.windows(2).all(|w| from_first[w[0]] < from_first[w[1]])
}

/// `d(m_i, m_(i+1)) > d(m_2, m_i)` for all `2 < i < n`.
pub fn check_increasing(r: &RnGraph, m: &RSModel, bp: &BranchPoints) -> bool {
    let n = r.n();
    let host = m.host();
    if bp.m.len() != n {
        return false;
    }
    let Ok(idx) = host.require_all(&bp.m) else {
        return false;
    };
    let from_m2 = host.bfs(idx[1]);
    (3..n).all(|i| host.distance_idx(idx[i - 1], idx[i]) > from_m2[idx[i - 1]])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub branch_points: BranchPoints,
    /// `m_distances[i][j] = d(m_(i+1), m_(j+1))`.
    pub m_distances: Vec<Vec<usize>>,
    pub checks: Vec<CheckResult>,
    pub failing: Vec<String>,
    pub max_radius: usize,
    pub radius_a_n: usize,
    pub distance_m2_mn: usize,
    /// `2^(n-1) - 1`.
    pub distance_threshold: u64,
    /// `2^(n-2)`.
    pub lower_bound: u64,
    /// `2 * max_radius + 2`.
    pub upper_bound: u64,
    pub holds: bool,
}

impl AuditReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "R_{} audit: {}", self.n, if self.holds { "HOLDS" } else { "FAILS" });
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {}: {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(out, "branch points:");
        for (i, id) in self.branch_points.m.iter().enumerate() {
            let _ = writeln!(out, "  m{} = {}", i + 1, id);
        }
        for (i, id) in &self.branch_points.s {
            let _ = writeln!(out, "  s{i} = {id}");
        }
        let _ = writeln!(out, "m distances:");
        for row in &self.m_distances {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
        let _ = writeln!(out, "max radius: {}", self.max_radius);
        let _ = writeln!(out, "radius of a{}: {}", self.n, self.radius_a_n);
        let _ = writeln!(
            out,
            "d(m2, m{}): {} (threshold {})",
            self.n, self.distance_m2_mn, self.distance_threshold
        );
        let _ = writeln!(
            out,
            "bounds: {} <= lrank(R_{}) <= {}",
            self.lower_bound, self.n, self.upper_bound
        );
        if !self.failing.is_empty() {
            let _ = writeln!(out, "failing: {}", self.failing.join(", "));
        }
        out
    }
}

/// Runs every check on a verifying model. Failed checks are reported, never
/// turned into errors; only a non-verifying model is an error.
pub fn lower_bound_certificate(r: &RnGraph, m: &RSModel) -> Result<AuditReport> {
    let bp = branch_points(r, m)?;
    let n = r.n();
    let host = m.host();
    let idx = host.require_all(&bp.m)?;
    let m_distances: Vec<Vec<usize>> = idx
        .iter()
        .map(|&x| {
            let d = host.bfs(x);
            idx.iter().map(|&y| d[y]).collect()
        })
        .collect();
    let distance_m2_mn = m_distances[1][n - 1];
    let an = RnGraph::a(n);
    let radius_a_n = m.radius(&an)?;
    let lower_bound = 1u64 << (n - 2);
    let distance_threshold = (1u64 << (n - 1)) - 1;
    let max_radius = m.max_radius();

    let sm = m.expand();
    let a_n_set = sm.assignment(&an)?;
    let contains_ends = a_n_set.contains(&bp.m(2)) && a_n_set.contains(&bp.m(n));

    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        })
    };
    push(
        "s-endpoint-agreement",
        check_endpoint_agreement(&bp),
        "s_i is the same reached from S(C_1) and from S(C_n)".into(),
    );
    push(
        "s-cover",
        check_s_cover(r, m, &bp),
        "cover(s_i) = C_i".into(),
    );
    let bad_medians: Vec<String> = (2..n)
        .filter(|&i| !check_median_cover(r, m, &bp, i))
        .map(|i| format!("m{i}"))
        .collect();
    push(
        "median-cover",
        bad_medians.is_empty(),
        if bad_medians.is_empty() {
            "cover(m_i) = {a_j : j >= i} + {b_i} + X, X nonempty in {c_i, b_(i+1)}".into()
        } else {
            format!("wrong cover at {}", bad_medians.join(", "))
        },
    );
    push(
        "branch-order",
        check_order(r, m, &bp),
        "m_1..m_n distinct and in path order".into(),
    );
    push(
        "increasing-gaps",
        check_increasing(r, m, &bp),
        if n < 4 {
            "vacuous for n = 3".into()
        } else {
            "d(m_i, m_(i+1)) > d(m_2, m_i) for 2 < i < n".into()
        },
    );
    push(
        "a_n-contains-ends",
        contains_ends,
        format!("ball of {an} contains m2 and m{n}"),
    );
    push(
        "spine-length",
        distance_m2_mn as u64 >= distance_threshold,
        format!("d(m2, m{n}) = {distance_m2_mn} >= {distance_threshold}"),
    );
    let half = distance_m2_mn.div_ceil(2);
    push(
        "radius-diameter",
        radius_a_n >= half,
        format!("r({an}) = {radius_a_n} >= ceil({distance_m2_mn} / 2) = {half}"),
    );
    push(
        "radius-bound",
        radius_a_n as u64 >= lower_bound,
        format!("r({an}) = {radius_a_n} >= {lower_bound}"),
    );

    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    Ok(AuditReport {
        n,
        branch_points: bp,
        m_distances,
        holds: failing.is_empty(),
        checks,
        failing,
        max_radius,
        radius_a_n,
        distance_m2_mn,
        distance_threshold,
        lower_bound,
        upper_bound: 2 * max_radius as u64 + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rn::{build_exponential_rs_model, build_rdp_model, build_rn};

    fn model(n: usize) -> (RnGraph, RSModel) {
        let r = build_rn(n).unwrap();
        let m = build_exponential_rs_model(&r).unwrap();
        (r, m)
    }

    #[test]
    fn r4_branch_points() {
        let (r, m) = model(4);
        let bp = branch_points(&r, &m).unwrap();
        assert_eq!(bp.m.len(), 4);
        assert_eq!(bp.s.len(), 2);
        let sm = m.expand();
        for i in 2..4 {
            assert_eq!(sm.cover(&bp.s[&i]).unwrap(), r.clique(i));
        }
        assert!(check_endpoint_agreement(&bp));
    }

    #[test]
    fn medians_separate_the_three_subtrees() {
        let (r, m) = model(5);
        let bp = branch_points(&r, &m).unwrap();
        let host = m.host();
        for i in 2..5 {
            let mi = bp.m(i);
            assert!(host.on_path(mi, bp.m(1), bp.m(5)).unwrap());
            assert!(host.on_path(mi, bp.m(1), &bp.s[&i]).unwrap());
            assert!(host.on_path(mi, &bp.s[&i], bp.m(5)).unwrap());
        }
    }

    #[test]
    fn median_cover_shape() {
        let (r, m) = model(4);
        let bp = branch_points(&r, &m).unwrap();
        assert!(check_median_cover(&r, &m, &bp, 2));
        let cover = m.expand().cover(bp.m(2)).unwrap();
        for v in ["a2", "a3", "a4", "b2"] {
            assert!(cover.contains(v));
        }
        assert!(!cover.contains("d2"));
        assert!(!cover.contains("a1"));
        assert!(!check_median_cover(&r, &m, &bp, 1));
    }

    #[test]
    fn order_and_gaps_on_the_construction() {
        for n in 3..=8 {
            let (r, m) = model(n);
            let bp = branch_points(&r, &m).unwrap();
            assert!(check_order(&r, &m, &bp), "n={n}");
            assert!(check_increasing(&r, &m, &bp), "n={n}");
        }
    }

    #[test]
    fn forged_branch_points_fail() {
        let (r, m) = model(5);
        let mut bp = branch_points(&r, &m).unwrap();
        bp.m[2] = bp.m[1].clone();
        assert!(!check_order(&r, &m, &bp));
        let mut bp = branch_points(&r, &m).unwrap();
        bp.m.swap(1, 2);
        assert!(!check_order(&r, &m, &bp));
    }

    #[test]
    fn uniform_gaps_fail_the_increasing_check() {
        // a bare path with m_i one step apart
        let (r, m) = model(5);
        let path: Vec<String> = (0..5).map(|p| format!("s{p}")).collect();
        let bp = BranchPoints {
            m: path,
            s: BTreeMap::new(),
            s_from_last: BTreeMap::new(),
        };
        assert!(check_order(&r, &m, &bp));
        assert!(!check_increasing(&r, &m, &bp));
    }

    #[test]
    fn certificates_hold() {
        for n in 3..=8 {
            let (r, m) = model(n);
            let rep = lower_bound_certificate(&r, &m).unwrap();
            assert!(rep.holds, "n={n}: {:?}", rep.failing);
            assert_eq!(rep.lower_bound, 1 << (n - 2));
            assert!(rep.distance_m2_mn as u64 >= (1 << (n - 1)) - 1);
            assert!(rep.max_radius as u64 >= rep.lower_bound);
        }
        let (r, m) = model(5);
        let rep = lower_bound_certificate(&r, &m).unwrap();
        assert!(rep.max_radius >= 8);
        assert!(rep.to_text().contains("8 <= lrank(R_5)"));
    }

    #[test]
    fn rdp_model_is_not_radial() {
        let r = build_rn(4).unwrap();
        assert!(build_rdp_model(&r).to_radial().is_err());
    }

    #[test]
    fn non_models_are_rejected() {
        let (r, m) = model(4);
        let other = build_rn(5).unwrap();
        assert!(matches!(
            branch_points(&other, &m),
            Err(Error::NotAModelOfRn(_))
        ));
        let broken = RSModel::new(
            m.host().clone(),
            r.graph().clone(),
            m.balls()
                .map(|(v, c, rad)| (v.to_string(), c.to_string(), if v == "d1" { rad + 40 } else { rad })),
        )
        .unwrap();
        assert!(matches!(
            lower_bound_certificate(&r, &broken),
            Err(Error::NotAModelOfRn(_))
        ));
    }
}
