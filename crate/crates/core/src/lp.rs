//! Exact rational linear programming for weighted leaf-root feasibility.
//!
//! For a fixed topology and placement the unknowns are the edge weights and
//! a margin `delta`. Adjacent leaf pairs need path weight at most 1,
//! non-adjacent pairs at least `1 + delta`, and every weight at least
//! `delta`. Maximising `delta` and asking for a positive optimum turns the
//! strict "more than 1" condition into an ordinary LP.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::Tree;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Path weight between two adjacent vertices is at most 1.
    Adjacent(String, String),
    /// Path weight between two non-adjacent vertices is at least `1 + delta`.
    NonAdjacent(String, String),
    /// The weight of a host edge is at least `delta`.
    WeightFloor(String, String),
    /// `delta <= 1`; only added when the margin is otherwise unbounded.
    MarginCap,
}

/// `coeffs . x <= rhs` over all variables, edge weights first and `delta`
/// last. All variables are implicitly nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    /// Host edges in variable order, each as sorted node ids.
    pub edges: Vec<(String, String)>,
    pub constraints: Vec<Constraint>,
}

impl FeasibilitySystem {
    pub fn variable_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn margin_index(&self) -> usize {
        self.edges.len()
    }

    /// Variable names: `w_<u>_<v>` per edge, then `delta`.
    pub fn variable_names(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|(u, v)| format!("w_{}_{}", sanitize(u), sanitize(v)))
            .chain(["delta".to_string()])
            .collect()
    }

    /// True iff `x` satisfies every constraint exactly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.variable_count()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                lhs <= c.rhs
            })
    }

    /// CPLEX LP text form.
    pub fn to_lp_text(&self) -> String {
        let names = self.variable_names();
        let mut out = String::new();
        out.push_str("\\ weighted leaf root feasibility\nMaximize\n obj: delta\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let tag = match &c.kind {
                ConstraintKind::Adjacent(..) => "adj",
                ConstraintKind::NonAdjacent(..) => "non",
                ConstraintKind::WeightFloor(..) => "floor",
                ConstraintKind::MarginCap => "cap",
            };
            let mut terms = String::new();
            for (a, name) in c.coeffs.iter().zip(&names) {
                if a.is_zero() {
                    continue;
                }
                let sign = if a.is_negative() { "-" } else { "+" };
                let mag = a.abs();
                if mag.is_one() {
                    let _ = write!(terms, " {sign} {name}");
                } else {
                    let _ = write!(terms, " {sign} {} {name}", fmt_rational(&mag));
                }
            }
            let terms = terms.trim_start().trim_start_matches("+ ").to_string();
            let _ = writeln!(out, " {tag}{i}: {terms} <= {}", fmt_rational(&c.rhs));
        }
        out.push_str("End\n");
        out
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Builds the feasibility system for `g` on `host` with `placement`
/// (vertex -> leaf id).
pub fn build_feasibility_system(
    g: &Graph,
    host: &Tree,
    placement: &BTreeMap<String, String>,
) -> Result<FeasibilitySystem> {
    if host.node_count() > 1
        && (0..host.node_count()).any(|x| host.degree_idx(x) == 2)
    {
        return Err(Error::NonCanonicalTopology);
    }
    let leaves = host.leaves_idx();
    if placement.len() != g.vertex_count() || placement.len() != leaves.len() {
        return Err(Error::InvalidLeafRoot(
            "placement must biject the vertices onto the leaves".into(),
        ));
    }
    // leaf index per graph vertex
    let mut at = vec![usize::MAX; g.vertex_count()];
    let mut used = vec![false; host.node_count()];
    for (v, leaf) in placement {
        let i = g.require(v)?;
        let x = host.require(leaf)?;
        if host.degree_idx(x) > 1 {
            return Err(Error::NotALeaf(leaf.clone()));
        }
        if used[x] {
            return Err(Error::InvalidLeafRoot(format!("leaf {leaf:?} used twice")));
        }
        used[x] = true;
        at[i] = x;
    }
    let edge_list = host.edges_idx();
    let mut edge_var = BTreeMap::new();
    for (k, &(u, v)) in edge_list.iter().enumerate() {
        edge_var.insert((u, v), k);
        edge_var.insert((v, u), k);
    }
    let nvars = edge_list.len() + 1;
    let delta = edge_list.len();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut constraints = Vec::new();
    for i in 0..g.vertex_count() {
        for j in i + 1..g.vertex_count() {
            let mut coeffs = vec![zero.clone(); nvars];
            for w in host.path_idx(at[i], at[j]).windows(2) {
                coeffs[edge_var[&(w[0], w[1])]] = one.clone();
            }
            let (u, v) = (g.label(i).to_string(), g.label(j).to_string());
            if g.adjacent_idx(i, j) {
                constraints.push(Constraint {
                    kind: ConstraintKind::Adjacent(u, v),
                    coeffs,
                    rhs: one.clone(),
                });
            } else {
                for c in coeffs.iter_mut() {
                    *c = -c.clone();
                }
                coeffs[delta] = one.clone();
                constraints.push(Constraint {
                    kind: ConstraintKind::NonAdjacent(u, v),
                    coeffs,
                    rhs: -one.clone(),
                });
            }
        }
    }
    let edges: Vec<(String, String)> = edge_list
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (host.id(u).to_string(), host.id(v).to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    for (k, (a, b)) in edges.iter().enumerate() {
        let mut coeffs = vec![zero.clone(); nvars];
        coeffs[k] = -one.clone();
        coeffs[delta] = one.clone();
        constraints.push(Constraint {
            kind: ConstraintKind::WeightFloor(a.clone(), b.clone()),
            coeffs,
            rhs: zero.clone(),
        });
    }
    Ok(FeasibilitySystem { edges, constraints })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// Edge weights in system order and the optimal margin, which is
    /// positive.
    Feasible {
        weights: Vec<Rational>,
        margin: Rational,
    },
    Infeasible,
}

/// Maximises the margin exactly. Reports `Feasible` only for a positive
/// optimum. An unbounded margin is re-solved with `delta <= 1`.
pub fn solve_feasibility(s: &FeasibilitySystem) -> Result<Feasibility> {
    let n = s.variable_count();
    if let Some(c) = s.constraints.iter().find(|c| c.coeffs.len() != n) {
        return Err(Error::MalformedSystem(format!(
            "constraint {:?} has {} coefficients, expected {n}",
            c.kind,
            c.coeffs.len()
        )));
    }
    let mut objective = vec![Rational::zero(); n];
    objective[s.margin_index()] = Rational::one();
    let rows: Vec<(Vec<Rational>, Rational)> = s
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let outcome = match maximize(&objective, &rows) {
        LpOutcome::Unbounded => {
            let mut capped = s.clone();
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[s.margin_index()] = Rational::one();
            capped.constraints.push(Constraint {
                kind: ConstraintKind::MarginCap,
                coeffs,
                rhs: Rational::one(),
            });
            let rows: Vec<_> = capped
                .constraints
                .iter()
                .map(|c| (c.coeffs.clone(), c.rhs.clone()))
                .collect();
            maximize(&objective, &rows)
        }
        other => other,
    };
    match outcome {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let margin = x[s.margin_index()].clone();
            let weights = x[..s.margin_index()].to_vec();
            Ok(Feasibility::Feasible { weights, margin })
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible => Ok(Feasibility::Infeasible),
        LpOutcome::Unbounded => Err(Error::MalformedSystem(
            "margin unbounded even with cap".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Maximises `c . x` subject to `a_i . x <= b_i` and `x >= 0` with a dense
/// two-phase simplex under Bland's rule, so it terminates on degenerate
/// problems.
pub fn maximize(c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpOutcome {
    Tableau::new(c.len(), rows).solve(c)
}

struct Tableau {
    /// rows x (columns + 1); the last entry of each row is the right-hand side
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    nvars: usize,
    /// columns at or past this index are artificial
    first_artificial: usize,
    ncols: usize,
}

impl Tableau {
    fn new(nvars: usize, rows: &[(Vec<Rational>, Rational)]) -> Self {
        let m = rows.len();
        let n_art = rows.iter().filter(|(_, b)| b.is_negative()).count();
        let first_artificial = nvars + m;
        let ncols = first_artificial + n_art;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = first_artificial;
        for (i, (a, b)) in rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols + 1];
            let flip = b.is_negative();
            for (j, v) in a.iter().enumerate() {
                row[j] = if flip { -v.clone() } else { v.clone() };
            }
            row[nvars + i] = if flip { -Rational::one() } else { Rational::one() };
            row[ncols] = if flip { -b.clone() } else { b.clone() };
            if flip {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(nvars + i);
            }
            t.push(row);
        }
        Tableau {
            t,
            basis,
            nvars,
            first_artificial,
            ncols,
        }
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations for `cost` (indexed by column), with columns
    /// `>= allowed` barred from entering. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.t[i][j].is_zero() {
                        reduced -= &cost[bi] * &self.t[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }

    fn solve(mut self, c: &[Rational]) -> LpOutcome {
        if self.first_artificial < self.ncols {
            let mut phase1 = vec![Rational::zero(); self.ncols];
            for v in phase1.iter_mut().skip(self.first_artificial) {
                *v = -Rational::one();
            }
            // phase 1 is bounded by zero from above
            self.optimize(&phase1, self.ncols);
            if self.objective_value(&phase1).is_negative() {
                return LpOutcome::Infeasible;
            }
            // drive zero-level artificials out of the basis
            let mut i = 0;
            while i < self.t.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.t[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.t.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.ncols];
        cost[..self.nvars].clone_from_slice(c);
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nvars {
                x[b] = self.rhs(i).clone();
            }
        }
        let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
        LpOutcome::Optimal { x, value }
    }
}
