//! Invariant probability measures on finite orbit graphs, decided exactly.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::systems::OrbitGraph;
use crate::words::rational_to_string;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureStatus {
    Feasible(Vec<(String, Q)>),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureResult {
    pub status: MeasureStatus,
    /// The equality system after elimination, one row per line.
    pub certificate: Vec<String>,
}

impl MeasureResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, MeasureStatus::Feasible(_))
    }
}

impl fmt::Display for MeasureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            MeasureStatus::Infeasible => writeln!(f, "infeasible"),
            MeasureStatus::Feasible(mu) => {
                writeln!(f, "feasible")?;
                for (name, q) in mu {
                    writeln!(f, "mu {name} {}", rational_to_string(q))?;
                }
                Ok(())
            }
        }
    }
}

/// Rows `coeffs . x = rhs` for both balance families and the total mass.
fn balance_system(g: &OrbitGraph) -> Vec<(Vec<Q>, Q)> {
    let n = g.len();
    let mut rows = Vec::new();
    for edges in [&g.a, &g.b] {
        for x in 0..n {
            let mut row = vec![Q::zero(); n];
            row[x] += Q::one();
            for (y, &t) in edges.iter().enumerate() {
                if t == x {
                    row[y] -= Q::one();
                }
            }
            rows.push((row, Q::zero()));
        }
    }
    rows.push((vec![Q::one(); n], Q::one()));
    rows
}

/// Reduced row echelon form; `None` if some row reads `0 = c` with `c != 0`.
fn rref(mut rows: Vec<(Vec<Q>, Q)>, n: usize) -> Option<(Vec<(Vec<Q>, Q)>, Vec<usize>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[c].recip();
        for v in rows[r].0.iter_mut() {
            *v *= &inv;
        }
        rows[r].1 *= &inv;
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row.0[c].is_zero() {
                let f = row.0[c].clone();
                for (v, pv) in row.0.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
                row.1 -= &f * &pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| !rhs.is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some((rows, pivots))
}

/// Inequality `coeffs . t + c >= 0` over the free variables.
#[derive(Clone)]
struct Ineq {
    coeffs: Vec<Q>,
    c: Q,
}

/// Fourier-Motzkin: returns a point satisfying every inequality, or `None`.
fn fourier_motzkin(ineqs: Vec<Ineq>, k: usize) -> Option<Vec<Q>> {
    let mut stages = vec![ineqs];
    for j in (0..k).rev() {
        let cur = stages.last().expect("nonempty");
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in cur {
            match q.coeffs[j].signum() {
                s if s.is_positive() => pos.push(q.clone()),
                s if s.is_negative() => neg.push(q.clone()),
                _ => rest.push(q.clone()),
            }
        }
        for p in &pos {
            for m in &neg {
                // scale so the j-th coefficients cancel
                let (fp, fm) = (-m.coeffs[j].clone(), p.coeffs[j].clone());
                let coeffs = p.coeffs.iter().zip(&m.coeffs).map(|(a, b)| a * &fp + b * &fm).collect();
                let c = &p.c * &fp + &m.c * &fm;
                rest.push(Ineq { coeffs, c });
            }
        }
        stages.push(rest);
    }
    if stages.last().expect("nonempty").iter().any(|q| q.c.is_negative()) {
        return None;
    }
    // back-substitute, each variable at its lower bound when it has one
    let mut t = vec![Q::zero(); k];
    for j in 0..k {
        let stage = &stages[k - 1 - j];
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for q in stage {
            let a = &q.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let mut rest = q.c.clone();
            for (i, ti) in t.iter().enumerate().take(j) {
                rest += &q.coeffs[i] * ti;
            }
            let bound = -rest / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        t[j] = match (lo, hi) {
            (Some(l), Some(h)) if l > h => return None,
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => Q::zero(),
        };
    }
    Some(t)
}

fn row_text(row: &[Q], rhs: &Q, names: &[String]) -> String {
    let terms: Vec<String> = row
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| format!("{}*{n}", rational_to_string(c)))
        .collect();
    let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    format!("{lhs} = {}", rational_to_string(rhs))
}

fn satisfies(g: &OrbitGraph, mu: &[Q]) -> bool {
    mu.iter().all(|m| !m.is_negative())
        && balance_system(g)
            .iter()
            .all(|(row, rhs)| row.iter().zip(mu).map(|(a, b)| a * b).sum::<Q>() == *rhs)
}

/// Decides whether the graph carries a probability measure with
/// `mu(x) = sum of mu(y) over y with a(y) = x`, and the same for `b`.
pub fn invariant_measure(g: &OrbitGraph) -> Result<MeasureResult> {
    let n = g.len();
    if n == 0 || g.a.len() != n || g.b.len() != n || g.a.iter().chain(&g.b).any(|&t| t >= n) {
        return Err(Error::MalformedGraph("edge maps must be total on a nonempty state set".into()));
    }
    let names: Vec<String> = g.states.iter().map(|s| s.name.clone()).collect();
    let Some((rows, pivots)) = rref(balance_system(g), n) else {
        return Ok(MeasureResult { status: MeasureStatus::Infeasible, certificate: vec!["0 = 1".into()] });
    };
    let certificate: Vec<String> = rows.iter().map(|(r, rhs)| row_text(r, rhs, &names)).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();
    // mu_pivot = rhs - sum coeff * t >= 0 and t >= 0
    let mut ineqs: Vec<Ineq> = rows
        .iter()
        .map(|(row, rhs)| Ineq { coeffs: free.iter().map(|&f| -row[f].clone()).collect(), c: rhs.clone() })
        .collect();
    for j in 0..k {
        let mut coeffs = vec![Q::zero(); k];
        coeffs[j] = Q::one();
        ineqs.push(Ineq { coeffs, c: Q::zero() });
    }
    let Some(t) = fourier_motzkin(ineqs, k) else {
        return Ok(MeasureResult { status: MeasureStatus::Infeasible, certificate });
    };
    let mut mu = vec![Q::zero(); n];
    for (j, &f) in free.iter().enumerate() {
        mu[f] = t[j].clone();
    }
    for ((row, rhs), &p) in rows.iter().zip(&pivots) {
        let s: Q = free.iter().zip(&t).map(|(&f, tj)| &row[f] * tj).sum();
        mu[p] = rhs - s;
    }
    if !satisfies(g, &mu) {
        return Err(Error::Inconsistent("elimination produced a non-solution".into()));
    }
    Ok(MeasureResult { status: MeasureStatus::Feasible(names.into_iter().zip(mu).collect()), certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{build_orbit_graph, nomeasure_tree};

    fn graph(text: &str) -> OrbitGraph {
        OrbitGraph::parse_text(text).unwrap()
    }

    #[test]
    fn nomeasure_is_infeasible() {
        let g = build_orbit_graph(&nomeasure_tree(0, 12), 6).unwrap();
        let r = invariant_measure(&g).unwrap();
        assert_eq!(r.to_string(), "infeasible\n");
    }

    #[test]
    fn point_mass() {
        let r = invariant_measure(&graph("state x\nedge x a x\nedge x b x\n")).unwrap();
        assert_eq!(r.to_string(), "feasible\nmu x 1\n");
    }

    #[test]
    fn two_cycle() {
        let g = graph("state s1\nstate s2\nedge s1 a s2\nedge s1 b s2\nedge s2 a s1\nedge s2 b s1\n");
        assert_eq!(invariant_measure(&g).unwrap().to_string(), "feasible\nmu s1 1/2\nmu s2 1/2\n");
    }

    #[test]
    fn free_variables() {
        // two disjoint point masses: a one-parameter family
        let g = graph("state x\nstate y\nedge x a x\nedge x b x\nedge y a y\nedge y b y\n");
        let r = invariant_measure(&g).unwrap();
        let MeasureStatus::Feasible(mu) = r.status else { panic!() };
        let total: Q = mu.iter().map(|(_, q)| q.clone()).sum();
        assert_eq!(total, Q::one());
    }

    #[test]
    fn transient_state_gets_zero() {
        // t has no incoming edge, so it carries no mass
        let g = graph("state t\nstate x\nedge t a x\nedge t b x\nedge x a x\nedge x b x\n");
        assert_eq!(invariant_measure(&g).unwrap().to_string(), "feasible\nmu t 0\nmu x 1\n");
    }
}
