//! Backtracking search over finite-domain variables with binary equality
//! constraints `map_a[v_a] == map_b[v_b]`.
//!
//! Variables are assigned in index order and values in increasing order, so
//! solutions come out in lexicographic order.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) enum Side {
    Value,
    Map(Vec<usize>),
}

impl Side {
    fn apply(&self, v: usize) -> usize {
        match self {
            Side::Value => v,
            Side::Map(m) => m[v],
        }
    }
}

#[derive(Debug, Clone)]
struct Constraint {
    a: usize,
    map_a: Side,
    b: usize,
    map_b: Side,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Search {
    domains: Vec<usize>,
    constraints: Vec<Constraint>,
    /// Variables sharing a group must take pairwise distinct values.
    groups: Vec<Option<usize>>,
}

impl Search {
    pub(crate) fn new(domains: Vec<usize>) -> Self {
        let n = domains.len();
        Search {
            domains,
            constraints: Vec::new(),
            groups: vec![None; n],
        }
    }

    pub(crate) fn constrain(&mut self, a: usize, map_a: Side, b: usize, map_b: Side) {
        self.constraints.push(Constraint { a, map_a, b, map_b });
    }

    /// `v_target == map[v_source]`.
    pub(crate) fn constrain_fn(&mut self, source: usize, map: Vec<usize>, target: usize) {
        self.constrain(source, Side::Map(map), target, Side::Value);
    }

    pub(crate) fn set_group(&mut self, var: usize, group: usize) {
        self.groups[var] = Some(group);
    }

    /// All solutions; errors if there are more than `cap`.
    pub(crate) fn solve_all(&self, cap: usize, what: &'static str) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut overflow = false;
        self.run(|sol| {
            if out.len() == cap {
                overflow = true;
                return false;
            }
            out.push(sol.to_vec());
            true
        }, usize::MAX);
        if overflow {
            return Err(Error::EnumerationCapExceeded { what, cap });
        }
        Ok(out)
    }

    /// First solution in lexicographic order; errors if the search visits
    /// more than `node_budget` partial assignments.
    pub(crate) fn first(&self, node_budget: usize, what: &'static str) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        let exhausted = !self.run(
            |sol| {
                found = Some(sol.to_vec());
                false
            },
            node_budget,
        );
        if exhausted && found.is_none() {
            return Err(Error::EnumerationCapExceeded {
                what,
                cap: node_budget,
            });
        }
        Ok(found)
    }

    /// Runs the search; `visit` returns `false` to stop. Returns `false` if
    /// the node budget ran out.
    fn run(&self, mut visit: impl FnMut(&[usize]) -> bool, node_budget: usize) -> bool {
        let n = self.domains.len();
        // constraints to check when the later of their two variables is set
        let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, c) in self.constraints.iter().enumerate() {
            by_var[c.a.max(c.b)].push(k);
        }
        let mut values = vec![0usize; n];
        let mut nodes = 0usize;
        let mut state = State {
            search: self,
            by_var: &by_var,
            values: &mut values,
            nodes: &mut nodes,
            budget: node_budget,
            visit: &mut visit,
        };
        state.descend(0) != Flow::OutOfBudget
    }
}

#[derive(PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    OutOfBudget,
}

struct State<'a, F> {
    search: &'a Search,
    by_var: &'a [Vec<usize>],
    values: &'a mut [usize],
    nodes: &'a mut usize,
    budget: usize,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize]) -> bool> State<'_, F> {
    fn descend(&mut self, var: usize) -> Flow {
        if var == self.values.len() {
            return if (self.visit)(self.values) {
                Flow::Continue
            } else {
                Flow::Stop
            };
        }
        for v in 0..self.search.domains[var] {
            self.values[var] = v;
            if !self.consistent(var) {
                continue;
            }
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return Flow::OutOfBudget;
            }
            match self.descend(var + 1) {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }

    fn consistent(&self, var: usize) -> bool {
        let s = self.search;
        if let Some(g) = s.groups[var] {
            let v = self.values[var];
            if (0..var).any(|w| s.groups[w] == Some(g) && self.values[w] == v) {
                return false;
            }
        }
        self.by_var[var].iter().all(|&k| {
            let c = &s.constraints[k];
            c.map_a.apply(self.values[c.a]) == c.map_b.apply(self.values[c.b])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_product_in_lex_order() {
        let s = Search::new(vec![2, 3]);
        let all = s.solve_all(100, "t").unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
    }

    #[test]
    fn functional_constraint() {
        let mut s = Search::new(vec![3, 2]);
        s.constrain_fn(0, vec![1, 0, 1], 1);
        let all = s.solve_all(100, "t").unwrap();
        assert_eq!(all, vec![vec![0, 1], vec![1, 0], vec![2, 1]]);
    }

    #[test]
    fn distinct_groups_and_caps() {
        let mut s = Search::new(vec![3, 3, 3]);
        for v in 0..3 {
            s.set_group(v, 0);
        }
        assert_eq!(s.solve_all(100, "t").unwrap().len(), 6);
        assert!(matches!(
            s.solve_all(5, "t"),
            Err(Error::EnumerationCapExceeded { .. })
        ));
        assert_eq!(s.first(100, "t").unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn empty_domain_and_no_variables() {
        assert!(Search::new(vec![2, 0]).solve_all(10, "t").unwrap().is_empty());
        assert_eq!(Search::new(vec![]).solve_all(10, "t").unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(Search::new(vec![2, 0]).first(10, "t").unwrap(), None);
    }
}
