//! Exact multi-cover by backtracking.
//!
//! A problem has items, each with a required multiplicity, and options, each
//! a set of items. A solution is a set of options (each used at most once)
//! covering every item exactly its required number of times. With all
//! multiplicities 1 this is ordinary exact cover.
//!
//! The search branches on one item with remaining need and tries the live
//! options containing it in increasing index order, first including the
//! option and then excluding it for the remaining siblings, so every
//! solution is visited exactly once. An option dies as soon as one of its
//! items is saturated, so partial selections never over-cover.
//! Results depend only on the problem and the branching rule.

use std::ops::ControlFlow;

/// How the next item to branch on is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branching {
    /// The smallest-index item that still needs coverage.
    #[default]
    FirstItem,
    /// The item with the fewest live options (ties: smallest index).
    FewestOptions,
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The whole tree was explored.
    Exhausted,
    /// The solution callback asked to stop.
    Stopped,
    /// The node limit was hit before the tree was explored.
    NodeLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchReport {
    /// Options tentatively included.
    pub nodes: u64,
    pub solutions: u64,
    pub termination: Termination,
}

/// Result of a search for one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The complete search found nothing.
    Exhausted,
    /// The node limit stopped the search; nothing can be concluded.
    Inconclusive,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Exhausted => Outcome::Exhausted,
            Outcome::Inconclusive => Outcome::Inconclusive,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverProblem {
    need: Vec<u32>,
    options: Vec<Vec<usize>>,
}

impl CoverProblem {
    /// Every item needs `multiplicity` coverings. Options are deduplicated
    /// internally (an option is a set).
    pub fn uniform(num_items: usize, multiplicity: u32, options: Vec<Vec<usize>>) -> Self {
        Self::new(vec![multiplicity; num_items], options)
    }

    pub fn new(need: Vec<u32>, options: Vec<Vec<usize>>) -> Self {
        let options = options
            .into_iter()
            .map(|mut o| {
                o.sort_unstable();
                o.dedup();
                assert!(o.iter().all(|&i| i < need.len()), "item out of range");
                o
            })
            .collect();
        CoverProblem { need, options }
    }

    pub fn num_items(&self) -> usize {
        self.need.len()
    }

    pub fn options(&self) -> &[Vec<usize>] {
        &self.options
    }

    pub fn solver(&self) -> Solver<'_> {
        Solver {
            problem: self,
            branching: Branching::FirstItem,
            max_nodes: None,
            filter: None,
        }
    }
}

type Filter<'a> = Box<dyn FnMut(&[usize], usize) -> bool + 'a>;

pub struct Solver<'a> {
    problem: &'a CoverProblem,
    branching: Branching,
    max_nodes: Option<u64>,
    filter: Option<Filter<'a>>,
}

impl<'a> Solver<'a> {
    pub fn branching(mut self, b: Branching) -> Self {
        self.branching = b;
        self
    }

    pub fn max_nodes(mut self, limit: Option<u64>) -> Self {
        self.max_nodes = limit;
        self
    }

    /// Extra constraint: `filter(chosen, candidate)` must hold for
    /// `candidate` to join the current partial selection `chosen`.
    pub fn filter(mut self, f: impl FnMut(&[usize], usize) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    /// Calls `on_solution` with each solution (option indices, ascending).
    pub fn run(self, mut on_solution: impl FnMut(&[usize]) -> ControlFlow<()>) -> SearchReport {
        let p = self.problem;
        let mut item_options = vec![Vec::new(); p.need.len()];
        for (o, items) in p.options.iter().enumerate() {
            for &i in items {
                item_options[i].push(o);
            }
        }
        let avail = item_options.iter().map(|v| v.len() as u32).collect();
        let mut state = State {
            options: &p.options,
            item_options,
            need: p.need.clone(),
            avail,
            alive: vec![true; p.options.len()],
            trail: Vec::new(),
            chosen: Vec::new(),
            nodes: 0,
            solutions: 0,
            max_nodes: self.max_nodes,
            branching: self.branching,
            filter: self.filter,
            scratch: Vec::new(),
        };
        let flow = state.search(&mut on_solution);
        let termination = match flow {
            Flow::Continue => Termination::Exhausted,
            Flow::Stop => Termination::Stopped,
            Flow::Limit => Termination::NodeLimit,
        };
        SearchReport {
            nodes: state.nodes,
            solutions: state.solutions,
            termination,
        }
    }

    /// The first solution in search order.
    pub fn first(self) -> (Outcome<Vec<usize>>, SearchReport) {
        let mut found = None;
        let report = self.run(|s| {
            found = Some(s.to_vec());
            ControlFlow::Break(())
        });
        let outcome = match (found, report.termination) {
            (Some(s), _) => Outcome::Found(s),
            (None, Termination::NodeLimit) => Outcome::Inconclusive,
            (None, _) => Outcome::Exhausted,
        };
        (outcome, report)
    }

    /// All solutions, or `None` if the node limit was hit.
    pub fn all(self) -> (Option<Vec<Vec<usize>>>, SearchReport) {
        let mut out = Vec::new();
        let report = self.run(|s| {
            out.push(s.to_vec());
            ControlFlow::Continue(())
        });
        let complete = report.termination == Termination::Exhausted;
        (complete.then_some(out), report)
    }

    /// Number of solutions, or `None` if the node limit was hit.
    pub fn count(self) -> (Option<u64>, SearchReport) {
        let report = self.run(|_| ControlFlow::Continue(()));
        let complete = report.termination == Termination::Exhausted;
        (complete.then_some(report.solutions), report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Limit,
}

struct State<'a> {
    options: &'a [Vec<usize>],
    item_options: Vec<Vec<usize>>,
    need: Vec<u32>,
    avail: Vec<u32>,
    alive: Vec<bool>,
    trail: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    solutions: u64,
    max_nodes: Option<u64>,
    branching: Branching,
    filter: Option<Filter<'a>>,
    scratch: Vec<usize>,
}

impl State<'_> {
    fn kill(&mut self, o: usize) {
        self.alive[o] = false;
        for &i in &self.options[o] {
            self.avail[i] -= 1;
        }
        self.trail.push(o);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let o = self.trail.pop().unwrap();
            self.alive[o] = true;
            for &i in &self.options[o] {
                self.avail[i] += 1;
            }
        }
    }

    fn include(&mut self, o: usize) {
        self.kill(o);
        self.chosen.push(o);
        let options = self.options;
        for &i in &options[o] {
            self.need[i] -= 1;
        }
        for &i in &options[o] {
            if self.need[i] == 0 {
                for k in 0..self.item_options[i].len() {
                    let other = self.item_options[i][k];
                    if self.alive[other] {
                        self.kill(other);
                    }
                }
            }
        }
    }

    fn exclude_include(&mut self, o: usize, mark: usize) {
        self.undo_to(mark);
        self.chosen.pop();
        for &i in &self.options[o] {
            self.need[i] += 1;
        }
    }

    fn pick_item(&self) -> Option<Result<usize, ()>> {
        let mut best: Option<usize> = None;
        for (i, (&need, &avail)) in self.need.iter().zip(&self.avail).enumerate() {
            if need == 0 {
                continue;
            }
            if avail < need {
                return Some(Err(()));
            }
            match self.branching {
                Branching::FirstItem => {
                    if best.is_none() {
                        best = Some(i);
                    }
                }
                Branching::FewestOptions => {
                    if best.is_none_or(|b| avail < self.avail[b]) {
                        best = Some(i);
                    }
                }
            }
        }
        best.map(Ok)
    }

    fn search(&mut self, on_solution: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> Flow {
        let item = match self.pick_item() {
            None => {
                self.solutions += 1;
                self.scratch.clear();
                self.scratch.extend_from_slice(&self.chosen);
                self.scratch.sort_unstable();
                return match on_solution(&self.scratch) {
                    ControlFlow::Continue(()) => Flow::Continue,
                    ControlFlow::Break(()) => Flow::Stop,
                };
            }
            Some(Err(())) => return Flow::Continue,
            Some(Ok(i)) => i,
        };
        let candidates: Vec<usize> = self.item_options[item]
            .iter()
            .copied()
            .filter(|&o| self.alive[o])
            .collect();
        let loop_mark = self.trail.len();
        for c in candidates {
            if !self.alive[c] {
                continue;
            }
            let accepted = match self.filter.as_mut() {
                Some(f) => f(&self.chosen, c),
                None => true,
            };
            if accepted {
                self.nodes += 1;
                if self.max_nodes.is_some_and(|m| self.nodes > m) {
                    self.undo_to(loop_mark);
                    return Flow::Limit;
                }
                let mark = self.trail.len();
                self.include(c);
                let flow = self.search(on_solution);
                self.exclude_include(c, mark);
                if flow != Flow::Continue {
                    self.undo_to(loop_mark);
                    return flow;
                }
            }
            self.kill(c);
            if self.avail[item] < self.need[item] {
                break;
            }
        }
        self.undo_to(loop_mark);
        Flow::Continue
    }
}
