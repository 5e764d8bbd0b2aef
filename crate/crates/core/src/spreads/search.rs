//! Exhaustive searches for spreads, fold spreads and packings.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{regulus_through, FoldSpread, Packing, Spread, SpreadError};
use crate::geometry::{enumerate_pgl, ProjectiveSpace, Subspace};
use crate::search::{Branching, CoverProblem, Outcome, SearchReport, Termination};

fn subspaces_with_points(
    space: &ProjectiveSpace,
    dim: usize,
) -> Result<(Vec<Subspace>, Vec<Vec<usize>>), SpreadError> {
    let subs = space.enumerate_subspaces(dim)?;
    let pts = subs.iter().map(|s| space.subspace_points(s)).collect();
    Ok((subs, pts))
}

/// All `dim`-spreads of the space, in sorted order, or `None` when the
/// node limit is hit.
pub fn enumerate_spreads(
    space: &ProjectiveSpace,
    dim: usize,
    max_nodes: Option<u64>,
) -> Result<(Option<Vec<Spread>>, SearchReport), SpreadError> {
    let (subs, pts) = subspaces_with_points(space, dim)?;
    let problem = CoverProblem::uniform(space.num_points(), 1, pts);
    let (all, report) = problem
        .solver()
        .branching(Branching::FewestOptions)
        .max_nodes(max_nodes)
        .all();
    let spreads = all.map(|sols| {
        let mut v: Vec<Spread> = sols
            .into_iter()
            .map(|s| Spread::new(space, dim, 1, s.iter().map(|&i| subs[i].clone()).collect()))
            .collect();
        v.sort_by(|a, b| a.members().cmp(b.members()));
        v
    });
    Ok((spreads, report))
}

/// An `f`-fold `dim`-spread with pairwise distinct members, by complete
/// search. Counting alone refutes most impossible cases without search.
pub fn fold_spread_search(
    space: &ProjectiveSpace,
    dim: usize,
    fold: u32,
    max_nodes: Option<u64>,
) -> Result<(Outcome<FoldSpread>, SearchReport), SpreadError> {
    let (subs, pts) = subspaces_with_points(space, dim)?;
    let per_member = pts.first().map_or(1, Vec::len) as u64;
    if !(fold as u64 * space.num_points() as u64).is_multiple_of(per_member) {
        let report = SearchReport {
            nodes: 0,
            solutions: 0,
            termination: Termination::Exhausted,
        };
        return Ok((Outcome::Exhausted, report));
    }
    let problem = CoverProblem::uniform(space.num_points(), fold, pts);
    let (outcome, report) = problem
        .solver()
        .branching(Branching::FewestOptions)
        .max_nodes(max_nodes)
        .first();
    let outcome = outcome.map(|sol| {
        FoldSpread::new(
            space,
            dim,
            fold,
            sol.iter().map(|&i| subs[i].clone()).collect(),
        )
    });
    Ok((outcome, report))
}

/// A line spread of PG(3,q) containing no regulus, by search with every
/// partial spread kept free of complete reguli.
pub fn aregular_spread_search(
    space: &ProjectiveSpace,
    max_nodes: Option<u64>,
) -> Result<(Outcome<Spread>, SearchReport), SpreadError> {
    if space.dim() != 3 {
        return Err(SpreadError::NotLinesOfPg3);
    }
    let (lines, pts) = subspaces_with_points(space, 1)?;
    let index: BTreeMap<&Subspace, usize> = lines.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let problem = CoverProblem::uniform(space.num_points(), 1, pts);
    let filter = |chosen: &[usize], c: usize| {
        for (x, &a) in chosen.iter().enumerate() {
            for &b in &chosen[x + 1..] {
                let reg = regulus_through(space, &lines[a], &lines[b], &lines[c])
                    .expect("partial spread lines are skew");
                if reg.iter().all(|l| {
                    let i = index[l];
                    i == c || chosen.contains(&i)
                }) {
                    return false;
                }
            }
        }
        true
    };
    let (outcome, report) = problem
        .solver()
        .branching(Branching::FewestOptions)
        .max_nodes(max_nodes)
        .filter(filter)
        .first();
    let outcome = outcome
        .map(|sol| Spread::new(space, 1, 1, sol.iter().map(|&i| lines[i].clone()).collect()));
    Ok((outcome, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingMode {
    /// The least packing, comparing sorted lists of spreads.
    FindOne,
    /// Count all packings, and their PGL-orbits when the group is small.
    CountAll,
}

#[derive(Debug, Clone)]
pub struct PackingSearch {
    /// Number of spreads available to the search.
    pub spreads: usize,
    pub packing: Option<Packing>,
    /// Labeled packings (`CountAll` with a complete search).
    pub total: Option<u64>,
    /// PGL(n+1,q)-orbits of packings, when the group was enumerated.
    pub orbits: Option<u64>,
    pub report: SearchReport,
}

impl PackingSearch {
    pub fn is_inconclusive(&self) -> bool {
        self.report.termination == Termination::NodeLimit
    }
}

/// Largest matrix count scanned when enumerating PGL for orbit counting.
const MAX_GROUP_SCAN: u64 = 1 << 17;

/// Exact cover of the `dim`-subspaces by spreads.
///
/// `FindOne` branches on the least uncovered subspace and tries spreads in
/// sorted order, so the first packing found is the least one.
pub fn packing_search(
    space: &ProjectiveSpace,
    dim: usize,
    mode: PackingMode,
    max_nodes: Option<u64>,
) -> Result<PackingSearch, SpreadError> {
    let (subs, _) = subspaces_with_points(space, dim)?;
    let (spreads, spread_report) = enumerate_spreads(space, dim, max_nodes)?;
    let Some(spreads) = spreads else {
        return Ok(PackingSearch {
            spreads: 0,
            packing: None,
            total: None,
            orbits: None,
            report: spread_report,
        });
    };
    let index: BTreeMap<&Subspace, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let options: Vec<Vec<usize>> = spreads
        .iter()
        .map(|s| s.members().iter().map(|m| index[m]).collect())
        .collect();
    let problem = CoverProblem::uniform(subs.len(), 1, options.clone());
    let to_packing = |sol: &[usize]| Packing {
        spreads: sol.iter().map(|&i| spreads[i].clone()).collect(),
    };
    match mode {
        PackingMode::FindOne => {
            let (outcome, report) = problem
                .solver()
                .branching(Branching::FirstItem)
                .max_nodes(max_nodes)
                .first();
            Ok(PackingSearch {
                spreads: spreads.len(),
                packing: outcome.found().map(|s| to_packing(&s)),
                total: None,
                orbits: None,
                report,
            })
        }
        PackingMode::CountAll => {
            let (all, report) = problem
                .solver()
                .branching(Branching::FewestOptions)
                .max_nodes(max_nodes)
                .all();
            let Some(all) = all else {
                return Ok(PackingSearch {
                    spreads: spreads.len(),
                    packing: None,
                    total: None,
                    orbits: None,
                    report,
                });
            };
            let orbits = count_orbits(space, &subs, &options, &all)?;
            Ok(PackingSearch {
                spreads: spreads.len(),
                packing: all.first().map(|s| to_packing(s)),
                total: Some(all.len() as u64),
                orbits,
                report,
            })
        }
    }
}

/// Orbits of PGL(n+1,q) on packings given as spread-index lists.
fn count_orbits(
    space: &ProjectiveSpace,
    subs: &[Subspace],
    options: &[Vec<usize>],
    packings: &[Vec<usize>],
) -> Result<Option<u64>, SpreadError> {
    let size = space.dim() + 1;
    let cells = (size * size) as u32;
    if (space.q() as u64)
        .checked_pow(cells)
        .is_none_or(|c| c > MAX_GROUP_SCAN)
    {
        return Ok(None);
    }
    let group = enumerate_pgl(space.field(), size, MAX_GROUP_SCAN)?;
    let sub_index: BTreeMap<&Subspace, usize> =
        subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let spread_index: HashMap<&[usize], usize> = options
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_slice(), i))
        .collect();
    let perms: Vec<Vec<usize>> = group
        .iter()
        .map(|g| {
            subs.iter()
                .map(|s| sub_index[&g.apply_subspace(space, s).expect("same space")])
                .collect()
        })
        .collect();
    let image = |perm: &[usize], packing: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = packing
            .iter()
            .map(|&sp| {
                let mut members: Vec<usize> = options[sp].iter().map(|&x| perm[x]).collect();
                members.sort_unstable();
                spread_index[members.as_slice()]
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut orbits = 0;
    for p in packings {
        if seen.contains(p) {
            continue;
        }
        orbits += 1;
        for perm in &perms {
            seen.insert(image(perm, p));
        }
    }
    Ok(Some(orbits))
}
