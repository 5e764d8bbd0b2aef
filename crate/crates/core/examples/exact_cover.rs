//! The multicover search engine on small problems.

use std::ops::ControlFlow;

use geofactor::search::{Branching, CoverProblem};

fn main() {
    let problem = CoverProblem::uniform(
        7,
        1,
        vec![
            vec![2, 4, 5],
            vec![0, 3, 6],
            vec![1, 2, 5],
            vec![0, 3],
            vec![1, 6],
            vec![3, 4, 6],
        ],
    );
    let (solution, report) = problem.solver().first();
    println!(
        "exact cover: {:?} after {} nodes",
        solution.found(),
        report.nodes
    );

    let lines: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 3, 4],
        vec![0, 5, 6],
        vec![1, 3, 5],
        vec![1, 4, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
    ];
    for need in 1..=3 {
        let (count, _) = CoverProblem::uniform(7, need, lines.clone())
            .solver()
            .count();
        println!(
            "sets of Fano lines covering every point {need} times: {}",
            count.unwrap()
        );
    }

    let pairs: Vec<Vec<usize>> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| vec![a, b]))
        .collect();
    let mut first_three = Vec::new();
    let report = CoverProblem::uniform(6, 1, pairs.clone())
        .solver()
        .branching(Branching::FewestOptions)
        .run(|sol| {
            first_three.push(sol.iter().map(|&i| pairs[i].clone()).collect::<Vec<_>>());
            if first_three.len() == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    println!(
        "first perfect matchings of K6: {first_three:?} ({:?})",
        report.termination
    );

    let (all, report) = CoverProblem::uniform(6, 1, pairs)
        .solver()
        .max_nodes(Some(5))
        .all();
    println!(
        "with a 5-node budget: {:?}, {:?}",
        all.map(|a| a.len()),
        report.termination
    );
}
