#![allow(dead_code)]

use sparsemult_core::PointSet;

pub fn family(n: usize, sets: &[&[&[i64]]]) -> Vec<PointSet> {
    sets.iter().map(|s| PointSet::from_coords(n, s)).collect()
}

/// Pure powers on every axis; origin of multiplicity 3.
pub fn ex1() -> Vec<PointSet> {
    family(
        3,
        &[
            &[&[1, 0, 0], &[0, 1, 0], &[0, 2, 0], &[2, 1, 1], &[0, 0, 7]],
            &[&[2, 0, 0], &[3, 0, 0], &[2, 1, 0], &[0, 0, 3], &[0, 7, 0]],
            &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 2], &[0, 1, 3], &[0, 7, 0]],
        ],
    )
}

/// The same system without the pure powers x3^7 and x2^7.
pub fn general_case() -> Vec<PointSet> {
    family(
        3,
        &[
            &[&[1, 0, 0], &[0, 1, 0], &[0, 2, 0], &[2, 1, 1]],
            &[&[2, 0, 0], &[3, 0, 0], &[2, 1, 0], &[0, 0, 3]],
            &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 2], &[0, 1, 3]],
        ],
    )
}

/// Planar pair whose origin has multiplicity 7.
pub fn ex2() -> Vec<PointSet> {
    family(
        2,
        &[
            &[&[2, 0], &[1, 1], &[0, 4], &[1, 3], &[3, 3]],
            &[&[4, 0], &[2, 1], &[0, 4], &[2, 5], &[1, 3]],
        ],
    )
}

/// Three-variable system with a single nonempty stratum I = {1,3}.
pub fn three_var() -> Vec<PointSet> {
    family(
        3,
        &[
            &[&[2, 0, 0], &[2, 2, 0], &[1, 0, 1], &[1, 2, 1], &[0, 0, 4], &[0, 2, 4]],
            &[&[4, 0, 0], &[4, 2, 0], &[2, 0, 1], &[2, 2, 1], &[0, 0, 4], &[0, 2, 4]],
            &[&[1, 0, 0], &[1, 2, 0], &[0, 0, 0], &[0, 2, 0], &[0, 0, 1], &[0, 2, 1]],
        ],
    )
}

/// Four-variable system with six valid strata.
pub fn four_var() -> Vec<PointSet> {
    family(
        4,
        &[
            &[&[1, 0, 0, 0], &[1, 1, 0, 0]],
            &[&[0, 2, 0, 0], &[2, 4, 0, 0], &[3, 0, 0, 0]],
            &[&[0, 0, 1, 0], &[1, 0, 1, 0], &[0, 0, 2, 2], &[0, 0, 3, 1]],
            &[&[0, 0, 0, 3], &[0, 3, 0, 3], &[0, 0, 2, 3], &[0, 0, 0, 5], &[0, 0, 2, 5]],
        ],
    )
}
