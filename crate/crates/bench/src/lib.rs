//! Fixtures shared by the benchmarks.

use homog_core::{Domain, Element, Ideal};

/// A quadratic order together with two ideals of moderate norm.
pub fn ideal_pair(d: i64) -> (Domain, Ideal, Ideal) {
    let dom = Domain::quadratic(d, 1).expect("squarefree");
    let i = dom
        .ideal_from_generators(&[Element::quadratic(17, 3), Element::quadratic(5, -2)])
        .expect("nonzero");
    let j = dom
        .ideal_from_generators(&[Element::quadratic(11, 7), Element::integer(13)])
        .expect("nonzero");
    (dom, i, j)
}
