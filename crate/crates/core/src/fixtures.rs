//! Small named graphs that show up throughout the docs and tests.

use crate::graph::Dag;

/// `0 -> 1 -> 2`
pub fn chain3() -> Dag {
    Dag::new(3, [(0, 1), (1, 2)]).unwrap()
}

/// `0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3`
pub fn diamond() -> Dag {
    Dag::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// `0 -> 2, 0 -> 3, 1 -> 2, 1 -> 3`: the pair (2, 3) has two LCAs.
pub fn butterfly() -> Dag {
    Dag::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}
