//! Fixed inputs shared by the benchmarks.

use metricdim::constructions::{grid, md_complete, md_star_unchecked};
use metricdim::Graph;

/// Named graphs of increasing size, all connected.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("petersen", petersen()),
        ("cycle-24", Graph::cycle(24).unwrap()),
        ("md-complete-3", md_complete(3).unwrap().graph),
        ("grid-5x5", grid(&[5, 5]).unwrap()),
        ("md-star-3", md_star_unchecked(3).unwrap().graph),
        ("grid-6x7", grid(&[6, 7]).unwrap()),
    ]
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edge_list(10, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_connected() {
        for (name, g) in corpus() {
            assert!(g.is_connected(), "{name}");
        }
        let p = petersen();
        assert_eq!((p.edge_count(), p.min_degree(), p.max_degree()), (15, 3, 3));
    }
}
