use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::enumerate::{checked_space, enumerate_proper};
use crate::coloring::{blocked_into, complement};
use crate::hypergraph::Hypergraph;
use crate::Result;

/// Graph on proper colorings joining colorings one Glauber move apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveGraph {
    /// Proper coloring codes, ascending; node `i` is `nodes[i]`.
    pub nodes: Vec<u64>,
    pub adjacency: Vec<Vec<u32>>,
    /// Component id of each node. Ids are assigned in node order.
    pub component: Vec<u32>,
    pub component_sizes: Vec<usize>,
    /// Moves from a proper coloring that left the proper set.
    pub exits: usize,
}

impl MoveGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(i, nbrs)| nbrs.iter().all(|&j| self.adjacency[j as usize].binary_search(&(i as u32)).is_ok()))
    }

    /// Largest component (lowest id on ties).
    pub fn giant(&self) -> Option<usize> {
        self.component_sizes.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).map(|(i, _)| i)
    }

    pub fn giant_fraction(&self) -> f64 {
        match self.giant() {
            Some(g) => self.component_sizes[g] as f64 / self.nodes.len() as f64,
            None => 0.0,
        }
    }

    /// `(good colorings inside the giant component, giant size, good total)`.
    pub fn good_in_giant(&self, good: &[bool]) -> (usize, usize, usize) {
        let Some(g) = self.giant() else { return (0, 0, 0) };
        let inside = self.component.iter().zip(good).filter(|(&c, &ok)| c as usize == g && ok).count();
        (inside, self.component_sizes[g], good.iter().filter(|&&b| b).count())
    }
}

pub fn move_graph(h: &Hypergraph, q: usize, budget: u64) -> Result<MoveGraph> {
    checked_space(h.n(), q, budget)?;
    let nodes = enumerate_proper(h, q, budget)?.proper;
    let powers: Vec<u64> = (0..h.n()).scan(1u64, |p, _| {
        let cur = *p;
        *p = p.saturating_mul(q as u64);
        Some(cur)
    }).collect();

    let mut adjacency = vec![Vec::new(); nodes.len()];
    let mut exits = 0;
    let mut colors = vec![0u32; h.n()];
    let mut blocked = Vec::new();
    for (i, &code) in nodes.iter().enumerate() {
        let mut rest = code;
        for c in colors.iter_mut() {
            *c = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        for v in 0..h.n() {
            blocked_into(h, &colors, v, &mut blocked);
            let current = u64::from(colors[v]);
            for c in complement(&blocked, q) {
                let c = c as u64;
                if c == current {
                    continue;
                }
                let target = code - current * powers[v] + c * powers[v];
                match nodes.binary_search(&target) {
                    Ok(j) => adjacency[i].push(j as u32),
                    Err(_) => exits += 1,
                }
            }
        }
        adjacency[i].sort_unstable();
    }

    let mut component = vec![u32::MAX; nodes.len()];
    let mut component_sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..nodes.len() {
        if component[start] != u32::MAX {
            continue;
        }
        let id = component_sizes.len() as u32;
        component[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(i) = queue.pop_front() {
            size += 1;
            for &j in &adjacency[i] {
                if component[j as usize] == u32::MAX {
                    component[j as usize] = id;
                    queue.push_back(j as usize);
                }
            }
        }
        component_sizes.push(size);
    }
    Ok(MoveGraph { nodes, adjacency, component, component_sizes, exits })
}
