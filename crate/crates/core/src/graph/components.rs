use super::Grid;
use crate::error::{Error, Result};

/// Per-node survival flags for one sampled failure outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliveMask(Vec<bool>);

impl AliveMask {
    pub fn new(flags: Vec<bool>) -> Self {
        AliveMask(flags)
    }

    pub fn all_alive(n: usize) -> Self {
        AliveMask(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_alive(&self, node: usize) -> bool {
        self.0[node]
    }

    pub fn alive_count(&self) -> usize {
        self.0.iter().filter(|&&a| a).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

/// Connected components of the alive subgraph.
///
/// Component 0 is the largest; ties go to the component holding the smaller
/// node index. Dead nodes carry [`ComponentPartition::DEAD`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    component_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    pub const DEAD: usize = usize::MAX;

    pub fn component_of(&self, node: usize) -> Option<usize> {
        let id = self.component_of[node];
        (id != Self::DEAD).then_some(id)
    }

    /// Component sizes, descending.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

fn check_mask(grid: &Grid, mask: &AliveMask) -> Result<()> {
    if mask.len() != grid.node_count() {
        return Err(Error::MaskLength {
            got: mask.len(),
            expected: grid.node_count(),
        });
    }
    Ok(())
}

pub fn connected_components(grid: &Grid, mask: &AliveMask) -> Result<ComponentPartition> {
    check_mask(grid, mask)?;
    let n = grid.node_count();
    let mut raw = vec![ComponentPartition::DEAD; n];
    let mut raw_sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if !mask.is_alive(start) || raw[start] != ComponentPartition::DEAD {
            continue;
        }
        let id = raw_sizes.len();
        raw[start] = id;
        stack.push(start);
        let mut size = 0;
        while let Some(node) = stack.pop() {
            size += 1;
            for &next in grid.neighbors(node) {
                if mask.is_alive(next) && raw[next] == ComponentPartition::DEAD {
                    raw[next] = id;
                    stack.push(next);
                }
            }
        }
        raw_sizes.push(size);
    }

    // Raw ids already follow smallest-node order, so a stable sort by size
    // gives the documented tie rule.
    let mut order: Vec<usize> = (0..raw_sizes.len()).collect();
    order.sort_by(|&a, &b| raw_sizes[b].cmp(&raw_sizes[a]));
    let mut relabel = vec![0; raw_sizes.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        relabel[old_id] = new_id;
    }
    let component_of = raw
        .into_iter()
        .map(|id| {
            if id == ComponentPartition::DEAD {
                id
            } else {
                relabel[id]
            }
        })
        .collect();
    let sizes = order.iter().map(|&id| raw_sizes[id]).collect();
    Ok(ComponentPartition {
        component_of,
        sizes,
    })
}

/// Size of the largest alive component (`N_s`); 0 when nothing survives.
pub fn largest_component_size(grid: &Grid, mask: &AliveMask) -> Result<usize> {
    check_mask(grid, mask)?;
    let mut scratch = Vec::new();
    let mut seen = vec![false; grid.node_count()];
    Ok(largest_component_with(
        grid,
        mask.as_slice(),
        &mut seen,
        &mut scratch,
    ))
}

/// Allocation-free variant for the simulation hot loop. `seen` must be all
/// false on entry and is left dirty.
pub(crate) fn largest_component_with(
    grid: &Grid,
    alive: &[bool],
    seen: &mut [bool],
    stack: &mut Vec<usize>,
) -> usize {
    let mut best = 0;
    let mut remaining = alive.iter().filter(|&&a| a).count();
    for start in 0..grid.node_count() {
        if remaining <= best {
            break;
        }
        if !alive[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut size = 0;
        while let Some(node) = stack.pop() {
            size += 1;
            for &next in grid.neighbors(node) {
                if alive[next] && !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        remaining -= size;
        best = best.max(size);
    }
    best
}
