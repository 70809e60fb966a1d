use serde::Serialize;

/// Summary of the functional graph of a self-map of a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n_points: u64,
    pub periodic_count: u64,
    /// Cycle lengths in ascending order (a multiset).
    pub cycle_lengths: Vec<u64>,
    /// Entry `k` is `|phi^{k+1}(S)|`; the list stops once two consecutive
    /// sizes agree (counting `|S|` itself), so the last entry is `periodic_count`.
    pub image_sizes: Vec<u64>,
}

impl GraphStats {
    pub fn periodic_proportion(&self) -> (u64, u64) {
        (self.periodic_count, self.n_points)
    }
}

/// Peels the graph in layers of in-degree zero nodes.
///
/// Returns the layer sizes (layer `k` holds the nodes whose longest backward
/// chain has length exactly `k`) and a mask of surviving (periodic) nodes.
pub(crate) fn peel(table: &[u32], indeg: &mut Vec<u32>, queue: &mut Vec<u32>) -> Vec<u64> {
    indeg.clear();
    indeg.resize(table.len(), 0);
    for &t in table {
        indeg[t as usize] += 1;
    }
    queue.clear();
    queue.extend((0..table.len() as u32).filter(|&i| indeg[i as usize] == 0));
    let mut layers = Vec::new();
    let mut start = 0;
    while start < queue.len() {
        let end = queue.len();
        layers.push((end - start) as u64);
        for k in start..end {
            let t = table[queue[k] as usize] as usize;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(t as u32);
            }
        }
        start = end;
    }
    layers
}

pub fn graph_stats(table: &[u32]) -> GraphStats {
    let n = table.len() as u64;
    let (mut indeg, mut queue) = (Vec::new(), Vec::new());
    let layers = peel(table, &mut indeg, &mut queue);
    let mut removed = vec![false; table.len()];
    for &i in &queue {
        removed[i as usize] = true;
    }
    let periodic_count = n - queue.len() as u64;

    let mut cycle_lengths = Vec::new();
    let mut seen = removed;
    for start in 0..table.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = table[x] as usize;
        }
        cycle_lengths.push(len);
    }
    cycle_lengths.sort_unstable();

    let mut image_sizes = Vec::new();
    let mut prev = n;
    let mut size = n;
    for k in 0..=layers.len() {
        size -= layers.get(k).copied().unwrap_or(0);
        image_sizes.push(size);
        if size == prev {
            break;
        }
        prev = size;
    }
    GraphStats { n_points: n, periodic_count, cycle_lengths, image_sizes }
}
