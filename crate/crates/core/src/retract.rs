//! Retractions: homomorphisms onto an induced subgraph that fix it pointwise.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph, VertexSet, UNREACHABLE};

/// Backtracking nodes explored by [`find_retraction`] before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

/// A retraction of a host graph onto the subgraph induced by `image`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Retraction {
    image: VertexSet,
    map: Vec<usize>,
}

impl Retraction {
    /// Wraps `map` after checking it is a retraction of `g` onto `image`.
    pub fn new(g: &Graph, image: VertexSet, map: Vec<usize>) -> Result<Self> {
        let r = Retraction { image, map };
        r.validate(g)?;
        Ok(r)
    }

    pub fn image(&self) -> &VertexSet {
        &self.image
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    /// Checks the retraction invariants: total map into the image, identity
    /// on the image, and every host edge sent to an edge or a single vertex.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.image.is_empty() {
            return Err(Error::invalid("retraction image is empty"));
        }
        if self.map.len() != g.n() {
            return Err(Error::invalid("retraction map must be total"));
        }
        for (x, &fx) in self.map.iter().enumerate() {
            if !self.image.contains(fx) {
                return Err(Error::invalid(format!("f({x}) = {fx} lies outside the image")));
            }
        }
        if let Some(x) = self.image.iter().find(|&x| self.map[x] != x) {
            return Err(Error::invalid(format!("f is not the identity on image vertex {x}")));
        }
        if let Some((x, y)) = g
            .edges()
            .find(|&(x, y)| !g.adjacent_or_equal(self.map[x], self.map[y]))
        {
            return Err(Error::invalid(format!(
                "edge ({x},{y}) maps to non-adjacent ({},{})",
                self.map[x], self.map[y]
            )));
        }
        Ok(())
    }
}

/// Searches for a retraction of `g` onto `h` by backtracking over the
/// images of the vertices outside `h`.
///
/// `Ok(None)` means the search space was exhausted: no retraction exists.
pub fn find_retraction(g: &Graph, h: &InducedSubgraph<'_>, budget: u64) -> Result<Option<Retraction>> {
    let (mut found, _) = find_retractions(g, h, 1, budget)?;
    Ok(found.pop())
}

/// Enumerates up to `limit` distinct retractions of `g` onto `h`. The flag
/// is true when the enumeration is complete (every retraction was listed).
pub fn find_retractions(
    g: &Graph,
    h: &InducedSubgraph<'_>,
    limit: usize,
    budget: u64,
) -> Result<(Vec<Retraction>, bool)> {
    let image = &h.support;
    if image.is_empty() {
        return Err(Error::invalid("cannot retract onto the empty subgraph"));
    }
    if h.host != g {
        return Err(Error::invalid("subgraph is not induced in this host"));
    }
    let n = g.n();
    let dg = g.distances();
    let dh = h.internal_distances();
    let pos: Vec<usize> = image.iter().collect();

    // A homomorphism never stretches distances, so f(x) must be within
    // d_G(x, y) of every fixed vertex y when measured inside H.
    let mut domains: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in (0..n).filter(|&x| !image.contains(x)) {
        let mut dom: Vec<usize> = (0..pos.len())
            .filter(|&i| {
                (0..pos.len()).all(|j| {
                    let bound = dg.get(x, pos[j]);
                    bound == UNREACHABLE || dh.get(i, j) <= bound
                })
            })
            .map(|i| pos[i])
            .collect();
        if dom.is_empty() {
            return Ok((Vec::new(), true));
        }
        dom.sort_by_key(|&y| (dg.get(x, y), y));
        domains[x] = dom;
    }

    let mut order: Vec<usize> = (0..n).filter(|&x| !image.contains(x)).collect();
    order.sort_by_key(|&x| (core::cmp::Reverse(g.degree(x)), x));

    let mut search = Search {
        g,
        order: &order,
        domains: &domains,
        map: (0..n).map(|x| image.contains(x).then_some(x)).collect(),
        nodes: 0,
        budget,
        limit,
        found: Vec::new(),
    };
    let complete = search.assign(0)?;
    let mut out = Vec::with_capacity(search.found.len());
    for map in search.found {
        let r = Retraction {
            image: image.clone(),
            map,
        };
        r.validate(g).map_err(|e| Error::Internal(format!("retraction search: {e}")))?;
        out.push(r);
    }
    Ok((out, complete))
}

struct Search<'a> {
    g: &'a Graph,
    order: &'a [usize],
    domains: &'a [Vec<usize>],
    map: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns false once `limit` maps have been collected.
    fn assign(&mut self, depth: usize) -> Result<bool> {
        let Some(&x) = self.order.get(depth) else {
            self.found
                .push(self.map.iter().map(|m| m.expect("all assigned")).collect());
            return Ok(self.found.len() < self.limit);
        };
        for i in 0..self.domains[x].len() {
            let y = self.domains[x][i];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget {
                    what: "retraction search nodes",
                    needed: self.nodes,
                    budget: self.budget,
                });
            }
            let g = self.g;
            let consistent = g
                .neighbors(x)
                .iter()
                .all(|&w| self.map[w].is_none_or(|fw| g.adjacent_or_equal(y, fw)));
            if consistent {
                self.map[x] = Some(y);
                let go_on = self.assign(depth + 1)?;
                self.map[x] = None;
                if !go_on {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The distance-layer retraction onto an isometric path `p_0 .. p_L`:
/// `f(x) = p_min(d(x, p_0), L)`.
pub fn retraction_for_isometric_path(g: &Graph, path: &[usize]) -> Result<Retraction> {
    if !g.is_isometric_path(path)? {
        return Err(Error::invalid("sequence is not an isometric path"));
    }
    let last = path.len() - 1;
    let d = g.bfs(path[0]);
    let map = (0..g.n())
        .map(|x| path[(d[x] as usize).min(last)])
        .collect();
    let r = Retraction {
        image: path.iter().copied().collect(),
        map,
    };
    r.validate(g)
        .map_err(|e| Error::Internal(format!("path retraction failed verification: {e}")))?;
    Ok(r)
}

/// Retraction onto a clique: identity on the clique, everything else goes
/// to its smallest vertex.
pub fn retraction_for_clique(g: &Graph, s: &VertexSet) -> Result<Retraction> {
    let anchor = s
        .first()
        .ok_or_else(|| Error::invalid("clique retraction needs a nonempty set"))?;
    if s.as_slice().last().is_some_and(|&v| v >= g.n()) {
        return Err(Error::invalid("clique vertex out of range"));
    }
    if !g.is_clique(s) {
        return Err(Error::invalid(format!("{s} is not a clique")));
    }
    let map = (0..g.n())
        .map(|x| if s.contains(x) { x } else { anchor })
        .collect();
    Ok(Retraction {
        image: s.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn brute_force_exists(g: &Graph, image: &VertexSet) -> bool {
        // Enumerate every map V -> image fixing the image.
        let free: Vec<usize> = (0..g.n()).filter(|&x| !image.contains(x)).collect();
        let targets: Vec<usize> = image.iter().collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut map: Vec<usize> = (0..g.n()).collect();
            for (i, &x) in free.iter().enumerate() {
                map[x] = targets[idx[i]];
            }
            if g.edges().all(|(x, y)| g.adjacent_or_equal(map[x], map[y])) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == free.len() {
                    return false;
                }
                idx[i] += 1;
                if idx[i] < targets.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn identity_when_image_is_everything() {
        let g = generate::petersen();
        let all: VertexSet = (0..10).collect();
        let r = find_retraction(&g, &g.induced(all).unwrap(), DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .unwrap();
        assert!(r.map().iter().enumerate().all(|(i, &f)| i == f));
    }

    #[test]
    fn c4_onto_an_edge() {
        let g = generate::cycle(4);
        let r = Retraction::new(&g, VertexSet::from(vec![0, 1]), vec![0, 1, 1, 0]).unwrap();
        assert_eq!((r.apply(2), r.apply(3)), (1, 0));
        let found = find_retraction(&g, &g.induced(VertexSet::from(vec![0, 1])).unwrap(), 1000)
            .unwrap()
            .unwrap();
        found.validate(&g).unwrap();
    }

    #[test]
    fn search_agrees_with_enumeration_on_c5() {
        let g = generate::cycle(5);
        for mask in 1u32..(1 << 5) {
            let image: VertexSet = (0..5).filter(|&v| mask & (1 << v) != 0).collect();
            let h = g.induced(image.clone()).unwrap();
            let found = find_retraction(&g, &h, DEFAULT_SEARCH_BUDGET).unwrap();
            assert_eq!(found.is_some(), brute_force_exists(&g, &image), "image {image}");
        }
        // The induced P3 {0,1,2} is a retract of C5.
        let p3 = g.induced(VertexSet::from(vec![0, 1, 2])).unwrap();
        let r = find_retraction(&g, &p3, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        r.validate(&g).unwrap();
        assert!(Retraction::new(&g, VertexSet::from(vec![0, 1, 2]), vec![0, 1, 2, 1, 1]).is_ok());
    }

    #[test]
    fn enumeration_lists_every_retraction() {
        // C4 onto the edge {0,1}: any choice for vertices 2 and 3 works.
        let g = generate::cycle(4);
        let h = g.induced(VertexSet::from(vec![0, 1])).unwrap();
        let (all, complete) = find_retractions(&g, &h, 100, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(complete);
        let mut maps: Vec<Vec<usize>> = all.iter().map(|r| r.map().to_vec()).collect();
        maps.sort();
        assert_eq!(
            maps,
            vec![vec![0, 1, 0, 0], vec![0, 1, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 1, 1]]
        );
        let (one, complete) = find_retractions(&g, &h, 1, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(one.len(), 1);
        assert!(!complete);
    }

    #[test]
    fn search_budget_is_reported() {
        let g = generate::grid(4, 4);
        let h = g.induced(VertexSet::from(vec![0, 15])).unwrap();
        assert!(matches!(
            find_retraction(&g, &h, 1),
            Err(Error::Budget { .. }) | Ok(None)
        ));
    }

    #[test]
    fn path_retractions() {
        let c6 = generate::cycle(6);
        let r = retraction_for_isometric_path(&c6, &[0, 1, 2, 3]).unwrap();
        assert_eq!((r.apply(5), r.apply(4)), (1, 2));
        for i in 0..4 {
            assert_eq!(r.apply(i), i);
        }
        // Bottom row of the 3x3 grid.
        let g = generate::grid(3, 3);
        let row = [0, 1, 2];
        let r = retraction_for_isometric_path(&g, &row).unwrap();
        assert_eq!(r.apply(4), 2);
        r.validate(&g).unwrap();
        assert!(retraction_for_isometric_path(&c6, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn clique_retractions() {
        let k4 = generate::clique(4);
        let r = retraction_for_clique(&k4, &VertexSet::from(vec![0, 1])).unwrap();
        assert_eq!((r.apply(2), r.apply(3)), (0, 0));
        let p3 = generate::path(3);
        let r = retraction_for_clique(&p3, &VertexSet::singleton(1)).unwrap();
        assert!(r.map().iter().all(|&f| f == 1));
        assert!(retraction_for_clique(&p3, &VertexSet::from(vec![0, 2])).is_err());
    }
}
