//! Exact solver for the k-cop game and its shadow variant.
//!
//! Both games share one engine, an [`Arena`]: cops stand on a subset of the
//! host vertices and move along host edges inside that subset, the robber
//! moves on the whole host, and the cops win when one of them occupies the
//! robber's *target* vertex. The ordinary game uses every vertex and the
//! identity target; the shadow game used for guarding a retract restricts
//! the cops to the retract and targets the robber's image under the
//! retraction.
//!
//! Values count cop moves until capture. Round 0 (cops place, then the
//! robber places knowing their positions) is not counted.

mod dismantle;
mod space;

use alloc::vec;
use alloc::vec::Vec;

pub use dismantle::{is_copwin_dismantlable, Dismantling};
use space::ConfigSpace;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::perfect_matching;

pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

const INF: u32 = u32::MAX;

/// Whose move it is in a game state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Turn {
    Cops,
    Robber,
}

/// Cop multiset (sorted) plus robber vertex and side to move.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub turn: Turn,
}

impl GameState {
    pub fn new(mut cops: Vec<usize>, robber: usize, turn: Turn) -> Self {
        cops.sort_unstable();
        GameState { cops, robber, turn }
    }
}

/// The board a pursuit game is played on.
#[derive(Debug, Clone)]
pub struct Arena {
    host: Graph,
    cop_vertices: Vec<usize>,
    slot_of: Vec<Option<u32>>,
    target: Vec<usize>,
}

impl Arena {
    /// The ordinary game: cops anywhere, capture on the robber's vertex.
    pub fn full(host: &Graph) -> Self {
        let n = host.n();
        Arena {
            host: host.clone(),
            cop_vertices: (0..n).collect(),
            slot_of: (0..n as u32).map(Some).collect(),
            target: (0..n).collect(),
        }
    }

    /// The shadow game: cops confined to `image`, capture when a cop sits
    /// on `map[robber]`. `map` must send every vertex into `image`.
    pub fn shadow(host: &Graph, image: &[usize], map: &[usize]) -> Result<Self> {
        let n = host.n();
        if map.len() != n {
            return Err(Error::invalid("shadow map must cover every host vertex"));
        }
        let mut slot_of = vec![None; n];
        for (i, &v) in image.iter().enumerate() {
            if v >= n || slot_of[v].is_some() {
                return Err(Error::invalid("shadow image must be distinct host vertices"));
            }
            slot_of[v] = Some(i as u32);
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= n || slot_of[t].is_none()) {
            return Err(Error::invalid(alloc::format!(
                "shadow map sends a vertex to {bad}, outside the image"
            )));
        }
        Ok(Arena {
            host: host.clone(),
            cop_vertices: image.to_vec(),
            slot_of,
            target: map.to_vec(),
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn cop_vertices(&self) -> &[usize] {
        &self.cop_vertices
    }

    pub fn target(&self, robber: usize) -> usize {
        self.target[robber]
    }

    /// Number of states (both turns) for `k` cops.
    pub fn state_count(&self, k: usize) -> u64 {
        ConfigSpace::count(self.cop_vertices.len(), k)
            .saturating_mul(self.host.n() as u64)
            .saturating_mul(2)
    }
}

/// Solved game: values of every state and the strategies they induce.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub k: usize,
    pub cops_win: bool,
    /// Cop moves until capture from the best opening under optimal play.
    pub capture_time: Option<u32>,
    /// Best cop placement for round 0 (host vertex ids, sorted).
    pub opening: Vec<usize>,
    arena: Arena,
    space: ConfigSpace,
    successors: Vec<Vec<u32>>,
    cop_turn: Vec<u32>,
    robber_turn: Vec<u32>,
}

/// Solves the game on `arena` with `k` cops by iterating the
/// "capture within t cop moves" labelling to its fixpoint.
pub fn solve_arena(arena: &Arena, k: usize, state_budget: u64) -> Result<GameSolution> {
    if k == 0 {
        return Err(Error::invalid("at least one cop is required"));
    }
    if arena.cop_vertices.is_empty() {
        return Err(Error::invalid("cops have nowhere to stand"));
    }
    let needed = arena.state_count(k);
    if needed > state_budget {
        return Err(Error::Budget {
            what: "game states",
            needed,
            budget: state_budget,
        });
    }
    let space = ConfigSpace::new(arena.cop_vertices.len(), k);
    let successors = cop_successors(arena, &space);
    let labels = label_states(arena, &space, &successors);
    Ok(GameSolution::assemble(arena.clone(), space, successors, labels.0, labels.1))
}

fn cop_successors(arena: &Arena, space: &ConfigSpace) -> Vec<Vec<u32>> {
    let host = &arena.host;
    // Moves of a single cop, in slot indices.
    let moves: Vec<Vec<u32>> = arena
        .cop_vertices
        .iter()
        .map(|&v| {
            host.closed_neighbors(v)
                .filter_map(|w| arena.slot_of[w])
                .collect()
        })
        .collect();
    let k = space.k;
    let mut out = Vec::with_capacity(space.len());
    let mut buf = vec![0u32; k];
    let mut sorted = vec![0u32; k];
    for idx in 0..space.len() {
        let cfg = space.config(idx);
        let mut succ = Vec::new();
        let mut choice = vec![0usize; k];
        'product: loop {
            for i in 0..k {
                buf[i] = moves[cfg[i] as usize][choice[i]];
            }
            sorted.copy_from_slice(&buf);
            sorted.sort_unstable();
            succ.push(space.rank(&sorted) as u32);
            for i in (0..k).rev() {
                choice[i] += 1;
                if choice[i] < moves[cfg[i] as usize].len() {
                    continue 'product;
                }
                choice[i] = 0;
            }
            break;
        }
        succ.sort_unstable();
        succ.dedup();
        out.push(succ);
    }
    out
}

fn label_states(arena: &Arena, space: &ConfigSpace, successors: &[Vec<u32>]) -> (Vec<u32>, Vec<u32>) {
    let n = arena.host.n();
    let states = space.len() * n;
    let mut cop = vec![INF; states];
    let mut rob = vec![INF; states];
    let captured = |c: usize, r: usize| -> bool {
        let t = arena.slot_of[arena.target[r]];
        t.is_some_and(|t| space.config(c).contains(&t))
    };
    for c in 0..space.len() {
        for r in 0..n {
            if captured(c, r) {
                cop[c * n + r] = 0;
                rob[c * n + r] = 0;
            }
        }
    }
    loop {
        let mut changed = false;
        // Robber to move: the robber picks the slowest escape.
        for c in 0..space.len() {
            for r in 0..n {
                let s = c * n + r;
                if rob[s] != INF {
                    continue;
                }
                let worst = arena
                    .host
                    .closed_neighbors(r)
                    .map(|r2| cop[c * n + r2])
                    .max()
                    .unwrap_or(INF);
                if worst != INF {
                    rob[s] = worst;
                    changed = true;
                }
            }
        }
        // Cops to move: one more move than the best reply.
        for (c, succ) in successors.iter().enumerate() {
            for r in 0..n {
                let s = c * n + r;
                if cop[s] != INF {
                    continue;
                }
                let best = succ
                    .iter()
                    .map(|&c2| rob[c2 as usize * n + r])
                    .min()
                    .unwrap_or(INF);
                if best != INF {
                    cop[s] = best + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (cop, rob)
}

impl GameSolution {
    fn assemble(
        arena: Arena,
        space: ConfigSpace,
        successors: Vec<Vec<u32>>,
        cop_turn: Vec<u32>,
        robber_turn: Vec<u32>,
    ) -> Self {
        let n = arena.host.n();
        let mut best: Option<(u32, usize)> = None;
        for c in 0..space.len() {
            let worst = (0..n).map(|r| cop_turn[c * n + r]).max().unwrap_or(0);
            if best.is_none_or(|(b, _)| worst < b) {
                best = Some((worst, c));
            }
        }
        let (value, opening_idx) = best.expect("nonempty configuration space");
        let opening = space
            .config(opening_idx)
            .iter()
            .map(|&s| arena.cop_vertices[s as usize])
            .collect();
        GameSolution {
            k: space.k,
            cops_win: value != INF,
            capture_time: (value != INF).then_some(value),
            opening,
            arena,
            space,
            successors,
            cop_turn,
            robber_turn,
        }
    }

    /// Rebuilds a solution from previously computed state labels (as stored
    /// by [`GameSolution::labels`]); `None` marks a robber-win state.
    pub fn from_labels(
        arena: &Arena,
        k: usize,
        cop_turn: &[Option<u32>],
        robber_turn: &[Option<u32>],
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("at least one cop is required"));
        }
        let space = ConfigSpace::new(arena.cop_vertices.len(), k);
        let states = space.len() * arena.host.n();
        if cop_turn.len() != states || robber_turn.len() != states {
            return Err(Error::invalid(alloc::format!(
                "expected {states} labels per turn, got {} and {}",
                cop_turn.len(),
                robber_turn.len()
            )));
        }
        let unwrap = |v: &[Option<u32>]| v.iter().map(|x| x.unwrap_or(INF)).collect::<Vec<_>>();
        let successors = cop_successors(arena, &space);
        Ok(GameSolution::assemble(
            arena.clone(),
            space,
            successors,
            unwrap(cop_turn),
            unwrap(robber_turn),
        ))
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn state_count(&self) -> usize {
        self.cop_turn.len() * 2
    }

    /// Every state label in index order: `(turn, cops, robber, label)`.
    pub fn labels(&self) -> impl Iterator<Item = (Turn, Vec<usize>, usize, Option<u32>)> + '_ {
        let n = self.arena.host.n();
        [Turn::Cops, Turn::Robber].into_iter().flat_map(move |turn| {
            let table = match turn {
                Turn::Cops => &self.cop_turn,
                Turn::Robber => &self.robber_turn,
            };
            table.iter().enumerate().map(move |(s, &v)| {
                let cops = self.positions(s / n);
                (turn, cops, s % n, (v != INF).then_some(v))
            })
        })
    }

    fn positions(&self, config: usize) -> Vec<usize> {
        self.space
            .config(config)
            .iter()
            .map(|&s| self.arena.cop_vertices[s as usize])
            .collect()
    }

    fn config_of(&self, cops: &[usize]) -> Result<usize> {
        if cops.len() != self.k {
            return Err(Error::invalid(alloc::format!(
                "expected {} cops, got {}",
                self.k,
                cops.len()
            )));
        }
        let mut slots = Vec::with_capacity(cops.len());
        for &c in cops {
            let slot = self
                .arena
                .slot_of
                .get(c)
                .copied()
                .flatten()
                .ok_or_else(|| Error::invalid(alloc::format!("cop on {c} is outside the arena")))?;
            slots.push(slot);
        }
        slots.sort_unstable();
        Ok(self.space.rank(&slots))
    }

    /// Cop moves to capture from `state`, `None` if the robber escapes forever.
    pub fn value(&self, state: &GameState) -> Result<Option<u32>> {
        let n = self.arena.host.n();
        if state.robber >= n {
            return Err(Error::invalid("robber vertex out of range"));
        }
        let s = self.config_of(&state.cops)? * n + state.robber;
        let v = match state.turn {
            Turn::Cops => self.cop_turn[s],
            Turn::Robber => self.robber_turn[s],
        };
        Ok((v != INF).then_some(v))
    }

    pub fn is_captured(&self, cops: &[usize], robber: usize) -> bool {
        cops.contains(&self.arena.target[robber])
    }

    /// Optimal cop reply: new positions, listed in the same order as `cops`.
    /// In a lost state the cops pick the reply the robber needs longest to
    /// exploit, which in practice means standing still.
    pub fn cop_move(&self, cops: &[usize], robber: usize) -> Result<Vec<usize>> {
        let n = self.arena.host.n();
        let c = self.config_of(cops)?;
        let current = self.cop_turn[c * n + robber];
        if current == 0 {
            return Ok(cops.to_vec());
        }
        let next = self.successors[c]
            .iter()
            .copied()
            .filter(|&c2| {
                current == INF || self.robber_turn[c2 as usize * n + robber].saturating_add(1) == current
            })
            .min_by_key(|&c2| (self.robber_turn[c2 as usize * n + robber], c2 as usize != c, c2))
            .ok_or_else(|| Error::Internal("no cop successor".into()))?;
        let targets = self.positions(next as usize);
        let host = &self.arena.host;
        let assignment = perfect_matching(cops.len(), |i, j| host.adjacent_or_equal(cops[i], targets[j]))
            .ok_or_else(|| Error::Internal("successor configuration not reachable".into()))?;
        Ok(assignment.into_iter().map(|j| targets[j]).collect())
    }

    /// Robber reply maximising the remaining capture time (staying in a
    /// robber-win region when one is reachable).
    pub fn robber_move(&self, cops: &[usize], robber: usize) -> Result<usize> {
        let n = self.arena.host.n();
        let c = self.config_of(cops)?;
        Ok(self
            .arena
            .host
            .closed_neighbors(robber)
            .max_by_key(|&r2| (self.cop_turn[c * n + r2], core::cmp::Reverse(r2)))
            .expect("closed neighbourhood is nonempty"))
    }

    /// Robber placement in round 0 against the given cop placement.
    pub fn robber_placement(&self, cops: &[usize]) -> Result<usize> {
        let n = self.arena.host.n();
        let c = self.config_of(cops)?;
        Ok((0..n)
            .max_by_key(|&r| (self.cop_turn[c * n + r], core::cmp::Reverse(r)))
            .expect("nonempty host"))
    }

    /// Worst-case capture time when the cops open on `cops`.
    pub fn opening_value(&self, cops: &[usize]) -> Result<Option<u32>> {
        let n = self.arena.host.n();
        let c = self.config_of(cops)?;
        let worst = (0..n).map(|r| self.cop_turn[c * n + r]).max().unwrap_or(0);
        Ok((worst != INF).then_some(worst))
    }
}

/// Solves the ordinary game on a connected graph with `k` cops.
pub fn solve_k_cop_game(g: &Graph, k: usize, state_budget: u64) -> Result<GameSolution> {
    if g.n() == 0 {
        return Err(Error::invalid("empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::invalid("the game solver requires a connected graph"));
    }
    solve_arena(&Arena::full(g), k, state_budget)
}

/// Smallest `k <= k_max` for which the cops win.
pub fn cop_number(g: &Graph, k_max: usize, state_budget: u64) -> Result<usize> {
    cop_number_with_solution(g, k_max, state_budget).map(|s| s.k)
}

/// Like [`cop_number`] but returns the winning solution.
pub fn cop_number_with_solution(g: &Graph, k_max: usize, state_budget: u64) -> Result<GameSolution> {
    for k in 1..=k_max {
        let sol = solve_k_cop_game(g, k, state_budget)?;
        if sol.cops_win {
            return Ok(sol);
        }
    }
    Err(Error::BoundNotFound { k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    const B: u64 = DEFAULT_STATE_BUDGET;

    #[test]
    fn clique_is_copwin_in_one_move() {
        let s = solve_k_cop_game(&generate::clique(5), 1, B).unwrap();
        assert!(s.cops_win);
        assert_eq!(s.capture_time, Some(1));
    }

    #[test]
    fn p4_capture_time_from_centre() {
        let g = generate::path(4);
        let s = solve_k_cop_game(&g, 1, B).unwrap();
        assert_eq!(s.capture_time, Some(2));
        assert!(s.opening == vec![1] || s.opening == vec![2]);
        // The other centre vertex is just as good, an end vertex is worse.
        assert_eq!(s.opening_value(&[1]).unwrap(), Some(2));
        assert_eq!(s.opening_value(&[2]).unwrap(), Some(2));
        assert_eq!(s.opening_value(&[0]).unwrap(), Some(3));
    }

    #[test]
    fn cycle_needs_two_cops() {
        let g = generate::cycle(4);
        assert!(!solve_k_cop_game(&g, 1, B).unwrap().cops_win);
        assert_eq!(cop_number(&g, 3, B).unwrap(), 2);
    }

    #[test]
    fn single_vertex_is_captured_at_placement() {
        let g = generate::path(1);
        let s = solve_k_cop_game(&g, 1, B).unwrap();
        assert_eq!(s.capture_time, Some(0));
    }

    #[test]
    fn errors() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(solve_k_cop_game(&g, 1, B), Err(Error::InvalidInput(_))));
        let grid = generate::grid(4, 4);
        assert!(matches!(solve_k_cop_game(&grid, 2, 100), Err(Error::Budget { .. })));
        assert!(matches!(
            cop_number(&generate::cycle(5), 1, B),
            Err(Error::BoundNotFound { k_max: 1 })
        ));
    }

    #[test]
    fn strategies_replay_the_capture_time() {
        for (g, k) in [(generate::path(6), 1), (generate::grid(3, 3), 2), (generate::k_tree(2, 7, 3).unwrap(), 1)] {
            let s = solve_k_cop_game(&g, k, B).unwrap();
            assert!(s.cops_win);
            let mut cops = s.opening.clone();
            let mut robber = s.robber_placement(&cops).unwrap();
            let mut moves = 0;
            while !s.is_captured(&cops, robber) {
                assert!(moves < 100);
                cops = s.cop_move(&cops, robber).unwrap();
                moves += 1;
                if s.is_captured(&cops, robber) {
                    break;
                }
                robber = s.robber_move(&cops, robber).unwrap();
            }
            assert_eq!(Some(moves), s.capture_time);
        }
    }

    #[test]
    fn labels_round_trip() {
        let g = generate::cycle(5);
        let s = solve_k_cop_game(&g, 2, B).unwrap();
        let (mut cop, mut rob) = (Vec::new(), Vec::new());
        for (turn, _, _, v) in s.labels() {
            match turn {
                Turn::Cops => cop.push(v),
                Turn::Robber => rob.push(v),
            }
        }
        let back = GameSolution::from_labels(s.arena(), 2, &cop, &rob).unwrap();
        assert_eq!(back.capture_time, s.capture_time);
        assert_eq!(back.opening, s.opening);
    }
}
