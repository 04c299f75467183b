//! Algorithm X over universes of at most 64 items, with subsets as `u64`
//! bitmasks.
//!
//! At each step the solver branches on the uncovered item with the fewest
//! remaining candidate subsets (ties to the lowest item index), trying the
//! candidates in input order. Solutions are reported in that search order,
//! so results are deterministic.

#[derive(Debug, Clone)]
pub struct ExactCover {
    universe: u64,
    subsets: Vec<u64>,
}

impl ExactCover {
    /// `items` must be at most 64; empty subsets and subsets outside the
    /// universe are dropped.
    pub fn new(items: usize, subsets: Vec<u64>) -> Self {
        let universe = universe(items);
        let subsets = subsets
            .into_iter()
            .filter(|&s| s != 0 && s & !universe == 0)
            .collect();
        Self { universe, subsets }
    }

    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    /// Indices (into `subsets()`) of the first solution found.
    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        Search::default()
            .first(self.universe, &self.subsets, &mut out)
            .then_some(out)
    }

    pub fn count(&self) -> u64 {
        let mut n = 0;
        self.search(&mut |_| {
            n += 1;
            true
        });
        n
    }

    /// Calls `visit` on each solution until it returns `false`.
    pub fn search(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        Search::default().run(self.universe, &self.subsets, visit);
    }
}

fn universe(items: usize) -> u64 {
    assert!(items <= 64, "at most 64 items");
    if items == 64 {
        u64::MAX
    } else {
        (1u64 << items) - 1
    }
}

/// Reusable scratch space for repeated searches.
#[derive(Debug, Clone, Default)]
pub struct Search {
    live: Vec<Vec<u32>>,
    chosen: Vec<usize>,
}

impl Search {
    /// Writes the first exact cover of `universe` by `subsets` into `out`.
    /// Every subset must be nonzero and inside the universe.
    pub fn first(&mut self, universe: u64, subsets: &[u64], out: &mut Vec<usize>) -> bool {
        out.clear();
        let mut found = false;
        self.run(universe, subsets, &mut |sol| {
            out.extend_from_slice(sol);
            found = true;
            false
        });
        found
    }

    pub fn run(&mut self, universe: u64, subsets: &[u64], visit: &mut dyn FnMut(&[usize]) -> bool) {
        debug_assert!(subsets.iter().all(|&s| s != 0 && s & !universe == 0));
        if self.live.is_empty() {
            self.live.push(Vec::new());
        }
        self.live[0].clear();
        self.live[0].extend(0..subsets.len() as u32);
        self.chosen.clear();
        self.recurse(universe, subsets, 0, 0, visit);
    }

    fn recurse(
        &mut self,
        universe: u64,
        subsets: &[u64],
        depth: usize,
        covered: u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if covered == universe {
            return visit(&self.chosen);
        }
        let mut counts = [0u32; 64];
        for &i in &self.live[depth] {
            let mut bits = subsets[i as usize];
            while bits != 0 {
                counts[bits.trailing_zeros() as usize] += 1;
                bits &= bits - 1;
            }
        }
        let mut best: Option<(u32, usize)> = None;
        let mut open = universe & !covered;
        while open != 0 {
            let item = open.trailing_zeros() as usize;
            open &= open - 1;
            let c = counts[item];
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, item));
                if c == 0 {
                    break;
                }
            }
        }
        let Some((count, item)) = best else {
            return true;
        };
        if count == 0 {
            return true;
        }
        if self.live.len() <= depth + 1 {
            self.live.push(Vec::new());
        }
        let bit = 1u64 << item;
        let mut pos = 0;
        while pos < self.live[depth].len() {
            let i = self.live[depth][pos] as usize;
            pos += 1;
            let s = subsets[i];
            if s & bit == 0 {
                continue;
            }
            let next_covered = covered | s;
            let (head, tail) = self.live.split_at_mut(depth + 1);
            let next = &mut tail[0];
            next.clear();
            next.extend(head[depth].iter().copied().filter(|&j| subsets[j as usize] & next_covered == 0));
            self.chosen.push(i);
            let keep_going = self.recurse(universe, subsets, depth + 1, next_covered, visit);
            self.chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(v: &[usize]) -> u64 {
        v.iter().fold(0u64, |m, &i| m | 1 << i)
    }

    #[test]
    fn knuth_example() {
        // Knuth's 7-item example; the unique cover is rows A, D, E
        let subsets = vec![
            mask(&[2, 4, 5]),
            mask(&[0, 3, 6]),
            mask(&[1, 2, 5]),
            mask(&[0, 3]),
            mask(&[1, 6]),
            mask(&[3, 4, 6]),
        ];
        let ec = ExactCover::new(7, subsets);
        assert_eq!(ec.count(), 1);
        let mut sol = ec.first().unwrap();
        sol.sort();
        assert_eq!(sol, vec![0, 3, 4]);
    }

    #[test]
    fn counts_domino_tilings() {
        // 2 x 4 board has 5 domino tilings, 2 x 6 has 13
        for (width, want) in [(4, 5), (6, 13)] {
            let mut subsets = Vec::new();
            for r in 0..2 {
                for c in 0..width {
                    let i = r * width + c;
                    if c + 1 < width {
                        subsets.push(mask(&[i, i + 1]));
                    }
                    if r == 0 {
                        subsets.push(mask(&[i, i + width]));
                    }
                }
            }
            assert_eq!(ExactCover::new(2 * width, subsets).count(), want);
        }
    }

    #[test]
    fn empty_universe_has_one_cover() {
        assert_eq!(ExactCover::new(0, vec![]).count(), 1);
        assert_eq!(ExactCover::new(3, vec![0b011]).count(), 0);
    }

    #[test]
    fn reused_search_matches_fresh() {
        let subsets = vec![mask(&[0, 1]), mask(&[2]), mask(&[0]), mask(&[1, 2])];
        let mut search = Search::default();
        let mut out = Vec::new();
        assert!(search.first(0b111, &subsets, &mut out));
        assert_eq!(out, vec![0, 1]);
        assert!(!search.first(0b111, &subsets[..1], &mut out));
        assert!(search.first(0b111, &subsets, &mut out));
        assert_eq!(out, ExactCover::new(3, subsets).first().unwrap());
    }
}
