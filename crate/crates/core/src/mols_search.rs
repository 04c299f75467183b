//! Exhaustive orthogonal-mate search over reduced Latin squares.
//!
//! A square has an orthogonal mate iff its cells split into `n` disjoint
//! transversals. Relabeling rows, columns or symbols maps mates to mates, so
//! it is enough to search the reduced squares (first row and first column in
//! natural order).

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::{are_orthogonal, LatinSquare};
use crate::exact_cover::{ExactCover, Search};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 7;

const EMPTY: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {0} is outside the supported range {MIN_ORDER}..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("second row {0:?} is not compatible with a reduced square")]
    BadPrefix(Vec<u8>),
}

fn check_order(n: usize) -> Result<(), SearchError> {
    if (MIN_ORDER..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(SearchError::UnsupportedOrder(n))
    }
}

/// Iterator over reduced Latin squares in lexicographic row-major cell order.
#[derive(Debug, Clone)]
pub struct ReducedSquares {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
    free: Vec<usize>,
    fill_last: bool,
    k: usize,
    /// First cell that differs from the previous square.
    changed_from: usize,
    started: bool,
    done: bool,
}

impl ReducedSquares {
    fn with_fixed_rows(n: usize, fixed: &[Vec<u8>]) -> Self {
        let mut cells = vec![EMPTY; n * n];
        let mut row_used = vec![0u16; n];
        let mut col_used = vec![0u16; n];
        let mut done = false;
        let mut place = |cells: &mut Vec<u8>, r: usize, c: usize, s: u8| {
            if cells[r * n + c] != EMPTY {
                return;
            }
            let bit = 1u16 << s;
            if row_used[r] & bit != 0 || col_used[c] & bit != 0 {
                done = true;
            }
            cells[r * n + c] = s;
            row_used[r] |= bit;
            col_used[c] |= bit;
        };
        for c in 0..n {
            place(&mut cells, 0, c, c as u8);
        }
        for r in 1..n {
            place(&mut cells, r, 0, r as u8);
        }
        for (r, row) in fixed.iter().enumerate() {
            for (c, &s) in row.iter().enumerate() {
                place(&mut cells, r + 1, c, s);
            }
        }
        // the last row is forced by the others, so it is filled directly
        let fill_last = fixed.len() + 1 < n;
        let searched = if fill_last { (n - 1) * n } else { n * n };
        let free = (0..searched).filter(|&i| cells[i] == EMPTY).collect();
        Self {
            fill_last,
            n,
            cells,
            row_used,
            col_used,
            free,
            k: 0,
            changed_from: 0,
            started: false,
            done,
        }
    }

    fn square(&self) -> LatinSquare {
        LatinSquare::from_cells_unchecked(self.n, self.cells.clone())
    }
}

impl ReducedSquares {
    /// Steps to the next square, returning `false` when exhausted. The
    /// square is then available from [`ReducedSquares::cells`].
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if self.free.is_empty() {
            let first = !self.started;
            self.started = true;
            self.done = true;
            if first {
                self.complete_last_row();
            }
            return first;
        }
        let n = self.n;
        let full = ((1u32 << n) - 1) as u16;
        let first = !self.started;
        let mut low = 0;
        if self.started {
            self.k = self.free.len() - 1;
            low = self.k;
        }
        self.started = true;
        loop {
            let cell = self.free[self.k];
            let (r, c) = (cell / n, cell % n);
            let cur = self.cells[cell];
            // candidates strictly above the current symbol
            let above = if cur == EMPTY {
                full
            } else {
                let bit = 1u16 << cur;
                self.row_used[r] &= !bit;
                self.col_used[c] &= !bit;
                full & !(bit | (bit - 1))
            };
            let avail = above & !(self.row_used[r] | self.col_used[c]);
            if avail != 0 {
                let s = avail.trailing_zeros();
                self.cells[cell] = s as u8;
                self.row_used[r] |= 1 << s;
                self.col_used[c] |= 1 << s;
                self.k += 1;
                if self.k == self.free.len() {
                    self.complete_last_row();
                    self.changed_from = if first { 0 } else { self.free[low] };
                    return true;
                }
            } else {
                self.cells[cell] = EMPTY;
                if self.k == 0 {
                    self.done = true;
                    return false;
                }
                self.k -= 1;
                low = low.min(self.k);
            }
        }
    }

    fn complete_last_row(&mut self) {
        if !self.fill_last {
            return;
        }
        let n = self.n;
        let full = ((1u32 << n) - 1) as u16;
        for c in 1..n {
            self.cells[(n - 1) * n + c] = (full & !self.col_used[c]).trailing_zeros() as u8;
        }
    }

    /// Row of the first cell that changed since the previous square (0 for
    /// the first square).
    pub fn changed_row(&self) -> usize {
        self.changed_from / self.n
    }

    /// Row-major cells of the current square.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }
}

impl Iterator for ReducedSquares {
    type Item = LatinSquare;

    fn next(&mut self) -> Option<LatinSquare> {
        self.advance().then(|| self.square())
    }
}

pub fn generate_reduced(n: usize) -> Result<ReducedSquares, SearchError> {
    check_order(n)?;
    Ok(ReducedSquares::with_fixed_rows(n, &[]))
}

/// All second rows a reduced square of order `n` can have, in lexicographic
/// order. These split the enumeration into independent tasks.
pub fn second_rows(n: usize) -> Result<Vec<Vec<u8>>, SearchError> {
    check_order(n)?;
    fn extend(n: usize, row: &mut Vec<u8>, used: u16, out: &mut Vec<Vec<u8>>) {
        let c = row.len();
        if c == n {
            out.push(row.clone());
            return;
        }
        for s in 0..n as u8 {
            if used & (1 << s) == 0 && s as usize != c {
                row.push(s);
                extend(n, row, used | 1 << s, out);
                row.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut row = vec![1u8];
    extend(n, &mut row, 1 << 1, &mut out);
    Ok(out)
}

/// Reduced squares whose second row is `row`, in lexicographic order.
pub fn reduced_with_second_row(n: usize, row: &[u8]) -> Result<ReducedSquares, SearchError> {
    check_order(n)?;
    let ok = row.len() == n
        && row[0] == 1
        && row.iter().enumerate().all(|(c, &s)| (s as usize) < n && s as usize != c)
        && row.iter().fold(0u16, |m, &s| m | 1 << s) == (1u16 << n) - 1;
    if !ok {
        return Err(SearchError::BadPrefix(row.to_vec()));
    }
    Ok(ReducedSquares::with_fixed_rows(n, &[row.to_vec()]))
}

/// One cell per row and column, carrying every symbol once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transversal {
    /// `columns[r]` is the column used in row `r`.
    columns: Vec<u8>,
}

impl Transversal {
    pub fn columns(&self) -> &[u8] {
        &self.columns
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.columns.iter().enumerate().map(|(r, &c)| (r, c as usize))
    }

    fn mask(&self) -> u64 {
        let n = self.columns.len();
        self.cells().fold(0u64, |m, (r, c)| m | 1 << (r * n + c))
    }
}

/// Depth-first over rows, with columns and symbols tracked as bitmasks.
fn transversal_columns<F: FnMut(&[u8])>(s: &LatinSquare, mut visit: F) {
    let n = s.order();
    // col_of[r * 16 + sym] is the column holding `sym` in row `r`
    let mut col_of = [0u8; 16 * 16];
    for r in 0..n {
        for c in 0..n {
            col_of[r * 16 + s.get(r, c) as usize] = c as u8;
        }
    }
    let blocked = |r: usize, mut syms: u16| -> u16 {
        let mut m = 0u16;
        while syms != 0 {
            m |= 1 << col_of[r * 16 + syms.trailing_zeros() as usize];
            syms &= syms - 1;
        }
        m
    };
    let full = ((1u32 << n) - 1) as u16;
    let mut cols = [0u8; 16];
    let mut avail = [0u16; 17];
    let mut used_c = [0u16; 17];
    let mut used_s = [0u16; 17];
    avail[0] = full;
    let mut r = 0usize;
    loop {
        if avail[r] == 0 {
            if r == 0 {
                return;
            }
            r -= 1;
            continue;
        }
        let c = avail[r].trailing_zeros() as usize;
        avail[r] &= avail[r] - 1;
        cols[r] = c as u8;
        let next_c = used_c[r] | 1 << c;
        let next_s = used_s[r] | 1 << s.get(r, c);
        if r + 1 == n {
            visit(&cols[..n]);
            continue;
        }
        r += 1;
        used_c[r] = next_c;
        used_s[r] = next_s;
        avail[r] = full & !next_c & !blocked(r, next_s);
    }
}

/// All transversals, ordered lexicographically by their column sequence.
pub fn transversals(s: &LatinSquare) -> Vec<Transversal> {
    let mut out = Vec::new();
    transversal_columns(s, |cols| out.push(Transversal { columns: cols.to_vec() }));
    out
}

fn transversal_masks(s: &LatinSquare) -> Vec<u64> {
    let n = s.order();
    let mut out = Vec::new();
    transversal_columns(s, |cols| {
        out.push(cols.iter().enumerate().fold(0u64, |m, (r, &c)| m | 1 << (r * n + c as usize)));
    });
    out
}

/// An orthogonal mate of `s`, if one exists. Orders above 8 are not
/// supported (the cells must fit a 64-bit universe).
///
/// The mate gives the transversal through cell (0, c) the symbol `c`, so its
/// first row is 0, 1, ..., n-1.
pub fn find_mate(s: &LatinSquare) -> Option<LatinSquare> {
    let n = s.order();
    assert!(n * n <= 64, "order {n} is too large for the mate search");
    let masks = transversal_masks(s);
    let cells = mate_from_masks(n, &masks, &mut Search::default(), &mut Vec::new())?;
    let mate = LatinSquare::from_cells_unchecked(n, cells);
    debug_assert!(are_orthogonal(s, &mate));
    Some(mate)
}

fn mate_from_masks(n: usize, masks: &[u64], search: &mut Search, chosen: &mut Vec<usize>) -> Option<Vec<u8>> {
    if masks.len() < n {
        return None;
    }
    let universe = (1u64 << (n * n)) - 1;
    if !search.first(universe, masks, chosen) {
        return None;
    }
    let mut cells = vec![0u8; n * n];
    for &i in chosen.iter() {
        let mask = masks[i];
        let symbol = (mask & ((1u64 << n) - 1)).trailing_zeros() as u8;
        let mut bits = mask;
        while bits != 0 {
            cells[bits.trailing_zeros() as usize] = symbol;
            bits &= bits - 1;
        }
    }
    Some(cells)
}

/// Transversal cell masks for a stream of squares that share leading rows.
///
/// Partial transversals of the top `h` rows are bucketed by their column
/// and symbol sets; each partial transversal of the bottom rows is then
/// joined with the bucket holding the complementary sets. The top levels are
/// kept between calls and rebuilt from the first changed row, which suits
/// the lexicographic enumeration. Orders up to 7 only.
#[derive(Debug, Clone)]
struct SplitTransversals {
    n: usize,
    h: usize,
    full: u16,
    top: Vec<u8>,
    /// `levels[k]` holds (columns, symbols, cells) of partial transversals
    /// of rows `0..=k`
    levels: Vec<Vec<(u16, u16, u64)>>,
    /// bucket key contributions of a bottom column or symbol set
    col_key: [u16; 128],
    sym_key: [u16; 128],
    starts: Vec<u32>,
    fill: Vec<u32>,
    entries: Vec<u64>,
    /// Rank of each column or symbol set that misses exactly one bottom
    /// row, and the number of such sets.
    sub_rank: [u16; 128],
    sub_count: usize,
    /// For a partial transversal of all bottom rows but the last, with
    /// sets ranked `(i, j)`, bit `c * n + s` of `last_cells[i * sub_count + j]`
    /// is set when the last-row cell in column `c` with symbol `s` would
    /// complete it against some top bucket.
    last_cells: Vec<u64>,
    /// distinct (bottom columns, bottom symbols) pairs of the current top
    distinct: Vec<(u16, u16)>,
}

impl SplitTransversals {
    fn new(n: usize) -> Self {
        assert!((2..=7).contains(&n), "orders 2..=7 only");
        let h = n.div_ceil(2);
        let full = ((1u32 << n) - 1) as u16;
        let mut rank = [u16::MAX; 128];
        let mut subsets = 0u16;
        for m in 0..1usize << n {
            if m.count_ones() as usize == h {
                rank[m] = subsets;
                subsets += 1;
            }
        }
        let mut col_key = [0u16; 128];
        let mut sym_key = [0u16; 128];
        for m in 0..1usize << n {
            let top = full as usize & !m;
            if rank[top] != u16::MAX {
                col_key[m] = rank[top] * subsets;
                sym_key[m] = rank[top];
            }
        }
        let keys = subsets as usize * subsets as usize;
        let mut sub_rank = [u16::MAX; 128];
        let mut sub_count = 0usize;
        for m in 0..1usize << n {
            if m.count_ones() as usize + 1 == n - h {
                sub_rank[m] = sub_count as u16;
                sub_count += 1;
            }
        }
        Self {
            sub_rank,
            sub_count,
            last_cells: vec![0; sub_count * sub_count],
            distinct: Vec::new(),
            n,
            h,
            full,
            top: Vec::new(),
            levels: vec![Vec::new(); h],
            col_key,
            sym_key,
            starts: vec![0; keys + 1],
            fill: vec![0; keys + 1],
            entries: Vec::new(),
        }
    }

    fn key(&self, bottom_cols: u16, bottom_syms: u16) -> usize {
        self.col_key[bottom_cols as usize & 127] as usize + self.sym_key[bottom_syms as usize & 127] as usize
    }

    fn rebuild(&mut self, cells: &[u8], from_row: usize) {
        let (n, h, full) = (self.n, self.h, self.full);
        for r in from_row..h {
            let mut next = std::mem::take(&mut self.levels[r]);
            next.clear();
            let row = &cells[r * n..(r + 1) * n];
            if r == 0 {
                next.extend(row.iter().enumerate().map(|(c, &s)| (1u16 << c, 1u16 << s, 1u64 << c)));
            } else {
                for &(cm, sm, mask) in &self.levels[r - 1] {
                    let mut free = full & !cm;
                    while free != 0 {
                        let c = free.trailing_zeros() as usize;
                        free &= free - 1;
                        let bit = 1u16 << row[c];
                        if sm & bit == 0 {
                            next.push((cm | 1 << c, sm | bit, mask | 1 << (r * n + c)));
                        }
                    }
                }
            }
            self.levels[r] = next;
        }
        let last = std::mem::take(&mut self.levels[h - 1]);
        self.starts.iter_mut().for_each(|s| *s = 0);
        self.distinct.clear();
        for &(cm, sm, _) in &last {
            let (bc, bs) = (full & !cm, full & !sm);
            let k = self.key(bc, bs);
            if self.starts[k + 1] == 0 {
                self.distinct.push((bc, bs));
            }
            self.starts[k + 1] += 1;
        }
        for i in 1..self.starts.len() {
            self.starts[i] += self.starts[i - 1];
        }
        self.entries.resize(last.len(), 0);
        self.fill.copy_from_slice(&self.starts);
        for &(cm, sm, mask) in &last {
            let k = self.key(full & !cm, full & !sm);
            self.entries[self.fill[k] as usize] = mask;
            self.fill[k] += 1;
        }
        if n - h >= 2 {
            self.last_cells.iter_mut().for_each(|m| *m = 0);
            let mut sym_slots = [(0usize, 0usize); 8];
            for &(bc, bs) in &self.distinct {
                let mut len = 0;
                let mut syms = bs;
                while syms != 0 {
                    let s = syms.trailing_zeros() as usize;
                    syms &= syms - 1;
                    sym_slots[len] = (self.sub_rank[(bs & !(1 << s)) as usize] as usize, s);
                    len += 1;
                }
                let mut cols = bc;
                while cols != 0 {
                    let c = cols.trailing_zeros() as usize;
                    cols &= cols - 1;
                    let row = self.sub_rank[(bc & !(1 << c)) as usize] as usize * self.sub_count;
                    for &(j, s) in &sym_slots[..len] {
                        self.last_cells[row + j] |= 1 << (c * n + s);
                    }
                }
            }
        }
        self.levels[h - 1] = last;
        self.top.clear();
        self.top.extend_from_slice(&cells[..h * n]);
    }

    #[cfg(test)]
    fn masks(&mut self, cells: &[u8], out: &mut Vec<u64>) {
        let (n, h) = (self.n, self.h);
        let changed = if self.top.len() == h * n {
            (0..h)
                .find(|&r| self.top[r * n..(r + 1) * n] != cells[r * n..(r + 1) * n])
                .unwrap_or(h)
        } else {
            0
        };
        self.masks_after(cells, changed, out);
    }

    /// Like `masks`, trusting the caller that rows above `changed_row` are
    /// those of the previous call.
    fn masks_after(&mut self, cells: &[u8], changed_row: usize, out: &mut Vec<u64>) {
        let (n, h) = (self.n, self.h);
        if self.top.len() != h * n {
            self.rebuild(cells, 0);
        } else if changed_row < h {
            self.rebuild(cells, changed_row);
        }
        out.clear();
        // col_of[r][s]: column of symbol s in row r
        let mut col_of = [[0u8; 8]; 8];
        for r in h..n {
            for c in 0..n {
                col_of[r][cells[r * n + c] as usize & 7] = c as u8;
            }
        }
        let last_row = (0..n).fold(0u64, |m, c| m | 1 << (c * n + cells[(n - 1) * n + c] as usize));
        if n - h == 3 {
            self.bottom3(cells, &col_of, last_row, out);
        } else {
            self.bottom(cells, &col_of, last_row, h, 0, 0, 0, out);
        }
    }

    /// Pushes the transversals completing a bottom partial transversal
    /// with columns `cm` and symbols `sm` that misses only the last row.
    fn complete_last(&self, last_row: u64, cm: u16, sm: u16, mask: u64, out: &mut Vec<u64>) {
        let n = self.n;
        let idx = self.sub_rank[cm as usize & 127] as usize * self.sub_count + self.sub_rank[sm as usize & 127] as usize;
        let mut hits = self.last_cells[idx] & last_row;
        while hits != 0 {
            let bit = hits.trailing_zeros() as usize;
            hits &= hits - 1;
            let (c, s) = (bit / n, bit % n);
            let k = self.key(cm | 1 << c, sm | 1 << s);
            let m = mask | 1 << ((n - 1) * n + c);
            for &t in &self.entries[self.starts[k] as usize..self.starts[k + 1] as usize] {
                out.push(t | m);
            }
        }
    }

    /// The common case of three bottom rows, as flat loops.
    fn bottom3(&self, cells: &[u8], col_of: &[[u8; 8]; 8], last_row: u64, out: &mut Vec<u64>) {
        let (n, r) = (self.n, self.h);
        let (first, second) = (&cells[r * n..(r + 1) * n], &cells[(r + 1) * n..(r + 2) * n]);
        for (c1, &s1) in first.iter().enumerate() {
            let (cm1, sm1, m1) = (1u16 << c1, 1u16 << s1, 1u64 << (r * n + c1));
            let mut ok = self.full & !cm1 & !(1u16 << col_of[(r + 1) & 7][s1 as usize & 7]);
            while ok != 0 {
                let c2 = ok.trailing_zeros() as usize;
                ok &= ok - 1;
                let m2 = m1 | 1 << ((r + 1) * n + c2);
                self.complete_last(last_row, cm1 | 1 << c2, sm1 | 1 << second[c2], m2, out);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn bottom(
        &self,
        cells: &[u8],
        col_of: &[[u8; 8]; 8],
        last_row: u64,
        r: usize,
        cm: u16,
        sm: u16,
        mask: u64,
        out: &mut Vec<u64>,
    ) {
        let n = self.n;
        if r + 1 == n && r > self.h {
            self.complete_last(last_row, cm, sm, mask, out);
            return;
        }
        let mut blocked = 0u16;
        let mut syms = sm;
        while syms != 0 {
            blocked |= 1 << col_of[r & 7][syms.trailing_zeros() as usize & 7];
            syms &= syms - 1;
        }
        let mut ok = self.full & !cm & !blocked;
        let row = &cells[r * n..(r + 1) * n];
        if r + 1 == n {
            while ok != 0 {
                let c = ok.trailing_zeros() as usize;
                ok &= ok - 1;
                let k = self.key(cm | 1 << c, sm | 1 << row[c]);
                let m = mask | 1 << (r * n + c);
                for &t in &self.entries[self.starts[k] as usize..self.starts[k + 1] as usize] {
                    out.push(t | m);
                }
            }
            return;
        }
        while ok != 0 {
            let c = ok.trailing_zeros() as usize;
            ok &= ok - 1;
            self.bottom(cells, col_of, last_row, r + 1, cm | 1 << c, sm | 1 << row[c], mask | 1 << (r * n + c), out);
        }
    }
}

/// Converts a transversal list into the exact-cover form used by
/// [`find_mate`]; exposed for tests and inspection.
pub fn transversal_cover(s: &LatinSquare) -> ExactCover {
    let n = s.order();
    ExactCover::new(n * n, transversals(s).iter().map(Transversal::mask).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatePair {
    /// Position of `square` in the reduced enumeration, starting at 0.
    pub index: u64,
    pub square: LatinSquare,
    pub mate: LatinSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub order: usize,
    pub reduced_count: u64,
    pub mates_found: u64,
    /// Mates that passed the orthogonality check; equals `mates_found`
    /// unless the search is broken.
    pub mates_verified: u64,
    pub without_transversal: u64,
    /// Squares with some cell on no transversal (so no mate), including
    /// those without any transversal.
    pub with_uncovered_cell: u64,
    pub tasks: usize,
    pub sample_mates: Vec<MatePair>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub tasks_done: usize,
    pub tasks_total: usize,
    pub squares_done: u64,
}

pub struct OracleOptions<'a> {
    pub jobs: usize,
    /// How many (square, mate) pairs to keep, in enumeration order.
    pub keep_mates: usize,
    pub progress: Option<&'a (dyn Fn(Progress) + Sync)>,
}

impl Default for OracleOptions<'_> {
    fn default() -> Self {
        Self {
            jobs: 1,
            keep_mates: 1,
            progress: None,
        }
    }
}

#[derive(Debug, Default)]
struct TaskResult {
    squares: u64,
    mates: u64,
    verified: u64,
    without_transversal: u64,
    uncovered: u64,
    kept: Vec<(u64, LatinSquare, LatinSquare)>,
}

fn run_task(n: usize, row: &[u8], keep: usize) -> TaskResult {
    let mut out = TaskResult::default();
    let mut squares = reduced_with_second_row(n, row).expect("valid task");
    let mut split = SplitTransversals::new(n);
    let mut masks = Vec::new();
    let universe = (1u64 << (n * n)) - 1;
    let mut search = Search::default();
    let mut chosen = Vec::new();
    while squares.advance() {
        let local = out.squares;
        out.squares += 1;
        let cells = squares.cells();
        split.masks_after(cells, squares.changed_row(), &mut masks);
        if masks.is_empty() {
            out.without_transversal += 1;
            continue;
        }
        // a partition into transversals needs every cell on one of them
        if masks.iter().fold(0u64, |acc, &m| acc | m) != universe {
            out.uncovered += 1;
            continue;
        }
        if let Some(mate) = mate_from_masks(n, &masks, &mut search, &mut chosen) {
            out.mates += 1;
            let square = LatinSquare::from_cells_unchecked(n, cells.to_vec());
            let mate = LatinSquare::from_cells_unchecked(n, mate);
            if are_orthogonal(&square, &mate) {
                out.verified += 1;
            }
            if out.kept.len() < keep {
                out.kept.push((local, square, mate));
            }
        }
    }
    out
}

/// Runs [`find_mate`] on every reduced square of order `n`.
///
/// Work is split by second row and handed to `jobs` threads. Results are
/// merged in task order, so everything except `elapsed_ms` is the same for
/// any worker count.
pub fn officers_oracle(n: usize, opts: &OracleOptions) -> Result<OracleSummary, SearchError> {
    let started = Instant::now();
    let rows = second_rows(n)?;
    let total = rows.len();
    let jobs = opts.jobs.clamp(1, total.max(1));
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let squares_done = Mutex::new(0u64);
    let results: Mutex<Vec<Option<TaskResult>>> = Mutex::new((0..total).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                if t >= total {
                    break;
                }
                let res = run_task(n, &rows[t], opts.keep_mates);
                let sq = {
                    let mut s = squares_done.lock().expect("progress lock");
                    *s += res.squares;
                    *s
                };
                results.lock().expect("result lock")[t] = Some(res);
                let d = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(report) = opts.progress {
                    report(Progress {
                        tasks_done: d,
                        tasks_total: total,
                        squares_done: sq,
                    });
                }
            });
        }
    });

    let mut summary = OracleSummary {
        order: n,
        reduced_count: 0,
        mates_found: 0,
        mates_verified: 0,
        without_transversal: 0,
        with_uncovered_cell: 0,
        tasks: total,
        sample_mates: Vec::new(),
        elapsed_ms: 0,
    };
    for res in results.into_inner().expect("result lock") {
        let res = res.expect("every task ran");
        for (local, square, mate) in res.kept {
            if summary.sample_mates.len() < opts.keep_mates {
                summary.sample_mates.push(MatePair {
                    index: summary.reduced_count + local,
                    square,
                    mate,
                });
            }
        }
        summary.reduced_count += res.squares;
        summary.mates_found += res.mates;
        summary.mates_verified += res.verified;
        summary.without_transversal += res.without_transversal;
        summary.with_uncovered_cell += res.uncovered + res.without_transversal;
    }
    summary.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(summary)
}
