//! The last surviving parallax, 2222.
//!
//! A dependency `c(Λ) = 0` with parallax 2222 has 24 points, each on exactly
//! two lines of Λ. Label the two Λ-lines of class `i` by `+1` and `-1`; a
//! point is then tagged by a quadruple `x1x2x3x4` with two zero entries. Each
//! line outside Λ passes through three tagged points, and the tags on the
//! non-Λ lines of one class can be arranged in exactly two ways.
//!
//! Fixing the labels puts the tagged points into a standard 6 x 6 layout:
//! rows and columns are classes 1 and 2 (Λ = the bottom two rows and right
//! two columns), the third class is `a..f` and the fourth `α..ζ`, with
//! `e, f` and `ε, ζ` in Λ. The result is two-thirds of a Graeco-Latin square
//! whose 12 blanks cannot be filled. This module checks every piece of that
//! chain and counts completions exhaustively.
//!
//! Grid positions are 0-based `(row, col)` with row 0 at the top.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exact_cover::ExactCover;
use crate::report::Certificate;

pub const ORDER: usize = 6;
pub const LATIN_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
pub const GREEK_NAMES: [&str; 6] = ["α", "β", "γ", "δ", "ε", "ζ"];

/// Tagged points of Λ in the standard layout, row by row; `_` is a point
/// off Λ.
const TAG_DIAGRAM: [[&str; 6]; 6] = [
    ["0011", "_", "_", "_", "100-1", "-10-10"],
    ["_", "00-11", "_", "_", "1010", "-100-1"],
    ["_", "_", "001-1", "_", "10-10", "-1001"],
    ["_", "_", "_", "00-1-1", "1001", "-1010"],
    ["01-10", "010-1", "0101", "0110", "1100", "-1100"],
    ["0-10-1", "0-110", "0-1-10", "0-101", "1-100", "-1-100"],
];

/// Tagged points on the non-Λ lines `a..d` and `α..δ`.
const LATIN_LINES: [[&str; 3]; 4] = [
    ["1100", "0-10-1", "-1001"],
    ["-1100", "0-101", "100-1"],
    ["1-100", "0101", "-100-1"],
    ["-1-100", "010-1", "1001"],
];
const GREEK_LINES: [[&str; 3]; 4] = [
    ["1100", "0-110", "-10-10"],
    ["-1100", "0-1-10", "1010"],
    ["1-100", "01-10", "-1010"],
    ["-1-100", "0110", "10-10"],
];

/// The two-thirds square as it should come out of the construction.
pub const REFERENCE_SQUARE: [[&str; 6]; 6] = [
    ["eε", "", "", "", "bζ", "fα"],
    ["", "fε", "", "", "eβ", "cζ"],
    ["", "", "eζ", "", "fδ", "aε"],
    ["", "", "", "fζ", "dε", "eγ"],
    ["fγ", "dζ", "cε", "eδ", "aα", "bβ"],
    ["aζ", "eα", "fβ", "bε", "cγ", "dδ"],
];

/// A point of Λ named by the two Λ-lines through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointTag(pub [i8; 4]);

impl PointTag {
    /// Parses strings like `10-10`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut out = [0i8; 4];
        let mut chars = s.chars();
        for slot in &mut out {
            *slot = match chars.next()? {
                '0' => 0,
                '1' => 1,
                '-' => match chars.next()? {
                    '1' => -1,
                    _ => return None,
                },
                _ => return None,
            };
        }
        chars.next().is_none().then_some(Self(out))
    }

    /// Two entries zero and two `±1`.
    pub fn is_valid(&self) -> bool {
        self.0.iter().filter(|&&x| x == 0).count() == 2 && self.0.iter().all(|x| x.abs() <= 1)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.map(|x| -x))
    }

    /// Coordinatewise product with a sign pattern.
    pub fn signed(&self, signs: [i8; 4]) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] * signs[i]))
    }
}

impl fmt::Display for PointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn tag(s: &str) -> PointTag {
    PointTag::parse(s).unwrap_or_else(|| panic!("bad tag literal {s}"))
}

/// The 24 tagged positions of the standard layout.
pub fn standard_tagging() -> BTreeMap<(usize, usize), PointTag> {
    let mut out = BTreeMap::new();
    for (r, row) in TAG_DIAGRAM.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            if *s != "_" {
                out.insert((r, c), tag(s));
            }
        }
    }
    out
}

/// Structural checks on a tagging, as `(description, holds)` pairs.
pub fn tagging_checks(tags: &BTreeMap<(usize, usize), PointTag>) -> Vec<(String, bool)> {
    let set: BTreeSet<PointTag> = tags.values().copied().collect();
    let mut out = vec![
        (format!("{} tagged points", tags.len()), tags.len() == 24),
        ("all tags distinct".to_string(), set.len() == tags.len()),
        (
            "every tag has two zero and two ±1 entries".to_string(),
            set.iter().all(PointTag::is_valid),
        ),
        (
            "tags are closed under negation".to_string(),
            set.iter().all(|t| set.contains(&t.negated())),
        ),
    ];
    // x1 = ±1 on the right two columns, x2 = ±1 on the bottom two rows
    let placed = tags.iter().all(|(&(r, c), t)| {
        let x1 = match c {
            4 => 1,
            5 => -1,
            _ => 0,
        };
        let x2 = match r {
            4 => 1,
            5 => -1,
            _ => 0,
        };
        t.0[0] == x1 && t.0[1] == x2
    });
    out.push(("x1 and x2 match the column and row of each tag".to_string(), placed));
    let mut lines_ok = true;
    let mut meets_ok = true;
    for i in 0..4 {
        for s in [1i8, -1] {
            lines_ok &= set.iter().filter(|t| t.0[i] == s).count() == ORDER;
            for j in i + 1..4 {
                for u in [1i8, -1] {
                    meets_ok &= set.iter().filter(|t| t.0[i] == s && t.0[j] == u).count() == 1;
                }
            }
        }
    }
    out.push(("each of the 8 lines of Λ carries 6 tagged points".to_string(), lines_ok));
    out.push(("Λ-lines of different classes share exactly one tag".to_string(), meets_ok));
    out
}

/// The tags on one non-Λ line.
pub type LineTags = [PointTag; 3];

/// An arrangement of the 12 tags with `x_i = 0` onto the four non-Λ lines
/// of class `i`, sorted.
pub type LineList = Vec<LineTags>;

fn normalize_list(mut list: Vec<LineTags>) -> LineList {
    for l in &mut list {
        l.sort();
    }
    list.sort();
    list
}

/// Tag triples that a non-Λ line of class `class` (0-based) can carry: it
/// misses both Λ-lines of its own class and meets each of the other six
/// Λ-lines once, so it has three tags, each pair of other classes appears
/// as the support of one tag, and the two signs of every other class each
/// occur once.
pub fn candidate_lines(class: usize) -> Vec<LineTags> {
    let others: Vec<usize> = (0..4).filter(|&j| j != class).collect();
    let pairs = [(others[0], others[1]), (others[0], others[2]), (others[1], others[2])];
    let mut out = Vec::new();
    for signs in 0..64u32 {
        let sign = |k: u32| if signs >> k & 1 == 0 { 1i8 } else { -1 };
        let triple: [PointTag; 3] = [0, 1, 2].map(|p| {
            let (u, v) = pairs[p];
            let mut t = [0i8; 4];
            t[u] = sign(2 * p as u32);
            t[v] = sign(2 * p as u32 + 1);
            PointTag(t)
        });
        let balanced = others.iter().all(|&j| triple.iter().map(|t| t.0[j]).sum::<i8>() == 0);
        if balanced {
            out.push(triple);
        }
    }
    out
}

/// All line lists for a class (0-based), found as exact covers of the 12
/// tags with `x_class = 0` by candidate lines.
pub fn enumerate_line_lists(class: usize) -> Vec<LineList> {
    assert!(class < 4, "class index is 0-based, below 4");
    let items: Vec<PointTag> = standard_tagging()
        .into_values()
        .filter(|t| t.0[class] == 0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<PointTag, usize> = items.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let lines = candidate_lines(class);
    let masks: Vec<u64> = lines
        .iter()
        .map(|l| l.iter().fold(0u64, |m, t| m | 1 << index[t]))
        .collect();
    let cover = ExactCover::new(items.len(), masks);
    let mut lists = Vec::new();
    cover.search(&mut |sol| {
        lists.push(normalize_list(sol.iter().map(|&i| lines[i]).collect()));
        true
    });
    lists.sort();
    lists
}

/// One line list per class.
pub type Collection = [LineList; 4];

fn sign_collection(c: &Collection, signs: [i8; 4]) -> Collection {
    c.clone().map(|list| normalize_list(list.iter().map(|l| l.map(|t| t.signed(signs))).collect()))
}

pub fn sign_patterns() -> Vec<[i8; 4]> {
    (0..16u8)
        .map(|m| [0, 1, 2, 3].map(|i| if m >> i & 1 == 0 { 1 } else { -1 }))
        .collect()
}

/// Result of checking that every choice of line lists is one sign change
/// away from any other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignEquivalence {
    pub lists_per_class: [usize; 4],
    pub negation_pairs: bool,
    pub collections: usize,
    pub orbit_size: usize,
    /// Classes whose list changes when only the class-4 labels are flipped.
    pub flip4_changes: [bool; 4],
}

pub fn sign_equivalence() -> SignEquivalence {
    let per_class: [Vec<LineList>; 4] = [0, 1, 2, 3].map(enumerate_line_lists);
    let lists_per_class = [0, 1, 2, 3].map(|i| per_class[i].len());
    let negation_pairs = per_class.iter().all(|lists| {
        lists.len() == 2
            && normalize_list(lists[0].iter().map(|l| l.map(|t| t.negated())).collect()) == lists[1]
    });
    let mut collections = BTreeSet::new();
    let mut stack = vec![Vec::<LineList>::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == 4 {
            collections.insert(prefix);
            continue;
        }
        for l in &per_class[prefix.len()] {
            let mut next = prefix.clone();
            next.push(l.clone());
            stack.push(next);
        }
    }
    let base: Collection = [0, 1, 2, 3].map(|i| per_class[i][0].clone());
    let orbit: BTreeSet<Vec<LineList>> = sign_patterns()
        .into_iter()
        .map(|s| sign_collection(&base, s).to_vec())
        .collect();
    let flipped = sign_collection(&base, [1, 1, 1, -1]);
    let flip4_changes = [0, 1, 2, 3].map(|i| flipped[i] != base[i]);
    SignEquivalence {
        lists_per_class,
        negation_pairs,
        collections: collections.len(),
        orbit_size: if orbit.is_subset(&collections) { orbit.len() } else { 0 },
        flip4_changes,
    }
}

/// A 6 x 6 (or smaller) grid of optional (latin, greek) symbol pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialGraecoSquare {
    order: usize,
    cells: Vec<Option<(u8, u8)>>,
}

impl PartialGraecoSquare {
    pub fn empty(order: usize) -> Self {
        Self {
            order,
            cells: vec![None; order * order],
        }
    }

    pub fn from_cells(order: usize, cells: Vec<Option<(u8, u8)>>) -> Result<Self, String> {
        if cells.len() != order * order {
            return Err(format!("expected {} cells, got {}", order * order, cells.len()));
        }
        let sq = Self { order, cells };
        sq.validate()?;
        Ok(sq)
    }

    /// Parses a table of `Xy` cells (empty string for a blank) using the
    /// standard symbol names.
    pub fn from_names(rows: &[[&str; 6]; 6]) -> Result<Self, String> {
        let mut cells = Vec::with_capacity(36);
        for row in rows {
            for s in row {
                cells.push(if s.is_empty() { None } else { Some(parse_pair(s)?) });
            }
        }
        Self::from_cells(6, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> Option<(u8, u8)> {
        self.cells[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Option<(u8, u8)>) {
        self.cells[r * self.order + c] = v;
    }

    pub fn blanks(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].is_none()).collect()
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// No symbol repeats in a row or column and no pair repeats anywhere.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.order;
        let mut pairs = BTreeSet::new();
        for r in 0..n {
            for c in 0..n {
                let Some((x, y)) = self.get(r, c) else { continue };
                if x as usize >= n || y as usize >= n {
                    return Err(format!("symbol out of range at ({r},{c})"));
                }
                if !pairs.insert((x, y)) {
                    return Err(format!("pair repeated at ({r},{c})"));
                }
                for c2 in c + 1..n {
                    if let Some((x2, y2)) = self.get(r, c2) {
                        if x2 == x || y2 == y {
                            return Err(format!("row {r} repeats a symbol at columns {c} and {c2}"));
                        }
                    }
                }
                for r2 in r + 1..n {
                    if let Some((x2, y2)) = self.get(r2, c) {
                        if x2 == x || y2 == y {
                            return Err(format!("column {c} repeats a symbol at rows {r} and {r2}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_table(&self) -> String {
        let n = self.order;
        let mut out = String::new();
        for r in 0..n {
            let cells: Vec<String> = (0..n)
                .map(|c| match self.get(r, c) {
                    Some(p) => pair_name(p),
                    None => "..".to_string(),
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn pair_name((x, y): (u8, u8)) -> String {
    format!("{}{}", LATIN_NAMES[x as usize], GREEK_NAMES[y as usize])
}

fn parse_pair(s: &str) -> Result<(u8, u8), String> {
    let mut chars = s.chars();
    let (Some(l), Some(g), None) = (chars.next(), chars.next(), chars.next()) else {
        return Err(format!("bad pair {s:?}"));
    };
    let x = LATIN_NAMES.iter().position(|n| n.starts_with(l));
    let y = GREEK_NAMES.iter().position(|n| n.starts_with(g));
    match (x, y) {
        (Some(x), Some(y)) => Ok((x as u8, y as u8)),
        _ => Err(format!("bad pair {s:?}")),
    }
}

/// Fills in line names: `e/f` and `ε/ζ` from `x3` and `x4`, `a..d` and
/// `α..δ` from the tag lists of those lines.
pub fn build_partial_square() -> PartialGraecoSquare {
    let latin_of = line_lookup(&LATIN_LINES);
    let greek_of = line_lookup(&GREEK_LINES);
    let mut sq = PartialGraecoSquare::empty(ORDER);
    for ((r, c), t) in standard_tagging() {
        let x = match t.0[2] {
            1 => 4,
            -1 => 5,
            _ => latin_of[&t],
        };
        let y = match t.0[3] {
            1 => 4,
            -1 => 5,
            _ => greek_of[&t],
        };
        sq.set(r, c, Some((x, y)));
    }
    sq
}

fn line_lookup(lines: &[[&str; 3]; 4]) -> BTreeMap<PointTag, u8> {
    let mut out = BTreeMap::new();
    for (i, l) in lines.iter().enumerate() {
        for s in l {
            out.insert(tag(s), i as u8);
        }
    }
    out
}

fn assigned_list(lines: &[[&str; 3]; 4]) -> LineList {
    normalize_list(lines.iter().map(|l| l.map(tag)).collect())
}

/// Tag triples of the non-Λ rows (class index 1) or columns (class index 0)
/// read off the diagram.
fn grid_list(class: usize) -> LineList {
    let tags = standard_tagging();
    let list = (0..4)
        .map(|i| {
            let v: Vec<PointTag> = tags
                .iter()
                .filter(|(&(r, c), _)| if class == 0 { c == i } else { r == i })
                .map(|(_, t)| *t)
                .collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    normalize_list(list)
}

/// Blank visiting orders for the completion search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VisitOrder {
    RowMajor,
    ColumnMajor,
    ReverseRowMajor,
}

#[derive(Debug, Clone)]
pub struct CompletionOptions {
    /// Cells to fill; `None` means every blank.
    pub cells: Option<Vec<usize>>,
    /// Allowed pairs; `None` means all `n x n` pairs.
    pub pool: Option<Vec<(u8, u8)>>,
    pub order: VisitOrder,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self {
            cells: None,
            pool: None,
            order: VisitOrder::RowMajor,
        }
    }
}

/// Node counts of the backtracking search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    /// `nodes[d]`: placements tried at depth `d` that passed all checks.
    pub nodes: Vec<u64>,
    pub dead_ends: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionCount {
    pub count: u64,
    pub cells: Vec<usize>,
    pub trace: SearchTrace,
}

pub fn count_completions(p: &PartialGraecoSquare) -> CompletionCount {
    count_completions_with(p, &CompletionOptions::default())
}

/// Counts the ways to fill the chosen cells with pairs from the pool so
/// that rows and columns repeat no symbol and no pair occurs twice.
pub fn count_completions_with(p: &PartialGraecoSquare, opts: &CompletionOptions) -> CompletionCount {
    let n = p.order();
    let mut cells = opts.cells.clone().unwrap_or_else(|| p.blanks());
    match opts.order {
        VisitOrder::RowMajor => cells.sort(),
        VisitOrder::ColumnMajor => cells.sort_by_key(|&i| (i % n, i / n)),
        VisitOrder::ReverseRowMajor => cells.sort_by(|a, b| b.cmp(a)),
    }
    let mut pool = opts
        .pool
        .clone()
        .unwrap_or_else(|| (0..n as u8).flat_map(|x| (0..n as u8).map(move |y| (x, y))).collect());
    pool.sort();
    pool.dedup();
    let mut st = Completion {
        n,
        row_latin: vec![0; n],
        row_greek: vec![0; n],
        col_latin: vec![0; n],
        col_greek: vec![0; n],
        used: vec![false; n * n],
        trace: SearchTrace {
            nodes: vec![0; cells.len()],
            dead_ends: 0,
        },
        count: 0,
    };
    for i in 0..n * n {
        if cells.contains(&i) {
            continue;
        }
        if let Some(pair) = p.cells[i] {
            st.place(i, pair);
        }
    }
    st.search(&cells, &pool, 0);
    CompletionCount {
        count: st.count,
        cells,
        trace: st.trace,
    }
}

struct Completion {
    n: usize,
    row_latin: Vec<u16>,
    row_greek: Vec<u16>,
    col_latin: Vec<u16>,
    col_greek: Vec<u16>,
    used: Vec<bool>,
    trace: SearchTrace,
    count: u64,
}

impl Completion {
    fn fits(&self, cell: usize, (x, y): (u8, u8)) -> bool {
        let (r, c) = (cell / self.n, cell % self.n);
        let (bx, by) = (1u16 << x, 1u16 << y);
        !self.used[x as usize * self.n + y as usize]
            && self.row_latin[r] & bx == 0
            && self.col_latin[c] & bx == 0
            && self.row_greek[r] & by == 0
            && self.col_greek[c] & by == 0
    }

    fn place(&mut self, cell: usize, (x, y): (u8, u8)) {
        self.toggle(cell, (x, y));
        self.used[x as usize * self.n + y as usize] = true;
    }

    fn unplace(&mut self, cell: usize, (x, y): (u8, u8)) {
        self.toggle(cell, (x, y));
        self.used[x as usize * self.n + y as usize] = false;
    }

    fn toggle(&mut self, cell: usize, (x, y): (u8, u8)) {
        let (r, c) = (cell / self.n, cell % self.n);
        self.row_latin[r] ^= 1 << x;
        self.col_latin[c] ^= 1 << x;
        self.row_greek[r] ^= 1 << y;
        self.col_greek[c] ^= 1 << y;
    }

    fn search(&mut self, cells: &[usize], pool: &[(u8, u8)], depth: usize) {
        if depth == cells.len() {
            self.count += 1;
            return;
        }
        let cell = cells[depth];
        let mut any = false;
        for &pair in pool {
            if !self.fits(cell, pair) {
                continue;
            }
            any = true;
            self.trace.nodes[depth] += 1;
            self.place(cell, pair);
            self.search(cells, pool, depth + 1);
            self.unplace(cell, pair);
        }
        if !any {
            self.trace.dead_ends += 1;
        }
    }
}

/// Symbols from `a..d` and `α..δ` already present in a row or column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusions {
    pub latin: Vec<u8>,
    pub greek: Vec<u8>,
}

impl fmt::Display for Exclusions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .latin
            .iter()
            .map(|&x| LATIN_NAMES[x as usize])
            .chain(self.greek.iter().map(|&y| GREEK_NAMES[y as usize]))
            .collect();
        write!(f, "{}", names.join(","))
    }
}

/// Row and column exclusions for the upper-left 4 x 4 block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionTable {
    pub rows: Vec<Exclusions>,
    pub cols: Vec<Exclusions>,
}

pub fn exclusion_table(p: &PartialGraecoSquare) -> ExclusionTable {
    let n = p.order();
    let collect = |cells: Vec<Option<(u8, u8)>>| {
        let mut latin: Vec<u8> = cells.iter().flatten().map(|c| c.0).filter(|&x| x < 4).collect();
        let mut greek: Vec<u8> = cells.iter().flatten().map(|c| c.1).filter(|&y| y < 4).collect();
        latin.sort();
        greek.sort();
        Exclusions { latin, greek }
    };
    ExclusionTable {
        rows: (0..4).map(|r| collect((0..n).map(|c| p.get(r, c)).collect())).collect(),
        cols: (0..4).map(|c| collect((0..n).map(|r| p.get(r, c)).collect())).collect(),
    }
}

/// Pairs of `{a..d} x {α..δ}` not yet used anywhere in the square.
fn open_pairs(p: &PartialGraecoSquare) -> Vec<(u8, u8)> {
    let used: BTreeSet<(u8, u8)> = (0..p.order() * p.order()).filter_map(|i| p.cells[i]).collect();
    (0..4u8)
        .flat_map(|x| (0..4u8).map(move |y| (x, y)))
        .filter(|q| !used.contains(q))
        .collect()
}

fn allowed(p: &PartialGraecoSquare, table: &ExclusionTable, (r, c): (usize, usize)) -> Vec<(u8, u8)> {
    let (row, col) = (&table.rows[r], &table.cols[c]);
    open_pairs(p)
        .into_iter()
        .filter(|(x, y)| {
            !row.latin.contains(x) && !col.latin.contains(x) && !row.greek.contains(y) && !col.greek.contains(y)
        })
        .collect()
}

/// One branch of the cross argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossBranch {
    pub center: String,
    pub remaining: Vec<String>,
    pub cells_left: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossAnalysis {
    pub center: (usize, usize),
    pub cells: Vec<(usize, usize)>,
    pub shared_exclusions: bool,
    pub pool: Vec<String>,
    /// Pool pairs that fit only the center cell.
    pub center_only: Vec<String>,
    pub branches: Vec<CrossBranch>,
}

impl CrossAnalysis {
    /// Every branch leaves fewer distinct pairs than cells to fill.
    pub fn contradicts(&self) -> bool {
        !self.branches.is_empty() && self.branches.iter().all(|b| b.remaining.len() < b.cells_left)
    }
}

/// The cross is the blanks of row 1 and column 2, which carry the same
/// exclusions. Every pair in it shares a row or column with the center, so
/// the four outer cells need four distinct pairs that avoid both symbols of
/// the center pair.
pub fn cross_analysis(p: &PartialGraecoSquare) -> CrossAnalysis {
    let table = exclusion_table(p);
    let (cr, cc) = (1usize, 2usize);
    let n = p.order();
    let mut cells: Vec<(usize, usize)> = (0..n).filter(|&c| p.get(cr, c).is_none()).map(|c| (cr, c)).collect();
    cells.extend((0..n).filter(|&r| r != cr && p.get(r, cc).is_none()).map(|r| (r, cc)));
    cells.sort();
    let shared = table.rows[cr] == table.cols[cc];
    let pool = allowed(p, &table, (cr, cc));
    let outer: Vec<(usize, usize)> = cells.iter().copied().filter(|&x| x != (cr, cc)).collect();
    let outer_allowed: Vec<Vec<(u8, u8)>> = outer.iter().map(|&x| allowed(p, &table, x)).collect();
    let center_only: Vec<(u8, u8)> = pool
        .iter()
        .copied()
        .filter(|q| outer_allowed.iter().all(|a| !a.contains(q)))
        .collect();
    let branches = pool
        .iter()
        .map(|&(x, y)| {
            let remaining: BTreeSet<(u8, u8)> = outer_allowed
                .iter()
                .flatten()
                .copied()
                .filter(|&(a, b)| a != x && b != y)
                .collect();
            CrossBranch {
                center: pair_name((x, y)),
                remaining: remaining.into_iter().map(pair_name).collect(),
                cells_left: outer.len(),
            }
        })
        .collect();
    CrossAnalysis {
        center: (cr, cc),
        cells,
        shared_exclusions: shared,
        pool: pool.into_iter().map(pair_name).collect(),
        center_only: center_only.into_iter().map(pair_name).collect(),
        branches,
    }
}

pub fn cross_certificate() -> Certificate {
    let sq = build_partial_square();
    let cross = cross_analysis(&sq);
    let mut cert = Certificate::new("case2222.cross", "the cross of row 2 and column 3 cannot be filled")
        .inputs(&sq);
    cert.check("row 2 and column 3 have the same exclusions", cross.shared_exclusions);
    cert.check(
        format!("{} cells, pool {{{}}}", cross.cells.len(), cross.pool.join(", ")),
        cross.cells.len() == 5,
    );
    for b in &cross.branches {
        cert.check(
            format!(
                "center {}: {} pairs left for {} cells",
                b.center,
                b.remaining.len(),
                b.cells_left
            ),
            b.remaining.len() < b.cells_left,
        );
    }
    cert.check("every branch contradicts", cross.contradicts());
    cert.payload(json!(cross))
}

fn tagging_certificate() -> Certificate {
    let tags = standard_tagging();
    let mut cert = Certificate::new("case2222.tagging", "the 24 points of Λ carry distinct valid tags")
        .inputs(&TAG_DIAGRAM);
    for (what, holds) in tagging_checks(&tags) {
        cert.check(what, holds);
    }
    let mut diagram = String::new();
    for row in TAG_DIAGRAM {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>7}")).collect();
        diagram.push_str(&cells.join(""));
        diagram.push('\n');
    }
    cert.note(diagram);
    cert
}

fn line_list_certificate() -> Certificate {
    let mut cert = Certificate::new(
        "case2222.line-lists",
        "each class has two line lists, related by negation and by sign changes",
    );
    let eq = sign_equivalence();
    cert.check(
        format!("line lists per class: {:?}", eq.lists_per_class),
        eq.lists_per_class == [2; 4],
    );
    cert.check("in every class the second list is the first negated", eq.negation_pairs);
    cert.check(
        format!("the 16 sign patterns reach {} of {} collections", eq.orbit_size, eq.collections),
        eq.collections == 16 && eq.orbit_size == 16,
    );
    cert.check(
        "flipping the class-4 labels keeps the class-4 list and negates the others",
        eq.flip4_changes == [true, true, true, false],
    );
    let class4 = enumerate_line_lists(3);
    let has = |l: [&str; 3]| {
        let mut t = l.map(tag);
        t.sort();
        class4.iter().filter(|list| list.contains(&t)).count() == 1
    };
    cert.check(
        "one class-4 list has 1100, -1010, 0-1-10 and the other 1100, -10-10, 0-110",
        has(["1100", "-1010", "0-1-10"]) && has(["1100", "-10-10", "0-110"]),
    );
    let columns = grid_list(0);
    let rows = grid_list(1);
    cert.check(
        "columns 1-4 of the diagram form a class-1 line list",
        enumerate_line_lists(0).contains(&columns),
    );
    cert.check(
        "rows 1-4 of the diagram form a class-2 line list",
        enumerate_line_lists(1).contains(&rows),
    );
    cert.check(
        "lines a-d form a class-3 line list",
        enumerate_line_lists(2).contains(&assigned_list(&LATIN_LINES)),
    );
    cert.check(
        "lines α-δ form a class-4 line list",
        class4.contains(&assigned_list(&GREEK_LINES)),
    );
    let render = |l: &LineList| l.iter().map(|t| t.map(|x| x.to_string()).join(" ")).collect::<Vec<_>>();
    cert.payload(json!({
        "class4": class4.iter().map(render).collect::<Vec<_>>(),
        "note": "equivalence is checked on the standard layout only",
    }))
}

fn square_certificate(sq: &PartialGraecoSquare) -> Certificate {
    let reference = PartialGraecoSquare::from_names(&REFERENCE_SQUARE).expect("reference table");
    let mut cert = Certificate::new(
        "case2222.partial-square",
        "the tagged points give two-thirds of a Graeco-Latin square",
    )
    .inputs(&(LATIN_LINES, GREEK_LINES));
    cert.check("filled cells are consistent", sq.validate().is_ok());
    cert.check(format!("{} filled cells, {} blanks", sq.filled(), sq.blanks().len()), sq.filled() == 24);
    let off_diagonal = sq.blanks().iter().all(|&i| i / 6 < 4 && i % 6 < 4 && i / 6 != i % 6);
    cert.check("blanks are the off-diagonal cells of the upper-left 4 x 4 block", off_diagonal);
    cert.check("matches the reference table cell for cell", *sq == reference);
    let table = exclusion_table(sq);
    let rows: Vec<String> = table.rows.iter().map(ToString::to_string).collect();
    let cols: Vec<String> = table.cols.iter().map(ToString::to_string).collect();
    cert.note(sq.to_table());
    cert.note(format!("row exclusions: {}\ncolumn exclusions: {}", rows.join(" | "), cols.join(" | ")));
    let table_json: Vec<Vec<String>> = (0..6)
        .map(|r| (0..6).map(|c| sq.get(r, c).map(pair_name).unwrap_or_default()).collect())
        .collect();
    cert.payload(json!({"square": table_json, "row_exclusions": rows, "column_exclusions": cols}))
}

/// All of the 2222 checks under one node.
pub fn case2222_certificate() -> Certificate {
    let sq = build_partial_square();
    let completions = count_completions(&sq);
    let orders = [VisitOrder::RowMajor, VisitOrder::ColumnMajor, VisitOrder::ReverseRowMajor];
    let counts: Vec<u64> = orders
        .iter()
        .map(|&order| {
            count_completions_with(
                &sq,
                &CompletionOptions {
                    order,
                    ..Default::default()
                },
            )
            .count
        })
        .collect();
    let mut search = Certificate::new("case2222.completions", "the 12 blanks admit no completion")
        .inputs(&sq)
        .with_check(format!("exhaustive count = {}", completions.count), completions.count == 0)
        .with_check(
            format!("three visit orders agree: {counts:?}"),
            counts.iter().all(|&c| c == completions.count),
        )
        .payload(json!({"count": completions.count, "trace": completions.trace}));
    search.note(format!(
        "nodes by depth {:?}, dead ends {}",
        completions.trace.nodes, completions.trace.dead_ends
    ));
    let cross = cross_certificate();
    let agree = Certificate::new("case2222.agreement", "cross argument and exhaustive count agree")
        .with_check(
            "cross contradiction and zero completions hold together",
            cross.passed() && completions.count == 0,
        );
    Certificate::new("case2222", "no dependency has parallax 2222")
        .with_child(tagging_certificate())
        .with_child(line_list_certificate())
        .with_child(square_certificate(&sq))
        .with_child(search)
        .with_child(cross)
        .with_child(agree)
}
