//! Latin squares, Graeco-Latin pairs and (n, k) nets.
//!
//! Symbols are the integers `0..n`. Validation stops at the first violation
//! found in row-major scan order so error messages are deterministic.

mod io;

pub use io::{
    format_graeco_pair, pair_from_squares, parse_graeco_pair, parse_graeco_pairs, parse_latin_square,
    parse_net_json, Alphabet, LoadedPair, LoadedSquare, NetFile,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("array is not square: row {row} has {found} cells, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty array")]
    Empty,
    #[error("symbol {symbol} at ({row}, {col}) is out of range for order {order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },
    #[error("row {row} repeats symbol {symbol} (second occurrence at column {col})")]
    RowRepeat { row: usize, col: usize, symbol: usize },
    #[error("column {col} repeats symbol {symbol} (second occurrence at row {row})")]
    ColumnRepeat { row: usize, col: usize, symbol: usize },
    #[error("squares have different orders: {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("squares {first} and {second} are not orthogonal: {defect}")]
    NotOrthogonal {
        first: usize,
        second: usize,
        defect: OrthogonalityDefect,
    },
    #[error("no squares given")]
    NoSquares,
    #[error("net has k = {declared} but {found} classes were given")]
    ClassCountMismatch { declared: usize, found: usize },
    #[error("axiom 1 violated in class {class}: {reason}")]
    NotAPartition { class: usize, reason: String },
    #[error("axiom 2 violated: lines {first} and {second} meet in {meets} points")]
    BadCrossing {
        first: LineId,
        second: LineId,
        meets: usize,
    },
    #[error("class {class} does not exist; the net has {available}")]
    NoSuchClass { class: usize, available: usize },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl DesignError {
    /// True when the input was well-formed but breaks a Latin, orthogonality
    /// or net axiom, as opposed to being malformed.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            DesignError::RowRepeat { .. }
                | DesignError::ColumnRepeat { .. }
                | DesignError::NotOrthogonal { .. }
                | DesignError::NotAPartition { .. }
                | DesignError::BadCrossing { .. }
        )
    }
}

/// An `n x n` Latin square with symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.order + col]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|&s| s as usize).collect())
            .collect()
    }

    /// Builds a square from trusted row-major cells. Callers guarantee the
    /// Latin property; debug builds check it.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        let sq = Self { order, cells };
        debug_assert!(validate_latin(&sq.rows()).is_ok());
        sq
    }

    /// The Cayley table of the cyclic group: `L[r][c] = (r + c) mod n`.
    pub fn cyclic(order: usize) -> Self {
        assert!((1..=255).contains(&order));
        let cells = (0..order)
            .flat_map(|r| (0..order).map(move |c| ((r + c) % order) as u8))
            .collect();
        Self { order, cells }
    }

    /// Applies a row, column and symbol relabeling:
    /// `new[rows[r]][cols[c]] = symbols[old[r][c]]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize], symbols: &[usize]) -> Self {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[rows[r] * n + cols[c]] = symbols[self.get(r, c) as usize] as u8;
            }
        }
        Self::from_cells_unchecked(n, cells)
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| self.get(c, r))
            .collect();
        Self::from_cells_unchecked(n, cells)
    }

    /// First row and first column both read `0, 1, ..., n-1`.
    pub fn is_reduced(&self) -> bool {
        (0..self.order).all(|i| self.get(0, i) as usize == i && self.get(i, 0) as usize == i)
    }
}

/// Checks the Latin property and returns the validated square.
pub fn validate_latin(cells: &[Vec<usize>]) -> Result<LatinSquare, DesignError> {
    let n = cells.len();
    if n == 0 {
        return Err(DesignError::Empty);
    }
    for (row, r) in cells.iter().enumerate() {
        if r.len() != n {
            return Err(DesignError::NotSquare {
                row,
                expected: n,
                found: r.len(),
            });
        }
    }
    let mut in_row = vec![vec![false; n]; n];
    let mut in_col = vec![vec![false; n]; n];
    let mut flat = Vec::with_capacity(n * n);
    for (row, r) in cells.iter().enumerate() {
        for (col, &symbol) in r.iter().enumerate() {
            if symbol >= n {
                return Err(DesignError::SymbolOutOfRange {
                    row,
                    col,
                    symbol,
                    order: n,
                });
            }
            if in_row[row][symbol] {
                return Err(DesignError::RowRepeat { row, col, symbol });
            }
            if in_col[col][symbol] {
                return Err(DesignError::ColumnRepeat { row, col, symbol });
            }
            in_row[row][symbol] = true;
            in_col[col][symbol] = true;
            flat.push(symbol as u8);
        }
    }
    Ok(LatinSquare {
        order: n,
        cells: flat,
    })
}

/// Two Latin squares of one order, superimposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraecoPair {
    latin: LatinSquare,
    greek: LatinSquare,
}

impl GraecoPair {
    pub fn new(latin: LatinSquare, greek: LatinSquare) -> Result<Self, DesignError> {
        if latin.order() != greek.order() {
            return Err(DesignError::OrderMismatch {
                left: latin.order(),
                right: greek.order(),
            });
        }
        Ok(Self { latin, greek })
    }

    pub fn latin(&self) -> &LatinSquare {
        &self.latin
    }

    pub fn greek(&self) -> &LatinSquare {
        &self.greek
    }

    pub fn order(&self) -> usize {
        self.latin.order()
    }
}

/// An ordered (latin, greek) symbol pair that occurs more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepeatedPair {
    pub pair: (u8, u8),
    pub count: usize,
}

/// Which superimposed pairs are repeated and which never occur.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityDefect {
    pub duplicated: Vec<RepeatedPair>,
    pub missing: Vec<(u8, u8)>,
}

impl OrthogonalityDefect {
    pub fn is_empty(&self) -> bool {
        self.duplicated.is_empty() && self.missing.is_empty()
    }

    /// Total number of surplus occurrences over the duplicated pairs.
    pub fn excess(&self) -> usize {
        self.duplicated.iter().map(|d| d.count - 1).sum()
    }
}

impl std::fmt::Display for OrthogonalityDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dup: Vec<String> = self
            .duplicated
            .iter()
            .map(|d| format!("({},{})x{}", d.pair.0, d.pair.1, d.count))
            .collect();
        let miss: Vec<String> = self
            .missing
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(
            f,
            "duplicated [{}], missing [{}]",
            dup.join(" "),
            miss.join(" ")
        )
    }
}

pub fn orthogonality_defect(pair: &GraecoPair) -> OrthogonalityDefect {
    let n = pair.order();
    let mut counts = vec![0usize; n * n];
    for (&a, &b) in pair.latin.cells().iter().zip(pair.greek.cells()) {
        counts[a as usize * n + b as usize] += 1;
    }
    let mut defect = OrthogonalityDefect::default();
    for (i, &count) in counts.iter().enumerate() {
        let p = ((i / n) as u8, (i % n) as u8);
        match count {
            0 => defect.missing.push(p),
            1 => {}
            _ => defect.duplicated.push(RepeatedPair { pair: p, count }),
        }
    }
    defect
}

pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> bool {
    GraecoPair::new(a.clone(), b.clone())
        .map(|p| orthogonality_defect(&p).is_empty())
        .unwrap_or(false)
}

/// A line of a net: `class` and `index` within the class, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId {
    pub class: usize,
    pub index: usize,
}

impl LineId {
    pub fn new(class: usize, index: usize) -> Self {
        Self { class, index }
    }
}

impl std::fmt::Display for LineId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.class, self.index)
    }
}

/// An (n, k) net on the points `0..n²`: `k` parallel classes of `n` lines,
/// each line stored as a sorted list of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Net {
    order: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

impl Net {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_points(&self) -> usize {
        self.order * self.order
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn line(&self, id: LineId) -> &[usize] {
        &self.classes[id.class][id.index]
    }

    /// All lines in class-major order.
    pub fn line_ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.classes.len()).flat_map(move |c| (0..self.order).map(move |i| LineId::new(c, i)))
    }

    /// Index of the line of `class` through `point`.
    pub fn line_through(&self, class: usize, point: usize) -> usize {
        self.classes[class]
            .iter()
            .position(|l| l.binary_search(&point).is_ok())
            .expect("each class partitions the points")
    }

    /// The sub-net formed by the listed classes, in the given order.
    pub fn restrict(&self, classes: &[usize]) -> Result<Net, DesignError> {
        if let Some(&class) = classes.iter().find(|&&c| c >= self.classes.len()) {
            return Err(DesignError::NoSuchClass {
                class,
                available: self.classes.len(),
            });
        }
        validate_net(
            self.order,
            classes.iter().map(|&c| self.classes[c].clone()).collect(),
        )
    }

    /// Reads the symbol squares back out of a net with `k ≥ 2`, using class
    /// 0 for row coordinates and class 1 for column coordinates.
    pub fn to_squares(&self) -> Vec<LatinSquare> {
        let n = self.order;
        if self.classes.len() < 2 {
            return Vec::new();
        }
        (2..self.classes.len())
            .map(|class| {
                let mut cells = vec![0u8; n * n];
                for p in 0..n * n {
                    let r = self.line_through(0, p);
                    let c = self.line_through(1, p);
                    cells[r * n + c] = self.line_through(class, p) as u8;
                }
                LatinSquare::from_cells_unchecked(n, cells)
            })
            .collect()
    }
}

/// Validates both net axioms exhaustively: every class partitions the
/// points into lines of size `n`, and lines of different classes meet once.
pub fn validate_net(order: usize, mut classes: Vec<Vec<Vec<usize>>>) -> Result<Net, DesignError> {
    if order == 0 {
        return Err(DesignError::Empty);
    }
    let points = order * order;
    for (ci, class) in classes.iter_mut().enumerate() {
        if class.len() != order {
            return Err(DesignError::NotAPartition {
                class: ci,
                reason: format!("{} lines, expected {order}", class.len()),
            });
        }
        let mut seen = vec![false; points];
        for (li, line) in class.iter_mut().enumerate() {
            line.sort_unstable();
            if line.len() != order {
                return Err(DesignError::NotAPartition {
                    class: ci,
                    reason: format!("line {li} has {} points, expected {order}", line.len()),
                });
            }
            for &p in line.iter() {
                if p >= points {
                    return Err(DesignError::NotAPartition {
                        class: ci,
                        reason: format!("line {li} contains point {p} outside 0..{points}"),
                    });
                }
                if seen[p] {
                    return Err(DesignError::NotAPartition {
                        class: ci,
                        reason: format!("point {p} covered twice (again by line {li})"),
                    });
                }
                seen[p] = true;
            }
        }
    }
    // line_of[class][point]: which line of the class contains the point
    let line_of: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| {
            let mut owner = vec![0; points];
            for (li, line) in class.iter().enumerate() {
                for &p in line {
                    owner[p] = li;
                }
            }
            owner
        })
        .collect();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            for (la, line) in classes[a].iter().enumerate() {
                let mut meets = vec![0usize; order];
                for &p in line {
                    meets[line_of[b][p]] += 1;
                }
                if let Some((lb, &m)) = meets.iter().enumerate().find(|(_, &m)| m != 1) {
                    return Err(DesignError::BadCrossing {
                        first: LineId::new(a, la),
                        second: LineId::new(b, lb),
                        meets: m,
                    });
                }
            }
        }
    }
    Ok(Net { order, classes })
}

/// The rows and columns of an `n x n` grid as a net with two classes.
pub fn grid_net(order: usize) -> Net {
    let rows = (0..order)
        .map(|r| (0..order).map(|c| r * order + c).collect())
        .collect();
    let cols = (0..order)
        .map(|c| (0..order).map(|r| r * order + c).collect())
        .collect();
    validate_net(order, vec![rows, cols]).expect("grid is a net")
}

/// Builds the (n, m+2) net of rows, columns, and the symbol classes of `m`
/// pairwise orthogonal Latin squares.
pub fn net_from_mols(squares: &[LatinSquare]) -> Result<Net, DesignError> {
    let first = squares.first().ok_or(DesignError::NoSquares)?;
    let n = first.order();
    for s in squares {
        if s.order() != n {
            return Err(DesignError::OrderMismatch {
                left: n,
                right: s.order(),
            });
        }
    }
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            let pair = GraecoPair::new(squares[i].clone(), squares[j].clone())?;
            let defect = orthogonality_defect(&pair);
            if !defect.is_empty() {
                return Err(DesignError::NotOrthogonal {
                    first: i,
                    second: j,
                    defect,
                });
            }
        }
    }
    let mut classes = vec![grid_net(n).classes[0].clone(), grid_net(n).classes[1].clone()];
    for s in squares {
        let mut class = vec![Vec::with_capacity(n); n];
        for (p, &sym) in s.cells().iter().enumerate() {
            class[sym as usize].push(p);
        }
        classes.push(class);
    }
    validate_net(n, classes)
}

/// Symbol-location lines of a square, with no orthogonality check. Useful for
/// exhibiting why a defective pair fails the net axioms.
pub fn symbol_class(square: &LatinSquare) -> Vec<Vec<usize>> {
    let n = square.order();
    let mut class = vec![Vec::new(); n];
    for (p, &sym) in square.cells().iter().enumerate() {
        class[sym as usize].push(p);
    }
    class
}

/// Counts of each ordered pair, for tests and diagnostics.
pub fn pair_counts(pair: &GraecoPair) -> BTreeMap<(u8, u8), usize> {
    let mut m = BTreeMap::new();
    for (&a, &b) in pair.latin.cells().iter().zip(pair.greek.cells()) {
        *m.entry((a, b)).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(rows: &[&[usize]]) -> LatinSquare {
        validate_latin(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_squares() {
        assert!(validate_latin(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(
            validate_latin(&[vec![0, 0], vec![1, 1]]).unwrap_err(),
            DesignError::RowRepeat {
                row: 0,
                col: 1,
                symbol: 0
            }
        );
        assert_eq!(
            validate_latin(&[vec![0, 1], vec![0, 1]]).unwrap_err(),
            DesignError::ColumnRepeat {
                row: 1,
                col: 0,
                symbol: 0
            }
        );
        assert!(matches!(
            validate_latin(&[vec![0, 2], vec![1, 0]]),
            Err(DesignError::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(matches!(
            validate_latin(&[vec![0, 1], vec![1]]),
            Err(DesignError::NotSquare { row: 1, .. })
        ));
    }

    #[test]
    fn cyclic_three_and_shifted_mate() {
        let a = LatinSquare::cyclic(3);
        // b[r][c] = (2r + c) mod 3
        let b = sq(&[&[0, 1, 2], &[2, 0, 1], &[1, 2, 0]]);
        // brute force over all 9 cells: every ordered pair occurs once
        let mut seen = [[0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                seen[a.get(r, c) as usize][b.get(r, c) as usize] += 1;
            }
        }
        assert!(seen.iter().flatten().all(|&x| x == 1));
        let pair = GraecoPair::new(a, b).unwrap();
        assert!(orthogonality_defect(&pair).is_empty());
    }

    #[test]
    fn square_with_itself_is_defective() {
        for n in 2..6 {
            let a = LatinSquare::cyclic(n);
            let d = orthogonality_defect(&GraecoPair::new(a.clone(), a).unwrap());
            assert!(!d.is_empty());
            assert_eq!(d.missing.len(), n * n - n);
            assert!(d.duplicated.iter().all(|r| r.pair.0 == r.pair.1 && r.count == n));
            assert_eq!(d.excess(), d.missing.len());
        }
    }

    #[test]
    fn order_mismatch() {
        assert!(matches!(
            GraecoPair::new(LatinSquare::cyclic(3), LatinSquare::cyclic(4)),
            Err(DesignError::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn one_square_gives_three_classes() {
        let net = net_from_mols(&[LatinSquare::cyclic(3)]).unwrap();
        assert_eq!(net.num_points(), 9);
        assert_eq!(net.num_classes(), 3);
        assert_eq!(net.line_ids().count(), 9);
    }

    #[test]
    fn two_orthogonal_order_three_squares_give_a_net() {
        let b = sq(&[&[0, 1, 2], &[2, 0, 1], &[1, 2, 0]]);
        let net = net_from_mols(&[LatinSquare::cyclic(3), b.clone()]).unwrap();
        assert_eq!(net.num_classes(), 4);
        // independent axiom check over every pair of lines
        let ids: Vec<LineId> = net.line_ids().collect();
        for &x in &ids {
            for &y in &ids {
                let common = net.line(x).iter().filter(|p| net.line(y).contains(p)).count();
                let expected = match (x == y, x.class == y.class) {
                    (true, _) => 3,
                    (false, true) => 0,
                    (false, false) => 1,
                };
                assert_eq!(common, expected, "{x} vs {y}");
            }
        }
        assert_eq!(net.to_squares(), vec![LatinSquare::cyclic(3), b]);
    }

    #[test]
    fn grid_and_duplicated_class() {
        let g = grid_net(6);
        assert_eq!(g.num_classes(), 2);
        let rows = g.classes()[0].clone();
        let err = validate_net(6, vec![rows.clone(), rows]).unwrap_err();
        assert_eq!(
            err,
            DesignError::BadCrossing {
                first: LineId::new(0, 0),
                second: LineId::new(1, 0),
                meets: 6
            }
        );
    }

    #[test]
    fn partition_violations() {
        let mut rows = grid_net(3).classes()[0].clone();
        rows[1][0] = 0;
        assert!(matches!(
            validate_net(3, vec![rows]),
            Err(DesignError::NotAPartition { class: 0, .. })
        ));
        let short = vec![vec![vec![0, 1, 2], vec![3, 4, 5]]];
        assert!(matches!(
            validate_net(3, short),
            Err(DesignError::NotAPartition { .. })
        ));
    }

    #[test]
    fn non_orthogonal_input_rejected() {
        let a = LatinSquare::cyclic(4);
        let err = net_from_mols(&[a.clone(), a]).unwrap_err();
        assert!(matches!(err, DesignError::NotOrthogonal { first: 0, second: 1, .. }));
    }

    #[test]
    fn permuted_square_stays_latin() {
        let a = LatinSquare::cyclic(5);
        let p = a.permuted(&[4, 2, 0, 1, 3], &[1, 0, 3, 4, 2], &[2, 3, 4, 0, 1]);
        assert!(validate_latin(&p.rows()).is_ok());
        assert!(!p.is_reduced());
        assert!(LatinSquare::cyclic(5).is_reduced());
    }
}
