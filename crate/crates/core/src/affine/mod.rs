//! Affine planes: reference planes AG(2, q), the parallelogram-diagonal
//! property, the order-6 nonexistence argument on a 6 x 6 grid, and the
//! Bruck-Ryser arithmetic test.

mod field;
pub mod grid;

pub use field::SmallField;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::{validate_net, DesignError, Net};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("no field-based plane of order {0} is available (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedOrder(usize),
    #[error("not an affine plane: {0}")]
    NotAPlane(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("point {0} is out of range")]
    NoSuchPoint(usize),
    #[error("points must be four distinct points")]
    RepeatedPoint,
    #[error("points {0:?} are collinear")]
    Degenerate([usize; 3]),
    #[error("the four points are not a parallelogram")]
    NotAParallelogram,
}

/// An affine plane of order `n`: `n²` points and `n + 1` parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidencePlane {
    net: Net,
    /// `line_of[p * n² + q]`: (class, index) of the line through p ≠ q.
    line_of: Vec<(u16, u16)>,
}

impl IncidencePlane {
    /// Validates the net axioms, the class count and the two-points-one-line
    /// axiom.
    pub fn from_classes(order: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self, AffineError> {
        if classes.len() != order + 1 {
            return Err(AffineError::NotAPlane(format!(
                "{} classes, expected {}",
                classes.len(),
                order + 1
            )));
        }
        let net = validate_net(order, classes)?;
        let points = order * order;
        let mut line_of = vec![(u16::MAX, u16::MAX); points * points];
        for (ci, class) in net.classes().iter().enumerate() {
            for (li, line) in class.iter().enumerate() {
                for &a in line {
                    for &b in line {
                        if a != b {
                            line_of[a * points + b] = (ci as u16, li as u16);
                        }
                    }
                }
            }
        }
        for a in 0..points {
            for b in 0..points {
                if a != b && line_of[a * points + b].0 == u16::MAX {
                    return Err(AffineError::NotAPlane(format!("points {a} and {b} share no line")));
                }
            }
        }
        Ok(Self { net, line_of })
    }

    pub fn order(&self) -> usize {
        self.net.order()
    }

    pub fn num_points(&self) -> usize {
        self.net.num_points()
    }

    pub fn num_lines(&self) -> usize {
        self.net.num_classes() * self.order()
    }

    pub fn num_classes(&self) -> usize {
        self.net.num_classes()
    }

    pub fn as_net(&self) -> &Net {
        &self.net
    }

    /// The net formed by the listed parallel classes.
    pub fn to_net(&self, classes: &[usize]) -> Result<Net, DesignError> {
        self.net.restrict(classes)
    }

    /// (class, index) of the line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> (usize, usize) {
        assert_ne!(a, b);
        let (c, i) = self.line_of[a * self.num_points() + b];
        (c as usize, i as usize)
    }

    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        self.line_through(a, b) == self.line_through(a, c)
    }

    /// Every pair of distinct points lies on exactly one line (recounted
    /// from the line lists, not the lookup table).
    pub fn check_two_points_one_line(&self) -> bool {
        let points = self.num_points();
        let mut count = vec![0u8; points * points];
        for class in self.net.classes() {
            for line in class {
                for &a in line {
                    for &b in line {
                        if a != b {
                            count[a * points + b] += 1;
                        }
                    }
                }
            }
        }
        (0..points).all(|a| (0..points).all(|b| a == b || count[a * points + b] == 1))
    }
}

/// The plane over the field of order `q`: point `(x, y)` has index
/// `x·q + y`; class `m < q` holds the lines `y = m·x + b`, class `q` the
/// lines `x = c`.
pub fn ag2(q: u32) -> Result<IncidencePlane, AffineError> {
    let q = q as usize;
    let f = SmallField::new(q).ok_or(AffineError::UnsupportedOrder(q))?;
    let mut classes = Vec::with_capacity(q + 1);
    for m in 0..q {
        let class = (0..q)
            .map(|b| (0..q).map(|x| x * q + f.add(f.mul(m, x), b)).collect())
            .collect();
        classes.push(class);
    }
    classes.push((0..q).map(|c| (0..q).map(|y| c * q + y).collect()).collect());
    IncidencePlane::from_classes(q, classes)
}

/// Whether the diagonals of the parallelogram on these four points are
/// parallel.
///
/// The four points split into pairs in three ways. For a parallelogram, at
/// least two of the splittings pair points along parallel lines (the sides);
/// the remaining one is the pair of diagonals. The diagonals are parallel
/// exactly when all three splittings are parallel.
pub fn diagonals_parallel(plane: &IncidencePlane, points: [usize; 4]) -> Result<bool, AffineError> {
    for &p in &points {
        if p >= plane.num_points() {
            return Err(AffineError::NoSuchPoint(p));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if points[i] == points[j] {
                return Err(AffineError::RepeatedPoint);
            }
        }
    }
    for skip in 0..4 {
        let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| points[i]).collect();
        if plane.collinear(t[0], t[1], t[2]) {
            return Err(AffineError::Degenerate([t[0], t[1], t[2]]));
        }
    }
    let [a, b, c, d] = points;
    let parallel =
        |(p, q): (usize, usize), (r, s): (usize, usize)| plane.line_through(p, q).0 == plane.line_through(r, s).0;
    let count = [
        parallel((a, b), (c, d)),
        parallel((a, c), (b, d)),
        parallel((a, d), (b, c)),
    ]
    .iter()
    .filter(|&&x| x)
    .count();
    if count < 2 {
        return Err(AffineError::NotAParallelogram);
    }
    Ok(count == 3)
}

/// Every parallelogram of a plane, as sorted point quadruples. Each one is the
/// set of intersections of two parallel lines from one class with two parallel
/// lines from another.
pub fn parallelograms(plane: &IncidencePlane) -> Vec<[usize; 4]> {
    let net = plane.as_net();
    let n = plane.order();
    let k = plane.num_classes();
    let mut out = std::collections::BTreeSet::new();
    let meet = |c1: usize, l1: usize, c2: usize, l2: usize| -> usize {
        let a = &net.classes()[c1][l1];
        let b = &net.classes()[c2][l2];
        *a.iter().find(|p| b.binary_search(p).is_ok()).expect("non-parallel lines meet")
    };
    for c1 in 0..k {
        for c2 in c1 + 1..k {
            for a1 in 0..n {
                for a2 in a1 + 1..n {
                    for b1 in 0..n {
                        for b2 in b1 + 1..n {
                            let mut q = [
                                meet(c1, a1, c2, b1),
                                meet(c1, a1, c2, b2),
                                meet(c1, a2, c2, b1),
                                meet(c1, a2, c2, b2),
                            ];
                            q.sort_unstable();
                            out.insert(q);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelogramSurvey {
    pub order: usize,
    pub parallelograms: usize,
    pub with_parallel_diagonals: usize,
    /// First parallelogram (in sorted order) whose diagonals meet.
    pub witness: Option<[usize; 4]>,
}

impl ParallelogramSurvey {
    pub fn all_parallel(&self) -> bool {
        self.parallelograms == self.with_parallel_diagonals
    }

    pub fn none_parallel(&self) -> bool {
        self.with_parallel_diagonals == 0
    }
}

/// Checks the diagonal property on every parallelogram of the plane.
pub fn survey_parallelograms(plane: &IncidencePlane) -> ParallelogramSurvey {
    let all = parallelograms(plane);
    let mut with_parallel = 0;
    let mut witness = None;
    for q in &all {
        if diagonals_parallel(plane, *q).expect("generated parallelograms are valid") {
            with_parallel += 1;
        } else if witness.is_none() {
            witness = Some(*q);
        }
    }
    ParallelogramSurvey {
        order: plane.order(),
        parallelograms: all.len(),
        with_parallel_diagonals: with_parallel,
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruckRyser {
    pub n: u64,
    pub residue_mod_4: u64,
    /// `(a, b)` with `a ≤ b` and `a² + b² = n`, the first found by scanning `a`.
    pub two_squares: Option<(u64, u64)>,
    pub excluded: bool,
}

/// The Bruck-Ryser criterion: if `n ≡ 1, 2 (mod 4)` and `n` is not a sum of
/// two squares, no projective (hence no affine) plane of order `n` exists.
pub fn bruck_ryser(n: u64) -> BruckRyser {
    let residue = n % 4;
    let mut two_squares = None;
    let mut a = 0u64;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            two_squares = Some((a, b));
            break;
        }
        a += 1;
    }
    BruckRyser {
        n,
        residue_mod_4: residue,
        excluded: matches!(residue, 1 | 2) && two_squares.is_none(),
        two_squares,
    }
}

pub fn bruck_ryser_excluded(n: u64) -> bool {
    bruck_ryser(n).excluded
}
