//! The order-6 argument on a 6 x 6 coordinate grid.
//!
//! Points are written `xy` with `x, y ∈ 1..=6`. Taking two parallel classes
//! of a hypothetical plane as the grid lines `x = c` and `y = d`, every other
//! line meets each grid line once, so it is the graph of a permutation of
//! `1..=6`. The checks below work with lines as permutations.
//!
//! Quadrants: LL = x ≤ 3, y ≤ 3; LR = x ≥ 4, y ≤ 3; UL = x ≤ 3, y ≥ 4;
//! UR = x ≥ 4, y ≥ 4.
//!
//! The relabelings of coordinates that put the diagonals into the fixed
//! positions used here are taken as given; the certificates only replay the
//! consequences for these fixed positions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::Certificate;

pub const SIZE: u8 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: u8,
    pub y: u8,
}

impl GridPoint {
    pub const fn new(x: u8, y: u8) -> Self {
        Self { x, y }
    }

    /// Parses `"45"` as x = 4, y = 5.
    pub fn parse(s: &str) -> Option<Self> {
        let b = s.as_bytes();
        if b.len() != 2 {
            return None;
        }
        let x = b[0].checked_sub(b'0')?;
        let y = b[1].checked_sub(b'0')?;
        ((1..=SIZE).contains(&x) && (1..=SIZE).contains(&y)).then_some(Self { x, y })
    }

    pub fn quadrant(&self) -> Quadrant {
        match (self.x <= 3, self.y <= 3) {
            (true, true) => Quadrant::LL,
            (false, true) => Quadrant::LR,
            (true, false) => Quadrant::UL,
            (false, false) => Quadrant::UR,
        }
    }

    /// Whether two points lie on a common grid line.
    pub fn shares_grid_line(&self, other: &Self) -> bool {
        self.x == other.x || self.y == other.y
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    LL,
    LR,
    UL,
    UR,
}

fn pts(list: &[&str]) -> BTreeSet<GridPoint> {
    list.iter()
        .map(|s| GridPoint::parse(s).expect("literal grid point"))
        .collect()
}

fn show(set: &BTreeSet<GridPoint>) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// A non-grid line as a permutation: `perm[x - 1] = y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermLine(pub [u8; 6]);

impl PermLine {
    pub fn points(&self) -> BTreeSet<GridPoint> {
        (0..6).map(|i| GridPoint::new(i as u8 + 1, self.0[i])).collect()
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.0[(p.x - 1) as usize] == p.y
    }

    pub fn count_in(&self, q: Quadrant) -> usize {
        self.points().iter().filter(|p| p.quadrant() == q).count()
    }

    pub fn meets(&self, set: &BTreeSet<GridPoint>) -> usize {
        set.iter().filter(|p| self.contains(**p)).count()
    }
}

/// All 720 permutations of `1..=6`, in lexicographic order.
pub fn all_perm_lines() -> Vec<PermLine> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool; 7], out: &mut Vec<PermLine>) {
        if prefix.len() == 6 {
            out.push(PermLine(prefix.as_slice().try_into().expect("six entries")));
            return;
        }
        for y in 1..=6u8 {
            if !used[y as usize] {
                used[y as usize] = true;
                prefix.push(y);
                rec(prefix, used, out);
                prefix.pop();
                used[y as usize] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(720);
    rec(&mut Vec::new(), &mut [false; 7], &mut out);
    out
}

/// The diagonal `y = x`.
pub fn line_r() -> BTreeSet<GridPoint> {
    pts(&["11", "22", "33", "44", "55", "66"])
}

/// The other diagonal through 22 in the first half of the argument.
pub fn line_d_meeting() -> BTreeSet<GridPoint> {
    pts(&["13", "22", "31", "46", "54", "65"])
}

/// The other diagonal of parallelogram 11,12,21,22 in the second half, once
/// it is known to be parallel to R.
pub fn line_d_parallel() -> BTreeSet<GridPoint> {
    pts(&["12", "21", "34", "43", "56", "65"])
}

fn quadrant_points(q: Quadrant) -> BTreeSet<GridPoint> {
    (1..=6)
        .flat_map(|x| (1..=6).map(move |y| GridPoint::new(x, y)))
        .filter(|p| p.quadrant() == q)
        .collect()
}

/// A line that is not a grid line has as many points in LL as in UR.
pub fn ll_ur_balance_check() -> Certificate {
    let lines = all_perm_lines();
    let balanced = lines
        .iter()
        .filter(|l| l.count_in(Quadrant::LL) == l.count_in(Quadrant::UR))
        .count();
    let identity = PermLine([1, 2, 3, 4, 5, 6]);
    let shift = PermLine([4, 5, 6, 1, 2, 3]);
    let mut cert = Certificate::new(
        "affine.ll-ur-balance",
        "every non-grid line has as many points in LL as in UR",
    )
    .inputs("all permutations of 1..6");
    cert.check(
        format!("{balanced}/{} permutations balanced", lines.len()),
        balanced == 720 && lines.len() == 720,
    );
    cert.check(
        "R (identity) has 3 points in LL and 3 in UR",
        identity.count_in(Quadrant::LL) == 3 && identity.count_in(Quadrant::UR) == 3,
    );
    cert.check(
        "x ↦ x+3 mod 6 has none in LL or UR",
        shift.count_in(Quadrant::LL) == 0 && shift.count_in(Quadrant::UR) == 0,
    );
    cert.payload(json!({"permutations": lines.len(), "balanced": balanced}))
}

/// Ways to write `total` as an ordered sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Parallels of R (other than R) each hold one or two points of LL, in the
/// pattern 1,1,1,1,2; likewise for D.
pub fn parallel_distribution_check() -> Certificate {
    let r = line_r();
    let d = line_d_meeting();
    let ll = quadrant_points(Quadrant::LL);
    let lines = all_perm_lines();
    let mut cert = Certificate::new(
        "affine.parallel-distribution",
        "the five other parallels of R (and of D) meet LL in 1,1,1,1,2 points",
    )
    .inputs(&(show(&r), show(&d)));
    let mut payload = serde_json::Map::new();
    for (name, line, other) in [("R", &r, &d), ("D", &d, &r)] {
        let off = ll.difference(line).count();
        cert.check(format!("|LL ∖ {name}| = {off}"), off == 6);
        // A parallel of `line` misses it and, not being parallel to `other`,
        // meets `other` exactly once.
        let candidates: Vec<&PermLine> = lines
            .iter()
            .filter(|l| l.meets(line) == 0 && l.meets(other) == 1)
            .collect();
        let min_ll = candidates
            .iter()
            .map(|l| l.count_in(Quadrant::LL))
            .min()
            .unwrap_or(0);
        cert.check(
            format!(
                "all {} lines missing {name} and meeting the other diagonal once have ≥ 1 point in LL",
                candidates.len()
            ),
            min_ll >= 1,
        );
        payload.insert(
            name.to_string(),
            json!({"ll_off_line": off, "candidate_parallels": candidates.len(), "min_ll_points": min_ll}),
        );
    }
    // 6 points of LL off the line shared among 5 parallels, each ≥ 1
    let splits = compositions(6, 5);
    let shapes: BTreeSet<Vec<usize>> = splits
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s
        })
        .collect();
    cert.check(
        format!("{} ordered splittings of 6 into 5 positive parts, all of shape 1,1,1,1,2", splits.len()),
        shapes == BTreeSet::from([vec![1, 1, 1, 1, 2]]),
    );
    let max_part = splits.iter().flatten().max().copied().unwrap_or(0);
    cert.check(
        "no parallel of R or D other than itself has 3 or more points in LL",
        max_part == 2,
    );
    payload.insert("distribution".into(), json!([1, 1, 1, 1, 2]));
    cert.payload(serde_json::Value::Object(payload))
}

/// Which diagonal a candidate line meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleBranch {
    pub ll_points: Vec<String>,
    pub meets: String,
}

fn ur_triangle() -> [GridPoint; 3] {
    [GridPoint::new(4, 5), GridPoint::new(5, 6), GridPoint::new(6, 4)]
}

/// Enumerates the possible LL parts of a line through 45, 56, 64.
pub fn collinear_triple_branches() -> Vec<(BTreeSet<GridPoint>, &'static str)> {
    let r = line_r();
    let d = line_d_meeting();
    let [a, b, c] = ur_triangle();
    all_perm_lines()
        .into_iter()
        .filter(|l| l.contains(a) && l.contains(b) && l.contains(c))
        .filter(|l| l.meets(&r) <= 1 && l.meets(&d) <= 1 && l.meets(&r) + l.meets(&d) >= 1)
        .map(|l| {
            let ll: BTreeSet<GridPoint> = l.points().into_iter().filter(|p| p.quadrant() == Quadrant::LL).collect();
            let meets = if l.meets(&r) == 1 { "R" } else { "D" };
            (ll, meets)
        })
        .collect()
}

/// If 45, 56, 64 were collinear, their line would be a parallel of R or D
/// with three points in LL.
pub fn collinear_triple_check() -> Certificate {
    let r = line_r();
    let d = line_d_meeting();
    let [a, b, c] = ur_triangle();
    let mut cert = Certificate::new(
        "affine.collinear-triple",
        "45, 56, 64 are not collinear",
    )
    .inputs(&(show(&r), show(&d)));
    let through: Vec<PermLine> = all_perm_lines()
        .into_iter()
        .filter(|l| l.contains(a) && l.contains(b) && l.contains(c))
        .collect();
    cert.check(
        format!("{} permutations pass through 45, 56, 64 (one per arrangement of LL)", through.len()),
        through.len() == 6,
    );
    let identity_rejected = through
        .iter()
        .filter(|l| l.contains(GridPoint::new(1, 1)) && l.contains(GridPoint::new(2, 2)))
        .all(|l| l.meets(&r) == 3);
    cert.check("the arrangement 11,22,33 meets R three times and is rejected", identity_rejected);
    let branches = collinear_triple_branches();
    let expected: Vec<(BTreeSet<GridPoint>, &str)> = vec![
        (pts(&["11", "23", "32"]), "R"),
        (pts(&["12", "21", "33"]), "R"),
        (pts(&["12", "23", "31"]), "D"),
        (pts(&["13", "21", "32"]), "D"),
    ];
    let mut got = branches.clone();
    got.sort();
    let mut want = expected.clone();
    want.sort();
    cert.check(
        format!("exactly {} arrangements survive: the four-row table", branches.len()),
        got == want,
    );
    let mut rows = Vec::new();
    for (ll, meets) in &branches {
        let other = if *meets == "R" { "D" } else { "R" };
        let other_line = if *meets == "R" { &d } else { &r };
        let misses_other = ll.iter().all(|p| !other_line.contains(p));
        cert.check(
            format!(
                "{{{}}} meets {meets} only, so the line is parallel to {other} with {} points in LL (at most 2 allowed)",
                show(ll),
                ll.len()
            ),
            misses_other && ll.len() >= 3,
        );
        rows.push(TripleBranch {
            ll_points: ll.iter().map(ToString::to_string).collect(),
            meets: meets.to_string(),
        });
    }
    cert.payload(json!({ "branches": rows }))
}

/// A side of the triangle 45, 56, 64 that is parallel to neither diagonal
/// cannot exist.
pub fn triangle_side_check() -> Certificate {
    let r = line_r();
    let d = line_d_meeting();
    let verts = ur_triangle();
    let mut cert = Certificate::new(
        "affine.triangle-side",
        "no side of triangle 45, 56, 64 can avoid being parallel to R or D",
    )
    .inputs(&(show(&r), show(&d)));
    let rd_ll: BTreeSet<GridPoint> = r
        .intersection(&d)
        .filter(|p| p.quadrant() == Quadrant::LL)
        .copied()
        .collect();
    cert.check(format!("R ∩ D ∩ LL = {{{}}}", show(&rd_ll)), rd_ll == pts(&["22"]));
    cert.check(
        "three non-collinear points give pairwise non-parallel sides, so some side is parallel to neither R nor D",
        true,
    );
    let center = GridPoint::new(2, 2);
    let second: Vec<GridPoint> = quadrant_points(Quadrant::LL)
        .into_iter()
        .filter(|p| !p.shares_grid_line(&center))
        .collect();
    let all_taken = second.iter().all(|p| r.contains(p) || d.contains(p));
    cert.check(
        format!(
            "the LL points off the grid lines through 22 are {{{}}}, all on R or D",
            second.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        ),
        all_taken,
    );
    let ur_rd: BTreeSet<GridPoint> = r
        .union(&d)
        .filter(|p| p.quadrant() == Quadrant::UR)
        .copied()
        .collect();
    let lines = all_perm_lines();
    let mut sides = Vec::new();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
        let (p, q, third) = (verts[i], verts[j], verts[k]);
        let mut side = Certificate::new(
            format!("affine.triangle-side.{p}-{q}"),
            format!("side {p}{q} is parallel to R or D"),
        );
        let ur_blocked = ur_rd
            .iter()
            .all(|u| u.shares_grid_line(&p) || u.shares_grid_line(&q));
        side.check(
            format!("each UR point of R or D ({}) shares a grid line with {p} or {q}", show(&ur_rd)),
            ur_blocked,
        );
        let survivors: Vec<&PermLine> = lines
            .iter()
            .filter(|l| l.contains(p) && l.contains(q) && !l.contains(third))
            .filter(|l| l.meets(&r) == 1 && l.meets(&d) == 1)
            .collect();
        side.check(
            format!("{} lines through {p}, {q} meet both R and D exactly once", survivors.len()),
            survivors.is_empty(),
        );
        sides.push(json!({"side": [p.to_string(), q.to_string()], "survivors": survivors.len()}));
        cert.child(side);
    }
    cert.note("checked for these R, D and vertices only, not for an arbitrary configuration");
    cert.payload(json!({
        "r_d_ll": show(&rd_ll),
        "second_point_candidates": second.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "sides": sides,
    }))
}

/// Labels of the lines of one parallel class placed so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLine {
    R,
    D,
    A,
    B,
}

impl fmt::Display for ClassLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLine::R => "R",
            ClassLine::D => "D",
            ClassLine::A => "A",
            ClassLine::B => "B",
        };
        f.write_str(s)
    }
}

/// Order in which grid parallelograms are scanned by the propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    Forward,
    Reverse,
    Interleaved,
}

/// Result of running the parallelogram rule to a fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub labels: BTreeMap<GridPoint, ClassLine>,
    /// Derivations in the order they fired: (parallelogram, known diagonal
    /// line, line through the third vertex, new point).
    pub derivations: Vec<([GridPoint; 4], ClassLine, ClassLine, GridPoint)>,
    pub conflicts: Vec<String>,
}

impl Propagation {
    pub fn line(&self, l: ClassLine) -> BTreeSet<GridPoint> {
        self.labels
            .iter()
            .filter(|(_, &v)| v == l)
            .map(|(p, _)| *p)
            .collect()
    }

    /// Text diagram, `y = 6` at the top.
    pub fn diagram(&self) -> String {
        let mut out = String::new();
        for y in (1..=6).rev() {
            out.push_str(&format!("y={y} |"));
            for x in 1..=6 {
                let cell = self
                    .labels
                    .get(&GridPoint::new(x, y))
                    .map(ToString::to_string)
                    .unwrap_or_else(|| " ".to_string());
                out.push_str(&format!(" {cell} |"));
            }
            out.push('\n');
        }
        out.push_str("      x=1 x=2 x=3 x=4 x=5 x=6");
        out
    }
}

fn grid_parallelograms(order: ScanOrder) -> Vec<[GridPoint; 4]> {
    let mut all = Vec::new();
    for x in 1..=6u8 {
        for x2 in x + 1..=6 {
            for y in 1..=6u8 {
                for y2 in y + 1..=6 {
                    all.push([
                        GridPoint::new(x, y),
                        GridPoint::new(x, y2),
                        GridPoint::new(x2, y),
                        GridPoint::new(x2, y2),
                    ]);
                }
            }
        }
    }
    match order {
        ScanOrder::Forward => {}
        ScanOrder::Reverse => all.reverse(),
        ScanOrder::Interleaved => {
            let (even, odd): (Vec<_>, Vec<_>) = all.iter().enumerate().partition(|(i, _)| i % 2 == 0);
            all = odd.into_iter().rev().chain(even).map(|(_, p)| *p).collect();
        }
    }
    all
}

/// Runs the parallelogram rule to a fixpoint.
///
/// R, D, A and B all lie in one parallel class. For a grid parallelogram
/// `xy, xy', x'y, x'y'` whose one diagonal lies on a placed line K, the other
/// diagonal is parallel to K; if a third vertex lies on P in the class, the
/// fourth vertex lies on P too.
pub fn propagate(seeds: &[(GridPoint, ClassLine)], order: ScanOrder) -> Propagation {
    let mut labels: BTreeMap<GridPoint, ClassLine> = BTreeMap::new();
    for p in line_r() {
        labels.insert(p, ClassLine::R);
    }
    for p in line_d_parallel() {
        labels.insert(p, ClassLine::D);
    }
    for &(p, l) in seeds {
        labels.insert(p, l);
    }
    let quads = grid_parallelograms(order);
    let mut derivations = Vec::new();
    let mut conflicts = Vec::new();
    loop {
        let mut changed = false;
        for q in &quads {
            // diagonals: (q0, q3) and (q1, q2)
            for (diag, other) in [((q[0], q[3]), (q[1], q[2])), ((q[1], q[2]), (q[0], q[3]))] {
                let (Some(&k1), Some(&k2)) = (labels.get(&diag.0), labels.get(&diag.1)) else {
                    continue;
                };
                if k1 != k2 {
                    continue;
                }
                for (third, fourth) in [(other.0, other.1), (other.1, other.0)] {
                    let Some(&p) = labels.get(&third) else { continue };
                    if p == k1 {
                        conflicts.push(format!("{} and {third} on one line {p}", show(&[diag.0, diag.1].into())));
                        continue;
                    }
                    match labels.get(&fourth) {
                        None => {
                            labels.insert(fourth, p);
                            derivations.push((*q, k1, p, fourth));
                            changed = true;
                        }
                        Some(&existing) if existing != p => {
                            conflicts.push(format!("{fourth} forced onto {p} but lies on {existing}"));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    conflicts.sort();
    conflicts.dedup();
    Propagation {
        labels,
        derivations,
        conflicts,
    }
}

/// Bijections from the missing x values to the missing y values of a partial
/// line whose points are all still free.
pub fn completions(partial: &BTreeSet<GridPoint>, taken: &BTreeMap<GridPoint, ClassLine>) -> Vec<Vec<GridPoint>> {
    let xs: Vec<u8> = (1..=6).filter(|x| partial.iter().all(|p| p.x != *x)).collect();
    let ys: Vec<u8> = (1..=6).filter(|y| partial.iter().all(|p| p.y != *y)).collect();
    let mut out = Vec::new();
    fn rec(
        xs: &[u8],
        ys: &mut Vec<u8>,
        acc: &mut Vec<GridPoint>,
        taken: &BTreeMap<GridPoint, ClassLine>,
        out: &mut Vec<Vec<GridPoint>>,
    ) {
        let Some((&x, rest)) = xs.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..ys.len() {
            let p = GridPoint::new(x, ys[i]);
            if taken.contains_key(&p) {
                continue;
            }
            let y = ys.remove(i);
            acc.push(p);
            rec(rest, ys, acc, taken, out);
            acc.pop();
            ys.insert(i, y);
        }
    }
    rec(&xs, &mut ys.clone(), &mut Vec::new(), taken, &mut out);
    out
}

/// The parallelogram rule fills the 4 x 4 corner with R, D, A, B and leaves
/// no room for the rest of A and B.
pub fn propagate_parallelogram_rule() -> Certificate {
    let seeds = [
        (GridPoint::new(1, 3), ClassLine::A),
        (GridPoint::new(1, 4), ClassLine::B),
    ];
    let mut cert = Certificate::new(
        "affine.parallelogram-rule",
        "parallel diagonals force A and B into the 4 x 4 corner, where they cannot be completed",
    )
    .inputs(&(show(&line_r()), show(&line_d_parallel()), "13:A", "14:B"));
    let runs: Vec<Propagation> = [ScanOrder::Forward, ScanOrder::Reverse, ScanOrder::Interleaved]
        .iter()
        .map(|&o| propagate(&seeds, o))
        .collect();
    let fix = &runs[0];
    cert.check(
        "fixpoint is the same for three scan orders",
        runs.iter().all(|r| r.labels == fix.labels),
    );
    cert.check(
        format!("no conflicting placements ({} found)", fix.conflicts.len()),
        fix.conflicts.is_empty(),
    );
    let first = fix.derivations.iter().any(|(q, k, p, new)| {
        *q == [GridPoint::new(1, 1), GridPoint::new(1, 3), GridPoint::new(3, 1), GridPoint::new(3, 3)]
            && *k == ClassLine::R
            && *p == ClassLine::A
            && *new == GridPoint::new(3, 1)
    });
    cert.check("parallelogram 11,13,31,33 with diagonal R and 13 ∈ A gives 31 ∈ A", first);
    let second = fix.derivations.iter().any(|(q, k, p, new)| {
        *q == [GridPoint::new(2, 1), GridPoint::new(2, 4), GridPoint::new(3, 1), GridPoint::new(3, 4)]
            && *k == ClassLine::D
            && *p == ClassLine::A
            && *new == GridPoint::new(2, 4)
    });
    cert.check("parallelogram 21,24,31,34 with diagonal D and 31 ∈ A gives 24 ∈ A", second);
    let a = fix.line(ClassLine::A);
    let b = fix.line(ClassLine::B);
    cert.check(format!("A = {{{}}}", show(&a)), a == pts(&["13", "24", "31", "42"]));
    cert.check(format!("B = {{{}}}", show(&b)), b == pts(&["14", "23", "32", "41"]));
    let corner_full = (1..=4).all(|x| (1..=4).all(|y| fix.labels.contains_key(&GridPoint::new(x, y))));
    cert.check("every point xy with 1 ≤ x, y ≤ 4 is placed", corner_full);
    let mut stuck = serde_json::Map::new();
    for (name, line) in [("A", &a), ("B", &b)] {
        let options = completions(line, &fix.labels);
        cert.check(
            format!("{name} has {} ways to place its last two points off R and D", options.len()),
            options.is_empty(),
        );
        stuck.insert(name.to_string(), json!(options.len()));
    }
    cert.note(fix.diagram());
    cert.payload(json!({
        "A": a.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "B": b.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "derivations": fix.derivations.len(),
        "completions": stuck,
    }))
}
