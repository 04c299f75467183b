//! Line sets of 4-class nets, their parallaxes and point profiles.
//!
//! For a set Λ of lines in a net with four parallel classes, the parallax is
//! the tuple `(l1, l2, l3, l4)` of how many lines of Λ fall in each class,
//! and `p_j` counts the points lying on exactly `j` lines of Λ. Counting
//! incident point-line pairs two ways gives
//!
//! ```text
//! n·l = p1 + 2p2 + 3p3 + 4p4        m = p2 + 3p3 + 6p4
//! ```
//!
//! with `l = Σ l_i` and `m = Σ_{i<j} l_i l_j`. The binary sum `c(Λ)` of the
//! lines is one exactly at the 1-points and 3-points, so
//! `wt(c(Λ)) = p1 + p3 = n·l − 2m + 4p3 + 8p4`.
//!
//! Class indices in this module are 0-based; parallaxes print as four digits.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::designs::{LineId, Net};
use crate::gf2::Gf2Vector;
use crate::netcode::line_vector;
use crate::report::Certificate;

/// The order whose nets the exclusion argument is about.
pub const ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParallaxError {
    #[error("parallax arithmetic needs exactly 4 classes, the net has {0}")]
    UnsupportedClassCount(usize),
    #[error("line {0} does not exist in this net")]
    NoSuchLine(LineId),
    #[error("switching {0} classes changes c(Λ); use switch_any for odd switching")]
    OddSwitch(usize),
    #[error("class index {0} out of range")]
    BadClass(usize),
    #[error("parallax 2222 is not excluded by arithmetic; see the case2222 module")]
    HandledElsewhere,
    #[error("no exclusion certificate applies to parallax {0}")]
    NotApplicable(Parallax),
    #[error("cannot parse {0:?} as a parallax")]
    Parse(String),
}

/// Class counts `(l1, l2, l3, l4)` of a line set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parallax {
    counts: [usize; 4],
}

impl Parallax {
    pub const fn new(counts: [usize; 4]) -> Self {
        Self { counts }
    }

    pub fn parse(s: &str) -> Result<Self, ParallaxError> {
        let digits: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| ParallaxError::Parse(s.to_string()))?;
        let counts: [usize; 4] = digits
            .try_into()
            .map_err(|_| ParallaxError::Parse(s.to_string()))?;
        Ok(Self { counts })
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// Total number of lines.
    pub fn l(&self) -> i64 {
        self.counts.iter().sum::<usize>() as i64
    }

    /// Number of pairs of non-parallel lines.
    pub fn m(&self) -> i64 {
        let c = self.counts;
        let mut m = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                m += c[i] * c[j];
            }
        }
        m as i64
    }

    /// Replaces `l_i` by `n − l_i` on the listed classes. The count of
    /// switched classes must be even, which is when `c(Λ)` is preserved.
    pub fn switch(&self, n: usize, classes: &[usize]) -> Result<Self, ParallaxError> {
        let distinct: BTreeSet<usize> = classes.iter().copied().collect();
        if distinct.len() % 2 == 1 {
            return Err(ParallaxError::OddSwitch(distinct.len()));
        }
        self.switch_any(n, classes)
    }

    /// Switching without the parity restriction.
    pub fn switch_any(&self, n: usize, classes: &[usize]) -> Result<Self, ParallaxError> {
        let distinct: BTreeSet<usize> = classes.iter().copied().collect();
        let mut counts = self.counts;
        for c in distinct {
            if c >= 4 {
                return Err(ParallaxError::BadClass(c));
            }
            counts[c] = n - counts[c];
        }
        Ok(Self { counts })
    }

    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Self {
            counts: perm.map(|i| self.counts[i]),
        }
    }
}

impl fmt::Display for Parallax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.counts {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Numbers of points on exactly 0, 1, 2, 3, 4 lines of a line set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointProfile {
    pub p0: usize,
    pub p1: usize,
    pub p2: usize,
    pub p3: usize,
    pub p4: usize,
}

impl PointProfile {
    /// Both double-counting identities, for lines of size `n`.
    pub fn satisfies_identities(&self, n: usize, parallax: &Parallax) -> bool {
        let incidences = self.p1 + 2 * self.p2 + 3 * self.p3 + 4 * self.p4;
        let crossings = self.p2 + 3 * self.p3 + 6 * self.p4;
        incidences as i64 == n as i64 * parallax.l() && crossings as i64 == parallax.m()
    }
}

/// A set of lines of a net with exactly four classes.
#[derive(Debug, Clone)]
pub struct LineSet<'a> {
    net: &'a Net,
    members: BTreeSet<LineId>,
}

impl<'a> LineSet<'a> {
    pub fn new(net: &'a Net, members: impl IntoIterator<Item = LineId>) -> Result<Self, ParallaxError> {
        if net.num_classes() != 4 {
            return Err(ParallaxError::UnsupportedClassCount(net.num_classes()));
        }
        let members: BTreeSet<LineId> = members.into_iter().collect();
        if let Some(&bad) = members
            .iter()
            .find(|id| id.class >= 4 || id.index >= net.order())
        {
            return Err(ParallaxError::NoSuchLine(bad));
        }
        Ok(Self { net, members })
    }

    /// Each line included independently with probability 1/2.
    pub fn random(net: &'a Net, rng: &mut StdRng) -> Result<Self, ParallaxError> {
        let members: Vec<LineId> = net.line_ids().filter(|_| rng.gen_bool(0.5)).collect();
        Self::new(net, members)
    }

    pub fn members(&self) -> &BTreeSet<LineId> {
        &self.members
    }

    pub fn net(&self) -> &Net {
        self.net
    }

    pub fn parallax(&self) -> Parallax {
        let mut counts = [0; 4];
        for id in &self.members {
            counts[id.class] += 1;
        }
        Parallax::new(counts)
    }

    /// `c(Λ)`: the binary sum of the member lines' characteristic vectors.
    pub fn codeword(&self) -> Gf2Vector {
        let mut acc = Gf2Vector::zeros(self.net.num_points());
        for &id in &self.members {
            acc.add_assign(&line_vector(self.net, id)).expect("length n²");
        }
        acc
    }

    /// Replaces the members in each listed class by that class's other lines.
    pub fn switched(&self, classes: &[usize]) -> Result<Self, ParallaxError> {
        let flip: BTreeSet<usize> = classes.iter().copied().collect();
        if let Some(&c) = flip.iter().find(|&&c| c >= 4) {
            return Err(ParallaxError::BadClass(c));
        }
        let members = self
            .net
            .line_ids()
            .filter(|id| self.members.contains(id) != flip.contains(&id.class))
            .collect();
        Ok(Self {
            net: self.net,
            members,
        })
    }
}

/// Incidence profile of a line set.
pub fn profile(lines: &LineSet<'_>) -> PointProfile {
    let mut multiplicity = vec![0usize; lines.net.num_points()];
    for &id in &lines.members {
        for &p in lines.net.line(id) {
            multiplicity[p] += 1;
        }
    }
    let mut prof = PointProfile::default();
    for m in multiplicity {
        match m {
            0 => prof.p0 += 1,
            1 => prof.p1 += 1,
            2 => prof.p2 += 1,
            3 => prof.p3 += 1,
            4 => prof.p4 += 1,
            _ => unreachable!("a point lies on one line per class"),
        }
    }
    prof
}

/// Computes the constant part `n·l − 2m` of the weight formula.
pub type BaseWeight = fn(usize, &Parallax) -> i64;

/// The correct constant part: `n·l − 2m`.
pub fn standard_base(n: usize, parallax: &Parallax) -> i64 {
    n as i64 * parallax.l() - 2 * parallax.m()
}

/// `wt(c(Λ)) = base + 4p3 + 8p4` for every Λ with a given parallax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDecomposition {
    pub parallax: Parallax,
    pub base: i64,
}

impl WeightDecomposition {
    pub fn weight(&self, p3: usize, p4: usize) -> i64 {
        self.base + 4 * p3 as i64 + 8 * p4 as i64
    }

    /// Smallest value the formula can take over nonnegative `p3`, `p4`.
    pub fn min_weight(&self) -> i64 {
        self.base
    }
}

impl fmt::Display for WeightDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wt = {} + 4p3 + 8p4", self.base)
    }
}

pub fn weight_decomposition(parallax: &Parallax) -> WeightDecomposition {
    weight_decomposition_for_order(ORDER, parallax)
}

pub fn weight_decomposition_for_order(n: usize, parallax: &Parallax) -> WeightDecomposition {
    WeightDecomposition {
        parallax: *parallax,
        base: standard_base(n, parallax),
    }
}

/// If `c(Λ) = 0` then `p1 = p3 = 0`, which for order 6 forces
/// `2p2 = 9l − m` and `4p4 = m − 3l`. Returns `(p2, p4)` when both are
/// nonnegative integers.
pub fn zero_weight_solution(parallax: &Parallax) -> Option<(i64, i64)> {
    let (l, m) = (parallax.l(), parallax.m());
    let twice_p2 = 9 * l - m;
    let four_p4 = m - 3 * l;
    if twice_p2 < 0 || four_p4 < 0 || twice_p2.rem_euclid(2) != 0 || four_p4.rem_euclid(4) != 0 {
        return None;
    }
    Some((twice_p2 / 2, four_p4 / 4))
}

/// The normalization obtained by switching with class 4 and renumbering:
/// `3 ≥ l1 ≥ l2 ≥ l3`, and additionally `l3 ≥ l4` when `l1 = 3`.
pub fn is_normalized(parallax: &Parallax) -> bool {
    let [a, b, c, d] = parallax.counts();
    3 >= a && a >= b && b >= c && (a < 3 || c >= d)
}

const EMPTY: Parallax = Parallax::new([0; 4]);

/// Scans the full box `0..=6` in each coordinate, keeps normalized tuples
/// with a zero-weight solution, and drops the empty parallax.
pub fn enumerate_zero_parallaxes() -> Vec<Parallax> {
    box_tuples()
        .filter(is_normalized)
        .filter(|p| zero_weight_solution(p).is_some())
        .filter(|p| *p != EMPTY)
        .collect()
}

/// Same enumeration with the normalization built into the loop bounds.
pub fn enumerate_zero_parallaxes_generated() -> Vec<Parallax> {
    let mut out = Vec::new();
    for a in 0..=3 {
        for b in 0..=a {
            for c in 0..=b {
                let top = if a == 3 { c } else { ORDER };
                for d in 0..=top {
                    let p = Parallax::new([a, b, c, d]);
                    if p != EMPTY && zero_weight_solution(&p).is_some() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn box_tuples() -> impl Iterator<Item = Parallax> {
    (0..=ORDER).flat_map(|a| {
        (0..=ORDER).flat_map(move |b| {
            (0..=ORDER).flat_map(move |c| (0..=ORDER).map(move |d| Parallax::new([a, b, c, d])))
        })
    })
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// All parallaxes reachable by even switching and renumbering the classes.
/// Every member of an orbit has the same `c(Λ)` up to relabeling.
pub fn orbit(parallax: &Parallax) -> BTreeSet<Parallax> {
    let perms = permutations4();
    let mut out = BTreeSet::new();
    for mask in 0u8..16 {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let classes: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        let switched = parallax.switch(ORDER, &classes).expect("even");
        for p in &perms {
            out.insert(switched.permuted(*p));
        }
    }
    out
}

/// Replays the enumeration two ways and checks that the normalization loses
/// nothing: every orbit has a normalized member, and every nontrivial orbit
/// whose members all admit a zero-weight solution meets the candidate set.
pub fn enumeration_certificate() -> Certificate {
    let filtered = enumerate_zero_parallaxes();
    let generated = enumerate_zero_parallaxes_generated();
    let names: Vec<String> = filtered.iter().map(ToString::to_string).collect();
    let mut cert = Certificate::new(
        "parallax.enumerate",
        "zero-weight line sets have parallax 2222, 2226, 3330 or 3332 up to switching",
    )
    .inputs(&("box", ORDER));
    let expected: Vec<Parallax> = ["2222", "2226", "3330", "3332"]
        .iter()
        .map(|s| Parallax::parse(s).expect("literal"))
        .collect();
    cert.check(
        format!("filtered enumeration gives {{{}}}", names.join(", ")),
        filtered == expected,
    );
    cert.check(
        "loop-bounded enumeration agrees with the filtered one",
        generated == filtered,
    );
    let mut orbits: BTreeSet<BTreeSet<Parallax>> = BTreeSet::new();
    for p in box_tuples() {
        orbits.insert(orbit(&p));
    }
    let all_normalizable = orbits.iter().all(|o| o.iter().any(is_normalized));
    cert.check(
        format!("each of the {} switching orbits has a normalized member", orbits.len()),
        all_normalizable,
    );
    let feasible: Vec<&BTreeSet<Parallax>> = orbits
        .iter()
        .filter(|o| !o.contains(&EMPTY) && o.iter().all(|p| zero_weight_solution(p).is_some()))
        .collect();
    cert.check(
        "every nontrivial orbit admitting c(Λ) = 0 throughout contains a candidate",
        feasible
            .iter()
            .all(|o| filtered.iter().any(|c| o.contains(c))),
    );
    let symmetric = filtered.iter().all(|p| {
        let [a, b, c, d] = p.counts();
        [[a, c, b, d], [b, a, c, d], [c, b, a, d]]
            .iter()
            .all(|q| filtered.contains(&Parallax::new(*q)))
    });
    cert.check("candidate set is invariant under permuting l1, l2, l3", symmetric);
    let solutions: Vec<_> = filtered
        .iter()
        .map(|p| {
            let (p2, p4) = zero_weight_solution(p).expect("candidate");
            json!({"parallax": p.to_string(), "l": p.l(), "m": p.m(), "p2": p2, "p4": p4})
        })
        .collect();
    let orbit_of_empty: Vec<String> = orbit(&EMPTY).iter().map(ToString::to_string).collect();
    cert.payload(json!({
        "candidates": names,
        "solutions": solutions,
        "trivial_orbit": orbit_of_empty,
        "feasible_orbits": feasible.len(),
    }))
}

/// Checks the weight formula against actual codewords of real 4-class nets.
///
/// Draws `samples` random line sets on each net and compares
/// `wt(c(Λ))` with `base + 4p3 + 8p4` for the supplied `base`.
pub fn formula_replay_certificate(nets: &[Net], base: BaseWeight, samples: usize, seed: u64) -> Certificate {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut cert = Certificate::new(
        "parallax.formula-replay",
        "wt(c(Λ)) = n·l − 2m + 4p3 + 8p4 on real nets",
    )
    .inputs(&(nets.iter().map(Net::order).collect::<Vec<_>>(), samples, seed));
    let mut per_net = Vec::new();
    for net in nets {
        let mut violations = 0;
        for _ in 0..samples {
            let set = LineSet::random(net, &mut rng).expect("4-class net");
            let pi = set.parallax();
            let prof = profile(&set);
            let actual = set.codeword().weight() as i64;
            let predicted = base(net.order(), &pi) + 4 * prof.p3 as i64 + 8 * prof.p4 as i64;
            if actual != predicted || actual != (prof.p1 + prof.p3) as i64 {
                violations += 1;
            }
        }
        cert.check(
            format!("order {}: {samples} random line sets, {violations} violations", net.order()),
            violations == 0,
        );
        per_net.push(json!({"order": net.order(), "samples": samples, "violations": violations}));
    }
    cert.payload(json!({ "nets": per_net }))
}

/// Arithmetic refutation of a candidate parallax other than 2222.
pub fn exclusion_certificate(parallax: &Parallax) -> Result<Certificate, ParallaxError> {
    exclusion_certificate_with(parallax, standard_base)
}

pub fn exclusion_certificate_with(parallax: &Parallax, base: BaseWeight) -> Result<Certificate, ParallaxError> {
    match parallax.counts() {
        [2, 2, 2, 2] => Err(ParallaxError::HandledElsewhere),
        [2, 2, 2, 6] => Ok(exclude_by_switching(parallax, base)),
        [3, 3, 3, 0] => Ok(exclude_by_one_line(parallax, 1, base)),
        [3, 3, 3, 2] => Ok(exclude_by_one_line(parallax, -1, base)),
        _ => Err(ParallaxError::NotApplicable(*parallax)),
    }
}

fn exclude_by_switching(parallax: &Parallax, base: BaseWeight) -> Certificate {
    let switched_classes = [2, 3];
    let target = parallax
        .switch(ORDER, &switched_classes)
        .expect("two classes");
    let b = base(ORDER, &target);
    let mut cert = Certificate::new(
        format!("parallax.exclude.{parallax}"),
        format!("no dependency has parallax {parallax}"),
    )
    .inputs(&parallax.to_string());
    cert.check(
        format!("switching classes 3 and 4 turns {parallax} into {target} without changing c(Λ)"),
        target == Parallax::new([2, 2, 4, 0]),
    );
    cert.check(
        format!("for {target}: l = {}, m = {}, base = 6l − 2m = {b}", target.l(), target.m()),
        b == 8,
    );
    cert.check(
        format!("wt(c(M)) = {b} + 4p3 + 8p4 ≥ {b} > 0, so c(M) ≠ 0"),
        b > 0,
    );
    cert.payload(json!({
        "candidate": parallax.to_string(),
        "switched_classes": [3, 4],
        "switched_parallax": target.to_string(),
        "l": target.l(),
        "m": target.m(),
        "base": b,
        "min_weight": b,
    }))
}

/// `delta = +1` adjoins a class-4 line, `-1` removes one; either way
/// `c(M) = c(Λ) + v^λ` has weight 6 when `c(Λ) = 0`.
fn exclude_by_one_line(parallax: &Parallax, delta: i64, base: BaseWeight) -> Certificate {
    let mut counts = parallax.counts();
    counts[3] = (counts[3] as i64 + delta) as usize;
    let target = Parallax::new(counts);
    let b = base(ORDER, &target);
    let line_weight = ORDER as i64;
    let action = if delta > 0 { "adjoining" } else { "removing" };
    let mut cert = Certificate::new(
        format!("parallax.exclude.{parallax}"),
        format!("no dependency has parallax {parallax}"),
    )
    .inputs(&parallax.to_string());
    cert.check(
        format!("{action} one class-4 line turns {parallax} into {target}"),
        target == Parallax::new([3, 3, 3, 1]),
    );
    cert.check(
        format!("if c(Λ) = 0 then c(M) is a single line vector of weight {line_weight}"),
        line_weight == ORDER as i64,
    );
    cert.check(
        format!("for {target}: l = {}, m = {}, base = 6l − 2m = {b}", target.l(), target.m()),
        b == -12,
    );
    let formula_residue = b.rem_euclid(4);
    cert.check(
        format!("wt(c(M)) = {b} + 4p3 + 8p4 ≡ {formula_residue} (mod 4)"),
        formula_residue == 0,
    );
    cert.check(
        format!("{line_weight} ≡ {} (mod 4), contradiction", line_weight.rem_euclid(4)),
        line_weight.rem_euclid(4) != formula_residue,
    );
    cert.payload(json!({
        "candidate": parallax.to_string(),
        "modification": action,
        "modified_parallax": target.to_string(),
        "l": target.l(),
        "m": target.m(),
        "base": b,
        "line_weight": line_weight,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::ag2;

    fn p(s: &str) -> Parallax {
        Parallax::parse(s).unwrap()
    }

    fn net(q: u32) -> Net {
        ag2(q).unwrap().to_net(&[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn base_weights() {
        assert_eq!(weight_decomposition(&p("2240")).base, 8);
        assert_eq!(weight_decomposition(&p("3331")).base, -12);
        assert_eq!(weight_decomposition(&p("0000")).base, 0);
        assert_eq!(weight_decomposition(&p("2240")).to_string(), "wt = 8 + 4p3 + 8p4");
    }

    #[test]
    fn switching() {
        assert_eq!(p("2226").switch(6, &[2, 3]).unwrap(), p("2240"));
        assert_eq!(p("1234").switch(6, &[]).unwrap(), p("1234"));
        assert_eq!(p("2226").switch(6, &[3]), Err(ParallaxError::OddSwitch(1)));
        assert_eq!(p("3330").switch_any(6, &[3]).unwrap(), p("3336"));
        for s in ["0000", "1234", "6543", "3331"] {
            let x = p(s);
            assert_eq!(x.switch(6, &[0, 2]).unwrap().switch(6, &[0, 2]).unwrap(), x);
        }
    }

    #[test]
    fn zero_weight_arithmetic() {
        // 2220: m = 12, l = 6, m − 3l = −6
        assert_eq!(zero_weight_solution(&p("2220")), None);
        assert_eq!(zero_weight_solution(&p("2222")), Some((24, 0)));
    }

    #[test]
    fn enumeration() {
        let found: Vec<String> = enumerate_zero_parallaxes().iter().map(ToString::to_string).collect();
        assert_eq!(found, ["2222", "2226", "3330", "3332"]);
        assert_eq!(enumerate_zero_parallaxes_generated(), enumerate_zero_parallaxes());
        let cert = enumeration_certificate();
        assert!(cert.passed(), "{cert:#?}");
    }

    #[test]
    fn exclusions() {
        for s in ["2226", "3330", "3332"] {
            let c = exclusion_certificate(&p(s)).unwrap();
            assert!(c.passed(), "{c:#?}");
        }
        assert_eq!(exclusion_certificate(&p("2222")).unwrap_err(), ParallaxError::HandledElsewhere);
        assert!(matches!(
            exclusion_certificate(&p("1111")),
            Err(ParallaxError::NotApplicable(_))
        ));
        let c = exclusion_certificate(&p("2226")).unwrap();
        assert_eq!(c.payload["switched_parallax"], "2240");
        assert_eq!(c.payload["min_weight"], 8);
        let c = exclusion_certificate(&p("3332")).unwrap();
        assert_eq!(c.payload["modification"], "removing");
        assert_eq!(c.payload["base"], -12);
    }

    #[test]
    fn profiles_of_small_sets() {
        for q in [3, 4, 5] {
            let net = net(q);
            let n = q as usize;
            let one = LineSet::new(&net, [LineId::new(1, 0)]).unwrap();
            let pr = profile(&one);
            assert_eq!((pr.p1, pr.p2), (n, 0));
            let crossing = LineSet::new(&net, [LineId::new(0, 0), LineId::new(2, 1)]).unwrap();
            let pr = profile(&crossing);
            assert_eq!((pr.p1, pr.p2), (2 * n - 2, 1));
            let parallel = LineSet::new(&net, [LineId::new(3, 0), LineId::new(3, 1)]).unwrap();
            let pr = profile(&parallel);
            assert_eq!((pr.p1, pr.p2), (2 * n, 0));
        }
    }

    #[test]
    fn line_sets_need_four_classes() {
        let g = crate::designs::grid_net(3);
        assert_eq!(
            LineSet::new(&g, []).unwrap_err(),
            ParallaxError::UnsupportedClassCount(2)
        );
        let n4 = net(3);
        assert!(matches!(
            LineSet::new(&n4, [LineId::new(4, 0)]),
            Err(ParallaxError::NoSuchLine(_))
        ));
    }

    #[test]
    fn exhaustive_identities_on_order_three() {
        let net = net(3);
        let ids: Vec<LineId> = net.line_ids().collect();
        for mask in 0u32..(1 << ids.len()) {
            let set = LineSet::new(&net, ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, id)| *id)).unwrap();
            let pi = set.parallax();
            let pr = profile(&set);
            assert!(pr.satisfies_identities(3, &pi));
            let wt = set.codeword().weight();
            assert_eq!(wt, pr.p1 + pr.p3);
            assert_eq!(wt as i64, weight_decomposition_for_order(3, &pi).weight(pr.p3, pr.p4));
            for pair in [[0, 1], [0, 3], [1, 2], [2, 3]] {
                assert_eq!(set.switched(&pair).unwrap().codeword(), set.codeword());
            }
        }
    }

    #[test]
    fn replay_catches_a_wrong_formula() {
        let nets = vec![net(3), net(4), net(5)];
        assert!(formula_replay_certificate(&nets, standard_base, 200, 7).passed());
        fn off_by_four(n: usize, p: &Parallax) -> i64 {
            standard_base(n, p) + 4
        }
        assert!(!formula_replay_certificate(&nets, off_by_four, 200, 7).passed());
    }
}
