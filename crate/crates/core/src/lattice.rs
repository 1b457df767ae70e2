//! Finite bounded lattices standing for ideal lattices, closed-set families
//! over a finite discrete space, and the index sets `γ_j = { i : I_j ⊄ I_i }`.
//!
//! Lattice indices are 0-based in this API. Reports render them 1-based so
//! that index `0` prints as `I_1`.

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on `lattice size × point count` for family enumeration.
pub const DEFAULT_FAMILY_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedLattice {
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// The first lattice law a pair of tables breaks, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeViolation {
    Commutative { op: &'static str, i: usize, j: usize },
    Idempotent { op: &'static str, i: usize },
    Associative { op: &'static str, i: usize, j: usize, k: usize },
    Absorption { i: usize, j: usize },
    BottomIdentity { i: usize },
    TopIdentity { i: usize },
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based like every other rendered index
        match *self {
            LatticeViolation::Commutative { op, i, j } => {
                write!(f, "{op} not commutative at ({}, {})", i + 1, j + 1)
            }
            LatticeViolation::Idempotent { op, i } => write!(f, "{op} not idempotent at {}", i + 1),
            LatticeViolation::Associative { op, i, j, k } => {
                write!(f, "{op} not associative at ({}, {}, {})", i + 1, j + 1, k + 1)
            }
            LatticeViolation::Absorption { i, j } => write!(f, "absorption fails at ({}, {})", i + 1, j + 1),
            LatticeViolation::BottomIdentity { i } => {
                write!(f, "join with bottom is not the identity at {}", i + 1)
            }
            LatticeViolation::TopIdentity { i } => write!(f, "meet with top is not the identity at {}", i + 1),
        }
    }
}

impl BoundedLattice {
    /// Checks only the shape of the tables; use [`validate`](Self::validate)
    /// for the lattice laws.
    pub fn new(meet: Vec<Vec<usize>>, join: Vec<Vec<usize>>, bottom: usize, top: usize) -> Result<Self> {
        let n = meet.len();
        if n == 0 {
            return Err(Error::MalformedLattice("size must be at least 1".into()));
        }
        for (name, table) in [("meet", &meet), ("join", &join)] {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(Error::MalformedLattice(format!("{name} table is not {n}x{n}")));
            }
            if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
                return Err(Error::MalformedLattice(format!("{name} table entry {} out of range", bad + 1)));
            }
        }
        if bottom >= n || top >= n {
            return Err(Error::MalformedLattice("bottom/top out of range".into()));
        }
        Ok(BoundedLattice { meet, join, bottom, top })
    }

    /// Builds the tables from an order relation, if it is a bounded lattice.
    pub fn from_order(leq: &[Vec<bool>]) -> Option<Self> {
        let n = leq.len();
        if n == 0 {
            return None;
        }
        let bound = |i: usize, j: usize, lower: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&c| if lower { leq[c][i] && leq[c][j] } else { leq[i][c] && leq[j][c] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if lower { leq[d][c] } else { leq[c][d] }))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = bound(i, j, true)?;
                join[i][j] = bound(i, j, false)?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|i| leq[b][i]))?;
        let top = (0..n).find(|&t| (0..n).all(|i| leq[i][t]))?;
        Some(BoundedLattice { meet, join, bottom, top })
    }

    /// `0 < 1 < … < m−1`.
    pub fn chain(m: usize) -> Self {
        assert!(m >= 1, "chain needs at least one element");
        let table = |f: fn(usize, usize) -> usize| (0..m).map(|i| (0..m).map(|j| f(i, j)).collect()).collect();
        BoundedLattice {
            meet: table(usize::min),
            join: table(usize::max),
            bottom: 0,
            top: m - 1,
        }
    }

    /// Subsets of a `k`-set; index = bitmask.
    pub fn boolean(k: usize) -> Self {
        let n = 1usize << k;
        let table = |f: fn(usize, usize) -> usize| (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        BoundedLattice {
            meet: table(|i, j| i & j),
            join: table(|i, j| i | j),
            bottom: 0,
            top: n - 1,
        }
    }

    pub fn size(&self) -> usize {
        self.meet.len()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet_table(&self) -> &[Vec<usize>] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Vec<usize>] {
        &self.join
    }

    /// `i ≤ j` in the derived order `meet(i, j) = i`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet[i][j] == i
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size() })
        }
    }

    /// Confirms every bounded-lattice law or reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), LatticeViolation> {
        let n = self.size();
        let tables = [("meet", &self.meet), ("join", &self.join)];
        for (op, t) in tables {
            for i in 0..n {
                if t[i][i] != i {
                    return Err(LatticeViolation::Idempotent { op, i });
                }
                for j in 0..n {
                    if t[i][j] != t[j][i] {
                        return Err(LatticeViolation::Commutative { op, i: i.min(j), j: i.max(j) });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.meet[i][self.join[i][j]] != i || self.join[i][self.meet[i][j]] != i {
                    return Err(LatticeViolation::Absorption { i: i.min(j), j: i.max(j) });
                }
            }
        }
        for (op, t) in tables {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if t[t[i][j]][k] != t[i][t[j][k]] {
                            return Err(LatticeViolation::Associative { op, i, j, k });
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if self.join[i][self.bottom] != i {
                return Err(LatticeViolation::BottomIdentity { i });
            }
            if self.meet[i][self.top] != i {
                return Err(LatticeViolation::TopIdentity { i });
            }
        }
        Ok(())
    }

    /// A triple where `meet(i, join(j, k)) ≠ join(meet(i, j), meet(i, k))`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.meet(i, self.join(j, k));
                    let rhs = self.join(self.meet(i, j), self.meet(i, k));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    /// `{ i : I_j ⊄ I_i }`, ascending.
    pub fn gamma(&self, j: usize) -> Vec<usize> {
        (0..self.size()).filter(|&i| !self.leq(j, i)).collect()
    }

    /// `gamma_j = {…}` for every non-bottom `j` in index order, 1-based.
    pub fn gamma_table(&self) -> Vec<String> {
        (0..self.size())
            .filter(|&j| j != self.bottom)
            .map(|j| {
                let items: Vec<String> = self.gamma(j).iter().map(|i| (i + 1).to_string()).collect();
                format!("gamma_{} = {{{}}}", j + 1, items.join(","))
            })
            .collect()
    }

    /// Elements directly below the top.
    pub fn coatoms(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&c| c != self.top)
            .filter(|&c| (0..n).all(|d| d == c || d == self.top || !self.leq(c, d)))
            .collect()
    }

    /// Fold of the meet over `indices`; the empty meet is the top.
    pub fn meet_all(&self, indices: impl IntoIterator<Item = usize>) -> usize {
        indices.into_iter().fold(self.top, |acc, i| self.meet(acc, i))
    }

    /// Fold of the join over `indices`; the empty join is the bottom.
    pub fn join_all(&self, indices: impl IntoIterator<Item = usize>) -> usize {
        indices.into_iter().fold(self.bottom, |acc, i| self.join(acc, i))
    }

    /// A bijection `phi` with `i ≤ j ⟺ phi(i) ≤' phi(j)`, if one exists.
    pub fn order_isomorphism(&self, other: &BoundedLattice) -> Option<Vec<usize>> {
        let n = self.size();
        if n != other.size() {
            return None;
        }
        let down = |l: &BoundedLattice, i: usize| (0..n).filter(|&d| l.leq(d, i)).count();
        let up = |l: &BoundedLattice, i: usize| (0..n).filter(|&d| l.leq(i, d)).count();
        let sig_a: Vec<(usize, usize)> = (0..n).map(|i| (down(self, i), up(self, i))).collect();
        let sig_b: Vec<(usize, usize)> = (0..n).map(|i| (down(other, i), up(other, i))).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| sig_a[i]);
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];

        fn search(
            pos: usize,
            order: &[usize],
            a: &BoundedLattice,
            b: &BoundedLattice,
            sig_a: &[(usize, usize)],
            sig_b: &[(usize, usize)],
            phi: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if pos == order.len() {
                return true;
            }
            let i = order[pos];
            for c in 0..b.size() {
                if used[c] || sig_b[c] != sig_a[i] {
                    continue;
                }
                let consistent = order[..pos].iter().all(|&k| {
                    a.leq(k, i) == b.leq(phi[k], c) && a.leq(i, k) == b.leq(c, phi[k])
                });
                if !consistent {
                    continue;
                }
                phi[i] = c;
                used[c] = true;
                if search(pos + 1, order, a, b, sig_a, sig_b, phi, used) {
                    return true;
                }
                used[c] = false;
            }
            phi[i] = usize::MAX;
            false
        }

        search(0, &order, self, other, &sig_a, &sig_b, &mut phi, &mut used).then_some(phi)
    }
}

/// A subset of a finite point set, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> Self {
        PointSet(points.into_iter().fold(0, |acc, p| acc | 1 << p))
    }

    pub fn contains(self, point: usize) -> bool {
        self.0 >> point & 1 == 1
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&p| self.contains(p))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.points().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A finite discrete space `X = {0, …, n−1}`; every subset is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceModel {
    points: usize,
}

impl SpaceModel {
    pub const MAX_POINTS: usize = 63;

    pub fn new(points: usize) -> Result<Self> {
        if points > Self::MAX_POINTS {
            return Err(Error::BoundExceeded {
                what: "point count",
                value: points,
                limit: Self::MAX_POINTS,
            });
        }
        Ok(SpaceModel { points })
    }

    pub fn point_count(self) -> usize {
        self.points
    }

    pub fn full(self) -> PointSet {
        PointSet((1u64 << self.points) - 1)
    }

    pub fn check_set(self, set: PointSet) -> Result<()> {
        match set.points().find(|&p| p >= self.points) {
            Some(point) => Err(Error::PointOutOfRange { point, points: self.points }),
            None => Ok(()),
        }
    }

    /// Every closed (that is, every) subset in bitmask order.
    pub fn closed_sets(self) -> impl Iterator<Item = PointSet> {
        (0..=self.full().0).map(PointSet)
    }
}

/// How compatibility is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatibilityMode {
    /// `S_i ∩ S_j = S_{meet(i,j)}` for all pairs, plus `S_top = X`.
    Pairwise,
    /// `∩_{j∈γ} S_j = S_{meet γ}` for every subset `γ`, the empty one included.
    Exhaustive,
}

/// An assignment `i ↦ S_i` of closed subsets of `X` to lattice indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedFamily<'a> {
    lattice: &'a BoundedLattice,
    space: SpaceModel,
    sets: Vec<PointSet>,
}

impl<'a> ClosedFamily<'a> {
    /// Shape checks only; compatibility is a separate question.
    pub fn new(lattice: &'a BoundedLattice, space: SpaceModel, sets: Vec<PointSet>) -> Result<Self> {
        if sets.len() != lattice.size() {
            return Err(Error::InvalidFamily(format!(
                "{} sets given for a lattice of size {}",
                sets.len(),
                lattice.size()
            )));
        }
        for &s in &sets {
            space.check_set(s)?;
        }
        Ok(ClosedFamily { lattice, space, sets })
    }

    /// As [`new`](Self::new), and rejects incompatible assignments.
    pub fn compatible(lattice: &'a BoundedLattice, space: SpaceModel, sets: Vec<PointSet>) -> Result<Self> {
        let family = Self::new(lattice, space, sets)?;
        if let Some(reason) = family.incompatibility() {
            return Err(Error::Incompatible(reason));
        }
        Ok(family)
    }

    pub fn lattice(&self) -> &'a BoundedLattice {
        self.lattice
    }

    pub fn space(&self) -> SpaceModel {
        self.space
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> PointSet {
        self.sets[i]
    }

    pub fn is_compatible(&self) -> bool {
        self.incompatibility().is_none()
    }

    pub fn is_compatible_with(&self, mode: CompatibilityMode) -> bool {
        match mode {
            CompatibilityMode::Pairwise => self.is_compatible(),
            CompatibilityMode::Exhaustive => self.exhaustive_incompatibility().is_none(),
        }
    }

    /// First pairwise failure, rendered with 1-based indices.
    pub fn incompatibility(&self) -> Option<String> {
        let l = self.lattice;
        if self.sets[l.top()] != self.space.full() {
            return Some(format!("S_{} = {} is not X", l.top() + 1, self.sets[l.top()]));
        }
        let n = l.size();
        for i in 0..n {
            for j in i + 1..n {
                let m = l.meet(i, j);
                let lhs = self.sets[i].intersection(self.sets[j]);
                if lhs != self.sets[m] {
                    return Some(format!(
                        "S_{} ∩ S_{} = {} but S_{} = {}",
                        i + 1,
                        j + 1,
                        lhs,
                        m + 1,
                        self.sets[m]
                    ));
                }
            }
        }
        None
    }

    /// Literal check over every `γ ⊆ Δ`. Exponential in the lattice size.
    pub fn exhaustive_incompatibility(&self) -> Option<String> {
        let l = self.lattice;
        let n = l.size();
        assert!(n < 32, "exhaustive compatibility is limited to lattices below 32 elements");
        for gamma in 0u32..(1 << n) {
            let members = (0..n).filter(|&j| gamma >> j & 1 == 1);
            let meet = l.meet_all(members.clone());
            let inter = members.fold(self.space.full(), |acc, j| acc.intersection(self.sets[j]));
            if inter != self.sets[meet] {
                return Some(format!("γ = {gamma:#b}: intersection {inter} but S_{} = {}", meet + 1, self.sets[meet]));
            }
        }
        None
    }

    /// `∪_{k ∈ γ_j} S_k`.
    pub fn union_over_gamma(&self, j: usize) -> PointSet {
        self.lattice
            .gamma(j)
            .into_iter()
            .fold(PointSet::EMPTY, |acc, k| acc.union(self.sets[k]))
    }

    /// Stable textual id: the sets in index order, `|`-separated.
    pub fn id(&self) -> String {
        self.sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("|")
    }
}

/// Every compatible family, in lexicographic order of `(S_1, …, S_n)`
/// bitmasks. Depth-first with pairwise pruning, so the cost follows the
/// number of solutions rather than `2^(n·|X|)`.
pub fn enumerate_compatible_families(
    lattice: &BoundedLattice,
    space: SpaceModel,
    bound: usize,
) -> Result<Vec<ClosedFamily<'_>>> {
    let n = lattice.size();
    let work = n * space.point_count();
    if work > bound {
        return Err(Error::BoundExceeded {
            what: "lattice size × point count",
            value: work,
            limit: bound,
        });
    }
    let full = space.full();
    let mut out = Vec::new();
    let mut sets = vec![PointSet::EMPTY; n];

    fn extend<'a>(
        t: usize,
        lattice: &'a BoundedLattice,
        space: SpaceModel,
        full: PointSet,
        sets: &mut Vec<PointSet>,
        out: &mut Vec<ClosedFamily<'a>>,
    ) {
        let n = lattice.size();
        if t == n {
            out.push(ClosedFamily { lattice, space, sets: sets.clone() });
            return;
        }
        let candidates: Box<dyn Iterator<Item = PointSet>> = if t == lattice.top() {
            Box::new(std::iter::once(full))
        } else {
            Box::new(space.closed_sets())
        };
        for s in candidates {
            sets[t] = s;
            // every pair whose members and meet are all assigned
            let ok = (0..=t).all(|i| {
                (0..=t).all(|j| {
                    let m = lattice.meet(i, j);
                    m > t || sets[i].intersection(sets[j]) == sets[m]
                })
            });
            if ok {
                extend(t + 1, lattice, space, full, sets, out);
            }
        }
    }

    extend(0, lattice, space, full, &mut sets, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean4() -> BoundedLattice {
        BoundedLattice::boolean(2)
    }

    fn sets(xs: &[&[usize]]) -> Vec<PointSet> {
        xs.iter().map(|s| PointSet::from_points(s.iter().copied())).collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(BoundedLattice::chain(2).validate(), Ok(()));
        assert_eq!(boolean4().validate(), Ok(()));
        // corrupt meet(1,2) in the Boolean lattice (0-based indices 1 and 2)
        let mut meet = boolean4().meet_table().to_vec();
        meet[1][2] = 1;
        meet[2][1] = 1;
        let bad = BoundedLattice::new(meet, boolean4().join_table().to_vec(), 0, 3).unwrap();
        assert_eq!(bad.validate(), Err(LatticeViolation::Absorption { i: 1, j: 2 }));
        assert_eq!(
            LatticeViolation::Absorption { i: 1, j: 2 }.to_string(),
            "absorption fails at (2, 3)"
        );
        // corrupt meet(I_1, I_2) = I_2: the report names (1, 2) in 1-based form
        let mut meet = boolean4().meet_table().to_vec();
        meet[0][1] = 1;
        meet[1][0] = 1;
        let bad = BoundedLattice::new(meet, boolean4().join_table().to_vec(), 0, 3).unwrap();
        assert_eq!(bad.validate().unwrap_err().to_string(), "absorption fails at (1, 2)");
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(BoundedLattice::new(vec![], vec![], 0, 0).is_err());
        assert!(BoundedLattice::new(vec![vec![0, 1]], vec![vec![0]], 0, 0).is_err());
        assert!(BoundedLattice::new(vec![vec![3]], vec![vec![0]], 0, 0).is_err());
        assert!(BoundedLattice::new(vec![vec![0]], vec![vec![0]], 0, 1).is_err());
    }

    #[test]
    fn from_order_builds_pentagon_and_rejects_non_lattices() {
        // N5: 0 < 1 < 2 < 4, 0 < 3 < 4
        let rel = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (0, 2), (0, 4), (1, 4)];
        let mut leq = vec![vec![false; 5]; 5];
        for i in 0..5 {
            leq[i][i] = true;
        }
        for (a, b) in rel {
            leq[a][b] = true;
        }
        let n5 = BoundedLattice::from_order(&leq).unwrap();
        assert_eq!(n5.validate(), Ok(()));
        assert!(!n5.is_distributive());
        // two incomparable maximal elements: no top
        let leq = vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]];
        assert!(BoundedLattice::from_order(&leq).is_none());
    }

    #[test]
    fn compatibility_examples() {
        let l = boolean4();
        let x = SpaceModel::new(2).unwrap();
        let all = ClosedFamily::new(&l, x, vec![x.full(); 4]).unwrap();
        assert!(all.is_compatible());
        assert!(all.is_compatible_with(CompatibilityMode::Exhaustive));
        let good = ClosedFamily::new(&l, x, sets(&[&[], &[0], &[1], &[0, 1]])).unwrap();
        assert!(good.is_compatible());
        assert!(good.is_compatible_with(CompatibilityMode::Exhaustive));
        let bad = ClosedFamily::new(&l, x, sets(&[&[], &[0], &[0], &[0, 1]])).unwrap();
        assert!(!bad.is_compatible());
        assert!(!bad.is_compatible_with(CompatibilityMode::Exhaustive));
        assert!(bad.incompatibility().unwrap().contains("S_2 ∩ S_3"));
        let no_top = ClosedFamily::new(&l, x, sets(&[&[], &[], &[], &[0]])).unwrap();
        assert!(!no_top.is_compatible());
        assert!(!no_top.is_compatible_with(CompatibilityMode::Exhaustive));
        assert!(ClosedFamily::new(&l, x, sets(&[&[], &[], &[], &[0, 2]])).is_err());
        assert!(ClosedFamily::new(&l, x, sets(&[&[], &[0, 1]])).is_err());
        assert!(matches!(
            ClosedFamily::compatible(&l, x, sets(&[&[], &[0], &[0], &[0, 1]])),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn gamma_examples() {
        let c3 = BoundedLattice::chain(3);
        assert_eq!(c3.gamma(1), vec![0]);
        for l in [c3, boolean4(), BoundedLattice::boolean(3)] {
            assert!(l.gamma(l.bottom()).is_empty());
            let others: Vec<usize> = (0..l.size()).filter(|&i| i != l.top()).collect();
            assert_eq!(l.gamma(l.top()), others);
        }
    }

    #[test]
    fn union_over_gamma_of_bottom_is_empty() {
        let l = boolean4();
        let x = SpaceModel::new(2).unwrap();
        let f = ClosedFamily::new(&l, x, sets(&[&[0], &[0], &[0, 1], &[0, 1]])).unwrap();
        assert_eq!(f.union_over_gamma(0), PointSet::EMPTY);
    }

    #[test]
    fn enumerate_examples() {
        let c2 = BoundedLattice::chain(2);
        let one = SpaceModel::new(1).unwrap();
        let fams = enumerate_compatible_families(&c2, one, DEFAULT_FAMILY_BOUND).unwrap();
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[0].sets(), &[PointSet(0), PointSet(1)]);
        assert_eq!(fams[1].sets(), &[PointSet(1), PointSet(1)]);
        let b4 = boolean4();
        assert_eq!(enumerate_compatible_families(&b4, one, 16).unwrap().len(), 4);
        let two = SpaceModel::new(2).unwrap();
        let fams = enumerate_compatible_families(&b4, two, 16).unwrap();
        assert_eq!(fams.len(), 16);
        // lexicographic order
        for w in fams.windows(2) {
            assert!(w[0].sets() < w[1].sets());
        }
        let five = SpaceModel::new(5).unwrap();
        assert!(matches!(
            enumerate_compatible_families(&b4, five, 16),
            Err(Error::BoundExceeded { .. })
        ));
    }

    // Brute force over all assignments, filtered by the pairwise check.
    fn brute_force_families(l: &BoundedLattice, x: SpaceModel) -> Vec<Vec<PointSet>> {
        let n = l.size();
        let per = 1u64 << x.point_count();
        let total = per.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut s = vec![PointSet::EMPTY; n];
            for i in (0..n).rev() {
                s[i] = PointSet(c % per);
                c /= per;
            }
            let f = ClosedFamily::new(l, x, s.clone()).unwrap();
            if f.is_compatible() {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for l in [BoundedLattice::chain(3), boolean4(), BoundedLattice::chain(4)] {
            for p in 0..=2 {
                let x = SpaceModel::new(p).unwrap();
                let fast: Vec<Vec<PointSet>> = enumerate_compatible_families(&l, x, 64)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.sets().to_vec())
                    .collect();
                assert_eq!(fast, brute_force_families(&l, x));
            }
        }
    }

    #[test]
    fn gamma_is_monotone() {
        for l in [BoundedLattice::chain(5), BoundedLattice::boolean(3)] {
            for j in 0..l.size() {
                for k in 0..l.size() {
                    if l.leq(j, k) {
                        let gj = l.gamma(j);
                        let gk = l.gamma(k);
                        assert!(gj.iter().all(|i| gk.contains(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let b = BoundedLattice::boolean(2);
        // relabel: swap the atoms and move the top to index 1
        let perm = [0usize, 3, 2, 1];
        let n = 4;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[perm[i]][perm[j]] = perm[b.meet(i, j)];
                join[perm[i]][perm[j]] = perm[b.join(i, j)];
            }
        }
        let relabeled = BoundedLattice::new(meet, join, 0, 1).unwrap();
        assert_eq!(relabeled.validate(), Ok(()));
        let phi = b.order_isomorphism(&relabeled).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(b.leq(i, j), relabeled.leq(phi[i], phi[j]));
            }
        }
        assert!(b.order_isomorphism(&BoundedLattice::chain(4)).is_none());
    }

    #[test]
    fn coatoms() {
        assert_eq!(BoundedLattice::boolean(2).coatoms(), vec![1, 2]);
        assert_eq!(BoundedLattice::chain(4).coatoms(), vec![2]);
        assert!(BoundedLattice::chain(1).coatoms().is_empty());
    }

    #[test]
    fn point_set_display() {
        assert_eq!(PointSet::from_points([0, 2]).to_string(), "{0,2}");
        assert_eq!(PointSet::EMPTY.to_string(), "{}");
    }
}
