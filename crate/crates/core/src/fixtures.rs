//! Bundled lattice and algebra instances, and generators for small lattices.

use crate::error::{Error, Result};
use crate::fdalgebra::{enumerate_ideals, AlgebraSpec, DEFAULT_MAX_BLOCKS};
use crate::lattice::{BoundedLattice, ClosedFamily, PointSet, SpaceModel};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub lattice: BoundedLattice,
    /// Concrete block algebra whose ideal lattice this is, when one exists.
    pub spec: Option<AlgebraSpec>,
    /// A compatible family template: point count and one set per index.
    pub family: Option<(SpaceModel, Vec<PointSet>)>,
}

impl Fixture {
    /// Lattice laws, plus order-isomorphism with the concrete ideal lattice.
    pub fn validate(&self) -> std::result::Result<(), String> {
        self.lattice.validate().map_err(|v| v.to_string())?;
        if let Some(spec) = &self.spec {
            let ideals = enumerate_ideals::<GaussianRational>(spec, DEFAULT_MAX_BLOCKS).map_err(|e| e.to_string())?;
            if self.lattice.order_isomorphism(ideals.lattice()).is_none() {
                return Err(format!("{}: lattice is not order-isomorphic to the ideals of the algebra", self.name));
            }
        }
        if let Some((space, sets)) = &self.family {
            ClosedFamily::compatible(&self.lattice, *space, sets.clone()).map_err(|e| e.to_string())?;
        }
        Ok(())
    }

    pub fn family(&self) -> Option<ClosedFamily<'_>> {
        let (space, sets) = self.family.as_ref()?;
        ClosedFamily::new(&self.lattice, *space, sets.clone()).ok()
    }
}

/// Family on `size` points where point `x` has stalk `x`: `S_i` is the
/// down-set of `i`. Every set is distinct and nonempty.
fn down_set_family(lattice: &BoundedLattice) -> (SpaceModel, Vec<PointSet>) {
    let n = lattice.size();
    let space = SpaceModel::new(n).expect("small fixture");
    let sets = (0..n)
        .map(|i| PointSet::from_points((0..n).filter(|&x| lattice.leq(x, i))))
        .collect();
    (space, sets)
}

/// Ideals of `B(H) ⊕ B(H)` for separable `H`: pairs from the chain
/// `0 ⊂ K(H) ⊂ B(H)` in each summand, ordered componentwise.
///
/// Index `k` (0-based) is `I_{k+1}`: `0⊕0, K⊕0, 0⊕K, B⊕0, K⊕K, 0⊕B, B⊕K, K⊕B, B⊕B`.
pub fn bh2_fixture() -> Fixture {
    const LEVELS: [(usize, usize); 9] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)];
    let leq: Vec<Vec<bool>> = LEVELS
        .iter()
        .map(|a| LEVELS.iter().map(|b| a.0 <= b.0 && a.1 <= b.1).collect())
        .collect();
    let lattice = BoundedLattice::from_order(&leq).expect("product of chains is a lattice");
    let family = down_set_family(&lattice);
    Fixture {
        name: "bh2".into(),
        lattice,
        spec: None,
        family: Some(family),
    }
}

/// The chain `I_1 ⊂ … ⊂ I_m`. Only `m = 2` has a concrete model (`M_2`).
pub fn chain_fixture(m: usize) -> Result<Fixture> {
    if m < 2 {
        return Err(Error::MalformedLattice(format!("chain length must be at least 2, got {m}")));
    }
    let lattice = BoundedLattice::chain(m);
    let family = down_set_family(&lattice);
    Ok(Fixture {
        name: format!("chain_{m}"),
        lattice,
        spec: (m == 2).then(|| AlgebraSpec::new(vec![2]).expect("valid")),
        family: Some(family),
    })
}

/// Boolean lattice of block subsets, carrying the block algebra.
pub fn block_fixture(dims: &[usize]) -> Result<Fixture> {
    let spec = AlgebraSpec::new(dims.to_vec())?;
    let ideals = enumerate_ideals::<GaussianRational>(&spec, DEFAULT_MAX_BLOCKS)?;
    let name = format!(
        "blocks_{}",
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("_")
    );
    Ok(Fixture {
        name,
        lattice: ideals.lattice().clone(),
        spec: Some(spec),
        family: None,
    })
}

/// Names accepted by [`fixture_by_name`], with a short description.
pub fn bundled_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("bh2", "9-element ideal lattice of B(H)+B(H), abstract"),
        ("chain_<m>", "m-element chain (m >= 2); chain_2 carries M_2"),
        ("blocks_<n1>_<n2>_...", "Boolean lattice of the block algebra M_n1 + M_n2 + ..."),
    ]
}

pub fn fixture_by_name(name: &str) -> Result<Fixture> {
    if name == "bh2" {
        return Ok(bh2_fixture());
    }
    let bad = || Error::InvalidSpec(format!("unknown fixture {name:?}"));
    if let Some(m) = name.strip_prefix("chain_") {
        return chain_fixture(m.parse().map_err(|_| bad())?);
    }
    if let Some(rest) = name.strip_prefix("blocks_") {
        let dims = rest
            .split('_')
            .map(|d| d.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        return block_fixture(&dims);
    }
    Err(bad())
}

/// Every labeled bounded lattice on `n` elements with bottom `0` and top
/// `n − 1`. Practical for `n ≤ 6`.
pub fn all_lattices(n: usize) -> Vec<BoundedLattice> {
    match n {
        0 => return Vec::new(),
        1 => return vec![BoundedLattice::chain(1)],
        _ => {}
    }
    let middle: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = middle
        .iter()
        .flat_map(|&a| middle.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => leq[a][b] = true,
                2 => leq[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        if !transitive {
            continue;
        }
        if let Some(l) = BoundedLattice::from_order(&leq) {
            out.push(l);
        }
    }
    out
}
