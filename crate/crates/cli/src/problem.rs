//! The JSON problem file and its resolution into core values.
//!
//! Lattice element indices in the file are 1-based (`1` is `I_1`); point
//! indices are 0-based.

use std::path::Path;

use c0ideals::fdalgebra::AlgebraSpec;
use c0ideals::fixtures::{self, Fixture};
use c0ideals::function_algebra::FunctionAlgebra;
use c0ideals::lattice::{BoundedLattice, PointSet, SpaceModel};
use c0ideals::scalar::parse_gaussian;
use c0ideals::Scalar;
use serde::{Deserialize, Serialize};

use crate::InputError;

pub const MAX_LATTICE_SIZE: usize = 12;
pub const MAX_POINTS: usize = 4;
pub const MAX_DIM_PER_POINT: usize = 32;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeTables>,
    /// Parameters for a generated lattice, used instead of `lattice`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<usize>>,
    #[serde(default, rename = "Y", skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_index: Option<usize>,
    /// Spanning vectors in flat coordinates: point-major, then blocks in
    /// order, each block row-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeTables {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    Chain(usize),
}

impl LatticeTables {
    pub fn from_lattice(l: &BoundedLattice) -> Self {
        let shift = |t: &[Vec<usize>]| t.iter().map(|r| r.iter().map(|x| x + 1).collect()).collect();
        LatticeTables {
            size: l.size(),
            meet: shift(l.meet_table()),
            join: shift(l.join_table()),
            bottom: l.bottom() + 1,
            top: l.top() + 1,
        }
    }

    fn to_lattice(&self) -> Result<BoundedLattice, InputError> {
        let n = self.size;
        let unshift = |name: &str, t: &[Vec<usize>]| -> Result<Vec<Vec<usize>>, InputError> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(InputError(format!("lattice.{name} must be {n}x{n}")));
            }
            t.iter()
                .map(|r| r.iter().map(|&x| one_based(x, n, &format!("lattice.{name}"))).collect())
                .collect()
        };
        let meet = unshift("meet", &self.meet)?;
        let join = unshift("join", &self.join)?;
        let bottom = one_based(self.bottom, n, "lattice.bottom")?;
        let top = one_based(self.top, n, "lattice.top")?;
        BoundedLattice::new(meet, join, bottom, top).map_err(|e| InputError(e.to_string()))
    }
}

fn one_based(x: usize, n: usize, what: &str) -> Result<usize, InputError> {
    if x == 0 || x > n {
        return Err(InputError(format!("{what}: index {x} outside 1..={n}")));
    }
    Ok(x - 1)
}

/// The concrete algebra behind the lattice, with the relabeling from
/// problem indices to block masks.
#[derive(Debug)]
pub struct Concrete {
    pub algebra: FunctionAlgebra,
    pub to_mask: Vec<usize>,
    pub from_mask: Vec<usize>,
}

impl Concrete {
    pub fn masks(&self, stalks: &[usize]) -> Vec<usize> {
        stalks.iter().map(|&s| self.to_mask[s]).collect()
    }

    pub fn labels(&self, masks: &[usize]) -> Vec<usize> {
        masks.iter().map(|&m| self.from_mask[m]).collect()
    }
}

/// A loaded, bounds-checked problem. Operands are 0-based.
#[derive(Debug)]
pub struct Problem {
    pub name: String,
    /// Lattice source and point count, reused when emitting JSON.
    pub header: ProblemFile,
    pub lattice: BoundedLattice,
    pub concrete: Option<Concrete>,
    pub space: SpaceModel,
    pub family: Option<Vec<PointSet>>,
    pub ideal: Option<Vec<usize>>,
    pub y: Option<PointSet>,
    pub ideal_index: Option<usize>,
    pub subspace: Option<Vec<Vec<Scalar>>>,
}

pub fn parse(text: &str) -> Result<ProblemFile, InputError> {
    serde_json::from_str(text).map_err(|e| {
        InputError(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()))
    })
}

pub fn load_file(path: &Path, points: Option<usize>) -> Result<Problem, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let mut file = parse(&text)?;
    if let Some(p) = points {
        file.points = p;
    }
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    resolve(name, file)
}

/// Point count for a fixture whose family template does not fit the bounds.
pub const DEFAULT_FIXTURE_POINTS: usize = 2;

/// A bundled fixture as a problem. The fixture's family template is kept
/// only when it fits the point bound and the point count is not overridden.
pub fn load_fixture(name: &str, points: Option<usize>) -> Result<Problem, InputError> {
    let fixture = fixtures::fixture_by_name(name).map_err(|e| InputError(e.to_string()))?;
    check_lattice_size(fixture.lattice.size())?;
    let Fixture { name, lattice, spec, family } = fixture;
    let template = family.filter(|(space, _)| {
        space.point_count() <= MAX_POINTS && points.is_none_or(|p| p == space.point_count())
    });
    let header = ProblemFile {
        points: points
            .or(template.as_ref().map(|(s, _)| s.point_count()))
            .unwrap_or(DEFAULT_FIXTURE_POINTS),
        ..fixture_header(&name, &lattice, spec.as_ref())
    };
    let mut problem = resolve(name, header)?;
    problem.family = template.map(|(_, sets)| sets);
    Ok(problem)
}

fn fixture_header(name: &str, lattice: &BoundedLattice, spec: Option<&AlgebraSpec>) -> ProblemFile {
    if let Some(spec) = spec {
        return ProblemFile { blocks: Some(spec.block_dims().to_vec()), ..Default::default() };
    }
    if let Some(m) = name.strip_prefix("chain_").and_then(|m| m.parse().ok()) {
        return ProblemFile { generator: Some(Generator::Chain(m)), ..Default::default() };
    }
    ProblemFile { lattice: Some(LatticeTables::from_lattice(lattice)), ..Default::default() }
}

fn check_lattice_size(n: usize) -> Result<(), InputError> {
    if n > MAX_LATTICE_SIZE {
        return Err(InputError(format!("lattice size {n} exceeds the limit of {MAX_LATTICE_SIZE}")));
    }
    Ok(())
}

pub fn resolve(name: String, file: ProblemFile) -> Result<Problem, InputError> {
    if file.points > MAX_POINTS {
        return Err(InputError(format!("points = {} exceeds the limit of {MAX_POINTS}", file.points)));
    }
    let space = SpaceModel::new(file.points).map_err(|e| InputError(e.to_string()))?;

    let spec = match &file.blocks {
        Some(dims) => {
            let spec = AlgebraSpec::new(dims.clone()).map_err(|e| InputError(e.to_string()))?;
            if spec.dim() > MAX_DIM_PER_POINT {
                return Err(InputError(format!(
                    "algebra dimension {} per point exceeds the limit of {MAX_DIM_PER_POINT}",
                    spec.dim()
                )));
            }
            Some(spec)
        }
        None => None,
    };
    let algebra = match &spec {
        Some(s) => {
            // 2^k ideals; k = 4 is already past the size bound
            if s.block_count() > 3 {
                return Err(InputError(format!(
                    "{} blocks give 2^{} ideals, above the limit of {MAX_LATTICE_SIZE}",
                    s.block_count(),
                    s.block_count()
                )));
            }
            Some(FunctionAlgebra::new(s, space).map_err(|e| InputError(e.to_string()))?)
        }
        None => None,
    };

    let explicit = match (&file.lattice, &file.generator) {
        (Some(_), Some(_)) => return Err(InputError("give either \"lattice\" or \"generator\", not both".into())),
        (Some(t), None) => {
            check_lattice_size(t.size)?;
            Some(t.to_lattice()?)
        }
        (None, Some(Generator::Chain(m))) => {
            check_lattice_size(*m)?;
            Some(fixtures::chain_fixture(*m).map_err(|e| InputError(e.to_string()))?.lattice)
        }
        (None, None) => None,
    };

    let (lattice, concrete) = match (explicit, algebra) {
        (None, None) => {
            return Err(InputError("one of \"blocks\", \"lattice\" or \"generator\" is required".into()))
        }
        (Some(l), None) => (l, None),
        (None, Some(algebra)) => {
            let l = algebra.lattice().clone();
            let id: Vec<usize> = (0..l.size()).collect();
            (l, Some(Concrete { algebra, to_mask: id.clone(), from_mask: id }))
        }
        (Some(l), Some(algebra)) => {
            if l.validate().is_err() {
                return Err(InputError("\"lattice\" given with \"blocks\" must be a valid lattice".into()));
            }
            let Some(to_mask) = l.order_isomorphism(algebra.lattice()) else {
                return Err(InputError(
                    "\"lattice\" is not order-isomorphic to the ideal lattice of \"blocks\"".into(),
                ));
            };
            let mut from_mask = vec![0; to_mask.len()];
            for (i, &m) in to_mask.iter().enumerate() {
                from_mask[m] = i;
            }
            (l, Some(Concrete { algebra, to_mask, from_mask }))
        }
    };

    let n = lattice.size();
    let subset = |pts: &[usize], what: &str| -> Result<PointSet, InputError> {
        if pts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InputError(format!("{what}: points must be strictly increasing")));
        }
        if let Some(&p) = pts.iter().find(|&&p| p >= file.points) {
            return Err(InputError(format!("{what}: point {p} outside 0..{}", file.points)));
        }
        Ok(PointSet::from_points(pts.iter().copied()))
    };

    let family = match &file.family {
        Some(sets) => {
            if sets.len() != n {
                return Err(InputError(format!("family has {} sets for a lattice of size {n}", sets.len())));
            }
            let sets = sets
                .iter()
                .enumerate()
                .map(|(i, s)| subset(s, &format!("family[{}]", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            Some(sets)
        }
        None => None,
    };
    let ideal = match &file.ideal {
        Some(stalks) => {
            if stalks.len() != file.points {
                return Err(InputError(format!("ideal has {} stalks for {} points", stalks.len(), file.points)));
            }
            Some(stalks.iter().map(|&s| one_based(s, n, "ideal")).collect::<Result<Vec<_>, _>>()?)
        }
        None => None,
    };
    let y = file.y.as_deref().map(|pts| subset(pts, "Y")).transpose()?;
    let ideal_index = file.ideal_index.map(|t| one_based(t, n, "ideal_index")).transpose()?;
    let subspace = match &file.subspace {
        Some(rows) => {
            let Some(c) = &concrete else {
                return Err(InputError("\"subspace\" needs \"blocks\"".into()));
            };
            let d = c.algebra.dim();
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    if row.len() != d {
                        return Err(InputError(format!("subspace[{k}] has {} entries, expected {d}", row.len())));
                    }
                    row.iter()
                        .map(|s| parse_gaussian(s).map_err(|e| InputError(format!("subspace[{k}]: {e}"))))
                        .collect()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(parsed)
        }
        None => None,
    };

    let header = ProblemFile {
        blocks: file.blocks.clone(),
        lattice: file.lattice.clone(),
        generator: file.generator,
        points: file.points,
        ..Default::default()
    };
    Ok(Problem {
        name,
        header,
        lattice,
        concrete,
        space,
        family,
        ideal,
        y,
        ideal_index,
        subspace,
    })
}

pub fn sets_to_json(sets: &[PointSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.points().collect()).collect()
}
