//! Instance specifications: the JSON group-spec format and the named
//! constructions used by the corpus.

use classbound_core::bounds::{BoundParams, NoncoprimeBound};
use classbound_core::constructions::{example_03a, frobenius_wreath, WreathInstance};
use classbound_core::gf::blocks::{block_perm_matrix, cyclic_block_instance, induced_block_group, BlockInstance, BlockStructure, KernelChoice, Mixing};
use classbound_core::gf::lgroup::five_complement_gl25;
use classbound_core::gf::{GfMatrix, MatrixGroup};
use classbound_core::group::is_subnormal;
use classbound_core::sampling::{subgroup_sample, SampleStrategy};
use classbound_core::{Error, FiniteGroup, Group, Permutation, Subgroup};
use serde::{Deserialize, Serialize};

/// Cap on the ambient group of a block instance. Structured class counting
/// stops well below this, so larger groups are not worth enumerating.
pub const BLOCK_GROUP_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree {
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusParams {
    pub q: u32,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WreathParams {
    pub base: Box<InstanceSpec>,
    pub top: Box<InstanceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub p: u32,
    pub dim: usize,
}

/// What a corpus item or a `--spec` file describes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSpec {
    Symmetric {
        params: Degree,
    },
    Alternating {
        params: Degree,
    },
    Cyclic {
        params: Degree,
    },
    Dihedral {
        params: Degree,
    },
    Quaternion,
    Frobenius {
        params: FrobeniusParams,
    },
    /// `S₃ wr C₂` and `F(q,p) wr C₂` come with their distinguished `N`.
    Wreath {
        params: WreathParams,
    },
    ExplicitPerm {
        params: Degree,
        generators: Vec<String>,
    },
    /// Row-major generator matrices. With `blocks`, the generators either act
    /// on the whole space in block form, or, with `mixing-seed`, generate the
    /// block group `H₁` of a seeded induced group.
    MatrixGfp {
        p: u32,
        dim: usize,
        generators: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        module: Option<ModuleSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        blocks: Option<usize>,
        #[serde(default, rename = "mixing-seed", skip_serializing_if = "Option::is_none")]
        mixing_seed: Option<u64>,
    },
    /// The order-96 subgroup of `GL(2,5)`.
    #[serde(rename = "l-gl25")]
    LGl25,
    /// Every subgroup of `L`.
    LLattice,
    /// `N⟨g⟩` with `g` the cyclic shift of `p` copies of `GF(5)²`, `N ≤ L^p`.
    LBlock {
        p: usize,
        #[serde(default, rename = "kernel-seed", skip_serializing_if = "Option::is_none")]
        kernel_seed: Option<u64>,
    },
    /// A subgroup of `H₁ wr C₂` on `GF(5)⁴`, `H₁` given by its position in the
    /// subgroup list of `L` (absent: `L` itself).
    Induced {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h1: Option<usize>,
        mixing: Mixing,
    },
    TheoremCExcluded,
    /// The thresholds at `|W| = 2^log-w`; `parts` lists the ones claimed to hold.
    Lemd4 {
        #[serde(rename = "log-w")]
        log_w: u32,
        n: u32,
        #[serde(default = "Lemd4Part::all")]
        parts: Vec<Lemd4Part>,
    },
    Corf3,
    Noncoprime {
        bound: NoncoprimeBound,
        params: BoundParams,
    },
}

/// The three inequalities evaluated by `check_lemd4_thresholds`, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemd4Part {
    General,
    N2,
    PartB,
}

impl Lemd4Part {
    pub fn all() -> Vec<Lemd4Part> {
        vec![Lemd4Part::General, Lemd4Part::N2, Lemd4Part::PartB]
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Broad shape of an instance; decides which verifiers apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Perm,
    Wreath,
    Linear,
    Lattice,
    Block,
    Excluded,
    Lemd4,
    Noncoprime,
}

impl InstanceSpec {
    pub fn shape(&self) -> Shape {
        use InstanceSpec::*;
        match self {
            Symmetric { .. } | Alternating { .. } | Cyclic { .. } | Dihedral { .. } | Quaternion | Frobenius { .. } | ExplicitPerm { .. } => Shape::Perm,
            Wreath { params } => {
                if distinguished_wreath(params).is_some() {
                    Shape::Wreath
                } else {
                    Shape::Perm
                }
            }
            MatrixGfp { blocks: Some(_), .. } | LBlock { .. } | Induced { .. } => Shape::Block,
            MatrixGfp { .. } | LGl25 => Shape::Linear,
            LLattice => Shape::Lattice,
            TheoremCExcluded => Shape::Excluded,
            Lemd4 { .. } => Shape::Lemd4,
            Corf3 | Noncoprime { .. } => Shape::Noncoprime,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, InstanceSpec::Symmetric { .. })
    }
}

/// A constructed instance.
pub enum Built {
    Perm(FiniteGroup),
    Wreath(WreathInstance),
    Linear(MatrixGroup),
    Lattice { l: MatrixGroup, subgroups: Vec<Subgroup> },
    /// `l` is the group `U₁` is compared against, when there is one.
    Block { inst: BlockInstance, l: Option<MatrixGroup> },
    Excluded,
    Lemd4 { w: u128, n: u32, parts: Vec<Lemd4Part> },
    Corf3,
    Noncoprime { bound: NoncoprimeBound, params: BoundParams },
}

enum Distinguished {
    Example,
    Frobenius(u32, u32),
}

fn distinguished_wreath(params: &WreathParams) -> Option<Distinguished> {
    if *params.top != (InstanceSpec::Cyclic { params: Degree { n: 2 } }) {
        return None;
    }
    match &*params.base {
        InstanceSpec::Symmetric { params: Degree { n: 3 } } => Some(Distinguished::Example),
        InstanceSpec::Frobenius { params } => Some(Distinguished::Frobenius(params.q, params.p)),
        _ => None,
    }
}

fn perm_group(spec: &InstanceSpec, cap: usize) -> Result<FiniteGroup, Error> {
    use InstanceSpec::*;
    match spec {
        Symmetric { params } => FiniteGroup::symmetric(params.n, cap),
        Alternating { params } => FiniteGroup::alternating(params.n, cap),
        Cyclic { params } => FiniteGroup::cyclic(params.n, cap),
        Dihedral { params } => FiniteGroup::dihedral(params.n, cap),
        Quaternion => FiniteGroup::quaternion(cap),
        Frobenius { params } => FiniteGroup::frobenius(params.q, params.p, cap),
        Wreath { params } => FiniteGroup::wreath_product(&perm_group(&params.base, cap)?, &perm_group(&params.top, cap)?, cap),
        ExplicitPerm { params, generators } => {
            let gens = generators.iter().map(|s| Permutation::parse(s, params.n)).collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_generators("explicit", params.n, &gens, cap)
        }
        _ => Err(Error::InvalidInput("not a permutation group spec".into())),
    }
}

fn matrices(p: u32, dim: usize, rows: &[Vec<u32>]) -> Result<Vec<GfMatrix>, Error> {
    rows.iter().map(|r| GfMatrix::new(p, dim, r.clone())).collect()
}

/// The nontrivial subnormal subgroups of `L`, as positions in its subgroup list.
pub fn l_subnormal_positions() -> Result<Vec<usize>, Error> {
    let l = five_complement_gl25()?;
    let subs = subgroup_sample(&l, SampleStrategy::Exhaustive, 0)?;
    Ok(subs.iter().enumerate().filter(|(_, s)| s.order() > 1 && is_subnormal(&l, s)).map(|(i, _)| i).collect())
}

fn block_with_mover(name: &str, group: MatrixGroup) -> Result<BlockInstance, Error> {
    let blocks = group.blocks().ok_or_else(|| Error::InvalidInput("missing block structure".into()))?;
    let id: Vec<usize> = (0..blocks.count).collect();
    let g = group
        .generators()
        .iter()
        .copied()
        .find(|&x| blocks.action(&group.matrix(x)).is_some_and(|a| a != id))
        .ok_or_else(|| Error::HypothesisFailed("no generator moves the blocks".into()))?;
    BlockInstance::new(name, group, g)
}

fn gl25_blocks(p: u32, block_dim: usize) -> Result<Option<MatrixGroup>, Error> {
    if p == 5 && block_dim == 2 {
        Ok(Some(five_complement_gl25()?))
    } else {
        Ok(None)
    }
}

/// Constructs the instance; `name` labels the resulting groups.
pub fn build(name: &str, spec: &InstanceSpec, cap: usize) -> Result<Built, Error> {
    use InstanceSpec::*;
    let block_cap = cap.min(BLOCK_GROUP_CAP);
    match spec {
        Wreath { params } => match distinguished_wreath(params) {
            Some(Distinguished::Example) => Ok(Built::Wreath(example_03a(cap)?)),
            Some(Distinguished::Frobenius(q, p)) => Ok(Built::Wreath(frobenius_wreath(q, p, cap)?)),
            None => Ok(Built::Perm(perm_group(spec, cap)?.with_name(name))),
        },
        MatrixGfp { p, dim, generators, module, blocks, mixing_seed } => {
            if let Some(m) = module {
                let total = if mixing_seed.is_some() { dim * blocks.unwrap_or(1) } else { *dim };
                if m.p != *p || m.dim != total {
                    return Err(Error::InvalidInput("module does not match the matrix group".into()));
                }
            }
            let gens = matrices(*p, *dim, generators)?;
            match (blocks, mixing_seed) {
                (None, _) => Ok(Built::Linear(MatrixGroup::from_generators(name, *p, *dim, &gens, cap)?)),
                (Some(count), Some(seed)) => {
                    let h1 = MatrixGroup::from_generators("H1", *p, *dim, &gens, cap)?;
                    let shift: Vec<usize> = (0..*count).map(|i| (i + 1) % count).collect();
                    let group = induced_block_group(&h1, std::slice::from_ref(&shift), Mixing::Seeded(*seed), block_cap)?.with_name(name);
                    let g = group.index_of(&block_perm_matrix(*p, *dim, &shift)).ok_or(Error::ElementNotInGroup)?;
                    let l = gl25_blocks(*p, *dim)?;
                    Ok(Built::Block { inst: BlockInstance::new(name, group, g)?, l })
                }
                (Some(count), None) => {
                    if *count == 0 || dim % count != 0 {
                        return Err(Error::InvalidInput(format!("{count} blocks do not divide dimension {dim}")));
                    }
                    let group = MatrixGroup::from_generators(name, *p, *dim, &gens, block_cap)?.with_blocks(BlockStructure { count: *count, dim: dim / count });
                    let l = gl25_blocks(*p, dim / count)?;
                    Ok(Built::Block { inst: block_with_mover(name, group)?, l })
                }
            }
        }
        LGl25 => Ok(Built::Linear(five_complement_gl25()?)),
        LLattice => {
            let l = five_complement_gl25()?;
            let subgroups = subgroup_sample(&l, SampleStrategy::Exhaustive, 0)?;
            Ok(Built::Lattice { l, subgroups })
        }
        LBlock { p, kernel_seed } => {
            let l = five_complement_gl25()?;
            let choice = kernel_seed.map_or(KernelChoice::Full, KernelChoice::Seeded);
            let inst = cyclic_block_instance(&l, *p, choice, block_cap)?;
            Ok(Built::Block { inst, l: Some(l) })
        }
        Induced { h1, mixing } => {
            let l = five_complement_gl25()?;
            let h = match h1 {
                None => l.clone(),
                Some(i) => {
                    let subs = subgroup_sample(&l, SampleStrategy::Exhaustive, 0)?;
                    let s = subs.get(*i).ok_or_else(|| Error::InvalidInput(format!("L has no subgroup number {i}")))?;
                    l.sub(s, &format!("H{i}"))
                }
            };
            let group = induced_block_group(&h, &[vec![1, 0]], *mixing, block_cap)?.with_name(name);
            let g = group.index_of(&block_perm_matrix(5, 2, &[1, 0])).ok_or(Error::ElementNotInGroup)?;
            Ok(Built::Block { inst: BlockInstance::new(name, group, g)?, l: Some(l) })
        }
        TheoremCExcluded => Ok(Built::Excluded),
        Lemd4 { log_w, n, parts } => {
            if *log_w == 0 || *log_w > 120 {
                return Err(Error::InvalidInput(format!("log2|W| = {log_w} is out of range")));
            }
            Ok(Built::Lemd4 { w: 1u128 << log_w, n: *n, parts: parts.clone() })
        }
        Corf3 => Ok(Built::Corf3),
        Noncoprime { bound, params } => Ok(Built::Noncoprime { bound: *bound, params: params.clone() }),
        _ => Ok(Built::Perm(perm_group(spec, cap)?.with_name(name))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_formats() {
        let s: InstanceSpec = serde_json::from_str(r#"{"kind":"matrix-gfp","p":5,"dim":2,"generators":[[0,4,1,0]]}"#).unwrap();
        assert_eq!(s.shape(), Shape::Linear);
        let s: InstanceSpec = serde_json::from_str(r#"{"kind":"explicit-perm","params":{"n":4},"generators":["(0 1 2)(3)"]}"#).unwrap();
        let Built::Perm(g) = build("x", &s, 1000).unwrap() else { panic!() };
        assert_eq!(g.order(), 3);
        let s: InstanceSpec = serde_json::from_str(r#"{"kind":"symmetric","params":{"n":4}}"#).unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn wreath_dispatch() {
        let w = |base: InstanceSpec| InstanceSpec::Wreath {
            params: WreathParams { base: Box::new(base), top: Box::new(InstanceSpec::Cyclic { params: Degree { n: 2 } }) },
        };
        assert_eq!(w(InstanceSpec::Symmetric { params: Degree { n: 3 } }).shape(), Shape::Wreath);
        assert_eq!(w(InstanceSpec::Cyclic { params: Degree { n: 3 } }).shape(), Shape::Perm);
        let Built::Perm(g) = build("c3wrc2", &w(InstanceSpec::Cyclic { params: Degree { n: 3 } }), 1000).unwrap() else { panic!() };
        assert_eq!(g.order(), 18);
    }

    #[test]
    fn round_trips() {
        let s = InstanceSpec::Induced { h1: Some(3), mixing: Mixing::Seeded(7) };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<InstanceSpec>(&text).unwrap(), s);
        let s = InstanceSpec::LBlock { p: 2, kernel_seed: None };
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"l-block","p":2}"#);
    }
}
