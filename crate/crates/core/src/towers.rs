//! Finite chains of injective algebra maps `A₁ → A₂ → … → A_m`, standing in
//! for strict inductive systems with the last stage as the limit.
//!
//! Homology classes of earlier stages are pushed forward along the induced
//! chain maps and expressed in the final stage's homology basis; continuity
//! becomes a statement about the resulting image filtration.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{hecke_algebra, hecke_inclusion, Algebra, AlgebraError, AlgebraHom, FiniteGroup, Subgroup};
use crate::homology::{
    certificate_from_dims, induced_tot_map, HomologyEngine, HomologyError, HomologyReport, Theory,
};
use crate::linalg::{rank, SparseMatrix};
use crate::mixed::{induced_chain_map, ComplexError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("subgroups do not form a decreasing chain ending in the trivial group: {0}")]
    NotAChain(String),
    #[error("map {0} is not injective")]
    NotInjective(usize),
    #[error("map {index} does not match stages: {reason}")]
    Mismatch { index: usize, reason: String },
    #[error("a tower needs at least one stage")]
    Empty,
    #[error("stage {stage} has no stabilization certificate within degree {n_max}")]
    CertMissing { stage: usize, n_max: usize, hochschild: Vec<usize> },
    #[error("theory {0:?} is not computed stage-wise")]
    UnsupportedTheory(Theory),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

impl From<ComplexError> for TowerError {
    fn from(e: ComplexError) -> Self {
        TowerError::Homology(e.into())
    }
}

/// Stages and injective connecting homomorphisms `maps[i]: stages[i] -> stages[i+1]`.
#[derive(Debug, Clone)]
pub struct DirectSystem {
    stages: Vec<Algebra>,
    maps: Vec<AlgebraHom>,
}

impl DirectSystem {
    pub fn new(stages: Vec<Algebra>, maps: Vec<AlgebraHom>) -> Result<Self, TowerError> {
        if stages.is_empty() {
            return Err(TowerError::Empty);
        }
        if maps.len() + 1 != stages.len() {
            return Err(TowerError::Mismatch {
                index: maps.len(),
                reason: format!("{} stages need {} maps", stages.len(), stages.len() - 1),
            });
        }
        for (i, f) in maps.iter().enumerate() {
            if f.source() != &stages[i] || f.target() != &stages[i + 1] {
                return Err(TowerError::Mismatch { index: i, reason: "source or target differs from the stage".into() });
            }
            if let Some((a, b)) = f.multiplicativity_failure() {
                return Err(AlgebraError::NotMultiplicative(a, b).into());
            }
            if !f.is_injective() {
                return Err(TowerError::NotInjective(i));
            }
        }
        Ok(DirectSystem { stages, maps })
    }

    /// `len` copies of `a` joined by identities.
    pub fn constant(a: &Algebra, len: usize) -> Self {
        DirectSystem { stages: vec![a.clone(); len], maps: vec![AlgebraHom::identity(a); len.saturating_sub(1)] }
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stages(&self) -> &[Algebra] {
        &self.stages
    }

    pub fn maps(&self) -> &[AlgebraHom] {
        &self.maps
    }

    pub fn last(&self) -> &Algebra {
        self.stages.last().expect("nonempty")
    }

    /// Composite `stages[from] -> stages[to]`, `from <= to`.
    pub fn composite(&self, from: usize, to: usize) -> AlgebraHom {
        assert!(from <= to && to < self.len());
        let mut f = AlgebraHom::identity(&self.stages[from]);
        for g in &self.maps[from..to] {
            f = f.then(g).expect("consecutive maps compose");
        }
        f
    }
}

/// Hecke algebras of a decreasing chain `K₁ ⊇ … ⊇ {e}` with their inclusions.
pub fn hecke_tower(g: &FiniteGroup, chain: &[Subgroup]) -> Result<DirectSystem, TowerError> {
    let last = chain.last().ok_or(TowerError::Empty)?;
    if last.order() != 1 {
        return Err(TowerError::NotAChain("last subgroup is not trivial".into()));
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[1].is_subset_of(&w[0]) {
            return Err(TowerError::NotAChain(format!("subgroup {} is not contained in subgroup {}", i + 1, i)));
        }
    }
    for k in chain {
        g.subgroup(k.elements())?;
    }
    if chain.len() == 1 {
        return Ok(DirectSystem::new(vec![hecke_algebra(g, last)?.algebra], Vec::new())?);
    }
    let links: Vec<_> = chain.windows(2).map(|w| hecke_inclusion(g, &w[0], &w[1])).collect::<Result<_, _>>()?;
    let mut stages = vec![links[0].0.algebra.clone()];
    let mut maps = Vec::new();
    for (_, small, f) in links {
        stages.push(small.algebra);
        maps.push(f);
    }
    DirectSystem::new(stages, maps)
}

/// Stage reports plus, per stage and degree, the matrix of the induced map
/// into the final stage's homology (columns: stage representatives; rows:
/// final representatives).
#[derive(Debug, Clone)]
pub struct StageHomology {
    pub theory: Theory,
    pub n_max: usize,
    pub reports: Vec<HomologyReport>,
    pub to_final: Vec<Vec<SparseMatrix>>,
}

/// Per-stage engines for one theory, with homology maps between stages.
struct Stages {
    theory: Theory,
    n_max: usize,
    engines: Vec<HomologyEngine>,
}

impl Stages {
    fn new(ds: &DirectSystem, theory: Theory, n_max: usize) -> Result<Self, TowerError> {
        if theory == Theory::HP {
            return Err(TowerError::UnsupportedTheory(theory));
        }
        let engines =
            ds.stages.par_iter().map(|a| HomologyEngine::new(a, n_max)).collect::<Result<Vec<_>, ComplexError>>()?;
        Ok(Stages { theory, n_max, engines })
    }

    fn chain_map(&self, f: &AlgebraHom) -> Result<Vec<SparseMatrix>, ComplexError> {
        match self.theory {
            Theory::HH => induced_chain_map(f, self.n_max),
            _ => induced_tot_map(f, self.n_max),
        }
    }

    /// Matrices of `H_n(stage from) -> H_n(stage to)` for `n <= n_max`.
    fn homology_map(&self, ds: &DirectSystem, from: usize, to: usize) -> Result<Vec<SparseMatrix>, TowerError> {
        let chain = self.chain_map(&ds.composite(from, to))?;
        let (src, dst) = (self.engines[from].complex(self.theory), self.engines[to].complex(self.theory));
        Ok((0..=self.n_max)
            .into_par_iter()
            .map(|n| {
                let (bs, bt) = (src.basis(n), dst.basis(n));
                let cols = bs
                    .representatives()
                    .iter()
                    .map(|z| {
                        let image = chain[n].mul_sparse_vec(z);
                        let coords = bt.coordinates(&image).expect("chain maps send cycles to cycles");
                        coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect();
                SparseMatrix::from_columns(bt.dim(), cols)
            })
            .collect())
    }
}

pub fn homology_of_stages(ds: &DirectSystem, theory: Theory, n_max: usize) -> Result<StageHomology, TowerError> {
    let st = Stages::new(ds, theory, n_max)?;
    let last = ds.len() - 1;
    let reports = st.engines.iter().map(|e| e.report(theory, true)).collect::<Result<_, _>>()?;
    let to_final = (0..ds.len()).map(|a| st.homology_map(ds, a, last)).collect::<Result<_, _>>()?;
    Ok(StageHomology { theory, n_max, reports, to_final })
}

/// Induced map `H_n(stage from) -> H_n(stage to)` in representative bases.
pub fn induced_homology_map(
    ds: &DirectSystem,
    theory: Theory,
    n_max: usize,
    from: usize,
    to: usize,
) -> Result<Vec<SparseMatrix>, TowerError> {
    Stages::new(ds, theory, n_max)?.homology_map(ds, from, to)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeContinuity {
    pub degree: usize,
    /// `dim image(H(A_α) → H(A_m))` for each α.
    pub image_dims: Vec<usize>,
    /// Dimension of the sum of the images of stages `1..=α`.
    pub cumulative_dims: Vec<usize>,
    pub final_dim: usize,
    pub monotone: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub theory: Theory,
    pub n_max: usize,
    pub stage_dims: Vec<Vec<usize>>,
    pub degrees: Vec<DegreeContinuity>,
}

impl ContinuityReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| d.pass && d.monotone)
    }
}

fn filtration(degree: usize, maps: &[&SparseMatrix], final_dim: usize) -> DegreeContinuity {
    let image_dims: Vec<usize> = maps.iter().map(|m| rank(m)).collect();
    let mut cols = Vec::new();
    let cumulative_dims: Vec<usize> = maps
        .iter()
        .map(|m| {
            cols.extend(m.columns().iter().cloned());
            rank(&SparseMatrix::from_columns(final_dim, cols.clone()))
        })
        .collect();
    let monotone = image_dims.windows(2).all(|w| w[0] <= w[1]) && cumulative_dims.windows(2).all(|w| w[0] <= w[1]);
    let pass = cumulative_dims.last().copied() == Some(final_dim);
    DegreeContinuity { degree, image_dims, cumulative_dims, final_dim, monotone, pass }
}

fn continuity_from(sh: &StageHomology) -> ContinuityReport {
    let stage_dims: Vec<Vec<usize>> = sh.reports.iter().map(|r| r.dims.clone()).collect();
    let last = stage_dims.len() - 1;
    let degrees = (0..=sh.n_max)
        .map(|n| {
            let maps: Vec<&SparseMatrix> = sh.to_final.iter().map(|per| &per[n]).collect();
            filtration(n, &maps, stage_dims[last][n])
        })
        .collect();
    ContinuityReport { theory: sh.theory, n_max: sh.n_max, stage_dims, degrees }
}

pub fn continuity_check(ds: &DirectSystem, theory: Theory, n_max: usize) -> Result<ContinuityReport, TowerError> {
    Ok(continuity_from(&homology_of_stages(ds, theory, n_max)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HpContinuityReport {
    pub n_max: usize,
    /// Common vanishing bound: the largest of the stages' least bounds.
    pub common_n: usize,
    pub stage_n: Vec<usize>,
    pub even_degree: usize,
    pub odd_degree: usize,
    pub hp_even: Vec<usize>,
    pub hp_odd: Vec<usize>,
    pub even_filtration: DegreeContinuity,
    pub odd_filtration: DegreeContinuity,
    pub pass: bool,
}

/// HP of every stage through a common stabilization certificate, with the
/// image filtration checked at the stabilized cyclic degrees.
pub fn hp_continuity_check(ds: &DirectSystem, n_max: usize) -> Result<HpContinuityReport, TowerError> {
    let st = Stages::new(ds, Theory::HC, n_max)?;
    let mut stage_n = Vec::with_capacity(ds.len());
    for (stage, e) in st.engines.iter().enumerate() {
        match e.certificate() {
            Some(c) => stage_n.push(c.n),
            None => return Err(TowerError::CertMissing { stage, n_max, hochschild: e.hochschild_dims() }),
        }
    }
    let common_n = *stage_n.iter().max().expect("nonempty");
    let reports: Vec<HomologyReport> = st
        .engines
        .iter()
        .map(|e| {
            let mut cert = certificate_from_dims(&e.hochschild_dims(), n_max).expect("checked above");
            cert.verified_degrees.retain(|&d| d > common_n);
            cert.n = common_n;
            e.periodic_with(cert)
        })
        .collect::<Result<_, _>>()?;
    let evidence = reports[0].certificate.as_ref().expect("HP carries evidence");
    let (even_degree, odd_degree) = (evidence.even_degree, evidence.odd_degree);
    let last = ds.len() - 1;
    let to_final: Vec<Vec<SparseMatrix>> =
        (0..ds.len()).map(|a| st.homology_map(ds, a, last)).collect::<Result<_, _>>()?;
    let final_dims = &reports[last].certificate.as_ref().expect("HP carries evidence").cyclic;
    let at = |d: usize| {
        let maps: Vec<&SparseMatrix> = to_final.iter().map(|per| &per[d]).collect();
        filtration(d, &maps, final_dims[d])
    };
    let (even_filtration, odd_filtration) = (at(even_degree), at(odd_degree));
    let pass = even_filtration.pass && odd_filtration.pass && even_filtration.monotone && odd_filtration.monotone;
    Ok(HpContinuityReport {
        n_max,
        common_n,
        stage_n,
        even_degree,
        odd_degree,
        hp_even: reports.iter().map(|r| r.dims[0]).collect(),
        hp_odd: reports.iter().map(|r| r.dims[1]).collect(),
        even_filtration,
        odd_filtration,
        pass,
    })
}
