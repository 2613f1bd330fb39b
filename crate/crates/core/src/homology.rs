//! Hochschild, cyclic and (certified) periodic cyclic homology.
//!
//! HH is the homology of `(Ω̄Ã, b̃)`; HC that of the total complex
//! `Tot_n = ⊕_{p≥0} Ω̄^{n-2p}` with differential `b̃ + B̃`. Components of a
//! Tot chain are stored in increasing Ω̄-degree. Every entry point builds one
//! guard degree above the highest degree it reports.
//!
//! HP is never computed from a truncated 2-periodic complex. It is reported
//! only when HH vanishes above some `N` within the truncation, as the
//! stabilized value of HC.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{matrix_algebra_capped, Algebra, AlgebraHom, DEFAULT_DIM_CAP};
use crate::linalg::{axpy, ranks, ColumnEchelon, Rational, SparseMatrix, SparseVec};
use crate::mixed::{build_mixed_complex_capped, induced_chain_map, ComplexError, MixedComplex, DEFAULT_MAX_CHAIN_DIM};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("chain of degree {degree} is not a cycle")]
    NotACycle { degree: usize },
    #[error("odd chain does not bound the truncated periodic cycle")]
    NotABoundingChain,
    #[error("chain has the wrong shape for degree {degree}")]
    ShapeMismatch { degree: usize },
    #[error("degree {degree} exceeds the truncation {n_max}")]
    DegreeOutOfRange { degree: usize, n_max: usize },
    #[error("no stabilization certificate within degree {n_max}")]
    NoCertificate { n_max: usize, hochschild: Vec<usize> },
    #[error("stabilized cyclic homology disagrees: HC_{low} = {low_dim}, HC_{high} = {high_dim}")]
    StabilizationMismatch { low: usize, low_dim: usize, high: usize, high_dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theory {
    HH,
    HC,
    HP,
}

/// Evidence that HH vanishes in degrees `n + 1 ..= n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationCertificate {
    pub n: usize,
    pub n_max: usize,
    pub verified_degrees: Vec<usize>,
}

/// One checked equality `dim HC_low = dim HC_high`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizedEquality {
    pub low: usize,
    pub high: usize,
    pub dim: usize,
}

/// Everything behind a reported HP value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicEvidence {
    pub certificate: StabilizationCertificate,
    /// The cyclic degrees `(2n, 2n + 1)` read off.
    pub even_degree: usize,
    pub odd_degree: usize,
    pub equalities: Vec<StabilizedEquality>,
    pub hochschild: Vec<usize>,
    pub cyclic: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub theory: Theory,
    pub n_max: usize,
    /// Per-degree dimensions; for HP, `[even, odd]`.
    pub dims: Vec<usize>,
    /// Cycle representatives per degree, as flat chain vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<SparseVec>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PeriodicEvidence>,
}

/// A chain complex given by its differentials `d[n]: C_n -> C_{n-1}`, with
/// `d[0]` the map to the zero space.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    d: Vec<SparseMatrix>,
    ranks: OnceLock<Vec<usize>>,
    bases: Vec<OnceLock<HomologyBasis>>,
}

impl ChainComplex {
    pub fn new(d: Vec<SparseMatrix>) -> Self {
        let bases = (1..d.len()).map(|_| OnceLock::new()).collect();
        ChainComplex { d, ranks: OnceLock::new(), bases }
    }

    /// Highest degree whose homology is determined (one below the top).
    pub fn top(&self) -> usize {
        self.d.len() - 2
    }

    pub fn dim(&self, n: usize) -> usize {
        self.d[n].ncols()
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.d[n]
    }

    fn ranks(&self) -> &[usize] {
        self.ranks.get_or_init(|| {
            let refs: Vec<&SparseMatrix> = self.d.iter().collect();
            ranks(&refs)
        })
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..=self.top()).map(|n| self.dim(n) - r[n] - r[n + 1]).collect()
    }

    pub fn is_cycle(&self, n: usize, v: &SparseVec) -> bool {
        self.d[n].mul_sparse_vec(v).is_empty()
    }

    /// Homology basis in degree `n` (computed once).
    pub fn basis(&self, n: usize) -> &HomologyBasis {
        self.bases[n].get_or_init(|| HomologyBasis::new(&self.d[n + 1], &self.d[n]))
    }
}

/// Representatives of a homology group together with a solver expressing any
/// cycle in terms of them.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    representatives: Vec<SparseVec>,
    /// Elimination of `[d_in | representatives]`, tracking the latter.
    solver: ColumnEchelon,
}

impl HomologyBasis {
    /// Representatives are the kernel vectors of `d_out` that are pivots of
    /// `[d_in | ker d_out]`, in order.
    pub fn new(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Self {
        let kernel = ColumnEchelon::new(d_out).kernel().to_vec();
        let mut cols: Vec<SparseVec> = d_in.columns().to_vec();
        let boundary_count = cols.len();
        cols.extend(kernel.iter().cloned());
        let stacked = SparseMatrix::from_columns(d_out.ncols(), cols);
        let rep_columns: Vec<usize> =
            ColumnEchelon::rank_only(&stacked).pivot_columns().into_iter().filter(|&j| j >= boundary_count).collect();
        let representatives: Vec<SparseVec> = rep_columns.iter().map(|&j| kernel[j - boundary_count].clone()).collect();
        let mut cols = d_in.columns().to_vec();
        cols.extend(representatives.iter().cloned());
        let solver = ColumnEchelon::tracking_from(&SparseMatrix::from_columns(d_out.ncols(), cols), boundary_count);
        HomologyBasis { representatives, solver }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Class of a cycle in the representative basis; `None` if `z` is not in
    /// the span of cycles considered (not a cycle).
    pub fn coordinates(&self, z: &SparseVec) -> Option<Vec<Rational>> {
        let x = self.solver.solve_sparse(z)?;
        let mut out = vec![Rational::ZERO; self.dim()];
        for (i, c) in x {
            out[i] = c;
        }
        Some(out)
    }

    /// True when `z` is a boundary.
    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        self.coordinates(z).is_some_and(|c| c.iter().all(Rational::is_zero))
    }
}

/// Ω̄-degrees present in `Tot_n`, increasing.
pub fn tot_degrees(n: usize) -> Vec<usize> {
    (n % 2..=n).step_by(2).collect()
}

/// Block sizes of `Tot_n`.
fn tot_parts(mc: &MixedComplex, n: usize) -> Vec<usize> {
    tot_degrees(n).into_iter().map(|m| mc.dim(m)).collect()
}

/// `b̃ + B̃: Tot_n -> Tot_{n-1}`, for `n <= mc.n_max()`.
pub fn tot_differential(mc: &MixedComplex, n: usize) -> SparseMatrix {
    let src = tot_degrees(n);
    let src_parts = tot_parts(mc, n);
    if n == 0 {
        return SparseMatrix::zeros(0, src_parts.iter().sum());
    }
    let dst = tot_degrees(n - 1);
    let dst_parts = tot_parts(mc, n - 1);
    let mut blocks: Vec<Vec<Option<&SparseMatrix>>> = vec![vec![None; src.len()]; dst.len()];
    for (j, &m) in src.iter().enumerate() {
        if m >= 1 {
            let i = dst.iter().position(|&d| d == m - 1).expect("m - 1 in Tot_{n-1}");
            blocks[i][j] = Some(mc.b_tilde(m));
        }
        if m + 1 < n {
            let i = dst.iter().position(|&d| d == m + 1).expect("m + 1 in Tot_{n-1}");
            blocks[i][j] = mc.big_b_tilde(m);
        }
    }
    SparseMatrix::from_blocks(&dst_parts, &src_parts, &blocks).expect("block shapes agree")
}

/// A chain in `Tot_n`, one component per Ω̄-degree `n mod 2, …, n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotChain {
    pub degree: usize,
    pub components: Vec<SparseVec>,
}

impl TotChain {
    pub fn zero(degree: usize) -> Self {
        TotChain { degree, components: vec![Vec::new(); degree / 2 + 1] }
    }

    /// Component in Ω̄-degree `m`.
    pub fn component(&self, m: usize) -> &SparseVec {
        &self.components[(m - self.degree % 2) / 2]
    }

    pub fn flatten(&self, mc: &MixedComplex) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for (m, part) in tot_degrees(self.degree).into_iter().zip(&self.components) {
            out.extend(part.iter().map(|(i, c)| (i + offset, c.clone())));
            offset += mc.dim(m);
        }
        out
    }

    pub fn from_flat(mc: &MixedComplex, degree: usize, v: &SparseVec) -> Self {
        let degrees = tot_degrees(degree);
        let mut components = vec![Vec::new(); degrees.len()];
        let mut bounds = Vec::with_capacity(degrees.len());
        let mut offset = 0;
        for &m in &degrees {
            bounds.push(offset);
            offset += mc.dim(m);
        }
        for (i, c) in v {
            let k = bounds.partition_point(|&b| b <= *i) - 1;
            components[k].push((i - bounds[k], c.clone()));
        }
        TotChain { degree, components }
    }

    fn check_shape(&self, mc: &MixedComplex) -> Result<(), HomologyError> {
        let degrees = tot_degrees(self.degree);
        let ok = self.components.len() == degrees.len()
            && degrees.iter().zip(&self.components).all(|(&m, c)| c.iter().all(|(i, _)| *i < mc.dim(m)));
        if ok {
            Ok(())
        } else {
            Err(HomologyError::ShapeMismatch { degree: self.degree })
        }
    }
}

/// Mixed complex plus lazily built HH and Tot complexes.
#[derive(Debug)]
pub struct HomologyEngine {
    mc: MixedComplex,
    hochschild: ChainComplex,
    tot: OnceLock<ChainComplex>,
}

impl HomologyEngine {
    /// Engine reporting degrees `0..=n_max` (builds Ω̄ up to `n_max + 1`).
    pub fn new(a: &Algebra, n_max: usize) -> Result<Self, ComplexError> {
        Self::with_cap(a, n_max, DEFAULT_MAX_CHAIN_DIM)
    }

    pub fn with_cap(a: &Algebra, n_max: usize, max_chain_dim: usize) -> Result<Self, ComplexError> {
        Ok(Self::from_complex(build_mixed_complex_capped(a, n_max + 1, max_chain_dim)?))
    }

    /// Uses a prebuilt complex; reported degrees go up to `mc.n_max() - 1`.
    pub fn from_complex(mc: MixedComplex) -> Self {
        assert!(mc.n_max() >= 1, "a guard degree is required");
        let d = (0..=mc.n_max()).map(|n| mc.b_tilde(n).clone()).collect();
        HomologyEngine { mc, hochschild: ChainComplex::new(d), tot: OnceLock::new() }
    }

    pub fn n_max(&self) -> usize {
        self.mc.n_max() - 1
    }

    pub fn mixed_complex(&self) -> &MixedComplex {
        &self.mc
    }

    pub fn hochschild_complex(&self) -> &ChainComplex {
        &self.hochschild
    }

    pub fn tot_complex(&self) -> &ChainComplex {
        self.tot.get_or_init(|| {
            let d = (0..=self.mc.n_max()).into_par_iter().map(|n| tot_differential(&self.mc, n)).collect();
            ChainComplex::new(d)
        })
    }

    pub fn complex(&self, theory: Theory) -> &ChainComplex {
        match theory {
            Theory::HH => self.hochschild_complex(),
            Theory::HC => self.tot_complex(),
            Theory::HP => panic!("HP has no underlying truncated complex"),
        }
    }

    pub fn hochschild_dims(&self) -> Vec<usize> {
        self.hochschild.homology_dims()
    }

    pub fn cyclic_dims(&self) -> Vec<usize> {
        self.tot_complex().homology_dims()
    }

    pub fn report(&self, theory: Theory, with_representatives: bool) -> Result<HomologyReport, HomologyError> {
        if theory == Theory::HP {
            return self.periodic();
        }
        let complex = self.complex(theory);
        let representatives = with_representatives.then(|| {
            (0..=self.n_max()).into_par_iter().map(|n| complex.basis(n).representatives().to_vec()).collect()
        });
        Ok(HomologyReport { theory, n_max: self.n_max(), dims: complex.homology_dims(), representatives, certificate: None })
    }

    pub fn certificate(&self) -> Option<StabilizationCertificate> {
        certificate_from_dims(&self.hochschild_dims(), self.n_max())
    }

    /// HP through the stabilization certificate, or `NoCertificate`.
    pub fn periodic(&self) -> Result<HomologyReport, HomologyError> {
        let n_max = self.n_max();
        let hochschild = self.hochschild_dims();
        let no_cert = || HomologyError::NoCertificate { n_max, hochschild: hochschild.clone() };
        let certificate = certificate_from_dims(&hochschild, n_max).ok_or_else(no_cert)?;
        self.periodic_with(certificate)
    }

    /// HP read off at the first even/odd pair above `certificate.n`, which
    /// may be any valid vanishing bound (not necessarily the least).
    pub fn periodic_with(&self, certificate: StabilizationCertificate) -> Result<HomologyReport, HomologyError> {
        let n_max = self.n_max();
        let hochschild = self.hochschild_dims();
        let valid = certificate.n_max == n_max && (certificate.n + 1..=n_max).all(|n| hochschild[n] == 0);
        let no_cert = || HomologyError::NoCertificate { n_max, hochschild: hochschild.clone() };
        if !valid {
            return Err(no_cert());
        }
        let even_degree = 2 * (certificate.n / 2 + 1);
        let odd_degree = even_degree + 1;
        if odd_degree > n_max {
            return Err(no_cert());
        }
        let cyclic = self.cyclic_dims();
        let mut equalities = Vec::new();
        for low in [even_degree, odd_degree] {
            let high = low + 2;
            if high <= n_max {
                if cyclic[low] != cyclic[high] {
                    return Err(HomologyError::StabilizationMismatch {
                        low,
                        low_dim: cyclic[low],
                        high,
                        high_dim: cyclic[high],
                    });
                }
                equalities.push(StabilizedEquality { low, high, dim: cyclic[low] });
            }
        }
        let dims = vec![cyclic[even_degree], cyclic[odd_degree]];
        Ok(HomologyReport {
            theory: Theory::HP,
            n_max,
            dims,
            representatives: None,
            certificate: Some(PeriodicEvidence { certificate, even_degree, odd_degree, equalities, hochschild, cyclic }),
        })
    }
}

/// Least `N <= n_max - 2` with `HH_n = 0` for `N < n <= n_max`.
pub fn certificate_from_dims(hochschild: &[usize], n_max: usize) -> Option<StabilizationCertificate> {
    let last_nonzero = (1..=n_max).rev().find(|&n| hochschild[n] != 0).unwrap_or(0);
    (n_max >= 2 && last_nonzero <= n_max - 2).then(|| StabilizationCertificate {
        n: last_nonzero,
        n_max,
        verified_degrees: (last_nonzero + 1..=n_max).collect(),
    })
}

pub fn hochschild_homology(a: &Algebra, n_max: usize) -> Result<HomologyReport, HomologyError> {
    HomologyEngine::new(a, n_max)?.report(Theory::HH, false)
}

pub fn cyclic_homology(a: &Algebra, n_max: usize) -> Result<HomologyReport, HomologyError> {
    HomologyEngine::new(a, n_max)?.report(Theory::HC, false)
}

pub fn stabilization_certificate(a: &Algebra, n_max: usize) -> Result<Option<StabilizationCertificate>, HomologyError> {
    Ok(HomologyEngine::new(a, n_max)?.certificate())
}

pub fn periodic_via_stabilization(a: &Algebra, n_max: usize) -> Result<HomologyReport, HomologyError> {
    HomologyEngine::new(a, n_max)?.periodic()
}

/// Where an extension procedure got stuck: no chain in `degree` has the
/// required boundary. `witness` is a `b̃`-cycle in `witness_degree` that is not a
/// boundary, so `HH_{witness_degree} ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub degree: usize,
    pub witness_degree: usize,
    pub witness: SparseVec,
}

/// A truncated even periodic cycle `(f₀, f₂, …, f_{2m})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenPeriodicChain {
    pub components: Vec<SparseVec>,
}

impl EvenPeriodicChain {
    pub fn top_degree(&self) -> usize {
        2 * (self.components.len() - 1)
    }

    /// Projection to `Tot_{2n}`.
    pub fn truncate(&self, n: usize) -> TotChain {
        TotChain { degree: 2 * n, components: self.components[..=n].to_vec() }
    }
}

/// A truncated odd chain `(h₁, h₃, …, h_{2m+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPeriodicChain {
    pub components: Vec<SparseVec>,
}

impl OddPeriodicChain {
    pub fn top_degree(&self) -> usize {
        2 * self.components.len() - 1
    }

    pub fn truncate(&self, n: usize) -> TotChain {
        TotChain { degree: 2 * n + 1, components: self.components[..=n].to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension<T> {
    Complete(T),
    Obstructed { obstruction: Obstruction, partial: T },
}

impl<T> Extension<T> {
    pub fn complete(self) -> Option<T> {
        match self {
            Extension::Complete(t) => Some(t),
            Extension::Obstructed { .. } => None,
        }
    }
}

/// Cached solvers for `b̃ₙ x = y`.
#[derive(Debug)]
pub struct Lifter<'a> {
    mc: &'a MixedComplex,
    solvers: Vec<OnceLock<ColumnEchelon>>,
}

impl<'a> Lifter<'a> {
    pub fn new(mc: &'a MixedComplex) -> Self {
        Lifter { mc, solvers: (0..=mc.n_max()).map(|_| OnceLock::new()).collect() }
    }

    fn solve(&self, n: usize, rhs: &SparseVec) -> Option<SparseVec> {
        self.solvers[n].get_or_init(|| ColumnEchelon::new(self.mc.b_tilde(n))).solve_sparse(rhs)
    }

    fn big_b(&self, m: usize, v: &SparseVec) -> SparseVec {
        self.mc.big_b_tilde(m).expect("B̃ within truncation").mul_sparse_vec(v)
    }

    fn tot_image(&self, c: &TotChain) -> SparseVec {
        tot_differential(self.mc, c.degree).mul_sparse_vec(&c.flatten(self.mc))
    }

    /// Extends a `Tot_{2n}` cycle by solving `b̃ f_{2k+2} = -B̃ f_{2k}` up to
    /// the largest even degree in the truncation.
    pub fn lift_to_periodic(&self, c: &TotChain) -> Result<Extension<EvenPeriodicChain>, HomologyError> {
        let n_max = self.mc.n_max();
        if c.degree % 2 != 0 {
            return Err(HomologyError::ShapeMismatch { degree: c.degree });
        }
        if c.degree > n_max {
            return Err(HomologyError::DegreeOutOfRange { degree: c.degree, n_max });
        }
        c.check_shape(self.mc)?;
        if !self.tot_image(c).is_empty() {
            return Err(HomologyError::NotACycle { degree: c.degree });
        }
        let mut f = c.components.clone();
        let mut k = c.degree;
        while k + 2 <= n_max {
            let rhs: SparseVec = self.big_b(k, f.last().expect("nonempty")).into_iter().map(|(i, v)| (i, -v)).collect();
            match self.solve(k + 2, &rhs) {
                Some(next) => f.push(next),
                None => {
                    return Ok(Extension::Obstructed {
                        obstruction: Obstruction { degree: k + 2, witness_degree: k + 1, witness: rhs },
                        partial: EvenPeriodicChain { components: f },
                    })
                }
            }
            k += 2;
        }
        Ok(Extension::Complete(EvenPeriodicChain { components: f }))
    }

    /// Given `(b̃+B̃)h = T(F)` in `Tot_{2n}`, extends `h` by solving
    /// `b̃ h_{2k+3} = f_{2k+2} - B̃ h_{2k+1}` while `F` and the truncation allow.
    pub fn extend_bounding_chain(
        &self,
        f: &EvenPeriodicChain,
        h: &TotChain,
    ) -> Result<Extension<OddPeriodicChain>, HomologyError> {
        let n_max = self.mc.n_max();
        if h.degree % 2 != 1 {
            return Err(HomologyError::ShapeMismatch { degree: h.degree });
        }
        if h.degree > n_max {
            return Err(HomologyError::DegreeOutOfRange { degree: h.degree, n_max });
        }
        h.check_shape(self.mc)?;
        let n = h.degree / 2;
        if f.components.len() <= n {
            return Err(HomologyError::NotABoundingChain);
        }
        if self.tot_image(h) != f.truncate(n).flatten(self.mc) {
            return Err(HomologyError::NotABoundingChain);
        }
        let mut out = h.components.clone();
        let mut k = h.degree;
        while k + 2 <= n_max && (k + 1) / 2 < f.components.len() {
            let target = &f.components[(k + 1) / 2];
            let rhs = axpy(target, &-Rational::ONE, &self.big_b(k, out.last().expect("nonempty")));
            match self.solve(k + 2, &rhs) {
                Some(next) => out.push(next),
                None => {
                    return Ok(Extension::Obstructed {
                        obstruction: Obstruction { degree: k + 2, witness_degree: k + 1, witness: rhs },
                        partial: OddPeriodicChain { components: out },
                    })
                }
            }
            k += 2;
        }
        Ok(Extension::Complete(OddPeriodicChain { components: out }))
    }
}

pub fn lift_to_periodic(c: &TotChain, mc: &MixedComplex) -> Result<Extension<EvenPeriodicChain>, HomologyError> {
    Lifter::new(mc).lift_to_periodic(c)
}

pub fn extend_bounding_chain(
    f: &EvenPeriodicChain,
    h: &TotChain,
    mc: &MixedComplex,
) -> Result<Extension<OddPeriodicChain>, HomologyError> {
    Lifter::new(mc).extend_bounding_chain(f, h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaReport {
    pub k: usize,
    pub n_max: usize,
    pub algebra: Vec<usize>,
    pub matrix_algebra: Vec<usize>,
    pub equal: Vec<bool>,
}

impl MoritaReport {
    pub fn all_equal(&self) -> bool {
        self.equal.iter().all(|&e| e)
    }
}

/// Degree-wise comparison of `HH(A)` and `HH(M_k(A))`.
pub fn morita_compare(a: &Algebra, k: usize, n_max: usize) -> Result<MoritaReport, HomologyError> {
    let mk = matrix_algebra_capped(a, k, DEFAULT_DIM_CAP).map_err(ComplexError::from)?;
    let (left, right) = rayon::join(|| HomologyEngine::new(a, n_max), || HomologyEngine::new(&mk, n_max));
    let (left, right) = (left?.hochschild_dims(), right?.hochschild_dims());
    let equal = left.iter().zip(&right).map(|(x, y)| x == y).collect();
    Ok(MoritaReport { k, n_max, algebra: left, matrix_algebra: right, equal })
}

/// Chain maps on `Tot_n`, `n <= n_max`, induced by an algebra map.
pub fn induced_tot_map(f: &AlgebraHom, n_max: usize) -> Result<Vec<SparseMatrix>, ComplexError> {
    let omega = induced_chain_map(f, n_max)?;
    Ok((0..=n_max)
        .map(|n| {
            let degrees = tot_degrees(n);
            let rows: Vec<usize> = degrees.iter().map(|&m| omega[m].nrows()).collect();
            let cols: Vec<usize> = degrees.iter().map(|&m| omega[m].ncols()).collect();
            let blocks: Vec<Vec<Option<&SparseMatrix>>> = (0..degrees.len())
                .map(|i| (0..degrees.len()).map(|j| (i == j).then(|| &omega[degrees[i]])).collect())
                .collect();
            SparseMatrix::from_blocks(&rows, &cols, &blocks).expect("block shapes agree")
        })
        .collect())
}
