//! Brute-force reference for the closed-form witnesses.
//!
//! States are dense `2^M` vectors in lexicographic order with qubit 0 as the
//! most significant bit, so qubit `k` is the k-th selected mode. Nothing here
//! uses the `P`/`Q` algebra of the witness module: states are built by
//! Kronecker products, operators by the Mermin-Klyshko recursion, and
//! concurrences from reduced density matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::AmplitudeSet;
use crate::witnesses::QubitContext;

pub const MAX_QUBITS: usize = 12;

/// Smallest `M_k` for which the orthogonal encoding of mode k is accepted.
pub const ENCODING_CUTOFF: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_size(m: usize) -> Result<()> {
    if m == 0 || m > MAX_QUBITS {
        return Err(Error::UnsupportedSize(format!("{m} qubits (supported: 1..={MAX_QUBITS})")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    m_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitState {
    /// Wraps a normalized amplitude vector of length `2^M`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::UnsupportedSize(format!("length {len} is not 2^M with M ≥ 1")));
        }
        let m_qubits = len.trailing_zeros() as usize;
        check_size(m_qubits)?;
        let state = QubitState { m_qubits, amplitudes };
        if (state.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("state norm² = {} is not 1", state.norm_sqr())));
        }
        Ok(state)
    }

    /// Normalizes an arbitrary nonzero vector of length `2^M`.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::DegenerateState);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(amplitudes)
    }

    pub fn basis(m_qubits: usize, index: usize) -> Result<Self> {
        check_size(m_qubits)?;
        let mut v = vec![ZERO; 1 << m_qubits];
        v[index] = ONE;
        Self::new(v)
    }

    pub fn m_qubits(&self) -> usize {
        self.m_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QubitState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &QubitState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let z = Complex64::from_polar(1.0, phase);
        QubitState { m_qubits: self.m_qubits, amplitudes: self.amplitudes.iter().map(|a| a * z).collect() }
    }

    fn as_column(&self) -> DMatrix<Complex64> {
        DMatrix::from_column_slice(self.dim(), 1, &self.amplitudes)
    }
}

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Unnormalized `|0…0⟩ + e^{iθ} ⊗_k (p_k|0⟩ + M_k|1⟩)` over the modes in `ctx`.
pub fn encode_unnormalized(aset: &AmplitudeSet, theta: f64, ctx: &QubitContext) -> Result<Vec<Complex64>> {
    if aset.len() < ctx.mode_range().end {
        return Err(Error::DimensionMismatch { expected: ctx.mode_range().end, got: aset.len() });
    }
    let m = ctx.m_qubits();
    check_size(m)?;
    let mut second = vec![Complex64::from_polar(1.0, theta)];
    for k in ctx.mode_range() {
        let m_k = aset.m_factors[k];
        if m_k < ENCODING_CUTOFF {
            return Err(Error::DegenerateEncoding { mode: k, m_factor: m_k });
        }
        second = kron_vec(&second, &[Complex64::new(aset.overlaps[k], 0.0), Complex64::new(m_k, 0.0)]);
    }
    second[0] += ONE;
    Ok(second)
}

/// The encoded cat state as a normalized M-qubit vector.
pub fn encode_qubit_state(aset: &AmplitudeSet, theta: f64, ctx: &QubitContext) -> Result<QubitState> {
    QubitState::normalized(encode_unnormalized(aset, theta, ctx)?)
}

pub fn ghz_state(m: usize, gamma: f64) -> Result<QubitState> {
    check_size(m)?;
    let mut v = vec![ZERO; 1 << m];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    v[0] = Complex64::new(s, 0.0);
    v[(1 << m) - 1] = Complex64::from_polar(s, gamma);
    QubitState::new(v)
}

/// Symmetric single-excitation state `(|10…0⟩ + … + |0…01⟩)/√M`.
pub fn w_state(m: usize) -> Result<QubitState> {
    check_size(m)?;
    let mut v = vec![ZERO; 1 << m];
    for q in 0..m {
        v[1 << q] = ONE;
    }
    QubitState::normalized(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    m_qubits: usize,
    entries: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || !r.is_power_of_two() || r < 2 {
            return Err(Error::UnsupportedSize(format!("{r}×{c} is not a 2^M square matrix")));
        }
        Ok(DenseOperator { m_qubits: r.trailing_zeros() as usize, entries })
    }

    pub fn identity(m: usize) -> Result<Self> {
        check_size(m)?;
        Self::new(DMatrix::identity(1 << m, 1 << m))
    }

    pub fn m_qubits(&self) -> usize {
        self.m_qubits
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Largest `|A − A†|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.entries - self.entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        (&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn pauli_x() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

fn pauli_y() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

/// `σ_+ = |0⟩⟨1|`
fn sigma_plus() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])
}

fn kron_power(a: &DMatrix<Complex64>, m: usize) -> DMatrix<Complex64> {
    (1..m).fold(a.clone(), |acc, _| a.kronecker(&acc))
}

/// `(𝓑_m, 𝓑'_m)` from the Mermin-Klyshko recursion with `A = σ_x`, `A' = σ_y`.
pub fn bell_operator_pair(m: usize) -> Result<(DenseOperator, DenseOperator)> {
    check_size(m)?;
    let two = Complex64::new(2.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let sum = (pauli_x() + pauli_y()) * half;
    let diff = (pauli_x() - pauli_y()) * half;
    let mut b = pauli_x() * two;
    let mut b_prime = pauli_y() * two;
    for _ in 1..m {
        let next = sum.kronecker(&b) + diff.kronecker(&b_prime);
        let next_prime = sum.kronecker(&b_prime) - diff.kronecker(&b);
        b = next;
        b_prime = next_prime;
    }
    Ok((DenseOperator::new(b)?, DenseOperator::new(b_prime)?))
}

pub fn bell_operator(m: usize) -> Result<DenseOperator> {
    Ok(bell_operator_pair(m)?.0)
}

/// `2^{(m+1)/2}(e^{−iβ}σ_+^{⊗m} + e^{iβ}σ_−^{⊗m})`.
pub fn bell_operator_closed_form(m: usize, beta: f64) -> Result<DenseOperator> {
    check_size(m)?;
    let plus = kron_power(&sigma_plus(), m);
    let minus = plus.adjoint();
    let scale = 2f64.powf((m as f64 + 1.0) / 2.0);
    let entries = plus * Complex64::from_polar(scale, -beta) + minus * Complex64::from_polar(scale, beta);
    DenseOperator::new(entries)
}

/// `⟨ψ|A|ψ⟩` for Hermitian `A`.
pub fn expectation(op: &DenseOperator, psi: &QubitState) -> Result<f64> {
    if op.entries.nrows() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: op.entries.nrows(), got: psi.dim() });
    }
    let col = psi.as_column();
    let z = (col.adjoint() * &op.entries * &col)[(0, 0)];
    let scale = op.entries.iter().map(|a| a.norm()).fold(1.0, f64::max);
    if z.im.abs() > 1e-12 * scale {
        return Err(Error::Domain(format!("expectation has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// `|⟨ψ|σ_y^{⊗M}|ψ*⟩|`.
///
/// The value is identically zero for odd M; see [`tangle_oracle`] for the
/// three-qubit residual tangle.
pub fn concurrence_multiqubit(psi: &QubitState) -> f64 {
    let m = psi.m_qubits;
    let all = psi.dim() - 1;
    // σ_y|0⟩ = i|1⟩, σ_y|1⟩ = −i|0⟩
    let phase = |y: usize| {
        let ones = y.count_ones() as usize;
        I.powu((m - ones) as u32) * (-I).powu(ones as u32)
    };
    let a = psi.amplitudes();
    (0..psi.dim())
        .map(|y| a[all ^ y].conj() * phase(y) * a[y].conj())
        .sum::<Complex64>()
        .norm()
}

/// Reduced density matrix on the qubits in `keep` (in that order).
pub fn reduced_density(psi: &QubitState, keep: &[usize]) -> Result<DMatrix<Complex64>> {
    let m = psi.m_qubits;
    if keep.iter().any(|&q| q >= m) || (1..keep.len()).any(|i| keep[..i].contains(&keep[i])) {
        return Err(Error::Domain(format!("invalid qubit selection {keep:?} for {m} qubits")));
    }
    let rest: Vec<usize> = (0..m).filter(|q| !keep.contains(q)).collect();
    let bit = |x: usize, q: usize| (x >> (m - 1 - q)) & 1;
    let pack = |x: usize, qs: &[usize]| qs.iter().fold(0usize, |acc, &q| (acc << 1) | bit(x, q));
    let mut psi_mat = DMatrix::from_element(1 << keep.len(), 1 << rest.len(), ZERO);
    for (x, a) in psi.amplitudes().iter().enumerate() {
        psi_mat[(pack(x, keep), pack(x, &rest))] = *a;
    }
    Ok(&psi_mat * psi_mat.adjoint())
}

fn spin_flip() -> DMatrix<Complex64> {
    pauli_y().kronecker(&pauli_y())
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// The λ_i (square roots of the spectrum of ρρ̃) are obtained as the singular
/// values of `T = Vᵀ (σ_y⊗σ_y) V` for the factorization `ρ = V V†`; the
/// nonzero spectrum of `ρρ̃` equals that of `T†T`. Unlike forming ρρ̃ and
/// taking square roots, this does not amplify rounding in the zero
/// eigenvalues of low-rank ρ.
pub fn wootters_concurrence(rho: &DMatrix<Complex64>) -> Result<f64> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.nrows() });
    }
    let eig = rho.clone().symmetric_eigen();
    let mut v = eig.eigenvectors.clone();
    for (j, mu) in eig.eigenvalues.iter().enumerate() {
        let s = mu.max(0.0).sqrt();
        v.column_mut(j).scale_mut(s);
    }
    let t = v.transpose() * spin_flip() * &v;
    let mut lambdas: Vec<f64> = t.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// The same concurrence through the Hermitian form `√ρ ρ̃ √ρ`.
///
/// Accurate only to about the square root of machine precision when ρ is
/// rank deficient; kept as an independent cross-check.
pub fn wootters_concurrence_hermitian(rho: &DMatrix<Complex64>) -> Result<f64> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.nrows() });
    }
    let eig = rho.clone().symmetric_eigen();
    let root_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|mu| Complex64::new(mu.max(0.0).sqrt(), 0.0)));
    let sqrt_rho = &eig.eigenvectors * root_diag * eig.eigenvectors.adjoint();
    let flip = spin_flip();
    let rho_tilde = &flip * rho.map(|z| z.conj()) * &flip;
    let r = &sqrt_rho * rho_tilde * &sqrt_rho;
    let r = (&r + r.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = r.symmetric_eigenvalues().iter().map(|mu| mu.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Pairwise concurrence `C_ij` of a three-qubit pure state.
pub fn wootters_pairwise(psi: &QubitState, i: usize, j: usize) -> Result<f64> {
    if psi.m_qubits != 3 {
        return Err(Error::UnsupportedSize(format!("pairwise concurrence needs 3 qubits, got {}", psi.m_qubits)));
    }
    if i == j {
        return Err(Error::Domain("pairwise concurrence needs two distinct qubits".into()));
    }
    wootters_concurrence(&reduced_density(psi, &[i, j])?)
}

fn check_pure(psi: &QubitState) -> Result<()> {
    if (psi.norm_sqr() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("state norm² = {} is not 1", psi.norm_sqr())));
    }
    Ok(())
}

/// `C²_{i(rest)} = 2(1 − Tr ρ_i²)`.
pub fn bipartite_concurrence_sq(psi: &QubitState, i: usize) -> Result<f64> {
    check_pure(psi)?;
    let rho = reduced_density(psi, &[i])?;
    let purity = (&rho * &rho).trace().re;
    Ok((2.0 * (1.0 - purity)).max(0.0))
}

/// Concurrence between qubit `i` and all remaining qubits of a pure state.
pub fn bipartite_concurrence_one_vs_rest(psi: &QubitState, i: usize) -> Result<f64> {
    Ok(bipartite_concurrence_sq(psi, i)?.sqrt())
}

/// Residual tangle `C²_{0(12)} − C²_{01} − C²_{02}` of a three-qubit pure state.
pub fn ckw_residual_tangle(psi: &QubitState) -> Result<f64> {
    let c01 = wootters_pairwise(psi, 0, 1)?;
    let c02 = wootters_pairwise(psi, 0, 2)?;
    Ok(bipartite_concurrence_sq(psi, 0)? - c01 * c01 - c02 * c02)
}

/// Reference value of the squared multiqubit concurrence: `C²` for even M,
/// the CKW residual tangle for M = 3.
pub fn tangle_oracle(psi: &QubitState) -> Result<f64> {
    match psi.m_qubits {
        m if m % 2 == 0 => Ok(concurrence_multiqubit(psi).powi(2)),
        3 => ckw_residual_tangle(psi),
        m => Err(Error::UnsupportedSize(format!("no tangle reference for odd M = {m} > 3"))),
    }
}
