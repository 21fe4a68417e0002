//! Gate set, circuit plans, the recursive QFT and phase estimation.
//!
//! Qubit `0` is the most significant bit of the register, so a plan on `p`
//! qubits acts on `|b_0 b_1 ... b_{p-1}>` with flat index
//! `b_0 2^{p-1} + ... + b_{p-1}`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qstate::{DenseUnitary, HilbertDims, StateVector};
use crate::rng::SimRng;
use crate::scalar::{cis, re, Real, C};

/// Largest phase-estimation register supported by the dense simulator.
pub const MAX_PRECISION_BITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    H,
    X,
    /// `diag(1, e^{2πi/2^k})`, `k ≥ 1`.
    Rf(u32),
    /// Adjoint of `Rf(k)`.
    RfDagger(u32),
}

impl GateKind {
    pub fn dagger(self) -> Self {
        match self {
            GateKind::Rf(k) => GateKind::RfDagger(k),
            GateKind::RfDagger(k) => GateKind::Rf(k),
            other => other,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            GateKind::Rf(0) | GateKind::RfDagger(0) => {
                Err(Error::InvalidArgument("R^F_k requires k >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Row-major 2x2 matrix.
    pub fn matrix<T: Real>(self) -> [C<T>; 4] {
        let zero = C::zero();
        let one = C::one();
        match self {
            GateKind::H => {
                let s = re(T::FRAC_1_SQRT_2());
                [s, s, s, -s]
            }
            GateKind::X => [zero, one, one, zero],
            GateKind::Rf(k) => [one, zero, zero, cis(T::TAU() / T::lit(2f64.powi(k as i32)))],
            GateKind::RfDagger(k) => {
                [one, zero, zero, cis(-T::TAU() / T::lit(2f64.powi(k as i32)))]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateSpec {
    Single { kind: GateKind, target: usize },
    Controlled { kind: GateKind, control: usize, target: usize },
    Swap(usize, usize),
}

impl GateSpec {
    pub fn h(target: usize) -> Self {
        GateSpec::Single {
            kind: GateKind::H,
            target,
        }
    }

    pub fn x(target: usize) -> Self {
        GateSpec::Single {
            kind: GateKind::X,
            target,
        }
    }

    pub fn rf(k: u32, target: usize) -> Self {
        GateSpec::Single {
            kind: GateKind::Rf(k),
            target,
        }
    }

    pub fn controlled(kind: GateKind, control: usize, target: usize) -> Self {
        GateSpec::Controlled {
            kind,
            control,
            target,
        }
    }

    pub fn dagger(self) -> Self {
        match self {
            GateSpec::Single { kind, target } => GateSpec::Single {
                kind: kind.dagger(),
                target,
            },
            GateSpec::Controlled {
                kind,
                control,
                target,
            } => GateSpec::Controlled {
                kind: kind.dagger(),
                control,
                target,
            },
            swap => swap,
        }
    }

    fn qubits(&self) -> Vec<usize> {
        match *self {
            GateSpec::Single { target, .. } => vec![target],
            GateSpec::Controlled {
                control, target, ..
            } => vec![control, target],
            GateSpec::Swap(a, b) => vec![a, b],
        }
    }

    fn shifted(self, offset: usize) -> Self {
        match self {
            GateSpec::Single { kind, target } => GateSpec::Single {
                kind,
                target: target + offset,
            },
            GateSpec::Controlled {
                kind,
                control,
                target,
            } => GateSpec::Controlled {
                kind,
                control: control + offset,
                target: target + offset,
            },
            GateSpec::Swap(a, b) => GateSpec::Swap(a + offset, b + offset),
        }
    }
}

/// Local matrix of a gate: 2x2 for single-qubit gates, 4x4 on
/// `(control, target)` or `(a, b)` for two-qubit gates.
pub fn gate_matrix<T: Real>(g: &GateSpec) -> Result<DenseUnitary<T>> {
    match *g {
        GateSpec::Single { kind, .. } => {
            kind.validate()?;
            DenseUnitary::new(HilbertDims::qubits(1)?, kind.matrix::<T>().to_vec())
        }
        GateSpec::Controlled { kind, .. } => {
            kind.validate()?;
            let m = kind.matrix::<T>();
            let mut e = vec![C::zero(); 16];
            e[0] = C::one();
            e[5] = C::one();
            e[10] = m[0];
            e[11] = m[1];
            e[14] = m[2];
            e[15] = m[3];
            DenseUnitary::new(HilbertDims::qubits(2)?, e)
        }
        GateSpec::Swap(..) => DenseUnitary::permutation(HilbertDims::qubits(2)?, &[0, 2, 1, 3]),
    }
}

/// Ordered gate list on `qubit_count` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitPlan {
    qubit_count: usize,
    gates: Vec<GateSpec>,
}

impl CircuitPlan {
    pub fn new(qubit_count: usize) -> Result<Self> {
        if qubit_count == 0 {
            return Err(Error::InvalidArgument("a circuit needs at least one qubit".into()));
        }
        Ok(Self {
            qubit_count,
            gates: Vec::new(),
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    pub fn push(&mut self, g: GateSpec) -> Result<&mut Self> {
        let qs = g.qubits();
        for &q in &qs {
            if q >= self.qubit_count {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    qubits: self.qubit_count,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument(format!(
                "two-qubit gate on a single qubit {}",
                qs[0]
            )));
        }
        if let GateSpec::Single { kind, .. } | GateSpec::Controlled { kind, .. } = g {
            kind.validate()?;
        }
        self.gates.push(g);
        Ok(self)
    }

    /// Appends `other`, acting on qubits `offset..offset + other.qubit_count`.
    pub fn append_shifted(&mut self, other: &CircuitPlan, offset: usize) -> Result<()> {
        for g in &other.gates {
            self.push(g.shifted(offset))?;
        }
        Ok(())
    }

    /// Reversed plan of adjoint gates.
    pub fn dagger(&self) -> Self {
        Self {
            qubit_count: self.qubit_count,
            gates: self.gates.iter().rev().map(|g| g.dagger()).collect(),
        }
    }

    pub fn apply<T: Real>(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        let n = 1usize << self.qubit_count;
        if state.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.len(),
            });
        }
        let mut amps = state.amplitudes().to_vec();
        for g in &self.gates {
            self.apply_gate(g, &mut amps);
        }
        StateVector::from_raw(state.dims().clone(), amps)
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.qubit_count - 1 - q)
    }

    fn apply_gate<T: Real>(&self, g: &GateSpec, amps: &mut [C<T>]) {
        match *g {
            GateSpec::Single { kind, target } => {
                self.apply_2x2(kind.matrix(), self.mask(target), 0, amps);
            }
            GateSpec::Controlled {
                kind,
                control,
                target,
            } => {
                self.apply_2x2(kind.matrix(), self.mask(target), self.mask(control), amps);
            }
            GateSpec::Swap(a, b) => {
                let (ma, mb) = (self.mask(a), self.mask(b));
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, (i & !ma) | mb);
                    }
                }
            }
        }
    }

    fn apply_2x2<T: Real>(&self, m: [C<T>; 4], target: usize, control: usize, amps: &mut [C<T>]) {
        for i in 0..amps.len() {
            if i & target != 0 || i & control != control {
                continue;
            }
            let j = i | target;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[j] = m[2] * a0 + m[3] * a1;
        }
    }

    /// Dense matrix of the whole plan, built column by column.
    pub fn matrix<T: Real>(&self) -> DenseUnitary<T> {
        let n = 1usize << self.qubit_count;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = vec![C::<T>::zero(); n];
            v[j] = C::one();
            for g in &self.gates {
                self.apply_gate(g, &mut v);
            }
            cols.push(v);
        }
        let dims = HilbertDims::qubits(self.qubit_count).expect("qubit_count >= 1");
        DenseUnitary::from_fn_unchecked(dims, |r, c| cols[c][r])
    }
}

/// Reverses qubit order: `SWAP(t, p+1-t)` for `t = 1..⌊p/2⌋` in one-based
/// labels.
pub fn swap_prime(p: usize) -> Result<CircuitPlan> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "qubit reversal needs p >= 2, got {p}"
        )));
    }
    let mut plan = CircuitPlan::new(p)?;
    for t in 0..p / 2 {
        plan.push(GateSpec::Swap(t, p - 1 - t))?;
    }
    Ok(plan)
}

/// Recursive QFT without the final qubit reversal: `H` on qubit 0, then
/// `R^F_k` on qubit 0 controlled by qubit `k-1` for `k = 2..p`, then the same
/// construction on qubits `1..p`.
pub fn qft_rec(p: usize) -> Result<CircuitPlan> {
    qft_rec_with_order(p, |ks| ks)
}

/// [`qft_rec`] with the controlled-phase ladder of every level reordered by
/// `order`. Those gates commute, so the matrix does not depend on `order`.
pub fn qft_rec_with_order(
    p: usize,
    order: impl Fn(Vec<u32>) -> Vec<u32> + Copy,
) -> Result<CircuitPlan> {
    if p < 1 {
        return Err(Error::InvalidArgument("QFT needs p >= 1".into()));
    }
    let mut plan = CircuitPlan::new(p)?;
    plan.push(GateSpec::h(0))?;
    if p == 1 {
        return Ok(plan);
    }
    for k in order((2..=p as u32).collect()) {
        plan.push(GateSpec::controlled(GateKind::Rf(k), k as usize - 1, 0))?;
    }
    let inner = qft_rec_with_order(p - 1, order)?;
    plan.append_shifted(&inner, 1)?;
    Ok(plan)
}

/// Full QFT circuit: [`qft_rec`] followed by [`swap_prime`].
pub fn qft_circuit(p: usize) -> Result<CircuitPlan> {
    let mut plan = qft_rec(p)?;
    if p >= 2 {
        plan.append_shifted(&swap_prime(p)?, 0)?;
    }
    Ok(plan)
}

/// Inverse QFT circuit: reversed adjoint of [`qft_circuit`].
pub fn qft_inverse_circuit(p: usize) -> Result<CircuitPlan> {
    Ok(qft_circuit(p)?.dagger())
}

/// Analytic QFT on `p` qubits, `<l|QFT|d> = e^{2πi d l / P} / √P`.
pub fn qft<T: Real>(p: usize) -> Result<DenseUnitary<T>> {
    let dims = HilbertDims::qubits(p.max(1))?;
    if p < 1 {
        return Err(Error::InvalidArgument("QFT needs p >= 1".into()));
    }
    let n = 1usize << p;
    let scale = T::one() / T::count(n).sqrt();
    Ok(DenseUnitary::from_fn_unchecked(dims, |l, d| {
        // reduce d*l mod P first so large exponents keep full precision
        let k = (d * l) % n;
        cis(T::TAU() * T::count(k) / T::count(n)) * scale
    }))
}

pub fn qft_inverse<T: Real>(p: usize) -> Result<DenseUnitary<T>> {
    Ok(qft::<T>(p)?.dagger())
}

/// `H^{⊗p}` as a dense matrix.
pub fn hadamard_all<T: Real>(p: usize) -> Result<DenseUnitary<T>> {
    let h = gate_matrix::<T>(&GateSpec::h(0))?;
    let mut out = h.clone();
    for _ in 1..p {
        out = out.tensor(&h);
    }
    Ok(out)
}

fn check_precision(p: usize) -> Result<()> {
    if p == 0 || p > MAX_PRECISION_BITS {
        return Err(Error::InvalidArgument(format!(
            "precision bits must be in 1..={MAX_PRECISION_BITS}, got {p}"
        )));
    }
    Ok(())
}

fn controlled_dims<T: Real>(u: &DenseUnitary<T>, p: usize) -> Result<HilbertDims> {
    HilbertDims::new(vec![1usize << p, u.dim()])
}

/// `Λ_P(U)|b>|ψ> = |b> U^b |ψ>` on dims `[2^p, N]`, assembled from the
/// binary decomposition: control bit `j` (weight `2^j`) drives `U^{2^j}`.
pub fn controlled_powers<T: Real>(u: &DenseUnitary<T>, p: usize) -> Result<DenseUnitary<T>> {
    check_precision(p)?;
    let dims = controlled_dims(u, p)?;
    let (pp, n) = (1usize << p, u.dim());
    let mut total = DenseUnitary::identity(dims.clone());
    let mut u_pow = u.clone();
    for j in 0..p {
        let stage = DenseUnitary::from_fn_unchecked(dims.clone(), |r, c| {
            let (br, xr) = (r / n, r % n);
            let (bc, xc) = (c / n, c % n);
            if br != bc {
                C::zero()
            } else if bc >> j & 1 == 1 {
                u_pow.entry(xr, xc)
            } else if xr == xc {
                C::one()
            } else {
                C::zero()
            }
        });
        total = stage.compose(&total)?;
        u_pow = u_pow.compose(&u_pow)?;
    }
    debug_assert_eq!(total.dim(), pp * n);
    Ok(total)
}

/// Direct block-diagonal definition of `Λ_P(U)`, `diag(U^0, U^1, ..., U^{P-1})`.
pub fn controlled_powers_direct<T: Real>(
    u: &DenseUnitary<T>,
    p: usize,
) -> Result<DenseUnitary<T>> {
    check_precision(p)?;
    let dims = controlled_dims(u, p)?;
    let n = u.dim();
    let mut blocks = Vec::with_capacity(1 << p);
    let mut acc = DenseUnitary::identity(u.dims().clone());
    for _ in 0..1usize << p {
        blocks.push(acc.clone());
        acc = u.compose(&acc)?;
    }
    Ok(DenseUnitary::from_fn_unchecked(dims, |r, c| {
        if r / n == c / n {
            blocks[r / n].entry(r % n, c % n)
        } else {
            C::zero()
        }
    }))
}

/// Applies `Λ_P(U)` gate by gate to a state on `[2^p, N]`.
fn apply_controlled_powers<T: Real>(
    state: &StateVector<T>,
    u: &DenseUnitary<T>,
    p: usize,
) -> Result<StateVector<T>> {
    let n = u.dim();
    let mut amps = state.amplitudes().to_vec();
    let mut u_pow = u.clone();
    for j in 0..p {
        for b in (0..1usize << p).filter(|b| b >> j & 1 == 1) {
            let block = u_pow.apply_raw(&amps[b * n..(b + 1) * n])?;
            amps[b * n..(b + 1) * n].copy_from_slice(&block);
        }
        if j + 1 < p {
            u_pow = u_pow.compose(&u_pow)?;
        }
    }
    StateVector::from_raw(state.dims().clone(), amps)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseEstimate<T: Real> {
    /// Measured value `ω'` of the first register, in `[0, P)`.
    pub raw_outcome: usize,
    /// `ω' / P`.
    pub vartheta: T,
    pub precision_bits: usize,
}

impl<T: Real> PhaseEstimate<T> {
    fn from_outcome(raw_outcome: usize, precision_bits: usize) -> Self {
        Self {
            raw_outcome,
            vartheta: T::count(raw_outcome) / T::count(1usize << precision_bits),
            precision_bits,
        }
    }
}

/// How the first register is taken from `|0...0>` to the uniform superposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegisterPrep {
    /// `H^{⊗p}`
    #[default]
    Hadamard,
    /// The analytic `QFT_P`; identical on `|0...0>`.
    FullQft,
}

/// Phase-estimation circuit for a fixed `(U, |ψ>, p)`.
///
/// The circuit is simulated once on construction; the exact outcome
/// distribution of the first register is then reused for every sample.
#[derive(Clone, Debug)]
pub struct PhaseEstimator<T: Real> {
    precision_bits: usize,
    final_state: StateVector<T>,
    distribution: Vec<T>,
    sampling: Vec<f64>,
}

impl<T: Real> PhaseEstimator<T> {
    pub fn new(u: &DenseUnitary<T>, psi: &StateVector<T>, p: usize) -> Result<Self> {
        Self::with_prep(u, psi, p, RegisterPrep::default())
    }

    pub fn with_prep(
        u: &DenseUnitary<T>,
        psi: &StateVector<T>,
        p: usize,
        prep: RegisterPrep,
    ) -> Result<Self> {
        check_precision(p)?;
        if u.dim() != psi.len() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: psi.len(),
            });
        }
        let first = HilbertDims::single(1usize << p)?;
        let psi = psi.clone().with_dims(HilbertDims::single(psi.len())?)?;
        let state = StateVector::basis(first.clone(), 0)?.tensor(&psi);
        let prep_op = match prep {
            RegisterPrep::Hadamard => hadamard_all::<T>(p)?,
            RegisterPrep::FullQft => qft::<T>(p)?,
        }
        .with_dims(first.clone())?;
        let state = state.apply_local(&prep_op, 0)?;
        let state = apply_controlled_powers(&state, u, p)?;
        let inverse = qft_inverse::<T>(p)?.with_dims(first)?;
        let final_state = state.apply_local(&inverse, 0)?;
        let distribution = final_state.outcome_distribution(0)?;
        let sampling = distribution.iter().map(|x| x.as_f64()).collect();
        Ok(Self {
            precision_bits: p,
            final_state,
            distribution,
            sampling,
        })
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    /// State of both registers right before measurement.
    pub fn final_state(&self) -> &StateVector<T> {
        &self.final_state
    }

    /// Exact probability of each first-register outcome `ω' ∈ [0, P)`.
    pub fn distribution(&self) -> &[T] {
        &self.distribution
    }

    pub fn sample(&self, rng: &mut SimRng) -> PhaseEstimate<T> {
        PhaseEstimate::from_outcome(rng.sample_index(&self.sampling), self.precision_bits)
    }
}

/// Runs phase estimation and measures the first register once.
pub fn phase_estimate<T: Real>(
    u: &DenseUnitary<T>,
    psi: &StateVector<T>,
    p: usize,
    rng: &mut SimRng,
) -> Result<PhaseEstimate<T>> {
    Ok(PhaseEstimator::new(u, psi, p)?.sample(rng))
}

/// Exact first-register distribution of the phase-estimation circuit as
/// `(ω', probability)` pairs.
pub fn phase_estimate_distribution<T: Real>(
    u: &DenseUnitary<T>,
    psi: &StateVector<T>,
    p: usize,
) -> Result<Vec<(usize, T)>> {
    Ok(PhaseEstimator::new(u, psi, p)?
        .distribution()
        .iter()
        .copied()
        .enumerate()
        .collect())
}
