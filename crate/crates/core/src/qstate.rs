//! Dense pure states and operators over mixed-radix composite spaces.
//!
//! A composite space is described by [`HilbertDims`], an ordered list of
//! subsystem dimensions. Flat indices are mixed-radix numbers with the first
//! factor most significant, so for qubits `|b_1 b_2 ... b_p>` has flat index
//! `b_1 2^{p-1} + ... + b_p`. Matrices are stored row-major.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rng::SimRng;
use crate::scalar::{re, Real, C};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertDims {
    factors: Vec<usize>,
}

impl HilbertDims {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidDims(factors));
        }
        Ok(Self { factors })
    }

    /// A single subsystem of dimension `n`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `p` qubits, `[2, 2, ..., 2]`.
    pub fn qubits(p: usize) -> Result<Self> {
        Self::new(vec![2; p])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn total(&self) -> usize {
        self.factors.iter().product()
    }

    /// Product of the factor dimensions after `factor`.
    pub fn stride(&self, factor: usize) -> usize {
        self.factors[factor + 1..].iter().product()
    }

    pub fn concat(&self, other: &HilbertDims) -> HilbertDims {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        HilbertDims { factors }
    }

    /// Mixed-radix digits of a flat index, most significant factor first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f;
            index /= f;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: digits.len(),
            });
        }
        let mut idx = 0;
        for (&d, &f) in digits.iter().zip(&self.factors) {
            if d >= f {
                return Err(Error::InvalidArgument(format!(
                    "digit {d} out of range for factor of dimension {f}"
                )));
            }
            idx = idx * f + d;
        }
        Ok(idx)
    }

    fn check_register(&self, register: usize) -> Result<()> {
        if register >= self.factors.len() {
            return Err(Error::RegisterOutOfRange {
                register,
                count: self.factors.len(),
            });
        }
        Ok(())
    }
}

/// Complex amplitude vector over a composite space.
///
/// Values built through [`StateVector::new`] and returned by the evolution and
/// measurement operations are unit-norm. [`StateVector::from_raw`] and
/// [`StateVector::direct_sum`] skip that check on purpose: they assemble
/// intermediate vectors such as eigenvector blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    dims: HilbertDims,
    amps: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(dims: HilbertDims, amps: Vec<C<T>>) -> Result<Self> {
        let s = Self::from_raw(dims, amps)?;
        let deviation = (s.norm() - T::one()).abs();
        if deviation > T::check_tol() {
            return Err(Error::NotNormalized {
                deviation: deviation.as_f64(),
            });
        }
        Ok(s)
    }

    /// Length-checked but not norm-checked.
    pub fn from_raw(dims: HilbertDims, amps: Vec<C<T>>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                found: amps.len(),
            });
        }
        Ok(Self { dims, amps })
    }

    pub fn basis(dims: HilbertDims, index: usize) -> Result<Self> {
        let n = dims.total();
        if index >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: index + 1,
            });
        }
        let mut amps = vec![C::zero(); n];
        amps[index] = C::one();
        Ok(Self { dims, amps })
    }

    /// Equal superposition of every basis state.
    pub fn uniform(dims: HilbertDims) -> Self {
        let n = dims.total();
        let a = re(T::one() / T::count(n).sqrt());
        Self {
            dims,
            amps: vec![a; n],
        }
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C<T> {
        self.amps[index]
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(Error::InvalidArgument("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.len() * other.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Self {
            dims: self.dims.concat(&other.dims),
            amps,
        }
    }

    /// Concatenation `a ⊕ b` as a single factor of dimension `|a| + |b|`.
    /// Not renormalized.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut amps = self.amps.clone();
        amps.extend_from_slice(&other.amps);
        Self {
            dims: HilbertDims {
                factors: vec![amps.len()],
            },
            amps,
        }
    }

    pub fn scaled(&self, factor: C<T>) -> Self {
        Self {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Relabels the factor structure; total dimension must be unchanged.
    pub fn with_dims(self, dims: HilbertDims) -> Result<Self> {
        Self::from_raw(dims, self.amps)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// Applies `op` to subsystem `factor`, identity elsewhere.
    pub fn apply_local(&self, op: &DenseUnitary<T>, factor: usize) -> Result<Self> {
        self.dims.check_register(factor)?;
        let fdim = self.dims.factors[factor];
        if op.dim() != fdim {
            return Err(Error::DimensionMismatch {
                expected: fdim,
                found: op.dim(),
            });
        }
        let stride = self.dims.stride(factor);
        let block = fdim * stride;
        let mut out = vec![C::zero(); self.len()];
        for base in (0..self.len()).step_by(block) {
            for m in 0..fdim {
                let row = &op.entries[m * fdim..(m + 1) * fdim];
                let dst = &mut out[base + m * stride..base + (m + 1) * stride];
                for (b, &u) in row.iter().enumerate() {
                    if u == C::zero() {
                        continue;
                    }
                    let src = &self.amps[base + b * stride..base + (b + 1) * stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += u * s;
                    }
                }
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: out,
        })
    }

    /// Exact probability of each value of subsystem `register` under the
    /// projective measurement `{|m><m| ⊗ I}`.
    pub fn outcome_distribution(&self, register: usize) -> Result<Vec<T>> {
        self.dims.check_register(register)?;
        let fdim = self.dims.factors[register];
        let stride = self.dims.stride(register);
        let mut probs = vec![T::zero(); fdim];
        for (i, a) in self.amps.iter().enumerate() {
            probs[(i / stride) % fdim] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Samples a projective measurement of subsystem `register` and returns
    /// the renormalized post-measurement state.
    pub fn measure(&self, register: usize, rng: &mut SimRng) -> Result<MeasurementOutcome<T>> {
        let probs = self.outcome_distribution(register)?;
        let as_f64: Vec<f64> = probs.iter().map(|p| p.as_f64()).collect();
        let outcome = rng.sample_index(&as_f64);
        let probability = probs[outcome];
        let fdim = self.dims.factors[register];
        let stride = self.dims.stride(register);
        let scale = T::one() / probability.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if (i / stride) % fdim == outcome {
                    a * scale
                } else {
                    C::zero()
                }
            })
            .collect();
        Ok(MeasurementOutcome {
            outcome,
            probability,
            post_state: Self {
                dims: self.dims.clone(),
                amps,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementOutcome<T: Real> {
    pub outcome: usize,
    pub probability: T,
    pub post_state: StateVector<T>,
}

/// Square complex matrix acting on a composite space.
///
/// [`DenseUnitary::new`] verifies `‖U†U − I‖_max ≤ T::check_tol()`.
/// Products, tensor products and adjoints of unitaries stay unitary and skip
/// the check.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary<T: Real> {
    dims: HilbertDims,
    entries: Vec<C<T>>,
}

impl<T: Real> DenseUnitary<T> {
    pub fn new(dims: HilbertDims, entries: Vec<C<T>>) -> Result<Self> {
        let u = Self::from_entries_unchecked(dims, entries)?;
        let deviation = u.unitarity_deviation();
        if deviation > T::check_tol() {
            return Err(Error::NotUnitary {
                deviation: deviation.as_f64(),
            });
        }
        Ok(u)
    }

    pub(crate) fn from_entries_unchecked(dims: HilbertDims, entries: Vec<C<T>>) -> Result<Self> {
        let n = dims.total();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self { dims, entries })
    }

    pub(crate) fn from_fn_unchecked(dims: HilbertDims, f: impl Fn(usize, usize) -> C<T>) -> Self {
        let n = dims.total();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for col in 0..n {
                entries.push(f(r, col));
            }
        }
        Self { dims, entries }
    }

    pub fn identity(dims: HilbertDims) -> Self {
        Self::from_fn_unchecked(dims, |r, c| if r == c { C::one() } else { C::zero() })
    }

    /// Permutation matrix sending basis state `i` to `image[i]`.
    pub fn permutation(dims: HilbertDims, image: &[usize]) -> Result<Self> {
        let n = dims.total();
        if image.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: image.len(),
            });
        }
        let mut seen = vec![false; n];
        for &j in image {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidArgument("image is not a permutation".into()));
            }
        }
        let mut entries = vec![C::zero(); n * n];
        for (i, &j) in image.iter().enumerate() {
            entries[j * n + i] = C::one();
        }
        Ok(Self { dims, entries })
    }

    /// Diagonal operator; every entry must have unit modulus.
    pub fn diagonal(dims: HilbertDims, diag: &[C<T>]) -> Result<Self> {
        let n = dims.total();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: diag.len(),
            });
        }
        let mut entries = vec![C::zero(); n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = *d;
        }
        Self::new(dims, entries)
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn entry(&self, row: usize, col: usize) -> C<T> {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<C<T>> {
        let n = self.dim();
        (0..n).map(|r| self.entries[r * n + col]).collect()
    }

    pub fn with_dims(self, dims: HilbertDims) -> Result<Self> {
        Self::from_entries_unchecked(dims, self.entries)
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim();
        Self::from_fn_unchecked(self.dims.clone(), |r, c| self.entries[c * n + r].conj())
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        let n = self.dim();
        if rhs.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.dim(),
            });
        }
        let mut out = vec![C::zero(); n * n];
        for r in 0..n {
            let dst = &mut out[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == C::zero() {
                    continue;
                }
                let src = &rhs.entries[k * n..(k + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            entries: out,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let dims = self.dims.concat(&other.dims);
        Self::from_fn_unchecked(dims, |r, c| {
            self.entries[(r / m) * n + c / m] * other.entries[(r % m) * m + c % m]
        })
    }

    /// `U^k` by repeated squaring.
    pub fn power(&self, mut k: u64) -> Self {
        let mut result = Self::identity(self.dims.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base).expect("same dimension");
            }
        }
        result
    }

    pub fn apply(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        let amps = self.apply_raw(state.amplitudes())?;
        Ok(StateVector {
            dims: state.dims.clone(),
            amps,
        })
    }

    pub fn apply_raw(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(n)
            .map(|row| row.iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// `‖U†U − I‖_max`
    pub fn unitarity_deviation(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut acc = C::<T>::zero();
                for k in 0..n {
                    acc += self.entries[k * n + i].conj() * self.entries[k * n + j];
                }
                if i == j {
                    acc -= C::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }
}

/// Kronecker product shared by states and operators.
pub trait TensorProduct {
    fn tensor_with(&self, other: &Self) -> Self;
}

impl<T: Real> TensorProduct for StateVector<T> {
    fn tensor_with(&self, other: &Self) -> Self {
        self.tensor(other)
    }
}

impl<T: Real> TensorProduct for DenseUnitary<T> {
    fn tensor_with(&self, other: &Self) -> Self {
        self.tensor(other)
    }
}

pub fn tensor<A: TensorProduct>(a: &A, b: &A) -> A {
    a.tensor_with(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn h() -> DenseUnitary<f64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DenseUnitary::new(
            HilbertDims::qubits(1).unwrap(),
            vec![re(s), re(s), re(s), re(-s)],
        )
        .unwrap()
    }

    fn x() -> DenseUnitary<f64> {
        DenseUnitary::permutation(HilbertDims::qubits(1).unwrap(), &[1, 0]).unwrap()
    }

    fn ket(bits: usize, index: usize) -> StateVector<f64> {
        StateVector::basis(HilbertDims::qubits(bits).unwrap(), index).unwrap()
    }

    #[test]
    fn dims_reject_zero_factor() {
        assert!(HilbertDims::new(vec![2, 0]).is_err());
        assert!(HilbertDims::new(vec![]).is_err());
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let d = HilbertDims::new(vec![3, 2, 5]).unwrap();
        for i in 0..d.total() {
            assert_eq!(d.index(&d.digits(i)).unwrap(), i);
        }
        assert_eq!(d.digits(7), vec![0, 1, 2]);
    }

    #[test]
    fn basis_composition() {
        let s = ket(1, 0).tensor(&ket(1, 1));
        assert_eq!(s, ket(2, 1));
        let id2 = DenseUnitary::<f64>::identity(HilbertDims::qubits(1).unwrap());
        assert_eq!(
            id2.tensor(&id2),
            DenseUnitary::identity(HilbertDims::qubits(2).unwrap())
        );
    }

    #[test]
    fn h_tensor_i_on_00() {
        let id = DenseUnitary::identity(HilbertDims::qubits(1).unwrap());
        let out = h().tensor(&id).apply(&ket(2, 0)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = vec![re(s), re(0.0), re(s), re(0.0)];
        assert_eq!(out.amplitudes(), expected.as_slice());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(x().apply(&ket(1, 0)).unwrap(), ket(1, 1));
        let plus = h().apply(&ket(1, 0)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((plus.amplitude(0) - re(s)).norm() < 1e-15);
        assert!((plus.amplitude(1) - re(s)).norm() < 1e-15);
        let bad = ket(2, 0);
        assert!(matches!(
            x().apply(&bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inner_examples() {
        assert_eq!(ket(1, 0).inner(&ket(1, 1)).unwrap(), re(0.0));
        let plus = h().apply(&ket(1, 0)).unwrap();
        let v = plus.inner(&ket(1, 0)).unwrap();
        assert!((v - re(std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
        // conjugate-linear in the first slot
        let a = ket(1, 0).scaled(c(0.0, 1.0));
        assert_eq!(a.inner(&ket(1, 0)).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn direct_sum_examples() {
        let s = ket(1, 0).direct_sum(&ket(1, 0));
        assert_eq!(s.amplitudes(), &[re(1.0), re(0.0), re(1.0), re(0.0)]);
        let zero = StateVector::from_raw(HilbertDims::single(2).unwrap(), vec![re(0.0); 2]).unwrap();
        let s = zero.direct_sum(&ket(1, 1));
        assert_eq!(s.amplitudes(), &[re(0.0), re(0.0), re(0.0), re(1.0)]);
    }

    #[test]
    fn measure_plus_and_one() {
        let plus = h().apply(&ket(1, 0)).unwrap();
        let d = plus.outcome_distribution(0).unwrap();
        assert!((d[0] - 0.5).abs() < 1e-15 && (d[1] - 0.5).abs() < 1e-15);
        let mut rng = SimRng::new(9);
        let m = ket(1, 1).measure(0, &mut rng).unwrap();
        assert_eq!(m.outcome, 1);
        assert_eq!(m.probability, 1.0);
        let mut zeros = 0;
        for _ in 0..1000 {
            let m = plus.measure(0, &mut rng).unwrap();
            assert_eq!(m.post_state, ket(1, m.outcome));
            zeros += usize::from(m.outcome == 0);
        }
        assert!((400..600).contains(&zeros));
    }

    #[test]
    fn measure_bell_collapses_partner() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(
            HilbertDims::qubits(2).unwrap(),
            vec![re(s), re(0.0), re(0.0), re(s)],
        )
        .unwrap();
        let mut rng = SimRng::new(5);
        for _ in 0..20 {
            let m = bell.measure(0, &mut rng).unwrap();
            let expected = if m.outcome == 0 { ket(2, 0) } else { ket(2, 3) };
            assert!(m.post_state.max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn register_out_of_range() {
        assert!(matches!(
            ket(2, 0).outcome_distribution(2),
            Err(Error::RegisterOutOfRange { .. })
        ));
    }

    #[test]
    fn checked_constructors() {
        let d = HilbertDims::qubits(1).unwrap();
        assert!(matches!(
            StateVector::<f64>::new(d.clone(), vec![re(1.0), re(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            DenseUnitary::<f64>::new(d, vec![re(1.0), re(1.0), re(0.0), re(1.0)]),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn apply_local_matches_kron() {
        let d = HilbertDims::new(vec![3, 2, 2]).unwrap();
        let amps: Vec<_> = (0..12).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        let s = StateVector::from_raw(d, amps).unwrap().normalized().unwrap();
        let id3 = DenseUnitary::identity(HilbertDims::single(3).unwrap());
        let id2 = DenseUnitary::identity(HilbertDims::qubits(1).unwrap());
        let full = id3.tensor(&h()).tensor(&id2);
        let a = s.apply_local(&h(), 1).unwrap();
        let b = full.apply(&s).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-14);
    }

    #[test]
    fn power_by_squaring() {
        let mut u = x();
        for k in 0..6u64 {
            let expected = if k % 2 == 0 {
                DenseUnitary::identity(HilbertDims::qubits(1).unwrap())
            } else {
                x()
            };
            assert_eq!(u.power(k), expected);
            u = x();
        }
    }

    #[test]
    fn f32_instantiation() {
        let s = StateVector::<f32>::uniform(HilbertDims::qubits(3).unwrap());
        assert!((s.norm() - 1.0).abs() < 1e-6);
    }
}
