//! The eight-dimensional invariant subspace of the search walk on
//! `K_{N1,N2}` and its closed-form eigensystem.

use crate::error::{Error, Result};
use crate::qstate::{DenseUnitary, HilbertDims, StateVector};
use crate::scalar::{c, cis, re, Real, C};

use super::{search_operator, WalkSpace};

/// Marked vertices `K1 ⊆ V1` and `K2 ⊆ V2` of `K_{n1,n2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMarking {
    n1: usize,
    n2: usize,
    marked: Vec<bool>,
    k1: usize,
    k2: usize,
}

impl BipartiteMarking {
    /// `k1_set` holds vertices of `V1 = {0..n1−1}` and `k2_set` vertices of
    /// `V2 = {n1..n1+n2−1}`, both as graph labels.
    pub fn new(n1: usize, n2: usize, k1_set: &[usize], k2_set: &[usize]) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidGraph("partitions must be nonempty".into()));
        }
        let mut marked = vec![false; n1 + n2];
        for &v in k1_set {
            if v >= n1 {
                return Err(Error::InvalidArgument(format!("{v} is not in V1")));
            }
            marked[v] = true;
        }
        for &v in k2_set {
            if !(n1..n1 + n2).contains(&v) {
                return Err(Error::InvalidArgument(format!("{v} is not in V2")));
            }
            marked[v] = true;
        }
        let k1 = marked[..n1].iter().filter(|&&m| m).count();
        let k2 = marked[n1..].iter().filter(|&&m| m).count();
        Ok(Self {
            n1,
            n2,
            marked,
            k1,
            k2,
        })
    }

    /// Marks the first `k1` vertices of `V1` and the first `k2` of `V2`.
    pub fn first(n1: usize, n2: usize, k1: usize, k2: usize) -> Result<Self> {
        if k1 > n1 || k2 > n2 {
            return Err(Error::InvalidArgument(format!(
                "cannot mark {k1} of {n1} and {k2} of {n2}"
            )));
        }
        let a: Vec<usize> = (0..k1).collect();
        let b: Vec<usize> = (n1..n1 + k2).collect();
        Self::new(n1, n2, &a, &b)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// `N = n1 + n2`
    pub fn vertex_count(&self) -> usize {
        self.n1 + self.n2
    }

    /// `k = k1 + k2`
    pub fn marked_count(&self) -> usize {
        self.k1 + self.k2
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked.get(v).copied().unwrap_or(false)
    }

    /// `n1 = n2` and `k1 = k2`, the case the counting algorithm handles.
    pub fn is_restricted(&self) -> bool {
        self.n1 == self.n2 && self.k1 == self.k2
    }

    pub fn angles<T: Real>(&self) -> WalkAngles<T> {
        WalkAngles::from_counts(self.n1, self.k1, self.n2, self.k2)
            .expect("marking is consistent")
    }

    pub(crate) fn check_space(&self, ws: &WalkSpace) -> Result<()> {
        if ws.position_dim() != self.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: ws.position_dim(),
                found: self.vertex_count(),
            });
        }
        Ok(())
    }

    fn check_nondegenerate(&self) -> Result<()> {
        for (k, n) in [(self.k1, self.n1), (self.k2, self.n2)] {
            if k == 0 || k == n {
                return Err(Error::DegenerateClass { k, n });
            }
        }
        Ok(())
    }

    /// `[K1, K1^C, K2, K2^C]` as vertex lists.
    fn classes(&self) -> [Vec<usize>; 4] {
        let split = |range: std::ops::Range<usize>, want: bool| -> Vec<usize> {
            range.filter(|&v| self.marked[v] == want).collect()
        };
        [
            split(0..self.n1, true),
            split(0..self.n1, false),
            split(self.n1..self.n1 + self.n2, true),
            split(self.n1..self.n1 + self.n2, false),
        ]
    }
}

/// `θ1, θ2` with `cos θ_j = 1 − 2k_j/N_j`, and `Σ = (θ1+θ2)/2`,
/// `Δ = (θ1−θ2)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WalkAngles<T: Real> {
    pub theta1: T,
    pub theta2: T,
}

impl<T: Real> WalkAngles<T> {
    pub fn new(theta1: T, theta2: T) -> Result<Self> {
        let ok = |t: T| t >= T::zero() && t <= T::PI();
        if !(ok(theta1) && ok(theta2)) {
            return Err(Error::InvalidArgument(format!(
                "angles ({theta1}, {theta2}) outside [0, pi]"
            )));
        }
        Ok(Self { theta1, theta2 })
    }

    /// The angle `θ` of `k` marked vertices among `n`.
    pub fn class_angle(n: usize, k: usize) -> Result<T> {
        if n == 0 || k > n {
            return Err(Error::InvalidArgument(format!("need 0 <= k <= N, got N = {n}, k = {k}")));
        }
        let nn = T::count(n);
        let cos = T::one() - T::lit(2.0) * T::count(k) / nn;
        let sin = T::lit(2.0) / nn * (T::count(k) * T::count(n - k)).sqrt();
        Ok(sin.atan2(cos))
    }

    pub fn from_counts(n1: usize, k1: usize, n2: usize, k2: usize) -> Result<Self> {
        Self::new(Self::class_angle(n1, k1)?, Self::class_angle(n2, k2)?)
    }

    /// `Σ = (θ1 + θ2)/2`
    pub fn sigma(&self) -> T {
        (self.theta1 + self.theta2) / T::lit(2.0)
    }

    /// `Δ = (θ1 − θ2)/2`
    pub fn delta(&self) -> T {
        (self.theta1 - self.theta2) / T::lit(2.0)
    }
}

pub const BASIS_LABELS: [&str; 8] = [
    "|K1,K2>",
    "|K1,K2C>",
    "|K1C,K2>",
    "|K1C,K2C>",
    "|K2,K1>",
    "|K2,K1C>",
    "|K2C,K1>",
    "|K2C,K1C>",
];

/// `|S_i, S_j> = |S_i|^{-1/2} Σ_{v ∈ S_i} |v> ⊗ |S_j|^{-1/2} Σ_{u ∈ S_j} |cor(vu)>`
/// for the eight pairs in [`BASIS_LABELS`] order.
pub fn reduced_basis<T: Real>(ws: &WalkSpace, bm: &BipartiteMarking) -> Result<Vec<StateVector<T>>> {
    bm.check_space(ws)?;
    bm.check_nondegenerate()?;
    let [k1, k1c, k2, k2c] = bm.classes();
    let pairs = [
        (&k1, &k2),
        (&k1, &k2c),
        (&k1c, &k2),
        (&k1c, &k2c),
        (&k2, &k1),
        (&k2, &k1c),
        (&k2c, &k1),
        (&k2c, &k1c),
    ];
    let graph = ws.graph();
    pairs
        .iter()
        .map(|&(si, sj)| {
            let amp = re(T::one() / T::count(si.len() * sj.len()).sqrt());
            let mut amps = vec![re(T::zero()); ws.total_dim()];
            for &v in si {
                for &u in sj {
                    let color = graph
                        .color(v, u)
                        .ok_or_else(|| Error::InvalidGraph(format!("no edge ({v}, {u})")))?;
                    amps[ws.index(v, color)] = amp;
                }
            }
            StateVector::from_raw(ws.dims(), amps)
        })
        .collect()
}

/// `𝒰'(θ)`, row-major.
pub fn u_block<T: Real>(theta: T) -> [[T; 4]; 4] {
    let (s, co) = theta.sin_cos();
    let z = T::zero();
    [
        [co, -s, z, z],
        [z, z, -co, s],
        [-s, -co, z, z],
        [z, z, s, co],
    ]
}

/// Eigenvalue families of `U'`: `±e^{iΣ}`, `±e^{iΔ}` and their conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenLabel {
    /// `e^{iΣ}`
    SigmaPlus,
    /// `−e^{iΣ} = e^{i(Σ+π)}`
    SigmaMinus,
    /// `e^{−iΣ}`
    SigmaPlusConj,
    /// `−e^{−iΣ}`
    SigmaMinusConj,
    DeltaPlus,
    DeltaMinus,
    DeltaPlusConj,
    DeltaMinusConj,
}

impl EigenLabel {
    pub const ALL: [EigenLabel; 8] = [
        EigenLabel::SigmaPlus,
        EigenLabel::SigmaMinus,
        EigenLabel::SigmaPlusConj,
        EigenLabel::SigmaMinusConj,
        EigenLabel::DeltaPlus,
        EigenLabel::DeltaMinus,
        EigenLabel::DeltaPlusConj,
        EigenLabel::DeltaMinusConj,
    ];

    /// The signed angle whose phase is the eigenvalue, as text.
    pub fn angle_name(self) -> &'static str {
        match self {
            EigenLabel::SigmaPlus => "+Sigma",
            EigenLabel::SigmaMinus => "+(Sigma+pi)",
            EigenLabel::SigmaPlusConj => "-Sigma",
            EigenLabel::SigmaMinusConj => "-(Sigma+pi)",
            EigenLabel::DeltaPlus => "+Delta",
            EigenLabel::DeltaMinus => "+(Delta+pi)",
            EigenLabel::DeltaPlusConj => "-Delta",
            EigenLabel::DeltaMinusConj => "-(Delta+pi)",
        }
    }

    fn is_sigma(self) -> bool {
        matches!(
            self,
            EigenLabel::SigmaPlus
                | EigenLabel::SigmaMinus
                | EigenLabel::SigmaPlusConj
                | EigenLabel::SigmaMinusConj
        )
    }

    fn is_minus(self) -> bool {
        matches!(
            self,
            EigenLabel::SigmaMinus
                | EigenLabel::SigmaMinusConj
                | EigenLabel::DeltaMinus
                | EigenLabel::DeltaMinusConj
        )
    }

    fn is_conj(self) -> bool {
        matches!(
            self,
            EigenLabel::SigmaPlusConj
                | EigenLabel::SigmaMinusConj
                | EigenLabel::DeltaPlusConj
                | EigenLabel::DeltaMinusConj
        )
    }

    /// The signed angle, e.g. `−(Σ + π)` for [`EigenLabel::SigmaMinusConj`].
    pub fn angle<T: Real>(self, angles: &WalkAngles<T>) -> T {
        let base = if self.is_sigma() { angles.sigma() } else { angles.delta() };
        let shifted = if self.is_minus() { base + T::PI() } else { base };
        if self.is_conj() {
            -shifted
        } else {
            shifted
        }
    }

    /// Closed-form `|<λ|D>|²`.
    pub fn probability<T: Real>(self, angles: &WalkAngles<T>) -> T {
        let other = if self.is_sigma() { angles.delta() } else { angles.sigma() };
        let half = other / T::lit(2.0);
        let trig = if self.is_minus() { half.sin() } else { half.cos() };
        trig * trig / T::lit(4.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T: Real> {
    pub label: EigenLabel,
    pub value: C<T>,
    /// Unit eigenvector in the reduced basis.
    pub vector: Vec<C<T>>,
}

/// `U' = [[0, 𝒰'(θ1)], [𝒰'(θ2), 0]]` with its analytic eigensystem and the
/// decomposition of `|D>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedWalkSystem<T: Real> {
    pub angles: WalkAngles<T>,
    pub u_prime: DenseUnitary<T>,
    pub eigenpairs: Vec<EigenPair<T>>,
    /// `<λ|D>` in [`ReducedWalkSystem::eigenpairs`] order.
    pub d_coeffs: Vec<C<T>>,
}

/// `|D>` in the reduced basis: `√(|S_i||S_j|) / √(2 N1 N2)` per vector.
pub fn reduced_edge_state<T: Real>(angles: &WalkAngles<T>) -> Vec<C<T>> {
    let h = T::lit(2.0);
    let (s1, c1) = (angles.theta1 / h).sin_cos();
    let (s2, c2) = (angles.theta2 / h).sin_cos();
    let r = T::one() / h.sqrt();
    [
        s1 * s2,
        s1 * c2,
        c1 * s2,
        c1 * c2,
        s2 * s1,
        s2 * c1,
        c2 * s1,
        c2 * c1,
    ]
    .into_iter()
    .map(|x| re(x * r))
    .collect()
}

fn eigenvector<T: Real>(label: EigenLabel, angles: &WalkAngles<T>) -> Vec<C<T>> {
    let one = T::one();
    let zero = T::zero();
    let i = c(zero, one);
    let sign = if label.is_minus() { -one } else { one };
    let raw: Vec<C<T>> = if label.is_sigma() {
        let e = cis(angles.delta()) * sign;
        vec![e, -i * e, i * e, e, re(one), -i, i, re(one)]
    } else {
        let e = cis(angles.sigma()) * sign;
        vec![e, i * e, i * e, -e, re(one), -i, -i, re(-one)]
    };
    let norm = T::one() / T::lit(8.0).sqrt();
    raw.into_iter()
        .map(|z| {
            let z = z * norm;
            if label.is_conj() {
                z.conj()
            } else {
                z
            }
        })
        .collect()
}

pub fn reduced_operator<T: Real>(angles: WalkAngles<T>) -> ReducedWalkSystem<T> {
    let b1 = u_block(angles.theta1);
    let b2 = u_block(angles.theta2);
    let mut entries = vec![re(T::zero()); 64];
    for r in 0..4 {
        for col in 0..4 {
            entries[r * 8 + 4 + col] = re(b1[r][col]);
            entries[(4 + r) * 8 + col] = re(b2[r][col]);
        }
    }
    let u_prime = DenseUnitary::from_entries_unchecked(HilbertDims::single(8).expect("8"), entries)
        .expect("64 entries");
    let d = reduced_edge_state(&angles);
    let eigenpairs: Vec<EigenPair<T>> = EigenLabel::ALL
        .iter()
        .map(|&label| EigenPair {
            label,
            value: cis(label.angle(&angles)),
            vector: eigenvector(label, &angles),
        })
        .collect();
    let d_coeffs = eigenpairs
        .iter()
        .map(|p| p.vector.iter().zip(&d).map(|(v, x)| v.conj() * x).sum())
        .collect();
    ReducedWalkSystem {
        angles,
        u_prime,
        eigenpairs,
        d_coeffs,
    }
}

impl<T: Real> ReducedWalkSystem<T> {
    /// Largest `‖U'v − λv‖` over the analytic eigenpairs.
    pub fn max_residual(&self) -> T {
        self.eigenpairs
            .iter()
            .map(|p| {
                let uv = self.u_prime.apply_raw(&p.vector).expect("dimension 8");
                uv.iter()
                    .zip(&p.vector)
                    .map(|(a, b)| (a - p.value * b).norm_sqr())
                    .sum::<T>()
                    .sqrt()
            })
            .fold(T::zero(), T::max)
    }

    /// `(label, |<λ|D>|²)` from the numeric decomposition.
    pub fn numeric_probabilities(&self) -> Vec<(EigenLabel, T)> {
        self.eigenpairs
            .iter()
            .zip(&self.d_coeffs)
            .map(|(p, z)| (p.label, z.norm_sqr()))
            .collect()
    }

    /// `(label, |<λ|D>|²)` from the closed forms.
    pub fn projection_probabilities(&self) -> Vec<(EigenLabel, T)> {
        EigenLabel::ALL
            .iter()
            .map(|&l| (l, l.probability(&self.angles)))
            .collect()
    }
}

/// Result of comparing `U'` with the full search operator on the span of
/// the reduced basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionCheck<T: Real> {
    /// `max |<a|U|b> − U'_{ab}|`
    pub max_deviation: T,
    /// Largest norm of the part of `U|b>` outside the span.
    pub leakage: T,
}

pub fn verify_reduction<T: Real>(ws: &WalkSpace, bm: &BipartiteMarking) -> Result<ReductionCheck<T>> {
    let basis = reduced_basis::<T>(ws, bm)?;
    let u = search_operator::<T>(ws, bm)?;
    let reduced = reduced_operator(bm.angles::<T>());
    let mut max_deviation = T::zero();
    let mut leakage = T::zero();
    for (b, vb) in basis.iter().enumerate() {
        let image = u.apply(vb)?;
        let mut residual = image.amplitudes().to_vec();
        for (a, va) in basis.iter().enumerate() {
            let m = va.inner(&image)?;
            max_deviation = max_deviation.max((m - reduced.u_prime.entry(a, b)).norm());
            for (r, x) in residual.iter_mut().zip(va.amplitudes()) {
                *r -= m * x;
            }
        }
        let out = residual.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        leakage = leakage.max(out);
    }
    Ok(ReductionCheck {
        max_deviation,
        leakage,
    })
}

/// `|D> = (N d)^{-1/2} Σ_{j,c} |j, c>`
pub fn edge_superposition<T: Real>(ws: &WalkSpace) -> StateVector<T> {
    StateVector::uniform(ws.dims())
}
