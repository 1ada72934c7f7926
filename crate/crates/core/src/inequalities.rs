//! Named checkers for the uncertainty-relation family, each returning an
//! auditable report.
//!
//! Every checker is a pure function of the state and observables. Reports
//! carry the raw sides, the slack, a relative slack, a satisfied flag, and a
//! witness map of the intermediate quantities so a failed check can be
//! audited without rerunning.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::linalg::CVector;
use crate::measures::cc_from_moments;
use crate::qcore::{make_observable, MomentSet, Observable, QuantumState};
use crate::tol::{self, Tolerances};

fn ser_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Outcome of one inequality check.
///
/// `satisfied` is `slack >= -tol_slack * max(1, |lhs|)` for regular reports;
/// degenerate reports (zero deviations, `K^2 = 1`, unconstrained ratios) are
/// marked satisfied with an explanatory note instead of erroring, so large
/// sweeps never die mid-run. An infinite `rhs` is represented explicitly and
/// always flagged degenerate.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    #[serde(serialize_with = "ser_extended")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_extended")]
    pub slack: f64,
    #[serde(serialize_with = "ser_extended")]
    pub rel_slack: f64,
    pub satisfied: bool,
    pub degenerate: Option<String>,
    pub witness: BTreeMap<String, f64>,
}

impl InequalityReport {
    /// Builds a report for a claimed `lhs >= rhs` inequality, computing the
    /// slack and satisfied flag.
    pub fn from_sides(name: impl Into<String>, lhs: f64, rhs: f64, tol: &Tolerances) -> Self {
        let slack = lhs - rhs;
        let norm = 1f64.max(lhs.abs());
        let rel_slack = slack / norm;
        InequalityReport {
            name: name.into(),
            lhs,
            rhs,
            slack,
            rel_slack,
            satisfied: slack >= -tol.slack * norm,
            degenerate: None,
            witness: BTreeMap::new(),
        }
    }

    fn degenerate(name: impl Into<String>, lhs: f64, rhs: f64, note: impl Into<String>) -> Self {
        let slack = lhs - rhs;
        InequalityReport {
            name: name.into(),
            lhs,
            rhs,
            slack,
            rel_slack: slack / 1f64.max(lhs.abs()),
            satisfied: true,
            degenerate: Some(note.into()),
            witness: BTreeMap::new(),
        }
    }

    /// Adds an intermediate quantity to the witness map.
    pub fn with_witness(mut self, key: &str, value: f64) -> Self {
        self.witness.insert(key.to_string(), value);
        self
    }

    fn tagged(mut self, labels: &[&str]) -> Self {
        self.name = format!("{}[{}]", self.name, labels.join(","));
        self
    }
}

fn rs_family_report(
    name: &str,
    dev_lhs: (f64, f64),
    comm_abs: f64,
    k: f64,
    tol: &Tolerances,
) -> InequalityReport {
    let lhs = 2.0 * dev_lhs.0 * dev_lhs.1;
    let k2 = k * k;
    // below ~1e-13 the residual 1 - K^2 is indistinguishable from the
    // rounding of K itself and the ratio on the right is 0/0 noise
    let report = if 1.0 - k2 <= 1e-13 {
        if comm_abs <= tol::NORMALIZATION {
            InequalityReport::degenerate(name, lhs, 0.0, "0/0: K^2 = 1 with vanishing commutator expectation")
        } else {
            InequalityReport::degenerate(
                name,
                lhs,
                f64::INFINITY,
                "K^2 = 1 with nonvanishing commutator expectation (roundoff degeneracy)",
            )
        }
    } else {
        InequalityReport::from_sides(name, lhs, comm_abs / (1.0 - k2).sqrt(), tol)
    };
    report
        .with_witness("dev_a", dev_lhs.0)
        .with_witness("dev_b", dev_lhs.1)
        .with_witness("comm_abs", comm_abs)
        .with_witness("k", k)
}

/// Robertson-Schroedinger in correlation-coefficient form:
/// `2 dA dB >= |<[A,B]>| / sqrt(1 - K(A,B)^2)`.
pub fn check_robertson_schroedinger(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[a, b])?;
    let name = "robertson_schroedinger";
    if m.dev(0) <= tol::ZERO_DEV || m.dev(1) <= tol::ZERO_DEV {
        // an eigenstate of either observable forces <[A,B]> = 0
        let lhs = 2.0 * m.dev(0) * m.dev(1);
        return Ok(InequalityReport::degenerate(name, lhs, 0.0, "zero deviation")
            .with_witness("dev_a", m.dev(0))
            .with_witness("dev_b", m.dev(1))
            .with_witness("comm_abs", m.comm(0, 1).norm()));
    }
    let k = cc_from_moments(&m, 0, 1, a, b)?;
    Ok(rs_family_report(name, (m.dev(0), m.dev(1)), m.comm(0, 1).norm(), k, tol))
}

/// Which member of the pair the third observable partners with in the
/// generalized bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerSide {
    /// `W` effectively compatible with `B`; the bound uses `K(A,W)`.
    PartnerOfB,
    /// `W` effectively compatible with `A`; the bound uses `K(W,B)`.
    PartnerOfA,
}

/// Generalized correlation-coefficient bound: the Robertson-Schroedinger
/// right side with `K(A,B)` replaced by `K(A,W)` (or `K(W,B)`) for any `W`
/// effectively compatible with `B` (resp. `A`).
pub fn check_generalized_cc_bound(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    w: &Observable,
    side: PartnerSide,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[a, b, w])?;
    let (compat_i, compat_j) = match side {
        PartnerSide::PartnerOfB => (1, 2),
        PartnerSide::PartnerOfA => (0, 2),
    };
    let residual = m.comm(compat_i, compat_j).norm();
    let scale = if m.dev(compat_i) > tol::ZERO_DEV && m.dev(compat_j) > tol::ZERO_DEV {
        m.dev(compat_i) * m.dev(compat_j)
    } else {
        1.0
    };
    if residual > tol.compat * scale {
        return Err(CoreError::NotEffectivelyCompatible { residual });
    }
    let k = match side {
        PartnerSide::PartnerOfB => cc_from_moments(&m, 0, 2, a, w)?,
        PartnerSide::PartnerOfA => cc_from_moments(&m, 2, 1, w, b)?,
    };
    Ok(
        rs_family_report("generalized", (m.dev(0), m.dev(1)), m.comm(0, 1).norm(), k, tol)
            .with_witness("compat_residual", residual)
            .with_witness("dev_w", m.dev(2)),
    )
}

const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

/// Asymmetric three-observable relation:
/// `4 dA^2 dB^2 dC^2 >= <i[A,B]>^2 dC^2 + <i[B,C]>^2 dA^2
///  + <{DC,DA}>^2 dB^2 + <i[A,B]><i[B,C]><{DC,DA}>`.
pub fn check_three_observable(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[a, b, c])?;
    let (va, vb, vc) = (m.variance(0), m.variance(1), m.variance(2));
    let iab = m.icomm(0, 1);
    let ibc = m.icomm(1, 2);
    let aca = m.anticomm_dev(2, 0);
    let lhs = 4.0 * va * vb * vc;
    let rhs = iab * iab * vc + ibc * ibc * va + aca * aca * vb + iab * ibc * aca;
    Ok(InequalityReport::from_sides("three_observable", lhs, rhs, tol)
        .with_witness("dev_a", m.dev(0))
        .with_witness("dev_b", m.dev(1))
        .with_witness("dev_c", m.dev(2))
        .with_witness("icomm_ab", iab)
        .with_witness("icomm_bc", ibc)
        .with_witness("anticomm_ca", aca))
}

fn cyclic_lhs(m: &MomentSet) -> f64 {
    CYCLIC
        .iter()
        .map(|&(x, y, z)| {
            m.variance(x)
                * (4.0 * m.variance(y) * m.variance(z)
                    - m.icomm(y, z).powi(2)
                    - m.anticomm_dev(y, z).powi(2))
        })
        .sum()
}

/// Synge-style symmetric three-observable relation with right side
/// `(3/4)|F| + (1/4)F`.
pub fn check_synge(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[a, b, c])?;
    let lhs = cyclic_lhs(&m);
    let f = 8.0 * m.variance(0) * m.variance(1) * m.variance(2)
        - m.anticomm_dev(0, 1) * m.anticomm_dev(1, 2) * m.anticomm_dev(2, 0)
        + CYCLIC
            .iter()
            .map(|&(x, y, z)| m.icomm(x, y) * m.anticomm_dev(y, z) * m.icomm(z, x))
            .sum::<f64>();
    let rhs = 0.75 * f.abs() + 0.25 * f;
    Ok(InequalityReport::from_sides("synge", lhs, rhs, tol).with_witness("f", f))
}

/// Three-observable relation with one distinguished observable. The right
/// side is computed in two readings; the corrected one
/// `|<{DX,DY}><{DX,DZ}>| + |<i[X,Y]><i[X,Z]>|` (symmetric in Y and Z, and
/// derivable from the two pairwise Robertson-Schroedinger relations) drives
/// the satisfied flag, while the reading with `<{DX,DY}>^2` is reported in
/// the witness for comparison.
pub fn check_trifonov(
    state: &QuantumState,
    x: &Observable,
    y: &Observable,
    z: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[x, y, z])?;
    let lhs = 2.0 * m.variance(0) * (m.variance(1) + m.variance(2));
    let rhs_corrected =
        (m.anticomm_dev(0, 1) * m.anticomm_dev(0, 2)).abs() + (m.icomm(0, 1) * m.icomm(0, 2)).abs();
    let rhs_printed =
        m.anticomm_dev(0, 1).powi(2) + (m.icomm(0, 1) * m.icomm(0, 2)).abs();
    Ok(InequalityReport::from_sides("trifonov", lhs, rhs_corrected, tol)
        .with_witness("rhs_corrected", rhs_corrected)
        .with_witness("rhs_printed", rhs_printed))
}

/// Symmetrized sum of the cyclic permutations of the asymmetric
/// three-observable relation. The right side is computed both algebraically
/// and as the squared norm of `sum_cyc <i[B,C]> DA|psi>`; the two must agree.
pub fn check_symmetric_sum(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let psi = state.vector().ok_or(CoreError::NotPure { op: "check_symmetric_sum" })?;
    let m = MomentSet::compute(state, &[a, b, c])?;
    let lhs = cyclic_lhs(&m);
    let rhs_alg = CYCLIC
        .iter()
        .map(|&(x, y, z)| {
            m.variance(x) * m.icomm(y, z).powi(2)
                + m.icomm(x, y) * m.anticomm_dev(y, z) * m.icomm(z, x)
        })
        .sum::<f64>();
    // ||sum_cyc <i[Y,Z]> (X - <X>)|psi>||^2; using DX|psi> directly keeps the
    // form defined even when a deviation vanishes.
    let obs = [a, b, c];
    let mut u = CVector::zeros(psi.len());
    for &(x, y, z) in &CYCLIC {
        let coeff = m.icomm(y, z);
        if coeff != 0.0 {
            let mut w = obs[x].matrix() * psi;
            w -= psi.map(|t| t * Complex64::new(m.mean(x), 0.0));
            u += w.map(|t| t * Complex64::new(coeff, 0.0));
        }
    }
    let rhs_vec = u.norm_squared();
    let delta = (rhs_alg - rhs_vec).abs();
    Ok(InequalityReport::from_sides("symmetric_sum", lhs, rhs_alg, tol)
        .with_witness("rhs_algebraic", rhs_alg)
        .with_witness("rhs_vector", rhs_vec)
        .with_witness("forms_delta", delta))
}

/// The operator `<i[B,C]> A + <i[C,A]> B + <i[A,B]> C`; the symmetric-sum
/// right side vanishes exactly when the state is one of its eigenvectors.
pub fn eigencondition_operator(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<Observable> {
    let m = MomentSet::compute(state, &[a, b, c])?;
    let ca = Complex64::new(m.icomm(1, 2), 0.0);
    let cb = Complex64::new(m.icomm(2, 0), 0.0);
    let cc = Complex64::new(m.icomm(0, 1), 0.0);
    let matrix = a.matrix().map(|z| z * ca) + b.matrix().map(|z| z * cb) + c.matrix().map(|z| z * cc);
    make_observable(
        matrix,
        format!("eigencondition({},{},{})", a.label(), b.label(), c.label()),
    )
}

/// A state transformed as `(I + i beta DB + gamma DC)|psi>` and normalized,
/// together with the overlap angle against the original state.
#[derive(Clone, Debug)]
pub struct TransformedState {
    pub state: QuantumState,
    pub cos_theta: f64,
    pub tan_theta: f64,
}

/// Applies the two-parameter deviation transformation to a pure state.
/// The returned angle satisfies `cos theta = |<psi|psi'>|` and is
/// cross-checked against the directly computed overlap.
pub fn transform_state(
    psi: &QuantumState,
    b: &Observable,
    c: &Observable,
    beta: f64,
    gamma: f64,
) -> Result<TransformedState> {
    let v = psi.vector().ok_or(CoreError::NotPure { op: "transform_state" })?;
    let m = MomentSet::compute(psi, &[b, c])?;
    let radicand =
        1.0 + beta * beta * m.variance(0) + gamma * gamma * m.variance(1) - beta * gamma * m.icomm(0, 1);
    if radicand <= tol::NORMALIZATION {
        return Err(CoreError::DegenerateTransform { radicand });
    }
    let mut w = v.clone();
    if beta != 0.0 {
        let mut db = b.matrix() * v;
        db -= v.map(|t| t * Complex64::new(m.mean(0), 0.0));
        w += db.map(|t| t * Complex64::new(0.0, beta));
    }
    if gamma != 0.0 {
        let mut dc = c.matrix() * v;
        dc -= v.map(|t| t * Complex64::new(m.mean(1), 0.0));
        w += dc.map(|t| t * Complex64::new(gamma, 0.0));
    }
    let state = QuantumState::pure(w)?;
    let cos_theta = 1.0 / radicand.sqrt();
    let tan_theta = (radicand - 1.0).max(0.0).sqrt();
    let direct = v.dotc(state.vector().expect("pure by construction")).norm();
    if (direct - cos_theta).abs() > tol::NORMALIZATION {
        return Err(CoreError::Inconsistent {
            what: "transform overlap vs closed-form cos(theta)".into(),
            delta: (direct - cos_theta).abs(),
        });
    }
    Ok(TransformedState { state, cos_theta, tan_theta })
}

/// Master inequality for two pure states and one observable:
/// `|<A>' - <A>| / (dA' + dA) <= tan theta` with `cos theta = |<psi|psi'>|`.
pub fn check_master_inequality(
    psi: &QuantumState,
    psi_prime: &QuantumState,
    a: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let v = psi.vector().ok_or(CoreError::NotPure { op: "check_master_inequality" })?;
    let vp = psi_prime.vector().ok_or(CoreError::NotPure { op: "check_master_inequality" })?;
    if psi.dim() != psi_prime.dim() {
        return Err(CoreError::DimMismatch { expected: psi.dim(), got: psi_prime.dim() });
    }
    let m = MomentSet::compute(psi, &[a])?;
    let mp = MomentSet::compute(psi_prime, &[a])?;
    let name = "master";
    let cos_theta = v.dotc(vp).norm().min(1.0);
    let num = (mp.mean(0) - m.mean(0)).abs();
    let den = mp.dev(0) + m.dev(0);

    if cos_theta <= tol::NORMALIZATION {
        return Ok(InequalityReport::degenerate(
            name,
            if den > tol::ZERO_DEV { num / den } else { 0.0 },
            f64::INFINITY,
            "orthogonal states: tan(theta) unbounded",
        )
        .with_witness("cos_theta", cos_theta));
    }
    let tan_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt() / cos_theta;
    if den <= tol::ZERO_DEV {
        if num <= tol::NORMALIZATION {
            return Ok(InequalityReport::degenerate(name, 0.0, tan_theta, "0/0: zero deviations with equal means")
                .with_witness("cos_theta", cos_theta));
        }
        // Distinct eigenvectors are orthogonal, which the overlap branch above
        // catches; reaching here means the inputs are numerically inconsistent.
        let mut r = InequalityReport::degenerate(
            name,
            f64::INFINITY,
            tan_theta,
            "zero total deviation with differing means but non-orthogonal states",
        );
        r.satisfied = false;
        return Ok(r.with_witness("cos_theta", cos_theta));
    }
    Ok(InequalityReport::from_sides(name, tan_theta, num / den, tol)
        .with_witness("cos_theta", cos_theta)
        .with_witness("mean_shift", num)
        .with_witness("dev_sum", den))
}

/// Deviation-vector geometry checks for a pure state and a triple with
/// `<[B,C]> = 0`: the unit-disc bound
/// `(Im<psi_A|psi_B>)^2 + (Re<psi_A|psi_C>)^2 <= 1` and the confining-ellipse
/// containment `(1-a^2)x^2 - 2abxy + (1-b^2)y^2 <= 1-a^2-b^2`.
///
/// The headline `lhs`/`rhs` are those of whichever check binds tighter (in
/// normalized slack); the witness carries both plus the raw `(a,b,x,y)`.
pub fn check_geometric(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let m = MomentSet::compute(state, &[b, c])?;
    let residual = m.comm(0, 1).norm();
    let scale = if m.dev(0) > tol::ZERO_DEV && m.dev(1) > tol::ZERO_DEV {
        m.dev(0) * m.dev(1)
    } else {
        1.0
    };
    if residual > tol.compat * scale {
        return Err(CoreError::NotEffectivelyCompatible { residual });
    }
    let g = crate::measures::overlap_geometry(state, a, b, c)?;
    geometric_report_from_overlaps(g.a, g.b, g.x, g.y, residual, tol)
}

/// Builds the geometric report from precomputed overlap components; used by
/// the matrix checker above and by the grid-based continuum computation.
pub fn geometric_report_from_overlaps(
    a: f64,
    b: f64,
    x: f64,
    y: f64,
    compat_residual: f64,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let circle_lhs = 1.0;
    let circle_rhs = b * b + x * x;
    let ellipse_lhs = 1.0 - a * a - b * b;
    let ellipse_rhs = (1.0 - a * a) * x * x - 2.0 * a * b * x * y + (1.0 - b * b) * y * y;
    let circle_rel = (circle_lhs - circle_rhs) / 1f64.max(circle_lhs.abs());
    let ellipse_rel = (ellipse_lhs - ellipse_rhs) / 1f64.max(ellipse_lhs.abs());
    let circle_binds = circle_rel <= ellipse_rel;
    let (lhs, rhs) = if circle_binds { (circle_lhs, circle_rhs) } else { (ellipse_lhs, ellipse_rhs) };
    let mut report = InequalityReport::from_sides("geometric", lhs, rhs, tol);
    report.satisfied = circle_rel >= -tol.slack && ellipse_rel >= -tol.slack;
    Ok(report
        .with_witness("a", a)
        .with_witness("b", b)
        .with_witness("x", x)
        .with_witness("y", y)
        .with_witness("circle_lhs", circle_lhs)
        .with_witness("circle_rhs", circle_rhs)
        .with_witness("ellipse_lhs", ellipse_lhs)
        .with_witness("ellipse_rhs", ellipse_rhs)
        .with_witness("compat_residual", compat_residual)
        .with_witness("binding_circle", if circle_binds { 1.0 } else { 0.0 }))
}

/// Checker selector for suites and sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerKind {
    RobertsonSchroedinger,
    Generalized,
    ThreeObservable,
    Synge,
    Trifonov,
    SymmetricSum,
    Master,
    Geometric,
}

impl CheckerKind {
    pub const ALL: [CheckerKind; 8] = [
        CheckerKind::RobertsonSchroedinger,
        CheckerKind::Generalized,
        CheckerKind::ThreeObservable,
        CheckerKind::Synge,
        CheckerKind::Trifonov,
        CheckerKind::SymmetricSum,
        CheckerKind::Master,
        CheckerKind::Geometric,
    ];

    /// Checkers a single-state suite can run (master needs a state pair).
    pub const SUITE: [CheckerKind; 7] = [
        CheckerKind::RobertsonSchroedinger,
        CheckerKind::Generalized,
        CheckerKind::ThreeObservable,
        CheckerKind::Synge,
        CheckerKind::Trifonov,
        CheckerKind::SymmetricSum,
        CheckerKind::Geometric,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckerKind::RobertsonSchroedinger => "robertson_schroedinger",
            CheckerKind::Generalized => "generalized",
            CheckerKind::ThreeObservable => "three_observable",
            CheckerKind::Synge => "synge",
            CheckerKind::Trifonov => "trifonov",
            CheckerKind::SymmetricSum => "symmetric_sum",
            CheckerKind::Master => "master",
            CheckerKind::Geometric => "geometric",
        }
    }
}

impl fmt::Display for CheckerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "rs" | "robertson_schroedinger" => Ok(CheckerKind::RobertsonSchroedinger),
            "generalized" => Ok(CheckerKind::Generalized),
            "three_observable" => Ok(CheckerKind::ThreeObservable),
            "synge" => Ok(CheckerKind::Synge),
            "trifonov" => Ok(CheckerKind::Trifonov),
            "symmetric_sum" => Ok(CheckerKind::SymmetricSum),
            "master" => Ok(CheckerKind::Master),
            "geometric" => Ok(CheckerKind::Geometric),
            other => Err(format!("unknown checker '{other}'")),
        }
    }
}

/// Options for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Checkers to run; empty means every applicable suite checker.
    pub checkers: Vec<CheckerKind>,
    /// Cap on the number of three-observable combinations enumerated per
    /// checker (in label order). Zero restricts the suite to pair checks.
    pub max_triples: usize,
    pub tol: Tolerances,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { checkers: Vec::new(), max_triples: usize::MAX, tol: Tolerances::default() }
    }
}

fn error_report(kind: CheckerKind, labels: &[&str], err: &CoreError) -> InequalityReport {
    InequalityReport::degenerate(kind.name(), 0.0, 0.0, format!("skipped: {err}")).tagged(labels)
}

/// Runs the selected checkers over all pairs/triples of the labeled
/// observables, in deterministic label order. Per-check errors become
/// degenerate reports; the suite itself only fails on invalid input.
pub fn run_suite(
    state: &QuantumState,
    observables: &[(String, Observable)],
    options: &SuiteOptions,
) -> Result<Vec<InequalityReport>> {
    if observables.len() < 2 {
        return Err(CoreError::InvalidParameter {
            what: format!("suite needs at least 2 observables, got {}", observables.len()),
        });
    }
    for (_, o) in observables {
        if o.dim() != state.dim() {
            return Err(CoreError::DimMismatch { expected: state.dim(), got: o.dim() });
        }
    }
    let mut order: Vec<usize> = (0..observables.len()).collect();
    order.sort_by(|&i, &j| observables[i].0.cmp(&observables[j].0));
    let obs: Vec<(&str, &Observable)> =
        order.iter().map(|&i| (observables[i].0.as_str(), &observables[i].1)).collect();

    let checkers: Vec<CheckerKind> = if options.checkers.is_empty() {
        CheckerKind::SUITE.to_vec()
    } else {
        options.checkers.clone()
    };
    let tol = &options.tol;
    let n = obs.len();
    let mut reports = Vec::new();

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let mut ordered_triples = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    ordered_triples.push((i, j, k));
                }
            }
        }
    }
    ordered_triples.truncate(options.max_triples);
    let mut unordered_triples = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                unordered_triples.push((i, j, k));
            }
        }
    }
    unordered_triples.truncate(options.max_triples);
    // distinguished-first triples for the checker symmetric in its last two
    let mut pivot_triples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in (y + 1)..n {
                if y != x && z != x {
                    pivot_triples.push((x, y, z));
                }
            }
        }
    }
    pivot_triples.truncate(options.max_triples);

    for kind in checkers {
        match kind {
            CheckerKind::RobertsonSchroedinger => {
                for &(i, j) in &pairs {
                    let labels = [obs[i].0, obs[j].0];
                    let r = check_robertson_schroedinger(state, obs[i].1, obs[j].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::Generalized => {
                for &(i, j, k) in &ordered_triples {
                    // applicable only when W is effectively compatible with B
                    match crate::measures::effective_compatibility_with(
                        state, obs[j].1, obs[k].1, tol.compat,
                    ) {
                        Ok((true, _)) => {}
                        _ => continue,
                    }
                    let labels = [obs[i].0, obs[j].0, obs[k].0];
                    let r = check_generalized_cc_bound(
                        state,
                        obs[i].1,
                        obs[j].1,
                        obs[k].1,
                        PartnerSide::PartnerOfB,
                        tol,
                    )
                    .map(|r| r.tagged(&labels))
                    .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::ThreeObservable => {
                for &(i, j, k) in &ordered_triples {
                    let labels = [obs[i].0, obs[j].0, obs[k].0];
                    let r = check_three_observable(state, obs[i].1, obs[j].1, obs[k].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::Synge => {
                for &(i, j, k) in &unordered_triples {
                    let labels = [obs[i].0, obs[j].0, obs[k].0];
                    let r = check_synge(state, obs[i].1, obs[j].1, obs[k].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::Trifonov => {
                for &(x, y, z) in &pivot_triples {
                    let labels = [obs[x].0, obs[y].0, obs[z].0];
                    let r = check_trifonov(state, obs[x].1, obs[y].1, obs[z].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::SymmetricSum => {
                for &(i, j, k) in &unordered_triples {
                    let labels = [obs[i].0, obs[j].0, obs[k].0];
                    let r = check_symmetric_sum(state, obs[i].1, obs[j].1, obs[k].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::Geometric => {
                for &(i, j, k) in &ordered_triples {
                    match crate::measures::effective_compatibility_with(
                        state, obs[j].1, obs[k].1, tol.compat,
                    ) {
                        Ok((true, _)) => {}
                        _ => continue,
                    }
                    let labels = [obs[i].0, obs[j].0, obs[k].0];
                    let r = check_geometric(state, obs[i].1, obs[j].1, obs[k].1, tol)
                        .map(|r| r.tagged(&labels))
                        .unwrap_or_else(|e| error_report(kind, &labels, &e));
                    reports.push(r);
                }
            }
            CheckerKind::Master => {
                // needs a pair of states; not applicable to a single-state suite
            }
        }
    }
    Ok(reports)
}
