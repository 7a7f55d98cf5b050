//! Vectorial and scalar comparison functions and the scalarizing transfer.
//!
//! A vectorial comparison function `phi : K -> K` shrinks cone members:
//! it is increasing for the cone order, fixes the origin, stays strictly
//! below the identity on `K \ {theta}`, preserves the interior, and is
//! right-continuous along rays.  A scalar comparison function does the same
//! on `[0, inf)`.
//!
//! The bridge between the two worlds is the transfer
//!
//! ```text
//! psi(t) = xi_e(phi(t e)),
//! ```
//!
//! which turns a vectorial comparison over `(K, e)` into a scalar one and
//! satisfies `xi_e(phi(p)) <= psi(xi_e(p))` for every `p` in `K`.  For the
//! linear family `phi(k) = lambda k` the transfer is exactly
//! `psi(t) = lambda t`, for any cone and any valid direction.
//!
//! [`ScalarComparison::check_lemma21`] probes the equivalence, valid for
//! increasing right-continuous maps, between "iterates vanish everywhere"
//! and "strictly below the identity everywhere"; a failed direction is
//! evidence that a declared hypothesis does not actually hold.

use serde::{Deserialize, Serialize};
use serde_json::json;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::{Cone, ConeKind, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::report::{CheckBuilder, PropertyReport};
use crate::sample;
use crate::scalarize::Scalarizer;
use crate::vector::Vector;

/// Scalar building blocks for componentwise comparisons and builtin scalar
/// comparison functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ScalarFn {
    /// `t -> c t`.
    Scale { c: f64 },
    /// `t -> t / (1 + t)`.
    RationalDecay,
    /// `t -> t^p`, `p > 0`.
    Pow { p: f64 },
    /// `t -> t`.
    Identity,
    /// `t -> t/2` up to 1, then `(t + 1)/2`: increasing, strictly below the
    /// identity, but not right-continuous at 1 (iterates stall above 1).
    JumpAtOne,
}

impl ScalarFn {
    /// Structural validity of the parameters (not comparison-ness).
    pub fn validate(&self) -> Result<()> {
        match self {
            ScalarFn::Scale { c } => {
                if !c.is_finite() || *c < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "scale factor must be finite and nonnegative, got {c}"
                    )));
                }
            }
            ScalarFn::Pow { p } => {
                if !p.is_finite() || *p <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "power must be finite and positive, got {p}"
                    )));
                }
            }
            ScalarFn::RationalDecay | ScalarFn::Identity | ScalarFn::JumpAtOne => {}
        }
        Ok(())
    }

    /// Evaluation on `[0, inf)`; negative input is clamped to zero so that
    /// membership-tolerance noise cannot leak through.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match self {
            ScalarFn::Scale { c } => c * t,
            ScalarFn::RationalDecay => t / (1.0 + t),
            ScalarFn::Pow { p } => t.powf(*p),
            ScalarFn::Identity => t,
            ScalarFn::JumpAtOne => {
                if t <= 1.0 {
                    0.5 * t
                } else {
                    0.5 * (t + 1.0)
                }
            }
        }
    }

    /// Honest (increasing, right-continuous) declarations per builtin.
    pub fn declared_flags(&self) -> (bool, bool) {
        match self {
            ScalarFn::Scale { .. }
            | ScalarFn::RationalDecay
            | ScalarFn::Pow { .. }
            | ScalarFn::Identity => (true, true),
            ScalarFn::JumpAtOne => (true, false),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum VcKind {
    Linear { lambda: f64 },
    Componentwise { components: Vec<ScalarFn> },
}

/// A candidate vectorial comparison function over a fixed cone.
///
/// Construction enforces only structural rules (factor range, orthant-only
/// componentwise, matching dimensions); whether the map really is a
/// comparison function is the business of [`VectorialComparison::verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct VectorialComparison {
    cone: Cone,
    kind: VcKind,
}

impl VectorialComparison {
    /// The linear family `phi(k) = lambda k`, `0 <= lambda < 1`.
    pub fn linear(cone: Cone, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || !(0.0..1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        Ok(Self {
            cone,
            kind: VcKind::Linear { lambda },
        })
    }

    /// Componentwise `phi(k)_i = phi_i(k_i)`, which respects the cone order
    /// only when coordinates are ordered independently, hence orthant-only.
    pub fn componentwise(cone: Cone, components: Vec<ScalarFn>) -> Result<Self> {
        if !matches!(cone.kind(), ConeKind::Orthant { .. }) {
            return Err(Error::ComponentwiseNeedsOrthant);
        }
        if components.len() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: components.len(),
            });
        }
        for component in &components {
            component.validate()?;
        }
        Ok(Self {
            cone,
            kind: VcKind::Componentwise { components },
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// The linear factor, when this is the linear family.
    pub fn lambda(&self) -> Option<f64> {
        match &self.kind {
            VcKind::Linear { lambda } => Some(*lambda),
            VcKind::Componentwise { .. } => None,
        }
    }

    /// Applies the map to a cone member.  Arguments outside the cone (at
    /// tolerance) are rejected: comparison functions are maps on `K`.
    pub fn apply(&self, k: &Vector) -> Result<Vector> {
        let slack = self.cone.slack(k)?;
        if !self.cone.contains(k)? {
            return Err(Error::OutsideCone { slack });
        }
        match &self.kind {
            VcKind::Linear { lambda } => Ok(k.scale(*lambda)),
            VcKind::Componentwise { components } => Vector::new(
                components
                    .iter()
                    .zip(k.coords())
                    .map(|(f, c)| f.eval(*c))
                    .collect(),
            ),
        }
    }

    /// Randomized check of the comparison-function properties:
    ///
    /// * (i)   monotone: `k1 <= k2` in the cone order implies
    ///   `phi(k1) <= phi(k2)`;
    /// * (ii)  `phi(theta) = theta`, and `theta <= phi(k) < k` for members
    ///   `k != theta` (strictness judged at tolerance, so draws with
    ///   `||k|| < 1e-3` are skipped: maps with quadratic contact at the
    ///   origin, like `t/(1+t)`, are numerically indistinguishable from the
    ///   identity below that);
    /// * (iii) interior preservation: `theta << k` implies `phi(k) << k`;
    /// * (iv)  right-continuity along rays `t -> phi(t u)` at a fixed grid
    ///   of parameters, with step 1e-8 and discrepancy bound 1e-6.
    pub fn verify(&self, samples: usize, seed: u64) -> PropertyReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = PropertyReport::new();
        let apply_total = |k: &Vector| {
            self.apply(k)
                .expect("sampled cone members are valid arguments")
        };

        let mut monotone = CheckBuilder::new("i_monotone");
        let mut below = CheckBuilder::new("ii_zero_fixed_and_strictly_below");
        let mut interior = CheckBuilder::new("iii_interior_preserving");

        let zero = Vector::zeros(self.cone.dim());
        let phi_zero = apply_total(&zero);
        below.record(phi_zero.norm() - 1e-12, || {
            json!({ "phi_zero": phi_zero.coords() })
        });

        for _ in 0..samples {
            let k1 = sample::member(&self.cone, &mut rng);
            let step = sample::member(&self.cone, &mut rng);
            let k2 = &k1 + &step;
            let ordered = self
                .cone
                .leq(&apply_total(&k1), &apply_total(&k2))
                .expect("images share the cone dimension");
            monotone.record_bool(ordered, || {
                json!({
                    "k1": k1.coords(),
                    "k2": k2.coords(),
                    "phi_k1": apply_total(&k1).coords(),
                    "phi_k2": apply_total(&k2).coords(),
                })
            });

            if k1.norm() >= 1e-3 {
                let image = apply_total(&k1);
                let in_cone = self.cone.contains(&image).expect("same dimension");
                let strictly_below = self.cone.lt(&image, &k1).expect("same dimension");
                below.record_bool(in_cone && strictly_below, || {
                    json!({ "k": k1.coords(), "phi_k": image.coords() })
                });
            }

            let inner = sample::interior_member(&self.cone, &mut rng, 1e-2);
            let image = apply_total(&inner);
            let strict_inside = self.cone.ll(&image, &inner).expect("same dimension");
            interior.record_bool(strict_inside, || {
                json!({ "k": inner.coords(), "phi_k": image.coords() })
            });
        }

        report.push(monotone.finish());
        report.push(below.finish());
        report.push(interior.finish());

        let mut continuity = CheckBuilder::new("iv_ray_right_continuity");
        let mut directions = vec![self.cone.e().clone()];
        directions.push(sample::member(&self.cone, &mut rng));
        directions.push(sample::member(&self.cone, &mut rng));
        let mut params = vec![0.0, 0.25, 0.5, 1.0, 2.0, 5.0];
        for _ in 0..4 {
            params.push(sample::abs_normal(&mut rng, 2.0));
        }
        for u in &directions {
            if u.norm() <= MEMBERSHIP_TOL {
                continue;
            }
            for &t0 in &params {
                let at = apply_total(&u.scale(t0));
                let after = apply_total(&u.scale(t0 + 1e-8));
                let discrepancy = (&after - &at).norm();
                continuity.record(discrepancy - 1e-6 * (1.0 + at.norm()), || {
                    json!({
                        "direction": u.coords(),
                        "t": t0,
                        "phi_at": at.coords(),
                        "phi_after": after.coords(),
                        "discrepancy": discrepancy,
                    })
                });
            }
        }
        report.push(continuity.finish());

        report
    }
}

/// Builds the scalar transfer `psi(t) = xi_e(phi(t e))` of a vectorial
/// comparison.  The scalarizer must live over the same cone as `phi`.
pub fn transfer_psi(vc: &VectorialComparison, s: &Scalarizer) -> Result<ScalarComparison> {
    if vc.cone() != s.cone() {
        return Err(Error::ConeMismatch(
            "comparison function and scalarizer use different cones".into(),
        ));
    }
    Ok(ScalarComparison {
        kind: ScKind::Transferred {
            vc: vc.clone(),
            scalarizer: s.clone(),
        },
        declared_increasing: true,
        declared_right_usc: true,
    })
}

#[derive(Clone, Debug)]
enum ScKind {
    Builtin(ScalarFn),
    Transferred {
        vc: VectorialComparison,
        scalarizer: Scalarizer,
    },
}

/// A candidate scalar comparison function on `[0, inf)`.
///
/// Carries declared monotonicity and right-continuity flags: builtins
/// declare honestly, transfers declare both by construction, and tests can
/// override the declaration to model a wrong claim.
#[derive(Clone, Debug)]
pub struct ScalarComparison {
    kind: ScKind,
    declared_increasing: bool,
    declared_right_usc: bool,
}

impl ScalarComparison {
    pub fn builtin(f: ScalarFn) -> Result<Self> {
        f.validate()?;
        let (declared_increasing, declared_right_usc) = f.declared_flags();
        Ok(Self {
            kind: ScKind::Builtin(f),
            declared_increasing,
            declared_right_usc,
        })
    }

    /// Overrides the declared hypothesis flags (test instrumentation).
    pub fn with_declared_flags(mut self, increasing: bool, right_usc: bool) -> Self {
        self.declared_increasing = increasing;
        self.declared_right_usc = right_usc;
        self
    }

    pub fn declared_increasing(&self) -> bool {
        self.declared_increasing
    }

    pub fn declared_right_usc(&self) -> bool {
        self.declared_right_usc
    }

    /// "builtin" or "transferred".
    pub fn provenance(&self) -> &'static str {
        match &self.kind {
            ScKind::Builtin(_) => "builtin",
            ScKind::Transferred { .. } => "transferred",
        }
    }

    /// Evaluation on `[0, inf)`; negative input is clamped to zero.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match &self.kind {
            ScKind::Builtin(f) => f.eval(t),
            ScKind::Transferred { vc, scalarizer } => {
                let lifted = scalarizer.embed(t).expect("t is finite and nonnegative");
                let image = vc.apply(&lifted).expect("t e is a cone member");
                scalarizer.xi(&image).expect("images stay in dimension")
            }
        }
    }

    /// The n-th iterate `psi^n(t)`.
    pub fn iterate(&self, t: f64, n: usize) -> f64 {
        let mut v = t.max(0.0);
        for _ in 0..n {
            v = self.eval(v);
        }
        v
    }

    /// Iterates from `t` for up to `n_max` steps, classifying the tail.
    ///
    /// The sequence counts as vanished once it falls to `1e-6 * t`.  A step
    /// whose relative progress is below 1e-14 while still above that target
    /// is classified as stalled: reaching the target from there would take
    /// upwards of 1e14 further steps, and cutting off early keeps plateaus
    /// at positive values observable.  (Floating point iterates otherwise
    /// collapse onto a plateau value exactly after ~50 halvings and may then
    /// tunnel through a discontinuity located there.)
    fn decay_probe(&self, t: f64, n_max: usize) -> DecayProbe {
        let target = 1e-6 * t;
        let mut v = t;
        let mut probe = DecayProbe {
            vanished: false,
            final_value: t,
            rose: None,
            stalled_at: None,
        };
        for _ in 0..n_max {
            let next = self.eval(v);
            if next > v + 1e-15 * (1.0 + v) {
                probe.rose = Some((v, next));
                break;
            }
            if next <= target {
                probe.vanished = true;
                v = next;
                break;
            }
            if v - next <= 1e-14 * v {
                probe.stalled_at = Some(next);
                v = next;
                break;
            }
            v = next;
        }
        probe.final_value = v;
        probe
    }

    /// Checks the scalar comparison properties on a positive grid:
    ///
    /// * (i)   monotone along the sorted grid;
    /// * (ii)  `0 <= psi(t) < t` at every grid point;
    /// * (iii) iterates are nonincreasing and fall below `1e-6 * t` within
    ///   `n_max` steps.
    pub fn verify(&self, t_grid: &[f64], n_max: usize) -> Result<PropertyReport> {
        let grid = validated_grid(t_grid, n_max)?;
        let mut report = PropertyReport::new();

        let mut monotone = CheckBuilder::new("i_monotone_on_grid");
        for pair in grid.windows(2) {
            let (a, b) = (self.eval(pair[0]), self.eval(pair[1]));
            monotone.record(a - b - 1e-12 * (1.0 + b.abs()), || {
                json!({ "t1": pair[0], "t2": pair[1], "psi_t1": a, "psi_t2": b })
            });
        }
        report.push(monotone.finish());

        let mut below = CheckBuilder::new("ii_bounded_and_strictly_below_identity");
        for &t in &grid {
            let v = self.eval(t);
            let violation = (-v).max(v - t + 1e-15 * (1.0 + t));
            below.record(violation, || json!({ "t": t, "psi_t": v }));
        }
        report.push(below.finish());

        let mut vanish = CheckBuilder::new("iii_iterates_vanish");
        for &t in &grid {
            let probe = self.decay_probe(t, n_max);
            vanish.record_bool(probe.vanished, || {
                json!({
                    "t": t,
                    "final": probe.final_value,
                    "target": 1e-6 * t,
                    "rose": probe.rose.map(|(a, b)| json!({ "from": a, "to": b })),
                    "stalled_at": probe.stalled_at,
                })
            });
        }
        report.push(vanish.finish());

        Ok(report)
    }

    /// Probes the equivalence, for declared increasing right-continuous
    /// maps, between "psi(t) < t everywhere" and "iterates of psi vanish
    /// everywhere", on the given grid:
    ///
    /// * `a_strict_drop_implies_decay`: when the strict drop holds on the
    ///   whole grid, iterates must vanish from every grid point;
    /// * `b_decay_implies_strict_drop`: when iterates vanish from every
    ///   grid point, the strict drop must hold at each one.
    ///
    /// Each direction is vacuous (zero trials) when its hypothesis fails;
    /// a reported failure is evidence that a declared hypothesis is wrong.
    pub fn check_lemma21(&self, t_grid: &[f64], n_max: usize) -> Result<PropertyReport> {
        if !(self.declared_increasing && self.declared_right_usc) {
            return Err(Error::HypothesesNotDeclared);
        }
        let grid = validated_grid(t_grid, n_max)?;

        let drops: Vec<bool> = grid
            .iter()
            .map(|&t| self.eval(t) < t - 1e-12 * (1.0 + t))
            .collect();
        let decays: Vec<bool> = grid
            .iter()
            .map(|&t| self.decay_probe(t, n_max).vanished)
            .collect();
        let all_drop = drops.iter().all(|&d| d);
        let all_decay = decays.iter().all(|&d| d);

        let mut report = PropertyReport::new();
        let mut forward = CheckBuilder::new("a_strict_drop_implies_decay");
        if all_drop {
            for (&t, &decay) in grid.iter().zip(&decays) {
                forward.record_bool(decay, || {
                    json!({ "t": t, "note": "strict drop holds on the grid but iterates do not vanish" })
                });
            }
        }
        report.push(forward.finish());

        let mut converse = CheckBuilder::new("b_decay_implies_strict_drop");
        if all_decay {
            for (&t, &drop) in grid.iter().zip(&drops) {
                converse.record_bool(drop, || {
                    json!({ "t": t, "psi_t": self.eval(t), "note": "iterates vanish but psi(t) is not strictly below t" })
                });
            }
        }
        report.push(converse.finish());

        Ok(report)
    }
}

struct DecayProbe {
    vanished: bool,
    final_value: f64,
    rose: Option<(f64, f64)>,
    stalled_at: Option<f64>,
}

fn validated_grid(t_grid: &[f64], n_max: usize) -> Result<Vec<f64>> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParameter("empty parameter grid".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    for &t in t_grid {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "grid points must be positive and finite, got {t}"
            )));
        }
    }
    let mut grid = t_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).expect("grid points are finite"));
    Ok(grid)
}

/// Logarithmically spaced grid from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2, "bad log grid parameters");
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn orthant2() -> Cone {
        Cone::orthant(2).unwrap()
    }

    #[test]
    fn linear_construction_bounds() {
        assert!(VectorialComparison::linear(orthant2(), 0.0).is_ok());
        assert!(VectorialComparison::linear(orthant2(), 0.999).is_ok());
        assert!(matches!(
            VectorialComparison::linear(orthant2(), 1.0),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!(VectorialComparison::linear(orthant2(), -0.1).is_err());
        assert!(VectorialComparison::linear(orthant2(), f64::NAN).is_err());
    }

    #[test]
    fn componentwise_requires_orthant_and_matching_arity() {
        let comps = vec![ScalarFn::Scale { c: 0.5 }, ScalarFn::RationalDecay];
        assert!(VectorialComparison::componentwise(orthant2(), comps.clone()).is_ok());
        assert!(matches!(
            VectorialComparison::componentwise(Cone::lorentz(3).unwrap(), comps.clone()),
            Err(Error::ComponentwiseNeedsOrthant)
        ));
        assert!(matches!(
            VectorialComparison::componentwise(Cone::orthant(3).unwrap(), comps),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(VectorialComparison::componentwise(
            orthant2(),
            vec![ScalarFn::Pow { p: 0.0 }, ScalarFn::Identity]
        )
        .is_err());
    }

    #[test]
    fn apply_frozen_values() {
        let vc = VectorialComparison::linear(orthant2(), 0.5).unwrap();
        let k = Vector::from_slice(&[2.0, 4.0]).unwrap();
        assert_eq!(vc.apply(&k).unwrap().coords(), &[1.0, 2.0]);

        let cw = VectorialComparison::componentwise(
            orthant2(),
            vec![ScalarFn::Scale { c: 0.5 }, ScalarFn::RationalDecay],
        )
        .unwrap();
        let k = Vector::from_slice(&[1.0, 1.0]).unwrap();
        assert_eq!(cw.apply(&k).unwrap().coords(), &[0.5, 0.5]);
        let k = Vector::from_slice(&[2.0, 3.0]).unwrap();
        assert_eq!(cw.apply(&k).unwrap().coords(), &[1.0, 0.75]);
    }

    #[test]
    fn apply_rejects_outside_arguments() {
        let vc = VectorialComparison::linear(orthant2(), 0.5).unwrap();
        let outside = Vector::from_slice(&[-1.0, 1.0]).unwrap();
        assert!(matches!(vc.apply(&outside), Err(Error::OutsideCone { .. })));
        // Tolerance-level noise is accepted and clamps through componentwise.
        let noisy = Vector::from_slice(&[-1e-12, 1.0]).unwrap();
        assert!(vc.apply(&noisy).is_ok());
    }

    #[test]
    fn verify_passes_for_genuine_comparisons() {
        let candidates = [
            VectorialComparison::linear(orthant2(), 0.5).unwrap(),
            VectorialComparison::linear(orthant2(), 0.0).unwrap(),
            VectorialComparison::linear(Cone::lorentz(3).unwrap(), 0.7).unwrap(),
            VectorialComparison::componentwise(
                orthant2(),
                vec![ScalarFn::Scale { c: 0.5 }, ScalarFn::RationalDecay],
            )
            .unwrap(),
        ];
        for vc in candidates {
            let report = vc.verify(300, 17);
            assert!(report.passed(), "{:?}\n{}", vc, report.summary());
        }
    }

    #[test]
    fn verify_flags_identity_component() {
        let vc = VectorialComparison::componentwise(
            orthant2(),
            vec![ScalarFn::Identity, ScalarFn::Scale { c: 0.5 }],
        )
        .unwrap();
        let report = vc.verify(300, 18);
        // (0, k2/2) is never interior, so (iii) must catch the identity leg.
        assert!(!report.check("iii_interior_preserving").unwrap().passed());
    }

    #[test]
    fn verify_flags_jump_discontinuity() {
        let vc = VectorialComparison::componentwise(
            orthant2(),
            vec![ScalarFn::JumpAtOne, ScalarFn::Scale { c: 0.5 }],
        )
        .unwrap();
        let report = vc.verify(300, 19);
        assert!(!report.check("iv_ray_right_continuity").unwrap().passed());
    }

    #[test]
    fn transfer_of_linear_is_linear_on_every_family() {
        let cones = [
            orthant2(),
            Cone::orthant(5).unwrap(),
            Cone::lorentz(3).unwrap(),
            Cone::halfspace(vec![
                Vector::from_slice(&[1.0, 0.3]).unwrap(),
                Vector::from_slice(&[-0.2, 1.0]).unwrap(),
            ])
            .unwrap(),
        ];
        for cone in cones {
            let s = Scalarizer::new(cone.clone());
            let vc = VectorialComparison::linear(cone, 0.5).unwrap();
            let psi = transfer_psi(&vc, &s).unwrap();
            assert_eq!(psi.provenance(), "transferred");
            for t in [0.0, 0.1, 1.0, 2.0, 35.0] {
                assert_relative_eq!(psi.eval(t), 0.5 * t, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn transfer_frozen_componentwise_values() {
        let s = Scalarizer::new(orthant2());
        let vc = VectorialComparison::componentwise(
            orthant2(),
            vec![ScalarFn::Scale { c: 0.5 }, ScalarFn::RationalDecay],
        )
        .unwrap();
        let psi = transfer_psi(&vc, &s).unwrap();
        // psi(t) = max(t/2, t/(1+t)).
        assert_relative_eq!(psi.eval(1.0), 0.5);
        assert_relative_eq!(psi.eval(2.0), 1.0);
        assert_relative_eq!(psi.eval(0.5), 0.5 / 1.5);
    }

    #[test]
    fn transfer_requires_matching_cones() {
        let s = Scalarizer::new(Cone::orthant(3).unwrap());
        let vc = VectorialComparison::linear(orthant2(), 0.5).unwrap();
        assert!(matches!(
            transfer_psi(&vc, &s),
            Err(Error::ConeMismatch(_))
        ));
    }

    #[test]
    fn transfer_dominates_scalarized_images() {
        // xi(phi(p)) <= psi(xi(p)) for cone members p.
        let cone = orthant2();
        let s = Scalarizer::new(cone.clone());
        let vc = VectorialComparison::componentwise(
            cone,
            vec![ScalarFn::Scale { c: 0.7 }, ScalarFn::RationalDecay],
        )
        .unwrap();
        let psi = transfer_psi(&vc, &s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let p = sample::member(vc.cone(), &mut rng);
            let lhs = s.xi(&vc.apply(&p).unwrap()).unwrap();
            let rhs = psi.eval(s.xi(&p).unwrap());
            assert!(lhs <= rhs + 1e-9, "{lhs} > {rhs} at {p}");
        }
    }

    #[test]
    fn scalar_verify_accepts_geometric_decay() {
        let grid = log_grid(1e-3, 1e3, 25);
        let geometric = ScalarComparison::builtin(ScalarFn::Scale { c: 0.5 }).unwrap();
        let report = geometric.verify(&grid, 200).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn scalar_verify_accepts_slow_rational_decay() {
        // psi^n(1) = 1/(1+n): the 1e-6 target needs the full million steps.
        let rational = ScalarComparison::builtin(ScalarFn::RationalDecay).unwrap();
        let report = rational.verify(&[1.0], 1_000_010).unwrap();
        assert!(report.passed(), "{}", report.summary());
        // With a small budget the same map must be reported as not vanishing.
        let short = rational.verify(&[1.0], 1000).unwrap();
        assert!(!short.check("iii_iterates_vanish").unwrap().passed());
    }

    #[test]
    fn scalar_verify_rejects_identity() {
        let grid = log_grid(1e-2, 1e2, 9);
        let identity = ScalarComparison::builtin(ScalarFn::Identity).unwrap();
        let report = identity.verify(&grid, 100).unwrap();
        assert!(!report
            .check("ii_bounded_and_strictly_below_identity")
            .unwrap()
            .passed());
        assert!(!report.check("iii_iterates_vanish").unwrap().passed());
    }

    #[test]
    fn grid_validation_errors() {
        let sc = ScalarComparison::builtin(ScalarFn::Identity).unwrap();
        assert!(sc.verify(&[], 10).is_err());
        assert!(sc.verify(&[1.0], 0).is_err());
        assert!(sc.verify(&[0.0], 10).is_err());
        assert!(sc.verify(&[-1.0], 10).is_err());
        assert!(sc.verify(&[f64::NAN], 10).is_err());
    }

    #[test]
    fn lemma21_consistent_for_geometric_decay() {
        let grid = log_grid(1e-3, 1e3, 21);
        let sc = ScalarComparison::builtin(ScalarFn::Scale { c: 0.5 }).unwrap();
        let report = sc.check_lemma21(&grid, 2000).unwrap();
        assert!(report.passed(), "{}", report.summary());
        // Both directions actually ran.
        assert_eq!(
            report.check("a_strict_drop_implies_decay").unwrap().trials,
            21
        );
        assert_eq!(
            report.check("b_decay_implies_strict_drop").unwrap().trials,
            21
        );
    }

    #[test]
    fn lemma21_vacuous_for_identity() {
        let grid = log_grid(1e-2, 1e2, 11);
        let sc = ScalarComparison::builtin(ScalarFn::Identity).unwrap();
        let report = sc.check_lemma21(&grid, 500).unwrap();
        // Neither side's hypothesis holds: no violation, zero trials.
        assert!(report.passed());
        assert_eq!(
            report.check("a_strict_drop_implies_decay").unwrap().trials,
            0
        );
        assert_eq!(
            report.check("b_decay_implies_strict_drop").unwrap().trials,
            0
        );
    }

    #[test]
    fn lemma21_detects_missing_right_continuity() {
        // The jump map drops strictly below the identity everywhere, yet
        // iterates from t > 1 stall at 1: the forward direction fails, which
        // is exactly the fingerprint of the (wrongly) declared hypothesis.
        let grid = vec![0.5, 1.0, 3.0, 10.0];
        let sc = ScalarComparison::builtin(ScalarFn::JumpAtOne)
            .unwrap()
            .with_declared_flags(true, true);
        let report = sc.check_lemma21(&grid, 2000).unwrap();
        let forward = report.check("a_strict_drop_implies_decay").unwrap();
        assert!(!forward.passed());
        assert!(forward.witness.is_some());
    }

    #[test]
    fn lemma21_requires_declared_hypotheses() {
        let sc = ScalarComparison::builtin(ScalarFn::JumpAtOne).unwrap();
        assert!(matches!(
            sc.check_lemma21(&[1.0], 10),
            Err(Error::HypothesesNotDeclared)
        ));
    }

    #[test]
    fn iterate_matches_closed_form_for_rational_decay() {
        let sc = ScalarComparison::builtin(ScalarFn::RationalDecay).unwrap();
        for n in [1usize, 5, 100, 1000] {
            let expected = 1.0 / (1.0 + n as f64);
            assert!(
                (sc.iterate(1.0, n) - expected).abs() <= 1e-12,
                "iterate {n}"
            );
        }
    }

    #[test]
    fn log_grid_shape() {
        let g = log_grid(1e-3, 1e3, 50);
        assert_eq!(g.len(), 50);
        assert_relative_eq!(g[0], 1e-3, max_relative = 1e-12);
        assert_relative_eq!(g[49], 1e3, max_relative = 1e-12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
