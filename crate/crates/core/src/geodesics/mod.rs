//! Geodesic systems on `Diff S¹` and the Virasoro-Bott group.
//!
//! Every problem is the normal system
//! `A u̇ = pr_𝔥 ad_u^⊤(Au + λ)`, `λ̇ = pr_{𝔥⊥} ad_u^⊤(Au + λ)`
//! for a diagonal inertia operator `A`, a horizontal subspace `𝔥` and a
//! multiplier `λ` in its complement. Riemannian problems take `𝔥 = Vect S¹`.
//! The right-hand side is formed exactly at order `2N` and truncated back to `N`.

mod diagnostics;
mod integrate;

pub use diagnostics::{diagnostics, rotate_shift, weak_orthogonality_residual, Diagnostics, Report};
pub use integrate::{integrate, integrate_partial, integrate_with, IntegratorOptions, Scheme, Trajectory};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fields::{FourierField, Subspace};
use crate::metrics::{ad_transpose, Inertia, InertiaKind, InertiaOp, MetricParams};
use crate::virasoro::{vir_ad_transpose, CentralParams, VirVector};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Problem<T> {
    /// `L²` metric: the Burgers equation `u̇ = 3uu'`.
    RiemannL2,
    /// Inertia `α + βn²`; `(1, 1)` gives the non-extended Camassa-Holm equation.
    SobolevRiemann(MetricParams<T>),
    /// Full Riemannian flow of `(·,·)_{αβ}` on `Vect S¹`.
    KaehlerRiemann(MetricParams<T>),
    /// Normal geodesics on `Vect₀ S¹` with a constant rotation multiplier.
    KaehlerNormal { params: MetricParams<T>, lambda: T },
    /// Normal geodesics on `𝔡` for the Weil-Petersson metric, multiplier in `mob`.
    WeilPetersson,
    /// Normal geodesics on `(Vect₀, 0)` of the centrally extended algebra.
    VirasoroNormal {
        central: CentralParams<T>,
        lambda1: T,
        lambda2: T,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier<T> {
    None,
    Rot(T),
    /// `λ = λ₀ + w e^{iθ} + w̄ e^{-iθ}`.
    Mob { lambda0: T, w: Complex<T> },
    Vir { lambda1: T, lambda2: T },
}

impl<T: Scalar> Multiplier<T> {
    /// The multiplier as a field (the central part of `Vir` is dropped).
    pub fn as_field(&self, order: usize) -> FourierField<T> {
        let mut f = FourierField::zeros(order.max(1));
        match *self {
            Multiplier::None => {}
            Multiplier::Rot(l) => f.set_coeff(0, Complex::new(l, T::zero())),
            Multiplier::Mob { lambda0, w } => {
                f.set_coeff(0, Complex::new(lambda0, T::zero()));
                f.set_coeff(1, w);
            }
            Multiplier::Vir { lambda1, .. } => f.set_coeff(0, Complex::new(lambda1, T::zero())),
        }
        f.resized(order)
    }

    /// Flat list of real components, in a fixed order per variant.
    pub fn components(&self) -> Vec<T> {
        match *self {
            Multiplier::None => vec![],
            Multiplier::Rot(l) => vec![l],
            Multiplier::Mob { lambda0, w } => vec![lambda0, w.re, w.im],
            Multiplier::Vir { lambda1, lambda2 } => vec![lambda1, lambda2],
        }
    }

    pub fn component_names(&self) -> &'static [&'static str] {
        match self {
            Multiplier::None => &[],
            Multiplier::Rot(_) => &["lambda"],
            Multiplier::Mob { .. } => &["lambda0", "w_re", "w_im"],
            Multiplier::Vir { .. } => &["lambda1", "lambda2"],
        }
    }

    fn axpy(&self, h: T, d: &Self) -> Self {
        match (*self, *d) {
            (Multiplier::Rot(a), Multiplier::Rot(b)) => Multiplier::Rot(a + h * b),
            (Multiplier::Mob { lambda0: a0, w: aw }, Multiplier::Mob { lambda0: b0, w: bw }) => Multiplier::Mob {
                lambda0: a0 + h * b0,
                w: aw + bw * h,
            },
            (Multiplier::Vir { lambda1: a1, lambda2: a2 }, Multiplier::Vir { lambda1: b1, lambda2: b2 }) => {
                Multiplier::Vir {
                    lambda1: a1 + h * b1,
                    lambda2: a2 + h * b2,
                }
            }
            (m, _) => m,
        }
    }

    fn zero_like(&self) -> Self {
        match self {
            Multiplier::None => Multiplier::None,
            Multiplier::Rot(_) => Multiplier::Rot(T::zero()),
            Multiplier::Mob { .. } => Multiplier::Mob {
                lambda0: T::zero(),
                w: Complex::new(T::zero(), T::zero()),
            },
            Multiplier::Vir { .. } => Multiplier::Vir {
                lambda1: T::zero(),
                lambda2: T::zero(),
            },
        }
    }

    fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

/// Horizontal velocity together with the multiplier. Also used for time derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicState<T> {
    pub u: FourierField<T>,
    pub multiplier: Multiplier<T>,
}

impl<T: Scalar> GeodesicState<T> {
    /// State with the problem's default multiplier (`w = λ₀ = 0` for Weil-Petersson).
    pub fn new(problem: &Problem<T>, u: FourierField<T>) -> Self {
        let multiplier = match problem {
            Problem::KaehlerNormal { lambda, .. } => Multiplier::Rot(*lambda),
            Problem::WeilPetersson => Multiplier::Mob {
                lambda0: T::zero(),
                w: Complex::new(T::zero(), T::zero()),
            },
            Problem::VirasoroNormal { lambda1, lambda2, .. } => Multiplier::Vir {
                lambda1: *lambda1,
                lambda2: *lambda2,
            },
            _ => Multiplier::None,
        };
        Self { u, multiplier }
    }

    pub fn with_multiplier(mut self, multiplier: Multiplier<T>) -> Self {
        self.multiplier = multiplier;
        self
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    pub(crate) fn axpy(&self, h: T, d: &Self) -> Self {
        Self {
            u: &self.u + &d.u.scale(h),
            multiplier: self.multiplier.axpy(h, &d.multiplier),
        }
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.u.is_finite() && self.multiplier.is_finite()
    }
}

/// Consistency data produced alongside the Weil-Petersson right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobAudit<T> {
    /// `(λ̇₀, ẇ)` read off `project(r, Mob)`.
    pub projected: (T, Complex<T>),
    /// `(0, 3i w̄ c₂)`.
    pub closed_form: (T, Complex<T>),
}

impl<T: Scalar> MobAudit<T> {
    pub fn residual(&self) -> T {
        (self.projected.0 - self.closed_form.0).abs() + (self.projected.1 - self.closed_form.1).norm()
    }
}

impl<T: Scalar> Problem<T> {
    /// Subspace the velocity `u` lives in.
    pub fn subspace(&self) -> Subspace {
        match self {
            Problem::RiemannL2 | Problem::SobolevRiemann(_) | Problem::KaehlerRiemann(_) => Subspace::Full,
            Problem::KaehlerNormal { .. } | Problem::VirasoroNormal { .. } => Subspace::Vect0,
            Problem::WeilPetersson => Subspace::D,
        }
    }

    /// Short identifier used in file output.
    pub fn name(&self) -> &'static str {
        match self {
            Problem::RiemannL2 => "riemann-l2",
            Problem::SobolevRiemann(_) => "sobolev-riemann",
            Problem::KaehlerRiemann(_) => "kaehler-riemann",
            Problem::KaehlerNormal { .. } => "kaehler-normal",
            Problem::WeilPetersson => "weil-petersson",
            Problem::VirasoroNormal { .. } => "virasoro-normal",
        }
    }

    /// Inertia operator restricted to the velocity subspace, as a multiplier table.
    pub fn inertia(&self, order: usize) -> Inertia<T> {
        match self {
            Problem::RiemannL2 => InertiaKind::new(InertiaOp::L2Identity, Subspace::Full).table(order),
            Problem::SobolevRiemann(p) => InertiaKind::new(InertiaOp::Sobolev(p.clone()), Subspace::Full).table(order),
            Problem::KaehlerRiemann(p) => InertiaKind::new(InertiaOp::Kaehler(p.clone()), Subspace::Full)
                .table(order)
                .with_mode(0, T::one()),
            Problem::KaehlerNormal { params, .. } => {
                InertiaKind::new(InertiaOp::Kaehler(params.clone()), Subspace::Vect0).table(order)
            }
            Problem::WeilPetersson => {
                InertiaKind::new(InertiaOp::Kaehler(MetricParams::weil_petersson()), Subspace::D).table(order)
            }
            Problem::VirasoroNormal { .. } => InertiaKind::new(InertiaOp::L2Identity, Subspace::Vect0).table(order),
        }
    }

    /// Diagonal part `s(n)` of the right-hand side, `u̇_n ⊃ s(n)·û_n`.
    /// Nonzero only for the dispersive Virasoro flow.
    pub fn linear_symbol(&self, n: usize) -> Complex<T> {
        match self {
            Problem::VirasoroNormal {
                central,
                lambda1,
                lambda2,
            } if n > 0 => {
                let k = T::of_int(n as i64);
                let l = -(central.mu + central.nu * k * k);
                Complex::new(T::zero(), k * (T::of(2.0) * *lambda1 + *lambda2 * l))
            }
            _ => Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn has_linear_part(&self) -> bool {
        matches!(self, Problem::VirasoroNormal { .. })
    }

    /// Checks parameter regime, subspace support and multiplier variant.
    pub fn validate(&self, state: &GeodesicState<T>) -> Result<()> {
        if let Problem::KaehlerNormal { params, .. } = self {
            if !params.is_positive_definite() {
                return Err(Error::InvalidArgument(format!(
                    "normal Kähler geodesics need a positive-definite metric, got (α, β) = ({}, {})",
                    params.alpha, params.beta
                )));
            }
        }
        let sub = self.subspace();
        for (n, c) in state.u.coeffs().iter().enumerate() {
            if !sub.retains(n) && c.norm() != T::zero() {
                return Err(Error::OutsideDomain {
                    mode: n,
                    magnitude: c.norm().to_f64_lossy(),
                    domain: sub,
                });
            }
        }
        let inertia = self.inertia(state.order());
        if let Some(&mode) = inertia.singular_modes().first() {
            return Err(Error::SingularMode { mode, magnitude: 0.0 });
        }
        let expected = GeodesicState::new(self, state.u.clone()).multiplier;
        if std::mem::discriminant(&expected) != std::mem::discriminant(&state.multiplier) {
            return Err(Error::InvalidArgument(format!(
                "multiplier {:?} does not match problem {}",
                state.multiplier,
                self.name()
            )));
        }
        Ok(())
    }

    /// `m = A u + λ`: the momentum paired with `τ_u` in the weak geodesic equation.
    /// For the Virasoro problem the central component `λ₂` is returned separately.
    pub fn momentum(&self, state: &GeodesicState<T>) -> Result<(FourierField<T>, T)> {
        let order = state.order();
        let au = self.inertia(order).apply(&state.u)?;
        let central = match state.multiplier {
            Multiplier::Vir { lambda2, .. } => lambda2,
            _ => T::zero(),
        };
        Ok((&au + &state.multiplier.as_field(order), central))
    }

    /// `½⟨Au, u⟩`.
    pub fn energy(&self, state: &GeodesicState<T>) -> Result<T> {
        Ok(self.inertia(state.order()).quadratic_form(&state.u)? / T::of(2.0))
    }

    /// `ad_u^⊤(m)` at full order `2N` (extended algebra for the Virasoro problem).
    fn raw_rhs(&self, state: &GeodesicState<T>) -> Result<FourierField<T>> {
        let (m, central) = self.momentum(state)?;
        Ok(match self {
            Problem::VirasoroNormal { central: c, .. } => {
                let v = VirVector::new(state.u.clone(), T::zero());
                vir_ad_transpose(c, &v, &VirVector::new(m, central)).x
            }
            _ => ad_transpose(&state.u, &m),
        })
    }

    /// Right-hand side plus the Weil-Petersson multiplier audit, when applicable.
    pub fn rhs_audited(&self, state: &GeodesicState<T>) -> Result<(GeodesicState<T>, Option<MobAudit<T>>)> {
        let order = state.order();
        let r = self.raw_rhs(state)?.resized(order);
        let inertia = self.inertia(order);
        let mut audit = None;
        let (u_dot, m_dot) = match self {
            Problem::RiemannL2 | Problem::SobolevRiemann(_) | Problem::KaehlerRiemann(_) => {
                (inertia.invert(&r)?, Multiplier::None)
            }
            Problem::KaehlerNormal { .. } => (
                inertia.invert(&r.project(Subspace::Vect0))?,
                Multiplier::Rot(T::zero()),
            ),
            Problem::VirasoroNormal { .. } => (
                r.project(Subspace::Vect0),
                Multiplier::Vir {
                    lambda1: T::zero(),
                    lambda2: T::zero(),
                },
            ),
            Problem::WeilPetersson => {
                let Multiplier::Mob { w, .. } = state.multiplier else {
                    return Err(Error::InvalidArgument("Weil-Petersson state needs a mob multiplier".into()));
                };
                let c2 = state.u.coeff(2);
                let closed = Complex::new(T::zero(), T::of(3.0)) * w.conj() * c2;
                let (proj0, proj1) = r.project(Subspace::Mob).moments();
                audit = Some(MobAudit {
                    projected: (proj0, proj1),
                    closed_form: (T::zero(), closed),
                });
                (
                    inertia.invert(&r.project(Subspace::D))?,
                    Multiplier::Mob {
                        lambda0: T::zero(),
                        w: closed,
                    },
                )
            }
        };
        Ok((
            GeodesicState {
                u: u_dot,
                multiplier: m_dot,
            },
            audit,
        ))
    }

    /// Time derivative of the state.
    pub fn rhs(&self, state: &GeodesicState<T>) -> Result<GeodesicState<T>> {
        self.validate(state)?;
        Ok(self.rhs_audited(state)?.0)
    }
}

/// Free-function form of [`Problem::rhs`].
pub fn rhs<T: Scalar>(problem: &Problem<T>, state: &GeodesicState<T>) -> Result<GeodesicState<T>> {
    problem.rhs(state)
}

pub(crate) fn zero_derivative<T: Scalar>(state: &GeodesicState<T>) -> GeodesicState<T> {
    GeodesicState {
        u: FourierField::zeros(state.order()),
        multiplier: state.multiplier.zero_like(),
    }
}
