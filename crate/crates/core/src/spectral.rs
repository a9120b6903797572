//! Eigen-expansion of the field problem on intervals and rectangles,
//! mode orchestration, spectrally defined Sobolev norms, and the
//! stability/regularity ratio diagnostics.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::kernel::SplitKernel;
use crate::mode::{forcing_h1_norm, ModeForcing, ModeProblem, ModeSolution, SolverContext};
use crate::quad::GaussLegendre;
use crate::real::Real;

/// Tensor-product domain with Dirichlet Laplacian eigenpairs in closed form.
#[derive(Clone, Debug)]
pub struct SpectralDomain<T> {
    dimension: usize,
    lengths: [T; 2],
    truncation: usize,
}

impl<T: Real> SpectralDomain<T> {
    pub fn interval(length: T, truncation: usize) -> Result<Self> {
        if !(length > T::zero()) || truncation == 0 {
            return Err(Error::invalid(
                "interval needs length > 0 and truncation >= 1",
            ));
        }
        Ok(Self {
            dimension: 1,
            lengths: [length, T::one()],
            truncation,
        })
    }

    pub fn rectangle(lx: T, ly: T, truncation: usize) -> Result<Self> {
        if !(lx > T::zero() && ly > T::zero()) || truncation == 0 {
            return Err(Error::invalid(
                "rectangle needs positive sides and truncation >= 1",
            ));
        }
        Ok(Self {
            dimension: 2,
            lengths: [lx, ly],
            truncation,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn lengths(&self) -> &[T] {
        &self.lengths[..self.dimension]
    }
}

/// One Dirichlet eigenfunction: a product of normalized sines.
#[derive(Clone, Debug)]
pub struct EigenMode<T> {
    pub lambda: T,
    pub indices: [usize; 2],
    dimension: usize,
    lengths: [T; 2],
}

impl<T: Real> EigenMode<T> {
    pub fn eval(&self, x: &[T]) -> T {
        let mut v = T::one();
        for ((&l, &i), &xd) in self.lengths[..self.dimension]
            .iter()
            .zip(&self.indices[..self.dimension])
            .zip(x)
        {
            let idx = T::of_usize(i);
            v = v * (T::of(2.0) / l).sqrt() * (idx * T::PI() * xd / l).sin();
        }
        v
    }
}

/// First `truncation` Dirichlet eigenpairs sorted by eigenvalue
/// (index as tie-break, so the order is deterministic).
pub fn eigenpairs<T: Real>(d: &SpectralDomain<T>) -> Result<Vec<EigenMode<T>>> {
    match d.dimension {
        1 => {
            let l = d.lengths[0];
            Ok((1..=d.truncation)
                .map(|i| {
                    let w = T::of_usize(i) * T::PI() / l;
                    EigenMode {
                        lambda: w * w,
                        indices: [i, 0],
                        dimension: 1,
                        lengths: d.lengths,
                    }
                })
                .collect())
        }
        2 => {
            let (lx, ly) = (d.lengths[0], d.lengths[1]);
            let m = d.truncation;
            let mut all = Vec::with_capacity(m * m);
            for i in 1..=m {
                for j in 1..=m {
                    let wx = T::of_usize(i) * T::PI() / lx;
                    let wy = T::of_usize(j) * T::PI() / ly;
                    all.push(EigenMode {
                        lambda: wx * wx + wy * wy,
                        indices: [i, j],
                        dimension: 2,
                        lengths: d.lengths,
                    });
                }
            }
            all.sort_by(|a, b| {
                a.lambda
                    .partial_cmp(&b.lambda)
                    .unwrap()
                    .then(a.indices.cmp(&b.indices))
            });
            all.truncate(d.truncation);
            Ok(all)
        }
        _ => Err(Error::domain(format!(
            "unsupported dimension {}",
            d.dimension
        ))),
    }
}

/// Spatial quadrature point set: composite Gauss-Legendre with 16 nodes per
/// cell and 4 cells per retained oscillation.
fn quad_points_1d<T: Real>(length: T, max_index: usize) -> Result<Vec<(T, T)>> {
    let rule = GaussLegendre::new(16)?;
    let cells = 4 * max_index.max(1);
    let mut pts = Vec::with_capacity(16 * cells);
    let h = length / T::of_usize(cells);
    for c in 0..cells {
        let a = h * T::of_usize(c);
        let b = a + h;
        let half = T::of(0.5);
        let mid = (a + b) * half;
        let rad = (b - a) * half;
        // unpack the rule manually so we get (point, weight) pairs
        for k in 0..16 {
            let (x, w) = rule_node(&rule, k);
            pts.push((mid + rad * x, w * rad));
        }
    }
    Ok(pts)
}

fn rule_node<T: Real>(rule: &GaussLegendre<T>, k: usize) -> (T, T) {
    // integrate a delta-like selector is wasteful; expose via small helper
    rule.node_weight(k)
}

/// L^2 projection coefficients (v, phi_i) for i = 1..truncation.
pub fn project<T: Real>(d: &SpectralDomain<T>, v: &dyn Fn(&[T]) -> T) -> Result<Vec<T>> {
    let modes = eigenpairs(d)?;
    match d.dimension {
        1 => {
            let maxi = modes.iter().map(|m| m.indices[0]).max().unwrap_or(1);
            let pts = quad_points_1d(d.lengths[0], maxi)?;
            let samples: Vec<(T, T, T)> = pts.iter().map(|&(x, w)| (x, w, v(&[x]))).collect();
            if samples.iter().any(|s| !s.2.is_finite()) {
                return Err(Error::invalid("projected function is not finite at a node"));
            }
            Ok(modes
                .iter()
                .map(|m| {
                    samples
                        .iter()
                        .map(|&(x, w, fv)| w * fv * m.eval(&[x]))
                        .sum()
                })
                .collect())
        }
        2 => {
            let maxi = modes.iter().map(|m| m.indices[0]).max().unwrap_or(1);
            let maxj = modes.iter().map(|m| m.indices[1]).max().unwrap_or(1);
            let ptsx = quad_points_1d(d.lengths[0], maxi)?;
            let ptsy = quad_points_1d(d.lengths[1], maxj)?;
            let mut coeffs = vec![T::zero(); modes.len()];
            for &(x, wx) in &ptsx {
                for &(y, wy) in &ptsy {
                    let fv = v(&[x, y]);
                    if !fv.is_finite() {
                        return Err(Error::invalid("projected function is not finite at a node"));
                    }
                    for (c, m) in coeffs.iter_mut().zip(&modes) {
                        *c += wx * wy * fv * m.eval(&[x, y]);
                    }
                }
            }
            Ok(coeffs)
        }
        _ => Err(Error::domain("unsupported dimension")),
    }
}

/// Spectrally defined Sobolev norm sqrt(sum lambda_i^s c_i^2).
pub fn sobolev_norm<T: Real>(d: &SpectralDomain<T>, coeffs: &[T], s: T) -> Result<T> {
    if coeffs.len() > d.truncation {
        return Err(Error::invalid(format!(
            "coefficient list of length {} exceeds truncation {}",
            coeffs.len(),
            d.truncation
        )));
    }
    if !(s >= T::zero()) {
        return Err(Error::domain("sobolev_norm requires s >= 0"));
    }
    let modes = eigenpairs(d)?;
    let mut acc = T::zero();
    for (c, m) in coeffs.iter().zip(&modes) {
        acc += m.lambda.powf(s) * *c * *c;
    }
    Ok(acc.sqrt())
}

/// Shared pointwise map of space.
pub type SpaceFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;
/// Shared pointwise map of space and time.
pub type SpaceTimeFn<T> = Arc<dyn Fn(&[T], T) -> T + Send + Sync>;

/// Initial data, either already projected or as a pointwise map.
#[derive(Clone)]
pub enum InitialData<T> {
    Coefficients(Vec<T>),
    Pointwise(SpaceFn<T>),
}

impl<T> std::fmt::Debug for InitialData<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialData::Coefficients(_) => f.write_str("InitialData::Coefficients"),
            InitialData::Pointwise(_) => f.write_str("InitialData::Pointwise"),
        }
    }
}

/// Forcing for the field problem.
#[derive(Clone)]
pub enum FieldForcing<T> {
    Zero,
    /// One forcing per retained mode.
    Modal(Vec<ModeForcing<T>>),
    /// Separable f(x,t) = X(x) tau(t).
    Separable {
        space: SpaceFn<T>,
        time: ModeForcing<T>,
    },
    /// General pointwise map with time derivative; projected at grid nodes.
    Pointwise {
        value: SpaceTimeFn<T>,
        deriv: SpaceTimeFn<T>,
    },
}

impl<T> std::fmt::Debug for FieldForcing<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FieldForcing::Zero => "Zero",
            FieldForcing::Modal(_) => "Modal",
            FieldForcing::Separable { .. } => "Separable",
            FieldForcing::Pointwise { .. } => "Pointwise",
        };
        write!(f, "FieldForcing::{name}")
    }
}

/// The full initial-boundary value problem data.
#[derive(Clone, Debug)]
pub struct FieldProblem<T> {
    pub domain: SpectralDomain<T>,
    pub kernel: Arc<SplitKernel<T>>,
    pub initial: InitialData<T>,
    pub forcing: FieldForcing<T>,
}

impl<T: Real> FieldProblem<T> {
    pub fn new(
        domain: SpectralDomain<T>,
        kernel: Arc<SplitKernel<T>>,
        initial: InitialData<T>,
        forcing: FieldForcing<T>,
    ) -> Result<Self> {
        if let InitialData::Coefficients(c) = &initial {
            if c.len() > domain.truncation() {
                return Err(Error::invalid(
                    "more initial coefficients than retained modes",
                ));
            }
        }
        if let InitialData::Pointwise(f) = &initial {
            // Dirichlet compatibility at sampled boundary points
            let scale = match domain.dimension {
                1 => f(&[domain.lengths[0] * T::of(0.5)]),
                _ => f(&[
                    domain.lengths[0] * T::of(0.5),
                    domain.lengths[1] * T::of(0.5),
                ]),
            }
            .abs()
            .max(T::one());
            for k in 0..=8 {
                let frac = T::of_usize(k) / T::of(8.0);
                let bad = match domain.dimension {
                    1 => f(&[T::zero()]).abs().max(f(&[domain.lengths[0]]).abs()),
                    _ => {
                        let x = domain.lengths[0] * frac;
                        let y = domain.lengths[1] * frac;
                        f(&[x, T::zero()])
                            .abs()
                            .max(f(&[x, domain.lengths[1]]).abs())
                            .max(f(&[T::zero(), y]).abs())
                            .max(f(&[domain.lengths[0], y]).abs())
                    }
                };
                if bad > T::of(1e-8) * scale {
                    return Err(Error::invalid(
                        "initial data does not vanish on the boundary",
                    ));
                }
            }
        }
        if let FieldForcing::Modal(v) = &forcing {
            if v.len() != domain.truncation() {
                return Err(Error::invalid(format!(
                    "modal forcing must supply exactly {} entries, got {}",
                    domain.truncation(),
                    v.len()
                )));
            }
        }
        Ok(Self {
            domain,
            kernel,
            initial,
            forcing,
        })
    }
}

/// Computed norms and the stability/regularity ratios of one field solve.
#[derive(Clone, Copy, Debug)]
pub struct NormReport<T> {
    pub h1l2_norm: T,
    pub h1h2_norm: T,
    pub weighted_second: T,
    pub data_h2: T,
    pub data_h4: T,
    pub f_h1l2: T,
    pub f_h1h2: T,
    pub stability_ratio: T,
    pub regularity_ratio: T,
}

/// Time-stepping scheme selection for the field solve.
#[derive(Clone, Copy, Debug)]
pub enum Scheme<T> {
    Oracle,
    Picard {
        /// None selects the smallest contracting sigma automatically.
        sigma: Option<T>,
        tol: T,
        max_iter: usize,
    },
}

/// Assembled solution: per-mode trajectories plus the norm report.
#[derive(Debug)]
pub struct FieldSolution<T> {
    pub lambdas: Vec<T>,
    pub initial_coeffs: Vec<T>,
    pub modes: Vec<ModeSolution<T>>,
    pub report: NormReport<T>,
    pub sigma_used: Option<T>,
}

impl<T: Real> FieldSolution<T> {
    /// Nodal coefficient of mode `i` at time index `n`.
    pub fn coefficient(&self, i: usize, n: usize) -> T {
        self.modes[i].values[n]
    }
}

fn initial_coefficients<T: Real>(p: &FieldProblem<T>) -> Result<Vec<T>> {
    let n = p.domain.truncation();
    match &p.initial {
        InitialData::Coefficients(c) => {
            let mut out = c.clone();
            out.resize(n, T::zero());
            Ok(out)
        }
        InitialData::Pointwise(f) => {
            let f = f.clone();
            project(&p.domain, &move |x: &[T]| f(x))
        }
    }
}

fn modal_forcings<T: Real>(p: &FieldProblem<T>, grid: &TimeGrid<T>) -> Result<Vec<ModeForcing<T>>> {
    let n = p.domain.truncation();
    match &p.forcing {
        FieldForcing::Zero => Ok(vec![ModeForcing::zero(); n]),
        FieldForcing::Modal(v) => Ok(v.clone()),
        FieldForcing::Separable { space, time } => {
            let space = space.clone();
            let coeffs = project(&p.domain, &move |x: &[T]| space(x))?;
            Ok(coeffs
                .into_iter()
                .map(|c| {
                    let t = time.clone();
                    let t2 = time.clone();
                    ModeForcing::from_parts(move |s| c * t.value(s), move |s| c * t2.derivative(s))
                })
                .collect())
        }
        FieldForcing::Pointwise { value, deriv } => {
            // project at every node, then interpolate per mode
            let mut per_mode_vals = vec![Vec::with_capacity(grid.nodes().len()); n];
            let mut per_mode_ders = vec![Vec::with_capacity(grid.nodes().len()); n];
            for &t in grid.nodes() {
                let value = value.clone();
                let deriv = deriv.clone();
                let cv = project(&p.domain, &move |x: &[T]| value(x, t))?;
                let cd = project(&p.domain, &move |x: &[T]| deriv(x, t))?;
                for i in 0..n {
                    per_mode_vals[i].push(cv[i]);
                    per_mode_ders[i].push(cd[i]);
                }
            }
            Ok(per_mode_vals
                .into_iter()
                .zip(per_mode_ders)
                .map(|(vals, ders)| ModeForcing::sampled(grid, vals, ders))
                .collect())
        }
    }
}

/// Weighted second-derivative seminorm ||t^{alpha0/2} u''||_{L2(0,T)} of one
/// mode from centered second difference quotients on the graded grid.
fn weighted_second_norm_sq<T: Real>(sol: &ModeSolution<T>, alpha0: T) -> T {
    let grid = &sol.grid;
    let u = &sol.values;
    let mut acc = T::zero();
    for n in 1..grid.count() {
        let h0 = grid.step(n);
        let h1 = grid.step(n + 1);
        let d2 = T::of(2.0) / (h0 + h1) * ((u[n + 1] - u[n]) / h1 - (u[n] - u[n - 1]) / h0);
        let t = grid.node(n);
        let w = (grid.node(n + 1) - grid.node(n - 1)) * T::of(0.5);
        acc += t.powf(alpha0) * d2 * d2 * w;
    }
    acc
}

/// Solve every retained mode and assemble the norm report.
pub fn solve_field<T: Real>(
    p: &FieldProblem<T>,
    grid: &TimeGrid<T>,
    scheme: Scheme<T>,
) -> Result<FieldSolution<T>> {
    let modes = eigenpairs(&p.domain)?;
    let lambdas: Vec<T> = modes.iter().map(|m| m.lambda).collect();
    let u0 = initial_coefficients(p)?;
    let forcings = modal_forcings(p, grid)?;
    let ctx = SolverContext::new(p.kernel.clone(), grid.clone())?;

    let problems: Vec<ModeProblem<T>> = lambdas
        .iter()
        .zip(u0.iter().zip(&forcings))
        .map(|(&lam, (&c0, f))| ModeProblem::new(lam, c0, f.clone(), p.kernel.clone()))
        .collect::<Result<_>>()?;

    let sigma_used = match scheme {
        Scheme::Oracle => None,
        Scheme::Picard { sigma: Some(s), .. } => Some(s),
        Scheme::Picard { sigma: None, .. } => {
            // probe the stiffest retained mode; the factor grows with lambda
            let stiffest = problems
                .iter()
                .max_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap())
                .expect("at least one mode");
            Some(ctx.select_sigma(stiffest)?)
        }
    };

    let solved: Vec<Result<ModeSolution<T>>> = problems
        .par_iter()
        .map(|mp| match scheme {
            Scheme::Oracle => ctx.oracle_solve(mp),
            Scheme::Picard { tol, max_iter, .. } => {
                ctx.picard_solve(mp, sigma_used.unwrap(), tol, max_iter)
            }
        })
        .collect();
    let mut sols = Vec::with_capacity(solved.len());
    for (i, s) in solved.into_iter().enumerate() {
        sols.push(s.map_err(|e| e.in_mode(i))?);
    }

    let alpha0 = p.kernel.alpha0();
    let mut h1l2_sq = T::zero();
    let mut h1h2_sq = T::zero();
    let mut wsec_sq = T::zero();
    let mut data_h2_sq = T::zero();
    let mut data_h4_sq = T::zero();
    let mut f_h1l2_sq = T::zero();
    let mut f_h1h2_sq = T::zero();
    for ((sol, &lam), (c0, f)) in sols.iter().zip(&lambdas).zip(u0.iter().zip(&forcings)) {
        let h1 = sol.h1_norm();
        let h1_sq = h1 * h1;
        let lam2 = lam * lam;
        h1l2_sq += h1_sq;
        h1h2_sq += lam2 * h1_sq;
        wsec_sq += weighted_second_norm_sq(sol, alpha0);
        data_h2_sq += lam2 * *c0 * *c0;
        data_h4_sq += lam2 * lam2 * *c0 * *c0;
        let fh1 = forcing_h1_norm(f, grid);
        f_h1l2_sq += fh1 * fh1;
        f_h1h2_sq += lam2 * fh1 * fh1;
    }
    let h1l2_norm = h1l2_sq.sqrt();
    let h1h2_norm = h1h2_sq.sqrt();
    let weighted_second = wsec_sq.sqrt();
    let data_h2 = data_h2_sq.sqrt();
    let data_h4 = data_h4_sq.sqrt();
    let f_h1l2 = f_h1l2_sq.sqrt();
    let f_h1h2 = f_h1h2_sq.sqrt();
    let report = NormReport {
        h1l2_norm,
        h1h2_norm,
        weighted_second,
        data_h2,
        data_h4,
        f_h1l2,
        f_h1h2,
        stability_ratio: h1l2_norm / (data_h2 + f_h1l2),
        regularity_ratio: (weighted_second + h1h2_norm) / (data_h4 + f_h1h2),
    };
    Ok(FieldSolution {
        lambdas,
        initial_coeffs: u0,
        modes: sols,
        report,
        sigma_used,
    })
}

/// Smooth time profile tau with two derivatives, for manufactured solutions.
#[derive(Clone)]
pub struct TimeProfile<T> {
    value: Arc<dyn Fn(T) -> T + Send + Sync>,
    d1: Arc<dyn Fn(T) -> T + Send + Sync>,
    d2: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: Real> TimeProfile<T> {
    pub fn new(
        value: impl Fn(T) -> T + Send + Sync + 'static,
        d1: impl Fn(T) -> T + Send + Sync + 'static,
        d2: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Arc::new(value),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
        }
    }

    pub fn polynomial(coeffs: Vec<T>) -> Self {
        fn diff<T: Real>(c: &[T]) -> Vec<T> {
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| T::of_usize(k) * *v)
                .collect()
        }
        fn horner<T: Real>(c: Vec<T>) -> impl Fn(T) -> T {
            move |t: T| {
                let mut acc = T::zero();
                for ck in c.iter().rev() {
                    acc = acc * t + *ck;
                }
                acc
            }
        }
        let c1 = diff(&coeffs);
        let c2 = diff(&c1);
        Self {
            value: Arc::new(horner(coeffs)),
            d1: Arc::new(horner(c1)),
            d2: Arc::new(horner(c2)),
        }
    }

    pub fn value(&self, t: T) -> T {
        (self.value)(t)
    }

    pub fn deriv(&self, t: T) -> T {
        (self.d1)(t)
    }

    pub fn second(&self, t: T) -> T {
        (self.d2)(t)
    }
}

/// Convolution (k * q)(t) with the full kernel, integrating the singular
/// beta part by parts so only bounded integrands are quadratured.
fn kernel_convolution<T: Real>(
    kernel: &SplitKernel<T>,
    q: &dyn Fn(T) -> T,
    q0: T,
    dq: &dyn Fn(T) -> T,
    t: T,
) -> T {
    if t == T::zero() {
        return T::zero();
    }
    let rule = GaussLegendre::new(16).expect("fixed rule order");
    let breaks = crate::quad::graded_breaks(t, T::of(0.4), 14);
    let a0 = kernel.alpha0();
    let mu = T::one() - a0;
    let g_mu1 = crate::special::gamma(mu + T::one()).expect("mu + 1 > 0");
    // (beta * q)(t) = B(t) q(0) + int_0^t B(s) q'(t-s) ds, B(s) = s^mu/Gamma(mu+1)
    let beta_part = t.powf(mu) / g_mu1 * q0
        + rule.integrate_panels(&breaks, |s| s.powf(mu) / g_mu1 * dq(t - s));
    let gtilde_part = if kernel.exponent().is_constant() {
        T::zero()
    } else {
        rule.integrate_panels(&breaks, |s| {
            kernel.gtilde_direct(s).expect("s > 0 in quadrature") * q(t - s)
        })
    };
    beta_part + gtilde_part
}

/// Forcing coefficients that make u(x,t) = X(x) tau(t) the exact solution:
/// f_i(t) = c_i (tau'(t) + lambda_i (k * tau)(t)) with c_i the coefficients
/// of X. Returns one forcing per retained mode.
pub fn manufactured_forcing<T: Real>(
    d: &SpectralDomain<T>,
    kernel: &Arc<SplitKernel<T>>,
    space_coeffs: &[T],
    tau: &TimeProfile<T>,
) -> Result<Vec<ModeForcing<T>>> {
    if space_coeffs.len() > d.truncation() {
        return Err(Error::invalid(format!(
            "spatial profile needs {} modes but truncation is {}",
            space_coeffs.len(),
            d.truncation()
        )));
    }
    let modes = eigenpairs(d)?;
    let mut out = Vec::with_capacity(d.truncation());
    for (i, m) in modes.iter().enumerate() {
        let c = space_coeffs.get(i).copied().unwrap_or(T::zero());
        let lam = m.lambda;
        let k1 = kernel.clone();
        let k2 = kernel.clone();
        let tau1 = tau.clone();
        let tau2 = tau.clone();
        out.push(ModeForcing::from_parts(
            move |t| {
                let conv = kernel_convolution(
                    &k1,
                    &|s| tau1.value(s),
                    tau1.value(T::zero()),
                    &|s| tau1.deriv(s),
                    t,
                );
                c * (tau1.deriv(t) + lam * conv)
            },
            move |t| {
                // (k * tau)'(t) = k(t) tau(0) + (k * tau')(t)
                let head = if t > T::zero() {
                    k2.kernel_eval(t).expect("t > 0") * tau2.value(T::zero())
                } else {
                    T::zero()
                };
                let conv = kernel_convolution(
                    &k2,
                    &|s| tau2.deriv(s),
                    tau2.deriv(T::zero()),
                    &|s| tau2.second(s),
                    t,
                );
                c * (tau2.second(t) + lam * (head + conv))
            },
        ));
    }
    Ok(out)
}
