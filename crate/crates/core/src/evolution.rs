//! Time-domain solver for the massless Dirac-Coulomb evolution restricted to
//! a single `(kappa, mu)` angular mode.
//!
//! On a mode, the four-spinor is `u_minus(t,r) E_a(theta) + u_plus(t,r)
//! E_b(theta)` with `E_a, E_b` the stacked `alpha_r = -1 / +1` eigenvectors,
//! and the Hamiltonian acts through an exact 2x2 radial block:
//!
//! ```text
//! (B psi)_minus =  i (d/dr + 1/r) u_minus + (Z/r) u_minus + (i kappa / r) u_plus
//! (B psi)_plus  = -i (d/dr + 1/r) u_plus  + (Z/r) u_plus  - (i kappa / r) u_minus
//! ```
//!
//! This block is not printed anywhere; it is derived from the polar form of
//! the Hamiltonian together with the angular action rules, and gated by a
//! sampling oracle against the full Cartesian operator (see the evolution
//! test suite).
//!
//! The evolution `i d/dt psi = B psi` is integrated in the characteristic
//! variables `v = r u`, in which the spatial discretization is exactly
//! skew-Hermitian; the default Crank-Nicolson scheme is then unitary on the
//! discrete norm. An explicit leapfrog scheme is available as an
//! alternative; it is cheaper per step but only conserves the norm up to a
//! bounded oscillation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::band::{BandLu, BandMatrix};
use crate::boundary::ChargeConfig;
use crate::harmonics::AngularMode;
use crate::util::{cubic_interp, neville};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub enum EvolveError {
    InvalidGrid { reason: &'static str },
    /// `dt` violates the stability bound of the chosen scheme.
    CflViolation { dt: f64, limit: f64 },
    /// The data support would reach `r_max` before `t_final`.
    DomainTooSmall { needed: f64, r_max: f64 },
    /// Initial data must be supported away from the origin and inside the grid.
    InvalidData { reason: &'static str },
    /// Not enough usable extraction radii for the requested lapse value.
    InsufficientRadii { s: f64, available: usize, needed: usize },
    Singular,
}

impl fmt::Display for EvolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvolveError::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            EvolveError::CflViolation { dt, limit } => {
                write!(f, "dt = {dt} violates the stability limit {limit}")
            }
            EvolveError::DomainTooSmall { needed, r_max } => write!(
                f,
                "support reaches r = {needed} before t_final but r_max = {r_max}; enlarge the domain"
            ),
            EvolveError::InvalidData { reason } => write!(f, "invalid data: {reason}"),
            EvolveError::InsufficientRadii { s, available, needed } => write!(
                f,
                "s = {s}: only {available} extraction radii usable, need {needed}"
            ),
            EvolveError::Singular => write!(f, "time-step matrix is singular"),
        }
    }
}

/// Uniform staggered radial grid `r_i = (i + 1/2) dr`, avoiding `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    dr: f64,
    n: usize,
}

impl RadialGrid {
    /// Staggered grid covering `(0, r_max]` with spacing `dr`.
    pub fn staggered(r_max: f64, dr: f64) -> Result<Self, EvolveError> {
        if !(dr > 0.0 && r_max > 10.0 * dr) {
            return Err(EvolveError::InvalidGrid { reason: "need dr > 0 and r_max >> dr" });
        }
        let n = libm::floor(r_max / dr) as usize;
        Ok(RadialGrid { dr, n })
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn r(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dr
    }

    pub fn r_min(&self) -> f64 {
        0.5 * self.dr
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }

    /// Nearest grid index to a radius.
    pub fn index_of(&self, r: f64) -> usize {
        let i = libm::round(r / self.dr - 0.5).max(0.0) as usize;
        i.min(self.n - 1)
    }
}

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Unconditionally stable, exactly norm-preserving, time-reversible.
    CrankNicolson,
    /// Explicit two-step scheme; requires a strict stability bound because
    /// of the stiff `1/r` coupling near the origin.
    Leapfrog,
}

/// Parameters of one evolution run.
#[derive(Debug, Clone, Copy)]
pub struct EvolutionConfig {
    pub charge: ChargeConfig,
    pub mode: AngularMode,
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    /// Store a full field snapshot every this many steps (`0` disables).
    pub snapshot_every: usize,
}

impl EvolutionConfig {
    /// Advisory resolution check: the `kappa/r` coupling at the innermost
    /// grid point should be resolved by the time step.
    pub fn warnings(&self, grid: &RadialGrid) -> Vec<String> {
        let mut w = Vec::new();
        let coupling = (self.mode.kappa().abs() as f64 + self.charge.z().abs()) / grid.r_min();
        if self.dt * coupling > 2.0 {
            w.push(alloc::format!(
                "coupling |kappa|/r ~ {coupling:.1} at the innermost point is marginally resolved by dt = {}; near-origin accuracy degrades",
                self.dt
            ));
        }
        w
    }
}

/// Which component carries initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Plus,
    Minus,
    Both,
}

/// The two radial amplitude arrays of a mode at a fixed time.
#[derive(Debug, Clone)]
pub struct RadialField {
    pub mode: AngularMode,
    pub u_minus: Vec<C64>,
    pub u_plus: Vec<C64>,
    pub t: f64,
    grid: RadialGrid,
}

impl RadialField {
    pub fn zero(grid: RadialGrid, mode: AngularMode) -> Self {
        RadialField {
            mode,
            u_minus: vec![C64::new(0.0, 0.0); grid.len()],
            u_plus: vec![C64::new(0.0, 0.0); grid.len()],
            t: 0.0,
            grid,
        }
    }

    /// Smooth compactly supported bump data `u(r) = A exp(1 - 1/(1 - u^2))`,
    /// `u = (r - center)/halfwidth`, in the chosen component(s).
    pub fn bump(
        grid: RadialGrid,
        mode: AngularMode,
        component: Component,
        center: f64,
        halfwidth: f64,
        amplitude: C64,
    ) -> Result<Self, EvolveError> {
        if !(center - halfwidth > grid.r_min() && center + halfwidth < grid.r_max()) {
            return Err(EvolveError::InvalidData {
                reason: "bump support must lie strictly inside (r_min, r_max)",
            });
        }
        let mut field = RadialField::zero(grid, mode);
        for i in 0..grid.len() {
            let u = (grid.r(i) - center) / halfwidth;
            if u.abs() < 1.0 {
                let val = amplitude * libm::exp(1.0 - 1.0 / (1.0 - u * u));
                match component {
                    Component::Plus => field.u_plus[i] = val,
                    Component::Minus => field.u_minus[i] = val,
                    Component::Both => {
                        field.u_plus[i] = val;
                        field.u_minus[i] = val;
                    }
                }
            }
        }
        Ok(field)
    }

    /// Gaussian profile `A exp(-(r - center)^2 / (2 sigma^2))` truncated at
    /// `cut_sigmas` standard deviations (support is compact; the jump at the
    /// cut is `exp(-cut^2/2)` and should be chosen at rounding level).
    ///
    /// Spectral content decays like `exp(-(k sigma)^2 / 2)`, much faster than
    /// the polynomial bump; preferred for long evolutions where marginally
    /// resolved wavenumbers would otherwise pollute late lapse values through
    /// numerical dispersion.
    pub fn gaussian(
        grid: RadialGrid,
        mode: AngularMode,
        component: Component,
        center: f64,
        sigma: f64,
        cut_sigmas: f64,
        amplitude: C64,
    ) -> Result<Self, EvolveError> {
        let halfwidth = sigma * cut_sigmas;
        if !(center - halfwidth > grid.r_min() && center + halfwidth < grid.r_max()) {
            return Err(EvolveError::InvalidData {
                reason: "gaussian support must lie strictly inside (r_min, r_max)",
            });
        }
        let mut field = RadialField::zero(grid, mode);
        for i in 0..grid.len() {
            let u = (grid.r(i) - center) / sigma;
            if u.abs() < cut_sigmas {
                let val = amplitude * libm::exp(-0.5 * u * u);
                match component {
                    Component::Plus => field.u_plus[i] = val,
                    Component::Minus => field.u_minus[i] = val,
                    Component::Both => {
                        field.u_plus[i] = val;
                        field.u_minus[i] = val;
                    }
                }
            }
        }
        Ok(field)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Discrete L2 norm `sqrt( sum (|u_minus|^2 + |u_plus|^2) r^2 dr )`.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.len() {
            let r = self.grid.r(i);
            acc += (self.u_minus[i].norm_sqr() + self.u_plus[i].norm_sqr()) * r * r;
        }
        libm::sqrt(acc * self.grid.dr())
    }

    /// Outermost radius where the characteristic amplitude `r |u|` exceeds
    /// the floor; 0 when the field is below the floor everywhere.
    pub fn support_radius(&self, floor: f64) -> f64 {
        for i in (0..self.grid.len()).rev() {
            let r = self.grid.r(i);
            let amp = r * (self.u_minus[i].norm() + self.u_plus[i].norm());
            if amp > floor {
                return r;
            }
        }
        0.0
    }
}

/// Exact radial 2x2 Hamiltonian block applied at one radius, given the
/// pointwise values and radial derivatives of the two components. Returns
/// the components of `B psi` along `(E_a, E_b)`.
pub fn hamiltonian_block(
    cfg: &ChargeConfig,
    mode: &AngularMode,
    r: f64,
    u: [C64; 2],
    du_dr: [C64; 2],
) -> [C64; 2] {
    let kappa = mode.kappa() as f64;
    let z = cfg.z();
    let i = C64::new(0.0, 1.0);
    let [um, up] = u;
    let [dum, dup] = du_dr;
    let bm = i * (dum + um / r) + z / r * um + i * kappa / r * up;
    let bp = -i * (dup + up / r) + z / r * up - i * kappa / r * um;
    [bm, bp]
}

/// Applies the radial Hamiltonian on the grid with centered differences
/// (one-sided zero ghosts at both ends). Returns `B psi` as a field; the
/// time derivative of the evolution is `-i` times this.
pub fn radial_hamiltonian_apply(
    cfg: &ChargeConfig,
    mode: &AngularMode,
    field: &RadialField,
) -> RadialField {
    let grid = field.grid;
    let n = grid.len();
    let dr = grid.dr();
    let mut out = RadialField::zero(grid, field.mode);
    out.t = field.t;
    let get = |v: &Vec<C64>, i: isize| -> C64 {
        if i < 0 || i >= n as isize {
            C64::new(0.0, 0.0)
        } else {
            v[i as usize]
        }
    };
    let d4 = |v: &Vec<C64>, ii: isize| -> C64 {
        (-get(v, ii + 2) + 8.0 * get(v, ii + 1) - 8.0 * get(v, ii - 1) + get(v, ii - 2))
            / (12.0 * dr)
    };
    for i in 0..n {
        let r = grid.r(i);
        let ii = i as isize;
        let dum = d4(&field.u_minus, ii);
        let dup = d4(&field.u_plus, ii);
        let [bm, bp] = hamiltonian_block(
            cfg,
            mode,
            r,
            [field.u_minus[i], field.u_plus[i]],
            [dum, dup],
        );
        out.u_minus[i] = bm;
        out.u_plus[i] = bp;
    }
    out
}

// Interleaved characteristic state: w[2i] = r_i u_minus_i, w[2i+1] = r_i u_plus_i.
fn field_to_v(field: &RadialField, v: &mut [C64]) {
    let grid = field.grid;
    for i in 0..grid.len() {
        let r = grid.r(i);
        v[2 * i] = r * field.u_minus[i];
        v[2 * i + 1] = r * field.u_plus[i];
    }
}

fn v_to_field(v: &[C64], field: &mut RadialField) {
    let grid = field.grid;
    for i in 0..grid.len() {
        let r = grid.r(i);
        field.u_minus[i] = v[2 * i] / r;
        field.u_plus[i] = v[2 * i + 1] / r;
    }
}

/// The generator `A` of `dv/dt = A v` in characteristic variables:
///
/// ```text
/// dv_minus/dt =  v_minus' - i (Z/r) v_minus + (kappa/r) v_plus
/// dv_plus/dt  = -v_plus'  - i (Z/r) v_plus  - (kappa/r) v_minus
/// ```
///
/// The transport derivative uses the fourth-order centered stencil
/// `(-f_{i+2} + 8 f_{i+1} - 8 f_{i-1} + f_{i-2}) / (12 dr)` with zero
/// ghosts; the matrix stays exactly skew-Hermitian, so Crank-Nicolson is
/// unitary on the discrete norm, and the group-velocity error of marginally
/// resolved modes scales as `(k dr)^4` instead of `(k dr)^2`, keeping the
/// late lapse range clean of dispersive stragglers.
fn build_generator(cfg: &ChargeConfig, mode: &AngularMode, grid: &RadialGrid) -> BandMatrix {
    let n = grid.len();
    let dr = grid.dr();
    let kappa = mode.kappa() as f64;
    let z = cfg.z();
    let mut a = BandMatrix::zero(2 * n, 4, 4);
    let c1 = 8.0 / (12.0 * dr);
    let c2 = 1.0 / (12.0 * dr);
    for i in 0..n {
        let r = grid.r(i);
        let row_m = 2 * i;
        let row_p = 2 * i + 1;
        // potential and coupling
        a.set(row_m, row_m, C64::new(0.0, -z / r));
        a.set(row_p, row_p, C64::new(0.0, -z / r));
        a.set(row_m, row_p, C64::new(kappa / r, 0.0));
        a.set(row_p, row_m, C64::new(-kappa / r, 0.0));
        // transport: D v_minus, -D v_plus
        if i + 1 < n {
            a.set(row_m, row_m + 2, C64::new(c1, 0.0));
            a.set(row_p, row_p + 2, C64::new(-c1, 0.0));
        }
        if i >= 1 {
            a.set(row_m, row_m - 2, C64::new(-c1, 0.0));
            a.set(row_p, row_p - 2, C64::new(c1, 0.0));
        }
        if i + 2 < n {
            a.set(row_m, row_m + 4, C64::new(-c2, 0.0));
            a.set(row_p, row_p + 4, C64::new(c2, 0.0));
        }
        if i >= 2 {
            a.set(row_m, row_m - 4, C64::new(c2, 0.0));
            a.set(row_p, row_p - 4, C64::new(-c2, 0.0));
        }
    }
    a
}

/// One-mode time stepper. Construct once per run; `step` advances a field by
/// `dt` (which may be negative for Crank-Nicolson, reversing the flow).
pub struct Stepper {
    dt: f64,
    scheme: Scheme,
    grid: RadialGrid,
    generator: BandMatrix,
    cn_lu: Option<BandLu>,
    // leapfrog history
    prev_v: Option<Vec<C64>>,
    scratch: Vec<C64>,
    scratch2: Vec<C64>,
}

impl Stepper {
    pub fn new(
        cfg: &ChargeConfig,
        mode: &AngularMode,
        grid: RadialGrid,
        dt: f64,
        scheme: Scheme,
    ) -> Result<Self, EvolveError> {
        if dt == 0.0 || !dt.is_finite() {
            return Err(EvolveError::CflViolation { dt, limit: grid.dr() });
        }
        // Characteristic-speed CFL: |dt| <= dr for any scheme.
        if dt.abs() > grid.dr() + 1e-14 {
            return Err(EvolveError::CflViolation { dt, limit: grid.dr() });
        }
        if scheme == Scheme::Leapfrog {
            // Spectral bound of the generator including the stiff coupling;
            // the fourth-order transport stencil reaches |D| ~ 1.37 / dr.
            let bound = 1.4 / grid.dr()
                + (mode.kappa().abs() as f64 + cfg.z().abs()) / grid.r_min();
            if dt.abs() * bound > 1.0 {
                return Err(EvolveError::CflViolation { dt, limit: 1.0 / bound });
            }
        }
        let generator = build_generator(cfg, mode, &grid);
        let n2 = 2 * grid.len();
        let cn_lu = match scheme {
            Scheme::CrankNicolson => {
                // M_- = I - (dt/2) A
                let mut m = generator.clone();
                let half = C64::new(-0.5 * dt, 0.0);
                scale_band(&mut m, half, &grid);
                for i in 0..n2 {
                    m.add_to(i, i, C64::new(1.0, 0.0));
                }
                Some(m.factor().map_err(|_| EvolveError::Singular)?)
            }
            Scheme::Leapfrog => None,
        };
        Ok(Stepper {
            dt,
            scheme,
            grid,
            generator,
            cn_lu,
            prev_v: None,
            scratch: vec![C64::new(0.0, 0.0); n2],
            scratch2: vec![C64::new(0.0, 0.0); n2],
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances the field by one step of `dt`.
    pub fn step(&mut self, field: &mut RadialField) -> Result<(), EvolveError> {
        if *field.grid() != self.grid {
            return Err(EvolveError::InvalidGrid { reason: "field grid mismatch" });
        }
        let n2 = 2 * self.grid.len();
        let mut v = vec![C64::new(0.0, 0.0); n2];
        field_to_v(field, &mut v);
        match self.scheme {
            Scheme::CrankNicolson => {
                // w = (I + dt/2 A) v ; solve (I - dt/2 A) v_next = w.
                self.generator.matvec(&v, &mut self.scratch);
                for i in 0..n2 {
                    self.scratch[i] = v[i] + 0.5 * self.dt * self.scratch[i];
                }
                self.cn_lu
                    .as_ref()
                    .expect("factored")
                    .solve_in_place(&mut self.scratch);
                v.copy_from_slice(&self.scratch);
            }
            Scheme::Leapfrog => {
                match &self.prev_v {
                    None => {
                        // RK2 bootstrap for the first step.
                        self.generator.matvec(&v, &mut self.scratch);
                        for i in 0..n2 {
                            self.scratch2[i] = v[i] + 0.5 * self.dt * self.scratch[i];
                        }
                        let mut k2 = vec![C64::new(0.0, 0.0); n2];
                        self.generator.matvec(&self.scratch2, &mut k2);
                        let prev = v.clone();
                        for i in 0..n2 {
                            v[i] += self.dt * k2[i];
                        }
                        self.prev_v = Some(prev);
                    }
                    Some(prev) => {
                        self.generator.matvec(&v, &mut self.scratch);
                        for i in 0..n2 {
                            self.scratch2[i] = prev[i] + 2.0 * self.dt * self.scratch[i];
                        }
                        self.prev_v = Some(v.clone());
                        v.copy_from_slice(&self.scratch2);
                    }
                }
            }
        }
        v_to_field(&v, field);
        field.t += self.dt;
        Ok(())
    }
}

fn scale_band(m: &mut BandMatrix, s: C64, grid: &RadialGrid) {
    // Scale every stored band entry; band is (kl, ku) = (4, 4).
    let n2 = 2 * grid.len();
    for i in 0..n2 {
        for dj in -4isize..=4 {
            let j = i as isize + dj;
            if j >= 0 && (j as usize) < n2 {
                let v = m.get(i, j as usize);
                if v != C64::new(0.0, 0.0) {
                    m.set(i, j as usize, v * s);
                }
            }
        }
    }
}

/// Amplitude record at a fixed extraction radius: the characteristic values
/// `v = r u` of both components at every step.
#[derive(Debug, Clone)]
pub struct DetectorSeries {
    pub radius: f64,
    pub index: usize,
    pub v_minus: Vec<C64>,
    pub v_plus: Vec<C64>,
}

/// Stored field snapshot.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub u_minus: Vec<C64>,
    pub u_plus: Vec<C64>,
}

/// Output of a forward evolution: per-step norms and support radii, detector
/// series along outgoing rays, and optional snapshots.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: EvolutionConfig,
    pub grid: RadialGrid,
    pub n_steps: usize,
    pub norms: Vec<f64>,
    pub support_radius: Vec<f64>,
    pub detectors: Vec<DetectorSeries>,
    pub snapshots: Vec<Snapshot>,
    pub initial_norm: f64,
    pub data_support: (f64, f64),
    /// Amplitude floor used for the support scans.
    pub support_floor: f64,
    pub final_field: RadialField,
}

impl Trajectory {
    pub fn t_final(&self) -> f64 {
        self.n_steps as f64 * self.config.dt
    }
}

/// Evolves Cauchy data forward to `t_final`, recording detector series and
/// diagnostics. The domain must be large enough that the support, spreading
/// at unit speed, never reaches the outer boundary.
pub fn forward_solve(
    config: &EvolutionConfig,
    data: RadialField,
    detector_radii: &[f64],
) -> Result<Trajectory, EvolveError> {
    let grid = *data.grid();
    // Support is tracked above a fixed fraction of the initial norm. The
    // implicit step operator attaches an exponentially decaying numerical
    // skirt (roughly a factor 4 dr / dt per grid point) ahead of the true
    // front; above this floor that skirt adds a constant tail length, not a
    // propagation speed.
    let floor = 1e-10 * data.l2_norm().max(1e-300);
    let support0 = data.support_radius(floor);
    if support0 == 0.0 && data.l2_norm() > 0.0 {
        return Err(EvolveError::InvalidData { reason: "data support not detectable" });
    }
    let needed = support0 + config.t_final + 2.0 * grid.dr();
    if data.l2_norm() > 0.0 && needed > grid.r_max() {
        return Err(EvolveError::DomainTooSmall { needed, r_max: grid.r_max() });
    }

    let data_lo = {
        // innermost support radius (for extraction validity)
        let mut lo = grid.r_max();
        for i in 0..grid.len() {
            let amp = grid.r(i) * (data.u_minus[i].norm() + data.u_plus[i].norm());
            if amp > floor {
                lo = grid.r(i);
                break;
            }
        }
        lo
    };

    let mut detectors: Vec<DetectorSeries> = detector_radii
        .iter()
        .map(|&r| {
            let index = grid.index_of(r);
            DetectorSeries {
                radius: grid.r(index),
                index,
                v_minus: Vec::new(),
                v_plus: Vec::new(),
            }
        })
        .collect();

    let n_steps = libm::ceil(config.t_final / config.dt - 1e-9) as usize;
    let mut field = data;
    let mut stepper = Stepper::new(
        &config.charge,
        &config.mode,
        grid,
        config.dt,
        config.scheme,
    )?;

    let initial_norm = field.l2_norm();
    let mut norms = Vec::with_capacity(n_steps + 1);
    let mut support = Vec::with_capacity(n_steps + 1);
    let mut snapshots = Vec::new();

    let record =
        |field: &RadialField, dets: &mut Vec<DetectorSeries>, norms: &mut Vec<f64>, sup: &mut Vec<f64>| {
            norms.push(field.l2_norm());
            sup.push(field.support_radius(floor));
            for d in dets.iter_mut() {
                let r = grid.r(d.index);
                d.v_minus.push(r * field.u_minus[d.index]);
                d.v_plus.push(r * field.u_plus[d.index]);
            }
        };

    record(&field, &mut detectors, &mut norms, &mut support);
    if config.snapshot_every > 0 {
        snapshots.push(Snapshot {
            t: field.t,
            u_minus: field.u_minus.clone(),
            u_plus: field.u_plus.clone(),
        });
    }

    for step_idx in 1..=n_steps {
        stepper.step(&mut field)?;
        record(&field, &mut detectors, &mut norms, &mut support);
        if config.snapshot_every > 0 && step_idx % config.snapshot_every == 0 {
            snapshots.push(Snapshot {
                t: field.t,
                u_minus: field.u_minus.clone(),
                u_plus: field.u_plus.clone(),
            });
        }
    }

    Ok(Trajectory {
        config: *config,
        grid,
        n_steps,
        norms,
        support_radius: support,
        detectors,
        snapshots,
        initial_norm,
        data_support: (data_lo, support0),
        support_floor: floor,
        final_field: field,
    })
}

/// Checks the finite-propagation-speed certificate on a trajectory: the
/// tracked support radius may grow at most at speed `1 + 2 dr`, after
/// discounting the constant-length numerical skirt of the step operator.
/// Returns the worst observed excess (nonpositive when the bound holds).
///
/// Valid for data whose profile the grid resolves smoothly: unresolved
/// flanks excite near-grid-scale parasites that the fourth-order stencil
/// transports at up to 5/3 of the physical speed.
pub fn support_speed_excess(traj: &Trajectory) -> f64 {
    let dr = traj.grid.dr();
    // Skirt length for the tracked floor: the implicit tail decays by at
    // least a factor 2 per grid point for any admissible dt.
    let decades = libm::log(traj.initial_norm.max(1e-300) / traj.support_floor) / libm::log(2.0);
    let allowance = dr * (decades + 4.0);
    let mut worst = f64::NEG_INFINITY;
    for (k, &sup) in traj.support_radius.iter().enumerate() {
        let t = k as f64 * traj.config.dt;
        let bound = traj.data_support.1 + t * (1.0 + 2.0 * dr) + allowance;
        worst = worst.max(sup - bound);
    }
    worst
}

/// One extracted radiation-field sample: the `r^{1+iZ}`-rescaled amplitudes
/// along the outgoing ray `t - r = s`, extrapolated to infinite radius.
#[derive(Debug, Clone, Copy)]
pub struct RadiationSample {
    pub s: f64,
    /// `alpha_r = +1` component (the surviving polarization).
    pub plus: C64,
    /// `alpha_r = -1` component (tends to zero in the limit).
    pub minus: C64,
    /// Self-convergence estimates: change from the previous extrapolation
    /// order.
    pub err_plus: f64,
    pub err_minus: f64,
}

/// Reads the Friedlander radiation field off a trajectory.
///
/// For each lapse value `s`, the rescaled amplitude `r^{1+iZ} u(s + r, r) =
/// r^{iZ} v(s + r, r)` is sampled at every detector radius and Richardson-
/// extrapolated in `1/r` to the limit, using `order + 1` detectors.
pub fn extract_radiation_field(
    traj: &Trajectory,
    s_values: &[f64],
    order: usize,
) -> Result<Vec<RadiationSample>, EvolveError> {
    let dt = traj.config.dt;
    let t_final = traj.t_final();
    let z = traj.config.charge.z();
    let needed = order + 2; // one extra for the self-convergence estimate
    let mut out = Vec::with_capacity(s_values.len());

    for &s in s_values {
        // Detectors able to see lapse s within the run.
        let usable: Vec<&DetectorSeries> = traj
            .detectors
            .iter()
            .filter(|d| s + d.radius <= t_final + 1e-9)
            .collect();
        if usable.len() < needed {
            return Err(EvolveError::InsufficientRadii {
                s,
                available: usable.len(),
                needed,
            });
        }
        // Largest radii are the most informative; sort descending by radius.
        let mut sorted = usable;
        sorted.sort_by(|a, b| b.radius.partial_cmp(&a.radius).unwrap());
        let sel = &sorted[..needed];

        let mut rho = Vec::with_capacity(needed);
        let mut chi_p = Vec::with_capacity(needed);
        let mut chi_m = Vec::with_capacity(needed);
        for d in sel {
            let t_req = s + d.radius;
            let (vp, vm) = if t_req < 0.0 {
                // Before the data could reach this detector; the forward
                // solution vanishes there.
                (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
            } else {
                let k = libm::floor(t_req / dt) as usize;
                let k0 = k.saturating_sub(1).min(d.v_plus.len().saturating_sub(4));
                let ys_p: [C64; 4] = [
                    d.v_plus[k0],
                    d.v_plus[k0 + 1],
                    d.v_plus[k0 + 2],
                    d.v_plus[k0 + 3],
                ];
                let ys_m: [C64; 4] = [
                    d.v_minus[k0],
                    d.v_minus[k0 + 1],
                    d.v_minus[k0 + 2],
                    d.v_minus[k0 + 3],
                ];
                (
                    cubic_interp(k0 as f64 * dt, dt, &ys_p, t_req),
                    cubic_interp(k0 as f64 * dt, dt, &ys_m, t_req),
                )
            };
            let phase = C64::new(0.0, z * libm::log(d.radius)).exp();
            rho.push(1.0 / d.radius);
            chi_p.push(phase * vp);
            chi_m.push(phase * vm);
        }
        let full_p = neville(&rho, &chi_p, 0.0);
        let full_m = neville(&rho, &chi_m, 0.0);
        let drop_p = neville(&rho[..needed - 1], &chi_p[..needed - 1], 0.0);
        let drop_m = neville(&rho[..needed - 1], &chi_m[..needed - 1], 0.0);
        out.push(RadiationSample {
            s,
            plus: full_p,
            minus: full_m,
            err_plus: (full_p - drop_p).norm(),
            err_minus: (full_m - drop_m).norm(),
        });
    }
    Ok(out)
}

/// Squared L2 norm of the radiation field over `[s_lo, s_hi]`,
/// `int (|R_plus|^2 + |R_minus|^2) ds`, extrapolated to infinite radius.
///
/// The per-detector norm integrals `int |chi(s, R)|^2 ds` are computed first
/// and then Richardson-extrapolated in `1/R`. Extrapolating the scalar
/// integrals (rather than integrating the extrapolated field) makes the
/// result immune to the radius-dependent lapse shift that numerical
/// dispersion imprints on the pointwise samples.
pub fn radiation_l2_norm_sq(
    traj: &Trajectory,
    s_lo: f64,
    s_hi: f64,
    ds: f64,
    order: usize,
) -> Result<f64, EvolveError> {
    let dt = traj.config.dt;
    let t_final = traj.t_final();
    let n_s = libm::floor((s_hi - s_lo) / ds) as usize + 1;
    let needed = order + 1;

    // Detectors able to cover the whole window.
    let mut usable: Vec<&DetectorSeries> = traj
        .detectors
        .iter()
        .filter(|d| s_hi + d.radius <= t_final + 1e-9)
        .collect();
    if usable.len() < needed {
        return Err(EvolveError::InsufficientRadii {
            s: s_hi,
            available: usable.len(),
            needed,
        });
    }
    usable.sort_by(|a, b| b.radius.partial_cmp(&a.radius).unwrap());
    let sel = &usable[..needed];

    let mut rho = Vec::with_capacity(needed);
    let mut integrals = Vec::with_capacity(needed);
    for d in sel {
        let mut acc = 0.0;
        for k in 0..n_s {
            let s = s_lo + k as f64 * ds;
            let t_req = s + d.radius;
            let value_sq = if t_req < 0.0 {
                0.0
            } else {
                let idx = libm::floor(t_req / dt) as usize;
                let k0 = idx.saturating_sub(1).min(d.v_plus.len().saturating_sub(4));
                let ys_p: [C64; 4] = [
                    d.v_plus[k0],
                    d.v_plus[k0 + 1],
                    d.v_plus[k0 + 2],
                    d.v_plus[k0 + 3],
                ];
                let ys_m: [C64; 4] = [
                    d.v_minus[k0],
                    d.v_minus[k0 + 1],
                    d.v_minus[k0 + 2],
                    d.v_minus[k0 + 3],
                ];
                let vp = cubic_interp(k0 as f64 * dt, dt, &ys_p, t_req);
                let vm = cubic_interp(k0 as f64 * dt, dt, &ys_m, t_req);
                vp.norm_sqr() + vm.norm_sqr()
            };
            let w = if k == 0 || k == n_s - 1 { 0.5 } else { 1.0 };
            acc += w * value_sq * ds;
        }
        rho.push(1.0 / d.radius);
        integrals.push(C64::new(acc, 0.0));
    }
    Ok(neville(&rho, &integrals, 0.0).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(z: f64, kappa: i32, dt: f64, t_final: f64, scheme: Scheme) -> EvolutionConfig {
        EvolutionConfig {
            charge: ChargeConfig::new(z).unwrap(),
            mode: AngularMode::new(kappa, 1).unwrap(),
            dt,
            t_final,
            scheme,
            snapshot_every: 0,
        }
    }

    #[test]
    fn grid_basics() {
        let g = RadialGrid::staggered(10.0, 0.1).unwrap();
        assert_eq!(g.len(), 100);
        assert!((g.r_min() - 0.05).abs() < 1e-15);
        assert!((g.r(0) - 0.05).abs() < 1e-15);
        assert!((g.r_max() - 9.95).abs() < 1e-12);
        assert_eq!(g.index_of(5.0), g.index_of(g.r(g.index_of(5.0))));
    }

    #[test]
    fn zero_field_maps_to_zero() {
        let g = RadialGrid::staggered(10.0, 0.1).unwrap();
        let mode = AngularMode::new(1, 1).unwrap();
        let charge = ChargeConfig::new(0.3).unwrap();
        let f = RadialField::zero(g, mode);
        let bf = radial_hamiltonian_apply(&charge, &mode, &f);
        assert_eq!(bf.l2_norm(), 0.0);
    }

    #[test]
    fn coulomb_term_enters_additively() {
        // B(Z) psi - B(0) psi = (Z/r) psi pointwise.
        let g = RadialGrid::staggered(20.0, 0.05).unwrap();
        let mode = AngularMode::new(1, 1).unwrap();
        let f =
            RadialField::bump(g, mode, Component::Both, 5.0, 2.0, C64::new(1.0, 0.5)).unwrap();
        let with_z = radial_hamiltonian_apply(&ChargeConfig::new(0.3).unwrap(), &mode, &f);
        let without = radial_hamiltonian_apply(&ChargeConfig::new(0.0).unwrap(), &mode, &f);
        for i in 0..g.len() {
            let want = 0.3 / g.r(i) * f.u_minus[i];
            assert!((with_z.u_minus[i] - without.u_minus[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn cfl_violation_is_refused() {
        let g = RadialGrid::staggered(10.0, 0.1).unwrap();
        let mode = AngularMode::new(1, 1).unwrap();
        let charge = ChargeConfig::new(0.0).unwrap();
        assert!(matches!(
            Stepper::new(&charge, &mode, g, 0.2, Scheme::CrankNicolson),
            Err(EvolveError::CflViolation { .. })
        ));
        // Leapfrog has the stricter near-origin bound.
        assert!(matches!(
            Stepper::new(&charge, &mode, g, 0.09, Scheme::Leapfrog),
            Err(EvolveError::CflViolation { .. })
        ));
    }

    #[test]
    fn crank_nicolson_is_reversible_and_unitary_per_step() {
        let g = RadialGrid::staggered(30.0, 0.1).unwrap();
        let mode = AngularMode::new(1, 1).unwrap();
        let charge = ChargeConfig::new(0.3).unwrap();
        let f0 =
            RadialField::bump(g, mode, Component::Plus, 10.0, 2.0, C64::new(1.0, 0.0)).unwrap();
        let mut f = f0.clone();
        let mut fwd = Stepper::new(&charge, &mode, g, 0.05, Scheme::CrankNicolson).unwrap();
        let mut bwd = Stepper::new(&charge, &mode, g, -0.05, Scheme::CrankNicolson).unwrap();
        let n0 = f.l2_norm();
        fwd.step(&mut f).unwrap();
        let n1 = f.l2_norm();
        assert!((n1 - n0).abs() / n0 < 1e-12, "per-step norm drift");
        for _ in 0..9 {
            fwd.step(&mut f).unwrap();
        }
        for _ in 0..10 {
            bwd.step(&mut f).unwrap();
        }
        let mut dev = 0.0f64;
        for i in 0..g.len() {
            dev = dev
                .max((f.u_minus[i] - f0.u_minus[i]).norm())
                .max((f.u_plus[i] - f0.u_plus[i]).norm());
        }
        assert!(dev < 1e-9, "forward-backward deviation {dev:.3e}");
        assert!((f.t).abs() < 1e-12);
    }

    #[test]
    fn norm_conserved_over_short_run() {
        let g = RadialGrid::staggered(40.0, 0.1).unwrap();
        let c = cfg(0.3, 1, 0.05, 10.0, Scheme::CrankNicolson);
        let data =
            RadialField::bump(g, c.mode, Component::Plus, 15.0, 2.0, C64::new(1.0, 0.0)).unwrap();
        let traj = forward_solve(&c, data, &[]).unwrap();
        let drift = (traj.norms.last().unwrap() - traj.initial_norm).abs() / traj.initial_norm;
        assert!(drift < 1e-6, "drift {drift:.3e}");
    }

    #[test]
    fn zero_data_gives_zero_trajectory() {
        let g = RadialGrid::staggered(30.0, 0.1).unwrap();
        let c = cfg(0.3, 1, 0.05, 20.0, Scheme::CrankNicolson);
        let traj =
            forward_solve(&c, RadialField::zero(g, c.mode), &[10.0, 12.0, 15.0]).unwrap();
        assert!(traj.norms.iter().all(|&n| n == 0.0));
        let samples = extract_radiation_field(&traj, &[-5.0, 0.0, 2.0], 1).unwrap();
        assert!(samples.iter().all(|s| s.plus.norm() == 0.0 && s.minus.norm() == 0.0));
    }

    #[test]
    fn domain_too_small_detected_before_stepping() {
        let g = RadialGrid::staggered(20.0, 0.1).unwrap();
        let c = cfg(0.3, 1, 0.05, 50.0, Scheme::CrankNicolson);
        let data =
            RadialField::bump(g, c.mode, Component::Plus, 10.0, 2.0, C64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            forward_solve(&c, data, &[]),
            Err(EvolveError::DomainTooSmall { .. })
        ));
    }

    #[test]
    fn finite_propagation_speed() {
        let g = RadialGrid::staggered(40.0, 0.1).unwrap();
        let c = cfg(0.3, 1, 0.05, 15.0, Scheme::CrankNicolson);
        let data = RadialField::gaussian(
            g,
            c.mode,
            Component::Both,
            12.0,
            0.9,
            8.0,
            C64::new(0.7, 0.2),
        )
        .unwrap();
        let traj = forward_solve(&c, data, &[]).unwrap();
        let excess = support_speed_excess(&traj);
        assert!(excess <= 0.0, "support speed bound violated by {excess}");
    }
}
