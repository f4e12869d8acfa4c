//! The Lu chaotic system and the keystreams derived from its trajectory.
//!
//! The system is
//!
//! ```text
//! dx/dt = a (y - x)
//! dy/dt = -x z + c y
//! dz/dt = x y - b z
//! ```
//!
//! and is chaotic at `a = 36, b = 3, c = 20`. A keystream is produced by
//! integrating from a secret initial state with fixed-step RK4, discarding
//! a burn-in prefix, and emitting `x, y, z` of every subsequent step in
//! interleaved order.

use thiserror::Error;

/// Fixed integration step.
pub const STEP_SIZE: f64 = 0.001;

/// Number of integration steps discarded before emission starts.
pub const BURN_IN: usize = 10_000;

/// Scale applied before taking the fractional part in [`to_unit`].
pub const QUANTIZER_SCALE: f64 = 1.0e4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChaosError {
    #[error("non-finite Lu state after step {step}: ({x}, {y}, {z})")]
    Diverged { step: usize, x: f64, y: f64, z: f64 },
    #[error("non-finite initial condition ({0}, {1}, {2})")]
    BadKey(f64, f64, f64),
    #[error("keystream length must be at least 1")]
    EmptyStream,
    #[error("invalid step size {0}")]
    BadStep(f64),
}

/// System parameters. Fixed constants in this scheme, never part of the key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for LuParams {
    fn default() -> Self {
        Self {
            a: 36.0,
            b: 3.0,
            c: 20.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LuState {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    fn axpy(&self, h: f64, d: &LuState) -> LuState {
        LuState::new(self.x + h * d.x, self.y + h * d.y, self.z + h * d.z)
    }
}

/// Secret initial condition of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuKey {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
}

impl LuKey {
    pub const fn new(x0: f64, y0: f64, z0: f64) -> Self {
        Self { x0, y0, z0 }
    }

    pub fn state(&self) -> LuState {
        LuState::new(self.x0, self.y0, self.z0)
    }

    /// Component by position (0 = x0, 1 = y0, 2 = z0).
    pub fn component(&self, i: usize) -> f64 {
        match i {
            0 => self.x0,
            1 => self.y0,
            2 => self.z0,
            _ => panic!("LuKey has 3 components, asked for {i}"),
        }
    }

    /// Copy with one component replaced.
    pub fn with_component(mut self, i: usize, value: f64) -> Self {
        match i {
            0 => self.x0 = value,
            1 => self.y0 = value,
            2 => self.z0 = value,
            _ => panic!("LuKey has 3 components, asked for {i}"),
        }
        self
    }
}

pub fn lu_derivative(s: &LuState, p: &LuParams) -> LuState {
    LuState::new(
        p.a * (s.y - s.x),
        -s.x * s.z + p.c * s.y,
        s.x * s.y - p.b * s.z,
    )
}

/// One classical fourth-order Runge-Kutta step.
pub fn lu_step(s: &LuState, p: &LuParams, h: f64) -> Result<LuState, ChaosError> {
    if !(h >= 0.0 && h.is_finite()) {
        return Err(ChaosError::BadStep(h));
    }
    let next = rk4(s, p, h);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(ChaosError::Diverged {
            step: 1,
            x: next.x,
            y: next.y,
            z: next.z,
        })
    }
}

#[inline]
fn rk4(s: &LuState, p: &LuParams, h: f64) -> LuState {
    let k1 = lu_derivative(s, p);
    let k2 = lu_derivative(&s.axpy(0.5 * h, &k1), p);
    let k3 = lu_derivative(&s.axpy(0.5 * h, &k2), p);
    let k4 = lu_derivative(&s.axpy(h, &k3), p);
    LuState::new(
        s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        s.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
    )
}

/// Integration settings that, together with the key, fully determine a stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamConfig {
    pub params: LuParams,
    pub step: f64,
    pub burn_in: usize,
}

impl Default for StreamConfig {
    fn default() -> Self {
        Self {
            params: LuParams::default(),
            step: STEP_SIZE,
            burn_in: BURN_IN,
        }
    }
}

/// Lazily integrated trajectory; yields one state per step.
#[derive(Debug, Clone)]
pub struct Trajectory {
    state: LuState,
    params: LuParams,
    step: f64,
    steps_taken: usize,
}

impl Trajectory {
    pub fn new(key: &LuKey, params: LuParams, step: f64) -> Result<Self, ChaosError> {
        let state = key.state();
        if !state.is_finite() {
            return Err(ChaosError::BadKey(key.x0, key.y0, key.z0));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(ChaosError::BadStep(step));
        }
        Ok(Self {
            state,
            params,
            step,
            steps_taken: 0,
        })
    }

    pub fn state(&self) -> LuState {
        self.state
    }

    pub fn advance(&mut self) -> Result<LuState, ChaosError> {
        let next = rk4(&self.state, &self.params, self.step);
        self.steps_taken += 1;
        if !next.is_finite() {
            return Err(ChaosError::Diverged {
                step: self.steps_taken,
                x: next.x,
                y: next.y,
                z: next.z,
            });
        }
        self.state = next;
        Ok(next)
    }
}

/// A finite keystream of raw trajectory samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    values: Vec<f64>,
    origin: LuKey,
    cursor: usize,
}

impl Keystream {
    pub fn generate(key: &LuKey, cfg: &StreamConfig, count: usize) -> Result<Self, ChaosError> {
        if count == 0 {
            return Err(ChaosError::EmptyStream);
        }
        let mut traj = Trajectory::new(key, cfg.params, cfg.step)?;
        for _ in 0..cfg.burn_in {
            traj.advance()?;
        }
        let mut values = Vec::with_capacity(count + 2);
        while values.len() < count {
            let s = traj.advance()?;
            values.extend_from_slice(&[s.x, s.y, s.z]);
        }
        values.truncate(count);
        Ok(Self {
            values,
            origin: *key,
            cursor: 0,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin(&self) -> &LuKey {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn remaining(&self) -> usize {
        self.values.len() - self.cursor
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl Iterator for Keystream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let v = self.values.get(self.cursor).copied()?;
        self.cursor += 1;
        Some(v)
    }
}

/// Keystream with the default step size and burn-in.
pub fn generate_stream(
    key: &LuKey,
    params: &LuParams,
    count: usize,
) -> Result<Keystream, ChaosError> {
    let cfg = StreamConfig {
        params: *params,
        ..StreamConfig::default()
    };
    Keystream::generate(key, &cfg, count)
}

/// `frac(|v| * 10^4)`, in `[0, 1)`.
pub fn to_unit(v: f64) -> f64 {
    let scaled = v.abs() * QUANTIZER_SCALE;
    scaled - scaled.floor()
}

/// Multiplier in `[1, 2)`; never zero, so division always inverts it.
pub fn to_multiplier(v: f64) -> f64 {
    1.0 + to_unit(v)
}

pub fn to_byte(v: f64) -> u8 {
    unit_to_byte(to_unit(v))
}

pub fn to_bit(v: f64) -> u8 {
    unit_to_bit(to_unit(v))
}

pub(crate) fn unit_to_byte(u: f64) -> u8 {
    ((u * 256.0).floor() as i64).clamp(0, 255) as u8
}

pub(crate) fn unit_to_bit(u: f64) -> u8 {
    u8::from(u >= 0.5)
}
