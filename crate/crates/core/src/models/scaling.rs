use crate::error::{Error, Result};

/// Physical constants relating `H = -ħ²/2m d²/dx² + V(x)` to its
/// dimensionless form with `x = γ x'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    pub mass: f64,
    /// `V_0`, the well depth.
    pub depth: f64,
    /// `γ`; for the exponential well `1/b`.
    pub length: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleDirection {
    /// Physical energy `E` to dimensionless `e`.
    ToDimensionless,
    /// Dimensionless `e` to physical `E`.
    ToPhysical,
}

impl ScalingMap {
    pub fn new(mass: f64, depth: f64, length: f64, hbar: f64) -> Result<Self> {
        let s = Self { mass, depth, length, hbar };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mass", self.mass), ("depth", self.depth), ("length", self.length), ("hbar", self.hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidScaling(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `2 m γ² / ħ²`, the factor multiplying energies.
    fn energy_factor(&self) -> f64 {
        2.0 * self.mass * self.length * self.length / (self.hbar * self.hbar)
    }

    /// `lambda = 2 m γ² V_0 / ħ²`.
    pub fn lambda(&self) -> f64 {
        self.energy_factor() * self.depth
    }
}

/// Converts an energy between physical and dimensionless units.
pub fn scale(dir: ScaleDirection, s: &ScalingMap, value: f64) -> Result<f64> {
    s.validate()?;
    Ok(match dir {
        ScaleDirection::ToDimensionless => value * s.energy_factor(),
        ScaleDirection::ToPhysical => value / s.energy_factor(),
    })
}
