//! Local coordinate changes of `K[[X, Y, Z]]`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{Rational, Series, X, Y, Z};
use crate::surface::WeierstrassSurface;
use crate::Config;

/// `var -> images[var]`; every image has order one and the linear parts
/// form an invertible matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableChange {
    images: [Series; 3],
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let minor = |a: usize, b: usize, c: usize, d: usize| &m[1][a] * &m[2][b] - &m[1][c] * &m[2][d];
    &m[0][0] * minor(1, 2, 2, 1) - &m[0][1] * minor(0, 2, 2, 0) + &m[0][2] * minor(0, 1, 1, 0)
}

impl VariableChange {
    pub fn identity() -> Self {
        VariableChange { images: [Series::var(X), Series::var(Y), Series::var(Z)] }
    }

    pub fn new(images: [Series; 3]) -> Result<Self> {
        if images.iter().any(Series::has_constant_term) {
            return Err(Error::InvalidCurve("coordinate change with a constant term".into()));
        }
        let change = VariableChange { images };
        if det3(&change.linear_part()).is_zero() {
            return Err(Error::InvalidCurve("coordinate change with singular linear part".into()));
        }
        Ok(change)
    }

    /// Linear substitution given by the rows of `m`.
    pub fn linear(m: [[Rational; 3]; 3]) -> Result<Self> {
        let images = m.map(|row| {
            let mut s = Series::zero();
            for (var, c) in row.iter().enumerate() {
                s = s.add_series(&Series::var(var).scale(c));
            }
            s
        });
        Self::new(images)
    }

    pub fn images(&self) -> &[Series; 3] {
        &self.images
    }

    /// Row `i` holds the linear coefficients of the image of variable `i`.
    pub fn linear_part(&self) -> [[Rational; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut m = [0; 3];
                m[j] = 1;
                self.images[i].coeff(&m)
            })
        })
    }

    pub fn apply(&self, f: &Series) -> Result<Series> {
        Ok(f.substitute(&self.images)?)
    }

    /// The change equal to applying `first`, then `self`.
    pub fn after(&self, first: &VariableChange) -> Result<VariableChange> {
        let images = [self.apply(&first.images[0])?, self.apply(&first.images[1])?, self.apply(&first.images[2])?];
        Ok(VariableChange { images })
    }

    fn fixes_z_plane(&self) -> bool {
        self.images[Z] == Series::var(Z) && !self.images[X].uses_var(Z) && !self.images[Y].uses_var(Z)
    }

    /// Applies the change to the equation. Changes that fix `Z` and leave the
    /// plane alone keep the Weierstrass form, others are re-normalized.
    pub fn apply_to_surface(&self, s: &WeierstrassSurface, cfg: &Config) -> Result<WeierstrassSurface> {
        if self.fixes_z_plane() {
            let coeffs = s.coeffs().iter().map(|a| self.apply(a)).collect::<Result<Vec<_>>>()?;
            WeierstrassSurface::from_coeffs(s.multiplicity(), coeffs, s.level())
        } else {
            WeierstrassSurface::from_equation_at(&self.apply(&s.equation())?, s.level(), cfg)
        }
    }
}

impl fmt::Display for VariableChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["X", "Y", "Z"];
        let parts: Vec<String> = (0..3).map(|v| format!("{} -> {}", names[v], self.images[v])).collect();
        write!(f, "{}", parts.join(", "))
    }
}
