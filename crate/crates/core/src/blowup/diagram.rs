use num_traits::Zero;

use super::{quadratic_images, Direction};
use crate::change::VariableChange;
use crate::error::{Error, Result};
use crate::series::{local_division, LocalDivision, Rational, Series};

/// The chart change `psi` with `psi . pi_d = pi_{d'} . phi`.
///
/// `phi` must send the point `d'` to `d` on linear parts. With `E` the
/// privileged variable of `d`:
/// `psi(E) = pi'(phi(E))` and `psi(V) = pi'(phi(V)) / psi(E) - d_V`.
pub fn induced_chart_map(
    phi: &VariableChange,
    d: &Direction,
    d_prime: &Direction,
    precision: u32,
) -> Result<VariableChange> {
    let lin = phi.linear_part();
    let image: Vec<Rational> = (0..3)
        .map(|i| (0..3).fold(Rational::zero(), |acc, j| acc + &lin[i][j] * d_prime.coord(j)))
        .collect();
    let e = d.privileged();
    if image[e].is_zero() || (0..3).any(|v| &image[v] / &image[e] != *d.coord(v)) {
        return Err(Error::ChartMismatch(format!("linear part of phi does not send {d_prime} to {d}")));
    }
    let chart = quadratic_images(d_prime);
    let pulled: Vec<Series> = phi.images().iter().map(|s| s.substitute(&chart)).collect::<Result<_, _>>()?;
    let psi_e = pulled[e].clone();
    let mut images: [Series; 3] = std::array::from_fn(|_| Series::zero());
    for v in 0..3 {
        images[v] = if v == e {
            psi_e.clone()
        } else {
            let q = match local_division(&pulled[v], &psi_e, precision)? {
                LocalDivision::Exact(q) | LocalDivision::UpTo(q) => q,
                LocalDivision::NotDivisible { monomial, .. } => {
                    return Err(Error::Internal(format!("pi'(phi(V)) not divisible by psi(E), obstruction at {monomial:?}")))
                }
            };
            q.sub_series(&Series::constant(d.coord(v).clone()))
        };
    }
    let psi = VariableChange::new(images)?;
    let pi = quadratic_images(d);
    for v in 0..3 {
        let left = pi[v].substitute(psi.images())?;
        if !left.agrees_with(&pulled[v]) {
            return Err(Error::Internal(format!("psi . pi and pi' . phi disagree on variable {v}")));
        }
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;
    use crate::series::{Z, X, Y};

    fn p(t: &str) -> Series {
        parse_expression(t).unwrap()
    }

    #[test]
    fn identity() {
        let d = Direction::from_ints(1, 0, 0).unwrap();
        let psi = induced_chart_map(&VariableChange::identity(), &d, &d, 12).unwrap();
        assert_eq!(psi, VariableChange::identity());
    }

    #[test]
    fn normalizing_a_direction() {
        // phi: Y -> Y - 2X sends (1:2:0) to (1:0:0)
        let phi = VariableChange::new([Series::var(X), p("Y - 2*X"), Series::var(Z)]).unwrap();
        let d = Direction::from_ints(1, 0, 0).unwrap();
        let d_prime = Direction::from_ints(1, 2, 0).unwrap();
        let psi = induced_chart_map(&phi, &d, &d_prime, 12).unwrap();
        assert_eq!(psi, VariableChange::identity());
        assert!(matches!(induced_chart_map(&phi, &d, &d, 12), Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn translating_by_h() {
        let phi = VariableChange::new([Series::var(X), p("Y - X*(X + 3*X^2)"), Series::var(Z)]).unwrap();
        let d = Direction::from_ints(1, 0, 0).unwrap();
        let psi = induced_chart_map(&phi, &d, &d, 12).unwrap();
        assert_eq!(psi.images()[Y], p("Y - X - 3*X^2"));
        assert_eq!(psi.images()[X], Series::var(X));
    }

    #[test]
    fn general_linear() {
        let phi = VariableChange::new([p("X + Y"), p("Y + Z"), p("Z + X")]).unwrap();
        // L d' = d with d' = (1:0:0): L d' = (1, 0, 1)
        let d = Direction::from_ints(1, 0, 1).unwrap();
        let d_prime = Direction::from_ints(1, 0, 0).unwrap();
        let psi = induced_chart_map(&phi, &d, &d_prime, 10).unwrap();
        assert!(!psi.images()[Y].has_constant_term());
    }
}
