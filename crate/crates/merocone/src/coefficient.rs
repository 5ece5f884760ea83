//! The scalar ring for jet coefficients: polynomials in one formal
//! transcendental `tau` with exact rational coefficients. Downstream, `tau`
//! is read as `pi^2`, so a coefficient `q0 + q1*tau` prints as
//! `q0 + q1*pi^2` and evaluates numerically with `tau = pi * pi`.

use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::linalg::Rat;

/// Element of `Q[tau]` in canonical form: trailing zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coefficient {
    coeffs: Vec<Rat>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Coefficient::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut c = Coefficient { coeffs: vec![q] };
        c.normalize();
        c
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `q * tau^k`.
    pub fn tau_power(q: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = q;
        let mut c = Coefficient { coeffs };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `tau`; `None` for the zero coefficient.
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `tau^k`.
    pub fn tau_coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn tau_coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational part, failing when a `tau` term is present.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.tau_coeff(k) + other.tau_coeff(k)).collect();
        let mut c = Coefficient { coeffs };
        c.normalize();
        c
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Coefficient {
            coeffs: self.coeffs.iter().map(|q| -q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Coefficient::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut c = Coefficient { coeffs };
        c.normalize();
        c
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        let mut c = Coefficient {
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        };
        c.normalize();
        c
    }

    /// Numerical value with `tau = pi^2`.
    pub fn to_f64(&self) -> f64 {
        let tau = std::f64::consts::PI * std::f64::consts::PI;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, q| acc * tau + q.to_f64().unwrap_or(f64::NAN))
    }
}

fn format_rat(q: &Rat) -> String {
    q.to_string()
}

impl fmt::Display for Coefficient {
    /// Canonical text: `tau^k` rendered as `pi^{2k}`, parts joined with
    /// ` + ` / ` - `, e.g. `-1/2 + 1/6*pi^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let body = if k == 0 {
                format_rat(&q.abs())
            } else {
                format!("{}*pi^{}", format_rat(&q.abs()), 2 * k)
            };
            if first {
                if q.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if q.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn ring_operations_are_canonical() {
        let a = Coefficient::tau_power(rat(1, 6), 1);
        let b = Coefficient::from_rat(rat(-1, 2));
        let s = a.add(&b);
        assert_eq!(s.tau_coeff(0), rat(-1, 2));
        assert_eq!(s.tau_coeff(1), rat(1, 6));
        assert!(s.sub(&s).is_zero());
        let p = a.mul(&a);
        assert_eq!(p.tau_coeff(2), rat(1, 36));
        assert_eq!(p.tau_degree(), Some(2));
    }

    #[test]
    fn display_reads_tau_as_pi_squared() {
        let c = Coefficient::from_rat(rat(-1, 2)).add(&Coefficient::tau_power(rat(1, 6), 1));
        assert_eq!(c.to_string(), "-1/2 + 1/6*pi^2");
        assert_eq!(Coefficient::zero().to_string(), "0");
        assert_eq!(Coefficient::tau_power(rat(-7, 360), 2).to_string(), "-7/360*pi^4");
    }

    #[test]
    fn f64_value_uses_pi_squared() {
        let c = Coefficient::tau_power(rat(1, 4), 1);
        assert!((c.to_f64() - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-12);
    }
}
