//! Rational covectors on the ambient coordinate space. They appear as
//! denominator factors of germs, as pairing forms of lattice cones, and as
//! vertex decorations of rooted forests.

use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::linalg::Rat;

/// A linear form `sum_a c_a e_a^*` with exact rational coefficients. The
/// ambient dimension is the length of the coefficient vector; forms embed
/// into larger dimensions by zero extension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        LinearForm {
            coeffs: coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm {
            coeffs: vec![Rat::zero(); dim],
        }
    }

    /// The coordinate form `e_{index+1}^*`.
    pub fn coordinate(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut coeffs = vec![Rat::zero(); dim];
        coeffs[index] = Rat::one();
        LinearForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> Rat {
        self.coeffs.get(a).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn embed(&self, dim: usize) -> Self {
        assert!(dim >= self.dim(), "embed only extends the ambient space");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim, Rat::zero());
        LinearForm { coeffs }
    }

    /// Drops trailing zero coordinates; used to compare forms living in
    /// different ambient dimensions.
    pub fn trimmed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LinearForm { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.dim().max(other.dim());
        LinearForm {
            coeffs: (0..n).map(|a| self.coeff(a) + other.coeff(a)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.dim().max(other.dim());
        LinearForm {
            coeffs: (0..n).map(|a| self.coeff(a) - other.coeff(a)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Writes `self = scalar * primitive` with `primitive` a nonzero integer
    /// vector of gcd one whose first nonzero entry is positive, and
    /// `scalar > 0` or `scalar < 0` accordingly. `None` for the zero form.
    pub fn primitive_part(&self) -> Option<(LinearForm, Rat)> {
        if self.is_zero() {
            return None;
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * &lcm_den / c.denom()).collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let sign = ints
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| if v.is_negative() { -BigInt::one() } else { BigInt::one() })
            .unwrap();
        let unit = &gcd * &sign;
        let primitive = LinearForm {
            coeffs: ints.iter().map(|v| Rat::from_integer(v / &unit)).collect(),
        };
        // self = (unit / lcm_den) * primitive
        let scalar = Rat::new(unit, lcm_den);
        Some((primitive, scalar))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| c.to_f64().unwrap_or(f64::NAN) * x)
            .sum()
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    /// Canonical text, e.g. `e1`, `(e1+2*e2)`, `(e1-e3)`. Single coordinates
    /// with unit coefficient are unparenthesised.
    pub fn render(&self) -> String {
        let nonzero: Vec<usize> = (0..self.dim()).filter(|&a| !self.coeffs[a].is_zero()).collect();
        if nonzero.len() == 1 && self.coeffs[nonzero[0]].is_one() {
            return format!("e{}", nonzero[0] + 1);
        }
        let mut out = String::from("(");
        let mut first = true;
        for a in nonzero {
            let c = &self.coeffs[a];
            let mag = c.abs();
            let body = if mag.is_one() {
                format!("e{}", a + 1)
            } else {
                format!("{}*e{}", mag, a + 1)
            };
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out.push(')');
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn primitive_part_normalises_denominators_and_sign() {
        let l = LinearForm::new(vec![rat(-1, 2), rat(3, 2)]);
        let (p, s) = l.primitive_part().unwrap();
        assert_eq!(p, LinearForm::from_integers(&[1, -3]));
        assert_eq!(s, rat(-1, 2));
        assert_eq!(p.scale(&s), l);
        assert!(LinearForm::zero(3).primitive_part().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(LinearForm::from_integers(&[1, 0]).render(), "e1");
        assert_eq!(LinearForm::from_integers(&[1, 1]).render(), "(e1+e2)");
        assert_eq!(LinearForm::from_integers(&[1, -2]).render(), "(e1-2*e2)");
        assert_eq!(LinearForm::from_integers(&[0, 3]).render(), "(3*e2)");
        assert_eq!(LinearForm::new(vec![rat(-1, 2), rat(0, 1)]).render(), "(-1/2*e1)");
    }

    #[test]
    fn evaluation() {
        let l = LinearForm::from_integers(&[1, 2]);
        assert_eq!(l.eval_rat(&[rat(1, 1), rat(1, 2)]), rat(2, 1));
        assert!((l.eval_f64(&[0.5, 0.25]) - 1.0).abs() < 1e-15);
    }
}
