use std::collections::BTreeMap;

use exact_algebra::{Coeff, RationalFunction, Var};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coords::p_index;
use crate::error::PluckerError;

/// Frozen coordinates `p_{k,k+1}` and `p_{1,n}`; the divisor is their product.
pub fn frozen(n: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (1..n).map(|k| (k, k + 1)).collect();
    out.push((1, n));
    out
}

fn quadruples(n: u32) -> impl Iterator<Item = (u32, u32, u32, u32)> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).flat_map(move |j| (j + 1..=n).flat_map(move |k| (k + 1..=n).map(move |l| (i, j, k, l))))
    })
}

/// An exact point of the affine cone over Gr(2,n), off the divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannPoint {
    pub n: u32,
    pub values: BTreeMap<(u32, u32), Coeff>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub n: u32,
    pub p: BTreeMap<String, String>,
}

impl GrassmannPoint {
    /// Point spanned by the columns of a `2 x n` matrix, given as `n` pairs.
    pub fn from_matrix(rows: &[(Coeff, Coeff)]) -> Result<Self, PluckerError> {
        let n = rows.len() as u32;
        let mut values = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (&rows[i as usize - 1], &rows[j as usize - 1]);
                values.insert((i, j), &a.0 * &b.1 - &b.0 * &a.1);
            }
        }
        let pt = GrassmannPoint { n, values };
        pt.check_off_divisor()?;
        Ok(pt)
    }

    /// Point from explicit coordinates; checks every relation and the divisor.
    pub fn from_values(n: u32, values: BTreeMap<(u32, u32), Coeff>) -> Result<Self, PluckerError> {
        let pt = GrassmannPoint { n, values };
        for (i, j, k, l) in quadruples(n) {
            let r = pt.get(i, j) * pt.get(k, l) - pt.get(i, k) * pt.get(j, l) + pt.get(i, l) * pt.get(j, k);
            if !r.is_zero() {
                return Err(PluckerError::NotOnGrassmannian(i, j, k, l));
            }
        }
        pt.check_off_divisor()?;
        Ok(pt)
    }

    fn check_off_divisor(&self) -> Result<(), PluckerError> {
        for (i, j) in frozen(self.n) {
            if self.get(i, j).is_zero() {
                return Err(PluckerError::OnDivisor(i, j));
            }
        }
        Ok(())
    }

    /// `p_{i,j}` with antisymmetry; `p_{i,i} = 0`.
    pub fn get(&self, i: u32, j: u32) -> Coeff {
        if i < j {
            self.values.get(&(i, j)).cloned().unwrap_or_else(Coeff::zero)
        } else if i > j {
            -self.get(j, i)
        } else {
            Coeff::zero()
        }
    }

    /// Value of an expression in the `p_{i,j}`, with extra variables (such as
    /// `q`) bound by `extra`. `None` if the denominator vanishes or a variable
    /// is unbound.
    pub fn eval(&self, e: &RationalFunction, extra: &BTreeMap<Var, Coeff>) -> Option<Coeff> {
        for v in e.variables() {
            if p_index(&v).is_none() && !extra.contains_key(&v) {
                return None;
            }
        }
        let value = |v: &Var, k: i32| {
            let x = match p_index(v) {
                Some((i, j)) => self.get(i, j),
                None => extra[v].clone(),
            };
            if k >= 0 {
                num_traits::pow(x, k as usize)
            } else if x.is_zero() {
                // Poisons the result; canonical forms only carry
                // nonnegative exponents so this is not reached in practice.
                Coeff::zero()
            } else {
                num_traits::pow(x.recip(), (-k) as usize)
            }
        };
        let (n, d) = e.eval_with(Coeff::zero(), |c: &Coeff| c.clone(), value);
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }

    pub fn to_numeric(&self) -> NumericPoint {
        use num_traits::ToPrimitive;
        let values =
            self.values.iter().map(|(k, v)| (*k, Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0))).collect();
        NumericPoint { n: self.n, values }
    }

    pub fn to_json(&self) -> PointJson {
        PointJson { n: self.n, p: self.values.iter().map(|((i, j), v)| (format!("{i},{j}"), v.to_string())).collect() }
    }
}

/// A complex double point, accepted when every relation is below `1e-10`
/// times the squared largest coordinate (the relations are quadratic).
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoint {
    pub n: u32,
    pub values: BTreeMap<(u32, u32), Complex64>,
}

pub const NUMERIC_TOLERANCE: f64 = 1e-10;

impl NumericPoint {
    pub fn new(n: u32, values: BTreeMap<(u32, u32), Complex64>) -> Result<Self, PluckerError> {
        let pt = NumericPoint { n, values };
        if let Some((i, j, k, l)) = pt.worst_relation().1 {
            return Err(PluckerError::NotOnGrassmannian(i, j, k, l));
        }
        Ok(pt)
    }

    pub fn from_matrix(rows: &[(Complex64, Complex64)]) -> Self {
        let n = rows.len() as u32;
        let mut values = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (rows[i as usize - 1], rows[j as usize - 1]);
                values.insert((i, j), a.0 * b.1 - b.0 * a.1);
            }
        }
        NumericPoint { n, values }
    }

    pub fn get(&self, i: u32, j: u32) -> Complex64 {
        if i < j {
            self.values.get(&(i, j)).copied().unwrap_or_default()
        } else if i > j {
            -self.get(j, i)
        } else {
            Complex64::zero()
        }
    }

    pub fn scale(&self) -> f64 {
        self.values.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest relative relation residual and the first quadruple over tolerance.
    pub fn worst_relation(&self) -> (f64, Option<(u32, u32, u32, u32)>) {
        let s = self.scale().max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        let mut bad = None;
        for (i, j, k, l) in quadruples(self.n) {
            let r = self.get(i, j) * self.get(k, l) - self.get(i, k) * self.get(j, l)
                + self.get(i, l) * self.get(j, k);
            let rel = r.norm() / (s * s);
            if rel > NUMERIC_TOLERANCE && bad.is_none() {
                bad = Some((i, j, k, l));
            }
            worst = worst.max(rel);
        }
        (worst, bad)
    }

    /// Whether `p_{i,j}` is zero up to the point's tolerance.
    pub fn is_zero(&self, i: u32, j: u32) -> bool {
        self.get(i, j).norm() <= NUMERIC_TOLERANCE * self.scale()
    }

    pub fn off_divisor(&self) -> bool {
        frozen(self.n).into_iter().all(|(i, j)| !self.is_zero(i, j))
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Coeff {
    let mut num = 0i64;
    while num == 0 {
        num = rng.random_range(-9..=9);
    }
    let den: i64 = rng.random_range(1..=5);
    BigRational::new(num.into(), den.into())
}

/// Deterministic pseudo-random point off the divisor.
pub fn random_point(n: u32, seed: u64) -> Result<GrassmannPoint, PluckerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let rows: Vec<(Coeff, Coeff)> =
            (0..n).map(|_| (random_rational(&mut rng), random_rational(&mut rng))).collect();
        if let Ok(pt) = GrassmannPoint::from_matrix(&rows) {
            return Ok(pt);
        }
    }
    Err(PluckerError::RetryBudget)
}

/// Matrix rows with small integer entries, zero allowed, for sampling
/// points that hit coordinate hyperplanes often.
pub(crate) fn small_rows(n: u32, rng: &mut ChaCha8Rng) -> Vec<(Coeff, Coeff)> {
    (0..n)
        .map(|_| (Coeff::from_integer(rng.random_range(-2..=2).into()), Coeff::from_integer(rng.random_range(-2..=2).into())))
        .collect()
}

#[cfg(test)]
mod tests {
    use exact_algebra::{int, rf};

    use super::*;

    #[test]
    fn random_points_satisfy_relations() {
        for n in 4..=8 {
            let pt = random_point(n, 7).unwrap();
            assert!(GrassmannPoint::from_values(n, pt.values.clone()).is_ok());
            assert_eq!(random_point(n, 7).unwrap(), pt);
            assert!(frozen(n).iter().all(|(i, j)| !pt.get(*i, *j).is_zero()));
            assert!(pt.to_numeric().worst_relation().1.is_none());
        }
        assert_ne!(random_point(5, 1).unwrap(), random_point(5, 2).unwrap());
    }

    #[test]
    fn evaluation() {
        let pt = GrassmannPoint::from_matrix(&[(int(1), int(0)), (int(1), int(1)), (int(0), int(1)), (int(-1), int(1))])
            .unwrap();
        assert_eq!(pt.get(1, 3), int(1));
        assert_eq!(pt.get(3, 1), int(-1));
        let extra: BTreeMap<Var, Coeff> = [(exact_algebra::var("q"), int(2))].into_iter().collect();
        assert_eq!(pt.eval(&rf("q*p2,4/p1,2"), &extra), Some(int(4)));
        assert_eq!(pt.eval(&rf("q*p2,4/p1,2"), &BTreeMap::new()), None);
    }

    #[test]
    fn divisor_and_relations_are_enforced() {
        let on_div = GrassmannPoint::from_matrix(&[(int(1), int(0)), (int(2), int(0)), (int(0), int(1)), (int(1), int(1))]);
        assert_eq!(on_div, Err(PluckerError::OnDivisor(1, 2)));
        let mut vals = random_point(4, 3).unwrap().values;
        *vals.get_mut(&(1, 3)).unwrap() += int(1);
        assert!(matches!(GrassmannPoint::from_values(4, vals), Err(PluckerError::NotOnGrassmannian(..))));
    }

    #[test]
    fn numeric_tolerance() {
        let exact = random_point(5, 11).unwrap().to_numeric();
        let mut vals = exact.values.clone();
        assert!(NumericPoint::new(5, vals.clone()).is_ok());
        *vals.get_mut(&(2, 4)).unwrap() += Complex64::new(1e-3, 0.0);
        assert!(NumericPoint::new(5, vals).is_err());
    }
}
