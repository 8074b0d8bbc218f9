use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

/// `ζ_order^exponent`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: u64) -> Self {
        assert!(order > 0, "root of unity of order 0");
        let e = exponent % order;
        let g = e.gcd(&order);
        if e == 0 {
            return Self { order: 1, exponent: 0 };
        }
        Self { order: order / g, exponent: e / g }
    }

    pub fn one() -> Self {
        Self { order: 1, exponent: 0 }
    }

    /// Exact multiplicative order.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.order.lcm(&other.order);
        Self::new(l, self.exponent * (l / self.order) + other.exponent * (l / other.order))
    }

    pub fn pow(&self, k: u64) -> Self {
        Self::new(self.order, (self.exponent as u128 * k as u128 % self.order as u128) as u64)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.order, self.order - self.exponent)
    }

    /// Exponent of this root written over `ζ_n`; `n` must be a multiple of the order.
    pub fn exponent_over(&self, n: u64) -> u64 {
        debug_assert_eq!(n % self.order, 0);
        self.exponent * (n / self.order)
    }

    pub fn to_complex(&self) -> Complex64 {
        root_complex(self.order, self.exponent)
    }
}

/// `ζ_n^e` as a complex number, exact at the real and imaginary axes.
pub fn root_complex(n: u64, e: u64) -> Complex64 {
    let e = e % n;
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * e == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * e == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * e == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, TAU * e as f64 / n as f64)
}

/// Compensated (Neumaier) summation of complex numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier_add((sum, comp): (f64, f64), x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, comp + c)
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        self.re = neumaier_add(self.re, z.re);
        self.im = neumaier_add(self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = Self::default();
        iter.into_iter().for_each(|z| s.add(z));
        s
    }
}

/// An exact element `Σ_e c_e ζ_n^e` of `ℤ[ζ_n]`, kept as a coefficient
/// vector (not reduced modulo cyclotomic relations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSum {
    coeffs: Vec<i64>,
}

impl CyclotomicSum {
    pub fn new(n: u64) -> Self {
        Self { coeffs: vec![0; n as usize] }
    }

    pub fn order(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// Adds `c · ζ_n^e`.
    pub fn add(&mut self, e: u64, c: i64) {
        let n = self.coeffs.len() as u64;
        self.coeffs[(e % n) as usize] += c;
    }

    pub fn add_root(&mut self, z: &RootOfUnity, c: i64) {
        self.add(z.exponent_over(self.order()), c);
    }

    pub fn merge(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| root_complex(n, e as u64) * c as f64)
            .collect::<CompensatedSum>()
            .value()
    }
}
