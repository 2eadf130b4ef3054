//! Independent oracles for the integration tests. Nothing here calls into
//! the crate's own Bessel tables or quadrature.
#![allow(dead_code)]

use std::f64::consts::PI;

pub const C: f64 = 299_792_458.0;
pub const MU0: f64 = 1.256_637_062_12e-6;
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// `J_n(x)` from Bessel's integral `(1/pi) int_0^pi cos(n t - x sin t) dt`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    simpson(|t| (n as f64 * t - x * t.sin()).cos(), 0.0, PI, 256) / PI
}

/// Zero of `f` in `[a, b]` by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    assert!(fa * f(b) < 0.0, "no sign change");
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm * fa <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// First positive zero of `J_1`, the radial root of every TE0n1 mode.
pub fn j1_first_zero() -> f64 {
    bisect(|x| bessel_j(1, x), 3.0, 4.5)
}

/// Closed-form TE011 mode of an empty cylinder, `E_phi = J1(kc r) sin(beta z)`.
pub struct Te011 {
    pub a: f64,
    pub d: f64,
    pub kc: f64,
    pub beta: f64,
    pub omega: f64,
}

impl Te011 {
    pub fn new(a: f64, d: f64) -> Self {
        let kc = j1_first_zero() / a;
        let beta = PI / d;
        Te011 {
            a,
            d,
            kc,
            beta,
            omega: C * (kc * kc + beta * beta).sqrt(),
        }
    }

    pub fn frequency(&self) -> f64 {
        self.omega / (2.0 * PI)
    }

    pub fn e_phi(&self, r: f64, z: f64) -> f64 {
        bessel_j(1, self.kc * r) * (self.beta * z).sin()
    }

    pub fn h_r(&self, r: f64, z: f64) -> f64 {
        -self.beta / (self.omega * MU0) * bessel_j(1, self.kc * r) * (self.beta * z).cos()
    }

    pub fn h_z(&self, r: f64, z: f64) -> f64 {
        self.kc / (self.omega * MU0) * bessel_j(0, self.kc * r) * (self.beta * z).sin()
    }

    fn radial(&self, n: i32, r1: f64) -> f64 {
        simpson(|r| bessel_j(n, self.kc * r).powi(2) * r, 0.0, r1, 400)
    }

    /// `(1/2) eps0 int E^2 dV`.
    pub fn w_e(&self) -> f64 {
        0.5 * EPS0 * 2.0 * PI * self.radial(1, self.a) * self.d / 2.0
    }

    /// `(1/2) mu0 int H^2 dV` over `r < r1`.
    pub fn w_m_inside(&self, r1: f64) -> f64 {
        let k = 1.0 / (self.omega * MU0);
        let hr = (self.beta * k).powi(2) * self.radial(1, r1);
        let hz = (self.kc * k).powi(2) * self.radial(0, r1);
        0.5 * MU0 * 2.0 * PI * (hr + hz) * self.d / 2.0
    }

    pub fn w_m(&self) -> f64 {
        self.w_m_inside(self.a)
    }

    /// `omega mu0 int H^2 dV / oint H_t^2 dS` over both end plates and the side wall.
    pub fn geometric_factor(&self) -> f64 {
        let k = 1.0 / (self.omega * MU0);
        let plates = 2.0 * 2.0 * PI * (self.beta * k).powi(2) * self.radial(1, self.a);
        let side = 2.0 * PI * self.a * self.d / 2.0 * (self.kc * k * bessel_j(0, self.kc * self.a)).powi(2);
        self.omega * MU0 * (2.0 * self.w_m() / MU0) / (plates + side)
    }
}
