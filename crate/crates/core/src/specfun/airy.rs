//! Airy `Ai`, its derivative and its tail integral, in double precision.
//!
//! Evaluation regions:
//! * `|x| <= 5`         — Maclaurin series;
//! * `x > 5`            — Bessel-K integral representation
//!                        `Ai(x) = sqrt(x/3)/pi * K_{1/3}(zeta)`;
//! * `-12 <= x < -5`    — Taylor stepping of `y'' = x y` from `x = -5`
//!                        (stable: both solutions stay bounded there);
//! * `x < -12`          — oscillatory asymptotic expansion.

use std::f64::consts::PI;

const AI0: f64 = 0.355_028_053_887_817_24; // Ai(0) = 3^(-2/3)/Gamma(2/3)
const AIP0: f64 = -0.258_819_403_792_806_8; // Ai'(0) = -3^(-1/3)/Gamma(1/3)

/// `Ai(x)`.
pub fn airy_ai(x: f64) -> f64 {
    airy_both(x).0
}

/// `Ai'(x)`.
pub fn airy_ai_prime(x: f64) -> f64 {
    airy_both(x).1
}

/// `(Ai(x), Ai'(x))` in one evaluation.
pub fn airy_both(x: f64) -> (f64, f64) {
    if x.abs() <= 5.0 {
        maclaurin(x)
    } else if x > 5.0 {
        bessel_k_route(x)
    } else if x >= -12.0 {
        taylor_step_from(-5.0, maclaurin(-5.0), x)
    } else {
        negative_asymptotic(-x)
    }
}

fn maclaurin(x: f64) -> (f64, f64) {
    // Ai = AI0 * f + AIP0 * g with
    // f = sum 3^k (1/3)_k x^{3k} / (3k)!,  g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!.
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut fp, mut gp) = (0.0, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    for k in 0..60u32 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        f += tf;
        g += tg;
        // term-wise derivatives: d/dx x^{3k+3} and x^{3k+4}
        if x != 0.0 {
            fp += tf * (k3 + 3.0) / x;
            gp += tg * (k3 + 4.0) / x;
        }
        if tf.abs() + tg.abs() < 1e-20 * (f.abs() + g.abs()) {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

fn bessel_k_route(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let k13 = bessel_k(1.0 / 3.0, zeta);
    let k23 = bessel_k(2.0 / 3.0, zeta);
    let ai = (x / 3.0).sqrt() / PI * k13;
    let aip = -x / (PI * 3.0f64.sqrt()) * k23;
    (ai, aip)
}

/// `K_nu(z)` for `z >= ~7` via Gauss–Legendre on `int_0^inf e^{-z cosh t} cosh(nu t) dt`.
fn bessel_k(nu: f64, z: f64) -> f64 {
    // e^{-z (cosh t - 1)} < 1e-20 beyond t_max
    let t_max = (1.0 + 46.0 / z).acosh();
    let (nodes, weights) = gauss_legendre_80();
    let mut sum = 0.0;
    for (&u, &w) in nodes.iter().zip(weights) {
        let t = 0.5 * t_max * (u + 1.0);
        sum += w * (-z * t.cosh()).exp() * (nu * t).cosh();
    }
    0.5 * t_max * sum
}

fn taylor_step_from(mut a: f64, mut y: (f64, f64), target: f64) -> (f64, f64) {
    let h_nominal: f64 = if target < a { -0.25 } else { 0.25 };
    loop {
        let remaining = target - a;
        if remaining == 0.0 {
            return y;
        }
        let h = if remaining.abs() <= h_nominal.abs() {
            remaining
        } else {
            h_nominal
        };
        y = taylor_step(a, y, h);
        a += h;
        if (a - target).abs() < 1e-14 {
            return y;
        }
    }
}

// One Taylor step of y'' = x y: coefficients of y(a + s) satisfy
// (k+1)(k+2) c_{k+2} = a c_k + c_{k-1}.
fn taylor_step(a: f64, (y0, y1): (f64, f64), h: f64) -> (f64, f64) {
    const ORDER: usize = 26;
    let mut c = [0.0f64; ORDER + 1];
    c[0] = y0;
    c[1] = y1;
    for k in 0..ORDER - 1 {
        let prev = if k == 0 { 0.0 } else { c[k - 1] };
        c[k + 2] = (a * c[k] + prev) / ((k + 1) as f64 * (k + 2) as f64);
    }
    let mut v = 0.0;
    let mut d = 0.0;
    for k in (0..=ORDER).rev() {
        v = v * h + c[k];
        if k >= 1 {
            d = d * h + k as f64 * c[k];
        }
    }
    (v, d)
}

fn negative_asymptotic(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let phase = zeta + PI / 4.0;
    let (s, c) = (phase.sin(), phase.cos());
    // u_k, v_k coefficients of DLMF 9.7; sums truncated at the smallest term.
    let mut u = 1.0f64;
    let mut even_u = 0.0;
    let mut odd_u = 0.0;
    let mut even_v = 0.0;
    let mut odd_v = 0.0;
    let mut zp = 1.0; // zeta^-k
    for k in 0..24u32 {
        let v = -u * (6.0 * k as f64 + 1.0) / (6.0 * k as f64 - 1.0);
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let tu = sign * u * zp;
        let tv = sign * v * zp;
        if k % 2 == 0 {
            even_u += tu;
            even_v += tv;
        } else {
            odd_u += tu;
            odd_v += tv;
        }
        let next = u * (6.0 * k as f64 + 1.0) * (6.0 * k as f64 + 5.0) / (72.0 * (k as f64 + 1.0));
        if next * zp.abs() / zeta > u * zp.abs() {
            break; // past the smallest term
        }
        u = next;
        zp /= zeta;
    }
    let ai = (s * even_u - c * odd_u) / (PI.sqrt() * x.powf(0.25));
    let aip = -(c * even_v + s * odd_v) * x.powf(0.25) / PI.sqrt();
    (ai, aip)
}

/// `int_u^infinity Ai(v) dv`.
pub fn airy_ai_integral(u: f64) -> f64 {
    if u >= 13.0 {
        // Ai(13) ~ 5e-16, tail negligible at the working tolerance
        return 0.0;
    }
    let (nodes, weights) = gauss_legendre_20();
    let mut total = 0.0;
    let mut a = u;
    while a < 13.0 {
        let b = (a + 1.0).min(13.0);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (&t, &w) in nodes.iter().zip(weights) {
            total += w * half * airy_ai(mid + half * t);
        }
        a = b;
    }
    total
}

/// `int_{-infinity}^{u} Ai(v) dv` for `u <= -13`, via the asymptotic
/// expansion obtained by integrating the oscillatory expansion of `Ai`
/// by parts in the phase variable `zeta = (2/3)|u|^{3/2}`.
///
/// With `g(zeta) = zeta^{-1/2} sum_k (-i)^k u_k zeta^{-k}` the tail is
/// `sqrt(2/(3 pi)) * Im[-e^{i(zeta + pi/4)} h(zeta)]` where
/// `i h + h' = g`, solved order by order.
pub fn airy_ai_left_tail(u: f64) -> f64 {
    assert!(u <= -13.0, "left tail expansion needs u <= -13, got {u}");
    let x = -u;
    let zeta = 2.0 / 3.0 * x.powf(1.5);

    // a_m = (-i)^m u_m as (re, im)
    const M: usize = 14;
    let mut a = [(0.0f64, 0.0f64); M];
    let mut uk = 1.0f64;
    for (m, slot) in a.iter_mut().enumerate() {
        *slot = match m % 4 {
            0 => (uk, 0.0),
            1 => (0.0, -uk),
            2 => (-uk, 0.0),
            _ => (0.0, uk),
        };
        let kf = m as f64;
        uk *= (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
    }

    // b_m = -i (a_m + (m - 1/2) b_{m-1})
    let mut b = [(0.0f64, 0.0f64); M];
    for m in 0..M {
        let (mut re, mut im) = a[m];
        if m > 0 {
            let f = m as f64 - 0.5;
            re += f * b[m - 1].0;
            im += f * b[m - 1].1;
        }
        b[m] = (im, -re); // multiply by -i
    }

    // h(zeta) = sum b_m zeta^{-1/2-m}, truncated at the smallest term
    let mut h = (0.0f64, 0.0f64);
    let mut zp = zeta.powf(-0.5);
    let mut last = f64::INFINITY;
    for &(re, im) in &b {
        let mag = (re * re + im * im).sqrt() * zp;
        if mag > last {
            break;
        }
        h.0 += re * zp;
        h.1 += im * zp;
        last = mag;
        zp /= zeta;
    }

    let phase = zeta + PI / 4.0;
    let (s, c) = (phase.sin(), phase.cos());
    // Im[-e^{i phase} h] = -(c * h.1 + s * h.0)... careful:
    // e^{i p} h = (c + i s)(h0 + i h1); Im = s h0 + c h1.
    let im_part = -(s * h.0 + c * h.1);
    (2.0 / (3.0 * PI)).sqrt() * im_part
}

macro_rules! gl_rule {
    ($fname:ident, $n:expr) => {
        fn $fname() -> (&'static [f64; $n], &'static [f64; $n]) {
            use std::sync::OnceLock;
            static RULE: OnceLock<([f64; $n], [f64; $n])> = OnceLock::new();
            let (x, w) = RULE.get_or_init(|| {
                let mut xs = [0.0; $n];
                let mut ws = [0.0; $n];
                let (xv, wv) = crate::skewlinalg::gauss_legendre($n);
                xs.copy_from_slice(&xv);
                ws.copy_from_slice(&wv);
                (xs, ws)
            });
            (x, w)
        }
    };
}

gl_rule!(gauss_legendre_80, 80);
gl_rule!(gauss_legendre_20, 20);
