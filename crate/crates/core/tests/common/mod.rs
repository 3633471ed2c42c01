//! Independent reference computations used only by the test suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use seifert_core::batch::{generate, BatchConfig};
use seifert_core::cyclotomic::Cyclotomic;
use seifert_core::seifert::{d4, sigma_235, sigma_237};
use seifert_core::{AbelianGroup, Character, Rational, SeifertData};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Small named manifolds plus random ones with `|H| <= cap`.
pub fn fixtures(cap: u64) -> Vec<SeifertData> {
    let named = [
        (-2, vec![(2, 1), (2, 1), (3, 1)]),
        (-2, vec![(2, 1), (3, 1), (3, 1)]),
        (-3, vec![(2, 1), (2, 1), (2, 1), (2, 1)]),
        (-2, vec![(3, 1), (3, 2), (4, 1)]),
        (-2, vec![(2, 1), (3, 2), (5, 3)]),
        (-3, vec![(2, 1), (4, 3), (5, 2)]),
        (-3, vec![(2, 1), (2, 1), (2, 1), (3, 2), (3, 1)]),
        (-2, vec![(2, 1), (3, 1), (4, 1)]),
    ];
    let mut out = vec![d4(), sigma_235(), sigma_237()];
    out.extend(named.iter().map(|(b, p)| SeifertData::from_i64(*b, p).unwrap()));
    let cfg = BatchConfig { count: 30, seed: 11, max_alpha: 6, max_arms: 4, h_cap: cap };
    out.extend(generate(&cfg).unwrap());
    out.retain(|s| s.h_order() <= &BigInt::from(cap));
    out
}

// ---------------------------------------------------------------------------
// Polynomials in t over Q(zeta_m), dense, lowest degree first.

type Poly = Vec<Cyclotomic>;

/// `p * (t^a zeta^k - 1)`.
fn mul_factor(p: &Poly, m: u64, a: usize, k: u64) -> Poly {
    let mut out = vec![Cyclotomic::zero(m); p.len() + a];
    for (i, c) in p.iter().enumerate() {
        out[i + a] = &out[i + a] + &c.mul_root(k as i64);
        out[i] = &out[i] - c;
    }
    out
}

fn at_one(p: &Poly, m: u64) -> Cyclotomic {
    p.iter().fold(Cyclotomic::zero(m), |acc, c| &acc + c)
}

/// Quotient of `p` by `t - 1`, assuming `p(1) = 0`.
fn div_t_minus_one(p: &Poly, m: u64) -> Poly {
    let n = p.len();
    let mut quot = vec![Cyclotomic::zero(m); n - 1];
    let mut carry = Cyclotomic::zero(m);
    for i in (1..n).rev() {
        carry = &carry + &p[i];
        quot[i - 1] = carry.clone();
    }
    quot
}

/// `lim_{t->1}` of the rational function, found by expanding numerator and
/// denominator and cancelling `t - 1` until the denominator survives.
pub fn limit_by_cancellation(s: &SeifertData, g: &AbelianGroup, chi: &Character) -> Cyclotomic {
    let m = g.exponent();
    let alpha = s.alpha_lcm().to_usize().unwrap();
    let nu = s.num_arms();
    let one: Poly = vec![Cyclotomic::one(m)];
    let mut num = one.clone();
    let c0 = g.evaluate_generator(chi, 0);
    for _ in 0..nu - 2 {
        num = mul_factor(&num, m, alpha, c0);
    }
    let mut den = one;
    for (i, a) in s.alphas().enumerate() {
        let a = a.to_usize().unwrap();
        den = mul_factor(&den, m, alpha / a, g.evaluate_generator(chi, i + 1));
    }
    loop {
        let d1 = at_one(&den, m);
        if !d1.is_zero() {
            return &at_one(&num, m) * &d1.invert().unwrap();
        }
        assert!(at_one(&num, m).is_zero(), "limit is infinite");
        num = div_t_minus_one(&num, m);
        den = div_t_minus_one(&den, m);
    }
}

/// `(1/|H|) sum_{chi != 1} conj(chi)(h) L_chi`, one character at a time.
pub fn torsion_by_direct_sum(
    g: &AbelianGroup,
    limits: &[(Character, Cyclotomic)],
    h: &seifert_core::GroupElement,
) -> Rational {
    let m = g.exponent();
    let mut total = Cyclotomic::zero(m);
    for (chi, l) in limits {
        total = &total + &l.mul_root(-(g.evaluate(chi, h) as i64));
    }
    total.to_rational().unwrap() / q(g.order() as i64)
}

// ---------------------------------------------------------------------------
// Coefficients of the averaged series by enumerating monomials.

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of `t^target` in `(1/|H|) sum_chi conj(chi)(h) P_chi(t)`
/// expanded around `t = 0`, where `h` has coordinates `h_coords`. Each
/// monomial `g_0^k prod g_i^{s_i}` survives the average iff it equals `h`.
pub fn averaged_coefficient(s: &SeifertData, g: &AbelianGroup, h_coords: &[u64], target: u64) -> BigInt {
    let alpha = s.alpha_lcm().to_u64().unwrap();
    let nu = s.num_arms();
    let steps: Vec<u64> = s.alphas().map(|a| alpha / a.to_u64().unwrap()).collect();
    let mut total = BigInt::zero();
    for k in 0..=(nu as u64 - 2) {
        if alpha * k > target {
            break;
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let weight = binomial(nu as u64 - 2, k) * sign;
        let mut word = vec![BigInt::zero(); nu + 1];
        word[0] = BigInt::from(k);
        enumerate_arms(g, &steps, 0, target - alpha * k, &mut word, h_coords, &weight, &mut total);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn enumerate_arms(
    g: &AbelianGroup,
    steps: &[u64],
    i: usize,
    rest: u64,
    word: &mut Vec<BigInt>,
    h: &[u64],
    weight: &BigInt,
    total: &mut BigInt,
) {
    if i + 1 == steps.len() {
        if !rest.is_multiple_of(steps[i]) {
            return;
        }
        word[i + 1] = BigInt::from(rest / steps[i]);
        if g.element_from_word(word).unwrap().coords() == h {
            *total += weight;
        }
        return;
    }
    let mut used = 0;
    while used <= rest {
        word[i + 1] = BigInt::from(used / steps[i]);
        enumerate_arms(g, steps, i + 1, rest - used, word, h, weight, total);
        used += steps[i];
    }
}

// ---------------------------------------------------------------------------
// Truncated power series over Q.

const ORDER: usize = 4;

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ORDER];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < ORDER {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_inv(a: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ORDER];
    out[0] = a[0].recip();
    for n in 1..ORDER {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += &a[k] * &out[n - k];
        }
        out[n] = -acc * &out[0];
    }
    out
}

/// `((1 + x)^a - 1) / x`, truncated.
fn shifted_power(a: &BigInt) -> Vec<Rational> {
    (1..=ORDER as u64)
        .map(|j| {
            let mut c = Rational::one();
            for i in 0..j {
                c = c * (Rational::from_integer(a - BigInt::from(i))) / q(i as i64 + 1);
            }
            c
        })
        .collect()
}

fn compose(f: &[Rational], x_of_u: &[Rational]) -> Vec<Rational> {
    // x_of_u has zero constant term
    let mut out = vec![Rational::zero(); ORDER];
    let mut power = {
        let mut p = vec![Rational::zero(); ORDER];
        p[0] = Rational::one();
        p
    };
    for c in f {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += c * p;
        }
        power = series_mul(&power, x_of_u);
    }
    out
}

/// Constant term of `P_1(t)/|H|` in powers of `u = t^o - 1`, by expanding
/// in `x = t - 1` and substituting the series inverse of `u(x)`.
pub fn constant_term_by_series(s: &SeifertData) -> Rational {
    let alpha = s.alpha_lcm();
    let nu = s.num_arms();
    // P_1 = x^{nu-2} A(x)^{nu-2} / (x^nu prod B_i(x)) = x^{-2} F(x)
    let a = shifted_power(alpha);
    let mut f = vec![Rational::zero(); ORDER];
    f[0] = Rational::one();
    for _ in 0..nu - 2 {
        f = series_mul(&f, &a);
    }
    for ai in s.alphas() {
        f = series_mul(&f, &series_inv(&shifted_power(&(alpha / ai))));
    }
    // u = x U(x); P_1 = u^{-2} (U^2 F)
    let big_u = shifted_power(s.o());
    let g = series_mul(&series_mul(&big_u, &big_u), &f);
    // invert u = x U(x) for x(u), to the needed order
    let mut x_of_u = vec![Rational::zero(); ORDER];
    x_of_u[1] = big_u[0].recip();
    for n in 2..ORDER {
        let mut u_series: Vec<Rational> = vec![Rational::zero(); ORDER];
        let mut power = x_of_u.clone();
        for c in &big_u {
            for (o, p) in u_series.iter_mut().zip(&power) {
                *o += c * p;
            }
            power = series_mul(&power, &x_of_u);
        }
        // u_series should be u; correct the first wrong coefficient
        x_of_u[n] -= &u_series[n] / &big_u[0];
    }
    let g_of_u = compose(&g, &x_of_u);
    g_of_u[2].clone() / Rational::from_integer(s.h_order().clone())
}

// ---------------------------------------------------------------------------

/// Dedekind sum straight from the sawtooth definition.
pub fn dedekind_by_definition(h: i64, k: i64) -> Rational {
    let saw = |x: Rational| -> Rational {
        if x.is_integer() {
            Rational::zero()
        } else {
            &x - x.floor() - r(1, 2)
        }
    };
    (1..k).map(|i| saw(r(i, k)) * saw(r(h * i, k))).sum()
}

/// Graded pieces of `C[x, y, z] / (x^2 + y^3 + z^7)` with weights
/// `(21, 14, 6)`: monomials with `x`-degree below two form a basis.
pub fn brieskorn_237_dimension(d: u64) -> u64 {
    let mut n = 0;
    for a in 0..2u64 {
        for b in 0..=d / 14 {
            let used = 21 * a + 14 * b;
            if used <= d && (d - used).is_multiple_of(6) {
                n += 1;
            }
        }
    }
    n
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
