//! Integer and modular arithmetic on `u64` with 128-bit intermediates.
//!
//! Everything here is deterministic and pure; moduli are limited to 64 bits,
//! which covers every conductor the search and the bundled tables reach.

use crate::{Error, Result};
use serde::Serialize;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// base^exp mod modulus by square-and-multiply.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!(
            "mod_pow requires modulus >= 2, got {modulus}"
        )));
    }
    Ok(mod_pow_unchecked(base, exp, modulus))
}

pub(crate) fn mod_pow_unchecked(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1u64;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin for the full 64-bit range.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if x == p {
            return true;
        }
        if x % p == 0 {
            return false;
        }
    }
    // This witness set decides primality for all x < 3.3 * 10^24.
    let d = (x - 1) >> (x - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut v = mod_pow_unchecked(a, d, x);
        if v == 1 || v == x - 1 {
            continue;
        }
        for _ in 1..(x - 1).trailing_zeros() {
            v = mul_mod(v, v, x);
            if v == x - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Brent cycle detection; caller guarantees x is composite
/// and has no factor below the trial-division bound.
fn pollard_rho(x: u64) -> u64 {
    if x % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |v: u64| (mul_mod(v, v, x) + c) % x;
        let (mut tortoise, mut hare, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            tortoise = f(tortoise);
            hare = f(f(hare));
            d = gcd(tortoise.abs_diff(hare), x);
        }
        if d != x {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as ascending (prime, exponent) pairs.
///
/// Trial division up to 10^6, then Pollard rho for the remaining cofactor.
pub fn factorize(x: u64) -> Result<Vec<(u64, u32)>> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!(
            "factorize requires x >= 2, got {x}"
        )));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, factors: &mut Vec<(u64, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    let mut rest = x;
    let mut d = 2u64;
    while d <= 1_000_000 && d * d <= rest {
        while rest % d == 0 {
            push(d, &mut factors);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // rest is now 1, prime, or a composite with all factors > 10^6
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    let mut large = Vec::new();
    while let Some(v) = stack.pop() {
        if is_prime(v) {
            large.push(v);
        } else {
            let d = pollard_rho(v);
            stack.push(d);
            stack.push(v / d);
        }
    }
    large.sort_unstable();
    for p in large {
        push(p, &mut factors);
    }
    factors.sort_unstable();
    // merge runs produced by sorting
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(merged)
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    let mut phi = 1u64;
    for (p, e) in factorize(m)? {
        phi *= p.pow(e - 1) * (p - 1);
    }
    Ok(phi)
}

fn carmichael_prime_power(p: u64, e: u32) -> u64 {
    if p == 2 {
        match e {
            1 => 1,
            2 => 2,
            _ => 1u64 << (e - 2),
        }
    } else {
        p.pow(e - 1) * (p - 1)
    }
}

/// Carmichael function (exponent of the unit group).
pub fn carmichael_lambda(m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    let mut lam = 1u64;
    for (p, e) in factorize(m)? {
        lam = lcm(lam, carmichael_prime_power(p, e));
    }
    Ok(lam)
}

/// Smallest r >= 1 with a^r = 1 mod m; computed by factoring lambda(m) and
/// stripping prime factors, not by linear scan.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "multiplicative_order requires m >= 2, got {m}"
        )));
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::InvalidArgument(format!(
            "multiplicative_order requires gcd(a, m) = 1, got a={a}, m={m}"
        )));
    }
    let lam = carmichael_lambda(m)?;
    debug_assert_eq!(mod_pow_unchecked(a, lam, m), 1);
    let mut order = lam;
    for (p, _) in factorize(lam).unwrap_or_default() {
        while order % p == 0 && mod_pow_unchecked(a, order / p, m) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Decomposes m as an odd prime power p^e, if it is one.
pub fn as_odd_prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 3 || m % 2 == 0 {
        return None;
    }
    let factors = factorize(m).ok()?;
    match factors.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Smallest primitive root modulo an odd prime power.
pub fn primitive_root(m: u64) -> Result<u64> {
    let Some((p, _)) = as_odd_prime_power(m) else {
        return Err(Error::InvalidArgument(format!(
            "primitive_root requires an odd prime power, got {m}"
        )));
    };
    let phi = euler_phi(m)?;
    let phi_factors = factorize(phi)?;
    'cand: for c in 2..m {
        if c % p == 0 {
            continue;
        }
        for (f, _) in &phi_factors {
            if mod_pow_unchecked(c, phi / f, m) == 1 {
                continue 'cand;
            }
        }
        return Ok(c);
    }
    unreachable!("odd prime powers always have a primitive root")
}

/// How a power-residue test is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerTestMode {
    /// a^((p-1)/gcd(q, p-1)) = 1 test.
    Exponent,
    /// Enumerate the full set {y^q mod p} and test membership.
    BruteForce,
}

/// Is a a q-th power modulo the prime p?
pub fn qth_power_residue_test(a: u64, q: u64, p: u64, mode: PowerTestMode) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let a = a % p;
    if a == 0 {
        return Err(Error::InvalidArgument(
            "power residue test requires a nonzero residue".into(),
        ));
    }
    match mode {
        PowerTestMode::Exponent => {
            let g = gcd(q, p - 1);
            Ok(mod_pow_unchecked(a, (p - 1) / g, p) == 1)
        }
        PowerTestMode::BruteForce => {
            let mut seen = vec![false; p as usize];
            for y in 1..p {
                seen[mod_pow_unchecked(y, q, p) as usize] = true;
            }
            Ok(seen[a as usize])
        }
    }
}

/// Cyclic decomposition of (Z/m)*: component orders, one generator per
/// component (lifted to residues mod m), and the group exponent.
#[derive(Debug, Clone, Serialize)]
pub struct UnitGroup {
    pub modulus: u64,
    pub component_orders: Vec<u64>,
    pub generators: Vec<u64>,
    pub lambda: u64,
}

/// x = r mod pp, x = 1 mod (m / pp).
fn crt_lift(r: u64, pp: u64, m: u64) -> u64 {
    let other = m / pp;
    if other == 1 {
        return r % m;
    }
    // search the residue class r + k*pp for the unique solution mod m
    let mut x = r % pp;
    while x % other != 1 {
        x += pp;
    }
    x % m
}

/// Structure of (Z/m)* via CRT over the prime-power factors of m.
pub fn unit_group(m: u64) -> Result<UnitGroup> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "unit_group requires m >= 2, got {m}"
        )));
    }
    let mut component_orders = Vec::new();
    let mut generators = Vec::new();
    for (p, e) in factorize(m)? {
        let pp = p.pow(e);
        if p == 2 {
            match e {
                1 => {} // trivial component
                2 => {
                    component_orders.push(2);
                    generators.push(crt_lift(3, 4, m));
                }
                _ => {
                    // (Z/2^e)* = <-1> x <3>
                    component_orders.push(2);
                    generators.push(crt_lift(pp - 1, pp, m));
                    component_orders.push(1u64 << (e - 2));
                    generators.push(crt_lift(3, pp, m));
                }
            }
        } else {
            component_orders.push(p.pow(e - 1) * (p - 1));
            generators.push(crt_lift(primitive_root(pp)?, pp, m));
        }
    }
    let lambda = component_orders.iter().copied().fold(1, lcm);
    Ok(UnitGroup {
        modulus: m,
        component_orders,
        generators,
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_examples() {
        // oracle: repeated multiplication
        let mut v = 1u64;
        for _ in 0..8 {
            v = v * 3 % 17;
        }
        assert_eq!(mod_pow(3, 8, 17).unwrap(), v);
        assert_eq!(v, 16);
        for a in [1u64, 2, 5, 16] {
            assert_eq!(mod_pow(a, 0, 17).unwrap(), 1);
        }
        // Wieferich: 1093^2 divides 2^1092 - 1
        assert_eq!(mod_pow(2, 1092, 1093 * 1093).unwrap(), 1);
        assert!(mod_pow(3, 4, 1).is_err());
        assert!(mod_pow(3, 4, 0).is_err());
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(17));
        assert!(!is_prime(119)); // 7 * 17
        assert!(is_prime(1021));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
    }

    #[test]
    fn is_prime_matches_trial_division_below_10k() {
        let trial = |x: u64| {
            if x < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= x {
                if x % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        };
        for x in 0..10_000u64 {
            assert_eq!(is_prime(x), trial(x), "x = {x}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(119).unwrap(), vec![(7, 1), (17, 1)]);
        assert_eq!(factorize(81).unwrap(), vec![(3, 4)]);
        assert_eq!(factorize(187).unwrap(), vec![(11, 1), (17, 1)]);
        assert!(factorize(1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_reconstructs_product() {
        for x in 2..5_000u64 {
            let p: u64 = factorize(x)
                .unwrap()
                .iter()
                .map(|&(p, e)| p.pow(e))
                .product();
            assert_eq!(p, x);
        }
    }

    #[test]
    fn factorize_large_semiprime_uses_rho() {
        let (p, q) = (1_000_003u64, 1_000_033u64);
        assert!(is_prime(p) && is_prime(q));
        assert_eq!(factorize(p * q).unwrap(), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
        assert_eq!(multiplicative_order(1, 9).unwrap(), 1);
        assert_eq!(multiplicative_order(1, 97).unwrap(), 1);
        assert_eq!(multiplicative_order(3, 128).unwrap(), 32);
        assert!(multiplicative_order(3, 9).is_err());
        assert!(multiplicative_order(6, 10).is_err());
    }

    #[test]
    fn multiplicative_order_matches_linear_scan() {
        for m in 2..200u64 {
            for a in 1..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                let mut r = 1u64;
                let mut v = a % m;
                while v != 1 {
                    v = v * a % m;
                    r += 1;
                }
                assert_eq!(multiplicative_order(a, m).unwrap(), r, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(17).unwrap(), 3);
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(9).unwrap(), 2);
        assert_eq!(primitive_root(25).unwrap(), 2);
        for bad in [1u64, 2, 8, 12, 15, 128] {
            assert!(primitive_root(bad).is_err(), "m = {bad}");
        }
    }

    #[test]
    fn primitive_root_has_full_order_below_2000() {
        for m in 3..2000u64 {
            if as_odd_prime_power(m).is_none() {
                continue;
            }
            let c = primitive_root(m).unwrap();
            let phi = euler_phi(m).unwrap();
            assert_eq!(multiplicative_order(c, m).unwrap(), phi, "m = {m}");
        }
    }

    #[test]
    fn qth_power_examples() {
        use PowerTestMode::*;
        assert!(!qth_power_residue_test(2, 3, 7, Exponent).unwrap());
        assert!(!qth_power_residue_test(2, 3, 7, BruteForce).unwrap());
        assert!(!qth_power_residue_test(5, 2, 17, Exponent).unwrap());
        assert!(qth_power_residue_test(2, 2, 7, Exponent).unwrap()); // 3^2 = 2 mod 7
        assert!(qth_power_residue_test(2, 2, 7, BruteForce).unwrap());
        assert!(qth_power_residue_test(0, 2, 7, Exponent).is_err());
        assert!(qth_power_residue_test(2, 2, 6, Exponent).is_err());
        assert!(qth_power_residue_test(2, 4, 7, Exponent).is_err());
    }

    #[test]
    fn qth_power_modes_agree_below_500() {
        let mut p = 2u64;
        while p < 500 {
            if is_prime(p) {
                for q in [2u64, 3, 5, 7] {
                    for a in 1..p {
                        let e = qth_power_residue_test(a, q, p, PowerTestMode::Exponent).unwrap();
                        let b = qth_power_residue_test(a, q, p, PowerTestMode::BruteForce).unwrap();
                        assert_eq!(e, b, "a={a} q={q} p={p}");
                    }
                }
            }
            p += 1;
        }
    }

    #[test]
    fn unit_group_examples() {
        let g17 = unit_group(17).unwrap();
        assert_eq!(g17.component_orders, vec![16]);
        assert_eq!(g17.lambda, 16);

        let g128 = unit_group(128).unwrap();
        assert_eq!(g128.component_orders, vec![2, 32]);
        assert_eq!(g128.generators, vec![127, 3]);
        assert_eq!(g128.lambda, 32);

        let g119 = unit_group(119).unwrap();
        assert_eq!(g119.component_orders, vec![6, 16]);
        assert_eq!(g119.lambda, 48);

        let g2 = unit_group(2).unwrap();
        assert!(g2.component_orders.is_empty());
        assert_eq!(g2.lambda, 1);

        assert!(unit_group(1).is_err());
    }

    #[test]
    fn unit_group_generator_orders() {
        for m in 2..2000u64 {
            let g = unit_group(m).unwrap();
            let phi: u64 = g.component_orders.iter().product();
            assert_eq!(phi, euler_phi(m).unwrap(), "m = {m}");
            assert_eq!(
                g.lambda,
                g.component_orders.iter().copied().fold(1, lcm),
                "m = {m}"
            );
            for (gen, ord) in g.generators.iter().zip(&g.component_orders) {
                if m > 2 {
                    assert_eq!(multiplicative_order(*gen, m).unwrap(), *ord, "m = {m}");
                }
            }
        }
    }

    #[test]
    fn unit_group_products_cover_units_uniquely_below_10k() {
        for m in 2..10_000u64 {
            let g = unit_group(m).unwrap();
            let mut seen = vec![false; m as usize];
            let k = g.generators.len();
            let mut idx = vec![0u64; k];
            let mut count = 0u64;
            loop {
                let mut v = 1u64 % m;
                for (j, &e) in idx.iter().enumerate() {
                    // m < 10^4 so plain u64 products stay in range
                    let mut t = 1u64;
                    for _ in 0..e {
                        t = t * g.generators[j] % m;
                    }
                    v = v * t % m;
                }
                assert!(!seen[v as usize], "duplicate product mod {m}");
                seen[v as usize] = true;
                count += 1;
                // odometer over component exponents
                let mut j = 0;
                loop {
                    if j == k {
                        break;
                    }
                    idx[j] += 1;
                    if idx[j] < g.component_orders[j] {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == k {
                    break;
                }
            }
            assert_eq!(count, euler_phi(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn order_divides_lambda_below_2000() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for m in 2..2000u64 {
            let lam = carmichael_lambda(m).unwrap();
            for _ in 0..20 {
                let a = rng.gen_range(1..m.max(2));
                if gcd(a, m) != 1 {
                    continue;
                }
                assert_eq!(lam % multiplicative_order(a, m).unwrap(), 0);
            }
        }
    }

    #[test]
    fn carmichael_exponent_kills_all_units_below_2000() {
        for m in 2..2000u64 {
            let lam = carmichael_lambda(m).unwrap();
            for a in 1..m {
                if gcd(a, m) == 1 {
                    assert_eq!(mod_pow_unchecked(a, lam, m), 1, "a={a} m={m}");
                }
            }
        }
    }
}
