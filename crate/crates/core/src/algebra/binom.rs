/// `C(n, k)` reduced modulo the prime `p`, as an integer in `0..p`.
///
/// Negative `n` goes through `C(-i, k) = (-1)^k C(i+k-1, k)`; nonnegative
/// arguments are handled digit by digit (Lucas).
pub fn lucas_binomial(n: i64, k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    if n < 0 {
        let i = n.unsigned_abs();
        let v = lucas_nonneg(i + k - 1, k, p64);
        return if k % 2 == 1 { ((p64 - v) % p64) as u32 } else { v as u32 };
    }
    lucas_nonneg(n as u64, k, p64) as u32
}

fn lucas_nonneg(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for j in 0..k {
        num = num * ((n - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
