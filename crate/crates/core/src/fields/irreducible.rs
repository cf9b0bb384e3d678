//! Irreducibility of moduli over the prime field (Rabin's test).

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rem(mut a: Poly, b: &[u64], p: u64) -> Poly {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let k = top - db + i;
                a[k] = (a[k] + (p - c) * bi % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    trim(a)
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(out, f, p)
}

fn pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Poly {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod f`.
fn frobenius_power(k: u32, f: &[u64], p: u64) -> Poly {
    let mut h = rem(vec![0, 1], f, p);
    for _ in 0..k {
        h = pow_mod(&h, p, f, p);
    }
    h
}

fn sub_x(mut h: Poly, p: u64) -> Poly {
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = (h[1] + p - 1) % p;
    trim(h)
}

/// Rabin: monic `f` of degree `m` is irreducible iff `x^(p^m) = x mod f` and
/// `gcd(x^(p^(m/l)) - x, f) = 1` for every prime `l | m`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let m = f.len() as u32 - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if !sub_x(frobenius_power(m, &f, p), p).is_empty() {
        return false;
    }
    let mut n = m;
    let mut l = 2;
    let mut primes = Vec::new();
    while l * l <= n {
        if n % l == 0 {
            primes.push(l);
            while n % l == 0 {
                n /= l;
            }
        }
        l += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes.into_iter().all(|l| {
        let g = gcd(f.clone(), sub_x(frobenius_power(m / l, &f, p), p), p);
        g.len() == 1
    })
}

/// Smallest monic irreducible of degree `m`, ordering candidates by their
/// coefficients from `t^{m-1}` down to `t^0`.
pub(crate) fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut v = idx;
        for _ in 0..m {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}
