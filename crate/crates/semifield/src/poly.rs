//! Dense univariate polynomials over F_p, little-endian coefficient vectors.
//!
//! Only what tower construction needs: arithmetic modulo a monic polynomial,
//! irreducibility testing, and the search for the canonical modulus.

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose q = p^e with p prime, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

pub(crate) fn modpow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    modpow(a % p, p - 2, p)
}

pub(crate) fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
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
    trim(out)
}

pub(crate) fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

/// Remainder of a modulo the monic polynomial m.
pub(crate) fn rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = deg(m).expect("modulus must be nonzero");
    debug_assert_eq!(m[md], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rd) = deg(&r) {
        if rd < md {
            break;
        }
        let lead = r[rd];
        let shift = rd - md;
        for (i, &c) in m.iter().enumerate().take(md + 1) {
            r[i + shift] = (r[i + shift] + p - lead * c % p) % p;
        }
    }
    r.truncate(md);
    while r.len() < md {
        r.push(0);
    }
    r
}

pub(crate) fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let bd = deg(&b).unwrap();
        let lead_inv = inv_mod(b[bd], p);
        let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
        let r = trim(rem(p, &a, &monic));
        a = b;
        b = r;
    }
    a
}

/// base^exp modulo the monic polynomial m.
pub(crate) fn powmod(p: u64, base: &[u64], mut exp: u128, m: &[u64]) -> Vec<u64> {
    let md = deg(m).expect("modulus must be nonzero");
    let mut acc = vec![0u64; md];
    if md > 0 {
        acc[0] = 1;
    }
    let mut b = rem(p, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(p, &mul(p, &acc, &b), m);
        }
        b = rem(p, &mul(p, &b, &b), m);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility of a monic polynomial f over F_p: T^{p^d} = T mod f and
/// gcd(T^{p^{d/l}} - T, f) = 1 for every prime l dividing d.
pub(crate) fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = match deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    debug_assert_eq!(f[d], 1);
    let x = vec![0u64, 1];
    let order = (p as u128).pow(d as u32);
    let frob_d = powmod(p, &x, order, f);
    if trim(sub(p, &frob_d, &x)) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_factors(d) {
        let sub_order = (p as u128).pow((d / l) as u32);
        let frob = powmod(p, &x, sub_order, f);
        let g = gcd(p, &sub(p, &frob, &x), f);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// The canonical modulus of degree d over F_p: the monic irreducible whose
/// non-leading coefficient tuple (c_0, ..., c_{d-1}) is smallest as a
/// little-endian base-p integer. Returns the full monic coefficient vector.
pub(crate) fn canonical_irreducible(p: u64, d: usize) -> Vec<u64> {
    let total = (p as u128).pow(d as u32);
    let mut code = 0u128;
    while code < total {
        let mut f = vec![0u64; d + 1];
        let mut m = code;
        for c in f.iter_mut().take(d) {
            *c = (m % p as u128) as u64;
            m /= p as u128;
        }
        f[d] = 1;
        if is_irreducible(p, &f) {
            return f;
        }
        code += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Parse a polynomial in `T` with integer coefficients, e.g. `2T+1`,
/// `T^2-2`, `0`. Coefficients are reduced mod p.
pub(crate) fn parse(p: u64, text: &str) -> Result<Vec<u64>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut i = 0usize;
    let mut sign_next = 1i64;
    if s[0] == '+' || s[0] == '-' {
        sign_next = if s[0] == '-' { -1 } else { 1 };
        i = 1;
    }
    while i < s.len() {
        let sign = sign_next;
        // coefficient digits
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coef: u64 = if start == i {
            1
        } else {
            s[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse(text.to_string()))?
        };
        // optional variable with exponent
        let exp: usize = if i < s.len() && s[i] == 'T' {
            i += 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let es = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(Error::Parse(text.to_string()));
                }
                s[es..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(text.to_string()))?
            } else {
                1
            }
        } else {
            if start == i {
                return Err(Error::Parse(text.to_string()));
            }
            0
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let signed = if sign < 0 { (p - coef % p) % p } else { coef % p };
        coeffs[exp] = (coeffs[exp] + signed) % p;
        // separator
        if i < s.len() {
            match s[i] {
                '+' => sign_next = 1,
                '-' => sign_next = -1,
                _ => return Err(Error::Parse(text.to_string())),
            }
            i += 1;
            if i == s.len() {
                return Err(Error::Parse(text.to_string()));
            }
        }
    }
    Ok(trim(coeffs))
}

/// Render little-endian coefficients as a polynomial in `T`, highest degree first.
pub(crate) fn render(coeffs: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "T".to_string(),
            (1, c) => format!("{c}T"),
            (k, 1) => format!("T^{k}"),
            (k, c) => format!("{c}T^{k}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}
