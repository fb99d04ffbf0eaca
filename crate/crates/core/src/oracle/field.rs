use crate::error::{Error, Result};

/// Largest field size supported by the table-driven arithmetic.
pub const MAX_FIELD_SIZE: u32 = 64;

/// The finite field `F_q`, `q = p^k <= 64`, with elements `0..q` encoding
/// polynomials in a root `α` of a fixed irreducible modulus (base-`p`
/// digits, least significant first). Arithmetic is by lookup table.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `x ↦ x^{1/p}`, the inverse Frobenius.
    root_p: Vec<u8>,
}

impl FiniteField {
    /// Uses the lexicographically smallest monic irreducible modulus of
    /// degree `k`, comparing coefficient vectors from the constant term up.
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=MAX_FIELD_SIZE).contains(&q) {
            return Err(Error::InvalidInput(format!("field size {q} outside 2..={MAX_FIELD_SIZE}")));
        }
        let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap_or(q);
        let mut k = 0;
        let mut x = q;
        while x.is_multiple_of(p) {
            x /= p;
            k += 1;
        }
        if x != 1 {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        let modulus = smallest_irreducible(p, k);
        let qs = q as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x as u32;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u8 { v.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8 };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum);
                mul[a * qs + b] = encode(&mul_mod(&da, &db, &modulus, p));
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        let mut root_p = vec![0u8; qs];
        for a in 0..qs {
            // a^p for every a; Frobenius is a bijection.
            let mut x = 1u8;
            for _ in 0..p {
                x = mul[x as usize * qs + a];
            }
            root_p[x as usize] = a as u8;
        }
        Ok(FiniteField { p, k, q, modulus, add, mul, neg, inv, root_p })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the modulus, constant term first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn root_p(&self, a: u8) -> u8 {
        self.root_p[a as usize]
    }

    /// The integer `n` reduced into the prime field.
    pub fn from_int(&self, n: u64) -> u8 {
        (n % u64::from(self.p)) as u8
    }
}

/// Product of two polynomials over `F_p` reduced modulo the monic `modulus`.
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, m) in modulus.iter().enumerate() {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k.max(1));
    prod.resize(k, 0);
    prod
}

/// Remainder of `a` modulo a monic `m` over `F_p`.
fn rem_prime(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, x) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * x % p) % p;
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let k = k as usize;
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut f: Vec<u32> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// No monic factor of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            if rem_prime(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}
