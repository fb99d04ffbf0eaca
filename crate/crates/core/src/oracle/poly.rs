use super::field::FiniteField;

/// A polynomial over a [`FiniteField`], constant term first, with no
/// trailing zero coefficients (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<u8>);

impl Poly {
    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<u8>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn mul(&self, other: &Poly, f: &FiniteField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![0u8; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32, f: &FiniteField) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly, f: &FiniteField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.0[dd]);
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![0u8; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c == 0 {
                continue;
            }
            q[top - dd] = c;
            for (i, &x) in divisor.0.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, x));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        match self.0.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = f.inv(lead);
                Poly(self.0.iter().map(|&c| f.mul(c, inv)).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &FiniteField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as u64), c))
                .collect(),
        )
    }

    /// `g` with `g^p = self`, for a polynomial in `x^p` (zero derivative).
    pub fn root_p(&self, f: &FiniteField) -> Poly {
        let p = f.characteristic() as usize;
        Poly::from_coeffs(self.0.iter().step_by(p).map(|&c| f.root_p(c)).collect())
    }
}

/// Squarefree decomposition `f = Π g_i^{m_i}` of a monic polynomial, as
/// pairs `(g_i, m_i)` with each `g_i` squarefree, monic, nonconstant and the
/// `g_i` pairwise coprime.
pub fn squarefree_decomposition(poly: &Poly, f: &FiniteField) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if poly.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.characteristic();
    let d = poly.derivative(f);
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&poly.root_p(f), f) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = poly.gcd(&d, f);
    let mut w = poly.div_rem(&c, f).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_rem(&y, f).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        i += 1;
        c = c.div_rem(&y, f).0;
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.root_p(f), f) {
            out.push((g, m * p));
        }
    }
    out
}

/// Number of geometric points of each multiplicity: pairs
/// `(multiplicity, count)` from the squarefree decomposition.
pub fn multiplicity_pattern(poly: &Poly, f: &FiniteField) -> Vec<(u32, usize)> {
    let mut pattern: Vec<(u32, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(poly, f) {
        let deg = g.degree().unwrap_or(0);
        match pattern.iter_mut().find(|(mm, _)| *mm == m) {
            Some(entry) => entry.1 += deg,
            None => pattern.push((m, deg)),
        }
    }
    pattern.sort_unstable();
    pattern
}

/// Calls `visit` on every monic polynomial of degree `deg` over `f`.
pub fn for_each_monic(f: &FiniteField, deg: usize, visit: &mut dyn FnMut(&Poly)) {
    let q = f.size() as u8;
    let mut coeffs = vec![0u8; deg + 1];
    coeffs[deg] = 1;
    loop {
        visit(&Poly(coeffs.clone()));
        // Odometer increment over the low `deg` coefficients.
        let mut i = 0;
        loop {
            if i == deg {
                return;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
