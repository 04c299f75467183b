//! Addition and multiplication tables for the fields of order 2, 3, 4, 5, 7,
//! 8 and 9.
//!
//! An element of GF(p^e) is stored as the integer whose base-p digits are its
//! polynomial coefficients (lowest degree first). The extension fields use
//! GF(4) = GF(2)[x]/(x²+x+1), GF(8) = GF(2)[x]/(x³+x+1) and
//! GF(9) = GF(3)[x]/(x²+1).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SmallField {
    pub fn new(q: usize) -> Option<Self> {
        // monic modulus, coefficients lowest degree first
        let (p, modulus): (usize, &[usize]) = match q {
            2 | 3 | 5 | 7 => (q, &[0, 1]),
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ => return None,
        };
        let degree = modulus.len() - 1;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..degree)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let value = |coeffs: &[usize]| -> usize { coeffs.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = value(&sum) as u8;

                let mut prod = vec![0usize; 2 * degree];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce by the monic modulus from the top down
                for top in (degree..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (k, &m) in modulus.iter().enumerate() {
                        let idx = top - degree + k;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = value(&prod[..degree]) as u8;
            }
        }
        Some(Self { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = SmallField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!((0..q).filter(|&b| f.mul(a, b) == 1).count(), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(SmallField::new(6).is_none());
    }
}
