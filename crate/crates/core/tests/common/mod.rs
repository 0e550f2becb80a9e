//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the library's field or matrix code.

#![allow(dead_code)]

/// GF(p^N) by schoolbook polynomial arithmetic. Elements are packed as
/// `Σ c_i p^i`.
#[derive(Clone, Debug)]
pub struct PolyField {
    pub p: u32,
    /// monic, constant term first
    pub modulus: Vec<u32>,
    pub alpha: u32,
    table: Vec<u32>,
}

impl PolyField {
    pub fn new(p: u32, modulus: &[u32], alpha: u32) -> Self {
        let mut f = PolyField {
            p,
            modulus: modulus.to_vec(),
            alpha,
            table: Vec::new(),
        };
        let q = f.order();
        if q <= 64 {
            f.table = (0..q * q).map(|i| f.mul_poly(i / q, i % q)).collect();
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree() as u32)
    }

    fn unpack(&self, mut x: u32) -> Vec<u32> {
        let mut c = vec![0; self.degree()];
        for slot in c.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        c
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let s: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u32> = self.unpack(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.table.is_empty() {
            self.mul_poly(a, b)
        } else {
            self.table[(a * self.order() + b) as usize]
        }
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (a, b) = (self.unpack(a), self.unpack(b));
        let n = self.degree();
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (n..2 * n).rev() {
            let c = prod[top];
            if c != 0 {
                for (k, &m) in self.modulus.iter().enumerate() {
                    let idx = top - n + k;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
            }
        }
        let low: Vec<u32> = prod[..n].iter().map(|&x| x as u32).collect();
        self.pack(&low)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn alpha_pow(&self, e: u64) -> u32 {
        self.pow(self.alpha, e % (self.order() as u64 - 1))
    }

    /// Leibniz expansion, sides up to 3.
    pub fn det(&self, m: &[Vec<u32>]) -> u32 {
        let perms: &[(&[usize], bool)] = match m.len() {
            1 => &[(&[0], true)],
            2 => &[(&[0, 1], true), (&[1, 0], false)],
            3 => &[
                (&[0, 1, 2], true),
                (&[1, 2, 0], true),
                (&[2, 0, 1], true),
                (&[0, 2, 1], false),
                (&[2, 1, 0], false),
                (&[1, 0, 2], false),
            ],
            _ => panic!("unsupported size"),
        };
        let mut acc = 0;
        for (perm, even) in perms {
            let term = perm.iter().enumerate().fold(1, |t, (r, &c)| self.mul(t, m[r][c]));
            acc = if *even {
                self.add(acc, term)
            } else {
                self.sub(acc, term)
            };
        }
        acc
    }
}

/// Base matrix `m(T) x n` straight from the defining formula, as field
/// values of `f`.
pub fn base_matrix(f: &PolyField, sets: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let rows = *sets.iter().flatten().max().unwrap() as usize;
    let mut b = vec![vec![0; n]; rows];
    for (k0, set) in sets.iter().enumerate() {
        for &i in set {
            b[i as usize - 1][k0] = f.alpha_pow(i as u64 * (k0 as u64 + 1));
        }
    }
    b[0][n - 1] = 1;
    b
}

/// Minimum weight of a truncated codeword `(v_0, ..., v_j)` with
/// `v_0 != 0`, for every `j <= horizon`, by running through all
/// information sequences. The parity symbol of block `t` is the only
/// unknown in row `t` of `H_j^c`, with coefficient 1.
pub fn brute_force_column_distances(f: &PolyField, sets: &[Vec<u32>], n: usize, horizon: usize) -> Vec<usize> {
    let b = base_matrix(f, sets, n);
    let q = f.order() as u64;
    let k = n - 1;
    (0..=horizon)
        .map(|j| {
            let symbols = k * (j + 1);
            let total = q.pow(symbols as u32);
            let mut best = usize::MAX;
            for idx in 0..total {
                let mut rest = idx;
                let u: Vec<u32> = (0..symbols)
                    .map(|_| {
                        let d = (rest % q) as u32;
                        rest /= q;
                        d
                    })
                    .collect();
                if u[..k].iter().all(|&x| x == 0) {
                    continue;
                }
                let mut weight = u.iter().filter(|&&x| x != 0).count();
                for t in 0..=j {
                    let mut acc = 0;
                    for i in 0..=t {
                        if i >= b.len() {
                            break;
                        }
                        for c in 0..k {
                            acc = f.add(acc, f.mul(b[i][c], u[(t - i) * k + c]));
                        }
                    }
                    if acc != 0 {
                        weight += 1;
                    }
                }
                best = best.min(weight);
            }
            best
        })
        .collect()
}

/// Every family of `count` sets of `size` elements from `1..=max`, listed
/// in nondecreasing order, whose within-set differences are distinct.
pub fn relaxed_families(count: usize, size: usize, max: u32) -> Vec<Vec<Vec<u32>>> {
    let singles: Vec<Vec<u32>> = subsets(1, max, size)
        .into_iter()
        .filter(|s| {
            let mut d: Vec<u32> = Vec::new();
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    d.push(s[b] - s[a]);
                }
            }
            let len = d.len();
            d.sort_unstable();
            d.dedup();
            d.len() == len
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(singles: &[Vec<u32>], count: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u32>>>) {
        if stack.len() == count {
            out.push(stack.iter().map(|&i| singles[i].clone()).collect());
            return;
        }
        for i in start..singles.len() {
            stack.push(i);
            rec(singles, count, i, stack, out);
            stack.pop();
        }
    }
    rec(&singles, count, 0, &mut stack, &mut out);
    out
}

fn subsets(lo: u32, hi: u32, size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in subsets(first + 1, hi, size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Strict validity by listing every difference of every set.
pub fn strictly_valid(sets: &[Vec<u32>]) -> bool {
    let mut d: Vec<u32> = Vec::new();
    for s in sets {
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                d.push(s[b] - s[a]);
            }
        }
    }
    let len = d.len();
    d.sort_unstable();
    d.dedup();
    d.len() == len
}
