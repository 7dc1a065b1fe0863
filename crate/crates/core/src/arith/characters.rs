use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Largest modulus for which the full character table is built.
pub const MAX_CHARACTER_MODULUS: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// χ(n) for n = 0..k−1.
    pub values: Vec<Complex64>,
    pub principal: bool,
    /// Exponent of each cyclic generator, in factor order.
    pub exponents: Vec<u64>,
}

impl DirichletCharacter {
    pub fn eval(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

/// A cyclic factor of (Z/qZ)^* with generator g of order m, q a prime power dividing k.
#[derive(Debug, Clone, Copy)]
struct Cyclic {
    q: u64,
    g: u64,
    order: u64,
}

fn factor(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mult_order(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut m = 1;
    while x != 1 {
        x = x * g % q;
        m += 1;
    }
    m
}

fn cyclic_factors(k: u64) -> Vec<Cyclic> {
    let mut out = Vec::new();
    for (p, e) in factor(k) {
        let q = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => out.push(Cyclic { q, g: 3, order: 2 }),
                _ => {
                    out.push(Cyclic {
                        q,
                        g: q - 1,
                        order: 2,
                    });
                    out.push(Cyclic {
                        q,
                        g: 5,
                        order: q / 4,
                    });
                }
            }
        } else {
            let phi = q / p * (p - 1);
            let g = (2..q)
                .find(|&g| g % p != 0 && mult_order(g, q) == phi)
                .unwrap_or(1);
            out.push(Cyclic {
                q,
                g,
                order: phi.max(1),
            });
        }
    }
    out
}

/// Index of each unit n mod k with respect to the cyclic factors, or None for non-units.
fn index_table(k: u64, factors: &[Cyclic]) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; k as usize];
    let total: u64 = factors.iter().map(|c| c.order).product();
    for flat in 0..total {
        let mut rest = flat;
        let mut exps = Vec::with_capacity(factors.len());
        for c in factors {
            exps.push(rest % c.order);
            rest /= c.order;
        }
        // CRT: the residue mod k whose component mod each q is ∏ g^e over factors sharing q.
        let mut residue = 0u64;
        let mut modulus = 1u64;
        let mut i = 0;
        while i < factors.len() {
            let q = factors[i].q;
            let mut r = 1u64;
            while i < factors.len() && factors[i].q == q {
                let mut pw = 1u64;
                for _ in 0..exps[i] {
                    pw = pw * factors[i].g % q;
                }
                r = r * pw % q;
                i += 1;
            }
            residue = crt(residue, modulus, r, q);
            modulus *= q;
        }
        if factors.is_empty() {
            residue = 1 % k;
        }
        table[residue as usize] = Some(exps);
    }
    table
}

fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    (0..m2)
        .map(|j| r1 + j * m1)
        .find(|x| x % m2 == r2 % m2)
        .unwrap_or(0)
        % m
}

/// e^{2πi·num/den}, exact at the quarter turns.
fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if (4 * num).is_multiple_of(den) {
        return match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
}

/// All φ(k) Dirichlet characters mod k, principal character first.
pub fn characters(k: u64) -> Result<Vec<DirichletCharacter>> {
    if k == 0 || k > MAX_CHARACTER_MODULUS {
        return Err(Error::Domain(format!(
            "character modulus must lie in 1..={MAX_CHARACTER_MODULUS}, got {k}"
        )));
    }
    let factors = cyclic_factors(k);
    let table = index_table(k, &factors);
    let lcm = factors
        .iter()
        .fold(1u64, |l, c| l / gcd(l, c.order) * c.order);
    let total: u64 = factors.iter().map(|c| c.order).product();
    let mut out = Vec::with_capacity(total as usize);
    for flat in 0..total {
        let mut rest = flat;
        let mut js = Vec::with_capacity(factors.len());
        for c in &factors {
            js.push(rest % c.order);
            rest /= c.order;
        }
        let values = table
            .iter()
            .map(|entry| match entry {
                None => Complex64::new(0.0, 0.0),
                Some(ind) => {
                    let num: u64 = factors
                        .iter()
                        .zip(&js)
                        .zip(ind)
                        .map(|((c, j), i)| (j * i % c.order) * (lcm / c.order))
                        .sum();
                    root_of_unity(num, lcm)
                }
            })
            .collect();
        out.push(DirichletCharacter {
            modulus: k,
            values,
            principal: js.iter().all(|&j| j == 0),
            exponents: js,
        });
    }
    Ok(out)
}
