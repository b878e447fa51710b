//! q-cyclotomic cosets modulo n and the involution μ they carry.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::PrimePower;

/// The partition of `Z/n` into q-cyclotomic cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub n: u64,
    pub q: PrimePower,
    pub t: u32,
    /// Minimal element of each coset, ascending; `reps[0] = 0`.
    pub reps: Vec<u64>,
    /// Each coset, sorted.
    pub cosets: Vec<Vec<u64>>,
    /// d_i = |C_i|.
    pub sizes: Vec<u32>,
    /// g_i = gcd(d_i, t).
    pub g: Vec<u32>,
    /// D_i = d_i / g_i.
    pub big_d: Vec<u32>,
}

impl CosetTable {
    pub fn s(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset containing `x mod n`.
    pub fn index_of(&self, x: u64) -> usize {
        let x = x % self.n;
        self.cosets
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("cosets partition Z/n")
    }
}

pub fn cosets(q: PrimePower, n: u64, t: u32) -> Result<CosetTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let qv = q.value();
    if n.gcd(&qv) != 1 {
        return Err(Error::NotCoprime { n, q: qv });
    }
    let qm = qv % n;
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    let mut all = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        loop {
            seen[x as usize] = true;
            orbit.push(x);
            x = ((x as u128 * qm as u128) % n as u128) as u64;
            if x == start {
                break;
            }
        }
        orbit.sort_unstable();
        reps.push(start);
        all.push(orbit);
    }
    let sizes: Vec<u32> = all.iter().map(|c| c.len() as u32).collect();
    let g: Vec<u32> = sizes.iter().map(|&d| d.gcd(&t)).collect();
    let big_d = sizes.iter().zip(&g).map(|(&d, &g)| d / g).collect();
    Ok(CosetTable { n, q, t, reps, cosets: all, sizes, g, big_d })
}

/// Structure of μ: i ↦ index of the coset of −ℓ_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuClassification {
    pub mu: Vec<usize>,
    /// Index of the coset {n/2}, present iff n is even.
    pub i_sharp: Option<usize>,
    #[serde(rename = "I")]
    pub set_i: Vec<usize>,
    #[serde(rename = "F")]
    pub set_f: Vec<usize>,
    #[serde(rename = "M")]
    pub set_m: Vec<usize>,
}

impl MuClassification {
    pub fn partner(&self, h: usize) -> usize {
        self.mu[h]
    }
}

pub fn classify(table: &CosetTable) -> MuClassification {
    let n = table.n;
    let mu: Vec<usize> = table
        .reps
        .iter()
        .map(|&l| table.index_of((n - l % n) % n))
        .collect();
    let i_sharp = n.is_multiple_of(2).then(|| table.index_of(n / 2));
    let mut set_i = vec![0];
    if let Some(i) = i_sharp {
        if i != 0 {
            set_i.push(i);
        }
    }
    let mut set_f = Vec::new();
    let mut set_m = Vec::new();
    for (i, &m) in mu.iter().enumerate() {
        if set_i.contains(&i) {
            continue;
        }
        if m == i {
            set_f.push(i);
        } else if i < m {
            set_m.push(i);
        }
    }
    MuClassification { mu, i_sharp, set_i, set_f, set_m }
}

/// Multiplicative order of q modulo n (1 for n = 1).
pub fn multiplicative_order(q: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let qm = q % n;
    let mut x = qm;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * qm as u128) % n as u128) as u64;
        k += 1;
    }
    k
}
