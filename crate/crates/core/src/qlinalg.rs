//! Linear algebra over a prime field `F_q` and families of subspaces.
//!
//! A subspace is stored by its reduced row echelon basis, which is a
//! canonical form: two subspaces are equal exactly when their bases are.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numkit::{gaussian_binom, gaussian_binom_exact, invert_gaussian};
use crate::report::BoundReport;

pub type Coeff = u32;

/// Largest ambient space size `q^n` handled by enumeration.
pub const MAX_AMBIENT: u64 = 1 << 16;

/// Default cap on the number of subspaces an enumeration may produce.
pub const DEFAULT_SUBSPACE_CAP: u128 = 1_000_000;

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| q % p != 0)
}

pub fn check_field(q: u32) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

fn ambient_size(q: u32, n: usize) -> Result<u64> {
    let mut size = 1u64;
    for _ in 0..n {
        size = size.saturating_mul(q as u64);
    }
    if size > MAX_AMBIENT {
        return Err(Error::capacity("ambient space q^n", size as u128, MAX_AMBIENT as u128));
    }
    Ok(size)
}

fn inverse(a: Coeff, q: Coeff) -> Coeff {
    let (mut base, mut exp, mut acc) = (a as u64, q as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as Coeff
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(q: Coeff, mut rows: Vec<Vec<Coeff>>) -> Vec<Vec<Coeff>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inverse(rows[rank][col], q);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for r in 0..rows.len() {
            let f = rows[r][col];
            if r != rank && f != 0 {
                for j in 0..n {
                    rows[r][j] = (rows[r][j] + (q - f) * rows[rank][j]) % q;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(q: Coeff, vectors: &[Vec<Coeff>]) -> usize {
    rref(q, vectors.to_vec()).len()
}

/// Base-`q` index of a vector, first coordinate most significant.
pub fn vector_id(v: &[Coeff], q: Coeff) -> u32 {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

pub fn vector_from_id(mut id: u32, q: Coeff, n: usize) -> Vec<Coeff> {
    let mut v = vec![0; n];
    for x in v.iter_mut().rev() {
        *x = id % q;
        id /= q;
    }
    v
}

/// A subspace of `F_q^n` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    q: Coeff,
    n: usize,
    basis: Vec<Vec<Coeff>>,
}

impl Subspace {
    /// Span of the given vectors.
    pub fn span(q: Coeff, n: usize, vectors: Vec<Vec<Coeff>>) -> Result<Self> {
        check_field(q)?;
        for v in &vectors {
            if v.len() != n {
                return Err(Error::invalid(format!("vector {v:?} is not in F_{q}^{n}")));
            }
            if let Some(x) = v.iter().find(|&&x| x >= q) {
                return Err(Error::invalid(format!("coordinate {x} is not in F_{q}")));
            }
        }
        Ok(Subspace {
            q,
            n,
            basis: rref(q, vectors),
        })
    }

    pub fn q(&self) -> Coeff {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Coeff>] {
        &self.basis
    }

    /// Linear combinations of the basis with the given coefficients.
    fn combine(&self, coeffs: &[Coeff]) -> Vec<Coeff> {
        let mut v = vec![0; self.n];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + c * r) % self.q;
            }
        }
        v
    }

    /// Ids of all `q^dim` vectors in the subspace, sorted.
    pub fn element_ids(&self) -> Vec<u32> {
        let count = (self.q as u64).pow(self.dim() as u32);
        let mut ids: Vec<u32> = (0..count as u32)
            .map(|i| {
                let coeffs = vector_from_id(i, self.q, self.dim());
                vector_id(&self.combine(&coeffs), self.q)
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(self.q, rows).len() == self.dim()
    }
}

/// A family of distinct `d`-dimensional subspaces of `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    q: Coeff,
    n: usize,
    d: usize,
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    pub fn new(q: Coeff, n: usize, d: usize, members: Vec<Subspace>) -> Result<Self> {
        check_field(q)?;
        ambient_size(q, n)?;
        if d > n {
            return Err(Error::invalid(format!("dimension {d} exceeds n = {n}")));
        }
        let mut seen = BTreeSet::new();
        for m in &members {
            if m.q != q || m.n != n || m.dim() != d {
                return Err(Error::invalid(format!(
                    "member {:?} is not a {d}-subspace of F_{q}^{n}",
                    m.basis
                )));
            }
            if !seen.insert(m) {
                return Err(Error::invalid(format!("member {:?} appears twice", m.basis)));
            }
        }
        let mut members = members;
        members.sort();
        Ok(SubspaceFamily { q, n, d, members })
    }

    /// Builds a family from spanning sets, each of which must span dimension `d`.
    pub fn from_bases(q: Coeff, n: usize, d: usize, bases: Vec<Vec<Vec<Coeff>>>) -> Result<Self> {
        let members = bases
            .into_iter()
            .map(|b| Subspace::span(q, n, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, n, d, members)
    }

    pub fn q(&self) -> Coeff {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn enumerate_subspaces(q: Coeff, n: usize, d: usize) -> Result<Vec<Subspace>> {
    enumerate_subspaces_capped(q, n, d, DEFAULT_SUBSPACE_CAP)
}

/// All `d`-dimensional subspaces of `F_q^n`, in canonical order.
pub fn enumerate_subspaces_capped(q: Coeff, n: usize, d: usize, cap: u128) -> Result<Vec<Subspace>> {
    check_field(q)?;
    ambient_size(q, n)?;
    if d > n {
        return Ok(Vec::new());
    }
    let count = gaussian_binom_exact(n as u64, d as u64, q as u64);
    let count = count.to_u128().unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::capacity("subspaces", count, cap));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut pivots = Vec::with_capacity(d);
    choose_pivots(q, n, d, 0, &mut pivots, &mut out);
    out.sort();
    Ok(out)
}

fn choose_pivots(q: Coeff, n: usize, d: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Subspace>) {
    if pivots.len() == d {
        fill_free(q, n, pivots, out);
        return;
    }
    for p in start..=n - (d - pivots.len()) {
        pivots.push(p);
        choose_pivots(q, n, d, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Every RREF matrix with the given pivot columns.
fn fill_free(q: Coeff, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let total = (q as u64).pow(free.len() as u32);
    for code in 0..total {
        let mut rows = vec![vec![0; n]; pivots.len()];
        for (r, &p) in pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        let mut c = code;
        for &(r, col) in &free {
            rows[r][col] = (c % q as u64) as Coeff;
            c /= q as u64;
        }
        out.push(Subspace { q, n, basis: rows });
    }
}

/// All `(d-1)`-dimensional subspaces contained in some member.
pub fn subspace_shadow(fam: &SubspaceFamily) -> Result<SubspaceFamily> {
    if fam.d == 0 {
        return Err(Error::precondition("the shadow of 0-dimensional subspaces is undefined"));
    }
    let hyperplanes = enumerate_subspaces(fam.q, fam.d, fam.d - 1)?;
    let mut shadow = BTreeSet::new();
    for m in &fam.members {
        for h in &hyperplanes {
            let vectors = h.basis.iter().map(|coeffs| m.combine(coeffs)).collect();
            shadow.insert(Subspace {
                q: fam.q,
                n: fam.n,
                basis: rref(fam.q, vectors),
            });
        }
    }
    SubspaceFamily::new(fam.q, fam.n, fam.d - 1, shadow.into_iter().collect())
}

/// `|shadow| >= [t choose d-1]_q` where `[t choose d]_q = |F|`.
pub fn check_q_kruskal_katona(fam: &SubspaceFamily) -> Result<BoundReport> {
    if fam.is_empty() {
        return Err(Error::precondition("q-Kruskal-Katona needs a nonempty family"));
    }
    let shadow = subspace_shadow(fam)?;
    let t = invert_gaussian(fam.len() as f64, fam.d, fam.q as u64, 0.0)?.t;
    let bound = gaussian_binom(t, fam.d - 1, fam.q as u64)?;
    Ok(BoundReport::lower(
        "|shadow|",
        num_bigint::BigInt::from(shadow.len()),
        bound,
        "q-Kruskal-Katona: [t choose d-1]_q",
    )
    .with_parameter(t))
}
