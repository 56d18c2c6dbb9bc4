//! Exact integer and rational linear algebra: gcds, the two-variable linear
//! Diophantine solver, and the rational kernel rank of centrality lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::group::{CyclicCentralSubgroup, GroupElement};

/// Greatest common divisor of a nonempty list, at least one entry nonzero.
/// Always positive.
pub fn gcd_many(values: &[BigInt]) -> Result<BigInt, Error> {
    if values.is_empty() || values.iter().all(Zero::is_zero) {
        return Err(Error::GcdAllZero);
    }
    Ok(values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)))
}

/// One integer solution of `p·X + q·Y = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub x: BigInt,
    pub y: BigInt,
}

/// Solves `p·X + q·Y = r` over the integers.
///
/// A solution exists iff `gcd(p, q)` divides `r`. The returned solution is
/// canonical: the extended-Euclid base solution with `x` normalized to the
/// least *positive* representative of its residue class modulo `|q/gcd|`
/// (so `x ∈ (0, |q/gcd|]`), making the output reproducible across runs and
/// platforms. The degenerate axes `q = 0` and `p = 0` return `(r/p, 0)` and
/// `(0, r/q)` respectively.
pub fn solve_linear_2var(
    p: &BigInt,
    q: &BigInt,
    r: &BigInt,
) -> Result<Option<DiophantineSolution>, Error> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroCoefficients { r: r.clone() });
    }
    let g = p.gcd(q);
    if !r.is_multiple_of(&g) {
        return Ok(None);
    }
    let sol = if q.is_zero() {
        DiophantineSolution {
            x: r / p,
            y: BigInt::zero(),
        }
    } else if p.is_zero() {
        DiophantineSolution {
            x: BigInt::zero(),
            y: r / q,
        }
    } else {
        let ext = p.extended_gcd(q);
        let scale = r / &ext.gcd;
        let modulus = (q / &ext.gcd).abs();
        let mut x = (&ext.x * &scale).mod_floor(&modulus);
        if x.is_zero() {
            x = modulus;
        }
        let y = (r - p * &x) / q;
        DiophantineSolution { x, y }
    };
    debug_assert_eq!(p * &sol.x + q * &sol.y, *r);
    Ok(Some(sol))
}

/// Reduces `m` (with `cols` columns) to reduced row echelon form in place and
/// returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= lead.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..cols {
                    let t = &f * &m[row][c];
                    m[i][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the rational nullspace of the matrix, one vector per free column.
pub fn rational_nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Clears denominators and common factors: the primitive integer vector with
/// the same direction (leading sign positive, inherited from RREF rows).
fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.iter().map(|x| x / &g).collect()
    }
}

/// Rank and integer basis of the lattice of exponent tuples `(m_1, …, m_s)`
/// for which `α_1^{m_1} ⋯ α_s^{m_s}` is central modulo `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityKernel {
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
}

/// Torsion-free rank of the centrality kernel for a *pair* of elements, plus
/// an integer basis of its rational span. Rank 0 certifies that the pair
/// contributes rank 2 over the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel_rank: usize,
    pub basis: Vec<[BigInt; 2]>,
}

/// Computes the centrality kernel of `α_1, …, α_s` modulo `C`.
///
/// For each generator `x_k` the commutator-exponent vector of
/// `[∏ α_i^{m_i}, x_k]` is `Σ m_i · d(α_i, x_k)`, and centrality mod `C`
/// requires it to lie in `ℤ·a` — one multiplier variable `l_k` per `k`. The
/// rational solution space of the stacked system is projected onto the
/// `(m_1, …, m_s)` coordinates; its dimension is the torsion-free rank of the
/// integer lattice, so no Smith normal form is needed. Each reported basis
/// vector is primitive up to the minimal scaling that makes all multipliers
/// `l_k` integral, so substituting it back always passes the centrality test.
///
/// Panics on rank mismatch between the elements and `C`.
pub fn centrality_kernel(alphas: &[GroupElement], c: &CyclicCentralSubgroup) -> CentralityKernel {
    let s = alphas.len();
    assert!(s > 0, "need at least one element");
    let n = c.n();
    for alpha in alphas {
        assert_eq!(
            alpha.n(),
            n,
            "rank mismatch in kernel computation: {} vs {}",
            alpha.n(),
            n
        );
    }
    let m = c.exponents().len();
    let cols = s + n;

    // d[i][k-1] = commutator exponents of [alpha_i, x_k]
    let d: Vec<Vec<Vec<BigInt>>> = alphas
        .iter()
        .map(|alpha| {
            (1..=n)
                .map(|k| {
                    let x_k = GroupElement::generator(n, k).expect("k in range");
                    alpha.commutator_exponents(&x_k)
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(n * m);
    for k in 0..n {
        for t in 0..m {
            let mut row = vec![BigRational::zero(); cols];
            for i in 0..s {
                row[i] = BigRational::from(d[i][k][t].clone());
            }
            row[s + k] = BigRational::from(-c.exponents()[t].clone());
            rows.push(row);
        }
    }

    let nullspace = rational_nullspace(&rows, cols);

    // project to the (m_1, …, m_s) coordinates and reduce to a basis
    let mut projected: Vec<Vec<BigRational>> = nullspace.iter().map(|v| v[..s].to_vec()).collect();
    let pivots = rref(&mut projected, s);
    let rank = pivots.len();

    let basis: Vec<Vec<BigInt>> = projected[..rank]
        .iter()
        .map(|v| {
            let ints = primitive_integer_vector(v);
            scale_to_integral_multipliers(ints, &d, c)
        })
        .collect();

    debug_assert!(basis.iter().all(|v| {
        let g = alphas.iter().zip(v).fold(
            GroupElement::identity(n).expect("n >= 1"),
            |acc, (alpha, mi)| acc.mul(&alpha.pow(mi)),
        );
        c.is_central_mod_c(&g)
    }));

    CentralityKernel { rank, basis }
}

/// Scales an exponent tuple in the rational kernel by the least positive
/// factor making every per-generator multiplier `l_k` an integer. The factor
/// is 1 unless the entries of `a` share a common divisor.
fn scale_to_integral_multipliers(
    v: Vec<BigInt>,
    d: &[Vec<Vec<BigInt>>],
    c: &CyclicCentralSubgroup,
) -> Vec<BigInt> {
    let a = c.exponents();
    let t0 = a.iter().position(|x| !x.is_zero()).expect("a is nonzero");
    let mut scale = BigInt::one();
    for k in 0..c.n() {
        let w: Vec<BigInt> = (0..a.len())
            .map(|t| d.iter().zip(&v).map(|(di, mi)| &di[k][t] * mi).sum())
            .collect();
        let lk = BigRational::new(w[t0].clone(), a[t0].clone());
        for t in 0..a.len() {
            let lhs = BigRational::from(w[t].clone());
            let rhs = &lk * BigRational::from(a[t].clone());
            assert_eq!(lhs, rhs, "projected kernel vector is not proportional to a");
        }
        scale = scale.lcm(lk.denom());
    }
    if scale.is_one() {
        v
    } else {
        v.into_iter().map(|x| x * &scale).collect()
    }
}

/// The pair case of [`centrality_kernel`]: the lattice of `(m_1, m_2)` with
/// `α_1^{m_1} α_2^{m_2}` central modulo `C`.
pub fn kernel_rank(
    alpha1: &GroupElement,
    alpha2: &GroupElement,
    c: &CyclicCentralSubgroup,
) -> KernelReport {
    let kernel = centrality_kernel(&[alpha1.clone(), alpha2.clone()], c);
    KernelReport {
        kernel_rank: kernel.rank,
        basis: kernel
            .basis
            .into_iter()
            .map(|v| {
                let mut it = v.into_iter();
                [it.next().expect("pair"), it.next().expect("pair")]
            })
            .collect(),
    }
}
