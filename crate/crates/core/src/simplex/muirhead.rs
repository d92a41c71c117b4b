use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vectors `a`, `b` (sorted nonincreasing) with `a` majorising `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationPair {
    a: Vec<u32>,
    b: Vec<u32>,
}

impl MajorizationPair {
    /// Sorts both vectors and checks equal length, equal sum and dominance of partial sums.
    pub fn new(mut a: Vec<u32>, mut b: Vec<u32>) -> Result<MajorizationPair> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::domain("exponent vectors must be nonempty and of equal length"));
        }
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        let (mut sa, mut sb) = (0u64, 0u64);
        for (x, y) in a.iter().zip(&b) {
            sa += *x as u64;
            sb += *y as u64;
            if sa < sb {
                return Err(Error::domain(format!("{a:?} does not majorise {b:?}")));
            }
        }
        if sa != sb {
            return Err(Error::domain(format!("{a:?} and {b:?} have different sums")));
        }
        Ok(MajorizationPair { a, b })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `sum_{pi in S_n} prod_i x_{pi(i)}^{e_i}`.
pub fn symmetric_sum(exponents: &[u32], x: &[BigRational]) -> Result<BigRational> {
    if exponents.len() != x.len() {
        return Err(Error::domain("exponent vector and point differ in length"));
    }
    let n = x.len();
    // powers[j][e] = x_j^e
    let max_e = exponents.iter().copied().max().unwrap_or(0) as usize;
    let powers: Vec<Vec<BigRational>> = x
        .iter()
        .map(|v| {
            let mut row = vec![BigRational::one()];
            for e in 1..=max_e {
                let next = &row[e - 1] * v;
                row.push(next);
            }
            row
        })
        .collect();
    let mut total = BigRational::zero();
    for perm in permutations(n) {
        let mut term = BigRational::one();
        for (i, &e) in exponents.iter().enumerate() {
            term *= &powers[perm[i]][e as usize];
        }
        total += term;
    }
    Ok(total)
}

/// The `a`- and `b`-symmetric sums at `p`.
pub fn muirhead_sums(pair: &MajorizationPair, p: &[BigRational]) -> Result<(BigRational, BigRational)> {
    if p.iter().any(|v| !v.is_positive()) {
        return Err(Error::domain("Muirhead points must be strictly positive"));
    }
    Ok((symmetric_sum(&pair.a, p)?, symmetric_sum(&pair.b, p)?))
}

/// Whether the `a`-symmetric sum is at least the `b`-symmetric sum at `p`.
pub fn muirhead_check(pair: &MajorizationPair, p: &[BigRational]) -> Result<bool> {
    let (sa, sb) = muirhead_sums(pair, p)?;
    Ok(sa >= sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::simplex::sorted_exponent_tuples;

    #[test]
    fn am_gm_instance() {
        let pair = MajorizationPair::new(vec![2, 0], vec![1, 1]).unwrap();
        let p = [ratio(3, 1), ratio(5, 7)];
        assert!(muirhead_check(&pair, &p).unwrap());
        let (sa, sb) = muirhead_sums(&pair, &p).unwrap();
        assert_eq!(sa, ratio(9, 1) + ratio(25, 49));
        assert_eq!(sb, ratio(30, 7));
    }

    #[test]
    fn equality_cases() {
        let pair = MajorizationPair::new(vec![3, 1, 0], vec![3, 1, 0]).unwrap();
        let p = [ratio(1, 2), ratio(2, 3), ratio(5, 1)];
        let (sa, sb) = muirhead_sums(&pair, &p).unwrap();
        assert_eq!(sa, sb);

        let pair = MajorizationPair::new(vec![3, 1, 0], vec![2, 1, 1]).unwrap();
        let equal = vec![ratio(2, 5); 3];
        let (sa, sb) = muirhead_sums(&pair, &equal).unwrap();
        assert_eq!(sa, sb);
        let (sa, sb) = muirhead_sums(&pair, &p).unwrap();
        assert!(sa > sb);
    }

    #[test]
    fn edge_exponent_majorises_all_tuples() {
        for d in 2..5usize {
            for k in 3..7u32 {
                let mut a = vec![k - 1, 1];
                a.resize(d, 0);
                for b in sorted_exponent_tuples(d, k) {
                    let pair = MajorizationPair::new(a.clone(), b).unwrap();
                    let p: Vec<_> = (1..=d as i64).map(|i| ratio(i * i, 3)).collect();
                    assert!(muirhead_check(&pair, &p).unwrap());
                }
            }
        }
    }

    #[test]
    fn invalid_pairs() {
        assert!(MajorizationPair::new(vec![1, 1], vec![2, 0]).is_err());
        assert!(MajorizationPair::new(vec![2, 0], vec![1, 0]).is_err());
        assert!(MajorizationPair::new(vec![2, 0], vec![1, 1, 0]).is_err());
        let pair = MajorizationPair::new(vec![0, 2], vec![1, 1]).unwrap();
        assert_eq!(pair.a(), &[2, 0]);
        assert!(muirhead_check(&pair, &[ratio(0, 1), ratio(1, 1)]).is_err());
    }

    #[test]
    fn permutation_count() {
        for n in 0..7 {
            let perms = permutations(n);
            let expected: usize = (1..=n).product();
            assert_eq!(perms.len(), expected);
            let unique: std::collections::HashSet<_> = perms.into_iter().collect();
            assert_eq!(unique.len(), expected);
        }
    }
}
