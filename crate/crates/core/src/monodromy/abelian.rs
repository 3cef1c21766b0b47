use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::group::{MappingTorus, OrbifoldGroup};
use super::word::Word;

/// `Z^r ⊕ ⊕ Z/d_i` with every `d_i > 1`, listed so that `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    /// `|Hom(G, Z/q)| = q^r · Π gcd(d_i, q)`.
    pub fn hom_count(&self, q: u64) -> u64 {
        let q = q as i64;
        let base = q.pow(self.free_rank as u32);
        self.torsion.iter().fold(base, |acc, d| acc * d.gcd(&q)) as u64
    }
}

/// Diagonal of the Smith normal form of an integer matrix, zeros dropped.
pub fn smith_diagonal(rows: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the remaining block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let row = a[i].clone();
                        for (x, y) in a[t][t..].iter_mut().zip(&row[t..]) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            let next = (t..nrows)
                .flat_map(|i| (t..ncols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .unwrap();
            a.swap(t, next.0);
            for row in a.iter_mut() {
                row.swap(t, next.1);
            }
        }
        diag.push(a[t][t].abs() as i64);
        t += 1;
    }
    diag
}

pub fn abelian_group(rows: &[Vec<i64>], ncols: usize) -> AbelianGroup {
    let d = smith_diagonal(rows, ncols);
    AbelianGroup {
        free_rank: ncols - d.len(),
        torsion: d.into_iter().filter(|&x| x > 1).collect(),
    }
}

/// Exponent-sum matrix of a presentation.
pub fn relation_matrix(relators: &[Word], ngens: usize) -> Vec<Vec<i64>> {
    relators.iter().map(|r| r.exponent_sums(ngens)).collect()
}

pub fn abelianization(torus: &MappingTorus) -> AbelianGroup {
    abelian_group(&relation_matrix(&torus.relators(), 5), 5)
}

/// `Hom(G, Z/q)` counted by trying every assignment of the generators.
pub fn hom_count_brute_force(relators: &[Word], ngens: usize, q: u64) -> u64 {
    let sums = relation_matrix(relators, ngens);
    let q = q as i64;
    let total = q.pow(ngens as u32);
    (0..total)
        .filter(|&code| {
            let mut x = vec![0i64; ngens];
            let mut c = code;
            for v in x.iter_mut() {
                *v = c % q;
                c /= q;
            }
            sums.iter().all(|r| {
                r.iter()
                    .zip(&x)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(q)
                    == 0
            })
        })
        .count() as u64
}

fn rank_q(mut rows: Vec<Vec<Rational64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col];
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col] / pivot;
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the coinvariants of the monodromy on `H1(fibre; Q)`.
pub fn coinvariant_rank(torus: &MappingTorus) -> usize {
    let group: &OrbifoldGroup = torus.base();
    let q = |x: i64| Rational64::from_integer(x);
    let mut rows: Vec<Vec<Rational64>> = Vec::new();
    for (i, m) in group.orders().iter().enumerate() {
        if !m.is_infinite() {
            let mut r = vec![Rational64::zero(); 4];
            r[i] = Rational64::one();
            rows.push(r);
        }
    }
    rows.push(vec![Rational64::one(); 4]);
    for (i, img) in torus.monodromy().images().iter().enumerate() {
        let mut r: Vec<Rational64> = img.exponent_sums(4).into_iter().map(q).collect();
        r[i] -= Rational64::one();
        rows.push(r);
    }
    4 - rank_q(rows, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::{mapping_torus, MappingClass};
    use crate::ExtOrder;
    use proptest::prelude::*;

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3),
            vec![2, 6, 12]
        );
        let g = abelian_group(&[vec![5, 0], vec![0, 0]], 2);
        assert_eq!(
            g,
            AbelianGroup {
                free_rank: 1,
                torsion: vec![5]
            }
        );
        assert_eq!(abelian_group(&[vec![2, 0], vec![0, 3]], 2).torsion, vec![6]);
    }

    #[test]
    fn torus_over_fives() {
        let g = OrbifoldGroup::new([ExtOrder::int(5); 4]).unwrap();
        let t = mapping_torus(&g, &MappingClass::identity()).unwrap();
        assert_eq!(
            abelianization(&t),
            AbelianGroup {
                free_rank: 1,
                torsion: vec![5, 5, 5]
            }
        );
        let free = OrbifoldGroup::new([ExtOrder::Infinite; 4]).unwrap();
        let t = mapping_torus(&free, &MappingClass::half_twist(1)).unwrap();
        assert_eq!(coinvariant_rank(&t), 2);
        assert_eq!(abelianization(&t).free_rank, 3);
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 1..5)
    }

    proptest! {
        #[test]
        fn smith_matches_hom_counts(rows in matrix()) {
            let g = abelian_group(&rows, 3);
            for q in [2i64, 3, 5, 6] {
                let brute = (0..q.pow(3))
                    .filter(|c| {
                        let x = [c % q, (c / q) % q, c / (q * q)];
                        rows.iter().all(|r| (r[0] * x[0] + r[1] * x[1] + r[2] * x[2]).rem_euclid(q) == 0)
                    })
                    .count() as u64;
                prop_assert_eq!(g.hom_count(q as u64), brute);
            }
            let d = smith_diagonal(&rows, 3);
            prop_assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
