use super::hnf::Lattice;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`shortest_vector`].
pub const MAX_SVP_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalVectors {
    pub norm_sq: u128,
    /// Number of lattice vectors of that norm (the kissing number).
    pub count: u64,
}

struct Search<'a> {
    rows: &'a [Vec<i64>],
    radius: i128,
    coeffs: Vec<i128>,
    best: Option<i128>,
    count: u64,
    nodes: u64,
    node_limit: u64,
}

impl Search<'_> {
    /// Fixes coefficient `depth` given coordinates 0..depth already fixed
    /// with squared length `partial`.
    fn descend(&mut self, depth: usize, partial: i128) -> Result<()> {
        let n = self.rows.len();
        if depth == n {
            if partial == 0 {
                return Ok(());
            }
            match self.best {
                Some(b) if partial > b => {}
                Some(b) if partial == b => self.count += 1,
                _ => {
                    self.best = Some(partial);
                    self.count = 1;
                }
            }
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::GuardExceeded {
                what: "shortest-vector enumeration",
                limit: self.node_limit,
            });
        }
        // coordinate `depth` is offset + c·pivot
        let offset: i128 = (0..depth)
            .map(|i| self.coeffs[i] * i128::from(self.rows[i][depth]))
            .sum();
        let pivot = i128::from(self.rows[depth][depth]);
        let budget = self.best.unwrap_or(self.radius).min(self.radius) - partial;
        if budget < 0 {
            return Ok(());
        }
        let reach = isqrt(budget);
        let lo = (-reach - offset).div_euclid(pivot) - 1;
        let hi = (reach - offset).div_euclid(pivot) + 1;
        for c in lo..=hi {
            let x = offset + c * pivot;
            let next = partial + x * x;
            if next > self.radius || self.best.is_some_and(|b| next > b) {
                continue;
            }
            self.coeffs[depth] = c;
            self.descend(depth + 1, next)?;
        }
        self.coeffs[depth] = 0;
        Ok(())
    }
}

fn isqrt(x: i128) -> i128 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Exact minimum squared norm and the number of minimal vectors.
///
/// Enumerates lattice points coordinate by coordinate through the triangular
/// basis, inside the ball whose radius is the shortest basis row (so the ball
/// provably holds a nonzero lattice vector). `node_limit` caps the search tree.
pub fn shortest_vector(l: &Lattice, node_limit: u64) -> Result<MinimalVectors> {
    let n = l.dim();
    if n == 0 || n > MAX_SVP_DIM {
        return Err(Error::OutOfRange(format!(
            "shortest vector needs 1 ≤ n ≤ {MAX_SVP_DIM}, got {n}"
        )));
    }
    let radius = l
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x) * i128::from(x)).sum::<i128>())
        .min()
        .expect("n ≥ 1");
    let mut search = Search {
        rows: l.rows(),
        radius,
        coeffs: vec![0; n],
        best: None,
        count: 0,
        nodes: 0,
        node_limit,
    };
    search.descend(0, 0)?;
    let best = search.best.expect("a basis row lies inside the search ball");
    Ok(MinimalVectors {
        norm_sq: best as u128,
        count: search.count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::{hnf, IntVector};

    #[test]
    fn integer_lattices() {
        for n in 1..=6 {
            let z = shortest_vector(&Lattice::integers(n), 1 << 20).unwrap();
            assert_eq!((z.norm_sq, z.count), (1, 2 * n as u64));
            let two = shortest_vector(&Lattice::scaled_integers(n, 2), 1 << 20).unwrap();
            assert_eq!((two.norm_sq, two.count), (4, 2 * n as u64));
        }
    }

    #[test]
    fn hexagonal_like_lattice() {
        // A2 roots plus 3Z^3
        let gens = [
            IntVector::from([1, -1, 0]),
            IntVector::from([0, 1, -1]),
            IntVector::from([3, 0, 0]),
            IntVector::from([0, 3, 0]),
            IntVector::from([0, 0, 3]),
        ];
        let l = hnf(&gens, 3).unwrap();
        // the lattice is {x : x+y+z ≡ 0 mod 3}; its norm-2 vectors are the six roots
        let m = shortest_vector(&l, 1 << 20).unwrap();
        assert_eq!(m.norm_sq, 2);
        assert_eq!(m.count, 6);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            shortest_vector(&Lattice::scaled_integers(8, 3), 10),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(shortest_vector(&Lattice::integers(17), 10).is_err());
    }
}
