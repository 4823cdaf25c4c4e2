use crate::error::{Error, Result};
use crate::scalar::Real;

/// The two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn opponent(self) -> Self {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

/// Payoff tables of both players; row index is Alice's outcome, column
/// index is Bob's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffBimatrix<T: Real> {
    n: usize,
    alice: Vec<T>,
    bob: Vec<T>,
    symmetric_game: bool,
}

impl<T: Real> PayoffBimatrix<T> {
    /// Tables are row-major `n x n`.
    pub fn new(n: usize, alice: Vec<T>, bob: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "a game needs at least one strategy".into(),
            ));
        }
        for (who, t) in [("alice", &alice), ("bob", &bob)] {
            if t.len() != n * n {
                return Err(Error::Dimension(format!(
                    "{who} table has {} entries, expected {}",
                    t.len(),
                    n * n
                )));
            }
            if t.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{who} table has a non-finite entry"
                )));
            }
        }
        Ok(Self {
            n,
            alice,
            bob,
            symmetric_game: false,
        })
    }

    /// Like [`new`](Self::new) but additionally requires `bob = alice^T`.
    pub fn new_symmetric(n: usize, alice: Vec<T>, bob: Vec<T>) -> Result<Self> {
        let mut p = Self::new(n, alice, bob)?;
        for i in 0..n {
            for j in 0..n {
                if p.alice(i, j) != p.bob(j, i) {
                    return Err(Error::InvalidParameter(
                        "symmetric game requires bob = transpose(alice)".into(),
                    ));
                }
            }
        }
        p.symmetric_game = true;
        Ok(p)
    }

    /// Two-strategy dilemma-style table: `alice = [[r, s], [t, p]]`,
    /// `bob = [[r, t], [s, p]]`.
    pub fn two_by_two(r: T, s: T, t: T, p: T) -> Self {
        Self::new_symmetric(2, vec![r, s, t, p], vec![r, t, s, p])
            .expect("finite 2x2 symmetric table")
    }

    /// Prisoner's Dilemma preset `(r, s, t, p) = (3, 0, 5, 1)`.
    pub fn prisoners_dilemma() -> Self {
        Self::two_by_two(T::lit(3.0), T::zero(), T::lit(5.0), T::one())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_symmetric_game(&self) -> bool {
        self.symmetric_game
    }

    #[inline]
    pub fn alice(&self, i: usize, j: usize) -> T {
        self.alice[i * self.n + j]
    }

    #[inline]
    pub fn bob(&self, i: usize, j: usize) -> T {
        self.bob[i * self.n + j]
    }

    pub fn entry(&self, player: Player, i: usize, j: usize) -> T {
        match player {
            Player::Alice => self.alice(i, j),
            Player::Bob => self.bob(i, j),
        }
    }

    pub fn table(&self, player: Player) -> &[T] {
        match player {
            Player::Alice => &self.alice,
            Player::Bob => &self.bob,
        }
    }

    /// Largest entry of a player's table; the supremum of their expected payoff.
    pub fn max_entry(&self, player: Player) -> T {
        self.table(player)
            .iter()
            .copied()
            .fold(T::neg_infinity(), T::max)
    }

    /// First cell (row-major) attaining the player's maximum entry.
    pub fn best_cell(&self, player: Player) -> (usize, usize) {
        let table = self.table(player);
        let max = self.max_entry(player);
        let k = table
            .iter()
            .position(|&x| x == max)
            .expect("non-empty table");
        (k / self.n, k % self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_layout() {
        let p = PayoffBimatrix::<f64>::prisoners_dilemma();
        assert_eq!((p.alice(0, 0), p.bob(0, 0)), (3.0, 3.0));
        assert_eq!((p.alice(1, 0), p.bob(1, 0)), (5.0, 0.0));
        assert_eq!((p.alice(0, 1), p.bob(0, 1)), (0.0, 5.0));
        assert_eq!((p.alice(1, 1), p.bob(1, 1)), (1.0, 1.0));
        assert!(p.is_symmetric_game());
        assert_eq!(p.best_cell(Player::Bob), (0, 1));
        assert_eq!(p.best_cell(Player::Alice), (1, 0));
    }

    #[test]
    fn validation() {
        assert!(PayoffBimatrix::<f64>::new(2, vec![0.0; 3], vec![0.0; 4]).is_err());
        assert!(PayoffBimatrix::<f64>::new(1, vec![f64::INFINITY], vec![0.0]).is_err());
        assert!(PayoffBimatrix::<f64>::new_symmetric(
            2,
            vec![1., 2., 3., 4.],
            vec![1., 2., 3., 4.]
        )
        .is_err());
    }
}
