use rand::Rng;

use crate::error::{check_probability, Result};
use crate::set::ElementSet;

/// Source of biased coin flips.
///
/// `key` identifies what the coin is attached to (an element, a left node or
/// a timestamp). Random streams ignore it; preset sources use it so an exact
/// enumeration can fix every coin up front.
pub trait CoinSource {
    fn flip(&mut self, key: usize) -> bool;
}

/// I.i.d. Bernoulli(p) flips from a seeded generator.
#[derive(Clone, Debug)]
pub struct CoinStream<R> {
    p: f64,
    rng: R,
}

impl<R: Rng> CoinStream<R> {
    pub fn new(p: f64, rng: R) -> Result<Self> {
        check_probability(p)?;
        Ok(CoinStream { p, rng })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn into_rng(self) -> R {
        self.rng
    }
}

impl<R: Rng> CoinSource for CoinStream<R> {
    fn flip(&mut self, _key: usize) -> bool {
        self.rng.gen_bool(self.p)
    }
}

impl<C: CoinSource + ?Sized> CoinSource for &mut C {
    fn flip(&mut self, key: usize) -> bool {
        (**self).flip(key)
    }
}

/// Replays a fixed sequence; panics once it runs out.
#[derive(Clone, Debug)]
pub struct ScriptedCoins {
    coins: Vec<bool>,
    next: usize,
}

impl ScriptedCoins {
    pub fn new(coins: Vec<bool>) -> Self {
        ScriptedCoins { coins, next: 0 }
    }

    /// Parses `"1101"`-style scripts.
    pub fn from_str_bits(bits: &str) -> Self {
        Self::new(bits.chars().map(|c| c == '1').collect())
    }
}

impl CoinSource for ScriptedCoins {
    fn flip(&mut self, _key: usize) -> bool {
        let c = *self
            .coins
            .get(self.next)
            .unwrap_or_else(|| panic!("coin script exhausted after {} flips", self.coins.len()));
        self.next += 1;
        c
    }
}

/// Heads exactly for the keys in a fixed set.
#[derive(Clone, Debug)]
pub struct PresetCoins {
    heads: ElementSet,
}

impl PresetCoins {
    pub fn new(heads: ElementSet) -> Self {
        PresetCoins { heads }
    }
}

impl CoinSource for PresetCoins {
    fn flip(&mut self, key: usize) -> bool {
        self.heads.contains(key)
    }
}

/// Always the same outcome.
#[derive(Clone, Copy, Debug)]
pub struct ConstantCoins(pub bool);

impl CoinSource for ConstantCoins {
    fn flip(&mut self, _key: usize) -> bool {
        self.0
    }
}
