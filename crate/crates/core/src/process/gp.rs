use std::f64::consts::E;

use statrs::function::factorial::ln_binomial;

use crate::error::{check_cap, check_probability, Error, Result};
use crate::limits::{GP_EXACT_BINOMIAL_LIMIT, MAX_GP_CLOSED, MAX_GP_ENUMERATED};

fn check_indices(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "index probability needs m, n >= 1 (got m={m}, n={n})"
        )));
    }
    Ok(())
}

fn binomial_u128(a: u64, b: u64) -> u128 {
    let b = b.min(a - b);
    let mut c: u128 = 1;
    for j in 1..=b as u128 {
        c = c * (a as u128 - b as u128 + j) / j;
    }
    c
}

/// Probability that the `m`-th head of a Bernoulli(p) sequence comes after
/// its `n`-th tail: `(1-p)^n Σ_{i<m} C(n-1+i, i) p^i`.
///
/// Binomials are exact integers up to `m + n = 60` and log-space above;
/// `m + n > 128` is refused.
pub fn g_p(m: usize, n: usize, p: f64) -> Result<f64> {
    check_indices(m, n)?;
    check_probability(p)?;
    check_cap("m + n for the closed form", m + n, MAX_GP_CLOSED)?;
    let q = 1.0 - p;
    let sum: f64 = if m + n <= GP_EXACT_BINOMIAL_LIMIT {
        let qn = q.powi(n as i32);
        (0..m)
            .map(|i| binomial_u128((n - 1 + i) as u64, i as u64) as f64 * p.powi(i as i32) * qn)
            .sum()
    } else {
        let (ln_p, ln_q) = (p.ln(), q.ln());
        (0..m)
            .map(|i| {
                (ln_binomial((n - 1 + i) as u64, i as u64) + i as f64 * ln_p + n as f64 * ln_q)
                    .exp()
            })
            .sum()
    };
    Ok(sum.clamp(0.0, 1.0))
}

/// The same probability by summing over every coin prefix of length
/// `m + n - 1`, which always decides the race.
pub fn g_p_enumerated(m: usize, n: usize, p: f64) -> Result<f64> {
    check_indices(m, n)?;
    check_probability(p)?;
    check_cap("m + n for enumeration", m + n, MAX_GP_ENUMERATED)?;
    let horizon = m + n - 1;
    let mut total = 0.0;
    for bits in 0u32..1 << horizon {
        let (mut heads, mut tails) = (0, 0);
        let mut tails_first = false;
        for i in 0..horizon {
            if bits >> i & 1 == 1 {
                heads += 1;
                if heads == m {
                    break;
                }
            } else {
                tails += 1;
                if tails == n {
                    tails_first = true;
                    break;
                }
            }
        }
        if tails_first {
            let h = bits.count_ones() as i32;
            total += p.powi(h) * (1.0 - p).powi(horizon as i32 - h);
        }
    }
    Ok(total)
}

/// `(1-p)^n (1+p)^(n+m-2)`, an upper bound on [`g_p`].
pub fn g_p_upper_bound(m: usize, n: usize, p: f64) -> Result<f64> {
    check_indices(m, n)?;
    check_probability(p)?;
    Ok((1.0 - p).powi(n as i32) * (1.0 + p).powi((n + m - 2) as i32))
}

/// Multiplicative bound on the weight lost to cardinality pruning:
/// `E[w(N)] - E[w(S)] <= bound * E[w(S)]` for decreasing schedules.
///
/// With `β = 2e(1-p)`, the bound is `(μ+1-μβ) β^μ / (1-β)^2` for `μ >= 2`
/// and `(1-p²)/p²` for `μ = 1`. Returns `+∞` when `β >= 1` and `μ >= 2`.
pub fn pruning_loss_bound(mu: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if mu == 0 {
        return Err(Error::InvalidParameter("μ must be at least 1".into()));
    }
    if mu == 1 {
        return Ok((1.0 - p * p) / (p * p));
    }
    let beta = 2.0 * E * (1.0 - p);
    if beta >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let mu_f = mu as f64;
    Ok((mu_f + 1.0 - mu_f * beta) * beta.powi(mu as i32) / (1.0 - beta).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        for p in [0.1, 0.5, 0.842] {
            assert!((g_p(1, 1, p).unwrap() - (1.0 - p)).abs() < 1e-15);
        }
        assert!((g_p(2, 2, 0.5).unwrap() - 0.5).abs() < 1e-15);
        for m in 1..=6 {
            for n in 1..=6 {
                assert!(g_p(m, n, 0.3).unwrap() <= g_p_upper_bound(m, n, 0.3).unwrap() + 1e-15);
            }
        }
    }

    #[test]
    fn enumerated_examples() {
        assert!((g_p_enumerated(1, 1, 0.842).unwrap() - 0.158).abs() < 1e-12);
        for p in [0.2, 0.6] {
            assert!((g_p_enumerated(1, 2, p).unwrap() - (1.0 - p).powi(2)).abs() < 1e-12);
        }
        assert!(g_p_enumerated(9, 8, 0.5).is_err());
    }

    #[test]
    fn log_space_branch_agrees() {
        // m + n = 70 takes the log-space route; compare to the recursion
        // G(m, n) = p G(m-1, n) + (1-p) G(m, n-1).
        let p = 0.55;
        let (mm, nn) = (35usize, 35usize);
        let mut table = vec![vec![0.0f64; nn + 1]; mm + 1];
        for row in table.iter_mut().skip(1) {
            row[0] = 1.0;
        }
        for m in 1..=mm {
            for n in 1..=nn {
                table[m][n] = p * table[m - 1][n] + (1.0 - p) * table[m][n - 1];
            }
        }
        let got = g_p(mm, nn, p).unwrap();
        assert!(
            (got - table[mm][nn]).abs() < 1e-12,
            "{got} vs {}",
            table[mm][nn]
        );
        assert!(g_p(100, 29, p).is_err());
    }

    #[test]
    fn monotone_in_arguments() {
        for m in 1..=5 {
            for n in 1..=5 {
                let g = g_p(m, n, 0.4).unwrap();
                assert!(g_p(m + 1, n, 0.4).unwrap() >= g);
                assert!(g_p(m, n + 1, 0.4).unwrap() <= g);
            }
        }
    }

    #[test]
    fn pruning_bound_examples() {
        let b = pruning_loss_bound(1, 0.9).unwrap();
        assert!((b - 0.19 / 0.81).abs() < 1e-12);
        // mpmath: β = 0.11199321133251266, bound = 0.044154239598200776
        let b2 = pruning_loss_bound(2, 0.9794).unwrap();
        assert!((b2 - 0.044_154_239_598_200_78).abs() < 1e-12);
        assert!(pruning_loss_bound(3, 0.5).unwrap().is_infinite());
        assert!(pruning_loss_bound(4, 1.0 - 1e-9).unwrap() < 1e-20);
    }
}
