use rand::Rng;

/// Weight of each timestamp as a function of the earlier coin outcomes.
pub trait WeightSchedule: Sync {
    /// Weight of timestamp `t >= 1`; `history` holds the `t - 1` earlier outcomes.
    fn weight(&self, t: usize, history: &[bool]) -> f64;

    /// Whether the schedule claims `w_i(x) >= w_j(x')` for `i < j` and every
    /// extension `x'` of `x`.
    fn declared_decreasing(&self) -> bool {
        false
    }
}

impl<S: WeightSchedule + ?Sized> WeightSchedule for &S {
    fn weight(&self, t: usize, history: &[bool]) -> f64 {
        (**self).weight(t, history)
    }

    fn declared_decreasing(&self) -> bool {
        (**self).declared_decreasing()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConstantSchedule(pub f64);

impl WeightSchedule for ConstantSchedule {
    fn weight(&self, _t: usize, _history: &[bool]) -> f64 {
        self.0
    }

    fn declared_decreasing(&self) -> bool {
        true
    }
}

/// `w_t = first * ratio^(t-1)`.
#[derive(Clone, Copy, Debug)]
pub struct GeometricSchedule {
    pub first: f64,
    pub ratio: f64,
}

impl WeightSchedule for GeometricSchedule {
    fn weight(&self, t: usize, _history: &[bool]) -> f64 {
        self.first * self.ratio.powi(t as i32 - 1)
    }

    fn declared_decreasing(&self) -> bool {
        (0.0..=1.0).contains(&self.ratio)
    }
}

/// `w_t = first * ratio^(t-1) * head_factor^(heads so far)`: adaptive, and
/// decreasing when both factors are at most one.
#[derive(Clone, Copy, Debug)]
pub struct HeadDiscountSchedule {
    pub first: f64,
    pub ratio: f64,
    pub head_factor: f64,
}

impl WeightSchedule for HeadDiscountSchedule {
    fn weight(&self, t: usize, history: &[bool]) -> f64 {
        let heads = history.iter().filter(|&&h| h).count();
        self.first * self.ratio.powi(t as i32 - 1) * self.head_factor.powi(heads as i32)
    }

    fn declared_decreasing(&self) -> bool {
        (0.0..=1.0).contains(&self.ratio) && (0.0..=1.0).contains(&self.head_factor)
    }
}

/// Zero weight after `horizon`: the dummy elements that pad a finite run.
#[derive(Clone, Copy, Debug)]
pub struct Truncated<S> {
    pub inner: S,
    pub horizon: usize,
}

impl<S: WeightSchedule> WeightSchedule for Truncated<S> {
    fn weight(&self, t: usize, history: &[bool]) -> f64 {
        if t > self.horizon {
            0.0
        } else {
            self.inner.weight(t, history)
        }
    }

    fn declared_decreasing(&self) -> bool {
        self.inner.declared_decreasing()
    }
}

/// Schedule backed by a closure.
pub struct FnSchedule<F> {
    f: F,
    decreasing: bool,
}

impl<F: Fn(usize, &[bool]) -> f64 + Sync> FnSchedule<F> {
    pub fn new(f: F, decreasing: bool) -> Self {
        FnSchedule { f, decreasing }
    }
}

impl<F: Fn(usize, &[bool]) -> f64 + Sync> WeightSchedule for FnSchedule<F> {
    fn weight(&self, t: usize, history: &[bool]) -> f64 {
        (self.f)(t, history)
    }

    fn declared_decreasing(&self) -> bool {
        self.decreasing
    }
}

/// A sampled violation of the decreasing-weight condition.
#[derive(Clone, Debug, PartialEq)]
pub struct DecreasingViolation {
    pub earlier: usize,
    pub later: usize,
    pub history: Vec<bool>,
    pub earlier_weight: f64,
    pub later_weight: f64,
}

/// Spot-checks the decreasing condition on `samples` random histories of
/// length `depth`, comparing every pair of timestamps along each history.
pub fn spot_check_decreasing<S: WeightSchedule + ?Sized, R: Rng>(
    schedule: &S,
    rng: &mut R,
    samples: usize,
    depth: usize,
) -> Result<(), DecreasingViolation> {
    for _ in 0..samples {
        let history: Vec<bool> = (0..depth).map(|_| rng.gen_bool(0.5)).collect();
        let weights: Vec<f64> = (1..=depth)
            .map(|t| schedule.weight(t, &history[..t - 1]))
            .collect();
        for i in 0..depth {
            for j in i + 1..depth {
                if weights[i] < weights[j] {
                    return Err(DecreasingViolation {
                        earlier: i + 1,
                        later: j + 1,
                        history: history[..j].to_vec(),
                        earlier_weight: weights[i],
                        later_weight: weights[j],
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn shipped_schedules_pass_spot_check() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let schedules: Vec<Box<dyn WeightSchedule>> = vec![
            Box::new(ConstantSchedule(1.0)),
            Box::new(GeometricSchedule {
                first: 1.0,
                ratio: 0.5,
            }),
            Box::new(HeadDiscountSchedule {
                first: 2.0,
                ratio: 0.9,
                head_factor: 0.5,
            }),
            Box::new(Truncated {
                inner: ConstantSchedule(1.0),
                horizon: 4,
            }),
        ];
        for s in &schedules {
            assert!(s.declared_decreasing());
            assert_eq!(spot_check_decreasing(s.as_ref(), &mut rng, 200, 12), Ok(()));
        }
    }

    #[test]
    fn spot_check_catches_increasing() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let rising = FnSchedule::new(|t, _h: &[bool]| t as f64, false);
        let v = spot_check_decreasing(&rising, &mut rng, 1, 3).unwrap_err();
        assert_eq!((v.earlier, v.later), (1, 2));
    }
}
