/// Running mean and variance (Welford), mergeable in a fixed order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan's pairwise combination. When both sides have the same mean the
    /// merged mean is that value exactly.
    pub fn merge(self, other: Self) -> Self {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        Welford {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance.
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        } else {
            0.0
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;

        let mut whole = Welford::default();
        xs.iter().for_each(|&x| whole.push(x));
        let merged = xs.chunks(77).fold(Welford::default(), |acc, chunk| {
            let mut w = Welford::default();
            chunk.iter().for_each(|&x| w.push(x));
            acc.merge(w)
        });
        for w in [whole, merged] {
            assert_eq!(w.count(), 1000);
            assert!((w.mean() - mean).abs() < 1e-12);
            assert!((w.variance() - var).abs() < 1e-10);
        }
    }

    #[test]
    fn constant_samples_are_exact() {
        let mut a = Welford::default();
        let mut b = Welford::default();
        (0..12345).for_each(|_| a.push(0.1));
        (0..777).for_each(|_| b.push(0.1));
        let m = a.merge(b);
        assert_eq!(m.mean(), 0.1);
        assert_eq!(m.std_error(), 0.0);
    }
}
