//! Seed-reproducible random forms and group samples.
//!
//! Coefficients are nonzero integers in `[−9, 9]`; a sampled form has
//! `min(20, dim Λ^p)` distinct blades.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_integer::binomial;

use crate::algebra::{rat, rat_frac, GaussianRational, Rational};
use crate::multivector::{blade_basis, Form};

pub const MAX_TERMS: usize = 20;
pub const COEFF_BOUND: i64 = 9;

pub struct FormSampler {
    rng: ChaCha8Rng,
}

impl FormSampler {
    pub fn new(seed: u64) -> Self {
        FormSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn nonzero_coeff(&mut self) -> i64 {
        let x = self.rng.gen_range(1..=COEFF_BOUND);
        if self.rng.gen_bool(0.5) {
            -x
        } else {
            x
        }
    }

    pub fn coeff(&mut self) -> i64 {
        self.rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)
    }

    pub fn gaussian_coeff(&mut self) -> GaussianRational {
        loop {
            let (re, im) = (self.coeff(), self.coeff());
            if re != 0 || im != 0 {
                return GaussianRational::new(rat(re), rat(im));
            }
        }
    }

    /// Random blade positions in the canonical basis of `C(dim, p)` elements.
    pub fn positions(&mut self, dim: usize, p: usize) -> Vec<usize> {
        let total = binomial(dim, p);
        let k = MAX_TERMS.min(total);
        let mut idx = sample(&mut self.rng, total, k).into_vec();
        idx.sort_unstable();
        idx
    }

    pub fn form(&mut self, n: usize, p: usize) -> Form {
        let basis = blade_basis(4 * n, p);
        let positions = self.positions(4 * n, p);
        let terms: Vec<_> = positions
            .into_iter()
            .map(|i| (basis[i], rat(self.nonzero_coeff())))
            .collect();
        Form::from_terms(n, p, terms).expect("sampled blades are valid")
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn degree(&mut self, max: usize) -> usize {
        self.rng.gen_range(0..=max)
    }

    /// Small rational with numerator in `[−9, 9]` and denominator in `1..=4`.
    pub fn small_rational(&mut self) -> Rational {
        let d = self.rng.gen_range(1..=4);
        rat_frac(self.coeff(), d)
    }
}
