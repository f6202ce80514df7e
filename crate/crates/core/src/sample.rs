//! Seeded random polynomials and forms for the verification suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Blade, DifferentialForm};
use crate::frames::FrameManifold;
use crate::polyring::{Monomial, Polynomial, VariableSet};
use crate::scalar::Coeff;

/// Deterministic source of random test objects.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A small Gaussian integer `a + bi`, `|a|, |b| ≤ 3`.
    pub fn coeff(&mut self) -> Coeff {
        let re = self.rng.random_range(-3..=3);
        let im = self.rng.random_range(-3..=3);
        Coeff::gaussian((re, 1), (im, 1))
    }

    /// A monomial in `vars` of total degree at most `max_degree`.
    pub fn monomial(&mut self, vars: VariableSet, max_degree: u32) -> Monomial {
        let vs: Vec<_> = vars.vars().collect();
        let mut m = Monomial::one();
        let deg = self.rng.random_range(0..=max_degree);
        for _ in 0..deg {
            let v = vs[self.rng.random_range(0..vs.len())];
            m = m.with(v, m.exp(v) + 1);
        }
        m
    }

    /// Up to `max_terms` random terms.
    pub fn polynomial(
        &mut self,
        vars: VariableSet,
        max_degree: u32,
        max_terms: usize,
    ) -> Polynomial {
        let n = self.rng.random_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..n)
            .map(|_| (self.monomial(vars, max_degree), self.coeff()))
            .collect();
        let p = Polynomial::from_terms(vars, terms).expect("non-negative exponents");
        if vars.has_su2() {
            p.normal_form()
        } else {
            p
        }
    }

    /// A form with random polynomial components on a random subset of blades.
    pub fn form(
        &mut self,
        m: &Arc<FrameManifold>,
        max_degree: u32,
        max_terms: usize,
    ) -> DifferentialForm {
        let mut out = DifferentialForm::zero(m);
        for b in Blade::all(m.dim()) {
            if self.rng.random_bool(0.5) {
                let p = self.polynomial(m.vars(), max_degree, max_terms);
                out = out
                    .try_add(
                        &DifferentialForm::basis(m, &b.indices())
                            .expect("valid blade")
                            .mul_function(&p)
                            .expect("same variables"),
                    )
                    .expect("same manifold");
            }
        }
        out
    }

    /// A homogeneous form of degree `k`.
    pub fn form_of_degree(
        &mut self,
        m: &Arc<FrameManifold>,
        k: usize,
        max_degree: u32,
        max_terms: usize,
    ) -> DifferentialForm {
        self.form(m, max_degree, max_terms).grade_part(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::su2_killing;

    #[test]
    fn deterministic() {
        let m = su2_killing();
        let a = Sampler::new(7).form(&m, 3, 3);
        let b = Sampler::new(7).form(&m, 3, 3);
        assert_eq!(a, b);
    }
}
