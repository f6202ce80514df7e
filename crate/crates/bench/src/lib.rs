//! Shared inputs for the benchmarks.

use dkforms::frames::su2_killing;
use dkforms::sample::Sampler;
use dkforms::DifferentialForm;

/// Deterministic pairs of random forms on SU(2).
pub fn su2_form_pairs(count: usize, max_degree: u32) -> Vec<(DifferentialForm, DifferentialForm)> {
    let m = su2_killing();
    let mut s = Sampler::new(11);
    (0..count)
        .map(|_| (s.form(&m, max_degree, 3), s.form(&m, max_degree, 3)))
        .collect()
}
