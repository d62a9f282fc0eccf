//! Fixed workloads shared by the criterion benches.

use dqp_core::closure::power_ideal;
use dqp_core::le_engine::build_le_system;
use dqp_core::{BidegreeSystem, Monomial, MonomialIdeal, NormalFormSpec};

/// Class system of the deepest Lê cycle (`i = p`) of the minimal germ.
pub fn deepest_le_system(p: usize) -> BidegreeSystem {
    build_le_system(p, p).expect("p ≥ 2").system
}

/// `(y₁², …, y_p²)` against `m²` and a mixed monomial lying in its closure.
pub fn closure_case(p: usize) -> (MonomialIdeal, MonomialIdeal, Monomial) {
    let squares = MonomialIdeal::pure_powers(p, 2).expect("p ≥ 1");
    let full = power_ideal(&MonomialIdeal::maximal(p).expect("p ≥ 1"), 2).expect("e ≥ 1");
    let mut exps = vec![0; p];
    exps[0] = 1;
    exps[p - 1] += 1;
    (squares, full, Monomial::new(exps))
}

/// Counting workloads as `(label, spec, prime)`, from tiny to about 10⁵ points.
pub fn count_cases() -> Vec<(String, NormalFormSpec, u64)> {
    [(1, 0, 101), (2, 0, 7), (2, 0, 11), (2, 1, 7)]
        .into_iter()
        .map(|(p, q1, prime)| {
            let spec = NormalFormSpec::new(p, q1).expect("p ≥ 1");
            (format!("p{p}_q1{q1}_F{prime}"), spec, prime)
        })
        .collect()
}
