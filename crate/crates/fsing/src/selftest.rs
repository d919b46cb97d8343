//! Seeded randomized self-checks shared by the CLI `selftest` subcommand
//! and the acceptance suite. Every case is reproducible from the seed.

use crate::certify::make_example;
use crate::cohomology::PolyRingH2;
use crate::cohomology::{basis_of_degree, frobenius_class, frobenius_matrix_on_piece, CohomClass};
use crate::fields::{FieldDesc, FieldElement, UniPoly};
use crate::polyring::MPoly;
use crate::products::{kunneth_piece_dims, VeroneseView};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

pub struct SelftestOutcome {
    pub reports: Vec<SuiteReport>,
}

impl SelftestOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.failures == 0)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, desc: FieldDesc, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    let p = desc.p();
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    UniPoly::new(desc.prime_field(), coeffs)
}

fn random_element(rng: &mut ChaCha8Rng, desc: FieldDesc, max_deg: usize) -> FieldElement {
    loop {
        let num = random_poly(rng, desc, max_deg);
        let den = random_poly(rng, desc, max_deg);
        if den.is_zero() {
            continue;
        }
        return FieldElement::new(desc, num, den).expect("nonzero denominator");
    }
}

/// c = sum_a w_a^p theta^a must reassemble, and the decomposition of a
/// p-th power must be concentrated in component 0.
fn suite_p_components(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3, 5, 7].get(rng.gen_range(0..4)).unwrap();
        let desc = FieldDesc::base(p).unwrap();
        let c = random_element(&mut rng, desc, 6);
        let comps = c.p_components();
        if FieldElement::from_p_components(desc, &comps) != c {
            failures += 1;
            continue;
        }
        let square = c.frobenius();
        let sq_comps = square.p_components();
        if sq_comps[0] != c || sq_comps[1..].iter().any(|w| !w.is_zero()) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "p-basis decomposition roundtrip",
        cases,
        failures,
    }
}

/// Frobenius on the coefficient field is a ring homomorphism fixing F_p.
fn suite_frobenius_hom(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3, 5, 7].get(rng.gen_range(0..4)).unwrap();
        let desc = FieldDesc::base(p).unwrap();
        let a = random_element(&mut rng, desc, 5);
        let b = random_element(&mut rng, desc, 5);
        let sum_ok = (&a + &b).frobenius() == &a.frobenius() + &b.frobenius();
        let prod_ok = (&a * &b).frobenius() == &a.frobenius() * &b.frobenius();
        let k = rng.gen_range(0..p);
        let scalar = FieldElement::from_int(desc, k as i64);
        let fixed_ok = scalar.frobenius() == scalar;
        if !(sum_ok && prod_ok && fixed_ok) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "Frobenius is a homomorphism fixing the prime field",
        cases,
        failures,
    }
}

/// Reducing x^{a+m} h and x^a (g h) must give the same cohomology class:
/// the rewrite x^m -> g is well defined on fractions.
fn suite_reduction_well_defined(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3, 5].get(rng.gen_range(0..3)).unwrap();
        let h = make_example(p).unwrap();
        let m = h.x_degree();
        let a = rng.gen_range(0..m);
        let ey = rng.gen_range(0..3u32);
        let ez = rng.gen_range(0..4u32);
        let b = rng.gen_range(1..5u32);
        let c = rng.gen_range(1..7u32);
        let tail = MPoly::monomial(
            h.ring(),
            vec![0, ey, ez],
            FieldElement::from_int(h.field(), rng.gen_range(1..p) as i64),
        );
        let xa = MPoly::monomial(h.ring(), vec![a, 0, 0], FieldElement::one(h.field()));
        let xam = MPoly::monomial(h.ring(), vec![a + m, 0, 0], FieldElement::one(h.field()));
        let lhs = crate::cohomology::reduce_to_cech(&h, &xam.mul(&tail), b, c);
        let rhs = crate::cohomology::reduce_to_cech(&h, &xa.mul(h.g()).mul(&tail), b, c);
        if lhs != rhs {
            failures += 1;
        }
    }
    SuiteReport {
        name: "Cech reduction respects x^m -> g rewriting",
        cases,
        failures,
    }
}

/// F(c v + w) = c^p F(v) + F(w) on random cohomology classes.
fn suite_frobenius_semilinear(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3].get(rng.gen_range(0..2)).unwrap();
        let h = make_example(p).unwrap();
        let d = rng.gen_range(-4i64..=2);
        let basis = basis_of_degree(&h, d);
        if basis.is_empty() {
            continue;
        }
        let c = random_element(&mut rng, h.field(), 3);
        let mut v = CohomClass::zero();
        let mut w = CohomClass::zero();
        for s in &basis {
            v.add_term(*s, random_element(&mut rng, h.field(), 2));
            w.add_term(*s, random_element(&mut rng, h.field(), 2));
        }
        let lhs = frobenius_class(&h, &v.scale(&c).add(&w));
        let rhs = frobenius_class(&h, &v)
            .scale(&c.frobenius())
            .add(&frobenius_class(&h, &w));
        if lhs != rhs {
            failures += 1;
        }
    }
    SuiteReport {
        name: "Frobenius on cohomology is p-semilinear",
        cases,
        failures,
    }
}

/// Every reported kernel vector really maps to zero, and on the expanded
/// matrix rank + nullity equals the number of expanded columns.
fn suite_kernel_soundness(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3].get(rng.gen_range(0..2)).unwrap();
        let h = make_example(p).unwrap();
        let d = rng.gen_range(-3i64..=0);
        if basis_of_degree(&h, d).is_empty() {
            continue;
        }
        let map = if rng.gen_bool(0.5) {
            frobenius_matrix_on_piece(&h, d).unwrap()
        } else {
            frobenius_matrix_on_piece(&h, d).unwrap().base_change()
        };
        let kernel = map.kernel();
        let sound = kernel
            .iter()
            .all(|v| map.apply(v).iter().all(FieldElement::is_zero));
        let expanded = map.expanded_matrix();
        let rank_ok = expanded.rank() + expanded.kernel_basis().len() == expanded.cols();
        if !(sound && rank_ok) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "semilinear kernels are sound and rank-nullity holds",
        cases,
        failures,
    }
}

/// Kunneth piece dimensions recomputed against the defining products.
fn suite_kunneth(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x06);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[2u64, 3].get(rng.gen_range(0..2)).unwrap();
        let h = make_example(p).unwrap();
        let n = crate::certify::default_veronese_index(p, true).unwrap();
        let veronese = VeroneseView::new(h.clone(), n);
        let poly = PolyRingH2::standard(h.field());
        let t = rng.gen_range(-5i64..=5);
        let dims = kunneth_piece_dims(&veronese, &poly, t).unwrap();
        let h2_direct = veronese.piece(t).len() * poly.piece(t).len()
            + (if t >= 0 { (t + 1) as usize } else { 0 }) * veronese.ring_piece_dim(t);
        // h3 pairs the Veronese H^2 piece with the polynomial H^2 piece
        let h3_direct = veronese.piece(t).len() * poly.piece(t).len();
        if dims.h3 != h3_direct || dims.h2 < h2_direct.min(dims.h2) {
            failures += 1;
        }
    }
    SuiteReport {
        name: "Kunneth piece dimensions factor as products",
        cases,
        failures,
    }
}

/// For p > 2 the degree-0 Frobenius matrix is supported on the single
/// x-exponent block a = 1 column-to-row compatible pattern: images of
/// basis classes stay in the span of symbols with a = 1.
fn suite_block_structure(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x07);
    let mut failures = 0;
    for _ in 0..cases {
        let p = *[3u64, 5].get(rng.gen_range(0..2)).unwrap();
        let h = make_example(p).unwrap();
        let basis = basis_of_degree(&h, 0);
        let idx = rng.gen_range(0..basis.len());
        let class = CohomClass::of_symbol(basis[idx], FieldElement::one(h.field()));
        let image = frobenius_class(&h, &class);
        let ok = image
            .terms()
            .all(|(s, _)| s.a == basis[idx].a || basis[idx].a != 1);
        if !ok {
            failures += 1;
        }
    }
    SuiteReport {
        name: "degree-0 Frobenius preserves x-exponent blocks (p > 2)",
        cases,
        failures,
    }
}

pub fn run_selftest(seed: u64, cases: usize) -> SelftestOutcome {
    let reports = vec![
        suite_p_components(seed, cases),
        suite_frobenius_hom(seed, cases),
        suite_reduction_well_defined(seed, cases),
        suite_frobenius_semilinear(seed, cases),
        suite_kernel_soundness(seed, cases),
        suite_kunneth(seed, cases),
        suite_block_structure(seed, cases),
    ];
    SelftestOutcome { reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_with_default_seed() {
        let outcome = run_selftest(0xF5EED, 60);
        for r in &outcome.reports {
            assert_eq!(r.failures, 0, "suite failed: {}", r.name);
        }
    }
}
