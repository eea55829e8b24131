//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values are frozen: reference matrices in tests/data and
//! invariants computed independently of this crate.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::props::*;
use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use tilecoh::cohomology::{DegreeCohomology, LimitElement};
use tilecoh::complexes::{verify_complex, CellComplex, CellMap};
use tilecoh::fixtures::builtin_json;
use tilecoh::frequency::{frequency_module, frequency_module_per_dimension};
use tilecoh::linalg::{characteristic_polynomial, ints, IntMatrix};
use tilecoh::ring::{bilinear_forms_by_eigenvalue, chern_integrality_check, cup_cochain, ChernStatus};
use tilecoh::substitution::SubstitutionRule;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&mut Cache) -> Outcome);

const FIXTURES: [&str; 16] = [
    "chair-2", "chair-3", "equivariant-4d", "ex1-a", "ex1-b", "ex2-a", "ex2-b", "ex3", "ex4", "main-4d",
    "one-color-1d", "one-color-2d", "one-color-4d", "squiral-4d", "three-prototile-4d", "two-prototile-4d",
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok { Ok(()) } else { Err(msg()) }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

/// Complexes and cohomology shared by several criteria, built once.
struct Built {
    complex: CellComplex,
    map: CellMap,
    h: Vec<DegreeCohomology>,
}

impl Built {
    fn new((complex, map): (CellComplex, CellMap)) -> Self {
        let h = cohomology(&complex, &map);
        Built { complex, map, h }
    }
}

#[derive(Default)]
struct Cache(BTreeMap<&'static str, Built>);

impl Cache {
    fn get(&mut self, key: &'static str) -> &Built {
        self.0.entry(key).or_insert_with(|| {
            Built::new(match key {
                "ex1" => dual(&product("ex1-a", "ex1-b")),
                "ex2" => dual(&product("ex2-a", "ex2-b")),
                "squiral-quotient" => squiral_quotient(),
                "equivariant-quotient" => equivariant_quotient(),
                "equivariant-ap" => ap(&rule("equivariant-4d")),
                other => dual(&rule(other)),
            })
        })
    }
}

fn all_fixtures_valid(cache: &mut Cache) -> Outcome {
    for name in FIXTURES {
        let r = SubstitutionRule::from_json(builtin_json(name).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.primitivity().primitive, || format!("{name} is not primitive"))?;
    }
    for key in ["ex1", "ex2", "ex3", "ex4", "chair-2", "main-4d", "squiral-quotient", "equivariant-ap", "equivariant-quotient"] {
        let b = cache.get(key);
        verify_complex(&b.complex, Some(&b.map)).map_err(|e| format!("{key}: {e}"))?;
    }
    Ok(())
}

fn cell_counts(cache: &mut Cache) -> Outcome {
    expect_eq("main rule dual cells", cache.get("main-4d").complex.counts(), vec![8, 88, 480, 1232, 1120])?;
    let spec = tilecoh::complexes::SymmetrySpec::from_json(r#"{"colors": [1, 0], "level": "rule"}"#).unwrap();
    let config = tilecoh::report::AnalysisConfig { quotient: Some(spec), assume_border: true, ..Default::default() };
    let q = tilecoh::report::prepare(&rule("squiral-4d"), &tilecoh::report::AnalysisConfig {
        complex: tilecoh::report::ComplexChoice::ApUncollared,
        ..config
    })
    .map_err(|e| e.to_string())?;
    expect_eq("squiral quotient prototiles", q.rule.colors, 239)?;
    expect_eq("squiral quotient cells", cache.get("squiral-quotient").complex.counts(), vec![1, 8, 48, 160, 239])
}

fn characteristic_polynomials(cache: &mut Cache) -> Outcome {
    for (key, file, size) in [
        ("ex1", "top_matrix_ex1.json", 36),
        ("ex2", "top_matrix_ex2.json", 16),
        ("ex3", "top_matrix_ex3.json", 23),
        ("ex4", "top_matrix_ex4.json", 21),
    ] {
        let b = cache.get(key);
        let top = &b.map.matrices[b.complex.dim];
        expect_eq(&format!("{key} top cells"), top.nrows(), size)?;
        expect_eq(key, characteristic_polynomial(top), characteristic_polynomial(&load_matrix(file)))?;
    }
    let h2 = &cache.get("main-4d").h[2];
    expect_eq("main rule H² map", characteristic_polynomial(&h2.limit.phi), characteristic_polynomial(&load_matrix("h2_matrix_main_4d.json")))
}

fn frequency_modules(cache: &mut Cache) -> Outcome {
    for (key, sum, rendered, per_dimension) in [
        ("ex1", 750, "(1/6)Z[1/5]", vec![30, 25, 25]),
        ("ex2", 24, "(1/3)Z[1/2]", vec![6, 4, 4]),
        ("ex3", 52500, "(1/84)Z[1/5]", vec![42, 10]),
        ("ex4", 24576, "(1/3)Z[1/2]", vec![12, 4, 1]),
    ] {
        let b = cache.get(key);
        let f = frequency_module(&b.complex, &b.map).map_err(|e| format!("{key}: {e}"))?;
        expect_eq(&format!("{key} PF sum"), f.sum, BigInt::from(sum))?;
        expect_eq(&format!("{key} module"), f.rendered.as_str(), rendered)?;
        let mut sums: Vec<BigInt> = frequency_module_per_dimension(&b.complex, &b.map, 1)
            .map_err(|e| format!("{key}: {e}"))?
            .into_iter()
            .map(|c| c.module.sum)
            .collect();
        sums.sort_by(|a, b| b.cmp(a));
        expect_eq(&format!("{key} edge components"), sums, per_dimension.into_iter().map(BigInt::from).collect())?;
    }
    let b = cache.get("main-4d");
    let f = frequency_module(&b.complex, &b.map).map_err(|e| e.to_string())?;
    expect_eq("main rule module", (f.sum, f.rendered.as_str()), (BigInt::from(29952), "(1/3328)Z[1/3]"))
}

fn eigenvalues(cache: &mut Cache) -> Outcome {
    for (key, h1, h2) in [
        ("ex1", vec![5, 5, 3, -1], vec![25, 15, -3, -5]),
        ("ex3", vec![5, 5, 3, -1], vec![25, 15, -3, -5]),
        ("ex2", vec![4, 4, 2, 1], vec![16, 8, 4, 2]),
        ("ex4", vec![4, 4, 2, 1], vec![16, 8, 4, 2]),
    ] {
        let b = cache.get(key);
        expect_eq(&format!("{key} H¹"), eigen_multiset(&b.h[1]), h1)?;
        expect_eq(&format!("{key} H²"), eigen_multiset(&b.h[2]), h2)?;
    }
    let e = cache.get("equivariant-ap");
    expect_eq("equivariant H⁴", e.h[4].limit.summary().characteristic_polynomial, "t^2 - 80t - 81".to_string())?;
    expect_eq("equivariant H²", e.h[2].limit.phi.clone(), IntMatrix::scalar(6, 9))
}

/// φ′ restricted to the stable torsion of a limit.
fn torsion_action(h: &DegreeCohomology) -> Vec<Vec<i64>> {
    let t: Vec<usize> = (0..h.limit.quotient_orders.len()).filter(|&i| !h.limit.quotient_orders[i].is_zero()).collect();
    h.limit.quotient_phi.select_rows(&t).select_columns(&t).to_i64().unwrap()
}

fn groups(cache: &mut Cache) -> Outcome {
    let s = cache.get("squiral-quotient");
    expect_eq("squiral quotient H²", s.h[2].group.summary().display, "Z_2 + Z^9".into())?;
    expect_eq("squiral quotient H⁴", s.h[4].group.summary().display, "Z_2^14 + Z_4 + Z^126".into())?;
    let n = torsion_action(&s.h[4]).len();
    expect_eq("squiral torsion action", torsion_action(&s.h[4]), IntMatrix::identity(n).to_i64().unwrap())?;
    let m = cache.get("main-4d");
    expect_eq("main rule H⁴", m.h[4].group.summary().display, "Z_4^3 + Z^351".into())?;
    expect_eq("main rule stable torsion", m.h[4].limit.summary().stable_torsion, "Z_4^3".into())?;
    expect_eq("main rule torsion action", torsion_action(&m.h[4]), vec![vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 2]])
}

fn cup_products(cache: &mut Cache) -> Outcome {
    for (key, zero) in [("ex1", None), ("ex2", None), ("ex3", Some(-3)), ("ex4", Some(2))] {
        let b = cache.get(key);
        let forms = bilinear_forms_by_eigenvalue(&b.complex, &b.h[1], &b.h[1], &b.h[2]).map_err(|e| e.to_string())?;
        ensure(forms.eigenvalue_compatible, || format!("{key}: forms mix eigenvalues"))?;
        let zeros: Vec<i64> = forms.forms.iter().filter(|f| !f.nonzero).map(|f| f.eigenvalue).collect();
        expect_eq(&format!("{key} vanishing forms"), zeros, zero.into_iter().collect())?;
    }
    // the classes dual to the 2-cells spanning axes {0,1} and {2,3}
    let e = cache.get("equivariant-ap");
    let c = &e.complex;
    let dual_to = |axes: &[usize]| -> Vec<BigInt> {
        c.cells[2].iter().map(|cell| BigInt::from((cell.axes == axes) as i64)).collect()
    };
    let product = cup_cochain(c, 2, &dual_to(&[0, 1]), 2, &dual_to(&[2, 3])).map_err(|e| e.to_string())?;
    expect_eq("c₁ ⌣ c₂ on the top cells", product, ints(&[1, 1]))
}

fn chern_verdicts(cache: &mut Cache) -> Outcome {
    for (key, want) in [
        ("main-4d", ChernStatus::NotIntegral),
        ("squiral-quotient", ChernStatus::NotIntegral),
        ("equivariant-quotient", ChernStatus::NotIntegral),
        ("equivariant-ap", ChernStatus::NoObstructionFound),
        ("one-color-4d", ChernStatus::NoObstructionFound),
    ] {
        let b = cache.get(key);
        let v = chern_integrality_check(&b.complex, &b.h[2], &b.h[4]).map_err(|e| format!("{key}: {e}"))?;
        expect_eq(key, v.status, want)?;
        if let Some(w) = &v.witness {
            // the witness square must really fail to halve, or show the torsion pattern
            let d = b.h[4].limit.divisible_by(&LimitElement::new(0, w.square.clone()), &BigInt::from(2));
            ensure(!d.divisible || w.torsion_pattern, || format!("{key}: witness {} does not obstruct", w.class))?;
        }
    }
    Ok(())
}

fn algebraic_properties(cache: &mut Cache) -> Outcome {
    for key in ["chair-2", "ex3", "ex4", "equivariant-ap"] {
        let b = cache.get(key);
        let c = &b.complex;
        let v = |q: usize, k: i64| -> Vec<BigInt> { (0..c.count(q) as i64).map(|i| BigInt::from((i * k) % 5 - 2)).collect() };
        leibniz(c, 0, &v(0, 3), 1, &v(1, 7))?;
        leibniz(c, 1, &v(1, 2), 0, &v(0, 1))?;
        associativity(c, (0, &v(0, 1)), (1, &v(1, 3)), (1, &v(1, 4)))?;
        associativity(c, (1, &v(1, 2)), (0, &v(0, 3)), (1, &v(1, 1)))?;
        for (i, j) in [(0, 1), (1, 1), (1, 0)] {
            let n = b.h[1].group.ngens();
            if n == 0 {
                continue;
            }
            let mut a = vec![BigInt::zero(); n];
            let mut x = vec![BigInt::zero(); n];
            a[i % n] = BigInt::from(1);
            x[j % n] = BigInt::from(1);
            graded_commutativity(c, &b.h[1], &a, &b.h[1], &x, &b.h[2])?;
            naturality(c, &b.h[1], &a, &b.h[1], &x, &b.h[2])?;
        }
    }
    let (a, b, p) = (dual(&rule("ex2-a")), dual(&rule("ex2-b")), cache.get("ex2"));
    kunneth_eigenvalues((&cohomology(&a.0, &a.1), &cohomology(&b.0, &b.1)), &p.h)?;
    smith_form(&IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]))?;
    let m = &cache.get("main-4d").h[4];
    for k in 0..m.group.ngens().min(12) {
        let mut x = vec![BigInt::zero(); m.group.ngens()];
        x[k] = BigInt::from(1);
        divisibility_witness(&m.limit, &LimitElement::new(0, x), &BigInt::from(2))?;
    }
    Ok(())
}

fn extra_rules(cache: &mut Cache) -> Outcome {
    for key in ["three-prototile-4d", "two-prototile-4d"] {
        let b = cache.get(key);
        let v = chern_integrality_check(&b.complex, &b.h[2], &b.h[4]).map_err(|e| format!("{key}: {e}"))?;
        expect_eq(key, v.status, ChernStatus::NotIntegral)?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("fixtures are primitive and every complex verifies", all_fixtures_valid),
        ("cell counts", cell_counts),
        ("top-cell characteristic polynomials", characteristic_polynomials),
        ("frequency modules", frequency_modules),
        ("eigenvalue multisets", eigenvalues),
        ("cohomology groups and torsion action", groups),
        ("cup-product forms", cup_products),
        ("Chern-character verdicts", chern_verdicts),
        ("algebraic properties", algebraic_properties),
        ("additional four-dimensional rules", extra_rules),
    ];
    let mut cache = Cache::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut cache)))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
