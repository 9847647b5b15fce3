mod common;

use num_traits::Zero;
use proptest::prelude::*;
use sullivan::algebra::Polynomial;
use sullivan::cohomology::{CohomologyClass, CohomologyEngine};
use sullivan::toomer::{e0_spectrum, toomer_of_class};
use sullivan::library::{library, lookup};
use sullivan::linalg::{kernel_basis, rank, rat, solve_membership, RatMatrix, Rational};
use sullivan::random::{random_elliptic_model, RandomParams};
use sullivan::sequences::{build_all, build_wang, SequenceKind};
use sullivan::{parse_model, print_model, SullivanModel};

use common::*;

fn int_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<Rational>> = rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
            RatMatrix::from_rows(c, &rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_nullity(m in int_matrix()) {
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn membership_finds_preimages(m in int_matrix(), seed in prop::collection::vec(-2i64..=2, 6)) {
        let x: Vec<Rational> = seed.iter().take(m.cols()).map(|&v| rat(v)).chain(std::iter::repeat(rat(0))).take(m.cols()).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve_membership(&m, &b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn random_models_round_trip_through_text(seed in 0u64..400, evens in 1usize..3, extra in 0usize..2, length in 2u32..4) {
        let params = RandomParams::new(evens, evens + extra, length);
        let generated = random_elliptic_model(seed, &params).unwrap();
        let text = print_model(&generated.model);
        prop_assert_eq!(parse_model(&text).unwrap(), generated.model);
    }

    /// Adding a generator to its own differential breaks the degree and
    /// minimality conditions, and validation must say so.
    #[test]
    fn mutated_differentials_are_rejected(index in 0usize..64, target in 0usize..8, scale in 1i64..4) {
        let pool = model_pool();
        let model = &pool[index % pool.len()];
        let j = target % model.len();
        let mut differential = model.differential().values.clone();
        differential[j].add_term(model.algebra().gen(j).terms().next().unwrap().0.clone(), rat(scale));
        let mutated = SullivanModel::unchecked(model.generators().to_vec(), differential, model.simply_connected());
        prop_assert!(!mutated.violations().is_empty());
        prop_assert!(mutated.validate().is_err());
    }
}

#[test]
fn library_round_trips_through_text() {
    for entry in library() {
        let model = entry.model();
        assert_eq!(parse_model(&print_model(&model)).unwrap(), model, "{}", entry.name);
    }
    for (name, model) in random_corpus() {
        assert_eq!(&parse_model(&print_model(model)).unwrap(), model, "{name}");
    }
}

#[test]
fn nonzero_square_is_rejected() {
    let unchecked = "gen x 2\ngen y 3\ngen z 4\nd y = x^2\nd z = x*y\n";
    let err = parse_model(unchecked).unwrap_err().to_string();
    assert!(err.contains("d(d"), "{err}");
}

/// Every Wang sequence over the odd cocycles of the homogeneous library.
fn wang_sequences() -> Vec<(String, sullivan::sequences::Les)> {
    let mut out = Vec::new();
    for (name, model) in homogeneous_library() {
        for les in build_all(&model).unwrap() {
            if les.kind() == SequenceKind::Wang {
                out.push((format!("{name}/{}", les.generator()), les));
            }
        }
    }
    out
}

#[test]
fn quotient_and_theta_reconstruct_d() {
    let sequences = wang_sequences();
    assert!(sequences.len() >= 10);
    for (name, les) in &sequences {
        let total = les.total().model();
        let quotient = les.quotient().model();
        let theta = les.theta().unwrap();
        let x1 = total.gen(0);
        for chi in 0..quotient.len() {
            let bar = quotient.d_generator(chi);
            let expected = total
                .lift_from_quotient(bar)
                .plus(&total.multiply(&x1, &total.lift_from_quotient(&theta.values[chi])));
            assert_eq!(total.d_generator(chi + 1), &expected, "{name}: generator {chi}");
        }
    }
}

#[test]
fn theta_commutes_with_quotient_differential() {
    for (name, les) in wang_sequences() {
        let quotient = les.quotient().model();
        let algebra = quotient.algebra();
        let theta = les.theta().unwrap();
        for degree in 0..=12 {
            for m in algebra.monomial_basis(degree, None) {
                let p = Polynomial::term(m, rat(1));
                let a = quotient.d(&algebra.apply_derivation(theta, &p));
                let b = algebra.apply_derivation(theta, &quotient.d(&p));
                assert_eq!(a, b, "{name}: degree {degree}");
            }
        }
    }
}

/// Tensoring with a free odd generator shifts a copy of the cohomology.
#[test]
fn product_with_odd_sphere_doubles_betti_numbers() {
    for (l, r) in [(2, 1), (3, 1), (4, 1), (3, 2), (5, 2)] {
        let model = lookup(&format!("cpl-sphere:{l},{r}")).unwrap();
        let les = build_wang(&model, "u").unwrap();
        assert!(les.theta().unwrap().is_zero());
        let q = 2 * r + 1;
        let total = CohomologyEngine::new(les.total().model().clone());
        let quotient = CohomologyEngine::new(les.quotient().model().clone());
        for i in 0..=4 * l + 2 * r {
            let expected = quotient.betti(i).unwrap() + i.checked_sub(q).map_or(0, |j| quotient.betti(j).unwrap());
            assert_eq!(total.betti(i).unwrap(), expected, "cpl-sphere:{l},{r} degree {i}");
        }
    }
}

#[test]
fn sequences_on_random_corpus_are_exact() {
    for (name, model) in random_corpus().iter().step_by(5) {
        for les in build_all(model).unwrap() {
            let report = les.check_exactness(None).unwrap();
            assert!(report.exact, "{name}/{}", les.generator());
        }
    }
}

#[test]
fn kernel_filtration_is_monotone_and_matches_length_grading() {
    for (name, model) in sweep_corpus() {
        let engine = CohomologyEngine::new(model);
        let report = e0_spectrum(&engine).unwrap();
        for f in &report.filtrations {
            assert!(f.kernel_dims.windows(2).all(|w| w[0] >= w[1]), "{name}: degree {}", f.degree);
        }
        let table = engine.bigraded_profile().unwrap();
        for (k, &mu) in report.mu.iter().enumerate() {
            assert_eq!(mu, table.length_dimension(k as u32), "{name}: μ_{k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Adding a coboundary to a representative leaves its Toomer value alone.
    #[test]
    fn toomer_value_ignores_coboundaries(index in 0usize..200, class in 0usize..64, coefficients in prop::collection::vec(-3i64..=3, 32)) {
        let corpus = sweep_corpus();
        let (name, model) = &corpus[index % corpus.len()];
        let engine = CohomologyEngine::new(model.clone());
        let classes: Vec<_> = (1..=engine.formal_dimension_formula() as u32)
            .flat_map(|i| engine.cohomology(i).unwrap().classes())
            .collect();
        let original = &classes[class % classes.len()];
        let algebra = model.algebra();
        let mut cochain = Polynomial::zero();
        for (m, &c) in algebra.monomial_basis(original.degree - 1, None).into_iter().zip(&coefficients) {
            cochain.add_term(m, rat(c));
        }
        let shifted = CohomologyClass {
            representative: original.representative.plus(&model.d(&cochain)),
            ..original.clone()
        };
        prop_assert_eq!(
            toomer_of_class(&engine, &shifted).unwrap(),
            toomer_of_class(&engine, original).unwrap(),
            "{}", name
        );
    }
}
