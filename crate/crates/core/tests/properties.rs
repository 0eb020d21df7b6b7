mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use bandzeta::analytics::{
    divisors, mobius, spectral_radius, totient, zeta_coefficients, ArithmeticTables,
};
use bandzeta::presentation::{
    normalize_relations, parse_presentation, tilde_presentation, validate_zero_relation,
    Presentation,
};
use bandzeta::state_graph::{
    build_state_graph, reciprocal_char_poly, reciprocal_char_poly_berkowitz,
    reciprocal_char_poly_newton, scc_decompose_matrix, trace_powers, trace_powers_direct,
    AdjacencyMatrix,
};
use bandzeta::strings::{CyclicClass, Limits, StringRules, StringWord, Syllable};
use common::CORPUS;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Random presentation: up to two vertices, two to four arrows, composable
/// relations of length 2 or 3.
fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=2, 2usize..=4)
        .prop_flat_map(|(nv, na)| {
            let arrows = proptest::collection::vec((0..nv, 0..nv), na);
            let rels = proptest::collection::vec(proptest::collection::vec(0..na, 2..=3), 0..=6);
            (Just(nv), arrows, rels)
        })
        .prop_map(|(nv, arrows, rels)| {
            let vertices: Vec<String> = (0..nv).map(|v| format!("\"{v}\"")).collect();
            let arrow_json: Vec<String> = arrows
                .iter()
                .enumerate()
                .map(|(i, (s, t))| format!(r#"{{"name":"{}","source":"{s}","target":"{t}"}}"#, NAMES[i]))
                .collect();
            let composable = |r: &Vec<usize>| r.windows(2).all(|w| arrows[w[0]].1 == arrows[w[1]].0);
            let rel_json: Vec<String> = rels
                .iter()
                .filter(|r| composable(r))
                .map(|r| {
                    let names: Vec<String> = r.iter().map(|&i| format!("\"{}\"", NAMES[i])).collect();
                    format!("[{}]", names.join(","))
                })
                .collect();
            let text = format!(
                r#"{{"vertices":[{}],"arrows":[{}],"relations":[{}]}}"#,
                vertices.join(","),
                arrow_json.join(","),
                rel_json.join(",")
            );
            parse_presentation(&text).expect("generated presentation parses")
        })
}

fn admissible() -> impl Strategy<Value = (Presentation, usize)> {
    presentation().prop_filter_map("inadmissible", |p| {
        let p = normalize_relations(&p);
        validate_zero_relation(&p).window_n.map(|n| (p, n))
    })
}

/// Strings straight from the definition: composable, no immediate
/// backtracking, no relation or inverse relation as a factor.
fn is_string_oracle(p: &Presentation, w: &[Syllable]) -> bool {
    let q = p.quiver();
    let start = |s: Syllable| if s.inverse { q.target(s.arrow) } else { q.source(s.arrow) };
    let end = |s: Syllable| if s.inverse { q.source(s.arrow) } else { q.target(s.arrow) };
    if w.is_empty() {
        return false;
    }
    for pair in w.windows(2) {
        if end(pair[0]) != start(pair[1]) || pair[1] == pair[0].inverted() {
            return false;
        }
    }
    for r in p.relations() {
        let direct: Vec<Syllable> = r.arrows().iter().map(|&a| Syllable::direct(a)).collect();
        let inverse: Vec<Syllable> = direct.iter().rev().map(|s| s.inverted()).collect();
        if w.windows(direct.len()).any(|f| f == direct.as_slice() || f == inverse.as_slice()) {
            return false;
        }
    }
    true
}

fn all_syllables(p: &Presentation) -> Vec<Syllable> {
    p.quiver()
        .arrow_ids()
        .flat_map(|a| [Syllable::direct(a), Syllable::inverse_of(a)])
        .collect()
}

fn all_sequences(alphabet: &[Syllable], k: usize) -> Vec<Vec<Syllable>> {
    let mut out: Vec<Vec<Syllable>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&s| {
                    let mut x = w.clone();
                    x.push(s);
                    x
                })
            })
            .collect();
    }
    out
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn matrix() -> impl Strategy<Value = AdjacencyMatrix> {
    (0usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(prop_oneof![6 => Just(0u64), 3 => Just(1u64), 1 => Just(2u64)], n), n)
            .prop_map(|rows| AdjacencyMatrix::from_rows(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn enumeration_matches_definition(p in presentation(), k in 1usize..=5) {
        let p = normalize_relations(&p);
        let rules = StringRules::new(&p);
        let got: BTreeSet<Vec<Syllable>> = rules
            .enumerate(k, &Limits::default())
            .unwrap()
            .iter()
            .map(|w| w.syllables().to_vec())
            .collect();
        let want: BTreeSet<Vec<Syllable>> = all_sequences(&all_syllables(&p), k)
            .into_iter()
            .filter(|w| is_string_oracle(&p, w))
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn strings_closed_under_inversion(p in presentation(), k in 1usize..=5) {
        let rules = StringRules::new(&p);
        for w in rules.enumerate(k, &Limits::default()).unwrap() {
            prop_assert!(rules.is_string(w.inverse().syllables()).unwrap());
        }
    }

    #[test]
    fn window_soundness((p, n) in admissible(), k in 1usize..=7) {
        let rules = StringRules::new(&p);
        let alphabet = all_syllables(&p);
        prop_assume!(alphabet.len().pow(k as u32) <= 100_000);
        for w in all_sequences(&alphabet, k) {
            let whole = rules.is_string(&w).unwrap();
            let local = (1..=(n + 1).min(k))
                .all(|len| w.windows(len).all(|f| rules.is_string(f).unwrap()));
            prop_assert_eq!(whole, local);
        }
    }

    #[test]
    fn normalization_is_idempotent(p in presentation()) {
        let once = normalize_relations(&p);
        prop_assert_eq!(normalize_relations(&once), once.clone());
        for (i, r) in once.relations().iter().enumerate() {
            for (j, s) in once.relations().iter().enumerate() {
                prop_assert!(i == j || !r.contains_subpath(s));
            }
        }
    }

    #[test]
    fn tilde_is_idempotent(p in presentation()) {
        let once = tilde_presentation(&p).unwrap();
        prop_assert_eq!(tilde_presentation(&once).unwrap(), once);
    }

    #[test]
    fn bands_are_not_rotations_of_their_inverses((p, _) in admissible()) {
        let rules = StringRules::new(&p);
        for b in rules.enumerate_bands(8, &Limits::default()).unwrap() {
            let inv = b.representative.inverse();
            prop_assert!(!b.representative.rotations().any(|r| r == inv));
            prop_assert!(rules.canonical_band(&b.representative).unwrap() == b);
        }
    }

    #[test]
    fn permutable_iff_band_power_rotation((p, _) in admissible()) {
        let rules = StringRules::new(&p);
        let limits = Limits::default();
        let bands = rules.enumerate_bands(6, &limits).unwrap();
        let mut rotations = BTreeSet::new();
        for b in &bands {
            for k in 1..=6 / b.len() {
                rotations.extend(b.representative.power(k).rotations());
            }
        }
        for m in 1..=6 {
            for w in rules.enumerate(m, &limits).unwrap() {
                if !rules.is_cyclic(&w) || !w.is_mixed() {
                    continue;
                }
                let classified = matches!(rules.classify_cyclic(&w), CyclicClass::BandPowerRotation { .. });
                prop_assert_eq!(rules.is_permutable(&w), rotations.contains(&w));
                prop_assert_eq!(classified, rotations.contains(&w));
            }
        }
    }

    #[test]
    fn traces_count_walks_and_band_power_strings((p, n) in admissible()) {
        let rules = StringRules::new(&p);
        let limits = Limits::default();
        prop_assume!(n <= 3);
        let g = build_state_graph(&rules, n, &limits).unwrap();
        let a = g.adjacency();
        let traces = trace_powers(&a, 7).unwrap();
        for m in 1..=7 {
            let walks = g.closed_walks_bruteforce(m, &limits).unwrap();
            let strings = rules
                .enumerate(m, &limits)
                .unwrap()
                .into_iter()
                .filter(|w| matches!(rules.classify_cyclic(w), CyclicClass::BandPowerRotation { .. }))
                .count();
            prop_assert_eq!(traces.get(m), &BigInt::from(walks));
            prop_assert_eq!(traces.get(m), &BigInt::from(strings));
        }
        for arrow in g.arrows() {
            let s = arrow.label.syllables();
            prop_assert_eq!(&g.vertices()[arrow.from], &StringWord::from_application_order(s[..n].to_vec()));
            prop_assert_eq!(&g.vertices()[arrow.to], &StringWord::from_application_order(s[1..].to_vec()));
        }
    }

    #[test]
    fn determinant_methods_agree(a in matrix()) {
        let n = a.order();
        let newton = reciprocal_char_poly_newton(&a).unwrap();
        prop_assert_eq!(&newton, &reciprocal_char_poly_berkowitz(&a));
        prop_assert_eq!(&newton, &reciprocal_char_poly(&a).unwrap());
        prop_assert_eq!(newton.coeff(0), BigInt::one());
        // det(I − tA) at integer points by elimination
        for t in -2i64..=2 {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j) - t * a.get(i, j) as i64)).collect())
                .collect();
            let x = num_rational::BigRational::from_integer(BigInt::from(t));
            prop_assert_eq!(newton.eval(&x).to_integer(), bareiss(m));
        }
    }

    #[test]
    fn components_partition_and_factor(a in matrix()) {
        let scc = scc_decompose_matrix(&a).unwrap();
        let mut seen: Vec<usize> = scc.components.iter().flat_map(|c| c.vertices.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..a.order()).collect::<Vec<_>>());
        let mut product = bandzeta::polynomial::IntegerPolynomial::one();
        for c in &scc.components {
            product = &product * &c.reciprocal_char_poly;
            if !c.is_trivial {
                prop_assert_eq!(c.peripheral_eigenvalues as u64, c.period);
                // period divides every closed-walk length inside the component
                let sub = a.principal_submatrix(&c.vertices);
                for (m, tr) in trace_powers_direct(&sub, 12).iter().enumerate() {
                    prop_assert!(tr.is_zero() || (m as u64 + 1).is_multiple_of(c.period));
                }
            }
        }
        prop_assert_eq!(product, reciprocal_char_poly(&a).unwrap());
        // no arrow goes back to an earlier component
        let of = scc.component_of(a.order());
        for i in 0..a.order() {
            for (j, _) in a.successors(i) {
                prop_assert!(of[i] <= of[j]);
            }
        }
    }

    #[test]
    fn zeta_series_is_non_negative(a in matrix()) {
        let det = reciprocal_char_poly(&a).unwrap();
        let z = zeta_coefficients(&det, 15).unwrap();
        prop_assert!(z.iter().all(|c| c >= &BigInt::zero()));
        let r = spectral_radius(&det).unwrap();
        let scc = scc_decompose_matrix(&a).unwrap();
        prop_assert!((r.value - scc.spectral_radius()).abs() < 1e-9);
    }
}

#[test]
fn arithmetic_identities() {
    let t = ArithmeticTables::new(500);
    for m in 1..=500usize {
        let d = t.divisors(m);
        assert_eq!(d.iter().map(|&x| t.totient(x as usize)).sum::<u64>(), m as u64);
        // φ(m)/m = Σ μ(d)/d, scaled by m
        let scaled: i64 = d.iter().map(|&x| t.mobius(x as usize) as i64 * (m as i64 / x as i64)).sum();
        assert_eq!(scaled, t.totient(m) as i64);
        assert_eq!(d, divisors(m as u64).as_slice());
        assert_eq!(t.mobius(m), mobius(m as u64));
        assert_eq!(t.totient(m), totient(m as u64));
    }
}

#[test]
fn corpus_strings_match_definition() {
    for (_, src) in CORPUS {
        let g = common::load(src);
        for k in 1..=7 {
            let got: BTreeSet<Vec<Syllable>> = g
                .rules
                .enumerate(k, &Limits::default())
                .unwrap()
                .iter()
                .map(|w| w.syllables().to_vec())
                .collect();
            let want: BTreeSet<Vec<Syllable>> = all_sequences(&all_syllables(&g.reduced), k)
                .into_iter()
                .filter(|w| is_string_oracle(&g.reduced, w))
                .collect();
            assert_eq!(got, want);
        }
    }
}
