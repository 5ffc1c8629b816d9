use functidom::domsolve::{gamma_bruteforce, SolveBudget};
use functidom::functigraph::{
    build_functigraph, from_cycles, identity_map, Functigraph, ThreeTranslate, VertexMap,
};
use functidom::graphcore::{build_cycle, VertexSet};
use functidom::theorems::{
    find_gen_witness, gamma_cycle, gamma_cycle_identity, map_at_index, sample_maps,
    three_translate_classes,
};

fn cycle_fg(f: &VertexMap) -> Functigraph {
    build_functigraph(&build_cycle(f.domain_size()).unwrap(), f).unwrap()
}

/// `"4"` is domain vertex 4, `"4'"` codomain vertex 4, both 1-based.
fn primed_set(n: usize, labels: &[&str]) -> VertexSet {
    let idx = labels.iter().map(|s| match s.strip_suffix('\'') {
        Some(t) => n + t.parse::<usize>().unwrap() - 1,
        None => s.parse::<usize>().unwrap() - 1,
    });
    VertexSet::from_indices(2 * n, idx).unwrap()
}

fn dominates(f: &VertexMap, labels: &[&str]) -> bool {
    let fg = cycle_fg(f);
    fg.graph()
        .is_dominating(&primed_set(f.domain_size(), labels))
        .unwrap()
}

fn tt(s: &str, k: usize) -> VertexMap {
    ThreeTranslate::parse(s).unwrap().expand(k).unwrap()
}

#[test]
fn three_translate_small_sets_dominate() {
    assert!(dominates(
        &tt("2,3,1", 4),
        &["1", "4", "8", "4'", "7'", "11'", "12'"]
    ));
    assert!(dominates(&tt("3,2,1", 3), &["1", "6", "8", "1'", "6'"]));
    assert!(dominates(&tt("2,1,1", 3), &["4", "6", "1'", "2'", "7'"]));
    assert!(dominates(&tt("3,1,1", 3), &["6", "1'", "3'", "6'", "7'"]));
}

#[test]
fn five_cycle_permutation_sets_dominate() {
    let perm = |cycles: &[&[usize]]| from_cycles(5, cycles).unwrap();
    let d = ["2", "3'", "5'"];
    assert!(dominates(&perm(&[&[3, 4]]), &d));
    assert!(dominates(&perm(&[&[3, 4, 5]]), &d));
    assert!(dominates(&perm(&[&[3, 5]]), &["1'", "3", "3'"]));
    assert!(dominates(&identity_map(5).unwrap(), &["1'", "3", "5'"]));
}

#[test]
fn five_cycle_skip_one_images_dominate() {
    // Every map with f(1) = 1' and f(2) = 3'.
    let mut seen = 0;
    for i in 0..5u64.pow(5) {
        let f = map_at_index(5, i);
        if f.image(0) == 0 && f.image(1) == 2 {
            seen += 1;
            assert!(dominates(&f, &["1'", "3'", "4"]), "{:?}", f.targets());
        }
    }
    assert_eq!(seen, 125);
}

#[test]
fn non_permutation_translates_fall_into_five_classes() {
    let expected: Vec<Vec<&str>> = vec![
        vec!["1,1,2", "1,1,3", "1,2,2", "1,3,3", "2,2,3", "2,3,3"],
        vec!["1,2,1", "2,1,2", "2,3,2", "3,2,3"],
        vec!["1,3,1", "3,1,3"],
        vec!["2,1,1", "2,2,1", "3,2,2", "3,3,2"],
        vec!["3,1,1", "3,3,1"],
    ];
    let mut expected: Vec<Vec<ThreeTranslate>> = expected
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|s| ThreeTranslate::parse(s).unwrap())
                .collect()
        })
        .collect();
    expected.sort();
    for k in 3..=4 {
        let mut got: Vec<Vec<ThreeTranslate>> = three_translate_classes(k)
            .unwrap()
            .into_iter()
            .filter(|c| c.iter().all(|t| !t.is_permutation() && !t.is_constant()))
            .collect();
        got.sort();
        assert_eq!(got, expected, "k = {k}");
    }
}

#[test]
fn identity_closed_form_matches_oracle() {
    for n in 3..=12 {
        let oracle = gamma_bruteforce(cycle_fg(&identity_map(n).unwrap()).graph()).unwrap();
        assert_eq!(gamma_cycle_identity(n).unwrap(), oracle.gamma, "n = {n}");
    }
}

fn assert_gen_witness_iff_lower_bound(f: &VertexMap, budget: &SolveBudget) {
    let n = f.domain_size();
    let fg = cycle_fg(f);
    let oracle = gamma_bruteforce(fg.graph()).unwrap().gamma;
    let found = find_gen_witness(&fg, budget).unwrap().is_some();
    assert_eq!(found, oracle == gamma_cycle(n), "{:?}", f.targets());
}

#[test]
fn gen_witness_exists_exactly_at_lower_bound_small_cycles() {
    let budget = SolveBudget::default();
    for n in 3..=5usize {
        for i in 0..(n as u64).pow(n as u32) {
            assert_gen_witness_iff_lower_bound(&map_at_index(n, i), &budget);
        }
    }
}

#[test]
fn gen_witness_exists_exactly_at_lower_bound() {
    let budget = SolveBudget::default();
    for n in 7..=9 {
        for f in sample_maps(n, 11 + n as u64, 334, |_| true) {
            assert_gen_witness_iff_lower_bound(&f, &budget);
        }
    }
}
