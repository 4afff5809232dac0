//! Acceptance suite: one check per criterion, each printing a PASS/FAIL
//! line. The test fails if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exkh::diagram::{Diagram, Smoothing};
use exkh::extreme::{bracket_extreme_coefficient, extreme_via_brute, extreme_via_lando};
use exkh::families::corpus::{corpus, random_bipartite, random_complex};
use exkh::families::{
    catalog, join_power_closed_form, join_power_table, knotify_all, square_and_point, thick_family,
};
use exkh::graph::Graph;
use exkh::khovanov::{
    adjacent, enumerate_enhanced, j_bounds, khovanov_cohomology, khovanov_complex,
    unnormalized_jones, EnhancedState,
};
use exkh::lando::lando_graph;
use exkh::simplicial::{
    independence_complex, jonsson_complex, AbelianGroup, GradedGroups, IntMatrix, Ring,
    SimplicialComplex, VertexSet,
};
use exkh::Limits;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn limits() -> Limits {
    Limits::default()
}

fn z(r: usize) -> AbelianGroup {
    AbelianGroup::free(r)
}

fn shift(h: &GradedGroups, by: i32) -> GradedGroups {
    h.iter().map(|(&k, g)| (k + by, g.clone())).collect()
}

fn two_hexagons() -> Graph {
    Graph::with_edges(
        11,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 0)],
    )
    .unwrap()
}

/// Random corpus with at most 12 crossings plus every catalog diagram.
fn test_corpus(max_crossings: usize) -> Vec<Diagram> {
    let mut ds = corpus(20240601, 200, max_crossings);
    ds.extend(
        catalog()
            .unwrap()
            .iter()
            .filter(|e| e.diagram.crossing_count() <= max_crossings)
            .map(|e| e.diagram.clone()),
    );
    ds
}

fn faces_from_words(words: &[&str]) -> Vec<VertexSet> {
    words
        .iter()
        .map(|w| w.chars().map(|ch| ch.to_digit(10).unwrap() as usize - 1).collect())
        .collect()
}

fn hexagon_example() -> Outcome {
    let x = independence_complex(&Graph::cycle(6), limits().max_faces).map_err(|e| e.to_string())?;
    let cochains = x.coboundary_complex(limits().max_faces).map_err(|e| e.to_string())?;
    let f: Vec<usize> = cochains.basis.values().map(Vec::len).collect();
    ensure(f == [1, 6, 9, 2], || format!("face ranks {f:?}"))?;
    let expected_basis = faces_from_words(&["13", "14", "15", "24", "25", "26", "35", "36", "46"]);
    ensure(cochains.basis[&1] == expected_basis, || "basis of C^1".into())?;
    ensure(cochains.basis[&2] == faces_from_words(&["135", "246"]), || "basis of C^2".into())?;
    let printed = [
        IntMatrix::from_dense(&vec![vec![1]; 6]),
        IntMatrix::from_dense(&[
            vec![1, 0, -1, 0, 0, 0],
            vec![1, 0, 0, -1, 0, 0],
            vec![1, 0, 0, 0, -1, 0],
            vec![0, 1, 0, -1, 0, 0],
            vec![0, 1, 0, 0, -1, 0],
            vec![0, 1, 0, 0, 0, -1],
            vec![0, 0, 1, 0, -1, 0],
            vec![0, 0, 1, 0, 0, -1],
            vec![0, 0, 0, 1, 0, -1],
        ]),
        IntMatrix::from_dense(&[
            vec![1, 0, -1, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0, -1, 0, 0, 1],
        ]),
    ];
    for (k, m) in printed.iter().enumerate() {
        let ours = cochains.complex.differential(k as i32 - 1);
        ensure(ours.to_dense() == m.to_dense(), || format!("delta_{} differs", k as i32 - 1))?;
    }
    let ranks: Vec<usize> = cochains.complex.differential_ranks(Ring::Rationals).into_values().collect();
    ensure(ranks == [1, 5, 2], || format!("rational ranks {ranks:?}"))?;
    let h = cochains.complex.cohomology(Ring::Rationals).map_err(|e| e.to_string())?;
    ensure(h == [(1, z(2))].into(), || format!("cohomology {h:?}"))?;
    Ok("face ranks (1,6,9,2), printed matrices, ranks (1,5,2), H^1 = Q^2".into())
}

fn two_hexagon_example() -> Outcome {
    let x = independence_complex(&two_hexagons(), limits().max_faces).map_err(|e| e.to_string())?;
    let cochains = x.coboundary_complex(limits().max_faces).map_err(|e| e.to_string())?;
    let chain: Vec<usize> = cochains.basis.values().map(Vec::len).collect();
    ensure(chain == [1, 11, 43, 73, 52, 13, 1], || format!("chain ranks {chain:?}"))?;
    let ranks: Vec<usize> = cochains.complex.differential_ranks(Ring::Integers).into_values().collect();
    ensure(ranks == [1, 10, 33, 39, 12, 1], || format!("differential ranks {ranks:?}"))?;
    let h = cochains.complex.cohomology(Ring::Integers).map_err(|e| e.to_string())?;
    ensure(h == [(2, z(1)), (3, z(1))].into(), || format!("cohomology {h:?}"))?;
    Ok("ranks 1(1)11(10)43(33)73(39)52(12)13(1)1, H^2 = H^3 = Z".into())
}

fn main_theorem_oracle() -> Outcome {
    let ds = test_corpus(12);
    for d in &ds {
        let lando = extreme_via_lando(d, Ring::Integers, &limits()).map_err(|e| e.to_string())?;
        let brute = extreme_via_brute(d, Ring::Integers, &limits()).map_err(|e| e.to_string())?;
        ensure(lando.same_groups(&brute), || {
            format!("{d}: lando {} vs brute {}", lando.summary(), brute.summary())
        })?;
    }
    Ok(format!("{} diagrams", ds.len()))
}

fn j_bound_formulas() -> Outcome {
    let ds = test_corpus(12);
    for d in &ds {
        let states = enumerate_enhanced(d, &limits()).map_err(|e| e.to_string())?;
        let lo = states.keys().map(|k| k.1).min().unwrap();
        let hi = states.keys().map(|k| k.1).max().unwrap();
        ensure(j_bounds(d) == (lo, hi), || format!("{d}: formula {:?}, enumeration {:?}", j_bounds(d), (lo, hi)))?;
    }
    Ok(format!("{} diagrams", ds.len()))
}

fn alexander_duality() -> Outcome {
    let cap = limits().max_faces;
    let x = square_and_point();
    let dual = x.alexander_dual(cap).map_err(|e| e.to_string())?;
    let listed = [
        "", "1", "2", "3", "4", "5", "12", "13", "14", "15", "23", "24", "25", "34", "35", "45", "123", "124",
        "134", "135", "234", "245",
    ];
    let mut expected = faces_from_words(&listed);
    expected.sort();
    let ours: Vec<VertexSet> = dual.faces(cap).map_err(|e| e.to_string())?.to_vec();
    ensure(ours == expected, || format!("dual has {} faces", ours.len()))?;
    let total = x.faces(cap).unwrap().len() + ours.len();
    ensure(total == 32, || format!("|X| + |X*| = {total}"))?;
    let hx = x.homology(Ring::Integers, cap).unwrap();
    let hd = dual.cohomology(Ring::Integers, cap).unwrap();
    let reflected: GradedGroups = hd.iter().map(|(&k, g)| (2 - k, g.clone())).collect();
    ensure(hx == reflected, || format!("H(X) {hx:?} vs H(X*) {hd:?}"))?;
    ensure(hx == [(0, z(1)), (1, z(1))].into(), || "H(X) should be Z, Z".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let x = random_complex(&mut rng, n);
        let d = x.alexander_dual(cap).unwrap();
        if d.is_void() {
            continue;
        }
        ensure(d.alexander_dual(cap).unwrap().faces(cap).unwrap() == x.faces(cap).unwrap(), || {
            "duality is not an involution".into()
        })?;
        let hx = x.homology(Ring::Integers, cap).unwrap();
        let hd = d.cohomology(Ring::Integers, cap).unwrap();
        let reflected: GradedGroups = hd.iter().map(|(&k, g)| (n as i32 - k - 3, g.clone())).collect();
        ensure(hx == reflected, || format!("duality fails for {:?}", x.to_json()))?;
        checked += 1;
    }
    Ok(format!("22-face dual as listed; {checked} random complexes"))
}

fn jonsson_constructions() -> Outcome {
    let cap = limits().max_faces;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut graphs = 0;
    for _ in 0..200 {
        let v = rng.gen_range(1..=7);
        let w = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let (g, part) = random_bipartite(&mut rng, v, w, p);
        let hg = independence_complex(&g, cap).unwrap().cohomology(Ring::Integers, cap).unwrap();
        let hv = jonsson_complex(&g, &part).unwrap().cohomology(Ring::Integers, cap).unwrap();
        ensure(hg == shift(&hv, 1), || format!("graph with parts {v}+{w}: {hg:?} vs {hv:?}"))?;
        graphs += 1;
    }
    let mut complexes = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let x = random_complex(&mut rng, n);
        let hx = x.cohomology(Ring::Integers, cap).unwrap();
        let hs = x.suspension().unwrap().cohomology(Ring::Integers, cap).unwrap();
        ensure(hs == shift(&hx, 1), || format!("suspension shift fails for {:?}", x.to_json()))?;
        let g = x.bipartite_graph();
        let hg = independence_complex(&g, cap).unwrap().cohomology(Ring::Integers, cap).unwrap();
        ensure(hg == shift(&hx, 1), || format!("bipartite construction fails for {:?}", x.to_json()))?;
        complexes += 1;
    }
    let dual = square_and_point().alexander_dual(cap).unwrap();
    let g = dual.bipartite_graph();
    ensure(g.vertex_count() == 11 && g.is_isomorphic(&two_hexagons()), || {
        "bipartite graph of X* is not two hexagons sharing a vertex".into()
    })?;
    Ok(format!("{graphs} bipartite graphs, {complexes} complexes, X* gives two hexagons"))
}

fn bracket_and_euler() -> Outcome {
    let ds = test_corpus(10);
    for d in &ds {
        let (actual, predicted) = bracket_extreme_coefficient(d, &limits()).map_err(|e| e.to_string())?;
        ensure(actual == predicted, || format!("{d}: bracket coefficient {actual}, I(G) gives {predicted}"))?;
        let table = khovanov_cohomology(d, Ring::Integers, &limits()).map_err(|e| e.to_string())?;
        let jones = unnormalized_jones(d, &limits()).map_err(|e| e.to_string())?;
        ensure(table.euler_characteristic() == jones, || format!("{d}: Euler characteristic differs"))?;
    }
    Ok(format!("{} diagrams", ds.len()))
}

fn thick_families() -> Outcome {
    for n in 1..=4 {
        let h = join_power_table(n, &limits()).map_err(|e| e.to_string())?;
        let expected: GradedGroups = (n - 1..=2 * n - 1)
            .map(|i| (i as i32, z(binomial(n, i + 1 - n))))
            .collect::<BTreeMap<_, _>>();
        ensure(h == expected && h == join_power_closed_form(n), || format!("join power {n}: {h:?}"))?;
    }
    let mut sizes = Vec::new();
    for n in 1..=3 {
        let d = thick_family(n).map_err(|e| e.to_string())?;
        ensure(d.component_count() == 1, || format!("thick family {n} has {} components", d.component_count()))?;
        let row = extreme_via_lando(&d, Ring::Integers, &limits()).map_err(|e| e.to_string())?;
        let profile = row.profile();
        let expected: Vec<AbelianGroup> = (0..=n).map(|k| z(binomial(n, k))).collect();
        ensure(profile == expected && row.groups.len() == n + 1, || format!("thick family {n}: {}", row.summary()))?;
        sizes.push(d.crossing_count());
    }
    Ok(format!("join powers n<=4; thick families with {sizes:?} crossings"))
}

fn knotification() -> Outcome {
    let mut pool: Vec<Diagram> = Vec::new();
    let mut seed = 900;
    while pool.len() < 60 {
        pool.extend(corpus(seed, 100, 10).into_iter().filter(|d| d.component_count() > 1));
        seed += 1;
    }
    for e in catalog().unwrap().iter().filter(|e| e.diagram.component_count() > 1) {
        pool.push(e.diagram.clone());
    }
    let l = limits();
    for d in &pool {
        let k = knotify_all(d).map_err(|e| format!("{d}: {e}"))?;
        ensure(k.component_count() == 1, || format!("{d}: still {} components", k.component_count()))?;
        ensure(lando_graph(&k).graph().is_isomorphic(lando_graph(d).graph()), || format!("{d}: Lando graph changed"))?;
        let before = extreme_via_lando(d, Ring::Integers, &l).map_err(|e| e.to_string())?;
        let after = extreme_via_lando(&k, Ring::Integers, &l).map_err(|e| e.to_string())?;
        ensure(before.profile() == after.profile(), || {
            format!("{d}: {} became {}", before.summary(), after.summary())
        })?;
        if k.crossing_count() <= 12 {
            let brute = extreme_via_brute(&k, Ring::Integers, &l).map_err(|e| e.to_string())?;
            ensure(brute.same_groups(&after), || format!("{k}: lando and brute differ after knotify"))?;
        }
    }
    Ok(format!("{} multi-component diagrams", pool.len()))
}

/// Independent reading of the local transition rules at one crossing.
fn legal_transition(d: &Diagram, s: &EnhancedState, t: &EnhancedState) -> bool {
    let c = d.crossing_count();
    let changed: Vec<usize> = (0..c).filter(|&x| s.state.label(x) != t.state.label(x)).collect();
    if changed.len() != 1 || s.state.label(changed[0]) != Smoothing::A {
        return false;
    }
    let (ids_s, _) = d.arc_circles(&s.state);
    let (ids_t, _) = d.arc_circles(&t.state);
    // Circles as arc sets; those present in both states are common.
    let circles = |ids: &[usize], signs: &[i8]| -> Vec<(Vec<usize>, i8)> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &k) in ids.iter().enumerate() {
            m.entry(k).or_default().push(a);
        }
        // Free loops get ids past the arcs, so they match up as common circles.
        m.into_iter().map(|(k, arcs)| (arcs, signs[k])).collect::<Vec<(Vec<usize>, i8)>>()
    };
    let cs = circles(&ids_s, &s.signs);
    let ct = circles(&ids_t, &t.signs);
    let only_s: Vec<i8> = cs.iter().filter(|a| !ct.iter().any(|b| b.0 == a.0)).map(|a| a.1).collect();
    let only_t: Vec<i8> = ct.iter().filter(|b| !cs.iter().any(|a| a.0 == b.0)).map(|b| b.1).collect();
    for (arcs, sign) in &cs {
        if let Some(other) = ct.iter().find(|b| &b.0 == arcs) {
            if other.1 != *sign {
                return false;
            }
        }
    }
    let mut before = only_s;
    let mut after = only_t;
    before.sort();
    after.sort();
    // Merge: ++ -> +, +- -> -. Split: + -> +- , - -> --.
    matches!(
        (before.as_slice(), after.as_slice()),
        ([1, 1], [1]) | ([-1, 1], [-1]) | ([1], [-1, 1]) | ([-1], [-1, -1])
    )
}

fn structural_suite() -> Outcome {
    let cap = limits().max_faces;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let x: SimplicialComplex = random_complex(&mut rng, n);
        x.coboundary_complex(cap).unwrap().complex.verify().map_err(|e| e.to_string())?;
    }
    let ds = corpus(31, 40, 8);
    for d in &ds {
        let (lo, hi) = j_bounds(d);
        for j in (lo..=hi).step_by(2) {
            khovanov_complex(d, j, &limits()).map_err(|e| format!("{d}: {e}"))?.verify().map_err(|e| e.to_string())?;
        }
        let table = khovanov_cohomology(d, Ring::Integers, &limits()).map_err(|e| e.to_string())?;
        let parity = d.component_count() as i64 % 2;
        ensure(table.groups.keys().all(|&(_, j)| j.rem_euclid(2) == parity), || format!("{d}: j parity"))?;
        let mut perm: Vec<usize> = (0..d.crossing_count()).collect();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let permuted = khovanov_cohomology(&d.permute_crossings(&perm), Ring::Integers, &limits()).unwrap();
        ensure(permuted.groups == table.groups, || format!("{d}: crossing order changes cohomology"))?;
    }
    let mut pairs = 0;
    for d in ds.iter().filter(|d| d.crossing_count() <= 4) {
        let states: Vec<EnhancedState> = enumerate_enhanced(d, &limits()).unwrap().into_values().flatten().collect();
        for s in &states {
            for t in &states {
                let a = adjacent(d, s, t).map_err(|e| e.to_string())?;
                ensure((a != 0) == legal_transition(d, s, t), || format!("{d}: transition {s:?} -> {t:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} diagrams, {pairs} state pairs against the transition table", ds.len()))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("hexagon example", hexagon_example, Some(Duration::from_secs(1))),
        ("two-hexagon example", two_hexagon_example, Some(Duration::from_secs(5))),
        ("lando route equals brute force", main_theorem_oracle, None),
        ("j-bound formulas", j_bound_formulas, None),
        ("Alexander duality", alexander_duality, None),
        ("Jonsson constructions", jonsson_constructions, None),
        ("bracket coefficient and Euler characteristic", bracket_and_euler, None),
        ("thick families and join powers", thick_families, None),
        ("knotification preserves extreme groups", knotification, None),
        ("structural properties", structural_suite, None),
    ];
    let mut failed = Vec::new();
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(b)) = (&outcome, budget) {
            if elapsed > *b {
                outcome = Err(format!("took {elapsed:.2?}, budget {b:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({elapsed:.2?})", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
