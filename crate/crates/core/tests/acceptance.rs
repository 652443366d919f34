//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed; the process exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use isotemporal::classes::{refinement_violations, swap_closure_classes};
use isotemporal::formulas::lattice_count;
use isotemporal::verify::verify_corpus;
use isotemporal::{
    binary_swap_sequence, brute_force_classes, count_distinct_labelings, diaster_formula,
    diaster_swap_permutation, edge_automorphism_group, generate, is_label_isomorphic,
    is_temporal_isomorphic, parse_network, ClassPartition, EdgePermutationGroup, FamilySpec,
    PartKind, TemporalNetwork,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_labelings, fixture};

/// Diaster class counts for `1 <= a <= b`, `a + b + 1 <= 8`.
const DIASTER_COUNTS: [((usize, usize), usize); 12] = [
    ((1, 1), 3),
    ((1, 2), 6),
    ((1, 3), 8),
    ((1, 4), 10),
    ((1, 5), 12),
    ((1, 6), 14),
    ((2, 2), 6),
    ((2, 3), 12),
    ((2, 4), 15),
    ((2, 5), 18),
    ((3, 3), 10),
    ((3, 4), 20),
];

const RANDOM_PAIRS: usize = 500;
const SEED: u64 = 0x15_07_e3_90;

/// Partitions computed once and reused across criteria.
#[derive(Default)]
struct Lab {
    cache: Mutex<HashMap<FamilySpec, (ClassPartition, ClassPartition)>>,
}

impl Lab {
    fn partitions(&self, spec: FamilySpec) -> (ClassPartition, ClassPartition) {
        if let Some(hit) = self.cache.lock().unwrap().get(&spec) {
            return hit.clone();
        }
        let graph = generate(&spec).unwrap();
        let pair = (
            brute_force_classes(&graph).unwrap(),
            swap_closure_classes(&graph).unwrap(),
        );
        self.cache.lock().unwrap().insert(spec, pair.clone());
        pair
    }
}

type Check = fn(&Lab) -> Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn diaster_grid() -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for a in 1..=6 {
        for b in 1..=6 {
            if a + b < 8 {
                grid.push((a, b));
            }
        }
    }
    grid
}

fn stems(max_edges: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for x in PartKind::ALL {
        for y in PartKind::ALL {
            for a in 1..max_edges {
                for b in 1..max_edges - a {
                    out.push(FamilySpec::stem((x, a), (y, b)));
                }
            }
        }
    }
    out
}

fn diaster_counts(lab: &Lab) -> Result<String, String> {
    let start = Instant::now();
    let expected: BTreeMap<_, _> = DIASTER_COUNTS.into_iter().collect();
    let grid = diaster_grid();
    for &(a, b) in &grid {
        let want = expected[&(a.min(b), a.max(b))] as u64;
        let (brute, swap) = lab.partitions(FamilySpec::Diaster(a, b));
        let formula = diaster_formula(a, b).unwrap().value;
        let lattice = lattice_count(a, b).unwrap().value;
        let got = [
            Some(brute.class_count() as u64),
            Some(swap.class_count() as u64),
            formula,
            lattice,
        ];
        ensure(got.iter().all(|&v| v == Some(want)), || {
            format!("D({a},{b}): expected {want}, brute/swap/formula/lattice = {got:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("grid took {elapsed:?}")
    })?;
    Ok(format!(
        "{} diasters, {:.1}s",
        grid.len(),
        elapsed.as_secs_f64()
    ))
}

fn degenerate_diasters(lab: &Lab) -> Result<String, String> {
    // With one side empty the graph is a star and has a single class.
    for b in 1..=6 {
        let (brute, swap) = lab.partitions(FamilySpec::Diaster(0, b));
        ensure(brute.class_count() == 1 && swap.class_count() == 1, || {
            format!(
                "D(0,{b}): brute {} swap {}",
                brute.class_count(),
                swap.class_count()
            )
        })?;
        ensure(!diaster_formula(0, b).unwrap().is_covered(), || {
            format!("D(0,{b}) should not be covered by the formula")
        })?;
    }
    Ok("D(0,b) for b <= 6: one class, formula not covered".into())
}

fn stem_transfer(lab: &Lab) -> Result<String, String> {
    let mut checked = 0;
    for spec in stems(7) {
        let FamilySpec::Stem(l, r) = spec else {
            unreachable!()
        };
        let (a, b) = (l.size, r.size);
        let want = if a != b {
            a * b + a + b + 1
        } else if l.kind == r.kind && a <= 3 {
            (a * a + 3 * a + 2) / 2
        } else {
            continue;
        };
        let (brute, _) = lab.partitions(spec);
        ensure(brute.class_count() == want, || {
            format!("{spec}: brute {} expected {want}", brute.class_count())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} stems"))
}

fn trivial_families(lab: &Lab) -> Result<String, String> {
    for k in 1..=7 {
        for spec in [
            FamilySpec::Star(k),
            FamilySpec::Beachball(k),
            FamilySpec::Daisy(k),
        ] {
            let (brute, _) = lab.partitions(spec);
            ensure(brute.class_count() == 1, || {
                format!("{spec}: {} classes", brute.class_count())
            })?;
        }
    }
    Ok("21 families".into())
}

fn refinement_corpus() -> Vec<FamilySpec> {
    let mut specs = verify_corpus(8);
    specs.extend((3..=8).map(FamilySpec::Cycle));
    specs.extend(
        diaster_grid()
            .into_iter()
            .map(|(a, b)| FamilySpec::Diaster(a, b)),
    );
    specs.extend(stems(8));
    specs.sort();
    specs.dedup();
    specs
}

fn refinement(lab: &Lab) -> Result<String, String> {
    let specs = refinement_corpus();
    for &spec in &specs {
        let (brute, swap) = lab.partitions(spec);
        let violations = refinement_violations(&swap, &brute);
        ensure(violations.is_empty(), || {
            format!(
                "{spec}: {} violations, first {:?}",
                violations.len(),
                violations[0]
            )
        })?;
    }
    Ok(format!("{} graphs, 0 violations", specs.len()))
}

fn random_pairs(lab: &Lab) -> Result<String, String> {
    let mut pool: Vec<FamilySpec> = diaster_grid()
        .into_iter()
        .filter(|(a, b)| a + b < 7)
        .map(|(a, b)| FamilySpec::Diaster(a, b))
        .collect();
    pool.extend(stems(7));
    let groups: HashMap<FamilySpec, EdgePermutationGroup> = pool
        .iter()
        .map(|&s| (s, edge_automorphism_group(&generate(&s).unwrap()).unwrap()))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total_steps = 0;
    for draw in 0..RANDOM_PAIRS {
        let spec = pool[rng.random_range(0..pool.len())];
        let (brute, _) = lab.partitions(spec);
        // Weight blocks by size so that longer scripts are drawn often.
        let mut index = rng.random_range(0..brute.labeling_count());
        let block = brute
            .blocks
            .iter()
            .find(|b| {
                let inside = index < b.len();
                if !inside {
                    index -= b.len();
                }
                inside
            })
            .unwrap();
        let group = &groups[&spec];
        let pick = |rng: &mut ChaCha8Rng| {
            let labels = &block[rng.random_range(0..block.len())];
            let g = &group.elements()[rng.random_range(0..group.order())];
            TemporalNetwork::from_labels(brute.graph.clone(), EdgePermutationGroup::act(labels, g))
                .unwrap()
        };
        let n = pick(&mut rng);
        let m = pick(&mut rng);
        let context = || format!("draw {draw}: {spec} {:?} -> {:?}", n.labels(), m.labels());
        ensure(is_temporal_isomorphic(&n, &m).unwrap(), || {
            format!("{} not isomorphic", context())
        })?;

        let script = diaster_swap_permutation(&n, &m).map_err(|e| format!("{}: {e}", context()))?;
        let adjacency = n.graph().adjacency();
        let mut labels = n.labels().to_vec();
        for step in &script.steps {
            let (e, f) = step.edges;
            ensure(
                labels[e] == step.label && labels[f] == step.label + 1 && !adjacency.adjacent(e, f),
                || format!("{}: illegal step {step:?}", context()),
            )?;
            labels.swap(e, f);
        }
        let replayed = n.relabeled(labels).unwrap();
        ensure(script.apply(&n).unwrap() == replayed, || {
            format!("{}: apply differs", context())
        })?;
        ensure(is_label_isomorphic(&replayed, &m).unwrap(), || {
            format!("{}: replay ends at {:?}", context(), replayed.labels())
        })?;
        total_steps += script.len();
    }
    Ok(format!(
        "{RANDOM_PAIRS} pairs, {total_steps} swaps replayed"
    ))
}

fn binary_sequences(_: &Lab) -> Result<String, String> {
    let mut pairs = 0;
    for len in 0..=8 {
        let words: Vec<Vec<bool>> = (0..1u32 << len)
            .map(|bits| (0..len).map(|i| bits >> i & 1 == 1).collect())
            .collect();
        for a in &words {
            for b in words
                .iter()
                .filter(|b| b.iter().filter(|&&x| x).count() == a.iter().filter(|&&x| x).count())
            {
                let swaps =
                    binary_swap_sequence(a, b).map_err(|e| format!("{a:?} -> {b:?}: {e}"))?;
                let mut current = a.clone();
                for p in swaps {
                    ensure(p + 1 < len && current[p] != current[p + 1], || {
                        format!("{a:?} -> {b:?}: bad swap at {p}")
                    })?;
                    current.swap(p, p + 1);
                }
                ensure(&current == b, || {
                    format!("{a:?} -> {b:?}: ended at {current:?}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn accounting(lab: &Lab) -> Result<String, String> {
    let mut partitions = 0;
    for spec in refinement_corpus() {
        let (brute, swap) = lab.partitions(spec);
        let want = count_distinct_labelings(&brute.graph).unwrap() as usize;
        for p in [&brute, &swap] {
            ensure(p.labeling_count() == want, || {
                format!(
                    "{spec} {}: sizes sum to {} not {want}",
                    p.method.name(),
                    p.labeling_count()
                )
            })?;
            partitions += 1;
        }
    }
    let (d12, _) = lab.partitions(FamilySpec::Diaster(1, 2));
    ensure(d12.labeling_count() == 12, || {
        format!("D(1,2) sums to {}", d12.labeling_count())
    })?;
    Ok(format!("{partitions} partitions"))
}

fn five_cycle_fixtures(_: &Lab) -> Result<String, String> {
    let read =
        |name: &str| parse_network(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    let (left, right) = (read("fig1-left.net"), read("fig1-right.net"));
    ensure(left.graph() == right.graph(), || {
        "fixtures use different graphs".into()
    })?;
    ensure(is_temporal_isomorphic(&left, &right).unwrap(), || {
        "not temporally isomorphic".into()
    })?;
    ensure(!is_label_isomorphic(&left, &right).unwrap(), || {
        "fixtures are label-isomorphic".into()
    })?;
    let order = left.edges_by_label();
    let (e, f) = (order[0], order[1]);
    ensure(!left.graph().adjacency().adjacent(e, f), || {
        "labels 1 and 2 share a vertex".into()
    })?;
    let mut labels = left.labels().to_vec();
    labels.swap(e, f);
    let swapped = left.relabeled(labels).unwrap();
    ensure(is_label_isomorphic(&swapped, &right).unwrap(), || {
        "swap (1,2) misses the partner".into()
    })?;
    Ok("swap (1,2) joins the two 5-cycles".into())
}

fn equivalence_laws(lab: &Lab) -> Result<String, String> {
    let specs: Vec<FamilySpec> = refinement_corpus()
        .into_iter()
        .filter(|s| s.edge_count() <= 5)
        .collect();
    let mut triples = 0usize;
    for &spec in &specs {
        let (brute, _) = lab.partitions(spec);
        let graph = &brute.graph;
        for raw in all_labelings(graph) {
            ensure(is_temporal_isomorphic(&raw, &raw).unwrap(), || {
                format!("{spec}: not reflexive")
            })?;
        }
        let nets: Vec<TemporalNetwork> = brute
            .blocks
            .iter()
            .flatten()
            .map(|l| TemporalNetwork::from_labels(graph.clone(), l.clone()).unwrap())
            .collect();
        let p = nets.len();
        let mut related = vec![vec![false; p]; p];
        for i in 0..p {
            for j in 0..p {
                related[i][j] = is_temporal_isomorphic(&nets[i], &nets[j]).unwrap();
            }
        }
        for i in 0..p {
            ensure(related[i][i], || format!("{spec}: not reflexive"))?;
            for j in 0..p {
                ensure(related[i][j] == related[j][i], || {
                    format!("{spec}: not symmetric at {i},{j}")
                })?;
                for k in 0..p {
                    let broken = related[i][j] && related[j][k] && !related[i][k];
                    ensure(!broken, || format!("{spec}: not transitive at {i},{j},{k}"))?;
                    triples += 1;
                }
            }
        }
        // The relation's classes must be exactly the brute-force blocks.
        let block_of = brute.block_index();
        for i in 0..p {
            for j in 0..p {
                let same = block_of[nets[i].labels()] == block_of[nets[j].labels()];
                ensure(same == related[i][j], || {
                    format!("{spec}: blocks disagree at {i},{j}")
                })?;
            }
        }
    }
    Ok(format!("{} graphs, {triples} triples", specs.len()))
}

fn main() {
    let criteria: [(&str, &str, Check); 10] = [
        (
            "1",
            "diaster counts: brute = swap = formula = lattice",
            diaster_counts,
        ),
        (
            "1b",
            "one-sided diasters collapse to a star",
            degenerate_diasters,
        ),
        ("2", "stem counts match the diaster counts", stem_transfer),
        (
            "3",
            "star, beachball and daisy have one class",
            trivial_families,
        ),
        ("4", "swap orbits refine isomorphism classes", refinement),
        (
            "5",
            "random swap scripts replay to the target",
            random_pairs,
        ),
        (
            "6",
            "binary swap sequences, exhaustive to length 8",
            binary_sequences,
        ),
        ("7", "block sizes sum to t!/|Aut|", accounting),
        ("8", "five-cycle fixtures", five_cycle_fixtures),
        (
            "9",
            "temporal isomorphism is an equivalence",
            equivalence_laws,
        ),
    ];
    let lab = Lab::default();
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&lab)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {id:<3} {name} ({detail}; {secs:.2}s)"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {id:<3} {name}: {reason} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
